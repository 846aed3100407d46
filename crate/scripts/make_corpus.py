"""Build the isomorph-free corpora of small graphs used by the test suites.

graphs_le7.g6: networkx's graph atlas (all 1253 graphs on 0..7 vertices).
graphs_le8.g6: the atlas plus every 8-vertex graph, produced by extending each
7-vertex atlas graph by one vertex in every possible way and removing
isomorphic duplicates. Expected count on 8 vertices: 12346 (OEIS A000088).
"""
import itertools
import sys

import networkx as nx


def g6(g):
    return nx.to_graph6_bytes(g, header=False).decode().strip()


def main(out_dir):
    atlas = nx.graph_atlas_g()
    with open(f"{out_dir}/graphs_le7.g6", "w") as f:
        for g in atlas:
            f.write(g6(nx.convert_node_labels_to_integers(g)) + "\n")

    seven = [g for g in atlas if g.number_of_nodes() == 7]
    buckets = {}
    for base in seven:
        for r in range(8):
            for nbrs in itertools.combinations(range(7), r):
                h = nx.Graph(base)
                h.add_node(7)
                h.add_edges_from((7, v) for v in nbrs)
                key = (
                    h.number_of_edges(),
                    tuple(sorted(d for _, d in h.degree())),
                    nx.weisfeiler_lehman_graph_hash(h, iterations=3),
                )
                reps = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(h, o) for o in reps):
                    reps.append(h)
    eight = [g for reps in buckets.values() for g in reps]
    eight.sort(key=lambda g: (g.number_of_edges(), g6(g)))
    assert len(eight) == 12346, len(eight)
    with open(f"{out_dir}/graphs_le8.g6", "w") as f:
        for g in atlas:
            f.write(g6(nx.convert_node_labels_to_integers(g)) + "\n")
        for g in eight:
            f.write(g6(g) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else ".")
