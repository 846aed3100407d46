//! Ordinary clique minors of order χ for 2K2-free graphs, by peeling induced
//! P4s.

use crate::exact::{chromatic_number, max_clique, verify_ordinary_model, MinorModel};
use crate::graph::{Graph, VertexSet};
use crate::patterns::{find_2k2, find_induced, Pattern};

use super::{internal, ExtractionError};

/// A verified ordinary `K_χ` model.
///
/// With an induced path `v1 v2 v3 v4`, let `A` be the vertices anticomplete to
/// `{v1, v2}` and `B` the remaining ones anticomplete to `{v3, v4}`; removing
/// the path with `A ∪ B` costs two colours, and every survivor touches both
/// `{v1, v2}` and `{v3, v4}`. P4-free graphs are perfect, so a maximum clique
/// finishes.
pub fn extract_micu_minor(g: &Graph) -> Result<MinorModel, ExtractionError> {
    if let Some(witness) = find_2k2(g) {
        return Err(ExtractionError::NotTwoK2Free { witness });
    }
    let sets = peel(g, &Pattern::path(4))?;
    let model = MinorModel::from_sets(&sets);
    if let Err(v) = verify_ordinary_model(g, &model) {
        return Err(internal("micu", format!("model fails verification: {v}")));
    }
    Ok(model)
}

fn peel(g: &Graph, p4: &Pattern) -> Result<Vec<VertexSet>, ExtractionError> {
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    let chi = chromatic_number(g);
    let Some(path) = find_induced(g, p4) else {
        let clique = max_clique(g);
        if clique.len() != chi {
            return Err(internal("micu", format!("P4-free graph with ω = {} < χ = {chi}", clique.len())));
        }
        return Ok(clique.iter().map(VertexSet::singleton).collect());
    };
    let [v1, v2, v3, v4] = [path.vertices[0], path.vertices[1], path.vertices[2], path.vertices[3]];
    let d1: VertexSet = [v1, v2].iter().collect();
    let d2: VertexSet = [v3, v4].iter().collect();
    let outside = g.vertices().difference(&path.vertex_set());
    let a: VertexSet = outside.iter().filter(|&v| !g.neighbors(v).intersects(&d1)).collect();
    let b: VertexSet = outside.difference(&a).iter().filter(|&v| !g.neighbors(v).intersects(&d2)).collect();
    let removed = path.vertex_set().union(&a).union(&b);
    let c1 = a.union(&[v2, v4].iter().collect());
    let c2 = b.union(&[v1, v3].iter().collect());
    if !g.is_independent(&c1) || !g.is_independent(&c2) {
        return Err(internal("micu", "removed part is not 2-coloured by the path classes"));
    }

    let (sub, map) = g.induced_subgraph(&g.vertices().difference(&removed));
    let inner = peel(&sub, p4)?;
    let quota = chi.saturating_sub(2);
    if inner.len() < quota {
        return Err(ExtractionError::Quota { quota, got: inner.len() });
    }
    let mut out = vec![d1, d2];
    out.extend(inner[inner.len() - quota..].iter().map(|s| s.iter().map(|v| map[v]).collect::<VertexSet>()));
    if out.len() > chi {
        out.drain(..out.len() - chi);
    }
    Ok(out)
}
