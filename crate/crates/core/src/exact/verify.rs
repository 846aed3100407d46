//! Minor models and their independent checkers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};

/// Ordered branch sets `T_1, ..., T_t`. Serialises as an array of arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct MinorModel {
    pub sets: Vec<Vec<usize>>,
}

impl MinorModel {
    pub fn from_sets<'a, I: IntoIterator<Item = &'a VertexSet>>(sets: I) -> MinorModel {
        MinorModel { sets: sets.into_iter().map(|s| s.to_vec()).collect() }
    }

    pub fn singletons<I: IntoIterator<Item = usize>>(vs: I) -> MinorModel {
        MinorModel { sets: vs.into_iter().map(|v| vec![v]).collect() }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// The last `k` branch sets.
    pub fn suffix(&self, k: usize) -> MinorModel {
        let k = k.min(self.sets.len());
        MinorModel { sets: self.sets[self.sets.len() - k..].to_vec() }
    }
}

/// First failing condition found by a model check. Set indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum Violation {
    OutOfRange { set: usize, vertex: usize },
    Empty { set: usize },
    Overlap { i: usize, j: usize, vertex: usize },
    Disconnected { set: usize },
    /// `vertex` lies in `T_j` but has no neighbour in `T_i`.
    NotDominated { i: usize, j: usize, vertex: usize },
    /// No edge joins `T_i` and `T_j`.
    NotAdjacent { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::OutOfRange { set, vertex } => write!(f, "set {set}: vertex {vertex} out of range"),
            Violation::Empty { set } => write!(f, "set {set} is empty"),
            Violation::Overlap { i, j, vertex } => write!(f, "sets {i} and {j} share vertex {vertex}"),
            Violation::Disconnected { set } => write!(f, "set {set} is not connected"),
            Violation::NotDominated { i, j, vertex } => {
                write!(f, "vertex {vertex} of set {j} has no neighbour in set {i}")
            }
            Violation::NotAdjacent { i, j } => write!(f, "no edge between sets {i} and {j}"),
        }
    }
}

fn structural(g: &Graph, model: &MinorModel) -> Result<Vec<VertexSet>, Violation> {
    let mut sets = Vec::with_capacity(model.sets.len());
    let mut owner: Vec<usize> = vec![0; g.n()];
    for (idx, raw) in model.sets.iter().enumerate() {
        let set_no = idx + 1;
        if let Some(&v) = raw.iter().find(|&&v| v >= g.n()) {
            return Err(Violation::OutOfRange { set: set_no, vertex: v });
        }
        if raw.is_empty() {
            return Err(Violation::Empty { set: set_no });
        }
        let mut s = VertexSet::new();
        for &v in raw {
            if owner[v] != 0 {
                return Err(Violation::Overlap { i: owner[v], j: set_no, vertex: v });
            }
            owner[v] = set_no;
            s.insert(v);
        }
        if !g.is_connected_set(&s) {
            return Err(Violation::Disconnected { set: set_no });
        }
        sets.push(s);
    }
    Ok(sets)
}

/// Checks that `model` is a dominating clique minor model in `g`.
pub fn verify_dominating_model(g: &Graph, model: &MinorModel) -> Result<(), Violation> {
    let sets = structural(g, model)?;
    for (i, ti) in sets.iter().enumerate() {
        let dominated = g.neighborhood_of(ti);
        for (j, tj) in sets.iter().enumerate().skip(i + 1) {
            if let Some(v) = tj.difference(&dominated).first() {
                return Err(Violation::NotDominated { i: i + 1, j: j + 1, vertex: v });
            }
        }
    }
    Ok(())
}

/// Checks that `model` is an ordinary clique minor model in `g`.
pub fn verify_ordinary_model(g: &Graph, model: &MinorModel) -> Result<(), Violation> {
    let sets = structural(g, model)?;
    for (i, ti) in sets.iter().enumerate() {
        let touched = g.neighborhood_of(ti);
        for (j, tj) in sets.iter().enumerate().skip(i + 1) {
            if !touched.intersects(tj) {
                return Err(Violation::NotAdjacent { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(())
}
