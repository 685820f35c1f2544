#![allow(dead_code)]

use vcstream::catalog::{connected_graphs, graphs_up_to_iso};
use vcstream::graphstream::all_vertex_covers;
use vcstream::properties::{ExplicitFamily, PatternGraph};
use vcstream::{Graph, VertexCover};

/// Every connected graph on at most `max_n` vertices, then every
/// `stride`-th disconnected one.
pub fn small_graphs(max_n: usize, stride: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(connected_graphs(n));
    }
    let mut skip = 0;
    for n in 2..=max_n {
        for g in graphs_up_to_iso(n).into_iter().filter(|g| !g.is_connected()) {
            if skip % stride == 0 {
                out.push(g);
            }
            skip += 1;
        }
    }
    out
}

/// `(graph, cover)` pairs over all valid covers of each graph.
pub fn with_covers(graphs: &[Graph], max_k: usize) -> Vec<(Graph, VertexCover)> {
    graphs
        .iter()
        .flat_map(|g| all_vertex_covers(g).into_iter().filter(|x| x.len() <= max_k).map(move |x| (g.clone(), x)))
        .collect()
}

pub fn single(p: PatternGraph) -> ExplicitFamily {
    ExplicitFamily::single(p)
}

pub fn patterns() -> Vec<(&'static str, PatternGraph)> {
    vec![
        ("P3", PatternGraph::path(3)),
        ("P4", PatternGraph::path(4)),
        ("C3", PatternGraph::cycle(3)),
        ("C4", PatternGraph::cycle(4)),
        ("K3", PatternGraph::complete(3)),
    ]
}

pub fn oracle_families() -> Vec<(&'static str, ExplicitFamily)> {
    vec![
        ("{P3}", single(PatternGraph::path(3))),
        ("{C3}", single(PatternGraph::cycle(3))),
        ("{P3,C4}", ExplicitFamily::new(vec![PatternGraph::path(3), PatternGraph::cycle(4)])),
    ]
}

/// Deterministic permutation of `0..n` from a seed.
pub fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    v
}

/// Tally of checks with the first few failures kept for the report.
#[derive(Default)]
pub struct Tally {
    pub checked: usize,
    pub failed: usize,
    pub first: Vec<String>,
    pub note: String,
}

impl Tally {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first.len() < 5 {
                self.first.push(what());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn summary(&self) -> String {
        if self.ok() && self.note.is_empty() {
            format!("{} checks", self.checked)
        } else if self.ok() {
            format!("{} checks, {}", self.checked, self.note)
        } else {
            format!("{} of {} checks failed; first: {}", self.failed, self.checked, self.first.join(" | "))
        }
    }
}
