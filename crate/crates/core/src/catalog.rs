//! Small-graph catalogs for exhaustive checks.

use std::collections::HashSet;
use std::sync::{Mutex, OnceLock};

use crate::graphstream::{Graph, VertexCover};
use crate::properties::canonical_form;

fn cache() -> &'static Mutex<Vec<Vec<Graph>>> {
    static CACHE: OnceLock<Mutex<Vec<Vec<Graph>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![vec![Graph::empty(0)]]))
}

/// One graph per isomorphism class on `n` vertices.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "catalog limited to 8 vertices");
    let mut c = cache().lock().unwrap();
    while c.len() <= n {
        let prev = c.last().unwrap().clone();
        let m = c.len() - 1;
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &prev {
            for mask in 0u32..(1 << m) {
                let e = g
                    .edges()
                    .iter()
                    .copied()
                    .chain((0..m).filter(|&u| mask >> u & 1 == 1).map(|u| (u, m)));
                let h = Graph::new(m + 1, e).unwrap();
                if seen.insert(canonical_form(&h)) {
                    next.push(h);
                }
            }
        }
        c.push(next);
    }
    c[n].clone()
}

pub fn connected_graphs(n: usize) -> Vec<Graph> {
    graphs_up_to_iso(n).into_iter().filter(|g| g.is_connected()).collect()
}

/// Every graph with cover `0..k` and `outside` further vertices, where the
/// outside vertices list their neighborhoods in non-decreasing mask order.
/// Up to renaming outside vertices this is every instance with a size-`k`
/// cover.
pub fn instances_with_cover(k: usize, outside: usize) -> Vec<(Graph, VertexCover)> {
    assert!(k <= 5);
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
    let mut hoods = Vec::new();
    let mut cur = Vec::new();
    multisets(1 << k, outside, 0, &mut cur, &mut hoods);
    let mut out = Vec::new();
    for inner in 0u32..(1 << pairs.len()) {
        for hood in &hoods {
            let mut e: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| inner >> i & 1 == 1).map(|(_, &p)| p).collect();
            for (j, &mask) in hood.iter().enumerate() {
                for x in 0..k {
                    if mask >> x & 1 == 1 {
                        e.push((x, k + j));
                    }
                }
            }
            let g = Graph::new(k + outside, e).unwrap();
            let cover = VertexCover::new(&g, &(0..k).collect::<Vec<_>>()).unwrap();
            out.push((g, cover));
        }
    }
    out
}

fn multisets(classes: usize, len: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for c in from..classes {
        cur.push(c);
        multisets(classes, len, c, cur, out);
        cur.pop();
    }
}
