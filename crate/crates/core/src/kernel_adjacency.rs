//! One-pass marking kernel for families characterized by few adjacencies.

use crate::error::{Error, Result};
use crate::graphstream::{bit_words, Graph, MemoryMeter, StreamEvent, StreamHandle, VertexCover};
use crate::kernel_lowrank::{for_each_pair, pair_count};
use crate::properties::AdjacencyCharacterization;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelOutput {
    /// Cover plus kept outside vertices, ascending.
    pub kept_vertices: Vec<usize>,
    /// Kernel edges `(min, max)` in emission order.
    pub edges: Vec<(usize, usize)>,
    pub passes: u64,
    pub peak_words: usize,
}

impl KernelOutput {
    /// Kernel as a graph on `0..kept.len()`, kept vertex `kept[i]` renamed to `i`.
    pub fn to_graph(&self) -> Graph {
        let id = |v: usize| self.kept_vertices.binary_search(&v).unwrap();
        Graph::new(self.kept_vertices.len(), self.edges.iter().map(|&(u, v)| (id(u), id(v)))).unwrap()
    }

    /// The source cover renamed into kernel ids.
    pub fn cover(&self, x: &VertexCover) -> VertexCover {
        let g = self.to_graph();
        let ids: Vec<usize> =
            x.members().iter().map(|&v| self.kept_vertices.binary_search(&v).unwrap()).collect();
        VertexCover::new(&g, &ids).unwrap()
    }
}

/// `|X| + r * (number of (Y+, Y-) entries)`.
pub fn kernel_size_bound(k: usize, r: usize, c: usize) -> usize {
    k + r * pair_count(k, c)
}

/// Documented word budget of `reduce_str`: X, V′, the mark table, the
/// per-vertex edge buffer and two scalars.
pub fn reduce_word_budget(k: usize, c: usize, max_outside_degree: usize) -> usize {
    2 * k + 4 * pair_count(k, c) + max_outside_degree + 2
}

struct Entry {
    plus: u64,
    minus: u64,
    plus_len: i64,
    marks: usize,
    progress: i64,
}

/// One pass: keeps the cover and, for every `(Y+, Y-)` with
/// `|Y+|+|Y-| <= c`, the first `r` outside vertices adjacent to all of
/// `Y+` and none of `Y-`.
pub fn reduce_str(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    r: usize,
    c: usize,
    meter: &MemoryMeter,
) -> Result<KernelOutput> {
    h.require_al()?;
    let k = x.len();
    if k > 64 {
        return Err(Error::BadParams(format!("cover of size {k} exceeds 64")));
    }
    let start = h.passes();
    let _x_words = meter.charge(k)?;
    let mut table = Vec::with_capacity(pair_count(k, c));
    for_each_pair(k, c, |minus, plus| {
        table.push(Entry { plus, minus, plus_len: plus.count_ones() as i64, marks: 0, progress: 0 })
    });
    let _table_words = meter.charge(table.len() * (2 * bit_words(k) + 2))?;
    let mut seen_cover: Vec<usize> = Vec::new();
    let mut seen_words = meter.charge(0)?;
    let mut buffer: Vec<(usize, usize)> = Vec::new();
    let mut buffer_words = meter.charge(0)?;
    let _scalars = meter.charge(2)?;

    let mut marked = Vec::new();
    let mut edges = Vec::new();
    let mut in_cover = false;
    h.try_pass(|e| -> Result<()> {
        match *e {
            StreamEvent::VertexBegin(v) => {
                in_cover = x.contains(v);
                if !in_cover {
                    for z in table.iter_mut() {
                        z.progress = 0;
                    }
                }
            }
            StreamEvent::Edge(v, w) if in_cover => {
                if seen_cover.contains(&w) {
                    edges.push((v.min(w), v.max(w)));
                }
            }
            StreamEvent::Edge(v, w) => {
                let p = x.position(w).ok_or(Error::InvalidCover(v, w))?;
                let bit = 1u64 << p;
                for z in table.iter_mut() {
                    if z.marks < r && z.progress >= 0 {
                        if z.plus & bit != 0 {
                            z.progress += 1;
                        }
                        if z.minus & bit != 0 {
                            z.progress = -1;
                        }
                    }
                }
                buffer.push((v, w));
                buffer_words.grow(1)?;
            }
            StreamEvent::VertexEnd(v) => {
                if in_cover {
                    seen_cover.push(v);
                    seen_words.grow(1)?;
                } else {
                    let mut hit = false;
                    for z in table.iter_mut() {
                        if z.marks < r && z.progress == z.plus_len {
                            z.marks += 1;
                            hit = true;
                        }
                    }
                    if hit {
                        marked.push(v);
                        edges.extend(buffer.iter().map(|&(a, b)| (a.min(b), a.max(b))));
                    }
                    buffer.clear();
                    buffer_words.resize(0)?;
                }
            }
            StreamEvent::PassEnd => {}
        }
        Ok(())
    })?;
    let mut kept_vertices: Vec<usize> = x.members().iter().copied().chain(marked).collect();
    kept_vertices.sort_unstable();
    Ok(KernelOutput { kept_vertices, edges, passes: h.passes() - start, peak_words: meter.peak_words() })
}

/// In-memory marking with "first r in `order`" as the arbitrary choice.
pub fn reduce(g: &Graph, x: &VertexCover, r: usize, c: usize, order: &[usize]) -> KernelOutput {
    let k = x.len();
    let mut keep = vec![false; g.n()];
    for &v in x.members() {
        keep[v] = true;
    }
    for_each_pair(k, c, |minus, plus| {
        let members: Vec<usize> = x.members().to_vec();
        let fits = |v: usize| {
            let n = g.neighbors(v);
            (0..k).all(|i| {
                let adj = n.binary_search(&members[i]).is_ok();
                !(plus >> i & 1 == 1 && !adj) && !(minus >> i & 1 == 1 && adj)
            })
        };
        for &v in order.iter().filter(|&&v| !x.contains(v) && fits(v)).take(r) {
            keep[v] = true;
        }
    });
    let kept_vertices: Vec<usize> = g.vertices().filter(|&v| keep[v]).collect();
    let edges = g.edges().iter().copied().filter(|&(u, v)| keep[u] && keep[v]).collect();
    KernelOutput { kept_vertices, edges, passes: 0, peak_words: 0 }
}

/// Kernel for deleting at most `ell` vertices: `r = ell + p(K)`, `c = c_pi`.
pub fn kernel_pifree(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    ell: usize,
    ch: &AdjacencyCharacterization,
    meter: &MemoryMeter,
) -> Result<KernelOutput> {
    let p = ch.p.checked(x.len())?;
    reduce_str(h, x, ell + p, ch.c_pi, meter)
}

/// Kernel for the largest induced member-free subgraph: `r = p(K)`.
pub fn kernel_largest_induced(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    ch: &AdjacencyCharacterization,
    meter: &MemoryMeter,
) -> Result<KernelOutput> {
    let p = ch.p.checked(x.len())?;
    reduce_str(h, x, p, ch.c_pi, meter)
}

/// Kernel for partitioning into `q` member-free parts: `r = q p(K)`, `c = q c_pi`.
pub fn kernel_partition_q(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    q: usize,
    ch: &AdjacencyCharacterization,
    meter: &MemoryMeter,
) -> Result<KernelOutput> {
    if q == 0 {
        return Err(Error::BadParams("q must be at least 1".into()));
    }
    let p = ch.p.checked(x.len())?;
    reduce_str(h, x, q * p, q * ch.c_pi, meter)
}
