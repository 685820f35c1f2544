//! c-incidence vectors over GF(2), an incremental basis, and the
//! (ℓ+1)-pass low-rank kernel.

use crate::enumeration::{SubsetCursor, SubsetMode};
use crate::error::{Error, Result};
use crate::graphstream::{bit_words, Graph, MemoryMeter, StreamEvent, StreamHandle, VertexCover};
use crate::kernel_adjacency::KernelOutput;

/// Dense GF(2) vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Gf2Vector {
        Gf2Vector { len, words: vec![0; bit_words(len)] }
    }

    pub fn from_bits(bits: &[bool]) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn xor_assign(&mut self, o: &Gf2Vector) {
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }
}

/// Basis in reduced echelon form: every row has a pivot column that is
/// zero in all other rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Basis {
    dim: usize,
    rows: Vec<Gf2Vector>,
    pivots: Vec<usize>,
    chosen: Vec<usize>,
}

impl F2Basis {
    pub fn new(dim: usize) -> F2Basis {
        F2Basis { dim, rows: Vec::new(), pivots: Vec::new(), chosen: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    /// Vertex recorded for each row, in insertion order.
    pub fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    fn check(&self, v: &Gf2Vector) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { got: v.len(), want: self.dim });
        }
        Ok(())
    }

    fn reduce(&self, v: &mut Gf2Vector) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &Gf2Vector) -> Result<bool> {
        self.check(v)?;
        let mut w = v.clone();
        self.reduce(&mut w);
        Ok(w.is_zero())
    }

    /// Adds `v` (tagged with vertex `tag`) if it is outside the span.
    pub fn insert(&mut self, v: &Gf2Vector, tag: usize) -> Result<bool> {
        self.check(v)?;
        let mut w = v.clone();
        self.reduce(&mut w);
        let Some(p) = w.first_one() else {
            return Ok(false);
        };
        for row in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&w);
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        self.chosen.push(tag);
        Ok(true)
    }
}

/// Number of disjoint `(Q, R)` pairs over a `k`-set with `|Q|+|R| <= c`.
pub fn pair_count(k: usize, c: usize) -> usize {
    (0..=c.min(k)).map(|i| binomial(k, i) << i).sum()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Walks all `(Q, R)` pairs, as bit masks over cover positions, in the
/// canonical order: by `|Q|+|R|`, then the union in dictionary order, then
/// the split with elements taken in order and `Q` before `R`.
pub fn for_each_pair(k: usize, c: usize, mut f: impl FnMut(u64, u64)) {
    let mut cur = SubsetCursor::first(k, c, SubsetMode::AtMost);
    while let Some(y) = cur.current() {
        let s = y.len();
        for a in 0u64..(1 << s) {
            let (mut q, mut r) = (0u64, 0u64);
            for (j, &pos) in y.iter().enumerate() {
                if a >> (s - 1 - j) & 1 == 1 {
                    r |= 1 << pos;
                } else {
                    q |= 1 << pos;
                }
            }
            f(q, r);
        }
        cur = cur.next().unwrap();
    }
}

/// The canonical pair list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidencePairIndex {
    pub k: usize,
    pub c: usize,
    pub pairs: Vec<(u64, u64)>,
}

impl IncidencePairIndex {
    pub fn new(k: usize, c: usize) -> IncidencePairIndex {
        let mut pairs = Vec::with_capacity(pair_count(k, c));
        for_each_pair(k, c, |q, r| pairs.push((q, r)));
        IncidencePairIndex { k, c, pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn require_small_cover(x: &VertexCover) -> Result<()> {
    if x.len() > 64 {
        return Err(Error::BadParams(format!("cover of size {} exceeds 64", x.len())));
    }
    Ok(())
}

/// c-incidence vector of a vertex whose cover neighbors are given as a
/// mask over cover positions.
pub fn incidence_vector_mask(nbrs: u64, k: usize, c: usize) -> Gf2Vector {
    let mut v = Gf2Vector::zeros(pair_count(k, c));
    let mut i = 0;
    for_each_pair(k, c, |q, r| {
        v.set(i, nbrs & q == 0 && nbrs & r == r);
        i += 1;
    });
    v
}

pub fn incidence_vector(neighbors_in_x: &[usize], x: &VertexCover, c: usize) -> Result<Gf2Vector> {
    require_small_cover(x)?;
    let mut mask = 0u64;
    for &w in neighbors_in_x {
        let p = x.position(w).ok_or(Error::NeighborOutsideCover(w))?;
        mask |= 1 << p;
    }
    Ok(incidence_vector_mask(mask, x.len(), c))
}

/// Documented word budget of `low_rank_reduce_str`.
pub fn lowrank_word_budget(k: usize, kept_outside: usize, rows: usize, len: usize) -> usize {
    4 * (k + kept_outside + 2 * rows * bit_words(len) + len) + 8
}

/// Streaming low-rank kernel: ℓ scans each keeping a basis of the
/// incidence vectors of not-yet-kept outside vertices, then one pass that
/// emits the kept induced subgraph.
pub fn low_rank_reduce_str(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    ell: usize,
    c: usize,
    meter: &MemoryMeter,
) -> Result<KernelOutput> {
    h.require_al()?;
    require_small_cover(x)?;
    if ell == 0 {
        return Err(Error::BadParams("low-rank kernel needs at least one iteration".into()));
    }
    let start = h.passes();
    let k = x.len();
    let len = pair_count(k, c);
    let vw = bit_words(len);
    let _x_words = meter.charge(k)?;
    let mut a: Vec<usize> = Vec::new();
    let mut a_words = meter.charge(0)?;

    for _ in 0..ell {
        let mut basis = F2Basis::new(len);
        let mut basis_words = meter.charge(0)?;
        let mut added: Vec<usize> = Vec::new();
        let mut added_words = meter.charge(0)?;
        let _scan = meter.charge(bit_words(k) + vw + c + 2)?;
        let mut cur: Option<usize> = None;
        let mut nbrs = 0u64;
        h.try_pass(|e| -> Result<()> {
            match *e {
                StreamEvent::VertexBegin(v) => {
                    cur = (!x.contains(v) && a.binary_search(&v).is_err()).then_some(v);
                    nbrs = 0;
                }
                StreamEvent::Edge(v, w) if cur == Some(v) => {
                    let p = x.position(w).ok_or(Error::InvalidCover(v, w))?;
                    nbrs |= 1 << p;
                }
                StreamEvent::VertexEnd(v) if cur == Some(v) => {
                    let vec = incidence_vector_mask(nbrs, k, c);
                    if basis.insert(&vec, v)? {
                        basis_words.grow(vw + 2)?;
                        added.push(v);
                        added_words.grow(1)?;
                    }
                }
                _ => {}
            }
            Ok(())
        })?;
        drop(basis_words);
        a_words.grow(added.len())?;
        drop(added_words);
        a.extend(added);
        a.sort_unstable();
    }

    let mut edges = Vec::new();
    let kept = |v: usize| x.contains(v) || a.binary_search(&v).is_ok();
    h.run_pass(|e| {
        if let StreamEvent::Edge(v, w) = *e {
            if v < w && kept(v) && kept(w) {
                edges.push((v, w));
            }
        }
    });
    let mut kept_vertices: Vec<usize> = x.members().iter().copied().chain(a.iter().copied()).collect();
    kept_vertices.sort_unstable();
    Ok(KernelOutput {
        kept_vertices,
        edges,
        passes: h.passes() - start,
        peak_words: meter.peak_words(),
    })
}

/// Low-rank kernel with ℓ = k + 1 + p.
pub fn kernel_by_rank(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    k: usize,
    p_of_k: usize,
    c: usize,
    meter: &MemoryMeter,
) -> Result<KernelOutput> {
    low_rank_reduce_str(h, x, k + 1 + p_of_k, c, meter)
}

fn rank_of(rows: &[Vec<bool>]) -> usize {
    let mut m: Vec<Vec<bool>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][col]) else {
            continue;
        };
        m.swap(rank, piv);
        for i in 0..m.len() {
            if i != rank && m[i][col] {
                let src = m[rank].clone();
                for (a, b) in m[i].iter_mut().zip(src) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// In-memory low-rank reduction: in each of ℓ rounds, keep the outside
/// vertices (in `order`) whose vector raises the rank of the prefix.
pub fn low_rank_reduce(g: &Graph, x: &VertexCover, ell: usize, c: usize, order: &[usize]) -> Vec<usize> {
    let k = x.len();
    let mut a: Vec<usize> = Vec::new();
    for _ in 0..ell {
        let mut prefix: Vec<Vec<bool>> = Vec::new();
        let mut rank = 0;
        let mut round = Vec::new();
        for &v in order {
            if x.contains(v) || a.contains(&v) {
                continue;
            }
            let mask = g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << x.position(w).unwrap());
            prefix.push(incidence_vector_mask(mask, k, c).bits());
            let r = rank_of(&prefix);
            if r > rank {
                round.push(v);
                rank = r;
            }
        }
        a.extend(round);
    }
    let mut kept: Vec<usize> = x.members().iter().copied().chain(a).collect();
    kept.sort_unstable();
    kept
}
