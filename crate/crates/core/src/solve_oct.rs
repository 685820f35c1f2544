//! Odd cycle transversal by guessing the cover deletions and a 2-coloring
//! of the rest of the cover.
//!
//! With the cover part colored, an outside vertex is forced out iff it sees
//! both colors; otherwise it takes the color its neighbors lack.

use crate::enumeration::{SubsetCursor, SubsetMode};
use crate::error::Result;
use crate::graphstream::{MemoryMeter, StreamEvent, StreamHandle, VertexCover};
use crate::outcome::{SolveOutcome, Verdict};

pub fn oct_word_budget(k: usize) -> usize {
    5 * k + 8
}

pub fn oct_cc_word_budget(k: usize) -> usize {
    k * k + 6 * k + 8
}

pub fn oct_pass_bound(k: usize) -> u64 {
    3u64.pow(k as u32) + 1
}

pub fn oct_cc_pass_bound(k: usize) -> u64 {
    3u64.pow(k as u32) + (1u64 << k)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OctCcOptions {
    /// Find components of `G[Y]` over repeated passes with O(K) words.
    pub low_mem: bool,
}

/// Cover vertices of the current branch, ascending, and the outside
/// deletions forced so far.
struct Branch<'m> {
    s: Vec<usize>,
    y: Vec<usize>,
    ell: usize,
    deleted: Vec<usize>,
    deleted_words: crate::graphstream::Charge<'m>,
    _sy_words: crate::graphstream::Charge<'m>,
}

impl<'m> Branch<'m> {
    fn new(x: &VertexCover, s_pos: &[usize], ell: usize, meter: &'m MemoryMeter) -> Result<Self> {
        let s: Vec<usize> = s_pos.iter().map(|&p| x.members()[p]).collect();
        let y = x.members().iter().copied().filter(|v| s.binary_search(v).is_err()).collect();
        Ok(Branch {
            s,
            y,
            ell,
            deleted: Vec::new(),
            deleted_words: meter.charge(0)?,
            _sy_words: meter.charge(x.len())?,
        })
    }

    fn y_index(&self, v: usize) -> Option<usize> {
        self.y.binary_search(&v).ok()
    }

    fn solution(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.s.iter().chain(&self.deleted).copied().collect();
        out.sort_unstable();
        out
    }

    /// One pass under the coloring `color(i)` of `y[i]`. Returns false if
    /// the cover part is not properly colored or too many outside vertices
    /// are forced out.
    fn pass(&mut self, h: &StreamHandle<'_>, x: &VertexCover, color: impl Fn(usize) -> bool) -> Result<bool> {
        self.deleted.clear();
        self.deleted_words.resize(0)?;
        let mut valid = true;
        let mut overflow = false;
        let mut cur_y: Option<usize> = None;
        let mut cur_out = false;
        let mut seen = [false; 2];
        let budget = self.ell.saturating_sub(self.s.len());
        let mut forced: Vec<usize> = Vec::new();
        h.run_pass(|e| match *e {
            StreamEvent::VertexBegin(v) => {
                cur_y = self.y_index(v);
                cur_out = !x.contains(v);
                seen = [false; 2];
            }
            StreamEvent::Edge(_, w) => {
                if let Some(j) = self.y_index(w) {
                    if let Some(i) = cur_y {
                        if color(i) == color(j) {
                            valid = false;
                        }
                    } else if cur_out {
                        seen[color(j) as usize] = true;
                    }
                }
            }
            StreamEvent::VertexEnd(v) if cur_out && seen[0] && seen[1] => {
                if forced.len() < budget {
                    forced.push(v);
                } else {
                    overflow = true;
                }
            }
            _ => {}
        });
        self.deleted_words.resize(forced.len())?;
        self.deleted = forced;
        Ok(valid && !overflow)
    }
}

pub fn solve_oct(h: &StreamHandle<'_>, x: &VertexCover, ell: usize, meter: &MemoryMeter) -> Result<SolveOutcome> {
    h.require_al()?;
    let start = h.passes();
    let k = x.len();
    let _x_words = meter.charge(k)?;
    let _scalars = meter.charge(4)?;
    let mut s_cur = SubsetCursor::first(k, ell, SubsetMode::AtMost);
    let mut s_words = meter.charge(0)?;
    while let Some(s) = s_cur.current() {
        s_words.resize(s.len())?;
        let mut b = Branch::new(x, s, ell, meter)?;
        let ny = b.y.len();
        let mut c = SubsetCursor::first(ny, ny, SubsetMode::AtMost);
        let mut c_words = meter.charge(0)?;
        while let Some(y1) = c.current() {
            c_words.resize(y1.len())?;
            let y1 = y1.to_vec();
            if b.pass(h, x, |i| y1.binary_search(&i).is_ok())? {
                let verdict = Verdict::Yes(b.solution());
                return Ok(SolveOutcome { verdict, passes: h.passes() - start, peak_words: meter.peak_words() });
            }
            c = c.next()?;
        }
        s_cur = s_cur.next()?;
    }
    Ok(SolveOutcome { verdict: Verdict::No, passes: h.passes() - start, peak_words: meter.peak_words() })
}

pub fn solve_oct_cc(h: &StreamHandle<'_>, x: &VertexCover, ell: usize, meter: &MemoryMeter) -> Result<SolveOutcome> {
    solve_oct_cc_with(h, x, ell, OctCcOptions::default(), meter)
}

/// Component label and base color of each `y[i]`, or `None` when `G[Y]`
/// is not bipartite.
type Components = Option<(Vec<usize>, Vec<bool>, usize)>;

fn components_cached(h: &StreamHandle<'_>, b: &Branch<'_>, meter: &MemoryMeter) -> Result<Components> {
    let ny = b.y.len();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut edge_words = meter.charge(0)?;
    let mut cur: Option<usize> = None;
    let mut res = Ok(());
    h.run_pass(|e| match *e {
        StreamEvent::VertexBegin(v) => cur = b.y_index(v),
        StreamEvent::Edge(_, w) => {
            if let (Some(i), Some(j)) = (cur, b.y_index(w)) {
                if i < j && res.is_ok() {
                    edges.push((i, j));
                    res = edge_words.grow(2);
                }
            }
        }
        _ => {}
    });
    res?;
    let _label_words = meter.charge(2 * ny)?;
    let mut comp = vec![usize::MAX; ny];
    let mut color = vec![false; ny];
    let mut comps = 0;
    for root in 0..ny {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = comps;
        let mut changed = true;
        while changed {
            changed = false;
            for &(i, j) in &edges {
                for (a, c) in [(i, j), (j, i)] {
                    if comp[a] == comps && comp[c] == usize::MAX {
                        comp[c] = comps;
                        color[c] = !color[a];
                        changed = true;
                    }
                }
            }
        }
        comps += 1;
    }
    if edges.iter().any(|&(i, j)| color[i] == color[j]) {
        return Ok(None);
    }
    Ok(Some((comp, color, comps)))
}

/// Labels components by flooding `G[Y]` over passes: each pass extends
/// the current component from its labeled vertices.
fn components_low_mem(h: &StreamHandle<'_>, b: &Branch<'_>, meter: &MemoryMeter) -> Result<Components> {
    let ny = b.y.len();
    let _label_words = meter.charge(2 * ny)?;
    let mut comp = vec![usize::MAX; ny];
    let mut color = vec![false; ny];
    let mut comps = 0;
    let mut odd = false;
    for root in 0..ny {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = comps;
        loop {
            let mut grew = false;
            let mut cur: Option<usize> = None;
            h.run_pass(|e| match *e {
                StreamEvent::VertexBegin(v) => cur = b.y_index(v),
                StreamEvent::Edge(_, w) => {
                    if let (Some(i), Some(j)) = (cur, b.y_index(w)) {
                        match (comp[i] == comps, comp[j] == comps) {
                            (true, true) => odd |= color[i] == color[j],
                            (true, false) => {
                                comp[j] = comps;
                                color[j] = !color[i];
                                grew = true;
                            }
                            (false, true) => {
                                comp[i] = comps;
                                color[i] = !color[j];
                                grew = true;
                            }
                            (false, false) => {}
                        }
                    }
                }
                _ => {}
            });
            if odd {
                return Ok(None);
            }
            if !grew {
                break;
            }
        }
        comps += 1;
    }
    Ok(Some((comp, color, comps)))
}

pub fn solve_oct_cc_with(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    ell: usize,
    opts: OctCcOptions,
    meter: &MemoryMeter,
) -> Result<SolveOutcome> {
    h.require_al()?;
    let start = h.passes();
    let k = x.len();
    let _x_words = meter.charge(k)?;
    let _scalars = meter.charge(4)?;
    let mut s_cur = SubsetCursor::first(k, ell, SubsetMode::AtMost);
    let mut s_words = meter.charge(0)?;
    while let Some(s) = s_cur.current() {
        s_words.resize(s.len())?;
        let mut b = Branch::new(x, s, ell, meter)?;
        let found = if opts.low_mem { components_low_mem(h, &b, meter)? } else { components_cached(h, &b, meter)? };
        if let Some((comp, base, comps)) = found {
            let _words = meter.charge(2 * b.y.len())?;
            let last = if comps >= 64 { u64::MAX } else { (1u64 << comps) - 1 };
            let mut flip = 0u64;
            loop {
                let color = |i: usize| base[i] ^ (flip >> comp[i] & 1 == 1);
                if b.pass(h, x, color)? {
                    let verdict = Verdict::Yes(b.solution());
                    return Ok(SolveOutcome { verdict, passes: h.passes() - start, peak_words: meter.peak_words() });
                }
                if flip == last {
                    break;
                }
                flip += 1;
            }
        }
        s_cur = s_cur.next()?;
    }
    Ok(SolveOutcome { verdict: Verdict::No, passes: h.passes() - start, peak_words: meter.peak_words() })
}
