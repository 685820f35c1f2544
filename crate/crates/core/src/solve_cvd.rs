//! Cluster vertex deletion (induced-P3-free deletion) in O(K) words.
//!
//! Each branch guesses the cover part `S` of the solution and keeps
//! `Y = X \ S`. With `Y` fixed, a P3 with two or three vertices in `Y`
//! forces deletions of its outside vertex, and a P3 with one vertex in `Y`
//! has two outside neighbors of that vertex, all but one of which go.

use crate::enumeration::{SubsetCursor, SubsetMode};
use crate::error::Result;
use crate::graphstream::{bit_words, MemoryMeter, StreamEvent, StreamHandle, VertexCover};
use crate::outcome::{SolveOutcome, Verdict};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CvdOptions {
    /// Cache `G[Y]` in one pass instead of re-scanning per pair. Uses
    /// O(K^2) words.
    pub cache_cover: bool,
}

pub fn cvd_word_budget(k: usize) -> usize {
    6 * k + 8
}

pub fn cvd_pass_bound(k: usize) -> u64 {
    (1u64 << k) * (k * k + k) as u64 + 1
}

pub fn solve_cvd(h: &StreamHandle<'_>, x: &VertexCover, ell: usize, meter: &MemoryMeter) -> Result<SolveOutcome> {
    solve_cvd_with(h, x, ell, CvdOptions::default(), meter)
}

pub fn solve_cvd_with(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    ell: usize,
    opts: CvdOptions,
    meter: &MemoryMeter,
) -> Result<SolveOutcome> {
    h.require_al()?;
    let start = h.passes();
    let k = x.len();
    let _x_words = meter.charge(k)?;
    let mut cursor = SubsetCursor::first(k, ell, SubsetMode::AtMost);
    let mut cursor_words = meter.charge(0)?;
    let mut verdict = Verdict::No;
    while let Some(s) = cursor.current() {
        cursor_words.resize(s.len())?;
        let mut b = Branch::new(h, x, s, ell, meter)?;
        let found = if opts.cache_cover { b.run_cached()? } else { b.run()? };
        if found {
            verdict = Verdict::Yes(b.solution());
            break;
        }
        drop(b);
        cursor = cursor.next()?;
    }
    Ok(SolveOutcome { verdict, passes: h.passes() - start, peak_words: meter.peak_words() })
}

struct Branch<'a, 'g, 'm> {
    h: &'a StreamHandle<'g>,
    x: &'a VertexCover,
    s: Vec<usize>,
    y: Vec<usize>,
    ell: usize,
    deleted: Vec<usize>,
    overflow: bool,
    meter: &'m MemoryMeter,
    // S and Y together
    _y_words: crate::graphstream::Charge<'m>,
    deleted_words: crate::graphstream::Charge<'m>,
}

impl<'a, 'g, 'm> Branch<'a, 'g, 'm> {
    fn new(
        h: &'a StreamHandle<'g>,
        x: &'a VertexCover,
        s_pos: &[usize],
        ell: usize,
        meter: &'m MemoryMeter,
    ) -> Result<Self> {
        let s: Vec<usize> = s_pos.iter().map(|&p| x.members()[p]).collect();
        let y: Vec<usize> = x.members().iter().copied().filter(|v| !s.contains(v)).collect();
        Ok(Branch {
            h,
            x,
            ell,
            _y_words: meter.charge(x.len())?,
            deleted_words: meter.charge(0)?,
            s,
            y,
            deleted: Vec::new(),
            overflow: false,
            meter,
        })
    }

    fn solution(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.s.iter().chain(&self.deleted).copied().collect();
        out.sort_unstable();
        out
    }

    fn is_outside(&self, v: usize) -> bool {
        !self.x.contains(v) && !self.deleted.contains(&v)
    }

    fn delete(&mut self, v: usize) -> Result<()> {
        if self.s.len() + self.deleted.len() >= self.ell {
            self.overflow = true;
            return Ok(());
        }
        self.deleted.push(v);
        self.deleted_words.grow(1)
    }

    fn pair(&self, p: &[usize]) -> (usize, usize) {
        (self.y[p[0]], self.y[p[1]])
    }

    /// One pass over the blocks of Y: is `a` adjacent to `b`?
    fn learn_edge(&self, e: &StreamEvent, learn: Option<(usize, usize)>, found: &mut bool) {
        if let (StreamEvent::Edge(v, w), Some((a, b))) = (*e, learn) {
            if v == a && w == b {
                *found = true;
            }
        }
    }

    fn run(&mut self) -> Result<bool> {
        let ny = self.y.len();
        let first = SubsetCursor::first(ny, 2, SubsetMode::Exactly);
        let first_pair = first.current().map(|p| self.pair(p));

        // Phase 0: reject Y if it holds a P3, one pass per pair of Y
        let mut third = vec![0u8; ny];
        let _third_words = self.meter.charge(bit_words(2 * ny) + 4)?;
        let mut c = first.clone();
        let mut e_next = false;
        while let Some(p) = c.current() {
            let (a, b) = self.pair(p);
            let next = c.next()?;
            let learn = if next.is_end() { first_pair } else { None };
            third.iter_mut().for_each(|t| *t = 0);
            let mut e_ab = false;
            let mut e_learn = false;
            let mut cur: Option<usize> = None;
            self.h.run_pass(|e| {
                self.learn_edge(e, learn, &mut e_learn);
                match *e {
                    StreamEvent::VertexBegin(v) => cur = self.y.iter().position(|&u| u == v),
                    StreamEvent::Edge(v, w) if cur.is_some() => {
                        if v == a && w == b {
                            e_ab = true;
                        }
                        let i = cur.unwrap();
                        if v != a && v != b {
                            third[i] |= (w == a) as u8 | ((w == b) as u8) << 1;
                        }
                    }
                    _ => {}
                }
            });
            e_next = e_learn;
            let p3 = (0..ny).any(|i| {
                let yi = self.y[i];
                yi != a && yi != b && (third[i].count_ones() + e_ab as u32) == 2
            });
            if p3 {
                return Ok(false);
            }
            c = next;
        }

        // Phase 1: outside vertices that see exactly one end of an edge of
        // Y, or both ends of a non-edge, must go
        let mut c = first;
        let mut e_cur = e_next;
        while let Some(p) = c.current() {
            let (a, b) = self.pair(p);
            let next = c.next()?;
            let learn = next.current().map(|q| self.pair(q));
            let mut e_learn = false;
            let mut cur: Option<usize> = None;
            let (mut sa, mut sb) = (false, false);
            let mut result = Ok(());
            self.h.run_pass(|e| {
                self.learn_edge(e, learn, &mut e_learn);
                match *e {
                    StreamEvent::VertexBegin(v) => {
                        cur = self.is_outside(v).then_some(v);
                        sa = false;
                        sb = false;
                    }
                    StreamEvent::Edge(v, w) if cur == Some(v) => {
                        sa |= w == a;
                        sb |= w == b;
                    }
                    StreamEvent::VertexEnd(v) if cur == Some(v) => {
                        let forced = if e_cur { sa != sb } else { sa && sb };
                        if forced && result.is_ok() {
                            result = self.delete(v);
                        }
                    }
                    _ => {}
                }
            });
            result?;
            if self.overflow {
                return Ok(false);
            }
            e_cur = e_learn;
            c = next;
        }
        self.check_one_cover_vertex_left();

        // Phase 2: each vertex of Y keeps its first outside neighbor
        for i in 0..ny {
            let y = self.y[i];
            let mut kept = false;
            let mut cur: Option<usize> = None;
            let mut adj = false;
            let mut result = Ok(());
            self.h.run_pass(|e| match *e {
                StreamEvent::VertexBegin(v) => {
                    cur = self.is_outside(v).then_some(v);
                    adj = false;
                }
                StreamEvent::Edge(v, w) if cur == Some(v) => adj |= w == y,
                StreamEvent::VertexEnd(v) if cur == Some(v) && adj => {
                    if !kept {
                        kept = true;
                    } else if result.is_ok() {
                        result = self.delete(v);
                    }
                }
                _ => {}
            });
            result?;
            if self.overflow {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Variant that caches `G[Y]` in one pass.
    fn run_cached(&mut self) -> Result<bool> {
        let ny = self.y.len();
        let mut adj = vec![vec![false; ny]; ny];
        let _cache = self.meter.charge(ny * ny.saturating_sub(1) / 2)?;
        let mut cur: Option<usize> = None;
        self.h.run_pass(|e| match *e {
            StreamEvent::VertexBegin(v) => cur = self.y.iter().position(|&u| u == v),
            StreamEvent::Edge(_, w) if cur.is_some() => {
                if let Some(j) = self.y.iter().position(|&u| u == w) {
                    adj[cur.unwrap()][j] = true;
                }
            }
            _ => {}
        });
        for a in 0..ny {
            for b in a + 1..ny {
                for c in b + 1..ny {
                    if adj[a][b] as u8 + adj[a][c] as u8 + adj[b][c] as u8 == 2 {
                        return Ok(false);
                    }
                }
            }
        }
        let mut c = SubsetCursor::first(ny, 2, SubsetMode::Exactly);
        while let Some(p) = c.current() {
            let (ia, ib) = (p[0], p[1]);
            let (a, b) = self.pair(p);
            let e_ab = adj[ia][ib];
            let mut cur: Option<usize> = None;
            let (mut sa, mut sb) = (false, false);
            let mut result = Ok(());
            self.h.run_pass(|e| match *e {
                StreamEvent::VertexBegin(v) => {
                    cur = self.is_outside(v).then_some(v);
                    sa = false;
                    sb = false;
                }
                StreamEvent::Edge(v, w) if cur == Some(v) => {
                    sa |= w == a;
                    sb |= w == b;
                }
                StreamEvent::VertexEnd(v) if cur == Some(v) => {
                    let forced = if e_ab { sa != sb } else { sa && sb };
                    if forced && result.is_ok() {
                        result = self.delete(v);
                    }
                }
                _ => {}
            });
            result?;
            if self.overflow {
                return Ok(false);
            }
            c = c.next()?;
        }
        self.check_one_cover_vertex_left();
        for i in 0..ny {
            let y = self.y[i];
            let mut kept = false;
            let mut cur: Option<usize> = None;
            let mut hit = false;
            let mut result = Ok(());
            self.h.run_pass(|e| match *e {
                StreamEvent::VertexBegin(v) => {
                    cur = self.is_outside(v).then_some(v);
                    hit = false;
                }
                StreamEvent::Edge(v, w) if cur == Some(v) => hit |= w == y,
                StreamEvent::VertexEnd(v) if cur == Some(v) && hit => {
                    if !kept {
                        kept = true;
                    } else if result.is_ok() {
                        result = self.delete(v);
                    }
                }
                _ => {}
            });
            result?;
            if self.overflow {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Debug check: after the forced deletions every remaining induced P3
    /// has exactly one vertex in Y.
    fn check_one_cover_vertex_left(&self) {
        if !cfg!(debug_assertions) {
            return;
        }
        let g = self.h.source();
        if g.n() > 40 {
            return;
        }
        let alive: Vec<usize> = g.vertices().filter(|&v| self.h.keeps(v) && !self.s.contains(&v) && !self.deleted.contains(&v)).collect();
        for (i, &a) in alive.iter().enumerate() {
            for (j, &b) in alive.iter().enumerate().skip(i + 1) {
                for &c in &alive[j + 1..] {
                    let e = g.has_edge(a, b) as u8 + g.has_edge(a, c) as u8 + g.has_edge(b, c) as u8;
                    if e == 2 {
                        let in_y = [a, b, c].iter().filter(|&&v| self.x.contains(v)).count();
                        debug_assert_eq!(in_y, 1, "P3 {a} {b} {c} survives the forced deletions");
                    }
                }
            }
        }
    }
}
