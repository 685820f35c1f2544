//! Deleting induced copies of a fixed pattern (or a finite family of
//! patterns) by branching on the outside vertices of each copy found.
//!
//! An occurrence with `i` outside vertices is found by choosing which `i`
//! pattern vertices sit outside the cover (they must be independent),
//! placing the rest on the kept cover part `Y`, and scanning the stream
//! for outside vertices whose adjacency toward the placement fits.

use crate::enumeration::{PermutationCursor, SubsetCursor, SubsetMode};
use crate::error::{Error, Result};
use crate::graphstream::{Graph, MemoryMeter, StreamEvent, StreamHandle, VertexCover};
use crate::outcome::{SolveOutcome, Verdict};
use crate::properties::{
    bounded_members, find_induced, vertex_minimal_members, AdjacencyCharacterization, ExplicitFamily, PatternGraph,
};

pub fn hfree_word_budget(k: usize, h: usize) -> usize {
    6 * (k + h * h) + 16
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HfreeOptions {
    /// Re-check each completed witness as an induced copy with one pass.
    pub strict_induced: bool,
}

impl Default for HfreeOptions {
    fn default() -> Self {
        HfreeOptions { strict_induced: true }
    }
}

fn require_edges(p: &PatternGraph) -> Result<()> {
    if p.graph().m() == 0 {
        return Err(Error::PreconditionViolated(format!("pattern on {} vertices has no edge", p.h())));
    }
    if p.h() > 64 {
        return Err(Error::BadParams(format!("pattern on {} vertices exceeds 64", p.h())));
    }
    Ok(())
}

/// A choice of pattern vertices to place on the cover (`inner`) and to
/// find outside it (`outer`).
struct Split<'p> {
    pattern: &'p Graph,
    inner: Vec<usize>,
    outer: Vec<usize>,
    /// For each outer role, its required adjacency toward `inner` as a
    /// bitmask over inner indices.
    want: Vec<u64>,
    inner_edges: usize,
}

impl<'p> Split<'p> {
    fn new(pattern: &'p Graph, outer: Vec<usize>) -> Split<'p> {
        let inner: Vec<usize> = pattern.vertices().filter(|v| !outer.contains(v)).collect();
        let want = outer
            .iter()
            .map(|&o| inner.iter().enumerate().fold(0u64, |m, (a, &u)| m | (pattern.has_edge(o, u) as u64) << a))
            .collect();
        let inner_edges = pattern.edges().iter().filter(|&&(u, v)| !outer.contains(&u) && !outer.contains(&v)).count();
        Split { pattern, inner, outer, want, inner_edges }
    }

    /// Every `O` of size `i` independent in the pattern, in dictionary order.
    fn all(pattern: &'p Graph, i: usize) -> impl Iterator<Item = Split<'p>> + 'p {
        SubsetCursor::first(pattern.n(), i, SubsetMode::Exactly)
            .iter()
            .filter(move |o| pattern.is_independent(o))
            .map(move |o| Split::new(pattern, o))
    }
}

/// Calls `f` with each injective placement of `len` pattern vertices onto
/// `y` (subset in dictionary order, then permutation) until it returns
/// `Some`.
fn for_each_placement<T>(
    y: &[usize],
    len: usize,
    mut f: impl FnMut(&[usize]) -> Result<Option<T>>,
) -> Result<Option<T>> {
    let mut placed = vec![0; len];
    for subset in SubsetCursor::first(y.len(), len, SubsetMode::Exactly).iter() {
        for perm in PermutationCursor::first(len).iter() {
            for a in 0..len {
                placed[a] = y[subset[perm[a]]];
            }
            if let Some(t) = f(&placed)? {
                return Ok(Some(t));
            }
        }
    }
    Ok(None)
}

/// One pass: checks `placed` realizes `split.inner` and greedily fills
/// the outer roles from outside vertices. Returns the role fillers.
fn scan(
    h: &StreamHandle<'_>,
    split: &Split<'_>,
    placed: &[usize],
    outside: &dyn Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut filled: Vec<Option<usize>> = vec![None; split.outer.len()];
    let mut count = 0;
    let mut cur_placed: Option<usize> = None;
    let mut cur_out = false;
    let mut profile = 0u64;
    let at = |v: usize| placed.iter().position(|&p| p == v);
    let r = h.try_pass(|e| -> std::result::Result<(), ()> {
        match *e {
            StreamEvent::VertexBegin(v) => {
                cur_placed = at(v);
                cur_out = cur_placed.is_none() && outside(v);
                profile = 0;
            }
            StreamEvent::Edge(_, w) => {
                if let Some(a) = cur_placed {
                    if let Some(b) = at(w) {
                        if !split.pattern.has_edge(split.inner[a], split.inner[b]) {
                            return Err(());
                        }
                        count += 1;
                    }
                } else if cur_out {
                    if let Some(b) = at(w) {
                        profile |= 1 << b;
                    }
                }
            }
            StreamEvent::VertexEnd(v) if cur_out => {
                if let Some(r) = (0..filled.len()).find(|&r| filled[r].is_none() && split.want[r] == profile) {
                    filled[r] = Some(v);
                }
            }
            _ => {}
        }
        Ok(())
    });
    if r.is_err() || count != 2 * split.inner_edges {
        return None;
    }
    filled.into_iter().collect()
}

/// One pass: is `chosen[j]` playing pattern vertex `roles[j]` an induced copy?
fn verify_copy(h: &StreamHandle<'_>, pattern: &Graph, chosen: &[usize], roles: &[usize]) -> bool {
    let at = |v: usize| chosen.iter().position(|&c| c == v);
    let mut cur = None;
    let mut count = 0;
    let r = h.try_pass(|e| -> std::result::Result<(), ()> {
        match *e {
            StreamEvent::VertexBegin(v) => cur = at(v),
            StreamEvent::Edge(_, w) => {
                if let (Some(a), Some(b)) = (cur, at(w)) {
                    if !pattern.has_edge(roles[a], roles[b]) {
                        return Err(());
                    }
                    count += 1;
                }
            }
            _ => {}
        }
        Ok(())
    });
    r.is_ok() && count == 2 * pattern.m()
}

/// True iff `G[y]` contains the pattern as an induced subgraph. One pass
/// per placement.
pub fn check_h_in_y(h: &StreamHandle<'_>, pattern: &PatternGraph, y: &[usize], meter: &MemoryMeter) -> Result<bool> {
    let hn = pattern.h();
    let _words = meter.charge(hn * hn + 4 * hn)?;
    let split = Split::new(pattern.graph(), Vec::new());
    let hit = for_each_placement(y, hn, |placed| Ok(scan(h, &split, placed, &|_| false)))?;
    Ok(hit.is_some())
}

/// Outside vertices of an occurrence that avoids `removed` and `X \ Y`
/// and has exactly `i` vertices outside the cover.
#[allow(clippy::too_many_arguments)]
pub fn find_h(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    removed: &[usize],
    y: &[usize],
    i: usize,
    pattern: &PatternGraph,
    opts: HfreeOptions,
    meter: &MemoryMeter,
) -> Result<Option<Vec<usize>>> {
    let hn = pattern.h();
    if i < 1 || i > hn {
        return Err(Error::BadI { i, h: hn });
    }
    let _words = meter.charge(hn * hn + 6 * hn)?;
    let outside = |v: usize| !x.contains(v) && !removed.contains(&v);
    for split in Split::all(pattern.graph(), i) {
        let found = for_each_placement(y, split.inner.len(), |placed| {
            let Some(fill) = scan(h, &split, placed, &outside) else {
                return Ok(None);
            };
            if opts.strict_induced {
                let chosen: Vec<usize> = placed.iter().chain(&fill).copied().collect();
                let roles: Vec<usize> = split.inner.iter().chain(&split.outer).copied().collect();
                if !verify_copy(h, pattern.graph(), &chosen, &roles) {
                    return Ok(None);
                }
            }
            Ok(Some(fill))
        })?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Shared branching driver over patterns searched in the given order.
struct StreamSearch<'a, 'g, 'm> {
    h: &'a StreamHandle<'g>,
    x: &'a VertexCover,
    ell: usize,
    patterns: &'a [&'a PatternGraph],
    opts: HfreeOptions,
    meter: &'m MemoryMeter,
    y: Vec<usize>,
    removed: Vec<usize>,
    removed_words: crate::graphstream::Charge<'m>,
}

impl StreamSearch<'_, '_, '_> {
    /// `(pattern, i)` for search step `t`: patterns in order, `i` ascending.
    fn step(&self, mut t: usize) -> Option<(usize, usize)> {
        for (m, p) in self.patterns.iter().enumerate() {
            if t < p.h() {
                return Some((m, t + 1));
            }
            t -= p.h();
        }
        None
    }

    fn find(&self, t: usize) -> Result<Option<Vec<usize>>> {
        let (m, i) = self.step(t).expect("step in range");
        find_h(self.h, self.x, &self.removed, &self.y, i, self.patterns[m], self.opts, self.meter)
    }

    /// Branching sets are found again after each child returns instead of
    /// being kept on the recursion path.
    fn branch(&mut self, t0: usize) -> Result<bool> {
        let mut t = t0;
        let mut first = loop {
            if self.step(t).is_none() {
                return Ok(true);
            }
            if let Some(b) = self.find(t)? {
                break Some(b);
            }
            t += 1;
        };
        if self.removed.len() >= self.ell {
            return Ok(false);
        }
        let _frame = self.meter.charge(2)?;
        let mut j = 0;
        loop {
            let b = match first.take() {
                Some(b) => b,
                None => self.find(t)?.expect("deterministic search finds the same occurrence"),
            };
            let Some(&v) = b.get(j) else {
                return Ok(false);
            };
            drop(b);
            self.removed.push(v);
            self.removed_words.grow(1)?;
            if self.branch(t)? {
                return Ok(true);
            }
            self.removed_words.shrink(1);
            self.removed.pop();
            j += 1;
        }
    }
}

fn solve_patterns(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    ell: usize,
    patterns: &[&PatternGraph],
    opts: HfreeOptions,
    meter: &MemoryMeter,
) -> Result<SolveOutcome> {
    h.require_al()?;
    let start = h.passes();
    let k = x.len();
    let result = (|| -> Result<Verdict> {
        let _x_words = meter.charge(k)?;
        let mut s_cur = SubsetCursor::first(k, ell, SubsetMode::AtMost);
        let mut s_words = meter.charge(0)?;
        while let Some(s) = s_cur.current() {
            s_words.resize(s.len())?;
            let removed: Vec<usize> = s.iter().map(|&p| x.members()[p]).collect();
            let y: Vec<usize> = x.members().iter().copied().filter(|v| !removed.contains(v)).collect();
            let _y_words = meter.charge(y.len())?;
            let mut rejected = false;
            for p in patterns {
                if check_h_in_y(h, p, &y, meter)? {
                    rejected = true;
                    break;
                }
            }
            if !rejected {
                let removed_words = meter.charge(0)?;
                let mut search = StreamSearch { h, x, ell, patterns, opts, meter, y, removed, removed_words };
                if search.branch(0)? {
                    let mut sol = search.removed;
                    sol.sort_unstable();
                    debug_check_free(h, &sol, patterns);
                    return Ok(Verdict::Yes(sol));
                }
            }
            s_cur = s_cur.next()?;
        }
        Ok(Verdict::No)
    })();
    let verdict = result?;
    Ok(SolveOutcome { verdict, passes: h.passes() - start, peak_words: meter.peak_words() })
}

fn debug_check_free(h: &StreamHandle<'_>, removed: &[usize], patterns: &[&PatternGraph]) {
    if !cfg!(debug_assertions) || h.source().n() > 12 {
        return;
    }
    let g = h.source();
    let keep: Vec<usize> = g.vertices().filter(|&v| h.keeps(v) && !removed.contains(&v)).collect();
    let rest = g.induced_subgraph(&keep);
    for p in patterns {
        debug_assert!(find_induced(&rest, p.graph()).is_none(), "pattern survives the deletions");
    }
}

pub fn solve_hfree_stream(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    ell: usize,
    pattern: &PatternGraph,
    meter: &MemoryMeter,
) -> Result<SolveOutcome> {
    solve_hfree_stream_with(h, x, ell, pattern, HfreeOptions::default(), meter)
}

pub fn solve_hfree_stream_with(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    ell: usize,
    pattern: &PatternGraph,
    opts: HfreeOptions,
    meter: &MemoryMeter,
) -> Result<SolveOutcome> {
    require_edges(pattern)?;
    solve_patterns(h, x, ell, &[pattern], opts, meter)
}

/// Patterns actually searched for `f` with an optional characterization:
/// vertex-minimal members, size-bounded when characterized, smallest first.
pub fn searched_members(
    f: &ExplicitFamily,
    ch: Option<&AdjacencyCharacterization>,
    k: usize,
) -> Result<Vec<PatternGraph>> {
    for m in f.members() {
        require_edges(m)?;
    }
    let mut f = vertex_minimal_members(f);
    if let Some(ch) = ch {
        f = bounded_members(&f, ch, k)?;
    }
    Ok(f.by_size().into_iter().cloned().collect())
}

pub fn solve_pifree_explicit(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    ell: usize,
    f: &ExplicitFamily,
    ch: Option<&AdjacencyCharacterization>,
    meter: &MemoryMeter,
) -> Result<SolveOutcome> {
    let members = searched_members(f, ch, x.len())?;
    let refs: Vec<&PatternGraph> = members.iter().collect();
    solve_patterns(h, x, ell, &refs, HfreeOptions::default(), meter)
}

/// In-memory counterpart of `find_h`, scanning outside vertices by id.
pub fn find_h_in_memory(
    g: &Graph,
    x: &VertexCover,
    removed: &[usize],
    y: &[usize],
    i: usize,
    pattern: &PatternGraph,
) -> Result<Option<Vec<usize>>> {
    let hn = pattern.h();
    if i < 1 || i > hn {
        return Err(Error::BadI { i, h: hn });
    }
    let p = pattern.graph();
    for split in Split::all(p, i) {
        let m = split.inner.len();
        let found = for_each_placement(y, m, |placed| {
            for a in 0..m {
                for b in a + 1..m {
                    if g.has_edge(placed[a], placed[b]) != p.has_edge(split.inner[a], split.inner[b]) {
                        return Ok(None);
                    }
                }
            }
            let mut fill: Vec<Option<usize>> = vec![None; split.outer.len()];
            for v in g.vertices().filter(|&v| !x.contains(v) && !removed.contains(&v)) {
                let profile = (0..m).fold(0u64, |acc, a| acc | (g.has_edge(v, placed[a]) as u64) << a);
                if let Some(r) = (0..fill.len()).find(|&r| fill[r].is_none() && split.want[r] == profile) {
                    fill[r] = Some(v);
                }
            }
            Ok(fill.into_iter().collect::<Option<Vec<usize>>>())
        })?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// In-memory branching over cover splits and occurrence witnesses.
pub fn solve_hfree_fpt(g: &Graph, x: &VertexCover, ell: usize, pattern: &PatternGraph) -> Result<SolveOutcome> {
    require_edges(pattern)?;
    fn branch(
        g: &Graph,
        x: &VertexCover,
        ell: usize,
        pattern: &PatternGraph,
        y: &[usize],
        removed: &mut Vec<usize>,
        i0: usize,
    ) -> Result<bool> {
        let mut i = i0;
        let b = loop {
            if i > pattern.h() {
                return Ok(true);
            }
            if let Some(b) = find_h_in_memory(g, x, removed, y, i, pattern)? {
                break b;
            }
            i += 1;
        };
        if removed.len() >= ell {
            return Ok(false);
        }
        for v in b {
            removed.push(v);
            if branch(g, x, ell, pattern, y, removed, i)? {
                return Ok(true);
            }
            removed.pop();
        }
        Ok(false)
    }

    let k = x.len();
    for s in SubsetCursor::first(k, ell, SubsetMode::AtMost).iter() {
        let mut removed: Vec<usize> = s.iter().map(|&p| x.members()[p]).collect();
        let y: Vec<usize> = x.members().iter().copied().filter(|v| !removed.contains(v)).collect();
        if find_induced(&g.induced_subgraph(&y), pattern.graph()).is_some() {
            continue;
        }
        if branch(g, x, ell, pattern, &y, &mut removed, 1)? {
            removed.sort_unstable();
            return Ok(SolveOutcome { verdict: Verdict::Yes(removed), passes: 0, peak_words: 0 });
        }
    }
    Ok(SolveOutcome { verdict: Verdict::No, passes: 0, peak_words: 0 })
}
