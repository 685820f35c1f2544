//! Deletion problems where the family is only reachable through a
//! membership oracle (is this graph in the family?) or a freeness oracle
//! (is this graph free of the family?).
//!
//! Outside vertices with the same neighborhood in the cover are twins, so
//! the solvers reason about equivalence classes of them and always act on
//! the first members of a class in stream order.

use std::collections::BTreeMap;

use crate::enumeration::{MultisetCursor, SubsetCursor, SubsetMode};
use crate::error::{Error, Result};
use crate::graphstream::{bit_words, Charge, MemoryMeter, StreamEvent, StreamHandle, VertexCover};
use crate::outcome::{SolveOutcome, Verdict};
use crate::properties::{FreenessOracle, MembershipOracle};

/// Outside-vertex neighborhoods toward `y`, as bitmasks over positions of
/// `y`, with the number of outside vertices having each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClassTable {
    y: Vec<usize>,
    rows: Vec<(u64, usize)>,
}

impl EquivalenceClassTable {
    pub fn y(&self) -> &[usize] {
        &self.y
    }

    /// `(key, count)` rows ascending by key.
    pub fn rows(&self) -> &[(u64, usize)] {
        &self.rows
    }

    pub fn count(&self, key: u64) -> usize {
        self.rows.binary_search_by_key(&key, |r| r.0).map_or(0, |i| self.rows[i].1)
    }

    pub fn total(&self) -> usize {
        self.rows.iter().map(|r| r.1).sum()
    }

    pub fn words(&self) -> usize {
        self.rows.len() * (bit_words(self.y.len()) + 1)
    }

    /// Key of an outside vertex with neighbors `nbrs`.
    pub fn key_of(&self, nbrs: &[usize]) -> u64 {
        key_over(&self.y, nbrs.iter().copied())
    }
}

fn key_over(y: &[usize], nbrs: impl Iterator<Item = usize>) -> u64 {
    nbrs.filter_map(|w| y.binary_search(&w).ok()).fold(0, |k, j| k | 1 << j)
}

fn check_cover(x: &VertexCover) -> Result<()> {
    if x.len() > 64 {
        return Err(Error::BadParams(format!("cover of size {} exceeds 64", x.len())));
    }
    Ok(())
}

/// One pass tallying the neighborhoods toward `y` (ascending) of outside
/// vertices not in `exclude`.
pub fn compute_equivalence_classes(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    y: &[usize],
    exclude: &[usize],
    meter: &MemoryMeter,
) -> Result<EquivalenceClassTable> {
    h.require_al()?;
    check_cover(x)?;
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    let mut words = meter.charge(0)?;
    let row = bit_words(y.len()) + 1;
    let mut cur_out = false;
    let mut key = 0u64;
    h.try_pass(|e| -> Result<()> {
        match *e {
            StreamEvent::VertexBegin(v) => {
                cur_out = !x.contains(v) && !exclude.contains(&v);
                key = 0;
            }
            StreamEvent::Edge(_, w) if cur_out => {
                if let Ok(j) = y.binary_search(&w) {
                    key |= 1 << j;
                }
            }
            StreamEvent::VertexEnd(_) if cur_out => {
                let c = counts.entry(key).or_insert(0);
                if *c == 0 {
                    words.grow(row)?;
                }
                *c += 1;
            }
            _ => {}
        }
        Ok(())
    })?;
    Ok(EquivalenceClassTable { y: y.to_vec(), rows: counts.into_iter().collect() })
}

/// One pass: for each `(key, count)` the first `count` outside vertices in
/// stream order with that key, skipping `exclude`.
fn first_members(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    y: &[usize],
    exclude: &[usize],
    wanted: &[(u64, usize)],
) -> Vec<usize> {
    let mut got = vec![0usize; wanted.len()];
    let mut out = Vec::new();
    let mut cur_out = false;
    let mut key = 0u64;
    h.run_pass(|e| match *e {
        StreamEvent::VertexBegin(v) => {
            cur_out = !x.contains(v) && !exclude.contains(&v);
            key = 0;
        }
        StreamEvent::Edge(_, w) if cur_out => {
            if let Ok(j) = y.binary_search(&w) {
                key |= 1 << j;
            }
        }
        StreamEvent::VertexEnd(v) if cur_out => {
            if let Some(i) = wanted.iter().position(|&(k, _)| k == key) {
                if got[i] < wanted[i].1 {
                    got[i] += 1;
                    out.push(v);
                }
            }
        }
        _ => {}
    });
    out.sort_unstable();
    out
}

/// Runs an oracle call and checks it used the passes it declared.
fn metered_call(h: &StreamHandle<'_>, declared: u64, call: impl FnOnce() -> Result<bool>) -> Result<bool> {
    let before = h.passes();
    let answer = call()?;
    let actual = h.passes() - before;
    if actual != declared {
        return Err(Error::OracleFault { declared, actual });
    }
    Ok(answer)
}

fn ask_member(h: &StreamHandle<'_>, a1: &dyn MembershipOracle, keep: &[usize], meter: &MemoryMeter) -> Result<bool> {
    let sub = h.filtered_substream(|v| keep.contains(&v));
    metered_call(h, a1.declared_passes(), || a1.is_member(&sub, meter))
}

fn ask_free(h: &StreamHandle<'_>, a2: &dyn FreenessOracle, keep: &dyn Fn(usize) -> bool, meter: &MemoryMeter) -> Result<bool> {
    let sub = h.filtered_substream(keep);
    metered_call(h, a2.declared_passes(), || a2.is_free(&sub, meter))
}

/// True iff some subset of `y` with at most `max` vertices, together with
/// `extra`, is a member.
fn some_member_with(
    h: &StreamHandle<'_>,
    a1: &dyn MembershipOracle,
    y: &[usize],
    max: usize,
    extra: &[usize],
    meter: &MemoryMeter,
) -> Result<bool> {
    let mut words = meter.charge(0)?;
    for j in SubsetCursor::first(y.len(), max, SubsetMode::AtMost).iter() {
        let keep: Vec<usize> = j.iter().map(|&p| y[p]).chain(extra.iter().copied()).collect();
        words.resize(keep.len())?;
        if keep.is_empty() {
            continue;
        }
        if ask_member(h, a1, &keep, meter)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn outcome(h: &StreamHandle<'_>, start: u64, verdict: Verdict, meter: &MemoryMeter) -> SolveOutcome {
    SolveOutcome { verdict, passes: h.passes() - start, peak_words: meter.peak_words() }
}

fn split(x: &VertexCover, s: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let s: Vec<usize> = s.iter().map(|&p| x.members()[p]).collect();
    let y = x.members().iter().copied().filter(|v| !s.contains(v)).collect();
    (s, y)
}

struct A1Search<'a, 'g, 'm> {
    h: &'a StreamHandle<'g>,
    x: &'a VertexCover,
    a1: &'a dyn MembershipOracle,
    ell: usize,
    nu: usize,
    meter: &'m MemoryMeter,
    y: Vec<usize>,
    s: Vec<usize>,
    deleted: Vec<usize>,
    deleted_words: Charge<'m>,
}

impl A1Search<'_, '_, '_> {
    fn removed(&self) -> usize {
        self.s.len() + self.deleted.len()
    }

    fn table(&self) -> Result<(EquivalenceClassTable, Charge<'_>)> {
        let t = compute_equivalence_classes(self.h, self.x, &self.y, &self.deleted, self.meter)?;
        let c = self.meter.charge(t.words())?;
        Ok((t, c))
    }

    /// First candidate occurrence `(J, I)` with `I` a non-empty class
    /// multiset, as `I` in `(key, count)` form.
    fn first_hit(&self, t: &EquivalenceClassTable) -> Result<Option<Vec<(u64, usize)>>> {
        let caps: Vec<usize> = t.rows().iter().map(|r| r.1).collect();
        let mut j_words = self.meter.charge(0)?;
        for j in SubsetCursor::first(self.y.len(), self.nu, SubsetMode::AtMost).iter() {
            j_words.resize(j.len())?;
            let jv: Vec<usize> = j.iter().map(|&p| self.y[p]).collect();
            let mut i_cur = MultisetCursor::first(caps.clone(), self.nu - j.len());
            let mut i_words = self.meter.charge(0)?;
            while let Some(picks) = i_cur.picks() {
                i_cur = i_cur.next()?;
                if picks.is_empty() {
                    // subsets of Y alone were ruled out up front
                    continue;
                }
                i_words.resize(2 * picks.len())?;
                let wanted: Vec<(u64, usize)> = picks.iter().map(|&(c, n)| (t.rows()[c].0, n)).collect();
                let reps = first_members(self.h, self.x, &self.y, &self.deleted, &wanted);
                let mut keep = jv.clone();
                keep.extend(reps);
                let _keep_words = self.meter.charge(keep.len())?;
                if ask_member(self.h, self.a1, &keep, self.meter)? {
                    return Ok(Some(wanted));
                }
            }
        }
        Ok(None)
    }

    fn search(&mut self) -> Result<bool> {
        let hit = {
            let (t, _c) = self.table()?;
            self.first_hit(&t)?
        };
        let Some(hit) = hit else {
            return Ok(true);
        };
        if self.removed() >= self.ell {
            return Ok(false);
        }
        let _frame = self.meter.charge(2 * hit.len() + 1)?;
        for &(key, count) in &hit {
            let size = {
                let (t, _c) = self.table()?;
                t.count(key)
            };
            // drop the class below `count` members
            let d = size - (count - 1);
            if self.removed() + d > self.ell {
                continue;
            }
            let del = first_members(self.h, self.x, &self.y, &self.deleted, &[(key, d)]);
            self.deleted.extend(&del);
            self.deleted_words.grow(d)?;
            if self.search()? {
                return Ok(true);
            }
            self.deleted.truncate(self.deleted.len() - d);
            self.deleted_words.shrink(d);
        }
        Ok(false)
    }
}

/// Branching with a membership oracle over cover splits and class
/// multisets of at most `nu` vertices.
pub fn solve_with_a1(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    ell: usize,
    nu: usize,
    a1: &dyn MembershipOracle,
    meter: &MemoryMeter,
) -> Result<SolveOutcome> {
    h.require_al()?;
    check_cover(x)?;
    if nu == 0 {
        return Err(Error::BadParams("nu must be at least 1".into()));
    }
    let start = h.passes();
    let k = x.len();
    let _x_words = meter.charge(k)?;
    let mut s_words = meter.charge(0)?;
    for s_pos in SubsetCursor::first(k, ell, SubsetMode::AtMost).iter() {
        // S and Y
        s_words.resize(k)?;
        let (s, y) = split(x, &s_pos);
        if some_member_with(h, a1, &y, y.len(), &[], meter)? {
            continue;
        }
        let deleted_words = meter.charge(0)?;
        let mut search = A1Search { h, x, a1, ell, nu, meter, y, s, deleted: Vec::new(), deleted_words };
        if search.search()? {
            let mut sol = search.s.clone();
            sol.extend(&search.deleted);
            sol.sort_unstable();
            drop(search);
            return Ok(outcome(h, start, Verdict::Yes(sol), meter));
        }
    }
    drop(s_words);
    Ok(outcome(h, start, Verdict::No, meter))
}

pub enum A2Variant<'a> {
    /// Ask the freeness oracle on `Y ∪ I`.
    Plain(&'a dyn FreenessOracle),
    /// Ask the membership oracle on every `J ∪ I`, `J ⊆ Y`.
    A1Subsets(&'a dyn MembershipOracle),
}

struct A2Search<'a, 'g, 'm> {
    h: &'a StreamHandle<'g>,
    variant: &'a A2Variant<'a>,
    ell: usize,
    nu: usize,
    meter: &'m MemoryMeter,
    y: Vec<usize>,
    s: Vec<usize>,
    outside: Vec<usize>,
    deleted: Vec<usize>,
    deleted_words: Charge<'m>,
}

impl A2Search<'_, '_, '_> {
    fn free_with(&self, extra: &[usize]) -> Result<bool> {
        match self.variant {
            A2Variant::Plain(a2) => {
                let keep = |v: usize| self.y.binary_search(&v).is_ok() || extra.contains(&v);
                ask_free(self.h, *a2, &keep, self.meter)
            }
            A2Variant::A1Subsets(a1) => {
                let max = self.nu.saturating_sub(extra.len());
                Ok(!some_member_with(self.h, *a1, &self.y, max, extra, self.meter)?)
            }
        }
    }

    /// Resumes the enumeration of outside sets at `from`; the sets before
    /// it were free already and stay free under further deletions.
    fn search(&mut self, from: SubsetCursor) -> Result<bool> {
        let mut cur = from;
        let mut i_words = self.meter.charge(0)?;
        while let Some(pos) = cur.current() {
            let set: Vec<usize> = pos.iter().map(|&p| self.outside[p]).collect();
            i_words.resize(set.len())?;
            if set.iter().any(|v| self.deleted.contains(v)) || self.free_with(&set)? {
                cur = cur.next()?;
                continue;
            }
            if self.s.len() + self.deleted.len() >= self.ell {
                return Ok(false);
            }
            for &v in &set {
                self.deleted.push(v);
                self.deleted_words.grow(1)?;
                if self.search(cur.clone())? {
                    return Ok(true);
                }
                self.deleted.pop();
                self.deleted_words.shrink(1);
            }
            return Ok(false);
        }
        Ok(true)
    }
}

/// Branching on the first non-free set `Y ∪ I`, `I` ranging over at most
/// `nu` outside vertices in dictionary order.
pub fn solve_with_a2(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    ell: usize,
    nu: usize,
    variant: &A2Variant<'_>,
    meter: &MemoryMeter,
) -> Result<SolveOutcome> {
    h.require_al()?;
    check_cover(x)?;
    if nu == 0 {
        return Err(Error::BadParams("nu must be at least 1".into()));
    }
    let start = h.passes();
    let k = x.len();
    let _x_words = meter.charge(k)?;
    // outside vertices by ascending id; derivable from n and X
    let outside: Vec<usize> = h.source().vertices().filter(|&v| h.keeps(v) && !x.contains(v)).collect();
    let mut s_words = meter.charge(0)?;
    for s_pos in SubsetCursor::first(k, ell, SubsetMode::AtMost).iter() {
        // S and Y
        s_words.resize(k)?;
        let (s, y) = split(x, &s_pos);
        let deleted_words = meter.charge(0)?;
        let mut search = A2Search {
            h,
            variant,
            ell,
            nu,
            meter,
            y,
            s,
            outside: outside.clone(),
            deleted: Vec::new(),
            deleted_words,
        };
        let y_ok = match variant {
            A2Variant::Plain(_) => search.free_with(&[])?,
            A2Variant::A1Subsets(a1) => !some_member_with(h, *a1, &search.y, search.y.len(), &[], meter)?,
        };
        if !y_ok {
            continue;
        }
        let first = SubsetCursor::first(search.outside.len(), nu, SubsetMode::AtMost);
        if search.search(first)? {
            let mut sol = search.s.clone();
            sol.extend(&search.deleted);
            sol.sort_unstable();
            drop(search);
            return Ok(outcome(h, start, Verdict::Yes(sol), meter));
        }
    }
    drop(s_words);
    Ok(outcome(h, start, Verdict::No, meter))
}

/// Tries every cover part `S` and every multiset of class deletions of
/// total at most `ell - |S|`, asking the freeness oracle on what is left.
pub fn solve_equivclass_enum(
    h: &StreamHandle<'_>,
    x: &VertexCover,
    a2: &dyn FreenessOracle,
    ell: usize,
    meter: &MemoryMeter,
) -> Result<SolveOutcome> {
    h.require_al()?;
    check_cover(x)?;
    let start = h.passes();
    let k = x.len();
    let _x_words = meter.charge(k)?;
    let mut table: Option<(EquivalenceClassTable, Charge<'_>)> = None;
    let mut s_words = meter.charge(0)?;
    for s_pos in SubsetCursor::first(k, ell, SubsetMode::AtMost).iter() {
        s_words.resize(s_pos.len())?;
        let (s, _) = split(x, &s_pos);
        let left = ell - s.len();
        if left > 0 && table.is_none() {
            let t = compute_equivalence_classes(h, x, x.members(), &[], meter)?;
            let c = meter.charge(t.words())?;
            table = Some((t, c));
        }
        let caps: Vec<usize> = table.as_ref().map_or(Vec::new(), |t| t.0.rows().iter().map(|r| r.1).collect());
        let mut m_words = meter.charge(0)?;
        for picks in MultisetCursor::first(caps, left).iter() {
            m_words.resize(2 * picks.len())?;
            let del = match &table {
                Some((t, _)) if !picks.is_empty() => {
                    let wanted: Vec<(u64, usize)> = picks.iter().map(|&(c, n)| (t.rows()[c].0, n)).collect();
                    first_members(h, x, x.members(), &[], &wanted)
                }
                _ => Vec::new(),
            };
            let _del_words = meter.charge(del.len())?;
            let keep = |v: usize| !s.contains(&v) && !del.contains(&v);
            if ask_free(h, a2, &keep, meter)? {
                let mut sol: Vec<usize> = s.iter().chain(&del).copied().collect();
                sol.sort_unstable();
                return Ok(outcome(h, start, Verdict::Yes(sol), meter));
            }
        }
    }
    Ok(outcome(h, start, Verdict::No, meter))
}
