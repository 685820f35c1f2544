//! Dictionary orderings with a stateless successor function.
//!
//! Cursors range over positions `0..len` of a caller-held universe, so a
//! branching algorithm only keeps the current element. Subsets and
//! multisets go size-then-lexicographic; permutations go lexicographic.
//! The end sentinel is a cursor state.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubsetMode {
    AtMost,
    Exactly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetCursor {
    len: usize,
    k: usize,
    mode: SubsetMode,
    current: Option<Vec<usize>>,
}

impl SubsetCursor {
    pub fn first(len: usize, k: usize, mode: SubsetMode) -> SubsetCursor {
        let current = match mode {
            SubsetMode::AtMost => Some(Vec::new()),
            SubsetMode::Exactly if k <= len => Some((0..k).collect()),
            SubsetMode::Exactly => None,
        };
        SubsetCursor { len, k, mode, current }
    }

    /// Positions of the current subset, or `None` at the end.
    pub fn current(&self) -> Option<&[usize]> {
        self.current.as_deref()
    }

    pub fn is_end(&self) -> bool {
        self.current.is_none()
    }

    pub fn map<T: Clone>(&self, universe: &[T]) -> Option<Vec<T>> {
        self.current.as_ref().map(|c| c.iter().map(|&i| universe[i].clone()).collect())
    }

    pub fn next(&self) -> Result<SubsetCursor> {
        let cur = self.current.as_ref().ok_or(Error::AdvancePastEnd)?;
        let s = cur.len();
        let n = self.len;
        let mut c = cur.clone();
        let mut i = s;
        while i > 0 {
            i -= 1;
            if c[i] < n - s + i {
                c[i] += 1;
                for j in i + 1..s {
                    c[j] = c[j - 1] + 1;
                }
                return Ok(self.with(Some(c)));
            }
        }
        let grow = self.mode == SubsetMode::AtMost && s < self.k && s < n;
        Ok(self.with(grow.then(|| (0..s + 1).collect())))
    }

    fn with(&self, current: Option<Vec<usize>>) -> SubsetCursor {
        SubsetCursor { current, ..self.clone() }
    }

    pub fn iter(self) -> impl Iterator<Item = Vec<usize>> {
        let mut cur = Some(self);
        std::iter::from_fn(move || {
            let c = cur.take()?;
            let item = c.current.clone()?;
            cur = c.next().ok();
            Some(item)
        })
    }
}

/// Multisets over classes `0..caps.len()` where class `i` may be picked at
/// most `caps[i]` times and at most `k` picks are made in total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisetCursor {
    caps: Vec<usize>,
    k: usize,
    // non-decreasing class indices
    current: Option<Vec<usize>>,
}

impl MultisetCursor {
    pub fn first(caps: Vec<usize>, k: usize) -> MultisetCursor {
        MultisetCursor { caps, k, current: Some(Vec::new()) }
    }

    pub fn is_end(&self) -> bool {
        self.current.is_none()
    }

    /// Current pick as `(class, count)` pairs in class order.
    pub fn picks(&self) -> Option<Vec<(usize, usize)>> {
        let cur = self.current.as_ref()?;
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &c in cur {
            match out.last_mut() {
                Some((k, cnt)) if *k == c => *cnt += 1,
                _ => out.push((c, 1)),
            }
        }
        Some(out)
    }

    pub fn size(&self) -> Option<usize> {
        self.current.as_ref().map(|c| c.len())
    }

    fn fill(&self, t: &mut Vec<usize>, from: usize, total: usize) -> bool {
        let mut c = from;
        let mut used = t.iter().filter(|&&x| x == c).count();
        while t.len() < total {
            if c >= self.caps.len() {
                return false;
            }
            if used < self.caps[c] {
                t.push(c);
                used += 1;
            } else {
                c += 1;
                used = 0;
            }
        }
        true
    }

    pub fn next(&self) -> Result<MultisetCursor> {
        let cur = self.current.as_ref().ok_or(Error::AdvancePastEnd)?;
        let s = cur.len();
        for j in (0..s).rev() {
            for v in cur[j] + 1..self.caps.len() {
                if self.caps[v] == 0 {
                    continue;
                }
                let mut t = cur[..j].to_vec();
                t.push(v);
                if self.fill(&mut t, v, s) {
                    return Ok(self.with(Some(t)));
                }
            }
        }
        if s < self.k {
            let mut t = Vec::new();
            if self.fill(&mut t, 0, s + 1) {
                return Ok(self.with(Some(t)));
            }
        }
        Ok(self.with(None))
    }

    fn with(&self, current: Option<Vec<usize>>) -> MultisetCursor {
        MultisetCursor { current, ..self.clone() }
    }

    pub fn iter(self) -> impl Iterator<Item = Vec<(usize, usize)>> {
        let mut cur = Some(self);
        std::iter::from_fn(move || {
            let c = cur.take()?;
            let item = c.picks()?;
            cur = c.next().ok();
            Some(item)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationCursor {
    current: Option<Vec<usize>>,
}

impl PermutationCursor {
    pub fn first(len: usize) -> PermutationCursor {
        PermutationCursor { current: Some((0..len).collect()) }
    }

    pub fn current(&self) -> Option<&[usize]> {
        self.current.as_deref()
    }

    pub fn is_end(&self) -> bool {
        self.current.is_none()
    }

    pub fn next(&self) -> Result<PermutationCursor> {
        let mut p = self.current.clone().ok_or(Error::AdvancePastEnd)?;
        let n = p.len();
        if n < 2 {
            return Ok(PermutationCursor { current: None });
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return Ok(PermutationCursor { current: None });
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        Ok(PermutationCursor { current: Some(p) })
    }

    pub fn iter(self) -> impl Iterator<Item = Vec<usize>> {
        let mut cur = Some(self);
        std::iter::from_fn(move || {
            let c = cur.take()?;
            let item = c.current.clone()?;
            cur = c.next().ok();
            Some(item)
        })
    }
}
