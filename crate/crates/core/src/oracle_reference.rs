//! Exhaustive ground truth for small graphs.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graphstream::Graph;
use crate::properties::ExplicitFamily;

pub const MAX_PI_N: usize = 10;
pub const MAX_OCT_N: usize = 12;

fn pair_index(i: usize, j: usize, h: usize) -> usize {
    // upper triangle, row-major
    i * h - i * (i + 1) / 2 + (j - i - 1)
}

/// Every labeled copy of `h` as an upper-triangle adjacency mask.
fn labeled_copies(h: &Graph) -> HashSet<u64> {
    let k = h.n();
    let mut out = HashSet::new();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let mut mask = 0u64;
        for &(u, v) in h.edges() {
            let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
            mask |= 1 << pair_index(a, b, k);
        }
        out.insert(mask);
        let mut i = k;
        loop {
            if i < 2 {
                return out;
            }
            i -= 1;
            if perm[i - 1] < perm[i] {
                break;
            }
        }
        let mut j = k - 1;
        while perm[j] <= perm[i - 1] {
            j -= 1;
        }
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

struct Matcher {
    adj: Vec<u64>,
    patterns: Vec<(usize, HashSet<u64>)>,
}

impl Matcher {
    fn new(g: &Graph, f: &ExplicitFamily) -> Matcher {
        let mut adj = vec![0u64; g.n()];
        for &(u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let patterns = f.members().iter().map(|m| (m.h(), labeled_copies(m.graph()))).collect();
        Matcher { adj, patterns }
    }

    fn induced_mask(&self, verts: &[usize]) -> u64 {
        let k = verts.len();
        let mut mask = 0;
        for i in 0..k {
            for j in i + 1..k {
                if self.adj[verts[i]] >> verts[j] & 1 == 1 {
                    mask |= 1 << pair_index(i, j, k);
                }
            }
        }
        mask
    }

    /// No member occurs among the vertices in `alive`.
    fn free_on(&self, alive: u64) -> bool {
        let verts: Vec<usize> = (0..self.adj.len()).filter(|&v| alive >> v & 1 == 1).collect();
        for (h, copies) in &self.patterns {
            let mut found = false;
            for_each_combination(verts.len(), *h, &mut |idx| {
                let sub: Vec<usize> = idx.iter().map(|&i| verts[i]).collect();
                if copies.contains(&self.induced_mask(&sub)) {
                    found = true;
                }
                !found
            });
            if found {
                return false;
            }
        }
        true
    }
}

/// Calls `f` on every `k`-combination of `0..n` in lex order until it
/// returns false.
fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            let go = rec(n, k, v + 1, cur, f);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    if k > n {
        return true;
    }
    rec(n, k, 0, &mut Vec::with_capacity(k), f)
}

fn guard(g: &Graph, max: usize) -> Result<()> {
    if g.n() > max {
        return Err(Error::TooLarge { n: g.n(), max });
    }
    Ok(())
}

pub fn brute_is_pi_free(g: &Graph, f: &ExplicitFamily) -> Result<bool> {
    guard(g, MAX_PI_N)?;
    let all = (1u64 << g.n()) - 1;
    Ok(Matcher::new(g, f).free_on(all))
}

fn min_deletion_by(n: usize, mut ok: impl FnMut(u64) -> bool) -> (usize, Vec<usize>) {
    let all = (1u64 << n) - 1;
    for s in 0..=n {
        let mut hit = None;
        for_each_combination(n, s, &mut |del| {
            let mask = del.iter().fold(all, |m, &v| m & !(1 << v));
            if ok(mask) {
                hit = Some(del.to_vec());
                return false;
            }
            true
        });
        if let Some(w) = hit {
            return (s, w);
        }
    }
    unreachable!("deleting every vertex always succeeds")
}

/// Smallest deletion set making `g` free of `f`; lexicographically first
/// among those of minimum size.
pub fn brute_min_deletion(g: &Graph, f: &ExplicitFamily) -> Result<(usize, Vec<usize>)> {
    guard(g, MAX_PI_N)?;
    let m = Matcher::new(g, f);
    Ok(min_deletion_by(g.n(), |alive| m.free_on(alive)))
}

fn bipartite_on(adj: &[u64], alive: u64) -> bool {
    let n = adj.len();
    let mut color = vec![2u8; n];
    for s in 0..n {
        if alive >> s & 1 == 0 || color[s] != 2 {
            continue;
        }
        color[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in 0..n {
                if adj[u] >> w & 1 == 1 && alive >> w & 1 == 1 {
                    if color[w] == 2 {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Smallest set whose removal leaves `g` bipartite.
pub fn brute_min_oct(g: &Graph) -> Result<(usize, Vec<usize>)> {
    guard(g, MAX_OCT_N)?;
    let mut adj = vec![0u64; g.n()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    Ok(min_deletion_by(g.n(), |alive| bipartite_on(&adj, alive)))
}
