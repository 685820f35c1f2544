use crate::error::{Error, Result};

/// Simple undirected graph on dense ids `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { v: w, n });
                }
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        Ok(Graph { n, adj, edges: list })
    }

    pub fn empty(n: usize) -> Graph {
        Graph { n, adj: vec![Vec::new(); n], edges: Vec::new() }
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, e).unwrap()
    }

    /// Star with center 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let e = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Graph::new(self.n + other.n, e).unwrap()
    }

    /// Adds a fresh vertex adjacent to `to`.
    pub fn with_pendant(&self, to: usize) -> Graph {
        let e = self.edges.iter().copied().chain([(to, self.n)]);
        Graph::new(self.n + 1, e).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Subgraph induced by `keep`; vertex `keep[i]` becomes `i`.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut map = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = i;
        }
        let mut e = Vec::new();
        for &(u, v) in &self.edges {
            if map[u] != usize::MAX && map[v] != usize::MAX {
                e.push((map[u], map[v]));
            }
        }
        Graph::new(keep.len(), e).unwrap()
    }

    /// Graph with `del` removed; returns it with the surviving original ids.
    pub fn remove_vertices(&self, del: &[usize]) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = self.vertices().filter(|v| !del.contains(v)).collect();
        (self.induced_subgraph(&keep), keep)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        stack.push(w);
                    } else if color[w] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }
}

/// A vertex cover of a specific graph, stored in ascending id order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexCover {
    members: Vec<usize>,
}

impl VertexCover {
    pub fn new(g: &Graph, members: &[usize]) -> Result<VertexCover> {
        let mut m = members.to_vec();
        m.sort_unstable();
        for w in m.windows(2) {
            if w[0] == w[1] {
                return Err(Error::BadParams(format!("cover lists vertex {} twice", w[0])));
            }
        }
        if let Some(&v) = m.iter().find(|&&v| v >= g.n()) {
            return Err(Error::VertexOutOfRange { v, n: g.n() });
        }
        let cover = VertexCover { members: m };
        for &(u, v) in g.edges() {
            if !cover.contains(u) && !cover.contains(v) {
                return Err(Error::InvalidCover(u, v));
            }
        }
        Ok(cover)
    }

    pub fn all(g: &Graph) -> VertexCover {
        VertexCover { members: g.vertices().collect() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Index of `v` within the sorted member list.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.members.binary_search(&v).ok()
    }

    pub fn covers(&self, g: &Graph) -> bool {
        g.edges().iter().all(|&(u, v)| self.contains(u) || self.contains(v))
    }
}

/// Every vertex cover of `g`, as sorted member lists in ascending mask order.
pub fn all_vertex_covers(g: &Graph) -> Vec<VertexCover> {
    assert!(g.n() <= 20);
    let mut out = Vec::new();
    for mask in 0u32..(1 << g.n()) {
        let ok = g.edges().iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1);
        if ok {
            let members = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
            out.push(VertexCover { members });
        }
    }
    out
}
