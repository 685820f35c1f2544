//! Forbidden families: explicit lists, adjacency characterizations and
//! stream oracles, plus the induced-subgraph matcher.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graphstream::{Graph, MemoryMeter, StreamEvent, StreamHandle};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternGraph {
    graph: Graph,
}

impl PatternGraph {
    pub fn new(graph: Graph) -> Result<PatternGraph> {
        if graph.n() == 0 {
            return Err(Error::PreconditionViolated("pattern needs at least one vertex".into()));
        }
        Ok(PatternGraph { graph })
    }

    pub fn path(n: usize) -> PatternGraph {
        PatternGraph::new(Graph::path(n)).unwrap()
    }

    pub fn cycle(n: usize) -> PatternGraph {
        PatternGraph::new(Graph::cycle(n)).unwrap()
    }

    pub fn complete(n: usize) -> PatternGraph {
        PatternGraph::new(Graph::complete(n)).unwrap()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn h(&self) -> usize {
        self.graph.n()
    }
}

/// Maps every vertex of `h` into `g`, preserving edges and non-edges.
/// `out[i]` is the image of pattern vertex `i`.
pub fn find_induced(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if h.n() > g.n() || h.m() > g.m() {
        return None;
    }
    let mut map = Vec::with_capacity(h.n());
    let mut used = vec![false; g.n()];
    extend_map(g, h, &mut map, &mut used).then_some(map)
}

fn extend_map(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let i = map.len();
    if i == h.n() {
        return true;
    }
    for v in g.vertices() {
        if used[v] || g.degree(v) < h.degree(i) {
            continue;
        }
        let ok = (0..i).all(|j| h.has_edge(i, j) == g.has_edge(v, map[j]));
        if ok {
            map.push(v);
            used[v] = true;
            if extend_map(g, h, map, used) {
                return true;
            }
            map.pop();
            used[v] = false;
        }
    }
    false
}

pub fn is_induced_subgraph(g: &Graph, h: &PatternGraph) -> bool {
    find_induced(g, h.graph()).is_some()
}

/// Isomorphism-invariant code: the lexicographically largest upper-triangle
/// adjacency string over orderings that sort vertices by degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<bool>,
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.n();
    let mut verts: Vec<usize> = g.vertices().collect();
    verts.sort_by_key(|&v| (g.degree(v), v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in verts {
        match classes.last_mut() {
            Some(c) if g.degree(c[0]) == g.degree(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best: Option<Vec<bool>> = None;
    let mut order = Vec::with_capacity(n);
    search_orders(g, &classes, 0, &mut order, &mut best);
    CanonicalForm { n, bits: best.unwrap_or_default() }
}

fn search_orders(
    g: &Graph,
    classes: &[Vec<usize>],
    ci: usize,
    order: &mut Vec<usize>,
    best: &mut Option<Vec<bool>>,
) {
    if ci == classes.len() {
        let mut bits = Vec::with_capacity(order.len() * order.len() / 2);
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                bits.push(g.has_edge(order[i], order[j]));
            }
        }
        if best.as_ref().is_none_or(|b| bits > *b) {
            *best = Some(bits);
        }
        return;
    }
    let class = &classes[ci];
    let mut perm: Vec<usize> = (0..class.len()).collect();
    loop {
        let base = order.len();
        order.extend(perm.iter().map(|&i| class[i]));
        search_orders(g, classes, ci + 1, order, best);
        order.truncate(base);
        if !next_permutation(&mut perm) {
            break;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && canonical_form(a) == canonical_form(b)
}

/// Finite forbidden family with pairwise non-isomorphic members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitFamily {
    members: Vec<PatternGraph>,
}

impl ExplicitFamily {
    pub fn new(members: Vec<PatternGraph>) -> ExplicitFamily {
        let mut seen = BTreeSet::new();
        let members = members
            .into_iter()
            .filter(|m| seen.insert(canonical_form(m.graph())))
            .collect();
        ExplicitFamily { members }
    }

    pub fn single(h: PatternGraph) -> ExplicitFamily {
        ExplicitFamily { members: vec![h] }
    }

    /// Induced odd cycles of length 3..=max_len.
    pub fn odd_cycles(max_len: usize) -> ExplicitFamily {
        ExplicitFamily::new((3..=max_len).step_by(2).map(PatternGraph::cycle).collect())
    }

    pub fn members(&self) -> &[PatternGraph] {
        &self.members
    }

    pub fn q(&self) -> usize {
        self.members.len()
    }

    /// Largest member size.
    pub fn nu(&self) -> usize {
        self.members.iter().map(|m| m.h()).max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in ascending order of vertex count, stable otherwise.
    pub fn by_size(&self) -> Vec<&PatternGraph> {
        let mut v: Vec<&PatternGraph> = self.members.iter().collect();
        v.sort_by_key(|m| m.h());
        v
    }

    pub fn all_have_edges(&self) -> bool {
        self.members.iter().all(|m| m.graph().m() > 0)
    }
}

/// Members none of whose proper induced subgraphs is another member.
pub fn vertex_minimal_members(f: &ExplicitFamily) -> ExplicitFamily {
    let members = f
        .members
        .iter()
        .filter(|m| {
            !f.members
                .iter()
                .any(|o| o.h() < m.h() && find_induced(m.graph(), o.graph()).is_some())
        })
        .cloned()
        .collect();
    ExplicitFamily { members }
}

/// Non-decreasing bound on the size of vertex-minimal members, as a
/// function of the cover size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PFunction {
    Affine { a: usize, b: usize },
    Table(Vec<usize>),
}

impl PFunction {
    pub fn constant(b: usize) -> PFunction {
        PFunction::Affine { a: 0, b }
    }

    pub fn eval(&self, k: usize) -> Result<usize> {
        let v = match self {
            PFunction::Affine { a, b } => a * k + b,
            PFunction::Table(t) => *t
                .get(k)
                .ok_or_else(|| Error::BadParams(format!("p table has no entry for K={k}")))?,
        };
        if v == 0 {
            return Err(Error::BadParams(format!("p({k}) must be at least 1")));
        }
        Ok(v)
    }

    /// Evaluates at `k` after checking monotonicity on `1..=k`.
    pub fn checked(&self, k: usize) -> Result<usize> {
        let mut prev = 0;
        for i in k.min(1)..=k {
            let v = self.eval(i)?;
            if v < prev {
                return Err(Error::BadParams(format!("p decreases at K={i}")));
            }
            prev = v;
        }
        Ok(prev)
    }
}

impl FromStr for PFunction {
    type Err = Error;

    /// Accepts `b`, `K`, `a*K`, `K+b`, `a*K+b` (spaces ignored).
    fn from_str(s: &str) -> Result<PFunction> {
        let bad = || Error::BadParams(format!("cannot parse p function {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (lin, b) = match t.split_once('+') {
            Some((l, r)) => (l.to_string(), r.parse::<usize>().map_err(|_| bad())?),
            None if t.contains('K') || t.contains('k') => (t.clone(), 0),
            None => return Ok(PFunction::constant(t.parse().map_err(|_| bad())?)),
        };
        let a = match lin.as_str() {
            "K" | "k" => 1,
            _ => {
                let (a, k) = lin.split_once('*').ok_or_else(bad)?;
                if k != "K" && k != "k" {
                    return Err(bad());
                }
                a.parse().map_err(|_| bad())?
            }
        };
        Ok(PFunction::Affine { a, b })
    }
}

impl fmt::Display for PFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PFunction::Affine { a: 0, b } => write!(f, "{b}"),
            PFunction::Affine { a, b } => write!(f, "{a}*K+{b}"),
            PFunction::Table(t) => write!(f, "table{t:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyCharacterization {
    pub c_pi: usize,
    pub p: PFunction,
    pub connected_only: bool,
}

impl AdjacencyCharacterization {
    pub fn new(c_pi: usize, p: PFunction) -> AdjacencyCharacterization {
        AdjacencyCharacterization { c_pi, p, connected_only: true }
    }
}

/// Members with at most `(c_pi + 1) * k` vertices. Every member must be
/// connected and have an edge.
pub fn bounded_members(f: &ExplicitFamily, ch: &AdjacencyCharacterization, k: usize) -> Result<ExplicitFamily> {
    if !ch.connected_only {
        return Err(Error::PreconditionViolated("characterization is not restricted to connected members".into()));
    }
    for m in &f.members {
        if m.graph().m() == 0 || !m.graph().is_connected() {
            return Err(Error::PreconditionViolated(format!(
                "member on {} vertices is disconnected or edgeless",
                m.h()
            )));
        }
    }
    let bound = (ch.c_pi + 1) * k;
    let members = f.members.iter().filter(|m| m.h() <= bound).cloned().collect();
    Ok(ExplicitFamily { members })
}

/// Decides whether the streamed graph belongs to the family.
pub trait MembershipOracle {
    fn declared_passes(&self) -> u64;
    fn is_member(&self, input: &StreamHandle<'_>, meter: &MemoryMeter) -> Result<bool>;
}

/// Decides whether the streamed graph is free of the family.
pub trait FreenessOracle {
    fn declared_passes(&self) -> u64;
    fn is_free(&self, input: &StreamHandle<'_>, meter: &MemoryMeter) -> Result<bool>;
}

/// Reference oracle that buffers the streamed graph in one pass.
#[derive(Clone, Debug)]
pub struct FamilyOracle {
    family: ExplicitFamily,
    forms: Vec<CanonicalForm>,
}

impl FamilyOracle {
    pub fn new(family: ExplicitFamily) -> FamilyOracle {
        let forms = family.members.iter().map(|m| canonical_form(m.graph())).collect();
        FamilyOracle { family, forms }
    }

    pub fn family(&self) -> &ExplicitFamily {
        &self.family
    }

    fn read<'m>(&self, input: &StreamHandle<'_>, meter: &'m MemoryMeter) -> Result<(Graph, crate::graphstream::Charge<'m>)> {
        let mut charge = meter.charge(0)?;
        let mut verts = BTreeSet::new();
        let mut edges = BTreeSet::new();
        input.try_pass(|e| -> Result<()> {
            match *e {
                StreamEvent::VertexBegin(v) => {
                    if verts.insert(v) {
                        charge.grow(1)?;
                    }
                }
                StreamEvent::Edge(u, v) => {
                    for w in [u, v] {
                        if verts.insert(w) {
                            charge.grow(1)?;
                        }
                    }
                    if edges.insert((u.min(v), u.max(v))) {
                        charge.grow(1)?;
                    }
                }
                _ => {}
            }
            Ok(())
        })?;
        let ids: Vec<usize> = verts.into_iter().collect();
        let local = |v: usize| ids.binary_search(&v).unwrap();
        let g = Graph::new(ids.len(), edges.into_iter().map(|(u, v)| (local(u), local(v))))?;
        Ok((g, charge))
    }
}

impl MembershipOracle for FamilyOracle {
    fn declared_passes(&self) -> u64 {
        1
    }

    fn is_member(&self, input: &StreamHandle<'_>, meter: &MemoryMeter) -> Result<bool> {
        let (g, _charge) = self.read(input, meter)?;
        let form = canonical_form(&g);
        Ok(self.family.members.iter().zip(&self.forms).any(|(m, f)| {
            m.graph().n() == g.n() && m.graph().m() == g.m() && *f == form
        }))
    }
}

impl FreenessOracle for FamilyOracle {
    fn declared_passes(&self) -> u64 {
        1
    }

    fn is_free(&self, input: &StreamHandle<'_>, meter: &MemoryMeter) -> Result<bool> {
        let (g, _charge) = self.read(input, meter)?;
        Ok(!self.family.members.iter().any(|m| is_induced_subgraph(&g, m)))
    }
}

pub fn family_oracle(f: ExplicitFamily) -> FamilyOracle {
    FamilyOracle::new(f)
}
