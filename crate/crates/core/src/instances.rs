//! Instance files, family files and generators.

use std::fmt::Write as _;
use std::path::Path;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graphstream::{Graph, VertexCover};
use crate::properties::{ExplicitFamily, PatternGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub cover: VertexCover,
    pub ell: usize,
    /// Comment lines without the leading `c `.
    pub comments: Vec<String>,
}

impl Instance {
    pub fn new(graph: Graph, cover: VertexCover, ell: usize) -> Instance {
        Instance { graph, cover, ell, comments: Vec::new() }
    }

    pub fn with_comment(mut self, c: impl Into<String>) -> Instance {
        self.comments.push(c.into());
        self
    }

    fn body(&self) -> String {
        let mut s = String::new();
        let x: Vec<String> = self.cover.members().iter().map(|v| v.to_string()).collect();
        if x.is_empty() {
            s.push_str("x\n");
        } else {
            writeln!(s, "x {}", x.join(" ")).unwrap();
        }
        for &(u, v) in self.graph.edges() {
            writeln!(s, "e {u} {v}").unwrap();
        }
        s
    }

    fn header(&self) -> String {
        format!(
            "p vcstream {} {} {} {}\n",
            self.graph.n(),
            self.graph.m(),
            self.cover.len(),
            self.ell
        )
    }

    pub fn to_text(&self) -> String {
        let mut s = self.header();
        for c in &self.comments {
            if c.is_empty() {
                s.push_str("c\n");
            } else {
                writeln!(s, "c {c}").unwrap();
            }
        }
        s.push_str(&self.body());
        s
    }

    /// Short content hash of the instance, ignoring comments.
    pub fn hash(&self) -> String {
        let mut d = Sha256::new();
        d.update(self.header());
        d.update(self.body());
        hex::encode(&d.finalize()[..8])
    }

    pub fn parse(text: &str) -> Result<Instance> {
        let perr = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let num = |line: usize, t: &str| t.parse::<usize>().map_err(|_| perr(line, &format!("bad number {t:?}")));
        let mut header: Option<(usize, usize, usize, usize)> = None;
        let mut comments = Vec::new();
        let mut cover: Option<Vec<usize>> = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.trim_end();
            if line.is_empty() {
                continue;
            }
            let mut tok = line.split_whitespace();
            let kind = tok.next().unwrap();
            if kind != "p" && header.is_none() {
                return Err(perr(ln, "expected header line first"));
            }
            match kind {
                "p" => {
                    if header.is_some() {
                        return Err(perr(ln, "second header"));
                    }
                    if tok.next() != Some("vcstream") {
                        return Err(perr(ln, "header must start with `p vcstream`"));
                    }
                    let v: Vec<usize> = tok.map(|t| num(ln, t)).collect::<Result<_>>()?;
                    if v.len() != 4 {
                        return Err(perr(ln, "header needs n m K ell"));
                    }
                    header = Some((v[0], v[1], v[2], v[3]));
                }
                "c" => comments.push(line.strip_prefix('c').unwrap().strip_prefix(' ').unwrap_or("").to_string()),
                "x" => {
                    if cover.is_some() {
                        return Err(perr(ln, "second cover line"));
                    }
                    cover = Some(tok.map(|t| num(ln, t)).collect::<Result<_>>()?);
                }
                "e" => {
                    let v: Vec<usize> = tok.map(|t| num(ln, t)).collect::<Result<_>>()?;
                    if v.len() != 2 {
                        return Err(perr(ln, "edge needs two endpoints"));
                    }
                    if v[0] == v[1] {
                        return Err(perr(ln, "self-loop"));
                    }
                    let n = header.unwrap().0;
                    if v[0] >= n || v[1] >= n {
                        return Err(perr(ln, "vertex id out of range"));
                    }
                    edges.push((v[0], v[1]));
                }
                other => return Err(perr(ln, &format!("unknown line type {other:?}"))),
            }
        }
        let (n, m, k, ell) = header.ok_or_else(|| perr(0, "missing header"))?;
        let cover = cover.ok_or_else(|| perr(0, "missing cover line"))?;
        if cover.len() != k {
            return Err(perr(0, &format!("header says K={k} but cover has {}", cover.len())));
        }
        if edges.len() != m {
            return Err(perr(0, &format!("header says m={m} but {} edges given", edges.len())));
        }
        let graph = Graph::new(n, edges)?;
        let cover = VertexCover::new(&graph, &cover)?;
        Ok(Instance { graph, cover, ell, comments })
    }
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    Instance::parse(&std::fs::read_to_string(path)?)
}

/// Writes an instance after checking that `cover` covers `g`.
pub fn write_instance(path: &Path, g: &Graph, cover: &[usize], ell: usize, comments: &[String]) -> Result<()> {
    let cover = VertexCover::new(g, cover)?;
    let inst = Instance { graph: g.clone(), cover, ell, comments: comments.to_vec() };
    std::fs::write(path, inst.to_text())?;
    Ok(())
}

// vertex count, declared edge count, edges read so far
type PendingPattern = (usize, usize, Vec<(usize, usize)>);

/// Parses blocks of `h <n> <m>` followed by `m` lines `e u v`.
pub fn parse_family(text: &str) -> Result<ExplicitFamily> {
    let perr = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    let mut members = Vec::new();
    let mut cur: Option<PendingPattern> = None;
    let finish = |c: PendingPattern, ln: usize| -> Result<PatternGraph> {
        if c.2.len() != c.1 {
            return Err(perr(ln, "pattern edge count does not match its header"));
        }
        PatternGraph::new(Graph::new(c.0, c.2)?)
    };
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        let nums: Vec<usize> = tok[1..]
            .iter()
            .map(|t| t.parse().map_err(|_| perr(ln, &format!("bad number {t:?}"))))
            .collect::<Result<_>>()?;
        match (tok[0], nums.as_slice()) {
            ("h", &[n, m]) => {
                if let Some(c) = cur.take() {
                    members.push(finish(c, ln)?);
                }
                cur = Some((n, m, Vec::new()));
            }
            ("e", &[u, v]) => {
                let c = cur.as_mut().ok_or_else(|| perr(ln, "edge before any pattern header"))?;
                if u == v {
                    return Err(perr(ln, "self-loop"));
                }
                c.2.push((u, v));
            }
            _ => return Err(perr(ln, "expected `h n m` or `e u v`")),
        }
    }
    if let Some(c) = cur.take() {
        members.push(finish(c, text.lines().count())?);
    }
    Ok(ExplicitFamily::new(members))
}

pub fn family_to_text(f: &ExplicitFamily) -> String {
    let mut s = String::new();
    for m in f.members() {
        writeln!(s, "h {} {}", m.h(), m.graph().m()).unwrap();
        for &(u, v) in m.graph().edges() {
            writeln!(s, "e {u} {v}").unwrap();
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlantedSpec {
    pub n: usize,
    pub k: usize,
    /// Probability of each allowed edge.
    pub p: f64,
    pub seed: u64,
}

/// Random graph whose edges all touch a random `k`-subset.
pub fn gen_planted(spec: &PlantedSpec) -> Result<(Graph, VertexCover)> {
    if spec.k > spec.n {
        return Err(Error::BadParams(format!("K={} exceeds n={}", spec.k, spec.n)));
    }
    if !(0.0..=1.0).contains(&spec.p) {
        return Err(Error::BadParams(format!("edge probability {} outside [0,1]", spec.p)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut cover: Vec<usize> = sample(&mut rng, spec.n, spec.k).into_vec();
    cover.sort_unstable();
    let mut in_cover = vec![false; spec.n];
    for &v in &cover {
        in_cover[v] = true;
    }
    let mut edges = Vec::new();
    for u in 0..spec.n {
        for v in u + 1..spec.n {
            if (in_cover[u] || in_cover[v]) && rng.gen_bool(spec.p) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::new(spec.n, edges)?;
    let x = VertexCover::new(&g, &cover)?;
    Ok((g, x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleFanSpec {
    pub h: PatternGraph,
    pub split_vertex: usize,
    pub x_bits: Vec<bool>,
    pub y_bits: Vec<bool>,
    /// Join every further neighbor of the split vertex to all centers.
    pub attach_all_neighbors: bool,
}

fn min_vertex_cover(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut best: Option<u32> = None;
    for mask in 0u32..(1 << n) {
        let ok = g.edges().iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1);
        if ok && best.is_none_or(|b| mask.count_ones() < b.count_ones()) {
            best = Some(mask);
        }
    }
    let b = best.unwrap_or(0);
    (0..n).filter(|&v| b >> v & 1 == 1).collect()
}

/// Replaces the split vertex of `H` by `n` centers; the smaller-id neighbor
/// of the split vertex joins center `i` iff `x_bits[i]`, the other iff
/// `y_bits[i]`. Returns the graph, a cover, and whether the graph is
/// `H`-free (the bit strings are disjoint).
pub fn gen_double_fan(spec: &DoubleFanSpec) -> Result<(Graph, VertexCover, bool)> {
    let hg = spec.h.graph();
    let s = spec.split_vertex;
    if spec.x_bits.len() != spec.y_bits.len() {
        return Err(Error::BadParams("bit strings differ in length".into()));
    }
    if hg.m() < 3 || !hg.is_connected() {
        return Err(Error::HTooSmall);
    }
    if s >= hg.n() {
        return Err(Error::VertexOutOfRange { v: s, n: hg.n() });
    }
    let deg = hg.degree(s);
    if deg < 2 || (deg != 2 && !spec.attach_all_neighbors) {
        return Err(Error::NotDegreeTwo(s));
    }
    let nb = hg.neighbors(s);
    let (a, b) = (nb[0], nb[1]);
    let id = |v: usize| if v < s { v } else { v - 1 };
    let base = hg.n() - 1;
    let mut edges: Vec<(usize, usize)> =
        hg.edges().iter().filter(|&&(u, v)| u != s && v != s).map(|&(u, v)| (id(u), id(v))).collect();
    for i in 0..spec.x_bits.len() {
        if spec.x_bits[i] {
            edges.push((id(a), base + i));
        }
        if spec.y_bits[i] {
            edges.push((id(b), base + i));
        }
        if spec.attach_all_neighbors {
            edges.extend(nb[2..].iter().map(|&w| (id(w), base + i)));
        }
    }
    let g = Graph::new(base + spec.x_bits.len(), edges)?;
    let mut cover: Vec<usize> = min_vertex_cover(hg)
        .into_iter()
        .filter(|&v| v != s)
        .chain(nb.iter().copied())
        .map(id)
        .collect();
    cover.sort_unstable();
    cover.dedup();
    let x = VertexCover::new(&g, &cover)?;
    let expected = !spec.x_bits.iter().zip(&spec.y_bits).any(|(&p, &q)| p && q);
    Ok((g, x, expected))
}

pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::BadParams(format!("bit string {s:?} has a non-binary digit"))),
        })
        .collect()
}
