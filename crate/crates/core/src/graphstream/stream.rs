use std::convert::Infallible;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use super::graph::Graph;
use super::meter::PassMeter;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StreamModel {
    /// Edge arrival: edges only.
    Ea,
    /// Vertex arrival: each vertex with its edges to earlier vertices.
    Va,
    /// Adjacency list: each vertex with all incident edges.
    Al,
}

impl FromStr for StreamModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<StreamModel> {
        match s.to_ascii_lowercase().as_str() {
            "ea" => Ok(StreamModel::Ea),
            "va" => Ok(StreamModel::Va),
            "al" => Ok(StreamModel::Al),
            _ => Err(Error::BadParams(format!("unknown stream model {s}"))),
        }
    }
}

impl fmt::Display for StreamModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StreamModel::Ea => "ea",
            StreamModel::Va => "va",
            StreamModel::Al => "al",
        };
        f.write_str(s)
    }
}

/// One stream event. Inside a vertex block, `Edge(u, w)` has the block
/// owner as `u`; in the EA model `u` is the endpoint earlier in the order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StreamEvent {
    VertexBegin(usize),
    Edge(usize, usize),
    VertexEnd(usize),
    PassEnd,
}

/// Replayable view of a graph in one arrival model.
#[derive(Clone, Debug)]
pub struct StreamHandle<'g> {
    graph: &'g Graph,
    model: StreamModel,
    order: Rc<Vec<usize>>,
    position: Rc<Vec<usize>>,
    blocks: Rc<Vec<Vec<usize>>>,
    ea: Rc<Vec<(usize, usize)>>,
    keep: Option<Rc<Vec<bool>>>,
    meter: PassMeter,
}

pub fn make_stream<'g>(g: &'g Graph, model: StreamModel, order: &[usize]) -> Result<StreamHandle<'g>> {
    let n = g.n();
    if order.len() != n {
        return Err(Error::BadPermutation);
    }
    let mut position = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return Err(Error::BadPermutation);
        }
        position[v] = i;
    }
    let mut blocks = vec![Vec::new(); n];
    let mut ea = Vec::new();
    match model {
        StreamModel::Ea => {
            for &(u, v) in g.edges() {
                let (a, b) = if position[u] < position[v] { (u, v) } else { (v, u) };
                ea.push((a, b));
            }
            ea.sort_unstable_by_key(|&(a, b)| (position[a], position[b]));
        }
        StreamModel::Va | StreamModel::Al => {
            for v in 0..n {
                let mut nb: Vec<usize> = g
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| model == StreamModel::Al || position[w] < position[v])
                    .collect();
                nb.sort_unstable_by_key(|&w| position[w]);
                blocks[v] = nb;
            }
        }
    }
    Ok(StreamHandle {
        graph: g,
        model,
        order: Rc::new(order.to_vec()),
        position: Rc::new(position),
        blocks: Rc::new(blocks),
        ea: Rc::new(ea),
        keep: None,
        meter: PassMeter::new(),
    })
}

impl<'g> StreamHandle<'g> {
    /// Stream in identity order.
    pub fn identity(g: &'g Graph, model: StreamModel) -> StreamHandle<'g> {
        let order: Vec<usize> = g.vertices().collect();
        make_stream(g, model, &order).unwrap()
    }

    pub fn adjacency_list(g: &'g Graph) -> StreamHandle<'g> {
        StreamHandle::identity(g, StreamModel::Al)
    }

    pub fn source(&self) -> &'g Graph {
        self.graph
    }

    pub fn model(&self) -> StreamModel {
        self.model
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Position of `v` in the stream order.
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn pass_meter(&self) -> &PassMeter {
        &self.meter
    }

    pub fn passes(&self) -> u64 {
        self.meter.passes()
    }

    pub fn require_al(&self) -> Result<()> {
        if self.model == StreamModel::Al {
            Ok(())
        } else {
            Err(Error::NotALModel)
        }
    }

    pub fn keeps(&self, v: usize) -> bool {
        self.keep.as_ref().is_none_or(|k| k[v])
    }

    /// Feeds one full pass to `consumer`.
    pub fn run_pass<F: FnMut(&StreamEvent)>(&self, mut consumer: F) {
        let r: std::result::Result<(), Infallible> = self.try_pass(|e| {
            consumer(e);
            Ok(())
        });
        let Ok(()) = r;
    }

    /// Like `run_pass`, but stops delivering at the first consumer error.
    /// The pass is charged either way.
    pub fn try_pass<E, F>(&self, mut consumer: F) -> std::result::Result<(), E>
    where
        F: FnMut(&StreamEvent) -> std::result::Result<(), E>,
    {
        let r = self.emit(&mut consumer);
        self.meter.tick();
        r
    }

    fn emit<E, F>(&self, consumer: &mut F) -> std::result::Result<(), E>
    where
        F: FnMut(&StreamEvent) -> std::result::Result<(), E>,
    {
        match self.model {
            StreamModel::Ea => {
                for &(a, b) in self.ea.iter() {
                    if self.keeps(a) && self.keeps(b) {
                        consumer(&StreamEvent::Edge(a, b))?;
                    }
                }
            }
            StreamModel::Va | StreamModel::Al => {
                for &v in self.order.iter() {
                    if !self.keeps(v) {
                        continue;
                    }
                    consumer(&StreamEvent::VertexBegin(v))?;
                    for &w in &self.blocks[v] {
                        if self.keeps(w) {
                            consumer(&StreamEvent::Edge(v, w))?;
                        }
                    }
                    consumer(&StreamEvent::VertexEnd(v))?;
                }
            }
        }
        consumer(&StreamEvent::PassEnd)
    }

    /// Consumes one pass and returns its events.
    pub fn collect_pass(&self) -> Vec<StreamEvent> {
        let mut out = Vec::new();
        self.run_pass(|e| out.push(*e));
        out
    }

    /// Stream of the subgraph induced by `{v : keep(v)}` in the same model
    /// and relative order. Its passes are charged to this handle's meter.
    pub fn filtered_substream<P: Fn(usize) -> bool>(&self, keep: P) -> StreamHandle<'g> {
        let mask: Vec<bool> = (0..self.graph.n()).map(|v| self.keeps(v) && keep(v)).collect();
        StreamHandle { keep: Some(Rc::new(mask)), ..self.clone() }
    }
}
