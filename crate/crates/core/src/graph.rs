//! The Hilbert graph of `Gamma_n`: strata as nodes, length-zero pairs as
//! edges annotated with their incidence verdict.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::{enumerate_diagrams, CastelnuovoDiagram};
use crate::incidence::{covers_of, resolve_incidence_with, IncidenceVerdict};
use crate::strata::Stratum;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: usize,
    pub s: String,
    pub h: String,
    pub dim: u64,
    pub a: BTreeMap<i64, u64>,
    pub b: BTreeMap<i64, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub from: usize,
    pub to: usize,
    pub u: usize,
    pub v: usize,
    pub incident: bool,
    pub dim_ok: bool,
    pub tangent_ok: bool,
    pub condition_c: bool,
    pub type_zero: bool,
}

/// Node ids index [`enumerate_diagrams`] order; edges run from the smaller
/// Hilbert function to the larger one and are sorted by `(from, to)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertGraph {
    pub n: u32,
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
}

/// Strata of `Gamma_n` in enumeration order, with a lookup from diagram to index.
pub struct StrataIndex {
    pub strata: Vec<Stratum>,
    index: HashMap<CastelnuovoDiagram, usize>,
}

impl StrataIndex {
    pub fn build(n: u32) -> Self {
        let strata: Vec<Stratum> = enumerate_diagrams(n)
            .into_par_iter()
            .map(|d| Stratum::new(d.hilbert_function()))
            .collect();
        let index = strata
            .iter()
            .enumerate()
            .map(|(i, st)| (st.hf.diagram().clone(), i))
            .collect();
        Self { strata, index }
    }

    pub fn id_of(&self, d: &CastelnuovoDiagram) -> Option<usize> {
        self.index.get(d).copied()
    }
}

fn edge_record(
    from: usize,
    to: usize,
    u: usize,
    v: usize,
    verdict: &IncidenceVerdict,
) -> EdgeRecord {
    EdgeRecord {
        from,
        to,
        u,
        v,
        incident: verdict.incident,
        dim_ok: verdict.dim_ok,
        tangent_ok: verdict.tangent_ok,
        condition_c: verdict.condition_c,
        type_zero: verdict.type_zero,
    }
}

pub fn build_hilbert_graph(n: u32) -> HilbertGraph {
    let idx = StrataIndex::build(n);
    let nodes = idx
        .strata
        .iter()
        .enumerate()
        .map(|(id, st)| NodeRecord {
            id,
            s: st.hf.diagram().to_string(),
            h: st.hf.to_string(),
            dim: st.dim,
            a: st.betti.generators().clone(),
            b: st.betti.relations().clone(),
        })
        .collect();
    let mut edges: Vec<EdgeRecord> = idx
        .strata
        .par_iter()
        .enumerate()
        .flat_map_iter(|(from, phi)| {
            let idx = &idx;
            covers_of(&phi.hf).into_iter().map(move |p| {
                let to = idx
                    .id_of(p.psi().diagram())
                    .expect("cover stays in Gamma_n");
                let verdict = resolve_incidence_with(&p, phi, &idx.strata[to]);
                edge_record(from, to, p.u(), p.v(), &verdict)
            })
        })
        .collect();
    edges.sort_by_key(|e| (e.from, e.to));
    HilbertGraph { n, nodes, edges }
}

/// An interval `[from, to]` whose maximal chains have more than one length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoncatenaryWitness {
    pub from: usize,
    pub to: usize,
    /// Distinct lengths of maximal chains (paths in the cover graph), ascending.
    pub lengths: Vec<usize>,
}

impl NoncatenaryWitness {
    /// Two maximal chains of lengths 2 and 3 and nothing else.
    pub fn is_pentagon(&self) -> bool {
        self.lengths == [2, 3]
    }
}

impl HilbertGraph {
    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            succ[e.from].push(e.to);
        }
        succ
    }

    /// Kahn order of the cover graph.
    fn topological_order(&self) -> Vec<usize> {
        let succ = self.successors();
        let mut indeg = vec![0usize; self.nodes.len()];
        for e in &self.edges {
            indeg[e.to] += 1;
        }
        let mut queue: Vec<usize> = (0..self.nodes.len()).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(x) = queue.pop() {
            order.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push(y);
                }
            }
        }
        order
    }

    /// Layer of each node: length of the longest path reaching it from a minimal node.
    pub fn layers(&self) -> Vec<usize> {
        let succ = self.successors();
        let mut layer = vec![0usize; self.nodes.len()];
        for x in self.topological_order() {
            for &y in &succ[x] {
                layer[y] = layer[y].max(layer[x] + 1);
            }
        }
        layer
    }

    /// Reflexive-transitive closure of the edge relation, as a reachability matrix.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let succ = self.successors();
        let order = self.topological_order();
        let k = self.nodes.len();
        let mut reach = vec![vec![false; k]; k];
        for &x in order.iter().rev() {
            reach[x][x] = true;
            for &y in &succ[x] {
                let row = reach[y].clone();
                for (dst, src) in reach[x].iter_mut().zip(row) {
                    *dst |= src;
                }
            }
        }
        reach
    }
}

/// Every comparable pair whose interval has maximal chains of different lengths.
///
/// Maximal chains of `[x, y]` are exactly the directed paths from `x` to `y`
/// in the cover graph, so the set of chain lengths is propagated along a
/// topological order from each source.
pub fn detect_noncatenary(g: &HilbertGraph) -> Vec<NoncatenaryWitness> {
    let succ = g.successors();
    let order = g.topological_order();
    let mut out = Vec::new();
    for &x in &order {
        let mut lengths: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); g.nodes.len()];
        lengths[x].insert(0);
        for &y in order.iter().skip_while(|&&y| y != x) {
            if lengths[y].is_empty() {
                continue;
            }
            let here: Vec<usize> = lengths[y].iter().map(|l| l + 1).collect();
            for &z in &succ[y] {
                lengths[z].extend(here.iter().copied());
            }
        }
        for (y, ls) in lengths.into_iter().enumerate() {
            if ls.len() > 1 {
                out.push(NoncatenaryWitness {
                    from: x,
                    to: y,
                    lengths: ls.into_iter().collect(),
                });
            }
        }
    }
    out.sort_by_key(|w| (w.from, w.to));
    out
}

fn to_dot(g: &HilbertGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph hilbert_graph_{} {{", g.n);
    out.push_str("  rankdir=TB;\n");
    out.push_str("  node [shape=box, fontname=\"monospace\"];\n");
    let layers = g.layers();
    let mut by_layer: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (id, &l) in layers.iter().enumerate() {
        by_layer.entry(l).or_default().push(id);
    }
    for ids in by_layer.values() {
        out.push_str("  { rank=same;");
        for id in ids {
            let _ = write!(out, " n{id};");
        }
        out.push_str(" }\n");
    }
    for node in &g.nodes {
        let _ = writeln!(
            out,
            "  n{} [label=\"{}\\ndim {}\"];",
            node.id, node.s, node.dim
        );
    }
    for e in &g.edges {
        let style = if e.incident { "solid" } else { "dashed" };
        let label = if e.type_zero { ", label=\"0\"" } else { "" };
        let _ = writeln!(out, "  n{} -> n{} [style={style}{label}];", e.from, e.to);
    }
    out.push_str("}\n");
    out
}

fn to_json(g: &HilbertGraph) -> String {
    let mut s = serde_json::to_string_pretty(g).expect("graph serializes");
    s.push('\n');
    s
}

pub fn emit(g: &HilbertGraph, format: Format) -> Vec<u8> {
    match format {
        Format::Dot => to_dot(g),
        Format::Json => to_json(g),
    }
    .into_bytes()
}

pub fn parse_json(bytes: &[u8]) -> serde_json::Result<HilbertGraph> {
    serde_json::from_slice(bytes)
}
