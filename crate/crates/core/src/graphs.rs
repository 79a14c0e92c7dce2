//! Multigraphs with symbolic edge weights, induced subgraphs and blow-ups.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{format_rational, parse_rational, MultiPoly, Rational, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    Var(Var),
    Const(Rational),
}

impl Weight {
    pub fn var(name: &str) -> Self {
        Weight::Var(Var::new(name))
    }

    pub fn constant(r: Rational) -> Self {
        Weight::Const(r)
    }

    pub fn to_poly(&self) -> MultiPoly {
        match self {
            Weight::Var(v) => MultiPoly::from_var(v),
            Weight::Const(c) => MultiPoly::constant(c.clone()),
        }
    }

    /// Variable names are kept verbatim; anything that parses as a rational is a constant.
    pub fn parse(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::Parse("empty edge weight".into()));
        }
        match parse_rational(text) {
            Ok(r) => Ok(Weight::Const(r)),
            Err(_) => Ok(Weight::Var(Var::new(text))),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Var(v) => write!(f, "{v}"),
            Weight::Const(c) => f.write_str(&format_rational(c)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub weight: Weight,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }
}

/// Undirected multigraph. Loops and parallel edges are allowed; edges are
/// identified by their position in the edge list.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiGraph {
    name: Option<String>,
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

/// Disjoint-set forest with path compression.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            components: n,
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.components -= 1;
        true
    }

    pub(crate) fn components(&self) -> usize {
        self.components
    }
}

impl MultiGraph {
    pub fn new<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut seen = std::collections::BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::Parse(format!("duplicate vertex id {v:?}")));
            }
        }
        Ok(MultiGraph {
            name: None,
            vertices,
            edges: Vec::new(),
        })
    }

    /// Vertices `"1"..="n"` and no edges.
    pub fn edgeless(n: usize) -> Self {
        MultiGraph {
            name: Some(format!("E_{n}")),
            vertices: (1..=n).map(|i| i.to_string()).collect(),
            edges: Vec::new(),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    fn index_of(&self, id: &str) -> Result<usize> {
        self.vertex_index(id)
            .ok_or_else(|| Error::Domain(format!("unknown vertex {id:?}")))
    }

    /// Adds an edge with an explicit weight.
    pub fn add_edge(&mut self, a: &str, b: &str, weight: Weight) -> Result<usize> {
        let (a, b) = (self.index_of(a)?, self.index_of(b)?);
        self.edges.push(Edge { a, b, weight });
        Ok(self.edges.len() - 1)
    }

    /// Adds an edge weighted by the default variable `v:<index>`.
    pub fn add_default_edge(&mut self, a: &str, b: &str) -> Result<usize> {
        let w = Weight::var(&format!("v:{}", self.edges.len()));
        self.add_edge(a, b, w)
    }

    fn push_default(&mut self, a: usize, b: usize) {
        let weight = Weight::var(&format!("v:{}", self.edges.len()));
        self.edges.push(Edge { a, b, weight });
    }

    /// Same graph with every edge carrying `w`.
    pub fn with_uniform_weight(&self, w: Weight) -> MultiGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.weight = w.clone();
        }
        g
    }

    /// Same graph with edge `i` carrying `weights[i]`.
    pub fn with_weights(&self, weights: &[Weight]) -> Result<MultiGraph> {
        if weights.len() != self.edges.len() {
            return Err(Error::Structural(format!(
                "{} weights for {} edges",
                weights.len(),
                self.edges.len()
            )));
        }
        let mut g = self.clone();
        for (e, w) in g.edges.iter_mut().zip(weights) {
            e.weight = w.clone();
        }
        Ok(g)
    }

    pub fn weight_poly(&self, e: usize) -> MultiPoly {
        self.edges[e].weight.to_poly()
    }

    /// The distinct weight variables, in registry order.
    pub fn weight_vars(&self) -> Vec<Var> {
        let set: std::collections::BTreeSet<Var> = self
            .edges
            .iter()
            .filter_map(|e| match &e.weight {
                Weight::Var(v) => Some(v.clone()),
                Weight::Const(_) => None,
            })
            .collect();
        set.into_iter().collect()
    }

    pub fn is_loopless(&self) -> bool {
        self.edges.iter().all(|e| !e.is_loop())
    }

    pub fn has_loop_at(&self, v: usize) -> bool {
        self.edges.iter().any(|e| e.is_loop() && e.a == v)
    }

    /// Loopless and without parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.edges
            .iter()
            .all(|e| !e.is_loop() && seen.insert((e.a.min(e.b), e.a.max(e.b))))
    }

    /// Short identifier used in reports, e.g. `K_3(|V|=3,|E|=3)`.
    pub fn fingerprint(&self) -> String {
        format!(
            "{}(|V|={},|E|={})",
            self.name.as_deref().unwrap_or("G"),
            self.vertices.len(),
            self.edges.len()
        )
    }

    /// Vertex bitmask of a list of ids.
    pub fn mask_of(&self, ids: &[&str]) -> Result<u64> {
        let mut m = 0u64;
        for id in ids {
            m |= 1 << self.index_of(id)?;
        }
        Ok(m)
    }

    pub fn full_mask(&self) -> u64 {
        if self.vertices.len() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.vertices.len()) - 1
        }
    }

    /// Induced subgraph on a vertex bitmask. Weights and vertex ids are kept.
    pub fn induced(&self, mask: u64) -> MultiGraph {
        let mut map = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if mask >> i & 1 == 1 {
                map[i] = vertices.len();
                vertices.push(v.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| map[e.a] != usize::MAX && map[e.b] != usize::MAX)
            .map(|e| Edge {
                a: map[e.a],
                b: map[e.b],
                weight: e.weight.clone(),
            })
            .collect();
        MultiGraph {
            name: self.name.as_ref().map(|n| format!("{n}[{mask:b}]")),
            vertices,
            edges,
        }
    }

    pub fn induced_subgraph(&self, ids: &[&str]) -> Result<MultiGraph> {
        Ok(self.induced(self.mask_of(ids)?))
    }

    /// Number of connected components of the spanning subgraph `(V, A)`.
    pub fn count_components(&self, a: &[usize]) -> Result<usize> {
        let mut uf = UnionFind::new(self.vertices.len());
        for &e in a {
            let edge = self.edges.get(e).ok_or_else(|| {
                Error::Range(format!("edge index {e} out of range (|E| = {})", self.edges.len()))
            })?;
            uf.union(edge.a, edge.b);
        }
        Ok(uf.components())
    }

    /// Components for an edge bitmask; the hot path of subset enumeration.
    pub(crate) fn components_of_mask(&self, mask: u64) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        let mut m = mask;
        while m != 0 {
            let e = m.trailing_zeros() as usize;
            m &= m - 1;
            uf.union(self.edges[e].a, self.edges[e].b);
        }
        uf.components()
    }

    /// `|A| - |V| + k(A)`.
    pub fn cyclomatic(&self, a: &[usize]) -> Result<usize> {
        let k = self.count_components(a)?;
        Ok(a.len() + k - self.vertices.len())
    }

    /// Edges with one endpoint in `w` and the other at `j`.
    pub fn edge_boundary(&self, w: u64, j: usize) -> Result<Vec<usize>> {
        if w >> j & 1 == 1 {
            return Err(Error::Domain(format!(
                "vertex {} lies in the set",
                self.vertices[j]
            )));
        }
        Ok(self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| (e.a == j && w >> e.b & 1 == 1) || (e.b == j && w >> e.a & 1 == 1))
            .map(|(i, _)| i)
            .collect())
    }

    fn require_simple(&self, what: &str) -> Result<()> {
        if !self.is_simple() {
            return Err(Error::Domain(format!(
                "{what} needs a simple loopless graph, got {}",
                self.fingerprint()
            )));
        }
        Ok(())
    }

    fn blowup(&self, n: &[u32], cliques: bool) -> Result<MultiGraph> {
        self.require_simple("blow-up")?;
        if n.len() != self.vertices.len() {
            return Err(Error::Structural(format!(
                "multi-index of length {} for {} vertices",
                n.len(),
                self.vertices.len()
            )));
        }
        let mut first = Vec::with_capacity(n.len());
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            first.push(vertices.len());
            for alpha in 1..=n[i] {
                vertices.push(format!("{v}#{alpha}"));
            }
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            for x in 0..n[e.a] as usize {
                for y in 0..n[e.b] as usize {
                    edges.push(Edge {
                        a: first[e.a] + x,
                        b: first[e.b] + y,
                        weight: e.weight.clone(),
                    });
                }
            }
        }
        if cliques {
            for (i, v) in self.vertices.iter().enumerate() {
                let w = Weight::var(&format!("w:{v}"));
                for x in 0..n[i] as usize {
                    for y in x + 1..n[i] as usize {
                        edges.push(Edge {
                            a: first[i] + x,
                            b: first[i] + y,
                            weight: w.clone(),
                        });
                    }
                }
            }
        }
        let tag = n.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let base = self.name.as_deref().unwrap_or("G");
        Ok(MultiGraph {
            name: Some(if cliques {
                format!("{base}'[{tag}]")
            } else {
                format!("{base}[{tag}]")
            }),
            vertices,
            edges,
        })
    }

    /// `G[n]`: vertex `i` becomes an independent set of `n_i` copies.
    pub fn blowup_independent(&self, n: &[u32]) -> Result<MultiGraph> {
        self.blowup(n, false)
    }

    /// `G'[n]`: vertex `i` becomes a clique on `n_i` copies with edge weight `w:<i>`.
    pub fn blowup_clique(&self, n: &[u32]) -> Result<MultiGraph> {
        self.blowup(n, true)
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| {
                json!([
                    self.vertices[e.a],
                    self.vertices[e.b],
                    e.weight.to_string()
                ])
            })
            .collect();
        let mut obj = json!({"vertices": self.vertices, "edges": edges});
        if let Some(n) = &self.name {
            obj["name"] = json!(n);
        }
        obj
    }

    /// Parses the graph file format. Edges without a weight get `v:<index>`.
    pub fn from_json(value: &Value) -> Result<MultiGraph> {
        let bad = |m: &str| Error::Parse(format!("graph JSON: {m}"));
        let vertices: Vec<String> = value
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"vertices\" array"))?
            .iter()
            .map(|v| match v {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(bad("vertex ids must be strings")),
            })
            .collect::<Result<_>>()?;
        let mut g = MultiGraph::new(vertices)?;
        if let Some(n) = value.get("name").and_then(Value::as_str) {
            g.name = Some(n.to_string());
        }
        let edges = match value.get("edges") {
            None => Vec::new(),
            Some(e) => e.as_array().ok_or_else(|| bad("\"edges\" must be an array"))?.clone(),
        };
        for e in edges {
            let parts = e.as_array().ok_or_else(|| bad("each edge must be an array"))?;
            if !(2..=3).contains(&parts.len()) {
                return Err(bad("edges are [u, v] or [u, v, weight]"));
            }
            let id = |x: &Value| match x {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(bad("edge endpoints must be vertex ids")),
            };
            let (a, b) = (id(&parts[0])?, id(&parts[1])?);
            let ia = g.vertex_index(&a).ok_or_else(|| bad(&format!("unknown vertex {a:?}")))?;
            let ib = g.vertex_index(&b).ok_or_else(|| bad(&format!("unknown vertex {b:?}")))?;
            match parts.get(2) {
                None | Some(Value::Null) => g.push_default(ia, ib),
                Some(Value::String(s)) => g.edges.push(Edge {
                    a: ia,
                    b: ib,
                    weight: Weight::parse(s)?,
                }),
                Some(Value::Number(n)) => g.edges.push(Edge {
                    a: ia,
                    b: ib,
                    weight: Weight::Const(parse_rational(&n.to_string())?),
                }),
                Some(_) => return Err(bad("edge weight must be a string or integer")),
            }
        }
        Ok(g)
    }

    pub fn from_json_str(text: &str) -> Result<MultiGraph> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
        MultiGraph::from_json(&value)
    }
}

/// Standard families on vertices `"1".."n"` with default edge weights.
pub mod families {
    use super::*;

    fn build(name: String, n: usize, pairs: &[(usize, usize)]) -> MultiGraph {
        let mut g = MultiGraph::edgeless(n).named(name);
        for &(a, b) in pairs {
            g.push_default(a, b);
        }
        g
    }

    pub fn complete(n: usize) -> MultiGraph {
        let pairs: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        build(format!("K_{n}"), n, &pairs)
    }

    /// `K_{a,b}` with parts `1..=a` and `a+1..=a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> MultiGraph {
        let pairs: Vec<_> = (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))).collect();
        build(format!("K_{{{a},{b}}}"), a + b, &pairs)
    }

    pub fn path(n: usize) -> MultiGraph {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        build(format!("P_{n}"), n, &pairs)
    }

    pub fn cycle(n: usize) -> MultiGraph {
        let mut pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 2 {
            pairs.push((n - 1, 0));
        }
        build(format!("C_{n}"), n, &pairs)
    }

    /// `K_{1,k}` with center `"1"`.
    pub fn star(k: usize) -> MultiGraph {
        let pairs: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        build(format!("K_{{1,{k}}}"), k + 1, &pairs)
    }

    /// Two vertices joined by two parallel edges.
    pub fn double_edge() -> MultiGraph {
        build("K_2^(2)".into(), 2, &[(0, 1), (0, 1)])
    }

    /// `K_3` plus a loop at vertex `"1"`.
    pub fn triangle_with_loop() -> MultiGraph {
        build("K_3+loop".into(), 3, &[(0, 1), (0, 2), (1, 2), (0, 0)])
    }

    pub fn k4_minus_edge() -> MultiGraph {
        build("K_4-e".into(), 4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    }
}

/// Exponent map from vertex ids to blow-up sizes, keyed by id.
pub fn multi_index(g: &MultiGraph, n: &BTreeMap<String, u32>) -> Result<Vec<u32>> {
    for k in n.keys() {
        if g.vertex_index(k).is_none() {
            return Err(Error::Domain(format!("unknown vertex {k:?}")));
        }
    }
    Ok(g.vertices().iter().map(|v| n.get(v).copied().unwrap_or(0)).collect())
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn induced() {
        let k3 = complete(3);
        let k2 = k3.induced_subgraph(&["1", "2"]).unwrap();
        assert_eq!(k2.num_vertices(), 2);
        assert_eq!(k2.num_edges(), 1);
        assert_eq!(k3.induced(k3.full_mask()).edges(), k3.edges());
        let empty = k3.induced(0);
        assert_eq!(empty.num_vertices(), 0);
        assert!(k3.induced_subgraph(&["9"]).is_err());
    }

    #[test]
    fn components_and_cycles() {
        let k4 = complete(4);
        assert_eq!(k4.count_components(&[]).unwrap(), 4);
        // edges 0:12 1:13 2:14 3:23 4:24 5:34
        assert_eq!(k4.count_components(&[0, 1, 2]).unwrap(), 1);
        assert_eq!(k4.count_components(&[0, 5]).unwrap(), 2);
        assert!(matches!(k4.count_components(&[6]), Err(Error::Range(_))));
        assert_eq!(k4.cyclomatic(&[0, 1, 2]).unwrap(), 0);
        assert_eq!(complete(3).cyclomatic(&[0, 1, 2]).unwrap(), 1);
        assert_eq!(triangle_with_loop().cyclomatic(&[3]).unwrap(), 1);
    }

    #[test]
    fn boundaries() {
        let k3 = complete(3);
        assert_eq!(k3.edge_boundary(0b011, 2).unwrap(), vec![1, 2]);
        assert!(k3.edge_boundary(0, 2).unwrap().is_empty());
        assert!(k3.edge_boundary(0b100, 2).is_err());
        let mut g = MultiGraph::edgeless(3);
        g.add_default_edge("1", "3").unwrap();
        g.add_default_edge("1", "3").unwrap();
        assert_eq!(g.edge_boundary(0b001, 2).unwrap(), vec![0, 1]);
    }

    #[test]
    fn blowups() {
        let k2 = complete(2);
        let b = k2.blowup_independent(&[2, 3]).unwrap();
        assert_eq!(b.num_vertices(), 5);
        assert_eq!(b.num_edges(), 6);
        assert!(b.edges().iter().all(|e| e.weight == Weight::var("v:0")));
        assert_eq!(k2.blowup_independent(&[0, 0]).unwrap().num_vertices(), 0);
        let k1 = complete(1);
        let k3 = k1.blowup_clique(&[3]).unwrap();
        assert_eq!(k3.num_edges(), 3);
        assert!(k3.edges().iter().all(|e| e.weight == Weight::var("w:1")));
        assert_eq!(k1.blowup_clique(&[1]).unwrap().num_vertices(), 1);
        assert!(double_edge().blowup_clique(&[1, 1]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"vertices":["a","b"],"edges":[["a","b"],["a","b","x"],["b","b","-1/2"]]}"#;
        let g = MultiGraph::from_json_str(text).unwrap();
        assert_eq!(g.edges()[0].weight, Weight::var("v:0"));
        assert_eq!(g.edges()[1].weight, Weight::var("x"));
        assert_eq!(g.edges()[2].weight, Weight::Const(crate::exactalg::rat(-1, 2)));
        assert_eq!(MultiGraph::from_json(&g.to_json()).unwrap(), g);
        assert!(MultiGraph::from_json_str(r#"{"vertices":["a"],"edges":[["a","z"]]}"#).is_err());
    }
}
