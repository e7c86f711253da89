//! Graph inverse semigroups, graph monoids and tight Booleanizations of
//! finite acyclic graphs.
//!
//! Paths are written right to left: a path `e_1 e_2 ⋯ e_n` has
//! `s(e_i) = r(e_{i+1})`, range `r(e_1)` and source `s(e_n)`. An edge
//! `e: u -> w` has `s(e) = u` and `r(e) = w`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use petgraph::algo::toposort;
use petgraph::graph::DiGraph;

use crate::boolean::BooleanInverseSemigroup;
use crate::error::{violation, Error, Result};
use crate::pperm::DEFAULT_ELEMENT_CAP;
use crate::semigroup::{InverseSemigroup, ZERO};
use crate::structure::{local_bisection_semigroup, BisectionSemigroup, FiniteGroupoid};
use crate::typemonoid::{
    certify_free, decide_equal, typ, FreeCertificate, MonoidPresentation, NVec, TypeMonoid, WordBudget, WordVerdict,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: usize,
    pub range: usize,
}

/// A finite directed graph with named vertices and edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl DirectedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if self.vertex(name).is_some() {
            return Err(Error::Invalid(format!("duplicate vertex {name}")));
        }
        self.vertices.push(name.to_string());
        Ok(self.vertices.len() - 1)
    }

    /// Adds `name: source -> range`, creating missing vertices.
    pub fn add_edge(&mut self, name: &str, source: &str, range: &str) -> Result<usize> {
        if self.edges.iter().any(|e| e.name == name) {
            return Err(Error::Invalid(format!("duplicate edge {name}")));
        }
        let s = match self.vertex(source) {
            Some(v) => v,
            None => self.add_vertex(source)?,
        };
        let r = match self.vertex(range) {
            Some(v) => v,
            None => self.add_vertex(range)?,
        };
        self.edges.push(Edge {
            name: name.to_string(),
            source: s,
            range: r,
        });
        Ok(self.edges.len() - 1)
    }

    /// Builds a graph from vertex names and `(name, source, range)` edges.
    pub fn from_parts(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        let mut g = Self::new();
        for v in vertices {
            g.add_vertex(v)?;
        }
        for (e, s, r) in edges {
            g.add_edge(e, s, r)?;
        }
        Ok(g)
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
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

    /// Edges with source `v`.
    pub fn emitted(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].source == v).collect()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.edges.iter().all(|e| e.source != v)
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.is_sink(v)).collect()
    }

    /// Vertices with every edge going from earlier to later positions.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let mut g = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = (0..self.num_vertices()).map(|_| g.add_node(())).collect();
        for e in &self.edges {
            g.add_edge(nodes[e.source], nodes[e.range], ());
        }
        toposort(&g, None)
            .map(|order| order.into_iter().map(|n| n.index()).collect())
            .map_err(|c| Error::GraphHasCycle(self.vertices[c.node_id().index()].clone()))
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    fn require_acyclic(&self) -> Result<Vec<usize>> {
        self.topological_order()
    }

    /// All paths of an acyclic graph: trivial paths first, then by length.
    pub fn paths(&self) -> Result<Vec<GraphPath>> {
        self.require_acyclic()?;
        let mut out: Vec<GraphPath> = (0..self.num_vertices()).map(GraphPath::trivial).collect();
        let mut frontier = out.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                let src = p.source(self);
                for (f, e) in self.edges.iter().enumerate() {
                    if e.range == src {
                        let mut edges = p.edges.clone();
                        edges.push(f);
                        next.push(GraphPath { range: p.range, edges });
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(out)
    }

    /// Paths with range `w`.
    pub fn paths_to(&self, w: usize) -> Result<Vec<GraphPath>> {
        Ok(self.paths()?.into_iter().filter(|p| p.range == w).collect())
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n");
        for (i, v) in self.vertices.iter().enumerate() {
            out += &format!("  v{i} [label=\"{v}\"];\n");
        }
        for e in &self.edges {
            out += &format!("  v{} -> v{} [label=\"{}\"];\n", e.source, e.range, e.name);
        }
        out + "}\n"
    }
}

impl fmt::Display for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for e in &self.edges {
            writeln!(
                f,
                "edge {}: {} -> {}",
                e.name, self.vertices[e.source], self.vertices[e.range]
            )?;
        }
        Ok(())
    }
}

/// A path `e_1 ⋯ e_n`, or the trivial path at `range` when `edges` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphPath {
    pub range: usize,
    pub edges: Vec<usize>,
}

impl GraphPath {
    pub fn trivial(v: usize) -> Self {
        GraphPath {
            range: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(g: &DirectedGraph, e: usize) -> Self {
        GraphPath {
            range: g.edges[e].range,
            edges: vec![e],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self, g: &DirectedGraph) -> usize {
        self.edges.last().map_or(self.range, |&e| g.edges[e].source)
    }

    /// `self · other`, defined when `s(self) = r(other)`.
    pub fn concat(&self, g: &DirectedGraph, other: &GraphPath) -> Option<GraphPath> {
        (self.source(g) == other.range).then(|| GraphPath {
            range: self.range,
            edges: [self.edges.as_slice(), other.edges.as_slice()].concat(),
        })
    }

    /// `p` with `self = p · suffix`.
    pub fn strip_suffix(&self, g: &DirectedGraph, suffix: &GraphPath) -> Option<GraphPath> {
        if suffix.len() > self.len() || !self.edges.ends_with(&suffix.edges) {
            return None;
        }
        let p = GraphPath {
            range: self.range,
            edges: self.edges[..self.len() - suffix.len()].to_vec(),
        };
        (p.source(g) == suffix.range).then_some(p)
    }

    pub fn label(&self, g: &DirectedGraph) -> String {
        if self.edges.is_empty() {
            return g.vertices[self.range].clone();
        }
        let names: Vec<&str> = self.edges.iter().map(|&e| g.edges[e].name.as_str()).collect();
        if names.iter().all(|n| n.chars().count() == 1) {
            names.concat()
        } else {
            names.join(".")
        }
    }
}

/// `0` or `x*y` for paths with `r(x) = r(y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GisElement {
    Zero,
    Pair(GraphPath, GraphPath),
}

impl GisElement {
    pub fn vertex(v: usize) -> Self {
        GisElement::Pair(GraphPath::trivial(v), GraphPath::trivial(v))
    }

    /// The edge `e`, i.e. `r(e)* e`.
    pub fn edge(g: &DirectedGraph, e: usize) -> Self {
        let p = GraphPath::edge(g, e);
        GisElement::Pair(GraphPath::trivial(p.range), p)
    }

    /// `e*`.
    pub fn star(g: &DirectedGraph, e: usize) -> Self {
        Self::edge(g, e).inverse()
    }

    pub fn inverse(&self) -> Self {
        match self {
            GisElement::Zero => GisElement::Zero,
            GisElement::Pair(x, y) => GisElement::Pair(y.clone(), x.clone()),
        }
    }

    pub fn label(&self, g: &DirectedGraph) -> String {
        match self {
            GisElement::Zero => "0".into(),
            GisElement::Pair(x, y) if x.is_trivial() => y.label(g),
            GisElement::Pair(x, y) if y.is_trivial() => format!("({})*", x.label(g)),
            GisElement::Pair(x, y) => format!("({})*{}", x.label(g), y.label(g)),
        }
    }
}

/// `(x, y)(u, v)`: `(x, y'v)` if `y = y'u`, `(u'x, v)` if `u = u'y`,
/// otherwise zero.
pub fn gis_multiply(g: &DirectedGraph, p: &GisElement, q: &GisElement) -> GisElement {
    let (GisElement::Pair(x, y), GisElement::Pair(u, v)) = (p, q) else {
        return GisElement::Zero;
    };
    if let Some(y1) = y.strip_suffix(g, u) {
        let yv = y1.concat(g, v).expect("composable by construction");
        return GisElement::Pair(x.clone(), yv);
    }
    if let Some(u1) = u.strip_suffix(g, y) {
        let ux = u1.concat(g, x).expect("composable by construction");
        return GisElement::Pair(ux, v.clone());
    }
    GisElement::Zero
}

/// `I(Γ)` with its elements.
#[derive(Clone, Debug)]
pub struct GraphInverseSemigroup {
    pub graph: DirectedGraph,
    pub semigroup: InverseSemigroup,
    pub elements: Vec<GisElement>,
    index: HashMap<GisElement, usize>,
}

impl GraphInverseSemigroup {
    pub fn index_of(&self, x: &GisElement) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.index[&GisElement::vertex(v)]
    }

    pub fn edge(&self, e: usize) -> usize {
        self.index[&GisElement::edge(&self.graph, e)]
    }

    pub fn star(&self, e: usize) -> usize {
        self.index[&GisElement::star(&self.graph, e)]
    }
}

pub fn graph_inverse_semigroup(g: &DirectedGraph) -> Result<GraphInverseSemigroup> {
    graph_inverse_semigroup_with(g, DEFAULT_ELEMENT_CAP)
}

/// Enumerates all `x*y` with common range plus zero and checks the result
/// is an inverse semigroup satisfying (G1)–(G3).
pub fn graph_inverse_semigroup_with(g: &DirectedGraph, cap: usize) -> Result<GraphInverseSemigroup> {
    let paths = g.paths()?;
    let mut by_range: Vec<Vec<&GraphPath>> = vec![Vec::new(); g.num_vertices()];
    for p in &paths {
        by_range[p.range].push(p);
    }
    let total: usize = 1 + by_range.iter().map(|v| v.len() * v.len()).sum::<usize>();
    if total > cap {
        return Err(Error::SizeBudgetExceeded { cap });
    }
    let mut elements = vec![GisElement::Zero];
    for ps in &by_range {
        for x in ps {
            for y in ps {
                elements.push(GisElement::Pair((*x).clone(), (*y).clone()));
            }
        }
    }
    elements[1..].sort_by(|a, b| match (a, b) {
        (GisElement::Pair(x, y), GisElement::Pair(u, v)) => (x.len() + y.len(), a).cmp(&(u.len() + v.len(), b)),
        _ => a.cmp(b),
    });
    let semigroup = InverseSemigroup::from_elements(
        &elements,
        |a, b| gis_multiply(g, a, b),
        GisElement::inverse,
        |a| a.label(g),
    )?;
    let report = semigroup.verify();
    if !report.is_valid() {
        return Err(violation("I(Γ) is an inverse semigroup", format!("{report:?}")));
    }
    let index = elements.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
    let gis = GraphInverseSemigroup {
        graph: g.clone(),
        semigroup,
        elements,
        index,
    };
    check_graph_relations(&gis)?;
    Ok(gis)
}

/// (G1) `v v' = δ v`, (G2) `e s(e) = r(e) e = e`, `s(e) e* = e* r(e) = e*`,
/// (G3) `e e'* = δ r(e)`, checked as equations in the table.
pub fn check_graph_relations(gis: &GraphInverseSemigroup) -> Result<()> {
    let g = &gis.graph;
    let s = &gis.semigroup;
    for v in 0..g.num_vertices() {
        for w in 0..g.num_vertices() {
            let expected = if v == w { gis.vertex(v) } else { ZERO };
            if s.mul(gis.vertex(v), gis.vertex(w)) != expected {
                return Err(violation("(G1)", format!("{} {}", g.vertices[v], g.vertices[w])));
            }
        }
    }
    for (e, edge) in g.edges.iter().enumerate() {
        let (x, xs) = (gis.edge(e), gis.star(e));
        let (src, rng) = (gis.vertex(edge.source), gis.vertex(edge.range));
        if s.mul(x, src) != x || s.mul(rng, x) != x || s.mul(src, xs) != xs || s.mul(xs, rng) != xs {
            return Err(violation("(G2)", edge.name.clone()));
        }
        for f in 0..g.num_edges() {
            let expected = if e == f { rng } else { ZERO };
            if s.mul(x, gis.star(f)) != expected {
                return Err(violation("(G3)", format!("{} {}*", edge.name, g.edges[f].name)));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Letter {
    Vertex(usize),
    Edge(usize),
    Star(usize),
}

/// Normal form of a word over `Γ₀ ∪ Γ₁ ∪ Γ₁*` under (G1)–(G3); `None` is
/// zero. A nonzero normal form is a single vertex or stars followed by
/// edges.
fn reduce_word(g: &DirectedGraph, word: &[Letter]) -> Option<Vec<Letter>> {
    // right end (source side) and left end (range side) of each letter
    let ends = |l: Letter| -> (usize, usize) {
        match l {
            Letter::Vertex(v) => (v, v),
            Letter::Edge(e) => (g.edges[e].range, g.edges[e].source),
            Letter::Star(e) => (g.edges[e].source, g.edges[e].range),
        }
    };
    let mut stack: Vec<Letter> = Vec::new();
    for &l in word {
        let mut cur = l;
        loop {
            let Some(&top) = stack.last() else {
                stack.push(cur);
                break;
            };
            if ends(top).1 != ends(cur).0 {
                // vertices do not match: (G1) with (G2)
                return None;
            }
            match (top, cur) {
                (_, Letter::Vertex(_)) => break,
                (Letter::Vertex(_), _) => {
                    stack.pop();
                    continue;
                }
                (Letter::Edge(e), Letter::Star(f)) => {
                    if e != f {
                        return None;
                    }
                    stack.pop();
                    cur = Letter::Vertex(g.edges[e].range);
                    if stack.is_empty() {
                        stack.push(cur);
                        break;
                    }
                    continue;
                }
                _ => {
                    stack.push(cur);
                    break;
                }
            }
        }
    }
    Some(stack)
}

fn word_to_element(g: &DirectedGraph, word: Option<Vec<Letter>>) -> GisElement {
    let Some(word) = word else { return GisElement::Zero };
    if let [Letter::Vertex(v)] = word.as_slice() {
        return GisElement::vertex(*v);
    }
    let stars: Vec<usize> = word
        .iter()
        .filter_map(|l| if let Letter::Star(e) = l { Some(*e) } else { None })
        .collect();
    let edges: Vec<usize> = word
        .iter()
        .filter_map(|l| if let Letter::Edge(e) = l { Some(*e) } else { None })
        .collect();
    // x* = e_n* ⋯ e_1* for x = e_1 ⋯ e_n
    let x_edges: Vec<usize> = stars.into_iter().rev().collect();
    let range = x_edges
        .first()
        .or(edges.first())
        .map(|&e| g.edges[e].range)
        .expect("nonempty normal form");
    GisElement::Pair(GraphPath { range, edges: x_edges }, GraphPath { range, edges })
}

/// Builds `I(Γ)` a second way, as the closure of the generators under
/// word concatenation and reduction by (G1)–(G3), and compares it with the
/// pair representation element by element and product by product.
pub fn cross_check_words(gis: &GraphInverseSemigroup) -> Result<usize> {
    let g = &gis.graph;
    let mut gens: Vec<Vec<Letter>> = (0..g.num_vertices()).map(|v| vec![Letter::Vertex(v)]).collect();
    gens.extend((0..g.num_edges()).map(|e| vec![Letter::Edge(e)]));
    gens.extend((0..g.num_edges()).map(|e| vec![Letter::Star(e)]));
    let mut seen: HashSet<Option<Vec<Letter>>> = HashSet::new();
    let mut queue: Vec<Option<Vec<Letter>>> = Vec::new();
    for w in &gens {
        let r = reduce_word(g, w);
        if seen.insert(r.clone()) {
            queue.push(r);
        }
    }
    let mut i = 0;
    while i < queue.len() {
        if let Some(w) = queue[i].clone() {
            for gen in &gens {
                let r = reduce_word(g, &[w.as_slice(), gen.as_slice()].concat());
                if seen.insert(r.clone()) {
                    if seen.len() > gis.elements.len() + 1 {
                        return Err(violation(
                            "word closure matches I(Γ)",
                            "closure is larger than the pair model",
                        ));
                    }
                    queue.push(r);
                }
            }
        }
        i += 1;
    }
    seen.insert(None);
    if seen.len() != gis.elements.len() {
        return Err(violation(
            "word closure matches I(Γ)",
            format!("{} normal forms, {} pairs", seen.len(), gis.elements.len()),
        ));
    }
    let words: Vec<Option<Vec<Letter>>> = seen.into_iter().collect();
    let elems: Vec<usize> = words
        .iter()
        .map(|w| {
            gis.index_of(&word_to_element(g, w.clone()))
                .ok_or_else(|| violation("normal forms are x*y", format!("{w:?}")))
        })
        .collect::<Result<_>>()?;
    for (a, wa) in words.iter().enumerate() {
        for (b, wb) in words.iter().enumerate() {
            let product = match (wa, wb) {
                (Some(x), Some(y)) => reduce_word(g, &[x.as_slice(), y.as_slice()].concat()),
                _ => None,
            };
            let expected = gis.semigroup.mul(elems[a], elems[b]);
            if gis.index_of(&word_to_element(g, product)) != Some(expected) {
                return Err(violation(
                    "word products match pair products",
                    format!("{wa:?} · {wb:?}"),
                ));
            }
        }
    }
    Ok(words.len())
}

/// `N(v, w)`: number of paths with source `v` and range `w`.
pub fn path_count_matrix(g: &DirectedGraph) -> Result<Vec<Vec<u64>>> {
    let order = g.require_acyclic()?;
    let n = g.num_vertices();
    let mut counts = vec![vec![0u64; n]; n];
    for &v in order.iter().rev() {
        counts[v][v] += 1;
        for e in g.emitted(v) {
            let r = g.edges[e].range;
            for w in 0..n {
                counts[v][w] += counts[r][w];
            }
        }
    }
    Ok(counts)
}

/// `M_Γ` with one generator per vertex and `a_v = Σ_{s(e)=v} a_{r(e)}`.
#[derive(Clone, Debug)]
pub struct GraphMonoid {
    pub presentation: MonoidPresentation,
    pub sinks: Vec<usize>,
    /// For acyclic graphs, `a_v ↦ (N(v, w))_w` over the sinks.
    pub normal_form: Option<Vec<NVec>>,
}

impl GraphMonoid {
    /// Sink coordinates of a vector over the vertices.
    pub fn reduce(&self, v: &[u32]) -> Option<NVec> {
        let nf = self.normal_form.as_ref()?;
        let mut out = vec![0; self.sinks.len()];
        for (i, &c) in v.iter().enumerate() {
            for (o, &x) in out.iter_mut().zip(&nf[i]) {
                *o += c * x;
            }
        }
        Some(out)
    }
}

/// Relations whose two sides coincide (a vertex whose only edge is a loop)
/// are dropped.
pub fn graph_monoid(g: &DirectedGraph) -> Result<GraphMonoid> {
    let n = g.num_vertices();
    let mut relations = Vec::new();
    for v in 0..n {
        let out = g.emitted(v);
        if out.is_empty() {
            continue;
        }
        let mut l = vec![0; n];
        l[v] = 1;
        let mut r = vec![0; n];
        for e in out {
            r[g.edges[e].range] += 1;
        }
        if l != r {
            relations.push((l, r));
        }
    }
    let labels = g.vertices.iter().map(|v| format!("a_{v}")).collect();
    let presentation = MonoidPresentation::new(labels, relations)?;
    let sinks = g.sinks();
    let normal_form = if g.is_acyclic() {
        let counts = path_count_matrix(g)?;
        let nf = (0..n)
            .map(|v| {
                sinks
                    .iter()
                    .map(|&w| u32::try_from(counts[v][w]).map_err(|_| Error::Invalid("path count overflow".into())))
                    .collect::<Result<NVec>>()
            })
            .collect::<Result<_>>()?;
        Some(nf)
    } else {
        None
    };
    Ok(GraphMonoid {
        presentation,
        sinks,
        normal_form,
    })
}

/// `B_tight(I(Γ))` as the local bisections of the disjoint union of pair
/// groupoids on `P_w`, with the canonical map from `I(Γ)`.
#[derive(Clone, Debug)]
pub struct TightBooleanization {
    pub gis: GraphInverseSemigroup,
    /// Objects of the groupoid: `(sink, path with range sink)`.
    pub objects: Vec<GraphPath>,
    pub groupoid: FiniteGroupoid,
    pub bisections: BisectionSemigroup,
    /// `I(Γ)` element ↦ bisection index.
    pub map: Vec<usize>,
}

impl TightBooleanization {
    pub fn bis(&self) -> &BooleanInverseSemigroup {
        &self.bisections.bis
    }

    /// Image of the vertex idempotent `v`.
    pub fn vertex_image(&self, v: usize) -> usize {
        self.map[self.gis.vertex(v)]
    }
}

pub fn tight_booleanization(g: &DirectedGraph) -> Result<TightBooleanization> {
    tight_booleanization_with(g, DEFAULT_ELEMENT_CAP)
}

pub fn tight_booleanization_with(g: &DirectedGraph, cap: usize) -> Result<TightBooleanization> {
    let gis = graph_inverse_semigroup_with(g, cap)?;
    let paths = g.paths()?;
    let sinks = g.sinks();
    let mut objects = Vec::new();
    let mut parts = Vec::new();
    for &w in &sinks {
        let pw: Vec<GraphPath> = paths.iter().filter(|p| p.range == w).cloned().collect();
        parts.push(FiniteGroupoid::pair(pw.iter().map(|p| p.label(g)).collect()));
        objects.extend(pw);
    }
    let refs: Vec<&FiniteGroupoid> = parts.iter().collect();
    let groupoid = FiniteGroupoid::disjoint_union(&refs);
    let bisections = local_bisection_semigroup(&groupoid, cap)?;
    let object_of: HashMap<&GraphPath, usize> = objects.iter().enumerate().map(|(i, p)| (p, i)).collect();
    // arrow from object q to object p
    let mut arrow_of: HashMap<(usize, usize), usize> = HashMap::new();
    for a in 0..groupoid.num_arrows() {
        arrow_of.insert((groupoid.ran(a), groupoid.dom(a)), a);
    }
    let boundary: Vec<&GraphPath> = paths.iter().filter(|p| g.is_sink(p.range)).collect();
    let mut map = Vec::with_capacity(gis.elements.len());
    for x in &gis.elements {
        let arrows: Vec<usize> = match x {
            GisElement::Zero => Vec::new(),
            GisElement::Pair(x, y) => boundary
                .iter()
                .filter(|z| z.source(g) == x.range)
                .map(|z| {
                    let zx = object_of[&z.concat(g, x).expect("composable")];
                    let zy = object_of[&z.concat(g, y).expect("composable")];
                    arrow_of[&(zx, zy)]
                })
                .collect(),
        };
        if arrows.is_empty() != matches!(x, GisElement::Zero) {
            return Err(violation("nonzero elements have nonempty images", x.label(g)));
        }
        let idx = bisections
            .index_of(&arrows)
            .ok_or_else(|| violation("images are local bisections", x.label(g)))?;
        map.push(idx);
    }
    let s = &gis.semigroup;
    let t = bisections.bis.base();
    for a in s.elements() {
        for b in s.elements() {
            if map[s.mul(a, b)] != t.mul(map[a], map[b]) {
                return Err(violation(
                    "canonical map is a homomorphism",
                    format!("{} · {}", s.label(a), s.label(b)),
                ));
            }
        }
    }
    // v = ⊕_{s(e)=v} e*e after the canonical map
    for v in 0..g.num_vertices() {
        let out = g.emitted(v);
        if out.is_empty() {
            continue;
        }
        let parts: Vec<usize> = out.iter().map(|&e| map[s.mul(gis.star(e), gis.edge(e))]).collect();
        let join = bisections.bis.join_all(&parts)?;
        if join != map[gis.vertex(v)] {
            return Err(violation("tight relation v = ⊕ e*e", g.vertices[v].clone()));
        }
    }
    Ok(TightBooleanization {
        gis,
        objects,
        groupoid,
        bisections,
        map,
    })
}

/// Outcome of [`verify_graph_theorem`].
#[derive(Clone, Debug)]
pub struct GraphTheoremReport {
    pub vertices: Vec<String>,
    pub sinks: Vec<usize>,
    pub typ: TypeMonoid,
    pub graph_monoid: GraphMonoid,
    /// `a_v ↦ (N(v, w))_w`, as certified on the `Typ` side.
    pub images: Vec<NVec>,
    pub tight_size: usize,
}

impl GraphTheoremReport {
    pub fn rank(&self) -> usize {
        self.sinks.len()
    }

    /// `ℕ₀²` and the like.
    pub fn monoid_name(&self) -> String {
        match self.rank() {
            0 => "0".into(),
            1 => "ℕ₀".into(),
            r => {
                let sup: String = r
                    .to_string()
                    .chars()
                    .map(|c| "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().nth(c.to_digit(10).unwrap() as usize).unwrap())
                    .collect();
                format!("ℕ₀{sup}")
            }
        }
    }

    pub fn render_vector(v: &[u32]) -> String {
        if v.len() == 1 {
            v[0].to_string()
        } else {
            format!("({})", v.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
        }
    }

    /// Vertices shown in the summary: the non-sinks, or the sinks when
    /// every vertex is one.
    pub fn shown_vertices(&self) -> Vec<usize> {
        let non_sinks: Vec<usize> = (0..self.vertices.len()).filter(|v| !self.sinks.contains(v)).collect();
        if non_sinks.is_empty() {
            self.sinks.clone()
        } else {
            non_sinks
        }
    }
}

impl fmt::Display for GraphTheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let maps: Vec<String> = self
            .shown_vertices()
            .iter()
            .map(|&v| format!("a_{} ↦ {}", self.vertices[v], Self::render_vector(&self.images[v])))
            .collect();
        if maps.is_empty() {
            write!(f, "theorem: VERIFIED ({})", self.monoid_name())
        } else {
            write!(f, "theorem: VERIFIED ({}, {})", self.monoid_name(), maps.join(", "))
        }
    }
}

/// Rewrites `vectors` in the coordinates of a free monoid whose basis is
/// given by the sink entries `vectors[w]`; `None` when those are not a
/// basis.
fn in_sink_basis(cert: &FreeCertificate, sinks: &[usize], vectors: &[NVec]) -> Option<Vec<NVec>> {
    if cert.rank() != sinks.len() {
        return None;
    }
    let mut perm = vec![usize::MAX; sinks.len()];
    for (i, &w) in sinks.iter().enumerate() {
        let c = cert.map(&vectors[w]);
        let p = c.iter().position(|&x| x == 1)?;
        if c.iter().sum::<u32>() != 1 || perm[p] != usize::MAX {
            return None;
        }
        perm[p] = i;
    }
    Some(
        vectors
            .iter()
            .map(|v| {
                let mut out = vec![0; sinks.len()];
                for (p, x) in cert.map(v).into_iter().enumerate() {
                    out[perm[p]] = x;
                }
                out
            })
            .collect(),
    )
}

/// Checks that `Typ(B_tight(I(Γ)))` and `M_Γ` are both free on the sinks
/// with `a_v ↦ Σ_w N(v, w)·[w]` on each side, that every `Int` class is a
/// sum of vertex classes and that relation (M) holds in `Int(B_tight)`.
pub fn verify_graph_theorem(g: &DirectedGraph, budget: WordBudget) -> Result<GraphTheoremReport> {
    let tb = tight_booleanization(g)?;
    let counts = path_count_matrix(g)?;
    let sinks = g.sinks();
    let n = g.num_vertices();
    // each idempotent D-class of I(Γ) contains a vertex
    let green = tb.gis.semigroup.green_data();
    for class in green.classes.iter().filter(|c| c[0] != ZERO) {
        let has_vertex = class.iter().any(|&e| (0..n).any(|v| tb.gis.vertex(v) == e));
        if !has_vertex {
            return Err(violation(
                "idempotent D-classes of I(Γ) contain a vertex",
                tb.gis.semigroup.label(class[0]).to_string(),
            ));
        }
    }
    let ty = typ(tb.bis())?;
    let int = &ty.int;
    let vclass: Vec<usize> = (0..n).map(|v| int.class_of_idempotent(tb.vertex_image(v))).collect();
    // Int(B) is generated under ⊕ by the vertex classes
    let mut reached: HashSet<usize> = HashSet::from([ZERO]);
    let mut frontier = vec![ZERO];
    while let Some(c) = frontier.pop() {
        for &v in &vclass {
            if let Some(d) = int.pcm.add(c, v) {
                if reached.insert(d) {
                    frontier.push(d);
                }
            }
        }
    }
    if reached.len() != int.pcm.size() {
        return Err(violation(
            "Int(B_tight) is generated by vertex classes",
            format!("{} of {} classes", reached.len(), int.pcm.size()),
        ));
    }
    // relation (M) in Int(B) and in Typ(B)
    for v in 0..n {
        let out = g.emitted(v);
        if out.is_empty() {
            continue;
        }
        let sum = out
            .iter()
            .try_fold(ZERO, |acc, &e| int.pcm.add(acc, vclass[g.edges[e].range]))
            .ok_or_else(|| violation("relation (M) sums are defined in Int", g.vertices[v].clone()))?;
        if sum != vclass[v] {
            return Err(violation("relation (M) holds in Int", g.vertices[v].clone()));
        }
        let lhs = ty.image(vclass[v]);
        let mut rhs = ty.presentation.zero();
        for &e in &out {
            for (r, x) in rhs.iter_mut().zip(ty.image(vclass[g.edges[e].range])) {
                *r += x;
            }
        }
        match decide_equal(&ty.presentation, &lhs, &rhs, budget)? {
            WordVerdict::Equal { .. } => {}
            WordVerdict::Distinct { .. } => return Err(violation("relation (M) holds in Typ", g.vertices[v].clone())),
            WordVerdict::Unknown { .. } => {
                return Err(Error::Inconclusive(format!("relation (M) at {}", g.vertices[v])))
            }
        }
    }
    // Typ side: free on the sink classes, a_v ↦ N(v, ·)
    let cert =
        certify_free(&ty.presentation).ok_or_else(|| violation("Typ(B_tight) is free", ty.presentation.to_string()))?;
    if cert.rank() != sinks.len() {
        return Err(violation(
            "Typ(B_tight) has rank #sinks",
            format!("rank {}", cert.rank()),
        ));
    }
    let typ_vectors: Vec<NVec> = (0..n).map(|v| ty.image(vclass[v])).collect();
    let images = in_sink_basis(&cert, &sinks, &typ_vectors)
        .ok_or_else(|| violation("sink classes form a basis of Typ", ty.presentation.to_string()))?;
    for v in 0..n {
        let expected: NVec = sinks.iter().map(|&w| counts[v][w] as u32).collect();
        if images[v] != expected {
            return Err(violation("[v] ↦ N(v, ·) in Typ", g.vertices[v].clone()));
        }
    }
    // graph monoid side
    let gm = graph_monoid(g)?;
    let gcert = certify_free(&gm.presentation).ok_or_else(|| violation("M_Γ is free", gm.presentation.to_string()))?;
    let units: Vec<NVec> = (0..n).map(|v| gm.presentation.unit(v)).collect();
    let gimages = in_sink_basis(&gcert, &sinks, &units)
        .ok_or_else(|| violation("M_Γ is free on the sinks", format!("basis {:?}", gcert.basis)))?;
    for v in 0..n {
        if gimages[v] != images[v] || gm.normal_form.as_ref().map(|nf| &nf[v]) != Some(&images[v]) {
            return Err(violation("a_v ↦ N(v, ·) in M_Γ", g.vertices[v].clone()));
        }
    }
    Ok(GraphTheoremReport {
        vertices: g.vertices.clone(),
        sinks,
        typ: ty,
        graph_monoid: gm,
        images,
        tight_size: tb.bisections.bis.size(),
    })
}

/// Small named graphs.
pub mod examples {
    use super::DirectedGraph;

    pub fn isolated() -> DirectedGraph {
        DirectedGraph::from_parts(&["v"], &[]).unwrap()
    }

    pub fn single_edge() -> DirectedGraph {
        DirectedGraph::from_parts(&["v", "w"], &[("e", "v", "w")]).unwrap()
    }

    pub fn fork() -> DirectedGraph {
        DirectedGraph::from_parts(&["v", "w1", "w2"], &[("e1", "v", "w1"), ("e2", "v", "w2")]).unwrap()
    }

    pub fn chain() -> DirectedGraph {
        DirectedGraph::from_parts(&["v", "u", "w"], &[("e", "v", "u"), ("f", "u", "w")]).unwrap()
    }

    pub fn double_edge() -> DirectedGraph {
        DirectedGraph::from_parts(&["v", "w"], &[("e", "v", "w"), ("f", "v", "w")]).unwrap()
    }

    pub fn diamond() -> DirectedGraph {
        DirectedGraph::from_parts(
            &["a", "b", "c", "d"],
            &[("e", "a", "b"), ("f", "a", "c"), ("g", "b", "d"), ("h", "c", "d")],
        )
        .unwrap()
    }

    pub fn loop_with_exit() -> DirectedGraph {
        DirectedGraph::from_parts(&["v", "w"], &[("e", "v", "v"), ("f", "v", "w")]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;
    use crate::morphism::find_isomorphism;
    use crate::pperm::symmetric_inverse_semigroup;

    #[test]
    fn gis_products() {
        let g = single_edge();
        let (v, w, e) = (0, 1, 0);
        let vv = GisElement::vertex(v);
        assert_eq!(gis_multiply(&g, &vv, &vv), vv);
        assert_eq!(gis_multiply(&g, &vv, &GisElement::vertex(w)), GisElement::Zero);
        let edge = GisElement::edge(&g, e);
        let star = GisElement::star(&g, e);
        assert_eq!(gis_multiply(&g, &edge, &star), GisElement::vertex(w));
        let ee = GisElement::Pair(GraphPath::edge(&g, e), GraphPath::edge(&g, e));
        assert_eq!(gis_multiply(&g, &ee, &vv), ee);
        assert_eq!(gis_multiply(&g, &star, &edge), ee);
    }

    #[test]
    fn gis_sizes() {
        assert_eq!(graph_inverse_semigroup(&isolated()).unwrap().semigroup.size(), 2);
        assert_eq!(graph_inverse_semigroup(&single_edge()).unwrap().semigroup.size(), 6);
        assert_eq!(graph_inverse_semigroup(&fork()).unwrap().semigroup.size(), 10);
        assert!(matches!(
            graph_inverse_semigroup(&loop_with_exit()),
            Err(Error::GraphHasCycle(_))
        ));
    }

    #[test]
    fn words_agree_with_pairs() {
        for g in [isolated(), single_edge(), fork(), chain(), double_edge(), diamond()] {
            let gis = graph_inverse_semigroup(&g).unwrap();
            assert_eq!(cross_check_words(&gis).unwrap(), gis.semigroup.size());
        }
    }

    #[test]
    fn path_counts() {
        let n = path_count_matrix(&fork()).unwrap();
        assert_eq!((n[0][1], n[0][2], n[1][1], n[2][2]), (1, 1, 1, 1));
        let n = path_count_matrix(&chain()).unwrap();
        assert_eq!((n[0][2], n[0][1]), (1, 1));
        assert_eq!(path_count_matrix(&double_edge()).unwrap()[0][1], 2);
        assert_eq!(path_count_matrix(&diamond()).unwrap()[0][3], 2);
        assert!(path_count_matrix(&loop_with_exit()).is_err());
    }

    #[test]
    fn graph_monoids() {
        let m = graph_monoid(&fork()).unwrap();
        assert_eq!(m.presentation.relations(), &[(vec![1, 0, 0], vec![0, 1, 1])]);
        assert_eq!(m.normal_form.as_ref().unwrap()[0], vec![1, 1]);

        let looped = DirectedGraph::from_parts(&["v"], &[("e", "v", "v")]).unwrap();
        let m = graph_monoid(&looped).unwrap();
        assert!(m.presentation.relations().is_empty());

        let m = graph_monoid(&loop_with_exit()).unwrap();
        let verdict = decide_equal(&m.presentation, &[1, 0], &[1, 3], WordBudget::default()).unwrap();
        assert!(verdict.is_equal());
    }

    #[test]
    fn tight_booleanizations() {
        let tb = tight_booleanization(&isolated()).unwrap();
        assert_eq!(tb.bis().size(), 2);
        let tb = tight_booleanization(&single_edge()).unwrap();
        assert!(find_isomorphism(tb.bis().base(), &symmetric_inverse_semigroup(2)).is_some());
        let tb = tight_booleanization(&fork()).unwrap();
        assert_eq!(tb.bis().size(), 49);
        assert_eq!(tb.groupoid.components().len(), 2);
    }

    #[test]
    fn graph_theorem_examples() {
        let r = verify_graph_theorem(&fork(), WordBudget::default()).unwrap();
        assert_eq!(r.to_string(), "theorem: VERIFIED (ℕ₀², a_v ↦ (1,1))");
        let r = verify_graph_theorem(&single_edge(), WordBudget::default()).unwrap();
        assert_eq!(r.images, vec![vec![1], vec![1]]);
        assert_eq!(r.monoid_name(), "ℕ₀");
        let r = verify_graph_theorem(&isolated(), WordBudget::default()).unwrap();
        assert_eq!(r.to_string(), "theorem: VERIFIED (ℕ₀, a_v ↦ 1)");
        let r = verify_graph_theorem(&double_edge(), WordBudget::default()).unwrap();
        assert_eq!(r.images[0], vec![2]);
    }

    #[test]
    fn dot_and_display() {
        let g = fork();
        assert_eq!(
            g.to_string(),
            "vertex v\nvertex w1\nvertex w2\nedge e1: v -> w1\nedge e2: v -> w2\n"
        );
        let tb = tight_booleanization(&g).unwrap();
        let dot = tb.groupoid.to_dot("boundary");
        assert_eq!(dot.matches("subgraph").count(), 2);
    }
}
