//! Labelled defining graphs.
//!
//! A [`DefiningGraph`] stores an ordered vertex list together with a symmetric
//! label `m(u, v) ∈ {2, 3, …} ∪ {∞}` for every pair of distinct vertices. A pair
//! without an edge line carries the label `∞`. Vertex declaration order is the
//! tie-breaking order for everything downstream (reduced words, factor order,
//! Coxeter elements).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Graphs are limited to 64 vertices so that vertex sets fit in one machine word.
pub const MAX_VERTICES: usize = 64;

/// Index of a vertex in declaration order.
pub type VertexId = usize;

/// An edge label `m_uv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn is_finite(self) -> bool {
        matches!(self, Label::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }

    /// Parses `inf`/`∞` or an integer. Range checks are left to the caller.
    pub fn parse(token: &str) -> Option<Label> {
        match token {
            "inf" | "INF" | "oo" | "∞" => Some(Label::Infinite),
            _ => token.parse::<u32>().ok().map(Label::Finite),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: expected `vertices:` header")]
    MissingHeader { line: usize },
    #[error("line {line}: duplicate vertex `{name}`")]
    DuplicateVertex { line: usize, name: String },
    #[error("line {line}: invalid vertex name `{name}`")]
    InvalidName { line: usize, name: String },
    #[error("line {line}: unknown vertex `{name}`")]
    UnknownVertex { line: usize, name: String },
    #[error("line {line}: self-loop on `{name}`")]
    SelfLoop { line: usize, name: String },
    #[error("line {line}: label `{label}` must be an integer >= 2 or `inf`")]
    BadLabel { line: usize, label: String },
    #[error("line {line}: edge {u}-{v} already declared with label {previous}")]
    ConflictingEdge {
        line: usize,
        u: String,
        v: String,
        previous: Label,
    },
    #[error("line {line}: malformed line `{text}`")]
    Malformed { line: usize, text: String },
    #[error("too many vertices ({0}, limit {MAX_VERTICES})")]
    TooManyVertices(usize),
    #[error("vertex set is not a subset of the graph's vertices")]
    NotASubset,
    #[error("unknown vertex `{0}`")]
    NoSuchVertex(String),
    #[error("m({0},{1}) is finite; no amalgamated splitting along this pair")]
    FiniteLabel(String, String),
}

/// A subset of a graph's vertices, iterated in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> VertexSet {
        assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: VertexId) -> VertexSet {
        VertexSet(1u64 << v)
    }

    pub fn from_bits(bits: u64) -> VertexSet {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: VertexId) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: VertexId) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: VertexId) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(mut self, v: VertexId) -> VertexSet {
        self.insert(v);
        self
    }

    pub fn without(mut self, v: VertexId) -> VertexSet {
        self.remove(v);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<VertexId> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = VertexId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

/// The defining graph Γ of an Artin group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DefiningGraph {
    names: Vec<String>,
    /// Row-major `n × n`; the diagonal is unused and holds `Infinite`.
    labels: Vec<Label>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    name != "inf" && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl DefiningGraph {
    /// A graph on the given vertices with every pair labelled `∞`.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<DefiningGraph, GraphError> {
        if names.len() > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(names.len()));
        }
        let mut seen = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            if !valid_name(name) {
                return Err(GraphError::InvalidName {
                    line: 0,
                    name: name.to_string(),
                });
            }
            if seen.iter().any(|s: &String| s == name) {
                return Err(GraphError::DuplicateVertex {
                    line: 0,
                    name: name.to_string(),
                });
            }
            seen.push(name.to_string());
        }
        let n = seen.len();
        Ok(DefiningGraph {
            names: seen,
            labels: vec![Label::Infinite; n * n],
        })
    }

    /// Builds a graph from `(u, v, m)` triples over vertex indices.
    pub fn from_edges<S: AsRef<str>>(
        names: &[S],
        edges: &[(VertexId, VertexId, Label)],
    ) -> Result<DefiningGraph, GraphError> {
        let mut g = DefiningGraph::new(names)?;
        for &(u, v, m) in edges {
            g.set_label(u, v, m)?;
        }
        Ok(g)
    }

    /// Sets `m(u, v) = m(v, u)`.
    pub fn set_label(&mut self, u: VertexId, v: VertexId, m: Label) -> Result<(), GraphError> {
        let n = self.len();
        if u >= n || v >= n {
            return Err(GraphError::NoSuchVertex(format!("#{}", u.max(v))));
        }
        if u == v {
            return Err(GraphError::SelfLoop {
                line: 0,
                name: self.names[u].clone(),
            });
        }
        if let Label::Finite(k) = m {
            if k < 2 {
                return Err(GraphError::BadLabel {
                    line: 0,
                    label: k.to_string(),
                });
            }
        }
        self.labels[u * n + v] = m;
        self.labels[v * n + u] = m;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|s| s == name)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    /// `m(u, v)`. Symmetric; the diagonal is reported as `∞` and never consulted.
    pub fn label(&self, u: VertexId, v: VertexId) -> Label {
        self.labels[u * self.len() + v]
    }

    /// All finite labels, one per unordered pair.
    pub fn finite_labels(&self) -> Vec<u32> {
        self.pairs().filter_map(|(_, _, m)| m.finite()).collect()
    }

    /// Unordered pairs `(u, v, m)` with `u < v`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId, Label)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v, self.label(u, v))))
    }

    /// Resolves a list of vertex names to a set.
    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet, GraphError> {
        names
            .iter()
            .map(|s| {
                self.index_of(s.as_ref())
                    .ok_or_else(|| GraphError::NoSuchVertex(s.as_ref().to_string()))
            })
            .collect()
    }

    pub fn set_names(&self, set: VertexSet) -> Vec<&str> {
        set.iter().map(|v| self.name(v)).collect()
    }

    /// Formats a vertex set as `{a, b}`.
    pub fn fmt_set(&self, set: VertexSet) -> String {
        format!("{{{}}}", self.set_names(set).join(", "))
    }

    /// Vertices adjacent (finite label) to every other vertex.
    pub fn cone_points(&self) -> VertexSet {
        let n = self.len();
        (0..n)
            .filter(|&v| (0..n).all(|u| u == v || self.label(u, v).is_finite()))
            .collect()
    }

    pub fn is_clique(&self) -> bool {
        self.pairs().all(|(_, _, m)| m.is_finite())
    }

    /// The subgraph induced on `set`, keeping declaration order.
    pub fn induced(&self, set: VertexSet) -> Result<DefiningGraph, GraphError> {
        if !set.is_subset(self.vertices()) {
            return Err(GraphError::NotASubset);
        }
        let keep: Vec<VertexId> = set.iter().collect();
        let n = keep.len();
        let mut labels = vec![Label::Infinite; n * n];
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate() {
                if i != j {
                    labels[i * n + j] = self.label(u, v);
                }
            }
        }
        Ok(DefiningGraph {
            names: keep.iter().map(|&v| self.names[v].clone()).collect(),
            labels,
        })
    }

    /// Vertex sets of the maximal 2-labelled join decomposition.
    ///
    /// These are the connected components of the relation `u ~ v ⇔ m(u,v) ≠ 2`,
    /// ordered by their smallest vertex.
    pub fn join_factor_sets(&self) -> Vec<VertexSet> {
        let n = self.len();
        let mut assigned = VertexSet::EMPTY;
        let mut factors = Vec::new();
        for start in 0..n {
            if assigned.contains(start) {
                continue;
            }
            let mut component = VertexSet::singleton(start);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for v in 0..n {
                    if v != u && !component.contains(v) && self.label(u, v) != Label::Finite(2) {
                        component.insert(v);
                        stack.push(v);
                    }
                }
            }
            assigned = assigned.union(component);
            factors.push(component);
        }
        factors
    }

    /// Classes of `within` under the relation generated by odd labels.
    ///
    /// Generators in one class are conjugate in `A_X`, so exponent sums over
    /// each class are the abelianization of `A_X`.
    pub fn odd_classes(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut assigned = VertexSet::EMPTY;
        let mut classes = Vec::new();
        for start in within.iter() {
            if assigned.contains(start) {
                continue;
            }
            let mut class = VertexSet::singleton(start);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for v in within.difference(class).iter() {
                    if matches!(self.label(u, v), Label::Finite(m) if m % 2 == 1) {
                        class.insert(v);
                        stack.push(v);
                    }
                }
            }
            assigned = assigned.union(class);
            classes.push(class);
        }
        classes
    }

    /// The irreducible factors as induced subgraphs.
    pub fn join_factors(&self) -> Vec<DefiningGraph> {
        self.join_factor_sets()
            .into_iter()
            .map(|set| self.induced(set).expect("factor is a subset"))
            .collect()
    }

    pub fn is_irreducible(&self) -> bool {
        self.join_factor_sets().len() <= 1
    }

    /// `(Γ−{x}, Γ−{x,y}, Γ−{y})` for a pair with `m(x,y) = ∞`, the pieces of
    /// `A_Γ = A_{Γ−x} *_{A_{Γ−{x,y}}} A_{Γ−y}`.
    pub fn amalgam_split(
        &self,
        x: VertexId,
        y: VertexId,
    ) -> Result<(DefiningGraph, DefiningGraph, DefiningGraph), GraphError> {
        let (a, b, c) = self.amalgam_split_sets(x, y)?;
        Ok((self.induced(a)?, self.induced(b)?, self.induced(c)?))
    }

    pub fn amalgam_split_sets(
        &self,
        x: VertexId,
        y: VertexId,
    ) -> Result<(VertexSet, VertexSet, VertexSet), GraphError> {
        let n = self.len();
        if x >= n || y >= n {
            return Err(GraphError::NoSuchVertex(format!("#{}", x.max(y))));
        }
        if x == y || self.label(x, y).is_finite() {
            return Err(GraphError::FiniteLabel(
                self.names[x].clone(),
                self.names[y].clone(),
            ));
        }
        let all = self.vertices();
        Ok((all.without(x), all.without(x).without(y), all.without(y)))
    }

    /// Parses the line-oriented graph format:
    ///
    /// ```text
    /// # comment
    /// vertices: a b c
    /// edge a b 3
    /// edge b c inf
    /// ```
    pub fn parse(text: &str) -> Result<DefiningGraph, GraphError> {
        let mut graph: Option<DefiningGraph> = None;
        let mut declared: BTreeMap<(VertexId, VertexId), Label> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some(g) = graph.as_mut() else {
                let rest = content
                    .strip_prefix("vertices:")
                    .ok_or(GraphError::MissingHeader { line })?;
                let mut names: Vec<String> = Vec::new();
                for name in rest.split_whitespace() {
                    if !valid_name(name) {
                        return Err(GraphError::InvalidName {
                            line,
                            name: name.to_string(),
                        });
                    }
                    if names.iter().any(|s| s == name) {
                        return Err(GraphError::DuplicateVertex {
                            line,
                            name: name.to_string(),
                        });
                    }
                    names.push(name.to_string());
                }
                graph = Some(DefiningGraph::new(&names)?);
                continue;
            };
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let [keyword, u, v, m] = tokens[..] else {
                return Err(GraphError::Malformed {
                    line,
                    text: content.to_string(),
                });
            };
            if keyword != "edge" {
                return Err(GraphError::Malformed {
                    line,
                    text: content.to_string(),
                });
            }
            let lookup = |name: &str| {
                g.index_of(name).ok_or_else(|| GraphError::UnknownVertex {
                    line,
                    name: name.to_string(),
                })
            };
            let (ui, vi) = (lookup(u)?, lookup(v)?);
            if ui == vi {
                return Err(GraphError::SelfLoop {
                    line,
                    name: u.to_string(),
                });
            }
            let label = match Label::parse(m) {
                Some(Label::Finite(k)) if k >= 2 => Label::Finite(k),
                Some(Label::Infinite) => Label::Infinite,
                _ => {
                    return Err(GraphError::BadLabel {
                        line,
                        label: m.to_string(),
                    })
                }
            };
            let key = (ui.min(vi), ui.max(vi));
            if let Some(&previous) = declared.get(&key) {
                if previous != label {
                    return Err(GraphError::ConflictingEdge {
                        line,
                        u: u.to_string(),
                        v: v.to_string(),
                        previous,
                    });
                }
            }
            declared.insert(key, label);
            g.set_label(ui, vi, label)?;
        }
        graph.ok_or(GraphError::MissingHeader {
            line: text.lines().count().max(1),
        })
    }

    /// Canonical text form: vertices in declaration order, finite edges in
    /// lexicographic index-pair order. `∞` pairs are omitted.
    pub fn serialize(&self) -> String {
        let mut out = String::from("vertices:");
        for name in &self.names {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        for (u, v, m) in self.pairs() {
            if m.is_finite() {
                out.push_str(&format!("edge {} {} {}\n", self.names[u], self.names[v], m));
            }
        }
        out
    }
}

impl std::str::FromStr for DefiningGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DefiningGraph::parse(s)
    }
}

impl fmt::Display for DefiningGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}
