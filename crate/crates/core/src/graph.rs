//! Multidimensional circulant (MDC) graphs and their bordered extensions.
//!
//! An MDC graph lives on the abelian group `Z_{n1} x ... x Z_{nk}`: vertices
//! `a` and `b` are adjacent iff `a - b` lies in the connection set `S`, where
//! `S = -S` and `0` is not in `S`. Vertices are numbered in mixed radix with
//! the first modulus as the most significant digit, which makes the
//! adjacency matrix nested block circulant.
//!
//! The bordered graph appends one vertex adjacent to every base vertex; it
//! always takes the last index.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;

pub type GroupElement = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid group shape {0:?}: moduli must be >= 2 (or the trivial shape [1])")]
    InvalidShape(Vec<usize>),
    #[error("invalid connection set: {}", format_violations(.0))]
    InvalidSpec(Vec<Violation>),
    #[error("element {element:?} is not in group {moduli:?}")]
    ElementOutOfRange { element: Vec<usize>, moduli: Vec<usize> },
    #[error("vertex index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("graph of order {found} does not match group of order {expected}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("adjacency matrix is not a simple undirected graph: {0}")]
    BadAdjacency(String),
    #[error("malformed spec JSON: {0}")]
    Json(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// One reason a connection set is invalid for its shape.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("WrongArity: {tuple:?} should have {expected} coordinates")]
    WrongArity { tuple: Vec<i64>, expected: usize },
    #[error("OutOfRange: {tuple:?} coordinate {coordinate}")]
    OutOfRange { tuple: Vec<i64>, coordinate: usize },
    #[error("ContainsZero: the identity element is in S")]
    ContainsZero,
    #[error("NotSymmetric: {tuple:?} present but its negation {missing:?} missing")]
    NotSymmetric { tuple: Vec<usize>, missing: Vec<usize> },
    #[error("Duplicate: {tuple:?} listed more than once")]
    Duplicate { tuple: Vec<i64> },
}

/// Moduli `(n1, ..., nk)` of the vertex group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupShape {
    moduli: Vec<usize>,
}

impl fmt::Debug for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.moduli)
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl GroupShape {
    /// Every modulus must be at least 2. The single-modulus shape `[1]` is
    /// also accepted as the trivial group, which carries the one-vertex graph.
    pub fn new(moduli: Vec<usize>) -> Result<Self, GraphError> {
        let trivial = moduli == [1];
        if moduli.is_empty() || (!trivial && moduli.iter().any(|&m| m < 2)) {
            return Err(GraphError::InvalidShape(moduli));
        }
        Ok(GroupShape { moduli })
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product()
    }

    pub fn contains(&self, a: &[usize]) -> bool {
        a.len() == self.rank() && a.iter().zip(&self.moduli).all(|(&x, &m)| x < m)
    }

    /// Mixed-radix index of `a`, first coordinate most significant.
    pub fn vertex_index(&self, a: &[usize]) -> Result<usize, GraphError> {
        if !self.contains(a) {
            return Err(GraphError::ElementOutOfRange { element: a.to_vec(), moduli: self.moduli.clone() });
        }
        Ok(self.index_unchecked(a))
    }

    pub(crate) fn index_unchecked(&self, a: &[usize]) -> usize {
        a.iter().zip(&self.moduli).fold(0, |acc, (&x, &m)| acc * m + x)
    }

    pub fn index_vertex(&self, i: usize) -> Result<GroupElement, GraphError> {
        let order = self.order();
        if i >= order {
            return Err(GraphError::IndexOutOfRange { index: i, order });
        }
        Ok(self.element_unchecked(i))
    }

    pub(crate) fn element_unchecked(&self, mut i: usize) -> GroupElement {
        let mut out = vec![0; self.rank()];
        for (slot, &m) in out.iter_mut().zip(&self.moduli).rev() {
            *slot = i % m;
            i /= m;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.element_unchecked(i))
    }

    pub fn zero(&self) -> GroupElement {
        vec![0; self.rank()]
    }

    pub fn neg(&self, a: &[usize]) -> GroupElement {
        a.iter().zip(&self.moduli).map(|(&x, &m)| (m - x) % m).collect()
    }

    pub fn add(&self, a: &[usize], b: &[usize]) -> GroupElement {
        a.iter().zip(b).zip(&self.moduli).map(|((&x, &y), &m)| (x + y) % m).collect()
    }

    pub fn sub(&self, a: &[usize], b: &[usize]) -> GroupElement {
        a.iter().zip(b).zip(&self.moduli).map(|((&x, &y), &m)| (x + m - y) % m).collect()
    }

    /// Index table of `i + j` for vertex indices.
    pub(crate) fn addition_table(&self) -> Vec<Vec<usize>> {
        let elems: Vec<_> = self.elements().collect();
        elems.iter().map(|a| elems.iter().map(|b| self.index_unchecked(&self.add(a, b))).collect()).collect()
    }
}

/// Group shape, connection set and border flag: the object the search explores.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MdcSpec {
    shape: GroupShape,
    raw: Vec<Vec<i64>>,
    bordered: bool,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    #[serde(rename = "N")]
    n: Vec<usize>,
    #[serde(rename = "S")]
    s: Vec<Vec<i64>>,
    #[serde(default)]
    bordered: bool,
}

impl MdcSpec {
    /// Builds a spec without validating the connection set. The connection
    /// list is kept as given apart from sorting.
    pub fn new(shape: GroupShape, connections: Vec<Vec<i64>>, bordered: bool) -> Self {
        let mut raw = connections;
        raw.sort();
        MdcSpec { shape, raw, bordered }
    }

    pub fn from_elements(shape: GroupShape, connections: &[GroupElement], bordered: bool) -> Self {
        let raw = connections.iter().map(|t| t.iter().map(|&x| x as i64).collect()).collect();
        MdcSpec::new(shape, raw, bordered)
    }

    pub fn shape(&self) -> &GroupShape {
        &self.shape
    }

    pub fn bordered(&self) -> bool {
        self.bordered
    }

    pub fn with_bordered(mut self, bordered: bool) -> Self {
        self.bordered = bordered;
        self
    }

    pub fn raw_connections(&self) -> &[Vec<i64>] {
        &self.raw
    }

    /// The connection set as group elements. Only meaningful once validated.
    pub fn connections(&self) -> Vec<GroupElement> {
        self.raw.iter().map(|t| t.iter().map(|&x| x as usize).collect()).collect()
    }

    pub fn valency(&self) -> usize {
        self.raw.len()
    }

    /// Code length: group order, plus one when bordered.
    pub fn length(&self) -> usize {
        self.shape.order() + usize::from(self.bordered)
    }

    /// Checks range, `0 not in S` and `S = -S`, reporting every violation.
    pub fn validate(&self) -> Result<(), GraphError> {
        let mut violations = Vec::new();
        let k = self.shape.rank();
        let mut seen = BTreeSet::new();
        let mut members = BTreeSet::new();
        for t in &self.raw {
            if t.len() != k {
                violations.push(Violation::WrongArity { tuple: t.clone(), expected: k });
                continue;
            }
            if let Some(coordinate) = t.iter().zip(self.shape.moduli()).position(|(&x, &m)| x < 0 || x as usize >= m) {
                violations.push(Violation::OutOfRange { tuple: t.clone(), coordinate });
                continue;
            }
            if !seen.insert(t.clone()) {
                violations.push(Violation::Duplicate { tuple: t.clone() });
                continue;
            }
            members.insert(t.iter().map(|&x| x as usize).collect::<Vec<_>>());
        }
        if members.contains(&self.shape.zero()) {
            violations.push(Violation::ContainsZero);
        }
        for a in &members {
            let neg = self.shape.neg(a);
            if !members.contains(&neg) {
                violations.push(Violation::NotSymmetric { tuple: a.clone(), missing: neg });
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(GraphError::InvalidSpec(violations))
        }
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let raw: SpecJson = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        let shape = GroupShape::new(raw.n)?;
        Ok(MdcSpec::new(shape, raw.s, raw.bordered))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SpecJson { n: self.shape.moduli.clone(), s: self.raw.clone(), bordered: self.bordered })
            .expect("spec serializes")
    }

    pub(crate) fn json_parts(&self) -> (Vec<usize>, Vec<Vec<i64>>, bool) {
        (self.shape.moduli.clone(), self.raw.clone(), self.bordered)
    }
}

/// Simple undirected graph stored as adjacency bitsets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    adj: Vec<BitSet>,
    base_order: usize,
    bordered: bool,
}

impl Graph {
    /// Builds a graph from a square 0/1 matrix, which must be symmetric with zero diagonal.
    pub fn from_adjacency(matrix: &[Vec<u8>]) -> Result<Graph, GraphError> {
        let n = matrix.len();
        let mut adj = vec![BitSet::new(n); n];
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(GraphError::BadAdjacency(format!("row {i} has length {}", row.len())));
            }
            for (j, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 if i == j => return Err(GraphError::BadAdjacency(format!("loop at {i}"))),
                    1 => adj[i].insert(j),
                    _ => return Err(GraphError::BadAdjacency(format!("entry ({i},{j}) = {x}"))),
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                if adj[i].contains(j) != adj[j].contains(i) {
                    return Err(GraphError::BadAdjacency(format!("asymmetric at ({i},{j})")));
                }
            }
        }
        Ok(Graph { adj, base_order: n, bordered: false })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of non-border vertices.
    pub fn base_order(&self) -> usize {
        self.base_order
    }

    pub fn is_bordered(&self) -> bool {
        self.bordered
    }

    /// Index of the border vertex, if present.
    pub fn border_vertex(&self) -> Option<usize> {
        self.bordered.then_some(self.base_order)
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> &BitSet {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::len).sum::<usize>() / 2
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.order();
        (0..n).map(|i| (0..n).map(|j| u8::from(self.has_edge(i, j))).collect()).collect()
    }
}

/// Builds the MDC graph of a spec, with the border vertex appended when requested.
pub fn build_graph(spec: &MdcSpec) -> Result<Graph, GraphError> {
    spec.validate()?;
    let shape = spec.shape();
    let n = shape.order();
    let order = spec.length();
    let conns = spec.connections();
    let mut adj = vec![BitSet::new(order); order];
    for (i, a) in shape.elements().enumerate() {
        for s in &conns {
            let b = shape.sub(&a, s);
            adj[i].insert(shape.index_unchecked(&b));
        }
    }
    if spec.bordered() {
        for row in adj.iter_mut().take(n) {
            row.insert(n);
        }
        let mut border = BitSet::new(order);
        for i in 0..n {
            border.insert(i);
        }
        adj[n] = border;
    }
    Ok(Graph { adj, base_order: n, bordered: spec.bordered() })
}

/// True iff the matrix is nested block circulant for the given moduli: it
/// splits into `n1 x n1` blocks with block `(I, J)` equal to block
/// `(0, J - I mod n1)`, and each first-row block is itself nested block
/// circulant for the remaining moduli.
pub fn is_nested_block_circulant(matrix: &[Vec<u8>], moduli: &[usize]) -> Result<bool, GraphError> {
    let n: usize = moduli.iter().product();
    if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
        return Err(GraphError::OrderMismatch { expected: n, found: matrix.len() });
    }
    Ok(nested_block(matrix, 0, 0, n, moduli))
}

fn nested_block(m: &[Vec<u8>], r0: usize, c0: usize, size: usize, moduli: &[usize]) -> bool {
    let Some((&n1, rest)) = moduli.split_first() else {
        return true;
    };
    let b = size / n1;
    for bi in 0..n1 {
        for bj in 0..n1 {
            let src = (bj + n1 - bi) % n1;
            for i in 0..b {
                for j in 0..b {
                    if m[r0 + bi * b + i][c0 + bj * b + j] != m[r0 + i][c0 + src * b + j] {
                        return false;
                    }
                }
            }
        }
    }
    (0..n1).all(|bj| nested_block(m, r0, c0 + bj * b, b, rest))
}

/// Theorem-style structural check on an unbordered graph built over `shape`.
pub fn nested_block_predicate(g: &Graph, shape: &GroupShape) -> Result<bool, GraphError> {
    if g.is_bordered() {
        return Err(GraphError::OrderMismatch { expected: shape.order(), found: g.order() });
    }
    is_nested_block_circulant(&g.adjacency_matrix(), shape.moduli())
}

/// Eccentricity of every vertex by BFS; `None` entries mark unreachable vertices.
fn bfs_distances(g: &Graph, root: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.order()];
    dist[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for v in g.neighbors(u).iter() {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Diameter by all-pairs BFS; `None` when the graph is disconnected.
pub fn diameter(g: &Graph) -> Option<usize> {
    let mut best = 0;
    for root in 0..g.order() {
        for d in bfs_distances(g, root) {
            best = best.max(d?);
        }
    }
    Some(best)
}

/// Length of the shortest cycle, or 0 for a forest.
pub fn girth(g: &Graph) -> usize {
    let n = g.order();
    let mut best = usize::MAX;
    for root in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for v in g.neighbors(u).iter() {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    best = best.min(dist[u] + dist[v] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        0
    } else {
        best
    }
}

/// Exact maximum clique by branch and bound with a greedy colouring bound.
pub fn max_clique(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut best = Vec::new();
    let mut current = Vec::new();
    expand_clique(g, &mut current, BitSet::full(n), &mut best);
    best
}

fn colour_sort(g: &Graph, candidates: &BitSet) -> Vec<(usize, usize)> {
    // (vertex, colour bound), non-decreasing colour
    let mut uncoloured = candidates.clone();
    let mut out = Vec::with_capacity(candidates.len());
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut avail = uncoloured.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            avail.difference_with(g.neighbors(v));
            uncoloured.remove(v);
            out.push((v, colour));
        }
    }
    out
}

fn expand_clique(g: &Graph, current: &mut Vec<usize>, mut candidates: BitSet, best: &mut Vec<usize>) {
    let coloured = colour_sort(g, &candidates);
    for &(v, colour) in coloured.iter().rev() {
        if current.len() + colour <= best.len() {
            return;
        }
        current.push(v);
        let next = candidates.intersection(g.neighbors(v));
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand_clique(g, current, next, best);
        }
        current.pop();
        candidates.remove(v);
    }
}

fn check_order(g: &Graph, shape: &GroupShape) -> Result<(), GraphError> {
    if g.base_order() != shape.order() {
        return Err(GraphError::OrderMismatch { expected: shape.order(), found: g.base_order() });
    }
    Ok(())
}

/// Whether the vertex permutation `perm` (on base vertices, border fixed) preserves adjacency.
fn preserves_adjacency(g: &Graph, perm: &[usize]) -> bool {
    let n = perm.len();
    let border = g.border_vertex();
    (0..n).all(|a| {
        border.is_none_or(|z| g.has_edge(a, z) == g.has_edge(perm[a], z))
            && (0..n).all(|b| g.has_edge(a, b) == g.has_edge(perm[a], perm[b]))
    })
}

/// Every translation `a -> a + c` is an automorphism. Bordered graphs are
/// checked with the border vertex held fixed.
pub fn translation_automorphisms_check(g: &Graph, spec: &MdcSpec) -> Result<bool, GraphError> {
    check_order(g, spec.shape())?;
    let table = spec.shape().addition_table();
    Ok(table.iter().all(|row| preserves_adjacency(g, row)))
}

/// The negation map `a -> -a` is an automorphism.
pub fn negation_automorphism_check(g: &Graph, spec: &MdcSpec) -> Result<bool, GraphError> {
    check_order(g, spec.shape())?;
    Ok(preserves_adjacency(g, &negation_permutation(spec.shape())))
}

fn negation_permutation(shape: &GroupShape) -> Vec<usize> {
    shape.elements().map(|a| shape.index_unchecked(&shape.neg(&a))).collect()
}

/// Order of the certified automorphism subgroup: translations, extended by
/// negation when negation is not the identity. A lower bound on `|Aut(G)|`.
pub fn certified_automorphism_order(g: &Graph, spec: &MdcSpec) -> Result<usize, GraphError> {
    let n = spec.shape().order();
    if !translation_automorphisms_check(g, spec)? {
        return Ok(1);
    }
    let neg = negation_permutation(spec.shape());
    let nontrivial = neg.iter().enumerate().any(|(i, &j)| i != j);
    if nontrivial && preserves_adjacency(g, &neg) {
        Ok(2 * n)
    } else {
        Ok(n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub order: usize,
    /// Common degree of base vertices in the unbordered graph, `|S|`.
    pub valency: usize,
    /// `None` when the graph is disconnected.
    pub diameter: Option<usize>,
    /// 0 when the graph has no cycle.
    pub girth: usize,
    pub clique: usize,
    pub known_aut_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub border_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bordered_base_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_clique: Option<usize>,
}

/// Table-style statistics of an MDC or bordered-MDC graph.
pub fn graph_stats(g: &Graph, spec: &MdcSpec) -> Result<GraphStats, GraphError> {
    check_order(g, spec.shape())?;
    let n = spec.shape().order();
    let (border_degree, bordered_base_degree, base_clique) = match g.border_vertex() {
        Some(z) => {
            let base = build_graph(&spec.clone().with_bordered(false))?;
            (Some(g.degree(z)), (n > 0).then(|| g.degree(0)), Some(max_clique(&base).len()))
        }
        None => (None, None, None),
    };
    Ok(GraphStats {
        order: g.order(),
        valency: (0..n).map(|i| g.degree(i) - usize::from(g.is_bordered())).max().unwrap_or(0),
        diameter: diameter(g),
        girth: girth(g),
        clique: max_clique(g).len(),
        known_aut_order: certified_automorphism_order(g, spec)?,
        border_degree,
        bordered_base_degree,
        base_clique,
    })
}
