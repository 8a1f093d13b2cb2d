//! Simple undirected graphs on vertices `1..=n`, the graph families used
//! throughout the crate, and the combinatorics the ideal theory needs:
//! components after deleting vertices, cut-sets, maximal cliques, free
//! vertices and induced subgraphs.
//!
//! Adjacency is stored as one `u64` bitset per vertex, so `n <= 64`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard limit imposed by the bitset representation.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices, bit `v - 1` for vertex `v`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << (v - 1))
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=64).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << (v - 1);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << (v - 1));
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << (v - 1))
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << (v - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest vertex, if any.
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Labeled simple undirected graph on `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Result<Self> {
        Self::with_cap(n, &[], MAX_VERTICES)
    }

    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::with_cap(n, edges, MAX_VERTICES)
    }

    /// Builds a graph, rejecting loops, duplicate edges, out-of-range
    /// endpoints and vertex counts above `cap` (itself at most 64).
    pub fn with_cap(n: usize, edges: &[(usize, usize)], cap: usize) -> Result<Self> {
        let cap = cap.min(MAX_VERTICES);
        if n == 0 {
            return Err(Error::invalid("graph needs at least one vertex"));
        }
        if n > cap {
            return Err(Error::invalid(format!("n = {n} exceeds the vertex cap {cap}")));
        }
        let mut adj = vec![0u64; n];
        for &(a, b) in edges {
            if a == b {
                return Err(Error::invalid(format!("loop at vertex {a}")));
            }
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::invalid(format!("edge ({a},{b}) has an endpoint outside 1..={n}")));
            }
            if adj[a - 1] >> (b - 1) & 1 == 1 {
                return Err(Error::invalid(format!("duplicate edge ({a},{b})")));
            }
            adj[a - 1] |= 1u64 << (b - 1);
            adj[b - 1] |= 1u64 << (a - 1);
        }
        Ok(Graph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v - 1])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && a >= 1 && a <= self.n && b >= 1 && b <= self.n && self.adj[a - 1] >> (b - 1) & 1 == 1
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in self.neighbors(i).iter() {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Number of triangles (3-cliques).
    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        for (i, j) in self.edges() {
            let common = self.neighbors(i).intersection(self.neighbors(j));
            count += common.iter().filter(|&k| k > j).count();
        }
        count
    }

    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter().all(|v| set.without(v).is_subset(self.neighbors(v)))
    }

    /// Component of `start` inside `allowed`.
    pub(crate) fn component_of(&self, start: usize, allowed: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.neighbors(v));
            }
            frontier = next.intersection(allowed).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Connected components of `G` with `removed` deleted, ordered by minimum vertex.
    pub fn connected_components(&self, removed: VertexSet) -> Vec<VertexSet> {
        let mut rest = self.vertices().difference(removed);
        let mut out = Vec::new();
        while let Some(v) = rest.min() {
            let comp = self.component_of(v, rest);
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    /// `c(T)`: number of components after deleting `removed`.
    pub fn component_count(&self, removed: VertexSet) -> usize {
        self.connected_components(removed).len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count(VertexSet::EMPTY) == 1
    }

    /// `T` is empty, or deleting `T` minus any single element leaves strictly
    /// fewer components than deleting `T`.
    pub fn is_cut_set(&self, t: VertexSet) -> bool {
        if t.is_empty() {
            return true;
        }
        let c = self.component_count(t);
        t.iter().all(|i| self.component_count(t.without(i)) < c)
    }

    /// All maximal cliques (Bron–Kerbosch with pivoting), each as a sorted
    /// vertex list, the list sorted lexicographically.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.bron_kerbosch(VertexSet::EMPTY, self.vertices(), VertexSet::EMPTY, &mut out);
        let mut cliques: Vec<Vec<usize>> = out.into_iter().map(VertexSet::to_vec).collect();
        cliques.sort();
        cliques
    }

    fn bron_kerbosch(&self, r: VertexSet, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<VertexSet>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r);
            }
            return;
        }
        // pivot with the most neighbours in P
        let pivot = p
            .union(x)
            .iter()
            .max_by_key(|&u| self.neighbors(u).intersection(p).len())
            .expect("P is nonempty");
        for v in p.difference(self.neighbors(pivot)).iter() {
            let nv = self.neighbors(v);
            self.bron_kerbosch(r.with(v), p.intersection(nv), x.intersection(nv), out);
            p.remove(v);
            x.insert(v);
        }
    }

    /// Vertices lying in exactly one maximal clique.
    pub fn free_vertices(&self) -> VertexSet {
        let cliques = self.maximal_cliques();
        let mut free = VertexSet::EMPTY;
        for v in 1..=self.n {
            if cliques.iter().filter(|c| c.contains(&v)).count() == 1 {
                free.insert(v);
            }
        }
        free
    }

    /// Vertices whose neighbourhood is a clique. Equal to [`Graph::free_vertices`].
    pub fn simplicial_vertices(&self) -> VertexSet {
        (1..=self.n).filter(|&v| self.is_clique(self.neighbors(v))).collect()
    }

    /// Induced subgraph on `w`, relabeled `1..=|w|` in increasing order.
    pub fn induced_subgraph(&self, w: VertexSet) -> Result<Graph> {
        if w.is_empty() {
            return Err(Error::invalid("induced subgraph on the empty vertex set"));
        }
        if !w.is_subset(self.vertices()) {
            return Err(Error::invalid(format!("vertex set {w} is not contained in 1..={}", self.n)));
        }
        let verts = w.to_vec();
        let mut edges = Vec::new();
        for (a, &u) in verts.iter().enumerate() {
            for (b, &v) in verts.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    edges.push((a + 1, b + 1));
                }
            }
        }
        Graph::new(verts.len(), &edges)
    }

    /// Adds vertex `n + 1` joined to `v`.
    pub fn attach_pendant(&self, v: usize) -> Result<Graph> {
        if v == 0 || v > self.n {
            return Err(Error::invalid(format!("vertex {v} outside 1..={}", self.n)));
        }
        let mut edges = self.edges();
        edges.push((v, self.n + 1));
        Graph::new(self.n + 1, &edges)
    }

    pub fn to_json(&self) -> GraphFile {
        GraphFile {
            n: self.n,
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Graph> {
        let file: GraphFile = serde_json::from_str(s).map_err(|e| Error::invalid(format!("graph JSON: {e}")))?;
        file.to_graph()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// On-disk graph: `{"n": 4, "edges": [[1,2],[2,3]]}` with 1-based vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphFile {
    pub fn to_graph(&self) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(self.n, &edges)
    }
}

/// The graph families with closed-form invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FamilySpec {
    Line { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    T3 { r: usize, s: usize, t: usize },
    G3 { r: usize, s: usize, t: usize },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::invalid(msg));
        match *self {
            FamilySpec::Line { n } | FamilySpec::Complete { n } if n < 1 => fail(format!("{} requires n >= 1", self.kind())),
            FamilySpec::Cycle { n } if n < 3 => fail(format!("cycle requires n >= 3, got n = {n}")),
            FamilySpec::T3 { r, .. } if r < 2 => fail(format!("t3 requires r >= 2, got r = {r}")),
            FamilySpec::T3 { s, .. } | FamilySpec::G3 { s, .. } if s < 1 => {
                fail(format!("{} requires s >= 1, got s = {s}", self.kind()))
            }
            FamilySpec::T3 { t, .. } | FamilySpec::G3 { t, .. } if t < 1 => {
                fail(format!("{} requires t >= 1, got t = {t}", self.kind()))
            }
            FamilySpec::G3 { r, .. } if r < 1 => fail(format!("g3 requires r >= 1, got r = {r}")),
            _ if self.n() > MAX_VERTICES => fail(format!("n = {} exceeds the vertex cap {MAX_VERTICES}", self.n())),
            _ => Ok(()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::Line { .. } => "line",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::T3 { .. } => "t3",
            FamilySpec::G3 { .. } => "g3",
        }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        match *self {
            FamilySpec::Line { n } | FamilySpec::Cycle { n } | FamilySpec::Complete { n } => n,
            FamilySpec::T3 { r, s, t } | FamilySpec::G3 { r, s, t } => r + s + t,
        }
    }

    /// Builds the member graph. For `t3`/`g3` the vertices `u_1..u_r`,
    /// `v_1..v_s`, `w_1..w_t` are numbered `1..=n` in that order.
    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        let n = self.n();
        let mut edges = Vec::new();
        match *self {
            FamilySpec::Line { n } => edges.extend((1..n).map(|i| (i, i + 1))),
            FamilySpec::Cycle { n } => {
                edges.extend((1..n).map(|i| (i, i + 1)));
                edges.push((1, n));
            }
            FamilySpec::Complete { n } => {
                for i in 1..=n {
                    edges.extend((i + 1..=n).map(|j| (i, j)));
                }
            }
            FamilySpec::T3 { r, s, t } | FamilySpec::G3 { r, s, t } => {
                let (u1, v1, w1) = (1, r + 1, r + s + 1);
                edges.extend((1..r).map(|i| (i, i + 1)));
                edges.extend((v1..v1 + s - 1).map(|i| (i, i + 1)));
                edges.extend((w1..w1 + t - 1).map(|i| (i, i + 1)));
                edges.push((u1, v1));
                edges.push((u1, w1));
                if matches!(self, FamilySpec::G3 { .. }) {
                    edges.push((v1, w1));
                }
            }
        }
        Graph::new(n, &edges)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Line { n } => write!(f, "line({n})"),
            FamilySpec::Cycle { n } => write!(f, "cycle({n})"),
            FamilySpec::Complete { n } => write!(f, "complete({n})"),
            FamilySpec::T3 { r, s, t } => write!(f, "T3({r},{s},{t})"),
            FamilySpec::G3 { r, s, t } => write!(f, "G3({r},{s},{t})"),
        }
    }
}

/// All `(r, s, t)` members of T3 (resp. G3) with exactly `n` vertices.
pub fn family_members(kind: &str, n: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    let r_min = if kind == "t3" { 2 } else { 1 };
    for r in r_min..=n {
        for s in 1..=n {
            if r + s >= n {
                break;
            }
            let t = n - r - s;
            out.push(match kind {
                "t3" => FamilySpec::T3 { r, s, t },
                _ => FamilySpec::G3 { r, s, t },
            });
        }
    }
    out
}
