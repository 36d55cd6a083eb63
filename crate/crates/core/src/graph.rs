//! Simple undirected graphs on dense vertex ids, vertex maps and partitions.
//!
//! A [`Graph`] is immutable once built. Edges are stored as sorted pairs
//! `(u, v)` with `u < v`, in lexicographic order, and the position of an edge
//! in that list is its canonical index. The CFI construction uses these
//! indices to name incident-edge subsets as bitmasks.

use std::collections::VecDeque;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

const NO_EDGE: u32 = u32::MAX;

#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    // edge index per ordered pair, NO_EDGE when absent
    matrix: Vec<u32>,
    // incident edge indices per vertex, ascending
    incident: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges are merged; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();

        let mut adj = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];
        let mut matrix = vec![NO_EDGE; n * n];
        for (i, &(u, v)) in list.iter().enumerate() {
            adj[u].push(v);
            adj[v].push(u);
            incident[u].push(i);
            incident[v].push(i);
            matrix[u * n + v] = i as u32;
            matrix[v * n + u] = i as u32;
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
            matrix,
            incident,
        })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph::new(n, std::iter::empty()).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is valid")
    }

    /// Cycle 0-1-...-(n-1)-0. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let edges = (0..n).map(|i| (i, (i + 1) % n));
        Graph::new(n, edges).expect("cycle is valid")
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|i| (i - 1, i));
        Graph::new(n, edges).expect("path is valid")
    }

    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star is valid")
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, edges).expect("Petersen graph is valid")
    }

    /// Erdős–Rényi graph: every pair becomes an edge with probability `p`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, edges).expect("random graph is valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order; the position is the edge index.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v] != NO_EDGE
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        match self.matrix[u * self.n + v] {
            NO_EDGE => None,
            i => Some(i as usize),
        }
    }

    /// Indices of edges incident to `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_labels().1 == 1
    }

    /// Component id for every vertex, plus the number of components.
    /// Components are numbered in order of their smallest vertex.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        Graph::new(vertices.len(), edges).expect("induced subgraph is valid")
    }

    /// Spanning subgraph keeping only the edges whose indices are listed.
    pub fn edge_subgraph(&self, edge_indices: &[usize]) -> Graph {
        Graph::new(self.n, edge_indices.iter().map(|&i| self.edges[i]))
            .expect("edge subgraph is valid")
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidMap(format!(
                "permutation has length {}, graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::InvalidMap("not a permutation".into()));
            }
            seen[p] = true;
        }
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Vertices reachable from `start` in the graph minus `blocked`.
    pub fn reachable_avoiding(&self, start: usize, blocked: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        if blocked[start] {
            return seen;
        }
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] && !blocked[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Shortest path between two vertices as a vertex list, if connected.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.n];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &w in &self.adj[v] {
                if prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if prev[to] == usize::MAX {
            return None;
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.edges.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Total function from the vertices of one graph to the vertices of another.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct VertexMap {
    image_size: usize,
    map: Vec<usize>,
}

impl VertexMap {
    pub fn new(map: Vec<usize>, image_size: usize) -> Result<Self> {
        if let Some(&bad) = map.iter().find(|&&x| x >= image_size) {
            return Err(Error::InvalidMap(format!(
                "image {bad} out of range for {image_size} vertices"
            )));
        }
        Ok(VertexMap { image_size, map })
    }

    pub fn identity(n: usize) -> Self {
        VertexMap {
            image_size: n,
            map: (0..n).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn domain_size(&self) -> usize {
        self.map.len()
    }

    pub fn image_size(&self) -> usize {
        self.image_size
    }

    pub fn is_identity(&self) -> bool {
        self.image_size == self.map.len() && self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.image_size];
        for &x in &self.map {
            hit[x] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &VertexMap) -> Result<VertexMap> {
        if other.domain_size() != self.image_size {
            return Err(Error::InvalidMap("composition size mismatch".into()));
        }
        VertexMap::new(
            self.map.iter().map(|&x| other.map[x]).collect(),
            other.image_size,
        )
    }

    pub fn inverse(&self) -> Option<VertexMap> {
        if self.image_size != self.map.len() {
            return None;
        }
        let mut inv = vec![usize::MAX; self.image_size];
        for (i, &x) in self.map.iter().enumerate() {
            if inv[x] != usize::MAX {
                return None;
            }
            inv[x] = i;
        }
        Some(VertexMap {
            image_size: self.map.len(),
            map: inv,
        })
    }

    /// Every edge of `from` lands on an edge of `to`.
    pub fn is_homomorphism(&self, from: &Graph, to: &Graph) -> bool {
        self.map.len() == from.n()
            && self.image_size == to.n()
            && from
                .edges()
                .iter()
                .all(|&(u, v)| to.has_edge(self.map[u], self.map[v]))
    }

    pub fn is_isomorphism(&self, from: &Graph, to: &Graph) -> bool {
        from.n() == to.n()
            && from.m() == to.m()
            && self.inverse().is_some()
            && self.is_homomorphism(from, to)
    }
}

/// Partition of `0..n` into disjoint nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("vertex {v} out of range")));
                }
                if seen[v] {
                    return Err(Error::InvalidPartition(format!("vertex {v} repeated")));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidPartition(format!("vertex {v} not covered")));
        }
        Ok(Partition { blocks })
    }

    /// Builds a partition from a block label per vertex (labels need not be dense).
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut order: Vec<usize> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            match order.iter().position(|&x| x == l) {
                Some(i) => blocks[i].push(v),
                None => {
                    order.push(l);
                    blocks.push(vec![v]);
                }
            }
        }
        Partition { blocks }
    }

    pub fn discrete(n: usize) -> Self {
        Partition {
            blocks: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block index of every vertex.
    pub fn labels(&self) -> Vec<usize> {
        let n = self.blocks.iter().map(Vec::len).sum();
        let mut labels = vec![0; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                labels[v] = i;
            }
        }
        labels
    }
}

/// Quotient `g / p`: one vertex per block, adjacent when some edge crosses.
/// A block containing an internal edge would need a loop and is reported.
pub fn quotient(g: &Graph, p: &Partition) -> Result<Graph> {
    let total: usize = p.blocks().iter().map(Vec::len).sum();
    if total != g.n() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {total} vertices, graph has {}",
            g.n()
        )));
    }
    let labels = p.labels();
    let mut edges = Vec::with_capacity(g.m());
    for &(u, v) in g.edges() {
        let (a, b) = (labels[u], labels[v]);
        if a == b {
            return Err(Error::LoopDetected(p.blocks()[a].clone()));
        }
        edges.push((a, b));
    }
    Graph::new(p.len(), edges)
}

/// Connected components with back-maps: `back[i]` is the original id of
/// component vertex `i`.
pub fn components(g: &Graph) -> Vec<(Graph, Vec<usize>)> {
    let (labels, count) = g.component_labels();
    let mut members = vec![Vec::new(); count];
    for (v, &c) in labels.iter().enumerate() {
        members[c].push(v);
    }
    members
        .into_iter()
        .map(|vs| (g.induced_subgraph(&vs), vs))
        .collect()
}

/// Disjoint union; summand `i` occupies ids `offsets[i]..offsets[i] + n_i`.
pub fn disjoint_union(gs: &[Graph]) -> (Graph, Vec<usize>) {
    let mut offsets = Vec::with_capacity(gs.len());
    let mut n = 0;
    let mut edges = Vec::new();
    for g in gs {
        offsets.push(n);
        edges.extend(g.edges().iter().map(|&(u, v)| (u + n, v + n)));
        n += g.n();
    }
    (
        Graph::new(n, edges).expect("disjoint union is valid"),
        offsets,
    )
}
