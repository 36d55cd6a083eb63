//! CFI graphs over a base graph with a twist set.
//!
//! A vertex `(v, S)` pairs a base vertex with a set `S` of edges incident to
//! it, where `|S|` is odd exactly when `v` is twisted. `S` is stored as a mask
//! whose bit `i` stands for the `i`-th incident edge of `v` in canonical edge
//! order. Two vertices `(v, S)` and `(u, T)` are adjacent iff `uv` is a base
//! edge and `S`, `T` agree on whether they contain it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMap};
use crate::iso::is_isomorphic;

/// Highest base degree accepted by [`cfi_build`].
pub const MAX_BASE_DEGREE: usize = 20;

/// CFI graph size accepted by [`cfi_parity_check`].
pub const PARITY_CHECK_VERTEX_LIMIT: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CfiVertex {
    pub base: usize,
    pub mask: u32,
}

#[derive(Clone, Debug)]
pub struct CfiGraph {
    pub graph: Graph,
    pub base: Graph,
    /// Sorted twist set.
    pub twist: Vec<usize>,
    /// Dense id to CFI vertex, sorted by `(base, mask)`.
    pub vertices: Vec<CfiVertex>,
    /// Dense ids of the gadget above every base vertex.
    pub gadgets: Vec<Vec<usize>>,
}

impl CfiGraph {
    pub fn id_of(&self, v: CfiVertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Whether the mask of `(v, S)` contains base edge `e`.
    pub fn mask_has_edge(&self, v: CfiVertex, edge: usize) -> bool {
        self.base
            .incident_edges(v.base)
            .iter()
            .position(|&e| e == edge)
            .is_some_and(|bit| v.mask & (1 << bit) != 0)
    }

    /// Bitmask over the incident edges of `v` for the given base edges.
    pub fn mask_of_edges(&self, v: usize, edges: &[usize]) -> u32 {
        self.base
            .incident_edges(v)
            .iter()
            .enumerate()
            .filter(|(_, e)| edges.contains(e))
            .fold(0, |m, (bit, _)| m | (1 << bit))
    }
}

/// `{"vertices": [[base, mask], ...], "gadgets": [[id, ...], ...], "twist": [...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GadgetMap {
    pub twist: Vec<usize>,
    pub vertices: Vec<CfiVertex>,
    pub gadgets: Vec<Vec<usize>>,
}

impl From<&CfiGraph> for GadgetMap {
    fn from(c: &CfiGraph) -> Self {
        GadgetMap {
            twist: c.twist.clone(),
            vertices: c.vertices.clone(),
            gadgets: c.gadgets.clone(),
        }
    }
}

pub fn cfi_build(base: &Graph, twist: &[usize]) -> Result<CfiGraph> {
    let mut twisted = vec![false; base.n()];
    for &u in twist {
        if u >= base.n() {
            return Err(Error::VertexOutOfRange {
                vertex: u,
                n: base.n(),
            });
        }
        twisted[u] = true;
    }
    for v in 0..base.n() {
        let d = base.degree(v);
        if d == 0 {
            return Err(Error::IsolatedVertex(v));
        }
        if d > MAX_BASE_DEGREE {
            return Err(Error::DegreeTooHigh {
                vertex: v,
                degree: d,
                limit: MAX_BASE_DEGREE,
            });
        }
    }

    let mut vertices = Vec::new();
    let mut gadgets = Vec::with_capacity(base.n());
    for v in 0..base.n() {
        let parity = twisted[v] as u32;
        let start = vertices.len();
        for mask in 0u32..(1 << base.degree(v)) {
            if mask.count_ones() % 2 == parity {
                vertices.push(CfiVertex { base: v, mask });
            }
        }
        gadgets.push((start..vertices.len()).collect::<Vec<_>>());
    }

    let mut edges = Vec::new();
    for (e, &(u, v)) in base.edges().iter().enumerate() {
        let bit_u = base.incident_edges(u).iter().position(|&x| x == e).unwrap();
        let bit_v = base.incident_edges(v).iter().position(|&x| x == e).unwrap();
        for &a in &gadgets[u] {
            let in_a = vertices[a].mask >> bit_u & 1;
            for &b in &gadgets[v] {
                if vertices[b].mask >> bit_v & 1 == in_a {
                    edges.push((a, b));
                }
            }
        }
    }
    let mut twist: Vec<usize> = twist.to_vec();
    twist.sort_unstable();
    twist.dedup();
    Ok(CfiGraph {
        graph: Graph::new(vertices.len(), edges)?,
        base: base.clone(),
        twist,
        vertices,
        gadgets,
    })
}

/// Untwisted and twisted CFI graphs, the twist placed on vertex 0.
pub fn cfi_pair(base: &Graph) -> Result<(CfiGraph, CfiGraph)> {
    if base.n() == 0 || !base.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok((cfi_build(base, &[])?, cfi_build(base, &[0])?))
}

/// Isomorphism between the graphs twisted at `u` and at `v`, toggling the
/// path edges in every gadget along the path.
#[derive(Clone, Debug)]
pub struct TwistIsomorphism {
    pub from: CfiGraph,
    pub to: CfiGraph,
    pub map: VertexMap,
    pub path_edges: Vec<usize>,
}

pub fn twist_isomorphism(
    base: &Graph,
    u: usize,
    v: usize,
    path: &[usize],
) -> Result<TwistIsomorphism> {
    let path_edges = validate_path(base, u, v, path)?;
    let from = cfi_build(base, &[u])?;
    let to = cfi_build(base, &[v])?;
    let masks: Vec<u32> = (0..base.n())
        .map(|w| from.mask_of_edges(w, &path_edges))
        .collect();
    let map = from
        .vertices
        .iter()
        .map(|x| {
            let image = CfiVertex {
                base: x.base,
                mask: x.mask ^ masks[x.base],
            };
            to.id_of(image).ok_or_else(|| {
                Error::Consistency(format!("twisted image {image:?} missing from target"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let map = VertexMap::new(map, to.graph.n())?;
    if !map.is_isomorphism(&from.graph, &to.graph) {
        return Err(Error::Consistency("twist map is not an isomorphism".into()));
    }
    Ok(TwistIsomorphism {
        from,
        to,
        map,
        path_edges,
    })
}

/// Edge indices of a simple `u`-`v` path.
fn validate_path(base: &Graph, u: usize, v: usize, path: &[usize]) -> Result<Vec<usize>> {
    let bad = |s: &str| Err(Error::InvalidPath(s.to_string()));
    if path.first() != Some(&u) || path.last() != Some(&v) {
        return bad("path must start at u and end at v");
    }
    if let Some(&x) = path.iter().find(|&&x| x >= base.n()) {
        return Err(Error::VertexOutOfRange {
            vertex: x,
            n: base.n(),
        });
    }
    let mut seen = vec![false; base.n()];
    for &x in path {
        if seen[x] {
            return bad("path repeats a vertex");
        }
        seen[x] = true;
    }
    path.windows(2)
        .map(|w| {
            base.edge_index(w[0], w[1])
                .ok_or_else(|| Error::InvalidPath(format!("no edge between {} and {}", w[0], w[1])))
        })
        .collect()
}

/// Isomorphism verdict for two twist sets over the same connected base.
pub fn cfi_parity_check(base: &Graph, twist_a: &[usize], twist_b: &[usize]) -> Result<bool> {
    if base.n() == 0 || !base.is_connected() {
        return Err(Error::Disconnected);
    }
    let a = cfi_build(base, twist_a)?;
    if a.graph.n() > PARITY_CHECK_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "CFI graph for isomorphism search",
            size: a.graph.n() as u64,
            limit: PARITY_CHECK_VERTEX_LIMIT as u64,
        });
    }
    let b = cfi_build(base, twist_b)?;
    Ok(is_isomorphic(&a.graph, &b.graph).is_some())
}
