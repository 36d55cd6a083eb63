//! Set-partition enumeration and minor testing.

use std::cell::Cell;

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::hom::find_injective_homomorphism;

/// Calls `visit` with the block label of every vertex for each set partition
/// of `0..n`, in restricted-growth order. `allow(labels, v, b)` decides whether
/// vertex `v` may join the existing block `b` given the labels of `0..v`.
pub fn for_each_partition<A, V>(n: usize, mut allow: A, mut visit: V)
where
    A: FnMut(&[usize], usize, usize) -> bool,
    V: FnMut(&[usize]),
{
    let mut labels = vec![0usize; n];
    fn rec<A, V>(v: usize, blocks: usize, labels: &mut [usize], allow: &mut A, visit: &mut V)
    where
        A: FnMut(&[usize], usize, usize) -> bool,
        V: FnMut(&[usize]),
    {
        if v == labels.len() {
            visit(labels);
            return;
        }
        for b in 0..=blocks {
            if b < blocks && !allow(&labels[..v], v, b) {
                continue;
            }
            labels[v] = b;
            rec(v + 1, blocks.max(b + 1), labels, allow, visit);
        }
    }
    rec(0, 0, &mut labels, &mut allow, &mut visit);
}

/// Partitions of `V(g)` into independent sets.
pub fn for_each_independent_partition<V: FnMut(&[usize])>(g: &Graph, visit: V) {
    for_each_partition(
        g.n(),
        |labels, v, b| g.neighbors(v).iter().all(|&w| w >= v || labels[w] != b),
        visit,
    );
}

/// Whether every block induces a connected subgraph.
pub fn blocks_connected(g: &Graph, labels: &[usize]) -> bool {
    let blocks = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut seen = vec![false; g.n()];
    let mut reached = 0;
    for b in 0..blocks {
        let Some(start) = labels.iter().position(|&l| l == b) else {
            continue;
        };
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            reached += 1;
            for &w in g.neighbors(v) {
                if !seen[w] && labels[w] == b {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    reached == g.n()
}

/// Partitions of `V(g)` into connected blocks, with the quotient of each.
pub fn connected_contractions(g: &Graph) -> Vec<(Partition, Graph)> {
    let mut out = Vec::new();
    for_each_partition(
        g.n(),
        |_, _, _| true,
        |labels| {
            if blocks_connected(g, labels) {
                let p = Partition::from_labels(labels);
                let q = contract(g, &p);
                out.push((p, q));
            }
        },
    );
    out
}

/// Quotient that drops edges inside blocks (edge contraction semantics).
pub fn contract(g: &Graph, p: &Partition) -> Graph {
    let labels = p.labels();
    let edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| labels[u] != labels[v])
        .map(|&(u, v)| (labels[u], labels[v]));
    Graph::new(p.len(), edges).expect("contraction is valid")
}

pub const MINOR_VERTEX_LIMIT: usize = 10;

/// `h` is a minor of `g`: `h` embeds as a subgraph into `g / B` for some
/// partition `B` of `V(g)` into connected blocks.
pub fn is_minor(h: &Graph, g: &Graph) -> Result<bool> {
    if g.n() > MINOR_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "minor test host",
            size: g.n() as u64,
            limit: MINOR_VERTEX_LIMIT as u64,
        });
    }
    if h.n() > g.n() || h.m() > g.m() {
        return Ok(false);
    }
    let found = Cell::new(false);
    for_each_partition(
        g.n(),
        |_, _, _| !found.get(),
        |labels| {
            if found.get() {
                return;
            }
            let blocks = labels.iter().copied().max().map_or(0, |m| m + 1);
            if blocks < h.n() || !blocks_connected(g, labels) {
                return;
            }
            let p = Partition::from_labels(labels);
            let q = contract(g, &p);
            if q.m() >= h.m() && find_injective_homomorphism(h, &q).is_some() {
                found.set(true);
            }
        },
    );
    Ok(found.get())
}

/// All minors of `g` up to isomorphism, including the empty graph.
pub fn minors(g: &Graph) -> Result<Vec<Graph>> {
    if g.n() > MINOR_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "minor enumeration host",
            size: g.n() as u64,
            limit: MINOR_VERTEX_LIMIT as u64,
        });
    }
    let mut out: Vec<Graph> = Vec::new();
    for (_, q) in connected_contractions(g) {
        for vmask in 0u32..(1 << q.n()) {
            let keep: Vec<usize> = (0..q.n()).filter(|&v| vmask >> v & 1 == 1).collect();
            let sub = q.induced_subgraph(&keep);
            for emask in 0u64..(1 << sub.m()) {
                let edges: Vec<usize> = (0..sub.m()).filter(|&e| emask >> e & 1 == 1).collect();
                let h = sub.edge_subgraph(&edges);
                if !out.iter().any(|o| crate::iso::are_isomorphic(o, &h)) {
                    out.push(h);
                }
            }
        }
    }
    out.sort_by_key(|h| (h.n(), h.m()));
    Ok(out)
}
