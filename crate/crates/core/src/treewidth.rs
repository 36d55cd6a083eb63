//! Exact treewidth by dynamic programming over vertex subsets, with a
//! witnessing tree decomposition built from the optimal elimination order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph accepted by [`treewidth_exact`].
pub const TREEWIDTH_VERTEX_LIMIT: usize = 18;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub tree: Vec<[usize; 2]>,
    pub width: usize,
}

impl TreeDecomposition {
    /// Single bag holding every vertex.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition {
            bags: vec![(0..g.n()).collect()],
            tree: Vec::new(),
            width: g.n().saturating_sub(1),
        }
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Neighbor lists of the decomposition tree.
    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &[a, b] in &self.tree {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

/// Checks the three decomposition axioms and the declared width.
pub fn validate_decomposition(g: &Graph, td: &TreeDecomposition) -> bool {
    check_decomposition(g, td).is_ok()
}

/// Like [`validate_decomposition`] but names the violated condition.
pub fn check_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<()> {
    let bad = |s: String| Err(Error::InvalidDecomposition(s));
    let b = td.bags.len();
    if b == 0 {
        return bad("no bags".into());
    }
    if td.width != td.max_bag_size().saturating_sub(1) {
        return bad(format!(
            "declared width {} but largest bag has {} vertices",
            td.width,
            td.max_bag_size()
        ));
    }
    for bag in &td.bags {
        if let Some(&v) = bag.iter().find(|&&v| v >= g.n()) {
            return bad(format!("bag vertex {v} out of range"));
        }
    }
    // tree: b - 1 edges, connected
    if td.tree.len() != b - 1 {
        return bad(format!("{} tree edges for {b} bags", td.tree.len()));
    }
    if let Some(&[x, y]) = td.tree.iter().find(|&&[x, y]| x >= b || y >= b || x == y) {
        return bad(format!("tree edge ({x}, {y}) invalid"));
    }
    let adj = td.tree_adjacency();
    let mut seen = vec![false; b];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return bad("bag tree is not connected".into());
    }
    let contains: Vec<Vec<bool>> = td
        .bags
        .iter()
        .map(|bag| {
            let mut c = vec![false; g.n()];
            for &v in bag {
                c[v] = true;
            }
            c
        })
        .collect();
    for &(u, v) in g.edges() {
        if !contains.iter().any(|c| c[u] && c[v]) {
            return bad(format!("edge ({u}, {v}) not covered"));
        }
    }
    for v in 0..g.n() {
        let holders: Vec<usize> = (0..b).filter(|&i| contains[i][v]).collect();
        let Some(&first) = holders.first() else {
            return bad(format!("vertex {v} in no bag"));
        };
        let mut reached = vec![false; b];
        reached[first] = true;
        let mut stack = vec![first];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !reached[y] && contains[y][v] {
                    reached[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        if count != holders.len() {
            return bad(format!("bags holding vertex {v} are not connected"));
        }
    }
    Ok(())
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect()
}

/// Vertices outside `set ∪ {v}` reachable from `v` through `set`.
fn q_set(adj: &[u32], set: u32, v: usize) -> u32 {
    let mut visited = 1u32 << v;
    let mut frontier = 1u32 << v;
    let mut outside = 0u32;
    while frontier != 0 {
        let x = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let nb = adj[x] & !visited;
        visited |= nb;
        outside |= nb & !set;
        frontier |= nb & set;
    }
    outside
}

/// Treewidth and an optimal tree decomposition.
pub fn treewidth_exact(g: &Graph) -> Result<(usize, TreeDecomposition)> {
    let n = g.n();
    if n > TREEWIDTH_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "treewidth input",
            size: n as u64,
            limit: TREEWIDTH_VERTEX_LIMIT as u64,
        });
    }
    if n == 0 {
        return Ok((
            0,
            TreeDecomposition {
                bags: vec![Vec::new()],
                tree: Vec::new(),
                width: 0,
            },
        ));
    }
    let adj = adjacency_masks(g);
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    // best[s]: minimal width of eliminating exactly the set s first
    let mut best = vec![i32::MAX; 1usize << n];
    let mut choice = vec![0u8; 1usize << n];
    best[0] = -1;
    for s in 1..=full {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let before = best[prev as usize];
            if before >= best[s as usize] {
                continue;
            }
            let q = q_set(&adj, prev, v).count_ones() as i32;
            let w = before.max(q);
            if w < best[s as usize] {
                best[s as usize] = w;
                choice[s as usize] = v as u8;
            }
        }
    }
    let width = best[full as usize].max(0) as usize;

    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    let td = decomposition_from_order(g, &order);
    if td.width != width {
        return Err(Error::Consistency(format!(
            "elimination order gives width {}, table says {width}",
            td.width
        )));
    }
    Ok((width, td))
}

/// Tree decomposition induced by eliminating vertices in `order`.
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut fill: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| g.has_edge(u, v)).collect())
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut higher = Vec::with_capacity(n);
    for &v in order {
        let later: Vec<usize> = (0..n).filter(|&w| fill[v][w] && pos[w] > pos[v]).collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    fill[a][b] = true;
                }
            }
        }
        let mut bag = later.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        higher.push(later);
    }
    // bag i belongs to order[i]; its parent is the bag of the earliest later neighbor
    let mut tree = Vec::new();
    let mut roots = Vec::new();
    for (i, later) in higher.iter().enumerate() {
        match later.iter().map(|&w| pos[w]).min() {
            Some(p) => tree.push([i, p]),
            None => roots.push(i),
        }
    }
    for pair in roots.windows(2) {
        tree.push([pair[0], pair[1]]);
    }
    let width = bags.iter().map(Vec::len).max().unwrap_or(1) - 1;
    TreeDecomposition { bags, tree, width }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::disjoint_union;

    #[test]
    fn known_widths() {
        assert_eq!(treewidth_exact(&Graph::complete(4)).unwrap().0, 3);
        assert_eq!(treewidth_exact(&Graph::cycle(5)).unwrap().0, 2);
        assert_eq!(treewidth_exact(&Graph::path(6)).unwrap().0, 1);
        assert_eq!(treewidth_exact(&Graph::empty(3)).unwrap().0, 0);
        assert_eq!(treewidth_exact(&Graph::petersen()).unwrap().0, 4);
        let two = disjoint_union(&[Graph::complete(3), Graph::cycle(4)]).0;
        assert_eq!(treewidth_exact(&two).unwrap().0, 2);
    }

    #[test]
    fn outputs_validate() {
        for g in [
            Graph::cycle(5),
            Graph::petersen(),
            Graph::complete(5),
            Graph::empty(0),
            disjoint_union(&[Graph::path(3), Graph::complete(2)]).0,
        ] {
            let (w, td) = treewidth_exact(&g).unwrap();
            assert!(validate_decomposition(&g, &td), "{g:?}");
            assert_eq!(td.width, w);
        }
    }

    #[test]
    fn trivial_decomposition_is_valid() {
        let g = Graph::petersen();
        let td = TreeDecomposition::trivial(&g);
        assert!(validate_decomposition(&g, &td));
        assert_eq!(td.width, 9);
    }

    #[test]
    fn violations_are_rejected() {
        let g = Graph::cycle(4);
        let missing_edge = TreeDecomposition {
            bags: vec![vec![0, 1, 2], vec![2, 3]],
            tree: vec![[0, 1]],
            width: 2,
        };
        assert!(!validate_decomposition(&g, &missing_edge));
        let wrong_width = TreeDecomposition {
            bags: vec![vec![0, 1, 2, 3]],
            tree: vec![],
            width: 2,
        };
        assert!(!validate_decomposition(&g, &wrong_width));
        let disconnected_vertex = TreeDecomposition {
            bags: vec![vec![0, 1, 3], vec![1, 2], vec![2, 3]],
            tree: vec![[0, 1], [1, 2]],
            width: 2,
        };
        assert!(!validate_decomposition(&g, &disconnected_vertex));
        let not_a_tree = TreeDecomposition {
            bags: vec![vec![0, 1, 2], vec![0, 2, 3]],
            tree: vec![],
            width: 2,
        };
        assert!(!validate_decomposition(&g, &not_a_tree));
    }

    #[test]
    fn size_guard() {
        assert!(treewidth_exact(&Graph::empty(TREEWIDTH_VERTEX_LIMIT + 1)).is_err());
    }
}
