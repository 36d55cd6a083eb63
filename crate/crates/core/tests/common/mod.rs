//! Strategies and deliberately naive oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use homlab::Graph;
use proptest::prelude::*;

pub fn arb_graph(sizes: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Graph> {
    sizes.prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |bits| {
            let edges = pairs.iter().zip(&bits).filter(|(_, &b)| b).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

pub fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Counts every map `V(f) -> V(g)` that preserves edges.
pub fn naive_hom(f: &Graph, g: &Graph) -> u64 {
    let (n, m) = (f.n(), g.n());
    if n == 0 {
        return 1;
    }
    if m == 0 {
        return 0;
    }
    let mut map = vec![0usize; n];
    let mut count = 0;
    loop {
        if f.edges().iter().all(|&(u, v)| g.has_edge(map[u], map[v])) {
            count += 1;
        }
        let mut i = 0;
        while i < n {
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
            i += 1;
        }
        if i == n {
            return count;
        }
    }
}

/// Joint colour refinement on a list of keyed items: `signature(i, colors)`
/// gives the next-round key of item `i`. Returns the stable colours.
fn refine<K: Ord + Clone>(
    init: Vec<K>,
    signature: impl Fn(usize, &[usize]) -> Vec<usize>,
) -> Vec<usize> {
    let mut colors = dense(&init);
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..colors.len())
            .map(|i| (colors[i], signature(i, &colors)))
            .collect();
        let next = dense(&keys);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colors) {
            return next;
        }
        colors = next;
    }
}

fn dense<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut ids = BTreeMap::new();
    let mut sorted: Vec<&K> = keys.iter().collect();
    sorted.sort();
    for k in sorted {
        let next = ids.len();
        ids.entry(k.clone()).or_insert(next);
    }
    keys.iter().map(|k| ids[k]).collect()
}

fn histogram(colors: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// Colour refinement on the disjoint union; compares the two halves.
pub fn naive_1wl_distinguishes(g: &Graph, h: &Graph) -> bool {
    let (u, _) = homlab::disjoint_union(&[g.clone(), h.clone()]);
    let colors = refine(vec![0u8; u.n()], |v, c| {
        let mut s: Vec<usize> = u.neighbors(v).iter().map(|&w| c[w]).collect();
        s.sort_unstable();
        s
    });
    histogram(&colors[..g.n()]) != histogram(&colors[g.n()..])
}

/// 2-WL on ordered pairs of both graphs at once.
pub fn naive_2wl_distinguishes(g: &Graph, h: &Graph) -> bool {
    let graphs = [g, h];
    let mut items = Vec::new();
    for (gi, x) in graphs.iter().enumerate() {
        for a in 0..x.n() {
            for b in 0..x.n() {
                items.push((gi, a, b));
            }
        }
    }
    let offset = [0, g.n() * g.n()];
    let index = |gi: usize, a: usize, b: usize| offset[gi] + a * graphs[gi].n() + b;
    let init: Vec<(bool, bool)> = items
        .iter()
        .map(|&(gi, a, b)| (a == b, graphs[gi].has_edge(a, b)))
        .collect();
    let colors = refine(init, |i, c| {
        let (gi, a, b) = items[i];
        let mut s: Vec<usize> = (0..graphs[gi].n())
            .map(|w| c[index(gi, w, b)] * (c.len() + 1) + c[index(gi, a, w)])
            .collect();
        s.sort_unstable();
        s
    });
    histogram(&colors[..offset[1]]) != histogram(&colors[offset[1]..])
}

/// Treewidth as the best width over every elimination order.
pub fn naive_treewidth(g: &Graph) -> usize {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = n.saturating_sub(1);
    permute(&mut order, 0, &mut |order| {
        let mut adj: Vec<Vec<bool>> = (0..n)
            .map(|u| (0..n).map(|v| g.has_edge(u, v)).collect())
            .collect();
        let mut gone = vec![false; n];
        let mut width = 0;
        for &v in order {
            let nb: Vec<usize> = (0..n).filter(|&w| !gone[w] && adj[v][w]).collect();
            width = width.max(nb.len());
            for &a in &nb {
                for &b in &nb {
                    if a != b {
                        adj[a][b] = true;
                    }
                }
            }
            gone[v] = true;
        }
        best = best.min(width);
    });
    best
}

fn permute(v: &mut Vec<usize>, i: usize, visit: &mut impl FnMut(&[usize])) {
    if i == v.len() {
        visit(v);
        return;
    }
    for j in i..v.len() {
        v.swap(i, j);
        permute(v, i + 1, visit);
        v.swap(i, j);
    }
}
