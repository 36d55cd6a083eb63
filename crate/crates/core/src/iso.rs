//! Exact isomorphism testing by individualization-refinement.
//!
//! Both graphs are refined together with 1-WL; colors are ranks of sorted
//! signatures over the union, so a color means the same thing on either side.
//! When the coloring of `g` is not discrete, one vertex of the first
//! non-singleton cell is individualized in `g` and every vertex of the matching
//! cell is tried in `h`.

use crate::graph::{Graph, VertexMap};

/// Returns an isomorphism `g -> h` if one exists.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<VertexMap> {
    if g.n() != h.n() || g.m() != h.m() || g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    let mut cg = vec![0u32; g.n()];
    let mut ch = vec![0u32; h.n()];
    let map = search(g, h, &mut cg, &mut ch)?;
    let phi = VertexMap::new(map, h.n()).ok()?;
    debug_assert!(phi.is_isomorphism(g, h));
    Some(phi)
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    is_isomorphic(g, h).is_some()
}

fn search(g: &Graph, h: &Graph, cg: &mut [u32], ch: &mut [u32]) -> Option<Vec<usize>> {
    let mut sc = Scratch::default();
    descend(g, h, cg, ch, &mut sc)
}

fn descend(
    g: &Graph,
    h: &Graph,
    cg: &mut [u32],
    ch: &mut [u32],
    sc: &mut Scratch,
) -> Option<Vec<usize>> {
    if !refine_with(g, h, cg, ch, sc) {
        return None;
    }
    let Some(target) = first_nonsingleton_cell(cg) else {
        let mut by_color = vec![usize::MAX; g.n()];
        for (v, &c) in ch.iter().enumerate() {
            by_color[c as usize] = v;
        }
        let map: Vec<usize> = cg.iter().map(|&c| by_color[c as usize]).collect();
        let ok = g.edges().iter().all(|&(u, v)| h.has_edge(map[u], map[v]));
        return ok.then_some(map);
    };
    let x = cg
        .iter()
        .position(|&c| c == target)
        .expect("cell is nonempty");
    let fresh = cg.len() as u32;
    for y in (0..h.n()).filter(|&y| ch[y] == target) {
        let mut cg2 = cg.to_vec();
        let mut ch2 = ch.to_vec();
        cg2[x] = fresh;
        ch2[y] = fresh;
        if let Some(map) = descend(g, h, &mut cg2, &mut ch2, sc) {
            return Some(map);
        }
    }
    None
}

/// Smallest color whose cell has at least two vertices.
fn first_nonsingleton_cell(colors: &[u32]) -> Option<u32> {
    let mut count = vec![0usize; colors.len() + 1];
    for &c in colors {
        count[c as usize] += 1;
    }
    count.iter().position(|&k| k > 1).map(|c| c as u32)
}

/// Refines both colorings to the coarsest common equitable refinement.
/// Colors are renumbered to dense ranks in `0..n`. Returns `false` as soon as
/// the color histograms of the two sides differ.
pub fn refine_jointly(g: &Graph, h: &Graph, cg: &mut [u32], ch: &mut [u32]) -> bool {
    let mut scratch = Scratch::default();
    refine_with(g, h, cg, ch, &mut scratch)
}

/// Reusable buffers for [`refine_with`].
#[derive(Default)]
struct Scratch {
    // flat signatures: vertex v of side s occupies sig[start[i]..start[i + 1]]
    sig: Vec<u32>,
    start: Vec<usize>,
    order: Vec<usize>,
    rank: Vec<u32>,
}

fn refine_with(g: &Graph, h: &Graph, cg: &mut [u32], ch: &mut [u32], sc: &mut Scratch) -> bool {
    let ng = g.n();
    let total = ng + h.n();
    let mut classes = usize::MAX;
    loop {
        sc.sig.clear();
        sc.start.clear();
        for (graph, colors) in [(g, &*cg), (h, &*ch)] {
            for v in 0..graph.n() {
                sc.start.push(sc.sig.len());
                sc.sig.push(colors[v]);
                let from = sc.sig.len();
                sc.sig.extend(graph.neighbors(v).iter().map(|&w| colors[w]));
                sc.sig[from..].sort_unstable();
            }
        }
        sc.start.push(sc.sig.len());
        let (sig, start) = (&sc.sig, &sc.start);
        let slice = |i: usize| &sig[start[i]..start[i + 1]];
        sc.order.clear();
        sc.order.extend(0..total);
        sc.order.sort_unstable_by(|&a, &b| slice(a).cmp(slice(b)));
        sc.rank.resize(total, 0);
        let mut next = 0u32;
        for (i, &v) in sc.order.iter().enumerate() {
            if i > 0 && slice(sc.order[i - 1]) != slice(v) {
                next += 1;
            }
            sc.rank[v] = next;
        }
        let count = if total == 0 { 0 } else { next as usize + 1 };
        // histograms agree iff every class has as many g- as h-members
        let mut balance = vec![0i64; count];
        for v in 0..total {
            balance[sc.rank[v] as usize] += if v < ng { 1 } else { -1 };
        }
        cg.copy_from_slice(&sc.rank[..ng]);
        ch.copy_from_slice(&sc.rank[ng..]);
        if balance.iter().any(|&b| b != 0) {
            return false;
        }
        if count == classes {
            return true;
        }
        classes = count;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::disjoint_union;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Exhaustive permutation search, the oracle for small graphs.
    pub(crate) fn brute_force_isomorphic(g: &Graph, h: &Graph) -> bool {
        if g.n() != h.n() || g.m() != h.m() {
            return false;
        }
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if g.edges().iter().all(|&(u, v)| h.has_edge(perm[u], perm[v])) {
                return true;
            }
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
                return false;
            };
            let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, edges).unwrap()
    }

    #[test]
    fn triangle_and_cycle_three() {
        let phi = is_isomorphic(&Graph::complete(3), &Graph::cycle(3)).unwrap();
        assert!(phi.is_isomorphism(&Graph::complete(3), &Graph::cycle(3)));
    }

    #[test]
    fn six_cycle_is_not_two_triangles() {
        let two_k3 = disjoint_union(&[Graph::complete(3), Graph::complete(3)]).0;
        assert!(is_isomorphic(&Graph::cycle(6), &two_k3).is_none());
    }

    #[test]
    fn relabelled_petersen() {
        let g = Graph::petersen();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut perm: Vec<usize> = (0..10).collect();
        perm.shuffle(&mut rng);
        let h = g.relabel(&perm).unwrap();
        let phi = is_isomorphic(&g, &h).unwrap();
        assert!(phi.is_isomorphism(&g, &h));
    }

    #[test]
    fn agrees_with_brute_force_up_to_six_vertices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..600 {
            let n = rng.gen_range(0..=6);
            let p = rng.gen_range(0.2..0.8);
            let g = random_graph(&mut rng, n, p);
            let h = if rng.gen_bool(0.5) {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                g.relabel(&perm).unwrap()
            } else {
                random_graph(&mut rng, n, p)
            };
            let fast = is_isomorphic(&g, &h);
            assert_eq!(
                fast.is_some(),
                brute_force_isomorphic(&g, &h),
                "{g:?} {h:?}"
            );
            if let Some(phi) = fast {
                assert!(phi.is_isomorphism(&g, &h));
            }
        }
    }

    #[test]
    fn equivalence_relation_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let graphs: Vec<Graph> = (0..40).map(|_| random_graph(&mut rng, 5, 0.5)).collect();
        for a in &graphs {
            assert!(are_isomorphic(a, a));
            for b in &graphs {
                assert_eq!(are_isomorphic(a, b), are_isomorphic(b, a));
                for c in graphs.iter().take(10) {
                    if are_isomorphic(a, b) && are_isomorphic(b, c) {
                        assert!(are_isomorphic(a, c));
                    }
                }
            }
        }
    }
}
