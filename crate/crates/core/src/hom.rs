//! Exact homomorphism, injective homomorphism, subgraph and automorphism
//! counts.
//!
//! The brute-force counters enumerate maps vertex by vertex and drop a partial
//! map as soon as an edge constraint fails. The decomposition counter runs a
//! table DP over a nice tree decomposition derived from any valid
//! decomposition of the pattern.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMap};
use crate::treewidth::{
    check_decomposition, treewidth_exact, TreeDecomposition, TREEWIDTH_VERTEX_LIMIT,
};

/// Node budget of the brute-force enumerations.
pub const ENUMERATION_BUDGET: u64 = 1_000_000_000;

/// Largest DP table (`|V(g)|^bag size`) the decomposition counter allocates.
pub const TABLE_LIMIT: u64 = 1 << 24;

/// Vertex order where each vertex after the first of its component has an
/// earlier neighbor. `anchor[i]` is that neighbor's position, if any.
fn search_order(f: &Graph) -> (Vec<usize>, Vec<Option<usize>>) {
    let n = f.n();
    let mut order = Vec::with_capacity(n);
    let mut pos = vec![usize::MAX; n];
    let mut anchor = Vec::with_capacity(n);
    for s in 0..n {
        if pos[s] != usize::MAX {
            continue;
        }
        pos[s] = order.len();
        order.push(s);
        anchor.push(None);
        let mut head = order.len() - 1;
        while head < order.len() {
            let v = order[head];
            // highest-degree unvisited neighbors first keeps constraints tight
            let mut next: Vec<usize> = f
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| pos[w] == usize::MAX)
                .collect();
            next.sort_by_key(|&w| std::cmp::Reverse(f.degree(w)));
            for w in next {
                pos[w] = order.len();
                order.push(w);
                anchor.push(Some(head));
            }
            head += 1;
        }
    }
    (order, anchor)
}

struct Enumerator<'a> {
    f: &'a Graph,
    g: &'a Graph,
    order: Vec<usize>,
    anchor: Vec<Option<usize>>,
    // earlier neighbors of order[i], as positions
    back: Vec<Vec<usize>>,
    injective: bool,
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl<'a> Enumerator<'a> {
    fn new(f: &'a Graph, g: &'a Graph, injective: bool, budget: u64) -> Self {
        let (order, anchor) = search_order(f);
        let mut pos = vec![0; f.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                f.neighbors(v)
                    .iter()
                    .map(|&w| pos[w])
                    .filter(|&p| p < i)
                    .collect()
            })
            .collect();
        Enumerator {
            f,
            g,
            order,
            anchor,
            back,
            injective,
            image: vec![0; f.n()],
            used: vec![false; g.n()],
            nodes: 0,
            budget,
        }
    }

    /// Calls `leaf` for every complete map; `leaf` returns `false` to stop.
    fn run<L: FnMut(&[usize]) -> bool>(&mut self, leaf: &mut L) -> Result<bool> {
        self.step(0, leaf)
    }

    fn step<L: FnMut(&[usize]) -> bool>(&mut self, i: usize, leaf: &mut L) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted(self.budget));
        }
        if i == self.order.len() {
            // image is indexed by position; translate to vertex order
            let mut phi = vec![0; self.f.n()];
            for (p, &v) in self.order.iter().enumerate() {
                phi[v] = self.image[p];
            }
            return Ok(leaf(&phi));
        }
        let candidates: Vec<usize> = match self.anchor[i] {
            Some(a) => self.g.neighbors(self.image[a]).to_vec(),
            None => (0..self.g.n()).collect(),
        };
        for x in candidates {
            if self.injective && self.used[x] {
                continue;
            }
            if !self.back[i]
                .iter()
                .all(|&p| self.g.has_edge(self.image[p], x))
            {
                continue;
            }
            self.image[i] = x;
            self.used[x] = true;
            let go_on = self.step(i + 1, leaf);
            self.used[x] = false;
            if !go_on? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn count_maps(f: &Graph, g: &Graph, injective: bool) -> Result<BigUint> {
    if injective && f.n() > g.n() {
        return Ok(BigUint::zero());
    }
    let mut count: u64 = 0;
    Enumerator::new(f, g, injective, ENUMERATION_BUDGET).run(&mut |_| {
        count += 1;
        true
    })?;
    Ok(BigUint::from(count))
}

/// Number of homomorphisms `f -> g` by pruned enumeration.
pub fn hom_count_bruteforce(f: &Graph, g: &Graph) -> Result<BigUint> {
    count_maps(f, g, false)
}

/// Number of injective homomorphisms `f -> g`.
pub fn inj_count(f: &Graph, g: &Graph) -> Result<BigUint> {
    count_maps(f, g, true)
}

pub fn aut_count(g: &Graph) -> Result<BigUint> {
    inj_count(g, g)
}

/// Number of subgraphs of `g` isomorphic to `f`: `inj(f, g) / aut(f)`.
pub fn sub_count_bruteforce(f: &Graph, g: &Graph) -> Result<BigUint> {
    let inj = inj_count(f, g)?;
    let aut = aut_count(f)?;
    if !(&inj % &aut).is_zero() {
        return Err(Error::Consistency(format!(
            "inj = {inj} is not a multiple of aut = {aut}"
        )));
    }
    Ok(inj / aut)
}

/// Visits homomorphisms `f -> g` until `visit` returns `false`.
pub fn for_each_homomorphism<V: FnMut(&[usize]) -> bool>(
    f: &Graph,
    g: &Graph,
    budget: u64,
    mut visit: V,
) -> Result<()> {
    Enumerator::new(f, g, false, budget).run(&mut visit)?;
    Ok(())
}

pub fn find_injective_homomorphism(f: &Graph, g: &Graph) -> Option<VertexMap> {
    if f.n() > g.n() {
        return None;
    }
    let mut found = None;
    Enumerator::new(f, g, true, ENUMERATION_BUDGET)
        .run(&mut |phi| {
            found = Some(phi.to_vec());
            false
        })
        .ok()?;
    found.map(|m| VertexMap::new(m, g.n()).expect("images are in range"))
}

#[derive(Clone, Debug)]
enum NiceNode {
    Leaf,
    Introduce { vertex: usize, child: usize },
    Forget { vertex: usize, child: usize },
    Join { left: usize, right: usize },
}

/// Nice decomposition: nodes in post-order, with the bag of each node.
/// The last node is the root and has an empty bag.
struct NiceDecomposition {
    nodes: Vec<NiceNode>,
    bags: Vec<Vec<usize>>,
}

impl NiceDecomposition {
    fn from_decomposition(td: &TreeDecomposition) -> Self {
        let mut nice = NiceDecomposition {
            nodes: Vec::new(),
            bags: Vec::new(),
        };
        let adj = td.tree_adjacency();
        let top = nice.build(td, &adj, 0, usize::MAX);
        let root_bag = nice.bags[top].clone();
        let mut cur = top;
        for &v in &root_bag {
            cur = nice.forget(cur, v);
        }
        nice
    }

    fn push(&mut self, node: NiceNode, bag: Vec<usize>) -> usize {
        self.nodes.push(node);
        self.bags.push(bag);
        self.nodes.len() - 1
    }

    fn introduce(&mut self, child: usize, vertex: usize) -> usize {
        let mut bag = self.bags[child].clone();
        let at = bag.binary_search(&vertex).unwrap_err();
        bag.insert(at, vertex);
        self.push(NiceNode::Introduce { vertex, child }, bag)
    }

    fn forget(&mut self, child: usize, vertex: usize) -> usize {
        let mut bag = self.bags[child].clone();
        let at = bag.binary_search(&vertex).expect("vertex in bag");
        bag.remove(at);
        self.push(NiceNode::Forget { vertex, child }, bag)
    }

    /// Builds the subtree of bag `b` and returns a node whose bag equals `bags[b]`.
    fn build(
        &mut self,
        td: &TreeDecomposition,
        adj: &[Vec<usize>],
        b: usize,
        parent: usize,
    ) -> usize {
        let mut target = td.bags[b].clone();
        target.sort_unstable();
        target.dedup();
        let mut branches = Vec::new();
        for &c in &adj[b] {
            if c == parent {
                continue;
            }
            let mut cur = self.build(td, adj, c, b);
            let child_bag = self.bags[cur].clone();
            for &v in child_bag
                .iter()
                .filter(|v| target.binary_search(v).is_err())
            {
                cur = self.forget(cur, v);
            }
            for &v in target
                .iter()
                .filter(|v| child_bag.binary_search(v).is_err())
            {
                cur = self.introduce(cur, v);
            }
            branches.push(cur);
        }
        if branches.is_empty() {
            let mut cur = self.push(NiceNode::Leaf, Vec::new());
            for &v in &target {
                cur = self.introduce(cur, v);
            }
            return cur;
        }
        let mut acc = branches[0];
        for &other in &branches[1..] {
            acc = self.push(
                NiceNode::Join {
                    left: acc,
                    right: other,
                },
                target.clone(),
            );
        }
        acc
    }
}

/// Homomorphism count by DP over a tree decomposition of `f`.
pub fn hom_count_td(f: &Graph, td: &TreeDecomposition, g: &Graph) -> Result<BigUint> {
    check_decomposition(f, td)?;
    let ng = g.n();
    let table_size = |bag: usize| -> Result<usize> {
        let size = (ng as u64).checked_pow(bag as u32).unwrap_or(u64::MAX);
        if size > TABLE_LIMIT {
            return Err(Error::TooLarge {
                what: "decomposition DP table",
                size,
                limit: TABLE_LIMIT,
            });
        }
        Ok(size as usize)
    };
    if ng == 0 {
        return Ok(if f.n() == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        });
    }
    let nice = NiceDecomposition::from_decomposition(td);
    let mut tables: Vec<Option<Vec<BigUint>>> = vec![None; nice.nodes.len()];
    for (i, node) in nice.nodes.iter().enumerate() {
        let bag = &nice.bags[i];
        let size = table_size(bag.len())?;
        // mixed-radix index, first bag entry most significant
        let table = match *node {
            NiceNode::Leaf => vec![BigUint::one()],
            NiceNode::Introduce { vertex, child } => {
                let child_table = tables[child].take().expect("child computed");
                let at = bag
                    .binary_search(&vertex)
                    .expect("introduced vertex in bag");
                let low = ng.pow((bag.len() - 1 - at) as u32);
                let others: Vec<(usize, usize)> = bag
                    .iter()
                    .enumerate()
                    .filter(|&(j, &w)| j != at && f.has_edge(vertex, w))
                    .map(|(j, _)| (j, ng.pow((bag.len() - 1 - j) as u32)))
                    .collect();
                (0..size)
                    .map(|idx| {
                        let x = (idx / low) % ng;
                        let ok = others
                            .iter()
                            .all(|&(_, stride)| g.has_edge(x, (idx / stride) % ng));
                        if !ok {
                            return BigUint::zero();
                        }
                        let child_idx = (idx / (low * ng)) * low + idx % low;
                        child_table[child_idx].clone()
                    })
                    .collect()
            }
            NiceNode::Forget { vertex, child } => {
                let child_table = tables[child].take().expect("child computed");
                let child_bag = &nice.bags[child];
                let at = child_bag
                    .binary_search(&vertex)
                    .expect("forgotten vertex in child bag");
                let low = ng.pow((child_bag.len() - 1 - at) as u32);
                (0..size)
                    .map(|idx| {
                        let high = idx / low;
                        let rest = idx % low;
                        let mut sum = BigUint::zero();
                        for x in 0..ng {
                            let v = &child_table[(high * ng + x) * low + rest];
                            if !v.is_zero() {
                                sum += v;
                            }
                        }
                        sum
                    })
                    .collect()
            }
            NiceNode::Join { left, right } => {
                let l = tables[left].take().expect("left computed");
                let r = tables[right].take().expect("right computed");
                l.into_iter().zip(r).map(|(a, b)| a * b).collect()
            }
        };
        tables[i] = Some(table);
    }
    let root = tables.pop().flatten().expect("root table");
    Ok(root.into_iter().next().expect("root bag is empty"))
}

/// Homomorphism count using an optimal decomposition of `f` when `f` is small
/// enough for exact treewidth, brute force otherwise.
pub fn hom_count(f: &Graph, g: &Graph) -> Result<BigUint> {
    if f.n() <= TREEWIDTH_VERTEX_LIMIT {
        let (_, td) = treewidth_exact(f)?;
        match hom_count_td(f, &td, g) {
            Err(Error::TooLarge { .. }) => {}
            other => return other,
        }
    }
    hom_count_bruteforce(f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::disjoint_union;
    use crate::treewidth::decomposition_from_order;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::ops::RangeInclusive;

    fn random_graph(rng: &mut ChaCha8Rng, sizes: RangeInclusive<usize>, p: f64) -> Graph {
        let n = rng.gen_range(sizes);
        Graph::random(rng, n, p)
    }

    /// Counts maps by trying all `|V(g)|^|V(f)|` assignments.
    fn naive_hom(f: &Graph, g: &Graph) -> u64 {
        let (nf, ng) = (f.n(), g.n());
        let total = (ng as u64).pow(nf as u32);
        let mut count = 0;
        let mut phi = vec![0; nf];
        for code in 0..total {
            let mut c = code;
            for x in phi.iter_mut() {
                *x = (c % ng as u64) as usize;
                c /= ng as u64;
            }
            if f.edges().iter().all(|&(u, v)| g.has_edge(phi[u], phi[v])) {
                count += 1;
            }
        }
        count
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn basic_counts() {
        let k3 = Graph::complete(3);
        assert_eq!(hom_count_bruteforce(&k3, &k3).unwrap(), big(6));
        assert_eq!(
            hom_count_bruteforce(&Graph::cycle(4), &k3).unwrap(),
            big(18)
        );
        let p = Graph::petersen();
        assert_eq!(
            hom_count_bruteforce(&Graph::complete(2), &p).unwrap(),
            big(30)
        );
        assert_eq!(hom_count_bruteforce(&Graph::empty(0), &p).unwrap(), big(1));
        assert_eq!(
            hom_count_bruteforce(&Graph::empty(2), &Graph::empty(0)).unwrap(),
            big(0)
        );
    }

    #[test]
    fn injective_and_subgraph_counts() {
        let k3 = Graph::complete(3);
        let k4 = Graph::complete(4);
        assert_eq!(sub_count_bruteforce(&k3, &k4).unwrap(), big(4));
        assert_eq!(aut_count(&k3).unwrap(), big(6));
        assert_eq!(inj_count(&k3, &k4).unwrap(), big(24));
        assert_eq!(sub_count_bruteforce(&Graph::path(3), &k3).unwrap(), big(3));
        assert_eq!(sub_count_bruteforce(&k3, &Graph::cycle(6)).unwrap(), big(0));
        let two_k3 = disjoint_union(&[k3.clone(), k3.clone()]).0;
        assert_eq!(sub_count_bruteforce(&k3, &two_k3).unwrap(), big(2));
        assert_eq!(aut_count(&Graph::petersen()).unwrap(), big(120));
    }

    #[test]
    fn path_into_triangle_via_decomposition() {
        let p3 = Graph::path(3);
        let td = decomposition_from_order(&p3, &[0, 2, 1]);
        assert_eq!(td.width, 1);
        assert_eq!(
            hom_count_td(&p3, &td, &Graph::complete(3)).unwrap(),
            big(12)
        );
        let trivial = TreeDecomposition::trivial(&p3);
        assert_eq!(
            hom_count_td(&p3, &trivial, &Graph::complete(3)).unwrap(),
            big(12)
        );
    }

    #[test]
    fn decomposition_rejects_invalid() {
        let bad = TreeDecomposition {
            bags: vec![vec![0, 1]],
            tree: vec![],
            width: 1,
        };
        assert!(hom_count_td(&Graph::path(3), &bad, &Graph::complete(3)).is_err());
    }

    #[test]
    fn brute_force_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..150 {
            let f = random_graph(&mut rng, 0..=4, 0.5);
            let g = random_graph(&mut rng, 0..=5, 0.5);
            assert_eq!(
                hom_count_bruteforce(&f, &g).unwrap(),
                big(naive_hom(&f, &g))
            );
        }
    }

    #[test]
    fn decomposition_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let (pf, pg) = (rng.gen_range(0.2..0.9), rng.gen_range(0.2..0.9));
            let f = random_graph(&mut rng, 1..=5, pf);
            let g = random_graph(&mut rng, 1..=7, pg);
            let (_, td) = treewidth_exact(&f).unwrap();
            let mut order: Vec<usize> = (0..f.n()).collect();
            order.shuffle(&mut rng);
            let other = decomposition_from_order(&f, &order);
            let expected = hom_count_bruteforce(&f, &g).unwrap();
            assert_eq!(hom_count_td(&f, &td, &g).unwrap(), expected);
            assert_eq!(hom_count_td(&f, &other, &g).unwrap(), expected);
        }
    }

    #[test]
    fn multiplicative_and_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..40 {
            let f1 = random_graph(&mut rng, 1..=3, 0.6);
            let f2 = random_graph(&mut rng, 1..=3, 0.6);
            let g = random_graph(&mut rng, 1..=6, 0.5);
            let h = random_graph(&mut rng, 1..=6, 0.5);
            let union = disjoint_union(&[f1.clone(), f2.clone()]).0;
            assert_eq!(
                hom_count(&union, &g).unwrap(),
                hom_count(&f1, &g).unwrap() * hom_count(&f2, &g).unwrap()
            );
            if f1.is_connected() {
                let target = disjoint_union(&[g.clone(), h.clone()]).0;
                assert_eq!(
                    hom_count(&f1, &target).unwrap(),
                    hom_count(&f1, &g).unwrap() + hom_count(&f1, &h).unwrap()
                );
            }
        }
    }

    #[test]
    fn counts_are_relabelling_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..30 {
            let f = random_graph(&mut rng, 1..=4, 0.6);
            let g = random_graph(&mut rng, 1..=6, 0.5);
            let mut pf: Vec<usize> = (0..f.n()).collect();
            let mut pg: Vec<usize> = (0..g.n()).collect();
            pf.shuffle(&mut rng);
            pg.shuffle(&mut rng);
            let f2 = f.relabel(&pf).unwrap();
            let g2 = g.relabel(&pg).unwrap();
            assert_eq!(hom_count(&f, &g).unwrap(), hom_count(&f2, &g2).unwrap());
            assert_eq!(inj_count(&f, &g).unwrap(), inj_count(&f2, &g2).unwrap());
            assert_eq!(
                sub_count_bruteforce(&f, &g).unwrap(),
                sub_count_bruteforce(&f2, &g2).unwrap()
            );
            assert_eq!(aut_count(&g).unwrap(), aut_count(&g2).unwrap());
            assert_eq!(
                inj_count(&f, &g).unwrap(),
                aut_count(&f).unwrap() * sub_count_bruteforce(&f, &g).unwrap()
            );
        }
    }
}
