//! Odd and even vertices of a homomorphism, oddomorphisms, and the exact
//! searches behind the CFI hom-count comparison and the minor transfer.
//!
//! A vertex `a` is odd when, for every neighbor `v` of `φ(a)`, an odd number
//! of `a`'s neighbors land on `v`, and even when all those numbers are even.
//! When `φ(a)` has no neighbors both hold; such a vertex counts as odd.

use serde::Serialize;

use crate::cfi::cfi_pair;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMap};
use crate::hom::{for_each_homomorphism, hom_count};
use crate::iso::is_isomorphic;
use crate::partitions::connected_contractions;

/// Default node budget of the searches in this module.
pub const ODDO_BUDGET: u64 = 200_000_000;

/// Edge subsets are enumerated as `u32` masks.
pub const ODDO_EDGE_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddnessProfile {
    pub classes: Vec<Parity>,
    /// Number of odd vertices over each vertex of the target.
    pub odd_per_fiber: Vec<usize>,
}

impl OddnessProfile {
    pub fn is_oddomorphism(&self) -> bool {
        self.classes.iter().all(|&c| c != Parity::Neither)
            && self.odd_per_fiber.iter().all(|&c| c % 2 == 1)
    }
}

fn target_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect()
}

fn classify(parity: u64, target_nbrs: u64) -> Parity {
    if parity == target_nbrs {
        Parity::Odd
    } else if parity == 0 {
        Parity::Even
    } else {
        Parity::Neither
    }
}

pub fn oddness_profile(f: &Graph, g: &Graph, phi: &VertexMap) -> Result<OddnessProfile> {
    if phi.domain_size() != f.n() || phi.image_size() != g.n() {
        return Err(Error::InvalidMap(format!(
            "map is {} -> {}, graphs have {} and {} vertices",
            phi.domain_size(),
            phi.image_size(),
            f.n(),
            g.n()
        )));
    }
    if !phi.is_homomorphism(f, g) {
        return Err(Error::NotHomomorphism);
    }
    let mut classes = Vec::with_capacity(f.n());
    let mut odd_per_fiber = vec![0; g.n()];
    for a in 0..f.n() {
        let t = phi.apply(a);
        // per-target-vertex counts; g may exceed 64 vertices here
        let mut counts = vec![0usize; g.n()];
        for &b in f.neighbors(a) {
            counts[phi.apply(b)] += 1;
        }
        let parities: Vec<usize> = g.neighbors(t).iter().map(|&v| counts[v] % 2).collect();
        let class = if parities.iter().all(|&p| p == 1) {
            Parity::Odd
        } else if parities.iter().all(|&p| p == 0) {
            Parity::Even
        } else {
            Parity::Neither
        };
        if class == Parity::Odd {
            odd_per_fiber[t] += 1;
        }
        classes.push(class);
    }
    Ok(OddnessProfile {
        classes,
        odd_per_fiber,
    })
}

/// Subgraph `F'` of the pattern, in the pattern's own vertex names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgraphSpec {
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
}

impl SubgraphSpec {
    /// `F'` relabelled densely, with the restriction of `phi` to it.
    pub fn restrict(&self, phi: &VertexMap) -> Result<(Graph, VertexMap)> {
        let index = |v: usize| {
            self.vertices
                .binary_search(&v)
                .map_err(|_| Error::InvalidMap(format!("edge endpoint {v} not in subgraph")))
        };
        let edges = self
            .edges
            .iter()
            .map(|&[u, v]| Ok((index(u)?, index(v)?)))
            .collect::<Result<Vec<_>>>()?;
        let sub = Graph::new(self.vertices.len(), edges)?;
        let map = VertexMap::new(
            self.vertices.iter().map(|&v| phi.apply(v)).collect(),
            phi.image_size(),
        )?;
        Ok((sub, map))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakOddomorphism {
    pub subgraph: SubgraphSpec,
    pub map: VertexMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Search<T> {
    Found(T),
    /// The search ran to completion without a hit.
    None,
    /// Budget exhausted before the search completed.
    Unknown {
        budget: u64,
    },
}

impl<T> Search<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_complete(&self) -> bool {
        !matches!(self, Search::Unknown { .. })
    }
}

/// Searches homomorphisms `φ: f -> g` and subgraphs `F'` with `φ|F'` an
/// oddomorphism.
///
/// Vertices of `F'` without `F'`-edges are even unless their image is
/// isolated in `g`, so only the edge set of `F'` is enumerated: the vertex set
/// is its endpoints plus one preimage of every isolated vertex of `g`.
pub fn find_weak_oddomorphism(
    f: &Graph,
    g: &Graph,
    budget: u64,
) -> Result<Search<WeakOddomorphism>> {
    if f.m() > ODDO_EDGE_LIMIT {
        return Err(Error::TooLarge {
            what: "pattern edges for subgraph enumeration",
            size: f.m() as u64,
            limit: ODDO_EDGE_LIMIT as u64,
        });
    }
    if g.n() > 64 {
        return Err(Error::TooLarge {
            what: "oddomorphism target",
            size: g.n() as u64,
            limit: 64,
        });
    }
    let nbrs = target_masks(g);
    let isolated: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 0).collect();
    let mut spent: u64 = 0;
    let mut hit: Option<WeakOddomorphism> = None;
    let mut exhausted = false;

    let outcome = for_each_homomorphism(f, g, budget, |phi| {
        spent += 1;
        let mut image = 0u64;
        for &x in phi {
            image |= 1 << x;
        }
        if image.count_ones() as usize != g.n() {
            return true;
        }
        match search_subgraphs(f, phi, &nbrs, budget.saturating_sub(spent)) {
            SubgraphSearch::Found(edge_mask, used) => {
                spent += used;
                hit = Some(witness(f, phi, g, edge_mask, &isolated));
                false
            }
            SubgraphSearch::None(used) => {
                spent += used;
                if spent > budget {
                    exhausted = true;
                    return false;
                }
                true
            }
            SubgraphSearch::OutOfBudget => {
                exhausted = true;
                false
            }
        }
    });
    match outcome {
        Err(Error::BudgetExhausted(_)) => return Ok(Search::Unknown { budget }),
        Err(e) => return Err(e),
        Ok(()) => {}
    }
    if let Some(w) = hit {
        let (sub, map) = w.subgraph.restrict(&w.map)?;
        if !oddness_profile(&sub, g, &map)?.is_oddomorphism() {
            return Err(Error::Consistency(
                "weak oddomorphism witness fails re-verification".into(),
            ));
        }
        return Ok(Search::Found(w));
    }
    Ok(if exhausted {
        Search::Unknown { budget }
    } else {
        Search::None
    })
}

enum SubgraphSearch {
    Found(u32, u64),
    None(u64),
    OutOfBudget,
}

/// Gray-code walk over edge subsets keeping, for every vertex, the parity of
/// its subgraph neighbors over each target vertex.
fn search_subgraphs(f: &Graph, phi: &[usize], nbrs: &[u64], budget: u64) -> SubgraphSearch {
    let m = f.m();
    let n = f.n();
    let edges = f.edges();
    let mut parity = vec![0u64; n];
    let mut degree = vec![0u32; n];
    let total: u64 = 1 << m;
    if total > budget {
        return SubgraphSearch::OutOfBudget;
    }
    let mut mask = 0u32;
    for step in 0..total {
        if step > 0 {
            let bit = step.trailing_zeros() as usize;
            mask ^= 1 << bit;
            let (u, v) = edges[bit];
            let on = mask & (1 << bit) != 0;
            parity[u] ^= 1 << phi[v];
            parity[v] ^= 1 << phi[u];
            if on {
                degree[u] += 1;
                degree[v] += 1;
            } else {
                degree[u] -= 1;
                degree[v] -= 1;
            }
        }
        if is_oddomorphism_on(phi, nbrs, &parity, &degree) {
            return SubgraphSearch::Found(mask, step + 1);
        }
    }
    SubgraphSearch::None(total)
}

fn is_oddomorphism_on(phi: &[usize], nbrs: &[u64], parity: &[u64], degree: &[u32]) -> bool {
    let mut odd_count = 0u64;
    for a in 0..phi.len() {
        let t = phi[a];
        if nbrs[t] == 0 {
            continue;
        }
        if degree[a] == 0 {
            continue;
        }
        match classify(parity[a], nbrs[t]) {
            Parity::Odd => odd_count ^= 1 << t,
            Parity::Even => {}
            Parity::Neither => return false,
        }
    }
    // every non-isolated target vertex needs an odd number of odd preimages
    nbrs.iter()
        .enumerate()
        .all(|(t, &nb)| nb == 0 || odd_count & (1 << t) != 0)
}

fn witness(
    f: &Graph,
    phi: &[usize],
    g: &Graph,
    edge_mask: u32,
    isolated: &[usize],
) -> WeakOddomorphism {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (i, &(u, v)) in f.edges().iter().enumerate() {
        if edge_mask & (1 << i) != 0 {
            edges.push([u, v]);
            vertices.push(u);
            vertices.push(v);
        }
    }
    for &w in isolated {
        let a = phi.iter().position(|&x| x == w).expect("map is surjective");
        vertices.push(a);
    }
    vertices.sort_unstable();
    vertices.dedup();
    WeakOddomorphism {
        subgraph: SubgraphSpec { vertices, edges },
        map: VertexMap::new(phi.to_vec(), g.n()).expect("homomorphism images are in range"),
    }
}

/// Hom counts into the CFI pair of `g` next to the weak-oddomorphism search.
#[derive(Clone, Debug, Serialize)]
pub struct CfiCountReport {
    pub hom_untwisted: String,
    pub hom_twisted: String,
    pub inequality_holds: bool,
    pub strict: bool,
    pub search: Search<WeakOddomorphism>,
    /// `strict` agrees with the search outcome; `None` when the search was
    /// cut short.
    pub biconditional: Option<bool>,
}

impl CfiCountReport {
    pub fn is_violation(&self) -> bool {
        !self.inequality_holds || self.biconditional == Some(false)
    }
}

/// Compares `hom(f, CFI(g))` with `hom(f, CFI~(g))` and checks that the gap
/// is positive exactly when a weak oddomorphism `f -> g` exists.
pub fn hom_gap_report(f: &Graph, g: &Graph, budget: u64) -> Result<CfiCountReport> {
    let (plain, twisted) = cfi_pair(g)?;
    let a = hom_count(f, &plain.graph)?;
    let b = hom_count(f, &twisted.graph)?;
    let search = find_weak_oddomorphism(f, g, budget)?;
    let strict = a > b;
    let biconditional = match &search {
        Search::Found(_) => Some(strict),
        Search::None => Some(!strict),
        Search::Unknown { .. } => None,
    };
    Ok(CfiCountReport {
        hom_untwisted: a.to_string(),
        hom_twisted: b.to_string(),
        inequality_holds: a >= b,
        strict,
        search,
        biconditional,
    })
}

/// A minor of the pattern with an oddomorphism onto the target minor.
#[derive(Clone, Debug, Serialize)]
pub struct MinorOddomorphism {
    pub minor: Graph,
    pub map: VertexMap,
}

/// Given a weak oddomorphism `f -> g` and a minor `g'` of `g`, looks for a
/// minor `F'` of `f` with an oddomorphism `F' -> g'`.
pub fn minor_oddomorphism_check(
    f: &Graph,
    g: &Graph,
    g_minor: &Graph,
    budget: u64,
) -> Result<Search<MinorOddomorphism>> {
    match find_weak_oddomorphism(f, g, budget)? {
        Search::Found(_) => {}
        Search::None => {
            return Err(Error::InvalidGraph(
                "precondition failed: no weak oddomorphism from the pattern to the base".into(),
            ))
        }
        Search::Unknown { budget } => return Ok(Search::Unknown { budget }),
    }
    if !crate::partitions::is_minor(g_minor, g)? {
        return Err(Error::InvalidGraph(
            "precondition failed: target is not a minor of the base".into(),
        ));
    }
    let isolated_targets = (0..g_minor.n()).filter(|&v| g_minor.degree(v) == 0).count();
    let mut spent: u64 = 0;
    let mut seen: Vec<Graph> = Vec::new();
    for (_, q) in connected_contractions(f) {
        if q.m() > ODDO_EDGE_LIMIT {
            return Err(Error::TooLarge {
                what: "contraction edges for subgraph enumeration",
                size: q.m() as u64,
                limit: ODDO_EDGE_LIMIT as u64,
            });
        }
        for mask in 0u32..(1 << q.m()) {
            spent += 1;
            if spent > budget {
                return Ok(Search::Unknown { budget });
            }
            let Some(minor) = minor_from_mask(&q, mask, isolated_targets) else {
                continue;
            };
            if seen.iter().any(|s| is_isomorphic(s, &minor).is_some()) {
                continue;
            }
            let mut hit = None;
            let res = for_each_homomorphism(&minor, g_minor, budget.saturating_sub(spent), |phi| {
                spent += 1;
                let map = VertexMap::new(phi.to_vec(), g_minor.n()).expect("in range");
                let ok = oddness_profile(&minor, g_minor, &map).is_ok_and(|p| p.is_oddomorphism());
                if ok {
                    hit = Some(map);
                }
                !ok
            });
            match res {
                Err(Error::BudgetExhausted(_)) => return Ok(Search::Unknown { budget }),
                Err(e) => return Err(e),
                Ok(()) => {}
            }
            if let Some(map) = hit {
                return Ok(Search::Found(MinorOddomorphism { minor, map }));
            }
            seen.push(minor);
        }
    }
    Ok(Search::None)
}

/// Subgraph of `q` on the chosen edges, plus `extra` vertices left without
/// edges, or `None` if `q` has too few vertices to spare.
fn minor_from_mask(q: &Graph, mask: u32, extra: usize) -> Option<Graph> {
    let mut keep = vec![false; q.n()];
    let chosen: Vec<(usize, usize)> = q
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, &e)| e)
        .collect();
    for &(u, v) in &chosen {
        keep[u] = true;
        keep[v] = true;
    }
    let spare = keep.iter().filter(|&&k| !k).count();
    if spare < extra {
        return None;
    }
    let mut index = vec![usize::MAX; q.n()];
    let mut next = 0;
    for v in 0..q.n() {
        if keep[v] {
            index[v] = next;
            next += 1;
        }
    }
    let edges = chosen.into_iter().map(|(u, v)| (index[u], index[v]));
    Some(Graph::new(next + extra, edges).expect("subgraph is simple"))
}
