//! Homomorphic images of a pattern and the expansion of subgraph counts into
//! homomorphism counts over them.
//!
//! Every image of `f` is a quotient `f/P` by a partition into independent
//! blocks. Summing the Möbius function of the partition lattice,
//! `μ(P) = ∏_B (-1)^(|B|-1) (|B|-1)!`, over all `P` giving the same image and
//! dividing by `aut(f)` yields that image's coefficient.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::emit_graph6;
use crate::graph::{quotient, Graph, Partition, VertexMap};
use crate::hom::{aut_count, hom_count, sub_count_bruteforce};
use crate::iso::is_isomorphic;
use crate::partitions::for_each_independent_partition;
use crate::treewidth::treewidth_exact;

/// Largest pattern whose partitions are enumerated.
pub const SPASM_VERTEX_LIMIT: usize = 9;

/// Random targets used to validate every computed basis.
const VALIDATION_TARGETS: usize = 12;

#[derive(Clone, Debug)]
pub struct SpasmMember {
    pub graph: Graph,
    /// Partitions of the pattern whose quotient is this member.
    pub partitions: Vec<Partition>,
    /// Sum of the partition-lattice Möbius values over `partitions`.
    pub mobius: BigInt,
}

#[derive(Clone, Debug)]
pub struct Spasm {
    pub pattern: Graph,
    /// Pairwise non-isomorphic; the pattern itself comes first.
    pub members: Vec<SpasmMember>,
}

impl Spasm {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn graphs(&self) -> impl Iterator<Item = &Graph> {
        self.members.iter().map(|m| &m.graph)
    }

    /// Index of the member isomorphic to `h`.
    pub fn position(&self, h: &Graph) -> Option<usize> {
        self.members.iter().position(|m| {
            invariant_key(&m.graph) == invariant_key(h) && is_isomorphic(&m.graph, h).is_some()
        })
    }
}

type Key = (usize, usize, Vec<usize>);

fn invariant_key(g: &Graph) -> Key {
    let mut d = g.degree_sequence();
    d.sort_unstable();
    (g.n(), g.m(), d)
}

fn mobius(labels: &[usize]) -> BigInt {
    let blocks = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut sizes = vec![0u32; blocks];
    for &l in labels {
        sizes[l] += 1;
    }
    let mut value = BigInt::one();
    for s in sizes {
        for i in 1..s {
            value *= -BigInt::from(i);
        }
    }
    value
}

pub fn spasm(f: &Graph) -> Result<Spasm> {
    if f.n() > SPASM_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "spasm pattern",
            size: f.n() as u64,
            limit: SPASM_VERTEX_LIMIT as u64,
        });
    }
    let mut members: Vec<(Key, SpasmMember)> = Vec::new();
    let mut failure = None;
    for_each_independent_partition(f, |labels| {
        if failure.is_some() {
            return;
        }
        let p = Partition::from_labels(labels);
        let q = match quotient(f, &p) {
            Ok(q) => q,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        let key = invariant_key(&q);
        let found = members
            .iter_mut()
            .find(|(k, m)| *k == key && is_isomorphic(&m.graph, &q).is_some());
        match found {
            Some((_, m)) => {
                m.mobius += mobius(labels);
                m.partitions.push(p);
            }
            None => members.push((
                key,
                SpasmMember {
                    graph: q,
                    partitions: vec![p],
                    mobius: mobius(labels),
                },
            )),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    // larger images first; the pattern is the unique member on n vertices
    let mut keyed: Vec<(Key, String, SpasmMember)> = members
        .into_iter()
        .map(|(k, m)| Ok((k, emit_graph6(&m.graph)?, m)))
        .collect::<Result<_>>()?;
    keyed.sort_by(|a, b| {
        b.0 .0
            .cmp(&a.0 .0)
            .then(b.0 .1.cmp(&a.0 .1))
            .then(a.0 .2.cmp(&b.0 .2))
            .then(a.1.cmp(&b.1))
    });
    let mut members: Vec<SpasmMember> = keyed.into_iter().map(|(_, _, m)| m).collect();
    if let Some(first) = members.first_mut() {
        // only the discrete partition gives an image on all n vertices
        first.graph = f.clone();
    }
    Ok(Spasm {
        pattern: f.clone(),
        members,
    })
}

/// The quotient map of a member's partition, a surjective homomorphism onto
/// a graph isomorphic to the member.
pub fn quotient_map(p: &Partition) -> VertexMap {
    VertexMap::new(p.labels(), p.len()).expect("labels index blocks")
}

/// Hereditary treewidth: the largest treewidth in the spasm.
pub fn htw(f: &Graph) -> Result<usize> {
    htw_of(&spasm(f)?)
}

pub fn htw_of(s: &Spasm) -> Result<usize> {
    let mut best = 0;
    for m in &s.members {
        best = best.max(treewidth_exact(&m.graph)?.0);
    }
    Ok(best)
}

#[derive(Clone, Debug)]
pub struct HomBasis {
    pub pattern: Graph,
    pub terms: Vec<(Graph, BigRational)>,
}

impl HomBasis {
    /// `Σ α(L) · hom(L, g)`.
    pub fn evaluate(&self, g: &Graph) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (l, alpha) in &self.terms {
            let h = BigInt::from(hom_count(l, g)?);
            total += alpha * BigRational::from_integer(h);
        }
        Ok(total)
    }

    /// Checks the expansion against direct subgraph counting on `g`.
    pub fn check_on(&self, g: &Graph) -> Result<()> {
        let expected =
            BigRational::from_integer(BigInt::from(sub_count_bruteforce(&self.pattern, g)?));
        let got = self.evaluate(g)?;
        if got != expected {
            return Err(Error::BasisMismatch(format!(
                "expansion gives {got} but direct count is {expected}"
            )));
        }
        Ok(())
    }

    /// `[(graph6, "p/q")]` rows.
    pub fn rows(&self) -> Result<Vec<BasisRow>> {
        self.terms
            .iter()
            .map(|(l, a)| {
                Ok(BasisRow {
                    graph6: emit_graph6(l)?,
                    coefficient: format_ratio(a),
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisRow {
    pub graph6: String,
    pub coefficient: String,
}

/// Reduced fraction `p/q`, or `p` for integers.
pub fn format_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn basis_of(s: &Spasm) -> Result<HomBasis> {
    let aut = BigInt::from(aut_count(&s.pattern)?);
    let mut terms = Vec::with_capacity(s.len());
    for m in &s.members {
        let alpha = BigRational::new(m.mobius.clone(), aut.clone());
        if alpha.is_zero() {
            return Err(Error::BasisMismatch(format!(
                "zero coefficient for image with {} vertices and {} edges",
                m.graph.n(),
                m.graph.m()
            )));
        }
        terms.push((m.graph.clone(), alpha));
    }
    if let Some((_, first)) = terms.first() {
        let expected = BigRational::new(BigInt::one(), aut);
        if *first != expected {
            return Err(Error::BasisMismatch(format!(
                "pattern coefficient {first} differs from 1/aut = {expected}"
            )));
        }
    }
    Ok(HomBasis {
        pattern: s.pattern.clone(),
        terms,
    })
}

/// Coefficients of `sub(f, ·)` in the homomorphism basis, validated against
/// direct counts on a fixed batch of random targets.
pub fn sub_basis(f: &Graph) -> Result<HomBasis> {
    let basis = basis_of(&spasm(f)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..VALIDATION_TARGETS {
        let n = 1 + i % 7;
        let g = Graph::random(&mut rng, n, 0.55);
        basis.check_on(&g)?;
    }
    Ok(basis)
}

/// Number of subgraphs via the expansion, as an integer.
pub fn sub_count_via_basis(b: &HomBasis, g: &Graph) -> Result<BigUint> {
    let v = b.evaluate(g)?;
    if !v.is_integer() || v.is_negative() {
        return Err(Error::BasisMismatch(format!("expansion evaluates to {v}")));
    }
    Ok(v.to_integer().to_biguint().expect("non-negative"))
}
