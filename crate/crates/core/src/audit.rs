//! Whether `sub(f, ·)` is invariant under k-WL, decided by hereditary
//! treewidth, with CFI witness pairs for the non-invariant case.

use std::time::Instant;

use serde::Serialize;

use crate::cfi::{cfi_pair, CfiGraph};
use crate::error::{Error, Result};
use crate::format::{emit_graph6, parse_graph6};
use crate::graph::Graph;
use crate::hom::{hom_count, sub_count_bruteforce};
use crate::iso::is_isomorphic;
use crate::spasm::{spasm, Spasm};
use crate::treewidth::treewidth_exact;
use crate::wl::{wl_compare, wl_distinguishes, WlVerdict, TUPLE_BUDGET};

/// Default number of candidate bases explored by [`witness_search`].
pub const DEFAULT_BUDGET: u64 = 2_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Invariant,
    NotInvariant,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpasmEntry {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub treewidth: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessPair {
    pub g: String,
    pub h: String,
    pub base: String,
    pub twist: Vec<usize>,
    pub sub_g: String,
    pub sub_h: String,
    pub hom_g: String,
    pub hom_h: String,
    /// Comparisons for dimensions `1..=k`; none distinguishes.
    pub wl_verdicts: Vec<WlVerdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Telemetry {
    pub elapsed_ms: u128,
    pub candidates: u64,
    pub budget: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub pattern: String,
    pub k: usize,
    pub spasm: Vec<SpasmEntry>,
    pub htw: usize,
    pub verdict: Verdict,
    pub witness: Option<WitnessPair>,
    pub note: String,
    pub telemetry: Telemetry,
}

pub fn spasm_entries(s: &Spasm) -> Result<Vec<SpasmEntry>> {
    s.graphs()
        .map(|g| {
            Ok(SpasmEntry {
                graph6: emit_graph6(g)?,
                n: g.n(),
                m: g.m(),
                treewidth: treewidth_exact(g)?.0,
            })
        })
        .collect()
}

/// Outcome of a witness search.
#[derive(Clone, Debug)]
pub struct WitnessSearch {
    pub witness: Option<WitnessPair>,
    pub candidates: u64,
    /// The candidate list was cut short by the budget.
    pub truncated: bool,
}

/// Candidate CFI bases: connected spasm members of treewidth above `k`, then
/// their connected subgraphs of treewidth above `k`, each family ordered by
/// vertex then edge count.
fn candidate_bases(s: &Spasm, k: usize, budget: u64) -> Result<(Vec<Graph>, bool)> {
    let mut members = Vec::new();
    for g in s.graphs() {
        if g.n() >= 2 && g.is_connected() && treewidth_exact(g)?.0 > k {
            members.push(g.clone());
        }
    }
    members.sort_by_key(|g| (g.n(), g.m()));

    // edge deletions from the members, keeping connectivity and width
    let mut seen: Vec<Graph> = members.clone();
    let mut frontier = members.clone();
    let mut subgraphs = Vec::new();
    let mut truncated = false;
    'grow: while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for e in 0..g.m() {
                if (seen.len() as u64) >= budget {
                    truncated = true;
                    break 'grow;
                }
                let keep: Vec<usize> = (0..g.m()).filter(|&i| i != e).collect();
                let h = drop_isolated(&g.edge_subgraph(&keep));
                if h.n() < 2 || !h.is_connected() || treewidth_exact(&h)?.0 <= k {
                    continue;
                }
                if seen.iter().any(|s| is_isomorphic(s, &h).is_some()) {
                    continue;
                }
                seen.push(h.clone());
                subgraphs.push(h.clone());
                next.push(h);
            }
        }
        frontier = next;
    }
    subgraphs.sort_by_key(|g| (g.n(), g.m()));
    members.extend(subgraphs);
    Ok((members, truncated))
}

fn drop_isolated(g: &Graph) -> Graph {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
    g.induced_subgraph(&keep)
}

fn pair_fits(pair: &(CfiGraph, CfiGraph), k: usize) -> bool {
    let n = pair.0.graph.n() as u64;
    n.checked_pow(k as u32)
        .is_some_and(|t| t.saturating_mul(2) <= TUPLE_BUDGET)
}

/// First CFI pair over a candidate base that k-WL cannot tell apart but
/// `sub(f, ·)` can.
pub fn witness_search(f: &Graph, k: usize, budget: u64) -> Result<WitnessSearch> {
    if k == 0 {
        return Err(Error::InvalidGraph(
            "WL dimension must be at least 1".into(),
        ));
    }
    let s = spasm(f)?;
    let (bases, mut truncated) = candidate_bases(&s, k, budget)?;
    let mut candidates = 0;
    for base in bases {
        candidates += 1;
        let pair = cfi_pair(&base)?;
        if !pair_fits(&pair, k) {
            truncated = true;
            continue;
        }
        let (g, h) = (&pair.0.graph, &pair.1.graph);
        let sub_g = match sub_count_bruteforce(f, g) {
            Ok(c) => c,
            Err(Error::BudgetExhausted(_)) => {
                truncated = true;
                continue;
            }
            Err(e) => return Err(e),
        };
        let sub_h = sub_count_bruteforce(f, h)?;
        if sub_g == sub_h {
            continue;
        }
        let mut verdicts = Vec::with_capacity(k);
        for d in 1..=k {
            verdicts.push(wl_compare(g, h, d)?);
        }
        if verdicts.iter().any(|v| v.distinguished) {
            continue;
        }
        let witness = WitnessPair {
            g: emit_graph6(g)?,
            h: emit_graph6(h)?,
            base: emit_graph6(&base)?,
            twist: pair.1.twist.clone(),
            sub_g: sub_g.to_string(),
            sub_h: sub_h.to_string(),
            hom_g: hom_count(f, g)?.to_string(),
            hom_h: hom_count(f, h)?.to_string(),
            wl_verdicts: verdicts,
        };
        return Ok(WitnessSearch {
            witness: Some(witness),
            candidates,
            truncated,
        });
    }
    Ok(WitnessSearch {
        witness: None,
        candidates,
        truncated,
    })
}

/// `g` and `h` certify that `sub(f, ·)` is not k-WL invariant.
pub fn verify_witness(f: &Graph, k: usize, g: &Graph, h: &Graph) -> Result<bool> {
    if wl_distinguishes(g, h, k)? {
        return Ok(false);
    }
    Ok(sub_count_bruteforce(f, g)? != sub_count_bruteforce(f, h)?)
}

pub fn audit(f: &Graph, k: usize, budget: u64) -> Result<AuditReport> {
    if k == 0 {
        return Err(Error::InvalidGraph(
            "WL dimension must be at least 1".into(),
        ));
    }
    let start = Instant::now();
    let s = spasm(f)?;
    let entries = spasm_entries(&s)?;
    let htw = entries.iter().map(|e| e.treewidth).max().unwrap_or(0);
    let mut report = AuditReport {
        pattern: emit_graph6(f)?,
        k,
        spasm: entries,
        htw,
        verdict: Verdict::Invariant,
        witness: None,
        note: String::new(),
        telemetry: Telemetry {
            elapsed_ms: 0,
            candidates: 0,
            budget,
        },
    };
    if htw <= k {
        report.note = format!(
            "every spasm member has treewidth at most {k}, so its homomorphism counts are fixed by {k}-WL"
        );
    } else {
        let search = witness_search(f, k, budget)?;
        report.telemetry.candidates = search.candidates;
        match search.witness {
            Some(w) => {
                let (g, h) = (parse_graph6(&w.g)?, parse_graph6(&w.h)?);
                if !verify_witness(f, k, &g, &h)? {
                    return Err(Error::Consistency(
                        "emitted witness fails re-verification".into(),
                    ));
                }
                report.verdict = Verdict::NotInvariant;
                report.witness = Some(w);
                report.note =
                    "witness re-verified: equal WL histograms, different subgraph counts".into();
            }
            None => {
                report.verdict = Verdict::Inconclusive;
                report.note = format!(
                    "hereditary treewidth {htw} exceeds {k}, so a witness pair exists, but none was found among {} CFI candidates{}",
                    search.candidates,
                    if search.truncated { " (search truncated)" } else { "" }
                );
            }
        }
    }
    report.telemetry.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::disjoint_union;
    use crate::iso::are_isomorphic;

    #[test]
    fn triangle_against_1wl() {
        let r = audit(&Graph::complete(3), 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::NotInvariant);
        let w = r.witness.unwrap();
        let g = parse_graph6(&w.g).unwrap();
        let h = parse_graph6(&w.h).unwrap();
        let two = disjoint_union(&[Graph::complete(3), Graph::complete(3)]).0;
        assert!(are_isomorphic(&g, &two));
        assert!(are_isomorphic(&h, &Graph::cycle(6)));
        assert_eq!((w.sub_g.as_str(), w.sub_h.as_str()), ("2", "0"));
    }

    #[test]
    fn cycles_up_to_six_are_invariant_for_2wl() {
        for l in 3..=6 {
            let r = audit(&Graph::cycle(l), 2, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.verdict, Verdict::Invariant, "C{l}");
            assert_eq!(r.htw, 2);
        }
    }

    #[test]
    fn verify_witness_examples() {
        let k3 = Graph::complete(3);
        let two = disjoint_union(&[k3.clone(), k3.clone()]).0;
        let c6 = Graph::cycle(6);
        assert!(verify_witness(&k3, 1, &two, &c6).unwrap());
        assert!(!verify_witness(&k3, 2, &two, &c6).unwrap());
        assert!(!verify_witness(&k3, 1, &k3, &k3).unwrap());
    }

    #[test]
    fn edge_pattern_is_always_invariant() {
        let r = audit(&Graph::complete(2), 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::Invariant);
        assert_eq!(r.spasm.len(), 1);
    }

    #[test]
    fn zero_dimension_is_rejected() {
        assert!(audit(&Graph::complete(3), 0, DEFAULT_BUDGET).is_err());
    }
}
