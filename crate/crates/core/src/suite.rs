//! The batch checks run by `homlab corpus` and the acceptance tests: one
//! function per check, each producing a pass / fail / inconclusive line.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::audit::{audit, verify_witness, Verdict, DEFAULT_BUDGET};
use crate::cfi::{cfi_build, cfi_pair, twist_isomorphism, CfiVertex};
use crate::cops::min_cops;
use crate::corpus::Corpus;
use crate::error::Result;
use crate::format::parse_graph6;
use crate::graph::{disjoint_union, Graph};
use crate::hom::{hom_count, sub_count_bruteforce};
use crate::iso::{are_isomorphic, is_isomorphic};
use crate::oddo::{
    find_weak_oddomorphism, hom_gap_report, minor_oddomorphism_check, Search, ODDO_BUDGET,
};
use crate::partitions::minors;
use crate::spasm::{basis_of, htw_of, spasm};
use crate::treewidth::treewidth_exact;
use crate::wl::wl_distinguishes;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub module: &'static str,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchReport {
    pub results: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

impl BatchReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.inconclusive == 0
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Restrict to checks of these modules; `None` runs everything.
    pub modules: Option<Vec<String>>,
    /// Node budget for oddomorphism searches.
    pub budget: u64,
    pub corpus: Corpus,
}

impl SuiteConfig {
    pub fn new(corpus: Corpus) -> Self {
        SuiteConfig {
            modules: None,
            budget: ODDO_BUDGET,
            corpus,
        }
    }
}

type CheckFn = fn(&SuiteConfig) -> Result<(Status, String)>;

/// `(id, module, name, check)` for every check in the suite.
pub const CHECKS: [(u8, &str, &str, CheckFn); 10] = [
    (1, "cli", "triangle witness against 1-WL", triangle_witness),
    (2, "cli", "K4 witness against 2-WL", k4_witness),
    (
        3,
        "spasm-basis",
        "hereditary treewidth of short cycles",
        cycle_htw,
    ),
    (
        4,
        "spasm-basis",
        "homomorphism basis identity",
        basis_identity,
    ),
    (
        5,
        "treewidth-games",
        "cop number equals treewidth plus one",
        cops_vs_width,
    ),
    (6, "cfi", "CFI isomorphism parity", cfi_parity),
    (7, "oddo", "CFI hom gap and weak oddomorphisms", cfi_hom_gap),
    (8, "cfi", "twist isomorphisms along paths", twist_paths),
    (9, "oddo", "oddomorphisms onto minors", minor_transfer),
    (10, "wl-refine", "WL sanity", wl_sanity),
];

pub fn run_check(id: u8, config: &SuiteConfig) -> Option<CheckResult> {
    let &(id, module, name, check) = CHECKS.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (status, detail) = match check(config) {
        Ok(r) => r,
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    Some(CheckResult {
        id,
        module,
        name,
        status,
        detail,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

pub fn corpus_run(config: &SuiteConfig) -> BatchReport {
    let results: Vec<CheckResult> = CHECKS
        .iter()
        .filter(|c| {
            config
                .modules
                .as_ref()
                .is_none_or(|ms| ms.iter().any(|m| m == c.1))
        })
        .filter_map(|c| run_check(c.0, config))
        .collect();
    let count = |s: Status| results.iter().filter(|r| r.status == s).count();
    BatchReport {
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        inconclusive: count(Status::Inconclusive),
        results,
    }
}

fn verdict(ok: bool, detail: String) -> Result<(Status, String)> {
    Ok((if ok { Status::Pass } else { Status::Fail }, detail))
}

fn two_triangles() -> Graph {
    disjoint_union(&[Graph::complete(3), Graph::complete(3)]).0
}

fn triangle_witness(_: &SuiteConfig) -> Result<(Status, String)> {
    let f = Graph::complete(3);
    let r = audit(&f, 1, DEFAULT_BUDGET)?;
    let Some(w) = r.witness.filter(|_| r.verdict == Verdict::NotInvariant) else {
        return verdict(false, format!("verdict {:?} without witness", r.verdict));
    };
    let (g, h) = (parse_graph6(&w.g)?, parse_graph6(&w.h)?);
    let shapes = are_isomorphic(&g, &two_triangles()) && are_isomorphic(&h, &Graph::cycle(6));
    let counts = (sub_count_bruteforce(&f, &g)?, sub_count_bruteforce(&f, &h)?);
    let counts_ok = counts.0 == 2u32.into() && counts.1 == 0u32.into();
    let wl1 = wl_distinguishes(&g, &h, 1)?;
    let wl2 = wl_distinguishes(&g, &h, 2)?;
    verdict(
        shapes && counts_ok && !wl1 && wl2,
        format!(
            "G={} H={} sub={}/{} 1-WL distinguishes={wl1} 2-WL distinguishes={wl2}",
            w.g, w.h, counts.0, counts.1
        ),
    )
}

fn k4_witness(_: &SuiteConfig) -> Result<(Status, String)> {
    let f = Graph::complete(4);
    let r = audit(&f, 2, DEFAULT_BUDGET)?;
    let Some(w) = r.witness.filter(|_| r.verdict == Verdict::NotInvariant) else {
        return verdict(false, format!("verdict {:?} without witness", r.verdict));
    };
    let (g, h) = (parse_graph6(&w.g)?, parse_graph6(&w.h)?);
    let (plain, twisted) = cfi_pair(&f)?;
    let twins = are_isomorphic(&g, &plain.graph) && are_isomorphic(&h, &twisted.graph);
    let sizes = g.n() == 16 && h.n() == 16;
    let wl2 = wl_distinguishes(&g, &h, 2)?;
    let wl3 = wl_distinguishes(&g, &h, 3)?;
    let (hg, hh) = (hom_count(&f, &g)?, hom_count(&f, &h)?);
    verdict(
        twins && sizes && !wl2 && wl3 && hg > hh && verify_witness(&f, 2, &g, &h)?,
        format!(
            "16-vertex twins={twins} 2-WL distinguishes={wl2} 3-WL distinguishes={wl3} hom(K4,CFI)={hg} hom(K4,CFI~)={hh} sub={}/{}",
            w.sub_g, w.sub_h
        ),
    )
}

fn cycle_htw(_: &SuiteConfig) -> Result<(Status, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for l in 3..=7 {
        let s = spasm(&Graph::cycle(l))?;
        let w = htw_of(&s)?;
        let listing: Vec<String> = s
            .graphs()
            .map(|g| {
                Ok(format!(
                    "{}:tw{}",
                    crate::format::emit_graph6(g)?,
                    treewidth_exact(g)?.0
                ))
            })
            .collect::<Result<_>>()?;
        let expected_ok = if l <= 6 { w <= 2 } else { w == 3 };
        ok &= expected_ok;
        parts.push(format!("htw(C{l})={w} [{}]", listing.join(" ")));
    }
    verdict(ok, parts.join("; "))
}

fn basis_identity(config: &SuiteConfig) -> Result<(Status, String)> {
    let patterns: Vec<&Graph> = config.corpus.small.iter().filter(|g| g.n() <= 5).collect();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for f in &patterns {
        let basis = basis_of(&spasm(f)?)?;
        for g in &config.corpus.targets {
            checked += 1;
            let expected = sub_count_bruteforce(f, g)?;
            let got = basis.evaluate(g)?;
            if got != num_rational::BigRational::from_integer(expected.clone().into()) {
                mismatches.push(format!("f={:?} g={:?}: {got} vs {expected}", f, g));
            }
        }
    }
    verdict(
        mismatches.is_empty() && checked >= 50 * patterns.len(),
        format!(
            "{} patterns x {} targets, {} mismatches{}",
            patterns.len(),
            config.corpus.targets.len(),
            mismatches.len(),
            mismatches
                .first()
                .map(|m| format!("; first: {m}"))
                .unwrap_or_default()
        ),
    )
}

fn cops_vs_width(config: &SuiteConfig) -> Result<(Status, String)> {
    let graphs = config.corpus.connected_up_to(8);
    let mut mismatches = 0;
    for g in &graphs {
        let (tw, _) = treewidth_exact(g)?;
        if min_cops(g)? != tw + 1 {
            mismatches += 1;
        }
    }
    verdict(
        mismatches == 0 && graphs.len() >= 100,
        format!("{} connected graphs, {mismatches} mismatches", graphs.len()),
    )
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

/// Every twist set is placed in one of the two classes represented by the
/// empty set and `{0}`, with both memberships tested. The verdict for a pair
/// of twist sets then follows from transitivity.
fn cfi_parity(config: &SuiteConfig) -> Result<(Status, String)> {
    let bases = config.corpus.cfi_bases_up_to(5);
    let mut pairs = 0u64;
    let mut mismatches = Vec::new();
    for base in &bases {
        let even = cfi_build(base, &[])?;
        let odd = cfi_build(base, &[0])?;
        if are_isomorphic(&even.graph, &odd.graph) {
            mismatches.push(format!("{base:?}: representatives isomorphic"));
            continue;
        }
        let mut class = Vec::new();
        for u in subsets(base.n()) {
            let c = cfi_build(base, &u)?;
            let with_even = are_isomorphic(&c.graph, &even.graph);
            let with_odd = are_isomorphic(&c.graph, &odd.graph);
            let expected_even = u.len() % 2 == 0;
            if with_even == with_odd || with_even != expected_even {
                mismatches.push(format!("{base:?} U={u:?}"));
            }
            class.push(with_even);
        }
        let sets: Vec<Vec<usize>> = subsets(base.n()).collect();
        for (i, a) in sets.iter().enumerate() {
            for (j, b) in sets.iter().enumerate().skip(i) {
                pairs += 1;
                let iso = class[i] == class[j];
                if iso != (a.len() % 2 == b.len() % 2) {
                    mismatches.push(format!("{base:?} U={a:?} U'={b:?}"));
                }
            }
        }
    }
    verdict(
        mismatches.is_empty(),
        format!(
            "{} bases, {pairs} twist-set pairs, {} mismatches{}",
            bases.len(),
            mismatches.len(),
            mismatches
                .first()
                .map(|m| format!("; first: {m}"))
                .unwrap_or_default()
        ),
    )
}

fn cfi_hom_gap(config: &SuiteConfig) -> Result<(Status, String)> {
    let patterns: Vec<&Graph> = config.corpus.small.iter().filter(|g| g.n() <= 5).collect();
    let bases = config.corpus.cfi_bases_up_to(4);
    let (mut strict, mut unknown, mut violations) = (0, 0, Vec::new());
    for f in &patterns {
        for g in &bases {
            let r = hom_gap_report(f, g, config.budget)?;
            if r.is_violation() {
                violations.push(format!("f={f:?} g={g:?}"));
            }
            if r.biconditional.is_none() {
                unknown += 1;
            }
            strict += r.strict as usize;
        }
    }
    let detail = format!(
        "{} patterns x {} bases, {strict} strict gaps, {} violations, {unknown} incomplete searches",
        patterns.len(),
        bases.len(),
        violations.len()
    );
    if !violations.is_empty() {
        return verdict(false, detail);
    }
    Ok((
        if unknown > 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        },
        detail,
    ))
}

fn simple_paths(g: &Graph, u: usize, v: usize) -> Vec<Vec<usize>> {
    fn go(g: &Graph, v: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().expect("path starts at u");
        if last == v {
            out.push(path.clone());
            return;
        }
        for &w in g.neighbors(last) {
            if !path.contains(&w) {
                path.push(w);
                go(g, v, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, v, &mut vec![u], &mut out);
    out
}

fn twist_paths(config: &SuiteConfig) -> Result<(Status, String)> {
    let bases = config.corpus.cfi_bases_up_to(5);
    let mut triples = 0;
    let mut failures = Vec::new();
    for base in &bases {
        for u in 0..base.n() {
            for v in 0..base.n() {
                for path in simple_paths(base, u, v) {
                    triples += 1;
                    let t = twist_isomorphism(base, u, v, &path)?;
                    let mut ok = t.map.is_isomorphism(&t.from.graph, &t.to.graph);
                    for (x, &cv) in t.from.vertices.iter().enumerate() {
                        let image: CfiVertex = t.to.vertices[t.map.apply(x)];
                        // gadgets map onto gadgets, off-path vertices are fixed
                        ok &= image.base == cv.base;
                        if !path.contains(&cv.base) {
                            ok &= image == cv;
                        }
                    }
                    let reverse: Vec<usize> = path.iter().rev().copied().collect();
                    let back = twist_isomorphism(base, v, u, &reverse)?;
                    ok &= t.map.then(&back.map)?.is_identity();
                    if !ok {
                        failures.push(format!("{base:?} path {path:?}"));
                    }
                }
            }
        }
    }
    verdict(
        failures.is_empty(),
        format!(
            "{triples} (base, u, v, path) triples over {} bases, {} failures",
            bases.len(),
            failures.len()
        ),
    )
}

fn minor_transfer(config: &SuiteConfig) -> Result<(Status, String)> {
    let patterns: Vec<&Graph> = config.corpus.small.iter().filter(|g| g.n() <= 5).collect();
    let bases = config.corpus.cfi_bases_up_to(4);
    let (mut instances, mut found, mut unknown) = (0, 0, 0);
    let mut failures = Vec::new();
    for g in &bases {
        let targets: Vec<Graph> = minors(g)?.into_iter().filter(|h| h.n() > 0).collect();
        for f in &patterns {
            if find_weak_oddomorphism(f, g, config.budget)?
                .found()
                .is_none()
            {
                continue;
            }
            for g_minor in &targets {
                instances += 1;
                match minor_oddomorphism_check(f, g, g_minor, config.budget)? {
                    Search::Found(_) => found += 1,
                    Search::None => failures.push(format!("f={f:?} g={g:?} g'={g_minor:?}")),
                    Search::Unknown { .. } => unknown += 1,
                }
            }
        }
    }
    let detail = format!(
        "{instances} instances, {found} minors found, {} complete-search failures, {unknown} incomplete",
        failures.len()
    );
    if !failures.is_empty() || instances < 20 {
        return verdict(false, detail);
    }
    Ok((
        if unknown > 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        },
        detail,
    ))
}

fn wl_sanity(config: &SuiteConfig) -> Result<(Status, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut problems = Vec::new();
    let mut iso_pairs = 0;
    for g in config.corpus.all() {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rng);
        let h = g.relabel(&perm)?;
        debug_assert!(is_isomorphic(g, &h).is_some());
        iso_pairs += 1;
        for k in 1..=3 {
            if wl_distinguishes(g, &h, k)? {
                problems.push(format!("{k}-WL separates a relabelling of {g:?}"));
            }
        }
    }
    let small = &config.corpus.small;
    let mut pairs = 0;
    for (i, g) in small.iter().enumerate() {
        for h in &small[i + 1..] {
            if g.n() != h.n() {
                continue;
            }
            pairs += 1;
            let d: Vec<bool> = (1..=3)
                .map(|k| wl_distinguishes(g, h, k))
                .collect::<Result<_>>()?;
            if d.windows(2).any(|w| w[0] && !w[1]) {
                problems.push(format!("not monotone on {g:?} / {h:?}: {d:?}"));
            }
        }
    }
    let c6 = Graph::cycle(6);
    let flip =
        !wl_distinguishes(&c6, &two_triangles(), 1)? && wl_distinguishes(&c6, &two_triangles(), 2)?;
    if !flip {
        problems.push("C6 / 2K3 do not flip between k = 1 and k = 2".into());
    }
    verdict(
        problems.is_empty(),
        format!(
            "{iso_pairs} relabelled graphs at k = 1..3, {pairs} same-order pairs for monotonicity, C6/2K3 flip = {flip}, {} problems",
            problems.len()
        ),
    )
}
