//! k-dimensional Weisfeiler-Leman refinement on k-tuples of vertices.
//!
//! Tuples are encoded as integers in base `n`, entry 0 most significant. For
//! `k = 1` a vertex collects the colors of its neighbors. For `k >= 2` a tuple
//! collects, for every vertex `w`, the colors of the `k` tuples obtained by
//! writing `w` into each position in turn.
//!
//! Several graphs can be refined together. Each round the signatures of all
//! tuples of all graphs are sorted and replaced by their rank, so a color id
//! denotes the same refinement history in every graph of the run.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Upper bound on `n^k` summed over the refined graphs.
pub const TUPLE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub k: usize,
    pub n: usize,
    /// Color of every tuple, indexed by its base-`n` code.
    pub colors: Vec<u32>,
    /// Round after which the partition no longer changed.
    pub round: usize,
}

impl Coloring {
    pub fn histogram(&self) -> ColorHistogram {
        let mut counts = BTreeMap::new();
        for &c in &self.colors {
            *counts.entry(c).or_insert(0u64) += 1;
        }
        ColorHistogram { counts }
    }

    pub fn num_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    pub fn color_of(&self, tuple: &[usize]) -> u32 {
        self.colors[encode(tuple, self.n)]
    }
}

/// Multiset of colors over all k-tuples of one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorHistogram {
    pub counts: BTreeMap<u32, u64>,
}

impl ColorHistogram {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

fn encode(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &v| acc * n + v)
}

fn decode(mut code: usize, n: usize, k: usize, out: &mut [usize]) {
    for i in (0..k).rev() {
        out[i] = code % n;
        code /= n;
    }
}

fn check_budget(graphs: &[&Graph], k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidGraph(
            "WL dimension must be at least 1".into(),
        ));
    }
    let mut total: u64 = 0;
    for g in graphs {
        let size = (g.n() as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
        total = total.saturating_add(size);
    }
    if total > TUPLE_BUDGET {
        return Err(Error::TooLarge {
            what: "WL tuple count",
            size: total,
            limit: TUPLE_BUDGET,
        });
    }
    Ok(())
}

/// Atomic type of a tuple: equalities and adjacencies among its entries.
fn atomic_type(g: &Graph, tuple: &[usize]) -> Vec<u32> {
    let k = tuple.len();
    let mut t = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let (a, b) = (tuple[i], tuple[j]);
            t.push(if a == b {
                2
            } else if g.has_edge(a, b) {
                1
            } else {
                0
            });
        }
    }
    t
}

/// Replaces every signature by its rank among all distinct signatures.
fn rank<S: Ord>(sigs: Vec<Vec<S>>, sizes: &[usize]) -> (Vec<Vec<u32>>, usize) {
    let mut order: Vec<usize> = (0..sigs.len()).collect();
    order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
    let mut flat = vec![0u32; sigs.len()];
    let mut next = 0u32;
    for (i, &idx) in order.iter().enumerate() {
        if i > 0 && sigs[order[i - 1]] != sigs[idx] {
            next += 1;
        }
        flat[idx] = next;
    }
    let classes = if sigs.is_empty() {
        0
    } else {
        next as usize + 1
    };
    let mut out = Vec::with_capacity(sizes.len());
    let mut offset = 0;
    for &s in sizes {
        out.push(flat[offset..offset + s].to_vec());
        offset += s;
    }
    (out, classes)
}

/// Refines several graphs jointly until the combined partition is stable.
/// Returns one coloring per graph, all in a shared color space.
pub fn wl_joint(graphs: &[&Graph], k: usize) -> Result<Vec<Coloring>> {
    check_budget(graphs, k)?;
    let sizes: Vec<usize> = graphs.iter().map(|g| g.n().pow(k as u32)).collect();

    let mut sigs = Vec::new();
    let mut tuple = vec![0usize; k];
    for (g, &size) in graphs.iter().zip(&sizes) {
        for code in 0..size {
            decode(code, g.n(), k, &mut tuple);
            sigs.push(atomic_type(g, &tuple));
        }
    }
    let (mut colors, mut classes) = rank(sigs, &sizes);

    let mut round = 0;
    loop {
        let mut sigs: Vec<Vec<u32>> = Vec::with_capacity(sizes.iter().sum());
        for (g, col) in graphs.iter().zip(&colors) {
            if k == 1 {
                sigs.extend(one_wl_signatures(g, col));
            } else {
                sigs.extend(k_wl_signatures(g, col, k));
            }
        }
        let (next, next_classes) = rank(sigs, &sizes);
        if next_classes == classes {
            break;
        }
        colors = next;
        classes = next_classes;
        round += 1;
    }
    Ok(graphs
        .iter()
        .zip(colors)
        .map(|(g, colors)| Coloring {
            k,
            n: g.n(),
            colors,
            round,
        })
        .collect())
}

fn one_wl_signatures(g: &Graph, col: &[u32]) -> Vec<Vec<u32>> {
    (0..g.n())
        .map(|v| {
            let mut s = Vec::with_capacity(g.degree(v) + 1);
            s.push(col[v]);
            let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| col[w]).collect();
            nb.sort_unstable();
            s.extend(nb);
            s
        })
        .collect()
}

fn k_wl_signatures(g: &Graph, col: &[u32], k: usize) -> Vec<Vec<u32>> {
    let n = g.n();
    let size = col.len();
    let strides: Vec<usize> = (0..k).map(|i| n.pow((k - 1 - i) as u32)).collect();
    let mut tuple = vec![0usize; k];
    let mut entries: Vec<Vec<u32>> = Vec::with_capacity(n);
    (0..size)
        .map(|code| {
            decode(code, n, k, &mut tuple);
            entries.clear();
            for w in 0..n {
                let e: Vec<u32> = (0..k)
                    .map(|i| {
                        let sub = code - tuple[i] * strides[i] + w * strides[i];
                        col[sub]
                    })
                    .collect();
                entries.push(e);
            }
            entries.sort_unstable();
            let mut s = Vec::with_capacity(1 + n * k);
            s.push(col[code]);
            for e in entries.iter() {
                s.extend_from_slice(e);
            }
            s
        })
        .collect()
}

/// Stable k-WL coloring of a single graph.
pub fn wl_stable_coloring(g: &Graph, k: usize) -> Result<Coloring> {
    Ok(wl_joint(&[g], k)?.pop().expect("one coloring per graph"))
}

/// Outcome of comparing two graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlVerdict {
    pub k: usize,
    pub distinguished: bool,
    pub rounds: usize,
    pub colors_g: usize,
    pub colors_h: usize,
}

pub fn wl_compare(g: &Graph, h: &Graph, k: usize) -> Result<WlVerdict> {
    let cs = wl_joint(&[g, h], k)?;
    let (cg, ch) = (&cs[0], &cs[1]);
    let hg = cg.histogram();
    let hh = ch.histogram();
    Ok(WlVerdict {
        k,
        distinguished: hg != hh,
        rounds: cg.round,
        colors_g: hg.counts.len(),
        colors_h: hh.counts.len(),
    })
}

/// Whether k-WL tells `g` and `h` apart (stable color histograms differ).
pub fn wl_distinguishes(g: &Graph, h: &Graph, k: usize) -> Result<bool> {
    Ok(wl_compare(g, h, k)?.distinguished)
}
