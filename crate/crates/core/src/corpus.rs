//! Bundled graph corpus.
//!
//! * `small.g6`: every graph on 1 to 5 vertices up to isomorphism (52).
//! * `connected6.g6`: every connected graph on 6 vertices (112).
//! * `connected78.g6`: seeded random connected graphs on 7 and 8 vertices.
//! * `targets.g6`: 50 seeded random graphs on at most 7 vertices.
//!
//! The files are compiled in; setting `HOMLAB_CORPUS` to a directory holding
//! files of the same names overrides them.

use std::collections::HashMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::format::read_graph6_lines;
use crate::graph::Graph;
use crate::iso::are_isomorphic;

pub const CORPUS_ENV: &str = "HOMLAB_CORPUS";

const FILES: [(&str, &str); 4] = [
    ("small.g6", include_str!("../corpus/small.g6")),
    ("connected6.g6", include_str!("../corpus/connected6.g6")),
    ("connected78.g6", include_str!("../corpus/connected78.g6")),
    ("targets.g6", include_str!("../corpus/targets.g6")),
];

#[derive(Clone, Debug)]
pub struct Corpus {
    pub small: Vec<Graph>,
    pub connected6: Vec<Graph>,
    pub connected78: Vec<Graph>,
    pub targets: Vec<Graph>,
}

impl Corpus {
    /// Bundled corpus, or the directory named by `HOMLAB_CORPUS`.
    pub fn load() -> Result<Corpus> {
        match std::env::var_os(CORPUS_ENV) {
            Some(dir) => Corpus::from_dir(Path::new(&dir)),
            None => Corpus::bundled(),
        }
    }

    pub fn bundled() -> Result<Corpus> {
        Corpus::from_texts(FILES.map(|(_, text)| text.to_string()))
    }

    pub fn from_dir(dir: &Path) -> Result<Corpus> {
        let mut texts = Vec::with_capacity(FILES.len());
        for (name, _) in FILES {
            texts.push(std::fs::read_to_string(dir.join(name))?);
        }
        Corpus::from_texts(texts.try_into().expect("one text per file"))
    }

    fn from_texts(texts: [String; 4]) -> Result<Corpus> {
        let [small, connected6, connected78, targets] = texts;
        Ok(Corpus {
            small: read_graph6_lines(&small)?,
            connected6: read_graph6_lines(&connected6)?,
            connected78: read_graph6_lines(&connected78)?,
            targets: read_graph6_lines(&targets)?,
        })
    }

    /// Every corpus graph, small ones first.
    pub fn all(&self) -> impl Iterator<Item = &Graph> {
        self.small
            .iter()
            .chain(&self.connected6)
            .chain(&self.connected78)
    }

    /// Connected graphs with at most `n` vertices.
    pub fn connected_up_to(&self, n: usize) -> Vec<&Graph> {
        self.all()
            .filter(|g| g.n() <= n && g.n() > 0 && g.is_connected())
            .collect()
    }

    /// Connected graphs on `2..=n` vertices (so without isolated vertices).
    pub fn cfi_bases_up_to(&self, n: usize) -> Vec<&Graph> {
        self.connected_up_to(n)
            .into_iter()
            .filter(|g| g.n() >= 2)
            .collect()
    }
}

/// All graphs on `n` vertices up to isomorphism, in order of edge count.
pub fn enumerate_graphs(n: usize, connected_only: bool) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut buckets: HashMap<(usize, Vec<usize>, Vec<usize>), Vec<Graph>> = HashMap::new();
    let mut out = Vec::new();
    let mut masks: Vec<u64> = (0..1u64 << pairs.len()).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        let g = Graph::new(n, edges).expect("pairs are simple edges");
        if connected_only && !(n > 0 && g.is_connected()) {
            continue;
        }
        let key = (g.m(), sorted(g.degree_sequence()), neighbor_degree_key(&g));
        let bucket = buckets.entry(key).or_default();
        if bucket.iter().any(|h| are_isomorphic(h, &g)) {
            continue;
        }
        bucket.push(g.clone());
        out.push(g);
    }
    out
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

fn neighbor_degree_key(g: &Graph) -> Vec<usize> {
    sorted(
        (0..g.n())
            .map(|v| g.neighbors(v).iter().map(|&w| g.degree(w)).sum())
            .collect(),
    )
}

/// `count` pairwise non-isomorphic connected random graphs on `n` vertices.
pub fn random_connected(rng: &mut impl Rng, n: usize, count: usize) -> Vec<Graph> {
    let mut out: Vec<Graph> = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 100 * count {
        attempts += 1;
        let p = rng.gen_range(0.25..0.75);
        let g = Graph::random(rng, n, p);
        if g.is_connected() && !out.iter().any(|h| are_isomorphic(h, &g)) {
            out.push(g);
        }
    }
    out
}

/// Seeded random targets with `1..=max_n` vertices.
pub fn random_targets(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let p = rng.gen_range(0.2..0.8);
            Graph::random(&mut rng, n, p)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts_match_the_known_sequence() {
        let all: Vec<usize> = (1..=5).map(|n| enumerate_graphs(n, false).len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34]);
        let connected: Vec<usize> = (1..=5).map(|n| enumerate_graphs(n, true).len()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn bundled_files_have_expected_sizes() {
        let c = Corpus::bundled().unwrap();
        assert_eq!(c.small.len(), 52);
        assert_eq!(c.connected6.len(), 112);
        assert!(c.connected6.iter().all(|g| g.n() == 6 && g.is_connected()));
        assert_eq!(c.targets.len(), 50);
        assert!(c.targets.iter().all(|g| g.n() <= 7));
        assert!(c.connected_up_to(8).len() >= 100);
    }

    #[test]
    fn bundled_small_graphs_are_distinct() {
        let c = Corpus::bundled().unwrap();
        for (i, g) in c.small.iter().enumerate() {
            for h in &c.small[i + 1..] {
                assert!(!are_isomorphic(g, h));
            }
        }
    }
}
