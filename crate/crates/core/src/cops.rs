//! Cops-and-robber game on a graph, solved as a greatest fixpoint.
//!
//! A position is the set of occupied cop vertices together with the robber's
//! component in the graph minus that set. In one round the cops lift one cop
//! (or use a spare one when fewer than `k` vertices are occupied) and announce
//! its landing vertex; the robber then runs anywhere inside the component of the
//! graph minus the remaining cops and must avoid the landing vertex.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const COPS_VERTEX_LIMIT: usize = 12;

/// Cop positions and the robber vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopsPosition {
    pub cops: Vec<usize>,
    pub robber: usize,
}

struct Arena {
    n: usize,
    adj: Vec<u32>,
}

impl Arena {
    /// Components of the graph minus `blocked`, as vertex masks.
    fn components(&self, blocked: u32) -> Vec<u32> {
        let all = if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        };
        let mut free = all & !blocked;
        let mut out = Vec::new();
        while free != 0 {
            let start = free & free.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let x = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let nb = self.adj[x] & free & !comp;
                comp |= nb;
                frontier |= nb;
            }
            free &= !comp;
            out.push(comp);
        }
        out
    }
}

/// Solved game: which positions the robber survives from.
pub struct CopsGame {
    k: usize,
    n: usize,
    arena: Option<Arena>,
    index: HashMap<(u32, u32), usize>,
    comps_of: HashMap<u32, Vec<u32>>,
    safe: Vec<bool>,
}

impl CopsGame {
    pub fn solve(g: &Graph, k: usize) -> Result<Self> {
        let n = g.n();
        if n > COPS_VERTEX_LIMIT {
            return Err(Error::TooLarge {
                what: "cops-and-robber arena",
                size: n as u64,
                limit: COPS_VERTEX_LIMIT as u64,
            });
        }
        let mut game = CopsGame {
            k,
            n,
            arena: None,
            index: HashMap::new(),
            comps_of: HashMap::new(),
            safe: Vec::new(),
        };
        if k == 0 || k >= n {
            return Ok(game);
        }
        let arena = Arena {
            n,
            adj: (0..n)
                .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
                .collect(),
        };

        // cop sets with 1..=k vertices and their components
        let mut states: Vec<(u32, u32)> = Vec::new();
        for cops in 1u32..(1 << n) {
            if cops.count_ones() as usize > k {
                continue;
            }
            let comps = arena.components(cops);
            for &c in &comps {
                game.index.insert((cops, c), states.len());
                states.push((cops, c));
            }
            game.comps_of.insert(cops, comps);
        }
        let mut comps_cache: HashMap<u32, Vec<u32>> = HashMap::new();
        let mut components = |blocked: u32| -> Vec<u32> {
            comps_cache
                .entry(blocked)
                .or_insert_with(|| arena.components(blocked))
                .clone()
        };

        // robber-safe positions, shrunk until stable
        let mut safe = vec![true; states.len()];
        loop {
            let mut changed = false;
            for (s, &(cops, region)) in states.iter().enumerate() {
                if !safe[s] {
                    continue;
                }
                let mut lifts: Vec<u32> = (0..n)
                    .filter(|&c| cops & (1 << c) != 0)
                    .map(|c| cops & !(1 << c))
                    .collect();
                if (cops.count_ones() as usize) < k {
                    lifts.push(cops);
                }
                let cops_have_win = lifts.into_iter().any(|remaining| {
                    let run_area = components(remaining)
                        .into_iter()
                        .find(|&c| c & region != 0)
                        .expect("robber region avoids the remaining cops");
                    (0..n).any(|land| {
                        let next = remaining | (1 << land);
                        // every escape component is already lost for the robber
                        game.comps_of[&next]
                            .iter()
                            .filter(|&&c| c & run_area != 0)
                            .all(|&c| !safe[game.index[&(next, c)]])
                    })
                });
                if cops_have_win {
                    safe[s] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        game.safe = safe;
        game.arena = Some(arena);
        Ok(game)
    }

    /// The cops pick a start set, then the robber picks any free vertex.
    pub fn cops_win(&self) -> bool {
        if self.k >= self.n {
            return true;
        }
        if self.k == 0 {
            return false;
        }
        self.comps_of
            .iter()
            .any(|(&cops, comps)| comps.iter().all(|&c| !self.safe[self.index[&(cops, c)]]))
    }

    /// Whether the robber survives from a live position.
    pub fn robber_wins_from(&self, pos: &CopsPosition) -> Result<bool> {
        for &v in pos.cops.iter().chain([&pos.robber]) {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
        }
        if pos.cops.len() > self.k {
            return Err(Error::InvalidMap(format!(
                "{} cops placed in a game with {}",
                pos.cops.len(),
                self.k
            )));
        }
        if pos.cops.contains(&pos.robber) {
            return Ok(false);
        }
        let Some(arena) = &self.arena else {
            return Ok(self.k == 0);
        };
        let cops = pos.cops.iter().fold(0u32, |m, &c| m | (1 << c));
        if cops == 0 {
            return Ok(true);
        }
        let region = arena
            .components(cops)
            .into_iter()
            .find(|&c| c & (1 << pos.robber) != 0)
            .expect("robber is on a free vertex");
        Ok(self.safe[self.index[&(cops, region)]])
    }
}

/// Whether `k` cops catch the robber on `g`.
pub fn cops_win(g: &Graph, k: usize) -> Result<bool> {
    Ok(CopsGame::solve(g, k)?.cops_win())
}

/// Smallest number of cops with a winning strategy.
pub fn min_cops(g: &Graph) -> Result<usize> {
    for k in 1..=g.n().max(1) {
        if cops_win(g, k)? {
            return Ok(k);
        }
    }
    Ok(g.n().max(1))
}
