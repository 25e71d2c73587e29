//! (3,4)-sparsity and tightness via the pebble game, plus an exhaustive oracle.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::Graph;
use crate::surface::Vertex;

const K: usize = 3;
const L: usize = 4;

/// Largest vertex count accepted by [`brute_force_34`].
pub const BRUTE_FORCE_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SparsityError {
    #[error("{0} vertices exceeds the exhaustive check limit of {BRUTE_FORCE_LIMIT}")]
    SizeGuardExceeded(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsityVerdict {
    pub tight: bool,
    pub sparse: bool,
    /// Vertex set spanning more than `3|V'| - 4` edges, when not sparse.
    pub witness: Option<Vec<Vertex>>,
}

impl SparsityVerdict {
    fn new(g: &Graph, witness: Option<Vec<Vertex>>) -> Self {
        let sparse = witness.is_none();
        let tight = sparse && 3 * g.n() >= L && g.num_edges() == 3 * g.n() - L;
        SparsityVerdict { tight, sparse, witness }
    }
}

struct PebbleGame {
    pebbles: Vec<usize>,
    out: Vec<Vec<Vertex>>,
    seen: Vec<bool>,
    parent: Vec<Vertex>,
    stack: Vec<Vertex>,
}

impl PebbleGame {
    fn new(n: usize) -> Self {
        PebbleGame {
            pebbles: vec![K; n],
            out: vec![Vec::new(); n],
            seen: vec![false; n],
            parent: vec![0; n],
            stack: Vec::new(),
        }
    }

    /// Moves one free pebble to `u` along a reversed path, never passing
    /// through `keep`. Returns false if no pebble is reachable.
    fn fetch(&mut self, u: Vertex, keep: Vertex) -> bool {
        self.seen.iter_mut().for_each(|s| *s = false);
        self.seen[u as usize] = true;
        self.seen[keep as usize] = true;
        self.stack.clear();
        self.stack.push(u);
        while let Some(x) = self.stack.pop() {
            for i in 0..self.out[x as usize].len() {
                let y = self.out[x as usize][i];
                if self.seen[y as usize] {
                    continue;
                }
                self.seen[y as usize] = true;
                self.parent[y as usize] = x;
                if self.pebbles[y as usize] > 0 {
                    // reverse the path u -> ... -> y
                    self.pebbles[y as usize] -= 1;
                    let mut w = y;
                    while w != u {
                        let p = self.parent[w as usize];
                        let pos = self.out[p as usize].iter().position(|&z| z == w).unwrap();
                        self.out[p as usize].swap_remove(pos);
                        self.out[w as usize].push(p);
                        w = p;
                    }
                    self.pebbles[u as usize] += 1;
                    return true;
                }
                self.stack.push(y);
            }
        }
        false
    }

    /// Tries to gather five pebbles on `u`, `v` and accept the edge.
    fn insert(&mut self, u: Vertex, v: Vertex) -> bool {
        while self.pebbles[u as usize] + self.pebbles[v as usize] < L + 1 {
            let got = if self.pebbles[u as usize] < K && self.fetch(u, v) {
                true
            } else {
                self.pebbles[v as usize] < K && self.fetch(v, u)
            };
            if !got {
                return false;
            }
        }
        self.pebbles[u as usize] -= 1;
        self.out[u as usize].push(v);
        true
    }

    fn reach(&mut self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        self.seen.iter_mut().for_each(|s| *s = false);
        self.stack.clear();
        for s in [u, v] {
            self.seen[s as usize] = true;
            self.stack.push(s);
        }
        while let Some(x) = self.stack.pop() {
            for &y in &self.out[x as usize] {
                if !self.seen[y as usize] {
                    self.seen[y as usize] = true;
                    self.stack.push(y);
                }
            }
        }
        (0..self.seen.len() as Vertex).filter(|&x| self.seen[x as usize]).collect()
    }
}

/// Decides (3,4)-sparsity and tightness with the (3,4) pebble game.
pub fn check_34(g: &Graph) -> SparsityVerdict {
    let mut game = PebbleGame::new(g.n());
    for &(u, v) in g.edges() {
        if !game.insert(u, v) {
            let w = game.reach(u, v);
            return SparsityVerdict::new(g, Some(w));
        }
    }
    SparsityVerdict::new(g, None)
}

/// Checks every vertex subset directly; for at most [`BRUTE_FORCE_LIMIT`] vertices.
pub fn brute_force_34(g: &Graph) -> Result<SparsityVerdict, SparsityError> {
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(SparsityError::SizeGuardExceeded(n));
    }
    let masks: Vec<u32> = g.edges().iter().map(|&(a, b)| (1u32 << a) | (1u32 << b)).collect();
    for s in 1u32..(1u32 << n) {
        let size = s.count_ones() as usize;
        if size < 2 {
            continue;
        }
        let inside = masks.iter().filter(|&&m| m & s == m).count();
        if inside > 3 * size - L {
            let w = (0..n as Vertex).filter(|&x| s & (1 << x) != 0).collect();
            return Ok(SparsityVerdict::new(g, Some(w)));
        }
    }
    Ok(SparsityVerdict::new(g, None))
}

/// Number of edges of `g` with both ends in `vs`.
pub fn induced_edge_count(g: &Graph, vs: &[Vertex]) -> usize {
    g.edges().iter().filter(|&&(a, b)| vs.contains(&a) && vs.contains(&b)).count()
}
