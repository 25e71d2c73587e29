//! Random instances for sampling-based checks.

use alloc::vec::Vec;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braced::BracedTriangulation;
use crate::enumerate::non_edges;
use crate::graph::Graph;
use crate::surface::{Triangulation, Vertex};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Grows a triangulation on `n >= 4` vertices from the tetrahedron by random splits.
pub fn random_triangulation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Triangulation {
    assert!(n >= 4, "triangulations with random splits start at 4 vertices");
    let mut t = Triangulation::tetrahedron();
    while t.n() < n {
        let v1 = rng.random_range(0..t.n()) as Vertex;
        let r = t.neighbors(v1);
        let i = rng.random_range(0..r.len());
        let mut j = rng.random_range(0..r.len() - 1);
        if j >= i {
            j += 1;
        }
        t = t.split_unchecked(v1, r[i], r[j]);
    }
    t
}

/// A random triangulation on `n` vertices with `b` distinct random braces.
/// Returns `None` when `n` is too small to host `b` braces.
pub fn random_braced<R: Rng + ?Sized>(n: usize, b: usize, rng: &mut R) -> Option<BracedTriangulation> {
    let t = random_triangulation(n, rng);
    let ne = non_edges(&t);
    if ne.len() < b {
        return None;
    }
    let braces: Vec<_> = ne.choose_multiple(rng, b).copied().collect();
    Some(BracedTriangulation::new(t, braces).expect("non-edges are valid braces"))
}

/// A doubly braced triangulation with between 6 and `n_max` vertices.
pub fn random_doubly_braced<R: Rng + ?Sized>(n_max: usize, rng: &mut R) -> BracedTriangulation {
    assert!(n_max >= 6);
    let n = rng.random_range(6..=n_max);
    random_braced(n, 2, rng).expect("six or more vertices leave two non-edges")
}

/// A random 3-dimensional vertex split of `g`: a vertex `v1` of degree at
/// least 2, two of its neighbours `v2`, `v3`, and a random subset of the rest moved.
pub fn random_split_3d<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Graph {
    let adj = g.adjacency();
    let candidates: Vec<Vertex> = (0..g.n() as Vertex).filter(|&v| adj[v as usize].len() >= 2).collect();
    let v1 = *candidates.choose(rng).expect("graph has a vertex of degree two");
    let mut nb = adj[v1 as usize].clone();
    nb.shuffle(rng);
    let (v2, v3) = (nb[0], nb[1]);
    let moved: Vec<Vertex> = nb[2..].iter().copied().filter(|_| rng.random_bool(0.5)).collect();
    g.vertex_split_3d(v1, v2, v3, &moved).expect("split data taken from the graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let mut rng = rng_from_seed(1);
        for n in 4..30 {
            let t = random_triangulation(n, &mut rng);
            assert_eq!(t.n(), n);
            t.validate().unwrap();
        }
        let g = random_doubly_braced(25, &mut rng);
        assert_eq!(g.b(), 2);
        assert!(random_braced(4, 1, &mut rng).is_none());
        let h = random_split_3d(&g.graph(), &mut rng);
        assert_eq!(h.num_edges(), g.graph().num_edges() + 3);
    }
}
