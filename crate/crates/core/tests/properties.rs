mod common;

use braced_core::braced::replay;
use braced_core::linalg::{kernel_basis, numeric_rank, DMatrix, DEFAULT_TOL};
use braced_core::mixed_norm::{edge_row, norm2p};
use braced_core::random::{random_braced, random_triangulation, rng_from_seed};
use braced_core::surface::edge;
use braced_core::{are_isomorphic, brute_force_34, canonical_code, check_34, BracedTriangulation, Graph, Vertex};
use common::brute_isomorphic;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn random_perm(n: usize, seed: u64) -> Vec<Vertex> {
    let mut p: Vec<Vertex> = (0..n as Vertex).collect();
    p.shuffle(&mut rng_from_seed(seed));
    p
}

fn relabeled(g: &BracedTriangulation, perm: &[Vertex]) -> BracedTriangulation {
    let braces = g.braces().iter().map(|&(a, b)| edge(perm[a as usize], perm[b as usize]));
    BracedTriangulation::new(g.tri().relabel(perm), braces).unwrap()
}

fn random_graph(n: usize, density: f64, seed: u64) -> Graph {
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for a in 0..n as Vertex {
        for b in a + 1..n as Vertex {
            if rng.random_bool(density) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

fn low_rank(rows: usize, cols: usize, k: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = rng_from_seed(seed);
    let b = DMatrix::from_fn(rows, k, |_, _| rng.random_range(-1.0..1.0));
    let c = DMatrix::from_fn(k, cols, |_, _| rng.random_range(-1.0..1.0));
    b * c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn code_invariant_under_relabel_and_mirror(n in 6usize..16, b in 0usize..3, seed: u64, pseed: u64) {
        let g = random_braced(n, b, &mut rng_from_seed(seed)).unwrap();
        let h = relabeled(&g, &random_perm(n, pseed));
        prop_assert_eq!(g.canonical_code(), h.canonical_code());
        let m = canonical_code(&g.tri().mirror(), g.braces()).unwrap();
        prop_assert_eq!(g.canonical_code(), m);
    }

    #[test]
    fn contraction_then_split_restores(n in 6usize..18, b in 0usize..3, seed: u64) {
        let mut rng = rng_from_seed(seed);
        let g = random_braced(n, b, &mut rng).unwrap();
        let (base, trace) = g.reduce_with(|es| rng.random_range(0..es.len()));
        prop_assert!(base.is_irreducible());
        prop_assert_eq!(replay(&base, &trace).unwrap(), g);
    }

    #[test]
    fn iso_matches_brute_force(n in 5usize..8, b in 1usize..3, s1: u64, s2: u64, same: bool) {
        let Some(g) = random_braced(n, b, &mut rng_from_seed(s1)) else { return Ok(()) };
        let h = if same {
            relabeled(&g, &random_perm(n, s2))
        } else {
            match random_braced(n, b, &mut rng_from_seed(s2)) {
                Some(h) => h,
                None => return Ok(()),
            }
        };
        let fast = are_isomorphic(g.tri(), g.braces(), h.tri(), h.braces());
        prop_assert_eq!(fast, brute_isomorphic(&g, &h));
        if same {
            prop_assert!(fast);
        }
    }

    #[test]
    fn pebble_game_matches_subsets(n in 2usize..=10, density in 0.2f64..0.95, seed: u64) {
        let g = random_graph(n, density, seed);
        let fast = check_34(&g);
        let slow = brute_force_34(&g).unwrap();
        prop_assert_eq!(fast.sparse, slow.sparse);
        prop_assert_eq!(fast.tight, slow.tight);
        if let Some(w) = fast.witness {
            prop_assert!(braced_core::sparsity::induced_edge_count(&g, &w) + 4 > 3 * w.len());
        }
    }

    #[test]
    fn rank_stable_under_row_ops(rows in 2usize..12, cols in 2usize..12, k in 1usize..6, seed: u64, scale in 0.1f64..10.0) {
        let k = k.min(rows).min(cols);
        let m = low_rank(rows, cols, k, seed);
        let r = numeric_rank(&m, DEFAULT_TOL).unwrap();
        let perm = random_perm(rows, seed ^ 1);
        let pm = DMatrix::from_fn(rows, cols, |i, j| scale * m[(perm[i] as usize, j)]);
        let pr = numeric_rank(&pm, DEFAULT_TOL).unwrap();
        prop_assert_eq!(r.rank, pr.rank);
        prop_assert!(r.is_confident() && pr.is_confident());
        for i in 0..k {
            let (a, b) = (scale * r.singular_values[i], pr.singular_values[i]);
            prop_assert!((a - b).abs() <= 1e-10 * a);
        }
        prop_assert_eq!(r.rank + kernel_basis(&m, DEFAULT_TOL).unwrap().len(), cols);
    }

    #[test]
    fn edge_rows_antisymmetric(a in prop::array::uniform3(-2.0f64..2.0), c in prop::array::uniform3(-2.0f64..2.0), p in 1.1f64..5.0) {
        prop_assume!(a != c);
        let fwd = edge_row(a, c, p).unwrap();
        let back = edge_row(c, a, p).unwrap();
        for i in 0..3 {
            prop_assert!((fwd[i] + back[i]).abs() <= 1e-12 * (1.0 + fwd[i].abs()));
        }
        let e = edge_row(a, c, 2.0).unwrap();
        for i in 0..3 {
            prop_assert!((e[i] - (a[i] - c[i])).abs() < 1e-12);
        }
    }

    // the row is the gradient of ‖q_v − q_w‖^p scaled by 1 / (p d^{p−2})
    #[test]
    fn edge_row_is_scaled_gradient(v in prop::array::uniform3(-2.0f64..2.0), p in 1.2f64..5.0) {
        let d = v[0].hypot(v[1]);
        prop_assume!(d > 0.1 && v[2].abs() > 0.1);
        let f = |w: [f64; 3]| norm2p(w, p).unwrap().powf(p);
        let row = edge_row(v, [0.0; 3], p).unwrap();
        let h = 1e-6;
        for i in 0..3 {
            let (mut hi, mut lo) = (v, v);
            hi[i] += h;
            lo[i] -= h;
            let fd = (f(hi) - f(lo)) / (2.0 * h);
            let exact = p * d.powf(p - 2.0) * row[i];
            prop_assert!((fd - exact).abs() <= 1e-5 * (1.0 + exact.abs()), "{} {}", fd, exact);
        }
    }

    #[test]
    fn random_triangulations_are_valid(n in 4usize..40, seed: u64) {
        let t = random_triangulation(n, &mut rng_from_seed(seed));
        prop_assert!(t.validate().is_ok());
        prop_assert_eq!(t.num_edges(), 3 * n - 6);
        prop_assert_eq!(t.faces().len(), 2 * n - 4);
    }
}
