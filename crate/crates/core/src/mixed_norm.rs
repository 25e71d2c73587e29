//! Frameworks in `R³` under the mixed norm
//! `‖(x, y, z)‖ = ((x² + y²)^{p/2} + |z|^p)^{1/p}`.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use crate::hypercyl::{RigidityReport, Verdict};
use crate::graph::Graph;
use crate::hypercyl::verdict_for;
use crate::linalg::{self, DMatrix, DVector, RankResult, DEFAULT_TOL, THRESHOLD_MARGIN};
use crate::surface::Vertex;

/// Exponents swept by default for rigidity verdicts.
pub const DEFAULT_PS: [f64; 4] = [1.5, 2.5, 3.0, 4.0];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MixedError {
    #[error("p = {0} is outside (1, ∞)")]
    BadParameter(f64),
    #[error("p = 2 is the Euclidean norm; no rigidity verdict is given there")]
    EuclideanParameter,
    #[error("coordinates of vertex {0} are not finite")]
    NonFinite(usize),
    #[error("edge {0}-{1} has coincident endpoints")]
    CoincidentEndpoints(Vertex, Vertex),
    #[error("placement has {placed} vertices but the graph has {expected}")]
    SizeMismatch { placed: usize, expected: usize },
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
}

fn check_p(p: f64) -> Result<(), MixedError> {
    if p.is_finite() && p > 1.0 {
        Ok(())
    } else {
        Err(MixedError::BadParameter(p))
    }
}

pub fn norm2p(v: [f64; 3], p: f64) -> Result<f64, MixedError> {
    check_p(p)?;
    let d2 = v[0] * v[0] + v[1] * v[1];
    Ok(libm::pow(libm::pow(d2, p / 2.0) + libm::pow(libm::fabs(v[2]), p), 1.0 / p))
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Row entries under `qv` for the edge `vw`; `qw` carries the negation.
pub fn edge_row(qv: [f64; 3], qw: [f64; 3], p: f64) -> Result<[f64; 3], MixedError> {
    check_p(p)?;
    let [x, y, z] = [qv[0] - qw[0], qv[1] - qw[1], qv[2] - qw[2]];
    if x == 0.0 && y == 0.0 && z == 0.0 {
        return Err(MixedError::CoincidentEndpoints(0, 0));
    }
    let d = libm::hypot(x, y);
    if d == 0.0 {
        return Ok([0.0, 0.0, z]);
    }
    let third = sgn(z) * libm::pow(libm::fabs(z), p - 1.0) / libm::pow(d, p - 2.0);
    Ok([x, y, third])
}

/// Points of `R³`, one per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement3 {
    coords: Vec<[f64; 3]>,
}

impl Placement3 {
    pub fn new(coords: Vec<[f64; 3]>) -> Result<Self, MixedError> {
        if let Some(i) = coords.iter().position(|c| c.iter().any(|x| !x.is_finite())) {
            return Err(MixedError::NonFinite(i));
        }
        Ok(Placement3 { coords })
    }

    pub fn coords(&self) -> &[[f64; 3]] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Each coordinate uniform on `[-1, 1]`.
pub fn random_placement(n: usize, seed: u64) -> Placement3 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n)
        .map(|_| core::array::from_fn(|_| rng.random_range(-1.0..=1.0)))
        .collect();
    Placement3 { coords }
}

/// At least two distinct projections to the `xy`-plane.
pub fn is_full(q: &Placement3) -> bool {
    match q.coords.first() {
        Some(a) => q.coords.iter().any(|b| (a[0], a[1]) != (b[0], b[1])),
        None => false,
    }
}

/// No six vertices share an `xy`-projection.
pub fn is_completely_full(q: &Placement3) -> bool {
    q.coords.iter().all(|a| {
        q.coords.iter().filter(|b| (a[0], a[1]) == (b[0], b[1])).count() < 6
    })
}

/// The rotation `v ↦ (−y_v, x_v, 0)` and the three translations.
pub fn trivial_flex_basis(q: &Placement3) -> [DVector<f64>; 4] {
    let n = q.len();
    let mut m: [DVector<f64>; 4] = core::array::from_fn(|_| DVector::zeros(3 * n));
    for (v, &[x, y, _]) in q.coords.iter().enumerate() {
        let b = 3 * v;
        m[0][b] = -y;
        m[0][b + 1] = x;
        for k in 0..3 {
            m[k + 1][b + k] = 1.0;
        }
    }
    m
}

/// The `|E| × 3|V|` matrix: `edge_row(q_u, q_v)` under `u`, its negation under `v`.
pub fn rigidity_matrix(g: &Graph, q: &Placement3, p: f64) -> Result<DMatrix<f64>, MixedError> {
    check_p(p)?;
    if g.n() != q.len() {
        return Err(MixedError::SizeMismatch { placed: q.len(), expected: g.n() });
    }
    let mut m = DMatrix::zeros(g.num_edges(), 3 * g.n());
    for (row, &(u, v)) in g.edges().iter().enumerate() {
        let r = edge_row(q.coords[u as usize], q.coords[v as usize], p)
            .map_err(|_| MixedError::CoincidentEndpoints(u, v))?;
        for k in 0..3 {
            m[(row, 3 * u as usize + k)] = r[k];
            m[(row, 3 * v as usize + k)] = -r[k];
        }
    }
    Ok(m)
}

/// Numerical rank of the equilibrated rigidity matrix, for any `p` including 2.
pub fn rank_at(g: &Graph, q: &Placement3, p: f64) -> Result<RankResult, MixedError> {
    Ok(linalg::numeric_rank(&linalg::equilibrate(&rigidity_matrix(g, q, p)?), DEFAULT_TOL)?)
}

/// Rank-based classification against `3|V| − 4`.
pub fn classify(g: &Graph, q: &Placement3, p: f64) -> Result<RigidityReport, MixedError> {
    check_p(p)?;
    if p == 2.0 {
        return Err(MixedError::EuclideanParameter);
    }
    let r = rank_at(g, q, p)?;
    let n = g.n();
    let expected = (3 * n).saturating_sub(4);
    let flexes = trivial_flex_basis(q);
    let trivial_dim = linalg::numeric_rank(&DMatrix::from_columns(&flexes), DEFAULT_TOL)?.rank;
    Ok(RigidityReport {
        rank: r.rank,
        expected_rank: expected,
        kernel_dim: 3 * n - r.rank,
        trivial_dim,
        verdict: verdict_for(is_full(q), &r, expected),
        rank_result: r,
    })
}

/// Fast sufficient test for a confident rigid verdict, valid when the graph
/// has exactly `3|V| − 4` edges. A `false` answer is inconclusive; use
/// [`classify`].
pub fn certify_rigid(g: &Graph, q: &Placement3, p: f64) -> bool {
    if p == 2.0 || g.num_edges() + 4 != 3 * g.n() || !is_full(q) {
        return false;
    }
    match rigidity_matrix(g, q, p) {
        Ok(m) => linalg::certifies_full_row_rank(&linalg::equilibrate(&m), THRESHOLD_MARGIN * DEFAULT_TOL),
        Err(_) => false,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferencePlacement {
    pub name: &'static str,
    pub graph: Graph,
    pub placement: Placement3,
}

const S: [[f64; 3]; 4] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, -1.0, 0.0]];

/// `K4 − s2s4` on `s1..s4` (vertices 0..3).
fn k4_minus_edge() -> Vec<(Vertex, Vertex)> {
    vec![(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]
}

/// `K6 − e`: the square `s1..s4` coned by `v0 = (1,1,1)` then `v1 = (0,0,−1)`.
pub fn k6_minus_edge_example() -> ReferencePlacement {
    let mut es = k4_minus_edge();
    for s in 0..4 {
        es.push((s, 4));
        es.push((s, 5));
    }
    es.push((4, 5));
    let mut coords = S.to_vec();
    coords.push([1.0, 1.0, 1.0]);
    coords.push([0.0, 0.0, -1.0]);
    ReferencePlacement {
        name: "k6-minus-edge",
        graph: Graph::new(6, es).expect("simple"),
        placement: Placement3 { coords },
    }
}

/// Two `K5`s on a triangle: `v1 = (0,0,1)` over all `sᵢ`, `v2 = (−1,1,−1)`
/// over `s1, s2, s3, v1`, `v3 = (−1,−1,−1)` over `s1, s3, s4, v1`.
pub fn k5_glued_k5_example() -> ReferencePlacement {
    let mut es = k4_minus_edge();
    for s in 0..4 {
        es.push((s, 4));
    }
    for x in [0, 1, 2, 4] {
        es.push((x, 5));
    }
    for x in [0, 2, 3, 4] {
        es.push((x, 6));
    }
    let mut coords = S.to_vec();
    coords.extend([[0.0, 0.0, 1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, -1.0]]);
    ReferencePlacement {
        name: "k5-glued-k5",
        graph: Graph::new(7, es).expect("simple"),
        placement: Placement3 { coords },
    }
}

pub fn reference_placements() -> [ReferencePlacement; 2] {
    [k6_minus_edge_example(), k5_glued_k5_example()]
}
