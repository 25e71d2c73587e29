//! Frameworks on the hypercylinder `Σ = {x² + y² + z² = 1} ⊂ R⁴`.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::braced::{BracedTriangulation, ReductionTrace};
use crate::enumerate::{base_graph_kind, BaseGraph};
use crate::graph::{find_isomorphism, k5_glued_k5, k6_minus_edge, Graph};
use crate::linalg::{self, DMatrix, DVector, RankResult, DEFAULT_TOL, THRESHOLD_MARGIN};
use crate::surface::Vertex;

/// Allowed deviation from `x² + y² + z² = 1`.
pub const SURFACE_TOL: f64 = 1e-12;

/// Cross-product norm below which two projections count as parallel.
const AXIS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HypercylError {
    #[error("vertex {0} is off the hypercylinder")]
    OffSurface(usize),
    #[error("coordinates of vertex {0} are not finite")]
    NonFinite(usize),
    #[error("edge {0}-{1} has coincident endpoints")]
    CoincidentEndpoints(Vertex, Vertex),
    #[error("placement has {placed} vertices but the graph has {expected}")]
    SizeMismatch { placed: usize, expected: usize },
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Rigid,
    Flexible,
    /// The singular-value gap is too small to trust; resample.
    IllConditioned,
    NotFull,
}

impl Verdict {
    pub fn is_confident(self) -> bool {
        matches!(self, Verdict::Rigid | Verdict::Flexible)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RigidityReport {
    pub rank: usize,
    pub expected_rank: usize,
    pub kernel_dim: usize,
    /// Rank of the trivial flex family at this placement.
    pub trivial_dim: usize,
    pub verdict: Verdict,
    pub rank_result: RankResult,
}

pub(crate) fn verdict_for(full: bool, r: &RankResult, expected: usize) -> Verdict {
    if !full {
        Verdict::NotFull
    } else if !r.is_confident() || r.rank > expected {
        Verdict::IllConditioned
    } else if r.rank == expected {
        Verdict::Rigid
    } else {
        Verdict::Flexible
    }
}

/// Points of `Σ`, one `(x, y, z, w)` per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement4 {
    coords: Vec<[f64; 4]>,
}

impl Placement4 {
    pub fn new(coords: Vec<[f64; 4]>) -> Result<Self, HypercylError> {
        for (i, c) in coords.iter().enumerate() {
            if c.iter().any(|x| !x.is_finite()) {
                return Err(HypercylError::NonFinite(i));
            }
            if (c[0] * c[0] + c[1] * c[1] + c[2] * c[2] - 1.0).abs() > SURFACE_TOL {
                return Err(HypercylError::OffSurface(i));
            }
        }
        Ok(Placement4 { coords })
    }

    pub fn coords(&self) -> &[[f64; 4]] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Reorders so that vertex `perm[i]` of the result sits where vertex `i` sat.
    pub fn permuted(&self, perm: &[Vertex]) -> Placement4 {
        let mut coords = vec![[0.0; 4]; self.coords.len()];
        for (i, &p) in perm.iter().enumerate() {
            coords[p as usize] = self.coords[i];
        }
        Placement4 { coords }
    }
}

/// Drops the `w` coordinate.
pub fn project(p: [f64; 4]) -> [f64; 3] {
    [p[0], p[1], p[2]]
}

fn cross_norm(a: [f64; 3], b: [f64; 3]) -> f64 {
    let c = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    libm::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2])
}

/// Uniform direction on the unit sphere for `(x, y, z)` and `w` uniform on `[-1, 1]`.
pub fn random_placement(n: usize, seed: u64) -> Placement4 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n)
        .map(|_| {
            let z: f64 = rng.random_range(-1.0..=1.0);
            let phi: f64 = rng.random_range(0.0..core::f64::consts::TAU);
            let w: f64 = rng.random_range(-1.0..=1.0);
            let r = libm::sqrt((1.0 - z * z).max(0.0));
            [r * libm::cos(phi), r * libm::sin(phi), z, w]
        })
        .collect();
    Placement4 { coords }
}

/// Some two projections are linearly independent.
pub fn is_full(q: &Placement4) -> bool {
    let Some(first) = q.coords.first() else {
        return false;
    };
    let a = project(*first);
    q.coords.iter().any(|&c| cross_norm(a, project(c)) > AXIS_TOL)
}

/// No six vertices project onto a common line through the origin.
pub fn is_completely_full(q: &Placement4) -> bool {
    q.coords.iter().all(|&c| {
        let a = project(c);
        q.coords.iter().filter(|&&d| cross_norm(a, project(d)) <= AXIS_TOL).count() < 6
    })
}

/// The infinitesimal rigid motions of `Σ` restricted to `q`: three rotations
/// of the `(x, y, z)` part and the translation along `w`.
pub fn trivial_flex_basis(q: &Placement4) -> [DVector<f64>; 4] {
    let n = q.len();
    let mut m: [DVector<f64>; 4] = core::array::from_fn(|_| DVector::zeros(4 * n));
    for (v, &[x, y, z, _]) in q.coords.iter().enumerate() {
        let b = 4 * v;
        m[0][b] = z;
        m[0][b + 2] = -x;
        m[1][b] = y;
        m[1][b + 1] = -x;
        m[2][b + 1] = z;
        m[2][b + 2] = -y;
        m[3][b + 3] = 1.0;
    }
    m
}

fn check_sizes(g: &Graph, q: &Placement4) -> Result<(), HypercylError> {
    if g.n() != q.len() {
        return Err(HypercylError::SizeMismatch { placed: q.len(), expected: g.n() });
    }
    Ok(())
}

/// Edge rows `q_u − q_v | q_v − q_u` followed by one row `(π(q_v), 0)` per vertex.
pub fn rigidity_matrix(g: &Graph, q: &Placement4) -> Result<DMatrix<f64>, HypercylError> {
    check_sizes(g, q)?;
    let n = g.n();
    let e = g.num_edges();
    let mut m = DMatrix::zeros(e + n, 4 * n);
    for (row, &(u, v)) in g.edges().iter().enumerate() {
        let (a, b) = (q.coords[u as usize], q.coords[v as usize]);
        if a == b {
            return Err(HypercylError::CoincidentEndpoints(u, v));
        }
        for k in 0..4 {
            m[(row, 4 * u as usize + k)] = a[k] - b[k];
            m[(row, 4 * v as usize + k)] = b[k] - a[k];
        }
    }
    for (v, c) in q.coords.iter().enumerate() {
        for k in 0..3 {
            m[(e + v, 4 * v + k)] = c[k];
        }
    }
    Ok(m)
}

fn trivial_dim(flexes: &[DVector<f64>]) -> usize {
    let m = DMatrix::from_columns(flexes);
    linalg::numeric_rank(&m, DEFAULT_TOL).map(|r| r.rank).unwrap_or(0)
}

/// Rank-based classification against `4|V| − 4`.
pub fn classify(g: &Graph, q: &Placement4) -> Result<RigidityReport, HypercylError> {
    let m = rigidity_matrix(g, q)?;
    let r = linalg::numeric_rank(&linalg::equilibrate(&m), DEFAULT_TOL)?;
    let n = g.n();
    let expected = (4 * n).saturating_sub(4);
    let verdict = verdict_for(is_full(q), &r, expected);
    Ok(RigidityReport {
        rank: r.rank,
        expected_rank: expected,
        kernel_dim: 4 * n - r.rank,
        trivial_dim: trivial_dim(&trivial_flex_basis(q)),
        verdict,
        rank_result: r,
    })
}

/// Fast sufficient test for a confident rigid verdict, valid when the graph
/// has exactly `3|V| − 4` edges. A `false` answer is inconclusive; use
/// [`classify`].
pub fn certify_rigid(g: &Graph, q: &Placement4) -> bool {
    let n = g.n();
    if g.num_edges() + n + 4 != 4 * n || !is_full(q) {
        return false;
    }
    match rigidity_matrix(g, q) {
        Ok(m) => linalg::certifies_full_row_rank(&linalg::equilibrate(&m), THRESHOLD_MARGIN * DEFAULT_TOL),
        Err(_) => false,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferencePlacement {
    pub name: &'static str,
    pub graph: Graph,
    pub placement: Placement4,
}

fn scaled(v: [f64; 4], s: f64) -> [f64; 4] {
    let r = libm::sqrt(s);
    [v[0] / r, v[1] / r, v[2] / r, v[3] / r]
}

/// Two `K5`s on `q1..q5` and `q3..q7`, placed as published; rank 24.
pub fn k5_glued_k5_placement() -> ReferencePlacement {
    let coords = vec![
        scaled([1.0, 1.0, 1.0, 1.0], 3.0),
        scaled([3.0, 2.0, 2.0, 1.0], 17.0),
        scaled([2.0, 3.0, 2.0, 3.0], 17.0),
        scaled([1.0, 3.0, 1.0, 1.0], 11.0),
        scaled([3.0, 2.0, 2.0, 2.0], 17.0),
        scaled([2.0, 3.0, 1.0, 1.0], 14.0),
        scaled([2.0, 1.0, 3.0, 2.0], 14.0),
    ];
    ReferencePlacement {
        name: "k5-glued-k5",
        graph: k5_glued_k5(),
        placement: Placement4::new(coords).expect("published points lie on the hypercylinder"),
    }
}

/// `K6` minus the edge `q5q6`, placed as published; rank 20.
pub fn k6_minus_edge_placement() -> ReferencePlacement {
    let coords = vec![
        scaled([1.0, 3.0, 1.0, 1.0], 11.0),
        scaled([2.0, 2.0, 1.0, 1.0], 9.0),
        scaled([3.0, 2.0, 3.0, 3.0], 22.0),
        scaled([3.0, 3.0, 2.0, 2.0], 22.0),
        scaled([3.0, 3.0, 3.0, 1.0], 27.0),
        scaled([1.0, 2.0, 3.0, 2.0], 14.0),
    ];
    ReferencePlacement {
        name: "k6-minus-edge",
        graph: k6_minus_edge(),
        placement: Placement4::new(coords).expect("published points lie on the hypercylinder"),
    }
}

pub fn reference_placements() -> [ReferencePlacement; 2] {
    [k5_glued_k5_placement(), k6_minus_edge_placement()]
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error("the reduction ended at a base whose graph is neither K6 minus an edge nor two K5s on a triangle")]
    BaseNotInCatalog,
    #[error("no confident verdict after {0} placements")]
    NoConfidentVerdict(usize),
    #[error(transparent)]
    Hypercyl(#[from] HypercylError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub base: BracedTriangulation,
    pub base_kind: BaseGraph,
    pub trace: ReductionTrace,
    /// The base at the published placement, transported along an isomorphism.
    pub base_report: RigidityReport,
    /// One report per random placement tried, the last one confident.
    pub trials: Vec<RigidityReport>,
    pub verdict: Verdict,
}

/// Reduces `g` to its base, checks the base at its published placement,
/// then classifies `g` at up to `trials` random placements seeded
/// `base_seed`, `base_seed + 1`, ...
pub fn certify_by_induction(
    g: &BracedTriangulation,
    base_seed: u64,
    trials: usize,
) -> Result<Certificate, CertifyError> {
    let (base, trace) = g.reduce();
    let base_kind = base_graph_kind(&base).ok_or(CertifyError::BaseNotInCatalog)?;
    let reference = match base_kind {
        BaseGraph::K6MinusEdge => k6_minus_edge_placement(),
        BaseGraph::K5GluedK5 => k5_glued_k5_placement(),
    };
    let bg = base.graph();
    let iso = find_isomorphism(&reference.graph, &bg).ok_or(CertifyError::BaseNotInCatalog)?;
    let base_report = classify(&bg, &reference.placement.permuted(&iso))?;
    let graph = g.graph();
    let mut reports = Vec::new();
    for i in 0..trials as u64 {
        let q = random_placement(graph.n(), base_seed.wrapping_add(i));
        let rep = classify(&graph, &q)?;
        let done = rep.verdict.is_confident();
        reports.push(rep);
        if done {
            let verdict = reports.last().unwrap().verdict;
            return Ok(Certificate { base, base_kind, trace, base_report, trials: reports, verdict });
        }
    }
    Err(CertifyError::NoConfidentVerdict(trials))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection() {
        assert_eq!(project([1.0, 2.0, 3.0, 4.0]), [1.0, 2.0, 3.0]);
        assert_eq!(project([0.0, 0.0, 0.0, 7.0]), [0.0; 3]);
    }

    #[test]
    fn published_ranks() {
        let a = k5_glued_k5_placement();
        let r = classify(&a.graph, &a.placement).unwrap();
        assert_eq!((r.rank, r.verdict), (24, Verdict::Rigid));
        let b = k6_minus_edge_placement();
        let r = classify(&b.graph, &b.placement).unwrap();
        assert_eq!((r.rank, r.verdict), (20, Verdict::Rigid));
        assert!(certify_rigid(&b.graph, &b.placement));
        assert!(is_completely_full(&a.placement) && is_completely_full(&b.placement));
    }

    #[test]
    fn vertex_row_of_first_point() {
        let b = k6_minus_edge_placement();
        let m = rigidity_matrix(&b.graph, &b.placement).unwrap();
        let s = libm::sqrt(11.0);
        let row = 14;
        for (k, want) in [1.0, 3.0, 1.0, 0.0].into_iter().enumerate() {
            assert!((m[(row, k)] - want / s).abs() < 1e-15);
        }
    }

    #[test]
    fn single_edge() {
        let g = Graph::complete(2);
        let q = random_placement(2, 5);
        let m = rigidity_matrix(&g, &q).unwrap();
        assert_eq!(m.shape(), (3, 8));
        assert_eq!(linalg::numeric_rank(&m, DEFAULT_TOL).unwrap().rank, 3);
    }

    #[test]
    fn fullness() {
        let line = Placement4::new(vec![[1.0, 0.0, 0.0, 0.3], [-1.0, 0.0, 0.0, 2.0], [1.0, 0.0, 0.0, -1.0]]).unwrap();
        assert!(!is_full(&line));
        assert!(trivial_dim(&trivial_flex_basis(&line)) < 4);
        let two = Placement4::new(vec![[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]]).unwrap();
        assert!(is_full(&two));
        assert_eq!(
            classify(&Graph::complete(3), &line).unwrap().verdict,
            Verdict::NotFull
        );
    }

    #[test]
    fn rejects_bad_points() {
        assert_eq!(Placement4::new(vec![[1.0, 1.0, 0.0, 0.0]]), Err(HypercylError::OffSurface(0)));
        let q = Placement4::new(vec![[1.0, 0.0, 0.0, 0.0]; 2]).unwrap();
        assert_eq!(
            rigidity_matrix(&Graph::complete(2), &q),
            Err(HypercylError::CoincidentEndpoints(0, 1))
        );
    }

    #[test]
    fn seeds() {
        assert_eq!(random_placement(5, 9), random_placement(5, 9));
        assert_ne!(random_placement(5, 9), random_placement(5, 10));
        let q = random_placement(40, 1);
        assert!(Placement4::new(q.coords().to_vec()).is_ok());
    }
}
