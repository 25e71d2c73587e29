//! Braced triangulations `G = (P, B)`: contractibility, reduction to
//! irreducible bases with replayable traces, and size bounds.

use alloc::vec::Vec;

use thiserror::Error;

use crate::canon::{self, CanonError, CanonicalCode};
use crate::graph::Graph;
use crate::surface::{edge, Edge, SurfaceError, Triangulation, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracedError {
    #[error(transparent)]
    Brace(#[from] CanonError),
    #[error("brace {0}-{1} appears twice")]
    DuplicateBrace(Vertex, Vertex),
    #[error("edge {0}-{1} is not contractible in the braced triangulation")]
    NotContractible(Vertex, Vertex),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("the braced triangulation is reducible")]
    NotIrreducible,
    #[error("trace step {step} does not fit: {reason}")]
    TraceMismatch { step: usize, reason: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BracedTriangulation {
    tri: Triangulation,
    braces: Vec<Edge>,
}

impl BracedTriangulation {
    pub fn new(tri: Triangulation, braces: impl IntoIterator<Item = Edge>) -> Result<Self, BracedError> {
        let mut braces: Vec<Edge> = braces.into_iter().map(|(a, b)| edge(a, b)).collect();
        canon::check_braces(&tri, &braces)?;
        braces.sort_unstable();
        for w in braces.windows(2) {
            if w[0] == w[1] {
                return Err(BracedError::DuplicateBrace(w[0].0, w[0].1));
            }
        }
        Ok(BracedTriangulation { tri, braces })
    }

    pub(crate) fn from_parts_unchecked(tri: Triangulation, mut braces: Vec<Edge>) -> Self {
        braces.sort_unstable();
        BracedTriangulation { tri, braces }
    }

    pub fn unbraced(tri: Triangulation) -> Self {
        BracedTriangulation { tri, braces: Vec::new() }
    }

    #[inline]
    pub fn tri(&self) -> &Triangulation {
        &self.tri
    }

    #[inline]
    pub fn braces(&self) -> &[Edge] {
        &self.braces
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.tri.n()
    }

    /// Number of braces.
    pub fn b(&self) -> usize {
        self.braces.len()
    }

    /// `V(B)`: vertices incident to a brace, sorted.
    pub fn braced_vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.braces.iter().flat_map(|&(a, b)| [a, b]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// The underlying simple graph `P ∪ B`.
    pub fn graph(&self) -> Graph {
        let mut es = self.tri.edges();
        es.extend_from_slice(&self.braces);
        Graph::new(self.n(), es).expect("braces are non-edges")
    }

    /// True if the edge `xy` of `P` lies in a 3-cycle of `G` that uses a brace.
    fn in_braced_triangle(&self, x: Vertex, y: Vertex) -> bool {
        brace_blocks(&self.tri, &self.braces, x, y)
    }

    /// Is `uv` an edge of `P` that is contractible in `G`?
    ///
    /// The tetrahedron is terminal: nothing is contracted below 4 vertices.
    pub fn is_contractible(&self, u: Vertex, v: Vertex) -> bool {
        self.n() > 4 && self.tri.is_contractible(u, v) && !self.in_braced_triangle(u, v)
    }

    /// Edges of `P` contractible in `G`, lexicographic.
    pub fn contractible_edges(&self) -> Vec<Edge> {
        if self.n() <= 4 {
            return Vec::new();
        }
        self.tri
            .contractible_edges()
            .into_iter()
            .filter(|&(u, v)| !self.in_braced_triangle(u, v))
            .collect()
    }

    pub fn is_irreducible(&self) -> bool {
        self.n() <= 4 || is_irreducible_with(&self.tri, &self.tri.contractible_edges(), &self.braces)
    }

    /// `X_uv = N_P(u) ∩ N_P(v)` (braces excluded) and `r_uv = |X_uv|`.
    pub fn common_neighbors(&self, u: Vertex, v: Vertex) -> (Vec<Vertex>, usize) {
        let mut x = self.tri.common_neighbors(u, v);
        x.sort_unstable();
        let r = x.len();
        (x, r)
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        canon::canonical_code(&self.tri, &self.braces).expect("validated braces")
    }

    /// Contracts `uv` (contractible in `G`), keeping `u`.
    pub fn contract(&self, u: Vertex, v: Vertex) -> Result<(BracedTriangulation, Vec<Vertex>), BracedError> {
        if !self.is_contractible(u, v) {
            if !self.tri.has_edge(u, v) {
                return Err(SurfaceError::EdgeAbsent(u, v).into());
            }
            return Err(BracedError::NotContractible(u, v));
        }
        let (tri, map) = self.tri.contract(u, v)?;
        let braces = self
            .braces
            .iter()
            .map(|&(a, b)| edge(map[a as usize], map[b as usize]))
            .collect();
        Ok((BracedTriangulation::from_parts_unchecked(tri, braces), map))
    }

    /// Contracts the lexicographically first contractible edge until none
    /// remain, keeping the smaller endpoint each time.
    pub fn reduce(&self) -> (BracedTriangulation, ReductionTrace) {
        self.reduce_with(|_| 0)
    }

    /// Like [`reduce`](Self::reduce), but `choose` picks which of the current
    /// contractible edges (given in lexicographic order) to contract.
    pub fn reduce_with(&self, mut choose: impl FnMut(&[Edge]) -> usize) -> (BracedTriangulation, ReductionTrace) {
        let mut cur = self.clone();
        let mut steps = Vec::new();
        loop {
            let cands = cur.contractible_edges();
            if cands.is_empty() {
                break;
            }
            let (u, v) = cands[choose(&cands) % cands.len()];
            let (next, map) = cur.contract(u, v).expect("candidate is contractible");
            let t = &cur.tri;
            let removed_brace_ends = cur
                .braces
                .iter()
                .filter_map(|&(a, b)| {
                    if a == v {
                        Some(b)
                    } else if b == v {
                        Some(a)
                    } else {
                        None
                    }
                })
                .collect();
            steps.push(ReductionStep {
                pre_n: cur.n(),
                kept: u,
                removed: v,
                removed_rotation: t.neighbors(v).to_vec(),
                removed_brace_ends,
                split_at: map[u as usize],
                arc_from: map[t.succ(v, u) as usize],
                arc_to: map[t.pred(v, u) as usize],
            });
            cur = next;
        }
        (cur, ReductionTrace { steps })
    }

    /// Report on the vertex-set identity and size bounds of an irreducible.
    pub fn irreducible_invariants(&self) -> Result<InvariantReport, BracedError> {
        if !self.is_irreducible() {
            return Err(BracedError::NotIrreducible);
        }
        let n = self.n();
        let b = self.b();
        let mut covered = self.braced_vertices();
        for &(u, v) in &self.braces {
            covered.extend(self.common_neighbors(u, v).0);
        }
        covered.sort_unstable();
        covered.dedup();
        let vertex_identity = covered.len() == n && covered.iter().enumerate().all(|(i, &x)| i as Vertex == x);
        let linear_bound = (11 * b).saturating_sub(4);
        let quadratic_bound = (b >= 2).then(|| 4 * b * b - 2 * b);
        let within_bounds = n <= linear_bound && quadratic_bound.is_none_or(|q| n <= q);
        Ok(InvariantReport {
            vertices: n,
            braces: b,
            vertex_identity,
            linear_bound,
            quadratic_bound,
            within_bounds,
        })
    }
}

/// Shared brace test used by the enumeration hot loop.
#[inline]
pub(crate) fn brace_blocks(tri: &Triangulation, braces: &[Edge], x: Vertex, y: Vertex) -> bool {
    let adj = |a: Vertex, b: Vertex| tri.has_edge(a, b) || braces.contains(&edge(a, b));
    for &(a, c) in braces {
        for (p, q) in [(a, c), (c, a)] {
            // brace p-q with p an endpoint of xy: the triangle closes if the
            // other endpoint of xy is adjacent to q in G
            if p == x && q != y && adj(y, q) {
                return true;
            }
            if p == y && q != x && adj(x, q) {
                return true;
            }
        }
    }
    false
}

/// Irreducibility given the precomputed `P`-contractible edges of `tri`.
#[inline]
pub fn is_irreducible_with(tri: &Triangulation, p_contractible: &[Edge], braces: &[Edge]) -> bool {
    p_contractible.iter().all(|&(x, y)| brace_blocks(tri, braces, x, y))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub vertices: usize,
    pub braces: usize,
    /// `V(P) = V(B) ∪ ⋃ X_uv` over the braces `uv`.
    pub vertex_identity: bool,
    /// `11b - 4`.
    pub linear_bound: usize,
    /// `4b² - 2b`, for `b >= 2`.
    pub quadratic_bound: Option<usize>,
    pub within_bounds: bool,
}

impl InvariantReport {
    pub fn holds(&self) -> bool {
        self.vertex_identity && self.within_bounds
    }
}

/// One contraction, recorded so that the inverse split can be replayed exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    /// Vertex count before contracting.
    pub pre_n: usize,
    /// Surviving endpoint, in pre-contraction labels.
    pub kept: Vertex,
    /// Deleted endpoint, in pre-contraction labels.
    pub removed: Vertex,
    /// Rotation of the deleted endpoint, in pre-contraction labels.
    pub removed_rotation: Vec<Vertex>,
    /// Other endpoints of braces at the deleted endpoint (pre-contraction labels).
    pub removed_brace_ends: Vec<Vertex>,
    /// Split vertex, in post-contraction labels.
    pub split_at: Vertex,
    /// The moved neighbours run forward from `arc_from` to `arc_to` (post labels).
    pub arc_from: Vertex,
    pub arc_to: Vertex,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Undoes a single contraction.
pub fn replay_step(g: &BracedTriangulation, step: &ReductionStep, index: usize) -> Result<BracedTriangulation, BracedError> {
    let mismatch = |reason| BracedError::TraceMismatch { step: index, reason };
    let n = g.n();
    if step.pre_n != n + 1 {
        return Err(mismatch("vertex count"));
    }
    if step.removed as usize > n || step.kept as usize > n || step.kept == step.removed {
        return Err(mismatch("endpoint out of range"));
    }
    let t = &g.tri;
    let (v1, a, b) = (step.split_at, step.arc_from, step.arc_to);
    if v1 as usize >= n || a == b || !t.has_edge(v1, a) || !t.has_edge(v1, b) {
        return Err(mismatch("arc is not in the rotation"));
    }
    let split = t.split_unchecked(v1, a, b);
    let removed = step.removed;
    let fresh = n as Vertex;
    let lift = |x: Vertex| {
        if x == fresh {
            removed
        } else if x >= removed {
            x + 1
        } else {
            x
        }
    };
    let perm: Vec<Vertex> = (0..=fresh).map(lift).collect();
    if lift(v1) != step.kept {
        return Err(mismatch("split vertex is not the kept endpoint"));
    }
    let tri = split.relabel(&perm);
    let mut expected = step.removed_rotation.clone();
    if let Some(k) = expected.iter().enumerate().min_by_key(|&(_, &x)| x).map(|(k, _)| k) {
        expected.rotate_left(k);
    }
    if tri.neighbors(removed) != expected.as_slice() {
        return Err(mismatch("rotation of the restored vertex differs"));
    }
    let kept = step.kept;
    let braces: Vec<Edge> = g
        .braces
        .iter()
        .map(|&(p, q)| {
            let (p, q) = (lift(p), lift(q));
            if p == kept && step.removed_brace_ends.contains(&q) {
                edge(removed, q)
            } else if q == kept && step.removed_brace_ends.contains(&p) {
                edge(p, removed)
            } else {
                edge(p, q)
            }
        })
        .collect();
    BracedTriangulation::new(tri, braces).map_err(|_| mismatch("braces do not fit"))
}

/// Replays a reduction trace backwards from its irreducible base.
pub fn replay(base: &BracedTriangulation, trace: &ReductionTrace) -> Result<BracedTriangulation, BracedError> {
    let mut cur = base.clone();
    for (i, step) in trace.steps.iter().enumerate().rev() {
        cur = replay_step(&cur, step, i)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::Arc;

    fn braced_bipyramid(k: usize) -> BracedTriangulation {
        let t = Triangulation::bipyramid(k);
        BracedTriangulation::new(t, [(k as Vertex, k as Vertex + 1)]).unwrap()
    }

    #[test]
    fn rejects_bad_braces() {
        let t = Triangulation::octahedron();
        assert!(matches!(
            BracedTriangulation::new(t.clone(), [(0, 1)]),
            Err(BracedError::Brace(CanonError::BraceIsEdge(0, 1)))
        ));
        assert_eq!(
            BracedTriangulation::new(t, [(0, 2), (2, 0)]),
            Err(BracedError::DuplicateBrace(0, 2))
        );
    }

    #[test]
    fn braced_bipyramids() {
        let g5 = braced_bipyramid(3);
        assert!(g5.contractible_edges().is_empty());
        assert!(g5.is_irreducible());
        assert_eq!(g5.common_neighbors(3, 4).1, 3);
        for k in 4..9 {
            let g = braced_bipyramid(k);
            let expected: Vec<Edge> = (0..k as Vertex).map(|i| edge(i, (i + 1) % k as Vertex)).collect();
            let mut expected = expected;
            expected.sort_unstable();
            assert_eq!(g.contractible_edges(), expected);
        }
    }

    #[test]
    fn doubly_braced_octahedron_is_irreducible() {
        let g = BracedTriangulation::new(Triangulation::octahedron(), [(0, 2), (1, 3)]).unwrap();
        assert!(g.contractible_edges().is_empty());
        assert_eq!(g.common_neighbors(0, 2).1, 4);
        let unbraced = BracedTriangulation::unbraced(Triangulation::octahedron());
        assert!(!unbraced.is_irreducible());
        assert_eq!(unbraced.contractible_edges().len(), 12);
    }

    #[test]
    fn tetrahedron_neighbours() {
        let g = BracedTriangulation::unbraced(Triangulation::tetrahedron());
        assert_eq!(g.common_neighbors(0, 1).1, 2);
    }

    #[test]
    fn bipyramid_reduces_in_three_steps() {
        let g = braced_bipyramid(6);
        assert_eq!(g.n(), 8);
        let (base, trace) = g.reduce();
        assert_eq!(trace.len(), 3);
        assert_eq!(base.n(), 5);
        assert!(base.is_irreducible());
        assert!(canon::are_isomorphic(base.tri(), base.braces(), braced_bipyramid(3).tri(), braced_bipyramid(3).braces()));
        assert_eq!(replay(&base, &trace).unwrap(), g);
    }

    #[test]
    fn irreducible_input_has_empty_trace() {
        let g = braced_bipyramid(3);
        let (base, trace) = g.reduce();
        assert!(trace.is_empty());
        assert_eq!(base, g);
        assert_eq!(replay(&base, &ReductionTrace::default()).unwrap(), base);
    }

    #[test]
    fn single_step_replay_is_exact() {
        let t = Triangulation::octahedron().vertex_split(0, 1, 3, Arc::Forward).unwrap();
        let g = BracedTriangulation::new(t, [(0, 2)]).unwrap();
        let (u, v) = g.contractible_edges()[0];
        let (_, trace) = g.reduce_with(|_| 0);
        let first = &trace.steps[0];
        assert_eq!((first.kept, first.removed), (u, v));
        let (after, _) = g.contract(u, v).unwrap();
        assert_eq!(replay_step(&after, first, 0).unwrap(), g);
    }

    #[test]
    fn replay_detects_mismatch() {
        let g = braced_bipyramid(5);
        let (base, mut trace) = g.reduce();
        trace.steps[0].pre_n += 1;
        assert!(matches!(replay(&base, &trace), Err(BracedError::TraceMismatch { .. })));
    }

    #[test]
    fn invariants() {
        let r = braced_bipyramid(3).irreducible_invariants().unwrap();
        assert!(r.holds());
        assert_eq!((r.vertices, r.linear_bound, r.quadratic_bound), (5, 7, None));
        let g = BracedTriangulation::new(Triangulation::octahedron(), [(0, 2), (1, 3)]).unwrap();
        let r = g.irreducible_invariants().unwrap();
        assert!(r.holds());
        assert_eq!((r.linear_bound, r.quadratic_bound), (18, Some(12)));
        assert_eq!(
            braced_bipyramid(5).irreducible_invariants(),
            Err(BracedError::NotIrreducible)
        );
    }

    #[test]
    fn unbraced_reduces_to_tetrahedron() {
        let g = BracedTriangulation::unbraced(Triangulation::bipyramid(6));
        let (base, trace) = g.reduce();
        assert_eq!(base.n(), 4);
        assert!(base.is_irreducible());
        assert_eq!(trace.len(), 4);
        assert_eq!(replay(&base, &trace).unwrap(), g);
    }
}
