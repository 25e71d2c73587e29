//! Sphere triangulations stored as rotation systems.
//!
//! Each vertex carries the cyclic order of its neighbours. Faces are traced
//! with the rule `next(u -> v) = v -> succ_v(u)`, so a face `u -> v -> w`
//! satisfies `succ_v(u) = w`, `succ_w(v) = u` and `succ_u(w) = v`.
//!
//! Rotations are kept normalized (each cycle starts at its smallest
//! neighbour), which makes structural equality meaningful.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

pub type Vertex = u32;

/// An undirected edge, always stored as `(min, max)`.
pub type Edge = (Vertex, Vertex);

#[inline]
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("a triangulation needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {vertex} lists neighbour {neighbor}, which is out of range")]
    VertexOutOfRange { vertex: Vertex, neighbor: Vertex },
    #[error("rotation of vertex {0} contains a loop or a repeated neighbour")]
    NotSimple(Vertex),
    #[error("edge count {edges} does not match 3n-6 = {expected}")]
    EulerCountMismatch { edges: usize, expected: usize },
    #[error("face count {faces} does not match 2n-4 = {expected}")]
    FaceCountMismatch { faces: usize, expected: usize },
    #[error("traced a face of length {0}")]
    NonTriangularFace(usize),
    #[error("{u} lists {v} as a neighbour but not vice versa")]
    InconsistentRotation { u: Vertex, v: Vertex },
    #[error("edge {0}-{1} is not present")]
    EdgeAbsent(Vertex, Vertex),
    #[error("edge {0}-{1} lies in a non-facial 3-cycle")]
    NotContractible(Vertex, Vertex),
    #[error("{1} is not a neighbour of {0}")]
    NotNeighbors(Vertex, Vertex),
    #[error("arc endpoints must be two distinct neighbours")]
    DegenerateArc,
}

/// Which of the two rotation arcs between `v2` and `v3` moves to the new vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arc {
    /// Neighbours strictly after `v2` and before `v3` in rotation order.
    Forward,
    /// Neighbours strictly after `v3` and before `v2` in rotation order.
    Backward,
}

/// A face in traced orientation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(pub [Vertex; 3]);

impl Face {
    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.0.contains(&u) && self.0.contains(&v) && u != v
    }

    pub fn vertices(&self) -> [Vertex; 3] {
        self.0
    }
}

/// A sphere triangulation as a rotation system (CSR layout).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangulation {
    offsets: Vec<u32>,
    nbrs: Vec<Vertex>,
}

impl Triangulation {
    /// Validates the rotation system and builds a triangulation.
    pub fn new(rotation: Vec<Vec<Vertex>>) -> Result<Self, SurfaceError> {
        let t = Self::from_rotation_unchecked(rotation);
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn from_rotation_unchecked(rotation: Vec<Vec<Vertex>>) -> Self {
        let mut offsets = Vec::with_capacity(rotation.len() + 1);
        let mut nbrs = Vec::with_capacity(rotation.iter().map(Vec::len).sum());
        offsets.push(0);
        for mut r in rotation {
            normalize_cycle(&mut r);
            nbrs.extend_from_slice(&r);
            offsets.push(nbrs.len() as u32);
        }
        Triangulation { offsets, nbrs }
    }

    /// Reads the rotation system off a straight-line planar drawing whose
    /// faces, including the outer one, are all triangles.
    pub fn from_drawing(points: &[(f64, f64)], edges: &[Edge]) -> Result<Self, SurfaceError> {
        let n = points.len();
        let mut rot: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a as usize >= n || b as usize >= n {
                return Err(SurfaceError::VertexOutOfRange { vertex: a, neighbor: b });
            }
            rot[a as usize].push(b);
            rot[b as usize].push(a);
        }
        for (v, r) in rot.iter_mut().enumerate() {
            let (x0, y0) = points[v];
            let angle = |w: &Vertex| {
                let (x, y) = points[*w as usize];
                libm::atan2(y - y0, x - x0)
            };
            r.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
        }
        Self::new(rot)
    }

    /// The triangle, the smallest (n = 3) triangulation.
    pub fn triangle() -> Self {
        Self::from_rotation_unchecked(vec![vec![1, 2], vec![2, 0], vec![0, 1]])
    }

    /// The tetrahedron.
    pub fn tetrahedron() -> Self {
        Self::from_rotation_unchecked(vec![
            vec![1, 2, 3],
            vec![0, 3, 2],
            vec![0, 1, 3],
            vec![0, 2, 1],
        ])
    }

    /// Bipyramid over a `k`-cycle: equator `0..k`, poles `k` and `k + 1`.
    pub fn bipyramid(k: usize) -> Self {
        assert!(k >= 3, "bipyramid needs an equator of length at least 3");
        let north = k as Vertex;
        let south = north + 1;
        let mut rot = Vec::with_capacity(k + 2);
        for i in 0..k as Vertex {
            let next = (i + 1) % k as Vertex;
            let prev = (i + k as Vertex - 1) % k as Vertex;
            rot.push(vec![prev, north, next, south]);
        }
        rot.push((0..k as Vertex).rev().collect());
        rot.push((0..k as Vertex).collect());
        Self::from_rotation_unchecked(rot)
    }

    /// The octahedron (the bipyramid over a 4-cycle).
    pub fn octahedron() -> Self {
        Self::bipyramid(4)
    }

    pub fn validate(&self) -> Result<(), SurfaceError> {
        let n = self.n();
        if n < 3 {
            return Err(SurfaceError::TooFewVertices(n));
        }
        for v in 0..n as Vertex {
            let r = self.neighbors(v);
            for (i, &u) in r.iter().enumerate() {
                if u as usize >= n {
                    return Err(SurfaceError::VertexOutOfRange {
                        vertex: v,
                        neighbor: u,
                    });
                }
                if u == v || r[..i].contains(&u) {
                    return Err(SurfaceError::NotSimple(v));
                }
            }
        }
        for v in 0..n as Vertex {
            for &u in self.neighbors(v) {
                if !self.neighbors(u).contains(&v) {
                    return Err(SurfaceError::InconsistentRotation { u: v, v: u });
                }
            }
        }
        let expected = 3 * n - 6;
        if self.num_edges() != expected {
            return Err(SurfaceError::EulerCountMismatch {
                edges: self.num_edges(),
                expected,
            });
        }
        let faces = self.trace_faces()?;
        if faces.len() != 2 * n - 4 {
            return Err(SurfaceError::FaceCountMismatch {
                faces: faces.len(),
                expected: 2 * n - 4,
            });
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.nbrs.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.nbrs[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        (u as usize) < self.n() && self.neighbors(u).contains(&v)
    }

    /// All edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.num_edges());
        for u in 0..self.n() as Vertex {
            let mut row: Vec<Vertex> = self.neighbors(u).iter().copied().filter(|&v| v > u).collect();
            row.sort_unstable();
            out.extend(row.into_iter().map(|v| (u, v)));
        }
        out
    }

    /// The rotation of every vertex, as owned lists.
    pub fn rotation(&self) -> Vec<Vec<Vertex>> {
        (0..self.n() as Vertex).map(|v| self.neighbors(v).to_vec()).collect()
    }

    #[inline]
    fn position(&self, v: Vertex, u: Vertex) -> Option<usize> {
        self.neighbors(v).iter().position(|&x| x == u)
    }

    /// Neighbour following `u` in the rotation of `v`.
    #[inline]
    pub fn succ(&self, v: Vertex, u: Vertex) -> Vertex {
        let r = self.neighbors(v);
        let i = self.position(v, u).expect("succ: not a neighbour");
        r[(i + 1) % r.len()]
    }

    /// Neighbour preceding `u` in the rotation of `v`.
    #[inline]
    pub fn pred(&self, v: Vertex, u: Vertex) -> Vertex {
        let r = self.neighbors(v);
        let i = self.position(v, u).expect("pred: not a neighbour");
        r[(i + r.len() - 1) % r.len()]
    }

    fn trace_faces(&self) -> Result<Vec<Face>, SurfaceError> {
        let n = self.n();
        let mut seen: Vec<bool> = vec![false; self.nbrs.len()];
        let mut faces = Vec::with_capacity(2 * n);
        for u in 0..n as Vertex {
            for (i, &v) in self.neighbors(u).iter().enumerate() {
                let slot = self.offsets[u as usize] as usize + i;
                if seen[slot] {
                    continue;
                }
                let mut walk: Vec<Vertex> = Vec::with_capacity(3);
                let (mut a, mut b) = (u, v);
                loop {
                    let j = self.offsets[a as usize] as usize
                        + self.position(a, b).expect("rotation checked");
                    if seen[j] {
                        break;
                    }
                    seen[j] = true;
                    walk.push(a);
                    if walk.len() > 3 {
                        // keep walking only to report the real length
                        if walk.len() > self.nbrs.len() {
                            break;
                        }
                    }
                    let c = self.succ(b, a);
                    a = b;
                    b = c;
                }
                if walk.len() != 3 || (a, b) != (u, v) {
                    return Err(SurfaceError::NonTriangularFace(walk.len()));
                }
                faces.push(Face([walk[0], walk[1], walk[2]]));
            }
        }
        Ok(faces)
    }

    /// All faces, each a 3-cycle in traced order starting at its smallest vertex.
    pub fn faces(&self) -> Vec<Face> {
        let mut faces = self.trace_faces().expect("validated triangulation");
        for f in faces.iter_mut() {
            let k = (0..3).min_by_key(|&i| f.0[i]).unwrap_or(0);
            f.0.rotate_left(k);
        }
        faces.sort_unstable();
        faces
    }

    /// Vertices forming a 3-cycle with the edge `uv`.
    pub fn three_cycles_through(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>, SurfaceError> {
        if !self.has_edge(u, v) {
            return Err(SurfaceError::EdgeAbsent(u, v));
        }
        Ok(self.common_neighbors(u, v))
    }

    /// Common neighbours of `u` and `v` (in `u`'s rotation order).
    pub fn common_neighbors(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        let nv = self.neighbors(v);
        self.neighbors(u).iter().copied().filter(|z| nv.contains(z)).collect()
    }

    #[inline]
    fn common_count(&self, u: Vertex, v: Vertex) -> usize {
        let nv = self.neighbors(v);
        self.neighbors(u).iter().filter(|z| nv.contains(z)).count()
    }

    pub fn is_contractible(&self, u: Vertex, v: Vertex) -> bool {
        self.has_edge(u, v) && self.common_count(u, v) == 2
    }

    /// Edges lying in exactly two 3-cycles, in lexicographic order.
    pub fn contractible_edges(&self) -> Vec<Edge> {
        self.edges()
            .into_iter()
            .filter(|&(u, v)| self.common_count(u, v) == 2)
            .collect()
    }

    /// Contracts `uv`, keeping `u` and deleting `v`.
    ///
    /// Vertex ids above `v` shift down by one. The returned map sends every
    /// old id to its new id (`v` goes to the image of `u`).
    pub fn contract(&self, u: Vertex, v: Vertex) -> Result<(Triangulation, Vec<Vertex>), SurfaceError> {
        if !self.has_edge(u, v) {
            return Err(SurfaceError::EdgeAbsent(u, v));
        }
        if self.common_count(u, v) != 2 {
            return Err(SurfaceError::NotContractible(u, v));
        }
        let n = self.n();
        let w = self.succ(v, u);
        let w2 = self.pred(v, u);
        // v's neighbours strictly between w and w2, in rotation order
        let rv = self.neighbors(v);
        let start = self.position(v, w).unwrap();
        let mut interior = Vec::with_capacity(rv.len());
        let mut k = (start + 1) % rv.len();
        while rv[k] != w2 {
            interior.push(rv[k]);
            k = (k + 1) % rv.len();
        }

        let map: Vec<Vertex> = (0..n as Vertex)
            .map(|x| {
                let x = if x == v { u } else { x };
                if x > v {
                    x - 1
                } else {
                    x
                }
            })
            .collect();

        let mut rot: Vec<Vec<Vertex>> = Vec::with_capacity(n - 1);
        for x in 0..n as Vertex {
            if x == v {
                continue;
            }
            let r = self.neighbors(x);
            let mut out: Vec<Vertex> = Vec::with_capacity(r.len() + interior.len());
            if x == u {
                for &y in r {
                    if y == v {
                        out.extend(interior.iter().map(|&z| map[z as usize]));
                    } else {
                        out.push(map[y as usize]);
                    }
                }
            } else if x == w || x == w2 {
                out.extend(r.iter().filter(|&&y| y != v).map(|&y| map[y as usize]));
            } else {
                out.extend(r.iter().map(|&y| map[y as usize]));
            }
            rot.push(out);
        }
        Ok((Triangulation::from_rotation_unchecked(rot), map))
    }

    /// Topological vertex split at `v1`: a new vertex `v0 = n` is joined to
    /// `v1`, `v2`, `v3`, and the neighbours strictly inside the chosen arc of
    /// `v1`'s rotation move from `v1` to `v0`.
    pub fn vertex_split(
        &self,
        v1: Vertex,
        v2: Vertex,
        v3: Vertex,
        arc: Arc,
    ) -> Result<Triangulation, SurfaceError> {
        if v1 as usize >= self.n() {
            return Err(SurfaceError::NotNeighbors(v1, v2));
        }
        if !self.has_edge(v1, v2) {
            return Err(SurfaceError::NotNeighbors(v1, v2));
        }
        if !self.has_edge(v1, v3) {
            return Err(SurfaceError::NotNeighbors(v1, v3));
        }
        if v2 == v3 {
            return Err(SurfaceError::DegenerateArc);
        }
        let (a, b) = match arc {
            Arc::Forward => (v2, v3),
            Arc::Backward => (v3, v2),
        };
        Ok(self.split_unchecked(v1, a, b))
    }

    /// Split with the interior running forward from `a` to `b`.
    pub(crate) fn split_unchecked(&self, v1: Vertex, a: Vertex, b: Vertex) -> Triangulation {
        let n = self.n();
        let v0 = n as Vertex;
        let r1 = self.neighbors(v1);
        let ia = self.position(v1, a).unwrap();
        let mut interior = Vec::with_capacity(r1.len());
        let mut k = (ia + 1) % r1.len();
        while r1[k] != b {
            interior.push(r1[k]);
            k = (k + 1) % r1.len();
        }

        let mut rot: Vec<Vec<Vertex>> = Vec::with_capacity(n + 1);
        for x in 0..n as Vertex {
            let r = self.neighbors(x);
            let mut out: Vec<Vertex> = Vec::with_capacity(r.len() + 1);
            if x == v1 {
                // a, [interior], b  ->  a, v0, b
                for &y in r {
                    if interior.contains(&y) {
                        continue;
                    }
                    out.push(y);
                    if y == a {
                        out.push(v0);
                    }
                }
            } else if x == a {
                // v0 goes immediately before v1
                for &y in r {
                    if y == v1 {
                        out.push(v0);
                    }
                    out.push(y);
                }
            } else if x == b {
                // v0 goes immediately after v1
                for &y in r {
                    out.push(y);
                    if y == v1 {
                        out.push(v0);
                    }
                }
            } else if interior.contains(&x) {
                out.extend(r.iter().map(|&y| if y == v1 { v0 } else { y }));
            } else {
                out.extend_from_slice(r);
            }
            rot.push(out);
        }
        let mut r0 = Vec::with_capacity(interior.len() + 3);
        r0.push(v1);
        r0.push(a);
        r0.extend_from_slice(&interior);
        r0.push(b);
        rot.push(r0);
        Triangulation::from_rotation_unchecked(rot)
    }

    /// Every topological vertex split, as `(v1, a, b)` with the interior
    /// running forward from `a` to `b`.
    pub fn split_choices(&self) -> Vec<(Vertex, Vertex, Vertex)> {
        let mut out = Vec::new();
        for v1 in 0..self.n() as Vertex {
            let r = self.neighbors(v1);
            for &a in r {
                for &b in r {
                    if a != b {
                        out.push((v1, a, b));
                    }
                }
            }
        }
        out
    }

    /// Applies a vertex permutation (`perm[old] = new`).
    pub fn relabel(&self, perm: &[Vertex]) -> Triangulation {
        let n = self.n();
        let mut rot: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for x in 0..n as Vertex {
            rot[perm[x as usize] as usize] = self.neighbors(x).iter().map(|&y| perm[y as usize]).collect();
        }
        Triangulation::from_rotation_unchecked(rot)
    }

    /// The same triangulation with every rotation reversed.
    pub fn mirror(&self) -> Triangulation {
        let rot = (0..self.n() as Vertex)
            .map(|v| self.neighbors(v).iter().rev().copied().collect())
            .collect();
        Triangulation::from_rotation_unchecked(rot)
    }
}

fn normalize_cycle(r: &mut [Vertex]) {
    if let Some((k, _)) = r.iter().enumerate().min_by_key(|&(_, &x)| x) {
        r.rotate_left(k);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_common(t: &Triangulation, u: Vertex, v: Vertex) -> usize {
        (0..t.n() as Vertex)
            .filter(|&z| z != u && z != v && t.has_edge(z, u) && t.has_edge(z, v))
            .count()
    }

    #[test]
    fn small_triangulations_are_valid() {
        for (t, e, f) in [
            (Triangulation::triangle(), 3, 2),
            (Triangulation::tetrahedron(), 6, 4),
            (Triangulation::bipyramid(3), 9, 6),
            (Triangulation::octahedron(), 12, 8),
            (Triangulation::bipyramid(7), 21, 14),
        ] {
            t.validate().unwrap();
            assert_eq!(t.num_edges(), e);
            assert_eq!(t.faces().len(), f);
        }
    }

    #[test]
    fn rejects_bad_rotations() {
        assert_eq!(
            Triangulation::new(vec![vec![1, 1, 2], vec![0, 2], vec![0, 1]]),
            Err(SurfaceError::NotSimple(0))
        );
        assert!(matches!(
            Triangulation::new(vec![vec![1, 2, 3], vec![0, 2], vec![0, 1], vec![1]]),
            Err(SurfaceError::InconsistentRotation { .. })
        ));
        // K4 with one rotation reversed is a torus-like map with a bad face
        let bad = vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 1, 2]];
        assert!(matches!(
            Triangulation::new(bad),
            Err(SurfaceError::NonTriangularFace(_))
        ));
        // a 4-cycle has too few edges
        let c4 = vec![vec![1, 3], vec![0, 2], vec![1, 3], vec![0, 2]];
        assert!(matches!(
            Triangulation::new(c4),
            Err(SurfaceError::EulerCountMismatch { .. })
        ));
        assert_eq!(
            Triangulation::new(vec![vec![1], vec![0]]),
            Err(SurfaceError::TooFewVertices(2))
        );
    }

    #[test]
    fn octahedron_faces_avoid_antipodes() {
        let t = Triangulation::octahedron();
        let antipodal = [(0, 2), (1, 3), (4, 5)];
        for f in t.faces() {
            for &(a, b) in &antipodal {
                assert!(!(f.0.contains(&a) && f.0.contains(&b)));
            }
        }
        for (u, v) in t.edges() {
            let count = t.faces().iter().filter(|f| f.contains_edge(u, v)).count();
            assert_eq!(count, 2);
        }
    }

    #[test]
    fn three_cycle_counts() {
        let tet = Triangulation::tetrahedron();
        for (u, v) in tet.edges() {
            assert_eq!(tet.three_cycles_through(u, v).unwrap().len(), 2);
        }
        let oct = Triangulation::octahedron();
        for (u, v) in oct.edges() {
            assert_eq!(oct.three_cycles_through(u, v).unwrap().len(), brute_common(&oct, u, v));
            assert_eq!(brute_common(&oct, u, v), 2);
        }
        let bip = Triangulation::bipyramid(3);
        assert_eq!(bip.three_cycles_through(0, 1).unwrap().len(), 3);
        assert_eq!(bip.three_cycles_through(0, 3).unwrap().len(), 2);
        assert_eq!(
            oct.three_cycles_through(0, 2),
            Err(SurfaceError::EdgeAbsent(0, 2))
        );
    }

    #[test]
    fn contractible_edge_lists() {
        assert_eq!(Triangulation::tetrahedron().contractible_edges().len(), 6);
        assert_eq!(Triangulation::octahedron().contractible_edges().len(), 12);
        let bip = Triangulation::bipyramid(3);
        let ce = bip.contractible_edges();
        assert_eq!(ce.len(), 6);
        assert!(ce.iter().all(|&(_, v)| v >= 3));
    }

    #[test]
    fn contraction_shapes() {
        let (t, map) = Triangulation::tetrahedron().contract(0, 1).unwrap();
        t.validate().unwrap();
        assert_eq!(t.n(), 3);
        assert_eq!(map, vec![0, 0, 1, 2]);

        let (t, _) = Triangulation::octahedron().contract(0, 4).unwrap();
        t.validate().unwrap();
        assert_eq!(t.n(), 5);
        let mut degs: Vec<usize> = (0..5).map(|v| t.degree(v)).collect();
        degs.sort();
        assert_eq!(degs, vec![3, 3, 4, 4, 4]);

        let bip = Triangulation::bipyramid(3);
        assert_eq!(bip.contract(0, 1), Err(SurfaceError::NotContractible(0, 1)));
        assert_eq!(bip.contract(3, 4), Err(SurfaceError::EdgeAbsent(3, 4)));
    }

    #[test]
    fn split_triangle_gives_tetrahedron() {
        let t = Triangulation::triangle().vertex_split(0, 1, 2, Arc::Forward).unwrap();
        t.validate().unwrap();
        assert_eq!(t.n(), 4);
        assert_eq!(t.num_edges(), 6);
    }

    #[test]
    fn splits_of_the_bipyramid_reach_both_six_vertex_triangulations() {
        let bip = Triangulation::bipyramid(3);
        let degs = |t: &Triangulation| {
            let mut d: Vec<usize> = (0..t.n() as Vertex).map(|v| t.degree(v)).collect();
            d.sort();
            d
        };
        // equatorial vertex 0 has rotation [1, 4, 2, 3]
        let oct = bip.vertex_split(0, 3, 4, Arc::Forward).unwrap();
        let capped = bip.vertex_split(0, 1, 2, Arc::Forward).unwrap();
        oct.validate().unwrap();
        capped.validate().unwrap();
        assert_eq!(degs(&oct), vec![4, 4, 4, 4, 4, 4]);
        assert_eq!(degs(&capped), vec![3, 3, 4, 4, 5, 5]);
        // a pole has degree 3, so every split there is capped
        let pole = bip.vertex_split(3, 0, 1, Arc::Forward).unwrap();
        assert_eq!(degs(&pole), vec![3, 3, 4, 4, 5, 5]);
    }

    #[test]
    fn split_errors() {
        let t = Triangulation::octahedron();
        assert_eq!(t.vertex_split(0, 1, 1, Arc::Forward), Err(SurfaceError::DegenerateArc));
        assert_eq!(t.vertex_split(0, 2, 1, Arc::Forward), Err(SurfaceError::NotNeighbors(0, 2)));
    }

    #[test]
    fn contract_then_split_is_exact_inverse() {
        let oct = Triangulation::octahedron();
        for (u, v) in oct.edges() {
            let (c, map) = oct.contract(u, v).unwrap();
            let a = map[oct.succ(v, u) as usize];
            let b = map[oct.pred(v, u) as usize];
            let s = c.vertex_split(map[u as usize], a, b, Arc::Forward).unwrap();
            s.validate().unwrap();
            // move the new vertex back to slot v
            let n = s.n() as Vertex;
            let perm: Vec<Vertex> = (0..n)
                .map(|x| if x == n - 1 { v } else if x >= v { x + 1 } else { x })
                .collect();
            assert_eq!(s.relabel(&perm), oct);
        }
    }

    #[test]
    fn every_vertex_has_two_contractible_edges() {
        for t in [Triangulation::tetrahedron(), Triangulation::octahedron(), Triangulation::bipyramid(5)] {
            let ce = t.contractible_edges();
            for v in 0..t.n() as Vertex {
                assert!(ce.iter().filter(|&&(a, b)| a == v || b == v).count() >= 2);
            }
        }
    }
}
