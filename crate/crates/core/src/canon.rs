//! Canonical codes for (braced) triangulations.
//!
//! A triangulation is encoded by a breadth-first traversal of its rotation
//! system from a root directed edge, in one of the two orientations. The
//! lexicographically least code over all roots and both orientations is a
//! complete isomorphism invariant. Triangulations on at least 4 vertices are
//! 3-connected, so abstract graph isomorphism and map isomorphism up to
//! reflection coincide.
//!
//! The labelings attaining the least code form a coset of the automorphism
//! group; braces are canonicalized as the least image over that coset.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use thiserror::Error;

use crate::surface::{edge, Edge, Triangulation, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("brace {0}-{1} is an edge of the triangulation")]
    BraceIsEdge(Vertex, Vertex),
    #[error("brace {0}-{1} is a loop or leaves the vertex range")]
    BadBrace(Vertex, Vertex),
}

/// Byte string identifying a braced triangulation up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Lowercase hex rendering, handy for logs and JSON.
    pub fn to_hex(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::with_capacity(self.0.len() * 2);
        for b in &self.0 {
            let _ = write!(s, "{b:02x}");
        }
        s
    }
}

/// Least traversal code of a triangulation and every labeling attaining it.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub code: Vec<u32>,
    /// `labelings[i][old] = new`; the first one defines the canonical relabeling.
    pub labelings: Vec<Vec<Vertex>>,
}

impl CanonicalForm {
    pub fn automorphism_count(&self) -> usize {
        self.labelings.len()
    }

    /// The triangulation relabeled into canonical position.
    pub fn canonical_triangulation(&self, t: &Triangulation) -> Triangulation {
        t.relabel(&self.labelings[0])
    }

    /// Automorphisms of the source triangulation as permutations `old -> old`.
    pub fn automorphisms(&self) -> Vec<Vec<Vertex>> {
        let base = &self.labelings[0];
        let mut inv = vec![0; base.len()];
        for (old, &new) in base.iter().enumerate() {
            inv[new as usize] = old as Vertex;
        }
        self.labelings
            .iter()
            .map(|lab| lab.iter().map(|&new| inv[new as usize]).collect())
            .collect()
    }

    /// Least image of a brace set over all labelings attaining the code.
    pub fn brace_key(&self, braces: &[Edge]) -> Vec<Edge> {
        let mut best: Option<Vec<Edge>> = None;
        let mut img = Vec::with_capacity(braces.len());
        for lab in &self.labelings {
            img.clear();
            img.extend(braces.iter().map(|&(a, b)| edge(lab[a as usize], lab[b as usize])));
            img.sort_unstable();
            match &best {
                Some(b) if b.as_slice() <= img.as_slice() => {}
                _ => best = Some(img.clone()),
            }
        }
        best.unwrap_or_default()
    }
}

struct Traversal {
    label: Vec<u32>,
    first: Vec<Vertex>,
    queue: Vec<Vertex>,
    code: Vec<u32>,
}

impl Traversal {
    fn new(n: usize) -> Self {
        Traversal {
            label: vec![0; n],
            first: vec![0; n],
            queue: Vec::with_capacity(n),
            code: Vec::with_capacity(3 * n),
        }
    }

    /// Runs the traversal rooted at `root -> toward`, comparing against
    /// `best` as it goes. Returns `Greater` as soon as the code is known to
    /// exceed `best`; otherwise the full code is left in `self.code`.
    fn run(
        &mut self,
        t: &Triangulation,
        root: Vertex,
        toward: Vertex,
        reversed: bool,
        best: Option<&[u32]>,
    ) -> Ordering {
        self.label.iter_mut().for_each(|l| *l = 0);
        self.queue.clear();
        self.code.clear();
        let mut next = 1u32;
        self.label[root as usize] = next;
        next += 1;
        self.first[root as usize] = toward;
        self.queue.push(root);
        let mut state = if best.is_some() { Ordering::Equal } else { Ordering::Less };
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            let r = t.neighbors(x);
            let d = r.len();
            let start = r.iter().position(|&y| y == self.first[x as usize]).unwrap();
            for k in 0..=d {
                let sym = if k == d {
                    0
                } else {
                    let i = if reversed { (start + d - k) % d } else { (start + k) % d };
                    let y = r[i];
                    if self.label[y as usize] == 0 {
                        self.label[y as usize] = next;
                        next += 1;
                        self.first[y as usize] = x;
                        self.queue.push(y);
                    }
                    self.label[y as usize]
                };
                if state == Ordering::Equal {
                    let b = best.unwrap();
                    match sym.cmp(&b[self.code.len()]) {
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Less => state = Ordering::Less,
                        Ordering::Equal => {}
                    }
                }
                self.code.push(sym);
            }
        }
        state
    }
}

/// Computes the least traversal code and all labelings attaining it.
pub fn canonical_form(t: &Triangulation) -> CanonicalForm {
    let n = t.n();
    let min_deg = (0..n as Vertex).map(|v| t.degree(v)).min().unwrap_or(0);
    let mut tr = Traversal::new(n);
    let mut best: Vec<u32> = Vec::new();
    let mut labelings: Vec<Vec<Vertex>> = Vec::new();
    for root in 0..n as Vertex {
        // the root's degree is the length of the first code block, and a
        // shorter block compares smaller
        if t.degree(root) != min_deg {
            continue;
        }
        for &toward in t.neighbors(root) {
            for reversed in [false, true] {
                let have = !labelings.is_empty();
                let ord = tr.run(t, root, toward, reversed, have.then_some(best.as_slice()));
                let lab = || tr.label.iter().map(|&l| l - 1).collect::<Vec<Vertex>>();
                match ord {
                    Ordering::Greater => {}
                    Ordering::Less => {
                        best.clear();
                        best.extend_from_slice(&tr.code);
                        labelings.clear();
                        labelings.push(lab());
                    }
                    Ordering::Equal => {
                        let l = lab();
                        if !labelings.contains(&l) {
                            labelings.push(l);
                        }
                    }
                }
            }
        }
    }
    CanonicalForm {
        code: best,
        labelings,
    }
}

pub(crate) fn check_braces(t: &Triangulation, braces: &[Edge]) -> Result<(), CanonError> {
    for &(a, b) in braces {
        if a == b || a as usize >= t.n() || b as usize >= t.n() {
            return Err(CanonError::BadBrace(a, b));
        }
        if t.has_edge(a, b) {
            return Err(CanonError::BraceIsEdge(a, b));
        }
    }
    Ok(())
}

fn encode(n: usize, code: &[u32], braces: &[Edge]) -> CanonicalCode {
    let mut bytes = Vec::with_capacity(4 + 2 * code.len() + 4 * braces.len());
    bytes.extend_from_slice(&(n as u16).to_be_bytes());
    bytes.extend_from_slice(&(braces.len() as u16).to_be_bytes());
    for &c in code {
        bytes.extend_from_slice(&(c as u16).to_be_bytes());
    }
    for &(a, b) in braces {
        bytes.extend_from_slice(&(a as u16).to_be_bytes());
        bytes.extend_from_slice(&(b as u16).to_be_bytes());
    }
    CanonicalCode(bytes)
}

/// Canonical code of a triangulation with a brace set.
pub fn canonical_code(t: &Triangulation, braces: &[Edge]) -> Result<CanonicalCode, CanonError> {
    check_braces(t, braces)?;
    let form = canonical_form(t);
    Ok(code_from_form(t.n(), &form, braces))
}

pub fn code_from_form(n: usize, form: &CanonicalForm, braces: &[Edge]) -> CanonicalCode {
    encode(n, &form.code, &form.brace_key(braces))
}

/// True iff some vertex bijection carries triangulation edges to
/// triangulation edges and braces to braces.
pub fn are_isomorphic(t1: &Triangulation, b1: &[Edge], t2: &Triangulation, b2: &[Edge]) -> bool {
    if t1.n() != t2.n() || b1.len() != b2.len() {
        return false;
    }
    let f1 = canonical_form(t1);
    let f2 = canonical_form(t2);
    f1.code == f2.code && f1.brace_key(b1) == f2.brace_key(b2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::Arc;

    fn shuffle_perm(n: usize, seed: u64) -> Vec<Vertex> {
        let mut p: Vec<Vertex> = (0..n as Vertex).collect();
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (s >> 33) as usize % (i + 1);
            p.swap(i, j);
        }
        p
    }

    #[test]
    fn relabeling_and_mirroring_preserve_code() {
        let oct = Triangulation::octahedron();
        let braces = [(0, 2), (4, 5)];
        let c = canonical_code(&oct, &braces).unwrap();
        for seed in 0..20 {
            let p = shuffle_perm(6, seed);
            let t = oct.relabel(&p);
            let b: Vec<Edge> = braces.iter().map(|&(a, b)| edge(p[a as usize], p[b as usize])).collect();
            assert_eq!(canonical_code(&t, &b).unwrap(), c);
            assert_eq!(canonical_code(&t.mirror(), &b).unwrap(), c);
        }
    }

    #[test]
    fn octahedron_has_48_automorphisms() {
        assert_eq!(canonical_form(&Triangulation::octahedron()).automorphism_count(), 48);
        assert_eq!(canonical_form(&Triangulation::tetrahedron()).automorphism_count(), 24);
        assert_eq!(canonical_form(&Triangulation::bipyramid(3)).automorphism_count(), 12);
    }

    #[test]
    fn distinguishes_brace_placements() {
        let oct = Triangulation::octahedron();
        // two antipodal pairs vs one antipodal pair
        let a = canonical_code(&oct, &[(0, 2), (1, 3)]).unwrap();
        let b = canonical_code(&oct, &[(0, 2), (4, 5)]).unwrap();
        assert_eq!(a, b);
        let capped = Triangulation::bipyramid(3).vertex_split(0, 1, 2, Arc::Forward).unwrap();
        assert_ne!(canonical_form(&capped).code, canonical_form(&oct).code);
    }

    #[test]
    fn rejects_brace_on_edge() {
        let oct = Triangulation::octahedron();
        assert_eq!(canonical_code(&oct, &[(0, 1)]), Err(CanonError::BraceIsEdge(0, 1)));
        assert_eq!(canonical_code(&oct, &[(3, 3)]), Err(CanonError::BadBrace(3, 3)));
    }

    #[test]
    fn canonical_triangulation_is_a_fixed_point() {
        let t = Triangulation::bipyramid(5);
        let f = canonical_form(&t);
        let c = f.canonical_triangulation(&t);
        let g = canonical_form(&c);
        assert_eq!(g.code, f.code);
        assert!(g.labelings.iter().any(|l| l.iter().enumerate().all(|(i, &x)| i as u32 == x)));
    }
}
