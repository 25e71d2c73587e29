#![allow(dead_code)]

use braced_core::surface::{edge, Edge, Triangulation, Vertex};
use braced_core::BracedTriangulation;

const A: Vertex = 0;
const B: Vertex = 1;
const C: Vertex = 2;
const D: Vertex = 3;
const E: Vertex = 4;
const F: Vertex = 5;
const G: Vertex = 6;

fn drawn(points: &[(f64, f64)], edges: &[Edge], braces: &[Edge]) -> BracedTriangulation {
    let t = Triangulation::from_drawing(points, edges).expect("drawing is a triangulation");
    BracedTriangulation::new(t, braces.iter().copied()).expect("braces are non-edges")
}

/// Octahedron with two braces between antipodal vertices.
pub fn drawn_octahedron() -> BracedTriangulation {
    let pts = [(-10.31, 5.98), (-13.39, 1.4), (-7.29, 1.5), (-10.81, 3.44), (-9.77, 3.48), (-10.25, 2.44)];
    let es = [(A, B), (B, C), (C, A), (D, E), (E, F), (F, D), (D, A), (D, B), (E, A), (E, C), (F, C), (F, B)];
    drawn(&pts, &es, &[(D, C), (F, A)])
}

const HEX: [(f64, f64); 6] = [(-3.04, 0.08), (0.12, 5.56), (3.54, 0.24), (0.06, 0.94), (1.16, 2.94), (0.86, 1.58)];
const HEX_EDGES: [Edge; 12] =
    [(A, B), (B, C), (C, A), (A, D), (D, C), (E, A), (E, D), (E, C), (B, E), (D, F), (F, E), (F, C)];

pub fn drawn_hex_disjoint() -> BracedTriangulation {
    drawn(&HEX, &HEX_EDGES, &[(B, D), (F, A)])
}

pub fn drawn_hex_adjacent() -> BracedTriangulation {
    drawn(&HEX, &HEX_EDGES, &[(B, D), (F, B)])
}

const SEVEN: [(f64, f64); 7] =
    [(-3.32, -0.6), (5.46, -0.88), (1.92, 5.98), (1.3, 1.28), (1.12, 2.6), (1.1, 4.08), (2.5, -0.06)];

pub fn drawn_seven_adjacent() -> BracedTriangulation {
    let es = [
        (A, B), (B, C), (C, A), (D, E), (E, F), (F, C), (D, A), (E, A), (F, A), (F, B), (E, B), (D, B), (D, G),
        (G, A), (G, B),
    ];
    drawn(&SEVEN, &es, &[(E, C), (E, G)])
}

pub fn drawn_seven_non_adjacent() -> BracedTriangulation {
    let es = [
        (A, B), (B, C), (C, A), (D, E), (E, F), (F, C), (D, A), (E, A), (F, A), (F, B), (E, B), (D, G), (G, A),
        (G, B), (E, G),
    ];
    drawn(&SEVEN, &es, &[(D, B), (E, C)])
}

/// The five doubly braced irreducibles, in drawing order.
pub fn doubly_braced_drawings() -> Vec<(&'static str, BracedTriangulation)> {
    vec![
        ("doubly-braced-octahedron", drawn_octahedron()),
        ("capped-hexahedron-disjoint-braces", drawn_hex_disjoint()),
        ("capped-hexahedron-adjacent-braces", drawn_hex_adjacent()),
        ("seven-vertex-adjacent-braces", drawn_seven_adjacent()),
        ("seven-vertex-non-adjacent-braces", drawn_seven_non_adjacent()),
    ]
}

pub fn braced_bipyramid() -> BracedTriangulation {
    BracedTriangulation::new(Triangulation::bipyramid(3), [(3, 4)]).unwrap()
}

/// Heap's algorithm over all permutations of `0..n`.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[Vertex])) {
    let mut p: Vec<Vertex> = (0..n as Vertex).collect();
    let mut c = vec![0usize; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Least relabeled (edge list, brace list) over all permutations: a
/// complete invariant of edge-and-brace colored graphs, for small `n`.
pub fn brute_canonical(n: usize, edges: &[Edge], braces: &[Edge]) -> (Vec<Edge>, Vec<Edge>) {
    let mut best: Option<(Vec<Edge>, Vec<Edge>)> = None;
    let mut es = Vec::with_capacity(edges.len());
    let mut bs = Vec::with_capacity(braces.len());
    for_each_permutation(n, |p| {
        es.clear();
        es.extend(edges.iter().map(|&(a, b)| edge(p[a as usize], p[b as usize])));
        es.sort_unstable();
        bs.clear();
        bs.extend(braces.iter().map(|&(a, b)| edge(p[a as usize], p[b as usize])));
        bs.sort_unstable();
        let better = match &best {
            None => true,
            Some((be, bb)) => (&es, &bs) < (be, bb),
        };
        if better {
            best = Some((es.clone(), bs.clone()));
        }
    });
    best.unwrap()
}

/// Brute-force isomorphism test for braced triangulations as colored graphs.
pub fn brute_isomorphic(g: &BracedTriangulation, h: &BracedTriangulation) -> bool {
    g.n() == h.n()
        && g.b() == h.b()
        && brute_canonical(g.n(), &g.tri().edges(), g.braces())
            == brute_canonical(h.n(), &h.tri().edges(), h.braces())
}
