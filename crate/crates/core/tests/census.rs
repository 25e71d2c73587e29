mod common;

use std::collections::{BTreeSet, VecDeque};

use braced_core::enumerate::{
    base_graph_kind, braced_up_to, find_irreducibles, levels_up_to, BaseGraph,
};
use braced_core::surface::{edge, Edge, Triangulation, Vertex};
use common::brute_canonical;

/// A triangulation as a bare face set; flips are done here without the
/// rotation-system code under test.
fn faces_of(t: &Triangulation) -> Vec<[Vertex; 3]> {
    t.faces().into_iter().map(|f| f.vertices()).collect()
}

fn edges_of(faces: &[[Vertex; 3]]) -> Vec<Edge> {
    let mut es: Vec<Edge> = faces
        .iter()
        .flat_map(|f| [edge(f[0], f[1]), edge(f[1], f[2]), edge(f[0], f[2])])
        .collect();
    es.sort_unstable();
    es.dedup();
    es
}

/// Every triangulation reachable from `faces` by edge flips that keep the
/// graph simple.
fn flip_neighbours(faces: &[[Vertex; 3]]) -> Vec<Vec<[Vertex; 3]>> {
    let es = edges_of(faces);
    let mut out = Vec::new();
    for &(u, v) in &es {
        let sides: Vec<(usize, Vertex)> = faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.contains(&u) && f.contains(&v))
            .map(|(i, f)| (i, *f.iter().find(|&&x| x != u && x != v).unwrap()))
            .collect();
        assert_eq!(sides.len(), 2);
        let (w, x) = (sides[0].1, sides[1].1);
        if es.binary_search(&edge(w, x)).is_ok() {
            continue;
        }
        let mut next: Vec<[Vertex; 3]> = faces
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != sides[0].0 && *i != sides[1].0)
            .map(|(_, f)| *f)
            .collect();
        next.push([w, x, u]);
        next.push([w, x, v]);
        out.push(next);
    }
    out
}

/// Isomorphism classes of triangulations on `n` vertices, by brute-force
/// canonical edge lists, exploring the flip graph from one bipyramid.
fn flip_census(n: usize) -> BTreeSet<Vec<Edge>> {
    let start = faces_of(&Triangulation::bipyramid(n - 2));
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(brute_canonical(n, &edges_of(&start), &[]).0);
    queue.push_back(start);
    while let Some(f) = queue.pop_front() {
        for g in flip_neighbours(&f) {
            let key = brute_canonical(n, &edges_of(&g), &[]).0;
            if seen.insert(key) {
                queue.push_back(g);
            }
        }
    }
    seen
}

#[test]
fn generator_matches_flip_graph_oracle() {
    let levels = levels_up_to(8).unwrap();
    for n in [6, 7, 8] {
        let oracle = flip_census(n);
        let ours: BTreeSet<Vec<Edge>> = levels[n - 4]
            .iter()
            .map(|t| brute_canonical(n, &t.edges(), &[]).0)
            .collect();
        assert_eq!(ours.len(), levels[n - 4].len(), "duplicate classes at n = {n}");
        assert_eq!(ours, oracle, "n = {n}");
    }
    assert_eq!(levels[3].len(), 5);
    assert_eq!(levels[4].len(), 14);
}

#[test]
fn known_counts_through_eleven() {
    let counts: Vec<usize> = levels_up_to(11).unwrap().iter().map(Vec::len).collect();
    assert_eq!(counts, [1, 1, 2, 5, 14, 50, 233, 1249]);
}

#[test]
fn braced_streams_have_no_duplicates() {
    for b in [1, 2] {
        let all: Vec<_> = braced_up_to(8, b).unwrap().collect();
        let codes: BTreeSet<_> = all.iter().map(|g| g.canonical_code()).collect();
        assert_eq!(codes.len(), all.len());
        for g in all.iter().filter(|g| g.n() <= 7) {
            assert_eq!(g.b(), b);
        }
        // orbit counting by brute force on seven vertices
        let brute: BTreeSet<_> = all
            .iter()
            .filter(|g| g.n() == 7)
            .map(|g| brute_canonical(7, &g.tri().edges(), g.braces()))
            .collect();
        assert_eq!(brute.len(), all.iter().filter(|g| g.n() == 7).count());
    }
}

/// Every unibraced triangulation on six or more vertices has, for each face,
/// a contractible edge outside that face.
#[test]
fn contractible_edge_avoids_every_face() {
    for g in braced_up_to(10, 1).unwrap().filter(|g| g.n() >= 6) {
        let ce = g.contractible_edges();
        for f in g.tri().faces() {
            assert!(
                ce.iter().any(|&(u, v)| !f.contains_edge(u, v)),
                "{:?} face {:?}",
                g,
                f
            );
        }
    }
}

#[test]
fn catalogs_satisfy_the_invariants() {
    let one = find_irreducibles(7, 1).unwrap();
    assert_eq!(one.len(), 1);
    let two = find_irreducibles(12, 2).unwrap();
    assert_eq!(two.len(), 5);
    for cat in [&one, &two] {
        for m in &cat.members {
            let r = m.graph.irreducible_invariants().unwrap();
            assert!(r.holds(), "{}: {r:?}", m.name);
        }
    }
    let sizes: Vec<usize> = two.members.iter().map(|m| m.graph.n()).collect();
    assert_eq!(sizes, [6, 6, 6, 7, 7]);
    for m in &two.members {
        let want = if m.graph.n() == 6 { BaseGraph::K6MinusEdge } else { BaseGraph::K5GluedK5 };
        assert_eq!(base_graph_kind(&m.graph), Some(want));
    }
}
