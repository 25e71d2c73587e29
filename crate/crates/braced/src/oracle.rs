//! Slow, independent reference computations for cross-checking the census.

use std::collections::{BTreeSet, VecDeque};

use braced_core::surface::{edge, Edge, Triangulation, Vertex};

/// Least relabeled sorted edge list over all vertex permutations.
pub fn brute_canonical_edges(n: usize, edges: &[Edge]) -> Vec<Edge> {
    let mut perm: Vec<Vertex> = (0..n as Vertex).collect();
    let mut best: Option<Vec<Edge>> = None;
    let mut es = Vec::with_capacity(edges.len());
    let mut consider = |p: &[Vertex]| {
        es.clear();
        es.extend(edges.iter().map(|&(a, b)| edge(p[a as usize], p[b as usize])));
        es.sort_unstable();
        if best.as_ref().is_none_or(|b| es < *b) {
            best = Some(es.clone());
        }
    };
    // Heap's algorithm
    let mut c = vec![0usize; n];
    consider(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            consider(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best.unwrap_or_default()
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

fn flips(faces: &[[Vertex; 3]]) -> Vec<Vec<[Vertex; 3]>> {
    let es = edges_of(faces);
    let mut out = Vec::new();
    for &(u, v) in &es {
        let sides: Vec<(usize, Vertex)> = faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.contains(&u) && f.contains(&v))
            .filter_map(|(i, f)| f.iter().find(|&&x| x != u && x != v).map(|&w| (i, w)))
            .collect();
        let [(i, w), (j, x)] = sides[..] else { continue };
        if es.binary_search(&edge(w, x)).is_ok() {
            continue;
        }
        let mut next: Vec<[Vertex; 3]> = faces
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, f)| *f)
            .collect();
        next.push([w, x, u]);
        next.push([w, x, v]);
        out.push(next);
    }
    out
}

/// Isomorphism classes of triangulations on `n >= 5` vertices, as brute-force
/// canonical edge lists, found by exploring the edge-flip graph from a bipyramid.
///
/// Uses a bare face-set representation and never touches rotation systems.
pub fn flip_census(n: usize) -> BTreeSet<Vec<Edge>> {
    let start: Vec<[Vertex; 3]> = Triangulation::bipyramid(n - 2).faces().into_iter().map(|f| f.vertices()).collect();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(brute_canonical_edges(n, &edges_of(&start)));
    queue.push_back(start);
    while let Some(f) = queue.pop_front() {
        for g in flips(&f) {
            if seen.insert(brute_canonical_edges(n, &edges_of(&g))) {
                queue.push_back(g);
            }
        }
    }
    seen
}
