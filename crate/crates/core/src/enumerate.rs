//! Exhaustive generation of sphere triangulations and braced triangulations,
//! and the irreducible catalogs they yield.
//!
//! Triangulations are grown level by level from the tetrahedron by vertex
//! splitting; each level is deduplicated by canonical code. Brace sets are
//! taken up to the automorphism group of the underlying triangulation, so
//! every braced triangulation is produced exactly once.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::braced::{is_irreducible_with, BracedTriangulation};
use crate::canon::{canonical_form, CanonicalCode};
use crate::graph::{find_isomorphism, k5_glued_k5, k6_minus_edge};
use crate::surface::{edge, Edge, Triangulation, Vertex};

/// Largest vertex count the enumerators accept.
pub const SIZE_GUARD: usize = 13;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("{requested} vertices exceeds the enumeration limit of {max}")]
    SizeGuardExceeded { requested: usize, max: usize },
    #[error("catalogs are only available for one or two braces, not {0}")]
    UnsupportedBraceCount(usize),
    #[error("{n_max} vertices is below the bound {bound}; the catalog may be incomplete")]
    IncompleteBound { n_max: usize, bound: usize, partial: Catalog },
}

fn guard(n_max: usize) -> Result<(), EnumError> {
    if n_max > SIZE_GUARD {
        return Err(EnumError::SizeGuardExceeded { requested: n_max, max: SIZE_GUARD });
    }
    Ok(())
}

/// All distinct single splits of `t`, keyed by the code of their canonical form.
pub fn expand(t: &Triangulation) -> Vec<(Vec<u32>, Triangulation)> {
    let mut out: BTreeMap<Vec<u32>, Triangulation> = BTreeMap::new();
    for (v1, a, b) in t.split_choices() {
        let s = t.split_unchecked(v1, a, b);
        let f = canonical_form(&s);
        if let alloc::collections::btree_map::Entry::Vacant(e) = out.entry(f.code.clone()) {
            e.insert(f.canonical_triangulation(&s));
        }
    }
    out.into_iter().collect()
}

/// The next level of the census: every triangulation on one more vertex,
/// canonical and sorted by code.
pub fn next_level(level: &[Triangulation]) -> Vec<Triangulation> {
    let mut seen: BTreeMap<Vec<u32>, Triangulation> = BTreeMap::new();
    for t in level {
        for (code, s) in expand(t) {
            seen.entry(code).or_insert(s);
        }
    }
    seen.into_values().collect()
}

/// Triangulations grouped by vertex count: `levels[i]` holds those on `i + 4` vertices.
pub fn levels_up_to(n_max: usize) -> Result<Vec<Vec<Triangulation>>, EnumError> {
    guard(n_max)?;
    let mut levels = Vec::new();
    if n_max < 4 {
        return Ok(levels);
    }
    let tet = Triangulation::tetrahedron();
    let f = canonical_form(&tet);
    levels.push(alloc::vec![f.canonical_triangulation(&tet)]);
    while levels.len() + 3 < n_max {
        let next = next_level(levels.last().unwrap());
        levels.push(next);
    }
    Ok(levels)
}

/// Every triangulation on 4 to `n_max` vertices, once each, in canonical form.
pub fn triangulations_up_to(n_max: usize) -> Result<Vec<Triangulation>, EnumError> {
    Ok(levels_up_to(n_max)?.into_iter().flatten().collect())
}

/// Vertex pairs of `t` that are not edges, lexicographic.
pub fn non_edges(t: &Triangulation) -> Vec<Edge> {
    let n = t.n() as Vertex;
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !t.has_edge(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// True if `braces` (sorted) is the least image of itself under `auts`.
fn is_orbit_representative(braces: &[Edge], auts: &[Vec<Vertex>], scratch: &mut Vec<Edge>) -> bool {
    for aut in auts {
        scratch.clear();
        scratch.extend(braces.iter().map(|&(a, b)| edge(aut[a as usize], aut[b as usize])));
        scratch.sort_unstable();
        if scratch.as_slice() < braces {
            return false;
        }
    }
    true
}

/// One brace set per isomorphism class of braced triangulations over `t`.
pub fn brace_sets(t: &Triangulation, b: usize) -> Vec<Vec<Edge>> {
    let auts = canonical_form(t).automorphisms();
    let ne = non_edges(t);
    let mut out = Vec::new();
    let mut scratch = Vec::new();
    match b {
        0 => out.push(Vec::new()),
        1 => {
            for &e in &ne {
                if is_orbit_representative(&[e], &auts, &mut scratch) {
                    out.push(alloc::vec![e]);
                }
            }
        }
        _ => {
            let mut idx: Vec<usize> = (0..b).collect();
            if b > ne.len() {
                return out;
            }
            let mut set = Vec::with_capacity(b);
            loop {
                set.clear();
                set.extend(idx.iter().map(|&i| ne[i]));
                if is_orbit_representative(&set, &auts, &mut scratch) {
                    out.push(set.clone());
                }
                // next combination
                let mut k = b;
                while k > 0 && idx[k - 1] == ne.len() - b + k - 1 {
                    k -= 1;
                }
                if k == 0 {
                    break;
                }
                idx[k - 1] += 1;
                for j in k..b {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
    }
    out
}

/// Streams every braced triangulation with `b` braces on at most `n_max`
/// vertices, one per isomorphism class.
pub fn braced_up_to(n_max: usize, b: usize) -> Result<impl Iterator<Item = BracedTriangulation>, EnumError> {
    if !(1..=2).contains(&b) {
        return Err(EnumError::UnsupportedBraceCount(b));
    }
    let tris = triangulations_up_to(n_max)?;
    Ok(braced_over(tris, b))
}

/// Braced triangulations over a given list of triangulations.
pub fn braced_over(tris: Vec<Triangulation>, b: usize) -> impl Iterator<Item = BracedTriangulation> {
    tris.into_iter().flat_map(move |t| {
        let sets = brace_sets(&t, b);
        sets.into_iter()
            .map(move |s| BracedTriangulation::from_parts_unchecked(t.clone(), s))
    })
}

/// Vertex bound that makes a catalog search complete.
pub fn completeness_bound(b: usize) -> usize {
    match b {
        1 => 11 * b - 4,
        _ => (11 * b - 4).min(4 * b * b - 2 * b),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub code: CanonicalCode,
    pub graph: BracedTriangulation,
}

/// Irreducible braced triangulations with a fixed number of braces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub b: usize,
    pub members: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The entry isomorphic to `g`, if any.
    pub fn find(&self, g: &BracedTriangulation) -> Option<&CatalogEntry> {
        if g.b() != self.b {
            return None;
        }
        let code = g.canonical_code();
        self.members.iter().find(|m| m.code == code)
    }

    pub fn contains(&self, g: &BracedTriangulation) -> bool {
        self.find(g).is_some()
    }
}

fn name_of(g: &BracedTriangulation, fallback: usize) -> String {
    let t = g.tri();
    let n = g.n();
    let br = g.braces();
    let adjacent = br.len() == 2 && {
        let (a, b) = (br[0], br[1]);
        a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
    };
    let octahedron = n == 6 && (0..6).all(|v| t.degree(v) == 4);
    let kind = if adjacent { "adjacent" } else { "disjoint" };
    match (br.len(), n) {
        (1, 5) => "braced-bipyramid".into(),
        (2, 6) if octahedron => "doubly-braced-octahedron".into(),
        (2, 6) => format!("capped-hexahedron-{kind}-braces"),
        (2, 7) if adjacent => "seven-vertex-adjacent-braces".into(),
        (2, 7) => "seven-vertex-non-adjacent-braces".into(),
        _ => format!("irreducible-{n}-{fallback}"),
    }
}

/// Irreducibles among the braced triangulations over `tris`.
pub fn irreducibles_over<'a>(tris: impl IntoIterator<Item = &'a Triangulation>, b: usize) -> Vec<BracedTriangulation> {
    let mut out = Vec::new();
    for t in tris {
        let pc = t.contractible_edges();
        for s in brace_sets(t, b) {
            if is_irreducible_with(t, &pc, &s) {
                out.push(BracedTriangulation::from_parts_unchecked(t.clone(), s));
            }
        }
    }
    out
}

/// Assembles a catalog from irreducibles, ordering members by size then code.
pub fn catalog_from(b: usize, irreducibles: Vec<BracedTriangulation>) -> Catalog {
    let mut coded: Vec<(usize, CanonicalCode, BracedTriangulation)> = irreducibles
        .into_iter()
        .map(|g| (g.n(), g.canonical_code(), g))
        .collect();
    coded.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
    coded.dedup_by(|x, y| x.1 == y.1);
    let members = coded
        .into_iter()
        .enumerate()
        .map(|(i, (_, code, graph))| CatalogEntry { name: name_of(&graph, i), code, graph })
        .collect();
    Catalog { b, members }
}

/// Searches all braced triangulations on at most `n_max` vertices for irreducibles.
///
/// Below the completeness bound the partial catalog is returned inside
/// [`EnumError::IncompleteBound`].
pub fn find_irreducibles(n_max: usize, b: usize) -> Result<Catalog, EnumError> {
    if !(1..=2).contains(&b) {
        return Err(EnumError::UnsupportedBraceCount(b));
    }
    let tris = triangulations_up_to(n_max)?;
    let cat = catalog_from(b, irreducibles_over(&tris, b));
    let bound = completeness_bound(b);
    if n_max < bound {
        return Err(EnumError::IncompleteBound { n_max, bound, partial: cat });
    }
    Ok(cat)
}

/// Which named rigid base the underlying graph of `g` is, if either.
pub fn base_graph_kind(g: &BracedTriangulation) -> Option<BaseGraph> {
    let h = g.graph();
    if h.n() == 6 && find_isomorphism(&h, &k6_minus_edge()).is_some() {
        Some(BaseGraph::K6MinusEdge)
    } else if h.n() == 7 && find_isomorphism(&h, &k5_glued_k5()).is_some() {
        Some(BaseGraph::K5GluedK5)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseGraph {
    /// `K6` minus one edge.
    K6MinusEdge,
    /// Two copies of `K5` sharing a triangle.
    K5GluedK5,
}
