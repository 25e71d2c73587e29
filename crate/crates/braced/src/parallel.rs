//! Thread-pool drivers for the census and for sweeps over it.

use std::collections::BTreeMap;
use std::sync::Mutex;

use braced_core::canon::canonical_form;
use braced_core::enumerate::{self, brace_sets, EnumError, SIZE_GUARD};
use braced_core::{BracedTriangulation, Triangulation};
use rayon::prelude::*;

/// Runs `f` on a pool of `jobs` threads (at least one).
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}

fn next_level(level: &[Triangulation]) -> Vec<Triangulation> {
    // keyed by code; the earliest parent wins, so the output matches the sequential census
    let seen: Mutex<BTreeMap<Vec<u32>, (usize, Triangulation)>> = Mutex::new(BTreeMap::new());
    level.par_iter().enumerate().for_each(|(i, t)| {
        let found = enumerate::expand(t);
        let mut seen = seen.lock().expect("dedup set poisoned");
        for (code, s) in found {
            match seen.get(&code) {
                Some(&(j, _)) if j <= i => {}
                _ => {
                    seen.insert(code, (i, s));
                }
            }
        }
    });
    seen.into_inner().expect("dedup set poisoned").into_values().map(|(_, t)| t).collect()
}

/// Same result as [`enumerate::levels_up_to`], with each frontier expanded in parallel.
pub fn levels_up_to(n_max: usize, jobs: usize) -> Result<Vec<Vec<Triangulation>>, EnumError> {
    if n_max > SIZE_GUARD {
        return Err(EnumError::SizeGuardExceeded { requested: n_max, max: SIZE_GUARD });
    }
    let mut levels = Vec::new();
    if n_max < 4 {
        return Ok(levels);
    }
    let tet = Triangulation::tetrahedron();
    levels.push(vec![canonical_form(&tet).canonical_triangulation(&tet)]);
    with_jobs(jobs, || {
        while levels.len() + 3 < n_max {
            let next = next_level(levels.last().unwrap());
            levels.push(next);
        }
    });
    Ok(levels)
}

/// Stable identifier of the `j`-th brace set on the `i`-th triangulation.
pub fn instance_id(i: usize, j: usize) -> u64 {
    ((i as u64) << 24) | j as u64
}

/// Folds `visit` over every braced triangulation with `b` braces over `tris`,
/// in parallel, merging per-triangulation accumulators with `merge`.
pub fn fold_braced<T, F, M>(tris: &[Triangulation], b: usize, jobs: usize, visit: F, merge: M) -> T
where
    T: Default + Send,
    F: Fn(&mut T, &BracedTriangulation, u64) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    with_jobs(jobs, || {
        tris.par_iter()
            .enumerate()
            .map(|(i, t)| {
                let mut acc = T::default();
                for (j, s) in brace_sets(t, b).into_iter().enumerate() {
                    let g = BracedTriangulation::new(t.clone(), s).expect("brace sets are non-edges");
                    visit(&mut acc, &g, instance_id(i, j));
                }
                acc
            })
            .reduce(T::default, &merge)
    })
}
