//! The reproducibility suite: ten numbered criteria, runnable one at a time
//! or by section.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use braced_core::braced::replay;
use braced_core::enumerate::{base_graph_kind, catalog_from, irreducibles_over, BaseGraph, Catalog};
use braced_core::hypercyl::{self, Verdict};
use braced_core::linalg::{self, DMatrix, DVector};
use braced_core::mixed_norm::{self, DEFAULT_PS};
use braced_core::random::{random_doubly_braced, random_split_3d, rng_from_seed};
use braced_core::{are_isomorphic, brute_force_34, check_34, BracedTriangulation, Graph, Triangulation};
use rand::Rng;
use serde::Serialize;

use crate::io::CatalogJson;
use crate::oracle::{brute_canonical_edges, flip_census};
use crate::parallel;

pub const DEFAULT_SEED: u64 = 0x5eed_b7ac;

/// Largest census size; every doubly braced irreducible lives at or below it.
pub const CENSUS_MAX: usize = 12;
pub const UNIBRACED_MAX: usize = 7;
pub const CATALOG1_BUDGET_SECS: f64 = 10.0;
pub const CATALOG2_BUDGET_SECS: f64 = 600.0;
pub const REFERENCE_RANK_BUDGET_SECS: f64 = 1.0;
pub const REDUCTION_SAMPLES: usize = 1000;
pub const REDUCTION_MAX_VERTICES: usize = 25;
pub const HYPERCYL_MIN_GAP: f64 = 1e6;
pub const MIXED_MIN_GAP: f64 = 1e4;
pub const FLEX_PLACEMENTS: u64 = 100;
/// Bound on `|R m| / (‖R‖ ‖m‖)` for trivial flexes `m`.
pub const FLEX_RESIDUAL: f64 = 1e-12;
pub const RIGIDITY_TRIALS: u64 = 5;
pub const MINIMALITY_SAMPLES: usize = 20;
pub const BRUTE_FORCE_MAX: usize = 10;
pub const RANDOM_SPARSITY_GRAPHS: usize = 2000;
pub const SPLIT_BASES: usize = 20;
pub const SPLITS_PER_BASE: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Setting {
    Hypercyl,
    Mixed,
}

pub const BOTH: [Setting; 2] = [Setting::Hypercyl, Setting::Mixed];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    All,
    Combinatorics,
    Hypercyl,
    Mixed,
    Sparsity,
}

impl Section {
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Section::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
            Section::Combinatorics => &[1, 2, 3, 4],
            Section::Hypercyl => &[5, 7, 8, 10],
            Section::Mixed => &[6, 7, 8, 10],
            Section::Sparsity => &[9],
        }
    }

    pub fn settings(self) -> &'static [Setting] {
        match self {
            Section::Hypercyl => &[Setting::Hypercyl],
            Section::Mixed => &[Setting::Mixed],
            _ => &BOTH,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown section {0:?}; expected all, combinatorics (2-4), hypercyl (5), mixed (6) or sparsity")]
pub struct UnknownSection(String);

impl FromStr for Section {
    type Err = UnknownSection;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Section::All),
            "combinatorics" | "2" | "3" | "4" => Ok(Section::Combinatorics),
            "hypercyl" | "5" => Ok(Section::Hypercyl),
            "mixed" | "6" => Ok(Section::Mixed),
            "sparsity" => Ok(Section::Sparsity),
            _ => Err(UnknownSection(s.into())),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub criterion: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] criterion {}: {} ({}; {:.2} s)", self.criterion, self.title, self.detail, self.seconds)
    }
}

pub fn title(criterion: u8) -> &'static str {
    match criterion {
        1 => "unibraced catalog",
        2 => "doubly braced catalog",
        3 => "triangulation counts",
        4 => "reduction and replay",
        5 => "hypercylinder published ranks",
        6 => "mixed-norm published ranks",
        7 => "trivial flexes annihilated",
        8 => "census rigidity and minimality",
        9 => "(3,4)-tightness",
        10 => "vertex splits preserve rigidity",
        _ => "unknown criterion",
    }
}

/// splitmix64 of `a ^ b`, to spread instance ids into independent seeds.
pub fn mix(a: u64, b: u64) -> u64 {
    let mut z = (a ^ b.rotate_left(17)).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Outcome of looking for a confident rigid verdict at up to [`RIGIDITY_TRIALS`] placements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Attempt {
    /// Full row rank certified without a singular-value decomposition.
    Certified,
    /// Rigid by singular values, after the certificate was inconclusive.
    Classified,
    Failed,
}

/// `p` for the mixed setting is cycled through [`DEFAULT_PS`] by seed.
pub fn mixed_p(seed: u64) -> f64 {
    DEFAULT_PS[(seed % DEFAULT_PS.len() as u64) as usize]
}

pub fn rigid_within_trials(g: &Graph, setting: Setting, seed: u64) -> Attempt {
    let n = g.n();
    let p = mixed_p(seed);
    for i in 0..RIGIDITY_TRIALS {
        let s = seed.wrapping_add(i);
        let report = match setting {
            Setting::Hypercyl => {
                let q = hypercyl::random_placement(n, s);
                if hypercyl::certify_rigid(g, &q) {
                    return Attempt::Certified;
                }
                hypercyl::classify(g, &q).ok()
            }
            Setting::Mixed => {
                let q = mixed_norm::random_placement(n, s);
                if mixed_norm::certify_rigid(g, &q, p) {
                    return Attempt::Certified;
                }
                mixed_norm::classify(g, &q, p).ok()
            }
        };
        if let Some(r) = report {
            if r.verdict == Verdict::Rigid && r.rank == r.expected_rank {
                return Attempt::Classified;
            }
        }
    }
    Attempt::Failed
}

/// First confident verdict at up to [`RIGIDITY_TRIALS`] placements.
pub fn confident_verdict(g: &Graph, setting: Setting, seed: u64) -> Option<Verdict> {
    let p = mixed_p(seed);
    (0..RIGIDITY_TRIALS).find_map(|i| {
        let s = seed.wrapping_add(i);
        let v = match setting {
            Setting::Hypercyl => hypercyl::classify(g, &hypercyl::random_placement(g.n(), s)).ok()?.verdict,
            Setting::Mixed => mixed_norm::classify(g, &mixed_norm::random_placement(g.n(), s), p).ok()?.verdict,
        };
        v.is_confident().then_some(v)
    })
}

fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    linalg::singular_values(m).ok().and_then(|s| s.first().copied()).unwrap_or(f64::INFINITY)
}

/// Largest `|R m| / (‖R‖ ‖m‖)` over the trivial flex basis.
fn worst_residual(r: &DMatrix<f64>, flexes: &[DVector<f64>]) -> f64 {
    let rn = spectral_norm(r);
    flexes
        .iter()
        .map(|m| (r * m).norm() / (rn * m.norm()))
        .fold(0.0, f64::max)
}

#[derive(Default)]
struct SweepTally {
    graphs: u64,
    certified: u64,
    classified: u64,
    failures: Vec<u64>,
}

impl SweepTally {
    fn merge(mut self, other: SweepTally) -> SweepTally {
        self.graphs += other.graphs;
        self.certified += other.certified;
        self.classified += other.classified;
        self.failures.extend(other.failures);
        self
    }
}

#[derive(Default)]
struct TightTally {
    graphs: u64,
    not_tight: Vec<u64>,
}

pub struct Verifier {
    pub seed: u64,
    pub jobs: usize,
    catalog_file: Option<CatalogJson>,
    levels: OnceLock<Vec<Vec<Triangulation>>>,
    catalog: OnceLock<Catalog>,
}

impl Verifier {
    pub fn new(seed: u64, jobs: usize) -> Self {
        Verifier { seed, jobs, catalog_file: None, levels: OnceLock::new(), catalog: OnceLock::new() }
    }

    /// Criterion 2 also checks this catalog against the enumerated one.
    pub fn with_catalog_file(mut self, catalog: CatalogJson) -> Self {
        self.catalog_file = Some(catalog);
        self
    }

    /// Triangulations on 4 to [`CENSUS_MAX`] vertices, by level; computed once.
    pub fn levels(&self) -> &[Vec<Triangulation>] {
        self.levels
            .get_or_init(|| parallel::levels_up_to(CENSUS_MAX, self.jobs).expect("within the size guard"))
    }

    fn census(&self, n_max: usize) -> Vec<Triangulation> {
        self.levels()[..n_max - 3].iter().flatten().cloned().collect()
    }

    /// The complete doubly braced catalog; computed once.
    pub fn catalog(&self) -> &Catalog {
        self.catalog.get_or_init(|| {
            let tris = self.census(CENSUS_MAX);
            catalog_from(2, parallel::with_jobs(self.jobs, || irreducibles_over(&tris, 2)))
        })
    }

    pub fn run_section(&self, section: Section) -> Vec<CriterionReport> {
        section.criteria().iter().map(|&c| self.run(c, section.settings())).collect()
    }

    pub fn run(&self, criterion: u8, settings: &[Setting]) -> CriterionReport {
        let start = Instant::now();
        let (passed, detail) = match criterion {
            1 => self.unibraced_catalog(),
            2 => self.doubly_braced_catalog(),
            3 => self.triangulation_counts(),
            4 => self.reduction(),
            5 => self.hypercyl_ranks(),
            6 => self.mixed_ranks(),
            7 => self.trivial_flexes(settings),
            8 => self.census_rigidity(settings),
            9 => self.tightness(),
            10 => self.splits(settings),
            _ => (false, format!("no criterion {criterion}")),
        };
        CriterionReport { criterion, title: title(criterion), passed, detail, seconds: start.elapsed().as_secs_f64() }
    }

    fn unibraced_catalog(&self) -> (bool, String) {
        let start = Instant::now();
        let tris: Vec<Triangulation> = parallel::levels_up_to(UNIBRACED_MAX, self.jobs)
            .expect("within the size guard")
            .into_iter()
            .flatten()
            .collect();
        let cat = catalog_from(1, irreducibles_over(&tris, 1));
        let secs = start.elapsed().as_secs_f64();
        let names: Vec<&str> = cat.members.iter().map(|m| m.name.as_str()).collect();
        let ok = cat.len() == 1 && cat.members[0].graph.n() == 5 && secs < CATALOG1_BUDGET_SECS;
        (ok, format!("{} irreducible(s) {:?} up to {UNIBRACED_MAX} vertices", cat.len(), names))
    }

    fn doubly_braced_catalog(&self) -> (bool, String) {
        let start = Instant::now();
        let cat = self.catalog();
        let secs = start.elapsed().as_secs_f64();
        let six = cat
            .members
            .iter()
            .filter(|m| m.graph.n() == 6 && base_graph_kind(&m.graph) == Some(BaseGraph::K6MinusEdge))
            .count();
        let seven = cat
            .members
            .iter()
            .filter(|m| m.graph.n() == 7 && base_graph_kind(&m.graph) == Some(BaseGraph::K5GluedK5))
            .count();
        let mut ok = cat.len() == 5 && six == 3 && seven == 2 && secs < CATALOG2_BUDGET_SECS;
        let mut detail = format!(
            "{} irreducibles: {six} on 6 vertices over K6-e, {seven} on 7 over two K5s",
            cat.len()
        );
        if let Some(file) = &self.catalog_file {
            match compare_catalog(cat, file) {
                Ok(()) => detail.push_str("; catalog file matches"),
                Err(why) => {
                    ok = false;
                    detail.push_str(&format!("; catalog file differs: {why}"));
                }
            }
        }
        (ok, detail)
    }

    fn triangulation_counts(&self) -> (bool, String) {
        let levels = self.levels();
        let (c5, c6) = (levels[1].len(), levels[2].len());
        let ours: BTreeSet<_> = levels[3].iter().map(|t| brute_canonical_edges(7, &t.edges())).collect();
        let oracle = flip_census(7);
        let ok = c5 == 1 && c6 == 2 && ours.len() == levels[3].len() && ours == oracle;
        (ok, format!("n=5: {c5}, n=6: {c6}, n=7: {} generated vs {} by flips", levels[3].len(), oracle.len()))
    }

    fn reduction(&self) -> (bool, String) {
        let cat = self.catalog();
        let mut rng = rng_from_seed(mix(self.seed, 4));
        let mut good = 0;
        for _ in 0..REDUCTION_SAMPLES {
            let g = random_doubly_braced(REDUCTION_MAX_VERTICES, &mut rng);
            let (base, trace) = g.reduce();
            let back = replay(&base, &trace);
            let ok = cat.contains(&base)
                && back.is_ok_and(|h| are_isomorphic(h.tri(), h.braces(), g.tri(), g.braces()));
            good += usize::from(ok);
        }
        (good == REDUCTION_SAMPLES, format!("{good}/{REDUCTION_SAMPLES} reduced to the catalog and replayed"))
    }

    fn hypercyl_ranks(&self) -> (bool, String) {
        let start = Instant::now();
        let mut ok = true;
        let mut parts = Vec::new();
        for (pp, want) in hypercyl::reference_placements().into_iter().zip([24, 20]) {
            match hypercyl::classify(&pp.graph, &pp.placement) {
                Ok(r) => {
                    ok &= r.rank == want && r.rank_result.gap >= HYPERCYL_MIN_GAP;
                    let smin = r.rank_result.singular_values[r.rank - 1] / r.rank_result.sigma_max();
                    parts.push(format!("{}: rank {} (gap {:.1e}, smin/smax {smin:.1e})", pp.name, r.rank, r.rank_result.gap));
                }
                Err(e) => {
                    ok = false;
                    parts.push(format!("{}: {e}", pp.name));
                }
            }
        }
        ok &= start.elapsed().as_secs_f64() < REFERENCE_RANK_BUDGET_SECS;
        (ok, parts.join(", "))
    }

    fn mixed_ranks(&self) -> (bool, String) {
        let mut ok = true;
        let mut parts = Vec::new();
        for (pp, want, euclid_cap) in mixed_norm::reference_placements().into_iter().zip([(14, 12), (17, 15)]).map(|(a, (b, c))| (a, b, c)) {
            let mut ranks = Vec::new();
            for p in DEFAULT_PS {
                match mixed_norm::rank_at(&pp.graph, &pp.placement, p) {
                    Ok(r) => {
                        ok &= r.rank == want && r.gap >= MIXED_MIN_GAP;
                        ranks.push(r.rank);
                    }
                    Err(_) => ok = false,
                }
            }
            let euclid = mixed_norm::rank_at(&pp.graph, &pp.placement, 2.0).map(|r| r.rank).unwrap_or(usize::MAX);
            ok &= euclid <= euclid_cap;
            parts.push(format!("{}: ranks {ranks:?} at p in {DEFAULT_PS:?}, {euclid} at p=2", pp.name));
        }
        (ok, parts.join("; "))
    }

    fn trivial_flexes(&self, settings: &[Setting]) -> (bool, String) {
        let mut graphs: Vec<Graph> = self.catalog().members.iter().map(|m| m.graph.graph()).collect();
        if let Ok(one) = braced_core::find_irreducibles(UNIBRACED_MAX, 1) {
            graphs.extend(one.members.iter().map(|m| m.graph.graph()));
        }
        let mut worst: f64 = 0.0;
        let mut checked = 0usize;
        for (k, g) in graphs.iter().enumerate() {
            for i in 0..FLEX_PLACEMENTS {
                let seed = mix(self.seed, 7_000 + 1_000 * k as u64 + i);
                if settings.contains(&Setting::Hypercyl) {
                    let q = hypercyl::random_placement(g.n(), seed);
                    let r = hypercyl::rigidity_matrix(g, &q).expect("sized placement");
                    worst = worst.max(worst_residual(&r, &hypercyl::trivial_flex_basis(&q)));
                    checked += 1;
                }
                if settings.contains(&Setting::Mixed) {
                    let q = mixed_norm::random_placement(g.n(), seed);
                    let flexes = mixed_norm::trivial_flex_basis(&q);
                    for p in DEFAULT_PS {
                        let r = mixed_norm::rigidity_matrix(g, &q, p).expect("sized placement");
                        worst = worst.max(worst_residual(&r, &flexes));
                        checked += 1;
                    }
                }
            }
        }
        let ok = checked > 0 && worst <= FLEX_RESIDUAL;
        (ok, format!("{} graphs, {checked} matrices, worst relative residual {worst:.1e}", graphs.len()))
    }

    fn census_rigidity(&self, settings: &[Setting]) -> (bool, String) {
        let tris = self.census(CENSUS_MAX);
        let mut ok = true;
        let mut parts = Vec::new();
        for &setting in settings {
            let salt = match setting {
                Setting::Hypercyl => 1,
                Setting::Mixed => 2,
            };
            let seed = mix(self.seed, 8 * salt);
            let tally = parallel::fold_braced(
                &tris,
                2,
                self.jobs,
                |acc: &mut SweepTally, g, id| {
                    acc.graphs += 1;
                    match rigid_within_trials(&g.graph(), setting, mix(seed, id)) {
                        Attempt::Certified => acc.certified += 1,
                        Attempt::Classified => acc.classified += 1,
                        Attempt::Failed => acc.failures.push(id),
                    }
                },
                SweepTally::merge,
            );
            ok &= tally.failures.is_empty() && tally.graphs > 0;
            let (minimal, sampled) = self.minimality(setting);
            ok &= minimal == sampled;
            parts.push(format!(
                "{setting:?}: {}/{} rigid ({} by certificate, {} by SVD), {minimal}/{sampled} edge deletions flexible",
                tally.certified + tally.classified,
                tally.graphs,
                tally.certified,
                tally.classified
            ));
        }
        (ok, parts.join("; "))
    }

    /// Edge deletions on sampled instances that come out confidently flexible, out of those tried.
    fn minimality(&self, setting: Setting) -> (usize, usize) {
        let mut rng = rng_from_seed(mix(self.seed, 88));
        let (mut flexible, mut tried) = (0, 0);
        for _ in 0..MINIMALITY_SAMPLES {
            let g = random_doubly_braced(CENSUS_MAX, &mut rng).graph();
            for &e in g.edges() {
                let h = g.without_edge(e).expect("edge of the graph");
                tried += 1;
                if confident_verdict(&h, setting, rng.random()) == Some(Verdict::Flexible) {
                    flexible += 1;
                }
            }
        }
        (flexible, tried)
    }

    fn tightness(&self) -> (bool, String) {
        let tris = self.census(CENSUS_MAX);
        let tally = parallel::fold_braced(
            &tris,
            2,
            self.jobs,
            |acc: &mut TightTally, g, id| {
                acc.graphs += 1;
                if !check_34(&g.graph()).tight {
                    acc.not_tight.push(id);
                }
            },
            |mut a, b| {
                a.graphs += b.graphs;
                a.not_tight.extend(b.not_tight);
                a
            },
        );
        let small = self.census(BRUTE_FORCE_MAX);
        let mut graphs: Vec<Graph> = small.iter().map(|t| BracedTriangulation::unbraced(t.clone()).graph()).collect();
        for b in [1, 2] {
            graphs.extend(braced_core::enumerate::braced_over(small.clone(), b).map(|g| g.graph()));
        }
        let mut rng = rng_from_seed(mix(self.seed, 9));
        for _ in 0..RANDOM_SPARSITY_GRAPHS {
            let n = rng.random_range(2..=BRUTE_FORCE_MAX);
            let density = rng.random_range(0.2..0.95);
            let mut edges = Vec::new();
            for a in 0..n as u32 {
                for b in a + 1..n as u32 {
                    if rng.random_bool(density) {
                        edges.push((a, b));
                    }
                }
            }
            graphs.push(Graph::new(n, edges).expect("simple"));
        }
        let disagree = graphs
            .iter()
            .filter(|g| {
                let fast = check_34(g);
                brute_force_34(g).map_or(true, |slow| (slow.sparse, slow.tight) != (fast.sparse, fast.tight))
            })
            .count();
        let ok = tally.not_tight.is_empty() && tally.graphs > 0 && disagree == 0;
        (
            ok,
            format!(
                "{}/{} census graphs tight; pebble game and subset check disagree on {disagree} of {} small graphs",
                tally.graphs - tally.not_tight.len() as u64,
                tally.graphs,
                graphs.len()
            ),
        )
    }

    fn splits(&self, settings: &[Setting]) -> (bool, String) {
        let mut ok = true;
        let mut parts = Vec::new();
        for &setting in settings {
            let mut rng = rng_from_seed(mix(self.seed, 10));
            let (mut rigid, mut confident, mut splits) = (0, 0, 0);
            for _ in 0..SPLIT_BASES {
                let mut g = random_doubly_braced(CENSUS_MAX, &mut rng).graph();
                if confident_verdict(&g, setting, rng.random()) != Some(Verdict::Rigid) {
                    continue;
                }
                for _ in 0..SPLITS_PER_BASE {
                    g = random_split_3d(&g, &mut rng);
                    splits += 1;
                    match confident_verdict(&g, setting, rng.random()) {
                        Some(Verdict::Rigid) => {
                            rigid += 1;
                            confident += 1;
                        }
                        Some(_) => confident += 1,
                        None => {}
                    }
                }
            }
            let want = SPLIT_BASES * SPLITS_PER_BASE;
            ok &= splits == want && confident > 0 && rigid == confident;
            parts.push(format!("{setting:?}: {rigid}/{confident} confident verdicts rigid over {splits} splits"));
        }
        (ok, parts.join("; "))
    }
}

/// Checks that `file` lists the same isomorphism classes as `cat`, with correct codes.
pub fn compare_catalog(cat: &Catalog, file: &CatalogJson) -> Result<(), String> {
    if file.b != cat.b {
        return Err(format!("brace count {} vs {}", file.b, cat.b));
    }
    let mut codes = Vec::new();
    for m in &file.members {
        let g = m.graph.build().map_err(|e| format!("{}: {e}", m.name))?;
        let code = g.canonical_code().to_hex();
        if code != m.code {
            return Err(format!("{}: stated code does not match its graph", m.name));
        }
        codes.push(code);
    }
    codes.sort();
    let mut want: Vec<String> = cat.members.iter().map(|m| m.code.to_hex()).collect();
    want.sort();
    if codes != want {
        return Err(format!("{} members listed, {} expected, or classes differ", codes.len(), want.len()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_parse() {
        assert_eq!("5".parse::<Section>().unwrap(), Section::Hypercyl);
        assert_eq!("3".parse::<Section>().unwrap(), Section::Combinatorics);
        assert!("7".parse::<Section>().is_err());
        assert_eq!(Section::Mixed.settings(), &[Setting::Mixed]);
    }

    #[test]
    fn quick_criteria_pass() {
        let v = Verifier::new(DEFAULT_SEED, 1);
        for c in [5, 6] {
            let r = v.run(c, &BOTH);
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn mix_spreads() {
        assert_ne!(mix(1, 2), mix(2, 1));
        assert_ne!(mix(0, 0), 0);
    }
}
