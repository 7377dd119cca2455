//! The acceptance battery: exhaustive and seeded checks of the main theorems
//! at small `n`, collected into a deterministic report.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combi::{eta, find_w_configs, from_w_collection, spectrum, validate_combi, Combi};
use crate::contraction::{enumerate_legal_paths, n_contract, n_expand};
use crate::enumerate::{
    chamber_domain, chamber_pair_domain, enumerate_maximal, hypercube_rank, hypersimplex_domain,
    hypersimplex_rank, summarize_maximal,
};
use crate::error::{Error, Result};
use crate::flips::{flip_graph, lowering_flip, set_flip_graph, FlipGraph};
use crate::geometry::Generators;
use crate::patterns::sampling::{
    all_separated_cycles, chord_over_spoke_pattern, crossing_pattern, random_combi, random_combi_from,
    random_graph_pattern, random_pattern,
};
use crate::patterns::{
    classify_pattern, forbidden_quadruple, merge_repair, split_quasi, verify_face_domains, verify_pattern,
    CyclicPattern, PatternClass,
};
use crate::separation::Separation;
use crate::subset::{GroundSize, Permutation, SetFamily};

pub const SUITE_MIN_N: usize = 3;
pub const SUITE_MAX_N: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub max_n: usize,
    pub seed: u64,
    /// Worker threads; the report does not depend on it.
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: SUITE_MAX_N,
            seed: 7,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    /// Named counts of what was examined.
    pub checked: BTreeMap<String, u64>,
    /// First failures, if any.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
}

const MAX_FAILURES: usize = 5;

/// Collects counts and failures for one criterion.
struct Tally {
    checked: BTreeMap<String, u64>,
    failures: Vec<String>,
    failed: bool,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: BTreeMap::new(),
            failures: Vec::new(),
            failed: false,
        }
    }

    fn count(&mut self, key: &str, by: u64) {
        *self.checked.entry(key.to_string()).or_insert(0) += by;
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failed = true;
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn at_least(&mut self, key: &str, want: u64) {
        let have = self.checked.get(key).copied().unwrap_or(0);
        self.check(have >= want, || format!("only {have} {key}, need {want}"));
    }

    fn fail_on<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", what()));
                None
            }
        }
    }

    fn finish(self, id: usize, name: &'static str) -> CriterionReport {
        CriterionReport {
            id,
            name,
            passed: !self.failed,
            checked: self.checked,
            failures: self.failures,
        }
    }
}

fn ground(n: usize) -> GroundSize {
    GroundSize::new(n).expect("suite sizes are valid")
}

fn rng_for(seed: u64, id: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (id as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn maximal_w(n: usize) -> Result<Vec<SetFamily>> {
    Ok(enumerate_maximal(&SetFamily::hypercube(ground(n)), Separation::Weak)?.maximal_collections)
}

/// Sizes of all maximal w-collections of `2^[n]` against the known rank.
pub fn hypercube_purity(n: usize) -> Result<(bool, BTreeMap<usize, u64>)> {
    let s = summarize_maximal(&SetFamily::hypercube(GroundSize::new(n)?), Separation::Weak)?;
    Ok((s.pure && s.rank() == Some(hypercube_rank(n)), s.by_size))
}

fn hypercube_criterion(c: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::new();
    for n in SUITE_MIN_N..=c.max_n {
        if let Some((ok, sizes)) = t.fail_on(hypercube_purity(n), || format!("n={n}")) {
            t.count(&format!("collections_n{n}"), sizes.values().sum());
            t.check(ok, || format!("n={n}: sizes {sizes:?}, expected only {}", hypercube_rank(n)));
        }
    }
    t.finish(1, "hypercube w-purity")
}

fn w_rank(t: &mut Tally, d: &SetFamily, want: usize, what: impl Fn() -> String) {
    if let Some(s) = t.fail_on(summarize_maximal(d, Separation::Weak), &what) {
        t.check(s.pure && s.rank() == Some(want), || {
            format!("{}: sizes {:?}, expected {want}", what(), s.by_size)
        });
    }
}

fn rank_criterion(c: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::new();
    let n = c.max_n.min(4);
    let perms = Permutation::all(n);
    for w in &perms {
        w_rank(&mut t, &chamber_domain(w), w.length() + n + 1, || format!("chamber domain of {w}"));
        t.count("chamber_domains", 1);
    }
    for lo in &perms {
        for w in perms.iter().filter(|w| lo.inversions().is_subset(&w.inversions())) {
            let want = w.length() - lo.length() + n + 1;
            match chamber_pair_domain(lo, w) {
                Ok(d) => w_rank(&mut t, &d, want, || format!("pair domain of ({lo}, {w})")),
                Err(e) => t.check(false, || format!("({lo}, {w}): {e}")),
            }
            t.count("chamber_pair_domains", 1);
        }
    }
    for big in 1..=c.max_n + 1 {
        for hi in 0..=big {
            for lo in 0..=hi {
                if let Some(d) = t.fail_on(hypersimplex_domain(big, lo, hi), || format!("slice {lo}..{hi} of [{big}]")) {
                    w_rank(&mut t, &d, hypersimplex_rank(big, lo, hi), || format!("slice {lo}..{hi} of [{big}]"));
                    t.count("hypersimplex_domains", 1);
                }
            }
        }
    }
    t.check(hypersimplex_rank(4, 2, 2) == 5 && hypersimplex_rank(5, 2, 2) == 7, || {
        "hypersimplex spot checks".into()
    });
    t.finish(2, "rank formulas")
}

fn bijection_criterion(c: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::new();
    for n in 1..=c.max_n {
        let Some(all) = t.fail_on(maximal_w(n), || format!("n={n}")) else {
            continue;
        };
        for f in &all {
            let Some(k) = t.fail_on(from_w_collection(f), || format!("rebuild {f}")) else {
                continue;
            };
            t.fail_on(validate_combi(&k), || format!("validate rebuild of {f}"));
            t.check(&spectrum(&k) == f, || format!("spectrum of rebuild of {f}"));
            t.check(from_w_collection(f).as_ref() == Ok(&k), || format!("second rebuild of {f}"));
            t.count(&format!("collections_n{n}"), 1);
        }
    }
    t.finish(3, "combi bijection")
}

fn arc_set(g: &FlipGraph) -> BTreeSet<(SetFamily, SetFamily)> {
    g.arcs
        .iter()
        .map(|a| (g.nodes[a.0].clone(), g.nodes[a.1].clone()))
        .collect()
}

fn flip_criterion(c: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::new();
    for n in 1..=c.max_n.min(4) {
        let (Some(fg), Some(sg)) = (
            t.fail_on(flip_graph(n), || format!("combi flips n={n}")),
            t.fail_on(set_flip_graph(n), || format!("set flips n={n}")),
        ) else {
            continue;
        };
        let nodes = |g: &FlipGraph| g.nodes.iter().cloned().collect::<BTreeSet<_>>();
        t.check(nodes(&fg) == nodes(&sg) && arc_set(&fg) == arc_set(&sg), || {
            format!("n={n}: graphs differ")
        });
        let want_nodes = maximal_w(n).map(|v| v.len()).unwrap_or(0);
        t.check(fg.nodes.len() == want_nodes, || format!("n={n}: flip graph misses collections"));
        let src: Vec<&SetFamily> = fg.sources().iter().map(|&v| &fg.nodes[v]).collect();
        let snk: Vec<&SetFamily> = fg.sinks().iter().map(|&v| &fg.nodes[v]).collect();
        t.check(src == [&SetFamily::intervals(ground(n))], || format!("n={n}: sources {src:?}"));
        t.check(snk == [&SetFamily::co_intervals(ground(n))], || format!("n={n}: sinks {snk:?}"));
        for f in &fg.nodes {
            let Some(k) = t.fail_on(from_w_collection(f), || format!("rebuild {f}")) else {
                continue;
            };
            for w in find_w_configs(&k) {
                if let Some(low) = t.fail_on(lowering_flip(&k, &w), || format!("lower {f}")) {
                    t.check(eta(&low) + 1 == eta(&k), || format!("eta across a lowering flip of {f}"));
                    t.count("lowering_flips", 1);
                }
            }
        }
        t.count(&format!("nodes_n{n}"), fg.nodes.len() as u64);
        t.count(&format!("arcs_n{n}"), fg.arcs.len() as u64);
    }
    t.finish(4, "flip coherence")
}

fn contraction_criterion(c: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::new();
    let mut combies: BTreeMap<usize, Vec<Combi>> = BTreeMap::new();
    for n in 1..=c.max_n {
        let Some(all) = t.fail_on(maximal_w(n), || format!("n={n}")) else {
            continue;
        };
        let ks: Vec<Combi> = all.iter().filter_map(|f| from_w_collection(f).ok()).collect();
        combies.insert(n, ks);
    }
    for n in 2..=c.max_n {
        for k in &combies[&n] {
            let back = n_contract(k).and_then(|(k1, p)| n_expand(&k1, &p));
            t.check(back.as_ref() == Ok(k), || format!("contract then expand at n={n}"));
            t.count("contracted", 1);
        }
    }
    for n in 1..c.max_n {
        for k in &combies[&n] {
            for p in enumerate_legal_paths(k) {
                let back = n_expand(k, &p).and_then(|big| n_contract(&big));
                t.check(back.as_ref() == Ok(&(k.clone(), p.clone())), || {
                    format!("expand then contract at n={n}")
                });
                t.count("expanded", 1);
            }
        }
    }
    t.finish(5, "contraction/expansion bijection")
}

/// A non-empty pattern spread over `3..=max_n`, drawn from a random combi.
fn sample_pattern(rng: &mut ChaCha8Rng, t: usize, max_n: usize, unit_only: bool) -> Option<(Combi, CyclicPattern)> {
    let n = SUITE_MIN_N + t % (max_n - SUITE_MIN_N + 1);
    let k = random_combi(ground(n), 8 * n, rng).ok()?;
    let p = random_pattern(&spectrum(&k), unit_only, rng)?;
    Some((k, p))
}

fn gens(n: usize) -> Generators {
    Generators::default_for(n).expect("suite sizes are valid")
}

fn pattern_criterion(c: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::new();
    let mut rng = rng_for(c.seed, 6);
    let (mut simple, mut tries) = (0, 0);
    while simple < 500 && tries < 5000 {
        tries += 1;
        let Some((_, p)) = sample_pattern(&mut rng, tries, c.max_n, true) else {
            continue;
        };
        let class = classify_pattern(&p, &gens(p.n()));
        t.check(class == Ok(PatternClass::Simple), || format!("{p}: {class:?}"));
        simple += 1;
    }
    t.count("a_simple_patterns", simple);
    t.at_least("a_simple_patterns", 500);

    let mut generalized = Vec::new();
    let mut tries = 0;
    while generalized.len() < 500 && tries < 5000 {
        tries += 1;
        if let Some((_, p)) = sample_pattern(&mut rng, tries, c.max_n, false) {
            generalized.push(p);
        }
    }
    for m in 0..60 {
        let n = (4 + m % 2).min(c.max_n);
        generalized.extend(crossing_pattern(ground(n), &mut rng));
        generalized.extend(chord_over_spoke_pattern(ground(n), &mut rng));
    }
    for p in &generalized {
        match classify_pattern(p, &gens(p.n())) {
            Ok(class) => {
                let crossing = class == PatternClass::SelfCrossing;
                t.check(crossing == forbidden_quadruple(p).is_some(), || format!("{p}: verdicts differ"));
                t.count(if crossing { "b_crossing" } else { "b_non_crossing" }, 1);
            }
            Err(e) => t.check(false, || format!("{p}: {e}")),
        }
    }
    t.count("b_generalized_patterns", generalized.len() as u64);
    t.at_least("b_generalized_patterns", 500);

    let verify = |t: &mut Tally, p: &CyclicPattern, relation: Separation, key: &str| {
        let g = gens(p.n());
        if classify_pattern(p, &g).is_ok_and(|c| c != PatternClass::SelfCrossing) {
            let v = verify_pattern(p, &g, relation);
            t.check(v.as_ref().is_ok_and(|v| v.holds()), || format!("{p}: {v:?}"));
            t.count(key, 1);
        }
    };
    if c.max_n >= 4 {
        for unit_only in [true, false] {
            for cycle in all_separated_cycles(ground(4), unit_only, Separation::Weak) {
                if let Ok(p) = CyclicPattern::new(ground(4), cycle) {
                    if unit_only || !p.has_unit_steps_only() {
                        verify(&mut t, &p, Separation::Weak, "c_exhaustive_n4");
                    }
                }
            }
        }
    }
    if c.max_n >= 5 {
        let mut tries = 0;
        while t.checked.get("c_sampled_n5").copied().unwrap_or(0) < 100 && tries < 2000 {
            tries += 1;
            let Ok(k) = random_combi(ground(5), 40, &mut rng) else {
                continue;
            };
            if let Some(p) = random_pattern(&spectrum(&k), tries % 2 == 0, &mut rng) {
                verify(&mut t, &p, Separation::Weak, "c_sampled_n5");
            }
        }
        t.at_least("c_sampled_n5", 100);
    }

    let strong_n = c.max_n.min(4);
    for cycle in all_separated_cycles(ground(strong_n), true, Separation::Strong) {
        if let Ok(p) = CyclicPattern::new(ground(strong_n), cycle) {
            verify(&mut t, &p, Separation::Strong, "d_strong_patterns");
        }
    }

    let graph_n = c.max_n.min(4);
    let mut graphs = 0;
    while graphs < 50 {
        let Ok(k) = random_combi(ground(graph_n), 30, &mut rng) else {
            continue;
        };
        let edges = 4 + graphs % 8;
        let Some(h) = t.fail_on(random_graph_pattern(&spectrum(&k), edges, &mut rng), || "graph sampling".into()) else {
            continue;
        };
        let r = verify_face_domains(&h, &gens(graph_n));
        t.check(r.as_ref().is_ok_and(|r| r.holds()), || format!("graph pattern: {r:?}"));
        graphs += 1;
    }
    t.count("e_graph_patterns", graphs as u64);
    t.finish(6, "pattern theorems")
}

fn exchange_criterion(c: &SuiteConfig) -> CriterionReport {
    let mut t = Tally::new();
    let mut rng = rng_for(c.seed, 7);
    let (mut done, mut tries) = (0u64, 0usize);
    let lo = c.max_n.clamp(SUITE_MIN_N, 4);
    while done < 100 && tries < 5000 {
        tries += 1;
        let n = lo + tries % (c.max_n - lo + 1);
        let Ok(k) = random_combi(ground(n), 8 * n, &mut rng) else {
            continue;
        };
        let Some(p) = random_pattern(&spectrum(&k), tries % 3 == 0, &mut rng) else {
            continue;
        };
        if classify_pattern(&p, &gens(n)).map_or(true, |c| c == PatternClass::SelfCrossing) {
            continue;
        }
        let Some(k2) = t.fail_on(random_combi_from(&k, &p.members(), 8 * n, &mut rng), || format!("walk keeping {p}")) else {
            continue;
        };
        let halves = split_quasi(&k, &p).and_then(|(a, _)| split_quasi(&k2, &p).map(|(_, b)| (a, b)));
        let Some((a, b)) = t.fail_on(halves, || format!("split along {p}")) else {
            continue;
        };
        let merged = merge_repair(&a, &b).and_then(|m| validate_combi(&m.combi).map(|_| m));
        if let Some(m) = t.fail_on(merged, || format!("merge along {p}")) {
            let v = spectrum(&m.combi);
            let covered = a.vertices().iter().chain(b.vertices().iter()).all(|x| v.contains(x));
            t.check(covered, || format!("merge along {p} drops a vertex"));
            t.count("semi_lenses", (a.semi_lens_count() + b.semi_lens_count()) as u64);
        }
        done += 1;
    }
    t.count("triples", done);
    t.at_least("triples", 100);
    t.finish(7, "cross-tiling exchange")
}

type Criterion = fn(&SuiteConfig) -> CriterionReport;

const CRITERIA: [Criterion; 7] = [
    hypercube_criterion,
    rank_criterion,
    bijection_criterion,
    flip_criterion,
    contraction_criterion,
    pattern_criterion,
    exchange_criterion,
];

/// Runs every criterion. Randomness depends only on `seed` and the
/// criterion, so the report is the same for any number of jobs.
pub fn run_suite(c: &SuiteConfig) -> Result<SuiteReport> {
    if !(SUITE_MIN_N..=SUITE_MAX_N).contains(&c.max_n) {
        return Err(Error::ResourceGuard(format!(
            "the suite runs with {SUITE_MIN_N} <= max-n <= {SUITE_MAX_N}, got {}",
            c.max_n
        )));
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<CriterionReport>>> = Mutex::new(vec![None; CRITERIA.len()]);
    std::thread::scope(|s| {
        for _ in 0..c.jobs.clamp(1, CRITERIA.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(run) = CRITERIA.get(i) else {
                    break;
                };
                let r = run(c);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    let criteria: Vec<CriterionReport> = slots.into_inner().unwrap().into_iter().map(Option::unwrap).collect();
    Ok(SuiteReport {
        config: *c,
        passed: criteria.iter().all(|r| r.passed),
        criteria,
    })
}

/// Runs one criterion by number (1 to 7).
pub fn run_criterion(id: usize, c: &SuiteConfig) -> Option<CriterionReport> {
    CRITERIA.get(id.checked_sub(1)?).map(|run| run(c))
}
