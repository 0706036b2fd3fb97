//! Runs every invariant over the corpus and tallies the outcomes per
//! property. Output is deterministic for any number of worker threads.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::config::Limits;
use crate::corpus;
use crate::error::{Error, Result};
use crate::freeprod::{
    bounded_malnormal_check, bounded_words, builtin_construction, d2p_amalgam, not_xt_witness,
    power_conjugacy_search, FreeConstruction, PWord, Side,
};
use crate::group::{FiniteGroup, Lattice, SubgroupSet, IDENTITY};
use crate::properties::{
    replay_witness, verify_partition_count, zero_divisor_scan, Analysis, GroupPredicate, Operator, PredicateEval,
    SentenceReport,
};
use crate::report::{Method, PropertyReport};
use crate::variety::{q_predicate, var_gen_oracle, OracleVerdict, VarietySpec};
use crate::words::{is_identity, marginal_subgroup, verbal_subgroup, FreeWord};

/// Seed for the randomized word properties.
pub const SEED: u64 = 0x5eed_0001;
/// Words generated by the round-trip and padding properties.
pub const RANDOM_WORDS: usize = 1000;
/// `n` ranges over `1..=N_MAX` in the universal sentences.
pub const N_MAX: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Outcome {
    Pass,
    Fail(String),
    Skip,
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(what())
    }
}

/// Pass/fail/skip counts for one property. Skipped cases fall outside the
/// property's hypotheses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyTally {
    pub property: String,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    pub failures: Vec<String>,
}

impl PropertyTally {
    fn from_outcomes(name: &str, outcomes: Vec<Outcome>) -> PropertyTally {
        let mut t = PropertyTally { property: name.to_string(), passed: 0, failed: 0, skipped: 0, failures: Vec::new() };
        for o in outcomes {
            match o {
                Outcome::Pass => t.passed += 1,
                Outcome::Skip => t.skipped += 1,
                Outcome::Fail(msg) => {
                    t.failed += 1;
                    t.failures.push(msg);
                }
            }
        }
        t
    }

    pub fn ok(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub properties: Vec<PropertyTally>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(PropertyTally::ok)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyTally> {
        self.properties.iter().find(|p| p.property == name)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(&self.properties).expect("tallies serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.properties {
            let status = if p.ok() { "ok" } else { "FAILED" };
            out.push_str(&format!(
                "{} {status}: passed={} failed={} skipped={}\n",
                p.property, p.passed, p.failed, p.skipped
            ));
            for f in &p.failures {
                out.push_str(&format!("  {f}\n"));
            }
        }
        out
    }
}

/// Everything computed once per (group, variety) pair.
pub struct Cell {
    pub variety: Arc<VarietySpec>,
    pub analysis: Analysis,
    pub member: PropertyReport,
    pub xt_direct: PropertyReport,
    pub xt_centralizer: PropertyReport,
    pub csx_direct: PropertyReport,
    pub csx_condition: PropertyReport,
    pub sentences: SentenceReport,
    pub maximal: Vec<SubgroupSet>,
}

impl Cell {
    fn new(g: &Arc<FiniteGroup>, lattice: &Arc<Lattice>, x: &Arc<VarietySpec>, limits: &Limits) -> Result<Cell> {
        let analysis = Analysis::new(g.clone(), x.clone(), *limits).with_lattice(lattice.clone());
        Ok(Cell {
            variety: x.clone(),
            member: analysis.member_report()?,
            xt_direct: analysis.is_xt(Method::Direct)?,
            xt_centralizer: analysis.is_xt(Method::Centralizer)?,
            csx_direct: analysis.is_csx(Method::Direct)?,
            csx_condition: analysis.is_csx(Method::Condition)?,
            sentences: analysis.sentences(N_MAX)?,
            maximal: analysis.maximal_x_subgroups()?,
            analysis,
        })
    }

    pub fn xt(&self) -> bool {
        self.xt_direct.verdict
    }

    pub fn csx(&self) -> bool {
        self.csx_direct.verdict
    }

    pub fn member(&self) -> bool {
        self.member.verdict
    }
}

pub struct GroupData {
    pub group: Arc<FiniteGroup>,
    pub lattice: Arc<Lattice>,
    pub cells: Vec<Cell>,
}

impl GroupData {
    fn label(&self, c: &Cell) -> String {
        format!("{} {}", self.group.name(), c.variety.name)
    }
}

/// The corpus grid with every cell evaluated.
pub struct Grid {
    pub limits: Limits,
    pub groups: Vec<GroupData>,
    pub varieties: Vec<Arc<VarietySpec>>,
}

impl Grid {
    pub fn build(limits: &Limits) -> Result<Grid> {
        let varieties: Vec<Arc<VarietySpec>> = corpus::varieties()?.into_iter().map(Arc::new).collect();
        let groups = corpus::groups(limits)?
            .into_par_iter()
            .map(|g| {
                let g = Arc::new(g);
                let lattice = Arc::new(Lattice::new(&g, limits)?);
                let cells = varieties
                    .par_iter()
                    .map(|x| Cell::new(&g, &lattice, x, limits))
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupData { group: g, lattice, cells })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Grid { limits: *limits, groups, varieties })
    }

    pub fn group(&self, name: &str) -> Option<&GroupData> {
        self.groups.iter().find(|d| d.group.name() == name)
    }

    fn cells(&self) -> impl Iterator<Item = (&GroupData, &Cell)> {
        self.groups.iter().flat_map(|d| d.cells.iter().map(move |c| (d, c)))
    }
}

type PropertyFn = fn(&Grid) -> Result<Vec<Outcome>>;

const PROPERTIES: &[(&str, PropertyFn)] = &[
    ("abelian-iff-symmetric-table", abelian_iff_symmetric),
    ("abelian-x-centralizer-is-centralizer", abelian_x_centralizer),
    ("amalgam-coherence", amalgam_coherence),
    ("amalgam-factors-malnormal", amalgam_factors_malnormal),
    ("amalgam-not-xt", amalgam_not_xt),
    ("associativity", associativity),
    ("centralizer-maximality", centralizer_maximality),
    ("commutator-marginal-is-center", commutator_marginal_is_center),
    ("csx-methods-agree", csx_methods_agree),
    ("decomposability", decomposability),
    ("domain-methods-agree", domain_methods_agree),
    ("finite-csx-is-member", finite_csx_is_member),
    ("generate-idempotent", generate_idempotent),
    ("length-subadditivity", length_subadditivity),
    ("malnormal-cross-check", malnormal_cross_check),
    ("malnormal-transitive", malnormal_transitive),
    ("marginal-full-iff-identity", marginal_full_iff_identity),
    ("maximal-intersections", maximal_intersections),
    ("metabelian-weak-transitivity", metabelian_weak_transitivity),
    ("nilpotent-csx-is-xt", nilpotent_csx_is_xt),
    ("normal-form-homomorphism", normal_form_homomorphism),
    ("normal-form-soundness", normal_form_soundness),
    ("operator-idempotence", operator_idempotence),
    ("oracle-consistency", oracle_consistency),
    ("orbit-stabilizer", orbit_stabilizer),
    ("partition-count", partition_count),
    ("power-conjugacy", power_conjugacy),
    ("q-symmetry", q_symmetry),
    ("sentences-characterize", sentences_characterize),
    ("subgroup-closure", subgroup_closure),
    ("verbal-marginal-normal", verbal_marginal_normal),
    ("verbal-trivial-iff-identity", verbal_trivial_iff_identity),
    ("variety-monotonicity", variety_monotonicity),
    ("witness-replay", witness_replay),
    ("word-padding", word_padding),
    ("word-round-trip", word_round_trip),
    ("x-centralizer-example", x_centralizer_example),
    ("xt-methods-agree", xt_methods_agree),
    ("xt-nonmember-centerless", xt_nonmember_centerless),
];

pub fn property_names() -> Vec<&'static str> {
    PROPERTIES.iter().map(|p| p.0).collect()
}

/// Runs every property on `jobs` worker threads.
pub fn run(limits: &Limits, jobs: usize) -> Result<SuiteReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParam(format!("thread pool: {e}")))?;
    pool.install(|| {
        let grid = Grid::build(limits)?;
        run_on(&grid)
    })
}

pub fn run_on(grid: &Grid) -> Result<SuiteReport> {
    let properties = PROPERTIES
        .par_iter()
        .map(|(name, f)| f(grid).map(|o| PropertyTally::from_outcomes(name, o)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport { properties })
}

// ---- group core ----

fn associativity(grid: &Grid) -> Result<Vec<Outcome>> {
    Ok(grid
        .groups
        .par_iter()
        .map(|d| {
            let g = &d.group;
            let bad = g.elements().find_map(|a| {
                g.elements().find_map(|b| {
                    let ab = g.mul(a, b);
                    g.elements().find(|&c| g.mul(ab, c) != g.mul(a, g.mul(b, c))).map(|c| (a, b, c))
                })
            });
            check(bad.is_none(), || format!("{}: {:?}", g.name(), bad))
        })
        .collect())
}

fn orbit_stabilizer(grid: &Grid) -> Result<Vec<Outcome>> {
    Ok(grid
        .groups
        .iter()
        .flat_map(|d| {
            let g = &d.group;
            g.elements()
                .map(|a| {
                    let class = g.conjugacy_class(a);
                    let mut conj: Vec<usize> = g.elements().map(|x| g.conj(a, x)).collect();
                    conj.sort_unstable();
                    conj.dedup();
                    let ok = conj == class && class.len() * g.centralizer(a).order() == g.order();
                    check(ok, || format!("{} at {}", g.name(), g.label(a)))
                })
                .collect::<Vec<_>>()
        })
        .collect())
}

fn generate_idempotent(grid: &Grid) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for d in &grid.groups {
        for h in d.lattice.subgroups() {
            let again = d.group.generate(h.members())?;
            out.push(check(again == *h, || format!("{}: {:?}", d.group.name(), h.generators())));
        }
    }
    Ok(out)
}

fn malnormal_cross_check(grid: &Grid) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for d in &grid.groups {
        let g = &d.group;
        for h in d.lattice.subgroups() {
            let a = g.is_malnormal(h)?;
            let b = g.malnormal_by_intersections(h);
            let witness_ok = match a.witness {
                Some((x, y)) => !h.contains(x) && h.contains(g.mul(g.mul(x, y), g.inv(x))),
                None => true,
            };
            out.push(check(a.verdict == b && witness_ok, || format!("{}: {:?}", g.name(), h.generators())));
        }
    }
    Ok(out)
}

fn malnormal_transitive(grid: &Grid) -> Result<Vec<Outcome>> {
    Ok(grid
        .groups
        .par_iter()
        .flat_map_iter(|d| {
            let g = &d.group;
            let lat = &d.lattice;
            let in_g: Vec<bool> = lat.subgroups().iter().map(|h| g.malnormal_within(h, &g.whole()).verdict).collect();
            let mut out = Vec::new();
            for hi in 0..lat.len() {
                if !in_g[hi] {
                    continue;
                }
                let h = lat.get(hi);
                for ki in lat.subs(hi) {
                    let k = lat.get(ki);
                    if g.malnormal_within(k, h).verdict {
                        out.push(check(in_g[ki], || format!("{}: {:?} in {:?}", g.name(), k.generators(), h.generators())));
                    }
                }
            }
            out
        })
        .collect())
}

// ---- words ----

/// A random word in up to three variables, as text.
pub fn random_word_text(rng: &mut ChaCha8Rng, depth: u32) -> String {
    let atom = |rng: &mut ChaCha8Rng| -> String {
        match rng.gen_range(0..10) {
            0 => "1".into(),
            _ => format!("x{}", rng.gen_range(1..=3)),
        }
    };
    let terms = rng.gen_range(1..=3);
    let mut out = Vec::new();
    for _ in 0..terms {
        let base = if depth == 0 {
            atom(rng)
        } else {
            match rng.gen_range(0..6) {
                0 => format!("({})", random_word_text(rng, depth - 1)),
                1 => {
                    let k = rng.gen_range(2..=3);
                    let parts: Vec<String> = (0..k).map(|_| random_word_text(rng, depth - 1)).collect();
                    format!("[{}]", parts.join(","))
                }
                _ => atom(rng),
            }
        };
        let term = match rng.gen_range(0..4) {
            0 => format!("{base}^{}", rng.gen_range(-3i64..=3)),
            _ => base,
        };
        out.push(term);
    }
    out.join(" ")
}

fn word_round_trip(_: &Grid) -> Result<Vec<Outcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::with_capacity(RANDOM_WORDS);
    for _ in 0..RANDOM_WORDS {
        let text = random_word_text(&mut rng, 2);
        let outcome = match FreeWord::parse(&text) {
            // `^0` is rejected by the grammar; that rejection is itself correct.
            Err(_) if text.contains("^0") => Outcome::Pass,
            Err(e) => Outcome::Fail(format!("`{text}`: {e}")),
            Ok(w) => {
                let printed = w.to_string();
                match FreeWord::parse(&printed) {
                    Ok(again) => check(again == w && again.to_string() == printed, || format!("`{text}`")),
                    Err(e) => Outcome::Fail(format!("`{printed}`: {e}")),
                }
            }
        };
        out.push(outcome);
    }
    Ok(out)
}

fn word_padding(grid: &Grid) -> Result<Vec<Outcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let mut out = Vec::with_capacity(RANDOM_WORDS);
    let mut made = 0;
    while made < RANDOM_WORDS {
        let Ok(w) = FreeWord::parse(&random_word_text(&mut rng, 2)) else { continue };
        made += 1;
        let d = &grid.groups[rng.gen_range(0..grid.groups.len())];
        let g = &d.group;
        let assignment: Vec<usize> = (0..3).map(|_| rng.gen_range(0..g.order())).collect();
        let mut raw: Vec<(usize, i64)> = w.syllables().to_vec();
        for _ in 0..rng.gen_range(1..=3) {
            let at = rng.gen_range(0..=raw.len());
            let v = rng.gen_range(1..=3);
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            raw.splice(at..at, [(v, e), (v, -e)]);
        }
        let direct = raw.iter().fold(IDENTITY, |acc, &(v, e)| g.mul(acc, g.pow(assignment[v - 1], e)));
        let padded = FreeWord::from_syllables(raw)?;
        let ok = padded == w && direct == w.evaluate(g, &assignment)?;
        out.push(check(ok, || format!("{} on {}", w, g.name())));
    }
    Ok(out)
}

fn basis_words(grid: &Grid) -> Vec<FreeWord> {
    let mut ws: Vec<FreeWord> = grid.varieties.iter().flat_map(|x| x.basis.iter().cloned()).collect();
    ws.sort_by_key(|w| w.to_string());
    ws.dedup();
    ws
}

fn marginal_full_iff_identity(grid: &Grid) -> Result<Vec<Outcome>> {
    let ws = basis_words(grid);
    let mut out = Vec::new();
    for d in &grid.groups {
        for w in &ws {
            let m = marginal_subgroup(&d.group, std::slice::from_ref(w), &grid.limits)?;
            let id = is_identity(&d.group, w, &grid.limits)?.holds;
            out.push(check(m.is_whole() == id, || format!("{} {w}", d.group.name())));
        }
    }
    Ok(out)
}

fn commutator_marginal_is_center(grid: &Grid) -> Result<Vec<Outcome>> {
    let c = FreeWord::parse("[x1,x2]")?;
    grid.groups
        .iter()
        .map(|d| {
            let m = marginal_subgroup(&d.group, std::slice::from_ref(&c), &grid.limits)?;
            Ok(check(m == d.group.center(), || d.group.name().to_string()))
        })
        .collect()
}

fn verbal_trivial_iff_identity(grid: &Grid) -> Result<Vec<Outcome>> {
    let ws = basis_words(grid);
    let mut out = Vec::new();
    for d in &grid.groups {
        for w in &ws {
            let v = verbal_subgroup(&d.group, std::slice::from_ref(w), &grid.limits)?;
            let id = is_identity(&d.group, w, &grid.limits)?.holds;
            out.push(check(v.is_trivial() == id, || format!("{} {w}", d.group.name())));
        }
    }
    Ok(out)
}

fn verbal_marginal_normal(grid: &Grid) -> Result<Vec<Outcome>> {
    let ws = basis_words(grid);
    let mut out = Vec::new();
    for d in &grid.groups {
        for w in &ws {
            let one = std::slice::from_ref(w);
            let v = verbal_subgroup(&d.group, one, &grid.limits)?;
            let m = marginal_subgroup(&d.group, one, &grid.limits)?;
            out.push(check(d.group.is_normal(&v) && d.group.is_normal(&m), || format!("{} {w}", d.group.name())));
        }
    }
    Ok(out)
}

// ---- varieties ----

fn abelian_iff_symmetric(grid: &Grid) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for d in &grid.groups {
        let g = &d.group;
        let symmetric = g.elements().all(|a| g.elements().all(|b| g.mul(a, b) == g.mul(b, a)));
        let cell = d.cells.iter().find(|c| c.variety.name == "abelian").expect("abelian in corpus");
        out.push(check(cell.member() == symmetric, || g.name().to_string()));
    }
    Ok(out)
}

fn variety_monotonicity(grid: &Grid) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    let k = grid.varieties.len();
    for yi in 0..k {
        for xi in 0..k {
            if xi == yi {
                continue;
            }
            // Premise, extensionally on the corpus groups: Y-members are X-members.
            let premise = grid.groups.iter().all(|d| !d.cells[yi].member() || d.cells[xi].member());
            if !premise {
                out.push(Outcome::Skip);
                continue;
            }
            // Conclusion on every subgroup of every corpus group.
            let (x, y) = (&grid.varieties[xi], &grid.varieties[yi]);
            for d in &grid.groups {
                for h in d.lattice.subgroups() {
                    let my = y.member_on(&d.group, h, &grid.limits)?.member;
                    let mx = x.member_on(&d.group, h, &grid.limits)?.member;
                    out.push(check(!my || mx, || format!("{} {:?}: {} but not {}", d.group.name(), h.generators(), y.name, x.name)));
                }
            }
        }
    }
    Ok(out)
}

fn q_symmetry(grid: &Grid) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for (d, c) in grid.cells() {
        let g = &d.group;
        if g.order() > 24 {
            out.push(Outcome::Skip);
            continue;
        }
        let mut bad = None;
        'scan: for a in g.elements() {
            for b in a + 1..g.order() {
                if q_predicate(g, a, b, &c.variety, &grid.limits)? != q_predicate(g, b, a, &c.variety, &grid.limits)? {
                    bad = Some((a, b));
                    break 'scan;
                }
            }
        }
        out.push(check(bad.is_none(), || format!("{}: {:?}", d.label(c), bad)));
    }
    Ok(out)
}

fn oracle_consistency(grid: &Grid) -> Result<Vec<Outcome>> {
    let bases = corpus::known_bases(&grid.limits)?;
    let pairs: Vec<(&FiniteGroup, &VarietySpec, &GroupData)> =
        bases.iter().flat_map(|(a, x)| grid.groups.iter().map(move |d| (a, x, d))).collect();
    pairs
        .par_iter()
        .map(|(a, x, d)| {
            let g = &d.group;
            let by_basis = x.is_member(g, &grid.limits)?.member;
            Ok(match var_gen_oracle(a, g, g.generators(), &grid.limits)? {
                OracleVerdict::Member { .. } => check(by_basis, || format!("{} in Var({}) but basis says no", g.name(), a.name())),
                OracleVerdict::NonMember { law } => {
                    let holds_in_a = is_identity(a, &law, &grid.limits)?.holds;
                    let fails_in_g = law.evaluate(g, g.generators())? != IDENTITY;
                    check(!by_basis && holds_in_a && fails_in_g, || {
                        format!("{} vs Var({}): law {law}, basis member {by_basis}", g.name(), a.name())
                    })
                }
                OracleVerdict::Unknown { .. } => Outcome::Skip,
            })
        })
        .collect()
}

// ---- properties ----

fn x_centralizer_example(grid: &Grid) -> Result<Vec<Outcome>> {
    let d = grid.group("S4").ok_or_else(|| Error::UnknownBuiltin("S4".into()))?;
    let g = &d.group;
    let met = VarietySpec::builtin("metabelian")?;
    let (a, x, y) = (g.element("(2 3)")?, g.element("(1 2)")?, g.element("(2 3 4)")?);
    let q = |u: usize| q_predicate(g, a, u, &met, &grid.limits);
    Ok(vec![check(q(x)? && q(y)? && !q(g.mul(x, y))?, || "S4 metabelian at (2 3)".into())])
}

fn abelian_x_centralizer(grid: &Grid) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for (d, c) in grid.cells() {
        if c.variety.name != "abelian" {
            continue;
        }
        for a in d.group.elements() {
            let xc = c.analysis.x_centralizer(a)?;
            let classic = d.group.centralizer(a);
            out.push(check(xc.members == classic.members(), || format!("{} at {}", d.group.name(), d.group.label(a))));
        }
    }
    Ok(out)
}

fn xt_methods_agree(grid: &Grid) -> Result<Vec<Outcome>> {
    Ok(grid
        .cells()
        .map(|(d, c)| check(c.xt_direct.verdict == c.xt_centralizer.verdict, || d.label(c)))
        .collect())
}

fn csx_methods_agree(grid: &Grid) -> Result<Vec<Outcome>> {
    Ok(grid
        .cells()
        .map(|(d, c)| {
            if !c.xt() {
                return Outcome::Skip;
            }
            check(c.csx_direct.verdict == c.csx_condition.verdict, || d.label(c))
        })
        .collect())
}

fn witness_replay(grid: &Grid) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for (d, c) in grid.cells() {
        for r in [&c.member, &c.xt_direct, &c.xt_centralizer, &c.csx_direct, &c.csx_condition] {
            match &r.witness {
                Some(w) => {
                    let ok = replay_witness(&d.group, &c.variety, &grid.limits, w)?;
                    out.push(check(ok, || format!("{} {} {}", d.label(c), r.check, r.method)));
                }
                None => out.push(Outcome::Skip),
            }
        }
    }
    Ok(out)
}

fn centralizer_maximality(grid: &Grid) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for (d, c) in grid.cells() {
        if !c.xt() {
            out.push(Outcome::Skip);
            continue;
        }
        let g = &d.group;
        let mut ok = true;
        let mut cx: HashMap<usize, Vec<usize>> = HashMap::new();
        for a in g.elements().skip(1) {
            let xc = c.analysis.x_centralizer(a)?;
            if !xc.members.is_empty() {
                let is_max = c.maximal.iter().any(|m| m.members() == xc.members);
                ok &= xc.closed && is_max;
            }
            cx.insert(a, xc.members);
        }
        for m in &c.maximal {
            ok &= m.members().iter().skip(1).all(|a| cx[a] == m.members());
        }
        out.push(check(ok, || d.label(c)));
    }
    Ok(out)
}

/// Every finite cyclic group lies in X; the finite-group results need this.
fn contains_cyclics(x: &VarietySpec) -> bool {
    x.contains_all_abelian()
}

fn finite_csx_is_member(grid: &Grid) -> Result<Vec<Outcome>> {
    Ok(grid
        .cells()
        .map(|(d, c)| {
            if !contains_cyclics(&c.variety) {
                return Outcome::Skip;
            }
            check(!c.csx() || c.member(), || d.label(c))
        })
        .collect())
}

fn partition_count(grid: &Grid) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    let cyclic_of_order = |g: &FiniteGroup, n: usize| -> Result<SubgroupSet> {
        let x = g.elements().find(|&x| g.element_order(x) == n).ok_or_else(|| Error::InvalidParam("no such element".into()))?;
        g.generate(&[x])
    };
    for (name, orders, terms) in [("frobenius21", [7, 3], [6, 14]), ("S3", [3, 2], [2, 3])] {
        let d = grid.group(name).ok_or_else(|| Error::UnknownBuiltin(name.into()))?;
        let g = &d.group;
        let reps = orders.iter().map(|&n| cyclic_of_order(g, n)).collect::<Result<Vec<_>>>()?;
        let r = verify_partition_count(g, &reps)?;
        out.push(check(
            r.partition_ok && r.count_identity_ok && r.terms == terms && r.lhs == g.order() - 1,
            || format!("{name}: {r:?}"),
        ));
    }
    Ok(out)
}

fn subgroup_closure(grid: &Grid) -> Result<Vec<Outcome>> {
    let jobs: Vec<(&GroupData, &SubgroupSet)> =
        grid.groups.iter().flat_map(|d| d.lattice.subgroups().iter().map(move |h| (d, h))).collect();
    let nested = jobs
        .par_iter()
        .map(|(d, h)| {
            let sub = Arc::new(d.group.induced(h));
            let lat = Arc::new(Lattice::new(&sub, &grid.limits)?);
            let mut out = Vec::new();
            for c in &d.cells {
                let an = Analysis::new(sub.clone(), c.variety.clone(), grid.limits).with_lattice(lat.clone());
                let xt = an.is_xt(Method::Direct)?.verdict;
                let csx = an.is_csx(Method::Direct)?.verdict;
                out.push(check((!c.xt() || xt) && (!c.csx() || csx), || format!("{} in {}", sub.name(), d.label(c))));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(nested.into_iter().flatten().collect())
}

fn operator_idempotence(grid: &Grid) -> Result<Vec<Outcome>> {
    let nested = grid
        .groups
        .par_iter()
        .map(|d| {
            let ev = PredicateEval::new(&d.group, &d.lattice, &grid.limits);
            let mut out = Vec::new();
            for x in &grid.varieties {
                let p = GroupPredicate::Member(x.clone());
                for op in [Operator::T, Operator::Cs] {
                    let once = ev.check(&p, op)?.verdict;
                    let twice = ev.check(&op.apply(p.clone()), op)?.verdict;
                    out.push(check(once == twice, || format!("{} {}{}", d.group.name(), op.name(), x.name)));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(nested.into_iter().flatten().collect())
}

fn maximal_intersections(grid: &Grid) -> Result<Vec<Outcome>> {
    Ok(grid
        .cells()
        .map(|(d, c)| {
            if !c.variety.contains_all_abelian() {
                return Outcome::Skip;
            }
            let m = &c.maximal;
            let trivial =
                (0..m.len()).all(|i| (i + 1..m.len()).all(|j| m[i].intersection_order(&m[j]) == 1));
            check(c.xt() == trivial, || d.label(c))
        })
        .collect())
}

fn xt_nonmember_centerless(grid: &Grid) -> Result<Vec<Outcome>> {
    grid.cells()
        .map(|(d, c)| {
            if !c.variety.contains_all_abelian() {
                return Ok(Outcome::Skip);
            }
            if !(c.xt() && !c.member()) {
                return Ok(Outcome::Pass);
            }
            let centre = d.group.center().is_trivial();
            let marginal = marginal_subgroup(&d.group, &c.variety.basis, &grid.limits)?.is_trivial();
            Ok(check(centre && marginal, || format!("{}: centre trivial {centre}, marginal trivial {marginal}", d.label(c))))
        })
        .collect()
}

fn decomposability(grid: &Grid) -> Result<Vec<Outcome>> {
    Ok(grid
        .cells()
        .filter(|(d, _)| corpus::PRODUCTS.contains(&d.group.name()))
        .map(|(d, c)| {
            if !c.variety.contains_all_abelian() {
                return Outcome::Skip;
            }
            check(!c.xt() || c.member(), || d.label(c))
        })
        .collect())
}

fn domain_methods_agree(grid: &Grid) -> Result<Vec<Outcome>> {
    grid.groups
        .iter()
        .map(|d| {
            let a = zero_divisor_scan(&d.group, Method::Definition, &grid.limits)?;
            let b = zero_divisor_scan(&d.group, Method::NormalCentralizer, &grid.limits)?;
            Ok(check(a.report.verdict == b.report.verdict, || d.group.name().to_string()))
        })
        .collect()
}

fn sentences_characterize(grid: &Grid) -> Result<Vec<Outcome>> {
    Ok(grid
        .cells()
        .map(|(d, c)| {
            let s = &c.sentences;
            let xt_ok = s.xt_axioms() == c.xt();
            let csx_ok = !c.xt() || s.mal_x.holds == c.csx();
            check(xt_ok && csx_ok, || format!("{}: sentences {:?}", d.label(c), s))
        })
        .collect())
}

fn nilpotent_csx_is_xt(grid: &Grid) -> Result<Vec<Outcome>> {
    Ok(grid
        .cells()
        .map(|(d, c)| {
            if !c.variety.name.starts_with("nilpotent-") {
                return Outcome::Skip;
            }
            check(!c.csx() || c.xt(), || d.label(c))
        })
        .collect())
}

fn metabelian_weak_transitivity(grid: &Grid) -> Result<Vec<Outcome>> {
    let abelian = VarietySpec::builtin("abelian")?;
    let mut out = Vec::new();
    for (d, c) in grid.cells() {
        if c.variety.name != "metabelian" || !c.csx() {
            continue;
        }
        let flags = c.analysis.x_flags()?;
        let lat = &d.lattice;
        let mut bad = None;
        'scan: for i in 0..lat.len() {
            for j in i + 1..lat.len() {
                if !flags[i] || !flags[j] {
                    continue;
                }
                let mut bits = lat.get(i).bits().clone();
                bits.intersect_with(lat.get(j).bits());
                let meet = lat.position_bits(&bits).expect("intersections are subgroups");
                if abelian.member_on(&d.group, lat.get(meet), &grid.limits)?.member {
                    continue;
                }
                if !flags[lat.join(&d.group, i, j)] {
                    bad = Some((i, j));
                    break 'scan;
                }
            }
        }
        out.push(check(bad.is_none(), || format!("{}: {:?}", d.label(c), bad)));
    }
    Ok(out)
}

// ---- free and amalgamated products ----

fn c3c3(grid: &Grid) -> Result<FreeConstruction> {
    builtin_construction("c3xc3", &grid.limits)
}

fn normal_form_soundness(grid: &Grid) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for k in [c3c3(grid)?, d2p_amalgam(3, &grid.limits)?] {
        let words = bounded_words(&k, 8, &grid.limits)?;
        for g in words.iter().take(1000) {
            let renorm = k.multiply(g, &PWord::identity());
            let ok = renorm == *g && k.multiply(g, &k.invert(g)).is_identity();
            out.push(check(ok, || format!("{}: {}", k.name(), k.display(g))));
        }
    }
    Ok(out)
}

fn normal_form_homomorphism(grid: &Grid) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for k in [c3c3(grid)?, d2p_amalgam(3, &grid.limits)?, d2p_amalgam(5, &grid.limits)?] {
        for s in [Side::A, Side::B] {
            let f = k.factor(s).group();
            let ok = f.elements().all(|x| {
                f.elements().all(|y| k.multiply(&k.letter(s, x), &k.letter(s, y)) == k.letter(s, f.mul(x, y)))
            });
            let injective = f.elements().all(|x| x == IDENTITY || !k.letter(s, x).is_identity());
            out.push(check(ok && injective, || format!("{} factor {s}", k.name())));
        }
    }
    Ok(out)
}

fn amalgam_coherence(grid: &Grid) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for p in [3, 5, 7] {
        let k = d2p_amalgam(p, &grid.limits)?;
        let ok = (0..k.c_order()).all(|c| k.letter(Side::A, k.embedded(Side::A)[c]) == k.letter(Side::B, k.embedded(Side::B)[c]));
        let a1b1 = k.parse("a1 b1")?.is_identity();
        out.push(check(ok && a1b1, || format!("d2p:{p}")));
    }
    Ok(out)
}

fn length_subadditivity(grid: &Grid) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for k in [c3c3(grid)?, d2p_amalgam(3, &grid.limits)?] {
        let words = bounded_words(&k, 3, &grid.limits)?;
        let ok = words.iter().all(|u| words.iter().all(|v| k.multiply(u, v).len() <= u.len() + v.len()));
        out.push(check(ok, || k.name()));
    }
    Ok(out)
}

fn power_conjugacy(grid: &Grid) -> Result<Vec<Outcome>> {
    let r = power_conjugacy_search(&c3c3(grid)?, 6, 3, &grid.limits)?;
    Ok(vec![check(r.instances > 0 && r.violations.is_empty(), || format!("{:?}", r.violations))])
}

fn amalgam_factors_malnormal(grid: &Grid) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for p in [3, 5] {
        let k = d2p_amalgam(p, &grid.limits)?;
        for s in [Side::A, Side::B] {
            let whole = k.factor(s).group().whole();
            let r = bounded_malnormal_check(&k, s, &whole, 4, &grid.limits)?;
            out.push(check(r.ok && r.witness.is_none() && r.checked > 0, || format!("d2p:{p} factor {s}")));
        }
    }
    Ok(out)
}

fn amalgam_not_xt(grid: &Grid) -> Result<Vec<Outcome>> {
    let met = VarietySpec::builtin("metabelian")?;
    let mut out = Vec::new();
    for p in [3, 5] {
        let k = d2p_amalgam(p, &grid.limits)?;
        let r = not_xt_witness(&k, &met, 2, &grid.limits)?;
        out.push(check(r.certified(), || format!("d2p:{p}: {r:?}")));
    }
    Ok(out)
}

/// Per-property pass counts, keyed by name.
pub fn summary(report: &SuiteReport) -> BTreeMap<String, (u64, u64, u64)> {
    report.properties.iter().map(|p| (p.property.clone(), (p.passed, p.failed, p.skipped))).collect()
}
