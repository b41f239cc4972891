//! Exhaustive verification suites over small universes.
//!
//! Each suite runs a list of named checks and reports, per check, how many
//! cases it covered and the first counterexample found. Sampled suites draw
//! from a seeded generator so a run is reproducible from its seed.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::expr::{Alphabet, ExprError, Expression, Universe};
use crate::machine::{
    constant_machine, delta_machine, expressions_up_to, identity_machine, never_halting_machine,
    symbol_map_machine, universal_apply, MachineError, Move, Program, RunOutcome, TMachine,
    Transition, TRUE_SYMBOL,
};
use crate::problem::{all_problems, Problem, ProblemError, SolutionSet};
use crate::resolution::{
    general_form, iterate_meta, meta_trial, AnalogyStep, CandidateFamily, Family, MetaResolution,
    Metaproblem, Meter, Pool, Resolution, ResolutionError,
};
use crate::resolver::{
    analogy_step, cross_check_analogy, evolution_chain, hierarchy_check, meta_trial_via_learner,
    meta_trial_via_resolutions, range_power, Binding, ChainCondition, ChainConfig, ChainError,
    ElementFn, FunctionSet, ProblemSpace, Resolver, ResolverError,
};
use crate::sweep::{self, Strategy};
use crate::topology::{
    classify, feasibility_table, halting_demo, halting_demo_pool, verify_partition,
    ClassificationFlags, Evidence, Flag, Place, RawFlags, TopologyError, HALTING_DEMO_HALTERS,
};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Number of sampled analogy chains.
pub const ANALOGY_CHAINS: usize = 20;

/// Number of sampled function sets in the resolver suite.
pub const FUNCTION_SETS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error(transparent)]
    Resolver(#[from] ResolverError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("suite {suite} runs on sizes {min}..={max}, not {size}")]
    BadSize {
        suite: Suite,
        size: usize,
        min: usize,
        max: usize,
    },
}

impl From<ChainError> for SuiteError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::Resolver(e) => SuiteError::Resolver(e),
            ChainError::ConditionViolated { .. } => {
                unreachable!("condition violations are checked, not propagated")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Algebra,
    Solutions,
    Trials,
    Analogies,
    Meta,
    Machines,
    Topology,
    Resolvers,
    Bijection,
}

impl Suite {
    pub fn all() -> [Suite; 9] {
        use Suite::*;
        [
            Algebra, Solutions, Trials, Analogies, Meta, Machines, Topology, Resolvers, Bijection,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Solutions => "solutions",
            Suite::Trials => "trials",
            Suite::Analogies => "analogies",
            Suite::Meta => "meta",
            Suite::Machines => "machines",
            Suite::Topology => "topology",
            Suite::Resolvers => "resolvers",
            Suite::Bijection => "bijection",
        }
    }

    /// Universe size (or index count for the bijection) used by default.
    pub fn default_size(self) -> usize {
        match self {
            Suite::Algebra | Suite::Resolvers => 3,
            Suite::Solutions | Suite::Trials | Suite::Analogies => 4,
            Suite::Meta => 6,
            Suite::Machines => 3,
            Suite::Topology => 11,
            Suite::Bijection => 10_000,
        }
    }

    fn size_bounds(self) -> (usize, usize) {
        match self {
            Suite::Algebra => (1, 5),
            Suite::Solutions | Suite::Trials | Suite::Analogies => (1, 8),
            Suite::Meta => (3, 12),
            Suite::Machines => (0, 4),
            Suite::Topology => (3, 64),
            Suite::Resolvers => (3, 4),
            Suite::Bijection => (1, 1_000_000),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::all()
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown suite {s:?} (expected one of {})",
                    suite_names().join(", ")
                )
            })
    }
}

fn suite_names() -> Vec<&'static str> {
    Suite::all().iter().map(|s| s.name()).collect()
}

/// A deliberate defect, to show that the suites notice it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Analogy translators apply the forward map instead of undoing it.
    WrongTranslator,
    /// Conjunction is computed as disjunction.
    SwappedConnective,
    /// The equality decider is built for a different string.
    WrongDelta,
}

impl Fault {
    pub fn all() -> [Fault; 3] {
        [
            Fault::WrongTranslator,
            Fault::SwappedConnective,
            Fault::WrongDelta,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            Fault::WrongTranslator => "wrong-translator",
            Fault::SwappedConnective => "swapped-connective",
            Fault::WrongDelta => "wrong-delta",
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Fault::all()
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Fault::all().iter().map(|f| f.name()).collect();
                format!("unknown fault {s:?} (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub size: Option<usize>,
    pub seed: u64,
    pub fuel: u64,
    pub fault: Option<Fault>,
    pub strategy: Strategy,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            size: None,
            seed: DEFAULT_SEED,
            fuel: crate::resolution::DEFAULT_FUEL,
            fault: None,
            strategy: Strategy::default(),
        }
    }
}

/// One named property checked over a number of cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: u64,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            cases: 0,
            passed: true,
            counterexample: None,
        }
    }

    /// Counts one case; the first failure is kept as the counterexample.
    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(describe());
        }
    }

    /// Folds in results computed elsewhere, in case order.
    fn cases(&mut self, results: Vec<Option<String>>) {
        for r in results {
            let failed = r.is_some();
            self.case(!failed, || r.unwrap_or_default());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub size: usize,
    pub seed: u64,
    pub fuel: u64,
    pub fault: Option<Fault>,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn cases(&self) -> u64 {
        self.checks.iter().map(|c| c.cases).sum()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let size = cfg.size.unwrap_or(suite.default_size());
    let (min, max) = suite.size_bounds();
    if size < min || size > max {
        return Err(SuiteError::BadSize {
            suite,
            size,
            min,
            max,
        });
    }
    let checks = match suite {
        Suite::Algebra => algebra(size, cfg)?,
        Suite::Solutions => solutions(size)?,
        Suite::Trials => trials(size, cfg)?,
        Suite::Analogies => analogies(size, cfg)?,
        Suite::Meta => meta(size, cfg)?,
        Suite::Machines => machines(size, cfg)?,
        Suite::Topology => topology(size, cfg)?,
        Suite::Resolvers => resolvers(size, cfg)?,
        Suite::Bijection => bijection(size, cfg)?,
    };
    Ok(SuiteReport {
        suite,
        size,
        seed: cfg.seed,
        fuel: cfg.fuel,
        fault: cfg.fault,
        checks,
    })
}

/// Runs every suite at its default size.
pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<SuiteReport>, SuiteError> {
    Suite::all()
        .into_iter()
        .map(|s| run(s, &SuiteConfig { size: None, ..*cfg }))
        .collect()
}

fn rng(cfg: &SuiteConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed)
}

fn sigma_text(p: &Problem) -> String {
    p.solutions()
        .map(|s| s.render())
        .unwrap_or_else(|e| e.to_string())
}

fn to_set(s: &SolutionSet) -> BTreeSet<Expression> {
    s.to_set()
}

/// Decodes `index` into `arity` digits base `base`.
fn digits_of(mut index: usize, base: usize, arity: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(arity);
    for _ in 0..arity {
        out.push(index % base);
        index /= base;
    }
    out
}

type Law = (
    &'static str,
    usize,
    Box<dyn Fn(&[&Problem]) -> Result<(Problem, Problem), ProblemError> + Send + Sync>,
);

fn algebra(n: usize, cfg: &SuiteConfig) -> Result<Vec<Check>, SuiteError> {
    let u = Universe::int_range(0, n as i64 - 1);
    let problems = all_problems(&u)?;
    let swapped = cfg.fault == Some(Fault::SwappedConnective);
    let and = move |a: &Problem, b: &Problem| if swapped { a.disjoin(b) } else { a.conjoin(b) };
    let or = |a: &Problem, b: &Problem| a.disjoin(b);
    let top = Problem::tautology(u.clone());
    let bottom = Problem::contradiction(u.clone());

    let laws: Vec<Law> = vec![
        (
            "∨ is associative",
            3,
            Box::new(move |p| Ok((or(&or(p[0], p[1])?, p[2])?, or(p[0], &or(p[1], p[2])?)?))),
        ),
        (
            "∧ is associative",
            3,
            Box::new(move |p| Ok((and(&and(p[0], p[1])?, p[2])?, and(p[0], &and(p[1], p[2])?)?))),
        ),
        (
            "∨ is commutative",
            2,
            Box::new(move |p| Ok((or(p[0], p[1])?, or(p[1], p[0])?))),
        ),
        (
            "∧ is commutative",
            2,
            Box::new(move |p| Ok((and(p[0], p[1])?, and(p[1], p[0])?))),
        ),
        ("contradiction is neutral for ∨", 1, {
            let b = bottom.clone();
            Box::new(move |p| Ok((or(p[0], &b)?, p[0].clone())))
        }),
        ("tautology is neutral for ∧", 1, {
            let t = top.clone();
            Box::new(move |p| Ok((and(p[0], &t)?, p[0].clone())))
        }),
        ("π ∨ ¬π is the tautology", 1, {
            let t = top.clone();
            Box::new(move |p| Ok((or(p[0], &p[0].negate())?, t.clone())))
        }),
        ("π ∧ ¬π is the contradiction", 1, {
            let b = bottom.clone();
            Box::new(move |p| Ok((and(p[0], &p[0].negate())?, b.clone())))
        }),
        (
            "∨ distributes over ∧",
            3,
            Box::new(move |p| {
                Ok((
                    or(p[0], &and(p[1], p[2])?)?,
                    and(&or(p[0], p[1])?, &or(p[0], p[2])?)?,
                ))
            }),
        ),
        (
            "∧ distributes over ∨",
            3,
            Box::new(move |p| {
                Ok((
                    and(p[0], &or(p[1], p[2])?)?,
                    or(&and(p[0], p[1])?, &and(p[0], p[2])?)?,
                ))
            }),
        ),
    ];

    let mut checks = Vec::new();
    for (name, arity, law) in &laws {
        let count = problems.len().pow(*arity as u32);
        let results = sweep::map_range(
            cfg.strategy,
            count,
            |i| -> Result<Option<String>, ProblemError> {
                let picks: Vec<&Problem> = digits_of(i, problems.len(), *arity)
                    .into_iter()
                    .map(|k| &problems[k])
                    .collect();
                let (left, right) = law(&picks)?;
                if left.equal(&right)? {
                    Ok(None)
                } else {
                    let args: Vec<String> = picks.iter().map(|p| sigma_text(p)).collect();
                    Ok(Some(format!(
                        "Σ of operands {}: left {} ≠ right {}",
                        args.join(", "),
                        sigma_text(&left),
                        sigma_text(&right)
                    )))
                }
            },
        );
        let mut check = Check::new(*name);
        check.cases(results.into_iter().collect::<Result<_, _>>()?);
        checks.push(check);
    }
    Ok(checks)
}

fn solutions(n: usize) -> Result<Vec<Check>, SuiteError> {
    let u = Universe::int_range(0, n as i64 - 1);
    let full: BTreeSet<Expression> = u.all_members().expect("finite").into_iter().collect();
    let problems = all_problems(&u)?;
    let sigmas: Vec<BTreeSet<Expression>> = problems
        .iter()
        .map(|p| p.solutions().map(|s| to_set(&s)))
        .collect::<Result<_, _>>()?;

    let mut or = Check::new("Σ(π ∨ ρ) = Σπ ∪ Σρ");
    let mut and = Check::new("Σ(π ∧ ρ) = Σπ ∩ Σρ");
    for (i, p) in problems.iter().enumerate() {
        for (j, q) in problems.iter().enumerate() {
            let union: BTreeSet<Expression> = sigmas[i].union(&sigmas[j]).cloned().collect();
            let meet: BTreeSet<Expression> = sigmas[i].intersection(&sigmas[j]).cloned().collect();
            let got = to_set(&p.disjoin(q)?.solutions()?);
            or.case(got == union, || format!("problems #{i}, #{j}: {got:?}"));
            let got = to_set(&p.conjoin(q)?.solutions()?);
            and.case(got == meet, || format!("problems #{i}, #{j}: {got:?}"));
        }
    }

    let mut not = Check::new("Σ(¬π) = U ∖ Σπ");
    let mut partition = Check::new("Σπ and Σ¬π partition U");
    let mut iso = Check::new("a problem is determined by its solutions");
    let mut seen = BTreeSet::new();
    for (i, p) in problems.iter().enumerate() {
        let complement: BTreeSet<Expression> = full.difference(&sigmas[i]).cloned().collect();
        let got = to_set(&p.negate().solutions()?);
        not.case(got == complement, || format!("problem #{i}"));
        let (yes, no) = p.invert_condition()?;
        let (yes, no) = (to_set(&yes), to_set(&no));
        let ok = yes == sigmas[i]
            && yes.is_disjoint(&no)
            && yes.union(&no).cloned().collect::<BTreeSet<_>>() == full;
        partition.case(ok, || format!("problem #{i}: yes {yes:?}, no {no:?}"));
        let rebuilt = Problem::of_set(u.clone(), &sigmas[i].iter().cloned().collect::<Vec<_>>())?;
        let fresh = seen.insert(sigmas[i].clone());
        iso.case(rebuilt.equal(p)? && fresh, || format!("problem #{i}"));
    }

    let mut neutrals = Check::new("Σ(τ) = U and Σ(¬τ) = ∅");
    let top = to_set(&Problem::tautology(u.clone()).solutions()?);
    let bottom = to_set(&Problem::contradiction(u.clone()).solutions()?);
    neutrals.case(top == full, || format!("Σ(τ) = {top:?}"));
    neutrals.case(bottom.is_empty(), || format!("Σ(¬τ) = {bottom:?}"));

    let mut singleton = Check::new("Σ(δ_s) = {s}");
    for s in &full {
        let got = to_set(&Problem::delta(u.clone(), s)?.solutions()?);
        singleton.case(got == BTreeSet::from([s.clone()]), || {
            format!("s = {s}: {got:?}")
        });
    }
    Ok(vec![or, and, not, neutrals, partition, iso, singleton])
}

fn trials(n: usize, cfg: &SuiteConfig) -> Result<Vec<Check>, SuiteError> {
    let u = Universe::int_range(0, n as i64 - 1);
    let members = u.all_members().expect("finite");
    let problems = all_problems(&u)?;
    let pools: Vec<SolutionSet> = (0u32..1 << n)
        .map(|m| {
            members
                .iter()
                .enumerate()
                .filter(|(i, _)| m & (1 << i) != 0)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect();

    let mut inter = Check::new("trial = pool ∩ Σ");
    let mut routine = Check::new("routine R is valid exactly when R = Σ");
    let mut as_trial = Check::new("routine of Σ = trial over Σ = exhaustive trial");
    for (i, p) in problems.iter().enumerate() {
        let sigma = p.solutions()?;
        let results = sweep::map(
            cfg.strategy,
            &pools,
            |pool| -> Result<(bool, bool), ResolutionError> {
                let got = crate::resolution::trial(p, pool)?;
                let expected: BTreeSet<Expression> =
                    pool.iter().filter(|e| sigma.contains(e)).cloned().collect();
                let valid = crate::resolution::is_valid_resolution(
                    &Resolution::routine(pool.clone()),
                    p,
                    cfg.fuel,
                )?;
                Ok((to_set(&got) == expected, valid == (*pool == sigma)))
            },
        );
        for (j, r) in results.into_iter().enumerate() {
            let (a, b) = r?;
            inter.case(a, || format!("problem #{i}, pool {}", pools[j].render()));
            routine.case(b, || format!("problem #{i}, routine {}", pools[j].render()));
        }
        let r = Resolution::routine(sigma.clone()).apply(p, cfg.fuel)?;
        let t = Resolution::trial(sigma.clone()).apply(p, cfg.fuel)?;
        let x = Resolution::exhaustive().apply(p, cfg.fuel)?;
        as_trial.case(r == t && t == x && x == sigma, || {
            format!("problem #{i}: {r} / {t} / {x}")
        });
    }
    Ok(vec![inter, routine, as_trial])
}

/// Elementwise analogy steps over integers; with the fault, translators
/// repeat the forward map.
fn analogy_steps(fault: Option<Fault>) -> Vec<AnalogyStep> {
    let wrong = fault == Some(Fault::WrongTranslator);
    let int_map = |f: fn(i64) -> i64| {
        move |e: &Expression| {
            e.as_integer()
                .map_or_else(|| e.clone(), |n| Expression::from_integer(f(n)))
        }
    };
    let mut steps = Vec::new();
    for k in [-3i64, -2, -1, 1, 2, 3] {
        let by = move |d: i64| {
            move |e: &Expression| {
                e.as_integer()
                    .map_or_else(|| e.clone(), |n| Expression::from_integer(n + d))
            }
        };
        let back = if wrong { k } else { -k };
        steps.push(AnalogyStep::elementwise(
            format!("shift{k:+}"),
            by(k),
            by(back),
        ));
    }
    steps.push(AnalogyStep::elementwise(
        "mirror",
        int_map(|n| 9 - n),
        int_map(|n| 9 - n),
    ));
    steps.push(AnalogyStep::elementwise(
        "double",
        int_map(|n| 2 * n),
        if wrong {
            int_map(|n| 2 * n)
        } else {
            int_map(|n| n / 2)
        },
    ));
    steps.push(AnalogyStep::identity());
    steps
}

fn analogies(n: usize, cfg: &SuiteConfig) -> Result<Vec<Check>, SuiteError> {
    let u = Universe::int_range(0, n as i64 - 1);
    let members = u.all_members().expect("finite");
    let problems = all_problems(&u)?;
    let steps = analogy_steps(cfg.fault);
    let mut rng = rng(cfg);
    let chains: Vec<Vec<AnalogyStep>> = (0..ANALOGY_CHAINS)
        .map(|_| {
            let len = rng.gen_range(1..=3);
            (0..len)
                .map(|_| steps.choose(&mut rng).expect("steps").clone())
                .collect()
        })
        .collect();

    let mut chained = Check::new("chained analogy = stepwise transform, solve, translate back");
    let mut conservative = Check::new("analogy with exhaustive trial returns Σ");
    for chain in &chains {
        let names: Vec<&str> = chain.iter().map(|s| s.name()).collect();
        let whole = Resolution::analogy(chain.clone(), Resolution::exhaustive())?;
        let results = sweep::map(
            cfg.strategy,
            &problems,
            |p| -> Result<(bool, bool, String), SuiteError> {
                let got = whole.apply(p, cfg.fuel)?;
                let mut q = p.clone();
                for s in chain {
                    q = s.transform(&q)?;
                }
                let mut back = q.solutions()?;
                for s in chain.iter().rev() {
                    back = s.translate(&back);
                }
                let sigma = p.solutions()?;
                Ok((
                    got == back,
                    got == sigma,
                    format!(
                        "chain [{}] on Σ = {}: got {}",
                        names.join(","),
                        sigma.render(),
                        got.render()
                    ),
                ))
            },
        );
        for r in results {
            let (a, b, text) = r?;
            chained.case(a, || text.clone());
            conservative.case(b, || text);
        }
    }

    let mut wrapper = Check::new("identity analogy around a trial = the trial");
    let mut general = Check::new("general form with no steps = the trial");
    for (i, p) in problems.iter().enumerate() {
        for m in 0u32..1 << n {
            let pool: SolutionSet = members
                .iter()
                .enumerate()
                .filter(|(k, _)| m & (1 << k) != 0)
                .map(|(_, e)| e.clone())
                .collect();
            let plain = crate::resolution::trial(p, &pool)?;
            let wrapped = Resolution::analogy(
                vec![AnalogyStep::identity()],
                Resolution::trial(pool.clone()),
            )?
            .apply(p, cfg.fuel)?;
            wrapper.case(wrapped == plain, || {
                format!("problem #{i}, pool {}", pool.render())
            });
            let g = general_form(Vec::new(), Pool::Explicit(pool.clone())).apply(p, cfg.fuel)?;
            general.case(g == plain, || {
                format!("problem #{i}, pool {}", pool.render())
            });
        }
    }
    Ok(vec![chained, conservative, wrapper, general])
}

/// Ten problems over `0..n` with a family of resolutions each.
pub fn meta_fixtures(n: usize) -> Vec<(Problem, CandidateFamily)> {
    let u = Universe::int_range(0, n as i64 - 1);
    let int = |e: &Expression| e.as_integer().unwrap_or(i64::MIN);
    let problems = vec![
        Problem::from_native(u.clone(), "2x = x²", move |e| {
            2 * int(e) == int(e) * int(e)
        }),
        Problem::from_native(u.clone(), "x > 2", move |e| int(e) > 2),
        Problem::from_native(u.clone(), "x even", move |e| int(e) % 2 == 0),
        Problem::from_native(u.clone(), "x = 1", move |e| int(e) == 1),
        Problem::contradiction(u.clone()),
        Problem::tautology(u.clone()),
        Problem::from_native(u.clone(), "x < 2", move |e| int(e) < 2),
        Problem::from_native(u.clone(), "x odd", move |e| int(e) % 2 == 1),
        Problem::from_native(u.clone(), "x + 1 = 3", move |e| int(e) + 1 == 3),
        Problem::from_native(u.clone(), "x·x < 5", move |e| int(e) * int(e) < 5),
    ];
    let ints =
        |v: &[i64]| -> SolutionSet { v.iter().map(|&k| Expression::from_integer(k)).collect() };
    problems
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            let mut members = vec![
                Resolution::routine(ints(&[0, 2])),
                Resolution::exhaustive(),
                Resolution::trial(ints(&[0, 1, 2])),
                Resolution::routine(SolutionSet::new()),
                Resolution::trial_first(Pool::Universe, 1),
                Resolution::analogy(vec![AnalogyStep::shift(1)], Resolution::exhaustive())
                    .expect("one step"),
            ];
            let sigma = p.solutions().expect("native conditions are total");
            members.insert(
                i % (members.len() + 1),
                Resolution::routine(sigma).with_label("routine Σ"),
            );
            // drop one member per fixture so the families differ
            members.remove((i * 3 + 1) % members.len());
            let members = dedup_labels(members);
            let family = CandidateFamily::new(members).expect("labels are distinct");
            (p, family)
        })
        .collect()
}

fn dedup_labels(members: Vec<Resolution>) -> Vec<Resolution> {
    let mut seen = BTreeSet::new();
    members
        .into_iter()
        .filter(|r| seen.insert(r.label().to_string()))
        .collect()
}

/// Level-`k` meta-resolutions over `labels`, valid set `valid` first.
fn meta_family(labels: &[String], valid: &BTreeSet<String>) -> Vec<MetaResolution> {
    let valid: Vec<&str> = valid.iter().map(String::as_str).collect();
    let all: Vec<&str> = labels.iter().map(String::as_str).collect();
    vec![
        MetaResolution::routine(&valid).with_label("routine of the valid"),
        MetaResolution::routine(&all[..all.len().min(1)]).with_label("routine of the first"),
        MetaResolution::exhaustive(),
        MetaResolution::trial(&all).with_label("trial of all"),
        MetaResolution::routine(&[]).with_label("routine of none"),
    ]
}

fn verdict_vector(m: &Metaproblem) -> Vec<(String, bool)> {
    m.verdicts()
        .iter()
        .map(|v| (v.label.clone(), v.valid))
        .collect()
}

fn meta(n: usize, cfg: &SuiteConfig) -> Result<Vec<Check>, SuiteError> {
    let mut trial = Check::new("meta-trial = direct validity loop");
    let mut level1 = Check::new("one meta level: iterated = nested = direct");
    let mut level2 = Check::new("two meta levels: iterated = nested = direct");
    for (i, (p, family)) in meta_fixtures(n).into_iter().enumerate() {
        let sigma = p.solutions()?;
        let mut direct0 = Vec::new();
        for r in family.members() {
            if matches!(r.apply(&p, cfg.fuel), Ok(s) if s == sigma) {
                direct0.push(r.label().to_string());
            }
        }
        let m0 = Metaproblem::new(p.clone(), family.clone(), cfg.fuel)?;
        let got = meta_trial(&m0);
        trial.case(got == direct0, || {
            format!("fixture {i} ({}): {got:?} vs {direct0:?}", p.label())
        });

        let d0: BTreeSet<String> = direct0.into_iter().collect();
        let f1 = meta_family(&family.labels(), &d0);
        let mut d1 = BTreeSet::new();
        for x in &f1 {
            if matches!(x.apply(&m0, &mut Meter::new(cfg.fuel)), Ok(s) if s == d0) {
                d1.insert(x.label().to_string());
            }
        }
        let nested1 = Metaproblem::over(m0.clone(), f1.clone(), cfg.fuel)?;
        let base = Family::Resolutions(family.clone());
        let iter1 = iterate_meta(&p, 1, &[base.clone(), Family::Meta(f1.clone())], cfg.fuel)?;
        let direct1: Vec<(String, bool)> = f1
            .iter()
            .map(|x| (x.label().to_string(), d1.contains(x.label())))
            .collect();
        level1.case(
            verdict_vector(&iter1) == verdict_vector(&nested1)
                && verdict_vector(&nested1) == direct1,
            || {
                format!(
                    "fixture {i}: iterated {:?}, nested {:?}, direct {direct1:?}",
                    verdict_vector(&iter1),
                    verdict_vector(&nested1)
                )
            },
        );

        let labels1: Vec<String> = f1.iter().map(|x| x.label().to_string()).collect();
        let f2 = meta_family(&labels1, &d1);
        let mut d2 = BTreeSet::new();
        for y in &f2 {
            if matches!(y.apply(&nested1, &mut Meter::new(cfg.fuel)), Ok(s) if s == d1) {
                d2.insert(y.label().to_string());
            }
        }
        let nested2 = Metaproblem::over(nested1, f2.clone(), cfg.fuel)?;
        let iter2 = iterate_meta(
            &p,
            2,
            &[base, Family::Meta(f1), Family::Meta(f2.clone())],
            cfg.fuel,
        )?;
        let direct2: Vec<(String, bool)> = f2
            .iter()
            .map(|y| (y.label().to_string(), d2.contains(y.label())))
            .collect();
        level2.case(
            verdict_vector(&iter2) == verdict_vector(&nested2)
                && verdict_vector(&nested2) == direct2,
            || {
                format!(
                    "fixture {i}: iterated {:?}, nested {:?}, direct {direct2:?}",
                    verdict_vector(&iter2),
                    verdict_vector(&nested2)
                )
            },
        );
    }
    Ok(vec![trial, level1, level2])
}

/// Moves right to the first blank, writes `b` there and halts.
fn append_machine(alphabet: &Alphabet, symbol: char) -> Result<TMachine, MachineError> {
    let blank = alphabet.blank();
    TMachine::from_fn(alphabet.clone(), 1, 0, |_, c| {
        Some(if c == blank {
            Transition::new(0, symbol, Move::Halt)
        } else {
            Transition::new(0, c, Move::Right)
        })
    })
}

/// A corpus of small machines with the alphabet their inputs come from.
pub fn machine_corpus() -> Result<Vec<(String, TMachine, Alphabet)>, MachineError> {
    let x = Alphabet::of("x")?;
    let ab = Alphabet::of("ab")?;
    let digits = Alphabet::of("012")?;
    let cycle = |c: char| match c {
        '0' => '1',
        '1' => '2',
        '2' => '0',
        other => other,
    };
    let swap = |c: char| match c {
        'a' => 'b',
        'b' => 'a',
        other => other,
    };
    Ok(vec![
        ("identity over x".into(), identity_machine(&x), x.clone()),
        ("identity over ab".into(), identity_machine(&ab), ab.clone()),
        (
            "never halts over ab".into(),
            never_halting_machine(&ab),
            ab.clone(),
        ),
        ("δ_a".into(), delta_machine(&ab, &"a".into())?, ab.clone()),
        ("δ_ab".into(), delta_machine(&ab, &"ab".into())?, ab.clone()),
        (
            "δ_ε".into(),
            delta_machine(&ab, &Expression::empty())?,
            ab.clone(),
        ),
        (
            "+1 mod 3".into(),
            symbol_map_machine(&digits, cycle)?,
            digits.clone(),
        ),
        (
            "swap a/b".into(),
            symbol_map_machine(&ab, swap)?,
            ab.clone(),
        ),
        (
            "K_21".into(),
            constant_machine(&digits, &"21".into())?,
            digits.clone(),
        ),
        (
            "K_ε".into(),
            constant_machine(&ab, &Expression::empty())?,
            ab.clone(),
        ),
        ("append b".into(), append_machine(&ab, 'b')?, ab.clone()),
        ("append x".into(), append_machine(&x, 'x')?, x),
    ])
}

fn flip_first(s: &Expression) -> Expression {
    match s.symbols().split_first() {
        None => "a".into(),
        Some((c, rest)) => {
            let mut v = vec![if *c == 'a' { 'b' } else { 'a' }];
            v.extend_from_slice(rest);
            Expression::from_symbols(v)
        }
    }
}

fn machines(max_len: usize, cfg: &SuiteConfig) -> Result<Vec<Check>, SuiteError> {
    let corpus = machine_corpus()?;
    let mut codec = Check::new("decode(encode(m)) = m and encoding is canonical");
    let mut universal = Check::new("universal evaluation = direct run");
    let fuel = cfg.fuel.min(10_000);
    for (name, m, alphabet) in &corpus {
        let program = Program::encode(m);
        let back = Program::decode(program.expression())?;
        let reparsed = Program::parse(program.expression())?;
        codec.case(
            back == *m && reparsed.expression() == program.expression(),
            || name.clone(),
        );
        for input in expressions_up_to(alphabet, 4).into_iter().take(10) {
            let direct = m.run(&input, fuel)?;
            let via = universal_apply(program.expression(), &input, fuel);
            universal.case(direct == via, || {
                format!("{name} on {}: {direct:?} vs {via:?}", input.render())
            });
        }
    }
    let mut never = Check::new("the never-halting machine runs out of fuel both ways");
    let (_, m, ab) = &corpus[2];
    for input in expressions_up_to(ab, 2) {
        let both = (
            m.run(&input, fuel)?,
            universal_apply(m.encode().expression(), &input, fuel),
        );
        never.case(
            matches!(
                both,
                (RunOutcome::OutOfFuel { .. }, RunOutcome::OutOfFuel { .. })
            ),
            || format!("on {}", input.render()),
        );
    }

    let ab = Alphabet::of("ab")?;
    let mut delta = Check::new("δ_s halts with [x = s]");
    let mut states = Check::new("δ_s has |s| + 2 states");
    let inputs = expressions_up_to(&ab, max_len + 1);
    let top = Expression::from_symbols(vec![TRUE_SYMBOL]);
    for s in expressions_up_to(&ab, max_len) {
        let built = if cfg.fault == Some(Fault::WrongDelta) {
            flip_first(&s)
        } else {
            s.clone()
        };
        let d = delta_machine(&ab, &built)?;
        states.case(d.state_count() == s.len() + 2, || {
            format!("s = {}: {} states", s.render(), d.state_count())
        });
        for x in &inputs {
            let out = d.run(x, x.len() as u64 + 2)?;
            let ok = match &out {
                RunOutcome::Halted { result, .. } => (*result == top) == (*x == s),
                RunOutcome::OutOfFuel { .. } => false,
            };
            delta.case(ok, || {
                format!("s = {}, x = {}: {out:?}", s.render(), x.render())
            });
        }
    }
    Ok(vec![codec, universal, never, delta, states])
}

// (solvable, finite, expressible, resolvable) inside each place
const PLACE_FLAGS: [[Flag; 4]; 5] = {
    use Flag::{No, Yes};
    [
        [No, Yes, Yes, Yes],
        [Yes, Yes, Yes, Yes],
        [Yes, No, Yes, Yes],
        [Yes, No, No, Yes],
        [Yes, No, No, No],
    ]
};

fn topology(n: usize, cfg: &SuiteConfig) -> Result<Vec<Check>, SuiteError> {
    let u = Universe::int_range(0, n as i64 - 1);
    let p = Problem::from_native(u.clone(), "2x = x²", |e| {
        e.as_integer().is_some_and(|x| 2 * x == x * x)
    });
    let gt2 = Problem::from_native(u, "x > 2", |e| e.as_integer().is_some_and(|x| x > 2));
    let fuel = cfg.fuel.min(10_000);

    let mut rows = Check::new("table rows for Σ = {0,2} and Σ = ∅");
    let yes = RawFlags {
        solvable: Flag::Yes,
        finite: Flag::Yes,
        expressible: Flag::Yes,
        resolvable: Flag::Yes,
    };
    let r = classify(&p, &Evidence::default(), fuel)?;
    rows.case(
        r.flags.raw() == yes
            && r.place == Place::FiniteSolvable
            && to_set(&p.solutions()?).len() == 2,
        || format!("Σ = {}: {:?} in {}", sigma_text(&p), r.flags.raw(), r.place),
    );
    let q = p.conjoin(&gt2)?;
    let r = classify(&q, &Evidence::default(), fuel)?;
    let empty = RawFlags {
        solvable: Flag::No,
        ..yes
    };
    rows.case(
        r.flags.raw() == empty && r.place == Place::NotSolvable && q.solutions()?.is_empty(),
        || format!("Σ = {}: {:?} in {}", sigma_text(&q), r.flags.raw(), r.place),
    );

    let mut guard = Check::new("the flag guard rejects exactly the combinations no place allows");
    let mut places = Check::new("every consistent definite flag set has exactly one place");
    let flags = [Flag::Yes, Flag::No, Flag::Unknown];
    for code in 0..81 {
        let d = digits_of(code, 3, 4);
        let raw = RawFlags {
            solvable: flags[d[0]],
            finite: flags[d[1]],
            expressible: flags[d[2]],
            resolvable: flags[d[3]],
        };
        let (s, f, e, r) = (raw.solvable, raw.finite, raw.expressible, raw.resolvable);
        let forbidden = !PLACE_FLAGS.iter().any(|want| {
            [s, f, e, r]
                .iter()
                .zip(want)
                .all(|(x, w)| !x.is_definite() || x == w)
        });
        let accepted = ClassificationFlags::try_from(raw).is_ok();
        guard.case(accepted != forbidden, || format!("{raw:?}"));
        if !forbidden && [s, f, e, r].iter().all(|x| x.is_definite()) {
            places.case(verify_partition(&[raw]).is_ok(), || format!("{raw:?}"));
        }
    }
    let table = feasibility_table();
    let possible = table.iter().filter(|r| r.possible).count();
    guard.case(table.len() == 8 && possible == 4, || {
        format!("{possible} of {} rows possible", table.len())
    });

    let mut demo = Check::new("dovetail emits exactly the halting pairs");
    let (problem, evidence) = halting_demo(halting_demo_pool());
    let exprs: Vec<Expression> = halting_demo_pool()
        .iter()
        .map(|(p, d)| crate::machine::pair_expression(p, d))
        .collect();
    let halters: BTreeSet<Expression> = HALTING_DEMO_HALTERS
        .iter()
        .map(|&i| exprs[i].clone())
        .collect();
    let enumerator = evidence
        .enumerator
        .as_ref()
        .expect("demo has an enumerator");
    for budget in [100u64, 1_000, 10_000] {
        let emitted: BTreeSet<Expression> = enumerator.run(budget).emitted.into_iter().collect();
        demo.case(emitted == halters, || {
            format!("budget {budget}: {} emitted", emitted.len())
        });
    }
    let r = classify(&problem, &evidence, 100)?;
    demo.case(r.tentative_place == Place::ResolvableInexpressible, || {
        format!("tentative place {}", r.tentative_place)
    });
    Ok(vec![rows, guard, places, demo])
}

/// Sampled function sets of size 1 to 3 from all functions on the space.
fn sample_function_sets(
    space: &ProblemSpace,
    cfg: &SuiteConfig,
) -> Result<Vec<FunctionSet>, SuiteError> {
    let all = space.all_functions()?;
    let mut rng = rng(cfg);
    let mut sets = Vec::new();
    for _ in 0..FUNCTION_SETS {
        let k = rng.gen_range(1..=3);
        let picked: Vec<ElementFn> = all.choose_multiple(&mut rng, k).cloned().collect();
        sets.push(FunctionSet::new(picked)?);
    }
    Ok(sets)
}

fn resolvers(n: usize, cfg: &SuiteConfig) -> Result<Vec<Check>, SuiteError> {
    let space = ProblemSpace::new(Universe::int_range(0, n as i64 - 1))?;
    let members = space.members().to_vec();
    let problems = space.len() as u32;
    let subsets: Vec<SolutionSet> = (0..problems).map(|m| space.subset(m)).collect();
    let strategy = cfg.strategy;
    let mut all_reports = Vec::new();

    let mut mech = Check::new("mechanism: Ξ = {π | s ∈ Σπ}, Φ = {δ_s}");
    for (i, s) in members.iter().enumerate() {
        let rp = range_power(&Resolver::Mechanism(s.clone()), &space, strategy)?;
        let range: Vec<u32> = (0..problems).filter(|m| m & (1 << i) != 0).collect();
        mech.case(rp.range == range && rp.power == vec![1 << i], || {
            format!("s = {s}: {rp:?}")
        });
        all_reports.push(rp);
    }

    let mut adapter = Check::new("adapter: Ξ = {π | S ∩ Σπ ≠ ∅}, Φ = 2^S");
    for (s_mask, set) in subsets.iter().enumerate() {
        let s_mask = s_mask as u32;
        let rp = range_power(
            &Resolver::Adapter {
                set: set.clone(),
                bind: Binding::Intersect,
            },
            &space,
            strategy,
        )?;
        let range: Vec<u32> = (0..problems).filter(|m| m & s_mask != 0).collect();
        let power: Vec<u32> = (0..problems).filter(|m| m & !s_mask == 0).collect();
        adapter.case(rp.range == range && rp.power == power, || {
            format!("S = {}: {rp:?}", set.render())
        });
        all_reports.push(rp);
    }

    let identity = ElementFn::identity();
    let mut perceiver = Check::new("adapter = perceiver of i, output by output");
    for set in &subsets {
        for bind in [Binding::Unbound, Binding::Intersect, Binding::PostFilter] {
            let a = Resolver::Adapter {
                set: set.clone(),
                bind,
            };
            let p = Resolver::Perceiver {
                f: identity.clone(),
                input: set.clone(),
                bind,
            };
            for sigma in space.sigmas() {
                perceiver.case(a.resolve_on(sigma)? == p.resolve_on(sigma)?, || {
                    format!("{a} vs {p} on Σ = {}", sigma.render())
                });
            }
            let (ra, rp) = (
                range_power(&a, &space, strategy)?,
                range_power(&p, &space, strategy)?,
            );
            perceiver.case(ra.range == rp.range && ra.power == rp.power, || {
                format!("ranges of {a} and {p}")
            });
        }
    }

    let sets = sample_function_sets(&space, cfg)?;
    let mut union = Check::new("learner = union of its perceivers");
    for fns in &sets {
        for input in &subsets {
            for sigma in space.sigmas() {
                let learner = Resolver::Learner {
                    fns: fns.clone(),
                    input: input.clone(),
                    bind: Binding::Intersect,
                };
                let mut expected = BTreeSet::new();
                for f in fns.members() {
                    let p = Resolver::Perceiver {
                        f: f.clone(),
                        input: input.clone(),
                        bind: Binding::Intersect,
                    };
                    expected.extend(p.resolve_on(sigma)?.to_set());
                }
                let got = learner.resolve_on(sigma)?.to_set();
                union.case(got == expected, || {
                    format!("{learner} on Σ = {}", sigma.render())
                });
            }
        }
        let learner = Resolver::Learner {
            fns: fns.clone(),
            input: space.full(),
            bind: Binding::PostFilter,
        };
        all_reports.push(range_power(&learner, &space, strategy)?);
    }

    let alphabet = Alphabet::new(
        members.iter().map(|e| e.symbols()[0]),
        crate::expr::DEFAULT_BLANK,
    )?;
    let pool = [
        ElementFn::identity_on(&alphabet),
        ElementFn::cyclic_successor(&alphabet)?,
        ElementFn::constant_on(&alphabet, members[0].clone())?,
        ElementFn::constant_on(&alphabet, members[n - 1].clone())?,
    ];
    let mut subject = Check::new("subject evaluating F = learner of F");
    for pick in 1u32..1 << pool.len() {
        let fns = FunctionSet::new(
            pool.iter()
                .enumerate()
                .filter(|(i, _)| pick & (1 << i) != 0)
                .map(|(_, f)| f.clone())
                .collect(),
        )?;
        for input in &subsets {
            let l = Resolver::Learner {
                fns: fns.clone(),
                input: input.clone(),
                bind: Binding::PostFilter,
            };
            let s = Resolver::Subject {
                library: fns.clone(),
                input: input.clone(),
                bind: Binding::PostFilter,
                fuel: cfg.fuel,
            };
            for sigma in space.sigmas() {
                subject.case(l.resolve_on(sigma)? == s.resolve_on(sigma)?, || {
                    format!("{s} on Σ = {}", sigma.render())
                });
            }
        }
        let s = Resolver::Subject {
            library: fns,
            input: space.full(),
            bind: Binding::PostFilter,
            fuel: cfg.fuel,
        };
        all_reports.push(range_power(&s, &space, strategy)?);
    }

    let mut monotone = Check::new("S ⊂ S' widens the adapter's range and power");
    for (a, small) in subsets.iter().enumerate() {
        for (b, large) in subsets.iter().enumerate() {
            if a == b || a & !b != 0 {
                continue;
            }
            let r1 = range_power(
                &Resolver::Adapter {
                    set: small.clone(),
                    bind: Binding::Intersect,
                },
                &space,
                strategy,
            )?;
            let r2 = range_power(
                &Resolver::Adapter {
                    set: large.clone(),
                    bind: Binding::Intersect,
                },
                &space,
                strategy,
            )?;
            let ok = r1.range.iter().all(|m| r2.in_range(*m))
                && r1.power.iter().all(|m| r2.in_power(*m))
                && r1.range.len() < r2.range.len()
                && r1.power.len() < r2.power.len();
            monotone.case(ok, || format!("{} ⊂ {}", small.render(), large.render()));
        }
    }

    let mut bridge = Check::new("resolving a solvable problem solves it");
    for rp in &all_reports {
        for &m in &rp.power {
            if m != 0 {
                bridge.case(rp.in_range(m), || format!("{} on problem {m}", rp.resolver));
            }
        }
    }

    let mut hierarchy = Check::new("each level embeds in the next and has a witness beyond it");
    let report = hierarchy_check(&space)?;
    for e in &report.embeddings {
        hierarchy.case(e.injective && e.preserving, || format!("{e:?}"));
    }
    for w in &report.witnesses {
        hierarchy.case(w.excluded_below, || format!("{w:?}"));
    }

    let mut chain = Check::new("evolution chain, strict where the inputs widen");
    let succ = ElementFn::cyclic_successor(&alphabet)?;
    let i_prog = ElementFn::identity_on(&alphabet);
    let cfg_chain = ChainConfig {
        element: members[1].clone(),
        small: [members[1].clone(), members[2].clone()]
            .into_iter()
            .collect(),
        large: space.full(),
        learner: FunctionSet::new(vec![i_prog.clone()])?,
        subject: FunctionSet::new(vec![i_prog.clone(), succ])?,
        fuel: cfg.fuel,
    };
    let report = evolution_chain(&cfg_chain, &space, strategy)?;
    let strict: Vec<bool> = report.links.iter().map(|l| l.strict).collect();
    chain.case(
        report.holds() && strict == [true, true, false, false],
        || format!("{:?}", report.links),
    );
    let mut singleton = cfg_chain.clone();
    singleton.small = std::iter::once(members[1].clone()).collect();
    let report = evolution_chain(&singleton, &space, strategy)?;
    chain.case(report.holds() && !report.links[0].strict, || {
        format!("S = {{s}}: {:?}", report.links[0])
    });
    let mut no_identity = cfg_chain.clone();
    no_identity.learner =
        FunctionSet::new(vec![ElementFn::constant_on(&alphabet, members[0].clone())?])?;
    let failed = match evolution_chain(&no_identity, &space, strategy) {
        Err(ChainError::ConditionViolated {
            condition: ChainCondition::Learner,
            links,
        }) => !links[2].holds && links[2].witness.is_some(),
        _ => false,
    };
    chain.case(failed, || "dropping i from R went unnoticed".into());

    let mut analogy = Check::new("tri-perceiver = analogy resolution");
    let shift = |k: i64| {
        ElementFn::new(format!("{k:+}"), move |e| {
            e.as_integer().map(|x| Expression::from_integer(x + k))
        })
    };
    let a = shift(2);
    let back = if cfg.fault == Some(Fault::WrongTranslator) {
        shift(2)
    } else {
        shift(-2)
    };
    let step = analogy_step(&shift(2), &shift(-2));
    let image = a.lift(&space.full())?;
    for m in 0..problems {
        let p = space.problem(m)?;
        let check = cross_check_analogy(&step, &a, &back, &image, &p, cfg.fuel)?;
        analogy.case(check.agrees, || {
            format!(
                "problem {m}: perceivers {} vs analogy {}",
                check.perceivers, check.analogy
            )
        });
    }

    let mut learner_meta = Check::new("meta-trial by learner = meta-trial by resolutions");
    for fns in &sets {
        for m in 0..problems {
            let p = space.problem(m)?;
            let a = meta_trial_via_learner(fns, &p, &space.full())?;
            let b = meta_trial_via_resolutions(fns, &p, &space.full(), cfg.fuel)?;
            learner_meta.case(a == b, || {
                format!("{} on problem {m}: {a:?} vs {b:?}", fns.render())
            });
        }
    }

    Ok(vec![
        mech,
        adapter,
        perceiver,
        union,
        subject,
        monotone,
        bridge,
        hierarchy,
        chain,
        analogy,
        learner_meta,
    ])
}

fn bijection(count: usize, cfg: &SuiteConfig) -> Result<Vec<Check>, SuiteError> {
    let mut round = Check::new("index → expression → index is the identity");
    let mut order = Check::new("expressions come in length-then-lexicographic order");
    let mut blocks = Check::new("length L starts at index (k^L - 1)/(k - 1)");
    for k in 1..=4usize {
        let alphabet = Alphabet::of(&"abcd"[..k])?;
        let exprs = sweep::map_range(cfg.strategy, count, |i| alphabet.enumerate(i as u64));
        let before = |a: &Expression, b: &Expression| match a.len().cmp(&b.len()) {
            std::cmp::Ordering::Equal => {
                let key = |e: &Expression| -> Vec<Option<usize>> {
                    e.symbols()
                        .iter()
                        .map(|&c| alphabet.index_of_symbol(c))
                        .collect()
                };
                key(a) < key(b)
            }
            o => o.is_lt(),
        };
        for (i, e) in exprs.iter().enumerate() {
            let back = alphabet.index_of(e)?;
            round.case(back == i as u64, || {
                format!("k = {k}, index {i} → {} → {back}", e.render())
            });
            if i > 0 {
                order.case(before(&exprs[i - 1], e), || {
                    format!("k = {k}, indices {} and {i}", i - 1)
                });
            }
            if i == 0 || exprs[i - 1].len() < e.len() {
                let l = e.len() as u32;
                let start = if k == 1 {
                    l as usize
                } else {
                    (k.pow(l) - 1) / (k - 1)
                };
                blocks.case(start == i, || {
                    format!("k = {k}: length {l} starts at {i}, expected {start}")
                });
            }
        }
    }
    Ok(vec![round, order, blocks])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suite: Suite) -> SuiteReport {
        run(suite, &SuiteConfig::default()).unwrap()
    }

    #[test]
    fn algebra_counts() {
        let r = quick(Suite::Algebra);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.check("∧ is associative").unwrap().cases, 512);
        assert_eq!(r.check("∨ is commutative").unwrap().cases, 64);
        assert_eq!(r.check("tautology is neutral for ∧").unwrap().cases, 8);
    }

    #[test]
    fn swapped_connective_is_caught() {
        let cfg = SuiteConfig {
            fault: Some(Fault::SwappedConnective),
            ..SuiteConfig::default()
        };
        let r = run(Suite::Algebra, &cfg).unwrap();
        assert!(!r.check("tautology is neutral for ∧").unwrap().passed);
        assert!(r.check("∧ is commutative").unwrap().passed);
    }

    #[test]
    fn every_suite_passes_by_default() {
        for suite in Suite::all() {
            let r = quick(suite);
            assert!(
                r.passed(),
                "{suite}: {:?}",
                r.failures().collect::<Vec<_>>()
            );
            assert!(r.cases() > 0, "{suite}");
        }
    }

    #[test]
    fn faults_are_caught() {
        let with = |fault| SuiteConfig {
            fault: Some(fault),
            ..SuiteConfig::default()
        };
        assert!(!run(Suite::Analogies, &with(Fault::WrongTranslator))
            .unwrap()
            .passed());
        assert!(!run(Suite::Resolvers, &with(Fault::WrongTranslator))
            .unwrap()
            .passed());
        assert!(!run(Suite::Machines, &with(Fault::WrongDelta))
            .unwrap()
            .passed());
    }

    #[test]
    fn same_seed_same_report() {
        let cfg = SuiteConfig {
            strategy: Strategy::Sequential,
            ..SuiteConfig::default()
        };
        let par = SuiteConfig {
            strategy: Strategy::Parallel,
            ..SuiteConfig::default()
        };
        assert_eq!(
            run(Suite::Analogies, &cfg).unwrap(),
            run(Suite::Analogies, &par).unwrap()
        );
    }

    #[test]
    fn size_bounds_enforced() {
        let cfg = SuiteConfig {
            size: Some(9),
            ..SuiteConfig::default()
        };
        assert!(matches!(
            run(Suite::Resolvers, &cfg),
            Err(SuiteError::BadSize { .. })
        ));
        assert_eq!("meta".parse::<Suite>().unwrap(), Suite::Meta);
        assert_eq!("wrong-delta".parse::<Fault>().unwrap(), Fault::WrongDelta);
        assert!("nope".parse::<Suite>().is_err());
    }
}
