//! Resolutions: functions from problems to sets of candidate solutions.
//!
//! There are five forms: routine, trial, analogy, meta-trial and
//! meta-analogy. Every application runs under a [`Meter`] that charges one step
//! per candidate tested or element produced. Condition evaluation has its own
//! budget (see [`crate::problem::Condition::Machine`]).

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::expr::{Expression, Universe};
use crate::problem::{Problem, ProblemError, SolutionSet};
use crate::sweep::{self, Strategy};

/// Resolution fuel used when none is given.
pub const DEFAULT_FUEL: u64 = 100_000;

/// Deepest metaproblem level built by [`iterate_meta`].
pub const MAX_META_LEVEL: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("out of fuel after {used} of {limit} steps")]
    OutOfFuel { used: u64, limit: u64 },
    #[error("no member of the family resolves {0}")]
    Unresolved(String),
    #[error("analogy step {position} ({name}): {source}")]
    Analogy {
        position: usize,
        name: String,
        source: Box<ResolutionError>,
    },
    #[error("an analogy needs at least one step")]
    EmptyChain,
    #[error("label {0:?} appears twice in the family")]
    DuplicateLabel(String),
    #[error("no member labelled {0:?}")]
    UnknownLabel(String),
    #[error("metaproblem level {0} is deeper than supported ({MAX_META_LEVEL})")]
    TooDeep(usize),
    #[error("level {level} needs a {expected} family")]
    FamilyKind {
        level: usize,
        expected: &'static str,
    },
}

impl ResolutionError {
    pub fn is_out_of_fuel(&self) -> bool {
        match self {
            ResolutionError::OutOfFuel { .. } => true,
            ResolutionError::Analogy { source, .. } => source.is_out_of_fuel(),
            _ => false,
        }
    }
}

/// Step budget for one resolution run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Meter {
    limit: u64,
    used: u64,
}

impl Meter {
    pub fn new(limit: u64) -> Self {
        Meter { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn charge(&mut self, steps: u64) -> Result<(), ResolutionError> {
        self.used = self.used.saturating_add(steps);
        if self.used > self.limit {
            Err(ResolutionError::OutOfFuel {
                used: self.used,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }
}

type Transform = Arc<dyn Fn(&Problem) -> Result<Problem, ProblemError> + Send + Sync>;
type Translator = Arc<dyn Fn(&SolutionSet) -> SolutionSet + Send + Sync>;
type ElementMap = Arc<dyn Fn(&Expression) -> Expression + Send + Sync>;

/// Pointwise form of an analogy: `a` maps candidates of `π` to candidates of
/// `Aπ`, and `back` maps solutions of `Aπ` back.
#[derive(Clone)]
pub struct Elementwise {
    pub forward: ElementMap,
    pub back: ElementMap,
}

/// One analogy `A` together with its translating function `𝒯_A`.
#[derive(Clone)]
pub struct AnalogyStep {
    name: String,
    transform: Transform,
    translator: Translator,
    elementwise: Option<Elementwise>,
}

impl fmt::Debug for AnalogyStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AnalogyStep({})", self.name)
    }
}

impl AnalogyStep {
    /// A set-level analogy with no pointwise description.
    pub fn new(
        name: impl Into<String>,
        transform: impl Fn(&Problem) -> Result<Problem, ProblemError> + Send + Sync + 'static,
        translator: impl Fn(&SolutionSet) -> SolutionSet + Send + Sync + 'static,
    ) -> Self {
        AnalogyStep {
            name: name.into(),
            transform: Arc::new(transform),
            translator: Arc::new(translator),
            elementwise: None,
        }
    }

    /// The analogy induced by a candidate map `a` with inverse `back`.
    ///
    /// `Aπ` lives on `U ∪ a(U)` and has exactly `a(Σ_π)` as solutions, so the
    /// analogy is conservative whenever `back` undoes `a` on `Σ_π`.
    pub fn elementwise(
        name: impl Into<String>,
        a: impl Fn(&Expression) -> Expression + Send + Sync + 'static,
        back: impl Fn(&Expression) -> Expression + Send + Sync + 'static,
    ) -> Self {
        let name = name.into();
        let forward: ElementMap = Arc::new(a);
        let back: ElementMap = Arc::new(back);
        let f = forward.clone();
        let label = name.clone();
        let transform = move |p: &Problem| -> Result<Problem, ProblemError> {
            let members = p.candidates()?;
            let sigma = p.solutions()?;
            let extended = Universe::finite(
                members
                    .iter()
                    .cloned()
                    .chain(members.iter().map(|m| f(m)))
                    .collect::<SolutionSet>()
                    .members()
                    .to_vec(),
            )
            .expect("members are deduplicated");
            let image: Vec<Expression> = sigma.iter().map(|s| f(s)).collect();
            Ok(Problem::of_set(extended, &image)?.with_label(format!("{label}({})", p.label())))
        };
        let b = back.clone();
        let translator = move |s: &SolutionSet| s.iter().map(|e| b(e)).collect();
        AnalogyStep {
            name,
            transform: Arc::new(transform),
            translator: Arc::new(translator),
            elementwise: Some(Elementwise { forward, back }),
        }
    }

    /// `A = I`, `𝒯_A = I`.
    pub fn identity() -> Self {
        AnalogyStep {
            name: "I".into(),
            transform: Arc::new(|p: &Problem| Ok(p.clone())),
            translator: Arc::new(|s: &SolutionSet| s.clone()),
            elementwise: Some(Elementwise {
                forward: Arc::new(|e| e.clone()),
                back: Arc::new(|e| e.clone()),
            }),
        }
    }

    /// Integer shift: candidates move by `k`, solutions move back by `-k`.
    /// Non-integer expressions are left unchanged.
    pub fn shift(k: i64) -> Self {
        let by = move |d: i64| {
            move |e: &Expression| match e.as_integer() {
                Some(n) => Expression::from_integer(n + d),
                None => e.clone(),
            }
        };
        let name = if k >= 0 {
            format!("shift+{k}")
        } else {
            format!("shift{k}")
        };
        AnalogyStep::elementwise(name, by(k), by(-k))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn elementwise_maps(&self) -> Option<&Elementwise> {
        self.elementwise.as_ref()
    }

    /// `A(π)`.
    pub fn transform(&self, p: &Problem) -> Result<Problem, ProblemError> {
        (self.transform)(p)
    }

    /// `𝒯_A(S)`.
    pub fn translate(&self, s: &SolutionSet) -> SolutionSet {
        (self.translator)(s)
    }

    /// Checks that the pointwise maps agree with the set-level ones on `p`
    /// and on `set`. Steps without a pointwise form pass trivially.
    pub fn pointwise_agrees(&self, p: &Problem, set: &SolutionSet) -> Result<bool, ProblemError> {
        let Some(ew) = &self.elementwise else {
            return Ok(true);
        };
        let translated: SolutionSet = set.iter().map(|e| (ew.back)(e)).collect();
        if translated != self.translate(set) {
            return Ok(false);
        }
        let image: SolutionSet = p.solutions()?.iter().map(|e| (ew.forward)(e)).collect();
        Ok(image == self.transform(p)?.solutions()?)
    }
}

/// `A` then `A'`; the translators compose the other way round,
/// `𝒯_{A∘A'} = 𝒯_{A'} ∘ 𝒯_A` read as "undo `A'` first".
pub fn chain(first: &AnalogyStep, second: &AnalogyStep) -> AnalogyStep {
    let (t1, t2) = (first.transform.clone(), second.transform.clone());
    let (b1, b2) = (first.translator.clone(), second.translator.clone());
    let elementwise = match (&first.elementwise, &second.elementwise) {
        (Some(e1), Some(e2)) => {
            let (f1, f2, k1, k2) = (
                e1.forward.clone(),
                e2.forward.clone(),
                e1.back.clone(),
                e2.back.clone(),
            );
            Some(Elementwise {
                forward: Arc::new(move |e: &Expression| f2(&f1(e))),
                back: Arc::new(move |e: &Expression| k1(&k2(e))),
            })
        }
        _ => None,
    };
    AnalogyStep {
        name: format!("{}∘{}", first.name, second.name),
        transform: Arc::new(move |p: &Problem| t2(&t1(p)?)),
        translator: Arc::new(move |s: &SolutionSet| b1(&b2(s))),
        elementwise,
    }
}

/// Candidates tried by a trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pool {
    Explicit(SolutionSet),
    /// Every member of the problem's universe: the exhaustive search.
    Universe,
}

/// A finite, label-distinct list of resolutions.
#[derive(Debug, Clone, Default)]
pub struct CandidateFamily {
    members: Vec<Resolution>,
}

impl CandidateFamily {
    pub fn new(members: Vec<Resolution>) -> Result<Self, ResolutionError> {
        let mut seen = HashSet::new();
        for m in &members {
            if !seen.insert(m.label.clone()) {
                return Err(ResolutionError::DuplicateLabel(m.label.clone()));
            }
        }
        Ok(CandidateFamily { members })
    }

    pub fn members(&self) -> &[Resolution] {
        &self.members
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|m| m.label.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&Resolution> {
        self.members.iter().find(|m| m.label == label)
    }
}

/// An analogy on metaproblems obtained by lifting an analogy on problems:
/// `𝒜(Ππ) = Π(Aπ)`, and each valid `r` for `Aπ` translates to `A∘r∘𝒯_A`.
#[derive(Debug, Clone)]
pub struct MetaAnalogyStep {
    base: AnalogyStep,
}

impl MetaAnalogyStep {
    pub fn lift(base: AnalogyStep) -> Self {
        MetaAnalogyStep { base }
    }

    pub fn base(&self) -> &AnalogyStep {
        &self.base
    }

    pub fn name(&self) -> String {
        format!("lift({})", self.base.name)
    }

    /// `𝒯_𝒜`: a resolution of `Aπ` becomes a resolution of `π`.
    pub fn translate(&self, r: &Resolution) -> Resolution {
        Resolution::analogy(vec![self.base.clone()], r.clone()).expect("one-step chain")
    }
}

#[derive(Debug, Clone)]
pub enum Form {
    Routine(SolutionSet),
    Trial {
        pool: Pool,
        limit: Option<usize>,
    },
    Analogy {
        chain: Vec<AnalogyStep>,
        inner: Box<Resolution>,
    },
    MetaTrial(CandidateFamily),
    MetaAnalogy {
        step: MetaAnalogyStep,
        family: CandidateFamily,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResolutionType {
    Routine,
    Trial,
    Analogy,
    MetaTrial,
    MetaAnalogy,
}

impl fmt::Display for ResolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResolutionType::Routine => "routine",
            ResolutionType::Trial => "trial",
            ResolutionType::Analogy => "analogy",
            ResolutionType::MetaTrial => "meta-trial",
            ResolutionType::MetaAnalogy => "meta-analogy",
        })
    }
}

/// A labelled resolution.
#[derive(Debug, Clone)]
pub struct Resolution {
    label: String,
    form: Form,
}

impl Resolution {
    /// `R_π`: returns `set` whatever the problem.
    pub fn routine(set: SolutionSet) -> Self {
        Resolution {
            label: format!("routine {}", set.render()),
            form: Form::Routine(set),
        }
    }

    pub fn trial(pool: SolutionSet) -> Self {
        Resolution {
            label: format!("trial {}", pool.render()),
            form: Form::Trial {
                pool: Pool::Explicit(pool),
                limit: None,
            },
        }
    }

    /// Trial over the whole universe of whatever problem it is applied to.
    pub fn exhaustive() -> Self {
        Resolution {
            label: "exhaustive".into(),
            form: Form::Trial {
                pool: Pool::Universe,
                limit: None,
            },
        }
    }

    /// A trial that stops after `k` solutions.
    pub fn trial_first(pool: Pool, k: usize) -> Self {
        Resolution {
            label: format!("trial first {k}"),
            form: Form::Trial {
                pool,
                limit: Some(k),
            },
        }
    }

    pub fn analogy(chain: Vec<AnalogyStep>, inner: Resolution) -> Result<Self, ResolutionError> {
        if chain.is_empty() {
            return Err(ResolutionError::EmptyChain);
        }
        let names: Vec<&str> = chain.iter().map(|s| s.name()).collect();
        Ok(Resolution {
            label: format!("[{}]({})", names.join(","), inner.label),
            form: Form::Analogy {
                chain,
                inner: Box::new(inner),
            },
        })
    }

    pub fn meta_trial(family: CandidateFamily) -> Self {
        Resolution {
            label: format!("meta-trial[{}]", family.labels().join(";")),
            form: Form::MetaTrial(family),
        }
    }

    pub fn meta_analogy(step: MetaAnalogyStep, family: CandidateFamily) -> Self {
        Resolution {
            label: format!(
                "meta-analogy {}[{}]",
                step.name(),
                family.labels().join(";")
            ),
            form: Form::MetaAnalogy { step, family },
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn kind(&self) -> ResolutionType {
        classify_resolution(self)
    }

    /// Applies the resolution with a fresh meter of `fuel` steps.
    pub fn apply(&self, p: &Problem, fuel: u64) -> Result<SolutionSet, ResolutionError> {
        self.apply_metered(p, &mut Meter::new(fuel))
    }

    pub fn apply_metered(
        &self,
        p: &Problem,
        meter: &mut Meter,
    ) -> Result<SolutionSet, ResolutionError> {
        match &self.form {
            Form::Routine(set) => {
                meter.charge(set.len() as u64)?;
                Ok(set.clone())
            }
            Form::Trial { pool, limit } => run_trial(p, pool, *limit, meter),
            Form::Analogy { chain, inner } => apply_chain(chain, inner, p, meter),
            Form::MetaTrial(family) => {
                let chosen = first_valid(p, family, meter)?;
                chosen.apply_metered(p, meter)
            }
            Form::MetaAnalogy { step, family } => {
                let moved = step
                    .base
                    .transform(p)
                    .map_err(|e| analogy_error(0, &step.base, e.into()))?;
                let chosen = first_valid(&moved, family, meter)?;
                step.translate(chosen).apply_metered(p, meter)
            }
        }
    }
}

fn analogy_error(position: usize, step: &AnalogyStep, source: ResolutionError) -> ResolutionError {
    ResolutionError::Analogy {
        position,
        name: step.name.clone(),
        source: Box::new(source),
    }
}

fn apply_chain(
    chain: &[AnalogyStep],
    inner: &Resolution,
    p: &Problem,
    meter: &mut Meter,
) -> Result<SolutionSet, ResolutionError> {
    let mut moved = p.clone();
    for (i, step) in chain.iter().enumerate() {
        moved = step
            .transform(&moved)
            .map_err(|e| analogy_error(i, step, e.into()))?;
    }
    let mut out = inner
        .apply_metered(&moved, meter)
        .map_err(|e| match chain.len() {
            0 => e,
            n => analogy_error(n - 1, &chain[n - 1], e),
        })?;
    for (i, step) in chain.iter().enumerate().rev() {
        meter
            .charge(out.len() as u64)
            .map_err(|e| analogy_error(i, step, e))?;
        out = step.translate(&out);
    }
    Ok(out)
}

// f_c: the first member of the family, in family order, that is valid for p.
fn first_valid<'f>(
    p: &Problem,
    family: &'f CandidateFamily,
    meter: &mut Meter,
) -> Result<&'f Resolution, ResolutionError> {
    let truth = p.solutions()?;
    for r in family.members() {
        meter.charge(1)?;
        let mut sub = Meter::new(meter.limit().saturating_sub(meter.used()));
        let verdict = r.apply_metered(p, &mut sub);
        meter.charge(sub.used())?;
        if matches!(verdict, Ok(ref s) if *s == truth) {
            return Ok(r);
        }
    }
    Err(ResolutionError::Unresolved(p.label().to_string()))
}

fn run_trial(
    p: &Problem,
    pool: &Pool,
    limit: Option<usize>,
    meter: &mut Meter,
) -> Result<SolutionSet, ResolutionError> {
    let wanted = limit.unwrap_or(usize::MAX);
    let mut found = Vec::new();
    let mut test = |x: Expression, found: &mut Vec<Expression>| -> Result<bool, ResolutionError> {
        meter.charge(1)?;
        if p.holds(&x)? {
            found.push(x);
        }
        Ok(found.len() >= wanted)
    };
    match pool {
        Pool::Universe => {
            for x in p.universe().iter() {
                if test(x, &mut found)? {
                    break;
                }
            }
        }
        Pool::Explicit(set) => {
            // candidates outside the universe cannot be solutions
            for x in p.universe().sorted_members(set.iter().cloned()) {
                if test(x, &mut found)? {
                    break;
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// `T_π(S)`: the members of `pool` that solve `p`, in universe order.
pub fn trial(p: &Problem, pool: &SolutionSet) -> Result<SolutionSet, ResolutionError> {
    run_trial(
        p,
        &Pool::Explicit(pool.clone()),
        None,
        &mut Meter::new(u64::MAX),
    )
}

/// `𝒯_A(ℜ(A(π)))` for a single step.
pub fn apply_analogy(
    step: &AnalogyStep,
    inner: &Resolution,
    p: &Problem,
    fuel: u64,
) -> Result<SolutionSet, ResolutionError> {
    apply_chain(std::slice::from_ref(step), inner, p, &mut Meter::new(fuel))
}

/// `A ∘ T_{Aπ}(S) ∘ 𝒯_A`; with an empty chain this is the plain trial.
pub fn general_form(chain: Vec<AnalogyStep>, pool: Pool) -> Resolution {
    let trial = match &pool {
        Pool::Universe => Resolution::exhaustive(),
        Pool::Explicit(s) => Resolution::trial(s.clone()),
    };
    if chain.is_empty() {
        trial
    } else {
        Resolution::analogy(chain, trial).expect("chain is nonempty")
    }
}

pub fn classify_resolution(r: &Resolution) -> ResolutionType {
    match r.form {
        Form::Routine(_) => ResolutionType::Routine,
        Form::Trial { .. } => ResolutionType::Trial,
        Form::Analogy { .. } => ResolutionType::Analogy,
        Form::MetaTrial(_) => ResolutionType::MetaTrial,
        Form::MetaAnalogy { .. } => ResolutionType::MetaAnalogy,
    }
}

/// Outcome of testing one family member against its metaproblem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberVerdict {
    pub label: String,
    pub valid: bool,
    pub steps: u64,
    /// Invalid only because the fuel ran out: the verdict may change with
    /// more fuel.
    pub out_of_fuel: bool,
    pub error: Option<String>,
}

/// `P_Π(π, r) = [r(π) = Σ_π]` for a resolution of a problem.
pub fn is_valid_resolution(
    r: &Resolution,
    p: &Problem,
    fuel: u64,
) -> Result<bool, ResolutionError> {
    let truth = p.solutions()?;
    Ok(verdict_against(r, p, &truth, fuel).valid)
}

fn verdict_against(r: &Resolution, p: &Problem, truth: &SolutionSet, fuel: u64) -> MemberVerdict {
    let mut meter = Meter::new(fuel);
    let result = r.apply_metered(p, &mut meter);
    let steps = meter.used().min(fuel);
    match result {
        Ok(s) => MemberVerdict {
            label: r.label.clone(),
            valid: s == *truth,
            steps,
            out_of_fuel: false,
            error: None,
        },
        Err(e) => MemberVerdict {
            label: r.label.clone(),
            valid: false,
            steps,
            out_of_fuel: e.is_out_of_fuel(),
            error: Some(e.to_string()),
        },
    }
}

/// A resolution of metaproblems: it receives a metaproblem and returns a set
/// of its family members, by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetaForm {
    Routine(Vec<String>),
    Trial(Vec<String>),
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaResolution {
    label: String,
    form: MetaForm,
}

impl MetaResolution {
    pub fn routine(labels: &[&str]) -> Self {
        MetaResolution {
            label: format!("routine {{{}}}", labels.join(";")),
            form: MetaForm::Routine(labels.iter().map(|s| s.to_string()).collect()),
        }
    }

    pub fn trial(labels: &[&str]) -> Self {
        MetaResolution {
            label: format!("trial {{{}}}", labels.join(";")),
            form: MetaForm::Trial(labels.iter().map(|s| s.to_string()).collect()),
        }
    }

    pub fn exhaustive() -> Self {
        MetaResolution {
            label: "exhaustive".into(),
            form: MetaForm::Exhaustive,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn form(&self) -> &MetaForm {
        &self.form
    }

    /// `x(m)`: the labels this resolution returns for metaproblem `m`.
    pub fn apply(
        &self,
        m: &Metaproblem,
        meter: &mut Meter,
    ) -> Result<BTreeSet<String>, ResolutionError> {
        let labels = m.member_labels();
        match &self.form {
            MetaForm::Routine(chosen) => {
                meter.charge(chosen.len() as u64)?;
                Ok(chosen.iter().cloned().collect())
            }
            MetaForm::Exhaustive => self.test(m, &labels, meter),
            MetaForm::Trial(pool) => self.test(m, pool, meter),
        }
    }

    fn test(
        &self,
        m: &Metaproblem,
        pool: &[String],
        meter: &mut Meter,
    ) -> Result<BTreeSet<String>, ResolutionError> {
        let valid = m.valid_labels();
        let mut out = BTreeSet::new();
        for label in pool {
            meter.charge(1)?;
            if valid.contains(label) {
                out.insert(label.clone());
            }
        }
        Ok(out)
    }
}

/// What a metaproblem is about: a problem (level 0) or another metaproblem.
#[derive(Debug, Clone)]
pub enum MetaTarget {
    Problem(Problem),
    Meta(Box<Metaproblem>),
}

/// The candidates a metaproblem quantifies over.
#[derive(Debug, Clone)]
pub enum Family {
    Resolutions(CandidateFamily),
    Meta(Vec<MetaResolution>),
}

impl Family {
    pub fn labels(&self) -> Vec<String> {
        match self {
            Family::Resolutions(f) => f.labels(),
            Family::Meta(v) => v.iter().map(|m| m.label.clone()).collect(),
        }
    }
}

/// `Ππ = r ? [r(π) = Σ_π]` over an explicit finite family.
#[derive(Debug, Clone)]
pub struct Metaproblem {
    level: usize,
    target: MetaTarget,
    family: Family,
    fuel: u64,
    verdicts: Vec<MemberVerdict>,
}

impl Metaproblem {
    /// The metaproblem of a problem.
    pub fn new(p: Problem, family: CandidateFamily, fuel: u64) -> Result<Self, ResolutionError> {
        Metaproblem::build(
            MetaTarget::Problem(p),
            Family::Resolutions(family),
            fuel,
            Strategy::default(),
        )
    }

    /// The metaproblem of a metaproblem.
    pub fn over(
        inner: Metaproblem,
        family: Vec<MetaResolution>,
        fuel: u64,
    ) -> Result<Self, ResolutionError> {
        Metaproblem::build(
            MetaTarget::Meta(Box::new(inner)),
            Family::Meta(family),
            fuel,
            Strategy::default(),
        )
    }

    pub fn build(
        target: MetaTarget,
        family: Family,
        fuel: u64,
        strategy: Strategy,
    ) -> Result<Self, ResolutionError> {
        let mut seen = HashSet::new();
        for l in family.labels() {
            if !seen.insert(l.clone()) {
                return Err(ResolutionError::DuplicateLabel(l));
            }
        }
        let level = match &target {
            MetaTarget::Problem(_) => 0,
            MetaTarget::Meta(m) => m.level + 1,
        };
        let verdicts = match (&target, &family) {
            (MetaTarget::Problem(p), Family::Resolutions(f)) => {
                let truth = p.solutions()?;
                sweep::map(strategy, f.members(), |r| {
                    verdict_against(r, p, &truth, fuel)
                })
            }
            (MetaTarget::Meta(m), Family::Meta(f)) => {
                let truth = m.valid_labels();
                sweep::map(strategy, f, |x| meta_verdict(x, m, &truth, fuel))
            }
            (MetaTarget::Problem(_), Family::Meta(_)) => {
                return Err(ResolutionError::FamilyKind {
                    level,
                    expected: "resolution",
                })
            }
            (MetaTarget::Meta(_), Family::Resolutions(_)) => {
                return Err(ResolutionError::FamilyKind {
                    level,
                    expected: "meta-resolution",
                })
            }
        };
        Ok(Metaproblem {
            level,
            target,
            family,
            fuel,
            verdicts,
        })
    }

    /// 0 for `Ππ`, `n` for `Πⁿ Ππ`.
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn target(&self) -> &MetaTarget {
        &self.target
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn fuel(&self) -> u64 {
        self.fuel
    }

    pub fn member_labels(&self) -> Vec<String> {
        self.family.labels()
    }

    /// Per-member verdicts, in family order.
    pub fn verdicts(&self) -> &[MemberVerdict] {
        &self.verdicts
    }

    /// `Σ_Ππ`, by label.
    pub fn valid_labels(&self) -> BTreeSet<String> {
        self.verdicts
            .iter()
            .filter(|v| v.valid)
            .map(|v| v.label.clone())
            .collect()
    }

    pub fn is_solvable(&self) -> bool {
        self.verdicts.iter().any(|v| v.valid)
    }

    /// The condition applied to member `label`.
    pub fn holds(&self, label: &str) -> Result<bool, ResolutionError> {
        self.verdicts
            .iter()
            .find(|v| v.label == label)
            .map(|v| v.valid)
            .ok_or_else(|| ResolutionError::UnknownLabel(label.to_string()))
    }

    /// Any member tested invalid only for lack of fuel.
    pub fn fuel_caveat(&self) -> bool {
        self.verdicts.iter().any(|v| v.out_of_fuel)
    }
}

fn meta_verdict(
    x: &MetaResolution,
    m: &Metaproblem,
    truth: &BTreeSet<String>,
    fuel: u64,
) -> MemberVerdict {
    let mut meter = Meter::new(fuel);
    let result = x.apply(m, &mut meter);
    let steps = meter.used().min(fuel);
    match result {
        Ok(s) => MemberVerdict {
            label: x.label.clone(),
            valid: s == *truth,
            steps,
            out_of_fuel: false,
            error: None,
        },
        Err(e) => MemberVerdict {
            label: x.label.clone(),
            valid: false,
            steps,
            out_of_fuel: e.is_out_of_fuel(),
            error: Some(e.to_string()),
        },
    }
}

/// `T_Ππ(R)`: the valid members, in family order.
pub fn meta_trial(m: &Metaproblem) -> Vec<String> {
    m.verdicts
        .iter()
        .filter(|v| v.valid)
        .map(|v| v.label.clone())
        .collect()
}

/// `P_Π(target, x)`: whether candidate `x` (a label in `family`) is valid for
/// `target`, evaluated through a one-member metaproblem.
pub fn metacondition(
    target: &MetaTarget,
    candidate: &Family,
    fuel: u64,
) -> Result<Vec<MemberVerdict>, ResolutionError> {
    Ok(Metaproblem::build(
        target.clone(),
        candidate.clone(),
        fuel,
        Strategy::Sequential,
    )?
    .verdicts)
}

/// `Πⁿ Ππ`: `families[0]` must be a resolution family and the others
/// meta-resolution families, one per level.
pub fn iterate_meta(
    p: &Problem,
    n: usize,
    families: &[Family],
    fuel: u64,
) -> Result<Metaproblem, ResolutionError> {
    if n > MAX_META_LEVEL {
        return Err(ResolutionError::TooDeep(n));
    }
    let family_at = |level: usize| {
        families
            .get(level)
            .cloned()
            .unwrap_or(Family::Meta(Vec::new()))
    };
    let mut m = Metaproblem::build(
        MetaTarget::Problem(p.clone()),
        family_at(0),
        fuel,
        Strategy::default(),
    )?;
    for level in 1..=n {
        m = Metaproblem::build(
            MetaTarget::Meta(Box::new(m)),
            family_at(level),
            fuel,
            Strategy::default(),
        )?;
    }
    Ok(m)
}

/// Verdicts for the members of `family` against `p`, keyed by label.
pub fn verdict_map(m: &Metaproblem) -> HashMap<String, bool> {
    m.verdicts
        .iter()
        .map(|v| (v.label.clone(), v.valid))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Alphabet;

    fn int(n: i64) -> Expression {
        Expression::from_integer(n)
    }

    fn ints(v: &[i64]) -> SolutionSet {
        v.iter().map(|&n| int(n)).collect()
    }

    fn double_is_square(hi: i64) -> Problem {
        Problem::from_native(Universe::int_range(0, hi), "2x = x²", |x| {
            x.as_integer().is_some_and(|n| 2 * n == n * n)
        })
    }

    fn equals(n: i64, lo: i64, hi: i64) -> Problem {
        Problem::delta(Universe::int_range(lo, hi), &int(n)).unwrap()
    }

    #[test]
    fn routines_ignore_the_problem() {
        let p = double_is_square(10);
        assert_eq!(
            Resolution::routine(ints(&[0, 2])).apply(&p, 100).unwrap(),
            ints(&[0, 2])
        );
        assert!(Resolution::routine(ints(&[]))
            .apply(&p, 100)
            .unwrap()
            .is_empty());
        assert_eq!(
            Resolution::routine(ints(&[5])).apply(&p, 100).unwrap(),
            ints(&[5])
        );
    }

    #[test]
    fn trials_intersect() {
        let p = double_is_square(10);
        assert_eq!(trial(&p, &ints(&[1, 2, 3])).unwrap(), ints(&[2]));
        let sigma = p.solutions().unwrap();
        assert_eq!(trial(&p, &sigma).unwrap(), sigma);
        assert_eq!(Resolution::exhaustive().apply(&p, 100).unwrap(), sigma);
        // results come back in universe order
        assert_eq!(
            trial(&p, &ints(&[2, 9, 0])).unwrap().members(),
            ints(&[0, 2]).members()
        );
    }

    #[test]
    fn trial_early_exit() {
        let p = Problem::tautology(Universe::int_range(0, 9));
        let r = Resolution::trial_first(Pool::Universe, 3);
        let mut meter = Meter::new(100);
        assert_eq!(r.apply_metered(&p, &mut meter).unwrap(), ints(&[0, 1, 2]));
        assert_eq!(meter.used(), 3);
    }

    #[test]
    fn exhaustive_trial_over_unbounded_universe_runs_out() {
        let a = Alphabet::of("ab").unwrap();
        let p = Problem::from_native(Universe::enumerated(a, None), "none", |_| false);
        let err = Resolution::exhaustive().apply(&p, 50).unwrap_err();
        assert!(err.is_out_of_fuel());
    }

    #[test]
    fn identity_analogy_is_transparent() {
        let p = double_is_square(10);
        let pool = ints(&[1, 2, 3]);
        assert_eq!(
            apply_analogy(
                &AnalogyStep::identity(),
                &Resolution::trial(pool.clone()),
                &p,
                100
            )
            .unwrap(),
            trial(&p, &pool).unwrap()
        );
    }

    #[test]
    fn shift_round_trip() {
        // x?P(x) ↦ x?P(x+1): the solution 3 moves to 2 and is shifted back
        let p = equals(3, 0, 10);
        let a = AnalogyStep::shift(-1);
        assert_eq!(a.transform(&p).unwrap().solutions().unwrap(), ints(&[2]));
        assert_eq!(
            apply_analogy(&a, &Resolution::exhaustive(), &p, 1000).unwrap(),
            ints(&[3])
        );
    }

    #[test]
    fn chains_compose_translators_in_reverse() {
        let p = equals(3, 0, 10);
        let plus2 = chain(&AnalogyStep::shift(1), &AnalogyStep::shift(1));
        let direct = AnalogyStep::shift(2);
        assert_eq!(
            plus2.transform(&p).unwrap().solutions().unwrap(),
            ints(&[5])
        );
        let inner = Resolution::exhaustive();
        assert_eq!(
            apply_analogy(&plus2, &inner, &p, 1000).unwrap(),
            apply_analogy(&direct, &inner, &p, 1000).unwrap()
        );
        assert_eq!(plus2.translate(&ints(&[5])), direct.translate(&ints(&[5])));
        let id = AnalogyStep::identity();
        for s in [chain(&id, &direct), chain(&direct, &id)] {
            assert_eq!(s.translate(&ints(&[7])), ints(&[5]));
            assert!(s
                .transform(&p)
                .unwrap()
                .equal(&direct.transform(&p).unwrap())
                .unwrap());
        }
    }

    #[test]
    fn pointwise_and_set_level_agree() {
        let p = equals(3, 0, 5);
        let s = chain(&AnalogyStep::shift(1), &AnalogyStep::shift(-3));
        assert!(s.pointwise_agrees(&p, &ints(&[0, 4, 9])).unwrap());
    }

    #[test]
    fn general_form_reductions() {
        let p = double_is_square(10);
        let sigma = p.solutions().unwrap();
        let r = general_form(vec![], Pool::Explicit(sigma.clone()));
        assert_eq!(
            r.apply(&p, 100).unwrap(),
            Resolution::routine(sigma.clone()).apply(&p, 100).unwrap()
        );
        let pool = ints(&[0, 1, 5]);
        assert_eq!(
            general_form(vec![], Pool::Explicit(pool.clone()))
                .apply(&p, 100)
                .unwrap(),
            trial(&p, &pool).unwrap()
        );
        let q = equals(3, 0, 10);
        let r = general_form(vec![AnalogyStep::shift(1)], Pool::Explicit(ints(&[4, 7])));
        assert_eq!(r.apply(&q, 100).unwrap(), ints(&[3]));
        let r = general_form(vec![AnalogyStep::shift(1)], Pool::Explicit(ints(&[3, 7])));
        assert!(r.apply(&q, 100).unwrap().is_empty());
    }

    #[test]
    fn five_types() {
        assert_eq!(
            Resolution::routine(ints(&[1])).kind(),
            ResolutionType::Routine
        );
        assert_eq!(
            general_form(vec![], Pool::Universe).kind(),
            ResolutionType::Trial
        );
        assert_eq!(
            general_form(vec![AnalogyStep::identity()], Pool::Universe).kind(),
            ResolutionType::Analogy
        );
        let fam = CandidateFamily::new(vec![Resolution::exhaustive()]).unwrap();
        assert_eq!(
            Resolution::meta_trial(fam.clone()).kind(),
            ResolutionType::MetaTrial
        );
        assert_eq!(
            Resolution::meta_analogy(MetaAnalogyStep::lift(AnalogyStep::identity()), fam).kind(),
            ResolutionType::MetaAnalogy
        );
        assert_eq!(
            Resolution::analogy(vec![], Resolution::exhaustive()).unwrap_err(),
            ResolutionError::EmptyChain
        );
    }

    fn three_members() -> CandidateFamily {
        CandidateFamily::new(vec![
            Resolution::routine(ints(&[0, 2])),
            Resolution::routine(ints(&[0])),
            Resolution::exhaustive(),
        ])
        .unwrap()
    }

    #[test]
    fn metaproblem_of_double_is_square() {
        let m = Metaproblem::new(double_is_square(5), three_members(), 1000).unwrap();
        assert_eq!(
            meta_trial(&m),
            vec!["routine {0,2}".to_string(), "exhaustive".to_string()]
        );
        assert!(m.is_solvable());
        assert!(!m.fuel_caveat());

        let empty =
            Metaproblem::new(double_is_square(5), CandidateFamily::default(), 1000).unwrap();
        assert!(!empty.is_solvable());

        let wrong = CandidateFamily::new(vec![
            Resolution::routine(ints(&[0])),
            Resolution::routine(ints(&[1])),
        ])
        .unwrap();
        let m = Metaproblem::new(double_is_square(5), wrong, 1000).unwrap();
        assert!(!m.is_solvable());

        assert_eq!(
            CandidateFamily::new(vec![Resolution::exhaustive(), Resolution::exhaustive()])
                .unwrap_err(),
            ResolutionError::DuplicateLabel("exhaustive".into())
        );
    }

    #[test]
    fn validity_examples() {
        let p = double_is_square(5);
        let sigma = p.solutions().unwrap();
        assert!(is_valid_resolution(&Resolution::routine(sigma), &p, 100).unwrap());
        assert!(!is_valid_resolution(&Resolution::routine(ints(&[0])), &p, 100).unwrap());
        assert!(is_valid_resolution(&Resolution::exhaustive(), &p, 100).unwrap());
        // not enough fuel to test six candidates
        assert!(!is_valid_resolution(&Resolution::exhaustive(), &p, 3).unwrap());
    }

    #[test]
    fn fuel_caveat_is_flagged() {
        let m = Metaproblem::new(double_is_square(5), three_members(), 4).unwrap();
        assert!(m.fuel_caveat());
        let v = &m.verdicts()[2];
        assert!(v.out_of_fuel && !v.valid);
    }

    #[test]
    fn meta_trial_resolution_chooses_first_valid() {
        let p = double_is_square(5);
        let r = Resolution::meta_trial(three_members());
        assert_eq!(r.apply(&p, 1000).unwrap(), ints(&[0, 2]));
        let none = Resolution::meta_trial(
            CandidateFamily::new(vec![Resolution::routine(ints(&[1]))]).unwrap(),
        );
        assert!(matches!(
            none.apply(&p, 1000),
            Err(ResolutionError::Unresolved(_))
        ));
    }

    #[test]
    fn meta_analogy_through_a_shift() {
        let p = equals(3, 0, 10);
        // in the shifted problem the solution is 4
        let fam = CandidateFamily::new(vec![
            Resolution::routine(ints(&[3])),
            Resolution::trial(ints(&[4, 5])),
        ])
        .unwrap();
        let r = Resolution::meta_analogy(MetaAnalogyStep::lift(AnalogyStep::shift(1)), fam);
        assert_eq!(r.apply(&p, 1000).unwrap(), ints(&[3]));
        assert!(is_valid_resolution(&r, &p, 1000).unwrap());
    }

    #[test]
    fn meta_levels() {
        let p = double_is_square(5);
        let base = Family::Resolutions(three_members());
        let level1 = Family::Meta(vec![
            MetaResolution::routine(&["routine {0,2}", "exhaustive"]),
            MetaResolution::routine(&["exhaustive"]),
            MetaResolution::exhaustive(),
            MetaResolution::trial(&["routine {0}", "exhaustive"]),
        ]);
        let level2 = Family::Meta(vec![
            MetaResolution::routine(&["routine {routine {0,2};exhaustive}", "exhaustive"]),
            MetaResolution::exhaustive(),
        ]);
        let m0 = iterate_meta(&p, 0, std::slice::from_ref(&base), 1000).unwrap();
        assert_eq!(m0.level(), 0);
        let m1 = iterate_meta(&p, 1, &[base.clone(), level1.clone()], 1000).unwrap();
        assert_eq!(
            meta_trial(&m1),
            vec![
                "routine {routine {0,2};exhaustive}".to_string(),
                "exhaustive".to_string()
            ]
        );
        let m2 = iterate_meta(&p, 2, &[base.clone(), level1, level2], 1000).unwrap();
        assert_eq!(m2.level(), 2);
        assert_eq!(meta_trial(&m2).len(), 2);
        assert!(matches!(
            iterate_meta(&p, 4, std::slice::from_ref(&base), 10),
            Err(ResolutionError::TooDeep(4))
        ));
        assert!(matches!(
            iterate_meta(&p, 0, &[Family::Meta(vec![])], 10),
            Err(ResolutionError::FamilyKind { level: 0, .. })
        ));
        let one = metacondition(&MetaTarget::Problem(p), &base, 1000).unwrap();
        assert_eq!(one.iter().filter(|v| v.valid).count(), 2);
    }
}
