//! The resolver hierarchy: mechanism, adapter, perceiver, learner and subject,
//! with brute-force range and power over finite problem spaces.
//!
//! A problem over a finite universe is identified by the bitmask of its
//! solution set (bit `i` is member `i` of the universe). Range `Ξ` is the set
//! of problems a resolver solves, power `Φ` the set it resolves.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::expr::{Alphabet, ExprError, Expression, Universe};
use crate::machine::{
    constant_machine, decider_alphabet, identity_machine, symbol_map_machine, universal_apply,
    MachineError, Program, RunOutcome, FALSE_SYMBOL, TRUE_SYMBOL,
};
use crate::problem::{all_problems, Problem, ProblemError, SolutionSet};
use crate::resolution::{
    self, AnalogyStep, CandidateFamily, Metaproblem, Resolution, ResolutionError,
};
use crate::sweep::{self, Strategy};

/// Largest universe a [`ProblemSpace`] accepts: 2^16 problems.
pub const MAX_SPACE_SIZE: usize = 16;

/// Largest universe for which every function `U → U` is listed.
pub const MAX_FUNCTION_SPACE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolverError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error("function {function} is undefined at {witness}")]
    Domain {
        function: String,
        witness: Expression,
    },
    #[error("function {0} has no program to evaluate")]
    MissingProgram(String),
    #[error("program {function} did not halt on {input} within {fuel} steps")]
    OutOfFuel {
        function: String,
        input: Expression,
        fuel: u64,
    },
    #[error("problem space over {0} is not finite")]
    NotFinite(String),
    #[error("universe of {size} members exceeds the limit of {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("expression {0} is not in the universe")]
    OutsideUniverse(Expression),
    #[error("function name {0:?} appears twice")]
    DuplicateFunction(String),
    #[error("report for {resolver} is inconsistent at problem {mask}: {detail}")]
    Inconsistent {
        resolver: String,
        mask: u32,
        detail: String,
    },
}

type ElementMap = Arc<dyn Fn(&Expression) -> Option<Expression> + Send + Sync>;

/// A named, possibly partial function on expressions, optionally backed by a
/// machine program so that a subject can evaluate it.
#[derive(Clone)]
pub struct ElementFn {
    name: String,
    map: ElementMap,
    program: Option<Program>,
}

impl fmt::Debug for ElementFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementFn({})", self.name)
    }
}

impl ElementFn {
    /// A partial function; `None` means "undefined here".
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(&Expression) -> Option<Expression> + Send + Sync + 'static,
    ) -> Self {
        ElementFn {
            name: name.into(),
            map: Arc::new(f),
            program: None,
        }
    }

    pub fn total(
        name: impl Into<String>,
        f: impl Fn(&Expression) -> Expression + Send + Sync + 'static,
    ) -> Self {
        ElementFn::new(name, move |e| Some(f(e)))
    }

    /// Defined exactly on the listed inputs.
    pub fn from_table(
        name: impl Into<String>,
        pairs: impl IntoIterator<Item = (Expression, Expression)>,
    ) -> Self {
        let table: std::collections::HashMap<Expression, Expression> = pairs.into_iter().collect();
        ElementFn::new(name, move |e| table.get(e).cloned())
    }

    /// The function computed by `program`, with `fuel` steps per call.
    pub fn from_program(name: impl Into<String>, program: Program, fuel: u64) -> Self {
        let code = program.expression().clone();
        let f = ElementFn::new(name, move |e| {
            universal_apply(&code, e, fuel).result().cloned()
        });
        f.with_program(program)
    }

    /// Semantic identity `i`.
    pub fn identity() -> Self {
        ElementFn::total("i", |e| e.clone())
    }

    /// `i` with the one-state identity machine over `alphabet`.
    pub fn identity_on(alphabet: &Alphabet) -> Self {
        ElementFn::identity().with_program(Program::encode(&identity_machine(alphabet)))
    }

    /// `K_value`.
    pub fn constant(value: Expression) -> Self {
        ElementFn::total(format!("K_{}", value.render()), move |_| value.clone())
    }

    pub fn constant_on(alphabet: &Alphabet, value: Expression) -> Result<Self, ResolverError> {
        let program = Program::encode(&constant_machine(alphabet, &value)?);
        Ok(ElementFn::constant(value).with_program(program))
    }

    /// Moves every symbol one place along the alphabet, wrapping at the end:
    /// `+1 mod n` on one-digit numbers over `0..n`.
    pub fn cyclic_successor(alphabet: &Alphabet) -> Result<Self, ResolverError> {
        let symbols = alphabet.symbols().to_vec();
        let n = symbols.len();
        let next = move |c: char| {
            symbols
                .iter()
                .position(|&s| s == c)
                .map(|i| symbols[(i + 1) % n])
        };
        let program = Program::encode(&symbol_map_machine(alphabet, |c| next(c).unwrap_or(c))?);
        let f = ElementFn::new(format!("+1 mod {n}"), move |e| {
            e.symbols()
                .iter()
                .map(|&c| next(c))
                .collect::<Option<Vec<char>>>()
                .map(Expression::from_symbols)
        });
        Ok(f.with_program(program))
    }

    pub fn with_program(mut self, program: Program) -> Self {
        self.program = Some(program);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn program(&self) -> Option<&Program> {
        self.program.as_ref()
    }

    pub fn apply(&self, e: &Expression) -> Result<Expression, ResolverError> {
        (self.map)(e).ok_or_else(|| ResolverError::Domain {
            function: self.name.clone(),
            witness: e.clone(),
        })
    }

    /// `f(S) = {f(s) | s ∈ S}`.
    pub fn lift(&self, set: &SolutionSet) -> Result<SolutionSet, ResolverError> {
        set.iter().map(|e| self.apply(e)).collect()
    }

    /// Values on `members`, in order.
    pub fn table(&self, members: &[Expression]) -> Result<Vec<Expression>, ResolverError> {
        members.iter().map(|e| self.apply(e)).collect()
    }

    /// `𝔲(program)(e)`: evaluation of the function's program.
    pub fn evaluate(&self, e: &Expression, fuel: u64) -> Result<Expression, ResolverError> {
        let program = self
            .program
            .as_ref()
            .ok_or_else(|| ResolverError::MissingProgram(self.name.clone()))?;
        match universal_apply(program.expression(), e, fuel) {
            RunOutcome::Halted { result, .. } => Ok(result),
            RunOutcome::OutOfFuel { .. } => Err(ResolverError::OutOfFuel {
                function: self.name.clone(),
                input: e.clone(),
                fuel,
            }),
        }
    }
}

/// The set-level function `S ↦ f(S)` of an element function.
pub fn elementable_lift(
    f: &ElementFn,
) -> impl Fn(&SolutionSet) -> Result<SolutionSet, ResolverError> + '_ {
    move |s| f.lift(s)
}

/// A finite set of element functions with distinct names.
#[derive(Debug, Clone, Default)]
pub struct FunctionSet(Vec<ElementFn>);

impl FunctionSet {
    pub fn new(fns: Vec<ElementFn>) -> Result<Self, ResolverError> {
        let mut seen = HashSet::new();
        for f in &fns {
            if !seen.insert(f.name.clone()) {
                return Err(ResolverError::DuplicateFunction(f.name.clone()));
            }
        }
        Ok(FunctionSet(fns))
    }

    pub fn members(&self) -> &[ElementFn] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.0.iter().map(|f| f.name.clone()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&ElementFn> {
        self.0.iter().find(|f| f.name == name)
    }

    pub fn render(&self) -> String {
        format!("{{{}}}", self.names().join(","))
    }

    /// `F(S) = {f(s) | s ∈ S, f ∈ F}`.
    pub fn lift(&self, set: &SolutionSet) -> Result<SolutionSet, ResolverError> {
        let mut out = Vec::new();
        for s in set {
            for f in &self.0 {
                out.push(f.apply(s)?);
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Whether some member acts as the identity on `members`.
    pub fn has_identity_on(&self, members: &[Expression]) -> Result<bool, ResolverError> {
        for f in &self.0 {
            if f.table(members)? == members {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// How the current problem's solutions enter a resolver's input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Binding {
    /// The input is used as given.
    Unbound,
    /// The input is first cut down to `S ∩ Σ_π`.
    Intersect,
    /// The output is filtered through `Σ_π`: `ℜ(S) ∩ Σ_π`, written `S ⩀ Σ_π`.
    PostFilter,
}

impl Binding {
    fn apply(
        self,
        input: &SolutionSet,
        sigma: &SolutionSet,
        f: impl Fn(&SolutionSet) -> Result<SolutionSet, ResolverError>,
    ) -> Result<SolutionSet, ResolverError> {
        match self {
            Binding::Unbound => f(input),
            Binding::Intersect => f(&input.intersection(sigma)),
            Binding::PostFilter => Ok(f(input)?.intersection(sigma)),
        }
    }

    fn notation(self, input: &str) -> String {
        match self {
            Binding::Unbound => input.to_string(),
            Binding::Intersect => format!("{input}∩Σ"),
            Binding::PostFilter => format!("{input}⩀Σ"),
        }
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Binding::Unbound => "unbound",
            Binding::Intersect => "intersect",
            Binding::PostFilter => "post-filter",
        })
    }
}

/// One resolver with its resource and its input.
#[derive(Debug, Clone)]
pub enum Resolver {
    /// `ℜ₀[s]`: returns `{s}` whatever the problem.
    Mechanism(Expression),
    /// `ℜ₁[S]`: the set of a condition; bound to the problem it is the trial.
    Adapter { set: SolutionSet, bind: Binding },
    /// `ℜ₂[f](S)`.
    Perceiver {
        f: ElementFn,
        input: SolutionSet,
        bind: Binding,
    },
    /// `ℜ₃[F](S)`.
    Learner {
        fns: FunctionSet,
        input: SolutionSet,
        bind: Binding,
    },
    /// `ℜ₄[𝔲](F)(S)`: `F` given as programs and evaluated under `fuel`.
    Subject {
        library: FunctionSet,
        input: SolutionSet,
        bind: Binding,
        fuel: u64,
    },
}

impl Resolver {
    pub fn level(&self) -> usize {
        match self {
            Resolver::Mechanism(_) => 0,
            Resolver::Adapter { .. } => 1,
            Resolver::Perceiver { .. } => 2,
            Resolver::Learner { .. } => 3,
            Resolver::Subject { .. } => 4,
        }
    }

    pub fn binding(&self) -> Binding {
        match self {
            Resolver::Mechanism(_) => Binding::Unbound,
            Resolver::Adapter { bind, .. }
            | Resolver::Perceiver { bind, .. }
            | Resolver::Learner { bind, .. }
            | Resolver::Subject { bind, .. } => *bind,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Resolver::Mechanism(s) => format!("R0[{}]", s.render()),
            Resolver::Adapter { set, bind } => format!("R1[{}]", bind.notation(&set.render())),
            Resolver::Perceiver { f, input, bind } => {
                format!("R2[{}]({})", f.name, bind.notation(&input.render()))
            }
            Resolver::Learner { fns, input, bind } => {
                format!("R3[{}]({})", fns.render(), bind.notation(&input.render()))
            }
            Resolver::Subject {
                library,
                input,
                bind,
                ..
            } => {
                format!(
                    "R4[u]({})({})",
                    library.render(),
                    bind.notation(&input.render())
                )
            }
        }
    }

    /// Output on a problem whose solution set is `sigma`.
    pub fn resolve_on(&self, sigma: &SolutionSet) -> Result<SolutionSet, ResolverError> {
        match self {
            Resolver::Mechanism(s) => Ok(std::iter::once(s.clone()).collect()),
            Resolver::Adapter { set, bind } => bind.apply(set, sigma, |s| Ok(s.clone())),
            Resolver::Perceiver { f, input, bind } => bind.apply(input, sigma, |s| f.lift(s)),
            Resolver::Learner { fns, input, bind } => bind.apply(input, sigma, |s| fns.lift(s)),
            Resolver::Subject {
                library,
                input,
                bind,
                fuel,
            } => bind.apply(input, sigma, |s| {
                let mut out = Vec::new();
                for x in s {
                    for f in library.members() {
                        out.push(f.evaluate(x, *fuel)?);
                    }
                }
                Ok(out.into_iter().collect())
            }),
        }
    }
}

impl fmt::Display for Resolver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// `ℜ(π)`.
pub fn resolve(r: &Resolver, p: &Problem) -> Result<SolutionSet, ResolverError> {
    r.resolve_on(&p.solutions()?)
}

/// Every subset-problem of a finite universe, indexed by bitmask.
#[derive(Debug, Clone)]
pub struct ProblemSpace {
    universe: Universe,
    members: Vec<Expression>,
    sigmas: Vec<SolutionSet>,
}

impl ProblemSpace {
    pub fn new(universe: Universe) -> Result<Self, ResolverError> {
        let members = universe
            .all_members()
            .ok_or_else(|| ResolverError::NotFinite(universe.describe()))?;
        if members.len() > MAX_SPACE_SIZE {
            return Err(ResolverError::TooLarge {
                size: members.len(),
                limit: MAX_SPACE_SIZE,
            });
        }
        let sigmas = all_problems(&universe)?
            .iter()
            .map(|p| p.solutions())
            .collect::<Result<_, _>>()?;
        Ok(ProblemSpace {
            universe,
            members,
            sigmas,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn members(&self) -> &[Expression] {
        &self.members
    }

    /// Number of problems, `2^|U|`.
    pub fn len(&self) -> usize {
        self.sigmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigmas.is_empty()
    }

    /// `Σ` of problem `mask`.
    pub fn sigma(&self, mask: u32) -> &SolutionSet {
        &self.sigmas[mask as usize]
    }

    pub fn sigmas(&self) -> &[SolutionSet] {
        &self.sigmas
    }

    pub fn problem(&self, mask: u32) -> Result<Problem, ResolverError> {
        Ok(
            Problem::of_set(self.universe.clone(), self.sigma(mask))?
                .with_label(format!("#{mask}")),
        )
    }

    /// Bitmask of a subset of the universe.
    pub fn mask_of(&self, set: &SolutionSet) -> Result<u32, ResolverError> {
        let mut mask = 0u32;
        for e in set {
            let i = self
                .members
                .iter()
                .position(|m| m == e)
                .ok_or_else(|| ResolverError::OutsideUniverse(e.clone()))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// The members selected by `mask`, in universe order.
    pub fn subset(&self, mask: u32) -> SolutionSet {
        self.members
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, e)| e.clone())
            .collect()
    }

    /// The whole universe as a set.
    pub fn full(&self) -> SolutionSet {
        self.members.iter().cloned().collect()
    }

    /// All `|U|^|U|` total functions `U → U`, named by their tables.
    pub fn all_functions(&self) -> Result<Vec<ElementFn>, ResolverError> {
        let n = self.members.len();
        if n > MAX_FUNCTION_SPACE {
            return Err(ResolverError::TooLarge {
                size: n,
                limit: MAX_FUNCTION_SPACE,
            });
        }
        let count = n.pow(n as u32);
        Ok((0..count)
            .map(|mut code| {
                let mut pairs = Vec::with_capacity(n);
                for x in &self.members {
                    pairs.push((x.clone(), self.members[code % n].clone()));
                    code /= n;
                }
                let name = format!(
                    "[{}]",
                    pairs
                        .iter()
                        .map(|(x, y)| format!("{}↦{}", x.render(), y.render()))
                        .collect::<Vec<_>>()
                        .join(",")
                );
                ElementFn::from_table(name, pairs)
            })
            .collect())
    }

    fn masks(set: impl IntoIterator<Item = u32>) -> BTreeSet<u32> {
        set.into_iter().collect()
    }
}

/// A problem with the resolver's output on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub mask: u32,
    pub solutions: String,
    pub output: String,
}

/// Range and power of one resolver over a problem space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RangePowerReport {
    pub resolver: String,
    pub binding: Binding,
    pub universe: Vec<String>,
    pub problems: usize,
    pub range: Vec<u32>,
    pub power: Vec<u32>,
    /// First problem solved, first not solved, first resolved, first not
    /// resolved, whichever exist.
    pub witnesses: Vec<Witness>,
}

impl RangePowerReport {
    pub fn in_range(&self, mask: u32) -> bool {
        self.range.binary_search(&mask).is_ok()
    }

    pub fn in_power(&self, mask: u32) -> bool {
        self.power.binary_search(&mask).is_ok()
    }
}

/// `ℜ(π)` for every problem of the space, in mask order.
pub fn outputs(
    r: &Resolver,
    space: &ProblemSpace,
    strategy: Strategy,
) -> Result<Vec<SolutionSet>, ResolverError> {
    sweep::map(strategy, space.sigmas(), |sigma| r.resolve_on(sigma))
        .into_iter()
        .collect()
}

/// `Ξℜ` and `Φℜ` by definition, re-checked before returning.
pub fn range_power(
    r: &Resolver,
    space: &ProblemSpace,
    strategy: Strategy,
) -> Result<RangePowerReport, ResolverError> {
    let outs = outputs(r, space, strategy)?;
    let mut range = Vec::new();
    let mut power = Vec::new();
    for (mask, (out, sigma)) in outs.iter().zip(space.sigmas()).enumerate() {
        if !out.is_empty() && out.is_subset(sigma) {
            range.push(mask as u32);
        }
        if out == sigma {
            power.push(mask as u32);
        }
    }
    let witness = |mask: u32| Witness {
        mask,
        solutions: space.sigma(mask).render(),
        output: outs[mask as usize].render(),
    };
    let all = 0..space.len() as u32;
    let picks = [
        range.first().copied(),
        all.clone().find(|m| range.binary_search(m).is_err()),
        power.first().copied(),
        all.clone().find(|m| power.binary_search(m).is_err()),
    ];
    let report = RangePowerReport {
        resolver: r.describe(),
        binding: r.binding(),
        universe: space.members().iter().map(|e| e.render()).collect(),
        problems: space.len(),
        range,
        power,
        witnesses: picks.into_iter().flatten().map(witness).collect(),
    };
    recheck(&report, &outs, space)?;
    Ok(report)
}

fn recheck(
    report: &RangePowerReport,
    outs: &[SolutionSet],
    space: &ProblemSpace,
) -> Result<(), ResolverError> {
    let fail = |mask: u32, detail: &str| ResolverError::Inconsistent {
        resolver: report.resolver.clone(),
        mask,
        detail: detail.to_string(),
    };
    for &m in &report.range {
        let out = &outs[m as usize];
        if out.is_empty() {
            return Err(fail(m, "empty output counted as solved"));
        }
        if !out.is_subset(space.sigma(m)) {
            return Err(fail(m, "output outside the solutions counted as solved"));
        }
    }
    for &m in &report.power {
        if outs[m as usize] != *space.sigma(m) {
            return Err(fail(
                m,
                "output differs from the solutions but counted as resolved",
            ));
        }
    }
    Ok(())
}

/// `Ξℜ` as problem masks.
pub fn range(
    r: &Resolver,
    space: &ProblemSpace,
    strategy: Strategy,
) -> Result<Vec<u32>, ResolverError> {
    Ok(range_power(r, space, strategy)?.range)
}

/// `Φℜ` as problem masks.
pub fn power(
    r: &Resolver,
    space: &ProblemSpace,
    strategy: Strategy,
) -> Result<Vec<u32>, ResolverError> {
    Ok(range_power(r, space, strategy)?.power)
}

/// One resource-level embedding `level k → level k+1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub from: usize,
    pub to: usize,
    pub map: String,
    pub injective: bool,
    pub preserving: bool,
    pub cases: usize,
}

/// A resource of level `level` that no resource of the level below provides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelWitness {
    pub level: usize,
    pub witness: String,
    pub reason: String,
    pub excluded_below: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchyReport {
    pub universe: Vec<String>,
    pub embeddings: Vec<Embedding>,
    pub witnesses: Vec<LevelWitness>,
}

impl HierarchyReport {
    pub fn holds(&self) -> bool {
        self.embeddings.iter().all(|e| e.injective && e.preserving)
            && self.witnesses.iter().all(|w| w.excluded_below)
    }
}

/// Evaluation fuel for the programs of the hierarchy check.
pub const HIERARCHY_FUEL: u64 = 10_000;

const BINDINGS: [Binding; 3] = [Binding::Unbound, Binding::Intersect, Binding::PostFilter];

/// Checks the strict chain of resources `ℜ₀ ⊂ ℜ₁ ⊂ ℜ₂ ⊂ ℜ₃ ⊂ ℜ₄` over a
/// universe of one-symbol expressions with at least two members.
///
/// Subject programs need an alphabet, so every member must be a single
/// symbol; the alphabet is the members themselves.
pub fn hierarchy_check(space: &ProblemSpace) -> Result<HierarchyReport, ResolverError> {
    let members = space.members().to_vec();
    let n = members.len();
    if n > MAX_FUNCTION_SPACE {
        return Err(ResolverError::TooLarge {
            size: n,
            limit: MAX_FUNCTION_SPACE,
        });
    }
    let alphabet = member_alphabet(&members)?;
    let masks = 0..space.len() as u32;
    let subsets: Vec<SolutionSet> = masks.clone().map(|m| space.subset(m)).collect();
    let same_everywhere = |a: &Resolver, b: &Resolver| -> Result<bool, ResolverError> {
        for sigma in space.sigmas() {
            if a.resolve_on(sigma)? != b.resolve_on(sigma)? {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let mut embeddings = Vec::new();

    // s ↦ δ_s: the adapter of the singleton
    let mut preserving = true;
    for s in &members {
        let single: SolutionSet = std::iter::once(s.clone()).collect();
        preserving &= same_everywhere(
            &Resolver::Mechanism(s.clone()),
            &Resolver::Adapter {
                set: single,
                bind: Binding::Unbound,
            },
        )?;
    }
    let images: HashSet<u32> = members
        .iter()
        .map(|s| space.mask_of(&std::iter::once(s.clone()).collect()))
        .collect::<Result<_, _>>()?;
    embeddings.push(Embedding {
        from: 0,
        to: 1,
        map: "s ↦ δ_s".into(),
        injective: images.len() == n,
        preserving,
        cases: n * space.len(),
    });

    // P_S ↦ the boolean-valued function [s ∈ S]; acts on solutions as i
    let mut tables = HashSet::new();
    let mut preserving = true;
    let identity = ElementFn::identity();
    for set in &subsets {
        let chi: Vec<char> = members
            .iter()
            .map(|e| {
                if set.contains(e) {
                    TRUE_SYMBOL
                } else {
                    FALSE_SYMBOL
                }
            })
            .collect();
        tables.insert(chi);
        for bind in BINDINGS {
            preserving &= same_everywhere(
                &Resolver::Adapter {
                    set: set.clone(),
                    bind,
                },
                &Resolver::Perceiver {
                    f: identity.clone(),
                    input: set.clone(),
                    bind,
                },
            )?;
        }
    }
    embeddings.push(Embedding {
        from: 1,
        to: 2,
        map: "P_S ↦ [· ∈ S]".into(),
        injective: tables.len() == subsets.len(),
        preserving,
        cases: subsets.len() * BINDINGS.len() * space.len(),
    });

    // f ↦ {f}
    let functions = space.all_functions()?;
    let mut tables = HashSet::new();
    let mut preserving = true;
    for f in &functions {
        tables.insert(f.table(&members)?);
        let single = FunctionSet(vec![f.clone()]);
        for set in &subsets {
            for sigma in space.sigmas() {
                let p = Resolver::Perceiver {
                    f: f.clone(),
                    input: set.clone(),
                    bind: Binding::Intersect,
                };
                let l = Resolver::Learner {
                    fns: single.clone(),
                    input: set.clone(),
                    bind: Binding::Intersect,
                };
                preserving &= p.resolve_on(sigma)? == l.resolve_on(sigma)?;
            }
        }
    }
    embeddings.push(Embedding {
        from: 2,
        to: 3,
        map: "f ↦ {f}".into(),
        injective: tables.len() == functions.len(),
        preserving,
        cases: functions.len() * subsets.len() * space.len(),
    });

    // F ↦ the functional that evaluates exactly the programs of F
    let library = program_pool(&alphabet, &members)?;
    let mut images = HashSet::new();
    let mut preserving = true;
    let sets = 1u32 << library.len();
    for pick in 0..sets {
        let fns = FunctionSet(
            library
                .iter()
                .enumerate()
                .filter(|(i, _)| pick & (1 << i) != 0)
                .map(|(_, f)| f.clone())
                .collect(),
        );
        let mut image: Vec<Vec<Expression>> = Vec::new();
        for f in fns.members() {
            image.push(
                members
                    .iter()
                    .map(|x| f.evaluate(x, HIERARCHY_FUEL))
                    .collect::<Result<_, _>>()?,
            );
        }
        image.sort();
        images.insert(image);
        for set in &subsets {
            preserving &= same_everywhere(
                &Resolver::Learner {
                    fns: fns.clone(),
                    input: set.clone(),
                    bind: Binding::PostFilter,
                },
                &Resolver::Subject {
                    library: fns.clone(),
                    input: set.clone(),
                    bind: Binding::PostFilter,
                    fuel: HIERARCHY_FUEL,
                },
            )?;
        }
    }
    embeddings.push(Embedding {
        from: 3,
        to: 4,
        map: "F ↦ u restricted to F".into(),
        injective: images.len() == sets as usize,
        preserving,
        cases: sets as usize * subsets.len() * space.len(),
    });

    let mut witnesses = Vec::new();

    // a two-member set is no single expression
    let pair: SolutionSet = members.iter().take(2).cloned().collect();
    let adapter = Resolver::Adapter {
        set: pair.clone(),
        bind: Binding::Unbound,
    };
    let out = adapter.resolve_on(space.sigma(0))?;
    let mut excluded = true;
    for s in &members {
        excluded &= Resolver::Mechanism(s.clone()).resolve_on(space.sigma(0))? != out;
    }
    witnesses.push(LevelWitness {
        level: 1,
        witness: adapter.describe(),
        reason: format!(
            "returns {}, while every mechanism returns a singleton",
            out.render()
        ),
        excluded_below: excluded,
    });

    // a function with a value outside {⊤, ⊥}
    let succ = ElementFn::cyclic_successor(&alphabet)?;
    let values = succ.table(&members)?;
    witnesses.push(LevelWitness {
        level: 2,
        witness: succ.name().to_string(),
        reason: format!(
            "takes values {}, so it is no condition",
            values
                .iter()
                .map(|v| v.render())
                .collect::<Vec<_>>()
                .join(",")
        ),
        excluded_below: values.iter().any(|v| {
            *v != Expression::from_symbols(vec![TRUE_SYMBOL])
                && *v != Expression::from_symbols(vec![FALSE_SYMBOL])
        }),
    });

    // a two-function set maps a singleton to a pair
    let first: SolutionSet = std::iter::once(members[0].clone()).collect();
    let learner = Resolver::Learner {
        fns: FunctionSet(vec![ElementFn::identity(), succ.clone()]),
        input: first.clone(),
        bind: Binding::Unbound,
    };
    let out = learner.resolve_on(space.sigma(0))?;
    let mut excluded = true;
    for f in &functions {
        excluded &= f.lift(&first)? != out;
    }
    witnesses.push(LevelWitness {
        level: 3,
        witness: learner.describe(),
        reason: format!(
            "returns {} from one input, which no single function of {} does",
            out.render(),
            functions.len()
        ),
        excluded_below: excluded,
    });

    // u yields non-constant functions, a characteristic functional only K_⊤ and K_⊥
    let identity_program = ElementFn::identity_on(&alphabet);
    let evaluated: Vec<Expression> = members
        .iter()
        .map(|x| identity_program.evaluate(x, HIERARCHY_FUEL))
        .collect::<Result<_, _>>()?;
    let wide = decider_alphabet(&alphabet)?;
    let mut constant = true;
    for truth in [TRUE_SYMBOL, FALSE_SYMBOL] {
        let k = ElementFn::constant_on(&wide, Expression::from_symbols(vec![truth]))?;
        let vals: HashSet<Expression> = members
            .iter()
            .map(|x| k.evaluate(x, HIERARCHY_FUEL))
            .collect::<Result<_, _>>()?;
        constant &= vals.len() == 1;
    }
    let distinct: HashSet<&Expression> = evaluated.iter().collect();
    witnesses.push(LevelWitness {
        level: 4,
        witness: "u(i)".into(),
        reason: format!(
            "u applied to the identity program takes {} distinct values; K_⊤ and K_⊥ take one",
            distinct.len()
        ),
        excluded_below: constant && distinct.len() > 1,
    });

    Ok(HierarchyReport {
        universe: members.iter().map(|e| e.render()).collect(),
        embeddings,
        witnesses,
    })
}

fn member_alphabet(members: &[Expression]) -> Result<Alphabet, ResolverError> {
    let mut symbols = Vec::new();
    for e in members {
        match e.symbols() {
            [c] => symbols.push(*c),
            _ => return Err(ResolverError::OutsideUniverse(e.clone())),
        }
    }
    Ok(Alphabet::new(symbols, crate::expr::DEFAULT_BLANK)?)
}

/// Identity, successor and the first constant, all as programs.
fn program_pool(
    alphabet: &Alphabet,
    members: &[Expression],
) -> Result<Vec<ElementFn>, ResolverError> {
    Ok(vec![
        ElementFn::identity_on(alphabet),
        ElementFn::cyclic_successor(alphabet)?,
        ElementFn::constant_on(alphabet, members[0].clone())?,
    ])
}

/// Inputs of the resolver chain
/// `ℜ₀[s] → ℜ₁[S∩Σ] → ℜ₂[i](S'∩Σ) → ℜ₃[R](S'⩀Σ) → ℜ₄[𝔲](R')(S'⩀Σ)`.
#[derive(Debug, Clone)]
pub struct ChainConfig {
    pub element: Expression,
    pub small: SolutionSet,
    pub large: SolutionSet,
    pub learner: FunctionSet,
    pub subject: FunctionSet,
    pub fuel: u64,
}

impl ChainConfig {
    pub fn resolvers(&self) -> [Resolver; 5] {
        [
            Resolver::Mechanism(self.element.clone()),
            Resolver::Adapter {
                set: self.small.clone(),
                bind: Binding::Intersect,
            },
            Resolver::Perceiver {
                f: ElementFn::identity(),
                input: self.large.clone(),
                bind: Binding::Intersect,
            },
            Resolver::Learner {
                fns: self.learner.clone(),
                input: self.large.clone(),
                bind: Binding::PostFilter,
            },
            Resolver::Subject {
                library: self.subject.clone(),
                input: self.large.clone(),
                bind: Binding::PostFilter,
                fuel: self.fuel,
            },
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainCondition {
    /// `s ∈ S`.
    Adapter,
    /// `S ⊆ S' ⊆ U`, with the perceiver implementing `i`.
    Perceiver,
    /// Some member of `R` is `i`.
    Learner,
    /// `R ⊆ R'` and `𝔲` evaluates every program of `R'` as its function.
    Subject,
}

impl fmt::Display for ChainCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainCondition::Adapter => "adapter condition (s ∈ S)",
            ChainCondition::Perceiver => "perceiver condition (S ⊆ S' ⊆ U, perceiving through i)",
            ChainCondition::Learner => "learner condition (i ∈ R)",
            ChainCondition::Subject => "subject condition (R ⊆ R', u evaluates every program)",
        })
    }
}

/// `Ξ` of one resolver of the chain against `Ξ` of the next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub from: String,
    pub to: String,
    pub from_size: usize,
    pub to_size: usize,
    pub holds: bool,
    pub strict: bool,
    /// A problem in the larger range only (strict links), or one that breaks
    /// the inclusion.
    pub witness: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub universe: Vec<String>,
    pub ranges: Vec<RangePowerReport>,
    pub links: Vec<ChainLink>,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.links.iter().all(|l| l.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("{condition} fails")]
    ConditionViolated {
        condition: ChainCondition,
        links: Vec<ChainLink>,
    },
    #[error(transparent)]
    Resolver(#[from] ResolverError),
}

pub fn evolution_chain(
    cfg: &ChainConfig,
    space: &ProblemSpace,
    strategy: Strategy,
) -> Result<ChainReport, ChainError> {
    let ranges = cfg
        .resolvers()
        .iter()
        .map(|r| range_power(r, space, strategy))
        .collect::<Result<Vec<_>, _>>()?;
    let links: Vec<ChainLink> = ranges
        .windows(2)
        .map(|w| {
            let (a, b) = (
                ProblemSpace::masks(w[0].range.clone()),
                ProblemSpace::masks(w[1].range.clone()),
            );
            let holds = a.is_subset(&b);
            let strict = holds && a.len() < b.len();
            let witness = if holds {
                b.difference(&a).next()
            } else {
                a.difference(&b).next()
            }
            .copied();
            ChainLink {
                from: w[0].resolver.clone(),
                to: w[1].resolver.clone(),
                from_size: a.len(),
                to_size: b.len(),
                holds,
                strict,
                witness,
            }
        })
        .collect();
    let violated = |condition| ChainError::ConditionViolated {
        condition,
        links: links.clone(),
    };
    let full = space.full();
    if !cfg.small.contains(&cfg.element) {
        return Err(violated(ChainCondition::Adapter));
    }
    if !cfg.small.is_subset(&cfg.large) || !cfg.large.is_subset(&full) {
        return Err(violated(ChainCondition::Perceiver));
    }
    if !cfg.learner.has_identity_on(space.members())? {
        return Err(violated(ChainCondition::Learner));
    }
    for f in cfg.learner.members() {
        let Some(g) = cfg.subject.get(f.name()) else {
            return Err(violated(ChainCondition::Subject));
        };
        if f.table(space.members())? != g.table(space.members())? {
            return Err(violated(ChainCondition::Subject));
        }
    }
    for f in cfg.subject.members() {
        for x in &cfg.large {
            match f.evaluate(x, cfg.fuel) {
                Ok(v) if v == f.apply(x)? => {}
                Ok(_)
                | Err(ResolverError::MissingProgram(_))
                | Err(ResolverError::OutOfFuel { .. }) => {
                    return Err(violated(ChainCondition::Subject))
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(ChainReport {
        universe: space.members().iter().map(|e| e.render()).collect(),
        ranges,
        links,
    })
}

/// `ℜ₂[𝒯_a](ℜ₂[i](S ∩ ℜ₂[a](Σ_π)))`: an elementwise analogy with a trial over
/// `pool`, built from perceivers only.
pub fn analogy_via_perceivers(
    a: &ElementFn,
    back: &ElementFn,
    pool: &SolutionSet,
    p: &Problem,
) -> Result<SolutionSet, ResolverError> {
    let image = a.lift(&p.solutions()?)?;
    let seen = ElementFn::identity().lift(&pool.intersection(&image))?;
    back.lift(&seen)
}

/// The analogy step whose pointwise maps are `a` and `back`. Both must be
/// total on every expression the step meets.
pub fn analogy_step(a: &ElementFn, back: &ElementFn) -> AnalogyStep {
    let (fa, fb) = (a.clone(), back.clone());
    AnalogyStep::elementwise(
        format!("{}/{}", a.name(), back.name()),
        move |e| fa.apply(e).unwrap_or_else(|_| e.clone()),
        move |e| fb.apply(e).unwrap_or_else(|_| e.clone()),
    )
}

/// Outcome of comparing the perceiver form with a set-level analogy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalogyCheck {
    pub perceivers: String,
    pub analogy: String,
    pub agrees: bool,
}

/// Runs the perceiver form and `step` with a trial over `pool` on `p`.
pub fn cross_check_analogy(
    step: &AnalogyStep,
    a: &ElementFn,
    back: &ElementFn,
    pool: &SolutionSet,
    p: &Problem,
    fuel: u64,
) -> Result<AnalogyCheck, ResolverError> {
    let mine = analogy_via_perceivers(a, back, pool, p)?;
    let theirs = resolution::apply_analogy(step, &Resolution::trial(pool.clone()), p, fuel)?;
    Ok(AnalogyCheck {
        perceivers: mine.render(),
        analogy: theirs.render(),
        agrees: mine == theirs,
    })
}

/// The resolution `π ↦ r(S ∩ Σ_π)` induced by each `r` in `fns`, labelled
/// with the function's name.
pub fn induced_family(
    fns: &FunctionSet,
    pool: &SolutionSet,
) -> Result<CandidateFamily, ResolverError> {
    let members = fns
        .members()
        .iter()
        .map(|f| {
            let g = f.clone();
            let step = AnalogyStep::new(
                f.name().to_string(),
                |p: &Problem| Ok(p.clone()),
                move |s: &SolutionSet| {
                    s.iter()
                        .map(|e| g.apply(e).unwrap_or_else(|_| e.clone()))
                        .collect()
                },
            );
            Ok(
                Resolution::analogy(vec![step], Resolution::trial(pool.clone()))?
                    .with_label(f.name().to_string()),
            )
        })
        .collect::<Result<Vec<_>, ResolverError>>()?;
    Ok(CandidateFamily::new(members)?)
}

/// `ℜ₃[R ∩ Σ_Ππ]`: the members of `fns` whose induced resolution resolves `p`.
pub fn meta_trial_via_learner(
    fns: &FunctionSet,
    p: &Problem,
    pool: &SolutionSet,
) -> Result<Vec<String>, ResolverError> {
    let sigma = p.solutions()?;
    let seen = pool.intersection(&sigma);
    let mut valid = Vec::new();
    for f in fns.members() {
        if f.lift(&seen)? == sigma {
            valid.push(f.name().to_string());
        }
    }
    Ok(valid)
}

/// Names valid according to the metaproblem of `p` over the induced family.
pub fn meta_trial_via_resolutions(
    fns: &FunctionSet,
    p: &Problem,
    pool: &SolutionSet,
    fuel: u64,
) -> Result<Vec<String>, ResolverError> {
    let m = Metaproblem::new(p.clone(), induced_family(fns, pool)?, fuel)?;
    Ok(resolution::meta_trial(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::DEFAULT_FUEL;

    fn int(n: i64) -> Expression {
        Expression::from_integer(n)
    }

    fn ints(v: &[i64]) -> SolutionSet {
        v.iter().map(|&n| int(n)).collect()
    }

    fn space(n: i64) -> ProblemSpace {
        ProblemSpace::new(Universe::int_range(0, n - 1)).unwrap()
    }

    fn digits(n: usize) -> Alphabet {
        Alphabet::of(&"0123456789"[..n]).unwrap()
    }

    fn fixture() -> ChainConfig {
        let a = digits(3);
        let i = ElementFn::identity_on(&a);
        let succ = ElementFn::cyclic_successor(&a).unwrap();
        ChainConfig {
            element: int(1),
            small: ints(&[1, 2]),
            large: ints(&[0, 1, 2]),
            learner: FunctionSet::new(vec![i.clone()]).unwrap(),
            subject: FunctionSet::new(vec![i, succ]).unwrap(),
            fuel: DEFAULT_FUEL,
        }
    }

    #[test]
    fn mechanism_returns_its_element() {
        let p = Problem::contradiction(Universe::int_range(0, 2));
        assert_eq!(
            resolve(&Resolver::Mechanism(int(1)), &p).unwrap(),
            ints(&[1])
        );
    }

    #[test]
    fn adapter_is_the_trial() {
        let p = Problem::from_native(Universe::int_range(0, 10), "2x=x²", |e| {
            let x = e.as_integer().unwrap();
            2 * x == x * x
        });
        let r = Resolver::Adapter {
            set: ints(&[1, 2, 3]),
            bind: Binding::Intersect,
        };
        assert_eq!(resolve(&r, &p).unwrap(), ints(&[2]));
        assert_eq!(
            resolve(&r, &p).unwrap(),
            resolution::trial(&p, &ints(&[1, 2, 3])).unwrap()
        );
    }

    #[test]
    fn subject_with_identity_program_returns_input() {
        let a = digits(3);
        let s = ints(&[0, 2]);
        let lib = FunctionSet::new(vec![ElementFn::identity_on(&a)]).unwrap();
        let subject = Resolver::Subject {
            library: lib.clone(),
            input: s.clone(),
            bind: Binding::Unbound,
            fuel: 100,
        };
        let learner = Resolver::Learner {
            fns: lib,
            input: s.clone(),
            bind: Binding::Unbound,
        };
        let sigma = SolutionSet::new();
        assert_eq!(subject.resolve_on(&sigma).unwrap(), s);
        assert_eq!(learner.resolve_on(&sigma).unwrap(), s);
    }

    #[test]
    fn elementable_lifts() {
        let a = digits(3);
        assert_eq!(
            elementable_lift(&ElementFn::identity())(&ints(&[0, 1])).unwrap(),
            ints(&[0, 1])
        );
        let succ = ElementFn::cyclic_successor(&a).unwrap();
        assert_eq!(succ.lift(&ints(&[0, 1])).unwrap(), ints(&[1, 2]));
        assert_eq!(succ.lift(&ints(&[2])).unwrap(), ints(&[0]));
        assert_eq!(
            ElementFn::constant(int(0)).lift(&ints(&[1, 2])).unwrap(),
            ints(&[0])
        );
    }

    #[test]
    fn partial_function_reports_domain_witness() {
        let f = ElementFn::from_table("half", [(int(0), int(0)), (int(2), int(1))]);
        let err = f.lift(&ints(&[0, 1])).unwrap_err();
        assert_eq!(
            err,
            ResolverError::Domain {
                function: "half".into(),
                witness: int(1)
            }
        );
    }

    #[test]
    fn programs_agree_with_native_maps() {
        let a = digits(3);
        let fns = [
            ElementFn::identity_on(&a),
            ElementFn::cyclic_successor(&a).unwrap(),
            ElementFn::constant_on(&a, int(0)).unwrap(),
        ];
        for f in &fns {
            for x in 0..3 {
                assert_eq!(
                    f.evaluate(&int(x), 1000).unwrap(),
                    f.apply(&int(x)).unwrap(),
                    "{} at {x}",
                    f.name()
                );
            }
        }
        assert!(matches!(
            ElementFn::identity().evaluate(&int(0), 10),
            Err(ResolverError::MissingProgram(_))
        ));
    }

    #[test]
    fn mechanism_range_and_power() {
        let sp = space(3);
        let rp = range_power(&Resolver::Mechanism(int(1)), &sp, Strategy::Sequential).unwrap();
        assert_eq!(rp.range, vec![0b010, 0b011, 0b110, 0b111]);
        assert_eq!(rp.power, vec![0b010]);
    }

    #[test]
    fn adapter_range_and_power() {
        let sp = space(3);
        let r = Resolver::Adapter {
            set: ints(&[0, 1]),
            bind: Binding::Intersect,
        };
        let rp = range_power(&r, &sp, Strategy::Sequential).unwrap();
        assert_eq!(rp.range.len(), 6);
        assert_eq!(rp.power, vec![0b000, 0b001, 0b010, 0b011]);
        let empty = Resolver::Adapter {
            set: SolutionSet::new(),
            bind: Binding::Intersect,
        };
        assert!(range(&empty, &sp, Strategy::Sequential).unwrap().is_empty());
    }

    #[test]
    fn learner_power_contains_perceiver_power() {
        let sp = space(3);
        let a = digits(3);
        let succ = ElementFn::cyclic_successor(&a).unwrap();
        let input = sp.full();
        let perceiver = Resolver::Perceiver {
            f: succ.clone(),
            input: input.clone(),
            bind: Binding::Intersect,
        };
        let learner = Resolver::Learner {
            fns: FunctionSet::new(vec![ElementFn::identity(), succ]).unwrap(),
            input,
            bind: Binding::PostFilter,
        };
        let small = power(&perceiver, &sp, Strategy::Sequential).unwrap();
        let big = power(&learner, &sp, Strategy::Sequential).unwrap();
        assert!(small.iter().all(|m| big.contains(m)));
    }

    #[test]
    fn strategies_agree() {
        let sp = space(5);
        let r = Resolver::Learner {
            fns: FunctionSet::new(vec![ElementFn::identity(), ElementFn::constant(int(0))])
                .unwrap(),
            input: ints(&[1, 3]),
            bind: Binding::PostFilter,
        };
        assert_eq!(
            range_power(&r, &sp, Strategy::Sequential).unwrap(),
            range_power(&r, &sp, Strategy::Parallel).unwrap()
        );
    }

    #[test]
    fn space_guard() {
        assert!(matches!(
            ProblemSpace::new(Universe::int_range(0, 16)),
            Err(ResolverError::TooLarge {
                size: 17,
                limit: MAX_SPACE_SIZE
            })
        ));
        assert_eq!(space(4).len(), 16);
        assert_eq!(space(3).all_functions().unwrap().len(), 27);
    }

    #[test]
    fn hierarchy_holds_on_three_members() {
        let report = hierarchy_check(&space(3)).unwrap();
        assert_eq!(report.embeddings.len(), 4);
        assert_eq!(report.witnesses.len(), 4);
        assert!(report.holds(), "{report:#?}");
    }

    #[test]
    fn chain_on_fixture() {
        let report = evolution_chain(&fixture(), &space(3), Strategy::Sequential).unwrap();
        let sizes: Vec<usize> = report.ranges.iter().map(|r| r.range.len()).collect();
        assert_eq!(sizes, vec![4, 6, 7, 7, 7]);
        let strict: Vec<bool> = report.links.iter().map(|l| l.strict).collect();
        assert_eq!(strict, vec![true, true, false, false]);
        assert!(report.holds());
    }

    #[test]
    fn chain_first_link_equal_for_singleton_adapter() {
        let mut cfg = fixture();
        cfg.small = ints(&[1]);
        let report = evolution_chain(&cfg, &space(3), Strategy::Sequential).unwrap();
        assert!(report.links[0].holds && !report.links[0].strict);
    }

    #[test]
    fn chain_without_identity_fails_at_learner() {
        let mut cfg = fixture();
        cfg.learner =
            FunctionSet::new(vec![ElementFn::constant_on(&digits(3), int(0)).unwrap()]).unwrap();
        match evolution_chain(&cfg, &space(3), Strategy::Sequential) {
            Err(ChainError::ConditionViolated { condition, links }) => {
                assert_eq!(condition, ChainCondition::Learner);
                assert!(!links[2].holds);
                assert!(links[2].witness.is_some());
            }
            other => panic!("expected a learner violation, got {other:?}"),
        }
    }

    #[test]
    fn chain_rejects_element_outside_adapter_set() {
        let mut cfg = fixture();
        cfg.element = int(0);
        assert!(matches!(
            evolution_chain(&cfg, &space(3), Strategy::Sequential),
            Err(ChainError::ConditionViolated {
                condition: ChainCondition::Adapter,
                ..
            })
        ));
    }

    fn shift(k: i64) -> ElementFn {
        ElementFn::new(format!("{k:+}"), move |e| {
            e.as_integer().map(|n| int(n + k))
        })
    }

    #[test]
    fn analogy_by_perceivers() {
        let u = Universe::int_range(0, 5);
        let p = Problem::from_native(u.clone(), "x=3", |e| e.as_integer() == Some(3));
        let pool = ints(&[2, 3, 4, 5, 6, 7]);
        let (a, back) = (shift(2), shift(-2));
        assert_eq!(
            analogy_via_perceivers(&a, &back, &pool, &p).unwrap(),
            ints(&[3])
        );
        let check =
            cross_check_analogy(&analogy_step(&a, &back), &a, &back, &pool, &p, DEFAULT_FUEL)
                .unwrap();
        assert!(check.agrees);
        // a wrong translator is caught
        let bad = shift(2);
        let check =
            cross_check_analogy(&analogy_step(&a, &back), &a, &bad, &pool, &p, DEFAULT_FUEL)
                .unwrap();
        assert!(!check.agrees);
    }

    #[test]
    fn identity_analogy_is_the_trial() {
        let p = Problem::from_native(Universe::int_range(0, 5), "odd", |e| {
            e.as_integer().unwrap() % 2 == 1
        });
        let pool = ints(&[0, 1, 2, 3]);
        let i = ElementFn::identity();
        assert_eq!(
            analogy_via_perceivers(&i, &i, &pool, &p).unwrap(),
            resolution::trial(&p, &pool).unwrap()
        );
    }

    #[test]
    fn meta_trial_by_learner() {
        let u = Universe::int_range(0, 5);
        let p = Problem::from_native(u, "2x=x²", |e| {
            let x = e.as_integer().unwrap();
            2 * x == x * x
        });
        let pool: SolutionSet = (0..=5).map(int).collect();
        let fns =
            FunctionSet::new(vec![ElementFn::identity(), ElementFn::constant(int(0))]).unwrap();
        let direct = meta_trial_via_learner(&fns, &p, &pool).unwrap();
        assert_eq!(direct, vec!["i".to_string()]);
        assert_eq!(
            meta_trial_via_resolutions(&fns, &p, &pool, DEFAULT_FUEL).unwrap(),
            direct
        );
        let none = FunctionSet::default();
        assert!(meta_trial_via_learner(&none, &p, &pool).unwrap().is_empty());
    }
}
