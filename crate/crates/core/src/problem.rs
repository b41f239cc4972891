//! Problems `x ? P(x)`: a universe of candidates and a total condition on it.
//!
//! Problems are compared extensionally, by their solution sets over the shared
//! universe. The condition text only matters for debugging ([`Problem::describe`]).

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::expr::{Expression, Universe};
use crate::machine::{
    universal_apply, MachineError, Program, RunOutcome, FALSE_SYMBOL, TRUE_SYMBOL,
};
use crate::sweep::{self, Strategy};

/// How many universe members a machine-backed condition is run on when the
/// problem is built.
pub const TOTALITY_SPOT_CHECKS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("universes differ: {left} vs {right}")]
    UniverseMismatch { left: String, right: String },
    #[error("{expr} is not in the universe {universe}")]
    OutsideUniverse { expr: Expression, universe: String },
    #[error("condition is not total: no answer for {witness} within {steps} steps")]
    Totality { witness: Expression, steps: u64 },
    #[error("condition answered {answer} for {witness}, which is not a truth value")]
    NonBoolean {
        witness: Expression,
        answer: Expression,
    },
    #[error("universe {0} is unbounded; give it a cap or use a stream")]
    Unbounded(String),
    #[error("problem {0} has no solution")]
    NoSolution(String),
    #[error("table condition has no entry for {0}")]
    MissingEntry(Expression),
    #[error(transparent)]
    Machine(#[from] MachineError),
}

type Predicate = Arc<dyn Fn(&Expression) -> bool + Send + Sync>;

/// The predicate `P` of a problem.
#[derive(Clone)]
pub enum Condition {
    Const(bool),
    Table(Arc<HashMap<Expression, bool>>),
    /// Host predicate with a name used by [`Condition::describe`].
    Native {
        name: String,
        predicate: Predicate,
    },
    /// A program run through the universal evaluator; it must leave `⊤` or `⊥`.
    Machine {
        program: Program,
        fuel: u64,
    },
    Not(Arc<Condition>),
    And(Arc<Condition>, Arc<Condition>),
    Or(Arc<Condition>, Arc<Condition>),
}

impl Condition {
    pub fn native(
        name: impl Into<String>,
        predicate: impl Fn(&Expression) -> bool + Send + Sync + 'static,
    ) -> Self {
        Condition::Native {
            name: name.into(),
            predicate: Arc::new(predicate),
        }
    }

    pub fn machine(program: Program, fuel: u64) -> Self {
        Condition::Machine { program, fuel }
    }

    pub fn eval(&self, x: &Expression) -> Result<bool, ProblemError> {
        match self {
            Condition::Const(b) => Ok(*b),
            Condition::Table(t) => t
                .get(x)
                .copied()
                .ok_or_else(|| ProblemError::MissingEntry(x.clone())),
            Condition::Native { predicate, .. } => Ok(predicate(x)),
            Condition::Machine { program, fuel } => {
                match universal_apply(program.expression(), x, *fuel) {
                    RunOutcome::Halted { result, .. } => match result.symbols() {
                        [c] if *c == TRUE_SYMBOL => Ok(true),
                        [c] if *c == FALSE_SYMBOL => Ok(false),
                        _ => Err(ProblemError::NonBoolean {
                            witness: x.clone(),
                            answer: result,
                        }),
                    },
                    RunOutcome::OutOfFuel { steps } => Err(ProblemError::Totality {
                        witness: x.clone(),
                        steps,
                    }),
                }
            }
            Condition::Not(c) => Ok(!c.eval(x)?),
            Condition::And(a, b) => Ok(a.eval(x)? && b.eval(x)?),
            Condition::Or(a, b) => Ok(a.eval(x)? || b.eval(x)?),
        }
    }

    /// Intensional rendering, for debugging only.
    pub fn describe(&self) -> String {
        match self {
            Condition::Const(true) => "⊤".into(),
            Condition::Const(false) => "⊥".into(),
            Condition::Table(t) => {
                let mut yes: Vec<String> = t
                    .iter()
                    .filter(|(_, &v)| v)
                    .map(|(k, _)| k.render())
                    .collect();
                yes.sort();
                format!("x ∈ {{{}}}", yes.join(","))
            }
            Condition::Native { name, .. } => name.clone(),
            Condition::Machine { program, fuel } => format!("machine[{program}]@{fuel}"),
            Condition::Not(c) => format!("¬({})", c.describe()),
            Condition::And(a, b) => format!("({} ∧ {})", a.describe(), b.describe()),
            Condition::Or(a, b) => format!("({} ∨ {})", a.describe(), b.describe()),
        }
    }
}

impl fmt::Debug for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Condition({})", self.describe())
    }
}

/// A finite set of expressions kept in a deterministic order.
///
/// Equality ignores order.
#[derive(Debug, Clone, Default, Serialize)]
#[serde(transparent)]
pub struct SolutionSet {
    members: Vec<Expression>,
}

impl SolutionSet {
    pub fn new() -> Self {
        SolutionSet::default()
    }

    pub fn members(&self) -> &[Expression] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: &Expression) -> bool {
        self.members.contains(e)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Expression> {
        self.members.iter()
    }

    pub fn to_set(&self) -> BTreeSet<Expression> {
        self.members.iter().cloned().collect()
    }

    pub fn union(&self, other: &SolutionSet) -> SolutionSet {
        self.members
            .iter()
            .chain(other.members.iter())
            .cloned()
            .collect()
    }

    pub fn intersection(&self, other: &SolutionSet) -> SolutionSet {
        let keep: HashSet<&Expression> = other.members.iter().collect();
        self.members
            .iter()
            .filter(|e| keep.contains(e))
            .cloned()
            .collect()
    }

    pub fn difference(&self, other: &SolutionSet) -> SolutionSet {
        let drop: HashSet<&Expression> = other.members.iter().collect();
        self.members
            .iter()
            .filter(|e| !drop.contains(e))
            .cloned()
            .collect()
    }

    pub fn is_subset(&self, other: &SolutionSet) -> bool {
        let of: HashSet<&Expression> = other.members.iter().collect();
        self.members.iter().all(|e| of.contains(e))
    }

    /// Report form `{a,b}` in stored order.
    pub fn render(&self) -> String {
        format!(
            "{{{}}}",
            self.members
                .iter()
                .map(|e| e.render())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

impl PartialEq for SolutionSet {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.is_subset(other)
    }
}

impl Eq for SolutionSet {}

impl FromIterator<Expression> for SolutionSet {
    fn from_iter<I: IntoIterator<Item = Expression>>(iter: I) -> Self {
        let mut seen = HashSet::new();
        let members = iter
            .into_iter()
            .filter(|e| seen.insert(e.clone()))
            .collect();
        SolutionSet { members }
    }
}

impl<'a> IntoIterator for &'a SolutionSet {
    type Item = &'a Expression;
    type IntoIter = std::slice::Iter<'a, Expression>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl fmt::Display for SolutionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `x ? P(x)` over a universe.
#[derive(Clone)]
pub struct Problem {
    universe: Universe,
    condition: Condition,
    label: String,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("label", &self.label)
            .field("universe", &self.universe.describe())
            .field("condition", &self.condition.describe())
            .finish()
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl Problem {
    /// Builds a problem, checking table coverage and spot-checking machine
    /// conditions on the first members of the universe.
    pub fn new(
        universe: Universe,
        condition: Condition,
        label: impl Into<String>,
    ) -> Result<Self, ProblemError> {
        let p = Problem {
            universe,
            condition,
            label: label.into(),
        };
        p.check_totality()?;
        Ok(p)
    }

    fn check_totality(&self) -> Result<(), ProblemError> {
        fn has_table(c: &Condition) -> bool {
            match c {
                Condition::Table(_) => true,
                Condition::Not(a) => has_table(a),
                Condition::And(a, b) | Condition::Or(a, b) => has_table(a) || has_table(b),
                _ => false,
            }
        }
        fn has_machine(c: &Condition) -> bool {
            match c {
                Condition::Machine { .. } => true,
                Condition::Not(a) => has_machine(a),
                Condition::And(a, b) | Condition::Or(a, b) => has_machine(a) || has_machine(b),
                _ => false,
            }
        }
        if let Condition::Table(t) = &self.condition {
            let Some(all) = self.universe.all_members() else {
                return Err(ProblemError::Unbounded(self.universe.describe()));
            };
            if let Some(missing) = all.iter().find(|m| !t.contains_key(m)) {
                return Err(ProblemError::MissingEntry(missing.clone()));
            }
            if let Some(extra) = t.keys().find(|k| !self.universe.contains(k)) {
                return Err(self.outside(extra));
            }
        } else if has_table(&self.condition) || has_machine(&self.condition) {
            for m in self.universe.members(TOTALITY_SPOT_CHECKS) {
                self.condition.eval(&m)?;
            }
        }
        Ok(())
    }

    fn outside(&self, e: &Expression) -> ProblemError {
        ProblemError::OutsideUniverse {
            expr: e.clone(),
            universe: self.universe.describe(),
        }
    }

    pub fn from_native(
        universe: Universe,
        label: impl Into<String>,
        predicate: impl Fn(&Expression) -> bool + Send + Sync + 'static,
    ) -> Self {
        let label = label.into();
        Problem {
            universe,
            condition: Condition::native(label.clone(), predicate),
            label,
        }
    }

    /// `τ`: every candidate is a solution.
    pub fn tautology(universe: Universe) -> Self {
        Problem {
            universe,
            condition: Condition::Const(true),
            label: "τ".into(),
        }
    }

    /// `τ̄`: nothing is a solution.
    pub fn contradiction(universe: Universe) -> Self {
        Problem {
            universe,
            condition: Condition::Const(false),
            label: "τ̄".into(),
        }
    }

    /// `x ? [x ∈ S]` with `Σ = S`.
    pub fn of_set<'a>(
        universe: Universe,
        set: impl IntoIterator<Item = &'a Expression>,
    ) -> Result<Self, ProblemError> {
        let chosen: HashSet<Expression> = set.into_iter().cloned().collect();
        if let Some(e) = chosen.iter().find(|e| !universe.contains(e)) {
            return Err(ProblemError::OutsideUniverse {
                expr: e.clone(),
                universe: universe.describe(),
            });
        }
        let mut names: Vec<String> = chosen.iter().map(|e| e.render()).collect();
        names.sort();
        let label = format!("x ∈ {{{}}}", names.join(","));
        let condition = match universe.all_members() {
            Some(all) => Condition::Table(Arc::new(
                all.into_iter()
                    .map(|m| {
                        let v = chosen.contains(&m);
                        (m, v)
                    })
                    .collect(),
            )),
            None => Condition::native(label.clone(), move |x| chosen.contains(x)),
        };
        Ok(Problem {
            universe,
            condition,
            label,
        })
    }

    /// `x ? [x = s]`, the problem whose only solution is `s`.
    pub fn delta(universe: Universe, s: &Expression) -> Result<Self, ProblemError> {
        if !universe.contains(s) {
            return Err(ProblemError::OutsideUniverse {
                expr: s.clone(),
                universe: universe.describe(),
            });
        }
        let label = format!("x = {}", s.render());
        let target = s.clone();
        Ok(Problem {
            universe,
            condition: Condition::native(label.clone(), move |x| *x == target),
            label,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn condition(&self) -> &Condition {
        &self.condition
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Intensional description: label, universe and condition text.
    pub fn describe(&self) -> String {
        format!(
            "{} : x ∈ {} ? {}",
            self.label,
            self.universe.describe(),
            self.condition.describe()
        )
    }

    /// Same universe and same condition text. A debugging aid; problem
    /// identity is [`Problem::equal`].
    pub fn same_text(&self, other: &Problem) -> bool {
        self.universe.same_as(&other.universe)
            && self.condition.describe() == other.condition.describe()
    }

    /// `P(x)` for a member of the universe.
    pub fn holds(&self, x: &Expression) -> Result<bool, ProblemError> {
        if !self.universe.contains(x) {
            return Err(self.outside(x));
        }
        self.condition.eval(x)
    }

    fn same_universe(&self, other: &Problem) -> Result<(), ProblemError> {
        if self.universe.same_as(&other.universe) {
            Ok(())
        } else {
            Err(ProblemError::UniverseMismatch {
                left: self.universe.describe(),
                right: other.universe.describe(),
            })
        }
    }

    pub fn conjoin(&self, other: &Problem) -> Result<Problem, ProblemError> {
        self.same_universe(other)?;
        Ok(Problem {
            universe: self.universe.clone(),
            condition: Condition::And(
                Arc::new(self.condition.clone()),
                Arc::new(other.condition.clone()),
            ),
            label: format!("({} ∧ {})", self.label, other.label),
        })
    }

    pub fn disjoin(&self, other: &Problem) -> Result<Problem, ProblemError> {
        self.same_universe(other)?;
        Ok(Problem {
            universe: self.universe.clone(),
            condition: Condition::Or(
                Arc::new(self.condition.clone()),
                Arc::new(other.condition.clone()),
            ),
            label: format!("({} ∨ {})", self.label, other.label),
        })
    }

    /// The complementary problem `π̄`.
    pub fn negate(&self) -> Problem {
        Problem {
            universe: self.universe.clone(),
            condition: Condition::Not(Arc::new(self.condition.clone())),
            label: format!("¬{}", self.label),
        }
    }

    /// Members of a bounded universe, or the unbounded error.
    pub fn candidates(&self) -> Result<Vec<Expression>, ProblemError> {
        self.universe
            .all_members()
            .ok_or_else(|| ProblemError::Unbounded(self.universe.describe()))
    }

    /// `Σ` in universe order.
    pub fn solutions(&self) -> Result<SolutionSet, ProblemError> {
        self.solutions_with(Strategy::default())
    }

    pub fn solutions_with(&self, strategy: Strategy) -> Result<SolutionSet, ProblemError> {
        let members = self.candidates()?;
        let verdicts = sweep::map(strategy, &members, |m| self.condition.eval(m));
        let mut out = Vec::new();
        for (m, v) in members.into_iter().zip(verdicts) {
            if v? {
                out.push(m);
            }
        }
        Ok(SolutionSet { members: out })
    }

    /// Lazily tests candidates in universe order, examining at most `budget`.
    pub fn stream(
        &self,
        budget: usize,
    ) -> impl Iterator<Item = Result<Expression, ProblemError>> + '_ {
        self.universe
            .iter()
            .take(budget)
            .filter_map(move |m| match self.condition.eval(&m) {
                Ok(true) => Some(Ok(m)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            })
    }

    /// Extensional equality: same universe and same solutions.
    pub fn equal(&self, other: &Problem) -> Result<bool, ProblemError> {
        self.same_universe(other)?;
        Ok(self.solutions()? == other.solutions()?)
    }

    pub fn is_solvable(&self) -> Result<bool, ProblemError> {
        Ok(!self.solutions()?.is_empty())
    }

    /// First solution in universe order.
    pub fn choose(&self) -> Result<Expression, ProblemError> {
        for m in self.universe.iter() {
            if self.condition.eval(&m)? {
                return Ok(m);
            }
        }
        Err(ProblemError::NoSolution(self.label.clone()))
    }

    /// `(P̌(⊤), P̌(⊥))`: the solutions of the problem and of its complement.
    pub fn invert_condition(&self) -> Result<(SolutionSet, SolutionSet), ProblemError> {
        let mut yes = Vec::new();
        let mut no = Vec::new();
        for m in self.candidates()? {
            if self.condition.eval(&m)? {
                yes.push(m);
            } else {
                no.push(m);
            }
        }
        Ok((SolutionSet { members: yes }, SolutionSet { members: no }))
    }
}

/// Every subset of a finite universe, as problems, indexed by bitmask over
/// universe order (bit `i` set means member `i` is a solution).
pub fn all_problems(universe: &Universe) -> Result<Vec<Problem>, ProblemError> {
    let members = universe
        .all_members()
        .ok_or_else(|| ProblemError::Unbounded(universe.describe()))?;
    let n = members.len();
    assert!(n < 20, "2^{n} problems is too many to list");
    (0u32..1 << n)
        .map(|mask| {
            let set: Vec<&Expression> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| &members[i])
                .collect();
            Problem::of_set(universe.clone(), set)
        })
        .collect()
}
