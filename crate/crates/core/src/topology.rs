//! Fuel-relative placement of problems among the five places
//! `S̄ ⊂ F ⊂ E ⊂ R ⊂ P`: not solvable, finite and solvable, expressible with
//! infinitely many solutions, resolvable but inexpressible, and unresolvable.
//!
//! Expressibility and resolvability are undecidable in general, so every flag
//! is three-valued. A flag only becomes definite on checked evidence, and the
//! report records the fuel at which it was settled.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{Alphabet, Expression, Universe};
use crate::machine::{
    constant_machine, delta_machine, dovetail, halting_condition, identity_machine,
    never_halting_machine, pair_expression, split_pair, HaltingAnswer, TMachine, FALSE_SYMBOL,
    PAIR_SEPARATOR, TRUE_SYMBOL,
};
use crate::problem::{Problem, ProblemError};
use crate::sweep::{self, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Yes,
    No,
    Unknown,
}

impl Flag {
    pub fn from_bool(b: bool) -> Flag {
        if b {
            Flag::Yes
        } else {
            Flag::No
        }
    }

    pub fn is_definite(self) -> bool {
        self != Flag::Unknown
    }

    fn yes(self) -> bool {
        self == Flag::Yes
    }

    fn no(self) -> bool {
        self == Flag::No
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::Yes => "yes",
            Flag::No => "no",
            Flag::Unknown => "unknown-at-fuel",
        })
    }
}

/// Flag values as read from outside; not guaranteed to be consistent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RawFlags {
    pub solvable: Flag,
    pub finite: Flag,
    pub expressible: Flag,
    pub resolvable: Flag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FlagViolation {
    #[error("expressible but not resolvable")]
    ExpressibleUnresolvable,
    #[error("not solvable but not expressible")]
    UnsolvableInexpressible,
    #[error("finite but not expressible")]
    FiniteInexpressible,
    #[error("not solvable but not finite")]
    UnsolvableInfinite,
    #[error("not solvable but not resolvable")]
    UnsolvableUnresolvable,
    #[error("finite but not resolvable")]
    FiniteUnresolvable,
}

impl RawFlags {
    /// The first impossible combination among the definite flags, if any.
    ///
    /// The places are nested, `S̄ ⊂ F ⊂ E ⊂ R`, so every implication between
    /// two flags is checked, including those that skip an unknown one.
    pub fn violation(&self) -> Option<FlagViolation> {
        if self.expressible.yes() && self.resolvable.no() {
            Some(FlagViolation::ExpressibleUnresolvable)
        } else if self.solvable.no() && self.expressible.no() {
            Some(FlagViolation::UnsolvableInexpressible)
        } else if self.finite.yes() && self.expressible.no() {
            Some(FlagViolation::FiniteInexpressible)
        } else if self.solvable.no() && self.finite.no() {
            Some(FlagViolation::UnsolvableInfinite)
        } else if self.solvable.no() && self.resolvable.no() {
            Some(FlagViolation::UnsolvableUnresolvable)
        } else if self.finite.yes() && self.resolvable.no() {
            Some(FlagViolation::FiniteUnresolvable)
        } else {
            None
        }
    }
}

/// Flags that respect `S̄ ⊂ F ⊂ E ⊂ R`. Only constructible through
/// [`ClassificationFlags::new`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "RawFlags")]
pub struct ClassificationFlags(RawFlags);

impl From<ClassificationFlags> for RawFlags {
    fn from(f: ClassificationFlags) -> RawFlags {
        f.0
    }
}

impl TryFrom<RawFlags> for ClassificationFlags {
    type Error = FlagViolation;

    fn try_from(raw: RawFlags) -> Result<Self, FlagViolation> {
        match raw.violation() {
            Some(v) => Err(v),
            None => Ok(ClassificationFlags(raw)),
        }
    }
}

impl ClassificationFlags {
    pub fn new(
        solvable: Flag,
        finite: Flag,
        expressible: Flag,
        resolvable: Flag,
    ) -> Result<Self, FlagViolation> {
        RawFlags {
            solvable,
            finite,
            expressible,
            resolvable,
        }
        .try_into()
    }

    pub fn raw(&self) -> RawFlags {
        self.0
    }

    pub fn solvable(&self) -> Flag {
        self.0.solvable
    }

    pub fn finite(&self) -> Flag {
        self.0.finite
    }

    pub fn expressible(&self) -> Flag {
        self.0.expressible
    }

    pub fn resolvable(&self) -> Flag {
        self.0.resolvable
    }

    pub fn place(&self) -> Place {
        place_of(&self.0)
    }

    /// The place obtained by reading every unknown flag as "no".
    pub fn tentative_place(&self) -> Place {
        let pessimistic = |f: Flag| if f == Flag::Unknown { Flag::No } else { f };
        let r = &self.0;
        place_of(&RawFlags {
            solvable: r.solvable,
            finite: pessimistic(r.finite),
            expressible: pessimistic(r.expressible),
            resolvable: pessimistic(r.resolvable),
        })
    }
}

fn place_of(r: &RawFlags) -> Place {
    if r.solvable.no() {
        Place::NotSolvable
    } else if r.resolvable.no() {
        Place::Unresolvable
    } else if r.solvable.yes() && r.finite.yes() {
        Place::FiniteSolvable
    } else if r.solvable.yes() && r.finite.no() && r.expressible.yes() {
        Place::ExpressibleInfinite
    } else if r.expressible.no() && r.resolvable.yes() {
        Place::ResolvableInexpressible
    } else {
        Place::Undetermined
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Place {
    /// `S̄`
    NotSolvable,
    /// `F ∩ S`
    FiniteSolvable,
    /// `E ∩ F̄`
    ExpressibleInfinite,
    /// `R ∩ Ē`
    ResolvableInexpressible,
    /// `R̄`
    Unresolvable,
    Undetermined,
}

impl Place {
    pub fn symbol(self) -> &'static str {
        match self {
            Place::NotSolvable => "S̄",
            Place::FiniteSolvable => "F∩S",
            Place::ExpressibleInfinite => "E∩F̄",
            Place::ResolvableInexpressible => "R∩Ē",
            Place::Unresolvable => "R̄",
            Place::Undetermined => "?",
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Output of an enumerator at a given budget: what it emitted and which
/// candidates it claims to have settled.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EnumeratorRun {
    pub emitted: Vec<Expression>,
    pub covered: Vec<Expression>,
}

type EnumeratorFn = Arc<dyn Fn(u64) -> EnumeratorRun + Send + Sync>;

#[derive(Clone)]
pub struct Enumerator {
    pub name: String,
    run: EnumeratorFn,
}

impl fmt::Debug for Enumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Enumerator({})", self.name)
    }
}

impl Enumerator {
    pub fn new(
        name: impl Into<String>,
        run: impl Fn(u64) -> EnumeratorRun + Send + Sync + 'static,
    ) -> Self {
        Enumerator {
            name: name.into(),
            run: Arc::new(run),
        }
    }

    pub fn run(&self, budget: u64) -> EnumeratorRun {
        (self.run)(budget)
    }
}

/// Candidate witnesses. All of them are checked before they count.
#[derive(Debug, Clone, Default)]
pub struct Evidence {
    pub decider: Option<(String, TMachine)>,
    pub enumerator: Option<Enumerator>,
    pub known_solution: Option<Expression>,
    /// Accept "not resolvable" without proof. Only for illustrating the last
    /// place; the report carries a caveat.
    pub asserted_unresolvable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagStamp {
    pub flag: &'static str,
    pub value: Flag,
    pub fuel: u64,
    pub basis: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub problem: String,
    pub universe: String,
    pub fuel: u64,
    pub flags: ClassificationFlags,
    pub place: Place,
    pub tentative_place: Place,
    pub stamps: Vec<FlagStamp>,
    pub witnesses: Vec<String>,
    pub caveats: Vec<String>,
}

impl ClassificationReport {
    pub fn has_unknown(&self) -> bool {
        let r = self.flags.raw();
        [r.solvable, r.finite, r.expressible, r.resolvable].contains(&Flag::Unknown)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("internal flag inconsistency: {0}")]
    Inconsistent(FlagViolation),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum RejectReason {
    OutOfFuel { steps: u64 },
    InputOutsideAlphabet,
    NotATruthValue { output: Expression },
    Wrong { expected: bool, answered: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DecisionVerdict {
    Accept {
        tested: usize,
    },
    Reject {
        witness: Expression,
        reason: RejectReason,
    },
}

impl DecisionVerdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, DecisionVerdict::Accept { .. })
    }
}

/// Whether `m` halts on every input with `⊤`/`⊥` matching the problem's
/// condition.
pub fn is_decision_solution(
    m: &TMachine,
    p: &Problem,
    inputs: &[Expression],
    fuel: u64,
) -> Result<DecisionVerdict, ProblemError> {
    for x in inputs {
        let expected = p.holds(x)?;
        let reject = |reason| {
            Ok(DecisionVerdict::Reject {
                witness: x.clone(),
                reason,
            })
        };
        let outcome = match m.run(x, fuel) {
            Ok(o) => o,
            Err(_) => return reject(RejectReason::InputOutsideAlphabet),
        };
        let Some(out) = outcome.result() else {
            return reject(RejectReason::OutOfFuel {
                steps: outcome.steps(),
            });
        };
        let answered = match out.symbols() {
            [c] if *c == TRUE_SYMBOL => true,
            [c] if *c == FALSE_SYMBOL => false,
            _ => {
                return reject(RejectReason::NotATruthValue {
                    output: out.clone(),
                })
            }
        };
        if answered != expected {
            return reject(RejectReason::Wrong { expected, answered });
        }
    }
    Ok(DecisionVerdict::Accept {
        tested: inputs.len(),
    })
}

struct Reading {
    flag: &'static str,
    value: Flag,
    basis: String,
}

impl Reading {
    fn new(flag: &'static str, value: Flag, basis: impl Into<String>) -> Self {
        Reading {
            flag,
            value,
            basis: basis.into(),
        }
    }
}

/// Places `p` using the checked parts of `ev`, spending at most `fuel` on
/// each search or run.
pub fn classify(
    p: &Problem,
    ev: &Evidence,
    fuel: u64,
) -> Result<ClassificationReport, TopologyError> {
    let mut caveats = Vec::new();
    let mut witnesses = Vec::new();
    let bounded = p.universe().is_finite() || p.universe().len().is_some();
    let budget = usize::try_from(fuel).unwrap_or(usize::MAX);

    // solvable
    let solvable = if bounded {
        let n = p.solutions()?.len();
        Reading::new(
            "solvable",
            Flag::from_bool(n > 0),
            format!("brute force: {n} solutions"),
        )
    } else if let Some(s) = ev
        .known_solution
        .as_ref()
        .filter(|s| p.holds(s).unwrap_or(false))
    {
        witnesses.push(format!("solution {}", s.render()));
        Reading::new(
            "solvable",
            Flag::Yes,
            format!("checked solution {}", s.render()),
        )
    } else if let Some(found) = p.stream(budget).next() {
        let s = found?;
        witnesses.push(format!("solution {}", s.render()));
        Reading::new(
            "solvable",
            Flag::Yes,
            format!("search found {}", s.render()),
        )
    } else {
        if ev.known_solution.is_some() {
            caveats.push("claimed solution does not satisfy the condition".into());
        }
        Reading::new(
            "solvable",
            Flag::Unknown,
            format!("no solution among the first {fuel} candidates"),
        )
    };

    // finite
    let finite = if bounded {
        Reading::new("finite", Flag::Yes, "bounded universe")
    } else if solvable.value.no() {
        Reading::new("finite", Flag::Yes, "no solutions")
    } else {
        Reading::new(
            "finite",
            Flag::Unknown,
            "unbounded universe, no bound on the solutions",
        )
    };

    // expressible
    let mut decider_ok = false;
    if let Some((name, m)) = &ev.decider {
        let inputs = p.universe().members(budget.min(DECIDER_SAMPLE));
        match is_decision_solution(m, p, &inputs, fuel)? {
            DecisionVerdict::Accept { tested } => {
                decider_ok = true;
                witnesses.push(format!("decider {name} accepted on {tested} inputs"));
            }
            DecisionVerdict::Reject { witness, reason } => {
                caveats.push(format!(
                    "decider {name} rejected at {}: {reason:?}",
                    witness.render()
                ));
            }
        }
    }
    let expressible = if finite.value.yes() {
        Reading::new("expressible", Flag::Yes, "finitely many solutions")
    } else if decider_ok {
        Reading::new("expressible", Flag::Yes, "checked decider")
    } else if ev.asserted_unresolvable {
        Reading::new(
            "expressible",
            Flag::No,
            "follows from the asserted unresolvability",
        )
    } else {
        Reading::new("expressible", Flag::Unknown, "no checked decider")
    };

    // resolvable
    let mut enumerator_ok = false;
    if let Some(en) = &ev.enumerator {
        let run = en.run(fuel);
        match check_enumeration(p, &run)? {
            None => {
                enumerator_ok = true;
                witnesses.push(format!(
                    "enumerator {} emitted {} of {} covered candidates",
                    en.name,
                    run.emitted.len(),
                    run.covered.len()
                ));
            }
            Some(problem) => caveats.push(format!("enumerator {}: {problem}", en.name)),
        }
    }
    let resolvable = if expressible.value.yes() {
        Reading::new("resolvable", Flag::Yes, "expressible")
    } else if enumerator_ok {
        Reading::new("resolvable", Flag::Yes, "checked enumerator")
    } else if ev.asserted_unresolvable {
        caveats.push("unresolvability is asserted, not checked".into());
        Reading::new("resolvable", Flag::No, "asserted")
    } else {
        Reading::new("resolvable", Flag::Unknown, "no checked enumerator")
    };

    if expressible.value == Flag::Unknown && resolvable.value.yes() {
        caveats.push(
            "no decider found; membership in a halting-style set is undecidable in general (Post 1944)".into(),
        );
    }

    let flags = ClassificationFlags::new(
        solvable.value,
        finite.value,
        expressible.value,
        resolvable.value,
    )
    .map_err(TopologyError::Inconsistent)?;
    let stamps = [solvable, finite, expressible, resolvable]
        .into_iter()
        .map(|r| FlagStamp {
            flag: r.flag,
            value: r.value,
            fuel,
            basis: r.basis,
        })
        .collect();
    Ok(ClassificationReport {
        problem: p.label().to_string(),
        universe: p.universe().describe(),
        fuel,
        place: flags.place(),
        tentative_place: flags.tentative_place(),
        flags,
        stamps,
        witnesses,
        caveats,
    })
}

/// Inputs a decider is tested on.
pub const DECIDER_SAMPLE: usize = 256;

fn check_enumeration(p: &Problem, run: &EnumeratorRun) -> Result<Option<String>, ProblemError> {
    for e in &run.emitted {
        if !run.covered.contains(e) {
            return Ok(Some(format!("emitted {} outside its coverage", e.render())));
        }
        if !p.holds(e)? {
            return Ok(Some(format!("emitted non-solution {}", e.render())));
        }
    }
    for c in &run.covered {
        if p.holds(c)? && !run.emitted.contains(c) {
            return Ok(Some(format!("missed solution {}", c.render())));
        }
    }
    Ok(None)
}

pub fn classify_all(
    items: &[(Problem, Evidence)],
    fuel: u64,
    strategy: Strategy,
) -> Vec<Result<ClassificationReport, TopologyError>> {
    sweep::map(strategy, items, |(p, ev)| classify(p, ev, fuel))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("report {index} has an undetermined flag")]
    Indefinite { index: usize },
    #[error("report {index} is impossible: {violation}")]
    Impossible {
        index: usize,
        violation: FlagViolation,
    },
    #[error("report {index} falls in no place")]
    Unplaced { index: usize },
}

/// Checks that every report is definite, consistent and in exactly one place.
pub fn verify_partition(reports: &[RawFlags]) -> Result<(), PartitionError> {
    for (index, r) in reports.iter().enumerate() {
        if let Some(violation) = r.violation() {
            return Err(PartitionError::Impossible { index, violation });
        }
        if ![r.solvable, r.finite, r.expressible, r.resolvable]
            .iter()
            .all(|f| f.is_definite())
        {
            return Err(PartitionError::Indefinite { index });
        }
        let hits = [
            r.solvable.no(),
            r.solvable.yes() && r.finite.yes(),
            r.finite.no() && r.expressible.yes(),
            r.expressible.no() && r.resolvable.yes(),
            r.resolvable.no(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if hits != 1 {
            return Err(PartitionError::Unplaced { index });
        }
    }
    Ok(())
}

/// One row of the expressible/resolvable/solvable feasibility table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub expressible: bool,
    pub resolvable: bool,
    pub solvable: bool,
    pub possible: bool,
    pub reason: Option<String>,
}

/// The eight combinations, in the order E, R, S from all-true downwards,
/// with the impossible ones rejected by the flag guard.
pub fn feasibility_table() -> Vec<TableRow> {
    let mut rows = Vec::new();
    for e in [true, false] {
        for r in [true, false] {
            for s in [true, false] {
                let raw = RawFlags {
                    solvable: Flag::from_bool(s),
                    finite: Flag::Unknown,
                    expressible: Flag::from_bool(e),
                    resolvable: Flag::from_bool(r),
                };
                let violation = raw.violation();
                rows.push(TableRow {
                    expressible: e,
                    resolvable: r,
                    solvable: s,
                    possible: violation.is_none(),
                    reason: violation.map(|v| v.to_string()),
                });
            }
        }
    }
    rows
}

/// Steps the halting condition of the demo is evaluated with.
pub const HALTING_DEMO_FUEL: u64 = 100_000;

/// The halting problem restricted to a pool: candidates are `program ▷ data`
/// expressions over an unbounded universe; the condition asks whether the
/// program halts on the data (within [`HALTING_DEMO_FUEL`] steps). The
/// evidence is a dovetail enumerator over the pool and one known solution,
/// with no decider.
pub fn halting_demo(pool: Vec<(Expression, Expression)>) -> (Problem, Evidence) {
    let mut symbols: Vec<char> = pool
        .iter()
        .flat_map(|(p, d)| p.symbols().iter().chain(d.symbols()))
        .copied()
        .collect();
    symbols.push(PAIR_SEPARATOR);
    symbols.sort_unstable();
    symbols.dedup();
    let blank = ['␣', '#', '$', '~']
        .into_iter()
        .find(|c| !symbols.contains(c))
        .expect("a free blank");
    let alphabet = Alphabet::new(symbols, blank).expect("deduplicated symbols");
    let problem = Problem::from_native(
        Universe::enumerated(alphabet, None),
        "halts(program ▷ data)",
        |e| {
            split_pair(e).is_some_and(|(p, d)| {
                matches!(
                    halting_condition(&p, &d, HALTING_DEMO_FUEL),
                    HaltingAnswer::HaltsWithin { .. }
                )
            })
        },
    );
    let exprs: Vec<Expression> = pool.iter().map(|(p, d)| pair_expression(p, d)).collect();
    let known_solution = pool
        .iter()
        .zip(&exprs)
        .find(|((p, d), _)| {
            matches!(
                halting_condition(p, d, 1_000),
                HaltingAnswer::HaltsWithin { .. }
            )
        })
        .map(|(_, e)| e.clone());
    let enumerator = Enumerator::new("dovetail", move |budget| {
        let run = dovetail(pool.clone(), budget, Strategy::default());
        let admitted = usize::try_from(budget)
            .unwrap_or(usize::MAX)
            .min(exprs.len());
        EnumeratorRun {
            emitted: run
                .emissions
                .iter()
                .map(|e| exprs[e.pair].clone())
                .collect(),
            covered: exprs[..admitted].to_vec(),
        }
    });
    (
        problem,
        Evidence {
            decider: None,
            enumerator: Some(enumerator),
            known_solution,
            asserted_unresolvable: false,
        },
    )
}

/// Six program/data pairs; pairs 1 and 4 never halt.
pub fn halting_demo_pool() -> Vec<(Expression, Expression)> {
    let x = Alphabet::of("x").unwrap();
    let ab = Alphabet::of("ab").unwrap();
    let digits = Alphabet::of("012").unwrap();
    let enc = |m: TMachine| m.encode().into_expression();
    vec![
        (enc(identity_machine(&x)), "xx".into()),
        (enc(never_halting_machine(&x)), "x".into()),
        (enc(delta_machine(&ab, &"ab".into()).unwrap()), "ab".into()),
        (enc(delta_machine(&ab, &"ab".into()).unwrap()), "ba".into()),
        (enc(never_halting_machine(&ab)), "".into()),
        (
            enc(constant_machine(&digits, &"21".into()).unwrap()),
            "0120".into(),
        ),
    ]
}

/// Indices of the demo pool pairs that halt.
pub const HALTING_DEMO_HALTERS: [usize; 4] = [0, 2, 3, 5];

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn double_is_square() -> Problem {
        Problem::from_native(Universe::int_range(0, 10), "2x = x²", |x| {
            x.as_integer().is_some_and(|n| 2 * n == n * n)
        })
    }

    #[test]
    fn table_rows_reproduced() {
        let p = double_is_square();
        let r = classify(&p, &Evidence::default(), 1000).unwrap();
        assert_eq!(
            r.flags.raw(),
            RawFlags {
                solvable: Flag::Yes,
                finite: Flag::Yes,
                expressible: Flag::Yes,
                resolvable: Flag::Yes
            }
        );
        assert_eq!(r.place, Place::FiniteSolvable);

        let gt2 = Problem::from_native(Universe::int_range(0, 10), "x > 2", |x| {
            x.as_integer().is_some_and(|n| n > 2)
        });
        let q = p.conjoin(&gt2).unwrap();
        let r = classify(&q, &Evidence::default(), 1000).unwrap();
        assert_eq!(r.flags.solvable(), Flag::No);
        assert_eq!(r.flags.expressible(), Flag::Yes);
        assert_eq!(r.flags.resolvable(), Flag::Yes);
        assert_eq!(r.place, Place::NotSolvable);
        verify_partition(&[
            classify(&p, &Evidence::default(), 10).unwrap().flags.raw(),
            r.flags.raw(),
        ])
        .unwrap();
    }

    #[test]
    fn four_rows_are_impossible() {
        let rows = feasibility_table();
        assert_eq!(rows.len(), 8);
        let possible: Vec<(bool, bool, bool)> = rows
            .iter()
            .filter(|r| r.possible)
            .map(|r| (r.expressible, r.resolvable, r.solvable))
            .collect();
        assert_eq!(
            possible,
            vec![
                (true, true, true),
                (true, true, false),
                (false, true, true),
                (false, false, true)
            ]
        );
    }

    #[test]
    fn partition_rejections() {
        let raw = |s, f, e, r| RawFlags {
            solvable: s,
            finite: f,
            expressible: e,
            resolvable: r,
        };
        use Flag::*;
        assert_eq!(
            verify_partition(&[raw(Yes, Yes, Yes, Yes), raw(No, Yes, No, No)]),
            Err(PartitionError::Impossible {
                index: 1,
                violation: FlagViolation::UnsolvableInexpressible
            })
        );
        assert_eq!(
            verify_partition(&[raw(Yes, No, Yes, No)]),
            Err(PartitionError::Impossible {
                index: 0,
                violation: FlagViolation::ExpressibleUnresolvable
            })
        );
        assert_eq!(
            verify_partition(&[raw(Yes, Unknown, Yes, Yes)]),
            Err(PartitionError::Indefinite { index: 0 })
        );
        assert!(ClassificationFlags::new(Yes, Yes, No, Yes).is_err());
    }

    #[test]
    fn decision_solutions() {
        let ab = Alphabet::of("ab").unwrap();
        let s: Expression = "ab".into();
        let inputs = crate::machine::expressions_up_to(&ab, s.len() + 2);
        let u = Universe::finite(inputs.clone()).unwrap();
        let p = Problem::delta(u, &s).unwrap();
        let d = delta_machine(&ab, &s).unwrap();
        assert_eq!(
            is_decision_solution(&d, &p, &inputs, 100).unwrap(),
            DecisionVerdict::Accept {
                tested: inputs.len()
            }
        );
        let v = is_decision_solution(&identity_machine(&ab), &p, std::slice::from_ref(&s), 100)
            .unwrap();
        assert!(matches!(
            v,
            DecisionVerdict::Reject {
                reason: RejectReason::NotATruthValue { .. },
                ..
            }
        ));
        let v = is_decision_solution(&never_halting_machine(&ab), &p, &[s], 100).unwrap();
        assert!(matches!(
            v,
            DecisionVerdict::Reject {
                reason: RejectReason::OutOfFuel { steps: 100 },
                ..
            }
        ));
    }

    #[test]
    fn decider_makes_an_unbounded_problem_expressible() {
        let ab = Alphabet::of("ab").unwrap();
        let s: Expression = "ab".into();
        let p = Problem::delta(Universe::enumerated(ab.clone(), None), &s).unwrap();
        let ev = Evidence {
            decider: Some(("δ_ab".into(), delta_machine(&ab, &s).unwrap())),
            ..Evidence::default()
        };
        let r = classify(&p, &ev, 1000).unwrap();
        assert_eq!(r.flags.expressible(), Flag::Yes);
        assert_eq!(r.flags.resolvable(), Flag::Yes);
        assert_eq!(r.flags.finite(), Flag::Unknown);
        assert_eq!(r.place, Place::Undetermined);
        assert_eq!(r.tentative_place, Place::ExpressibleInfinite);
    }

    #[test]
    fn halting_demo_is_tentatively_resolvable_inexpressible() {
        let (p, ev) = halting_demo(halting_demo_pool());
        let r = classify(&p, &ev, 100).unwrap();
        assert_eq!(r.flags.solvable(), Flag::Yes);
        assert_eq!(r.flags.expressible(), Flag::Unknown);
        assert_eq!(r.flags.resolvable(), Flag::Yes);
        assert_eq!(r.place, Place::Undetermined);
        assert_eq!(r.tentative_place, Place::ResolvableInexpressible);
        assert!(r.caveats.iter().any(|c| c.contains("Post 1944")));
    }

    #[test]
    fn asserted_unresolvable_is_flagged() {
        let p = Problem::from_native(
            Universe::enumerated(Alphabet::of("a").unwrap(), None),
            "opaque",
            |x| x.len() == 3,
        );
        let ev = Evidence {
            asserted_unresolvable: true,
            ..Evidence::default()
        };
        let r = classify(&p, &ev, 100).unwrap();
        assert_eq!(r.place, Place::Unresolvable);
        assert!(r.caveats.iter().any(|c| c.contains("asserted")));
    }

    fn flag() -> impl proptest::strategy::Strategy<Value = Flag> {
        prop_oneof![Just(Flag::Yes), Just(Flag::No), Just(Flag::Unknown)]
    }

    proptest! {
        #[test]
        fn guard_rejects_exactly_the_impossible(s in flag(), f in flag(), e in flag(), r in flag()) {
            use Flag::{No, Yes};
            // consistent iff some place agrees with every definite flag
            let places = [[No, Yes, Yes, Yes], [Yes, Yes, Yes, Yes], [Yes, No, Yes, Yes], [Yes, No, No, Yes], [Yes, No, No, No]];
            let agrees = |want: &[Flag; 4]| [s, f, e, r].iter().zip(want).all(|(x, w)| !x.is_definite() || x == w);
            let impossible = !places.iter().any(agrees);
            let built = ClassificationFlags::new(s, f, e, r);
            prop_assert_eq!(built.is_err(), impossible);
            if let Ok(flags) = built {
                if [s, f, e, r].iter().all(|x| x.is_definite()) {
                    prop_assert!(verify_partition(&[flags.raw()]).is_ok());
                    prop_assert_ne!(flags.place(), Place::Undetermined);
                }
            }
        }
    }
}
