//! Interleaved execution of many (program, data) pairs.
//!
//! Round `r` (counting from 1) admits pair `r - 1` and then advances every
//! admitted, still running pair by one step. With a budget of `B` rounds,
//! pair `j` is allotted `B - j` steps. A pair is emitted in the round in which
//! it halts; non-programs halt on admission with zero steps (the universal
//! evaluator's passthrough). Emissions are ordered by round, then pair index.

use serde::Serialize;

use crate::expr::Expression;
use crate::sweep::{self, Strategy};

use super::{universal_apply, Program, RunOutcome, RunState, TMachine};

/// Separator between program and data in a pair expression.
pub const PAIR_SEPARATOR: char = '▷';

/// `program ▷ data` as a single expression.
pub fn pair_expression(program: &Expression, data: &Expression) -> Expression {
    program
        .concat(&Expression::from_symbols(vec![PAIR_SEPARATOR]))
        .concat(data)
}

/// Inverse of [`pair_expression`]; splits at the first separator.
pub fn split_pair(e: &Expression) -> Option<(Expression, Expression)> {
    let at = e.symbols().iter().position(|&c| c == PAIR_SEPARATOR)?;
    Some((
        Expression::from_symbols(e.symbols()[..at].to_vec()),
        Expression::from_symbols(e.symbols()[at + 1..].to_vec()),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Emission {
    /// Position in the emission stream.
    pub index: usize,
    /// Position of the pair in the input sequence.
    pub pair: usize,
    pub steps: u64,
    pub round: u64,
    pub result: Expression,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dovetail {
    pub budget: u64,
    pub emissions: Vec<Emission>,
    /// Admitted pairs that had not halted when the budget ran out.
    pub running: Vec<usize>,
}

impl Dovetail {
    pub fn emitted_pairs(&self) -> Vec<usize> {
        self.emissions.iter().map(|e| e.pair).collect()
    }
}

/// Dovetails the first `budget` pairs of `pairs` for `budget` rounds.
pub fn dovetail<I>(pairs: I, budget: u64, strategy: Strategy) -> Dovetail
where
    I: IntoIterator<Item = (Expression, Expression)>,
{
    let admitted: Vec<(Expression, Expression)> = pairs
        .into_iter()
        .take(usize::try_from(budget).unwrap_or(usize::MAX))
        .collect();
    match strategy {
        Strategy::Sequential => interleaved(&admitted, budget),
        Strategy::Parallel => independent(&admitted, budget, strategy),
    }
}

enum Slot {
    Running(TMachine, RunState),
    Done,
}

fn admit(program: &Expression, data: &Expression) -> Result<Slot, RunOutcome> {
    if let Ok(m) = Program::decode(program) {
        if let Ok(run) = RunState::new(&m, data) {
            return Ok(Slot::Running(m, run));
        }
    }
    Err(universal_apply(program, data, 0))
}

// Literal round-by-round interleaving.
fn interleaved(pairs: &[(Expression, Expression)], budget: u64) -> Dovetail {
    let mut slots: Vec<Slot> = Vec::with_capacity(pairs.len());
    let mut emissions = Vec::new();
    for round in 1..=budget {
        let mut halted_now: Vec<(usize, RunOutcome)> = Vec::new();
        let admitted_now = (round - 1) as usize;
        if let Some((p, d)) = pairs.get(admitted_now) {
            match admit(p, d) {
                Ok(slot) => slots.push(slot),
                Err(outcome) => {
                    halted_now.push((admitted_now, outcome));
                    slots.push(Slot::Done);
                }
            }
        }
        for (pair, slot) in slots.iter_mut().enumerate() {
            if let Slot::Running(m, run) = slot {
                if run.step(m) {
                    halted_now.push((pair, run.outcome()));
                    *slot = Slot::Done;
                }
            }
        }
        halted_now.sort_by_key(|(pair, _)| *pair);
        for (pair, outcome) in halted_now {
            push(&mut emissions, pair, round, &outcome);
        }
    }
    let running = slots
        .iter()
        .enumerate()
        .filter_map(|(i, s)| matches!(s, Slot::Running(..)).then_some(i))
        .collect();
    Dovetail {
        budget,
        emissions,
        running,
    }
}

fn push(emissions: &mut Vec<Emission>, pair: usize, round: u64, outcome: &RunOutcome) {
    if let RunOutcome::Halted { result, steps } = outcome {
        emissions.push(Emission {
            index: emissions.len(),
            pair,
            steps: *steps,
            round,
            result: result.clone(),
        });
    }
}

// Each pair runs alone on its allotment; the round of its emission follows
// from its admission round and step count, which gives the same stream.
fn independent(pairs: &[(Expression, Expression)], budget: u64, strategy: Strategy) -> Dovetail {
    let indexed: Vec<usize> = (0..pairs.len()).collect();
    let outcomes = sweep::map(strategy, &indexed, |&j| {
        let (p, d) = &pairs[j];
        universal_apply(p, d, budget - j as u64)
    });
    let mut halted = Vec::new();
    let mut running = Vec::new();
    for (j, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            RunOutcome::Halted { result, steps } => {
                let round = j as u64 + steps.max(1);
                halted.push((round, j, steps, result));
            }
            RunOutcome::OutOfFuel { .. } => running.push(j),
        }
    }
    halted.sort_by_key(|(round, j, ..)| (*round, *j));
    let emissions = halted
        .into_iter()
        .enumerate()
        .map(|(index, (round, pair, steps, result))| Emission {
            index,
            pair,
            steps,
            round,
            result,
        })
        .collect();
    Dovetail {
        budget,
        emissions,
        running,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Alphabet;
    use crate::machine::{delta_machine, identity_machine, never_halting_machine};

    fn fixture() -> Vec<(Expression, Expression)> {
        let x = Alphabet::of("x").unwrap();
        let a = Alphabet::of("a").unwrap();
        vec![
            (identity_machine(&x).encode().into_expression(), "x".into()),
            (
                never_halting_machine(&x).encode().into_expression(),
                "x".into(),
            ),
            (
                delta_machine(&a, &"a".into())
                    .unwrap()
                    .encode()
                    .into_expression(),
                "a".into(),
            ),
        ]
    }

    #[test]
    fn emits_the_halting_pairs() {
        for strategy in Strategy::all() {
            let d = dovetail(fixture(), 100, strategy);
            assert_eq!(d.emitted_pairs(), vec![0, 2]);
            assert_eq!(d.running, vec![1]);
        }
    }

    #[test]
    fn empty_sequence() {
        let d = dovetail(Vec::new(), 50, Strategy::Sequential);
        assert!(d.emissions.is_empty() && d.running.is_empty());
    }

    #[test]
    fn single_pair_reports_exact_steps() {
        let a = Alphabet::of("ab").unwrap();
        let m = delta_machine(&a, &"ab".into()).unwrap();
        let direct = m.run(&"aba".into(), 100).unwrap();
        let d = dovetail(
            vec![(m.encode().into_expression(), "aba".into())],
            100,
            Strategy::Sequential,
        );
        assert_eq!(d.emissions.len(), 1);
        assert_eq!(d.emissions[0].steps, direct.steps());
        assert_eq!(Some(&d.emissions[0].result), direct.result());
    }

    #[test]
    fn non_programs_pass_through_on_admission() {
        let pairs = vec![("junk".into(), "d".into()); 2];
        let d = dovetail(pairs, 5, Strategy::Sequential);
        assert_eq!(
            d.emissions
                .iter()
                .map(|e| (e.pair, e.round, e.steps))
                .collect::<Vec<_>>(),
            vec![(0, 1, 0), (1, 2, 0)]
        );
        assert_eq!(d.emissions[0].result, Expression::from("junkd"));
    }

    #[test]
    fn pair_expressions_split_back() {
        let e = pair_expression(&"1|0|_|x;".into(), &"xx".into());
        assert_eq!(split_pair(&e), Some(("1|0|_|x;".into(), "xx".into())));
        assert_eq!(split_pair(&"plain".into()), None);
    }

    #[test]
    fn strategies_agree_at_every_budget() {
        let mut pairs = fixture();
        pairs.push(("junk".into(), "".into()));
        for budget in 0..30 {
            let seq = dovetail(pairs.clone(), budget, Strategy::Sequential);
            for strategy in Strategy::all() {
                assert_eq!(
                    dovetail(pairs.clone(), budget, strategy),
                    seq,
                    "budget {budget}"
                );
            }
        }
    }
}
