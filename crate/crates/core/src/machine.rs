//! Transition-table Turing machines under a step budget.
//!
//! A machine has states `0..state_count`, a designated start state, and a
//! total transition table over its alphabet plus the blank. One transition is
//! one step; the move `h` writes and then stops. Running out of fuel is the
//! bounded stand-in for a computation that never halts.
//!
//! Results are read from the leftmost to the rightmost non-blank cell. Blanks
//! strictly between them are kept (as the blank symbol) so that the reading is
//! a deterministic function of the final tape.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::expr::{Alphabet, ExprError, Expression};
use crate::sweep::{self, Strategy};

mod codec;
mod dovetail;

pub use codec::{Program, CELL_SEPARATOR, ROW_TERMINATOR};
pub use dovetail::{dovetail, pair_expression, split_pair, Dovetail, Emission, PAIR_SEPARATOR};

/// Tape symbol written by deciders for "yes".
pub const TRUE_SYMBOL: char = '⊤';
/// Tape symbol written by deciders for "no".
pub const FALSE_SYMBOL: char = '⊥';

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("input symbol {symbol:?} is not in the machine alphabet")]
    InputOutsideAlphabet { symbol: char },
    #[error("machine needs at least one state")]
    NoStates,
    #[error("start state {0} does not exist")]
    BadStart(usize),
    #[error("transition ({state}, {symbol:?}) targets missing state {next}")]
    BadTarget {
        state: usize,
        symbol: char,
        next: usize,
    },
    #[error("transition ({state}, {symbol:?}) writes {write:?}, outside the tape alphabet")]
    BadWrite {
        state: usize,
        symbol: char,
        write: char,
    },
    #[error("no transition for ({state}, {symbol:?})")]
    MissingTransition { state: usize, symbol: char },
    #[error("symbol {0:?} is reserved by the program codec")]
    ReservedSymbol(char),
    #[error("not a program: {0}")]
    NotAProgram(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Move {
    Left,
    Halt,
    Right,
}

impl Move {
    pub fn letter(self) -> char {
        match self {
            Move::Left => 'l',
            Move::Halt => 'h',
            Move::Right => 'r',
        }
    }

    pub fn from_letter(c: char) -> Option<Move> {
        match c {
            'l' => Some(Move::Left),
            'h' => Some(Move::Halt),
            'r' => Some(Move::Right),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transition {
    pub next: usize,
    pub write: char,
    pub mv: Move,
}

impl Transition {
    pub fn new(next: usize, write: char, mv: Move) -> Self {
        Transition { next, write, mv }
    }
}

/// A Turing machine with a total transition table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TMachine {
    alphabet: Alphabet,
    state_count: usize,
    start: usize,
    // row-major: state * (symbols + 1) + column, column 0 is the blank
    table: Vec<Transition>,
}

impl TMachine {
    /// Builds a machine by asking `rule` for every (state, symbol-or-blank)
    /// pair; `None` means the table has a hole.
    pub fn from_fn(
        alphabet: Alphabet,
        state_count: usize,
        start: usize,
        mut rule: impl FnMut(usize, char) -> Option<Transition>,
    ) -> Result<Self, MachineError> {
        let columns = column_symbols(&alphabet);
        let mut table = Vec::with_capacity(state_count * columns.len());
        for state in 0..state_count {
            for &symbol in &columns {
                let t =
                    rule(state, symbol).ok_or(MachineError::MissingTransition { state, symbol })?;
                table.push(t);
            }
        }
        TMachine::from_table(alphabet, state_count, start, table)
    }

    /// Builds a machine from a row-major table (blank column first).
    pub fn from_table(
        alphabet: Alphabet,
        state_count: usize,
        start: usize,
        table: Vec<Transition>,
    ) -> Result<Self, MachineError> {
        if state_count == 0 {
            return Err(MachineError::NoStates);
        }
        if start >= state_count {
            return Err(MachineError::BadStart(start));
        }
        for &c in alphabet
            .symbols()
            .iter()
            .chain(std::iter::once(&alphabet.blank()))
        {
            if codec::is_reserved(c) {
                return Err(MachineError::ReservedSymbol(c));
            }
        }
        let columns = column_symbols(&alphabet);
        if table.len() != state_count * columns.len() {
            let missing = table.len();
            return Err(MachineError::MissingTransition {
                state: missing / columns.len(),
                symbol: columns[missing % columns.len()],
            });
        }
        for (i, t) in table.iter().enumerate() {
            let state = i / columns.len();
            let symbol = columns[i % columns.len()];
            if t.next >= state_count {
                return Err(MachineError::BadTarget {
                    state,
                    symbol,
                    next: t.next,
                });
            }
            if t.write != alphabet.blank() && !alphabet.contains(t.write) {
                return Err(MachineError::BadWrite {
                    state,
                    symbol,
                    write: t.write,
                });
            }
        }
        Ok(TMachine {
            alphabet,
            state_count,
            start,
            table,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn table(&self) -> &[Transition] {
        &self.table
    }

    fn column(&self, symbol: char) -> Option<usize> {
        if symbol == self.alphabet.blank() {
            Some(0)
        } else {
            self.alphabet.index_of_symbol(symbol).map(|i| i + 1)
        }
    }

    pub fn transition(&self, state: usize, symbol: char) -> Option<Transition> {
        let col = self.column(symbol)?;
        self.table
            .get(state * (self.alphabet.size() + 1) + col)
            .copied()
    }

    /// True when no transition halts.
    pub fn has_no_halt(&self) -> bool {
        self.table.iter().all(|t| t.mv != Move::Halt)
    }

    /// Starts an execution on `input`.
    pub fn start_on(&self, input: &Expression) -> Result<Execution<'_>, MachineError> {
        Ok(Execution {
            machine: self,
            run: RunState::new(self, input)?,
        })
    }

    pub fn run(&self, input: &Expression, fuel: u64) -> Result<RunOutcome, MachineError> {
        let mut exec = self.start_on(input)?;
        Ok(exec.run_for(fuel))
    }

    pub fn encode(&self) -> Program {
        Program::encode(self)
    }

    /// Same behaviour under a renumbering of states: `perm[old] = new`.
    pub fn renumbered(&self, perm: &[usize]) -> Result<TMachine, MachineError> {
        let cols = self.alphabet.size() + 1;
        let mut table =
            vec![Transition::new(0, self.alphabet.blank(), Move::Halt); self.table.len()];
        for old in 0..self.state_count {
            for c in 0..cols {
                let t = self.table[old * cols + c];
                table[perm[old] * cols + c] = Transition::new(perm[t.next], t.write, t.mv);
            }
        }
        TMachine::from_table(
            self.alphabet.clone(),
            self.state_count,
            perm[self.start],
            table,
        )
    }
}

fn column_symbols(alphabet: &Alphabet) -> Vec<char> {
    std::iter::once(alphabet.blank())
        .chain(alphabet.symbols().iter().copied())
        .collect()
}

impl fmt::Display for TMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let columns = column_symbols(&self.alphabet);
        writeln!(
            f,
            "states: {}",
            (0..self.state_count)
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        )?;
        writeln!(
            f,
            "alphabet: {}",
            self.alphabet
                .symbols()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        )?;
        writeln!(f, "blank: {}", self.alphabet.blank())?;
        writeln!(f, "start: {}", self.start)?;
        for (i, t) in self.table.iter().enumerate() {
            let state = i / columns.len();
            let symbol = columns[i % columns.len()];
            writeln!(
                f,
                "{state} {symbol} -> {} {} {}",
                t.next,
                t.write,
                t.mv.letter()
            )?;
        }
        Ok(())
    }
}

/// Two-way unbounded tape; cells outside the stored window are blank.
#[derive(Debug, Clone)]
pub struct Tape {
    cells: Vec<char>,
    // position of cells[0]
    origin: i64,
    head: i64,
    blank: char,
}

impl Tape {
    fn with_input(input: &Expression, blank: char) -> Self {
        let mut cells = input.symbols().to_vec();
        if cells.is_empty() {
            cells.push(blank);
        }
        Tape {
            cells,
            origin: 0,
            head: 0,
            blank,
        }
    }

    pub fn head(&self) -> i64 {
        self.head
    }

    pub fn read(&self) -> char {
        let i = self.head - self.origin;
        if i < 0 || i as usize >= self.cells.len() {
            self.blank
        } else {
            self.cells[i as usize]
        }
    }

    fn write(&mut self, c: char) {
        let mut i = self.head - self.origin;
        if i < 0 {
            let grow = (-i) as usize;
            let mut front = vec![self.blank; grow];
            front.append(&mut self.cells);
            self.cells = front;
            self.origin -= grow as i64;
            i = 0;
        }
        let i = i as usize;
        if i >= self.cells.len() {
            self.cells.resize(i + 1, self.blank);
        }
        self.cells[i] = c;
    }

    /// Leftmost to rightmost non-blank cell.
    pub fn reading(&self) -> Expression {
        let first = self.cells.iter().position(|&c| c != self.blank);
        let last = self.cells.iter().rposition(|&c| c != self.blank);
        match (first, last) {
            (Some(a), Some(b)) => Expression::from_symbols(self.cells[a..=b].to_vec()),
            _ => Expression::empty(),
        }
    }

    /// Number of non-blank cells.
    pub fn non_blank(&self) -> usize {
        self.cells.iter().filter(|&&c| c != self.blank).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum RunOutcome {
    Halted { result: Expression, steps: u64 },
    OutOfFuel { steps: u64 },
}

impl RunOutcome {
    pub fn is_halted(&self) -> bool {
        matches!(self, RunOutcome::Halted { .. })
    }

    pub fn result(&self) -> Option<&Expression> {
        match self {
            RunOutcome::Halted { result, .. } => Some(result),
            RunOutcome::OutOfFuel { .. } => None,
        }
    }

    pub fn steps(&self) -> u64 {
        match self {
            RunOutcome::Halted { steps, .. } | RunOutcome::OutOfFuel { steps } => *steps,
        }
    }

    /// Equality of the observable function value (halted result or
    /// non-termination), ignoring step counts.
    pub fn same_value(&self, other: &RunOutcome) -> bool {
        self.result() == other.result()
    }
}

impl fmt::Display for RunOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunOutcome::Halted { result, steps } => {
                write!(f, "Halted {} ({steps} steps)", result.render())
            }
            RunOutcome::OutOfFuel { steps } => write!(f, "OutOfFuel ({steps} steps)"),
        }
    }
}

/// Mutable part of a run, kept apart from the machine so that runs can be
/// stored next to owned machines.
#[derive(Debug, Clone)]
pub(crate) struct RunState {
    tape: Tape,
    state: usize,
    steps: u64,
    halted: bool,
}

impl RunState {
    pub(crate) fn new(m: &TMachine, input: &Expression) -> Result<Self, MachineError> {
        if let Some(&symbol) = input.symbols().iter().find(|c| !m.alphabet.contains(**c)) {
            return Err(MachineError::InputOutsideAlphabet { symbol });
        }
        Ok(RunState {
            tape: Tape::with_input(input, m.alphabet.blank()),
            state: m.start,
            steps: 0,
            halted: false,
        })
    }

    pub(crate) fn step(&mut self, m: &TMachine) -> bool {
        if self.halted {
            return true;
        }
        let t = m
            .transition(self.state, self.tape.read())
            .expect("tape only holds alphabet symbols");
        self.tape.write(t.write);
        self.state = t.next;
        self.steps += 1;
        match t.mv {
            Move::Left => self.tape.head -= 1,
            Move::Right => self.tape.head += 1,
            Move::Halt => self.halted = true,
        }
        self.halted
    }

    pub(crate) fn outcome(&self) -> RunOutcome {
        if self.halted {
            RunOutcome::Halted {
                result: self.tape.reading(),
                steps: self.steps,
            }
        } else {
            RunOutcome::OutOfFuel { steps: self.steps }
        }
    }
}

/// A machine run in progress.
#[derive(Debug, Clone)]
pub struct Execution<'m> {
    machine: &'m TMachine,
    run: RunState,
}

impl Execution<'_> {
    pub fn steps(&self) -> u64 {
        self.run.steps
    }

    pub fn is_halted(&self) -> bool {
        self.run.halted
    }

    pub fn state(&self) -> usize {
        self.run.state
    }

    pub fn tape(&self) -> &Tape {
        &self.run.tape
    }

    /// Executes one transition. Returns true once the machine has halted.
    pub fn step(&mut self) -> bool {
        self.run.step(self.machine)
    }

    /// Runs until halt or until the total step count reaches `fuel`.
    pub fn run_for(&mut self, fuel: u64) -> RunOutcome {
        while !self.run.halted && self.run.steps < fuel {
            self.run.step(self.machine);
        }
        self.outcome()
    }

    pub fn outcome(&self) -> RunOutcome {
        self.run.outcome()
    }
}

/// Runs `m` on `input` for at most `fuel` steps.
pub fn run(m: &TMachine, input: &Expression, fuel: u64) -> Result<RunOutcome, MachineError> {
    m.run(input, fuel)
}

/// The machine that halts at once, leaving its tape untouched.
pub fn identity_machine(alphabet: &Alphabet) -> TMachine {
    TMachine::from_fn(alphabet.clone(), 1, 0, |_, c| {
        Some(Transition::new(0, c, Move::Halt))
    })
    .expect("identity table is total")
}

/// A machine without any halting transition: it sweeps right forever.
pub fn never_halting_machine(alphabet: &Alphabet) -> TMachine {
    TMachine::from_fn(alphabet.clone(), 1, 0, |_, c| {
        Some(Transition::new(0, c, Move::Right))
    })
    .expect("sweep table is total")
}

/// Tape alphabet of the decider for strings over `input`: the input symbols
/// plus the two answer symbols.
pub fn decider_alphabet(input: &Alphabet) -> Result<Alphabet, MachineError> {
    let symbols = input
        .symbols()
        .iter()
        .copied()
        .chain([TRUE_SYMBOL, FALSE_SYMBOL]);
    Ok(Alphabet::new(symbols, input.blank())?)
}

/// The `|s| + 2` state decider for "the input equals `s`".
///
/// States `1..=n` compare symbol by symbol while blanking the input, state
/// `n + 1` accepts on the trailing blank, and state `0` blanks the rest of the
/// input before writing the rejection.
pub fn delta_machine(input: &Alphabet, s: &Expression) -> Result<TMachine, MachineError> {
    input.check(s)?;
    let alphabet = decider_alphabet(input)?;
    let blank = alphabet.blank();
    let n = s.len();
    let target = s.symbols().to_vec();
    TMachine::from_fn(alphabet, n + 2, 1, |state, read| {
        let t = if (1..=n).contains(&state) {
            if read == target[state - 1] {
                Transition::new(state + 1, blank, Move::Right)
            } else {
                Transition::new(0, blank, Move::Right)
            }
        } else if state == n + 1 {
            if read == blank {
                Transition::new(0, TRUE_SYMBOL, Move::Halt)
            } else {
                Transition::new(0, blank, Move::Right)
            }
        } else if read == blank {
            Transition::new(0, FALSE_SYMBOL, Move::Halt)
        } else {
            Transition::new(0, blank, Move::Right)
        };
        Some(t)
    })
}

/// Rewrites every symbol through `map` (unmapped symbols stay) and halts at
/// the first blank to the right.
pub fn symbol_map_machine(
    alphabet: &Alphabet,
    map: impl Fn(char) -> char,
) -> Result<TMachine, MachineError> {
    let blank = alphabet.blank();
    let mut writes = Vec::new();
    for &c in alphabet.symbols() {
        let w = map(c);
        if !alphabet.contains(w) {
            return Err(MachineError::BadWrite {
                state: 0,
                symbol: c,
                write: w,
            });
        }
        writes.push((c, w));
    }
    TMachine::from_fn(alphabet.clone(), 2, 0, |state, read| {
        Some(match (state, read) {
            // step back onto the last symbol so the reading is not shifted
            (0, c) if c == blank => Transition::new(1, blank, Move::Left),
            (0, c) => {
                let w = writes
                    .iter()
                    .find(|(from, _)| *from == c)
                    .map_or(c, |(_, w)| *w);
                Transition::new(0, w, Move::Right)
            }
            (_, c) => Transition::new(1, c, Move::Halt),
        })
    })
}

/// Erases the input and writes `value` after it, halting on its last symbol.
pub fn constant_machine(alphabet: &Alphabet, value: &Expression) -> Result<TMachine, MachineError> {
    alphabet.check(value)?;
    let blank = alphabet.blank();
    let out = value.symbols().to_vec();
    let k = out.len();
    // state 0 blanks the input; state i >= 1 writes out[i]
    TMachine::from_fn(alphabet.clone(), k.max(1), 0, |state, read| {
        Some(if state == 0 && read != blank {
            Transition::new(0, blank, Move::Right)
        } else if k == 0 {
            Transition::new(0, blank, Move::Halt)
        } else if state + 1 == k {
            Transition::new(0, out[state], Move::Halt)
        } else {
            Transition::new(state + 1, out[state], Move::Right)
        })
    })
}

/// Outcome-level semantics of the universal machine: programs run on their
/// data, anything else is echoed back concatenated with the data.
pub fn universal_apply(program: &Expression, data: &Expression, fuel: u64) -> RunOutcome {
    match Program::decode(program) {
        Ok(m) => match m.run(data, fuel) {
            Ok(outcome) => outcome,
            Err(_) => passthrough(program, data),
        },
        Err(_) => passthrough(program, data),
    }
}

fn passthrough(program: &Expression, data: &Expression) -> RunOutcome {
    RunOutcome::Halted {
        result: program.concat(data),
        steps: 0,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Equivalence {
    Equivalent,
    Distinguished {
        witness: Expression,
        left: RunOutcome,
        right: RunOutcome,
    },
    Inconclusive {
        witnesses: Vec<Expression>,
    },
}

/// Compares the input→outcome functions of two machines on `inputs`.
///
/// When only one side halts within `fuel`, the other is re-run with four
/// times the fuel before the input counts as a witness.
pub fn behaviorally_equivalent(
    m1: &TMachine,
    m2: &TMachine,
    inputs: &[Expression],
    fuel: u64,
) -> Result<Equivalence, MachineError> {
    let margin = fuel.saturating_mul(4);
    let mut inconclusive = Vec::new();
    for x in inputs {
        let mut a = m1.run(x, fuel)?;
        let mut b = m2.run(x, fuel)?;
        if a.is_halted() && !b.is_halted() {
            b = m2.run(x, margin)?;
        } else if b.is_halted() && !a.is_halted() {
            a = m1.run(x, margin)?;
        }
        match (a.result(), b.result()) {
            (None, None) => inconclusive.push(x.clone()),
            (ra, rb) if ra == rb => {}
            _ => {
                return Ok(Equivalence::Distinguished {
                    witness: x.clone(),
                    left: a,
                    right: b,
                })
            }
        }
    }
    if inconclusive.is_empty() {
        Ok(Equivalence::Equivalent)
    } else {
        Ok(Equivalence::Inconclusive {
            witnesses: inconclusive,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TerminatingStatus {
    /// Every tested input halted; says nothing about untested inputs.
    AllHaltedOnTested {
        tested: usize,
    },
    Suspects {
        inputs: Vec<Expression>,
    },
}

pub fn terminating_status(
    m: &TMachine,
    inputs: &[Expression],
    fuel: u64,
) -> Result<TerminatingStatus, MachineError> {
    terminating_status_with(m, inputs, fuel, Strategy::default())
}

pub fn terminating_status_with(
    m: &TMachine,
    inputs: &[Expression],
    fuel: u64,
    strategy: Strategy,
) -> Result<TerminatingStatus, MachineError> {
    let outcomes = sweep::map(strategy, inputs, |x| m.run(x, fuel));
    let mut suspects = Vec::new();
    for (x, o) in inputs.iter().zip(outcomes) {
        if !o?.is_halted() {
            suspects.push(x.clone());
        }
    }
    if suspects.is_empty() {
        Ok(TerminatingStatus::AllHaltedOnTested {
            tested: inputs.len(),
        })
    } else {
        Ok(TerminatingStatus::Suspects { inputs: suspects })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum HaltingAnswer {
    /// Definitive.
    HaltsWithin { steps: u64 },
    /// Only means "not within this fuel".
    UnknownAtFuel { fuel: u64 },
}

/// Semi-decision of the halting condition for a (program, data) pair.
pub fn halting_condition(program: &Expression, data: &Expression, fuel: u64) -> HaltingAnswer {
    match universal_apply(program, data, fuel) {
        RunOutcome::Halted { steps, .. } => HaltingAnswer::HaltsWithin { steps },
        RunOutcome::OutOfFuel { .. } => HaltingAnswer::UnknownAtFuel { fuel },
    }
}

/// All expressions over `alphabet` of length at most `max_len`.
pub fn expressions_up_to(alphabet: &Alphabet, max_len: usize) -> Vec<Expression> {
    let mut out = Vec::new();
    let mut i = 0u64;
    loop {
        let e = alphabet.enumerate(i);
        if e.len() > max_len {
            return out;
        }
        out.push(e);
        i += 1;
    }
}

/// Distinct halted results among `outcomes`.
pub fn halted_results(outcomes: &[RunOutcome]) -> BTreeSet<Expression> {
    outcomes
        .iter()
        .filter_map(|o| o.result().cloned())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::of("ab").unwrap()
    }

    fn xyz() -> Alphabet {
        Alphabet::of("xyz").unwrap()
    }

    #[test]
    fn identity_halts_with_input() {
        let id = identity_machine(&xyz());
        assert_eq!(
            id.run(&"xyz".into(), 1).unwrap(),
            RunOutcome::Halted {
                result: "xyz".into(),
                steps: 1
            }
        );
        assert_eq!(
            id.run(&Expression::empty(), 1).unwrap(),
            RunOutcome::Halted {
                result: Expression::empty(),
                steps: 1
            }
        );
    }

    #[test]
    fn zero_fuel_is_out_of_fuel() {
        let id = identity_machine(&xyz());
        assert_eq!(
            id.run(&"x".into(), 0).unwrap(),
            RunOutcome::OutOfFuel { steps: 0 }
        );
    }

    #[test]
    fn never_halting_runs_out() {
        let w = never_halting_machine(&ab());
        assert!(w.has_no_halt());
        assert_eq!(
            w.run(&"ab".into(), 50).unwrap(),
            RunOutcome::OutOfFuel { steps: 50 }
        );
    }

    #[test]
    fn input_outside_alphabet() {
        let id = identity_machine(&ab());
        assert_eq!(
            id.run(&"ac".into(), 5),
            Err(MachineError::InputOutsideAlphabet { symbol: 'c' })
        );
    }

    #[test]
    fn delta_ab_accepts_only_ab() {
        let d = delta_machine(&ab(), &"ab".into()).unwrap();
        assert_eq!(d.state_count(), 4);
        let yes = Expression::from("⊤");
        let no = Expression::from("⊥");
        assert_eq!(d.run(&"ab".into(), 100).unwrap().result(), Some(&yes));
        for x in ["a", "b", "ba", "abb", ""] {
            assert_eq!(
                d.run(&x.into(), 100).unwrap().result(),
                Some(&no),
                "input {x:?}"
            );
        }
    }

    #[test]
    fn delta_steps_are_linear() {
        // measured constant: at most |x| + 2 transitions
        for s in expressions_up_to(&ab(), 3) {
            let d = delta_machine(&ab(), &s).unwrap();
            for x in expressions_up_to(&ab(), 4) {
                let steps = d.run(&x, 1000).unwrap().steps();
                assert!(steps <= x.len() as u64 + 2, "s={s} x={x} steps={steps}");
            }
        }
    }

    #[test]
    fn renumbered_identity_is_equivalent() {
        let alpha = xyz();
        let id = identity_machine(&alpha);
        // two-state identity whose start is state 1
        let id2 = TMachine::from_fn(alpha.clone(), 2, 1, |s, c| {
            Some(if s == 1 {
                Transition::new(1, c, Move::Halt)
            } else {
                Transition::new(0, c, Move::Right)
            })
        })
        .unwrap();
        let renamed = id2.renumbered(&[1, 0]).unwrap();
        assert_eq!(renamed.start(), 0);
        let inputs = expressions_up_to(&alpha, 3);
        assert_eq!(
            behaviorally_equivalent(&id, &id2, &inputs, 10).unwrap(),
            Equivalence::Equivalent
        );
        assert_eq!(
            behaviorally_equivalent(&id, &renamed, &inputs, 10).unwrap(),
            Equivalence::Equivalent
        );
    }

    #[test]
    fn deltas_are_distinguished() {
        let a = Alphabet::of("ab").unwrap();
        let da = delta_machine(&a, &"a".into()).unwrap();
        let db = delta_machine(&a, &"b".into()).unwrap();
        match behaviorally_equivalent(&da, &db, &["a".into()], 100).unwrap() {
            Equivalence::Distinguished { witness, .. } => {
                assert_eq!(witness, Expression::from("a"))
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn non_halting_pair_is_inconclusive() {
        let w = never_halting_machine(&ab());
        let w2 = w.renumbered(&[0]).unwrap();
        let v = behaviorally_equivalent(&w, &w2, &["a".into(), "".into()], 20).unwrap();
        assert_eq!(
            v,
            Equivalence::Inconclusive {
                witnesses: vec!["a".into(), "".into()]
            }
        );
    }

    #[test]
    fn halting_versus_looping_is_a_witness() {
        let id = identity_machine(&ab());
        let w = never_halting_machine(&ab());
        assert!(matches!(
            behaviorally_equivalent(&id, &w, &["b".into()], 10).unwrap(),
            Equivalence::Distinguished { .. }
        ));
    }

    #[test]
    fn terminating_status_examples() {
        let inputs = expressions_up_to(&ab(), 2);
        let id = identity_machine(&ab());
        assert_eq!(
            terminating_status(&id, &inputs, 5).unwrap(),
            TerminatingStatus::AllHaltedOnTested {
                tested: inputs.len()
            }
        );
        let w = never_halting_machine(&ab());
        assert_eq!(
            terminating_status(&w, &inputs, 5).unwrap(),
            TerminatingStatus::Suspects {
                inputs: inputs.clone()
            }
        );
        let s: Expression = "ab".into();
        let d = delta_machine(&ab(), &s).unwrap();
        let tested = expressions_up_to(&ab(), s.len() + 2);
        assert!(matches!(
            terminating_status(&d, &tested, 100).unwrap(),
            TerminatingStatus::AllHaltedOnTested { .. }
        ));
    }

    #[test]
    fn halting_condition_examples() {
        let id = identity_machine(&Alphabet::of("x").unwrap()).encode();
        assert!(matches!(
            halting_condition(id.expression(), &"x".into(), 10),
            HaltingAnswer::HaltsWithin { steps } if steps <= 1
        ));
        let w = never_halting_machine(&Alphabet::of("x").unwrap()).encode();
        assert_eq!(
            halting_condition(w.expression(), &"x".into(), 1000),
            HaltingAnswer::UnknownAtFuel { fuel: 1000 }
        );
        let da = delta_machine(&Alphabet::of("ab").unwrap(), &"a".into())
            .unwrap()
            .encode();
        assert!(matches!(
            halting_condition(da.expression(), &"a".into(), 100),
            HaltingAnswer::HaltsWithin { .. }
        ));
    }

    #[test]
    fn universal_matches_direct_run() {
        let id = identity_machine(&xyz());
        let p = id.encode();
        assert_eq!(
            universal_apply(p.expression(), &"xyz".into(), 10),
            RunOutcome::Halted {
                result: "xyz".into(),
                steps: 1
            }
        );
        let da = delta_machine(&Alphabet::of("ab").unwrap(), &"a".into()).unwrap();
        assert_eq!(
            universal_apply(da.encode().expression(), &"b".into(), 100).result(),
            Some(&"⊥".into())
        );
    }

    #[test]
    fn universal_passthrough_for_non_programs() {
        let e: Expression = "hello".into();
        let d: Expression = "xy".into();
        assert_eq!(
            universal_apply(&e, &d, 10),
            RunOutcome::Halted {
                result: "helloxy".into(),
                steps: 0
            }
        );
    }

    #[test]
    fn symbol_map_and_constant_machines() {
        let digits = Alphabet::of("012").unwrap();
        let inc = symbol_map_machine(&digits, |c| match c {
            '0' => '1',
            '1' => '2',
            _ => '0',
        })
        .unwrap();
        assert_eq!(
            inc.run(&"0".into(), 10).unwrap().result(),
            Some(&"1".into())
        );
        assert_eq!(
            inc.run(&"2".into(), 10).unwrap().result(),
            Some(&"0".into())
        );
        assert_eq!(
            inc.run(&"012".into(), 10).unwrap().result(),
            Some(&"120".into())
        );
        assert_eq!(inc.run(&"".into(), 10).unwrap().result(), Some(&"".into()));
        for value in ["0", "21", ""] {
            let k = constant_machine(&digits, &value.into()).unwrap();
            for x in ["", "1", "2102"] {
                assert_eq!(
                    k.run(&x.into(), 100).unwrap().result(),
                    Some(&value.into()),
                    "K_{value}({x})"
                );
            }
        }
    }

    #[test]
    fn reading_keeps_interior_blanks() {
        let a = Alphabet::of("a").unwrap();
        // write a, skip a cell, write a
        let m = TMachine::from_fn(a.clone(), 3, 0, |s, _| {
            Some(match s {
                0 => Transition::new(1, 'a', Move::Right),
                1 => Transition::new(2, '_', Move::Right),
                _ => Transition::new(2, 'a', Move::Halt),
            })
        })
        .unwrap();
        assert_eq!(m.run(&"".into(), 10).unwrap().result(), Some(&"a_a".into()));
    }

    #[test]
    fn left_moves_grow_the_tape() {
        let a = Alphabet::of("a").unwrap();
        let m = TMachine::from_fn(a, 2, 0, |s, _| {
            Some(if s == 0 {
                Transition::new(1, 'a', Move::Left)
            } else {
                Transition::new(1, 'a', Move::Halt)
            })
        })
        .unwrap();
        assert_eq!(m.run(&"".into(), 10).unwrap().result(), Some(&"aa".into()));
    }

    #[test]
    fn table_validation() {
        let a = ab();
        assert_eq!(
            TMachine::from_table(a.clone(), 0, 0, vec![]),
            Err(MachineError::NoStates)
        );
        assert_eq!(
            TMachine::from_table(a.clone(), 1, 1, vec![]),
            Err(MachineError::BadStart(1))
        );
        let r = TMachine::from_fn(a.clone(), 1, 0, |_, c| {
            if c == 'b' {
                None
            } else {
                Some(Transition::new(0, c, Move::Halt))
            }
        });
        assert_eq!(
            r,
            Err(MachineError::MissingTransition {
                state: 0,
                symbol: 'b'
            })
        );
        let r = TMachine::from_fn(a.clone(), 1, 0, |_, _| {
            Some(Transition::new(3, 'a', Move::Halt))
        });
        assert!(matches!(r, Err(MachineError::BadTarget { .. })));
        let r = TMachine::from_fn(a, 1, 0, |_, _| Some(Transition::new(0, 'z', Move::Halt)));
        assert!(matches!(r, Err(MachineError::BadWrite { .. })));
        let reserved = TMachine::from_fn(Alphabet::of("a|").unwrap(), 1, 0, |_, c| {
            Some(Transition::new(0, c, Move::Halt))
        });
        assert_eq!(reserved, Err(MachineError::ReservedSymbol('|')));
    }
}
