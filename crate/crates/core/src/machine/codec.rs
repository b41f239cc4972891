//! Injective encoding of machines as expressions.
//!
//! Grammar (all numbers decimal without leading zeros):
//!
//! ```text
//! program := header row*
//! header  := states '|' start '|' blank '|' symbols ';'
//! row     := next '|' write '|' move ';'
//! move    := 'l' | 'h' | 'r'
//! ```
//!
//! `symbols` lists the alphabet in order, one character each. There is one row
//! per (state, column) in row-major order, where column 0 is the blank and
//! column `i + 1` is the `i`-th symbol. Decoding only accepts canonical text,
//! so `decode(encode(m)) == m` and `encode(decode(e)) == e` whenever decoding
//! succeeds.

use std::fmt;

use crate::expr::{Alphabet, Expression};

use super::{MachineError, Move, TMachine, Transition};

pub const CELL_SEPARATOR: char = '|';
pub const ROW_TERMINATOR: char = ';';

pub(super) fn is_reserved(c: char) -> bool {
    c == CELL_SEPARATOR || c == ROW_TERMINATOR || c == super::PAIR_SEPARATOR
}

/// An expression known to decode to a machine.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Program {
    text: Expression,
    machine: TMachine,
}

impl Program {
    pub fn encode(m: &TMachine) -> Program {
        let mut s = String::new();
        let a = m.alphabet();
        s.push_str(&m.state_count().to_string());
        s.push(CELL_SEPARATOR);
        s.push_str(&m.start().to_string());
        s.push(CELL_SEPARATOR);
        s.push(a.blank());
        s.push(CELL_SEPARATOR);
        s.extend(a.symbols());
        s.push(ROW_TERMINATOR);
        for t in m.table() {
            s.push_str(&t.next.to_string());
            s.push(CELL_SEPARATOR);
            s.push(t.write);
            s.push(CELL_SEPARATOR);
            s.push(t.mv.letter());
            s.push(ROW_TERMINATOR);
        }
        Program {
            text: Expression::from(s),
            machine: m.clone(),
        }
    }

    pub fn decode(e: &Expression) -> Result<TMachine, MachineError> {
        Program::parse(e).map(|p| p.machine)
    }

    pub fn parse(e: &Expression) -> Result<Program, MachineError> {
        let machine = decode_text(e.symbols())?;
        let program = Program::encode(&machine);
        if &program.text != e {
            return Err(bad("not in canonical form"));
        }
        Ok(program)
    }

    pub fn expression(&self) -> &Expression {
        &self.text
    }

    pub fn machine(&self) -> &TMachine {
        &self.machine
    }

    pub fn into_expression(self) -> Expression {
        self.text
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.text.fmt(f)
    }
}

fn bad(msg: impl Into<String>) -> MachineError {
    MachineError::NotAProgram(msg.into())
}

fn number(cell: &[char]) -> Result<usize, MachineError> {
    if cell.is_empty()
        || !cell.iter().all(|c| c.is_ascii_digit())
        || (cell.len() > 1 && cell[0] == '0')
    {
        return Err(bad("malformed number"));
    }
    cell.iter()
        .collect::<String>()
        .parse()
        .map_err(|_| bad("number too large"))
}

fn single(cell: &[char]) -> Result<char, MachineError> {
    match cell {
        [c] => Ok(*c),
        _ => Err(bad("expected a single symbol")),
    }
}

fn decode_text(text: &[char]) -> Result<TMachine, MachineError> {
    let Some((&last, body)) = text.split_last() else {
        return Err(bad("empty"));
    };
    if last != ROW_TERMINATOR {
        return Err(bad("missing final terminator"));
    }
    let mut rows = body.split(|&c| c == ROW_TERMINATOR);
    let header: Vec<&[char]> = rows
        .next()
        .unwrap_or(&[])
        .split(|&c| c == CELL_SEPARATOR)
        .collect();
    let [states, start, blank, symbols] = header.as_slice() else {
        return Err(bad("header needs four cells"));
    };
    let states = number(states)?;
    let start = number(start)?;
    let blank = single(blank)?;
    let alphabet = Alphabet::new(symbols.iter().copied(), blank).map_err(|e| bad(e.to_string()))?;
    let columns = alphabet.size() + 1;
    let expected = states
        .checked_mul(columns)
        .ok_or_else(|| bad("table too large"))?;
    let mut table = Vec::with_capacity(expected.min(1 << 16));
    for row in rows {
        let cells: Vec<&[char]> = row.split(|&c| c == CELL_SEPARATOR).collect();
        let [next, write, mv] = cells.as_slice() else {
            return Err(bad("row needs three cells"));
        };
        let mv = Move::from_letter(single(mv)?).ok_or_else(|| bad("unknown move"))?;
        table.push(Transition::new(number(next)?, single(write)?, mv));
        if table.len() > expected {
            return Err(bad("too many rows"));
        }
    }
    if table.len() != expected {
        return Err(bad(format!(
            "expected {expected} rows, found {}",
            table.len()
        )));
    }
    TMachine::from_table(alphabet, states, start, table).map_err(|e| bad(e.to_string()))
}
