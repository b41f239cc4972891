//! Machine definition files.
//!
//! ```text
//! # identity over xyz
//! states: q0
//! alphabet: xyz
//! blank: _          (optional, `_` by default)
//! start: q0         (optional, the first state by default)
//! q0 _ -> q0 _ h
//! q0 x -> q0 x h
//! ```
//!
//! One transition per line, `state symbol -> state' symbol' move` with the
//! move one of `l`, `h`, `r`. Every (state, symbol) pair, the blank
//! included, needs exactly one transition. Lines starting with `#` or `//`
//! are comments; a trailing `;` is ignored.

use std::collections::HashMap;
use std::fmt::Write;

use problema::expr::Alphabet;
use problema::machine::{Move, TMachine, Transition};

use crate::diag::{Diagnostic, Pos};

#[derive(Debug, Clone)]
pub struct MachineDef {
    pub machine: TMachine,
    pub states: Vec<String>,
}

struct Line<'t> {
    pos: Pos,
    fields: Vec<&'t str>,
}

fn lines(text: &str, origin: Pos) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let indent = raw.chars().take_while(|c| c.is_whitespace()).count();
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("//") {
            continue;
        }
        let line = line.strip_suffix(';').unwrap_or(line).trim_end();
        let col = if i == 0 {
            origin.col + indent
        } else {
            1 + indent
        };
        out.push(Line {
            pos: Pos::new(origin.line + i, col),
            fields: line.split_whitespace().collect(),
        });
    }
    out
}

fn single(field: &str, pos: Pos, what: &str) -> Result<char, Diagnostic> {
    let mut cs = field.chars();
    match (cs.next(), cs.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Diagnostic::syntax(
            pos,
            format!("{what} must be one character, got `{field}`"),
        )),
    }
}

/// Parses a machine definition; `origin` is where `text` starts in its file.
pub fn parse_machine(text: &str, origin: Pos) -> Result<MachineDef, Diagnostic> {
    let mut states: Vec<String> = Vec::new();
    let mut declared = false;
    let mut alphabet: Option<(String, Pos)> = None;
    let mut blank = '_';
    let mut start: Option<(String, Pos)> = None;
    let mut rows: Vec<(Pos, String, char, String, char, Move)> = Vec::new();
    let mut first = origin;

    for (n, line) in lines(text, origin).into_iter().enumerate() {
        if n == 0 {
            first = line.pos;
        }
        let head = line.fields[0];
        if let Some(key) = head.strip_suffix(':') {
            let rest = &line.fields[1..];
            match key {
                "states" => {
                    if rest.is_empty() {
                        return Err(Diagnostic::syntax(line.pos, "no states listed"));
                    }
                    for s in rest {
                        if states.iter().any(|t| t == s) {
                            return Err(Diagnostic::syntax(
                                line.pos,
                                format!("state {s} listed twice"),
                            ));
                        }
                        states.push(s.to_string());
                    }
                    declared = true;
                }
                "alphabet" => alphabet = Some((rest.concat(), line.pos)),
                "blank" => blank = single(&rest.concat(), line.pos, "the blank")?,
                "start" => match rest {
                    [s] => start = Some((s.to_string(), line.pos)),
                    _ => return Err(Diagnostic::syntax(line.pos, "start names one state")),
                },
                other => {
                    return Err(Diagnostic::syntax(
                        line.pos,
                        format!("unknown header `{other}:`"),
                    ))
                }
            }
            continue;
        }
        let [from, read, arrow, to, write, mv] = line.fields[..] else {
            return Err(Diagnostic::syntax(
                line.pos,
                format!(
                    "expected `state symbol -> state symbol move`, got `{}`",
                    line.fields.join(" ")
                ),
            ));
        };
        if arrow != "->" && arrow != "→" {
            return Err(Diagnostic::syntax(
                line.pos,
                format!("expected `->`, got `{arrow}`"),
            ));
        }
        let mv = match mv {
            "l" | "L" => Move::Left,
            "h" | "H" => Move::Halt,
            "r" | "R" => Move::Right,
            other => {
                return Err(Diagnostic::syntax(
                    line.pos,
                    format!("move must be l, h or r, got `{other}`"),
                ))
            }
        };
        let read = single(read, line.pos, "a symbol")?;
        let write = single(write, line.pos, "a symbol")?;
        rows.push((line.pos, from.to_string(), read, to.to_string(), write, mv));
    }

    let (symbols, alpha_pos) =
        alphabet.ok_or_else(|| Diagnostic::syntax(first, "missing `alphabet:` header"))?;
    let alphabet = Alphabet::new(symbols.chars(), blank)
        .map_err(|e| Diagnostic::invalid(alpha_pos, e.to_string()))?;
    if !declared {
        for (_, from, _, to, _, _) in &rows {
            for s in [from, to] {
                if !states.contains(s) {
                    states.push(s.clone());
                }
            }
        }
    }
    if states.is_empty() {
        return Err(Diagnostic::syntax(
            first,
            "a machine needs at least one state",
        ));
    }
    let index: HashMap<&str, usize> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let state = |name: &str, pos: Pos| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| Diagnostic::syntax(pos, format!("undeclared state `{name}`")))
    };
    let start = match &start {
        Some((s, pos)) => state(s, *pos)?,
        None => 0,
    };
    let columns: Vec<char> = std::iter::once(blank)
        .chain(alphabet.symbols().iter().copied())
        .collect();
    let column = |c: char, pos: Pos| {
        columns
            .iter()
            .position(|&d| d == c)
            .ok_or_else(|| Diagnostic::syntax(pos, format!("symbol {c:?} is not in the alphabet")))
    };
    let mut table: Vec<Option<Transition>> = vec![None; states.len() * columns.len()];
    for (pos, from, read, to, write, mv) in &rows {
        let cell = state(from, *pos)? * columns.len() + column(*read, *pos)?;
        column(*write, *pos)?;
        if table[cell].is_some() {
            return Err(Diagnostic::syntax(
                *pos,
                format!("second transition for state {from} on {read:?}"),
            ));
        }
        table[cell] = Some(Transition::new(state(to, *pos)?, *write, *mv));
    }
    let mut full = Vec::with_capacity(table.len());
    for (cell, t) in table.into_iter().enumerate() {
        let t = t.ok_or_else(|| {
            let (s, c) = (cell / columns.len(), columns[cell % columns.len()]);
            Diagnostic::invalid(
                first,
                format!("state {} has no transition on {c:?}", states[s]),
            )
        })?;
        full.push(t);
    }
    let machine = TMachine::from_table(alphabet, states.len(), start, full)
        .map_err(|e| Diagnostic::invalid(first, e.to_string()))?;
    Ok(MachineDef { machine, states })
}

/// The definition-file text of `m`, with states named `q0`, `q1`, … unless
/// names are given.
pub fn render_machine(m: &TMachine, names: Option<&[String]>) -> String {
    let name = |i: usize| {
        names
            .and_then(|n| n.get(i).cloned())
            .unwrap_or_else(|| format!("q{i}"))
    };
    let a = m.alphabet();
    let columns: Vec<char> = std::iter::once(a.blank())
        .chain(a.symbols().iter().copied())
        .collect();
    let mut out = String::new();
    let all: Vec<String> = (0..m.state_count()).map(name).collect();
    let _ = writeln!(out, "states: {}", all.join(" "));
    let _ = writeln!(out, "alphabet: {}", a.symbols().iter().collect::<String>());
    let _ = writeln!(out, "blank: {}", a.blank());
    let _ = writeln!(out, "start: {}", name(m.start()));
    for (cell, t) in m.table().iter().enumerate() {
        let (s, c) = (cell / columns.len(), columns[cell % columns.len()]);
        let _ = writeln!(
            out,
            "{} {} -> {} {} {}",
            name(s),
            c,
            name(t.next),
            t.write,
            t.mv.letter()
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use problema::machine::{delta_machine, identity_machine};

    const ID: &str = "# identity\nstates: q0\nalphabet: xyz\nq0 _ -> q0 _ h\nq0 x -> q0 x h\nq0 y -> q0 y h\nq0 z -> q0 z h\n";

    #[test]
    fn identity_file_parses() {
        let def = parse_machine(ID, Pos::new(1, 1)).unwrap();
        assert_eq!(def.machine, identity_machine(&Alphabet::of("xyz").unwrap()));
        assert_eq!(def.states, ["q0"]);
    }

    #[test]
    fn render_then_parse_is_the_identity() {
        let ab = Alphabet::of("ab").unwrap();
        let m = delta_machine(&ab, &"ab".into()).unwrap();
        let text = render_machine(&m, None);
        assert_eq!(parse_machine(&text, Pos::new(1, 1)).unwrap().machine, m);
    }

    #[test]
    fn errors_point_at_their_line() {
        let bad = ID.replace("q0 y -> q0 y h", "q0 y -> q0 y sideways");
        let e = parse_machine(&bad, Pos::new(1, 1)).unwrap_err();
        assert_eq!(e.pos.line, 6);
        let missing = ID.replace("q0 z -> q0 z h\n", "");
        let e = parse_machine(&missing, Pos::new(1, 1)).unwrap_err();
        assert!(e.message.contains("no transition on 'z'"), "{e}");
        let twice = format!("{ID}q0 x -> q0 y h\n");
        assert_eq!(
            parse_machine(&twice, Pos::new(1, 1)).unwrap_err().pos.line,
            8
        );
        let offset = parse_machine("\n  q0 x -> q1 x h", Pos::new(10, 5)).unwrap_err();
        assert_eq!(
            offset.pos,
            Pos::new(11, 3),
            "missing alphabet is reported at the first line: {offset}"
        );
    }

    #[test]
    fn states_can_be_inferred() {
        let text = "alphabet: a\nstart: s\ns _ -> t a r\ns a -> s a r\nt _ -> t _ h\nt a -> t a h";
        let def = parse_machine(text, Pos::new(1, 1)).unwrap();
        assert_eq!(def.states, ["s", "t"]);
        assert!(def.machine.run(&"a".into(), 10).unwrap().is_halted());
    }
}
