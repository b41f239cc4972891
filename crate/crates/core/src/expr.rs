//! Alphabets, expressions and the length-then-lexicographic numbering of
//! expressions.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Rendering of the empty expression in reports.
pub const EMPTY_RENDERING: &str = "ε";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("alphabet symbol {0:?} appears twice")]
    DuplicateSymbol(char),
    #[error("blank {0:?} must not be one of the alphabet symbols")]
    BlankInSymbols(char),
    #[error("symbol {symbol:?} of expression {expr} is outside the alphabet")]
    OutsideAlphabet { symbol: char, expr: Expression },
    #[error("index of expression {0} does not fit in 64 bits")]
    IndexOverflow(Expression),
    #[error("universe member {0} is listed twice")]
    DuplicateMember(Expression),
}

/// A finite string of symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Expression(Vec<char>);

impl Expression {
    pub fn empty() -> Self {
        Expression(Vec::new())
    }

    pub fn from_symbols(symbols: Vec<char>) -> Self {
        Expression(symbols)
    }

    pub fn symbols(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &Expression) -> Expression {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Expression(v)
    }

    /// Report form: verbatim symbols, `ε` for the empty expression.
    pub fn render(&self) -> String {
        if self.0.is_empty() {
            EMPTY_RENDERING.to_string()
        } else {
            self.to_string()
        }
    }

    /// Interprets the expression as a decimal integer (optional leading `-`).
    pub fn as_integer(&self) -> Option<i64> {
        let s: String = self.0.iter().collect();
        let digits = s.strip_prefix('-').unwrap_or(&s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    }

    pub fn from_integer(n: i64) -> Self {
        Expression::from(n.to_string().as_str())
    }
}

impl From<&str> for Expression {
    fn from(s: &str) -> Self {
        Expression(s.chars().collect())
    }
}

impl From<String> for Expression {
    fn from(s: String) -> Self {
        Expression(s.chars().collect())
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for Expression {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Expression {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Ok(Expression::from(s))
    }
}

/// An ordered finite set of symbols plus a distinguished blank outside it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
    blank: char,
}

pub const DEFAULT_BLANK: char = '_';

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>, blank: char) -> Result<Self, ExprError> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(ExprError::EmptyAlphabet);
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(ExprError::DuplicateSymbol(*c));
            }
        }
        if symbols.contains(&blank) {
            return Err(ExprError::BlankInSymbols(blank));
        }
        Ok(Alphabet { symbols, blank })
    }

    /// Alphabet from the characters of `symbols`, blank `_`.
    pub fn of(symbols: &str) -> Result<Self, ExprError> {
        Alphabet::new(symbols.chars(), DEFAULT_BLANK)
    }

    pub fn decimal() -> Self {
        Alphabet::of("0123456789").expect("decimal digits are distinct")
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn blank(&self) -> char {
        self.blank
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn index_of_symbol(&self, c: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == c)
    }

    pub fn contains(&self, c: char) -> bool {
        self.symbols.contains(&c)
    }

    pub fn check(&self, e: &Expression) -> Result<(), ExprError> {
        match e.symbols().iter().find(|c| !self.contains(**c)) {
            Some(&symbol) => Err(ExprError::OutsideAlphabet {
                symbol,
                expr: e.clone(),
            }),
            None => Ok(()),
        }
    }

    /// The expression at position `index` of the canonical order: shorter
    /// strings first, strings of equal length ordered by alphabet order.
    pub fn enumerate(&self, index: u64) -> Expression {
        let s = self.symbols.len() as u64;
        if s == 1 {
            return Expression(vec![self.symbols[0]; index as usize]);
        }
        let mut rest = index;
        let mut len = 0usize;
        let mut count: u64 = 1;
        while rest >= count {
            rest -= count;
            len += 1;
            count = count.saturating_mul(s);
        }
        let mut out = vec![self.symbols[0]; len];
        for slot in out.iter_mut().rev() {
            *slot = self.symbols[(rest % s) as usize];
            rest /= s;
        }
        Expression(out)
    }

    /// Inverse of [`Alphabet::enumerate`].
    pub fn index_of(&self, e: &Expression) -> Result<u64, ExprError> {
        let s = self.symbols.len() as u64;
        if s == 1 {
            self.check(e)?;
            return Ok(e.len() as u64);
        }
        let overflow = || ExprError::IndexOverflow(e.clone());
        // strings shorter than e
        let mut shorter: u64 = 0;
        let mut power: u64 = 1;
        for _ in 0..e.len() {
            shorter = shorter.checked_add(power).ok_or_else(overflow)?;
            power = power.checked_mul(s).ok_or_else(overflow)?;
        }
        let mut offset: u64 = 0;
        for &c in e.symbols() {
            let digit = self
                .index_of_symbol(c)
                .ok_or_else(|| ExprError::OutsideAlphabet {
                    symbol: c,
                    expr: e.clone(),
                })?;
            offset = offset
                .checked_mul(s)
                .and_then(|v| v.checked_add(digit as u64))
                .ok_or_else(overflow)?;
        }
        shorter.checked_add(offset).ok_or_else(overflow)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}} blank {}", self.blank)
    }
}

#[derive(Debug)]
struct FiniteMembers {
    order: Vec<Expression>,
    position: HashMap<Expression, usize>,
}

/// The candidate space of a problem.
#[derive(Debug, Clone)]
pub enum Universe {
    Finite(Arc<FiniteUniverse>),
    Enumerated {
        alphabet: Alphabet,
        cap: Option<u64>,
    },
}

/// Explicit ordered set of distinct expressions.
#[derive(Debug)]
pub struct FiniteUniverse(FiniteMembers);

impl FiniteUniverse {
    pub fn members(&self) -> &[Expression] {
        &self.0.order
    }

    pub fn position(&self, e: &Expression) -> Option<usize> {
        self.0.position.get(e).copied()
    }
}

impl Universe {
    pub fn finite(members: impl IntoIterator<Item = Expression>) -> Result<Self, ExprError> {
        let mut order = Vec::new();
        let mut position = HashMap::new();
        for e in members {
            if position.insert(e.clone(), order.len()).is_some() {
                return Err(ExprError::DuplicateMember(e));
            }
            order.push(e);
        }
        Ok(Universe::Finite(Arc::new(FiniteUniverse(FiniteMembers {
            order,
            position,
        }))))
    }

    /// Finite universe of symbol strings, e.g. `Universe::of(&["a", "b", "ab"])`.
    pub fn of(members: &[&str]) -> Result<Self, ExprError> {
        Universe::finite(members.iter().map(|m| Expression::from(*m)))
    }

    /// Decimal integers `lo..=hi`, spelled out explicitly.
    pub fn int_range(lo: i64, hi: i64) -> Self {
        Universe::finite((lo..=hi).map(Expression::from_integer)).expect("integers are distinct")
    }

    pub fn enumerated(alphabet: Alphabet, cap: Option<u64>) -> Self {
        Universe::Enumerated { alphabet, cap }
    }

    pub fn empty() -> Self {
        Universe::finite(std::iter::empty()).expect("empty universe")
    }

    /// Number of members, `None` for an uncapped enumerated universe.
    pub fn len(&self) -> Option<u64> {
        match self {
            Universe::Finite(f) => Some(f.members().len() as u64),
            Universe::Enumerated { cap, .. } => *cap,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn is_finite(&self) -> bool {
        self.len().is_some()
    }

    pub fn as_finite(&self) -> Option<&FiniteUniverse> {
        match self {
            Universe::Finite(f) => Some(f),
            Universe::Enumerated { .. } => None,
        }
    }

    /// The first `limit` members in universe order.
    pub fn members(&self, limit: usize) -> Vec<Expression> {
        match self {
            Universe::Finite(f) => f.members().iter().take(limit).cloned().collect(),
            Universe::Enumerated { alphabet, cap } => {
                let n = cap.map_or(limit as u64, |c| c.min(limit as u64));
                (0..n).map(|i| alphabet.enumerate(i)).collect()
            }
        }
    }

    /// All members of a finite universe.
    pub fn all_members(&self) -> Option<Vec<Expression>> {
        self.len().map(|n| self.members(n as usize))
    }

    /// Lazy iteration in universe order (unbounded when uncapped).
    pub fn iter(&self) -> Box<dyn Iterator<Item = Expression> + Send + '_> {
        match self {
            Universe::Finite(f) => Box::new(f.members().iter().cloned()),
            Universe::Enumerated { alphabet, cap } => {
                let end = cap.unwrap_or(u64::MAX);
                Box::new((0..end).map(move |i| alphabet.enumerate(i)))
            }
        }
    }

    /// Position of `e` in universe order.
    pub fn position(&self, e: &Expression) -> Option<u64> {
        match self {
            Universe::Finite(f) => f.position(e).map(|p| p as u64),
            Universe::Enumerated { alphabet, cap } => {
                let i = alphabet.index_of(e).ok()?;
                match cap {
                    Some(c) if i >= *c => None,
                    _ => Some(i),
                }
            }
        }
    }

    pub fn contains(&self, e: &Expression) -> bool {
        match self {
            // long members have no 64-bit index but still belong
            Universe::Enumerated {
                alphabet,
                cap: None,
            } => alphabet.check(e).is_ok(),
            _ => self.position(e).is_some(),
        }
    }

    /// The members among `items`, deduplicated and in universe order.
    pub fn sorted_members(&self, items: impl IntoIterator<Item = Expression>) -> Vec<Expression> {
        let mut inside: Vec<Expression> = items.into_iter().filter(|e| self.contains(e)).collect();
        match self {
            Universe::Finite(f) => inside.sort_by_key(|e| f.position(e)),
            Universe::Enumerated { alphabet, .. } => inside.sort_by_cached_key(|e| {
                let digits: Vec<usize> = e
                    .symbols()
                    .iter()
                    .filter_map(|&c| alphabet.index_of_symbol(c))
                    .collect();
                (digits.len(), digits)
            }),
        }
        inside.dedup();
        inside
    }

    /// Structural equality of universes.
    pub fn same_as(&self, other: &Universe) -> bool {
        match (self, other) {
            (Universe::Finite(a), Universe::Finite(b)) => {
                Arc::ptr_eq(a, b) || a.members() == b.members()
            }
            (
                Universe::Enumerated {
                    alphabet: a,
                    cap: ca,
                },
                Universe::Enumerated {
                    alphabet: b,
                    cap: cb,
                },
            ) => a == b && ca == cb,
            _ => false,
        }
    }

    /// Short human description.
    pub fn describe(&self) -> String {
        match self {
            Universe::Finite(f) => {
                let items: Vec<String> = f.members().iter().map(Expression::render).collect();
                format!("{{{}}}", items.join(","))
            }
            Universe::Enumerated { alphabet, cap } => match cap {
                Some(c) => format!("{alphabet}* (first {c})"),
                None => format!("{alphabet}*"),
            },
        }
    }
}
