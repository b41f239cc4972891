//! Conditions and element functions written as formulas in one variable.

use std::fmt;

use problema::expr::Expression;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "·",
            BinOp::Div => "/",
            BinOp::Mod => "%",
            BinOp::Eq => "=",
            BinOp::Ne => "≠",
            BinOp::Lt => "<",
            BinOp::Le => "≤",
            BinOp::Gt => ">",
            BinOp::Ge => "≥",
            BinOp::And => "∧",
            BinOp::Or => "∨",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Or => 1,
            BinOp::And => 2,
            BinOp::Eq | BinOp::Ne | BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => 4,
            BinOp::Add | BinOp::Sub => 5,
            BinOp::Mul | BinOp::Div | BinOp::Mod => 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// The bound variable.
    Var,
    Int(i64),
    Text(String),
    Bool(bool),
    Len(Box<Expr>),
    Not(Box<Expr>),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    In {
        item: Box<Expr>,
        set: Vec<Expr>,
        negated: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Text(Expression),
    Bool(bool),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Int(_) => "a number",
            Value::Text(_) => "an expression",
            Value::Bool(_) => "a truth value",
        }
    }

    /// The value as a universe member; truth values are not members.
    pub fn into_expression(self) -> Option<Expression> {
        match self {
            Value::Int(n) => Some(Expression::from_integer(n)),
            Value::Text(e) => Some(e),
            Value::Bool(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("`{op}` needs {want}, got {found}")]
    Type {
        op: &'static str,
        want: &'static str,
        found: &'static str,
    },
    #[error("arithmetic overflow in `{0}`")]
    Overflow(&'static str),
    #[error("division by zero")]
    DivisionByZero,
}

fn int(op: BinOp, v: Value) -> Result<i64, EvalError> {
    match v {
        Value::Int(n) => Ok(n),
        other => Err(EvalError::Type {
            op: op.symbol(),
            want: "numbers",
            found: other.kind(),
        }),
    }
}

fn truth(op: &'static str, v: Value) -> Result<bool, EvalError> {
    match v {
        Value::Bool(b) => Ok(b),
        other => Err(EvalError::Type {
            op,
            want: "truth values",
            found: other.kind(),
        }),
    }
}

fn same(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Int(m), Value::Text(e)) | (Value::Text(e), Value::Int(m)) => {
            Expression::from_integer(*m) == *e
        }
        _ => a == b,
    }
}

impl Expr {
    pub fn eval(&self, x: &Expression) -> Result<Value, EvalError> {
        Ok(match self {
            Expr::Var => x
                .as_integer()
                .map_or_else(|| Value::Text(x.clone()), Value::Int),
            Expr::Int(n) => Value::Int(*n),
            Expr::Text(s) => Value::Text(Expression::from(s.as_str())),
            Expr::Bool(b) => Value::Bool(*b),
            Expr::Len(e) => match e.eval(x)? {
                Value::Int(n) => Value::Int(Expression::from_integer(n).len() as i64),
                Value::Text(t) => Value::Int(t.len() as i64),
                other => {
                    return Err(EvalError::Type {
                        op: "len",
                        want: "an expression",
                        found: other.kind(),
                    })
                }
            },
            Expr::Not(e) => Value::Bool(!truth("¬", e.eval(x)?)?),
            Expr::Neg(e) => match e.eval(x)? {
                Value::Int(n) => Value::Int(n.checked_neg().ok_or(EvalError::Overflow("-"))?),
                other => {
                    return Err(EvalError::Type {
                        op: "-",
                        want: "numbers",
                        found: other.kind(),
                    })
                }
            },
            Expr::In { item, set, negated } => {
                let v = item.eval(x)?;
                let mut found = false;
                for s in set {
                    if same(&v, &s.eval(x)?) {
                        found = true;
                        break;
                    }
                }
                Value::Bool(found != *negated)
            }
            Expr::Bin(op, a, b) => match op {
                BinOp::And => Value::Bool(truth("∧", a.eval(x)?)? && truth("∧", b.eval(x)?)?),
                BinOp::Or => Value::Bool(truth("∨", a.eval(x)?)? || truth("∨", b.eval(x)?)?),
                BinOp::Eq => Value::Bool(same(&a.eval(x)?, &b.eval(x)?)),
                BinOp::Ne => Value::Bool(!same(&a.eval(x)?, &b.eval(x)?)),
                _ => {
                    let (m, n) = (int(*op, a.eval(x)?)?, int(*op, b.eval(x)?)?);
                    let overflow = || EvalError::Overflow(op.symbol());
                    match op {
                        BinOp::Add => Value::Int(m.checked_add(n).ok_or_else(overflow)?),
                        BinOp::Sub => Value::Int(m.checked_sub(n).ok_or_else(overflow)?),
                        BinOp::Mul => Value::Int(m.checked_mul(n).ok_or_else(overflow)?),
                        BinOp::Div if n == 0 => return Err(EvalError::DivisionByZero),
                        BinOp::Div => Value::Int(m.div_euclid(n)),
                        BinOp::Mod if n == 0 => return Err(EvalError::DivisionByZero),
                        BinOp::Mod => Value::Int(m.rem_euclid(n)),
                        BinOp::Lt => Value::Bool(m < n),
                        BinOp::Le => Value::Bool(m <= n),
                        BinOp::Gt => Value::Bool(m > n),
                        BinOp::Ge => Value::Bool(m >= n),
                        BinOp::And | BinOp::Or | BinOp::Eq | BinOp::Ne => {
                            unreachable!("handled above")
                        }
                    }
                }
            },
        })
    }

    pub fn holds(&self, x: &Expression) -> Result<bool, EvalError> {
        truth("condition", self.eval(x)?)
    }

    /// Source-like text with `var` for the variable.
    pub fn render(&self, var: &str) -> String {
        Rendered {
            e: self,
            var,
            parent: 0,
        }
        .to_string()
    }
}

struct Rendered<'e> {
    e: &'e Expr,
    var: &'e str,
    parent: u8,
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |e, parent| Rendered {
            e,
            var: self.var,
            parent,
        };
        match self.e {
            Expr::Var => f.write_str(self.var),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Text(s) => write!(f, "{s:?}"),
            Expr::Bool(b) => f.write_str(if *b { "true" } else { "false" }),
            Expr::Len(e) => write!(f, "len({})", sub(e, 0)),
            Expr::Not(e) => write!(f, "¬{}", sub(e, 7)),
            Expr::Neg(e) => write!(f, "-{}", sub(e, 7)),
            Expr::In { item, set, negated } => {
                let items: Vec<String> = set.iter().map(|s| sub(s, 0).to_string()).collect();
                let open = self.parent > 3;
                write!(
                    f,
                    "{}{} {} {{{}}}{}",
                    if open { "(" } else { "" },
                    sub(item, 4),
                    if *negated { "∉" } else { "∈" },
                    items.join(", "),
                    if open { ")" } else { "" }
                )
            }
            Expr::Bin(op, a, b) => {
                let p = op.precedence();
                let open = p < self.parent || (p == 4 && self.parent == 4);
                if open {
                    f.write_str("(")?;
                }
                write!(f, "{} {} {}", sub(a, p), op.symbol(), sub(b, p + 1))?;
                if open {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}
