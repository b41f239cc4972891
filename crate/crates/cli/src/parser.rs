//! Recursive-descent parser for definition files.
//!
//! ```text
//! universe U = 0..10;
//! problem p over U = x ? 2·x = x·x;
//! problem q = p ∧ ¬r;
//! machine m { alphabet: ab ... }
//! function f(x) = x + 1;
//! family F = { guess: routine {0, 2}; scan: exhaustive; };
//! resolver r = learner [f, g] on {0, 1} bind intersect;
//! ```

use crate::ast::*;
use crate::diag::{Diagnostic, Pos};
use crate::lexer::{Lexer, Tok, Token};
use crate::predicate::{BinOp, Expr};

const RESERVED: &[&str] = &["true", "false"];

pub fn parse(src: &str) -> Result<Vec<Decl>, Diagnostic> {
    let mut p = Parser {
        lx: Lexer::new(src),
    };
    let mut decls = Vec::new();
    while p.lx.peek()?.tok != Tok::Eof {
        decls.push(p.decl()?);
    }
    Ok(decls)
}

/// Parses a standalone condition such as `x ? x > 2`, as given on a command line.
pub fn parse_condition(src: &str) -> Result<(String, Expr), Diagnostic> {
    let mut p = Parser {
        lx: Lexer::new(src),
    };
    let var = p.ident("a variable")?;
    p.expect("?")?;
    let expr = p.or(&var.name)?;
    p.end()?;
    Ok((var.name, expr))
}

/// Parses a universe given on a command line, such as `0..5` or `{a, b}`.
pub fn parse_universe(src: &str) -> Result<UniverseSpec, Diagnostic> {
    let mut p = Parser {
        lx: Lexer::new(src),
    };
    let spec = p.universe()?;
    p.end()?;
    Ok(spec)
}

struct Parser {
    lx: Lexer,
}

fn expected(what: &str, t: &Token) -> Diagnostic {
    Diagnostic::syntax(t.pos, format!("expected {what}, found {}", t.tok))
}

impl Parser {
    fn peek(&mut self) -> Result<&Tok, Diagnostic> {
        Ok(&self.lx.peek()?.tok)
    }

    fn at_punct(&mut self, p: &str) -> Result<bool, Diagnostic> {
        Ok(matches!(self.peek()?, Tok::Punct(q) if *q == p))
    }

    fn at_word(&mut self, w: &str) -> Result<bool, Diagnostic> {
        Ok(matches!(self.peek()?, Tok::Ident(q) if q == w))
    }

    fn eat_punct(&mut self, p: &str) -> Result<bool, Diagnostic> {
        let hit = self.at_punct(p)?;
        if hit {
            self.lx.next_token()?;
        }
        Ok(hit)
    }

    fn eat_any(&mut self, ps: &[&str]) -> Result<bool, Diagnostic> {
        for p in ps {
            if self.eat_punct(p)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn eat_word(&mut self, w: &str) -> Result<bool, Diagnostic> {
        let hit = self.at_word(w)?;
        if hit {
            self.lx.next_token()?;
        }
        Ok(hit)
    }

    fn expect(&mut self, p: &str) -> Result<Pos, Diagnostic> {
        let t = self.lx.next_token()?;
        match t.tok {
            Tok::Punct(q) if q == p => Ok(t.pos),
            _ => Err(expected(&format!("`{p}`"), &t)),
        }
    }

    fn keyword(&mut self, w: &str) -> Result<(), Diagnostic> {
        let t = self.lx.next_token()?;
        match &t.tok {
            Tok::Ident(q) if q == w => Ok(()),
            _ => Err(expected(&format!("`{w}`"), &t)),
        }
    }

    fn ident(&mut self, what: &str) -> Result<Name, Diagnostic> {
        let t = self.lx.next_token()?;
        match t.tok {
            Tok::Ident(name) => Ok(Name { name, pos: t.pos }),
            _ => Err(expected(what, &t)),
        }
    }

    fn string(&mut self, what: &str) -> Result<String, Diagnostic> {
        let t = self.lx.next_token()?;
        match t.tok {
            Tok::Str(s) => Ok(s),
            _ => Err(expected(what, &t)),
        }
    }

    fn int(&mut self) -> Result<i64, Diagnostic> {
        let neg = self.eat_punct("-")?;
        let t = self.lx.next_token()?;
        match t.tok {
            Tok::Int(n) => Ok(if neg { -n } else { n }),
            _ => Err(expected("an integer", &t)),
        }
    }

    fn count(&mut self) -> Result<u64, Diagnostic> {
        let t = self.lx.next_token()?;
        match t.tok {
            Tok::Int(n) if n >= 0 => Ok(n as u64),
            _ => Err(expected("a count", &t)),
        }
    }

    fn end(&mut self) -> Result<(), Diagnostic> {
        let t = self.lx.next_token()?;
        match t.tok {
            Tok::Eof => Ok(()),
            _ => Err(expected("end of input", &t)),
        }
    }

    fn semi(&mut self) -> Result<(), Diagnostic> {
        self.expect(";").map(|_| ())
    }

    fn decl(&mut self) -> Result<Decl, Diagnostic> {
        let head = self.ident("a declaration keyword")?;
        let name = self.ident(&format!("a name after `{}`", head.name))?;
        if RESERVED.contains(&name.name.as_str()) {
            return Err(Diagnostic::syntax(
                name.pos,
                format!("`{}` is reserved", name.name),
            ));
        }
        let kind = match head.name.as_str() {
            "universe" => {
                self.expect("=")?;
                let spec = self.universe()?;
                self.semi()?;
                DeclKind::Universe(spec)
            }
            "problem" => {
                let over = self.over()?;
                self.expect("=")?;
                let spec = self.problem()?;
                self.semi()?;
                DeclKind::Problem { over, spec }
            }
            "machine" => DeclKind::Machine(self.machine()?),
            "function" => {
                let spec = if self.eat_punct("(")? {
                    let var = self.ident("a variable")?;
                    self.expect(")")?;
                    self.expect("=")?;
                    let expr = self.or(&var.name)?;
                    FunctionSpec::Formula { var: var.name, expr }
                } else {
                    self.expect("=")?;
                    self.function()?
                };
                self.semi()?;
                DeclKind::Function(spec)
            }
            "analogy" => {
                self.expect("=")?;
                let spec = self.analogy()?;
                self.semi()?;
                DeclKind::Analogy(spec)
            }
            "family" => {
                self.expect("=")?;
                let members = self.family()?;
                self.eat_punct(";")?;
                DeclKind::Family(members)
            }
            "resolver" => {
                self.expect("=")?;
                let spec = self.resolver()?;
                self.semi()?;
                DeclKind::Resolver(spec)
            }
            "chain" => {
                let over = self.over()?;
                self.expect("=")?;
                let spec = self.chain(name.pos)?;
                self.semi()?;
                DeclKind::Chain { over, spec }
            }
            "evidence" => {
                self.expect("=")?;
                let mut items = vec![self.evidence_item()?];
                while self.eat_punct(",")? {
                    items.push(self.evidence_item()?);
                }
                self.semi()?;
                DeclKind::Evidence(items)
            }
            other => {
                return Err(Diagnostic::syntax(
                    head.pos,
                    format!(
                        "unknown declaration `{other}` (expected universe, problem, machine, function, analogy, \
                         family, resolver, chain or evidence)"
                    ),
                ))
            }
        };
        Ok(Decl { name, kind })
    }

    fn over(&mut self) -> Result<Option<Name>, Diagnostic> {
        if self.eat_word("over")? {
            Ok(Some(self.ident("a universe name")?))
        } else {
            Ok(None)
        }
    }

    fn item(&mut self) -> Result<Item, Diagnostic> {
        let t = self.lx.peek()?.clone();
        match t.tok {
            Tok::Int(_) | Tok::Punct("-") => Ok(Item::Int(self.int()?)),
            Tok::Str(s) | Tok::Ident(s) => {
                self.lx.next_token()?;
                Ok(Item::Text(s))
            }
            _ => Err(expected("a member", &t)),
        }
    }

    /// `{a, b, ...}`, possibly empty.
    fn set(&mut self) -> Result<Vec<Item>, Diagnostic> {
        self.expect("{")?;
        let mut items = Vec::new();
        if self.eat_punct("}")? {
            return Ok(items);
        }
        loop {
            items.push(self.item()?);
            if self.eat_punct("}")? {
                return Ok(items);
            }
            self.expect(",")?;
        }
    }

    fn names(&mut self, what: &str) -> Result<Vec<Name>, Diagnostic> {
        self.expect("[")?;
        let mut out = Vec::new();
        if self.eat_punct("]")? {
            return Ok(out);
        }
        loop {
            out.push(self.ident(what)?);
            if self.eat_punct("]")? {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn universe(&mut self) -> Result<UniverseSpec, Diagnostic> {
        if self.at_punct("{")? {
            return Ok(UniverseSpec::Set(self.set()?));
        }
        if self.eat_word("strings")? {
            let alphabet = self.string("an alphabet string")?;
            let up_to = if self.eat_word("up")? {
                self.keyword("to")?;
                Some(self.count()? as usize)
            } else {
                None
            };
            return Ok(UniverseSpec::Strings { alphabet, up_to });
        }
        let pos = self.lx.here()?;
        let lo = self.int()?;
        self.expect("..")?;
        let hi = self.int()?;
        if hi < lo {
            return Err(Diagnostic::invalid(pos, format!("empty range {lo}..{hi}")));
        }
        Ok(UniverseSpec::Range(lo, hi))
    }

    fn problem(&mut self) -> Result<ProblemSpec, Diagnostic> {
        if self.at_punct("{")? {
            return Ok(ProblemSpec::Set(self.set()?));
        }
        if self.eat_word("halting")? {
            self.expect("[")?;
            let mut pairs = Vec::new();
            loop {
                self.expect("(")?;
                let m = self.ident("a machine name")?;
                self.expect(",")?;
                let data = self.item()?;
                self.expect(")")?;
                pairs.push((m, data));
                if self.eat_punct("]")? {
                    return Ok(ProblemSpec::Halting(pairs));
                }
                self.expect(",")?;
            }
        }
        if let Tok::Ident(_) = self.peek()? {
            let first = self.ident("a name")?;
            if self.eat_punct("?")? {
                let expr = self.or(&first.name)?;
                return Ok(ProblemSpec::Condition {
                    var: first.name,
                    expr,
                });
            }
            let atom = match first.name.as_str() {
                "true" => Algebra::Top,
                "false" => Algebra::Bottom,
                _ => Algebra::Ref(first),
            };
            return Ok(ProblemSpec::Algebra(self.alg_or(Some(atom))?));
        }
        Ok(ProblemSpec::Algebra(self.alg_or(None)?))
    }

    fn alg_or(&mut self, first: Option<Algebra>) -> Result<Algebra, Diagnostic> {
        let mut lhs = self.alg_and(first)?;
        while self.eat_any(&["∨", "||"])? || self.eat_word("or")? {
            lhs = Algebra::Or(Box::new(lhs), Box::new(self.alg_and(None)?));
        }
        Ok(lhs)
    }

    fn alg_and(&mut self, first: Option<Algebra>) -> Result<Algebra, Diagnostic> {
        let mut lhs = match first {
            Some(a) => a,
            None => self.alg_not()?,
        };
        while self.eat_any(&["∧", "&&"])? || self.eat_word("and")? {
            lhs = Algebra::And(Box::new(lhs), Box::new(self.alg_not()?));
        }
        Ok(lhs)
    }

    fn alg_not(&mut self) -> Result<Algebra, Diagnostic> {
        if self.eat_any(&["¬", "!"])? || self.eat_word("not")? {
            return Ok(Algebra::Not(Box::new(self.alg_not()?)));
        }
        if self.eat_punct("(")? {
            let inner = self.alg_or(None)?;
            self.expect(")")?;
            return Ok(inner);
        }
        let n = self.ident("a problem name")?;
        Ok(match n.name.as_str() {
            "true" => Algebra::Top,
            "false" => Algebra::Bottom,
            _ => Algebra::Ref(n),
        })
    }

    fn machine(&mut self) -> Result<MachineSpec, Diagnostic> {
        if self.at_punct("{")? {
            self.lx.next_token()?;
            let (text, origin) = self.lx.raw_block()?;
            self.eat_punct(";")?;
            return Ok(MachineSpec::Table { text, origin });
        }
        self.expect("=")?;
        if self.eat_word("file")? {
            let path = self.string("a file path")?;
            self.semi()?;
            return Ok(MachineSpec::File(path));
        }
        let kind = self.ident("`file` or a built-in machine")?;
        self.expect("(")?;
        let mut args = Vec::new();
        if !self.eat_punct(")")? {
            loop {
                args.push(self.string("a string argument")?);
                if self.eat_punct(")")? {
                    break;
                }
                self.expect(",")?;
            }
        }
        self.semi()?;
        Ok(MachineSpec::Builtin { kind, args })
    }

    fn function(&mut self) -> Result<FunctionSpec, Diagnostic> {
        if self.at_punct("{")? {
            self.expect("{")?;
            let mut pairs = Vec::new();
            if self.eat_punct("}")? {
                return Ok(FunctionSpec::Table(pairs));
            }
            loop {
                let from = self.item()?;
                if !self.eat_any(&["->", "↦", "=>"])? {
                    let t = self.lx.next_token()?;
                    return Err(expected("`->`", &t));
                }
                pairs.push((from, self.item()?));
                if self.eat_punct("}")? {
                    return Ok(FunctionSpec::Table(pairs));
                }
                self.expect(",")?;
            }
        }
        let head = self.ident("a function form")?;
        match head.name.as_str() {
            "identity" => Ok(FunctionSpec::Identity),
            "constant" => Ok(FunctionSpec::Constant(self.item()?)),
            "machine" => Ok(FunctionSpec::Machine(self.ident("a machine name")?)),
            var => {
                if self.eat_any(&["↦", "=>", "->"])? {
                    let var = var.to_string();
                    let expr = self.or(&var)?;
                    return Ok(FunctionSpec::Formula { var, expr });
                }
                Err(Diagnostic::syntax(
                    head.pos,
                    format!("expected identity, constant, machine, a table or `{var} ↦ formula`"),
                ))
            }
        }
    }

    fn analogy(&mut self) -> Result<AnalogySpec, Diagnostic> {
        let head = self.ident("`identity`, `shift` or `map`")?;
        match head.name.as_str() {
            "identity" => Ok(AnalogySpec::Identity),
            "shift" => Ok(AnalogySpec::Shift(self.int()?)),
            "map" => {
                let forward = self.ident("a function name")?;
                self.keyword("back")?;
                let back = self.ident("a function name")?;
                Ok(AnalogySpec::Map { forward, back })
            }
            other => Err(Diagnostic::syntax(
                head.pos,
                format!("unknown analogy form `{other}`"),
            )),
        }
    }

    fn family(&mut self) -> Result<Vec<(Name, ResolutionSpec)>, Diagnostic> {
        self.expect("{")?;
        let mut members = Vec::new();
        while !self.eat_punct("}")? {
            let t = self.lx.next_token()?;
            let label = match t.tok {
                Tok::Ident(s) | Tok::Str(s) => Name {
                    name: s,
                    pos: t.pos,
                },
                _ => return Err(expected("a member label", &t)),
            };
            self.expect(":")?;
            members.push((label, self.resolution()?));
            if !self.eat_punct(";")? {
                self.expect("}")?;
                break;
            }
        }
        Ok(members)
    }

    fn resolution(&mut self) -> Result<ResolutionSpec, Diagnostic> {
        let head = self.ident("a resolution form")?;
        match head.name.as_str() {
            "routine" => Ok(ResolutionSpec::Routine(self.set()?)),
            "trial" => Ok(ResolutionSpec::Trial(self.set()?)),
            "exhaustive" => Ok(ResolutionSpec::Exhaustive),
            "first" => Ok(ResolutionSpec::First(self.count()? as usize)),
            "analogy" => {
                let mut chain = vec![self.ident("an analogy name")?];
                while self.eat_punct(",")? {
                    chain.push(self.ident("an analogy name")?);
                }
                self.keyword("then")?;
                Ok(ResolutionSpec::Analogy { chain, inner: Box::new(self.resolution()?) })
            }
            other => Err(Diagnostic::syntax(
                head.pos,
                format!("unknown resolution form `{other}` (expected routine, trial, exhaustive, first or analogy)"),
            )),
        }
    }

    fn bind(&mut self) -> Result<Option<Bind>, Diagnostic> {
        if !self.eat_word("bind")? {
            return Ok(None);
        }
        let b = self.ident("a binding")?;
        match b.name.as_str() {
            "unbound" | "none" => Ok(Some(Bind::Unbound)),
            "intersect" => Ok(Some(Bind::Intersect)),
            "filter" | "postfilter" => Ok(Some(Bind::PostFilter)),
            other => Err(Diagnostic::syntax(
                b.pos,
                format!("unknown binding `{other}` (expected unbound, intersect or filter)"),
            )),
        }
    }

    fn on(&mut self) -> Result<Vec<Item>, Diagnostic> {
        self.keyword("on")?;
        self.set()
    }

    fn resolver(&mut self) -> Result<ResolverSpec, Diagnostic> {
        let head = self.ident("a resolver kind")?;
        Ok(match head.name.as_str() {
            "mechanism" => ResolverSpec::Mechanism(self.item()?),
            "adapter" => {
                let set = self.set()?;
                ResolverSpec::Adapter { set, bind: self.bind()? }
            }
            "perceiver" => {
                let f = self.ident("a function name")?;
                let input = self.on()?;
                ResolverSpec::Perceiver { f, input, bind: self.bind()? }
            }
            "learner" => {
                let fns = self.names("a function name")?;
                let input = self.on()?;
                ResolverSpec::Learner { fns, input, bind: self.bind()? }
            }
            "subject" => {
                let fns = self.names("a function name")?;
                let input = self.on()?;
                let bind = self.bind()?;
                let fuel = if self.eat_word("fuel")? { Some(self.count()?) } else { None };
                ResolverSpec::Subject { fns, input, bind, fuel }
            }
            other => {
                return Err(Diagnostic::syntax(
                    head.pos,
                    format!("unknown resolver kind `{other}` (expected mechanism, adapter, perceiver, learner or subject)"),
                ))
            }
        })
    }

    fn chain(&mut self, at: Pos) -> Result<ChainSpec, Diagnostic> {
        let (mut element, mut small, mut large, mut learner, mut subject) =
            (None, None, None, None, None);
        loop {
            let field = self.ident("a chain field")?;
            let dup = match field.name.as_str() {
                "element" => element.replace(self.item()?).is_some(),
                "small" => small.replace(self.set()?).is_some(),
                "large" => large.replace(self.set()?).is_some(),
                "learner" => learner.replace(self.names("a function name")?).is_some(),
                "subject" => subject.replace(self.names("a function name")?).is_some(),
                other => {
                    return Err(Diagnostic::syntax(
                        field.pos,
                        format!("unknown chain field `{other}` (expected element, small, large, learner, subject)"),
                    ))
                }
            };
            if dup {
                return Err(Diagnostic::syntax(
                    field.pos,
                    format!("`{}` given twice", field.name),
                ));
            }
            if !self.eat_punct(",")? {
                break;
            }
        }
        let missing = |what: &str| Diagnostic::syntax(at, format!("chain needs `{what}`"));
        Ok(ChainSpec {
            element: element.ok_or_else(|| missing("element"))?,
            small: small.ok_or_else(|| missing("small"))?,
            large: large.ok_or_else(|| missing("large"))?,
            learner: learner.ok_or_else(|| missing("learner"))?,
            subject: subject.ok_or_else(|| missing("subject"))?,
        })
    }

    fn evidence_item(&mut self) -> Result<EvidenceItem, Diagnostic> {
        let head = self.ident("decider, solution or unresolvable")?;
        match head.name.as_str() {
            "decider" => Ok(EvidenceItem::Decider(self.ident("a machine name")?)),
            "solution" => Ok(EvidenceItem::Solution(self.item()?)),
            "unresolvable" => Ok(EvidenceItem::Unresolvable),
            other => Err(Diagnostic::syntax(
                head.pos,
                format!("unknown evidence `{other}`"),
            )),
        }
    }

    // formulas

    fn or(&mut self, var: &str) -> Result<Expr, Diagnostic> {
        let mut lhs = self.and(var)?;
        while self.eat_any(&["∨", "||"])? || self.eat_word("or")? {
            lhs = Expr::Bin(BinOp::Or, Box::new(lhs), Box::new(self.and(var)?));
        }
        Ok(lhs)
    }

    fn and(&mut self, var: &str) -> Result<Expr, Diagnostic> {
        let mut lhs = self.not(var)?;
        while self.eat_any(&["∧", "&&"])? || self.eat_word("and")? {
            lhs = Expr::Bin(BinOp::And, Box::new(lhs), Box::new(self.not(var)?));
        }
        Ok(lhs)
    }

    fn not(&mut self, var: &str) -> Result<Expr, Diagnostic> {
        if self.eat_any(&["¬", "!"])? || self.eat_word("not")? {
            return Ok(Expr::Not(Box::new(self.not(var)?)));
        }
        self.comparison(var)
    }

    fn comparison(&mut self, var: &str) -> Result<Expr, Diagnostic> {
        let lhs = self.sum(var)?;
        let t = self.lx.peek()?.clone();
        let op = match t.tok {
            Tok::Punct("=" | "==") => BinOp::Eq,
            Tok::Punct("!=" | "≠") => BinOp::Ne,
            Tok::Punct("<") => BinOp::Lt,
            Tok::Punct("<=" | "≤") => BinOp::Le,
            Tok::Punct(">") => BinOp::Gt,
            Tok::Punct(">=" | "≥") => BinOp::Ge,
            Tok::Punct(p @ ("∈" | "∉")) => {
                self.lx.next_token()?;
                let set = self.expr_set(var)?;
                return Ok(Expr::In {
                    item: Box::new(lhs),
                    set,
                    negated: p == "∉",
                });
            }
            Tok::Ident(ref w) if w == "in" => {
                self.lx.next_token()?;
                let set = self.expr_set(var)?;
                return Ok(Expr::In {
                    item: Box::new(lhs),
                    set,
                    negated: false,
                });
            }
            _ => return Ok(lhs),
        };
        self.lx.next_token()?;
        Ok(Expr::Bin(op, Box::new(lhs), Box::new(self.sum(var)?)))
    }

    fn expr_set(&mut self, var: &str) -> Result<Vec<Expr>, Diagnostic> {
        self.expect("{")?;
        let mut out = Vec::new();
        if self.eat_punct("}")? {
            return Ok(out);
        }
        loop {
            out.push(self.sum(var)?);
            if self.eat_punct("}")? {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn sum(&mut self, var: &str) -> Result<Expr, Diagnostic> {
        let mut lhs = self.product(var)?;
        loop {
            let op = if self.eat_punct("+")? {
                BinOp::Add
            } else if self.eat_punct("-")? {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.product(var)?));
        }
    }

    fn product(&mut self, var: &str) -> Result<Expr, Diagnostic> {
        let mut lhs = self.unary(var)?;
        loop {
            let op = if self.eat_any(&["*", "·"])? {
                BinOp::Mul
            } else if self.eat_punct("/")? {
                BinOp::Div
            } else if self.eat_punct("%")? {
                BinOp::Mod
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary(var)?));
        }
    }

    fn unary(&mut self, var: &str) -> Result<Expr, Diagnostic> {
        if self.eat_punct("-")? {
            return Ok(match self.unary(var)? {
                Expr::Int(n) => Expr::Int(-n),
                e => Expr::Neg(Box::new(e)),
            });
        }
        self.atom(var)
    }

    fn atom(&mut self, var: &str) -> Result<Expr, Diagnostic> {
        let t = self.lx.next_token()?;
        match t.tok {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::Str(s) => Ok(Expr::Text(s)),
            Tok::Punct("(") => {
                let e = self.or(var)?;
                self.expect(")")?;
                Ok(e)
            }
            Tok::Ident(w) => match w.as_str() {
                "true" => Ok(Expr::Bool(true)),
                "false" => Ok(Expr::Bool(false)),
                "len" => {
                    self.expect("(")?;
                    let e = self.or(var)?;
                    self.expect(")")?;
                    Ok(Expr::Len(Box::new(e)))
                }
                _ if w == var => Ok(Expr::Var),
                _ => Err(Diagnostic::new(
                    crate::diag::DiagKind::Dangling,
                    t.pos,
                    format!("unknown name `{w}` in a formula over `{var}`"),
                )),
            },
            _ => Err(expected("a term", &t)),
        }
    }
}
