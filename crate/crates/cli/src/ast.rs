//! Declarations of a definition file, before names are resolved.

use problema::expr::Expression;

use crate::diag::Pos;
use crate::predicate::Expr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Name {
    pub name: String,
    pub pos: Pos,
}

/// A literal member: integers and words both denote expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Int(i64),
    Text(String),
}

impl Item {
    pub fn expression(&self) -> Expression {
        match self {
            Item::Int(n) => Expression::from_integer(*n),
            Item::Text(s) => Expression::from(s.as_str()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniverseSpec {
    /// Inclusive at both ends.
    Range(i64, i64),
    Set(Vec<Item>),
    Strings {
        alphabet: String,
        up_to: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algebra {
    Ref(Name),
    Top,
    Bottom,
    Not(Box<Algebra>),
    And(Box<Algebra>, Box<Algebra>),
    Or(Box<Algebra>, Box<Algebra>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProblemSpec {
    Condition { var: String, expr: Expr },
    Algebra(Algebra),
    Set(Vec<Item>),
    Halting(Vec<(Name, Item)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MachineSpec {
    Table { text: String, origin: Pos },
    File(String),
    Builtin { kind: Name, args: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionSpec {
    Identity,
    Constant(Item),
    Table(Vec<(Item, Item)>),
    Formula { var: String, expr: Expr },
    Machine(Name),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalogySpec {
    Identity,
    Shift(i64),
    Map { forward: Name, back: Name },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolutionSpec {
    Routine(Vec<Item>),
    Trial(Vec<Item>),
    Exhaustive,
    First(usize),
    Analogy {
        chain: Vec<Name>,
        inner: Box<ResolutionSpec>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bind {
    Unbound,
    Intersect,
    PostFilter,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolverSpec {
    Mechanism(Item),
    Adapter {
        set: Vec<Item>,
        bind: Option<Bind>,
    },
    Perceiver {
        f: Name,
        input: Vec<Item>,
        bind: Option<Bind>,
    },
    Learner {
        fns: Vec<Name>,
        input: Vec<Item>,
        bind: Option<Bind>,
    },
    Subject {
        fns: Vec<Name>,
        input: Vec<Item>,
        bind: Option<Bind>,
        fuel: Option<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSpec {
    pub element: Item,
    pub small: Vec<Item>,
    pub large: Vec<Item>,
    pub learner: Vec<Name>,
    pub subject: Vec<Name>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvidenceItem {
    Decider(Name),
    Solution(Item),
    Unresolvable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeclKind {
    Universe(UniverseSpec),
    Problem {
        over: Option<Name>,
        spec: ProblemSpec,
    },
    Machine(MachineSpec),
    Function(FunctionSpec),
    Analogy(AnalogySpec),
    Family(Vec<(Name, ResolutionSpec)>),
    Resolver(ResolverSpec),
    Chain {
        over: Option<Name>,
        spec: ChainSpec,
    },
    /// Named after the problem it is about.
    Evidence(Vec<EvidenceItem>),
}

impl DeclKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            DeclKind::Universe(_) => "universe",
            DeclKind::Problem { .. } => "problem",
            DeclKind::Machine(_) => "machine",
            DeclKind::Function(_) => "function",
            DeclKind::Analogy(_) => "analogy",
            DeclKind::Family(_) => "family",
            DeclKind::Resolver(_) => "resolver",
            DeclKind::Chain { .. } => "chain",
            DeclKind::Evidence(_) => "evidence",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl {
    pub name: Name,
    pub kind: DeclKind,
}
