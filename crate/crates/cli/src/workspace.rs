//! Named objects built from one or more definition files.

use std::collections::{HashMap, HashSet};
use std::path::{Path, PathBuf};

use problema::expr::{Alphabet, Expression, Universe, DEFAULT_BLANK};
use problema::machine::{
    constant_machine, delta_machine, expressions_up_to, identity_machine, never_halting_machine,
    symbol_map_machine, Program, TMachine,
};
use problema::problem::{Problem, SolutionSet};
use problema::resolution::{AnalogyStep, CandidateFamily, Pool, Resolution};
use problema::resolver::{analogy_step, Binding, ChainConfig, ElementFn, FunctionSet, Resolver};
use problema::topology::{halting_demo, Evidence};

use crate::ast::*;
use crate::diag::{DiagKind, Diagnostic, Pos};
use crate::parser;
use crate::predicate::Expr;
use crate::tm::{parse_machine, MachineDef};

/// Members examined when checking that a condition or formula evaluates.
pub const CONDITION_CHECKS: usize = 64;

/// Largest integer range a universe may spell out.
pub const MAX_RANGE: i64 = 1_000_000;

#[derive(Debug, Clone)]
pub struct Entry<T> {
    pub name: String,
    pub file: String,
    pub pos: Pos,
    pub value: T,
}

/// Declarations of one kind, in declaration order.
#[derive(Debug, Clone)]
pub struct Table<T> {
    entries: Vec<Entry<T>>,
    index: HashMap<String, usize>,
}

impl<T> Default for Table<T> {
    fn default() -> Self {
        Table {
            entries: Vec::new(),
            index: HashMap::new(),
        }
    }
}

impl<T> Table<T> {
    pub fn get(&self, name: &str) -> Option<&T> {
        self.entry(name).map(|e| &e.value)
    }

    pub fn entry(&self, name: &str) -> Option<&Entry<T>> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = &Entry<T>> {
        self.entries.iter()
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn insert(&mut self, name: &str, file: &str, pos: Pos, value: T) {
        self.index.insert(name.to_string(), self.entries.len());
        self.entries.push(Entry {
            name: name.to_string(),
            file: file.to_string(),
            pos,
            value,
        });
    }

    fn get_mut(&mut self, name: &str) -> Option<&mut T> {
        self.index.get(name).map(|&i| &mut self.entries[i].value)
    }
}

#[derive(Debug, Clone)]
pub struct FunctionDef {
    pub function: ElementFn,
    pub spec: FunctionSpec,
}

#[derive(Debug, Clone)]
pub struct FamilyDef {
    pub family: CandidateFamily,
    pub specs: Vec<(String, ResolutionSpec)>,
}

#[derive(Debug, Clone)]
pub struct ChainDef {
    pub universe: Universe,
    pub config: ChainConfig,
}

#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub universes: Table<Universe>,
    pub problems: Table<Problem>,
    pub machines: Table<MachineDef>,
    pub functions: Table<FunctionDef>,
    pub analogies: Table<AnalogyStep>,
    pub families: Table<FamilyDef>,
    pub resolvers: Table<Resolver>,
    pub chains: Table<ChainDef>,
    /// Keyed by the problem they are about.
    pub evidence: Table<Evidence>,
    /// Each problem's definition as written, with other problems by name.
    pub definitions: HashMap<String, String>,
}

/// A definition file's name for diagnostics and the directory its relative
/// paths start from.
#[derive(Debug, Clone)]
pub struct Source {
    pub name: String,
    pub dir: PathBuf,
    pub text: String,
}

impl Source {
    pub fn read(path: &Path) -> Result<Source, Diagnostic> {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| {
            Diagnostic::invalid(Pos::default(), format!("cannot read: {e}")).in_file(&name)
        })?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(Source { name, dir, text })
    }

    pub fn inline(name: &str, text: &str) -> Source {
        Source {
            name: name.to_string(),
            dir: PathBuf::from("."),
            text: text.to_string(),
        }
    }
}

impl Workspace {
    /// Parses and builds every source. All diagnostics are returned, in
    /// file and declaration order.
    pub fn build(sources: &[Source], fuel: u64) -> Result<Workspace, Vec<Diagnostic>> {
        let mut diags = Vec::new();
        let mut parsed = Vec::new();
        for src in sources {
            match parser::parse(&src.text) {
                Ok(decls) => parsed.push((src, decls)),
                Err(d) => diags.push(d.in_file(&src.name)),
            }
        }
        let mut b = Builder {
            ws: Workspace::default(),
            fuel,
            declared: HashMap::new(),
            failed: HashSet::new(),
            last_universe: None,
            file: String::new(),
        };
        for (src, decls) in &parsed {
            for d in decls {
                let key = (d.kind.keyword(), d.name.name.clone());
                if let Some((file, pos)) = b.declared.get(&key) {
                    diags.push(
                        Diagnostic::new(
                            DiagKind::Duplicate,
                            d.name.pos,
                            format!("{} `{}` is already defined at {file}:{pos}", key.0, key.1),
                        )
                        .in_file(&src.name),
                    );
                } else {
                    b.declared.insert(key, (src.name.clone(), d.name.pos));
                }
            }
        }
        if !diags.is_empty() {
            return Err(diags);
        }
        for (src, decls) in &parsed {
            b.file = src.name.clone();
            for d in decls {
                if let Err(Fail::Diag(diag)) = b.decl(d, src) {
                    diags.push(diag.in_file(&src.name));
                    b.failed.insert((d.kind.keyword(), d.name.name.clone()));
                } else if !b.defined(d) {
                    b.failed.insert((d.kind.keyword(), d.name.name.clone()));
                }
            }
        }
        if diags.is_empty() {
            Ok(b.ws)
        } else {
            Err(diags)
        }
    }

    pub fn from_text(name: &str, text: &str, fuel: u64) -> Result<Workspace, Vec<Diagnostic>> {
        Workspace::build(&[Source::inline(name, text)], fuel)
    }
}

pub fn build_universe(spec: &UniverseSpec, pos: Pos) -> Result<Universe, Diagnostic> {
    match spec {
        UniverseSpec::Range(lo, hi) => {
            if hi.saturating_sub(*lo) >= MAX_RANGE {
                return Err(Diagnostic::invalid(
                    pos,
                    format!("range {lo}..{hi} has more than {MAX_RANGE} members"),
                ));
            }
            Ok(Universe::int_range(*lo, *hi))
        }
        UniverseSpec::Set(list) => {
            Universe::finite(items(list)).map_err(|e| Diagnostic::invalid(pos, e.to_string()))
        }
        UniverseSpec::Strings { alphabet, up_to } => {
            let a = Alphabet::of(alphabet).map_err(|e| Diagnostic::invalid(pos, e.to_string()))?;
            let k = a.size() as i64;
            let count = (0..=up_to.unwrap_or(0)).try_fold(0i64, |acc, i| {
                k.checked_pow(u32::try_from(i).ok()?)
                    .and_then(|n| acc.checked_add(n))
            });
            if count.is_none_or(|c| c > MAX_RANGE) {
                return Err(Diagnostic::invalid(
                    pos,
                    format!("strings universe has more than {MAX_RANGE} members"),
                ));
            }
            Ok(match up_to {
                Some(n) => Universe::finite(expressions_up_to(&a, *n)).expect("distinct strings"),
                None => Universe::enumerated(a, None),
            })
        }
    }
}

enum Fail {
    Diag(Diagnostic),
    /// Refers to a declaration that already failed; reported there.
    Quiet,
}

impl From<Diagnostic> for Fail {
    fn from(d: Diagnostic) -> Self {
        Fail::Diag(d)
    }
}

type Built<T> = Result<T, Fail>;

fn invalid(pos: Pos, message: impl Into<String>) -> Fail {
    Fail::Diag(Diagnostic::invalid(pos, message))
}

struct Builder {
    ws: Workspace,
    fuel: u64,
    declared: HashMap<(&'static str, String), (String, Pos)>,
    failed: HashSet<(&'static str, String)>,
    last_universe: Option<String>,
    file: String,
}

fn items(list: &[Item]) -> Vec<Expression> {
    list.iter().map(Item::expression).collect()
}

fn set(list: &[Item]) -> SolutionSet {
    items(list).into_iter().collect()
}

fn single_char(e: &Expression) -> Option<char> {
    match e.symbols() {
        [c] => Some(*c),
        _ => None,
    }
}

impl Builder {
    fn defined(&self, d: &Decl) -> bool {
        let n = d.name.name.as_str();
        match &d.kind {
            DeclKind::Universe(_) => self.ws.universes.get(n).is_some(),
            DeclKind::Problem { .. } => self.ws.problems.get(n).is_some(),
            DeclKind::Machine(_) => self.ws.machines.get(n).is_some(),
            DeclKind::Function(_) => self.ws.functions.get(n).is_some(),
            DeclKind::Analogy(_) => self.ws.analogies.get(n).is_some(),
            DeclKind::Family(_) => self.ws.families.get(n).is_some(),
            DeclKind::Resolver(_) => self.ws.resolvers.get(n).is_some(),
            DeclKind::Chain { .. } => self.ws.chains.get(n).is_some(),
            DeclKind::Evidence(_) => self.ws.evidence.get(n).is_some(),
        }
    }

    fn resolve<T: Clone>(&self, table: &Table<T>, kind: &'static str, r: &Name) -> Built<T> {
        if let Some(v) = table.get(&r.name) {
            return Ok(v.clone());
        }
        if self.failed.contains(&(kind, r.name.clone())) {
            return Err(Fail::Quiet);
        }
        let message = if let Some((file, pos)) = self.declared.get(&(kind, r.name.clone())) {
            format!(
                "{kind} `{}` is used before its definition at {file}:{pos}",
                r.name
            )
        } else {
            let other: Vec<&str> = self
                .declared
                .keys()
                .filter(|(k, n)| *n == r.name && *k != kind)
                .map(|(k, _)| *k)
                .collect();
            match other.first() {
                Some(k) => format!("unknown {kind} `{}` (there is a {k} of that name)", r.name),
                None => format!("unknown {kind} `{}`", r.name),
            }
        };
        Err(Fail::Diag(Diagnostic::new(
            DiagKind::Dangling,
            r.pos,
            message,
        )))
    }

    fn universe_for(&self, over: &Option<Name>, at: Pos) -> Built<Universe> {
        match over {
            Some(u) => self.resolve(&self.ws.universes, "universe", u),
            None => match &self.last_universe {
                Some(u) => Ok(self
                    .ws
                    .universes
                    .get(u)
                    .expect("last universe is built")
                    .clone()),
                None => Err(invalid(
                    at,
                    "no universe declared yet; add `over U` or declare a universe first",
                )),
            },
        }
    }

    fn decl(&mut self, d: &Decl, src: &Source) -> Built<()> {
        let (name, pos, file) = (d.name.name.as_str(), d.name.pos, self.file.clone());
        match &d.kind {
            DeclKind::Universe(spec) => {
                let u = build_universe(spec, pos)?;
                self.ws.universes.insert(name, &file, pos, u);
                self.last_universe = Some(name.to_string());
            }
            DeclKind::Problem { over, spec } => {
                let (p, evidence) = self.problem(name, over, spec, pos)?;
                let text = match spec {
                    ProblemSpec::Algebra(_) => p.label().to_string(),
                    _ => p.condition().describe(),
                };
                self.ws.definitions.insert(name.to_string(), text);
                self.ws
                    .problems
                    .insert(name, &file, pos, p.with_label(name));
                if let Some(ev) = evidence {
                    self.ws.evidence.insert(name, &file, pos, ev);
                }
            }
            DeclKind::Machine(spec) => {
                let m = self.machine(spec, pos, src)?;
                self.ws.machines.insert(name, &file, pos, m);
            }
            DeclKind::Function(spec) => {
                let f = self.function(name, spec)?;
                self.ws.functions.insert(
                    name,
                    &file,
                    pos,
                    FunctionDef {
                        function: f,
                        spec: spec.clone(),
                    },
                );
            }
            DeclKind::Analogy(spec) => {
                let a = match spec {
                    AnalogySpec::Identity => AnalogyStep::identity(),
                    AnalogySpec::Shift(k) => AnalogyStep::shift(*k),
                    AnalogySpec::Map { forward, back } => {
                        let f = self.resolve(&self.ws.functions, "function", forward)?;
                        let g = self.resolve(&self.ws.functions, "function", back)?;
                        analogy_step(&f.function, &g.function)
                    }
                };
                self.ws.analogies.insert(name, &file, pos, a);
            }
            DeclKind::Family(members) => {
                let mut built = Vec::new();
                for (label, spec) in members {
                    built.push(self.resolution(spec, label.pos)?.with_label(&label.name));
                }
                let family =
                    CandidateFamily::new(built).map_err(|e| invalid(pos, e.to_string()))?;
                let specs = members
                    .iter()
                    .map(|(l, s)| (l.name.clone(), s.clone()))
                    .collect();
                self.ws
                    .families
                    .insert(name, &file, pos, FamilyDef { family, specs });
            }
            DeclKind::Resolver(spec) => {
                let r = self.resolver(spec, pos)?;
                self.ws.resolvers.insert(name, &file, pos, r);
            }
            DeclKind::Chain { over, spec } => {
                let universe = self.universe_for(over, pos)?;
                let learner = self.function_set(&spec.learner, pos)?;
                let large = set(&spec.large);
                let subject = self.programmed(&spec.subject, &large, pos)?;
                let config = ChainConfig {
                    element: spec.element.expression(),
                    small: set(&spec.small),
                    large,
                    learner,
                    subject,
                    fuel: self.fuel,
                };
                self.ws
                    .chains
                    .insert(name, &file, pos, ChainDef { universe, config });
            }
            DeclKind::Evidence(list) => {
                self.resolve(&self.ws.problems, "problem", &d.name)?;
                let mut ev = self.ws.evidence.get(name).cloned().unwrap_or_default();
                for item in list {
                    match item {
                        EvidenceItem::Decider(m) => {
                            let def = self.resolve(&self.ws.machines, "machine", m)?;
                            ev.decider = Some((m.name.clone(), def.machine));
                        }
                        EvidenceItem::Solution(s) => ev.known_solution = Some(s.expression()),
                        EvidenceItem::Unresolvable => ev.asserted_unresolvable = true,
                    }
                }
                match self.ws.evidence.get_mut(name) {
                    Some(slot) => *slot = ev,
                    None => self.ws.evidence.insert(name, &file, pos, ev),
                }
            }
        }
        Ok(())
    }

    fn problem(
        &self,
        name: &str,
        over: &Option<Name>,
        spec: &ProblemSpec,
        pos: Pos,
    ) -> Built<(Problem, Option<Evidence>)> {
        Ok(match spec {
            ProblemSpec::Condition { var, expr } => {
                let u = self.universe_for(over, pos)?;
                for m in u.members(CONDITION_CHECKS) {
                    if let Err(e) = expr.holds(&m) {
                        return Err(invalid(
                            pos,
                            format!("condition of `{name}` does not evaluate at {m}: {e}"),
                        ));
                    }
                }
                let expr: Expr = expr.clone();
                let text = format!("{var} ? {}", expr.render(var));
                (
                    Problem::from_native(u, text, move |x| expr.holds(x).unwrap_or(false)),
                    None,
                )
            }
            ProblemSpec::Set(list) => {
                let u = self.universe_for(over, pos)?;
                (
                    Problem::of_set(u, &items(list)).map_err(|e| invalid(pos, e.to_string()))?,
                    None,
                )
            }
            ProblemSpec::Algebra(a) => {
                let p = self.algebra(a, over, pos)?;
                if let Some(u) = over {
                    let named = self.resolve(&self.ws.universes, "universe", u)?;
                    if !named.same_as(p.universe()) {
                        return Err(invalid(
                            u.pos,
                            format!(
                                "`{name}` combines problems over another universe than `{}`",
                                u.name
                            ),
                        ));
                    }
                }
                (p, None)
            }
            ProblemSpec::Halting(pairs) => {
                if let Some(u) = over {
                    return Err(invalid(
                        u.pos,
                        "halting problems range over program▷data pairs; drop `over`",
                    ));
                }
                let mut pool = Vec::new();
                for (m, data) in pairs {
                    let def = self.resolve(&self.ws.machines, "machine", m)?;
                    pool.push((def.machine.encode().into_expression(), data.expression()));
                }
                let (p, ev) = halting_demo(pool);
                (p, Some(ev))
            }
        })
    }

    fn algebra(&self, a: &Algebra, over: &Option<Name>, pos: Pos) -> Built<Problem> {
        let combine = |r: Result<Problem, problema::problem::ProblemError>| {
            r.map_err(|e| invalid(pos, e.to_string()))
        };
        Ok(match a {
            Algebra::Ref(n) => self.resolve(&self.ws.problems, "problem", n)?,
            Algebra::Top => Problem::tautology(self.universe_for(over, pos)?),
            Algebra::Bottom => Problem::contradiction(self.universe_for(over, pos)?),
            Algebra::Not(x) => self.algebra(x, over, pos)?.negate(),
            Algebra::And(x, y) => combine(
                self.algebra(x, over, pos)?
                    .conjoin(&self.algebra(y, over, pos)?),
            )?,
            Algebra::Or(x, y) => combine(
                self.algebra(x, over, pos)?
                    .disjoin(&self.algebra(y, over, pos)?),
            )?,
        })
    }

    fn machine(&self, spec: &MachineSpec, pos: Pos, src: &Source) -> Built<MachineDef> {
        match spec {
            MachineSpec::Table { text, origin } => Ok(parse_machine(text, *origin)?),
            MachineSpec::File(path) => {
                let full = src.dir.join(path);
                let text = std::fs::read_to_string(&full)
                    .map_err(|e| invalid(pos, format!("cannot read {}: {e}", full.display())))?;
                parse_machine(&text, Pos::new(1, 1))
                    .map_err(|d| Fail::Diag(d.in_file(full.display().to_string())))
            }
            MachineSpec::Builtin { kind, args } => {
                let arity = |n: usize| -> Built<()> {
                    if args.len() == n {
                        Ok(())
                    } else {
                        Err(invalid(
                            kind.pos,
                            format!(
                                "`{}` takes {n} string argument(s), got {}",
                                kind.name,
                                args.len()
                            ),
                        ))
                    }
                };
                let alphabet = || -> Built<Alphabet> {
                    Alphabet::of(&args[0]).map_err(|e| invalid(kind.pos, e.to_string()))
                };
                let fail = |e: problema::machine::MachineError| invalid(kind.pos, e.to_string());
                let machine: TMachine = match kind.name.as_str() {
                    "identity" => {
                        arity(1)?;
                        identity_machine(&alphabet()?)
                    }
                    "never" => {
                        arity(1)?;
                        never_halting_machine(&alphabet()?)
                    }
                    "delta" => {
                        arity(2)?;
                        delta_machine(&alphabet()?, &args[1].as_str().into()).map_err(fail)?
                    }
                    "constant" => {
                        arity(2)?;
                        constant_machine(&alphabet()?, &args[1].as_str().into()).map_err(fail)?
                    }
                    "successor" => {
                        arity(1)?;
                        let a = alphabet()?;
                        let symbols = a.symbols().to_vec();
                        symbol_map_machine(&a, |c| {
                            let i = symbols.iter().position(|&s| s == c).unwrap_or(0);
                            symbols[(i + 1) % symbols.len()]
                        })
                        .map_err(fail)?
                    }
                    other => {
                        return Err(invalid(
                            kind.pos,
                            format!("unknown built-in machine `{other}` (expected identity, never, delta, constant or successor)"),
                        ))
                    }
                };
                Ok(MachineDef {
                    machine,
                    states: Vec::new(),
                })
            }
        }
    }

    fn function(&self, name: &str, spec: &FunctionSpec) -> Built<ElementFn> {
        Ok(match spec {
            FunctionSpec::Identity => ElementFn::identity().with_name(name),
            FunctionSpec::Constant(v) => ElementFn::constant(v.expression()).with_name(name),
            FunctionSpec::Table(pairs) => ElementFn::from_table(
                name,
                pairs.iter().map(|(a, b)| (a.expression(), b.expression())),
            ),
            FunctionSpec::Formula { expr, .. } => {
                let expr = expr.clone();
                ElementFn::new(name, move |e| {
                    expr.eval(e).ok().and_then(|v| v.into_expression())
                })
            }
            FunctionSpec::Machine(m) => {
                let def = self.resolve(&self.ws.machines, "machine", m)?;
                ElementFn::from_program(name, Program::encode(&def.machine), self.fuel)
            }
        })
    }

    fn function_set(&self, names: &[Name], pos: Pos) -> Built<FunctionSet> {
        let fns = names
            .iter()
            .map(|n| {
                self.resolve(&self.ws.functions, "function", n)
                    .map(|d| d.function)
            })
            .collect::<Built<Vec<_>>>()?;
        FunctionSet::new(fns).map_err(|e| invalid(pos, e.to_string()))
    }

    /// The functions with programs a subject can run on `input`; programs
    /// are synthesized for identities, constants and one-symbol tables.
    fn programmed(&self, names: &[Name], input: &SolutionSet, pos: Pos) -> Built<FunctionSet> {
        let defs = names
            .iter()
            .map(|n| {
                self.resolve(&self.ws.functions, "function", n)
                    .map(|d| (n, d))
            })
            .collect::<Built<Vec<_>>>()?;
        let mut symbols: Vec<char> = input.iter().flat_map(|e| e.symbols().to_vec()).collect();
        for (_, d) in &defs {
            match &d.spec {
                FunctionSpec::Constant(v) => symbols.extend(v.expression().symbols()),
                FunctionSpec::Table(pairs) => {
                    for (a, b) in pairs {
                        symbols.extend(a.expression().symbols());
                        symbols.extend(b.expression().symbols());
                    }
                }
                _ => {}
            }
        }
        symbols.sort_unstable();
        symbols.dedup();
        let blank = [DEFAULT_BLANK, '#', '$', '~']
            .into_iter()
            .find(|c| !symbols.contains(c))
            .unwrap_or(DEFAULT_BLANK);
        let alphabet = Alphabet::new(symbols, blank).map_err(|e| invalid(pos, e.to_string()))?;
        let mut out = Vec::new();
        for (n, d) in defs {
            let f = d.function;
            if f.program().is_some() {
                out.push(f);
                continue;
            }
            let machine = match &d.spec {
                FunctionSpec::Identity => Some(Ok(identity_machine(&alphabet))),
                FunctionSpec::Constant(v) => Some(constant_machine(&alphabet, &v.expression())),
                FunctionSpec::Table(pairs) => {
                    let map: Option<Vec<(char, char)>> = pairs
                        .iter()
                        .map(|(a, b)| {
                            Some((single_char(&a.expression())?, single_char(&b.expression())?))
                        })
                        .collect();
                    map.map(|map| {
                        symbol_map_machine(&alphabet, |c| {
                            map.iter().find(|(a, _)| *a == c).map_or(c, |(_, b)| *b)
                        })
                    })
                }
                _ => None,
            };
            let Some(machine) = machine else {
                return Err(invalid(
                    n.pos,
                    format!(
                        "function `{}` has no program; subjects run identities, constants, one-symbol tables \
                         and machine functions",
                        n.name
                    ),
                ));
            };
            let machine = machine.map_err(|e| invalid(n.pos, e.to_string()))?;
            out.push(f.with_program(Program::encode(&machine)));
        }
        FunctionSet::new(out).map_err(|e| invalid(pos, e.to_string()))
    }

    fn resolution(&self, spec: &ResolutionSpec, pos: Pos) -> Built<Resolution> {
        Ok(match spec {
            ResolutionSpec::Routine(list) => Resolution::routine(set(list)),
            ResolutionSpec::Trial(list) => Resolution::trial(set(list)),
            ResolutionSpec::Exhaustive => Resolution::exhaustive(),
            ResolutionSpec::First(k) => Resolution::trial_first(Pool::Universe, *k),
            ResolutionSpec::Analogy { chain, inner } => {
                let steps = chain
                    .iter()
                    .map(|a| self.resolve(&self.ws.analogies, "analogy", a))
                    .collect::<Built<Vec<_>>>()?;
                let inner = self.resolution(inner, pos)?;
                Resolution::analogy(steps, inner).map_err(|e| invalid(pos, e.to_string()))?
            }
        })
    }

    fn resolver(&self, spec: &ResolverSpec, pos: Pos) -> Built<Resolver> {
        let binding = |b: &Option<Bind>, default: Binding| match b {
            None => default,
            Some(Bind::Unbound) => Binding::Unbound,
            Some(Bind::Intersect) => Binding::Intersect,
            Some(Bind::PostFilter) => Binding::PostFilter,
        };
        Ok(match spec {
            ResolverSpec::Mechanism(s) => Resolver::Mechanism(s.expression()),
            ResolverSpec::Adapter { set: s, bind } => Resolver::Adapter {
                set: set(s),
                bind: binding(bind, Binding::Intersect),
            },
            ResolverSpec::Perceiver { f, input, bind } => Resolver::Perceiver {
                f: self.resolve(&self.ws.functions, "function", f)?.function,
                input: set(input),
                bind: binding(bind, Binding::Intersect),
            },
            ResolverSpec::Learner { fns, input, bind } => Resolver::Learner {
                fns: self.function_set(fns, pos)?,
                input: set(input),
                bind: binding(bind, Binding::PostFilter),
            },
            ResolverSpec::Subject {
                fns,
                input,
                bind,
                fuel,
            } => {
                let input = set(input);
                Resolver::Subject {
                    library: self.programmed(fns, &input, pos)?,
                    input,
                    bind: binding(bind, Binding::PostFilter),
                    fuel: fuel.unwrap_or(self.fuel),
                }
            }
        })
    }
}
