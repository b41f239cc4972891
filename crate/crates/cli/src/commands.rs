//! One function per subcommand, each producing a [`Report`].

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use problema::expr::{Expression, Universe};
use problema::machine::{Program, RunOutcome, TMachine};
use problema::problem::Problem;
use problema::resolution::{iterate_meta, meta_trial, Family, MetaResolution};
use problema::resolver::{
    evolution_chain, hierarchy_check, range_power, ChainError, ProblemSpace, Resolver,
};
use problema::suites::{self, Suite, SuiteConfig};
use problema::sweep::Strategy;
use problema::topology::classify;

use crate::args::{Cli, Command, MachineArgs, ProblemArgs, ResolverCommand, SpaceArgs, TmCommand};
use crate::ast::{Item, ResolutionSpec};
use crate::diag::{Diagnostic, Pos};
use crate::parser::parse_universe;
use crate::report::{Report, Status};
use crate::tm::{parse_machine, render_machine, MachineDef};
use crate::workspace::{build_universe, Source, Workspace};

/// Most members of an unbounded universe `solve` examines.
pub const MAX_SCAN: u64 = 100_000;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))]
    Definitions(Vec<Diagnostic>),
    #[error("{0}")]
    Usage(String),
}

impl From<Diagnostic> for CommandError {
    fn from(d: Diagnostic) -> Self {
        CommandError::Definitions(vec![d])
    }
}

fn usage(e: impl ToString) -> CommandError {
    CommandError::Usage(e.to_string())
}

struct Outcome {
    status: Status,
    result: Value,
    caveats: Vec<String>,
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Outcome {
            status: Status::Ok,
            result,
            caveats: Vec::new(),
        }
    }

    fn holds(holds: bool, result: Value) -> Self {
        Outcome {
            status: if holds { Status::Ok } else { Status::Violation },
            result,
            caveats: Vec::new(),
        }
    }
}

struct Ctx {
    fuel: u64,
    limit: usize,
    strategy: Strategy,
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report parts serialize")
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Solve(_) => "solve",
        Command::Classify { .. } => "classify",
        Command::Tm {
            action: TmCommand::Run { .. },
        } => "tm run",
        Command::Tm {
            action: TmCommand::Encode { .. },
        } => "tm encode",
        Command::Tm {
            action: TmCommand::Decode { .. },
        } => "tm decode",
        Command::Resolver {
            action: ResolverCommand::Range(_),
        } => "resolver range",
        Command::Resolver {
            action: ResolverCommand::Power(_),
        } => "resolver power",
        Command::Resolver {
            action: ResolverCommand::Chain { .. },
        } => "resolver chain",
        Command::Resolver {
            action: ResolverCommand::Hierarchy { .. },
        } => "resolver hierarchy",
        Command::Meta { .. } => "meta",
        Command::Verify { .. } => "verify",
    }
}

/// Runs a parsed command line; `args` is echoed into the report.
pub fn run(cli: &Cli, args: Vec<String>) -> Report {
    let ctx = Ctx {
        fuel: cli.fuel,
        limit: cli.limit,
        strategy: cli.strategy,
    };
    let name = command_name(&cli.command);
    match dispatch(&cli.command, &ctx) {
        Ok(o) => Report::new(name, args, cli.fuel, o.status, o.result, o.caveats),
        Err(e) => {
            let errors: Vec<Value> = match &e {
                CommandError::Definitions(ds) => ds
                    .iter()
                    .map(|d| {
                        json!({
                            "file": d.file,
                            "line": d.pos.line,
                            "column": d.pos.col,
                            "kind": d.kind.to_string(),
                            "message": d.message,
                        })
                    })
                    .collect(),
                CommandError::Usage(m) => vec![json!({ "message": m })],
            };
            Report::new(
                name,
                args,
                cli.fuel,
                Status::Usage,
                json!({ "errors": errors, "text": e.to_string() }),
                Vec::new(),
            )
        }
    }
}

fn dispatch(c: &Command, ctx: &Ctx) -> Result<Outcome, CommandError> {
    match c {
        Command::Check { files } => check(files, ctx),
        Command::Solve(target) => solve(target, ctx),
        Command::Classify {
            target,
            decider,
            solution,
            unresolvable,
        } => classify_cmd(
            target,
            decider.as_deref(),
            solution.as_deref(),
            *unresolvable,
            ctx,
        ),
        Command::Tm { action } => tm(action, ctx),
        Command::Resolver { action } => resolver(action, ctx),
        Command::Meta { target, families } => meta(target, families, ctx),
        Command::Verify {
            suite,
            seed,
            size,
            inject_fault,
        } => {
            let cfg = SuiteConfig {
                size: *size,
                seed: *seed,
                fuel: ctx.fuel,
                fault: *inject_fault,
                strategy: ctx.strategy,
            };
            verify(suite, cfg)
        }
    }
}

fn load(files: &[PathBuf], fuel: u64) -> Result<Workspace, CommandError> {
    let sources = files
        .iter()
        .map(|f| Source::read(f))
        .collect::<Result<Vec<_>, _>>()?;
    Workspace::build(&sources, fuel).map_err(CommandError::Definitions)
}

fn members(items: impl IntoIterator<Item = Expression>, limit: usize) -> Value {
    let all: Vec<String> = items.into_iter().map(|e| e.render()).collect();
    let shown: Vec<&String> = all.iter().take(limit).collect();
    json!({ "count": all.len(), "members": shown, "truncated": all.len() > limit })
}

fn universe_size(u: &Universe) -> Value {
    u.len().map_or(Value::Null, Value::from)
}

fn check(files: &[PathBuf], ctx: &Ctx) -> Result<Outcome, CommandError> {
    let ws = load(files, ctx.fuel)?;
    let universes: Vec<Value> = ws
        .universes
        .iter()
        .map(|e| json!({ "name": e.name, "size": universe_size(&e.value), "universe": e.value.describe() }))
        .collect();
    let mut problems = Vec::new();
    for e in ws.problems.iter() {
        let p = &e.value;
        let solutions = match p.universe().len() {
            Some(_) => members(
                p.solutions_with(ctx.strategy)
                    .map_err(usage)?
                    .iter()
                    .cloned(),
                ctx.limit,
            ),
            None => Value::Null,
        };
        problems.push(json!({
            "name": e.name,
            "at": format!("{}:{}", e.file, e.pos),
            "universe": p.universe().describe(),
            "definition": ws.definitions.get(&e.name).cloned().unwrap_or_else(|| p.condition().describe()),
            "solutions": solutions,
        }));
    }
    let machines: Vec<Value> = ws
        .machines
        .iter()
        .map(|e| {
            let m = &e.value.machine;
            json!({ "name": e.name, "states": m.state_count(), "alphabet": m.alphabet().to_string() })
        })
        .collect();
    let functions: Vec<Value> = ws
        .functions
        .iter()
        .map(|e| json!({ "name": e.name, "program": e.value.function.program().is_some() }))
        .collect();
    let analogies: Vec<Value> = ws
        .analogies
        .iter()
        .map(|e| json!({ "name": e.name, "step": e.value.name() }))
        .collect();
    let families: Vec<Value> = ws
        .families
        .iter()
        .map(|e| {
            let members: Vec<Value> = e
                .value
                .family
                .members()
                .iter()
                .map(|r| json!({ "label": r.label(), "type": r.kind().to_string() }))
                .collect();
            json!({ "name": e.name, "members": members })
        })
        .collect();
    let resolvers: Vec<Value> = ws
        .resolvers
        .iter()
        .map(
            |e| json!({ "name": e.name, "level": e.value.level(), "resolver": e.value.describe() }),
        )
        .collect();
    let chains: Vec<Value> = ws
        .chains
        .iter()
        .map(|e| json!({ "name": e.name, "universe": e.value.universe.describe() }))
        .collect();
    let evidence: Vec<Value> = ws
        .evidence
        .iter()
        .map(|e| {
            let ev = &e.value;
            json!({
                "problem": e.name,
                "decider": ev.decider.as_ref().map(|(n, _)| n.clone()),
                "enumerator": ev.enumerator.as_ref().map(|x| x.name.clone()),
                "solution": ev.known_solution.as_ref().map(Expression::render),
                "asserted_unresolvable": ev.asserted_unresolvable,
            })
        })
        .collect();
    let files: Vec<String> = files.iter().map(|f| f.display().to_string()).collect();
    Ok(Outcome::ok(json!({
        "files": files,
        "universes": universes,
        "problems": problems,
        "machines": machines,
        "functions": functions,
        "analogies": analogies,
        "families": families,
        "resolvers": resolvers,
        "chains": chains,
        "evidence": evidence,
    })))
}

/// The workspace and the selected problems, in declaration order.
fn problems(
    target: &ProblemArgs,
    ctx: &Ctx,
) -> Result<(Workspace, Vec<(String, Problem)>), CommandError> {
    let mut files = vec![target.problem.clone()];
    files.extend(target.defs.iter().cloned());
    let ws = load(&files, ctx.fuel)?;
    let chosen: Vec<(String, Problem)> = match &target.name {
        Some(n) => {
            let p = ws.problems.get(n).ok_or_else(|| {
                usage(format!(
                    "no problem `{n}`; defined: {}",
                    ws.problems.names().join(", ")
                ))
            })?;
            vec![(n.clone(), p.clone())]
        }
        None => ws
            .problems
            .iter()
            .map(|e| (e.name.clone(), e.value.clone()))
            .collect(),
    };
    if chosen.is_empty() {
        return Err(usage(format!(
            "{} defines no problem",
            target.problem.display()
        )));
    }
    Ok((ws, chosen))
}

fn solve(target: &ProblemArgs, ctx: &Ctx) -> Result<Outcome, CommandError> {
    let (_, chosen) = problems(target, ctx)?;
    let mut out = Vec::new();
    let mut caveats = Vec::new();
    for (name, p) in chosen {
        if p.universe().is_finite() {
            let sigma = p.solutions_with(ctx.strategy).map_err(usage)?;
            out.push(json!({
                "problem": name,
                "universe": p.universe().describe(),
                "complete": true,
                "solutions": members(sigma.iter().cloned(), ctx.limit),
            }));
        } else {
            let scan = ctx.fuel.min(MAX_SCAN);
            let budget = usize::try_from(scan).unwrap_or(usize::MAX);
            let found = p
                .stream(budget)
                .take(ctx.limit)
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage)?;
            caveats.push(format!(
                "{name}: the universe is unbounded; solutions listed are those among its first {scan} members"
            ));
            out.push(json!({
                "problem": name,
                "universe": p.universe().describe(),
                "complete": false,
                "solutions": members(found, ctx.limit),
            }));
        }
    }
    Ok(Outcome {
        status: Status::Ok,
        result: json!({ "problems": out }),
        caveats,
    })
}

fn classify_cmd(
    target: &ProblemArgs,
    decider: Option<&Path>,
    solution: Option<&str>,
    unresolvable: bool,
    ctx: &Ctx,
) -> Result<Outcome, CommandError> {
    let (ws, chosen) = problems(target, ctx)?;
    let decider = decider.map(|path| -> Result<(String, TMachine), CommandError> {
        let def = read_machine(path)?;
        let name = path.file_stem().map_or_else(
            || path.display().to_string(),
            |s| s.to_string_lossy().into_owned(),
        );
        Ok((name, def.machine))
    });
    let decider = decider.transpose()?;
    let mut reports = Vec::new();
    let mut caveats = Vec::new();
    let mut unknown = false;
    for (name, p) in chosen {
        let mut ev = ws.evidence.get(&name).cloned().unwrap_or_default();
        if let Some(d) = &decider {
            ev.decider = Some(d.clone());
        }
        if let Some(s) = solution {
            ev.known_solution = Some(Expression::from(s));
        }
        ev.asserted_unresolvable |= unresolvable;
        let report = classify(&p, &ev, ctx.fuel).map_err(usage)?;
        unknown |= report.has_unknown();
        caveats.extend(report.caveats.iter().map(|c| format!("{name}: {c}")));
        reports.push(json!({ "name": name, "report": to_value(&report) }));
    }
    let status = if unknown {
        Status::Inconclusive
    } else {
        Status::Ok
    };
    Ok(Outcome {
        status,
        result: json!({ "classifications": reports }),
        caveats,
    })
}

fn read_machine(path: &Path) -> Result<MachineDef, CommandError> {
    let shown = path.display().to_string();
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {shown}: {e}")))?;
    Ok(parse_machine(&text, Pos::new(1, 1)).map_err(|d| d.in_file(shown))?)
}

fn machine(args: &MachineArgs, ctx: &Ctx) -> Result<(String, MachineDef), CommandError> {
    let path = Path::new(&args.machine);
    if args.machine.ends_with(".tm") || (args.defs.is_empty() && path.is_file()) {
        return Ok((args.machine.clone(), read_machine(path)?));
    }
    let ws = load(&args.defs, ctx.fuel)?;
    let def = ws.machines.get(&args.machine).cloned().ok_or_else(|| {
        usage(format!(
            "no machine `{}`; pass a .tm file or a name defined in --defs",
            args.machine
        ))
    })?;
    Ok((args.machine.clone(), def))
}

fn states(def: &MachineDef) -> Option<&[String]> {
    (!def.states.is_empty()).then_some(def.states.as_slice())
}

fn tm(action: &TmCommand, ctx: &Ctx) -> Result<Outcome, CommandError> {
    match action {
        TmCommand::Run { machine: m, input } => {
            let (name, def) = machine(m, ctx)?;
            let input = Expression::from(input.as_str());
            let outcome = def.machine.run(&input, ctx.fuel).map_err(usage)?;
            let mut o = Outcome::ok(
                json!({ "machine": name, "input": input.render(), "run": to_value(&outcome) }),
            );
            if let RunOutcome::OutOfFuel { steps } = outcome {
                o.status = Status::Inconclusive;
                o.caveats.push(format!(
                    "no halt within {steps} steps; more fuel may change the answer"
                ));
            }
            Ok(o)
        }
        TmCommand::Encode { machine: m } => {
            let (name, def) = machine(m, ctx)?;
            let program = def.machine.encode();
            Ok(Outcome::ok(json!({
                "machine": name,
                "states": def.machine.state_count(),
                "alphabet": def.machine.alphabet().to_string(),
                "program": program.expression().render(),
                "table": render_machine(&def.machine, states(&def)),
            })))
        }
        TmCommand::Decode { program, file } => {
            let text = match (program, file) {
                (Some(p), _) => p.clone(),
                (None, Some(f)) => std::fs::read_to_string(f)
                    .map_err(|e| usage(format!("cannot read {}: {e}", f.display())))?,
                (None, None) => return Err(usage("give --program or --file")),
            };
            let m = Program::decode(&Expression::from(text.trim())).map_err(usage)?;
            Ok(Outcome::ok(json!({
                "states": m.state_count(),
                "alphabet": m.alphabet().to_string(),
                "table": render_machine(&m, None),
            })))
        }
    }
}

fn universe_arg(ws: &Workspace, spec: &str) -> Result<Universe, CommandError> {
    if let Some(u) = ws.universes.get(spec) {
        return Ok(u.clone());
    }
    let parsed = parse_universe(spec).map_err(|d| {
        usage(format!(
            "`{spec}` is neither a defined universe nor a universe literal ({})",
            d.message
        ))
    })?;
    Ok(build_universe(&parsed, Pos::new(1, 1))?)
}

fn space(u: Universe) -> Result<ProblemSpace, CommandError> {
    ProblemSpace::new(u).map_err(usage)
}

fn masks_view(space: &ProblemSpace, masks: &[u32], limit: usize) -> Value {
    let sets: Vec<String> = masks
        .iter()
        .take(limit)
        .map(|&m| space.sigma(m).render())
        .collect();
    json!({ "size": masks.len(), "masks": masks, "sets": sets, "truncated": masks.len() > limit })
}

fn resolver(action: &ResolverCommand, ctx: &Ctx) -> Result<Outcome, CommandError> {
    match action {
        ResolverCommand::Range(a) => range_or_power(a, true, ctx),
        ResolverCommand::Power(a) => range_or_power(a, false, ctx),
        ResolverCommand::Chain { defs, chain } => {
            let ws = load(defs, ctx.fuel)?;
            let def = ws.chains.get(chain).ok_or_else(|| {
                usage(format!(
                    "no chain `{chain}`; defined: {}",
                    ws.chains.names().join(", ")
                ))
            })?;
            let space = space(def.universe.clone())?;
            match evolution_chain(&def.config, &space, ctx.strategy) {
                Ok(report) => {
                    let ranges: Vec<Value> = report
                        .ranges
                        .iter()
                        .map(|r| json!({ "resolver": r.resolver, "binding": r.binding, "range": masks_view(&space, &r.range, ctx.limit) }))
                        .collect();
                    Ok(Outcome::holds(
                        report.holds(),
                        json!({
                            "chain": chain,
                            "universe": report.universe,
                            "holds": report.holds(),
                            "links": to_value(&report.links),
                            "ranges": ranges,
                        }),
                    ))
                }
                Err(ChainError::ConditionViolated { condition, links }) => Ok(Outcome::holds(
                    false,
                    json!({ "chain": chain, "holds": false, "violated": condition.to_string(), "links": to_value(&links) }),
                )),
                Err(ChainError::Resolver(e)) => Err(usage(e)),
            }
        }
        ResolverCommand::Hierarchy { defs, universe } => {
            let ws = load(defs, ctx.fuel)?;
            let space = space(universe_arg(&ws, universe)?)?;
            let report = hierarchy_check(&space).map_err(usage)?;
            let holds = report.holds();
            let mut v = to_value(&report);
            v["holds"] = Value::Bool(holds);
            Ok(Outcome::holds(holds, v))
        }
    }
}

fn range_or_power(a: &SpaceArgs, range: bool, ctx: &Ctx) -> Result<Outcome, CommandError> {
    let ws = load(&a.defs, ctx.fuel)?;
    let r: &Resolver = ws.resolvers.get(&a.resolver).ok_or_else(|| {
        usage(format!(
            "no resolver `{}`; defined: {}",
            a.resolver,
            ws.resolvers.names().join(", ")
        ))
    })?;
    let space = space(universe_arg(&ws, &a.universe)?)?;
    let report = range_power(r, &space, ctx.strategy).map_err(usage)?;
    let (key, masks) = if range {
        ("range", &report.range)
    } else {
        ("power", &report.power)
    };
    let mut v = json!({
        "resolver": a.resolver,
        "description": report.resolver,
        "binding": report.binding,
        "universe": report.universe,
        "problems": report.problems,
    });
    v[key] = masks_view(&space, masks, ctx.limit);
    Ok(Outcome::ok(v))
}

fn item_label(i: &Item) -> String {
    match i {
        Item::Int(n) => n.to_string(),
        Item::Text(s) => s.clone(),
    }
}

fn meta_family(
    name: &str,
    specs: &[(String, ResolutionSpec)],
) -> Result<Vec<MetaResolution>, CommandError> {
    specs
        .iter()
        .map(|(label, spec)| {
            let labels = |items: &[Item]| items.iter().map(item_label).collect::<Vec<_>>();
            let r = match spec {
                ResolutionSpec::Routine(items) => {
                    let l = labels(items);
                    MetaResolution::routine(&l.iter().map(String::as_str).collect::<Vec<_>>())
                }
                ResolutionSpec::Trial(items) => {
                    let l = labels(items);
                    MetaResolution::trial(&l.iter().map(String::as_str).collect::<Vec<_>>())
                }
                ResolutionSpec::Exhaustive => MetaResolution::exhaustive(),
                _ => {
                    return Err(usage(format!(
                        "family `{name}` is used above level 0, where members are routine, trial or exhaustive \
                         over labels; `{label}` is not"
                    )))
                }
            };
            Ok(r.with_label(label))
        })
        .collect()
}

fn meta(target: &ProblemArgs, names: &[String], ctx: &Ctx) -> Result<Outcome, CommandError> {
    let (ws, chosen) = problems(target, ctx)?;
    let mut families = Vec::new();
    for (level, n) in names.iter().enumerate() {
        let def = ws.families.get(n).ok_or_else(|| {
            usage(format!(
                "no family `{n}`; defined: {}",
                ws.families.names().join(", ")
            ))
        })?;
        families.push(if level == 0 {
            Family::Resolutions(def.family.clone())
        } else {
            Family::Meta(meta_family(n, &def.specs)?)
        });
    }
    let level = names.len() - 1;
    let mut out = Vec::new();
    let mut caveats = Vec::new();
    for (name, p) in chosen {
        let m = iterate_meta(&p, level, &families, ctx.fuel).map_err(usage)?;
        if m.fuel_caveat() {
            caveats.push(format!(
                "{name}: some members ran out of fuel; their verdicts may change with more fuel"
            ));
        }
        let valid: BTreeSet<String> = m.valid_labels();
        out.push(json!({
            "problem": name,
            "level": m.level(),
            "families": names,
            "verdicts": to_value(m.verdicts()),
            "valid": valid,
            "solvable": m.is_solvable(),
            "chosen": meta_trial(&m).first(),
            "fuel_caveat": m.fuel_caveat(),
        }));
    }
    let status = if caveats.is_empty() {
        Status::Ok
    } else {
        Status::Inconclusive
    };
    Ok(Outcome {
        status,
        result: json!({ "metaproblems": out }),
        caveats,
    })
}

fn verify(suite: &str, cfg: SuiteConfig) -> Result<Outcome, CommandError> {
    let reports = if suite == "all" {
        if cfg.size.is_some() {
            return Err(usage("--size applies to a single suite"));
        }
        suites::run_all(&cfg).map_err(usage)?
    } else {
        let s: Suite = suite.parse().map_err(usage)?;
        vec![suites::run(s, &cfg).map_err(usage)?]
    };
    let passed = reports.iter().all(|r| r.passed());
    let cases: u64 = reports.iter().map(|r| r.cases()).sum();
    let failures: Vec<Value> = reports
        .iter()
        .flat_map(|r| r.failures().map(move |c| json!({ "suite": r.suite, "check": c.name, "counterexample": c.counterexample })))
        .collect();
    Ok(Outcome::holds(
        passed,
        json!({
            "passed": passed,
            "cases": cases,
            "failures": failures,
            "suites": to_value(&reports),
        }),
    ))
}
