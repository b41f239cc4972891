//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use problema::resolution::DEFAULT_FUEL;
use problema::suites::{Fault, DEFAULT_SEED};
use problema::sweep::Strategy;

#[derive(Debug, Parser)]
#[command(
    name = "problema",
    version,
    about = "Define problems, resolve them, classify them and run the checks"
)]
pub struct Cli {
    /// Step budget for machines, resolutions and classifications.
    #[arg(long, global = true, env = "PROBLEMA_FUEL", default_value_t = DEFAULT_FUEL)]
    pub fuel: u64,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Most members listed per set in a report.
    #[arg(long, global = true, default_value_t = 64)]
    pub limit: usize,
    /// Sweep strategy: sequential or parallel.
    #[arg(long, global = true, default_value_t = Strategy::default())]
    pub strategy: Strategy,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and resolve definition files, then summarize them.
    #[command(alias = "parse")]
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Compute the solutions of a problem.
    Solve(ProblemArgs),
    /// Place problems among the solvable, finite, expressible and resolvable.
    Classify {
        #[command(flatten)]
        target: ProblemArgs,
        /// A decider machine (.tm) to offer as evidence.
        #[arg(long)]
        decider: Option<PathBuf>,
        /// A known solution to offer as evidence.
        #[arg(long)]
        solution: Option<String>,
        /// Take "not resolvable" as given.
        #[arg(long)]
        unresolvable: bool,
    },
    /// Run, encode and decode Turing machines.
    Tm {
        #[command(subcommand)]
        action: TmCommand,
    },
    /// Ranges, powers and chains of resolvers.
    Resolver {
        #[command(subcommand)]
        action: ResolverCommand,
    },
    /// Evaluate a metaproblem over one or more candidate families.
    Meta {
        #[command(flatten)]
        target: ProblemArgs,
        /// Family of level 0, then one meta-resolution family per level.
        #[arg(long = "family", required = true)]
        families: Vec<String>,
    },
    /// Run the property suites.
    Verify {
        /// A suite name, or `all`.
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Universe size (or index count) for a single suite.
        #[arg(long)]
        size: Option<usize>,
        /// Plant a known defect to see the suites catch it.
        #[arg(long)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    /// Definition file holding the problem.
    #[arg(long)]
    pub problem: PathBuf,
    /// Which problem of the file; all of them by default.
    #[arg(long)]
    pub name: Option<String>,
    /// Further definition files.
    #[arg(long)]
    pub defs: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MachineArgs {
    /// A .tm file, or the name of a machine in the definition files.
    #[arg(long)]
    pub machine: String,
    /// Definition files to look machine names up in.
    #[arg(long)]
    pub defs: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum TmCommand {
    /// Run a machine on an input.
    Run {
        #[command(flatten)]
        machine: MachineArgs,
        /// Initial tape contents.
        #[arg(long, default_value = "")]
        input: String,
    },
    /// Print the program expression of a machine.
    Encode {
        #[command(flatten)]
        machine: MachineArgs,
    },
    /// Turn a program expression back into a machine table.
    Decode {
        /// The program expression.
        #[arg(long, required_unless_present = "file", conflicts_with = "file")]
        program: Option<String>,
        /// A file holding the program expression.
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SpaceArgs {
    /// Definition files.
    #[arg(long)]
    pub defs: Vec<PathBuf>,
    /// Name of the resolver to sweep.
    #[arg(long)]
    pub resolver: String,
    /// A universe name, or a literal such as `0..3` or `{a, b}`.
    #[arg(long)]
    pub universe: String,
}

#[derive(Debug, Subcommand)]
pub enum ResolverCommand {
    /// Problems on which the resolver outputs some solutions and nothing else.
    Range(SpaceArgs),
    /// Problems on which the resolver outputs exactly the solutions.
    Power(SpaceArgs),
    /// Check a chain of resolvers from mechanism to subject.
    Chain {
        /// Definition files.
        #[arg(long)]
        defs: Vec<PathBuf>,
        /// Name of the chain.
        #[arg(long)]
        chain: String,
    },
    /// Check that each resource level strictly extends the one below.
    Hierarchy {
        /// Definition files.
        #[arg(long)]
        defs: Vec<PathBuf>,
        /// Universe of the comparison, as for `range`.
        #[arg(long, default_value = "{a, b}")]
        universe: String,
    },
}
