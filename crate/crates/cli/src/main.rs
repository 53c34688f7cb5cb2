mod commands;
mod context;
mod golden;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use recollement::subobjects::DEFAULT_SUBOBJECT_BUDGET;
use recollement::Error;

use crate::context::Context;

/// Exact computations with torsion pairs in the recollement of module
/// categories attached to a triangular matrix algebra.
///
/// Exit codes: 0 pass/true, 1 false or counterexample, 2 undetermined
/// (budget exhausted), 3 input error.
#[derive(Parser, Debug)]
#[command(name = "recollement", version)]
struct Cli {
    /// Base algebra: a file path or a name in the data directory.
    #[arg(long, global = true, default_value = "kA2")]
    algebra: String,

    /// Recollement instance: a file path or a name in the data directory.
    /// Single-category commands work in mod Λ of this instance when given.
    #[arg(long, global = true)]
    instance: Option<String>,

    /// Override the field F_p of the data files.
    #[arg(long, global = true)]
    prime: Option<u32>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Cap on subspace tuples examined by subobject enumeration.
    #[arg(long = "budget-subobjects", global = true, default_value_t = DEFAULT_SUBOBJECT_BUDGET)]
    budget_subobjects: usize,

    /// Number of random short exact sequences per probe.
    #[arg(long, global = true, default_value_t = 1000)]
    trials: usize,

    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    /// Directory holding the shipped algebra, instance and pair files.
    #[arg(long = "data-dir", global = true, env = "RECOLLEMENT_DATA")]
    data_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the atoms and their Hom-dimension table.
    Atoms,
    /// Basis of Hom between two direct sums of atoms.
    Hom {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Decompose a representation (optionally after applying a functor).
    Decompose(commands::DecomposeArgs),
    /// Enumerate all torsion pairs.
    Enumerate,
    /// Check whether (add X, add Y) is a torsion pair.
    CheckPair(PairArgs),
    /// Hereditary, cohereditary, tilting and cotilting verdicts for a pair.
    Predicates(PairArgs),
    /// Glue pairs from the two outer categories into mod Λ.
    Glue(commands::GlueArgs),
    /// Restrict a pair of mod Λ to the two outer categories.
    Restrict(commands::RestrictArgs),
    /// Check the recollement axioms on the atom grid.
    VerifyRecollement {
        /// Load the instance even if the Λ fingerprint matrix is singular.
        #[arg(long)]
        uncertified: bool,
    },
    /// Search for a short exact sequence that a functor does not preserve.
    Probe {
        /// One of i_star, i_upper, i_shriek, j_lower, j_upper, j_rstar.
        #[arg(long)]
        functor: String,
    },
    /// The containment biconditionals for a pair of mod Λ.
    Lemma34(PairArgs),
    /// Glue then restrict, and rebuild pairs from their restrictions.
    Roundtrip(commands::RoundtripArgs),
    /// Reproduce the worked kA2 example and diff against the shipped output.
    #[command(name = "example-3-6")]
    Example36 {
        /// Rewrite the expected output file instead of comparing.
        #[arg(long, hide = true)]
        bless: bool,
    },
}

#[derive(Args, Debug)]
pub struct PairArgs {
    /// Torsion class, e.g. "P(1),S(1)" or "add(P(1) ⊕ S(1))".
    #[arg(long)]
    x: String,
    /// Torsion-free class.
    #[arg(long)]
    y: String,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => 2,
        Error::NotExact { .. } | Error::Invariant { .. } => 1,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let ctx = Context {
        data_dir: cli.data_dir.unwrap_or_else(context::default_data_dir),
        algebra: cli.algebra,
        instance: cli.instance,
        prime: cli.prime,
        seed: cli.seed,
        budget: cli.budget_subobjects,
        trials: cli.trials,
        json: cli.json,
        exec: if cli.sequential {
            recollement::Exec::Sequential
        } else {
            recollement::Exec::Parallel
        },
    };
    let result = match cli.command {
        Command::Atoms => commands::atoms(&ctx),
        Command::Hom { from, to } => commands::hom(&ctx, &from, &to),
        Command::Decompose(a) => commands::decompose(&ctx, &a),
        Command::Enumerate => commands::enumerate(&ctx),
        Command::CheckPair(p) => commands::check_pair(&ctx, &p.x, &p.y),
        Command::Predicates(p) => commands::predicates(&ctx, &p.x, &p.y),
        Command::Glue(a) => commands::glue(&ctx, &a),
        Command::Restrict(a) => commands::restrict(&ctx, &a),
        Command::VerifyRecollement { uncertified } => commands::verify(&ctx, uncertified),
        Command::Probe { functor } => commands::probe(&ctx, &functor),
        Command::Lemma34(p) => commands::containments(&ctx, &p.x, &p.y),
        Command::Roundtrip(a) => commands::roundtrip(&ctx, &a),
        Command::Example36 { bless } => golden::example(&ctx, bless),
    };
    match result {
        Ok(out) => {
            out.print(ctx.json);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
