use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qcoh::error::Error;
use qcoh::novikov::Exp;
use qcoh::potential::FieldPolicy;

mod commands;
mod config;
mod report;

use config::{parse_cutoff, parse_field, Format, RunConfig};

/// Exit status: 0 ok, 1 a verdict failed, 2 not stabilized, 3 error.
#[derive(Parser, Debug)]
#[command(name = "qcoh", version, about = "Exact A∞ / Hochschild / potential-function workbench")]
struct Cli {
    /// Energy cutoff E; fixtures keep their own unless this is given.
    #[arg(long, global = true, env = "QCOH_CUTOFF", value_parser = parse_cutoff)]
    cutoff: Option<Exp>,
    /// Hochschild length bound N.
    #[arg(long, global = true, env = "QCOH_LENGTH", default_value_t = 4)]
    length: usize,
    /// Arity bound for relation checks; defaults to the fixture arity + 2.
    #[arg(long, global = true, env = "QCOH_ARITY")]
    arity: Option<usize>,
    /// Valuation slack below the cutoff for certified zero tests.
    #[arg(long, global = true, env = "QCOH_SLACK", default_value = "0", value_parser = parse_cutoff)]
    slack: Exp,
    /// auto, q, q-sqrt:d or float:eps.
    #[arg(long, global = true, env = "QCOH_FIELD", default_value = "auto", value_parser = parse_field)]
    field: FieldPolicy,
    /// Verify the defining identities of every intermediate result.
    #[arg(long, global = true, env = "QCOH_ASSERT_IDENTITIES")]
    assert_identities: bool,
    #[arg(long, global = true, env = "QCOH_FORMAT", value_enum, default_value = "table")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check A∞, unit and cyclic relations of a fixture.
    Check { fixture: PathBuf },
    /// Truncated Hochschild homology (or cohomology).
    Hh {
        fixture: PathBuf,
        #[arg(long)]
        cohomology: bool,
    },
    /// Mukai pairing and Z_X on HH_•.
    Mukai { fixture: PathBuf },
    /// Split-generation certificate for a target object.
    Splitgen {
        fixture: PathBuf,
        /// Objects of the generating subcategory.
        #[arg(long, value_delimiter = ',', required_unless_present = "replay")]
        sub: Vec<String>,
        #[arg(long)]
        target: String,
        /// Re-check the witness of a machine-format certificate.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Critical points of a Laurent potential file.
    Crit { potential: PathBuf },
    /// Toric potential of a polytope file and Morse count check.
    Toric {
        polytope: PathBuf,
        /// Root-of-unity symmetry `r:k1,k2,..`.
        #[arg(long, value_parser = commands::parse_zeta)]
        zeta: Option<(u32, Vec<i64>)>,
    },
    /// Blow-up pipeline: critical points, torus models and the QH ledger.
    Blowup {
        /// Potential file; the built-in blow-up potential if omitted.
        potential: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        spheres: usize,
        /// dim H•(X).
        #[arg(long, default_value_t = 7)]
        dim: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        cutoff: cli.cutoff,
        length: cli.length,
        arity: cli.arity,
        slack: cli.slack,
        field: cli.field,
        assert_identities: cli.assert_identities,
        format: cli.format,
    };
    let result = cfg.validate().and_then(|()| match &cli.command {
        Command::Check { fixture } => commands::check(&cfg, fixture),
        Command::Hh { fixture, cohomology } => commands::hh(&cfg, fixture, *cohomology),
        Command::Mukai { fixture } => commands::mukai_cmd(&cfg, fixture),
        Command::Splitgen { fixture, sub, target, replay } => commands::splitgen(&cfg, fixture, sub, target, replay.as_deref()),
        Command::Crit { potential } => commands::crit(&cfg, potential),
        Command::Toric { polytope, zeta } => commands::toric(&cfg, polytope, zeta.as_ref()),
        Command::Blowup { potential, spheres, dim } => commands::blowup(&cfg, potential.as_deref(), *spheres, *dim),
    });
    match result {
        Ok(report) => {
            print!("{}", report.render(cfg.format));
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e @ Error::NotStabilized { .. }) => {
            eprintln!("qcoh: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("qcoh: {e}");
            ExitCode::from(3)
        }
    }
}
