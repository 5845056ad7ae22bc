use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use homolog::error::EXIT_ENTRY_CAP;
use homolog::{canonical_jobspec, parse_jobspec, run, CliError, RunOptions};
use homolog_core::limits;

/// Exact homological algebra over Euclidean domains: complexes, cones,
/// truncations, Ext/Tor, RHom, roofs, and dualizing complexes. Reads a JSON
/// job file and writes one report to stdout.
#[derive(Parser)]
#[command(name = "homolog", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Path to the JSON job file.
    #[arg(long)]
    input: PathBuf,
    /// Seed override for seeded commands.
    #[arg(long)]
    seed: Option<u64>,
    /// Emit the machine-readable JSON report.
    #[arg(long, conflicts_with = "pretty")]
    json: bool,
    /// Emit the human-readable report (the default).
    #[arg(long)]
    pretty: bool,
    /// Include witnesses (homotopies, lifts, comparison maps) in the report.
    #[arg(long)]
    witness: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology of a named complex.
    Cohomology(CommonArgs),
    /// Mapping cone of a named chain map, with its standard triangle.
    Cone(CommonArgs),
    /// Smart or stupid truncation of a free complex.
    Truncate(CommonArgs),
    /// Hom totalization of two free complexes.
    Hom(CommonArgs),
    /// Tensor totalization of two free complexes.
    Tensor(CommonArgs),
    /// Free resolution of a complex of presented modules.
    Resolve(CommonArgs),
    /// Ext modules of a pair of complexes.
    Ext(CommonArgs),
    /// Tor modules of a pair of complexes.
    Tor(CommonArgs),
    /// Derived Hom complex of a pair of complexes.
    Rhom(CommonArgs),
    /// Derived tensor complex of a pair of complexes.
    Dtensor(CommonArgs),
    /// A Hom group in the derived category.
    Dhom(CommonArgs),
    /// Equality of two roofs with common endpoints.
    RoofEq(CommonArgs),
    /// Dual of a complex against a dualizing complex.
    Dualize(CommonArgs),
    /// The biduality comparison map and its verdicts.
    Biduality(CommonArgs),
    /// Classify a second dualizing complex as a shift of the first.
    Classify(CommonArgs),
    /// Check the dualizing conditions on a candidate.
    VerifyDualizing(CommonArgs),
    /// Run the seeded triangulation property suites.
    AxiomsCheck(CommonArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Cohomology(_) => "cohomology",
            Command::Cone(_) => "cone",
            Command::Truncate(_) => "truncate",
            Command::Hom(_) => "hom",
            Command::Tensor(_) => "tensor",
            Command::Resolve(_) => "resolve",
            Command::Ext(_) => "ext",
            Command::Tor(_) => "tor",
            Command::Rhom(_) => "rhom",
            Command::Dtensor(_) => "dtensor",
            Command::Dhom(_) => "dhom",
            Command::RoofEq(_) => "roof-eq",
            Command::Dualize(_) => "dualize",
            Command::Biduality(_) => "biduality",
            Command::Classify(_) => "classify",
            Command::VerifyDualizing(_) => "verify-dualizing",
            Command::AxiomsCheck(_) => "axioms-check",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::Cohomology(a)
            | Command::Cone(a)
            | Command::Truncate(a)
            | Command::Hom(a)
            | Command::Tensor(a)
            | Command::Resolve(a)
            | Command::Ext(a)
            | Command::Tor(a)
            | Command::Rhom(a)
            | Command::Dtensor(a)
            | Command::Dhom(a)
            | Command::RoofEq(a)
            | Command::Dualize(a)
            | Command::Biduality(a)
            | Command::Classify(a)
            | Command::VerifyDualizing(a)
            | Command::AxiomsCheck(a) => a,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let args = cli.command.args();

    match std::env::var("HOMOLOG_MAX_ENTRY_BITS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(bits) if bits > 0 => limits::set_entry_bit_cap(Some(bits)),
            _ => {
                eprintln!("HOMOLOG_MAX_ENTRY_BITS: expected a positive integer, found {v:?}");
                return ExitCode::from(2);
            }
        },
        Err(_) => limits::set_entry_bit_cap(None),
    }

    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {e}", args.input.display());
            return ExitCode::from(2);
        }
    };

    let opts = RunOptions {
        witness: args.witness,
        seed: args.seed,
    };
    let as_json = args.json;

    // keep diagnostics to one line per panic; the exit code carries the class
    std::panic::set_hook(Box::new(|info| {
        let message = info
            .payload()
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| info.payload().downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".to_string());
        eprintln!("panic: {message}");
    }));
    let outcome = std::panic::catch_unwind(|| {
        let job = parse_jobspec(&text)?;
        run(&job, name, &opts)
    });
    let _ = std::panic::take_hook();

    match outcome {
        Ok(Ok(report)) => {
            if as_json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_pretty());
            }
            ExitCode::SUCCESS
        }
        Ok(Err(err)) => {
            eprintln!("{err}");
            if matches!(err, CliError::Internal(_)) {
                emit_repro_bundle(&text);
            }
            ExitCode::from(err.exit_code() as u8)
        }
        Err(_) => {
            if limits::entry_cap_breached() {
                eprintln!("aborted: entry size exceeded HOMOLOG_MAX_ENTRY_BITS");
                ExitCode::from(EXIT_ENTRY_CAP as u8)
            } else {
                eprintln!("internal error (panic)");
                emit_repro_bundle(&text);
                ExitCode::from(3)
            }
        }
    }
}

fn emit_repro_bundle(text: &str) {
    eprintln!("--- reproduction bundle (canonical job) ---");
    match parse_jobspec(text).and_then(|job| canonical_jobspec(&job)) {
        Ok(canon) => eprintln!("{canon}"),
        Err(_) => eprintln!("{text}"),
    }
    eprintln!("--- end bundle ---");
}
