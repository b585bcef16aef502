use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nodal_core::geometry::{surface_cohomology, DivisorClass, SurfaceDivisor};
use nodal_core::harness::{run_checks, run_configured, CheckResult, Format, HarnessConfig, Report, Session, Status, REGISTRY};
use nodal_core::lattice::quotient;

#[derive(Parser)]
#[command(name = "nodal", version, about = "Exact checks on the blow-up of a one-nodal quadric threefold")]
struct Cli {
    /// Harness configuration (TOML); the bundled configuration when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Override the twist (a,b) of the configuration, e.g. `--twist=0,0`.
    #[arg(long, global = true, value_name = "A,B", allow_hyphen_values = true)]
    twist: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    L,
    R,
}

#[derive(Subcommand)]
enum Command {
    /// Graded cohomology of a line bundle O(D), or of O_E(d,e) with --surface.
    Cohomology {
        #[arg(allow_hyphen_values = true)]
        divisor: String,
        /// Read the divisor as (d,e) on E.
        #[arg(long)]
        surface: bool,
    },
    /// Graded RHom between two expressions.
    Rhom {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// `mutate L e x` prints L_e x; `mutate R x e` prints R_e x.
    Mutate {
        #[arg(value_enum, ignore_case = true)]
        side: Side,
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// K-class in the line-bundle basis and Chern character.
    Class {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Euler-pairing matrix of a named collection or of a list of expressions.
    Gram {
        #[arg(required = true, allow_hyphen_values = true)]
        items: Vec<String>,
    },
    /// The kernel lattice and its quotient.
    Kernel,
    /// Run checks; exit 0 iff every selected check passes.
    Check {
        /// Check names, comma separated or repeated.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Also write the JSON report here.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// List the registry instead of running it.
        #[arg(long)]
        list: bool,
    },
    /// Full report on standard output.
    Report {
        #[arg(long)]
        json: bool,
    },
}

/// Configuration and parse errors; everything else is reported through the exit code.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn load_config(cli: &Cli) -> Result<HarnessConfig, UsageError> {
    let config = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            HarnessConfig::from_toml(&text)?
        }
        None => HarnessConfig::bundled(),
    };
    match &cli.twist {
        None => Ok(config),
        Some(t) => {
            let parts: Vec<&str> = t.split(',').map(str::trim).collect();
            let [a, b] = parts.as_slice() else {
                return Err(UsageError(format!("twist must be `a,b`, got `{t}`")));
            };
            Ok(config.with_twist(a.parse()?, b.parse()?))
        }
    }
}

fn exit_for(report: &Report) -> ExitCode {
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_rows(rows: &[Vec<i64>]) {
    let width = rows.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        println!("[{}]", cells.join(" "));
    }
}

fn run(cli: &Cli) -> Result<ExitCode, UsageError> {
    let config = load_config(cli)?;
    if let Command::Cohomology { divisor, surface } = &cli.command {
        let g = config.geometry();
        let dims = if *surface {
            surface_cohomology(divisor.parse::<SurfaceDivisor>()?)
        } else {
            g.threefold_cohomology(divisor.parse::<DivisorClass>()?)
        };
        println!("{dims}");
        return Ok(ExitCode::SUCCESS);
    }
    let session = Session::new(config)?;
    for (name, why) in session.unavailable() {
        eprintln!("note: `{name}` is unavailable at this twist: {why}");
    }
    let calc = session.calc();
    match &cli.command {
        Command::Cohomology { .. } => unreachable!("handled above"),
        Command::Rhom { x, y } => {
            println!("{}", calc.rhom(&session.object(x)?, &session.object(y)?));
        }
        Command::Mutate { side, first, second } => {
            let (a, b) = (session.object(first)?, session.object(second)?);
            let out = match side {
                Side::L => calc.mutate_left(&a, &b)?,
                Side::R => calc.mutate_right(&a, &b)?,
            };
            println!("{out}");
        }
        Command::Class { expr } => {
            let c = session.class(expr)?;
            println!("coords: {c}");
            println!("ch: {}", c.chern);
        }
        Command::Gram { items } => {
            let exprs: Vec<String> = match (items.as_slice(), session.collection_members(&items[0])) {
                ([_], Some(members)) => members.to_vec(),
                _ => items.clone(),
            };
            let classes = exprs.iter().map(|e| session.class(e)).collect::<Result<Vec<_>, _>>()?;
            print_rows(&calc.numerical().gram_matrix(&classes)?);
        }
        Command::Kernel => {
            let k = session.kernel()?;
            let q = quotient(&k.ambient, &k.kernel)?;
            println!("ambient rank: {}", k.ambient.rank());
            println!("kernel rank: {}", k.kernel.rank());
            println!("kernel basis (Hermite normal form):");
            print_rows(k.kernel.hnf());
            let coords =
                k.generator_classes.iter().map(|g| k.ambient.coordinates(&g.coords)).collect::<Result<Vec<_>, _>>()?;
            println!("generators in collection coordinates:");
            print_rows(&coords);
            println!("quotient: rank {}, torsion {:?}", q.rank, q.torsion);
        }
        Command::Check { only, json, list } => {
            if *list {
                for c in REGISTRY {
                    println!("{}  {}", c.name, c.anchor);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let report = if only.is_empty() { run_configured(&session)? } else { run_checks(&session, Some(only))? };
            print!("{}", report.emit(Format::Text));
            if let Some(path) = json {
                fs::write(path, report.emit(Format::Json)).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            }
            return Ok(exit_for(&report));
        }
        Command::Report { json } => {
            let report = run_checks(&session, None)?;
            print!("{}", report.emit(if *json { Format::Json } else { Format::Text }));
            for r in report.results.iter().filter(|r: &&CheckResult| r.status == Status::Fail) {
                eprintln!("failed: {}", r.name);
            }
            return Ok(exit_for(&report));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
