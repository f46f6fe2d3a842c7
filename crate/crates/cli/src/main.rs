use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hyperbetti::campaign::{check_report, run_fuzz, FuzzParams};
use hyperbetti::check::CheckConfig;
use hyperbetti::family::{classify_indices, least_self_order};
use hyperbetti::generate::InstanceClass;
use hyperbetti::invariants::INVARIANT_EDGE_BUDGET;
use hyperbetti::{compute_invariants, hochster, io, splitting, taylor, BettiTable, Error, FieldChoice, Hypergraph};

/// Betti numbers of hypergraph edge ideals, with checks of their
/// combinatorial bounds.
#[derive(Parser)]
#[command(name = "hyperbetti", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Combinatorial invariants (matching numbers and their degree versions).
    Invariants {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Graded Betti table of the edge ideal.
    Betti {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Hochster)]
        method: Method,
        /// `q`, `gf2` or `gf:P` for a prime P.
        #[arg(long, default_value = "q")]
        field: FieldChoice,
        #[arg(long)]
        json: bool,
    },
    /// Classify a family of edges given by 0-based edge indices.
    Classify {
        file: PathBuf,
        /// Space-separated edge indices, e.g. "0 2 3".
        #[arg(long)]
        family: String,
        /// Also search for an order making the family self ordered.
        #[arg(long)]
        ordered: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run every applicable check on one instance.
    Check {
        file: PathBuf,
        #[arg(long, default_value = "q")]
        field: FieldChoice,
        #[arg(long)]
        json: bool,
    },
    /// Run the checks on seeded random instances.
    Fuzz {
        /// general, uniform:D, special:D, chordal or free.
        #[arg(long)]
        class: InstanceClass,
        #[arg(long, default_value_t = 7)]
        vertices: usize,
        #[arg(long, default_value_t = 6)]
        edges: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "q")]
        field: FieldChoice,
        /// Include wall-clock runtime in the report.
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Hochster,
    Taylor,
    Recursive,
}

fn vertex_cap() -> Result<usize, Error> {
    match std::env::var("BETTI_CAP_N") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidField(format!("BETTI_CAP_N={v}"))),
        Err(_) => Ok(hyperbetti::check::CHECK_VERTEX_CAP),
    }
}

fn load(path: &Path) -> Result<Hypergraph, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    io::parse(&text)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn betti(h: &Hypergraph, method: Method, field: FieldChoice) -> Result<BettiTable, Error> {
    match method {
        Method::Hochster => hochster::betti_table_capped(h, field, vertex_cap()?),
        Method::Taylor => taylor::betti_via_taylor(h, field),
        Method::Recursive => splitting::betti_recursive(h, field),
    }
}

fn config(field: FieldChoice) -> Result<CheckConfig, Error> {
    Ok(CheckConfig {
        field,
        vertex_cap: vertex_cap()?,
        ..CheckConfig::default()
    })
}

/// Exit status 0 when everything passes, 1 when a check fails.
fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Invariants { file, json: as_json } => {
            let h = load(&file)?;
            let report = compute_invariants(&h, INVARIANT_EDGE_BUDGET)?;
            if as_json {
                println!("{}", json(&report));
            } else {
                print!("{}", report.render());
            }
            Ok(0)
        }
        Command::Betti {
            file,
            method,
            field,
            json: as_json,
        } => {
            let table = betti(&load(&file)?, method, field)?;
            if as_json {
                println!("{}", json(&table));
            } else {
                print!("{}", table.render());
            }
            Ok(0)
        }
        Command::Classify {
            file,
            family,
            ordered,
            json: as_json,
        } => {
            let h = load(&file)?;
            let indices = family
                .split_whitespace()
                .map(|s| {
                    s.parse::<usize>().map_err(|_| Error::Parse {
                        line: 1,
                        column: 1,
                        message: format!("edge index `{s}` is not a number"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let class = classify_indices(&h, &indices)?;
            let order = ordered.then(|| least_self_order(&h, &indices));
            if as_json {
                let mut value = serde_json::to_value(&class).expect("classification serializes");
                if let Some(order) = &order {
                    value["self_order"] = serde_json::to_value(order).expect("order serializes");
                }
                println!("{}", json(&value));
            } else {
                let value = serde_json::to_value(&class).expect("classification serializes");
                for (k, v) in value.as_object().expect("struct") {
                    println!("{k:<24} {v}");
                }
                if let Some(order) = order {
                    match order {
                        Some(o) => println!("{:<24} {o:?}", "self_order"),
                        None => println!("{:<24} none", "self_order"),
                    }
                }
            }
            Ok(0)
        }
        Command::Check {
            file,
            field,
            json: as_json,
        } => {
            let h = load(&file)?;
            let (instance, report) = check_report(&h, &config(field)?);
            if as_json {
                println!("{}", json(&report));
            } else {
                if let Some(t) = &instance.table {
                    print!("{}", t.render());
                }
                for c in &instance.certificates {
                    println!("certified {:?} beta_{:?} = {}", c.kind, c.claimed, c.betti);
                }
                print!("{}", instance.render());
                if let Some(f) = report.failures.first().and_then(|f| f.shrunk.as_ref()) {
                    println!("shrunk counterexample: {}", io::to_json(f));
                }
            }
            Ok(u8::from(!report.passed()))
        }
        Command::Fuzz {
            class,
            vertices,
            edges,
            count,
            seed,
            field,
            timing,
            json: as_json,
        } => {
            let params = FuzzParams {
                class,
                vertices,
                edges,
                count,
                seed,
            };
            let start = Instant::now();
            let mut report = run_fuzz(&params, &config(field)?);
            if timing {
                report.runtime_ms = Some(start.elapsed().as_millis() as u64);
            }
            if as_json {
                println!("{}", json(&report));
            } else {
                print!("{}", report.render());
                if let Some(f) = report.failures.first() {
                    println!("counterexample: {}", io::to_json(&f.instance));
                    if let Some(s) = &f.shrunk {
                        println!("shrunk: {}", io::to_json(s));
                    }
                }
            }
            Ok(u8::from(!report.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
