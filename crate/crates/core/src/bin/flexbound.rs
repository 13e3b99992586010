use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use flexbound::corpus::ENTRIES;
use flexbound::enumerate::{census, EnumerationLimits};
use flexbound::error::Error;
use flexbound::input::{parse_input, InputDocument};
use flexbound::report::{build_report, render_bounds, render_text};
use flexbound::table::{render_table, sweep, SweepFamily};
use flexbound::verdict::FinalStatus;

#[derive(Parser)]
#[command(name = "flexbound", version, about = "Topological prohibitions for real schemes of flexible curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one document; exits 1 if the scheme is prohibited.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Divisibility data and bounds only.
    Bounds {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Closed forms next to the general bounds.
    Table {
        #[arg(long, value_enum)]
        family: TableFamily,
        /// Degree range for the plane, e.g. `3..21` (inclusive) or `5`.
        #[arg(long, value_parser = parse_range)]
        m: Option<(u64, u64)>,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        e: Option<u64>,
        #[arg(long)]
        d: Option<u8>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 0)]
        rho: u32,
        /// 0 or 1; both when omitted.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        delta: Option<u8>,
        #[arg(long)]
        json: bool,
    },
    /// Census of all schemes on the document's surface and class.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        max_ovals: usize,
        #[arg(long, default_value_t = 4)]
        max_essential: u32,
        #[arg(long)]
        json: bool,
    },
    /// List the bundled examples, or run them and check the expected results.
    Examples {
        #[arg(long)]
        run: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFamily {
    Plane,
    Quadric,
    Hirzebruch,
    DelPezzo,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: u64 = lo.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let hi: u64 = hi.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

enum Failure {
    Input(String),
    Prohibited,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn load(file: &PathBuf) -> Result<InputDocument, Failure> {
    let bytes = std::fs::read(file)
        .map_err(|e| Failure::Input(format!("error[io] at {}: {e}", file.display())))?;
    Ok(parse_input(&bytes)?)
}

fn missing(flag: &str) -> Failure {
    Failure::Input(format!("error[schema] at --{flag}: required for this family"))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { file, json } => {
            let report = build_report(&load(&file)?, true)?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", render_text(&report));
            }
            if report.final_status() == Some(FinalStatus::Prohibited) {
                return Err(Failure::Prohibited);
            }
        }
        Command::Bounds { file, json } => {
            let report = build_report(&load(&file)?, false)?;
            if json {
                let value = serde_json::json!({
                    "class": report.class,
                    "divisibility": report.divisibility,
                    "bounds": report.bounds,
                    "rho_bounds": report.rho_bounds,
                });
                println!("{}", serde_json::to_string_pretty(&value).expect("bounds serialize"));
            } else {
                print!("{}", render_bounds(&report));
            }
        }
        Command::Table {
            family,
            m,
            a,
            b,
            e,
            d,
            n,
            rho,
            delta,
            json,
        } => {
            let family = match family {
                TableFamily::Plane => {
                    let (lo, hi) = m.ok_or_else(|| missing("m"))?;
                    SweepFamily::Plane {
                        degrees: (lo..=hi).collect(),
                    }
                }
                TableFamily::Quadric => SweepFamily::Quadric {
                    a: a.ok_or_else(|| missing("a"))?,
                    b: b.ok_or_else(|| missing("b"))?,
                },
                TableFamily::Hirzebruch => SweepFamily::Hirzebruch {
                    e: e.ok_or_else(|| missing("e"))?,
                    a: a.ok_or_else(|| missing("a"))?,
                    b: b.ok_or_else(|| missing("b"))?,
                },
                TableFamily::DelPezzo => SweepFamily::DelPezzo {
                    d: d.ok_or_else(|| missing("d"))?,
                    n: n.ok_or_else(|| missing("n"))?,
                },
            };
            let deltas: Vec<u8> = delta.map_or(vec![0, 1], |x| vec![x]);
            let rows = sweep(&family, rho, &deltas)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
            } else {
                print!("{}", render_table(&rows));
            }
        }
        Command::Enumerate {
            file,
            max_ovals,
            max_essential,
            json,
        } => {
            let doc = load(&file)?;
            let surface = doc.surface_model()?;
            let xi = doc.curve_class()?;
            let limits = EnumerationLimits {
                max_ovals,
                max_essential_circles: max_essential,
                component_templates: None,
            };
            let result = census(&surface, &xi, &limits, &doc.overrides())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&result).expect("census serializes"));
            } else {
                for row in &result.rows {
                    println!(
                        "{:>3} circles  {:<28} {}",
                        row.circles,
                        format!("{:?}", row.verdict.final_status),
                        row.scheme
                    );
                }
                let s = &result.summary;
                println!(
                    "total {}: admissible {}, conditionally admissible {}, prohibited {}",
                    s.total, s.admissible, s.conditionally_admissible, s.prohibited
                );
            }
        }
        Command::Examples { run } => {
            if !run {
                for e in ENTRIES {
                    println!("{:<36} {}", e.name, e.description);
                }
                return Ok(());
            }
            let mut all_passed = true;
            for e in ENTRIES {
                let outcome = e.run()?;
                for a in &outcome.assertions {
                    println!("{} {}: {}", if a.passed { "PASS" } else { "FAIL" }, e.name, a.label);
                }
                all_passed &= outcome.passed();
            }
            if !all_passed {
                return Err(Failure::Prohibited);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Prohibited) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
