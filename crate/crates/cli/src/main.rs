//! `steer`: purity-based steering detection from the command line.
//!
//! Exit codes: 0 the command ran (detection results live in the payload,
//! never in the exit code), 1 self-test failure, 2 invalid input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use steer_core::criteria::{self, Direction, DirectionFilter};
use steer_core::{estimate, scan, selftest, DensityMatrix, FamilySpec, VALIDATION_TOL};

mod render;

use render::fmt_sig;

#[derive(Parser)]
#[command(name = "steer", version, about = "Steering and entanglement detection from density matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a density-matrix file and report every criterion
    Check {
        /// Density-matrix JSON file
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DirectionArg::Both)]
        direction: DirectionArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Emit a family state as density-matrix JSON
    Family {
        #[command(flatten)]
        family: FamilyArgs,
        /// Write to a file instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Bisect the detection threshold of a family
    Threshold {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = OneDirectionArg::AToB)]
        direction: OneDirectionArg,
        #[arg(long, default_value_t = 0.0)]
        p_lo: f64,
        #[arg(long, default_value_t = 1.0)]
        p_hi: f64,
    },
    /// Emit scan data as CSV
    Scan {
        #[command(subcommand)]
        kind: ScanCommand,
    },
    /// Estimate the margin from simulated two-copy measurements
    Estimate {
        /// Density-matrix JSON file (alternative to a family)
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OneDirectionArg::AToB)]
        direction: OneDirectionArg,
    },
    /// Run the built-in identity suites
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ScanCommand {
    /// Margins of both directions over a mixing-parameter grid
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long, default_value_t = 0.0)]
        p_lo: f64,
        #[arg(long, default_value_t = 1.0)]
        p_hi: f64,
    },
    /// Bell-diagonal (c1, c2) grid at fixed c3
    BellBoundary {
        #[arg(long, allow_hyphen_values = true)]
        c3: f64,
        #[arg(long, default_value_t = 401)]
        grid: usize,
    },
    /// Purity thresholds across isotropic local dimensions
    IsotropicCurve {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,7,8,9,10")]
        dims: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum DirectionArg {
    Both,
    AToB,
    BToA,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum OneDirectionArg {
    AToB,
    BToA,
}

impl From<OneDirectionArg> for Direction {
    fn from(d: OneDirectionArg) -> Self {
        match d {
            OneDirectionArg::AToB => Direction::AtoB,
            OneDirectionArg::BToA => Direction::BtoA,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum FamilyName {
    Werner,
    BellDiagonal,
    AsymmetricNoisySinglet,
    Isotropic,
    FreeEntangled,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family name
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    /// Mixing parameter in [0, 1]
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    /// Bell-diagonal coefficients c1,c2,c3
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    c: Option<Vec<f64>>,
    /// Local dimension of the isotropic family
    #[arg(long)]
    dim: Option<usize>,
}

impl FamilyArgs {
    /// Builds the family spec; `require_p` distinguishes state-producing
    /// commands from threshold templates where `p` is scanned.
    fn to_spec(&self, require_p: bool) -> Result<FamilySpec, String> {
        let name = self.family.ok_or("--family is required")?;
        let p = match (self.p, require_p, name) {
            (Some(p), _, _) => p,
            (None, _, FamilyName::BellDiagonal) => 0.0,
            (None, false, _) => 0.0,
            (None, true, _) => return Err("--p is required for this family".into()),
        };
        match name {
            FamilyName::Werner => Ok(FamilySpec::Werner { p }),
            FamilyName::AsymmetricNoisySinglet => Ok(FamilySpec::AsymmetricNoisySinglet { p }),
            FamilyName::FreeEntangled => Ok(FamilySpec::FreeEntangled { p }),
            FamilyName::Isotropic => {
                let d = self.dim.ok_or("--dim is required for isotropic")?;
                Ok(FamilySpec::Isotropic { p, d })
            }
            FamilyName::BellDiagonal => {
                let c = self.c.as_ref().ok_or("--c c1,c2,c3 is required for bell-diagonal")?;
                if c.len() != 3 {
                    return Err(format!("--c expects exactly 3 coefficients, got {}", c.len()));
                }
                Ok(FamilySpec::BellDiagonal {
                    c: [c[0], c[1], c[2]],
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Check {
            file,
            direction,
            format,
        } => {
            let rho = DensityMatrix::from_json_file(&file).map_err(|e| e.to_string())?;
            let filter = match direction {
                DirectionArg::Both => DirectionFilter::Both,
                DirectionArg::AToB => DirectionFilter::One(Direction::AtoB),
                DirectionArg::BToA => DirectionFilter::One(Direction::BtoA),
            };
            let report = criteria::full_report_with(&rho, filter, VALIDATION_TOL);
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", render::report_text(&rho, &report)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Family { family, output } => {
            let rho = family
                .to_spec(true)?
                .build()
                .map_err(|e| e.to_string())?;
            match output {
                Some(path) => rho.write_json_file(&path).map_err(|e| e.to_string())?,
                None => println!("{}", rho.to_json_string()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Threshold {
            family,
            direction,
            p_lo,
            p_hi,
        } => {
            let spec = family.to_spec(false)?;
            let found = scan::find_threshold(&spec, direction.into(), p_lo, p_hi)
                .map_err(|e| e.to_string())?;
            if let Some(reference) = found.reference {
                eprintln!(
                    "comparison: {} = {} ({})",
                    reference.label,
                    fmt_sig(reference.value, 9),
                    reference.source
                );
            }
            println!("{}", fmt_sig(found.critical_p, 9));
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan { kind } => {
            run_scan(kind)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Estimate {
            file,
            family,
            shots,
            seed,
            direction,
        } => {
            let rho = match (&file, family.family) {
                (Some(path), None) => DensityMatrix::from_json_file(path).map_err(|e| e.to_string())?,
                (None, Some(_)) => family.to_spec(true)?.build().map_err(|e| e.to_string())?,
                _ => return Err("provide exactly one of --file or --family".into()),
            };
            let verdict = estimate::estimated_verdict(&rho, direction.into(), shots, seed)
                .map_err(|e| e.to_string())?;
            eprintln!(
                "protocol: one-sided 3-sigma detection; shots split evenly between joint and \
                 reduced purity (tool conventions, not part of the measurement scheme)"
            );
            println!("{}", serde_json::to_value(verdict).map_err(|e| e.to_string())?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest { seed } => {
            let report = selftest::run(seed);
            for suite in &report.suites {
                println!(
                    "{:<16} max residual {:>9.3e}  (tolerance {:.1e})  {}",
                    suite.name,
                    suite.max_residual,
                    suite.tolerance,
                    if suite.passed { "ok" } else { "FAILED" }
                );
            }
            if report.passed() {
                println!("selftest: ok");
                Ok(ExitCode::SUCCESS)
            } else {
                for suite in &report.suites {
                    if let Some(case) = &suite.failing_case {
                        eprintln!("failing case for {}:\n{}", suite.name, case);
                    }
                }
                eprintln!("selftest: FAILED");
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn run_scan(kind: ScanCommand) -> Result<(), String> {
    match kind {
        ScanCommand::Sweep {
            family,
            points,
            p_lo,
            p_hi,
        } => {
            let spec = family.to_spec(false)?;
            let grid = scan::linspace(p_lo, p_hi, points);
            let rows = scan::sweep(&spec, &grid).map_err(|e| e.to_string())?;
            println!("p,margin_a_to_b,margin_b_to_a");
            for row in rows {
                println!(
                    "{},{},{}",
                    fmt_sig(row.p, 9),
                    fmt_sig(row.margin_a_to_b, 9),
                    fmt_sig(row.margin_b_to_a, 9)
                );
            }
            Ok(())
        }
        ScanCommand::BellBoundary { c3, grid } => {
            let boundary = scan::bell_diagonal_boundary(c3, grid).map_err(|e| e.to_string())?;
            eprintln!(
                "detection boundary circle: c1^2 + c2^2 = {} (radius {})",
                fmt_sig(boundary.boundary_radius * boundary.boundary_radius, 9),
                fmt_sig(boundary.boundary_radius, 9)
            );
            println!("c1,c2,c3,margin,psd_valid");
            for cell in &boundary.grid.cells {
                println!(
                    "{},{},{},{},{}",
                    fmt_sig(cell.params[0], 9),
                    fmt_sig(cell.params[1], 9),
                    fmt_sig(cell.params[2], 9),
                    fmt_sig(cell.margin_a_to_b, 9),
                    cell.psd_valid
                );
            }
            Ok(())
        }
        ScanCommand::IsotropicCurve { dims } => {
            let rows = scan::isotropic_curve(&dims).map_err(|e| e.to_string())?;
            println!("d,threshold_purity,threshold_theory,annotation_source");
            for row in rows {
                println!(
                    "{},{},{},{}",
                    row.d,
                    fmt_sig(row.threshold_purity, 9),
                    fmt_sig(row.threshold_theory, 9),
                    row.annotation_source
                );
            }
            Ok(())
        }
    }
}
