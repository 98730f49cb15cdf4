//! Command-line front end. Every verb reads coefficient files, calls one
//! library operation and writes a JSON document; no numerics live here.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 verification failure,
//! 3 numerical validity error (non-finite data, aliasing, proximity).

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::domains::{cauchy_integral_quadrature, pairing_quadrature, CurveDescriptor, QuadratureGrid};
use crate::duality::{represent_functional, verify_scale_pairing, verify_theorem1, ScaleDirection};
use crate::error::Error;
use crate::growth::{
    default_radii, estimate_min_sobolev, growth_family_coeffs, growth_report, pointwise_growth_exponent, GrowthFamilySpec,
};
use crate::hardy::{cauchy_transform, hardy_projections, jump_residual};
use crate::io::{read_coefficients, CoefficientFile, CoefficientObject, IoError};
use crate::rng::{random_boundary, random_exterior, random_interior, seeded};
use crate::spectral::{koethe_pairing, l2_pairing, sobolev_norm, BoundaryDistribution, SobolevIndex};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hardy-dual", version, about = "Spectral Cauchy transforms, Hardy splitting and holomorphic duality on the unit disk")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the output document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Interior,
    Exterior,
    Boundary,
    Growth,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random coefficient file or a growth family.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long = "N", default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        s: i32,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "1,0")]
        z0: Complex64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
    },
    /// Boundary Sobolev norm of a coefficient file.
    Norm {
        #[arg(long)]
        f: PathBuf,
        /// Boundary index; defaults to the file's trace index.
        #[arg(long, allow_hyphen_values = true)]
        sp: Option<f64>,
    },
    /// Sesquilinear and contour pairings of two files.
    Pair {
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        v: PathBuf,
        #[arg(long, value_parser = parse_curve)]
        curve: Option<CurveDescriptor>,
        #[arg(long = "M", default_value_t = 256)]
        m: usize,
    },
    /// Cauchy transform at a point, with a quadrature cross-check on a curve.
    Cauchy {
        #[arg(long)]
        f: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        at: Complex64,
        #[arg(long, value_parser = parse_curve)]
        curve: Option<CurveDescriptor>,
        #[arg(long = "M", default_value_t = 256)]
        m: usize,
    },
    /// Hardy splitting of boundary data and the jump residual.
    Project {
        #[arg(long)]
        f: PathBuf,
        /// Boundary index of the data; defaults to the file's, else 0.
        #[arg(long, allow_hyphen_values = true)]
        sp: Option<f64>,
    },
    /// Exterior representative of the functional given by boundary data.
    Dualize {
        #[arg(long)]
        w: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        s: i32,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        theorem: u8,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        s: i32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Growth diagnostics of a family or of an interior file.
    Growth {
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "1,0")]
        z0: Complex64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long = "N", default_value_t = 4096)]
        n: usize,
        #[arg(long, default_value_t = -5, allow_hyphen_values = true)]
        s_lo: i32,
        #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
        s_hi: i32,
    },
}

/// Parses `re,im` (or a bare real).
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    let z = match text.split_once(',') {
        Some((re, im)) => Complex64::new(parse(re)?, parse(im)?),
        None => Complex64::new(parse(text)?, 0.0),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("{text:?} is not finite"))
    }
}

fn parse_curve(text: &str) -> Result<CurveDescriptor, String> {
    text.parse().map_err(|e: Error| e.to_string())
}

fn pair_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

enum Failure {
    Usage(String),
    Numerical(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e)
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Parse { source, .. } if source.is_numerical() => Failure::Numerical(source),
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Output {
    document: Value,
    verified: bool,
}

impl Output {
    fn ok(document: Value) -> Self {
        Output { document, verified: true }
    }
}

fn file_value(obj: &CoefficientObject) -> Value {
    serde_json::to_value(CoefficientFile::from(obj)).expect("serialisable")
}

fn execute(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Gen { kind, n, seed, s, z0, gamma } => {
            let mut rng = seeded(seed);
            let obj = match kind {
                GenKind::Interior => CoefficientObject::Interior(random_interior(&mut rng, n, SobolevIndex::integer(s))),
                GenKind::Exterior => CoefficientObject::Exterior(random_exterior(&mut rng, n, SobolevIndex::integer(s))),
                GenKind::Boundary => CoefficientObject::Boundary {
                    f: random_boundary(&mut rng, -(n as i64), n as i64),
                    s: None,
                },
                GenKind::Growth => CoefficientObject::Interior(growth_family_coeffs(&GrowthFamilySpec::new(z0, gamma, n)?)?),
            };
            Ok(Output::ok(file_value(&obj)))
        }
        Command::Norm { f, sp } => {
            let obj = read_coefficients(&f)?;
            let sp = sp
                .or(obj.trace_index())
                .ok_or_else(|| Failure::Usage("boundary file has no index; pass --sp".into()))?;
            Ok(Output::ok(json!({
                "verb": "norm",
                "kind": obj.kind(),
                "sp": sp,
                "norm": sobolev_norm(&obj.trace(), sp),
            })))
        }
        Command::Pair { u, v, curve, m } => {
            let (u, v) = (read_coefficients(&u)?.trace(), read_coefficients(&v)?.trace());
            let mut doc = json!({
                "verb": "pair",
                "l2": pair_json(l2_pairing(&u, &v).value()),
                "koethe": pair_json(koethe_pairing(&u, &v).value()),
            });
            if let Some(curve) = curve {
                let grid = QuadratureGrid::new(m)?;
                let uq = grid.sample(&curve, |z| laurent_value(&u, z));
                let vq = grid.sample(&curve, |z| laurent_value(&v, z));
                doc["curve"] = json!(curve.to_string());
                doc["M"] = json!(m);
                doc["koethe_quadrature"] = pair_json(pairing_quadrature(&uq, &vq, &curve, &grid)?.value());
            }
            Ok(Output::ok(doc))
        }
        Command::Cauchy { f, at, curve, m } => {
            let data = read_coefficients(&f)?.trace();
            let mut doc = json!({
                "verb": "cauchy",
                "at": pair_json(at),
                "value": pair_json(cauchy_transform(&data, at)?),
            });
            if let Some(curve) = curve {
                let grid = QuadratureGrid::new(m)?;
                let values = grid.sample(&curve, |z| laurent_value(&data, z));
                doc["curve"] = json!(curve.to_string());
                doc["M"] = json!(m);
                doc["quadrature"] = pair_json(cauchy_integral_quadrature(&values, &curve, &grid, at)?);
            }
            Ok(Output::ok(doc))
        }
        Command::Project { f, sp } => {
            let obj = read_coefficients(&f)?;
            let sp = sp.or(obj.trace_index()).unwrap_or(0.0);
            let data = obj.trace();
            let (u, v_plus) = hardy_projections(&data, sp)?;
            Ok(Output::ok(json!({
                "verb": "project",
                "interior": file_value(&CoefficientObject::Interior(u)),
                "exterior": file_value(&CoefficientObject::Exterior(v_plus)),
                "jump_residual": jump_residual(&data),
            })))
        }
        Command::Dualize { w, s } => {
            let data = read_coefficients(&w)?.trace();
            Ok(Output::ok(file_value(&CoefficientObject::Exterior(represent_functional(&data, s)))))
        }
        Command::Verify { theorem, s, trials, n, seed } => {
            let report = match theorem {
                1 => verify_theorem1(s, trials, n.unwrap_or(32), seed)?,
                2 => verify_scale_pairing(ScaleDirection::InteriorFiniteOrder, n.unwrap_or(64), seed)?,
                _ => verify_scale_pairing(ScaleDirection::ExteriorFiniteOrder, n.unwrap_or(64), seed)?,
            };
            Ok(Output {
                verified: report.passed,
                document: serde_json::to_value(&report).expect("serialisable"),
            })
        }
        Command::Growth { f, z0, gamma, n, s_lo, s_hi } => {
            if s_lo > s_hi {
                return Err(Failure::Usage(format!("empty grid {s_lo}..{s_hi}")));
            }
            let grid: Vec<i32> = (s_lo..=s_hi).collect();
            match f {
                None => {
                    let spec = GrowthFamilySpec::new(z0, gamma, n)?;
                    let report = growth_report(&spec, &grid, &default_radii(n))?;
                    Ok(Output::ok(serde_json::to_value(&report).expect("serialisable")))
                }
                Some(path) => {
                    let CoefficientObject::Interior(u) = read_coefficients(&path)? else {
                        return Err(Failure::Usage("growth diagnostics need an interior file".into()));
                    };
                    let estimate = estimate_min_sobolev(&u, &grid)?;
                    let radii = default_radii(u.coeffs().len().saturating_sub(1));
                    let fit = if radii.len() >= 2 {
                        serde_json::to_value(pointwise_growth_exponent(&u, z0, &radii)?).expect("serialisable")
                    } else {
                        Value::Null
                    };
                    Ok(Output::ok(json!({
                        "verb": "growth",
                        "estimate": estimate,
                        "pointwise": fit,
                    })))
                }
            }
        }
    }
}

/// `Σ c_n ζⁿ` for boundary data viewed as a Laurent polynomial.
fn laurent_value(f: &BoundaryDistribution, z: Complex64) -> Complex64 {
    f.modes().map(|(n, c)| c * z.powi(n as i32)).sum()
}

/// Parses `args` (program name first), runs the verb and writes the output
/// document to `stdout` or the `--out` file. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    let out = cli.out.clone();
    emit(execute(cli.command), out.as_deref(), stdout, stderr)
}

fn emit(result: Result<Output, Failure>, out: Option<&std::path::Path>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match result {
        Ok(output) => {
            let text = serde_json::to_string_pretty(&output.document).expect("serialisable") + "\n";
            let written = match out {
                Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(msg) = written {
                let _ = writeln!(stderr, "error: {msg}");
                return EXIT_USAGE;
            }
            if output.verified {
                EXIT_OK
            } else {
                let _ = writeln!(stderr, "verification failed");
                EXIT_VERIFICATION
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Numerical(e)) => {
            let _ = writeln!(stderr, "numerical error: {e}");
            EXIT_NUMERICAL
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_arguments() {
        assert_eq!(parse_complex("0.5,-1").unwrap(), Complex64::new(0.5, -1.0));
        assert_eq!(parse_complex("-2").unwrap(), Complex64::new(-2.0, 0.0));
        assert!(parse_complex("a,b").is_err());
        assert!(parse_complex("inf,0").is_err());
    }

    #[test]
    fn laurent_values_match_definition() {
        let f = BoundaryDistribution::new(-2, vec![Complex64::new(4.0, 0.0), Complex64::new(3.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
        let z = Complex64::new(0.0, 2.0);
        let want = 4.0 / (z * z) + 3.0 / z + 1.0;
        assert!((laurent_value(&f, z) - want).norm() < 1e-15);
    }

    #[test]
    fn usage_errors_exit_1() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["hardy-dual", "frobnicate"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(run(["hardy-dual", "norm", "--f", "/nonexistent/file.json"], &mut out, &mut err), EXIT_USAGE);
    }

    #[test]
    fn failed_reports_are_still_written_and_exit_2() {
        let report = crate::report::TheoremReport::new("t", None, 0, vec![crate::report::Check::at_most("x", 2.0, 1.0)], vec![]);
        let output = Output {
            verified: report.passed,
            document: serde_json::to_value(&report).unwrap(),
        };
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(emit(Ok(output), None, &mut out, &mut err), EXIT_VERIFICATION);
        assert!(String::from_utf8(out).unwrap().contains("\"passed\": false"));
        assert_eq!(err, b"verification failed\n");
    }
}
