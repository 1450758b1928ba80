//! The `prymlab` command line.
//!
//! Every command prints space-separated `key=value` lines. Exit codes are 0 on
//! success, 2 for invalid input, 3 when a search guard trips and 4 on I/O errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::atiyah::{tschirnhausen_degree, Bundle, ModuliCase};
use crate::braid::braid_orbits;
use crate::catalog;
use crate::error::{Error, Result};
use crate::hurwitz::{enumerate_simple_classes, guard_from_env, HurwitzTuple};
use crate::period::{distance, dual_period, PeriodMatrix, TOL_SYM};
use crate::prym::analyze;
use crate::symplectic::{PolarizationType, SkewLattice};

#[derive(Debug, Parser)]
#[command(name = "prymlab", version, about = "Covers of elliptic curves and their Prym lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate connected simply branched covers as a JSON-lines catalog.
    Enumerate {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Catalog file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Value stored in every entry's `timestamp` field.
        #[arg(long, default_value_t = 0)]
        timestamp: u64,
    },
    /// Check a catalog file against recomputation.
    Verify { catalog: PathBuf },
    /// Genus, cokernel and Prym type of one tuple (JSON file).
    Prym { tuple: PathBuf },
    /// Dual polarization type, or dual period matrix.
    Dualize {
        /// Comma-separated divisor chain, e.g. `1,1,2`.
        #[arg(long = "type", conflicts_with = "period")]
        kind: Option<String>,
        /// JSON file `{"z": [[[re, im], …]], "d": [..]}`.
        #[arg(long)]
        period: Option<PathBuf>,
        #[arg(long)]
        check: bool,
    },
    /// Moduli count for one configuration, or invariants of a bundle expression.
    Moduli {
        #[arg(long, required_unless_present = "expr")]
        case: Option<u8>,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        b: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        e: Option<i64>,
        /// For case 4: the larger summand is the square of the smaller.
        #[arg(long)]
        square: bool,
        #[arg(long, conflicts_with = "case")]
        expr: Option<String>,
    },
    /// Braid orbits on the classes of degree `d` with `n` branch points.
    Orbits {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// Degrees of the Tschirnhausen module and the ramification divisor.
    Tschirnhausen {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        gx: i64,
        #[arg(long)]
        gy: i64,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Malformed(_)
        | Error::Disconnected { .. }
        | Error::Constraint(_)
        | Error::Degenerate(_)
        | Error::Unimplemented(_)
        | Error::Json(_) => 2,
        Error::Guard { .. } => 3,
        Error::Io(_) => 4,
        Error::Numerical(_) | Error::Internal(_) => 1,
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn compact(kind: &PolarizationType) -> String {
    let parts: Vec<String> = kind.divisors().iter().map(i64::to_string).collect();
    parts.join(",")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

/// Runs one command, writing results to `out`.
pub fn execute<W: Write>(cli: Cli, out: &mut W) -> Result<()> {
    match cli.command {
        Command::Enumerate { d, n, out: path, timestamp } => {
            let entries = catalog::build(d, n, guard_from_env(), timestamp)?;
            match path {
                Some(p) => {
                    catalog::write(&entries, &p)?;
                    let orbits = entries.iter().map(|e| e.orbit_id + 1).max().unwrap_or(0);
                    writeln!(out, "d={d} n={n} entries={} orbits={orbits} out={}", entries.len(), p.display())?;
                }
                None => catalog::write_to(&entries, &mut *out)?,
            }
        }
        Command::Verify { catalog: path } => {
            let entries = catalog::read(&path)?;
            catalog::verify(&entries)?;
            writeln!(out, "entries={} verify=PASS", entries.len())?;
        }
        Command::Prym { tuple } => {
            let t: HurwitzTuple = read_json(&tuple)?;
            let v = t.validate();
            if !v.is_connected_cover() {
                return Err(Error::Malformed(format!(
                    "invalid tuple: relation={} transitive={} simple={}",
                    v.relation_ok, v.transitive, v.simple
                )));
            }
            let r = analyze(&t)?;
            let predicted = r.predicted_type(t.degree());
            writeln!(
                out,
                "g={} coker={} m={} type={} predicted={} kernel_connected={} simple={} type_check={}",
                r.genus,
                r.coker_order,
                r.prym_m,
                r.prym_type,
                predicted,
                r.coker_order == 1,
                v.simple,
                verdict(r.matches_prediction(t.degree())),
            )?;
        }
        Command::Dualize { kind, period, check } => match (kind, period) {
            (Some(k), None) => {
                let k = PolarizationType::parse(&k)?;
                let dual = k.dual();
                writeln!(out, "{}", compact(&dual))?;
                if check {
                    let report = SkewLattice::new(k.standard_form())?.check_duality()?;
                    let (_, normalized) = dual.dual().normalized();
                    let (_, original) = k.normalized();
                    writeln!(
                        out,
                        "composition={} involution={} check={}",
                        verdict(report.all()),
                        verdict(normalized == original),
                        verdict(report.all() && normalized == original)
                    )?;
                }
            }
            (None, Some(path)) => {
                let p: PeriodMatrix = read_json(&path)?;
                let dual = dual_period(&p)?;
                writeln!(out, "{}", serde_json::to_string(&dual)?)?;
                if check {
                    let twice = dual_period(&dual)?;
                    let scale = p.kind().divisors()[0] as f64;
                    let residual = distance(&twice.z().scale(scale), p.z());
                    let riemann = dual.as_raw().riemann_check()?;
                    let ok = residual < TOL_SYM && riemann.pass;
                    writeln!(
                        out,
                        "double_dual_residual={residual:e} isotropy={:e} positivity={:e} check={}",
                        riemann.isotropy_residual,
                        riemann.positivity_min_eig,
                        verdict(ok)
                    )?;
                }
            }
            _ => return Err(Error::Malformed("give exactly one of --type or --period".into())),
        },
        Command::Moduli { case, a, b, e, square, expr } => {
            if let Some(expr) = expr {
                let bundle = Bundle::parse(&expr)?;
                let s = bundle.stability()?;
                writeln!(
                    out,
                    "bundle={bundle} rank={} degree={} h0={} h0_end={} semistable={} polystable={} stable={} regular={}",
                    bundle.rank()?,
                    bundle.degree()?,
                    bundle.h0(),
                    bundle.h0_end()?,
                    s.semistable,
                    s.polystable,
                    s.stable,
                    s.regular
                )?;
            } else {
                let case = case.ok_or_else(|| Error::Malformed("--case or --expr is required".into()))?;
                let m = ModuliCase::from_args(case, a, b, e, square)?.count()?;
                writeln!(
                    out,
                    "case={} n={} bound={} closed={} closed_value={} {}",
                    m.case,
                    m.n,
                    m.bound,
                    m.closed_label,
                    m.closed_form,
                    verdict(m.agrees())
                )?;
            }
        }
        Command::Orbits { d, n } => {
            let classes = enumerate_simple_classes(d, n, guard_from_env())?;
            let orbits = braid_orbits(&classes)?;
            let sizes: Vec<String> = orbits.sizes().iter().map(usize::to_string).collect();
            write!(
                out,
                "d={d} n={n} classes={} orbits={} sizes={}",
                classes.len(),
                orbits.count(),
                sizes.join(",")
            )?;
            if (d == 2 || d == 3) && n > 0 {
                write!(out, " expected_one={}", verdict(orbits.count() == 1))?;
            }
            writeln!(out)?;
        }
        Command::Tschirnhausen { d, gx, gy } => {
            let (deg_e, deg_r) = tschirnhausen_degree(d, gx, gy)?;
            writeln!(out, "deg_E={deg_e} deg_R={deg_r}")?;
        }
    }
    Ok(())
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(cli, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn output(args: &[&str]) -> Result<String> {
        let cli = Cli::try_parse_from(std::iter::once("prymlab").chain(args.iter().copied()))
            .map_err(|e| Error::Malformed(e.to_string()))?;
        let mut buf = Vec::new();
        execute(cli, &mut buf)?;
        Ok(String::from_utf8(buf).unwrap())
    }

    #[test]
    fn dualize_types() {
        assert_eq!(output(&["dualize", "--type", "1,1,2"]).unwrap(), "1,2,2\n");
        assert_eq!(output(&["dualize", "--type", "1,1,1"]).unwrap(), "1,1,1\n");
        let s = output(&["dualize", "--type", "1,1,3", "--check"]).unwrap();
        assert!(s.ends_with("check=PASS\n"), "{s}");
        let e = output(&["dualize", "--type", "2,3"]).unwrap_err();
        assert_eq!(exit_code(&e), 2);
    }

    #[test]
    fn moduli_rows() {
        let s = output(&["moduli", "--case", "5", "--e", "4"]).unwrap();
        assert_eq!(s, "case=5 n=8 bound=7 closed=n-1 closed_value=7 PASS\n");
        let s = output(&["moduli", "--case", "3", "--e", "4"]).unwrap();
        assert!(s.contains("bound=5 closed=n-3"), "{s}");
        let e = output(&["moduli", "--case", "1", "--a", "1", "--b", "3"]).unwrap_err();
        assert_eq!(exit_code(&e), 2);
        assert!(e.to_string().contains("b < 2a"));
        let s = output(&["moduli", "--expr", "L(L,2) (x) F(2,0)"]).unwrap();
        assert!(s.contains("rank=2 degree=4 h0=4 h0_end=2"), "{s}");
    }

    #[test]
    fn orbit_summaries() {
        let s = output(&["orbits", "--d", "3", "--n", "2"]).unwrap();
        assert!(s.contains("orbits=1") && s.contains("expected_one=PASS"), "{s}");
        let s = output(&["orbits", "--d", "2", "--n", "0"]).unwrap();
        assert!(s.contains("orbits=3") && !s.contains("expected_one"), "{s}");
    }

    #[test]
    fn guard_maps_to_three() {
        let e = output(&["orbits", "--d", "9", "--n", "2"]).unwrap_err();
        assert_eq!(exit_code(&e), 3);
    }

    #[test]
    fn tschirnhausen_row() {
        assert_eq!(output(&["tschirnhausen", "--d", "3", "--gx", "4", "--gy", "1"]).unwrap(), "deg_E=3 deg_R=6\n");
    }
}
