//! Command-line front end. Exit codes: 0 success, 1 an invariant mismatch was
//! found, 2 usage or parameter error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::gf::{is_prime, Field};
use crate::mono::{self, EmptyCase, ExponentTuple};
use crate::report::{entry_line, scan, Report, ScanGrid};
use crate::vero::{projection_demo, verify_field, ProjectionDemo, VeroContext};

#[derive(Parser, Debug)]
#[command(
    name = "nucleus",
    version,
    about = "Nuclei of Veronese varieties over finite fields",
    long_about = "Computes nuclei of Veronese varieties over GF(p^k) by brute force and by the \
                  base-p digit formula, and checks that they agree. Only prime characteristic is \
                  supported; in characteristic 0 the nucleus is always empty."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Projective dimension of the nucleus from the digit formula, and its case label.
    Dim {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        p: u32,
    },
    /// Exact multinomial coefficient, its residue mod p, and the carry-free flag.
    Multinomial {
        #[arg(long)]
        t: u32,
        /// Comma-separated exponents e0,e1,...
        #[arg(long, allow_hyphen_values = false)]
        e: String,
        #[arg(long)]
        p: u32,
    },
    /// Brute-force nucleus against the formula for one field, m and t.
    Verify {
        /// p^k or p^k/c0,c1,...,ck (modulus coefficients, least degree first).
        #[arg(long)]
        field: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Verify every cell of a (p, k, m, t) grid.
    Scan {
        /// Comma-separated primes.
        #[arg(long)]
        primes: String,
        #[arg(long)]
        max_k: u32,
        /// Inclusive range, `a..b` or a single value.
        #[arg(long)]
        m_range: String,
        /// Inclusive range, `a..b` or a single value.
        #[arg(long)]
        t_range: String,
        /// Skip cells with q < t.
        #[arg(long)]
        require_q_ge_t: bool,
        /// Skip fields of order above this.
        #[arg(long)]
        max_q: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Table of empty and non-empty nucleus cases for m <= m-max, t <= t-max.
    Classify {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        t_max: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Projection of the cubic Veronese surface over GF(4) from its one-point nucleus.
    DemoProjection {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug)]
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn parse_range<T: std::str::FromStr + PartialOrd>(s: &str) -> Result<(T, T), Usage> {
    let err = || Usage(format!("bad range {s:?}; expected a..b or a single value"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: T = lo.trim().parse().map_err(|_| err())?;
    let hi: T = hi.trim().parse().map_err(|_| err())?;
    if lo > hi {
        return Err(err());
    }
    Ok((lo, hi))
}

fn require_prime(p: u32) -> Result<(), Usage> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Usage(format!("{p} is not prime")))
    }
}

#[derive(Serialize)]
struct ClassifyRow {
    m: usize,
    t: u32,
    case: EmptyCase,
    formula_dim: i128,
    consistent: bool,
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(args, &mut out, &mut err)
}

fn emit_report(report: &Report, format: Format, out: &mut dyn Write) -> Result<i32, Usage> {
    match format {
        Format::Text => write!(out, "{}", report.to_text())?,
        Format::Json => writeln!(out, "{}", report.to_json()?)?,
        Format::Csv => write!(out, "{}", report.to_csv()?)?,
    }
    Ok(report.exit_code())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Usage> {
    match command {
        Command::Dim { m, t, p } => {
            require_prime(p)?;
            if t == 0 {
                return Err(Usage("t must be at least 1".into()));
            }
            writeln!(out, "{} ({})", mono::nucleus_dim_formula(m, t, p), mono::classify_empty(m, t, p))?;
            Ok(0)
        }
        Command::Multinomial { t, e, p } => {
            require_prime(p)?;
            let e: ExponentTuple = e.parse()?;
            let exact = mono::multinomial_exact(t, &e);
            let residue = mono::multinomial_mod_p(t, &e, p);
            let cf = mono::carry_free(t, &e, p);
            writeln!(out, "{exact}, residue {residue}, carry_free {cf}")?;
            Ok(0)
        }
        Command::Verify { field, m, t, format } => {
            let field: Field = field.parse()?;
            let entry = verify_field(&field, m, t)?;
            let report = Report::new(vec![entry]);
            if format == Format::Text {
                writeln!(out, "{}", entry_line(&report.entries[0]))?;
                return Ok(report.exit_code());
            }
            emit_report(&report, format, out)
        }
        Command::Scan { primes, max_k, m_range, t_range, require_q_ge_t, max_q, format } => {
            let primes = primes
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Usage(format!("bad prime list {primes:?}")))?;
            let grid = ScanGrid {
                primes,
                max_k,
                m_range: parse_range(&m_range)?,
                t_range: parse_range(&t_range)?,
                require_q_ge_t,
                max_q,
            };
            let report = scan(&grid)?;
            emit_report(&report, format, out)
        }
        Command::Classify { p, m_max, t_max, format } => {
            require_prime(p)?;
            let mut rows = Vec::new();
            for m in 0..=m_max {
                for t in 1..=t_max {
                    let case = mono::classify_empty(m, t, p);
                    let formula_dim = mono::nucleus_dim_formula(m, t, p);
                    let consistent = case.is_empty_nucleus() == (formula_dim == -1);
                    rows.push(ClassifyRow { m, t, case, formula_dim, consistent });
                }
            }
            let code = i32::from(rows.iter().any(|r| !r.consistent));
            match format {
                Format::Text => {
                    writeln!(out, "p = {p}")?;
                    writeln!(out, "{:>3} {:>4}  {:<14} {:>10}", "m", "t", "case", "dim")?;
                    for r in &rows {
                        let flag = if r.consistent { "" } else { "  MISMATCH" };
                        writeln!(out, "{:>3} {:>4}  {:<14} {:>10}{flag}", r.m, r.t, r.case.to_string(), r.formula_dim)?;
                    }
                }
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for r in &rows {
                        w.serialize(r)?;
                    }
                    out.write_all(&w.into_inner().map_err(|e| Usage(e.to_string()))?)?;
                }
            }
            Ok(code)
        }
        Command::DemoProjection { format } => {
            let field = Field::new(2, 2, None)?;
            let ctx = VeroContext::new(&field, 2, 3)?;
            let demo = projection_demo(&ctx)?;
            let ok = demo_holds(&demo, ctx.n());
            match format {
                Format::Text => write!(out, "{}", demo_text(&demo))?,
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&demo)?)?,
                Format::Csv => return Err(Usage("demo-projection supports text and json".into())),
            }
            Ok(i32::from(!ok))
        }
    }
}

fn demo_holds(d: &ProjectionDemo, n: usize) -> bool {
    d.injective && d.all_lines_skew && d.image_span_projective_dim == n as i64 - 2
}

fn demo_text(d: &ProjectionDemo) -> String {
    let uniform = |v: &[i64]| match (v.iter().min(), v.iter().max()) {
        (Some(a), Some(b)) if a == b => a.to_string(),
        (Some(a), Some(b)) => format!("{a}..{b}"),
        _ => "-".into(),
    };
    format!(
        "field {} m={} t={}\n\
         nucleus: projective dim {}, projecting from the base point {}\n\
         (V1) {} points, {} distinct images, injective {}\n\
         lines: {}, image spans of projective dim {}, skew to nucleus {}/{}\n\
         (V2) projected line images span projective dim {}\n\
         image of the projection spans projective dim {}\n",
        d.field,
        d.m,
        d.t,
        d.nucleus_projective_dim,
        d.center,
        d.points,
        d.distinct_images,
        d.injective,
        d.lines,
        uniform(&d.line_span_dims),
        d.lines_skew_to_nucleus,
        d.lines,
        uniform(&d.projected_line_span_dims),
        d.image_span_projective_dim,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("nucleus").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range::<u32>("1..3").unwrap(), (1, 3));
        assert_eq!(parse_range::<u32>("1..=3").unwrap(), (1, 3));
        assert_eq!(parse_range::<u32>("4").unwrap(), (4, 4));
        assert!(parse_range::<u32>("3..1").is_err());
        assert!(parse_range::<u32>("a..b").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["dim", "--m", "2", "--t", "3", "--p", "4"]).0, 2);
        assert_eq!(run_capture(&["bogus"]).0, 2);
        assert_eq!(run_capture(&["verify", "--field", "6", "--m", "1", "--t", "2"]).0, 2);
        assert_eq!(run_capture(&["demo-projection", "--format", "csv"]).0, 2);
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("characteristic 0"));
    }
}
