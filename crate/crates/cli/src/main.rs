//! `knotrho`: signatures, ρ-invariants and complexity bounds from the
//! command line.

mod output;
mod spec;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use knotrho::bounds::{
    bound_report, gap_lower_bound, signature_bound_from_average, slope_length, CuspData, CONSTANTS,
    TWO_PI,
};
use knotrho::knot::{jn_seifert, mirror};
use knotrho::rho::{rho_knot_surgery, rho_knot_via_levels};
use knotrho::signature::{alexander_vanishes, avg_signature, avg_signature_exact, levine_tristram};
use knotrho::verify::{verify_bounds, verify_gap, verify_gilmer, verify_litherland, CheckOutcome};
use knotrho::{Error, Mode, UnitRoot};

use output::{emit, Format, Record};
use spec::KnotSpec;

const EXIT_VERIFY: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNCERTIFIED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "knotrho",
    version,
    about = "Knot signatures, rho-invariants and triangulation complexity bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModeArgs {
    /// Arithmetic for signatures; defaults to $RHO_MODE, then exact.
    #[arg(long, env = "RHO_MODE")]
    mode: Option<Mode>,
    /// Exit with status 3 unless every signature is certified.
    #[arg(long)]
    require_certified: bool,
}

#[derive(Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Litherland,
    Gilmer,
    Bounds,
    Gap,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Levine-Tristram signature at e^{2πik/d}.
    Sig {
        knot: KnotSpec,
        /// The root of unity as k/d.
        #[arg(long)]
        omega: UnitRoot,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Signature averaged over the nontrivial d-th roots of unity.
    AvgSig {
        knot: KnotSpec,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Cheeger-Gromov rho-invariant of n-surgery for the map onto Z_|n|.
    Rho {
        knot: KnotSpec,
        #[arg(long, allow_hyphen_values = true)]
        slope: i64,
        /// Also print the Casson-Gordon signatures sigma_k.
        #[arg(long)]
        levels: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Lower and upper complexity bounds for n-surgery.
    Bounds {
        knot: KnotSpec,
        #[arg(long, allow_hyphen_values = true)]
        slope: i64,
        /// Crossing number of the knot.
        #[arg(long)]
        crossing: Option<u64>,
        /// Upper bound on the slice genus of the knot.
        #[arg(long)]
        g4: Option<u64>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Gap bound between complexity and Gromov norm for d-surgery on J_n.
    GapTable {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        n_max: i64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Length of the slope p/q on a cusp, by default the published one.
    SlopeLength {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long, allow_hyphen_values = true)]
        meridian_re: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        meridian_im: Option<f64>,
        #[arg(long)]
        longitude: Option<f64>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run self-check suites; exits 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        n_max: Option<i64>,
        #[arg(long)]
        d_max: Option<i64>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Consistency(_)) {
            EXIT_VERIFY
        } else {
            EXIT_INPUT
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_VERIFY,
            message: format!("write failed: {e}"),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Sig {
            knot,
            omega,
            mode,
            format,
        } => cmd_sig(&mut out, &knot, &omega, &mode, format.format),
        Command::AvgSig {
            knot,
            d,
            mode,
            format,
        } => cmd_avg_sig(&mut out, &knot, d, &mode, format.format),
        Command::Rho {
            knot,
            slope,
            levels,
            format,
        } => cmd_rho(&mut out, &knot, slope, levels, format.format),
        Command::Bounds {
            knot,
            slope,
            crossing,
            g4,
            format,
        } => cmd_bounds(&mut out, &knot, slope, crossing, g4, format.format),
        Command::GapTable { d, n_max, format } => cmd_gap_table(&mut out, d, n_max, format.format),
        Command::SlopeLength {
            p,
            q,
            meridian_re,
            meridian_im,
            longitude,
            format,
        } => {
            let published = CONSTANTS.cusp;
            let cusp = CuspData::new(
                Complex64::new(
                    meridian_re.unwrap_or(published.meridian.re),
                    meridian_im.unwrap_or(published.meridian.im),
                ),
                longitude.unwrap_or(published.longitude),
            )?;
            cmd_slope_length(&mut out, &cusp, p, q, format.format)
        }
        Command::Verify {
            suite,
            n_max,
            d_max,
        } => cmd_verify(&mut out, suite, n_max, d_max),
    }
}

fn load(knot: &KnotSpec) -> Result<knotrho::SeifertMatrix, Failure> {
    knot.seifert().map_err(Failure::input)
}

fn certification(mode: &ModeArgs, certified: bool) -> Outcome {
    if mode.require_certified && !certified {
        return Err(Failure {
            code: EXIT_UNCERTIFIED,
            message: "result is not certified; rerun with --mode exact".into(),
        });
    }
    Ok(())
}

fn cmd_sig(
    out: &mut impl Write,
    knot: &KnotSpec,
    omega: &UnitRoot,
    mode: &ModeArgs,
    format: Format,
) -> Outcome {
    let a = load(knot)?;
    let m = mode.mode.unwrap_or_default();
    let t = levine_tristram(&a, omega, m);
    let singular = if omega.is_one() {
        let delta = a.alexander_polynomial();
        delta.iter().sum::<BigInt>().is_zero()
    } else {
        alexander_vanishes(&a, omega)?
    };
    let (k, d) = omega.original();
    let rec = Record::new()
        .with("knot", knot.to_string())
        .with("omega", format!("{k}/{d}"))
        .with("mode", m.to_string())
        .with("signature", t.signature())
        .with("positive", t.positive)
        .with("zero", t.zero)
        .with("negative", t.negative)
        .with("certified", t.certified)
        .with("singular", singular);
    emit(out, format, &[rec])?;
    certification(mode, t.certified)
}

fn cmd_avg_sig(
    out: &mut impl Write,
    knot: &KnotSpec,
    d: u32,
    mode: &ModeArgs,
    format: Format,
) -> Outcome {
    let a = load(knot)?;
    let m = mode.mode.unwrap_or_default();
    let avg = avg_signature(&a, d, m);
    let rec = Record::new()
        .with("knot", knot.to_string())
        .with("d", i64::from(d))
        .with("mode", m.to_string())
        .with("avg_sig", avg.value)
        .with("certified", avg.certified);
    emit(out, format, &[rec])?;
    certification(mode, avg.certified)
}

fn cmd_rho(
    out: &mut impl Write,
    knot: &KnotSpec,
    slope: i64,
    levels: bool,
    format: Format,
) -> Outcome {
    let a = load(knot)?;
    let rho = rho_knot_surgery(&a, slope)?;
    let mut rec = Record::new()
        .with("knot", knot.to_string())
        .with("slope", slope)
        .with("rho", rho.clone());
    if levels {
        // for n < 0 the value is that of |n|-surgery on the mirror
        let r = if slope > 0 {
            rho_knot_via_levels(&a, slope)?
        } else {
            rho_knot_via_levels(&mirror(&a), -slope)?
        };
        if r.value != rho {
            return Err(Error::Consistency(format!(
                "per-level average {} differs from {rho}",
                r.value
            ))
            .into());
        }
        for (k, s) in r.per_level.into_iter().enumerate() {
            rec.push(&format!("sigma_{k}"), s);
        }
    }
    emit(out, format, &[rec])?;
    Ok(())
}

fn cmd_bounds(
    out: &mut impl Write,
    knot: &KnotSpec,
    slope: i64,
    crossing: Option<u64>,
    g4: Option<u64>,
    format: Format,
) -> Outcome {
    let a = load(knot)?;
    let r = bound_report(&a, slope, crossing, g4)?;
    let vacuous: Vec<&str> = r
        .vacuous()
        .into_iter()
        .filter(|&(_, v)| v)
        .map(|(k, _)| k)
        .collect();
    let consistent = r.is_consistent();
    let rec = Record::new()
        .with("knot", knot.to_string())
        .with("slope", r.slope)
        .with("crossing", r.crossing.map(BigInt::from))
        .with("g4", r.g4.map(BigInt::from))
        .with("avg_sig", r.avg_signature)
        .with("lower_signature", r.lower_signature)
        .with("lower_slice_genus", r.lower_slice_genus)
        .with("lower_crossing", r.lower_crossing)
        .with("best_lower", r.best_lower)
        .with("upper", r.upper)
        .with("consistent", consistent)
        .with("vacuous", vacuous.join(";"));
    emit(out, format, &[rec])?;
    Ok(())
}

fn cmd_gap_table(out: &mut impl Write, d: i64, n_max: i64, format: Format) -> Outcome {
    if d <= 1 {
        return Err(Failure::input(format!(
            "the gap table needs d > 1, got {d}"
        )));
    }
    if n_max < 3 {
        return Err(Failure::input(format!(
            "the gap table needs --n-max >= 3, got {n_max}"
        )));
    }
    let du = u32::try_from(d).map_err(|_| Failure::input(format!("d = {d} is too large")))?;
    let mut rows = Vec::new();
    for n in 3..=n_max {
        let avg = avg_signature_exact(&jn_seifert(n)?, du);
        let thm_b = signature_bound_from_average(&avg, d);
        rows.push(
            Record::new()
                .with("n", n)
                .with("d", d)
                .with("avg_sig", avg)
                .with("thmB_lower", thm_b)
                .with("gap_lower", gap_lower_bound(n, d)?),
        );
    }
    emit(out, format, &rows)?;
    Ok(())
}

fn cmd_slope_length(
    out: &mut impl Write,
    cusp: &CuspData,
    p: i64,
    q: i64,
    format: Format,
) -> Outcome {
    let length = slope_length(cusp, p, q)?;
    let rec = Record::new()
        .with("p", p)
        .with("q", q)
        .with("length", length)
        .with("longer_than_2pi", length > TWO_PI);
    emit(out, format, &[rec])?;
    Ok(())
}

fn report(out: &mut impl Write, suite: &str, checks: &[CheckOutcome]) -> io::Result<bool> {
    for c in checks {
        match &c.counterexample {
            None => writeln!(out, "PASS  {suite}: {} ({} cases)", c.name, c.checked)?,
            Some(ce) => writeln!(out, "FAIL  {suite}: {} ({} cases): {ce}", c.name, c.checked)?,
        }
    }
    Ok(checks.iter().all(CheckOutcome::passed))
}

fn cmd_verify(
    out: &mut impl Write,
    suite: Suite,
    n_max: Option<i64>,
    d_max: Option<i64>,
) -> Outcome {
    let all = matches!(suite, Suite::All);
    let mut ok = true;
    if all || matches!(suite, Suite::Litherland) {
        let (checks, points) = verify_litherland(n_max.unwrap_or(20), d_max.unwrap_or(40));
        ok &= report(out, "litherland", &checks)?;
        for p in &points {
            writeln!(
                out,
                "      singular point n={} k/d={}/{}: definition {} closed form {}",
                p.n, p.k, p.d, p.definition, p.closed_form
            )?;
        }
    }
    if all || matches!(suite, Suite::Gilmer) {
        ok &= report(out, "gilmer", &verify_gilmer(n_max.unwrap_or(25)))?;
    }
    if all || matches!(suite, Suite::Bounds) {
        ok &= report(out, "bounds", &verify_bounds(n_max.unwrap_or(100)))?;
    }
    if all || matches!(suite, Suite::Gap) {
        ok &= report(
            out,
            "gap",
            &verify_gap(n_max.unwrap_or(12), d_max.unwrap_or(12)),
        )?;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VERIFY,
            message: "verification failed".into(),
        })
    }
}
