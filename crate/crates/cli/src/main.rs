//! Command-line driver: every verification sweep and experiment maps to a
//! subcommand that writes a CSV file (header row; exact rationals as
//! `num/den`, decimal columns suffixed `_dec`) and prints a one-line
//! summary to stdout.
//!
//! Exit status: 0 when all asserted checks pass, 2 on a check failure,
//! 1 on a usage or configuration error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num::{One, Signed};

use expint_cf::exact::{decimal_render, parse_rational, pow10, rat_csv, rat_int, Int, Rat};
use expint_cf::gompertz::{self, Parity};
use expint_cf::{cf, identity, laguerre, oracle, Error as CoreError, Report};

/// Environment variable overriding the default sandwich depth cap.
const DEPTH_CAP_VAR: &str = "EXPINT_CF_DEPTH_CAP";

#[derive(Parser)]
#[command(name = "expint-cf", version, about = "Exact continued fractions for e^x E1(x) and the Euler-Gompertz constant")]
struct Cli {
    /// Seed recorded for randomized suites; all current subcommands are
    /// fully deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
    All,
}

impl From<ParityArg> for Parity {
    fn from(value: ParityArg) -> Self {
        match value {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
            ParityArg::All => Parity::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the convergent polynomial rows P_m, Q_m for m <= depth.
    Convergents {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the determinant identity, the beta/gamma closed forms and
    /// recurrences, the coefficient chain, and the derivative sign sweep.
    IdentityCheck {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the coefficientwise denominator lower bounds for k <= depth.
    BoundsCheck {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enclose F(x) between consecutive convergents at sandwich depth k.
    Enclose {
        /// Evaluation point, rational (`a/b`) or decimal.
        #[arg(long)]
        x: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enclose the continued-fraction tails F_m(x) for m <= depth and
    /// compare measured convergent gaps against the a-priori bounds.
    Tails {
        #[arg(long)]
        x: String,
        #[arg(long)]
        depth: usize,
        /// Oracle error target (>= 1e-12).
        #[arg(long, default_value = "1e-12")]
        eps: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the Laguerre correspondence and recurrence, and report the
    /// asymptotic ratio ladder.
    LaguerreCheck {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enclose the Euler-Gompertz constant to the requested width.
    Delta {
        #[arg(long)]
        eps: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan the fractional-part signal delta {q_m} - {p_m} for m <= depth.
    ScanFrac {
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = ParityArg::All)]
        parity: ParityArg,
        #[arg(long, default_value_t = 40)]
        bins: usize,
        /// Width target for the delta enclosure used by the scan.
        #[arg(long, default_value = "1e-30")]
        eps: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Longest weakly monotone subsequence of the signal per parity class.
    SubseqScan {
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = ParityArg::All)]
        parity: ParityArg,
        #[arg(long, default_value = "1e-30")]
        eps: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cluster the signal into eps-bins and build the A_i/B_i residual rows.
    AbBuild {
        #[arg(long)]
        depth: usize,
        /// Cluster bin width over (-1, 1).
        #[arg(long, default_value = "1e-3")]
        eps: String,
        #[arg(long, value_enum, default_value_t = ParityArg::All)]
        parity: ParityArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce both signal-distribution figures as CSV files.
    Figures {
        #[arg(long, default_value_t = 10_000)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum AppError {
    Usage(String),
    Check(String),
}

impl From<CoreError> for AppError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::IndeterminateSign { .. }
            | CoreError::IntegralityViolation { .. }
            | CoreError::TooFewIndices { .. } => AppError::Check(e.to_string()),
            _ => AppError::Usage(e.to_string()),
        }
    }
}

type AppResult<T> = Result<T, AppError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(failures) if failures == 0 => ExitCode::SUCCESS,
        Ok(failures) => {
            eprintln!("{failures} check(s) failed");
            ExitCode::from(2)
        }
        Err(AppError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(AppError::Check(message)) => {
            eprintln!("check failed: {message}");
            ExitCode::from(2)
        }
    }
}

fn parse_rat_arg(text: &str, what: &str) -> AppResult<Rat> {
    parse_rational(text).map_err(|_| AppError::Usage(format!("cannot parse --{what} {text:?}")))
}

fn depth_cap() -> AppResult<usize> {
    match std::env::var(DEPTH_CAP_VAR) {
        Ok(text) => text
            .parse::<usize>()
            .map_err(|_| AppError::Usage(format!("{DEPTH_CAP_VAR} must be a positive integer"))),
        Err(_) => Ok(gompertz::DEFAULT_DEPTH_CAP),
    }
}

fn delta_at_width(eps: &Rat) -> AppResult<gompertz::DeltaEnclosure> {
    Ok(gompertz::delta_enclosure_with_cap(eps, depth_cap()?)?)
}

/// Writes the file atomically: temp file in the same directory + rename.
fn write_atomic(path: &Path, contents: &str) -> AppResult<()> {
    let tmp = path.with_extension("csv.tmp");
    std::fs::write(&tmp, contents)
        .and_then(|_| std::fs::rename(&tmp, path))
        .map_err(|e| AppError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn out_path(out: Option<PathBuf>, default_name: &str) -> PathBuf {
    out.unwrap_or_else(|| PathBuf::from(default_name))
}

/// Number of decimal digits needed to display a width-`eps` interval.
fn digits_for(eps: &Rat) -> usize {
    for digits in 1..=200usize {
        if Rat::new(Int::one(), pow10(digits)) <= *eps {
            return digits;
        }
    }
    200
}

fn report_csv(buffer: &mut String, report: &Report) {
    let _ = writeln!(
        buffer,
        "{},{},{}",
        report.name(),
        report.checked(),
        report.failures()
    );
}

fn run(command: Command) -> AppResult<u64> {
    match command {
        Command::Convergents { depth, out } => convergents(depth, out),
        Command::IdentityCheck { depth, out } => identity_check(depth, out),
        Command::BoundsCheck { depth, out } => bounds_check(depth, out),
        Command::Enclose { x, k, out } => enclose(&x, k, out),
        Command::Tails { x, depth, eps, out } => tails(&x, depth, &eps, out),
        Command::LaguerreCheck { depth, out } => laguerre_check(depth, out),
        Command::Delta { eps, out } => delta(&eps, out),
        Command::ScanFrac {
            depth,
            parity,
            bins,
            eps,
            out,
        } => scan_frac(depth, parity.into(), bins, &eps, out),
        Command::SubseqScan {
            depth,
            parity,
            eps,
            out,
        } => subseq_scan(depth, parity.into(), &eps, out),
        Command::AbBuild {
            depth,
            eps,
            parity,
            out,
        } => ab_build(depth, &eps, parity.into(), out),
        Command::Figures { depth, out } => figures(depth, out),
    }
}

fn poly_csv(poly: &expint_cf::Poly) -> String {
    poly.coeffs()
        .iter()
        .map(rat_csv)
        .collect::<Vec<_>>()
        .join(";")
}

fn convergents(depth: usize, out: Option<PathBuf>) -> AppResult<u64> {
    let rows = cf::convergent_polys(depth);
    let mut csv = String::from("m,deg_num,deg_den,num_coeffs,den_coeffs\n");
    let mut failures = 0u64;
    for row in rows.iter().skip(2) {
        let m = row.m as usize;
        let k = m.div_ceil(2);
        if row.den.degree() != Some(k) || row.num.degree() != Some(k - 1) {
            failures += 1;
        }
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            m,
            row.num.degree().map_or(-1, |d| d as i64),
            row.den.degree().map_or(-1, |d| d as i64),
            poly_csv(&row.num),
            poly_csv(&row.den)
        );
    }
    let path = out_path(out, "convergents.csv");
    write_atomic(&path, &csv)?;
    println!(
        "convergents: depth={} rows={} failures={} out={}",
        depth,
        depth,
        failures,
        path.display()
    );
    Ok(failures)
}

fn identity_check(depth: usize, out: Option<PathBuf>) -> AppResult<u64> {
    if depth < 3 {
        return Err(AppError::Usage("identity-check needs --depth >= 3".into()));
    }
    let sample_points = [rat_int(1) / rat_int(2), rat_int(1), rat_int(2), rat_int(10)];
    let reports = [
        cf::determinant_identity(depth),
        identity::verify_beta_gamma_closed_forms(depth),
        identity::verify_beta_gamma_recurrences(depth),
        identity::verify_coefficient_chain(depth),
        identity::verify_gap_derivative_signs(depth.min(100), &sample_points),
    ];
    let mut csv = String::from("check,checked,failures\n");
    let mut failures = 0;
    for report in &reports {
        report_csv(&mut csv, report);
        failures += report.failures();
    }
    let path = out_path(out, "identity-check.csv");
    write_atomic(&path, &csv)?;
    println!(
        "identity-check: depth={} checks={} failures={} out={}",
        depth,
        reports.iter().map(Report::checked).sum::<u64>(),
        failures,
        path.display()
    );
    Ok(failures)
}

fn bounds_check(depth: usize, out: Option<PathBuf>) -> AppResult<u64> {
    if depth < 1 {
        return Err(AppError::Usage("bounds-check needs --depth >= 1".into()));
    }
    let report = cf::verify_denominator_lower_bounds(depth);
    let mut csv = String::from("check,checked,failures\n");
    report_csv(&mut csv, &report);
    let path = out_path(out, "bounds-check.csv");
    write_atomic(&path, &csv)?;
    println!(
        "bounds-check: depth={} checks={} failures={} out={}",
        depth,
        report.checked(),
        report.failures(),
        path.display()
    );
    Ok(report.failures())
}

fn enclose(x_text: &str, k: usize, out: Option<PathBuf>) -> AppResult<u64> {
    let x = parse_rat_arg(x_text, "x")?;
    let enclosure = cf::enclose(&x, k)?;
    let bound_even = cf::convergence_bound(2 * k, &x)?;
    let bound_odd = cf::convergence_bound(2 * k - 1, &x)?;
    let width = enclosure.width();
    let mut csv = String::from("lo,hi,width,bound_even,bound_odd,lo_dec,hi_dec,width_dec\n");
    let _ = writeln!(
        csv,
        "{},{},{},{},{},{},{},{}",
        rat_csv(enclosure.lo()),
        rat_csv(enclosure.hi()),
        rat_csv(&width),
        rat_csv(&bound_even),
        rat_csv(&bound_odd),
        decimal_render(enclosure.lo(), 30),
        decimal_render(enclosure.hi(), 30),
        decimal_render(&width, 30),
    );
    let path = out_path(out, "enclose.csv");
    write_atomic(&path, &csv)?;
    println!(
        "enclose: x={} k={} width={} (~{}) out={}",
        x_text,
        k,
        rat_csv(&width),
        decimal_render(&width, 12),
        path.display()
    );
    Ok(0)
}

fn tails(x_text: &str, depth: usize, eps_text: &str, out: Option<PathBuf>) -> AppResult<u64> {
    let x = parse_rat_arg(x_text, "x")?;
    let eps = parse_rat_arg(eps_text, "eps")?;
    let oracle_value = oracle::reference_value(&x, &eps)?;
    let mut csv =
        String::from("m,threshold,tail_lo_dec,tail_hi_dec,above_threshold,conv_gap_dec,bound_dec\n");
    let mut failures = 0u64;
    let mut indeterminate_at = None;
    for m in 1..=depth {
        let tail = match cf::tail_enclosure(m, &x, &oracle_value) {
            Ok(t) => t,
            Err(CoreError::IndeterminateSign { index, .. }) => {
                indeterminate_at = Some(index);
                break;
            }
            Err(e) => return Err(e.into()),
        };
        let threshold = if m % 2 == 1 {
            x.clone()
        } else {
            Rat::new(Int::from(2), Int::from(m))
        };
        let ok = tail.lo() > &threshold;
        if !ok {
            failures += 1;
        }
        let (num, den) = cf::eval_convergent(m, &x)?;
        let measured_gap = (&oracle_value.value - num / &den).abs() + &oracle_value.err;
        let bound = cf::convergence_bound(m, &x)?;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            m,
            rat_csv(&threshold),
            decimal_render(tail.lo(), 12),
            decimal_render(tail.hi(), 12),
            ok,
            decimal_render(&measured_gap, 15),
            decimal_render(&bound, 15),
        );
    }
    let path = out_path(out, "tails.csv");
    write_atomic(&path, &csv)?;
    if let Some(m) = indeterminate_at {
        println!(
            "tails: x={} depth={} indeterminate at m={} (oracle eps={}) out={}",
            x_text,
            depth,
            m,
            eps_text,
            path.display()
        );
        return Err(AppError::Check(format!(
            "tail sign indeterminate at m={m}; tighten --eps"
        )));
    }
    println!(
        "tails: x={} depth={} failures={} out={}",
        x_text,
        depth,
        failures,
        path.display()
    );
    Ok(failures)
}

fn laguerre_check(depth: usize, out: Option<PathBuf>) -> AppResult<u64> {
    if depth < 1 {
        return Err(AppError::Usage("laguerre-check needs --depth >= 1".into()));
    }
    let correspondence = laguerre::verify_correspondence(depth);
    let half = rat_int(1) / rat_int(2);
    let recurrences: Vec<Report> = [rat_int(0), rat_int(-1), half]
        .iter()
        .map(|alpha| laguerre::verify_recurrence(alpha, depth))
        .collect();
    let mut csv = String::from("check,checked,failures\n");
    report_csv(&mut csv, &correspondence);
    let mut failures = correspondence.failures();
    for report in &recurrences {
        report_csv(&mut csv, report);
        failures += report.failures();
    }
    csv.push_str("ratio_k,ratio_dec\n");
    let one = rat_int(1);
    for k in [16usize, 64, 256, 1024, 4096] {
        let ratio = laguerre::asymptotic_ratio(k, &one)?;
        let _ = writeln!(csv, "{},{}", k, decimal_render(&ratio, 12));
    }
    let path = out_path(out, "laguerre-check.csv");
    write_atomic(&path, &csv)?;
    println!(
        "laguerre-check: depth={} failures={} out={}",
        depth,
        failures,
        path.display()
    );
    Ok(failures)
}

fn delta(eps_text: &str, out: Option<PathBuf>) -> AppResult<u64> {
    let eps = parse_rat_arg(eps_text, "eps")?;
    let delta = delta_at_width(&eps)?;
    let digits = digits_for(&eps);
    let enclosure = &delta.enclosure;
    let width = enclosure.width();
    let mut csv = String::from("k,lo,hi,width,lo_dec,hi_dec,width_dec,mid_dec\n");
    let _ = writeln!(
        csv,
        "{},{},{},{},{},{},{},{}",
        delta.k,
        rat_csv(enclosure.lo()),
        rat_csv(enclosure.hi()),
        rat_csv(&width),
        decimal_render(enclosure.lo(), digits + 5),
        decimal_render(enclosure.hi(), digits + 5),
        decimal_render(&width, digits + 5),
        decimal_render(&enclosure.midpoint(), digits + 5),
    );
    let path = out_path(out, "delta.csv");
    write_atomic(&path, &csv)?;
    println!(
        "delta: {} (width < {} at k={}) out={}",
        decimal_render(&enclosure.midpoint(), digits),
        eps_text,
        delta.k,
        path.display()
    );
    Ok(0)
}

fn scan_frac(
    depth: usize,
    parity: Parity,
    bins: usize,
    eps_text: &str,
    out: Option<PathBuf>,
) -> AppResult<u64> {
    let eps = parse_rat_arg(eps_text, "eps")?;
    let delta = delta_at_width(&eps)?;
    let mut csv =
        String::from("m,parity,p_frac_dec,q_frac_dec,signal_lo_dec,signal_hi_dec,signal_mid_dec\n");
    let summary = gompertz::distribution_scan(depth, parity, &delta.enclosure, bins, 12, |row| {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            row.m,
            if row.even { "even" } else { "odd" },
            row.p_frac_dec,
            row.q_frac_dec,
            row.signal_lo_dec,
            row.signal_hi_dec,
            row.signal_mid_dec,
        );
    })?;
    let path = out_path(out, "scan-frac.csv");
    write_atomic(&path, &csv)?;
    let failures = u64::from(!summary.all_in_range);
    println!(
        "scan-frac: depth={} parity={} scanned={} in_range={} range=[{}, {}] discrepancy={:.4} out={}",
        depth,
        parity.as_str(),
        summary.scanned,
        summary.all_in_range,
        summary.min_mid_dec,
        summary.max_mid_dec,
        summary.uniform_discrepancy,
        path.display()
    );
    println!("histogram[{} bins over (-1,1)]: {:?}", summary.bins, summary.histogram);
    Ok(failures)
}

fn subseq_scan(
    depth: usize,
    parity: Parity,
    eps_text: &str,
    out: Option<PathBuf>,
) -> AppResult<u64> {
    let eps = parse_rat_arg(eps_text, "eps")?;
    let delta = delta_at_width(&eps)?;
    let parities: Vec<Parity> = match parity {
        Parity::All => vec![Parity::Even, Parity::Odd],
        p => vec![p],
    };
    let mut csv = String::from("parity,direction,pos,k,m\n");
    for p in &parities {
        let report = gompertz::subseq_scan(depth, *p, &delta.enclosure)?;
        for &pos in &report.indices {
            let k = pos + 1;
            let m = match p {
                Parity::Even => 2 * k,
                Parity::Odd => 2 * k - 1,
                Parity::All => unreachable!(),
            };
            let _ = writeln!(
                csv,
                "{},{},{},{},{}",
                p.as_str(),
                report.direction.as_str(),
                pos,
                k,
                m
            );
        }
        println!(
            "subseq-scan: parity={} direction={} scanned={} length={} certified={}",
            p.as_str(),
            report.direction.as_str(),
            report.scanned,
            report.length,
            report.certified
        );
    }
    let path = out_path(out, "subseq-scan.csv");
    write_atomic(&path, &csv)?;
    println!("subseq-scan: depth={} out={}", depth, path.display());
    Ok(0)
}

fn ab_build(
    depth: usize,
    eps_text: &str,
    parity: Parity,
    out: Option<PathBuf>,
) -> AppResult<u64> {
    let eps = parse_rat_arg(eps_text, "eps")?;
    let delta = delta_at_width(&parse_rational("1e-30").expect("constant"))?;
    let indices = gompertz::cluster_subsequence(depth, &eps, parity, &delta.enclosure)?;
    let rows = gompertz::build_ab(&indices, &delta.enclosure)?;
    let mut csv = String::from(
        "i,m_from,m_to,a,b,residual_lo,residual_hi,residual_lo_dec,residual_hi_dec,excludes_zero\n",
    );
    let mut certified = 0usize;
    for row in &rows {
        certified += usize::from(row.excludes_zero);
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{}",
            row.i,
            row.m_from,
            row.m_to,
            row.a,
            row.b,
            rat_csv(row.residual.lo()),
            rat_csv(row.residual.hi()),
            decimal_render(row.residual.lo(), 15),
            decimal_render(row.residual.hi(), 15),
            row.excludes_zero,
        );
    }
    let path = out_path(out, "ab-build.csv");
    write_atomic(&path, &csv)?;
    println!(
        "ab-build: depth={} eps={} parity={} cluster={} rows={} nonzero_certified={} indeterminate={} out={}",
        depth,
        eps_text,
        parity.as_str(),
        indices.len(),
        rows.len(),
        certified,
        rows.len() - certified,
        path.display()
    );
    Ok(0)
}

fn figures(depth: usize, out: Option<PathBuf>) -> AppResult<u64> {
    let delta = delta_at_width(&parse_rational("1e-30").expect("constant"))?;
    let base = out_path(out, "figures.csv");
    let stem = base
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("figures")
        .to_string();
    let derived = |suffix: &str| base.with_file_name(format!("{stem}_{suffix}.csv"));

    let mut all_csv = String::from("m,signal_dec\n");
    let all = gompertz::distribution_scan(depth, Parity::All, &delta.enclosure, 40, 12, |row| {
        let _ = writeln!(all_csv, "{},{}", row.m, row.signal_mid_dec);
    })?;
    let all_path = derived("all");
    write_atomic(&all_path, &all_csv)?;

    let mut even_csv = String::from("k,signal_dec\n");
    let even = gompertz::distribution_scan(depth, Parity::Even, &delta.enclosure, 40, 12, |row| {
        let _ = writeln!(even_csv, "{},{}", row.m / 2, row.signal_mid_dec);
    })?;
    let even_path = derived("even");
    write_atomic(&even_path, &even_csv)?;

    let failures = u64::from(!all.all_in_range) + u64::from(!even.all_in_range);
    println!(
        "figures: depth={} all[scanned={} in_range={} discrepancy={:.4}] even[scanned={} in_range={}] out={},{}",
        depth,
        all.scanned,
        all.all_in_range,
        all.uniform_discrepancy,
        even.scanned,
        even.all_in_range,
        all_path.display(),
        even_path.display()
    );
    Ok(failures)
}
