//! Command-line front end: congruence sweeps, element builders, relation
//! scans, criterion audits, logarithm experiments.
//!
//! Exit codes: 0 = completed with zero violations; 1 = at least one
//! congruence violation or inconsistent audit; 2 = usage or config error;
//! 3 = capacity or guardrail error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use adelic::adele::{relation_scan, relation_scan2, IntPolynomial, TruncatedAdele};
use adelic::classnum::{verify_carlitz, verify_cauchy};
use adelic::ecred::{sato_tate_histogram, trace_sweep, ShortWeierstrassCurve};
use adelic::experiments::{
    af_criterion_audit, bressoud_element, fib_element, floor_log_element, floor_sqrt_element,
    growth_audit, index_element, log_element, log_rational_disproof, lz1_partition_count,
    lz2_audit, phi_ell_analysis, pi_p_element, root_equidist, smooth_scan, t_pi_element,
    wieferich_scan, AuditVerdict, DisproofOutcome,
};
use adelic::qpoly::{verify_af_congruence, verify_bressoud_congruence};
use adelic::specialnums::{g_a, script_b, script_e, z_a};
use adelic::{Error, PrimeWindow, ReducedRational};

#[derive(Parser)]
#[command(name = "adelic", version, about = "Truncated adelic arithmetic: sweeps, elements, scans, audits")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Congruence and trace sweeps
    #[command(subcommand)]
    Sweep(SweepCmd),
    /// Build and serialize truncated elements
    #[command(subcommand)]
    Element(ElementCmd),
    /// Integer-polynomial relation scans over serialized elements
    #[command(subcommand)]
    Scan(ScanCmd),
    /// Empirical transcendence-criterion audits
    #[command(subcommand)]
    Audit(AuditCmd),
    /// Truncated-logarithm experiments
    #[command(subcommand)]
    Log(LogCmd),
    /// Equidistribution and smoothness experiments
    #[command(subcommand)]
    Exp(ExpCmd),
}

#[derive(Args)]
struct WindowArgs {
    /// Lower end of the prime window
    #[arg(long)]
    lo: u64,
    /// Upper end of the prime window
    #[arg(long)]
    hi: u64,
}

#[derive(Subcommand)]
enum SweepCmd {
    /// q-Fibonacci congruence F_p(q) = F_{I_p(q) + (ord/5)} mod p
    Fib {
        /// Rational q as "u" or "u/v"
        #[arg(long)]
        q: String,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Bressoud congruence D_{p-1}(q) = 2^{I_p(q)} mod p (two-path checked)
    Bressoud {
        #[arg(long)]
        q: String,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Cauchy congruence -2 B_{(p+1)/2} = h(-p) mod p
    Bernoulli {
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Carlitz congruence (1/2) E_{(p-1)/2} = h(-4p) mod p
    Euler {
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Frobenius trace sweep, optionally with a Sato-Tate histogram
    Ec {
        /// Curve "a,b" for y^2 = x^3 + ax + b
        #[arg(long)]
        curve: String,
        #[arg(long)]
        hi: u64,
        /// Also emit a theta histogram with this many bins
        #[arg(long)]
        hist: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum ElementCmd {
    /// Build a named element over a prime window and serialize it
    Build {
        /// One of: fib, bressoud, zA, scriptB, scriptE, gA, alphaE,
        /// floorlog, floorsqrt, index, tpi, pip, logA
        name: String,
        /// Rational parameter for fib, bressoud, index, logA
        #[arg(long)]
        q: Option<String>,
        /// Index parameter for zA and gA
        #[arg(long)]
        k: Option<u64>,
        /// Shift parameter for gA
        #[arg(long, allow_hyphen_values = true)]
        x: Option<i64>,
        /// Curve "a,b" for alphaE
        #[arg(long)]
        curve: Option<String>,
        #[command(flatten)]
        window: WindowArgs,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum ScanCmd {
    /// Scan for an integer-polynomial relation satisfied by the element(s)
    Relation {
        /// Serialized element (.json or .csv)
        #[arg(long = "in")]
        input: PathBuf,
        /// Second element: switches to the bivariate scan
        #[arg(long = "in2")]
        input2: Option<PathBuf>,
        #[arg(long)]
        dmax: u32,
        #[arg(long)]
        hmax: i64,
        #[arg(long, default_value_t = 3)]
        max_exceptions: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Lz2Values {
    /// b_p = floor(sqrt p)
    Sqrt,
    /// b_p = floor(log p)
    Log,
    /// b_p = h(-p) over p = 3 mod 4
    Classnum,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lz2Set {
    All,
    /// Primes p = 3 mod 4
    Mod43,
}

#[derive(Subcommand)]
enum AuditCmd {
    /// Infinitely-many-hits criterion against a target list
    Af {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated strictly increasing targets
        #[arg(long)]
        targets: String,
        #[arg(long, default_value_t = 3)]
        min_hits: usize,
    },
    /// Slow-growth criterion a_p -> infinity with a_p^d = o(p)
    Growth {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        dmax: u32,
    },
    /// Order/index partition of primes in [X, 2X]
    Lz1 {
        #[arg(long)]
        q: String,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        x: u64,
    },
    /// Bounded-values-on-a-dense-set criterion
    Lz2 {
        #[arg(long, value_enum)]
        values: Lz2Values,
        #[arg(long, value_enum, default_value_t = Lz2Set::All)]
        set: Lz2Set,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        eps2: f64,
        #[arg(long)]
        x: u64,
    },
}

#[derive(Subcommand)]
enum LogCmd {
    /// Primes with q_p(alpha) = target mod p
    Wieferich {
        #[arg(long)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        target: i64,
        #[arg(long)]
        hi: u64,
    },
    /// Witness search against log(alpha) = a/b
    Disprove {
        #[arg(long)]
        alpha: String,
        /// Candidate rational value "a/b"
        #[arg(long, allow_hyphen_values = true)]
        rat: String,
        #[arg(long)]
        hi: u64,
    },
    /// Exact Phi_ell(u, v) factorization and T_ell analysis
    Phiell {
        #[arg(long)]
        u: u64,
        #[arg(long)]
        v: u64,
        #[arg(long)]
        ell: u64,
        /// Hypothesized "a/b"
        #[arg(long, allow_hyphen_values = true, default_value = "1/1")]
        rat: String,
    },
}

#[derive(Subcommand)]
enum ExpCmd {
    /// Root equidistribution ratio for an irreducible quadratic
    Equidist {
        /// Coefficients, highest degree first, e.g. "1,0,1" for x^2+1
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        hi: u64,
        #[arg(long, default_value_t = 0.0)]
        lo_frac: f64,
        #[arg(long, default_value_t = 1.0)]
        hi_frac: f64,
    },
    /// n <= N with f(n) being n^theta-smooth
    Smooth {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        n: u64,
    },
}

fn parse_rat(s: &str) -> Result<ReducedRational, Error> {
    ReducedRational::parse(s)
}

/// Coefficients highest degree first on the CLI; IntPolynomial stores
/// constant first.
fn parse_poly(s: &str) -> Result<IntPolynomial, Error> {
    let mut coeffs = Vec::new();
    for part in s.split(',') {
        let c: i64 = part
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad coefficient {part:?}")))?;
        coeffs.push(c);
    }
    coeffs.reverse();
    Ok(IntPolynomial::new(coeffs))
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_element(path: &Path) -> Result<TruncatedAdele, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    if path.extension().map(|e| e == "json").unwrap_or(false) {
        TruncatedAdele::from_json(&text)
    } else {
        TruncatedAdele::from_csv(&text)
    }
}

fn verdict_code(v: AuditVerdict) -> u8 {
    match v {
        AuditVerdict::Inconsistent => 1,
        _ => 0,
    }
}

fn run_sweep(cmd: SweepCmd) -> Result<u8, Error> {
    match cmd {
        SweepCmd::Fib { q, window } => {
            let q = parse_rat(&q)?;
            let report = adelic::qpoly::sweep(window.lo, window.hi, |p| verify_af_congruence(&q, p))?;
            print!("{}", report.to_csv());
            Ok(if report.violations() > 0 { 1 } else { 0 })
        }
        SweepCmd::Bressoud { q, window } => {
            let q = parse_rat(&q)?;
            let report =
                adelic::qpoly::sweep(window.lo, window.hi, |p| verify_bressoud_congruence(&q, p))?;
            print!("{}", report.to_csv());
            Ok(if report.violations() > 0 { 1 } else { 0 })
        }
        SweepCmd::Bernoulli { window } => {
            let report = adelic::classnum::sweep(window.lo, window.hi, verify_cauchy)?;
            print!("{}", report.to_csv());
            Ok(if report.violations() > 0 { 1 } else { 0 })
        }
        SweepCmd::Euler { window } => {
            let report = adelic::classnum::sweep(window.lo, window.hi, verify_carlitz)?;
            print!("{}", report.to_csv());
            Ok(if report.violations() > 0 { 1 } else { 0 })
        }
        SweepCmd::Ec { curve, hi, hist } => {
            let e = ShortWeierstrassCurve::parse(&curve)?;
            let records = trace_sweep(&e, PrimeWindow { lo: 2, hi })?;
            println!("p,ap,theta,flag");
            for r in &records {
                println!("{},{},{:.6},ok", r.p, r.ap, r.theta);
            }
            if let Some(bins) = hist {
                let h = sato_tate_histogram(&e, hi, bins)?;
                println!("bin,mass,noncm,cm");
                for i in 0..bins {
                    println!(
                        "{i},{:.6},{:.6},{:.6}",
                        h.masses[i], h.noncm_overlay[i], h.cm_overlay[i]
                    );
                }
                println!("tv_noncm,{:.6}", h.tv_noncm);
                println!("tv_cm,{:.6}", h.tv_cm);
                println!("closer,{}", h.closer());
            }
            Ok(0)
        }
    }
}

fn run_element(cmd: ElementCmd) -> Result<u8, Error> {
    let ElementCmd::Build { name, q, k, x, curve, window, out, format } = cmd;
    let w = PrimeWindow { lo: window.lo, hi: window.hi };
    let need_q = || -> Result<ReducedRational, Error> {
        parse_rat(q.as_deref().ok_or_else(|| Error::Config(format!("{name} requires --q")))?)
    };
    let need_k = || k.ok_or_else(|| Error::Config(format!("{name} requires --k")));
    let mut code = 0u8;
    let element = match name.as_str() {
        "fib" => fib_element(&need_q()?, w)?,
        "bressoud" => bressoud_element(&need_q()?, w)?,
        "zA" => z_a(need_k()?, w)?,
        "scriptB" => script_b(w)?,
        "scriptE" => script_e(w)?,
        "gA" => {
            let xv = x.ok_or_else(|| Error::Config("gA requires --x".into()))?;
            let (a, b) = g_a(need_k()?, xv, w)?;
            if a.coords() != b.coords() {
                eprintln!("warning: gA path disagreement detected");
                code = 1;
            }
            a
        }
        "alphaE" => {
            let c = curve.ok_or_else(|| Error::Config("alphaE requires --curve".into()))?;
            adelic::ecred::alpha_e(&ShortWeierstrassCurve::parse(&c)?, w)?
        }
        "floorlog" => floor_log_element(w)?,
        "floorsqrt" => floor_sqrt_element(w)?,
        "index" => index_element(&need_q()?, w)?,
        "tpi" => t_pi_element(w)?,
        "pip" => pi_p_element(w)?,
        "logA" => log_element(&need_q()?, w)?,
        other => return Err(Error::Config(format!("unknown element name {other:?}"))),
    };
    let content = match format {
        Format::Csv => element.to_csv(),
        Format::Json => element.to_json(),
    };
    emit(&out, &content)?;
    Ok(code)
}

fn run_scan(cmd: ScanCmd) -> Result<u8, Error> {
    let ScanCmd::Relation { input, input2, dmax, hmax, max_exceptions } = cmd;
    let alpha = load_element(&input)?;
    let json = match input2 {
        Some(p2) => {
            let beta = load_element(&p2)?;
            let report = relation_scan2(&alpha, &beta, dmax, hmax, max_exceptions)?;
            serde_json::to_string_pretty(&report).expect("report serializes")
        }
        None => {
            let report = relation_scan(&alpha, dmax, hmax, max_exceptions)?;
            serde_json::to_string_pretty(&report).expect("report serializes")
        }
    };
    println!("{json}");
    Ok(0)
}

fn run_audit(cmd: AuditCmd) -> Result<u8, Error> {
    let report = match cmd {
        AuditCmd::Af { input, targets, min_hits } => {
            let alpha = load_element(&input)?;
            let mut b = Vec::new();
            for part in targets.split(',') {
                b.push(
                    part.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Config(format!("bad target {part:?}")))?,
                );
            }
            af_criterion_audit(&alpha, &b, min_hits)?
        }
        AuditCmd::Growth { input, dmax } => {
            let alpha = load_element(&input)?;
            let values: Vec<(u64, u64)> = alpha
                .primes()
                .iter()
                .zip(alpha.coords())
                .filter_map(|(&p, c)| c.value().map(|v| (p, v)))
                .collect();
            growth_audit(&values, dmax)?
        }
        AuditCmd::Lz1 { q, r, c, n, x } => lz1_partition_count(&parse_rat(&q)?, r, c, n, x)?,
        AuditCmd::Lz2 { values, set, eps, eps2, x } => {
            let in_set = move |p: u64| match set {
                Lz2Set::All => true,
                Lz2Set::Mod43 => p % 4 == 3,
            };
            let b = move |p: u64| match values {
                Lz2Values::Sqrt => (p as f64).sqrt() as u64,
                Lz2Values::Log => (p as f64).ln() as u64,
                Lz2Values::Classnum => {
                    adelic::classnum::FundamentalDiscriminant::new(-(p as i64))
                        .map(adelic::classnum::class_number_forms)
                        .unwrap_or(0)
                }
            };
            lz2_audit(in_set, b, eps, eps2, x)?
        }
    };
    println!("{}", report.to_json());
    Ok(verdict_code(report.verdict))
}

fn run_log(cmd: LogCmd) -> Result<u8, Error> {
    match cmd {
        LogCmd::Wieferich { alpha, target, hi } => {
            let alpha = parse_rat(&alpha)?;
            for p in wieferich_scan(&alpha, target, hi)? {
                println!("{p}");
            }
            Ok(0)
        }
        LogCmd::Disprove { alpha, rat, hi } => {
            let alpha = parse_rat(&alpha)?;
            let r = parse_rat(&rat)?;
            match log_rational_disproof(&alpha, r.num(), r.den(), hi)? {
                DisproofOutcome::Witness(p) => println!("witness,{p}"),
                DisproofOutcome::Exhausted => println!("exhausted"),
            }
            Ok(0)
        }
        LogCmd::Phiell { u, v, ell, rat } => {
            let r = parse_rat(&rat)?;
            let report = phi_ell_analysis(u, v, ell, r.num(), r.den())?;
            println!("{}", report.to_json());
            Ok(if report.factors.iter().all(|f| f.one_mod_ell) { 0 } else { 1 })
        }
    }
}

fn run_exp(cmd: ExpCmd) -> Result<u8, Error> {
    match cmd {
        ExpCmd::Equidist { f, hi, lo_frac, hi_frac } => {
            let f = parse_poly(&f)?;
            let r = root_equidist(&f, hi, lo_frac, hi_frac)?;
            println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
            Ok(0)
        }
        ExpCmd::Smooth { f, theta, n } => {
            let f = parse_poly(&f)?;
            for m in smooth_scan(&f, theta, n)? {
                println!("{m}");
            }
            Ok(0)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Sweep(c) => run_sweep(c),
        Cmd::Element(c) => run_element(c),
        Cmd::Scan(c) => run_scan(c),
        Cmd::Audit(c) => run_audit(c),
        Cmd::Log(c) => run_log(c),
        Cmd::Exp(c) => run_exp(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Capacity(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
