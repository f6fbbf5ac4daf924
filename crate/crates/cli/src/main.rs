//! `warpknot` command-line front end.
//!
//! Every command prints human-readable lines followed by single-line
//! `RESULT <command> key=value ...` records. Exit codes: 0 success,
//! 1 a reported check failed, 2 usage error, 3 input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use warpknot::diagram::{
    parse_arc_file, parse_curve_file, parse_gauss_file, parse_shadow_file, Numbered,
};
use warpknot::planar::{self, Orientation, OrientationChoice, PlanarError};
use warpknot::statesum::{self, StateSumError};
use warpknot::verify::{self, VerifyConfig};
use warpknot::warping::{self, WarpingError};
use warpknot::{BasedPlanarCurve, CrossingId, GaussDiagram, IntPolynomial, PlanarCurve, Shadow};

#[derive(Debug, Parser)]
#[command(name = "warpknot", version, about = "Warping polynomials of knot diagrams and canonical orientations of plane curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// W, X, warping degrees and classification of each diagram in a `.gauss` or `.arc` file.
    Poly { path: PathBuf },
    /// W and X of each spatial arc diagram in an `.arc` file.
    Arc { path: PathBuf },
    /// State sums of each shadow in a `.shadow` or `.gauss` file.
    Statesum {
        path: PathBuf,
        #[arg(long, default_value_t = statesum::DEFAULT_CROSSING_LIMIT)]
        limit: usize,
    },
    /// Canonical orientation of the plane curve in a `.curve` file.
    Orient {
        path: PathBuf,
        #[arg(long, value_enum)]
        method: Option<Method>,
        /// Base edge; overrides the file's `BASE` line.
        #[arg(long)]
        base: Option<usize>,
    },
    /// Crossing-change identities at one crossing of each diagram in a `.gauss` file.
    Change {
        path: PathBuf,
        #[arg(long)]
        crossing: CrossingId,
    },
    /// Searches for a diagram whose warping crossing polynomial is the given one.
    Realize {
        /// Polynomial as `[1,2]` or `1 + 2t`.
        poly: String,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Runs the full verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Warping,
    Rotation,
    BlackRight,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 5)]
    max_exhaustive_n: usize,
    #[arg(long, default_value_t = 10_000)]
    random_samples: usize,
    #[arg(long, default_value_t = 12)]
    random_max_n: usize,
    #[arg(long, env = "WARPKNOT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = statesum::DEFAULT_CROSSING_LIMIT)]
    statesum_limit: usize,
    #[arg(long, default_value_t = 6)]
    deep_exhaustive_n: usize,
    #[arg(long, default_value_t = 100)]
    statesum_random_per_n: usize,
    #[arg(long, default_value_t = 16)]
    statesum_random_max_n: usize,
    #[arg(long, hide = true)]
    inject_mutant: bool,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Input { .. } => 3,
        }
    }
}

type CliResult = Result<(), CliError>;

fn input_error(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Input { path: path.display().to_string(), message: e.to_string() }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| input_error(path, e))
}

fn has_extension(path: &Path, ext: &str) -> bool {
    path.extension().is_some_and(|e| e == ext)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Poly { path } if has_extension(&path, "arc") => cmd_arc(&path),
        Command::Poly { path } => cmd_poly(&path),
        Command::Arc { path } => cmd_arc(&path),
        Command::Statesum { path, limit } => cmd_statesum(&path, limit),
        Command::Orient { path, method, base } => cmd_orient(&path, method, base),
        Command::Change { path, crossing } => cmd_change(&path, crossing),
        Command::Realize { poly, max_n } => cmd_realize(&poly, max_n),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_poly(path: &Path) -> CliResult {
    let diagrams = parse_gauss_file(&read(path)?).map_err(|e| input_error(path, e))?;
    let mut all_ok = true;
    for Numbered { line, value: d } in diagrams {
        let n = d.crossing_count();
        let w = warping::warping_polynomial(&d);
        let x = warping::warping_crossing_polynomial(&d);
        let d_fwd = warping::diagram_warping_degree(&d);
        let d_rev = warping::diagram_warping_degree(&d.reverse());
        let mut tags = Vec::new();
        let mut record = format!(
            "RESULT poly line={line} n={n} W={} X={} d={d_fwd} d_rev={d_rev}",
            w.to_list_string(),
            x.to_list_string()
        );
        println!("line {line}: {d}");
        println!("  W = {w}");
        if let Ok(class) = warping::classify(&d) {
            if class.alternating {
                tags.push("alternating".to_string());
            }
            if class.one_bridge {
                tags.push("one-bridge".to_string());
            }
            let span = x.span().map(|s| s.to_string()).unwrap_or_else(|_| "none".into());
            let divisible = w.div_exact_one_plus_t().as_ref() == Ok(&x);
            all_ok &= divisible;
            record.push_str(&format!(
                " alternating={} one_bridge={} bridges={} span={span} division={}",
                class.alternating,
                class.one_bridge,
                class.bridge_count,
                verdict(divisible)
            ));
            println!("  d(D) = {d_fwd}, d(-D) = {d_rev}, span X = {span}");
            println!("  W = (1+t) X: {}", verdict(divisible));
        }
        if tags.is_empty() {
            println!("  X = {x}");
        } else {
            println!("  X = {x}; {}", tags.join(", "));
        }
        println!("{record}");
    }
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Failed("W = (1+t) X failed".into()))
    }
}

fn cmd_arc(path: &Path) -> CliResult {
    let arcs = parse_arc_file(&read(path)?).map_err(|e| input_error(path, e))?;
    for Numbered { line, value: s } in arcs {
        let (w, x) = warping::arc_polynomials(&s);
        let divisible = w.div_exact_one_plus_t().is_ok();
        println!("line {line}: {} crossings, {} edges", s.crossing_count(), s.edge_count());
        println!("  W = {w}");
        println!("  X = {x}");
        println!(
            "RESULT arc line={line} n={} W={} X={} W1={} X1={} divisible={divisible}",
            s.crossing_count(),
            w.to_list_string(),
            x.to_list_string(),
            w.evaluate(1),
            x.evaluate(1)
        );
    }
    Ok(())
}

/// `2n(1+t)^k` when `p` has that form.
fn factored(p: &IntPolynomial, n: usize, k: usize) -> Option<String> {
    let c = 2 * n as i64;
    (p == &IntPolynomial::one_plus_t_pow(c, k)).then(|| match k {
        0 => format!("{c}"),
        1 => format!("{c}(1+t)"),
        _ => format!("{c}(1+t)^{k}"),
    })
}

fn cmd_statesum(path: &Path, limit: usize) -> CliResult {
    let text = read(path)?;
    let shadows: Vec<Numbered<Shadow>> = if has_extension(path, "gauss") {
        parse_gauss_file(&text)
            .map_err(|e| input_error(path, e))?
            .into_iter()
            .map(|Numbered { line, value }| Numbered { line, value: value.shadow() })
            .collect()
    } else {
        parse_shadow_file(&text).map_err(|e| input_error(path, e))?
    };
    let mut all_ok = true;
    for Numbered { line, value: p } in shadows {
        let report = statesum::state_sum_with_limit(&p, limit).map_err(|e| match e {
            StateSumError::TooManyCrossings { .. } => {
                input_error(path, format!("line {line}: {e}; pass --limit to override"))
            }
            other => input_error(path, format!("line {line}: {other}")),
        })?;
        let n = report.n;
        let z_text = factored(&report.z, n, n - 1).unwrap_or_else(|| report.z.to_string());
        let w_text = factored(&report.w_total, n, n).unwrap_or_else(|| report.w_total.to_string());
        let status = verdict(report.closed_form_ok);
        all_ok &= report.closed_form_ok;
        println!("line {line}: {p}");
        println!("  Z = {z_text} {status}");
        println!("  sum W = {w_text} {status}");
        println!(
            "RESULT statesum line={line} n={n} Z={} W_total={} closed_form={status} states={}",
            report.z.to_list_string(),
            report.w_total.to_list_string(),
            report.states_enumerated
        );
    }
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Failed("state sum differs from the closed form".into()))
    }
}

fn planar_error(path: &Path, e: PlanarError) -> CliError {
    input_error(path, e)
}

fn print_choice(name: &str, choice: &OrientationChoice, extra: &str, oriented: &str) {
    let sign = choice.sign();
    println!("{name}: {sign:+}{extra}");
    for line in oriented.lines() {
        println!("  {line}");
    }
}

fn cmd_orient(path: &Path, method: Option<Method>, base: Option<usize>) -> CliResult {
    let (curve, file_base) = parse_curve_file(&read(path)?).map_err(|e| input_error(path, e))?;
    let n = curve.crossing_count();
    if n % 2 == 0 {
        if method == Some(Method::BlackRight) {
            return Err(CliError::Usage(format!(
                "black-right needs an odd number of crossings, curve has {n}"
            )));
        }
        orient_even(path, &curve, method)
    } else {
        if method == Some(Method::Rotation) {
            return Err(CliError::Usage(format!(
                "rotation needs an even number of crossings, curve has {n}"
            )));
        }
        let base = base.or(file_base).ok_or_else(|| {
            CliError::Usage(format!("curve has {n} crossings; odd curves need a BASE line or --base"))
        })?;
        let based = BasedPlanarCurve::new(curve, base).map_err(|e| input_error(path, e))?;
        orient_odd(path, &based, method)
    }
}

fn oriented_curve(c: &PlanarCurve, o: Orientation) -> String {
    match o {
        Orientation::Reference => c.to_string(),
        Orientation::Reversed => c.reversed().to_string(),
    }
}

fn oriented_based(c: &BasedPlanarCurve, o: Orientation) -> String {
    match o {
        Orientation::Reference => c.to_string(),
        Orientation::Reversed => c.reversed().to_string(),
    }
}

fn orient_even(path: &Path, c: &PlanarCurve, method: Option<Method>) -> CliResult {
    let n = c.crossing_count();
    let run_warping = method != Some(Method::Rotation) && !(method.is_none() && n == 0);
    let run_rotation = method != Some(Method::Warping);
    let mut signs = Vec::new();
    if run_rotation {
        let choice = planar::orient_even_rotation(c).map_err(|e| planar_error(path, e))?;
        let rot = planar::rotation_number(c).map_err(|e| planar_error(path, e))?;
        let turn = if choice.sign() > 0 { "ccw" } else { "cw" };
        print_choice("rotation", &choice, &format!(" ({turn}, rot = {rot})"), &oriented_curve(c, choice.orientation));
        println!("RESULT orient method=rotation n={n} sign={:+} rot={rot}", choice.sign());
        signs.push(choice.sign());
    }
    if run_warping {
        let choice = planar::orient_even_warping(c).map_err(|e| planar_error(path, e))?;
        let d = planar::induced_alternating(c).map_err(|e| planar_error(path, e))?;
        let (d_fwd, d_rev) = (warping::diagram_warping_degree(&d), warping::diagram_warping_degree(&d.reverse()));
        print_choice(
            "warping",
            &choice,
            &format!(" (d(D) = {d_fwd}, d(-D) = {d_rev})"),
            &oriented_curve(c, choice.orientation),
        );
        println!("RESULT orient method=warping n={n} sign={:+} d={d_fwd} d_rev={d_rev}", choice.sign());
        signs.push(choice.sign());
    }
    if signs.len() == 2 {
        let agree = signs[0] == signs[1];
        println!("warping and rotation {}", if agree { "agree" } else { "disagree" });
        println!("RESULT orient agreement={agree}");
    }
    Ok(())
}

fn orient_odd(path: &Path, cb: &BasedPlanarCurve, method: Option<Method>) -> CliResult {
    let n = cb.curve().crossing_count();
    let mut signs = Vec::new();
    if method != Some(Method::BlackRight) {
        let choice = planar::orient_odd_warping(cb).map_err(|e| planar_error(path, e))?;
        print_choice("warping", &choice, " (positive kink at the base point)", &oriented_based(cb, choice.orientation));
        println!("RESULT orient method=warping n={n} base={} sign={:+}", cb.base_edge(), choice.sign());
        signs.push(choice.sign());
    }
    if method != Some(Method::Warping) {
        let choice = planar::orient_odd_black_right(cb).map_err(|e| planar_error(path, e))?;
        print_choice("black-right", &choice, "", &oriented_based(cb, choice.orientation));
        println!("RESULT orient method=black-right n={n} base={} sign={:+}", cb.base_edge(), choice.sign());
        signs.push(choice.sign());
    }
    if signs.len() == 2 {
        let agree = signs[0] == signs[1];
        println!("warping and black-right {}", if agree { "agree" } else { "disagree" });
        println!("RESULT orient agreement={agree}");
    }
    Ok(())
}

fn cmd_change(path: &Path, crossing: CrossingId) -> CliResult {
    let diagrams = parse_gauss_file(&read(path)?).map_err(|e| input_error(path, e))?;
    let one_minus_t = IntPolynomial::new(vec![1, -1]);
    let t = IntPolynomial::monomial(1, 1);
    let mut all_ok = true;
    for Numbered { line, value: d } in diagrams {
        let changed: GaussDiagram = d.crossing_change(crossing).map_err(|e| input_error(path, format!("line {line}: {e}")))?;
        let (a, b) = warping::crossing_change_partition(&d, crossing)
            .map_err(|e: WarpingError| input_error(path, format!("line {line}: {e}")))?;
        let x = warping::warping_crossing_polynomial(&d);
        let x2 = warping::warping_crossing_polynomial(&changed);
        let ok = &x - &(&t * &x2) == &one_minus_t * &a
            && &x2 - &(&t * &x) == &one_minus_t * &b
            && &x + &x2 == &a + &b;
        all_ok &= ok;
        let span = |p: &IntPolynomial| p.span().map(|s| s as i64).unwrap_or(0);
        let delta = span(&x2) - span(&x);
        println!("line {line}: {d} -> {changed}");
        println!("  X = {x}, X' = {x2}");
        println!("  A = {a}, B = {b}");
        println!("  identities {}; span change {delta}", verdict(ok));
        println!(
            "RESULT change line={line} crossing={crossing} X={} X'={} A={} B={} identities={} span_delta={delta}",
            x.to_list_string(),
            x2.to_list_string(),
            a.to_list_string(),
            b.to_list_string(),
            verdict(ok)
        );
    }
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Failed("crossing-change identities failed".into()))
    }
}

fn cmd_realize(text: &str, max_n: usize) -> CliResult {
    let f = IntPolynomial::parse(text).map_err(|e| CliError::Usage(e.to_string()))?;
    let predicted = warping::realizability_check(&f);
    match warping::realize_search(&f, max_n) {
        Ok(d) => {
            println!("X = {f} is realized by {d}");
            println!("RESULT realize X={} realizable=true predicted={predicted} witness={}", f.to_list_string(), d.to_string().replace(' ', ","));
            Ok(())
        }
        Err(WarpingError::TooLarge { n, max_n }) => Err(CliError::Usage(format!(
            "coefficient sum {n} exceeds --max-n {max_n}"
        ))),
        Err(e) => {
            println!("X = {f}: {e}");
            println!("RESULT realize X={} realizable=false predicted={predicted}", f.to_list_string());
            Err(CliError::Failed(format!("{f} is not realizable")))
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> CliResult {
    let config = VerifyConfig {
        max_exhaustive_n: args.max_exhaustive_n,
        random_samples: args.random_samples,
        random_max_n: args.random_max_n,
        seed: args.seed,
        statesum_limit: args.statesum_limit,
        deep_exhaustive_n: args.deep_exhaustive_n,
        statesum_random_per_n: args.statesum_random_per_n,
        statesum_random_max_n: args.statesum_random_max_n,
        inject_mutant: args.inject_mutant,
    };
    let positive = [
        config.max_exhaustive_n,
        config.random_samples,
        config.random_max_n,
        config.statesum_limit,
        config.deep_exhaustive_n,
        config.statesum_random_max_n,
    ];
    if positive.contains(&0) {
        return Err(CliError::Usage("verify sizes must be positive".into()));
    }
    let report = verify::run(&config);
    for check in &report.checks {
        println!("{check}");
    }
    for check in &report.checks {
        let criterion = check.criterion.map(|c| c.to_string()).unwrap_or_else(|| "-".into());
        println!(
            "RESULT verify check={} criterion={criterion} status={} cases={} ms={}",
            check.name,
            verdict(check.passed),
            check.cases,
            check.elapsed.as_millis()
        );
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    println!(
        "RESULT verify status={} checks={} failed={failed} seed={} ms={}",
        verdict(failed == 0),
        report.checks.len(),
        report.seed,
        report.elapsed().as_millis()
    );
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{failed} checks failed")))
    }
}
