//! Command-line frontend: every computation as a reproducible, scriptable
//! run with machine-readable output.
//!
//! Reports are single JSON documents (CSV for scans) with the top-level
//! keys `tool_version`, `subcommand`, `inputs`, `outputs`, `seed`, `mode`.
//! Exit codes: 0 = success, 2 = the computation succeeded but the checked
//! proposition failed (violated / infeasible / not permutable / excluded),
//! 1 = usage or input error.

mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use parse::CliResult;
use spinstat::coupling::{
    bell_check, bell_check_probs, bell_scan, lhv_feasibility, pair_count, verify_certificate,
    LhvCertificate, LhvProblem, LhvResult,
};
use spinstat::experiments::{
    deuteron_exact, deuteron_simulate, discrimination_power, fermi_ground_energy, mgf_check,
    sample_measurements, DeuteronModel, EnergyLevels,
};
use spinstat::hilbert::{basis_plus, Ket};
use spinstat::spin::{
    default_invariance_grid, is_isc_form, is_rotationally_invariant, make_parallel_isc,
    make_singlet, make_state2, spectral_probability, MeasurementAxes, Sign,
};
use spinstat::statistics::{
    antisymmetrize, classify_permutable, compose_statistics, factorial, fock_inner, fock_opposite,
    fock_same, permutations, symmetrize, FockSpinState, StatisticsLabel,
};
use spinstat::Rational;

const TAU: f64 = 2.0 * std::f64::consts::PI;

#[derive(Parser)]
#[command(
    name = "spinstat",
    version,
    about = "Spin-state computations with reproducible, machine-readable output"
)]
struct Cli {
    /// Interpret angle inputs as degrees instead of radians.
    #[arg(long, global = true)]
    degrees: bool,

    /// Write the report to this path instead of standard output. Relative
    /// paths resolve against $SPINSTAT_OUTPUT_DIR when it is set.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a state and check rotational invariance and correlation form.
    State(StateArgs),
    /// Evaluate the pairwise inequality for one angle triple.
    Bell(BellArgs),
    /// Evaluate the inequality over every ordered triple of a uniform grid.
    BellScan(BellScanArgs),
    /// Decide shared-assignment feasibility for pairwise disagreement
    /// constraints, with a re-checkable certificate when infeasible.
    Lhv(LhvArgs),
    /// Antisymmetrize a list of states (zero output = exclusion).
    Antisym(PartsArgs),
    /// Symmetrize a list of states.
    Sym(PartsArgs),
    /// Classify permutation coefficients as fermi / bose / not permutable.
    Classify(ClassifyArgs),
    /// Compare two direction-indexed spinor assignments.
    Fock(FockArgs),
    /// Enumerate a composite statistics group and verify it.
    Compose(ComposeArgs),
    /// Ground energy of an even particle count filling energy levels.
    Energy(EnergyArgs),
    /// Exact or simulated spin-1 beam distribution under two models.
    Deuteron(DeuteronArgs),
    /// Model-discrimination power of the beam experiment.
    Power(PowerArgs),
    /// Moment-generating-function product rule, independent vs coupled.
    Mgf(MgfArgs),
    /// Draw measurement samples from a state along given axes.
    Sample(SampleArgs),
}

#[derive(Args)]
struct StateArgs {
    /// Named state: singlet | parallel | state2 | plus-plus.
    #[arg(long, conflicts_with = "amps")]
    which: Option<String>,
    /// Real amplitudes, comma separated; length must be a power of two.
    #[arg(long, allow_hyphen_values = true)]
    amps: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Uniform grid size; omit for the default 80-point grid.
    #[arg(long)]
    grid_points: Option<usize>,
}

#[derive(Args)]
struct BellArgs {
    #[arg(long, requires = "tj", requires = "tk", allow_negative_numbers = true)]
    ti: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    tj: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    tk: Option<f64>,
    /// Exact mode: three pair probabilities p_ij,p_jk,p_ki (rationals).
    #[arg(long, conflicts_with_all = ["ti", "tj", "tk"], allow_hyphen_values = true)]
    probs: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    c: f64,
}

#[derive(Args)]
struct BellScanArgs {
    /// Uniform grid points on [0, 2π).
    #[arg(long, default_value_t = 20, conflicts_with = "axes")]
    points: usize,
    /// Explicit grid axes (angles, comma separated) instead of --points.
    #[arg(long, allow_hyphen_values = true)]
    axes: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    /// Output format: csv | json.
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct LhvArgs {
    /// Measurement directions (angles, comma separated) — float mode.
    #[arg(long, conflicts_with = "probs", allow_hyphen_values = true)]
    directions: Option<String>,
    /// Pairwise disagreement probabilities in lexicographic pair order
    /// (rationals such as 1/4) — exact mode unless --mode float.
    #[arg(long, allow_hyphen_values = true)]
    probs: Option<String>,
    /// exact | float; defaults to exact for --probs, float for --directions.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    c: f64,
}

#[derive(Args)]
struct PartsArgs {
    /// States, comma separated: +, -, t:<angle>, or v:a:b:...
    #[arg(long, allow_hyphen_values = true)]
    parts: String,
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Coefficients in lexicographic permutation order.
    #[arg(long, conflicts_with_all = ["pattern", "n"], allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// Built-in pattern: alternating | constant | counterexample.
    #[arg(long)]
    pattern: Option<String>,
    /// Particle count for --pattern (counterexample requires 3).
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Args)]
struct FockArgs {
    /// Measurement directions, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    directions: String,
    /// Spinor tokens for the first state, one per direction.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Spinor tokens for the second state, one per direction.
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Args)]
struct ComposeArgs {
    /// Statistics tree, e.g. a2xa3 or s3o(a2xa2xa2).
    #[arg(long)]
    tree: String,
}

#[derive(Args)]
struct EnergyArgs {
    /// Ascending energy levels, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    levels: String,
    /// Even particle count.
    #[arg(long)]
    particles: usize,
    /// Parse levels as exact rationals.
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct DeuteronArgs {
    /// Model: paper | conventional | custom.
    #[arg(long)]
    model: String,
    /// Probabilities for +1,0,-1 (rationals), required with --model custom.
    #[arg(long)]
    dist: Option<String>,
    /// Emit the exact distribution.
    #[arg(long, conflicts_with = "samples")]
    exact: bool,
    /// Simulate this many beam particles.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct PowerArgs {
    #[arg(long)]
    samples: u64,
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 1000)]
    trials: u32,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct MgfArgs {
    #[arg(long, allow_negative_numbers = true)]
    t: f64,
}

#[derive(Args)]
struct SampleArgs {
    /// Named state: singlet | parallel | state2 | plus-plus.
    #[arg(long, conflicts_with = "amps")]
    state: Option<String>,
    /// Real amplitudes, comma separated.
    #[arg(long)]
    amps: Option<String>,
    /// Measurement axes, one angle per particle.
    #[arg(long, allow_hyphen_values = true)]
    axes: String,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    c: f64,
}

/// One finished run: the report body plus exit-code semantics.
struct Outcome {
    subcommand: &'static str,
    inputs: Value,
    outputs: Value,
    seed: Option<u64>,
    mode: &'static str,
    /// Exit 2: the run succeeded but the checked proposition failed.
    negative: bool,
    /// CSV body replacing the JSON document (scans).
    csv: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let output = cli.output.clone();
    match run(&cli) {
        Ok(outcome) => {
            let body = match &outcome.csv {
                Some(csv) => csv.clone(),
                None => {
                    let mut doc = serde_json::to_string_pretty(&document(&outcome)).unwrap();
                    doc.push('\n');
                    doc
                }
            };
            if let Err(msg) = emit(&body, output.as_deref()) {
                eprintln!("error: {msg}");
                return ExitCode::from(1);
            }
            if outcome.negative {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(body: &str, output: Option<&std::path::Path>) -> CliResult<()> {
    match output {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(path) => {
            let resolved = match std::env::var_os("SPINSTAT_OUTPUT_DIR") {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path.to_path_buf(),
            };
            std::fs::write(&resolved, body)
                .map_err(|e| format!("cannot write {}: {e}", resolved.display()))
        }
    }
}

fn document(o: &Outcome) -> Value {
    json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "subcommand": o.subcommand,
        "inputs": o.inputs,
        "outputs": o.outputs,
        "seed": o.seed,
        "mode": o.mode,
    })
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    let degrees = cli.degrees;
    match &cli.command {
        Command::State(a) => cmd_state(a, degrees),
        Command::Bell(a) => cmd_bell(a, degrees),
        Command::BellScan(a) => cmd_bell_scan(a, degrees),
        Command::Lhv(a) => cmd_lhv(a, degrees),
        Command::Antisym(a) => cmd_parts("antisym", a, degrees),
        Command::Sym(a) => cmd_parts("sym", a, degrees),
        Command::Classify(a) => cmd_classify(a),
        Command::Fock(a) => cmd_fock(a, degrees),
        Command::Compose(a) => cmd_compose(a),
        Command::Energy(a) => cmd_energy(a),
        Command::Deuteron(a) => cmd_deuteron(a),
        Command::Power(a) => cmd_power(a),
        Command::Mgf(a) => cmd_mgf(a),
        Command::Sample(a) => cmd_sample(a, degrees),
    }
}

fn named_state(name: &str) -> CliResult<Ket<f64>> {
    match name {
        "singlet" => Ok(make_singlet()),
        "parallel" => Ok(make_parallel_isc()),
        "state2" => Ok(make_state2()),
        "plus-plus" => Ok(basis_plus::<f64>().tensor(&basis_plus())),
        other => Err(format!(
            "unknown state '{other}' (expected singlet, parallel, state2, or plus-plus)"
        )),
    }
}

fn state_from_flags(which: &Option<String>, amps: &Option<String>) -> CliResult<Ket<f64>> {
    match (which, amps) {
        (Some(name), None) => named_state(name),
        (None, Some(text)) => {
            let values = parse::f64_list(text)?;
            let len = values.len();
            if len < 2 || len & (len - 1) != 0 {
                return Err("amplitude count must be a power of two".into());
            }
            let factors = len.trailing_zeros() as usize;
            let k = Ket::from_reals(vec![2; factors], &values).map_err(|e| e.to_string())?;
            if !k.is_normalized(1e-6) {
                return Err(format!("state is not normalized (norm = {})", k.norm()));
            }
            Ok(k)
        }
        _ => Err("provide exactly one of --which/--state or --amps".into()),
    }
}

fn amplitudes_json(k: &Ket<f64>) -> Value {
    Value::Array(k.amps().iter().map(|a| json!([a.re, a.im])).collect())
}

fn sign_key(tuple: &[Sign]) -> String {
    tuple.iter().map(|s| s.to_string()).collect()
}

fn cmd_state(a: &StateArgs, degrees: bool) -> CliResult<Outcome> {
    let state = state_from_flags(&a.which, &a.amps)?;
    let grid: Vec<f64> = match a.grid_points {
        None => default_invariance_grid(),
        Some(n) => {
            if n == 0 {
                return Err("--grid-points must be positive".into());
            }
            (0..n).map(|i| i as f64 * TAU / n as f64).collect()
        }
    };
    let invariant =
        is_rotationally_invariant(&state, a.c, &grid, a.tol).map_err(|e| e.to_string())?;
    let isc = if state.factors() == 2 {
        Some(is_isc_form(&state, a.c, &grid, a.tol.max(1e-9)).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let negative = !invariant || isc == Some(false);
    let _ = degrees;
    Ok(Outcome {
        subcommand: "state",
        inputs: json!({
            "which": a.which,
            "amps": a.amps,
            "c": a.c,
            "tol": a.tol,
            "grid_points": a.grid_points,
        }),
        outputs: json!({
            "factors": state.factors(),
            "amplitudes": amplitudes_json(&state),
            "norm": state.norm(),
            "rotationally_invariant": invariant,
            "isc_form": isc,
            "grid_size": grid.len(),
        }),
        seed: None,
        mode: "float",
        negative,
        csv: None,
    })
}

fn cmd_bell(a: &BellArgs, degrees: bool) -> CliResult<Outcome> {
    if let Some(text) = &a.probs {
        let probs = parse::rational_list(text)?;
        if probs.len() != 3 {
            return Err("--probs needs exactly p_ij,p_jk,p_ki".into());
        }
        let decision = bell_check_probs(&probs[0], &probs[1], &probs[2]);
        return Ok(Outcome {
            subcommand: "bell",
            inputs: json!({ "probs": text, "c": a.c }),
            outputs: json!({
                "lhs": decision.lhs.to_string(),
                "rhs": decision.rhs.to_string(),
                "lhs_approx": parse::rational_to_f64(&decision.lhs),
                "rhs_approx": parse::rational_to_f64(&decision.rhs),
                "violated": decision.violated,
            }),
            seed: None,
            mode: "exact",
            negative: decision.violated,
            csv: None,
        });
    }
    let (ti, tj, tk) = match (a.ti, a.tj, a.tk) {
        (Some(ti), Some(tj), Some(tk)) => (
            parse::angle(ti, degrees),
            parse::angle(tj, degrees),
            parse::angle(tk, degrees),
        ),
        _ => return Err("provide --ti --tj --tk or --probs".into()),
    };
    let report = bell_check(ti, tj, tk, a.c);
    Ok(Outcome {
        subcommand: "bell",
        inputs: json!({ "ti": ti, "tj": tj, "tk": tk, "c": a.c }),
        outputs: json!({
            "lhs": report.lhs,
            "rhs": report.rhs,
            "margin": report.margin,
            "violated": report.violated,
        }),
        seed: None,
        mode: "float",
        negative: report.violated,
        csv: None,
    })
}

fn cmd_bell_scan(a: &BellScanArgs, degrees: bool) -> CliResult<Outcome> {
    let axes: Vec<f64> = match &a.axes {
        Some(text) => parse::angle_list(text, degrees)?,
        None => {
            if a.points == 0 {
                return Err("--points must be positive".into());
            }
            (0..a.points)
                .map(|i| i as f64 * TAU / a.points as f64)
                .collect()
        }
    };
    let reports = bell_scan(&axes, a.c);
    let violations = reports.iter().filter(|r| r.violated).count();
    let negative = violations > 0;
    match a.format.as_str() {
        "csv" => {
            let mut csv = String::from("theta_i,theta_j,theta_k,c,lhs,rhs,margin,violated\n");
            for r in &reports {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.theta_i, r.theta_j, r.theta_k, r.c, r.lhs, r.rhs, r.margin, r.violated
                ));
            }
            Ok(Outcome {
                subcommand: "bell-scan",
                inputs: json!({ "points": a.points, "axes": axes, "c": a.c }),
                outputs: Value::Null,
                seed: None,
                mode: "float",
                negative,
                csv: Some(csv),
            })
        }
        "json" => {
            let rows: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "theta_i": r.theta_i,
                        "theta_j": r.theta_j,
                        "theta_k": r.theta_k,
                        "c": r.c,
                        "lhs": r.lhs,
                        "rhs": r.rhs,
                        "margin": r.margin,
                        "violated": r.violated,
                    })
                })
                .collect();
            Ok(Outcome {
                subcommand: "bell-scan",
                inputs: json!({ "points": a.points, "axes": axes, "c": a.c }),
                outputs: json!({ "violations": violations, "reports": rows }),
                seed: None,
                mode: "float",
                negative,
                csv: None,
            })
        }
        other => Err(format!("unknown format '{other}' (expected csv or json)")),
    }
}

fn infer_pair_m(count: usize) -> CliResult<usize> {
    (2..=20)
        .find(|&m| pair_count(m) == count)
        .ok_or_else(|| format!("{count} values do not form the pair list of any m <= 20"))
}

fn cmd_lhv(a: &LhvArgs, degrees: bool) -> CliResult<Outcome> {
    let mode = a.mode.as_deref();
    if let Some(text) = &a.directions {
        if mode == Some("exact") {
            return Err("exact mode requires --probs with rational values".into());
        }
        let dirs = parse::angle_list(text, degrees)?;
        let problem = LhvProblem::from_directions(&dirs, a.c).map_err(|e| e.to_string())?;
        let result = lhv_feasibility(&problem).map_err(|e| e.to_string())?;
        let (outputs, negative) = lhv_outputs_f64(&problem, &result);
        return Ok(Outcome {
            subcommand: "lhv",
            inputs: json!({ "directions": dirs, "c": a.c }),
            outputs,
            seed: None,
            mode: "float",
            negative,
            csv: None,
        });
    }
    let text = a
        .probs
        .as_ref()
        .ok_or_else(|| "provide --directions or --probs".to_string())?;
    let probs = parse::rational_list(text)?;
    let m = infer_pair_m(probs.len())?;
    if mode == Some("float") {
        let float_probs: Vec<f64> = probs.iter().map(parse::rational_to_f64).collect();
        let problem = LhvProblem::from_pair_probs(m, float_probs).map_err(|e| e.to_string())?;
        let result = lhv_feasibility(&problem).map_err(|e| e.to_string())?;
        let (outputs, negative) = lhv_outputs_f64(&problem, &result);
        return Ok(Outcome {
            subcommand: "lhv",
            inputs: json!({ "probs": text, "m": m }),
            outputs,
            seed: None,
            mode: "float",
            negative,
            csv: None,
        });
    }
    let problem = LhvProblem::from_pair_probs(m, probs).map_err(|e| e.to_string())?;
    let result = lhv_feasibility(&problem).map_err(|e| e.to_string())?;
    let (outputs, negative) = lhv_outputs_exact(&problem, &result);
    Ok(Outcome {
        subcommand: "lhv",
        inputs: json!({ "probs": text, "m": m }),
        outputs,
        seed: None,
        mode: "exact",
        negative,
        csv: None,
    })
}

fn lhv_outputs_f64(problem: &LhvProblem<f64>, result: &LhvResult<f64>) -> (Value, bool) {
    match result {
        LhvResult::Feasible(dist) => {
            let mut masses = Map::new();
            for (assignment, mass) in dist.masses() {
                masses.insert(sign_key(assignment), json!(mass));
            }
            (
                json!({
                    "feasible": true,
                    "masses": masses,
                    "constraint_error": dist.max_constraint_error(problem),
                }),
                false,
            )
        }
        LhvResult::Infeasible(cert) => (
            json!({
                "feasible": false,
                "certificate": certificate_json_f64(cert),
                "certificate_verified": verify_certificate(problem, cert),
            }),
            true,
        ),
    }
}

fn certificate_json_f64(cert: &LhvCertificate<f64>) -> Value {
    match cert {
        LhvCertificate::BellInequality { i, j, k, lhs, rhs } => json!({
            "type": "bell-inequality",
            "i": i, "j": j, "k": k,
            "lhs": lhs, "rhs": rhs,
        }),
        LhvCertificate::Farkas { row_multipliers } => json!({
            "type": "farkas",
            "row_multipliers": row_multipliers,
        }),
    }
}

fn lhv_outputs_exact(
    problem: &LhvProblem<Rational>,
    result: &LhvResult<Rational>,
) -> (Value, bool) {
    match result {
        LhvResult::Feasible(dist) => {
            let mut masses = Map::new();
            for (assignment, mass) in dist.masses() {
                masses.insert(sign_key(assignment), json!(mass.to_string()));
            }
            (
                json!({
                    "feasible": true,
                    "masses": masses,
                    "constraint_error": dist.max_constraint_error(problem).to_string(),
                }),
                false,
            )
        }
        LhvResult::Infeasible(cert) => {
            let cert_json = match cert {
                LhvCertificate::BellInequality { i, j, k, lhs, rhs } => json!({
                    "type": "bell-inequality",
                    "i": i, "j": j, "k": k,
                    "lhs": lhs.to_string(), "rhs": rhs.to_string(),
                }),
                LhvCertificate::Farkas { row_multipliers } => json!({
                    "type": "farkas",
                    "row_multipliers": row_multipliers
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<String>>(),
                }),
            };
            (
                json!({
                    "feasible": false,
                    "certificate": cert_json,
                    "certificate_verified": verify_certificate(problem, cert),
                }),
                true,
            )
        }
    }
}

fn cmd_parts(which: &'static str, a: &PartsArgs, degrees: bool) -> CliResult<Outcome> {
    let parts = parse::part_list(&a.parts, a.c, degrees)?;
    let result = if which == "antisym" {
        antisymmetrize(&parts)
    } else {
        symmetrize(&parts)
    }
    .map_err(|e| e.to_string())?;
    let zero = result.is_zero(a.tol);
    let negative = which == "antisym" && zero;
    Ok(Outcome {
        subcommand: which,
        inputs: json!({ "parts": a.parts, "c": a.c, "tol": a.tol }),
        outputs: json!({
            "dims": result.dims(),
            "amplitudes": amplitudes_json(&result),
            "norm": result.norm(),
            "zero": zero,
        }),
        seed: None,
        mode: "float",
        negative,
        csv: None,
    })
}

fn cmd_classify(a: &ClassifyArgs) -> CliResult<Outcome> {
    let coeffs: Vec<f64> = match (&a.coeffs, &a.pattern) {
        (Some(text), None) => parse::f64_list(text)?,
        (None, Some(pattern)) => {
            let n = a.n;
            let root = (factorial(n) as f64).sqrt();
            match pattern.as_str() {
                "alternating" => permutations(n)
                    .map_err(|e| e.to_string())?
                    .map(|p| p.parity() as f64 / root)
                    .collect(),
                "constant" => vec![1.0 / root; factorial(n)],
                "counterexample" => {
                    if n != 3 {
                        return Err("the counterexample pattern is defined for --n 3".into());
                    }
                    vec![
                        1.0 / root,
                        1.0 / root,
                        1.0 / root,
                        1.0 / root,
                        1.0 / root,
                        -1.0 / root,
                    ]
                }
                other => {
                    return Err(format!(
                        "unknown pattern '{other}' (expected alternating, constant, counterexample)"
                    ))
                }
            }
        }
        _ => return Err("provide exactly one of --coeffs or --pattern".into()),
    };
    let label = classify_permutable(&coeffs, a.tol).map_err(|e| e.to_string())?;
    let label_str = match label {
        StatisticsLabel::Fermi => "fermi",
        StatisticsLabel::Bose => "bose",
        StatisticsLabel::NotPermutable => "not-permutable",
    };
    Ok(Outcome {
        subcommand: "classify",
        inputs: json!({
            "coeffs": a.coeffs,
            "pattern": a.pattern,
            "n": a.n,
            "tol": a.tol,
        }),
        outputs: json!({ "label": label_str, "count": coeffs.len() }),
        seed: None,
        mode: "float",
        negative: label == StatisticsLabel::NotPermutable,
        csv: None,
    })
}

fn cmd_fock(a: &FockArgs, degrees: bool) -> CliResult<Outcome> {
    let directions = parse::angle_list(&a.directions, degrees)?;
    let build = |tokens: &str| -> CliResult<FockSpinState<f64>> {
        let spinors = parse::part_list(tokens, a.c, degrees)?;
        FockSpinState::new(directions.clone(), spinors).map_err(|e| e.to_string())
    };
    let sa = build(&a.a)?;
    let sb = build(&a.b)?;
    let inner = fock_inner(&sa, &sb).map_err(|e| e.to_string())?;
    let same = fock_same(&sa, &sb, a.tol).map_err(|e| e.to_string())?;
    let opposite = fock_opposite(&sa, &sb, a.tol).map_err(|e| e.to_string())?;
    Ok(Outcome {
        subcommand: "fock",
        inputs: json!({
            "directions": directions,
            "a": a.a,
            "b": a.b,
            "c": a.c,
            "tol": a.tol,
        }),
        outputs: json!({
            "m": directions.len(),
            "inner": inner,
            "same": same,
            "opposite": opposite,
        }),
        seed: None,
        mode: "float",
        negative: false,
        csv: None,
    })
}

fn cmd_compose(a: &ComposeArgs) -> CliResult<Outcome> {
    let tree = parse::statistics_tree(&a.tree)?;
    let group = compose_statistics(&tree).map_err(|e| e.to_string())?;
    let table_verified = if group.order() <= 1000 {
        Some(group.closure_table_ok())
    } else {
        None
    };
    let elements: Option<Vec<Value>> = if group.order() <= 200 {
        Some(
            group
                .elements()
                .iter()
                .map(|(p, chi)| json!({ "mapping": p.mapping(), "character": chi }))
                .collect(),
        )
    } else {
        None
    };
    Ok(Outcome {
        subcommand: "compose",
        inputs: json!({ "tree": a.tree }),
        outputs: json!({
            "particles": group.n(),
            "order": group.order(),
            "closure_verified": true,
            "table_verified": table_verified,
            "elements": elements,
        }),
        seed: None,
        mode: "exact",
        negative: false,
        csv: None,
    })
}

fn cmd_energy(a: &EnergyArgs) -> CliResult<Outcome> {
    if a.exact {
        let values = parse::rational_list(&a.levels)?;
        let levels = EnergyLevels::new(values).map_err(|e| e.to_string())?;
        let energy = fermi_ground_energy(&levels, a.particles).map_err(|e| e.to_string())?;
        return Ok(Outcome {
            subcommand: "energy",
            inputs: json!({ "levels": a.levels, "particles": a.particles, "exact": true }),
            outputs: json!({
                "energy": energy.to_string(),
                "energy_approx": parse::rational_to_f64(&energy),
            }),
            seed: None,
            mode: "exact",
            negative: false,
            csv: None,
        });
    }
    let values = parse::f64_list(&a.levels)?;
    let levels = EnergyLevels::new(values).map_err(|e| e.to_string())?;
    let energy = fermi_ground_energy(&levels, a.particles).map_err(|e| e.to_string())?;
    Ok(Outcome {
        subcommand: "energy",
        inputs: json!({ "levels": a.levels, "particles": a.particles, "exact": false }),
        outputs: json!({ "energy": energy }),
        seed: None,
        mode: "float",
        negative: false,
        csv: None,
    })
}

fn parse_model(name: &str, dist: &Option<String>) -> CliResult<DeuteronModel> {
    match name {
        "paper" => Ok(DeuteronModel::IndependentPair),
        "conventional" => Ok(DeuteronModel::UniformTriplet),
        "custom" => {
            let text = dist
                .as_ref()
                .ok_or_else(|| "--model custom needs --dist p,q,r".to_string())?;
            let values = text
                .split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    if let Some((n, d)) = tok.split_once('/') {
                        let n: i64 = n
                            .trim()
                            .parse()
                            .map_err(|_| format!("bad rational '{tok}'"))?;
                        let d: i64 = d
                            .trim()
                            .parse()
                            .map_err(|_| format!("bad rational '{tok}'"))?;
                        if d == 0 {
                            return Err("zero denominator".to_string());
                        }
                        Ok(num_rational::Rational64::new(n, d))
                    } else {
                        let f: f64 = tok
                            .parse()
                            .map_err(|_| format!("bad probability '{tok}'"))?;
                        let denom = 1_000_000i64;
                        Ok(num_rational::Rational64::new(
                            (f * denom as f64).round() as i64,
                            denom,
                        ))
                    }
                })
                .collect::<CliResult<Vec<_>>>()?;
            if values.len() != 3 {
                return Err("--dist needs exactly three probabilities".into());
            }
            let dist =
                spinstat::experiments::SpinOneDistribution::new(values[0], values[1], values[2])
                    .map_err(|e| e.to_string())?;
            Ok(DeuteronModel::Custom(dist))
        }
        other => Err(format!(
            "unknown model '{other}' (expected paper, conventional, or custom)"
        )),
    }
}

fn cmd_deuteron(a: &DeuteronArgs) -> CliResult<Outcome> {
    let model = parse_model(&a.model, &a.dist)?;
    if a.exact {
        let dist = deuteron_exact(model);
        let probs = dist.probs_f64();
        return Ok(Outcome {
            subcommand: "deuteron",
            inputs: json!({ "model": a.model, "dist": a.dist, "exact": true }),
            outputs: json!({ "+1": probs[0], "0": probs[1], "-1": probs[2] }),
            seed: None,
            mode: "exact",
            negative: false,
            csv: None,
        });
    }
    let samples = a
        .samples
        .ok_or_else(|| "provide --exact or --samples".to_string())?;
    if samples == 0 {
        return Err("--samples must be positive".into());
    }
    let report = deuteron_simulate(model, samples, a.seed);
    Ok(Outcome {
        subcommand: "deuteron",
        inputs: json!({ "model": a.model, "dist": a.dist, "samples": samples, "seed": a.seed }),
        outputs: json!({
            "counts": {
                "+1": report.counts.plus,
                "0": report.counts.zero,
                "-1": report.counts.minus,
            },
            "frequencies": {
                "+1": report.frequencies[0],
                "0": report.frequencies[1],
                "-1": report.frequencies[2],
            },
            "chi_square": {
                "paper": {
                    "statistic": report.fit_independent_pair.statistic,
                    "p_value": report.fit_independent_pair.p_value,
                },
                "conventional": {
                    "statistic": report.fit_uniform_triplet.statistic,
                    "p_value": report.fit_uniform_triplet.p_value,
                },
            },
        }),
        seed: Some(a.seed),
        mode: "float",
        negative: false,
        csv: None,
    })
}

fn cmd_power(a: &PowerArgs) -> CliResult<Outcome> {
    if a.samples == 0 || a.trials == 0 {
        return Err("--samples and --trials must be positive".into());
    }
    let report = discrimination_power(a.samples, a.alpha, a.trials, a.seed);
    Ok(Outcome {
        subcommand: "power",
        inputs: json!({
            "samples": a.samples,
            "alpha": a.alpha,
            "trials": a.trials,
            "seed": a.seed,
        }),
        outputs: json!({
            "reject_conventional_given_paper": report.reject_triplet_given_pair,
            "reject_paper_given_conventional": report.reject_pair_given_triplet,
        }),
        seed: Some(a.seed),
        mode: "float",
        negative: false,
        csv: None,
    })
}

fn cmd_mgf(a: &MgfArgs) -> CliResult<Outcome> {
    let report = mgf_check(a.t).map_err(|e| e.to_string())?;
    let rule_gap = (report.product_of_marginals - report.independent_product).abs();
    Ok(Outcome {
        subcommand: "mgf",
        inputs: json!({ "t": a.t }),
        outputs: json!({
            "marginal": report.marginal,
            "product_of_marginals": report.product_of_marginals,
            "independent_product": report.independent_product,
            "coupled_value": report.coupled_value,
            "independent_rule_holds": rule_gap < 1e-12,
            "coupled_rule_holds":
                (report.product_of_marginals - report.coupled_value).abs() < 1e-12,
        }),
        seed: None,
        mode: "float",
        negative: false,
        csv: None,
    })
}

fn cmd_sample(a: &SampleArgs, degrees: bool) -> CliResult<Outcome> {
    let state = state_from_flags(&a.state, &a.amps)?;
    let axes_values = parse::angle_list(&a.axes, degrees)?;
    let axes = MeasurementAxes::new(axes_values.clone(), a.c);
    let exact = spectral_probability(&state, &axes).map_err(|e| e.to_string())?;
    let counts =
        sample_measurements(&state, &axes, a.samples, a.seed).map_err(|e| e.to_string())?;
    let mut counts_json = Map::new();
    for (tuple, count) in &counts {
        counts_json.insert(sign_key(tuple), json!(count));
    }
    let mut exact_json = Map::new();
    for (tuple, p) in exact.iter() {
        exact_json.insert(sign_key(tuple), json!(p));
    }
    Ok(Outcome {
        subcommand: "sample",
        inputs: json!({
            "state": a.state,
            "amps": a.amps,
            "axes": axes_values,
            "samples": a.samples,
            "seed": a.seed,
            "c": a.c,
        }),
        outputs: json!({
            "counts": counts_json,
            "total": a.samples,
            "exact": exact_json,
        }),
        seed: Some(a.seed),
        mode: "float",
        negative: false,
        csv: None,
    })
}
