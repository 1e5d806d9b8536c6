//! Command-line front end: reproduces the reference two-qubit
//! computations, checks inequalities on JSON-described states and POVMs,
//! runs sweeps, evaluates classical hidden-variable models, and prints the
//! JSON schemas.
//!
//! Exit codes: 0 = computed and the inequality holds, 2 = computed and
//! violated, 1 = input or configuration error.

use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bellkit::classical::{classical_bell_report, classical_extended_chsh, random_model};
use bellkit::inequalities::{
    bell_original, chsh_report, chsh_value, quantum_bell_analogue, separable_bound,
    InequalityReport,
};
use bellkit::io::{
    density_from_json, fmt_f64, lhv_model_from_json, povm_from_json, report_to_csv,
    report_to_json, representation_from_json, schema_documentation, sweep_result_to_json,
};
use bellkit::measurements::spin_observable;
use bellkit::states::{rho_zero, SeparableRepresentation};
use bellkit::sweep::{
    bell_violation_sweep, chsh_sweep, quantum_analogue_sweep, separable_soundness_sweep,
    SweepConfig, SweepResult, SweepTarget,
};
use bellkit::{correlation, GammaVector, INEQ_TOL};

#[derive(Parser)]
#[command(name = "bellkit", version, about = "Bipartite correlation inequality toolkit")]
struct Cli {
    /// Inequality comparison tolerance.
    #[arg(long, global = true, default_value_t = INEQ_TOL)]
    tol: f64,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; evaluation order never affects results.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce the reference two-qubit computations and verify them.
    Demo,
    /// Evaluate one inequality on JSON inputs.
    Check {
        /// Inequality name.
        #[arg(long)]
        ineq: Ineq,
        /// Density operator JSON (bell-original, chsh, extended-chsh).
        #[arg(long)]
        state: Option<PathBuf>,
        /// Separable representation JSON (separable, quantum-analogue).
        #[arg(long)]
        rep: Option<PathBuf>,
        /// POVM JSON files, in setting order.
        #[arg(long, required = true, num_args = 1..)]
        povm: Vec<PathBuf>,
        /// Extended-CHSH coefficients g1,g2,g3,g4.
        #[arg(long, value_delimiter = ',', num_args = 4)]
        gamma: Option<Vec<f64>>,
    },
    /// Run a grid or randomized sweep from a JSON config file.
    Sweep {
        config: PathBuf,
    },
    /// Evaluate the classical Bell and extended CHSH inequalities.
    Classical {
        /// Hidden-variable model JSON with observables A, C, D1, D2.
        #[arg(long, conflicts_with = "random")]
        model: Option<PathBuf>,
        /// Generate COUNT random models from --seed instead.
        #[arg(long, value_name = "COUNT")]
        random: Option<u64>,
    },
    /// Print the JSON input schemas with examples.
    Schema,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ineq {
    BellOriginal,
    Chsh,
    Separable,
    QuantumAnalogue,
    ExtendedChsh,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(1);
    }
    let outcome = match &cli.command {
        Command::Demo => cmd_demo(&cli),
        Command::Check { ineq, state, rep, povm, gamma } => {
            cmd_check(&cli, *ineq, state, rep, povm, gamma)
        }
        Command::Sweep { config } => cmd_sweep(&cli, config),
        Command::Classical { model, random } => cmd_classical(&cli, model, *random),
        Command::Schema => {
            print!("{}", schema_documentation());
            Ok(false)
        }
    };
    match outcome {
        Ok(false) => ExitCode::from(0),
        Ok(true) => ExitCode::from(2),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(cli: &Cli, report: &InequalityReport) -> Result<bool, String> {
    let text = match cli.format {
        Format::Json => report_to_json(report),
        Format::Csv => report_to_csv(report),
    };
    emit(cli, &text)?;
    Ok(report.violated)
}

fn cmd_demo(cli: &Cli) -> Result<bool, String> {
    let rho = rho_zero();
    let (a, b, c, d) = (0.0, PI / 6.0, PI / 3.0, PI / 2.0);
    let povm = |t: f64| spin_observable(t);
    let closed = |x: f64, y: f64| -(2.0 * x).cos() * (2.0 * y).cos();

    let mut lines = Vec::new();
    let mut mismatch: Option<String> = None;
    fn require(mismatch: &mut Option<String>, name: &str, got: f64, want: f64) {
        if (got - want).abs() > 1e-9 && mismatch.is_none() {
            *mismatch = Some(format!("{name}: got {got}, expected {want}"));
        }
    }

    lines.push(format!(
        "rho0 spin settings: theta_a={} theta_b={} theta_c={}",
        fmt_f64(a),
        fmt_f64(b),
        fmt_f64(c)
    ));
    let mut records = Vec::new();
    for (label, x, y) in [("E(a,b)", a, b), ("E(a,c)", a, c), ("E(b,c)", b, c)] {
        let rec = correlation(&rho, &povm(x), &povm(y), false).map_err(|e| e.to_string())?;
        require(&mut mismatch, label, rec.value, closed(x, y));
        lines.push(format!(
            "{label}: closed={} trace={}",
            fmt_f64(closed(x, y)),
            fmt_f64(rec.value)
        ));
        records.push(rec);
    }

    let bell = bell_original(&records[0], &records[1], &records[2], 1.0, 1.0, cli.tol)
        .map_err(|e| e.to_string())?;
    require(&mut mismatch, "bell_original lhs", bell.lhs, 1.0);
    require(&mut mismatch, "bell_original rhs", bell.rhs, 0.75);
    if !bell.violated && mismatch.is_none() {
        mismatch = Some("bell_original: expected a violation".into());
    }
    lines.push(format!(
        "bell_original: lhs={} rhs={} {}",
        fmt_f64(bell.lhs),
        fmt_f64(bell.rhs),
        if bell.violated { "VIOLATED" } else { "HOLDS" }
    ));

    let e = |x: f64, y: f64| correlation(&rho, &povm(x), &povm(y), false).unwrap();
    let (e_ab, e_cb, e_cd, e_ad) = (e(a, b), e(c, b), e(c, d), e(a, d));
    let chsh = chsh_report(&e_ab, &e_cb, &e_cd, &e_ad, 1.0, 1.0, cli.tol);
    require(&mut mismatch, "chsh value", chsh_value(&e_ab, &e_cb, &e_cd, &e_ad), 1.75);
    if chsh.violated && mismatch.is_none() {
        mismatch = Some("chsh: unexpected violation".into());
    }
    lines.push(format!(
        "chsh: theta=({}, {}, {}, {}) value={} bound={} {}",
        fmt_f64(a),
        fmt_f64(b),
        fmt_f64(c),
        fmt_f64(d),
        fmt_f64(chsh.lhs),
        fmt_f64(chsh.rhs),
        if chsh.violated { "VIOLATED" } else { "HOLDS" }
    ));

    let rep = SeparableRepresentation::rho_zero_symmetric();
    let analogue = quantum_bell_analogue(&rep, &povm(a), &povm(b), &povm(c), cli.tol)
        .map_err(|e| e.to_string())?;
    require(&mut mismatch, "quantum_bell_analogue lhs", analogue.lhs, 1.0);
    require(&mut mismatch, "quantum_bell_analogue rhs", analogue.rhs, 1.25);
    if analogue.violated && mismatch.is_none() {
        mismatch = Some("quantum_bell_analogue: unexpected violation".into());
    }
    lines.push(format!(
        "quantum_bell_analogue: lhs={} rhs={} {}",
        fmt_f64(analogue.lhs),
        fmt_f64(analogue.rhs),
        if analogue.violated { "VIOLATED" } else { "HOLDS" }
    ));

    emit(cli, &format!("{}\n", lines.join("\n")))?;
    match mismatch {
        Some(m) => Err(m),
        // The demo's expected outcome includes the Bell violation, so a
        // fully matching run exits 0.
        None => Ok(false),
    }
}

fn load_povms(paths: &[PathBuf], want: usize) -> Result<Vec<bellkit::DiscretePovm>, String> {
    if paths.len() != want {
        return Err(format!("expected {want} POVM files, got {}", paths.len()));
    }
    paths
        .iter()
        .map(|p| povm_from_json(&read_file(p)?)
                .map_err(|e| format!("{}: {}: {e}", p.display(), e.name())))
        .collect()
}

fn cmd_check(
    cli: &Cli,
    ineq: Ineq,
    state: &Option<PathBuf>,
    rep: &Option<PathBuf>,
    povm_paths: &[PathBuf],
    gamma: &Option<Vec<f64>>,
) -> Result<bool, String> {
    let load_state = || -> Result<bellkit::DensityOperator, String> {
        let path = state.as_ref().ok_or("--state is required for this inequality")?;
        density_from_json(&read_file(path)?)
            .map_err(|e| format!("{}: {}: {e}", path.display(), e.name()))
    };
    let load_rep = || -> Result<SeparableRepresentation, String> {
        let path = rep.as_ref().ok_or("--rep is required for this inequality")?;
        representation_from_json(&read_file(path)?)
            .map_err(|e| format!("{}: {}: {e}", path.display(), e.name()))
    };
    let report = match ineq {
        Ineq::BellOriginal => {
            let rho = load_state()?;
            let p = load_povms(povm_paths, 3)?;
            let e_ab = correlation(&rho, &p[0], &p[1], false).map_err(|e| e.to_string())?;
            let e_ac = correlation(&rho, &p[0], &p[2], false).map_err(|e| e.to_string())?;
            let e_bc = correlation(&rho, &p[1], &p[2], false).map_err(|e| e.to_string())?;
            bell_original(&e_ab, &e_ac, &e_bc, p[0].bound(), p[1].bound().max(p[2].bound()), cli.tol)
                .map_err(|e| e.to_string())?
        }
        Ineq::Chsh | Ineq::ExtendedChsh => {
            let rho = load_state()?;
            let p = load_povms(povm_paths, 4)?;
            let c1 = p[0].bound().max(p[2].bound());
            let c2 = p[1].bound().max(p[3].bound());
            let e_ab = correlation(&rho, &p[0], &p[1], false).map_err(|e| e.to_string())?;
            let e_cb = correlation(&rho, &p[2], &p[1], false).map_err(|e| e.to_string())?;
            let e_cd = correlation(&rho, &p[2], &p[3], false).map_err(|e| e.to_string())?;
            let e_ad = correlation(&rho, &p[0], &p[3], false).map_err(|e| e.to_string())?;
            match ineq {
                Ineq::Chsh => chsh_report(&e_ab, &e_cb, &e_cd, &e_ad, c1, c2, cli.tol),
                _ => {
                    let g = gamma
                        .as_ref()
                        .ok_or("--gamma g1,g2,g3,g4 is required for extended-chsh")?;
                    let gv = GammaVector::new(g[0], g[1], g[2], g[3])
                        .map_err(|e| e.to_string())?;
                    bellkit::extended_chsh(&gv, &e_ab, &e_cb, &e_cd, &e_ad, c1, c2, cli.tol)
                        .map_err(|e| e.to_string())?
                }
            }
        }
        Ineq::Separable => {
            let r = load_rep()?;
            let p = load_povms(povm_paths, 3)?;
            separable_bound(&r, &p[0], &p[1], &p[2], cli.tol).map_err(|e| e.to_string())?
        }
        Ineq::QuantumAnalogue => {
            let r = load_rep()?;
            let p = load_povms(povm_paths, 3)?;
            quantum_bell_analogue(&r, &p[0], &p[1], &p[2], cli.tol).map_err(|e| e.to_string())?
        }
    };
    emit_report(cli, &report)
}

#[derive(serde::Deserialize)]
struct SweepDoc {
    schema: String,
    target: String,
    #[serde(default = "default_resolution")]
    resolution: usize,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default = "default_samples")]
    sample_count: usize,
    #[serde(default)]
    state: Option<PathBuf>,
    #[serde(default)]
    rep: Option<PathBuf>,
}

fn default_resolution() -> usize {
    20
}

fn default_samples() -> usize {
    1000
}

fn cmd_sweep(cli: &Cli, config: &PathBuf) -> Result<bool, String> {
    let doc: SweepDoc = serde_json::from_str(&read_file(config)?)
        .map_err(|e| format!("{}: {e}", config.display()))?;
    if doc.schema != bellkit::io::SCHEMA {
        return Err(format!("{}: unsupported schema {:?}", config.display(), doc.schema));
    }
    let target = match doc.target.as_str() {
        "bell" => SweepTarget::BellOriginal,
        "chsh" => SweepTarget::Chsh,
        "analogue" => SweepTarget::QuantumAnalogue,
        "soundness" => SweepTarget::ExtendedChsh,
        other => return Err(format!("unknown sweep target {other:?}")),
    };
    let mut cfg = SweepConfig::new(target, doc.resolution).map_err(|e| e.to_string())?;
    cfg.seed = doc.seed.unwrap_or(cli.seed);
    cfg.sample_count = doc.sample_count;
    let state = match &doc.state {
        Some(path) => density_from_json(&read_file(path)?)
            .map_err(|e| format!("{}: {}: {e}", path.display(), e.name()))?,
        None => rho_zero(),
    };
    let result: SweepResult = match target {
        SweepTarget::BellOriginal => {
            bell_violation_sweep(&state, &cfg).map_err(|e| e.to_string())?
        }
        SweepTarget::Chsh => chsh_sweep(&state, &cfg).map_err(|e| e.to_string())?,
        SweepTarget::QuantumAnalogue => {
            let rep = match &doc.rep {
                Some(path) => representation_from_json(&read_file(path)?)
                    .map_err(|e| format!("{}: {}: {e}", path.display(), e.name()))?,
                None => SeparableRepresentation::rho_zero_symmetric(),
            };
            quantum_analogue_sweep(&rep, &cfg).map_err(|e| e.to_string())?
        }
        SweepTarget::ExtendedChsh => {
            separable_soundness_sweep(&cfg).map_err(|e| e.to_string())?
        }
    };
    let settings: Vec<String> = result.best_settings.iter().map(|&t| fmt_f64(t)).collect();
    eprintln!(
        "best settings: [{}]  min slack: {}  evaluations: {}",
        settings.join(", "),
        fmt_f64(result.min_slack),
        result.evaluations
    );
    let text = match cli.format {
        Format::Json => sweep_result_to_json(&result),
        Format::Csv => report_to_csv(&result.best_report),
    };
    emit(cli, &text)?;
    Ok(result.best_report.violated)
}

fn cmd_classical(cli: &Cli, model: &Option<PathBuf>, random: Option<u64>) -> Result<bool, String> {
    let gamma = GammaVector::new(1.0, 1.0, 1.0, -1.0).map_err(|e| e.to_string())?;
    match (model, random) {
        (Some(path), None) => {
            let m = lhv_model_from_json(&read_file(path)?)
                .map_err(|e| format!("{}: {}: {e}", path.display(), e.name()))?;
            let bell = classical_bell_report(&m, "A", "D1", "D2", cli.tol)
                .map_err(|e| e.to_string())?;
            let mut violated = emit_report(cli, &bell)?;
            if m.observables().contains_key("C") {
                let c1 = m
                    .observable("A")
                    .map_err(|e| e.to_string())?
                    .bound
                    .max(m.observable("C").map_err(|e| e.to_string())?.bound);
                let c2 = m.observable("D1").map_err(|e| e.to_string())?.bound;
                let ext =
                    classical_extended_chsh(&m, &gamma, "A", "C", "D1", "D2", c1, c2, cli.tol)
                        .map_err(|e| e.to_string())?;
                violated |= emit_report(cli, &ext)?;
            }
            Ok(violated)
        }
        (None, Some(count)) => {
            let mut bounds = std::collections::BTreeMap::new();
            for name in ["A", "C", "D1", "D2"] {
                bounds.insert(name.to_string(), 1.0);
            }
            let mut min_slack = f64::INFINITY;
            let mut violations = 0usize;
            for i in 0..count {
                let m = random_model(cli.seed.wrapping_add(i), 4, &bounds);
                let bell = classical_bell_report(&m, "A", "D1", "D2", cli.tol)
                    .map_err(|e| e.to_string())?;
                let ext =
                    classical_extended_chsh(&m, &gamma, "A", "C", "D1", "D2", 1.0, 1.0, cli.tol)
                        .map_err(|e| e.to_string())?;
                for r in [&bell, &ext] {
                    min_slack = min_slack.min(r.slack);
                    violations += r.violated as usize;
                }
            }
            emit(
                cli,
                &format!(
                    "classical random sweep: models={count} violations={violations} min_slack={}\n",
                    fmt_f64(min_slack)
                ),
            )?;
            Ok(violations > 0)
        }
        _ => Err("provide exactly one of --model FILE or --random COUNT".into()),
    }
}
