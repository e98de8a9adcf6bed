//! `e6`: command-line surface over the E6(-14) exact-arithmetic engine.
//!
//! Exit codes: 0 on success, 1 when a requested verification fails or a
//! fixture cannot be loaded, 2 on usage errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use e6_cli::verify::{self, Report};
use e6_cli::{fixtures, FixtureError};
use e6_core::omega::{InfChar, Involution};
use e6_core::rat::format_rat;
use e6_core::root_datum::KTypeWeight;
use e6_core::Engine;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "e6", version, about = "Exact-arithmetic engine for E6(-14) K-type and Dirac computations")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    /// Emit tab-separated values instead of text.
    #[arg(long, global = true)]
    tsv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the structure constants of the root datum.
    Datum,
    /// Spin norm of a K-type highest weight "[a,b,c,d,e,f]".
    SpinNorm { weight: String },
    /// Lambda norm and atlas height of a K-type highest weight.
    Lambda { weight: String },
    /// u-small membership test, census count, or full enumeration.
    Usmall(UsmallArgs),
    /// Candidate infinitesimal-character screening (Ω sets).
    Omega(OmegaArgs),
    /// Dirac cohomology of a module given by a branching fixture.
    Dirac(DiracArgs),
    /// Verify fixture tables against the engine.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct UsmallArgs {
    /// Weight to test for membership; omit to use --count/--enumerate.
    weight: Option<String>,
    /// Print only the census size.
    #[arg(long)]
    count: bool,
    /// Enumerate the full census.
    #[arg(long, visible_alias = "list")]
    enumerate: bool,
    /// Write the enumeration to a TSV file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OmegaArgs {
    /// Involution fixture (JSON); defaults to kgb_involutions.json in the
    /// fixture directory. Without it only the fixture-free Ω₂ part runs.
    #[arg(long)]
    involutions: Option<PathBuf>,
    /// Print the minimal elements of Ω₂ as well.
    #[arg(long)]
    report: bool,
}

#[derive(Args)]
struct DiracArgs {
    /// Branching fixture (JSON).
    #[arg(long)]
    branch: PathBuf,
    /// Infinitesimal character "[n1,...,n6]".
    #[arg(long)]
    infchar: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    what: VerifyWhat,
    /// Fixture directory (default: E6_FIXTURE_DIR or ./fixtures).
    #[arg(long)]
    fixtures: Option<PathBuf>,
    /// Constraint-satisfying samples per tempered row.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// RNG seed for the tempered sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyWhat {
    Scattered,
    Integral,
    Tempered,
    Failure,
    All,
}

enum Mode {
    Text,
    Json,
    Tsv,
}

fn parse_weight(s: &str) -> Result<KTypeWeight, String> {
    KTypeWeight::parse_bracket(s)
        .ok_or_else(|| format!("cannot parse K-type weight {s:?}; expected \"[a,b,c,d,e,f]\""))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = if cli.json {
        Mode::Json
    } else if cli.tsv {
        Mode::Tsv
    } else {
        Mode::Text
    };
    match run(cli.command, mode) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, mode: Mode) -> Result<ExitCode, String> {
    let engine = Engine::new();
    match command {
        Command::Datum => {
            let d = &engine.datum;
            let noncompact = d
                .positive_roots
                .iter()
                .filter(|r| !d.is_compact_root(r))
                .count();
            match mode {
                Mode::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "roots": d.all_roots.len(),
                        "positive_roots": d.positive_roots.len(),
                        "noncompact_positive_roots": noncompact,
                        "rho": d.rho.to_wire(),
                        "rho_c": d.rho_c.to_wire(),
                        "rho_n": (d.rho - d.rho_c).to_wire(),
                        "zeta": d.zeta.to_wire(),
                        "rho_norm_sq": format_rat(&d.rho.norm_sq()),
                        "weyl_order": engine.w_full.elements.len(),
                        "weyl_k_order": engine.w_k.elements.len(),
                        "coset_reps": engine.cosets.reps.len(),
                    }))
                    .unwrap()
                ),
                _ => {
                    println!("roots: {} ({} positive, {noncompact} noncompact positive)",
                        d.all_roots.len(), d.positive_roots.len());
                    println!("rho     = {}", d.rho.to_wire());
                    println!("rho_c   = {}", d.rho_c.to_wire());
                    println!("rho_n   = {}", (d.rho - d.rho_c).to_wire());
                    println!("zeta    = {}", d.zeta.to_wire());
                    println!("|rho|^2 = {}", format_rat(&d.rho.norm_sq()));
                    println!(
                        "|W(g)| = {}, |W(k)| = {}, |W^1| = {}",
                        engine.w_full.elements.len(),
                        engine.w_k.elements.len(),
                        engine.cosets.reps.len()
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SpinNorm { weight } => {
            let mu = parse_weight(&weight)?;
            if !engine.datum.is_ktype_weight(&mu) {
                return Err(format!("{weight} is not a valid K-type highest weight"));
            }
            let r = engine.spin_norm(&mu);
            match mode {
                Mode::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "weight": mu.to_bracket(),
                        "norm_sq": format_rat(&r.norm_sq),
                        "argmin_js": r.argmin_js,
                    }))
                    .unwrap()
                ),
                Mode::Tsv => println!("{}\t{}", mu.to_bracket(), format_rat(&r.norm_sq)),
                Mode::Text => println!(
                    "spin norm² of {} = {} (attained at j ∈ {:?})",
                    mu.to_bracket(),
                    format_rat(&r.norm_sq),
                    r.argmin_js
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Lambda { weight } => {
            let mu = parse_weight(&weight)?;
            if !engine.datum.is_ktype_weight(&mu) {
                return Err(format!("{weight} is not a valid K-type highest weight"));
            }
            let r = engine.lambda_stats(&mu);
            match mode {
                Mode::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "weight": mu.to_bracket(),
                        "norm_sq": format_rat(&r.norm_sq),
                        "height": r.height,
                        "lambda_a": r.lambda_a.to_wire(),
                    }))
                    .unwrap()
                ),
                Mode::Tsv => println!(
                    "{}\t{}\t{}",
                    mu.to_bracket(),
                    format_rat(&r.norm_sq),
                    r.height
                ),
                Mode::Text => println!(
                    "lambda norm² of {} = {}, atlas height {} (λa = {})",
                    mu.to_bracket(),
                    format_rat(&r.norm_sq),
                    r.height,
                    r.lambda_a.to_wire()
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Usmall(args) => run_usmall(&engine, args, mode),
        Command::Omega(args) => run_omega(&engine, args, mode),
        Command::Dirac(args) => run_dirac(&engine, args, mode),
        Command::Verify(args) => run_verify(&engine, args, mode),
    }
}

fn run_usmall(engine: &Engine, args: UsmallArgs, mode: Mode) -> Result<ExitCode, String> {
    if let Some(w) = &args.weight {
        let mu = parse_weight(w)?;
        if !engine.datum.is_ktype_weight(&mu) {
            return Err(format!("{w} is not a valid K-type highest weight"));
        }
        let small = engine.is_usmall(&mu);
        match mode {
            Mode::Json => println!(
                "{}",
                json!({ "weight": mu.to_bracket(), "usmall": small })
            ),
            _ => println!(
                "{} is {}u-small",
                mu.to_bracket(),
                if small { "" } else { "not " }
            ),
        }
        return Ok(ExitCode::SUCCESS);
    }
    let census = engine.enumerate_usmall();
    if args.count && !args.enumerate {
        match mode {
            Mode::Json => println!("{}", json!({ "count": census.len() })),
            _ => println!("{}", census.len()),
        }
        return Ok(ExitCode::SUCCESS);
    }
    // Enumeration: six K-coordinates, spin², lambda², height.
    let mut lines = String::from("a\tb\tc\td\te\tf\tspin_sq\tlambda_sq\theight\n");
    for mu in &census {
        let coords: Vec<String> = mu.0.iter().map(format_rat).collect();
        let spin = engine.spin_norm(mu);
        let lam = engine.lambda_stats(mu);
        lines.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            coords.join("\t"),
            format_rat(&spin.norm_sq),
            format_rat(&lam.norm_sq),
            lam.height
        ));
    }
    match args.out {
        Some(path) => {
            std::fs::write(&path, lines).map_err(|e| format!("cannot write {path:?}: {e}"))?;
            println!("wrote {} weights to {}", census.len(), path.display());
        }
        None => print!("{lines}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn load_involutions_opt(
    engine: &Engine,
    path: &std::path::Path,
) -> Result<Option<Vec<Involution>>, String> {
    if !path.exists() {
        return Ok(None);
    }
    fixtures::load_involutions(engine, path)
        .map(Some)
        .map_err(|e| e.to_string())
}

fn run_omega(engine: &Engine, args: OmegaArgs, mode: Mode) -> Result<ExitCode, String> {
    let usmall = engine.enumerate_usmall();
    let omega2 = engine.build_omega2(&usmall);
    let minimal = engine.minimal_elements(&omega2);
    let inv_path = args
        .involutions
        .unwrap_or_else(|| e6_cli::fixture_dir().join("kgb_involutions.json"));
    let thetas = load_involutions_opt(engine, &inv_path)?;
    let partition = match &thetas {
        None => None,
        Some(thetas) => {
            let omega = engine.build_omega(thetas).map_err(|e| e.to_string())?;
            let (o1, o3) = engine
                .partition_omega(&omega, &omega2, &minimal)
                .map_err(|e| e.to_string())?;
            Some((omega.len(), o1.len(), o3.len()))
        }
    };
    match mode {
        Mode::Json => {
            let mut obj = json!({
                "omega2": omega2.len(),
                "minimal_elements": minimal.iter().map(|v| v.to_bracket()).collect::<Vec<_>>(),
            });
            if let Some((o, o1, o3)) = partition {
                obj["omega"] = json!(o);
                obj["omega1"] = json!(o1);
                obj["omega3"] = json!(o3);
            }
            println!("{}", serde_json::to_string_pretty(&obj).unwrap());
        }
        _ => {
            println!("|Omega_2| = {}", omega2.len());
            if args.report {
                for v in &minimal {
                    println!("minimal: {}", v.to_bracket());
                }
            }
            match partition {
                Some((o, o1, o3)) => {
                    println!("|Omega| = {o}, |Omega_1| = {o1}, |Omega_3| = {o3}")
                }
                None => println!(
                    "(no involution fixture at {}; Omega/Omega_1/Omega_3 skipped)",
                    inv_path.display()
                ),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_dirac(engine: &Engine, args: DiracArgs, mode: Mode) -> Result<ExitCode, String> {
    let branch = fixtures::load_branch(engine, &args.branch).map_err(|e| e.to_string())?;
    let infchar = InfChar::parse_bracket(&args.infchar)
        .ok_or_else(|| format!("cannot parse infinitesimal character {:?}", args.infchar))?;
    let hd = engine
        .dirac_cohomology(&branch, &infchar)
        .map_err(|e| e.to_string())?;
    match mode {
        Mode::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "infchar": infchar.to_bracket(),
                "weights": hd.weights.iter().map(|w| w.to_bracket()).collect::<Vec<_>>(),
                "multiplicities": hd
                    .with_multiplicity
                    .iter()
                    .map(|(w, m)| json!({ "weight": w.to_bracket(), "multiplicity": m }))
                    .collect::<Vec<_>>(),
            }))
            .unwrap()
        ),
        Mode::Tsv => {
            for (w, m) in &hd.with_multiplicity {
                println!("{}\t{}", w.to_bracket(), m);
            }
        }
        Mode::Text => {
            println!("H_D support ({} weights):", hd.weights.len());
            for (w, m) in &hd.with_multiplicity {
                println!("  {}  multiplicity {}", w.to_bracket(), m);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load_required<T>(r: Result<T, FixtureError>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn run_verify(engine: &Engine, args: VerifyArgs, mode: Mode) -> Result<ExitCode, String> {
    let dir = args.fixtures.unwrap_or_else(e6_cli::fixture_dir);
    let thetas = load_involutions_opt(engine, &dir.join("kgb_involutions.json"))?;
    let mut report = Report::default();
    if thetas.is_none() {
        report
            .warnings
            .push("kgb_involutions.json not found; involution-dependent checks skipped".into());
    }
    let want = |w: VerifyWhat| matches!((args.what, w), (VerifyWhat::All, _)) || {
        matches!(
            (args.what, w),
            (VerifyWhat::Scattered, VerifyWhat::Scattered)
                | (VerifyWhat::Integral, VerifyWhat::Integral)
                | (VerifyWhat::Tempered, VerifyWhat::Tempered)
                | (VerifyWhat::Failure, VerifyWhat::Failure)
        )
    };
    if want(VerifyWhat::Scattered) {
        let rows = load_required(fixtures::load_scattered(engine, &dir.join("scattered.tsv")))?;
        report.merge(verify::verify_scattered(engine, &rows, thetas.as_deref()));
    }
    if want(VerifyWhat::Integral) {
        let rows = load_required(fixtures::load_fs_integral(&dir.join("fs_integral.tsv")))?;
        report.merge(verify::verify_fs_integral(engine, &rows, thetas.as_deref()));
    }
    if want(VerifyWhat::Tempered) {
        let rows = load_required(fixtures::load_tempered(&dir.join("tempered.rows")))?;
        report.merge(verify::verify_tempered(engine, &rows, args.samples, args.seed));
    }
    if want(VerifyWhat::Failure) {
        let fx = load_required(fixtures::load_failure(engine, &dir.join("failure_0011117.json")))?;
        report.merge(verify::verify_failure(engine, &fx));
    }
    match mode {
        Mode::Json => {
            let obj = json!({
                "passed": report.passed(),
                "checks": report
                    .checks
                    .iter()
                    .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                    .collect::<Vec<_>>(),
                "warnings": report.warnings,
            });
            println!("{}", serde_json::to_string_pretty(&obj).unwrap());
        }
        Mode::Tsv => {
            for c in &report.checks {
                println!("{}\t{}\t{}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
            }
        }
        Mode::Text => print!("{}", report.render_text()),
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
