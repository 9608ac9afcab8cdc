use std::fs::File;
use std::io::BufReader;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::{debug, info};
use serde_json::json;

use stromver_core::bundle::{
    check_relations, check_unitary, clock_shift, commutant, stability_report, BundleError, FlatBundle, RepDescriptor,
    UnitaryRep,
};
use stromver_core::forms::{kaehler_form, SignConvention, TopFormSection};
use stromver_core::lie::{sl2_standard, AlgebraDescriptor, DaggerMap, HermitianForm, LieAlgebra, LoadedAlgebra};
use stromver_core::rep::{ModuleSpace, Recipe};
use stromver_core::scalar::GaussRational;
use stromver_core::selftest;
use stromver_core::verifier::{
    full_report, GaugeConnection, StromingerInstance, TangentChoice, Verdict, VerificationReport,
};

const EXIT_FAIL: u8 = 1;
const EXIT_MALFORMED: u8 = 2;
const EXIT_NO_SOLUTION: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "stromver", version, about = "Exact verification of invariant Strominger-system data on complex Lie groups")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Tolerance for floating-point representations.
    #[arg(long, global = true, default_value_t = 1e-10, value_parser = positive_f64)]
    tol: f64,
    /// Sign convention of the invariant differential.
    #[arg(long, global = true, value_enum, default_value_t = Sign::Default)]
    sign: Sign,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Sign {
    Default,
    Flipped,
}

impl From<Sign> for SignConvention {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Default => SignConvention::RightInvariant,
            Sign::Flipped => SignConvention::Flipped,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check all five equations on an instance.
    Verify {
        /// `builtin:sl2`, `builtin:abelian` or an algebra descriptor path.
        input: String,
        /// Fix α′ instead of solving for it.
        #[arg(long, value_parser = parse_scalar)]
        alpha_prime: Option<GaussRational>,
        /// `chern`, `bismut` or `gauduchon:<t>`.
        #[arg(long, default_value = "chern", value_parser = parse_connection)]
        connection: TangentChoice,
        /// Representation for the flat gauge bundle: `clockshift:<n>` or a descriptor path.
        #[arg(long, default_value = "clockshift:2")]
        rep: String,
    },
    /// Decompose an su(2)-module given by a recipe.
    Decompose { recipe: String },
    /// Dump a tangent connection.
    Connection {
        input: String,
        #[arg(long, default_value = "chern", value_parser = parse_connection)]
        connection: TangentChoice,
    },
    /// Check a unitary representation and report stability of its flat bundle.
    RepCheck {
        /// `clockshift:<n>` or a descriptor path.
        input: String,
    },
    /// Run the acceptance matrix.
    Selftest,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

fn parse_scalar(s: &str) -> Result<GaussRational, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_connection(s: &str) -> Result<TangentChoice, String> {
    TangentChoice::parse(s).ok_or_else(|| format!("expected chern, bismut or gauduchon:<t>, got {s:?}"))
}

/// Malformed input or a failed computation, mapped to an exit code.
struct Failure {
    code: u8,
    message: String,
}

fn malformed(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_MALFORMED, message: message.into() }
}

fn open(path: &str) -> Result<BufReader<File>, Failure> {
    File::open(Path::new(path)).map(BufReader::new).map_err(|e| malformed(format!("{path}: {e}")))
}

fn load_algebra(input: &str) -> Result<LoadedAlgebra, Failure> {
    match input {
        "builtin:sl2" => {
            let d = sl2_standard();
            Ok(LoadedAlgebra { algebra: d.algebra, hermitian: d.hermitian, dagger: Some(d.dagger) })
        }
        "builtin:abelian" => {
            let algebra = LieAlgebra::abelian(3);
            let dagger = DaggerMap::negated_conjugation(&algebra).ok();
            Ok(LoadedAlgebra { algebra, hermitian: HermitianForm::identity(3), dagger })
        }
        path if path.starts_with("builtin:") => Err(malformed(format!("unknown builtin {path:?}"))),
        path => AlgebraDescriptor::from_reader(open(path)?)
            .and_then(AlgebraDescriptor::build)
            .map_err(|e| malformed(format!("{path}: {e}"))),
    }
}

fn load_rep(input: &str) -> Result<UnitaryRep, Failure> {
    if let Some(n) = input.strip_prefix("clockshift:") {
        let n: usize = n.parse().map_err(|_| malformed(format!("bad rank in {input:?}")))?;
        return clock_shift(n).map_err(|e| malformed(e.to_string()));
    }
    RepDescriptor::from_reader(open(input)?)
        .and_then(|d| d.build())
        .map_err(|e| malformed(format!("{input}: {e}")))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn verify(cli: &Cli, input: &str, alpha: &Option<GaussRational>, conn: &TangentChoice, rep: &str) -> Result<u8, Failure> {
    let conv = SignConvention::from(cli.sign);
    let loaded = load_algebra(input)?;
    let theta = TopFormSection::new(GaussRational::from_int(1), &loaded.hermitian).map_err(|e| malformed(e.to_string()))?;
    let tangent = conn
        .build(&loaded.algebra, &loaded.hermitian, conv)
        .map_err(|e| malformed(format!("tangent connection: {e}")))?;
    debug!("tangent connection {}", tangent.kind());
    let instance = StromingerInstance {
        algebra: loaded.algebra,
        hermitian: loaded.hermitian,
        dagger: loaded.dagger,
        convention: conv,
        theta,
        tangent,
        gauge: GaugeConnection::Flat(FlatBundle::new(load_rep(rep)?)),
        alpha_prime: alpha.clone(),
        tolerance: cli.tol,
    };
    let report = full_report(&instance).map_err(|e| malformed(e.to_string()))?;
    info!("verification finished");
    if cli.json {
        print_json(&report.to_json());
    } else {
        print_report(&report);
    }
    let verdicts = report.verdicts();
    Ok(if verdicts.iter().any(|(_, v)| *v == Verdict::Fail) {
        EXIT_FAIL
    } else if verdicts.iter().any(|(_, v)| *v == Verdict::NoSolution) {
        EXIT_NO_SOLUTION
    } else {
        0
    })
}

fn opt(x: &Option<GaussRational>) -> String {
    x.as_ref().map_or_else(|| "not a multiple of ω²".to_string(), ToString::to_string)
}

fn print_report(r: &VerificationReport) {
    let i = &r.instance;
    println!("algebra {:?}, convention {}, tangent {}, gauge {}", i.algebra, i.convention, i.tangent_connection, i.gauge);
    for (id, v) in r.verdicts() {
        println!("{id:<22} {}", v.as_str());
    }
    let a = &r.anomaly_cancellation;
    println!("c_LHS = {}, c_R = {}, c_F = {}", opt(&a.c_lhs), opt(&a.c_r), opt(&a.c_f));
    println!("α′: {}", serde_json::to_string(&a.alpha_prime).expect("serializable"));
    if let Some(note) = &a.note {
        println!("note: {note}");
    }
    let m = &r.equation_of_motion;
    println!(
        "λ = {} (star), {} (volume), agree: {}",
        m.lambda_star.as_ref().map_or_else(|| "none".into(), ToString::to_string),
        m.lambda_volume,
        m.paths_agree
    );
    let s = &r.supporting;
    println!(
        "Kähler: {}, d(ω²) = 0: {}, κ = {}, holonomy dim {} (su3: {})",
        s.kaehler,
        s.d_omega_sq_zero,
        opt(&s.kappa),
        s.holonomy.dim,
        s.holonomy.su3
    );
    if let Some(st) = &s.stability {
        println!("bundle: degree {}, commutant {}, {}", st.degree, st.commutant_dim, st.verdict.as_str());
    }
    if let Some(e) = &s.stability_error {
        println!("bundle: {e}");
    }
}

fn decompose(cli: &Cli, src: &str) -> Result<u8, Failure> {
    let recipe = Recipe::parse(src).map_err(|e| malformed(e.to_string()))?;
    let m = ModuleSpace::build(&recipe, &sl2_standard().algebra).map_err(|e| malformed(e.to_string()))?;
    let d = m.decompose().map_err(|e| Failure { code: EXIT_FAIL, message: e.to_string() })?;
    if cli.json {
        print_json(&d.to_json());
    } else {
        let parts: Vec<String> = d.irreps.iter().map(|(k, v)| format!("Sym{k}×{v}")).collect();
        println!("{} (dim {}) = {}", d.module, d.dim, parts.join(" ⊕ "));
        println!("invariant_dim {}", d.invariant_dim());
    }
    Ok(0)
}

fn connection(cli: &Cli, input: &str, choice: &TangentChoice) -> Result<u8, Failure> {
    let loaded = load_algebra(input)?;
    let conn = choice
        .build(&loaded.algebra, &loaded.hermitian, cli.sign.into())
        .map_err(|e| Failure { code: EXIT_FAIL, message: e.to_string() })?;
    let dump = conn.to_json(&loaded.hermitian, &loaded.algebra);
    if cli.json {
        print_json(&dump);
    } else {
        println!("{} ({})", dump["kind"], dump["convention"]);
        for key in ["metric_compatible", "curvature_zero", "torsion_zero"] {
            println!("{key}: {}", dump[key]);
        }
    }
    Ok(0)
}

fn rep_check(cli: &Cli, input: &str) -> Result<u8, Failure> {
    let rep = load_rep(input)?;
    let unitary = check_unitary(&rep, cli.tol);
    let relations = check_relations(&rep, cli.tol);
    let omega = kaehler_form(&sl2_standard().hermitian);
    let indeterminate = |e: BundleError| Failure { code: EXIT_FAIL, message: e.to_string() };
    let comm = commutant(&rep, cli.tol).map_err(indeterminate)?;
    let stability = stability_report(&FlatBundle::new(rep), &omega, cli.tol).map_err(indeterminate)?;
    let pass = unitary.pass && relations.pass;
    if cli.json {
        print_json(&json!({
            "unitary": unitary,
            "relations": relations,
            "commutant_dim": comm.dim,
            "stability": stability,
            "pass": pass,
        }));
    } else {
        println!("mode {}, rank {}", serde_json::to_value(stability.mode).expect("serializable").as_str().unwrap_or_default(), stability.rank);
        for e in &unitary.entries {
            println!("unitary {}: residual {:e} {}", e.name, e.residual, if e.pass { "pass" } else { "fail" });
        }
        for e in &relations.entries {
            println!("relator {}: residual {:e} {}", e.name, e.residual, if e.pass { "pass" } else { "fail" });
        }
        println!("commutant {}", comm.dim);
        println!("degree {}, {}", stability.degree, stability.verdict.as_str());
    }
    Ok(if pass { 0 } else { EXIT_FAIL })
}

fn run_selftest(cli: &Cli) -> Result<u8, Failure> {
    let rows = selftest::run(cli.sign.into());
    if cli.json {
        print_json(&json!(rows));
    } else {
        for r in &rows {
            println!("[{}] {:>6} {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.name, r.detail);
        }
    }
    Ok(if rows.iter().all(|r| r.pass) { 0 } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("STROMVER_LOG")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    info!("{:?}", cli.command);
    let result = match &cli.command {
        Command::Verify { input, alpha_prime, connection: c, rep } => verify(&cli, input, alpha_prime, c, rep),
        Command::Decompose { recipe } => decompose(&cli, recipe),
        Command::Connection { input, connection: c } => connection(&cli, input, c),
        Command::RepCheck { input } => rep_check(&cli, input),
        Command::Selftest => run_selftest(&cli),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
