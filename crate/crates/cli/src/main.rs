mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Rational;
use serde_json::{json, Value};

use sixj_core::archimedean::{
    edge_integral_closed_form, symbol_real_a, symbol_real_b, weyl_invariance_report, EvalOptions, RealParameters,
};
use sixj_core::bigcomplex::digits_agreed;
use sixj_core::compact::{admissible, contraction_6j, orthogonality_defect, racah_6j, to_racah_order};
use sixj_core::edge_mc::{edge_integral_mc, McConfig, Strategy};
use sixj_core::factors::{epsilon_factor, gamma_factor, l_factor, LocalCharacter};
use sixj_core::scalar::Scalar;
use sixj_core::suites::{self, SuiteOptions, CRITERIA};
use sixj_core::unramified::{
    adjoint_l, duality_lhs, random_rational, random_regular_point, residue_display, residue_display_without_l,
    residue_spin, residue_tree, restricted_point, sigma_l_half, spin_cone_trace, tree_vertex_sum, unramified_symbol,
    UnramifiedPoint,
};
use sixj_core::{BigComplex, Error};

use output::Render;

#[derive(Parser, Debug)]
#[command(name = "sixj", version, about = "Tetrahedral (generalized 6j) symbol engines with JSON output")]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 192)]
    precision: u32,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit JSON (`--json false` prints a flat text listing instead).
    #[arg(long, global = true, default_value_t = true, action = ArgAction::Set, num_args = 0..=1, default_missing_value = "true")]
    json: bool,
    /// Write the document to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Local L-, γ- and ε-factors.
    Gamma(GammaArgs),
    /// Exact unramified engine.
    Unramified {
        #[command(subcommand)]
        command: UnramifiedCommand,
    },
    /// Real-field symbol via ₄F₃(1).
    Real {
        #[command(subcommand)]
        command: RealCommand,
    },
    /// Monte Carlo estimate of the edge integral.
    EdgeMc(EdgeMcArgs),
    /// Classical SO(3) 6j symbols.
    Classical {
        #[command(subcommand)]
        command: ClassicalCommand,
    },
    /// Run acceptance criteria: a number, a name, or `all`.
    Suite(SuiteArgs),
}

#[derive(Args, Debug)]
struct GammaArgs {
    /// real, complex or nonarch.
    #[arg(long)]
    field: String,
    /// Sign exponent of a real character.
    #[arg(long, default_value_t = 0)]
    c: u8,
    /// Twist t of a real or complex character.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    t: String,
    /// Residue field size of a nonarchimedean field.
    #[arg(long)]
    q: Option<u64>,
    /// Value of an unramified character at a uniformizer.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    z: String,
    #[arg(long, allow_hyphen_values = true)]
    s: String,
}

#[derive(Subcommand, Debug)]
enum UnramifiedCommand {
    /// All engine quantities at one point.
    Eval(PointArgs),
    /// Exact duality at random regular rational points.
    Duality(RandomArgs),
    /// Residues at the locus v = x12 x13 x14.
    Residue(ResidueArgs),
}

#[derive(Args, Debug)]
struct PointArgs {
    /// Edge values on 12,13,14,23,24,34 (rationals `p/q` or complex literals).
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// v = q^(-1/2).
    #[arg(long)]
    v: String,
}

#[derive(Args, Debug)]
struct RandomArgs {
    #[arg(long, default_value_t = 25)]
    points: usize,
    /// Bound on numerators and denominators.
    #[arg(long, default_value_t = 7)]
    bound: i64,
    /// Candidate values of v.
    #[arg(long, default_value = "1/2,1/3,2/5")]
    v_choices: String,
}

#[derive(Args, Debug)]
struct ResidueArgs {
    /// x13,x14,x23,x24,x34 (x12 is fixed by the locus); random points if omitted.
    #[arg(long, allow_hyphen_values = true)]
    rest: Option<String>,
    #[arg(long)]
    v: Option<String>,
    #[arg(long, default_value_t = 5)]
    points: usize,
}

#[derive(Subcommand, Debug)]
enum RealCommand {
    /// Row (A) and column (B) expressions.
    Eval(RealArgs),
    /// |A| under Regge, tetrahedral and flip generators.
    WeylCheck(RealArgs),
}

#[derive(Args, Debug)]
struct RealArgs {
    /// Six exponents J1..J6, comma-separated complex literals.
    #[arg(long = "J", allow_hyphen_values = true)]
    j: String,
    /// Relative accuracy requested from each ₄F₃.
    #[arg(long)]
    target: Option<f64>,
    /// Also evaluate the edge integral in closed form.
    #[arg(long)]
    edge_integral: bool,
}

#[derive(Args, Debug)]
struct EdgeMcArgs {
    #[arg(long = "J", default_value = "0,0,0,0,0,0", allow_hyphen_values = true)]
    j: String,
    #[arg(long, default_value = "1e7", value_parser = parse_count)]
    samples: u64,
    /// fibered or flatten.
    #[arg(long, default_value = "fibered")]
    strategy: String,
    /// Compare with the closed form.
    #[arg(long)]
    compare: bool,
}

#[derive(Subcommand, Debug)]
enum ClassicalCommand {
    /// {j1 j2 j3; j4 j5 j6} by Racah's formula and by contracting 3j tensors.
    Eval {
        #[arg(long)]
        j: String,
    },
    /// Orthogonality of 6j symbols for all spins up to jmax.
    Orthogonality {
        #[arg(long, default_value_t = 3)]
        jmax: u32,
    },
}

#[derive(Args, Debug)]
struct SuiteArgs {
    name: String,
    #[arg(long, default_value = "1e7", value_parser = parse_count)]
    mc_samples: u64,
}

fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x < 1.8e19 => Ok(x as u64),
        _ => Err(format!("`{s}` is not a nonnegative integer")),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Invalid(_) => 2,
        Error::Pole(_) | Error::Degenerate(_) => 3,
        Error::Convergence(_) => 4,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Invalid(_) => "schema",
        Error::Pole(_) => "pole",
        Error::Degenerate(_) => "degenerate",
        Error::Convergence(_) => "convergence",
    }
}

fn error_json(e: &Error) -> Value {
    json!({ "error": { "kind": error_kind(e), "message": e.to_string() } })
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn split(s: &str, n: usize, what: &str) -> Result<Vec<String>, Error> {
    let parts: Vec<String> = s.split(',').map(|p| p.trim().to_string()).collect();
    if parts.len() != n {
        return Err(invalid(format!("{what}: expected {n} comma-separated values, got {}", parts.len())));
    }
    Ok(parts)
}

fn all_rational(parts: &[String]) -> Option<Vec<Rational>> {
    parts.iter().map(|p| p.parse::<Rational>().ok()).collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            println!("{}", json!({ "error": { "kind": "schema", "message": first } }));
            return ExitCode::from(2);
        }
    };
    let (doc, code) = match run(&cli) {
        Ok((doc, code)) => (doc, code),
        Err(e) => (error_json(&e), exit_code(&e)),
    };
    let text = if cli.json {
        serde_json::to_string_pretty(&doc).expect("serializable")
    } else {
        let mut lines = Vec::new();
        flatten("", &doc, &mut lines);
        lines.join("\n")
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            use std::io::Write;
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
    }
    ExitCode::from(code)
}

/// `path = value` lines; provenance objects collapse to `value ± error`.
fn flatten(path: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) if m.contains_key("value") && m.contains_key("error_estimate") => {
            out.push(format!("{path} = {} (error {})", plain(&m["value"]), plain(&m["error_estimate"])));
        }
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&if path.is_empty() { k.clone() } else { format!("{path}.{k}") }, x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), x, out);
            }
        }
        _ => out.push(format!("{path} = {}", plain(v))),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn run(cli: &Cli) -> Result<(Value, u8), Error> {
    if cli.precision < 64 {
        return Err(invalid(format!("precision {} is below the minimum of 64 bits", cli.precision)));
    }
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(invalid("thread count must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| invalid(e.to_string()))?;
    }
    let prec = cli.precision;
    let (body, code) = match &cli.command {
        Command::Gamma(a) => gamma(a, prec)?,
        Command::Unramified { command } => match command {
            UnramifiedCommand::Eval(a) => (unramified_eval(a, prec)?, 0),
            UnramifiedCommand::Duality(a) => (unramified_duality(a, cli.seed)?, 0),
            UnramifiedCommand::Residue(a) => (unramified_residue(a, cli.seed)?, 0),
        },
        Command::Real { command } => match command {
            RealCommand::Eval(a) => (real_eval(a, prec)?, 0),
            RealCommand::WeylCheck(a) => (weyl_check(a, prec)?, 0),
        },
        Command::EdgeMc(a) => (edge_mc(a, prec, cli.seed)?, 0),
        Command::Classical { command } => match command {
            ClassicalCommand::Eval { j } => (classical_eval(j)?, 0),
            ClassicalCommand::Orthogonality { jmax } => (orthogonality(*jmax, prec), 0),
        },
        Command::Suite(a) => (suite(a, prec, cli.seed)?, 0),
    };
    let mut doc = json!({ "precision_bits": prec, "seed": cli.seed });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    Ok((doc, code))
}

fn gamma(a: &GammaArgs, prec: u32) -> Result<(Value, u8), Error> {
    let s = BigComplex::parse(prec, &a.s)?;
    let chi = match a.field.as_str() {
        "real" => LocalCharacter::real(a.c, BigComplex::parse(prec, &a.t)?)?,
        "complex" => LocalCharacter::complex(BigComplex::parse(prec, &a.t)?),
        "nonarch" => {
            let q = a.q.ok_or_else(|| invalid("--q is required for a nonarchimedean field"))?;
            LocalCharacter::nonarch(q, BigComplex::parse(prec, &a.z)?, false)?
        }
        other => return Err(invalid(format!("unknown field `{other}` (real, complex, nonarch)"))),
    };
    let mut code = 0;
    let mut entry = |r: sixj_core::Result<BigComplex>| match r {
        Ok(v) => output::working(&v),
        Err(e) => {
            if code == 0 {
                code = exit_code(&e);
            }
            error_json(&e)
        }
    };
    let doc = json!({
        "field": a.field,
        "s": a.s,
        "l": entry(l_factor(&chi, &s)),
        "gamma": entry(gamma_factor(&chi, &s)),
        "epsilon": entry(epsilon_factor(&chi, &s)),
    });
    Ok((doc, code))
}

fn eval_point<T: Scalar + Render + 'static>(p: &UnramifiedPoint<T>) -> Result<Value, Error> {
    let tree = tree_vertex_sum(p)?;
    let lhs = duality_lhs(p)?;
    let rhs = spin_cone_trace(p)?;
    Ok(json!({
        "tree_vertex_sum": tree.render(),
        "adjoint_l": adjoint_l(p)?.render(),
        "sigma_l_half": sigma_l_half(p)?.render(),
        "duality_lhs": lhs.render(),
        "spin_cone_trace": rhs.render(),
        "duality_holds": lhs.agrees(&rhs),
    }))
}

fn unramified_eval(a: &PointArgs, prec: u32) -> Result<Value, Error> {
    let xs = split(&a.x, 6, "--x")?;
    let mut all = xs.clone();
    all.push(a.v.trim().to_string());
    let complex: Vec<BigComplex> = all.iter().map(|s| BigComplex::parse(prec, s)).collect::<Result<_, _>>()?;
    let cp = UnramifiedPoint::new(std::array::from_fn(|k| complex[k].clone()), complex[6].clone())?;
    let mut doc = match all_rational(&all) {
        Some(r) => {
            let p = UnramifiedPoint::new(std::array::from_fn(|k| r[k].clone()), r[6].clone())?;
            eval_point(&p)?
        }
        None => eval_point(&cp)?,
    };
    let sym = unramified_symbol(&cp)?;
    doc["symbol"] = output::estimate(
        &sym.value,
        sym.value.abs().to_f64() * 2f64.powi(8 - prec as i32),
        &sym.branch_notes,
    );
    Ok(json!({ "point": { "x": xs, "v": a.v }, "result": doc }))
}

fn v_choices(s: &str) -> Result<Vec<Rational>, Error> {
    s.split(',')
        .map(|p| p.trim().parse::<Rational>().map_err(|_| invalid(format!("bad rational `{p}` in --v-choices"))))
        .collect()
}

fn unramified_duality(a: &RandomArgs, seed: u64) -> Result<Value, Error> {
    let vs = v_choices(&a.v_choices)?;
    if a.bound < 1 {
        return Err(invalid("--bound must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::with_capacity(a.points);
    let mut all = true;
    for _ in 0..a.points {
        let p = random_regular_point(&mut rng, a.bound, &vs)?;
        let lhs = duality_lhs(&p)?;
        let rhs = spin_cone_trace(&p)?;
        let equal = lhs == rhs;
        all &= equal;
        entries.push(json!({
            "x": p.x.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "v": p.v.to_string(),
            "lhs": lhs.to_string(),
            "rhs": rhs.to_string(),
            "equal": equal,
            "error_estimate": "exact",
        }));
    }
    Ok(json!({ "all_equal": all, "points": entries }))
}

fn residue_entry(p: &UnramifiedPoint<Rational>) -> Result<Value, Error> {
    let spin = residue_spin(p)?;
    let tree = residue_tree(p)?;
    let display = residue_display(p)?;
    let without = residue_display_without_l(p)?;
    Ok(json!({
        "x": p.x.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "v": p.v.to_string(),
        "residue_trace": output::rational(&spin),
        "residue_tree": output::rational(&tree),
        "displayed_product": output::rational(&display),
        "displayed_product_without_adjoint_l": output::rational(&without),
        "adjoint_l": output::rational(&adjoint_l(p)?),
        "tree_equals_trace": tree == spin,
        "display_equals_trace": display == spin,
        "display_without_adjoint_l_equals_trace": without == spin,
    }))
}

fn unramified_residue(a: &ResidueArgs, seed: u64) -> Result<Value, Error> {
    if let Some(rest) = &a.rest {
        let parts = split(rest, 5, "--rest")?;
        let r = all_rational(&parts).ok_or_else(|| invalid("--rest takes rationals"))?;
        let v: Rational = a
            .v
            .as_deref()
            .ok_or_else(|| invalid("--v is required with --rest"))?
            .parse()
            .map_err(|_| invalid("--v takes a rational"))?;
        let p = restricted_point(std::array::from_fn(|k| r[k].clone()), v)?;
        return Ok(json!({ "points": [residue_entry(&p)?] }));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vs = v_choices("1/2,1/3,2/5")?;
    let mut entries = Vec::new();
    let mut attempts = 0;
    while entries.len() < a.points {
        attempts += 1;
        if attempts > 100 * a.points.max(1) {
            return Err(Error::Degenerate("too few regular restricted points".into()));
        }
        let rest: [Rational; 5] = std::array::from_fn(|_| random_rational(&mut rng, 7));
        let v = vs[rand::Rng::gen_range(&mut rng, 0..vs.len())].clone();
        let Ok(p) = restricted_point(rest, v) else { continue };
        match residue_entry(&p) {
            Ok(e) => entries.push(e),
            Err(Error::Pole(_) | Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(json!({ "points": entries }))
}

fn reference_for(p: &RealParameters) -> Option<(&'static str, &'static str)> {
    [("J1", suites::REFERENCE_J1, suites::REFERENCE_A1), ("J2", suites::REFERENCE_J2, suites::REFERENCE_A2)]
        .into_iter()
        .find(|(_, j, _)| {
            RealParameters::parse(p.prec(), j).is_ok_and(|r| r.j.iter().zip(&p.j).all(|(a, b)| a.rel_diff(b) < 1e-12))
        })
        .map(|(name, _, a)| (name, a))
}

const SIGN_NOTE: &str = "the symbol is defined up to the sign of sqrt(L(1/2, Sigma)); \
the row expression A carries the sign of the stored reference values and the column expression B evaluates to -A";

fn real_eval(a: &RealArgs, prec: u32) -> Result<Value, Error> {
    let p = RealParameters::parse(prec, &a.j)?;
    let opts = EvalOptions { target: a.target.unwrap_or(EvalOptions::default().target) };
    let notes = vec![SIGN_NOTE.to_string()];
    let ra = symbol_real_a(&p, &opts)?;
    let rb = symbol_real_b(&p, &opts)?;
    let mut doc = json!({
        "J": a.j,
        "unitary": p.is_unitary(),
        "symbol_a": output::estimate(&ra.value, ra.error, &notes),
        "symbol_b": output::estimate(&rb.value, rb.error, &notes),
    });
    if let Some((name, value)) = reference_for(&p) {
        let r = BigComplex::parse(prec, value)?;
        doc["reference"] = json!({
            "name": name,
            "value": value,
            "digits_agreed": format!("{:.1}", digits_agreed(&ra.value, &r)),
        });
    }
    if a.edge_integral {
        let f = edge_integral_closed_form(&p, &opts)?;
        doc["edge_integral"] = output::estimate(&f.value, f.error, &[]);
    }
    Ok(doc)
}

fn weyl_check(a: &RealArgs, prec: u32) -> Result<Value, Error> {
    let p = RealParameters::parse(prec, &a.j)?;
    let opts = EvalOptions { target: a.target.unwrap_or(1e-14) };
    let report = weyl_invariance_report(&p, &opts)?;
    let worst = report.iter().map(|e| e.deviation).fold(0.0, f64::max);
    let entries: Vec<Value> = report
        .iter()
        .map(|e| json!({ "generator": e.generator, "relative_deviation": format!("{:.3e}", e.deviation) }))
        .collect();
    Ok(json!({
        "J": a.j,
        "unitary": p.is_unitary(),
        "target": format!("{:.1e}", opts.target),
        "max_relative_deviation": format!("{worst:.3e}"),
        "generators": entries,
    }))
}

fn edge_mc(a: &EdgeMcArgs, prec: u32, seed: u64) -> Result<Value, Error> {
    let p = RealParameters::parse(prec, &a.j)?;
    let strategy: Strategy = a.strategy.parse()?;
    let r = edge_integral_mc(&p, &McConfig { samples: a.samples, seed, strategy })?;
    let mut doc = json!({
        "J": a.j,
        "strategy": a.strategy,
        "samples": r.samples,
        "estimate": {
            "value": format!("{:.17e}{:+.17e}i", r.estimate.re, r.estimate.im),
            "error_estimate": format!("{:.3e}", r.stderr),
            "branch_notes": ["error estimate is one standard error"],
        },
    });
    if a.compare {
        let f = edge_integral_closed_form(&p, &EvalOptions { target: 1e-20 })?;
        let (re, im) = f.value.to_f64_pair();
        let dev = ((r.estimate.re - re).powi(2) + (r.estimate.im - im).powi(2)).sqrt();
        doc["closed_form"] = output::estimate(&f.value, f.error, &[]);
        doc["standard_errors"] = json!(format!("{:.3}", dev / r.stderr));
        doc["relative_deviation"] = json!(format!("{:.3e}", dev / (re * re + im * im).sqrt()));
    }
    Ok(doc)
}

fn classical_eval(j: &str) -> Result<Value, Error> {
    let parts = split(j, 6, "--j")?;
    let spins: Vec<u32> = parts
        .iter()
        .map(|s| s.parse::<u32>().map_err(|_| invalid(format!("spin `{s}` is not a nonnegative integer"))))
        .collect::<Result<_, _>>()?;
    let racah: [u32; 6] = spins.clone().try_into().expect("six");
    // {a b c; d e f} = (j12, j13, j14, j34, j24, j23); the map is its own inverse.
    let edges = to_racah_order(&racah);
    let exact = racah_6j(racah);
    let value = exact.to_f64();
    Ok(json!({
        "j": spins,
        "admissible": admissible(&edges),
        "racah": {
            "value": format!("{value:.17e}"),
            "signed_square": exact.signed_sq().to_string(),
            "error_estimate": "exact",
            "branch_notes": ["value = sign(signed_square) * sqrt(|signed_square|)"],
        },
        "contraction": output::float(contraction_6j(&edges), 1e-15 * value.abs().max(1e-300)),
    }))
}

fn orthogonality(jmax: u32, prec: u32) -> Value {
    let (defect, count) = orthogonality_defect(jmax, prec);
    json!({ "jmax": jmax, "identities": count, "max_defect": format!("{defect:.3e}") })
}

fn suite(a: &SuiteArgs, prec: u32, seed: u64) -> Result<Value, Error> {
    let ids: Vec<u8> = if a.name == "all" {
        CRITERIA.iter().map(|c| c.0).collect()
    } else {
        vec![suites::criterion_by_name(&a.name).ok_or_else(|| {
            let names: Vec<&str> = CRITERIA.iter().map(|c| c.1).collect();
            invalid(format!("unknown suite `{}` (1-10, all, or one of {})", a.name, names.join(", ")))
        })?]
    };
    let opts = SuiteOptions { seed, prec, mc_samples: a.mc_samples };
    let mut reports = Vec::new();
    for id in ids {
        let r = suites::run_criterion(id, &opts)?;
        let checks: Vec<Value> = r
            .checks
            .iter()
            .map(|c| json!({ "label": c.label, "pass": c.pass, "primary": c.primary, "detail": c.detail }))
            .collect();
        reports.push(json!({ "criterion": r.id, "name": r.name, "pass": r.pass(), "checks": checks }));
    }
    Ok(json!({ "criteria": reports }))
}
