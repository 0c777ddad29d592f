use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use rmtori::classify::{profile, verdicts_nm, AlgebraProfile, AlphaFlag, ClassifyError};
use rmtori::construct::{ample_sequence, rm_pair, ConstructError};
use rmtori::lattice::{KVector, SL2Matrix};
use rmtori::oracle::{run_suite, SuiteConfig, SUITES};
use rmtori::quadfield::{QuadError, QuadNum, QuadOrder};
use rmtori::series::{dual_series, hilbert_series};
use rmtori::twist::{descent_chain, twist_orbit, TwistError};
use rmtori::wire;

#[derive(Parser)]
#[command(name = "rmtori", version, about = "Coordinate algebras of noncommutative two-tori with real multiplication")]
struct Cli {
    /// Emit JSON instead of a table
    #[arg(long, global = true)]
    json: bool,
    /// Number of series coefficients or orbit steps
    #[arg(long, global = true, default_value_t = 10)]
    horizon: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ProfileArgs {
    /// Matrix entries a,b,c,d (row-major)
    #[arg(short = 'g', allow_hyphen_values = true)]
    g: String,
    /// Base vector deg,rk
    #[arg(short = 'v', allow_hyphen_values = true)]
    v: String,
    /// trivial | unknown
    #[arg(long, default_value = "unknown")]
    alpha: String,
}

#[derive(Args)]
struct OrderArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
}

#[derive(Subcommand)]
enum Command {
    /// Verdicts, Hilbert series and dual profile of (g, v0)
    Classify(ProfileArgs),
    /// Hilbert series 1 + M t / (1 - N t + t^2)
    Hilbert {
        #[arg(long = "n", allow_hyphen_values = true)]
        n: String,
        #[arg(long = "m", allow_hyphen_values = true)]
        m: String,
    },
    /// Profile of the quadratic dual algebra
    Dual(ProfileArgs),
    /// Twist orbit tables chi(F'_n, F_m) and rk(F'_n)
    Orbit(ProfileArgs),
    /// Descent chain in the heart of slope theta
    Descent {
        #[command(flatten)]
        order: OrderArgs,
        #[arg(short = 'v', allow_hyphen_values = true)]
        v: String,
        #[arg(short = 'n', default_value_t = 5)]
        steps: usize,
    },
    /// Profile realizing real multiplication by the order
    ConstructRm {
        #[command(flatten)]
        order: OrderArgs,
        /// Require M >= N + 2
        #[arg(long)]
        koszul_grade: bool,
    },
    /// Ample sequence of slopes converging to theta
    AmpleSeq {
        #[arg(long, allow_hyphen_values = true)]
        theta_alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        theta_beta: String,
        #[arg(long, allow_hyphen_values = true)]
        theta_gamma: String,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// CSV phase diagram of verdicts over (N, M)
    Survey {
        #[arg(long, allow_hyphen_values = true, default_value = "2")]
        n_min: String,
        #[arg(long, allow_hyphen_values = true, default_value = "6")]
        n_max: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        m_min: String,
        #[arg(long, allow_hyphen_values = true, default_value = "10")]
        m_max: String,
        #[arg(long, default_value = "unknown")]
        alpha: String,
        #[arg(long)]
        parallel: bool,
    },
    /// Brute-force verification suites
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
}

#[derive(Subcommand)]
enum OracleAction {
    Run {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 3)]
        entry_bound: i64,
        #[arg(long)]
        parallel: bool,
    },
}

enum CliError {
    Validation(String),
    Internal(String),
    Oracle(String),
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<TwistError> for CliError {
    fn from(e: TwistError) -> Self {
        match e {
            TwistError::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<QuadError> for CliError {
    fn from(e: QuadError) -> Self {
        match e {
            QuadError::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::Quad(q) => q.into(),
            ConstructError::NotIrrational => CliError::Validation(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

type CliResult = Result<String, CliError>;

fn parse_int(s: &str, what: &str) -> Result<BigInt, CliError> {
    BigInt::from_str(s.trim())
        .map_err(|_| CliError::Validation(format!("{what}: `{s}` is not an integer")))
}

fn parse_ints<const K: usize>(s: &str, what: &str) -> Result<[BigInt; K], CliError> {
    let parts = s
        .split(',')
        .map(|p| parse_int(p, what))
        .collect::<Result<Vec<_>, _>>()?;
    parts
        .try_into()
        .map_err(|_| CliError::Validation(format!("{what}: expected {K} comma-separated integers")))
}

fn parse_matrix(s: &str) -> Result<SL2Matrix, CliError> {
    SL2Matrix::from_row_major(parse_ints::<4>(s, "matrix")?)
        .map_err(|e| CliError::Validation(e.to_string()))
}

fn parse_vector(s: &str) -> Result<KVector, CliError> {
    let [deg, rk] = parse_ints::<2>(s, "vector")?;
    Ok(KVector::new(deg, rk))
}

fn parse_alpha(s: &str) -> Result<AlphaFlag, CliError> {
    AlphaFlag::parse(s).ok_or_else(|| CliError::Validation(format!("alpha flag `{s}` must be trivial or unknown")))
}

fn parse_order(o: &OrderArgs) -> Result<QuadOrder, CliError> {
    Ok(QuadOrder::new(
        parse_int(&o.alpha, "alpha")?,
        parse_int(&o.beta, "beta")?,
        parse_int(&o.gamma, "gamma")?,
    )?)
}

fn load_profile(a: &ProfileArgs) -> Result<AlgebraProfile, CliError> {
    Ok(profile(&parse_matrix(&a.g)?, &parse_vector(&a.v)?, parse_alpha(&a.alpha)?)?)
}

fn flat(g: &SL2Matrix) -> String {
    g.row_major().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn joined<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn profile_lines(p: &AlgebraProfile, out: &mut Vec<String>) {
    out.push(format!("g: {}", flat(&p.g)));
    out.push(format!("v0: {}", p.v0));
    out.push(format!("N: {}", p.n));
    out.push(format!("M: {}", p.m));
    out.push(format!("class: {}", p.class.as_str()));
    if let (Some(a), Some(r)) = (&p.theta_attract, &p.theta_repel) {
        out.push(format!("theta_attract: {a}"));
        out.push(format!("theta_repel: {r}"));
    }
    if let Some(f) = &p.frame {
        out.push(format!("r: {}", f.r));
        out.push(format!("delta: {}", f.delta));
    }
    if p.in_heart() == Some(false) {
        out.push("note: v0 lies in the heart only after the shift [1]".into());
    }
}

fn classify_cmd(a: &ProfileArgs, json_out: bool, horizon: usize) -> CliResult {
    let p = load_profile(a)?;
    if json_out {
        return Ok(pretty(&wire::classification_json(&p, horizon)));
    }
    let mut out = Vec::new();
    profile_lines(&p, &mut out);
    out.push(format!("hilbert: {}", joined(&p.hilbert_coefficients(horizon))));
    match p.verdicts() {
        Ok(v) => {
            for (name, verdict) in [
                ("degree_one", &v.degree_one),
                ("quadratic", &v.quadratic),
                ("koszul", &v.koszul),
                ("finitely_generated", &v.finitely_generated),
                ("ample", &v.ample),
            ] {
                match &verdict.note {
                    Some(n) => out.push(format!("{name}: {verdict} ({n})")),
                    None => out.push(format!("{name}: {verdict}")),
                }
            }
            if let Ok(d) = p.koszul_dual() {
                out.push(format!("dual g: {}", flat(&d.g)));
                out.push(format!("dual N: {}, dual M: {}", d.n, d.m));
            }
        }
        Err(e) => out.push(format!("admissible: no ({e})")),
    }
    Ok(out.join("\n"))
}

fn hilbert_cmd(n: &str, m: &str, json_out: bool, horizon: usize) -> CliResult {
    let (n, m) = (parse_int(n, "N")?, parse_int(m, "M")?);
    let h = hilbert_series(&n, &m).coefficients(horizon);
    let d = dual_series(&hilbert_series(&n, &m))
        .map_err(|e| CliError::Internal(e.to_string()))?
        .coefficients(horizon);
    if json_out {
        return Ok(pretty(&json!({
            "N": wire::big_number(&n),
            "M": wire::big_number(&m),
            "hilbert": wire::coefficients_json(&h),
            "dual": wire::coefficients_json(&d),
        })));
    }
    Ok(format!("hilbert: {}\ndual: {}", joined(&h), joined(&d)))
}

fn dual_cmd(a: &ProfileArgs, json_out: bool) -> CliResult {
    let d = load_profile(a)?.koszul_dual()?;
    if json_out {
        return Ok(pretty(&wire::profile_json(&d)));
    }
    let mut out = Vec::new();
    profile_lines(&d, &mut out);
    Ok(out.join("\n"))
}

fn orbit_cmd(a: &ProfileArgs, json_out: bool, horizon: usize) -> CliResult {
    let o = twist_orbit(&load_profile(a)?, horizon)?;
    if json_out {
        return Ok(pretty(&wire::orbit_json(&o)));
    }
    let mut out = vec![format!("r: {}", o.r)];
    for n in 0..horizon.max(1) {
        let row: Vec<String> = (n + 1..=horizon.max(1)).map(|m| o.chi[&(n, m)].to_string()).collect();
        out.push(format!("chi(F'_{n}, F_m), m > {n}: {}", row.join(", ")));
    }
    for (n, r) in o.rk.iter().enumerate() {
        out.push(format!("rk(F'_{n}) = {r}"));
    }
    Ok(out.join("\n"))
}

fn descent_cmd(order: &OrderArgs, v: &str, steps: usize, json_out: bool) -> CliResult {
    let theta = parse_order(order)?.theta();
    let chain = descent_chain(&theta, &parse_vector(v)?, steps)?;
    if json_out {
        return Ok(pretty(&json!({"theta": wire::quad_json(&theta), "chain": wire::vectors_json(&chain)})));
    }
    Ok(chain.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("\n"))
}

fn construct_cmd(order: &OrderArgs, koszul_grade: bool, json_out: bool) -> CliResult {
    let rm = rm_pair(&parse_order(order)?, koszul_grade)?;
    if json_out {
        return Ok(pretty(&wire::rm_pair_json(&rm)));
    }
    let mut out = vec![format!("theta: {}", rm.theta), format!("unit: {}", rm.r)];
    profile_lines(&rm.profile, &mut out);
    out.push(format!("koszul_grade: {}", rm.koszul_grade));
    Ok(out.join("\n"))
}

fn ample_seq_cmd(a: &str, b: &str, c: &str, count: usize, json_out: bool) -> CliResult {
    let order = QuadOrder::new(parse_int(a, "alpha")?, parse_int(b, "beta")?, parse_int(c, "gamma")?)?;
    let theta: QuadNum = order.theta();
    let items = ample_sequence(&theta, count)?;
    if json_out {
        return Ok(pretty(&json!({"theta": wire::quad_json(&theta), "items": wire::ample_items_json(&items)})));
    }
    let mut out = vec!["index,d,r,mu".to_string()];
    out.extend(items.iter().map(|it| format!("{},{},{},{}", it.index, it.d, it.r, it.mu)));
    Ok(out.join("\n"))
}

fn survey_row(n: &BigInt, m: &BigInt, alpha: AlphaFlag) -> String {
    match verdicts_nm(n, m, alpha) {
        Some(v) => format!(
            "{n},{m},{},{},{},{},{}",
            v.degree_one, v.quadratic, v.koszul, v.finitely_generated, v.ample
        ),
        None => format!("{n},{m},n/a,n/a,n/a,n/a,n/a"),
    }
}

fn survey_cmd(bounds: [&str; 4], alpha: &str, parallel: bool) -> CliResult {
    let [n0, n1, m0, m1] = [
        parse_int(bounds[0], "n-min")?,
        parse_int(bounds[1], "n-max")?,
        parse_int(bounds[2], "m-min")?,
        parse_int(bounds[3], "m-max")?,
    ];
    let alpha = parse_alpha(alpha)?;
    let mut cells = Vec::new();
    let mut n = n0;
    while n <= n1 {
        let mut m = m0.clone();
        while m <= m1 {
            cells.push((n.clone(), m.clone()));
            m += 1;
        }
        n += 1;
    }
    let rows: Vec<String> = if parallel {
        cells.par_iter().map(|(n, m)| survey_row(n, m, alpha)).collect()
    } else {
        cells.iter().map(|(n, m)| survey_row(n, m, alpha)).collect()
    };
    let mut out = vec!["N,M,degree_one,quadratic,koszul,finitely_generated,ample".to_string()];
    out.extend(rows);
    Ok(out.join("\n"))
}

fn oracle_cmd(suite: &str, entry_bound: i64, parallel: bool, json_out: bool) -> CliResult {
    if entry_bound < 1 {
        return Err(CliError::Validation("entry bound must be at least 1".into()));
    }
    let cfg = SuiteConfig {
        entry_bound,
        vec_bound: entry_bound,
        parallel,
        ..SuiteConfig::default()
    };
    let report = run_suite(suite, &cfg).ok_or_else(|| {
        CliError::Validation(format!("unknown suite `{suite}`; expected all or one of {}", SUITES.join(", ")))
    })?;
    let text = if json_out {
        pretty(&Value::Array(
            report
                .suites
                .iter()
                .map(|s| json!({"suite": s.name, "passed": s.passed, "checked": s.checked, "failures": s.failures, "millis": s.millis as u64}))
                .collect(),
        ))
    } else {
        report.to_string().trim_end().to_string()
    };
    if report.passed() {
        Ok(text)
    } else {
        Err(CliError::Oracle(text))
    }
}

fn run(cli: &Cli) -> CliResult {
    let (js, h) = (cli.json, cli.horizon);
    match &cli.command {
        Command::Classify(a) => classify_cmd(a, js, h),
        Command::Hilbert { n, m } => hilbert_cmd(n, m, js, h),
        Command::Dual(a) => dual_cmd(a, js),
        Command::Orbit(a) => orbit_cmd(a, js, h),
        Command::Descent { order, v, steps } => descent_cmd(order, v, *steps, js),
        Command::ConstructRm { order, koszul_grade } => construct_cmd(order, *koszul_grade, js),
        Command::AmpleSeq {
            theta_alpha,
            theta_beta,
            theta_gamma,
            count,
        } => ample_seq_cmd(theta_alpha, theta_beta, theta_gamma, *count, js),
        Command::Survey {
            n_min,
            n_max,
            m_min,
            m_max,
            alpha,
            parallel,
        } => survey_cmd([n_min, n_max, m_min, m_max], alpha, *parallel),
        Command::Oracle {
            action: OracleAction::Run {
                suite,
                entry_bound,
                parallel,
            },
        } => oracle_cmd(suite, *entry_bound, *parallel, js),
    }
}

fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Oracle(report)) => {
            emit(&report);
            eprintln!("oracle violation");
            ExitCode::from(3)
        }
    }
}
