//! The `dwcalc` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::cocycles::{omega_l, Level, ThreeCocycle};
use crate::cyclotomic::{Complex, Cyclotomic};
use crate::error::Error;
use crate::groups::FiniteGroup;
use crate::homoracle::DEFAULT_BUDGET;
use crate::kappa::{kappa, kappa_oracle, KappaQuery};
use crate::seifert::{compute, gauss_sum, legendre, DWResult, Method, MethodChoice, SeifertData};
use crate::tqd::CharacterTable;
use crate::verify::{self, Suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dwcalc",
    version,
    about = "Exact Dijkgraaf-Witten invariants of Seifert 3-manifolds"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate Z(M) for a Seifert manifold.
    Compute(ComputeArgs),
    /// Run the property suites and print a pass/fail table.
    Verify(VerifyArgs),
    /// Print the character table, dimensions and Gram matrix.
    Characters(CharactersArgs),
    /// Evaluate the gluing phase for one (a, b, z).
    Kappa(KappaArgs),
    /// Evaluate quadratic Gauss sums.
    Gauss(GaussArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    #[default]
    Auto,
    Formula,
    Prime,
    Oracle,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Formula => MethodChoice::Fixed(Method::Formula),
            MethodArg::Prime => MethodChoice::Fixed(Method::Prime),
            MethodArg::Oracle => MethodChoice::Fixed(Method::Oracle),
        }
    }
}

#[derive(Debug, Args)]
pub struct CocycleArgs {
    /// `cyclic:m`, `abelian:a,b,...` or `file:path.json`.
    #[arg(long)]
    pub group: FiniteGroup,
    /// Level l of the standard cocycle on a cyclic group (0 means trivial on any group).
    #[arg(long, conflicts_with = "cocycle")]
    pub level: Option<i64>,
    /// JSON table {"values": [[[k,...],...],...], "root_order": N}.
    #[arg(long)]
    pub cocycle: Option<PathBuf>,
}

impl CocycleArgs {
    pub fn cocycle(&self) -> Result<Arc<ThreeCocycle>, Error> {
        let group = Arc::new(self.group.clone());
        if let Some(path) = &self.cocycle {
            return ThreeCocycle::load(group, path)
                .map(Arc::new)
                .map_err(|e| Error::Parse(format!("--cocycle {}: {e}", path.display())));
        }
        let l = self.level.unwrap_or(0);
        match group.cyclic_order() {
            Some(m) => {
                let level = Level::new(l, m).map_err(|e| Error::Parse(format!("--level: {e}")))?;
                Ok(Arc::new(omega_l(m, level)))
            }
            None if l == 0 => Ok(Arc::new(ThreeCocycle::trivial(group))),
            None => Err(Error::Parse(format!(
                "--level {l}: standard levels exist only for cyclic groups; pass --cocycle for other twists"
            ))),
        }
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub cocycle: CocycleArgs,
    /// `g=G;(a1,b1),(a2,b2),...`
    #[arg(long, allow_hyphen_values = true)]
    pub seifert: SeifertData,
    #[arg(long, value_enum, default_value_t)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Work cap for the counting oracle.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name or `all`; repeatable.
    #[arg(long = "suite", default_value = "all")]
    pub suites: Vec<String>,
    #[arg(long, default_value_t = 6)]
    pub max_order: u32,
    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CharactersArgs {
    #[command(flatten)]
    pub cocycle: CocycleArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct KappaArgs {
    #[command(flatten)]
    pub cocycle: CocycleArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: i64,
    #[arg(long)]
    pub z: usize,
    /// Also evaluate the cycle product and compare.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GaussArgs {
    /// Odd prime.
    #[arg(long)]
    pub p: i64,
    /// Single argument; every residue when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<i64>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    RunConfig::try_parse_from(argv)
}

/// Output text and exit code of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Overflow(_) | Error::DivisionByZero => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn complex(c: &Complex) -> String {
    let tidy = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    let (re, im) = (tidy(c.re), tidy(c.im));
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{re:.12} {sign} {:.12}i", im.abs())
}

pub fn run_compute(args: &ComputeArgs) -> Result<Outcome, Error> {
    let omega = args.cocycle.cocycle()?;
    let r: DWResult = compute(omega, &args.seifert, args.method.into(), args.budget)?;
    Ok(Outcome::ok(match args.format {
        Format::Json => pretty(&r),
        Format::Text => format!(
            "manifold: {}\nvalue:    {}\napprox:   {}\nmethod:   {}\n",
            args.seifert,
            r.value,
            complex(&r.approx),
            r.method
        ),
    }))
}

pub fn verify_config(args: &VerifyArgs) -> Result<(Vec<Suite>, VerifyConfig), Error> {
    let mut suites = Vec::new();
    for s in &args.suites {
        if s == "all" {
            suites.extend(Suite::ALL);
        } else {
            suites.push(s.parse().map_err(|e| Error::Parse(format!("--suite: {e}")))?);
        }
    }
    let cfg = VerifyConfig {
        max_order: args.max_order,
        seed: args.seed,
        ..VerifyConfig::default()
    };
    Ok((suites, cfg))
}

pub fn run_verify(args: &VerifyArgs) -> Result<Outcome, Error> {
    let (suites, cfg) = verify_config(args)?;
    let reports = verify::run(&suites, &cfg);
    let code = if reports.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    let stdout = match args.format {
        Format::Json => pretty(&reports),
        Format::Text => verify::render_table(&reports),
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code,
    })
}

pub fn run_characters(args: &CharactersArgs) -> Result<Outcome, Error> {
    let omega = args.cocycle.cocycle()?;
    let table = CharacterTable::for_cocycle(omega)?;
    let space = table.space();
    let gram = table.gram_matrix();
    if args.format == Format::Json {
        let characters: Vec<_> = table
            .characters()
            .iter()
            .map(|ch| {
                let values: Vec<_> = space
                    .pairs()
                    .iter()
                    .zip(ch.values.values())
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(&(x, h), v)| json!({"x": x, "h": h, "value": v}))
                    .collect();
                json!({"label": ch.label, "dim": ch.dim, "values": values})
            })
            .collect();
        let doc = json!({
            "group": space.group().spec(),
            "pairs": space.pairs().len(),
            "characters": characters,
            "gram": gram,
        });
        return Ok(Outcome::ok(pretty(&doc)));
    }
    let mut out = String::new();
    writeln!(
        out,
        "{} characters on {} commuting pairs",
        table.len(),
        space.pairs().len()
    )
    .unwrap();
    for ch in table.characters() {
        writeln!(out, "chi{}  dim={}", ch.label, ch.dim).unwrap();
        for (&(x, h), v) in space.pairs().iter().zip(ch.values.values()) {
            if !v.is_zero() {
                writeln!(out, "  ({x},{h}) -> {v}").unwrap();
            }
        }
    }
    writeln!(out, "gram matrix:").unwrap();
    for row in &gram {
        let cells: Vec<String> = row.iter().map(Cyclotomic::to_string).collect();
        writeln!(out, "  {}", cells.join(" ")).unwrap();
    }
    Ok(Outcome::ok(out))
}

pub fn run_kappa(args: &KappaArgs) -> Result<Outcome, Error> {
    let omega = args.cocycle.cocycle()?;
    let q = KappaQuery::new(&omega, args.a, args.b, args.z);
    let closed = kappa(q).map_err(|e| Error::Parse(format!("--z: {e}")))?;
    let oracle = if args.oracle { Some(kappa_oracle(q)?) } else { None };
    let agree = oracle.map(|o| o == closed);
    let code = if agree == Some(false) { EXIT_FAILURE } else { EXIT_OK };
    let stdout = match args.format {
        Format::Json => pretty(&json!({
            "a": args.a,
            "b": args.b,
            "z": args.z,
            "kappa": closed.to_cyclotomic(),
            "root": {"order": closed.order(), "exponent": closed.exponent()},
            "oracle": oracle.map(|o| o.to_cyclotomic()),
            "equal": agree,
        })),
        Format::Text => {
            let mut s = format!("kappa_{{{},{}}}({}) = {closed}\n", args.a, args.b, args.z);
            if let Some(o) = oracle {
                writeln!(s, "cycle product   = {o}").unwrap();
                writeln!(s, "equal: {}", if agree == Some(true) { "yes" } else { "NO" }).unwrap();
            }
            s
        }
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code,
    })
}

pub fn run_gauss(args: &GaussArgs) -> Result<Outcome, Error> {
    let p = args.p;
    let g1 = gauss_sum(p, 1).map_err(|e| Error::Parse(format!("--p: {e}")))?;
    let range: Vec<i64> = match args.a {
        Some(a) => vec![a],
        None => (0..p).collect(),
    };
    let mut rows = Vec::new();
    let mut all_ok = true;
    for a in range {
        let s = gauss_sum(p, a)?;
        let leg = legendre(a, p)?;
        let norm = &s * &s.conjugate();
        let ok = if leg == 0 {
            s == Cyclotomic::from_integer(p)
        } else {
            s == g1.scale_int(leg as i64) && norm == Cyclotomic::from_integer(p)
        };
        all_ok &= ok;
        rows.push((a, s, leg, norm, ok));
    }
    let stdout = match args.format {
        Format::Json => pretty(
            &rows
                .iter()
                .map(|(a, s, leg, norm, ok)| json!({"a": a, "value": s, "legendre": leg, "norm": norm, "identity": ok}))
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut out = String::new();
            for (a, s, leg, norm, ok) in &rows {
                writeln!(
                    out,
                    "S_{p}({a}) = {s}   (a/p) = {leg:+}   |S|^2 = {norm}   {}",
                    if *ok { "ok" } else { "MISMATCH" }
                )
                .unwrap();
            }
            out
        }
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if all_ok { EXIT_OK } else { EXIT_FAILURE },
    })
}

pub fn execute(config: &RunConfig) -> Outcome {
    let result = match &config.command {
        Command::Compute(a) => run_compute(a),
        Command::Verify(a) => run_verify(a),
        Command::Characters(a) => run_characters(a),
        Command::Kappa(a) => run_kappa(a),
        Command::Gauss(a) => run_gauss(a),
    };
    result.unwrap_or_else(|e| Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: exit_code(&e),
    })
}

/// Honors `DWCALC_THREADS`; ignores it when a global pool already exists.
pub fn configure_threads() {
    if let Some(n) = std::env::var("DWCALC_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Parses `argv`, runs the command and writes its output; returns the exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_args(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    configure_threads();
    let out = execute(&config);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        let mut argv = vec!["dwcalc"];
        argv.extend_from_slice(args);
        match parse_args(argv) {
            Ok(c) => execute(&c),
            Err(e) => Outcome {
                stdout: String::new(),
                stderr: e.to_string(),
                code: EXIT_USAGE,
            },
        }
    }

    #[test]
    fn parses_documented_compute() {
        let c = parse_args([
            "dwcalc",
            "compute",
            "--group",
            "cyclic:9",
            "--level",
            "4",
            "--seifert",
            "g=1;(2,1),(3,-1)",
        ])
        .unwrap();
        let Command::Compute(a) = c.command else { panic!() };
        assert_eq!(a.seifert.fibers(), &[(2, 1), (3, -1)]);
        assert_eq!(a.method, MethodArg::Auto);
    }

    #[test]
    fn usage_errors_name_the_flag() {
        let o = run(&["compute", "--group", "cyclic:3", "--seifert", "g=0;(2,4)"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("--seifert"), "{}", o.stderr);
        let o = run(&["compute", "--group", "cyclic:9", "--level", "9", "--seifert", "g=0;"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("--level"), "{}", o.stderr);
        let o = run(&["compute", "--group", "cyclic:3", "--seifert", "g=0;", "--bogus"]);
        assert_eq!(o.code, EXIT_USAGE);
        let o = run(&["verify", "--suite", "nope"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("--suite"));
    }

    #[test]
    fn budget_exit_code() {
        let o = run(&[
            "compute",
            "--group",
            "abelian:2,2",
            "--seifert",
            "g=2;(1,1)",
            "--method",
            "oracle",
            "--budget",
            "5",
        ]);
        assert_eq!(o.code, EXIT_BUDGET, "{o:?}");
    }

    #[test]
    fn compute_json_round_trips() {
        let o = run(&[
            "compute",
            "--group",
            "cyclic:3",
            "--level",
            "1",
            "--seifert",
            "g=0;(1,1),(1,2)",
            "--method",
            "formula",
            "--format",
            "json",
        ]);
        assert_eq!(o.code, EXIT_OK, "{o:?}");
        let r: DWResult = serde_json::from_str(&o.stdout).unwrap();
        let again = run(&[
            "compute",
            "--group",
            "cyclic:3",
            "--level",
            "1",
            "--seifert",
            "g=0;(1,1),(1,2)",
            "--method",
            "formula",
            "--format",
            "json",
        ]);
        assert_eq!(o.stdout, again.stdout);
        assert_eq!(r.method, Method::Formula);
        assert_eq!(r.value.to_string(), "-1/3 - 2/3*E(3)");
    }

    #[test]
    fn kappa_and_gauss_commands() {
        let o = run(&[
            "kappa", "--group", "cyclic:3", "--level", "1", "--a", "4", "--b", "1", "--z", "1", "--oracle",
        ]);
        assert_eq!(o.code, EXIT_OK);
        assert!(o.stdout.contains("equal: yes"), "{}", o.stdout);
        let o = run(&["gauss", "--p", "7"]);
        assert_eq!(o.code, EXIT_OK);
        assert_eq!(o.stdout.lines().count(), 7);
        assert_eq!(run(&["gauss", "--p", "9"]).code, EXIT_USAGE);
    }

    #[test]
    fn characters_and_verify_commands() {
        let o = run(&["characters", "--group", "cyclic:2", "--level", "1", "--format", "json"]);
        assert_eq!(o.code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["characters"].as_array().unwrap().len(), 4);
        assert_eq!(
            run(&["characters", "--group", "file:/nonexistent.json"]).code,
            EXIT_USAGE
        );
        let o = run(&["verify", "--suite", "kappa", "--max-order", "3"]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
        assert!(o.stdout.contains("kappa") && o.stdout.contains("pass"));
    }
}
