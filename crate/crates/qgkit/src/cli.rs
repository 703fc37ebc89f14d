//! Command-line front end. [`run`] is the whole program minus process
//! plumbing, so it can be driven from tests.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use qgkit_core::braided::{braid, hecke_residual, r_matrix, scan_normalizations, solve_omega, yang_baxter_residual};
use qgkit_core::envelope::{
    check_dependency, check_preset_bialgebra, known_nu, omega_relations_by_class, serre_relations,
    verify_dj_image_at, CartanMatrix, FROZEN_EF,
};
use qgkit_core::freealg::{AlgebraError, Membership};
use qgkit_core::oscillator::{
    check_coassociativity, check_comodule, covariance_constraints, derive_bialgebra, standard_counit,
    uniqueness_probe, verify_sl2_substitution, CoactionMap, OscillatorPresentation,
};
use qgkit_core::{Error, Exponent, GeneratorTable, RewriteSystem, RootOrder, TensorOperator};

use crate::config::{parse_exponent, parse_grid, Config, ConfigError, Format};
use crate::output::RunReport;
use crate::parse::{ParseError, Parser as ExprParser, Unknown};
use crate::relfile::parse_relations;

#[derive(Debug, Parser)]
#[command(name = "qgkit", version, about = "Exact checks for braided binomials, q-deformed envelopes and q-oscillators")]
pub struct Cli {
    /// `key = value` configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output format; overrides the configuration file.
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kernel basis of the order-N braided binomials.
    Omega {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// Kernel dimension across a grid of normalizations.
    ScanNu {
        #[arg(long)]
        n: usize,
        /// Comma-separated exponents; defaults to the configured grid.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Order-N commutation relations for E (letters d, e) or F (letters f, g).
    Relations {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        family: Family,
        /// Defaults to the known normalization for N = 2, 3, 4.
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
    },
    /// Exact identity checks on the braided, envelope and preset algebras.
    #[command(subcommand)]
    Check(Check),
    /// q-Serre relations for a rank-two Cartan matrix.
    Serre {
        /// Rows separated by `;`, e.g. "2,-1;-3,2".
        #[arg(long, allow_hyphen_values = true)]
        cartan: String,
        /// Exponent of q used as the deformation parameter.
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        q_dj: String,
    },
    /// q-oscillator covariance, comodule and sl_q(2) checks.
    #[command(subcommand)]
    Oscillator(Oscillator),
    /// Normal forms and ideal membership against a relation file.
    Reduce {
        /// Relation file (`name : lhs = rhs` per line).
        #[arg(long)]
        relations: PathBuf,
        /// Generator order, comma-separated; default is order of first appearance.
        #[arg(long)]
        generators: Option<String>,
        /// Completion degree bound; defaults to the configured bound.
        #[arg(long)]
        bound: Option<usize>,
        /// Expressions to reduce; put `--` before one that starts with `-`.
        #[arg(required = true)]
        exprs: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "E", alias = "e")]
    E,
    #[value(name = "F", alias = "f")]
    F,
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// R12 R13 R23 = R23 R13 R12.
    Ybe(NuArg),
    /// (B - q^(1+nu))(B + q^(nu-1)) = 0.
    Hecke(NuArg),
    /// Coproduct and counit respect every preset relation.
    Bialgebra {
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        /// Also include the order-N relations for E and F.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Higher-order E relations follow from the lower ones.
    Dependency {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Drinfeld-Jimbo relations hold for the images in the order-N algebra.
    DjImage {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long)]
        bound: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct NuArg {
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    nu: String,
}

#[derive(Debug, Subcommand)]
pub enum Oscillator {
    /// Relations forced on x, y, z by covariance of AB - q^2 BA = 1.
    Constraints,
    /// Comodule and coassociativity axioms for the standard coaction.
    Comodule,
    /// Substitution into the standard sl_q(2) presentation.
    Sl2 {
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Whether a second group-like in the coaction is forced to equal z.
    Probe {
        #[arg(long)]
        bound: Option<usize>,
    },
}

/// Anything that stops a command before it produces a report.
#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Config(ConfigError),
    Parse { file: Option<String>, error: ParseError },
    Input(String),
    Io(String),
    /// Failure inside a computation (e.g. completion budget).
    Compute(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Compute(_) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Usage(s) | RunError::Input(s) | RunError::Io(s) | RunError::Compute(s) => f.write_str(s),
            RunError::Config(e) => write!(f, "config: {e}"),
            RunError::Parse { file: Some(p), error } => write!(f, "{p}:{error}"),
            RunError::Parse { file: None, error } => write!(f, "{error}"),
        }
    }
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::Algebra(AlgebraError::BudgetExceeded { .. }) => RunError::Compute(e.to_string()),
            other => RunError::Input(other.to_string()),
        }
    }
}

impl From<AlgebraError> for RunError {
    fn from(e: AlgebraError) -> Self {
        Error::from(e).into()
    }
}

/// What a finished invocation printed and returned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs one command line. `root_order_env` is the value of
/// `QGKIT_ROOT_ORDER`, passed in explicitly.
pub fn run<I, S>(args: I, root_order_env: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match execute(&cli, root_order_env) {
        Ok((report, format)) => Outcome { stdout: report.render(format), stderr: String::new(), code: report.exit_code() },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("qgkit: {e}\n"), code: e.exit_code() },
    }
}

fn load_config(cli: &Cli, root_order_env: Option<&str>) -> Result<Config, RunError> {
    let mut config = Config::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
        config.apply_file(&text).map_err(|e| ConfigError(format!("{}: {}", path.display(), e.0)))?;
    }
    config.apply_env(root_order_env)?;
    if let Some(f) = cli.format {
        config.format = match f {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        };
    }
    Ok(config)
}

/// Runs the parsed command and returns its report with the output format.
pub fn execute(cli: &Cli, root_order_env: Option<&str>) -> Result<(RunReport, Format), RunError> {
    let config = load_config(cli, root_order_env)?;
    let m = config.root_order;
    let bound = |b: &Option<usize>| -> Result<usize, RunError> {
        let b = b.unwrap_or(config.degree_bound);
        if b < 2 {
            return Err(RunError::Input(format!("degree bound {b} below 2")));
        }
        Ok(b)
    };
    let report = match &cli.command {
        Command::Omega { n, nu } => omega(*n, exponent(nu)?, m)?,
        Command::ScanNu { n, grid } => {
            let grid = match grid {
                Some(g) => parse_grid(g)?,
                None => config.nu_grid.clone(),
            };
            scan_nu(*n, &grid, m)?
        }
        Command::Relations { n, family, nu } => relations(*n, *family, nu_or_known(nu, Some(*n))?, m)?,
        Command::Check(c) => match c {
            Check::Ybe(NuArg { nu }) => ybe(exponent(nu)?, m)?,
            Check::Hecke(NuArg { nu }) => hecke(exponent(nu)?, m)?,
            Check::Bialgebra { nu, n, bound: b } => {
                let nu = match (nu, n) {
                    (None, None) => Exponent::integer(1),
                    _ => nu_or_known(nu, *n)?,
                };
                let b = bound(b)?;
                let mut r = RunReport::new("check bialgebra").input("nu", nu).input("bound", b);
                if let Some(n) = n {
                    r = r.input("n", n);
                }
                r.checks = check_preset_bialgebra(nu, *n, FROZEN_EF, b, m)?;
                r
            }
            Check::Dependency { n, bound: b } => {
                let b = bound(b)?;
                let mut r = RunReport::new("check dependency").input("n", n).input("bound", b);
                r.checks = check_dependency(*n, b, m)?;
                r
            }
            Check::DjImage { n, nu, bound: b } => {
                let b = bound(b)?;
                let nu = nu_or_known(nu, Some(*n))?;
                let mut r = RunReport::new("check dj-image").input("n", n).input("nu", nu).input("bound", b);
                r.checks = verify_dj_image_at(*n, nu, b, m)?;
                r
            }
        },
        Command::Serre { cartan, q_dj } => serre(cartan, exponent(q_dj)?, m)?,
        Command::Oscillator(o) => match o {
            Oscillator::Constraints => oscillator_constraints(m)?,
            Oscillator::Comodule => oscillator_comodule(m)?,
            Oscillator::Sl2 { bound: b } => {
                let b = bound(b)?;
                let mut r = RunReport::new("oscillator sl2").input("bound", b);
                r.checks = verify_sl2_substitution(b, m)?;
                r
            }
            Oscillator::Probe { bound: b } => {
                let b = bound(b)?;
                let mut r = RunReport::new("oscillator probe").input("bound", b);
                r.checks = uniqueness_probe(b, m)?;
                r
            }
        },
        Command::Reduce { relations, generators, bound: b, exprs } => {
            reduce(relations, generators.as_deref(), bound(b)?, exprs, m)?
        }
    };
    Ok((report.input("root_order", m.get()), config.format))
}

fn exponent(s: &str) -> Result<Exponent, RunError> {
    Ok(parse_exponent(s)?)
}

fn nu_or_known(nu: &Option<String>, n: Option<usize>) -> Result<Exponent, RunError> {
    match (nu, n) {
        (Some(s), _) => exponent(s),
        (None, Some(n)) => known_nu(n).ok_or_else(|| RunError::Input(format!("no known normalization for N = {n}; pass --nu"))),
        (None, None) => Err(RunError::Input("--nu is required".into())),
    }
}

fn check_order(n: usize) -> Result<(), RunError> {
    if !(2..=16).contains(&n) {
        return Err(RunError::Input(format!("N must lie in 2..=16, got {n}")));
    }
    Ok(())
}

fn omega(n: usize, nu: Exponent, m: RootOrder) -> Result<RunReport, RunError> {
    check_order(n)?;
    let basis = solve_omega(n, nu, m)?;
    let vectors: Vec<Value> = basis
        .iter()
        .map(|w| Value::Object(w.labeled().into_iter().map(|(k, v)| (k, json!(v.to_string()))).collect()))
        .collect();
    let mut r = RunReport::new("omega").input("n", n).input("nu", nu);
    r.result = json!({ "dimension": basis.len(), "basis": vectors });
    Ok(r)
}

fn scan_nu(n: usize, grid: &[Exponent], m: RootOrder) -> Result<RunReport, RunError> {
    check_order(n)?;
    let dims = scan_normalizations(n, grid, m)?;
    let rows: Vec<Value> = dims.iter().map(|(nu, d)| json!({ "nu": nu.to_string(), "dimension": d })).collect();
    let grid_text: Vec<String> = grid.iter().map(Exponent::to_string).collect();
    let mut r = RunReport::new("scan-nu").input("n", n).input("grid", grid_text.join(","));
    r.result = json!({ "scan": rows });
    Ok(r)
}

fn relations(n: usize, family: Family, nu: Exponent, m: RootOrder) -> Result<RunReport, RunError> {
    check_order(n)?;
    let (names, label) = match family {
        Family::E => (["d", "e"], "E"),
        Family::F => (["f", "g"], "F"),
    };
    let table = GeneratorTable::new(&names)?;
    let basis = solve_omega(n, nu, m)?;
    let classes: Vec<Value> = omega_relations_by_class(&basis, [0, 1])
        .into_iter()
        .map(|(class, ps)| {
            let rels: Vec<String> = ps.iter().map(|p| p.display(&table).to_string()).collect();
            json!({ "first_letter_count": class, "relations": rels })
        })
        .collect();
    let mut r = RunReport::new("relations").input("n", n).input("nu", nu).input("family", label);
    r.result = json!({ "letters": names, "dimension": basis.len(), "classes": classes });
    Ok(r)
}

fn residual_report(name: &str, residual: &TensorOperator) -> qgkit_core::Report {
    let mut rep = qgkit_core::Report::new(name);
    let nonzero = residual.matrix().rows() * residual.matrix().cols()
        - (0..residual.matrix().rows())
            .flat_map(|i| residual.matrix().row(i).iter())
            .filter(|s| s.is_zero())
            .count();
    rep.check(name, residual.is_zero(), || format!("{nonzero} nonzero entries"));
    rep
}

fn ybe(nu: Exponent, m: RootOrder) -> Result<RunReport, RunError> {
    let r = r_matrix(nu, m)?;
    let mut out = RunReport::new("check ybe").input("nu", nu);
    out.checks = residual_report("yang-baxter", &yang_baxter_residual(&r.op)?);
    Ok(out)
}

fn hecke(nu: Exponent, m: RootOrder) -> Result<RunReport, RunError> {
    let r = r_matrix(nu, m)?;
    let mut out = RunReport::new("check hecke").input("nu", nu);
    out.checks = residual_report("hecke", &hecke_residual(&braid(&r), nu, m)?);
    Ok(out)
}

fn parse_cartan(s: &str) -> Result<CartanMatrix, RunError> {
    let bad = || RunError::Input(format!("bad Cartan matrix `{s}` (expected \"a11,a12;a21,a22\")"));
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|row| row.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
        return Err(bad());
    }
    Ok(CartanMatrix::from_entries([[rows[0][0], rows[0][1]], [rows[1][0], rows[1][1]]])?)
}

fn serre(cartan: &str, q_dj: Exponent, m: RootOrder) -> Result<RunReport, RunError> {
    let a = parse_cartan(cartan)?;
    let table = GeneratorTable::new(&["X1", "X2"])?;
    let rels: Vec<Value> = serre_relations(&a, [0, 1], q_dj, m)?
        .into_iter()
        .map(|(i, j, p)| json!({ "i": i, "j": j, "relation": p.display(&table).to_string() }))
        .collect();
    let mut r = RunReport::new("serre").input("cartan", a).input("q_dj", q_dj);
    r.result = json!({ "symmetrizer": [a.symmetrizer(1), a.symmetrizer(2)], "relations": rels });
    Ok(r)
}

fn oscillator_constraints(m: RootOrder) -> Result<RunReport, RunError> {
    let osc = OscillatorPresentation::new(m)?;
    let c = CoactionMap::standard()?;
    let cons = covariance_constraints(&osc.relation, &c, m)?;
    let mut r = RunReport::new("oscillator constraints");
    let list: Vec<String> = cons.iter().map(|p| p.display(&c.h_table).to_string()).collect();
    r.result = json!({ "relation": osc.relation.display(&osc.table).to_string(), "constraints": list });
    Ok(r)
}

fn oscillator_comodule(m: RootOrder) -> Result<RunReport, RunError> {
    let (coaction, _, delta) = derive_bialgebra(m)?;
    let h = &coaction.h_table;
    let mut r = RunReport::new("oscillator comodule");
    r.checks = check_comodule(&coaction, &delta, &standard_counit(h), m)?;
    r.checks.absorb("", check_coassociativity(h, &delta)?);
    let mut coproduct = Map::new();
    for g in 0..h.len() as u16 {
        let terms: Vec<String> = delta
            .image(g)
            .unwrap_or(&[])
            .iter()
            .map(|(l, rt)| format!("({}) (x) ({})", l.display(h), rt.display(h)))
            .collect();
        coproduct.insert(h.name(g).to_string(), json!(terms.join(" + ")));
    }
    r.result = json!({ "coproduct": coproduct });
    Ok(r)
}

fn reduce(
    path: &PathBuf,
    generators: Option<&str>,
    bound: usize,
    exprs: &[String],
    m: RootOrder,
) -> Result<RunReport, RunError> {
    let text = std::fs::read_to_string(path).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
    let mut table = match generators {
        Some(list) => {
            let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            GeneratorTable::new(&names)?
        }
        None => GeneratorTable::default(),
    };
    let unknown = if generators.is_some() { Unknown::Reject } else { Unknown::Declare };
    let file = path.display().to_string();
    let rels = parse_relations(&text, m, &mut table, unknown, &file)
        .map_err(|error| RunError::Parse { file: Some(file.clone()), error })?;
    let mut parsed = Vec::new();
    for (k, e) in exprs.iter().enumerate() {
        let p = ExprParser::new(e, 1, 1, m, &mut table, unknown)
            .and_then(|p| p.parse_all())
            .map_err(|error| RunError::Parse { file: Some(format!("<expr {}>", k + 1)), error })?;
        parsed.push((e, p));
    }
    let sys = RewriteSystem::from_relations(table.clone(), &rels.polys())?.complete(bound)?;
    let mut r = RunReport::new("reduce")
        .input("relations", &file)
        .input("generators", table.names().join(","))
        .input("bound", bound);
    let mut forms = Vec::new();
    for (k, (src, p)) in parsed.iter().enumerate() {
        let name = format!("expr[{}]", k + 1);
        let nf = sys.normal_form(p);
        forms.push(json!({ "input": src, "normal_form": nf.display(&table).to_string() }));
        let m = sys.membership_of(p);
        match &m {
            Membership::Member => r.checks.pass(&name),
            _ => r.checks.push_membership(&name, &m, &table),
        }
    }
    let rules: Vec<String> = sys.rules().iter().map(|rule| rule.relation().display(&table).to_string()).collect();
    r.result = json!({ "rules": rules, "reduced": forms });
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("qgkit").chain(args.iter().copied()), None)
    }

    #[test]
    fn omega_n2() {
        let o = go(&["omega", "--n", "2", "--nu", "1"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["result"]["dimension"], 1);
        let w = &v["result"]["basis"][0];
        let m = RootOrder::DEFAULT;
        let a = crate::parse_scalar(w["12"].as_str().unwrap(), m).unwrap();
        let b = crate::parse_scalar(w["21"].as_str().unwrap(), m).unwrap();
        assert_eq!(a / b, -qgkit_core::Scalar::q(m));
    }

    #[test]
    fn empty_kernel_is_not_an_error() {
        let o = go(&["omega", "--n", "2", "--nu", "7"]);
        assert_eq!(o.code, 0);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["result"]["dimension"], 0);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(go(&["frobnicate"]).code, 2);
        assert_eq!(go(&["omega", "--n", "2"]).code, 2);
        assert_eq!(go(&["omega", "--n", "2", "--nu", "x"]).code, 2);
        assert_eq!(go(&["omega", "--n", "2", "--nu", "1/4"]).code, 2);
        assert_eq!(go(&["serre", "--cartan", "2,1;1,2"]).code, 2);
        assert_eq!(go(&["check", "dj-image", "--n", "5"]).code, 2);
        assert_eq!(go(&["--help"]).code, 0);
    }

    #[test]
    fn cartan_parsing() {
        let a = parse_cartan("2,-1;-3,2").unwrap();
        assert_eq!((a.symmetrizer(1), a.symmetrizer(2)), (3, 1));
        assert!(parse_cartan("2,-1,0;-3,2").is_err());
        assert!(parse_cartan("2,-1").is_err());
    }

    #[test]
    fn text_format() {
        let o = go(&["--format", "text", "check", "hecke", "--nu", "-1/3"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("pass"));
        assert!(o.stdout.ends_with("status: pass\n"));
    }

    #[test]
    fn env_root_order() {
        let o = run(["qgkit", "omega", "--n", "2", "--nu", "1/2"], Some("2"));
        assert_eq!(o.code, 0, "{}", o.stderr);
        let o = run(["qgkit", "omega", "--n", "2", "--nu", "1/2"], Some("3"));
        assert_eq!(o.code, 2);
        assert_eq!(run(["qgkit", "omega", "--n", "2", "--nu", "1"], Some("0")).code, 2);
    }
}
