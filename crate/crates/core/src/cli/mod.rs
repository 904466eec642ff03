//! The `orient` command line: builds catalog spaces, evaluates
//! expressions in them, dumps tables and presentations, and runs the
//! enumerative demos.

mod expr;
mod space;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::json::{element_strings, to_json};
use crate::algebra::{Element, GradedFreeAlgebra};
use crate::catalog::{
    blowup_twisted_cubic, blowup_veronese, count_secants, count_steiner, law_for, m05_change_of_basis,
    naive_obstruction, naive_steiner, pushforward_table, CatalogError,
};
use crate::fgl::{formal_inverse, invariant_differential, n_series, Theory, Truncated};
use crate::symbolic::{CoefficientPoly, Variable};

pub use expr::{EvalError, Expression};
pub use space::{build, sorted_names, Built, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Text,
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "orient", version, about = "Oriented cohomology rings of blowups, computed exactly")]
pub struct Cli {
    /// universal, chow, ktheory or ktheory+
    #[arg(long, global = true, default_value = "universal")]
    pub theory: String,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub emit: Emit,
    /// Drop everything above this degree (for `fgl`, the truncation degree).
    #[arg(long, global = true)]
    pub truncate: Option<i32>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Permit the expensive moduli spaces (n = 7 and up).
    #[arg(long, global = true)]
    pub allow_large: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Formal group law tables.
    Fgl {
        #[command(subcommand)]
        op: FglOp,
    },
    /// Build a catalog space and print its algebra.
    Catalog {
        #[command(subcommand)]
        space: CatalogSpace,
    },
    /// Evaluate an expression such as `fadd(nser(4,alpha), chi(nser(2,e)))^2*alpha`.
    Eval { space: String, expr: String },
    /// Multiplication table of the basis, or of the given named classes.
    Table {
        space: String,
        #[arg(long, value_delimiter = ',')]
        classes: Vec<String>,
        /// For `blv-p5`: the products `e_{a,b} * e_{c,d}` kept on the
        /// exceptional divisor, in the symbols `e{p}{q}` with `q <= 2`.
        #[arg(long)]
        pushforward: bool,
    },
    /// Generators and relations.
    Presentation { space: String },
    /// Recompute a classical number and compare with its known value.
    Demo { name: DemoName },
}

#[derive(Debug, Subcommand)]
pub enum FglOp {
    /// `F(u, v)`.
    Law,
    /// `[n](u)`.
    Nseries {
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// `chi(u)`.
    Inverse,
    /// The invariant differential coefficients `omega_0 ..`.
    Omega,
}

#[derive(Debug, Subcommand)]
pub enum CatalogSpace {
    Point,
    Pn { n: u32 },
    P1xp1,
    Dp { k: usize },
    BlcP3,
    BlvP5,
    M0n { n: usize },
}

impl CatalogSpace {
    fn space(&self) -> Space {
        match *self {
            CatalogSpace::Point => Space::Point,
            CatalogSpace::Pn { n } => Space::Projective(n),
            CatalogSpace::P1xp1 => Space::P1xP1,
            CatalogSpace::Dp { k } => Space::DelPezzo(k),
            CatalogSpace::BlcP3 => Space::TwistedCubic,
            CatalogSpace::BlvP5 => Space::Veronese,
            CatalogSpace::M0n { n } => Space::M0n(n),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    Secants,
    Steiner,
    M05Iso,
    NaiveFail,
}

/// Failures, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Range(m) => CliError::Usage(m),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::UnknownName(_) => CliError::Usage(e.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

/// Output text and verdict of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub pass: bool,
}

fn theory_of(name: &str) -> Result<Theory, CliError> {
    match name {
        "universal" | "chow" | "ktheory" | "ktheory+" => Ok(Theory::parse(name)),
        other => Err(CliError::Usage(format!("unknown theory '{other}'"))),
    }
}

fn space_of(s: &str) -> Result<Space, CliError> {
    s.parse().map_err(CliError::Usage)
}

fn truncated(alg: &GradedFreeAlgebra, e: &Element, d: Option<i32>) -> Element {
    match d {
        Some(d) => alg.truncate(e, d),
        None => e.clone(),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json renders") + "\n"
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let theory = theory_of(&cli.theory)?;
    let ok = |output: String| Ok(Outcome { output, pass: true });
    match &cli.command {
        Command::Fgl { op } => ok(fgl_output(op, &theory, cli)?),
        Command::Catalog { space } => {
            let sp = space.space();
            let built = build(sp, &theory, cli.allow_large)?;
            ok(algebra_output(sp, &theory, &built, cli.emit))
        }
        Command::Eval { space, expr } => {
            let sp = space_of(space)?;
            let e = Expression::parse(expr).map_err(|e| CliError::Usage(e.to_string()))?;
            let built = build(sp, &theory, cli.allow_large)?;
            let alg = &built.algebra;
            let v = truncated(alg, &e.eval(alg)?, cli.truncate);
            ok(match cli.emit {
                Emit::Json => pretty(&json!({
                    "space": sp.to_string(),
                    "theory": theory.name(),
                    "expression": e.to_string(),
                    "basis": alg.basis().iter().map(|b| b.label.clone()).collect::<Vec<_>>(),
                    "element": element_strings(&v),
                    "text": alg.format(&v),
                })),
                _ => alg.format(&v) + "\n",
            })
        }
        Command::Table { space, pushforward: true, .. } => {
            if space_of(space)? != Space::Veronese {
                return Err(CliError::Usage("--pushforward needs blv-p5".into()));
            }
            ok(pushforward_output(&blowup_veronese(&theory)?, cli.emit))
        }
        Command::Table { space, classes, .. } => {
            let sp = space_of(space)?;
            let built = build(sp, &theory, cli.allow_large)?;
            ok(table_output(&built.algebra, classes, cli)?)
        }
        Command::Presentation { space } => {
            let sp = space_of(space)?;
            let built = build(sp, &theory, cli.allow_large)?;
            ok(match cli.emit {
                Emit::Json => pretty(&built.presentation.to_json()),
                _ => format!("{}\n", built.presentation),
            })
        }
        Command::Demo { name } => demo(*name, cli.emit),
    }
}

fn fgl_output(op: &FglOp, theory: &Theory, cli: &Cli) -> Result<String, CliError> {
    let cap = cli.truncate.unwrap_or(4);
    if !(1..=12).contains(&cap) {
        return Err(CliError::Usage(format!("truncation degree {cap} outside 1..=12")));
    }
    let cap = cap as u32;
    let law = law_for(theory, cap)?;
    let u = Variable::new("u", 1);
    let v = Variable::new("v", 1);
    let ring = Truncated::new(vec![u.clone(), v.clone()], cap);
    let uu = CoefficientPoly::var(u);
    let (label, values): (String, Vec<String>) = match op {
        FglOp::Law => ("F(u, v)".into(), vec![ring.reduce(&crate::fgl::f_add(&ring, &law, &uu, &CoefficientPoly::var(v))).to_string()]),
        FglOp::Nseries { n } => (
            format!("[{n}](u)"),
            vec![n_series(&ring, &law, *n, &uu).map_err(|e| CliError::Usage(e.to_string()))?.to_string()],
        ),
        FglOp::Inverse => ("chi(u)".into(), vec![formal_inverse(&ring, &law, &uu).to_string()]),
        FglOp::Omega => (
            "omega".into(),
            invariant_differential(&law, cap)
                .map_err(|e| CliError::Compute(e.to_string()))?
                .coefficients()
                .iter()
                .map(|c| c.to_string())
                .collect(),
        ),
    };
    Ok(match cli.emit {
        Emit::Json => pretty(&json!({
            "theory": theory.name(),
            "truncation": cap,
            "quantity": label,
            "values": values,
        })),
        _ if values.len() == 1 => format!("{label} = {}\n", values[0]),
        _ => values
            .iter()
            .enumerate()
            .map(|(r, c)| format!("omega_{r} = {c}\n"))
            .collect(),
    })
}

fn algebra_output(sp: Space, theory: &Theory, built: &Built, emit: Emit) -> String {
    let alg = &built.algebra;
    match emit {
        Emit::Json => pretty(&json!({
            "space": sp.to_string(),
            "theory": theory.name(),
            "algebra": to_json(alg),
            "presentation": built.presentation.to_json(),
        })),
        Emit::Table => render_grid(alg, &basis_rows(alg)),
        Emit::Text => {
            let mut s = String::new();
            let ranks: Vec<String> = alg.rank_vector().iter().map(|r| r.to_string()).collect();
            writeln!(s, "space: {sp}").unwrap();
            writeln!(s, "theory: {}", theory.name()).unwrap();
            writeln!(s, "dimension: {}", alg.dimension()).unwrap();
            writeln!(s, "rank: {} ({})", alg.rank(), ranks.join(", ")).unwrap();
            writeln!(s, "basis:").unwrap();
            for b in alg.basis() {
                writeln!(s, "  [{}] {}", b.degree, b.label).unwrap();
            }
            writeln!(s, "classes:").unwrap();
            for n in sorted_names(alg) {
                writeln!(s, "  {n} = {}", alg.format(&alg.class(&n))).unwrap();
            }
            writeln!(s, "presentation:\n{}", built.presentation).unwrap();
            s
        }
    }
}

// (label, element) rows in (degree, label) order
fn basis_rows(alg: &GradedFreeAlgebra) -> Vec<(String, Element)> {
    let mut idx: Vec<usize> = (0..alg.rank()).collect();
    idx.sort_by(|&a, &b| {
        let (x, y) = (&alg.basis()[a], &alg.basis()[b]);
        (x.degree, &x.label).cmp(&(y.degree, &y.label))
    });
    idx.into_iter()
        .map(|i| (alg.basis()[i].label.clone(), alg.basis_element(i)))
        .collect()
}

fn table_output(alg: &GradedFreeAlgebra, classes: &[String], cli: &Cli) -> Result<String, CliError> {
    let rows = if classes.is_empty() {
        basis_rows(alg)
    } else {
        let mut rows = classes
            .iter()
            .map(|c| {
                let e = alg
                    .named(c)
                    .ok_or_else(|| CliError::Usage(format!("unknown class '{c}'")))?;
                Ok((alg.degree_of(e).unwrap_or(0), c.clone(), e.clone()))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        rows.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        rows.into_iter().map(|(_, n, e)| (n, e)).collect()
    };
    let product = |a: &Element, b: &Element| truncated(alg, &alg.mul(a, b), cli.truncate);
    Ok(match cli.emit {
        Emit::Json => pretty(&json!({
            "rows": rows.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
            "entries": rows
                .iter()
                .map(|(_, a)| rows.iter().map(|(_, b)| {
                    let p = product(a, b);
                    json!({"text": alg.format(&p), "element": element_strings(&p)})
                }).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })),
        Emit::Table => render_grid(alg, &rows),
        Emit::Text => {
            let mut s = String::new();
            for (i, (na, a)) in rows.iter().enumerate() {
                for (nb, b) in &rows[i..] {
                    writeln!(s, "{na} * {nb} = {}", alg.format(&product(a, b))).unwrap();
                }
            }
            s
        }
    })
}

fn pushforward_output(v: &crate::catalog::Veronese, emit: Emit) -> String {
    let labels: Vec<String> = (0..3).flat_map(|a| (0..3).map(move |b| format!("e{a}{b}"))).collect();
    let table = pushforward_table(v);
    match emit {
        Emit::Json => pretty(&json!({
            "rows": labels,
            "entries": table.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })),
        Emit::Text => {
            let mut s = String::new();
            for (i, row) in table.iter().enumerate() {
                for (j, c) in row.iter().enumerate().skip(i) {
                    writeln!(s, "{} * {} = {c}", labels[i], labels[j]).unwrap();
                }
            }
            s
        }
        Emit::Table => {
            let cells: Vec<Vec<String>> = table.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
            grid(&labels, &cells)
        }
    }
}

fn render_grid(alg: &GradedFreeAlgebra, rows: &[(String, Element)]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(_, a)| rows.iter().map(|(_, b)| alg.format(&alg.mul(a, b))).collect())
        .collect();
    let labels: Vec<String> = rows.iter().map(|r| r.0.clone()).collect();
    grid(&labels, &cells)
}

fn grid(labels: &[String], cells: &[Vec<String>]) -> String {
    let head = labels.iter().map(|l| l.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..labels.len())
        .map(|j| cells.iter().map(|r| r[j].len()).chain([labels[j].len()]).max().unwrap_or(0))
        .collect();
    let mut s = format!("{:head$}", "");
    for (j, n) in labels.iter().enumerate() {
        write!(s, " | {:w$}", n, w = widths[j]).unwrap();
    }
    s.push('\n');
    for (i, n) in labels.iter().enumerate() {
        write!(s, "{n:head$}").unwrap();
        for (j, c) in cells[i].iter().enumerate() {
            write!(s, " | {:w$}", c, w = widths[j]).unwrap();
        }
        s.push('\n');
    }
    s
}

fn demo(name: DemoName, emit: Emit) -> Result<Outcome, CliError> {
    let universal = Theory::Universal;
    let (label, pass, fields) = match name {
        DemoName::Secants => {
            let n = count_secants(&blowup_twisted_cubic(&universal)?)?;
            let pass = n == CoefficientPoly::from(4);
            ("secants", pass, json!({"count": n.to_string(), "expected": "4"}))
        }
        DemoName::Steiner => {
            let n = count_steiner(&blowup_veronese(&universal)?)?;
            let naive = naive_steiner(&universal)?;
            let pass = n == CoefficientPoly::from(3264) && naive == CoefficientPoly::from(7776);
            (
                "steiner",
                pass,
                json!({"count": n.to_string(), "expected": "3264", "naive": naive.to_string(), "naive_expected": "7776"}),
            )
        }
        DemoName::M05Iso => match m05_change_of_basis(&universal) {
            Ok(iso) => ("m05-iso", true, json!({"rank": iso.m05.algebra.rank()})),
            Err(CatalogError::Mismatch(m)) => ("m05-iso", false, json!({"failure": m})),
            Err(e) => return Err(e.into()),
        },
        DemoName::NaiveFail => {
            let o = naive_obstruction()?;
            let alg = &o.ring.algebra;
            let pass = !o.qa_x34.is_zero() && o.qb_x34.is_zero();
            (
                "naive-fail",
                pass,
                json!({"qa_x34": alg.format(&o.qa_x34), "qb_x34": alg.format(&o.qb_x34)}),
            )
        }
    };
    let verdict = if pass { "pass" } else { "FAIL" };
    let output = match emit {
        Emit::Json => pretty(&json!({"demo": label, "pass": pass, "values": fields})),
        _ => {
            let parts: Vec<String> = fields
                .as_object()
                .expect("object")
                .iter()
                .map(|(k, v)| format!("{k}={}", v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())))
                .collect();
            format!("{label}: {verdict} ({})\n", parts.join(", "))
        }
    };
    Ok(Outcome { output, pass })
}

fn configure_threads() {
    if let Some(n) = std::env::var("ORIENT_NUM_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a pool that already exists keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `args`, runs the command and returns the exit code: 0 pass,
/// 1 mismatch or failed computation, 2 usage error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    configure_threads();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &outcome.output) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            } else {
                print!("{}", outcome.output);
            }
            if outcome.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
