use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use frobstruct_core::algebra::{AlgebraError, StructMatrixAlgebra};
use frobstruct_core::coalgebra::{check_coalgebra_axioms, Coalgebra, CoalgebraError, IncCoalgebra};
use frobstruct_core::morita::{self, MoritaError};
use frobstruct_core::preorder::{
    enumerate_preorders_bounded, Preorder, PreorderError, DEFAULT_ENUMERATION_BOUND,
};
use frobstruct_core::{frobenius_decide, Decision};
use serde::Serialize;
use thiserror::Error;

use crate::json::{
    self, DecisionJson, FormatError, FrobeniusReportJson, OracleJson, PreorderJson, ReductionReportJson,
};
use crate::selftest::{self, SelftestConfig, WEDGE_LIMIT};

/// Environment variable that raises the enumeration bound.
pub const MAX_N_VAR: &str = "FROBSTRUCT_MAX_N";

#[derive(Debug, Parser)]
#[command(
    name = "frobstruct",
    version,
    about = "Frobenius structural matrix algebras and incidence coalgebras of finite preorders"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a preorder and print its class structure.
    Validate { input: String },
    /// Print the quotient poset as a preorder file.
    Quotient { input: String },
    /// Dimensions, basis and axiom check of the incidence coalgebra.
    Coalgebra {
        input: String,
        /// Element file (`[{"x","y","coef"}]`) to comultiply.
        #[arg(long)]
        element: Option<String>,
    },
    /// Coradical filtration by interval length and by iterated wedges.
    Filtration { input: String },
    /// Decide whether the structural matrix algebra is Frobenius.
    Frobenius {
        input: String,
        /// Also run the Gram, trace-radical and cosemisimplicity checks.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reduce to the basic coalgebra of a system of representatives.
    Reduce {
        input: String,
        /// One representative per class, comma separated.
        #[arg(long, value_delimiter = ',')]
        reps: Option<Vec<usize>>,
    },
    /// Enumerate every preorder on `n` labelled elements.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Check every invariant on all preorders up to size `n`.
    Selftest {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("invalid {name}={value:?}: expected a positive integer")]
    BadEnv { name: &'static str, value: String },
    #[error(transparent)]
    Preorder(#[from] PreorderError),
    #[error(transparent)]
    Coalgebra(#[from] CoalgebraError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Morita(#[from] MoritaError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Format(_) | CliError::BadEnv { .. } => 2,
            CliError::Preorder(PreorderError::BoundExceeded { .. }) => 2,
            _ => 1,
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(Outcome { text, code }) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn read_source(source: &str) -> Result<String, CliError> {
    let trimmed = source.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(source.to_string());
    }
    std::fs::read_to_string(Path::new(source)).map_err(|e| CliError::Io {
        path: source.to_string(),
        source: e,
    })
}

fn load_preorder(source: &str) -> Result<Preorder, CliError> {
    let parsed = PreorderJson::parse(&read_source(source)?)?;
    Ok(parsed.build()?)
}

fn enumeration_bound() -> Result<usize, CliError> {
    match std::env::var(MAX_N_VAR) {
        Ok(value) => match value.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::BadEnv {
                name: MAX_N_VAR,
                value,
            }),
        },
        Err(_) => Ok(DEFAULT_ENUMERATION_BOUND),
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("report types serialize");
    s.push('\n');
    s
}

fn fmt_set(items: &[usize]) -> String {
    let inner: Vec<String> = items.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let text = cli.format == Format::Text;
    match &cli.command {
        Command::Validate { input } => validate(&load_preorder(input)?, text),
        Command::Quotient { input } => quotient(&load_preorder(input)?, text),
        Command::Coalgebra { input, element } => coalgebra(&load_preorder(input)?, element.as_deref(), text),
        Command::Filtration { input } => filtration(&load_preorder(input)?, text, err),
        Command::Frobenius {
            input,
            oracle,
            trials,
            seed,
        } => frobenius(&load_preorder(input)?, *oracle, *trials as usize, *seed, text),
        Command::Reduce { input, reps } => reduce(&load_preorder(input)?, reps.as_deref(), text),
        Command::Enumerate { n } => enumerate(*n, text),
        Command::Selftest { n, trials, seed } => selftest(*n, *trials as usize, *seed, text, err),
    }
}

#[derive(Serialize)]
struct ValidateJson {
    n: usize,
    comparable_pairs: usize,
    antisymmetric: bool,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    quotient_pairs: Vec<[usize; 2]>,
}

fn validate(p: &Preorder, text: bool) -> Result<Outcome, CliError> {
    let q = p.quotient();
    let report = ValidateJson {
        n: p.n(),
        comparable_pairs: p.comparable_count(),
        antisymmetric: p.is_antisymmetric(),
        classes: q.classes.classes.clone(),
        class_of: q.classes.class_of.clone(),
        quotient_pairs: q.as_preorder().comparable_pairs().map(|(a, b)| [a, b]).collect(),
    };
    if !text {
        return Ok(Outcome::ok(to_json(&report)));
    }
    let mut s = String::new();
    let kind = if report.antisymmetric {
        "partial order"
    } else {
        "preorder"
    };
    writeln!(
        s,
        "valid {kind} on {} elements, {} comparable pairs",
        report.n, report.comparable_pairs
    )
    .unwrap();
    writeln!(s, "{} classes:", report.classes.len()).unwrap();
    for (i, class) in report.classes.iter().enumerate() {
        writeln!(s, "  [{i}] = {}", fmt_set(class)).unwrap();
    }
    let strict: Vec<String> = report
        .quotient_pairs
        .iter()
        .filter(|[a, b]| a != b)
        .map(|[a, b]| format!("[{a}] < [{b}]"))
        .collect();
    if strict.is_empty() {
        writeln!(s, "quotient order: discrete").unwrap();
    } else {
        writeln!(s, "quotient order: {}", strict.join(", ")).unwrap();
    }
    Ok(Outcome::ok(s))
}

#[derive(Serialize)]
struct QuotientJson {
    #[serde(flatten)]
    preorder: PreorderJson,
    classes: Vec<Vec<usize>>,
}

fn quotient(p: &Preorder, text: bool) -> Result<Outcome, CliError> {
    let q = p.quotient();
    let report = QuotientJson {
        preorder: PreorderJson::from_preorder(q.as_preorder()),
        classes: q.classes.classes.clone(),
    };
    if !text {
        return Ok(Outcome::ok(to_json(&report)));
    }
    let mut s = String::new();
    writeln!(s, "quotient poset on {} classes", q.m()).unwrap();
    for (i, class) in report.classes.iter().enumerate() {
        writeln!(s, "  [{i}] = {}", fmt_set(class)).unwrap();
    }
    for [a, b] in report.preorder.pairs.iter().filter(|[a, b]| a != b) {
        writeln!(s, "  [{a}] < [{b}]").unwrap();
    }
    Ok(Outcome::ok(s))
}

#[derive(Serialize)]
struct ElementReportJson {
    element: Vec<json::TermJson>,
    counit: String,
    coproduct: Vec<json::TensorTermJson>,
    generated_dim: usize,
}

#[derive(Serialize)]
struct CoalgebraJson {
    dim: usize,
    basis: Vec<[usize; 2]>,
    axioms_ok: bool,
    coradical_length: usize,
    cosemisimple: bool,
    envelope_dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    element: Option<ElementReportJson>,
}

fn coalgebra(p: &Preorder, element: Option<&str>, text: bool) -> Result<Outcome, CliError> {
    let c = IncCoalgebra::new(p);
    let element = match element {
        None => None,
        Some(source) => {
            let terms: Vec<json::TermJson> =
                serde_json::from_str(&read_source(source)?).map_err(FormatError::from)?;
            let e = json::elem_from_json(&c, &terms)?;
            Some(ElementReportJson {
                element: json::elem_to_json(&c, &e),
                counit: json::format_rational(&c.counit(&e)),
                coproduct: json::delta_to_json(&c, &e),
                generated_dim: c.generated_subcomodule(&e).dim(),
            })
        }
    };
    let envelope_dims = (0..p.n())
        .map(|x| c.injective_envelope(x).map(|e| e.dim()))
        .collect::<Result<Vec<_>, _>>()?;
    let report = CoalgebraJson {
        dim: c.dim(),
        basis: c.basis().iter().map(|&(x, y)| [x, y]).collect(),
        axioms_ok: check_coalgebra_axioms(&c),
        coradical_length: c.coradical_length(),
        cosemisimple: c.is_cosemisimple(),
        envelope_dims,
        element,
    };
    let code = if report.axioms_ok { 0 } else { 1 };
    if !text {
        return Ok(Outcome {
            text: to_json(&report),
            code,
        });
    }
    let mut s = String::new();
    writeln!(s, "incidence coalgebra of dimension {}", report.dim).unwrap();
    let basis: Vec<String> = report.basis.iter().map(|[x, y]| format!("e{x}{y}")).collect();
    writeln!(s, "basis: {}", basis.join(" ")).unwrap();
    let verdict = if report.axioms_ok { "hold" } else { "FAIL" };
    writeln!(s, "coassociativity and counit laws: {verdict}").unwrap();
    writeln!(s, "coradical length: {}", report.coradical_length).unwrap();
    writeln!(
        s,
        "cosemisimple: {}",
        if report.cosemisimple { "yes" } else { "no" }
    )
    .unwrap();
    writeln!(s, "injective envelope dimensions: {:?}", report.envelope_dims).unwrap();
    if let Some(e) = &report.element {
        let terms: Vec<String> = e
            .element
            .iter()
            .map(|t| format!("({}) e{}{}", t.coef, t.x, t.y))
            .collect();
        writeln!(
            s,
            "element: {}",
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join(" + ")
            }
        )
        .unwrap();
        writeln!(s, "counit: {}", e.counit).unwrap();
        let delta: Vec<String> = e
            .coproduct
            .iter()
            .map(|t| {
                format!(
                    "({}) e{}{} (x) e{}{}",
                    t.coef, t.left[0], t.left[1], t.right[0], t.right[1]
                )
            })
            .collect();
        writeln!(
            s,
            "coproduct: {}",
            if delta.is_empty() {
                "0".into()
            } else {
                delta.join(" + ")
            }
        )
        .unwrap();
        writeln!(s, "generated subcomodule dimension: {}", e.generated_dim).unwrap();
    }
    Ok(Outcome { text: s, code })
}

#[derive(Serialize)]
struct FiltrationJson {
    length_dims: Vec<usize>,
    wedge_dims: Option<Vec<usize>>,
    equal: Option<bool>,
}

fn filtration(p: &Preorder, text: bool, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let c = IncCoalgebra::new(p);
    let by_length = c.coradical_filtration();
    let by_wedge = if p.n() > WEDGE_LIMIT {
        let _ = writeln!(err, "warning: wedge filtration disabled above n = {WEDGE_LIMIT}");
        None
    } else {
        Some(c.coradical_filtration_by_wedge()?)
    };
    let report = FiltrationJson {
        length_dims: by_length.iter().map(|s| s.dim()).collect(),
        wedge_dims: by_wedge.as_ref().map(|w| w.iter().map(|s| s.dim()).collect()),
        equal: by_wedge.as_ref().map(|w| *w == by_length),
    };
    let code = if report.equal == Some(false) { 1 } else { 0 };
    if !text {
        return Ok(Outcome {
            text: to_json(&report),
            code,
        });
    }
    let mut s = String::new();
    writeln!(s, "dim C_n by interval length: {:?}", report.length_dims).unwrap();
    match (&report.wedge_dims, report.equal) {
        (Some(w), Some(eq)) => {
            writeln!(s, "dim C_n by iterated wedge:  {w:?}").unwrap();
            let verdict = if eq { "equal as subspaces" } else { "MISMATCH" };
            writeln!(s, "filtrations: {verdict}").unwrap();
        }
        _ => writeln!(s, "wedge filtration: skipped").unwrap(),
    }
    Ok(Outcome { text: s, code })
}

fn frobenius(
    p: &Preorder,
    run_oracle: bool,
    trials: usize,
    seed: u64,
    text: bool,
) -> Result<Outcome, CliError> {
    let decision = frobenius_decide(p);
    let a = StructMatrixAlgebra::new(p);
    let mut report = FrobeniusReportJson {
        decision: DecisionJson::new(&decision, a.dim()),
        oracle: None,
        radical_dim: None,
        semisimple: None,
        cosemisimple: None,
        agreement: None,
    };
    if run_oracle {
        let verdict = a.frobenius_oracle(trials, seed);
        let radical = a.radical_trace();
        let cosemisimple = IncCoalgebra::new(p).is_cosemisimple();
        let d = decision.is_frobenius();
        report.agreement = Some(verdict.is_frobenius() == d && radical.is_zero() == d && cosemisimple == d);
        report.oracle = Some(OracleJson::from(&verdict));
        report.radical_dim = Some(radical.dim());
        report.semisimple = Some(radical.is_zero());
        report.cosemisimple = Some(cosemisimple);
    }
    let code = if report.agreement == Some(false) { 1 } else { 0 };
    if !text {
        return Ok(Outcome {
            text: to_json(&report),
            code,
        });
    }
    let mut s = String::new();
    match &decision {
        Decision::Frobenius { blocks } => {
            let factors: Vec<String> = blocks.iter().map(|b| format!("M_{}(k)", b.len())).collect();
            let classes: Vec<String> = blocks.iter().map(|b| fmt_set(b)).collect();
            writeln!(
                s,
                "Frobenius: YES (every comparable pair is comparable both ways); M(B,k) = {} over classes {}",
                factors.join(" x "),
                classes.join(" ")
            )
            .unwrap();
        }
        Decision::NotFrobenius {
            counterexample: (x, y),
        } => {
            writeln!(s, "Frobenius: NO ({x} <= {y} but not {y} <= {x})").unwrap();
        }
    }
    writeln!(s, "dim M(B,k) = {}", report.decision.dim).unwrap();
    if let Some(o) = &report.oracle {
        writeln!(
            s,
            "Gram oracle: {} after {} trial(s), failure bound {}",
            o.verdict, o.trials, o.failure_bound
        )
        .unwrap();
        writeln!(
            s,
            "trace-form radical dimension: {}",
            report.radical_dim.unwrap_or(0)
        )
        .unwrap();
        writeln!(
            s,
            "incidence coalgebra cosemisimple: {}",
            report.cosemisimple.unwrap_or(false)
        )
        .unwrap();
        let agree = if report.agreement == Some(true) {
            "all checks agree"
        } else {
            "DISAGREEMENT"
        };
        writeln!(s, "agreement: {agree}").unwrap();
    }
    Ok(Outcome { text: s, code })
}

fn reduce(p: &Preorder, reps: Option<&[usize]>, text: bool) -> Result<Outcome, CliError> {
    let c = IncCoalgebra::new(p);
    let m = morita::basic_idempotent(&c, reps)?;
    let reduced = morita::reduce(&c, &m);
    let q = p.quotient();
    let cq = IncCoalgebra::new(q.as_preorder());
    let report = ReductionReportJson {
        representatives: m.representatives().to_vec(),
        reduced_dim: reduced.dim(),
        quotient_dim: cq.dim(),
        iso_ok: morita::iso_to_quotient_check(&reduced, &cq),
        algebra_iso_ok: morita::algebra_reduction_check_with(p, m.representatives()),
    };
    let code = if report.iso_ok && report.algebra_iso_ok {
        0
    } else {
        1
    };
    if !text {
        return Ok(Outcome {
            text: to_json(&report),
            code,
        });
    }
    let yes_no = |b: bool| if b { "yes" } else { "NO" };
    let mut s = String::new();
    writeln!(s, "representatives: {}", fmt_set(&report.representatives)).unwrap();
    writeln!(s, "reduced coalgebra dimension: {}", report.reduced_dim).unwrap();
    writeln!(
        s,
        "quotient incidence coalgebra dimension: {}",
        report.quotient_dim
    )
    .unwrap();
    writeln!(
        s,
        "isomorphic to the quotient incidence coalgebra: {}",
        yes_no(report.iso_ok)
    )
    .unwrap();
    writeln!(
        s,
        "corner algebra eAe matches the quotient: {}",
        yes_no(report.algebra_iso_ok)
    )
    .unwrap();
    Ok(Outcome { text: s, code })
}

#[derive(Serialize)]
struct EnumerateJson {
    n: usize,
    count: usize,
    preorders: Vec<PreorderJson>,
}

fn enumerate(n: usize, text: bool) -> Result<Outcome, CliError> {
    let all: Vec<Preorder> = enumerate_preorders_bounded(n, enumeration_bound()?)?.collect();
    if !text {
        return Ok(Outcome::ok(to_json(&EnumerateJson {
            n,
            count: all.len(),
            preorders: all.iter().map(PreorderJson::from_preorder).collect(),
        })));
    }
    let mut s = String::new();
    for p in &all {
        let strict: Vec<String> = p
            .comparable_pairs()
            .filter(|(x, y)| x != y)
            .map(|(x, y)| format!("{x}<={y}"))
            .collect();
        writeln!(s, "{{{}}}", strict.join(", ")).unwrap();
    }
    writeln!(s, "{} preorders", all.len()).unwrap();
    Ok(Outcome::ok(s))
}

fn selftest(
    n: usize,
    trials: usize,
    seed: u64,
    text: bool,
    err: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let bound = enumeration_bound()?;
    if n > bound {
        return Err(PreorderError::BoundExceeded { n, bound }.into());
    }
    let report = selftest::run(&SelftestConfig {
        max_n: n,
        bound,
        trials,
        seed,
    })?;
    for note in &report.notes {
        let _ = writeln!(err, "warning: {note}");
    }
    let code = if report.passed() { 0 } else { 1 };
    if !text {
        #[derive(Serialize)]
        struct Wrapped<'a> {
            passed: bool,
            #[serde(flatten)]
            report: &'a selftest::SelftestReport,
        }
        return Ok(Outcome {
            text: to_json(&Wrapped {
                passed: report.passed(),
                report: &report,
            }),
            code,
        });
    }
    let mut s = String::new();
    for (name, r) in &report.invariants {
        let status = if r.failed == 0 { "ok  " } else { "FAIL" };
        writeln!(s, "{status} {name} ({} checked, {} failed)", r.checked, r.failed).unwrap();
        for w in &r.witnesses {
            writeln!(s, "       {w}").unwrap();
        }
    }
    let verdict = if report.passed() {
        "all invariants hold"
    } else {
        "invariant violations found"
    };
    writeln!(
        s,
        "{} preorders with n <= {}: {verdict}",
        report.preorders, report.max_n
    )
    .unwrap();
    Ok(Outcome { text: s, code })
}
