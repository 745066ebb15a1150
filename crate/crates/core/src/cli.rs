//! The `nvk` command-line front end: argument handling, dispatch into the
//! checkers and constructions, and report emission.
//!
//! Exit status is 0 when every check in the report passes, 2 when a check
//! fails or a construction rejects its input, 64 on usage errors and 65 when
//! the input does not parse.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::affine::banded::Banded;
use crate::affine::completed::{
    affinize_r, apply_delta_affine, check_completed_cybe, check_completed_lie_bialgebra, coboundary_delta, cross_check_coboundary_square,
    cybe_residual,
};
use crate::affine::finite::{check_cybe, induced_lie_finite, lift_r};
use crate::affine::graded::{check_frobenius_function, graded_quasi_frobenius, quasi_frobenius_equivalence};
use crate::affine::laurent::{check_laurent_jacobi, laurent_bracket, LaurentVector, JACOBI_PROBES};
use crate::algebra::{check_l_dendriform, check_pre_novikov, Algebra, Class, PreNovikovAlgebra};
use crate::bialgebra::{check_novikov_bialgebra, check_novikov_coalgebra, coboundary_coproduct, Coalgebra, NovikovBialgebra};
use crate::doubling::{assemble_double, check_finite_square, check_manin_triple_novikov, check_matched_pair, equivalence_suite};
use crate::error::Error;
use crate::exec::{self, Mode};
use crate::format::{self, format_combination, AlgebraFile, LookupError, Named, Object};
use crate::linalg::{Basis, BilinearForm};
use crate::report::{Check, Report};
use crate::representation::check_representation;
use crate::scalar::{Field, Scalar};
use crate::search::{search, Filters, Limits, Sampling, SearchSpec};
use crate::yangbaxter::{
    check_nybe, check_o_operator, check_quasi_frobenius, identity_o_operator, o_operator_lift, o_operator_to_pre_novikov,
    pre_novikov_canonical_solution, OOperator, RTensor,
};

pub const SCHEMA: &str = "report_v1";
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;

#[derive(Debug, Parser)]
#[command(name = "nvk", version, about = "Exact checks for Novikov algebras, bialgebras and their affinizations")]
struct Cli {
    /// Write the machine-readable report (JSON, schema report_v1) to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Run every scan on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Leave the timing field out of the machine report.
    #[arg(long, global = true)]
    omit_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Input file in the .alg text format.
    file: PathBuf,
    /// Name of the algebra to use when the file holds several.
    #[arg(long)]
    algebra: Option<String>,
}

#[derive(Debug, Args)]
struct TensorChoice {
    /// Two-tensor over the algebra's basis, e.g. "b^c - c^b".
    #[arg(long = "r", value_name = "EXPR", conflicts_with = "tensor", allow_hyphen_values = true)]
    expr: Option<String>,
    /// Name of a tensor2 object in the file.
    #[arg(long, value_name = "NAME")]
    tensor: Option<String>,
}

#[derive(Debug, Args)]
struct Laurent {
    /// Quadratic right Novikov algebra B for the finite A⊗B construction.
    #[arg(long = "b", value_name = "NAME", requires = "form")]
    b: Option<String>,
    /// Invariant form on B.
    #[arg(long, value_name = "NAME", requires = "b")]
    form: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check algebra class axioms or the laws of another object.
    Check {
        #[command(flatten)]
        input: Input,
        /// novikov, right_novikov, lie, comm_assoc, zinbiel, pre_novikov,
        /// l_dendriform, coalgebra, representation or matched_pair; defaults
        /// to the algebra's claims, else novikov.
        #[arg(long = "class", value_name = "CLASS")]
        classes: Vec<String>,
        /// Object name for the non-algebra classes.
        #[arg(long)]
        name: Option<String>,
    },
    /// Check a Novikov bialgebra.
    Bialgebra {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        coalgebra: Option<String>,
        /// Also compare the Manin triple and matched pair verdicts.
        #[arg(long)]
        equivalence: bool,
    },
    /// The coproduct induced by a tensor r and its bialgebra conditions.
    Coboundary {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        tensor: TensorChoice,
    },
    /// Check the Novikov Yang-Baxter equation.
    Nybe {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        tensor: TensorChoice,
    },
    /// Check an O-operator and build the induced pre-Novikov algebra and NYBE solution.
    Ooperator {
        /// Input file in the .alg text format.
        file: PathBuf,
        /// Use the identity O-operator of this pre-Novikov algebra.
        #[arg(long, value_name = "NAME", conflicts_with_all = ["representation", "map"])]
        pre_novikov: Option<String>,
        /// Representation the operator is defined on.
        #[arg(long, value_name = "NAME", requires = "map")]
        representation: Option<String>,
        /// Images of the module basis, e.g. "v1 = e1; v2 = -e2".
        #[arg(long, value_name = "MAP", allow_hyphen_values = true)]
        map: Option<String>,
    },
    /// Build the double of a bialgebra and check its Manin triple.
    Double {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        coalgebra: Option<String>,
        #[command(flatten)]
        laurent: Laurent,
    },
    /// The Lie algebra A[t, t^-1] and, when present, its coproduct and r-matrix.
    Affinize {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        coalgebra: Option<String>,
        #[command(flatten)]
        tensor: TensorChoice,
        /// Laurent degrees at which coproducts are probed.
        #[arg(long, value_delimiter = ',', default_values_t = [0i64, 1, 2], allow_hyphen_values = true)]
        probes: Vec<i64>,
    },
    /// Check the classical Yang-Baxter equation for the affinized r-matrix.
    Cybe {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        tensor: TensorChoice,
        #[command(flatten)]
        laurent: Laurent,
    },
    /// Compare the quasi-Frobenius conditions on A and on A[t, t^-1].
    Quasifrobenius {
        #[command(flatten)]
        input: Input,
        /// Name of the bilinear form.
        #[arg(long)]
        form: Option<String>,
        /// Linear functional on A[t, t^-1], e.g. "e*@-2 = 1"; unlisted values are 0.
        #[arg(long, value_name = "VALUES", allow_hyphen_values = true)]
        functional: Option<String>,
        /// Degree radius for the functional check.
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
    /// Enumerate algebras over F_p passing a class check.
    Search {
        #[arg(long)]
        dim: usize,
        /// The prime p.
        #[arg(long)]
        field: u64,
        #[arg(long, default_value = "novikov")]
        class: String,
        /// Keep only algebras admitting a nondegenerate quasi-Frobenius form.
        #[arg(long)]
        quasi_frobenius: bool,
        /// Keep only algebras admitting a nonzero skewsymmetric NYBE solution.
        #[arg(long)]
        nybe: bool,
        /// Draw this many random candidates instead of enumerating.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest number of candidates for exhaustive mode.
        #[arg(long)]
        max_candidates: Option<u64>,
    },
    /// Run the built-in battery of known verdicts.
    Selftest,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(String),
    Module(Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Module(_) => EXIT_FAIL,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Parse(_) => "parse",
            Failure::Module(_) => "module",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Parse(m) => m.clone(),
            Failure::Module(e) => e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Module(e)
    }
}

impl From<LookupError> for Failure {
    fn from(e: LookupError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type Res<T> = std::result::Result<T, Failure>;

#[derive(Clone, Debug, Serialize)]
struct InputInfo {
    path: String,
    sha256: String,
}

#[derive(Default)]
struct Outcome {
    field: Option<Field>,
    input: Option<InputInfo>,
    reports: Vec<Report>,
    outputs: Map<String, Value>,
    text: Vec<String>,
    warnings: Vec<String>,
}

impl Outcome {
    fn output(&mut self, key: &str, value: Value, text: Vec<String>) {
        self.outputs.insert(key.to_string(), value);
        self.text.extend(text);
    }
}

#[derive(Serialize)]
struct Tool {
    name: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct ErrorInfo {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct RunReport<'a> {
    schema: &'static str,
    tool: Tool,
    command: Vec<String>,
    input: Option<InputInfo>,
    field: Option<String>,
    passed: bool,
    exit_code: i32,
    reports: &'a [Report],
    outputs: &'a Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<Timing>,
}

/// Parse `args` (program name first), run the command and return the exit status.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind as K;
            return match e.kind() {
                K::DisplayHelp | K::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    if cli.sequential {
        exec::set_mode(Mode::Sequential);
    }
    let start = Instant::now();
    let result = dispatch(&cli.command);
    let (outcome, failure) = match result {
        Ok(o) => (o, None),
        Err(f) => (Outcome::default(), Some(f)),
    };
    let passed = failure.is_none() && outcome.reports.iter().all(Report::passed);
    let code = match &failure {
        Some(f) => f.code(),
        None if passed => EXIT_PASS,
        None => EXIT_FAIL,
    };

    for w in &outcome.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let _ = writeln!(out, "nvk {}", echo(args).join(" "));
    if let Some(i) = &outcome.input {
        let _ = writeln!(out, "input {} sha256 {}", i.path, i.sha256);
    }
    if let Some(f) = outcome.field {
        let _ = writeln!(out, "field {f}");
    }
    for r in &outcome.reports {
        let _ = write!(out, "{}", r.render());
    }
    for line in &outcome.text {
        let _ = writeln!(out, "{line}");
    }
    match &failure {
        Some(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            let _ = writeln!(out, "result: ERROR ({})", f.kind());
        }
        None => {
            let _ = writeln!(out, "result: {}", if passed { "PASS" } else { "FAIL" });
        }
    }

    if let Some(path) = &cli.json {
        let report = RunReport {
            schema: SCHEMA,
            tool: Tool { name: "nvk", version: env!("CARGO_PKG_VERSION") },
            command: echo(args),
            input: outcome.input.clone(),
            field: outcome.field.map(|f| f.to_string()),
            passed,
            exit_code: code,
            reports: &outcome.reports,
            outputs: &outcome.outputs,
            error: failure.as_ref().map(|f| ErrorInfo { kind: f.kind(), message: f.message() }),
            timing: (!cli.omit_timing).then(|| Timing { elapsed_ms: start.elapsed().as_millis() }),
        };
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        if let Err(e) = std::fs::write(path, text) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    code
}

/// The arguments after the program name, without the report path.
fn echo(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args.iter().skip(1) {
        if skip {
            skip = false;
        } else if a == "--json" {
            skip = true;
        } else if !a.starts_with("--json=") {
            out.push(a.clone());
        }
    }
    out
}

fn load(path: &Path, outcome: &mut Outcome) -> Res<AlgebraFile> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Failure::Parse(format!("{}: not UTF-8", path.display())))?;
    let file = format::parse(&text).map_err(|e| Failure::Parse(format!("{}:{e}", path.display())))?;
    outcome.input = Some(InputInfo { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) });
    note_field(outcome, file.field);
    Ok(file)
}

fn note_field(outcome: &mut Outcome, field: Field) {
    outcome.field = Some(field);
    if field.is_small_characteristic() {
        outcome.warnings.push(format!(
            "working over {field}; some equivalences hold only in characteristic 0 or away from 2 and 3"
        ));
    }
}

fn same_basis(what: &str, basis: &Basis, a: &Algebra) -> Res<()> {
    if basis.dim() != a.dim() {
        return Err(Failure::Usage(format!("{what} has dimension {}, the algebra {}", basis.dim(), a.dim())));
    }
    Ok(())
}

fn tensor(file: &AlgebraFile, a: &Algebra, choice: &TensorChoice, required: bool) -> Res<Option<RTensor>> {
    if let Some(expr) = &choice.expr {
        let r = format::parse_tensor2(expr, file.field, a.basis()).map_err(|e| Failure::Parse(format!("--r: {e}")))?;
        return Ok(Some(r));
    }
    match file.tensor(choice.tensor.as_deref()) {
        Ok((basis, r)) => {
            same_basis("the tensor", basis, a)?;
            Ok(Some(r.clone()))
        }
        Err(LookupError::None(_)) if !required => Ok(None),
        Err(LookupError::None(_)) => Err(Failure::Usage("give --r EXPR, --tensor NAME or a tensor2 in the file".into())),
        Err(e) => Err(e.into()),
    }
}

fn optional_coalgebra(file: &AlgebraFile, name: Option<&str>) -> Res<Option<Coalgebra>> {
    match file.coalgebra(name) {
        Ok(c) => Ok(Some(c.clone())),
        Err(LookupError::None(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn coalgebra_on(file: &AlgebraFile, name: Option<&str>, a: &Algebra) -> Res<Coalgebra> {
    let c = file.coalgebra(name)?;
    same_basis("the coalgebra", c.basis(), a)?;
    Ok(c.with_basis(a.basis().clone())?)
}

fn form_on<'f>(file: &'f AlgebraFile, name: Option<&str>, a: &Algebra) -> Res<&'f BilinearForm> {
    let (basis, form) = file.form(name)?;
    same_basis("the form", basis, a)?;
    Ok(form)
}

fn dispatch(cmd: &Command) -> Res<Outcome> {
    let mut o = Outcome::default();
    match cmd {
        Command::Check { input, classes, name } => check(&mut o, input, classes, name.as_deref())?,
        Command::Bialgebra { input, coalgebra, equivalence } => {
            let file = load(&input.file, &mut o)?;
            let a = file.algebra(input.algebra.as_deref())?;
            let c = coalgebra_on(&file, coalgebra.as_deref(), a)?;
            o.reports.push(check_novikov_bialgebra(&NovikovBialgebra::new(a.clone(), c.clone())?));
            if *equivalence {
                o.reports.push(equivalence_suite(a, &c));
            }
        }
        Command::Coboundary { input, tensor: choice } => {
            let file = load(&input.file, &mut o)?;
            let a = file.algebra(input.algebra.as_deref())?;
            let r = tensor(&file, a, choice, true)?.expect("required");
            let delta = coboundary_coproduct(a, &r)?;
            o.reports.push(crate::bialgebra::check_cob_conditions(a, &r)?);
            o.reports.push(check_novikov_bialgebra(&NovikovBialgebra::new(a.clone(), delta.clone())?));
            let lines = format::coproduct_lines(&delta);
            let mut text = vec!["coproduct:".to_string()];
            text.extend(lines.iter().map(|l| format!("  {l}")));
            o.output("coproduct", json!(lines), text);
        }
        Command::Nybe { input, tensor: choice } => {
            let file = load(&input.file, &mut o)?;
            let a = file.algebra(input.algebra.as_deref())?;
            let r = tensor(&file, a, choice, true)?.expect("required");
            o.reports.push(check_nybe(a, &r)?);
        }
        Command::Ooperator { file, pre_novikov, representation, map } => {
            let file = load(file, &mut o)?;
            match (representation, map) {
                (Some(rep), Some(map)) => o_operator_on_representation(&mut o, &file, rep, map)?,
                _ => {
                    let p = file.pre_novikov(pre_novikov.as_deref())?;
                    identity_o_operator_pipeline(&mut o, file.field, p)?;
                }
            }
        }
        Command::Double { input, coalgebra, laurent } => {
            let file = load(&input.file, &mut o)?;
            let a = file.algebra(input.algebra.as_deref())?;
            let c = coalgebra_on(&file, coalgebra.as_deref(), a)?;
            let triple = assemble_double(a, &c)?;
            o.reports.push(check_manin_triple_novikov(&triple));
            o.reports.push(equivalence_suite(a, &c));
            if let (Some(b), Some(form)) = (&laurent.b, &laurent.form) {
                let b = file.algebra(Some(b))?;
                let form = form_on(&file, Some(form), b)?;
                o.reports.push(check_finite_square(a, &c, b, form)?);
            }
            let text = serialize_objects(file.field, vec![named("double", Object::Algebra(triple.double.clone()))]);
            o.output("double", json!(text), indented("double:", &text));
        }
        Command::Affinize { input, coalgebra, tensor: choice, probes } => affinize(&mut o, input, coalgebra.as_deref(), choice, probes)?,
        Command::Cybe { input, tensor: choice, laurent } => {
            let file = load(&input.file, &mut o)?;
            let a = file.algebra(input.algebra.as_deref())?;
            let r = tensor(&file, a, choice, true)?.expect("required");
            let r_l = affinize_r(a, &r)?;
            o.reports.push(check_completed_cybe(a, &r_l)?);
            let residual = cybe_residual(a, &r_l)?;
            o.output("cybe_residual", band_json(&residual, a.basis()), band_text("CYBE residual", &residual, a.basis()));
            if let (Some(b), Some(form)) = (&laurent.b, &laurent.form) {
                let b = file.algebra(Some(b))?;
                let form = form_on(&file, Some(form), b)?;
                let lie = induced_lie_finite(a, b)?;
                o.reports.push(check_cybe(&lie, &lift_r(&r, form)?)?);
            }
        }
        Command::Quasifrobenius { input, form, functional, window } => {
            let file = load(&input.file, &mut o)?;
            let a = file.algebra(input.algebra.as_deref())?;
            let omega = form_on(&file, form.as_deref(), a)?;
            o.reports.push(check_quasi_frobenius(a, omega));
            o.reports.push(graded_quasi_frobenius(a, omega)?);
            o.reports.push(quasi_frobenius_equivalence(a, omega)?);
            if let Some(values) = functional {
                let table = parse_functional(values, file.field, a.basis())?;
                let f = file.field;
                let lookup = move |i: usize, d: i64| table.get(&(i, d)).cloned().unwrap_or_else(|| f.zero());
                o.reports.push(check_frobenius_function(a, omega, &lookup, -window, *window));
            }
        }
        Command::Search { dim, field, class, quasi_frobenius, nybe, samples, seed, max_candidates } => {
            let f = Field::prime(*field).map_err(|e| Failure::Usage(e.to_string()))?;
            let class = Class::parse(class).ok_or_else(|| Failure::Usage(format!("unknown class `{class}`")))?;
            note_field(&mut o, f);
            let spec = SearchSpec {
                dim: *dim,
                field: f,
                class,
                filters: Filters { quasi_frobenius: *quasi_frobenius, nybe: *nybe },
                sampling: samples.map(|samples| Sampling { samples, seed: *seed }),
            };
            let mut limits = Limits::default();
            if let Some(m) = max_candidates {
                limits.max_candidates = *m;
            }
            search_command(&mut o, &spec, &limits)?;
        }
        Command::Selftest => {
            o.reports.push(selftest());
        }
    }
    Ok(o)
}

fn check(o: &mut Outcome, input: &Input, classes: &[String], name: Option<&str>) -> Res<()> {
    let file = load(&input.file, o)?;
    let mut wanted: Vec<String> = classes.to_vec();
    if wanted.is_empty() {
        let a = file.algebra(input.algebra.as_deref())?;
        wanted = a.claims().iter().map(|c| c.name().to_string()).collect();
        if wanted.is_empty() {
            wanted.push("novikov".into());
        }
    }
    for w in &wanted {
        let report = if let Some(c) = Class::parse(w) {
            c.check(file.algebra(input.algebra.as_deref())?)
        } else {
            match w.as_str() {
                "pre_novikov" => check_pre_novikov(file.pre_novikov(name)?),
                "l_dendriform" => check_l_dendriform(file.pre_novikov(name)?),
                "coalgebra" => check_novikov_coalgebra(file.coalgebra(name)?),
                "representation" => check_representation(file.representation(name)?),
                "matched_pair" => check_matched_pair(file.matched_pair(name)?)?,
                _ => return Err(Failure::Usage(format!("unknown class `{w}`"))),
            }
        };
        o.reports.push(report);
    }
    Ok(())
}

fn named(name: &str, object: Object) -> Named {
    Named { name: name.to_string(), object }
}

fn serialize_objects(field: Field, objects: Vec<Named>) -> String {
    format::serialize(&AlgebraFile { field, objects })
}

fn indented(title: &str, text: &str) -> Vec<String> {
    let mut out = vec![title.to_string()];
    out.extend(text.lines().map(|l| format!("  {l}")));
    out
}

fn identity_o_operator_pipeline(o: &mut Outcome, field: Field, p: &PreNovikovAlgebra) -> Res<()> {
    let report = check_pre_novikov(p);
    let ok = report.passed();
    o.reports.push(report);
    if !ok {
        return Ok(());
    }
    o.reports.push(check_o_operator(&identity_o_operator(p)?)?);
    let (algebra, r, omega) = pre_novikov_canonical_solution(p)?;
    o.reports.push(check_nybe(&algebra, &r)?);
    o.reports.push(check_quasi_frobenius(&algebra, &omega));
    let basis = algebra.basis().clone();
    let text = serialize_objects(
        field,
        vec![
            named("lift", Object::Algebra(algebra)),
            named("r", Object::Tensor2 { basis: basis.clone(), r }),
            named("omega", Object::BilinearForm { basis, form: omega }),
        ],
    );
    o.output("lift", json!(text), indented("lift:", &text));
    Ok(())
}

fn o_operator_on_representation(o: &mut Outcome, file: &AlgebraFile, rep_name: &str, map: &str) -> Res<()> {
    let rep = file.representation(Some(rep_name))?;
    let t = format::parse_map(map, file.field, rep.module(), rep.algebra().basis())
        .map_err(|e| Failure::Parse(format!("--map: {e}")))?;
    let op = OOperator::new(rep.clone(), t)?;
    let report = check_o_operator(&op)?;
    let ok = report.passed();
    o.reports.push(report);
    if !ok {
        return Ok(());
    }
    let p = o_operator_to_pre_novikov(&op)?;
    o.reports.push(check_pre_novikov(&p));
    let (algebra, r) = o_operator_lift(&op)?;
    o.reports.push(check_nybe(&algebra, &r)?);
    let basis = algebra.basis().clone();
    let text = serialize_objects(
        file.field,
        vec![
            named("induced", Object::PreNovikov(p)),
            named("lift", Object::Algebra(algebra)),
            named("r", Object::Tensor2 { basis, r }),
        ],
    );
    o.output("lift", json!(text), indented("lift:", &text));
    Ok(())
}

fn affinize(o: &mut Outcome, input: &Input, coalgebra: Option<&str>, choice: &TensorChoice, probes: &[i64]) -> Res<()> {
    let file = load(&input.file, o)?;
    let a = file.algebra(input.algebra.as_deref())?;
    let (f, n, basis) = (file.field, a.dim(), a.basis());
    o.reports.push(check_laurent_jacobi(a, &JACOBI_PROBES));
    let (rows, text) = bracket_table(a);
    o.output("bracket", Value::Array(rows), text);

    if let Some(c) = optional_coalgebra(&file, coalgebra)? {
        same_basis("the coalgebra", c.basis(), a)?;
        let c = c.with_basis(basis.clone())?;
        o.reports.push(check_completed_lie_bialgebra(a, &c, probes)?);
        let mut values = Map::new();
        for i in 0..n {
            for &k in probes {
                let label = format!("delta({} t^{k})", basis.name(i));
                let t = apply_delta_affine(&LaurentVector::basis(f, n, i, k), &c)?;
                o.text.extend(band_text(&label, &t, basis));
                values.insert(label, band_json(&t, basis));
            }
        }
        o.outputs.insert("delta".into(), Value::Object(values));
    }
    if let Some(r) = tensor(&file, a, choice, false)? {
        let r_l = affinize_r(a, &r)?;
        o.reports.push(check_completed_cybe(a, &r_l)?);
        o.reports.push(cross_check_coboundary_square(a, &r, probes)?);
        o.output("r_L", band_json(&r_l, basis), band_text("r_L", &r_l, basis));
        let mut values = Map::new();
        for i in 0..n {
            for &k in probes {
                let label = format!("coboundary({} t^{k})", basis.name(i));
                let t = coboundary_delta(a, &r_l, &LaurentVector::basis(f, n, i, k))?;
                o.text.extend(band_text(&label, &t, basis));
                values.insert(label, band_json(&t, basis));
            }
        }
        o.outputs.insert("coboundary".into(), Value::Object(values));
    }
    Ok(())
}

/// `[x t^i, y t^j] = Σ_z (c_i i + c_j j) z t^{i+j−1}`, read off from the
/// bracket at `(i, j) = (1, 0)` and `(0, 1)`.
fn bracket_table(a: &Algebra) -> (Vec<Value>, Vec<String>) {
    let (f, n, basis) = (a.field(), a.dim(), a.basis());
    let mut rows = Vec::new();
    let mut text = vec!["bracket on A[t, t^-1]:".to_string()];
    for x in 0..n {
        for y in 0..n {
            let ci = laurent_bracket(&LaurentVector::basis(f, n, x, 1), &LaurentVector::basis(f, n, y, 0), a).coefficient(0);
            let cj = laurent_bracket(&LaurentVector::basis(f, n, x, 0), &LaurentVector::basis(f, n, y, 1), a).coefficient(0);
            let mut terms = Vec::new();
            let mut parts = Vec::new();
            for z in 0..n {
                if ci[z].is_zero() && cj[z].is_zero() {
                    continue;
                }
                terms.push(json!({"basis": basis.name(z), "i": ci[z].to_string(), "j": cj[z].to_string()}));
                let lin = format_combination(&[("i".to_string(), ci[z].clone()), ("j".to_string(), cj[z].clone())]);
                parts.push(format!("({lin}) {}(i+j-1)", basis.name(z)));
            }
            if parts.is_empty() {
                continue;
            }
            rows.push(json!({"left": basis.name(x), "right": basis.name(y), "terms": terms}));
            text.push(format!("  [{}(i), {}(j)] = {}", basis.name(x), basis.name(y), parts.join(" + ")));
        }
    }
    (rows, text)
}

fn monomial(e: &[u32; 2], vars: usize) -> String {
    let mut parts = Vec::new();
    for (k, name) in ["u", "v"].iter().enumerate().take(vars) {
        match e[k] {
            0 => {}
            1 => parts.push(name.to_string()),
            p => parts.push(format!("{name}^{p}")),
        }
    }
    parts.join(" ")
}

fn poly_text(terms: &[([u32; 2], String)], vars: usize) -> String {
    let mut s = String::new();
    for (e, c) in terms.iter().rev() {
        let label = monomial(e, vars);
        let (neg, abs) = match c.strip_prefix('-') {
            Some(a) => (true, a),
            None => (false, c.as_str()),
        };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        match (abs, label.is_empty()) {
            (_, true) => s.push_str(abs),
            ("1", false) => s.push_str(&label),
            _ => s.push_str(&format!("{abs} {label}")),
        }
    }
    s
}

/// Band tables: the coefficient of `x t^(d-u) ⊗ y t^u` (and `⊗ z t^v` in
/// three slots) is the listed polynomial in `u` (and `v`).
fn band_text<const S: usize>(title: &str, t: &Banded<S>, basis: &Basis) -> Vec<String> {
    let mut out = vec![format!("{title}:")];
    if t.is_zero() {
        out.push("  0".into());
    }
    for (d, cells) in t.table(basis) {
        out.push(format!("  band d={d}"));
        for (cell, terms) in cells {
            out.push(format!("    {cell}: {}", poly_text(&terms, S - 1)));
        }
    }
    out
}

fn band_json<const S: usize>(t: &Banded<S>, basis: &Basis) -> Value {
    let bands = t
        .table(basis)
        .into_iter()
        .map(|(d, cells)| {
            let cells: Vec<Value> = cells
                .into_iter()
                .map(|(cell, terms)| {
                    let terms: Vec<Value> =
                        terms.into_iter().map(|(e, c)| json!({"exponents": &e[..S - 1], "coefficient": c})).collect();
                    json!({"cell": cell, "terms": terms})
                })
                .collect();
            json!({"degree": d, "cells": cells})
        })
        .collect();
    Value::Array(bands)
}

/// `x@d = value; ...` into a table keyed by `(basis index, degree)`.
fn parse_functional(text: &str, field: Field, basis: &Basis) -> Res<BTreeMap<(usize, i64), Scalar>> {
    let mut table = BTreeMap::new();
    for part in text.split([';', ',']).map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || Failure::Parse(format!("--functional: expected `name@degree = value`, got `{part}`"));
        let (lhs, value) = part.split_once('=').ok_or_else(bad)?;
        let (name, degree) = lhs.trim().rsplit_once('@').ok_or_else(bad)?;
        let i = basis
            .index_of(name.trim())
            .ok_or_else(|| Failure::Parse(format!("--functional: `{}` is not a basis element", name.trim())))?;
        let d: i64 = degree.trim().parse().map_err(|_| bad())?;
        let v = format::parse_scalar(value, field).map_err(|e| Failure::Parse(format!("--functional: {e}")))?;
        if table.insert((i, d), v).is_some() {
            return Err(Failure::Parse(format!("--functional: `{}` given twice", lhs.trim())));
        }
    }
    Ok(table)
}

fn search_command(o: &mut Outcome, spec: &SearchSpec, limits: &Limits) -> Res<()> {
    let outcome = search(spec, limits)?;
    let mode = if spec.sampling.is_some() { "sampled" } else { "exhaustive" };
    let mut report = Report::new("search");
    report.push(Check::verdict(
        "completed",
        true,
        Some(format!("{} found among {} {mode} candidates", outcome.hits.len(), outcome.candidates)),
    ));
    o.reports.push(report);
    let mut hits = Vec::new();
    let mut text = Vec::new();
    for h in &outcome.hits {
        let lines = format::product_lines(h.algebra.consts(), h.algebra.basis(), "*");
        let shown = if lines.is_empty() { "zero product".to_string() } else { lines.join("; ") };
        text.push(format!("#{}: {shown}", h.index));
        let constants: Vec<String> = h.algebra.consts().data().iter().map(Scalar::to_string).collect();
        hits.push(json!({"index": h.index, "constants": constants, "products": lines}));
    }
    text.push(format!("found {} of {} candidates", outcome.hits.len(), outcome.candidates));
    let value = json!({
        "mode": mode,
        "dim": spec.dim,
        "field": spec.field.to_string(),
        "class": spec.class.name(),
        "filters": spec.filters,
        "sampling": spec.sampling,
        "candidates": outcome.candidates,
        "count": outcome.hits.len(),
        "hits": hits,
    });
    o.output("search", value, text);
    Ok(())
}

/// Known verdicts on the shipped fixtures; each line passes when the
/// observed verdict matches the expected one.
fn selftest() -> Report {
    use crate::affine::graded::quasi_frobenius_verdicts;
    use crate::algebra::Class;
    use crate::fixtures::*;
    use crate::yangbaxter::{check_invariant_form, r_to_form, Flavor};

    let q = Field::Rational;
    let mut report = Report::new("selftest");
    let mut expect = |name: &str, observed: bool, expected: bool| {
        report.push(Check::verdict(name, observed == expected, Some(format!("observed {observed}, expected {expected}"))));
    };

    let a = novikov_2d(q);
    expect("novikov_2d_is_novikov", a.is_novikov(), true);
    let zero = novikov_2d_coproduct(q, &q.zero());
    expect("novikov_2d_zero_coproduct_bialgebra", crate::bialgebra::is_novikov_bialgebra(&a, &zero), true);
    let one = novikov_2d_coproduct(q, &q.one());
    expect("novikov_2d_unit_coproduct_bialgebra", crate::bialgebra::is_novikov_bialgebra(&a, &one), false);
    let (rn, form) = quadratic_right_novikov_2d_with_form(q);
    expect(
        "right_novikov_form_invariant",
        check_invariant_form(&rn, &form, Flavor::RightNovikov).map(|r| r.passed()).unwrap_or(false),
        true,
    );

    let (sv, r) = schrodinger_virasoro_with_r(q);
    expect("sv_nybe", check_nybe(&sv, &r).map(|x| x.passed()).unwrap_or(false), true);
    let cybe = affinize_r(&sv, &r).and_then(|r_l| check_completed_cybe(&sv, &r_l)).map(|x| x.passed());
    expect("sv_completed_cybe", cybe.unwrap_or(false), true);
    expect("sv_coboundary_square", cross_check_coboundary_square(&sv, &r, &[0, 1, 2]).map(|x| x.passed()).unwrap_or(false), true);

    let (fe, fr) = pre_novikov_lift_2d_with_r(q);
    let omega = r_to_form(&fr).expect("nondegenerate");
    let v = quasi_frobenius_verdicts(&fe, &omega).expect("novikov");
    expect("lift_four_conditions", v.all_true(), true);
    expect("unit_pre_novikov_1d", check_pre_novikov(&unit_pre_novikov_1d(q)).passed(), true);

    let f2 = Field::prime(2).expect("prime");
    let s = SearchSpec { dim: 1, field: f2, class: Class::Novikov, filters: Filters::default(), sampling: None };
    expect("search_dim1_f2_novikov_count_2", search(&s, &Limits::default()).map(|o| o.hits.len() == 2).unwrap_or(false), true);

    let file = AlgebraFile { field: q, objects: vec![named("sv", Object::Algebra(sv))] };
    let text = format::serialize(&file);
    expect("format_round_trip", format::parse(&text).map(|f| f == file).unwrap_or(false), true);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let args: Vec<String> = std::iter::once("nvk").chain(args.iter().copied()).map(String::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&args, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_64() {
        assert_eq!(run_args(&[]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["search", "--dim", "1"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["search", "--dim", "1", "--field", "4"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["check", "/nonexistent/file.alg"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_PASS);
        assert!(out.contains("search"));
    }

    #[test]
    fn search_dim1_f2() {
        let (code, out, err) = run_args(&["search", "--dim", "1", "--field", "2", "--class", "novikov"]);
        assert_eq!(code, EXIT_PASS, "{out}");
        assert!(out.contains("found 2 of 2 candidates"), "{out}");
        assert!(err.contains("warning"));
        let (_, out, _) = run_args(&["search", "--dim", "1", "--field", "2", "--class", "lie"]);
        assert!(out.contains("found 1 of 2 candidates"), "{out}");
    }

    #[test]
    fn search_cap_is_a_module_error() {
        let (code, _, err) = run_args(&["search", "--dim", "3", "--field", "2"]);
        assert_eq!(code, EXIT_FAIL);
        assert!(err.contains("search limit exceeded"));
    }

    #[test]
    fn selftest_passes() {
        let (code, out, _) = run_args(&["selftest"]);
        assert_eq!(code, EXIT_PASS, "{out}");
    }

    #[test]
    fn echo_drops_the_report_path() {
        let args: Vec<String> = ["nvk", "check", "--json", "x.json", "f.alg", "--json=y"].iter().map(|s| s.to_string()).collect();
        assert_eq!(echo(&args), ["check", "f.alg"]);
    }

    #[test]
    fn polynomial_text() {
        let terms = vec![([0, 0], "-1".to_string()), ([1, 0], "2".to_string()), ([1, 1], "-1".to_string())];
        assert_eq!(poly_text(&terms, 2), "-u v + 2 u - 1");
        assert_eq!(poly_text(&[([2, 0], "1".to_string())], 1), "u^2");
    }
}
