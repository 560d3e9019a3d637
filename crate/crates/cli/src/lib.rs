//! Batch front end for the `supereigen` library.
//!
//! A [`JobSpec`] names one command, an optional field override, its inputs
//! and a seed. [`run`] executes it and returns the serialized result with
//! the exit status the binary should report.

use std::collections::BTreeSet;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use supereigen::oracle::{self, claim_sweep, invariant_planes_bruteforce, sample_matrix, DEFAULT_BUDGET, MAX_WITNESSES};
use supereigen::rmodule::{det_test, hat, r_eigen_solve, tilde, x_matrix};
use supereigen::supereig::{
    is_proper_super_eigenvalue, is_super_eigenvalue, necessary_condition, primary_components,
    proper_super_eigenvalues, proper_super_eigenvector, verify_invariant_subspace, SuperEigenvalue, SuperEigenvector,
};
use supereigen::{factor, quadratic_irreducible, super_char_poly, Field, Mat, SimilarityClass, UniPoly};
use thiserror::Error;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Violation = 1,
    Invalid = 2,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error("invalid JSON in {0}: {1}")]
    Json(String, serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Where an input comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Stdin,
    Path(PathBuf),
    Inline(String),
}

impl Input {
    /// `-` is standard input, an existing path is a file, anything else is
    /// taken literally.
    pub fn from_arg(arg: &str) -> Input {
        if arg == "-" {
            Input::Stdin
        } else if std::path::Path::new(arg).is_file() {
            Input::Path(arg.into())
        } else {
            Input::Inline(arg.to_string())
        }
    }

    fn label(&self) -> String {
        match self {
            Input::Stdin => "<stdin>".into(),
            Input::Path(p) => p.display().to_string(),
            Input::Inline(_) => "<inline>".into(),
        }
    }

    fn text(&self) -> Result<String, CliError> {
        match self {
            Input::Stdin => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(self.label(), e))?;
                Ok(s)
            }
            Input::Path(p) => fs::read_to_string(p).map_err(|e| CliError::Io(self.label(), e)),
            Input::Inline(s) => Ok(s.clone()),
        }
    }

    fn json(&self) -> Result<Value, CliError> {
        serde_json::from_str(&self.text()?).map_err(|e| CliError::Json(self.label(), e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Factored characteristic polynomial and the proper classes with planes.
    Compute { matrix: Input },
    /// `Λ` for a candidate plane, if it is invariant.
    Verify { matrix: Input, plane: Input },
    /// Status of a candidate `Λ` with certificates.
    Test { matrix: Input, lambda: Input },
    Superchar { matrix: Input },
    Tilde { matrix: Input },
    Hat { matrix: Input },
    Xmatrix { matrix: Input },
    Factor { poly: Input },
    /// Brute-force planes of one matrix, or a sampled sweep when no matrix
    /// is given, compared against the factorization route.
    Oracle { matrix: Option<Input>, n: usize, samples: usize },
    Claims { n: usize, samples: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    /// Overrides any descriptor embedded in the inputs.
    pub field: Option<Field>,
    pub seed: u64,
    pub format: Format,
    pub budget: u128,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec { command, field: None, seed: 0, format: Format::Json, budget: DEFAULT_BUDGET }
    }

    pub fn field(mut self, field: Field) -> Self {
        self.field = Some(field);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }
}

/// Serialized result of a job.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub output: String,
}

pub fn run(job: &JobSpec) -> Outcome {
    match execute(job) {
        Ok((value, status)) => Outcome { status, output: render(&value, job.format) },
        Err(e) => Outcome { status: Status::Invalid, output: format!("error: {e}\n") },
    }
}

/// The result record and its status, before rendering.
pub fn execute(job: &JobSpec) -> Result<(Value, Status), CliError> {
    let seed = job.seed;
    let (body, status) = match &job.command {
        Command::Compute { matrix } => (compute(&read_matrix(matrix, job.field)?, seed)?, Status::Ok),
        Command::Verify { matrix, plane } => {
            let a = read_matrix(matrix, job.field)?;
            let w = SuperEigenvector::from_json(&plane.json()?, a.field()).map_err(invalid)?;
            let lambda = verify_invariant_subspace(&a, &w.u, &w.v).map_err(invalid)?;
            let record = json!({
                "field": a.field().to_json(),
                "plane": w.to_json(),
                "invariant": lambda.is_some(),
                "lambda": lambda.as_ref().map_or(Value::Null, SuperEigenvalue::to_json),
                "class": lambda.as_ref().map_or(Value::Null, |l| l.class().to_json()),
            });
            (record, Status::Ok)
        }
        Command::Test { matrix, lambda } => {
            let a = read_matrix(matrix, job.field)?;
            let l = SuperEigenvalue::from_json(&lambda.json()?, Some(a.field())).map_err(invalid)?;
            (test(&a, &l)?, Status::Ok)
        }
        Command::Superchar { matrix } => {
            let a = read_matrix(matrix, job.field)?;
            (super_char_poly(&a).map_err(invalid)?.to_json(), Status::Ok)
        }
        Command::Tilde { matrix } => (tilde(&read_matrix(matrix, job.field)?).map_err(invalid)?.to_json(), Status::Ok),
        Command::Hat { matrix } => (hat(&read_matrix(matrix, job.field)?).map_err(invalid)?.to_json(), Status::Ok),
        Command::Xmatrix { matrix } => (x_matrix(&read_matrix(matrix, job.field)?).map_err(invalid)?.to_json(), Status::Ok),
        Command::Factor { poly } => (factor_record(&read_poly(poly, job.field)?, seed)?, Status::Ok),
        Command::Oracle { matrix: Some(matrix), .. } => {
            let a = read_matrix(matrix, job.field)?;
            oracle_single(&a, seed, job.budget)?
        }
        Command::Oracle { matrix: None, n, samples } => {
            let field = job.field.ok_or_else(|| invalid("oracle sweep needs --field"))?;
            oracle_sweep(field, *n, *samples, seed, job.budget)?
        }
        Command::Claims { n, samples } => {
            let field = job.field.ok_or_else(|| invalid("claims needs --field"))?;
            let report = claim_sweep(field, *n, *samples, seed, job.budget).map_err(invalid)?;
            let status = if report.has_violations() { Status::Violation } else { Status::Ok };
            (report.to_json(), status)
        }
    };
    let mut record = Map::new();
    record.insert("command".into(), Value::String(job.command.name().into()));
    match body {
        Value::Object(obj) => record.extend(obj),
        other => {
            record.insert("result".into(), other);
        }
    }
    Ok((Value::Object(record), status))
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Compute { .. } => "compute",
            Command::Verify { .. } => "verify",
            Command::Test { .. } => "test",
            Command::Superchar { .. } => "superchar",
            Command::Tilde { .. } => "tilde",
            Command::Hat { .. } => "hat",
            Command::Xmatrix { .. } => "xmatrix",
            Command::Factor { .. } => "factor",
            Command::Oracle { .. } => "oracle",
            Command::Claims { .. } => "claims",
        }
    }
}

fn read_matrix(input: &Input, field: Option<Field>) -> Result<Mat, CliError> {
    let a = Mat::from_json(&input.json()?, field).map_err(invalid)?;
    if !a.is_square() {
        return Err(invalid(format!("{}: expected a square matrix, got {}x{}", input.label(), a.rows(), a.cols())));
    }
    Ok(a)
}

/// A JSON string, an object with `"poly"` (and optionally `"field"`), or raw
/// polynomial text. The field defaults to ℚ.
fn read_poly(input: &Input, field: Option<Field>) -> Result<UniPoly, CliError> {
    let text = input.text()?;
    let (embedded, body) = match serde_json::from_str::<Value>(&text) {
        Ok(Value::String(s)) => (None, s),
        Ok(Value::Object(obj)) => {
            let body = obj.get("poly").and_then(Value::as_str).ok_or_else(|| invalid("missing \"poly\" string"))?;
            let embedded = obj.get("field").map(Field::from_json).transpose().map_err(invalid)?;
            (embedded, body.to_string())
        }
        _ => (None, text.trim().to_string()),
    };
    let field = field.or(embedded).unwrap_or_else(Field::rationals);
    UniPoly::parse(field, &body).map_err(invalid)
}

fn compute(a: &Mat, seed: u64) -> Result<Value, CliError> {
    let charpoly = a.charpoly().map_err(invalid)?;
    let factors = factor(&charpoly, seed).map_err(invalid)?;
    let classes = proper_super_eigenvalues(a, seed).map_err(invalid)?;
    let proper = classes
        .iter()
        .map(|c| {
            let plane = proper_super_eigenvector(a, &c.lambda).map_err(invalid)?;
            Ok(c.to_json(Some(&plane)))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let components = primary_components(a, seed).map_err(invalid)?;
    Ok(json!({
        "field": a.field().to_json(),
        "n": a.rows(),
        "matrix": a.rows_json(),
        "charpoly": charpoly.to_json(),
        "factors": factors.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "bound": a.rows() / 2,
        "proper": proper,
        "components": components.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
    }))
}

fn test(a: &Mat, l: &SuperEigenvalue) -> Result<Value, CliError> {
    let p_lambda = l.charpoly();
    let irreducible = quadratic_irreducible(&p_lambda).map_err(invalid)?;
    let det_p = a.eval_poly(&p_lambda).map_err(invalid)?.det().map_err(invalid)?;
    let proper = is_proper_super_eigenvalue(a, l).map_err(invalid)?;
    let is_super = is_super_eigenvalue(a, l).map_err(invalid)?;
    let solution = r_eigen_solve(a, l).map_err(invalid)?;
    let plane = if proper {
        Some(proper_super_eigenvector(a, l).map_err(invalid)?)
    } else {
        solution.witness.as_ref().map(|w| SuperEigenvector::new(w.u.clone(), w.v.clone()))
    };
    let status = match (proper, is_super) {
        (true, _) => "proper",
        (false, true) => "improper",
        (false, false) => "none",
    };
    let det_test_value = if a.rows() % 2 == 0 {
        Value::String(det_test(a, l).map_err(invalid)?.to_string())
    } else {
        Value::Null
    };
    Ok(json!({
        "field": a.field().to_json(),
        "lambda": l.to_json(),
        "class": l.class().to_json(),
        "status": status,
        "certificates": {
            "charpoly_lambda": p_lambda.to_string(),
            "charpoly_lambda_irreducible": irreducible,
            "det_p_lambda_of_a": det_p.to_string(),
            "necessary_condition": necessary_condition(a, l).map_err(invalid)?.to_string(),
            "det_test": det_test_value,
            "plane": plane.as_ref().map_or(Value::Null, SuperEigenvector::to_json),
            "module_solutions": solution.to_json(),
        },
    }))
}

fn factor_record(f: &UniPoly, seed: u64) -> Result<Value, CliError> {
    let records = factor(f, seed).map_err(invalid)?;
    let lead = if f.is_zero() { f.field().zero() } else { f.lead() };
    Ok(json!({
        "field": f.field().to_json(),
        "poly": f.to_string(),
        "leading": lead.to_string(),
        "factors": records.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    }))
}

fn factorization_classes(a: &Mat, seed: u64) -> Result<BTreeSet<SimilarityClass>, CliError> {
    Ok(proper_super_eigenvalues(a, seed).map_err(invalid)?.iter().map(|c| c.class()).collect())
}

fn oracle_single(a: &Mat, seed: u64, budget: u128) -> Result<(Value, Status), CliError> {
    let planes = invariant_planes_bruteforce(a, budget).map_err(invalid)?;
    let brute = oracle::classes_of(&planes);
    let algebraic = factorization_classes(a, seed)?;
    let agree = algebraic == brute.proper;
    let mut record = brute.to_json();
    let obj = record.as_object_mut().expect("object");
    obj.insert("field".into(), a.field().to_json());
    obj.insert("matrix".into(), a.rows_json());
    obj.insert(
        "invariant_planes".into(),
        planes.iter().map(|p| json!({ "plane": p.plane.to_json(), "lambda": p.lambda.to_json(), "proper": p.proper })).collect(),
    );
    obj.insert("factorization_classes".into(), algebraic.iter().map(|c| c.to_json()).collect());
    obj.insert("agree".into(), Value::Bool(agree));
    Ok((record, if agree { Status::Ok } else { Status::Violation }))
}

fn oracle_sweep(field: Field, n: usize, samples: usize, seed: u64, budget: u128) -> Result<(Value, Status), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0u64;
    let mut witnesses = Vec::new();
    let mut planes_per_sample = None;
    for i in 0..samples {
        let a = sample_matrix(field, n, i, &mut rng);
        let planes = invariant_planes_bruteforce(&a, budget).map_err(invalid)?;
        let brute = oracle::classes_of(&planes);
        let algebraic = factorization_classes(&a, seed)?;
        if algebraic != brute.proper {
            mismatches += 1;
            if witnesses.len() < MAX_WITNESSES {
                witnesses.push(json!({ "matrix": a.rows_json(), "brute": brute.to_json() }));
            }
        }
        planes_per_sample.get_or_insert(oracle::enum_2d_subspaces(field, n, budget).map_err(invalid)?.plane_count());
    }
    let record = json!({
        "field": field.to_json(),
        "n": n,
        "samples": samples,
        "seed": seed,
        "planes_per_sample": planes_per_sample.map(|c| c.to_string()),
        "mismatches": mismatches,
        "witnesses": witnesses,
    });
    Ok((record, if mismatches == 0 { Status::Ok } else { Status::Violation }))
}

/// JSON is pretty-printed. Text mode prints one `key: value` per line and
/// renders grids of scalars as bracketed rows.
pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
        Format::Text => {
            let mut out = String::new();
            render_text(value, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("-".into()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        _ => None,
    }
}

fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    let items = v.as_array()?;
    let parts = items.iter().map(scalar).collect::<Option<Vec<_>>>()?;
    Some(format!("[{}]", parts.join(", ")))
}

fn grid(v: &Value) -> Option<Vec<String>> {
    let rows = v.as_array().filter(|r| !r.is_empty())?;
    rows.iter().map(|r| r.as_array().and_then(|_| inline(r))).collect()
}

fn render_text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(obj) => {
            for (k, v) in obj {
                if let Some(s) = inline(v) {
                    out.push_str(&format!("{pad}{k}: {s}\n"));
                } else if let Some(rows) = grid(v) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    for r in rows {
                        out.push_str(&format!("{pad}  {r}\n"));
                    }
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(v, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                match inline(item).or_else(|| grid(item).map(|rows| rows.join(" "))) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}- [{i}]\n"));
                        render_text(item, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// Command-line grammar.
#[derive(Debug, Parser)]
#[command(name = "supereigen", version, about = "Invariant planes and 2x2 super-eigenvalues over exact fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// q | gf:<p> | qsqrt:<d>; overrides descriptors embedded in inputs.
    #[arg(long, global = true)]
    pub field: Option<Field>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Ceiling on pⁿ times the number of planes for brute-force work.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
}

/// Inputs are file paths, `-` for standard input, or inline JSON.
#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Factored characteristic polynomial and the proper classes with planes.
    Compute { matrix: String },
    /// Super-eigenvalue of a candidate plane `{"u": [..], "v": [..]}`.
    Verify {
        matrix: String,
        #[arg(long)]
        plane: String,
    },
    /// Whether a candidate `Λ` is a proper or improper super-eigenvalue.
    Test {
        matrix: String,
        #[arg(long)]
        lambda: String,
    },
    /// Coefficients of det(A² − tA + dI).
    Superchar { matrix: String },
    /// The k×k matrix over Mat₂(F) representing A.
    Tilde { matrix: String },
    /// Bracket-removed form of the tilde matrix.
    Hat { matrix: String },
    /// Block-diagonal action of A on Fⁿ ⊕ Fⁿ.
    Xmatrix { matrix: String },
    /// Factor a univariate polynomial.
    Factor { poly: String },
    /// Brute-force planes of a matrix, or a sampled sweep without one.
    Oracle {
        matrix: Option<String>,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Check every claim over sampled matrices and all 2x2 candidates.
    Claims {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 25)]
        samples: usize,
    },
}

impl Cli {
    pub fn into_job(self) -> JobSpec {
        let arg = |s: &str| Input::from_arg(s);
        let command = match self.command {
            CliCommand::Compute { matrix } => Command::Compute { matrix: arg(&matrix) },
            CliCommand::Verify { matrix, plane } => Command::Verify { matrix: arg(&matrix), plane: arg(&plane) },
            CliCommand::Test { matrix, lambda } => Command::Test { matrix: arg(&matrix), lambda: arg(&lambda) },
            CliCommand::Superchar { matrix } => Command::Superchar { matrix: arg(&matrix) },
            CliCommand::Tilde { matrix } => Command::Tilde { matrix: arg(&matrix) },
            CliCommand::Hat { matrix } => Command::Hat { matrix: arg(&matrix) },
            CliCommand::Xmatrix { matrix } => Command::Xmatrix { matrix: arg(&matrix) },
            CliCommand::Factor { poly } => Command::Factor { poly: arg(&poly) },
            CliCommand::Oracle { matrix, n, samples } => Command::Oracle { matrix: matrix.as_deref().map(arg), n, samples },
            CliCommand::Claims { n, samples } => Command::Claims { n, samples },
        };
        JobSpec { command, field: self.common.field, seed: self.common.seed, format: self.common.format, budget: self.common.budget }
    }
}
