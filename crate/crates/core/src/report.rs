//! The analysis pipeline and its output document.
//!
//! `run_pipeline` takes a textual derivation spec to a `Report`; the
//! report serializes to a self-contained JSON document that
//! `verify_report` re-checks from scratch, trusting nothing but the
//! recorded expressions. Emission order of struct fields is the JSON
//! key order, so two runs over the same spec produce identical bytes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::derivation::{CertifyError, Derivation, LndCertificate};
use crate::parse::{parse_expression, ParseError};
use crate::random::seeded_rng;
use crate::ring::{matrix_rank, ConstMatrix, Poly, RingError, VarTable};
use crate::structure::{classify, linear_coefficients, Classification};
use crate::witness::{
    assemble_certificate, collect_samples, dixmier_sample, witness_divergence, witness_linear,
    witness_missing_variable, witness_triangular, Branch, NonRigidityCertificate, Provenance,
    SampleOrigin, WitnessError,
};

/// Input document for one analysis: symbol names plus one image
/// expression per variable, with optional kernel hints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationSpec {
    #[serde(default)]
    pub constants: Vec<String>,
    pub variables: Vec<String>,
    pub images: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub kernel_hints: Vec<String>,
}

/// Which witness constructions the pipeline may try.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// First applicable construction in the fixed priority order
    /// missing, triangular, divergence, linear.
    Auto,
    Missing,
    Triangular,
    Divergence,
    Linear,
    /// Every applicable construction, in priority order.
    All,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Missing => "missing",
            Strategy::Triangular => "triangular",
            Strategy::Divergence => "divergence",
            Strategy::Linear => "linear",
            Strategy::All => "all",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "missing" => Ok(Strategy::Missing),
            "triangular" => Ok(Strategy::Triangular),
            "divergence" => Ok(Strategy::Divergence),
            "linear" => Ok(Strategy::Linear),
            "all" => Ok(Strategy::All),
            other => Err(format!("unknown strategy '{other}'")),
        }
    }
}

/// Outcome of one analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Non-rigidity of ker D established by at least one certificate.
    Certified,
    /// Witness found but no sample decided its restriction to ker D.
    Inconclusive,
    /// Proof of non-nilpotency (exact linear analysis only).
    NotLnd,
    /// No requested construction applies to this derivation.
    Unsupported,
    /// Local nilpotency undecided within the iteration budget.
    BudgetExceeded,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Certified => "CERTIFIED",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::NotLnd => "NOT_LND",
            Status::Unsupported => "UNSUPPORTED",
            Status::BudgetExceeded => "BUDGET_EXCEEDED",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "CERTIFIED" => Ok(Status::Certified),
            "INCONCLUSIVE" => Ok(Status::Inconclusive),
            "NOT_LND" => Ok(Status::NotLnd),
            "UNSUPPORTED" => Ok(Status::Unsupported),
            "BUDGET_EXCEEDED" => Ok(Status::BudgetExceeded),
            other => Err(format!("unknown status '{other}'")),
        }
    }
}

/// Pipeline knobs. `max_iter` bounds every nilpotency iteration,
/// `samples` counts the random Dixmier probes, `seed` fixes them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineOptions {
    pub max_iter: usize,
    pub samples: usize,
    pub seed: u64,
    pub strategy: Strategy,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            max_iter: 64,
            samples: 4,
            seed: 0,
            strategy: Strategy::Auto,
        }
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("no image given for variable '{0}'")]
    MissingImage(String),
    #[error("image given for '{0}', which is not a declared variable")]
    UnknownImageVariable(String),
    #[error("image of {variable} does not parse: {source}")]
    ImageParse {
        variable: String,
        source: ParseError,
    },
    #[error("kernel hint '{hint}' does not parse: {source}")]
    HintParse { hint: String, source: ParseError },
    #[error("kernel hint '{0}' is not annihilated by the derivation")]
    HintNotInKernel(String),
    #[error("max-iter must be at least 1")]
    ZeroBudget,
    #[error(transparent)]
    Witness(WitnessError),
}

/// Everything one analysis produced, in exact arithmetic.
#[derive(Debug, Clone)]
pub struct Report {
    pub table: Arc<VarTable>,
    pub derivation: Derivation,
    pub kernel_hints: Vec<Poly>,
    pub options: PipelineOptions,
    pub classification: Classification,
    pub lnd_certificate: Option<LndCertificate>,
    pub certificates: Vec<NonRigidityCertificate>,
    pub status: Status,
    pub status_detail: String,
}

fn strategy_applicable(strategy: Strategy, class: &Classification) -> bool {
    match strategy {
        Strategy::Missing => class.missing_variable.is_some(),
        Strategy::Triangular => class.triangular_order.is_some(),
        Strategy::Divergence => class.divergence_zero,
        Strategy::Linear => class.linear_matrix.is_some(),
        Strategy::Auto | Strategy::All => [
            Strategy::Missing,
            Strategy::Triangular,
            Strategy::Divergence,
            Strategy::Linear,
        ]
        .iter()
        .any(|&s| strategy_applicable(s, class)),
    }
}

const PRIORITY: [Strategy; 4] = [
    Strategy::Missing,
    Strategy::Triangular,
    Strategy::Divergence,
    Strategy::Linear,
];

/// The constructions a strategy request expands to, given the
/// classification: the applicable prefix filter of the priority order.
fn selected_constructions(strategy: Strategy, class: &Classification) -> Vec<Strategy> {
    let applicable: Vec<Strategy> = PRIORITY
        .iter()
        .copied()
        .filter(|&s| strategy_applicable(s, class))
        .collect();
    match strategy {
        Strategy::Auto => applicable.into_iter().take(1).collect(),
        Strategy::All => applicable,
        s if strategy_applicable(s, class) => vec![s],
        _ => Vec::new(),
    }
}

fn conclusive(branch: &Branch) -> bool {
    matches!(
        branch,
        Branch::InheritedLnd { .. } | Branch::CoordinateKernel { .. }
    )
}

/// Runs the whole analysis on one spec: parse, classify, certify local
/// nilpotency, then build non-rigidity certificates per the strategy.
pub fn run_pipeline(
    spec: &DerivationSpec,
    options: &PipelineOptions,
) -> Result<Report, PipelineError> {
    if options.max_iter == 0 {
        return Err(PipelineError::ZeroBudget);
    }
    let table = VarTable::new(
        spec.constants.iter().map(String::as_str),
        spec.variables.iter().map(String::as_str),
    )?;
    for name in spec.images.keys() {
        if !spec.variables.iter().any(|v| v == name) {
            return Err(PipelineError::UnknownImageVariable(name.clone()));
        }
    }
    let mut images = Vec::with_capacity(spec.variables.len());
    for name in &spec.variables {
        let src = spec
            .images
            .get(name)
            .ok_or_else(|| PipelineError::MissingImage(name.clone()))?;
        let image = parse_expression(src, &table).map_err(|source| PipelineError::ImageParse {
            variable: name.clone(),
            source,
        })?;
        images.push(image);
    }
    let derivation = Derivation::new(&table, images)?;
    let mut kernel_hints = Vec::with_capacity(spec.kernel_hints.len());
    for hint in &spec.kernel_hints {
        let p = parse_expression(hint, &table).map_err(|source| PipelineError::HintParse {
            hint: hint.clone(),
            source,
        })?;
        kernel_hints.push(p);
    }
    let classification = classify(&derivation);

    let lnd = match derivation.certify_lnd(options.max_iter) {
        Ok(cert) => cert,
        Err(CertifyError::NotLnd) => {
            return Ok(Report {
                table,
                derivation,
                kernel_hints,
                options: *options,
                classification,
                lnd_certificate: None,
                certificates: Vec::new(),
                status: Status::NotLnd,
                status_detail: "the linear coefficient matrix is not nilpotent, so no power of \
                    the derivation annihilates the generators"
                    .to_string(),
            });
        }
        Err(CertifyError::BudgetExceeded { budget }) => {
            return Ok(Report {
                table,
                derivation,
                kernel_hints,
                options: *options,
                classification,
                lnd_certificate: None,
                certificates: Vec::new(),
                status: Status::BudgetExceeded,
                status_detail: format!(
                    "some generator did not iterate to zero within {budget} steps; local \
                     nilpotency is undecided, raise --max-iter to push further"
                ),
            });
        }
        Err(CertifyError::Ring(e)) => return Err(PipelineError::Ring(e)),
    };

    let mut rng = seeded_rng(options.seed);
    let samples = collect_samples(
        &derivation,
        &lnd,
        &kernel_hints,
        options.samples,
        &mut rng,
        options.max_iter,
    )
    .map_err(|e| match e {
        WitnessError::HintNotInKernel { element } => PipelineError::HintNotInKernel(element),
        other => PipelineError::Witness(other),
    })?;

    let mut certificates = Vec::new();
    for strat in selected_constructions(options.strategy, &classification) {
        let (provenance, witness) = match strat {
            Strategy::Missing => {
                let j = classification.missing_variable.expect("selected");
                (
                    Provenance::MissingVariable { variable: j },
                    witness_missing_variable(&derivation, j),
                )
            }
            Strategy::Triangular => {
                let order = classification.triangular_order.as_ref().expect("selected");
                (
                    Provenance::Triangular {
                        order: order.clone(),
                    },
                    witness_triangular(&derivation, order),
                )
            }
            Strategy::Divergence => (Provenance::Divergence, witness_divergence(&derivation)),
            Strategy::Linear => {
                let a = classification.linear_matrix.as_ref().expect("selected");
                (Provenance::Linear, witness_linear(&derivation, a))
            }
            Strategy::Auto | Strategy::All => unreachable!("expanded by selection"),
        };
        let witness = witness.map_err(PipelineError::Witness)?;
        let cert = assemble_certificate(&derivation, &witness, &samples, options.max_iter, provenance)
            .map_err(PipelineError::Witness)?;
        certificates.push(cert);
    }

    let (status, status_detail) = if certificates.is_empty() {
        (
            Status::Unsupported,
            format!(
                "no construction requested by strategy '{}' applies to this derivation",
                options.strategy
            ),
        )
    } else if let Some(first) = certificates.iter().find(|c| conclusive(&c.branch)) {
        (
            Status::Certified,
            format!(
                "kernel certified non-rigid by the {} construction ({} branch)",
                first.provenance,
                first.branch.name()
            ),
        )
    } else {
        (
            Status::Inconclusive,
            "a commuting locally nilpotent witness exists, but no sampled kernel element \
             decided its restriction to the kernel; raise --samples or supply kernel hints"
                .to_string(),
        )
    };

    Ok(Report {
        table,
        derivation,
        kernel_hints,
        options: *options,
        classification,
        lnd_certificate: Some(lnd),
        certificates,
        status,
        status_detail,
    })
}

// ---------------------------------------------------------------------
// serialized form

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RawImage {
    variable: String,
    image: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RawOptions {
    max_iter: usize,
    samples: usize,
    seed: u64,
    strategy: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RawClassification {
    missing_variable: Option<String>,
    triangular_order: Option<Vec<String>>,
    linear_matrix: Option<Vec<Vec<String>>>,
    divergence_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RawLnd {
    indices: Vec<usize>,
    method: String,
    budget_used: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RawStrategy {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    variable: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RawOrigin {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    slice_s: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    slice_r: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r_power: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RawSample {
    element: String,
    origin: RawOrigin,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RawBranch {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sample: Option<RawSample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    image: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    forms: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RawCertificate {
    strategy: RawStrategy,
    witness: Vec<RawImage>,
    commutation_check: bool,
    witness_lnd: RawLnd,
    branch: RawBranch,
    justification: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RawReport {
    tool: String,
    format_version: u32,
    constants: Vec<String>,
    variables: Vec<String>,
    images: Vec<RawImage>,
    #[serde(default)]
    kernel_hints: Vec<String>,
    options: RawOptions,
    classification: RawClassification,
    status: String,
    status_detail: String,
    lnd_certificate: Option<RawLnd>,
    certificates: Vec<RawCertificate>,
}

fn raw_images(d: &Derivation) -> Vec<RawImage> {
    d.table()
        .variable_names()
        .iter()
        .zip(d.images())
        .map(|(variable, image)| RawImage {
            variable: variable.clone(),
            image: image.to_string(),
        })
        .collect()
}

fn raw_classification(c: &Classification, table: &VarTable) -> RawClassification {
    let names = table.variable_names();
    RawClassification {
        missing_variable: c.missing_variable.map(|j| names[j].clone()),
        triangular_order: c
            .triangular_order
            .as_ref()
            .map(|order| order.iter().map(|&j| names[j].clone()).collect()),
        linear_matrix: c.linear_matrix.as_ref().map(|a| {
            (0..a.size())
                .map(|i| a.row(i).iter().map(Poly::to_string).collect())
                .collect()
        }),
        divergence_zero: c.divergence_zero,
    }
}

fn raw_lnd(c: &LndCertificate) -> RawLnd {
    RawLnd {
        indices: c.indices.clone(),
        method: c.method.to_string(),
        budget_used: c.budget_used,
    }
}

fn raw_strategy(p: &Provenance, table: &VarTable) -> RawStrategy {
    let names = table.variable_names();
    let (variable, order) = match p {
        Provenance::MissingVariable { variable } => (Some(names[*variable].clone()), None),
        Provenance::Triangular { order } => (
            None,
            Some(order.iter().map(|&j| names[j].clone()).collect()),
        ),
        Provenance::Divergence | Provenance::Linear => (None, None),
    };
    RawStrategy {
        kind: p.to_string(),
        variable,
        order,
    }
}

fn raw_origin(o: &SampleOrigin, table: &VarTable) -> RawOrigin {
    match o {
        SampleOrigin::UserSupplied => RawOrigin {
            kind: "USER_SUPPLIED".to_string(),
            source: None,
            slice_s: None,
            slice_r: None,
            r_power: None,
        },
        SampleOrigin::Dixmier {
            source,
            slice_s,
            slice_r,
            r_power,
        } => RawOrigin {
            kind: "DIXMIER".to_string(),
            source: Some(source.to_string()),
            slice_s: Some(slice_s.to_string()),
            slice_r: Some(slice_r.to_string()),
            r_power: Some(*r_power),
        },
        SampleOrigin::Generator { index } => RawOrigin {
            kind: "GENERATOR".to_string(),
            source: Some(table.variable_names()[*index].clone()),
            slice_s: None,
            slice_r: None,
            r_power: None,
        },
    }
}

fn raw_branch(b: &Branch, table: &VarTable) -> RawBranch {
    match b {
        Branch::InheritedLnd { sample, image } => RawBranch {
            kind: b.name().to_string(),
            sample: Some(RawSample {
                element: sample.element.to_string(),
                origin: raw_origin(&sample.origin, table),
            }),
            image: Some(image.to_string()),
            forms: None,
        },
        Branch::CoordinateKernel { forms } => RawBranch {
            kind: b.name().to_string(),
            sample: None,
            image: None,
            forms: Some(forms.iter().map(Poly::to_string).collect()),
        },
        Branch::InconclusiveSamples => RawBranch {
            kind: b.name().to_string(),
            sample: None,
            image: None,
            forms: None,
        },
    }
}

fn raw_certificate(c: &NonRigidityCertificate, table: &VarTable) -> RawCertificate {
    RawCertificate {
        strategy: raw_strategy(&c.provenance, table),
        witness: raw_images(&c.witness),
        commutation_check: c.commutation_check,
        witness_lnd: raw_lnd(&c.witness_lnd),
        branch: raw_branch(&c.branch, table),
        justification: c.justification.clone(),
    }
}

impl Report {
    fn to_raw(&self) -> RawReport {
        let table = &*self.table;
        RawReport {
            tool: "lndcert".to_string(),
            format_version: 1,
            constants: table.constant_names().to_vec(),
            variables: table.variable_names().to_vec(),
            images: raw_images(&self.derivation),
            kernel_hints: self.kernel_hints.iter().map(Poly::to_string).collect(),
            options: RawOptions {
                max_iter: self.options.max_iter,
                samples: self.options.samples,
                seed: self.options.seed,
                strategy: self.options.strategy.name().to_string(),
            },
            classification: raw_classification(&self.classification, table),
            status: self.status.name().to_string(),
            status_detail: self.status_detail.clone(),
            lnd_certificate: self.lnd_certificate.as_ref().map(raw_lnd),
            certificates: self
                .certificates
                .iter()
                .map(|c| raw_certificate(c, table))
                .collect(),
        }
    }

    /// The canonical machine-checkable document; key order is fixed, so
    /// equal reports serialize to identical bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("report serializes")
    }

    /// A terminal-friendly rendering of the same content.
    pub fn render_text(&self) -> String {
        use std::fmt::Write as _;

        let table = &*self.table;
        let names = table.variable_names();
        let mut out = String::new();
        writeln!(out, "derivation over {table}").unwrap();
        for (name, image) in names.iter().zip(self.derivation.images()) {
            writeln!(out, "  D({name}) = {image}").unwrap();
        }
        if !self.kernel_hints.is_empty() {
            let hints: Vec<String> = self.kernel_hints.iter().map(Poly::to_string).collect();
            writeln!(out, "kernel hints: {}", hints.join(", ")).unwrap();
        }
        writeln!(
            out,
            "options: max-iter {}, samples {}, seed {}, strategy {}",
            self.options.max_iter, self.options.samples, self.options.seed, self.options.strategy
        )
        .unwrap();
        writeln!(out, "classification:").unwrap();
        match self.classification.missing_variable {
            Some(j) => writeln!(out, "  missing variable: {}", names[j]).unwrap(),
            None => writeln!(out, "  missing variable: none").unwrap(),
        }
        match &self.classification.triangular_order {
            Some(order) => {
                let order: Vec<&str> = order.iter().map(|&j| names[j].as_str()).collect();
                writeln!(out, "  triangular order: {}", order.join(", ")).unwrap();
            }
            None => writeln!(out, "  triangular order: none").unwrap(),
        }
        match &self.classification.linear_matrix {
            Some(a) => {
                let rows: Vec<String> = (0..a.size())
                    .map(|i| {
                        let row: Vec<String> = a.row(i).iter().map(Poly::to_string).collect();
                        format!("[{}]", row.join(", "))
                    })
                    .collect();
                writeln!(out, "  linear matrix: [{}]", rows.join(", ")).unwrap();
            }
            None => writeln!(out, "  linear matrix: none").unwrap(),
        }
        writeln!(
            out,
            "  divergence zero: {}",
            if self.classification.divergence_zero {
                "yes"
            } else {
                "no"
            }
        )
        .unwrap();
        match &self.lnd_certificate {
            Some(cert) => {
                let indices: Vec<String> =
                    cert.indices.iter().map(|nu| nu.to_string()).collect();
                writeln!(
                    out,
                    "locally nilpotent: yes, method {}, indices ({}), budget used {}",
                    cert.method,
                    indices.join(", "),
                    cert.budget_used
                )
                .unwrap();
            }
            None => writeln!(out, "locally nilpotent: not certified").unwrap(),
        }
        writeln!(out, "status: {}", self.status).unwrap();
        writeln!(out, "  {}", self.status_detail).unwrap();
        for (idx, cert) in self.certificates.iter().enumerate() {
            writeln!(
                out,
                "certificate {} of {}: {} construction",
                idx + 1,
                self.certificates.len(),
                cert.provenance
            )
            .unwrap();
            for (name, image) in names.iter().zip(cert.witness.images()) {
                writeln!(out, "  E({name}) = {image}").unwrap();
            }
            writeln!(out, "  commutes with D: yes").unwrap();
            let indices: Vec<String> = cert
                .witness_lnd
                .indices
                .iter()
                .map(|nu| nu.to_string())
                .collect();
            writeln!(
                out,
                "  witness locally nilpotent: method {}, indices ({})",
                cert.witness_lnd.method,
                indices.join(", ")
            )
            .unwrap();
            writeln!(out, "  branch: {}", cert.branch.name()).unwrap();
            match &cert.branch {
                Branch::InheritedLnd { sample, image } => {
                    writeln!(out, "    kernel element: {}", sample.element).unwrap();
                    match &sample.origin {
                        SampleOrigin::UserSupplied => {
                            writeln!(out, "    origin: user-supplied hint").unwrap()
                        }
                        SampleOrigin::Dixmier {
                            source,
                            slice_s,
                            slice_r,
                            r_power,
                        } => writeln!(
                            out,
                            "    origin: Dixmier image of {source} through slice s = {slice_s}, \
                             r = {slice_r} (cleared r^{r_power})"
                        )
                        .unwrap(),
                        SampleOrigin::Generator { index } => {
                            writeln!(out, "    origin: generator {}", names[*index]).unwrap()
                        }
                    }
                    writeln!(out, "    E(element) = {image}").unwrap();
                }
                Branch::CoordinateKernel { forms } => {
                    let forms: Vec<String> = forms.iter().map(Poly::to_string).collect();
                    writeln!(out, "    kernel forms: {}", forms.join(", ")).unwrap();
                }
                Branch::InconclusiveSamples => {}
            }
            writeln!(out, "  justification: {}", cert.justification).unwrap();
        }
        out
    }
}

// ---------------------------------------------------------------------
// verification

/// Why a report failed verification. `Malformed` means the document
/// could not even be interpreted; `Failed` lists every mathematical
/// claim that did not re-check.
#[derive(Debug)]
pub enum VerifyError {
    Malformed(String),
    Failed { passed: usize, failures: Vec<String> },
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::Malformed(msg) => write!(f, "malformed report: {msg}"),
            VerifyError::Failed { passed, failures } => {
                write!(
                    f,
                    "{} of {} checks failed",
                    failures.len(),
                    passed + failures.len()
                )?;
                for msg in failures {
                    write!(f, "\n  - {msg}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for VerifyError {}

struct Checker {
    passed: usize,
    failures: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker {
            passed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }
}

fn parse_or_malformed(
    src: &str,
    table: &Arc<VarTable>,
    what: &str,
) -> Result<Poly, VerifyError> {
    parse_expression(src, table)
        .map_err(|e| VerifyError::Malformed(format!("{what} '{src}' does not parse: {e}")))
}

fn variable_index(table: &VarTable, name: &str) -> Option<usize> {
    table.variable_names().iter().position(|v| v == name)
}

/// Re-checks every claim in a serialized report from scratch: the
/// classification, the local-nilpotency outcome, each witness, each
/// branch payload, and the final status aggregation. Returns the
/// number of checks that passed.
pub fn verify_report(json: &str) -> Result<usize, VerifyError> {
    let raw: RawReport =
        serde_json::from_str(json).map_err(|e| VerifyError::Malformed(e.to_string()))?;
    if raw.tool != "lndcert" {
        return Err(VerifyError::Malformed(format!(
            "unknown tool '{}'",
            raw.tool
        )));
    }
    if raw.format_version != 1 {
        return Err(VerifyError::Malformed(format!(
            "unsupported format_version {}",
            raw.format_version
        )));
    }
    let strategy = Strategy::from_str(&raw.options.strategy).map_err(VerifyError::Malformed)?;
    let status = Status::from_str(&raw.status).map_err(VerifyError::Malformed)?;
    if raw.options.max_iter == 0 {
        return Err(VerifyError::Malformed("max_iter is zero".to_string()));
    }
    let table = VarTable::new(
        raw.constants.iter().map(String::as_str),
        raw.variables.iter().map(String::as_str),
    )
    .map_err(|e| VerifyError::Malformed(e.to_string()))?;
    if raw.images.len() != table.num_variables() {
        return Err(VerifyError::Malformed(format!(
            "expected {} images, found {}",
            table.num_variables(),
            raw.images.len()
        )));
    }
    let mut images = Vec::with_capacity(raw.images.len());
    for (i, ri) in raw.images.iter().enumerate() {
        if ri.variable != table.variable_names()[i] {
            return Err(VerifyError::Malformed(format!(
                "images[{i}] is for '{}', expected '{}'",
                ri.variable,
                table.variable_names()[i]
            )));
        }
        images.push(parse_or_malformed(&ri.image, &table, "image")?);
    }
    let d = Derivation::new(&table, images)
        .map_err(|e| VerifyError::Malformed(e.to_string()))?;
    let mut hints = Vec::with_capacity(raw.kernel_hints.len());
    for h in &raw.kernel_hints {
        hints.push(parse_or_malformed(h, &table, "kernel hint")?);
    }

    let mut ck = Checker::new();

    for (h, src) in hints.iter().zip(&raw.kernel_hints) {
        let ok = d.apply(h).map(|q| q.is_zero()).unwrap_or(false);
        ck.check(ok, || format!("kernel hint '{src}' is not in ker D"));
    }

    let class = classify(&d);
    ck.check(
        raw_classification(&class, &table) == raw.classification,
        || "recorded classification does not match the derivation".to_string(),
    );

    let recomputed = d.certify_lnd(raw.options.max_iter);
    match (&recomputed, &raw.lnd_certificate) {
        (Ok(cert), Some(recorded)) => {
            ck.check(&raw_lnd(cert) == recorded, || {
                "recorded local-nilpotency certificate does not match recomputation".to_string()
            });
        }
        (Ok(_), None) => {
            ck.check(false, || {
                "derivation certifies locally nilpotent but no certificate is recorded".to_string()
            });
        }
        (Err(CertifyError::NotLnd), None) => {
            ck.check(status == Status::NotLnd, || {
                format!("derivation is provably not locally nilpotent but status is {status}")
            });
        }
        (Err(CertifyError::BudgetExceeded { .. }), None) => {
            ck.check(status == Status::BudgetExceeded, || {
                format!("iteration budget exhausts but status is {status}")
            });
        }
        (Err(e), Some(_)) => {
            ck.fail(format!(
                "a local-nilpotency certificate is recorded but recomputation gives: {e}"
            ));
        }
        (Err(CertifyError::Ring(e)), None) => {
            ck.fail(format!("recomputation failed structurally: {e}"));
        }
    }

    if raw.lnd_certificate.is_none() {
        ck.check(raw.certificates.is_empty(), || {
            "certificates recorded without a local-nilpotency certificate".to_string()
        });
    } else {
        // certificate list must match the strategy expansion exactly
        let expected: Vec<String> = selected_constructions(strategy, &class)
            .iter()
            .map(|s| match s {
                Strategy::Missing => "MISSING_VARIABLE".to_string(),
                Strategy::Triangular => "TRIANGULAR".to_string(),
                Strategy::Divergence => "DIVERGENCE".to_string(),
                Strategy::Linear => "LINEAR".to_string(),
                Strategy::Auto | Strategy::All => unreachable!("expanded"),
            })
            .collect();
        let recorded: Vec<String> = raw
            .certificates
            .iter()
            .map(|c| c.strategy.kind.clone())
            .collect();
        ck.check(expected == recorded, || {
            format!(
                "strategy '{strategy}' expands to constructions [{}], report records [{}]",
                expected.join(", "),
                recorded.join(", ")
            )
        });

        for (idx, rc) in raw.certificates.iter().enumerate() {
            verify_certificate(&mut ck, idx, &d, rc, &table, &raw, &hints);
        }

        let expected_status = if raw.certificates.is_empty() {
            Status::Unsupported
        } else if raw
            .certificates
            .iter()
            .any(|c| matches!(c.branch.kind.as_str(), "INHERITED_LND" | "COORDINATE_KERNEL"))
        {
            Status::Certified
        } else {
            Status::Inconclusive
        };
        ck.check(status == expected_status, || {
            format!("status is {status} but the certificates imply {expected_status}")
        });
    }

    if ck.failures.is_empty() {
        Ok(ck.passed)
    } else {
        Err(VerifyError::Failed {
            passed: ck.passed,
            failures: ck.failures,
        })
    }
}

fn verify_certificate(
    ck: &mut Checker,
    idx: usize,
    d: &Derivation,
    rc: &RawCertificate,
    table: &Arc<VarTable>,
    raw: &RawReport,
    hints: &[Poly],
) {
    let tag = format!("certificate {}", idx + 1);
    let n = table.num_variables();

    if rc.witness.len() != n {
        ck.fail(format!("{tag}: expected {n} witness images"));
        return;
    }
    let mut images = Vec::with_capacity(n);
    for (i, ri) in rc.witness.iter().enumerate() {
        if ri.variable != table.variable_names()[i] {
            ck.fail(format!("{tag}: witness images out of order"));
            return;
        }
        match parse_expression(&ri.image, table) {
            Ok(p) => images.push(p),
            Err(e) => {
                ck.fail(format!("{tag}: witness image does not parse: {e}"));
                return;
            }
        }
    }
    let e = Derivation::new(table, images).expect("n images");

    ck.check(!e.is_zero(), || format!("{tag}: witness is zero"));
    ck.check(rc.commutation_check, || {
        format!("{tag}: commutation_check is not set")
    });
    ck.check(d.commutes_with(&e).unwrap_or(false), || {
        format!("{tag}: witness does not commute with D")
    });

    match e.certify_lnd(raw.options.max_iter.max(2)) {
        Ok(cert) => ck.check(raw_lnd(&cert) == rc.witness_lnd, || {
            format!("{tag}: recorded witness nilpotency certificate does not match recomputation")
        }),
        Err(err) => ck.fail(format!("{tag}: witness fails local nilpotency: {err}")),
    }

    // the witness must be exactly reproducible from its stated construction
    let rebuilt = match rc.strategy.kind.as_str() {
        "MISSING_VARIABLE" => match rc
            .strategy
            .variable
            .as_deref()
            .and_then(|name| variable_index(table, name))
        {
            Some(j) => witness_missing_variable(d, j).ok(),
            None => None,
        },
        "TRIANGULAR" => match &rc.strategy.order {
            Some(names) => {
                let order: Option<Vec<usize>> = names
                    .iter()
                    .map(|name| variable_index(table, name))
                    .collect();
                order.and_then(|o| witness_triangular(d, &o).ok())
            }
            None => None,
        },
        "DIVERGENCE" => witness_divergence(d).ok(),
        "LINEAR" => crate::structure::detect_linear(d).and_then(|a| witness_linear(d, &a).ok()),
        other => {
            ck.fail(format!("{tag}: unknown strategy kind '{other}'"));
            return;
        }
    };
    ck.check(rebuilt.as_ref() == Some(&e), || {
        format!(
            "{tag}: the {} construction does not reproduce the recorded witness",
            rc.strategy.kind
        )
    });

    match rc.branch.kind.as_str() {
        "INHERITED_LND" => {
            let (Some(raw_sample), Some(raw_image)) = (&rc.branch.sample, &rc.branch.image) else {
                ck.fail(format!("{tag}: INHERITED_LND branch missing sample or image"));
                return;
            };
            let Ok(element) = parse_expression(&raw_sample.element, table) else {
                ck.fail(format!("{tag}: sample element does not parse"));
                return;
            };
            let Ok(image) = parse_expression(raw_image, table) else {
                ck.fail(format!("{tag}: sample image does not parse"));
                return;
            };
            ck.check(
                d.apply(&element).map(|q| q.is_zero()).unwrap_or(false),
                || format!("{tag}: sample element is not in ker D"),
            );
            ck.check(!image.is_zero(), || {
                format!("{tag}: recorded witness image of the sample is zero")
            });
            ck.check(
                e.apply(&element).map(|q| q == image).unwrap_or(false),
                || format!("{tag}: E(sample) does not equal the recorded image"),
            );
            verify_origin(ck, &tag, d, table, raw, hints, raw_sample, &element);
        }
        "COORDINATE_KERNEL" => {
            let Some(raw_forms) = &rc.branch.forms else {
                ck.fail(format!("{tag}: COORDINATE_KERNEL branch missing forms"));
                return;
            };
            ck.check(!d.is_zero(), || {
                format!("{tag}: COORDINATE_KERNEL issued for the zero derivation")
            });
            ck.check(n >= 2, || {
                format!("{tag}: COORDINATE_KERNEL issued with a single variable")
            });
            ck.check(raw_forms.len() == n.saturating_sub(1), || {
                format!("{tag}: expected {} kernel forms", n.saturating_sub(1))
            });
            let mut rows: Vec<Poly> = Vec::new();
            let mut all_parsed = true;
            for (fi, src) in raw_forms.iter().enumerate() {
                let Ok(form) = parse_expression(src, table) else {
                    ck.fail(format!("{tag}: form {} does not parse", fi + 1));
                    all_parsed = false;
                    continue;
                };
                ck.check(!form.is_zero(), || {
                    format!("{tag}: form {} is zero", fi + 1)
                });
                ck.check(
                    d.apply(&form).map(|q| q.is_zero()).unwrap_or(false),
                    || format!("{tag}: D does not kill form {}", fi + 1),
                );
                ck.check(
                    e.apply(&form).map(|q| q.is_zero()).unwrap_or(false),
                    || format!("{tag}: E does not kill form {}", fi + 1),
                );
                match linear_coefficients(&form) {
                    Some(coeffs) => rows.extend(coeffs),
                    None => {
                        ck.fail(format!(
                            "{tag}: form {} is not homogeneous of degree 1",
                            fi + 1
                        ));
                        all_parsed = false;
                    }
                }
            }
            if all_parsed && raw_forms.len() == n.saturating_sub(1) && n >= 2 {
                // pad with a zero row to get a square matrix for the rank check
                rows.extend(std::iter::repeat_with(|| Poly::zero(table)).take(n));
                let m = ConstMatrix::new(table, n, rows).expect("n^2 constant entries");
                ck.check(matrix_rank(&m) == n - 1, || {
                    format!("{tag}: the kernel forms are not independent")
                });
            }
        }
        "INCONCLUSIVE_SAMPLES" => {
            ck.check(
                rc.branch.sample.is_none()
                    && rc.branch.image.is_none()
                    && rc.branch.forms.is_none(),
                || format!("{tag}: INCONCLUSIVE_SAMPLES branch carries payload"),
            );
        }
        other => ck.fail(format!("{tag}: unknown branch kind '{other}'")),
    }
}

fn verify_origin(
    ck: &mut Checker,
    tag: &str,
    d: &Derivation,
    table: &Arc<VarTable>,
    raw: &RawReport,
    hints: &[Poly],
    raw_sample: &RawSample,
    element: &Poly,
) {
    match raw_sample.origin.kind.as_str() {
        "USER_SUPPLIED" => {
            ck.check(hints.iter().any(|h| h == element), || {
                format!("{tag}: sample claims a user hint but matches none")
            });
        }
        "DIXMIER" => {
            let (Some(source), Some(slice_s), Some(slice_r), Some(r_power)) = (
                &raw_sample.origin.source,
                &raw_sample.origin.slice_s,
                &raw_sample.origin.slice_r,
                raw_sample.origin.r_power,
            ) else {
                ck.fail(format!("{tag}: Dixmier origin missing fields"));
                return;
            };
            let parsed = (
                parse_expression(source, table),
                parse_expression(slice_s, table),
                parse_expression(slice_r, table),
            );
            let (Ok(b), Ok(s), Ok(r)) = parsed else {
                ck.fail(format!("{tag}: Dixmier origin fields do not parse"));
                return;
            };
            match dixmier_sample(d, &s, &r, &b, raw.options.max_iter) {
                Ok(Some((recomputed, k))) => {
                    ck.check(&recomputed == element && k == r_power, || {
                        format!("{tag}: Dixmier recomputation does not reproduce the sample")
                    });
                }
                Ok(None) => ck.fail(format!(
                    "{tag}: Dixmier image of the recorded source is zero"
                )),
                Err(err) => ck.fail(format!("{tag}: Dixmier recomputation failed: {err}")),
            }
        }
        "GENERATOR" => {
            ck.check(d.is_zero(), || {
                format!("{tag}: generator origin is only sound for the zero derivation")
            });
            let matches = raw_sample
                .origin
                .source
                .as_deref()
                .and_then(|name| variable_index(table, name))
                .map(|j| element == &Poly::var(table, j))
                .unwrap_or(false);
            ck.check(matches, || {
                format!("{tag}: generator origin does not name the sample variable")
            });
        }
        other => ck.fail(format!("{tag}: unknown sample origin '{other}'")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(
        constants: &[&str],
        variables: &[&str],
        images: &[(&str, &str)],
        hints: &[&str],
    ) -> DerivationSpec {
        DerivationSpec {
            constants: constants.iter().map(|s| s.to_string()).collect(),
            variables: variables.iter().map(|s| s.to_string()).collect(),
            images: images
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
            kernel_hints: hints.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn weitzenboeck() -> DerivationSpec {
        spec(
            &[],
            &["x1", "x2", "x3"],
            &[("x1", "0"), ("x2", "x1"), ("x3", "x2")],
            &[],
        )
    }

    #[test]
    fn weitzenboeck_certifies_and_verifies() {
        let report = run_pipeline(&weitzenboeck(), &PipelineOptions::default()).unwrap();
        assert_eq!(report.status, Status::Certified);
        let lnd = report.lnd_certificate.as_ref().unwrap();
        assert_eq!(lnd.indices, vec![1, 2, 3]);
        assert_eq!(report.certificates.len(), 1);
        let cert = &report.certificates[0];
        assert!(matches!(
            cert.provenance,
            Provenance::MissingVariable { variable: 2 }
        ));
        let passed = verify_report(&report.to_json()).unwrap();
        assert!(passed > 5, "expected a real battery of checks, got {passed}");
        assert!(report.render_text().contains("status: CERTIFIED"));
    }

    #[test]
    fn linear_strategy_finds_inherited_lnd() {
        let options = PipelineOptions {
            strategy: Strategy::Linear,
            ..PipelineOptions::default()
        };
        let report = run_pipeline(&weitzenboeck(), &options).unwrap();
        assert_eq!(report.status, Status::Certified);
        let cert = &report.certificates[0];
        assert!(matches!(cert.provenance, Provenance::Linear));
        let Branch::InheritedLnd { sample, image } = &cert.branch else {
            panic!("expected an inherited-LND branch, got {:?}", cert.branch);
        };
        assert_eq!(sample.element.to_string(), "2*x1*x3 - x2^2");
        assert_eq!(image.to_string(), "2*x1");
        verify_report(&report.to_json()).unwrap();
    }

    #[test]
    fn strategy_all_emits_every_applicable_construction() {
        let options = PipelineOptions {
            strategy: Strategy::All,
            ..PipelineOptions::default()
        };
        let report = run_pipeline(&weitzenboeck(), &options).unwrap();
        let kinds: Vec<String> = report
            .certificates
            .iter()
            .map(|c| c.provenance.to_string())
            .collect();
        assert_eq!(kinds, ["MISSING_VARIABLE", "TRIANGULAR", "LINEAR"]);
        assert_eq!(report.status, Status::Certified);
        verify_report(&report.to_json()).unwrap();
    }

    #[test]
    fn quasi_translation_resolves_coordinate_kernel() {
        let s = spec(
            &[],
            &["x1", "x2"],
            &[("x1", "x1 - x2"), ("x2", "x1 - x2")],
            &[],
        );
        let options = PipelineOptions {
            strategy: Strategy::Divergence,
            ..PipelineOptions::default()
        };
        let report = run_pipeline(&s, &options).unwrap();
        assert_eq!(report.status, Status::Certified);
        let cert = &report.certificates[0];
        let Branch::CoordinateKernel { forms } = &cert.branch else {
            panic!("expected a coordinate-kernel branch, got {:?}", cert.branch);
        };
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0].to_string(), "x1 - x2");
        verify_report(&report.to_json()).unwrap();
    }

    #[test]
    fn non_nilpotent_linear_reports_not_lnd() {
        let s = spec(&[], &["x1"], &[("x1", "x1")], &[]);
        let report = run_pipeline(&s, &PipelineOptions::default()).unwrap();
        assert_eq!(report.status, Status::NotLnd);
        assert!(report.lnd_certificate.is_none());
        assert!(report.certificates.is_empty());
        verify_report(&report.to_json()).unwrap();
    }

    #[test]
    fn square_image_exhausts_budget() {
        let s = spec(&[], &["x1"], &[("x1", "x1^2")], &[]);
        let options = PipelineOptions {
            max_iter: 8,
            ..PipelineOptions::default()
        };
        let report = run_pipeline(&s, &options).unwrap();
        assert_eq!(report.status, Status::BudgetExceeded);
        assert!(report.lnd_certificate.is_none());
        verify_report(&report.to_json()).unwrap();
    }

    #[test]
    fn inapplicable_strategy_is_unsupported() {
        // nothing is missing, triangular, or linear, and divergence is 1
        let s = spec(&[], &["x1"], &[("x1", "x1^2")], &[]);
        let options = PipelineOptions {
            max_iter: 8,
            strategy: Strategy::Linear,
            ..PipelineOptions::default()
        };
        let report = run_pipeline(&s, &options).unwrap();
        // budget wins before the strategy is consulted
        assert_eq!(report.status, Status::BudgetExceeded);

        let s = spec(
            &[],
            &["x1", "x2"],
            &[("x1", "x2^2"), ("x2", "0")],
            &[],
        );
        let options = PipelineOptions {
            strategy: Strategy::Divergence,
            ..PipelineOptions::default()
        };
        let report = run_pipeline(&s, &options).unwrap();
        assert_eq!(report.status, Status::Unsupported);
        assert!(report.certificates.is_empty());
        verify_report(&report.to_json()).unwrap();
    }

    #[test]
    fn zero_derivation_uses_generator_samples() {
        let s = spec(&["t"], &["x1", "x2"], &[("x1", "0"), ("x2", "0")], &[]);
        let report = run_pipeline(&s, &PipelineOptions::default()).unwrap();
        assert_eq!(report.status, Status::Certified);
        let cert = &report.certificates[0];
        let Branch::InheritedLnd { sample, .. } = &cert.branch else {
            panic!("expected an inherited-LND branch");
        };
        assert!(matches!(sample.origin, SampleOrigin::Generator { index: 0 }));
        verify_report(&report.to_json()).unwrap();
    }

    #[test]
    fn kernel_hint_is_used_and_recorded() {
        let s = spec(
            &[],
            &["x1", "x2", "x3"],
            &[("x1", "0"), ("x2", "x1"), ("x3", "x2")],
            &["2*x1*x3 - x2^2"],
        );
        let report = run_pipeline(&s, &PipelineOptions::default()).unwrap();
        assert_eq!(report.status, Status::Certified);
        let Branch::InheritedLnd { sample, .. } = &report.certificates[0].branch else {
            panic!("expected an inherited-LND branch");
        };
        assert!(matches!(sample.origin, SampleOrigin::UserSupplied));
        verify_report(&report.to_json()).unwrap();
    }

    #[test]
    fn bad_hint_is_rejected() {
        let s = spec(
            &[],
            &["x1", "x2"],
            &[("x1", "x2"), ("x2", "0")],
            &["x1"],
        );
        let err = run_pipeline(&s, &PipelineOptions::default()).unwrap_err();
        assert!(matches!(err, PipelineError::HintNotInKernel(h) if h == "x1"));
    }

    #[test]
    fn image_cover_is_validated() {
        let s = spec(&[], &["x1", "x2"], &[("x1", "0")], &[]);
        let err = run_pipeline(&s, &PipelineOptions::default()).unwrap_err();
        assert!(matches!(err, PipelineError::MissingImage(v) if v == "x2"));

        let s = spec(
            &[],
            &["x1"],
            &[("x1", "0"), ("y", "0")],
            &[],
        );
        let err = run_pipeline(&s, &PipelineOptions::default()).unwrap_err();
        assert!(matches!(err, PipelineError::UnknownImageVariable(v) if v == "y"));
    }

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let options = PipelineOptions {
            samples: 6,
            seed: 123,
            strategy: Strategy::All,
            ..PipelineOptions::default()
        };
        let a = run_pipeline(&weitzenboeck(), &options).unwrap().to_json();
        let b = run_pipeline(&weitzenboeck(), &options).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn tampered_reports_fail_verification() {
        let report = run_pipeline(&weitzenboeck(), &PipelineOptions::default()).unwrap();
        let json = report.to_json();

        let wrong_status = json.replacen("\"CERTIFIED\"", "\"INCONCLUSIVE\"", 1);
        assert!(matches!(
            verify_report(&wrong_status),
            Err(VerifyError::Failed { .. })
        ));

        let wrong_image = json.replacen("\"image\": \"x1\"", "\"image\": \"x1 + 1\"", 1);
        assert!(verify_report(&wrong_image).is_err());

        let wrong_indices = json.replacen("[\n      1,\n      2,\n      3\n    ]", "[\n      1,\n      1,\n      3\n    ]", 1);
        assert_ne!(json, wrong_indices, "tamper target must exist");
        assert!(matches!(
            verify_report(&wrong_indices),
            Err(VerifyError::Failed { .. })
        ));

        assert!(matches!(
            verify_report("{\"tool\": \"other\"}"),
            Err(VerifyError::Malformed(_))
        ));
    }

    #[test]
    fn strategy_and_status_round_trip() {
        for s in [
            Strategy::Auto,
            Strategy::Missing,
            Strategy::Triangular,
            Strategy::Divergence,
            Strategy::Linear,
            Strategy::All,
        ] {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        for s in [
            Status::Certified,
            Status::Inconclusive,
            Status::NotLnd,
            Status::Unsupported,
            Status::BudgetExceeded,
        ] {
            assert_eq!(s.name().parse::<Status>().unwrap(), s);
        }
        assert!("weird".parse::<Strategy>().is_err());
    }
}
