//! Command-line front end: validate model documents, compute twisted signatures and
//! fingerprints, run the enumerators.
//!
//! Exit codes are a stable contract, see [`exit`].

pub mod document;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use equifix_core::ci::{scan_non_semi_negative, star_admissible_non_semi_negative, CompleteIntersection};
use equifix_core::finiteness::{
    bordism_fingerprint, enumerate_admissible_models, fingerprint_partition, integrality_filter, FinitenessError,
};
use equifix_core::hcp::{enumerate_hcp_models, HcpCandidate};
use equifix_core::localization::{cohom_twisted_signature, equivariant_twisted_signature, BundleExpr};
use equifix_core::search::DEFAULT_MAX_BRANCHES;
use equifix_core::su2::enumerate_isolated_tangent_sets;
use equifix_core::FixedPointModel;
use serde::Serialize;

use document::ModelDocument;
use report::*;

pub mod exit {
    pub const OK: u8 = 0;
    pub const VIOLATIONS: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const IO: u8 = 3;
    pub const BUDGET: u8 = 4;
}

const ODD_REASON: &str = "no S³ tangent representation without zero weights";

#[derive(Debug, Parser)]
#[command(name = "equifix", version, about = "Exact fixed point localization for circle and S³ actions")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    General,
    Hcp,
    Ci,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a model document against the fixed-point constraints.
    Validate { path: PathBuf },
    /// Equivariant twisted signature as a function of λ, and its value at λ = 1.
    Index {
        path: PathBuf,
        /// Polynomial in L1..Lk, T with integer coefficients, e.g. "L1^2 + 2*T - L1^-1".
        #[arg(long, default_value = "1")]
        twist: String,
    },
    /// All top-degree characteristic numbers of a model.
    Fingerprint { path: PathBuf },
    /// Exhaustive enumeration of admissible local geometries.
    Enumerate {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Complex dimension.
        #[arg(long)]
        n: u32,
        /// Euler characteristic bound (general mode).
        #[arg(long)]
        c: Option<usize>,
        /// Number of line bundles (general mode).
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Multiplier N of the semi-negativity relation (general mode).
        #[arg(long = "mult", visible_alias = "N", default_value_t = 1)]
        multiplier: u32,
        #[arg(long, env = "EQUIFIX_BUDGET", default_value_t = DEFAULT_MAX_BRANCHES)]
        max_branches: u64,
    },
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: u8, message: String) -> Self {
        Self { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

fn emit<T: Serialize>(format: Format, report: &T, text: impl FnOnce(&T) -> String, code: u8) -> Outcome {
    let stdout = match format {
        Format::Text => text(report),
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
    };
    Outcome { code, stdout, stderr: String::new() }
}

fn load(path: &Path) -> Result<(ModelDocument, FixedPointModel), Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::error(exit::IO, format!("cannot read {}: {e}", path.display())))?;
    let located = |e: document::DocumentError| Outcome::error(exit::PARSE, format!("{}: {e}", path.display()));
    let doc = ModelDocument::parse(&text).map_err(located)?;
    let model = doc.to_model().map_err(located)?;
    Ok((doc, model))
}

pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Validate { path } => validate(cli.format, &path),
        Command::Index { path, twist } => index(cli.format, &path, &twist),
        Command::Fingerprint { path } => fingerprint(cli.format, &path),
        Command::Enumerate { mode, n, c, k, multiplier, max_branches } => {
            enumerate(cli.format, mode, n, c, k, multiplier, max_branches)
        }
    };
    result.unwrap_or_else(|e| e)
}

fn validate(format: Format, path: &Path) -> Result<Outcome, Outcome> {
    let (doc, model) = load(path)?;
    let violations = model.validate();
    let report = ValidateReport {
        schema: SCHEMA,
        command: "validate",
        label: doc.label,
        model: model.to_string(),
        ok: violations.is_empty(),
        violations: violations.iter().map(ViolationEntry::from).collect(),
    };
    let code = if report.ok { exit::OK } else { exit::VIOLATIONS };
    Ok(emit(format, &report, ValidateReport::text, code))
}

fn index(format: Format, path: &Path, twist: &str) -> Result<Outcome, Outcome> {
    let (doc, model) = load(path)?;
    let e = BundleExpr::parse(twist, model.k()).map_err(|e| Outcome::error(exit::PARSE, e.to_string()))?;
    let internal = |e: equifix_core::localization::LocalizationError| Outcome::error(exit::PARSE, e.to_string());
    let f = equivariant_twisted_signature(&model, &e).map_err(internal)?;
    let cohom = cohom_twisted_signature(&model, &e).map_err(internal)?;
    let (limit, pole) = match f.limit_at_one() {
        Ok(v) => (Some(v), None),
        Err(err) => (None, Some(err.to_string())),
    };
    let report = IndexReport {
        schema: SCHEMA,
        command: "index",
        label: doc.label,
        model: model.to_string(),
        twist: e.to_string(),
        function: f.to_string(),
        constant: f.is_constant().map(|c| c.to_string()),
        agree: limit.as_ref() == Some(&cohom),
        limit: limit.map(|v| v.to_string()),
        pole,
        cohomological: cohom.to_string(),
    };
    Ok(emit(format, &report, IndexReport::text, exit::OK))
}

fn fingerprint(format: Format, path: &Path) -> Result<Outcome, Outcome> {
    let (doc, model) = load(path)?;
    let fp = bordism_fingerprint(&model);
    let report = FingerprintReport {
        schema: SCHEMA,
        command: "fingerprint",
        label: doc.label,
        model: model.to_string(),
        integral: fp.is_integral(),
        fingerprint: fingerprint_entries(&fp),
    };
    Ok(emit(format, &report, FingerprintReport::text, exit::OK))
}

fn general_body(models: &[FixedPointModel]) -> EnumerateBody {
    let groups = fingerprint_partition(models);
    let mut group_of = vec![0; models.len()];
    for (g, members) in groups.iter().enumerate() {
        for &i in members {
            group_of[i] = g;
        }
    }
    let (kept, _) = integrality_filter(models);
    let entries = models
        .iter()
        .zip(&group_of)
        .map(|(m, &group)| ModelEntry {
            points: points_of(m),
            euler_characteristic: m.euler_characteristic(),
            fingerprint: fingerprint_entries(&bordism_fingerprint(m)),
            passes_integrality: kept.contains(m),
            group,
        })
        .collect();
    EnumerateBody::General { models: entries, group_count: groups.len(), integral_count: kept.len() }
}

fn hcp_body(candidates: &[HcpCandidate]) -> EnumerateBody {
    EnumerateBody::Hcp {
        candidates: candidates
            .iter()
            .map(|c| CandidateEntry {
                points: points_of(&c.model),
                pontryagin: c.pontryagin.iter().map(ToString::to_string).collect(),
            })
            .collect(),
    }
}

fn ci_entry(ci: &CompleteIntersection) -> CiEntry {
    CiEntry {
        multidegree: ci.to_string(),
        p1_coefficient: ci.first_pontryagin_coefficient(),
        euler_characteristic: ci.euler_characteristic().to_string(),
        signature: ci.signature().ok().map(|s| s.to_string()),
    }
}

fn enumerate(
    format: Format,
    mode: Mode,
    n: u32,
    c: Option<usize>,
    k: usize,
    multiplier: u32,
    max_branches: u64,
) -> Result<Outcome, Outcome> {
    let odd = enumerate_isolated_tangent_sets(n).is_empty();
    let reason = odd.then(|| ODD_REASON.to_string());
    let mut report = EnumerateReport {
        schema: SCHEMA,
        command: "enumerate",
        mode: "",
        params: Params { n, c: None, k: None, multiplier: None, max_branches },
        partial: false,
        reason,
        body: EnumerateBody::Hcp { candidates: Vec::new() },
    };
    let mut code = exit::OK;
    match mode {
        Mode::General => {
            let c = c.ok_or_else(|| Outcome::error(exit::PARSE, "--mode general requires --c".into()))?;
            report.mode = "general";
            report.params.c = Some(c);
            report.params.k = Some(k);
            report.params.multiplier = Some(multiplier);
            let models = match enumerate_admissible_models(n, c, k, multiplier, max_branches) {
                Ok(models) => models,
                Err(FinitenessError::Budget(b)) => {
                    report.partial = true;
                    code = exit::BUDGET;
                    b.partial
                }
                Err(e @ FinitenessError::InvalidBounds(_)) => return Err(Outcome::error(exit::PARSE, e.to_string())),
            };
            report.body = general_body(&models);
        }
        Mode::Hcp => {
            report.mode = "hcp";
            let candidates = match enumerate_hcp_models(n, max_branches) {
                Ok(c) => c,
                Err(b) => {
                    report.partial = true;
                    code = exit::BUDGET;
                    b.partial
                }
            };
            report.body = hcp_body(&candidates);
        }
        Mode::Ci => {
            report.mode = "ci";
            report.body = EnumerateBody::Ci {
                non_semi_negative: scan_non_semi_negative(n).iter().map(ci_entry).collect(),
                s3_admissible: star_admissible_non_semi_negative(n).iter().map(ToString::to_string).collect(),
            };
        }
    }
    Ok(emit(format, &report, EnumerateReport::text, code))
}
