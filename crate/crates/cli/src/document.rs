//! Model documents: strict JSON with integer fields only.
//!
//! ```json
//! {
//!   "label": "CP2",
//!   "dim": 4,
//!   "k": 1,
//!   "N": 1,
//!   "star": false,
//!   "points": [{ "m": [1, 2], "eps": 1, "a": [0], "s3_fixed": false }]
//! }
//! ```
//!
//! `label`, `N` and `star` are optional. Without `star` the model claims an S³-action
//! exactly when some point is marked `s3_fixed`.

use equifix_core::model::ModelError;
use equifix_core::{FixedPoint, FixedPointModel, Sign};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dim: u32,
    pub k: usize,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<bool>,
    pub points: Vec<PointDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDocument {
    pub m: Vec<u32>,
    pub eps: i8,
    pub a: Vec<i64>,
    #[serde(default)]
    pub s3_fixed: bool,
}

/// Where and why a document failed to load.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}{}: {message}", at_path(path))]
    Syntax { line: usize, column: usize, path: String, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn at_path(path: &str) -> String {
    if path.is_empty() || path == "." {
        String::new()
    } else {
        format!(" at {path}")
    }
}

impl DocumentError {
    fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Invalid { path: path.into(), message: message.into() }
    }
}

impl ModelDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: ModelDocument = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            DocumentError::Syntax {
                line: inner.line(),
                column: inner.column(),
                path,
                message: strip_position(&inner.to_string()),
            }
        })?;
        Ok(doc)
    }

    pub fn to_model(&self) -> Result<FixedPointModel, DocumentError> {
        if self.dim % 2 == 1 {
            return Err(DocumentError::invalid("dim", format!("real dimension {} is odd", self.dim)));
        }
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let eps = match p.eps {
                    1 => Sign::Plus,
                    -1 => Sign::Minus,
                    other => {
                        return Err(DocumentError::invalid(format!("points[{i}].eps"), format!("{other} is not ±1")))
                    }
                };
                FixedPoint::new(p.m.clone(), eps, p.a.clone(), p.s3_fixed).map_err(|e| model_error(e, Some(i)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let star = self.star.unwrap_or_else(|| self.points.iter().any(|p| p.s3_fixed));
        FixedPointModel::new(self.dim / 2, self.k, self.multiplier, star, points).map_err(|e| model_error(e, None))
    }

    /// The document that serializes `model` with every optional field explicit except `label`.
    pub fn from_model(model: &FixedPointModel, label: Option<String>) -> Self {
        Self {
            label,
            dim: 2 * model.n(),
            k: model.k(),
            multiplier: model.multiplier(),
            star: Some(model.hypothesis_star()),
            points: model
                .points()
                .iter()
                .map(|p| PointDocument {
                    m: p.m().to_vec(),
                    eps: p.eps().to_i64() as i8,
                    a: p.a().to_vec(),
                    s3_fixed: p.is_s3_fixed(),
                })
                .collect(),
        }
    }

    /// Canonical form: points sorted with S³-fixed points first, weights ascending, `star` explicit.
    pub fn canonical(&self) -> Result<Self, DocumentError> {
        Ok(Self::from_model(&self.to_model()?.canonicalized(), self.label.clone()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }
}

/// `index` is the point being built when the error comes from `FixedPoint::new`.
fn model_error(e: ModelError, index: Option<usize>) -> DocumentError {
    let (path, e) = match e {
        ModelError::ZeroWeight { point } => {
            let point = index.unwrap_or(point);
            (format!("points[{point}].m"), ModelError::ZeroWeight { point })
        }
        ModelError::DimensionMismatch { point, .. } => (format!("points[{point}].m"), e),
        ModelError::LineCountMismatch { point, .. } => (format!("points[{point}].a"), e),
        ModelError::ZeroDimension => ("dim".into(), e),
        ModelError::NoPoints => ("points".into(), e),
        ModelError::ZeroMultiplier => ("N".into(), e),
        other => (".".into(), other),
    };
    DocumentError::invalid(path, e.to_string())
}

/// serde_json appends " at line L column C"; the location is reported separately.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}
