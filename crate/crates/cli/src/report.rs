//! Report schema shared by the text and JSON renderers.
//!
//! Every JSON report carries `"schema": "equifix-report/1"`. Rationals are strings in lowest
//! terms (`"-7/3"`), so reports are diff-stable and never contain floats.

use std::fmt::Write as _;

use equifix_core::finiteness::Fingerprint;
use equifix_core::model::Violation;
use equifix_core::FixedPointModel;
use serde::Serialize;

use crate::document::PointDocument;

pub const SCHEMA: &str = "equifix-report/1";

#[derive(Debug, Serialize)]
pub struct ViolationEntry {
    pub point: Option<usize>,
    pub constraint: &'static str,
    pub detail: String,
}

impl From<&Violation> for ViolationEntry {
    fn from(v: &Violation) -> Self {
        Self { point: v.point, constraint: v.constraint.name(), detail: v.detail.clone() }
    }
}

#[derive(Debug, Serialize)]
pub struct ValidateReport {
    pub schema: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub model: String,
    pub ok: bool,
    pub violations: Vec<ViolationEntry>,
}

impl ValidateReport {
    pub fn text(&self) -> String {
        let mut out = header(&self.label, &self.model);
        for v in &self.violations {
            match v.point {
                Some(p) => writeln!(out, "violation {} at point {}: {}", v.constraint, p, v.detail),
                None => writeln!(out, "violation {}: {}", v.constraint, v.detail),
            }
            .unwrap();
        }
        if self.ok {
            out.push_str("ok: no violations\n");
        } else {
            writeln!(out, "{} violation(s)", self.violations.len()).unwrap();
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct IndexReport {
    pub schema: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub model: String,
    pub twist: String,
    pub function: String,
    pub constant: Option<String>,
    pub limit: Option<String>,
    pub pole: Option<String>,
    pub cohomological: String,
    pub agree: bool,
}

impl IndexReport {
    pub fn text(&self) -> String {
        let mut out = header(&self.label, &self.model);
        writeln!(out, "twist: {}", self.twist).unwrap();
        writeln!(out, "function: {}", self.function).unwrap();
        match &self.constant {
            Some(c) => writeln!(out, "constant {c}").unwrap(),
            None => out.push_str("not constant\n"),
        }
        match (&self.limit, &self.pole) {
            (Some(v), _) => writeln!(out, "value at λ = 1: {v}").unwrap(),
            (None, Some(p)) => writeln!(out, "value at λ = 1: {p}").unwrap(),
            (None, None) => {}
        }
        let verdict = if self.agree { "agrees" } else { "DISAGREES" };
        writeln!(out, "cohomological formula: {} ({verdict})", self.cohomological).unwrap();
        out
    }
}

#[derive(Debug, Serialize)]
pub struct FingerprintEntry {
    pub monomial: String,
    pub value: String,
}

pub fn fingerprint_entries(fp: &Fingerprint) -> Vec<FingerprintEntry> {
    fp.iter().map(|(m, v)| FingerprintEntry { monomial: m.to_string(), value: v.to_string() }).collect()
}

fn render_fingerprint(entries: &[FingerprintEntry]) -> String {
    let parts: Vec<String> = entries.iter().map(|e| format!("{}: {}", e.monomial, e.value)).collect();
    format!("{{{}}}", parts.join(", "))
}

#[derive(Debug, Serialize)]
pub struct FingerprintReport {
    pub schema: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub model: String,
    pub fingerprint: Vec<FingerprintEntry>,
    pub integral: bool,
}

impl FingerprintReport {
    pub fn text(&self) -> String {
        let mut out = header(&self.label, &self.model);
        for e in &self.fingerprint {
            writeln!(out, "{} = {}", e.monomial, e.value).unwrap();
        }
        writeln!(out, "integral: {}", if self.integral { "yes" } else { "no" }).unwrap();
        out
    }
}

fn header(label: &Option<String>, model: &str) -> String {
    match label {
        Some(l) => format!("model {l}: {model}\n"),
        None => format!("model: {model}\n"),
    }
}

#[derive(Debug, Serialize)]
pub struct Params {
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<u32>,
    pub max_branches: u64,
}

#[derive(Debug, Serialize)]
pub struct ModelEntry {
    pub points: Vec<PointDocument>,
    pub euler_characteristic: usize,
    pub fingerprint: Vec<FingerprintEntry>,
    pub passes_integrality: bool,
    pub group: usize,
}

#[derive(Debug, Serialize)]
pub struct CandidateEntry {
    pub points: Vec<PointDocument>,
    pub pontryagin: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CiEntry {
    pub multidegree: String,
    pub p1_coefficient: i64,
    pub euler_characteristic: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<String>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum EnumerateBody {
    General { models: Vec<ModelEntry>, group_count: usize, integral_count: usize },
    Hcp { candidates: Vec<CandidateEntry> },
    Ci { non_semi_negative: Vec<CiEntry>, s3_admissible: Vec<String> },
}

#[derive(Debug, Serialize)]
pub struct EnumerateReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub mode: &'static str,
    pub params: Params,
    pub partial: bool,
    pub reason: Option<String>,
    #[serde(flatten)]
    pub body: EnumerateBody,
}

pub fn points_of(model: &FixedPointModel) -> Vec<PointDocument> {
    crate::document::ModelDocument::from_model(model, None).points
}

fn render_points(points: &[PointDocument]) -> String {
    let parts: Vec<String> = points
        .iter()
        .map(|p| {
            let m: Vec<String> = p.m.iter().map(ToString::to_string).collect();
            let a: Vec<String> = p.a.iter().map(ToString::to_string).collect();
            let sign = if p.eps > 0 { "+" } else { "-" };
            let s3 = if p.s3_fixed { " S3" } else { "" };
            if a.is_empty() {
                format!("[{sign} m=({}){s3}]", m.join(","))
            } else {
                format!("[{sign} m=({}) a=({}){s3}]", m.join(","), a.join(","))
            }
        })
        .collect();
    parts.join(" ")
}

impl EnumerateReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let p = &self.params;
        write!(out, "mode {} n={}", self.mode, p.n).unwrap();
        if let Some(c) = p.c {
            write!(out, " C={c}").unwrap();
        }
        if let Some(k) = p.k {
            write!(out, " k={k}").unwrap();
        }
        if let Some(m) = p.multiplier {
            write!(out, " N={m}").unwrap();
        }
        writeln!(out, " max-branches={}", p.max_branches).unwrap();
        if self.partial {
            out.push_str("PARTIAL: search budget exhausted\n");
        }
        if let Some(r) = &self.reason {
            writeln!(out, "reason: {r}").unwrap();
        }
        match &self.body {
            EnumerateBody::General { models, group_count, integral_count } => {
                writeln!(out, "models: {}", models.len()).unwrap();
                for (i, m) in models.iter().enumerate() {
                    let mark = if m.passes_integrality { "" } else { " (fails integrality)" };
                    writeln!(
                        out,
                        "{:>4}  chi={} group={} {}{mark}",
                        i,
                        m.euler_characteristic,
                        m.group,
                        render_fingerprint(&m.fingerprint)
                    )
                    .unwrap();
                    writeln!(out, "      {}", render_points(&m.points)).unwrap();
                }
                writeln!(out, "fingerprint groups: {group_count}").unwrap();
                writeln!(out, "passing integrality: {integral_count}").unwrap();
            }
            EnumerateBody::Hcp { candidates } => {
                writeln!(out, "candidates: {}", candidates.len()).unwrap();
                if !candidates.is_empty() {
                    out.push_str("   #  p1  pontryagin  points\n");
                }
                for (i, c) in candidates.iter().enumerate() {
                    let p1 = c.pontryagin.first().map_or("-", String::as_str);
                    writeln!(out, "{:>4}  {p1:>2}  ({})  {}", i, c.pontryagin.join(", "), render_points(&c.points)).unwrap();
                }
            }
            EnumerateBody::Ci { non_semi_negative, s3_admissible } => {
                writeln!(out, "non-semi-negative: {}", non_semi_negative.len()).unwrap();
                for e in non_semi_negative {
                    write!(out, "  {}  p1={}x^2  chi={}", e.multidegree, e.p1_coefficient, e.euler_characteristic)
                        .unwrap();
                    if let Some(s) = &e.signature {
                        write!(out, "  signature={s}").unwrap();
                    }
                    out.push('\n');
                }
                if s3_admissible.is_empty() {
                    out.push_str("S3-admissible: none\n");
                } else {
                    writeln!(out, "S3-admissible: {}", s3_admissible.join(" ")).unwrap();
                }
            }
        }
        out
    }
}
