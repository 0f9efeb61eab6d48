//! The machine-readable output document and its text rendering.

use std::fmt::Write;

use cyclofactor::poly::text::{format_polynomial, parse_polynomial, CoeffStyle};
use cyclofactor::{FactorShape, Factorization, FieldCtx, Fq, Verification};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputDocument {
    pub meta: Meta,
    pub factors: Vec<FactorEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    pub command: String,
    pub q: u64,
    pub d: u64,
    pub n: u32,
    pub case: String,
    pub target: String,
    pub modulus_degree: u64,
    pub factor_count: usize,
}

/// One factor. `coefficients` is `[c]` for `x^(2^r) - c` and `[a, c]` for
/// `x^(2^(r+1)) + a·x^(2^r) + c`, as residues in `[0, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorEntry {
    pub shape: String,
    pub r: u32,
    pub coefficients: Vec<u64>,
    pub pretty: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationEntry {
    pub product_ok: bool,
    pub irreducible_ok: bool,
    /// `null` when the target is beyond the brute-force oracle's limit.
    pub oracle_match: Option<bool>,
}

impl From<Verification> for VerificationEntry {
    fn from(v: Verification) -> Self {
        VerificationEntry { product_ok: v.product_ok, irreducible_ok: v.irreducible_ok, oracle_match: v.oracle_match }
    }
}

impl VerificationEntry {
    pub fn passed(&self) -> bool {
        self.product_ok && self.irreducible_ok && self.oracle_match != Some(false)
    }
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid document: {0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> DocumentError {
    DocumentError::Invalid(msg.into())
}

impl FactorEntry {
    pub fn from_shape(shape: &FactorShape, ctx: &FieldCtx, style: CoeffStyle) -> Self {
        FactorEntry {
            shape: shape.kind().to_string(),
            r: shape.r(),
            coefficients: shape.coefficients().iter().map(|c| c.value()).collect(),
            pretty: format_polynomial(&shape.expand(ctx), ctx, style),
        }
    }

    /// The shape described by `shape`, `r` and `coefficients`, checked
    /// against `pretty`.
    pub fn to_shape(&self, ctx: &FieldCtx) -> Result<FactorShape, DocumentError> {
        let q = ctx.q();
        if let Some(c) = self.coefficients.iter().find(|&&c| c >= q) {
            return Err(invalid(format!("coefficient {c} is not a residue mod {q}")));
        }
        if self.r > 20 {
            return Err(invalid(format!("r = {} is too large", self.r)));
        }
        let co = |i: usize| ctx.elem(self.coefficients[i]);
        let shape = match (self.shape.as_str(), self.coefficients.len()) {
            ("linear", 1) if self.r == 0 => FactorShape::linear(co(0)),
            ("binomial", 1) if self.r > 0 => FactorShape::binomial(self.r, co(0)),
            ("trinomial", 2) if !co(0).is_zero() => FactorShape::trinomial(ctx, self.r, co(0), co(1)),
            (s, len) => {
                return Err(invalid(format!(
                    "shape {s:?} with r = {} and {len} coefficients is not a canonical factor",
                    self.r
                )))
            }
        };
        let parsed = parse_polynomial(&self.pretty, ctx)
            .map_err(|e| invalid(format!("pretty string {:?}: {e}", self.pretty)))?;
        if FactorShape::from_polynomial(&parsed, ctx) != Some(shape) {
            return Err(invalid(format!("pretty string {:?} does not match the coefficients", self.pretty)));
        }
        Ok(shape)
    }
}

impl OutputDocument {
    pub fn from_factorization(
        command: &str,
        fact: &Factorization,
        ctx: &FieldCtx,
        style: CoeffStyle,
        verification: Option<Verification>,
    ) -> Self {
        OutputDocument {
            meta: Meta {
                command: command.to_string(),
                q: fact.q,
                d: fact.d,
                n: fact.n,
                case: fact.case.to_string(),
                target: match fact.target {
                    cyclofactor::Target::XPowMinusOne => "x^m-1".to_string(),
                    cyclofactor::Target::Cyclotomic => "cyclotomic".to_string(),
                },
                modulus_degree: fact.modulus_degree(),
                factor_count: fact.factors.len(),
            },
            factors: fact.factors.iter().map(|s| FactorEntry::from_shape(s, ctx, style)).collect(),
            verification: verification.map(Into::into),
        }
    }

    /// The factors as shapes, validating every entry.
    pub fn shapes(&self) -> Result<Vec<FactorShape>, DocumentError> {
        let ctx = FieldCtx::new(self.meta.q).map_err(|e| invalid(format!("q: {e}")))?;
        self.factors.iter().map(|f| f.to_shape(&ctx)).collect()
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn render_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

/// Parses and validates a document: the factor count must match the list,
/// degrees must add up, and each entry's pretty string must describe the
/// same factor as its coefficients.
pub fn decode_document(text: &str) -> Result<OutputDocument, DocumentError> {
    let doc: OutputDocument = serde_json::from_str(text)?;
    if doc.meta.factor_count != doc.factors.len() {
        return Err(invalid(format!(
            "factor_count is {} but {} factors are listed",
            doc.meta.factor_count,
            doc.factors.len()
        )));
    }
    let shapes = doc.shapes()?;
    let degree: u64 = shapes.iter().map(FactorShape::degree).sum();
    if degree != doc.meta.modulus_degree {
        return Err(invalid(format!(
            "factor degrees add up to {degree}, not modulus_degree {}",
            doc.meta.modulus_degree
        )));
    }
    Ok(doc)
}

pub fn render_text(doc: &OutputDocument) -> String {
    let m = &doc.meta;
    let mut out = String::new();
    writeln!(
        out,
        "# {} q={} d={} n={} case={} target={} degree={} factors={}",
        m.command, m.q, m.d, m.n, m.case, m.target, m.modulus_degree, m.factor_count
    )
    .unwrap();
    for f in &doc.factors {
        writeln!(out, "{}", f.pretty).unwrap();
    }
    if let Some(v) = &doc.verification {
        let oracle = match v.oracle_match {
            Some(b) => b.to_string(),
            None => "skipped".to_string(),
        };
        writeln!(
            out,
            "# verify: product_ok={} irreducible_ok={} oracle_match={}",
            v.product_ok, v.irreducible_ok, oracle
        )
        .unwrap();
    }
    out
}

/// `c` printed in the requested style.
pub fn format_residue(ctx: &FieldCtx, c: Fq, style: CoeffStyle) -> String {
    match style {
        CoeffStyle::Canonical => c.value().to_string(),
        CoeffStyle::Balanced => ctx.balanced(c).to_string(),
    }
}
