//! The machine-readable bound report.
//!
//! One self-describing document per evaluated expression. Ordinals and
//! rationals are serialized in the literal syntax of the DSL, so the format
//! is bit-exact across platforms and a deserialized report compares equal to
//! the one serialized.

use crate::dsl;
use crate::space::{Evaluation, HdClass, SpaceExpr};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub input: String,
    pub normalized: String,
    pub attributes: AttributeReport,
    pub d: BoundInterval,
    pub tdhd: BoundInterval,
    pub hd: HdReport,
    pub trace: Vec<TraceEntry>,
    pub engine: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributeReport {
    pub compact: String,
    pub separable: String,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundInterval {
    pub lower: String,
    pub upper: String,
    pub upper_strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HdReport {
    pub class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub bound: String,
    pub rule: String,
    pub anchor: String,
    pub subject: String,
    pub inputs: Vec<String>,
    pub output: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundReport {
    pub fn new(input: &str, expr: &SpaceExpr, eval: &Evaluation) -> BoundReport {
        let hd = match &eval.hd {
            HdClass::FiniteExactly(v) => HdReport {
                class: "finite-exactly".into(),
                value: Some(v.to_string()),
            },
            HdClass::FiniteAtMost(v) => HdReport {
                class: "finite-at-most".into(),
                value: Some(v.to_string()),
            },
            HdClass::Infinite => HdReport {
                class: "infinite".into(),
                value: None,
            },
            HdClass::Unknown => HdReport {
                class: "unknown".into(),
                value: None,
            },
        };
        let trace = eval
            .full_trace()
            .into_iter()
            .map(|(bound, r)| TraceEntry {
                bound: bound.into(),
                rule: r.rule.into(),
                anchor: r.anchor.into(),
                subject: r.subject.clone(),
                inputs: r.inputs.clone(),
                output: r.output.clone(),
                note: r.note.clone(),
            })
            .collect();
        BoundReport {
            input: input.to_string(),
            normalized: dsl::pretty(expr),
            attributes: AttributeReport {
                compact: eval.attrs.compact.to_string(),
                separable: eval.attrs.separable.to_string(),
                weight: eval.attrs.weight.to_string(),
            },
            d: BoundInterval {
                lower: eval.d.lower.to_string(),
                upper: eval.d.upper.to_string(),
                upper_strict: eval.d.upper_strict,
            },
            tdhd: BoundInterval {
                lower: eval.tdhd.lower.to_string(),
                upper: eval.tdhd.upper.to_string(),
                upper_strict: eval.tdhd.upper_strict,
            },
            hd,
            trace,
            engine: ENGINE_VERSION.to_string(),
        }
    }

    /// Plain-text rendering for the terminal.
    pub fn render_human(&self, with_trace: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "expression: {}", self.input);
        let _ = writeln!(out, "normalized: {}", self.normalized);
        let _ = writeln!(
            out,
            "attributes: compact={} separable={} weight={}",
            self.attributes.compact, self.attributes.separable, self.attributes.weight
        );
        let _ = writeln!(out, "D:    {}", render_interval(&self.d));
        let _ = writeln!(out, "tDHD: {}", render_interval(&self.tdhd));
        let hd = match &self.hd.value {
            Some(v) if self.hd.class == "finite-exactly" => format!("= {v}"),
            Some(v) => format!("<= {v}"),
            None => self.hd.class.clone(),
        };
        let _ = writeln!(out, "HD:   {hd}");
        if with_trace {
            let _ = writeln!(out, "trace:");
            for (i, entry) in self.trace.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  {:>2}. [{}] {} on {} -> {}",
                    i + 1,
                    entry.bound,
                    entry.rule,
                    entry.subject,
                    entry.output
                );
                let _ = writeln!(out, "      {}", entry.anchor);
                if !entry.inputs.is_empty() {
                    let _ = writeln!(out, "      inputs: {}", entry.inputs.join("; "));
                }
                if let Some(note) = &entry.note {
                    let _ = writeln!(out, "      note: {note}");
                }
            }
        }
        out
    }
}

fn render_interval(b: &BoundInterval) -> String {
    let close = if b.upper_strict { ")" } else { "]" };
    format!("[{}, {}{close}", b.lower, b.upper)
}

/// Parses, evaluates and reports in one step; the common path of the CLI.
pub fn evaluate_input(input: &str) -> Result<BoundReport, EvalError> {
    let expr = dsl::parse(input).map_err(EvalError::Parse)?;
    let eval = crate::space::evaluate(&expr).map_err(EvalError::Space)?;
    Ok(BoundReport::new(input, &expr, &eval))
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    Parse(dsl::ParseFailure),
    Space(crate::space::SpaceError),
}

impl std::fmt::Display for EvalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EvalError::Parse(e) => write!(f, "{e}"),
            EvalError::Space(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for EvalError {}
