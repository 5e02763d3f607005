//! JSON shapes of the library's result records.

use std::collections::BTreeMap;

use qframe_core::{BoundFormulas, EquivalenceResult, FrameBounds, FrameReport, MapReport};
use serde::Serialize;

use crate::formats::{entries_of, Entry, OperatorFile};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundsJson {
    pub lower: f64,
    pub upper: f64,
}

impl From<FrameBounds> for BoundsJson {
    fn from(b: FrameBounds) -> Self {
        Self {
            lower: b.lower,
            upper: b.upper,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormulasJson {
    pub lower: BTreeMap<&'static str, f64>,
    pub upper: BTreeMap<&'static str, f64>,
}

impl From<BoundFormulas> for FormulasJson {
    fn from(f: BoundFormulas) -> Self {
        Self {
            lower: BTreeMap::from([
                ("lambda_min", f.lower_eig),
                ("inverse_operator_norm", f.lower_inverse_norm),
                ("pseudo_inverse_norm", f.lower_pinv),
            ]),
            upper: BTreeMap::from([
                ("lambda_max", f.upper_eig),
                ("operator_norm", f.upper_operator_norm),
                ("synthesis_norm_squared", f.upper_synthesis),
            ]),
        }
    }
}

/// `{status, bounds {lower, upper}, residuals {...}}` plus the spectrum and
/// the three-way bound formulas.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameReportJson {
    pub status: &'static str,
    pub dim: usize,
    pub vectors: usize,
    pub bounds: Option<BoundsJson>,
    pub formulas: Option<FormulasJson>,
    pub spectrum: Vec<f64>,
    pub threshold: f64,
    pub residuals: BTreeMap<&'static str, f64>,
}

impl FrameReportJson {
    pub fn new(report: &FrameReport, dim: usize, vectors: usize) -> Self {
        Self {
            status: report.status.as_str(),
            dim,
            vectors,
            bounds: report.bounds.map(Into::into),
            formulas: report.formulas.map(Into::into),
            spectrum: report.spectrum.clone(),
            threshold: report.threshold,
            residuals: report.residuals.iter().copied().collect(),
        }
    }
}

/// `{relation, intertwiner?, residual, witness?}`
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceJson {
    pub relation: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intertwiner: Option<OperatorFile>,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Entry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse_residual: Option<f64>,
}

impl From<&EquivalenceResult> for EquivalenceJson {
    fn from(r: &EquivalenceResult) -> Self {
        Self {
            relation: r.relation.as_str(),
            intertwiner: r.intertwiner.as_ref().map(OperatorFile::from_matrix),
            residual: r.residual,
            witness: r.witness.as_ref().map(entries_of),
            inverse_residual: r.inverse_residual,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MapReportJson {
    pub surjective: bool,
    pub is_frame: bool,
    pub operator_residual: Option<f64>,
    pub bounds: Option<BoundsJson>,
    pub lower_floor: Option<f64>,
    pub upper_ceiling: Option<f64>,
    pub note: &'static str,
}

pub const IMAGE_FRAME_CRITERION: &str =
    "image frame criterion: {L u_i} is a frame iff L is surjective; its frame operator is L S L*";

impl From<&MapReport> for MapReportJson {
    fn from(r: &MapReport) -> Self {
        Self {
            surjective: r.surjective,
            is_frame: r.is_frame,
            operator_residual: r.operator_residual,
            bounds: r.bounds.map(Into::into),
            lower_floor: r.lower_floor,
            upper_ceiling: r.upper_ceiling,
            note: IMAGE_FRAME_CRITERION,
        }
    }
}
