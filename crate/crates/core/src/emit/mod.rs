//! Output forms of a construction: numbered sentences, a GCLC-style script
//! and an SVG drawing of one instance.

mod gclc;
pub mod interp;
mod svg;
mod text;

pub use gclc::{is_auxiliary_line, to_gclc, Frame, GclcScript, FRAME};
pub use interp::{interpret, GVal, GclcState, ScriptError};
pub use svg::{to_svg, SvgOptions};
pub use text::{sentence, to_text, SentencePlan};

use crate::geom::Tolerance;
use crate::solver::{ConstructionPlan, ProblemSpec};
use crate::verifier::{execute, spec_residual, BranchTrace, Scene};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EmitError {
    #[error("step {step}: rule {rule} has no script form")]
    UnsupportedStep { step: usize, rule: String },
    #[error("no complete trace to render")]
    NoCompleteTrace,
    #[error("could not reproduce the traced value of {0}")]
    BranchNotReproduced(String),
    #[error("script line {line}: {msg}")]
    Script { line: usize, msg: String },
}

/// The trace to render for a scene: the first one meeting the specification,
/// else the first complete one.
pub fn instance_trace(plan: &ConstructionPlan, problem: &ProblemSpec, scene: &Scene, tol: Tolerance) -> Result<BranchTrace, EmitError> {
    let traces = execute(plan, scene);
    let limit = tol.rel * scene.scale();
    let pass = traces.iter().position(|t| spec_residual(t, problem, scene).is_some_and(|r| r <= limit));
    let pick = pass.or_else(|| traces.iter().position(|t| t.is_complete()));
    pick.map(|i| traces[i].clone()).ok_or(EmitError::NoCompleteTrace)
}
