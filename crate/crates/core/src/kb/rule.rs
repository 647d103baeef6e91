//! Generic lemmas and primitive construction rules.

use super::pattern::{FactPattern, PTerm};
use super::term::Kind;

/// `generic id: premises => conclusions`, closed to a fixpoint before search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericLemma {
    pub id: String,
    pub vars: Vec<String>,
    pub premises: Vec<FactPattern>,
    pub negated: Vec<FactPattern>,
    pub conclusions: Vec<FactPattern>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Premise {
    /// The object bound to the variable must already be constructed.
    Known(Kind, usize),
    Fact(FactPattern),
    Not(FactPattern),
    /// An angle expression whose base angle object is already constructed.
    Determined(usize),
}

/// Numeric realization of a rule (the geometry kernel call it stands for).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    LineThrough,
    CircleCenterThrough,
    Intersect,
    PerpBisector,
    PerpThrough,
    DiameterCircle,
    Circumcircle,
    AngleLocus,
    Reflect,
    TangentCircle,
    TangentLines,
    AngleMeasure,
    Bisectors,
    MirrorLine,
    HomothetyLine,
    RatioPoint,
    HarmonicConjugate,
}

impl Op {
    pub const ALL: [Op; 17] = [
        Op::LineThrough,
        Op::CircleCenterThrough,
        Op::Intersect,
        Op::PerpBisector,
        Op::PerpThrough,
        Op::DiameterCircle,
        Op::Circumcircle,
        Op::AngleLocus,
        Op::Reflect,
        Op::TangentCircle,
        Op::TangentLines,
        Op::AngleMeasure,
        Op::Bisectors,
        Op::MirrorLine,
        Op::HomothetyLine,
        Op::RatioPoint,
        Op::HarmonicConjugate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Op::LineThrough => "line_through",
            Op::CircleCenterThrough => "circle_center_through",
            Op::Intersect => "intersect",
            Op::PerpBisector => "perp_bisector",
            Op::PerpThrough => "perp_through",
            Op::DiameterCircle => "diameter_circle",
            Op::Circumcircle => "circumcircle",
            Op::AngleLocus => "angle_locus",
            Op::Reflect => "reflect",
            Op::TangentCircle => "tangent_circle",
            Op::TangentLines => "tangent_lines",
            Op::AngleMeasure => "angle_measure",
            Op::Bisectors => "bisectors",
            Op::MirrorLine => "mirror_line",
            Op::HomothetyLine => "homothety_line",
            Op::RatioPoint => "ratio_point",
            Op::HarmonicConjugate => "harmonic_conjugate",
        }
    }

    pub fn from_name(s: &str) -> Option<Op> {
        Op::ALL.into_iter().find(|o| o.name() == s)
    }

    /// Argument kinds; `None` accepts any curve (line, circle or arc pair).
    pub fn arg_kinds(self) -> &'static [Option<Kind>] {
        use Kind::*;
        const P: Option<Kind> = Some(Point);
        const L: Option<Kind> = Some(Line);
        match self {
            Op::LineThrough | Op::CircleCenterThrough | Op::PerpBisector | Op::DiameterCircle => &[P, P],
            Op::Intersect => &[None, None],
            Op::PerpThrough | Op::Reflect | Op::TangentCircle => &[P, L],
            Op::Circumcircle | Op::AngleMeasure | Op::HarmonicConjugate => &[P, P, P],
            Op::AngleLocus => &[P, P, Some(AngleValue)],
            Op::TangentLines => &[P, Some(Circle)],
            Op::Bisectors | Op::MirrorLine => &[L, L],
            Op::HomothetyLine => &[P, Some(Number), L],
            Op::RatioPoint => &[P, P, P, Some(Number)],
        }
    }

    pub fn output_kind(self) -> Kind {
        match self {
            Op::LineThrough
            | Op::PerpBisector
            | Op::PerpThrough
            | Op::TangentLines
            | Op::Bisectors
            | Op::MirrorLine
            | Op::HomothetyLine => Kind::Line,
            Op::CircleCenterThrough | Op::DiameterCircle | Op::Circumcircle | Op::TangentCircle => Kind::Circle,
            Op::Intersect | Op::Reflect | Op::RatioPoint | Op::HarmonicConjugate => Kind::Point,
            Op::AngleLocus => Kind::ArcPair,
            Op::AngleMeasure => Kind::Angle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NdgKind {
    Distinct,
    NonCollinear,
    NotOnLine,
    Intersects,
    OutsideCircle,
    NonZeroAngle,
}

impl NdgKind {
    pub const ALL: [NdgKind; 6] =
        [NdgKind::Distinct, NdgKind::NonCollinear, NdgKind::NotOnLine, NdgKind::Intersects, NdgKind::OutsideCircle, NdgKind::NonZeroAngle];

    pub fn name(self) -> &'static str {
        match self {
            NdgKind::Distinct => "distinct",
            NdgKind::NonCollinear => "noncollinear",
            NdgKind::NotOnLine => "notonline",
            NdgKind::Intersects => "intersects",
            NdgKind::OutsideCircle => "outside",
            NdgKind::NonZeroAngle => "nonzeroangle",
        }
    }

    pub fn from_name(s: &str) -> Option<NdgKind> {
        NdgKind::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn arity(self) -> usize {
        match self {
            NdgKind::NonCollinear => 3,
            NdgKind::NonZeroAngle => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NdgTemplate {
    pub kind: NdgKind,
    pub args: Vec<PTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionRule {
    pub id: String,
    pub vars: Vec<String>,
    pub premises: Vec<Premise>,
    pub output: PTerm,
    pub emits: Vec<FactPattern>,
    pub ndg: Vec<NdgTemplate>,
    pub op: Op,
    pub op_args: Vec<PTerm>,
    pub template: String,
}

impl ConstructionRule {
    pub fn var(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn known_vars(&self) -> impl Iterator<Item = (Kind, usize)> + '_ {
        self.premises.iter().filter_map(|p| match p {
            Premise::Known(k, v) => Some((*k, *v)),
            _ => None,
        })
    }
}
