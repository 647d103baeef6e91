//! Ground facts and their predicate-specific symmetries.

use std::fmt;

use num_traits::{One, Zero};

use super::term::{Kind, Rational, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pred {
    /// `online P l`
    OnLine,
    /// `oncircle P k`
    OnCircle,
    /// `perp l m`
    Perp,
    /// `vecratio X Y Z W r`: vector XY = r · vector ZW.
    VecRatio,
    /// `harmonic X Y Z W`: H(X,Y;Z,W).
    Harmonic,
    /// `tangent l k`
    Tangent,
    /// `bisects b l m`: b bisects an angle between l and m.
    Bisects,
    /// `reflect P' P l`: P' is the mirror image of P in l.
    Reflect,
    /// `sidebis l X Y`: l is the perpendicular bisector of XY.
    SideBis,
    /// `onlocus S a`: S lies on the arc pair a.
    OnLocus,
    /// `angleat q V X Y`: q is the angle with vertex V and rays VX, VY.
    AngleAt,
    /// `homothety l Y r p`: l is the image of p under the homothety at Y with ratio r.
    Homothety,
}

impl Pred {
    pub const ALL: [Pred; 12] = [
        Pred::OnLine,
        Pred::OnCircle,
        Pred::Perp,
        Pred::VecRatio,
        Pred::Harmonic,
        Pred::Tangent,
        Pred::Bisects,
        Pred::Reflect,
        Pred::SideBis,
        Pred::OnLocus,
        Pred::AngleAt,
        Pred::Homothety,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Pred::OnLine => "online",
            Pred::OnCircle => "oncircle",
            Pred::Perp => "perp",
            Pred::VecRatio => "vecratio",
            Pred::Harmonic => "harmonic",
            Pred::Tangent => "tangent",
            Pred::Bisects => "bisects",
            Pred::Reflect => "reflect",
            Pred::SideBis => "sidebis",
            Pred::OnLocus => "onlocus",
            Pred::AngleAt => "angleat",
            Pred::Homothety => "homothety",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Pred> {
        Pred::ALL.into_iter().find(|p| p.keyword() == s)
    }

    pub fn signature(self) -> &'static [Kind] {
        use Kind::*;
        match self {
            Pred::OnLine => &[Point, Line],
            Pred::OnCircle => &[Point, Circle],
            Pred::Perp => &[Line, Line],
            Pred::VecRatio => &[Point, Point, Point, Point, Number],
            Pred::Harmonic => &[Point, Point, Point, Point],
            Pred::Tangent => &[Line, Circle],
            Pred::Bisects => &[Line, Line, Line],
            Pred::Reflect => &[Point, Point, Line],
            Pred::SideBis => &[Line, Point, Point],
            Pred::OnLocus => &[Point, ArcPair],
            Pred::AngleAt => &[Angle, Point, Point, Point],
            Pred::Homothety => &[Line, Point, Number, Line],
        }
    }
}

/// Argument permutations (and ratio inversions) that leave a fact's meaning unchanged.
pub fn variants(pred: Pred, args: &[Term]) -> Vec<Vec<Term>> {
    let a = args;
    let swap = |i: usize, j: usize| {
        let mut v = a.to_vec();
        v.swap(i, j);
        v
    };
    match pred {
        Pred::Perp | Pred::Reflect => vec![a.to_vec(), swap(0, 1)],
        Pred::Bisects | Pred::SideBis => vec![a.to_vec(), swap(1, 2)],
        Pred::AngleAt => vec![a.to_vec(), swap(2, 3)],
        Pred::Harmonic => vec![
            a.to_vec(),
            vec![a[1].clone(), a[0].clone(), a[3].clone(), a[2].clone()],
            vec![a[2].clone(), a[3].clone(), a[0].clone(), a[1].clone()],
            vec![a[3].clone(), a[2].clone(), a[1].clone(), a[0].clone()],
        ],
        Pred::VecRatio => {
            let r = a[4].as_num().unwrap_or_else(Rational::one);
            let mut out = vec![a.to_vec(), vec![a[1].clone(), a[0].clone(), a[3].clone(), a[2].clone(), a[4].clone()]];
            if !r.is_zero() {
                let inv = Term::Num(r.recip());
                out.push(vec![a[2].clone(), a[3].clone(), a[0].clone(), a[1].clone(), inv.clone()]);
                out.push(vec![a[3].clone(), a[2].clone(), a[1].clone(), a[0].clone(), inv]);
            }
            out
        }
        _ => vec![a.to_vec()],
    }
}

/// A ground fact, always stored in its canonical (least) orientation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fact {
    pub pred: Pred,
    pub args: Vec<Term>,
}

impl Fact {
    pub fn new(pred: Pred, args: Vec<Term>) -> Fact {
        let args = variants(pred, &args).into_iter().min().expect("at least one variant");
        Fact { pred, args }
    }

    pub fn variants(&self) -> Vec<Vec<Term>> {
        variants(self.pred, &self.args)
    }

    /// Object terms mentioned by the fact, nested ones included.
    pub fn objects(&self) -> Vec<Term> {
        let mut out = Vec::new();
        for a in &self.args {
            a.objects(&mut out);
        }
        out
    }

    /// Facts implied by notation: `line(X,Y)` passes through X and Y, and so on.
    pub fn notational(t: &Term) -> Vec<Fact> {
        use super::term::Ctor;
        let mut out = Vec::new();
        if let Term::Obj(c, a) = t {
            match c {
                Ctor::Line => {
                    out.push(Fact::new(Pred::OnLine, vec![a[0].clone(), t.clone()]));
                    out.push(Fact::new(Pred::OnLine, vec![a[1].clone(), t.clone()]));
                }
                Ctor::Par => out.push(Fact::new(Pred::OnLine, vec![a[0].clone(), t.clone()])),
                Ctor::Circ => out.push(Fact::new(Pred::OnCircle, vec![a[1].clone(), t.clone()])),
                Ctor::Dcirc => {
                    out.push(Fact::new(Pred::OnCircle, vec![a[0].clone(), t.clone()]));
                    out.push(Fact::new(Pred::OnCircle, vec![a[1].clone(), t.clone()]));
                }
                Ctor::Pbis => out.push(Fact::new(Pred::SideBis, vec![t.clone(), a[0].clone(), a[1].clone()])),
                Ctor::Ang => out.push(Fact::new(Pred::AngleAt, vec![t.clone(), a[1].clone(), a[0].clone(), a[2].clone()])),
                Ctor::Locus => {}
            }
        }
        out
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.pred.keyword())?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::PointLabel::*;

    fn p(l: crate::label::PointLabel) -> Term {
        Term::Point(l)
    }

    #[test]
    fn vecratio_orientations_share_one_canonical_form() {
        let r = |n, d| Term::Num(Rational::new(n, d));
        let f1 = Fact::new(Pred::VecRatio, vec![p(A), p(G), p(A), p(Ma), r(2, 3)]);
        let f2 = Fact::new(Pred::VecRatio, vec![p(G), p(A), p(Ma), p(A), r(2, 3)]);
        let f3 = Fact::new(Pred::VecRatio, vec![p(A), p(Ma), p(A), p(G), r(3, 2)]);
        assert_eq!(f1, f2);
        assert_eq!(f1, f3);
        assert_eq!(f1.to_string(), "vecratio A Ma A G 3/2");
    }

    #[test]
    fn harmonic_group() {
        let f1 = Fact::new(Pred::Harmonic, vec![p(B), p(C), p(Ta), p(TaExt)]);
        let f2 = Fact::new(Pred::Harmonic, vec![p(Ta), p(TaExt), p(B), p(C)]);
        let f3 = Fact::new(Pred::Harmonic, vec![p(B), p(C), p(TaExt), p(Ta)]);
        assert_eq!(f1, f2);
        assert_ne!(f1, f3);
    }

    #[test]
    fn notation_facts() {
        let l = Term::line(A, Ha);
        let facts = Fact::notational(&l);
        assert_eq!(facts.len(), 2);
        assert!(facts.iter().all(|f| f.pred == Pred::OnLine));
    }
}
