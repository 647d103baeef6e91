//! Canonical object references, rationals and angle expressions.

use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::label::PointLabel;

pub type Rational = Rational64;

/// Kind of a geometric object (or parameter) a term denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Point,
    Line,
    Circle,
    ArcPair,
    Angle,
    Number,
    AngleValue,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Point => "point",
            Kind::Line => "line",
            Kind::Circle => "circle",
            Kind::ArcPair => "locus",
            Kind::Angle => "angle",
            Kind::Number => "number",
            Kind::AngleValue => "anglexpr",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Kind> {
        Some(match s {
            "point" => Kind::Point,
            "line" => Kind::Line,
            "circle" => Kind::Circle,
            "locus" => Kind::ArcPair,
            "angle" => Kind::Angle,
            _ => return None,
        })
    }

    pub fn is_object(self) -> bool {
        !matches!(self, Kind::Number | Kind::AngleValue)
    }
}

/// Constructors of compound objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ctor {
    /// `line(X,Y)`: the line through two named points.
    Line,
    /// `par(X,p)`: the line through X parallel to p (homothety images of p).
    Par,
    /// `pbis(X,Y)`: side bisector of a chord, introduced lazily during search.
    Pbis,
    /// `circ(X,Y)`: circle centered at X through Y.
    Circ,
    /// `dcirc(X,Y)`: circle with diameter XY.
    Dcirc,
    /// `locus(X,Y,e)`: points seeing XY under angle e.
    Locus,
    /// `ang(X,V,Y)`: the angle at vertex V.
    Ang,
}

impl Ctor {
    pub const ALL: [Ctor; 7] = [Ctor::Line, Ctor::Par, Ctor::Pbis, Ctor::Circ, Ctor::Dcirc, Ctor::Locus, Ctor::Ang];

    pub fn name(self) -> &'static str {
        match self {
            Ctor::Line => "line",
            Ctor::Par => "par",
            Ctor::Pbis => "pbis",
            Ctor::Circ => "circ",
            Ctor::Dcirc => "dcirc",
            Ctor::Locus => "locus",
            Ctor::Ang => "ang",
        }
    }

    pub fn from_name(s: &str) -> Option<Ctor> {
        Ctor::ALL.into_iter().find(|c| c.name() == s)
    }

    pub fn kind(self) -> Kind {
        match self {
            Ctor::Line | Ctor::Par | Ctor::Pbis => Kind::Line,
            Ctor::Circ | Ctor::Dcirc => Kind::Circle,
            Ctor::Locus => Kind::ArcPair,
            Ctor::Ang => Kind::Angle,
        }
    }

    pub fn arg_kinds(self) -> &'static [Kind] {
        match self {
            Ctor::Line | Ctor::Pbis | Ctor::Circ | Ctor::Dcirc => &[Kind::Point, Kind::Point],
            Ctor::Par => &[Kind::Point, Kind::Line],
            Ctor::Locus => &[Kind::Point, Kind::Point, Kind::AngleValue],
            Ctor::Ang => &[Kind::Point, Kind::Point, Kind::Point],
        }
    }

    /// Argument positions that may be swapped without changing the object.
    pub fn symmetric_pair(self) -> Option<(usize, usize)> {
        match self {
            Ctor::Line | Ctor::Pbis | Ctor::Dcirc | Ctor::Locus => Some((0, 1)),
            Ctor::Ang => Some((0, 2)),
            Ctor::Par | Ctor::Circ => None,
        }
    }
}

/// One of the three angles of the triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TriAngle {
    Bac,
    Cba,
    Acb,
}

impl TriAngle {
    pub fn name(self) -> &'static str {
        match self {
            TriAngle::Bac => "BAC",
            TriAngle::Cba => "CBA",
            TriAngle::Acb => "ACB",
        }
    }

    pub fn from_name(s: &str) -> Option<TriAngle> {
        match s {
            "BAC" | "CAB" => Some(TriAngle::Bac),
            "CBA" | "ABC" => Some(TriAngle::Cba),
            "ACB" | "BCA" => Some(TriAngle::Acb),
            _ => None,
        }
    }

    /// The `ang(..)` object carrying this angle.
    pub fn object(self) -> Term {
        use PointLabel::*;
        let (x, v, y) = match self {
            TriAngle::Bac => (B, A, C),
            TriAngle::Cba => (C, B, A),
            TriAngle::Acb => (A, C, B),
        };
        Term::obj(Ctor::Ang, vec![Term::Point(x), Term::Point(v), Term::Point(y)])
    }
}

/// `coeff · base + plus_pi · π`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AngleExpr {
    pub coeff: Rational,
    pub base: Option<TriAngle>,
    pub plus_pi: Rational,
}

impl AngleExpr {
    pub fn value(&self, base_value: Option<f64>) -> Option<f64> {
        let b = match self.base {
            Some(_) => base_value?,
            None => 0.0,
        };
        Some(to_f64(self.coeff) * b + to_f64(self.plus_pi) * std::f64::consts::PI)
    }
}

impl fmt::Display for AngleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if let Some(b) = self.base {
            if !self.coeff.is_zero() {
                if self.coeff.is_one() {
                    write!(f, "{}", b.name())?;
                } else {
                    write!(f, "{}*{}", self.coeff, b.name())?;
                }
                wrote = true;
            }
        }
        if !self.plus_pi.is_zero() || !wrote {
            if wrote {
                f.write_str("+")?;
            }
            if self.plus_pi.is_one() {
                f.write_str("pi")?;
            } else {
                write!(f, "{}*pi", self.plus_pi)?;
            }
        }
        Ok(())
    }
}

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// A ground term: a named point, a compound object, or a parameter.
///
/// Compound terms are always canonical: build them through [`Term::obj`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Point(PointLabel),
    Obj(Ctor, Arc<[Term]>),
    Num(Rational),
    Angle(AngleExpr),
}

impl Term {
    /// Canonicalizing constructor: symmetric argument pairs are sorted and
    /// nested parallels collapse (`par(X, par(Y, p)) = par(X, p)`).
    pub fn obj(ctor: Ctor, mut args: Vec<Term>) -> Term {
        if let Some((i, j)) = ctor.symmetric_pair() {
            if args.len() > j && args[i] > args[j] {
                args.swap(i, j);
            }
        }
        if ctor == Ctor::Par {
            if let Some(Term::Obj(Ctor::Par, inner)) = args.get(1) {
                let base = inner[1].clone();
                args[1] = base;
            }
        }
        Term::Obj(ctor, args.into())
    }

    pub fn point(l: PointLabel) -> Term {
        Term::Point(l)
    }

    pub fn line(a: PointLabel, b: PointLabel) -> Term {
        Term::obj(Ctor::Line, vec![Term::Point(a), Term::Point(b)])
    }

    pub fn circ(center: PointLabel, through: PointLabel) -> Term {
        Term::obj(Ctor::Circ, vec![Term::Point(center), Term::Point(through)])
    }

    pub fn kind(&self) -> Kind {
        match self {
            Term::Point(_) => Kind::Point,
            Term::Obj(c, _) => c.kind(),
            Term::Num(_) => Kind::Number,
            Term::Angle(_) => Kind::AngleValue,
        }
    }

    pub fn as_point(&self) -> Option<PointLabel> {
        match self {
            Term::Point(p) => Some(*p),
            _ => None,
        }
    }

    pub fn as_num(&self) -> Option<Rational> {
        match self {
            Term::Num(r) => Some(*r),
            _ => None,
        }
    }

    /// Every object subterm, including `self` when it is an object.
    pub fn objects(&self, out: &mut Vec<Term>) {
        if self.kind().is_object() {
            out.push(self.clone());
        }
        if let Term::Obj(_, args) = self {
            for a in args.iter() {
                a.objects(out);
            }
        }
    }

    /// All named points mentioned.
    pub fn points(&self, out: &mut Vec<PointLabel>) {
        match self {
            Term::Point(p) => out.push(*p),
            Term::Obj(_, args) => args.iter().for_each(|a| a.points(out)),
            _ => {}
        }
    }

    /// Human-facing name in the register of textbook constructions
    /// (`AH_a`, `k(O,A)`, `∠BAC`).
    pub fn pretty(&self) -> String {
        match self {
            Term::Point(p) => p.pretty().to_string(),
            Term::Num(r) => r.to_string(),
            Term::Angle(e) => e.to_string(),
            Term::Obj(c, a) => match c {
                Ctor::Line => format!("{}{}", a[0].pretty(), a[1].pretty()),
                Ctor::Par => format!("{}∥{}", a[0].pretty(), a[1].pretty()),
                Ctor::Pbis => format!("s({}{})", a[0].pretty(), a[1].pretty()),
                Ctor::Circ => format!("k({},{})", a[0].pretty(), a[1].pretty()),
                Ctor::Dcirc => format!("k({}{})", a[0].pretty(), a[1].pretty()),
                Ctor::Locus => format!("L({},{};{})", a[0].pretty(), a[1].pretty(), a[2].pretty()),
                Ctor::Ang => format!("∠{}{}{}", a[0].pretty(), a[1].pretty(), a[2].pretty()),
            },
        }
    }

    /// Identifier safe for scripts and SVG ids.
    pub fn ident(&self) -> String {
        match self {
            Term::Point(p) => p.ident(),
            other => {
                let mut s: String = other
                    .to_string()
                    .chars()
                    .map(|c| {
                        if c.is_ascii_alphanumeric() {
                            c
                        } else if c == '\'' {
                            'p'
                        } else {
                            '_'
                        }
                    })
                    .collect();
                while s.contains("__") {
                    s = s.replace("__", "_");
                }
                s.trim_end_matches('_').to_string()
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Point(p) => write!(f, "{p}"),
            Term::Num(r) => write!(f, "{r}"),
            Term::Angle(e) => write!(f, "{e}"),
            Term::Obj(c, args) => {
                write!(f, "{}(", c.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use PointLabel::*;

    #[test]
    fn symmetric_ctors_are_canonical() {
        assert_eq!(Term::line(Ha, A), Term::line(A, Ha));
        assert_ne!(Term::circ(O, A), Term::circ(A, O));
        let a1 = Term::obj(Ctor::Ang, vec![Term::Point(C), Term::Point(A), Term::Point(B)]);
        assert_eq!(a1, TriAngle::Bac.object());
    }

    #[test]
    fn nested_parallels_collapse() {
        let bc = Term::line(B, C);
        let inner = Term::obj(Ctor::Par, vec![Term::Point(A), bc.clone()]);
        let outer = Term::obj(Ctor::Par, vec![Term::Point(G), inner]);
        assert_eq!(outer, Term::obj(Ctor::Par, vec![Term::Point(G), bc]));
    }

    #[test]
    fn display_and_pretty() {
        assert_eq!(Term::line(A, Ha).to_string(), "line(A,Ha)");
        assert_eq!(Term::line(A, Ha).pretty(), "AH_a");
        assert_eq!(Term::circ(O, A).pretty(), "k(O,A)");
        let e = AngleExpr { coeff: Rational::new(1, 2), base: Some(TriAngle::Bac), plus_pi: Rational::new(1, 2) };
        assert_eq!(e.to_string(), "1/2*BAC+1/2*pi");
        assert_eq!(Term::line(TaExt, Ta).ident(), "line_Ta_Tpa");
    }
}
