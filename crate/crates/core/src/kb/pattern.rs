//! Patterns with `?X` variables, unification against ground terms, substitution.

use std::fmt;

use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Zero};

use super::fact::{variants, Fact, Pred};
use super::term::{AngleExpr, Ctor, Rational, Term};
use crate::label::PointLabel;

/// Rational expression over variables, used in number positions (`1-?R`, `?R/(?R-1)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatExpr {
    Const(Rational),
    Var(usize),
    Add(Box<RatExpr>, Box<RatExpr>),
    Sub(Box<RatExpr>, Box<RatExpr>),
    Mul(Box<RatExpr>, Box<RatExpr>),
    Div(Box<RatExpr>, Box<RatExpr>),
}

impl RatExpr {
    pub fn eval(&self, env: &Env) -> Option<Rational> {
        Some(match self {
            RatExpr::Const(r) => *r,
            RatExpr::Var(v) => env.get(*v)?.as_num()?,
            RatExpr::Add(a, b) => a.eval(env)?.checked_add(&b.eval(env)?)?,
            RatExpr::Sub(a, b) => a.eval(env)?.checked_sub(&b.eval(env)?)?,
            RatExpr::Mul(a, b) => a.eval(env)?.checked_mul(&b.eval(env)?)?,
            RatExpr::Div(a, b) => {
                let d = b.eval(env)?;
                if d.is_zero() {
                    return None;
                }
                a.eval(env)?.checked_div(&d)?
            }
        })
    }

    fn vars(&self, out: &mut Vec<usize>) {
        match self {
            RatExpr::Const(_) => {}
            RatExpr::Var(v) => out.push(*v),
            RatExpr::Add(a, b) | RatExpr::Sub(a, b) | RatExpr::Mul(a, b) | RatExpr::Div(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    fn fmt_with(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &RatExpr, op: &str, b: &RatExpr| -> fmt::Result {
            f.write_str("(")?;
            a.fmt_with(names, f)?;
            f.write_str(op)?;
            b.fmt_with(names, f)?;
            f.write_str(")")
        };
        match self {
            RatExpr::Const(r) => write!(f, "{r}"),
            RatExpr::Var(v) => write!(f, "?{}", names[*v]),
            RatExpr::Add(a, b) => bin(f, a, "+", b),
            RatExpr::Sub(a, b) => bin(f, a, "-", b),
            RatExpr::Mul(a, b) => bin(f, a, "*", b),
            RatExpr::Div(a, b) => bin(f, a, "/", b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PTerm {
    Var(usize),
    Point(PointLabel),
    Obj(Ctor, Vec<PTerm>),
    Num(RatExpr),
    Angle(AngleExpr),
}

pub type Env = Vec<Option<Term>>;

pub trait EnvExt {
    fn get(&self, v: usize) -> Option<&Term>;
}

impl EnvExt for Env {
    fn get(&self, v: usize) -> Option<&Term> {
        self.as_slice().get(v).and_then(|t| t.as_ref())
    }
}

impl PTerm {
    pub fn vars(&self, out: &mut Vec<usize>) {
        match self {
            PTerm::Var(v) => out.push(*v),
            PTerm::Obj(_, args) => args.iter().for_each(|a| a.vars(out)),
            PTerm::Num(e) => e.vars(out),
            PTerm::Point(_) | PTerm::Angle(_) => {}
        }
    }

    /// Ground instance under `env`, or `None` if a variable is unbound or arithmetic fails.
    pub fn subst(&self, env: &Env) -> Option<Term> {
        Some(match self {
            PTerm::Var(v) => env.get(*v)?.clone(),
            PTerm::Point(p) => Term::Point(*p),
            PTerm::Obj(c, args) => {
                let a = args.iter().map(|a| a.subst(env)).collect::<Option<Vec<_>>>()?;
                Term::obj(*c, a)
            }
            PTerm::Num(e) => Term::Num(e.eval(env)?),
            PTerm::Angle(e) => Term::Angle(*e),
        })
    }

    /// All extensions of `env` under which `self` matches `t`.
    pub fn unify(&self, t: &Term, env: &Env, out: &mut Vec<Env>) {
        match (self, t) {
            (PTerm::Var(v), _) => match env.get(*v) {
                Some(b) if b == t => out.push(env.clone()),
                Some(_) => {}
                None => {
                    let mut e = env.clone();
                    e[*v] = Some(t.clone());
                    out.push(e);
                }
            },
            (PTerm::Point(p), Term::Point(q)) if p == q => out.push(env.clone()),
            (PTerm::Angle(a), Term::Angle(b)) if a == b => out.push(env.clone()),
            (PTerm::Num(e), Term::Num(r)) => match e {
                RatExpr::Var(v) => PTerm::Var(*v).unify(t, env, out),
                _ => {
                    if e.eval(env) == Some(*r) {
                        out.push(env.clone())
                    }
                }
            },
            (PTerm::Obj(c, pa), Term::Obj(d, ta)) if c == d && pa.len() == ta.len() => {
                unify_seq(pa, ta, env, out);
                if let Some((i, j)) = c.symmetric_pair() {
                    let mut swapped: Vec<Term> = ta.to_vec();
                    swapped.swap(i, j);
                    if swapped[..] != ta[..] {
                        unify_seq(pa, &swapped, env, out);
                    }
                }
            }
            _ => {}
        }
    }
}

fn unify_seq(ps: &[PTerm], ts: &[Term], env: &Env, out: &mut Vec<Env>) {
    let mut frontier = vec![env.clone()];
    for (p, t) in ps.iter().zip(ts) {
        let mut next = Vec::new();
        for e in &frontier {
            p.unify(t, e, &mut next);
        }
        if next.is_empty() {
            return;
        }
        frontier = next;
    }
    out.extend(frontier);
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactPattern {
    pub pred: Pred,
    pub args: Vec<PTerm>,
}

impl FactPattern {
    pub fn vars(&self) -> Vec<usize> {
        let mut v = Vec::new();
        self.args.iter().for_each(|a| a.vars(&mut v));
        v
    }

    pub fn subst(&self, env: &Env) -> Option<Fact> {
        let args = self.args.iter().map(|a| a.subst(env)).collect::<Option<Vec<_>>>()?;
        if self.pred == Pred::VecRatio && args[4].as_num().is_none_or(|r| r.is_zero()) {
            return None;
        }
        Some(Fact::new(self.pred, args))
    }

    /// Match against every symmetric variant of a stored fact.
    pub fn unify(&self, f: &Fact, env: &Env, out: &mut Vec<Env>) {
        if f.pred != self.pred {
            return;
        }
        let start = out.len();
        for v in variants(f.pred, &f.args) {
            unify_seq(&self.args, &v, env, out);
        }
        dedup_tail(out, start);
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PatDisplay { p: self, names }
    }
}

fn dedup_tail(out: &mut Vec<Env>, start: usize) {
    let mut i = start;
    while i < out.len() {
        if out[start..i].contains(&out[i]) {
            out.remove(i);
        } else {
            i += 1;
        }
    }
}

struct PatDisplay<'a> {
    p: &'a FactPattern,
    names: &'a [String],
}

impl fmt::Display for PatDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.p.pred.keyword())?;
        for a in &self.p.args {
            f.write_str(" ")?;
            fmt_pterm(a, self.names, f)?;
        }
        Ok(())
    }
}

pub fn fmt_pterm(t: &PTerm, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        PTerm::Var(v) => write!(f, "?{}", names[*v]),
        PTerm::Point(p) => write!(f, "{p}"),
        PTerm::Angle(e) => write!(f, "{e}"),
        PTerm::Num(e) => e.fmt_with(names, f),
        PTerm::Obj(c, args) => {
            write!(f, "{}(", c.name())?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                fmt_pterm(a, names, f)?;
            }
            f.write_str(")")
        }
    }
}

pub fn one() -> RatExpr {
    RatExpr::Const(Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::PointLabel::*;

    #[test]
    fn unify_through_symmetric_ctor() {
        let pat = PTerm::Obj(Ctor::Line, vec![PTerm::Point(Ha), PTerm::Var(0)]);
        let mut out = Vec::new();
        pat.unify(&Term::line(A, Ha), &vec![None], &mut out);
        assert_eq!(out, vec![vec![Some(Term::Point(A))]]);
    }

    #[test]
    fn fact_pattern_sees_every_orientation() {
        let f = Fact::new(
            Pred::VecRatio,
            vec![Term::Point(A), Term::Point(G), Term::Point(A), Term::Point(Ma), Term::Num(Rational::new(2, 3))],
        );
        let pat = FactPattern {
            pred: Pred::VecRatio,
            args: vec![PTerm::Var(0), PTerm::Var(1), PTerm::Var(0), PTerm::Var(2), PTerm::Num(RatExpr::Var(3))],
        };
        let mut out = Vec::new();
        pat.unify(&f, &vec![None; 4], &mut out);
        assert_eq!(out.len(), 2);
        let ratios: Vec<_> = out.iter().map(|e| e[3].clone().unwrap()).collect();
        assert!(ratios.contains(&Term::Num(Rational::new(2, 3))));
        assert!(ratios.contains(&Term::Num(Rational::new(3, 2))));
    }

    #[test]
    fn ratio_expressions() {
        let e = RatExpr::Sub(Box::new(one()), Box::new(RatExpr::Var(0)));
        let env = vec![Some(Term::Num(Rational::new(1, 3)))];
        assert_eq!(e.eval(&env), Some(Rational::new(2, 3)));
        let d = RatExpr::Div(Box::new(one()), Box::new(RatExpr::Sub(Box::new(one()), Box::new(one()))));
        assert_eq!(d.eval(&env), None);
    }
}
