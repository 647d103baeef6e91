//! Parser for the line-oriented KB text format.
//!
//! Statements start in column 1; an indented line continues the previous
//! statement. `#` starts a comment.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::fact::{Fact, Pred};
use super::pattern::{FactPattern, PTerm, RatExpr};
use super::rule::{ConstructionRule, GenericLemma, NdgKind, NdgTemplate, Op, Premise};
use super::term::{AngleExpr, Ctor, Kind, Rational, Term, TriAngle};
use super::KbError;
use crate::label::PointLabel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    Def(Option<u32>),
    Lemma(Option<u32>),
}

#[derive(Debug, Clone, Default)]
pub struct Document {
    pub points: Vec<PointLabel>,
    pub facts: Vec<(Source, Fact, usize)>,
    pub generics: Vec<GenericLemma>,
    pub rules: Vec<ConstructionRule>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Var(String),
    Int(i64),
    Str(String),
    Sym(char),
    Arrow,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
    space_before: bool,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> KbError {
    KbError::Parse { line, col, msg: msg.into() }
}

fn verr(line: usize, msg: impl Into<String>) -> KbError {
    KbError::Validation { line, msg: msg.into() }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex_line(text: &str, line: usize, out: &mut Vec<Token>) -> Result<(), KbError> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut space = true;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            space = true;
            i += 1;
            continue;
        }
        let tok = if c == '"' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j] != '"' {
                j += 1;
            }
            if j == chars.len() {
                return Err(perr(line, col, "unterminated string"));
            }
            i = j + 1;
            Tok::Str(chars[start..j].iter().collect())
        } else if c == '?' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && is_ident_char(chars[j]) {
                j += 1;
            }
            if j == start {
                return Err(perr(line, col, "expected variable name after `?`"));
            }
            i = j;
            Tok::Var(chars[start..j].iter().collect())
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            i = j;
            Tok::Int(s.parse().map_err(|_| verr(line, format!("integer `{s}` out of range")))?)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && is_ident_char(chars[j]) {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            i = j;
            Tok::Ident(s)
        } else if c == '=' && chars.get(i + 1) == Some(&'>') {
            i += 2;
            Tok::Arrow
        } else if "(),:!*+-/".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(perr(line, col, format!("unexpected character `{c}`")));
        };
        out.push(Token { tok, line, col, space_before: space });
        space = false;
    }
    Ok(())
}

/// Split into statements (continuation lines are indented) and tokenize.
fn statements(text: &str) -> Result<Vec<Vec<Token>>, KbError> {
    let mut stmts: Vec<Vec<Token>> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let mut toks = Vec::new();
        lex_line(raw, line, &mut toks)?;
        if toks.is_empty() {
            continue;
        }
        let continues = raw.starts_with(|c: char| c.is_whitespace());
        match stmts.last_mut() {
            Some(last) if continues => {
                toks[0].space_before = true;
                last.extend(toks);
            }
            _ if continues => return Err(perr(line, 1, "continuation line without a statement")),
            _ => stmts.push(toks),
        }
    }
    Ok(stmts)
}

/// Arithmetic over rationals, variables, π and the triangle angles.
#[derive(Debug, Clone)]
enum Arith {
    Num(Rational),
    Var(usize),
    Pi,
    Base(TriAngle),
    Neg(Box<Arith>),
    Bin(char, Box<Arith>, Box<Arith>),
}

/// c + p·π + Σ b_i·angle_i
#[derive(Debug, Clone, Copy, Default)]
struct Linear {
    c: Rational,
    pi: Rational,
    b: [Rational; 3],
}

impl Linear {
    fn is_const(&self) -> bool {
        self.pi.is_zero() && self.b.iter().all(|x| x.is_zero())
    }
    fn zip(self, o: Linear, f: impl Fn(Rational, Rational) -> Rational) -> Linear {
        Linear { c: f(self.c, o.c), pi: f(self.pi, o.pi), b: [f(self.b[0], o.b[0]), f(self.b[1], o.b[1]), f(self.b[2], o.b[2])] }
    }
    fn scale(self, k: Rational) -> Linear {
        self.zip(Linear::default(), |a, _| a * k)
    }
}

fn tri_index(t: TriAngle) -> usize {
    match t {
        TriAngle::Bac => 0,
        TriAngle::Cba => 1,
        TriAngle::Acb => 2,
    }
}

const TRI: [TriAngle; 3] = [TriAngle::Bac, TriAngle::Cba, TriAngle::Acb];

impl Arith {
    fn has_var(&self) -> bool {
        match self {
            Arith::Var(_) => true,
            Arith::Neg(a) => a.has_var(),
            Arith::Bin(_, a, b) => a.has_var() || b.has_var(),
            _ => false,
        }
    }

    fn linear(&self) -> Result<Linear, String> {
        Ok(match self {
            Arith::Num(r) => Linear { c: *r, ..Default::default() },
            Arith::Pi => Linear { pi: Rational::one(), ..Default::default() },
            Arith::Base(t) => {
                let mut l = Linear::default();
                l.b[tri_index(*t)] = Rational::one();
                l
            }
            Arith::Var(_) => return Err("variables are not allowed here".into()),
            Arith::Neg(a) => a.linear()?.scale(-Rational::one()),
            Arith::Bin(op, a, b) => {
                let (x, y) = (a.linear()?, b.linear()?);
                match op {
                    '+' => x.zip(y, |p, q| p + q),
                    '-' => x.zip(y, |p, q| p - q),
                    '*' if x.is_const() => y.scale(x.c),
                    '*' if y.is_const() => x.scale(y.c),
                    '/' if y.is_const() => {
                        if y.c.is_zero() {
                            return Err("division by zero".into());
                        }
                        x.scale(y.c.recip())
                    }
                    _ => return Err("non-linear angle expression".into()),
                }
            }
        })
    }

    fn rat_expr(&self) -> Result<RatExpr, String> {
        Ok(match self {
            Arith::Num(r) => RatExpr::Const(*r),
            Arith::Var(v) => RatExpr::Var(*v),
            Arith::Pi | Arith::Base(_) => return Err("angles cannot be mixed with variables".into()),
            Arith::Neg(a) => RatExpr::Sub(Box::new(RatExpr::Const(Rational::zero())), Box::new(a.rat_expr()?)),
            Arith::Bin(op, a, b) => {
                let (x, y) = (Box::new(a.rat_expr()?), Box::new(b.rat_expr()?));
                match op {
                    '+' => RatExpr::Add(x, y),
                    '-' => RatExpr::Sub(x, y),
                    '*' => RatExpr::Mul(x, y),
                    _ => RatExpr::Div(x, y),
                }
            }
        })
    }

    fn into_pterm(self) -> Result<PTerm, String> {
        if self.has_var() {
            return self.rat_expr().map(PTerm::Num);
        }
        let l = self.linear()?;
        if l.is_const() {
            return Ok(PTerm::Num(RatExpr::Const(l.c)));
        }
        if !l.c.is_zero() {
            return Err("angle expression has a constant term".into());
        }
        let bases: Vec<usize> = (0..3).filter(|&i| !l.b[i].is_zero()).collect();
        if bases.len() > 1 {
            return Err("angle expression mixes triangle angles".into());
        }
        Ok(PTerm::Angle(match bases.first() {
            Some(&i) => AngleExpr { coeff: l.b[i], base: Some(TRI[i]), plus_pi: l.pi },
            None => AngleExpr { coeff: Rational::zero(), base: None, plus_pi: l.pi },
        }))
    }
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    vars: Vec<String>,
    allow_vars: bool,
    declared: &'a [PointLabel],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or(self.toks.last()) {
            Some(t) if self.pos < self.toks.len() => (t.line, t.col),
            Some(t) => (t.line, t.col + 1),
            None => (0, 0),
        }
    }

    fn line(&self) -> usize {
        self.here().0
    }

    fn err(&self, msg: impl Into<String>) -> KbError {
        let (l, c) = self.here();
        perr(l, c, msg)
    }

    fn next(&mut self) -> Result<Tok, KbError> {
        let t = self.toks.get(self.pos).ok_or_else(|| self.err("unexpected end of statement"))?.tok.clone();
        self.pos += 1;
        Ok(t)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), KbError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.err(format!("expected {t:?}")))
        }
    }

    fn ident(&mut self) -> Result<String, KbError> {
        match self.next()? {
            Tok::Ident(s) => Ok(s),
            other => {
                self.pos -= 1;
                Err(self.err(format!("expected identifier, found {other:?}")))
            }
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn var(&mut self, name: &str) -> Result<usize, KbError> {
        if !self.allow_vars {
            return Err(self.err(format!("variable `?{name}` outside a pattern")));
        }
        Ok(match self.vars.iter().position(|v| v == name) {
            Some(i) => i,
            None => {
                self.vars.push(name.to_string());
                self.vars.len() - 1
            }
        })
    }

    fn next_is_glued_op(&self) -> bool {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Sym(c), space_before: false, .. }) => "+-*/".contains(*c),
            _ => false,
        }
    }

    fn arith_atom(&mut self) -> Result<Arith, KbError> {
        let line = self.line();
        match self.next()? {
            Tok::Int(n) => Ok(Arith::Num(Rational::from_integer(n))),
            Tok::Var(v) => Ok(Arith::Var(self.var(&v)?)),
            Tok::Sym('-') => Ok(Arith::Neg(Box::new(self.arith_atom()?))),
            Tok::Sym('(') => {
                let e = self.arith_sum()?;
                self.expect(Tok::Sym(')'))?;
                Ok(e)
            }
            Tok::Ident(s) if s == "pi" => Ok(Arith::Pi),
            Tok::Ident(s) => match TriAngle::from_name(&s) {
                Some(t) => Ok(Arith::Base(t)),
                None => Err(verr(line, format!("unknown symbol `{s}` in expression"))),
            },
            other => {
                self.pos -= 1;
                Err(self.err(format!("expected number, found {other:?}")))
            }
        }
    }

    fn arith_product(&mut self) -> Result<Arith, KbError> {
        let mut acc = self.arith_atom()?;
        while self.next_is_glued_op() {
            let op = match self.peek() {
                Some(Tok::Sym(c)) if *c == '*' || *c == '/' => *c,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.arith_atom()?;
            if op == '/' {
                if let Arith::Num(r) = rhs {
                    if r.is_zero() {
                        return Err(verr(self.line(), "malformed rational: zero denominator"));
                    }
                }
            }
            acc = Arith::Bin(op, Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn arith_sum(&mut self) -> Result<Arith, KbError> {
        let mut acc = self.arith_product()?;
        while self.next_is_glued_op() {
            let op = match self.peek() {
                Some(Tok::Sym(c)) if *c == '+' || *c == '-' => *c,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.arith_product()?;
            acc = Arith::Bin(op, Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn expression(&mut self) -> Result<PTerm, KbError> {
        let line = self.line();
        let a = self.arith_sum()?;
        a.into_pterm().map_err(|m| verr(line, m))
    }

    fn point(&self, s: &str, line: usize) -> Result<PointLabel, KbError> {
        let p: PointLabel = s.parse().map_err(|_| verr(line, format!("unknown point label `{s}`")))?;
        if !self.declared.contains(&p) {
            return Err(verr(line, format!("point `{s}` is not declared")));
        }
        Ok(p)
    }

    fn pterm(&mut self) -> Result<PTerm, KbError> {
        let line = self.line();
        match self.peek().cloned() {
            Some(Tok::Var(v)) => {
                if self.toks.get(self.pos + 1).is_some_and(|t| !t.space_before && matches!(t.tok, Tok::Sym(c) if "+-*/".contains(c))) {
                    return self.expression();
                }
                self.pos += 1;
                Ok(PTerm::Var(self.var(&v)?))
            }
            Some(Tok::Int(_)) | Some(Tok::Sym('-')) | Some(Tok::Sym('(')) => self.expression(),
            Some(Tok::Ident(s)) => {
                let glued_paren = matches!(self.toks.get(self.pos + 1), Some(Token { tok: Tok::Sym('('), space_before: false, .. }));
                if glued_paren {
                    if let Some(c) = Ctor::from_name(&s) {
                        self.pos += 2;
                        let mut args = Vec::new();
                        loop {
                            args.push(self.pterm()?);
                            if self.eat(&Tok::Sym(')')) {
                                break;
                            }
                            self.expect(Tok::Sym(','))?;
                        }
                        if args.len() != c.arg_kinds().len() {
                            return Err(verr(line, format!("`{}` takes {} arguments", c.name(), c.arg_kinds().len())));
                        }
                        return Ok(PTerm::Obj(c, args));
                    }
                }
                if s == "pi" || TriAngle::from_name(&s).is_some() {
                    return self.expression();
                }
                self.pos += 1;
                Ok(PTerm::Point(self.point(&s, line)?))
            }
            _ => Err(self.err("expected a term")),
        }
    }

    fn fact_pattern(&mut self) -> Result<FactPattern, KbError> {
        let line = self.line();
        let kw = self.ident()?;
        if kw == "sees" {
            let s = self.pterm()?;
            let x = self.pterm()?;
            let y = self.pterm()?;
            let e = self.pterm()?;
            return Ok(FactPattern { pred: Pred::OnLocus, args: vec![s, PTerm::Obj(Ctor::Locus, vec![x, y, e])] });
        }
        let pred = Pred::from_keyword(&kw).ok_or_else(|| verr(line, format!("unknown predicate `{kw}`")))?;
        let mut args = Vec::new();
        for _ in pred.signature() {
            args.push(self.pterm()?);
        }
        Ok(FactPattern { pred, args })
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, KbError>) -> Result<Vec<T>, KbError> {
        let mut out = vec![item(self)?];
        while self.eat(&Tok::Sym(',')) {
            out.push(item(self)?);
        }
        Ok(out)
    }

    fn finish(&self) -> Result<(), KbError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

fn ground(p: &PTerm) -> Term {
    p.subst(&Vec::new()).expect("ground pattern")
}

/// Kind of a pattern term, recording variable kinds as a side effect.
fn infer(p: &PTerm, expect: Kind, kinds: &mut HashMap<usize, Kind>, vars: &[String], line: usize) -> Result<(), KbError> {
    let got = match p {
        PTerm::Var(v) => {
            if let Some(k) = kinds.insert(*v, expect) {
                if k != expect {
                    return Err(verr(line, format!("variable `?{}` used as {} and {}", vars[*v], k.keyword(), expect.keyword())));
                }
            }
            return Ok(());
        }
        PTerm::Point(_) => Kind::Point,
        PTerm::Num(e) => {
            if let RatExpr::Var(v) = e {
                return infer(&PTerm::Var(*v), expect, kinds, vars, line);
            }
            let mut vs = Vec::new();
            p.vars(&mut vs);
            for v in vs {
                infer(&PTerm::Var(v), Kind::Number, kinds, vars, line)?;
            }
            Kind::Number
        }
        PTerm::Angle(_) => Kind::AngleValue,
        PTerm::Obj(c, args) => {
            for (a, k) in args.iter().zip(c.arg_kinds()) {
                infer(a, *k, kinds, vars, line)?;
            }
            c.kind()
        }
    };
    if got != expect {
        return Err(verr(line, format!("expected {}, found {}", expect.keyword(), got.keyword())));
    }
    Ok(())
}

fn infer_fact(f: &FactPattern, kinds: &mut HashMap<usize, Kind>, vars: &[String], line: usize) -> Result<(), KbError> {
    for (a, k) in f.args.iter().zip(f.pred.signature()) {
        infer(a, *k, kinds, vars, line)?;
    }
    Ok(())
}

fn parse_tagged_fact(p: &mut Parser, kw: &str) -> Result<(Source, Fact), KbError> {
    let line = p.line();
    let mut num = None;
    if let Some(Tok::Int(n)) = p.peek().cloned() {
        p.pos += 1;
        p.expect(Tok::Sym(':'))?;
        num = Some(u32::try_from(n).map_err(|_| verr(line, "tag out of range"))?);
    }
    let pat = p.fact_pattern()?;
    let mut kinds = HashMap::new();
    infer_fact(&pat, &mut kinds, &[], line)?;
    let args: Vec<Term> = pat.args.iter().map(ground).collect();
    if pat.pred == Pred::VecRatio && args[4].as_num().is_none_or(|r| r.is_zero()) {
        return Err(verr(line, "vector ratio must be non-zero"));
    }
    let src = if kw == "def" { Source::Def(num) } else { Source::Lemma(num) };
    Ok((src, Fact::new(pat.pred, args)))
}

fn parse_generic(p: &mut Parser) -> Result<GenericLemma, KbError> {
    let line = p.line();
    let id = p.ident()?;
    p.expect(Tok::Sym(':'))?;
    let mut premises = Vec::new();
    let mut negated = Vec::new();
    loop {
        if p.eat(&Tok::Sym('!')) {
            negated.push(p.fact_pattern()?);
        } else {
            premises.push(p.fact_pattern()?);
        }
        if !p.eat(&Tok::Sym(',')) {
            break;
        }
    }
    p.expect(Tok::Arrow)?;
    let conclusions = p.list(|p| p.fact_pattern())?;
    p.finish()?;
    let mut kinds = HashMap::new();
    for f in premises.iter().chain(&negated).chain(&conclusions) {
        infer_fact(f, &mut kinds, &p.vars, line)?;
    }
    let mut bound = Vec::new();
    premises.iter().for_each(|f| bound.extend(f.vars()));
    for f in negated.iter().chain(&conclusions) {
        if let Some(v) = f.vars().into_iter().find(|v| !bound.contains(v)) {
            return Err(verr(line, format!("variable `?{}` is not bound by a positive premise", p.vars[v])));
        }
    }
    Ok(GenericLemma { id, vars: p.vars.clone(), premises, negated, conclusions })
}

const CLAUSES: [&str; 6] = ["needs", "gives", "facts", "ndg", "by", "says"];

fn parse_rule(p: &mut Parser) -> Result<ConstructionRule, KbError> {
    let line = p.line();
    let id = p.ident()?;
    p.expect(Tok::Sym(':'))?;
    let mut premises = Vec::new();
    let mut output = None;
    let mut emits = Vec::new();
    let mut ndg = Vec::new();
    let mut by = None;
    let mut template = None;
    while !p.at_end() {
        let kw = p.ident()?;
        match kw.as_str() {
            "needs" => {
                premises = p.list(|p| {
                    if p.eat(&Tok::Sym('!')) {
                        return Ok(Premise::Not(p.fact_pattern()?));
                    }
                    if let Some(Tok::Ident(s)) = p.peek().cloned() {
                        if let Some(Tok::Var(v)) = p.toks.get(p.pos + 1).map(|t| t.tok.clone()) {
                            if let Some(k) = Kind::from_keyword(&s) {
                                p.pos += 2;
                                return Ok(Premise::Known(k, p.var(&v)?));
                            }
                            if s == "determined" {
                                p.pos += 2;
                                return Ok(Premise::Determined(p.var(&v)?));
                            }
                        }
                    }
                    Ok(Premise::Fact(p.fact_pattern()?))
                })?
            }
            "gives" => output = Some(p.pterm()?),
            "facts" => emits = p.list(|p| p.fact_pattern())?,
            "ndg" => {
                ndg = p.list(|p| {
                    let line = p.line();
                    let name = p.ident()?;
                    let kind = NdgKind::from_name(&name).ok_or_else(|| verr(line, format!("unknown ndg condition `{name}`")))?;
                    p.expect(Tok::Sym('('))?;
                    let args = p.list(|p| p.pterm())?;
                    p.expect(Tok::Sym(')'))?;
                    if args.len() != kind.arity() {
                        return Err(verr(line, format!("`{name}` takes {} arguments", kind.arity())));
                    }
                    Ok(NdgTemplate { kind, args })
                })?
            }
            "by" => {
                let line = p.line();
                let name = p.ident()?;
                let op = Op::from_name(&name).ok_or_else(|| verr(line, format!("unknown operation `{name}`")))?;
                p.expect(Tok::Sym('('))?;
                let args = p.list(|p| p.pterm())?;
                p.expect(Tok::Sym(')'))?;
                by = Some((op, args));
            }
            "says" => match p.next()? {
                Tok::Str(s) => template = Some(s),
                _ => return Err(p.err("expected a quoted template")),
            },
            other => return Err(verr(line, format!("unknown rule clause `{other}` (expected one of {CLAUSES:?})"))),
        }
    }
    let output = output.ok_or_else(|| verr(line, format!("rule `{id}` has no `gives` clause")))?;
    let (op, op_args) = by.ok_or_else(|| verr(line, format!("rule `{id}` has no `by` clause")))?;
    let template = template.unwrap_or_default();
    let rule = ConstructionRule { id, vars: p.vars.clone(), premises, output, emits, ndg, op, op_args, template };
    validate_rule(&rule, line)?;
    Ok(rule)
}

fn validate_rule(r: &ConstructionRule, line: usize) -> Result<(), KbError> {
    let mut kinds: HashMap<usize, Kind> = HashMap::new();
    let mut bound: Vec<usize> = Vec::new();
    for pr in &r.premises {
        match pr {
            Premise::Known(k, v) => {
                infer(&PTerm::Var(*v), *k, &mut kinds, &r.vars, line)?;
                bound.push(*v);
            }
            Premise::Fact(f) => {
                infer_fact(f, &mut kinds, &r.vars, line)?;
                bound.extend(f.vars());
            }
            Premise::Not(f) => infer_fact(f, &mut kinds, &r.vars, line)?,
            Premise::Determined(v) => infer(&PTerm::Var(*v), Kind::AngleValue, &mut kinds, &r.vars, line)?,
        }
    }
    infer(&r.output, r.op.output_kind(), &mut kinds, &r.vars, line)?;
    let mut out_vars = Vec::new();
    r.output.vars(&mut out_vars);
    if out_vars.iter().any(|v| !bound.contains(v)) {
        return Err(verr(line, format!("rule `{}`: output is not bound by the premises", r.id)));
    }
    if let PTerm::Var(v) = r.output {
        if r.known_vars().any(|(_, k)| k == v) {
            return Err(verr(line, format!("rule `{}`: output is also a required-known object", r.id)));
        }
    }
    if r.op_args.len() != r.op.arg_kinds().len() {
        return Err(verr(line, format!("rule `{}`: `{}` takes {} arguments", r.id, r.op.name(), r.op.arg_kinds().len())));
    }
    let known: Vec<usize> = r.known_vars().map(|(_, v)| v).collect();
    for (a, k) in r.op_args.iter().zip(r.op.arg_kinds()) {
        let mut vs = Vec::new();
        a.vars(&mut vs);
        if let Some(v) = vs.iter().find(|v| !bound.contains(v)) {
            return Err(verr(line, format!("rule `{}`: `?{}` is not bound", r.id, r.vars[*v])));
        }
        match k {
            Some(k) => infer(a, *k, &mut kinds, &r.vars, line)?,
            None => {
                if let PTerm::Var(v) = a {
                    if !matches!(kinds.get(v), Some(Kind::Line | Kind::Circle | Kind::ArcPair)) {
                        return Err(verr(line, format!("rule `{}`: `?{}` must be a curve", r.id, r.vars[*v])));
                    }
                }
            }
        }
        if let PTerm::Var(v) = a {
            if kinds.get(v).is_some_and(|k| k.is_object()) && !known.contains(v) {
                return Err(verr(line, format!("rule `{}`: argument `?{}` is not a required-known object", r.id, r.vars[*v])));
            }
        }
    }
    for t in &r.ndg {
        for a in &t.args {
            let mut vs = Vec::new();
            a.vars(&mut vs);
            if let Some(v) = vs.iter().find(|v| !bound.contains(v)) {
                return Err(verr(line, format!("rule `{}`: ndg variable `?{}` is not bound", r.id, r.vars[*v])));
            }
        }
    }
    for f in &r.emits {
        infer_fact(f, &mut kinds, &r.vars, line)?;
        if let Some(v) = f.vars().into_iter().find(|v| !bound.contains(v)) {
            return Err(verr(line, format!("rule `{}`: emitted fact uses unbound `?{}`", r.id, r.vars[v])));
        }
    }
    let mut rest = r.template.as_str();
    while let Some(i) = rest.find('{') {
        let j = rest[i..].find('}').ok_or_else(|| verr(line, format!("rule `{}`: unclosed `{{` in template", r.id)))?;
        let name = &rest[i + 1..i + j];
        if name != "out" && r.var(name).is_none() {
            return Err(verr(line, format!("rule `{}`: template mentions unknown `{name}`", r.id)));
        }
        rest = &rest[i + j..];
    }
    Ok(())
}

pub fn parse(text: &str) -> Result<Document, KbError> {
    let mut doc = Document::default();
    for toks in statements(text)? {
        let declared = doc.points.clone();
        let mut p = Parser { toks: &toks, pos: 0, vars: Vec::new(), allow_vars: false, declared: &declared };
        let line = p.line();
        let kw = p.ident()?;
        match kw.as_str() {
            "point" => {
                let name = p.ident()?;
                p.finish()?;
                let l: PointLabel = name.parse().map_err(|_| verr(line, format!("unknown point label `{name}`")))?;
                if doc.points.contains(&l) {
                    return Err(verr(line, format!("point `{name}` declared twice")));
                }
                doc.points.push(l);
            }
            "def" | "lemma" => {
                let (src, fact) = parse_tagged_fact(&mut p, &kw)?;
                p.finish()?;
                doc.facts.push((src, fact, line));
            }
            "generic" => {
                p.allow_vars = true;
                doc.generics.push(parse_generic(&mut p)?);
            }
            "rule" => {
                p.allow_vars = true;
                doc.rules.push(parse_rule(&mut p)?);
            }
            other => return Err(verr(line, format!("unknown statement `{other}`"))),
        }
    }
    Ok(doc)
}
