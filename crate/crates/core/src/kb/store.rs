//! Indexed fact sets and conjunctive pattern matching.

use std::collections::{HashMap, HashSet};

use super::fact::{Fact, Pred};
use super::pattern::{Env, FactPattern};
use super::term::Term;

/// Insertion-ordered, deduplicated fact set with lookup by predicate and by argument.
#[derive(Debug, Clone, Default)]
pub struct FactStore {
    facts: Vec<Fact>,
    set: HashSet<Fact>,
    by_pred: HashMap<Pred, Vec<usize>>,
    by_arg: HashMap<(Pred, Term), Vec<usize>>,
}

impl FactStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_facts(facts: impl IntoIterator<Item = Fact>) -> Self {
        let mut s = Self::new();
        for f in facts {
            s.insert(f);
        }
        s
    }

    /// Returns false if the fact was already present.
    pub fn insert(&mut self, f: Fact) -> bool {
        if self.set.contains(&f) {
            return false;
        }
        let id = self.facts.len();
        self.by_pred.entry(f.pred).or_default().push(id);
        let mut seen: Vec<&Term> = Vec::new();
        for a in &f.args {
            if a.kind().is_object() && !seen.contains(&a) {
                seen.push(a);
                self.by_arg.entry((f.pred, a.clone())).or_default().push(id);
            }
        }
        self.set.insert(f.clone());
        self.facts.push(f);
        true
    }

    pub fn contains(&self, f: &Fact) -> bool {
        self.set.contains(f)
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Fact> {
        self.facts.iter()
    }

    /// Facts sorted canonically; the form used for serialization and equality.
    pub fn sorted(&self) -> Vec<Fact> {
        let mut v = self.facts.clone();
        v.sort();
        v
    }

    pub fn with_pred(&self, pred: Pred) -> impl Iterator<Item = &Fact> {
        self.by_pred.get(&pred).into_iter().flatten().map(|&i| &self.facts[i])
    }

    fn candidates(&self, pat: &FactPattern, env: &Env) -> &[usize] {
        let mut best: Option<&[usize]> = None;
        for a in &pat.args {
            if let Some(t) = a.subst(env) {
                if t.kind().is_object() {
                    let ids = self.by_arg.get(&(pat.pred, t)).map_or(&[][..], |v| v.as_slice());
                    if best.is_none_or(|b| ids.len() < b.len()) {
                        best = Some(ids);
                    }
                }
            }
        }
        best.unwrap_or_else(|| self.by_pred.get(&pat.pred).map_or(&[][..], |v| v.as_slice()))
    }

    /// Extend `env` in every way that makes `pat` match a stored fact.
    pub fn match_pattern(&self, pat: &FactPattern, env: &Env, out: &mut Vec<Env>) {
        if let Some(f) = pat.subst(env) {
            if self.contains(&f) {
                out.push(env.clone());
            }
            return;
        }
        for &i in self.candidates(pat, env) {
            pat.unify(&self.facts[i], env, out);
        }
    }
}

/// A stack of stores queried as their union.
#[derive(Clone, Copy)]
pub struct View<'a> {
    pub layers: &'a [&'a FactStore],
}

impl<'a> View<'a> {
    pub fn contains(&self, f: &Fact) -> bool {
        self.layers.iter().any(|s| s.contains(f))
    }

    pub fn match_pattern(&self, pat: &FactPattern, env: &Env) -> Vec<Env> {
        let mut out = Vec::new();
        for s in self.layers {
            s.match_pattern(pat, env, &mut out);
        }
        if self.layers.len() > 1 {
            let mut uniq: Vec<Env> = Vec::with_capacity(out.len());
            for e in out {
                if !uniq.contains(&e) {
                    uniq.push(e);
                }
            }
            out = uniq;
        }
        out
    }

    /// All solutions of a conjunction of positive patterns followed by negated ones.
    pub fn join(&self, pos: &[FactPattern], neg: &[FactPattern], env: Env) -> Vec<Env> {
        let mut frontier = vec![env];
        for p in pos {
            let mut next = Vec::new();
            for e in &frontier {
                next.extend(self.match_pattern(p, e));
            }
            if next.is_empty() {
                return next;
            }
            frontier = next;
        }
        frontier.retain(|e| neg.iter().all(|n| n.subst(e).is_some_and(|f| !self.contains(&f))));
        frontier
    }
}
