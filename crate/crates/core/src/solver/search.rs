use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::Instant;

use super::{Budget, ConstructionPlan, ConstructionStep, FailureKind, NdgCondition, ProblemSpec, SolveError};
use crate::exec::{apply_op, eval_ndg, Arg};
use crate::geom::{Tolerance, Vec2};
use crate::kb::model::{Model, Triangle, Value};
use crate::kb::pattern::Env;
use crate::kb::store::View;
use crate::kb::term::to_f64;
use crate::kb::{ConstructionRule, Ctor, Fact, FactStore, Kind, KnowledgeBase, NdgKind, Pred, Premise, Term};

/// Fixed generic triangles used to reject instantiations whose symbolic output
/// does not match the numeric one (coinciding objects, wrong branch family).
fn reference_models() -> Vec<Model> {
    let tol = Tolerance::default();
    [[(0.0, 0.0), (7.0, 0.0), (2.9, 4.6)], [(0.0, 0.0), (9.0, 0.0), (-2.1, 3.7)]]
        .iter()
        .map(|[a, b, c]| {
            let v = |p: &(f64, f64)| Vec2::new(p.0, p.1);
            let tri = Triangle::new(v(a), v(b), v(c), &tol).expect("reference triangle is generic");
            Model::new(tri, tol)
        })
        .collect()
}

struct Candidate {
    key: (Reverse<usize>, Vec<Term>, Term),
    env: Env,
    args: Vec<Term>,
    output: Term,
    ndg: Vec<NdgCondition>,
}

struct Search<'a> {
    kb: &'a KnowledgeBase,
    overlay: FactStore,
    extra: BTreeSet<Term>,
    known: HashMap<Term, usize>,
    by_kind: BTreeMap<Kind, Vec<Term>>,
    goal: Vec<Term>,
    models: Vec<Model>,
    /// Circles with a named center, with the points known to lie on them.
    circles: Vec<(Term, Term, Vec<Term>)>,
    chords_done: BTreeSet<(Term, Term, Term)>,
}

pub fn solve(kb: &KnowledgeBase, problem: &ProblemSpec, budget: Budget) -> Result<ConstructionPlan, SolveError> {
    for &p in problem.given.iter().chain(&problem.goal) {
        if !kb.vocabulary.is_empty() && !kb.vocabulary.contains(&p) {
            return Err(SolveError::UnknownLabel(p));
        }
    }
    let mut s = Search::new(kb, problem);
    let start = Instant::now();
    let mut plan = ConstructionPlan { given: problem.given.clone(), goal: problem.goal.clone(), steps: Vec::new(), solved: false };
    loop {
        if s.goal.iter().all(|g| s.known.contains_key(g)) {
            plan.solved = true;
            return Ok(plan);
        }
        if plan.steps.len() >= budget.max_steps || start.elapsed() >= budget.max_time {
            return Err(SolveError::Failure { kind: FailureKind::Budget, trace: plan });
        }
        s.chord_prepass();
        match s.next_step() {
            Some(step) => {
                s.add_known(step.output.clone(), plan.steps.len() + 1);
                plan.steps.push(step);
            }
            None => return Err(SolveError::Failure { kind: FailureKind::Exhausted, trace: plan }),
        }
    }
}

impl<'a> Search<'a> {
    fn new(kb: &'a KnowledgeBase, problem: &ProblemSpec) -> Search<'a> {
        let mut circles = Vec::new();
        for t in kb.admissible() {
            if let Term::Obj(Ctor::Circ, a) = t {
                let on: Vec<Term> = kb.facts().with_pred(Pred::OnCircle).filter(|f| &f.args[1] == t).map(|f| f.args[0].clone()).collect();
                circles.push((t.clone(), a[0].clone(), on));
            }
        }
        let mut s = Search {
            kb,
            overlay: FactStore::new(),
            extra: BTreeSet::new(),
            known: HashMap::new(),
            by_kind: BTreeMap::new(),
            goal: problem.goal.iter().map(|&p| Term::Point(p)).collect(),
            models: reference_models(),
            circles,
            chords_done: BTreeSet::new(),
        };
        for &p in &problem.given {
            s.add_known(Term::Point(p), 0);
        }
        s
    }

    fn add_known(&mut self, t: Term, prov: usize) {
        if self.known.insert(t.clone(), prov).is_none() {
            self.by_kind.entry(t.kind()).or_default().push(t);
        }
    }

    fn admissible(&self, t: &Term) -> bool {
        self.kb.is_admissible(t) || self.extra.contains(t) || self.goal.contains(t)
    }

    /// Chord form of "the center of a circle lies on the side bisector of any arc",
    /// instantiated only for chords whose endpoints are constructed.
    fn chord_prepass(&mut self) {
        let mut new = Vec::new();
        for (k, center, on) in &self.circles {
            for (i, p) in on.iter().enumerate() {
                for q in &on[i + 1..] {
                    if !self.known.contains_key(p) || !self.known.contains_key(q) {
                        continue;
                    }
                    let key = (k.clone(), p.clone(), q.clone());
                    if self.chords_done.contains(&key) {
                        continue;
                    }
                    new.push((key, center.clone()));
                }
            }
        }
        for ((k, p, q), center) in new {
            self.chords_done.insert((k, p.clone(), q.clone()));
            if p == center || q == center {
                continue;
            }
            let has_bisector = self
                .kb
                .facts()
                .with_pred(Pred::SideBis)
                .chain(self.overlay.with_pred(Pred::SideBis))
                .any(|f| (f.args[1] == p && f.args[2] == q) || (f.args[1] == q && f.args[2] == p));
            if has_bisector {
                continue;
            }
            let l = Term::obj(Ctor::Pbis, vec![p.clone(), q.clone()]);
            self.overlay.insert(Fact::new(Pred::SideBis, vec![l.clone(), p, q]));
            self.overlay.insert(Fact::new(Pred::OnLine, vec![center, l.clone()]));
            self.extra.insert(l);
        }
    }

    fn next_step(&mut self) -> Option<ConstructionStep> {
        let kb = self.kb;
        for rule in &kb.rules {
            let mut cands = self.candidates(rule);
            cands.sort_by(|a, b| a.key.cmp(&b.key));
            for c in cands {
                if self.guard(rule, &c) {
                    let bindings = rule.vars.iter().zip(&c.env).filter_map(|(v, t)| t.clone().map(|t| (v.clone(), t))).collect();
                    return Some(ConstructionStep {
                        rule: rule.id.clone(),
                        bindings,
                        op: rule.op,
                        args: c.args,
                        output: c.output,
                        ndg: c.ndg,
                    });
                }
            }
        }
        None
    }

    fn envs(&self, rule: &ConstructionRule) -> Vec<Env> {
        let layers = [self.kb.facts(), &self.overlay];
        let view = View { layers: &layers };
        let mut frontier: Vec<Env> = vec![vec![None; rule.vars.len()]];
        for prem in &rule.premises {
            let mut next = Vec::new();
            for env in frontier {
                match prem {
                    Premise::Known(kind, v) => match &env[*v] {
                        Some(t) => {
                            if self.known.contains_key(t) {
                                next.push(env);
                            }
                        }
                        None => {
                            for t in self.by_kind.get(kind).into_iter().flatten() {
                                let mut e = env.clone();
                                e[*v] = Some(t.clone());
                                next.push(e);
                            }
                        }
                    },
                    Premise::Fact(p) => next.extend(view.match_pattern(p, &env)),
                    Premise::Not(p) => {
                        if p.subst(&env).is_some_and(|f| !view.contains(&f)) {
                            next.push(env);
                        }
                    }
                    Premise::Determined(v) => {
                        let ok = match &env[*v] {
                            Some(Term::Angle(e)) => e.base.is_none_or(|b| self.known.contains_key(&b.object())),
                            _ => false,
                        };
                        if ok {
                            next.push(env);
                        }
                    }
                }
            }
            if next.is_empty() {
                return next;
            }
            frontier = next;
        }
        frontier
    }

    fn candidates(&self, rule: &ConstructionRule) -> Vec<Candidate> {
        let mut out: Vec<Candidate> = Vec::new();
        let mut seen = BTreeSet::new();
        for env in self.envs(rule) {
            let Some(output) = rule.output.subst(&env) else { continue };
            if self.known.contains_key(&output) || !self.admissible(&output) {
                continue;
            }
            let Some(args) = rule.op_args.iter().map(|a| a.subst(&env)).collect::<Option<Vec<_>>>() else { continue };
            let Some(ndg) = rule
                .ndg
                .iter()
                .map(|n| Some(NdgCondition { kind: n.kind, args: n.args.iter().map(|a| a.subst(&env)).collect::<Option<_>>()? }))
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            if ndg.iter().any(syntactically_degenerate) {
                continue;
            }
            if !seen.insert((args.clone(), output.clone())) {
                continue;
            }
            let recency = args
                .iter()
                .flat_map(|a| match a {
                    Term::Angle(e) => e.base.map(|b| b.object()),
                    t => Some(t.clone()),
                })
                .filter_map(|t| self.known.get(&t).copied())
                .max()
                .unwrap_or(0);
            out.push(Candidate { key: (Reverse(recency), args.clone(), output.clone()), env, args, output, ndg });
        }
        out
    }

    /// The step must produce its claimed output on every reference triangle.
    fn guard(&mut self, rule: &ConstructionRule, c: &Candidate) -> bool {
        self.models.iter_mut().all(|m| step_matches(m, rule, &c.args, &c.output, &c.ndg))
    }
}

fn syntactically_degenerate(n: &NdgCondition) -> bool {
    match n.kind {
        NdgKind::Distinct | NdgKind::Intersects | NdgKind::NonCollinear => {
            n.args.iter().enumerate().any(|(i, a)| n.args[i + 1..].contains(a))
        }
        _ => false,
    }
}

/// Resolve a step argument on a model.
pub(crate) fn model_arg(m: &mut Model, t: &Term) -> Option<Arg> {
    Some(match t {
        Term::Num(r) => Arg::Scalar(to_f64(*r)),
        Term::Angle(e) => Arg::Scalar(e.value(e.base.map(|b| m.tri.angle(b)))?),
        t => Arg::Val(m.value(t)?),
    })
}

fn step_matches(m: &mut Model, rule: &ConstructionRule, args: &[Term], output: &Term, ndg: &[NdgCondition]) -> bool {
    let Some(vals) = args.iter().map(|a| model_arg(m, a)).collect::<Option<Vec<_>>>() else { return false };
    let Some(target) = m.value(output) else { return false };
    for n in ndg {
        let Some(v) = n.args.iter().map(|a| m.value(a)).collect::<Option<Vec<Value>>>() else { return false };
        if !eval_ndg(&m.kernel, n.kind, &v) {
            return false;
        }
    }
    let Ok(outs) = apply_op(&m.kernel, rule.op, &vals) else { return false };
    let eps = 1e-6 * m.tri.scale;
    outs.iter().any(|v| v.distance(&target, m.tri.scale) <= eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::PointLabel::{self, *};

    fn run(given: &[PointLabel]) -> Result<ConstructionPlan, SolveError> {
        solve(&KnowledgeBase::wernick(), &ProblemSpec::new("t", given), Budget::default())
    }

    #[test]
    fn problem_7_takes_five_steps() {
        let plan = run(&[A, B, H]).unwrap();
        assert!(plan.solved);
        let clean = plan.clean();
        let rules: Vec<&str> = clean.steps.iter().map(|s| s.rule.as_str()).collect();
        assert_eq!(rules, ["p1_line", "p1_line", "p5_perp", "p5_perp", "p3_ll"]);
        assert_eq!(clean.steps[4].output, Term::Point(C));
    }

    #[test]
    fn problem_4_uses_the_midpoint() {
        let clean = run(&[A, B, G]).unwrap().clean();
        assert_eq!(clean.len(), 2);
        assert_eq!(clean.steps[0].output, Term::Point(Mc));
        assert_eq!(clean.steps[1].args[..3], [Term::Point(Mc), Term::Point(G), Term::Point(Mc)]);
    }

    #[test]
    fn tangency_points_alone_are_exhausted() {
        let e = run(&[Ta, Tb, Tc]).unwrap_err();
        assert_eq!(e.kind(), Some(FailureKind::Exhausted));
    }

    #[test]
    fn step_budget_is_respected() {
        let kb = KnowledgeBase::wernick();
        let budget = Budget { max_steps: 2, ..Budget::default() };
        let e = solve(&kb, &ProblemSpec::new("t", &[A, B, H]), budget).unwrap_err();
        assert_eq!(e.kind(), Some(FailureKind::Budget));
        let SolveError::Failure { trace, .. } = e else { unreachable!() };
        assert_eq!(trace.len(), 2);
    }

    #[test]
    fn labels_outside_the_vocabulary_are_rejected() {
        let kb = crate::kb::load_kb("point A\npoint B\npoint C\n").unwrap();
        let e = solve(&kb, &ProblemSpec::new("t", &[A, B, H]), Budget::default()).unwrap_err();
        assert_eq!(e, SolveError::UnknownLabel(H));
    }

    #[test]
    fn search_is_deterministic() {
        assert_eq!(run(&[A, Ma, O]).unwrap(), run(&[A, Ma, O]).unwrap());
    }

    #[test]
    fn every_step_passes_the_guard() {
        let plan = run(&[A, Hb, O]).unwrap();
        let kb = KnowledgeBase::wernick();
        let mut models = reference_models();
        for s in &plan.steps {
            let rule = kb.rule(&s.rule).unwrap();
            assert!(models.iter_mut().all(|m| step_matches(m, rule, &s.args, &s.output, &s.ndg)), "{s}");
        }
    }
}
