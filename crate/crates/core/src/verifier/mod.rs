//! Randomized numeric oracle: sample triangles, run plans over every branch,
//! and check that the constructed triangle meets the problem's conditions.

mod mutate;

use std::collections::BTreeMap;
use std::fmt::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::exec::{apply_op, eval_ndg, Arg, StepError};
use crate::geom::{characteristic_points, Kernel, Tolerance, Vec2};
use crate::kb::model::{sample_triangle, Triangle, Value};
use crate::kb::term::to_f64;
use crate::kb::{NdgKind, Term};
use crate::label::PointLabel;
use crate::solver::{ConstructionPlan, ProblemSpec};

pub use mutate::{mutants, Mutant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("no acceptable triangle after 1000 rejections")]
    SamplingExhausted,
}

/// A concrete figure: the source triangle and the values of the given labels.
#[derive(Debug, Clone)]
pub struct Scene {
    pub seed: u64,
    pub triangle: Triangle,
    pub given: Vec<(PointLabel, Vec2)>,
    pub kernel: Kernel,
}

impl Scene {
    pub fn point(&self, l: PointLabel) -> Option<Vec2> {
        self.triangle.points.get(l)
    }

    pub fn scale(&self) -> f64 {
        self.triangle.scale
    }
}

pub fn sample_scene(given: &[PointLabel], seed: u64, tol: Tolerance) -> Result<Scene, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triangle = sample_triangle(&mut rng, &tol).ok_or(VerifyError::SamplingExhausted)?;
    let given =
        given.iter().map(|&l| triangle.points.get(l).map(|p| (l, p)).ok_or(VerifyError::SamplingExhausted)).collect::<Result<_, _>>()?;
    let kernel = Kernel::new(tol, triangle.scale);
    Ok(Scene { seed, triangle, given, kernel })
}

#[derive(Debug, Clone, PartialEq)]
pub enum TraceFailure {
    /// A step reads an object no earlier step produced.
    Unbound(Term),
    Ndg(NdgKind),
    Op(StepError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchTrace {
    /// Branch index taken at each executed step.
    pub choices: Vec<usize>,
    pub assignment: Vec<(Term, Value)>,
    /// NDG conditions evaluated along the way, with their outcome.
    pub ndg: Vec<(NdgKind, bool)>,
    /// Step index and reason, if the trace stopped early.
    pub failure: Option<(usize, TraceFailure)>,
}

impl BranchTrace {
    pub fn is_complete(&self) -> bool {
        self.failure.is_none()
    }

    pub fn value(&self, t: &Term) -> Option<Value> {
        self.assignment.iter().rev().find(|(k, _)| k == t).map(|(_, v)| *v)
    }

    pub fn point(&self, l: PointLabel) -> Option<Vec2> {
        self.value(&Term::Point(l))?.point()
    }
}

fn resolve(t: &Term, trace: &BranchTrace) -> Result<Arg, TraceFailure> {
    match t {
        Term::Num(r) => Ok(Arg::Scalar(to_f64(*r))),
        Term::Angle(e) => {
            let base = match e.base {
                Some(b) => Some(trace.value(&b.object()).and_then(|v| v.angle()).ok_or(TraceFailure::Unbound(b.object()))?),
                None => None,
            };
            e.value(base).map(Arg::Scalar).ok_or(TraceFailure::Op(StepError::BadArgument))
        }
        t => trace.value(t).map(Arg::Val).ok_or_else(|| TraceFailure::Unbound(t.clone())),
    }
}

/// Run the plan on a scene, following every branch of multi-valued steps.
pub fn execute(plan: &ConstructionPlan, scene: &Scene) -> Vec<BranchTrace> {
    let start = BranchTrace {
        choices: Vec::new(),
        assignment: scene.given.iter().map(|&(l, p)| (Term::Point(l), Value::Point(p))).collect(),
        ndg: Vec::new(),
        failure: None,
    };
    let mut out = Vec::new();
    run(plan, scene, 0, start, &mut out);
    out
}

fn run(plan: &ConstructionPlan, scene: &Scene, i: usize, mut trace: BranchTrace, out: &mut Vec<BranchTrace>) {
    let Some(step) = plan.steps.get(i) else {
        out.push(trace);
        return;
    };
    let k = &scene.kernel;
    for n in &step.ndg {
        let vals: Result<Vec<Value>, _> = n.args.iter().map(|a| trace.value(a).ok_or_else(|| TraceFailure::Unbound(a.clone()))).collect();
        let vals = match vals {
            Ok(v) => v,
            Err(e) => {
                trace.failure = Some((i, e));
                out.push(trace);
                return;
            }
        };
        let ok = eval_ndg(k, n.kind, &vals);
        trace.ndg.push((n.kind, ok));
        if !ok {
            trace.failure = Some((i, TraceFailure::Ndg(n.kind)));
            out.push(trace);
            return;
        }
    }
    let args: Result<Vec<Arg>, _> = step.args.iter().map(|a| resolve(a, &trace)).collect();
    let outputs = args.and_then(|a| apply_op(k, step.op, &a).map_err(TraceFailure::Op));
    match outputs {
        Err(e) => {
            trace.failure = Some((i, e));
            out.push(trace);
        }
        Ok(values) => {
            for (b, v) in values.into_iter().enumerate() {
                let mut t = trace.clone();
                t.choices.push(b);
                t.assignment.push((step.output.clone(), v));
                run(plan, scene, i + 1, t, out);
            }
        }
    }
}

/// Largest deviation of a given label, recomputed from the constructed
/// triangle, from its scene value; `None` if the goal is not constructed.
pub fn spec_residual(trace: &BranchTrace, problem: &ProblemSpec, scene: &Scene) -> Option<f64> {
    use PointLabel::*;
    if !trace.is_complete() {
        return None;
    }
    let mut worst = 0f64;
    if [A, B, C].iter().all(|l| problem.goal.contains(l)) {
        let (a, b, c) = (trace.point(A)?, trace.point(B)?, trace.point(C)?);
        let cp = characteristic_points(a, b, c, &scene.kernel.tol).ok()?;
        for &(l, p) in &scene.given {
            worst = worst.max(cp.get(l)?.dist(p));
        }
    }
    for &g in &problem.goal {
        if let Some(p) = scene.given.iter().find(|(l, _)| *l == g).map(|(_, p)| *p) {
            worst = worst.max(trace.point(g)?.dist(p));
        } else {
            trace.point(g)?;
        }
    }
    Some(worst)
}

pub fn check_spec(trace: &BranchTrace, problem: &ProblemSpec, scene: &Scene, tol: Tolerance) -> bool {
    spec_residual(trace, problem, scene).is_some_and(|r| r <= tol.rel * scene.scale())
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceResult {
    pub seed: u64,
    pub pass: bool,
    /// First trace that meets the specification.
    pub branch: Option<usize>,
    pub traces: usize,
    pub passing_traces: usize,
    /// Residual of the accepted trace, or the best complete one if none passes.
    pub max_residual: Option<f64>,
    pub sampling_failed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub instances: Vec<InstanceResult>,
    /// Failed NDG evaluations by kind, over every trace.
    pub ndg_failures: BTreeMap<NdgKind, usize>,
    pub ndg_evaluations: usize,
}

impl VerificationReport {
    pub fn tried(&self) -> usize {
        self.instances.len()
    }

    pub fn passed(&self) -> usize {
        self.instances.iter().filter(|r| r.pass).count()
    }

    /// Zero instances prove nothing.
    pub fn is_invalid(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn is_pass(&self) -> bool {
        !self.is_invalid() && self.passed() == self.tried()
    }

    pub fn failing_seeds(&self) -> Vec<u64> {
        self.instances.iter().filter(|r| !r.pass).map(|r| r.seed).collect()
    }

    /// One line per instance: `seed|pass|branch|max_residual`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if self.is_invalid() {
            s.push_str("# invalid: no instances\n");
        }
        for r in &self.instances {
            let branch = r.branch.map_or("-".to_string(), |b| b.to_string());
            let res = r.max_residual.map_or("-".to_string(), |x| format!("{x:.3e}"));
            let _ = writeln!(s, "{}|{}|{}|{}", r.seed, if r.pass { "pass" } else { "fail" }, branch, res);
        }
        s
    }
}

pub fn verify_instance(plan: &ConstructionPlan, problem: &ProblemSpec, seed: u64, tol: Tolerance) -> (InstanceResult, Vec<BranchTrace>) {
    let scene = match sample_scene(&problem.given, seed, tol) {
        Ok(s) => s,
        Err(_) => {
            let r =
                InstanceResult { seed, pass: false, branch: None, traces: 0, passing_traces: 0, max_residual: None, sampling_failed: true };
            return (r, Vec::new());
        }
    };
    let traces = execute(plan, &scene);
    let limit = tol.rel * scene.scale();
    let residuals: Vec<Option<f64>> = traces.iter().map(|t| spec_residual(t, problem, &scene)).collect();
    let branch = residuals.iter().position(|r| r.is_some_and(|r| r <= limit));
    let max_residual = match branch {
        Some(b) => residuals[b],
        None => residuals.iter().flatten().copied().reduce(f64::min),
    };
    let r = InstanceResult {
        seed,
        pass: branch.is_some(),
        branch,
        traces: traces.len(),
        passing_traces: residuals.iter().filter(|r| r.is_some_and(|r| r <= limit)).count(),
        max_residual,
        sampling_failed: false,
    };
    (r, traces)
}

/// Check the plan on `n` scenes seeded `base_seed, base_seed + 1, ...`.
pub fn verify(plan: &ConstructionPlan, problem: &ProblemSpec, n: usize, base_seed: u64, tol: Tolerance) -> VerificationReport {
    let runs: Vec<(InstanceResult, Vec<(NdgKind, bool)>)> = (0..n as u64)
        .into_par_iter()
        .map(|i| {
            let (r, traces) = verify_instance(plan, problem, base_seed.wrapping_add(i), tol);
            (r, traces.into_iter().flat_map(|t| t.ndg).collect())
        })
        .collect();
    let mut ndg_failures = BTreeMap::new();
    let mut ndg_evaluations = 0;
    let mut instances = Vec::with_capacity(n);
    for (r, ndg) in runs {
        for (kind, ok) in ndg {
            ndg_evaluations += 1;
            if !ok {
                *ndg_failures.entry(kind).or_insert(0) += 1;
            }
        }
        instances.push(r);
    }
    VerificationReport { instances, ndg_failures, ndg_evaluations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::{Ctor, KnowledgeBase, Op};
    use crate::solver::{solve, Budget, ConstructionStep, NdgCondition};
    use PointLabel::*;

    fn problem7() -> (ProblemSpec, ConstructionPlan) {
        let p = ProblemSpec::new("7", &[A, B, H]);
        let plan = solve(&KnowledgeBase::wernick(), &p, Budget::default()).unwrap().clean();
        (p, plan)
    }

    fn step(op: Op, args: Vec<Term>, output: Term, ndg: Vec<NdgCondition>) -> ConstructionStep {
        ConstructionStep { rule: op.name().into(), bindings: Vec::new(), op, args, output, ndg }
    }

    fn line(a: PointLabel, b: PointLabel) -> Term {
        Term::obj(Ctor::Line, vec![Term::Point(a), Term::Point(b)])
    }

    #[test]
    fn zero_instances_is_invalid() {
        let (p, plan) = problem7();
        let r = verify(&plan, &p, 0, 0, Tolerance::default());
        assert!(r.is_invalid());
        assert!(!r.is_pass());
        assert!(r.to_text().starts_with("# invalid"));
    }

    #[test]
    fn same_seeds_give_the_same_report() {
        let (p, plan) = problem7();
        let tol = Tolerance::default();
        let r = verify(&plan, &p, 25, 7, tol);
        assert!(r.is_pass());
        assert_eq!(r, verify(&plan, &p, 25, 7, tol));
        let seeds: Vec<u64> = r.instances.iter().map(|i| i.seed).collect();
        assert_eq!(seeds, (7..32).collect::<Vec<_>>());
    }

    #[test]
    fn scenes_match_their_triangle() {
        let s = sample_scene(&[A, B, H], 42, Tolerance::default()).unwrap();
        for &(l, p) in &s.given {
            assert_eq!(s.point(l), Some(p));
        }
        let t = sample_scene(&[A, B, H], 42, Tolerance::default()).unwrap();
        assert_eq!(s.given, t.given);
    }

    #[test]
    fn a_wrong_plan_is_rejected() {
        let (p, mut plan) = problem7();
        // perpendicular from A to BH replaced by a perpendicular from B
        plan.steps[2].args[0] = Term::Point(B);
        let r = verify(&plan, &p, 20, 0, Tolerance::default());
        assert_eq!(r.passed(), 0);
        assert_eq!(r.failing_seeds().len(), 20);
    }

    #[test]
    fn parallel_lines_fail_their_ndg() {
        let perp_a = line(A, C);
        let perp_b = line(B, C);
        let plan = ConstructionPlan {
            given: vec![A, B],
            goal: vec![C],
            steps: vec![
                step(Op::LineThrough, vec![Term::Point(A), Term::Point(B)], line(A, B), vec![]),
                step(Op::PerpThrough, vec![Term::Point(A), line(A, B)], perp_a.clone(), vec![]),
                step(Op::PerpThrough, vec![Term::Point(B), line(A, B)], perp_b.clone(), vec![]),
                step(
                    Op::Intersect,
                    vec![perp_a.clone(), perp_b.clone()],
                    Term::Point(C),
                    vec![NdgCondition { kind: NdgKind::Intersects, args: vec![perp_a, perp_b] }],
                ),
            ],
            solved: true,
        };
        let problem = ProblemSpec { goal: vec![C], ..ProblemSpec::new("par", &[A, B]) };
        let scene = sample_scene(&problem.given, 0, Tolerance::default()).unwrap();
        let traces = execute(&plan, &scene);
        assert_eq!(traces.len(), 1);
        assert_eq!(traces[0].failure, Some((3, TraceFailure::Ndg(NdgKind::Intersects))));
        let r = verify(&plan, &problem, 5, 0, Tolerance::default());
        assert_eq!(r.ndg_failures.get(&NdgKind::Intersects), Some(&5));
        assert!(!r.is_pass());
    }

    #[test]
    fn unconstructed_inputs_stop_the_trace() {
        let plan = ConstructionPlan {
            given: vec![A, B],
            goal: vec![A, B, C],
            steps: vec![step(Op::LineThrough, vec![Term::Point(A), Term::Point(O)], line(A, O), vec![])],
            solved: false,
        };
        let scene = sample_scene(&[A, B], 1, Tolerance::default()).unwrap();
        let traces = execute(&plan, &scene);
        assert_eq!(traces[0].failure, Some((0, TraceFailure::Unbound(Term::Point(O)))));
        assert_eq!(spec_residual(&traces[0], &ProblemSpec::new("x", &[A, B]), &scene), None);
    }
}
