use num_traits::{One, Zero};

use crate::kb::{Rational, Term};
use crate::solver::ConstructionPlan;

/// A single-step corruption of a plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mutant {
    pub step: usize,
    pub description: String,
    pub plan: ConstructionPlan,
}

fn bump(r: Rational) -> Rational {
    let s = r + Rational::one();
    if s.is_zero() {
        s + Rational::one()
    } else {
        s
    }
}

/// Every rational parameter shifted by one, and every object input replaced by
/// the least other object of the same kind available at that step.
pub fn mutants(plan: &ConstructionPlan) -> Vec<Mutant> {
    let mut out = Vec::new();
    let mut available: Vec<Term> = plan.given.iter().map(|&p| Term::Point(p)).collect();
    for (i, step) in plan.steps.iter().enumerate() {
        for (j, arg) in step.args.iter().enumerate() {
            let replacement = match arg {
                Term::Num(r) => Some(Term::Num(bump(*r))),
                Term::Angle(e) => {
                    let mut m = *e;
                    if m.base.is_some() {
                        m.coeff = bump(m.coeff);
                    } else {
                        m.plus_pi += Rational::new(1, 4);
                    }
                    Some(Term::Angle(m))
                }
                t => available.iter().filter(|c| c.kind() == t.kind() && !step.args.contains(c)).min().cloned(),
            };
            let Some(new) = replacement else { continue };
            let mut plan = plan.clone();
            plan.steps[i].args[j] = new.clone();
            let description = format!("step {}: {} -> {}", i + 1, arg, new);
            out.push(Mutant { step: i, description, plan });
        }
        available.push(step.output.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::{AngleExpr, KnowledgeBase, Op, TriAngle};
    use crate::label::PointLabel::*;
    use crate::solver::{solve, Budget, ConstructionStep, ProblemSpec};

    #[test]
    fn bump_skips_zero() {
        assert_eq!(bump(Rational::new(1, 2)), Rational::new(3, 2));
        assert_eq!(bump(Rational::from_integer(-1)), Rational::one());
    }

    #[test]
    fn inputs_are_swapped_within_their_kind() {
        let kb = KnowledgeBase::wernick();
        let plan = solve(&kb, &ProblemSpec::new("7", &[A, B, H]), Budget::default()).unwrap().clean();
        let ms = mutants(&plan);
        assert!(!ms.is_empty());
        for m in &ms {
            let (old, new) = (&plan.steps[m.step], &m.plan.steps[m.step]);
            let changed: Vec<usize> = (0..old.args.len()).filter(|&j| old.args[j] != new.args[j]).collect();
            assert_eq!(changed.len(), 1, "{}", m.description);
            assert_eq!(old.args[changed[0]].kind(), new.args[changed[0]].kind());
            for (k, s) in plan.steps.iter().enumerate().filter(|(k, _)| *k != m.step) {
                assert_eq!(s, &m.plan.steps[k]);
            }
        }
        // step 1 is line(A, H): A can only become B
        assert!(ms.iter().any(|m| m.description == "step 1: A -> B"));
    }

    #[test]
    fn angles_and_ratios_are_shifted() {
        let kb = KnowledgeBase::wernick();
        let plan = solve(&kb, &ProblemSpec::new("4", &[A, B, G]), Budget::default()).unwrap().clean();
        let d: Vec<String> = mutants(&plan).into_iter().map(|m| m.description).collect();
        assert!(d.contains(&"step 1: 1/2 -> 3/2".to_string()), "{d:?}");
        assert!(d.contains(&"step 2: 3 -> 4".to_string()), "{d:?}");
    }

    #[test]
    fn angle_expressions_change_value() {
        let half = Rational::new(1, 2);
        let based = AngleExpr { coeff: half, base: Some(TriAngle::Bac), plus_pi: Rational::zero() };
        let bare = AngleExpr { coeff: Rational::zero(), base: None, plus_pi: half };
        let step = |e| ConstructionStep {
            rule: "p8_locus".into(),
            bindings: Vec::new(),
            op: Op::AngleLocus,
            args: vec![Term::Point(A), Term::Point(B), Term::Angle(e)],
            output: Term::Point(C),
            ndg: Vec::new(),
        };
        let plan = ConstructionPlan { given: vec![A, B], goal: vec![C], steps: vec![step(based), step(bare)], solved: true };
        let angles: Vec<AngleExpr> = mutants(&plan)
            .into_iter()
            .filter_map(|m| match &m.plan.steps[m.step].args[2] {
                Term::Angle(e) if m.plan.steps[m.step].args[2] != plan.steps[m.step].args[2] => Some(*e),
                _ => None,
            })
            .collect();
        assert_eq!(angles.len(), 2);
        assert_eq!(angles[0].coeff, Rational::new(3, 2));
        assert_eq!(angles[1].plus_pi, Rational::new(3, 4));
    }
}
