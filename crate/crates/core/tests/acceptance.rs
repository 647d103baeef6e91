//! Acceptance suite: one PASS/FAIL line per criterion, written straight to
//! stderr so it shows without `--nocapture`.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wernick::catalog::wernick_catalog;
use wernick::cli;
use wernick::geom::{Tolerance, Vec2};
use wernick::kb::{numeric_check_kb, Ctor, KnowledgeBase, Rational, Source, Term};
use wernick::label::PointLabel::{self, *};
use wernick::solver::{solve_corpus, Budget, ConstructionPlan, CorpusSummary, ProblemSpec, Status};
use wernick::verifier::{check_spec, execute, mutants, sample_scene, verify, Scene};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn report(n: usize, name: &str, v: &Verdict) {
    let line = format!("[{}] criterion {n}: {name}: {}\n", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn solved_plans(summary: &CorpusSummary) -> Vec<(ProblemSpec, ConstructionPlan, ConstructionPlan)> {
    summary
        .outcomes
        .iter()
        .filter_map(|o| o.result.as_ref().ok().filter(|p| p.solved).map(|raw| (o.problem.clone(), raw.clone(), raw.clean())))
        .collect()
}

// Textbook constructions written out here, not taken from the library.
fn circumcenter(a: Vec2, b: Vec2, c: Vec2) -> Vec2 {
    let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    let (a2, b2, c2) = (a.dot(a), b.dot(b), c.dot(c));
    Vec2::new((a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d, (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d)
}

fn orthocenter(a: Vec2, b: Vec2, c: Vec2) -> Vec2 {
    // (h - a).(c - b) = 0 and (h - b).(c - a) = 0
    let (u, v) = (c - b, c - a);
    let (r1, r2) = (a.dot(u), b.dot(v));
    let det = u.x * v.y - u.y * v.x;
    Vec2::new((r1 * v.y - r2 * u.y) / det, (u.x * r2 - v.x * r1) / det)
}

fn criterion_1(kb: &KnowledgeBase) -> Verdict {
    let start = Instant::now();
    let tol = Tolerance::default();
    let r = numeric_check_kb(kb, 1000, tol);
    // the vector form of HG/HO = 2/3 against an independent computation
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0f64;
    for _ in 0..1000 {
        let mut p = || Vec2::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let (a, b, c) = (p(), p(), p());
        if (b - a).cross(c - a).abs() < 1.0 {
            continue;
        }
        let (h, o, g) = (orthocenter(a, b, c), circumcenter(a, b, c), (a + b + c) * (1.0 / 3.0));
        let scale = a.dist(b).max(b.dist(c)).max(c.dist(a)).max(h.dist(o));
        worst = worst.max((g - h).dist((o - h) * (2.0 / 3.0)) / scale);
    }
    let lemma9 = kb.tagged(Source::Lemma(Some(9)));
    let elapsed = start.elapsed();
    let pass = r.is_clean() && r.samples == 1000 && !lemma9.is_empty() && worst < 1e-9 && elapsed < Duration::from_secs(10);
    verdict(
        pass,
        format!(
            "{} facts on {} triangles, {} violations; lemma 9 ({} facts) independent residual {worst:.1e}; {:.2?}",
            r.facts,
            r.samples,
            r.violations.len(),
            lemma9.len(),
            elapsed
        ),
    )
}

fn criterion_2(summary: &CorpusSummary) -> Verdict {
    let s_total = summary.outcomes.iter().filter(|o| o.problem.status == Status::S).count();
    let s_solved = summary.solved_with_status(Status::S);
    let u_solved = summary.solved_with_status(Status::U);
    let slowest = summary.outcomes.iter().map(|o| o.elapsed).max().unwrap_or_default();
    let unsolved: Vec<&str> =
        summary.outcomes.iter().filter(|o| o.problem.status == Status::S && !o.solved()).map(|o| o.problem.id.as_str()).collect();
    let pass = s_solved >= 55 && u_solved == 0 && slowest < Duration::from_secs(5);
    verdict(pass, format!("{s_solved}/{s_total} S solved (unsolved: {}), {u_solved} U solved, slowest {slowest:.2?}", unsolved.join(",")))
}

fn criterion_3(plans: &[(ProblemSpec, ConstructionPlan, ConstructionPlan)]) -> Verdict {
    let mut bad = Vec::new();
    for (p, _, clean) in plans {
        let r = verify(clean, p, 100, 0, Tolerance::default());
        if !(r.is_pass() && r.tried() == 100) {
            bad.push(format!("{} {}/{}", p.id, r.passed(), r.tried()));
        }
    }
    verdict(bad.is_empty(), format!("{} clean plans at 100 instances, failing: [{}]", plans.len(), bad.join(", ")))
}

fn line(a: PointLabel, b: PointLabel) -> Term {
    Term::obj(Ctor::Line, vec![Term::Point(a), Term::Point(b)])
}

fn criterion_4(plans: &[(ProblemSpec, ConstructionPlan, ConstructionPlan)]) -> Verdict {
    let Some((_, _, clean)) = plans.iter().find(|(p, _, _)| p.id == "7") else { return verdict(false, "problem 7 unsolved") };
    let p = Term::Point;
    let expected: Vec<(&str, Vec<Term>, Term)> = vec![
        ("p1_line", vec![p(A), p(H)], line(A, Ha)),
        ("p1_line", vec![p(B), p(H)], line(B, Hb)),
        ("p5_perp", vec![p(A), line(B, Hb)], line(A, C)),
        ("p5_perp", vec![p(B), line(A, Ha)], line(B, C)),
        ("p3_ll", vec![line(A, C), line(B, C)], p(C)),
    ];
    let got: Vec<(&str, Vec<Term>, Term)> = clean.steps.iter().map(|s| (s.rule.as_str(), s.args.clone(), s.output.clone())).collect();
    let shown: Vec<String> = clean.steps.iter().map(|s| s.to_string()).collect();
    verdict(got == expected, format!("{} steps: {}", clean.len(), shown.join("; ")))
}

fn criterion_5(plans: &[(ProblemSpec, ConstructionPlan, ConstructionPlan)]) -> Verdict {
    let Some((_, _, clean)) = plans.iter().find(|(p, _, _)| p.id == "4") else { return verdict(false, "problem 4 unsolved") };
    let p = Term::Point;
    let makes_mc = clean.steps.iter().any(|s| s.output == p(Mc) && s.args.contains(&p(A)) && s.args.contains(&p(B)));
    let last = clean.steps.last();
    let ratio_3 = last.is_some_and(|s| {
        s.output == p(C)
            && s.rule == "p16_ratio"
            && s.args.contains(&p(Mc))
            && s.args.contains(&p(G))
            && s.args.contains(&Term::Num(Rational::from_integer(3)))
    });
    let shown: Vec<String> = clean.steps.iter().map(|s| s.to_string()).collect();
    verdict(clean.len() <= 3 && makes_mc && ratio_3, format!("{} steps: {}", clean.len(), shown.join("; ")))
}

type Tuples = BTreeSet<Vec<(i64, i64)>>;

/// Goal coordinates of every complete trace and of those meeting the
/// specification, rounded to 1e-7 of the scale for comparison.
fn goal_tuples(plan: &ConstructionPlan, problem: &ProblemSpec, scene: &Scene) -> (Tuples, Tuples) {
    let q = 1e7 / scene.scale();
    let (mut all, mut passing) = (Tuples::new(), Tuples::new());
    for t in execute(plan, scene).iter().filter(|t| t.is_complete()) {
        let Some(tuple): Option<Vec<(i64, i64)>> =
            plan.goal.iter().map(|&g| t.point(g).map(|v| ((v.x * q).round() as i64, (v.y * q).round() as i64))).collect()
        else {
            continue;
        };
        if check_spec(t, problem, scene, Tolerance::default()) {
            passing.insert(tuple.clone());
        }
        all.insert(tuple);
    }
    (all, passing)
}

fn criterion_6(summary: &CorpusSummary, plans: &[(ProblemSpec, ConstructionPlan, ConstructionPlan)]) -> Verdict {
    let max = summary.max_clean_len();
    let longest = plans.iter().max_by_key(|(_, _, c)| c.len()).map_or("-".into(), |(p, _, _)| p.id.clone());
    let tol = Tolerance::default();
    let mut disagree = Vec::new();
    for (p, raw, clean) in plans {
        let mut bad = 0;
        for seed in 0..100 {
            let scene = sample_scene(&p.given, seed, tol).expect("sampler");
            // dropping steps only drops NDG checks: every raw outcome stays a clean
            // outcome, and both plans reach the same correct triangles
            let (raw_all, raw_ok) = goal_tuples(raw, p, &scene);
            let (clean_all, clean_ok) = goal_tuples(clean, p, &scene);
            if !raw_all.is_subset(&clean_all) || raw_ok != clean_ok || raw_ok.is_empty() {
                bad += 1;
            }
        }
        if bad > 0 {
            disagree.push(format!("{} on {bad} scenes", p.id));
        }
    }
    verdict(
        max <= 15 && disagree.is_empty(),
        format!("max clean length {max} (problem {longest}); raw/clean disagreements: [{}]", disagree.join(", ")),
    )
}

fn criterion_7(plans: &[(ProblemSpec, ConstructionPlan, ConstructionPlan)]) -> Verdict {
    let (mut total, mut killed) = (0usize, 0usize);
    let mut survivors = Vec::new();
    for (p, _, clean) in plans {
        for m in mutants(clean) {
            total += 1;
            if verify(&m.plan, p, 20, 1000, Tolerance::default()).is_pass() {
                survivors.push(format!("{} {}", p.id, m.description));
            } else {
                killed += 1;
            }
        }
    }
    let rate = killed as f64 / total.max(1) as f64;
    verdict(
        total > 0 && rate >= 0.95,
        format!("{killed}/{total} mutants killed ({:.1}%); survivors: [{}]", 100.0 * rate, survivors.join("; ")),
    )
}

fn batch_run(dir: &std::path::Path) -> (String, Vec<(String, String)>) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(["wernick", "batch", "--out", dir.to_str().unwrap()], &mut out, &mut err);
    assert!(code == 0 || code == 3, "batch exit {code}");
    // drop the timing column
    let summary: String = String::from_utf8(out)
        .unwrap()
        .lines()
        .map(|l| if l.starts_with('#') { l.to_string() } else { l.rsplit_once('|').map_or(l, |(k, _)| k).to_string() })
        .collect::<Vec<_>>()
        .join("\n");
    let mut files: Vec<(String, String)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap() != "summary.txt")
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    files.sort();
    (summary, files)
}

fn criterion_8() -> Verdict {
    let tmp = tempfile::tempdir().unwrap();
    let (s1, f1) = batch_run(&tmp.path().join("run1"));
    let (s2, f2) = batch_run(&tmp.path().join("run2"));
    let plans = f1.iter().filter(|(n, _)| n.ends_with(".plan")).count();
    verdict(
        s1 == s2 && f1 == f2 && plans > 0,
        format!("two batch runs: summaries equal {}, {} plan and report files equal {}", s1 == s2, f1.len(), f1 == f2),
    )
}

#[test]
fn acceptance() {
    let kb = KnowledgeBase::wernick();
    let problems: Vec<ProblemSpec> = wernick_catalog().iter().map(|e| e.problem()).collect();
    let summary = solve_corpus(&kb, &problems, Budget::default(), 0);
    let plans = solved_plans(&summary);

    let results = [
        ("KB numeric soundness", criterion_1(&kb)),
        ("corpus solving", criterion_2(&summary)),
        ("oracle soundness", criterion_3(&plans)),
        ("problem 7 regression", criterion_4(&plans)),
        ("problem 4 regression", criterion_5(&plans)),
        ("clean-plan bound and slice soundness", criterion_6(&summary, &plans)),
        ("mutation robustness", criterion_7(&plans)),
        ("determinism", criterion_8()),
    ];
    for (i, (name, v)) in results.iter().enumerate() {
        report(i + 1, name, v);
    }
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, (_, v))| !v.pass).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
