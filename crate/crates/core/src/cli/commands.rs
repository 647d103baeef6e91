use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use super::{parse_status, resolve_problem, Ctx, Format, UsageError, EXIT_OK, EXIT_UNSOLVED, EXIT_USAGE, EXIT_VERIFY};
use crate::catalog::wernick_catalog;
use crate::emit::{instance_trace, to_gclc, to_svg, to_text, SvgOptions};
use crate::kb::model::numeric_check_kb_seeded;
use crate::solver::{self, solve_corpus, ConstructionPlan, ProblemSpec, SolveError, Status};
use crate::verifier::{sample_scene, verify as run_verify, VerificationReport};

type CmdResult = Result<i32, UsageError>;

pub(super) fn list(ctx: &mut Ctx, filter: Option<&str>, status: Option<&str>) -> CmdResult {
    let status = status.map(parse_status).transpose()?;
    let only = match filter {
        Some(f) => Some(resolve_problem(f)?.1.ok_or_else(|| format!("`{f}` is not in the catalog"))?.index),
        None => None,
    };
    for e in wernick_catalog() {
        if only.is_some_and(|i| i != e.index) || status.is_some_and(|s| s != e.status) {
            continue;
        }
        let pts: Vec<String> = e.given.iter().map(|p| p.to_string()).collect();
        write!(ctx.out, "{}. {} - {}", e.index, pts.join(", "), e.status.symbol())?;
        if !e.note.is_empty() {
            write!(ctx.out, "  [{}]", e.note)?;
        }
        writeln!(ctx.out)?;
    }
    Ok(EXIT_OK)
}

/// Solve a problem; `Ok(None)` when the search fails (already reported).
fn solve_plan(ctx: &mut Ctx, problem: &ProblemSpec) -> Result<Option<ConstructionPlan>, UsageError> {
    let start = Instant::now();
    match solver::solve(&ctx.kb, problem, ctx.config.budget()) {
        Ok(plan) => {
            let secs = start.elapsed().as_secs_f64();
            writeln!(ctx.err, "solved in {secs:.3}s")?;
            Ok(Some(plan))
        }
        Err(SolveError::UnknownLabel(l)) => Err(UsageError(format!("point {l} is not in the knowledge base vocabulary"))),
        Err(e @ SolveError::Failure { .. }) => {
            writeln!(ctx.out, "problem {}: unsolved: {e}", problem.id)?;
            Ok(None)
        }
    }
}

fn header(ctx: &mut Ctx, problem: &ProblemSpec) -> Result<(), UsageError> {
    let pts: Vec<String> = problem.given.iter().map(|p| p.to_string()).collect();
    writeln!(ctx.out, "problem {}: {} (status {})", problem.id, pts.join(", "), problem.status.symbol())?;
    Ok(())
}

fn verification_line(r: &VerificationReport) -> String {
    if r.is_invalid() {
        return "verification: invalid (no instances)".to_string();
    }
    let mut s = format!("verification: {}/{}", r.passed(), r.tried());
    let failing = r.failing_seeds();
    if !failing.is_empty() {
        let seeds: Vec<String> = failing.iter().take(10).map(|s| s.to_string()).collect();
        let _ = write!(s, " (failing seeds {})", seeds.join(","));
    }
    s
}

pub(super) fn solve(ctx: &mut Ctx, r: &str) -> CmdResult {
    let (problem, _) = resolve_problem(r)?;
    header(ctx, &problem)?;
    let Some(raw) = solve_plan(ctx, &problem)? else { return Ok(EXIT_UNSOLVED) };
    let clean = raw.clean();
    writeln!(ctx.out, "raw plan: {} steps, clean plan: {} steps", raw.len(), clean.len())?;
    write!(ctx.out, "{}", clean.to_text())?;
    let report = run_verify(&clean, &problem, ctx.config.instances, ctx.config.seed, ctx.config.tolerance());
    writeln!(ctx.out, "{}", verification_line(&report))?;
    let emitted = artifacts(ctx, &problem, &raw, &clean, Some(&report), Format::Text)?;
    Ok(if report.is_pass() && emitted { EXIT_OK } else { EXIT_VERIFY })
}

pub(super) fn verify(ctx: &mut Ctx, r: &str) -> CmdResult {
    let (problem, _) = resolve_problem(r)?;
    header(ctx, &problem)?;
    let Some(raw) = solve_plan(ctx, &problem)? else { return Ok(EXIT_UNSOLVED) };
    let clean = raw.clean();
    let report = run_verify(&clean, &problem, ctx.config.instances, ctx.config.seed, ctx.config.tolerance());
    writeln!(ctx.out, "# seed|pass|branch|max_residual")?;
    write!(ctx.out, "{}", report.to_text())?;
    for (kind, n) in &report.ndg_failures {
        writeln!(ctx.out, "# ndg {} failed {n} of {} evaluations", kind.name(), report.ndg_evaluations)?;
    }
    writeln!(ctx.out, "{}", verification_line(&report))?;
    if let Some(dir) = ctx.config.out.clone() {
        write_file(&dir, "verify.txt", &report.to_text())?;
    }
    Ok(if report.is_pass() { EXIT_OK } else { EXIT_VERIFY })
}

pub(super) fn render(ctx: &mut Ctx, r: &str) -> CmdResult {
    let (problem, _) = resolve_problem(r)?;
    let Some(raw) = solve_plan(ctx, &problem)? else { return Ok(EXIT_UNSOLVED) };
    let clean = raw.clean();
    let ok = artifacts(ctx, &problem, &raw, &clean, None, Format::Svg)?;
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}

fn write_file(dir: &Path, name: &str, body: &str) -> Result<(), UsageError> {
    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, body).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(())
}

/// Produce the selected artifacts: into `--out` when given, else on stdout.
/// Returns false if the figure could not be emitted.
fn artifacts(
    ctx: &mut Ctx,
    problem: &ProblemSpec,
    raw: &ConstructionPlan,
    clean: &ConstructionPlan,
    report: Option<&VerificationReport>,
    stdout_default: Format,
) -> Result<bool, UsageError> {
    let dir = ctx.config.out.clone();
    let format = ctx.config.format.unwrap_or(if dir.is_some() { Format::All } else { stdout_default });
    let mut files: Vec<(&str, String)> = Vec::new();
    if format.includes(Format::Text) {
        files.push(("steps.txt", to_text(&ctx.kb, clean).to_string()));
    }
    let mut ok = true;
    if format.includes(Format::Gclc) || format.includes(Format::Svg) {
        let tol = ctx.config.tolerance();
        let figure = sample_scene(&problem.given, ctx.config.seed, tol)
            .map_err(|e| e.to_string())
            .and_then(|scene| instance_trace(clean, problem, &scene, tol).map_err(|e| e.to_string()))
            .and_then(|trace| {
                let g = format.includes(Format::Gclc).then(|| to_gclc(clean, &trace)).transpose().map_err(|e| e.to_string())?;
                let s = format
                    .includes(Format::Svg)
                    .then(|| to_svg(clean, &trace, SvgOptions::default()))
                    .transpose()
                    .map_err(|e| e.to_string())?;
                Ok((g, s))
            });
        match figure {
            Ok((g, s)) => {
                files.extend(g.map(|g| ("figure.gcl", g.to_string())));
                files.extend(s.map(|s| ("figure.svg", s)));
            }
            Err(msg) => {
                writeln!(ctx.err, "error: cannot draw instance {}: {msg}", ctx.config.seed)?;
                ok = false;
            }
        }
    }
    match dir {
        Some(dir) => {
            write_file(&dir, "plan.txt", &clean.to_text())?;
            write_file(&dir, "raw_plan.txt", &raw.to_text())?;
            if let Some(r) = report {
                write_file(&dir, "verify.txt", &r.to_text())?;
            }
            for (name, body) in &files {
                write_file(&dir, name, body)?;
            }
            writeln!(ctx.out, "wrote {}", dir.display())?;
        }
        None => {
            for (_, body) in &files {
                write!(ctx.out, "{body}")?;
                if !body.ends_with('\n') {
                    writeln!(ctx.out)?;
                }
            }
        }
    }
    Ok(ok)
}

pub(super) fn batch(ctx: &mut Ctx, only: Option<&str>) -> CmdResult {
    let status = only.map(parse_status).transpose()?;
    let problems: Vec<ProblemSpec> =
        wernick_catalog().iter().filter(|e| status.is_none_or(|s| s == e.status)).map(|e| e.problem()).collect();
    let cfg = ctx.config.clone();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().map_err(|e| e.to_string())?;
    let summary = solve_corpus(&ctx.kb, &problems, cfg.budget(), cfg.jobs);
    let cleans: Vec<Option<ConstructionPlan>> = summary.outcomes.iter().map(|o| o.clean()).collect();
    let reports: Vec<Option<VerificationReport>> = pool.install(|| {
        summary
            .outcomes
            .par_iter()
            .zip(&cleans)
            .map(|(o, c)| c.as_ref().map(|c| run_verify(c, &o.problem, cfg.instances, cfg.seed, cfg.tolerance())))
            .collect()
    });

    let mut s = format!("# config: {cfg}\n# idx|solved?|clean_len|verify_pass/total|secs\n");
    let mut failures = 0;
    for ((o, c), r) in summary.outcomes.iter().zip(&cleans).zip(&reports) {
        let len = c.as_ref().map_or("-".to_string(), |c| c.len().to_string());
        let ver = r.as_ref().map_or("-".to_string(), |r| format!("{}/{}", r.passed(), r.tried()));
        if r.as_ref().is_some_and(|r| !r.is_pass()) {
            failures += 1;
        }
        let solved = if o.solved() { "yes" } else { "no" };
        let _ = writeln!(s, "{}|{solved}|{len}|{ver}|{:.3}", o.problem.id, o.elapsed.as_secs_f64());
    }
    for o in &summary.outcomes {
        if o.is_discrepancy() {
            let _ = writeln!(s, "# flag {}: solved but status U", o.problem.id);
        } else if !o.solved() && o.problem.status == Status::S {
            let _ = writeln!(s, "# flag {}: status S but unsolved", o.problem.id);
        }
    }
    let _ = writeln!(
        s,
        "# totals: problems={} solved={} verified={} verify_failures={failures} max_clean_len={}",
        summary.outcomes.len(),
        summary.solved(),
        reports.iter().flatten().filter(|r| r.is_pass()).count(),
        summary.max_clean_len()
    );
    let mut by_status = String::from("# by status:");
    for st in [Status::S, Status::U, Status::R, Status::L, Status::Unknown] {
        let total = summary.outcomes.iter().filter(|o| o.problem.status == st).count();
        if total > 0 {
            let _ = write!(by_status, " {} {}/{total}", st.symbol(), summary.solved_with_status(st));
        }
    }
    let _ = writeln!(s, "{by_status}");
    write!(ctx.out, "{s}")?;

    if let Some(dir) = &cfg.out {
        write_file(dir, "summary.txt", &s)?;
        for ((o, c), r) in summary.outcomes.iter().zip(&cleans).zip(&reports) {
            if let (Some(c), Some(r)) = (c, r) {
                write_file(dir, &format!("{}.plan", o.problem.id), &c.to_text())?;
                write_file(dir, &format!("{}.verify", o.problem.id), &r.to_text())?;
            }
        }
    }
    Ok(if failures == 0 { EXIT_OK } else { EXIT_VERIFY })
}

pub(super) fn check_kb(ctx: &mut Ctx) -> CmdResult {
    let start = Instant::now();
    let cfg = &ctx.config;
    let report = numeric_check_kb_seeded(&ctx.kb, cfg.instances, cfg.tolerance(), cfg.seed);
    writeln!(
        ctx.out,
        "checked {} facts on {} triangles in {:.2}s: {} violations",
        report.facts,
        report.samples,
        start.elapsed().as_secs_f64(),
        report.violations.len()
    )?;
    if report.exhausted {
        writeln!(ctx.out, "sampling gave up after {} triangles", report.samples)?;
    }
    for (fact, n) in report.by_fact() {
        writeln!(ctx.out, "violated {n}x: {fact}")?;
    }
    if report.samples == 0 && cfg.instances > 0 {
        return Ok(EXIT_USAGE);
    }
    Ok(if report.is_clean() { EXIT_OK } else { EXIT_VERIFY })
}
