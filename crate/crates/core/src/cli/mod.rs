//! The `wernick` command line.
//!
//! Exit codes: 0 solved and verified, 2 unsolved, 3 verification failure, 64 usage error.

mod commands;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::catalog::{wernick_catalog, CatalogEntry};
use crate::geom::Tolerance;
use crate::kb::{load_kb, KnowledgeBase};
use crate::label::PointLabel;
use crate::solver::{Budget, ProblemSpec, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSOLVED: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Gclc,
    Svg,
    All,
}

impl Format {
    fn includes(self, f: Format) -> bool {
        self == Format::All || self == f
    }
}

/// Settings shared by every command.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Knowledge base file [default: the built-in Wernick KB]
    #[arg(long, global = true)]
    pub kb: Option<PathBuf>,
    /// Comma-separated rule ids tried first, in this order
    #[arg(long = "rule-order", global = true, value_delimiter = ',')]
    pub rule_order: Vec<String>,
    /// First seed of the random instances
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random instances per verification (or triangles for check-kb)
    #[arg(long, global = true, default_value_t = 100)]
    pub instances: usize,
    /// Relative numeric tolerance
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long = "budget-steps", global = true, default_value_t = 10_000)]
    pub budget_steps: usize,
    #[arg(long = "budget-secs", global = true, default_value_t = 30.0)]
    pub budget_secs: f64,
    /// Directory for written artifacts
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for batch runs (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Artifacts to produce [default: text on stdout, all with --out]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn tolerance(&self) -> Tolerance {
        Tolerance::with_rel(self.tol)
    }

    pub fn budget(&self) -> Budget {
        Budget { max_steps: self.budget_steps, max_time: Duration::from_secs_f64(self.budget_secs.max(0.0)) }
    }
}

/// Echo of the settings that affect results (timing budgets excluded).
impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kb = self.kb.as_ref().map_or("builtin".to_string(), |p| p.display().to_string());
        let order = if self.rule_order.is_empty() { "default".to_string() } else { self.rule_order.join(",") };
        write!(
            f,
            "kb={kb} rule-order={order} seed={} instances={} tol={:e} budget-steps={}",
            self.seed, self.instances, self.tol, self.budget_steps
        )
    }
}

#[derive(Debug, Parser)]
#[command(name = "wernick", version, about = "Solve and check Wernick triangle construction problems")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Print catalog rows
    List {
        /// Problem index or point triple
        filter: Option<String>,
        /// Keep only rows with this status (S, U, R, L or ?)
        #[arg(long)]
        status: Option<String>,
    },
    /// Solve one problem, verify the clean plan and emit it
    Solve { problem: String },
    /// Solve one problem and print the per-instance verification report
    Verify { problem: String },
    /// Solve and verify the whole catalog
    Batch {
        /// Keep only problems with this status
        #[arg(long)]
        only: Option<String>,
    },
    /// Emit the construction of one problem for the instance at --seed
    Render { problem: String },
    /// Check every KB fact on random triangles
    CheckKb,
}

#[derive(Debug)]
pub(crate) struct UsageError(String);

impl<T: fmt::Display> From<T> for UsageError {
    fn from(e: T) -> Self {
        UsageError(e.to_string())
    }
}

pub(crate) struct Ctx<'a> {
    pub kb: KnowledgeBase,
    pub config: RunConfig,
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

/// Parse arguments (program name first) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let kb = match build_kb(&cli.config) {
        Ok(kb) => kb,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let mut ctx = Ctx { kb, config: cli.config, out, err };
    let result = match cli.cmd {
        Cmd::List { filter, status } => commands::list(&mut ctx, filter.as_deref(), status.as_deref()),
        Cmd::Solve { problem } => commands::solve(&mut ctx, &problem),
        Cmd::Verify { problem } => commands::verify(&mut ctx, &problem),
        Cmd::Batch { only } => commands::batch(&mut ctx, only.as_deref()),
        Cmd::Render { problem } => commands::render(&mut ctx, &problem),
        Cmd::CheckKb => commands::check_kb(&mut ctx),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn build_kb(config: &RunConfig) -> Result<KnowledgeBase, UsageError> {
    let mut kb = match &config.kb {
        None => KnowledgeBase::wernick(),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            load_kb(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
    };
    if !config.rule_order.is_empty() {
        let mut front = Vec::new();
        for id in &config.rule_order {
            let i = kb.rules.iter().position(|r| &r.id == id).ok_or_else(|| format!("unknown rule `{id}`"))?;
            front.push(kb.rules.remove(i));
        }
        front.append(&mut kb.rules);
        kb.rules = front;
    }
    Ok(kb)
}

pub(crate) fn parse_status(s: &str) -> Result<Status, UsageError> {
    Status::from_symbol(s.trim()).ok_or_else(|| UsageError(format!("unknown status `{s}` (use S, U, R, L or ?)")))
}

/// A catalog index (`7`) or a point triple (`A,B,H`); triples outside the
/// catalog become ad hoc problems of unknown status.
pub(crate) fn resolve_problem(r: &str) -> Result<(ProblemSpec, Option<CatalogEntry>), UsageError> {
    let catalog = wernick_catalog();
    if let Ok(i) = r.trim().parse::<u32>() {
        let e = catalog.into_iter().find(|e| e.index == i).ok_or_else(|| format!("no problem {i} (catalog has 1-139)"))?;
        return Ok((e.problem(), Some(e)));
    }
    let given = r
        .split(',')
        .map(|p| p.trim().parse::<PointLabel>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format!("unknown point `{}` in `{r}`", e.0))?;
    if given.len() != 3 || given[0] == given[1] || given[0] == given[2] || given[1] == given[2] {
        return Err(UsageError(format!("`{r}` is not a triple of distinct points")));
    }
    let mut key = given.clone();
    key.sort();
    let entry = catalog.into_iter().find(|e| {
        let mut g = e.given.clone();
        g.sort();
        g == key
    });
    let problem = match &entry {
        Some(e) => ProblemSpec { given, ..e.problem() },
        None => ProblemSpec::new(r.replace(' ', ""), &given),
    };
    Ok((problem, entry))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("wernick").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn list_rows() {
        assert_eq!(cli(&["list", "4"]), (0, "4. A, B, G - S\n".into(), String::new()));
        let (code, out, _) = cli(&["list", "--status", "S"]);
        assert_eq!((code, out.lines().count()), (0, 72));
        let (_, out, _) = cli(&["list", "--status", "U"]);
        assert!(out.lines().any(|l| l.starts_with("138. Ta, Tb, Tc - U")));
        assert_eq!(cli(&["list", "B,A,G"]).1, "4. A, B, G - S\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(cli(&["solve", "7", "--instances", "10"]).0, EXIT_OK);
        assert_eq!(cli(&["solve", "138"]).0, EXIT_UNSOLVED);
        assert_eq!(cli(&["solve", "A,B,Zz"]).0, EXIT_USAGE);
        assert_eq!(cli(&["solve", "140"]).0, EXIT_USAGE);
        assert_eq!(cli(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(cli(&["solve"]).0, EXIT_USAGE);
        assert_eq!(cli(&["list", "--status", "X"]).0, EXIT_USAGE);
        assert_eq!(cli(&["solve", "7", "--rule-order", "p99"]).0, EXIT_USAGE);
        assert_eq!(cli(&["solve", "7", "--kb", "/nonexistent/kb"]).0, EXIT_USAGE);
        assert_eq!(cli(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn rule_order_override_moves_rules_first() {
        let cfg = Cli::try_parse_from(["wernick", "--rule-order", "p8_locus,p1_line", "check-kb"]).unwrap().config;
        let kb = build_kb(&cfg).unwrap();
        let ids: Vec<&str> = kb.rules.iter().take(3).map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["p8_locus", "p1_line", "p3_ll"]);
        assert_eq!(kb.rules.len(), KnowledgeBase::wernick().rules.len());
    }

    #[test]
    fn problems_resolve_by_index_or_points() {
        let (p, e) = resolve_problem("7").unwrap();
        assert_eq!(e.unwrap().index, 7);
        assert_eq!(p.status, Status::S);
        let (p, e) = resolve_problem("H, A, B").unwrap();
        assert_eq!(e.unwrap().index, 7);
        assert_eq!(p.given, [PointLabel::H, PointLabel::A, PointLabel::B]);
        let (p, e) = resolve_problem("A,B,O").unwrap();
        assert!(e.is_some() || p.status == Status::Unknown);
        assert!(resolve_problem("A,A,B").is_err());
        assert!(resolve_problem("A,B").is_err());
    }

    #[test]
    fn solve_writes_artifacts() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p7");
        let (code, _, _) = cli(&["solve", "7", "--instances", "5", "--out", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        for f in ["plan.txt", "raw_plan.txt", "verify.txt", "steps.txt", "figure.gcl", "figure.svg"] {
            assert!(path.join(f).is_file(), "{f}");
        }
        let plan = std::fs::read_to_string(path.join("plan.txt")).unwrap();
        assert_eq!(plan.lines().count(), 5);
        assert_eq!(std::fs::read_to_string(path.join("verify.txt")).unwrap().lines().count(), 5);
    }

    #[test]
    fn formats_on_stdout() {
        let (_, out, _) = cli(&["render", "7", "--format", "gclc"]);
        assert!(out.starts_with("point A "));
        let (_, out, _) = cli(&["render", "7"]);
        assert!(out.starts_with("<svg"));
        let (_, out, _) = cli(&["solve", "4", "--instances", "3", "--format", "text"]);
        assert!(out.contains("verification: 3/3"));
        assert!(out.contains("2. Construct the point C"));
    }

    #[test]
    fn verify_and_check_kb() {
        let (code, out, _) = cli(&["verify", "4", "--instances", "4", "--seed", "10"]);
        assert_eq!(code, 0);
        assert!(out.contains("\n10|pass|"));
        assert!(out.contains("verification: 4/4"));
        let (code, out, _) = cli(&["check-kb", "--instances", "5"]);
        assert_eq!(code, 0);
        assert!(out.contains("on 5 triangles") && out.contains(": 0 violations"), "{out}");
    }

    #[test]
    fn batch_summary_adds_up() {
        let (code, out, _) = cli(&["batch", "--only", "R", "--instances", "3"]);
        assert_eq!(code, 0);
        let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(rows.len(), 3);
        let solved = rows.iter().filter(|r| r.split('|').nth(1) == Some("yes")).count();
        assert!(out.contains(&format!("# totals: problems=3 solved={solved} ")), "{out}");
        assert!(out.starts_with("# config: kb=builtin rule-order=default seed=0 instances=3"));
    }
}
