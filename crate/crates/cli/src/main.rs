//! `oddkh`: odd Khovanov homology with the gl(1|1) action from the command
//! line.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use oddkh_core::diagram::{parse_pd, MarkedDiagram};
use oddkh_core::homology::HomologyRow;
use oddkh_core::int::Int;
use oddkh_core::pipeline::{compute, pretzel_report, self_check, Faults, MapBlock, Options, PretzelReport, Report};
use oddkh_core::signs::Flavor;
use oddkh_core::Error;

#[derive(Parser, Debug)]
#[command(name = "oddkh", version, about = "Exact odd Khovanov homology of marked link diagrams with its gl(1|1) action")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Sign assignment type.
    #[arg(long, global = true, default_value = "Y")]
    flavor: Flavor,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homology of a PD file, optionally with the induced action.
    Compute {
        input: PathBuf,
        /// Reduced homology (kernel of e).
        #[arg(long)]
        reduced: bool,
        /// Report e★, f★ and the weight data.
        #[arg(long)]
        action: bool,
        /// Compare F2-dimensions with the even theory.
        #[arg(long)]
        crosscheck_even: bool,
        /// Flip the sign of one cube edge after solving (testing aid).
        #[arg(long, hide = true)]
        debug_flip_edge: Option<usize>,
    },
    /// Torsion of P(n,n,-n) through the reduced cube.
    Pretzel {
        n: usize,
        /// Also run the full hypercube (n <= 3) and compare.
        #[arg(long)]
        full_crosscheck: bool,
    },
    /// Structural self-checks on a PD file.
    Check {
        input: PathBuf,
        /// Flip the sign of one cube edge after solving (testing aid).
        #[arg(long, hide = true)]
        debug_flip_edge: Option<usize>,
    },
}

/// Resolved settings of one run.
#[derive(Debug, Clone)]
struct RunConfig {
    input: Option<PathBuf>,
    flavor: Flavor,
    reduced: bool,
    compute_action: bool,
    crosscheck: bool,
    json: bool,
    threads: Option<usize>,
}

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => report_error(&e),
    }
}

fn report_error(e: &anyhow::Error) -> ExitCode {
    match e.downcast_ref::<Error>() {
        Some(Error::Internal(_)) | Some(Error::InfeasibleSigns { .. }) => {
            eprintln!("INTERNAL: {e:#}");
            ExitCode::from(EXIT_INTERNAL)
        }
        _ => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let common = cli.common;
    match cli.command {
        Command::Compute { input, reduced, action, crosscheck_even, debug_flip_edge } => {
            let cfg = RunConfig {
                input: Some(input),
                flavor: common.flavor,
                reduced,
                compute_action: action,
                crosscheck: crosscheck_even,
                json: common.json,
                threads: common.threads,
            };
            cmd_compute(&cfg, Faults { flip_edge: debug_flip_edge })
        }
        Command::Pretzel { n, full_crosscheck } => {
            let cfg = RunConfig {
                input: None,
                flavor: common.flavor,
                reduced: true,
                compute_action: true,
                crosscheck: full_crosscheck,
                json: common.json,
                threads: common.threads,
            };
            cmd_pretzel(n, &cfg)
        }
        Command::Check { input, debug_flip_edge } => {
            let cfg = RunConfig {
                input: Some(input),
                flavor: common.flavor,
                reduced: false,
                compute_action: true,
                crosscheck: false,
                json: common.json,
                threads: common.threads,
            };
            cmd_check(&cfg, Faults { flip_edge: debug_flip_edge })
        }
    }
}

fn apply_threads(cfg: &RunConfig) -> anyhow::Result<()> {
    if let Some(n) = cfg.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .with_context(|| format!("cannot start {n} worker threads"))?;
    }
    Ok(())
}

fn load(cfg: &RunConfig) -> anyhow::Result<MarkedDiagram> {
    apply_threads(cfg)?;
    let path = cfg.input.as_ref().context("no input file")?;
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(parse_pd(&text)?)
}

fn cmd_compute(cfg: &RunConfig, faults: Faults) -> anyhow::Result<ExitCode> {
    let d = load(cfg)?;
    let opts = Options { flavor: cfg.flavor, reduced: cfg.reduced, action: cfg.compute_action, eliminate: true };
    let report = compute(&d, &opts, cfg.crosscheck, faults)?;
    if cfg.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", compute_text(&report));
    }
    let mod2_ok = report.mod2.as_ref().is_none_or(|m| m.matches);
    Ok(if mod2_ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAIL) })
}

fn fmt_torsion(t: &[Int]) -> String {
    if t.is_empty() {
        "-".into()
    } else {
        t.iter().map(|x| format!("Z/{x}")).collect::<Vec<_>>().join(" ")
    }
}

fn table(rows: &[HomologyRow]) -> String {
    let mut s = String::from("h q rank torsion\n");
    for r in rows {
        let _ = writeln!(s, "{} {} {} {}", r.h, r.q, r.rank, fmt_torsion(&r.torsion));
    }
    s
}

fn blocks(name: &str, bs: &[MapBlock]) -> String {
    let mut s = String::new();
    for b in bs {
        let rows: Vec<String> = b
            .matrix
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
            .collect();
        let _ = writeln!(
            s,
            "{name} ({},{}) -> ({},{}): {}",
            b.source.0,
            b.source.1,
            b.target.0,
            b.target.1,
            rows.join(" ")
        );
    }
    s
}

fn compute_text(r: &Report) -> String {
    let mut s = String::new();
    let d = &r.diagram;
    let _ = writeln!(
        s,
        "diagram: {} crossings (n+ = {}, n- = {}), {} component(s), {} marking(s)",
        d.crossings,
        d.n_plus,
        d.n_minus,
        d.components,
        d.markings.len()
    );
    let _ = writeln!(s, "flavor: {}, reduced: {}", r.flavor, if r.reduced { "yes" } else { "no" });
    s += &table(&r.homology);
    let rel = if r.checks.relations_failed.is_empty() { "ok".to_string() } else { r.checks.relations_failed.join(", ") };
    let _ = writeln!(s, "checks: d∘d = 0 {}; relations {}", if r.checks.d_squared { "ok" } else { "FAILED" }, rel);
    if let Some(a) = &r.action {
        let _ = writeln!(s, "epsilon(f) = {}", a.epsilon_f);
        if r.reduced && a.f.is_empty() && a.f_profile.is_empty() && a.epsilon_f != "0" {
            let _ = writeln!(s, "f: not defined on reduced homology (epsilon(f) != 0)");
        }
        s += &blocks("f*", &a.f);
        s += &blocks("e*", &a.e);
        if let Some(ok) = a.bracket_ok {
            let _ = writeln!(s, "e*f* + f*e* = epsilon(f): {}", if ok { "yes" } else { "NO" });
        }
        for w in &a.weights {
            let ws: Vec<String> = w.weights.iter().map(|(a, b)| format!("({a},{b})")).collect();
            let _ = writeln!(s, "weights ({},{}): {}", w.h, w.q, ws.join(" "));
        }
    }
    if let Some(m) = &r.mod2 {
        if m.matches {
            let _ = writeln!(s, "mod2: MATCH");
        } else {
            let bad: Vec<String> = m.mismatches.iter().map(|x| format!("({},{}) odd {} even {}", x.h, x.q, x.odd, x.even)).collect();
            let _ = writeln!(s, "mod2: MISMATCH {}", bad.join("; "));
        }
    }
    s
}

fn cmd_pretzel(n: usize, cfg: &RunConfig) -> anyhow::Result<ExitCode> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()).into());
    }
    apply_threads(cfg)?;
    let full = cfg.crosscheck && n <= 3;
    let report = pretzel_report(n, cfg.flavor, None, full)?;
    if cfg.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", pretzel_text(&report, cfg.crosscheck && !full));
    }
    let ok = report.crosscheck.as_ref().is_none_or(|c| c.ok());
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAIL) })
}

fn pretzel_text(r: &PretzelReport, skipped: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "P({n},{n},-{n}), flavor {}, reduced cube with {} states", r.flavor, r.cube_vertices, n = r.n);
    s += &table(&r.homology);
    let _ = writeln!(s, "torsion: {}", fmt_torsion(&r.torsion));
    if r.witness.is_empty() {
        let _ = writeln!(s, "no Z/{} summand found", r.n);
    }
    for w in &r.witness {
        let _ = writeln!(
            s,
            "torsion Z/{} at (h,q)=({},{}); in image of f: {}",
            w.divisor,
            w.h,
            w.q,
            if w.in_image { "yes" } else { "no" }
        );
    }
    if let Some(c) = &r.crosscheck {
        let _ = writeln!(s, "crosscheck: {}", if c.ok() { "MATCH" } else { "MISMATCH" });
    } else if skipped {
        let _ = writeln!(s, "crosscheck: skipped (full hypercube only for n <= 3)");
    }
    s
}

fn cmd_check(cfg: &RunConfig, faults: Faults) -> anyhow::Result<ExitCode> {
    let d = load(cfg)?;
    let results = self_check(&d, cfg.flavor, faults)?;
    if cfg.json {
        println!("{}", serde_json::to_string_pretty(&results)?);
    } else {
        for r in &results {
            println!("{} {}", if r.ok { "ok  " } else { "FAIL" }, r.name);
        }
    }
    match results.iter().find(|r| !r.ok) {
        Some(first) => {
            eprintln!("check failed: {}", first.name);
            Ok(ExitCode::from(EXIT_FAIL))
        }
        None => Ok(ExitCode::SUCCESS),
    }
}
