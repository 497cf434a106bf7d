use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use geotits::corpus::run_corpus;
use geotits::report::{invalid_report, run_scene, Outcome, Report, RunOptions};
use geotits::scene::Scene;
use geotits::Error;

#[derive(Parser)]
#[command(name = "geotits", version, about = "Exact Tits complexes, polytope groups and apartment maps for finite arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Write the full JSON report here.
    #[arg(long, global = true, value_name = "FILE")]
    json: Option<PathBuf>,
    /// Seed for sampled relation checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include matrices in reports.
    #[arg(long, global = true)]
    matrices: bool,
    /// Record wall-clock timings (makes reports non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a scene.
    Validate { scene: PathBuf },
    /// List the members of the generated collection.
    Closure { scene: PathBuf },
    /// Face counts and region basis of the arrangement.
    Arrangement { scene: PathBuf },
    /// Reduced homology of a Tits-type complex.
    Homology { which: HomologyKind, scene: PathBuf },
    /// Verify a theorem-level statement.
    Verify { which: VerifyKind, scene: PathBuf },
    /// Presentation of the polytope or Lee-Szczarba group.
    Groups { which: GroupKind, scene: PathBuf },
    /// Homology of the semi-simplicial resolution.
    Resolution {
        scene: PathBuf,
        #[arg(long)]
        p_max: Option<usize>,
        /// Use unordered families of disjoint polytopes.
        #[arg(long)]
        unordered: bool,
    },
    /// Run the bundled corpus against its declared outcomes.
    Corpus,
}

#[derive(Clone, Copy, ValueEnum)]
enum HomologyKind {
    T,
    St,
    Pt,
    Local,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    SolomonTits,
    PtLs,
    ExactSeq,
    Duality,
    Suspension,
    Local,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupKind {
    Pt,
    Ls,
}

fn check_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Closure { .. } => "closure",
        Command::Arrangement { .. } => "arrangement",
        Command::Homology { which, .. } => match which {
            HomologyKind::T => "homology-t",
            HomologyKind::St => "homology-st",
            HomologyKind::Pt => "homology-pt",
            HomologyKind::Local => "homology-local",
        },
        Command::Verify { which, .. } => match which {
            VerifyKind::SolomonTits => "solomon-tits",
            VerifyKind::PtLs => "pt-ls",
            VerifyKind::ExactSeq => "exact-seq",
            VerifyKind::Duality => "duality",
            VerifyKind::Suspension => "suspension",
            VerifyKind::Local => "local",
        },
        Command::Groups { which, .. } => match which {
            GroupKind::Pt => "groups-pt",
            GroupKind::Ls => "groups-ls",
        },
        Command::Resolution { .. } => "resolution",
        Command::Corpus => "corpus",
    }
}

fn scene_path(c: &Command) -> Option<&Path> {
    match c {
        Command::Validate { scene }
        | Command::Closure { scene }
        | Command::Arrangement { scene }
        | Command::Homology { scene, .. }
        | Command::Verify { scene, .. }
        | Command::Groups { scene, .. }
        | Command::Resolution { scene, .. } => Some(scene),
        Command::Corpus => None,
    }
}

fn write_json(path: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => Ok(()),
    }
}

fn print_report(r: &Report) {
    if let Some(name) = r.scene.get("name").and_then(|v| v.as_str()) {
        println!("scene {name} sha256:{}", r.scene["digest"].as_str().unwrap_or(""));
    }
    for b in &r.checks {
        println!("{}: {}", b.name, b.result.as_str());
        if !b.data.is_null() {
            println!("  {}", b.data);
        }
        for d in &b.details {
            println!("  [{}] {}: {}", d.name, if d.verdict == geotits::groups::checks::Verdict::Pass { "PASS" } else { "FAIL" }, d.ranks);
        }
        if let Some(msg) = &b.diagnostic {
            eprintln!("{}: {msg}", b.name);
        }
    }
    println!("overall: {}", r.overall.as_str());
}

fn run(cli: Cli) -> Result<i32, String> {
    let mut opts = RunOptions { with_matrices: cli.common.matrices, timings: cli.common.timings, seed: cli.common.seed, ..Default::default() };
    if let Command::Resolution { p_max, unordered, .. } = &cli.command {
        opts.p_max = *p_max;
        opts.unordered = unordered.then_some(true);
    }
    let name = check_name(&cli.command);
    let Some(path) = scene_path(&cli.command) else {
        let run = run_corpus(&opts).map_err(|e| format!("corpus: {e}"))?;
        for e in &run.entries {
            println!("{} {} expected={} actual={} {}", e.scene, e.check, e.expected, e.actual.as_str(), if e.ok { "ok" } else { "MISMATCH" });
        }
        println!("overall: {}", run.overall.as_str());
        write_json(&cli.common.json, &(serde_json::to_string_pretty(&run).expect("serializes") + "\n"))?;
        return Ok(run.overall.exit_code());
    };
    let report = match std::fs::read_to_string(path) {
        Err(e) => invalid_report(name, &Error::InvalidScene(format!("cannot read {}: {e}", path.display())), &opts),
        Ok(text) => match Scene::parse(&text) {
            Ok(s) => run_scene(&s, &[name.to_string()], &opts),
            Err(e) => invalid_report(name, &e, &opts),
        },
    };
    print_report(&report);
    write_json(&cli.common.json, &report.to_json_string())?;
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(Outcome::InvalidScene.exit_code() as u8)
        }
    }
}
