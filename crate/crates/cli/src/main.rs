use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use twistlab_core::batch::{jobs, verify_jobs};
use twistlab_core::derivation::{replay, Derivation};
use twistlab_core::homology::{is_homologically_trivial, symplectic_check, word_to_matrix};
use twistlab_core::invariants::{count_fibers, report, section_data};
use twistlab_core::library::{family_ambient, family_note, family_on, Library, FAMILY_NAMES};
use twistlab_core::pipelines;
use twistlab_core::rewrite::{collect_subword, MoveScript, DEFAULT_BUDGET};
use twistlab_core::surface::{
    chain_config, degenerate_star_config_genus2, gsr_capped_config, standard_chain_config,
    torus_config, torus_star_config, CurveConfig,
};
use twistlab_core::word::{Relator, TwistWord};
use twistlab_core::Error;

#[derive(Parser)]
#[command(name = "twistlab", version, about = "Dehn twist relators and Lefschetz fibration invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a relator acts trivially on homology.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Check every family for genus 1..=max-genus.
        #[arg(long, conflicts_with_all = ["family", "word"])]
        all: bool,
        #[arg(long, default_value_t = 5)]
        max_genus: u32,
    },
    /// Fiber counts and (e, σ, c1², χ) of a positive relator, as JSON.
    Invariants {
        #[command(flatten)]
        input: Input,
        /// Blow down the nullhomotopic vanishing cycles.
        #[arg(long)]
        blowdown: bool,
    },
    /// Replay a move script and emit the derivation log.
    Rewrite {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        script: PathBuf,
        /// Write the log here and print only the final word.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a scripted example and compare against its expected values.
    Reproduce {
        /// One of 5.1, 5.2, 5.3, 5.4, 5.5p, 5.5, 5.6.
        id: String,
        /// Write one derivation log per branch into this directory.
        #[arg(long)]
        log_dir: Option<PathBuf>,
        /// Fiber count parameter of the elliptic example.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Search for moves that make a pattern contiguous.
    Collect {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Built-in relations.
    Library {
        #[command(subcommand)]
        action: LibraryAction,
    },
}

#[derive(Subcommand)]
enum LibraryAction {
    /// Print the relation library as JSON.
    Export,
}

#[derive(Args)]
struct Input {
    /// Family name: A, B, C, D, GSR_capped, torus_elliptic or C_printed.
    #[arg(long, conflicts_with = "word")]
    family: Option<String>,
    /// Word text, e.g. "(a^2 b)^3".
    #[arg(long)]
    word: Option<String>,
    #[arg(long)]
    genus: Option<u32>,
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Configuration: a JSON file or one of torus, torus-star, star-g2,
    /// standard-g<G>, gsr-capped-g<G>, chain-<prefix>-g<G>.
    #[arg(long)]
    config: Option<String>,
    /// Curve name prefix for families on a custom configuration.
    #[arg(long)]
    prefix: Option<String>,
}

/// Exit status 1 (a check failed) or 2 (bad input).
enum Failure {
    Failed(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::UnknownCurve(_)
            | Error::UnknownFamily(_)
            | Error::UnknownRelation(_)
            | Error::UnknownPlacement(_)
            | Error::InvalidGenus(_)
            | Error::ClassLength { .. }
            | Error::DuplicateCurve(_)
            | Error::Format(_)
            | Error::Unsupported(_) => Failure::Usage(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Failed(format!("{}: {e}", path.display())))
}

fn genus_suffix(name: &str, prefix: &str) -> Option<u32> {
    name.strip_prefix(prefix)?.parse().ok()
}

fn named_config(name: &str) -> Result<CurveConfig, Failure> {
    let path = Path::new(name);
    if path.is_file() {
        let cfg: CurveConfig =
            serde_json::from_str(&read(path)?).map_err(|e| usage(format!("{name}: {e}")))?;
        let problems = cfg.validate();
        if !problems.is_empty() {
            let list: Vec<String> = problems.iter().map(ToString::to_string).collect();
            return Err(usage(format!("{name}: {}", list.join("; "))));
        }
        return Ok(cfg);
    }
    let cfg = match name {
        "torus" => torus_config(),
        "torus-star" => torus_star_config(),
        "star-g2" => degenerate_star_config_genus2(),
        _ => {
            if let Some(g) = genus_suffix(name, "standard-g") {
                standard_chain_config(g)?
            } else if let Some(g) = genus_suffix(name, "gsr-capped-g") {
                gsr_capped_config(g)?
            } else if let Some((prefix, g)) = name
                .strip_prefix("chain-")
                .and_then(|rest| rest.rsplit_once("-g"))
                .and_then(|(p, g)| Some((p, g.parse().ok()?)))
            {
                chain_config(g, prefix)?
            } else {
                return Err(usage(format!("unknown configuration `{name}`")));
            }
        }
    };
    Ok(cfg)
}

struct Resolved {
    label: String,
    family: Option<(String, u32)>,
    relator: Relator,
}

impl Input {
    fn resolve(&self) -> Result<Resolved, Failure> {
        let config = self.config.as_deref().map(named_config).transpose()?.map(Arc::new);
        if let Some(name) = &self.family {
            let g = match (self.genus, name.as_str()) {
                (Some(g), _) => g,
                (None, "torus_elliptic") => 1,
                (None, _) => return Err(usage("--family needs --genus")),
            };
            let ambient = match &config {
                Some(c) => Arc::clone(c),
                None => family_ambient(name, g)?,
            };
            let prefix = match &self.prefix {
                Some(p) => p.clone(),
                None => ["c", "b", "a"]
                    .into_iter()
                    .find(|p| ambient.contains(&format!("{p}1")))
                    .unwrap_or("c")
                    .to_string(),
            };
            let relator = family_on(name, g, self.n, ambient, &prefix)?;
            return Ok(Resolved {
                label: format!("{name}(g={g}, n={})", self.n),
                family: Some((name.clone(), g)),
                relator,
            });
        }
        let Some(text) = &self.word else {
            return Err(usage("give --family or --word"));
        };
        let ambient = match (config, self.genus) {
            (Some(c), Some(g)) if c.genus() != g => {
                return Err(usage(format!("configuration has genus {}, not {g}", c.genus())))
            }
            (Some(c), _) => c,
            (None, Some(1)) => Arc::new(torus_star_config()),
            (None, Some(g)) => Arc::new(standard_chain_config(g)?),
            (None, None) => return Err(usage("--word needs --genus or --config")),
        };
        let word = TwistWord::parse(ambient, text)?;
        Ok(Resolved {
            label: text.clone(),
            family: None,
            relator: Relator::new(word),
        })
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON value"));
}

fn verify(input: &Input, all: bool, max_genus: u32) -> Outcome {
    if all {
        let names: Vec<&str> = FAMILY_NAMES.iter().copied().filter(|f| *f != "C_printed").collect();
        let results = verify_jobs(&jobs(&names, max_genus, input.n), true)?;
        let mut failed = 0;
        for c in &results {
            let status = if c.trivial { "pass" } else { "fail" };
            failed += usize::from(!c.trivial);
            println!("{status}: {}(g={}, n={}) {} letters", c.job.family, c.job.genus, c.job.n, c.letters);
        }
        println!("{} of {} relators verified", results.len() - failed, results.len());
        return if failed == 0 {
            Ok(())
        } else {
            Err(Failure::Failed(format!("{failed} relators failed")))
        };
    }
    let r = input.resolve()?;
    if let Some(note) = r.family.as_ref().and_then(|(f, _)| family_note(f)) {
        eprintln!("note: {note}");
    }
    let m = word_to_matrix(&r.relator.word)?;
    let check = is_homologically_trivial(&r.relator)?;
    let symplectic = symplectic_check(&m);
    if check.trivial && symplectic {
        println!("pass: {} ({} letters) acts trivially on homology", r.label, r.relator.word.len());
        return Ok(());
    }
    println!("fail: {} ({} letters) does not act trivially on homology", r.label, r.relator.word.len());
    if let Some(w) = check.witness {
        println!("witness:\n{w}");
    }
    if !symplectic {
        println!("image is not symplectic");
    }
    Err(Failure::Failed(String::new()))
}

fn invariants(input: &Input, blowdown: bool) -> Outcome {
    let r = input.resolve()?;
    let g = r.relator.word.ambient().genus();
    let fc = count_fibers(&r.relator)?;
    let rep = report(g, &fc, blowdown)?;
    let mut out = json!({
        "input": r.label,
        "letters": r.relator.word.len(),
        "blowdown": blowdown,
        "fiber_counts": fc,
        "report": rep,
    });
    if let Some((f, g)) = &r.family {
        if let Some(sections) = section_data(f, *g) {
            out["section_self_intersections"] = json!(sections);
        }
        if let Some(note) = family_note(f) {
            out["note"] = json!(note);
        }
    }
    print_json(&out);
    Ok(())
}

fn rewrite(input: &Input, script: &Path, out: Option<&Path>) -> Outcome {
    let r = input.resolve()?;
    let script: MoveScript = serde_json::from_str(&read(script)?)
        .map_err(|e| usage(format!("{}: {e}", script.display())))?;
    let mut d = Derivation::new(r.label, r.relator)?;
    d.apply_script(&script, "")?;
    let log = d.to_jsonl()?;
    match out {
        Some(path) => {
            write(path, &log)?;
            println!("{}", d.current().word);
        }
        None => print!("{log}"),
    }
    Ok(())
}

fn reproduce(id: &str, log_dir: Option<&Path>, n: Option<u32>) -> Outcome {
    let branches = match (id, n) {
        ("5.1", Some(n)) => vec![pipelines::elliptic(n)?],
        (_, Some(_)) => return Err(usage("--n only applies to 5.1")),
        _ if !pipelines::EXAMPLE_IDS.contains(&id) => {
            return Err(usage(format!(
                "unknown example `{id}`; expected one of {}",
                pipelines::EXAMPLE_IDS.join(", ")
            )))
        }
        _ => pipelines::run(id)?,
    };
    if let Some(dir) = log_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::Failed(format!("{}: {e}", dir.display())))?;
    }
    let mut mismatches = 0;
    for d in &branches {
        let log = d.to_jsonl()?;
        let rerun = replay(&log)?;
        println!("{} ({} steps)", d.example(), rerun.steps);
        for c in &rerun.checkpoints {
            let ok = c.matches();
            mismatches += usize::from(!ok);
            println!(
                "  {:<16} e = {:>3}  σ = {:>3}  c1² = {:>3}  χ = {:>2}  expected ({}, {}) [{}] {}",
                c.label,
                c.report.e,
                c.report.sigma,
                c.report.c1sq,
                c.report.chi,
                c.expected.e,
                c.expected.sigma,
                c.source.as_str(),
                if ok { "ok" } else { "MISMATCH" }
            );
        }
        let fc = &count_fibers(&rerun.final_relator)?;
        let seps: Vec<String> = fc.s.iter().map(|(h, c)| format!("s{h} = {c}")).collect();
        println!(
            "  final: s0 = {}{}{}, n_trivial = {}",
            fc.s0,
            if seps.is_empty() { "" } else { ", " },
            seps.join(", "),
            fc.n_trivial
        );
        if let Some(dir) = log_dir {
            write(&dir.join(format!("{}.jsonl", d.example())), &log)?;
        }
    }
    if mismatches == 0 {
        Ok(())
    } else {
        Err(Failure::Failed(format!("{mismatches} checkpoints differ")))
    }
}

fn collect(input: &Input, pattern: &str, budget: usize) -> Outcome {
    let r = input.resolve()?;
    let pattern = TwistWord::parse(Arc::clone(r.relator.word.ambient()), pattern)?;
    match collect_subword(&r.relator, &pattern, budget)? {
        Some(found) => {
            print_json(&json!({
                "found": true,
                "index": found.index,
                "explored": found.explored,
                "result": found.result.word.to_text(),
                "script": found.script,
            }));
            Ok(())
        }
        None => {
            print_json(&json!({ "found": false, "budget": budget }));
            Err(Failure::Failed(format!("`{pattern}` not collected within {budget} states")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify { input, all, max_genus } => verify(input, *all, *max_genus),
        Command::Invariants { input, blowdown } => invariants(input, *blowdown),
        Command::Rewrite { input, script, out } => rewrite(input, script, out.as_deref()),
        Command::Reproduce { id, log_dir, n } => reproduce(id, log_dir.as_deref(), *n),
        Command::Collect { input, pattern, budget } => collect(input, pattern, *budget),
        Command::Library { action: LibraryAction::Export } => {
            Library::builtin().map(|lib| print!("{}", lib.to_json())).map_err(Failure::from)
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Failed(msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
