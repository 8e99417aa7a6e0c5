//! `gca`: load groups, rules, configurations and subshifts from JSON
//! files; minimize, compose, verify laws, infer rules from oracles,
//! check entourage inclusions, test subshift closure, and simulate.
//!
//! Exit codes: 0 success, 1 property violation or failed check, 2 input
//! error, 3 resource cap exceeded.

mod render;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use gca::json::{self, parse_group_name, RuleJson, SftJson, System, SystemFile};
use gca::subshift::{star_restricted, Closure};
use gca::uniform::{
    basic_entourage, compose_relations, infer_from_oracle_with, subset, Inference,
    InferenceOptions, LocalOracle, Relation,
};
use gca::{
    is_memory_subset, minimize, Alphabet, Error as CoreError, FiniteSubset, GroupContext,
    RuleTable, Symbol, DEFAULT_TABLE_CAP,
};

#[derive(Parser)]
#[command(name = "gca", version, about = "Cellular automata over groups")]
struct Cli {
    /// Seed for randomized suites and probes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Cap on derived table sizes (entries).
    #[arg(long, global = true)]
    cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Star,
    Global,
}

#[derive(Clone, Copy, ValueEnum)]
enum Law {
    #[value(name = "monoid")]
    Monoid,
    #[value(name = "equivariance")]
    Equivariance,
    #[value(name = "corollaryB")]
    CorollaryB,
    #[value(name = "theoremA")]
    TheoremA,
}

#[derive(Clone, Copy, ValueEnum)]
enum EntourageCheck {
    #[value(name = "theoremA")]
    TheoremA,
    #[value(name = "corollaryB")]
    CorollaryB,
}

#[derive(Clone, Copy, ValueEnum)]
enum SubshiftCheck {
    Member,
    Closure,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Rows,
    Pgm,
}

#[derive(Subcommand)]
enum Command {
    /// Print the minimal memory set, table and dead coordinates of a rule.
    Minimize { file: PathBuf },

    /// Compose two rules and write the canonical composite.
    Compose {
        rule_a: PathBuf,
        rule_b: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Star)]
        method: Method,
        /// Compute via both methods and fail on disagreement.
        #[arg(long)]
        check_both: bool,
        /// Output file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Run a seeded law suite.
    Verify {
        #[arg(value_enum)]
        law: Law,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },

    /// Infer a rule from a local-map oracle.
    Infer {
        /// `builtin:<name>` or `file:<system.json>`.
        #[arg(long)]
        oracle: String,
        /// Largest window radius to try (defaults to the oracle's hint).
        #[arg(long)]
        rmax: Option<u32>,
    },

    /// Check entourage inclusions for a rule over a finite group.
    Entourage {
        #[arg(long, value_enum)]
        check: EntourageCheck,
        /// Group name, e.g. Z/3.
        #[arg(long)]
        group: String,
        /// Alphabet size.
        #[arg(long)]
        alphabet: usize,
        /// Rule file: a system file or a bare rule table.
        #[arg(long)]
        rule: PathBuf,
    },

    /// Membership and closure checks against a subshift of finite type.
    Subshift {
        #[arg(long)]
        sft: PathBuf,
        #[arg(long)]
        rule: PathBuf,
        #[arg(long, value_enum, default_value_t = SubshiftCheck::Closure)]
        check: SubshiftCheck,
        /// Longest period for the automatic probe family over Z.
        #[arg(long, default_value_t = 4)]
        period_max: usize,
    },

    /// Simulate a system over a declared window.
    Run {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
        /// `lo..hi` over Z, `x0..x1,y0..y1` over Z^2 (inclusive).
        #[arg(long)]
        window: String,
        #[arg(long, value_enum, default_value_t = Format::Rows)]
        format: Format,
        /// Output file (pgm over Z) or file prefix (pgm over Z^2).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(classify(&err))
        }
    }
}

fn classify(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(core) = cause.downcast_ref::<CoreError>() {
            return match core {
                CoreError::CapExceeded { .. } => 3,
                CoreError::ClosureWitness { .. } => 1,
                _ => 2,
            };
        }
    }
    2
}

fn dispatch(cli: Cli) -> Result<u8> {
    let cap = cli.cap.unwrap_or(DEFAULT_TABLE_CAP);
    match cli.command {
        Command::Minimize { file } => cmd_minimize(&file),
        Command::Compose {
            rule_a,
            rule_b,
            method,
            check_both,
            out,
        } => cmd_compose(&rule_a, &rule_b, method, check_both, out.as_deref(), cap),
        Command::Verify { law, samples } => cmd_verify(law, samples, cli.seed),
        Command::Infer { oracle, rmax } => cmd_infer(&oracle, rmax, cli.seed, cap),
        Command::Entourage {
            check,
            group,
            alphabet,
            rule,
        } => cmd_entourage(check, &group, alphabet, &rule),
        Command::Subshift {
            sft,
            rule,
            check,
            period_max,
        } => cmd_subshift(&sft, &rule, check, period_max),
        Command::Run {
            file,
            steps,
            window,
            format,
            out,
        } => cmd_run(&file, steps, &window, format, out.as_deref()),
    }
}

fn load_system(path: &Path) -> Result<System> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let file: SystemFile = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse {}", path.display()))?;
    file.resolve()
        .with_context(|| format!("invalid system in {}", path.display()))
}

fn symbols_csv(symbols: &[Symbol]) -> String {
    symbols
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_minimize(file: &Path) -> Result<u8> {
    let system = load_system(file)?;
    let canonical = minimize(&system.rule)?;
    println!("memory: {}", canonical.rule().memory());
    println!("table: {}", symbols_csv(canonical.rule().table()));
    if canonical.removed().is_empty() {
        println!("removed: (none)");
    } else {
        let names: Vec<String> = canonical.removed().iter().map(|g| g.to_string()).collect();
        println!("removed: {}", names.join(","));
    }
    Ok(0)
}

fn cmd_compose(
    rule_a: &Path,
    rule_b: &Path,
    method: Method,
    check_both: bool,
    out: Option<&Path>,
    cap: usize,
) -> Result<u8> {
    let a = load_system(rule_a)?;
    let b = load_system(rule_b)?;
    if a.ctx != b.ctx {
        bail!("the two rules are defined over different groups");
    }
    let composed = if check_both {
        let star = a.rule.star_capped(&b.rule, cap)?;
        let global = a.rule.compose_global_capped(&b.rule, cap)?;
        if minimize(&star)?.rule() != minimize(&global)?.rule() {
            eprintln!("check: star and global composition DISAGREE");
            return Ok(1);
        }
        eprintln!("check: star and global composition agree");
        match method {
            Method::Star => star,
            Method::Global => global,
        }
    } else {
        match method {
            Method::Star => a.rule.star_capped(&b.rule, cap)?,
            Method::Global => a.rule.compose_global_capped(&b.rule, cap)?,
        }
    };
    let canonical = minimize(&composed)?.into_rule();
    let text = serde_json::to_string_pretty(&SystemFile::for_rule(&canonical))?;
    match out {
        Some(path) => fs::write(path, text + "\n")
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(0)
}

fn cmd_verify(law: Law, samples: usize, seed: u64) -> Result<u8> {
    let result = match law {
        Law::TheoremA => verify::theorem_a(samples, seed)?,
        Law::Monoid => verify::monoid(samples, seed)?,
        Law::Equivariance => verify::equivariance(samples, seed)?,
        Law::CorollaryB => verify::corollary_b(samples, seed)?,
    };
    for line in &result.lines {
        println!("{line}");
    }
    match result.violation {
        Some(detail) => {
            println!("counterexample:\n{detail}");
            Ok(1)
        }
        None => Ok(0),
    }
}

fn parse_oracle(spec: &str) -> Result<LocalOracle> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let rule = gca::builtin(name)?;
        return Ok(LocalOracle::from_rule(rule)?);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let system = load_system(Path::new(path))?;
        return Ok(LocalOracle::from_rule(system.rule)?);
    }
    bail!("bad oracle {spec:?} (expected builtin:<name> or file:<path>)");
}

fn cmd_infer(oracle_spec: &str, rmax: Option<u32>, seed: u64, cap: usize) -> Result<u8> {
    let oracle = parse_oracle(oracle_spec)?;
    let rmax = rmax
        .or(oracle.radius_hint())
        .context("no --rmax given and the oracle declares no radius hint")?;
    let opts = InferenceOptions {
        seed,
        table_cap: cap,
        ..InferenceOptions::default()
    };
    match infer_from_oracle_with(&oracle, rmax, &opts)? {
        Inference::Inferred {
            rule,
            radius,
            probes,
            exact,
        } => {
            if exact {
                println!("inferred rule (radius {radius}, exact on {probes} configurations)");
            } else {
                println!("inferred rule (radius {radius}, verified on {probes} probes)");
            }
            println!("memory: {}", rule.memory());
            println!("table: {}", symbols_csv(rule.table()));
            Ok(0)
        }
        Inference::Undetermined {
            radius,
            probes,
            witness,
            values,
        } => {
            println!("not inferred: no determining window within rmax {rmax} ({probes} probes)");
            println!("witness agreeing on ball({radius}):");
            let (x, y) = witness;
            println!(
                "  x: {} -> {}",
                serde_json::to_string(&json::configuration_to_json(&x))?,
                values.0
            );
            println!(
                "  y: {} -> {}",
                serde_json::to_string(&json::configuration_to_json(&y))?,
                values.1
            );
            Ok(1)
        }
    }
}

/// Reads the rule for `entourage`: either a full system file (its group
/// and alphabet must match the flags) or a bare rule table.
fn load_rule_for(ctx: &GroupContext, alphabet: &Alphabet, path: &Path) -> Result<RuleTable> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse {}", path.display()))?;
    if value.get("group").is_some() {
        let file: SystemFile = serde_json::from_value(value)?;
        let system = file.resolve()?;
        if &system.ctx != ctx || system.alphabet.size() != alphabet.size() {
            bail!(
                "{} declares a different group or alphabet than the flags",
                path.display()
            );
        }
        Ok(system.rule)
    } else {
        let rule: RuleJson = serde_json::from_value(value)?;
        Ok(json::rule_from_json(ctx, alphabet, &rule)?)
    }
}

fn all_subsets(universe: &FiniteSubset) -> Vec<FiniteSubset> {
    (0..1usize << universe.len())
        .map(|mask| {
            FiniteSubset::new(
                universe
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, g)| g.clone())
                    .collect(),
            )
        })
        .collect()
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// A group flag: a shorthand name, inline JSON, or a path to a JSON
/// group file.
fn parse_group_flag(spec: &str) -> Result<GroupContext> {
    let trimmed = spec.trim();
    if trimmed.starts_with('{') {
        let json: json::GroupJson = serde_json::from_str(trimmed)
            .with_context(|| format!("bad inline group {spec:?}"))?;
        return Ok(json::group_from_json(&json)?);
    }
    if trimmed.ends_with(".json") {
        let text = fs::read_to_string(trimmed)
            .with_context(|| format!("cannot read group file {trimmed}"))?;
        let json: json::GroupJson = serde_json::from_str(&text)
            .with_context(|| format!("cannot parse group file {trimmed}"))?;
        return Ok(json::group_from_json(&json)?);
    }
    Ok(parse_group_name(trimmed)?)
}

fn cmd_entourage(check: EntourageCheck, group: &str, alphabet: usize, rule: &Path) -> Result<u8> {
    let ctx = parse_group_flag(group)?;
    let alphabet = Alphabet::new(alphabet)?;
    if ctx.order().is_none() {
        bail!("entourage checks need a finite group, got {group:?}");
    }
    let rule = load_rule_for(&ctx, &alphabet, rule)?;
    let v = gca::uniform::rule_diagonal_preimage(&rule)?;
    match check {
        EntourageCheck::TheoremA => {
            let ws = basic_entourage(&ctx, &alphabet, rule.memory())?;
            let ok = subset(&ws, &v)?;
            println!(
                "W_S subset V: {} (|W_S| = {}, |V| = {})",
                verdict(ok),
                ws.len(),
                v.len()
            );
            Ok(if ok { 0 } else { 1 })
        }
        EntourageCheck::CorollaryB => {
            let elements = ctx.enumerate()?;
            let subsets = all_subsets(&elements);
            let entourages: Vec<Relation> = subsets
                .iter()
                .map(|s| basic_entourage(&ctx, &alphabet, s))
                .collect::<gca::Result<_>>()?;

            let mut pair_ok = 0usize;
            let pair_total = subsets.len() * subsets.len();
            for (i, s1) in subsets.iter().enumerate() {
                for (j, s2) in subsets.iter().enumerate() {
                    let meet = s1.intersection(s2);
                    let w_meet = &entourages[subsets.iter().position(|s| *s == meet).unwrap()];
                    let composed = compose_relations(&entourages[i], &entourages[j])?;
                    if subset(w_meet, &composed)? {
                        pair_ok += 1;
                    }
                }
            }
            let line1 = pair_ok == pair_total;
            println!(
                "W_(S inter S') subset W_S o W_S': {} ({pair_ok}/{pair_total} subset pairs)",
                verdict(line1)
            );

            let vv = compose_relations(&v, &v)?;
            let line2 = subset(&vv, &v)?;
            println!(
                "V o V subset V: {} (|V o V| = {}, |V| = {})",
                verdict(line2),
                vv.len(),
                v.len()
            );

            let mut criterion_ok = 0usize;
            for (omega, w) in subsets.iter().zip(&entourages) {
                let table_says = is_memory_subset(&rule, omega)?;
                let entourage_says = subset(w, &v)?;
                if table_says == entourage_says {
                    criterion_ok += 1;
                }
            }
            let line3 = criterion_ok == subsets.len();
            println!(
                "memory criterion (W_Omega subset V iff memory set): {} ({criterion_ok}/{} subsets)",
                verdict(line3),
                subsets.len()
            );
            Ok(if line1 && line2 && line3 { 0 } else { 1 })
        }
    }
}

fn cmd_subshift(
    sft_path: &Path,
    rule_path: &Path,
    check: SubshiftCheck,
    period_max: usize,
) -> Result<u8> {
    let system = load_system(rule_path)?;
    let text = fs::read_to_string(sft_path)
        .with_context(|| format!("cannot read {}", sft_path.display()))?;
    let sft_json: SftJson = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse {}", sft_path.display()))?;
    let sft = json::sft_from_json(&system.ctx, &system.alphabet, &sft_json)?;

    if let SubshiftCheck::Member = check {
        let x = system
            .configuration
            .clone()
            .context("member check needs a configuration in the system file")?;
        let is_member = sft.member(&x)?;
        println!("member: {is_member}");
        return Ok(if is_member { 0 } else { 1 });
    }

    // Probe family: the file's configuration (if any) plus all periodic
    // members over Z up to the period bound.
    let mut probes = Vec::new();
    let mut described = Vec::new();
    if let Some(x) = &system.configuration {
        probes.push(x.clone());
        described.push("1 from the system file".to_string());
    }
    if system.ctx.rank() == Some(1) && system.ctx.order().is_none() {
        let periodic = sft.periodic_members(period_max)?;
        described.push(format!(
            "{} periodic members up to period {period_max}",
            periodic.len()
        ));
        probes.extend(periodic);
    }
    if probes.is_empty() {
        bail!("no probes: give a configuration in the system file or use a Z system");
    }
    println!("probes: {} ({})", probes.len(), described.join(", "));

    match check {
        SubshiftCheck::Member => unreachable!(),
        SubshiftCheck::Closure => match sft.closure_check(&system.rule, &probes)? {
            Closure::Pass { checked } => {
                println!("closure: PASS ({checked}/{checked} images stay in the subshift)");
                Ok(0)
            }
            Closure::Counterexample { index, probe, image } => {
                println!("closure: FAIL (probe {index} leaves the subshift)");
                println!(
                    "  probe: {}",
                    serde_json::to_string(&json::configuration_to_json(&probe))?
                );
                println!(
                    "  image: {}",
                    serde_json::to_string(&json::configuration_to_json(&image))?
                );
                Ok(1)
            }
        },
        SubshiftCheck::Star => {
            let composite = star_restricted(&system.rule, &system.rule, &sft, &probes)?;
            let canonical = minimize(&composite)?.into_rule();
            println!("closure of rule, rule and composite: PASS");
            println!("composite memory: {}", canonical.memory());
            println!("composite table: {}", symbols_csv(canonical.table()));
            Ok(0)
        }
    }
}

fn cmd_run(
    file: &Path,
    steps: usize,
    window: &str,
    format: Format,
    out: Option<&Path>,
) -> Result<u8> {
    let system = load_system(file)?;
    let rank = match (system.ctx.family(), system.ctx.rank()) {
        (gca::Family::Integers, Some(r)) if r <= 2 => r,
        _ => bail!("run supports Z and Z^2 systems only"),
    };
    let x0 = system
        .configuration
        .clone()
        .context("run needs a configuration in the system file")?;
    let window = render::parse_window(window, rank)?;
    let k = system.alphabet.size();

    let mut frames = Vec::with_capacity(steps + 1);
    frames.push(x0);
    for _ in 0..steps {
        let next = system.rule.apply(frames.last().unwrap())?;
        frames.push(next);
    }

    match (format, rank) {
        (Format::Rows, 1) => {
            let mut text = String::new();
            for frame in &frames {
                let row = render::sample_row(&system.ctx, frame, &window)?;
                text.push_str(&render::row_text(&row, k));
                text.push('\n');
            }
            emit(out, &text)?;
        }
        (Format::Rows, _) => {
            let mut text = String::new();
            for (i, frame) in frames.iter().enumerate() {
                if i > 0 {
                    text.push('\n');
                }
                for row in render::sample_grid(&system.ctx, frame, &window)? {
                    text.push_str(&render::row_text(&row, k));
                    text.push('\n');
                }
            }
            emit(out, &text)?;
        }
        (Format::Pgm, 1) => {
            let mut rows = Vec::with_capacity(frames.len());
            for frame in &frames {
                rows.push(render::sample_row(&system.ctx, frame, &window)?);
            }
            emit(out, &render::pgm_text(&rows, k))?;
        }
        (Format::Pgm, _) => {
            let prefix = out.context("pgm output over Z^2 needs --out as a file prefix")?;
            for (i, frame) in frames.iter().enumerate() {
                let grid = render::sample_grid(&system.ctx, frame, &window)?;
                let path = PathBuf::from(format!("{}.{i}.pgm", prefix.display()));
                fs::write(&path, render::pgm_text(&grid, k))
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            eprintln!("wrote {} frames", frames.len());
        }
    }
    Ok(0)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}
