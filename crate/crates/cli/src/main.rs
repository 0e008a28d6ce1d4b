//! Command-line front end. JSON and graph6 go to stdout, logs to stderr.
//!
//! Exit codes: 0 success, 1 property violated, 2 usage error, 3 budget exceeded.

mod input;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use satgraph::discharging::{self, prop32_check, root_candidates};
use satgraph::formulas::{render_csv, render_text, sat_table};
use satgraph::saturation::{audit_prop31, check_saturated, parse_certificate, verify_certificate, write_certificate};
use satgraph::search::{self, Checkpoint, Confirmation, Progress, SatStatus, SearchBudget, SearchOptions};
use satgraph::{emit_graph6, is_saturated, parse_graph6, MultipartitePattern, SaturationVerdict};

use input::{construct, GraphInput};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Outcome {
    Success = 0,
    Violated = 1,
    Usage = 2,
    Budget = 3,
}

type CmdResult = Result<Outcome, String>;

/// Writes to stdout; a closed pipe ends the process quietly.
fn emit(args: fmt::Arguments) {
    if io::stdout().lock().write_fmt(args).is_err() {
        std::process::exit(0);
    }
}

macro_rules! out {
    ($($t:tt)*) => { emit(format_args!($($t)*)) };
}

macro_rules! outln {
    ($($t:tt)*) => { emit(format_args!("{}\n", format_args!($($t)*))) };
}

#[derive(Debug, Parser)]
#[command(
    name = "satgraph",
    version,
    about = "Saturation numbers of complete multipartite graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Emit {
    G6,
    Edges,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that graphs are saturated for a pattern, with certificates
    Verify {
        #[command(flatten)]
        input: GraphInput,
        /// Part sizes, e.g. 3,3
        #[arg(short, long, default_value = "3,3")]
        pattern: MultipartitePattern,
        /// Write the saturation certificate here (single graph only)
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Re-validate an existing certificate instead of computing one
        #[arg(long, conflicts_with = "certificate")]
        check_certificate: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Compute or confirm sat(n, P) by exhaustive search
    Sat {
        #[arg(short)]
        n: usize,
        #[arg(short, long, default_value = "3,3")]
        pattern: MultipartitePattern,
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Wall-clock limit, e.g. 90s or 2h
        #[arg(long, value_parser = humantime::parse_duration)]
        max_time: Option<Duration>,
        /// Only enumerate graphs with at most this many edges
        #[arg(long)]
        edge_cap: Option<usize>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, default_value_t = search::DEFAULT_SEED)]
        seed: u64,
        /// Greedy runs used for the initial upper bound
        #[arg(long, default_value_t = search::DEFAULT_GREEDY_RUNS)]
        greedy_runs: usize,
        #[arg(long)]
        no_min_degree_pruning: bool,
        /// A saturated graph (graph6) bounding the search from above
        #[arg(long)]
        upper_bound: Option<String>,
        /// Confirm this claimed value instead of computing the minimum
        #[arg(long)]
        confirm: Option<usize>,
        /// Where to write the frontier if the budget runs out
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue from a checkpoint file
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Report progress on stderr
        #[arg(long)]
        progress: bool,
    },
    /// Partition, charges and identities around a minimum-degree vertex
    Analyze {
        #[command(flatten)]
        input: GraphInput,
        /// Root vertex; must have minimum degree
        #[arg(long, conflicts_with = "min_degree_vertex")]
        vertex: Option<usize>,
        /// Root selection rule
        #[arg(long, value_parser = ["auto"], default_value = "auto")]
        min_degree_vertex: String,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
    },
    /// Known values and bounds over a range of orders
    Table {
        #[arg(short, long, default_value = "3,3")]
        pattern: MultipartitePattern,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: TableFormat,
    },
    /// Build a named construction
    Construct {
        /// gn:N, ehm:N,K, edge-join-cycle:N or small:N
        name: String,
        #[arg(long, value_enum, default_value = "g6")]
        emit: Emit,
    },
    /// Recompute the cached K_{3,3} witnesses for 6 <= n <= 11
    DeriveWitnesses {
        #[arg(long, default_value_t = 6)]
        from: usize,
        #[arg(long, default_value_t = 11)]
        to: usize,
        #[arg(long, value_parser = humantime::parse_duration)]
        max_time: Option<Duration>,
        #[arg(long)]
        threads: Option<usize>,
        /// Write records here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn print_json(v: &impl Serialize) {
    outln!("{}", serde_json::to_string(v).expect("serializable"));
}

fn verify(
    input: &GraphInput,
    pattern: &MultipartitePattern,
    certificate: Option<&PathBuf>,
    check: Option<&PathBuf>,
    as_json: bool,
) -> CmdResult {
    let graphs = input.load()?;
    if (certificate.is_some() || check.is_some()) && graphs.len() != 1 {
        return Err("certificates need exactly one input graph".into());
    }
    let mut worst = Outcome::Success;
    for ng in &graphs {
        let g = &ng.graph;
        if let Some(path) = check {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let cert = parse_certificate(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            let free = satgraph::pattern::contains(g, pattern);
            let res = match free {
                Some(w) => Err(format!("graph contains {pattern}: {w}")),
                None => verify_certificate(g, pattern, &cert).map_err(|e| e.to_string()),
            };
            let ok = res.is_ok();
            if as_json {
                print_json(&json!({
                    "name": ng.name, "graph6": emit_graph6(g), "edges": g.size(),
                    "pattern": pattern.to_list(), "certificate_valid": ok,
                    "error": res.as_ref().err(),
                }));
            } else {
                match &res {
                    Ok(()) => outln!("{}: certificate valid, saturated, {} edges", ng.name, g.size()),
                    Err(e) => outln!("{}: certificate invalid: {e}", ng.name),
                }
            }
            worst = worst.max(if ok { Outcome::Success } else { Outcome::Violated });
            continue;
        }
        let verdict = check_saturated(g, pattern);
        let (label, detail) = match &verdict {
            SaturationVerdict::Saturated { .. } => ("saturated", None),
            SaturationVerdict::ContainsPattern(w) => ("contains_pattern", Some(w.to_string())),
            SaturationVerdict::MissingEdgeFails(e) => ("missing_edge_fails", Some(e.to_string())),
        };
        let mut cert_path = None;
        if let (SaturationVerdict::Saturated { certificate: cert }, Some(path)) = (&verdict, certificate) {
            fs::write(path, write_certificate(cert)).map_err(|e| format!("{}: {e}", path.display()))?;
            cert_path = Some(path.display().to_string());
        }
        if as_json {
            print_json(&json!({
                "name": ng.name, "graph6": emit_graph6(g), "edges": g.size(),
                "pattern": pattern.to_list(), "verdict": label,
                "witness": matches!(verdict, SaturationVerdict::ContainsPattern(_)).then(|| detail.clone()).flatten(),
                "failing_edge": matches!(verdict, SaturationVerdict::MissingEdgeFails(_)).then(|| detail.clone()).flatten(),
                "certificate": cert_path,
            }));
        } else {
            match &verdict {
                SaturationVerdict::Saturated { .. } => outln!("{}: saturated, {} edges", ng.name, g.size()),
                SaturationVerdict::ContainsPattern(w) => outln!("{}: contains {pattern}: {w}", ng.name),
                SaturationVerdict::MissingEdgeFails(e) => {
                    outln!("{}: not saturated: adding {e} creates no {pattern}", ng.name)
                }
            }
            if let Some(p) = &cert_path {
                outln!("certificate: {p}");
            }
        }
        if !verdict.is_saturated() {
            worst = worst.max(Outcome::Violated);
        }
    }
    Ok(worst)
}

struct SatArgs {
    n: usize,
    pattern: MultipartitePattern,
    confirm: Option<usize>,
    checkpoint: Option<PathBuf>,
}

fn sat(args: SatArgs, opts: SearchOptions) -> CmdResult {
    let SatArgs {
        n,
        pattern,
        confirm,
        checkpoint,
    } = args;
    let save = |cp: &Checkpoint| -> Result<(), String> {
        if let Some(path) = &checkpoint {
            fs::write(path, cp.write()).map_err(|e| format!("{}: {e}", path.display()))?;
            eprintln!("checkpoint: {} ({} frontier nodes)", path.display(), cp.frontier.len());
        }
        Ok(())
    };
    if let Some(claimed) = confirm {
        let c = search::confirm_value(n, &pattern, claimed, &opts).map_err(|e| e.to_string())?;
        let (outcome, witness, explored, code) = match &c {
            Confirmation::Confirmed { witness, explored } => ("Confirmed", Some(witness), *explored, Outcome::Success),
            Confirmation::RefutedWithWitness { witness, explored } => {
                ("RefutedWithWitness", Some(witness), *explored, Outcome::Violated)
            }
            Confirmation::Unattainable { explored } => ("Unattainable", None, *explored, Outcome::Violated),
            Confirmation::Inconclusive { witness, checkpoint } => {
                save(checkpoint)?;
                ("Inconclusive", witness.as_ref(), checkpoint.explored, Outcome::Budget)
            }
        };
        print_json(&json!({
            "n": n, "pattern": pattern.to_list(), "claimed": claimed, "outcome": outcome,
            "witness_g6": witness.map(emit_graph6), "explored": explored,
        }));
        return Ok(code);
    }
    let r = search::exact_sat(n, &pattern, &opts).map_err(|e| e.to_string())?;
    if let Some(cp) = &r.checkpoint {
        save(cp)?;
    }
    print_json(&r);
    Ok(if r.status == SatStatus::BudgetExceeded {
        Outcome::Budget
    } else {
        Outcome::Success
    })
}

fn analyze(input: &GraphInput, vertex: Option<usize>, format: ReportFormat) -> CmdResult {
    let graphs = input.load()?;
    let k33 = MultipartitePattern::bipartite(3, 3).expect("valid pattern");
    let mut worst = Outcome::Success;
    for ng in &graphs {
        let g = &ng.graph;
        let a = match vertex {
            Some(v) => v,
            None => root_candidates(g)[0],
        };
        // a root that is out of range or not of minimum degree is a usage error
        let report = discharging::analyze(g, a).map_err(|e| e.to_string())?;
        let saturated = is_saturated(g, &k33);
        let (prop31, prop32) = if saturated {
            let partition = discharging::build_partition(g, a).expect("root validated above");
            (
                Some(audit_prop31(g, a).map_err(|e| e.to_string())?),
                Some(prop32_check(g, &partition).map_err(|e| e.to_string())?),
            )
        } else {
            (None, None)
        };
        let ok = report.identities_hold()
            && prop31.as_ref().is_none_or(|r| r.passes())
            && prop32.as_ref().is_none_or(|r| r.passes());
        match format {
            ReportFormat::Json => print_json(&json!({
                "name": ng.name, "graph6": emit_graph6(g), "report": report,
                "k33_saturated": saturated, "prop31": prop31, "prop32": prop32,
            })),
            ReportFormat::Text => {
                outln!("{}", ng.name);
                out!("{}", report.to_text());
                out!("V2 = {}", if report.classes.v2 == 0 { "empty" } else { "nonempty" });
                outln!(", K_{{3,3}}-saturated: {saturated}");
                if let Some(r) = &prop31 {
                    outln!("root-neighbourhood audit: {} violations", r.violations.len());
                }
                if let Some(r) = &prop32 {
                    outln!(
                        "V4^20 pair check: {} qualifying pairs, passes: {}",
                        r.qualifying.len(),
                        r.passes()
                    );
                }
            }
        }
        if !ok {
            worst = worst.max(Outcome::Violated);
        }
    }
    Ok(worst)
}

fn table(pattern: &MultipartitePattern, from: usize, to: usize, format: TableFormat) -> CmdResult {
    let rows = sat_table(pattern, from, to).map_err(|e| e.to_string())?;
    match format {
        TableFormat::Text => out!("{}", render_text(&rows)),
        TableFormat::Csv => out!("{}", render_csv(&rows)),
        TableFormat::Json => print_json(&rows),
    }
    Ok(Outcome::Success)
}

fn construct_cmd(name: &str, emit: Emit) -> CmdResult {
    let c = construct(name)?;
    let g = &c.graph;
    eprintln!("{}: {} vertices, {} edges", c.name, g.order(), g.size());
    match emit {
        Emit::G6 => outln!("{}", emit_graph6(g)),
        Emit::Edges => {
            for e in g.edges() {
                outln!("{} {}", e.u, e.v);
            }
        }
        Emit::Json => print_json(&json!({
            "name": c.name, "n": g.order(), "edges": g.size(), "claimed_edges": c.claimed_edges,
            "graph6": emit_graph6(g), "labels": c.labels,
        })),
    }
    Ok(Outcome::Success)
}

fn derive_witnesses(
    from: usize,
    to: usize,
    max_time: Option<Duration>,
    threads: Option<usize>,
    output: Option<&PathBuf>,
) -> CmdResult {
    if !(6..=11).contains(&from) || !(from..=11).contains(&to) {
        return Err("derive-witnesses covers 6 <= from <= to <= 11".into());
    }
    let k33 = MultipartitePattern::bipartite(3, 3).expect("valid pattern");
    let mut records = String::from("# n graph6 edges: least canonical K_{3,3}-saturated graph of minimum size\n");
    let mut worst = Outcome::Success;
    for n in from..=to {
        let target = if n <= 8 { 2 * n } else { 3 * n - 9 };
        let opts = SearchOptions {
            budget: SearchBudget {
                max_time,
                edge_cap: Some(target),
                ..SearchBudget::default()
            },
            threads,
            ..SearchOptions::default()
        };
        let r = search::exact_sat(n, &k33, &opts).map_err(|e| e.to_string())?;
        eprintln!(
            "n = {n}: {:?}, {} edges, {} nodes, {:.1?}",
            r.status, r.value, r.explored, r.elapsed
        );
        match r.status {
            SatStatus::Exact if r.value == target => {
                records += &format!("{n} {} {}\n", emit_graph6(&r.witness), r.value);
            }
            SatStatus::BudgetExceeded => worst = worst.max(Outcome::Budget),
            _ => worst = worst.max(Outcome::Violated),
        }
    }
    match output {
        Some(path) => fs::write(path, &records).map_err(|e| format!("{}: {e}", path.display()))?,
        None => out!("{records}"),
    }
    Ok(worst)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Verify {
            input,
            pattern,
            certificate,
            check_certificate,
            json,
        } => verify(&input, &pattern, certificate.as_ref(), check_certificate.as_ref(), json),
        Command::Sat {
            n,
            pattern,
            max_nodes,
            max_time,
            edge_cap,
            threads,
            seed,
            greedy_runs,
            no_min_degree_pruning,
            upper_bound,
            confirm,
            checkpoint,
            resume,
            progress,
        } => {
            let upper_bound = upper_bound
                .map(|s| parse_graph6(&s).map_err(|e| format!("--upper-bound: {e}")))
                .transpose()?;
            let resume = resume
                .map(|path| {
                    let text = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                    Checkpoint::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
                })
                .transpose()?;
            let report = |p: &Progress| {
                eprintln!(
                    "explored {} nodes, cap {}, best {:?}, {}",
                    p.explored,
                    p.cap,
                    p.best,
                    humantime::format_duration(Duration::from_secs(p.elapsed.as_secs()))
                )
            };
            let opts = SearchOptions {
                budget: SearchBudget {
                    max_nodes,
                    max_time,
                    edge_cap,
                },
                threads,
                seed,
                greedy_runs,
                min_degree_pruning: !no_min_degree_pruning,
                upper_bound,
                resume,
                progress: progress.then_some(&report as &(dyn Fn(&Progress) + Sync)),
            };
            sat(
                SatArgs {
                    n,
                    pattern,
                    confirm,
                    checkpoint,
                },
                opts,
            )
        }
        Command::Analyze {
            input,
            vertex,
            min_degree_vertex: _,
            format,
        } => analyze(&input, vertex, format),
        Command::Table {
            pattern,
            from,
            to,
            format,
        } => table(&pattern, from, to, format),
        Command::Construct { name, emit } => construct_cmd(&name, emit),
        Command::DeriveWitnesses {
            from,
            to,
            max_time,
            threads,
            output,
        } => derive_witnesses(from, to, max_time, threads, output.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) => ExitCode::from(o as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Outcome::Usage as u8)
        }
    }
}
