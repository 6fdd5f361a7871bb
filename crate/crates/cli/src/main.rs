use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use critgraph::canon::canonical_form;
use critgraph::coloring::{colorable, is_k_critical, is_k_critical_free, is_k_vertex_critical};
use critgraph::corpus::{load_fixtures, oracle_enumerate, pokrovskiy};
use critgraph::detect::{contains_induced, Pattern};
use critgraph::enumerate::{run_with, EnumProfile, LevelStats, Mode, RunOptions};
use critgraph::graph::parse_graph6_lines;
use critgraph::tripod::{
    check_thmg_assumptions, is_tripod_extension, tripod_gen, GenProgress, TripodGenOptions, TripodProfile,
};
use critgraph::Graph;

/// Known number of 4-critical P6-free graphs per order.
const CRITICAL_P6_COUNTS: [(usize, usize); 10] =
    [(4, 1), (6, 1), (7, 2), (8, 3), (9, 4), (10, 6), (11, 2), (12, 1), (13, 3), (16, 1)];

#[derive(Parser)]
#[command(name = "critgraph", version, about = "Exhaustive generation of critical graphs in hereditary classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
    /// Print per-order counts on stderr while running.
    #[arg(long, global = true)]
    progress: bool,
    /// Write graph6 output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate all k-critical (or k-vertex-critical) graphs of a class.
    Enumerate {
        #[arg(long)]
        k: usize,
        /// Forbidden induced subgraph; repeatable.
        #[arg(long = "forbid", required = true)]
        forbid: Vec<Pattern>,
        #[arg(long = "max-n")]
        max_n: Option<usize>,
        #[arg(long, default_value = "critical")]
        mode: Mode,
        /// graph6 file of start graphs.
        #[arg(long)]
        seeds: Option<PathBuf>,
    },
    /// Test a property of each graph6 line.
    Check {
        #[arg(long)]
        property: Property,
        file: Option<PathBuf>,
    },
    /// Generate the critical 1-vertex extensions of tripods.
    TripodGen {
        #[arg(long)]
        forbid: Pattern,
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long)]
        lookahead: bool,
    },
    /// Build a member of a named family.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Operations on the bundled fixture corpus.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
    /// Brute-force generation of all graphs with a property.
    Oracle {
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long)]
        filter: Property,
    },
    /// Canonical graph6 of each input line.
    Canon { file: Option<PathBuf> },
}

#[derive(Subcommand)]
enum Family {
    /// The P7-free 4-vertex-critical graph on 3r+1 vertices.
    Gr {
        #[arg(long)]
        r: usize,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    /// Check every fixture and the per-order counts.
    Verify,
}

#[derive(Clone, Debug)]
enum Property {
    Free(Pattern),
    Colorable(usize),
    /// Critical relative to the class excluding the listed patterns.
    Critical(usize, Vec<Pattern>),
    VertexCritical(usize),
    TripodExtension,
    LocalStructure,
}

impl Property {
    fn holds(&self, g: &Graph) -> bool {
        match self {
            Property::Free(p) => !contains_induced(g, *p),
            Property::Colorable(k) => colorable(g, *k),
            Property::Critical(k, ps) if ps.is_empty() => is_k_critical(g, *k),
            Property::Critical(k, ps) => is_k_critical_free(g, *k, ps),
            Property::VertexCritical(k) => is_k_vertex_critical(g, *k),
            Property::TripodExtension => is_tripod_extension(g),
            Property::LocalStructure => check_thmg_assumptions(g),
        }
    }
}

#[derive(Debug)]
struct BadProperty(String);

impl fmt::Display for BadProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown property {:?}", self.0)
    }
}

impl std::error::Error for BadProperty {}

impl FromStr for Property {
    type Err = BadProperty;

    fn from_str(s: &str) -> Result<Self, BadProperty> {
        let bad = || BadProperty(s.to_string());
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default().to_ascii_lowercase();
        let k = parts.next().map(|t| t.parse::<usize>().map_err(|_| bad())).transpose()?;
        let rest = parts.next();
        if parts.next().is_some() {
            return Err(bad());
        }
        let prop = match (name.as_str(), k, rest) {
            ("tripod-extension", None, None) => Property::TripodExtension,
            ("thmg", None, None) => Property::LocalStructure,
            ("colorable", Some(k), None) => Property::Colorable(k),
            ("vertex-critical", Some(k), None) => Property::VertexCritical(k),
            ("critical", Some(k), None) => Property::Critical(k, Vec::new()),
            ("critical", Some(k), Some(list)) => Property::Critical(
                k,
                list.split(',').map(|p| p.parse::<Pattern>()).collect::<Result<_, _>>().map_err(|_| bad())?,
            ),
            (free, None, None) if free.ends_with("free") => {
                Property::Free(free.trim_end_matches("free").trim_end_matches('-').parse().map_err(|_| bad())?)
            }
            _ => return Err(bad()),
        };
        if matches!(prop, Property::Colorable(0) | Property::Critical(0, _) | Property::VertexCritical(0)) {
            return Err(bad());
        }
        Ok(prop)
    }
}

/// Errors that end the process with status 2.
struct Usage(String);

impl<E: std::error::Error> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn read_graphs(file: &Option<PathBuf>) -> Result<Vec<Graph>, Usage> {
    let mut text = String::new();
    match file {
        Some(path) => File::open(path)?.read_to_string(&mut text)?,
        None => io::stdin().read_to_string(&mut text)?,
    };
    Ok(parse_graph6_lines(&text)?)
}

fn canonical_lines(graphs: &[Graph]) -> Vec<String> {
    let mut lines: Vec<(usize, String)> =
        graphs.iter().map(|g| (g.order(), canonical_form(g).graph.to_graph6())).collect();
    lines.sort();
    lines.into_iter().map(|(_, s)| s).collect()
}

fn count_table(title: &str, counts: &BTreeMap<usize, usize>) {
    eprintln!("{title}");
    eprintln!("{:>4} {:>10}", "n", "count");
    for (n, c) in counts {
        eprintln!("{n:>4} {c:>10}");
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<bool, Usage> {
    let workers = cli.workers as usize;
    match cli.command {
        Command::Enumerate { k, forbid, max_n, mode, seeds } => {
            let mut profile = EnumProfile::new(k, forbid).mode(mode);
            if let Some(n) = max_n {
                profile = profile.max_n(n);
            }
            if seeds.is_some() {
                profile = profile.seeds(read_graphs(&seeds)?);
            }
            let report_level =
                |s: &LevelStats| eprintln!("order {:>2}: {:>9} graphs, {} found", s.order, s.accepted, s.found_so_far);
            let opts = RunOptions { workers, progress: cli.progress.then_some(&report_level as _) };
            let report = run_with(&profile, &opts)?;
            for line in canonical_lines(&report.found) {
                writeln!(out, "{line}")?;
            }
            count_table("found per order", &report.found_per_order());
            count_table("graphs expanded per order", &report.generated_per_order);
            if !report.exhaustive {
                eprintln!("capped at {} vertices: the list may be incomplete", profile.max_n);
            }
            Ok(true)
        }
        Command::Check { property, file } => {
            for g in read_graphs(&file)? {
                writeln!(out, "{}", property.holds(&g))?;
            }
            Ok(true)
        }
        Command::TripodGen { forbid, max_n, lookahead } => {
            let Pattern::Path(t) = forbid else {
                return Err(Usage(format!("tripod-gen needs a forbidden path, got {forbid}")));
            };
            let report_start =
                |p: &GenProgress| eprintln!("start {}/{}: {} found", p.starts_done, p.starts_total, p.found_so_far);
            let opts = TripodGenOptions { lookahead, workers, progress: cli.progress.then_some(&report_start as _) };
            let report = tripod_gen(&TripodProfile::new(t, max_n), &opts)?;
            for line in canonical_lines(&report.found) {
                writeln!(out, "{line}")?;
            }
            count_table("critical extensions per order", &report.found_per_order());
            count_table("non-prunable tuples per order", &report.generated_per_order);
            if !report.exhaustive {
                eprintln!("capped at {max_n} vertices: larger states were not generated");
            }
            Ok(true)
        }
        Command::Construct { family: Family::Gr { r } } => {
            writeln!(out, "{}", pokrovskiy(r)?.to_graph6())?;
            Ok(true)
        }
        Command::Fixtures { action: FixtureAction::Verify } => verify_fixtures(out),
        Command::Oracle { max_n, filter } => {
            let found = oracle_enumerate(max_n, &|g| filter.holds(g))?;
            for line in canonical_lines(&found) {
                writeln!(out, "{line}")?;
            }
            Ok(true)
        }
        Command::Canon { file } => {
            for g in read_graphs(&file)? {
                writeln!(out, "{}", canonical_form(&g).graph.to_graph6())?;
            }
            Ok(true)
        }
    }
}

fn verify_fixtures(out: &mut dyn Write) -> Result<bool, Usage> {
    let fixtures = load_fixtures()?;
    let p6 = Pattern::Path(6);
    let mut ok = true;
    for (i, g) in fixtures.iter() {
        let checks = [
            ("P6-free", !contains_induced(g, p6)),
            ("not 3-colorable", !colorable(g, 3)),
            ("critical", is_k_critical_free(g, 4, &[p6])),
            ("min degree >= 3", g.min_degree().is_some_and(|d| d >= 3)),
        ];
        let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
        if failed.is_empty() {
            writeln!(out, "PASS F{i} n={} m={}", g.order(), g.edge_count())?;
        } else {
            ok = false;
            writeln!(out, "FAIL F{i} {}", failed.join(", "))?;
        }
    }
    let found = fixtures.counts_per_order();
    let expected: BTreeMap<usize, usize> = CRITICAL_P6_COUNTS.into_iter().collect();
    writeln!(out, "{:>4} {:>8} {:>8}", "n", "found", "expected")?;
    for n in found.keys().chain(expected.keys()).copied().collect::<std::collections::BTreeSet<_>>() {
        let (f, e) = (found.get(&n).copied().unwrap_or(0), expected.get(&n).copied().unwrap_or(0));
        writeln!(out, "{n:>4} {f:>8} {e:>8}{}", if f == e { "" } else { "  mismatch" })?;
    }
    if found != expected {
        ok = false;
    }
    writeln!(out, "{}", if ok { "PASS counts" } else { "FAIL counts" })?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.output {
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                execute(cli, &mut w).and_then(|ok| w.flush().map(|_| ok).map_err(Usage::from))
            }
            Err(e) => Err(Usage(format!("{}: {e}", path.display()))),
        },
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            execute(cli, &mut w).and_then(|ok| w.flush().map(|_| ok).map_err(Usage::from))
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
