//! `npdr`: classify, build, verify and search for n-partite digraphical
//! representations of small groups.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use npdr_core::classify::negative_clause;
use npdr_core::search::{
    find_drr, find_hdr_companion, find_trivial_group_npdr, prove_nonexistence,
};
use npdr_core::{
    admits_npdr, build_npdr_with_digraph, parse_group, verify_digraph, Digraph, Element,
    ElementSet, Error, Group, Outcome, SearchBudget, SearchMode,
};
use serde_json::{json, Value};

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;
const INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "npdr", version, about = "n-partite digraphical representations of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether G admits an n-PDR.
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
    },
    /// Construct and verify an n-PDR, or certify that none exists.
    Build {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the output here instead of the standard stream.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Re-check a stored digraph (JSON, DOT or edge list) against G.
    Verify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        digraph: PathBuf,
    },
    /// Run one of the searches directly.
    Search {
        #[command(subcommand)]
        kind: SearchKind,
    },
    /// Exhaustively confirm that G has no n-PDR.
    Nonexist {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum SearchKind {
    /// A DRR connection set R.
    Drr {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// A companion L making Cay(G, R+1, L+1) a 2-PDR.
    Hdr {
        #[arg(long)]
        group: String,
        /// Comma-separated labels or indices; a DRR is searched for if absent.
        #[arg(long)]
        r: Option<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// A digraph on n vertices with trivial automorphism group and no
    /// arcs inside parts.
    TrivialNpdr {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Args, Clone)]
struct SearchArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum number of candidates examined.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// exhaustive, randomized or auto.
    #[arg(long, default_value = "auto")]
    mode: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Edges,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::BudgetExhausted { .. } | Error::TooLarge(_) => BUDGET,
            Error::Internal(_) | Error::CounterExample(_) => INTERNAL,
            _ => USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: USAGE, message: message.into() }
}

type Run = Result<u8, Failure>;

fn threads() -> usize {
    std::env::var("PDR_THREADS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&t| t > 0)
        .unwrap_or(1)
}

impl SearchArgs {
    fn budget(&self) -> Result<SearchBudget, Failure> {
        let mode: SearchMode = self.mode.parse().map_err(|_| usage(format!("unknown search mode `{}`", self.mode)))?;
        Ok(SearchBudget {
            max_candidates: self.budget,
            seed: self.seed,
            mode,
            threads: threads(),
        })
    }
}

fn group(spec: &str) -> Result<Group, Failure> {
    parse_group(spec).map_err(|e| usage(e.to_string()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", text.trim_end()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(usage(format!("cannot write output: {e}"))),
                _ => Ok(()),
            }
        }
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("json value serializes")
}

fn labels(g: &Group, s: &ElementSet) -> Vec<String> {
    s.iter().map(|x| g.label(x).to_string()).collect()
}

fn parse_elements(g: &Group, text: &str) -> Result<ElementSet, Failure> {
    let mut elems: Vec<Element> = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let x = g
            .element(tok)
            .or_else(|| tok.parse::<usize>().ok().filter(|&i| i < g.order()))
            .ok_or_else(|| usage(format!("unknown element `{tok}` of {}", g.spec())))?;
        elems.push(x);
    }
    ElementSet::from_elements(g.order(), elems).map_err(|e| usage(e.to_string()))
}

fn classify(spec: &str, n: usize) -> Run {
    let g = group(spec)?;
    if n == 0 {
        return Err(usage("n must be positive"));
    }
    let admits = admits_npdr(&g, n);
    let clause = negative_clause(&g, n);
    let verdict = match clause {
        None => format!("{} admits a {n}-PDR", g.spec()),
        Some(c) => format!("{} admits no {n}-PDR (negative clause {}: {})", g.spec(), c.number(), c.describe()),
    };
    let out = json!({
        "group": g.spec(),
        "n": n,
        "admits": admits,
        "clause": clause.map(|c| c.number()),
        "verdict": verdict,
    });
    emit(&compact(&out), None)?;
    Ok(if admits { OK } else { NEGATIVE })
}

fn build(spec: &str, n: usize, format: Format, out: Option<&Path>, search: &SearchArgs) -> Run {
    let g = group(spec)?;
    let budget = search.budget()?;
    let (cert, x) = build_npdr_with_digraph(&g, n, &budget)?;
    let cert_value = serde_json::to_value(&cert).expect("certificate serializes");
    let code = if cert.outcome == Outcome::Exists { OK } else { NEGATIVE };
    let Some(x) = x else {
        emit(&compact(&json!({ "certificate": cert_value })), out)?;
        return Ok(code);
    };
    match format {
        Format::Json => {
            let v = json!({ "certificate": cert_value, "digraph": x.digraph().to_json_value() });
            emit(&compact(&v), out)?;
        }
        Format::Dot | Format::Edges => {
            let text = match format {
                Format::Dot => x.digraph().to_dot(Some(&x.vertex_labels())),
                _ => x.digraph().to_edge_list(),
            };
            emit(&text, out)?;
            match out {
                Some(p) => {
                    let mut cp = p.as_os_str().to_owned();
                    cp.push(".cert.json");
                    emit(&compact(&cert_value), Some(Path::new(&cp)))?;
                }
                None => eprintln!("{}", cert.to_json()),
            }
        }
    }
    Ok(code)
}

fn read_digraph(path: &Path) -> Result<Digraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let head = text.trim_start();
    let parsed = if head.starts_with('{') {
        Digraph::from_json(&text)
    } else if head.starts_with("digraph") {
        Digraph::from_dot(&text)
    } else {
        Digraph::from_edge_list(&text)
    };
    parsed.map_err(|e| usage(e.to_string()))
}

fn verify(spec: &str, path: &Path) -> Run {
    let g = group(spec)?;
    let d = read_digraph(path)?;
    let cert = verify_digraph(&g, &d)?;
    emit(&compact(&serde_json::to_value(&cert).expect("certificate serializes")), None)?;
    if cert.outcome != Outcome::Exists {
        eprintln!("not an n-PDR of {}: {:?}", g.spec(), cert.checks);
        return Ok(NEGATIVE);
    }
    Ok(OK)
}

fn search(kind: &SearchKind) -> Run {
    match kind {
        SearchKind::Drr { group: spec, search } => {
            let g = group(spec)?;
            match find_drr(&g, &search.budget()?)? {
                Some(f) => {
                    let v = json!({
                        "group": g.spec(),
                        "r": f.value.iter().collect::<Vec<_>>(),
                        "r_labels": labels(&g, &f.value),
                        "candidates": f.candidates,
                    });
                    emit(&compact(&v), None)?;
                    Ok(OK)
                }
                None => {
                    eprintln!("{} has no DRR", g.spec());
                    emit(&compact(&json!({ "group": g.spec(), "r": Value::Null })), None)?;
                    Ok(NEGATIVE)
                }
            }
        }
        SearchKind::Hdr { group: spec, r, search } => {
            let g = group(spec)?;
            let budget = search.budget()?;
            let r = match r {
                Some(text) => parse_elements(&g, text)?,
                None => match find_drr(&g, &budget)? {
                    Some(f) => f.value,
                    None => {
                        eprintln!("{} has no DRR; pass --r explicitly", g.spec());
                        return Ok(NEGATIVE);
                    }
                },
            };
            let f = find_hdr_companion(&g, &r, &budget)?;
            let v = json!({
                "group": g.spec(),
                "r": r.iter().collect::<Vec<_>>(),
                "l": f.value.iter().collect::<Vec<_>>(),
                "r_labels": labels(&g, &r),
                "l_labels": labels(&g, &f.value),
                "candidates": f.candidates,
            });
            emit(&compact(&v), None)?;
            Ok(OK)
        }
        SearchKind::TrivialNpdr { n, search } => {
            let f = find_trivial_group_npdr(*n, &search.budget()?)?;
            let v = json!({
                "n": n,
                "candidates": f.candidates,
                "digraph": f.value.to_json_value(),
            });
            emit(&compact(&v), None)?;
            Ok(OK)
        }
    }
}

fn nonexist(spec: &str, n: usize) -> Run {
    let g = group(spec)?;
    if n == 0 {
        return Err(usage("n must be positive"));
    }
    if admits_npdr(&g, n) {
        eprintln!("{} admits a {n}-PDR; run `build` for one", g.spec());
        return Ok(OK);
    }
    let cert = prove_nonexistence(&g, n, threads())?;
    emit(&cert.to_json(), None)?;
    Ok(NEGATIVE)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify { group, n } => classify(group, *n),
        Command::Build { group, n, format, out, search } => build(group, *n, *format, out.as_deref(), search),
        Command::Verify { group, digraph } => verify(group, digraph),
        Command::Search { kind } => search(kind),
        Command::Nonexist { group, n } => nonexist(group, *n),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
