//! The `patsep` command line.
//!
//! Every subcommand builds a [`Rendered`] value once and prints it in the
//! requested format. JSON output is a single [`OutputEnvelope`] object per
//! invocation; text output is meant for people and for diffing; CSV output
//! is a header plus rows.
//!
//! Exit codes: `0` success or a positive answer, `1` a definite negative
//! (not a separator, no separator exists, an inequality fails), `2` usage
//! or input errors, `3` an inconclusive search (node budget spent).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::checkerboard::{construct_separator, plan_for};
use crate::error::{Error, Result};
use crate::metrics::{
    bounds_for, check_lemma23, check_lemma27, known_exact_f, max_displacement_sum, BoundsRecord, DisplacementMode,
};
use crate::perm::{binomial, Permutation};
use crate::separator::{check_separator, distinct_pattern_count, p_of, PqOptions, ScanMode, SeparatorReport};
use crate::search::{
    append_results, exact_f, exists_separator, EpsilonEntry, ExactOptions, SearchConfig, DEFAULT_RESULTS_PATH,
    RESULTS_HEADER,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Environment variable overriding the default worker count.
pub const THREADS_ENV: &str = "PATSEP_THREADS";

#[derive(Parser, Debug)]
#[command(name = "patsep", version, about = "k-separator permutations: construct, verify, bound and search")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the checkerboard k-separator of length k + ⌊√(2k−3)⌋ − 1.
    Construct {
        k: usize,
        /// Check the separator property exhaustively before printing.
        #[arg(long)]
        verify: bool,
        /// Also print the construction plan.
        #[arg(long)]
        plan: bool,
    },
    /// Decide whether permutations are k-separators.
    Verify {
        perm: Option<String>,
        #[arg(long)]
        k: usize,
        /// Read permutations from a file, one per line (`-` for stdin).
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Count every distinct pattern instead of stopping at the first repeat.
        #[arg(long)]
        full: bool,
    },
    /// Lower and upper bounds on F(k); `--to` sweeps a range.
    Bounds {
        k: usize,
        #[arg(long)]
        to: Option<usize>,
    },
    /// Exhaustive search for k-separators.
    Search {
        #[arg(long)]
        k: usize,
        /// Look for a separator of exactly this length.
        #[arg(long, conflicts_with = "exact")]
        n: Option<usize>,
        /// Settle F(k) exactly (the default without --n).
        #[arg(long)]
        exact: bool,
        /// Last k of an exact sweep.
        #[arg(long, conflicts_with = "n")]
        to: Option<usize>,
        /// Also certify that nothing one longer than the upper bound exists.
        #[arg(long)]
        audit: bool,
        #[arg(long)]
        workers: Option<usize>,
        /// Stop after this many explored prefixes.
        #[arg(long)]
        budget: Option<u64>,
        /// Return the lexicographically smallest witness.
        #[arg(long)]
        deterministic: bool,
        /// Results CSV appended to by exact searches.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximum distinct k-pattern count over permutations of length k + l.
    Pq {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Check the distance, displacement and square-root inequalities.
    Lemmas {
        #[arg(long, value_parser = ["23", "25", "27"])]
        check: String,
        /// Permutation for the distance inequality.
        perm: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        /// Stop at the first violation.
        #[arg(long)]
        early_exit: bool,
        /// Length for the displacement bound.
        #[arg(long)]
        m: Option<usize>,
        /// Brute-force the displacement maximum instead of the formula.
        #[arg(long)]
        oracle: bool,
        /// Argument of the square-root inequality (start of a range with --to).
        #[arg(long)]
        x: Option<u64>,
        #[arg(long)]
        to: Option<u64>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Distinct pattern counts for every k from 1 to n.
    Profile {
        perm: Option<String>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
}

/// The JSON shape of every invocation.
#[derive(Debug, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub result: Value,
    pub elapsed_ms: u64,
}

/// A command's answer in all three renderings plus its exit code.
struct Rendered {
    params: BTreeMap<String, Value>,
    result: Value,
    text: String,
    csv: Vec<Vec<String>>,
    exit: i32,
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs
        .iter()
        .filter(|(_, v)| !v.is_null())
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn default_workers() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w: &usize| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn read_permutations(
    perm: Option<&str>,
    input: Option<&PathBuf>,
    stdin: &mut dyn Read,
) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    if let Some(p) = perm {
        out.push(p.parse()?);
    }
    if let Some(path) = input {
        let reader: Box<dyn BufRead + '_> = if path.as_os_str() == "-" {
            Box::new(BufReader::new(stdin))
        } else {
            Box::new(BufReader::new(fs::File::open(path)?))
        };
        for line in reader.lines() {
            let line = line?;
            let line = line.trim();
            if !line.is_empty() && !line.starts_with('#') {
                out.push(line.parse()?);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("no permutation given (pass one or use --in)".into()));
    }
    Ok(out)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data always serializes")
}

fn opt_text<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn construct(k: usize, verify: bool, show_plan: bool) -> Result<Rendered> {
    let sigma = construct_separator(k)?;
    let plan = plan_for(k)?;
    let verified = if verify {
        Some(check_separator(&sigma, k, ScanMode::EarlyExit)?.is_separator)
    } else {
        None
    };
    let mut result = json!({ "k": k, "n": sigma.len(), "permutation": sigma });
    if show_plan {
        result["plan"] = to_value(&plan);
    }
    if let Some(ok) = verified {
        result["verified"] = json!(ok);
    }
    let mut text = format!("{}\n", sigma.to_text());
    if show_plan {
        let omitted = if plan.omitted.is_empty() {
            "none".to_string()
        } else {
            plan.omitted.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
        };
        writeln!(
            text,
            "# plan k={} m={} subcase={} base={}x{} tilt={} length={}\n# omitted {}",
            plan.k, plan.m, plan.subcase, plan.base.0, plan.base.1, plan.tilt, plan.length, omitted
        )
        .unwrap();
    }
    if let Some(ok) = verified {
        writeln!(text, "# verified {k}-separator: {ok}").unwrap();
    }
    Ok(Rendered {
        params: params(&[("k", json!(k)), ("verify", json!(verify)), ("plan", json!(show_plan))]),
        result,
        text,
        csv: vec![
            vec!["k".into(), "n".into(), "permutation".into()],
            vec![k.to_string(), sigma.len().to_string(), sigma.to_text()],
        ],
        exit: if verified == Some(false) { EXIT_NEGATIVE } else { EXIT_OK },
    })
}

fn verify_line(sigma: &Permutation, r: &SeparatorReport) -> String {
    match &r.witness {
        None => format!("{}  k={}  separator  distinct={}", sigma.to_text(), r.k, r.distinct_count),
        Some((a, b)) => format!("{}  k={}  repeat {a} {b}", sigma.to_text(), r.k),
    }
}

fn verify(perms: Vec<Permutation>, k: usize, full: bool) -> Result<Rendered> {
    let mode = if full { ScanMode::Full } else { ScanMode::EarlyExit };
    let reports = perms
        .iter()
        .map(|s| check_separator(s, k, mode))
        .collect::<Result<Vec<_>>>()?;
    let all = reports.iter().all(|r| r.is_separator);
    let entries: Vec<Value> = perms
        .iter()
        .zip(&reports)
        .map(|(s, r)| {
            let mut v = to_value(r);
            v["permutation"] = to_value(s);
            v
        })
        .collect();
    let result = if entries.len() == 1 {
        entries.into_iter().next().unwrap()
    } else {
        Value::Array(entries)
    };
    let mut text = String::new();
    let mut csv = vec![["permutation", "k", "is_separator", "distinct_count", "first", "repeat"]
        .map(String::from)
        .to_vec()];
    for (s, r) in perms.iter().zip(&reports) {
        writeln!(text, "{}", verify_line(s, r)).unwrap();
        let (a, b) = r
            .witness
            .as_ref()
            .map_or((String::new(), String::new()), |(a, b)| (a.to_string(), b.to_string()));
        csv.push(vec![
            s.to_text(),
            k.to_string(),
            r.is_separator.to_string(),
            r.distinct_count.to_string(),
            a,
            b,
        ]);
    }
    Ok(Rendered {
        params: params(&[("k", json!(k)), ("full", json!(full))]),
        result,
        text,
        csv,
        exit: if all { EXIT_OK } else { EXIT_NEGATIVE },
    })
}

fn bounds_with_known(k: usize) -> Result<BoundsRecord> {
    let b = bounds_for(k)?;
    Ok(match known_exact_f(k) {
        Some(f) => b.with_exact(f),
        None => b,
    })
}

fn bounds(k: usize, to: Option<usize>) -> Result<Rendered> {
    let records = (k..=to.unwrap_or(k)).map(bounds_with_known).collect::<Result<Vec<_>>>()?;
    let header = ["k", "lower", "upper", "trivial_2k", "binom_bound", "exact_f", "epsilon"];
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|b| {
            vec![
                b.k.to_string(),
                b.lower.to_string(),
                b.upper.to_string(),
                b.trivial_2k.to_string(),
                opt_text(b.binom_bound),
                opt_text(b.exact_f),
                opt_text(b.epsilon),
            ]
        })
        .collect();
    let text = if records.len() == 1 {
        header
            .iter()
            .zip(&rows[0])
            .map(|(h, v)| format!("{h:<12}{v}\n"))
            .collect()
    } else {
        let mut t = header.iter().map(|h| format!("{h:>12}")).collect::<String>() + "\n";
        for r in &rows {
            t += &(r.iter().map(|v| format!("{v:>12}")).collect::<String>() + "\n");
        }
        t
    };
    let csv = std::iter::once(header.map(String::from).to_vec()).chain(rows).collect();
    let result = if records.len() == 1 {
        to_value(&records[0])
    } else {
        to_value(&records)
    };
    Ok(Rendered {
        params: params(&[("k", json!(k)), ("to", json!(to))]),
        result,
        text,
        csv,
        exit: EXIT_OK,
    })
}

#[allow(clippy::too_many_arguments)]
fn search(
    k: usize,
    n: Option<usize>,
    to: Option<usize>,
    audit: bool,
    workers: Option<usize>,
    budget: Option<u64>,
    deterministic: bool,
    out: Option<PathBuf>,
) -> Result<Rendered> {
    let workers = workers.unwrap_or_else(default_workers);
    let p = params(&[
        ("k", json!(k)),
        ("n", json!(n)),
        ("to", json!(to)),
        ("audit", json!(audit)),
        ("workers", json!(workers)),
        ("budget", json!(budget)),
        ("deterministic", json!(deterministic)),
    ]);
    if let Some(n) = n {
        let cfg = SearchConfig {
            deterministic,
            worker_count: workers,
            node_budget: budget,
            ..SearchConfig::new(k, n)
        };
        let outcome = exists_separator(&cfg)?;
        let found = outcome.witness.is_some();
        let text = match &outcome.witness {
            Some(w) => format!("k={k} n={n} found {}\n", w.to_text()),
            None => format!("k={k} n={n} absent\n"),
        };
        return Ok(Rendered {
            params: p,
            result: json!({ "k": k, "n": n, "found": found, "witness": outcome.witness, "nodes": outcome.nodes }),
            text,
            csv: vec![
                ["k", "n", "found", "witness", "nodes"].map(String::from).to_vec(),
                vec![
                    k.to_string(),
                    n.to_string(),
                    found.to_string(),
                    outcome.witness.map(|w| w.to_text()).unwrap_or_default(),
                    outcome.nodes.to_string(),
                ],
            ],
            exit: if found { EXIT_OK } else { EXIT_NEGATIVE },
        });
    }
    let opts = ExactOptions {
        workers,
        audit,
        node_budget: budget,
        deterministic,
    };
    let path = out.unwrap_or_else(|| PathBuf::from(DEFAULT_RESULTS_PATH));
    let mut entries: Vec<EpsilonEntry> = Vec::new();
    for k in k..=to.unwrap_or(k) {
        let entry = exact_f(k, &opts)?;
        append_results(&path, std::slice::from_ref(&entry))?;
        entries.push(entry);
    }
    let mut text = String::new();
    for e in &entries {
        writeln!(
            text,
            "k={} F={} epsilon={} witness={}{}",
            e.k,
            e.f_exact,
            e.epsilon,
            e.witness.to_text(),
            if e.audit_absent == Some(true) { " audit=absent" } else { "" }
        )
        .unwrap();
    }
    let csv = std::iter::once(RESULTS_HEADER.split(',').map(String::from).collect())
        .chain(entries.iter().map(|e| e.csv_record().to_vec()))
        .collect();
    let mut p = p;
    p.insert("out".into(), json!(path.display().to_string()));
    Ok(Rendered {
        params: p,
        result: if entries.len() == 1 { to_value(&entries[0]) } else { to_value(&entries) },
        text,
        csv,
        exit: EXIT_OK,
    })
}

fn pq(k: usize, l: usize, workers: Option<usize>) -> Result<Rendered> {
    let workers = workers.unwrap_or_else(default_workers);
    let rec = p_of(
        k,
        l,
        PqOptions {
            workers,
            ..Default::default()
        },
    )?;
    let mut result = to_value(&rec);
    result["witness"] = to_value(&rec.witness);
    let text = format!(
        "k={} l={} P={} Q={}/{} witness={}\n",
        rec.k,
        rec.l,
        rec.p_value,
        rec.q_num,
        rec.q_den,
        opt_text(rec.witness.as_ref().map(|w| w.to_text()))
    );
    Ok(Rendered {
        params: params(&[("k", json!(k)), ("l", json!(l)), ("workers", json!(workers))]),
        result,
        text,
        csv: vec![
            crate::separator::PQRecord::CSV_HEADER.map(String::from).to_vec(),
            vec![
                rec.k.to_string(),
                rec.l.to_string(),
                rec.p_value.to_string(),
                rec.q_num.to_string(),
                rec.q_den.to_string(),
            ],
        ],
        exit: EXIT_OK,
    })
}

fn missing(flag: &str, check: &str) -> Error {
    Error::Parse(format!("--check {check} needs {flag}"))
}

#[allow(clippy::too_many_arguments)]
fn lemmas(
    check: &str,
    perm: Option<&str>,
    k: Option<usize>,
    early_exit: bool,
    m: Option<usize>,
    oracle: bool,
    x: Option<u64>,
    to: Option<u64>,
    input: Option<&PathBuf>,
    stdin: &mut dyn Read,
) -> Result<Rendered> {
    match check {
        "23" => {
            let k = k.ok_or_else(|| missing("--k", check))?;
            let perms = read_permutations(perm, input, stdin)?;
            let mut results = Vec::new();
            let mut text = String::new();
            let mut csv = vec![["permutation", "i", "j", "lhs", "rhs"].map(String::from).to_vec()];
            let mut clean = true;
            for s in &perms {
                let v = check_lemma23(s, k, early_exit)?;
                clean &= v.is_empty();
                if v.is_empty() {
                    writeln!(text, "{}  k={k}  holds", s.to_text()).unwrap();
                } else {
                    writeln!(text, "{}  k={k}  {} violation(s)", s.to_text(), v.len()).unwrap();
                }
                for d in &v {
                    writeln!(text, "  i={} j={} d={} bound={}", d.i, d.j, d.lhs, d.rhs).unwrap();
                    csv.push(vec![
                        s.to_text(),
                        d.i.to_string(),
                        d.j.to_string(),
                        d.lhs.to_string(),
                        d.rhs.to_string(),
                    ]);
                }
                results.push(json!({ "permutation": s, "holds": v.is_empty(), "violations": v }));
            }
            Ok(Rendered {
                params: params(&[("check", json!(check)), ("k", json!(k)), ("early_exit", json!(early_exit))]),
                result: if results.len() == 1 { results.pop().unwrap() } else { Value::Array(results) },
                text,
                csv,
                exit: if clean { EXIT_OK } else { EXIT_NEGATIVE },
            })
        }
        "25" => {
            let m = m.ok_or_else(|| missing("--m", check))?;
            let mode = if oracle { DisplacementMode::Oracle } else { DisplacementMode::Formula };
            let r = max_displacement_sum(m, mode)?;
            let text = format!(
                "m={} mode={} value={} refined={} equals_refined={} witness={}\n",
                r.m,
                if oracle { "oracle" } else { "formula" },
                r.value,
                r.refined,
                opt_text(r.equals_refined),
                opt_text(r.witness.as_ref().map(|w| {
                    w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                }))
            );
            Ok(Rendered {
                params: params(&[("check", json!(check)), ("m", json!(m)), ("oracle", json!(oracle))]),
                result: to_value(&r),
                text,
                csv: vec![
                    ["m", "value", "refined", "equals_refined"].map(String::from).to_vec(),
                    vec![r.m.to_string(), r.value.to_string(), r.refined.to_string(), opt_text(r.equals_refined)],
                ],
                exit: EXIT_OK,
            })
        }
        _ => {
            let x = x.ok_or_else(|| missing("--x", check))?;
            let last = to.unwrap_or(x);
            let mut all_hold = true;
            let mut equality_at = Vec::new();
            for v in x..=last {
                let c = check_lemma27(v)?;
                all_hold &= c.holds;
                if c.equality {
                    equality_at.push(v);
                }
            }
            let expected: Vec<u64> = (1u64..)
                .map(|r| r * r - 1)
                .skip_while(|&e| e < x)
                .take_while(|&e| e <= last)
                .collect();
            let matches = equality_at == expected;
            let text = format!(
                "x in [{x}, {last}]: holds={all_hold} equality_at={} equality_iff_square_minus_one={matches}\n",
                if equality_at.is_empty() {
                    "none".to_string()
                } else {
                    equality_at.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                }
            );
            Ok(Rendered {
                params: params(&[("check", json!(check)), ("x", json!(x)), ("to", json!(to))]),
                result: json!({
                    "from": x,
                    "to": last,
                    "holds": all_hold,
                    "equality_at": equality_at,
                    "equality_iff_square_minus_one": matches,
                }),
                text,
                csv: std::iter::once(vec!["x".to_string()])
                    .chain(equality_at.iter().map(|v| vec![v.to_string()]))
                    .collect(),
                exit: if all_hold && matches { EXIT_OK } else { EXIT_NEGATIVE },
            })
        }
    }
}

fn profile(perms: Vec<Permutation>) -> Result<Rendered> {
    let mut results = Vec::new();
    let mut text = String::new();
    let mut csv = vec![["permutation", "k", "distinct", "selectors"].map(String::from).to_vec()];
    for s in &perms {
        let n = s.len();
        let counts = (1..=n).map(|k| distinct_pattern_count(s, k)).collect::<Result<Vec<_>>>()?;
        writeln!(text, "{}", s.to_text()).unwrap();
        for (k, &c) in (1..=n).zip(&counts) {
            let total = binomial(n, k);
            let mark = if c == total { "  separator" } else { "" };
            writeln!(text, "  k={k:<3} distinct={c:<10} selectors={total}{mark}").unwrap();
            csv.push(vec![s.to_text(), k.to_string(), c.to_string(), total.to_string()]);
        }
        results.push(json!({ "permutation": s, "distinct": counts }));
    }
    Ok(Rendered {
        params: BTreeMap::new(),
        result: if results.len() == 1 { results.pop().unwrap() } else { Value::Array(results) },
        text,
        csv,
        exit: EXIT_OK,
    })
}

fn dispatch(cmd: Command, stdin: &mut dyn Read) -> Result<(&'static str, Rendered)> {
    Ok(match cmd {
        Command::Construct { k, verify, plan } => ("construct", construct(k, verify, plan)?),
        Command::Verify { perm, k, input, full } => (
            "verify",
            verify(read_permutations(perm.as_deref(), input.as_ref(), stdin)?, k, full)?,
        ),
        Command::Bounds { k, to } => ("bounds", bounds(k, to)?),
        Command::Search {
            k,
            n,
            exact: _,
            to,
            audit,
            workers,
            budget,
            deterministic,
            out,
        } => ("search", search(k, n, to, audit, workers, budget, deterministic, out)?),
        Command::Pq { k, l, workers } => ("pq", pq(k, l, workers)?),
        Command::Lemmas {
            check,
            perm,
            k,
            early_exit,
            m,
            oracle,
            x,
            to,
            input,
        } => (
            "lemmas",
            lemmas(&check, perm.as_deref(), k, early_exit, m, oracle, x, to, input.as_ref(), stdin)?,
        ),
        Command::Profile { perm, input } => (
            "profile",
            profile(read_permutations(perm.as_deref(), input.as_ref(), stdin)?)?,
        ),
    })
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::BudgetExhausted { .. } => EXIT_INCONCLUSIVE,
        _ => EXIT_USAGE,
    }
}

/// Runs the command line with explicit streams and returns the exit code.
pub fn run_with<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let stream: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(stream, "{}", e.render());
            return code;
        }
    };
    let start = Instant::now();
    let format = cli.format;
    let (command, rendered) = match dispatch(cli.command, stdin) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code_for(&e);
        }
    };
    let written = match format {
        Format::Text => out.write_all(rendered.text.as_bytes()),
        Format::Json => {
            let envelope = OutputEnvelope {
                command: command.to_string(),
                params: rendered.params,
                result: rendered.result,
                elapsed_ms: start.elapsed().as_millis() as u64,
            };
            writeln!(out, "{}", to_value(&envelope))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &rendered.csv {
                w.write_record(row).expect("in-memory CSV write");
            }
            out.write_all(&w.into_inner().expect("in-memory CSV flush"))
        }
    };
    if let Err(e) = written {
        if e.kind() != io::ErrorKind::BrokenPipe {
            let _ = writeln!(err, "error: Io: {e}");
            return EXIT_USAGE;
        }
    }
    rendered.exit
}

/// Runs the command line against the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut io::stdin().lock(), &mut stdout.lock(), &mut stderr.lock())
}
