//! The `bisetkit` command line: argument parsing, dispatch, and table or JSON
//! rendering. [`run`] returns the exit code and both output streams so it can
//! be driven in-process.
//!
//! Exit codes: 0 success, 1 property failure, 2 parse or input error, 3 route
//! mismatch or internal inconsistency, 4 resource cap.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bgroup::{beta_with_kernel, is_b_group, m_number};
use crate::burnside::{e_p_rank, f_p_lattice, m_p_f_p_index, table_of_marks, SublatticeIndex};
use crate::corpus::{default_corpus, load_corpus, small_p_groups};
use crate::error::Error;
use crate::group::{isomorphic, make_group_with, p_group_prime, Group, Limits};
use crate::incidence::incidence_report;
use crate::section_count::CountRoute;
use crate::simple_dim::RankRoute;
use crate::verify::{verify_corpus, Verdict};

#[derive(Parser, Debug)]
#[command(name = "bisetkit", version, about = "Exact invariants of finite groups and simple biset functors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Table)]
    pub output: OutputFormat,
    /// Largest group order accepted when building groups.
    #[arg(long = "order-bound", global = true, default_value_t = 256)]
    pub order_bound: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Count,
    Rank,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension of the simple functor S_{H,F} at G.
    DimSimple {
        #[arg(long)]
        group: String,
        #[arg(long = "H")]
        h: String,
        /// Defaults to the prime of H when H is nontrivial.
        #[arg(long)]
        prime: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Whether G is a B-group, with m_{G,N} for every normal N.
    Bgroup {
        #[arg(long)]
        group: String,
    },
    /// The largest quotient B-group of G.
    Beta {
        #[arg(long)]
        group: String,
    },
    /// m_{G,N} for the normal subgroups N of G isomorphic to the given group.
    Mnumber {
        #[arg(long)]
        group: String,
        #[arg(long = "N")]
        n: String,
    },
    /// Rank of E_p(G), rank of F_p(G), and the index of M_p(G) + F_p(G).
    EpRank {
        #[arg(long)]
        group: String,
        #[arg(long)]
        prime: usize,
    },
    /// Table of marks.
    Marks {
        #[arg(long)]
        group: String,
    },
    /// Spectrum of the kernel incidence matrix for C_p × C_{p^{h−1}}.
    #[command(name = "lemma42")]
    Incidence {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        h: u32,
    },
    /// Every property suite over a corpus file.
    VerifyCorpus {
        /// Corpus file; defaults to $BISETKIT_CORPUS, then the built-in corpus.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Precondition(_) | Error::NotNormal(_) | Error::Construction(_) => 2,
        Error::Inconsistent(_) => 3,
        Error::Resource(_) => 4,
    }
}

/// Output of one command before rendering.
struct Rendered {
    json: Value,
    table: String,
    code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let limits = Limits { order_bound: cli.order_bound, ..Limits::default() };
    match dispatch(&cli.command, limits) {
        Ok(mut r) => {
            if let Value::Object(map) = &mut r.json {
                map.entry("verdict").or_insert_with(|| json!(verdict_word(r.code == 0)));
            }
            let stdout = match cli.output {
                OutputFormat::Json => render_json(&r.json),
                OutputFormat::Table => r.table,
            };
            Outcome { code: r.code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Pretty JSON through a `Value`, so that parsing the output and rendering it
/// again gives the same bytes.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn to_json(x: &impl Serialize) -> crate::Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::Inconsistent(format!("serialization: {e}")))
}

/// A group from a spec string, or from a corpus label such as `Dic12`.
pub fn resolve_group(spec: &str, limits: Limits) -> crate::Result<Group> {
    match make_group_with(spec, limits) {
        Ok(g) => Ok(g),
        Err(err @ Error::Parse { .. }) => {
            let labelled = default_corpus().into_iter().map(|e| e.group).chain(
                [2, 3].into_iter().flat_map(|p| small_p_groups(p).unwrap_or_default()),
            );
            for g in labelled {
                if g.name() == spec {
                    if g.order() > limits.order_bound {
                        return Err(Error::Resource(format!("order {} exceeds bound {}", g.order(), limits.order_bound)));
                    }
                    return Ok(g);
                }
            }
            Err(err)
        }
        Err(e) => Err(e),
    }
}

/// The corpus label of a group isomorphic to `g`, if there is one.
fn identify(g: &Group) -> Option<String> {
    let small = std::iter::once(Group::trivial().renamed("C1"));
    small
        .chain(default_corpus().into_iter().map(|e| e.group))
        .chain([2, 3].into_iter().flat_map(|p| small_p_groups(p).unwrap_or_default()))
        .find(|h| h.order() == g.order() && isomorphic(g, h))
        .map(|h| h.name().to_string())
}

fn kv_table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

fn grid(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).chain([header[c].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(s, &w)| if s.parse::<i64>().is_ok() { format!("{s:>w$}") } else { format!("{s:<w$}") })
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = line(header);
    out.push('\n');
    for r in rows {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn dispatch(cmd: &Command, limits: Limits) -> crate::Result<Rendered> {
    match cmd {
        Command::DimSimple { group, h, prime, method } => dim_simple(group, h, *prime, *method, limits),
        Command::Bgroup { group } => bgroup(group, limits),
        Command::Beta { group } => beta_cmd(group, limits),
        Command::Mnumber { group, n } => mnumber(group, n, limits),
        Command::EpRank { group, prime } => ep_rank(group, *prime, limits),
        Command::Marks { group } => marks(group, limits),
        Command::Incidence { p, e, h } => incidence(*p, *e, *h),
        Command::VerifyCorpus { corpus } => verify(corpus.as_deref(), limits),
    }
}

fn dim_simple(group: &str, h: &str, prime: Option<usize>, method: Method, limits: Limits) -> crate::Result<Rendered> {
    let g = resolve_group(group, limits)?;
    let hg = resolve_group(h, limits)?;
    let p = match (prime, p_group_prime(&hg)) {
        (Some(p), _) => p,
        (None, Some(p)) => p,
        (None, None) => return Err(Error::parse(h, "--prime is required unless H is a nontrivial p-group")),
    };
    let count = match method {
        Method::Count | Method::Both => Some(CountRoute::new(&g, p)?.dim(&hg)?),
        Method::Rank => None,
    };
    let rank = match method {
        Method::Rank | Method::Both => Some(RankRoute::new(&g, p)?.report(&hg)?),
        Method::Count => None,
    };
    let dims: Vec<usize> = count.iter().map(|c| c.dim).chain(rank.iter().map(|r| r.dim)).collect();
    let agree = dims.windows(2).all(|w| w[0] == w[1]);
    let verdict = if agree { Verdict::Pass } else { Verdict::RouteMismatch };
    let json = json!({
        "command": "dim-simple",
        "group": g.name(),
        "h": hg.name(),
        "p": p,
        "method": method,
        "dim": dims[0],
        "count_dim": count.as_ref().map(|c| c.dim),
        "rank_dim": rank.as_ref().map(|r| r.dim),
        "count": to_json(&count)?,
        "rank": to_json(&rank)?,
        "verdict": verdict,
    });
    let mut rows = vec![("group", g.name().to_string()), ("H", hg.name().to_string()), ("p", p.to_string())];
    if let Some(c) = &count {
        rows.push(("count route", format!("{} ({:?})", c.dim, c.case_tag)));
    }
    if let Some(r) = &rank {
        rows.push(("rank route", format!("{} ({} pairs)", r.dim, r.pairs.len())));
    }
    rows.push(("dim", dims[0].to_string()));
    rows.push(("verdict", if agree { "pass" } else { "route-mismatch" }.to_string()));
    Ok(Rendered { json, table: kv_table(&rows), code: if agree { 0 } else { 3 } })
}

#[derive(Serialize)]
struct NormalM {
    order: usize,
    members: Vec<usize>,
    m: crate::BRational,
}

fn normal_m_numbers(g: &Group) -> crate::Result<Vec<NormalM>> {
    let lat = g.lattice()?;
    lat.normal_indices()
        .into_iter()
        .map(|i| {
            let n = lat.get(i);
            Ok(NormalM { order: n.order(), members: n.members().to_vec(), m: m_number(g, n)? })
        })
        .collect()
}

fn m_grid(list: &[NormalM]) -> String {
    let rows: Vec<Vec<String>> = list.iter().map(|x| vec![x.order.to_string(), x.m.to_string()]).collect();
    grid(&["|N|".to_string(), "m_{G,N}".to_string()], &rows)
}

fn bgroup(group: &str, limits: Limits) -> crate::Result<Rendered> {
    let g = resolve_group(group, limits)?;
    let b = is_b_group(&g)?;
    let normals = normal_m_numbers(&g)?;
    let json = json!({
        "command": "bgroup",
        "group": g.name(),
        "is_b_group": b,
        "normal_subgroups": to_json(&normals)?,
    });
    let mut table = kv_table(&[("group", g.name().to_string()), ("B-group", b.to_string())]);
    table.push_str(&m_grid(&normals));
    Ok(Rendered { json, table, code: 0 })
}

fn beta_cmd(group: &str, limits: Limits) -> crate::Result<Rendered> {
    let g = resolve_group(group, limits)?;
    let (b, kernel) = beta_with_kernel(&g)?;
    let name = identify(&b);
    let json = json!({
        "command": "beta",
        "group": g.name(),
        "beta_order": b.order(),
        "beta_shape": name,
        "kernel_order": kernel.order(),
        "kernel_members": kernel.members().to_vec(),
    });
    let rows = [
        ("group", g.name().to_string()),
        ("beta order", b.order().to_string()),
        ("beta shape", name.unwrap_or_else(|| "-".into())),
        ("kernel order", kernel.order().to_string()),
    ];
    Ok(Rendered { json, table: kv_table(&rows), code: 0 })
}

fn mnumber(group: &str, n: &str, limits: Limits) -> crate::Result<Rendered> {
    let g = resolve_group(group, limits)?;
    let shape = resolve_group(n, limits)?;
    let matches: Vec<NormalM> = normal_m_numbers(&g)?
        .into_iter()
        .filter(|x| x.order == shape.order())
        .filter(|x| {
            let sub = g.subgroup_unchecked(g.set(x.members.iter().copied()));
            isomorphic(&g.subgroup_as_group(&sub).0, &shape)
        })
        .collect();
    if matches.is_empty() {
        return Err(Error::Precondition(format!("{} has no normal subgroup isomorphic to {}", g.name(), shape.name())));
    }
    let common = matches.iter().all(|x| x.m == matches[0].m).then(|| matches[0].m.clone());
    let json = json!({
        "command": "mnumber",
        "group": g.name(),
        "n": shape.name(),
        "m": to_json(&common)?,
        "matches": to_json(&matches)?,
    });
    let mut rows = vec![("group", g.name().to_string()), ("N", shape.name().to_string())];
    rows.push(("normal matches", matches.len().to_string()));
    let mut table = match &common {
        Some(m) => {
            rows.push(("m", m.to_string()));
            kv_table(&rows)
        }
        None => kv_table(&rows) + &m_grid(&matches),
    };
    if table.is_empty() {
        table.push('\n');
    }
    Ok(Rendered { json, table, code: 0 })
}

fn ep_rank(group: &str, p: usize, limits: Limits) -> crate::Result<Rendered> {
    let g = resolve_group(group, limits)?;
    let rank = e_p_rank(&g, p)?;
    let fp = f_p_lattice(&g, p)?.len();
    let index = m_p_f_p_index(&g, p)?;
    let classes = g.lattice()?.classes().len();
    let json = json!({
        "command": "ep-rank",
        "group": g.name(),
        "p": p,
        "e_p_rank": rank,
        "f_p_rank": fp,
        "subgroup_classes": classes,
        "m_p_f_p_index": to_json(&index)?,
    });
    let index_text = match &index {
        SublatticeIndex::Finite(n) => n.to_string(),
        SublatticeIndex::Infinite => "infinite".into(),
    };
    let rows = [
        ("group", g.name().to_string()),
        ("p", p.to_string()),
        ("e_p_rank", rank.to_string()),
        ("f_p_rank", fp.to_string()),
        ("subgroup classes", classes.to_string()),
        ("index of M_p + F_p", index_text),
    ];
    Ok(Rendered { json, table: kv_table(&rows), code: 0 })
}

fn marks(group: &str, limits: Limits) -> crate::Result<Rendered> {
    let g = resolve_group(group, limits)?;
    let lat = g.lattice()?;
    let tom = table_of_marks(&g)?;
    let orders: Vec<usize> = lat.class_reps().into_iter().map(|i| lat.get(i).order()).collect();
    let sizes: Vec<usize> = lat.classes().iter().map(Vec::len).collect();
    let json = json!({
        "command": "marks",
        "group": g.name(),
        "class_orders": orders,
        "class_sizes": sizes,
        "marks": tom,
    });
    let mut header = vec!["G/K \\ L".to_string()];
    header.extend(orders.iter().map(|o| o.to_string()));
    let rows: Vec<Vec<String>> = tom
        .iter()
        .zip(&orders)
        .map(|(r, o)| std::iter::once(o.to_string()).chain(r.iter().map(|x| x.to_string())).collect())
        .collect();
    let table = kv_table(&[("group", g.name().to_string()), ("classes", orders.len().to_string())]) + &grid(&header, &rows);
    Ok(Rendered { json, table, code: 0 })
}

fn incidence(p: u64, e: u32, h: u32) -> crate::Result<Rendered> {
    let r = incidence_report(p, e, h)?;
    let ok = r.charpoly_matches;
    let mut json = to_json(&r)?;
    if let Value::Object(map) = &mut json {
        map.insert("command".into(), json!("lemma42"));
        map.insert("verdict".into(), json!(verdict_word(ok)));
    }
    let spectrum: Vec<String> = r.spectrum.iter().map(|s| format!("{}:{}", s.eigenvalue, s.multiplicity)).collect();
    let rows = [
        ("p, e, h", format!("{p}, {e}, {h}")),
        ("size", r.size.to_string()),
        ("row sum", r.row_sum.map_or_else(|| "-".into(), |s| s.to_string())),
        ("spectrum", format!("{{{}}}", spectrum.join(", "))),
        ("charpoly", if ok { "matches".to_string() } else { "differs".to_string() }),
        ("verdict", verdict_word(ok).to_uppercase()),
    ];
    Ok(Rendered { json, table: kv_table(&rows), code: if ok { 0 } else { 1 } })
}

fn verify(corpus: Option<&std::path::Path>, limits: Limits) -> crate::Result<Rendered> {
    let entries = load_corpus(corpus, limits)?;
    let report = verify_corpus(&entries);
    let code = if report.passed {
        0
    } else if report.properties.iter().any(|p| p.verdict == Verdict::ResourceCap) {
        4
    } else if report.properties.iter().any(|p| p.verdict == Verdict::RouteMismatch) {
        3
    } else {
        1
    };
    let mut json = to_json(&report)?;
    if let Value::Object(map) = &mut json {
        map.insert("command".into(), json!("verify-corpus"));
        map.insert("verdict".into(), json!(verdict_word(report.passed)));
    }
    let header: Vec<String> = ["module", "property", "verdict", "checked", "failed", "ms"].iter().map(|s| s.to_string()).collect();
    let rows: Vec<Vec<String>> = report
        .properties
        .iter()
        .map(|p| {
            let v = serde_json::to_value(p.verdict).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            vec![p.module.clone(), p.property.clone(), v, p.checked.to_string(), p.failed.to_string(), p.elapsed_ms.to_string()]
        })
        .collect();
    let mut table = format!("corpus: {} groups\n", report.corpus_size);
    table.push_str(&grid(&header, &rows));
    for p in report.properties.iter().filter(|p| !p.passed()) {
        for f in &p.failures {
            let _ = writeln!(table, "  {}: {f}", p.property);
        }
    }
    let _ = writeln!(table, "verdict: {}", verdict_word(report.passed));
    Ok(Rendered { json, table, code })
}
