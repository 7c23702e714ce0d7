//! Command implementations behind the `etsearch` binary.
//!
//! Every command writes its report to `out` and diagnostics to `err`, and
//! returns the process exit status; see [`exit`] for the codes.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context};
use etsearch::oracle::{brute_force_ets, build_corpus, read_manifest, write_manifest, FixtureSpec};
use etsearch::{
    build_expansion_table, classify, compute_bounds, normal_projection, parse_alist, BoundMode, DegreeProfile, Error,
    Girth, RunReport, SearchConfig, TannerGraph,
};
use serde::Serialize;

pub mod args;
pub mod check;

use args::{AnalyzeArgs, BoundsArgs, ClassifyArgs, Cli, Command, CorpusArgs, Format, OracleCheckArgs};

pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const GUARD: u8 = 3;
    pub const MISMATCH: u8 = 4;
}

/// Exit code for a failed command: guard violations map to [`exit::GUARD`],
/// everything else that reached a command is an input problem.
pub fn error_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::GirthTooSmall { .. } | Error::RangeBelowGirth { .. } | Error::ScaleGuard(_) => exit::GUARD,
                _ => exit::INPUT,
            };
        }
    }
    exit::INPUT
}

pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<u8> {
    match cli.command {
        Command::Analyze(a) => analyze(&a, out, err),
        Command::Bounds(a) => bounds(&a, out),
        Command::OracleCheck(a) => oracle_check(&a, out, err),
        Command::Classify(a) => classify_cmd(&a, out),
        Command::Corpus(a) => corpus(&a, out),
    }
}

pub fn load_alist(path: &Path) -> anyhow::Result<TannerGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_alist(&text).with_context(|| format!("parsing {}", path.display()))
}

fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Runs the full search on one graph and renders the report.
pub fn analyze_graph(g: &TannerGraph, a: &AnalyzeArgs, err: &mut dyn Write) -> anyhow::Result<(String, RunReport)> {
    let girth = etsearch::search::check_girth(g)?;
    if let Girth::Finite(girth) = girth {
        if a.a_max < girth / 2 {
            return Err(Error::RangeBelowGirth {
                a_max: a.a_max,
                half_girth: girth / 2,
            }
            .into());
        }
    }
    let cfg = SearchConfig::new(a.a_max, a.b_max)
        .with_mode(a.mode.into())
        .with_min_a(a.min_a as usize)
        .with_workers(a.threads as usize)
        .with_audit(a.audit_log.is_some());
    let outcome = etsearch::run(g, &cfg)?;
    for w in &outcome.etsl.warnings {
        writeln!(err, "warning: {w}")?;
    }
    if let Some(path) = &a.audit_log {
        let mut log = String::new();
        for e in outcome.audit() {
            writeln!(log, "{e}")?;
        }
        fs::write(path, log).with_context(|| format!("writing {}", path.display()))?;
    }
    let report = RunReport::build(g, &outcome, a.feas_star, !a.omit_timing);
    let text = match a.format {
        Format::Table => report.to_table(),
        Format::Csv => report.to_csv(),
        Format::Json => to_json(&report)?,
    };
    Ok((text, report))
}

fn analyze(a: &AnalyzeArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<u8> {
    let g = load_alist(&a.alist)?;
    let (text, _) = analyze_graph(&g, a, err)?;
    out.write_all(text.as_bytes())?;
    Ok(exit::OK)
}

#[derive(Serialize)]
struct BoundsReport<'a> {
    girth: usize,
    degrees: &'a [usize],
    bounds: &'a etsearch::BoundsVector,
    expansions: &'a etsearch::ExpansionTable,
}

fn bounds(a: &BoundsArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    let (degrees, girth) = match (&a.alist, &a.degrees) {
        (Some(path), _) => {
            let g = load_alist(path)?;
            let girth = match a.girth {
                Some(girth) => girth,
                None => match etsearch::search::check_girth(&g)? {
                    Girth::Finite(girth) => girth,
                    Girth::Infinite => bail!("the graph has no cycles, so no bounds apply"),
                },
            };
            let mut d: Vec<usize> = (0..g.n()).map(|v| g.var_degree(v)).filter(|&d| d >= 2).collect();
            d.sort_unstable();
            d.dedup();
            (d, girth)
        }
        (None, Some(d)) => {
            let Some(girth) = a.girth else {
                bail!("--girth is required with --degrees");
            };
            (d.clone(), girth)
        }
        (None, None) => unreachable!("clap enforces one source"),
    };
    if girth < 6 || girth % 2 == 1 {
        return Err(Error::InvalidDegrees(format!("girth {girth} must be even and at least 6")).into());
    }
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::InvalidDegrees(format!("{degrees:?}")).into());
    }
    let profile = DegreeProfile::from_var_degrees(&degrees)?;
    let mode: BoundMode = a.mode.into();
    let vector = compute_bounds(&profile, girth, a.a_max, a.b_max, mode)?;
    let table = build_expansion_table(&vector, girth);
    let mut degrees = profile.var_degrees.clone();
    degrees.sort_unstable();
    degrees.dedup();
    let text = match a.format {
        Format::Json => to_json(&BoundsReport {
            girth,
            degrees: &degrees,
            bounds: &vector,
            expansions: &table,
        })?,
        Format::Csv => {
            let mut s = String::from("a,b,expansions\n");
            for (ca, cb) in table.cells.keys() {
                writeln!(s, "{ca},{cb},\"{}\"", table.cell_label(*ca, *cb))?;
            }
            s
        }
        Format::Table => {
            let caps: Vec<String> = vector.per_a.iter().rev().map(|(a, b)| format!("{a}:{b}")).collect();
            let mut s = format!("degrees = {degrees:?}, girth = {girth}, mode = {mode}\n");
            writeln!(s, "b_max per a: {}", caps.join(" "))?;
            s.push_str(&table.render(&vector));
            s
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(exit::OK)
}

fn oracle_check(a: &OracleCheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<u8> {
    let specs = match (&a.manifest, &a.genspec) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            read_manifest(&text)?
        }
        (None, Some(line)) => vec![FixtureSpec::parse(line, 1)?],
        (None, None) => unreachable!("clap enforces one source"),
    };
    if specs.is_empty() {
        writeln!(err, "warning: manifest has no fixtures")?;
        writeln!(out, "PASS (0 fixtures)")?;
        return Ok(exit::OK);
    }
    let (mut runs, mut failed) = (0, 0);
    for (i, spec) in specs.iter().enumerate() {
        let g = spec.graph().with_context(|| format!("fixture {}: {spec}", i + 1))?;
        let oracle = brute_force_ets(&g, a.a_max, a.b_max)?;
        let mut explored = Vec::new();
        for &mode in &a.modes {
            let mut cfg = SearchConfig::new(a.a_max, a.b_max)
                .with_mode(mode.into())
                .with_workers(a.threads as usize);
            cfg.bound_truncation = a.truncate_bounds;
            let cmp = check::compare(&g, &oracle, &cfg)?;
            runs += 1;
            let mode = BoundMode::from(mode);
            explored.push((mode, cmp.outcome.explored()));
            if cmp.passed() {
                writeln!(out, "fixture {} [{spec}] {mode}: PASS", i + 1)?;
            } else {
                failed += 1;
                writeln!(
                    out,
                    "fixture {} [{spec}] {mode}: FAIL ({} differences)",
                    i + 1,
                    cmp.diff.len()
                )?;
                for line in &cmp.diff {
                    writeln!(out, "  {line}")?;
                }
            }
        }
        let count = |m| explored.iter().find(|(x, _)| *x == m).map(|&(_, n)| n);
        if let (Some(e), Some(h)) = (count(BoundMode::Exact), count(BoundMode::Heuristic)) {
            if h > e {
                writeln!(err, "warning: fixture {}: heuristic explored {h} > exact {e}", i + 1)?;
            }
        }
    }
    if failed == 0 {
        writeln!(out, "PASS ({runs} runs over {} fixtures)", specs.len())?;
        Ok(exit::OK)
    } else {
        writeln!(out, "FAIL ({failed} of {runs} runs differ)")?;
        Ok(exit::MISMATCH)
    }
}

/// Parses `"0 1 2"`, `0,1,2` or several positional arguments.
pub fn parse_var_list(parts: &[String]) -> anyhow::Result<Vec<usize>> {
    parts
        .iter()
        .flat_map(|p| p.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .with_context(|| format!("not a variable index: {t:?}"))
        })
        .collect()
}

#[derive(Serialize)]
struct ClassifyReport {
    vars: Vec<usize>,
    classification: etsearch::Classification,
    normal: Option<etsearch::NormalGraph>,
}

fn classify_cmd(a: &ClassifyArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    let g = load_alist(&a.alist)?;
    let vars = parse_var_list(&a.vars)?;
    let c = classify(&g, &vars)?;
    let normal = if c.flags.is_ets {
        Some(normal_projection(&g, &vars, true)?)
    } else {
        None
    };
    let text = match a.format {
        Format::Json => {
            let mut sorted = vars.clone();
            sorted.sort_unstable();
            sorted.dedup();
            to_json(&ClassifyReport {
                vars: sorted,
                classification: c,
                normal,
            })?
        }
        _ => render_classification(&c, normal.as_ref()),
    };
    out.write_all(text.as_bytes())?;
    Ok(exit::OK)
}

fn render_classification(c: &etsearch::Classification, normal: Option<&etsearch::NormalGraph>) -> String {
    let f = &c.flags;
    let mut s = format!("class {}\n", c.class);
    let names: Vec<&str> = [
        (f.is_ets, "ETS"),
        (f.is_lets, "LETS"),
        (f.is_etsl1, "ETSL1"),
        (f.is_etsl2, "ETSL2"),
        (f.is_eas, "EAS"),
        (f.is_feas, "FEAS"),
        (f.is_feas_star, "FEAS*"),
    ]
    .into_iter()
    .filter_map(|(on, name)| on.then_some(name))
    .collect();
    if f.is_ets {
        let _ = writeln!(s, "categories: {}", names.join(" "));
    } else {
        let (check, degree) = c
            .gamma
            .chk_deg
            .iter()
            .copied()
            .find(|&(_, d)| d > 2)
            .unwrap_or_default();
        let _ = writeln!(s, "not elementary: check c{check} has induced degree {degree}");
    }
    let _ = writeln!(s, "connected: {}", if f.is_connected { "yes" } else { "no" });
    let list = |v: &[usize]| {
        if v.is_empty() {
            "(none)".to_string()
        } else {
            v.iter().map(|c| format!("c{c}")).collect::<Vec<_>>().join(" ")
        }
    };
    let _ = writeln!(s, "unsatisfied checks: {}", list(&c.gamma.gamma_o));
    let _ = writeln!(s, "satisfied checks: {}", list(&c.gamma.gamma_e));
    if let Some(ng) = normal {
        let plain = etsearch::NormalGraph {
            half_edges: None,
            ..ng.clone()
        };
        let _ = write!(s, "normal graph:\n{}", plain.to_edge_list());
        let _ = write!(s, "quasi-normal graph:\n{}", ng.to_edge_list());
    }
    s
}

fn corpus(a: &CorpusArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    if a.n_min == 0 || a.n_min > a.n_max {
        bail!("invalid size range {}..={}", a.n_min, a.n_max);
    }
    if a.degrees.is_empty() || a.degrees.iter().any(|&d| d < 1 || d > a.n_min) {
        return Err(Error::InvalidDegrees(format!("{:?} with n >= {}", a.degrees, a.n_min)).into());
    }
    let text = write_manifest(&build_corpus(a.count, a.seed, (a.n_min, a.n_max), &a.degrees));
    match &a.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(exit::OK)
}
