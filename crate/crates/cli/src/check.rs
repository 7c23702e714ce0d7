//! Search-versus-oracle comparison shared by `oracle-check` and the
//! acceptance suite.

use etsearch::oracle::OracleResult;
use etsearch::search::AuditEntry;
use etsearch::{predict_class, run, Result, SearchConfig, SearchOutcome, TannerGraph, TrapSetInstance};

/// Outcome of one search run compared against an oracle result.
#[derive(Debug)]
pub struct Comparison {
    pub outcome: SearchOutcome,
    /// One line per missing or unexpected instance.
    pub diff: Vec<String>,
}

impl Comparison {
    pub fn passed(&self) -> bool {
        self.diff.is_empty()
    }
}

/// Runs the search with every size from 1 reported and diffs its per-class
/// instance sets against `oracle`, restricted to the same range.
pub fn compare(g: &TannerGraph, oracle: &OracleResult, cfg: &SearchConfig) -> Result<Comparison> {
    let cfg = cfg.clone().with_min_a(1);
    let expected = oracle.restrict(cfg.a_max, cfg.b_max).census;
    let outcome = run(g, &cfg)?;
    let diff = outcome.census(g).diff(&expected);
    Ok(Comparison { outcome, diff })
}

/// Audit entries whose output class disagrees with the class formula for
/// the recorded step or with a direct recount on the graph.
pub fn audit_violations<'a>(g: &TannerGraph, entries: impl IntoIterator<Item = &'a AuditEntry>) -> Vec<String> {
    let mut out = Vec::new();
    for e in entries {
        match predict_class(e.input, &e.step) {
            Ok(p) if p == e.output => {}
            Ok(p) => out.push(format!("{e}: predicted {p}")),
            Err(err) => out.push(format!("{e}: {err}")),
        }
        match TrapSetInstance::new(g, &e.key) {
            Ok(i) if i.class() == e.output => {}
            Ok(i) => out.push(format!("{e}: recount gives {}", i.class())),
            Err(err) => out.push(format!("{e}: {err}")),
        }
    }
    out
}
