//! Exhaustive search for LETS and ETSL structures.
//!
//! [`lets_search`] seeds one bucket family per simple-cycle length and grows
//! each `(a, b)` bucket with exactly the expansions listed in the expansion
//! table. [`etsl_search`] then attaches leaves to single nodes and to the
//! in-range LETSs. Work within one bucket may run on several threads; results
//! are merged in input order, so every output is independent of the worker
//! count.

mod expand;
mod paths;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

pub use expand::{CyclePool, Expander, Grown};

use crate::bounds::{
    build_expansion_table, compute_bounds, degree_cap, BoundMode, BoundsVector, ExpansionDescriptor, ExpansionTable,
};
use crate::census::Census;
use crate::error::{Error, Result};
use crate::report::ReportRow;
use crate::tanner::{DegreeProfile, Girth, TannerGraph};
use crate::tsets::{ExpansionStep, TrapClass, TrapSetInstance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub a_max: usize,
    pub b_max: usize,
    pub mode: BoundMode,
    /// Smallest size listed in reports.
    pub report_min_a: usize,
    pub include_etsl: bool,
    /// 1 runs strictly sequentially.
    pub workers: usize,
    /// Record one [`AuditEntry`] per expansion application.
    pub audit: bool,
    /// Lowers every bound below `a_max` by this much. Negative-control hook:
    /// any value above 0 makes the search incomplete.
    #[doc(hidden)]
    pub bound_truncation: usize,
}

impl SearchConfig {
    pub fn new(a_max: usize, b_max: usize) -> Self {
        SearchConfig {
            a_max,
            b_max,
            mode: BoundMode::Exact,
            report_min_a: 2,
            include_etsl: true,
            workers: 1,
            audit: false,
            bound_truncation: 0,
        }
    }

    pub fn with_mode(mut self, mode: BoundMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_audit(mut self, audit: bool) -> Self {
        self.audit = audit;
        self
    }

    pub fn with_min_a(mut self, min_a: usize) -> Self {
        self.report_min_a = min_a.max(1);
        self
    }
}

/// One expansion application. `seed_len` is `None` for leaf attachments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditEntry {
    pub seed_len: Option<usize>,
    pub input: TrapClass,
    pub descriptor: Option<ExpansionDescriptor>,
    pub step: ExpansionStep,
    pub output: TrapClass,
    pub key: Vec<usize>,
    /// False when the output was already known.
    pub fresh: bool,
}

impl fmt::Display for AuditEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seed = self.seed_len.map_or("-".to_string(), |k| k.to_string());
        let descriptor = self.descriptor.map_or("leaf".to_string(), |d| d.to_string());
        let key: Vec<String> = self.key.iter().map(|v| v.to_string()).collect();
        write!(
            f,
            "seed={seed} in={} exp={descriptor} step={} out={} key={} {}",
            self.input,
            self.step,
            self.output,
            key.join(","),
            if self.fresh { "new" } else { "dup" }
        )
    }
}

/// The global instance set plus per-seed buckets and the cycle pools.
#[derive(Debug, Clone, Default)]
pub struct InstanceStore {
    global: HashMap<Vec<usize>, TrapClass>,
    buckets: BTreeMap<(usize, usize, usize), Vec<TrapSetInstance>>,
    cycle_pool: BTreeMap<usize, Vec<TrapSetInstance>>,
}

impl InstanceStore {
    /// Inserts into the global set and the `(seed, a, b)` bucket; false if
    /// the key is already known.
    fn insert(&mut self, seed: usize, inst: TrapSetInstance) -> bool {
        if self.global.contains_key(inst.vars()) {
            return false;
        }
        let cls = inst.class();
        self.global.insert(inst.vars().to_vec(), cls);
        self.buckets.entry((seed, cls.a, cls.b)).or_default().push(inst);
        true
    }

    pub fn len(&self) -> usize {
        self.global.len()
    }

    pub fn is_empty(&self) -> bool {
        self.global.is_empty()
    }

    pub fn contains(&self, key: &[usize]) -> bool {
        self.global.contains_key(key)
    }

    pub fn bucket(&self, seed: usize, a: usize, b: usize) -> &[TrapSetInstance] {
        self.buckets.get(&(seed, a, b)).map_or(&[], Vec::as_slice)
    }

    pub fn cycles(&self, k: usize) -> &[TrapSetInstance] {
        self.cycle_pool.get(&k).map_or(&[], Vec::as_slice)
    }

    /// Every stored instance, sorted by `(a, b, key)`.
    pub fn instances(&self) -> Vec<TrapSetInstance> {
        let mut all: Vec<TrapSetInstance> = self
            .global
            .iter()
            .map(|(k, c)| TrapSetInstance::from_sorted(k.clone(), c.b))
            .collect();
        all.sort_by(|x, y| (x.class(), x.vars()).cmp(&(y.class(), y.vars())));
        all
    }
}

#[derive(Debug, Clone)]
pub struct LetsSearch {
    /// `None` when no LETS can exist in range (girth or degrees rule it out).
    pub bounds: Option<BoundsVector>,
    pub table: ExpansionTable,
    pub store: InstanceStore,
    pub audit: Vec<AuditEntry>,
}

impl LetsSearch {
    /// Stored LETSs with `b ≤ b_max`, sorted by `(a, b, key)`.
    pub fn in_range(&self, b_max: usize) -> Vec<TrapSetInstance> {
        self.store
            .instances()
            .into_iter()
            .filter(|i| i.class().b <= b_max)
            .collect()
    }
}

#[derive(Debug, Clone, Default)]
pub struct EtslSearch {
    /// Sorted by `(a, b, key)`.
    pub instances: Vec<TrapSetInstance>,
    pub audit: Vec<AuditEntry>,
    pub warnings: Vec<String>,
}

/// Refuses graphs with 4-cycles.
pub fn check_girth(g: &TannerGraph) -> Result<Girth> {
    if let Some(fc) = g.find_four_cycle() {
        return Err(Error::GirthTooSmall {
            girth: 4,
            cycle: fc.to_string(),
        });
    }
    Ok(g.girth())
}

fn with_workers<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    if workers <= 1 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Workers(e.to_string()))?;
    Ok(pool.install(job))
}

fn map_ordered<T: Sync, R: Send>(items: &[T], parallel: bool, f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

/// Bounds for the usable degrees of `g`, or `None` when no LETS fits the
/// range.
pub fn search_bounds(g: &TannerGraph, cfg: &SearchConfig) -> Result<Option<BoundsVector>> {
    let girth = match check_girth(g)? {
        Girth::Finite(girth) => girth,
        Girth::Infinite => return Ok(None),
    };
    if cfg.a_max < girth / 2 {
        return Ok(None);
    }
    let cap = degree_cap(cfg.a_max, cfg.b_max);
    let usable: Vec<usize> = (0..g.n())
        .map(|v| g.var_degree(v))
        .filter(|&d| d >= 2 && d < cap)
        .collect();
    if usable.is_empty() {
        return Ok(None);
    }
    let profile = DegreeProfile::from_var_degrees(&usable)?;
    let bounds = compute_bounds(&profile, girth, cfg.a_max, cfg.b_max, cfg.mode)?;
    Ok(Some(bounds.truncated(cfg.bound_truncation)))
}

pub fn lets_search(g: &TannerGraph, cfg: &SearchConfig) -> Result<LetsSearch> {
    let Some(bounds) = search_bounds(g, cfg)? else {
        return Ok(LetsSearch {
            bounds: None,
            table: ExpansionTable::default(),
            store: InstanceStore::default(),
            audit: Vec::new(),
        });
    };
    let girth = 2 * bounds.half_girth;
    let table = build_expansion_table(&bounds, girth);
    let (store, audit) = with_workers(cfg.workers, || grow_lets(g, cfg, &bounds, &table))?;
    Ok(LetsSearch {
        bounds: Some(bounds),
        table,
        store,
        audit,
    })
}

fn grow_lets(
    g: &TannerGraph,
    cfg: &SearchConfig,
    bounds: &BoundsVector,
    table: &ExpansionTable,
) -> (InstanceStore, Vec<AuditEntry>) {
    let parallel = cfg.workers > 1;
    let ex = Expander::new(g, degree_cap(cfg.a_max, cfg.b_max));
    let cap = |a: usize| bounds.cap(a).unwrap_or(0);
    let half = bounds.half_girth;
    let a_max = cfg.a_max;

    let mut store = InstanceStore::default();
    let roots: Vec<usize> = (0..g.n()).collect();
    for k in half..=a_max {
        let mut cycles: Vec<TrapSetInstance> = map_ordered(&roots, parallel, |&v| ex.cycles_rooted(v, k, cap(k)))
            .into_iter()
            .flatten()
            .collect();
        cycles.sort();
        store.cycle_pool.insert(k, cycles);
    }
    let pools: BTreeMap<usize, CyclePool> = store
        .cycle_pool
        .iter()
        .map(|(&k, cycles)| (k, CyclePool::new(g, cycles)))
        .collect();

    let mut audit = Vec::new();
    for k in half..=a_max {
        for cycle in store.cycle_pool[&k].clone() {
            store.insert(k, cycle);
        }
        for a in k..a_max {
            for b in 1..=cap(a) {
                let Some(plan) = table.get(a, b) else { continue };
                for &desc in plan {
                    let bucket = store.bucket(k, a, b).to_vec();
                    if bucket.is_empty() {
                        break;
                    }
                    let next = a + desc.added();
                    let bcap = cap(next);
                    let grown = map_ordered(&bucket, parallel, |s| match desc {
                        ExpansionDescriptor::Dot => ex.dot(s, bcap),
                        ExpansionDescriptor::Path(m) => ex.path(s, m, bcap),
                        ExpansionDescriptor::Lollipop { m, c } => ex.lollipop(s, &pools[&c], m, c, bcap),
                    });
                    for (s, outputs) in bucket.iter().zip(grown) {
                        for out in outputs {
                            let output = out.instance.class();
                            let key = cfg.audit.then(|| out.instance.vars().to_vec());
                            let fresh = store.insert(k, out.instance);
                            if let Some(key) = key {
                                audit.push(AuditEntry {
                                    seed_len: Some(k),
                                    input: s.class(),
                                    descriptor: Some(desc),
                                    step: out.step,
                                    output,
                                    key,
                                    fresh,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    (store, audit)
}

pub fn etsl_search(g: &TannerGraph, cfg: &SearchConfig, lets: &InstanceStore) -> Result<EtslSearch> {
    check_girth(g)?;
    let mut warnings = Vec::new();
    let low = g.low_degree_vars();
    if !low.is_empty() {
        let shown: Vec<String> = low.iter().take(8).map(|v| format!("v{v}")).collect();
        let more = if low.len() > 8 { ", ..." } else { "" };
        warnings.push(format!(
            "{} variable node(s) of degree < 2 excluded from the search: {}{more}",
            low.len(),
            shown.join(", ")
        ));
    }
    with_workers(cfg.workers, || grow_etsl(g, cfg, lets, warnings))
}

fn grow_etsl(g: &TannerGraph, cfg: &SearchConfig, lets: &InstanceStore, warnings: Vec<String>) -> EtslSearch {
    let parallel = cfg.workers > 1;
    let ex = Expander::unrestricted(g);
    let b_max = cfg.b_max;

    let mut lets_cells: BTreeMap<(usize, usize), Vec<TrapSetInstance>> = BTreeMap::new();
    for inst in lets.instances() {
        let c = inst.class();
        if c.b >= 1 && c.b <= b_max {
            lets_cells.entry((c.a, c.b)).or_default().push(inst);
        }
    }

    let mut seen: HashMap<Vec<usize>, TrapClass> = HashMap::new();
    let mut pools: BTreeMap<(usize, usize), Vec<TrapSetInstance>> = BTreeMap::new();
    if cfg.a_max >= 1 {
        for v in 0..g.n() {
            let d = g.var_degree(v);
            if (2..=b_max).contains(&d) {
                let single = TrapSetInstance::from_sorted(vec![v], d);
                seen.insert(vec![v], single.class());
                pools.entry((1, d)).or_default().push(single);
            }
        }
    }

    let mut audit = Vec::new();
    for a in 1..cfg.a_max {
        for b in 1..=b_max {
            let mut work = pools.get(&(a, b)).cloned().unwrap_or_default();
            work.extend(lets_cells.get(&(a, b)).into_iter().flatten().cloned());
            let grown = map_ordered(&work, parallel, |s| ex.leaves(s, b_max));
            for (s, outputs) in work.iter().zip(grown) {
                for out in outputs {
                    let cls = out.instance.class();
                    let fresh = !seen.contains_key(out.instance.vars());
                    if cfg.audit {
                        audit.push(AuditEntry {
                            seed_len: None,
                            input: s.class(),
                            descriptor: None,
                            step: out.step,
                            output: cls,
                            key: out.instance.vars().to_vec(),
                            fresh,
                        });
                    }
                    if fresh {
                        seen.insert(out.instance.vars().to_vec(), cls);
                        pools.entry((cls.a, cls.b)).or_default().push(out.instance);
                    }
                }
            }
        }
    }

    let mut instances: Vec<TrapSetInstance> = pools.into_values().flatten().collect();
    instances.sort_by(|x, y| (x.class(), x.vars()).cmp(&(y.class(), y.vars())));
    EtslSearch {
        instances,
        audit,
        warnings,
    }
}

/// Everything one analysis run produces.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub config: SearchConfig,
    pub lets: LetsSearch,
    pub etsl: EtslSearch,
    pub lets_time: Duration,
    pub etsl_time: Duration,
}

impl SearchOutcome {
    /// Number of LETS instances the search stored, in range or not.
    pub fn explored(&self) -> usize {
        self.lets.store.len()
    }

    /// All in-range ETS keys (LETS and ETSL), sorted by `(a, b, key)`.
    pub fn ets(&self) -> Vec<TrapSetInstance> {
        let mut all = self.lets.in_range(self.config.b_max);
        all.extend(self.etsl.instances.iter().cloned());
        all.sort_by(|x, y| (x.class(), x.vars()).cmp(&(y.class(), y.vars())));
        all
    }

    /// Audit entries of both phases, LETS phase first.
    pub fn audit(&self) -> impl Iterator<Item = &AuditEntry> {
        self.lets.audit.iter().chain(&self.etsl.audit)
    }

    pub fn census(&self, g: &TannerGraph) -> Census {
        Census::from_sets(g, self.ets().into_iter().map(TrapSetInstance::into_vars))
    }

    pub fn rows(&self, g: &TannerGraph) -> Vec<ReportRow> {
        self.census(g).rows(self.config.report_min_a)
    }
}

/// Runs the LETS phase and, if configured, the ETSL phase.
pub fn run(g: &TannerGraph, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let t0 = Instant::now();
    let lets = lets_search(g, cfg)?;
    let lets_time = t0.elapsed();
    let t1 = Instant::now();
    let etsl = if cfg.include_etsl {
        etsl_search(g, cfg, &lets.store)?
    } else {
        EtslSearch::default()
    };
    Ok(SearchOutcome {
        config: cfg.clone(),
        lets,
        etsl,
        lets_time,
        etsl_time: t1.elapsed(),
    })
}

/// Per-class counts for `report_min_a ≤ a ≤ a_max`, `b ≤ b_max`.
pub fn full_report(g: &TannerGraph, cfg: &SearchConfig) -> Result<Vec<ReportRow>> {
    Ok(run(g, cfg)?.rows(g))
}
