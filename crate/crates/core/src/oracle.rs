//! Brute-force enumeration of connected ETSs and a seeded random Tanner-graph
//! generator.
//!
//! The enumeration shares nothing with the search beyond [`classify`]: it
//! walks every connected variable set of the "shares a check" graph once,
//! using the fixed-root exclusive-neighbourhood scheme, and stops growing a
//! set as soon as some check reaches induced degree 3 (every superset is then
//! non-elementary too).
//!
//! [`classify`]: crate::tsets::classify

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::census::Census;
use crate::error::{Error, Result};
use crate::tanner::TannerGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_n: usize,
    pub max_a: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_n: 64, max_a: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub a_max: usize,
    pub b_cap: usize,
    pub census: Census,
}

impl OracleResult {
    /// The same result for a smaller range.
    pub fn restrict(&self, a_max: usize, b_cap: usize) -> OracleResult {
        OracleResult {
            a_max: a_max.min(self.a_max),
            b_cap: b_cap.min(self.b_cap),
            census: self.census.restrict(1, a_max, b_cap),
        }
    }
}

pub fn brute_force_ets(g: &TannerGraph, a_max: usize, b_cap: usize) -> Result<OracleResult> {
    brute_force_ets_with(g, a_max, b_cap, OracleLimits::default())
}

pub fn brute_force_ets_with(g: &TannerGraph, a_max: usize, b_cap: usize, limits: OracleLimits) -> Result<OracleResult> {
    if g.n() > limits.max_n || a_max > limits.max_a {
        return Err(Error::ScaleGuard(format!(
            "n = {}, a_max = {a_max} exceeds n <= {}, a_max <= {}",
            g.n(),
            limits.max_n,
            limits.max_a
        )));
    }
    let sets = connected_ets_sets(g, a_max)
        .into_iter()
        .filter(|(_, b)| *b <= b_cap)
        .map(|(s, _)| s);
    Ok(OracleResult {
        a_max,
        b_cap,
        census: Census::from_sets(g, sets),
    })
}

/// Variable-node adjacency: two variables are neighbours iff they share a
/// check.
fn share_graph(g: &TannerGraph) -> Vec<Vec<usize>> {
    (0..g.n())
        .map(|v| {
            let mut nb: Vec<usize> = g
                .var_neighbors(v)
                .iter()
                .flat_map(|&c| g.chk_neighbors(c).iter().copied())
                .filter(|&u| u != v)
                .collect();
            nb.sort_unstable();
            nb.dedup();
            nb
        })
        .collect()
}

struct Esu<'a> {
    g: &'a TannerGraph,
    adj: Vec<Vec<usize>>,
    a_max: usize,
    chk_count: Vec<u8>,
    odd: usize,
    /// Number of members of the current set equal or adjacent to each node.
    closed: Vec<u32>,
    current: Vec<usize>,
    out: Vec<(Vec<usize>, usize)>,
}

impl Esu<'_> {
    /// Adds `v`; returns false (and leaves the state unchanged) if a check
    /// would reach induced degree 3.
    fn push(&mut self, v: usize) -> bool {
        if self.g.var_neighbors(v).iter().any(|&c| self.chk_count[c] >= 2) {
            return false;
        }
        for &c in self.g.var_neighbors(v) {
            self.chk_count[c] += 1;
            if self.chk_count[c] == 1 {
                self.odd += 1;
            } else {
                self.odd -= 1;
            }
        }
        self.closed[v] += 1;
        for &u in &self.adj[v] {
            self.closed[u] += 1;
        }
        self.current.push(v);
        true
    }

    fn pop(&mut self) {
        let v = self.current.pop().expect("non-empty");
        for &c in self.g.var_neighbors(v) {
            self.chk_count[c] -= 1;
            if self.chk_count[c] == 1 {
                self.odd += 1;
            } else {
                self.odd -= 1;
            }
        }
        self.closed[v] -= 1;
        for &u in &self.adj[v] {
            self.closed[u] -= 1;
        }
    }

    fn record(&mut self) {
        let mut key = self.current.clone();
        key.sort_unstable();
        self.out.push((key, self.odd));
    }

    fn extend(&mut self, mut ext: Vec<usize>, root: usize) {
        self.record();
        if self.current.len() == self.a_max {
            return;
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            next.extend(self.adj[w].iter().copied().filter(|&u| u > root && self.closed[u] == 0));
            if self.push(w) {
                self.extend(next, root);
                self.pop();
            }
        }
    }
}

/// Every connected ETS with at most `a_max` variables, with its `b`, sorted.
pub fn connected_ets_sets(g: &TannerGraph, a_max: usize) -> Vec<(Vec<usize>, usize)> {
    let mut esu = Esu {
        g,
        adj: share_graph(g),
        a_max,
        chk_count: vec![0; g.m()],
        odd: 0,
        closed: vec![0; g.n()],
        current: Vec::new(),
        out: Vec::new(),
    };
    if a_max == 0 {
        return Vec::new();
    }
    for root in 0..g.n() {
        esu.push(root);
        let ext: Vec<usize> = esu.adj[root].iter().copied().filter(|&u| u > root).collect();
        esu.extend(ext, root);
        esu.pop();
    }
    let mut out = esu.out;
    out.sort();
    out
}

/// The same enumeration by filtering every subset; only for `n ≤ 20`.
pub fn naive_ets_sets(g: &TannerGraph, a_max: usize) -> Result<Vec<(Vec<usize>, usize)>> {
    let n = g.n();
    if n > 20 {
        return Err(Error::ScaleGuard(format!("naive enumeration needs n <= 20, got {n}")));
    }
    let adj = share_graph(g);
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size > a_max {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut deg = vec![0usize; g.m()];
        for &v in &set {
            for &c in g.var_neighbors(v) {
                deg[c] += 1;
            }
        }
        if deg.iter().any(|&d| d > 2) {
            continue;
        }
        let mut seen = 1u32 << set[0];
        let mut queue = VecDeque::from([set[0]]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if mask >> u & 1 == 1 && seen >> u & 1 == 0 {
                    seen |= 1 << u;
                    queue.push_back(u);
                }
            }
        }
        if seen == mask {
            out.push((set, deg.iter().filter(|&&d| d == 1).count()));
        }
    }
    out.sort();
    Ok(out)
}

/// Parameters for [`random_graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    /// Degree of each variable node; the length is `n`.
    pub var_degrees: Vec<usize>,
    pub m: usize,
    pub max_check_degree: usize,
    pub girth_min: usize,
    pub seed: u64,
}

const ATTEMPTS: usize = 64;

/// Places edges variable by variable, highest degree first, always on a
/// least-loaded check that keeps every cycle at least `girth_min` long.
/// Deterministic in the spec.
pub fn random_graph(spec: &GenSpec) -> Result<TannerGraph> {
    let n = spec.var_degrees.len();
    let total: usize = spec.var_degrees.iter().sum();
    if spec.girth_min < 4 || spec.girth_min % 2 == 1 {
        return Err(Error::InvalidDegrees(format!(
            "girth_min must be even and >= 4, got {}",
            spec.girth_min
        )));
    }
    if total > spec.m * spec.max_check_degree || spec.var_degrees.iter().any(|&d| d > spec.m) {
        return Err(Error::InvalidDegrees(format!(
            "{total} edges do not fit {} checks of degree <= {}",
            spec.m, spec.max_check_degree
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut order: Vec<usize> = (0..n).collect();
    'attempt: for _ in 0..ATTEMPTS {
        order.shuffle(&mut rng);
        order.sort_by_key(|&v| std::cmp::Reverse(spec.var_degrees[v]));
        let mut var_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut chk_adj: Vec<Vec<usize>> = vec![Vec::new(); spec.m];
        for &v in &order {
            for _ in 0..spec.var_degrees[v] {
                let near = near_checks(&var_adj, &chk_adj, v, spec.girth_min);
                let candidates: Vec<usize> = (0..spec.m)
                    .filter(|&c| !near[c] && chk_adj[c].len() < spec.max_check_degree)
                    .collect();
                let Some(low) = candidates.iter().map(|&c| chk_adj[c].len()).min() else {
                    continue 'attempt;
                };
                let least: Vec<usize> = candidates.into_iter().filter(|&c| chk_adj[c].len() == low).collect();
                let c = least[rng.gen_range(0..least.len())];
                var_adj[v].push(c);
                chk_adj[c].push(v);
            }
        }
        return TannerGraph::from_var_adjacency(spec.m, var_adj);
    }
    Err(Error::Realization(ATTEMPTS))
}

/// Checks within distance `girth_min − 3` of `v`; an edge to any of them
/// would close a cycle shorter than `girth_min`.
fn near_checks(var_adj: &[Vec<usize>], chk_adj: &[Vec<usize>], v: usize, girth_min: usize) -> Vec<bool> {
    let reach = girth_min - 3;
    let mut near = vec![false; chk_adj.len()];
    let mut seen_var = vec![false; var_adj.len()];
    seen_var[v] = true;
    let mut frontier = vec![v];
    let mut dist = 1;
    while dist <= reach && !frontier.is_empty() {
        let mut checks = Vec::new();
        for &u in &frontier {
            for &c in &var_adj[u] {
                if !near[c] {
                    near[c] = true;
                    checks.push(c);
                }
            }
        }
        let mut next = Vec::new();
        for c in checks {
            for &u in &chk_adj[c] {
                if !seen_var[u] {
                    seen_var[u] = true;
                    next.push(u);
                }
            }
        }
        frontier = next;
        dist += 2;
    }
    near
}

/// One line of a corpus manifest: `seed n m dc_max degrees girth_min`, with
/// degrees written as `degree:count` pairs, e.g. `2:8,3:4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureSpec {
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub max_check_degree: usize,
    pub degree_counts: BTreeMap<usize, usize>,
    pub girth_min: usize,
}

impl FixtureSpec {
    pub fn gen_spec(&self) -> GenSpec {
        GenSpec {
            var_degrees: self
                .degree_counts
                .iter()
                .flat_map(|(&d, &k)| std::iter::repeat_n(d, k))
                .collect(),
            m: self.m,
            max_check_degree: self.max_check_degree,
            girth_min: self.girth_min,
            seed: self.seed,
        }
    }

    pub fn graph(&self) -> Result<TannerGraph> {
        random_graph(&self.gen_spec())
    }

    pub fn parse(line: &str, line_no: usize) -> Result<FixtureSpec> {
        let bad = |msg: String| Error::Manifest { line: line_no, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 6 {
            return Err(bad(format!("expected 6 fields, found {}", fields.len())));
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| bad(format!("bad number {s:?}")));
        let mut degree_counts = BTreeMap::new();
        for pair in fields[4].split(',') {
            let (d, k) = pair
                .split_once(':')
                .ok_or_else(|| bad(format!("bad degree pair {pair:?}")))?;
            degree_counts.insert(num(d)? as usize, num(k)? as usize);
        }
        let spec = FixtureSpec {
            seed: num(fields[0])?,
            n: num(fields[1])? as usize,
            m: num(fields[2])? as usize,
            max_check_degree: num(fields[3])? as usize,
            degree_counts,
            girth_min: num(fields[5])? as usize,
        };
        let total: usize = spec.degree_counts.values().sum();
        if total != spec.n {
            return Err(bad(format!("degree counts add up to {total}, not n = {}", spec.n)));
        }
        Ok(spec)
    }
}

impl fmt::Display for FixtureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degrees: Vec<String> = self.degree_counts.iter().map(|(d, k)| format!("{d}:{k}")).collect();
        write!(
            f,
            "{} {} {} {} {} {}",
            self.seed,
            self.n,
            self.m,
            self.max_check_degree,
            degrees.join(","),
            self.girth_min
        )
    }
}

/// Parses a manifest; blank lines and `#` comments are skipped.
pub fn read_manifest(text: &str) -> Result<Vec<FixtureSpec>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| FixtureSpec::parse(l, i + 1))
        .collect()
}

pub fn write_manifest(specs: &[FixtureSpec]) -> String {
    let mut out = String::from("# seed n m dc_max degrees girth_min\n");
    for s in specs {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}

/// Draws `count` realizable fixtures with `n ∈ [n_lo, n_hi]` and variable
/// degrees from `degrees`; specs that fail to realize are redrawn.
pub fn build_corpus(count: usize, base_seed: u64, n_range: (usize, usize), degrees: &[usize]) -> Vec<FixtureSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(n_range.0..=n_range.1);
        let mut degree_counts = BTreeMap::new();
        for _ in 0..n {
            // low degrees dominate, as in typical irregular ensembles
            let i = (rng.gen_range(0.0f64..1.0).powi(2) * degrees.len() as f64) as usize;
            *degree_counts.entry(degrees[i.min(degrees.len() - 1)]).or_insert(0) += 1;
        }
        let edges: usize = degree_counts.iter().map(|(d, k)| d * k).sum();
        let max_check_degree = rng.gen_range(4..=7);
        let m = edges
            .div_ceil(max_check_degree - 1)
            .max(degrees.iter().copied().max().unwrap_or(2));
        let spec = FixtureSpec {
            seed: rng.gen(),
            n,
            m,
            max_check_degree,
            degree_counts,
            girth_min: 6,
        };
        if spec.graph().is_ok() {
            out.push(spec);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::Category;
    use crate::tanner::{fixtures::six_cycle, Girth};
    use crate::tsets::TrapClass;

    #[test]
    fn six_cycle_oracle() {
        let r = brute_force_ets(&six_cycle(), 3, 2).unwrap();
        let c = &r.census;
        assert_eq!(c.count(TrapClass::new(1, 2), Category::Etsl2), 3);
        assert_eq!(c.count(TrapClass::new(2, 2), Category::Etsl2), 3);
        assert_eq!(c.count(TrapClass::new(3, 0), Category::Lets), 1);
        assert_eq!(c.total(Category::Ets), 7);
    }

    #[test]
    fn chain_oracle() {
        let g = TannerGraph::from_edges(2, 3, &[(0, 0), (0, 1), (1, 1), (1, 2)]).unwrap();
        let c = brute_force_ets(&g, 2, 2).unwrap().census;
        assert_eq!(c.count(TrapClass::new(1, 2), Category::Etsl2), 2);
        assert_eq!(c.count(TrapClass::new(2, 2), Category::Etsl2), 1);
        assert_eq!(c.total(Category::Ets), 3);
    }

    #[test]
    fn scale_guard() {
        let limits = OracleLimits { max_n: 2, max_a: 8 };
        assert!(matches!(
            brute_force_ets_with(&six_cycle(), 3, 2, limits),
            Err(Error::ScaleGuard(_))
        ));
    }

    #[test]
    fn esu_matches_power_set() {
        for seed in 0..12u64 {
            let spec = GenSpec {
                var_degrees: vec![2, 2, 2, 2, 3, 3, 3, 3, 3, 4, 4, 2, 2, 3],
                m: 12,
                max_check_degree: 6,
                girth_min: 6,
                seed,
            };
            let g = random_graph(&spec).unwrap();
            assert_eq!(connected_ets_sets(&g, 6), naive_ets_sets(&g, 6).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn generator_is_deterministic_and_respects_girth() {
        let spec = GenSpec {
            var_degrees: [vec![2; 8], vec![3; 4]].concat(),
            m: 8,
            max_check_degree: 5,
            girth_min: 6,
            seed: 1,
        };
        let g1 = random_graph(&spec).unwrap();
        let g2 = random_graph(&spec).unwrap();
        assert_eq!(g1, g2);
        assert!(g1.girth() >= Girth::Finite(6));
        let degrees: Vec<usize> = (0..g1.n()).map(|v| g1.var_degree(v)).collect();
        assert_eq!(degrees, spec.var_degrees);
    }

    #[test]
    fn manifest_roundtrip() {
        let specs = build_corpus(5, 7, (12, 16), &[2, 3, 4]);
        let text = write_manifest(&specs);
        assert_eq!(read_manifest(&text).unwrap(), specs);
        assert!(read_manifest("1 2 3").is_err());
        assert!(read_manifest("1 3 2 4 2:2 6").is_err(), "counts must add up to n");
        assert!(read_manifest("\n# only comments\n").unwrap().is_empty());
    }
}
