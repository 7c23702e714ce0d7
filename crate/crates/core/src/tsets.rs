//! Trapping-set instances, their induced-subgraph summaries, and the class
//! arithmetic used to drive and audit the search.

use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tanner::{DegreeProfile, TannerGraph};

/// An `(a, b)` class: size and number of unsatisfied checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TrapClass {
    pub a: usize,
    pub b: usize,
}

impl TrapClass {
    pub const fn new(a: usize, b: usize) -> Self {
        TrapClass { a, b }
    }
}

impl fmt::Display for TrapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A set of variable nodes, identified by its sorted index list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrapSetInstance {
    vars: Vec<usize>,
    class: TrapClass,
}

impl TrapSetInstance {
    /// Wraps an already sorted, duplicate-free variable list together with its
    /// class. The caller is responsible for `b`; see [`gamma`].
    pub fn from_sorted(vars: Vec<usize>, b: usize) -> Self {
        debug_assert!(!vars.is_empty());
        debug_assert!(vars.windows(2).all(|w| w[0] < w[1]));
        let class = TrapClass::new(vars.len(), b);
        TrapSetInstance { vars, class }
    }

    /// Builds an instance from an arbitrary variable list, computing `b`.
    pub fn new(g: &TannerGraph, vars: &[usize]) -> Result<Self> {
        let key = canonical_key(g, vars)?;
        let b = gamma(g, &key)?.gamma_o.len();
        Ok(Self::from_sorted(key, b))
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn class(&self) -> TrapClass {
        self.class
    }

    pub fn into_vars(self) -> Vec<usize> {
        self.vars
    }
}

/// Partition of `Γ(S)` by induced-degree parity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaSummary {
    pub gamma_o: Vec<usize>,
    pub gamma_e: Vec<usize>,
    /// `(check, induced degree)` for every check in `Γ(S)`, sorted by check.
    pub chk_deg: Vec<(usize, usize)>,
    pub max_chk_deg: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CategoryFlags {
    pub is_ets: bool,
    pub is_lets: bool,
    pub is_etsl1: bool,
    pub is_etsl2: bool,
    pub is_eas: bool,
    pub is_feas: bool,
    pub is_feas_star: bool,
    pub is_connected: bool,
}

impl CategoryFlags {
    pub fn is_etsl(&self) -> bool {
        self.is_etsl1 || self.is_etsl2
    }

    /// The flag implications every classification must satisfy.
    pub fn consistent(&self) -> bool {
        (!self.is_lets || self.is_ets)
            && (!self.is_etsl() || (self.is_ets && !self.is_lets))
            && !(self.is_etsl1 && self.is_etsl2)
            && (!self.is_feas || self.is_eas)
            && (!self.is_eas || self.is_ets)
            && (!self.is_feas_star || self.is_ets)
            && (!self.is_ets || self.is_lets || self.is_etsl())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: TrapClass,
    pub flags: CategoryFlags,
    pub gamma: GammaSummary,
}

/// Normal (or quasi-normal) graph of an ETS. Node `i` stands for
/// `nodes[i]`; edges and half-edges use these local indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalGraph {
    pub nodes: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub half_edges: Option<Vec<usize>>,
}

impl NormalGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Plain-text edge list: an `a <count>` header, one `u v` line per edge
    /// and, for quasi-normal graphs, one `h u k` line per node.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "a {}", self.nodes.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{} {}", self.nodes[u], self.nodes[v]);
        }
        if let Some(half) = &self.half_edges {
            for (i, &k) in half.iter().enumerate() {
                let _ = writeln!(out, "h {} {}", self.nodes[i], k);
            }
        }
        out
    }
}

/// Sorts and validates a variable list.
pub fn canonical_key(g: &TannerGraph, vars: &[usize]) -> Result<Vec<usize>> {
    if vars.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some(&bad) = vars.iter().find(|&&v| v >= g.n()) {
        return Err(Error::InvalidIndex { index: bad, n: g.n() });
    }
    let mut key = vars.to_vec();
    key.sort_unstable();
    key.dedup();
    Ok(key)
}

pub fn gamma(g: &TannerGraph, s: &[usize]) -> Result<GammaSummary> {
    let key = canonical_key(g, s)?;
    let mut checks: Vec<usize> = key.iter().flat_map(|&v| g.var_neighbors(v).iter().copied()).collect();
    checks.sort_unstable();

    let mut chk_deg: Vec<(usize, usize)> = Vec::new();
    for c in checks {
        match chk_deg.last_mut() {
            Some((last, d)) if *last == c => *d += 1,
            _ => chk_deg.push((c, 1)),
        }
    }
    let gamma_o = chk_deg.iter().filter(|(_, d)| d % 2 == 1).map(|&(c, _)| c).collect();
    let gamma_e = chk_deg.iter().filter(|(_, d)| d % 2 == 0).map(|&(c, _)| c).collect();
    let max_chk_deg = chk_deg.iter().map(|&(_, d)| d).max().unwrap_or(0);
    Ok(GammaSummary {
        gamma_o,
        gamma_e,
        chk_deg,
        max_chk_deg,
    })
}

fn induced_degree(summary: &GammaSummary, c: usize) -> usize {
    summary
        .chk_deg
        .binary_search_by_key(&c, |&(c, _)| c)
        .map(|i| summary.chk_deg[i].1)
        .unwrap_or(0)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn classify(g: &TannerGraph, s: &[usize]) -> Result<Classification> {
    let key = canonical_key(g, s)?;
    let summary = gamma(g, &key)?;
    let a = key.len();
    let class = TrapClass::new(a, summary.gamma_o.len());
    let local = |v: usize| key.binary_search(&v).ok();

    // "share a check" connectivity over S
    let mut parent: Vec<usize> = (0..a).collect();
    for &(c, d) in &summary.chk_deg {
        if d < 2 {
            continue;
        }
        let mut members = g.chk_neighbors(c).iter().filter_map(|&v| local(v));
        if let Some(first) = members.next() {
            for other in members {
                let (r1, r2) = (find(&mut parent, first), find(&mut parent, other));
                parent[r1] = r2;
            }
        }
    }
    let components = (0..a).filter(|&i| find(&mut parent, i) == i).count();
    let is_connected = components == 1;

    let mut flags = CategoryFlags {
        is_connected,
        ..CategoryFlags::default()
    };
    flags.is_ets = summary.max_chk_deg <= 2;
    if !flags.is_ets {
        return Ok(Classification {
            class,
            flags,
            gamma: summary,
        });
    }

    let (mut sat, mut unsat) = (vec![0usize; a], vec![0usize; a]);
    for (i, &v) in key.iter().enumerate() {
        for &c in g.var_neighbors(v) {
            if induced_degree(&summary, c) == 2 {
                sat[i] += 1;
            } else {
                unsat[i] += 1;
            }
        }
    }

    flags.is_lets = is_connected && sat.iter().all(|&d| d >= 2);
    // a forest on `a` nodes with `components` trees has exactly a - components edges
    let cyclic = summary.gamma_e.len() + components > a;
    if !flags.is_lets {
        flags.is_etsl1 = cyclic;
        flags.is_etsl2 = !cyclic;
    }
    flags.is_eas = (0..a).all(|i| sat[i] > unsat[i]);
    let relaxed_inside = (0..a).all(|i| g.var_degree(key[i]) == 2 || sat[i] > unsat[i]);

    let outside_ok = {
        let mut hits: Vec<(usize, usize)> = summary
            .gamma_o
            .iter()
            .flat_map(|&c| g.chk_neighbors(c).iter().copied())
            .filter(|&u| local(u).is_none())
            .map(|u| (u, 1))
            .collect();
        hits.sort_unstable();
        hits.dedup_by(|next, acc| {
            if next.0 == acc.0 {
                acc.1 += 1;
                true
            } else {
                false
            }
        });
        let isolated_inside = key.iter().filter(|&&v| g.var_degree(v) == 0).count();
        g.isolated_var_count() == isolated_inside && hits.iter().all(|&(u, k)| g.var_degree(u) - k > k)
    };
    flags.is_feas = flags.is_eas && outside_ok;
    flags.is_feas_star = relaxed_inside && outside_ok;

    Ok(Classification {
        class,
        flags,
        gamma: summary,
    })
}

/// Projects an ETS onto its normal graph; with `quasi` the per-node count of
/// degree-1 checks is kept as half-edges.
pub fn normal_projection(g: &TannerGraph, s: &[usize], quasi: bool) -> Result<NormalGraph> {
    let key = canonical_key(g, s)?;
    let summary = gamma(g, &key)?;
    if let Some(&(check, degree)) = summary.chk_deg.iter().find(|&&(_, d)| d > 2) {
        return Err(Error::NotElementary { check, degree });
    }
    let local = |v: usize| key.binary_search(&v).ok();
    let mut edges = Vec::with_capacity(summary.gamma_e.len());
    for &c in &summary.gamma_e {
        let mut ends = g.chk_neighbors(c).iter().filter_map(|&v| local(v));
        let (u, v) = (ends.next().unwrap(), ends.next().unwrap());
        edges.push((u.min(v), u.max(v)));
    }
    edges.sort_unstable();
    let half_edges = quasi.then(|| {
        let mut half = vec![0; key.len()];
        for &c in &summary.gamma_o {
            let v = g.chk_neighbors(c).iter().find_map(|&v| local(v)).unwrap();
            half[v] += 1;
        }
        half
    });
    Ok(NormalGraph {
        nodes: key,
        edges,
        half_edges,
    })
}

/// `b = a·d_v − 2e` for an ETS of a variable-regular graph.
pub fn regular_unsatisfied_count(a: usize, d_v: usize, e: usize) -> Result<usize> {
    (a * d_v)
        .checked_sub(2 * e)
        .ok_or_else(|| Error::ImpossibleClass(format!("a = {a}, d_v = {d_v} cannot carry {e} normal edges")))
}

/// Class of the normal graph of an `(a, b)` LETS when viewed inside a
/// variable-regular graph of degree `f`: `(a, a·f + b − Σ d_i)`.
pub fn regular_class_map(a: usize, b: usize, var_degrees: &[usize], f: usize) -> Result<TrapClass> {
    if var_degrees.len() != a {
        return Err(Error::ImpossibleClass(format!(
            "{} degrees given for a set of size {a}",
            var_degrees.len()
        )));
    }
    let sum: usize = var_degrees.iter().sum();
    (a * f + b)
        .checked_sub(sum)
        .map(|b2| TrapClass::new(a, b2))
        .ok_or_else(|| Error::ImpossibleClass(format!("negative b' for f = {f}")))
}

/// `(t, b_max + a_max·(t − d_v_min))`, with `t` the largest variable degree
/// strictly below `a_max`.
pub fn regular_equivalent_params(profile: &DegreeProfile, a_max: usize, b_max: usize) -> Result<(usize, usize)> {
    let t = profile
        .var_degrees
        .iter()
        .copied()
        .filter(|&d| d < a_max)
        .max()
        .ok_or(Error::NoDegreeBelow(a_max))?;
    Ok((t, b_max + a_max * (t - profile.d_v_min)))
}

/// One concrete expansion step, with the degrees it involves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ExpansionStep {
    /// `dot_m^k`: a root of degree `k` with `m` connections into `Γ_o(S)`.
    /// `m = 1` is the leaf attachment used for ETSLs.
    Dot { root_degree: usize, connections: usize },
    /// `pa_m`, with the degrees of the `m` new nodes.
    Path { degrees: Vec<usize> },
    /// `lo_m^c`, with the degrees of the `m` new nodes.
    Lollipop { cycle_len: usize, degrees: Vec<usize> },
}

impl fmt::Display for ExpansionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |d: &[usize]| d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            ExpansionStep::Dot {
                root_degree,
                connections,
            } => write!(f, "dot_{connections}^{root_degree}"),
            ExpansionStep::Path { degrees } => write!(f, "pa_{}[{}]", degrees.len(), list(degrees)),
            ExpansionStep::Lollipop { cycle_len, degrees } => {
                write!(f, "lo_{}^{}[{}]", degrees.len(), cycle_len, list(degrees))
            }
        }
    }
}

/// Class reached by applying `step` to a structure in class `cls`.
pub fn predict_class(cls: TrapClass, step: &ExpansionStep) -> Result<TrapClass> {
    let negative = || Error::ImpossibleClass(format!("{step} applied to {cls} gives b < 0"));
    match step {
        ExpansionStep::Dot {
            root_degree,
            connections,
        } => {
            if *connections == 0 || connections > root_degree {
                return Err(Error::ImpossibleClass(format!("invalid {step}")));
            }
            (cls.b + root_degree)
                .checked_sub(2 * connections)
                .map(|b| TrapClass::new(cls.a + 1, b))
                .ok_or_else(negative)
        }
        ExpansionStep::Path { degrees } | ExpansionStep::Lollipop { degrees, .. } => {
            if degrees.len() < 2 || degrees.iter().any(|&d| d < 2) {
                return Err(Error::ImpossibleClass(format!("invalid {step}")));
            }
            let extra: usize = degrees.iter().map(|d| d - 2).sum();
            (cls.b + extra)
                .checked_sub(2)
                .map(|b| TrapClass::new(cls.a + degrees.len(), b))
                .ok_or_else(negative)
        }
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::tanner::fixtures::six_cycle;

    #[test]
    fn gamma_on_six_cycle() {
        let g = six_cycle();
        let s = gamma(&g, &[0]).unwrap();
        assert_eq!(s.gamma_o, vec![0, 2]);
        assert!(s.gamma_e.is_empty());
        let s = gamma(&g, &[0, 1, 2]).unwrap();
        assert!(s.gamma_o.is_empty());
        assert_eq!(s.gamma_e, vec![0, 1, 2]);
        assert_eq!(s.max_chk_deg, 2);
        assert!(matches!(gamma(&g, &[]), Err(Error::EmptySet)));
        assert!(matches!(gamma(&g, &[3]), Err(Error::InvalidIndex { index: 3, n: 3 })));
    }

    #[test]
    fn fig1a_lets() {
        let g = from_quasi_normal(4, &DIAMOND, &[0, 0, 1, 1]);
        let c = classify(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(c.class, TrapClass::new(4, 2));
        assert!(c.flags.is_ets && c.flags.is_lets && !c.flags.is_etsl());
        assert!(c.flags.consistent());
    }

    #[test]
    fn fig1b_leafy_ets() {
        // triangle 1-2-3 plus the leaf 0 hanging off node 1, all degree 3
        let edges = [(0, 1), (1, 2), (1, 3), (2, 3)];
        let g = from_quasi_normal(4, &edges, &[2, 0, 1, 1]);
        let c = classify(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(c.class, TrapClass::new(4, 4));
        assert!(c.flags.is_ets && !c.flags.is_lets);
        assert!(c.flags.is_etsl1 && !c.flags.is_etsl2);
    }

    #[test]
    fn degree_two_chain_is_etsl2() {
        let g = TannerGraph::from_edges(2, 3, &[(0, 0), (0, 1), (1, 1), (1, 2)]).unwrap();
        let c = classify(&g, &[0, 1]).unwrap();
        assert_eq!(c.class, TrapClass::new(2, 2));
        assert!(c.flags.is_etsl2 && !c.flags.is_etsl1 && !c.flags.is_lets);
        assert!(c.flags.is_connected);
        // degree-2 nodes see one satisfied and one unsatisfied check: only the
        // relaxed absorbing condition accepts them
        assert!(!c.flags.is_eas && c.flags.is_feas_star);
    }

    #[test]
    fn six_cycle_categories() {
        let g = six_cycle();
        let c = classify(&g, &[2, 0, 1]).unwrap();
        assert_eq!(c.class, TrapClass::new(3, 0));
        let f = c.flags;
        assert!(f.is_lets && f.is_eas && f.is_feas && f.is_feas_star);
        let single = classify(&g, &[0]).unwrap();
        assert_eq!(single.class, TrapClass::new(1, 2));
        assert!(single.flags.is_etsl2);
    }

    #[test]
    fn non_elementary() {
        // three variables on one check
        let g = TannerGraph::from_edges(3, 4, &[(0, 0), (1, 0), (2, 0), (0, 1), (1, 2), (2, 3)]).unwrap();
        let c = classify(&g, &[0, 1, 2]).unwrap();
        assert!(!c.flags.is_ets && !c.flags.is_lets && !c.flags.is_etsl());
        assert!(c.flags.consistent());
        assert!(matches!(
            normal_projection(&g, &[0, 1, 2], false),
            Err(Error::NotElementary { check: 0, degree: 3 })
        ));
    }

    #[test]
    fn disconnected_set() {
        let g = TannerGraph::from_edges(2, 4, &[(0, 0), (0, 1), (1, 2), (1, 3)]).unwrap();
        let c = classify(&g, &[0, 1]).unwrap();
        assert!(!c.flags.is_connected && !c.flags.is_lets && c.flags.is_etsl2);
    }

    #[test]
    fn normal_projections() {
        let g = six_cycle();
        let ng = normal_projection(&g, &[0, 1, 2], true).unwrap();
        assert_eq!(ng.edges, vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(ng.half_edges, Some(vec![0, 0, 0]));
        let single = normal_projection(&g, &[0], true).unwrap();
        assert_eq!(single.node_count(), 1);
        assert!(single.edges.is_empty());
        assert_eq!(single.half_edges, Some(vec![2]));
        assert_eq!(single.to_edge_list(), "a 1\nh 0 2\n");
    }

    #[test]
    fn fig2_structures_share_a_normal_graph() {
        // degrees 3/4 spread over the diamond give the (4,2), (4,3), (4,4)
        // and (4,6) classes
        let cases = [
            ([0, 0, 1, 1], 2),
            ([1, 0, 1, 1], 3),
            ([1, 1, 1, 1], 4),
            ([1, 1, 2, 2], 6),
        ];
        let mut projections = Vec::new();
        for (half, b) in cases {
            let g = from_quasi_normal(4, &DIAMOND, &half);
            let c = classify(&g, &[0, 1, 2, 3]).unwrap();
            assert_eq!(c.class, TrapClass::new(4, b));
            assert!(c.flags.is_lets);
            let q = normal_projection(&g, &[0, 1, 2, 3], true).unwrap();
            let degrees = q.degrees();
            let half_edges = q.half_edges.as_ref().unwrap();
            for (i, &h) in half_edges.iter().enumerate() {
                assert_eq!(degrees[i] + h, g.var_degree(i));
            }
            let total: usize = (0..4).map(|v| g.var_degree(v)).sum();
            assert_eq!(2 * q.edges.len() + half_edges.iter().sum::<usize>(), total);
            projections.push(normal_projection(&g, &[0, 1, 2, 3], false).unwrap().edges);
        }
        assert!(projections.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(projections[0].len(), 5);
    }

    #[test]
    fn regular_unsatisfied_count_values() {
        assert_eq!(regular_unsatisfied_count(4, 3, 5).unwrap(), 2);
        assert_eq!(regular_unsatisfied_count(3, 2, 3).unwrap(), 0);
        assert_eq!(regular_unsatisfied_count(5, 4, 10).unwrap(), 0);
        assert!(regular_unsatisfied_count(2, 2, 3).is_err());
    }

    #[test]
    fn regular_class_map_values() {
        assert_eq!(regular_class_map(4, 3, &[2, 3, 4, 4], 3).unwrap(), TrapClass::new(4, 2));
        assert_eq!(regular_class_map(4, 2, &[3; 4], 3).unwrap(), TrapClass::new(4, 2));
        assert_eq!(
            regular_class_map(5, 2, &[3, 3, 3, 3, 4], 4).unwrap(),
            TrapClass::new(5, 6)
        );
        assert!(regular_class_map(3, 0, &[5, 5, 5], 3).is_err());
    }

    #[test]
    fn regular_equivalent_params_values() {
        let p = DegreeProfile::from_var_degrees(&[3, 4, 7]).unwrap();
        assert_eq!(regular_equivalent_params(&p, 7, 3).unwrap(), (4, 10));
        let p = DegreeProfile::from_var_degrees(&[3]).unwrap();
        assert_eq!(regular_equivalent_params(&p, 5, 2).unwrap(), (3, 2));
        let p = DegreeProfile::from_var_degrees(&[2, 3, 5, 10]).unwrap();
        assert_eq!(regular_equivalent_params(&p, 7, 2).unwrap(), (5, 23));
        let p = DegreeProfile::from_var_degrees(&[8]).unwrap();
        assert!(matches!(
            regular_equivalent_params(&p, 7, 2),
            Err(Error::NoDegreeBelow(7))
        ));
    }

    #[test]
    fn class_predictions() {
        let dot = |k, m| ExpansionStep::Dot {
            root_degree: k,
            connections: m,
        };
        assert_eq!(
            predict_class(TrapClass::new(4, 3), &dot(3, 2)).unwrap(),
            TrapClass::new(5, 2)
        );
        assert_eq!(
            predict_class(TrapClass::new(6, 1), &dot(2, 1)).unwrap(),
            TrapClass::new(7, 1)
        );
        let path = ExpansionStep::Path { degrees: vec![3, 3] };
        assert_eq!(
            predict_class(TrapClass::new(3, 3), &path).unwrap(),
            TrapClass::new(5, 3)
        );
        let lolli = ExpansionStep::Lollipop {
            cycle_len: 3,
            degrees: vec![3, 2, 2],
        };
        assert_eq!(
            predict_class(TrapClass::new(3, 1), &lolli).unwrap(),
            TrapClass::new(6, 0)
        );
        assert!(predict_class(TrapClass::new(3, 0), &dot(2, 2)).is_err());
        assert!(predict_class(TrapClass::new(3, 1), &path).is_ok());
        assert!(predict_class(TrapClass::new(3, 1), &ExpansionStep::Path { degrees: vec![2, 2] }).is_err());
    }
}
