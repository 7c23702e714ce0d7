//! Cycle enumeration and the dot, path, lollipop and leaf expansions.
//!
//! Every expansion here is structure-exact: the new variable nodes touch
//! `Γ(S)` only at their attachment checks and carry no chords among
//! themselves, so the class of each output equals the one predicted from the
//! input class and the new node degrees. A grown set is accepted iff it is an
//! ETS and gains exactly the expected number of satisfied checks.

use std::collections::{BTreeMap, HashMap};

use super::paths::{half_paths, End, HalfPath, PathRules};
use crate::tanner::TannerGraph;
use crate::tsets::{gamma, ExpansionStep, TrapSetInstance};

/// An expansion output together with the concrete step that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grown {
    pub instance: TrapSetInstance,
    pub step: ExpansionStep,
}

/// Simple cycles of one length, indexed by their unsatisfied checks.
#[derive(Debug, Clone, Default)]
pub struct CyclePool {
    cycles: Vec<PooledCycle>,
    by_odd_check: HashMap<usize, Vec<usize>>,
}

#[derive(Debug, Clone)]
struct PooledCycle {
    instance: TrapSetInstance,
    /// `Γ(C)`, sorted.
    checks: Vec<usize>,
}

impl CyclePool {
    pub fn new(g: &TannerGraph, cycles: &[TrapSetInstance]) -> Self {
        let mut pool = CyclePool::default();
        for (i, c) in cycles.iter().enumerate() {
            let summary = gamma(g, c.vars()).expect("pooled cycles are valid sets");
            for &x in &summary.gamma_o {
                pool.by_odd_check.entry(x).or_default().push(i);
            }
            pool.cycles.push(PooledCycle {
                instance: c.clone(),
                checks: summary.chk_deg.iter().map(|&(x, _)| x).collect(),
            });
        }
        pool
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    fn through(&self, check: usize) -> impl Iterator<Item = &PooledCycle> {
        self.by_odd_check
            .get(&check)
            .into_iter()
            .flatten()
            .map(move |&i| &self.cycles[i])
    }
}

/// Per-instance data shared by all expansions of one set.
struct Base<'s> {
    s: &'s TrapSetInstance,
    gamma_o: Vec<usize>,
    /// 0 outside `Γ(S)`, 1 on `Γ_o(S)`, 2 on `Γ_e(S)`.
    mark: Vec<u8>,
    blocked: Vec<bool>,
    e: usize,
}

impl Base<'_> {
    fn contains(&self, v: usize) -> bool {
        self.s.vars().binary_search(&v).is_ok()
    }
}

/// Runs the search primitives over one graph. Variables of degree below 2 or
/// at least `degree_cap` never enter a grown set.
#[derive(Debug, Clone, Copy)]
pub struct Expander<'g> {
    g: &'g TannerGraph,
    degree_cap: usize,
}

impl<'g> Expander<'g> {
    pub fn new(g: &'g TannerGraph, degree_cap: usize) -> Self {
        Expander { g, degree_cap }
    }

    /// No upper degree limit.
    pub fn unrestricted(g: &'g TannerGraph) -> Self {
        Self::new(g, usize::MAX)
    }

    pub fn graph(&self) -> &'g TannerGraph {
        self.g
    }

    fn usable(&self, v: usize) -> bool {
        let d = self.g.var_degree(v);
        d >= 2 && d < self.degree_cap
    }

    fn base<'s>(&self, s: &'s TrapSetInstance) -> Base<'s> {
        let summary = gamma(self.g, s.vars()).expect("instances hold valid sets");
        let mut mark = vec![0u8; self.g.m()];
        let mut blocked = vec![false; self.g.m()];
        for &(c, d) in &summary.chk_deg {
            mark[c] = if d % 2 == 1 { 1 } else { 2 };
            blocked[c] = true;
        }
        Base {
            s,
            e: summary.gamma_e.len(),
            gamma_o: summary.gamma_o,
            mark,
            blocked,
        }
    }

    /// Accepts `S ∪ added` iff it is an ETS gaining exactly `new_sat`
    /// satisfied checks with at most `bcap` unsatisfied ones.
    fn settle(&self, base: &Base<'_>, added: &[usize], new_sat: usize, bcap: usize) -> Option<TrapSetInstance> {
        let mut vars = base.s.vars().to_vec();
        vars.extend_from_slice(added);
        vars.sort_unstable();
        if vars.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let summary = gamma(self.g, &vars).ok()?;
        let b = summary.gamma_o.len();
        (summary.max_chk_deg <= 2 && summary.gamma_e.len() == base.e + new_sat && b <= bcap)
            .then(|| TrapSetInstance::from_sorted(vars, b))
    }

    /// Simple cycles of `k` variable nodes whose smallest variable is `root`,
    /// with at most `bcap` unsatisfied checks.
    pub fn cycles_rooted(&self, root: usize, k: usize, bcap: usize) -> Vec<TrapSetInstance> {
        let g = self.g;
        if k < 2 || !self.usable(root) || g.var_degree(root) - 2 > bcap {
            return Vec::new();
        }
        let mut blocked = vec![false; g.m()];
        for &c in g.var_neighbors(root) {
            blocked[c] = true;
        }
        let allowed = |u: usize| u > root && self.usable(u);
        let rules = PathRules {
            g,
            blocked: &blocked,
            allowed: &allowed,
            excess_cap: bcap - (g.var_degree(root) - 2),
        };
        let edges = k - 1;
        let mut by_end: BTreeMap<End, Vec<HalfPath>> = BTreeMap::new();
        for &c in g.var_neighbors(root) {
            for h in half_paths(&rules, c, edges) {
                by_end.entry(h.end(edges)).or_default().push(h);
            }
        }
        let mut found = Vec::new();
        for (end, halves) in &by_end {
            for (i, h1) in halves.iter().enumerate() {
                for h2 in &halves[i + 1..] {
                    if h1.start == h2.start {
                        continue;
                    }
                    let mut vars = vec![root];
                    vars.extend_from_slice(&h1.vars);
                    vars.extend(h2.vars.iter().filter(|&&u| *end != End::Var(u)));
                    if vars.len() != k {
                        continue;
                    }
                    vars.sort_unstable();
                    if vars.windows(2).any(|w| w[0] == w[1]) {
                        continue;
                    }
                    let Ok(summary) = gamma(g, &vars) else { continue };
                    let b = summary.gamma_o.len();
                    // k vars, k satisfied checks of degree 2, each var on two
                    // walk checks: the normal graph is one chordless k-cycle
                    if summary.max_chk_deg <= 2 && summary.gamma_e.len() == k && b <= bcap {
                        found.push(TrapSetInstance::from_sorted(vars, b));
                    }
                }
            }
        }
        found.sort();
        found.dedup();
        found
    }

    /// All simple cycles of `k` variable nodes with at most `bcap`
    /// unsatisfied checks, sorted by key.
    pub fn cycles(&self, k: usize, bcap: usize) -> Vec<TrapSetInstance> {
        let mut all: Vec<TrapSetInstance> = (0..self.g.n()).flat_map(|v| self.cycles_rooted(v, k, bcap)).collect();
        all.sort();
        all
    }

    /// Attachment candidates: `(v, connections into Γ_o(S))` for every usable
    /// `v ∉ S` with no connection into `Γ_e(S)`.
    fn attachments(&self, base: &Base<'_>, usable: impl Fn(usize) -> bool) -> Vec<(usize, usize)> {
        let mut hits: Vec<usize> = base
            .gamma_o
            .iter()
            .flat_map(|&c| self.g.chk_neighbors(c).iter().copied())
            .filter(|&v| !base.contains(v) && usable(v))
            .collect();
        hits.sort_unstable();
        let mut out: Vec<(usize, usize)> = Vec::new();
        for v in hits {
            match out.last_mut() {
                Some((last, k)) if *last == v => *k += 1,
                _ => out.push((v, 1)),
            }
        }
        out.retain(|&(v, _)| self.g.var_neighbors(v).iter().all(|&c| base.mark[c] != 2));
        out
    }

    /// Dot expansions: one new node with at least two connections into
    /// `Γ_o(S)` and none into `Γ_e(S)`.
    pub fn dot(&self, s: &TrapSetInstance, bcap: usize) -> Vec<Grown> {
        let base = self.base(s);
        let b = s.class().b;
        let mut out = Vec::new();
        for (v, m) in self.attachments(&base, |v| self.usable(v)) {
            let k = self.g.var_degree(v);
            if m < 2 || b + k - 2 * m > bcap {
                continue;
            }
            let mut vars = s.vars().to_vec();
            let at = vars.binary_search(&v).unwrap_err();
            vars.insert(at, v);
            out.push(Grown {
                instance: TrapSetInstance::from_sorted(vars, b + k - 2 * m),
                step: ExpansionStep::Dot {
                    root_degree: k,
                    connections: m,
                },
            });
        }
        out
    }

    /// Leaf attachments: one new node of degree at most `b_max + 2 − b` with
    /// exactly one connection into `Γ_o(S)` and none into `Γ_e(S)`.
    pub fn leaves(&self, s: &TrapSetInstance, b_max: usize) -> Vec<Grown> {
        let b = s.class().b;
        if b == 0 || b > b_max {
            return Vec::new();
        }
        let base = self.base(s);
        let limit = b_max + 2 - b;
        let mut out = Vec::new();
        for (v, m) in self.attachments(&base, |v| (2..=limit).contains(&self.g.var_degree(v))) {
            if m != 1 {
                continue;
            }
            let k = self.g.var_degree(v);
            let mut vars = s.vars().to_vec();
            let at = vars.binary_search(&v).unwrap_err();
            vars.insert(at, v);
            out.push(Grown {
                instance: TrapSetInstance::from_sorted(vars, b + k - 2),
                step: ExpansionStep::Dot {
                    root_degree: k,
                    connections: 1,
                },
            });
        }
        out
    }

    /// Path expansions adding `m ≥ 2` nodes between two distinct checks of
    /// `Γ_o(S)`; closed paths arise when both checks hang off one node.
    pub fn path(&self, s: &TrapSetInstance, m: usize, bcap: usize) -> Vec<Grown> {
        let b = s.class().b;
        if m < 2 || b < 2 || b - 2 > bcap {
            return Vec::new();
        }
        let base = self.base(s);
        let allowed = |u: usize| !base.contains(u) && self.usable(u);
        let rules = PathRules {
            g: self.g,
            blocked: &base.blocked,
            allowed: &allowed,
            excess_cap: bcap + 2 - b,
        };
        let mut by_end: BTreeMap<End, Vec<HalfPath>> = BTreeMap::new();
        for &c in &base.gamma_o {
            for h in half_paths(&rules, c, m) {
                by_end.entry(h.end(m)).or_default().push(h);
            }
        }
        let mut out = Vec::new();
        for (end, halves) in &by_end {
            for (i, h1) in halves.iter().enumerate() {
                for h2 in &halves[i + 1..] {
                    if h1.start == h2.start {
                        continue;
                    }
                    let shared = |&u: &usize| *end != End::Var(u);
                    let mut order = h1.vars.clone();
                    order.extend(h2.vars.iter().rev().filter(|u| shared(u)));
                    if order.len() != m {
                        continue;
                    }
                    if let Some(instance) = self.settle(&base, &order, m + 1, bcap) {
                        let degrees = order.iter().map(|&u| self.g.var_degree(u)).collect();
                        out.push(Grown {
                            instance,
                            step: ExpansionStep::Path { degrees },
                        });
                    }
                }
            }
        }
        out
    }

    /// Lollipop expansions: a `c`-cycle from `pool` tied to `Γ_o(S)` by a
    /// tail of `m − c` nodes, `m` new nodes in total.
    pub fn lollipop(&self, s: &TrapSetInstance, pool: &CyclePool, m: usize, c: usize, bcap: usize) -> Vec<Grown> {
        let b = s.class().b;
        if c > m || b == 0 || b - 1 > bcap || pool.is_empty() {
            return Vec::new();
        }
        let d = m + 1 - c;
        let base = self.base(s);
        let allowed = |u: usize| !base.contains(u) && self.usable(u);
        let rules = PathRules {
            g: self.g,
            blocked: &base.blocked,
            allowed: &allowed,
            excess_cap: bcap + 1 - b,
        };
        let edges = 2 * (d - 1);
        let mut out = Vec::new();
        for &start in &base.gamma_o {
            for tail in half_paths(&rules, start, edges) {
                let End::Check(joint) = tail.end(edges) else {
                    unreachable!("even walks end on a check")
                };
                for cycle in pool.through(joint) {
                    let cvars = cycle.instance.vars();
                    if cvars.iter().any(|&u| base.contains(u) || tail.vars.contains(&u)) {
                        continue;
                    }
                    // away from the joint, the cycle must stay clear of G(S)
                    if cycle.checks.iter().any(|&x| x != joint && base.blocked[x]) {
                        continue;
                    }
                    let mut added = tail.vars.clone();
                    added.extend_from_slice(cvars);
                    if let Some(instance) = self.settle(&base, &added, c + d, bcap) {
                        let degrees = added.iter().map(|&u| self.g.var_degree(u)).collect();
                        out.push(Grown {
                            instance,
                            step: ExpansionStep::Lollipop { cycle_len: c, degrees },
                        });
                    }
                }
            }
        }
        out
    }
}
