//! Chordless half-paths grown from a check node, the building block shared by
//! cycle enumeration and the path and lollipop expansions.

use crate::tanner::TannerGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum End {
    Var(usize),
    Check(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct HalfPath {
    pub start: usize,
    /// Variable nodes in walk order.
    pub vars: Vec<usize>,
    /// Check nodes after `start`, in walk order.
    pub checks: Vec<usize>,
}

impl HalfPath {
    pub fn end(&self, edges: usize) -> End {
        if edges % 2 == 1 {
            End::Var(*self.vars.last().expect("odd walks end on a variable"))
        } else {
            End::Check(self.checks.last().copied().unwrap_or(self.start))
        }
    }
}

/// Constraints on every variable a half-path visits.
pub(crate) struct PathRules<'a> {
    pub g: &'a TannerGraph,
    /// Checks no path variable may touch, other than at its entry check.
    pub blocked: &'a [bool],
    pub allowed: &'a (dyn Fn(usize) -> bool + Sync),
    pub excess_cap: usize,
}

struct Walk {
    vars: Vec<usize>,
    checks: Vec<usize>,
    touched: Vec<usize>,
    /// `Σ (deg − 2)` over `vars`.
    excess: usize,
}

/// All walks of `edges` Tanner-graph edges leaving `start` whose variables
/// are allowed, whose checks avoid `blocked`, and which carry no chord: each
/// variable touches earlier path checks only through its entry check.
pub(crate) fn half_paths(rules: &PathRules<'_>, start: usize, edges: usize) -> Vec<HalfPath> {
    let mut out = Vec::new();
    let mut walk = Walk {
        vars: Vec::new(),
        checks: Vec::new(),
        touched: Vec::new(),
        excess: 0,
    };
    if edges == 0 {
        out.push(HalfPath {
            start,
            vars: Vec::new(),
            checks: Vec::new(),
        });
    } else {
        extend(rules, start, start, edges, &mut walk, &mut out);
    }
    out
}

fn extend(rules: &PathRules<'_>, start: usize, at: usize, remaining: usize, walk: &mut Walk, out: &mut Vec<HalfPath>) {
    let g = rules.g;
    for &u in g.chk_neighbors(at) {
        if !(rules.allowed)(u) || walk.vars.contains(&u) {
            continue;
        }
        let excess = walk.excess + g.var_degree(u) - 2;
        if excess > rules.excess_cap {
            continue;
        }
        let clean = g
            .var_neighbors(u)
            .iter()
            .all(|&x| x == at || (!rules.blocked[x] && !walk.touched.contains(&x)));
        if !clean {
            continue;
        }
        let touched_len = walk.touched.len();
        walk.vars.push(u);
        walk.touched.extend_from_slice(g.var_neighbors(u));
        let saved_excess = walk.excess;
        walk.excess = excess;
        if remaining == 1 {
            out.push(snapshot(start, walk));
        } else {
            for &x in g.var_neighbors(u) {
                if x == at {
                    continue;
                }
                walk.checks.push(x);
                if remaining == 2 {
                    out.push(snapshot(start, walk));
                } else {
                    extend(rules, start, x, remaining - 2, walk, out);
                }
                walk.checks.pop();
            }
        }
        walk.excess = saved_excess;
        walk.vars.pop();
        walk.touched.truncate(touched_len);
    }
}

fn snapshot(start: usize, walk: &Walk) -> HalfPath {
    HalfPath {
        start,
        vars: walk.vars.clone(),
        checks: walk.checks.clone(),
    }
}
