//! Bipartite Tanner graph of a parity-check matrix.
//!
//! Variable nodes are the columns of `H`, check nodes the rows. Indices are
//! 0-based everywhere in the crate; the alist reader and writer are the only
//! places that see 1-based indices.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{AlistError, AlistErrorKind, Error, Result};

/// Immutable bipartite adjacency between `n` variable nodes and `m` check nodes.
///
/// Both adjacency lists are sorted and duplicate free, which keeps the
/// "how many neighbors of `v` fall into this check set" queries in the search
/// to simple merges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    n: usize,
    m: usize,
    var_adj: Vec<Vec<usize>>,
    chk_adj: Vec<Vec<usize>>,
    isolated_vars: usize,
}

/// Length of the shortest cycle, in Tanner-graph edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

/// Degree distribution of a Tanner graph, node and edge perspective.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeProfile {
    pub var_degrees: Vec<usize>,
    pub chk_degrees: Vec<usize>,
    /// Edge-perspective fractions `λ_i`, keyed by degree `i`.
    pub lambda_coeffs: BTreeMap<usize, f64>,
    /// Edge-perspective fractions `ρ_i`, keyed by degree `i`.
    pub rho_coeffs: BTreeMap<usize, f64>,
    pub d_v_min: usize,
    pub d_v_max: usize,
}

impl DegreeProfile {
    /// Builds a profile from a bare set of variable degrees, for analysis
    /// helpers that never touch a concrete graph. Edge fractions are left
    /// empty.
    pub fn from_var_degrees(degrees: &[usize]) -> Result<Self> {
        let mut var_degrees = degrees.to_vec();
        var_degrees.sort_unstable();
        var_degrees.dedup();
        let (Some(&d_v_min), Some(&d_v_max)) = (var_degrees.first(), var_degrees.last()) else {
            return Err(Error::InvalidDegrees("empty degree set".into()));
        };
        Ok(DegreeProfile {
            var_degrees,
            chk_degrees: Vec::new(),
            lambda_coeffs: BTreeMap::new(),
            rho_coeffs: BTreeMap::new(),
            d_v_min,
            d_v_max,
        })
    }
}

/// Two variable nodes sharing two check nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourCycle {
    pub vars: [usize; 2],
    pub checks: [usize; 2],
}

impl fmt::Display for FourCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "v{} - c{} - v{} - c{}",
            self.vars[0], self.checks[0], self.vars[1], self.checks[1]
        )
    }
}

impl TannerGraph {
    /// Builds a graph from per-variable check lists.
    pub fn from_var_adjacency(m: usize, var_adj: Vec<Vec<usize>>) -> Result<Self> {
        let n = var_adj.len();
        let mut var_adj = var_adj;
        let mut chk_adj = vec![Vec::new(); m];
        for (v, checks) in var_adj.iter_mut().enumerate() {
            checks.sort_unstable();
            for w in checks.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::InvalidGraph(format!("duplicate edge v{v} - c{}", w[0])));
                }
            }
            for &c in checks.iter() {
                if c >= m {
                    return Err(Error::InvalidGraph(format!(
                        "check index {c} out of range for v{v} (m = {m})"
                    )));
                }
                chk_adj[c].push(v);
            }
        }
        let isolated_vars = var_adj.iter().filter(|a| a.is_empty()).count();
        Ok(TannerGraph {
            n,
            m,
            var_adj,
            chk_adj,
            isolated_vars,
        })
    }

    /// Builds a graph from a list of `(variable, check)` edges.
    pub fn from_edges(n: usize, m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut var_adj = vec![Vec::new(); n];
        for &(v, c) in edges {
            if v >= n {
                return Err(Error::InvalidGraph(format!(
                    "variable index {v} out of range (n = {n})"
                )));
            }
            var_adj[v].push(c);
        }
        Self::from_var_adjacency(m, var_adj)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edge_count(&self) -> usize {
        self.var_adj.iter().map(Vec::len).sum()
    }

    #[inline]
    pub fn var_neighbors(&self, v: usize) -> &[usize] {
        &self.var_adj[v]
    }

    #[inline]
    pub fn chk_neighbors(&self, c: usize) -> &[usize] {
        &self.chk_adj[c]
    }

    #[inline]
    pub fn var_degree(&self, v: usize) -> usize {
        self.var_adj[v].len()
    }

    #[inline]
    pub fn chk_degree(&self, c: usize) -> usize {
        self.chk_adj[c].len()
    }

    /// Number of variable nodes with no check neighbor at all.
    pub fn isolated_var_count(&self) -> usize {
        self.isolated_vars
    }

    /// Variable nodes with degree below 2. These cannot take part in the
    /// search and are excluded from it.
    pub fn low_degree_vars(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.var_degree(v) < 2).collect()
    }

    /// Returns the first pair of variable nodes found sharing two checks.
    pub fn find_four_cycle(&self) -> Option<FourCycle> {
        let mut seen_via: Vec<Option<usize>> = vec![None; self.n];
        for v in 0..self.n {
            for slot in seen_via.iter_mut() {
                *slot = None;
            }
            for &c in &self.var_adj[v] {
                for &u in &self.chk_adj[c] {
                    if u == v {
                        continue;
                    }
                    if let Some(c0) = seen_via[u] {
                        return Some(FourCycle {
                            vars: [v, u],
                            checks: [c0, c],
                        });
                    }
                    seen_via[u] = Some(c);
                }
            }
        }
        None
    }

    /// Length of the shortest cycle, by a BFS from every variable node.
    pub fn girth(&self) -> Girth {
        let total = self.n + self.m;
        let mut dist = vec![usize::MAX; total];
        let mut parent = vec![usize::MAX; total];
        let mut queue = VecDeque::new();
        let mut best = usize::MAX;
        for root in 0..self.n {
            let mut touched = Vec::new();
            dist[root] = 0;
            touched.push(root);
            queue.clear();
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                if 2 * dist[x] + 1 >= best {
                    break;
                }
                let neighbors: Box<dyn Iterator<Item = usize>> = if x < self.n {
                    Box::new(self.var_adj[x].iter().map(|&c| self.n + c))
                } else {
                    Box::new(self.chk_adj[x - self.n].iter().copied())
                };
                for y in neighbors {
                    if y == parent[x] {
                        continue;
                    }
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        touched.push(y);
                        queue.push_back(y);
                    } else {
                        best = best.min(dist[x] + dist[y] + 1);
                    }
                }
            }
            for x in touched {
                dist[x] = usize::MAX;
                parent[x] = usize::MAX;
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    pub fn degree_profile(&self) -> Result<DegreeProfile> {
        let edges = self.edge_count();
        if edges == 0 {
            return Err(Error::EmptyGraph);
        }
        let fractions = |degrees: &mut dyn Iterator<Item = usize>| {
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for d in degrees {
                *counts.entry(d).or_default() += 1;
            }
            let coeffs: BTreeMap<usize, f64> = counts
                .iter()
                .filter(|(&d, _)| d > 0)
                .map(|(&d, &cnt)| (d, (d * cnt) as f64 / edges as f64))
                .collect();
            (counts.keys().copied().collect::<Vec<_>>(), coeffs)
        };
        let (var_degrees, lambda_coeffs) = fractions(&mut (0..self.n).map(|v| self.var_degree(v)));
        let (chk_degrees, rho_coeffs) = fractions(&mut (0..self.m).map(|c| self.chk_degree(c)));
        Ok(DegreeProfile {
            d_v_min: var_degrees[0],
            d_v_max: *var_degrees.last().unwrap(),
            var_degrees,
            chk_degrees,
            lambda_coeffs,
            rho_coeffs,
        })
    }

    /// Design rate `1 - m/n`, assuming `H` has full rank.
    pub fn design_rate(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            1.0 - self.m as f64 / self.n as f64
        }
    }
}

/// Reads a graph from alist text.
///
/// Line 1 holds `n m`, line 2 the maximum degrees, lines 3 and 4 the variable
/// and check degrees, followed by `n` variable lists and `m` check lists of
/// 1-based indices. Zero entries are padding and are dropped.
pub fn parse_alist(text: &str) -> Result<TannerGraph> {
    let lines: Vec<&str> = text.lines().collect();
    let err = |line: usize, kind: AlistErrorKind| Error::Alist(AlistError { line, kind });

    let numbers = |idx: usize| -> Result<Vec<usize>> {
        let Some(line) = lines.get(idx) else {
            return Err(err(idx + 1, AlistErrorKind::UnexpectedEof));
        };
        line.split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| err(idx + 1, AlistErrorKind::BadNumber(tok.to_string())))
            })
            .collect()
    };

    let header = numbers(0)?;
    let [n, m] = header[..] else {
        return Err(err(1, AlistErrorKind::MalformedHeader("expected \"n m\"".into())));
    };
    let maxima = numbers(1)?;
    if maxima.len() != 2 {
        return Err(err(
            2,
            AlistErrorKind::MalformedHeader("expected two maximum degrees".into()),
        ));
    }
    let var_deg = numbers(2)?;
    if var_deg.len() != n {
        return Err(err(
            3,
            AlistErrorKind::MalformedHeader(format!("expected {n} variable degrees, found {}", var_deg.len())),
        ));
    }
    let chk_deg = numbers(3)?;
    if chk_deg.len() != m {
        return Err(err(
            4,
            AlistErrorKind::MalformedHeader(format!("expected {m} check degrees, found {}", chk_deg.len())),
        ));
    }

    let read_list = |idx: usize, degree: usize, bound: usize| -> Result<Vec<usize>> {
        let raw = numbers(idx)?;
        let mut list: Vec<usize> = Vec::with_capacity(degree);
        for x in raw.into_iter().filter(|&x| x != 0) {
            if x > bound {
                return Err(err(idx + 1, AlistErrorKind::OutOfRange { index: x, bound }));
            }
            list.push(x - 1);
        }
        if list.len() != degree {
            return Err(err(
                idx + 1,
                AlistErrorKind::DegreeMismatch {
                    declared: degree,
                    found: list.len(),
                },
            ));
        }
        let mut sorted = list.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(err(idx + 1, AlistErrorKind::DuplicateEdge(w[0] + 1)));
        }
        Ok(sorted)
    };

    let var_adj = (0..n)
        .map(|v| read_list(4 + v, var_deg[v], m))
        .collect::<Result<Vec<_>>>()?;
    let chk_adj = (0..m)
        .map(|c| read_list(4 + n + c, chk_deg[c], n))
        .collect::<Result<Vec<_>>>()?;
    if let Some(extra) = lines[(4 + n + m).min(lines.len())..]
        .iter()
        .position(|l| !l.trim().is_empty())
    {
        return Err(err(4 + n + m + extra + 1, AlistErrorKind::TrailingData));
    }

    let graph = TannerGraph::from_var_adjacency(m, var_adj).map_err(|e| match e {
        Error::InvalidGraph(msg) => err(5, AlistErrorKind::Inconsistent(msg)),
        other => other,
    })?;
    for (c, list) in chk_adj.iter().enumerate() {
        if graph.chk_adj[c] != *list {
            return Err(err(
                4 + n + c + 1,
                AlistErrorKind::Inconsistent(format!("check list of c{} disagrees with the variable lists", c + 1)),
            ));
        }
    }
    Ok(graph)
}

/// Writes the canonical alist form: sorted neighbor lists, no zero padding.
pub fn emit_alist(g: &TannerGraph) -> String {
    let join = |xs: &mut dyn Iterator<Item = usize>| xs.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let max_v = (0..g.n).map(|v| g.var_degree(v)).max().unwrap_or(0);
    let max_c = (0..g.m).map(|c| g.chk_degree(c)).max().unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n, g.m);
    let _ = writeln!(out, "{max_v} {max_c}");
    let _ = writeln!(out, "{}", join(&mut (0..g.n).map(|v| g.var_degree(v))));
    let _ = writeln!(out, "{}", join(&mut (0..g.m).map(|c| g.chk_degree(c))));
    for v in 0..g.n {
        let _ = writeln!(out, "{}", join(&mut g.var_adj[v].iter().map(|&c| c + 1)));
    }
    for c in 0..g.m {
        let _ = writeln!(out, "{}", join(&mut g.chk_adj[c].iter().map(|&v| v + 1)));
    }
    out
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::TannerGraph;

    /// Three degree-2 variables on a single 6-cycle.
    pub fn six_cycle() -> TannerGraph {
        TannerGraph::from_edges(3, 3, &[(0, 0), (0, 2), (1, 0), (1, 1), (2, 1), (2, 2)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::six_cycle;
    use super::*;

    const SIX_CYCLE_ALIST: &str = "3 3\n2 2\n2 2 2\n2 2 2\n1 3\n1 2\n2 3\n1 2\n2 3\n1 3\n";

    #[test]
    fn six_cycle_roundtrip() {
        let g = parse_alist(SIX_CYCLE_ALIST).unwrap();
        assert_eq!((g.n(), g.m(), g.edge_count()), (3, 3, 6));
        assert_eq!(g, six_cycle());
        let text = emit_alist(&g);
        assert_eq!(text, SIX_CYCLE_ALIST);
        // four header lines, then one line per variable and per check
        assert_eq!(text.lines().count(), 10);
        assert!(text.starts_with("3 3\n"));
    }

    #[test]
    fn zero_padding_and_trailing_blank_lines() {
        let padded = "3 3\n2 2\n2 2 2\n2 2 2\n1 3\n0 1 2\n2 3\n1 2\n2 3\n1 3 0\n\n\n";
        assert_eq!(parse_alist(padded).unwrap(), six_cycle());
    }

    #[test]
    fn empty_graph() {
        let g = TannerGraph::from_var_adjacency(0, vec![]).unwrap();
        let text = emit_alist(&g);
        assert!(text.starts_with("0 0\n"));
        assert_eq!(parse_alist(&text).unwrap(), g);
        assert!(matches!(g.degree_profile(), Err(Error::EmptyGraph)));
        assert_eq!(g.girth(), Girth::Infinite);
    }

    #[test]
    fn out_of_range_index() {
        let bad = "3 3\n2 2\n2 2 2\n2 2 2\n1 4\n1 2\n2 3\n1 2\n2 3\n1 3\n";
        let Err(Error::Alist(e)) = parse_alist(bad) else {
            panic!("expected an alist error");
        };
        assert_eq!(e.line, 5);
        assert!(matches!(e.kind, AlistErrorKind::OutOfRange { index: 4, bound: 3 }));
        assert!(e.to_string().contains("out-of-range index"));
    }

    #[test]
    fn degree_mismatch_and_duplicates() {
        let short = "3 3\n2 2\n2 2 2\n2 2 2\n1\n1 2\n2 3\n1 2\n2 3\n1 3\n";
        assert!(matches!(
            parse_alist(short),
            Err(Error::Alist(AlistError {
                line: 5,
                kind: AlistErrorKind::DegreeMismatch { .. }
            }))
        ));
        let dup = "3 3\n2 2\n2 2 2\n2 2 2\n1 1\n1 2\n2 3\n1 2\n2 3\n1 3\n";
        assert!(matches!(
            parse_alist(dup),
            Err(Error::Alist(AlistError {
                line: 5,
                kind: AlistErrorKind::DuplicateEdge(1)
            }))
        ));
        let header = "3\n";
        assert!(matches!(
            parse_alist(header),
            Err(Error::Alist(AlistError { line: 1, .. }))
        ));
        let inconsistent = "3 3\n2 2\n2 2 2\n2 2 2\n1 3\n1 2\n2 3\n1 2\n2 3\n2 3\n";
        assert!(matches!(
            parse_alist(inconsistent),
            Err(Error::Alist(AlistError {
                line: 10,
                kind: AlistErrorKind::Inconsistent(_)
            }))
        ));
    }

    #[test]
    fn girth_examples() {
        assert_eq!(six_cycle().girth(), Girth::Finite(6));
        let four = TannerGraph::from_edges(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(four.girth(), Girth::Finite(4));
        assert_eq!(
            four.find_four_cycle(),
            Some(FourCycle {
                vars: [0, 1],
                checks: [0, 1]
            })
        );
        let star = TannerGraph::from_edges(4, 1, &[(0, 0), (1, 0), (2, 0), (3, 0)]).unwrap();
        assert_eq!(star.girth(), Girth::Infinite);
        assert_eq!(six_cycle().find_four_cycle(), None);
    }

    #[test]
    fn degree_profiles() {
        let p = six_cycle().degree_profile().unwrap();
        assert_eq!(p.var_degrees, vec![2]);
        assert_eq!(p.lambda_coeffs[&2], 1.0);
        // two degree-2 variables and one degree-4 variable, 8 edges
        let g =
            TannerGraph::from_edges(3, 4, &[(0, 0), (0, 1), (1, 2), (1, 3), (2, 0), (2, 1), (2, 2), (2, 3)]).unwrap();
        let p = g.degree_profile().unwrap();
        assert_eq!(p.var_degrees, vec![2, 4]);
        assert_eq!((p.d_v_min, p.d_v_max), (2, 4));
        assert_eq!(p.lambda_coeffs[&2], 0.5);
        assert_eq!(p.lambda_coeffs[&4], 0.5);
    }
}
