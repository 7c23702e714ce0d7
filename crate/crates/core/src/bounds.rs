//! Per-size caps on the number of unsatisfied checks an intermediate LETS may
//! carry, and the table of expansions each `(a, b)` class needs.
//!
//! The caps come from a backward recursion starting at `b_max^{a_max} = b_max`.
//! In [`BoundMode::Exact`] each step adds the largest possible decrease in `b`
//! a dot expansion can cause; [`BoundMode::Heuristic`] subtracts a further 2,
//! which is cheaper and has been exhaustive on every code tried so far but is
//! not proven.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tanner::DegreeProfile;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    #[default]
    Exact,
    Heuristic,
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundMode::Exact => "exact",
            BoundMode::Heuristic => "heuristic",
        })
    }
}

/// `b_max^a` for every `a` in `[g/2, a_max]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsVector {
    pub a_max: usize,
    pub b_max: usize,
    pub mode: BoundMode,
    pub half_girth: usize,
    pub per_a: BTreeMap<usize, usize>,
}

impl BoundsVector {
    /// Cap for size `a`; `None` outside `[g/2, a_max]`.
    pub fn cap(&self, a: usize) -> Option<usize> {
        self.per_a.get(&a).copied()
    }

    /// Lowers every entry below `a_max` by `by`. Only used to build negative
    /// controls for the oracle cross-check.
    pub fn truncated(&self, by: usize) -> BoundsVector {
        let mut out = self.clone();
        for (&a, cap) in out.per_a.iter_mut() {
            if a < self.a_max {
                *cap = cap.saturating_sub(by);
            }
        }
        out
    }
}

/// Strict upper bound on the degree of any variable node inside an in-range
/// LETS: `deg(v) < a_max + b_max`.
pub fn degree_cap(a_max: usize, b_max: usize) -> usize {
    a_max + b_max
}

/// `(η, y, z)` for size `a`. `z` is `None` when no degree lies strictly
/// between `a` and `a_max + b_max`.
pub fn eta_y_z(profile: &DegreeProfile, a: usize, a_max: usize, b_max: usize) -> Result<(usize, usize, Option<usize>)> {
    let (eta, y, z) = selections(profile, a, a_max, b_max)?;
    Ok((eta, y.ok_or(Error::NoDegreeAtMost(a))?, z))
}

fn selections(
    profile: &DegreeProfile,
    a: usize,
    a_max: usize,
    b_max: usize,
) -> Result<(usize, Option<usize>, Option<usize>)> {
    let cap = degree_cap(a_max, b_max);
    let degrees = &profile.var_degrees;
    let eta = degrees
        .iter()
        .copied()
        .filter(|&d| d < cap)
        .max()
        .ok_or(Error::NoDegreeBelow(cap))?;
    let y = degrees.iter().copied().filter(|&d| d <= a).max();
    let z = degrees.iter().copied().filter(|&d| d > a && d < cap).min();
    Ok((eta, y, z))
}

pub fn compute_bounds(
    profile: &DegreeProfile,
    girth: usize,
    a_max: usize,
    b_max: usize,
    mode: BoundMode,
) -> Result<BoundsVector> {
    let half_girth = girth / 2;
    if a_max < half_girth {
        return Err(Error::RangeBelowGirth { a_max, half_girth });
    }
    let mut per_a = BTreeMap::new();
    per_a.insert(a_max, b_max);
    let mut next = b_max as i64;
    for a in (half_girth..a_max).rev() {
        let (eta, y, z) = selections(profile, a, a_max, b_max)?;
        // absent y or z drop out of the max; both cannot be absent since
        // eta itself is either <= a or in (a, a_max + b_max)
        let largest_drop = [y.map(|y| y as i64), z.map(|z| 2 * a as i64 - z as i64)]
            .into_iter()
            .flatten()
            .max()
            .expect("eta guarantees y or z");
        let slack = match mode {
            BoundMode::Exact => 0,
            BoundMode::Heuristic => 2,
        };
        let ceiling = (a * (eta - 2)) as i64;
        let value = (next + largest_drop - slack).min(ceiling).max(0);
        per_a.insert(a, value as usize);
        next = value;
    }
    Ok(BoundsVector {
        a_max,
        b_max,
        mode,
        half_girth,
        per_a,
    })
}

/// One expansion technique as listed in the expansion table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExpansionDescriptor {
    Dot,
    /// `pa_m`, adding `m` nodes along an open or closed path.
    Path(usize),
    /// `lo_m^c`: a `c`-cycle plus a tail, `m` new nodes in total.
    Lollipop {
        m: usize,
        c: usize,
    },
}

impl ExpansionDescriptor {
    /// Number of variable nodes the expansion adds.
    pub fn added(&self) -> usize {
        match *self {
            ExpansionDescriptor::Dot => 1,
            ExpansionDescriptor::Path(m) | ExpansionDescriptor::Lollipop { m, .. } => m,
        }
    }
}

impl fmt::Display for ExpansionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpansionDescriptor::Dot => f.write_str("dot"),
            ExpansionDescriptor::Path(m) => write!(f, "pa_{m}"),
            ExpansionDescriptor::Lollipop { m, c } => write!(f, "lo_{m}^{c}"),
        }
    }
}

impl Serialize for ExpansionDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Expansions to apply to every LETS of each `(a, b)` class.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExpansionTable {
    pub cells: BTreeMap<(usize, usize), BTreeSet<ExpansionDescriptor>>,
}

#[derive(Serialize)]
struct CellRecord<'a> {
    a: usize,
    b: usize,
    expansions: &'a BTreeSet<ExpansionDescriptor>,
}

impl Serialize for ExpansionTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(
            self.cells
                .iter()
                .map(|(&(a, b), expansions)| CellRecord { a, b, expansions }),
        )
    }
}

impl ExpansionTable {
    pub fn get(&self, a: usize, b: usize) -> Option<&BTreeSet<ExpansionDescriptor>> {
        self.cells.get(&(a, b))
    }

    /// Compact cell text with lollipops grouped over `c`, e.g.
    /// `dot, pa_2, pa_3, lo_3, lo_4`; `-` for a cell with nothing to apply.
    pub fn cell_label(&self, a: usize, b: usize) -> String {
        let Some(set) = self.get(a, b).filter(|s| !s.is_empty()) else {
            return "-".to_string();
        };
        let mut parts: Vec<String> = Vec::new();
        if set.contains(&ExpansionDescriptor::Dot) {
            parts.push("dot".into());
        }
        for d in set {
            if let ExpansionDescriptor::Path(m) = d {
                parts.push(format!("pa_{m}"));
            }
        }
        let lollis: BTreeSet<usize> = set
            .iter()
            .filter_map(|d| match d {
                ExpansionDescriptor::Lollipop { m, .. } => Some(*m),
                _ => None,
            })
            .collect();
        parts.extend(lollis.into_iter().map(|m| format!("lo_{m}")));
        parts.join(", ")
    }

    /// Grid with rows `b = 0..=max cap` and columns `a = g/2..=a_max`. Cells
    /// above a column's cap are blank.
    pub fn grid(&self, bounds: &BoundsVector) -> Vec<Vec<String>> {
        let top = bounds.per_a.values().copied().max().unwrap_or(0);
        (0..=top)
            .map(|b| {
                bounds
                    .per_a
                    .iter()
                    .map(|(&a, &cap)| if b > cap { String::new() } else { self.cell_label(a, b) })
                    .collect()
            })
            .collect()
    }

    /// Text rendering of [`grid`](Self::grid) with row and column labels.
    pub fn render(&self, bounds: &BoundsVector) -> String {
        let grid = self.grid(bounds);
        let mut header = vec![String::new()];
        header.extend(bounds.per_a.keys().map(|a| format!("a = {a}")));
        let mut rows = vec![header];
        for (b, row) in grid.into_iter().enumerate() {
            let mut line = vec![format!("b = {b}")];
            line.extend(row);
            rows.push(line);
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in rows {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell:<w$}"))
                .collect();
            out.push_str(cells.join(" | ").trim_end());
            out.push('\n');
        }
        out
    }
}

pub fn build_expansion_table(bounds: &BoundsVector, girth: usize) -> ExpansionTable {
    let half = girth / 2;
    let a_max = bounds.a_max;
    let cap = |a: usize| bounds.cap(a).unwrap_or(0);
    let mut table = ExpansionTable::default();
    for a in (half..a_max).rev() {
        let b_top = cap(a);
        for b in 1..=b_top {
            let cell = table.cells.entry((a, b)).or_default();
            if b >= 2 {
                cell.insert(ExpansionDescriptor::Dot);
            }
            let mut m = 2;
            while a + m <= a_max {
                let target = cap(a + m);
                if b >= 2 && b - 2 <= target {
                    cell.insert(ExpansionDescriptor::Path(m));
                }
                if m >= half && b - 1 <= target {
                    for c in half..=m {
                        cell.insert(ExpansionDescriptor::Lollipop { m, c });
                    }
                }
                m += 1;
            }
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example10() -> DegreeProfile {
        DegreeProfile::from_var_degrees(&[2, 3, 5, 10]).unwrap()
    }

    fn per_a(v: &BoundsVector) -> Vec<(usize, usize)> {
        v.per_a.iter().map(|(&a, &b)| (a, b)).collect()
    }

    #[test]
    fn degree_caps() {
        assert_eq!(degree_cap(7, 2), 9);
        assert_eq!(degree_cap(4, 0), 4);
        assert_eq!(degree_cap(10, 2), 12);
    }

    #[test]
    fn selections_for_example10() {
        let p = example10();
        assert_eq!(eta_y_z(&p, 6, 7, 2).unwrap(), (5, 5, None));
        assert_eq!(eta_y_z(&p, 4, 7, 2).unwrap(), (5, 3, Some(5)));
        let p3 = DegreeProfile::from_var_degrees(&[3]).unwrap();
        assert_eq!(eta_y_z(&p3, 3, 5, 2).unwrap(), (3, 3, None));
        let high = DegreeProfile::from_var_degrees(&[4, 5]).unwrap();
        assert!(matches!(eta_y_z(&high, 3, 5, 2), Err(Error::NoDegreeAtMost(3))));
    }

    #[test]
    fn example10_bounds() {
        let exact = compute_bounds(&example10(), 6, 7, 2, BoundMode::Exact).unwrap();
        assert_eq!(per_a(&exact), vec![(3, 9), (4, 12), (5, 12), (6, 7), (7, 2)]);
        let heur = compute_bounds(&example10(), 6, 7, 2, BoundMode::Heuristic).unwrap();
        assert_eq!(per_a(&heur), vec![(3, 9), (4, 9), (5, 8), (6, 5), (7, 2)]);
    }

    #[test]
    fn regular_degree_three_bounds() {
        let p = DegreeProfile::from_var_degrees(&[3]).unwrap();
        let v = compute_bounds(&p, 6, 4, 2, BoundMode::Exact).unwrap();
        assert_eq!(per_a(&v), vec![(3, 3), (4, 2)]);
        let single = compute_bounds(&p, 6, 3, 0, BoundMode::Exact).unwrap();
        assert_eq!(per_a(&single), vec![(3, 0)]);
        assert!(matches!(
            compute_bounds(&p, 8, 3, 0, BoundMode::Exact),
            Err(Error::RangeBelowGirth {
                a_max: 3,
                half_girth: 4
            })
        ));
    }

    #[test]
    fn example10_cells() {
        let bounds = compute_bounds(&example10(), 6, 7, 2, BoundMode::Exact).unwrap();
        let table = build_expansion_table(&bounds, 6);
        use ExpansionDescriptor::*;
        let set = |xs: &[ExpansionDescriptor]| xs.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(table.get(6, 2).unwrap(), &set(&[Dot]));
        assert_eq!(
            table.get(3, 1).unwrap(),
            &set(&[
                Lollipop { m: 3, c: 3 },
                Lollipop { m: 4, c: 3 },
                Lollipop { m: 4, c: 4 }
            ])
        );
        assert_eq!(
            table.get(3, 4).unwrap(),
            &set(&[Dot, Path(2), Path(3), Path(4), Lollipop { m: 3, c: 3 }])
        );
        assert_eq!(table.cell_label(3, 4), "dot, pa_2, pa_3, pa_4, lo_3");
        assert!(table.get(7, 1).is_none());
    }

    #[test]
    fn terminal_cell_only() {
        let p = DegreeProfile::from_var_degrees(&[3]).unwrap();
        let bounds = compute_bounds(&p, 6, 3, 0, BoundMode::Exact).unwrap();
        let table = build_expansion_table(&bounds, 6);
        assert!(table.cells.is_empty());
        assert_eq!(table.grid(&bounds), vec![vec!["-".to_string()]]);
    }
}
