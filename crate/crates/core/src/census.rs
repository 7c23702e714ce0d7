//! Per-class instance sets for every category, used to compare the search
//! against the brute-force oracle and to build report rows.

use std::collections::{BTreeMap, BTreeSet};

use crate::report::ReportRow;
use crate::tanner::TannerGraph;
use crate::tsets::{classify, TrapClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    Ets,
    Lets,
    Etsl1,
    Etsl2,
    Eas,
    Feas,
    FeasStar,
}

impl Category {
    pub const ALL: [Category; 7] = [
        Category::Ets,
        Category::Lets,
        Category::Etsl1,
        Category::Etsl2,
        Category::Eas,
        Category::Feas,
        Category::FeasStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::Ets => "ETS",
            Category::Lets => "LETS",
            Category::Etsl1 => "ETSL1",
            Category::Etsl2 => "ETSL2",
            Category::Eas => "EAS",
            Category::Feas => "FEAS",
            Category::FeasStar => "FEAS*",
        }
    }
}

/// Instance keys of one `(a, b)` class, split by category.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CellSets {
    sets: BTreeMap<Category, BTreeSet<Vec<usize>>>,
}

impl CellSets {
    pub fn get(&self, cat: Category) -> &BTreeSet<Vec<usize>> {
        static EMPTY: BTreeSet<Vec<usize>> = BTreeSet::new();
        self.sets.get(&cat).unwrap_or(&EMPTY)
    }

    pub fn count(&self, cat: Category) -> usize {
        self.get(cat).len()
    }

    fn add(&mut self, cat: Category, key: &[usize]) {
        self.sets.entry(cat).or_default().insert(key.to_vec());
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Census {
    pub cells: BTreeMap<TrapClass, CellSets>,
}

impl Census {
    /// Classifies every set. Sets that are not elementary are skipped.
    pub fn from_sets(g: &TannerGraph, sets: impl IntoIterator<Item = Vec<usize>>) -> Census {
        let mut census = Census::default();
        for mut key in sets {
            key.sort_unstable();
            key.dedup();
            let Ok(c) = classify(g, &key) else { continue };
            if !c.flags.is_ets {
                continue;
            }
            let cell = census.cells.entry(c.class).or_default();
            let f = c.flags;
            for (cat, on) in [
                (Category::Ets, true),
                (Category::Lets, f.is_lets),
                (Category::Etsl1, f.is_etsl1),
                (Category::Etsl2, f.is_etsl2),
                (Category::Eas, f.is_eas),
                (Category::Feas, f.is_feas),
                (Category::FeasStar, f.is_feas_star),
            ] {
                if on {
                    cell.add(cat, &key);
                }
            }
        }
        census
    }

    /// Cells with `min_a ≤ a ≤ a_max` and `b ≤ b_max`.
    pub fn restrict(&self, min_a: usize, a_max: usize, b_max: usize) -> Census {
        Census {
            cells: self
                .cells
                .iter()
                .filter(|(c, _)| c.a >= min_a && c.a <= a_max && c.b <= b_max)
                .map(|(c, s)| (*c, s.clone()))
                .collect(),
        }
    }

    pub fn count(&self, cls: TrapClass, cat: Category) -> usize {
        self.cells.get(&cls).map_or(0, |s| s.count(cat))
    }

    pub fn total(&self, cat: Category) -> usize {
        self.cells.values().map(|s| s.count(cat)).sum()
    }

    /// Rows for every non-empty class with `a ≥ min_a`, sorted by `(a, b)`.
    pub fn rows(&self, min_a: usize) -> Vec<ReportRow> {
        self.cells
            .iter()
            .filter(|(c, s)| c.a >= min_a && s.count(Category::Ets) > 0)
            .map(|(c, s)| ReportRow {
                a: c.a,
                b: c.b,
                ets: s.count(Category::Ets),
                lets: s.count(Category::Lets),
                etsl1: s.count(Category::Etsl1),
                etsl2: s.count(Category::Etsl2),
                eas: s.count(Category::Eas),
                feas: s.count(Category::Feas),
                feas_star: s.count(Category::FeasStar),
            })
            .collect()
    }

    /// Differences from `expected`, one line per missing or unexpected key.
    pub fn diff(&self, expected: &Census) -> Vec<String> {
        let classes: BTreeSet<TrapClass> = self.cells.keys().chain(expected.cells.keys()).copied().collect();
        let empty = CellSets::default();
        let mut out = Vec::new();
        for cls in classes {
            let ours = self.cells.get(&cls).unwrap_or(&empty);
            let theirs = expected.cells.get(&cls).unwrap_or(&empty);
            for cat in Category::ALL {
                let (a, b) = (ours.get(cat), theirs.get(cat));
                for key in b.difference(a) {
                    out.push(format!("{cls} {}: missing {key:?}", cat.name()));
                }
                for key in a.difference(b) {
                    out.push(format!("{cls} {}: unexpected {key:?}", cat.name()));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tanner::fixtures::six_cycle;

    #[test]
    fn six_cycle_census() {
        let g = six_cycle();
        let sets = vec![
            vec![0],
            vec![1],
            vec![2],
            vec![0, 1],
            vec![1, 2],
            vec![0, 2],
            vec![0, 1, 2],
        ];
        let c = Census::from_sets(&g, sets);
        assert_eq!(c.count(TrapClass::new(1, 2), Category::Etsl2), 3);
        assert_eq!(c.count(TrapClass::new(2, 2), Category::Ets), 3);
        assert_eq!(c.count(TrapClass::new(3, 0), Category::Lets), 1);
        assert_eq!(c.count(TrapClass::new(3, 0), Category::Feas), 1);
        let rows = c.rows(2);
        assert_eq!(rows.len(), 2);
        assert_eq!((rows[0].a, rows[0].b, rows[0].ets, rows[0].lets), (2, 2, 3, 0));
        assert!(c.diff(&c).is_empty());
        let smaller = c.restrict(2, 3, 2);
        let d = smaller.diff(&c);
        assert_eq!(d.len(), 3 * 2, "three singles, each ETS and ETSL2");
        assert!(d[0].contains("missing"));
    }
}
