//! Multiplicity tables in text, CSV and serializable form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::{BoundMode, BoundsVector};
use crate::search::SearchOutcome;
use crate::tanner::TannerGraph;

/// Counts for one `(a, b)` class. `ets = lets + etsl1 + etsl2`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub a: usize,
    pub b: usize,
    pub ets: usize,
    pub lets: usize,
    pub etsl1: usize,
    pub etsl2: usize,
    pub eas: usize,
    pub feas: usize,
    pub feas_star: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodeMeta {
    pub n: usize,
    pub m: usize,
    /// `1 − m/n`, assuming a full-rank parity-check matrix.
    pub design_rate: f64,
    pub girth: String,
    pub lambda: BTreeMap<usize, f64>,
    pub rho: BTreeMap<usize, f64>,
    /// LETS instances stored by the search, in range or not.
    pub explored_lets: usize,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub a_max: usize,
    pub b_max: usize,
    pub mode: BoundMode,
    pub min_a: usize,
    pub feas_star: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub lets_seconds: f64,
    pub etsl_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub meta: CodeMeta,
    pub config: ConfigEcho,
    pub bounds: Option<BoundsVector>,
    pub rows: Vec<ReportRow>,
    /// Left out when byte-stable output is wanted.
    pub timing: Option<Timing>,
}

impl RunReport {
    pub fn build(g: &TannerGraph, outcome: &SearchOutcome, feas_star: bool, with_timing: bool) -> RunReport {
        let profile = g.degree_profile().ok();
        let cfg = &outcome.config;
        RunReport {
            meta: CodeMeta {
                n: g.n(),
                m: g.m(),
                design_rate: g.design_rate(),
                girth: g.girth().to_string(),
                lambda: profile.as_ref().map(|p| p.lambda_coeffs.clone()).unwrap_or_default(),
                rho: profile.as_ref().map(|p| p.rho_coeffs.clone()).unwrap_or_default(),
                explored_lets: outcome.explored(),
                warnings: outcome.etsl.warnings.clone(),
            },
            config: ConfigEcho {
                a_max: cfg.a_max,
                b_max: cfg.b_max,
                mode: cfg.mode,
                min_a: cfg.report_min_a,
                feas_star,
            },
            bounds: outcome.lets.bounds.clone(),
            rows: outcome.rows(g),
            timing: with_timing.then_some(Timing {
                lets_seconds: outcome.lets_time.as_secs_f64(),
                etsl_seconds: outcome.etsl_time.as_secs_f64(),
            }),
        }
    }

    pub fn to_csv(&self) -> String {
        let star = self.config.feas_star;
        let mut out = String::from(if star {
            "a,b,ets,lets,eas,feas,feas_star\n"
        } else {
            "a,b,ets,lets,eas,feas\n"
        });
        for r in &self.rows {
            let _ = write!(out, "{},{},{},{},{},{}", r.a, r.b, r.ets, r.lets, r.eas, r.feas);
            if star {
                let _ = write!(out, ",{}", r.feas_star);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_table(&self) -> String {
        let star = self.config.feas_star;
        let mut header = vec!["(a,b)", "ETS", "LETS", "EAS", "FEAS"];
        if star {
            header.push("FEAS*");
        }
        let mut lines: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        for r in &self.rows {
            let mut line = vec![
                format!("({},{})", r.a, r.b),
                r.ets.to_string(),
                r.lets.to_string(),
                r.eas.to_string(),
                r.feas.to_string(),
            ];
            if star {
                line.push(r.feas_star.to_string());
            }
            lines.push(line);
        }
        let widths: Vec<usize> = (0..header.len())
            .map(|j| lines.iter().map(|l| l[j].len()).max().unwrap_or(0))
            .collect();
        let mut out = format!(
            "n = {}, m = {}, design rate = {:.4}, girth = {}\na_max = {}, b_max = {}, mode = {}\n",
            self.meta.n,
            self.meta.m,
            self.meta.design_rate,
            self.meta.girth,
            self.config.a_max,
            self.config.b_max,
            self.config.mode
        );
        for w in &self.meta.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        for line in lines {
            let cells: Vec<String> = line.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
            out.push_str(&cells.join("  "));
            out.push('\n');
        }
        if self.rows.is_empty() {
            out.push_str("(no trapping sets in range)\n");
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(
                out,
                "time: LETS {:.3} s, ETSL {:.3} s, {} LETS instances explored",
                t.lets_seconds, t.etsl_seconds, self.meta.explored_lets
            );
        }
        out
    }
}
