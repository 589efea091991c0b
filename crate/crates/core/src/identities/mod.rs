//! Numerical checks of the functional relations among ζ_MT, ξ_MT and ξ_MT,g.
//!
//! Every check returns a [`CheckReport`] holding both sides with their
//! error bounds. Suites run a frozen default parameter grid per identity.
//!
//! | id            | grid                                                     |
//! |---------------|----------------------------------------------------------|
//! | `mr1`         | (r, s) = (1,3) (2,3) (2,7/2) (3,4) (3,3+0.5i) (3,9/2)    |
//! | `mr2`         | (r, m) = (2,1) (2,2) (2,3) (3,3)                          |
//! | `mr2-display` | m = 3                                                    |
//! | `mr3`         | k = 1, 2                                                 |
//! | `mtval`       | m = 0..3                                                 |
//! | `mr4`         | (N, r, s) = (1,[],3) (2,[1],4) (2,[2],4) (3,[1,1],9/2)   |
//! | `lll`         | r = [1], [1,1], [1,2]                                    |
//! | `euler`       | (r, k) = (1,1) (1,2) (2,1) (2,2)                          |
//! | `double-zeta`        | (a, b) = (2,3) (3,2) (4,3) (1,2)                          |
//! | `ac1`         | k ∈ {[1], [2], [1,1]}, m = 0..2                          |
//!
//! At 256 bits the whole default run takes a few seconds in release builds.

mod checks;
mod report;

use rayon::prelude::*;

pub use checks::{
    check_ac1, check_double_zeta_closed_form, check_euler_decomposition, check_lll, check_mr1, check_mr2, check_mr2_display, check_mr3,
    check_mr4, check_mtval, format_s, PROBE_STEPS,
};
pub use report::{CheckConfig, CheckReport, SideCondition, DEFAULT_SLACK};

use crate::error::{Error, Result};
use crate::numerics::Complex;
use crate::series::IndexVector;

/// Suite ids in their declared order.
pub const SUITE_IDS: [&str; 10] = [
    "mr1",
    "mr2",
    "mr2-display",
    "mr3",
    "mtval",
    "mr4",
    "lll",
    "euler",
    "double-zeta",
    "ac1",
];

type Runner = Box<dyn Fn(&CheckConfig) -> Result<CheckReport> + Send + Sync>;

/// One grid point of a suite, not yet evaluated.
pub struct GridCase {
    pub suite: &'static str,
    pub parameters: Vec<(String, String)>,
    run: Runner,
}

impl GridCase {
    fn new(suite: &'static str, parameters: &[(&str, String)], run: Runner) -> Self {
        Self {
            suite,
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            run,
        }
    }

    pub fn run(&self, cfg: &CheckConfig) -> Result<CheckReport> {
        (self.run)(cfg)
    }

    /// True when every `key=value` filter names a parameter of this case
    /// with exactly that value.
    pub fn matches(&self, filters: &[(String, String)]) -> bool {
        filters
            .iter()
            .all(|(k, v)| self.parameters.iter().any(|(pk, pv)| pk == k && pv == v))
    }
}

fn s_at(label: &str, prec: u32) -> Complex {
    Complex::parse(label, prec).expect("grid labels parse")
}

fn list(values: &[u32]) -> String {
    format!("[{}]", values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
}

/// The frozen default grid of one suite.
pub fn default_grid(id: &str) -> Result<Vec<GridCase>> {
    let mut cases = Vec::new();
    match id {
        "mr1" => {
            for (r, s) in [(1, "3"), (2, "3"), (2, "7/2"), (3, "4"), (3, "3+0.5i"), (3, "9/2")] {
                cases.push(GridCase::new(
                    "mr1",
                    &[("r", r.to_string()), ("s", s.to_string())],
                    Box::new(move |cfg| check_mr1(r, &s_at(s, cfg.prec), cfg)),
                ));
            }
        }
        "mr2" => {
            for (r, m) in [(2, 1), (2, 2), (2, 3), (3, 3)] {
                cases.push(GridCase::new(
                    "mr2",
                    &[("r", r.to_string()), ("m", m.to_string())],
                    Box::new(move |cfg| check_mr2(r, m, cfg)),
                ));
            }
        }
        "mr2-display" => {
            cases.push(GridCase::new(
                "mr2-display",
                &[("m", "3".into())],
                Box::new(|cfg| check_mr2_display(3, cfg)),
            ));
        }
        "mr3" => {
            for k in [1, 2] {
                cases.push(GridCase::new("mr3", &[("k", k.to_string())], Box::new(move |cfg| check_mr3(k, cfg))));
            }
        }
        "mtval" => {
            for m in 0..=3 {
                cases.push(GridCase::new("mtval", &[("m", m.to_string())], Box::new(move |cfg| check_mtval(m, cfg))));
            }
        }
        "mr4" => {
            let grid: [(usize, &'static [u32], &'static str); 4] =
                [(1, &[], "3"), (2, &[1], "4"), (2, &[2], "4"), (3, &[1, 1], "9/2")];
            for (n, r, s) in grid {
                cases.push(GridCase::new(
                    "mr4",
                    &[("N", n.to_string()), ("r", list(r)), ("s", s.to_string())],
                    Box::new(move |cfg| check_mr4(n, r, &s_at(s, cfg.prec), cfg)),
                ));
            }
        }
        "lll" => {
            let grid: [&'static [u32]; 3] = [&[1], &[1, 1], &[1, 2]];
            for r in grid {
                cases.push(GridCase::new(
                    "lll",
                    &[("g", r.len().to_string()), ("r", list(r))],
                    Box::new(move |cfg| check_lll(r, cfg)),
                ));
            }
        }
        "euler" => {
            for (r, k) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                cases.push(GridCase::new(
                    "euler",
                    &[("r", r.to_string()), ("k", k.to_string())],
                    Box::new(move |cfg| check_euler_decomposition(r, k, cfg)),
                ));
            }
        }
        "double-zeta" => {
            for (a, b) in [(2, 3), (3, 2), (4, 3), (1, 2)] {
                cases.push(GridCase::new(
                    "double-zeta",
                    &[("a", a.to_string()), ("b", b.to_string())],
                    Box::new(move |cfg| check_double_zeta_closed_form(a, b, cfg)),
                ));
            }
        }
        "ac1" => {
            let indices: [&'static [u32]; 3] = [&[1], &[2], &[1, 1]];
            for k in indices {
                for m in 0..=2u32 {
                    cases.push(GridCase::new(
                        "ac1",
                        &[("k", list(k)), ("m", m.to_string())],
                        Box::new(move |cfg| check_ac1(&IndexVector::new(k.to_vec()), m, cfg)),
                    ));
                }
            }
        }
        other => return Err(Error::UnknownIdentity(other.to_string())),
    }
    Ok(cases)
}

/// Grid cases of the selected suites, in selection order, restricted by
/// `key=value` filters. Errors when the filters leave nothing.
pub fn select_cases(selection: &[&str], filters: &[(String, String)]) -> Result<Vec<GridCase>> {
    let mut cases = Vec::new();
    for id in selection {
        cases.extend(default_grid(id)?.into_iter().filter(|c| c.matches(filters)));
    }
    if !filters.is_empty() && cases.is_empty() {
        let f: Vec<String> = filters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        return Err(Error::Domain(format!("no grid point matches {}", f.join(" "))));
    }
    Ok(cases)
}

/// Evaluates cases concurrently; reports come back in case order.
pub fn run_cases(cases: &[GridCase], cfg: &CheckConfig) -> Result<Vec<CheckReport>> {
    cases.par_iter().map(|c| c.run(cfg)).collect()
}

/// Runs the default grids of the selected suites.
pub fn run_suite(selection: &[&str], cfg: &CheckConfig) -> Result<Vec<CheckReport>> {
    run_cases(&select_cases(selection, &[])?, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_selection() {
        assert!(run_suite(&[], &CheckConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(run_suite(&["nope"], &CheckConfig::default()), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn grid_filters() {
        let f = vec![("k".to_string(), "1".to_string())];
        let cases = select_cases(&["mr3"], &f).unwrap();
        assert_eq!(cases.len(), 1);
        assert!(select_cases(&["mr3"], &[("k".into(), "9".into())]).is_err());
    }

    #[test]
    fn grid_labels_match_report_parameters() {
        let cfg = CheckConfig::new(64);
        for id in ["mtval", "double-zeta", "mr3"] {
            for case in default_grid(id).unwrap() {
                let report = case.run(&cfg).unwrap();
                assert_eq!(report.parameters, case.parameters, "{id}");
                assert!(report.pass(), "{id} {}", report.parameter_string());
            }
        }
    }
}
