//! Error-comparison sweeps: accurate decomposition-based results and a conventional
//! double-precision baseline, both measured against the extended-precision oracle.
//!
//! Every double-precision input (q, alpha, nodes, x) is taken as the exact dyadic rational
//! it represents, so the oracle solves the problem the floating-point code was given.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rug::{Float, Rational};

use crate::bd_catalog::NodeSequence;
use crate::bd_core::DenseMatrix;
use crate::error::{HratpError, Result};
use crate::oracle::{
    self, baseline, exact_collocation, exact_gramian, exact_wronskian, reference_eigenvalues,
    reference_inverse, reference_singular_values, reference_solve, relative_error_matrix,
    relative_error_value, relative_error_vector,
};
use crate::qcalc::QAbelParams;
use crate::scalar::Scalar;
use crate::tn_algorithms::{
    bd_collocation, bd_gramian_qabel, bd_wronskian_qabel, Conjugation, SignPattern, StructuredBd,
};

pub const CSV_HEADER: [&str; 10] = [
    "experiment",
    "q",
    "alpha",
    "n",
    "node_scheme",
    "x",
    "seed",
    "baseline_err",
    "hra_err",
    "guaranteed",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Experiment {
    Conditioning,
    SolveCollocation,
    SolveWronskian,
    EigSvd,
    Inverse,
}

impl Experiment {
    pub const ALL: [Experiment; 5] = [
        Experiment::Conditioning,
        Experiment::SolveCollocation,
        Experiment::SolveWronskian,
        Experiment::EigSvd,
        Experiment::Inverse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Conditioning => "conditioning",
            Experiment::SolveCollocation => "solve_collocation",
            Experiment::SolveWronskian => "solve_wronskian",
            Experiment::EigSvd => "eig_svd",
            Experiment::Inverse => "inverse",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = HratpError;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| HratpError::Parse(format!("unknown experiment '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NodeScheme {
    /// `t_i = i/(n+1)`
    EquidistantPos,
    /// `t_i = -i/(n+1)`
    EquidistantNeg,
    /// `t_i = log(i+1)/log(n+2)`
    Logarithmic,
    /// `t_i = i^2/(n+1)^2`
    Squared,
}

impl NodeScheme {
    pub const ALL: [NodeScheme; 4] = [
        NodeScheme::EquidistantPos,
        NodeScheme::EquidistantNeg,
        NodeScheme::Logarithmic,
        NodeScheme::Squared,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NodeScheme::EquidistantPos => "equidistant_pos",
            NodeScheme::EquidistantNeg => "equidistant_neg",
            NodeScheme::Logarithmic => "logarithmic",
            NodeScheme::Squared => "squared",
        }
    }

    /// The `n + 1` nodes `t_1, ..., t_{n+1}` for degree `n`.
    pub fn nodes(self, n: usize) -> Vec<f64> {
        let m = (n + 1) as f64;
        (1..=n + 1)
            .map(|i| {
                let t = i as f64;
                match self {
                    NodeScheme::EquidistantPos => t / m,
                    NodeScheme::EquidistantNeg => -t / m,
                    NodeScheme::Logarithmic => (t + 1.0).ln() / (m + 1.0).ln(),
                    NodeScheme::Squared => (t * t) / (m * m),
                }
            })
            .collect()
    }
}

impl fmt::Display for NodeScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NodeScheme {
    type Err = HratpError;

    fn from_str(s: &str) -> Result<Self> {
        NodeScheme::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| HratpError::Parse(format!("unknown node scheme '{s}'")))
    }
}

/// Integers uniform in `[1, 1000]` from SplitMix64 seeded with `seed`, signed `+,-,+,...`
/// for [`SignPattern::Alternating`], all positive for [`SignPattern::Constant`], and by an
/// extra coin flip per entry for [`SignPattern::Other`].
pub fn generate_rhs(n: usize, pattern: SignPattern, seed: u64) -> Vec<f64> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let v = rng.random_range(1..=1000u32) as f64;
            let negative = match pattern {
                SignPattern::Alternating => i % 2 == 1,
                SignPattern::Constant => false,
                SignPattern::Other => rng.random_bool(0.5),
            };
            if negative {
                -v
            } else {
                v
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub experiment: Experiment,
    pub q_list: Vec<f64>,
    pub alpha: f64,
    pub n_list: Vec<usize>,
    pub node_scheme: NodeScheme,
    /// Wronskian evaluation point.
    pub x: f64,
    pub seed: u64,
    /// Right-hand sides per cell for the solve experiments; the worst error is reported.
    pub trials: usize,
    /// Oracle precision in decimal digits for spectra and matrix norms.
    pub digits: u32,
}

impl ExperimentSpec {
    pub fn new(experiment: Experiment) -> Self {
        Self {
            experiment,
            q_list: vec![0.5, 1.0, 2.0],
            alpha: -1.0,
            n_list: vec![5, 10, 15, 20],
            node_scheme: NodeScheme::EquidistantPos,
            x: 50.0,
            seed: 42,
            trials: 1,
            digits: oracle::DEFAULT_DIGITS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Guarantee {
    Yes,
    No,
    NotApplicable,
    /// The cell's parameters violate the hypotheses of the accurate algorithm.
    Violation(String),
}

impl fmt::Display for Guarantee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guarantee::Yes => f.write_str("yes"),
            Guarantee::No => f.write_str("no"),
            Guarantee::NotApplicable => f.write_str("n/a"),
            Guarantee::Violation(msg) => write!(f, "violation: {msg}"),
        }
    }
}

/// One CSV row. `label` is the experiment name, suffixed with the measured quantity when
/// an experiment reports several per cell (e.g. `inverse:gramian`). For `conditioning`
/// rows `hra_err` holds the 2-norm condition number.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub label: String,
    pub q: f64,
    pub alpha: f64,
    pub n: usize,
    pub node_scheme: Option<NodeScheme>,
    pub x: Option<f64>,
    pub seed: u64,
    pub baseline_err: Option<f64>,
    pub hra_err: Option<f64>,
    pub guaranteed: Guarantee,
}

/// Scientific notation with two significant digits.
pub fn format_sci(v: f64) -> String {
    format!("{v:.1e}")
}

impl Row {
    pub fn is_violation(&self) -> bool {
        matches!(self.guaranteed, Guarantee::Violation(_))
    }

    pub fn record(&self) -> [String; 10] {
        let opt = |v: Option<f64>| v.map(format_sci).unwrap_or_default();
        [
            self.label.clone(),
            self.q.to_string(),
            self.alpha.to_string(),
            self.n.to_string(),
            self.node_scheme.map(|s| s.name().to_string()).unwrap_or_default(),
            self.x.map(|v| v.to_string()).unwrap_or_default(),
            self.seed.to_string(),
            opt(self.baseline_err),
            opt(self.hra_err),
            self.guaranteed.to_string(),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Collocation,
    Wronskian,
    Gramian,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Collocation => "collocation",
            Family::Wronskian => "wronskian",
            Family::Gramian => "gramian",
        }
    }
}

fn exact(v: f64) -> Rational {
    <Rational as Scalar>::from_f64(v)
}

/// One `(q, n)` cell of a sweep.
struct Cell<'a> {
    spec: &'a ExperimentSpec,
    q: f64,
    n: usize,
}

impl Cell<'_> {
    fn params(&self) -> Result<QAbelParams<f64>> {
        QAbelParams::new(self.q, self.spec.alpha, self.n)
    }

    fn exact_params(&self) -> Result<QAbelParams<Rational>> {
        QAbelParams::new(exact(self.q), exact(self.spec.alpha), self.n)
    }

    fn nodes(&self) -> Vec<f64> {
        self.spec.node_scheme.nodes(self.n)
    }

    fn structured(&self, family: Family) -> Result<StructuredBd<f64>> {
        let params = self.params()?;
        match family {
            Family::Collocation => bd_collocation(&params, &NodeSequence::new(self.nodes())?),
            Family::Wronskian => bd_wronskian_qabel(&params, &self.spec.x),
            Family::Gramian => Ok(StructuredBd::plain(bd_gramian_qabel(&params)?)),
        }
    }

    fn exact_matrix(&self, family: Family) -> Result<DenseMatrix<Rational>> {
        let params = self.exact_params()?;
        match family {
            Family::Collocation => {
                let nodes: Vec<Rational> = self.nodes().into_iter().map(exact).collect();
                exact_collocation(&params, &nodes)
            }
            Family::Wronskian => Ok(exact_wronskian(&params, &exact(self.spec.x))),
            Family::Gramian => Ok(exact_gramian(&params)),
        }
    }

    fn row(&self, label: String, family: Option<Family>) -> Row {
        let uses_nodes = family == Some(Family::Collocation);
        let uses_x = family == Some(Family::Wronskian);
        Row {
            label,
            q: self.q,
            alpha: self.spec.alpha,
            n: self.n,
            node_scheme: uses_nodes.then_some(self.spec.node_scheme),
            x: uses_x.then_some(self.spec.x),
            seed: self.spec.seed,
            baseline_err: None,
            hra_err: None,
            guaranteed: Guarantee::NotApplicable,
        }
    }

    fn violation(&self, mut row: Row, err: HratpError) -> Row {
        row.guaranteed = Guarantee::Violation(match err {
            HratpError::Hypothesis(msg) => msg,
            other => other.to_string(),
        });
        row
    }

    fn solve(&self, family: Family) -> Row {
        let row = self.row(self.spec.experiment.name().to_string(), Some(family));
        match self.try_solve(family) {
            Ok((base, hra, guaranteed)) => Row {
                baseline_err: Some(base),
                hra_err: Some(hra),
                guaranteed: if guaranteed { Guarantee::Yes } else { Guarantee::No },
                ..row
            },
            Err(e) => self.violation(row, e),
        }
    }

    fn try_solve(&self, family: Family) -> Result<(f64, f64, bool)> {
        let sbd = self.structured(family)?;
        // The sign pattern under which the solve is accurate.
        let pattern = match sbd.conjugation {
            Conjugation::BothJ => SignPattern::Constant,
            Conjugation::None | Conjugation::RightJ => SignPattern::Alternating,
        };
        let a = self.exact_matrix(family)?;
        let af = a.to_f64();
        let dim = self.n + 1;
        let rhs: Vec<Vec<f64>> = (0..self.spec.trials.max(1))
            .map(|t| generate_rhs(dim, pattern, self.spec.seed.wrapping_add(t as u64)))
            .collect();
        let rhs_exact: Vec<Vec<Rational>> =
            rhs.iter().map(|d| d.iter().copied().map(exact).collect()).collect();
        let reference = reference_solve(&a, &rhs_exact)?;
        let (mut base, mut hra, mut guaranteed) = (0.0f64, 0.0f64, true);
        for (d, y) in rhs.iter().zip(&reference) {
            let (x, report) = sbd.solve(d)?;
            guaranteed &= report.guaranteed;
            hra = hra.max(relative_error_vector(y, &x)?.relative_error);
            base = base.max(match baseline::solve(&af, d) {
                Ok(xb) => relative_error_vector(y, &xb)?.relative_error,
                Err(_) => f64::INFINITY,
            });
        }
        Ok((base, hra, guaranteed))
    }

    fn eig_svd(&self) -> Vec<Row> {
        let family = Family::Collocation;
        let eig_row = self.row("eig_svd:min_eigenvalue".into(), Some(family));
        let svd_row = self.row("eig_svd:min_singular_value".into(), Some(family));
        match self.try_eig_svd() {
            Ok([(be, he, ge), (bs, hs, gs)]) => {
                let g = |ok: bool| if ok { Guarantee::Yes } else { Guarantee::No };
                vec![
                    Row {
                        baseline_err: Some(be),
                        hra_err: Some(he),
                        guaranteed: g(ge),
                        ..eig_row
                    },
                    Row {
                        baseline_err: Some(bs),
                        hra_err: Some(hs),
                        guaranteed: g(gs),
                        ..svd_row
                    },
                ]
            }
            Err(e) => vec![self.violation(eig_row, e.clone()), self.violation(svd_row, e)],
        }
    }

    fn try_eig_svd(&self) -> Result<[(f64, f64, bool); 2]> {
        let sbd = self.structured(Family::Collocation)?;
        let a = self.exact_matrix(Family::Collocation)?;
        let af = a.to_f64();
        let digits = self.spec.digits;

        let ref_ev = reference_eigenvalues(&a, digits)?;
        let ref_min = ref_ev.last().expect("non-empty");
        let (ev, ev_report) = sbd.eigenvalues()?;
        let hra_ev = relative_error_value(ref_min, *ev.last().expect("non-empty"));
        let base_ev = match baseline::eigenvalues(&af) {
            Ok(zs) => zs
                .iter()
                .min_by(|a, b| a.0.hypot(a.1).total_cmp(&b.0.hypot(b.1)))
                .map(|z| complex_relative_error(ref_min, *z))
                .unwrap_or(f64::INFINITY),
            Err(_) => f64::INFINITY,
        };

        let ref_sv = reference_singular_values(&a, digits);
        let ref_smin = ref_sv.last().expect("non-empty");
        let (sv, sv_report) = sbd.singular_values()?;
        let hra_sv = relative_error_value(ref_smin, *sv.last().expect("non-empty"));
        let base_sv = relative_error_value(
            ref_smin,
            *baseline::singular_values(&af).last().expect("non-empty"),
        );
        Ok([
            (base_ev, hra_ev, ev_report.guaranteed),
            (base_sv, hra_sv, sv_report.guaranteed),
        ])
    }

    fn inverse(&self) -> Vec<Row> {
        [Family::Collocation, Family::Gramian]
            .into_iter()
            .map(|family| {
                let row = self.row(format!("inverse:{}", family.name()), Some(family));
                match self.try_inverse(family) {
                    Ok((base, hra)) => Row {
                        baseline_err: Some(base),
                        hra_err: Some(hra),
                        guaranteed: Guarantee::Yes,
                        ..row
                    },
                    Err(e) => self.violation(row, e),
                }
            })
            .collect()
    }

    fn try_inverse(&self, family: Family) -> Result<(f64, f64)> {
        let sbd = self.structured(family)?;
        let a = self.exact_matrix(family)?;
        let reference = reference_inverse(&a)?;
        let digits = self.spec.digits;
        let hra = relative_error_matrix(&reference, &sbd.inverse()?, digits)?.relative_error;
        let base = match baseline::inverse(&a.to_f64()) {
            Ok(inv) => relative_error_matrix(&reference, &inv, digits)?.relative_error,
            Err(_) => f64::INFINITY,
        };
        Ok((base, hra))
    }

    fn conditioning(&self) -> Vec<Row> {
        [Family::Collocation, Family::Wronskian, Family::Gramian]
            .into_iter()
            .map(|family| {
                let row = self.row(format!("conditioning:{}", family.name()), Some(family));
                match self
                    .exact_matrix(family)
                    .and_then(|a| oracle::condition_number_2(&a, self.spec.digits))
                {
                    Ok(kappa) => Row {
                        hra_err: Some(kappa),
                        ..row
                    },
                    Err(e) => self.violation(row, e),
                }
            })
            .collect()
    }
}

fn complex_relative_error(reference: &Float, z: (f64, f64)) -> f64 {
    let re = relative_error_value(reference, z.0);
    let im = z.1 / reference.to_f64();
    re.hypot(im)
}

/// Runs every `(q, n)` cell of the sweep. Hypothesis violations become rows rather than
/// errors. Rows are sorted by label, then `q`, then `n`.
pub fn run_experiment(spec: &ExperimentSpec) -> Vec<Row> {
    let mut rows = Vec::new();
    for &q in &spec.q_list {
        for &n in &spec.n_list {
            let cell = Cell { spec, q, n };
            match spec.experiment {
                Experiment::Conditioning => rows.extend(cell.conditioning()),
                Experiment::SolveCollocation => rows.push(cell.solve(Family::Collocation)),
                Experiment::SolveWronskian => rows.push(cell.solve(Family::Wronskian)),
                Experiment::EigSvd => rows.extend(cell.eig_svd()),
                Experiment::Inverse => rows.extend(cell.inverse()),
            }
        }
    }
    rows.sort_by(|a, b| {
        a.label
            .cmp(&b.label)
            .then(a.q.total_cmp(&b.q))
            .then(a.n.cmp(&b.n))
    });
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rhs_signs_and_range() {
        let alt = generate_rhs(3, SignPattern::Alternating, 7);
        assert!(alt[0] > 0.0 && alt[1] < 0.0 && alt[2] > 0.0);
        let con = generate_rhs(50, SignPattern::Constant, 7);
        assert!(con.iter().all(|v| (1.0..=1000.0).contains(v)));
        assert_eq!(generate_rhs(50, SignPattern::Constant, 7), con);
        assert_ne!(generate_rhs(50, SignPattern::Constant, 8), con);
        let mixed = generate_rhs(200, SignPattern::Other, 1);
        assert!(mixed.iter().all(|v| (1.0..=1000.0).contains(&v.abs()) && v.fract() == 0.0));
    }

    #[test]
    fn node_schemes() {
        assert_eq!(NodeScheme::EquidistantPos.nodes(3), vec![0.25, 0.5, 0.75, 1.0]);
        assert_eq!(NodeScheme::EquidistantNeg.nodes(1), vec![-0.5, -1.0]);
        assert_eq!(NodeScheme::Squared.nodes(1), vec![0.25, 1.0]);
        let log = NodeScheme::Logarithmic.nodes(2);
        assert!((log[0] - 2f64.ln() / 4f64.ln()).abs() < 1e-16);
        assert_eq!(log[2], 1.0);
        for s in NodeScheme::ALL {
            assert_eq!(s.name().parse::<NodeScheme>().unwrap(), s);
        }
        assert!("bogus".parse::<NodeScheme>().is_err());
    }

    #[test]
    fn small_solve_sweep() {
        let spec = ExperimentSpec {
            q_list: vec![2.0, 0.5],
            n_list: vec![4, 2],
            trials: 3,
            ..ExperimentSpec::new(Experiment::SolveCollocation)
        };
        let rows = run_experiment(&spec);
        assert_eq!(rows.len(), 4);
        assert_eq!((rows[0].q, rows[0].n), (0.5, 2));
        assert_eq!((rows[3].q, rows[3].n), (2.0, 4));
        for r in &rows {
            assert_eq!(r.guaranteed, Guarantee::Yes);
            assert!(r.hra_err.unwrap() < 1e-14);
        }
        assert_eq!(rows, run_experiment(&spec));
    }

    #[test]
    fn violations_are_rows() {
        let spec = ExperimentSpec {
            alpha: 1.0,
            n_list: vec![3],
            q_list: vec![1.0],
            ..ExperimentSpec::new(Experiment::SolveWronskian)
        };
        let rows = run_experiment(&spec);
        assert_eq!(rows.len(), 1);
        assert!(rows[0].is_violation());
        assert!(rows[0].record()[9].starts_with("violation"));
    }

    #[test]
    fn record_layout() {
        let spec = ExperimentSpec {
            q_list: vec![1.0],
            n_list: vec![3],
            ..ExperimentSpec::new(Experiment::Conditioning)
        };
        let rows = run_experiment(&spec);
        let labels: Vec<&str> = rows.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(
            labels,
            ["conditioning:collocation", "conditioning:gramian", "conditioning:wronskian"]
        );
        let rec = rows[2].record();
        assert_eq!(&rec[..7], ["conditioning:wronskian", "1", "-1", "3", "", "50", "42"]);
        assert_eq!(rec[7], "");
        assert_eq!(rec[9], "n/a");
        assert_eq!(format_sci(0.000346), "3.5e-4");
    }
}
