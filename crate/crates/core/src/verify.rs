//! Agreement suite between the Gaussian propagator and the Fock oracle.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::fock::{evolve_vacuum, FockConfig, CONVERGENCE_CUTOFF_STEP, CONVERGENCE_TOL};
use crate::gaussian::{
    chain_coupling, complete_graph_coupling, eigenmodes, propagator, CouplingMatrix, JointQuadrature,
    DEFAULT_ZERO_TOL,
};

/// Absolute agreement required between the two simulators.
pub const AGREEMENT_TOL: f64 = 1e-3;
pub const KAPPA_T_GRID: [f64; 3] = [0.1, 0.2, 0.3];

#[derive(Debug, Clone)]
pub struct VerifyCase {
    pub name: String,
    pub coupling: CouplingMatrix,
    /// Reference rate; evolution times are `kappa_t / kappa`.
    pub kappa: f64,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub case: String,
    pub quadrature: String,
    pub kappa_t: f64,
    pub gaussian: f64,
    pub oracle: f64,
    pub converged: bool,
}

impl Check {
    pub fn abs_error(&self) -> f64 {
        (self.gaussian - self.oracle).abs()
    }

    pub fn passed(&self) -> bool {
        self.converged && self.abs_error() < AGREEMENT_TOL
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }

    /// Failing check with the largest error, or the largest error overall.
    pub fn worst(&self) -> Option<&Check> {
        let key = |c: &&Check| (!c.passed(), c.abs_error());
        self.checks.iter().max_by(|a, b| key(a).partial_cmp(&key(b)).expect("finite errors"))
    }
}

/// Cases with N ≤ 3; `quick` keeps N ≤ 2.
pub fn default_cases(quick: bool) -> Result<Vec<VerifyCase>> {
    let kappa = 1.0;
    let mut cases = vec![
        VerifyCase { name: "single-mode squeezer".into(), coupling: CouplingMatrix::from_rows(&[vec![kappa]])?, kappa },
        VerifyCase { name: "h1".into(), coupling: complete_graph_coupling(2, kappa)?, kappa },
    ];
    if !quick {
        cases.push(VerifyCase { name: "h2 chain".into(), coupling: chain_coupling(3, kappa)?, kappa });
        cases.push(VerifyCase { name: "h3".into(), coupling: complete_graph_coupling(3, kappa)?, kappa });
        cases.push(VerifyCase {
            name: "mixed 3-mode".into(),
            coupling: CouplingMatrix::from_rows(&[
                vec![0.2, 0.9, -0.3],
                vec![0.9, -0.1, 0.5],
                vec![-0.3, 0.5, 0.0],
            ])?,
            kappa,
        });
    }
    Ok(cases)
}

/// Named quadratures checked for an `n`-mode case: every single quadrature,
/// pair differences and sums, the total P, and the squeezed eigenmodes.
pub fn case_quadratures(g: &CouplingMatrix) -> Result<Vec<(String, JointQuadrature)>> {
    let n = g.size();
    let mut out = Vec::new();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        out.push((format!("X{}", i + 1), JointQuadrature::x_only(&e)?));
        out.push((format!("P{}", i + 1), JointQuadrature::p_only(&e)?));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            out.push((format!("X{}-X{}", i + 1, j + 1), JointQuadrature::x_difference(n, i, j)?));
            let mut p = vec![0.0; n];
            p[i] = 1.0;
            p[j] = 1.0;
            out.push((format!("P{}+P{}", i + 1, j + 1), JointQuadrature::p_only(&p)?));
        }
    }
    if n > 1 {
        out.push(("Psum".into(), JointQuadrature::p_sum(n)?));
    }
    for (k, mode) in eigenmodes(g, DEFAULT_ZERO_TOL)?.modes().enumerate() {
        out.push((format!("E{}", k + 1), mode.squeezed_quadrature()));
    }
    Ok(out)
}

/// Runs the suite with the production propagator.
pub fn run_default(quick: bool) -> Result<VerifyReport> {
    run_suite(&default_cases(quick)?, &propagator)
}

/// Runs `cases` comparing the oracle with Gaussian variances obtained from
/// `propagate` (vacuum covariance pushed through the returned matrix).
pub fn run_suite(
    cases: &[VerifyCase],
    propagate: &dyn Fn(&CouplingMatrix, f64) -> Result<DMatrix<f64>>,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for case in cases {
        let n = case.coupling.size();
        let quads = case_quadratures(&case.coupling)?;
        let cfg = FockConfig::new(n);
        let finer = cfg.with_cutoff(cfg.cutoff + CONVERGENCE_CUTOFF_STEP);
        for &kt in &KAPPA_T_GRID {
            let t = kt / case.kappa;
            let s = propagate(&case.coupling, t)?;
            let cov = &s * s.transpose() * 0.5;
            let coarse = evolve_vacuum(&case.coupling, t, &cfg)?;
            let fine = evolve_vacuum(&case.coupling, t, &finer)?;
            for (name, q) in &quads {
                let c = q.coefficients();
                let gaussian = c.dot(&(&cov * &c));
                let oracle = coarse.variance(q)?;
                let converged = (fine.variance(q)? - oracle).abs() < CONVERGENCE_TOL;
                report.checks.push(Check {
                    case: case.name.clone(),
                    quadrature: name.clone(),
                    kappa_t: kt,
                    gaussian,
                    oracle,
                    converged,
                });
            }
        }
    }
    Ok(report)
}
