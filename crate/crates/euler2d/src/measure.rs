//! Small measurement utilities shared by the test suites and the
//! harness: refinement-order fits and central finite-difference sweeps.

/// Least-squares slope of `ln residual` against `ln parameter`, negated,
/// so a method of order p on a shrinking parameter reports ≈ p.
pub fn fitted_order(params: &[f64], residuals: &[f64]) -> f64 {
    assert_eq!(params.len(), residuals.len());
    let xs: Vec<f64> = params.iter().map(|p| p.ln()).collect();
    let ys: Vec<f64> = residuals.iter().map(|r| r.max(f64::MIN_POSITIVE).ln()).collect();
    let xm = xs.iter().sum::<f64>() / xs.len() as f64;
    let ym = ys.iter().sum::<f64>() / ys.len() as f64;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let var: f64 = xs.iter().map(|x| (x - xm) * (x - xm)).sum();
    cov / var
}

/// Outcome of a central finite-difference sweep against an exact
/// directional derivative.
#[derive(Debug, Clone, Copy)]
pub enum FdOutcome {
    /// Every gap sat at or below the round-off floor. This is the honest
    /// result for linear and quadratic functionals: their central
    /// differences are exact, so there is no O(t²) term to fit.
    ExactToFloor { max_gap: f64 },
    /// Fitted convergence order of the gap in the step size.
    Order(f64),
}

impl FdOutcome {
    pub fn passes(&self, required_order: f64) -> bool {
        match self {
            FdOutcome::ExactToFloor { .. } => true,
            FdOutcome::Order(p) => *p >= required_order,
        }
    }
}

/// Sweeps `t ∈ {1e-2 … 1e-4}` comparing `(g(t) − g(−t))/2t` with
/// `exact`; `scale` sets the round-off floor.
pub fn fd_sweep(g: impl Fn(f64) -> f64, exact: f64, scale: f64) -> FdOutcome {
    let ts = [1e-2, 5.6e-3, 3.2e-3, 1.8e-3, 1e-3, 5.6e-4, 3.2e-4, 1.8e-4, 1e-4];
    let gaps: Vec<f64> = ts
        .iter()
        .map(|&t| ((g(t) - g(-t)) / (2.0 * t) - exact).abs())
        .collect();
    let floor = crate::tol::FD_FLOOR * scale.max(f64::MIN_POSITIVE);
    if gaps.iter().all(|&g| g <= floor) {
        return FdOutcome::ExactToFloor {
            max_gap: gaps.iter().cloned().fold(0.0, f64::max),
        };
    }
    // Fit only the decades that are clearly above the floor; near the
    // floor the gap flattens and would bias the slope.
    let pairs: Vec<(f64, f64)> = ts
        .iter()
        .zip(&gaps)
        .filter(|(_, &g)| g > 100.0 * floor)
        .map(|(&t, &g)| (t, g))
        .collect();
    if pairs.len() < 2 {
        return FdOutcome::ExactToFloor {
            max_gap: gaps.iter().cloned().fold(0.0, f64::max),
        };
    }
    let (ts, gs): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    FdOutcome::Order(fitted_order(&ts, &gs))
}
