//! Numeric reproduction of the running-time analysis: branching factors,
//! per-vertex costs of the decomposition sets, and the minimum-degree
//! branching roots with their comparison values.

use crate::error::{Error, Result};

/// Cost factor charged per vertex handed to the (3,2)-CSP solver.
pub const CSP_FACTOR: f64 = 1.3645;

/// Measure drops of one branching step, one entry per child.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchVector {
    decreases: Vec<f64>,
}

impl BranchVector {
    pub fn new(decreases: Vec<f64>) -> Result<Self> {
        if decreases.is_empty() {
            return Err(Error::InvalidParameter(
                "branch vector needs at least one child".into(),
            ));
        }
        if !decreases.iter().all(|&d| d > 0.0) {
            return Err(Error::InvalidParameter(
                "branch vector entries must be positive".into(),
            ));
        }
        Ok(BranchVector { decreases })
    }

    pub fn decreases(&self) -> &[f64] {
        &self.decreases
    }
}

/// The unique x > 1 with sum over children of x^(-d_i) = 1; a single child
/// gives the degenerate factor 1.
pub fn branching_factor(bv: &BranchVector) -> f64 {
    let ds = bv.decreases();
    if ds.len() == 1 {
        return 1.0;
    }
    let eval = |x: f64| -> f64 {
        ds.iter().map(|&d| (-d * x.ln()).exp()).sum::<f64>() - 1.0
    };
    let mut lo = 1.0f64;
    let mut hi = 2.0f64;
    while eval(hi) > 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if eval(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    // one Newton step against the same function
    let deriv: f64 = ds
        .iter()
        .map(|&d| -d / x * (-d * x.ln()).exp())
        .sum();
    if deriv.abs() > f64::EPSILON {
        x -= eval(x) / deriv;
    }
    x
}

/// Geometric mean cost per vertex: (product of factors)^(1/size).
pub fn vertex_cost(factors: &[f64], set_size: usize) -> f64 {
    assert!(set_size >= 1, "vertex cost needs a nonempty set");
    let log_sum: f64 = factors.iter().map(|f| f.ln()).sum();
    (log_sum / set_size as f64).exp()
}

/// Worst-case vertex cost of the closed-neighbourhood rule with x outside
/// neighbours: (3 * 1.3645^(2x))^(1/(3+3x)).
pub fn rule1_cost(x: f64) -> f64 {
    vertex_cost_f(&[3.0, CSP_FACTOR.powf(2.0 * x)], 3.0 + 3.0 * x)
}

fn vertex_cost_f(factors: &[f64], size: f64) -> f64 {
    let log_sum: f64 = factors.iter().map(|f| f.ln()).sum();
    (log_sum / size).exp()
}

/// Smallest x with `rule1_cost(x) = 1.3`; the rule is only applied beyond
/// it, so its cost stays below 1.3.
pub fn rule1_crossover() -> f64 {
    let mut lo = 0.0f64;
    let mut hi = 10.0f64;
    debug_assert!(rule1_cost(lo) > 1.3 && rule1_cost(hi) < 1.3);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if rule1_cost(mid) > 1.3 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Branching root and comparison value for one minimum degree.
#[derive(Debug, Clone, PartialEq)]
pub struct RootReport {
    pub delta: usize,
    /// Positive root of x^(delta+2) - x^(delta+1) - 6.
    pub lambda: f64,
    /// Dominating-set bound 3^((1+ln(delta+1))/(1+delta)).
    pub mu: f64,
    /// Weight equalizing the two worst-case branching factors at lambda.
    pub w2: f64,
}

/// Residual of the defining polynomial at `x`, computed in log space so
/// large exponents stay finite.
pub fn lambda_poly_residual(delta: usize, x: f64) -> f64 {
    let pow = ((delta as f64 + 1.0) * x.ln()).exp();
    pow * (x - 1.0) - 6.0
}

/// Solves for lambda by bisection on (1, 3] plus a Newton polish, and
/// evaluates mu and the equalizing weight. The two closed forms for the
/// weight must agree at the root.
pub fn lambda_mu(delta: usize) -> RootReport {
    assert!(delta >= 1, "minimum degree must be positive");
    let d = delta as f64;
    // g(x) = (delta+1) ln x + ln(x-1) - ln 6 shares the root and is
    // monotone increasing on (1, inf)
    let g = |x: f64| (d + 1.0) * x.ln() + (x - 1.0).ln() - 6.0f64.ln();
    let mut lo = 1.0f64 + 1e-15;
    let mut hi = 3.0f64;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut lambda = 0.5 * (lo + hi);
    for _ in 0..3 {
        let deriv = (d + 1.0) / lambda + 1.0 / (lambda - 1.0);
        lambda -= g(lambda) / deriv;
    }
    let mu = (3.0f64.ln() * (1.0 + (d + 1.0).ln()) / (1.0 + d)).exp();
    let ln_l = lambda.ln();
    let w2_a = 1.0 + (1.0 - 3.0f64.ln() / ln_l) / d;
    let w2_b = (2.0 / (lambda - 1.0)).ln() / (d * ln_l);
    assert!(
        (w2_a - w2_b).abs() < 1e-8,
        "weight formulas disagree at delta = {delta}: {w2_a} vs {w2_b}"
    );
    RootReport {
        delta,
        lambda,
        mu,
        w2: w2_a,
    }
}

/// The minimum degrees tabulated in the analysis.
pub const TABLE_DELTAS: [usize; 9] = [3, 15, 25, 42, 50, 75, 100, 642, 8703];

/// Reports for every tabulated minimum degree.
pub fn table1() -> Vec<RootReport> {
    TABLE_DELTAS.iter().map(|&d| lambda_mu(d)).collect()
}
