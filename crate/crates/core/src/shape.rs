//! Numerical k-monotonicity checks.

use serde::Serialize;

use crate::error::Result;
use crate::moduli::sym_diff;
use crate::poly::{Basis, Polynomial};
use crate::scalar::Scalar;

/// Default relative tolerance; the threshold is `tol * ||f||_grid`.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Points used for polynomial sign sampling.
pub const POLY_SAMPLES: usize = 4096;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// `value` is `Delta^k_delta(f, x)` for function checks and `p^(k)(x)`
    /// for polynomial checks (`delta` is then absent).
    Fail {
        x: f64,
        delta: Option<f64>,
        value: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShapeReport {
    pub k: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub x_grid_size: usize,
    pub delta_grid_size: usize,
    pub tol: f64,
    /// Absolute threshold actually applied: `tol * scale`.
    pub threshold: f64,
    /// Grid sup-norm of the input.
    pub scale: f64,
    /// Polynomial checks only: every Bernstein coefficient of `p^(k)` is
    /// nonnegative, which proves the property on all of `[0, 1]`.
    pub bernstein_certificate: Option<bool>,
    /// Smallest tested value.
    pub min_value: f64,
}

impl ShapeReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Checks `Delta^k_delta(f, x) >= -tol ||f||` over a product grid.
///
/// The delta-grid is geometric with ratio `2^{-1/2}` starting at `1/k`; for
/// each delta the x-grid is uniform over the feasible interval
/// `[k delta/2, 1 - k delta/2]`, endpoints included.
pub fn check_k_monotone_fn(
    f: &dyn Fn(f64) -> f64,
    k: usize,
    x_grid_size: usize,
    delta_grid_size: usize,
    tol: f64,
) -> ShapeReport {
    let nx = x_grid_size.max(2);
    let scale = (0..nx)
        .map(|i| f(i as f64 / (nx - 1) as f64).abs())
        .fold(0.0, f64::max);
    let threshold = tol * scale;
    let mut min_value = f64::INFINITY;
    let mut witness = None;
    let deltas: Vec<f64> = if k == 0 {
        vec![0.0]
    } else {
        (0..delta_grid_size.max(1))
            .map(|j| (-(j as f64) / 2.0).exp2() / k as f64)
            .collect()
    };
    'outer: for &delta in &deltas {
        let half = k as f64 * delta / 2.0;
        let (a, b) = (half, 1.0 - half);
        for i in 0..nx {
            let x = if i == nx - 1 {
                b
            } else {
                a + (b - a) * i as f64 / (nx - 1) as f64
            };
            let v = sym_diff(f, k, delta, x);
            min_value = min_value.min(v);
            if v < -threshold {
                witness = Some(Verdict::Fail {
                    x,
                    delta: Some(delta),
                    value: v,
                });
                break 'outer;
            }
        }
    }
    ShapeReport {
        k,
        verdict: witness.unwrap_or(Verdict::Pass),
        x_grid_size: nx,
        delta_grid_size: deltas.len(),
        tol,
        threshold,
        scale,
        bernstein_certificate: None,
        min_value,
    }
}

/// Checks `p^(k) >= -tol ||p||` on `[0, 1]` (`p >= ...` for `k = 0`).
///
/// The derivative is formed in the polynomial's own backend, sampled in
/// `f64` at 4096 points, and any sample below the threshold is re-evaluated
/// in the backend before it is reported.
pub fn check_k_monotone_poly<S: Scalar>(p: &Polynomial<S>, k: usize, tol: f64) -> Result<ShapeReport> {
    let ctx = p.ctx().clone();
    let pb = match p.basis() {
        Basis::Bernstein(_) => p.clone(),
        _ => p.to_bernstein(p.degree().max(k))?,
    };
    let d = pb.differentiate(k);
    let certificate = d.coeffs().iter().all(|c| *c >= S::zero(&ctx));
    let pf = pb.to_f64();
    let df = d.to_f64();
    let xs: Vec<f64> = (0..POLY_SAMPLES)
        .map(|i| i as f64 / (POLY_SAMPLES - 1) as f64)
        .collect();
    let scale = xs
        .iter()
        .map(|&x| pf.eval_unchecked(&x).abs())
        .fold(0.0, f64::max);
    let threshold = tol * scale;
    let mut min_value = f64::INFINITY;
    let mut witness = None;
    for &x in &xs {
        let mut v = df.eval_unchecked(&x);
        if v < -threshold {
            v = d.eval_unchecked(&S::from_f64(x, &ctx)).to_f64();
        }
        min_value = min_value.min(v);
        if v < -threshold && witness.is_none() {
            witness = Some(Verdict::Fail {
                x,
                delta: None,
                value: v,
            });
        }
    }
    Ok(ShapeReport {
        k,
        verdict: witness.unwrap_or(Verdict::Pass),
        x_grid_size: POLY_SAMPLES,
        delta_grid_size: 0,
        tol,
        threshold,
        scale,
        bernstein_certificate: Some(certificate),
        min_value,
    })
}
