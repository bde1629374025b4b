//! Discretized best uniform approximation, with and without shape
//! constraints, by linear programming.
//!
//! The unknowns are the shifted-Chebyshev coefficients of `p` and the level
//! `t`. The LP `min t` subject to `|f(x_i) - p(x_i)| <= t` (plus
//! `p^(q)(y_j) >= 0`) is solved through its dual, which is in equality
//! form with nonnegative variables; the primal solution is read off the
//! simplex multipliers.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moduli::omega_dt;
use crate::poly::Polynomial;
use crate::scalar::{Float, DEFAULT_PRECISION_BITS};
use crate::shape::{check_k_monotone_poly, ShapeReport, DEFAULT_TOL};
use crate::simplex;

#[derive(Clone, Debug, Serialize)]
pub struct ApproxResult {
    pub n: usize,
    /// Shape order, `None` when unconstrained.
    pub q: Option<usize>,
    /// The minimizer in the shifted-Chebyshev basis.
    #[serde(skip)]
    pub p: Polynomial<f64>,
    /// Max of `|f - p|` over the discretization nodes.
    pub error: f64,
    pub discretization: usize,
    pub constraint_grid: usize,
    pub iterations: usize,
    /// Alternating near-extrema of the residual on the discretization.
    pub equioscillation: usize,
    /// Dense post-validation of the shape constraint.
    pub shape: Option<ShapeReport>,
    /// Whether the constraint grid was refined after a failed validation.
    pub refined: bool,
}

/// Chebyshev-Lobatto nodes on `[0, 1]`, increasing.
pub fn chebyshev_nodes(count: usize) -> Vec<f64> {
    let m = (count.max(2) - 1) as f64;
    (0..count.max(2))
        .map(|j| (0.5 * (1.0 - (std::f64::consts::PI * j as f64 / m).cos())).clamp(0.0, 1.0))
        .collect()
}

/// `d^q/dx^q T_k(2x - 1)` for `k = 0..=n`.
pub fn shifted_chebyshev_derivatives(n: usize, q: usize, x: f64) -> Vec<f64> {
    let u = 2.0 * x - 1.0;
    // rows[s][k] = T_k^{(s)}(u)
    let mut prev: Vec<f64> = (0..=n).map(|_| 0.0).collect();
    let mut cur = vec![0.0; n + 1];
    for s in 0..=q {
        cur[0] = if s == 0 { 1.0 } else { 0.0 };
        if n >= 1 {
            cur[1] = match s {
                0 => u,
                1 => 1.0,
                _ => 0.0,
            };
        }
        for k in 1..n {
            let extra = if s > 0 { 2.0 * s as f64 * prev[k] } else { 0.0 };
            cur[k + 1] = 2.0 * u * cur[k] + extra - cur[k - 1];
        }
        if s < q {
            std::mem::swap(&mut prev, &mut cur);
        }
    }
    let chain = (2.0f64).powi(q as i32);
    cur.into_iter().map(|v| v * chain).collect()
}

/// Number of sign alternations plus one among the residuals with
/// `|r| >= 0.99 e`, in node order.
pub fn equioscillation_count(residuals: &[f64], e: f64) -> usize {
    let mut count = 0;
    let mut last = 0.0f64;
    for &r in residuals {
        if r.abs() >= 0.99 * e && e > 0.0 {
            let s = r.signum();
            if s != last {
                count += 1;
                last = s;
            }
        }
    }
    count
}

fn solve(
    f: &dyn Fn(f64) -> f64,
    n: usize,
    nodes: &[f64],
    constraint: Option<(usize, &[f64])>,
) -> Result<(Vec<f64>, usize)> {
    let big_n = nodes.len();
    let rows = n + 2;
    let fv: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    if let Some((i, _)) = fv.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::Domain { x: nodes[i] });
    }
    let basis_rows: Vec<Vec<f64>> = nodes
        .iter()
        .map(|&x| shifted_chebyshev_derivatives(n, 0, x))
        .collect();
    let shape_rows: Vec<Vec<f64>> = match constraint {
        Some((q, ys)) => ys
            .iter()
            .map(|&y| {
                let g = shifted_chebyshev_derivatives(n, q, y);
                let s = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                if s > 0.0 {
                    g.into_iter().map(|v| v / s).collect()
                } else {
                    g
                }
            })
            .filter(|g: &Vec<f64>| g.iter().any(|v| *v != 0.0))
            .collect(),
        None => Vec::new(),
    };
    // Work relative to the least-squares fit so that LP tolerances scale
    // with the residual rather than with f.
    let vander = DMatrix::from_fn(big_n, n + 1, |i, k| basis_rows[i][k]);
    let c0: Vec<f64> = vander
        .clone()
        .svd(true, true)
        .solve(&DVector::from_column_slice(&fv), 1e-14)
        .map_err(|e| Error::Solver(format!("least-squares start failed: {e}")))?
        .iter()
        .copied()
        .collect();
    let fit = &vander * DVector::from_column_slice(&c0);
    let rv: Vec<f64> = fv.iter().zip(fit.iter()).map(|(a, b)| a - b).collect();

    let vars = 2 * big_n + shape_rows.len();
    let mut a = vec![vec![0.0; vars]; rows];
    let mut c = vec![0.0; vars];
    for (i, row) in basis_rows.iter().enumerate() {
        for k in 0..=n {
            a[k][i] = row[k];
            a[k][big_n + i] = -row[k];
        }
        a[n + 1][i] = -1.0;
        a[n + 1][big_n + i] = -1.0;
        c[i] = rv[i];
        c[big_n + i] = -rv[i];
    }
    for (j, g) in shape_rows.iter().enumerate() {
        for k in 0..=n {
            a[k][2 * big_n + j] = -g[k];
        }
        // g . (c~ + c0) >= 0
        c[2 * big_n + j] = g.iter().zip(&c0).map(|(x, y)| x * y).sum();
    }
    let mut b = vec![0.0; rows];
    b[n + 1] = -1.0;
    // rounding level of the data: residuals below it are indistinguishable
    let fmax = fv.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = 8.0 * f64::EPSILON * fmax;
    // feasible start: u = v = 1/2 at one node, plus n more nodes at level 0
    let picks: Vec<usize> = (0..=n).map(|i| i * (big_n - 1) / n.max(1)).collect();
    let mut start = vec![picks[0], big_n + picks[0]];
    start.extend(picks[1..].iter().copied());
    let sol = simplex::minimize_from(&c, &a, &b, 200 * (rows + vars), floor, &start)?;
    let y = sol
        .basis
        .as_ref()
        .and_then(|basis| polish(&a, &c, basis))
        .unwrap_or(sol.duals);
    let coeffs = c0.iter().zip(&y).map(|(p, d)| p + d).collect();
    Ok((coeffs, sol.iterations))
}

/// Re-solves the active constraints of the optimal basis as a square
/// system, removing the drift accumulated in the tableau.
fn polish(a: &[Vec<f64>], c: &[f64], basis: &[usize]) -> Option<Vec<f64>> {
    let m = a.len();
    let mat = DMatrix::from_fn(m, m, |r, k| a[k][basis[r]]);
    let rhs = DVector::from_iterator(m, basis.iter().map(|&j| c[j]));
    let lu = mat.clone().lu();
    let mut y = lu.solve(&rhs)?;
    let resid = &rhs - &mat * &y;
    y += lu.solve(&resid)?;
    y.iter()
        .all(|v| v.is_finite())
        .then(|| y.iter().copied().collect())
}

fn finish(
    f: &dyn Fn(f64) -> f64,
    n: usize,
    q: Option<usize>,
    coeffs: Vec<f64>,
    nodes: &[f64],
    constraint_grid: usize,
    iterations: usize,
) -> ApproxResult {
    let p = Polynomial::chebyshev(coeffs, &());
    let residuals: Vec<f64> = nodes.iter().map(|&x| f(x) - p.eval_unchecked(&x)).collect();
    let error = residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    ApproxResult {
        n,
        q,
        equioscillation: equioscillation_count(&residuals, error),
        p,
        error,
        discretization: nodes.len(),
        constraint_grid,
        iterations,
        shape: None,
        refined: false,
    }
}

/// `E_n(f)` on `big_n` Chebyshev nodes (`big_n >= 4(n+1)`).
pub fn best_uniform(f: &dyn Fn(f64) -> f64, n: usize, big_n: usize) -> Result<ApproxResult> {
    if big_n < 4 * (n + 1) {
        return Err(Error::InvalidParameter(format!(
            "discretization {big_n} is below 4(n+1) = {}",
            4 * (n + 1)
        )));
    }
    let nodes = chebyshev_nodes(big_n);
    let (coeffs, iterations) = solve(f, n, &nodes, None)?;
    Ok(finish(f, n, None, coeffs, &nodes, 0, iterations))
}

/// Dense validation of `p^(q) >= 0` through the Bernstein form at the
/// default float precision.
pub fn validate_shape(p: &Polynomial<f64>, q: usize) -> Result<ShapeReport> {
    let bits = DEFAULT_PRECISION_BITS;
    let pf: Polynomial<Float> = p.convert_scalar(&bits);
    let pb = pf.to_bernstein(pf.degree_bound().max(q))?;
    check_k_monotone_poly(&pb, q, DEFAULT_TOL)
}

/// `E_n^{(q)}(f)`: best approximation by polynomials of degree `n` with
/// `p^(q) >= 0` (`p >= 0` for `q = 0`) on `m` constraint nodes.
///
/// The minimizer is validated densely; on failure the constraint grid is
/// doubled once and the problem re-solved.
pub fn best_qmonotone(
    f: &dyn Fn(f64) -> f64,
    q: usize,
    n: usize,
    big_n: usize,
    m: usize,
) -> Result<ApproxResult> {
    if big_n < 4 * (n + 1) {
        return Err(Error::InvalidParameter(format!(
            "discretization {big_n} is below 4(n+1) = {}",
            4 * (n + 1)
        )));
    }
    let nodes = chebyshev_nodes(big_n);
    let mut grid = m.max(2);
    let mut refined = false;
    loop {
        let ys = chebyshev_nodes(grid);
        let (coeffs, iterations) = solve(f, n, &nodes, Some((q, &ys)))?;
        let mut res = finish(f, n, Some(q), coeffs, &nodes, grid, iterations);
        let report = validate_shape(&res.p, q)?;
        let ok = report.passed();
        res.shape = Some(report);
        res.refined = refined;
        if ok || refined {
            return Ok(res);
        }
        refined = true;
        grid *= 2;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JacksonRatio {
    pub n: usize,
    pub q: usize,
    pub error: f64,
    pub modulus: f64,
    pub ratio: f64,
    /// The modulus vanished while the error did not.
    pub flagged: bool,
    /// The error is above the double-precision noise level of `f` on the
    /// discretization; below it the ratio carries no information.
    pub resolved: bool,
}

/// Errors at or below this multiple of `eps * ||f||` are rounding noise.
pub const RESOLUTION_FACTOR: f64 = 1e3;

/// Default grid sizes for a degree-`n` Jackson computation.
pub fn default_grids(n: usize) -> (usize, usize) {
    let big_n = (8 * (n + 1)).max(257);
    (big_n, big_n)
}

/// `E_n^{(q)}(f) / omega_2^phi(f, 1/n)`.
pub fn jackson_ratio(f: &dyn Fn(f64) -> f64, q: usize, n: usize) -> Result<JacksonRatio> {
    if n == 0 {
        return Err(Error::InvalidParameter("Jackson ratio needs n >= 1".into()));
    }
    let (big_n, m) = default_grids(n);
    let error = best_qmonotone(f, q, n, big_n, m)?.error;
    let fmax = chebyshev_nodes(big_n)
        .iter()
        .fold(0.0f64, |a, &x| a.max(f(x).abs()));
    let resolved = error > RESOLUTION_FACTOR * f64::EPSILON * fmax;
    let modulus = omega_dt(f, 2, 1.0, 1.0 / n as f64).value;
    let (ratio, flagged) = if modulus <= 1e-14 {
        if error <= 1e-12 {
            (0.0, false)
        } else {
            (f64::INFINITY, true)
        }
    } else {
        (error / modulus, false)
    };
    Ok(JacksonRatio {
        n,
        q,
        error,
        modulus,
        ratio,
        flagged,
        resolved,
    })
}
