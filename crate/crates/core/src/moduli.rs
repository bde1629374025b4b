//! Classical and Ditzian-Totik moduli of smoothness on `[0, 1]`, and the
//! pointwise error envelopes they are paired with.
//!
//! The supremum over `0 < h <= t` and over `x` is taken on finite grids, so
//! every estimate is a lower bound of the true modulus. The grids are part
//! of the result.

use serde::Serialize;

use crate::error::{Error, Result};

/// The step weight `phi^lambda(x) = (x(1-x))^{lambda/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StepWeight {
    pub lambda: f64,
}

impl StepWeight {
    pub fn new(lambda: f64) -> Self {
        Self { lambda }
    }

    pub fn phi(x: f64) -> f64 {
        (x * (1.0 - x)).max(0.0).sqrt()
    }

    pub fn eval(&self, x: f64) -> f64 {
        if self.lambda == 0.0 {
            return 1.0;
        }
        (x * (1.0 - x)).max(0.0).powf(self.lambda / 2.0)
    }
}

/// Slack allowed when deciding whether `x ± k delta / 2` lies in `[0, 1]`.
const EDGE_TOL: f64 = 1e-15;

/// The `k`-th symmetric difference
/// `sum_i C(k,i) (-1)^{k-i} f(x - k delta/2 + i delta)`, or 0 when
/// `x ± k delta/2` leaves `[0, 1]`.
pub fn sym_diff(f: &dyn Fn(f64) -> f64, k: usize, delta: f64, x: f64) -> f64 {
    let half = k as f64 * delta / 2.0;
    let (lo, hi) = (x - half, x + half);
    if lo < -EDGE_TOL || hi > 1.0 + EDGE_TOL {
        return 0.0;
    }
    let mut binom = 1.0f64;
    let mut sum = 0.0;
    for i in 0..=k {
        let sign = if (k - i) % 2 == 0 { 1.0 } else { -1.0 };
        let arg = if i == 0 {
            lo
        } else if i == k {
            hi
        } else {
            lo + i as f64 * delta
        };
        sum += sign * binom * f(arg.clamp(0.0, 1.0));
        binom = binom * (k - i) as f64 / (i + 1) as f64;
    }
    sum
}

/// Grid sizes for the double supremum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModulusGrid {
    /// Geometric h-grid `t, t r, t r^2, ...` with ratio `r = 2^{-1/4}`.
    pub h_points: usize,
    /// Chebyshev-Lobatto x-grid.
    pub x_points: usize,
}

impl Default for ModulusGrid {
    fn default() -> Self {
        Self {
            h_points: 64,
            x_points: 1025,
        }
    }
}

impl ModulusGrid {
    pub fn h_grid(&self, t: f64) -> Vec<f64> {
        (0..self.h_points)
            .map(|i| t * (-(i as f64) / 4.0).exp2())
            .collect()
    }

    pub fn x_grid(&self) -> Vec<f64> {
        let m = (self.x_points.max(2) - 1) as f64;
        (0..self.x_points.max(2))
            .map(|j| {
                let v = 0.5 * (1.0 - (std::f64::consts::PI * j as f64 / m).cos());
                v.clamp(0.0, 1.0)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModulusEstimate {
    pub k: usize,
    pub lambda: f64,
    pub t: f64,
    pub value: f64,
    /// Location of the maximum (`h`, `x`); zeros when the value is 0.
    pub argmax_h: f64,
    pub argmax_x: f64,
    pub h_grid_size: usize,
    pub x_grid_size: usize,
}

/// Classical modulus `omega_k(f, t)`.
pub fn omega(f: &dyn Fn(f64) -> f64, k: usize, t: f64) -> ModulusEstimate {
    omega_dt(f, k, 0.0, t)
}

/// `omega_k^{phi^lambda}(f, t)` on the default grids.
pub fn omega_dt(f: &dyn Fn(f64) -> f64, k: usize, lambda: f64, t: f64) -> ModulusEstimate {
    omega_dt_on(f, k, lambda, t, &ModulusGrid::default())
}

/// `omega_k^{phi^lambda}(f, t)` on the given grids.
///
/// Besides the fixed x-grid, every h contributes the two points where the
/// stencil `x ± k h phi^lambda(x) / 2` first fits inside `[0, 1]`; for
/// endpoint-singular functions the supremum sits there.
pub fn omega_dt_on(
    f: &dyn Fn(f64) -> f64,
    k: usize,
    lambda: f64,
    t: f64,
    grid: &ModulusGrid,
) -> ModulusEstimate {
    let w = StepWeight::new(lambda);
    let xs = grid.x_grid();
    let mut best = (0.0f64, 0.0, 0.0);
    let mut visit = |h: f64, x: f64| {
        let v = sym_diff(f, k, h * w.eval(x), x).abs();
        if v > best.0 {
            best = (v, h, x);
        }
    };
    if t > 0.0 {
        for h in grid.h_grid(t) {
            for &x in &xs {
                visit(h, x);
            }
            if k > 0 {
                if let Some(x0) = first_feasible(k, h, lambda) {
                    visit(h, x0);
                    visit(h, 1.0 - x0);
                }
            }
        }
    }
    ModulusEstimate {
        k,
        lambda,
        t,
        value: best.0,
        argmax_h: best.1,
        argmax_x: best.2,
        h_grid_size: grid.h_points,
        x_grid_size: grid.x_points,
    }
}

/// Smallest `x` in `(0, 1/2]` with `x = k h phi^lambda(x) / 2`, if the
/// stencil fits anywhere in the left half and not everywhere.
fn first_feasible(k: usize, h: f64, lambda: f64) -> Option<f64> {
    let c = k as f64 * h / 2.0;
    // u(x) = x^{1-lambda/2} - c (1-x)^{lambda/2} is increasing on (0, 1/2]
    let u = |x: f64| x.powf(1.0 - lambda / 2.0) - c * (1.0 - x).powf(lambda / 2.0);
    if u(0.5) <= 0.0 || u(0.0) >= 0.0 {
        return None;
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if u(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(hi)
}

/// Least-squares slope of `log y` against `log t` for the modulus of `f`
/// over the given `t` values.
pub fn fitted_exponent(f: &dyn Fn(f64) -> f64, k: usize, lambda: f64, ts: &[f64]) -> f64 {
    let ys: Vec<f64> = ts.iter().map(|&t| omega_dt(f, k, lambda, t).value).collect();
    crate::generator::loglog_slope(ts, &ys)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeKind {
    /// `1 + phi^{2-lambda}(x) / (h^2 n^2 (phi(x) + 1/n)^lambda)`.
    Theorem11,
    /// `n^{-1} phi^{1-lambda/2}(x) (phi(x) + 1/n)^{-lambda/2}`.
    Cor13,
    /// The two-branch simplification of the `Cor13` argument.
    DeltaNLambda,
    /// `n^{-1/2} phi^{1-lambda/2}(x) (phi(x) + n^{-1/2})^{-lambda/2}`.
    BernsteinGamma,
}

impl EnvelopeKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "theorem_1_1" => Ok(Self::Theorem11),
            "cor_1_3" => Ok(Self::Cor13),
            "delta_n_lambda" => Ok(Self::DeltaNLambda),
            "bernstein_gamma" => Ok(Self::BernsteinGamma),
            _ => Err(Error::Parse(format!("unknown envelope kind {s:?}"))),
        }
    }
}

/// The envelope quantity without its unknown constant. `h` is required for
/// [`EnvelopeKind::Theorem11`]; `h = inf` gives 1.
pub fn bound_envelope(kind: EnvelopeKind, n: usize, lambda: f64, x: f64, h: Option<f64>) -> Result<f64> {
    if !(0.0..2.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!(
            "envelope needs 0 <= lambda < 2, got {lambda}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("envelope needs n >= 1".into()));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain { x });
    }
    let nf = n as f64;
    let phi = StepWeight::phi(x);
    let pw = |b: f64, e: f64| if e == 0.0 { 1.0 } else { b.powf(e) };
    Ok(match kind {
        EnvelopeKind::Theorem11 => {
            let h = h.ok_or_else(|| Error::InvalidParameter("theorem_1_1 envelope needs h".into()))?;
            if !(h > 0.0) {
                return Err(Error::InvalidParameter(format!("h must be positive, got {h}")));
            }
            1.0 + pw(phi, 2.0 - lambda) / (h * h * nf * nf * pw(phi + 1.0 / nf, lambda))
        }
        EnvelopeKind::Cor13 => pw(phi, 1.0 - lambda / 2.0) * pw(phi + 1.0 / nf, -lambda / 2.0) / nf,
        EnvelopeKind::DeltaNLambda => {
            let edge = 1.0 / (nf * nf);
            if x <= edge || x >= 1.0 - edge {
                pw(phi / nf, 1.0 - lambda / 2.0)
            } else {
                pw(phi, 1.0 - lambda) / nf
            }
        }
        EnvelopeKind::BernsteinGamma => {
            let s = nf.sqrt().recip();
            s * pw(phi, 1.0 - lambda / 2.0) * pw(phi + s, -lambda / 2.0)
        }
    })
}
