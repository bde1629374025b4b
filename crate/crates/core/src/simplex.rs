//! Dense two-phase simplex for small linear programs in equality form.
//!
//! Solves `min c^T x` subject to `A x = b`, `x >= 0`, and reports the
//! simplex multipliers `y` (with `A^T y <= c` at optimality), which the
//! callers use to read off the solution of the dual program.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub duals: Vec<f64>,
    /// Basic columns at the optimum, one per row; `None` when an
    /// artificial column could not be driven out.
    pub basis: Option<Vec<usize>>,
    pub iterations: usize,
}

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-12;

struct Tableau {
    rows: usize,
    cols: usize,
    /// `(rows + 1) x (cols + 1)`, row-major; the last row holds reduced
    /// costs and the last column the right-hand side.
    t: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * (self.cols + 1) + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.cols)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.cols + 1;
        let p = self.t[r * w + c];
        for j in 0..w {
            self.t[r * w + j] /= p;
        }
        let prow: Vec<f64> = self.t[r * w..(r + 1) * w].to_vec();
        for i in 0..=self.rows {
            if i == r {
                continue;
            }
            let factor = self.t[i * w + c];
            if factor != 0.0 {
                for (j, pv) in prow.iter().enumerate() {
                    if *pv != 0.0 {
                        self.t[i * w + j] -= factor * pv;
                    }
                }
                self.t[i * w + c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations on the current objective row. Columns at or
    /// beyond `enter_limit` never enter the basis.
    fn optimize(
        &mut self,
        enter_limit: usize,
        max_iter: usize,
        floor: f64,
        phase_one: bool,
        iters: &mut usize,
    ) -> Result<()> {
        let obj = self.rows;
        let mut bland = false;
        let mut stall = 0usize;
        let mut last = f64::INFINITY;
        loop {
            if *iters >= max_iter {
                return Err(Error::Solver(format!("simplex iteration cap {max_iter} reached")));
            }
            let scale = (0..enter_limit)
                .fold(f64::MIN_POSITIVE, |m, j| m.max(self.at(obj, j).abs()))
                .mul_add(COST_TOL, floor);
            let mut enter = None;
            let mut best = -scale;
            for j in 0..enter_limit {
                let r = self.at(obj, j);
                if r < best {
                    enter = Some(j);
                    if bland {
                        break;
                    }
                    best = r;
                }
            }
            let Some(c) = enter else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64, f64)> = None;
            for i in 0..self.rows {
                let a = self.at(i, c);
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i).max(0.0) / a;
                    leave = match leave {
                        None => Some((i, ratio, a)),
                        Some((bi, br, ba)) => {
                            let tie = (ratio - br).abs() <= 1e-12 * br.max(1e-300);
                            let better = if ratio < br && !tie {
                                true
                            } else if tie {
                                if bland {
                                    self.basis[i] < self.basis[bi]
                                } else {
                                    a > ba
                                }
                            } else {
                                false
                            };
                            if better {
                                Some((i, ratio, a))
                            } else {
                                Some((bi, br, ba))
                            }
                        }
                    };
                }
            }
            let Some((r, _, _)) = leave else {
                if phase_one {
                    // the phase I objective is bounded below; this is noise
                    return Ok(());
                }
                return Err(Error::Solver("linear program is unbounded".into()));
            };
            self.pivot(r, c);
            *iters += 1;
            let now = -self.rhs(obj);
            if now < last - 1e-14 * last.abs().max(1.0) {
                stall = 0;
                last = now;
            } else {
                stall += 1;
                if stall > 2 * self.rows + 20 {
                    bland = true;
                }
            }
        }
    }
}

/// Minimizes `c^T x` subject to `A x = b`, `x >= 0`.
pub fn minimize(c: &[f64], a: &[Vec<f64>], b: &[f64], max_iter: usize) -> Result<LpSolution> {
    minimize_with_floor(c, a, b, max_iter, 0.0)
}

/// As [`minimize`], treating reduced costs above `-cost_floor` as
/// nonnegative in phase II. Callers whose costs carry rounding noise pass
/// the noise level here.
pub fn minimize_with_floor(
    c: &[f64],
    a: &[Vec<f64>],
    b: &[f64],
    max_iter: usize,
    cost_floor: f64,
) -> Result<LpSolution> {
    minimize_from(c, a, b, max_iter, cost_floor, &[])
}

/// As [`minimize_with_floor`], first pivoting the columns of `start` into
/// the basis. When they form a feasible basis phase I is skipped; otherwise
/// the solver falls back to the artificial start.
pub fn minimize_from(
    c: &[f64],
    a: &[Vec<f64>],
    b: &[f64],
    max_iter: usize,
    cost_floor: f64,
    start: &[usize],
) -> Result<LpSolution> {
    let m = a.len();
    let n = c.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidParameter(
            "inconsistent linear program dimensions".into(),
        ));
    }
    let cols = n + m;
    let w = cols + 1;
    let mut t = vec![0.0; (m + 1) * w];
    let mut sign = vec![1.0; m];
    for i in 0..m {
        if b[i] < 0.0 {
            sign[i] = -1.0;
        }
        for j in 0..n {
            t[i * w + j] = sign[i] * a[i][j];
        }
        t[i * w + n + i] = 1.0;
        t[i * w + cols] = sign[i] * b[i];
    }
    // phase I: minimize the sum of artificials
    for i in 0..m {
        for j in 0..n {
            t[m * w + j] -= t[i * w + j];
        }
        t[m * w + cols] -= t[i * w + cols];
    }
    let mut tab = Tableau {
        rows: m,
        cols,
        t,
        basis: (n..n + m).collect(),
    };
    let mut iters = 0;
    let mut crashed = false;
    if start.len() == m && start.iter().all(|&j| j < n) {
        let saved = (tab.t.clone(), tab.basis.clone());
        let mut ok = true;
        for &j in start {
            let row = (0..m)
                .filter(|&i| tab.basis[i] >= n)
                .max_by(|&p, &q| tab.at(p, j).abs().total_cmp(&tab.at(q, j).abs()));
            match row {
                Some(r) if tab.at(r, j).abs() > 1e-9 => tab.pivot(r, j),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && (0..m).all(|i| tab.rhs(i) >= -1e-12) {
            for i in 0..m {
                let v = tab.rhs(i).max(0.0);
                tab.t[i * w + cols] = v;
            }
            crashed = true;
        } else {
            (tab.t, tab.basis) = saved;
        }
    }
    if !crashed {
        tab.optimize(n, max_iter, 0.0, true, &mut iters)?;
    }
    let infeas = if crashed { 0.0 } else { -tab.rhs(m) };
    let bnorm: f64 = b.iter().map(|v| v.abs()).sum();
    if infeas > 1e-9 * (1.0 + bnorm) {
        return Err(Error::Solver(format!(
            "linear program is infeasible (residual {infeas:e})"
        )));
    }
    // drive remaining artificials out of the basis where possible
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| tab.at(i, j).abs() > 1e-9) {
                tab.pivot(i, j);
            }
        }
    }
    // phase II objective row
    for j in 0..=cols {
        tab.t[m * w + j] = if j < n { c[j] } else { 0.0 };
    }
    for i in 0..m {
        let bj = tab.basis[i];
        let cb = if bj < n { c[bj] } else { 0.0 };
        if cb != 0.0 {
            for j in 0..=cols {
                let v = tab.t[i * w + j];
                tab.t[m * w + j] -= cb * v;
            }
        }
    }
    tab.optimize(n, max_iter, cost_floor, false, &mut iters)?;
    let mut x = vec![0.0; n];
    for i in 0..m {
        if tab.basis[i] < n {
            x[tab.basis[i]] = tab.rhs(i).max(0.0);
        }
    }
    let objective = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    let duals = (0..m).map(|i| -tab.at(m, n + i) * sign[i]).collect();
    let basis = tab.basis.iter().all(|&j| j < n).then(|| tab.basis.clone());
    Ok(LpSolution {
        x,
        objective,
        duals,
        basis,
        iterations: iters,
    })
}
