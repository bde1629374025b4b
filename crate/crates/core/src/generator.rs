//! The generating polynomial `P_n`: unit integral, nonnegative derivatives
//! up to order `r`, and second-moment deficiency of order `n^-2`.
//!
//! With `m = ceil(n / 8r)` and `Q = tau_m^{4r}` restricted to `[0, 1]`,
//! `P = lambda (r-1)! ∫^r Q` (r-fold antiderivative from 0) where
//! `lambda = r / ∫ (1-t)^r Q`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{PolyJson, Polynomial};
use crate::scalar::{factorial, Float, Scalar, DEFAULT_PRECISION_BITS};
use crate::special::tau;

/// Largest precision tried by [`build_generator_auto`].
pub const MAX_PRECISION_BITS: u32 = 1024;
/// Grid used for the derivative sign checks.
pub const SIGN_GRID: usize = 2048;

#[derive(Clone, Debug)]
pub struct GeneratorPoly {
    pub n: usize,
    pub r: usize,
    pub m: usize,
    pub precision_bits: u32,
    /// `tau_m^{4r}`, monomial basis.
    pub q: Polynomial<Float>,
    pub lambda_n: Float,
    /// Monomial basis, degree `4r(m-1) + r`.
    pub p: Polynomial<Float>,
    /// `∫_0^1 P`.
    pub integral: Float,
    /// `delta_mu = 1 - ∫ x^mu P` for `mu = 1..=4`.
    pub moment_deficiency: BTreeMap<usize, Float>,
    /// Per `nu = 0..=r`: the grid minimum of `P^(nu)` divided by its grid sup-norm.
    pub derivative_min_rel: Vec<f64>,
    pub tau_remainder: Float,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub n: usize,
    pub r: usize,
    pub m: usize,
    pub degree: usize,
    pub precision_bits: u32,
    pub lambda_n: String,
    pub integral: String,
    pub moment_deficiency: BTreeMap<String, String>,
    pub derivative_min_rel: Vec<f64>,
    pub tau_remainder: String,
    pub q: PolyJson,
    pub p: PolyJson,
}

/// `∫_0^1 x^mu p(x) dx`, exact in the coefficients.
pub fn moment<S: Scalar>(p: &Polynomial<S>, mu: usize) -> S {
    p.moment(mu)
}

/// `1 - ∫ x^mu P`.
pub fn deficiency<S: Scalar>(p: &Polynomial<S>, mu: usize) -> S {
    S::one(p.ctx()) - p.moment(mu)
}

fn precision_err(bits: u32, reason: String) -> Error {
    Error::Precision { bits, reason }
}

/// Builds `P_n` at a fixed precision and verifies every invariant.
pub fn build_generator(n: usize, r: usize, bits: u32) -> Result<GeneratorPoly> {
    if r == 0 {
        return Err(Error::InvalidParameter(
            "generator order r must be at least 1".into(),
        ));
    }
    if n <= 8 * r {
        return Err(Error::Regime { n, bound: 8 * r });
    }
    if bits < 53 {
        return Err(Error::InvalidParameter(format!("precision {bits} below 53 bits")));
    }
    let ctx = bits;
    let m = n.div_ceil(8 * r);
    let t = tau::<Float>(m, &ctx)?;
    let q = t.poly.pow(4 * r)?;

    let one_minus = Polynomial::monomial(vec![Float::with_val(bits, 1), Float::with_val(bits, -1)], &ctx);
    let weighted = q.mul(&one_minus.pow(r)?)?;
    let denom = weighted.integrate_01();
    if !(denom > 0) {
        return Err(precision_err(bits, "∫(1-t)^r Q is not positive".into()));
    }
    let lambda_n = Float::with_val(bits, r) / denom;

    let mut p = q.clone();
    for _ in 0..r {
        p = p.antidifferentiate_from_zero();
    }
    let scale = lambda_n.clone() * factorial::<Float>(r - 1, &ctx);
    let p = p.scale(&scale);

    let degree = p.degree();
    if degree > n {
        return Err(Error::DegreeOverflow { degree, cap: n });
    }

    let integral = p.integrate_01();
    let err = (integral.clone() - 1u32).abs();
    if err > 1e-20 {
        return Err(precision_err(
            bits,
            format!("∫P deviates from 1 by {:e}", err.to_f64()),
        ));
    }

    let mut derivative_min_rel = Vec::with_capacity(r + 1);
    for nu in 0..=r {
        let d = p.differentiate(nu);
        let mut lo = f64::INFINITY;
        let mut sup = 0f64;
        let mut lo_exact = Float::with_val(bits, 0);
        for i in 0..SIGN_GRID {
            let x = Float::with_val(bits, i) / (SIGN_GRID as u32 - 1);
            let v = d.eval_unchecked(&x);
            let vf = v.to_f64();
            sup = sup.max(vf.abs());
            if vf < lo {
                lo = vf;
                lo_exact = v;
            }
        }
        let rel = if sup > 0.0 { lo_exact.to_f64() / sup } else { 0.0 };
        if rel < -1e-15 {
            return Err(precision_err(
                bits,
                format!("P^({nu}) dips to {rel:e} of its sup-norm on the grid"),
            ));
        }
        derivative_min_rel.push(rel);
    }

    let mut moment_deficiency = BTreeMap::new();
    for mu in 1..=4 {
        let d = deficiency(&p, mu);
        if !(d > 0) {
            return Err(precision_err(
                bits,
                format!("moment deficiency delta_{mu} = {:e} is not positive", d.to_f64()),
            ));
        }
        moment_deficiency.insert(mu, d);
    }

    Ok(GeneratorPoly {
        n,
        r,
        m,
        precision_bits: bits,
        q,
        lambda_n,
        p,
        integral,
        moment_deficiency,
        derivative_min_rel,
        tau_remainder: t.remainder,
    })
}

/// Builds at the default precision and doubles it on invariant failure, up
/// to [`MAX_PRECISION_BITS`].
pub fn build_generator_auto(n: usize, r: usize) -> Result<GeneratorPoly> {
    build_generator_from(n, r, DEFAULT_PRECISION_BITS)
}

/// As [`build_generator_auto`] starting from `bits`.
pub fn build_generator_from(n: usize, r: usize, bits: u32) -> Result<GeneratorPoly> {
    let mut bits = bits.max(53);
    loop {
        match build_generator(n, r, bits) {
            Err(Error::Precision { .. }) if bits < MAX_PRECISION_BITS => {
                bits = (bits * 2).min(MAX_PRECISION_BITS);
            }
            other => return other,
        }
    }
}

impl GeneratorPoly {
    pub fn delta(&self, mu: usize) -> Float {
        self.moment_deficiency
            .get(&mu)
            .cloned()
            .unwrap_or_else(|| deficiency(&self.p, mu))
    }

    /// `alpha = 1 - ∫ t^2 P`, the second-moment coefficient of the induced operator.
    pub fn alpha(&self) -> Float {
        self.delta(2)
    }

    pub fn to_json(&self) -> GeneratorJson {
        GeneratorJson {
            n: self.n,
            r: self.r,
            m: self.m,
            degree: self.p.degree(),
            precision_bits: self.precision_bits,
            lambda_n: self.lambda_n.to_decimal(),
            integral: self.integral.to_decimal(),
            moment_deficiency: self
                .moment_deficiency
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_decimal()))
                .collect(),
            derivative_min_rel: self.derivative_min_rel.clone(),
            tau_remainder: self.tau_remainder.to_decimal(),
            q: self.q.to_json(),
            p: self.p.to_json(),
        }
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Slope of `ln delta_2(n)` against `ln n`, together with the `delta_2` values.
pub fn deficiency_slope(r: usize, n_list: &[usize]) -> Result<(f64, Vec<f64>)> {
    if n_list.len() < 2 || n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "n list must be strictly increasing with at least two entries".into(),
        ));
    }
    let mut deltas = Vec::with_capacity(n_list.len());
    for &n in n_list {
        deltas.push(build_generator_auto(n, r)?.delta(2).to_f64());
    }
    let xs: Vec<f64> = n_list.iter().map(|&n| n as f64).collect();
    Ok((loglog_slope(&xs, &deltas), deltas))
}
