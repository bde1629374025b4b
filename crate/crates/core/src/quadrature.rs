//! Gauss–Jacobi rules on `[0, 1]` for the symmetric weight `(t (1 - t))^a`.
//!
//! Starting nodes come from the Golub–Welsch eigenvalue problem in `f64`;
//! each node is then polished by Newton's method in the target backend so
//! the rule is accurate to the working precision. Rules are cached per
//! `(backend, context, order, a)`.

use std::any::Any;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::scalar::{RealScalar, Scalar};

/// Nodes and weights on `[0, 1]`. Weights are normalized to sum to one, so
/// `integrate` returns the mean of `f` under the probability density
/// proportional to `(t (1 - t))^a`.
#[derive(Clone, Debug)]
pub struct GaussRule<S: Scalar> {
    pub alpha: S,
    pub nodes: Vec<S>,
    pub weights: Vec<S>,
}

impl<S: Scalar> GaussRule<S> {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Highest polynomial degree integrated exactly.
    pub fn exactness(&self) -> usize {
        2 * self.nodes.len() - 1
    }

    pub fn integrate(&self, mut f: impl FnMut(&S) -> S) -> S {
        let ctx = self.alpha.ctx();
        let mut acc = S::zero(&ctx);
        for (t, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(t) * w;
        }
        acc
    }

    /// Nodes and weights of the composite rule over the pieces of `cuts`
    /// (sorted, starting at 0 and ending at 1). Only meaningful for the
    /// unweighted rule.
    pub fn composite(&self, cuts: &[S]) -> Vec<(S, S)> {
        let mut out = Vec::with_capacity(self.order() * cuts.len().saturating_sub(1));
        for w in cuts.windows(2) {
            let len = w[1].clone() - &w[0];
            if !(len > S::zero(&len.ctx())) {
                continue;
            }
            for (t, wt) in self.nodes.iter().zip(&self.weights) {
                out.push((w[0].clone() + len.clone() * t, len.clone() * wt));
            }
        }
        out
    }
}

type CacheKey = (&'static str, String, usize, String);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<dyn Any + Send + Sync>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<dyn Any + Send + Sync>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss–Legendre rule with `n` nodes on `[0, 1]`.
pub fn gauss_legendre<S: RealScalar>(n: usize, ctx: &S::Ctx) -> Result<Arc<GaussRule<S>>> {
    gauss_jacobi(n, &S::zero(ctx))
}

/// Gauss–Jacobi rule with `n` nodes for the weight `(t (1 - t))^a`, `a > -1`.
pub fn gauss_jacobi<S: RealScalar>(n: usize, a: &S) -> Result<Arc<GaussRule<S>>> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "quadrature needs at least one node".into(),
        ));
    }
    let ctx = a.ctx();
    if *a <= -S::one(&ctx) {
        return Err(Error::InvalidParameter(format!(
            "Jacobi exponent must exceed -1, got {}",
            a.to_f64()
        )));
    }
    let key = (S::backend_name(), format!("{ctx:?}"), n, a.to_decimal());
    if let Some(hit) = cache().lock().expect("quadrature cache").get(&key) {
        if let Ok(rule) = hit.clone().downcast::<GaussRule<S>>() {
            return Ok(rule);
        }
    }
    let rule = Arc::new(build_rule(n, a)?);
    cache()
        .lock()
        .expect("quadrature cache")
        .insert(key, rule.clone() as Arc<dyn Any + Send + Sync>);
    Ok(rule)
}

fn golub_welsch(n: usize, a: f64) -> Vec<f64> {
    if n == 1 {
        return vec![0.0];
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let kf = k as f64;
        let b = if k == 1 {
            1.0 / (2.0 * a + 3.0)
        } else {
            kf * (kf + 2.0 * a) / ((2.0 * kf + 2.0 * a + 1.0) * (2.0 * kf + 2.0 * a - 1.0))
        };
        m[(k, k - 1)] = b.sqrt();
        m[(k - 1, k)] = b.sqrt();
    }
    let mut x: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    x.sort_by(|p, q| p.total_cmp(q));
    x
}

/// `(P_n, P_n')` of the Jacobi polynomial `P_n^{(a,a)}` at `x` in `[-1, 1]`.
fn jacobi_with_derivative<S: RealScalar>(n: usize, a: &S, x: &S) -> (S, S) {
    let ctx = a.ctx();
    let one = S::one(&ctx);
    let two = S::from_i64(2, &ctx);
    let mut prev = one.clone();
    let mut cur = (a.clone() + &one) * x;
    for k in 2..=n {
        let kk = S::from_usize(k, &ctx);
        let s = kk.clone() * &two + a.clone() * &two; // 2k + 2a
        let c0 = two.clone() * &kk * (kk.clone() + a.clone() * &two) * (s.clone() - &two);
        let c1 = (s.clone() - &one) * &s * (s.clone() - &two);
        let c2 = two.clone() * (kk.clone() + a - &one) * (kk.clone() + a - &one) * &s;
        let next = (c1 * x * &cur - c2 * &prev) / c0;
        prev = cur;
        cur = next;
    }
    let nn = S::from_usize(n, &ctx);
    let s = nn.clone() * &two + a.clone() * &two;
    let na = nn.clone() + a;
    let num = -(nn * &s * x * &cur) + two * &na * &na * &prev;
    let den = s * (one - x.clone() * x);
    (cur, num / den)
}

fn build_rule<S: RealScalar>(n: usize, a: &S) -> Result<GaussRule<S>> {
    let ctx = a.ctx();
    let start = golub_welsch(n, a.to_f64());
    let tol = S::epsilon(&ctx) * S::from_i64(16, &ctx);
    let mut nodes = Vec::with_capacity(n);
    let mut raw_w = Vec::with_capacity(n);
    for x0 in start {
        let mut x = S::from_f64(x0, &ctx);
        let mut converged = false;
        for _ in 0..60 {
            let (p, dp) = jacobi_with_derivative(n, a, &x);
            let dx = p / dp;
            x -= &dx;
            if dx.abs() <= tol {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Precision {
                bits: S::precision_bits(&ctx),
                reason: format!("Newton refinement of a {n}-point Gauss rule did not converge"),
            });
        }
        let (_, dp) = jacobi_with_derivative(n, a, &x);
        let one = S::one(&ctx);
        raw_w.push(one.clone() / ((one - x.clone() * &x) * &dp * &dp));
        nodes.push(x);
    }
    let total = raw_w.iter().fold(S::zero(&ctx), |acc, w| acc + w);
    let half = S::from_ratio(1, 2, &ctx);
    Ok(GaussRule {
        alpha: a.clone(),
        nodes: nodes.into_iter().map(|x| (x + S::one(&ctx)) * &half).collect(),
        weights: raw_w.into_iter().map(|w| w / &total).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{pochhammer, Float};

    #[test]
    fn legendre_integrates_monomials() {
        let r = gauss_legendre::<f64>(10, &()).unwrap();
        for k in 0..20 {
            let v = r.integrate(|t| f64::powi(*t, k as i32));
            assert!((v - 1.0 / (k as f64 + 1.0)).abs() < 1e-14, "k={k}");
        }
        let sum: f64 = r.weights.iter().sum();
        assert!((sum - 1.0).abs() < 1e-15);
    }

    #[test]
    fn jacobi_matches_beta_moments() {
        // mean of t^k under the normalized weight is (a+1)_k / (2a+2)_k
        for a in [-0.4, 0.5, 2.0] {
            let af = Float::with_val(200, a);
            let r = gauss_jacobi::<Float>(12, &af).unwrap();
            for k in 0..24usize {
                let v = r.integrate(|t| Scalar::powi(t, k));
                let top = pochhammer(&(af.clone() + 1u32), k);
                let bot = pochhammer(&(af.clone() * 2u32 + 2u32), k);
                let want = top / bot;
                let err = (v - want).abs().to_f64();
                assert!(err < 1e-50, "a={a} k={k} err={err}");
            }
        }
    }

    #[test]
    fn high_precision_legendre_is_exact_to_working_precision() {
        let r = gauss_legendre::<Float>(40, &512).unwrap();
        let v = r.integrate(|t| Scalar::powi(t, 79));
        let err = (v - Float::with_val(512, 1) / 80u32).abs().to_f64();
        assert!(err < 1e-140);
    }

    #[test]
    fn composite_rule_covers_pieces() {
        let r = gauss_legendre::<f64>(4, &()).unwrap();
        let pieces = r.composite(&[0.0, 0.5, 0.5, 1.0]);
        assert_eq!(pieces.len(), 8);
        let v: f64 = pieces
            .iter()
            .map(|(t, w)| (t - 0.5f64).max(0.0).powi(3) * w)
            .sum();
        assert!((v - 1.0 / 64.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(gauss_jacobi::<f64>(4, &-1.0).is_err());
        assert!(gauss_legendre::<f64>(0, &()).is_err());
    }
}
