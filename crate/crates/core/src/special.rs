//! Chebyshev polynomials, the clipped factor `tau_m`, shifted ultraspherical
//! polynomials on `[0, 1]` and the Lupaş product identity.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{binomial, pochhammer, RealScalar, Scalar};

/// `T_m` in the monomial basis of its native variable on `[-1, 1]`.
pub fn chebyshev_t<S: Scalar>(m: usize, ctx: &S::Ctx) -> Polynomial<S> {
    let mut prev = vec![S::one(ctx)];
    if m == 0 {
        return Polynomial::monomial(prev, ctx);
    }
    let mut cur = vec![S::zero(ctx), S::one(ctx)];
    let two = S::from_i64(2, ctx);
    for _ in 1..m {
        let mut next = vec![S::zero(ctx); cur.len() + 1];
        for (k, c) in cur.iter().enumerate() {
            next[k + 1] += c.clone() * &two;
        }
        for (k, c) in prev.iter().enumerate() {
            next[k] -= c;
        }
        prev = cur;
        cur = next;
    }
    Polynomial::monomial(cur, ctx)
}

/// `tau_m(x) = |I_1| T_m(x) / (x - x~)` with its construction data.
#[derive(Clone, Debug)]
pub struct TauPoly<S: Scalar> {
    pub m: usize,
    /// Degree `m - 1`, monomial basis in the native variable.
    pub poly: Polynomial<S>,
    /// Rightmost zero `cos(pi / 2m)` of `T_m`.
    pub x_tilde: S,
    /// Rightmost local minimum `cos(pi / m)` of `T_m`.
    pub x_1: S,
    /// `|I_1| = 1 - x_1 = 2 sin^2(pi / 2m)`.
    pub len_i1: S,
    /// Remainder of the synthetic division of `T_m` by `x - x~`.
    pub remainder: S,
}

/// Builds `tau_m` by synthetic division. Fails when the division remainder
/// exceeds `1e-20` times the largest coefficient of `T_m`, which means the
/// backend precision cannot resolve the irrational root.
pub fn tau<S: RealScalar>(m: usize, ctx: &S::Ctx) -> Result<TauPoly<S>> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("tau_m needs m >= 2, got {m}")));
    }
    let pi = S::pi(ctx);
    let half_angle = pi.clone() / S::from_usize(2 * m, ctx);
    let x_tilde = half_angle.cos();
    let x_1 = (pi / S::from_usize(m, ctx)).cos();
    let s = half_angle.sin();
    let len_i1 = S::from_i64(2, ctx) * &s * &s;

    let t = chebyshev_t::<S>(m, ctx);
    let c = t.coeffs();
    let mut quotient = vec![S::zero(ctx); m];
    let mut acc = c[m].clone();
    quotient[m - 1] = acc.clone();
    for k in (1..m).rev() {
        acc = c[k].clone() + acc * &x_tilde;
        quotient[k - 1] = acc.clone();
    }
    let remainder = c[0].clone() + acc * &x_tilde;

    let bound = t.coeff_norm() * S::from_f64(1e-20, ctx);
    if remainder.abs() > bound {
        return Err(Error::Precision {
            bits: S::precision_bits(ctx),
            reason: format!(
                "tau_{m}: division remainder {:e} exceeds 1e-20 * |T_m|",
                remainder.to_f64()
            ),
        });
    }
    let poly = Polynomial::monomial(quotient.into_iter().map(|q| q * &len_i1).collect(), ctx);
    Ok(TauPoly {
        m,
        poly,
        x_tilde,
        x_1,
        len_i1,
        remainder,
    })
}

fn check_alpha<S: Scalar>(alpha: &S) -> Result<()> {
    if *alpha <= -S::one(&alpha.ctx()) {
        return Err(Error::InvalidParameter(format!(
            "ultraspherical parameter must exceed -1, got {}",
            alpha.to_f64()
        )));
    }
    Ok(())
}

/// Shifted ultraspherical polynomial on `[0, 1]` normalized by `phi_n(1) = 1`,
/// built from the three-term recurrence (monomial basis).
pub fn ultraspherical_phi<S: Scalar>(n: usize, alpha: &S) -> Result<Polynomial<S>> {
    check_alpha(alpha)?;
    let ctx = alpha.ctx();
    let u = Polynomial::monomial(vec![-S::one(&ctx), S::from_i64(2, &ctx)], &ctx);
    let mut prev = Polynomial::constant(S::one(&ctx));
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = u.clone();
    let two_alpha = alpha.clone() * S::from_i64(2, &ctx);
    for k in 2..=n {
        let a = two_alpha.clone() + S::from_usize(2 * k, &ctx) - S::one(&ctx);
        let b = S::from_usize(k - 1, &ctx);
        let d = two_alpha.clone() + S::from_usize(k, &ctx);
        let next = u
            .mul(&cur)?
            .scale(&a)
            .sub(&prev.scale(&b))?
            .scale(&(S::one(&ctx) / d));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Pointwise value of the shifted ultraspherical polynomial by the same
/// recurrence; valid for any real `z`.
pub fn ultraspherical_phi_value<S: Scalar>(n: usize, alpha: &S, z: &S) -> Result<S> {
    check_alpha(alpha)?;
    let ctx = alpha.ctx();
    let u = z.clone() * S::from_i64(2, &ctx) - S::one(&ctx);
    let mut prev = S::one(&ctx);
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = u.clone();
    let two_alpha = alpha.clone() * S::from_i64(2, &ctx);
    for k in 2..=n {
        let a = two_alpha.clone() + S::from_usize(2 * k, &ctx) - S::one(&ctx);
        let b = S::from_usize(k - 1, &ctx);
        let d = two_alpha.clone() + S::from_usize(k, &ctx);
        let next = (a * &u * &cur - b * &prev) / d;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Closed-form leading coefficient `(2 alpha + n + 1)_n / (alpha + 1)_n`.
pub fn ultraspherical_leading_coefficient<S: Scalar>(n: usize, alpha: &S) -> S {
    let ctx = alpha.ctx();
    let top = alpha.clone() * S::from_i64(2, &ctx) + S::from_usize(n + 1, &ctx);
    let bottom = alpha.clone() + S::one(&ctx);
    pochhammer(&top, n) / pochhammer(&bottom, n)
}

/// Bernstein-form expansion of `phi_n^(alpha)` with coefficients
/// `(alpha+1)_n (-1)^(n-k) / ((alpha+1)_k (alpha+1)_(n-k))`.
pub fn phi_bernstein_expansion<S: Scalar>(n: usize, alpha: &S) -> Result<Polynomial<S>> {
    check_alpha(alpha)?;
    let ctx = alpha.ctx();
    let a1 = alpha.clone() + S::one(&ctx);
    let top = pochhammer(&a1, n);
    let coeffs = (0..=n)
        .map(|k| {
            let c = top.clone() / (pochhammer(&a1, k) * pochhammer(&a1, n - k));
            if (n - k) % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    Ok(Polynomial::bernstein(coeffs, &ctx))
}

fn bernstein_basis_value<S: Scalar>(n: usize, k: usize, x: &S) -> S {
    let ctx = x.ctx();
    let one_minus = S::one(&ctx) - x;
    binomial::<S>(n, k, &ctx) * x.powi(k) * one_minus.powi(n - k)
}

/// Residual `|LHS - RHS|` of
/// `(x+t-1)^n phi_n(xt/(x+t-1)) = (alpha+1)_n sum_k p_{n,k}(x) p_{n,k}(t) / (C(n,k) (alpha+1)_k (alpha+1)_(n-k))`.
pub fn lupas_product_identity_check<S: Scalar>(n: usize, alpha: &S, x: &S, t: &S) -> Result<S> {
    check_alpha(alpha)?;
    let ctx = alpha.ctx();
    let s = x.clone() + t - S::one(&ctx);
    if s.is_zero() {
        return Err(Error::InvalidParameter("identity requires t != 1 - x".into()));
    }
    let z = x.clone() * t / &s;
    let lhs = s.powi(n) * ultraspherical_phi_value(n, alpha, &z)?;
    let a1 = alpha.clone() + S::one(&ctx);
    let mut rhs = S::zero(&ctx);
    for k in 0..=n {
        let num = bernstein_basis_value(n, k, x) * bernstein_basis_value(n, k, t);
        let den = binomial::<S>(n, k, &ctx) * pochhammer(&a1, k) * pochhammer(&a1, n - k);
        rhs += num / den;
    }
    rhs *= pochhammer(&a1, n);
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Float, Rational};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn chebyshev_examples() {
        let t2 = chebyshev_t::<Rational>(2, &());
        assert_eq!(t2.coeffs(), &[q(-1, 1), q(0, 1), q(2, 1)]);
        let t3 = chebyshev_t::<Rational>(3, &());
        assert_eq!(t3.coeffs(), &[q(0, 1), q(-3, 1), q(0, 1), q(4, 1)]);
        let t4 = chebyshev_t::<f64>(4, &());
        let z = (std::f64::consts::PI / 8.0).cos();
        assert!(t4.eval(&z).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn chebyshev_bounded_on_interval() {
        for m in 0..=64 {
            let t = chebyshev_t::<Float>(m, &128);
            for i in 0..500 {
                let x = -1.0 + 2.0 * i as f64 / 499.0;
                let v = t.eval(&Float::with_val(128, x)).unwrap().to_f64();
                assert!(v.abs() <= 1.0 + 1e-12, "m={m} x={x} v={v}");
            }
        }
    }

    #[test]
    fn tau_degree_and_examples() {
        let t4 = tau::<Float>(4, &256).unwrap();
        assert_eq!(t4.poly.degree(), 3);
        let v = t4.poly.eval(&Float::with_val(256, 1)).unwrap().to_f64();
        assert!(v > 4.0 / 3.0 && v < 4.0);

        let t8 = tau::<Float>(8, &256).unwrap();
        let x1 = t8.x_1.to_f64();
        let mut mx = f64::MIN;
        for i in 0..200 {
            let x = x1 + (1.0 - x1) * i as f64 / 199.0;
            mx = mx.max(t8.poly.eval_f64(x));
        }
        assert!(mx < 4.0);

        let t6 = tau::<Float>(6, &256).unwrap();
        let v = t6.poly.eval_f64(-0.5).abs();
        assert!(v < 2.0 * t6.len_i1.to_f64() / 1.5);
    }

    #[test]
    fn tau_rejects_small_m_and_low_precision() {
        assert!(matches!(tau::<Float>(1, &256), Err(Error::InvalidParameter(_))));
        assert!(matches!(tau::<f64>(12, &()), Err(Error::Precision { .. })));
    }

    #[test]
    fn tau_bounds_on_dense_grids() {
        for m in 2..=64 {
            let t = tau::<Float>(m, &256).unwrap();
            let p = t.poly.to_f64();
            let x1 = t.x_1.to_f64();
            let len = t.len_i1.to_f64();
            for i in 0..=400 {
                let x = x1 + (1.0 - x1) * i as f64 / 400.0;
                let v = t.poly.eval_f64(x);
                assert!(v > 4.0 / 3.0 && v < 4.0, "m={m} x={x} v={v}");
            }
            for i in 0..=800 {
                let x = -1.0 + (x1 + 1.0) * i as f64 / 800.0;
                if x >= x1 {
                    continue;
                }
                // evaluate at extended precision, the monomial form is ill conditioned
                let v = t.poly.eval_f64(x).abs();
                assert!(v < 2.0 * len / (1.0 - x), "m={m} x={x} v={v}");
            }
            assert_eq!(p.degree(), m - 1);
        }
    }

    #[test]
    fn phi_examples() {
        let phi2 = ultraspherical_phi(2, &Rational::from(0)).unwrap();
        // (3 (2x-1)^2 - 1) / 2
        assert_eq!(phi2.coeffs(), &[q(1, 1), q(-6, 1), q(6, 1)]);
        assert_eq!(phi2.eval(&q(1, 2)).unwrap(), q(-1, 2));
        assert_eq!(ultraspherical_leading_coefficient(2, &Rational::from(0)), q(6, 1));
        for n in 0..12 {
            for a in [q(-2, 5), q(0, 1), q(1, 2), q(2, 1), q(7, 3)] {
                let p = ultraspherical_phi(n, &a).unwrap();
                assert_eq!(p.eval(&q(1, 1)).unwrap(), q(1, 1));
            }
        }
    }

    #[test]
    fn phi_rejects_alpha_below_minus_one() {
        assert!(ultraspherical_phi(3, &Rational::from(-1)).is_err());
        assert!(phi_bernstein_expansion(3, &-1.5f64).is_err());
    }

    #[test]
    fn leading_coefficient_matches_closed_form() {
        for n in 0..=20 {
            for a in [-0.4, 0.0, 0.5, 2.0] {
                let p = ultraspherical_phi(n, &a).unwrap();
                let lead = p.coeffs()[n];
                let closed = ultraspherical_leading_coefficient(n, &a);
                assert!((lead - closed).abs() <= 1e-9 * closed.abs(), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn bernstein_expansion_examples() {
        let p = phi_bernstein_expansion(1, &Rational::from(0)).unwrap();
        assert_eq!(p.coeffs(), &[q(-1, 1), q(1, 1)]);
        assert_eq!(p.to_monomial().coeffs(), &[q(-1, 1), q(2, 1)]);
        let p0 = phi_bernstein_expansion(0, &Rational::from(3)).unwrap();
        assert_eq!(p0.coeffs(), &[q(1, 1)]);
        for n in 0..=12 {
            for a in [-0.4, 0.0, 0.5, 2.0] {
                // the monomial form is ill conditioned in f64 for alpha near -1
                let af = Float::with_val(128, a);
                let b = phi_bernstein_expansion(n, &a).unwrap();
                let r = ultraspherical_phi(n, &af).unwrap();
                for i in 0..50 {
                    let x = i as f64 / 49.0;
                    let rv = r.eval(&Float::with_val(128, x)).unwrap().to_f64();
                    assert!((b.eval(&x).unwrap() - rv).abs() <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn bernstein_expansion_exact_in_rationals() {
        for n in 0..=8 {
            let a = q(1, 3);
            let b = phi_bernstein_expansion(n, &a).unwrap().to_monomial();
            assert_eq!(b, ultraspherical_phi(n, &a).unwrap());
        }
    }

    #[test]
    fn product_identity_examples() {
        let r = lupas_product_identity_check(3, &0.0, &0.3, &0.6).unwrap();
        assert!(r <= 1e-10);
        let r = lupas_product_identity_check(5, &0.5, &0.25, &0.5).unwrap();
        assert!(r <= 1e-10);
        let r = lupas_product_identity_check(0, &q(1, 2), &q(1, 4), &q(1, 3)).unwrap();
        assert!(r.is_zero());
        let exact = lupas_product_identity_check(6, &q(3, 7), &q(1, 5), &q(2, 3)).unwrap();
        assert!(exact.is_zero());
        assert!(lupas_product_identity_check(2, &0.0, &0.25, &0.75).is_err());
    }
}
