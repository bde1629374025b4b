use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{binomial, factorial, pochhammer, Rational, Scalar};

use super::Source;

fn check_order(n: usize, order: Option<usize>, degree: Option<usize>) -> Result<()> {
    if let (Some(o), Some(d)) = (order, degree) {
        let required = (d + n).div_ceil(2);
        if o < required {
            return Err(Error::QuadratureOrder { order: o, required });
        }
    }
    Ok(())
}

/// `U_n f` from the level-`(n-2)` moments `m_j = ∫ p_{n-2,j} f`.
pub fn genuine_durrmeyer_from_moments<S: Scalar>(n: usize, m: &[S], f0: S, f1: S) -> Polynomial<S> {
    debug_assert_eq!(m.len(), n - 1);
    let ctx = f0.ctx();
    let w = S::from_usize(n - 1, &ctx);
    let mut c = Vec::with_capacity(n + 1);
    c.push(f0);
    c.extend(m.iter().map(|v| v.clone() * &w));
    c.push(f1);
    Polynomial::bernstein(c, &ctx)
}

/// Genuine Bernstein–Durrmeyer image `U_n f` in Bernstein form, `n >= 2`.
pub fn genuine_durrmeyer_image<S: Scalar, F: Source<S> + ?Sized>(
    n: usize,
    f: &F,
    order: Option<usize>,
    ctx: &S::Ctx,
) -> Result<Polynomial<S>> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "genuine Durrmeyer operator needs n >= 2".into(),
        ));
    }
    check_order(n, order, f.poly_degree())?;
    let m = f.moments(n - 2, order, ctx)?;
    let f0 = f.value_at(&S::zero(ctx));
    let f1 = f.value_at(&S::one(ctx));
    Ok(genuine_durrmeyer_from_moments(n, &m, f0, f1))
}

pub fn apply_genuine_durrmeyer<S: Scalar, F: Source<S> + ?Sized>(n: usize, f: &F, x: &S) -> Result<S> {
    genuine_durrmeyer_image(n, f, None, &x.ctx())?.eval(x)
}

/// Closed form of `U_n(e_i)`:
/// `(n-1)! i! / (n+i-1)! * sum_{j=max(0,i-n)}^{i-1} C(i-1,j) C(n,i-j) x^(i-j)`.
pub fn genuine_durrmeyer_moment(n: usize, i: usize) -> Result<Polynomial<Rational>> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "genuine Durrmeyer operator needs n >= 2".into(),
        ));
    }
    if i == 0 {
        return Ok(Polynomial::constant(Rational::from(1)));
    }
    let lead = factorial::<Rational>(n - 1, &()) * factorial::<Rational>(i, &())
        / factorial::<Rational>(n + i - 1, &());
    let mut c = vec![Rational::from(0); i + 1];
    for j in i.saturating_sub(n)..i {
        c[i - j] += binomial::<Rational>(i - 1, j, &()) * binomial::<Rational>(n, i - j, &());
    }
    Ok(Polynomial::monomial(c, &()).scale(&lead))
}

/// `U_n(e_i)` from the three-term recurrence
/// `U(e_{k+1}) = ((n-k)x + 2k)/(n+k) U(e_k) - k(k-1)(1-x)/((n+k)(n+k-1)) U(e_{k-1})`.
pub fn genuine_durrmeyer_moment_recurrence(n: usize, i: usize) -> Result<Polynomial<Rational>> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "genuine Durrmeyer operator needs n >= 2".into(),
        ));
    }
    let q = |a: i64, b: i64| Rational::from((a, b));
    let mut prev = Polynomial::constant(q(1, 1));
    if i == 0 {
        return Ok(prev);
    }
    let mut cur = Polynomial::<Rational>::e(1, &());
    let n = n as i64;
    for k in 1..i as i64 {
        let a = Polynomial::monomial(vec![q(2 * k, n + k), q(n - k, n + k)], &());
        let b =
            Polynomial::monomial(vec![q(1, 1), q(-1, 1)], &()).scale(&q(k * (k - 1), (n + k) * (n + k - 1)));
        let next = a.mul(&cur)?.sub(&b.mul(&prev)?)?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Lupaş image `D_n^<alpha> f` in Bernstein form.
pub fn lupas_image<S: Scalar, F: Source<S> + ?Sized>(
    n: usize,
    alpha: &S,
    f: &F,
    order: Option<usize>,
) -> Result<Polynomial<S>> {
    if *alpha <= -S::one(&alpha.ctx()) {
        return Err(Error::InvalidParameter(format!(
            "Lupas parameter must exceed -1, got {}",
            alpha.to_f64()
        )));
    }
    check_order(n, order, f.poly_degree())?;
    let c = f.lupas_ratios(n, alpha, order)?;
    Ok(Polynomial::bernstein(c, &alpha.ctx()))
}

/// Bernstein–Durrmeyer image `D_n f`, the `alpha = 0` case.
pub fn durrmeyer_image<S: Scalar, F: Source<S> + ?Sized>(
    n: usize,
    f: &F,
    order: Option<usize>,
    ctx: &S::Ctx,
) -> Result<Polynomial<S>> {
    lupas_image(n, &S::zero(ctx), f, order)
}

pub fn apply_durrmeyer_lupas<S: Scalar, F: Source<S> + ?Sized>(
    n: usize,
    alpha: &S,
    f: &F,
    x: &S,
) -> Result<S> {
    lupas_image(n, alpha, f, None)?.eval(x)
}

/// Closed forms of `D_n^<alpha>(e_i)` for `i <= 2`.
pub fn lupas_moment_closed_form<S: Scalar>(n: usize, alpha: &S, i: usize) -> Result<Polynomial<S>> {
    let ctx = alpha.ctx();
    let nn = S::from_usize(n, &ctx);
    let one = S::one(&ctx);
    let two = S::from_i64(2, &ctx);
    let d1 = nn.clone() + alpha.clone() * &two + &two;
    match i {
        0 => Ok(Polynomial::constant(one)),
        1 => Ok(Polynomial::monomial(
            vec![(alpha.clone() + &one) / &d1, nn / &d1],
            &ctx,
        )),
        2 => {
            let d = d1.clone() * (d1 + &one);
            let a2 = alpha.clone() + &two;
            Ok(Polynomial::monomial(
                vec![
                    (alpha.clone() + &one) * &a2 / &d,
                    two * &nn * &a2 / &d,
                    nn.clone() * (nn - &one) / &d,
                ],
                &ctx,
            ))
        }
        _ => Err(Error::InvalidParameter(format!("no closed form for i = {i}"))),
    }
}

/// `D_n^<alpha>(e_i, 0) = (alpha+1)_i / (n+2alpha+2)_i`.
pub fn lupas_endpoint_moment<S: Scalar>(n: usize, alpha: &S, i: usize) -> S {
    let ctx = alpha.ctx();
    let a1 = alpha.clone() + S::one(&ctx);
    let d = S::from_usize(n + 2, &ctx) + alpha.clone() * S::from_i64(2, &ctx);
    pochhammer(&a1, i) / pochhammer(&d, i)
}

fn grid_max_diff<S: Scalar>(a: &Polynomial<S>, b: &Polynomial<S>, points: usize) -> S {
    let ctx = a.ctx().clone();
    let mut worst = S::zero(&ctx);
    let last = S::from_usize(points - 1, &ctx);
    for i in 0..points {
        let x = S::from_usize(i, &ctx) / &last;
        let d = (a.eval_unchecked(&x) - b.eval_unchecked(&x)).abs();
        if d > worst {
            worst = d;
        }
    }
    worst
}

/// Max over 50 grid points of
/// `|d^nu/dx^nu D_n^<alpha>(f) - n!/((n-nu)! (n+2alpha+2)_nu) D_{n-nu}^<alpha+nu>(f^(nu))|`.
pub fn lupas_derivative_identity_check<S: Scalar>(
    n: usize,
    alpha: &S,
    nu: usize,
    f: &Polynomial<S>,
) -> Result<S> {
    if nu == 0 || nu > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= nu <= n, got nu={nu}, n={n}"
        )));
    }
    let ctx = alpha.ctx();
    let lhs = lupas_image(n, alpha, f, None)?.differentiate(nu);
    let shifted = alpha.clone() + S::from_usize(nu, &ctx);
    let d = S::from_usize(n + 2, &ctx) + alpha.clone() * S::from_i64(2, &ctx);
    let coef = factorial::<S>(n, &ctx) / (factorial::<S>(n - nu, &ctx) * pochhammer(&d, nu));
    let rhs = lupas_image(n - nu, &shifted, &f.differentiate(nu), None)?.scale(&coef);
    Ok(grid_max_diff(&lhs, &rhs, 50))
}

/// Max over 50 grid points of `|d/dx U_{n+1}(f) - D_n(f')|`, `n >= 1`.
pub fn derivative_bridge_check<S: Scalar>(n: usize, f: &Polynomial<S>) -> Result<S> {
    let ctx = f.ctx().clone();
    let lhs = genuine_durrmeyer_image(n + 1, f, None, &ctx)?.differentiate(1);
    let rhs = durrmeyer_image(n, &f.differentiate(1), None, &ctx)?;
    Ok(grid_max_diff(&lhs, &rhs, 50))
}
