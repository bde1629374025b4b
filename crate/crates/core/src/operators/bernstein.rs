use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

use super::Source;

/// `B_n f` in Bernstein form: coefficients `f(k/n)`.
pub fn bernstein_image<S: Scalar, F: Source<S> + ?Sized>(
    n: usize,
    f: &F,
    ctx: &S::Ctx,
) -> Result<Polynomial<S>> {
    if n == 0 {
        return Err(Error::InvalidParameter("Bernstein operator needs n >= 1".into()));
    }
    let nn = S::from_usize(n, ctx);
    let c = (0..=n)
        .map(|k| f.value_at(&(S::from_usize(k, ctx) / &nn)))
        .collect();
    Ok(Polynomial::bernstein(c, ctx))
}

/// `B_n(f, x)` by de Casteljau on the value vector.
pub fn apply_bernstein<S: Scalar, F: Source<S> + ?Sized>(n: usize, f: &F, x: &S) -> Result<S> {
    bernstein_image(n, f, &x.ctx())?.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::Func;
    use crate::scalar::Rational;

    #[test]
    fn examples() {
        let e1 = Polynomial::<Rational>::e(1, &());
        let e2 = Polynomial::<Rational>::e(2, &());
        for n in 1..=64 {
            let b = bernstein_image(n, &e1, &()).unwrap();
            assert_eq!(b.to_monomial(), e1);
        }
        let half = Rational::from((1, 2));
        assert_eq!(apply_bernstein(2, &e2, &half).unwrap(), Rational::from((3, 8)));
        let one = Func::Linear { a: 1.0, b: 0.0 };
        for i in 0..=10 {
            let v = apply_bernstein(7, &one, &(i as f64 / 10.0)).unwrap();
            assert!((v - 1.0).abs() < 1e-15);
        }
        assert!(bernstein_image(0, &e1, &()).is_err());
    }
}
