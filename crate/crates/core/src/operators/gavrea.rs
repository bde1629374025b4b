use std::sync::Arc;

use crate::error::{Error, Result};
use crate::generator::{build_generator_from, GeneratorPoly};
use crate::poly::Polynomial;
use crate::scalar::{Float, Scalar, DEFAULT_PRECISION_BITS};

use super::durrmeyer::genuine_durrmeyer_from_moments;
use super::Source;

/// Moments `∫ p_{k,j} f` for every level `k = 0..=top`, obtained from the
/// top level by the convex recursion
/// `p_{k,j} = (k+1-j)/(k+1) p_{k+1,j} + (j+1)/(k+1) p_{k+1,j+1}`.
pub fn moment_pyramid<S: Scalar>(top: Vec<S>) -> Vec<Vec<S>> {
    let d = top.len() - 1;
    let ctx = top[0].ctx();
    let mut levels = vec![Vec::new(); d + 1];
    levels[d] = top;
    for k in (0..d).rev() {
        let kp1 = S::from_usize(k + 1, &ctx);
        let upper = &levels[k + 1];
        let row = (0..=k)
            .map(|j| {
                (upper[j].clone() * S::from_usize(k + 1 - j, &ctx)
                    + upper[j + 1].clone() * S::from_usize(j + 1, &ctx))
                    / &kp1
            })
            .collect();
        levels[k] = row;
    }
    levels
}

/// `H(P; f) = sum_k a_k/(k+1) U_{k+2} f` in Bernstein form of degree
/// `deg P + 2`, where `a` are the monomial coefficients of `P`.
pub fn gavrea_image<S: Scalar, F: Source<S> + ?Sized>(
    a: &[S],
    f: &F,
    order: Option<usize>,
    ctx: &S::Ctx,
) -> Result<Polynomial<S>> {
    if a.is_empty() {
        return Err(Error::InvalidParameter(
            "generating polynomial has no coefficients".into(),
        ));
    }
    let d = a.len() - 1;
    let top = f.moments(d, order, ctx)?;
    let levels = moment_pyramid(top);
    let f0 = f.value_at(&S::zero(ctx));
    let f1 = f.value_at(&S::one(ctx));

    let mut acc: Vec<S> = vec![S::zero(ctx); 3];
    for (k, ak) in a.iter().enumerate() {
        if k > 0 {
            acc = elevate_once(&acc, ctx);
        }
        if ak.is_zero() {
            continue;
        }
        let w = ak.clone() / S::from_usize(k + 1, ctx);
        let u = genuine_durrmeyer_from_moments(k + 2, &levels[k], f0.clone(), f1.clone());
        for (c, v) in acc.iter_mut().zip(u.coeffs()) {
            *c += v.clone() * &w;
        }
    }
    Ok(Polynomial::bernstein(acc, ctx))
}

fn elevate_once<S: Scalar>(c: &[S], ctx: &S::Ctx) -> Vec<S> {
    let m = c.len() - 1;
    let dd = S::from_usize(m + 1, ctx);
    let mut out = Vec::with_capacity(m + 2);
    out.push(c[0].clone());
    for i in 1..=m {
        out.push(
            (c[i - 1].clone() * S::from_usize(i, ctx) + c[i].clone() * S::from_usize(m + 1 - i, ctx)) / &dd,
        );
    }
    out.push(c[m].clone());
    out
}

/// `H(P; f, x)` for a generating polynomial given in any basis.
pub fn apply_gavrea<S: Scalar, F: Source<S> + ?Sized>(p: &Polynomial<S>, f: &F, x: &S) -> Result<S> {
    let a = p.to_monomial();
    gavrea_image(a.coeffs(), f, None, &x.ctx())?.eval(x)
}

/// Image under the Gavrea operator of a built generator, computed at the
/// generator's precision.
pub fn gavrea_generator_image(
    gen: &GeneratorPoly,
    f: &(impl Source<Float> + ?Sized),
    order: Option<usize>,
) -> Result<Polynomial<Float>> {
    gavrea_image(gen.p.coeffs(), f, order, &gen.precision_bits)
}

/// The composite operator `M_n` for shape order `q`.
///
/// `r = max(q-1, 1)`; when `n - 2 > 8r` a generator of degree `n - 2` is
/// built and `M_n = H_n(P_{n-2})` provided `alpha_n = 1 - ∫ t^2 P <= 1/4`.
/// Otherwise `M_n f = (1-x) f(0) + x f(1)`.
#[derive(Clone, Debug)]
pub struct MnOperator {
    pub q: usize,
    pub n: usize,
    pub r: usize,
    pub generator: Option<Arc<GeneratorPoly>>,
    /// The measured second-moment coefficient; 1 on the fallback path.
    pub alpha_n: f64,
    pub uses_fallback: bool,
}

impl MnOperator {
    pub fn new(q: usize, n: usize) -> Result<Self> {
        Self::with_precision(q, n, DEFAULT_PRECISION_BITS)
    }

    pub fn with_precision(q: usize, n: usize, bits: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("M_n needs n >= 1".into()));
        }
        let r = q.saturating_sub(1).max(1);
        let fallback = Self {
            q,
            n,
            r,
            generator: None,
            alpha_n: 1.0,
            uses_fallback: true,
        };
        if n < 2 || n - 2 <= 8 * r {
            return Ok(fallback);
        }
        let gen = build_generator_from(n - 2, r, bits)?;
        let alpha = gen.alpha().to_f64();
        if alpha > 0.25 {
            return Ok(Self {
                alpha_n: alpha,
                ..fallback
            });
        }
        Ok(Self {
            q,
            n,
            r,
            generator: Some(Arc::new(gen)),
            alpha_n: alpha,
            uses_fallback: false,
        })
    }

    pub fn precision_bits(&self) -> u32 {
        self.generator
            .as_ref()
            .map_or(DEFAULT_PRECISION_BITS, |g| g.precision_bits)
    }

    /// `M_n f` in Bernstein form at the working precision.
    pub fn image<F: Source<Float> + ?Sized>(&self, f: &F, order: Option<usize>) -> Result<Polynomial<Float>> {
        let bits = self.precision_bits();
        match &self.generator {
            Some(g) => gavrea_generator_image(g, f, order),
            None => Ok(Polynomial::bernstein(
                vec![
                    f.value_at(&Float::with_val(bits, 0)),
                    f.value_at(&Float::with_val(bits, 1)),
                ],
                &bits,
            )),
        }
    }

    pub fn apply<F: Source<Float> + ?Sized>(&self, f: &F, x: f64) -> Result<f64> {
        let p = self.image(f, None)?;
        Ok(p.eval(&Float::with_val(p.ctx().to_owned(), x))?.to_f64())
    }
}

/// `M_n(f, x)` for shape order `q`.
pub fn apply_mn<F: Source<Float> + ?Sized>(q: usize, n: usize, f: &F, x: f64) -> Result<f64> {
    MnOperator::new(q, n)?.apply(f, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::Func;
    use crate::operators::genuine_durrmeyer_image;
    use crate::scalar::Rational;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    #[test]
    fn pyramid_matches_direct_moments() {
        let f = Polynomial::monomial(vec![q(1, 1), q(-3, 1), q(0, 1), q(2, 1)], &());
        let top = Source::<Rational>::moments(&f, 7, None, &()).unwrap();
        let levels = moment_pyramid(top);
        for (k, row) in levels.iter().enumerate() {
            assert_eq!(row, &Source::<Rational>::moments(&f, k, None, &()).unwrap());
        }
    }

    #[test]
    fn linear_generator_examples() {
        // P(t) = 2t
        let p = Polynomial::monomial(vec![q(0, 1), q(2, 1)], &());
        let e0 = Polynomial::<Rational>::e(0, &());
        let e1 = Polynomial::<Rational>::e(1, &());
        let e2 = Polynomial::<Rational>::e(2, &());
        for i in 0..=10 {
            let x = q(i, 10);
            assert_eq!(apply_gavrea(&p, &e0, &x).unwrap(), q(1, 1));
            assert_eq!(apply_gavrea(&p, &e1, &x).unwrap(), x);
            let want = x.clone() * &x + x.clone() * (q(1, 1) - &x) / q(2, 1);
            assert_eq!(apply_gavrea(&p, &e2, &x).unwrap(), want);
        }
    }

    #[test]
    fn single_term_is_genuine_durrmeyer() {
        // P = 1 gives H = U_2
        let p = Polynomial::constant(q(1, 1));
        let f = Polynomial::monomial(vec![q(0, 1), q(0, 1), q(0, 1), q(1, 1)], &());
        let h = gavrea_image(p.coeffs(), &f, None, &()).unwrap();
        assert_eq!(h, genuine_durrmeyer_image(2, &f, None, &()).unwrap());
    }

    #[test]
    fn mn_fallback_and_linear() {
        let small = MnOperator::new(3, 10).unwrap();
        assert!(small.uses_fallback);
        assert_eq!(small.alpha_n, 1.0);
        let lin = Func::Linear { a: 0.5, b: -1.5 };
        for n in [5usize, 40, 100] {
            for qq in 0..=4 {
                let m = MnOperator::new(qq, n).unwrap();
                for i in 0..=8 {
                    let x = i as f64 / 8.0;
                    let v = m.apply(&lin, x).unwrap();
                    assert!((v - lin.eval(x)).abs() < 1e-12, "q={qq} n={n} x={x}");
                }
            }
        }
    }

    #[test]
    fn mn_second_moment() {
        let m = MnOperator::new(2, 100).unwrap();
        assert!(!m.uses_fallback);
        assert!(m.alpha_n <= 0.25);
        let e2 = Func::Power(2);
        for i in 0..=10 {
            let x = i as f64 / 10.0;
            let v = m.apply(&e2, x).unwrap();
            assert!((v - x * x - m.alpha_n * x * (1.0 - x)).abs() < 1e-12);
        }
    }
}
