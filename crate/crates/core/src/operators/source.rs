use crate::error::Result;
use crate::functions::{poly_bernstein_moments, poly_lupas_ratios, Func};
use crate::poly::Polynomial;
use crate::scalar::{RealScalar, Scalar};

/// What an operator needs to know about its input: point values, the
/// Bernstein moments `∫ p_{k,j} f`, and the Lupaş ratios.
pub trait Source<S: Scalar> {
    fn value_at(&self, x: &S) -> S;

    /// `∫_0^1 p_{k,j}(t) f(t) dt` for `j = 0..=k`.
    fn moments(&self, k: usize, order: Option<usize>, ctx: &S::Ctx) -> Result<Vec<S>>;

    /// `<p_{k,j}, f> / <p_{k,j}, 1>` under the weight `(t(1-t))^alpha`.
    fn lupas_ratios(&self, k: usize, alpha: &S, order: Option<usize>) -> Result<Vec<S>>;

    /// Polynomial degree when the input is a polynomial.
    fn poly_degree(&self) -> Option<usize>;
}

impl<S: Scalar> Source<S> for Polynomial<S> {
    fn value_at(&self, x: &S) -> S {
        self.eval_unchecked(x)
    }

    fn moments(&self, k: usize, _order: Option<usize>, ctx: &S::Ctx) -> Result<Vec<S>> {
        Ok(poly_bernstein_moments(self.to_monomial().coeffs(), k, ctx))
    }

    fn lupas_ratios(&self, k: usize, alpha: &S, _order: Option<usize>) -> Result<Vec<S>> {
        Ok(poly_lupas_ratios(self.to_monomial().coeffs(), k, alpha))
    }

    fn poly_degree(&self) -> Option<usize> {
        Some(self.degree())
    }
}

impl<S: RealScalar> Source<S> for Func {
    fn value_at(&self, x: &S) -> S {
        match self.as_polynomial() {
            Some(p) => p.convert_scalar::<S>(&x.ctx()).eval_unchecked(x),
            None => self.eval_s(x),
        }
    }

    fn moments(&self, k: usize, order: Option<usize>, ctx: &S::Ctx) -> Result<Vec<S>> {
        self.bernstein_moments(k, order, ctx)
    }

    fn lupas_ratios(&self, k: usize, alpha: &S, order: Option<usize>) -> Result<Vec<S>> {
        Func::lupas_ratios(self, k, alpha, order)
    }

    fn poly_degree(&self) -> Option<usize> {
        self.degree()
    }
}
