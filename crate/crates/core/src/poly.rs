//! Degree-bounded polynomials on `[0, 1]` in monomial, Bernstein and
//! shifted-Chebyshev bases.
//!
//! The Bernstein basis of degree `n` is `p_{n,k}(x) = C(n,k) x^k (1-x)^(n-k)`;
//! the Chebyshev basis is `T_k(2x - 1)`. All conversions route through the
//! monomial basis except Bernstein degree elevation, which is done directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{binomial, Scalar};

/// Default cap on polynomial degree for products.
pub const DEFAULT_DEGREE_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Monomial,
    /// Bernstein basis of the given degree.
    Bernstein(usize),
    /// `T_k(2x - 1)`, k = 0..len.
    Chebyshev,
}

#[derive(Clone, Debug)]
pub struct Polynomial<S: Scalar> {
    basis: Basis,
    coeffs: Vec<S>,
    ctx: S::Ctx,
}

/// Structural equality; trailing zero coefficients of monomial and
/// Chebyshev forms are ignored.
impl<S: Scalar> PartialEq for Polynomial<S> {
    fn eq(&self, other: &Self) -> bool {
        if self.basis != other.basis || self.ctx != other.ctx {
            return false;
        }
        if let Basis::Bernstein(_) = self.basis {
            return self.coeffs == other.coeffs;
        }
        let trim = |c: &[S]| c.len() - c.iter().rev().take_while(|v| v.is_zero()).count();
        let (a, b) = (trim(&self.coeffs), trim(&other.coeffs));
        a == b && self.coeffs[..a] == other.coeffs[..b]
    }
}

/// Wire format of a polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub basis: String,
    pub n: usize,
    pub coeffs: Vec<String>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn monomial(mut coeffs: Vec<S>, ctx: &S::Ctx) -> Self {
        if coeffs.is_empty() {
            coeffs.push(S::zero(ctx));
        }
        Self {
            basis: Basis::Monomial,
            coeffs,
            ctx: ctx.clone(),
        }
    }

    /// Bernstein form of degree `coeffs.len() - 1`.
    pub fn bernstein(coeffs: Vec<S>, ctx: &S::Ctx) -> Self {
        assert!(
            !coeffs.is_empty(),
            "bernstein form needs at least one coefficient"
        );
        Self {
            basis: Basis::Bernstein(coeffs.len() - 1),
            coeffs,
            ctx: ctx.clone(),
        }
    }

    pub fn chebyshev(mut coeffs: Vec<S>, ctx: &S::Ctx) -> Self {
        if coeffs.is_empty() {
            coeffs.push(S::zero(ctx));
        }
        Self {
            basis: Basis::Chebyshev,
            coeffs,
            ctx: ctx.clone(),
        }
    }

    pub fn zero(ctx: &S::Ctx) -> Self {
        Self::monomial(vec![S::zero(ctx)], ctx)
    }

    pub fn constant(c: S) -> Self {
        let ctx = c.ctx();
        Self::monomial(vec![c], &ctx)
    }

    /// The monomial `e_i(x) = x^i`.
    pub fn e(i: usize, ctx: &S::Ctx) -> Self {
        let mut c = vec![S::zero(ctx); i + 1];
        c[i] = S::one(ctx);
        Self::monomial(c, ctx)
    }

    /// Fundamental Bernstein polynomial `p_{n,k}` in Bernstein form.
    pub fn bernstein_fundamental(n: usize, k: usize, ctx: &S::Ctx) -> Self {
        assert!(k <= n);
        let mut c = vec![S::zero(ctx); n + 1];
        c[k] = S::one(ctx);
        Self::bernstein(c, ctx)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    /// Upper bound on the degree implied by the representation.
    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Actual degree (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        match self.basis {
            Basis::Monomial | Basis::Chebyshev => self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0),
            Basis::Bernstein(_) => self.to_monomial().degree(),
        }
    }

    /// Value at `x`. Bernstein forms require `x` in `[0, 1]`.
    pub fn eval(&self, x: &S) -> Result<S> {
        if let Basis::Bernstein(_) = self.basis {
            let z = S::zero(&self.ctx);
            let one = S::one(&self.ctx);
            if *x < z || *x > one {
                return Err(Error::Domain { x: x.to_f64() });
            }
        }
        Ok(self.eval_unchecked(x))
    }

    /// Value at `x` without the domain contract (the algebra is valid
    /// everywhere, only its conditioning degrades outside `[0, 1]`).
    pub fn eval_unchecked(&self, x: &S) -> S {
        match self.basis {
            Basis::Monomial => horner(&self.coeffs, x),
            Basis::Bernstein(_) => de_casteljau(&self.coeffs, x),
            Basis::Chebyshev => clenshaw_shifted(&self.coeffs, x),
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.eval_unchecked(&S::from_f64(x, &self.ctx)).to_f64()
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one(&self.ctx))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Result<Self> {
        self.check_ctx(other)?;
        let pair = |a: Option<&S>, b: Option<&S>| -> S {
            let z = S::zero(&self.ctx);
            let a = a.cloned().unwrap_or_else(|| z.clone());
            let b = b.cloned().unwrap_or(z);
            if subtract {
                a - b
            } else {
                a + b
            }
        };
        let zip = |x: &[S], y: &[S]| -> Vec<S> {
            (0..x.len().max(y.len()))
                .map(|i| pair(x.get(i), y.get(i)))
                .collect()
        };
        match (self.basis, other.basis) {
            (Basis::Bernstein(n), Basis::Bernstein(m)) => {
                let top = n.max(m);
                let a = self.elevate(top)?;
                let b = other.elevate(top)?;
                Ok(Self::bernstein(zip(&a.coeffs, &b.coeffs), &self.ctx))
            }
            (Basis::Chebyshev, Basis::Chebyshev) => {
                Ok(Self::chebyshev(zip(&self.coeffs, &other.coeffs), &self.ctx))
            }
            _ => {
                let a = self.to_monomial();
                let b = other.to_monomial();
                Ok(Self::monomial(zip(&a.coeffs, &b.coeffs), &self.ctx))
            }
        }
    }

    /// Product via monomial convolution, capped at [`DEFAULT_DEGREE_CAP`].
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_capped(other, DEFAULT_DEGREE_CAP)
    }

    pub fn mul_capped(&self, other: &Self, cap: usize) -> Result<Self> {
        self.check_ctx(other)?;
        let degree = self.degree_bound() + other.degree_bound();
        if degree > cap {
            return Err(Error::DegreeOverflow { degree, cap });
        }
        let a = self.to_monomial();
        let b = other.to_monomial();
        let prod = Self::monomial(convolve(&a.coeffs, &b.coeffs, &self.ctx), &self.ctx);
        match (self.basis, other.basis) {
            (Basis::Bernstein(n), Basis::Bernstein(m)) => prod.to_bernstein(n + m),
            (Basis::Chebyshev, Basis::Chebyshev) => Ok(prod.to_chebyshev()),
            _ => Ok(prod),
        }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, k: usize) -> Result<Self> {
        let mut acc = Self::constant(S::one(&self.ctx));
        let mut base = self.to_monomial();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `nu`-th derivative, kept in the same basis family.
    pub fn differentiate(&self, nu: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..nu {
            p = p.derivative_once();
        }
        p
    }

    fn derivative_once(&self) -> Self {
        let ctx = &self.ctx;
        match self.basis {
            Basis::Monomial => {
                if self.coeffs.len() == 1 {
                    return Self::zero(ctx);
                }
                let c = self.coeffs[1..]
                    .iter()
                    .enumerate()
                    .map(|(k, a)| a.clone() * S::from_usize(k + 1, ctx))
                    .collect();
                Self::monomial(c, ctx)
            }
            Basis::Bernstein(n) => {
                if n == 0 {
                    return Self::bernstein(vec![S::zero(ctx)], ctx);
                }
                let nn = S::from_usize(n, ctx);
                let c = self
                    .coeffs
                    .windows(2)
                    .map(|w| (w[1].clone() - &w[0]) * &nn)
                    .collect();
                Self::bernstein(c, ctx)
            }
            Basis::Chebyshev => {
                let n = self.coeffs.len() - 1;
                if n == 0 {
                    return Self::chebyshev(vec![S::zero(ctx)], ctx);
                }
                // d/du recurrence, then d/dx = 2 d/du.
                let mut d = vec![S::zero(ctx); n + 1];
                for k in (1..=n).rev() {
                    let next = if k < n { d[k + 1].clone() } else { S::zero(ctx) };
                    d[k - 1] = next + self.coeffs[k].clone() * S::from_usize(2 * k, ctx);
                }
                d.truncate(n);
                d[0] /= S::from_i64(2, ctx);
                let two = S::from_i64(2, ctx);
                Self::chebyshev(d.into_iter().map(|c| c * &two).collect(), ctx)
            }
        }
    }

    /// The antiderivative vanishing at 0.
    pub fn antidifferentiate_from_zero(&self) -> Self {
        let ctx = &self.ctx;
        match self.basis {
            Basis::Monomial => {
                let mut c = Vec::with_capacity(self.coeffs.len() + 1);
                c.push(S::zero(ctx));
                for (k, a) in self.coeffs.iter().enumerate() {
                    c.push(a.clone() / S::from_usize(k + 1, ctx));
                }
                Self::monomial(c, ctx)
            }
            Basis::Bernstein(n) => {
                let denom = S::from_usize(n + 1, ctx);
                let mut c = Vec::with_capacity(n + 2);
                let mut acc = S::zero(ctx);
                c.push(acc.clone());
                for a in &self.coeffs {
                    acc += a.clone() / &denom;
                    c.push(acc.clone());
                }
                Self::bernstein(c, ctx)
            }
            Basis::Chebyshev => self.to_monomial().antidifferentiate_from_zero().to_chebyshev(),
        }
    }

    /// Exact `int_0^1 p`.
    pub fn integrate_01(&self) -> S {
        let ctx = &self.ctx;
        match self.basis {
            Basis::Monomial => self.coeffs.iter().enumerate().fold(S::zero(ctx), |acc, (k, a)| {
                acc + a.clone() / S::from_usize(k + 1, ctx)
            }),
            Basis::Bernstein(n) => {
                let s = self.coeffs.iter().fold(S::zero(ctx), |acc, a| acc + a);
                s / S::from_usize(n + 1, ctx)
            }
            Basis::Chebyshev => self.coeffs.iter().enumerate().filter(|(k, _)| k % 2 == 0).fold(
                S::zero(ctx),
                |acc, (k, a)| {
                    let k = k as i64;
                    acc + a.clone() / S::from_i64(1 - k * k, ctx)
                },
            ),
        }
    }

    /// `int_0^1 x^mu p(x) dx`.
    pub fn moment(&self, mu: usize) -> S {
        let m = self.to_monomial();
        let ctx = &self.ctx;
        m.coeffs.iter().enumerate().fold(S::zero(ctx), |acc, (k, a)| {
            acc + a.clone() / S::from_usize(k + mu + 1, ctx)
        })
    }

    pub fn convert_basis(&self, target: Basis) -> Result<Self> {
        match target {
            Basis::Monomial => Ok(self.to_monomial()),
            Basis::Bernstein(n) => self.to_bernstein(n),
            Basis::Chebyshev => Ok(self.to_monomial().to_chebyshev()),
        }
    }

    pub fn to_monomial(&self) -> Self {
        let ctx = &self.ctx;
        match self.basis {
            Basis::Monomial => self.clone(),
            Basis::Bernstein(n) => {
                // a_i = C(n,i) sum_{j<=i} (-1)^(i-j) C(i,j) b_j
                let c = (0..=n)
                    .map(|i| {
                        let mut s = S::zero(ctx);
                        for j in 0..=i {
                            let term = binomial::<S>(i, j, ctx) * &self.coeffs[j];
                            if (i - j) % 2 == 0 {
                                s += term;
                            } else {
                                s -= term;
                            }
                        }
                        s * binomial::<S>(n, i, ctx)
                    })
                    .collect();
                Self::monomial(c, ctx)
            }
            Basis::Chebyshev => {
                // Clenshaw on polynomial coefficients with u = 2x - 1.
                let u = Self::monomial(vec![-S::one(ctx), S::from_i64(2, ctx)], ctx);
                let two_u = u.scale(&S::from_i64(2, ctx));
                let n = self.coeffs.len();
                let mut b1 = Self::zero(ctx);
                let mut b2 = Self::zero(ctx);
                for k in (1..n).rev() {
                    let t = two_u
                        .mul_unchecked(&b1)
                        .add(&b2.neg())
                        .expect("same ctx")
                        .add(&Self::constant(self.coeffs[k].clone()))
                        .expect("same ctx");
                    b2 = b1;
                    b1 = t;
                }
                u.mul_unchecked(&b1)
                    .add(&b2.neg())
                    .expect("same ctx")
                    .add(&Self::constant(self.coeffs[0].clone()))
                    .expect("same ctx")
            }
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        Self::monomial(convolve(&self.coeffs, &other.coeffs, &self.ctx), &self.ctx)
    }

    /// Bernstein form of degree `n`; fails if the degree exceeds `n`.
    pub fn to_bernstein(&self, n: usize) -> Result<Self> {
        let ctx = &self.ctx;
        if let Basis::Bernstein(m) = self.basis {
            if m <= n {
                return self.elevate(n);
            }
        }
        let mono = self.to_monomial();
        let degree = mono.degree();
        if degree > n {
            return Err(Error::DegreeMismatch { degree, target: n });
        }
        // b_j = sum_{i<=j} C(j,i)/C(n,i) a_i
        let c = (0..=n)
            .map(|j| {
                let mut s = S::zero(ctx);
                for i in 0..=j.min(degree) {
                    s += binomial::<S>(j, i, ctx) / binomial::<S>(n, i, ctx) * &mono.coeffs[i];
                }
                s
            })
            .collect();
        Ok(Self::bernstein(c, ctx))
    }

    /// Degree elevation of a Bernstein form to degree `m >= n`.
    pub fn elevate(&self, m: usize) -> Result<Self> {
        let Basis::Bernstein(n) = self.basis else {
            return self.to_bernstein(m);
        };
        if m < n {
            return Err(Error::DegreeMismatch { degree: n, target: m });
        }
        let ctx = &self.ctx;
        let mut c = self.coeffs.clone();
        for d in n..m {
            // degree d -> d + 1
            let dd = S::from_usize(d + 1, ctx);
            let mut next = Vec::with_capacity(d + 2);
            next.push(c[0].clone());
            for k in 1..=d {
                let left = c[k - 1].clone() * S::from_usize(k, ctx);
                let right = c[k].clone() * S::from_usize(d + 1 - k, ctx);
                next.push((left + right) / &dd);
            }
            next.push(c[d].clone());
            c = next;
        }
        Ok(Self::bernstein(c, ctx))
    }

    pub fn to_chebyshev(&self) -> Self {
        if self.basis == Basis::Chebyshev {
            return self.clone();
        }
        let ctx = &self.ctx;
        let mono = self.to_monomial();
        // Horner in the Chebyshev basis: acc <- acc * x + a_k, with
        // x = (1 + u)/2 and u T_0 = T_1, u T_k = (T_{k+1} + T_{k-1})/2.
        let half = S::from_ratio(1, 2, ctx);
        let mut acc: Vec<S> = vec![S::zero(ctx)];
        for a in mono.coeffs.iter().rev() {
            let mut ut = vec![S::zero(ctx); acc.len() + 1];
            for (k, c) in acc.iter().enumerate() {
                if k == 0 {
                    ut[1] += c;
                } else {
                    let h = c.clone() * &half;
                    ut[k + 1] += &h;
                    ut[k - 1] += &h;
                }
            }
            let mut next: Vec<S> = ut;
            for (k, c) in acc.iter().enumerate() {
                next[k] += c;
            }
            for c in next.iter_mut() {
                *c *= &half;
            }
            next[0] += a;
            acc = next;
        }
        let deg = acc.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        acc.truncate(deg.max(mono.degree_bound()) + 1);
        Self::chebyshev(acc, ctx)
    }

    /// Re-expresses the coefficients in another scalar backend.
    pub fn convert_scalar<T: Scalar>(&self, ctx: &T::Ctx) -> Polynomial<T> {
        Polynomial {
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| T::from_rational(&c.to_rational(), ctx))
                .collect(),
            ctx: ctx.clone(),
        }
    }

    pub fn to_f64(&self) -> Polynomial<f64> {
        Polynomial {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|c| c.to_f64()).collect(),
            ctx: (),
        }
    }

    /// Largest coefficient magnitude.
    pub fn coeff_norm(&self) -> S {
        self.coeffs
            .iter()
            .fold(S::zero(&self.ctx), |m, c| m.max_of(c.abs()))
    }

    pub fn to_json(&self) -> PolyJson {
        let basis = match self.basis {
            Basis::Monomial => "monomial",
            Basis::Bernstein(_) => "bernstein",
            Basis::Chebyshev => "chebyshev",
        };
        PolyJson {
            basis: basis.to_string(),
            n: self.degree_bound(),
            coeffs: self.coeffs.iter().map(|c| c.to_decimal()).collect(),
        }
    }

    pub fn from_json(j: &PolyJson, ctx: &S::Ctx) -> Result<Self> {
        if j.coeffs.len() != j.n + 1 {
            return Err(Error::Parse(format!(
                "expected {} coefficients, found {}",
                j.n + 1,
                j.coeffs.len()
            )));
        }
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| S::parse(s, ctx))
            .collect::<Result<Vec<_>>>()?;
        match j.basis.as_str() {
            "monomial" => Ok(Self::monomial(coeffs, ctx)),
            "bernstein" => Ok(Self::bernstein(coeffs, ctx)),
            "chebyshev" => Ok(Self::chebyshev(coeffs, ctx)),
            other => Err(Error::Parse(format!("unknown basis {other:?}"))),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("plain struct serializes")
    }

    pub fn from_json_str(s: &str, ctx: &S::Ctx) -> Result<Self> {
        let j: PolyJson = serde_json::from_str(s)?;
        Self::from_json(&j, ctx)
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::Backend(format!("{:?} vs {:?}", self.ctx, other.ctx)));
        }
        Ok(())
    }
}

pub(crate) fn convolve<S: Scalar>(a: &[S], b: &[S], ctx: &S::Ctx) -> Vec<S> {
    let mut c = vec![S::zero(ctx); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x.clone() * y;
        }
    }
    c
}

pub(crate) fn horner<S: Scalar>(c: &[S], x: &S) -> S {
    let mut acc = c[c.len() - 1].clone();
    for a in c[..c.len() - 1].iter().rev() {
        acc *= x;
        acc += a;
    }
    acc
}

/// de Casteljau evaluation of a Bernstein coefficient vector.
pub fn de_casteljau<S: Scalar>(c: &[S], x: &S) -> S {
    let one_minus = S::one(&x.ctx()) - x;
    let mut b = c.to_vec();
    let n = b.len();
    for r in 1..n {
        for k in 0..n - r {
            b[k] = b[k].clone() * &one_minus + b[k + 1].clone() * x;
        }
    }
    b.swap_remove(0)
}

fn clenshaw_shifted<S: Scalar>(c: &[S], x: &S) -> S {
    let ctx = x.ctx();
    let u = x.clone() * S::from_i64(2, &ctx) - S::one(&ctx);
    let two_u = u.clone() * S::from_i64(2, &ctx);
    let mut b1 = S::zero(&ctx);
    let mut b2 = S::zero(&ctx);
    for a in c[1..].iter().rev() {
        let t = two_u.clone() * &b1 - &b2 + a;
        b2 = b1;
        b1 = t;
    }
    u * &b1 - &b2 + &c[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Float, Rational};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn mono(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::monomial(c.iter().map(|&v| Rational::from(v)).collect(), &())
    }

    #[test]
    fn eval_examples() {
        let e1 = Polynomial::<f64>::e(1, &());
        assert_eq!(e1.eval(&0.5).unwrap(), 0.5);
        let p21 = Polynomial::<Rational>::bernstein_fundamental(2, 1, &());
        assert_eq!(p21.eval(&q(1, 2)).unwrap(), q(1, 2));
        let x2 = Polynomial::<Rational>::e(2, &()).to_bernstein(2).unwrap();
        assert_eq!(x2.coeffs(), &[q(0, 1), q(0, 1), q(1, 1)]);
        assert_eq!(x2.eval(&q(1, 1)).unwrap(), q(1, 1));
    }

    #[test]
    fn bernstein_domain_violation() {
        let p = Polynomial::<f64>::bernstein(vec![1.0, 2.0], &());
        assert!(matches!(p.eval(&1.5), Err(Error::Domain { .. })));
        assert!(matches!(p.eval(&-0.1), Err(Error::Domain { .. })));
        let m = Polynomial::<f64>::monomial(vec![1.0, 2.0], &());
        assert_eq!(m.eval(&-1.0).unwrap(), -1.0);
    }

    #[test]
    fn arithmetic_examples() {
        let x = mono(&[0, 1]);
        let one_minus_x = mono(&[1, -1]);
        assert_eq!(x.mul(&one_minus_x).unwrap(), mono(&[0, 1, -1]));
        let e2 = mono(&[0, 0, 1]);
        assert_eq!(e2.scale(&Rational::from(3)), mono(&[0, 0, 3]));
        let p = mono(&[-1, 2]);
        assert_eq!(p.mul(&p).unwrap(), mono(&[1, -4, 4]));
        assert_eq!(p.pow(2).unwrap(), mono(&[1, -4, 4]));
    }

    #[test]
    fn degree_cap_enforced() {
        let p = Polynomial::<f64>::monomial(vec![1.0; 3000], &());
        assert!(matches!(
            p.mul(&p),
            Err(Error::DegreeOverflow {
                degree: 5998,
                cap: 4096
            })
        ));
        assert!(p.mul_capped(&p, 6000).is_ok());
    }

    #[test]
    fn mixed_precision_rejected() {
        let a = Polynomial::<Float>::e(1, &64);
        let b = Polynomial::<Float>::e(1, &128);
        assert!(matches!(a.add(&b), Err(Error::Backend(_))));
    }

    #[test]
    fn derivative_examples() {
        let x3 = mono(&[0, 0, 0, 1]);
        assert_eq!(x3.differentiate(1), mono(&[0, 0, 3]));
        assert_eq!(x3.differentiate(2), mono(&[0, 6]));
        assert_eq!(x3.differentiate(4).degree(), 0);
        assert!(x3.differentiate(4).coeffs().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn antiderivative_examples() {
        let one = mono(&[1]);
        assert_eq!(one.antidifferentiate_from_zero(), mono(&[0, 1]));
        let x = mono(&[0, 1]);
        let half_x2 = Polynomial::monomial(vec![q(0, 1), q(0, 1), q(1, 2)], &());
        assert_eq!(x.antidifferentiate_from_zero(), half_x2);
        // twice from 1 equals int_0^x (x - t) dt = x^2 / 2
        assert_eq!(
            one.antidifferentiate_from_zero().antidifferentiate_from_zero(),
            half_x2
        );
    }

    #[test]
    fn integral_examples() {
        assert_eq!(mono(&[1]).integrate_01(), q(1, 1));
        assert_eq!(mono(&[0, 0, 1]).integrate_01(), q(1, 3));
        let p21 = Polynomial::<Rational>::bernstein_fundamental(2, 1, &());
        assert_eq!(p21.integrate_01(), q(1, 3));
        assert_eq!(p21.to_monomial().integrate_01(), q(1, 3));
        assert_eq!(p21.to_monomial().to_chebyshev().integrate_01(), q(1, 3));
    }

    #[test]
    fn conversion_examples() {
        let e1 = Polynomial::<Rational>::e(1, &()).to_bernstein(1).unwrap();
        assert_eq!(e1.coeffs(), &[q(0, 1), q(1, 1)]);
        let e0 = Polynomial::<Rational>::e(0, &()).to_bernstein(5).unwrap();
        assert!(e0.coeffs().iter().all(|c| *c == q(1, 1)));
        assert!(matches!(
            mono(&[0, 0, 1]).to_bernstein(1),
            Err(Error::DegreeMismatch { degree: 2, target: 1 })
        ));
    }

    #[test]
    fn chebyshev_basis_round_trip_and_calculus() {
        let p = mono(&[3, -1, 4, 1, -5, 9]);
        let c = p.to_chebyshev();
        assert_eq!(c.to_monomial(), p);
        for x in [q(0, 1), q(1, 3), q(1, 1), q(-2, 1)] {
            assert_eq!(c.eval_unchecked(&x), p.eval(&x).unwrap());
        }
        for nu in 0..4 {
            assert_eq!(c.differentiate(nu).to_monomial(), p.differentiate(nu));
        }
        assert_eq!(c.integrate_01(), p.integrate_01());
    }

    #[test]
    fn bernstein_calculus_matches_monomial() {
        let p = mono(&[1, 2, -3, 4]);
        let b = p.to_bernstein(6).unwrap();
        assert_eq!(b.differentiate(2).to_monomial(), p.differentiate(2));
        assert_eq!(
            b.antidifferentiate_from_zero().to_monomial(),
            p.antidifferentiate_from_zero()
        );
        assert_eq!(b.integrate_01(), p.integrate_01());
        assert_eq!(b.elevate(9).unwrap().to_monomial(), p);
    }

    #[test]
    fn json_round_trip() {
        let p = Polynomial::monomial(vec![q(1, 3), q(-2, 7)], &());
        let s = p.to_json_string();
        assert!(s.contains("\"basis\":\"monomial\""));
        assert_eq!(Polynomial::<Rational>::from_json_str(&s, &()).unwrap(), p);
        let b = Polynomial::<f64>::bernstein(vec![0.25, 1.0, -3.5], &());
        let back = Polynomial::<f64>::from_json_str(&b.to_json_string(), &()).unwrap();
        assert_eq!(back, b);
        assert!(
            Polynomial::<f64>::from_json_str(r#"{"basis":"bernstein","n":3,"coeffs":["1"]}"#, &()).is_err()
        );
    }

    #[test]
    fn float_round_trip_degree_64() {
        let coeffs: Vec<f64> = (0..=64).map(|k| ((k * 37 % 11) as f64 - 5.0) / 3.0).collect();
        let p = Polynomial::<f64>::monomial(coeffs.clone(), &());
        let pf = p.convert_scalar::<Float>(&256);
        let back = pf.to_bernstein(64).unwrap().to_monomial().to_f64();
        for (a, b) in coeffs.iter().zip(back.coeffs()) {
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-10.0f64..10.0, 1..=max_deg + 1)
    }

    proptest! {
        #[test]
        fn addition_is_pointwise(a in arb_poly(32), b in arb_poly(32), xs in prop::collection::vec(0.0f64..=1.0, 100)) {
            let p = Polynomial::<f64>::monomial(a, &());
            let q = Polynomial::<f64>::monomial(b, &());
            let s = p.add(&q).unwrap();
            for x in xs {
                let lhs = s.eval(&x).unwrap();
                let rhs = p.eval(&x).unwrap() + q.eval(&x).unwrap();
                prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()).max(lhs.abs()) * 32.0);
            }
        }

        #[test]
        fn addition_exact_in_rationals(a in prop::collection::vec(-50i64..50, 1..20), b in prop::collection::vec(-50i64..50, 1..20), x in (-20i64..20, 1i64..20)) {
            let p = mono(&a);
            let q = mono(&b);
            let x = Rational::from(x);
            prop_assert_eq!(p.add(&q).unwrap().eval(&x).unwrap(), p.eval(&x).unwrap() + q.eval(&x).unwrap());
        }

        #[test]
        fn derivative_inverts_antiderivative(a in prop::collection::vec(-50i64..50, 1..20)) {
            let p = mono(&a);
            let back = p.antidifferentiate_from_zero().differentiate(1);
            prop_assert_eq!(back.coeffs(), p.coeffs());
        }

        #[test]
        fn monomial_bernstein_round_trip_exact(a in prop::collection::vec(-50i64..50, 1..16), extra in 0usize..5) {
            let p = mono(&a);
            let n = p.degree_bound() + extra;
            let back = p.to_bernstein(n).unwrap().to_monomial();
            for (i, c) in p.coeffs().iter().enumerate() {
                prop_assert_eq!(&back.coeffs()[i], c);
            }
        }

        #[test]
        fn partition_of_unity(n in 0usize..=64, xs in prop::collection::vec(0.0f64..=1.0, 100)) {
            let ones = Polynomial::<f64>::bernstein(vec![1.0; n + 1], &());
            for x in xs {
                prop_assert!((ones.eval(&x).unwrap() - 1.0).abs() <= 1e-13);
            }
        }

        #[test]
        fn bernstein_endpoint_values(c in prop::collection::vec(-10.0f64..10.0, 1..40)) {
            let p = Polynomial::<f64>::bernstein(c.clone(), &());
            prop_assert_eq!(p.eval(&0.0).unwrap(), c[0]);
            prop_assert_eq!(p.eval(&1.0).unwrap(), c[c.len() - 1]);
        }
    }
}
