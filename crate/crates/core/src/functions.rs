//! Functions on `[0, 1]` fed to the operators: a catalog of closed-form
//! entries, explicit polynomials and opaque callbacks.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::quadrature::{gauss_jacobi, gauss_legendre};
use crate::scalar::{binomial, pochhammer, Rational, RealScalar, Scalar};

/// A function on `[0, 1]`.
#[derive(Clone)]
pub enum Func {
    Exp,
    /// `x^p`.
    Power(u32),
    /// `(x - a)_+^p`.
    TruncPower {
        a: f64,
        p: u32,
    },
    /// `x^eps`, `0 < eps`.
    XEps(f64),
    /// `ln(x + eps)`, `eps > 0`.
    Log(f64),
    /// `a + b x`.
    Linear {
        a: f64,
        b: f64,
    },
    /// Linear interpolation through `(x_i, y_i)`, with `x_0 = 0` and `x_last = 1`.
    PiecewiseLinear(Vec<(f64, f64)>),
    Poly(Polynomial<Rational>),
    /// Opaque function, evaluated in `f64` only.
    Callback {
        name: String,
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn exact(v: f64) -> Rational {
    Rational::from_f64(v).expect("finite parameter")
}

impl Func {
    pub fn callback(name: &str, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Func::Callback {
            name: name.to_string(),
            f: Arc::new(f),
        }
    }

    pub fn piecewise_linear(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidParameter(
                "piecewise linear needs two points".into(),
            ));
        }
        if points[0].0 != 0.0 || points[points.len() - 1].0 != 1.0 {
            return Err(Error::InvalidParameter(
                "piecewise linear knots must span [0, 1]".into(),
            ));
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidParameter(
                "knots must be strictly increasing".into(),
            ));
        }
        Ok(Func::PiecewiseLinear(points))
    }

    /// Parses the CLI spelling: `exp`, `pow:P`, `trunc:A:P`, `xeps:E`,
    /// `log:E`, `linear:A:B`, `pwl:x,y;x,y;...`, `poly:FILE`.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        let num = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("{s:?} in function spec {spec:?}: {e}")))
        };
        let int = |s: &str| -> Result<u32> {
            s.trim()
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("{s:?} in function spec {spec:?}: {e}")))
        };
        let bad = || Error::Parse(format!("unrecognized function spec {spec:?}"));
        let f = match parts.as_slice() {
            ["exp"] => Func::Exp,
            ["pow", p] => Func::Power(int(p)?),
            ["trunc", a, p] => Func::TruncPower {
                a: num(a)?,
                p: int(p)?,
            },
            ["xeps", e] => Func::XEps(num(e)?),
            ["log", e] => Func::Log(num(e)?),
            ["linear", a, b] => Func::Linear {
                a: num(a)?,
                b: num(b)?,
            },
            ["pwl", pts] => {
                let mut v = Vec::new();
                for pair in pts.split(';') {
                    let (x, y) = pair.split_once(',').ok_or_else(bad)?;
                    v.push((num(x)?, num(y)?));
                }
                Func::piecewise_linear(v)?
            }
            ["poly", path] => {
                let text = std::fs::read_to_string(path)?;
                Func::Poly(Polynomial::from_json_str(&text, &())?)
            }
            _ => return Err(bad()),
        };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        match self {
            Func::XEps(e) if !(*e > 0.0) => {
                Err(Error::InvalidParameter(format!("x^eps needs eps > 0, got {e}")))
            }
            Func::Log(e) if !(*e > 0.0) => Err(Error::InvalidParameter(format!(
                "ln(x+eps) needs eps > 0, got {e}"
            ))),
            Func::TruncPower { a, .. } if !(0.0..=1.0).contains(a) => Err(Error::InvalidParameter(format!(
                "truncation point {a} outside [0, 1]"
            ))),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Func::Exp => "exp".into(),
            Func::Power(p) => format!("pow:{p}"),
            Func::TruncPower { a, p } => format!("trunc:{a}:{p}"),
            Func::XEps(e) => format!("xeps:{e}"),
            Func::Log(e) => format!("log:{e}"),
            Func::Linear { a, b } => format!("linear:{a}:{b}"),
            Func::PiecewiseLinear(pts) => {
                let body: Vec<String> = pts.iter().map(|(x, y)| format!("{x},{y}")).collect();
                format!("pwl:{}", body.join(";"))
            }
            Func::Poly(p) => format!("poly(degree {})", p.degree()),
            Func::Callback { name, .. } => format!("callback:{name}"),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Func::Exp => x.exp(),
            Func::Power(p) => x.powi(*p as i32),
            Func::TruncPower { a, p } => (x - a).max(0.0).powi(*p as i32),
            Func::XEps(e) => {
                if x <= 0.0 {
                    0.0
                } else {
                    x.powf(*e)
                }
            }
            Func::Log(e) => (x + e).ln(),
            Func::Linear { a, b } => a + b * x,
            Func::PiecewiseLinear(pts) => {
                let i = pts.partition_point(|(k, _)| *k <= x).clamp(1, pts.len() - 1);
                let (x0, y0) = pts[i - 1];
                let (x1, y1) = pts[i];
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
            Func::Poly(p) => p.to_f64().eval_unchecked(&x),
            Func::Callback { f, .. } => f(x),
        }
    }

    /// Evaluation in a real backend. Callbacks are evaluated in `f64`.
    pub fn eval_s<S: RealScalar>(&self, x: &S) -> S {
        let ctx = x.ctx();
        let zero = S::zero(&ctx);
        match self {
            Func::Exp => x.exp(),
            Func::Power(p) => x.powi(*p as usize),
            Func::TruncPower { a, p } => {
                let d = x.clone() - S::from_f64(*a, &ctx);
                if d > zero {
                    d.powi(*p as usize)
                } else {
                    zero
                }
            }
            Func::XEps(e) => {
                if *x <= zero {
                    zero
                } else {
                    x.powf(&S::from_f64(*e, &ctx))
                }
            }
            Func::Log(e) => (x.clone() + S::from_f64(*e, &ctx)).ln(),
            Func::Linear { a, b } => S::from_f64(*a, &ctx) + S::from_f64(*b, &ctx) * x,
            Func::PiecewiseLinear(pts) => {
                let xf = x.to_f64();
                let i = pts.partition_point(|(k, _)| *k <= xf).clamp(1, pts.len() - 1);
                let (x0, y0) = pts[i - 1];
                let (x1, y1) = pts[i];
                let (x0, y0, x1, y1) = (
                    S::from_f64(x0, &ctx),
                    S::from_f64(y0, &ctx),
                    S::from_f64(x1, &ctx),
                    S::from_f64(y1, &ctx),
                );
                y0.clone() + (y1 - y0) * (x.clone() - &x0) / (x1 - x0)
            }
            Func::Poly(p) => p.convert_scalar::<S>(&ctx).eval_unchecked(x),
            Func::Callback { f, .. } => S::from_f64(f(x.to_f64()), &ctx),
        }
    }

    /// Monomial form when the function is a polynomial.
    pub fn as_polynomial(&self) -> Option<Polynomial<Rational>> {
        match self {
            Func::Power(p) => Some(Polynomial::e(*p as usize, &())),
            Func::Linear { a, b } => Some(Polynomial::monomial(vec![exact(*a), exact(*b)], &())),
            Func::TruncPower { a, p } if *a == 0.0 => Some(Polynomial::e(*p as usize, &())),
            Func::Poly(p) => Some(p.to_monomial()),
            _ => None,
        }
    }

    /// Interior points where the function is not analytic, plus a geometric
    /// grading toward 0 for the endpoint singularities of `x^eps`, `ln(x+eps)`.
    pub fn quadrature_cuts(&self) -> Vec<f64> {
        let mut cuts = vec![0.0];
        match self {
            Func::TruncPower { a, .. } if *a > 0.0 && *a < 1.0 => cuts.push(*a),
            Func::PiecewiseLinear(pts) => cuts.extend(pts[1..pts.len() - 1].iter().map(|p| p.0)),
            Func::XEps(_) => {
                let mut h = 0.5f64.powi(60);
                while h < 0.5 {
                    cuts.push(h);
                    h *= 2.0;
                }
            }
            Func::Log(e) => {
                let mut h = *e;
                while h < 0.5 {
                    cuts.push(h);
                    h *= 2.0;
                }
            }
            _ => {}
        }
        cuts.push(1.0);
        cuts
    }

    /// Orders `k` for which the function is known to be k-monotone; `None`
    /// for inputs without a declared range.
    pub fn known_monotone(&self, k: usize) -> Option<bool> {
        Some(match self {
            Func::Exp | Func::Power(_) => true,
            Func::TruncPower { p, .. } => k <= *p as usize + 1,
            Func::XEps(_) => k <= 1,
            Func::Log(e) => k == 1 || (k == 0 && *e >= 1.0),
            Func::Linear { a, b } => match k {
                0 => *a >= 0.0 && a + b >= 0.0,
                1 => *b >= 0.0,
                _ => true,
            },
            Func::PiecewiseLinear(pts) => match k {
                0 => pts.iter().all(|p| p.1 >= 0.0),
                1 => pts.windows(2).all(|w| w[1].1 >= w[0].1),
                2 => {
                    let s: Vec<f64> = pts
                        .windows(2)
                        .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
                        .collect();
                    s.windows(2).all(|w| w[1] >= w[0])
                }
                _ => return None,
            },
            Func::Poly(_) | Func::Callback { .. } => return None,
        })
    }

    /// Polynomial degree if the function is a polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.as_polynomial().map(|p| p.degree())
    }

    /// `∫_0^1 p_{K,j}(t) f(t) dt` for `j = 0..=K`. Exact for polynomials and
    /// `x^eps`; otherwise composite Gauss–Legendre over `quadrature_cuts`
    /// with `order` nodes per piece (default sized from `K` and the precision).
    pub fn bernstein_moments<S: RealScalar>(
        &self,
        k: usize,
        order: Option<usize>,
        ctx: &S::Ctx,
    ) -> Result<Vec<S>> {
        if let Some(p) = self.as_polynomial() {
            let c: Vec<S> = p.coeffs().iter().map(|q| S::from_rational(q, ctx)).collect();
            return Ok(poly_bernstein_moments(&c, k, ctx));
        }
        if let Func::XEps(e) = self {
            let e = S::from_f64(*e, ctx);
            let mut m = vec![S::zero(ctx); k + 1];
            m[k] = S::one(ctx) / (S::from_usize(k + 1, ctx) + &e);
            for j in (1..=k).rev() {
                let jj = S::from_usize(j, ctx);
                m[j - 1] = m[j].clone() * &jj / (jj.clone() + &e);
            }
            return Ok(m);
        }
        let n = order.unwrap_or_else(|| default_order(k, S::precision_bits(ctx)));
        let rule = gauss_legendre::<S>(n, ctx)?;
        let cuts: Vec<S> = self
            .quadrature_cuts()
            .iter()
            .map(|c| S::from_f64(*c, ctx))
            .collect();
        let mut m = vec![S::zero(ctx); k + 1];
        let mut basis = vec![S::zero(ctx); k + 1];
        for (t, w) in rule.composite(&cuts) {
            let fw = self.eval_s(&t) * &w;
            bernstein_row(k, &t, &mut basis);
            for (mj, b) in m.iter_mut().zip(&basis) {
                *mj += b.clone() * &fw;
            }
        }
        Ok(m)
    }

    /// Normalized Lupaş inner products `<p_{K,j}, f> / <p_{K,j}, 1>` for the
    /// weight `(t (1-t))^alpha`.
    pub fn lupas_ratios<S: RealScalar>(&self, k: usize, alpha: &S, order: Option<usize>) -> Result<Vec<S>> {
        let ctx = alpha.ctx();
        if *alpha <= -S::one(&ctx) {
            return Err(Error::InvalidParameter(format!(
                "Lupas parameter must exceed -1, got {}",
                alpha.to_f64()
            )));
        }
        if let Some(p) = self.as_polynomial() {
            let c: Vec<S> = p.coeffs().iter().map(|q| S::from_rational(q, &ctx)).collect();
            return Ok(poly_lupas_ratios(&c, k, alpha));
        }
        if alpha.is_zero() {
            let m = self.bernstein_moments::<S>(k, order, &ctx)?;
            let kp1 = S::from_usize(k + 1, &ctx);
            return Ok(m.into_iter().map(|v| v * &kp1).collect());
        }
        let n = order.unwrap_or_else(|| default_order(k, S::precision_bits(&ctx)));
        let rule = gauss_jacobi::<S>(n, alpha)?;
        let mut acc = vec![S::zero(&ctx); k + 1];
        let mut basis = vec![S::zero(&ctx); k + 1];
        for (t, w) in rule.nodes.iter().zip(&rule.weights) {
            let fw = self.eval_s(t) * w;
            bernstein_row(k, t, &mut basis);
            for (a, b) in acc.iter_mut().zip(&basis) {
                *a += b.clone() * &fw;
            }
        }
        let a1 = alpha.clone() + S::one(&ctx);
        let two_a2 = alpha.clone() * S::from_i64(2, &ctx) + S::from_i64(2, &ctx);
        let norm = pochhammer(&two_a2, k);
        Ok(acc
            .into_iter()
            .enumerate()
            .map(|(j, v)| {
                let mass = binomial::<S>(k, j, &ctx) * pochhammer(&a1, j) * pochhammer(&a1, k - j) / &norm;
                v / mass
            })
            .collect())
    }
}

/// `∫ p_{k,j} f` for the monomial-coefficient polynomial `c`, exactly:
/// `∫ p_{k,j} t^i = (j+1)_i / ((k+1) (k+2)_i)`.
pub fn poly_bernstein_moments<S: Scalar>(c: &[S], k: usize, ctx: &S::Ctx) -> Vec<S> {
    let kp1 = S::from_usize(k + 1, ctx);
    let kp2 = S::from_usize(k + 2, ctx);
    (0..=k)
        .map(|j| {
            let jp1 = S::from_usize(j + 1, ctx);
            let mut s = S::zero(ctx);
            let mut num = S::one(ctx);
            let mut den = S::one(ctx);
            for (i, ci) in c.iter().enumerate() {
                if i > 0 {
                    num *= jp1.clone() + S::from_usize(i - 1, ctx);
                    den *= kp2.clone() + S::from_usize(i - 1, ctx);
                }
                s += ci.clone() * &num / &den;
            }
            s / &kp1
        })
        .collect()
}

/// `<p_{k,j}, f> / <p_{k,j}, 1>` for the monomial-coefficient polynomial `c`:
/// the ratio for `t^i` is `(alpha+j+1)_i / (k+2alpha+2)_i`.
pub fn poly_lupas_ratios<S: Scalar>(c: &[S], k: usize, alpha: &S) -> Vec<S> {
    let ctx = alpha.ctx();
    let den_base = S::from_usize(k + 2, &ctx) + alpha.clone() * S::from_i64(2, &ctx);
    (0..=k)
        .map(|j| {
            let num_base = alpha.clone() + S::from_usize(j + 1, &ctx);
            let mut s = S::zero(&ctx);
            let mut num = S::one(&ctx);
            let mut den = S::one(&ctx);
            for (i, ci) in c.iter().enumerate() {
                if i > 0 {
                    num *= num_base.clone() + S::from_usize(i - 1, &ctx);
                    den *= den_base.clone() + S::from_usize(i - 1, &ctx);
                }
                s += ci.clone() * &num / &den;
            }
            s
        })
        .collect()
}

/// Default Gauss order for moments of degree-`k` Bernstein polynomials.
pub fn default_order(k: usize, bits: u32) -> usize {
    (k + 2 + bits as usize / 8).max(64)
}

/// All `p_{k,j}(t)`, `j = 0..=k`, computed outward from the mode so the
/// hardware backend neither underflows at the peak nor loses the tails.
pub fn bernstein_row<S: RealScalar>(k: usize, t: &S, out: &mut [S]) {
    let ctx = t.ctx();
    let one = S::one(&ctx);
    let s = one.clone() - t;
    if t.is_zero() || s.is_zero() {
        for v in out.iter_mut() {
            *v = S::zero(&ctx);
        }
        let idx = if t.is_zero() { 0 } else { k };
        out[idx] = one;
        return;
    }
    let mode = ((k as f64) * t.to_f64()).round().clamp(0.0, k as f64) as usize;
    out[mode] = binomial::<S>(k, mode, &ctx) * t.powi(mode) * s.powi(k - mode);
    let ratio = t.clone() / &s;
    for j in mode..k {
        // p_{k,j+1} = p_{k,j} (k-j)/(j+1) t/(1-t)
        out[j + 1] = out[j].clone() * S::from_usize(k - j, &ctx) / S::from_usize(j + 1, &ctx) * &ratio;
    }
    for j in (1..=mode).rev() {
        out[j - 1] = out[j].clone() * S::from_usize(j, &ctx) / S::from_usize(k - j + 1, &ctx) / &ratio;
    }
}

/// Named catalog of shape-test inputs.
pub struct Catalog;

impl Catalog {
    pub fn names() -> Vec<&'static str> {
        vec![
            "exp",
            "pow:P",
            "trunc:A:P",
            "xeps:E",
            "log:E",
            "linear:A:B",
            "pwl:x,y;...",
            "poly:FILE",
        ]
    }

    /// Five catalog functions known to be q-monotone (and k-monotone for all
    /// `k <= q`).
    pub fn q_monotone(q: usize) -> Vec<Func> {
        let q32 = q as u32;
        match q {
            0 => vec![
                Func::Exp,
                Func::Power(2),
                Func::TruncPower { a: 0.5, p: 1 },
                Func::XEps(0.5),
                Func::Log(1.5),
            ],
            1 => vec![
                Func::Exp,
                Func::Power(2),
                Func::TruncPower { a: 0.5, p: 1 },
                Func::XEps(0.5),
                Func::Log(1.0),
            ],
            _ => vec![
                Func::Exp,
                Func::Power(q32),
                Func::Power(q32 + 1),
                Func::TruncPower { a: 0.5, p: q32 - 1 },
                Func::TruncPower { a: 0.4, p: q32 },
            ],
        }
    }
}
