//! Positive linear polynomial operators on `C[0, 1]`.
//!
//! Every operator produces its image as a Bernstein-form polynomial; point
//! evaluation is de Casteljau on that form. The Gavrea operator and `M_n`
//! sum terms with very large generator coefficients, so their images are
//! computed in MPFR floats at the generator's precision.

mod bernstein;
mod durrmeyer;
mod gavrea;
mod source;

use std::sync::Arc;

pub use bernstein::{apply_bernstein, bernstein_image};
pub use durrmeyer::{
    apply_durrmeyer_lupas, apply_genuine_durrmeyer, derivative_bridge_check, durrmeyer_image,
    genuine_durrmeyer_from_moments, genuine_durrmeyer_image, genuine_durrmeyer_moment,
    genuine_durrmeyer_moment_recurrence, lupas_derivative_identity_check, lupas_endpoint_moment, lupas_image,
    lupas_moment_closed_form,
};
pub use gavrea::{apply_gavrea, apply_mn, gavrea_generator_image, gavrea_image, moment_pyramid, MnOperator};
pub use source::Source;

use crate::error::{Error, Result};
use crate::functions::Func;
use crate::generator::{build_generator_auto, GeneratorPoly};
use crate::poly::Polynomial;
use crate::scalar::{Float, Rational, DEFAULT_PRECISION_BITS};

#[derive(Clone, Debug)]
pub enum OperatorKind {
    Bernstein {
        n: usize,
    },
    GenuineDurrmeyer {
        n: usize,
    },
    Durrmeyer {
        n: usize,
    },
    Lupas {
        n: usize,
        alpha: f64,
    },
    /// Gavrea operator driven by a built generator.
    Gavrea(Arc<GeneratorPoly>),
    /// Gavrea operator driven by an arbitrary exact polynomial.
    GavreaPoly(Polynomial<Rational>),
    Mn(Arc<MnOperator>),
}

#[derive(Clone, Debug)]
pub struct OperatorSpec {
    pub kind: OperatorKind,
    /// Gauss order for non-polynomial inputs; `None` picks a default from
    /// the degree and precision.
    pub quadrature_order: Option<usize>,
    /// Working precision for non-generator operators.
    pub precision_bits: u32,
}

impl OperatorSpec {
    fn of(kind: OperatorKind) -> Self {
        Self {
            kind,
            quadrature_order: None,
            precision_bits: DEFAULT_PRECISION_BITS,
        }
    }

    pub fn bernstein(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("Bernstein operator needs n >= 1".into()));
        }
        Ok(Self::of(OperatorKind::Bernstein { n }))
    }

    pub fn genuine_durrmeyer(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(
                "genuine Durrmeyer operator needs n >= 2".into(),
            ));
        }
        Ok(Self::of(OperatorKind::GenuineDurrmeyer { n }))
    }

    pub fn durrmeyer(n: usize) -> Self {
        Self::of(OperatorKind::Durrmeyer { n })
    }

    pub fn lupas(n: usize, alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "Lupas parameter must exceed -1, got {alpha}"
            )));
        }
        Ok(Self::of(OperatorKind::Lupas { n, alpha }))
    }

    /// Gavrea operator for a built generator; the generator invariants are
    /// re-checked.
    pub fn gavrea(gen: Arc<GeneratorPoly>) -> Result<Self> {
        let err = (gen.integral.clone() - 1u32).abs().to_f64();
        if err > 1e-20 || gen.derivative_min_rel.iter().any(|v| *v < -1e-15) {
            return Err(Error::InvalidParameter(
                "generator violates its unit-integral or sign invariants".into(),
            ));
        }
        let bits = gen.precision_bits;
        Ok(Self {
            precision_bits: bits,
            ..Self::of(OperatorKind::Gavrea(gen))
        })
    }

    pub fn gavrea_poly(p: Polynomial<Rational>) -> Self {
        Self::of(OperatorKind::GavreaPoly(p.to_monomial()))
    }

    pub fn mn(q: usize, n: usize) -> Result<Self> {
        let m = MnOperator::new(q, n)?;
        let bits = m.precision_bits();
        Ok(Self {
            precision_bits: bits,
            ..Self::of(OperatorKind::Mn(Arc::new(m)))
        })
    }

    pub fn with_quadrature_order(mut self, order: usize) -> Self {
        self.quadrature_order = Some(order);
        self
    }

    /// Parses `bernstein:N`, `genuine:N`, `durrmeyer:N`, `lupas:N:ALPHA`,
    /// `gavrea:N:R` (builds the degree-N generator of order R) and `mn:Q:N`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let int = |v: &str| -> Result<usize> {
            v.parse::<usize>()
                .map_err(|e| Error::Parse(format!("{v:?} in operator spec {s:?}: {e}")))
        };
        match parts.as_slice() {
            ["bernstein", n] => Self::bernstein(int(n)?),
            ["genuine", n] => Self::genuine_durrmeyer(int(n)?),
            ["durrmeyer", n] => Ok(Self::durrmeyer(int(n)?)),
            ["lupas", n, a] => {
                let a = a
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("{a:?} in operator spec {s:?}: {e}")))?;
                Self::lupas(int(n)?, a)
            }
            ["gavrea", n, r] => Self::gavrea(Arc::new(build_generator_auto(int(n)?, int(r)?)?)),
            ["mn", q, n] => Self::mn(int(q)?, int(n)?),
            _ => Err(Error::Parse(format!("unrecognized operator spec {s:?}"))),
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            OperatorKind::Bernstein { n } => format!("bernstein:{n}"),
            OperatorKind::GenuineDurrmeyer { n } => format!("genuine:{n}"),
            OperatorKind::Durrmeyer { n } => format!("durrmeyer:{n}"),
            OperatorKind::Lupas { n, alpha } => format!("lupas:{n}:{alpha}"),
            OperatorKind::Gavrea(g) => format!("gavrea:{}:{}", g.n, g.r),
            OperatorKind::GavreaPoly(p) => format!("gavrea-poly(degree {})", p.degree()),
            OperatorKind::Mn(m) => format!("mn:{}:{}", m.q, m.n),
        }
    }

    /// Degree of the image space.
    pub fn n(&self) -> usize {
        match &self.kind {
            OperatorKind::Bernstein { n }
            | OperatorKind::GenuineDurrmeyer { n }
            | OperatorKind::Durrmeyer { n }
            | OperatorKind::Lupas { n, .. } => *n,
            OperatorKind::Gavrea(g) => g.p.degree() + 2,
            OperatorKind::GavreaPoly(p) => p.degree() + 2,
            OperatorKind::Mn(m) => m.n,
        }
    }

    /// Image of `f` in Bernstein form at the working precision.
    pub fn image<F: Source<Float> + ?Sized>(&self, f: &F) -> Result<Polynomial<Float>> {
        let bits = self.precision_bits;
        let order = self.quadrature_order;
        match &self.kind {
            OperatorKind::Bernstein { n } => bernstein_image(*n, f, &bits),
            OperatorKind::GenuineDurrmeyer { n } => genuine_durrmeyer_image(*n, f, order, &bits),
            OperatorKind::Durrmeyer { n } => durrmeyer_image(*n, f, order, &bits),
            OperatorKind::Lupas { n, alpha } => lupas_image(*n, &Float::with_val(bits, *alpha), f, order),
            OperatorKind::Gavrea(g) => gavrea_generator_image(g, f, order),
            OperatorKind::GavreaPoly(p) => {
                let a: Vec<Float> = p.coeffs().iter().map(|c| Float::with_val(bits, c)).collect();
                gavrea_image(&a, f, order, &bits)
            }
            OperatorKind::Mn(m) => m.image(f, order),
        }
    }

    pub fn image_f64<F: Source<Float> + ?Sized>(&self, f: &F) -> Result<Polynomial<f64>> {
        Ok(self.image(f)?.to_f64())
    }

    pub fn apply<F: Source<Float> + ?Sized>(&self, f: &F, x: f64) -> Result<f64> {
        self.image_f64(f)?.eval(&x)
    }

    /// Exact image of a rational polynomial. Generator coefficients are
    /// taken as the exact binary values stored in the generator.
    pub fn image_exact(&self, p: &Polynomial<Rational>) -> Result<Polynomial<Rational>> {
        let to_q = |g: &GeneratorPoly| -> Vec<Rational> {
            g.p.coeffs()
                .iter()
                .map(|c| c.to_rational().expect("generator coefficients are finite"))
                .collect()
        };
        match &self.kind {
            OperatorKind::Bernstein { n } => bernstein_image(*n, p, &()),
            OperatorKind::GenuineDurrmeyer { n } => genuine_durrmeyer_image(*n, p, None, &()),
            OperatorKind::Durrmeyer { n } => durrmeyer_image(*n, p, None, &()),
            OperatorKind::Lupas { n, alpha } => {
                let a = Rational::from_f64(*alpha).expect("alpha is finite");
                lupas_image(*n, &a, p, None)
            }
            OperatorKind::Gavrea(g) => gavrea_image(&to_q(g), p, None, &()),
            OperatorKind::GavreaPoly(a) => gavrea_image(a.coeffs(), p, None, &()),
            OperatorKind::Mn(m) => match &m.generator {
                Some(g) => gavrea_image(&to_q(g), p, None, &()),
                None => Ok(Polynomial::bernstein(
                    vec![
                        p.eval_unchecked(&Rational::from(0)),
                        p.eval_unchecked(&Rational::from(1)),
                    ],
                    &(),
                )),
            },
        }
    }
}

/// Images of `e_0, e_1, e_2` and the coefficient `alpha_n` in
/// `L(e_2, x) - x^2 = alpha_n x (1 - x)`.
#[derive(Clone, Debug)]
pub struct MomentProfile {
    pub n: usize,
    pub e0: Polynomial<Float>,
    pub e1: Polynomial<Float>,
    pub e2: Polynomial<Float>,
    pub alpha_n: f64,
    /// Grid sup of `L(e_2) - x^2 - alpha_n x(1-x)`.
    pub residual: f64,
}

/// Extracts the moment profile; fails with `NonConforming` when linear
/// functions are not preserved or `L(e_2) - x^2` is not proportional to
/// `x(1-x)` within `1e-10`.
pub fn moment_profile(spec: &OperatorSpec) -> Result<MomentProfile> {
    let e0 = spec.image(&Func::Power(0))?;
    let e1 = spec.image(&Func::Power(1))?;
    let e2 = spec.image(&Func::Power(2))?;
    let (f0, f1, f2) = (e0.to_f64(), e1.to_f64(), e2.to_f64());
    let alpha = 4.0 * (f2.eval(&0.5)? - 0.25);
    let mut lin_err = 0f64;
    let mut residual = 0f64;
    for i in 0..=100 {
        let x = i as f64 / 100.0;
        lin_err = lin_err
            .max((f0.eval(&x)? - 1.0).abs())
            .max((f1.eval(&x)? - x).abs());
        residual = residual.max((f2.eval(&x)? - x * x - alpha * x * (1.0 - x)).abs());
    }
    if lin_err > 1e-10 {
        return Err(Error::NonConforming(format!(
            "{} does not preserve linear functions (error {lin_err:e})",
            spec.name()
        )));
    }
    if residual > 1e-10 {
        return Err(Error::NonConforming(format!(
            "{}: L(e_2) - x^2 is not proportional to x(1-x) (residual {residual:e})",
            spec.name()
        )));
    }
    Ok(MomentProfile {
        n: spec.n(),
        e0,
        e1,
        e2,
        alpha_n: alpha,
        residual,
    })
}
