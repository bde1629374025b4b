//! Positive linear polynomial operators on `[0, 1]` that preserve
//! k-monotonicity, together with the machinery they rest on: exact and
//! extended-precision polynomial arithmetic, Chebyshev and ultraspherical
//! polynomials, Durrmeyer-type operators, Ditzian-Totik moduli of
//! smoothness, numerical shape checks and a linear-programming oracle for
//! best (shape-constrained) uniform approximation.

pub mod best_approx;
pub mod error;
pub mod experiments;
pub mod functions;
pub mod generator;
pub mod moduli;
pub mod operators;
pub mod poly;
pub mod quadrature;
pub mod scalar;
pub mod shape;
pub mod simplex;
pub mod special;

pub use best_approx::{best_qmonotone, best_uniform, jackson_ratio, ApproxResult};
pub use error::{Error, Result};
pub use experiments::{ExperimentConfig, ExperimentOutput};
pub use functions::{Catalog, Func};
pub use generator::{build_generator, build_generator_auto, GeneratorPoly};
pub use moduli::{omega, omega_dt, sym_diff, ModulusEstimate, StepWeight};
pub use operators::{moment_profile, MomentProfile, OperatorKind, OperatorSpec};
pub use poly::{Basis, Polynomial};
pub use scalar::{Float, Rational, RealScalar, Scalar, DEFAULT_PRECISION_BITS};
pub use shape::{check_k_monotone_fn, check_k_monotone_poly, ShapeReport};
