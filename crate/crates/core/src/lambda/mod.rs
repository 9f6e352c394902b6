//! Divided-power lambda calculus.
//!
//! The basis monomial `λ^(n)` stands for `λ^n / Γ(n+1)` with rational `n`;
//! it is the zero element exactly when `n` is a negative integer, and that
//! rule is enforced eagerly: series never store negative-integer exponents.
//! `1/Γ` itself is never evaluated — every operation reduces to rational
//! ratio identities such as `(n+1)·λ^(n+1) = λ^(n)·λ`.

pub mod series;
pub mod tpoly;
pub mod ops;

pub use ops::{
    binomial_expand, convolve, dlambda, dz, fourier_transform, generalized_binomial,
    integral_0_lambda, mono_mul, mul_by_z, shift_by_t, shift_by_t_with, ConvolveError,
    LambdaExponent, MonoMulError,
};
pub use series::{Coeff, LambdaSeries, LaurentLikeSeries, Series2};
pub use tpoly::TPolynomial;
