//! The named operations of the divided-power calculus: formal Fourier
//! transform, monomial products, binomial expansion, the definite integral
//! and the `λ ↦ λ + T` shift.

use core::fmt;

use crate::lambda::series::{Coeff, LambdaSeries, LaurentLikeSeries, Series2};
use crate::lambda::tpoly::{iterated_t, TPolynomial};
use crate::rat::{binomial, Rat};

/// The exponent of a basis monomial `λ^(n) = λ^n / Γ(n+1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LambdaExponent(pub Rat);

impl LambdaExponent {
    pub fn new(n: Rat) -> Self {
        LambdaExponent(n)
    }

    /// `λ^(n)` is the zero element exactly when `n` is a negative integer.
    pub fn is_vanishing(&self) -> bool {
        self.0.is_negative_integer()
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }
}

impl fmt::Display for LambdaExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ^({})", self.0)
    }
}

/// `binom(n, j) = n(n-1)⋯(n-j+1)/j!` for rational `n`.
pub fn generalized_binomial(n: &Rat, j: u32) -> Rat {
    binomial(n, j)
}

/// `F^λ_z(z^{-n-1}) = λ^(n)`; negative-integer `n` drop out.
pub fn fourier_transform<C: Coeff>(f: &LaurentLikeSeries<C>) -> LambdaSeries<C> {
    let mut out = LambdaSeries::zero();
    out.set_cutoff(f.cutoff().cloned());
    for (r, c) in f.terms() {
        out.add_term(r.clone(), c.clone());
    }
    out
}

pub fn dz<C: Coeff>(f: &LaurentLikeSeries<C>) -> LaurentLikeSeries<C> {
    f.dz()
}

pub fn mul_by_z<C: Coeff>(f: &LaurentLikeSeries<C>) -> LaurentLikeSeries<C> {
    f.mul_z()
}

pub fn dlambda<C: Coeff>(f: &LambdaSeries<C>) -> LambdaSeries<C> {
    f.dlambda()
}

pub fn integral_0_lambda<C: Coeff>(f: &LambdaSeries<C>) -> LambdaSeries<C> {
    f.integral_0_lambda()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoMulError {
    /// `λ^(a) λ^(b)` with both exponents fractional needs Γ-function ratios
    /// outside the rationals.
    BothFractional { a: Rat, b: Rat },
}

impl fmt::Display for MonoMulError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoMulError::BothFractional { a, b } => write!(
                f,
                "product λ^({a})·λ^({b}) needs a nonnegative-integer factor"
            ),
        }
    }
}

/// `λ^(n) λ^(m) = binom(n+m, j) λ^(n+m)` where `j` is an integer argument.
/// At least one exponent must be a nonnegative integer.
pub fn mono_mul(a: &LambdaExponent, b: &LambdaExponent) -> Result<LambdaSeries<Rat>, MonoMulError> {
    if a.is_vanishing() || b.is_vanishing() {
        return Ok(LambdaSeries::zero());
    }
    let j = if a.0.is_nonneg_integer() {
        a.0.to_integer().expect("exponent fits") as u32
    } else if b.0.is_nonneg_integer() {
        b.0.to_integer().expect("exponent fits") as u32
    } else {
        return Err(MonoMulError::BothFractional {
            a: a.0.clone(),
            b: b.0.clone(),
        });
    };
    let e = &a.0 + &b.0;
    Ok(LambdaSeries::from_term(e.clone(), binomial(&e, j)))
}

/// `ι_{μ,λ}(λ+μ)^(n) = Σ_{k=0}^{D} λ^(k) μ^(n-k)`. Exact (no cutoff) when
/// `n` is an integer with `n <= D`, truncated otherwise.
pub fn binomial_expand(n: &Rat, depth: u32) -> Series2<Rat> {
    let mut out = Series2::zero();
    let exact = n.is_integer() && n <= &Rat::from_int(depth as i64);
    if !exact {
        out.set_cutoffs(None, Some(&(n - &Rat::from_int(depth as i64)) - &Rat::one()));
    }
    for k in 0..=depth {
        out.add_term(
            Rat::from_int(k as i64),
            n - &Rat::from_int(k as i64),
            Rat::one(),
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConvolveError {
    /// `k` in `Z_{<0}` is outside the domain of the convolution identity.
    NegativeIntegerBase { k: Rat },
    /// The expanded sum failed to telescope to `λ^(k+i+1)`; this indicates
    /// an internal arithmetic bug, never bad input.
    TelescopingFailed { k: Rat, i: u32 },
}

impl fmt::Display for ConvolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvolveError::NegativeIntegerBase { k } => {
                write!(f, "convolution base exponent {k} is a negative integer")
            }
            ConvolveError::TelescopingFailed { k, i } => {
                write!(f, "convolution telescoping failed at k={k}, i={i}")
            }
        }
    }
}

/// Evaluate `∫_0^λ μ^(k) (λ-μ)^(i) dμ` by expanding the integrand and
/// check that it telescopes to the closed form `λ^(k+i+1)`.
pub fn convolve(k: &Rat, i: u32) -> Result<LambdaExponent, ConvolveError> {
    if k.is_negative_integer() {
        return Err(ConvolveError::NegativeIntegerBase { k: k.clone() });
    }
    // integrand: Σ_j (-1)^j binom(k+j, j) μ^(k+j) λ^(i-j)
    let mut integrand = Series2::zero();
    for j in 0..=i {
        let sign = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
        let kj = k + &Rat::from_int(j as i64);
        integrand.add_term(
            Rat::from_int((i - j) as i64),
            kj.clone(),
            &sign * &binomial(&kj, j),
        );
    }
    let collapsed = integrand.integrate_mu_0_lambda();
    let expected = &(k + &Rat::from_int(i as i64)) + &Rat::one();
    let ok = collapsed.num_terms() == 1 && collapsed.coeff(&expected).is_one();
    if !ok {
        return Err(ConvolveError::TelescopingFailed { k: k.clone(), i });
    }
    Ok(LambdaExponent(expected))
}

/// `(λ+T)^(n) = Σ_{k>=0} λ^(n-k) T^(k)` applied to every term of `f`,
/// with the translation powers kept formal. Exact when every exponent is
/// an integer not exceeding `depth`.
pub fn shift_by_t<C: Coeff>(
    f: &LambdaSeries<C>,
    depth: u32,
) -> LambdaSeries<TPolynomial<C>> {
    let mut out = LambdaSeries::zero();
    out.set_cutoff(f.cutoff().cloned());
    for (n, c) in f.terms() {
        if !(n.is_integer() && n <= &Rat::from_int(depth as i64)) {
            out.set_cutoff(Some(&(n - &Rat::from_int(depth as i64)) - &Rat::one()));
        }
        for k in 0..=depth {
            let e = n - &Rat::from_int(k as i64);
            let mut tp = TPolynomial::zero();
            tp.add_term(k, c.clone());
            out.add_term(e, tp);
        }
    }
    out
}

/// `(λ+T)^(n)` with a concrete translation operator substituted for the
/// formal powers.
pub fn shift_by_t_with<C: Coeff>(
    f: &LambdaSeries<C>,
    t_op: &impl Fn(&C) -> C,
    depth: u32,
) -> LambdaSeries<C> {
    let mut out = LambdaSeries::zero();
    out.set_cutoff(f.cutoff().cloned());
    for (n, c) in f.terms() {
        if !(n.is_integer() && n <= &Rat::from_int(depth as i64)) {
            out.set_cutoff(Some(&(n - &Rat::from_int(depth as i64)) - &Rat::one()));
        }
        for k in 0..=depth {
            let e = n - &Rat::from_int(k as i64);
            out.add_term(e, iterated_t(t_op, k, c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn fourier_basis_cases() {
        // z^{-1} -> λ^(0); z^0 -> 0; z^{-3/2} -> λ^(1/2)
        let mut f = LaurentLikeSeries::zero();
        f.add_term(Rat::zero(), Rat::one());
        f.add_term(Rat::from_int(-1), Rat::one());
        f.add_term(r(1, 2), Rat::one());
        let l = fourier_transform(&f);
        assert_eq!(l.num_terms(), 2);
        assert_eq!(l.coeff(&Rat::zero()), Rat::one());
        assert_eq!(l.coeff(&r(1, 2)), Rat::one());
    }

    #[test]
    fn mono_mul_cases() {
        let m = |a: Rat, b: Rat| {
            mono_mul(&LambdaExponent(a), &LambdaExponent(b)).unwrap()
        };
        // λ^(1)·λ^(1) = 2 λ^(2)
        assert_eq!(
            m(Rat::one(), Rat::one()).coeff(&Rat::from_int(2)),
            Rat::from_int(2)
        );
        // λ^(0) is the unit
        assert_eq!(m(Rat::zero(), r(1, 2)).coeff(&r(1, 2)), Rat::one());
        // λ^(2)·λ^(1/2) = (15/8) λ^(5/2)
        assert_eq!(m(Rat::from_int(2), r(1, 2)).coeff(&r(5, 2)), r(15, 8));
        // both fractional is out of scope
        assert!(mono_mul(&LambdaExponent(r(1, 2)), &LambdaExponent(r(1, 3))).is_err());
        // a vanishing factor gives zero
        assert!(m(Rat::from_int(-2), Rat::from_int(3)).is_zero());
    }

    #[test]
    fn mono_mul_commutes_and_associates_in_scope() {
        let cases = [
            (Rat::from_int(1), r(1, 2), Rat::from_int(2)),
            (Rat::from_int(3), Rat::from_int(2), Rat::from_int(1)),
            (Rat::from_int(0), r(-3, 2), Rat::from_int(4)),
        ];
        for (a, b, c) in cases {
            let ab = mono_mul(&LambdaExponent(a.clone()), &LambdaExponent(b.clone())).unwrap();
            let ba = mono_mul(&LambdaExponent(b.clone()), &LambdaExponent(a.clone())).unwrap();
            assert!(ab.agrees_with(&ba));
            // associativity through the single surviving exponent
            let (e1, c1) = ab.terms().next().map(|(e, c)| (e.clone(), c.clone())).unwrap();
            let l = mono_mul(&LambdaExponent(e1), &LambdaExponent(c.clone()))
                .unwrap()
                .scale(&c1);
            let bc = mono_mul(&LambdaExponent(b), &LambdaExponent(c)).unwrap();
            let (e2, c2) = bc.terms().next().map(|(e, c)| (e.clone(), c.clone())).unwrap();
            let r2 = mono_mul(&LambdaExponent(a), &LambdaExponent(e2))
                .unwrap()
                .scale(&c2);
            assert!(l.agrees_with(&r2));
        }
    }

    #[test]
    fn binomial_expand_cases() {
        // n = 1: exact two terms
        let e = binomial_expand(&Rat::one(), 4);
        assert!(!e.truncated());
        assert_eq!(e.terms().count(), 2);
        // n = -2: every term vanishes
        let z = binomial_expand(&Rat::from_int(-2), 6);
        assert!(z.is_zero());
        // n = 1/2, depth 2: three retained terms
        let h = binomial_expand(&r(1, 2), 2);
        assert!(h.truncated());
        assert_eq!(h.terms().count(), 3);
        assert_eq!(
            h.terms()
                .map(|((x, y), _)| (x.clone(), y.clone()))
                .collect::<alloc::vec::Vec<_>>(),
            alloc::vec![
                (Rat::zero(), r(1, 2)),
                (Rat::one(), r(-1, 2)),
                (Rat::from_int(2), r(-3, 2))
            ]
        );
    }

    #[test]
    fn integral_examples() {
        let mut s = LambdaSeries::zero();
        s.add_term(Rat::zero(), Rat::one());
        assert_eq!(
            integral_0_lambda(&s).coeff(&Rat::one()),
            Rat::one()
        );
        let mut t = LambdaSeries::zero();
        t.add_term(r(1, 2), Rat::one());
        assert_eq!(integral_0_lambda(&t).coeff(&r(3, 2)), Rat::one());
        // μ^(-2) is already the zero element
        let mut u = LambdaSeries::<Rat>::zero();
        u.add_term(Rat::from_int(-2), Rat::one());
        assert!(integral_0_lambda(&u).is_zero());
    }

    #[test]
    fn convolve_examples() {
        assert_eq!(convolve(&Rat::zero(), 0).unwrap().0, Rat::one());
        assert_eq!(convolve(&r(1, 2), 1).unwrap().0, r(5, 2));
        assert_eq!(convolve(&r(3, 2), 4).unwrap().0, r(13, 2));
        assert!(convolve(&Rat::from_int(-1), 3).is_err());
    }

    #[test]
    fn shift_by_t_examples() {
        // (λ+T)^(1) = λ^(1) + λ^(0) T
        let f = LambdaSeries::from_term(Rat::one(), Rat::one());
        let s = shift_by_t(&f, 5);
        assert!(!s.truncated());
        assert_eq!(s.num_terms(), 2);
        // (λ+T)^(1/2) at depth 2: λ^(1/2) + λ^(-1/2)T + λ^(-3/2)T^(2)
        let g = LambdaSeries::from_term(r(1, 2), Rat::one());
        let s = shift_by_t(&g, 2);
        assert!(s.truncated());
        assert_eq!(s.num_terms(), 3);
        let deepest = s.coeff(&r(-3, 2));
        assert_eq!(deepest.degree(), Some(2));
    }
}
