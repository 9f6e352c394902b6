//! Truncated series in divided-power monomials.
//!
//! A series is a finite exponent-to-coefficient map plus a trust cutoff.
//! `cutoff = None` means the series is exact. `cutoff = Some(c)` means terms
//! with exponent `<= c` may have been dropped by truncation; everything
//! above `c` is exact. Sums and products propagate the cutoff so that
//! comparisons only ever look at fully determined coefficients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::rat::{binomial, Rat};

/// Coefficient objects of a series: elements of some rational vector space.
pub trait Coeff: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, k: &Rat) -> Self;
}

impl Coeff for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, k: &Rat) -> Self {
        self * k
    }
}

fn merge_cutoff(a: &Option<Rat>, b: &Option<Rat>) -> Option<Rat> {
    match (a, b) {
        (None, None) => None,
        (Some(x), None) => Some(x.clone()),
        (None, Some(y)) => Some(y.clone()),
        (Some(x), Some(y)) => Some(if x >= y { x.clone() } else { y.clone() }),
    }
}

fn above(cutoff: &Option<Rat>, e: &Rat) -> bool {
    cutoff.as_ref().map_or(true, |c| e > c)
}

/// A finite sum `Σ λ^(n) c_n` with rational exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSeries<C: Coeff> {
    terms: BTreeMap<Rat, C>,
    cutoff: Option<Rat>,
}

impl<C: Coeff> LambdaSeries<C> {
    pub fn zero() -> Self {
        LambdaSeries {
            terms: BTreeMap::new(),
            cutoff: None,
        }
    }

    pub fn from_term(exp: Rat, coeff: C) -> Self {
        let mut s = Self::zero();
        s.add_term(exp, coeff);
        s
    }

    /// Add `λ^(exp) coeff`; terms at negative-integer exponents vanish.
    pub fn add_term(&mut self, exp: Rat, coeff: C) {
        if coeff.is_zero() || exp.is_negative_integer() || !above(&self.cutoff, &exp) {
            return;
        }
        let updated = match self.terms.get(&exp) {
            Some(old) => old.add(&coeff),
            None => coeff,
        };
        if updated.is_zero() {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, updated);
        }
    }

    pub fn set_cutoff(&mut self, cutoff: Option<Rat>) {
        self.cutoff = merge_cutoff(&self.cutoff, &cutoff);
        if let Some(c) = self.cutoff.clone() {
            self.terms.retain(|e, _| e > &c);
        }
    }

    pub fn cutoff(&self) -> Option<&Rat> {
        self.cutoff.as_ref()
    }

    /// Whether any truncation happened while producing this series.
    pub fn truncated(&self) -> bool {
        self.cutoff.is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &Rat) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading_exponent(&self) -> Option<&Rat> {
        self.terms.keys().next_back()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.set_cutoff(rhs.cutoff.clone());
        for (e, c) in rhs.terms.iter() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            let mut z = Self::zero();
            z.set_cutoff(self.cutoff.clone());
            return z;
        }
        self.map_coeffs(|c| c.scale(k))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LambdaSeries<D> {
        let mut out = LambdaSeries::zero();
        out.set_cutoff(self.cutoff.clone());
        for (e, c) in self.terms.iter() {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// `∂_λ λ^(n) = λ^(n-1)`.
    pub fn dlambda(&self) -> Self {
        let mut out = Self::zero();
        out.set_cutoff(self.cutoff.as_ref().map(|c| c - &Rat::one()));
        for (e, c) in self.terms.iter() {
            out.add_term(e - &Rat::one(), c.clone());
        }
        out
    }

    /// Multiplication by `λ`: `λ^(n) λ = (n+1) λ^(n+1)`.
    pub fn mul_lambda(&self) -> Self {
        let mut out = Self::zero();
        out.set_cutoff(self.cutoff.as_ref().map(|c| c + &Rat::one()));
        for (e, c) in self.terms.iter() {
            let e1 = e + &Rat::one();
            out.add_term(e1.clone(), c.scale(&e1));
        }
        out
    }

    /// Multiplication by `λ^(j)` for integer `j >= 0`:
    /// `λ^(j) λ^(n) = binom(n+j, j) λ^(n+j)`.
    pub fn mul_mono_int(&self, j: u32) -> Self {
        let mut out = Self::zero();
        out.set_cutoff(self.cutoff.as_ref().map(|c| c + &Rat::from_int(j as i64)));
        for (e, c) in self.terms.iter() {
            let e1 = e + &Rat::from_int(j as i64);
            out.add_term(e1.clone(), c.scale(&binomial(&e1, j)));
        }
        out
    }

    /// `∫_0^λ μ^(k) dμ = λ^(k+1)`, termwise. Negative-integer exponents are
    /// never stored, so the `k ∈ Z_{<0} -> 0` rule is already in force.
    pub fn integral_0_lambda(&self) -> Self {
        let mut out = Self::zero();
        out.set_cutoff(self.cutoff.as_ref().map(|c| c + &Rat::one()));
        for (e, c) in self.terms.iter() {
            out.add_term(e + &Rat::one(), c.clone());
        }
        out
    }

    /// The integer part `[·]^0`: only nonnegative-integer exponents kept.
    pub fn integer_part(&self) -> Self {
        let mut out = Self::zero();
        out.set_cutoff(self.cutoff.clone());
        for (e, c) in self.terms.iter() {
            if e.is_nonneg_integer() {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// First coefficient difference inside the common trusted window,
    /// or `None` when the two series agree there.
    pub fn first_difference(&self, rhs: &Self) -> Option<(Rat, C, C)> {
        let w = merge_cutoff(&self.cutoff, &rhs.cutoff);
        let mut exps: Vec<&Rat> = self.terms.keys().chain(rhs.terms.keys()).collect();
        exps.sort();
        exps.dedup();
        for e in exps {
            if !above(&w, e) {
                continue;
            }
            let a = self.coeff(e);
            let b = rhs.coeff(e);
            if a != b {
                return Some((e.clone(), a, b));
            }
        }
        None
    }

    pub fn agrees_with(&self, rhs: &Self) -> bool {
        self.first_difference(rhs).is_none()
    }
}

/// A finite sum `Σ c_r z^{-r-1}`; the map key is `r`. Unlike the lambda
/// side, no exponent vanishes here.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentLikeSeries<C: Coeff> {
    terms: BTreeMap<Rat, C>,
    cutoff: Option<Rat>,
}

impl<C: Coeff> LaurentLikeSeries<C> {
    pub fn zero() -> Self {
        LaurentLikeSeries {
            terms: BTreeMap::new(),
            cutoff: None,
        }
    }

    /// Add `c z^{-r-1}`.
    pub fn add_term(&mut self, r: Rat, coeff: C) {
        if coeff.is_zero() || !above(&self.cutoff, &r) {
            return;
        }
        let updated = match self.terms.get(&r) {
            Some(old) => old.add(&coeff),
            None => coeff,
        };
        if updated.is_zero() {
            self.terms.remove(&r);
        } else {
            self.terms.insert(r, updated);
        }
    }

    pub fn set_cutoff(&mut self, cutoff: Option<Rat>) {
        self.cutoff = merge_cutoff(&self.cutoff, &cutoff);
        if let Some(c) = self.cutoff.clone() {
            self.terms.retain(|e, _| e > &c);
        }
    }

    pub fn cutoff(&self) -> Option<&Rat> {
        self.cutoff.as_ref()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.set_cutoff(rhs.cutoff.clone());
        for (e, c) in rhs.terms.iter() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let mut out = Self::zero();
        out.set_cutoff(self.cutoff.clone());
        for (e, c) in self.terms.iter() {
            out.add_term(e.clone(), c.scale(k));
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentLikeSeries<D> {
        let mut out = LaurentLikeSeries::zero();
        out.set_cutoff(self.cutoff.clone());
        for (e, c) in self.terms.iter() {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// `∂_z z^{-r-1} = -(r+1) z^{-(r+1)-1}`.
    pub fn dz(&self) -> Self {
        let mut out = Self::zero();
        out.set_cutoff(self.cutoff.as_ref().map(|c| c + &Rat::one()));
        for (e, c) in self.terms.iter() {
            let e1 = e + &Rat::one();
            out.add_term(e1.clone(), c.scale(&-(e1.clone())));
        }
        out
    }

    /// `z · z^{-r-1} = z^{-(r-1)-1}`.
    pub fn mul_z(&self) -> Self {
        let mut out = Self::zero();
        out.set_cutoff(self.cutoff.as_ref().map(|c| c - &Rat::one()));
        for (e, c) in self.terms.iter() {
            out.add_term(e - &Rat::one(), c.clone());
        }
        out
    }

    pub fn first_difference(&self, rhs: &Self) -> Option<(Rat, C, C)> {
        let w = merge_cutoff(&self.cutoff, &rhs.cutoff);
        let mut exps: Vec<&Rat> = self.terms.keys().chain(rhs.terms.keys()).collect();
        exps.sort();
        exps.dedup();
        for e in exps {
            if !above(&w, e) {
                continue;
            }
            let a = self.terms.get(e).cloned().unwrap_or_else(C::zero);
            let b = rhs.terms.get(e).cloned().unwrap_or_else(C::zero);
            if a != b {
                return Some((e.clone(), a, b));
            }
        }
        None
    }
}

/// A two-variable series `Σ λ^(x) μ^(y) c_{x,y}` with independent trust
/// cutoffs per variable.
#[derive(Clone, Debug, PartialEq)]
pub struct Series2<C: Coeff> {
    terms: BTreeMap<(Rat, Rat), C>,
    cutoff_x: Option<Rat>,
    cutoff_y: Option<Rat>,
}

impl<C: Coeff> Series2<C> {
    pub fn zero() -> Self {
        Series2 {
            terms: BTreeMap::new(),
            cutoff_x: None,
            cutoff_y: None,
        }
    }

    pub fn add_term(&mut self, x: Rat, y: Rat, coeff: C) {
        if coeff.is_zero()
            || x.is_negative_integer()
            || y.is_negative_integer()
            || !above(&self.cutoff_x, &x)
            || !above(&self.cutoff_y, &y)
        {
            return;
        }
        let key = (x, y);
        let updated = match self.terms.get(&key) {
            Some(old) => old.add(&coeff),
            None => coeff,
        };
        if updated.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, updated);
        }
    }

    pub fn set_cutoffs(&mut self, cx: Option<Rat>, cy: Option<Rat>) {
        self.cutoff_x = merge_cutoff(&self.cutoff_x, &cx);
        self.cutoff_y = merge_cutoff(&self.cutoff_y, &cy);
        let (cx, cy) = (self.cutoff_x.clone(), self.cutoff_y.clone());
        self.terms
            .retain(|(x, y), _| above(&cx, x) && above(&cy, y));
    }

    pub fn cutoffs(&self) -> (Option<&Rat>, Option<&Rat>) {
        (self.cutoff_x.as_ref(), self.cutoff_y.as_ref())
    }

    pub fn truncated(&self) -> bool {
        self.cutoff_x.is_some() || self.cutoff_y.is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Rat, Rat), &C)> {
        self.terms.iter()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.set_cutoffs(rhs.cutoff_x.clone(), rhs.cutoff_y.clone());
        for ((x, y), c) in rhs.terms.iter() {
            out.add_term(x.clone(), y.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.map_coeffs(|c| c.neg()))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        self.map_coeffs(|c| c.scale(k))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series2<D> {
        let mut out = Series2::zero();
        out.set_cutoffs(self.cutoff_x.clone(), self.cutoff_y.clone());
        for ((x, y), c) in self.terms.iter() {
            out.add_term(x.clone(), y.clone(), f(c));
        }
        out
    }

    /// Multiplication by `λ`: acts on the x exponent.
    pub fn mul_lambda(&self) -> Self {
        let mut out = Self::zero();
        out.set_cutoffs(
            self.cutoff_x.as_ref().map(|c| c + &Rat::one()),
            self.cutoff_y.clone(),
        );
        for ((x, y), c) in self.terms.iter() {
            let x1 = x + &Rat::one();
            out.add_term(x1.clone(), y.clone(), c.scale(&x1));
        }
        out
    }

    /// Multiplication by `μ`.
    pub fn mul_mu(&self) -> Self {
        let mut out = Self::zero();
        out.set_cutoffs(
            self.cutoff_x.clone(),
            self.cutoff_y.as_ref().map(|c| c + &Rat::one()),
        );
        for ((x, y), c) in self.terms.iter() {
            let y1 = y + &Rat::one();
            out.add_term(x.clone(), y1.clone(), c.scale(&y1));
        }
        out
    }

    /// `∫_0^λ · dμ`: each `λ^(x) μ^(y)` maps to `λ^(x) λ^(y+1)`, a product
    /// of divided powers. The x side must be exact (it always is in this
    /// crate: the lambda side of integrands is polynomial).
    pub fn integrate_mu_0_lambda(&self) -> LambdaSeries<C> {
        assert!(
            self.cutoff_x.is_none(),
            "mu-integration requires an exact lambda side"
        );
        let x_max = self
            .terms
            .keys()
            .map(|(x, _)| x.clone())
            .max()
            .unwrap_or_else(Rat::zero);
        let mut out = LambdaSeries::zero();
        out.set_cutoff(
            self.cutoff_y
                .as_ref()
                .map(|cy| &(&x_max + cy) + &Rat::one()),
        );
        for ((x, y), c) in self.terms.iter() {
            let y1 = y + &Rat::one();
            let e = x + &y1;
            // one factor of a divided-power product must be integral
            let j = if x.is_nonneg_integer() {
                x.to_integer().expect("small exponent") as u32
            } else if y1.is_nonneg_integer() {
                y1.to_integer().expect("small exponent") as u32
            } else {
                panic!("divided-power product with two fractional exponents");
            };
            out.add_term(e.clone(), c.scale(&binomial(&e, j)));
        }
        out
    }

    pub fn first_difference(&self, rhs: &Self) -> Option<((Rat, Rat), C, C)> {
        let wx = merge_cutoff(&self.cutoff_x, &rhs.cutoff_x);
        let wy = merge_cutoff(&self.cutoff_y, &rhs.cutoff_y);
        let mut keys: Vec<&(Rat, Rat)> = self.terms.keys().chain(rhs.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            if !above(&wx, &k.0) || !above(&wy, &k.1) {
                continue;
            }
            let a = self.terms.get(k).cloned().unwrap_or_else(C::zero);
            let b = rhs.terms.get(k).cloned().unwrap_or_else(C::zero);
            if a != b {
                return Some((k.clone(), a, b));
            }
        }
        None
    }

    pub fn agrees_with(&self, rhs: &Self) -> bool {
        self.first_difference(rhs).is_none()
    }
}

/// Expand `ν^(M) ↦ Σ_{k>=0} λ^(k) μ^(M-k)` for every term of `f`
/// (the `ι_{μ,λ}` embedding, nonnegative integer powers of λ).
/// Terms with μ-exponent `<= y_cutoff` are dropped; `y_cutoff = None` is
/// only allowed when all exponents are integers (the expansion is finite).
pub fn iota_expand<C: Coeff>(f: &LambdaSeries<C>, y_cutoff: Option<Rat>) -> Series2<C> {
    let mut out = Series2::zero();
    let cy = merge_cutoff(&y_cutoff, &f.cutoff().cloned());
    assert!(
        cy.is_some() || f.terms().all(|(e, _)| e.is_integer()),
        "iota expansion of a fractional exponent needs a mu cutoff"
    );
    out.set_cutoffs(None, cy.clone());
    for (m, c) in f.terms() {
        let mut k = Rat::zero();
        loop {
            let y = m - &k;
            if let Some(cy) = &cy {
                if &y <= cy {
                    break;
                }
            } else if y.is_negative() {
                break;
            }
            out.add_term(k.clone(), y, c.clone());
            k = &k + &Rat::one();
        }
    }
    out
}

/// Expand `ν^(i) ↦ Σ_k (-1)^{i-k} λ^(k) μ^(i-k)` — substitution `ν = λ - μ`.
/// All exponents must be nonnegative integers (finite expansion).
pub fn expand_lambda_minus_mu<C: Coeff>(f: &LambdaSeries<C>) -> Series2<C> {
    let mut out = Series2::zero();
    out.set_cutoffs(None, None);
    for (m, c) in f.terms() {
        let i = m
            .to_integer()
            .expect("lambda-minus-mu substitution needs integer exponents");
        assert!(i >= 0);
        for k in 0..=i {
            let sign = if (i - k) % 2 == 0 { Rat::one() } else { -Rat::one() };
            out.add_term(
                Rat::from_int(k),
                Rat::from_int(i - k),
                c.scale(&sign),
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(terms: &[(Rat, i64)]) -> LambdaSeries<Rat> {
        let mut s = LambdaSeries::zero();
        for (e, c) in terms {
            s.add_term(e.clone(), Rat::from_int(*c));
        }
        s
    }

    #[test]
    fn negative_integer_exponents_vanish() {
        let mut s = LambdaSeries::<Rat>::zero();
        s.add_term(Rat::from_int(-2), Rat::one());
        assert!(s.is_zero());
        s.add_term(Rat::new(-1, 2), Rat::one());
        assert_eq!(s.num_terms(), 1);
    }

    #[test]
    fn mul_lambda_rule() {
        // λ^(1)·λ = 2 λ^(2)
        let s = lam(&[(Rat::from_int(1), 1)]);
        let t = s.mul_lambda();
        assert_eq!(t.coeff(&Rat::from_int(2)), Rat::from_int(2));
        // λ^(-1/2)·λ = (1/2) λ^(1/2)
        let s = lam(&[(Rat::new(-1, 2), 2)]);
        let t = s.mul_lambda();
        assert_eq!(t.coeff(&Rat::new(1, 2)), Rat::one());
    }

    #[test]
    fn integral_then_derivative() {
        let s = lam(&[(Rat::new(1, 2), 3), (Rat::from_int(2), 5)]);
        assert_eq!(s.integral_0_lambda().dlambda(), s);
    }

    #[test]
    fn cutoff_comparison_ignores_untrusted_terms() {
        let mut a = lam(&[(Rat::from_int(3), 1), (Rat::from_int(1), 7)]);
        let b = lam(&[(Rat::from_int(3), 1), (Rat::from_int(1), 9)]);
        assert!(a.first_difference(&b).is_some());
        a.set_cutoff(Some(Rat::from_int(2)));
        assert!(a.first_difference(&b).is_none());
    }

    #[test]
    fn iota_expansion_integer_case_is_exact() {
        // (λ+μ)^(1) = λ^(0)μ^(1) + λ^(1)μ^(0)
        let f = lam(&[(Rat::from_int(1), 1)]);
        let e = iota_expand(&f, None);
        assert!(!e.truncated());
        let terms: Vec<_> = e.terms().collect();
        assert_eq!(terms.len(), 2);
    }

    #[test]
    fn mu_integration_collapses() {
        // ∫_0^λ λ^(1) μ^(1/2) dμ = λ^(1)λ^(3/2) = binom(5/2,1) λ^(5/2)
        let mut s = Series2::zero();
        s.add_term(Rat::from_int(1), Rat::new(1, 2), Rat::one());
        let i = s.integrate_mu_0_lambda();
        assert_eq!(i.coeff(&Rat::new(5, 2)), Rat::new(5, 2));
    }
}
