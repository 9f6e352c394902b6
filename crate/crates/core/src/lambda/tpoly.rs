//! Formal polynomials in the translation endomorphism.
//!
//! `TPolynomial` stores `Σ_k T^(k)(c_k)` with the divided powers
//! `T^(k) = T^k / k!` kept symbolic. Only nonnegative powers appear.

use alloc::collections::BTreeMap;

use crate::lambda::series::Coeff;
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq)]
pub struct TPolynomial<C: Coeff> {
    terms: BTreeMap<u32, C>,
}

impl<C: Coeff> TPolynomial<C> {
    pub fn zero() -> Self {
        TPolynomial {
            terms: BTreeMap::new(),
        }
    }

    /// The degree-zero polynomial `c`.
    pub fn constant(c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(0, c);
        p
    }

    /// Add `T^(k)(c)`.
    pub fn add_term(&mut self, k: u32, c: C) {
        if c.is_zero() {
            return;
        }
        let updated = match self.terms.get(&k) {
            Some(old) => old.add(&c),
            None => c,
        };
        if updated.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, updated);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &C)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn truncate_degree(&self, max: u32) -> Self {
        let mut out = Self::zero();
        for (&k, c) in self.terms.iter() {
            if k <= max {
                out.add_term(k, c.clone());
            }
        }
        out
    }

    /// Collapse the formal powers with a concrete translation operator:
    /// `T^(k)(c) = t_op^k(c) / k!`.
    pub fn evaluate(&self, t_op: &impl Fn(&C) -> C) -> C {
        let mut acc = C::zero();
        for (&k, c) in self.terms.iter() {
            acc = acc.add(&iterated_t(t_op, k, c));
        }
        acc
    }
}

/// `T^(k)(c) = t_op^k(c)/k!` for a concrete operator.
pub fn iterated_t<C: Coeff>(t_op: &impl Fn(&C) -> C, k: u32, c: &C) -> C {
    let mut v = c.clone();
    let mut fact = Rat::one();
    for i in 0..k {
        v = t_op(&v);
        fact = &fact * &Rat::from_int((i + 1) as i64);
    }
    v.scale(&fact.recip())
}

impl<C: Coeff> Coeff for TPolynomial<C> {
    fn zero() -> Self {
        TPolynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in rhs.terms.iter() {
            out.add_term(k, c.clone());
        }
        out
    }
    fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (&k, c) in self.terms.iter() {
            out.add_term(k, c.neg());
        }
        out
    }
    fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (&k, c) in self.terms.iter() {
            out.add_term(k, c.scale(r));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_divided_powers() {
        // with t_op = multiplication by 3: T^(2)(1) = 9/2
        let p = TPolynomial::constant(Rat::one());
        let mut q = TPolynomial::zero();
        q.add_term(2, Rat::one());
        let t_op = |c: &Rat| c * &Rat::from_int(3);
        assert_eq!(p.evaluate(&t_op), Rat::one());
        assert_eq!(q.evaluate(&t_op), Rat::new(9, 2));
    }
}
