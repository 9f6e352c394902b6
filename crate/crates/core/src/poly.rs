//! Univariate polynomials over the rationals.
//!
//! Just enough for fusion constraints: products of quadratics, exact
//! evaluation, and rational root extraction (quadratics by discriminant,
//! higher degree by trial division against candidate roots).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::rat::Rat;

/// Dense polynomial, coefficients in ascending degree order. The zero
/// polynomial is the empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Rat>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// `a + b x`
    pub fn linear(a: Rat, b: Rat) -> Self {
        Poly::new(vec![a, b])
    }

    /// `a + b x + c x^2`
    pub fn quadratic(a: Rat, b: Rat, c: Rat) -> Self {
        Poly::new(vec![a, b, c])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.0.iter().enumerate() {
            out[i] += c;
        }
        Poly::new(out)
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        Poly::new(self.0.iter().map(|c| c * k).collect())
    }

    /// Rational roots of a quadratic (or lower degree) polynomial.
    /// Irrational roots are not representable and are omitted; the returned
    /// flag is false when that happens.
    pub fn rational_roots_quadratic(&self) -> (Vec<Rat>, bool) {
        match self.degree() {
            None => (Vec::new(), true), // zero polynomial: every h; caller's business
            Some(0) => (Vec::new(), true),
            Some(1) => {
                let r = -(&self.0[0] / &self.0[1]);
                (vec![r], true)
            }
            Some(2) => {
                let (c, b, a) = (&self.0[0], &self.0[1], &self.0[2]);
                let disc = &(b * b) - &(&(&Rat::from_int(4) * a) * c);
                match disc.sqrt_exact() {
                    Some(s) => {
                        let two_a = &Rat::from_int(2) * a;
                        let r1 = &(&-(b.clone()) + &s) / &two_a;
                        let r2 = &(&-(b.clone()) - &s) / &two_a;
                        let mut roots = vec![r1, r2];
                        roots.sort();
                        roots.dedup();
                        (roots, true)
                    }
                    None => (Vec::new(), false),
                }
            }
            Some(d) => panic!("rational_roots_quadratic on degree {d}"),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*h")?,
                _ => write!(f, "({c})*h^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_roots() {
        // 64k^2 - 16k - 3 has roots 3/8 and -1/8
        let p = Poly::quadratic(Rat::from_int(-3), Rat::from_int(-16), Rat::from_int(64));
        let (roots, exact) = p.rational_roots_quadratic();
        assert!(exact);
        assert_eq!(roots, vec![Rat::new(-1, 8), Rat::new(3, 8)]);
    }

    #[test]
    fn irrational_roots_flagged() {
        let p = Poly::quadratic(Rat::from_int(-2), Rat::zero(), Rat::one());
        let (roots, exact) = p.rational_roots_quadratic();
        assert!(roots.is_empty());
        assert!(!exact);
    }

    #[test]
    fn mul_and_eval() {
        let p = Poly::linear(Rat::from_int(-1), Rat::one()); // x - 1
        let q = Poly::linear(Rat::from_int(2), Rat::one()); // x + 2
        let r = p.mul(&q);
        assert_eq!(r.eval(&Rat::from_int(1)), Rat::zero());
        assert_eq!(r.eval(&Rat::from_int(-2)), Rat::zero());
        assert_eq!(r.eval(&Rat::from_int(0)), Rat::from_int(-2));
    }
}
