//! Kac-table central charges and conformal weights.

use alloc::vec::Vec;
use core::fmt;

use crate::rat::Rat;

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KacError {
    NotCoprime { p: u32, q: u32 },
    OutOfRange { p: u32, q: u32 },
}

impl fmt::Display for KacError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KacError::NotCoprime { p, q } => write!(f, "p={p}, q={q} are not coprime"),
            KacError::OutOfRange { p, q } => write!(f, "p={p}, q={q} must both be >= 2"),
        }
    }
}

/// A minimal-model label: coprime `(p, q)` and a cell `(k, l)` with
/// `0 < k < p`, `0 < l < q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct KacLabel {
    pub p: u32,
    pub q: u32,
    pub k: u32,
    pub l: u32,
}

impl KacLabel {
    pub fn new(p: u32, q: u32, k: u32, l: u32) -> Result<Self, KacError> {
        if gcd(p, q) != 1 {
            return Err(KacError::NotCoprime { p, q });
        }
        assert!(k > 0 && k < p && l > 0 && l < q, "cell outside the Kac table");
        Ok(KacLabel { p, q, k, l })
    }

    pub fn weight(&self) -> Rat {
        kac_h(self.p, self.q, self.k as i64, self.l as i64)
    }

    /// The Kac-symmetric partner `(p-k, q-l)`, carrying the same weight.
    pub fn reflected(&self) -> KacLabel {
        KacLabel {
            p: self.p,
            q: self.q,
            k: self.p - self.k,
            l: self.q - self.l,
        }
    }
}

impl fmt::Display for KacLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

/// `c_{p,q} = 1 - 6(p-q)^2/(pq)` for coprime `p, q >= 2`.
pub fn kac_c(p: u32, q: u32) -> Result<Rat, KacError> {
    if gcd(p, q) != 1 {
        return Err(KacError::NotCoprime { p, q });
    }
    if p < 2 || q < 2 {
        return Err(KacError::OutOfRange { p, q });
    }
    let diff = Rat::from_int(p as i64 - q as i64);
    let num = &Rat::from_int(6) * &(&diff * &diff);
    Ok(&Rat::one() - &(&num / &Rat::from_int((p * q) as i64)))
}

/// `h_{k,l} = ((lp - kq)^2 - (p-q)^2) / (4pq)`, defined for all integer
/// `k, l` (extended-index evaluation).
pub fn kac_h(p: u32, q: u32, k: i64, l: i64) -> Rat {
    debug_assert_eq!(gcd(p, q), 1);
    let a = Rat::from_int(l * p as i64 - k * q as i64);
    let d = Rat::from_int(p as i64 - q as i64);
    let num = &(&a * &a) - &(&d * &d);
    &num / &Rat::from_int(4 * (p * q) as i64)
}

/// `c(t) = 13 + 6t + 6/t`; with `t = -q/p` this is `c_{p,q}`.
pub fn c_of_t(t: &Rat) -> Rat {
    assert!(!t.is_zero(), "t must be nonzero");
    let six = Rat::from_int(6);
    &(&Rat::from_int(13) + &(&six * t)) + &(&six / t)
}

/// `h_{r,s}(t) = ((1+t)^2 - (s + r t)^2)/(4t)`; with `t = -q/p` this is
/// the Kac weight `h_{r,s}` of the `(p,q)` table.
pub fn h_rs_of_t(r: u32, s: u32, t: &Rat) -> Rat {
    assert!(!t.is_zero(), "t must be nonzero");
    let one_plus = &Rat::one() + t;
    let srt = &Rat::from_int(s as i64) + &(&Rat::from_int(r as i64) * t);
    let num = &(&one_plus * &one_plus) - &(&srt * &srt);
    &num / &(&Rat::from_int(4) * t)
}

/// All Kac-table cells of a minimal model, lexicographically ordered.
pub fn kac_table(p: u32, q: u32) -> Result<Vec<KacLabel>, KacError> {
    if gcd(p, q) != 1 {
        return Err(KacError::NotCoprime { p, q });
    }
    if p < 2 || q < 2 {
        return Err(KacError::OutOfRange { p, q });
    }
    let mut out = Vec::new();
    for k in 1..p {
        for l in 1..q {
            out.push(KacLabel { p, q, k, l });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn central_charges() {
        assert_eq!(kac_c(3, 4).unwrap(), Rat::new(1, 2));
        assert_eq!(kac_c(2, 3).unwrap(), Rat::zero());
        assert_eq!(kac_c(4, 5).unwrap(), Rat::new(7, 10));
        assert!(kac_c(4, 4).is_err());
        assert!(kac_c(1, 5).is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(kac_h(7, 11, 1, 1), Rat::zero());
        assert_eq!(kac_h(3, 4, 1, 2), Rat::new(1, 16));
        assert_eq!(kac_h(3, 4, 1, 3), Rat::new(1, 2));
        // extended indices are allowed
        assert_eq!(kac_h(3, 4, 0, 1), Rat::new(1, 6));
    }

    #[test]
    fn t_parameterization_matches_kac_formulas() {
        for p in 2u32..=12 {
            for q in 2u32..=12 {
                if gcd(p, q) != 1 {
                    continue;
                }
                let t = Rat::new(-(q as i64), p as i64);
                assert_eq!(c_of_t(&t), kac_c(p, q).unwrap(), "c at ({p},{q})");
                for r in 1..p {
                    for s in 1..q {
                        assert_eq!(
                            h_rs_of_t(r, s, &t),
                            kac_h(p, q, r as i64, s as i64),
                            "h_{{{r},{s}}} at ({p},{q})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn kac_symmetry() {
        let lbl = KacLabel::new(3, 4, 1, 2).unwrap();
        assert_eq!(lbl.reflected().weight(), lbl.weight());
    }
}
