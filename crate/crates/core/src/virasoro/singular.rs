//! Exact singular-vector solver.
//!
//! A singular vector at level `N` in the Verma module `M^c_h` is a vector
//! annihilated by all positive modes; `L_1` and `L_2` generate those, so we
//! solve the exact linear system `L_1 v = L_2 v = 0` over the level-`N`
//! PBW basis.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::Matrix;
use crate::rat::Rat;
use crate::virasoro::partition::{partitions_of, Partition};
use crate::virasoro::verma::{VermaVector, VirasoroModule};

/// Default cap on the singular-vector level; partition counts (and exact
/// elimination cost) grow quickly past this.
pub const MAX_SINGULAR_LEVEL: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingularError {
    LevelBound { level: u32, bound: u32 },
    /// The solution space has dimension > 1: a degenerate point. Reported,
    /// not resolved.
    Degenerate { level: u32, dim: usize },
}

impl fmt::Display for SingularError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularError::LevelBound { level, bound } => {
                write!(f, "level {level} exceeds the solver bound {bound}")
            }
            SingularError::Degenerate { level, dim } => write!(
                f,
                "solution space at level {level} has dimension {dim} > 1"
            ),
        }
    }
}

/// Solve for the level-`N` singular vector of `M^c_h`; `None` when only the
/// trivial solution exists. The result is normalized so the `L_{-1}^N`
/// coefficient is 1 (falling back to the first nonzero coefficient in
/// basis order if that one vanishes).
pub fn singular_vector(
    c: &Rat,
    h: &Rat,
    level: u32,
    bound: u32,
) -> Result<Option<VermaVector>, SingularError> {
    if level > bound {
        return Err(SingularError::LevelBound { level, bound });
    }
    assert!(level >= 1, "level must be positive");
    let module = VirasoroModule::verma(c.clone(), h.clone());
    let basis = partitions_of(level, 1);

    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for n in [1i64, 2] {
        if level < n as u32 {
            continue;
        }
        let target = partitions_of(level - n as u32, 1);
        let index: BTreeMap<&Partition, usize> =
            target.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut block = vec![vec![Rat::zero(); basis.len()]; target.len()];
        for (col, w) in basis.iter().enumerate() {
            let img = module.apply_mode(n, &VermaVector::from_term(w.clone(), Rat::one()));
            for (tw, coeff) in img.terms() {
                block[index[tw]][col] = coeff.clone();
            }
        }
        rows.extend(block);
    }

    let matrix = Matrix::from_rows(rows);
    let kernel = matrix.null_space();
    match kernel.len() {
        0 => Ok(None),
        1 => {
            let coeffs = &kernel[0];
            let ones = Partition::new(vec![1; level as usize]);
            let ones_idx = basis.iter().position(|w| *w == ones).expect("basis has 1^N");
            let pivot = if !coeffs[ones_idx].is_zero() {
                coeffs[ones_idx].clone()
            } else {
                coeffs
                    .iter()
                    .find(|v| !v.is_zero())
                    .expect("kernel vector is nonzero")
                    .clone()
            };
            let inv = pivot.recip();
            let mut v = VermaVector::zero();
            for (w, coeff) in basis.iter().zip(coeffs.iter()) {
                v.add_term(w.clone(), coeff * &inv);
            }
            Ok(Some(v))
        }
        dim => Err(SingularError::Degenerate { level, dim }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_exists_iff_h_zero() {
        let c = Rat::new(1, 2);
        let v = singular_vector(&c, &Rat::zero(), 1, MAX_SINGULAR_LEVEL)
            .unwrap()
            .unwrap();
        assert_eq!(v.coeff(&Partition::new(vec![1])), Rat::one());
        assert!(singular_vector(&c, &Rat::new(1, 16), 1, MAX_SINGULAR_LEVEL)
            .unwrap()
            .is_none());
    }

    #[test]
    fn ising_level_two_matches_displayed_vector() {
        // at (c,h) = (1/2, 1/16): L_{-1}^2 - (3/4) L_{-2}, i.e. a rescaling
        // of L_{-2} - (4/3) L_{-1}^2 with β = 3/(2(2h+1)) = 4/3
        let v = singular_vector(&Rat::new(1, 2), &Rat::new(1, 16), 2, MAX_SINGULAR_LEVEL)
            .unwrap()
            .unwrap();
        assert_eq!(v.coeff(&Partition::new(vec![1, 1])), Rat::one());
        assert_eq!(v.coeff(&Partition::new(vec![2])), Rat::new(-3, 4));
    }

    #[test]
    fn generic_point_has_no_level_two_vector() {
        assert!(singular_vector(&Rat::zero(), &Rat::new(7, 3), 2, MAX_SINGULAR_LEVEL)
            .unwrap()
            .is_none());
    }

    #[test]
    fn level_bound_is_enforced() {
        assert!(matches!(
            singular_vector(&Rat::zero(), &Rat::zero(), 13, MAX_SINGULAR_LEVEL),
            Err(SingularError::LevelBound { .. })
        ));
    }

    #[test]
    fn solver_output_is_annihilated_by_all_positive_modes() {
        // (4,5) table point (2,2): h = 3/80, level 4
        let c = Rat::new(7, 10);
        let h = Rat::new(3, 80);
        let v = singular_vector(&c, &h, 4, MAX_SINGULAR_LEVEL)
            .unwrap()
            .unwrap();
        let m = VirasoroModule::verma(c, h);
        for n in 1..=4 {
            assert!(m.apply_mode(n, &v).is_zero(), "L_{n} does not annihilate");
        }
    }
}
