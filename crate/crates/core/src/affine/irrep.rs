//! Finite-dimensional irreducible representations with exact matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::affine::algebra::{casimir_eigenvalue, LieAlgebraData, Weight};
use crate::linalg::Matrix;
use crate::rat::Rat;

/// A representation given by one matrix per algebra basis element, acting
/// on a weight basis. Basis vector 0 is the highest-weight vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrepData {
    pub highest_weight: Weight,
    pub dim: usize,
    /// `matrices[i]` is the action of `x_i`; column `j` is the image of
    /// basis vector `j`.
    pub matrices: Vec<Matrix>,
    /// Weight of each basis vector.
    pub weights: Vec<Weight>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrrepError {
    StructureConstantsViolated { i: usize, j: usize },
    CasimirNotScalar,
    NotDominantIntegral,
}

impl fmt::Display for IrrepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepError::StructureConstantsViolated { i, j } => {
                write!(f, "[ρ(x{i}), ρ(x{j})] != ρ([x{i},x{j}])")
            }
            IrrepError::CasimirNotScalar => write!(f, "Casimir matrix is not (α,α+2ρ)·Id"),
            IrrepError::NotDominantIntegral => write!(f, "weight is not dominant integral"),
        }
    }
}

impl IrrepData {
    pub fn apply(&self, gen: usize, v: &[Rat]) -> Vec<Rat> {
        self.matrices[gen].mul_vec(v)
    }

    pub fn highest_weight_vector(&self) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[0] = Rat::one();
        v
    }

    /// `Σ_i ρ(x_i) ρ(x^i)` with the dual basis taken through the form.
    pub fn casimir_matrix(&self, alg: &LieAlgebraData) -> Matrix {
        let dual = alg.dual_basis().expect("validated algebra");
        let mut acc = Matrix::zero(self.dim, self.dim);
        for i in 0..alg.dim {
            // ρ(x^i) = Σ_j (F^{-1})_{ij} ρ(x_j)
            let mut dual_mat = Matrix::zero(self.dim, self.dim);
            for j in 0..alg.dim {
                let c = dual.at(i, j);
                if !c.is_zero() {
                    dual_mat = dual_mat.add(&self.matrices[j].scale(c));
                }
            }
            acc = acc.add(&self.matrices[i].mul(&dual_mat));
        }
        acc
    }

    /// Check the structure-constant relations and the Casimir scalar.
    pub fn validate(&self, alg: &LieAlgebraData) -> Result<(), IrrepError> {
        if !alg.is_dominant_integral(&self.highest_weight) {
            return Err(IrrepError::NotDominantIntegral);
        }
        for i in 0..alg.dim {
            for j in 0..alg.dim {
                let comm = self.matrices[i]
                    .mul(&self.matrices[j])
                    .sub(&self.matrices[j].mul(&self.matrices[i]));
                let mut expect = Matrix::zero(self.dim, self.dim);
                for (k, c) in alg.bracket_of(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        expect = expect.add(&self.matrices[k].scale(c));
                    }
                }
                if comm != expect {
                    return Err(IrrepError::StructureConstantsViolated { i, j });
                }
            }
        }
        let cas = self.casimir_matrix(alg);
        let ev = casimir_eigenvalue(alg, &self.highest_weight);
        if cas != Matrix::identity(self.dim).scale(&ev) {
            return Err(IrrepError::CasimirNotScalar);
        }
        Ok(())
    }
}

/// The `(n+1)`-dimensional sl2 irrep with highest weight `n·ω` (spin `n/2`):
/// `h v_i = (n-2i) v_i`, `f v_i = v_{i+1}`, `e v_i = i(n-i+1) v_{i-1}`.
pub fn sl2_irrep(n: u32) -> IrrepData {
    let dim = (n + 1) as usize;
    let mut e = Matrix::zero(dim, dim);
    let mut h = Matrix::zero(dim, dim);
    let mut f = Matrix::zero(dim, dim);
    for i in 0..dim {
        *h.at_mut(i, i) = Rat::from_int(n as i64 - 2 * i as i64);
        if i + 1 < dim {
            *f.at_mut(i + 1, i) = Rat::one();
        }
        if i > 0 {
            *e.at_mut(i - 1, i) = Rat::from_int(i as i64 * (n as i64 - i as i64 + 1));
        }
    }
    let weights = (0..dim)
        .map(|i| vec![Rat::from_int(n as i64 - 2 * i as i64)])
        .collect();
    IrrepData {
        highest_weight: vec![Rat::from_int(n as i64)],
        dim,
        matrices: vec![e, h, f],
        weights,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::algebra::LieAlgebraData;

    #[test]
    fn sl2_irreps_validate() {
        let alg = LieAlgebraData::sl2();
        for n in 0..=5 {
            sl2_irrep(n).validate(&alg).unwrap();
        }
    }

    #[test]
    fn casimir_matrix_matches_eigenvalue() {
        let alg = LieAlgebraData::sl2();
        // spin 1/2: 3/2 · Id; spin 1 (adjoint): 4 · Id
        let half = sl2_irrep(1);
        assert_eq!(
            half.casimir_matrix(&alg),
            Matrix::identity(2).scale(&Rat::new(3, 2))
        );
        let adj = sl2_irrep(2);
        assert_eq!(
            adj.casimir_matrix(&alg),
            Matrix::identity(3).scale(&Rat::from_int(4))
        );
    }

    #[test]
    fn casimir_commutes_with_generators() {
        let alg = LieAlgebraData::sl2();
        for n in 1..=4 {
            let rep = sl2_irrep(n);
            let cas = rep.casimir_matrix(&alg);
            for m in &rep.matrices {
                assert_eq!(cas.mul(m), m.mul(&cas));
            }
        }
    }
}
