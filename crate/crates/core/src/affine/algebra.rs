//! Finite-dimensional simple Lie algebra data over exact rationals.
//!
//! An algebra is given by structure constants, the invariant bilinear form
//! normalized so `(θ,θ) = 2` under `(a,b) = Tr(ad a · ad b)/(2h^∨)`, and
//! weight-space data (fundamental-weight Gram matrix, highest root, Cartan
//! and raising generators). Only sl2 ships built in; arbitrary algebras can
//! be supplied through the data-file format of the CLI crate.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::Matrix;
use crate::rat::Rat;

/// A weight in fundamental-weight coordinates.
pub type Weight = Vec<Rat>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraData {
    pub dim: usize,
    pub rank: usize,
    pub labels: Vec<String>,
    /// `bracket[i][j]` = coefficients of `[x_i, x_j]` over the basis.
    pub bracket: Vec<Vec<Vec<Rat>>>,
    /// Invariant form `(x_i, x_j)`.
    pub form: Matrix,
    pub dual_coxeter: Rat,
    /// Gram matrix of the fundamental weights.
    pub weight_form: Matrix,
    /// Highest root in fundamental-weight coordinates.
    pub theta: Weight,
    /// Basis indices of the Cartan generators (simple coroots, in order).
    pub cartan: Vec<usize>,
    /// Basis indices of the raising generators.
    pub raising: Vec<usize>,
    /// Basis index of the highest-root raising generator `e_θ`.
    pub theta_raising: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    FormNotSymmetric,
    FormNotInvariant { i: usize, j: usize, k: usize },
    FormNotKillingNormalized { i: usize, j: usize },
    ThetaNormSquaredNot2 { got: Rat },
    BracketNotAntisymmetric { i: usize, j: usize },
    JacobiFails { i: usize, j: usize, k: usize },
    FormSingular,
    BadShape(String),
    CriticalLevel { k: Rat },
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::FormNotSymmetric => write!(f, "invariant form is not symmetric"),
            AlgebraError::FormNotInvariant { i, j, k } => {
                write!(f, "([x{i},x{j}],x{k}) + (x{j},[x{i},x{k}]) != 0")
            }
            AlgebraError::FormNotKillingNormalized { i, j } => write!(
                f,
                "(x{i},x{j}) differs from Tr(ad x{i} ad x{j})/(2 h_dual)"
            ),
            AlgebraError::ThetaNormSquaredNot2 { got } => {
                write!(f, "(theta,theta) = {got}, expected 2")
            }
            AlgebraError::BracketNotAntisymmetric { i, j } => {
                write!(f, "[x{i},x{j}] != -[x{j},x{i}]")
            }
            AlgebraError::JacobiFails { i, j, k } => {
                write!(f, "Jacobi identity fails on (x{i},x{j},x{k})")
            }
            AlgebraError::FormSingular => write!(f, "invariant form is singular"),
            AlgebraError::BadShape(s) => write!(f, "malformed algebra data: {s}"),
            AlgebraError::CriticalLevel { k } => {
                write!(f, "critical level k = {k} = -h_dual rejected")
            }
        }
    }
}

impl LieAlgebraData {
    /// sl2 in the basis `e, h, f` with `[e,f] = h`, `[h,e] = 2e`,
    /// `[h,f] = -2f`; `(e,f) = 1`, `(h,h) = 2`, `h^∨ = 2`, `θ = 2ω`.
    pub fn sl2() -> Self {
        let dim = 3;
        let mut bracket = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
        let mut set = |i: usize, j: usize, coeffs: &[(usize, i64)]| {
            for &(k, v) in coeffs {
                bracket[i][j][k] = Rat::from_int(v);
                bracket[j][i][k] = Rat::from_int(-v);
            }
        };
        set(0, 2, &[(1, 1)]); // [e,f] = h
        set(1, 0, &[(0, 2)]); // [h,e] = 2e
        set(1, 2, &[(2, -2)]); // [h,f] = -2f
        let mut form = Matrix::zero(3, 3);
        *form.at_mut(0, 2) = Rat::one();
        *form.at_mut(2, 0) = Rat::one();
        *form.at_mut(1, 1) = Rat::from_int(2);
        let mut weight_form = Matrix::zero(1, 1);
        *weight_form.at_mut(0, 0) = Rat::new(1, 2);
        LieAlgebraData {
            dim,
            rank: 1,
            labels: vec!["e".into(), "h".into(), "f".into()],
            bracket,
            form,
            dual_coxeter: Rat::from_int(2),
            weight_form,
            theta: vec![Rat::from_int(2)],
            cartan: vec![1],
            raising: vec![0],
            theta_raising: 0,
        }
    }

    /// `[x_i, x_j]` as a coefficient vector.
    pub fn bracket_of(&self, i: usize, j: usize) -> &[Rat] {
        &self.bracket[i][j]
    }

    /// The adjoint matrix of `x_i`.
    pub fn ad(&self, i: usize) -> Matrix {
        let mut m = Matrix::zero(self.dim, self.dim);
        for j in 0..self.dim {
            for (k, c) in self.bracket[i][j].iter().enumerate() {
                *m.at_mut(k, j) = c.clone();
            }
        }
        m
    }

    /// Pairing of two weights through the fundamental-weight Gram matrix.
    pub fn weight_pairing(&self, a: &Weight, b: &Weight) -> Rat {
        assert_eq!(a.len(), self.rank);
        assert_eq!(b.len(), self.rank);
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                let g = self.weight_form.at(i, j);
                if !g.is_zero() {
                    acc += &(&(&a[i] * &b[j]) * g);
                }
            }
        }
        acc
    }

    /// The Weyl vector `ρ = Σ ω_i`: all-ones in fundamental coordinates.
    pub fn rho(&self) -> Weight {
        vec![Rat::one(); self.rank]
    }

    pub fn is_dominant_integral(&self, w: &Weight) -> bool {
        w.len() == self.rank && w.iter().all(Rat::is_nonneg_integer)
    }

    /// Dual basis `x^i = Σ_j (F^{-1})_{ij} x_j` coefficients, row per `i`.
    pub fn dual_basis(&self) -> Result<Matrix, AlgebraError> {
        self.form.inverse().ok_or(AlgebraError::FormSingular)
    }

    /// Check every structural invariant of the data.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let d = self.dim;
        if self.bracket.len() != d
            || self.bracket.iter().any(|r| r.len() != d)
            || self
                .bracket
                .iter()
                .any(|r| r.iter().any(|c| c.len() != d))
        {
            return Err(AlgebraError::BadShape("bracket tensor shape".into()));
        }
        if self.form.rows != d || self.form.cols != d {
            return Err(AlgebraError::BadShape("form matrix shape".into()));
        }
        if self.theta.len() != self.rank {
            return Err(AlgebraError::BadShape("theta length".into()));
        }
        // antisymmetry
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if self.bracket[i][j][k] != -self.bracket[j][i][k].clone() {
                        return Err(AlgebraError::BracketNotAntisymmetric { i, j });
                    }
                }
            }
        }
        // Jacobi: [x_i,[x_j,x_k]] + [x_j,[x_k,x_i]] + [x_k,[x_i,x_j]] = 0
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut total = vec![Rat::zero(); d];
                    let acc = |a: usize, b: usize, c: usize, total: &mut Vec<Rat>| {
                        let inner = self.bracket[b][c].clone();
                        for (m, cm) in inner.iter().enumerate() {
                            if cm.is_zero() {
                                continue;
                            }
                            for (n, cn) in self.bracket[a][m].iter().enumerate() {
                                total[n] += &(cm * cn);
                            }
                        }
                    };
                    acc(i, j, k, &mut total);
                    acc(j, k, i, &mut total);
                    acc(k, i, j, &mut total);
                    if total.iter().any(|c| !c.is_zero()) {
                        return Err(AlgebraError::JacobiFails { i, j, k });
                    }
                }
            }
        }
        // symmetry and invariance of the form
        for i in 0..d {
            for j in 0..d {
                if self.form.at(i, j) != self.form.at(j, i) {
                    return Err(AlgebraError::FormNotSymmetric);
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    // ([x_i,x_j], x_k) + (x_j, [x_i,x_k]) = 0
                    let mut s = Rat::zero();
                    for (m, c) in self.bracket[i][j].iter().enumerate() {
                        if !c.is_zero() {
                            s += &(c * self.form.at(m, k));
                        }
                    }
                    for (m, c) in self.bracket[i][k].iter().enumerate() {
                        if !c.is_zero() {
                            s += &(c * self.form.at(j, m));
                        }
                    }
                    if !s.is_zero() {
                        return Err(AlgebraError::FormNotInvariant { i, j, k });
                    }
                }
            }
        }
        // Killing normalization: (a,b) = Tr(ad a ad b)/(2 h_dual)
        let two_hv = &Rat::from_int(2) * &self.dual_coxeter;
        for i in 0..d {
            let ad_i = self.ad(i);
            for j in 0..d {
                let prod = ad_i.mul(&self.ad(j));
                let mut tr = Rat::zero();
                for m in 0..d {
                    tr += prod.at(m, m);
                }
                if &tr / &two_hv != *self.form.at(i, j) {
                    return Err(AlgebraError::FormNotKillingNormalized { i, j });
                }
            }
        }
        // (θ,θ) = 2
        let norm = self.weight_pairing(&self.theta, &self.theta);
        if norm != Rat::from_int(2) {
            return Err(AlgebraError::ThetaNormSquaredNot2 { got: norm });
        }
        self.dual_basis().map(|_| ())
    }
}

/// Casimir eigenvalue `(α, α + 2ρ)` on the highest-weight module `E_α`.
pub fn casimir_eigenvalue(alg: &LieAlgebraData, alpha: &Weight) -> Rat {
    let mut shifted = alpha.clone();
    for (i, r) in alg.rho().iter().enumerate() {
        shifted[i] = &shifted[i] + &(&Rat::from_int(2) * r);
    }
    alg.weight_pairing(alpha, &shifted)
}

/// Sugawara conformal weight `h_α = (α, α+2ρ) / (2(k + h^∨))`.
pub fn sugawara_weight(alg: &LieAlgebraData, alpha: &Weight, k: &Rat) -> Result<Rat, AlgebraError> {
    let denom = &(k + &alg.dual_coxeter) * &Rat::from_int(2);
    if denom.is_zero() {
        return Err(AlgebraError::CriticalLevel { k: k.clone() });
    }
    Ok(&casimir_eigenvalue(alg, alpha) / &denom)
}

/// Sugawara central charge `c = k dim(g) / (k + h^∨)`.
pub fn central_charge(alg: &LieAlgebraData, k: &Rat) -> Result<Rat, AlgebraError> {
    let denom = k + &alg.dual_coxeter;
    if denom.is_zero() {
        return Err(AlgebraError::CriticalLevel { k: k.clone() });
    }
    Ok(&(k * &Rat::from_int(alg.dim as i64)) / &denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_validates() {
        LieAlgebraData::sl2().validate().unwrap();
    }

    #[test]
    fn sl2_casimir_values() {
        let alg = LieAlgebraData::sl2();
        // spin j has casimir 2j(j+1); coordinates are n = 2j
        assert_eq!(casimir_eigenvalue(&alg, &vec![Rat::zero()]), Rat::zero());
        assert_eq!(casimir_eigenvalue(&alg, &vec![Rat::one()]), Rat::new(3, 2));
        assert_eq!(
            casimir_eigenvalue(&alg, &vec![Rat::from_int(2)]),
            Rat::from_int(4)
        );
    }

    #[test]
    fn sugawara_values() {
        let alg = LieAlgebraData::sl2();
        assert_eq!(
            sugawara_weight(&alg, &vec![Rat::one()], &Rat::one()).unwrap(),
            Rat::new(1, 4)
        );
        assert_eq!(
            sugawara_weight(&alg, &vec![Rat::from_int(2)], &Rat::from_int(2)).unwrap(),
            Rat::new(1, 2)
        );
        assert_eq!(
            sugawara_weight(&alg, &vec![Rat::zero()], &Rat::from_int(3)).unwrap(),
            Rat::zero()
        );
        assert!(sugawara_weight(&alg, &vec![Rat::one()], &Rat::from_int(-2)).is_err());
    }

    #[test]
    fn central_charges() {
        let alg = LieAlgebraData::sl2();
        assert_eq!(central_charge(&alg, &Rat::one()).unwrap(), Rat::one());
        assert_eq!(central_charge(&alg, &Rat::zero()).unwrap(), Rat::zero());
        assert_eq!(
            central_charge(&alg, &Rat::from_int(2)).unwrap(),
            Rat::new(3, 2)
        );
        assert!(central_charge(&alg, &Rat::from_int(-2)).is_err());
    }

    #[test]
    fn broken_form_is_rejected() {
        let mut alg = LieAlgebraData::sl2();
        *alg.form.at_mut(1, 1) = Rat::from_int(3);
        assert!(alg.validate().is_err());
    }
}
