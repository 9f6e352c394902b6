//! Exact tensor-product decomposition into irreducible components.
//!
//! Highest-weight vectors of `E_1 ⊗ E_2` are extracted per weight space as
//! the kernel of all raising operators; each generates one copy, and the
//! change-of-basis matrix gives exact coordinate projections onto every
//! copy.

use alloc::vec;
use alloc::vec::Vec;

use crate::affine::algebra::{LieAlgebraData, Weight};
use crate::affine::irrep::IrrepData;
use crate::linalg::Matrix;
use crate::rat::Rat;

/// One irreducible copy inside the product.
#[derive(Clone, Debug)]
pub struct Component {
    pub highest_weight: Weight,
    /// Basis of the copy as vectors in the product space; the first one is
    /// the highest-weight vector. Read as columns, this is the embedding
    /// map of the copy.
    pub basis: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug)]
pub struct TensorDecomposition {
    pub dim: usize,
    pub components: Vec<Component>,
    /// Rows of the inverse change-of-basis matrix, grouped like the
    /// component bases: `coord_rows[i][r]` reads off the coefficient of
    /// the r-th copy-basis vector.
    coord_rows: Vec<Vec<Vec<Rat>>>,
}

impl TensorDecomposition {
    /// Coordinates of `v` in component `i` (exact projection).
    pub fn project(&self, i: usize, v: &[Rat]) -> Vec<Rat> {
        self.coord_rows[i]
            .iter()
            .map(|row| {
                let mut acc = Rat::zero();
                for (a, b) in row.iter().zip(v.iter()) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Indices of the components with a given highest weight.
    pub fn copies_of(&self, w: &Weight) -> Vec<usize> {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, c)| &c.highest_weight == w)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn multiplicity(&self, w: &Weight) -> usize {
        self.copies_of(w).len()
    }
}

/// Kronecker-product action `ρ(x) = ρ1(x) ⊗ I + I ⊗ ρ2(x)`; index
/// `(i1, i2) -> i1 * d2 + i2`.
pub fn product_matrices(alg: &LieAlgebraData, e1: &IrrepData, e2: &IrrepData) -> Vec<Matrix> {
    let (d1, d2) = (e1.dim, e2.dim);
    let n = d1 * d2;
    (0..alg.dim)
        .map(|g| {
            let mut m = Matrix::zero(n, n);
            for i1 in 0..d1 {
                for i2 in 0..d2 {
                    let col = i1 * d2 + i2;
                    for r1 in 0..d1 {
                        let c = e1.matrices[g].at(r1, i1);
                        if !c.is_zero() {
                            *m.at_mut(r1 * d2 + i2, col) += c;
                        }
                    }
                    for r2 in 0..d2 {
                        let c = e2.matrices[g].at(r2, i2);
                        if !c.is_zero() {
                            *m.at_mut(i1 * d2 + r2, col) += c;
                        }
                    }
                }
            }
            m
        })
        .collect()
}

/// Decompose `E_1 ⊗ E_2` into irreducible copies with exact projections.
pub fn tensor_decompose(
    alg: &LieAlgebraData,
    e1: &IrrepData,
    e2: &IrrepData,
) -> TensorDecomposition {
    let (d1, d2) = (e1.dim, e2.dim);
    let n = d1 * d2;
    let mats = product_matrices(alg, e1, e2);

    // weight of each product basis vector
    let weights: Vec<Weight> = (0..n)
        .map(|idx| {
            let (i1, i2) = (idx / d2, idx % d2);
            e1.weights[i1]
                .iter()
                .zip(e2.weights[i2].iter())
                .map(|(a, b)| a + b)
                .collect()
        })
        .collect();

    // distinct weights, highest pairing with ρ first for a deterministic
    // component order (descending lexicographic is fine for our use)
    let mut distinct: Vec<Weight> = weights.clone();
    distinct.sort();
    distinct.dedup();
    distinct.reverse();

    let mut components = Vec::new();
    for w in &distinct {
        let idxs: Vec<usize> = (0..n).filter(|&i| &weights[i] == w).collect();
        if idxs.is_empty() {
            continue;
        }
        // stack the raising operators restricted to this weight space
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for &g in &alg.raising {
            for out_row in 0..n {
                let mut row = Vec::with_capacity(idxs.len());
                let mut nonzero = false;
                for &c in &idxs {
                    let v = mats[g].at(out_row, c).clone();
                    nonzero |= !v.is_zero();
                    row.push(v);
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
        let kernel = if rows.is_empty() {
            // no raising action out of this weight space: all of it is singular
            (0..idxs.len())
                .map(|i| {
                    let mut v = vec![Rat::zero(); idxs.len()];
                    v[i] = Rat::one();
                    v
                })
                .collect()
        } else {
            Matrix::from_rows(rows).null_space()
        };
        for kv in kernel {
            let mut hw = vec![Rat::zero(); n];
            for (pos, &c) in idxs.iter().enumerate() {
                hw[c] = kv[pos].clone();
            }
            let basis = submodule_closure(&mats, hw);
            components.push(Component {
                highest_weight: w.clone(),
                basis,
            });
        }
    }

    let total: usize = components.iter().map(|c| c.basis.len()).sum();
    assert_eq!(total, n, "component dimensions must sum to dim E1 · dim E2");

    // change of basis: columns are all copy-basis vectors in component order
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for c in &components {
        cols.extend(c.basis.iter().cloned());
    }
    let mut b = Matrix::zero(n, n);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            *b.at_mut(i, j) = col[i].clone();
        }
    }
    let binv = b.inverse().expect("copy bases form a basis of the product");
    let mut coord_rows = Vec::with_capacity(components.len());
    let mut offset = 0;
    for c in &components {
        let rows: Vec<Vec<Rat>> = (0..c.basis.len())
            .map(|r| binv.row(offset + r).to_vec())
            .collect();
        coord_rows.push(rows);
        offset += c.basis.len();
    }

    TensorDecomposition {
        dim: n,
        components,
        coord_rows,
    }
}

/// Smallest invariant subspace containing `seed`: grow the span by applying
/// every generator until stable. Returns a basis with `seed` first.
fn submodule_closure(mats: &[Matrix], seed: Vec<Rat>) -> Vec<Vec<Rat>> {
    let n = seed.len();
    let mut basis: Vec<Vec<Rat>> = vec![seed];
    let mut frontier = 0;
    while frontier < basis.len() {
        let v = basis[frontier].clone();
        frontier += 1;
        for m in mats {
            let img = m.mul_vec(&v);
            if img.iter().all(Rat::is_zero) {
                continue;
            }
            if !in_span(&basis, &img, n) {
                basis.push(img);
            }
        }
    }
    basis
}

fn in_span(basis: &[Vec<Rat>], v: &[Rat], n: usize) -> bool {
    // solve basis^T x = v
    let mut m = Matrix::zero(n, basis.len());
    for (j, b) in basis.iter().enumerate() {
        for i in 0..n {
            *m.at_mut(i, j) = b[i].clone();
        }
    }
    m.solve(v).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::algebra::LieAlgebraData;
    use crate::affine::irrep::sl2_irrep;

    fn weights_of(dec: &TensorDecomposition) -> Vec<i64> {
        let mut v: Vec<i64> = dec
            .components
            .iter()
            .map(|c| c.highest_weight[0].to_integer().unwrap())
            .collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn clebsch_gordan_small_cases() {
        let alg = LieAlgebraData::sl2();
        // 1/2 ⊗ 1/2 = 0 ⊕ 1
        let d = tensor_decompose(&alg, &sl2_irrep(1), &sl2_irrep(1));
        assert_eq!(weights_of(&d), vec![0, 2]);
        // 1 ⊗ 1/2 = 1/2 ⊕ 3/2
        let d = tensor_decompose(&alg, &sl2_irrep(2), &sl2_irrep(1));
        assert_eq!(weights_of(&d), vec![1, 3]);
        // 1/2 ⊗ 0 = 1/2, identity embedding
        let d = tensor_decompose(&alg, &sl2_irrep(1), &sl2_irrep(0));
        assert_eq!(weights_of(&d), vec![1]);
        assert_eq!(d.components[0].basis.len(), 2);
    }

    #[test]
    fn dimensions_always_sum() {
        let alg = LieAlgebraData::sl2();
        for n1 in 0..=3u32 {
            for n2 in 0..=3u32 {
                let d = tensor_decompose(&alg, &sl2_irrep(n1), &sl2_irrep(n2));
                let total: usize = d.components.iter().map(|c| c.basis.len()).sum();
                assert_eq!(total, ((n1 + 1) * (n2 + 1)) as usize);
            }
        }
    }

    #[test]
    fn projections_are_exact() {
        let alg = LieAlgebraData::sl2();
        let d = tensor_decompose(&alg, &sl2_irrep(1), &sl2_irrep(1));
        // v0 ⊗ v1 decomposes across spin-1 and spin-0 copies; projecting
        // and re-embedding must reconstruct the vector
        let mut v = vec![Rat::zero(); 4];
        v[1] = Rat::one();
        let mut recon = vec![Rat::zero(); 4];
        for i in 0..d.components.len() {
            let coords = d.project(i, &v);
            for (r, c) in coords.iter().enumerate() {
                for (pos, b) in d.components[i].basis[r].iter().enumerate() {
                    recon[pos] = &recon[pos] + &(c * b);
                }
            }
        }
        assert_eq!(recon, v);
    }
}
