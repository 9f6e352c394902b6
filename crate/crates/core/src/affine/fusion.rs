//! Level-k fusion admissibility through the singular-vector projection test:
//! the target `E_α` survives iff it occurs in `E_{α1} ⊗ E_{α2}` and the
//! projection of every `(e_θ^{k-(α2,θ)+1} a) ⊗ b` onto each copy of `E_α`
//! vanishes (`b` the highest-weight vector of `E_{α2}`).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::affine::algebra::{LieAlgebraData, Weight};
use crate::affine::irrep::IrrepData;
use crate::affine::tensor::tensor_decompose;
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionQuery {
    pub level: u32,
    pub alpha1: Weight,
    pub alpha2: Weight,
    pub alpha: Weight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FusionError {
    /// A source weight fails `(α,θ) <= k` or dominance; the query is
    /// malformed rather than answered negatively.
    InadmissibleSource { which: u8, weight: Weight },
    NoIrrepConstructor { weight: Weight },
}

impl fmt::Display for FusionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FusionError::InadmissibleSource { which, weight } => {
                write!(f, "source weight α{which} = {weight:?} is not admissible at this level")
            }
            FusionError::NoIrrepConstructor { weight } => {
                write!(f, "no irrep constructor for weight {weight:?}")
            }
        }
    }
}

/// Why a query was accepted or rejected, with the projection evidence.
#[derive(Clone, Debug)]
pub struct FusionCertificate {
    /// Target admissible at the level at all.
    pub target_admissible: bool,
    /// Target occurs in the tensor decomposition.
    pub present: bool,
    /// Multiplicity of the target in `E1 ⊗ E2`.
    pub multiplicity: usize,
    /// Per copy: whether every projected vector vanished.
    pub copy_vanishes: Vec<bool>,
    /// Rank of the stacked projection matrix (0 means all projections
    /// vanish).
    pub projection_rank: usize,
}

#[derive(Clone, Debug)]
pub struct FusionOutcome {
    pub admissible: bool,
    pub certificate: FusionCertificate,
}

/// Supplier of irreducible representations by highest weight.
pub trait IrrepProvider {
    fn irrep(&self, alg: &LieAlgebraData, w: &Weight) -> Option<IrrepData>;
}

/// The built-in sl2 constructor.
pub struct Sl2Irreps;

impl IrrepProvider for Sl2Irreps {
    fn irrep(&self, _alg: &LieAlgebraData, w: &Weight) -> Option<IrrepData> {
        if w.len() != 1 || !w[0].is_nonneg_integer() {
            return None;
        }
        let n = w[0].to_integer()? as u32;
        Some(crate::affine::irrep::sl2_irrep(n))
    }
}

fn weight_admissible(alg: &LieAlgebraData, w: &Weight, k: u32) -> bool {
    alg.is_dominant_integral(w)
        && alg.weight_pairing(w, &alg.theta) <= Rat::from_int(k as i64)
}

/// Decide one fusion query. Inadmissible source weights are rejected with
/// a diagnostic; an inadmissible target answers `false`.
pub fn fusion_admissible(
    alg: &LieAlgebraData,
    provider: &impl IrrepProvider,
    query: &FusionQuery,
) -> Result<FusionOutcome, FusionError> {
    let k = query.level;
    if !weight_admissible(alg, &query.alpha1, k) {
        return Err(FusionError::InadmissibleSource {
            which: 1,
            weight: query.alpha1.clone(),
        });
    }
    if !weight_admissible(alg, &query.alpha2, k) {
        return Err(FusionError::InadmissibleSource {
            which: 2,
            weight: query.alpha2.clone(),
        });
    }
    if !weight_admissible(alg, &query.alpha, k) {
        return Ok(FusionOutcome {
            admissible: false,
            certificate: FusionCertificate {
                target_admissible: false,
                present: false,
                multiplicity: 0,
                copy_vanishes: Vec::new(),
                projection_rank: 0,
            },
        });
    }

    let e1 = provider
        .irrep(alg, &query.alpha1)
        .ok_or_else(|| FusionError::NoIrrepConstructor {
            weight: query.alpha1.clone(),
        })?;
    let e2 = provider
        .irrep(alg, &query.alpha2)
        .ok_or_else(|| FusionError::NoIrrepConstructor {
            weight: query.alpha2.clone(),
        })?;

    let dec = tensor_decompose(alg, &e1, &e2);
    let copies = dec.copies_of(&query.alpha);
    if copies.is_empty() {
        return Ok(FusionOutcome {
            admissible: false,
            certificate: FusionCertificate {
                target_admissible: true,
                present: false,
                multiplicity: 0,
                copy_vanishes: Vec::new(),
                projection_rank: 0,
            },
        });
    }

    // l = k - (α2, θ) + 1 applications of e_θ
    let pairing = alg.weight_pairing(&query.alpha2, &alg.theta);
    let l = (Rat::from_int(k as i64 + 1) - pairing)
        .to_integer()
        .expect("admissible pairing is a small integer") as u32;

    // (e_θ^l a) ⊗ b for every basis vector a of E1, with b the
    // highest-weight vector of E2 (basis index 0)
    let e_theta = &e1.matrices[alg.theta_raising];
    let mut projected: Vec<Vec<Rat>> = Vec::new();
    let mut copy_vanishes = vec![true; copies.len()];
    for col in 0..e1.dim {
        let mut a = vec![Rat::zero(); e1.dim];
        a[col] = Rat::one();
        for _ in 0..l {
            a = e_theta.mul_vec(&a);
        }
        if a.iter().all(Rat::is_zero) {
            continue;
        }
        // tensor with the highest-weight vector of E2
        let mut w = vec![Rat::zero(); dec.dim];
        for (i1, c) in a.iter().enumerate() {
            if !c.is_zero() {
                w[i1 * e2.dim] = c.clone();
            }
        }
        for (ci, &copy) in copies.iter().enumerate() {
            let coords = dec.project(copy, &w);
            if coords.iter().any(|c| !c.is_zero()) {
                copy_vanishes[ci] = false;
            }
            projected.push(coords);
        }
    }

    let projection_rank = if projected.is_empty() {
        0
    } else {
        crate::linalg::Matrix::from_rows(projected).rank()
    };
    let admissible = copy_vanishes.iter().all(|&v| v);
    Ok(FusionOutcome {
        admissible,
        certificate: FusionCertificate {
            target_admissible: true,
            present: true,
            multiplicity: copies.len(),
            copy_vanishes,
            projection_rank,
        },
    })
}

/// All admissible dominant integral weights at level `k`, lexicographic.
pub fn admissible_weights(alg: &LieAlgebraData, k: u32) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut coords = vec![Rat::zero(); alg.rank];
    enumerate_weights(alg, k, 0, &mut coords, &mut out);
    out.sort();
    out
}

fn enumerate_weights(
    alg: &LieAlgebraData,
    k: u32,
    pos: usize,
    coords: &mut Vec<Rat>,
    out: &mut Vec<Weight>,
) {
    if pos == alg.rank {
        if alg.weight_pairing(coords, &alg.theta) <= Rat::from_int(k as i64) {
            out.push(coords.clone());
        }
        return;
    }
    let mut n = 0i64;
    loop {
        coords[pos] = Rat::from_int(n);
        // (·,θ) grows linearly in each dominant coordinate, so once the
        // partial weight overshoots we can stop
        let mut partial = coords.clone();
        for c in partial.iter_mut().skip(pos + 1) {
            *c = Rat::zero();
        }
        if alg.weight_pairing(&partial, &alg.theta) > Rat::from_int(k as i64) {
            break;
        }
        enumerate_weights(alg, k, pos + 1, coords, out);
        n += 1;
    }
    coords[pos] = Rat::zero();
}

/// One row of the fusion table.
#[derive(Clone, Debug)]
pub struct FusionTriple {
    pub alpha1: Weight,
    pub alpha2: Weight,
    pub alpha: Weight,
    pub certificate: FusionCertificate,
}

/// Enumerate all admissible triples at level `k` in lexicographic order.
pub fn fusion_table(
    alg: &LieAlgebraData,
    provider: &impl IrrepProvider,
    k: u32,
) -> Result<Vec<FusionTriple>, FusionError> {
    let weights = admissible_weights(alg, k);
    let mut out = Vec::new();
    for a1 in &weights {
        for a2 in &weights {
            for a in &weights {
                let outcome = fusion_admissible(
                    alg,
                    provider,
                    &FusionQuery {
                        level: k,
                        alpha1: a1.clone(),
                        alpha2: a2.clone(),
                        alpha: a.clone(),
                    },
                )?;
                if outcome.admissible {
                    out.push(FusionTriple {
                        alpha1: a1.clone(),
                        alpha2: a2.clone(),
                        alpha: a.clone(),
                        certificate: outcome.certificate,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::algebra::LieAlgebraData;

    fn w(n: i64) -> Weight {
        vec![Rat::from_int(n)]
    }

    fn query(k: u32, a1: i64, a2: i64, a: i64) -> FusionQuery {
        FusionQuery {
            level: k,
            alpha1: w(a1),
            alpha2: w(a2),
            alpha: w(a),
        }
    }

    #[test]
    fn level_one_examples() {
        let alg = LieAlgebraData::sl2();
        let p = Sl2Irreps;
        assert!(fusion_admissible(&alg, &p, &query(1, 1, 1, 0)).unwrap().admissible);
        // spin 1 is inadmissible at k=1: the answer is false, not an error
        let out = fusion_admissible(&alg, &p, &query(1, 1, 1, 2)).unwrap();
        assert!(!out.admissible);
        assert!(!out.certificate.target_admissible);
        // inadmissible sources are rejected
        assert!(fusion_admissible(&alg, &p, &query(1, 2, 1, 1)).is_err());
    }

    #[test]
    fn level_two_projection_cases() {
        let alg = LieAlgebraData::sl2();
        let p = Sl2Irreps;
        // (1/2, 1/2, 1): l = 2 kills the 2-dim irrep; condition vacuous
        assert!(fusion_admissible(&alg, &p, &query(2, 1, 1, 2)).unwrap().admissible);
        // (1, 1, 1) fails the projection test at k = 2
        let out = fusion_admissible(&alg, &p, &query(2, 2, 2, 2)).unwrap();
        assert!(!out.admissible);
        assert!(out.certificate.present);
        assert!(out.certificate.projection_rank > 0);
    }

    #[test]
    fn level_one_table() {
        let alg = LieAlgebraData::sl2();
        let table = fusion_table(&alg, &Sl2Irreps, 1).unwrap();
        let triples: Vec<(i64, i64, i64)> = table
            .iter()
            .map(|t| {
                (
                    t.alpha1[0].to_integer().unwrap(),
                    t.alpha2[0].to_integer().unwrap(),
                    t.alpha[0].to_integer().unwrap(),
                )
            })
            .collect();
        assert_eq!(triples, vec![(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]);
    }

    #[test]
    fn level_zero_table_is_trivial() {
        let alg = LieAlgebraData::sl2();
        let table = fusion_table(&alg, &Sl2Irreps, 0).unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(table[0].alpha, w(0));
    }

    #[test]
    fn tables_match_truncated_clebsch_gordan_rule() {
        // independent oracle: n ∈ fusion(n1,n2) iff |n1-n2| <= n <=
        // min(n1+n2, 2k-n1-n2) and n1+n2+n even
        let alg = LieAlgebraData::sl2();
        let p = Sl2Irreps;
        for k in 0..=4u32 {
            let weights = admissible_weights(&alg, k);
            for a1 in &weights {
                for a2 in &weights {
                    for a in &weights {
                        let (n1, n2, n) = (
                            a1[0].to_integer().unwrap(),
                            a2[0].to_integer().unwrap(),
                            a[0].to_integer().unwrap(),
                        );
                        let expected = (n1 - n2).abs() <= n
                            && n <= (n1 + n2).min(2 * k as i64 - n1 - n2)
                            && (n1 + n2 + n) % 2 == 0;
                        let got = fusion_admissible(
                            &alg,
                            &p,
                            &FusionQuery {
                                level: k,
                                alpha1: a1.clone(),
                                alpha2: a2.clone(),
                                alpha: a.clone(),
                            },
                        )
                        .unwrap()
                        .admissible;
                        assert_eq!(got, expected, "k={k}, ({n1},{n2})->{n}");
                    }
                }
            }
        }
    }
}
