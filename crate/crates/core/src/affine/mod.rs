//! The affine Kac-Moody side: Lie-algebra data, irreps, tensor
//! decompositions, the level-k fusion test, and the affine vertex algebra
//! with its Weyl modules.

pub mod algebra;
pub mod irrep;
pub mod tensor;
pub mod fusion;
pub mod vertex;

pub use algebra::{
    casimir_eigenvalue, central_charge, sugawara_weight, AlgebraError, LieAlgebraData, Weight,
};
pub use fusion::{
    admissible_weights, fusion_admissible, fusion_table, FusionCertificate, FusionError,
    FusionOutcome, FusionQuery, FusionTriple, IrrepProvider, Sl2Irreps,
};
pub use irrep::{sl2_irrep, IrrepData, IrrepError};
pub use tensor::{product_matrices, tensor_decompose, Component, TensorDecomposition};
pub use vertex::{sugawara_vector, AffKind, AffVector, AffWord, AffineModes, AffineModule};
