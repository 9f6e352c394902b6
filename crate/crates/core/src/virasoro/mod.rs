//! The Virasoro side: Verma modules, Kac-table data, singular vectors and
//! their Feigin-Fuchs evaluation.

pub mod partition;
pub mod verma;
pub mod kac;
pub mod singular;
pub mod feigin_fuchs;

pub use feigin_fuchs::{
    f_lambda_mu_action, r_factorized, r_factorized_roots, rho_closed_form, rho_direct,
    rho_square_scalar, sigma_rs, FLambdaMuVector, RhoError, WittEval,
};
pub use kac::{c_of_t, h_rs_of_t, kac_c, kac_h, kac_table, KacError, KacLabel};
pub use partition::{partitions_of, Partition};
pub use singular::{singular_vector, SingularError, MAX_SINGULAR_LEVEL};
pub use verma::{commutator_action, VermaVector, VirKind, VirasoroModule};
