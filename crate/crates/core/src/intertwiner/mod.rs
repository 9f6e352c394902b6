pub mod realization;
pub mod virasoro_real;
pub mod symbolic;
pub mod affine_real;
