//! Seeded Monte Carlo estimators: GOE determinants, the GOE route to
//! `E(n, p)`, and exact real eigenvector counting for binary tensors.

mod estimate;
mod goe;
mod roots;
mod tensor;

pub use estimate::{
    estimate, worker_rng, Estimand, EstimatorResult, Histogram, McError, McRun, MIN_SAMPLES,
};
pub use goe::{det_lu, sample_goe, GoeSample};
pub use roots::{
    count_distinct_real_roots, count_real_projective_roots, sturm_real_roots, RootCount,
};
pub use tensor::{
    bombieri_variance, eigenpair_form_n2, index_classes, sample_bombieri_tensor, BinaryForm,
    SymTensor,
};
