//! Schur functions of the quaternionic half-space: the kernel `k(p, q)`, realizations
//! extended from the real axis, and the kernel `K_S` built from `*`-products.

mod colligation;
mod kernel;

pub use colligation::{
    ball_inequality_slack, blaschke_q, construct_q_from_space, kernel_from_function,
    quaternionic_inertia, resolvent_sum_residual_q, QColligation, QNegativeSquares, SteinResiduals,
};
pub use kernel::{
    check_halfspace_resolvent_identity, check_halfspace_resolvent_identity_spans,
    eigen_relation_residual, k_forms, k_halfspace, kernel_proof_identity, EigenConstant,
    HalfSpacePoint, KernelForms, QSectionSpan,
};
