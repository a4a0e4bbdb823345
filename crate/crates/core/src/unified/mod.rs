//! The `(a, b)` framework: `rho(z, w) = a(z) conj(a(w)) - b(z) conj(b(w))`,
//! `sigma = b / a`, and the generalized resolvents `R(a, b, alpha)`.

mod ab;
mod construct;
mod rational;
mod realization;
mod transport;

pub use ab::{j0_unitary, AbPair, Region, Zone, CLASSIFY_BAND, MAX_DEGREE};
pub use construct::{construct_from_space_unified, section_resolvents};
pub use rational::{r_ab_apply, resolvent_sum_residual, transport_law_residual, Rational};
pub use realization::{
    disk_variable, eval_unified, eval_unified_resolvent_form, inequality_forms, kernel_unified,
    point_evaluation_unified, step_two_residuals, t_from_rab, InequalityForms, StateResolvents,
    UnifiedKernel,
};
pub use transport::{sigma_derivative, transport_to_disk, DiskTransport, SigmaInverse};
