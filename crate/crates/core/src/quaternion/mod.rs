//! Quaternions, quaternionic matrices, slice power series and `*`-products.
//!
//! Spectral questions are always answered through the complex embedding
//! `chi(Z1 + Z2 j) = [[Z1, Z2], [-conj(Z2), conj(Z1)]]`.

mod qmatrix;
mod quat;
mod series;
mod star;

pub use qmatrix::{complex_embed, embed_metric, QMatrix};
pub use quat::{qconj, qinv, qmul, qnorm, Quaternion};
pub use series::{is_intrinsic, resolvent_r_alpha_q, SlicePowerSeries, MAX_SERIES_DEGREE};
pub use star::{
    left_components, lift_intrinsic, right_components, star_eval, star_inverse_resolvent,
    star_left, star_right, star_right_dual, StarRule,
};
