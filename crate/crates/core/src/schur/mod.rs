//! Generalized Schur functions realized by coisometric colligations, and the
//! reverse construction from a finite model space.

mod colligation;
mod construct;
mod model;
mod random;

pub use colligation::Colligation;
pub(crate) use construct::{check_slack, realize_from_contraction};
pub use construct::{construct_from_space, Construction, IndexBalance};
pub use model::FiniteModelSpace;
pub use random::{random_colligation, sample_regular_points, RandomShape};
