//! Slice hyperholomorphic kernels and realizations on the right half-space.

use krein_kernels::linalg::c;
use krein_kernels::qschur::{
    check_halfspace_resolvent_identity, k_forms, HalfSpacePoint, QColligation,
};
use krein_kernels::quaternion::{QMatrix, Quaternion};
use krein_kernels::rng::SplitMix64;
use krein_kernels::schur::{random_colligation, RandomShape};

fn main() -> krein_kernels::Result<()> {
    let p = Quaternion::new(0.8, 0.3, -0.5, 1.1);
    let q = Quaternion::new(1.4, -0.2, 0.7, 0.4);
    let forms = k_forms(p, q)?;
    println!(
        "kernel forms: {:?} vs {:?}",
        forms.conjugate_form, forms.regular_form
    );
    let (mu, nu) = (HalfSpacePoint::new(p)?, HalfSpacePoint::new(q)?);
    println!(
        "resolvent inner-product identity: {:.2e}",
        check_halfspace_resolvent_identity(0.9, 1.7, mu, nu)?
    );

    let mut rng = SplitMix64::new(4);
    let mut shape = RandomShape::scalar(3, 1);
    shape.alpha = c(1.0, 0.0);
    let col = random_colligation(&mut rng, shape)?;
    let qcol = QColligation::from_complex(&col, 1e-9)?;

    // On the slice C_i the quaternionic S agrees with the complex one.
    let z = c(0.6, -0.9);
    let on_slice = qcol.eval_q(Quaternion::from_complex(z))?;
    println!(
        "|S_q - S| on C_i: {:.2e}",
        on_slice.max_diff(&QMatrix::from_complex(&col.eval_halfplane(z)?))
    );
    let stein = qcol.verify_stein(p, q)?;
    println!("Stein residual: {:.2e}", stein.unstarred);
    Ok(())
}
