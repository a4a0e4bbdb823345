//! Factor the defect `I - C C^[*]` of a contraction between Pontryagin spaces.

use krein_kernels::indefinite::{defect_factorization, indef_adjoint, MetricMap};
use krein_kernels::linalg::{max_diff, vstack};
use krein_kernels::rng::SplitMix64;
use krein_kernels::schur::{random_colligation, RandomShape};

fn main() -> krein_kernels::Result<()> {
    let mut rng = SplitMix64::new(3);
    let col = random_colligation(&mut rng, RandomShape::scalar(4, 1))?;

    // The column [T; G] : P -> P [+] C.
    let c = MetricMap::new(
        vstack(&col.t, &col.g),
        col.p.clone(),
        col.p.direct_sum(&col.c),
    )?;
    let defect = defect_factorization(&c, 1e-9)?;
    println!("eigenvalues of J(I - C C^[*]): {:.4?}", defect.eigenvalues);
    println!("defect inertia: {:?}", defect.inertia);
    println!("auxiliary metric: {:?}", defect.metric.signs());

    let x = &defect.x;
    let xx = x.compose(&indef_adjoint(x))?;
    let cc = c.compose(&indef_adjoint(&c))?;
    let identity = nalgebra::DMatrix::identity(cc.matrix.nrows(), cc.matrix.ncols());
    println!(
        "|X X^[*] - (I - C C^[*])| = {:.2e}",
        max_diff(&xx.matrix, &(identity - &cc.matrix))
    );
    Ok(())
}
