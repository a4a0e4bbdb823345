//! Count negative squares of the kernel of a generalized Schur function.

use krein_kernels::kernel_spaces::{PointChoice, Setting};
use krein_kernels::rng::SplitMix64;
use krein_kernels::schur::{random_colligation, sample_regular_points, RandomShape};
use krein_kernels::suites::kappa_draw;

fn main() -> krein_kernels::Result<()> {
    let mut rng = SplitMix64::new(8);
    let col = random_colligation(&mut rng, RandomShape::scalar(5, 2))?;
    let points = sample_regular_points(&mut rng, &col, &Setting::Disk, 9, 20.0)?;
    for n in [3, 5, 7, 9] {
        let choice = PointChoice::with_basis(&points[..n], 1)?;
        let kappa = col.negative_squares(&Setting::Disk, &choice, 1e-9)?;
        println!(
            "{n} points: kappa = {kappa} (ind_-(P) = {})",
            col.p.ind_minus()
        );
    }

    for i in 0..5 {
        let draw = kappa_draw(20240917, i, 1e-9)?;
        println!(
            "draw {i}: ind_- {} kappas {:?} attained {}",
            draw.ind_minus,
            draw.kappas,
            draw.attained()
        );
    }
    Ok(())
}
