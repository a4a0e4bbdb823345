//! Regions defined by a pair of polynomials `(a, b)`.

use krein_kernels::linalg::c;
use krein_kernels::poly::Poly;
use krein_kernels::unified::{j0_unitary, resolvent_sum_residual, AbPair, Rational};

fn main() -> krein_kernels::Result<()> {
    let ab = AbPair::half_plane();
    for z in [c(1.0, 0.0), c(-0.5, 0.3), c(0.0, 1.0)] {
        println!("{z}: zone {:?}, sigma {:.4}", ab.classify(z), ab.sigma(z)?);
    }

    // A J0-unitary re-representation leaves rho unchanged.
    let moved = ab.transform(&j0_unitary(0.7, [0.1, -0.4, 1.2, 0.3]))?;
    let (z, w) = (c(0.4, 1.1), c(1.3, -0.2));
    println!(
        "rho before {:.6}, after {:.6}",
        ab.rho(z, w),
        moved.rho(z, w)
    );

    let f = Rational::new(
        Poly::from_real(&[1.0, -2.0, 0.5]),
        Poly::from_real(&[3.0, 1.0]),
    )?;
    let alpha = c(0.8, 0.1);
    let points = [c(0.5, 0.5), c(1.2, -0.3), c(2.0, 0.9)];
    println!(
        "a(alpha) R(b,a) f + b(alpha) R(a,b) f + f: {:.2e}",
        resolvent_sum_residual(&ab, &f, alpha, &points)?
    );
    Ok(())
}
