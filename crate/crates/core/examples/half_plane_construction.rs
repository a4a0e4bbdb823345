//! Recover a colligation from a finite model space and compare kernels.

use krein_kernels::linalg::c;
use krein_kernels::schur::construct_from_space;
use krein_kernels::suites::{blaschke_kernel, blaschke_model_space, kernel_match, round_trip_grid};

fn main() -> krein_kernels::Result<()> {
    let zeros = [c(0.5, 0.3), c(1.5, -1.0), c(0.8, 0.9)];
    let space = blaschke_model_space(&zeros, c(1.0, 0.0))?;
    let built = construct_from_space(&space, 1e-9)?;

    println!("k = {}", built.k);
    println!("slack inertia: {:?}", built.slack_inertia);
    println!(
        "index balance: {:?} holds = {}",
        built.index_balance,
        built.index_balance.holds()
    );
    println!("T =\n{:.4}", built.colligation.t);

    let (state_space, realized) = kernel_match(
        &built.colligation,
        blaschke_kernel(&zeros),
        &round_trip_grid(),
    )?;
    println!("kernel mismatch via state space: {state_space:.2e}");
    println!("kernel mismatch via realized S:  {realized:.2e}");
    Ok(())
}
