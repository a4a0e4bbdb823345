//! Resolvent identities on spans of Hardy kernel sections.

use krein_kernels::kernel_spaces::{
    check_identity, resolvent_identity_residual, Identity, RationalSection, Setting,
};
use krein_kernels::linalg::{c, to_cvec};

fn main() -> krein_kernels::Result<()> {
    let setting = Setting::HalfPlane;
    let f = RationalSection::from_terms(
        setting.clone(),
        2,
        vec![
            (c(0.7, 0.4), to_cvec(&[c(1.0, 0.0), c(0.0, -2.0)])),
            (c(1.6, -1.1), to_cvec(&[c(0.5, 0.5), c(1.0, 0.0)])),
        ],
    )?;
    let g = RationalSection::kernel_section(
        setting,
        c(0.9, 0.2),
        to_cvec(&[c(0.0, 1.0), c(2.0, 0.0)]),
    )?;
    let (alpha, beta) = (c(1.2, 0.3), c(0.5, -0.8));

    let points = [c(0.3, 0.1), c(1.0, 2.0), c(2.5, -0.7)];
    println!(
        "R_a - R_b = (a - b) R_a R_b: {:.2e}",
        resolvent_identity_residual(&f, alpha, beta, &points)?
    );
    println!(
        "half-plane inner-product identity: {:.2e}",
        check_identity(Identity::HalfPlaneResolventForm, &f, &g, alpha, beta, None)?
    );

    let fd = RationalSection::kernel_section(Setting::Disk, c(0.3, -0.4), to_cvec(&[c(1.0, 0.0)]))?;
    let gd = RationalSection::kernel_section(Setting::Disk, c(-0.5, 0.1), to_cvec(&[c(0.0, 1.0)]))?;
    println!(
        "disk inner-product identity: {:.2e}",
        check_identity(
            Identity::DiskResolventForm,
            &fd,
            &gd,
            c(0.2, 0.2),
            c(-0.1, 0.6),
            None
        )?
    );
    Ok(())
}
