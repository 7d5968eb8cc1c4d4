//! Special functions and quadrature rules used by every spectral computation.

mod gamma;
mod gegenbauer;
mod quadrature;

pub use gamma::{gamma, gamma_ratio, gamma_signed, SignedLogValue};
pub use gegenbauer::{gegenbauer_ratio, gegenbauer_ratios, harmonic_dimension};
pub use quadrature::{
    gauss_jacobi, gauss_jacobi_cached, gauss_legendre, jacobi_rule, symmetric_moment, JacobiRule,
    Quadrature1D, MAX_QUADRATURE_ORDER,
};

use std::f64::consts::PI;

/// Surface area `|S^{n-1}| = 2 π^{n/2} / Γ(n/2)`.
///
/// `n = 1` is accepted and gives `|S^0| = 2`, the count of the two points
/// that the zonal reduction integrates over when n = 2.
pub fn sphere_surface(n: usize) -> f64 {
    assert!((1..=64).contains(&n), "sphere_surface: n = {n} out of range");
    let nf = n as f64;
    let log = std::f64::consts::LN_2 + 0.5 * nf * PI.ln() - gamma_signed(0.5 * nf).unwrap().log_abs;
    log.exp()
}

/// Gegenbauer index `ν = (n - 2) / 2` of the zonal basis on `S^{n-1}`.
pub fn gegenbauer_index(n: usize) -> f64 {
    (n as f64 - 2.0) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_areas() {
        assert!((sphere_surface(3) - 4.0 * PI).abs() < 1e-13);
        assert!((sphere_surface(2) - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_surface(5) - 8.0 * PI * PI / 3.0).abs() < 1e-13);
        assert!((sphere_surface(1) - 2.0).abs() < 1e-15);
    }
}
