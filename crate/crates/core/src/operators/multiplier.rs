use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specialfn::{gamma_signed, gegenbauer_index, gegenbauer_ratio, sphere_surface, SignedLogValue};

fn is_nonnegative_even(q: f64) -> bool {
    q >= 0.0 && q % 2.0 == 0.0
}

/// Checks `q > -n`, `q ∉ {0, 2, 4, …}`.
pub fn check_admissible(n: usize, q: f64) -> Result<()> {
    if !q.is_finite() {
        return Err(Error::invalid(format!("q = {q} is not finite")));
    }
    if is_nonnegative_even(q) {
        return Err(Error::invalid(format!(
            "q must avoid nonnegative even integers (got q = {q})"
        )));
    }
    if q <= -(n as f64) {
        return Err(Error::invalid(format!("q must exceed -n = -{n} (got q = {q})")));
    }
    Ok(())
}

fn check_degree(k: usize) -> Result<()> {
    if k % 2 != 0 {
        return Err(Error::invalid(format!("degree k = {k} must be even")));
    }
    Ok(())
}

/// `(-1)^{k/2} 2^{-q} π^{n/2} Γ((k-q)/2) / Γ((k+n+q)/2)` without the
/// restriction `q > -n`; only the Gamma poles are rejected.
///
/// For q ≤ -n this is the analytic continuation needed for the Parseval
/// partner `-n-q` of an admissible q.
pub fn tq_multiplier_extended_log(n: usize, q: f64, k: usize) -> Result<SignedLogValue> {
    check_degree(k)?;
    let kf = k as f64;
    let num = gamma_signed((kf - q) / 2.0)?;
    let den_arg = (kf + n as f64 + q) / 2.0;
    if den_arg <= 0.0 && den_arg == den_arg.floor() {
        // 1/Γ vanishes at its poles
        return Ok(SignedLogValue::ZERO);
    }
    let den = gamma_signed(den_arg)?;
    let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let scale = SignedLogValue {
        log_abs: -q * std::f64::consts::LN_2 + 0.5 * n as f64 * PI.ln(),
        sign: 1,
    };
    Ok(SignedLogValue::from_f64(sign) * scale * num.checked_div(den).expect("Gamma is nonzero"))
}

/// Multiplier `λ_k(n, q)` of `T_q` on degree-k harmonics, in signed-log form.
pub fn tq_multiplier_log(n: usize, q: f64, k: usize) -> Result<SignedLogValue> {
    check_admissible(n, q)?;
    tq_multiplier_extended_log(n, q, k)
}

/// Multiplier `λ_k(n, q)` of `T_q`.
pub fn tq_multiplier(n: usize, q: f64, k: usize) -> Result<f64> {
    tq_multiplier_log(n, q, k).map(SignedLogValue::value)
}

/// `c_{n,q} = 2^{-q} π^{n/2} / Γ((n+q)/2)`, the eigenvalue of `Ť_q` on constants.
pub fn c_nq(n: usize, q: f64) -> Result<f64> {
    check_admissible(n, q)?;
    let g = gamma_signed((n as f64 + q) / 2.0)?;
    Ok((-q * std::f64::consts::LN_2 + 0.5 * n as f64 * PI.ln() - g.log_abs).exp())
}

/// `d_{n,q} = Γ(-q/2) / (2^{n+q} π^{n/2} Γ((n+q)/2))`: the Fourier transform of
/// `|x|^{-n-q}` is `d_{n,q} (2π)^n |x|^q`.
pub fn d_nq(n: usize, q: f64) -> Result<f64> {
    check_admissible(n, q)?;
    let nf = n as f64;
    let num = gamma_signed(-q / 2.0)?;
    let den = gamma_signed((nf + q) / 2.0)?;
    let log = num.log_abs - (nf + q) * std::f64::consts::LN_2 - 0.5 * nf * PI.ln() - den.log_abs;
    Ok(f64::from(num.sign * den.sign) * log.exp())
}

/// Factor `√π Γ(-q/2) / (2^{q+1} Γ((q+1)/2))` with `T_q = factor · C_q`.
pub fn cosine_factor(q: f64) -> Result<f64> {
    if !(q > -1.0) {
        return Err(Error::invalid(format!("the q-cosine transform needs q > -1 (got q = {q})")));
    }
    if is_nonnegative_even(q) {
        return Err(Error::invalid(format!(
            "q must avoid nonnegative even integers (got q = {q})"
        )));
    }
    let g = gamma_signed(-q / 2.0)?;
    let h = gamma_signed((q + 1.0) / 2.0)?;
    let log = 0.5 * PI.ln() + g.log_abs - (q + 1.0) * std::f64::consts::LN_2 - h.log_abs;
    Ok(f64::from(g.sign * h.sign) * log.exp())
}

/// `(2π)^n`, the spherical Parseval constant.
pub fn parseval_constant(n: usize) -> f64 {
    (2.0 * PI).powi(n as i32)
}

/// Radon multiplier `|S^{n-2}| C̃_k(0)`.
pub fn radon_multiplier(n: usize, k: usize) -> Result<f64> {
    check_degree(k)?;
    if n < 2 {
        return Err(Error::invalid(format!("dimension n = {n} must be at least 2")));
    }
    Ok(sphere_surface(n - 1) * gegenbauer_ratio(k, gegenbauer_index(n), 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs()
    }

    #[test]
    fn spot_values() {
        assert!(close(tq_multiplier(3, -1.0, 0).unwrap(), 2.0 * PI * PI, 1e-14));
        assert!(close(tq_multiplier(3, -1.0, 2).unwrap(), -PI * PI, 1e-14));
        assert!(close(tq_multiplier(3, -2.0, 0).unwrap(), 4.0 * PI, 1e-14));
        assert!(close(tq_multiplier(3, 1.0, 2).unwrap(), -PI * PI / 4.0, 1e-14));
    }

    #[test]
    fn excluded_parameters() {
        assert!(tq_multiplier(3, 2.0, 0).is_err());
        assert!(tq_multiplier(3, 0.0, 0).is_err());
        assert!(tq_multiplier(3, -3.0, 0).is_err());
        assert!(tq_multiplier(3, -1.0, 1).is_err());
        assert!(tq_multiplier(3, 3.0, 2).is_ok());
    }

    #[test]
    fn constants() {
        assert!(close(c_nq(3, 1.0).unwrap(), PI.powf(1.5) / 2.0, 1e-14));
        // c_{3,1} Γ(-1/2) = -π²
        assert!(close(c_nq(3, 1.0).unwrap() * (-2.0 * PI.sqrt()), -PI * PI, 1e-14));
        assert!(close(cosine_factor(1.0).unwrap(), -PI / 2.0, 1e-14));
        assert!(close(parseval_constant(3), 248.050_213_442_398_56, 1e-15));
        assert!(close(radon_multiplier(3, 0).unwrap(), 2.0 * PI, 1e-14));
        assert!(close(radon_multiplier(3, 2).unwrap(), -PI, 1e-14));
        assert!(close(radon_multiplier(5, 2).unwrap(), -PI * PI / 2.0, 1e-14));
    }

    #[test]
    fn mean_value_matches_fourier_transform_of_power() {
        for n in [3usize, 4, 5] {
            for q in [-2.5, -1.0, -0.5, 0.5, 1.0, 3.0] {
                if q <= -(n as f64) {
                    continue;
                }
                let lambda0 = tq_multiplier(n, q, 0).unwrap();
                let expected = d_nq(n, q).unwrap() * parseval_constant(n);
                assert!(close(lambda0, expected, 1e-13), "n = {n}, q = {q}");
            }
        }
    }
}
