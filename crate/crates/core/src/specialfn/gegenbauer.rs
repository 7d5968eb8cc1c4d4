use super::gamma::gamma_signed;

/// Normalized Gegenbauer polynomial `C_k^ν(t) / C_k^ν(1)`.
///
/// `nu = 0` is the Chebyshev limit `T_k(t)`. The recurrence is run on the
/// normalized values directly so magnitudes stay within [-1, 1] for ν ≥ 0.
pub fn gegenbauer_ratio(k: usize, nu: f64, t: f64) -> f64 {
    if k == 0 || t == 1.0 {
        return 1.0;
    }
    if t == -1.0 {
        return if k % 2 == 0 { 1.0 } else { -1.0 };
    }
    let mut prev = 1.0;
    let mut cur = t;
    for j in 1..k {
        let jf = j as f64;
        let next = (2.0 * (jf + nu) * t * cur - jf * prev) / (jf + 2.0 * nu);
        prev = cur;
        cur = next;
    }
    cur
}

/// All normalized Gegenbauer values for degrees `0..=kmax` at `t`.
pub fn gegenbauer_ratios(kmax: usize, nu: f64, t: f64, out: &mut Vec<f64>) {
    out.clear();
    out.reserve(kmax + 1);
    out.push(1.0);
    if kmax == 0 {
        return;
    }
    if t == 1.0 || t == -1.0 {
        for k in 1..=kmax {
            out.push(if t > 0.0 || k % 2 == 0 { 1.0 } else { -1.0 });
        }
        return;
    }
    out.push(t);
    for j in 1..kmax {
        let jf = j as f64;
        let next = (2.0 * (jf + nu) * t * out[j] - jf * out[j - 1]) / (jf + 2.0 * nu);
        out.push(next);
    }
}

/// Dimension of the space of degree-k spherical harmonics on `S^{n-1}`.
pub fn harmonic_dimension(n: usize, k: usize) -> f64 {
    assert!(n >= 2, "harmonic_dimension requires n >= 2");
    if n == 2 {
        return if k == 0 { 1.0 } else { 2.0 };
    }
    if k == 0 {
        return 1.0;
    }
    let (kf, nf) = (k as f64, n as f64);
    // (2k+n-2) (k+n-3)! / (k! (n-2)!)
    let log_binom = gamma_signed(kf + nf - 2.0).unwrap().log_abs
        - gamma_signed(kf + 1.0).unwrap().log_abs
        - gamma_signed(nf - 1.0).unwrap().log_abs;
    (2.0 * kf + nf - 2.0) * log_binom.exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_is_one() {
        for &nu in &[0.0, 0.5, 1.5, 7.0] {
            for &t in &[-1.0, -0.3, 0.0, 0.9] {
                assert_eq!(gegenbauer_ratio(0, nu, t), 1.0);
            }
        }
    }

    #[test]
    fn legendre_p2() {
        assert!((gegenbauer_ratio(2, 0.5, 0.5) + 0.125).abs() < 1e-15);
    }

    #[test]
    fn gegenbauer_three_halves_at_zero() {
        // C_2^ν(t) = 2ν(ν+1)t² − ν, so C_2(0)/C_2(1) = −ν / (2ν² + ν) = −1/(2ν+1).
        assert!((gegenbauer_ratio(2, 1.5, 0.0) + 0.25).abs() < 1e-15);
    }

    #[test]
    fn chebyshev_limit() {
        let theta: f64 = 0.7;
        for k in 0..20 {
            let expected = (k as f64 * theta).cos();
            assert!((gegenbauer_ratio(k, 0.0, theta.cos()) - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn exactly_one_at_the_pole() {
        for k in 0..300 {
            assert_eq!(gegenbauer_ratio(k, 1.5, 1.0), 1.0);
        }
    }

    #[test]
    fn vector_form_matches_scalar_form() {
        let mut v = Vec::new();
        gegenbauer_ratios(40, 1.0, 0.37, &mut v);
        for (k, &x) in v.iter().enumerate() {
            assert!((x - gegenbauer_ratio(k, 1.0, 0.37)).abs() < 1e-15);
        }
    }

    #[test]
    fn harmonic_dimensions() {
        assert_eq!(harmonic_dimension(3, 4), 9.0);
        assert!((harmonic_dimension(4, 3) - 16.0).abs() < 1e-9);
        // n = 5: (2k+3)(k+2)(k+1)/6
        assert!((harmonic_dimension(5, 2) - 14.0).abs() < 1e-9);
        assert_eq!(harmonic_dimension(2, 6), 2.0);
    }
}
