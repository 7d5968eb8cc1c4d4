//! Fully normalized associated Legendre functions, `∫_{-1}^{1} P̄_k^m(x)² dx = 1`,
//! without the Condon–Shortley phase.

/// Triangular table of `P̄_k^m(x)` for `0 ≤ m ≤ k ≤ lmax`.
#[derive(Debug, Clone)]
pub struct LegendreTable {
    lmax: usize,
    values: Vec<f64>,
}

impl LegendreTable {
    pub fn new(lmax: usize) -> Self {
        Self {
            lmax,
            values: vec![0.0; (lmax + 1) * (lmax + 2) / 2],
        }
    }

    #[inline]
    fn index(k: usize, m: usize) -> usize {
        k * (k + 1) / 2 + m
    }

    #[inline]
    pub fn get(&self, k: usize, m: usize) -> f64 {
        self.values[Self::index(k, m)]
    }

    pub fn lmax(&self) -> usize {
        self.lmax
    }

    /// Fills the table at `x = cos θ`.
    pub fn fill(&mut self, x: f64) {
        let lmax = self.lmax;
        let s = (1.0 - x * x).max(0.0).sqrt();
        let mut pmm = std::f64::consts::FRAC_1_SQRT_2;
        for m in 0..=lmax {
            if m > 0 {
                let mf = m as f64;
                pmm *= ((2.0 * mf + 1.0) / (2.0 * mf)).sqrt() * s;
            }
            self.values[Self::index(m, m)] = pmm;
            if m == lmax {
                break;
            }
            let mf = m as f64;
            let mut p_prev = pmm;
            let mut p = (2.0 * mf + 3.0).sqrt() * x * pmm;
            self.values[Self::index(m + 1, m)] = p;
            for k in (m + 2)..=lmax {
                let kf = k as f64;
                let a = ((4.0 * kf * kf - 1.0) / (kf * kf - mf * mf)).sqrt();
                let b = (((kf - 1.0).powi(2) - mf * mf) / (4.0 * (kf - 1.0).powi(2) - 1.0)).sqrt();
                let next = a * (x * p - b * p_prev);
                p_prev = p;
                p = next;
                self.values[Self::index(k, m)] = p;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::gauss_legendre;

    #[test]
    fn orthonormal_under_gauss_legendre() {
        let lmax = 12;
        let q = gauss_legendre(20).unwrap();
        let tables: Vec<LegendreTable> = q
            .nodes
            .iter()
            .map(|&x| {
                let mut t = LegendreTable::new(lmax);
                t.fill(x);
                t
            })
            .collect();
        for m in 0..=lmax {
            for k1 in m..=lmax {
                for k2 in m..=lmax {
                    let v: f64 = tables
                        .iter()
                        .zip(&q.weights)
                        .map(|(t, w)| w * t.get(k1, m) * t.get(k2, m))
                        .sum();
                    let expected = if k1 == k2 { 1.0 } else { 0.0 };
                    assert!((v - expected).abs() < 1e-13, "k1={k1} k2={k2} m={m}: {v}");
                }
            }
        }
    }

    #[test]
    fn zonal_column_is_scaled_legendre() {
        let mut t = LegendreTable::new(4);
        t.fill(0.5);
        // P̄_2^0 = sqrt(5/2) P_2
        assert!((t.get(2, 0) - (2.5f64).sqrt() * (-0.125)).abs() < 1e-15);
    }
}
