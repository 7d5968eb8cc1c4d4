use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::gamma::gamma_signed;
use crate::error::{Error, Result};

pub const MAX_QUADRATURE_ORDER: usize = 4096;

/// Gauss rule on [-1, 1] for the symmetric weight `(1 - t²)^α`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub weight_exponent: f64,
    pub order: usize,
}

impl Quadrature1D {
    /// `∫ f(t) (1-t²)^α dt` by the rule.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let terms: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .collect();
        crate::numeric::pairwise_sum(&terms)
    }
}

/// Gauss rule on [-1, 1] for the weight `(1 - x)^a (1 + x)^b`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub a: f64,
    pub b: f64,
}

impl JacobiRule {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let terms: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .collect();
        crate::numeric::pairwise_sum(&terms)
    }
}

/// `∫_{-1}^{1} t^{2j} (1-t²)^α dt = Γ(j+1/2) Γ(α+1) / Γ(j+α+3/2)`.
pub fn symmetric_moment(j: usize, alpha: f64) -> f64 {
    let jf = j as f64;
    let l = gamma_signed(jf + 0.5).unwrap().log_abs + gamma_signed(alpha + 1.0).unwrap().log_abs
        - gamma_signed(jf + alpha + 1.5).unwrap().log_abs;
    l.exp()
}

/// Gauss–Jacobi rule of the given order for the weight `(1 - t²)^alpha`.
///
/// Nodes come from the eigenvalues of the Jacobi matrix (Golub–Welsch), are
/// polished by Newton steps on the orthonormal recurrence, and the weights are
/// taken from the Christoffel function, which is accurate for the small
/// weights near ±1.
pub fn gauss_jacobi(order: usize, alpha: f64) -> Result<Quadrature1D> {
    let rule = jacobi_rule(order, alpha, alpha)?;
    let mut nodes = rule.nodes;
    let mut weights = rule.weights;
    let m = order;
    for i in 0..m / 2 {
        let j = m - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        let w = 0.5 * (weights[i] + weights[j]);
        nodes[i] = -x;
        nodes[j] = x;
        weights[i] = w;
        weights[j] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    Ok(Quadrature1D {
        nodes,
        weights,
        weight_exponent: alpha,
        order,
    })
}

/// Memoized [`gauss_jacobi`]; rules are immutable and shared.
pub fn gauss_jacobi_cached(order: usize, alpha: f64) -> Result<Arc<Quadrature1D>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u64), Arc<Quadrature1D>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (order, alpha.to_bits());
    if let Some(rule) = cache.lock().unwrap().get(&key) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(gauss_jacobi(order, alpha)?);
    cache.lock().unwrap().insert(key, Arc::clone(&rule));
    Ok(rule)
}

pub fn gauss_legendre(order: usize) -> Result<Quadrature1D> {
    gauss_jacobi(order, 0.0)
}

/// Three-term recurrence of the monic Jacobi polynomials:
/// `p_{j+1} = (x - diag[j]) p_j - offdiag_sq[j] p_{j-1}`.
struct Recurrence {
    diag: Vec<f64>,
    /// `offdiag_sq[j]` for j ≥ 1; index 0 unused.
    offdiag_sq: Vec<f64>,
    mu0: f64,
}

fn jacobi_recurrence(m: usize, a: f64, b: f64) -> Recurrence {
    let mut diag = Vec::with_capacity(m + 1);
    let mut offdiag_sq = vec![0.0; m + 1];
    for j in 0..=m {
        let s = 2.0 * j as f64 + a + b;
        let d = if j == 0 {
            (b - a) / (a + b + 2.0)
        } else if b == a {
            0.0
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        };
        diag.push(d);
    }
    for (j, slot) in offdiag_sq.iter_mut().enumerate().skip(1) {
        let jf = j as f64;
        let s = 2.0 * jf + a + b;
        *slot = if j == 1 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))
        } else {
            4.0 * jf * (jf + a) * (jf + b) * (jf + a + b) / (s * s * (s + 1.0) * (s - 1.0))
        };
    }
    let mu0 = ((a + b + 1.0) * std::f64::consts::LN_2
        + gamma_signed(a + 1.0).unwrap().log_abs
        + gamma_signed(b + 1.0).unwrap().log_abs
        - gamma_signed(a + b + 2.0).unwrap().log_abs)
        .exp();
    Recurrence {
        diag,
        offdiag_sq,
        mu0,
    }
}

/// Gauss–Jacobi rule for `(1 - x)^a (1 + x)^b` on [-1, 1].
pub fn jacobi_rule(order: usize, a: f64, b: f64) -> Result<JacobiRule> {
    if order == 0 || order > MAX_QUADRATURE_ORDER {
        return Err(Error::invalid(format!(
            "quadrature order {order} outside 1..={MAX_QUADRATURE_ORDER}"
        )));
    }
    if !(a > -1.0 && b > -1.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::invalid(format!(
            "Jacobi exponents must exceed -1 (a = {a}, b = {b})"
        )));
    }
    let m = order;
    let rec = jacobi_recurrence(m, a, b);
    if m == 1 {
        return Ok(JacobiRule {
            nodes: vec![rec.diag[0]],
            weights: vec![rec.mu0],
            a,
            b,
        });
    }

    let mut d: Vec<f64> = rec.diag[..m].to_vec();
    let mut e: Vec<f64> = (0..m)
        .map(|j| if j + 1 < m { rec.offdiag_sq[j + 1].sqrt() } else { 0.0 })
        .collect();
    tridiagonal_eigenvalues(&mut d, &mut e)?;
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());

    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for &x0 in &d {
        let mut x = x0;
        for _ in 0..4 {
            let (p, dp, _) = orthonormal_eval(&rec, m, x);
            if dp == 0.0 || !dp.is_finite() {
                break;
            }
            let step = p / dp;
            let candidate = x - step;
            // Newton must not leave the neighborhood the eigen solver found.
            if !candidate.is_finite() || (candidate - x0).abs() > 1e-6 * (1.0 - x0 * x0).max(1e-12)
            {
                break;
            }
            x = candidate;
            if step.abs() <= 4.0 * f64::EPSILON * x.abs().max(1e-300) {
                break;
            }
        }
        let (_, _, christoffel) = orthonormal_eval(&rec, m, x);
        nodes.push(x);
        weights.push(1.0 / christoffel);
    }
    Ok(JacobiRule {
        nodes,
        weights,
        a,
        b,
    })
}

/// Evaluates the degree-m orthonormal polynomial, its derivative, and the
/// Christoffel sum `Σ_{j<m} p̂_j(x)²`.
fn orthonormal_eval(rec: &Recurrence, m: usize, x: f64) -> (f64, f64, f64) {
    let mut p_prev = 0.0;
    let mut p = 1.0 / rec.mu0.sqrt();
    let mut dp_prev = 0.0;
    let mut dp = 0.0;
    let mut christoffel = 0.0;
    for j in 0..m {
        christoffel += p * p;
        let beta_next = rec.offdiag_sq[j + 1].sqrt();
        let beta_cur = if j == 0 { 0.0 } else { rec.offdiag_sq[j].sqrt() };
        let p_next = ((x - rec.diag[j]) * p - beta_cur * p_prev) / beta_next;
        let dp_next = (p + (x - rec.diag[j]) * dp - beta_cur * dp_prev) / beta_next;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
    }
    (p, dp, christoffel)
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix;
/// `e[i]` couples rows i and i+1. Eigenvalues are left in `d`.
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 100 {
                return Err(Error::QuadratureFailure(
                    "tridiagonal eigenvalue iteration did not converge".into(),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn single_node_rule() {
        let q = gauss_jacobi(1, 0.0).unwrap();
        assert_eq!(q.nodes, vec![0.0]);
        assert!((q.weights[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn five_point_legendre_integrates_t8() {
        let q = gauss_jacobi(5, 0.0).unwrap();
        let v = q.integrate(|t| t.powi(8));
        assert!((v - 2.0 / 9.0).abs() < 1e-14, "{v}");
    }

    #[test]
    fn weight_sum_alpha_one() {
        let q = gauss_jacobi(8, 1.0).unwrap();
        let s: f64 = q.weights.iter().sum();
        assert!((s - 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn chebyshev_rule_matches_closed_form() {
        let m = 12;
        let q = gauss_jacobi(m, -0.5).unwrap();
        for (i, (&x, &w)) in q.nodes.iter().zip(&q.weights).enumerate() {
            let expected = -((2 * i + 1) as f64 * PI / (2 * m) as f64).cos();
            assert!((x - expected).abs() < 1e-14);
            assert!((w - PI / m as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn alpha_at_or_below_minus_one_rejected() {
        assert!(gauss_jacobi(4, -1.0).is_err());
        assert!(gauss_jacobi(0, 0.0).is_err());
        assert!(gauss_jacobi(MAX_QUADRATURE_ORDER + 1, 0.0).is_err());
    }

    #[test]
    fn nodes_increasing_and_weights_positive() {
        for &(m, a) in &[(7, 0.0), (64, 0.5), (257, 1.0), (40, -0.5), (33, 7.5)] {
            let q = gauss_jacobi(m, a).unwrap();
            assert!(q.weights.iter().all(|&w| w > 0.0));
            assert!(q.nodes.windows(2).all(|p| p[0] < p[1]));
            assert!(q.nodes[0] > -1.0 && q.nodes[m - 1] < 1.0);
        }
    }

    #[test]
    fn asymmetric_rule_moments() {
        // ∫ (1-x)^a (1+x)^b x dx / μ0 = (b - a) / (a + b + 2)
        let (a, b) = (0.5, -0.75);
        let r = jacobi_rule(10, a, b).unwrap();
        let mu0: f64 = r.weights.iter().sum();
        let m1 = r.integrate(|x| x) / mu0;
        assert!((m1 - (b - a) / (a + b + 2.0)).abs() < 1e-14);
        let expected_mu0 = 2f64.powf(a + b + 1.0) * libm::tgamma(a + 1.0) * libm::tgamma(b + 1.0)
            / libm::tgamma(a + b + 2.0);
        assert!((mu0 - expected_mu0).abs() < 1e-13);
    }

    #[test]
    fn large_order_sum() {
        let q = gauss_jacobi(1024, 0.5).unwrap();
        let s: f64 = q.weights.iter().sum();
        let exact = PI.sqrt() * libm::tgamma(1.5) / libm::tgamma(2.0);
        assert!(((s - exact) / exact).abs() < 1e-12);
    }
}
