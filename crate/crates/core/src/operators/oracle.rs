//! Independent quadrature routes to the multipliers and to `C_q`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;
use crate::specialfn::{
    gauss_jacobi_cached, gauss_legendre, gegenbauer_index, gegenbauer_ratio, jacobi_rule,
    sphere_surface, Quadrature1D,
};
use crate::spherefun::{analyze, Grid, GridFunction, Kind, Point, Spectrum};

struct Level {
    order: usize,
    ratio: f64,
    depth: i32,
    max_panel: f64,
}

/// Breakpoints on [0, 1/2], geometrically graded toward 0.
fn half_breakpoints(level: &Level) -> Vec<f64> {
    let mut graded = vec![0.0];
    for j in (1..=level.depth).rev() {
        graded.push(0.5 * level.ratio.powi(j));
    }
    graded.push(0.5);
    let mut refined = vec![0.0];
    for w in graded.windows(2) {
        let pieces = ((w[1] - w[0]) / level.max_panel).ceil().max(1.0) as usize;
        for i in 1..=pieces {
            refined.push(w[0] + (w[1] - w[0]) * i as f64 / pieces as f64);
        }
    }
    refined
}

/// `∫_{-1}^{1} f(t, 1-|t|) dt`, with grading toward -1, 0 and 1.
///
/// The distance `1-|t|` is passed separately so endpoint factors stay
/// accurate on panels far below machine epsilon.
fn composite(f: &dyn Fn(f64, f64) -> f64, level: &Level, rule: &Quadrature1D) -> f64 {
    let pts = half_breakpoints(level);
    let mut terms = Vec::with_capacity(4 * pts.len() * rule.order);
    for w in pts.windows(2) {
        let half = 0.5 * (w[1] - w[0]);
        let mid = 0.5 * (w[0] + w[1]);
        for (&x, &wt) in rule.nodes.iter().zip(&rule.weights) {
            let d = mid + half * x;
            let hw = half * wt;
            // d is the distance to 0 on the inner pieces and to ±1 on the outer ones
            terms.push(hw * f(d, 1.0 - d));
            terms.push(hw * f(-d, 1.0 - d));
            terms.push(hw * f(1.0 - d, d));
            terms.push(hw * f(d - 1.0, d));
        }
    }
    pairwise_sum(&terms)
}

/// `|S^{n-2}| ∫_{-1}^{1} kernel(t) C̃_k(t) (1-t²)^{(n-3)/2} dt` by graded
/// composite Gauss–Legendre quadrature, compared across two refinement levels.
///
/// The kernel may have integrable singularities at `t = 0` and `t = ±1`.
pub fn funk_hecke_oracle(kernel: impl Fn(f64) -> f64, n: usize, k: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid(format!("dimension n = {n} must be at least 2")));
    }
    let nu = gegenbauer_index(n);
    let alpha = (n as f64 - 3.0) / 2.0;
    let integrand = |t: f64, s: f64| {
        let w = if alpha == 0.0 { 1.0 } else { (s * (2.0 - s)).powf(alpha) };
        kernel(t) * gegenbauer_ratio(k, nu, t) * w
    };
    let panels = |scale: f64| 1.0 / (k as f64 / 4.0 + 2.0) / scale;
    let coarse = Level {
        order: 20,
        ratio: 0.15,
        depth: 36,
        max_panel: panels(1.0),
    };
    let fine = Level {
        order: 30,
        ratio: 0.1,
        depth: 48,
        max_panel: panels(2.0),
    };
    let rc = gauss_legendre(coarse.order)?;
    let rf = gauss_legendre(fine.order)?;
    let a = composite(&integrand, &coarse, &rc);
    let b = composite(&integrand, &fine, &rf);
    // absolute floor for multipliers that vanish or nearly so
    let scale = composite(&|t, s| integrand(t, s).abs(), &fine, &rf);
    if !(a.is_finite() && b.is_finite()) || (a - b).abs() > 1e-8 * b.abs() + 1e-14 * scale {
        return Err(Error::QuadratureFailure(format!(
            "refinement levels disagree: {a} vs {b} (n = {n}, k = {k})"
        )));
    }
    Ok(sphere_surface(n - 1) * b)
}

/// Direct quadrature of `C_q f(ξ) = ∫_{S^{n-1}} |(x, ξ)|^q f(x) dx` at every
/// node of `xi_grid`.
///
/// In a frame adapted to ξ, `x = u ξ + √(1-u²) η` with `η ⊥ ξ`. The even
/// integrand reduces to `∫_0^1 v^{(q-1)/2} (1-v)^{(n-3)/2} F(√v) dv`
/// (`v = u²`) where `F` is the average of `f` over the subsphere at height u;
/// both integrals are done by Gauss rules exact for band-limited `f`.
pub fn cq_direct(f: &GridFunction, q: f64, xi_grid: &Grid) -> Result<GridFunction> {
    if !(q > -1.0) || !q.is_finite() {
        return Err(Error::invalid(format!(
            "direct q-cosine quadrature needs q > -1 (got q = {q})"
        )));
    }
    if xi_grid.n() != f.n() || xi_grid.kind() != f.kind() {
        return Err(Error::KindMismatch(
            "evaluation grid does not match the input function".into(),
        ));
    }
    let s = analyze(f, f.grid().capacity())?;
    cq_direct_spectrum(&s, q, xi_grid)
}

/// [`cq_direct`] for a function given by its expansion.
pub fn cq_direct_spectrum(s: &Spectrum, q: f64, xi_grid: &Grid) -> Result<GridFunction> {
    let n = s.n();
    let big_k = s.band_limit();
    let a = (q - 1.0) / 2.0;
    let b = (n as f64 - 3.0) / 2.0;
    let order = big_k / 2 + 1;
    // v = (1+x)/2 maps the Jacobi weight (1-x)^b (1+x)^a onto v^a (1-v)^b
    let outer = jacobi_rule(order, b, a)?;
    let outer_scale = 0.5f64.powf(a + b + 1.0);
    let heights: Vec<(f64, f64)> = outer
        .nodes
        .iter()
        .zip(&outer.weights)
        .map(|(&x, &w)| (((1.0 + x) / 2.0).sqrt(), w * outer_scale))
        .collect();

    let values = match s.kind() {
        Kind::Zonal => {
            let inner = if n > 2 {
                Some(gauss_jacobi_cached(order, (n as f64 - 4.0) / 2.0)?)
            } else {
                None
            };
            let ring = if n > 2 { sphere_surface(n - 2) } else { 1.0 };
            xi_grid
                .points()
                .map(|p| {
                    let t0 = match p {
                        Point::Zonal(t) => t,
                        Point::Sphere(x) => x[2],
                    };
                    let c0 = (1.0 - t0 * t0).max(0.0).sqrt();
                    let terms: Vec<f64> = heights
                        .iter()
                        .map(|&(u, w)| {
                            let r = (1.0 - u * u).max(0.0).sqrt();
                            let at = |sv: f64| s.eval_zonal(u * t0 + r * c0 * sv);
                            let avg = match &inner {
                                Some(rule) => ring * rule.integrate(at),
                                None => at(1.0) + at(-1.0),
                            };
                            w * avg
                        })
                        .collect();
                    pairwise_sum(&terms)
                })
                .collect()
        }
        Kind::FullS2 => {
            let m = big_k + 2;
            xi_grid
                .points()
                .map(|p| {
                    let Point::Sphere(xi) = p else {
                        unreachable!("S² grids yield sphere points")
                    };
                    let (e1, e2) = orthonormal_complement(xi);
                    let terms: Vec<f64> = heights
                        .iter()
                        .map(|&(u, w)| {
                            let r = (1.0 - u * u).max(0.0).sqrt();
                            let ring: Vec<f64> = (0..m)
                                .map(|j| {
                                    let (sn, cs) = (2.0 * PI * j as f64 / m as f64).sin_cos();
                                    let x = [0, 1, 2].map(|i| u * xi[i] + r * (cs * e1[i] + sn * e2[i]));
                                    s.eval(Point::Sphere(x))
                                })
                                .collect();
                            w * 2.0 * PI / m as f64 * pairwise_sum(&ring)
                        })
                        .collect();
                    pairwise_sum(&terms)
                })
                .collect()
        }
    };
    GridFunction::new(xi_grid.clone(), values)
}

fn orthonormal_complement(xi: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let pick = if xi[0].abs() < 0.6 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let d = pick[0] * xi[0] + pick[1] * xi[1] + pick[2] * xi[2];
    let mut e1 = [0, 1, 2].map(|i| pick[i] - d * xi[i]);
    let norm = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    e1.iter_mut().for_each(|v| *v /= norm);
    let e2 = [
        xi[1] * e1[2] - xi[2] * e1[1],
        xi[2] * e1[0] - xi[0] * e1[2],
        xi[0] * e1[1] - xi[1] * e1[0],
    ];
    (e1, e2)
}
