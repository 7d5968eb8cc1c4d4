use std::f64::consts::{FRAC_PI_2, PI};

use super::grid::{analyze, integral, synthesize, Grid};
use super::spectrum::{Kind, Point, Spectrum};
use crate::error::{Error, Result};
use crate::numeric::golden_min;

/// Refinement used for the cached extrema of a [`StarFunction`].
pub const DEFAULT_REFINEMENT: usize = 8;

/// Minimum and maximum of a spectrum with their locations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrema {
    pub min: f64,
    pub max: f64,
    pub argmin: Point,
    pub argmax: Point,
}

/// Minimum and maximum over a scan grid followed by golden-section
/// refinement around the discrete extremizers.
///
/// Zonal functions are scanned on `θ ∈ [0, π/2]` (evenness covers the rest)
/// with `refinement·(K/2 + 2)` intervals; S² functions on the upper
/// hemisphere with the same number of latitude intervals and longitudes at
/// matching angular spacing.
pub fn min_max(f: &Spectrum, refinement: usize) -> Extrema {
    let refinement = refinement.max(1);
    match f.kind() {
        Kind::Zonal => min_max_zonal(f, refinement),
        Kind::FullS2 => min_max_s2(f, refinement),
    }
}

fn min_max_zonal(f: &Spectrum, refinement: usize) -> Extrema {
    let intervals = refinement * (f.band_limit() / 2 + 2);
    let h = FRAC_PI_2 / intervals as f64;
    let eval = |theta: f64| f.eval_zonal(theta.cos());
    let values: Vec<f64> = (0..=intervals).map(|i| eval(i as f64 * h)).collect();

    let refine = |sign: f64| -> (f64, f64) {
        let (i_best, _) = values
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |(bi, bv), (i, &v)| {
                if sign * v < bv {
                    (i, sign * v)
                } else {
                    (bi, bv)
                }
            });
        let lo = (i_best as f64 - 1.0).max(0.0) * h;
        let hi = ((i_best + 1) as f64 * h).min(FRAC_PI_2);
        let (x, fx) = golden_min(|th| sign * eval(th), lo, hi, 80);
        let discrete = sign * values[i_best];
        if discrete <= fx {
            (i_best as f64 * h, values[i_best])
        } else {
            (x, sign * fx)
        }
    };
    let (th_min, min) = refine(1.0);
    let (th_max, max) = refine(-1.0);
    Extrema {
        min,
        max,
        argmin: Point::Zonal(th_min.cos()),
        argmax: Point::Zonal(th_max.cos()),
    }
}

fn min_max_s2(f: &Spectrum, refinement: usize) -> Extrema {
    let n_theta = refinement * (f.band_limit() / 2 + 2);
    let n_phi = 4 * n_theta;
    let h_theta = FRAC_PI_2 / n_theta as f64;
    let h_phi = 2.0 * PI / n_phi as f64;
    let eval = |theta: f64, phi: f64| f.eval(Point::from_angles(theta, phi));

    let mut best_min = (f64::INFINITY, 0.0, 0.0);
    let mut best_max = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..=n_theta {
        let theta = i as f64 * h_theta;
        // the pole is a single point
        let cols = if i == 0 { 1 } else { n_phi };
        for j in 0..cols {
            let phi = j as f64 * h_phi;
            let v = eval(theta, phi);
            if v < best_min.0 {
                best_min = (v, theta, phi);
            }
            if v > best_max.0 {
                best_max = (v, theta, phi);
            }
        }
    }

    let refine = |sign: f64, start: (f64, f64, f64)| -> (f64, f64, f64) {
        let (mut v, mut theta, mut phi) = (sign * start.0, start.1, start.2);
        let (mut w_theta, mut w_phi) = (h_theta, h_phi);
        for _ in 0..4 {
            let (t, ft) = golden_min(
                |th| sign * eval(th, phi),
                (theta - w_theta).max(0.0),
                (theta + w_theta).min(PI),
                60,
            );
            if ft < v {
                v = ft;
                theta = t;
            }
            let (p, fp) = golden_min(|ph| sign * eval(theta, ph), phi - w_phi, phi + w_phi, 60);
            if fp < v {
                v = fp;
                phi = p;
            }
            w_theta *= 0.5;
            w_phi *= 0.5;
        }
        (sign * v, theta, phi)
    };
    let (min, tmin, pmin) = refine(1.0, best_min);
    let (max, tmax, pmax) = refine(-1.0, best_max);
    Extrema {
        min,
        max,
        argmin: Point::from_angles(tmin, pmin),
        argmax: Point::from_angles(tmax, pmax),
    }
}

/// A spectrum with certified extrema, used for radial functions and
/// positive densities.
#[derive(Debug, Clone)]
pub struct StarFunction {
    spectrum: Spectrum,
    extrema: Extrema,
}

impl StarFunction {
    pub fn new(spectrum: Spectrum) -> Self {
        Self::with_refinement(spectrum, DEFAULT_REFINEMENT)
    }

    pub fn with_refinement(spectrum: Spectrum, refinement: usize) -> Self {
        let extrema = min_max(&spectrum, refinement);
        Self { spectrum, extrema }
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn into_spectrum(self) -> Spectrum {
        self.spectrum
    }

    pub fn extrema(&self) -> Extrema {
        self.extrema
    }

    pub fn min(&self) -> f64 {
        self.extrema.min
    }

    pub fn max(&self) -> f64 {
        self.extrema.max
    }

    pub fn strictly_positive(&self) -> bool {
        self.extrema.min > 0.0
    }

    pub fn n(&self) -> usize {
        self.spectrum.n()
    }

    pub fn kind(&self) -> Kind {
        self.spectrum.kind()
    }

    pub fn band_limit(&self) -> usize {
        self.spectrum.band_limit()
    }

    pub fn scaled(&self, c: f64) -> Self {
        let mut extrema = self.extrema;
        if c >= 0.0 {
            extrema.min *= c;
            extrema.max *= c;
        } else {
            extrema = Extrema {
                min: c * self.extrema.max,
                max: c * self.extrema.min,
                argmin: self.extrema.argmax,
                argmax: self.extrema.argmin,
            };
        }
        Self {
            spectrum: self.spectrum.scaled(c),
            extrema,
        }
    }
}

/// `f^e` re-expanded to a band limit, with its aliasing diagnostic.
#[derive(Debug, Clone)]
pub struct PowerExpansion {
    pub function: StarFunction,
    /// `∫ (f^e)²` carried by degrees above `K_out`, relative to the total,
    /// measured on a grid twice as fine.
    pub aliasing_residual: f64,
}

fn is_positive_integer(e: f64) -> bool {
    e > 0.0 && e == e.floor() && e < 64.0
}

/// `f^e` sampled on a `4K`-resolution grid and projected to degrees `≤ k_out`.
pub fn pointwise_power(f: &StarFunction, e: f64, k_out: usize) -> Result<PowerExpansion> {
    if !e.is_finite() {
        return Err(Error::invalid(format!("exponent {e} is not finite")));
    }
    if k_out % 2 != 0 {
        return Err(Error::invalid(format!("band limit must be even, got {k_out}")));
    }
    if !is_positive_integer(e) && !f.strictly_positive() {
        return Err(Error::NotStrictlyPositive { min: f.min() });
    }
    if e == 1.0 {
        let s = f.spectrum().with_band_limit(k_out)?;
        let residual = relative_tail(f.spectrum(), k_out);
        let function = if k_out >= f.band_limit() {
            StarFunction {
                spectrum: s,
                extrema: f.extrema(),
            }
        } else {
            StarFunction::new(s)
        };
        return Ok(PowerExpansion {
            function,
            aliasing_residual: residual,
        });
    }
    let k = f.band_limit().max(k_out).max(2);
    let resolution = 4 * k;
    let pow = |v: f64| if is_positive_integer(e) { v.powi(e as i32) } else { v.powf(e) };

    let values = synthesize(f.spectrum(), resolution)?.map(pow);
    let s = analyze(&values, k_out)?;

    let fine = synthesize(f.spectrum(), 2 * resolution)?.map(pow);
    let wide = analyze(&fine, 4 * k)?;
    let total = integral(&fine.map(|v| v * v));
    let aliasing_residual = if total > 0.0 {
        wide.energy_above(k_out) / total
    } else {
        0.0
    };
    Ok(PowerExpansion {
        function: StarFunction::new(s),
        aliasing_residual,
    })
}

fn relative_tail(s: &Spectrum, k: usize) -> f64 {
    let total = s.energy();
    if total > 0.0 {
        s.energy_above(k) / total
    } else {
        0.0
    }
}

/// Grid resolution at which `∫ |f|^p` is evaluated.
fn lp_resolution(band_limit: usize, p: f64) -> usize {
    let k = band_limit.max(2);
    if p == p.floor() && p <= 16.0 {
        // |f|^p is a polynomial of degree pK when p is even; odd p only
        // kinks at zeros, which positive inputs do not have
        ((p as usize) * k) / 2 + k + 2
    } else {
        8 * k + 16
    }
}

/// `(∫ |f|^p dx)^{1/p}`.
pub fn lp_norm(f: &StarFunction, p: f64) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::invalid(format!("L_p norm requires p > 1, got {p}")));
    }
    let res = lp_resolution(f.band_limit(), p);
    let res = match f.kind() {
        Kind::Zonal => res,
        Kind::FullS2 => res.min(4 * f.band_limit().max(2) + 8),
    };
    let grid = Grid::for_kind(f.n(), f.kind(), res)?;
    let values = super::grid::synthesize_on(f.spectrum(), &grid)?;
    Ok(integral(&values.map(|v| v.abs().powf(p))).powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2_family(a: f64) -> StarFunction {
        StarFunction::new(Spectrum::zonal(3, vec![1.0, a]).unwrap())
    }

    #[test]
    fn extrema_of_perturbed_legendre() {
        let e = p2_family(0.6).extrema();
        assert!((e.min - 0.7).abs() < 1e-12);
        assert!((e.max - 1.6).abs() < 1e-12);
        let Point::Zonal(t) = e.argmin else { panic!() };
        assert!(t.abs() < 1e-6);
        let Point::Zonal(t) = e.argmax else { panic!() };
        assert!((t.abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn extrema_of_p2_and_constant() {
        let e = min_max(&Spectrum::zonal(3, vec![0.0, 1.0]).unwrap(), 4);
        assert!((e.min + 0.5).abs() < 1e-12);
        let e = min_max(&Spectrum::constant(5, Kind::Zonal, 4, 1.0).unwrap(), 4);
        assert_eq!((e.min, e.max), (1.0, 1.0));
    }

    #[test]
    fn s2_extrema_match_zonal() {
        let z = Spectrum::zonal(3, vec![1.0, 0.6, 0.1]).unwrap();
        let ez = min_max(&z, 4);
        let es = min_max(&z.zonal_to_s2().unwrap(), 4);
        assert!((ez.min - es.min).abs() < 1e-10);
        assert!((ez.max - es.max).abs() < 1e-10);
    }

    #[test]
    fn square_of_perturbed_legendre() {
        let sq = pointwise_power(&p2_family(0.6), 2.0, 8).unwrap();
        let s = sq.function.spectrum();
        assert!((s.zonal_coeff(0) - 1.072).abs() < 1e-13);
        assert!((s.zonal_coeff(2) - 1.302_857_142_857_142_8).abs() < 1e-13);
        assert!((s.zonal_coeff(4) - 0.185_142_857_142_857_14).abs() < 1e-13);
        assert!(sq.aliasing_residual < 1e-25);
    }

    #[test]
    fn identity_and_constant_powers() {
        let f = p2_family(0.3);
        let same = pointwise_power(&f, 1.0, 2).unwrap();
        assert_eq!(same.function.spectrum(), f.spectrum());
        let one = StarFunction::new(Spectrum::constant(4, Kind::Zonal, 6, 1.0).unwrap());
        let r = pointwise_power(&one, 0.37, 6).unwrap();
        assert!((r.function.spectrum().zonal_coeff(0) - 1.0).abs() < 1e-14);
        assert!(r.function.spectrum().coeffs()[1..].iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn fractional_power_needs_strict_positivity() {
        let f = StarFunction::new(Spectrum::zonal(3, vec![0.0, 1.0]).unwrap());
        assert!(matches!(
            pointwise_power(&f, 0.5, 4),
            Err(Error::NotStrictlyPositive { .. })
        ));
        assert!(pointwise_power(&f, 2.0, 4).is_ok());
    }

    #[test]
    fn lp_norms() {
        let one = StarFunction::new(Spectrum::constant(3, Kind::Zonal, 0, 1.0).unwrap());
        assert!((lp_norm(&one, 2.0).unwrap() - (4.0 * PI).sqrt()).abs() < 1e-14);
        for p in [1.5, 3.0, 7.25] {
            let v = lp_norm(&one, p).unwrap();
            assert!((v - (4.0 * PI).powf(1.0 / p)).abs() < 1e-13);
        }
        let v = lp_norm(&p2_family(0.6), 2.0).unwrap();
        assert!((v - (4.0 * PI * 1.072).sqrt()).abs() < 1e-13);
        assert!(lp_norm(&one, 1.0).is_err());
    }
}
