//! Example star bodies and the dictionary between bodies and functions:
//! radial functions, central section areas, volumes and the
//! Busemann–Petty comparison instance.

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::fmt17;
use crate::operators::MultiplierOperator;
use crate::positivity::{pos_test, PositivityReport, Verdict, DEFAULT_REL_TOL};
use crate::spherefun::{
    analyze, integral, lp_norm, pointwise_power, synthesize, text, Grid, Kind, Point, Spectrum,
    StarFunction,
};

/// Band limit used when a constructor has to truncate an expansion.
pub const DEFAULT_BAND: usize = 64;

/// How a body was generated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Provenance {
    Ball,
    PerturbedBall { a: f64, k: usize, exponent: f64 },
    LrBall { r: f64 },
    Custom,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Ball => write!(f, "ball"),
            Provenance::PerturbedBall { a, k, exponent } => {
                write!(f, "perturbed-ball({a},{k},{exponent})")
            }
            Provenance::LrBall { r } => write!(f, "lr-ball({r})"),
            Provenance::Custom => write!(f, "custom"),
        }
    }
}

impl std::str::FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let args = |prefix: &str| -> Option<Vec<&str>> {
            s.strip_prefix(prefix)?
                .strip_prefix('(')?
                .strip_suffix(')')
                .map(|inner| inner.split(',').map(str::trim).collect())
        };
        let num = |v: &str| -> Result<f64> {
            v.parse().map_err(|_| Error::parse(format!("bad number '{v}' in provenance")))
        };
        match s {
            "ball" => return Ok(Provenance::Ball),
            "custom" => return Ok(Provenance::Custom),
            _ => {}
        }
        if let Some(a) = args("perturbed-ball") {
            if a.len() == 3 {
                return Ok(Provenance::PerturbedBall {
                    a: num(a[0])?,
                    k: a[1]
                        .parse()
                        .map_err(|_| Error::parse(format!("bad degree '{}'", a[1])))?,
                    exponent: num(a[2])?,
                });
            }
        }
        if let Some(a) = args("lr-ball") {
            if a.len() == 1 {
                return Ok(Provenance::LrBall { r: num(a[0])? });
            }
        }
        Err(Error::parse(format!("unknown provenance '{s}'")))
    }
}

/// An origin-symmetric star body given by its radial function.
#[derive(Debug, Clone)]
pub struct StarBody {
    pub radial: StarFunction,
    pub provenance: Provenance,
}

impl StarBody {
    pub fn new(radial: StarFunction, provenance: Provenance) -> Result<Self> {
        if !radial.strictly_positive() {
            return Err(Error::NotStrictlyPositive { min: radial.min() });
        }
        Ok(Self { radial, provenance })
    }

    /// Unit Euclidean ball.
    pub fn ball(n: usize, kind: Kind) -> Result<Self> {
        let one = Spectrum::constant(n, kind, 0, 1.0)?;
        Self::new(StarFunction::new(one), Provenance::Ball)
    }

    pub fn n(&self) -> usize {
        self.radial.n()
    }

    /// `|K| = (1/n) ∫ ρ^n dx`, by quadrature of `ρ^n`.
    pub fn volume(&self) -> Result<f64> {
        let n = self.n();
        let res = (n * self.radial.band_limit()).max(2) + 2;
        let values = synthesize(self.radial.spectrum(), res)?;
        Ok(integral(&values.map(|v| v.powi(n as i32))) / n as f64)
    }

    /// `ρ^{n-1}`, the function entering the section comparison.
    pub fn section_function(&self) -> Result<StarFunction> {
        let e = self.n() - 1;
        Ok(pointwise_power(&self.radial, e as f64, e * self.radial.band_limit())?.function)
    }

    /// Central section areas `|K ∩ ξ^⊥| = (1/(n-1)) R(ρ^{n-1})(ξ)`.
    pub fn section_areas(&self) -> Result<Spectrum> {
        section_areas(&self.section_function()?)
    }

    /// Whether `ρ · r^{-1}` is positive definite, i.e. `K` is an intersection body.
    pub fn intersection_body_test(&self) -> Result<PositivityReport> {
        pos_test(self.radial.spectrum(), -1.0, DEFAULT_REL_TOL, crate::positivity::DEFAULT_REFINEMENT)
    }

    pub fn to_text(&self) -> String {
        format!("provenance: {}\n{}", self.provenance, text::to_text(self.radial.spectrum()))
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut provenance = Provenance::Custom;
        let mut rest = String::new();
        for line in s.lines() {
            match line.trim().strip_prefix("provenance:") {
                Some(p) => provenance = p.parse()?,
                None => {
                    rest.push_str(line);
                    rest.push('\n');
                }
            }
        }
        Self::new(StarFunction::new(text::from_text(&rest)?), provenance)
    }
}

/// `(1/(n-1)) R f`; with `f = ρ_K^{n-1}` these are the central section areas.
pub fn section_areas(f: &StarFunction) -> Result<Spectrum> {
    let n = f.n();
    let r = MultiplierOperator::radon(n, f.band_limit())?.apply(f.spectrum())?;
    Ok(r.scaled(1.0 / (n - 1) as f64))
}

/// `(1/n) ‖f‖_p^p`; with `f = ρ_K^{n-1}` and `p = n/(n-1)` this is `|K|`.
pub fn volume_from_function(f: &StarFunction, p: f64) -> Result<f64> {
    Ok(lp_norm(f, p)?.powf(p) / f.n() as f64)
}

/// Radial function `(1 + a C̃_k)^exponent`, zonal in dimension `n`.
pub fn perturbed_ball(n: usize, a: f64, k: usize, exponent: f64) -> Result<StarBody> {
    perturbed_ball_with_band(n, a, k, exponent, DEFAULT_BAND)
}

/// As [`perturbed_ball`]; non-integer exponents are expanded up to `band`.
pub fn perturbed_ball_with_band(
    n: usize,
    a: f64,
    k: usize,
    exponent: f64,
    band: usize,
) -> Result<StarBody> {
    if !(a.abs() < 1.0) {
        return Err(Error::invalid(format!("perturbation amplitude |a| must be < 1, got {a}")));
    }
    if k < 2 || k % 2 == 1 {
        return Err(Error::invalid(format!("perturbation degree must be even and >= 2, got {k}")));
    }
    let mut coeffs = vec![0.0; k / 2 + 1];
    coeffs[0] = 1.0;
    coeffs[k / 2] = a;
    let base = StarFunction::new(Spectrum::zonal(n, coeffs)?);
    let provenance = Provenance::PerturbedBall { a, k, exponent };
    let radial = if exponent == 1.0 {
        base
    } else if exponent == 0.0 || a == 0.0 {
        StarFunction::new(Spectrum::zonal(n, vec![1.0])?)
    } else {
        let exact = exponent > 0.0 && exponent == exponent.floor() && exponent <= 16.0;
        let out = if exact { exponent as usize * k } else { band };
        pointwise_power(&base, exponent, out)?.function
    };
    StarBody::new(radial, provenance)
}

/// Radial function of the unit ℓ_r ball in R³, expanded to `band` on S².
pub fn lr_ball_radial(r: f64, band: usize) -> Result<StarFunction> {
    if !(r >= 0.5) || !r.is_finite() {
        return Err(Error::invalid(format!("ℓ_r exponent must be >= 0.5, got {r}")));
    }
    let grid = Grid::full_s2(2 * band + 2)?;
    let values = grid.sample(|p| match p {
        Point::Sphere(x) => {
            // scale by the largest component so large r cannot overflow
            let m = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let s: f64 = x.iter().map(|v| (v.abs() / m).powf(r)).sum();
            1.0 / (m * s.powf(1.0 / r))
        }
        Point::Zonal(_) => unreachable!(),
    });
    Ok(StarFunction::new(analyze(&values, band)?))
}

pub fn lr_ball(r: f64, band: usize) -> Result<StarBody> {
    StarBody::new(lr_ball_radial(r, band)?, Provenance::LrBall { r })
}

/// The comparison instance attached to a pair of bodies.
#[derive(Debug, Clone)]
pub struct BpInstance {
    /// `ρ_K^{n-1}`.
    pub f: StarFunction,
    /// `ρ_L^{n-1}`.
    pub g: StarFunction,
    /// `n/(n-1)`.
    pub p: f64,
    /// Always `-1`.
    pub q: f64,
}

/// Sets `f = ρ_K^{n-1}`, `g = ρ_L^{n-1}`, `p = n/(n-1)`, `q = -1`; then
/// `f^{p-1} = ρ_K`.
pub fn bp_instance(k: &StarBody, l: &StarBody) -> Result<BpInstance> {
    if k.n() != l.n() {
        return Err(Error::DimensionMismatch {
            expected: k.n(),
            found: l.n(),
        });
    }
    let n = k.n() as f64;
    Ok(BpInstance {
        f: k.section_function()?,
        g: l.section_function()?,
        p: n / (n - 1.0),
        q: -1.0,
    })
}

/// Smallest amplitude on an even grid of `a` for which `1 + a C̃_k` gives a
/// certified non-member, i.e. `ρ · r^{-1}` is not positive definite.
pub fn search_nonmember(n: usize, k: usize, steps: usize) -> Result<Option<(f64, StarBody)>> {
    for i in 1..steps {
        let a = i as f64 / steps as f64;
        let body = perturbed_ball(n, a, k, 1.0)?;
        if body.intersection_body_test()?.verdict == Verdict::NonMember {
            return Ok(Some((a, body)));
        }
    }
    Ok(None)
}

/// One-line summary used by reports.
pub fn describe(body: &StarBody) -> Result<String> {
    Ok(format!(
        "{} n={} K={} volume={}",
        body.provenance,
        body.n(),
        body.radial.band_limit(),
        fmt17(body.volume()?)
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spherefun::min_max;
    use std::f64::consts::PI;

    #[test]
    fn perturbed_extrema() {
        let b = perturbed_ball(3, 0.6, 2, 1.0).unwrap();
        assert!((b.radial.min() - 0.7).abs() < 1e-12);
        assert!((b.radial.max() - 1.6).abs() < 1e-12);
        assert!(perturbed_ball(3, 1.0, 2, 1.0).is_err());
        let unit = perturbed_ball(4, 0.0, 4, 2.5).unwrap();
        assert_eq!(unit.radial.band_limit(), 0);
    }

    #[test]
    fn unit_ball_dictionary() {
        let ball = StarBody::ball(3, Kind::Zonal).unwrap();
        let areas = ball.section_areas().unwrap();
        assert!((areas.zonal_coeff(0) - PI).abs() < 1e-12);
        assert!((ball.volume().unwrap() - 4.0 * PI / 3.0).abs() < 1e-12);
        let bp = bp_instance(&ball, &ball).unwrap();
        assert_eq!(bp.p, 1.5);
        assert!((volume_from_function(&bp.f, bp.p).unwrap() - 4.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn lr_balls() {
        let two = lr_ball_radial(2.0, 8).unwrap();
        let ex = two.extrema();
        assert!((ex.min - 1.0).abs() < 1e-12 && (ex.max - 1.0).abs() < 1e-12);
        let cube = lr_ball_radial(50.0, 48).unwrap().into_spectrum();
        let d = 1.0 / 3f64.sqrt();
        let diag = 3f64.powf(-1.0 / 50.0) * 3f64.sqrt();
        assert!((cube.eval(Point::Sphere([d, d, d])) - diag).abs() < 0.05);
        let oct = lr_ball_radial(1.0, 32).unwrap().into_spectrum();
        assert!((oct.eval(Point::Sphere([0.0, 0.0, 1.0])) - 1.0).abs() < 0.05);
        assert!(lr_ball_radial(0.25, 8).is_err());
    }

    #[test]
    fn body_text_round_trip() {
        let b = perturbed_ball(5, -0.3, 4, 2.0).unwrap();
        let back = StarBody::from_text(&b.to_text()).unwrap();
        assert_eq!(back.provenance, b.provenance);
        assert_eq!(back.radial.spectrum(), b.radial.spectrum());
    }

    #[test]
    fn closed_form_boundary_in_dimension_five() {
        // profile(1 + aC̃₂) ∝ 1 - 4aC̃₂ when n = 5, so membership ends at a = 1/4
        let (a, body) = search_nonmember(5, 2, 20).unwrap().unwrap();
        assert_eq!(a, 0.3);
        let profile = crate::positivity::positivity_profile(body.radial.spectrum(), -1.0).unwrap();
        let m = min_max(&profile, 8).min;
        let expected = 16.0 * PI.powf(1.5) * (1.0 - 4.0 * a);
        assert!((m - expected).abs() < 1e-9 * expected.abs());
    }
}
