use std::fmt::{self, Write as _};

use super::multiplier::{
    c_nq, check_admissible, cosine_factor, d_nq, parseval_constant, radon_multiplier,
    tq_multiplier_extended_log, tq_multiplier_log,
};
use crate::error::{Error, Result};
use crate::numeric::fmt17;
use crate::specialfn::{gamma_signed, SignedLogValue};
use crate::spherefun::Spectrum;

/// Default maximum degree of a built operator.
pub const DEFAULT_CAPACITY: usize = 256;

/// Relative tolerance of the build-time multiplier checks.
pub const VALIDATION_TOL: f64 = 1e-9;

/// The underlying transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    /// Fourier transform of the degree `-n-q` extension, restricted to the sphere.
    Tq(f64),
    /// Spherical Radon transform.
    Radon,
}

/// Scaling applied to the transform's multipliers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `T_q` itself.
    Raw,
    /// `Ť_q = T_q / Γ(-q/2)`.
    GammaNormalized,
    /// `h ↦` sphere restriction of `(h·r^q)^∧ / Γ(-q/2)`, i.e. `T_{-n-q} / Γ(-q/2)`.
    Profile,
    /// The q-cosine transform `C_q`, for `q > -1`.
    Cosine,
}

impl Normalization {
    pub fn tag(self) -> &'static str {
        match self {
            Normalization::Raw => "raw",
            Normalization::GammaNormalized => "gamma-normalized",
            Normalization::Profile => "profile",
            Normalization::Cosine => "cosine",
        }
    }

    pub fn from_tag(s: &str) -> Result<Self> {
        Ok(match s {
            "raw" => Normalization::Raw,
            "gamma-normalized" => Normalization::GammaNormalized,
            "profile" => Normalization::Profile,
            "cosine" => Normalization::Cosine,
            other => return Err(Error::parse(format!("unknown normalization '{other}'"))),
        })
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A transform acting diagonally on spherical harmonics of even degree.
#[derive(Debug, Clone)]
pub struct MultiplierOperator {
    n: usize,
    transform: Transform,
    normalization: Normalization,
    inverted: bool,
    log_multipliers: Vec<SignedLogValue>,
    multipliers: Vec<f64>,
}

impl MultiplierOperator {
    /// Builds and validates the multipliers for even degrees `≤ capacity`.
    pub fn new(
        n: usize,
        transform: Transform,
        normalization: Normalization,
        capacity: usize,
    ) -> Result<Self> {
        if !(2..=64).contains(&n) {
            return Err(Error::invalid(format!("dimension n = {n} outside 2..=64")));
        }
        let capacity = capacity - capacity % 2;
        let log_multipliers = match transform {
            Transform::Tq(q) => {
                check_admissible(n, q)?;
                if normalization == Normalization::Cosine {
                    cosine_factor(q)?;
                }
                validate_tq(n, q, capacity)?;
                (0..=capacity)
                    .step_by(2)
                    .map(|k| tq_normalized_log(n, q, k, normalization))
                    .collect::<Result<Vec<_>>>()?
            }
            Transform::Radon => {
                if normalization != Normalization::Raw {
                    return Err(Error::invalid(
                        "the Radon transform only has the raw normalization",
                    ));
                }
                let v = (0..=capacity)
                    .step_by(2)
                    .map(|k| radon_multiplier(n, k).map(SignedLogValue::from_f64))
                    .collect::<Result<Vec<_>>>()?;
                validate_radon(n, &v)?;
                v
            }
        };
        let multipliers = log_multipliers.iter().map(|v| v.value()).collect();
        Ok(Self {
            n,
            transform,
            normalization,
            inverted: false,
            log_multipliers,
            multipliers,
        })
    }

    pub fn tq(n: usize, q: f64, capacity: usize) -> Result<Self> {
        Self::new(n, Transform::Tq(q), Normalization::Raw, capacity)
    }

    /// `Ť_q = T_q / Γ(-q/2)`.
    pub fn tq_normalized(n: usize, q: f64, capacity: usize) -> Result<Self> {
        Self::new(n, Transform::Tq(q), Normalization::GammaNormalized, capacity)
    }

    pub fn profile(n: usize, q: f64, capacity: usize) -> Result<Self> {
        Self::new(n, Transform::Tq(q), Normalization::Profile, capacity)
    }

    pub fn cosine(n: usize, q: f64, capacity: usize) -> Result<Self> {
        Self::new(n, Transform::Tq(q), Normalization::Cosine, capacity)
    }

    pub fn radon(n: usize, capacity: usize) -> Result<Self> {
        Self::new(n, Transform::Radon, Normalization::Raw, capacity)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn transform(&self) -> Transform {
        self.transform
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn is_inverted(&self) -> bool {
        self.inverted
    }

    /// The parameter q (`-1` for the Radon transform).
    pub fn q(&self) -> f64 {
        match self.transform {
            Transform::Tq(q) => q,
            Transform::Radon => -1.0,
        }
    }

    pub fn capacity(&self) -> usize {
        2 * (self.multipliers.len() - 1)
    }

    pub fn multiplier(&self, k: usize) -> f64 {
        self.multipliers[k / 2]
    }

    pub fn multiplier_log(&self, k: usize) -> SignedLogValue {
        self.log_multipliers[k / 2]
    }

    /// Multipliers for `0, 2, …, capacity`.
    pub fn multipliers(&self) -> &[f64] {
        &self.multipliers
    }

    /// Coefficient-wise product.
    pub fn apply(&self, s: &Spectrum) -> Result<Spectrum> {
        if s.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: s.n(),
            });
        }
        if s.band_limit() > self.capacity() {
            return Err(Error::CapacityExceeded {
                requested: s.band_limit(),
                capacity: self.capacity(),
            });
        }
        let mut out = s.clone();
        for k in s.degrees() {
            let lambda = self.multiplier(k);
            out.block_mut(k).iter_mut().for_each(|v| *v *= lambda);
        }
        Ok(out)
    }

    /// Reciprocal multipliers.
    pub fn inverse(&self) -> Result<Self> {
        let log_multipliers = self
            .log_multipliers
            .iter()
            .enumerate()
            .map(|(i, v)| v.recip().ok_or(Error::SingularOperator(2 * i)))
            .collect::<Result<Vec<_>>>()?;
        let multipliers = log_multipliers.iter().map(|v| v.value()).collect();
        Ok(Self {
            n: self.n,
            transform: self.transform,
            normalization: self.normalization,
            inverted: !self.inverted,
            log_multipliers,
            multipliers,
        })
    }

    /// Text table: a header line, then `k lambda` per even degree.
    pub fn table_text(&self) -> String {
        let transform = match self.transform {
            Transform::Tq(q) => format!("tq q={}", fmt17(q)),
            Transform::Radon => "radon".to_string(),
        };
        let mut out = format!(
            "# n={} transform={} normalization={} inverted={}\n",
            self.n, transform, self.normalization, self.inverted
        );
        for (i, v) in self.multipliers.iter().enumerate() {
            let _ = writeln!(out, "{} {}", 2 * i, fmt17(*v));
        }
        out
    }
}

fn tq_normalized_log(n: usize, q: f64, k: usize, norm: Normalization) -> Result<SignedLogValue> {
    let gamma = || gamma_signed(-q / 2.0);
    Ok(match norm {
        Normalization::Raw => tq_multiplier_log(n, q, k)?,
        Normalization::GammaNormalized => tq_multiplier_log(n, q, k)?
            .checked_div(gamma()?)
            .expect("Gamma is nonzero"),
        Normalization::Profile => tq_multiplier_extended_log(n, -(n as f64) - q, k)?
            .checked_div(gamma()?)
            .expect("Gamma is nonzero"),
        Normalization::Cosine => tq_multiplier_log(n, q, k)?
            .checked_div(SignedLogValue::from_f64(cosine_factor(q)?))
            .expect("nonzero factor"),
    })
}

fn validate_tq(n: usize, q: f64, capacity: usize) -> Result<()> {
    let lambda0 = tq_multiplier_log(n, q, 0)?.value();
    let expected = d_nq(n, q)? * parseval_constant(n);
    if !close(lambda0, expected) {
        return Err(Error::Validation(format!(
            "degree-0 multiplier {lambda0} differs from d_(n,q)(2π)^n = {expected}"
        )));
    }
    let c = c_nq(n, q)?;
    let normalized0 = lambda0 / gamma_signed(-q / 2.0)?.value();
    if !close(normalized0, c) {
        return Err(Error::Validation(format!(
            "normalized degree-0 multiplier {normalized0} differs from c_(n,q) = {c}"
        )));
    }
    let target = parseval_constant(n).ln();
    let partner = -(n as f64) - q;
    for k in (0..=capacity).step_by(2) {
        let prod = tq_multiplier_log(n, q, k)? * tq_multiplier_extended_log(n, partner, k)?;
        if prod.sign != 1 || (prod.log_abs - target).abs() > VALIDATION_TOL {
            return Err(Error::Validation(format!(
                "Parseval product at k = {k} is {} instead of (2π)^{n}",
                prod.value()
            )));
        }
    }
    Ok(())
}

fn validate_radon(n: usize, v: &[SignedLogValue]) -> Result<()> {
    for (i, r) in v.iter().enumerate() {
        let k = 2 * i;
        let bridge = tq_multiplier_log(n, -1.0, k)?.value() / std::f64::consts::PI;
        if !close(r.value(), bridge) {
            return Err(Error::Validation(format!(
                "Radon multiplier {} at k = {k} differs from λ_k(n,-1)/π = {bridge}",
                r.value()
            )));
        }
    }
    Ok(())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= VALIDATION_TOL * b.abs().max(a.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spherefun::Kind;
    use std::f64::consts::PI;

    #[test]
    fn normalized_operator_on_constants() {
        let op = MultiplierOperator::tq_normalized(3, 1.0, 16).unwrap();
        let one = Spectrum::constant(3, Kind::Zonal, 4, 1.0).unwrap();
        let out = op.apply(&one).unwrap();
        assert!((out.zonal_coeff(0) - PI.powf(1.5) / 2.0).abs() < 1e-14);
        assert_eq!(out.zonal_coeff(2), 0.0);
    }

    #[test]
    fn raw_operator_sign() {
        let op = MultiplierOperator::tq(3, 1.0, 16).unwrap();
        assert!((op.multiplier(0) + PI * PI).abs() < 1e-13);
    }

    #[test]
    fn radon_on_constants() {
        let op = MultiplierOperator::radon(3, 32).unwrap();
        assert!((op.multiplier(0) - 2.0 * PI).abs() < 1e-14);
        let s2 = Spectrum::constant(3, Kind::FullS2, 2, 1.0).unwrap();
        let out = op.apply(&s2).unwrap();
        assert!((out.get(0, 0) - 2.0 * PI * s2.get(0, 0)).abs() < 1e-13);
    }

    #[test]
    fn profile_multipliers() {
        let op = MultiplierOperator::profile(3, -1.0, 4).unwrap();
        let rp = PI.sqrt();
        assert!((op.multiplier(0) - 4.0 * rp).abs() < 1e-13);
        assert!((op.multiplier(2) + 8.0 * rp).abs() < 1e-13);
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let op = MultiplierOperator::tq_normalized(5, -0.5, 60).unwrap();
        let inv = op.inverse().unwrap();
        assert!(inv.is_inverted());
        for k in (0..=60).step_by(2) {
            let p = op.multiplier_log(k) * inv.multiplier_log(k);
            assert_eq!(p, SignedLogValue::ONE);
        }
    }

    #[test]
    fn errors() {
        let op = MultiplierOperator::tq(3, -1.0, 4).unwrap();
        let s5 = Spectrum::constant(5, Kind::Zonal, 2, 1.0).unwrap();
        assert!(matches!(op.apply(&s5), Err(Error::DimensionMismatch { .. })));
        let big = Spectrum::constant(3, Kind::Zonal, 6, 1.0).unwrap();
        assert!(matches!(op.apply(&big), Err(Error::CapacityExceeded { .. })));
        assert!(MultiplierOperator::cosine(3, -1.5, 4).is_err());
        assert!(MultiplierOperator::tq(3, 4.0, 4).is_err());
    }

    #[test]
    fn table_dump() {
        let t = MultiplierOperator::radon(3, 2).unwrap().table_text();
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0], "# n=3 transform=radon normalization=raw inverted=false");
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("2 -3.14159265358979"));
    }
}
