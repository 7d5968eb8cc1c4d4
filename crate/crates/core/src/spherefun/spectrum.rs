use std::f64::consts::PI;
use std::fmt;

use super::legendre::LegendreTable;
use crate::error::{Error, Result};
use crate::specialfn::{gegenbauer_index, gegenbauer_ratios, harmonic_dimension, sphere_surface};

/// Which basis a [`Spectrum`] is expanded in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Functions of `t = (x, e_n)` only, in the basis `C̃_k(t)` normalized at t = 1.
    Zonal,
    /// General functions on S² in an orthonormal real spherical-harmonic basis.
    FullS2,
}

impl Kind {
    pub fn tag(self) -> &'static str {
        match self {
            Kind::Zonal => "zonal",
            Kind::FullS2 => "s2",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "zonal" => Ok(Kind::Zonal),
            "s2" => Ok(Kind::FullS2),
            other => Err(Error::parse(format!("unknown spectrum kind '{other}'"))),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Conversion constants between the two basis conventions.
///
/// | basis  | element                         | `∫_{S^{n-1}} (element)² dx` |
/// |--------|---------------------------------|-----------------------------|
/// | zonal  | `C̃_k(t) = C_k^ν(t) / C_k^ν(1)`   | `|S^{n-1}| / N(n, k)`       |
/// | S²     | `Y_{k,m}` (orthonormal)          | `1`                         |
///
/// `N(n, k)` is the dimension of degree-k harmonics. For n = 3 the zonal
/// element is the Legendre polynomial and `P_k(t) = sqrt(4π/(2k+1)) Y_{k,0}`,
/// i.e. a zonal coefficient `a_k` becomes `a_{k,0} = a_k · zonal_norm(3, k)`.
pub mod basis {
    use super::*;

    /// `∫_{S^{n-1}} C̃_k(t)² dx`.
    pub fn zonal_norm_sq(n: usize, k: usize) -> f64 {
        sphere_surface(n) / harmonic_dimension(n, k)
    }

    /// L² norm of `C̃_k` on `S^{n-1}`; the zonal→orthonormal coefficient factor.
    pub fn zonal_norm(n: usize, k: usize) -> f64 {
        zonal_norm_sq(n, k).sqrt()
    }

    /// Value of the constant function 𝟙 as a coefficient on degree 0.
    pub fn unit_coefficient(n: usize, kind: Kind) -> f64 {
        match kind {
            Kind::Zonal => 1.0,
            Kind::FullS2 => zonal_norm(n, 0),
        }
    }
}

/// A point on the sphere at which a function is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    /// Cosine of the angle to the symmetry axis (zonal functions).
    Zonal(f64),
    /// Unit vector in R³.
    Sphere([f64; 3]),
}

impl Point {
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let s = theta.sin();
        Point::Sphere([s * phi.cos(), s * phi.sin(), theta.cos()])
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Zonal(t) => write!(f, "t={t:.12}"),
            Point::Sphere([x, y, z]) => write!(f, "x=({x:.12},{y:.12},{z:.12})"),
        }
    }
}

/// Truncated expansion of an even function on `S^{n-1}`; only even degrees are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    n: usize,
    kind: Kind,
    band_limit: usize,
    coeffs: Vec<f64>,
}

fn s2_offset(k: usize) -> usize {
    let i = k / 2;
    2 * i * i - i
}

fn coeff_count(kind: Kind, band_limit: usize) -> usize {
    match kind {
        Kind::Zonal => band_limit / 2 + 1,
        Kind::FullS2 => s2_offset(band_limit + 2),
    }
}

impl Spectrum {
    pub fn zeros(n: usize, kind: Kind, band_limit: usize) -> Result<Self> {
        if !(2..=64).contains(&n) {
            return Err(Error::invalid(format!("dimension n = {n} outside 2..=64")));
        }
        if band_limit % 2 != 0 {
            return Err(Error::invalid(format!(
                "band limit must be even, got {band_limit}"
            )));
        }
        if kind == Kind::FullS2 && n != 3 {
            return Err(Error::KindMismatch(format!(
                "full S² expansions require n = 3, got n = {n}"
            )));
        }
        Ok(Self {
            n,
            kind,
            band_limit,
            coeffs: vec![0.0; coeff_count(kind, band_limit)],
        })
    }

    /// Zonal spectrum from the coefficients of `C̃_0, C̃_2, C̃_4, …`.
    pub fn zonal(n: usize, even_coeffs: Vec<f64>) -> Result<Self> {
        if even_coeffs.is_empty() {
            return Err(Error::invalid("empty coefficient list"));
        }
        let mut s = Self::zeros(n, Kind::Zonal, 2 * (even_coeffs.len() - 1))?;
        s.coeffs = even_coeffs;
        Ok(s)
    }

    /// The constant function `c·𝟙`.
    pub fn constant(n: usize, kind: Kind, band_limit: usize, c: f64) -> Result<Self> {
        let mut s = Self::zeros(n, kind, band_limit)?;
        s.coeffs[0] = c * basis::unit_coefficient(n, kind);
        Ok(s)
    }

    /// Re-expresses a zonal n = 3 spectrum on the orthonormal S² basis (axis e₃).
    pub fn zonal_to_s2(&self) -> Result<Self> {
        match self.kind {
            Kind::FullS2 => Ok(self.clone()),
            Kind::Zonal => {
                if self.n != 3 {
                    return Err(Error::KindMismatch(format!(
                        "cannot lift an n = {} zonal spectrum to S²",
                        self.n
                    )));
                }
                let mut out = Self::zeros(3, Kind::FullS2, self.band_limit)?;
                for k in self.degrees() {
                    out.set(k, 0, self.zonal_coeff(k) * basis::zonal_norm(3, k));
                }
                Ok(out)
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn band_limit(&self) -> usize {
        self.band_limit
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// Even degrees `0, 2, …, K`.
    pub fn degrees(&self) -> impl Iterator<Item = usize> {
        (0..=self.band_limit).step_by(2)
    }

    /// Coefficients of degree k (one entry for zonal, `2k+1` for S², m = -k..=k).
    pub fn block(&self, k: usize) -> &[f64] {
        let r = self.block_range(k);
        &self.coeffs[r]
    }

    pub fn block_mut(&mut self, k: usize) -> &mut [f64] {
        let r = self.block_range(k);
        &mut self.coeffs[r]
    }

    fn block_range(&self, k: usize) -> std::ops::Range<usize> {
        assert!(k % 2 == 0 && k <= self.band_limit, "degree {k} not stored");
        match self.kind {
            Kind::Zonal => k / 2..k / 2 + 1,
            Kind::FullS2 => s2_offset(k)..s2_offset(k) + 2 * k + 1,
        }
    }

    pub fn zonal_coeff(&self, k: usize) -> f64 {
        debug_assert_eq!(self.kind, Kind::Zonal);
        self.coeffs[k / 2]
    }

    /// Coefficient `(k, m)`; zonal spectra only have m = 0.
    pub fn get(&self, k: usize, m: i64) -> f64 {
        if k % 2 != 0 || k > self.band_limit || m.unsigned_abs() as usize > k {
            return 0.0;
        }
        match self.kind {
            Kind::Zonal => {
                if m == 0 {
                    self.coeffs[k / 2]
                } else {
                    0.0
                }
            }
            Kind::FullS2 => self.coeffs[s2_offset(k) + (m + k as i64) as usize],
        }
    }

    pub fn set(&mut self, k: usize, m: i64, value: f64) {
        assert!(k % 2 == 0 && k <= self.band_limit, "degree {k} not stored");
        match self.kind {
            Kind::Zonal => {
                assert_eq!(m, 0, "zonal spectra only carry m = 0");
                self.coeffs[k / 2] = value;
            }
            Kind::FullS2 => {
                assert!(m.unsigned_abs() as usize <= k);
                self.coeffs[s2_offset(k) + (m + k as i64) as usize] = value;
            }
        }
    }

    /// Truncates or zero-extends to a new band limit.
    pub fn with_band_limit(&self, band_limit: usize) -> Result<Self> {
        let mut out = Self::zeros(self.n, self.kind, band_limit)?;
        let common = out.coeffs.len().min(self.coeffs.len());
        out.coeffs[..common].copy_from_slice(&self.coeffs[..common]);
        Ok(out)
    }

    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|v| *v *= c);
        out
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        if self.kind != other.kind {
            return Err(Error::KindMismatch(format!(
                "{} vs {} spectrum",
                self.kind, other.kind
            )));
        }
        Ok(())
    }

    /// `self + c·other`, at the larger band limit.
    pub fn axpy(&self, c: f64, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.with_band_limit(self.band_limit.max(other.band_limit))?;
        for (o, &v) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *o += c * v;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(1.0, other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(-1.0, other)
    }

    /// `∫_{S^{n-1}} C̃_k² dx` for zonal, 1 for S².
    pub fn basis_norm_sq(&self, k: usize) -> f64 {
        match self.kind {
            Kind::Zonal => basis::zonal_norm_sq(self.n, k),
            Kind::FullS2 => 1.0,
        }
    }

    /// `∫ f h dx` from the coefficients.
    pub fn pairing(&self, other: &Self) -> Result<f64> {
        self.check_compatible(other)?;
        let k_common = self.band_limit.min(other.band_limit);
        let mut terms = Vec::new();
        for k in (0..=k_common).step_by(2) {
            let w = self.basis_norm_sq(k);
            for (a, b) in self.block(k).iter().zip(other.block(k)) {
                terms.push(w * a * b);
            }
        }
        Ok(crate::numeric::pairwise_sum(&terms))
    }

    /// `∫ f² dx`.
    pub fn energy(&self) -> f64 {
        self.pairing(self).expect("self-compatible")
    }

    /// `∫ f² dx` restricted to degrees strictly above `k`.
    pub fn energy_above(&self, k: usize) -> f64 {
        self.degrees()
            .filter(|&d| d > k)
            .map(|d| self.basis_norm_sq(d) * self.block(d).iter().map(|v| v * v).sum::<f64>())
            .sum()
    }

    /// `∫ f dx`.
    pub fn mean_integral(&self) -> f64 {
        match self.kind {
            Kind::Zonal => self.coeffs[0] * sphere_surface(self.n),
            Kind::FullS2 => self.coeffs[0] * basis::zonal_norm(3, 0),
        }
    }

    /// Point evaluation. Zonal spectra accept `Point::Zonal(t)` or a unit
    /// vector in R³ when n = 3 (axis e₃).
    pub fn eval(&self, p: Point) -> f64 {
        match (self.kind, p) {
            (Kind::Zonal, Point::Zonal(t)) => self.eval_zonal(t),
            (Kind::Zonal, Point::Sphere(x)) => self.eval_zonal(x[2]),
            (Kind::FullS2, Point::Sphere(x)) => self.eval_s2(x),
            (Kind::FullS2, Point::Zonal(t)) => {
                self.eval_s2([(1.0 - t * t).max(0.0).sqrt(), 0.0, t])
            }
        }
    }

    pub fn eval_zonal(&self, t: f64) -> f64 {
        let mut buf = Vec::new();
        gegenbauer_ratios(self.band_limit, gegenbauer_index(self.n), t, &mut buf);
        self.degrees()
            .map(|k| self.coeffs[k / 2] * buf[k])
            .sum()
    }

    fn eval_s2(&self, x: [f64; 3]) -> f64 {
        let z = x[2].clamp(-1.0, 1.0);
        let phi = x[1].atan2(x[0]);
        let mut table = LegendreTable::new(self.band_limit);
        table.fill(z);
        let (c, s) = self.fourier_at_latitude(&table);
        fourier_eval(&c, &s, phi)
    }

    /// Longitude Fourier coefficients at one latitude:
    /// `f(φ) = Σ_m c_m cos(mφ) + s_m sin(mφ)`.
    pub(crate) fn fourier_at_latitude(&self, table: &LegendreTable) -> (Vec<f64>, Vec<f64>) {
        let kmax = self.band_limit;
        let mut c = vec![0.0; kmax + 1];
        let mut s = vec![0.0; kmax + 1];
        let inv_sqrt_pi = 1.0 / PI.sqrt();
        let inv_sqrt_2pi = 1.0 / (2.0 * PI).sqrt();
        for k in self.degrees() {
            let block = self.block(k);
            c[0] += block[k] * table.get(k, 0) * inv_sqrt_2pi;
            for m in 1..=k {
                let p = table.get(k, m) * inv_sqrt_pi;
                c[m] += block[k + m] * p;
                s[m] += block[k - m] * p;
            }
        }
        (c, s)
    }
}

pub(crate) fn fourier_eval(c: &[f64], s: &[f64], phi: f64) -> f64 {
    let mut v = c[0];
    for m in 1..c.len() {
        let (sm, cm) = (m as f64 * phi).sin_cos();
        v += c[m] * cm + s[m] * sm;
    }
    v
}
