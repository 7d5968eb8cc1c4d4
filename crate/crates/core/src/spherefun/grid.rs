use std::f64::consts::PI;
use std::sync::Arc;

use super::legendre::LegendreTable;
use super::spectrum::{basis, fourier_eval, Kind, Point, Spectrum};
use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;
use crate::specialfn::{
    gauss_jacobi_cached, gegenbauer_index, gegenbauer_ratios, sphere_surface, Quadrature1D,
};

/// Odd-degree energy ratio above which [`analyze`] rejects its input.
pub const PARITY_THRESHOLD: f64 = 1e-6;

/// Quadrature grid on `S^{n-1}`.
#[derive(Debug, Clone)]
pub enum Grid {
    /// Gauss–Jacobi nodes in `t` for the weight `(1-t²)^{(n-3)/2}`.
    Zonal { n: usize, rule: Arc<Quadrature1D> },
    /// Gauss–Legendre latitudes (in `z = cos θ`) times uniform longitudes.
    FullS2 {
        lat: Arc<Quadrature1D>,
        nlon: usize,
    },
}

impl Grid {
    pub fn zonal(n: usize, order: usize) -> Result<Self> {
        let rule = gauss_jacobi_cached(order, (n as f64 - 3.0) / 2.0)?;
        Ok(Grid::Zonal { n, rule })
    }

    /// `resolution` latitudes and `2·resolution` longitudes.
    pub fn full_s2(resolution: usize) -> Result<Self> {
        let lat = gauss_jacobi_cached(resolution, 0.0)?;
        Ok(Grid::FullS2 {
            lat,
            nlon: 2 * resolution,
        })
    }

    /// Grid of the given kind able to resolve products up to the given resolution.
    pub fn for_kind(n: usize, kind: Kind, resolution: usize) -> Result<Self> {
        match kind {
            Kind::Zonal => Self::zonal(n, resolution),
            Kind::FullS2 => Self::full_s2(resolution),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Grid::Zonal { n, .. } => *n,
            Grid::FullS2 { .. } => 3,
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Grid::Zonal { .. } => Kind::Zonal,
            Grid::FullS2 { .. } => Kind::FullS2,
        }
    }

    /// Number of latitudes (or t-nodes).
    pub fn resolution(&self) -> usize {
        match self {
            Grid::Zonal { rule, .. } => rule.order,
            Grid::FullS2 { lat, .. } => lat.order,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Grid::Zonal { rule, .. } => rule.nodes.len(),
            Grid::FullS2 { lat, nlon } => lat.nodes.len() * nlon,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Largest even band limit that [`analyze`] recovers exactly.
    pub fn capacity(&self) -> usize {
        let r = self.resolution().saturating_sub(1);
        r - r % 2
    }

    fn longitude(nlon: usize, j: usize) -> f64 {
        2.0 * PI * j as f64 / nlon as f64
    }

    /// Node `i` as a point; S² nodes are stored latitude-major.
    pub fn point(&self, i: usize) -> Point {
        match self {
            Grid::Zonal { rule, .. } => Point::Zonal(rule.nodes[i]),
            Grid::FullS2 { lat, nlon } => {
                let z = lat.nodes[i / nlon];
                let phi = Self::longitude(*nlon, i % nlon);
                let s = (1.0 - z * z).max(0.0).sqrt();
                Point::Sphere([s * phi.cos(), s * phi.sin(), z])
            }
        }
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    /// Surface-measure weight of node `i`.
    pub fn weight(&self, i: usize) -> f64 {
        match self {
            Grid::Zonal { n, rule } => sphere_surface(n - 1) * rule.weights[i],
            Grid::FullS2 { lat, nlon } => lat.weights[i / nlon] * 2.0 * PI / *nlon as f64,
        }
    }

    /// Samples a function at every node.
    pub fn sample(&self, f: impl Fn(Point) -> f64) -> GridFunction {
        GridFunction {
            grid: self.clone(),
            values: self.points().map(f).collect(),
        }
    }
}

/// Point values of a function on a [`Grid`].
#[derive(Debug, Clone)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(format!(
                "grid has {} nodes but {} values were given",
                grid.len(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn kind(&self) -> Kind {
        self.grid.kind()
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Pointwise product; both functions must live on the same grid.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.values.len() != other.values.len() || self.kind() != other.kind() {
            return Err(Error::KindMismatch("grid functions on different grids".into()));
        }
        Ok(Self {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// `∫_{S^{n-1}} f dx` by the grid's product rule, summed pairwise.
pub fn integral(f: &GridFunction) -> f64 {
    match &f.grid {
        Grid::Zonal { n, rule } => {
            let terms: Vec<f64> = rule.weights.iter().zip(&f.values).map(|(w, v)| w * v).collect();
            sphere_surface(n - 1) * pairwise_sum(&terms)
        }
        Grid::FullS2 { lat, nlon } => {
            let rows: Vec<f64> = f
                .values
                .chunks(*nlon)
                .zip(&lat.weights)
                .map(|(row, w)| w * pairwise_sum(row))
                .collect();
            2.0 * PI / *nlon as f64 * pairwise_sum(&rows)
        }
    }
}

/// Evaluates the truncated expansion at every node of a grid with
/// `resolution` nodes (zonal) or latitudes (S²).
pub fn synthesize(s: &Spectrum, resolution: usize) -> Result<GridFunction> {
    if resolution < s.band_limit() + 1 {
        return Err(Error::invalid(format!(
            "resolution {resolution} cannot represent band limit {}",
            s.band_limit()
        )));
    }
    let grid = Grid::for_kind(s.n(), s.kind(), resolution)?;
    synthesize_on(s, &grid)
}

/// Evaluates a spectrum on an existing grid.
pub fn synthesize_on(s: &Spectrum, grid: &Grid) -> Result<GridFunction> {
    if grid.n() != s.n() {
        return Err(Error::DimensionMismatch {
            expected: grid.n(),
            found: s.n(),
        });
    }
    match (grid, s.kind()) {
        (Grid::Zonal { rule, .. }, Kind::Zonal) => {
            let nu = gegenbauer_index(s.n());
            let mut buf = Vec::new();
            let values = rule
                .nodes
                .iter()
                .map(|&t| {
                    gegenbauer_ratios(s.band_limit(), nu, t, &mut buf);
                    s.degrees().map(|k| s.zonal_coeff(k) * buf[k]).sum()
                })
                .collect();
            Ok(GridFunction {
                grid: grid.clone(),
                values,
            })
        }
        (Grid::FullS2 { lat, nlon }, _) => {
            let s2 = s.zonal_to_s2()?;
            let mut table = LegendreTable::new(s2.band_limit());
            let mut values = Vec::with_capacity(grid.len());
            for &z in &lat.nodes {
                table.fill(z);
                let (c, sn) = s2.fourier_at_latitude(&table);
                for j in 0..*nlon {
                    values.push(fourier_eval(&c, &sn, Grid::longitude(*nlon, j)));
                }
            }
            Ok(GridFunction {
                grid: grid.clone(),
                values,
            })
        }
        (Grid::Zonal { .. }, Kind::FullS2) => Err(Error::KindMismatch(
            "cannot synthesize an S² spectrum on a zonal grid".into(),
        )),
    }
}

/// Result of [`analyze_with_diagnostics`].
#[derive(Debug, Clone)]
pub struct Analysis {
    pub spectrum: Spectrum,
    /// Energy in odd degrees `≤ K+1` relative to `∫ f²`.
    pub odd_energy_ratio: f64,
}

/// Projects grid values onto even degrees `≤ k_max`.
pub fn analyze(f: &GridFunction, k_max: usize) -> Result<Spectrum> {
    analyze_with_diagnostics(f, k_max).map(|a| a.spectrum)
}

pub fn analyze_with_diagnostics(f: &GridFunction, k_max: usize) -> Result<Analysis> {
    if k_max % 2 != 0 {
        return Err(Error::invalid(format!("band limit must be even, got {k_max}")));
    }
    if f.grid.resolution() < k_max + 1 {
        return Err(Error::invalid(format!(
            "grid of resolution {} cannot resolve band limit {k_max}",
            f.grid.resolution()
        )));
    }
    let total = integral(&f.map(|v| v * v));
    let (spectrum, odd_energy) = match &f.grid {
        Grid::Zonal { n, rule } => analyze_zonal(*n, rule, &f.values, k_max)?,
        Grid::FullS2 { lat, nlon } => analyze_s2(lat, *nlon, &f.values, k_max)?,
    };
    let odd_energy_ratio = if total > 0.0 { odd_energy / total } else { 0.0 };
    if odd_energy_ratio > PARITY_THRESHOLD {
        return Err(Error::Parity {
            ratio: odd_energy_ratio,
        });
    }
    Ok(Analysis {
        spectrum,
        odd_energy_ratio,
    })
}

fn analyze_zonal(
    n: usize,
    rule: &Quadrature1D,
    values: &[f64],
    k_max: usize,
) -> Result<(Spectrum, f64)> {
    let nu = gegenbauer_index(n);
    let edge = sphere_surface(n - 1);
    // the odd diagnostic needs the grid to resolve degree K+1 as well
    let k_diag = (k_max + 1).min(rule.order.saturating_sub(1));
    let mut sums = vec![Vec::with_capacity(values.len()); k_diag + 1];
    let mut buf = Vec::new();
    for ((&t, &w), &v) in rule.nodes.iter().zip(&rule.weights).zip(values) {
        gegenbauer_ratios(k_diag, nu, t, &mut buf);
        for (k, acc) in sums.iter_mut().enumerate() {
            acc.push(w * v * buf[k]);
        }
    }
    let mut coeffs = Vec::with_capacity(k_max / 2 + 1);
    let mut odd_energy = 0.0;
    for (k, acc) in sums.iter().enumerate() {
        let norm_sq = basis::zonal_norm_sq(n, k);
        let a = edge * pairwise_sum(acc) / norm_sq;
        if k % 2 == 0 {
            if k <= k_max {
                coeffs.push(a);
            }
        } else {
            odd_energy += a * a * norm_sq;
        }
    }
    Ok((Spectrum::zonal(n, coeffs)?, odd_energy))
}

fn analyze_s2(
    lat: &Quadrature1D,
    nlon: usize,
    values: &[f64],
    k_max: usize,
) -> Result<(Spectrum, f64)> {
    let k_diag = (k_max + 1).min(lat.order.saturating_sub(1)).min(nlon / 2 - 1);
    let dphi = 2.0 * PI / nlon as f64;
    let inv_sqrt_pi = 1.0 / PI.sqrt();
    let inv_sqrt_2pi = 1.0 / (2.0 * PI).sqrt();

    // a[k][k+m] accumulates the (k, m) coefficient for every degree ≤ k_diag
    let mut acc: Vec<Vec<f64>> = (0..=k_diag).map(|k| vec![0.0; 2 * k + 1]).collect();
    let mut table = LegendreTable::new(k_diag);
    let mut cos_m = vec![0.0; k_diag + 1];
    let mut sin_m = vec![0.0; k_diag + 1];
    let trig: Vec<(f64, f64)> = (0..=k_diag)
        .flat_map(|m| (0..nlon).map(move |j| (m as f64 * Grid::longitude(nlon, j)).sin_cos()))
        .collect();
    let mut c = vec![0.0; nlon];
    let mut s = vec![0.0; nlon];
    for (i, (&z, &w)) in lat.nodes.iter().zip(&lat.weights).enumerate() {
        let row = &values[i * nlon..(i + 1) * nlon];
        for m in 0..=k_diag {
            let tm = &trig[m * nlon..(m + 1) * nlon];
            for (j, (&v, &(sn, cs))) in row.iter().zip(tm).enumerate() {
                c[j] = v * cs;
                s[j] = v * sn;
            }
            cos_m[m] = dphi * pairwise_sum(&c);
            sin_m[m] = dphi * pairwise_sum(&s);
        }
        table.fill(z);
        for (k, block) in acc.iter_mut().enumerate() {
            block[k] += w * cos_m[0] * table.get(k, 0) * inv_sqrt_2pi;
            for m in 1..=k {
                let p = w * table.get(k, m) * inv_sqrt_pi;
                block[k + m] += cos_m[m] * p;
                block[k - m] += sin_m[m] * p;
            }
        }
    }
    let mut out = Spectrum::zeros(3, Kind::FullS2, k_max)?;
    let mut odd_energy = 0.0;
    for (k, block) in acc.into_iter().enumerate() {
        if k % 2 == 1 {
            odd_energy += block.iter().map(|a| a * a).sum::<f64>();
        } else if k <= k_max {
            out.block_mut(k).copy_from_slice(&block);
        }
    }
    Ok((out, odd_energy))
}
