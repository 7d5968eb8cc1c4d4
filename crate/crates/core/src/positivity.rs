//! Membership tests for the classes of functions positively associated with
//! `Ť_q`, by the sign of the positivity profile.
//!
//! For even `h` the Fourier transform of `h·r^q / Γ(-q/2)` is a homogeneous
//! function `profile(h)·r^{-n-q}` with a positive radial factor, so its sign
//! on `R^n \ {0}` is decided on the sphere alone.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::numeric::fmt17;
use crate::operators::{check_admissible, MultiplierOperator};
use crate::spherefun::{
    analyze, min_max, synthesize_on, text, Extrema, Grid, Kind, Point, Spectrum,
};

/// Default tolerance relative to the profile's sup-norm.
pub const DEFAULT_REL_TOL: f64 = 1e-8;

/// Default scan refinement for [`pos_test`].
pub const DEFAULT_REFINEMENT: usize = 8;

/// Witness points satisfy `profile < WITNESS_FRACTION · margin`.
pub const WITNESS_FRACTION: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Member,
    NonMember,
    Indeterminate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Member => "Member",
            Verdict::NonMember => "NonMember",
            Verdict::Indeterminate => "Indeterminate",
        })
    }
}

impl Verdict {
    pub fn from_margin(margin: f64, tol: f64) -> Self {
        if margin >= tol {
            Verdict::Member
        } else if margin <= -tol {
            Verdict::NonMember
        } else {
            Verdict::Indeterminate
        }
    }
}

/// A spherical cap `{x : angle(x, ±center) < radius}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cap {
    pub center: [f64; 3],
    pub radius: f64,
}

/// A symmetric subset of the sphere.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    Empty,
    Whole { n: usize, kind: Kind },
    /// Zonal bands `{a ≤ |t| ≤ b}`, one per interval.
    Bands { n: usize, intervals: Vec<(f64, f64)> },
    /// Union of antipodal cap pairs on S².
    Caps(Vec<Cap>),
}

impl Region {
    pub fn is_empty(&self) -> bool {
        match self {
            Region::Empty => true,
            Region::Whole { .. } => false,
            Region::Bands { intervals, .. } => intervals.is_empty(),
            Region::Caps(caps) => caps.is_empty(),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match (self, p) {
            (Region::Empty, _) => false,
            (Region::Whole { .. }, _) => true,
            (Region::Bands { intervals, .. }, p) => {
                let t = match p {
                    Point::Zonal(t) => t,
                    Point::Sphere(x) => x[2],
                }
                .abs();
                intervals.iter().any(|&(a, b)| a <= t && t <= b)
            }
            (Region::Caps(caps), Point::Sphere(x)) => {
                caps.iter().any(|c| axial_angle(c.center, x) < c.radius)
            }
            (Region::Caps(_), Point::Zonal(_)) => false,
        }
    }

    fn write_text(&self, out: &mut String) {
        match self {
            Region::Empty => out.push_str("witness: empty\n"),
            Region::Whole { .. } => out.push_str("witness: whole\n"),
            Region::Bands { intervals, .. } => {
                let _ = writeln!(out, "witness: bands {}", intervals.len());
                for (a, b) in intervals {
                    let _ = writeln!(out, "interval: {} {}", fmt17(*a), fmt17(*b));
                }
            }
            Region::Caps(caps) => {
                let _ = writeln!(out, "witness: caps {}", caps.len());
                for c in caps {
                    let _ = writeln!(
                        out,
                        "cap: {} {} {} {}",
                        fmt17(c.center[0]),
                        fmt17(c.center[1]),
                        fmt17(c.center[2]),
                        fmt17(c.radius)
                    );
                }
            }
        }
    }
}

/// Angle between `x` and the nearer of `±c`.
fn axial_angle(c: [f64; 3], x: [f64; 3]) -> f64 {
    let d = (c[0] * x[0] + c[1] * x[1] + c[2] * x[2]).abs();
    d.min(1.0).acos()
}

/// Outcome of [`pos_test`].
#[derive(Debug, Clone)]
pub struct PositivityReport {
    pub verdict: Verdict,
    /// Minimum of the profile.
    pub margin: f64,
    pub argmin: Point,
    /// Absolute tolerance used for the verdict.
    pub tolerance: f64,
    pub sup_norm: f64,
    pub q: f64,
    /// Where the profile is below `WITNESS_FRACTION · margin`; nonempty for non-members.
    pub witness: Region,
    pub profile: Spectrum,
}

impl PositivityReport {
    /// `key: value` lines, the witness region, then the profile spectrum.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verdict: {}", self.verdict);
        let _ = writeln!(out, "n: {}", self.profile.n());
        let _ = writeln!(out, "kind: {}", self.profile.kind());
        let _ = writeln!(out, "q: {}", fmt17(self.q));
        let _ = writeln!(out, "margin: {}", fmt17(self.margin));
        let _ = writeln!(out, "argmin: {}", self.argmin);
        let _ = writeln!(out, "tolerance: {}", fmt17(self.tolerance));
        let _ = writeln!(out, "sup_norm: {}", fmt17(self.sup_norm));
        self.witness.write_text(&mut out);
        out.push_str("profile:\n");
        out.push_str(&text::to_text(&self.profile));
        out
    }
}

/// Sphere restriction of `(h·r^q)^∧ / Γ(-q/2)`.
pub fn positivity_profile(h: &Spectrum, q: f64) -> Result<Spectrum> {
    check_admissible(h.n(), q)?;
    MultiplierOperator::profile(h.n(), q, h.band_limit())?.apply(h)
}

/// Decides membership of `h` by the minimum of its profile.
///
/// `rel_tol` is relative to the profile's sup-norm.
pub fn pos_test(h: &Spectrum, q: f64, rel_tol: f64, refinement: usize) -> Result<PositivityReport> {
    let profile = positivity_profile(h, q)?;
    let ex: Extrema = min_max(&profile, refinement);
    let sup_norm = ex.min.abs().max(ex.max.abs());
    let tolerance = rel_tol * sup_norm;
    let verdict = if sup_norm == 0.0 {
        Verdict::Indeterminate
    } else {
        Verdict::from_margin(ex.min, tolerance)
    };
    let witness = if verdict == Verdict::NonMember {
        witness_region(&profile, WITNESS_FRACTION * ex.min, refinement)
    } else {
        Region::Empty
    };
    Ok(PositivityReport {
        verdict,
        margin: ex.min,
        argmin: ex.argmin,
        tolerance,
        sup_norm,
        q,
        witness,
        profile,
    })
}

/// The part of the sphere where `f < threshold`, from a scan at the given refinement.
pub fn witness_region(f: &Spectrum, threshold: f64, refinement: usize) -> Region {
    let refinement = refinement.max(1);
    match f.kind() {
        Kind::Zonal => {
            let intervals = 4 * refinement * (f.band_limit() / 2 + 2);
            let h = FRAC_PI_2 / intervals as f64;
            let inside: Vec<bool> = (0..=intervals)
                .map(|i| f.eval_zonal((i as f64 * h).cos()) < threshold)
                .collect();
            if inside.iter().all(|&b| b) {
                return Region::Whole {
                    n: f.n(),
                    kind: Kind::Zonal,
                };
            }
            let mut bands = Vec::new();
            let mut i = 0;
            while i <= intervals {
                if inside[i] {
                    let start = i;
                    while i < intervals && inside[i + 1] {
                        i += 1;
                    }
                    // θ runs from the pole, so |t| decreases with i
                    bands.push(((i as f64 * h).cos(), (start as f64 * h).cos()));
                }
                i += 1;
            }
            bands.reverse();
            Region::Bands {
                n: f.n(),
                intervals: bands,
            }
        }
        Kind::FullS2 => greedy_caps(f, threshold, refinement),
    }
}

const MAX_CAPS: usize = 4;

fn greedy_caps(f: &Spectrum, threshold: f64, refinement: usize) -> Region {
    let n_theta = 2 * refinement * (f.band_limit() / 2 + 2);
    let n_phi = 4 * n_theta;
    let h = FRAC_PI_2 / n_theta as f64;
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for i in 0..=n_theta {
        let theta = i as f64 * h;
        let cols = if i == 0 { 1 } else { n_phi };
        for j in 0..cols {
            let phi = 2.0 * PI * j as f64 / n_phi as f64;
            let Point::Sphere(x) = Point::from_angles(theta, phi) else {
                unreachable!()
            };
            let v = f.eval(Point::Sphere(x));
            if v < threshold {
                inside.push((v, x));
            } else {
                outside.push(x);
            }
        }
    }
    if outside.is_empty() {
        return Region::Whole {
            n: 3,
            kind: Kind::FullS2,
        };
    }
    let mut caps = Vec::new();
    while caps.len() < MAX_CAPS && !inside.is_empty() {
        let (best, _) = inside
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |(bi, bv), (i, (v, _))| {
                if *v < bv {
                    (i, *v)
                } else {
                    (bi, bv)
                }
            });
        let center = inside[best].1;
        let gap = outside
            .iter()
            .map(|&x| axial_angle(center, x))
            .fold(f64::INFINITY, f64::min);
        let radius = (gap - h).min(FRAC_PI_2);
        if radius <= 0.0 {
            inside.swap_remove(best);
            continue;
        }
        inside.retain(|(_, x)| axial_angle(center, *x) > radius + h);
        caps.push(Cap { center, radius });
    }
    Region::Caps(caps)
}

fn smooth_step(y: f64) -> f64 {
    if y <= 0.0 {
        0.0
    } else if y >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / y).exp();
        let b = (-1.0 / (1.0 - y)).exp();
        a / (a + b)
    }
}

/// C^∞ window on `[-1, 1]`: 1 on `|x| ≤ 1 - s`, smooth decay to 0 at `|x| = 1`.
fn window(x: f64, s: f64) -> f64 {
    let d = 1.0 - x.abs();
    if d <= 0.0 {
        0.0
    } else {
        smooth_step(d / s)
    }
}

/// Minimum resolvable `transition width × degree`.
const MIN_RESOLUTION: f64 = 3.0;

/// A nonnegative band-limited function concentrated on `omega`.
///
/// The result is `(P_L b)²` normalized to maximum 1, where `b` is a smooth
/// bump on `omega` (flat top, transitions of relative width
/// `smooth_width`) and `P_L` is projection onto degrees `≤ L ≈ K_b/2`.
/// Squaring makes it nonnegative exactly, at the cost of small leakage
/// outside `omega`.
pub fn bump_on_region(omega: &Region, smooth_width: f64, k_b: usize) -> Result<Spectrum> {
    if !(smooth_width > 0.0 && smooth_width <= 1.0) {
        return Err(Error::invalid(format!(
            "smooth width must lie in (0, 1], got {smooth_width}"
        )));
    }
    if k_b % 2 != 0 {
        return Err(Error::invalid(format!("band limit must be even, got {k_b}")));
    }
    let l = (k_b / 2) & !1;
    match omega {
        Region::Empty => Err(Error::RegionTooSmall("the region is empty".into())),
        Region::Whole { n, kind } => Spectrum::constant(*n, *kind, k_b, 1.0),
        Region::Bands { n, intervals } => {
            if intervals.is_empty() {
                return Err(Error::RegionTooSmall("the region is empty".into()));
            }
            // each band as an interval of θ' = acos|t| ∈ [0, π/2]
            let mut windows = Vec::new();
            for &(a, b) in intervals {
                let lo = b.clamp(0.0, 1.0).acos();
                let hi = a.clamp(0.0, 1.0).acos();
                let (center, half) = if lo <= 0.0 && hi >= FRAC_PI_2 {
                    return bump_on_region(&Region::Whole { n: *n, kind: Kind::Zonal }, smooth_width, k_b);
                } else if lo <= 0.0 {
                    // reflected through the pole
                    (0.0, hi)
                } else if hi >= FRAC_PI_2 {
                    // reflected through the equator
                    (FRAC_PI_2, FRAC_PI_2 - lo)
                } else {
                    (0.5 * (lo + hi), 0.5 * (hi - lo))
                };
                check_resolvable(half, smooth_width, l)?;
                windows.push((center, half));
            }
            let b = move |p: Point| {
                let t = match p {
                    Point::Zonal(t) => t,
                    Point::Sphere(x) => x[2],
                };
                let th = t.abs().min(1.0).acos();
                windows
                    .iter()
                    .map(|&(c, h)| window((th - c) / h, smooth_width))
                    .sum::<f64>()
            };
            let grid = Grid::zonal(*n, 4 * k_b + 64)?;
            square_projection(&grid.sample(b), l, k_b)
        }
        Region::Caps(caps) => {
            if caps.is_empty() {
                return Err(Error::RegionTooSmall("the region is empty".into()));
            }
            for c in caps {
                check_resolvable(c.radius, smooth_width, l)?;
            }
            let caps = caps.clone();
            let b = move |p: Point| {
                let Point::Sphere(x) = p else { unreachable!() };
                caps.iter()
                    .map(|c| window(axial_angle(c.center, x) / c.radius, smooth_width))
                    .sum::<f64>()
            };
            let grid = Grid::full_s2(2 * k_b + 32)?;
            square_projection(&grid.sample(b), l, k_b)
        }
    }
}

fn check_resolvable(half_width: f64, smooth_width: f64, l: usize) -> Result<()> {
    let resolved = half_width * smooth_width * l as f64;
    if resolved < MIN_RESOLUTION {
        return Err(Error::RegionTooSmall(format!(
            "transition width {:.3e} rad is below the resolution of degree {l}",
            half_width * smooth_width
        )));
    }
    Ok(())
}

fn square_projection(b: &crate::spherefun::GridFunction, l: usize, k_b: usize) -> Result<Spectrum> {
    let proj = analyze(b, l)?;
    // degree-2L products are integrated exactly with 2L+1 nodes
    let grid = Grid::for_kind(proj.n(), proj.kind(), 2 * l + 1)?;
    let sq = synthesize_on(&proj, &grid)?.map(|v| v * v);
    let phi = analyze(&sq, 2 * l)?;
    let peak = min_max(&phi, 4).max;
    if !(peak > 0.0) {
        return Err(Error::RegionTooSmall("bump vanishes after projection".into()));
    }
    phi.scaled(1.0 / peak).with_band_limit(k_b)
}
