//! The acceptance suite: every criterion runs at its pinned tolerance and
//! reports one pass/fail outcome. Shared by the integration tests and the
//! `selftest` command.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::comparison::{
    check_comparison, mean_identity_check, slicing_bound, synthesize_counterexample,
    verify_certificate, SynthesisParams,
};
use crate::error::{Error, Result};
use crate::gallery::{bp_instance, lr_ball, search_nonmember, section_areas, volume_from_function, StarBody};
use crate::operators::{
    cosine_factor, d_nq, funk_hecke_oracle, parseval_constant, radon_multiplier, tq_multiplier,
    tq_multiplier_extended_log, MultiplierOperator,
};
use crate::positivity::{pos_test, Verdict, DEFAULT_REFINEMENT, DEFAULT_REL_TOL};
use crate::spherefun::{
    basis, integral, min_max, pointwise_power, synthesize_on, Grid, Kind, Spectrum, StarFunction,
};

/// Seed of every randomized criterion.
pub const SEED: u64 = 20_240_917;

const QS: [f64; 6] = [-2.5, -1.0, -0.5, 0.5, 1.0, 3.0];

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2}. {}: {}", self.id, self.title, self.detail)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

type Check = fn() -> Result<(bool, String)>;

/// `(id, title, check)` for every criterion, in order.
pub const CRITERIA: [(usize, &str, Check); 11] = [
    (1, "multiplier validation", multipliers),
    (2, "oracle agreement", oracle),
    (3, "Radon bridge", radon_bridge),
    (4, "function-level Parseval", function_parseval),
    (5, "closed-form positivity boundary", boundary),
    (6, "affirmative comparison suite", affirmative_suite),
    (7, "counterexample synthesis", synthesis),
    (8, "intersection-body sanity", lr_balls),
    (9, "slicing inequality", slicing),
    (10, "mean identity", mean_identity),
    (11, "Busemann-Petty demo", bp_demo),
];

pub fn run(id: usize) -> Option<Outcome> {
    let (id, title, check) = CRITERIA.iter().copied().find(|c| c.0 == id)?;
    let (passed, detail) = match check() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Some(Outcome {
        id,
        title,
        passed,
        detail,
    })
}

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().filter_map(|c| run(c.0)).collect()
}

fn multipliers() -> Result<(bool, String)> {
    let mut worst_parseval = 0.0f64;
    let mut worst_mean = 0.0f64;
    for n in [3usize, 4, 5] {
        let c = parseval_constant(n);
        for q in QS {
            for k in (0..=60).step_by(2) {
                let a = tq_multiplier(n, q, k)?;
                let b = tq_multiplier_extended_log(n, -(n as f64) - q, k)?.value();
                worst_parseval = worst_parseval.max(rel(a * b, c));
            }
            let l0 = tq_multiplier(n, q, 0)?;
            worst_mean = worst_mean.max(rel(l0, d_nq(n, q)? * c));
        }
    }
    let spot = rel(tq_multiplier(3, -2.0, 0)?, 4.0 * PI);
    let constant = (parseval_constant(3) - 248.050_213_4).abs();
    let ok = worst_parseval <= 1e-10 && worst_mean <= 1e-10 && spot <= 1e-10 && constant < 1e-7;
    Ok((
        ok,
        format!(
            "Parseval rel err {worst_parseval:.2e}, k=0 identity {worst_mean:.2e}, λ₀(3,−2)=4π err {spot:.2e}"
        ),
    ))
}

fn oracle() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for n in [3usize, 4, 5] {
        for q in [-0.5, 0.5, 1.0, 3.0] {
            let factor = cosine_factor(q)?;
            for k in (0..=40).step_by(2) {
                let quad = factor * funk_hecke_oracle(|t| t.abs().powf(q), n, k)?;
                worst = worst.max(rel(quad, tq_multiplier(n, q, k)?));
            }
        }
    }
    let spot = rel(tq_multiplier(3, 1.0, 2)?, -PI * PI / 4.0);
    Ok((
        worst <= 1e-8 && spot <= 1e-12,
        format!("max rel err {worst:.2e}, λ₂(3,1)=−π²/4 err {spot:.2e}"),
    ))
}

fn radon_bridge() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for n in [3usize, 4, 5] {
        for k in (0..=60).step_by(2) {
            worst = worst.max(rel(tq_multiplier(n, -1.0, k)?, PI * radon_multiplier(n, k)?));
        }
    }
    let spot = rel(tq_multiplier(3, -1.0, 2)?, -PI * PI);
    Ok((
        worst <= 1e-10 && spot <= 1e-12,
        format!("max rel err {worst:.2e}, λ₂(3,−1)=−π² err {spot:.2e}"),
    ))
}

fn random_spectrum(rng: &mut ChaCha8Rng, n: usize, kind: Kind, k: usize) -> Result<Spectrum> {
    let mut s = Spectrum::zeros(n, kind, k)?;
    s.coeffs_mut().iter_mut().for_each(|v| *v = rng.gen_range(-1.0..1.0));
    Ok(s)
}

/// Relative error measured against the Cauchy–Schwarz scale
/// `(2π)^n ‖f‖₂ ‖h‖₂` of the pairing.
fn function_parseval() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for trial in 0..50 {
        let (n, kind, k) = if trial % 2 == 0 { (3, Kind::FullS2, 12) } else { (5, Kind::Zonal, 24) };
        let q = QS[rng.gen_range(0..QS.len())];
        let f = random_spectrum(&mut rng, n, kind, k)?;
        let h = random_spectrum(&mut rng, n, kind, k)?;
        let t = MultiplierOperator::tq(n, q, k)?;
        let gamma = crate::specialfn::gamma(-q / 2.0)?;
        let partner = MultiplierOperator::profile(n, q, k)?.apply(&h)?.scaled(gamma);
        let grid = Grid::for_kind(n, kind, k + 2)?;
        let lhs = integral(&synthesize_on(&t.apply(&f)?, &grid)?.mul(&synthesize_on(&partner, &grid)?)?);
        let fh = integral(&synthesize_on(&f, &grid)?.mul(&synthesize_on(&h, &grid)?)?);
        let c = parseval_constant(n);
        let scale = c * (f.energy() * h.energy()).sqrt();
        worst = worst.max((lhs - c * fh).abs() / scale);
    }
    Ok((worst <= 1e-8, format!("50 pairs, max rel err {worst:.2e}")))
}

fn boundary() -> Result<(bool, String)> {
    let expected = 4.0 * PI.sqrt() * 0.2;
    let member = pos_test(&Spectrum::zonal(3, vec![1.0, 0.4])?, -1.0, DEFAULT_REL_TOL, DEFAULT_REFINEMENT)?;
    let non = pos_test(&Spectrum::zonal(3, vec![1.0, 0.6])?, -1.0, DEFAULT_REL_TOL, DEFAULT_REFINEMENT)?;
    let ok = member.verdict == Verdict::Member
        && (member.margin - expected).abs() <= 1e-6
        && non.verdict == Verdict::NonMember
        && (non.margin + expected).abs() <= 1e-6;
    Ok((
        ok,
        format!(
            "a=0.4 {} margin {:.9}, a=0.6 {} margin {:.9} (±{expected:.9})",
            member.verdict, member.margin, non.verdict, non.margin
        ),
    ))
}

/// A positive `u` with `profile(u) ≥ 0`: the preimage of a random square
/// plus a small constant.
fn constructed_member(rng: &mut ChaCha8Rng, n: usize, q: f64, degree: usize) -> Result<StarFunction> {
    let s = StarFunction::new(random_spectrum(rng, n, Kind::Zonal, degree)?);
    let mut w = pointwise_power(&s, 2.0, 2 * degree)?.function.into_spectrum();
    w.coeffs_mut()[0] += 0.1 * basis::unit_coefficient(n, Kind::Zonal);
    let u = MultiplierOperator::profile(n, q, 2 * degree)?.inverse()?.apply(&w)?;
    let u = StarFunction::new(u);
    let ex = u.extrema();
    if !(ex.min > 0.0) {
        return Err(Error::Validation(format!("constructed member has min {:e}", ex.min)));
    }
    Ok(u.scaled(1.0 / ex.max))
}

/// `f` with `f^{p-1}` a constructed member.
fn member_power(rng: &mut ChaCha8Rng, n: usize, q: f64, p: f64) -> Result<StarFunction> {
    let u = constructed_member(rng, n, q, 6)?;
    if p == 2.0 {
        Ok(u)
    } else {
        let e = 1.0 / (p - 1.0);
        Ok(pointwise_power(&u, e, e as usize * u.band_limit())?.function)
    }
}

fn affirmative_suite() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut violations = 0;
    let mut not_member = 0;
    let mut min_gap = f64::INFINITY;
    for (n, q) in [(3usize, -1.0), (3, 1.0), (5, -1.0)] {
        let tq_inv = MultiplierOperator::tq_normalized(n, q, 64)?.inverse()?;
        for trial in 0..100 {
            // p = 3/2 and p = 2 keep f band-limited exactly
            let p = if trial % 2 == 0 { 2.0 } else { 1.5 };
            let f = member_power(&mut rng, n, q, p)?;
            let v = pointwise_power(&StarFunction::new(random_spectrum(&mut rng, n, Kind::Zonal, 6)?), 2.0, 12)?
                .function
                .into_spectrum();
            let dv = tq_inv.apply(&v)?;
            let dv_ex = min_max(&dv, DEFAULT_REFINEMENT);
            let delta = rng.gen_range(0.1..1.0) * 0.5 * f.min() / dv_ex.min.abs().max(dv_ex.max.abs());
            let k = f.band_limit().max(dv.band_limit());
            let g = f.spectrum().with_band_limit(k)?.axpy(delta, &dv.with_band_limit(k)?)?;
            let r = check_comparison(&f, &StarFunction::new(g), p, q, DEFAULT_REL_TOL)?;
            if r.f_pos.verdict != Verdict::Member {
                not_member += 1;
            }
            if !r.hypothesis_holds() || r.lp_f > r.lp_g + 1e-9 {
                violations += 1;
            }
            min_gap = min_gap.min(r.lp_g - r.lp_f);
        }
    }
    Ok((
        violations == 0 && not_member == 0,
        format!(
            "300 trials, {violations} violations, {not_member} premises not certified, min ‖g‖−‖f‖ {min_gap:.3e}"
        ),
    ))
}

fn synthesis() -> Result<(bool, String)> {
    let g3 = StarFunction::new(Spectrum::zonal(3, vec![1.0, 0.6])?);
    let (a, rho) = search_nonmember(5, 2, 20)?
        .ok_or_else(|| Error::Validation("no non-member found in dimension 5".into()))?;
    let g5 = rho.section_function()?;
    let mut ok = true;
    let mut notes = Vec::new();
    for (label, g, p) in [("n=3", g3, 2.0), ("n=5", g5, 1.25)] {
        let cert = synthesize_counterexample(&g, p, -1.0, &SynthesisParams::default())?;
        let m = cert.margins;
        let reverified = verify_certificate(&cert.to_text()).is_ok();
        let f = StarFunction::new(cert.f.clone());
        let f_pow = pointwise_power(&f, p - 1.0, cert.power_band)?.function;
        let f_verdict = pos_test(f_pow.spectrum(), -1.0, DEFAULT_REL_TOL, DEFAULT_REFINEMENT)?.verdict;
        let gap_ok = m.lp_gap() >= 1e-4 * m.lp_g;
        ok &= reverified && gap_ok && m.holder_chain_holds(p) && f_verdict != Verdict::Member;
        notes.push(format!(
            "{label}: gap/‖g‖ {:.2e}, hypothesis {:.1e} ≤ {:.1e}, pairing {:.3e}, reverified {reverified}, f^(p-1) {f_verdict}",
            m.lp_gap() / m.lp_g,
            m.max_hypothesis,
            m.tolerance,
            m.pairing
        ));
    }
    Ok((ok, format!("{} (n=5 body a={a})", notes.join("; "))))
}

fn lr_balls() -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for r in [1.5, 3.0, 6.0] {
        let body = lr_ball(r, 48)?;
        let rep = body.intersection_body_test()?;
        ok &= rep.verdict == Verdict::Member;
        notes.push(format!("r={r} {} margin {:.3e} tol {:.1e}", rep.verdict, rep.margin, rep.tolerance));
    }
    Ok((ok, notes.join("; ")))
}

fn slicing() -> Result<(bool, String)> {
    let mut worst_eq = 0.0f64;
    for n in [3usize, 4, 5] {
        for q in [-1.0, 1.0, -2.5] {
            for p in [1.5, 2.0, 3.0] {
                let one = StarFunction::new(Spectrum::zonal(n, vec![1.0])?);
                let r = slicing_bound(&one, p, q)?;
                let exact = crate::specialfn::sphere_surface(n).powf(1.0 / p);
                worst_eq = worst_eq.max(rel(r.lhs, exact)).max(rel(r.rhs, exact));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let mut failures = 0;
    let mut min_margin = f64::INFINITY;
    for q in [-1.0, 1.0] {
        for trial in 0..50 {
            let p = if trial % 2 == 0 { 2.0 } else { 1.5 };
            let f = member_power(&mut rng, 3, q, p)?;
            let r = slicing_bound(&f, p, q)?;
            if !r.asserted() || !(r.rhs > r.lhs) {
                failures += 1;
            }
            min_margin = min_margin.min((r.rhs - r.lhs) / r.rhs);
        }
    }
    Ok((
        worst_eq <= 1e-12 && failures == 0,
        format!("equality err {worst_eq:.2e}; 100 members, {failures} failures, min relative margin {min_margin:.3e}"),
    ))
}

fn mean_identity() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let mut worst = 0.0f64;
    for trial in 0..50 {
        let (n, kind) = match trial % 4 {
            0 => (3, Kind::FullS2),
            1 => (3, Kind::Zonal),
            2 => (4, Kind::Zonal),
            _ => (5, Kind::Zonal),
        };
        let q = QS[rng.gen_range(0..QS.len())];
        let mut f = random_spectrum(&mut rng, n, kind, 10)?;
        f.coeffs_mut()[0] = rng.gen_range(0.5..1.5);
        let (l, r) = mean_identity_check(&f, q)?;
        worst = worst.max(rel(l, r));
    }
    let (l, r) = mean_identity_check(&Spectrum::zonal(3, vec![1.0])?, -1.0)?;
    let exact = 2.0 * PI * PI * 4.0 * PI;
    let spot = rel(l, exact).max(rel(r, exact));
    Ok((
        worst <= 1e-10 && spot <= 1e-10,
        format!("50 spectra, max rel err {worst:.2e}; 𝟙: err {spot:.2e}"),
    ))
}

fn bp_demo() -> Result<(bool, String)> {
    let ball = StarBody::ball(3, Kind::Zonal)?;
    let area = section_areas(&ball.section_function()?)?;
    let area_err = rel(min_max(&area, DEFAULT_REFINEMENT).min, PI).max(rel(min_max(&area, DEFAULT_REFINEMENT).max, PI));
    let bp = bp_instance(&ball, &ball)?;
    let vol_err = rel(volume_from_function(&bp.f, bp.p)?, 4.0 * PI / 3.0);

    // L = c(1 + 0.3P₂) with c chosen so every section of L is at least π
    let shape = crate::gallery::perturbed_ball(3, 0.3, 2, 1.0)?;
    let min_area = min_max(&shape.section_areas()?, DEFAULT_REFINEMENT).min;
    let c = (PI / min_area).sqrt() * (1.0 + 1e-6);
    let l = StarBody::new(shape.radial.scaled(c), crate::gallery::Provenance::Custom)?;
    let pair = bp_instance(&ball, &l)?;
    let report = check_comparison(&pair.f, &pair.g, pair.p, pair.q, DEFAULT_REL_TOL)?;
    let vk = volume_from_function(&pair.f, pair.p)?;
    let vl = volume_from_function(&pair.g, pair.p)?;

    // round trip: ‖g‖_p^p = n|L| by two routes, hypothesis margin vs section areas
    let vol_route = rel(vl, l.volume()?);
    let da = l.section_areas()?.sub(&ball.section_areas()?.with_band_limit(l.section_areas()?.band_limit())?)?;
    let margin_route = (report.hypothesis_margin - PI.sqrt() * 2.0 * min_max(&da, DEFAULT_REFINEMENT).min).abs();
    let ok = area_err <= 1e-10
        && vol_err <= 1e-10
        && report.premises_hold()
        && vk <= vl
        && vol_route <= 1e-9
        && margin_route <= 1e-9;
    Ok((
        ok,
        format!(
            "area err {area_err:.1e}, volume err {vol_err:.1e}; |K| {vk:.6} ≤ |L| {vl:.6}: {}, round trips {vol_route:.1e}/{margin_route:.1e}",
            vk <= vl
        ),
    ))
}
