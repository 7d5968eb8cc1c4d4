//! L_p comparison: the affirmative implication (positively associated
//! `f^{p-1}` plus `Ť_q f ≤ Ť_q g` gives `‖f‖_p ≤ ‖g‖_p`), explicit
//! counterexamples when `g^{p-1}` is not positively associated, the slicing
//! bound and the mean identity.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::numeric::fmt17;
use crate::operators::{c_nq, check_admissible, d_nq, parseval_constant, MultiplierOperator};
use crate::positivity::{
    bump_on_region, pos_test, positivity_profile, PositivityReport, Verdict, DEFAULT_REL_TOL,
};
use crate::specialfn::{gamma_signed, sphere_surface};
use crate::spherefun::{
    integral, lp_norm, min_max, pointwise_power, synthesize, synthesize_on, text, Grid, Kind,
    Spectrum, StarFunction,
};

/// Refinement of every min/max scan in this module.
pub const REFINEMENT: usize = 8;

fn check_p(p: f64) -> Result<()> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::invalid(format!("comparison requires p > 1, got p = {p}")));
    }
    Ok(())
}

/// Band limit used for `f^{p-1}` when the caller does not choose one.
pub fn default_power_band(band_limit: usize, p: f64) -> usize {
    let e = p - 1.0;
    if e > 0.0 && e == e.floor() && e <= 8.0 {
        e as usize * band_limit
    } else {
        (2 * band_limit + 16).min(128)
    }
}

fn hypothesis_tolerance(rel_tol: f64, tf: &Spectrum, tg: &Spectrum) -> f64 {
    let a = min_max(tf, 4);
    let b = min_max(tg, 4);
    rel_tol * [a.min, a.max, b.min, b.max].iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

fn check_pair(f: &StarFunction, g: &StarFunction) -> Result<()> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            found: g.n(),
        });
    }
    if f.kind() != g.kind() {
        return Err(Error::KindMismatch(format!("{} vs {}", f.kind(), g.kind())));
    }
    Ok(())
}

/// Every quantity entering the comparison implication for one pair `(f, g)`.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub n: usize,
    pub p: f64,
    pub q: f64,
    /// `min (Ť_q g - Ť_q f)` over the sphere.
    pub hypothesis_margin: f64,
    /// Absolute tolerance for the hypothesis.
    pub tolerance: f64,
    /// Membership of `f^{p-1}`.
    pub f_pos: PositivityReport,
    pub lp_f: f64,
    pub lp_g: f64,
    /// Relative energy of `f^{p-1}` lost to truncation.
    pub aliasing_residual: f64,
}

impl ComparisonReport {
    pub fn hypothesis_holds(&self) -> bool {
        self.hypothesis_margin >= -self.tolerance
    }

    /// `‖f‖_p ≤ ‖g‖_p` up to `1e-9` relative.
    pub fn conclusion_holds(&self) -> bool {
        self.lp_f <= self.lp_g + 1e-9 * self.lp_g.max(1.0)
    }

    /// Whether the affirmative implication applies to this pair.
    pub fn premises_hold(&self) -> bool {
        self.f_pos.verdict == Verdict::Member && self.hypothesis_holds()
    }

    /// Premises hold but the conclusion fails; never expected.
    pub fn implication_violated(&self) -> bool {
        self.premises_hold() && !self.conclusion_holds()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n: {}", self.n);
        let _ = writeln!(out, "p: {}", fmt17(self.p));
        let _ = writeln!(out, "q: {}", fmt17(self.q));
        let _ = writeln!(out, "operator: gamma-normalized (positive multiple of C_q when q > -1)");
        let _ = writeln!(out, "hypothesis_margin: {}", fmt17(self.hypothesis_margin));
        let _ = writeln!(out, "tolerance: {}", fmt17(self.tolerance));
        let _ = writeln!(out, "hypothesis_holds: {}", self.hypothesis_holds());
        let _ = writeln!(out, "f_pow_verdict: {}", self.f_pos.verdict);
        let _ = writeln!(out, "f_pow_margin: {}", fmt17(self.f_pos.margin));
        let _ = writeln!(out, "lp_f: {}", fmt17(self.lp_f));
        let _ = writeln!(out, "lp_g: {}", fmt17(self.lp_g));
        let _ = writeln!(out, "conclusion_holds: {}", self.conclusion_holds());
        let _ = writeln!(out, "premises_hold: {}", self.premises_hold());
        let _ = writeln!(out, "aliasing_residual: {}", fmt17(self.aliasing_residual));
        out
    }
}

/// Measures the hypothesis, the membership of `f^{p-1}` and both norms.
pub fn check_comparison(
    f: &StarFunction,
    g: &StarFunction,
    p: f64,
    q: f64,
    rel_tol: f64,
) -> Result<ComparisonReport> {
    check_p(p)?;
    check_pair(f, g)?;
    check_admissible(f.n(), q)?;
    for (name, s) in [("f", f), ("g", g)] {
        if s.min() < 0.0 {
            return Err(Error::invalid(format!(
                "{name} must be positive (min = {:.6e})",
                s.min()
            )));
        }
    }
    let k = f.band_limit().max(g.band_limit());
    let op = MultiplierOperator::tq_normalized(f.n(), q, k)?;
    let tf = op.apply(f.spectrum())?;
    let tg = op.apply(g.spectrum())?;
    let diff = tg.sub(&tf)?;
    let hypothesis_margin = min_max(&diff, REFINEMENT).min;
    let tolerance = hypothesis_tolerance(rel_tol, &tf, &tg);

    let power = pointwise_power(f, p - 1.0, default_power_band(f.band_limit(), p))?;
    let f_pos = pos_test(power.function.spectrum(), q, DEFAULT_REL_TOL, REFINEMENT)?;
    Ok(ComparisonReport {
        n: f.n(),
        p,
        q,
        hypothesis_margin,
        tolerance,
        f_pos,
        lp_f: lp_norm(f, p)?,
        lp_g: lp_norm(g, p)?,
        aliasing_residual: power.aliasing_residual,
    })
}

/// Tuning of [`synthesize_counterexample`].
#[derive(Debug, Clone)]
pub struct SynthesisParams {
    /// Initial band limit of the bump; doubled on each repair.
    pub bump_band: usize,
    pub smooth_width: f64,
    pub rel_tol: f64,
    pub max_repairs: usize,
    /// Band limit for `g^{p-1}`; defaults to [`default_power_band`].
    pub power_band: Option<usize>,
}

impl Default for SynthesisParams {
    fn default() -> Self {
        Self {
            bump_band: 64,
            smooth_width: 1.0,
            rel_tol: 1e-8,
            max_repairs: 5,
            power_band: None,
        }
    }
}

/// Margins of a certificate, recomputed on verification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificateMargins {
    /// `min f`; must be positive.
    pub min_f: f64,
    /// `max (Ť_q f - Ť_q g)`; must not exceed `tolerance`.
    pub max_hypothesis: f64,
    pub tolerance: f64,
    /// `∫ g^{p-1} ψ`; must be negative.
    pub pairing: f64,
    pub lp_f: f64,
    pub lp_g: f64,
    /// `∫ g^{p-1} f` by quadrature; Hölder places it in `(‖g‖_p^p, ‖g‖_p^{p-1}‖f‖_p]`.
    pub holder_middle: f64,
}

impl CertificateMargins {
    pub fn lp_gap(&self) -> f64 {
        self.lp_f - self.lp_g
    }

    /// `‖g‖_p^{p-1} ‖f‖_p ≥ ∫ g^{p-1} f > ‖g‖_p^p`, with slack `1e-9` relative.
    pub fn holder_chain_holds(&self, p: f64) -> bool {
        let upper = self.lp_g.powf(p - 1.0) * self.lp_f;
        let lower = self.lp_g.powf(p);
        let slack = 1e-9 * upper.abs();
        self.holder_middle <= upper + slack && self.holder_middle > lower
    }

    fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.min_f > 0.0) {
            out.push(format!("min f = {:e} is not positive", self.min_f));
        }
        if !(self.max_hypothesis <= self.tolerance) {
            out.push(format!(
                "max(Ť f - Ť g) = {:e} exceeds tolerance {:e}",
                self.max_hypothesis, self.tolerance
            ));
        }
        if !(self.pairing < 0.0) {
            out.push(format!("pairing {:e} is not negative", self.pairing));
        }
        if !(self.lp_gap() > 0.0) {
            out.push(format!("L_p gap {:e} is not positive", self.lp_gap()));
        }
        out
    }
}

/// `f = g - εψ` with `Ť_q f ≤ Ť_q g` yet `‖f‖_p > ‖g‖_p`.
#[derive(Debug, Clone)]
pub struct CounterexampleCertificate {
    pub p: f64,
    pub q: f64,
    pub epsilon: f64,
    pub power_band: usize,
    pub g: Spectrum,
    /// Nonnegative bump on the witness region of `profile(g^{p-1})`.
    pub phi: Spectrum,
    /// `profile(φ)`, so that `Ť_q ψ = (2π)^n / Γ(-q/2)² · φ ≥ 0`.
    pub psi: Spectrum,
    pub f: Spectrum,
    pub margins: CertificateMargins,
}

fn gamma_sq(q: f64) -> Result<f64> {
    Ok(gamma_signed(-q / 2.0)?.value().powi(2))
}

/// Computes all four margins from the spectra alone.
fn measure(
    g: &Spectrum,
    psi: &Spectrum,
    f: &Spectrum,
    p: f64,
    q: f64,
    power_band: usize,
    rel_tol: f64,
) -> Result<CertificateMargins> {
    let n = g.n();
    let gs = StarFunction::with_refinement(g.clone(), REFINEMENT);
    let fs = StarFunction::with_refinement(f.clone(), REFINEMENT);
    let k = g.band_limit().max(f.band_limit());
    let op = MultiplierOperator::tq_normalized(n, q, k)?;
    let tf = op.apply(f)?;
    let tg = op.apply(g)?;
    let max_hypothesis = min_max(&tf.sub(&tg)?, REFINEMENT).max;
    let tolerance = hypothesis_tolerance(rel_tol, &tf, &tg);

    let h = pointwise_power(&gs, p - 1.0, power_band)?.function.into_spectrum();
    let pairing = h.pairing(psi)?;

    // ∫ g^{p-1} f on a fine grid, independent of the expansion of g^{p-1}
    let res = 4 * k.max(power_band).max(2) + 8;
    let res = if g.kind() == Kind::FullS2 { res.min(4 * k + 8) } else { res };
    let grid = Grid::for_kind(n, g.kind(), res)?;
    let gv = synthesize_on(g, &grid)?.map(|v| v.powf(p - 1.0));
    let fv = synthesize_on(f, &grid)?;
    let holder_middle = integral(&gv.mul(&fv)?);

    Ok(CertificateMargins {
        min_f: fs.min(),
        max_hypothesis,
        tolerance,
        pairing,
        lp_f: lp_norm(&fs, p)?,
        lp_g: lp_norm(&gs, p)?,
        holder_middle,
    })
}

/// Builds `f = g - εψ` from a bump on the witness region of `g^{p-1}`.
pub fn synthesize_counterexample(
    g: &StarFunction,
    p: f64,
    q: f64,
    params: &SynthesisParams,
) -> Result<CounterexampleCertificate> {
    check_p(p)?;
    check_admissible(g.n(), q)?;
    if !g.strictly_positive() {
        return Err(Error::NotStrictlyPositive { min: g.min() });
    }
    let power_band = params
        .power_band
        .unwrap_or_else(|| default_power_band(g.band_limit(), p));
    let h = pointwise_power(g, p - 1.0, power_band)?.function;
    let report = pos_test(h.spectrum(), q, DEFAULT_REL_TOL, REFINEMENT)?;
    if report.verdict != Verdict::NonMember {
        return Err(Error::PosMember(report.verdict));
    }

    let mut failures = Vec::new();
    for attempt in 0..params.max_repairs {
        let kb = params.bump_band << attempt;
        let phi = match bump_on_region(&report.witness, params.smooth_width, kb) {
            Ok(phi) => phi,
            Err(Error::RegionTooSmall(msg)) => {
                failures.push(format!("K_b = {kb}: {msg}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let psi = positivity_profile(&phi, q)?;
        let psi_ex = min_max(&psi, REFINEMENT);
        let psi_sup = psi_ex.min.abs().max(psi_ex.max.abs());
        let g_ext = g.spectrum().with_band_limit(kb.max(g.band_limit()))?;

        let mut epsilon = 0.5 * g.min() / psi_sup;
        let mut f = None;
        for _ in 0..=10 {
            let candidate = g_ext.axpy(-epsilon, &psi)?;
            if min_max(&candidate, REFINEMENT).min > 0.0 {
                f = Some(candidate);
                break;
            }
            epsilon *= 0.5;
        }
        let Some(f) = f else {
            failures.push(format!("K_b = {kb}: no ε keeps f positive"));
            continue;
        };
        let margins = measure(&g_ext, &psi, &f, p, q, power_band, params.rel_tol)?;
        let fails = margins.failures();
        if fails.is_empty() {
            return Ok(CounterexampleCertificate {
                p,
                q,
                epsilon,
                power_band,
                g: g_ext,
                phi,
                psi,
                f,
                margins,
            });
        }
        failures.push(format!("K_b = {kb}: {}", fails.join("; ")));
    }
    Err(Error::SynthesisFailure(failures.join(" | ")))
}

impl CounterexampleCertificate {
    /// Constant `(2π)^n / Γ(-q/2)²` with `Ť_q ψ = constant · φ`.
    pub fn transfer_constant(&self) -> Result<f64> {
        Ok(parseval_constant(self.g.n()) / gamma_sq(self.q)?)
    }

    pub fn to_text(&self) -> String {
        let m = &self.margins;
        let mut out = String::from("# counterexample certificate\n");
        let _ = writeln!(out, "n: {}", self.g.n());
        let _ = writeln!(out, "kind: {}", self.g.kind());
        let _ = writeln!(out, "p: {}", fmt17(self.p));
        let _ = writeln!(out, "q: {}", fmt17(self.q));
        let _ = writeln!(out, "epsilon: {}", fmt17(self.epsilon));
        let _ = writeln!(out, "power_band: {}", self.power_band);
        let _ = writeln!(out, "min_f: {}", fmt17(m.min_f));
        let _ = writeln!(out, "max_hypothesis: {}", fmt17(m.max_hypothesis));
        let _ = writeln!(out, "tolerance: {}", fmt17(m.tolerance));
        let _ = writeln!(out, "pairing: {}", fmt17(m.pairing));
        let _ = writeln!(out, "lp_f: {}", fmt17(m.lp_f));
        let _ = writeln!(out, "lp_g: {}", fmt17(m.lp_g));
        let _ = writeln!(out, "lp_gap: {}", fmt17(m.lp_gap()));
        let _ = writeln!(out, "holder_middle: {}", fmt17(m.holder_middle));
        for (name, s) in [("g", &self.g), ("phi", &self.phi), ("psi", &self.psi), ("f", &self.f)] {
            let _ = writeln!(out, "[{name}]");
            out.push_str(&text::to_text(s));
        }
        out
    }
}

fn take_field<'a>(fields: &[(&'a str, &'a str)], key: &str) -> Result<&'a str> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| Error::CertificateInvalid(format!("missing field '{key}'")))
}

fn parse_f64(s: &str, key: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| Error::CertificateInvalid(format!("field '{key}' is not a number: '{s}'")))
}

/// Re-checks a serialized certificate from its spectra alone; stored
/// margins are ignored.
pub fn verify_certificate(text_form: &str) -> Result<CounterexampleCertificate> {
    let mut fields = Vec::new();
    let mut sections: Vec<(&str, String)> = Vec::new();
    for line in text_form.lines() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(name) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            sections.push((name, String::new()));
        } else if let Some((_, body)) = sections.last_mut() {
            body.push_str(t);
            body.push('\n');
        } else if let Some((k, v)) = t.split_once(':') {
            fields.push((k.trim(), v.trim()));
        }
    }
    let spectrum = |name: &str| -> Result<Spectrum> {
        let body = sections
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, b)| b.as_str())
            .ok_or_else(|| Error::CertificateInvalid(format!("missing section [{name}]")))?;
        text::from_text(body)
    };
    let p = parse_f64(take_field(&fields, "p")?, "p")?;
    let q = parse_f64(take_field(&fields, "q")?, "q")?;
    let epsilon = parse_f64(take_field(&fields, "epsilon")?, "epsilon")?;
    let power_band: usize = take_field(&fields, "power_band")?
        .parse()
        .map_err(|_| Error::CertificateInvalid("power_band is not an integer".into()))?;
    let g = spectrum("g")?;
    let phi = spectrum("phi")?;
    let psi = spectrum("psi")?;
    let f = spectrum("f")?;
    check_p(p)?;
    check_admissible(g.n(), q)?;
    if !(epsilon > 0.0) {
        return Err(Error::CertificateInvalid(format!("ε = {epsilon} is not positive")));
    }

    let phi_ex = min_max(&phi, REFINEMENT);
    if !(phi_ex.max > 0.0) || phi_ex.min < -1e-10 * phi_ex.max {
        return Err(Error::CertificateInvalid(format!(
            "φ is not a nonnegative bump (min {:e}, max {:e})",
            phi_ex.min, phi_ex.max
        )));
    }
    let psi_check = positivity_profile(&phi, q)?;
    let dev = psi_check.sub(&psi)?;
    if dev.energy().sqrt() > 1e-10 * psi_check.energy().sqrt() {
        return Err(Error::CertificateInvalid("ψ is not the profile of φ".into()));
    }
    let f_check = g.axpy(-epsilon, &psi)?;
    let dev = f_check.sub(&f)?;
    if dev.energy().sqrt() > 1e-12 * f_check.energy().sqrt() {
        return Err(Error::CertificateInvalid("f differs from g - εψ".into()));
    }

    let margins = measure(&g, &psi, &f, p, q, power_band, DEFAULT_REL_TOL)?;
    let fails = margins.failures();
    if !fails.is_empty() {
        return Err(Error::CertificateInvalid(fails.join("; ")));
    }
    Ok(CounterexampleCertificate {
        p,
        q,
        epsilon,
        power_band,
        g,
        phi,
        psi,
        f,
        margins,
    })
}

/// Outcome of [`slicing_bound`].
#[derive(Debug, Clone)]
pub struct SlicingReport {
    /// `‖f‖_p`.
    pub lhs: f64,
    /// `|S^{n-1}|^{1/p} max Ť_q f / c_{n,q}`.
    pub rhs: f64,
    /// Membership of `f^{p-1}`, the precondition of the bound.
    pub precondition: Verdict,
}

impl SlicingReport {
    /// `lhs ≤ rhs` up to `1e-12` relative.
    pub fn bound_holds(&self) -> bool {
        self.lhs <= self.rhs * (1.0 + 1e-12)
    }

    /// True when the precondition is met, the only case the bound is asserted.
    pub fn asserted(&self) -> bool {
        self.precondition == Verdict::Member
    }
}

pub fn slicing_bound(f: &StarFunction, p: f64, q: f64) -> Result<SlicingReport> {
    check_p(p)?;
    let n = f.n();
    let c = c_nq(n, q)?;
    let tf = MultiplierOperator::tq_normalized(n, q, f.band_limit())?.apply(f.spectrum())?;
    let max_t = min_max(&tf, REFINEMENT).max;
    let rhs = sphere_surface(n).powf(1.0 / p) * max_t / c;
    let power = pointwise_power(f, p - 1.0, default_power_band(f.band_limit(), p))?;
    let precondition = pos_test(power.function.spectrum(), q, DEFAULT_REL_TOL, REFINEMENT)?.verdict;
    Ok(SlicingReport {
        lhs: lp_norm(f, p)?,
        rhs,
        precondition,
    })
}

/// `(∫ T_q f dx, d_{n,q} (2π)^n ∫ f dx)`: the left side by quadrature of the
/// transformed function, the right side from the degree-0 coefficient.
pub fn mean_identity_check(f: &Spectrum, q: f64) -> Result<(f64, f64)> {
    let n = f.n();
    let tf = MultiplierOperator::tq(n, q, f.band_limit())?.apply(f)?;
    let lhs = integral(&synthesize(&tf, f.band_limit() + 1)?);
    let rhs = d_nq(n, q)? * parseval_constant(n) * f.mean_integral();
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn star(c: Vec<f64>) -> StarFunction {
        StarFunction::new(Spectrum::zonal(3, c).unwrap())
    }

    #[test]
    fn identical_balls() {
        let one = star(vec![1.0]);
        let r = check_comparison(&one, &one, 2.0, -1.0, 1e-8).unwrap();
        assert_eq!(r.hypothesis_margin, 0.0);
        assert_eq!(r.lp_f, r.lp_g);
        assert!(r.premises_hold() && r.conclusion_holds());
    }

    #[test]
    fn ball_inside_perturbed_ball() {
        // Ť(1 + 0.4P₂) = c(1 + 0.4·(-1/2)·... ) so scale g until Ťg ≥ Ť𝟙
        let one = star(vec![1.0]);
        let op = MultiplierOperator::tq_normalized(3, -1.0, 2).unwrap();
        let base = Spectrum::zonal(3, vec![1.0, 0.4]).unwrap();
        let t = op.apply(&base).unwrap();
        let scale = op.multiplier(0) / min_max(&t, 8).min;
        let g = StarFunction::new(base.scaled(scale * (1.0 + 1e-12)));
        let r = check_comparison(&one, &g, 2.0, -1.0, 1e-8).unwrap();
        assert!(r.premises_hold());
        assert!(r.conclusion_holds());
        assert!(r.lp_f < r.lp_g);
    }

    #[test]
    fn invalid_exponent() {
        let one = star(vec![1.0]);
        assert!(check_comparison(&one, &one, 1.0, -1.0, 1e-8).is_err());
    }

    #[test]
    fn constants_are_not_counterexamples() {
        let one = star(vec![1.0]);
        let e = synthesize_counterexample(&one, 2.0, -1.0, &SynthesisParams::default());
        assert!(matches!(e, Err(Error::PosMember(Verdict::Member))));
    }

    #[test]
    fn perturbed_legendre_counterexample() {
        let g = star(vec![1.0, 0.6]);
        let cert = synthesize_counterexample(&g, 2.0, -1.0, &SynthesisParams::default()).unwrap();
        let m = cert.margins;
        assert!(m.min_f > 0.0);
        assert!(m.max_hypothesis <= 1e-8 * 20.0);
        assert!(m.pairing < 0.0);
        assert!(m.lp_gap() > 0.0);
        assert!(m.holder_chain_holds(2.0));
        let again = verify_certificate(&cert.to_text()).unwrap();
        assert_eq!(again.f, cert.f);
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let g = star(vec![1.0, 0.6]);
        let cert = synthesize_counterexample(&g, 2.0, -1.0, &SynthesisParams::default()).unwrap();
        let text = cert.to_text();
        let bad = text.replacen(
            &format!("epsilon: {}", fmt17(cert.epsilon)),
            &format!("epsilon: {}", fmt17(cert.epsilon * 2.0)),
            1,
        );
        assert!(matches!(verify_certificate(&bad), Err(Error::CertificateInvalid(_))));
    }

    #[test]
    fn slicing_equality_for_constants() {
        for (q, p) in [(-1.0, 2.0), (1.0, 1.5), (-2.5, 3.0)] {
            let r = slicing_bound(&star(vec![1.0]), p, q).unwrap();
            let expected = (4.0 * PI).powf(1.0 / p);
            assert!((r.lhs - expected).abs() <= 1e-12 * expected);
            assert!((r.rhs - expected).abs() <= 1e-12 * expected);
            assert!(r.asserted());
        }
    }

    #[test]
    fn mean_identity() {
        let (l, r) = mean_identity_check(&Spectrum::zonal(3, vec![1.0]).unwrap(), -1.0).unwrap();
        let expected = 2.0 * PI * PI * 4.0 * PI;
        assert!((l - expected).abs() < 1e-12 * expected);
        assert!((r - expected).abs() < 1e-12 * expected);
        let (l, r) = mean_identity_check(&Spectrum::zonal(3, vec![0.0, 1.0]).unwrap(), 1.0).unwrap();
        assert!(l.abs() < 1e-12 && r == 0.0);
    }
}
