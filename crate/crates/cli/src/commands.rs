use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use spherepos::acceptance;
use spherepos::comparison::{
    check_comparison, slicing_bound, synthesize_counterexample, verify_certificate, SynthesisParams,
};
use spherepos::gallery::{bp_instance, perturbed_ball, Provenance, StarBody};
use spherepos::numeric::fmt17;
use spherepos::operators::{MultiplierOperator, Normalization, Transform};
use spherepos::positivity::{pos_test, Verdict};
use spherepos::spherefun::{min_max, synthesize, text, Kind, Point, Spectrum, StarFunction};
use spherepos::Error;

use crate::config::RunConfig;
use crate::funcspec;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Verified = 0,
    Falsified = 1,
    Indeterminate = 2,
    Usage = 3,
}

impl From<Verdict> for Exit {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Member => Exit::Verified,
            Verdict::NonMember => Exit::Falsified,
            Verdict::Indeterminate => Exit::Indeterminate,
        }
    }
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body).with_context(|| format!("cannot write {}", path.display()))
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush().with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn announce(cfg: &RunConfig, exts: &[&str]) {
    for ext in exts {
        eprintln!("wrote {}", cfg.output_path(ext).display());
    }
}

fn input_function(cfg: &RunConfig, spec: Option<&str>) -> Result<Spectrum> {
    match (spec, &cfg.input) {
        (Some(s), _) => funcspec::load(s, cfg),
        (None, Some(path)) => {
            let s = funcspec::read_spectrum(path)?;
            if let Some(n) = cfg.n {
                if s.n() != n {
                    bail!("{} has dimension {} but --n is {n}", path.display(), s.n());
                }
            }
            Ok(s)
        }
        (None, None) => bail!("a function is required (--f SPEC or --input FILE)"),
    }
}

fn star(cfg: &RunConfig, s: Spectrum) -> StarFunction {
    StarFunction::with_refinement(s, cfg.refinement)
}

pub fn transform(cfg: &RunConfig, spec: Option<&str>, kind: &str, normalization: &str) -> Result<Exit> {
    let f = match (spec, &cfg.input) {
        (None, None) => None,
        _ => Some(input_function(cfg, spec)?),
    };
    let n = f.as_ref().map(Spectrum::n).or(cfg.n).context("--n is required")?;
    let capacity = f.as_ref().map_or(cfg.band_limit, |f| f.band_limit());
    let transform = match kind {
        "tq" => Transform::Tq(cfg.require_q()?),
        "radon" => Transform::Radon,
        other => bail!("unknown transform '{other}' (expected tq or radon)"),
    };
    let op = MultiplierOperator::new(n, transform, Normalization::from_tag(normalization)?, capacity)?;
    let rows: Vec<Vec<String>> = (0..=capacity)
        .step_by(2)
        .map(|k| vec![k.to_string(), fmt17(op.multiplier(k))])
        .collect();
    write_csv(&cfg.output_path("csv"), &["k", "lambda"], &rows)?;
    let mut body = op.table_text();
    if let Some(f) = f {
        body.push_str("# transformed function\n");
        body.push_str(&text::to_text(&op.apply(&f)?));
    }
    write_file(&cfg.output_path("txt"), &body)?;
    println!("{} multipliers for n = {n}, k = 0..{capacity}", rows.len());
    announce(cfg, &["txt", "csv"]);
    Ok(Exit::Verified)
}

/// Profile samples: `t,profile` on zonal nodes, `theta,phi,profile` on S².
fn profile_rows(profile: &Spectrum) -> Result<(Vec<&'static str>, Vec<Vec<String>>)> {
    let res = (profile.band_limit() + 1).max(33);
    let values = synthesize(profile, res)?;
    let grid = values.grid();
    let mut rows: Vec<(Point, f64)> = (0..grid.len()).map(|i| (grid.point(i), values.values()[i])).collect();
    match profile.kind() {
        Kind::Zonal => {
            rows.sort_by(|a, b| match (a.0, b.0) {
                (Point::Zonal(x), Point::Zonal(y)) => x.total_cmp(&y),
                _ => std::cmp::Ordering::Equal,
            });
            let out = rows
                .into_iter()
                .filter_map(|(p, v)| match p {
                    Point::Zonal(t) => Some(vec![fmt17(t), fmt17(v)]),
                    Point::Sphere(_) => None,
                })
                .collect();
            Ok((vec!["t", "profile"], out))
        }
        Kind::FullS2 => {
            let out = rows
                .into_iter()
                .filter_map(|(p, v)| match p {
                    Point::Sphere([x, y, z]) => {
                        let theta = z.clamp(-1.0, 1.0).acos();
                        let phi = y.atan2(x).rem_euclid(2.0 * PI);
                        Some(vec![fmt17(theta), fmt17(phi), fmt17(v)])
                    }
                    Point::Zonal(_) => None,
                })
                .collect();
            Ok((vec!["theta", "phi", "profile"], out))
        }
    }
}

pub fn postest(cfg: &RunConfig, spec: Option<&str>) -> Result<Exit> {
    let h = input_function(cfg, spec)?;
    let q = cfg.require_q()?;
    let report = pos_test(&h, q, cfg.tolerance, cfg.refinement)?;
    write_file(&cfg.output_path("txt"), &report.to_text())?;
    let (header, rows) = profile_rows(&report.profile)?;
    write_csv(&cfg.output_path("csv"), &header, &rows)?;
    println!(
        "verdict: {} margin: {} tolerance: {}",
        report.verdict,
        fmt17(report.margin),
        fmt17(report.tolerance)
    );
    announce(cfg, &["txt", "csv"]);
    Ok(report.verdict.into())
}

pub fn compare(cfg: &RunConfig, f_spec: &str, g_spec: &str) -> Result<Exit> {
    let f = star(cfg, funcspec::load(f_spec, cfg)?);
    let g = star(cfg, funcspec::load(g_spec, cfg)?);
    let (p, q) = (cfg.require_p()?, cfg.require_q()?);
    let r = check_comparison(&f, &g, p, q, cfg.tolerance)?;
    write_file(&cfg.output_path("txt"), &r.to_text())?;
    let row = vec![
        r.n.to_string(),
        fmt17(p),
        fmt17(q),
        fmt17(r.hypothesis_margin),
        fmt17(r.tolerance),
        r.f_pos.verdict.to_string(),
        fmt17(r.f_pos.margin),
        fmt17(r.lp_f),
        fmt17(r.lp_g),
        r.hypothesis_holds().to_string(),
        r.conclusion_holds().to_string(),
        r.premises_hold().to_string(),
    ];
    let header = [
        "n",
        "p",
        "q",
        "hypothesis_margin",
        "tolerance",
        "f_pow_verdict",
        "f_pow_margin",
        "lp_f",
        "lp_g",
        "hypothesis_holds",
        "conclusion_holds",
        "premises_hold",
    ];
    write_csv(&cfg.output_path("csv"), &header, &[row])?;
    println!(
        "premises hold: {}  ‖f‖_p = {}  ‖g‖_p = {}  conclusion holds: {}",
        r.premises_hold(),
        fmt17(r.lp_f),
        fmt17(r.lp_g),
        r.conclusion_holds()
    );
    announce(cfg, &["txt", "csv"]);
    Ok(if r.implication_violated() {
        Exit::Falsified
    } else if r.premises_hold() {
        Exit::Verified
    } else if r.f_pos.verdict == Verdict::Indeterminate {
        Exit::Indeterminate
    } else {
        Exit::Falsified
    })
}

pub fn synthesize_cmd(cfg: &RunConfig, g_spec: &str, bump_band: Option<usize>, smooth_width: Option<f64>) -> Result<Exit> {
    let g = star(cfg, funcspec::load(g_spec, cfg)?);
    let (p, q) = (cfg.require_p()?, cfg.require_q()?);
    let defaults = SynthesisParams::default();
    let params = SynthesisParams {
        bump_band: bump_band.unwrap_or(defaults.bump_band),
        smooth_width: smooth_width.unwrap_or(defaults.smooth_width),
        rel_tol: cfg.tolerance,
        ..defaults
    };
    let cert = match synthesize_counterexample(&g, p, q, &params) {
        Ok(cert) => cert,
        Err(Error::PosMember(v)) => {
            println!("g^(p-1) is {v}: no counterexample is constructed");
            return Ok(v.into());
        }
        Err(Error::SynthesisFailure(msg)) => {
            println!("synthesis failed: {msg}");
            return Ok(Exit::Indeterminate);
        }
        Err(e) => return Err(e.into()),
    };
    let m = cert.margins;
    write_file(&cfg.output_path("cert"), &cert.to_text())?;
    let summary = format!(
        "counterexample: f = g - εψ with ε = {}\nmin f = {}\nmax(Ť f - Ť g) = {} (tolerance {})\n∫ g^(p-1) ψ = {}\n‖f‖_p = {}\n‖g‖_p = {}\ngap = {}\nHölder chain holds: {}\n",
        fmt17(cert.epsilon),
        fmt17(m.min_f),
        fmt17(m.max_hypothesis),
        fmt17(m.tolerance),
        fmt17(m.pairing),
        fmt17(m.lp_f),
        fmt17(m.lp_g),
        fmt17(m.lp_gap()),
        m.holder_chain_holds(p)
    );
    write_file(&cfg.output_path("txt"), &summary)?;
    let header = [
        "n", "p", "q", "epsilon", "min_f", "max_hypothesis", "tolerance", "pairing", "lp_f", "lp_g", "lp_gap",
        "holder_middle",
    ];
    let row = vec![
        g.n().to_string(),
        fmt17(p),
        fmt17(q),
        fmt17(cert.epsilon),
        fmt17(m.min_f),
        fmt17(m.max_hypothesis),
        fmt17(m.tolerance),
        fmt17(m.pairing),
        fmt17(m.lp_f),
        fmt17(m.lp_g),
        fmt17(m.lp_gap()),
        fmt17(m.holder_middle),
    ];
    write_csv(&cfg.output_path("csv"), &header, &[row])?;
    print!("{summary}");
    announce(cfg, &["cert", "txt", "csv"]);
    Ok(Exit::Falsified)
}

pub fn verify(cfg: &RunConfig) -> Result<Exit> {
    let path = cfg.input.as_ref().context("--input CERTIFICATE is required")?;
    let body = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    match verify_certificate(&body) {
        Ok(cert) => {
            println!(
                "certificate valid: ‖f‖_p - ‖g‖_p = {} with max(Ť f - Ť g) = {}",
                fmt17(cert.margins.lp_gap()),
                fmt17(cert.margins.max_hypothesis)
            );
            Ok(Exit::Verified)
        }
        Err(Error::CertificateInvalid(msg)) => {
            println!("certificate rejected: {msg}");
            Ok(Exit::Falsified)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn slicing(cfg: &RunConfig, f_spec: &str) -> Result<Exit> {
    let f = star(cfg, funcspec::load(f_spec, cfg)?);
    let (p, q) = (cfg.require_p()?, cfg.require_q()?);
    let r = slicing_bound(&f, p, q)?;
    let body = format!(
        "n: {}\np: {}\nq: {}\nlhs: {}\nrhs: {}\nprecondition: {}\nasserted: {}\nbound_holds: {}\n",
        f.n(),
        fmt17(p),
        fmt17(q),
        fmt17(r.lhs),
        fmt17(r.rhs),
        r.precondition,
        r.asserted(),
        r.bound_holds()
    );
    write_file(&cfg.output_path("txt"), &body)?;
    let header = ["n", "p", "q", "lhs", "rhs", "precondition", "bound_holds"];
    let row = vec![
        f.n().to_string(),
        fmt17(p),
        fmt17(q),
        fmt17(r.lhs),
        fmt17(r.rhs),
        r.precondition.to_string(),
        r.bound_holds().to_string(),
    ];
    write_csv(&cfg.output_path("csv"), &header, &[row])?;
    print!("{body}");
    announce(cfg, &["txt", "csv"]);
    Ok(match (r.asserted(), r.bound_holds()) {
        (true, true) => Exit::Verified,
        (true, false) => Exit::Falsified,
        (false, _) => Exit::Indeterminate,
    })
}

/// Unit ball `K` against `L = c(1 + a C̃_k)`, with `c` the smallest scale
/// giving `L` every central section at least as large as those of `K`.
pub fn bp_demo(cfg: &RunConfig, a: f64, k: usize) -> Result<Exit> {
    let n = cfg.n.unwrap_or(3);
    let ball = StarBody::ball(n, Kind::Zonal)?;
    let shape = perturbed_ball(n, a, k, 1.0)?;
    let shape_areas = min_max(&shape.section_areas()?, cfg.refinement);
    let ball_area = ball.section_areas()?.zonal_coeff(0);
    let c = (ball_area / shape_areas.min).powf(1.0 / (n - 1) as f64) * (1.0 + 1e-9);
    let l = StarBody::new(shape.radial.scaled(c), Provenance::Custom)?;
    let bp = bp_instance(&ball, &l)?;
    let r = check_comparison(&bp.f, &bp.g, bp.p, bp.q, cfg.tolerance)?;
    let intersection = l.intersection_body_test()?;

    let mut rows = Vec::new();
    let mut body = format!("n: {n}\np: {}\nq: {}\n", fmt17(bp.p), fmt17(bp.q));
    for (name, b) in [("K", &ball), ("L", &l)] {
        let areas = min_max(&b.section_areas()?, cfg.refinement);
        let volume = b.volume()?;
        body.push_str(&format!(
            "{name}: volume {} section areas [{}, {}]\n",
            fmt17(volume),
            fmt17(areas.min),
            fmt17(areas.max)
        ));
        rows.push(vec![name.to_string(), fmt17(volume), fmt17(areas.min), fmt17(areas.max)]);
    }
    body.push_str(&format!(
        "L scale: {}\nL intersection body: {} (margin {})\nsections of K <= sections of L: {}\nvolumes ordered: {}\n",
        fmt17(c),
        intersection.verdict,
        fmt17(intersection.margin),
        r.hypothesis_holds(),
        r.conclusion_holds()
    ));
    write_file(&cfg.output_path("txt"), &body)?;
    write_csv(&cfg.output_path("csv"), &["body", "volume", "min_section", "max_section"], &rows)?;
    print!("{body}");
    announce(cfg, &["txt", "csv"]);
    Ok(if r.premises_hold() && r.conclusion_holds() {
        Exit::Verified
    } else if r.implication_violated() {
        Exit::Falsified
    } else {
        Exit::Indeterminate
    })
}

pub fn selftest() -> Result<Exit> {
    let mut failed = 0;
    for (id, _, _) in acceptance::CRITERIA {
        let outcome = acceptance::run(id).context("criterion missing")?;
        println!("{outcome}");
        if !outcome.passed {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", acceptance::CRITERIA.len() - failed, acceptance::CRITERIA.len());
    Ok(if failed == 0 { Exit::Verified } else { Exit::Falsified })
}
