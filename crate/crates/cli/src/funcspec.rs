//! Function specifications accepted on the command line:
//!
//! | spec                   | function                                   |
//! |------------------------|--------------------------------------------|
//! | `ball`                 | the constant 1                             |
//! | `perturbed:a:k[:e]`    | `(1 + a C̃_k)^e`, e defaults to 1           |
//! | `lr:r`                 | radial function of the ℓ_r ball (n = 3)    |
//! | `random:d`             | seeded positive zonal polynomial, degree d |
//! | `file:path`            | a spectrum in text form                    |

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spherepos::gallery::{lr_ball_radial, perturbed_ball_with_band};
use spherepos::spherefun::{text, Kind, Spectrum};

use crate::config::RunConfig;

pub fn read_spectrum(path: &std::path::Path) -> Result<Spectrum> {
    let body = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    text::from_text(&body).with_context(|| format!("in {}", path.display()))
}

fn number(s: &str, what: &str) -> Result<f64> {
    s.parse().with_context(|| format!("bad {what} '{s}'"))
}

fn require_n(cfg: &RunConfig, spec: &str) -> Result<usize> {
    cfg.n.with_context(|| format!("--n is required for '{spec}'"))
}

/// Lifts to S² when the configuration asks for it.
fn adapt(s: Spectrum, cfg: &RunConfig) -> Result<Spectrum> {
    if cfg.kind == Kind::FullS2 && s.kind() == Kind::Zonal {
        Ok(s.zonal_to_s2()?)
    } else {
        Ok(s)
    }
}

pub fn load(spec: &str, cfg: &RunConfig) -> Result<Spectrum> {
    let mut parts = spec.split(':');
    let head = parts.next().unwrap_or_default();
    let args: Vec<&str> = parts.collect();
    let s = match (head, args.as_slice()) {
        ("ball", []) => Spectrum::constant(require_n(cfg, spec)?, cfg.kind, 0, 1.0)?,
        ("perturbed", [a, k, rest @ ..]) if rest.len() <= 1 => {
            let exponent = rest.first().map(|e| number(e, "exponent")).transpose()?.unwrap_or(1.0);
            let k: usize = k.parse().with_context(|| format!("bad degree '{k}'"))?;
            let body = perturbed_ball_with_band(require_n(cfg, spec)?, number(a, "amplitude")?, k, exponent, cfg.band_limit)?;
            adapt(body.radial.into_spectrum(), cfg)?
        }
        ("lr", [r]) => {
            if cfg.n.is_some_and(|n| n != 3) {
                bail!("'{spec}' is only available for n = 3");
            }
            lr_ball_radial(number(r, "exponent")?, cfg.band_limit)?.into_spectrum()
        }
        ("random", [d]) => {
            let d: usize = d.parse().with_context(|| format!("bad degree '{d}'"))?;
            if d % 2 != 0 {
                bail!("degree of '{spec}' must be even");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut c: Vec<f64> = (0..=d / 2).map(|_| rng.gen_range(-1.0..1.0)).collect();
            // |C̃_k| ≤ 1, so a dominant constant keeps the function positive
            let tail: f64 = c[1..].iter().map(|v| v.abs()).sum();
            c[0] = 1.0;
            if tail > 0.0 {
                let shrink = rng.gen_range(0.1..0.9) / tail;
                c[1..].iter_mut().for_each(|v| *v *= shrink);
            }
            adapt(Spectrum::zonal(require_n(cfg, spec)?, c)?, cfg)?
        }
        _ if spec.starts_with("file:") => read_spectrum(std::path::Path::new(&spec["file:".len()..]))?,
        _ => bail!("unknown function spec '{spec}' (expected ball, perturbed:a:k[:e], lr:r, random:d or file:path)"),
    };
    if let Some(n) = cfg.n {
        if s.n() != n {
            bail!("'{spec}' has dimension {} but --n is {n}", s.n());
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::CommonArgs;

    fn cfg(n: usize) -> RunConfig {
        let args = CommonArgs {
            n: Some(n),
            band_limit: Some(8),
            ..Default::default()
        };
        RunConfig::resolve("t", &args, None).unwrap()
    }

    #[test]
    fn specs() {
        assert_eq!(load("ball", &cfg(4)).unwrap().zonal_coeff(0), 1.0);
        let p = load("perturbed:0.6:2", &cfg(3)).unwrap();
        assert_eq!(p.zonal_coeff(2), 0.6);
        let q = load("perturbed:0.2:2:3", &cfg(5)).unwrap();
        assert_eq!(q.band_limit(), 6);
        let r = load("random:6", &cfg(3)).unwrap();
        assert_eq!(r, load("random:6", &cfg(3)).unwrap());
        assert!(load("lr:2", &cfg(4)).is_err());
        assert!(load("cube", &cfg(3)).is_err());
        assert!(load("perturbed:1.5:2", &cfg(3)).is_err());
    }
}
