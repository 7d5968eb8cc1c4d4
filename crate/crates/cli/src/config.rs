//! Run configuration: command-line flags, then an optional `key = value`
//! config file, then `SPHEREPOS_TOL`, then built-in defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use spherepos::operators::check_admissible;
use spherepos::spherefun::Kind;

pub const TOL_ENV: &str = "SPHEREPOS_TOL";
pub const DEFAULT_BAND: usize = 64;
pub const DEFAULT_REFINEMENT: usize = 8;
pub const DEFAULT_TOL: f64 = 1e-8;

/// Flags shared by every subcommand. Each one may also be given in the
/// config file under the key shown in brackets.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Ambient dimension [n]
    #[arg(long)]
    pub n: Option<usize>,
    /// Transform exponent; must exceed -n and avoid 0, 2, 4, ... [q]
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    /// L_p exponent, p > 1 [p]
    #[arg(long)]
    pub p: Option<f64>,
    /// Band limit of generated expansions (even) [K]
    #[arg(long = "K", visible_alias = "band-limit")]
    pub band_limit: Option<usize>,
    /// Scan refinement for minima and maxima [refinement]
    #[arg(long)]
    pub refinement: Option<usize>,
    /// Relative tolerance for verdicts [tolerance]
    #[arg(long = "tol")]
    pub tolerance: Option<f64>,
    /// Representation of generated functions: zonal or s2 [kind]
    #[arg(long)]
    pub kind: Option<String>,
    /// Input file (spectrum or certificate) [input]
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Prefix of the report files [output]
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
    /// Seed for `random:` function specs [seed]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Config file of `key = value` lines
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: String,
    pub n: Option<usize>,
    pub q: Option<f64>,
    pub p: Option<f64>,
    pub band_limit: usize,
    pub refinement: usize,
    pub tolerance: f64,
    pub kind: Kind,
    pub input: Option<PathBuf>,
    pub output: PathBuf,
    pub seed: u64,
}

const KEYS: [&str; 10] = [
    "n", "q", "p", "K", "refinement", "tolerance", "kind", "input", "output", "seed",
];

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("{}:{}: expected `key = value`", path.display(), i + 1);
        };
        let key = key.trim();
        if !KEYS.contains(&key) {
            bail!("{}:{}: unknown key '{key}'", path.display(), i + 1);
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn from_file<T: std::str::FromStr>(file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
    file.get(key)
        .map(|v| {
            v.parse()
                .map_err(|_| anyhow::anyhow!("config key '{key}': cannot parse '{v}'"))
        })
        .transpose()
}

impl RunConfig {
    /// Merges flags, config file, environment and defaults, then validates.
    pub fn resolve(command: &str, args: &CommonArgs, env_tol: Option<String>) -> Result<Self> {
        let file = match &args.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        let env_tol = env_tol
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| anyhow::anyhow!("{TOL_ENV}: cannot parse '{v}'"))
            })
            .transpose()?;
        let kind = match args.kind.clone().or(from_file(&file, "kind")?) {
            Some(tag) => Kind::from_tag(&tag)?,
            None => Kind::Zonal,
        };
        let cfg = RunConfig {
            command: command.to_string(),
            n: args.n.or(from_file(&file, "n")?),
            q: args.q.or(from_file(&file, "q")?),
            p: args.p.or(from_file(&file, "p")?),
            band_limit: args
                .band_limit
                .or(from_file(&file, "K")?)
                .unwrap_or(DEFAULT_BAND),
            refinement: args
                .refinement
                .or(from_file(&file, "refinement")?)
                .unwrap_or(DEFAULT_REFINEMENT),
            tolerance: args
                .tolerance
                .or(from_file(&file, "tolerance")?)
                .or(env_tol)
                .unwrap_or(DEFAULT_TOL),
            kind,
            input: args.input.clone().or(from_file(&file, "input")?),
            output: args
                .output
                .clone()
                .or(from_file(&file, "output")?)
                .unwrap_or_else(|| PathBuf::from(command)),
            seed: args.seed.or(from_file(&file, "seed")?).unwrap_or(0),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if self.band_limit % 2 != 0 {
            bail!("K must be even (got {})", self.band_limit);
        }
        if self.refinement == 0 {
            bail!("refinement must be positive");
        }
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            bail!("tolerance must be positive (got {})", self.tolerance);
        }
        if let Some(p) = self.p {
            if !(p > 1.0) || !p.is_finite() {
                bail!("p must exceed 1 (got {p})");
            }
        }
        if let Some(q) = self.q {
            // dimension-free part first so the message does not depend on n
            check_admissible(self.n.unwrap_or(usize::MAX >> 1), q)?;
        }
        if let Some(n) = self.n {
            if !(2..=64).contains(&n) {
                bail!("n must lie in 2..=64 (got {n})");
            }
            if self.kind == Kind::FullS2 && n != 3 {
                bail!("kind s2 requires n = 3");
            }
        }
        Ok(())
    }

    pub fn require_q(&self) -> Result<f64> {
        self.q.context("--q is required")
    }

    pub fn require_p(&self) -> Result<f64> {
        self.p.context("--p is required")
    }

    pub fn output_path(&self, ext: &str) -> PathBuf {
        let mut s = self.output.clone().into_os_string();
        s.push(".");
        s.push(ext);
        PathBuf::from(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn precedence() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "# comment\nn = 5\nq = -1\ntolerance = 1e-6\nK = 16").unwrap();
        let args = CommonArgs {
            n: Some(3),
            config: Some(file.path().to_path_buf()),
            ..Default::default()
        };
        let cfg = RunConfig::resolve("postest", &args, Some("1e-4".into())).unwrap();
        assert_eq!(cfg.n, Some(3));
        assert_eq!(cfg.q, Some(-1.0));
        assert_eq!(cfg.tolerance, 1e-6);
        assert_eq!(cfg.band_limit, 16);
        assert_eq!(cfg.output, PathBuf::from("postest"));

        let bare = CommonArgs::default();
        let cfg = RunConfig::resolve("postest", &bare, Some("1e-4".into())).unwrap();
        assert_eq!(cfg.tolerance, 1e-4);
        assert_eq!(RunConfig::resolve("x", &bare, None).unwrap().tolerance, DEFAULT_TOL);
    }

    #[test]
    fn rejects_bad_values() {
        let q2 = CommonArgs {
            q: Some(2.0),
            ..Default::default()
        };
        let err = RunConfig::resolve("postest", &q2, None).unwrap_err();
        assert!(err.to_string().contains("q must avoid nonnegative even integers"));
        let odd = CommonArgs {
            band_limit: Some(5),
            ..Default::default()
        };
        assert!(RunConfig::resolve("postest", &odd, None).is_err());
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "bogus = 1").unwrap();
        let args = CommonArgs {
            config: Some(file.path().to_path_buf()),
            ..Default::default()
        };
        assert!(RunConfig::resolve("postest", &args, None).is_err());
    }
}
