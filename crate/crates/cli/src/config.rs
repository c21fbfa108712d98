//! Argument parsing and the resolved run configuration.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hardy_sphere::certify::Precision;
use rug::Rational;

#[derive(Debug, Parser)]
#[command(name = "hardy-sphere", version, about = "Sharp Hardy-Rellich and uncertainty constants on the sphere")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Optimal constants, threshold index and uncertainty constants
    Constants,
    /// Truncated Rayleigh-quotient certificates μ_N and C(N) = 1/μ_N
    Certify,
    /// Run verification suites
    Verify,
    /// Table of α_n², β_λ(n), γ_n^n and related sequences
    Table,
    /// Heat-kernel localization, gradient and product ratios
    Heat,
    /// Circle counterexample and the vanishing first-moment family
    Erratum,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Constants => "constants",
            Command::Certify => "certify",
            Command::Verify => "verify",
            Command::Table => "table",
            Command::Heat => "heat",
            Command::Erratum => "erratum",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Gegenbauer parameter λ > -1/2, decimal or a/b
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Sphere dimension d >= 2 (λ = (d-2)/2)
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Number of excluded low degrees; defaults to n(λ)
    #[arg(long, global = true)]
    pub n0: Option<usize>,
    /// Truncation sizes, comma separated (1e3 notation allowed)
    #[arg(long, global = true, value_delimiter = ',')]
    pub sizes: Option<Vec<String>>,
    /// Heat-kernel times, comma separated
    #[arg(long = "t-list", global = true, value_delimiter = ',')]
    pub t_list: Option<Vec<f64>>,
    /// Perturbation sizes ε in (0, 1), comma separated
    #[arg(long = "eps-list", global = true, value_delimiter = ',')]
    pub eps_list: Option<Vec<f64>>,
    /// float64 | bigfloat:<digits> | exact
    #[arg(long, global = true)]
    pub precision: Option<String>,
    /// Shorthand for --precision exact
    #[arg(long, global = true)]
    pub exact: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Seed for random corpora
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// identities | constants | sharpness | uncertainty | erratum | all
    #[arg(long, global = true, default_value = "all")]
    pub suite: String,
    /// Last index of the sequence table
    #[arg(long = "n-max", global = true, default_value_t = 32)]
    pub n_max: usize,
}

/// λ as given on the command line, keeping the rational form when there is one.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaArg {
    pub value: f64,
    pub rational: Option<Rational>,
    pub dim: Option<usize>,
}

pub fn parse_lambda(s: &str) -> Result<LambdaArg> {
    let s = s.trim();
    let rational = if let Some((a, b)) = s.split_once('/') {
        let num: i64 = a.trim().parse().with_context(|| format!("bad numerator in {s:?}"))?;
        let den: i64 = b.trim().parse().with_context(|| format!("bad denominator in {s:?}"))?;
        if den == 0 {
            bail!("zero denominator in {s:?}");
        }
        Some(Rational::from((num, den)))
    } else if let Ok(i) = s.parse::<i64>() {
        Some(Rational::from(i))
    } else {
        None
    };
    let value = match &rational {
        Some(r) => r.to_f64(),
        None => s.parse::<f64>().with_context(|| format!("cannot parse λ from {s:?}"))?,
    };
    if !(value > -0.5) || !value.is_finite() {
        bail!("λ must exceed -1/2, got {s}");
    }
    Ok(LambdaArg {
        value,
        rational,
        dim: None,
    })
}

pub fn lambda_from_dim(d: usize) -> Result<LambdaArg> {
    if d < 2 {
        bail!("dimension must be at least 2, got {d}");
    }
    Ok(LambdaArg {
        value: (d as f64 - 2.0) / 2.0,
        rational: Some(Rational::from((d as i64 - 2, 2))),
        dim: Some(d),
    })
}

/// Parses a truncation size such as "4096" or "1e4".
pub fn parse_size(s: &str) -> Result<usize> {
    let s = s.trim();
    if let Ok(n) = s.parse::<usize>() {
        return Ok(n);
    }
    let v: f64 = s.parse().with_context(|| format!("cannot parse size {s:?}"))?;
    if v < 1.0 || v.fract() != 0.0 || v > 1e9 {
        bail!("size must be a positive integer, got {s}");
    }
    Ok(v as usize)
}

pub fn parse_precision(s: &str) -> Result<Precision> {
    match s {
        "float64" => Ok(Precision::Float64),
        "exact" => Ok(Precision::Exact),
        _ => {
            let digits: u32 = s
                .strip_prefix("bigfloat:")
                .ok_or_else(|| anyhow!("precision must be float64, bigfloat:<digits> or exact"))?
                .parse()
                .context("bigfloat digits")?;
            if !(10..=10_000).contains(&digits) {
                bail!("bigfloat digits must lie in 10..=10000");
            }
            // bits for the requested decimal digits plus guard bits
            Ok(Precision::BigFloat((f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 16))
        }
    }
}

/// Fully resolved configuration for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub lambda: Option<LambdaArg>,
    pub n0: Option<usize>,
    pub sizes: Vec<usize>,
    pub t_list: Vec<f64>,
    pub eps_list: Vec<f64>,
    /// None selects exact arithmetic for integer λ and float64 otherwise
    pub precision: Option<Precision>,
    pub format: Format,
    pub out: Option<std::path::PathBuf>,
    pub seed: u64,
    pub suite: String,
    pub n_max: usize,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let o = cli.opts;
        let lambda = match (&o.lambda, o.dim) {
            (Some(_), Some(_)) => bail!("give either --lambda or --dim, not both"),
            (Some(l), None) => Some(parse_lambda(l)?),
            (None, Some(d)) => Some(lambda_from_dim(d)?),
            (None, None) => None,
        };
        let needs_lambda = matches!(
            cli.command,
            Command::Constants | Command::Certify | Command::Table | Command::Heat
        );
        if needs_lambda && lambda.is_none() {
            bail!("{} needs --lambda or --dim", cli.command.name());
        }
        let precision = match (&o.precision, o.exact) {
            (Some(p), false) => Some(parse_precision(p)?),
            (Some(p), true) if p == "exact" => Some(Precision::Exact),
            (Some(_), true) => bail!("--exact conflicts with --precision"),
            (None, true) => Some(Precision::Exact),
            (None, false) => None,
        };
        let sizes = match &o.sizes {
            Some(v) => v.iter().map(|s| parse_size(s)).collect::<Result<Vec<_>>>()?,
            None => vec![64, 256, 1024, 4096],
        };
        if sizes.windows(2).any(|w| w[1] <= w[0]) {
            bail!("--sizes must be strictly ascending");
        }
        let t_list = o.t_list.unwrap_or_else(|| vec![1e-1, 1e-2, 1e-3, 1e-4]);
        if t_list.iter().any(|&t| !(t > 0.0) || !t.is_finite()) {
            bail!("--t-list entries must be positive");
        }
        let eps_list = o.eps_list.unwrap_or_else(|| vec![1e-1, 1e-2, 1e-3]);
        if eps_list.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
            bail!("--eps-list entries must lie in (0, 1)");
        }
        if hardy_sphere::suites::Suite::parse(&o.suite).is_none() {
            bail!("unknown suite {:?}", o.suite);
        }
        if o.n_max == 0 {
            bail!("--n-max must be positive");
        }
        Ok(Self {
            command: cli.command,
            lambda,
            n0: o.n0,
            sizes,
            t_list,
            eps_list,
            precision,
            format: o.format,
            out: o.out,
            seed: o.seed,
            suite: o.suite,
            n_max: o.n_max,
        })
    }

    pub fn lambda(&self) -> &LambdaArg {
        self.lambda.as_ref().expect("λ checked in from_cli")
    }

    /// Precision for scans: explicit choice, else exact for integer λ.
    pub fn scan_precision(&self) -> Precision {
        self.precision.unwrap_or_else(|| {
            if hardy_sphere::exact::integer_lambda(self.lambda().value).is_some() {
                Precision::Exact
            } else {
                Precision::Float64
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_forms() {
        let l = parse_lambda("2/3").unwrap();
        assert_eq!(l.rational, Some(Rational::from((2, 3))));
        assert!((l.value - 2.0 / 3.0).abs() < 1e-16);
        assert_eq!(parse_lambda("2").unwrap().rational, Some(Rational::from(2)));
        assert_eq!(parse_lambda("0.25").unwrap().rational, None);
        assert!(parse_lambda("-1/2").is_err());
        assert!(parse_lambda("1/0").is_err());
        assert!(parse_lambda("abc").is_err());
        assert_eq!(lambda_from_dim(6).unwrap().value, 2.0);
        assert!(lambda_from_dim(1).is_err());
    }

    #[test]
    fn sizes_and_precision() {
        assert_eq!(parse_size("1e3").unwrap(), 1000);
        assert_eq!(parse_size("256").unwrap(), 256);
        assert!(parse_size("1.5").is_err());
        assert_eq!(parse_precision("exact").unwrap(), Precision::Exact);
        assert_eq!(parse_precision("bigfloat:50").unwrap(), Precision::BigFloat(183));
        assert!(parse_precision("bigfloat:x").is_err());
        assert!(parse_precision("double").is_err());
    }
}
