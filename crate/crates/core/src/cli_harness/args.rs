//! Command-line arguments and their conversion into a [`RunConfig`].

use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra_models::Convention;
use crate::cyclic::Side;
use crate::error::{Error, Result};
use crate::hochschild::Coefficients;
use crate::mc_moduli::Strategy;

#[derive(Parser, Debug)]
#[command(name = "hcbridge", version, about = "Exact Hochschild, negative cyclic and Maurer–Cartan computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Subcommand, Debug)]
pub enum CommandArgs {
    /// Validate a model under each trace convention.
    Check(Common),
    /// Hochschild (co)homology dimensions with stabilization flags.
    Hochschild {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = CoeffArg::Chains)]
        coefficients: CoeffArg,
    },
    /// Negative cyclic homology or its dual.
    Cyclic {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = SideArg::Chains)]
        side: SideArg,
    },
    /// String bracket of two classes of HC⁻ with the 𝓑/⊔/I ledger.
    Bracket(Common),
    /// Maurer–Cartan points and their tangent complexes.
    Mc(Common),
    /// Pointwise check of ρ({α,β}) = {ρ(α), ρ(β)}.
    Theorem1(Common),
    /// Run the acceptance suites.
    Report {
        #[command(flatten)]
        common: Common,
        /// Only these criteria (1..=12); all by default.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Model file, or the name of a bundled fixture.
    #[arg(default_value = "")]
    pub model: String,
    /// Truncation W: bar length of Hochschild chains.
    #[arg(long = "weight", default_value_t = 6)]
    pub w: usize,
    /// Largest power of u kept in the negative cyclic complex.
    #[arg(long, default_value_t = 3)]
    pub u_max: usize,
    /// Degree range `lo..hi` (inclusive) or a single degree.
    #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
    pub degrees: String,
    /// Internal weight range `lo..hi`; defaults from the declared weights.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    #[arg(long, value_enum)]
    pub convention: Option<ConventionArg>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Grid)]
    pub strategy: StrategyArg,
    /// Grid or iteration values `lo..hi` for each odd coordinate.
    #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
    pub grid: String,
    /// A point such as `x=1,y=-1/2`; repeatable.
    #[arg(long = "mc-point", allow_hyphen_values = true)]
    pub mc_points: Vec<String>,
    /// A class file (JSON) or `degree,weight,index` into the HC⁻ basis; repeatable.
    #[arg(long = "class", allow_hyphen_values = true)]
    pub classes: Vec<String>,
    /// Fail with status 4 unless every reported result is stabilized.
    #[arg(long)]
    pub certify: bool,
    /// Run a dga through the A∞ (bar) path.
    #[arg(long)]
    pub as_a_infinity: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConventionArg {
    PaperLiteral,
    GradedSymmetric,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StrategyArg {
    VerifyOnly,
    NilpotentIteration,
    Grid,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CoeffArg {
    Chains,
    Dual,
    Values,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Chains,
    Cochains,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Check,
    Hochschild,
    Cyclic,
    Bracket,
    Mc,
    Theorem1,
    Report,
}

/// Everything a command needs, after parsing and range checks.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub model: String,
    pub w: usize,
    pub u_max: usize,
    pub degrees: RangeInclusive<i64>,
    pub weights: Option<RangeInclusive<i64>>,
    pub convention: Option<Convention>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub format: Format,
    pub strategy: Strategy,
    pub grid: RangeInclusive<i64>,
    pub mc_points: Vec<String>,
    pub classes: Vec<String>,
    pub certify: bool,
    pub as_a_infinity: bool,
    pub coefficients: Coefficients,
    pub side: Side,
    pub only: Vec<usize>,
}

/// `lo..hi`, `lo..=hi` or a single integer, inclusive.
pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>> {
    let bad = || Error::Input(format!("`{s}` is not a range lo..hi"));
    let s = s.trim();
    let r = match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            a.trim().parse().map_err(|_| bad())?..=b.trim().parse().map_err(|_| bad())?
        }
        None => {
            let k: i64 = s.parse().map_err(|_| bad())?;
            k..=k
        }
    };
    if r.is_empty() {
        return Err(Error::Input(format!("range `{s}` is empty")));
    }
    Ok(r)
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let mut coefficients = Coefficients::Chains;
        let mut side = Side::Chains;
        let mut only = Vec::new();
        let (command, c) = match cli.command {
            CommandArgs::Check(c) => (Command::Check, c),
            CommandArgs::Hochschild { common, coefficients: k } => {
                coefficients = match k {
                    CoeffArg::Chains => Coefficients::Chains,
                    CoeffArg::Dual => Coefficients::Dual,
                    CoeffArg::Values => Coefficients::Values,
                };
                (Command::Hochschild, common)
            }
            CommandArgs::Cyclic { common, side: s } => {
                side = match s {
                    SideArg::Chains => Side::Chains,
                    SideArg::Cochains => Side::Cochains,
                };
                (Command::Cyclic, common)
            }
            CommandArgs::Bracket(c) => (Command::Bracket, c),
            CommandArgs::Mc(c) => (Command::Mc, c),
            CommandArgs::Theorem1(c) => (Command::Theorem1, c),
            CommandArgs::Report { common, only: o } => {
                if let Some(bad) = o.iter().find(|&&i| !(1..=12).contains(&i)) {
                    return Err(Error::Input(format!("there is no criterion {bad}")));
                }
                only = o;
                (Command::Report, common)
            }
        };
        if command != Command::Report && c.model.is_empty() {
            return Err(Error::Input("a model file or bundled fixture name is required".into()));
        }
        Ok(RunConfig {
            command,
            model: c.model,
            w: c.w,
            u_max: c.u_max,
            degrees: parse_range(&c.degrees)?,
            weights: c.weights.as_deref().map(parse_range).transpose()?,
            convention: c.convention.map(|c| match c {
                ConventionArg::PaperLiteral => Convention::PaperLiteral,
                ConventionArg::GradedSymmetric => Convention::GradedSymmetric,
            }),
            out: c.out,
            format: c.format,
            strategy: match c.strategy {
                StrategyArg::VerifyOnly => Strategy::VerifyOnly,
                StrategyArg::NilpotentIteration => Strategy::NilpotentIteration,
                StrategyArg::Grid => Strategy::Grid,
            },
            grid: parse_range(&c.grid)?,
            mc_points: c.mc_points,
            classes: c.classes,
            certify: c.certify,
            as_a_infinity: c.as_a_infinity,
            coefficients,
            side,
            only,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-3..3").unwrap(), -3..=3);
        assert_eq!(parse_range("0..=4").unwrap(), 0..=4);
        assert_eq!(parse_range("2").unwrap(), 2..=2);
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn config_from_arguments() {
        let cli = Cli::try_parse_from(["hcbridge", "cyclic", "eps", "--weight", "5", "--u-max", "2", "--degrees", "-2..0", "--side", "cochains"]).unwrap();
        let c = RunConfig::from_cli(cli).unwrap();
        assert_eq!((c.command, c.w, c.u_max, c.degrees, c.side), (Command::Cyclic, 5, 2, -2..=0, Side::Cochains));
        let cli = Cli::try_parse_from(["hcbridge", "hochschild"]).unwrap();
        assert!(RunConfig::from_cli(cli).is_err());
    }
}
