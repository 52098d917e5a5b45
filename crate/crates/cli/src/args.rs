use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spinsolve::{Family, IntersectionArray};

/// Default seed for random arrays and identity-test points.
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Parser)]
#[command(name = "spinsolve", version, about = "Solve (PT)^3 = I for diagonal T over P-polynomial association schemes")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Include wall-clock timings in the output.
    #[arg(long, global = true)]
    pub timings: bool,
    /// Seed for every randomized path.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find every diagonal T for one scheme.
    Solve {
        #[command(flatten)]
        family: FamilyArgs,
        /// Residual tolerance for accepting a solution.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Check a classification theorem over a parameter range.
    Verify(VerifyArgs),
    /// List the supported families, or describe one instance.
    Families {
        #[command(flatten)]
        family: OptionalFamily,
    },
    /// Enumerate a scheme over a finite field and measure its array.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
    /// Exact polynomial identities.
    Symbolic {
        #[command(subcommand)]
        action: SymbolicAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleAction {
    /// Print the measured intersection numbers.
    Census {
        #[command(flatten)]
        family: FamilyArgs,
        /// Base points per class used for the consistency check.
        #[arg(long, default_value_t = 5)]
        representatives: usize,
    },
    /// Compare the measured array with the closed form.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 5)]
        representatives: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum SymbolicAction {
    /// Candidate quartic: symbolic form, or coefficients for one scheme.
    Quartic {
        #[command(flatten)]
        family: OptionalFamily,
    },
    /// Hamming factorization and the resultant of the two cofactors.
    HammingResultant,
    /// Bilinear forms identities by exact evaluation at seeded points.
    BilinearIdentities,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Hamming,
    Bilinear,
    Alternating,
    Hermitian,
    Ngon,
    Custom,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Clone, Args)]
pub struct OptionalFamily {
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    #[arg(long = "N")]
    pub big_n: Option<u32>,
    #[arg(long = "M")]
    pub big_m: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    /// JSON file with `{"b": [...], "c": [...]}` for a custom array.
    #[arg(long)]
    pub array_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
    pub theorem: u8,
    /// Values or ranges such as `3..6` or `2,3,5`.
    #[arg(long = "N")]
    pub big_n: Option<Range>,
    #[arg(long = "M")]
    pub big_m: Option<Range>,
    #[arg(long)]
    pub q: Option<Range>,
    #[arg(long)]
    pub n: Option<Range>,
    /// Number of random arrays (theorem 1).
    #[arg(long, default_value_t = 200)]
    pub random_arrays: usize,
}

/// Inclusive range or comma-separated list of integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Range(pub Vec<u32>);

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad integer {t:?}: {e}"));
        let mut out = Vec::new();
        for part in s.split(',') {
            match part.split_once("..") {
                Some((lo, hi)) => {
                    let hi = hi.strip_prefix('=').unwrap_or(hi);
                    let (lo, hi) = (parse(lo)?, parse(hi)?);
                    if lo > hi {
                        return Err(format!("empty range {part}"));
                    }
                    out.extend(lo..=hi);
                }
                None => out.push(parse(part)?),
            }
        }
        Ok(Range(out))
    }
}

/// Either a named family or a custom array read from a file.
pub enum Target {
    Named(Family),
    Custom(IntersectionArray),
}

fn need(v: Option<u32>, flag: &str, family: &str) -> Result<u32, String> {
    v.ok_or_else(|| format!("--family {family} needs --{flag}"))
}

impl Params {
    pub fn target(&self, kind: FamilyKind) -> Result<Target, String> {
        let family = match kind {
            FamilyKind::Hamming => Family::Hamming { n: need(self.big_n, "N", "hamming")?, q: need(self.q, "q", "hamming")? },
            FamilyKind::Bilinear => Family::Bilinear {
                m: need(self.big_m, "M", "bilinear")?,
                n: need(self.big_n, "N", "bilinear")?,
                q: need(self.q, "q", "bilinear")?,
            },
            FamilyKind::Alternating => {
                Family::Alternating { n: need(self.big_n.or(self.n), "N", "alternating")?, q: need(self.q, "q", "alternating")? }
            }
            FamilyKind::Hermitian => {
                Family::Hermitian { n: need(self.big_n.or(self.n), "N", "hermitian")?, q: need(self.q, "q", "hermitian")? }
            }
            FamilyKind::Ngon => Family::NGon { n: need(self.n, "n", "ngon")? },
            FamilyKind::Custom => {
                let path = self.array_file.as_ref().ok_or("--family custom needs --array-file")?;
                let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                let array: IntersectionArray =
                    serde_json::from_str(&text).map_err(|e| format!("malformed array file {}: {e}", path.display()))?;
                return Ok(Target::Custom(array));
            }
        };
        Ok(Target::Named(family))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("3..6".parse::<Range>().unwrap(), Range(vec![3, 4, 5, 6]));
        assert_eq!("2,4..=5".parse::<Range>().unwrap(), Range(vec![2, 4, 5]));
        assert_eq!("7".parse::<Range>().unwrap(), Range(vec![7]));
        assert!("6..3".parse::<Range>().is_err());
        assert!("x".parse::<Range>().is_err());
    }
}
