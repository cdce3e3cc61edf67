use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use orthoinv::cartan::{GroupKind, GroupTag};
use orthoinv::FieldKind;

/// Suites runnable through `verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    DegreeBound,
    FEqualsNSquared,
    HClosedForm,
    DetVanishingOdd,
    PfMultiplicative,
    TraceIdentity,
    ConjugationInvariance,
    Witness,
    PfaffianExpansion,
    Ntilde,
}

pub const SUITE_NAMES: [(&str, Suite); 10] = [
    ("degree-bound", Suite::DegreeBound),
    ("f-equals-n-squared", Suite::FEqualsNSquared),
    ("h-closed-form", Suite::HClosedForm),
    ("det-vanishing-odd", Suite::DetVanishingOdd),
    ("pf-multiplicative", Suite::PfMultiplicative),
    ("trace-identity", Suite::TraceIdentity),
    ("conjugation-invariance", Suite::ConjugationInvariance),
    ("witness", Suite::Witness),
    ("pfaffian-expansion", Suite::PfaffianExpansion),
    ("ntilde", Suite::Ntilde),
];

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        SUITE_NAMES
            .iter()
            .find(|(name, _)| *name == s)
            .map(|(_, suite)| *suite)
            .ok_or_else(|| {
                let names: Vec<&str> = SUITE_NAMES.iter().map(|(n, _)| *n).collect();
                format!("unknown suite {s:?}; expected one of {}", names.join(", "))
            })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = SUITE_NAMES.iter().find(|(_, s)| s == self).map(|(n, _)| *n).unwrap_or("?");
        f.write_str(name)
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub suite: Suite,
    pub kind: GroupTag,
    pub n: usize,
    pub d: usize,
    pub wmax: u32,
    pub trunc: Option<u32>,
    pub field: FieldKind,
    pub seed: u64,
    pub samples: usize,
    pub attempts: usize,
    pub json: Option<PathBuf>,
    pub parallel: bool,
}

/// A configuration that cannot be dispatched; reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

impl RunConfig {
    /// Truncation in effect: the explicit one, or `⌊n/2⌋ + 2` for the
    /// tuple suites and 3 otherwise.
    pub fn trunc(&self) -> u32 {
        self.trunc.unwrap_or(match self.suite {
            Suite::DegreeBound | Suite::Ntilde | Suite::ConjugationInvariance => self.n as u32 / 2 + 2,
            _ => 3,
        })
    }

    pub fn group(&self) -> Result<GroupKind, UsageError> {
        GroupKind::new(self.kind, self.n).map_err(|e| UsageError(format!("--kind/--n: {e}")))
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        use Suite::*;
        if self.suite != Witness && self.n < 2 {
            return usage(format!("--n must be at least 2, got {}", self.n));
        }
        if self.d == 0 {
            return usage("--d must be at least 1");
        }
        if self.wmax == 0 && matches!(self.suite, DegreeBound | FEqualsNSquared | HClosedForm | ConjugationInvariance | Ntilde) {
            return usage("--wmax must be at least 1");
        }
        if self.samples == 0 {
            return usage("--samples must be at least 1");
        }
        match self.suite {
            DegreeBound | Ntilde => {
                self.require_orthogonal()?;
                let bound = self.n as u32 / 2;
                if self.trunc() <= bound {
                    return usage(format!(
                        "--trunc must exceed n/2 = {bound} to see coefficients above the bound"
                    ));
                }
            }
            ConjugationInvariance => self.require_orthogonal()?,
            FEqualsNSquared => {
                let kind = self.group()?;
                if !kind.is_symplectic() && self.field.imaginary_unit().is_none() {
                    return usage(format!(
                        "{kind} needs a field with a square root of -1; use --field qi"
                    ));
                }
            }
            HClosedForm => {
                if self.n % 2 == 1 {
                    return usage(format!("h-closed-form needs even --n, got {}", self.n));
                }
                if self.field.imaginary_unit().is_none() {
                    return usage("h-closed-form needs --field qi");
                }
            }
            DetVanishingOdd => {
                if self.n.is_multiple_of(2) {
                    return usage(format!("det-vanishing-odd needs odd --n, got {}", self.n));
                }
            }
            PfMultiplicative => {
                if self.n % 2 == 1 {
                    return usage(format!("pf-multiplicative needs even --n, got {}", self.n));
                }
            }
            TraceIdentity => {}
            Witness => {
                if self.attempts == 0 {
                    return usage("--attempts must be at least 1");
                }
            }
            PfaffianExpansion => {}
        }
        Ok(())
    }

    fn require_orthogonal(&self) -> Result<(), UsageError> {
        if self.kind == GroupTag::Sp {
            return usage(format!(
                "{} draws orthogonal-algebra tuples; --kind sp is not supported",
                self.suite
            ));
        }
        self.group().map(|_| ())
    }
}
