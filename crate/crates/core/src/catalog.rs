//! Named function families and preset GSWFs.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bfn::{check_arity, BooleanFunction};
use crate::rationality::Gswf;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Voter index is 1-based.
    Dictator { voter: usize },
    Majority,
    And,
    Or,
    /// 1 iff at least `k` voters prefer the first alternative.
    Threshold { k: usize },
    /// 1 iff an odd number of voters prefer the first alternative.
    Parity,
    /// OR of ANDs over consecutive blocks of `size` voters; the last block
    /// takes whatever voters remain.
    Tribes { size: usize },
    Constant { value: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    #[serde(flatten)]
    pub family: Family,
    pub n: usize,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec { family, n }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        check_arity(n)?;
        match self.family {
            Family::Dictator { voter } if voter == 0 || voter > n => Err(Error::invalid(format!(
                "dictator voter {voter} outside 1..={n}"
            ))),
            Family::Majority if n.is_multiple_of(2) => {
                Err(Error::invalid(format!("majority needs odd n, got {n}")))
            }
            Family::Threshold { k } if k > n + 1 => Err(Error::invalid(format!(
                "threshold k={k} outside 0..={}",
                n + 1
            ))),
            Family::Tribes { size } if size == 0 || size > n => Err(Error::invalid(format!(
                "tribe size {size} outside 1..={n}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        match self.family {
            Family::Dictator { voter } => write!(f, "dict:{n}:{voter}"),
            Family::Majority => write!(f, "maj:{n}"),
            Family::And => write!(f, "and:{n}"),
            Family::Or => write!(f, "or:{n}"),
            Family::Threshold { k } => write!(f, "thr:{n}:{k}"),
            Family::Parity => write!(f, "parity:{n}"),
            Family::Tribes { size } => write!(f, "tribes:{n}:{size}"),
            Family::Constant { value } => write!(f, "const:{n}:{}", u8::from(value)),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// `maj:15`, `thr:15:12`, `dict:15:1`, `and:3`, `or:3`, `parity:4`,
    /// `tribes:6:3`, `const:3:1`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize, what: &str| -> Result<usize> {
            parts
                .get(i)
                .ok_or_else(|| Error::Parse(format!("{s}: missing {what}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("{s}: {what} is not an integer")))
        };
        let n = num(1, "n")?;
        let arity = |expected: usize| -> Result<()> {
            if parts.len() != expected {
                return Err(Error::Parse(format!(
                    "{s}: expected {expected} ':'-separated fields"
                )));
            }
            Ok(())
        };
        let family = match parts[0] {
            "dict" | "dictator" => {
                arity(3)?;
                Family::Dictator { voter: num(2, "voter")? }
            }
            "maj" | "majority" => {
                arity(2)?;
                Family::Majority
            }
            "and" => {
                arity(2)?;
                Family::And
            }
            "or" => {
                arity(2)?;
                Family::Or
            }
            "thr" | "threshold" => {
                arity(3)?;
                Family::Threshold { k: num(2, "k")? }
            }
            "parity" => {
                arity(2)?;
                Family::Parity
            }
            "tribes" => {
                arity(3)?;
                Family::Tribes { size: num(2, "tribe size")? }
            }
            "const" | "constant" => {
                arity(3)?;
                Family::Constant {
                    value: match num(2, "value")? {
                        0 => false,
                        1 => true,
                        v => return Err(Error::Parse(format!("{s}: constant {v} is not 0/1"))),
                    },
                }
            }
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        };
        let spec = FamilySpec { family, n };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn make(spec: &FamilySpec) -> Result<BooleanFunction> {
    spec.validate()?;
    let n = spec.n;
    match spec.family {
        Family::Dictator { voter } => BooleanFunction::dictator(n, voter),
        Family::Majority => threshold(n, n.div_ceil(2)),
        Family::And => threshold(n, n),
        Family::Or => threshold(n, 1),
        Family::Threshold { k } => threshold(n, k),
        Family::Parity => BooleanFunction::from_fn(n, |x| x.count_ones() % 2 == 1),
        Family::Tribes { size } => {
            let tribes: Vec<u64> = (0..n)
                .step_by(size)
                .map(|start| ((1u64 << size.min(n - start)) - 1) << start)
                .collect();
            // any tribe fully present
            #[allow(clippy::manual_contains)]
            let f = BooleanFunction::from_fn(n, |x| tribes.iter().any(|&t| x & t == t));
            f
        }
        Family::Constant { value } => BooleanFunction::constant(n, value),
    }
}

/// `1` iff `popcount(x) ≥ k`.
pub fn threshold(n: usize, k: usize) -> Result<BooleanFunction> {
    if k > n + 1 {
        return Err(Error::invalid(format!("threshold k={k} outside 0..={}", n + 1)));
    }
    BooleanFunction::from_fn(n, |x| x.count_ones() as usize >= k)
}

pub fn majority(n: usize) -> Result<BooleanFunction> {
    make(&FamilySpec::new(Family::Majority, n))
}

/// Preset GSWFs used throughout the verification harness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "preset", rename_all = "snake_case")]
pub enum Preset {
    /// Majority on every pair.
    Condorcet,
    /// The same dictator on every pair (always rational).
    DictatorTriple { voter: usize },
    /// `f`, `g`, `h` dictated by voters 1, 2, 3.
    SplitDictators,
    /// AND, its dual OR, and majority (odd n).
    AndDualMajority,
    /// `f = [Σx ≥ ⌈(1−q)n⌉]`, its dual, and majority (odd n, 0 < q < 1/2).
    ThresholdInstability { q: f64 },
    /// `f = g =` dictator of voter 1, `h =` dictator of voter 2.
    AlphaHalfExtremal,
}

pub const PRESET_NAMES: [&str; 6] = [
    "condorcet",
    "dictator_triple",
    "split_dictators",
    "and_dual_majority",
    "threshold_instability",
    "alpha_half_extremal",
];

impl Preset {
    /// Resolves a preset name; `voter` defaults to 1 and `q` is required for
    /// `threshold_instability`.
    pub fn from_name(name: &str, voter: Option<usize>, q: Option<f64>) -> Result<Self> {
        Ok(match name {
            "condorcet" => Preset::Condorcet,
            "dictator_triple" => Preset::DictatorTriple {
                voter: voter.unwrap_or(1),
            },
            "split_dictators" => Preset::SplitDictators,
            "and_dual_majority" => Preset::AndDualMajority,
            "threshold_instability" => Preset::ThresholdInstability {
                q: q.ok_or_else(|| Error::invalid("threshold_instability needs q"))?,
            },
            "alpha_half_extremal" => Preset::AlphaHalfExtremal,
            other => {
                return Err(Error::invalid(format!(
                    "unknown preset {other:?}; expected one of {}",
                    PRESET_NAMES.join(", ")
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Condorcet => "condorcet",
            Preset::DictatorTriple { .. } => "dictator_triple",
            Preset::SplitDictators => "split_dictators",
            Preset::AndDualMajority => "and_dual_majority",
            Preset::ThresholdInstability { .. } => "threshold_instability",
            Preset::AlphaHalfExtremal => "alpha_half_extremal",
        }
    }
}

fn require_odd(n: usize, what: &str) -> Result<()> {
    if n.is_multiple_of(2) {
        return Err(Error::invalid(format!("{what} needs odd n, got {n}")));
    }
    Ok(())
}

pub fn preset_gswf(preset: &Preset, n: usize) -> Result<Gswf> {
    check_arity(n)?;
    let dict = |i| BooleanFunction::dictator(n, i);
    match *preset {
        Preset::Condorcet => {
            let m = majority(n)?;
            Gswf::new(m.clone(), m.clone(), m)
        }
        Preset::DictatorTriple { voter } => {
            let d = dict(voter)?;
            Gswf::new(d.clone(), d.clone(), d)
        }
        Preset::SplitDictators => {
            if n < 3 {
                return Err(Error::invalid("split_dictators needs n >= 3"));
            }
            Gswf::new(dict(1)?, dict(2)?, dict(3)?)
        }
        Preset::AndDualMajority => {
            require_odd(n, "and_dual_majority")?;
            let f = threshold(n, n)?;
            Gswf::new(f.clone(), f.dual(), majority(n)?)
        }
        Preset::ThresholdInstability { q } => {
            require_odd(n, "threshold_instability")?;
            let f = threshold(n, instability_threshold(n, q)?)?;
            Gswf::new(f.clone(), f.dual(), majority(n)?)
        }
        Preset::AlphaHalfExtremal => {
            if n < 2 {
                return Err(Error::invalid("alpha_half_extremal needs n >= 2"));
            }
            Gswf::new(dict(1)?, dict(1)?, dict(2)?)
        }
    }
}

fn check_q(q: f64) -> Result<()> {
    if !(q > 0.0 && q < 0.5) {
        return Err(Error::invalid(format!("q = {q} must satisfy 0 < q < 1/2")));
    }
    Ok(())
}

/// `k = ⌈(1−q)n⌉`, the smallest integer with `k ≥ (1−q)n`.
pub fn instability_threshold(n: usize, q: f64) -> Result<usize> {
    check_q(q)?;
    let target = (1.0 - q) * n as f64;
    // absorb representation error such as (1 − 0.2)·5 = 4.000000000000001
    Ok((target - 1e-9).ceil() as usize)
}

/// Binary entropy `H(q) = −q log2 q − (1−q) log2 (1−q)`, with `H(0) = H(1) = 0`.
pub fn binary_entropy(q: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(q) + term(1.0 - q)
}

/// `η = 2^{n H(q) − 1} / (n + 1)`.
pub fn eta(n: usize, q: f64) -> Result<f64> {
    check_q(q)?;
    if n == 0 {
        return Err(Error::invalid("eta needs n >= 1"));
    }
    Ok((n as f64 * binary_entropy(q) - 1.0).exp2() / (n as f64 + 1.0))
}

/// `2^{n (H(q) − 1)} / (n + 1)`: the expectation floor `2^{−εn}/(n+1)` with
/// `ε = 1 − H(q)`.
pub fn eta_normalized(n: usize, q: f64) -> Result<f64> {
    check_q(q)?;
    if n == 0 {
        return Err(Error::invalid("eta needs n >= 1"));
    }
    Ok((n as f64 * (binary_entropy(q) - 1.0)).exp2() / (n as f64 + 1.0))
}

/// One row of `catalog list`.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub kind: &'static str,
    pub name: &'static str,
    pub syntax: &'static str,
    pub constraints: &'static str,
}

pub fn entries() -> Vec<CatalogEntry> {
    let fam = |name, syntax, constraints| CatalogEntry {
        kind: "family",
        name,
        syntax,
        constraints,
    };
    let pre = |name, syntax, constraints| CatalogEntry {
        kind: "preset",
        name,
        syntax,
        constraints,
    };
    vec![
        fam("dictator", "dict:<n>:<voter>", "1 <= voter <= n"),
        fam("majority", "maj:<n>", "n odd"),
        fam("and", "and:<n>", ""),
        fam("or", "or:<n>", ""),
        fam("threshold", "thr:<n>:<k>", "0 <= k <= n+1"),
        fam("parity", "parity:<n>", ""),
        fam("tribes", "tribes:<n>:<size>", "1 <= size <= n; last tribe takes the remainder"),
        fam("constant", "const:<n>:<0|1>", ""),
        pre("condorcet", "--preset condorcet --n <n>", "n odd"),
        pre("dictator_triple", "--preset dictator_triple --n <n> [--voter <i>]", "1 <= i <= n"),
        pre("split_dictators", "--preset split_dictators --n <n>", "n >= 3"),
        pre("and_dual_majority", "--preset and_dual_majority --n <n>", "n odd"),
        pre(
            "threshold_instability",
            "--preset threshold_instability --n <n> --q <q>",
            "n odd, 0 < q < 1/2",
        ),
        pre("alpha_half_extremal", "--preset alpha_half_extremal --n <n>", "n >= 2"),
    ]
}
