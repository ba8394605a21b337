//! Turning flag strings into core values.

use anyhow::{anyhow, bail, Context, Result};
use gswf_core::catalog::{make, preset_gswf};
use gswf_core::{BooleanFunction, EvenProductDistribution, FamilySpec, Gswf, Preset, TripleDistribution};
use serde::Serialize;

use crate::cli::{DistArgs, TripleArgs};

/// `hex:<n>:<digits>` or a family spec such as `maj:5`.
pub fn parse_function(spec: &str) -> Result<BooleanFunction> {
    if let Some(rest) = spec.strip_prefix("hex:") {
        let (n, digits) = rest
            .split_once(':')
            .ok_or_else(|| anyhow!("{spec}: expected hex:<n>:<digits>"))?;
        let n: usize = n.parse().with_context(|| format!("{spec}: n is not an integer"))?;
        return Ok(BooleanFunction::from_hex(n, digits)?);
    }
    let fam: FamilySpec = spec
        .parse()
        .with_context(|| format!("cannot read function {spec:?}; use a family spec like maj:5 or hex:<n>:<digits>"))?;
    Ok(make(&fam)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct Resolved {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
    pub gswf: Gswf,
}

pub fn resolve_triple(a: &TripleArgs) -> Result<Resolved> {
    if let Some(name) = &a.preset {
        let n = a.n.ok_or_else(|| anyhow!("--preset needs --n"))?;
        let preset = Preset::from_name(name, a.voter, a.q)?;
        return Ok(Resolved {
            preset: Some(preset),
            gswf: preset_gswf(&preset, n)?,
        });
    }
    match (&a.f, &a.g, &a.h) {
        (Some(f), Some(g), Some(h)) => {
            let gswf = Gswf::new(parse_function(f)?, parse_function(g)?, parse_function(h)?)?;
            if let Some(n) = a.n {
                if n != gswf.n() {
                    bail!("--n {n} disagrees with the functions' arity {}", gswf.n());
                }
            }
            Ok(Resolved { preset: None, gswf })
        }
        _ => bail!("give either --preset <name> --n <n> or all of --f, --g, --h"),
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Dist {
    Even(EvenProductDistribution),
    General(TripleDistribution),
}

impl Dist {
    pub fn triple_distribution(&self) -> TripleDistribution {
        match self {
            Dist::Even(d) => d.to_triple_distribution(),
            Dist::General(t) => *t,
        }
    }
}

pub fn resolve_dist(a: &DistArgs) -> Result<Dist> {
    if let Some(s) = &a.triples {
        let probs: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>().with_context(|| format!("--triples: {p:?} is not a number")))
            .collect::<Result<_>>()?;
        let probs: [f64; 6] = probs
            .try_into()
            .map_err(|v: Vec<f64>| anyhow!("--triples needs 6 values, got {}", v.len()))?;
        let t = TripleDistribution::new(probs)?;
        return Ok(match t.as_even_product() {
            Some(e) => Dist::Even(e),
            None => Dist::General(t),
        });
    }
    if let (Some(alpha), Some(beta)) = (a.alpha, a.beta) {
        let gamma = a.gamma.unwrap_or(0.5 - alpha - beta);
        return Ok(Dist::Even(EvenProductDistribution::new(alpha, beta, gamma)?));
    }
    Ok(Dist::Even(EvenProductDistribution::uniform()))
}

/// `3,5,7` or an inclusive range `3..19` keeping its odd members.
pub fn parse_n_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().with_context(|| format!("{s}: bad range start"))?;
        let hi: usize = hi.trim().trim_start_matches('=').parse().with_context(|| format!("{s}: bad range end"))?;
        return Ok((lo..=hi).filter(|n| n % 2 == 1).collect());
    }
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse().with_context(|| format!("{p:?} is not an integer")))
        .collect()
}

pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse().with_context(|| format!("{p:?} is not a number")))
        .collect()
}
