//! Plot data for the asymptotic claims: majority noise stability against its
//! arcsine limit, and the threshold instability family against its floor.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::bfn::{level_weights, walsh_transform};
use crate::catalog::{eta, instability_threshold, majority, preset_gswf, Preset};
use crate::dist::EvenProductDistribution;
use crate::rationality::w_formula;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityRow {
    pub n: usize,
    pub rho: f64,
    /// `<<maj_n, maj_n>>_ρ`.
    pub value: f64,
    /// `arcsin(ρ) / 2π`.
    pub reference: f64,
    pub abs_err: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InstabilityRow {
    pub n: usize,
    pub q: f64,
    pub k: usize,
    #[serde(rename = "W")]
    pub w: f64,
    pub eta: f64,
    pub ratio: f64,
    pub min_expectation: f64,
}

fn check_ns(ns: &[usize]) -> Result<()> {
    if ns.is_empty() {
        return Err(Error::invalid("the n list is empty"));
    }
    if let Some(n) = ns.iter().find(|&&n| n % 2 == 0) {
        return Err(Error::invalid(format!("n = {n} must be odd")));
    }
    Ok(())
}

/// Level weights of `maj_n`, one transform per distinct `n`.
fn majority_levels(ns: &[usize]) -> Result<BTreeMap<usize, Vec<f64>>> {
    let mut out = BTreeMap::new();
    for &n in ns {
        if let std::collections::btree_map::Entry::Vacant(e) = out.entry(n) {
            e.insert(level_weights(&walsh_transform(&majority(n)?)));
        }
    }
    Ok(out)
}

/// `Σ_k w_k ρ^k` over `k ≥ 1`.
pub fn stability_from_levels(levels: &[f64], rho: f64) -> f64 {
    let mut acc = 0.0;
    let mut pow = 1.0;
    for w in &levels[1..] {
        pow *= rho;
        acc += w * pow;
    }
    acc
}

pub fn arcsine_limit(rho: f64) -> f64 {
    rho.asin() / (2.0 * PI)
}

/// One row per `(n, ρ)`, `n` outer.
pub fn majority_stability_curve(ns: &[usize], rhos: &[f64]) -> Result<Vec<StabilityRow>> {
    check_ns(ns)?;
    if rhos.is_empty() {
        return Err(Error::invalid("the rho list is empty"));
    }
    if let Some(r) = rhos.iter().find(|r| !(-1.0..=1.0).contains(*r)) {
        return Err(Error::invalid(format!("rho = {r} outside [-1, 1]")));
    }
    let levels = majority_levels(ns)?;
    Ok(ns
        .iter()
        .flat_map(|n| {
            let lv = &levels[n];
            rhos.iter().map(move |&rho| {
                let value = stability_from_levels(lv, rho);
                let reference = arcsine_limit(rho);
                StabilityRow {
                    n: *n,
                    rho,
                    value,
                    reference,
                    abs_err: (value - reference).abs(),
                }
            })
        })
        .collect())
}

/// Exact `W` of the threshold instability preset under the uniform
/// distribution next to `η`.
pub fn instability_curve(ns: &[usize], q: f64) -> Result<Vec<InstabilityRow>> {
    check_ns(ns)?;
    ns.iter()
        .map(|&n| {
            let g = preset_gswf(&Preset::ThresholdInstability { q }, n)?;
            let w = w_formula(&g, &EvenProductDistribution::uniform())?.w;
            let e = eta(n, q)?;
            let min_expectation = g.expectations().into_iter().fold(f64::INFINITY, f64::min);
            Ok(InstabilityRow {
                n,
                q,
                k: instability_threshold(n, q)?,
                w,
                eta: e,
                ratio: w / e,
                min_expectation,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stability_rows() {
        let ns: Vec<usize> = (3..=19).step_by(2).collect();
        let rows = majority_stability_curve(&ns, &[1.0 / 3.0]).unwrap();
        assert_eq!(rows.len(), 9);
        assert!(rows.last().unwrap().abs_err < 0.01);
        // ρ = 1 is Parseval for a balanced function
        let one = majority_stability_curve(&[7], &[1.0]).unwrap();
        assert!((one[0].value - 0.25).abs() < 1e-12);
        assert!((one[0].reference - 0.25).abs() < 1e-15);
    }

    #[test]
    fn instability_rows() {
        let ns: Vec<usize> = (5..=15).step_by(2).collect();
        let rows = instability_curve(&ns, 0.2).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.windows(2).all(|w| w[1].ratio < w[0].ratio));
        assert_eq!(rows[0].k, 4);
    }

    #[test]
    fn empty_or_even_lists_rejected() {
        assert!(majority_stability_curve(&[], &[0.5]).is_err());
        assert!(instability_curve(&[], 0.2).is_err());
        assert!(instability_curve(&[4], 0.2).is_err());
        assert!(majority_stability_curve(&[3], &[1.5]).is_err());
    }
}
