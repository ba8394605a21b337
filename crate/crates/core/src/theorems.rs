//! Numerical verification of the bounds surrounding `W`.
//!
//! Each check evaluates a claim over a finite set of instances (exhaustive
//! where feasible, seeded samples otherwise) and reports the worst instance
//! as a [`BoundReport`]. Some checks are inverted: they state a claim that is
//! known to fail without its hypothesis, and pass when the evaluation
//! refutes it.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bfn::{
    inverse_walsh_transform, level_weights, walsh_transform, BooleanFunction, PseudoSpectrum,
    Spectrum, WalshSpectrum,
};
use crate::catalog::{binary_entropy, eta, majority, preset_gswf, Preset};
use crate::dist::{EvenProductDistribution, TripleDistribution};
use crate::rationality::{
    base_term, biased_inner_product, noise_convolve_in_place, noise_operator_spectral, w_formula,
    w_from_spectra, w_oracle, w_prime, Gswf,
};
use crate::search::{enumerate_class, random_balanced, random_function, ClassFilter, Predicate, TripleSpace};
use crate::{Error, Result, ORACLE_MAX};

/// Tolerance for exact identities.
pub const TOL_EXACT: f64 = 1e-12;
/// Tolerance for limits approached at desk-scale `n`.
pub const TOL_ASYMPTOTIC: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    AtLeast,
    Equal,
    Less,
    Greater,
}

impl Relation {
    /// Signed slack; positive means the claim holds with room to spare.
    pub fn margin(self, lhs: f64, rhs: f64) -> f64 {
        match self {
            Relation::AtMost | Relation::Less => rhs - lhs,
            Relation::AtLeast | Relation::Greater => lhs - rhs,
            Relation::Equal => -(lhs - rhs).abs(),
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Relation::Less | Relation::Greater)
    }

    pub fn holds(self, margin: f64, tolerance: f64) -> bool {
        if self.is_strict() {
            margin > tolerance
        } else {
            margin >= -tolerance
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Equal => "==",
            Relation::Less => "<",
            Relation::Greater => ">",
        }
    }
}

/// Inputs that reproduce a report's `lhs` and `rhs`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub functions: Vec<BooleanFunction>,
    /// `(α, β, γ)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub point: Vec<f64>,
}

impl Witness {
    pub fn is_empty(&self) -> bool {
        self.label.is_none()
            && self.functions.is_empty()
            && self.distribution.is_none()
            && self.delta.is_none()
            && self.n.is_none()
            && self.point.is_empty()
    }

    pub fn label(s: impl Into<String>) -> Self {
        Witness {
            label: Some(s.into()),
            ..Default::default()
        }
    }

    pub fn functions(mut self, fs: impl IntoIterator<Item = BooleanFunction>) -> Self {
        self.functions = fs.into_iter().collect();
        self
    }

    pub fn gswf(self, g: &Gswf) -> Self {
        self.functions([g.f.clone(), g.g.clone(), g.h.clone()])
    }

    pub fn distribution(mut self, d: &EvenProductDistribution) -> Self {
        self.distribution = Some([d.alpha(), d.beta(), d.gamma()]);
        self
    }

    pub fn delta(mut self, delta: f64) -> Self {
        self.delta = Some(delta);
        self
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn point(mut self, p: Vec<f64>) -> Self {
        self.point = p;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub claim: String,
    pub lhs: f64,
    pub relation: Relation,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    /// Whether the stated claim held on every evaluated instance.
    pub claim_holds: bool,
    /// Inverted checks pass when the claim is refuted.
    pub inverted: bool,
    pub applicable: bool,
    pub pass: bool,
    pub evaluated: u64,
    #[serde(skip_serializing_if = "Witness::is_empty")]
    pub witness: Witness,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<BoundReport>,
}

impl BoundReport {
    pub fn new(
        name: impl Into<String>,
        claim: impl Into<String>,
        lhs: f64,
        relation: Relation,
        rhs: f64,
        tolerance: f64,
    ) -> Self {
        let margin = relation.margin(lhs, rhs);
        let holds = relation.holds(margin, tolerance) && margin.is_finite();
        BoundReport {
            name: name.into(),
            claim: claim.into(),
            lhs,
            relation,
            rhs,
            margin,
            tolerance,
            claim_holds: holds,
            inverted: false,
            applicable: true,
            pass: holds,
            evaluated: 1,
            witness: Witness::default(),
            notes: vec![],
            parts: vec![],
        }
    }

    /// The hypothesis of the claim is not met; nothing is asserted.
    pub fn not_applicable(name: impl Into<String>, claim: impl Into<String>, reason: &str) -> Self {
        let mut r = BoundReport::new(name, claim, 0.0, Relation::Equal, 0.0, 0.0);
        r.applicable = false;
        r.evaluated = 0;
        r.notes.push(format!("not applicable: {reason}"));
        r
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = w;
        self
    }

    pub fn with_evaluated(mut self, count: u64) -> Self {
        self.evaluated = count;
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    pub fn invert(mut self) -> Self {
        self.inverted = true;
        self.pass = !self.claim_holds;
        self
    }

    /// Conjunction of sub-claims. The headline numbers come from the first
    /// failing part, or from the part with the least margin.
    pub fn combine(name: impl Into<String>, claim: impl Into<String>, parts: Vec<BoundReport>) -> Self {
        assert!(!parts.is_empty(), "combine needs parts");
        let head = parts
            .iter()
            .find(|p| !p.claim_holds)
            .or_else(|| {
                parts
                    .iter()
                    .filter(|p| p.applicable)
                    .min_by(|a, b| a.margin.total_cmp(&b.margin))
            })
            .unwrap_or(&parts[0])
            .clone();
        let holds = parts.iter().all(|p| p.claim_holds);
        BoundReport {
            name: name.into(),
            claim: claim.into(),
            lhs: head.lhs,
            relation: head.relation,
            rhs: head.rhs,
            margin: head.margin,
            tolerance: head.tolerance,
            claim_holds: holds,
            inverted: false,
            applicable: parts.iter().any(|p| p.applicable),
            pass: holds,
            evaluated: parts.iter().map(|p| p.evaluated).sum(),
            witness: head.witness,
            notes: vec![],
            parts,
        }
    }
}

/// How a class of functions is covered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Trials { trials: u64, seed: u64 },
}

fn all_functions(n: usize) -> Result<Vec<BooleanFunction>> {
    if n > 4 {
        return Err(Error::Budget(format!("all functions at n = {n} is too many to enumerate")));
    }
    (0..1u64 << (1u64 << n))
        .map(|t| BooleanFunction::from_u64(n, t))
        .collect()
}

fn monotone_class(n: usize) -> Result<Vec<BooleanFunction>> {
    enumerate_class(n, &ClassFilter::single(Predicate::Monotone))
}

fn spectra(fs: &[BooleanFunction]) -> Vec<WalshSpectrum> {
    fs.par_iter().map(walsh_transform).collect()
}

/// Index of the first minimum of `key`.
fn argmin_by<T>(items: &[T], key: impl Fn(&T) -> f64) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, it) in items.iter().enumerate() {
        let k = key(it);
        if best.is_none_or(|(_, b)| k < b) {
            best = Some((i, k));
        }
    }
    best.map(|b| b.0)
}

/// Uniform point of the simplex `α + β + γ = 1/2`.
pub fn random_even_product<R: Rng + ?Sized>(rng: &mut R) -> EvenProductDistribution {
    let (a, b): (f64, f64) = (rng.gen(), rng.gen());
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    EvenProductDistribution::new(lo / 2.0, (hi - lo) / 2.0, (1.0 - hi) / 2.0).expect("on the simplex")
}

/// `5 × 5` grid inside `α, β, γ ≤ 1/4`: `α` runs over `0..=1/4`, `β` over
/// `1/4 − α ..= 1/4`, and `γ = 1/2 − α − β`.
pub fn non_positive_grid() -> Vec<EvenProductDistribution> {
    let mut out = Vec::with_capacity(25);
    for i in 0..5 {
        let alpha = 0.25 * i as f64 / 4.0;
        for j in 0..5 {
            let beta = (0.25 - alpha) + alpha * j as f64 / 4.0;
            let gamma = (0.5 - alpha - beta).max(0.0);
            out.push(EvenProductDistribution::new(alpha, beta, gamma).expect("grid on simplex"));
        }
    }
    out
}

/// `(α, β)` on multiples of `1/(2·steps)` over the whole simplex.
pub fn simplex_grid(steps: usize) -> Vec<EvenProductDistribution> {
    let mut out = vec![];
    for i in 0..=steps {
        for j in 0..=steps - i {
            let alpha = i as f64 / (2 * steps) as f64;
            let beta = j as f64 / (2 * steps) as f64;
            let gamma = (steps - i - j) as f64 / (2 * steps) as f64;
            out.push(EvenProductDistribution::new(alpha, beta, gamma).expect("grid on simplex"));
        }
    }
    out
}

/// `ln C(n, k)`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (1..=k).map(|i| ((n - k + i) as f64).ln() - (i as f64).ln()).sum()
}

/// `ĥ({i})` for `h = maj_n`: `C(n−1, (n−1)/2) 2^{−n}`.
pub fn majority_first_level(n: usize) -> Result<f64> {
    require_odd(n)?;
    let m = (n as u64 - 1) / 2;
    Ok((ln_binomial(n as u64 - 1, m) - n as f64 * std::f64::consts::LN_2).exp())
}

/// First-level weight of majority, `d_m = n · ĥ({i})²`.
pub fn majority_first_level_weight(n: usize) -> Result<f64> {
    Ok(n as f64 * majority_first_level(n)?.powi(2))
}

fn require_odd(n: usize) -> Result<()> {
    if n.is_multiple_of(2) {
        return Err(Error::invalid(format!("n = {n} must be odd")));
    }
    Ok(())
}

fn triple_of(f: &BooleanFunction) -> Gswf {
    Gswf::new(f.clone(), f.clone(), f.clone()).expect("same arity")
}

// ---------------------------------------------------------------------------
// Spectral formula against the profile oracle

/// Worst `|w_formula − w_oracle|` over triples and random even product
/// distributions: exhaustive triples for `n ≤ 2`, `trials` random triples
/// above.
pub fn check_formula_vs_oracle(n_max: usize, trials: u64, dists: usize, seed: u64) -> Result<BoundReport> {
    if n_max > ORACLE_MAX {
        return Err(Error::Capacity {
            n: n_max,
            max: ORACLE_MAX,
            hint: "the oracle enumerates 6^n profiles",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases: Vec<(Gswf, EvenProductDistribution)> = vec![];
    for n in 1..=n_max {
        let ds: Vec<_> = (0..dists.max(1)).map(|_| random_even_product(&mut rng)).collect();
        let triples: Vec<Gswf> = if n <= 2 {
            let all = all_functions(n)?;
            let mut v = vec![];
            for f in &all {
                for g in &all {
                    for h in &all {
                        v.push(Gswf::new(f.clone(), g.clone(), h.clone())?);
                    }
                }
            }
            v
        } else {
            (0..trials)
                .map(|_| {
                    Gswf::new(
                        random_function(n, &mut rng)?,
                        random_function(n, &mut rng)?,
                        random_function(n, &mut rng)?,
                    )
                })
                .collect::<Result<_>>()?
        };
        for t in triples {
            for d in &ds {
                cases.push((t.clone(), *d));
            }
        }
    }
    let diffs: Vec<f64> = cases
        .par_iter()
        .map(|(g, d)| {
            let a = w_formula(g, d)?.w;
            let b = w_oracle(g, &d.to_triple_distribution())?.w;
            Ok((a - b).abs())
        })
        .collect::<Result<_>>()?;
    let worst = argmin_by(&diffs, |x| -x).expect("non-empty");
    let (g, d) = &cases[worst];
    Ok(BoundReport::new(
        "formula_vs_oracle",
        "spectral formula equals the exhaustive profile sum",
        diffs[worst],
        Relation::AtMost,
        0.0,
        TOL_EXACT,
    )
    .with_evaluated(cases.len() as u64)
    .with_witness(Witness::label("worst |formula - oracle|").gswf(g).distribution(d))
    .note(format!("n = 1..={n_max}; exhaustive triples for n <= 2, {trials} random triples above; {dists} distributions per n")))
}

/// Formula against oracle for one instance; N/A off even product
/// distributions, where the formula is not claimed.
pub fn check_formula_vs_oracle_at(g: &Gswf, t: &TripleDistribution) -> Result<BoundReport> {
    let name = "formula_vs_oracle";
    let claim = "spectral formula equals the exhaustive profile sum";
    let Some(d) = t.as_even_product() else {
        return Ok(BoundReport::not_applicable(
            name,
            claim,
            "distribution is not an even product distribution",
        ));
    };
    let a = w_formula(g, &d)?.w;
    let b = w_oracle(g, t)?.w;
    Ok(BoundReport::new(name, claim, (a - b).abs(), Relation::AtMost, 0.0, TOL_EXACT)
        .with_witness(Witness::label("instance").gswf(g).distribution(&d)))
}

// ---------------------------------------------------------------------------
// Monotone triples

/// Uniform index triples into a class of size `l`.
fn sampled_triples(l: usize, trials: u64, seed: u64) -> Vec<(usize, usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| (rng.gen_range(0..l), rng.gen_range(0..l), rng.gen_range(0..l)))
        .collect()
}

/// `W ≤ p1p2p3 + (1−p1)(1−p2)(1−p3)` over monotone triples when
/// `α, β, γ ≤ 1/4`, and `W ≤ 1/4` on balanced monotone triples.
pub fn check_monotone_bound(n: usize, d: &EvenProductDistribution, coverage: Coverage) -> Result<BoundReport> {
    if !d.is_non_positive() {
        return Err(Error::Hypothesis(format!(
            "monotone bound needs alpha, beta, gamma <= 1/4; got ({}, {}, {})",
            d.alpha(),
            d.beta(),
            d.gamma()
        )));
    }
    let class = monotone_class(n)?;
    let balanced: Vec<BooleanFunction> = class.iter().filter(|f| f.is_balanced()).cloned().collect();
    let space = TripleSpace::new(class.clone(), class.clone(), class, d)?;

    let (general, bal) = match coverage {
        Coverage::Exhaustive => {
            let (best, count) = space.argmax(|s, i, j, k| s.w(i, j, k) - s.base(i, j, k), |_, _, _| true);
            let (_, idx) = best.expect("non-empty class");
            let r = BoundReport::new(
                "monotone_bound.base",
                "W <= p1 p2 p3 + (1-p1)(1-p2)(1-p3)",
                space.w(idx.0, idx.1, idx.2),
                Relation::AtMost,
                space.base(idx.0, idx.1, idx.2),
                TOL_EXACT,
            )
            .with_evaluated(count)
            .with_witness(Witness::label("largest W - base").gswf(&space.gswf(idx)).distribution(d));
            let bspace = TripleSpace::new(balanced.clone(), balanced.clone(), balanced, d)?;
            let (bbest, bcount) = bspace.argmax(|s, i, j, k| s.w(i, j, k), |_, _, _| true);
            let (bw, bidx) = bbest.expect("dictators are balanced monotone");
            let b = BoundReport::new(
                "monotone_bound.balanced",
                "W <= 1/4 on balanced monotone triples",
                bw,
                Relation::AtMost,
                0.25,
                TOL_EXACT,
            )
            .with_evaluated(bcount)
            .with_witness(Witness::label("largest W").gswf(&bspace.gswf(bidx)).distribution(d));
            (r, b)
        }
        Coverage::Trials { trials, seed } => {
            let idx = sampled_triples(space.fs.len(), trials, seed);
            let k = argmin_by(&idx, |&(i, j, k)| space.base(i, j, k) - space.w(i, j, k)).expect("trials >= 1");
            let t = idx[k];
            let r = BoundReport::new(
                "monotone_bound.base",
                "W <= p1 p2 p3 + (1-p1)(1-p2)(1-p3)",
                space.w(t.0, t.1, t.2),
                Relation::AtMost,
                space.base(t.0, t.1, t.2),
                TOL_EXACT,
            )
            .with_evaluated(trials)
            .with_witness(Witness::label("largest W - base").gswf(&space.gswf(t)).distribution(d));
            let bspace = TripleSpace::new(balanced.clone(), balanced.clone(), balanced, d)?;
            let bidx = sampled_triples(bspace.fs.len(), trials, seed ^ 0x9e37_79b9);
            let k = argmin_by(&bidx, |&(i, j, k)| -bspace.w(i, j, k)).expect("trials >= 1");
            let t = bidx[k];
            let b = BoundReport::new(
                "monotone_bound.balanced",
                "W <= 1/4 on balanced monotone triples",
                bspace.w(t.0, t.1, t.2),
                Relation::AtMost,
                0.25,
                TOL_EXACT,
            )
            .with_evaluated(trials)
            .with_witness(Witness::label("largest W").gswf(&bspace.gswf(t)).distribution(d));
            (r, b)
        }
    };
    let mut parts = vec![general, bal];
    if n >= 3 {
        let split = preset_gswf(&Preset::SplitDictators, n)?;
        let w = w_formula(&split, d)?;
        parts.push(
            BoundReport::new(
                "monotone_bound.tight",
                "split dictators attain the base term",
                w.w,
                Relation::Equal,
                w.base,
                TOL_EXACT,
            )
            .with_witness(Witness::label("split_dictators").gswf(&split).distribution(d)),
        );
    }
    Ok(BoundReport::combine(
        "monotone_bound",
        "monotone triples under alpha, beta, gamma <= 1/4: W <= base, and W <= 1/4 when balanced",
        parts,
    ))
}

/// [`check_monotone_bound`] over [`non_positive_grid`].
pub fn check_monotone_bound_grid(n: usize) -> Result<BoundReport> {
    let parts = non_positive_grid()
        .iter()
        .map(|d| check_monotone_bound(n, d, Coverage::Exhaustive))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundReport::combine(
        "monotone_bound",
        "monotone triples under alpha, beta, gamma <= 1/4: W <= base, and W <= 1/4 when balanced",
        parts,
    )
    .note(format!("exhaustive monotone triples at n = {n} on a 5x5 grid of distributions")))
}

fn min_scaled_product(
    fs: &[BooleanFunction],
    deltas: &[f64],
) -> Result<(f64, usize, usize, f64, u64)> {
    let specs = spectra(fs);
    let deltas: Vec<f64> = deltas.iter().copied().filter(|d| *d != 0.0).collect();
    if deltas.is_empty() {
        return Err(Error::invalid("delta grid has no nonzero entry"));
    }
    let rows: Vec<(f64, usize, f64)> = (0..specs.len())
        .into_par_iter()
        .map(|i| {
            let mut best = (f64::INFINITY, 0, 0.0);
            for (j, sj) in specs.iter().enumerate() {
                for &delta in &deltas {
                    let v = biased_inner_product(&specs[i], sj, delta).expect("same arity") / delta;
                    if v < best.0 {
                        best = (v, j, delta);
                    }
                }
            }
            best
        })
        .collect();
    let i = argmin_by(&rows, |r| r.0).expect("non-empty");
    let count = (specs.len() * specs.len() * deltas.len()) as u64;
    Ok((rows[i].0, i, rows[i].1, rows[i].2, count))
}

/// `(1/δ) <<f, g>>_δ ≥ 0` for monotone `f, g` and `δ ≠ 0`.
pub fn check_biased_product_sign(n: usize, deltas: &[f64]) -> Result<BoundReport> {
    let class = monotone_class(n)?;
    let (v, i, j, delta, count) = min_scaled_product(&class, deltas)?;
    Ok(BoundReport::new(
        "biased_product_sign",
        "(1/delta) <<f,g>>_delta >= 0 for monotone f, g",
        v,
        Relation::AtLeast,
        0.0,
        TOL_EXACT,
    )
    .with_evaluated(count)
    .with_witness(
        Witness::label("smallest scaled product")
            .functions([class[i].clone(), class[j].clone()])
            .delta(delta),
    ))
}

/// The same claim over all functions, where it fails.
pub fn check_biased_product_sign_non_monotone(n: usize, deltas: &[f64]) -> Result<BoundReport> {
    let class = all_functions(n)?;
    let (v, i, j, delta, count) = min_scaled_product(&class, deltas)?;
    Ok(BoundReport::new(
        "biased_product_sign_non_monotone",
        "(1/delta) <<f,g>>_delta >= 0 for arbitrary f, g",
        v,
        Relation::AtLeast,
        0.0,
        TOL_EXACT,
    )
    .with_evaluated(count)
    .with_witness(
        Witness::label("counterexample")
            .functions([class[i].clone(), class[j].clone()])
            .delta(delta),
    )
    .note("monotonicity is needed: passes when a counterexample is found")
    .invert())
}

/// `Cov(f, g) = E[fg] − E[f]E[g]`, exactly in units of `4^{−n}`.
pub fn covariance(f: &BooleanFunction, g: &BooleanFunction) -> f64 {
    let both: u64 = f.words().iter().zip(g.words()).map(|(a, b)| (a & b).count_ones() as u64).sum();
    let len = f.len() as i128;
    let num = len * both as i128 - f.weight() as i128 * g.weight() as i128;
    num as f64 / (len * len) as f64
}

/// Correlation inequality: increasing pairs have `Cov ≥ 0`, increasing
/// against decreasing pairs `Cov ≤ 0`. Exhaustive for `n ≤ 3`, sampled at 4.
pub fn check_fkg(n: usize, trials: u64, seed: u64) -> Result<BoundReport> {
    let mut parts = vec![];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for m in 1..=n.min(4) {
        let class = monotone_class(m)?;
        let pairs: Vec<(usize, usize)> = if m <= 3 {
            (0..class.len()).flat_map(|i| (0..class.len()).map(move |j| (i, j))).collect()
        } else {
            (0..trials)
                .map(|_| (rng.gen_range(0..class.len()), rng.gen_range(0..class.len())))
                .collect()
        };
        let inc = argmin_by(&pairs, |&(i, j)| covariance(&class[i], &class[j])).expect("pairs");
        let (i, j) = pairs[inc];
        parts.push(
            BoundReport::new(
                format!("fkg.increasing.n{m}"),
                "Cov(f, g) >= 0 for increasing f, g",
                covariance(&class[i], &class[j]),
                Relation::AtLeast,
                0.0,
                TOL_EXACT,
            )
            .with_evaluated(pairs.len() as u64)
            .with_witness(Witness::label("least covariance").functions([class[i].clone(), class[j].clone()])),
        );
        let mix = argmin_by(&pairs, |&(i, j)| -covariance(&class[i], &class[j].complement())).expect("pairs");
        let (i, j) = pairs[mix];
        let dec = class[j].complement();
        parts.push(
            BoundReport::new(
                format!("fkg.mixed.n{m}"),
                "Cov(f, g) <= 0 for increasing f and decreasing g",
                covariance(&class[i], &dec),
                Relation::AtMost,
                0.0,
                TOL_EXACT,
            )
            .with_evaluated(pairs.len() as u64)
            .with_witness(Witness::label("largest covariance").functions([class[i].clone(), dec])),
        );
    }
    Ok(BoundReport::combine(
        "fkg",
        "increasing functions are nonnegatively correlated",
        parts,
    ))
}

// ---------------------------------------------------------------------------
// Balanced triples under the uniform distribution

pub fn parity_pair(n: usize) -> Result<BooleanFunction> {
    if n < 2 {
        return Err(Error::invalid("the parity example needs n >= 2"));
    }
    BooleanFunction::from_fn(n, |x| (x & 1) ^ (x >> 1 & 1) == 1)
}

/// `W ≤ 3/8` over balanced triples, plus the two `W = 1/3` examples.
pub fn check_balanced_bound(n: usize, coverage: Coverage) -> Result<BoundReport> {
    let u = EvenProductDistribution::uniform();
    let mut parts = vec![];
    match coverage {
        Coverage::Exhaustive => {
            let class = enumerate_class(n, &ClassFilter::single(Predicate::Balanced))?;
            let space = TripleSpace::new(class.clone(), class.clone(), class, &u)?;
            let (best, count) = space.argmax(|s, i, j, k| s.w(i, j, k), |_, _, _| true);
            let (w, idx) = best.expect("balanced class non-empty");
            parts.push(
                BoundReport::new("balanced_bound.max", "W <= 3/8 on balanced triples", w, Relation::AtMost, 0.375, TOL_EXACT)
                    .with_evaluated(count)
                    .with_witness(Witness::label("largest W").gswf(&space.gswf(idx)).distribution(&u)),
            );
        }
        Coverage::Trials { trials, seed } => {
            if trials == 0 {
                return Err(Error::invalid("trials must be at least 1"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let triples: Vec<Gswf> = (0..trials)
                .map(|_| {
                    Gswf::new(
                        random_balanced(n, &mut rng)?,
                        random_balanced(n, &mut rng)?,
                        random_balanced(n, &mut rng)?,
                    )
                })
                .collect::<Result<_>>()?;
            let ws: Vec<f64> = triples.par_iter().map(|g| w_formula(g, &u).map(|r| r.w)).collect::<Result<_>>()?;
            let k = argmin_by(&ws, |w| -w).expect("trials >= 1");
            parts.push(
                BoundReport::new("balanced_bound.max", "W <= 3/8 on balanced triples", ws[k], Relation::AtMost, 0.375, TOL_EXACT)
                    .with_evaluated(trials)
                    .with_witness(Witness::label("largest sampled W").gswf(&triples[k]).distribution(&u)),
            );
        }
    }
    let x = BooleanFunction::dictator(n, 1)?;
    let first = Gswf::new(x.clone(), x.clone(), x.complement())?;
    parts.push(
        BoundReport::new(
            "balanced_bound.first_level_example",
            "f = g = x_i, h = 1 - x_i gives W = 1/3",
            w_formula(&first, &u)?.w,
            Relation::Equal,
            1.0 / 3.0,
            TOL_EXACT,
        )
        .with_witness(Witness::label("first-level example").gswf(&first).distribution(&u)),
    );
    if n >= 2 {
        let p = triple_of(&parity_pair(n)?);
        parts.push(
            BoundReport::new(
                "balanced_bound.second_level_example",
                "f = g = h = x_1 xor x_2 gives W = 1/3",
                w_formula(&p, &u)?.w,
                Relation::Equal,
                1.0 / 3.0,
                TOL_EXACT,
            )
            .with_witness(Witness::label("second-level example").gswf(&p).distribution(&u)),
        );
    }
    Ok(BoundReport::combine(
        "balanced_bound",
        "balanced triples under the uniform distribution have W <= 3/8",
        parts,
    ))
}

/// The three pseudo-spectra `(1/2; 2c, −c, −c)` and rotations on voters
/// 1..3 with `c = 1/(2√6)`.
pub fn pseudo_spectrum_triple(n: usize) -> Result<[PseudoSpectrum; 3]> {
    if n < 3 {
        return Err(Error::invalid("the pseudo-spectrum example needs n >= 3"));
    }
    let c = 1.0 / (2.0 * 6f64.sqrt());
    let make = |lead: usize| {
        let mut e = vec![(0usize, 0.5)];
        for v in 0..3 {
            e.push((1 << v, if v == lead { 2.0 * c } else { -c }));
        }
        PseudoSpectrum::sparse(n, &e)
    };
    Ok([make(0)?, make(1)?, make(2)?])
}

/// The non-Boolean triple reaching `W = 3/8` exactly.
pub fn check_pseudo_spectrum_extremal(n: usize) -> Result<BoundReport> {
    let [a, b, c] = pseudo_spectrum_triple(n)?;
    let w = w_from_spectra(&a, &b, &c, &EvenProductDistribution::uniform())?.w;
    let tail: f64 = a.coeffs()[1..].iter().map(|x| x * x).sum();
    let values = inverse_walsh_transform(&a);
    let boolean = values.iter().all(|v| v.abs() < 1e-12 || (v - 1.0).abs() < 1e-12);
    Ok(BoundReport::new(
        "pseudo_spectrum_extremal",
        "the balanced-looking pseudo-spectrum triple gives W = 3/8",
        w,
        Relation::Equal,
        0.375,
        TOL_EXACT,
    )
    .with_witness(Witness::label("pseudo-spectrum on voters 1, 2, 3").n(n))
    .note(format!("sum over S != {{}} of f(S)^2 = {tail:.15}"))
    .note(format!("pointwise values in {{0,1}}: {boolean}")))
}

// ---------------------------------------------------------------------------
// Odd power sums

/// `x³+y³+z³ ≥ x^{2k+1}+y^{2k+1}+z^{2k+1}` on `x+y+z = 1`, `x, y, z ∈ [−1,1]`.
pub fn check_lemma_power_sums(k_max: u32, grid_steps: u32) -> Result<BoundReport> {
    if k_max == 0 || grid_steps == 0 {
        return Err(Error::invalid("k_max and grid_steps must be at least 1"));
    }
    let s = grid_steps as i64;
    let gap = |x: f64, y: f64, z: f64, k: u32| -> f64 {
        let e = 2 * k as i32 + 1;
        x.powi(3) + y.powi(3) + z.powi(3) - x.powi(e) - y.powi(e) - z.powi(e)
    };
    // numerators over s: x = i/s − 1, y = j/s − 1, z = 3 − (i+j)/s
    let rows: Vec<(f64, [f64; 3], u32, u64)> = (0..=2 * s)
        .into_par_iter()
        .map(|i| {
            let mut best = (f64::INFINITY, [0.0; 3], 1, 0u64);
            for j in 0..=2 * s {
                let zn = 3 * s - i - j;
                if zn < -s || zn > s {
                    continue;
                }
                let (x, y, z) = ((i - s) as f64 / s as f64, (j - s) as f64 / s as f64, zn as f64 / s as f64);
                for k in 1..=k_max {
                    best.3 += 1;
                    let v = gap(x, y, z, k);
                    if v < best.0 {
                        best = (v, [x, y, z], k, best.3);
                    }
                }
            }
            best
        })
        .collect();
    let count: u64 = rows.iter().map(|r| r.3).sum();
    let w = argmin_by(&rows, |r| r.0).expect("grid non-empty");
    let (v, p, k, _) = rows[w];
    let grid = BoundReport::new(
        "lemma_power_sums.grid",
        "odd power sums of order 3 dominate higher odd orders on the slice",
        v,
        Relation::AtLeast,
        0.0,
        TOL_EXACT,
    )
    .with_evaluated(count)
    .with_witness(Witness::label(format!("k = {k}")).point(p.to_vec()));
    let mut worst_edge = (0.0f64, 0.0, 1);
    for t in 0..=s {
        let t = t as f64 / s as f64;
        for k in 1..=k_max {
            let v = gap(1.0, t, -t, k);
            if v.abs() > worst_edge.0.abs() {
                worst_edge = (v, t, k);
            }
        }
    }
    let edge = BoundReport::new(
        "lemma_power_sums.boundary",
        "the gap vanishes at (1, t, -t)",
        worst_edge.0,
        Relation::Equal,
        0.0,
        TOL_EXACT,
    )
    .with_evaluated((s as u64 + 1) * k_max as u64)
    .with_witness(Witness::label(format!("k = {}", worst_edge.2)).point(vec![1.0, worst_edge.1, -worst_edge.1]));
    Ok(BoundReport::combine(
        "lemma_power_sums",
        "x^3+y^3+z^3 >= x^(2k+1)+y^(2k+1)+z^(2k+1) when x+y+z = 1 on [-1,1]^3",
        vec![grid, edge],
    )
    .note(format!("k <= {k_max}, grid step 1/{grid_steps}")))
}

// ---------------------------------------------------------------------------
// Neutral symmetric functions and majority

/// `(1/4 − d)(1 + δ1³ + δ2³ + δ3³)`.
pub fn neutral_lower_bound(d_m: f64, dist: &EvenProductDistribution) -> f64 {
    let cubes: f64 = dist.deltas().iter().map(|d| d.powi(3)).sum();
    (0.25 - d_m) * (1.0 + cubes)
}

/// Self-dual, cyclically invariant functions at small odd `n`.
fn neutral_cyclic(n: usize) -> Result<Vec<BooleanFunction>> {
    let len = 1u64 << n;
    let half = len / 2;
    if half > 16 {
        return Err(Error::Budget(format!("neutral enumeration limited to n <= 5, got {n}")));
    }
    let mut out = vec![];
    for t in 0..1u64 << half {
        let f = BooleanFunction::from_fn(n, |x| {
            if x < half {
                t >> x & 1 == 1
            } else {
                t >> (!x & (len - 1)) & 1 == 0
            }
        })?;
        if f.is_cyclic_invariant() {
            out.push(f);
        }
    }
    Ok(out)
}

/// `W(f,f,f) ≥ (1/4 − d_m)(1 + Σ δ³)` for majority at each odd `n`, and for
/// every self-dual cyclically invariant `f` at `n ≤ 5`.
pub fn check_neutral_symmetric_bound(ns: &[usize], d: &EvenProductDistribution) -> Result<BoundReport> {
    if ns.is_empty() {
        return Err(Error::invalid("the n list is empty"));
    }
    let mut parts = vec![];
    for &n in ns {
        require_odd(n)?;
        let dm = majority_first_level_weight(n)?;
        let rhs = neutral_lower_bound(dm, d);
        let m = majority(n)?;
        let spec = walsh_transform(&m);
        let level1 = level_weights(&spec)[1];
        parts.push(
            BoundReport::new(
                format!("neutral_symmetric_bound.d_m.n{n}"),
                "closed-form d_m equals the first-level weight of majority",
                dm,
                Relation::Equal,
                level1,
                if n >= 16 { 1e-9 } else { TOL_EXACT },
            )
            .with_witness(Witness::label("majority").n(n)),
        );
        let g = triple_of(&m);
        parts.push(
            BoundReport::new(
                format!("neutral_symmetric_bound.majority.n{n}"),
                "W(maj, maj, maj) >= (1/4 - d_m)(1 + sum of cubed deltas)",
                w_formula(&g, d)?.w,
                Relation::AtLeast,
                rhs,
                TOL_EXACT,
            )
            .with_witness(Witness::label("majority triple").gswf(&g).distribution(d)),
        );
        if n <= 5 {
            let fs = neutral_cyclic(n)?;
            let ws: Vec<f64> = fs
                .iter()
                .map(|f| w_formula(&triple_of(f), d).map(|r| r.w))
                .collect::<Result<_>>()?;
            let k = argmin_by(&ws, |w| *w).expect("majority is neutral and cyclic");
            parts.push(
                BoundReport::new(
                    format!("neutral_symmetric_bound.all_neutral.n{n}"),
                    "every self-dual cyclic f satisfies the same bound",
                    ws[k],
                    Relation::AtLeast,
                    rhs,
                    TOL_EXACT,
                )
                .with_evaluated(fs.len() as u64)
                .with_witness(Witness::label("least W").gswf(&triple_of(&fs[k])).distribution(d)),
            );
        }
    }
    let limit = neutral_lower_bound(1.0 / (2.0 * PI), d);
    Ok(BoundReport::combine(
        "neutral_symmetric_bound",
        "neutral symmetric triples have W >= (1/4 - d_m)(1 + sum of cubed deltas)",
        parts,
    )
    .note(format!("asymptotic constant (1/4 - 1/(2 pi))(1 + sum of cubed deltas) = {limit:.6}")))
}

/// `(1/4 − 1/(2π))·(8/9) ≈ 0.0808` under the uniform distribution.
pub fn check_neutral_limit_constant() -> BoundReport {
    let v = neutral_lower_bound(1.0 / (2.0 * PI), &EvenProductDistribution::uniform());
    BoundReport::new(
        "neutral_limit_constant",
        "(1/4 - 1/(2 pi)) * 8/9 is 0.0808 to within 2e-4",
        v,
        Relation::Equal,
        0.0808,
        2e-4,
    )
}

/// `|<<maj_n, maj_n>>_ρ − arcsin(ρ)/2π|` is non-increasing along `ns` and at
/// most `0.01` at the last `n`.
pub fn check_majority_stability(ns: &[usize], rhos: &[f64]) -> Result<BoundReport> {
    if ns.is_empty() || rhos.is_empty() {
        return Err(Error::invalid("n and rho lists must be non-empty"));
    }
    if ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("n list must be strictly ascending"));
    }
    let rows = crate::curves::majority_stability_curve(ns, rhos)?;
    let err = |ni: usize, ri: usize| rows[ni * rhos.len() + ri].abs_err;
    let mut parts = vec![];
    for (ri, &rho) in rhos.iter().enumerate() {
        let mut worst: Option<BoundReport> = None;
        for ni in 1..ns.len() {
            let r = BoundReport::new(
                format!("majority_stability.decreasing.rho{rho:.4}"),
                "error does not grow with n",
                err(ni, ri),
                Relation::AtMost,
                err(ni - 1, ri),
                1e-15,
            )
            .with_witness(Witness::label(format!("n = {} after n = {}", ns[ni], ns[ni - 1])).n(ns[ni]).delta(rho));
            if worst.as_ref().is_none_or(|w| r.margin < w.margin) {
                worst = Some(r);
            }
        }
        if let Some(w) = worst {
            parts.push(w.with_evaluated(ns.len() as u64 - 1));
        }
        let last = ns.len() - 1;
        parts.push(
            BoundReport::new(
                format!("majority_stability.limit.rho{rho:.4}"),
                "error at the largest n is at most 0.01",
                err(last, ri),
                Relation::AtMost,
                TOL_ASYMPTOTIC,
                0.0,
            )
            .with_witness(Witness::label("majority").n(ns[last]).delta(rho)),
        );
    }
    Ok(BoundReport::combine(
        "majority_stability",
        "<<maj_n, maj_n>>_rho approaches arcsin(rho)/(2 pi)",
        parts,
    ))
}

// ---------------------------------------------------------------------------
// Duals and lower bounds

/// `f̂'(S) = (−1)^{|S|−1} f̂(S)` for `S ≠ ∅`, over all functions at each
/// `n ≤ n_max`.
pub fn check_dual_claim(n_max: usize) -> Result<BoundReport> {
    let mut worst = (0.0f64, None::<BooleanFunction>, 0usize);
    let mut count = 0u64;
    for n in 1..=n_max {
        for f in all_functions(n)? {
            let a = walsh_transform(&f);
            let b = walsh_transform(&f.dual());
            for (mask, (x, y)) in a.coeffs().iter().zip(b.coeffs()).enumerate().skip(1) {
                count += 1;
                let sign = if mask.count_ones() % 2 == 1 { 1.0 } else { -1.0 };
                let e = (y - sign * x).abs();
                if worst.1.is_none() || e > worst.0 {
                    worst = (e, Some(f.clone()), mask);
                }
            }
        }
    }
    let f = worst.1.ok_or_else(|| Error::invalid("n_max must be at least 1"))?;
    Ok(BoundReport::new(
        "dual_claim",
        "coefficients of the dual satisfy f'(S) = (-1)^(|S|-1) f(S) for S != {}",
        worst.0,
        Relation::AtMost,
        0.0,
        TOL_EXACT,
    )
    .with_evaluated(count)
    .with_witness(Witness::label(format!("subset mask {}", worst.2)).functions([f.clone(), f.dual()])))
}

#[derive(Clone, Copy)]
struct PairEval {
    v: f64,
    p1: f64,
    p2: f64,
    i: usize,
    j: usize,
    delta: f64,
}

fn pair_evals(fs: &[BooleanFunction], deltas: &[f64]) -> Vec<PairEval> {
    let specs = spectra(fs);
    let mut out = vec![];
    for (i, a) in specs.iter().enumerate() {
        for (j, b) in specs.iter().enumerate() {
            for &delta in deltas {
                out.push(PairEval {
                    v: biased_inner_product(a, b, delta).expect("same arity"),
                    p1: a.mean(),
                    p2: b.mean(),
                    i,
                    j,
                    delta,
                });
            }
        }
    }
    out
}

fn pair_report(
    name: &str,
    claim: &str,
    evals: &[PairEval],
    fs: &[BooleanFunction],
    lhs: impl Fn(&PairEval) -> f64,
    relation: Relation,
    tol: f64,
) -> Option<BoundReport> {
    let k = argmin_by(evals, |e| relation.margin(lhs(e), 0.0))?;
    let e = &evals[k];
    Some(
        BoundReport::new(name, claim, lhs(e), relation, 0.0, tol)
            .with_evaluated(evals.len() as u64)
            .with_witness(Witness::label("worst pair").functions([fs[e.i].clone(), fs[e.j].clone()]).delta(e.delta)),
    )
}

/// `<<f,g>>_δ ≥ −p1p2` and `≥ −(1−p1)(1−p2)`, strict for non-constant pairs
/// and tight when one side is constant. Exhaustive at `n ≤ 3`, sampled above.
pub fn check_lower_bound_biased(n: usize, trials: u64, deltas: &[f64], seed: u64) -> Result<BoundReport> {
    if deltas.iter().any(|d| !(-1.0..=1.0).contains(d)) {
        return Err(Error::invalid("delta grid must lie in [-1, 1]"));
    }
    let fs: Vec<BooleanFunction> = if n <= 3 {
        all_functions(n)?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v: Vec<BooleanFunction> =
            (0..trials.max(1)).map(|_| random_function(n, &mut rng)).collect::<Result<_>>()?;
        v.push(BooleanFunction::constant(n, false)?);
        v.push(BooleanFunction::constant(n, true)?);
        v
    };
    let evals = pair_evals(&fs, deltas);
    let nonconst: Vec<PairEval> = evals
        .iter()
        .filter(|e| !fs[e.i].is_constant() && !fs[e.j].is_constant())
        .copied()
        .collect();
    let zero: Vec<PairEval> = evals.iter().filter(|e| fs[e.i].weight() == 0).copied().collect();
    let one: Vec<PairEval> = evals.iter().filter(|e| fs[e.i].is_constant() && fs[e.i].weight() > 0).copied().collect();
    let lower = |e: &PairEval| e.v + (e.p1 * e.p2).min((1.0 - e.p1) * (1.0 - e.p2));
    let prop = |e: &PairEval| e.v + e.p1 * e.p2;
    let cor = |e: &PairEval| e.v + (1.0 - e.p1) * (1.0 - e.p2);
    let mut parts = vec![];
    parts.extend(pair_report(
        "lower_bound_biased.bound",
        "<<f,g>>_delta + min(p1 p2, (1-p1)(1-p2)) >= 0",
        &evals,
        &fs,
        lower,
        Relation::AtLeast,
        TOL_EXACT,
    ));
    parts.extend(pair_report(
        "lower_bound_biased.strict_product",
        "<<f,g>>_delta + p1 p2 > 0 for non-constant f, g",
        &nonconst,
        &fs,
        prop,
        Relation::Greater,
        TOL_EXACT,
    ));
    parts.extend(pair_report(
        "lower_bound_biased.strict_complement",
        "<<f,g>>_delta + (1-p1)(1-p2) > 0 for non-constant f, g",
        &nonconst,
        &fs,
        cor,
        Relation::Greater,
        TOL_EXACT,
    ));
    parts.extend(pair_report(
        "lower_bound_biased.equality_zero",
        "f = 0 gives <<f,g>>_delta + p1 p2 = 0",
        &zero,
        &fs,
        prop,
        Relation::Equal,
        TOL_EXACT,
    ));
    parts.extend(pair_report(
        "lower_bound_biased.equality_one",
        "f = 1 gives <<f,g>>_delta + (1-p1)(1-p2) = 0",
        &one,
        &fs,
        cor,
        Relation::Equal,
        TOL_EXACT,
    ));
    Ok(BoundReport::combine(
        "lower_bound_biased",
        "<<f,g>>_delta >= -p1 p2 and >= -(1-p1)(1-p2), strictly unless a side is constant",
        parts,
    )
    .note(format!("delta grid {deltas:?}")))
}

/// Strictness at `|δ| = 1`, where it fails: `T_{∓1}` is a reflection or the
/// identity and no longer strictly positive.
pub fn check_lower_bound_unit_noise(n: usize) -> Result<BoundReport> {
    let fs = all_functions(n)?;
    let evals: Vec<PairEval> = pair_evals(&fs, &[-1.0, 1.0])
        .into_iter()
        .filter(|e| !fs[e.i].is_constant() && !fs[e.j].is_constant())
        .collect();
    let r = pair_report(
        "lower_bound_unit_noise",
        "<<f,g>>_delta + p1 p2 > 0 for non-constant f, g at delta = +-1",
        &evals,
        &fs,
        |e| e.v + e.p1 * e.p2,
        Relation::Greater,
        TOL_EXACT,
    )
    .ok_or_else(|| Error::invalid("no non-constant pairs"))?;
    Ok(r.note("strictness needs |delta| < 1: passes when a tight non-constant pair is found").invert())
}

/// Non-constant triples at `n` with `p1 + p2 + p3 ≤ 1` have
/// `W > 1 − p1 − p2 − p3 ≥ 0` under the uniform distribution.
pub fn check_arrow_sum_condition(n: usize) -> Result<BoundReport> {
    let class = enumerate_class(n, &ClassFilter::single(Predicate::NonConstant))?;
    let u = EvenProductDistribution::uniform();
    let space = TripleSpace::new(class.clone(), class.clone(), class, &u)?;
    let means: Vec<f64> = space.fs.iter().map(BooleanFunction::expectation).collect();
    let admit = |i: usize, j: usize, k: usize| means[i] + means[j] + means[k] <= 1.0 + 1e-15;
    let (best, count) = space.argmax(|s, i, j, k| -s.w(i, j, k), admit);
    let (_, idx) = best.ok_or_else(|| Error::invalid("no triple meets the sum condition"))?;
    let positive = BoundReport::new(
        "arrow_sum_condition.positive",
        "W > 0",
        space.w(idx.0, idx.1, idx.2),
        Relation::Greater,
        0.0,
        TOL_EXACT,
    )
    .with_evaluated(count)
    .with_witness(Witness::label("least W").gswf(&space.gswf(idx)).distribution(&u));
    let slack = |s: &TripleSpace, i: usize, j: usize, k: usize| s.w(i, j, k) - (1.0 - means[i] - means[j] - means[k]);
    let (best, count) = space.argmax(|s, i, j, k| -slack(s, i, j, k), admit);
    let (_, idx) = best.expect("same admitted set");
    let sum = means[idx.0] + means[idx.1] + means[idx.2];
    let above = BoundReport::new(
        "arrow_sum_condition.above_gap",
        "W > 1 - p1 - p2 - p3",
        space.w(idx.0, idx.1, idx.2),
        Relation::Greater,
        1.0 - sum,
        TOL_EXACT,
    )
    .with_evaluated(count)
    .with_witness(Witness::label("least W - (1 - sum p)").gswf(&space.gswf(idx)).distribution(&u));
    Ok(BoundReport::combine(
        "arrow_sum_condition",
        "non-constant triples with p1 + p2 + p3 <= 1 are irrational with positive probability",
        vec![positive, above],
    ))
}

// ---------------------------------------------------------------------------
// The sign-blind variant W'

/// Upper bound on `W'(AND_n, OR_n, maj_n)` keeping the base term and the
/// first level of `<<h, f>>'`: `2^{−n}(1−2^{−n}) − (1/3) n C(n−1,(n−1)/2) 4^{−n}`.
pub fn w_prime_first_level_bound(n: usize) -> Result<f64> {
    require_odd(n)?;
    let p = (-(n as f64) * std::f64::consts::LN_2).exp();
    let ln_tail = (n as f64).ln() + ln_binomial(n as u64 - 1, (n as u64 - 1) / 2)
        - 2.0 * n as f64 * std::f64::consts::LN_2;
    Ok(p * (1.0 - p) - ln_tail.exp() / 3.0)
}

/// The exact `W'` of the AND/OR/majority triple stays below the first-level
/// bound.
pub fn check_w_prime_bound_valid(ns: &[usize]) -> Result<BoundReport> {
    let mut parts = vec![];
    for &n in ns {
        let g = preset_gswf(&Preset::AndDualMajority, n)?;
        parts.push(
            BoundReport::new(
                format!("w_prime_bound_valid.n{n}"),
                "W' <= first-level bound",
                w_prime(&g)?,
                Relation::AtMost,
                w_prime_first_level_bound(n)?,
                TOL_EXACT,
            )
            .with_witness(Witness::label("and_dual_majority").gswf(&g)),
        );
    }
    if parts.is_empty() {
        return Err(Error::invalid("the n list is empty"));
    }
    Ok(BoundReport::combine(
        "w_prime_bound_valid",
        "the first-level expression bounds W'(AND, OR, maj) from above",
        parts,
    ))
}

/// `W' ≥ 0` fails for the AND/OR/majority triple at large `n`, even though
/// `W > 0` for every non-dictatorial triple there.
pub fn check_w_prime_counterexample(n: usize) -> Result<BoundReport> {
    let bound = w_prime_first_level_bound(n)?;
    let small = w_prime(&preset_gswf(&Preset::AndDualMajority, 3)?)?;
    Ok(BoundReport::new(
        "w_prime_counterexample",
        "W'(AND, OR, maj) >= 0",
        bound,
        Relation::AtLeast,
        0.0,
        0.0,
    )
    .with_witness(Witness::label("upper bound on W'(and_dual_majority)").n(n))
    .note(format!("exact W' at n = 3 is {small:.12}"))
    .note("the sign-blind variant is not a lower bound on W: passes when the bound goes negative")
    .invert())
}

// ---------------------------------------------------------------------------
// Instability constructions

/// AND/OR/majority has `0 < W ≤ 0.471^n`; the threshold family has `W/η`
/// strictly decreasing; `q − 1.08 < H(q) − 1` on `q_grid`.
pub fn check_instability_example(and_ns: &[usize], thr_ns: &[usize], q: f64, q_grid: &[f64]) -> Result<BoundReport> {
    let u = EvenProductDistribution::uniform();
    let mut parts = vec![];
    for &n in and_ns {
        let g = preset_gswf(&Preset::AndDualMajority, n)?;
        let w = w_formula(&g, &u)?.w;
        let wit = Witness::label("and_dual_majority").gswf(&g).distribution(&u);
        parts.push(
            BoundReport::new(format!("instability_example.and_positive.n{n}"), "W > 0", w, Relation::Greater, 0.0, 0.0)
                .with_witness(wit.clone()),
        );
        parts.push(
            BoundReport::new(
                format!("instability_example.and_ceiling.n{n}"),
                "W <= 0.471^n",
                w,
                Relation::AtMost,
                0.471f64.powi(n as i32),
                0.0,
            )
            .with_witness(wit),
        );
    }
    if !thr_ns.is_empty() {
        let rows = crate::curves::instability_curve(thr_ns, q)?;
        for w in rows.windows(2) {
            parts.push(
                BoundReport::new(
                    format!("instability_example.ratio_decreasing.n{}", w[1].n),
                    "W / eta strictly decreases with n",
                    w[1].ratio,
                    Relation::Less,
                    w[0].ratio,
                    0.0,
                )
                .with_witness(Witness::label(format!("threshold_instability q = {q}")).n(w[1].n))
                .note(format!("W = {:e}, eta = {:e}", w[1].w, w[1].eta)),
            );
        }
    }
    for &qq in q_grid {
        parts.push(
            BoundReport::new(
                format!("instability_example.exponent.q{qq:.2}"),
                "q - 1.08 < H(q) - 1",
                qq - 1.08,
                Relation::Less,
                binary_entropy(qq) - 1.0,
                0.0,
            )
            .with_witness(Witness::label("q").point(vec![qq])),
        );
    }
    if parts.is_empty() {
        return Err(Error::invalid("nothing to evaluate"));
    }
    Ok(BoundReport::combine(
        "instability_example",
        "instability constructions: AND/OR/majority below 0.471^n, threshold family W/eta decreasing",
        parts,
    ))
}

/// `min(E[f], E[g], E[h]) ≥ η = 2^{nH(q)−1}/(n+1)` for the threshold family.
pub fn check_expectation_floor(ns: &[usize], qs: &[f64]) -> Result<BoundReport> {
    let mut parts = vec![];
    for &q in qs {
        for &n in ns {
            let g = preset_gswf(&Preset::ThresholdInstability { q }, n)?;
            let e = g.expectations().into_iter().fold(f64::INFINITY, f64::min);
            parts.push(
                BoundReport::new(
                    format!("instability_expectation_floor.q{q:.2}.n{n}"),
                    "min(E[f], E[g], E[h]) >= 2^(n H(q) - 1) / (n + 1)",
                    e,
                    Relation::AtLeast,
                    eta(n, q)?,
                    TOL_EXACT,
                )
                .with_witness(Witness::label(format!("threshold_instability q = {q}")).gswf(&g)),
            );
        }
    }
    if parts.is_empty() {
        return Err(Error::invalid("nothing to evaluate"));
    }
    Ok(BoundReport::combine(
        "instability_expectation_floor",
        "threshold instability components have expectation at least eta",
        parts,
    )
    .note("eta exceeds 1 once n H(q) > 1 + log2(n + 1), so the floor cannot hold as written"))
}

// ---------------------------------------------------------------------------
// Arbitrary even product distributions

/// Balanced monotone triples never exceed `W = 1/2` under any even product
/// distribution; the `(1/2, 0, 0)` extremal reaches it.
pub fn check_alpha_half_ceiling(n: usize, trials: u64, seed: u64) -> Result<BoundReport> {
    let class = enumerate_class(n, &ClassFilter::new(vec![Predicate::Balanced, Predicate::Monotone])?)?;
    let specs = spectra(&class);
    let grid = simplex_grid(10);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = class.len();
    let idx: Vec<(usize, usize, usize)> = (0..trials.max(1))
        .map(|_| (rng.gen_range(0..l), rng.gen_range(0..l), rng.gen_range(0..l)))
        .collect();
    let rows: Vec<(f64, usize, usize)> = idx
        .par_iter()
        .enumerate()
        .map(|(t, &(i, j, k))| {
            let mut best = (f64::NEG_INFINITY, t, 0);
            for (gi, d) in grid.iter().enumerate() {
                let [a, b, c] = d.deltas();
                let w = base_term([0.5; 3])
                    + biased_inner_product(&specs[i], &specs[j], a).expect("arity")
                    + biased_inner_product(&specs[j], &specs[k], b).expect("arity")
                    + biased_inner_product(&specs[k], &specs[i], c).expect("arity");
                if w > best.0 {
                    best = (w, t, gi);
                }
            }
            best
        })
        .collect();
    let top = argmin_by(&rows, |r| -r.0).expect("trials >= 1");
    let (w, t, gi) = rows[top];
    let (i, j, k) = idx[t];
    let wit = Gswf::new(class[i].clone(), class[j].clone(), class[k].clone())?;
    let sampled = BoundReport::new(
        "alpha_half_ceiling.sampled",
        "W <= 1/2 for balanced monotone triples",
        w,
        Relation::AtMost,
        0.5,
        TOL_EXACT,
    )
    .with_evaluated(idx.len() as u64 * grid.len() as u64)
    .with_witness(Witness::label("largest W").gswf(&wit).distribution(&grid[gi]));
    let ext = preset_gswf(&Preset::AlphaHalfExtremal, n.max(2))?;
    let half = EvenProductDistribution::new(0.5, 0.0, 0.0)?;
    let tight = BoundReport::new(
        "alpha_half_ceiling.tight",
        "alpha_half_extremal under (1/2, 0, 0) gives W = 1/2",
        w_formula(&ext, &half)?.w,
        Relation::Equal,
        0.5,
        TOL_EXACT,
    )
    .with_witness(Witness::label("alpha_half_extremal").gswf(&ext).distribution(&half));
    let u = EvenProductDistribution::uniform();
    let uniform = BoundReport::new(
        "alpha_half_ceiling.uniform_value",
        "alpha_half_extremal under the uniform distribution gives W = 1/6",
        w_formula(&ext, &u)?.w,
        Relation::Equal,
        1.0 / 6.0,
        TOL_EXACT,
    )
    .with_witness(Witness::label("alpha_half_extremal").gswf(&ext).distribution(&u));
    Ok(BoundReport::combine(
        "alpha_half_ceiling",
        "balanced monotone triples have W <= 1/2 under every even product distribution",
        vec![sampled, tight, uniform],
    )
    .note(format!("{} sampled triples at n = {n} over {} grid distributions", idx.len(), grid.len())))
}

// ---------------------------------------------------------------------------
// Spectral identities

/// Spectral and convolution forms of `T_ε` agree on every function at each
/// `n ≤ n_max`.
pub fn check_noise_equivalence(n_max: usize, eps: &[f64]) -> Result<BoundReport> {
    let mut worst = (0.0f64, None::<BooleanFunction>, 0.0);
    let mut count = 0;
    for n in 1..=n_max {
        for f in all_functions(n)? {
            for &e in eps {
                let spec = noise_operator_spectral(&walsh_transform(&f), e)?;
                let a = inverse_walsh_transform(&spec);
                let mut b = f.values();
                noise_convolve_in_place(&mut b, e)?;
                let err = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                count += 1;
                if worst.1.is_none() || err > worst.0 {
                    worst = (err, Some(f.clone()), e);
                }
            }
        }
    }
    let f = worst.1.ok_or_else(|| Error::invalid("need n_max >= 1 and a non-empty eps grid"))?;
    Ok(BoundReport::new(
        "noise_equivalence",
        "spectral and convolution noise operators agree pointwise",
        worst.0,
        Relation::AtMost,
        0.0,
        TOL_EXACT,
    )
    .with_evaluated(count)
    .with_witness(Witness::label("largest pointwise gap").functions([f]).delta(worst.2)))
}

/// `T_ε f` is increasing for monotone `f` when `ε > 0` and decreasing when
/// `ε < 0`.
pub fn check_noise_monotone_transfer(n_max: usize, eps: &[f64]) -> Result<BoundReport> {
    let mut worst = (f64::INFINITY, None::<BooleanFunction>, 0.0);
    let mut count = 0;
    for n in 1..=n_max {
        for f in monotone_class(n)? {
            for &e in eps.iter().filter(|e| **e != 0.0) {
                let mut v = f.values();
                noise_convolve_in_place(&mut v, e)?;
                let sign = e.signum();
                for x in 0..v.len() {
                    for i in 0..n {
                        if x >> i & 1 == 0 {
                            count += 1;
                            let step = sign * (v[x | 1 << i] - v[x]);
                            if step < worst.0 {
                                worst = (step, Some(f.clone()), e);
                            }
                        }
                    }
                }
            }
        }
    }
    let f = worst.1.ok_or_else(|| Error::invalid("need n_max >= 1 and a nonzero eps"))?;
    Ok(BoundReport::new(
        "noise_monotone_transfer",
        "sign(eps) * (T_eps f(x + e_i) - T_eps f(x)) >= 0 for monotone f",
        worst.0,
        Relation::AtLeast,
        0.0,
        TOL_EXACT,
    )
    .with_evaluated(count)
    .with_witness(Witness::label("least signed step").functions([f]).delta(worst.2)))
}

/// Parseval `Σ f̂(S)² = f̂(∅)` and the inverse round trip.
pub fn check_parseval_round_trip(n_max: usize) -> Result<BoundReport> {
    let mut worst = (0.0f64, None::<BooleanFunction>);
    let mut count = 0;
    for n in 1..=n_max {
        for f in all_functions(n)? {
            let s = walsh_transform(&f);
            let parseval = (s.coeffs().iter().map(|c| c * c).sum::<f64>() - s.mean()).abs();
            let trip = inverse_walsh_transform(&s)
                .iter()
                .zip(f.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            count += 1;
            let e = parseval.max(trip);
            if worst.1.is_none() || e > worst.0 {
                worst = (e, Some(f));
            }
        }
    }
    let f = worst.1.ok_or_else(|| Error::invalid("n_max must be at least 1"))?;
    Ok(BoundReport::new(
        "parseval_round_trip",
        "Parseval holds and the inverse transform recovers the table",
        worst.0,
        Relation::AtMost,
        0.0,
        TOL_EXACT,
    )
    .with_evaluated(count)
    .with_witness(Witness::label("largest error").functions([f])))
}

// ---------------------------------------------------------------------------
// Registry

/// Default grid for the biased-product and lower-bound checks, strictly
/// inside `(−1, 1)` plus zero.
pub const DELTA_GRID: [f64; 7] = [-0.9, -2.0 / 3.0, -1.0 / 3.0, 0.0, 1.0 / 3.0, 2.0 / 3.0, 0.9];
pub const EPS_GRID: [f64; 9] = [-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0];
pub const RHO_GRID: [f64; 7] = [0.0, 0.1, 0.2, 1.0 / 3.0, 0.5, 0.7, 1.0];

fn odd_range(lo: usize, hi: usize) -> Vec<usize> {
    (lo..=hi).filter(|n| n % 2 == 1).collect()
}

pub fn q_grid() -> Vec<f64> {
    (1..=9).map(|i| i as f64 * 0.05).collect()
}

/// Names accepted by [`run_check`], sorted.
pub const CHECK_NAMES: [&str; 23] = [
    "alpha_half_ceiling",
    "arrow_sum_condition",
    "balanced_bound",
    "biased_product_sign",
    "biased_product_sign_non_monotone",
    "dual_claim",
    "fkg",
    "formula_vs_oracle",
    "instability_example",
    "instability_expectation_floor",
    "lemma_power_sums",
    "lower_bound_biased",
    "lower_bound_unit_noise",
    "majority_stability",
    "monotone_bound",
    "neutral_limit_constant",
    "neutral_symmetric_bound",
    "noise_equivalence",
    "noise_monotone_transfer",
    "parseval_round_trip",
    "pseudo_spectrum_extremal",
    "w_prime_bound_valid",
    "w_prime_counterexample",
];

/// Runs one named check with its default parameters.
pub fn run_check(name: &str, seed: u64) -> Result<BoundReport> {
    match name {
        "alpha_half_ceiling" => check_alpha_half_ceiling(4, 10_000, seed),
        "arrow_sum_condition" => check_arrow_sum_condition(2),
        "balanced_bound" => {
            let exact = check_balanced_bound(2, Coverage::Exhaustive)?;
            let sampled = check_balanced_bound(4, Coverage::Trials { trials: 10_000, seed })?;
            Ok(BoundReport::combine(
                "balanced_bound",
                "balanced triples under the uniform distribution have W <= 3/8",
                vec![exact, sampled],
            ))
        }
        "biased_product_sign" => check_biased_product_sign(4, &DELTA_GRID),
        "biased_product_sign_non_monotone" => check_biased_product_sign_non_monotone(3, &DELTA_GRID),
        "dual_claim" => check_dual_claim(3),
        "fkg" => check_fkg(4, 10_000, seed),
        "neutral_limit_constant" => Ok(check_neutral_limit_constant()),
        "formula_vs_oracle" => check_formula_vs_oracle(5, 200, 20, seed),
        "instability_example" => check_instability_example(&odd_range(3, 15), &odd_range(5, 15), 0.2, &q_grid()),
        "instability_expectation_floor" => check_expectation_floor(&odd_range(3, 15), &[0.1, 0.2, 0.3, 0.4]),
        "lemma_power_sums" => check_lemma_power_sums(6, 200),
        "lower_bound_biased" => check_lower_bound_biased(2, 0, &DELTA_GRID, seed),
        "lower_bound_unit_noise" => check_lower_bound_unit_noise(2),
        "majority_stability" => check_majority_stability(&odd_range(3, 19), &RHO_GRID),
        "monotone_bound" => check_monotone_bound_grid(3),
        "neutral_symmetric_bound" => {
            let ds = [
                EvenProductDistribution::uniform(),
                EvenProductDistribution::new(0.25, 0.25, 0.0)?,
                EvenProductDistribution::new(0.1, 0.15, 0.25)?,
                EvenProductDistribution::new(0.4, 0.05, 0.05)?,
            ];
            let parts = ds
                .iter()
                .map(|d| check_neutral_symmetric_bound(&odd_range(3, 15), d))
                .collect::<Result<Vec<_>>>()?;
            Ok(BoundReport::combine(
                "neutral_symmetric_bound",
                "neutral symmetric triples have W >= (1/4 - d_m)(1 + sum of cubed deltas)",
                parts,
            ))
        }
        "noise_equivalence" => check_noise_equivalence(3, &EPS_GRID),
        "noise_monotone_transfer" => check_noise_monotone_transfer(3, &EPS_GRID),
        "parseval_round_trip" => check_parseval_round_trip(3),
        "pseudo_spectrum_extremal" => check_pseudo_spectrum_extremal(3),
        "w_prime_bound_valid" => check_w_prime_bound_valid(&odd_range(3, 11)),
        "w_prime_counterexample" => check_w_prime_counterexample(61),
        other => Err(Error::invalid(format!(
            "unknown check {other:?}; known checks: {}",
            CHECK_NAMES.join(", ")
        ))),
    }
}

/// Every registered check, sorted by name.
pub fn run_all(seed: u64) -> Result<Vec<BoundReport>> {
    let mut out = CHECK_NAMES
        .par_iter()
        .map(|name| run_check(name, seed))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_semantics() {
        let r = BoundReport::new("t", "c", 1.0, Relation::AtMost, 1.0 - 1e-13, 1e-12);
        assert!(r.pass && r.margin < 0.0);
        let r = BoundReport::new("t", "c", 0.0, Relation::Greater, 0.0, 0.0);
        assert!(!r.pass);
        let r = BoundReport::new("t", "c", 2.0, Relation::AtLeast, 1.0, 0.0).invert();
        assert!(r.claim_holds && !r.pass);
        let r = BoundReport::new("t", "c", f64::NAN, Relation::AtMost, 1.0, 0.0);
        assert!(!r.pass);
    }

    #[test]
    fn combine_reports_first_failure() {
        let a = BoundReport::new("a", "", 0.0, Relation::AtMost, 1.0, 0.0);
        let b = BoundReport::new("b", "", 2.0, Relation::AtMost, 1.0, 0.0);
        let c = BoundReport::combine("x", "", vec![a, b]);
        assert!(!c.pass);
        assert_eq!(c.lhs, 2.0);
        assert_eq!(c.evaluated, 2);
    }

    #[test]
    fn grids() {
        let g = non_positive_grid();
        assert_eq!(g.len(), 25);
        assert!(g.iter().all(|d| d.is_non_positive()));
        assert_eq!(simplex_grid(10).len(), 66);
    }

    #[test]
    fn first_level_coefficient() {
        assert!((majority_first_level(3).unwrap() - 0.25).abs() < 1e-15);
        for n in [5, 7, 9, 11] {
            let s = walsh_transform(&majority(n).unwrap());
            assert!((majority_first_level(n).unwrap() - s.coeffs()[1]).abs() < 1e-14);
        }
        assert!(majority_first_level(4).is_err());
    }

    #[test]
    fn formula_vs_oracle_small() {
        let r = check_formula_vs_oracle(3, 20, 3, 1).unwrap();
        assert!(r.pass, "{r:?}");
        // n = 1: 64 triples, n = 2: 4096 triples
        assert_eq!(r.evaluated, (64 + 4096 + 20) * 3);
    }

    #[test]
    fn non_even_distribution_is_not_applicable() {
        let t = TripleDistribution::new([0.3, 0.1, 0.1, 0.2, 0.2, 0.1]).unwrap();
        let g = preset_gswf(&Preset::Condorcet, 3).unwrap();
        let r = check_formula_vs_oracle_at(&g, &t).unwrap();
        assert!(!r.applicable && r.pass);
        let r = check_formula_vs_oracle_at(&g, &TripleDistribution::uniform()).unwrap();
        assert!(r.applicable && r.pass);
    }

    #[test]
    fn monotone_bound_refuses_positive_deltas() {
        let d = EvenProductDistribution::new(0.5, 0.0, 0.0).unwrap();
        assert!(matches!(
            check_monotone_bound(3, &d, Coverage::Exhaustive),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn monotone_bound_uniform() {
        let r = check_monotone_bound(3, &EvenProductDistribution::uniform(), Coverage::Exhaustive).unwrap();
        assert!(r.pass, "{r:#?}");
        let bal = r.parts.iter().find(|p| p.name == "monotone_bound.balanced").unwrap();
        assert!((bal.lhs - 0.25).abs() < 1e-12);
        let sampled = check_monotone_bound(
            4,
            &EvenProductDistribution::uniform(),
            Coverage::Trials { trials: 2000, seed: 3 },
        )
        .unwrap();
        assert!(sampled.pass);
    }

    #[test]
    fn biased_sign_checks() {
        assert!(check_biased_product_sign(3, &DELTA_GRID).unwrap().pass);
        let demo = check_biased_product_sign_non_monotone(2, &DELTA_GRID).unwrap();
        assert!(demo.inverted && !demo.claim_holds && demo.pass);
        assert!(demo.lhs < 0.0);
    }

    #[test]
    fn fkg_small() {
        let r = check_fkg(3, 0, 0).unwrap();
        assert!(r.pass);
        assert_eq!(r.parts.len(), 6);
    }

    #[test]
    fn covariance_of_dictators() {
        let a = BooleanFunction::dictator(2, 1).unwrap();
        let b = BooleanFunction::dictator(2, 2).unwrap();
        assert_eq!(covariance(&a, &b), 0.0);
        assert_eq!(covariance(&a, &a), 0.25);
        assert_eq!(covariance(&a, &a.complement()), -0.25);
    }

    #[test]
    fn balanced_and_pseudo() {
        let r = check_balanced_bound(2, Coverage::Exhaustive).unwrap();
        assert!(r.pass);
        assert_eq!(r.parts[0].evaluated, 216);
        assert!((r.parts[0].lhs - 1.0 / 3.0).abs() < 1e-12);
        let p = check_pseudo_spectrum_extremal(3).unwrap();
        assert!(p.pass);
        assert!(p.notes.iter().any(|n| n.contains("false")));
    }

    #[test]
    fn lemma_grid() {
        let r = check_lemma_power_sums(3, 40).unwrap();
        assert!(r.pass, "{r:#?}");
        let k1 = check_lemma_power_sums(1, 40).unwrap();
        assert!(k1.parts[0].lhs.abs() < 1e-12);
    }

    #[test]
    fn neutral_equality_at_three() {
        let r = check_neutral_symmetric_bound(&[3], &EvenProductDistribution::uniform()).unwrap();
        assert!(r.pass);
        let maj = r.parts.iter().find(|p| p.name.contains("majority")).unwrap();
        assert!((maj.lhs - 1.0 / 18.0).abs() < 1e-12);
        assert!((maj.rhs - 1.0 / 18.0).abs() < 1e-12);
        let flat = check_neutral_symmetric_bound(&[5], &EvenProductDistribution::new(0.25, 0.25, 0.0).unwrap()).unwrap();
        let maj = flat.parts.iter().find(|p| p.name.contains("majority")).unwrap();
        assert!(maj.rhs.abs() < 1e-15);
        assert!(flat.pass);
    }

    #[test]
    fn neutral_limit_constant() {
        let r = check_neutral_limit_constant();
        assert!(r.pass);
        assert!((r.lhs - 0.080_751_2).abs() < 1e-7);
    }

    #[test]
    fn stability_defaults() {
        let r = check_majority_stability(&odd_range(3, 19), &RHO_GRID).unwrap();
        assert!(r.pass, "{r:#?}");
        let high = check_majority_stability(&odd_range(3, 19), &[0.9]).unwrap();
        assert!(!high.pass);
    }

    #[test]
    fn dual_and_lower_bounds() {
        assert!(check_dual_claim(3).unwrap().pass);
        let r = check_lower_bound_biased(2, 0, &DELTA_GRID, 0).unwrap();
        assert!(r.pass, "{r:#?}");
        assert_eq!(r.parts.len(), 5);
        let unit = check_lower_bound_unit_noise(2).unwrap();
        assert!(unit.inverted && unit.pass);
        assert!(unit.lhs.abs() < 1e-12);
    }

    #[test]
    fn arrow_condition() {
        let r = check_arrow_sum_condition(2).unwrap();
        assert!(r.pass, "{r:#?}");
    }

    #[test]
    fn w_prime_bound() {
        assert!((w_prime_first_level_bound(3).unwrap() - 0.078125).abs() < 1e-15);
        assert!(w_prime_first_level_bound(55).unwrap() > 0.0);
        assert!(w_prime_first_level_bound(61).unwrap() < 0.0);
        assert!(w_prime_first_level_bound(4).is_err());
        assert!(check_w_prime_bound_valid(&[3, 5, 7, 9]).unwrap().pass);
        assert!(check_w_prime_counterexample(61).unwrap().pass);
        assert!(!check_w_prime_counterexample(3).unwrap().pass);
    }

    #[test]
    fn instability() {
        let r = check_instability_example(&odd_range(3, 9), &odd_range(5, 9), 0.2, &q_grid()).unwrap();
        assert!(r.pass, "{r:#?}");
        let floor = check_expectation_floor(&[3, 5, 7], &[0.2]).unwrap();
        assert!(!floor.pass);
    }

    #[test]
    fn alpha_half() {
        let r = check_alpha_half_ceiling(3, 200, 1).unwrap();
        assert!(r.pass, "{r:#?}");
    }

    #[test]
    fn noise_and_parseval() {
        assert!(check_noise_equivalence(3, &EPS_GRID).unwrap().pass);
        assert!(check_noise_monotone_transfer(3, &EPS_GRID).unwrap().pass);
        assert!(check_parseval_round_trip(3).unwrap().pass);
    }

    #[test]
    fn registry_names_sorted_and_unknown_rejected() {
        assert!(CHECK_NAMES.windows(2).all(|w| w[0] < w[1]));
        assert!(run_check("nope", 0).is_err());
    }
}
