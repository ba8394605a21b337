//! Exhaustive and seeded random extremal search for `W` over classes of
//! choice functions.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bfn::{check_arity, walsh_transform, BooleanFunction, Spectrum, WalshSpectrum};
use crate::dist::EvenProductDistribution;
use crate::rationality::{base_term, biased_inner_product, Gswf};
use crate::{Error, Result};

/// Largest arity for which whole classes are enumerated.
pub const EXHAUSTIVE_MAX: usize = 4;
/// Most triples an exhaustive scan may visit.
pub const TRIPLE_BUDGET: u64 = 1_000_000_000;
/// Ceiling on the cached pairwise product matrices.
pub const MATRIX_BYTES_MAX: u64 = 1 << 30;
/// Slack under which two `W` values count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

const REJECTION_LIMIT: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "predicate")]
pub enum Predicate {
    Balanced,
    Monotone,
    SelfDual,
    CyclicInvariant,
    NonConstant,
    /// `lo ≤ E[f] ≤ hi`.
    ExpectationIn { lo: f64, hi: f64 },
}

impl Predicate {
    pub fn matches(&self, f: &BooleanFunction) -> bool {
        match *self {
            Predicate::Balanced => f.is_balanced(),
            Predicate::Monotone => f.is_monotone(),
            Predicate::SelfDual => f.is_self_dual(),
            Predicate::CyclicInvariant => f.is_cyclic_invariant(),
            Predicate::NonConstant => !f.is_constant(),
            Predicate::ExpectationIn { lo, hi } => (lo..=hi).contains(&f.expectation()),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Balanced => f.write_str("balanced"),
            Predicate::Monotone => f.write_str("monotone"),
            Predicate::SelfDual => f.write_str("self_dual"),
            Predicate::CyclicInvariant => f.write_str("cyclic_invariant"),
            Predicate::NonConstant => f.write_str("non_constant"),
            Predicate::ExpectationIn { lo, hi } => write!(f, "expectation_in:{lo}:{hi}"),
        }
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("expectation_in:") {
            let (lo, hi) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("{s}: expected expectation_in:<lo>:<hi>")))?;
            let parse = |v: &str| {
                v.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("{s}: {v:?} is not a number")))
            };
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
                return Err(Error::Parse(format!("{s}: need 0 <= lo <= hi <= 1")));
            }
            return Ok(Predicate::ExpectationIn { lo, hi });
        }
        Ok(match s {
            "balanced" => Predicate::Balanced,
            "monotone" => Predicate::Monotone,
            "self_dual" => Predicate::SelfDual,
            "cyclic_invariant" => Predicate::CyclicInvariant,
            "non_constant" => Predicate::NonConstant,
            other => return Err(Error::Parse(format!("unknown predicate {other:?}"))),
        })
    }
}

/// Conjunction of predicates.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ClassFilter {
    predicates: Vec<Predicate>,
}

impl ClassFilter {
    pub fn new(predicates: Vec<Predicate>) -> Result<Self> {
        if predicates.is_empty() {
            return Err(Error::invalid("a class filter needs at least one predicate"));
        }
        Ok(ClassFilter { predicates })
    }

    pub fn single(p: Predicate) -> Self {
        ClassFilter { predicates: vec![p] }
    }

    pub fn predicates(&self) -> &[Predicate] {
        &self.predicates
    }

    pub fn matches(&self, f: &BooleanFunction) -> bool {
        self.predicates.iter().all(|p| p.matches(f))
    }

    fn has(&self, p: Predicate) -> bool {
        self.predicates.contains(&p)
    }
}

impl fmt::Display for ClassFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.predicates.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for ClassFilter {
    type Err = Error;

    /// Comma- or `+`-separated predicates, e.g. `balanced,monotone`.
    fn from_str(s: &str) -> Result<Self> {
        let preds = s
            .split([',', '+'])
            .filter(|p| !p.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        ClassFilter::new(preds)
    }
}

/// Every function of arity `n` passing `filter`, ascending by truth table.
pub fn enumerate_class(n: usize, filter: &ClassFilter) -> Result<Vec<BooleanFunction>> {
    check_arity(n)?;
    if n > EXHAUSTIVE_MAX {
        return Err(Error::Budget(format!(
            "exhaustive enumeration supports n <= {EXHAUSTIVE_MAX} (n = {n}); use random search"
        )));
    }
    let count = 1u64 << (1u64 << n);
    Ok((0..count)
        .map(|t| BooleanFunction::from_u64(n, t).expect("table fits"))
        .filter(|f| filter.matches(f))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    MinW,
    MaxW,
}

impl FromStr for Objective {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min_w" | "min" => Ok(Objective::MinW),
            "max_w" | "max" => Ok(Objective::MaxW),
            other => Err(Error::Parse(format!("unknown objective {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalResult {
    pub objective: Objective,
    pub value: f64,
    pub witness: Gswf,
    /// `(α, β, γ)`.
    pub distribution: [f64; 3],
    pub filters: [ClassFilter; 3],
    pub evaluated: u64,
    pub mode: SearchMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub exclude_dictator_like: bool,
    pub tie_break: String,
}

/// Positions `(i, j, k)` in the f, g and h lists.
pub type Index3 = (usize, usize, usize);

/// Three candidate lists with cached spectra and the pairwise biased
/// products `<<f_i, g_j>>`, `<<g_j, h_k>>`, `<<h_k, f_i>>` for one
/// distribution, so that `W(i, j, k)` costs three lookups.
pub struct TripleSpace {
    pub fs: Vec<BooleanFunction>,
    pub gs: Vec<BooleanFunction>,
    pub hs: Vec<BooleanFunction>,
    means: [Vec<f64>; 3],
    fg: Vec<f64>,
    gh: Vec<f64>,
    hf: Vec<f64>,
}

fn pair_matrix(a: &[WalshSpectrum], b: &[WalshSpectrum], delta: f64) -> Vec<f64> {
    a.par_iter()
        .flat_map_iter(|sa| {
            b.iter()
                .map(move |sb| biased_inner_product(sa, sb, delta).expect("validated"))
        })
        .collect()
}

impl TripleSpace {
    pub fn new(
        fs: Vec<BooleanFunction>,
        gs: Vec<BooleanFunction>,
        hs: Vec<BooleanFunction>,
        d: &EvenProductDistribution,
    ) -> Result<Self> {
        let n = fs
            .first()
            .or(gs.first())
            .or(hs.first())
            .map(BooleanFunction::n)
            .ok_or_else(|| Error::invalid("empty candidate lists"))?;
        if let Some(bad) = fs.iter().chain(&gs).chain(&hs).find(|f| f.n() != n) {
            return Err(Error::ArityMismatch {
                left: n,
                right: bad.n(),
            });
        }
        let (lf, lg, lh) = (fs.len() as u64, gs.len() as u64, hs.len() as u64);
        let triples = lf.saturating_mul(lg).saturating_mul(lh);
        if triples > TRIPLE_BUDGET {
            return Err(Error::Budget(format!(
                "{triples} triples exceed the exhaustive budget of {TRIPLE_BUDGET}; use random search"
            )));
        }
        let bytes = (lf * lg + lg * lh + lh * lf) * 8;
        if bytes > MATRIX_BYTES_MAX {
            return Err(Error::Budget(format!(
                "pairwise product cache needs {bytes} bytes (limit {MATRIX_BYTES_MAX}); use random search"
            )));
        }
        let spectra = |v: &[BooleanFunction]| -> Vec<WalshSpectrum> {
            v.par_iter().map(walsh_transform).collect()
        };
        let (sf, sg, sh) = (spectra(&fs), spectra(&gs), spectra(&hs));
        let deltas = d.deltas();
        let means = [
            sf.iter().map(|s| s.mean()).collect(),
            sg.iter().map(|s| s.mean()).collect(),
            sh.iter().map(|s| s.mean()).collect(),
        ];
        Ok(TripleSpace {
            fg: pair_matrix(&sf, &sg, deltas[0]),
            gh: pair_matrix(&sg, &sh, deltas[1]),
            hf: pair_matrix(&sh, &sf, deltas[2]),
            means,
            fs,
            gs,
            hs,
        })
    }

    pub fn len(&self) -> u64 {
        (self.fs.len() * self.gs.len() * self.hs.len()) as u64
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn base(&self, i: usize, j: usize, k: usize) -> f64 {
        base_term([self.means[0][i], self.means[1][j], self.means[2][k]])
    }

    #[inline]
    pub fn w(&self, i: usize, j: usize, k: usize) -> f64 {
        let (lg, lh, lf) = (self.gs.len(), self.hs.len(), self.fs.len());
        self.base(i, j, k) + self.fg[i * lg + j] + self.gh[j * lh + k] + self.hf[k * lf + i]
    }

    pub fn gswf(&self, (i, j, k): (usize, usize, usize)) -> Gswf {
        Gswf::new(self.fs[i].clone(), self.gs[j].clone(), self.hs[k].clone()).expect("same arity")
    }

    /// Largest `score(i, j, k)` over admitted triples, with the
    /// lexicographically least index triple among those within
    /// [`TIE_TOLERANCE`] of the optimum. Returns `None` when nothing is
    /// admitted; the count is the number of admitted triples.
    ///
    /// The reduction runs in two passes (exact maximum, then first index
    /// reaching it) so the answer does not depend on the worker schedule.
    pub fn argmax<S, A>(&self, score: S, admit: A) -> (Option<(f64, Index3)>, u64)
    where
        S: Fn(&Self, usize, usize, usize) -> f64 + Sync,
        A: Fn(usize, usize, usize) -> bool + Sync,
    {
        let (lg, lh) = (self.gs.len(), self.hs.len());
        let per_row: Vec<(f64, u64)> = (0..self.fs.len())
            .into_par_iter()
            .map(|i| {
                let mut best = f64::NEG_INFINITY;
                let mut count = 0u64;
                for j in 0..lg {
                    for k in 0..lh {
                        if admit(i, j, k) {
                            count += 1;
                            best = best.max(score(self, i, j, k));
                        }
                    }
                }
                (best, count)
            })
            .collect();
        let count = per_row.iter().map(|r| r.1).sum();
        let best = per_row.iter().map(|r| r.0).fold(f64::NEG_INFINITY, f64::max);
        if count == 0 {
            return (None, 0);
        }
        let witness = (0..self.fs.len())
            .into_par_iter()
            .filter(|&i| per_row[i].0 >= best - TIE_TOLERANCE)
            .find_map_first(|i| {
                for j in 0..lg {
                    for k in 0..lh {
                        if admit(i, j, k) && score(self, i, j, k) >= best - TIE_TOLERANCE {
                            return Some((i, j, k));
                        }
                    }
                }
                None
            })
            .expect("row with the optimum holds a witness");
        (Some((best, witness)), count)
    }
}

/// `f = g = h` equal to a dictator or an anti-dictator.
pub fn is_dictator_like(g: &Gswf) -> bool {
    if g.f != g.g || g.g != g.h {
        return false;
    }
    let n = g.n();
    (1..=n).any(|i| {
        let d = BooleanFunction::dictator(n, i).expect("valid voter");
        g.f == d || g.f == d.complement()
    })
}

fn dictator_like_set(fs: &[BooleanFunction]) -> Vec<bool> {
    fs.iter()
        .map(|f| {
            let n = f.n();
            (1..=n).any(|i| {
                let d = BooleanFunction::dictator(n, i).expect("valid voter");
                *f == d || *f == d.complement()
            })
        })
        .collect()
}

fn signed(objective: Objective, w: f64) -> f64 {
    match objective {
        Objective::MaxW => w,
        Objective::MinW => -w,
    }
}

fn abg(d: &EvenProductDistribution) -> [f64; 3] {
    [d.alpha(), d.beta(), d.gamma()]
}

fn recheck(witness: &Gswf, filters: &[ClassFilter; 3]) -> Result<()> {
    let ok = filters[0].matches(&witness.f)
        && filters[1].matches(&witness.g)
        && filters[2].matches(&witness.h);
    if ok {
        Ok(())
    } else {
        Err(Error::invalid("internal: witness fails its class filter"))
    }
}

/// Exact optimum of `W` over `F × G × H` at arity `n`.
pub fn extremal_w(
    n: usize,
    filters: [&ClassFilter; 3],
    d: &EvenProductDistribution,
    objective: Objective,
    exclude_dictator_like: bool,
) -> Result<ExtremalResult> {
    let lists = [
        enumerate_class(n, filters[0])?,
        enumerate_class(n, filters[1])?,
        enumerate_class(n, filters[2])?,
    ];
    let sizes: Vec<u64> = lists.iter().map(|l| l.len() as u64).collect();
    let triples = sizes[0].saturating_mul(sizes[1]).saturating_mul(sizes[2]);
    if triples > TRIPLE_BUDGET {
        return Err(Error::Budget(format!(
            "{triples} triples exceed the exhaustive budget of {TRIPLE_BUDGET}; use random search"
        )));
    }
    let [fs, gs, hs] = lists;
    let space = TripleSpace::new(fs, gs, hs, d)?;
    let excl = if exclude_dictator_like {
        Some([
            dictator_like_set(&space.fs),
            dictator_like_set(&space.gs),
            dictator_like_set(&space.hs),
        ])
    } else {
        None
    };
    let admit = |i: usize, j: usize, k: usize| match &excl {
        None => true,
        Some([a, b, c]) => {
            !(a[i] && b[j] && c[k] && space.fs[i] == space.gs[j] && space.gs[j] == space.hs[k])
        }
    };
    let (best, evaluated) = space.argmax(|s, i, j, k| signed(objective, s.w(i, j, k)), admit);
    let (_, idx) = best.ok_or_else(|| Error::invalid("no triple satisfies the class filters"))?;
    let witness = space.gswf(idx);
    let filters = [filters[0].clone(), filters[1].clone(), filters[2].clone()];
    recheck(&witness, &filters)?;
    Ok(ExtremalResult {
        objective,
        value: space.w(idx.0, idx.1, idx.2),
        witness,
        distribution: abg(d),
        filters,
        evaluated,
        mode: SearchMode::Exhaustive,
        seed: None,
        exclude_dictator_like,
        tie_break: format!(
            "lexicographically least (f, g, h) by truth table among values within {TIE_TOLERANCE:e} of the optimum"
        ),
    })
}

/// Draws uniformly from a class: by index into the enumerated class for
/// `n ≤ 4`, otherwise by construction plus rejection.
pub enum Sampler {
    Listed(Vec<BooleanFunction>),
    Built { n: usize, filter: ClassFilter },
}

impl Sampler {
    pub fn new(n: usize, filter: &ClassFilter) -> Result<Self> {
        check_arity(n)?;
        if n <= EXHAUSTIVE_MAX {
            let list = enumerate_class(n, filter)?;
            if list.is_empty() {
                return Err(Error::invalid(format!("class {filter} is empty at n = {n}")));
            }
            return Ok(Sampler::Listed(list));
        }
        if filter.has(Predicate::Monotone) || filter.has(Predicate::CyclicInvariant) {
            return Err(Error::invalid(format!(
                "cannot sample {filter} at n = {n}; above n = {EXHAUSTIVE_MAX} random search supports balanced, self_dual, non_constant and expectation_in"
            )));
        }
        Ok(Sampler::Built {
            n,
            filter: filter.clone(),
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<BooleanFunction> {
        match self {
            Sampler::Listed(list) => Ok(list[rng.gen_range(0..list.len())].clone()),
            Sampler::Built { n, filter } => {
                for _ in 0..REJECTION_LIMIT {
                    let f = if filter.has(Predicate::SelfDual) {
                        random_self_dual(*n, rng)?
                    } else if filter.has(Predicate::Balanced) {
                        random_balanced(*n, rng)?
                    } else {
                        random_function(*n, rng)?
                    };
                    if filter.matches(&f) {
                        return Ok(f);
                    }
                }
                Err(Error::Budget(format!(
                    "no sample in {filter} after {REJECTION_LIMIT} draws"
                )))
            }
        }
    }
}

/// Uniform over all `2^{2^n}` tables.
pub fn random_function<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<BooleanFunction> {
    check_arity(n)?;
    let mask = if n >= 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
    let words: Vec<u64> = (0..(1usize << n).div_ceil(64)).map(|_| rng.gen::<u64>() & mask).collect();
    BooleanFunction::from_fn(n, |x| words[(x >> 6) as usize] >> (x & 63) & 1 == 1)
}

/// Uniform over balanced tables.
pub fn random_balanced<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<BooleanFunction> {
    check_arity(n)?;
    let len = 1usize << n;
    let mut bits = vec![false; len];
    for i in sample_indices(rng, len, len / 2) {
        bits[i] = true;
    }
    BooleanFunction::from_bits(&bits)
}

/// Uniform over self-dual tables: free on inputs with the top voter at 0,
/// forced elsewhere.
pub fn random_self_dual<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<BooleanFunction> {
    check_arity(n)?;
    let len = 1u64 << n;
    let half: Vec<bool> = (0..len / 2).map(|_| rng.gen()).collect();
    BooleanFunction::from_fn(n, |x| {
        if x < len / 2 {
            half[x as usize]
        } else {
            !half[(!x & (len - 1)) as usize]
        }
    })
}

/// Best `W` over `trials` sampled triples, deterministic per seed.
pub fn random_search(
    n: usize,
    filters: [&ClassFilter; 3],
    d: &EvenProductDistribution,
    objective: Objective,
    trials: u64,
    seed: u64,
    exclude_dictator_like: bool,
) -> Result<ExtremalResult> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let samplers = [
        Sampler::new(n, filters[0])?,
        Sampler::new(n, filters[1])?,
        Sampler::new(n, filters[2])?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let deltas = d.deltas();
    let mut best: Option<(f64, Gswf)> = None;
    let mut evaluated = 0u64;
    for _ in 0..trials {
        let g = Gswf::new(
            samplers[0].sample(&mut rng)?,
            samplers[1].sample(&mut rng)?,
            samplers[2].sample(&mut rng)?,
        )?;
        if exclude_dictator_like && is_dictator_like(&g) {
            continue;
        }
        evaluated += 1;
        let (sf, sg, sh) = (walsh_transform(&g.f), walsh_transform(&g.g), walsh_transform(&g.h));
        let w = base_term([sf.mean(), sg.mean(), sh.mean()])
            + biased_inner_product(&sf, &sg, deltas[0])?
            + biased_inner_product(&sg, &sh, deltas[1])?
            + biased_inner_product(&sh, &sf, deltas[2])?;
        let better = match &best {
            None => true,
            Some((bw, bg)) => {
                let (s, bs) = (signed(objective, w), signed(objective, *bw));
                s > bs + TIE_TOLERANCE
                    || (s >= bs - TIE_TOLERANCE
                        && (&g.f, &g.g, &g.h) < (&bg.f, &bg.g, &bg.h))
            }
        };
        if better {
            best = Some((w, g));
        }
    }
    let (value, witness) = best.ok_or_else(|| {
        Error::invalid("every sampled triple was dictator-like; nothing evaluated")
    })?;
    let filters = [filters[0].clone(), filters[1].clone(), filters[2].clone()];
    recheck(&witness, &filters)?;
    Ok(ExtremalResult {
        objective,
        value,
        witness,
        distribution: abg(d),
        filters,
        evaluated,
        mode: SearchMode::Random,
        seed: Some(seed),
        exclude_dictator_like,
        tie_break: format!(
            "first strict improvement beyond {TIE_TOLERANCE:e}; ties go to the least (f, g, h) by truth table"
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{preset_gswf, Preset};
    use crate::rationality::w_formula;

    fn filter(s: &str) -> ClassFilter {
        s.parse().unwrap()
    }

    #[test]
    fn class_counts() {
        assert_eq!(enumerate_class(2, &filter("balanced")).unwrap().len(), 6);
        assert_eq!(enumerate_class(3, &filter("monotone")).unwrap().len(), 20);
        assert_eq!(enumerate_class(4, &filter("monotone")).unwrap().len(), 168);
        assert_eq!(enumerate_class(3, &filter("balanced")).unwrap().len(), 70);
        assert_eq!(enumerate_class(1, &filter("non_constant")).unwrap().len(), 2);
    }

    #[test]
    fn enumeration_is_ascending() {
        let all = enumerate_class(3, &filter("monotone")).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn balanced_monotone_n3_holds_dictators_and_majority() {
        let class = enumerate_class(3, &filter("balanced,monotone")).unwrap();
        assert_eq!(class.len(), 4);
        for i in 1..=3 {
            assert!(class.contains(&BooleanFunction::dictator(3, i).unwrap()));
        }
        assert!(class.contains(&crate::catalog::majority(3).unwrap()));
    }

    #[test]
    fn n5_enumeration_refused() {
        assert!(matches!(
            enumerate_class(5, &filter("balanced")),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn empty_filter_rejected() {
        assert!(ClassFilter::new(vec![]).is_err());
        assert!("".parse::<ClassFilter>().is_err());
        assert!("balanced,bogus".parse::<ClassFilter>().is_err());
    }

    #[test]
    fn filter_round_trips_through_display() {
        let f = filter("balanced,expectation_in:0.25:0.75");
        assert_eq!(f.to_string().parse::<ClassFilter>().unwrap(), f);
    }

    #[test]
    fn max_balanced_monotone_n3_is_quarter() {
        let c = filter("balanced,monotone");
        let r = extremal_w(3, [&c, &c, &c], &EvenProductDistribution::uniform(), Objective::MaxW, false)
            .unwrap();
        assert!((r.value - 0.25).abs() < 1e-12);
        assert_eq!(r.evaluated, 64);
        // split dictators reach the bound
        let split = preset_gswf(&Preset::SplitDictators, 3).unwrap();
        let w = w_formula(&split, &EvenProductDistribution::uniform()).unwrap().w;
        assert!((w - 0.25).abs() < 1e-12);
    }

    #[test]
    fn max_balanced_n2_is_third() {
        let c = filter("balanced");
        let r = extremal_w(2, [&c, &c, &c], &EvenProductDistribution::uniform(), Objective::MaxW, false)
            .unwrap();
        assert_eq!(r.evaluated, 216);
        assert!((r.value - 1.0 / 3.0).abs() < 1e-12);
        assert!(r.value <= 3.0 / 8.0 + 1e-12);
    }

    #[test]
    fn non_dictator_minimum_n3_is_positive() {
        let c = filter("non_constant");
        let r = extremal_w(3, [&c, &c, &c], &EvenProductDistribution::uniform(), Objective::MinW, true)
            .unwrap();
        assert!(!is_dictator_like(&r.witness));
        assert!((r.value - 1.0 / 36.0).abs() < 1e-12, "{}", r.value);
    }

    #[test]
    fn dictators_reach_zero_when_not_excluded() {
        let c = filter("non_constant");
        let r = extremal_w(2, [&c, &c, &c], &EvenProductDistribution::uniform(), Objective::MinW, false)
            .unwrap();
        assert!(r.value.abs() < 1e-12);
    }

    #[test]
    fn witness_reproduces_value() {
        let c = filter("monotone");
        let d = EvenProductDistribution::new(0.1, 0.25, 0.15).unwrap();
        let r = extremal_w(3, [&c, &c, &c], &d, Objective::MaxW, false).unwrap();
        let w = w_formula(&r.witness, &d).unwrap().w;
        assert!((w - r.value).abs() < 1e-12);
    }

    #[test]
    fn tie_break_picks_least_table() {
        // every dictator triple has W = 0 under uniform; constants excluded
        let c = filter("balanced,monotone");
        let r = extremal_w(3, [&c, &c, &c], &EvenProductDistribution::uniform(), Objective::MinW, false)
            .unwrap();
        let class = enumerate_class(3, &c).unwrap();
        let mut ties = vec![];
        for f in &class {
            for g in &class {
                for h in &class {
                    let t = Gswf::new(f.clone(), g.clone(), h.clone()).unwrap();
                    let w = w_formula(&t, &EvenProductDistribution::uniform()).unwrap().w;
                    if (w - r.value).abs() <= TIE_TOLERANCE {
                        ties.push((f.clone(), g.clone(), h.clone()));
                    }
                }
            }
        }
        let least = ties.into_iter().min().unwrap();
        assert_eq!((r.witness.f, r.witness.g, r.witness.h), least);
    }

    #[test]
    fn random_search_is_deterministic() {
        let c = filter("balanced");
        let d = EvenProductDistribution::uniform();
        let a = random_search(4, [&c, &c, &c], &d, Objective::MaxW, 500, 11, false).unwrap();
        let b = random_search(4, [&c, &c, &c], &d, Objective::MaxW, 500, 11, false).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.witness, b.witness);
        assert!(a.value <= 3.0 / 8.0 + 1e-12);
    }

    #[test]
    fn single_trial_evaluates_one_triple() {
        let c = filter("non_constant");
        let r = random_search(3, [&c, &c, &c], &EvenProductDistribution::uniform(), Objective::MinW, 1, 3, false)
            .unwrap();
        assert_eq!(r.evaluated, 1);
    }

    #[test]
    fn large_n_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b = random_balanced(9, &mut rng).unwrap();
        assert!(b.is_balanced());
        let s = random_self_dual(8, &mut rng).unwrap();
        assert!(s.is_self_dual());
        let c = filter("self_dual");
        let r = random_search(7, [&c, &c, &c], &EvenProductDistribution::uniform(), Objective::MaxW, 20, 1, false)
            .unwrap();
        assert!(r.witness.f.is_self_dual());
        assert!(Sampler::new(6, &filter("monotone")).is_err());
    }

    #[test]
    fn budget_guard() {
        let c = filter("non_constant");
        let err = extremal_w(4, [&c, &c, &c], &EvenProductDistribution::uniform(), Objective::MaxW, false)
            .unwrap_err();
        assert!(matches!(err, Error::Budget(_)));
    }
}
