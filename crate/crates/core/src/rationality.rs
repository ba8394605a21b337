//! Probability of an irrational societal outcome.
//!
//! Three routes are provided and kept independent of one another:
//!
//! * [`w_formula`] / [`w_from_spectra`]: the closed spectral form, valid for
//!   even product distributions.
//! * [`w_oracle`]: exhaustive enumeration of all `6^n` admissible profiles,
//!   valid for any per-voter triple distribution. Uses only truth-table
//!   lookups and profile probabilities.
//! * [`w_monte_carlo`]: a seeded sampling estimator of the same sum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bfn::{walsh_transform, BooleanFunction, PseudoSpectrum, Spectrum};
use crate::dist::{EvenProductDistribution, Triple, TripleDistribution};
use crate::{Error, Result, ORACLE_MAX};

/// Samples drawn per independently seeded block in [`w_monte_carlo`].
const MC_BLOCK: u64 = 1 << 16;

/// Voters enumerated up front to split the oracle into fixed chunks.
const ORACLE_PREFIX: usize = 2;

/// Choice functions for the pairs `(A,B)`, `(B,C)`, `(C,A)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gswf {
    pub f: BooleanFunction,
    pub g: BooleanFunction,
    pub h: BooleanFunction,
}

impl Gswf {
    pub fn new(f: BooleanFunction, g: BooleanFunction, h: BooleanFunction) -> Result<Self> {
        for other in [&g, &h] {
            if other.n() != f.n() {
                return Err(Error::ArityMismatch {
                    left: f.n(),
                    right: other.n(),
                });
            }
        }
        Ok(Gswf { f, g, h })
    }

    pub fn n(&self) -> usize {
        self.f.n()
    }

    /// `(f, g, h) → (g, h, f)`.
    pub fn rotated(&self) -> Self {
        Gswf {
            f: self.g.clone(),
            g: self.h.clone(),
            h: self.f.clone(),
        }
    }

    pub fn expectations(&self) -> [f64; 3] {
        [
            self.f.expectation(),
            self.g.expectation(),
            self.h.expectation(),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Formula,
    Oracle,
    MonteCarlo,
}

/// One evaluation of `W(f, g, h)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WResult {
    pub w: f64,
    /// `p1 p2 p3 + (1-p1)(1-p2)(1-p3)`.
    pub base: f64,
    /// `<<f,g>>`, `<<g,h>>`, `<<h,f>>` at the paired noise parameters (formula only).
    pub cross_terms: Option<[f64; 3]>,
    pub deltas: Option<[f64; 3]>,
    pub method: Method,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
}

pub fn base_term(p: [f64; 3]) -> f64 {
    p[0] * p[1] * p[2] + (1.0 - p[0]) * (1.0 - p[1]) * (1.0 - p[2])
}

fn check_delta(delta: f64, what: &str) -> Result<()> {
    if !(-1.0..=1.0).contains(&delta) {
        return Err(Error::invalid(format!("{what} = {delta} outside [-1, 1]")));
    }
    Ok(())
}

/// `δ^k` for `k = 0..=n`.
fn level_powers(n: usize, delta: f64) -> Vec<f64> {
    let mut pows = Vec::with_capacity(n + 1);
    let mut acc = 1.0;
    for _ in 0..=n {
        pows.push(acc);
        acc *= delta;
    }
    pows
}

/// `<<a, b>>_δ = Σ_{S≠∅} a(S) b(S) δ^{|S|}`.
pub fn biased_inner_product<A, B>(a: &A, b: &B, delta: f64) -> Result<f64>
where
    A: Spectrum + ?Sized,
    B: Spectrum + ?Sized,
{
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            left: a.arity(),
            right: b.arity(),
        });
    }
    check_delta(delta, "delta")?;
    let pows = level_powers(a.arity(), delta);
    Ok(a.coeffs()
        .iter()
        .zip(b.coeffs())
        .enumerate()
        .skip(1)
        .map(|(mask, (x, y))| x * y * pows[mask.count_ones() as usize])
        .sum())
}

/// `T_ε`: scales `s(S)` by `ε^{|S|}`.
pub fn noise_operator_spectral(s: &impl Spectrum, eps: f64) -> Result<PseudoSpectrum> {
    check_delta(eps, "eps")?;
    let pows = level_powers(s.arity(), eps);
    let coeffs = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(mask, c)| c * pows[mask.count_ones() as usize])
        .collect();
    PseudoSpectrum::new(s.arity(), coeffs)
}

/// `T_ε f(x) = E[f(x ⊕ y)]` with independent `Pr[y_i = 0] = (1+ε)/2`,
/// computed by one averaging pass per coordinate.
pub fn noise_operator_convolution(f: &BooleanFunction, eps: f64) -> Result<Vec<f64>> {
    let mut values = f.values();
    noise_convolve_in_place(&mut values, eps)?;
    Ok(values)
}

/// [`noise_operator_convolution`] on an arbitrary real table of length `2^n`.
pub fn noise_convolve_in_place(values: &mut [f64], eps: f64) -> Result<()> {
    check_delta(eps, "eps")?;
    if !values.len().is_power_of_two() {
        return Err(Error::invalid("table length must be a power of two"));
    }
    let keep = (1.0 + eps) / 2.0;
    let flip = (1.0 - eps) / 2.0;
    let mut h = 1;
    while h < values.len() {
        for blk in values.chunks_mut(2 * h) {
            let (lo, hi) = blk.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi) {
                let (x0, x1) = (*a, *b);
                *a = keep * x0 + flip * x1;
                *b = keep * x1 + flip * x0;
            }
        }
        h *= 2;
    }
    Ok(())
}

/// Closed-form `W` for an even product distribution.
pub fn w_formula(gswf: &Gswf, d: &EvenProductDistribution) -> Result<WResult> {
    let sf = walsh_transform(&gswf.f);
    let sg = walsh_transform(&gswf.g);
    let sh = walsh_transform(&gswf.h);
    spectral_w(&sf, &sg, &sh, d)
}

/// Closed-form `W` from arbitrary (possibly non-Boolean) spectra, `p_i = s_i(∅)`.
pub fn w_from_spectra(
    sf: &PseudoSpectrum,
    sg: &PseudoSpectrum,
    sh: &PseudoSpectrum,
    d: &EvenProductDistribution,
) -> Result<WResult> {
    spectral_w(sf, sg, sh, d)
}

fn spectral_w<S: Spectrum>(sf: &S, sg: &S, sh: &S, d: &EvenProductDistribution) -> Result<WResult> {
    let deltas = d.deltas();
    let cross = [
        biased_inner_product(sf, sg, deltas[0])?,
        biased_inner_product(sg, sh, deltas[1])?,
        biased_inner_product(sh, sf, deltas[2])?,
    ];
    let base = base_term([sf.mean(), sg.mean(), sh.mean()]);
    Ok(WResult {
        w: base + cross[0] + cross[1] + cross[2],
        base,
        cross_terms: Some(cross),
        deltas: Some(deltas),
        method: Method::Formula,
        n: sf.arity(),
        samples: None,
        seed: None,
        stderr: None,
    })
}

/// Support of a triple distribution as `(x, y, z, probability)`.
fn support(t: &TripleDistribution) -> Vec<(u64, u64, u64, f64)> {
    Triple::ALL
        .into_iter()
        .filter(|&tr| t.prob(tr) > 0.0)
        .map(|tr| {
            let (x, y, z) = tr.bits();
            (u64::from(x), u64::from(y), u64::from(z), t.prob(tr))
        })
        .collect()
}

struct OracleWalk<'a> {
    gswf: &'a Gswf,
    support: &'a [(u64, u64, u64, f64)],
    n: usize,
}

impl OracleWalk<'_> {
    fn walk(&self, voter: usize, x: u64, y: u64, z: u64, prob: f64) -> f64 {
        if voter == self.n {
            let fx = self.gswf.f.get(x);
            return if fx == self.gswf.g.get(y) && fx == self.gswf.h.get(z) {
                prob
            } else {
                0.0
            };
        }
        self.support
            .iter()
            .map(|&(a, b, c, p)| {
                self.walk(
                    voter + 1,
                    x | a << voter,
                    y | b << voter,
                    z | c << voter,
                    prob * p,
                )
            })
            .sum()
    }
}

/// Exact `W` by enumerating every admissible profile. Chunks are fixed by
/// the first voters' triples and summed in a fixed order, so the result does
/// not depend on the worker count.
pub fn w_oracle(gswf: &Gswf, t: &TripleDistribution) -> Result<WResult> {
    let n = gswf.n();
    if n > ORACLE_MAX {
        return Err(Error::Capacity {
            n,
            max: ORACLE_MAX,
            hint: " for the exhaustive oracle; use Monte Carlo instead",
        });
    }
    let support = support(t);
    let walker = OracleWalk {
        gswf,
        support: &support,
        n,
    };
    let prefix = ORACLE_PREFIX.min(n);
    let mut starts = vec![(0u64, 0u64, 0u64, 1.0f64)];
    for voter in 0..prefix {
        starts = starts
            .into_iter()
            .flat_map(|(x, y, z, p)| {
                support
                    .iter()
                    .map(move |&(a, b, c, q)| (x | a << voter, y | b << voter, z | c << voter, p * q))
            })
            .collect();
    }
    let parts: Vec<f64> = starts
        .par_iter()
        .map(|&(x, y, z, p)| walker.walk(prefix, x, y, z, p))
        .collect();
    let w = parts.iter().sum();
    Ok(WResult {
        w,
        base: base_term(gswf.expectations()),
        cross_terms: None,
        deltas: t.as_even_product().map(|d| d.deltas()),
        method: Method::Oracle,
        n,
        samples: None,
        seed: None,
        stderr: None,
    })
}

/// Seeded Monte Carlo estimate of `W`. Block `b` of the sample stream uses
/// ChaCha8 stream `b` under `seed`, so estimates are identical for any
/// worker count.
pub fn w_monte_carlo(gswf: &Gswf, t: &TripleDistribution, samples: u64, seed: u64) -> Result<WResult> {
    if samples == 0 {
        return Err(Error::invalid("Monte Carlo needs at least one sample"));
    }
    let n = gswf.n();
    let cumulative = t.cumulative();
    let last_nonzero = Triple::ALL
        .into_iter()
        .rposition(|tr| t.prob(tr) > 0.0)
        .expect("distribution has support");
    let codes = Triple::ALL.map(|tr| tr.bits());
    let blocks = samples.div_ceil(MC_BLOCK);
    let hits: u64 = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let count = MC_BLOCK.min(samples - b * MC_BLOCK);
            let mut hits = 0u64;
            for _ in 0..count {
                let (mut x, mut y, mut z) = (0u64, 0u64, 0u64);
                for voter in 0..n {
                    let u: f64 = rng.gen();
                    let idx = cumulative
                        .iter()
                        .position(|&c| u < c)
                        .unwrap_or(last_nonzero);
                    let (a, bb, c) = codes[idx];
                    x |= u64::from(a) << voter;
                    y |= u64::from(bb) << voter;
                    z |= u64::from(c) << voter;
                }
                let fx = gswf.f.get(x);
                if fx == gswf.g.get(y) && fx == gswf.h.get(z) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let w = hits as f64 / samples as f64;
    Ok(WResult {
        w,
        base: base_term(gswf.expectations()),
        cross_terms: None,
        deltas: t.as_even_product().map(|d| d.deltas()),
        method: Method::MonteCarlo,
        n,
        samples: Some(samples),
        seed: Some(seed),
        stderr: Some((w * (1.0 - w) / samples as f64).sqrt()),
    })
}

/// Sign-blind variant `W'` under the uniform distribution: every cross term
/// replaced by `−Σ_{S≠∅} |a(S) b(S) (−1/3)^{|S|}|`.
pub fn w_prime(gswf: &Gswf) -> Result<f64> {
    let sf = walsh_transform(&gswf.f);
    let sg = walsh_transform(&gswf.g);
    let sh = walsh_transform(&gswf.h);
    let pows = level_powers(gswf.n(), 1.0 / 3.0);
    let primed = |a: &[f64], b: &[f64]| -> f64 {
        -a.iter()
            .zip(b)
            .enumerate()
            .skip(1)
            .map(|(mask, (x, y))| (x * y).abs() * pows[mask.count_ones() as usize])
            .sum::<f64>()
    };
    let base = base_term([sf.mean(), sg.mean(), sh.mean()]);
    Ok(base
        + primed(sf.coeffs(), sg.coeffs())
        + primed(sg.coeffs(), sh.coeffs())
        + primed(sh.coeffs(), sf.coeffs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::even_product;

    fn maj(n: usize) -> BooleanFunction {
        BooleanFunction::from_fn(n, |x| x.count_ones() as usize > n / 2).unwrap()
    }

    fn dict(n: usize, i: usize) -> BooleanFunction {
        BooleanFunction::dictator(n, i).unwrap()
    }

    fn triple(f: BooleanFunction, g: BooleanFunction, h: BooleanFunction) -> Gswf {
        Gswf::new(f, g, h).unwrap()
    }

    #[test]
    fn biased_product_examples() {
        let d = walsh_transform(&dict(3, 1));
        for delta in [-1.0, -0.4, 0.0, 0.3, 1.0] {
            let v = biased_inner_product(&d, &d, delta).unwrap();
            assert!((v - delta / 4.0).abs() < 1e-15);
        }
        let m = walsh_transform(&maj(3));
        let v = biased_inner_product(&m, &m, -1.0 / 3.0).unwrap();
        assert!((v + 7.0 / 108.0).abs() < 1e-15);
        let c = walsh_transform(&BooleanFunction::constant(3, true).unwrap());
        assert_eq!(biased_inner_product(&m, &c, 0.7).unwrap(), 0.0);
    }

    #[test]
    fn biased_product_errors() {
        let a = walsh_transform(&maj(3));
        let b = walsh_transform(&dict(2, 1));
        assert!(matches!(
            biased_inner_product(&a, &b, 0.5),
            Err(Error::ArityMismatch { left: 3, right: 2 })
        ));
        assert!(biased_inner_product(&a, &a, 1.5).is_err());
    }

    #[test]
    fn noise_spectral_examples() {
        let m = walsh_transform(&maj(3));
        assert_eq!(noise_operator_spectral(&m, 1.0).unwrap().coeffs(), m.coeffs());
        let zero = noise_operator_spectral(&m, 0.0).unwrap();
        assert_eq!(zero.coeffs()[0], 0.5);
        assert!(zero.coeffs()[1..].iter().all(|&c| c == 0.0));
        let d = walsh_transform(&dict(1, 1));
        assert_eq!(noise_operator_spectral(&d, -1.0).unwrap().coeffs(), &[0.5, -0.5]);
        assert!(noise_operator_spectral(&d, -1.01).is_err());
    }

    #[test]
    fn noise_convolution_examples() {
        let f = BooleanFunction::from_fn(4, |x| x % 3 == 1).unwrap();
        assert_eq!(noise_operator_convolution(&f, 1.0).unwrap(), f.values());
        let flat = noise_operator_convolution(&f, 0.0).unwrap();
        assert!(flat.iter().all(|&v| (v - f.expectation()).abs() < 1e-15));
        let neg = noise_operator_convolution(&f, -1.0).unwrap();
        for x in 0..16u64 {
            assert_eq!(neg[x as usize], if f.get(!x & 15) { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn formula_examples() {
        let u = EvenProductDistribution::uniform();
        let d = dict(3, 1);
        let r = w_formula(&triple(d.clone(), d.clone(), d.clone()), &u).unwrap();
        assert!(r.w.abs() < 1e-15);

        let g = triple(d.clone(), d.clone(), d.complement());
        assert!((w_formula(&g, &u).unwrap().w - 1.0 / 3.0).abs() < 1e-15);

        let half = even_product(0.5, 0.0, 0.0).unwrap();
        let g = triple(d.clone(), d.clone(), dict(3, 2));
        assert!((w_formula(&g, &half).unwrap().w - 0.5).abs() < 1e-15);

        let r = w_formula(&triple(maj(3), maj(3), maj(3)), &u).unwrap();
        assert!((r.w - 1.0 / 18.0).abs() < 1e-15);
        let cross = r.cross_terms.unwrap();
        assert!((r.base + cross.iter().sum::<f64>() - r.w).abs() < 1e-15);
    }

    #[test]
    fn from_spectra_examples() {
        let u = EvenProductDistribution::uniform();
        let a = 1.0 / (2.0 * 6f64.sqrt());
        let mk = |i: f64, j: f64, k: f64| {
            PseudoSpectrum::sparse(3, &[(0, 0.5), (1, i), (2, j), (4, k)]).unwrap()
        };
        let (sf, sg, sh) = (mk(2.0 * a, -a, -a), mk(-a, 2.0 * a, -a), mk(-a, -a, 2.0 * a));
        assert!((w_from_spectra(&sf, &sg, &sh, &u).unwrap().w - 0.375).abs() < 1e-15);

        let g = triple(maj(3), dict(3, 2), BooleanFunction::from_u64(3, 0x96).unwrap());
        let via = w_from_spectra(
            &walsh_transform(&g.f).into_pseudo(),
            &walsh_transform(&g.g).into_pseudo(),
            &walsh_transform(&g.h).into_pseudo(),
            &u,
        )
        .unwrap();
        assert_eq!(via, w_formula(&g, &u).unwrap());

        let flat = PseudoSpectrum::sparse(2, &[(0, 0.5)]).unwrap();
        assert_eq!(w_from_spectra(&flat, &flat, &flat, &u).unwrap().w, 0.25);
    }

    #[test]
    fn oracle_examples() {
        let u = TripleDistribution::uniform();
        let r = w_oracle(&triple(maj(3), maj(3), maj(3)), &u).unwrap();
        assert!((r.w - 1.0 / 18.0).abs() < 1e-15);
        let d = dict(4, 2);
        for (a, b) in [(1.0 / 6.0, 1.0 / 6.0), (0.5, 0.0), (0.1, 0.3)] {
            let e = even_product(a, b, 0.5 - a - b).unwrap();
            let r = w_oracle(&triple(d.clone(), d.clone(), d.clone()), &e.to_triple_distribution()).unwrap();
            assert_eq!(r.w, 0.0);
        }
        let big = maj(11);
        assert!(matches!(
            w_oracle(&triple(big.clone(), big.clone(), big), &u),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn oracle_handles_non_even_distributions() {
        // every voter ranks A > B > C: triple 110, f=g=h=maj never cycles
        let t = TripleDistribution::new([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(w_oracle(&triple(maj(3), maj(3), maj(3)), &t).unwrap().w, 0.0);
        // two orders only: 110 and 011, n=1 dictator triple stays rational
        let t = TripleDistribution::new([0.5, 0.5, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let d = dict(1, 1);
        assert_eq!(w_oracle(&triple(d.clone(), d.clone(), d), &t).unwrap().w, 0.0);
    }

    #[test]
    fn monte_carlo_examples() {
        let u = TripleDistribution::uniform();
        let d = dict(5, 3);
        let r = w_monte_carlo(&triple(d.clone(), d.clone(), d), &u, 10_000, 1).unwrap();
        assert_eq!(r.w, 0.0);

        let g = triple(maj(3), maj(3), maj(3));
        let r = w_monte_carlo(&g, &u, 1_000_000, 42).unwrap();
        let se = r.stderr.unwrap();
        assert!((r.w - 1.0 / 18.0).abs() <= 4.0 * se, "{} ± {se}", r.w);
        assert_eq!(w_monte_carlo(&g, &u, 1_000_000, 42).unwrap(), r);
        assert!(w_monte_carlo(&g, &u, 0, 42).is_err());
    }

    #[test]
    fn w_prime_examples() {
        let d = dict(3, 1);
        assert!(w_prime(&triple(d.clone(), d.clone(), d)).unwrap().abs() < 1e-15);
        let and3 = BooleanFunction::from_u64(3, 0x80).unwrap();
        let g = triple(and3.clone(), and3.dual(), maj(3));
        // 7/64 − 37/1728 − 2·7/216, evaluated by hand over the rationals
        assert!((w_prime(&g).unwrap() - 5.0 / 216.0).abs() < 1e-15);
        assert!(w_prime(&g).unwrap() <= w_formula(&g, &EvenProductDistribution::uniform()).unwrap().w);
    }

    #[test]
    fn rotation_symmetry() {
        let g = triple(maj(3), dict(3, 1), BooleanFunction::from_u64(3, 0xE0).unwrap());
        let d = even_product(0.1, 0.15, 0.25).unwrap();
        let a = w_formula(&g, &d).unwrap().w;
        let b = w_formula(&g.rotated(), &d.rotated()).unwrap().w;
        assert!((a - b).abs() < 1e-15);
    }
}
