//! Per-voter preference distributions over the six linear orders of
//! `{A, B, C}`.
//!
//! A voter's order is encoded by the triple `(x, y, z)` of pairwise
//! preferences for `(A,B)`, `(B,C)`, `(C,A)`; `000` and `111` are cyclic and
//! never occur. All six-vectors use the fixed order
//! `110, 011, 101, 001, 100, 010`.

use serde::{Deserialize, Serialize};

use crate::bfn::fwht_signed;
use crate::{Error, Result};

const SUM_TOL: f64 = 1e-9;

/// An admissible per-voter preference triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Triple {
    T110,
    T011,
    T101,
    T001,
    T100,
    T010,
}

impl Triple {
    pub const ALL: [Triple; 6] = [
        Triple::T110,
        Triple::T011,
        Triple::T101,
        Triple::T001,
        Triple::T100,
        Triple::T010,
    ];

    /// Bits as `x | y << 1 | z << 2`.
    pub const fn code(self) -> u8 {
        match self {
            Triple::T110 => 0b011,
            Triple::T011 => 0b110,
            Triple::T101 => 0b101,
            Triple::T001 => 0b100,
            Triple::T100 => 0b001,
            Triple::T010 => 0b010,
        }
    }

    pub const fn bits(self) -> (bool, bool, bool) {
        let c = self.code();
        (c & 1 != 0, c & 2 != 0, c & 4 != 0)
    }

    pub fn from_bits(x: bool, y: bool, z: bool) -> Result<Self> {
        let code = u8::from(x) | u8::from(y) << 1 | u8::from(z) << 2;
        Triple::ALL
            .into_iter()
            .find(|t| t.code() == code)
            .ok_or_else(|| {
                Error::Distribution(format!(
                    "triple {}{}{} is not a linear order",
                    u8::from(x),
                    u8::from(y),
                    u8::from(z)
                ))
            })
    }

    /// Position in the fixed six-vector order.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Triple::T110 => "110",
            Triple::T011 => "011",
            Triple::T101 => "101",
            Triple::T001 => "001",
            Triple::T100 => "100",
            Triple::T010 => "010",
        }
    }
}

/// A distribution over the six admissible triples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleDistribution {
    probs: [f64; 6],
}

impl TripleDistribution {
    /// Probabilities in the fixed triple order. Sums within `1e-9` of one are
    /// renormalized.
    pub fn new(probs: [f64; 6]) -> Result<Self> {
        for (t, p) in Triple::ALL.iter().zip(probs) {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::Distribution(format!(
                    "Pr[{}] = {p} must be a nonnegative number",
                    t.label()
                )));
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::Distribution(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(TripleDistribution {
            probs: probs.map(|p| p / sum),
        })
    }

    pub fn uniform() -> Self {
        TripleDistribution {
            probs: [1.0 / 6.0; 6],
        }
    }

    pub fn probs(&self) -> [f64; 6] {
        self.probs
    }

    pub fn prob(&self, t: Triple) -> f64 {
        self.probs[t.index()]
    }

    /// Each order as likely as its reverse.
    pub fn is_even_product(&self) -> bool {
        let p = |t| self.prob(t);
        (p(Triple::T110) - p(Triple::T001)).abs() <= 1e-12
            && (p(Triple::T011) - p(Triple::T100)).abs() <= 1e-12
            && (p(Triple::T101) - p(Triple::T010)).abs() <= 1e-12
    }

    /// The `(α, β, γ)` form when the distribution is even.
    pub fn as_even_product(&self) -> Option<EvenProductDistribution> {
        self.is_even_product().then(|| EvenProductDistribution {
            alpha: self.prob(Triple::T110),
            beta: self.prob(Triple::T011),
            gamma: self.prob(Triple::T101),
        })
    }

    /// Cumulative weights in the fixed order, for sampling.
    pub(crate) fn cumulative(&self) -> [f64; 6] {
        let mut acc = 0.0;
        self.probs.map(|p| {
            acc += p;
            acc
        })
    }
}

#[derive(Serialize, Deserialize)]
struct NamedProbs {
    p110: f64,
    p011: f64,
    p101: f64,
    p001: f64,
    p100: f64,
    p010: f64,
}

impl Serialize for TripleDistribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let [p110, p011, p101, p001, p100, p010] = self.probs;
        NamedProbs {
            p110,
            p011,
            p101,
            p001,
            p100,
            p010,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TripleDistribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = NamedProbs::deserialize(d)?;
        TripleDistribution::new([n.p110, n.p011, n.p101, n.p001, n.p100, n.p010])
            .map_err(serde::de::Error::custom)
    }
}

/// `D(α, β, γ)`: independent voters, each order as likely as its reverse,
/// `α + β + γ = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvenProductDistribution {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl EvenProductDistribution {
    /// Validates nonnegativity and `α + β + γ = 1/2` (within `1e-9`; γ then
    /// absorbs the rounding).
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Distribution(format!(
                    "{name} = {v} must be nonnegative"
                )));
            }
        }
        let sum = alpha + beta + gamma;
        if (sum - 0.5).abs() > SUM_TOL {
            return Err(Error::Distribution(format!(
                "alpha + beta + gamma = {sum}, expected 1/2"
            )));
        }
        let gamma = (0.5 - alpha - beta).max(0.0);
        Ok(EvenProductDistribution { alpha, beta, gamma })
    }

    pub fn uniform() -> Self {
        EvenProductDistribution {
            alpha: 1.0 / 6.0,
            beta: 1.0 / 6.0,
            gamma: 1.0 / 6.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Noise parameters `(4α − 1, 4β − 1, 4γ − 1)` paired with `(f,g)`,
    /// `(g,h)`, `(h,f)`.
    pub fn deltas(&self) -> [f64; 3] {
        [
            4.0 * self.alpha - 1.0,
            4.0 * self.beta - 1.0,
            4.0 * self.gamma - 1.0,
        ]
    }

    /// All three parameters at most 1/4 (equivalently every δ ≤ 0).
    pub fn is_non_positive(&self) -> bool {
        self.alpha <= 0.25 && self.beta <= 0.25 && self.gamma <= 0.25
    }

    pub fn to_triple_distribution(&self) -> TripleDistribution {
        let (a, b, c) = (self.alpha, self.beta, self.gamma);
        TripleDistribution {
            probs: [a, b, c, a, b, c],
        }
    }

    /// `(α, β, γ) → (β, γ, α)`, matching the relabeling `(f,g,h) → (g,h,f)`.
    pub fn rotated(&self) -> Self {
        EvenProductDistribution {
            alpha: self.beta,
            beta: self.gamma,
            gamma: self.alpha,
        }
    }
}

/// Same as [`EvenProductDistribution::new`].
pub fn even_product(alpha: f64, beta: f64, gamma: f64) -> Result<EvenProductDistribution> {
    EvenProductDistribution::new(alpha, beta, gamma)
}

/// Fourier-Walsh coefficients of `F(x,y,z) = Pr[(x,y,z)]` on `{0,1}^3`,
/// indexed by subset mask (bit 0 = x, bit 1 = y, bit 2 = z).
pub fn per_voter_spectrum(t: &TripleDistribution) -> [f64; 8] {
    let mut values = [0.0; 8];
    for tr in Triple::ALL {
        values[tr.code() as usize] = t.prob(tr);
    }
    fwht_signed(&mut values);
    values.map(|v| v / 8.0)
}

/// Product of per-voter probabilities of the given profile.
pub fn profile_probability(t: &TripleDistribution, profile: &[(bool, bool, bool)]) -> Result<f64> {
    profile.iter().try_fold(1.0, |acc, &(x, y, z)| {
        Ok(acc * t.prob(Triple::from_bits(x, y, z)?))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAIR_12: usize = 0b011;
    const PAIR_23: usize = 0b110;
    const PAIR_13: usize = 0b101;

    /// Direct 8-point summation of `2^{-3} Σ F(v) r_S(v)`.
    fn naive_f4(t: &TripleDistribution) -> [f64; 8] {
        let mut out = [0.0; 8];
        for (s, o) in out.iter_mut().enumerate() {
            for tr in Triple::ALL {
                let v = tr.code() as usize;
                let sign = if (s & !v).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
                *o += sign * t.prob(tr) / 8.0;
            }
        }
        out
    }

    #[test]
    fn even_product_examples() {
        let u = even_product(1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0).unwrap();
        assert!(u
            .to_triple_distribution()
            .probs()
            .iter()
            .all(|&p| (p - 1.0 / 6.0).abs() < 1e-15));
        let h = even_product(0.5, 0.0, 0.0).unwrap();
        assert_eq!(h.to_triple_distribution().probs(), [0.5, 0.0, 0.0, 0.5, 0.0, 0.0]);
        let q = even_product(0.25, 0.25, 0.0).unwrap();
        assert_eq!(q.deltas(), [0.0, 0.0, -1.0]);
        let g = even_product(0.0, 0.0, 0.5).unwrap();
        assert_eq!(g.to_triple_distribution().prob(Triple::T101), 0.5);
        assert_eq!(g.to_triple_distribution().prob(Triple::T010), 0.5);
    }

    #[test]
    fn even_product_validation() {
        assert!(matches!(
            even_product(-0.1, 0.3, 0.3),
            Err(Error::Distribution(m)) if m.contains("alpha")
        ));
        assert!(matches!(
            even_product(0.2, 0.2, 0.2),
            Err(Error::Distribution(m)) if m.contains("1/2")
        ));
        let r = even_product(0.1666, 0.1667, 0.1667 - 4e-10).unwrap();
        assert!((r.alpha() + r.beta() + r.gamma() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn per_voter_spectrum_examples() {
        let u = per_voter_spectrum(&TripleDistribution::uniform());
        let expect = [1.0 / 8.0, 0.0, 0.0, -1.0 / 24.0, 0.0, -1.0 / 24.0, -1.0 / 24.0, 0.0];
        for (a, b) in u.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        let h = per_voter_spectrum(&even_product(0.5, 0.0, 0.0).unwrap().to_triple_distribution());
        assert_eq!(h[PAIR_12], 0.125);
        assert_eq!(h[PAIR_23], -0.125);
        assert_eq!(h[PAIR_13], -0.125);
        assert_eq!([h[1], h[2], h[4]], [0.0; 3]);

        let point = TripleDistribution::new([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let s = per_voter_spectrum(&point);
        assert_eq!(s, naive_f4(&point));
        // Pr[110] = 1: singletons (+1/8, +1/8, −1/8)
        assert_eq!([s[1], s[2], s[4]], [0.125, 0.125, -0.125]);
    }

    #[test]
    fn is_even_product_examples() {
        assert!(TripleDistribution::uniform().is_even_product());
        let point = TripleDistribution::new([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(!point.is_even_product());
        assert!(even_product(0.5, 0.0, 0.0)
            .unwrap()
            .to_triple_distribution()
            .is_even_product());
    }

    #[test]
    fn profile_probability_examples() {
        let u = TripleDistribution::uniform();
        let p = profile_probability(&u, &[(true, true, false), (false, false, true), (true, false, false)])
            .unwrap();
        assert!((p - 1.0 / 216.0).abs() < 1e-18);
        let h = even_product(0.5, 0.0, 0.0).unwrap().to_triple_distribution();
        assert_eq!(profile_probability(&h, &[(true, true, false); 5]).unwrap(), 1.0 / 32.0);
        assert_eq!(
            profile_probability(&h, &[(true, true, false), (true, false, false)]).unwrap(),
            0.0
        );
        assert!(profile_probability(&u, &[(true, true, true)]).is_err());
        assert!(profile_probability(&u, &[(false, false, false)]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn even() -> impl Strategy<Value = EvenProductDistribution> {
            (0.0f64..=1.0, 0.0f64..=1.0).prop_map(|(a, b)| {
                let alpha = a * 0.5;
                let beta = b * (0.5 - alpha);
                even_product(alpha, beta, 0.5 - alpha - beta).unwrap()
            })
        }

        proptest! {
            #[test]
            fn even_spectrum_has_closed_form(d in even()) {
                let t = d.to_triple_distribution();
                let s = per_voter_spectrum(&t);
                prop_assert!(s[1].abs() < 1e-15 && s[2].abs() < 1e-15 && s[4].abs() < 1e-15);
                prop_assert!((s[0] - 0.125).abs() < 1e-15);
                let [da, db, dg] = d.deltas();
                prop_assert!((s[PAIR_12] - da / 8.0).abs() < 1e-15);
                prop_assert!((s[PAIR_23] - db / 8.0).abs() < 1e-15);
                prop_assert!((s[PAIR_13] - dg / 8.0).abs() < 1e-15);
                prop_assert!(s[7].abs() < 1e-15);
                prop_assert!(t.is_even_product());
            }

            #[test]
            fn broken_symmetry_is_not_even(raw in prop::array::uniform6(0.01f64..1.0), bump in 0.05f64..0.5) {
                let mut p = raw;
                p[0] += bump; // Pr[110] != Pr[001] unless raw compensates
                let sum: f64 = p.iter().sum();
                let t = TripleDistribution::new(p.map(|v| v / sum)).unwrap();
                let s = per_voter_spectrum(&t);
                let singles_vanish = s[1].abs() < 1e-12 && s[2].abs() < 1e-12 && s[4].abs() < 1e-12;
                prop_assert_eq!(t.is_even_product(), singles_vanish);
                if (t.prob(Triple::T110) - t.prob(Triple::T001)).abs() > 1e-9 {
                    prop_assert!(!t.is_even_product());
                }
            }
        }
    }
}
