//! Boolean functions on the discrete cube and their Fourier-Walsh spectra.
//!
//! Truth tables are bit-packed into `u64` words; bit `x` of the table is
//! `f(x)`. Spectra use the signed characters `r_S(x) = Π_{i∈S} (2x_i − 1)`,
//! so `f̂(S) = 2^{-n} Σ_x f(x) r_S(x)` and `f̂(∅) = E[f]`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, N_MAX};

/// Masks selecting the positions `x` inside one word whose bit `i` is zero.
const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// Below this length the butterfly runs serially.
const PAR_THRESHOLD: usize = 1 << 14;

pub(crate) fn check_arity(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("voter count n must be at least 1"));
    }
    if n > N_MAX {
        return Err(Error::Capacity {
            n,
            max: N_MAX,
            hint: "",
        });
    }
    Ok(())
}

fn word_count(n: usize) -> usize {
    (1usize << n).div_ceil(64)
}

/// Mask of the valid table bits inside a single word for `n < 6`.
fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

/// A choice function `f: {0,1}^n → {0,1}` stored as a packed truth table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: usize,
    words: Vec<u64>,
}

/// Orders by arity, then by the truth table read as an integer.
impl Ord for BooleanFunction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for BooleanFunction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BooleanFunction(n={}, 0x{})", self.n, self.to_hex())
    }
}

impl BooleanFunction {
    /// Builds the table by evaluating `pred` on every input mask.
    pub fn from_fn(n: usize, mut pred: impl FnMut(u64) -> bool) -> Result<Self> {
        check_arity(n)?;
        let len = 1u64 << n;
        let mut words = vec![0u64; word_count(n)];
        for x in 0..len {
            if pred(x) {
                words[(x >> 6) as usize] |= 1 << (x & 63);
            }
        }
        Ok(BooleanFunction { n, words })
    }

    /// Table given as one bool per input, index = input mask.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let len = bits.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::invalid(format!(
                "truth table length {len} is not 2^n with n >= 1"
            )));
        }
        let n = len.trailing_zeros() as usize;
        Self::from_fn(n, |x| bits[x as usize])
    }

    /// Table packed in the low `2^n` bits of `table` (n ≤ 6).
    pub fn from_u64(n: usize, table: u64) -> Result<Self> {
        check_arity(n)?;
        if n > 6 {
            return Err(Error::invalid("from_u64 supports n <= 6"));
        }
        if table & !tail_mask(n) != 0 {
            return Err(Error::invalid(format!(
                "table 0x{table:x} has bits beyond 2^{n}"
            )));
        }
        Ok(BooleanFunction {
            n,
            words: vec![table],
        })
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        check_arity(n)?;
        let fill = if value { u64::MAX } else { 0 };
        let mut words = vec![fill; word_count(n)];
        words[0] &= tail_mask(n);
        Ok(BooleanFunction { n, words })
    }

    /// Dictator of voter `voter` (1-based).
    pub fn dictator(n: usize, voter: usize) -> Result<Self> {
        if voter == 0 || voter > n {
            return Err(Error::invalid(format!(
                "dictator voter {voter} outside 1..={n}"
            )));
        }
        Self::from_fn(n, |x| x >> (voter - 1) & 1 == 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of table entries, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// `f(x)`, checked.
    pub fn evaluate(&self, x: u64) -> Result<bool> {
        if x >= 1u64 << self.n {
            return Err(Error::InputOutOfRange {
                input: x,
                n: self.n,
            });
        }
        Ok(self.get(x))
    }

    /// `f(x)` without the range check; panics on an out-of-range word.
    #[inline]
    pub fn get(&self, x: u64) -> bool {
        self.words[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    /// Number of inputs mapped to 1.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn expectation(&self) -> f64 {
        self.weight() as f64 / self.len() as f64
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() == 1u64 << (self.n - 1)
    }

    pub fn is_constant(&self) -> bool {
        let w = self.weight();
        w == 0 || w == 1u64 << self.n
    }

    /// `f(x) ≤ f(x ∪ {i})` for every input and every coordinate.
    pub fn is_monotone(&self) -> bool {
        let n = self.n;
        for (i, low) in LOW_MASKS.iter().enumerate().take(n.min(6)) {
            let shift = 1u32 << i;
            let mask = low & tail_mask(n);
            for &w in &self.words {
                if w & mask & !(w >> shift) != 0 {
                    return false;
                }
            }
        }
        for i in 6..n {
            let stride = 1usize << (i - 6);
            for j in 0..self.words.len() {
                if j & stride == 0 && self.words[j] & !self.words[j | stride] != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// `f'(x) = 1 − f(¬x)`.
    pub fn dual(&self) -> BooleanFunction {
        let n = self.n;
        let words = if n >= 6 {
            self.words
                .iter()
                .rev()
                .map(|w| !w.reverse_bits())
                .collect()
        } else {
            let len = 1u32 << n;
            vec![!(self.words[0].reverse_bits() >> (64 - len)) & tail_mask(n)]
        };
        BooleanFunction { n, words }
    }

    pub fn is_self_dual(&self) -> bool {
        self.dual() == *self
    }

    /// `1 − f`.
    pub fn complement(&self) -> BooleanFunction {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        words[0] &= tail_mask(self.n);
        BooleanFunction { n: self.n, words }
    }

    /// Invariance under the rotation voter `i` → voter `i+1 (mod n)`.
    pub fn is_cyclic_invariant(&self) -> bool {
        let n = self.n;
        let top = 1u64 << (n - 1);
        let full = (1u64 << n) - 1;
        (0..1u64 << n).all(|x| {
            let rotated = ((x << 1) & full) | u64::from(x & top != 0);
            self.get(rotated) == self.get(x)
        })
    }

    /// Invariance under every permutation in `generators`; `perm[i]` is the
    /// image of voter `i` (0-based). Invariance under a generating set is
    /// invariance under the group it generates.
    pub fn is_invariant_under(&self, generators: &[Vec<usize>]) -> Result<bool> {
        let n = self.n;
        for perm in generators {
            let mut seen = vec![false; n];
            if perm.len() != n
                || perm
                    .iter()
                    .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
            {
                return Err(Error::invalid(format!(
                    "{perm:?} is not a permutation of 0..{n}"
                )));
            }
        }
        Ok(generators.iter().all(|perm| {
            (0..1u64 << n).all(|x| {
                let permuted = perm
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, &p)| acc | ((x >> i & 1) << p));
                self.get(permuted) == self.get(x)
            })
        }))
    }

    /// Table as real values in `{0, 1}`.
    pub fn values(&self) -> Vec<f64> {
        (0..1u64 << self.n)
            .map(|x| if self.get(x) { 1.0 } else { 0.0 })
            .collect()
    }

    pub fn walsh_transform(&self) -> WalshSpectrum {
        walsh_transform(self)
    }

    /// Hex digits of the table read as an integer (bit `x` = `f(x)`), most
    /// significant digit first, `max(1, 2^n / 4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = (self.len() / 4).max(1);
        let mut out = String::with_capacity(digits);
        for k in (0..digits).rev() {
            let bit = k * 4;
            let nibble = (self.words[bit / 64] >> (bit % 64)) & 0xF;
            out.push(char::from_digit(nibble as u32, 16).expect("nibble < 16"));
        }
        out
    }

    /// Inverse of [`to_hex`](Self::to_hex); accepts an optional `0x` prefix
    /// and omitted leading zeros.
    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        check_arity(n)?;
        let digits = hex
            .trim()
            .trim_start_matches("0x")
            .trim_start_matches("0X");
        if digits.is_empty() {
            return Err(Error::Parse("empty hex truth table".into()));
        }
        let max_digits = (1usize << n).div_ceil(4);
        let significant = digits.trim_start_matches('0');
        if significant.len() > max_digits {
            return Err(Error::Parse(format!(
                "hex table has {} digits, n={n} allows {max_digits}",
                digits.len()
            )));
        }
        let mut words = vec![0u64; word_count(n)];
        for (k, c) in significant.chars().rev().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {c:?}")))?
                as u64;
            let bit = k * 4;
            words[bit / 64] |= nibble << (bit % 64);
        }
        if words[0] & !tail_mask(n) != 0 {
            return Err(Error::Parse(format!("hex table has bits beyond 2^{n}")));
        }
        Ok(BooleanFunction { n, words })
    }
}

/// Serialized form: `{ "n": 3, "table": "e8" }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableHex {
    pub n: usize,
    pub table: String,
}

impl From<&BooleanFunction> for TableHex {
    fn from(f: &BooleanFunction) -> Self {
        TableHex {
            n: f.n,
            table: f.to_hex(),
        }
    }
}

impl TryFrom<&TableHex> for BooleanFunction {
    type Error = Error;
    fn try_from(t: &TableHex) -> Result<Self> {
        BooleanFunction::from_hex(t.n, &t.table)
    }
}

impl Serialize for BooleanFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableHex::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BooleanFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = TableHex::deserialize(d)?;
        BooleanFunction::try_from(&t).map_err(serde::de::Error::custom)
    }
}

/// Read access shared by genuine and pseudo spectra.
pub trait Spectrum {
    fn arity(&self) -> usize;
    fn coeffs(&self) -> &[f64];

    /// `ŝ(∅)`, the mean of the underlying function.
    fn mean(&self) -> f64 {
        self.coeffs()[0]
    }
}

/// Fourier-Walsh coefficients of a Boolean function, indexed by subset mask.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalshSpectrum {
    n: usize,
    coeffs: Vec<f64>,
}

/// Arbitrary real coefficients of the same shape as a spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PseudoSpectrum {
    n: usize,
    coeffs: Vec<f64>,
}

impl Spectrum for WalshSpectrum {
    fn arity(&self) -> usize {
        self.n
    }
    fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

impl Spectrum for PseudoSpectrum {
    fn arity(&self) -> usize {
        self.n
    }
    fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

impl WalshSpectrum {
    pub fn into_pseudo(self) -> PseudoSpectrum {
        PseudoSpectrum {
            n: self.n,
            coeffs: self.coeffs,
        }
    }

    pub fn to_pseudo(&self) -> PseudoSpectrum {
        self.clone().into_pseudo()
    }
}

impl PseudoSpectrum {
    pub fn new(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_arity(n)?;
        if coeffs.len() != 1 << n {
            return Err(Error::invalid(format!(
                "spectrum of length {} does not match 2^{n}",
                coeffs.len()
            )));
        }
        Ok(PseudoSpectrum { n, coeffs })
    }

    /// Spectrum with the given `(mask, value)` entries and zeros elsewhere.
    pub fn sparse(n: usize, entries: &[(usize, f64)]) -> Result<Self> {
        check_arity(n)?;
        let mut coeffs = vec![0.0; 1 << n];
        for &(mask, v) in entries {
            if mask >= coeffs.len() {
                return Err(Error::invalid(format!("mask {mask} outside 2^{n}")));
            }
            coeffs[mask] = v;
        }
        Ok(PseudoSpectrum { n, coeffs })
    }
}

/// Unnormalized in-place butterfly `(a, b) → (a + b, b − a)` over every
/// coordinate. Scaling by `2^{-n}` afterwards yields signed-character
/// coefficients.
pub fn fwht_signed(data: &mut [f64]) {
    butterfly(data, |a, b| (a + b, b - a));
}

/// Inverse butterfly `(a, b) → (a − b, a + b)`: evaluates `Σ_S c_S r_S(x)`.
pub fn fwht_signed_inverse(data: &mut [f64]) {
    butterfly(data, |a, b| (a - b, a + b));
}

fn butterfly(data: &mut [f64], op: impl Fn(f64, f64) -> (f64, f64) + Sync) {
    let len = data.len();
    assert!(len.is_power_of_two(), "butterfly length must be a power of two");
    let pair = |lo: &mut f64, hi: &mut f64| {
        let (a, b) = op(*lo, *hi);
        *lo = a;
        *hi = b;
    };
    let mut h = 1;
    while h < len {
        if len < PAR_THRESHOLD {
            for blk in data.chunks_mut(2 * h) {
                let (lo, hi) = blk.split_at_mut(h);
                lo.iter_mut().zip(hi).for_each(|(a, b)| pair(a, b));
            }
        } else if h < PAR_THRESHOLD {
            data.par_chunks_mut(2 * h).for_each(|blk| {
                let (lo, hi) = blk.split_at_mut(h);
                lo.iter_mut().zip(hi).for_each(|(a, b)| pair(a, b));
            });
        } else {
            for blk in data.chunks_mut(2 * h) {
                let (lo, hi) = blk.split_at_mut(h);
                lo.par_iter_mut()
                    .zip(hi.par_iter_mut())
                    .for_each(|(a, b)| pair(a, b));
            }
        }
        h *= 2;
    }
}

/// Fourier-Walsh spectrum in `O(n 2^n)`.
pub fn walsh_transform(f: &BooleanFunction) -> WalshSpectrum {
    let mut coeffs = f.values();
    fwht_signed(&mut coeffs);
    let scale = 1.0 / f.len() as f64;
    coeffs.iter_mut().for_each(|c| *c *= scale);
    WalshSpectrum { n: f.n, coeffs }
}

/// Pointwise values `Σ_S s(S) r_S(x)` for every input `x`.
pub fn inverse_walsh_transform(s: &impl Spectrum) -> Vec<f64> {
    let mut values = s.coeffs().to_vec();
    fwht_signed_inverse(&mut values);
    values
}

/// Entry `k` is `Σ_{|S|=k} s(S)^2`.
pub fn level_weights(s: &impl Spectrum) -> Vec<f64> {
    let mut out = vec![0.0; s.arity() + 1];
    for (mask, c) in s.coeffs().iter().enumerate() {
        out[mask.count_ones() as usize] += c * c;
    }
    out
}
