//! Factorizations and length multisets.
//!
//! Two independent routes produce a [`LengthMultiset`]: full enumeration of
//! the factorization set, and, for three generators, a closed count of the
//! lattice points on each length's solution segment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::Semigroup;

/// Default ceiling on the number of tuples [`factorizations`] will build.
pub const DEFAULT_FACTORIZATION_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factorization {
    coeffs: Vec<u64>,
    length: u64,
}

impl Factorization {
    pub fn new(coeffs: Vec<u64>) -> Self {
        let length = coeffs.iter().sum();
        Factorization { coeffs, length }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    /// The element this tuple factors in `s`.
    pub fn value(&self, s: &Semigroup) -> u64 {
        self.coeffs.iter().zip(s.gens()).map(|(a, g)| a * g).sum()
    }
}

/// Multiset of factorization lengths, stored as length -> multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LengthMultiset {
    entries: BTreeMap<u64, u64>,
    total: u64,
}

impl LengthMultiset {
    /// Drops zero multiplicities.
    pub fn from_map(mut entries: BTreeMap<u64, u64>) -> Self {
        entries.retain(|_, m| *m > 0);
        let total = entries.values().sum();
        LengthMultiset { entries, total }
    }

    pub fn from_lengths(lengths: impl IntoIterator<Item = u64>) -> Self {
        let mut entries = BTreeMap::new();
        for l in lengths {
            *entries.entry(l).or_insert(0) += 1;
        }
        Self::from_map(entries)
    }

    pub fn entries(&self) -> &BTreeMap<u64, u64> {
        &self.entries
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&l, &m)| (l, m))
    }

    /// Number of factorizations, counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn multiplicity(&self, length: u64) -> u64 {
        self.entries.get(&length).copied().unwrap_or(0)
    }

    pub fn min(&self) -> Option<u64> {
        self.entries.keys().next().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.entries.keys().next_back().copied()
    }

    /// Distinct lengths.
    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied()
    }

    /// `length,multiplicity` CSV, ascending. With `include_zeros` every
    /// integer between the extremes gets a row.
    pub fn to_csv(&self, include_zeros: bool) -> String {
        let mut out = String::from("length,multiplicity\n");
        match (include_zeros, self.min(), self.max()) {
            (true, Some(lo), Some(hi)) => {
                for l in lo..=hi {
                    let _ = writeln!(out, "{},{}", l, self.multiplicity(l));
                }
            }
            _ => {
                for (l, m) in self.iter() {
                    let _ = writeln!(out, "{l},{m}");
                }
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct HistogramRow {
    length: u64,
    multiplicity: u64,
}

#[derive(Serialize, Deserialize)]
struct MultisetRepr {
    total: u64,
    histogram: Vec<HistogramRow>,
}

impl Serialize for LengthMultiset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MultisetRepr {
            total: self.total,
            histogram: self
                .iter()
                .map(|(length, multiplicity)| HistogramRow { length, multiplicity })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LengthMultiset {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MultisetRepr::deserialize(deserializer)?;
        let ms = Self::from_map(
            repr.histogram
                .into_iter()
                .map(|r| (r.length, r.multiplicity))
                .collect(),
        );
        if ms.total != repr.total {
            return Err(serde::de::Error::custom("total does not match histogram"));
        }
        Ok(ms)
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Inverse of `a` modulo `m` (`m >= 1`, `gcd(a, m) = 1`).
fn mod_inverse(a: i128, m: i128) -> i128 {
    if m == 1 {
        return 0;
    }
    let (_, x, _) = ext_gcd(a.rem_euclid(m), m);
    x.rem_euclid(m)
}

/// Solutions of `x*p + y*q = r` in the last two positions of the recursion,
/// precomputed once per semigroup.
struct PairSolver {
    small: u64,
    large: u64,
    g: u64,
    step: u64,
    inv: u64,
}

impl PairSolver {
    fn new(small: u64, large: u64) -> Self {
        let (g, _, _) = ext_gcd(small as i128, large as i128);
        let g = g as u64;
        let step = small / g;
        let inv = mod_inverse((large / g) as i128, step as i128) as u64;
        PairSolver { small, large, g, step, inv }
    }

    /// Calls `f(large_coeff, small_coeff)` for each solution of
    /// `small_coeff*small + large_coeff*large = rem`, large coefficient descending.
    fn for_each(&self, rem: u64, mut f: impl FnMut(u64, u64)) {
        if !rem.is_multiple_of(self.g) {
            return;
        }
        let top = rem / self.large;
        // large_coeff ≡ (rem/g) * inv (mod step)
        let residue = ((rem / self.g) as u128 * self.inv as u128 % self.step as u128) as u64;
        if top < residue {
            return;
        }
        let mut y = top - (top - residue) % self.step;
        loop {
            f(y, (rem - y * self.large) / self.small);
            if y < self.step {
                break;
            }
            y -= self.step;
        }
    }
}

/// Visits every factorization of `n`, ordered by the last coordinate
/// descending, then the one before it, and so on.
pub fn for_each_factorization(s: &Semigroup, n: u64, mut f: impl FnMut(&[u64])) {
    let gens = s.gens();
    let k = gens.len();
    let pair = PairSolver::new(gens[0], gens[1]);
    let mut coeffs = vec![0u64; k];
    fn recurse(
        gens: &[u64],
        pair: &PairSolver,
        idx: usize,
        rem: u64,
        coeffs: &mut [u64],
        f: &mut dyn FnMut(&[u64]),
    ) {
        if idx == 1 {
            pair.for_each(rem, |y, x| {
                coeffs[1] = y;
                coeffs[0] = x;
                f(coeffs);
            });
            return;
        }
        let g = gens[idx];
        for a in (0..=rem / g).rev() {
            coeffs[idx] = a;
            recurse(gens, pair, idx - 1, rem - a * g, coeffs, f);
        }
        coeffs[idx] = 0;
    }
    recurse(gens, &pair, k - 1, n, &mut coeffs, &mut f);
}

/// The full factorization set, refusing more than
/// [`DEFAULT_FACTORIZATION_CAP`] tuples.
pub fn factorizations(s: &Semigroup, n: u64) -> Result<Vec<Factorization>> {
    factorizations_capped(s, n, DEFAULT_FACTORIZATION_CAP)
}

pub fn factorizations_capped(s: &Semigroup, n: u64, cap: u64) -> Result<Vec<Factorization>> {
    let count = count_factorizations(s, n)?;
    if count > cap {
        return Err(Error::TooManyFactorizations { count, cap });
    }
    let mut out = Vec::with_capacity(count as usize);
    for_each_factorization(s, n, |c| out.push(Factorization::new(c.to_vec())));
    Ok(out)
}

/// Length multiset built by visiting every factorization; no cap applies
/// since tuples are never stored. Empty when `n` is not in `s`.
pub fn enumerate_length_multiset(s: &Semigroup, n: u64) -> LengthMultiset {
    let mut entries = BTreeMap::new();
    for_each_factorization(s, n, |c| {
        *entries.entry(c.iter().sum::<u64>()).or_insert(0u64) += 1;
    });
    LengthMultiset::from_map(entries)
}

/// Length multiplicities for three generators by counting lattice points.
///
/// For a length `l`, factorizations are the `(x2, x3)` with
/// `(n2-n1)x2 + (n3-n1)x3 = n - l*n1`, `x2, x3 >= 0` and `x2 + x3 <= l`; the
/// solutions form an arithmetic progression in `x3` whose bounds are closed
/// form. Empty when `n` is not in `s`.
pub fn closed_length_multiset(s: &Semigroup, n: u64) -> Result<LengthMultiset> {
    let (n1, n2, n3) = s.triple()?;
    let mut entries = BTreeMap::new();
    for (l, m) in ClosedCounter::new(n1, n2, n3).counts(n) {
        entries.insert(l, m);
    }
    Ok(LengthMultiset::from_map(entries))
}

struct ClosedCounter {
    n1: i128,
    n3: i128,
    p: i128,
    q: i128,
    g: i128,
    step: i128,
    inv: i128,
}

impl ClosedCounter {
    fn new(n1: u64, n2: u64, n3: u64) -> Self {
        let (n1, n2, n3) = (n1 as i128, n2 as i128, n3 as i128);
        let p = n2 - n1;
        let q = n3 - n1;
        let (g, _, _) = ext_gcd(p, q);
        let step = p / g;
        ClosedCounter {
            n1,
            n3,
            p,
            q,
            g,
            step,
            inv: mod_inverse(q / g, step),
        }
    }

    fn count_at(&self, n: i128, l: i128) -> u64 {
        let r = n - l * self.n1;
        if r < 0 || r % self.g != 0 {
            return 0;
        }
        // x3 >= ceil((r - p*l) / (q - p)) keeps x2 + x3 <= l
        let lo = div_ceil(r - self.p * l, self.q - self.p).max(0);
        let hi = r / self.q;
        if hi < lo {
            return 0;
        }
        let residue = ((r / self.g) % self.step) * self.inv % self.step;
        let first = lo + (residue - lo).rem_euclid(self.step);
        if first > hi {
            0
        } else {
            ((hi - first) / self.step + 1) as u64
        }
    }

    /// Nonzero `(length, multiplicity)` pairs in ascending length order.
    fn counts(&self, n: u64) -> impl Iterator<Item = (u64, u64)> + '_ {
        let n = n as i128;
        let lo = div_ceil(n, self.n3);
        let hi = n / self.n1;
        (lo..=hi).filter_map(move |l| {
            let m = self.count_at(n, l);
            (m > 0).then_some((l as u64, m))
        })
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    a.div_euclid(b) + i128::from(a.rem_euclid(b) != 0)
}

/// The length multiset of `n`, through the closed count when `s` has three
/// generators and by enumeration otherwise.
pub fn length_multiset(s: &Semigroup, n: u64) -> Result<LengthMultiset> {
    let ms = if s.embedding_len() == 3 {
        closed_length_multiset(s, n)?
    } else {
        enumerate_length_multiset(s, n)
    };
    if ms.is_empty() {
        return Err(Error::NotInSemigroup(n));
    }
    Ok(ms)
}

/// `|Z(n)|` without building the factorizations.
pub fn count_factorizations(s: &Semigroup, n: u64) -> Result<u64> {
    if let Ok((n1, n2, n3)) = s.triple() {
        let counter = ClosedCounter::new(n1, n2, n3);
        return counter
            .counts(n)
            .try_fold(0u64, |acc, (_, m)| acc.checked_add(m))
            .ok_or(Error::Overflow("factorization count"));
    }
    let mut ways = vec![0u64; n as usize + 1];
    ways[0] = 1;
    for &g in s.gens() {
        let g = g as usize;
        for v in g..ways.len() {
            ways[v] = ways[v]
                .checked_add(ways[v - g])
                .ok_or(Error::Overflow("factorization count"))?;
        }
    }
    Ok(ways[n as usize])
}

/// Minimum and maximum factorization length.
pub fn min_max_length(s: &Semigroup, n: u64) -> Result<(u64, u64)> {
    let ms = length_multiset(s, n)?;
    Ok((ms.min().unwrap_or(0), ms.max().unwrap_or(0)))
}
