//! Mean, median and mode of a length multiset.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::{length_multiset, LengthMultiset};
use crate::numeric::Rational;
use crate::semigroup::Semigroup;

pub fn mean_length(ms: &LengthMultiset) -> Result<Rational> {
    if ms.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    let weighted: u128 = ms.iter().map(|(l, m)| l as u128 * m as u128).sum();
    Rational::new(weighted, ms.total())
}

/// The `k`-th smallest length (1-based), counted with multiplicity.
fn order_statistic(ms: &LengthMultiset, k: u64) -> u64 {
    let mut seen = 0;
    for (l, m) in ms.iter() {
        seen += m;
        if seen >= k {
            return l;
        }
    }
    unreachable!("order statistic {k} beyond total {}", ms.total())
}

/// Middle order statistic, or the average of the two middle ones when the
/// total is even.
pub fn median_length(ms: &LengthMultiset) -> Result<Rational> {
    let n = ms.total();
    if n == 0 {
        return Err(Error::EmptyMultiset);
    }
    if n % 2 == 1 {
        return Ok(Rational::from(order_statistic(ms, n.div_ceil(2))));
    }
    let lo = order_statistic(ms, n / 2);
    let hi = order_statistic(ms, n / 2 + 1);
    Rational::new(lo + hi, 2u64)
}

/// Lengths of highest multiplicity, ascending, and that multiplicity.
pub fn mode(ms: &LengthMultiset) -> Result<(Vec<u64>, u64)> {
    let freq = ms.iter().map(|(_, m)| m).max().ok_or(Error::EmptyMultiset)?;
    let lengths = ms.iter().filter(|&(_, m)| m == freq).map(|(l, _)| l).collect();
    Ok((lengths, freq))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub n: u64,
    #[serde(rename = "min")]
    pub min_len: u64,
    #[serde(rename = "max")]
    pub max_len: u64,
    pub mean: Rational,
    pub median: Rational,
    pub mode_lengths: Vec<u64>,
    pub mode_freq: u64,
    pub num_factorizations: u64,
}

impl InvariantReport {
    pub fn from_multiset(n: u64, ms: &LengthMultiset) -> Result<Self> {
        let (mode_lengths, mode_freq) = mode(ms)?;
        Ok(InvariantReport {
            n,
            min_len: ms.min().ok_or(Error::EmptyMultiset)?,
            max_len: ms.max().ok_or(Error::EmptyMultiset)?,
            mean: mean_length(ms)?,
            median: median_length(ms)?,
            mode_lengths,
            mode_freq,
            num_factorizations: ms.total(),
        })
    }
}

/// All length statistics of `n` from a single multiset pass.
pub fn invariant_report(s: &Semigroup, n: u64) -> Result<InvariantReport> {
    let ms = length_multiset(s, n)?;
    InvariantReport::from_multiset(n, &ms)
}
