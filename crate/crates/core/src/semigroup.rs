//! Numerical semigroups, membership, and the minimal length-preserving trade.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::arith::gcd_all;

/// A numerical semigroup `<n1 < n2 < ... < nk>` with `gcd = 1`.
///
/// Generators need not be minimal; see [`Semigroup::is_minimal`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Semigroup {
    gens: Vec<u64>,
}

impl Semigroup {
    /// Sorts and validates a generator list.
    pub fn new(gens: &[u64]) -> Result<Self> {
        if gens.len() < 2 {
            return Err(Error::TooFewGenerators(gens.len()));
        }
        if gens.contains(&0) {
            return Err(Error::NonPositiveGenerator);
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateGenerator(w[0]));
        }
        let g = gcd_all(&sorted);
        if g != 1 {
            return Err(Error::GcdNotOne(g));
        }
        Ok(Semigroup { gens: sorted })
    }

    /// Accepts signed input so that negative generators get their own error.
    pub fn from_signed(gens: &[i64]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|&g| u64::try_from(g).map_err(|_| Error::NonPositiveGenerator))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&gens)
    }

    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    pub fn embedding_len(&self) -> usize {
        self.gens.len()
    }

    pub fn smallest(&self) -> u64 {
        self.gens[0]
    }

    pub fn largest(&self) -> u64 {
        self.gens[self.gens.len() - 1]
    }

    /// `(n1, n2, n3)` for three-generated semigroups.
    pub fn triple(&self) -> Result<(u64, u64, u64)> {
        match self.gens[..] {
            [a, b, c] => Ok((a, b, c)),
            _ => Err(Error::NotThreeGenerated(self.gens.len())),
        }
    }

    /// Reachability table: entry `i` is true iff `i` lies in the semigroup.
    pub fn membership_table(&self, limit: u64) -> Vec<bool> {
        reachable(&self.gens, limit)
    }

    pub fn contains(&self, n: u64) -> bool {
        self.membership_table(n)[n as usize]
    }

    /// True when no generator lies in the semigroup spanned by the others.
    pub fn is_minimal(&self) -> bool {
        (0..self.gens.len()).all(|i| {
            let others: Vec<u64> = self
                .gens
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &g)| g)
                .collect();
            !reachable(&others, self.gens[i])[self.gens[i] as usize]
        })
    }

    /// Minimal length-preserving trade data; three generators only.
    pub fn trade_data(&self) -> Result<TradeData> {
        let (n1, n2, n3) = self.triple()?;
        let delta = gcd_all(&[n3 - n1, n3 - n2, n2 - n1]);
        let a = (n3 - n2) / delta;
        let b = (n3 - n1) / delta;
        let c = (n2 - n1) / delta;
        let t = b.checked_mul(n2).ok_or(Error::Overflow("trade element"))?;
        Ok(TradeData { a, b, c, t, delta })
    }
}

fn reachable(gens: &[u64], limit: u64) -> Vec<bool> {
    let limit = limit as usize;
    let mut table = vec![false; limit + 1];
    table[0] = true;
    for i in 1..=limit {
        table[i] = gens
            .iter()
            .any(|&g| (g as usize) <= i && table[i - g as usize]);
    }
    table
}

impl fmt::Display for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"n1,n2,n3"`; whitespace is ignored.
impl FromStr for Semigroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let gens = s
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::ParseSemigroup(s.to_string()))?;
        Self::from_signed(&gens)
    }
}

/// The unique minimal length-preserving trade `(a, 0, c | 0, b, 0)` of a
/// three-generated semigroup, its trade element `t`, and `delta`, the gcd of
/// the generator differences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TradeData {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub t: u64,
    pub delta: u64,
}

#[derive(Serialize, Deserialize)]
struct SemigroupRepr {
    gens: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    trade_element: Option<u64>,
}

impl Serialize for Semigroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let trade = self.trade_data().ok();
        SemigroupRepr {
            gens: self.gens.clone(),
            delta: trade.map(|t| t.delta),
            trade_element: trade.map(|t| t.t),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Semigroup {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SemigroupRepr::deserialize(deserializer)?;
        Semigroup::new(&repr.gens).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mcnugget_is_valid() {
        let s = Semigroup::new(&[6, 9, 20]).unwrap();
        assert_eq!(s.gens(), &[6, 9, 20]);
        assert!(s.is_minimal());
    }

    #[test]
    fn validation_errors() {
        assert_eq!(Semigroup::new(&[2, 4]), Err(Error::GcdNotOne(2)));
        assert_eq!(Semigroup::new(&[5]), Err(Error::TooFewGenerators(1)));
        assert_eq!(Semigroup::new(&[0, 3, 5]), Err(Error::NonPositiveGenerator));
        assert_eq!(Semigroup::new(&[3, 5, 5]), Err(Error::DuplicateGenerator(5)));
        assert_eq!(
            Semigroup::from_signed(&[-3, 5]),
            Err(Error::NonPositiveGenerator)
        );
    }

    #[test]
    fn generators_are_sorted() {
        let s = Semigroup::new(&[20, 9, 6]).unwrap();
        assert_eq!(s.gens(), &[6, 9, 20]);
    }

    #[test]
    fn parse_and_display() {
        let s: Semigroup = "6, 9,20".parse().unwrap();
        assert_eq!(s.to_string(), "<6, 9, 20>");
        assert!("6;9".parse::<Semigroup>().is_err());
        assert!("2,4".parse::<Semigroup>().is_err());
    }

    #[test]
    fn membership() {
        let s = Semigroup::new(&[6, 9, 20]).unwrap();
        assert!(s.contains(132));
        assert!(s.contains(0));
        assert!(!s.contains(7));
        assert!(!s.contains(43));
        assert!(s.contains(44));
    }

    #[test]
    fn non_minimal_generators_allowed() {
        let s = Semigroup::new(&[3, 5, 6]).unwrap();
        assert!(!s.is_minimal());
    }

    #[test]
    fn trade_data_examples() {
        let t = Semigroup::new(&[6, 9, 20]).unwrap().trade_data().unwrap();
        assert_eq!(t, TradeData { a: 11, b: 14, c: 3, t: 126, delta: 1 });
        let t = Semigroup::new(&[3, 5, 7]).unwrap().trade_data().unwrap();
        assert_eq!(t, TradeData { a: 1, b: 2, c: 1, t: 10, delta: 2 });
        let t = Semigroup::new(&[7, 16, 25]).unwrap().trade_data().unwrap();
        assert_eq!(t, TradeData { a: 1, b: 2, c: 1, t: 32, delta: 9 });
        assert_eq!(
            Semigroup::new(&[4, 5, 6, 7]).unwrap().trade_data(),
            Err(Error::NotThreeGenerated(4))
        );
    }

    #[test]
    fn json_includes_trade_constants() {
        let s = Semigroup::new(&[6, 9, 20]).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v, serde_json::json!({"gens": [6, 9, 20], "delta": 1, "trade_element": 126}));
        let back: Semigroup = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
        let v4 = serde_json::to_value(Semigroup::new(&[4, 5, 6, 7]).unwrap()).unwrap();
        assert_eq!(v4, serde_json::json!({"gens": [4, 5, 6, 7]}));
    }
}
