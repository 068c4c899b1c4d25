//! Semigroup families with prescribed median constants, and unit-fraction
//! search for inverting the mean constant.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::arith::{gcd_all, is_prime, is_squarefree, isqrt};
use crate::numeric::Rational;
use crate::semigroup::Semigroup;

/// `<a^2 - b^2, a^2, a^2 + b^2>` for a primitive Pythagorean triple with
/// `a > b`; its median constant is rational.
pub fn pythagorean_semigroup(a: u64, b: u64, c: u64) -> Result<Semigroup> {
    let sq = |x: u64| (x as u128) * (x as u128);
    if sq(a) + sq(b) != sq(c) || gcd_all(&[a, b, c]) != 1 || b == 0 {
        return Err(Error::NotPrimitiveTriple(a, b, c));
    }
    if a <= b || b < 3 {
        return Err(Error::TripleOrder(a, b));
    }
    let (a2, b2) = (a.checked_mul(a), b.checked_mul(b));
    let (a2, b2) = a2.zip(b2).ok_or(Error::Overflow("pythagorean generators"))?;
    let top = a2.checked_add(b2).ok_or(Error::Overflow("pythagorean generators"))?;
    Semigroup::new(&[a2 - b2, a2, top])
}

/// Primitive triples `(a, b, c)` with `a > b` and `c <= max_c`, from coprime
/// opposite-parity pairs `u > v`.
pub fn primitive_triples(max_c: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    let mut u = 2u64;
    while u * u < max_c {
        for v in 1..u {
            if (u - v) % 2 == 1 && gcd_all(&[u, v]) == 1 {
                let c = u * u + v * v;
                if c > max_c {
                    continue;
                }
                let (x, y) = (u * u - v * v, 2 * u * v);
                out.push((x.max(y), x.min(y), c));
            }
        }
        u += 1;
    }
    out.sort_unstable_by_key(|&(a, b, c)| (c, a, b));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    /// `floor(t*sqrt(d))` is not prime.
    NotPrime,
    /// `floor(t*sqrt(d)) <= max(2, d)`.
    TooSmall,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SqrtDOutcome {
    Accepted {
        semigroup: Semigroup,
        d: u64,
        t: u64,
        p: u64,
        ell: u64,
    },
    Rejected {
        d: u64,
        t: u64,
        p: u64,
        reason: Rejection,
    },
}

impl SqrtDOutcome {
    pub fn semigroup(&self) -> Option<&Semigroup> {
        match self {
            SqrtDOutcome::Accepted { semigroup, .. } => Some(semigroup),
            SqrtDOutcome::Rejected { .. } => None,
        }
    }
}

/// With `p = floor(t*sqrt(d))` prime and `p > max(2, d)`, builds
/// `<p^2 - l, p^2, p^2 + l>` where `l = t^2 d - p^2`; its median constant is
/// irrational in `Q(sqrt d)`.
pub fn sqrt_d_semigroup(d: u64, t: u64) -> Result<SqrtDOutcome> {
    if d < 2 {
        return Err(Error::RadicandTooSmall(d));
    }
    if !is_squarefree(d) {
        return Err(Error::NotSquarefree(d));
    }
    let overflow = || Error::Overflow("sqrt-d construction");
    let t2d = BigUint::from(t) * BigUint::from(t) * BigUint::from(d);
    let p = isqrt(&t2d).to_u64().ok_or_else(overflow)?;
    if !is_prime(p) {
        return Ok(SqrtDOutcome::Rejected { d, t, p, reason: Rejection::NotPrime });
    }
    if p <= d.max(2) {
        return Ok(SqrtDOutcome::Rejected { d, t, p, reason: Rejection::TooSmall });
    }
    let p2 = p.checked_mul(p).ok_or_else(overflow)?;
    let n3 = t2d.to_u64().ok_or_else(overflow)?;
    let ell = n3 - p2;
    let semigroup = Semigroup::new(&[p2 - ell, p2, n3])?;
    Ok(SqrtDOutcome::Accepted { semigroup, d, t, p, ell })
}

/// All `t <= t_max` accepted by [`sqrt_d_semigroup`].
pub fn find_sqrt_d_params(d: u64, t_max: u64) -> Result<Vec<u64>> {
    let mut accepted = Vec::new();
    for t in 1..=t_max {
        if let SqrtDOutcome::Accepted { .. } = sqrt_d_semigroup(d, t)? {
            accepted.push(t);
        }
    }
    Ok(accepted)
}

/// Denominators of a sum of unit fractions, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitFractionSolution {
    pub denominators: Vec<u64>,
}

impl UnitFractionSolution {
    pub fn len(&self) -> usize {
        self.denominators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.denominators.is_empty()
    }

    pub fn sum(&self) -> Rational {
        self.denominators
            .iter()
            .map(|&d| Rational::new(1, d).expect("positive denominator"))
            .sum()
    }
}

/// Depth-first search over nondecreasing denominators. Each denominator lies
/// in `[ceil(1/r), floor(left/r)]` for the remainder `r` and `left` terms
/// still to place; the last one is solved exactly.
struct UnitFractionSearch {
    distinct: bool,
    first_only: bool,
    found: Vec<UnitFractionSolution>,
}

impl UnitFractionSearch {
    fn run(&mut self, rem: &Rational, left: usize, min_d: u64, acc: &mut Vec<u64>) -> Result<()> {
        if self.first_only && !self.found.is_empty() {
            return Ok(());
        }
        if left == 1 {
            if rem.numer().is_one() {
                let d = rem.denom().to_u64().ok_or(Error::Overflow("unit fraction"))?;
                if d >= min_d {
                    acc.push(d);
                    self.found.push(UnitFractionSolution { denominators: acc.clone() });
                    acc.pop();
                }
            }
            return Ok(());
        }
        let inv = rem.recip()?;
        let lo = inv.ceil().to_u64().ok_or(Error::Overflow("unit fraction"))?.max(min_d);
        let hi = (&inv * Rational::from(left as u64))
            .floor()
            .to_u64()
            .ok_or(Error::Overflow("unit fraction"))?;
        for d in lo..=hi {
            let next = rem - Rational::new(1, d)?;
            if !next.is_positive() {
                continue;
            }
            acc.push(d);
            self.run(&next, left - 1, if self.distinct { d + 1 } else { d }, acc)?;
            acc.pop();
            if self.first_only && !self.found.is_empty() {
                break;
            }
        }
        Ok(())
    }
}

fn search(target: &Rational, terms: usize, distinct: bool, first_only: bool) -> Result<Vec<UnitFractionSolution>> {
    if !target.is_positive() {
        return Err(Error::NonPositiveTarget(target.to_string()));
    }
    let mut s = UnitFractionSearch {
        distinct,
        first_only,
        found: Vec::new(),
    };
    if terms > 0 {
        s.run(target, terms, 1, &mut Vec::with_capacity(terms))?;
    }
    Ok(s.found)
}

/// Every way to write `target` as exactly `terms` unit fractions, in
/// lexicographic order of the denominator tuples.
pub fn unit_fraction_decompositions(target: &Rational, terms: usize, distinct: bool) -> Result<Vec<UnitFractionSolution>> {
    search(target, terms, distinct, false)
}

/// Every `1/d1 + 1/d2 + 1/d3 = target` with `d1 <= d2 <= d3` (strict when
/// `distinct`). Empty when no such representation exists.
pub fn three_unit_fractions(target: &Rational, distinct: bool) -> Result<Vec<UnitFractionSolution>> {
    unit_fraction_decompositions(target, 3, distinct)
}

/// A shortest distinct-denominator decomposition using at most `max_terms`
/// terms; lexicographically first among the shortest.
pub fn unit_fraction_decomposition(target: &Rational, max_terms: usize) -> Result<Option<UnitFractionSolution>> {
    for terms in 1..=max_terms {
        if let Some(sol) = search(target, terms, true, true)?.into_iter().next() {
            return Ok(Some(sol));
        }
    }
    Ok(None)
}

/// Semigroups whose mean constant `(1/3)(1/n1 + 1/n2 + 1/n3)` equals `target`.
pub fn mean_constant_inverse(target: &Rational) -> Result<Vec<Semigroup>> {
    if !target.is_positive() || *target >= Rational::frac(47, 180) {
        return Err(Error::TargetOutOfRange(target.to_string()));
    }
    let tripled = target * Rational::integer(3);
    Ok(three_unit_fractions(&tripled, true)?
        .into_iter()
        .filter_map(|sol| Semigroup::new(&sol.denominators).ok())
        .collect())
}

/// Convenience for callers holding a signed rational.
pub fn is_valid_mean_target(target: &Rational) -> bool {
    target.is_positive() && *target < Rational::frac(47, 180)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::{asymptotic_mean, asymptotic_median, fulcrum};

    fn r(p: i64, q: i64) -> Rational {
        Rational::frac(p, q)
    }

    #[test]
    fn pythagorean_examples() {
        assert_eq!(pythagorean_semigroup(4, 3, 5).unwrap().gens(), &[7, 16, 25]);
        assert_eq!(pythagorean_semigroup(12, 5, 13).unwrap().gens(), &[119, 144, 169]);
        assert_eq!(pythagorean_semigroup(3, 4, 5), Err(Error::TripleOrder(3, 4)));
        assert_eq!(pythagorean_semigroup(4, 3, 6), Err(Error::NotPrimitiveTriple(4, 3, 6)));
        assert_eq!(pythagorean_semigroup(8, 6, 10), Err(Error::NotPrimitiveTriple(8, 6, 10)));
    }

    #[test]
    fn generated_triples_are_primitive() {
        let triples = primitive_triples(100);
        assert!(triples.contains(&(4, 3, 5)));
        assert!(triples.contains(&(12, 5, 13)));
        assert_eq!(triples.len(), 16);
        for (a, b, c) in triples {
            assert!(pythagorean_semigroup(a, b, c).is_ok(), "({a},{b},{c})");
        }
    }

    #[test]
    fn sqrt_d_examples() {
        let out = sqrt_d_semigroup(2, 5).unwrap();
        assert_eq!(out.semigroup().unwrap().gens(), &[48, 49, 50]);
        assert!(matches!(out, SqrtDOutcome::Accepted { p: 7, ell: 1, .. }));
        assert_eq!(
            sqrt_d_semigroup(2, 2).unwrap(),
            SqrtDOutcome::Rejected { d: 2, t: 2, p: 2, reason: Rejection::TooSmall }
        );
        assert_eq!(sqrt_d_semigroup(4, 3), Err(Error::NotSquarefree(4)));
        assert_eq!(sqrt_d_semigroup(1, 3), Err(Error::RadicandTooSmall(1)));
    }

    #[test]
    fn sqrt_d_parameter_scan() {
        assert!(find_sqrt_d_params(2, 10).unwrap().contains(&5));
        assert!(!find_sqrt_d_params(3, 1).unwrap().contains(&1));
        assert!(!find_sqrt_d_params(5, 2).unwrap().contains(&2));
        assert_eq!(find_sqrt_d_params(12, 5), Err(Error::NotSquarefree(12)));
    }

    #[test]
    fn sqrt_d_median_radical() {
        let out = sqrt_d_semigroup(2, 5).unwrap();
        let s = out.semigroup().unwrap();
        assert!(fulcrum(s).unwrap().value() < &r(1, 2));
        let m = asymptotic_median(s).unwrap();
        assert!(!m.is_rational());
        assert_eq!(m.b(), &r(-1, 3360));
    }

    #[test]
    fn three_term_examples() {
        for t in [r(8, 11), r(8, 17), r(9, 19), r(14, 19)] {
            assert!(three_unit_fractions(&t, true).unwrap().is_empty(), "{t}");
        }
        let sols = three_unit_fractions(&r(3, 4), true).unwrap();
        assert!(sols.contains(&UnitFractionSolution { denominators: vec![2, 5, 20] }));
        for s in &sols {
            assert_eq!(s.sum(), r(3, 4));
        }
        let with_repeats = three_unit_fractions(&r(3, 4), false).unwrap();
        assert!(with_repeats.contains(&UnitFractionSolution { denominators: vec![4, 4, 4] }));
        assert!(three_unit_fractions(&Rational::zero(), true).is_err());
    }

    /// Pairs `d1 <= d2 <= bound` scanned in integers, with `d3` recovered by
    /// cross-multiplication.
    fn brute_three(p: u64, q: u64, distinct: bool, bound: u64) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for d1 in 1..=bound {
            for d2 in d1..=bound {
                // p/q - 1/d1 - 1/d2 = (p d1 d2 - q d2 - q d1) / (q d1 d2)
                let num = (p * d1 * d2) as i128 - (q * d2) as i128 - (q * d1) as i128;
                let den = (q * d1 * d2) as i128;
                if num <= 0 || den % num != 0 {
                    continue;
                }
                let d3 = (den / num) as u64;
                let ok = if distinct { d1 < d2 && d2 < d3 } else { d2 <= d3 };
                if ok {
                    out.push(vec![d1, d2, d3]);
                }
            }
        }
        out
    }

    #[test]
    fn three_term_search_is_complete() {
        for (p, q) in [(3, 4), (4, 5), (2, 3), (5, 6), (7, 12), (1, 2), (8, 11), (4, 13)] {
            for distinct in [true, false] {
                let got: Vec<Vec<u64>> = three_unit_fractions(&r(p as i64, q as i64), distinct)
                    .unwrap()
                    .into_iter()
                    .map(|s| s.denominators)
                    .collect();
                assert_eq!(got, brute_three(p, q, distinct, 700), "{p}/{q} distinct={distinct}");
            }
        }
    }

    #[test]
    fn shortest_decompositions() {
        let sol = unit_fraction_decomposition(&r(8, 11), 4).unwrap().unwrap();
        assert_eq!(sol.denominators, vec![2, 5, 37, 4070]);
        assert_eq!(sol.sum(), r(8, 11));
        let sol = unit_fraction_decomposition(&r(1, 2), 1).unwrap().unwrap();
        assert_eq!(sol.denominators, vec![2]);
        let sol = unit_fraction_decomposition(&r(4, 5), 3).unwrap().unwrap();
        assert_eq!(sol.len(), 3);
        assert_eq!(sol.sum(), r(4, 5));
        assert!(unit_fraction_decomposition(&r(8, 11), 3).unwrap().is_none());
    }

    #[test]
    fn four_term_count() {
        let all = unit_fraction_decompositions(&r(8, 11), 4, true).unwrap();
        assert_eq!(all.len(), 16);
        assert_eq!(all.last().unwrap().denominators, vec![3, 4, 7, 924]);
        assert!(all.iter().all(|s| s.sum() == r(8, 11)));
        assert_eq!(unit_fraction_decompositions(&r(8, 11), 4, false).unwrap().len(), 24);
    }

    #[test]
    fn mean_inverse_examples() {
        assert!(mean_constant_inverse(&r(8, 33)).unwrap().is_empty());
        assert_eq!(
            mean_constant_inverse(&r(47, 180)),
            Err(Error::TargetOutOfRange("47/180".into()))
        );
        assert!(mean_constant_inverse(&Rational::zero()).is_err());
        let found = mean_constant_inverse(&r(71, 315)).unwrap();
        assert!(found.contains(&Semigroup::new(&[3, 5, 7]).unwrap()));
        for s in &found {
            assert_eq!(asymptotic_mean(s).unwrap(), r(71, 315));
        }
        assert!(is_valid_mean_target(&r(1, 10)));
        assert!(!is_valid_mean_target(&r(47, 180)));
    }
}
