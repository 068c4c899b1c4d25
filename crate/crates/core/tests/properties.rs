use num_bigint::BigUint;
use proptest::prelude::*;

use factorlen::asymptotics::{asymptotic_mean, asymptotic_median, fulcrum, median_bounds};
use factorlen::constructions::{
    mean_constant_inverse, primitive_triples, pythagorean_semigroup, sqrt_d_semigroup,
    unit_fraction_decompositions, SqrtDOutcome,
};
use factorlen::factorization::{closed_length_multiset, enumerate_length_multiset};
use factorlen::numeric::arith::{gcd_all, is_squarefree};
use factorlen::{factorizations, length_multiset, QuadNumber, Rational, Semigroup};

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..1000).prop_map(|(p, q)| Rational::frac(p, q))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..5000, 1i64..5000).prop_map(|(p, q)| Rational::frac(p, q))
}

/// Sorted distinct triples with gcd 1 and smallest generator at least 2.
fn triple(max: u64) -> impl Strategy<Value = Semigroup> {
    (2..max, 1..max, 1..max)
        .prop_filter_map("gcd 1", |(a, d1, d2)| {
            let (b, c) = (a + d1, a + d1 + d2);
            (gcd_all(&[a, b, c]) == 1).then(|| Semigroup::new(&[a, b, c]).unwrap())
        })
}

proptest! {
    #[test]
    fn field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a - &a, Rational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * a.recip().unwrap(), Rational::one());
        }
        let back: Rational = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn floor_ceil_bracket(a in rational()) {
        let (f, c) = (Rational::from(a.floor()), Rational::from(a.ceil()));
        prop_assert!(f <= a && a <= c);
        prop_assert!(&c - &f <= Rational::one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sqrt_squares_back(r in positive_rational()) {
        let q = QuadNumber::sqrt(&r).unwrap();
        let sq = q.checked_mul(&q).unwrap();
        prop_assert_eq!(sq.as_rational(), Some(&r));
        prop_assert!(q.signum() > 0);
        let m = q.m().clone();
        prop_assert!(m == BigUint::from(1u32) || is_squarefree(m.try_into().unwrap()));
    }
}

/// Smallest `y` admitting `(x, 0, z | 0, y, 0)` of equal value and length.
fn minimal_trade(n1: u64, n2: u64, n3: u64) -> (u64, u64, u64) {
    for y in 1.. {
        for z in 0..=y {
            let x = y - z;
            if x * n1 + z * n3 == y * n2 {
                return (x, y, z);
            }
        }
    }
    unreachable!()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn trade_data_identities(s in triple(60)) {
        let (n1, n2, n3) = s.triple().unwrap();
        let td = s.trade_data().unwrap();
        prop_assert_eq!(td.delta * td.t, n2 * (n3 - n1));
        prop_assert_eq!(td.a * n1 + td.c * n3, td.t);
        prop_assert_eq!(td.b * n2, td.t);
        prop_assert_eq!(td.a + td.c, td.b);
        prop_assert_eq!(minimal_trade(n1, n2, n3), (td.a, td.b, td.c));
    }

    #[test]
    fn closed_count_matches_enumeration(s in triple(25), n in 0u64..400) {
        let closed = closed_length_multiset(&s, n).unwrap();
        let enumerated = enumerate_length_multiset(&s, n);
        prop_assert_eq!(&closed, &enumerated);
        prop_assert_eq!(s.contains(n), !closed.is_empty());
        prop_assert_eq!(factorizations(&s, n).unwrap().len() as u64, closed.total());
    }

    #[test]
    fn lengths_congruent_mod_delta(s in triple(30), n in 0u64..600) {
        let Ok(ms) = length_multiset(&s, n) else { return Ok(()); };
        let delta = s.trade_data().unwrap().delta;
        let min = ms.min().unwrap();
        prop_assert!(ms.support().all(|l| (l - min) % delta == 0));
    }

    #[test]
    fn constants_between_extremes(s in triple(80)) {
        let (n1, _, n3) = s.triple().unwrap();
        let lo = QuadNumber::rational(Rational::new(1u64, n3).unwrap());
        let hi = QuadNumber::rational(Rational::new(1u64, n1).unwrap());
        let med = asymptotic_median(&s).unwrap();
        prop_assert!(med.cmp_exact(&lo).is_ge() && med.cmp_exact(&hi).is_le());
        let mean = QuadNumber::rational(asymptotic_mean(&s).unwrap());
        prop_assert!(mean.cmp_exact(&lo).is_ge() && mean.cmp_exact(&hi).is_le());
        let (b_lo, b_hi) = median_bounds(&s).unwrap();
        prop_assert!(b_lo.cmp_exact(&med).is_le() && med.cmp_exact(&b_hi).is_le());
    }

    /// `(1 - F)/2` rescaled by `((n3 - n1)/n3)^2` is `(n2 - n1)(n3 - n1)/(2 n2 n3)`.
    #[test]
    fn radicand_forms_agree(s in triple(200)) {
        let (n1, n2, n3) = s.triple().unwrap();
        let f = fulcrum(&s).unwrap().value().clone();
        let scale = Rational::new((n3 - n1) * (n3 - n1), n3 * n3).unwrap();
        let lhs = (Rational::one() - f) * Rational::frac(1, 2) * scale;
        let rhs = Rational::new((n2 - n1) * (n3 - n1), 2 * n2 * n3).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mean_inverse_recovers(s in triple(40)) {
        let (n1, _, _) = s.triple().unwrap();
        prop_assume!(n1 >= 3);
        let target = asymptotic_mean(&s).unwrap();
        prop_assume!(target < Rational::frac(47, 180));
        let found = mean_constant_inverse(&target).unwrap();
        prop_assert!(found.contains(&s));
        for g in &found {
            prop_assert_eq!(asymptotic_mean(g).unwrap(), target.clone());
        }
    }

    #[test]
    fn unit_fractions_sum(p in 1i64..12, q in 2i64..30) {
        prop_assume!(p < q);
        let target = Rational::frac(p, q);
        for sol in unit_fraction_decompositions(&target, 3, true).unwrap() {
            prop_assert_eq!(sol.sum(), target.clone());
            prop_assert!(sol.denominators.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn sqrt_d_family(d in 2u64..40, t in 1u64..200) {
        prop_assume!(is_squarefree(d));
        let SqrtDOutcome::Accepted { semigroup, p, ell, .. } = sqrt_d_semigroup(d, t).unwrap() else {
            return Ok(());
        };
        let (n1, n2, n3) = semigroup.triple().unwrap();
        prop_assert_eq!(n2 - n1, ell);
        prop_assert_eq!(n3 - n2, ell);
        prop_assert!(ell % p != 0 && ell < 2 * p + 1);
        prop_assert!(*fulcrum(&semigroup).unwrap().value() < Rational::frac(1, 2));

        let ratio = Rational::new(ell, p * t * d).unwrap();
        let proof_form = QuadNumber::sqrt(&Rational::new((n2 - n1) * (n3 - n1), 2 * n2 * n3).unwrap()).unwrap();
        prop_assert_eq!(proof_form.b(), &ratio);
        prop_assert_eq!(proof_form.m(), &BigUint::from(d));
        let half_form = QuadNumber::sqrt(&((Rational::one() - fulcrum(&semigroup).unwrap().value().clone()) * Rational::frac(1, 2))).unwrap();
        prop_assert_eq!(half_form.b() * &Rational::from(2 * p), Rational::from(t));

        let med = asymptotic_median(&semigroup).unwrap();
        prop_assert!(!med.is_rational());
        prop_assert_eq!(med.m(), &BigUint::from(d));
        prop_assert_eq!(med.b().clone(), -(ratio * Rational::new(1u64, n1).unwrap()));
    }
}

#[test]
fn pythagorean_medians_are_rational() {
    for (a, b, c) in primitive_triples(2000) {
        let Ok(s) = pythagorean_semigroup(a, b, c) else { continue };
        assert!(*fulcrum(&s).unwrap().value() < Rational::frac(1, 2), "{s}");
        assert!(asymptotic_median(&s).unwrap().is_rational(), "{s}");
    }
}
