//! Limits of `mean(n)/n` and `median(n)/n` for three-generated semigroups,
//! and the triangular model behind them.
//!
//! Along the multiples `n = k*s` of `s = delta*t*n1*n2*n3` the length
//! histogram is a discretized triangle: it rises from `(a_k, 1)` to
//! `(c_k, d_k + 1)` and falls to `(b_k, 1)`. Rescaling `[a_k, b_k]` onto
//! `[0, 1]` and normalizing to unit mass gives the triangular density with its
//! peak at the fulcrum constant `F`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::{length_multiset, LengthMultiset};
use crate::numeric::{QuadNumber, Rational};
use crate::semigroup::{Semigroup, TradeData};

fn recip(n: u64) -> Rational {
    Rational::one().checked_div(&Rational::from(n)).expect("positive generator")
}

/// `F = n1(n3 - n2) / (n2(n3 - n1))`, the image of the mode length under the
/// rescaling of `[min, max]` onto `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FulcrumConstant(Rational);

impl FulcrumConstant {
    pub fn value(&self) -> &Rational {
        &self.0
    }
}

pub fn fulcrum(s: &Semigroup) -> Result<FulcrumConstant> {
    let (n1, n2, n3) = s.triple()?;
    let num = Rational::from(n1) * Rational::from(n3 - n2);
    let den = Rational::from(n2) * Rational::from(n3 - n1);
    Ok(FulcrumConstant(num.checked_div(&den)?))
}

/// `(1/3)(1/n1 + 1/n2 + 1/n3)`.
pub fn asymptotic_mean(s: &Semigroup) -> Result<Rational> {
    let (n1, n2, n3) = s.triple()?;
    Ok((recip(n1) + recip(n2) + recip(n3)) * Rational::frac(1, 3))
}

/// Limit of `median(n)/n` as an element of `Q(sqrt m)`.
///
/// Uses the radicand `(1 - F)/2` when `F <= 1/2` and `F/2` otherwise; both
/// branches give `1/n2` at `F = 1/2`.
pub fn asymptotic_median(s: &Semigroup) -> Result<QuadNumber> {
    let (n1, _, n3) = s.triple()?;
    let f = fulcrum(s)?.0;
    let half = Rational::frac(1, 2);
    let (inv1, inv3) = (recip(n1), recip(n3));
    if f <= half {
        // (1/n1)(1 - r) + (1/n3) r = 1/n1 + r (1/n3 - 1/n1)
        let r = QuadNumber::sqrt(&((Rational::one() - &f) * &half))?;
        Ok(r.scale(&(&inv3 - &inv1)).add_rational(&inv1))
    } else {
        // (1/n1) r + (1/n3)(1 - r) = 1/n3 + r (1/n1 - 1/n3)
        let r = QuadNumber::sqrt(&(&f * &half))?;
        Ok(r.scale(&(&inv1 - &inv3)).add_rational(&inv3))
    }
}

/// Endpoints of the interval that always contains the median constant: the
/// values at `F = 0` and `F = 1`.
pub fn median_bounds(s: &Semigroup) -> Result<(QuadNumber, QuadNumber)> {
    let (n1, _, n3) = s.triple()?;
    let (inv1, inv3) = (recip(n1), recip(n3));
    let half_root2 = QuadNumber::sqrt(&Rational::frac(1, 2))?;
    // ((2 - sqrt2)/2)/n1 + (sqrt2/2)/n3 and (sqrt2/2)/n1 + ((2 - sqrt2)/2)/n3
    let lower = half_root2.scale(&(&inv3 - &inv1)).add_rational(&inv1);
    let upper = half_root2.scale(&(&inv1 - &inv3)).add_rational(&inv3);
    Ok((lower, upper))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymptoticConstants {
    #[serde(rename = "F")]
    pub fulcrum: Rational,
    #[serde(rename = "mean_constant")]
    pub mean_c: Rational,
    #[serde(rename = "median_constant")]
    pub median_c: QuadNumber,
    #[serde(rename = "median_is_rational")]
    pub is_median_rational: bool,
    pub harmonic_case: bool,
}

pub fn asymptotic_constants(s: &Semigroup) -> Result<AsymptoticConstants> {
    let fulcrum = fulcrum(s)?.0;
    let median_c = asymptotic_median(s)?;
    Ok(AsymptoticConstants {
        harmonic_case: fulcrum == Rational::frac(1, 2),
        is_median_rational: median_c.is_rational(),
        mean_c: asymptotic_mean(s)?,
        median_c,
        fulcrum,
    })
}

/// Extremes, mode length and trade count at `n = k*s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaledSequence {
    pub gens: (u64, u64, u64),
    pub trade: TradeData,
    pub k: u64,
    /// `s = delta * t * n1 * n2 * n3`
    pub s: u64,
    /// minimum length `k*s/n3`
    pub a_k: u64,
    /// maximum length `k*s/n1`
    pub b_k: u64,
    /// mode length `k*s/n2`
    pub c_k: u64,
    /// trades available from `(0, c_k, 0)`, `k*s/t`
    pub d_k: u64,
}

pub fn scaled_sequence(sg: &Semigroup, k: u64) -> Result<ScaledSequence> {
    let (n1, n2, n3) = sg.triple()?;
    if k == 0 {
        return Err(Error::ZeroScale);
    }
    let trade = sg.trade_data()?;
    let mul = |xs: &[u64]| {
        xs.iter()
            .try_fold(1u64, |acc, &x| acc.checked_mul(x))
            .ok_or(Error::Overflow("scaled sequence"))
    };
    let (d, t) = (trade.delta, trade.t);
    Ok(ScaledSequence {
        gens: (n1, n2, n3),
        trade,
        k,
        s: mul(&[d, t, n1, n2, n3])?,
        a_k: mul(&[k, d, t, n1, n2])?,
        b_k: mul(&[k, d, t, n2, n3])?,
        c_k: mul(&[k, d, t, n1, n3])?,
        d_k: mul(&[k, d, n1, n2, n3])?,
    })
}

impl ScaledSequence {
    /// The element `k*s`.
    pub fn element(&self) -> u64 {
        self.k * self.s
    }

    fn rising_slope(&self) -> Rational {
        let (_, n2, n3) = self.gens;
        Rational::new(n2 * n3, self.trade.t * (n3 - n2)).expect("t > 0")
    }

    fn falling_slope(&self) -> Rational {
        let (n1, n2, _) = self.gens;
        Rational::new(n1 * n2, self.trade.t * (n2 - n1)).expect("t > 0")
    }

    /// Piecewise-linear envelope through `(a_k, 1)`, `(c_k, d_k + 1)` and
    /// `(b_k, 1)`, at any rational point of `[a_k, b_k]`.
    pub fn envelope(&self, x: &Rational) -> Rational {
        if *x <= Rational::from(self.c_k) {
            self.rising_slope() * (x - Rational::from(self.a_k)) + Rational::one()
        } else {
            self.falling_slope() * (Rational::from(self.b_k) - x) + Rational::one()
        }
    }

    /// The envelope at an integer length.
    pub fn upper_bound(&self, x: u64) -> Result<Rational> {
        if x < self.a_k || x > self.b_k {
            return Err(Error::OutOfRange {
                x,
                lo: self.a_k,
                hi: self.b_k,
            });
        }
        Ok(self.envelope(&Rational::from(x)))
    }

    /// `T_k(x) = (x - a_k) / (b_k - a_k)`.
    pub fn rescale(&self, x: &Rational) -> Rational {
        (x - Rational::from(self.a_k))
            .checked_div(&Rational::from(self.b_k - self.a_k))
            .expect("b_k > a_k")
    }

    /// Lengths `a_k, a_k + delta, ..., b_k`.
    pub fn grid(&self) -> impl Iterator<Item = u64> {
        (self.a_k..=self.b_k).step_by(self.trade.delta as usize)
    }

    /// Lengths whose multiplicity exceeds the envelope; empty when the upper
    /// bound holds.
    pub fn envelope_violations(&self, ms: &LengthMultiset) -> Vec<u64> {
        ms.iter()
            .filter(|&(l, m)| {
                l < self.a_k || l > self.b_k || Rational::from(m) > self.envelope(&Rational::from(l))
            })
            .map(|(l, _)| l)
            .collect()
    }

    /// Supremum of `envelope - step function` over `[a_k, b_k]`.
    ///
    /// Left of `c_k` each length `l` owns the step `[l, l + delta)`, right of it
    /// the step `(l - delta, l]`; the envelope is monotone on each side, so the
    /// supremum over a step sits at its open end. `c_k` itself is valued at its
    /// multiplicity, where the envelope meets it exactly.
    pub fn envelope_gap(&self, ms: &LengthMultiset) -> Rational {
        let delta = self.trade.delta;
        self.grid()
            .map(|l| {
                let f = Rational::from(ms.multiplicity(l));
                let far = match l.cmp(&self.c_k) {
                    std::cmp::Ordering::Less => l + delta,
                    std::cmp::Ordering::Greater => l - delta,
                    std::cmp::Ordering::Equal => l,
                };
                self.envelope(&Rational::from(far)) - f
            })
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Triangular density on `[0, 1]` with peak `(F, 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularModel {
    #[serde(rename = "F")]
    pub f: Rational,
    pub mean: Rational,
    pub median: QuadNumber,
}

pub fn triangular_model(f: &Rational) -> Result<TriangularModel> {
    if f.is_negative() || *f > Rational::one() {
        return Err(Error::FulcrumOutOfRange(f.to_string()));
    }
    let half = Rational::frac(1, 2);
    let median = if *f <= half {
        QuadNumber::sqrt(&((Rational::one() - f) * &half))?
            .neg()
            .add_rational(&Rational::one())
    } else {
        QuadNumber::sqrt(&(f * &half))?
    };
    Ok(TriangularModel {
        f: f.clone(),
        mean: (Rational::one() + f) * Rational::frac(1, 3),
        median,
    })
}

impl TriangularModel {
    pub fn density(&self, x: &Rational) -> Rational {
        let two = Rational::integer(2);
        if x.is_negative() || *x > Rational::one() {
            return Rational::zero();
        }
        if *x == self.f {
            return two;
        }
        if *x < self.f {
            (two * x).checked_div(&self.f).expect("x < F implies F > 0")
        } else {
            (two * (Rational::one() - x))
                .checked_div(&(Rational::one() - &self.f))
                .expect("x > F implies F < 1")
        }
    }

    /// Cumulative distribution, exact.
    pub fn cdf(&self, x: &Rational) -> Rational {
        if !x.is_positive() {
            return Rational::zero();
        }
        if *x >= Rational::one() {
            return Rational::one();
        }
        if *x <= self.f {
            (x * x).checked_div(&self.f).expect("0 < x <= F")
        } else {
            let rest = Rational::one() - x;
            Rational::one() - (&rest * &rest).checked_div(&(Rational::one() - &self.f)).expect("F < x < 1")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedPoint {
    pub x: Rational,
    pub density: Rational,
}

/// Length histogram of `k*s` rescaled onto `[0, 1]` with unit mass.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedHistogram {
    pub seq: ScaledSequence,
    /// One point per grid length `a_k + j*delta`, zero multiplicities included.
    pub points: Vec<NormalizedPoint>,
    /// Grid spacing after rescaling, `delta / (b_k - a_k)`.
    pub step: Rational,
    /// Rescaled position of the mode length `c_k`.
    pub mode_x: Rational,
}

pub fn normalized_histogram(sg: &Semigroup, k: u64) -> Result<NormalizedHistogram> {
    let seq = scaled_sequence(sg, k)?;
    let ms = length_multiset(sg, seq.element())?;
    Ok(NormalizedHistogram::build(seq, &ms))
}

impl NormalizedHistogram {
    pub fn build(seq: ScaledSequence, ms: &LengthMultiset) -> Self {
        let width = Rational::from(seq.b_k - seq.a_k);
        let delta = Rational::from(seq.trade.delta);
        // multiplicity / (delta |Z| / width)
        let scale = width
            .checked_div(&(&delta * Rational::from(ms.total())))
            .expect("nonempty multiset");
        let points = seq
            .grid()
            .map(|l| NormalizedPoint {
                x: seq.rescale(&Rational::from(l)),
                density: Rational::from(ms.multiplicity(l)) * &scale,
            })
            .collect();
        NormalizedHistogram {
            step: delta.checked_div(&width).expect("b_k > a_k"),
            mode_x: seq.rescale(&Rational::from(seq.c_k)),
            points,
            seq,
        }
    }

    /// Riemann sum of the densities with the grid spacing.
    pub fn mass(&self) -> Rational {
        self.points.iter().map(|p| &p.density).sum::<Rational>() * &self.step
    }

    /// Rescaled lengths where the density is largest.
    pub fn peak_x(&self) -> Vec<Rational> {
        let top = self.points.iter().map(|p| &p.density).max();
        self.points
            .iter()
            .filter(|p| Some(&p.density) == top)
            .map(|p| p.x.clone())
            .collect()
    }

    /// Where each step's value is compared with the model: the midpoint of
    /// the step owned by the length (`[l, l + delta)` left of the mode,
    /// `(l - delta, l]` right of it), and the mode itself.
    pub fn step_midpoints(&self) -> Vec<(Rational, &NormalizedPoint)> {
        let half_step = &self.step * Rational::frac(1, 2);
        self.points
            .iter()
            .map(|p| {
                let mid = match p.x.cmp(&self.mode_x) {
                    std::cmp::Ordering::Less => &p.x + &half_step,
                    std::cmp::Ordering::Greater => &p.x - &half_step,
                    std::cmp::Ordering::Equal => p.x.clone(),
                };
                (mid, p)
            })
            .collect()
    }

    /// Largest `|density - L(x)|` over the step midpoints.
    pub fn sup_deviation(&self, model: &TriangularModel) -> Rational {
        self.step_midpoints()
            .into_iter()
            .map(|(mid, p)| (&p.density - model.density(&mid)).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use std::cmp::Ordering;

    fn sg(g: &[u64]) -> Semigroup {
        Semigroup::new(g).unwrap()
    }

    fn r(p: i64, q: i64) -> Rational {
        Rational::frac(p, q)
    }

    #[test]
    fn fulcrum_examples() {
        assert_eq!(fulcrum(&sg(&[3, 5, 7])).unwrap().value(), &r(3, 10));
        assert_eq!(fulcrum(&sg(&[3, 4, 6])).unwrap().value(), &r(1, 2));
        assert_eq!(fulcrum(&sg(&[6, 9, 20])).unwrap().value(), &r(11, 21));
        assert_eq!(
            fulcrum(&sg(&[4, 5, 6, 7])),
            Err(Error::NotThreeGenerated(4))
        );
    }

    #[test]
    fn mean_constant_examples() {
        assert_eq!(asymptotic_mean(&sg(&[3, 4, 5])).unwrap(), r(47, 180));
        assert_eq!(asymptotic_mean(&sg(&[3, 4, 6])).unwrap(), r(1, 4));
        assert_eq!(asymptotic_mean(&sg(&[3, 5, 7])).unwrap(), r(71, 315));
    }

    #[test]
    fn median_constant_examples() {
        let m = asymptotic_median(&sg(&[7, 16, 25])).unwrap();
        assert_eq!(m.as_rational(), Some(&r(11, 140)));
        let m = asymptotic_median(&sg(&[3, 4, 6])).unwrap();
        assert_eq!(m.as_rational(), Some(&r(1, 4)));
        let m = asymptotic_median(&sg(&[48, 49, 50])).unwrap();
        assert_eq!(m.a(), &r(1, 48));
        assert_eq!(m.b(), &r(-1, 3360));
        assert_eq!(m.m(), &BigUint::from(2u32));
        let m = asymptotic_median(&sg(&[3, 5, 7])).unwrap();
        assert!((m.to_f64() - 0.220_646_099_369_531).abs() < 1e-12);
        assert_eq!(m, QuadNumber::new(r(1, 3), r(-2, 105), 35u32).unwrap());
    }

    #[test]
    fn harmonic_case_flags() {
        let c = asymptotic_constants(&sg(&[3, 4, 6])).unwrap();
        assert!(c.harmonic_case);
        assert!(c.is_median_rational);
        assert_eq!(c.mean_c, r(1, 4));
        assert_eq!(c.median_c, QuadNumber::rational(r(1, 4)));
        let c = asymptotic_constants(&sg(&[3, 5, 7])).unwrap();
        assert!(!c.harmonic_case);
        assert!(!c.is_median_rational);
    }

    #[test]
    fn median_branches_meet_at_one_half() {
        let half = r(1, 2);
        let low = QuadNumber::sqrt(&((Rational::one() - &half) * &half)).unwrap();
        let high = QuadNumber::sqrt(&(&half * &half)).unwrap();
        assert_eq!(low, high);
        assert_eq!(low.as_rational(), Some(&half));
    }

    #[test]
    fn median_within_convexity_bounds() {
        for g in [[3, 5, 7], [6, 9, 20], [7, 16, 25], [48, 49, 50], [3, 4, 6], [12, 15, 20], [2, 9, 100]] {
            let s = sg(&g);
            let m = asymptotic_median(&s).unwrap();
            let (lo, hi) = median_bounds(&s).unwrap();
            assert_ne!(m.cmp_exact(&lo), Ordering::Less, "{s}");
            assert_ne!(m.cmp_exact(&hi), Ordering::Greater, "{s}");
        }
    }

    #[test]
    fn constants_agree_with_rescaled_triangle() {
        for g in [[3, 5, 7], [6, 9, 20], [7, 16, 25], [48, 49, 50], [12, 15, 20]] {
            let s = sg(&g);
            let (n1, _, n3) = s.triple().unwrap();
            let f = fulcrum(&s).unwrap();
            let model = triangular_model(f.value()).unwrap();
            let span = recip(n1) - recip(n3);
            assert_eq!(
                asymptotic_mean(&s).unwrap(),
                recip(n3) + &model.mean * &span
            );
            assert_eq!(
                asymptotic_median(&s).unwrap(),
                model.median.scale(&span).add_rational(&recip(n3))
            );
        }
    }

    #[test]
    fn scaled_sequence_examples() {
        let q = scaled_sequence(&sg(&[3, 5, 7]), 1).unwrap();
        assert_eq!((q.s, q.a_k, q.b_k, q.c_k, q.d_k), (2100, 300, 700, 420, 210));
        let q = scaled_sequence(&sg(&[6, 9, 20]), 1).unwrap();
        assert_eq!((q.s, q.a_k, q.b_k, q.c_k, q.d_k), (136_080, 6804, 22_680, 15_120, 1080));
        assert_eq!(scaled_sequence(&sg(&[3, 5, 7]), 0), Err(Error::ZeroScale));
    }

    #[test]
    fn envelope_corners() {
        let q = scaled_sequence(&sg(&[3, 5, 7]), 2).unwrap();
        assert_eq!(q.upper_bound(q.a_k).unwrap(), Rational::one());
        assert_eq!(q.upper_bound(q.c_k).unwrap(), Rational::from(q.d_k + 1));
        assert_eq!(q.upper_bound(q.b_k).unwrap(), Rational::one());
        assert!(matches!(q.upper_bound(q.a_k - 1), Err(Error::OutOfRange { .. })));
        assert!(matches!(q.upper_bound(q.b_k + 1), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn triangular_examples() {
        let t = triangular_model(&r(1, 2)).unwrap();
        assert_eq!(t.mean, r(1, 2));
        assert_eq!(t.median, QuadNumber::rational(r(1, 2)));
        let t = triangular_model(&r(3, 10)).unwrap();
        assert_eq!(t.mean, r(13, 30));
        let expected = QuadNumber::sqrt(&r(7, 20)).unwrap().neg().add_rational(&Rational::one());
        assert_eq!(t.median, expected);
        let t = triangular_model(&Rational::zero()).unwrap();
        let expected = QuadNumber::sqrt(&r(1, 2)).unwrap().neg().add_rational(&Rational::one());
        assert_eq!(t.median, expected);
        assert!(triangular_model(&r(3, 2)).is_err());
        assert!(triangular_model(&r(-1, 2)).is_err());
    }

    #[test]
    fn triangular_density_shape() {
        let t = triangular_model(&r(3, 10)).unwrap();
        assert_eq!(t.density(&r(3, 10)), Rational::integer(2));
        assert_eq!(t.density(&Rational::zero()), Rational::zero());
        assert_eq!(t.density(&Rational::one()), Rational::zero());
        assert_eq!(t.cdf(&r(3, 10)), r(3, 10));
        assert_eq!(t.cdf(&Rational::one()), Rational::one());
        // median solves cdf = 1/2; check via its square: (1 - x)^2 = (1 - F)/2
        let one_minus = QuadNumber::sqrt(&r(7, 20)).unwrap();
        assert_eq!(
            one_minus.checked_mul(&one_minus).unwrap().as_rational(),
            Some(&((Rational::one() - r(3, 10)) * r(1, 2)))
        );
        let t = triangular_model(&Rational::zero()).unwrap();
        assert_eq!(t.density(&Rational::zero()), Rational::integer(2));
    }

    #[test]
    fn normalized_histogram_properties() {
        let s = sg(&[3, 5, 7]);
        let h1 = normalized_histogram(&s, 1).unwrap();
        assert_eq!(h1.mass(), Rational::one());
        assert_eq!(&h1.mode_x, fulcrum(&s).unwrap().value());
        assert_eq!(h1.peak_x(), vec![h1.mode_x.clone()]);
        let model = triangular_model(fulcrum(&s).unwrap().value()).unwrap();
        let h2 = normalized_histogram(&s, 2).unwrap();
        assert!(h2.sup_deviation(&model) < h1.sup_deviation(&model));
    }
}
