//! Numerical checks of the length-distribution statements: convergence of the
//! normalized mean and median, the mode recurrence, the shape of length sets,
//! periodicity of the median, the envelope bounds, and histograms for four or
//! more generators.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{asymptotic_mean, asymptotic_median, scaled_sequence};
use crate::error::{Error, Result};
use crate::factorization::{length_multiset, LengthMultiset};
use crate::invariants::{mean_length, median_length, mode};
use crate::numeric::arith::gcd_all;
use crate::numeric::{QuadNumber, Rational};
use crate::semigroup::Semigroup;

fn ratio(x: &Rational, n: u64) -> Rational {
    x.checked_div(&Rational::from(n)).expect("n > 0")
}

// ---------------------------------------------------------------------------
// Convergence

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: u64,
    pub mean_ratio: Rational,
    pub median_ratio: Rational,
    pub mean_err: f64,
    pub median_err: f64,
    pub mean_err_exact: Rational,
    pub median_err_exact: QuadNumber,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceSweep {
    pub semigroup: Semigroup,
    pub mean_constant: Rational,
    pub median_constant: QuadNumber,
    pub rows: Vec<ConvergenceRow>,
    /// Requested points that are zero or not in the semigroup.
    pub skipped: Vec<u64>,
}

impl ConvergenceSweep {
    pub fn mean_errors_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].mean_err_exact < w[0].mean_err_exact)
    }

    pub fn median_errors_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| {
            w[1].median_err_exact.cmp_exact(&w[0].median_err_exact) == std::cmp::Ordering::Less
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,mean_ratio,median_ratio,mean_err,median_err\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{:e},{:e}\n",
                r.n, r.mean_ratio, r.median_ratio, r.mean_err, r.median_err
            ));
        }
        out
    }
}

fn abs_quad(q: QuadNumber) -> QuadNumber {
    if q.signum() < 0 {
        q.neg()
    } else {
        q
    }
}

fn convergence_row(s: &Semigroup, n: u64, mean_c: &Rational, median_c: &QuadNumber) -> Result<ConvergenceRow> {
    let ms = length_multiset(s, n)?;
    let mean_ratio = ratio(&mean_length(&ms)?, n);
    let median_ratio = ratio(&median_length(&ms)?, n);
    let mean_err_exact = (&mean_ratio - mean_c).abs();
    let median_err_exact = abs_quad(median_c.neg().add_rational(&median_ratio));
    Ok(ConvergenceRow {
        n,
        mean_err: mean_err_exact.to_f64(),
        median_err: median_err_exact.to_f64(),
        mean_ratio,
        median_ratio,
        mean_err_exact,
        median_err_exact,
    })
}

/// Ratios `mean(n)/n` and `median(n)/n` against their limits at each point,
/// computed in parallel and reported in input order.
pub fn convergence_sweep(s: &Semigroup, points: &[u64]) -> Result<ConvergenceSweep> {
    let mean_c = asymptotic_mean(s)?;
    let median_c = asymptotic_median(s)?;
    let results: Vec<(u64, Option<ConvergenceRow>)> = points
        .par_iter()
        .map(|&n| {
            let row = if n == 0 {
                None
            } else {
                convergence_row(s, n, &mean_c, &median_c).ok()
            };
            (n, row)
        })
        .collect();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for (n, row) in results {
        match row {
            Some(r) => rows.push(r),
            None => skipped.push(n),
        }
    }
    Ok(ConvergenceSweep {
        semigroup: s.clone(),
        mean_constant: mean_c,
        median_constant: median_c,
        rows,
        skipped,
    })
}

/// Element of `s` closest to `target`; the smaller one on ties.
pub fn nearest_element(s: &Semigroup, target: u64) -> u64 {
    let table = s.membership_table(target + s.smallest());
    (0..=target)
        .find_map(|d| {
            if table[(target - d) as usize] {
                Some(target - d)
            } else if table[(target + d) as usize] {
                Some(target + d)
            } else {
                None
            }
        })
        .expect("0 is an element")
}

/// `10^2, 10^3, 10^4, 10^5`, each snapped to the nearest element.
pub fn default_grid(s: &Semigroup) -> Vec<u64> {
    [100, 1_000, 10_000, 100_000]
        .into_iter()
        .map(|n| nearest_element(s, n))
        .collect()
}

/// Limits along `n = k*s` against limits along `n = k*s + offset`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsequenceReport {
    pub scaled: ConvergenceSweep,
    pub shifted: ConvergenceSweep,
    pub offset: u64,
    /// `|ratio_scaled - ratio_shifted|` at the first and last sample.
    pub mean_gaps: (f64, f64),
    pub median_gaps: (f64, f64),
    /// Final gaps below the larger final distance to the limit.
    pub within_larger_error: bool,
    /// Both gaps shrink from the first to the last sample.
    pub consistent: bool,
}

pub fn subsequence_consistency(s: &Semigroup, k_max: u64, offset: u64) -> Result<SubsequenceReport> {
    if k_max < 2 {
        return Err(Error::OutOfRange { x: k_max, lo: 2, hi: u64::MAX });
    }
    let base = scaled_sequence(s, 1)?.s;
    let scaled_pts: Vec<u64> = (1..=k_max).map(|k| k * base).collect();
    let shifted_pts: Vec<u64> = scaled_pts.iter().map(|n| n + offset).collect();
    let scaled = convergence_sweep(s, &scaled_pts)?;
    let shifted = convergence_sweep(s, &shifted_pts)?;
    if !shifted.skipped.is_empty() {
        return Err(Error::NotInSemigroup(offset));
    }
    let gaps = |i: usize| {
        let (a, b) = (&scaled.rows[i], &shifted.rows[i]);
        (
            (&a.mean_ratio - &b.mean_ratio).abs().to_f64(),
            (&a.median_ratio - &b.median_ratio).abs().to_f64(),
        )
    };
    let last = scaled.rows.len() - 1;
    let (first, fin) = (gaps(0), gaps(last));
    let (a, b) = (&scaled.rows[last], &shifted.rows[last]);
    let within_larger_error = fin.0 <= a.mean_err.max(b.mean_err) && fin.1 <= a.median_err.max(b.median_err);
    Ok(SubsequenceReport {
        mean_gaps: (first.0, fin.0),
        median_gaps: (first.1, fin.1),
        within_larger_error,
        consistent: fin.0 < first.0 && fin.1 < first.1,
        scaled,
        shifted,
        offset,
    })
}

// ---------------------------------------------------------------------------
// Mode recurrence

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeFailure {
    pub n: u64,
    pub freq: u64,
    pub freq_shifted: u64,
    pub lengths: Vec<u64>,
    pub lengths_shifted: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub residue: u64,
    /// `mode_freq(n) - n/t` for the elements `n` in this class.
    pub values: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeReport {
    pub semigroup: Semigroup,
    pub n_max: u64,
    pub t: u64,
    pub shift: u64,
    pub checked: u64,
    pub failures: Vec<ModeFailure>,
    pub residuals: Vec<ResidualEntry>,
    pub residuals_periodic: bool,
}

impl ModeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.residuals_periodic
    }
}

/// Checks `freq(n + t) = freq(n) + 1` and `lengths(n + t) = lengths(n) + t/n2`
/// for every element `n <= n_max`, and tabulates `freq(n) - n/t` by residue
/// mod `t`.
pub fn verify_mode_theorem(s: &Semigroup, n_max: u64) -> Result<ModeReport> {
    let (_, n2, _) = s.triple()?;
    let t = s.trade_data()?.t;
    let shift = t / n2;
    let table = s.membership_table(n_max);
    let modes: Vec<Option<(Vec<u64>, u64)>> = (0..=n_max + t)
        .into_par_iter()
        .map(|n| {
            if n <= n_max && !table[n as usize] {
                return None;
            }
            length_multiset(s, n).ok().map(|ms| mode(&ms).expect("nonempty"))
        })
        .collect();
    let mut failures = Vec::new();
    let mut classes: BTreeMap<u64, Vec<Rational>> = BTreeMap::new();
    let mut checked = 0;
    for n in 0..=n_max {
        let Some((lengths, freq)) = &modes[n as usize] else {
            continue;
        };
        checked += 1;
        let c0 = Rational::from(*freq) - Rational::new(n, t)?;
        let values = classes.entry(n % t).or_default();
        if !values.contains(&c0) {
            values.push(c0);
        }
        let (lengths_shifted, freq_shifted) = modes[(n + t) as usize].clone().expect("n + t is an element");
        let expected: Vec<u64> = lengths.iter().map(|l| l + shift).collect();
        if freq_shifted != freq + 1 || lengths_shifted != expected {
            failures.push(ModeFailure {
                n,
                freq: *freq,
                freq_shifted,
                lengths: lengths.clone(),
                lengths_shifted,
            });
        }
    }
    let residuals: Vec<ResidualEntry> = classes
        .into_iter()
        .map(|(residue, values)| ResidualEntry { residue, values })
        .collect();
    let residuals_periodic = residuals.iter().all(|e| e.values.len() == 1);
    Ok(ModeReport {
        semigroup: s.clone(),
        n_max,
        t,
        shift,
        checked,
        failures,
        residuals,
        residuals_periodic,
    })
}

// ---------------------------------------------------------------------------
// Length-set shape

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapProfile {
    pub n: u64,
    pub min: u64,
    pub max: u64,
    /// Missing progression terms in the lower half.
    pub low_missing: Vec<u64>,
    /// Missing progression terms in the upper half.
    pub high_missing: Vec<u64>,
    /// Number of leading progression terms up to the last low gap.
    pub low_extent: u64,
    /// Number of trailing progression terms down to the first high gap.
    pub high_extent: u64,
    /// Lengths off the progression `min + delta*Z`.
    pub off_progression: Vec<u64>,
}

fn gap_profile(n: u64, ms: &LengthMultiset, delta: u64) -> GapProfile {
    let (min, max) = (ms.min().unwrap_or(0), ms.max().unwrap_or(0));
    let terms = (max - min) / delta + 1;
    let off_progression: Vec<u64> = ms.support().filter(|l| (l - min) % delta != 0).collect();
    let mut low_missing = Vec::new();
    let mut high_missing = Vec::new();
    let (mut low_extent, mut high_extent) = (0, 0);
    for i in 0..terms {
        let l = min + i * delta;
        if ms.multiplicity(l) > 0 {
            continue;
        }
        if 2 * i < terms {
            low_missing.push(l);
            low_extent = i + 1;
        } else {
            high_missing.push(l);
            high_extent = high_extent.max(terms - i);
        }
    }
    GapProfile {
        n,
        min,
        max,
        low_missing,
        high_missing,
        low_extent,
        high_extent,
        off_progression,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub semigroup: Semigroup,
    pub delta: u64,
    pub window: (u64, u64),
    pub checked: u64,
    /// Elements with a length off the progression.
    pub violations: Vec<GapProfile>,
    pub max_low_extent: u64,
    pub max_high_extent: u64,
    /// Largest extents over the first and second half of the window.
    pub first_half_extents: (u64, u64),
    pub second_half_extents: (u64, u64),
    pub stable: bool,
    pub profiles: Vec<GapProfile>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.stable
    }
}

/// Length sets on `[n_lo, n_hi]` as progressions of step `delta` with gaps
/// near the ends. Extents are stable when the largest ones seen in the
/// second half of the window do not exceed those of the first half.
pub fn verify_structure_theorem(s: &Semigroup, n_lo: u64, n_hi: u64) -> Result<StructureReport> {
    s.triple()?;
    let delta = gcd_all(&s.gens().windows(2).map(|w| w[1] - w[0]).collect::<Vec<_>>());
    let table = s.membership_table(n_hi);
    let profiles: Vec<GapProfile> = (n_lo..=n_hi)
        .into_par_iter()
        .filter(|&n| table[n as usize])
        .map(|n| {
            let ms = length_multiset(s, n).expect("element");
            gap_profile(n, &ms, delta)
        })
        .collect();
    let mid = n_lo + (n_hi - n_lo) / 2;
    let extents = |it: &mut dyn Iterator<Item = &GapProfile>| {
        it.fold((0, 0), |(lo, hi), p| (lo.max(p.low_extent), hi.max(p.high_extent)))
    };
    let first = extents(&mut profiles.iter().filter(|p| p.n <= mid));
    let second = extents(&mut profiles.iter().filter(|p| p.n > mid));
    let all = (first.0.max(second.0), first.1.max(second.1));
    Ok(StructureReport {
        semigroup: s.clone(),
        delta,
        window: (n_lo, n_hi),
        checked: profiles.len() as u64,
        violations: profiles.iter().filter(|p| !p.off_progression.is_empty()).cloned().collect(),
        max_low_extent: all.0,
        max_high_extent: all.1,
        first_half_extents: first,
        second_half_extents: second,
        stable: second.0 <= first.0 && second.1 <= first.1,
        profiles,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremesReport {
    pub semigroup: Semigroup,
    pub window: (u64, u64),
    /// Elements where `min(n + n_k) != min(n) + 1`.
    pub min_failures: Vec<u64>,
    /// Elements where `max(n + n1) != max(n) + 1`.
    pub max_failures: Vec<u64>,
}

impl ExtremesReport {
    pub fn passed(&self) -> bool {
        self.min_failures.is_empty() && self.max_failures.is_empty()
    }
}

/// Shift identities behind the quasilinearity of the minimum (period `n_k`)
/// and maximum (period `n1`) length.
pub fn verify_extremes(s: &Semigroup, n_lo: u64, n_hi: u64) -> Result<ExtremesReport> {
    let (first, last) = (s.smallest(), s.largest());
    let table = s.membership_table(n_hi);
    let extremes = |n: u64| {
        length_multiset(s, n).map(|ms| (ms.min().unwrap_or(0), ms.max().unwrap_or(0)))
    };
    let rows: Vec<(u64, bool, bool)> = (n_lo..=n_hi)
        .into_par_iter()
        .filter(|&n| table[n as usize])
        .map(|n| {
            let (lo, hi) = extremes(n).expect("element");
            let (lo_shift, _) = extremes(n + last).expect("element");
            let (_, hi_shift) = extremes(n + first).expect("element");
            (n, lo_shift == lo + 1, hi_shift == hi + 1)
        })
        .collect();
    Ok(ExtremesReport {
        semigroup: s.clone(),
        window: (n_lo, n_hi),
        min_failures: rows.iter().filter(|r| !r.1).map(|r| r.0).collect(),
        max_failures: rows.iter().filter(|r| !r.2).map(|r| r.0).collect(),
    })
}

// ---------------------------------------------------------------------------
// Median periodicity

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Quasilinear,
    NotQuasilinear,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodAttempt {
    pub period: u64,
    pub window: (u64, u64),
    /// `None` when skipped for exceeding the evaluation budget.
    pub constant_diff: Option<bool>,
    /// `median(n + P) - median(n)` at the window start.
    pub first_diff: Option<Rational>,
    pub witness: Option<u64>,
    pub witness_diff: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasilinearityVerdict {
    pub semigroup: Semigroup,
    pub period_tested: u64,
    pub window: (u64, u64),
    pub verdict: Verdict,
    pub witness: Option<u64>,
    pub attempts: Vec<PeriodAttempt>,
    pub rationale: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeConfig {
    /// Periods to try in order; defaults to `t`, `n1*n2*n3`, `delta*t*n1*n2*n3`.
    pub periods: Option<Vec<u64>>,
    /// Window start; defaults to `n3^3`.
    pub start: Option<u64>,
    /// Window length as a multiple of the period.
    pub span: u64,
    /// Largest number of median evaluations spent on one period.
    pub budget: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            periods: None,
            start: None,
            span: 3,
            budget: 200_000,
        }
    }
}

fn median_of(s: &Semigroup, n: u64) -> Option<Rational> {
    length_multiset(s, n).ok().map(|ms| median_length(&ms).expect("nonempty"))
}

fn attempt(s: &Semigroup, period: u64, lo: u64, hi: u64, budget: u64) -> PeriodAttempt {
    let mut out = PeriodAttempt {
        period,
        window: (lo, hi),
        constant_diff: None,
        first_diff: None,
        witness: None,
        witness_diff: None,
    };
    let evaluations = hi - lo + 1 + period;
    if evaluations > budget {
        return out;
    }
    let medians: Vec<Option<Rational>> = (lo..=hi + period).into_par_iter().map(|n| median_of(s, n)).collect();
    let at = |n: u64| medians[(n - lo) as usize].as_ref();
    for n in lo..=hi {
        let (Some(x), Some(y)) = (at(n), at(n + period)) else {
            continue;
        };
        let diff = y - x;
        match &out.first_diff {
            None => out.first_diff = Some(diff),
            Some(d) if *d != diff => {
                out.witness = Some(n);
                out.witness_diff = Some(diff);
                out.constant_diff = Some(false);
                return out;
            }
            Some(_) => {}
        }
    }
    out.constant_diff = Some(true);
    out
}

/// Tests `median(n + P) - median(n)` for constancy over `[n_lo, n_hi]`.
pub fn probe_median_period(s: &Semigroup, period: u64, n_lo: u64, n_hi: u64, budget: u64) -> Result<QuasilinearityVerdict> {
    if period == 0 {
        return Err(Error::ZeroPeriod);
    }
    if n_hi < n_lo || n_hi - n_lo < 3 * period {
        return Err(Error::WindowTooSmall { lo: n_lo, hi: n_hi, period });
    }
    Ok(decide(s, vec![attempt(s, period, n_lo, n_hi, budget)]))
}

/// Default probe: each candidate period on a window of `span` periods starting
/// at `n3^3`, stopping at the first period with a constant difference.
pub fn probe_median_quasilinearity(s: &Semigroup, config: &ProbeConfig) -> Result<QuasilinearityVerdict> {
    let (n1, n2, n3) = s.triple()?;
    let trade = s.trade_data()?;
    let periods = match &config.periods {
        Some(p) => p.clone(),
        None => {
            let cube = n1.checked_mul(n2).and_then(|x| x.checked_mul(n3)).ok_or(Error::Overflow("period"))?;
            let scale = cube
                .checked_mul(trade.t)
                .and_then(|x| x.checked_mul(trade.delta))
                .ok_or(Error::Overflow("period"))?;
            let mut p = vec![trade.t, cube, scale];
            p.dedup();
            p
        }
    };
    if periods.contains(&0) {
        return Err(Error::ZeroPeriod);
    }
    let start = config.start.unwrap_or(n3.saturating_pow(3));
    let span = config.span.max(3);
    let mut attempts = Vec::new();
    for &p in &periods {
        let a = attempt(s, p, start, start + span * p, config.budget);
        let done = a.constant_diff == Some(true);
        attempts.push(a);
        if done {
            break;
        }
    }
    Ok(decide(s, attempts))
}

fn decide(s: &Semigroup, attempts: Vec<PeriodAttempt>) -> QuasilinearityVerdict {
    let rationale = "quasilinear: median(n + P) - median(n) constant on a window of at least 3P; \
                     not_quasilinear: a deviation found for every tested P; \
                     inconclusive: some P skipped for budget"
        .to_string();
    let pick = |a: &PeriodAttempt, verdict, witness| QuasilinearityVerdict {
        semigroup: s.clone(),
        period_tested: a.period,
        window: a.window,
        verdict,
        witness,
        attempts: attempts.clone(),
        rationale: rationale.clone(),
    };
    if let Some(a) = attempts.iter().find(|a| a.constant_diff == Some(true)) {
        return pick(a, Verdict::Quasilinear, None);
    }
    let last = attempts.last().expect("at least one period");
    if attempts.iter().all(|a| a.constant_diff == Some(false)) {
        return pick(last, Verdict::NotQuasilinear, last.witness);
    }
    let skipped = attempts.iter().find(|a| a.constant_diff.is_none()).unwrap_or(last);
    pick(skipped, Verdict::Inconclusive, None)
}

// ---------------------------------------------------------------------------
// Envelope bounds

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub k: u64,
    pub element: u64,
    pub violations: Vec<u64>,
    pub gap: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub semigroup: Semigroup,
    pub rows: Vec<BoundRow>,
    /// No row's gap exceeds the gap at `k = 1`.
    pub gap_bounded: bool,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.gap_bounded && self.rows.iter().all(|r| r.violations.is_empty())
    }
}

/// Multiplicities at `k*s` against the envelope, and the largest distance
/// from envelope down to the step function, for `k = 1..=k_max`.
pub fn envelope_bounds(s: &Semigroup, k_max: u64) -> Result<BoundReport> {
    let rows = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let seq = scaled_sequence(s, k)?;
            let ms = length_multiset(s, seq.element())?;
            Ok(BoundRow {
                k,
                element: seq.element(),
                violations: seq.envelope_violations(&ms),
                gap: seq.envelope_gap(&ms),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let gap_bounded = rows.first().is_none_or(|first| rows.iter().all(|r| r.gap <= first.gap));
    Ok(BoundReport {
        semigroup: s.clone(),
        rows,
        gap_bounded,
    })
}

// ---------------------------------------------------------------------------
// Four or more generators

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGeneratorReport {
    pub semigroup: Semigroup,
    pub n: u64,
    pub histogram: LengthMultiset,
    pub peak_lengths: Vec<u64>,
    pub peak_freq: u64,
    /// Step between consecutive lengths, used as the smoothing width.
    pub delta: u64,
    /// Lengths where the second difference changes sign across them.
    pub inflection_candidates: Vec<u64>,
}

/// Full-enumeration histogram with a second-difference scan. Along the
/// progression `min, min + delta, ...`, a length is a candidate when the
/// second differences at its two neighbours have strictly opposite signs.
pub fn multi_generator_histogram(s: &Semigroup, n: u64) -> Result<MultiGeneratorReport> {
    let histogram = length_multiset(s, n)?;
    let delta = gcd_all(&s.gens().windows(2).map(|w| w[1] - w[0]).collect::<Vec<_>>()).max(1);
    let (peak_lengths, peak_freq) = mode(&histogram)?;
    let min = histogram.min().unwrap_or(0);
    let max = histogram.max().unwrap_or(0);
    let f: Vec<i128> = (min..=max).step_by(delta as usize).map(|l| histogram.multiplicity(l) as i128).collect();
    // second difference at progression index i, with zeros outside the support
    let at = |i: i64| -> i128 {
        if i < 0 || i as usize >= f.len() {
            0
        } else {
            f[i as usize]
        }
    };
    let d2 = |i: i64| at(i + 1) - 2 * at(i) + at(i - 1);
    let inflection_candidates = (1..f.len() as i64 - 1)
        .filter(|&i| d2(i - 1).signum() * d2(i + 1).signum() < 0)
        .map(|i| min + i as u64 * delta)
        .collect();
    Ok(MultiGeneratorReport {
        semigroup: s.clone(),
        n,
        histogram,
        peak_lengths,
        peak_freq,
        delta,
        inflection_candidates,
    })
}
