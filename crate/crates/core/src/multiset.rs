//! Degree-multiset bounds on the triangle count.
//!
//! A graph with `m` edges, maximum degree `r` and a cluster of red deficit
//! `k` has `3·k_3 <= Σ_v w(d(v))`, where `w(d) = C(d, 2)` for `d < r` and
//! `w(r) = C(r, 2) - k`. Maximizing over all degree multisets with sum `2m`
//! gives `3M_k(m, r)`; requiring a degree-`r` entry gives `3M*_k(m, r)`.
//! Everything here is carried in units of `3M` so it stays integral.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::colex::{binomial, decompose, g_t, ColexError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultisetError {
    #[error("degree cap r must be at least 1")]
    ZeroCap,
    #[error("degree {degree} exceeds the cap {r}")]
    DegreeOutOfRange { degree: usize, r: usize },
    #[error("no multiset with degree sum {sum} contains the degree {r}")]
    Infeasible { sum: u64, r: usize },
    #[error("allowed degree set is empty or exceeds the cap")]
    BadDegreeSet,
    #[error("m = {m} is below the range m >= {min} where this closed form applies")]
    BelowRange { m: u64, min: u64 },
    #[error("gap functions need 0 <= d <= c <= r, got c = {c}, d = {d}, r = {r}")]
    BadBracket { r: u64, c: u64, d: u64 },
    #[error(transparent)]
    Colex(#[from] ColexError),
}

/// The weight `w` for cap `r` and red deficit `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeightProfile {
    pub r: usize,
    pub k: u64,
}

impl WeightProfile {
    /// `k` is normally in `1..=C(r, 2)`; larger values are accepted since
    /// the `k = ⌈r/2⌉` family reaches `k = 1 > C(1, 2)` at `r = 1`.
    pub fn new(r: usize, k: u64) -> Result<Self, MultisetError> {
        if r == 0 {
            return Err(MultisetError::ZeroCap);
        }
        Ok(WeightProfile { r, k })
    }

    pub fn w(&self, d: usize) -> i64 {
        let pairs = binomial(d as u64, 2) as i64;
        if d == self.r {
            pairs - self.k as i64
        } else {
            pairs
        }
    }
}

/// Degree counts indexed by degree `0..=r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DegreeMultiset {
    counts: Vec<u64>,
}

impl DegreeMultiset {
    pub fn new(r: usize) -> Self {
        DegreeMultiset { counts: vec![0; r + 1] }
    }

    pub fn from_degrees(r: usize, degrees: &[usize]) -> Result<Self, MultisetError> {
        let mut ms = DegreeMultiset::new(r);
        for &d in degrees {
            ms.add(d, 1)?;
        }
        Ok(ms)
    }

    pub fn from_counts(r: usize, counts: &[(usize, u64)]) -> Result<Self, MultisetError> {
        let mut ms = DegreeMultiset::new(r);
        for &(d, c) in counts {
            ms.add(d, c)?;
        }
        Ok(ms)
    }

    pub fn cap(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn add(&mut self, degree: usize, copies: u64) -> Result<(), MultisetError> {
        let r = self.cap();
        let slot = self.counts.get_mut(degree).ok_or(MultisetError::DegreeOutOfRange { degree, r })?;
        *slot += copies;
        Ok(())
    }

    /// Panics if fewer than `copies` entries of `degree` are present.
    fn take(&mut self, degree: usize, copies: u64) {
        self.counts[degree] = self.counts[degree].checked_sub(copies).expect("enough copies");
    }

    pub fn count(&self, degree: usize) -> u64 {
        self.counts.get(degree).copied().unwrap_or(0)
    }

    pub fn len(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn degree_sum(&self) -> u64 {
        self.counts.iter().enumerate().map(|(d, &c)| d as u64 * c).sum()
    }

    pub fn weighted_sum(&self, profile: &WeightProfile) -> i64 {
        self.counts.iter().enumerate().map(|(d, &c)| profile.w(d) * c as i64).sum()
    }

    /// Nonzero `(degree, count)` pairs, largest degree first.
    pub fn profile(&self) -> Vec<(usize, u64)> {
        self.counts.iter().enumerate().rev().filter(|&(_, &c)| c > 0).map(|(d, &c)| (d, c)).collect()
    }

    /// Degree-0 entries contribute nothing and are dropped.
    pub fn without_zeros(mut self) -> Self {
        self.counts[0] = 0;
        self
    }
}

impl fmt::Display for DegreeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.profile().iter().map(|(d, c)| format!("{d}^{c}")).collect();
        if parts.is_empty() {
            f.write_str("{}")
        } else {
            write!(f, "{{{}}}", parts.join(" "))
        }
    }
}

/// `3M_k(m, r)`, or `3M*_k(m, r)` with `require_r`, and an optimal witness.
///
/// Among optimal multisets the witness is the one whose degrees, sorted in
/// decreasing order, are lexicographically largest.
pub fn mk_oracle(m: u64, r: usize, k: u64, require_r: bool) -> Result<(i64, DegreeMultiset), MultisetError> {
    let allowed: Vec<usize> = (1..=r).collect();
    mk_oracle_restricted(m, r, k, require_r, &allowed)
}

/// As [`mk_oracle`], with entries drawn only from `allowed` (a subset of `1..=r`).
pub fn mk_oracle_restricted(
    m: u64,
    r: usize,
    k: u64,
    require_r: bool,
    allowed: &[usize],
) -> Result<(i64, DegreeMultiset), MultisetError> {
    let profile = WeightProfile::new(r, k)?;
    if allowed.is_empty() || allowed.iter().any(|&d| d == 0 || d > r) {
        return Err(MultisetError::BadDegreeSet);
    }
    let mut degrees = allowed.to_vec();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    degrees.dedup();

    let target = 2 * m;
    let (start, mut ms) = if require_r {
        if target < r as u64 {
            return Err(MultisetError::Infeasible { sum: target, r });
        }
        let mut ms = DegreeMultiset::new(r);
        ms.add(r, 1)?;
        (target - r as u64, ms)
    } else {
        (target, DegreeMultiset::new(r))
    };

    let best = knapsack(start as usize, &degrees, &profile);
    let Some(value) = best[start as usize] else {
        return Err(MultisetError::Infeasible { sum: target, r });
    };
    let mut rest = start as usize;
    while rest > 0 {
        let here = best[rest].expect("on an optimal path");
        let d = degrees
            .iter()
            .copied()
            .find(|&d| d <= rest && best[rest - d].is_some_and(|v| v + profile.w(d) == here))
            .expect("optimal value has a predecessor");
        ms.add(d, 1)?;
        rest -= d;
    }
    let total = value + if require_r { profile.w(r) } else { 0 };
    debug_assert_eq!(ms.weighted_sum(&profile), total);
    Ok((total, ms))
}

/// Unbounded knapsack: best weighted sum of a multiset from `degrees`
/// summing exactly to each `s <= target`.
fn knapsack(target: usize, degrees: &[usize], profile: &WeightProfile) -> Vec<Option<i64>> {
    let mut best: Vec<Option<i64>> = vec![None; target + 1];
    best[0] = Some(0);
    for s in 1..=target {
        best[s] = degrees.iter().filter(|&&d| d <= s).filter_map(|&d| best[s - d].map(|v| v + profile.w(d))).max();
    }
    best
}

/// Closed form of `3M*_5(m, 8)` for `m >= C(9, 2) + 1`: the optimum is
/// taken to be `x` sevens and the rest eights, with `x ∈ [7]` and
/// `x ≡ 2m (mod 7)`, giving `6m - x`. Returns `(x, 6m - x)`.
pub fn mk_closed_form_r8(m: u64) -> Result<(u64, i64), MultisetError> {
    let min = binomial(9, 2) + 1;
    if m < min {
        return Err(MultisetError::BelowRange { m, min });
    }
    let x = match (2 * m) % 7 {
        0 => 7,
        x => x,
    };
    Ok((x, 6 * m as i64 - x as i64))
}

/// Which rewrite a [`ReductionStep`] applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReductionRule {
    /// Two entries `x <= y` from `[r-2]` become `x-1, y+1`.
    SmallPair,
    /// An entry `d ∈ [r-2]` and `r-1-d` copies of `r` become `r-d` copies
    /// of `r-1`; needs `r <= 2k+1`.
    AbsorbSmall,
    /// `r-1` copies of `r` become `r` copies of `r-1`; needs `2k >= r`.
    TradeTops,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub rule: ReductionRule,
    pub gain: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub result: DegreeMultiset,
    pub steps: Vec<ReductionStep>,
}

/// Moves the two smallest positive entries from `[r-2]` apart.
pub fn reduce_small_pair(ms: &DegreeMultiset, profile: &WeightProfile) -> Option<(DegreeMultiset, i64)> {
    let r = profile.r;
    let mut small = (1..r.saturating_sub(1)).flat_map(|d| std::iter::repeat_n(d, ms.count(d).min(2) as usize));
    let x = small.next()?;
    let y = (1..r.saturating_sub(1)).rev().find(|&d| ms.count(d) > u64::from(d == x))?;
    let mut out = ms.clone();
    out.take(x, 1);
    out.take(y, 1);
    out.add(x - 1, 1).ok()?;
    out.add(y + 1, 1).ok()?;
    let out = out.without_zeros();
    let gain = out.weighted_sum(profile) - ms.weighted_sum(profile);
    Some((out, gain))
}

pub fn reduce_absorb_small(ms: &DegreeMultiset, profile: &WeightProfile) -> Option<(DegreeMultiset, i64)> {
    let r = profile.r;
    if r < 3 || r as u64 > 2 * profile.k + 1 {
        return None;
    }
    let d = (1..r - 1).find(|&d| ms.count(d) > 0 && ms.count(r) >= (r - 1 - d) as u64)?;
    let mut out = ms.clone();
    out.take(d, 1);
    out.take(r, (r - 1 - d) as u64);
    out.add(r - 1, (r - d) as u64).ok()?;
    let gain = out.weighted_sum(profile) - ms.weighted_sum(profile);
    Some((out, gain))
}

pub fn reduce_trade_tops(ms: &DegreeMultiset, profile: &WeightProfile) -> Option<(DegreeMultiset, i64)> {
    let r = profile.r;
    if r < 2 || 2 * profile.k < r as u64 || ms.count(r) < (r - 1) as u64 {
        return None;
    }
    let mut out = ms.clone();
    out.take(r, (r - 1) as u64);
    out.add(r - 1, r as u64).ok()?;
    let gain = out.weighted_sum(profile) - ms.weighted_sum(profile);
    Some((out, gain))
}

/// Applies the three rewrites until none applies.
///
/// Terminates because every step either lowers the number of `r` entries
/// or keeps it and strictly raises the sum of squared degrees.
pub fn structural_reductions(ms: &DegreeMultiset, r: usize, k: u64) -> Result<Reduction, MultisetError> {
    let profile = WeightProfile::new(r, k)?;
    if ms.cap() != r {
        return Err(MultisetError::DegreeOutOfRange { degree: ms.cap(), r });
    }
    let mut current = ms.clone().without_zeros();
    let mut steps = Vec::new();
    loop {
        let next = reduce_small_pair(&current, &profile)
            .map(|s| (ReductionRule::SmallPair, s))
            .or_else(|| reduce_absorb_small(&current, &profile).map(|s| (ReductionRule::AbsorbSmall, s)))
            .or_else(|| reduce_trade_tops(&current, &profile).map(|s| (ReductionRule::TradeTops, s)));
        match next {
            Some((rule, (out, gain))) => {
                steps.push(ReductionStep { rule, gain });
                current = out;
            }
            None => return Ok(Reduction { result: current, steps }),
        }
    }
}

/// The bound `(r-2)m` on `3M_⌈r/2⌉(m, r)`, for `m >= C(r+1, 2) + 1`.
pub fn seqopt_bound(m: u64, r: u64) -> Result<i64, MultisetError> {
    if r == 0 {
        return Err(MultisetError::ZeroCap);
    }
    let min = binomial(r + 1, 2) + 1;
    if m < min {
        return Err(MultisetError::BelowRange { m, min });
    }
    Ok((r as i64 - 2) * m as i64)
}

/// The pieces of `3g_3(m, r) - (r-2)m` for `m = a·C(r+1, 2) + C(c, 2) + d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GapTerms {
    /// `a·C(r+1, 2)`
    pub block: i64,
    /// `h_r(c) = (c - r)·C(c, 2)`
    pub h: i64,
    /// `2q_r(d) = d(3(d-1) - 2(r-2))`
    pub q_doubled: i64,
    /// `2·block + 2·h + 2q_r(d)`
    pub doubled_total: i64,
}

pub fn gap_functions(r: u64, a: u64, c: u64, d: u64) -> Result<GapTerms, MultisetError> {
    if d > c || c > r {
        return Err(MultisetError::BadBracket { r, c, d });
    }
    let (r, a, c, d) = (r as i64, a as i64, c as i64, d as i64);
    let block = a * (r + 1) * r / 2;
    let h = (c - r) * c * (c - 1) / 2;
    let q_doubled = d * (3 * (d - 1) - 2 * (r - 2));
    Ok(GapTerms { block, h, q_doubled, doubled_total: 2 * block + 2 * h + q_doubled })
}

/// `2·(3g_3(m, r) - (r-2)m)` computed directly from the decomposition of `m`.
pub fn doubled_gap(m: u64, r: u64) -> Result<i64, MultisetError> {
    let g3 = g_t(m, r, 3)? as i64;
    Ok(2 * (3 * g3 - (r as i64 - 2) * m as i64))
}

/// [`gap_functions`] at the decomposition of `m`.
pub fn gap_terms_for(m: u64, r: u64) -> Result<GapTerms, MultisetError> {
    let dec = decompose(m, r)?;
    gap_functions(r, dec.a, dec.c, dec.d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Exhaustive search over multisets by recursion on the largest degree.
    fn brute(sum: u64, r: usize, k: u64, require_r: bool) -> Option<i64> {
        fn go(sum: u64, top: usize, p: &WeightProfile) -> Option<i64> {
            if sum == 0 {
                return Some(0);
            }
            (1..=top.min(sum as usize)).filter_map(|d| go(sum - d as u64, d, p).map(|v| v + p.w(d))).max()
        }
        let p = WeightProfile::new(r, k).unwrap();
        if require_r {
            let rest = sum.checked_sub(r as u64)?;
            go(rest, r, &p).map(|v| v + p.w(r))
        } else {
            go(sum, r, &p)
        }
    }

    #[test]
    fn weights() {
        let p = WeightProfile::new(8, 5).unwrap();
        assert_eq!((p.w(0), p.w(1), p.w(2), p.w(7), p.w(8)), (0, 0, 1, 21, 23));
        assert_eq!(WeightProfile::new(1, 1).unwrap().w(1), -1);
        assert_eq!(WeightProfile::new(0, 1), Err(MultisetError::ZeroCap));
    }

    #[test]
    fn oracle_examples() {
        let (v, w) = mk_oracle(7, 3, 2, false).unwrap();
        assert_eq!(v, 7);
        assert_eq!(w.profile(), vec![(2, 7)]);
        assert_eq!(mk_oracle(47, 8, 5, true).unwrap().0, 279);
        assert_eq!(mk_oracle(53, 8, 5, true).unwrap().0, 317);
        assert_eq!(mk_oracle(2, 8, 5, true), Err(MultisetError::Infeasible { sum: 4, r: 8 }));
        assert_eq!(mk_oracle(0, 3, 1, false).unwrap(), (0, DegreeMultiset::new(3)));
    }

    #[test]
    fn oracle_witness_at_multiple_of_seven() {
        let (v, w) = mk_oracle(49, 8, 5, true).unwrap();
        assert_eq!(v, 290);
        assert_eq!(w.profile(), vec![(8, 1), (7, 12), (6, 1)]);
        assert_eq!(w.degree_sum(), 98);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(mk_closed_form_r8(47).unwrap(), (3, 279));
        assert_eq!(mk_closed_form_r8(49).unwrap(), (7, 287));
        assert_eq!(mk_closed_form_r8(50).unwrap(), (2, 298));
        assert_eq!(mk_closed_form_r8(36), Err(MultisetError::BelowRange { m: 36, min: 37 }));
    }

    #[test]
    fn closed_form_agrees_off_multiples_of_seven() {
        for m in 37..=200u64 {
            let oracle = mk_oracle(m, 8, 5, true).unwrap().0;
            let (_, closed) = mk_closed_form_r8(m).unwrap();
            if m % 7 == 0 {
                // one 8, a 6, and sevens beat the all-7/8 form by 3
                assert_eq!(oracle, closed + 3, "m = {m}");
            } else {
                assert_eq!(oracle, closed, "m = {m}");
            }
        }
    }

    #[test]
    fn small_pair_rewrite() {
        let p = WeightProfile::new(8, 5).unwrap();
        let ms = DegreeMultiset::from_counts(8, &[(2, 1), (3, 1), (8, 4)]).unwrap();
        let (out, gain) = reduce_small_pair(&ms, &p).unwrap();
        assert_eq!(gain, 2);
        assert_eq!(out.profile(), vec![(8, 4), (4, 1), (1, 1)]);
    }

    #[test]
    fn absorb_small_rewrite_clears_small_entries() {
        for r in 3..=9usize {
            for k in 1..=binomial(r as u64, 2) {
                if r as u64 > 2 * k + 1 {
                    continue;
                }
                for d in 1..r - 1 {
                    let ms = DegreeMultiset::from_counts(r, &[(d, 1), (r, (r - 1 - d) as u64)]).unwrap();
                    let red = structural_reductions(&ms, r, k).unwrap();
                    assert!((1..r - 1).all(|e| red.result.count(e) == 0), "r={r} k={k} d={d}");
                    assert!(red.steps.iter().all(|s| s.gain >= 0));
                }
            }
        }
    }

    #[test]
    fn trade_tops_gain() {
        for r in 2..=10usize {
            for k in (r as u64).div_ceil(2)..=binomial(r as u64, 2) {
                let p = WeightProfile::new(r, k).unwrap();
                let ms = DegreeMultiset::from_counts(r, &[(r, r as u64 - 1)]).unwrap();
                let (out, gain) = reduce_trade_tops(&ms, &p).unwrap();
                assert_eq!(out.profile(), vec![(r - 1, r as u64)]);
                // (r-1)(k - r/2), doubled to stay integral
                assert_eq!(2 * gain, (r as i64 - 1) * (2 * k as i64 - r as i64));
            }
        }
    }

    #[test]
    fn seqopt_examples() {
        assert_eq!(seqopt_bound(7, 3).unwrap(), 7);
        assert_eq!(mk_oracle(7, 3, 2, false).unwrap().0, 7);
        assert_eq!(seqopt_bound(29, 7).unwrap(), 145);
        assert!(mk_oracle(29, 7, 4, false).unwrap().0 <= 145);
        assert_eq!(seqopt_bound(4, 2).unwrap(), 0);
        assert!(mk_oracle(4, 2, 1, false).unwrap().0 <= 0);
        assert!(matches!(seqopt_bound(6, 3), Err(MultisetError::BelowRange { .. })));
    }

    #[test]
    fn gap_examples() {
        let g = gap_functions(8, 0, 5, 0).unwrap();
        assert_eq!(g.h, -30);
        assert_eq!(gap_functions(8, 0, 6, 0).unwrap().h, -30);
        assert_eq!(gap_functions(8, 0, 2, 2).unwrap().q_doubled, -18);
        assert_eq!(gap_functions(8, 0, 3, 3).unwrap().q_doubled, -18);
        let g = gap_functions(5, 1, 0, 0).unwrap();
        assert_eq!(g.doubled_total, 30);
        assert_eq!(doubled_gap(15, 5).unwrap(), 30);
        assert!(gap_functions(5, 0, 2, 3).is_err());
    }

    #[test]
    fn gap_identity_over_range() {
        for r in 1..=8u64 {
            for m in 0..=300u64 {
                assert_eq!(gap_terms_for(m, r).unwrap().doubled_total, doubled_gap(m, r).unwrap(), "m={m} r={r}");
            }
        }
    }

    proptest! {
        #[test]
        fn oracle_matches_brute_force(m in 0u64..13, r in 1usize..7, k in 1u64..8, require_r: bool) {
            let sum = 2 * m;
            match mk_oracle(m, r, k, require_r) {
                Ok((v, w)) => {
                    prop_assert_eq!(Some(v), brute(sum, r, k, require_r));
                    prop_assert_eq!(w.degree_sum(), sum);
                    prop_assert_eq!(w.weighted_sum(&WeightProfile::new(r, k).unwrap()), v);
                    prop_assert!(!require_r || w.count(r) >= 1);
                }
                Err(_) => prop_assert!(require_r && sum < r as u64),
            }
        }

        #[test]
        fn reductions_never_lose(r in 2usize..10, k in 1u64..30, raw in proptest::collection::vec(0usize..10, 0..25)) {
            let degrees: Vec<usize> = raw.into_iter().map(|d| d % (r + 1)).collect();
            let ms = DegreeMultiset::from_degrees(r, &degrees).unwrap();
            let p = WeightProfile::new(r, k).unwrap();
            let red = structural_reductions(&ms, r, k).unwrap();
            prop_assert_eq!(red.result.degree_sum(), ms.degree_sum());
            prop_assert!(red.result.weighted_sum(&p) >= ms.weighted_sum(&p));
            prop_assert!(red.steps.iter().all(|s| s.gain >= 0));
            let total: i64 = red.steps.iter().map(|s| s.gain).sum();
            prop_assert_eq!(red.result.weighted_sum(&p) - ms.weighted_sum(&p), total);
            let again = structural_reductions(&red.result, r, k).unwrap();
            prop_assert!(again.steps.is_empty());
            prop_assert_eq!(again.result, red.result);
        }
    }
}
