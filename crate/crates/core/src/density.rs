//! Exact natural density on eventually periodic subsets of ℕ.
//!
//! A set is eventually periodic when, from some threshold on, membership only
//! depends on the residue of `n` modulo a fixed period. The class is closed
//! under the Boolean operations and every member has a natural density equal
//! to `|residues| / period`, so all comparisons here are exact rationals.
//!
//! Sets outside the class (squares, primes, ...) can only be sampled through
//! [`partial_density`], which reports a convergence flag alongside the value.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::{Error, Result};

/// An uncanonicalized description of an eventually periodic set, as it comes
/// off the wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawPeriodicSet {
    pub threshold: usize,
    pub prefix: Vec<bool>,
    pub period: usize,
    pub residues: Vec<usize>,
}

/// A subset of ℕ given by an explicit prefix below `threshold` and a set of
/// residues modulo `period` from the threshold on.
///
/// Values are always canonical: the period is minimal and the prefix has no
/// trailing bit that the periodic rule would already produce. Two values are
/// therefore equal exactly when they denote the same set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventuallyPeriodicSet {
    prefix: Vec<bool>,
    // One flag per residue class; `residues.len()` is the period.
    residues: Vec<bool>,
}

impl EventuallyPeriodicSet {
    /// Builds a canonical set from explicit prefix bits and a residue list.
    pub fn new(
        prefix: Vec<bool>,
        period: usize,
        residues: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidSpec("period must be at least 1".into()));
        }
        let mut mask = vec![false; period];
        for r in residues {
            if r >= period {
                return Err(Error::InvalidSpec(alloc::format!(
                    "residue {r} is not below the period {period}"
                )));
            }
            mask[r] = true;
        }
        Ok(Self::canonical(prefix, mask))
    }

    /// Canonicalizes a raw description.
    pub fn from_raw(raw: &RawPeriodicSet) -> Result<Self> {
        if raw.threshold != raw.prefix.len() {
            return Err(Error::InvalidSpec(alloc::format!(
                "threshold {} does not match the {} prefix bits",
                raw.threshold,
                raw.prefix.len()
            )));
        }
        Self::new(raw.prefix.clone(), raw.period, raw.residues.iter().copied())
    }

    pub fn to_raw(&self) -> RawPeriodicSet {
        RawPeriodicSet {
            threshold: self.threshold(),
            prefix: self.prefix.clone(),
            period: self.period(),
            residues: self.residues().collect(),
        }
    }

    fn canonical(mut prefix: Vec<bool>, residues: Vec<bool>) -> Self {
        let period = residues.len();
        let minimal = divisors(period)
            .find(|&d| (d..period).all(|i| residues[i] == residues[i % d]))
            .unwrap_or(period);
        let mut residues = residues;
        residues.truncate(minimal);
        while let Some(&last) = prefix.last() {
            let n = prefix.len() - 1;
            if last != residues[n % minimal] {
                break;
            }
            prefix.pop();
        }
        Self { prefix, residues }
    }

    pub fn empty() -> Self {
        Self {
            prefix: Vec::new(),
            residues: vec![false],
        }
    }

    pub fn naturals() -> Self {
        Self {
            prefix: Vec::new(),
            residues: vec![true],
        }
    }

    /// `{0, k, 2k, ...}`.
    pub fn multiples_of(k: usize) -> Result<Self> {
        Self::new(Vec::new(), k, [0])
    }

    /// `{k, 2k, 3k, ...}`, the multiples without zero.
    pub fn positive_multiples_of(k: usize) -> Result<Self> {
        Self::new(vec![false], k, [0])
    }

    /// The cofinite set `{n : n ≥ k}`.
    pub fn at_least(k: usize) -> Self {
        Self::canonical(vec![false; k], vec![true])
    }

    pub fn finite(members: impl IntoIterator<Item = usize>) -> Self {
        let mut prefix = Vec::new();
        for m in members {
            if m >= prefix.len() {
                prefix.resize(m + 1, false);
            }
            prefix[m] = true;
        }
        Self::canonical(prefix, vec![false])
    }

    pub fn threshold(&self) -> usize {
        self.prefix.len()
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn period(&self) -> usize {
        self.residues.len()
    }

    /// Residues in increasing order.
    pub fn residues(&self) -> impl Iterator<Item = usize> + '_ {
        self.residues
            .iter()
            .enumerate()
            .filter_map(|(r, &b)| b.then_some(r))
    }

    pub fn member(&self, n: u64) -> bool {
        match usize::try_from(n) {
            Ok(i) if i < self.prefix.len() => self.prefix[i],
            _ => self.residues[(n % self.period() as u64) as usize],
        }
    }

    pub fn density(&self) -> Density {
        let count = self.residues.iter().filter(|&&b| b).count() as u64;
        Density(Ratio::new(count, self.period() as u64))
    }

    pub fn is_finite(&self) -> bool {
        !self.residues.iter().any(|&b| b)
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && !self.prefix.iter().any(|&b| b)
    }

    pub fn is_cofinite(&self) -> bool {
        self.residues.iter().all(|&b| b)
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let (pa, pb) = (self.period(), other.period());
        let period = pa.lcm(&pb);
        let threshold = self.threshold().max(other.threshold());
        let prefix = (0..threshold as u64)
            .map(|n| op(self.member(n), other.member(n)))
            .collect();
        // Past both thresholds membership depends only on n mod each period,
        // and both periods divide the lcm.
        let residues = (0..period)
            .map(|r| op(self.residues[r % pa], other.residues[r % pb]))
            .collect();
        Self::canonical(prefix, residues)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a != b)
    }

    pub fn complement(&self) -> Self {
        Self::canonical(
            self.prefix.iter().map(|b| !b).collect(),
            self.residues.iter().map(|b| !b).collect(),
        )
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// `A ~ B`: the symmetric difference is finite.
    pub fn is_asymptotic(&self, other: &Self) -> bool {
        self.symmetric_difference(other).is_finite()
    }
}

impl fmt::Debug for EventuallyPeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: alloc::string::String = self
            .prefix
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        f.debug_struct("EventuallyPeriodicSet")
            .field("prefix", &bits)
            .field("period", &self.period())
            .field("residues", &self.residues().collect::<Vec<_>>())
            .finish()
    }
}

fn divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

/// Natural density of a set, an exact rational in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Density(Ratio<u64>);

impl Density {
    pub const ZERO: Density = Density(Ratio::new_raw(0, 1));
    pub const ONE: Density = Density(Ratio::new_raw(1, 1));

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidDensity { num, den });
        }
        Ok(Density(Ratio::new(num, den)))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn value(&self) -> Ratio<u64> {
        self.0
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// `Most(U, A)`: `d(A ∩ U) > d(U − A)`.
///
/// Ties are false. The universe must be infinite.
pub fn most(universe: &EventuallyPeriodicSet, set: &EventuallyPeriodicSet) -> Result<bool> {
    if universe.is_finite() {
        return Err(Error::UniverseNotInfinite);
    }
    let inside = set.intersect(universe).density();
    let outside = universe.difference(set).density();
    Ok(inside > outside)
}

/// `Most(ℕ, A)`.
pub fn most_of_naturals(set: &EventuallyPeriodicSet) -> bool {
    let d = set.density().value();
    d + d > Ratio::from_integer(1)
}

/// Two sets are mostly similar when `Most(ℕ, ·)` gives them the same verdict.
pub fn most_sim(a: &EventuallyPeriodicSet, b: &EventuallyPeriodicSet) -> bool {
    most_of_naturals(a) == most_of_naturals(b)
}

/// Convergence policy of the partial-density estimator.
///
/// Partial densities are sampled at the checkpoints `N, 2N, 4N, ...` until
/// `window` of them have been taken; the estimate is converged when every
/// pair of sampled values is within `tolerance`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EstimatorPolicy {
    pub window: u32,
    pub tolerance: Ratio<u64>,
}

impl Default for EstimatorPolicy {
    fn default() -> Self {
        Self {
            window: 4,
            tolerance: Ratio::new(1, 1000),
        }
    }
}

/// The quotient `|A ∩ {1..N}| / N` for a set known only through `member`,
/// with the checkpoint samples that decide `converged`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityEstimate {
    pub partial_value: Ratio<u64>,
    pub sample_bound: u64,
    pub converged: bool,
    pub oscillation: Ratio<u64>,
    pub checkpoints: Vec<(u64, Ratio<u64>)>,
}

/// `|A ∩ {1..n}| / n`.
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn partial_quotient(mut member: impl FnMut(u64) -> bool, n: u64) -> Ratio<u64> {
    assert!(n >= 1, "partial density needs n >= 1");
    let count = (1..=n).filter(|&i| member(i)).count() as u64;
    Ratio::new(count, n)
}

/// Samples the partial density of an oracle-only set.
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn partial_density(
    mut member: impl FnMut(u64) -> bool,
    n: u64,
    policy: &EstimatorPolicy,
) -> DensityEstimate {
    assert!(n >= 1, "partial density needs n >= 1");
    let window = policy.window.max(1);
    let mut bounds = Vec::with_capacity(window as usize);
    let mut bound = n;
    for _ in 0..window {
        bounds.push(bound);
        match bound.checked_mul(2) {
            Some(next) => bound = next,
            None => break,
        }
    }

    let mut checkpoints = Vec::with_capacity(bounds.len());
    let mut count = 0u64;
    let mut next = 1u64;
    for &b in &bounds {
        while next <= b {
            if member(next) {
                count += 1;
            }
            next += 1;
        }
        checkpoints.push((b, Ratio::new(count, b)));
    }

    let values = || checkpoints.iter().map(|&(_, v)| v);
    let hi = values().max().unwrap_or_default();
    let lo = values().min().unwrap_or_default();
    let oscillation = hi - lo;
    let converged =
        checkpoints.len() as u32 == window && window >= 2 && oscillation <= policy.tolerance;
    DensityEstimate {
        partial_value: checkpoints[0].1,
        sample_bound: n,
        converged,
        oscillation,
        checkpoints,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(prefix: &[u8], period: usize, residues: &[usize]) -> EventuallyPeriodicSet {
        let prefix = prefix.iter().map(|&b| b == 1).collect();
        EventuallyPeriodicSet::new(prefix, period, residues.iter().copied()).unwrap()
    }

    #[test]
    fn full_tail_collapses_to_naturals() {
        let s = set(&[], 2, &[0, 1]);
        assert_eq!(s, EventuallyPeriodicSet::naturals());
        assert_eq!((s.threshold(), s.period()), (0, 1));
        assert_eq!(s.residues().collect::<Vec<_>>(), [0]);
    }

    #[test]
    fn consistent_prefix_is_absorbed() {
        let s = set(&[1, 0], 2, &[0]);
        assert_eq!(s.threshold(), 0);
        assert_eq!(s.period(), 2);
        assert_eq!(s.residues().collect::<Vec<_>>(), [0]);
    }

    #[test]
    fn period_four_reduces_to_two() {
        let s = set(&[], 4, &[0, 2]);
        assert_eq!((s.threshold(), s.period()), (0, 2));
        assert_eq!(s.residues().collect::<Vec<_>>(), [0]);
        for n in 0..=100u64 {
            assert_eq!(s.member(n), n % 4 == 0 || n % 4 == 2, "n = {n}");
        }
    }

    #[test]
    fn inconsistent_prefix_is_kept() {
        let s = set(&[0, 1, 1], 2, &[0]);
        assert_eq!(s.threshold(), 2);
        assert!(!s.member(0));
        assert!(s.member(1));
        assert!(s.member(2));
        assert!(!s.member(3));
    }

    #[test]
    fn zero_period_is_rejected() {
        assert!(matches!(
            EventuallyPeriodicSet::new(Vec::new(), 0, []),
            Err(Error::InvalidSpec(_))
        ));
        let raw = RawPeriodicSet {
            threshold: 0,
            prefix: Vec::new(),
            period: 0,
            residues: Vec::new(),
        };
        assert!(EventuallyPeriodicSet::from_raw(&raw).is_err());
    }

    #[test]
    fn residue_out_of_range_is_rejected() {
        assert!(EventuallyPeriodicSet::new(Vec::new(), 3, [3]).is_err());
    }

    #[test]
    fn threshold_must_match_prefix() {
        let raw = RawPeriodicSet {
            threshold: 2,
            prefix: alloc::vec![true],
            period: 1,
            residues: alloc::vec![0],
        };
        assert!(EventuallyPeriodicSet::from_raw(&raw).is_err());
    }

    #[test]
    fn membership() {
        let threes = EventuallyPeriodicSet::multiples_of(3).unwrap();
        assert!(threes.member(9));
        assert!(!threes.member(10));
        let s = set(&[0], 1, &[0]);
        assert!(!s.member(0));
        assert!(s.member(1));
        assert!(s.member(u64::MAX));
    }

    #[test]
    fn densities() {
        for k in 1..=10 {
            let s = EventuallyPeriodicSet::positive_multiples_of(k).unwrap();
            assert_eq!(s.density(), Density::new(1, k as u64).unwrap());
        }
        assert_eq!(EventuallyPeriodicSet::naturals().density(), Density::ONE);
        assert_eq!(EventuallyPeriodicSet::empty().density(), Density::ZERO);
        assert_eq!(
            EventuallyPeriodicSet::finite([1, 5, 40]).density(),
            Density::ZERO
        );
    }

    #[test]
    fn evens_union_odd_multiples_of_three() {
        let evens = EventuallyPeriodicSet::multiples_of(2).unwrap();
        let odd_threes = set(&[], 6, &[3]);
        let s = evens.union(&odd_threes);
        assert_eq!(s.period(), 6);
        assert_eq!(s.residues().collect::<Vec<_>>(), [0, 2, 3, 4]);
        assert_eq!(s.density(), Density::new(2, 3).unwrap());

        let n = 1_000_000u64;
        let count = (1..=n)
            .filter(|&i| i % 2 == 0 || (i % 2 == 1 && i % 3 == 0))
            .count() as u64;
        let brute = Ratio::new(count, n);
        let diff = if brute > s.density().value() {
            brute - s.density().value()
        } else {
            s.density().value() - brute
        };
        assert!(diff <= Ratio::new(6, n));
    }

    #[test]
    fn evens_intersect_threes() {
        let evens = EventuallyPeriodicSet::multiples_of(2).unwrap();
        let threes = EventuallyPeriodicSet::multiples_of(3).unwrap();
        let s = evens.intersect(&threes);
        assert_eq!(s, EventuallyPeriodicSet::multiples_of(6).unwrap());
        for n in 0..10_000u64 {
            assert_eq!(s.member(n), n % 2 == 0 && n % 3 == 0);
        }
        assert_eq!(s.density(), Density::new(1, 6).unwrap());
    }

    #[test]
    fn complement_of_empty_is_naturals() {
        assert_eq!(
            EventuallyPeriodicSet::empty().complement(),
            EventuallyPeriodicSet::naturals()
        );
    }

    #[test]
    fn asymptotic() {
        let evens = EventuallyPeriodicSet::multiples_of(2).unwrap();
        let perturbed = evens.union(&EventuallyPeriodicSet::finite([1, 3, 5]));
        assert!(evens.is_asymptotic(&perturbed));
        assert_eq!(evens.density(), perturbed.density());
        let odds = evens.complement();
        assert!(!evens.is_asymptotic(&odds));
    }

    #[test]
    fn most_predicate() {
        let n = EventuallyPeriodicSet::naturals();
        let evens = EventuallyPeriodicSet::multiples_of(2).unwrap();
        assert!(!most(&n, &evens).unwrap());
        let non_threes = EventuallyPeriodicSet::multiples_of(3).unwrap().complement();
        assert!(most(&n, &non_threes).unwrap());
        assert!(most(&n, &EventuallyPeriodicSet::at_least(1000)).unwrap());
        assert_eq!(
            most(&EventuallyPeriodicSet::finite([1, 2]), &evens),
            Err(Error::UniverseNotInfinite)
        );
    }

    #[test]
    fn most_relative_to_a_universe() {
        // Inside the evens, the multiples of 4 and of 6 together are 2/3 of the universe.
        let evens = EventuallyPeriodicSet::multiples_of(2).unwrap();
        let a = EventuallyPeriodicSet::multiples_of(4)
            .unwrap()
            .union(&EventuallyPeriodicSet::multiples_of(6).unwrap());
        assert!(most(&evens, &a).unwrap());
        assert!(!most(&evens, &EventuallyPeriodicSet::multiples_of(4).unwrap()).unwrap());
    }

    #[test]
    fn mostly_similar() {
        let a = set(&[], 3, &[0, 1]);
        let b = set(&[], 4, &[0, 1, 2]);
        let c = set(&[], 3, &[0]);
        assert!(most_sim(&a, &a));
        assert!(most_sim(&a, &b));
        assert!(!most_sim(&a, &c));
    }

    #[test]
    fn estimator_on_evens() {
        let est = partial_density(|n| n % 2 == 0, 1000, &EstimatorPolicy::default());
        assert_eq!(est.partial_value, Ratio::new(500, 1000));
        assert_eq!(est.sample_bound, 1000);
        assert!(est.converged);
        assert_eq!(est.checkpoints.len(), 4);
    }

    #[test]
    fn estimator_on_squares() {
        let is_square = |n: u64| n.isqrt() * n.isqrt() == n;
        let est = partial_density(is_square, 10_000, &EstimatorPolicy::default());
        assert_eq!(est.partial_value, Ratio::new(100, 10_000));
        let values: Vec<_> = est.checkpoints.iter().map(|c| c.1).collect();
        assert!(values.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn estimator_flags_oscillation() {
        // Members are the blocks [4^k, 2·4^k).
        let blocks = |n: u64| (63 - n.leading_zeros()).is_multiple_of(2);
        let est = partial_density(blocks, 1000, &EstimatorPolicy::default());
        assert!(!est.converged);
        assert!(est.oscillation > Ratio::new(1, 4));
    }
}
