//! Most-intersection of finite collections and of countably infinite indexed
//! families.
//!
//! For a finite collection an element is kept when it belongs to strictly more
//! than half of the member sets, counted with multiplicity. For an indexed
//! family `{A_i}` each element `w` has a characteristic acceptance sequence
//! `χ(w)` with `χ_i(w) = 1` iff `w ∈ A_i`; `w` is kept when the set of indices
//! where `χ(w)` is 1 is infinite and satisfies `Most(ℕ, ·)`.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

use crate::density::{
    most_of_naturals, partial_density, Density, DensityEstimate, EstimatorPolicy,
    EventuallyPeriodicSet,
};
use crate::{Element, Error, Result};

/// Elements in more than half of `sets`. Duplicate sets each count.
pub fn most_intersect_finite<T: Ord + Clone>(sets: &[BTreeSet<T>]) -> Result<BTreeSet<T>> {
    if sets.is_empty() {
        return Err(Error::EmptyCollection);
    }
    let mut counts: BTreeMap<&T, usize> = BTreeMap::new();
    for set in sets {
        for w in set {
            *counts.entry(w).or_default() += 1;
        }
    }
    Ok(counts
        .into_iter()
        .filter(|&(_, c)| 2 * c > sets.len())
        .map(|(w, _)| w.clone())
        .collect())
}

/// `A ∩_M B`, which for two sets coincides with `A ∩ B`.
pub fn most_intersect_pair<T: Ord + Clone>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> BTreeSet<T> {
    most_intersect_finite(&[a.clone(), b.clone()]).expect("two sets")
}

/// Plain intersection of a non-empty collection.
pub fn intersect_finite<T: Ord + Clone>(sets: &[BTreeSet<T>]) -> Result<BTreeSet<T>> {
    let (first, rest) = sets.split_first().ok_or(Error::EmptyCollection)?;
    Ok(first
        .iter()
        .filter(|w| rest.iter().all(|s| s.contains(*w)))
        .cloned()
        .collect())
}

/// An ordered list of finite sets; duplicates are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCollection<T> {
    members: Vec<BTreeSet<T>>,
}

impl<T: Ord + Clone> FiniteCollection<T> {
    pub fn new(members: Vec<BTreeSet<T>>) -> Self {
        Self { members }
    }

    pub fn members(&self) -> &[BTreeSet<T>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn most_intersection(&self) -> Result<BTreeSet<T>> {
        most_intersect_finite(&self.members)
    }

    pub fn intersection(&self) -> Result<BTreeSet<T>> {
        intersect_finite(&self.members)
    }
}

impl<T: Ord> FromIterator<BTreeSet<T>> for FiniteCollection<T> {
    fn from_iter<I: IntoIterator<Item = BTreeSet<T>>>(iter: I) -> Self {
        Self {
            members: iter.into_iter().collect(),
        }
    }
}

/// A countable collection `{A_i}` seen through its members.
pub trait IndexedFamily {
    type Element: Ord + Clone + fmt::Debug;

    /// The elements that may belong to some `A_i`, in increasing order.
    fn candidates(&self) -> Vec<Self::Element>;

    /// `w ∈ A_i`.
    fn contains(&self, element: &Self::Element, index: u64) -> bool;

    /// The index set `{i : w ∈ A_i}`, when it is known to be eventually
    /// periodic.
    fn certificate(&self, element: &Self::Element) -> Option<EventuallyPeriodicSet>;
}

/// The characteristic acceptance sequence `χ(w)` of one element.
pub struct AcceptanceSequence<'a, F: IndexedFamily + ?Sized> {
    family: &'a F,
    element: F::Element,
}

impl<'a, F: IndexedFamily + ?Sized> AcceptanceSequence<'a, F> {
    pub fn new(family: &'a F, element: F::Element) -> Self {
        Self { family, element }
    }

    pub fn element(&self) -> &F::Element {
        &self.element
    }

    pub fn bit(&self, index: u64) -> bool {
        self.family.contains(&self.element, index)
    }

    /// The bits `χ_0 .. χ_{n-1}`.
    pub fn prefix(&self, n: u64) -> Vec<bool> {
        (0..n).map(|i| self.bit(i)).collect()
    }
}

impl<F: IndexedFamily + ?Sized> Clone for AcceptanceSequence<'_, F> {
    fn clone(&self) -> Self {
        Self {
            family: self.family,
            element: self.element.clone(),
        }
    }
}

pub fn acceptance_prefix<F: IndexedFamily + ?Sized>(
    family: &F,
    element: &F::Element,
    n: u64,
) -> Vec<bool> {
    AcceptanceSequence::new(family, element.clone()).prefix(n)
}

/// The set interpretation `S_χ(w) = {n : χ_n(w) = 1}`: exact when the family
/// certifies it, otherwise backed by the acceptance sequence itself.
pub enum SetInterpretation<'a, F: IndexedFamily + ?Sized> {
    Exact(EventuallyPeriodicSet),
    Oracle(AcceptanceSequence<'a, F>),
}

impl<F: IndexedFamily + ?Sized> SetInterpretation<'_, F> {
    pub fn member(&self, n: u64) -> bool {
        match self {
            SetInterpretation::Exact(s) => s.member(n),
            SetInterpretation::Oracle(seq) => seq.bit(n),
        }
    }

    pub fn exact(&self) -> Option<&EventuallyPeriodicSet> {
        match self {
            SetInterpretation::Exact(s) => Some(s),
            SetInterpretation::Oracle(_) => None,
        }
    }
}

pub fn set_interpretation<'a, F: IndexedFamily + ?Sized>(
    family: &'a F,
    element: &F::Element,
) -> SetInterpretation<'a, F> {
    match family.certificate(element) {
        Some(s) => SetInterpretation::Exact(s),
        None => SetInterpretation::Oracle(AcceptanceSequence::new(family, element.clone())),
    }
}

fn certificate_of<F: IndexedFamily + ?Sized>(
    family: &F,
    element: &F::Element,
) -> Result<EventuallyPeriodicSet> {
    family
        .certificate(element)
        .ok_or_else(|| Error::CertificateRequired(format!("{element:?}")))
}

/// Exact most-intersection over the family's candidates, each kept element
/// annotated with the density of its index set.
pub fn most_intersect_indexed<F: IndexedFamily + ?Sized>(
    family: &F,
) -> Result<BTreeMap<F::Element, Density>> {
    most_intersect_over(family, family.candidates())
}

/// Exact most-intersection restricted to the given candidates.
pub fn most_intersect_over<F: IndexedFamily + ?Sized>(
    family: &F,
    candidates: impl IntoIterator<Item = F::Element>,
) -> Result<BTreeMap<F::Element, Density>> {
    let mut kept = BTreeMap::new();
    for w in candidates {
        let indices = certificate_of(family, &w)?;
        // χ(w) is not eventually all zeros ...
        let recurring = !indices.is_finite();
        // ... and Most(ℕ, S_χ(w)) holds.
        if recurring && most_of_naturals(&indices) {
            kept.insert(w, indices.density());
        }
    }
    Ok(kept)
}

/// Elements of the candidate pool in every `A_i`.
pub fn indexed_intersection<F: IndexedFamily + ?Sized>(family: &F) -> Result<BTreeSet<F::Element>> {
    filter_by_certificate(family, |s| s.is_cofinite() && s.threshold() == 0)
}

/// Elements of the candidate pool in some `A_i`.
pub fn indexed_union<F: IndexedFamily + ?Sized>(family: &F) -> Result<BTreeSet<F::Element>> {
    filter_by_certificate(family, |s| !s.is_empty())
}

/// `⋃ (U − A_i)` over the candidate pool `U`: elements missing from some `A_i`.
pub fn union_of_complements<F: IndexedFamily + ?Sized>(family: &F) -> Result<BTreeSet<F::Element>> {
    filter_by_certificate(family, |s| *s != EventuallyPeriodicSet::naturals())
}

fn filter_by_certificate<F: IndexedFamily + ?Sized>(
    family: &F,
    keep: impl Fn(&EventuallyPeriodicSet) -> bool,
) -> Result<BTreeSet<F::Element>> {
    let mut out = BTreeSet::new();
    for w in family.candidates() {
        if keep(&certificate_of(family, &w)?) {
            out.insert(w);
        }
    }
    Ok(out)
}

/// Result of the numeric fallback. Never exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EstimatedMostIntersection<T> {
    pub members: BTreeSet<T>,
    pub estimates: BTreeMap<T, DensityEstimate>,
}

/// Keeps the candidates whose partial density at `n` exceeds one half and
/// whose estimate converged. Every candidate is annotated.
pub fn most_intersect_estimated<F: IndexedFamily + ?Sized>(
    family: &F,
    n: u64,
    policy: &EstimatorPolicy,
) -> EstimatedMostIntersection<F::Element> {
    let half = Ratio::new(1, 2);
    let mut members = BTreeSet::new();
    let mut estimates = BTreeMap::new();
    for w in family.candidates() {
        let est = partial_density(|i| family.contains(&w, i), n, policy);
        if est.converged && est.partial_value > half {
            members.insert(w.clone());
        }
        estimates.insert(w, est);
    }
    EstimatedMostIntersection { members, estimates }
}

/// Largest step index accepted by [`Family::cumulative`].
pub const MAX_STEP: u64 = 1 << 20;

/// A built-in indexed family over [`Element`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    kind: FamilyKind,
    universe: BTreeSet<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    /// `A_i` is the set of the first `i` primes.
    PrimePrefix,
    /// `A_0 = base`, `A_{n+1} = A_n ∪ steps[n+1]`.
    Cumulative {
        base: BTreeSet<Element>,
        steps: BTreeMap<u64, BTreeSet<Element>>,
    },
    /// Each element carries its own index set.
    PeriodicTable(BTreeMap<Element, EventuallyPeriodicSet>),
    /// `A_i = set` for every `i`.
    Constant(BTreeSet<Element>),
    /// `A_i = blocks[i]` while blocks last, `∅` afterwards.
    PairwiseDisjoint(Vec<BTreeSet<Element>>),
    /// `A_i = extra ∪ inner_i`.
    UnionMap {
        inner: Box<Family>,
        extra: BTreeSet<Element>,
    },
}

impl Family {
    pub fn prime_prefix(universe: impl IntoIterator<Item = Element>) -> Self {
        Self {
            kind: FamilyKind::PrimePrefix,
            universe: universe.into_iter().collect(),
        }
    }

    pub fn cumulative(
        base: BTreeSet<Element>,
        steps: BTreeMap<u64, BTreeSet<Element>>,
        universe: impl IntoIterator<Item = Element>,
    ) -> Result<Self> {
        if let Some(&bad) = steps.keys().find(|&&k| k == 0 || k > MAX_STEP) {
            return Err(Error::InvalidFamily(format!(
                "cumulative step {bad} is outside 1..={MAX_STEP}"
            )));
        }
        Ok(Self {
            kind: FamilyKind::Cumulative { base, steps },
            universe: universe.into_iter().collect(),
        })
    }

    pub fn periodic_table(
        table: BTreeMap<Element, EventuallyPeriodicSet>,
        universe: impl IntoIterator<Item = Element>,
    ) -> Self {
        Self {
            kind: FamilyKind::PeriodicTable(table),
            universe: universe.into_iter().collect(),
        }
    }

    pub fn constant(set: BTreeSet<Element>, universe: impl IntoIterator<Item = Element>) -> Self {
        Self {
            kind: FamilyKind::Constant(set),
            universe: universe.into_iter().collect(),
        }
    }

    pub fn pairwise_disjoint(
        blocks: Vec<BTreeSet<Element>>,
        universe: impl IntoIterator<Item = Element>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for block in &blocks {
            for w in block {
                if !seen.insert(w) {
                    return Err(Error::InvalidFamily(format!(
                        "element {w} appears in two blocks"
                    )));
                }
            }
        }
        Ok(Self {
            kind: FamilyKind::PairwiseDisjoint(blocks),
            universe: universe.into_iter().collect(),
        })
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn universe(&self) -> &BTreeSet<Element> {
        &self.universe
    }
}

/// The family `{extra ∪ A_i}`. Elements of `extra` join the candidate pool and
/// get the certificate ℕ.
pub fn union_map(family: &Family, extra: &BTreeSet<Element>) -> Family {
    if extra.is_empty() {
        return family.clone();
    }
    Family {
        universe: family.universe.union(extra).cloned().collect(),
        kind: FamilyKind::UnionMap {
            inner: Box::new(family.clone()),
            extra: extra.clone(),
        },
    }
}

impl IndexedFamily for Family {
    type Element = Element;

    fn candidates(&self) -> Vec<Element> {
        self.universe.iter().cloned().collect()
    }

    fn contains(&self, element: &Element, index: u64) -> bool {
        match &self.kind {
            FamilyKind::PrimePrefix => match element.as_nat() {
                Some(w) => primes::first_n_contains(index, w),
                None => false,
            },
            FamilyKind::Cumulative { base, steps } => {
                base.contains(element)
                    || (index >= 1 && steps.range(1..=index).any(|(_, s)| s.contains(element)))
            }
            FamilyKind::PeriodicTable(table) => table.get(element).is_some_and(|s| s.member(index)),
            FamilyKind::Constant(set) => set.contains(element),
            FamilyKind::PairwiseDisjoint(blocks) => usize::try_from(index)
                .ok()
                .and_then(|i| blocks.get(i))
                .is_some_and(|b| b.contains(element)),
            FamilyKind::UnionMap { inner, extra } => {
                extra.contains(element) || inner.contains(element, index)
            }
        }
    }

    fn certificate(&self, element: &Element) -> Option<EventuallyPeriodicSet> {
        let everywhere = EventuallyPeriodicSet::naturals;
        Some(match &self.kind {
            FamilyKind::PrimePrefix => match element.as_nat().and_then(primes::rank) {
                Some(rank) => EventuallyPeriodicSet::at_least(rank),
                None => EventuallyPeriodicSet::empty(),
            },
            FamilyKind::Cumulative { base, steps } => {
                if base.contains(element) {
                    everywhere()
                } else {
                    match steps.iter().find(|(_, s)| s.contains(element)) {
                        Some((&k, _)) => EventuallyPeriodicSet::at_least(k as usize),
                        None => EventuallyPeriodicSet::empty(),
                    }
                }
            }
            FamilyKind::PeriodicTable(table) => table
                .get(element)
                .cloned()
                .unwrap_or_else(EventuallyPeriodicSet::empty),
            FamilyKind::Constant(set) => {
                if set.contains(element) {
                    everywhere()
                } else {
                    EventuallyPeriodicSet::empty()
                }
            }
            FamilyKind::PairwiseDisjoint(blocks) => {
                EventuallyPeriodicSet::finite(blocks.iter().position(|b| b.contains(element)))
            }
            FamilyKind::UnionMap { inner, extra } => {
                if extra.contains(element) {
                    everywhere()
                } else {
                    return inner.certificate(element);
                }
            }
        })
    }
}

mod primes {
    use alloc::vec::Vec;

    /// Whether `w` is among the first `n` primes, by enumerating them.
    pub(super) fn first_n_contains(n: u64, w: u64) -> bool {
        let mut found: Vec<u64> = Vec::new();
        let mut candidate = 2u64;
        while (found.len() as u64) < n {
            if found
                .iter()
                .take_while(|&&p| p * p <= candidate)
                .all(|&p| !candidate.is_multiple_of(p))
            {
                if candidate == w {
                    return true;
                }
                found.push(candidate);
            }
            if candidate > w {
                return false;
            }
            candidate += 1;
        }
        false
    }

    pub(super) fn is_prime(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    /// 1-based position of `p` in the sequence of primes.
    pub(super) fn rank(p: u64) -> Option<usize> {
        is_prime(p).then(|| (2..=p).filter(|&k| is_prime(k)).count())
    }
}
