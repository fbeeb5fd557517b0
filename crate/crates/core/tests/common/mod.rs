#![allow(dead_code)]

use mostset_core::density::{EventuallyPeriodicSet, RawPeriodicSet};
use proptest::prelude::*;

/// Raw descriptions with thresholds up to 16 and periods up to 24.
pub fn raw_set() -> impl Strategy<Value = RawPeriodicSet> {
    (0usize..=16, 1usize..=24).prop_flat_map(|(threshold, period)| {
        (
            proptest::collection::vec(any::<bool>(), threshold),
            proptest::collection::vec(any::<bool>(), period),
        )
            .prop_map(move |(prefix, mask)| RawPeriodicSet {
                threshold,
                prefix,
                period,
                residues: mask
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(r, _)| r)
                    .collect(),
            })
    })
}

pub fn eps() -> impl Strategy<Value = EventuallyPeriodicSet> {
    raw_set().prop_map(|raw| EventuallyPeriodicSet::from_raw(&raw).unwrap())
}

/// Membership straight from the raw fields, without canonicalization.
pub fn raw_member(raw: &RawPeriodicSet, n: u64) -> bool {
    if (n as usize) < raw.threshold {
        raw.prefix[n as usize]
    } else {
        raw.residues.contains(&((n % raw.period as u64) as usize))
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    let mut x = a;
    let mut y = b;
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Indices on which two sets are compared pointwise.
pub fn horizon(a: &EventuallyPeriodicSet, b: &EventuallyPeriodicSet) -> u64 {
    (a.threshold().max(b.threshold()) + 4 * lcm(a.period(), b.period())) as u64
}
