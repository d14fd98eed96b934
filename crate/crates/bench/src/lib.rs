//! Shared fixtures for the criterion benchmarks.

use nil53_core::{Element, GroupParams};

/// A spread of parameter tuples, from the lattice to moderately large entries.
pub fn sample_params() -> Vec<GroupParams> {
    [[1, 0, 1, 1, 0], [2, 1, 3, 4, 1], [6, 2, 9, 12, 3], [97, 13, 89, 83, 1]]
        .into_iter()
        .map(|p| GroupParams::try_from(p).expect("valid fixture"))
        .collect()
}

/// Elements with coordinates growing geometrically, to exercise big-integer paths.
pub fn sample_elements(count: usize) -> Vec<Element> {
    (0..count as i64)
        .map(|i| {
            let s = 3i64.pow((i % 30) as u32);
            Element::from([s, -s / 2 + i, i - 7, 2 * i + 1, -(i % 11) * s / 3])
        })
        .collect()
}
