//! Shared inputs for the criterion benchmarks.

use glrack_core::diagram::StabilizationKind;
use glrack_core::{examples, FrontCode, GlRack};

/// The trefoil with `times` positive and `times` negative stabilizations on
/// its first arc. Cusp exponents grow while the arc count stays at three.
pub fn stabilized_trefoil(times: u32) -> FrontCode {
    examples::trefoil()
        .stabilize(StabilizationKind::Plus, 0, times)
        .and_then(|k| k.stabilize(StabilizationKind::Minus, 0, times))
        .expect("arc 1 exists")
}

/// Racks paired with a short label for benchmark ids.
pub fn bench_racks() -> Vec<(&'static str, GlRack)> {
    vec![
        ("perm3", examples::permutation3()),
        ("block6", examples::block6()),
        ("mixed6", examples::mixed6()),
    ]
}
