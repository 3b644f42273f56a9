//! The standard battery of finite coloring targets used by checks and
//! tests: small, fast, and enough to distinguish the fixture corpus.

use crate::group::symmetric_3;
use crate::presentation::QuandlePresentation;
use crate::quandle::FiniteQuandle;

/// Dihedral quandles of order 3, 4, 5, 7 and the conjugation quandle of
/// S3, with their display names.
pub fn standard_battery() -> Vec<(String, FiniteQuandle)> {
    let mut battery: Vec<(String, FiniteQuandle)> = [3, 4, 5, 7]
        .into_iter()
        .map(|n| {
            (
                format!("dihedral:{n}"),
                FiniteQuandle::dihedral(n).expect("n >= 1"),
            )
        })
        .collect();
    battery.push(("conj:S3".to_string(), symmetric_3().conjugation_quandle()));
    battery
}

/// Coloring counts of a presentation across a battery, in battery order.
pub fn coloring_profile(
    pres: &QuandlePresentation,
    battery: &[(String, FiniteQuandle)],
) -> Vec<u64> {
    battery
        .iter()
        .map(|(_, t)| pres.count_colorings(t, false, 1).count)
        .collect()
}
