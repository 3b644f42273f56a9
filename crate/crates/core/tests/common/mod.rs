//! Shared test support: the naive full-enumeration coloring oracle and
//! fixture loading. The oracle is kept independent of the library's
//! search path: it walks every assignment with an odometer and evaluates
#![allow(dead_code)] // each test target uses a different subset
//! relation sides directly off the operation tables.

use quandles::free::{FreeQuandleElement, Symbol};
use quandles::presentation::QuandlePresentation;
use quandles::quandle::FiniteQuandle;

pub fn fixture_path(rel: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(rel)
}

pub fn read_fixture(rel: &str) -> String {
    std::fs::read_to_string(fixture_path(rel))
        .unwrap_or_else(|e| panic!("fixture {rel}: {e}"))
}

fn eval_direct(
    elem: &FreeQuandleElement,
    target: &FiniteQuandle,
    generators: &[Symbol],
    assignment: &[usize],
) -> usize {
    let position = |s: &Symbol| {
        generators
            .iter()
            .position(|g| g == s)
            .expect("relation symbol is a generator")
    };
    let mut acc = assignment[position(elem.base())];
    for letter in elem.tail().letters() {
        let v = assignment[position(&letter.sym)];
        acc = if letter.inverse {
            target.inv_op(acc, v)
        } else {
            target.op(acc, v)
        };
    }
    acc
}

/// Counts colorings by checking every one of the |T|^|X| assignments.
pub fn naive_count_colorings(pres: &QuandlePresentation, target: &FiniteQuandle) -> u64 {
    let generators = pres.generators();
    let n = target.size();
    if generators.is_empty() {
        return 1;
    }
    if n == 0 {
        return 0;
    }
    let mut assignment = vec![0usize; generators.len()];
    let mut count = 0u64;
    loop {
        let ok = pres.relations().iter().all(|(lhs, rhs)| {
            eval_direct(lhs, target, generators, &assignment)
                == eval_direct(rhs, target, generators, &assignment)
        });
        if ok {
            count += 1;
        }
        let mut i = 0;
        loop {
            assignment[i] += 1;
            if assignment[i] < n {
                break;
            }
            assignment[i] = 0;
            i += 1;
            if i == assignment.len() {
                return count;
            }
        }
    }
}

/// Battery coloring counts via the naive oracle.
pub fn naive_profile(
    pres: &QuandlePresentation,
    battery: &[(String, FiniteQuandle)],
) -> Vec<u64> {
    battery
        .iter()
        .map(|(_, t)| naive_count_colorings(pres, t))
        .collect()
}
