//! Finite quandles as operation tables.
//!
//! A table on `{0..n-1}` is a quandle when every element is idempotent,
//! every right translation is a bijection, and the operation is right
//! self-distributive. The inverse operation ◁ is precomputed at
//! construction since evaluation uses it as often as ▷.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cap on reported axiom violations for very bad tables.
pub const MAX_REPORTED_VIOLATIONS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AxiomViolation {
    /// `x ▷ x ≠ x`.
    NotIdempotent { x: usize },
    /// Right translation by `y` maps both `x1` and `x2` to the same value.
    NotBijective { y: usize, x1: usize, x2: usize },
    /// `(x ▷ y) ▷ z ≠ (x ▷ z) ▷ (y ▷ z)`.
    NotDistributive { x: usize, y: usize, z: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::NotIdempotent { x } => write!(f, "axiom 1 fails at x={x}"),
            AxiomViolation::NotBijective { y, x1, x2 } => {
                write!(f, "axiom 2 fails: column y={y} sends x={x1} and x={x2} to the same value")
            }
            AxiomViolation::NotDistributive { x, y, z } => {
                write!(f, "axiom 3 fails at (x,y,z)=({x},{y},{z})")
            }
        }
    }
}

/// Result of an exhaustive axiom scan over an operation table.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub size: usize,
    pub violations: Vec<AxiomViolation>,
    /// True when more violations exist than were recorded.
    pub truncated: bool,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks squareness and entry range of a raw table.
fn check_table_shape(table: &[Vec<usize>]) -> Result<usize> {
    let n = table.len();
    for (row, r) in table.iter().enumerate() {
        if r.len() != n {
            return Err(Error::RaggedTable {
                row,
                got: r.len(),
                expected: n,
            });
        }
        for (col, &value) in r.iter().enumerate() {
            if value >= n {
                return Err(Error::TableEntry {
                    row,
                    col,
                    value,
                    size: n,
                });
            }
        }
    }
    Ok(n)
}

/// Exhaustively checks the three quandle axioms on a raw table, reporting
/// at most [`MAX_REPORTED_VIOLATIONS`] violations with witnesses.
pub fn verify_axioms(table: &[Vec<usize>]) -> Result<AxiomReport> {
    let n = check_table_shape(table)?;
    let mut violations = Vec::new();
    let mut truncated = false;
    let record = |violations: &mut Vec<AxiomViolation>, v: AxiomViolation| {
        if violations.len() < MAX_REPORTED_VIOLATIONS {
            violations.push(v);
            true
        } else {
            false
        }
    };

    'scan: {
        for x in 0..n {
            if table[x][x] != x && !record(&mut violations, AxiomViolation::NotIdempotent { x }) {
                truncated = true;
                break 'scan;
            }
        }
        for y in 0..n {
            let mut seen = vec![usize::MAX; n];
            for x in 0..n {
                let v = table[x][y];
                if seen[v] != usize::MAX {
                    if !record(
                        &mut violations,
                        AxiomViolation::NotBijective { y, x1: seen[v], x2: x },
                    ) {
                        truncated = true;
                        break 'scan;
                    }
                } else {
                    seen[v] = x;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[table[x][z]][table[y][z]]
                        && !record(&mut violations, AxiomViolation::NotDistributive { x, y, z })
                    {
                        truncated = true;
                        break 'scan;
                    }
                }
            }
        }
    }

    Ok(AxiomReport {
        size: n,
        violations,
        truncated,
    })
}

/// A finite quandle: an `n × n` operation table with verified axioms and
/// the derived inverse table. Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteQuandle {
    size: usize,
    op: Vec<usize>,     // row-major, op[x*n + y] = x ▷ y
    inv_op: Vec<usize>, // inv_op[x*n + y] = x ◁ y
}

impl FiniteQuandle {
    /// Builds a quandle from a raw table, rejecting tables that violate
    /// the axioms.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let report = verify_axioms(&table)?;
        if !report.is_valid() {
            let shown = report
                .violations
                .iter()
                .take(3)
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            return Err(Error::NotAQuandle(shown));
        }
        let n = report.size;
        let mut op = vec![0; n * n];
        let mut inv_op = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                op[x * n + y] = table[x][y];
            }
        }
        // Invert each column permutation: x ▷ y = z  ⟺  z ◁ y = x.
        for y in 0..n {
            for x in 0..n {
                inv_op[op[x * n + y] * n + y] = x;
            }
        }
        Ok(FiniteQuandle { size: n, op, inv_op })
    }

    /// The dihedral quandle on `{0..n-1}` with `x ▷ y = 2y − x (mod n)`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("dihedral quandle needs n >= 1".into()));
        }
        let table = (0..n)
            .map(|x| (0..n).map(|y| (2 * y + n - x % n) % n).collect())
            .collect();
        FiniteQuandle::from_table(table)
    }

    /// The one-element quandle.
    pub fn trivial() -> Self {
        FiniteQuandle::dihedral(1).expect("1-element quandle")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `x ▷ y`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x * self.size + y]
    }

    /// `x ◁ y`.
    #[inline]
    pub fn inv_op(&self, x: usize, y: usize) -> usize {
        self.inv_op[x * self.size + y]
    }

    /// The operation table as nested rows (row x, column y holds x ▷ y).
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|x| (0..self.size).map(|y| self.op(x, y)).collect())
            .collect()
    }

    /// True when ▷ = ◁ (a kei); dihedral quandles are the main example.
    pub fn is_involutory(&self) -> bool {
        self.op == self.inv_op
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&QuandleTableFile {
            size: self.size,
            op: self.table(),
        })
        .expect("quandle table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: QuandleTableFile = serde_json::from_str(text)
            .map_err(|e| Error::parse_at(e.line(), e.column(), e.to_string()))?;
        if file.op.len() != file.size {
            return Err(Error::SizeMismatch(format!(
                "declared size {} but table has {} rows",
                file.size,
                file.op.len()
            )));
        }
        FiniteQuandle::from_table(file.op)
    }
}

impl fmt::Debug for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteQuandle(n={})", self.size)
    }
}

/// On-disk quandle table format: `{"size": n, "op": [[...], ...]}`.
#[derive(Serialize, Deserialize)]
pub struct QuandleTableFile {
    pub size: usize,
    pub op: Vec<Vec<usize>>,
}

/// Witness that a map fails to be a quandle homomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCounterexample {
    pub x: usize,
    pub y: usize,
    /// Which operation is broken: true for ▷, false for ◁.
    pub forward: bool,
}

/// A function between two finite quandles, given by its value table.
#[derive(Clone, Debug)]
pub struct QuandleMap {
    source: FiniteQuandle,
    target: FiniteQuandle,
    values: Vec<usize>,
}

impl QuandleMap {
    pub fn new(source: FiniteQuandle, target: FiniteQuandle, values: Vec<usize>) -> Result<Self> {
        if values.len() != source.size() {
            return Err(Error::SizeMismatch(format!(
                "map has {} values for a source of size {}",
                values.len(),
                source.size()
            )));
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= target.size()) {
            return Err(Error::SizeMismatch(format!(
                "map value {} out of range for target of size {}",
                bad,
                target.size()
            )));
        }
        Ok(QuandleMap {
            source,
            target,
            values,
        })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// First pair on which the map fails to preserve ▷ or ◁, if any.
    pub fn counterexample(&self) -> Option<HomCounterexample> {
        let n = self.source.size();
        for x in 0..n {
            for y in 0..n {
                let fx = self.values[x];
                let fy = self.values[y];
                if self.values[self.source.op(x, y)] != self.target.op(fx, fy) {
                    return Some(HomCounterexample { x, y, forward: true });
                }
                if self.values[self.source.inv_op(x, y)] != self.target.inv_op(fx, fy) {
                    return Some(HomCounterexample { x, y, forward: false });
                }
            }
        }
        None
    }

    pub fn is_homomorphism(&self) -> bool {
        self.counterexample().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_element_table_is_valid() {
        let report = verify_axioms(&[vec![0]]).unwrap();
        assert!(report.is_valid());
    }

    #[test]
    fn dihedral_three_matches_formula_and_axioms() {
        let q = FiniteQuandle::dihedral(3).unwrap();
        assert_eq!(q.op(0, 1), 2);
        let report = verify_axioms(&q.table()).unwrap();
        assert!(report.is_valid());
        assert!(q.is_involutory());
    }

    #[test]
    fn dihedral_zero_is_rejected() {
        assert!(matches!(FiniteQuandle::dihedral(0), Err(Error::Domain(_))));
    }

    #[test]
    fn constant_rows_violate_bijectivity() {
        // [[0,1],[0,1]]: columns are constant, axiom 2 fails; axiom 1 also
        // fails at x=0? No: op[0][0]=0 and op[1][1]=1, so axiom 1 holds.
        let report = verify_axioms(&[vec![0, 1], vec![0, 1]]).unwrap();
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .all(|v| matches!(v, AxiomViolation::NotBijective { .. })));
    }

    #[test]
    fn out_of_range_entry_names_the_cell() {
        let err = verify_axioms(&[vec![0, 2], vec![0, 1]]).unwrap_err();
        assert!(matches!(
            err,
            Error::TableEntry { row: 0, col: 1, value: 2, size: 2 }
        ));
    }

    #[test]
    fn violation_report_is_capped() {
        // The all-zeros table on 8 elements breaks axioms everywhere.
        let table = vec![vec![0; 8]; 8];
        let report = verify_axioms(&table).unwrap();
        assert!(report.truncated);
        assert_eq!(report.violations.len(), MAX_REPORTED_VIOLATIONS);
    }

    #[test]
    fn derived_inverse_table_is_consistent() {
        for n in 1..=8 {
            let q = FiniteQuandle::dihedral(n).unwrap();
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(q.inv_op(q.op(x, y), y), x);
                    assert_eq!(q.op(q.inv_op(x, y), y), x);
                }
            }
        }
    }

    #[test]
    fn identity_and_constant_maps_are_homomorphisms() {
        let q = FiniteQuandle::dihedral(3).unwrap();
        let id = QuandleMap::new(q.clone(), q.clone(), vec![0, 1, 2]).unwrap();
        assert!(id.is_homomorphism());
        let constant = QuandleMap::new(q.clone(), q.clone(), vec![1, 1, 1]).unwrap();
        assert!(constant.is_homomorphism());
    }

    #[test]
    fn affine_swaps_on_dihedral3_are_automorphisms() {
        // Every bijection of the 3-element dihedral quandle is affine
        // (x -> ±x + b), hence a homomorphism.
        let q = FiniteQuandle::dihedral(3).unwrap();
        let swap = QuandleMap::new(q.clone(), q, vec![1, 0, 2]).unwrap();
        assert!(swap.is_homomorphism());
    }

    #[test]
    fn collapsing_map_has_a_counterexample() {
        let q = FiniteQuandle::dihedral(3).unwrap();
        let v = vec![0usize, 0, 2];
        let map = QuandleMap::new(q.clone(), q.clone(), v.clone()).unwrap();
        let ce = map.counterexample().expect("collapse breaks a relation");
        // Verify the witness really is a counterexample, independent of
        // which pair the scan found first.
        if ce.forward {
            assert_ne!(v[q.op(ce.x, ce.y)], q.op(v[ce.x], v[ce.y]));
        } else {
            assert_ne!(v[q.inv_op(ce.x, ce.y)], q.inv_op(v[ce.x], v[ce.y]));
        }
    }

    #[test]
    fn map_size_mismatch_is_an_error() {
        let q = FiniteQuandle::dihedral(3).unwrap();
        assert!(QuandleMap::new(q.clone(), q.clone(), vec![0, 1]).is_err());
        assert!(QuandleMap::new(q.clone(), q, vec![0, 1, 5]).is_err());
    }

    #[test]
    fn table_json_round_trip() {
        let q = FiniteQuandle::dihedral(4).unwrap();
        let txt = q.to_json();
        let back = FiniteQuandle::from_json(&txt).unwrap();
        assert_eq!(q, back);
    }
}
