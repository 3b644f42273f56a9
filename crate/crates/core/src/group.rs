//! Finite groups as multiplication tables, used to build conjugation
//! quandles `conj(G)` with `a ▷ b = b⁻¹ a b`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quandle::FiniteQuandle;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    size: usize,
    mul: Vec<usize>, // row-major, mul[a*n + b] = a·b
    inv: Vec<usize>,
    identity: usize,
}

impl GroupTable {
    /// Validates a multiplication table: two-sided identity, inverses,
    /// associativity. Returns a witness in the error message on failure.
    pub fn from_mul_table(table: Vec<Vec<usize>>) -> Result<Self> {
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
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inv[a] = b,
                None => return Err(Error::NotAGroup(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = table[a][b];
            }
        }
        Ok(GroupTable {
            size: n,
            mul,
            inv,
            identity,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|a| (0..self.size).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// The conjugation quandle: `a ▷ b = b⁻¹ a b`, `a ◁ b = b a b⁻¹`.
    pub fn conjugation_quandle(&self) -> FiniteQuandle {
        let n = self.size;
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| self.mul(self.inv(b), self.mul(a, b)))
                    .collect()
            })
            .collect();
        FiniteQuandle::from_table(table).expect("conjugation in a group satisfies the axioms")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GroupTableFile = serde_json::from_str(text)
            .map_err(|e| Error::parse_at(e.line(), e.column(), e.to_string()))?;
        if file.mul.len() != file.size {
            return Err(Error::SizeMismatch(format!(
                "declared size {} but table has {} rows",
                file.size,
                file.mul.len()
            )));
        }
        let group = GroupTable::from_mul_table(file.mul)?;
        if let Some(declared) = file.inv {
            if declared != group.inv {
                return Err(Error::NotAGroup(
                    "declared inverse table disagrees with the multiplication table".into(),
                ));
            }
        }
        Ok(group)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GroupTableFile {
            size: self.size,
            mul: self.mul_table(),
            inv: Some(self.inv.clone()),
        })
        .expect("group table serializes")
    }
}

/// On-disk group format: `{"size": n, "mul": [[...]], "inv": [...]}` with
/// `inv` optional (derived when absent).
#[derive(Serialize, Deserialize)]
pub struct GroupTableFile {
    pub size: usize,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inv: Option<Vec<usize>>,
}

/// The cyclic group Z_n with addition mod n.
pub fn cyclic(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::Domain("cyclic group needs n >= 1".into()));
    }
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    GroupTable::from_mul_table(table)
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a ∘ b)(x) = a(b(x))
    b.iter().map(|&x| a[x]).collect()
}

/// Closure of a set of permutations under composition, as a group table.
/// Element 0 is the identity; the rest follow in BFS discovery order.
pub fn permutation_group(generators: &[Vec<usize>]) -> Result<GroupTable> {
    let degree = generators
        .first()
        .map(|g| g.len())
        .ok_or_else(|| Error::Domain("permutation group needs at least one generator".into()))?;
    for g in generators {
        let mut seen = vec![false; degree];
        if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::Domain(format!("not a permutation of 0..{degree}: {g:?}")));
        }
    }
    let identity: Vec<usize> = (0..degree).collect();
    let mut elements = vec![identity];
    let mut frontier = 0;
    while frontier < elements.len() {
        let current = elements[frontier].clone();
        for g in generators {
            let next = compose(g, &current);
            if !elements.contains(&next) {
                elements.push(next);
            }
        }
        frontier += 1;
    }
    let index_of = |p: &[usize]| elements.iter().position(|e| e == p).unwrap();
    let table = elements
        .iter()
        .map(|a| elements.iter().map(|b| index_of(&compose(a, b))).collect())
        .collect();
    GroupTable::from_mul_table(table)
}

/// The symmetric group S3 (order 6) as a permutation group.
pub fn symmetric_3() -> GroupTable {
    permutation_group(&[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3 generators")
}

/// The dihedral group of the n-gon (order 2n), n >= 1.
pub fn dihedral_group(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::Domain("dihedral group needs n >= 1".into()));
    }
    if n == 1 {
        // D1 is Z2: a single reflection.
        return permutation_group(&[vec![1, 0]]);
    }
    if n == 2 {
        // D2 is the Klein four-group: two commuting swaps on four points.
        return permutation_group(&[vec![1, 0, 2, 3], vec![0, 1, 3, 2]]);
    }
    let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    permutation_group(&[rotation, reflection])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::verify_axioms;

    #[test]
    fn trivial_group_gives_one_element_quandle() {
        let g = cyclic(1).unwrap();
        let q = g.conjugation_quandle();
        assert_eq!(q.size(), 1);
    }

    #[test]
    fn s3_conjugation_is_a_quandle_fixing_diagonal() {
        let q = symmetric_3().conjugation_quandle();
        assert_eq!(q.size(), 6);
        assert!(verify_axioms(&q.table()).unwrap().is_valid());
        for a in 0..6 {
            assert_eq!(q.op(a, a), a);
        }
    }

    #[test]
    fn abelian_conjugation_is_trivial_in_each_row() {
        let q = cyclic(4).unwrap().conjugation_quandle();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(q.op(x, y), x);
            }
        }
    }

    #[test]
    fn dihedral_group_orders() {
        for n in 1..=5 {
            assert_eq!(dihedral_group(n).unwrap().size(), 2 * n);
        }
    }

    #[test]
    fn non_group_table_is_rejected_with_witness() {
        // A latin-square-free table: no identity.
        let err = GroupTable::from_mul_table(vec![vec![1, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotAGroup(_)));
    }

    #[test]
    fn group_json_round_trip_and_inv_check() {
        let g = symmetric_3();
        let back = GroupTable::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
        // A wrong declared inverse table is rejected.
        let mut bad: GroupTableFile = serde_json::from_str(&g.to_json()).unwrap();
        if let Some(inv) = bad.inv.as_mut() {
            inv.swap(1, 2);
        }
        let bad_text = serde_json::to_string(&bad).unwrap();
        assert!(GroupTable::from_json(&bad_text).is_err());
    }
}
