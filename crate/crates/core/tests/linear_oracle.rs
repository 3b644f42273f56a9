//! An independent linear-algebra oracle for dihedral coloring counts.
//!
//! Colorings into the dihedral quandle on p elements (p prime) are the
//! solutions of the Fox coloring system: at every crossing with over
//! arc y and under arcs x, z, the equation x + z − 2y ≡ 0 (mod p). The
//! number of colorings is p^(arcs − rank). Gaussian elimination over
//! F_p shares nothing with the backtracking search, so agreement
//! validates arc merging and the relation extraction end to end.

mod common;

use quandles::braid::BraidWord;
use quandles::link::LinkDiagram;
use quandles::quandle::FiniteQuandle;

use common::read_fixture;

fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map(Vec::len).unwrap_or(0);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = mod_inverse(rows[rank][col] % p, p);
        for v in rows[rank].iter_mut() {
            *v = (*v % p) * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] % p != 0 {
                let factor = rows[r][col] % p;
                for c in 0..cols {
                    let sub = factor * rows[rank][c] % p;
                    rows[r][c] = (rows[r][c] % p + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p for prime p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

fn fox_coloring_count(diagram: &LinkDiagram, p: u64) -> u64 {
    let arcs = diagram.arcs().len();
    let rows: Vec<Vec<u64>> = diagram
        .crossings()
        .iter()
        .map(|c| {
            let mut row = vec![0u64; arcs];
            row[c.under_in] = (row[c.under_in] + 1) % p;
            row[c.under_out] = (row[c.under_out] + 1) % p;
            row[c.over] = (row[c.over] + 2 * (p - 1)) % p;
            row
        })
        .collect();
    let rank = rank_mod_p(rows, p);
    p.pow((arcs - rank) as u32)
}

#[test]
fn search_counts_match_the_fox_linear_system() {
    let fixtures = [
        "pd/unknot.pd",
        "pd/trefoil.pd",
        "pd/figure_eight.pd",
        "pd/cinquefoil.pd",
        "pd/t53.pd",
        "pd/square_knot.pd",
        "pd/stevedore.pd",
    ];
    for fixture in fixtures {
        let diagram = quandles::link::parse_pd(&read_fixture(fixture)).unwrap();
        let pres = diagram.quandle_presentation();
        for p in [3u64, 5, 7] {
            let target = FiniteQuandle::dihedral(p as usize).unwrap();
            let searched = pres.count_colorings(&target, false, 1).count;
            let linear = fox_coloring_count(&diagram, p);
            assert_eq!(searched, linear, "{fixture} at p={p}");
        }
    }
}

#[test]
fn braid_closures_match_the_fox_linear_system() {
    for word in ["2: 1 1 1", "2: 1 1 1 1 1", "3: 1 2 1 2 1 2 1 2 1 2", "3: 1 1 1 -2 -2 -2", "4: 1 -2 3 1 -2"] {
        let diagram = BraidWord::parse(word).unwrap().closure_diagram().unwrap();
        let pres = diagram.quandle_presentation();
        for p in [3u64, 5, 7] {
            let target = FiniteQuandle::dihedral(p as usize).unwrap();
            assert_eq!(
                pres.count_colorings(&target, false, 1).count,
                fox_coloring_count(&diagram, p),
                "{word} at p={p}"
            );
        }
    }
}
