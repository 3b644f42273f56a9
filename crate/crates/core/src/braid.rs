//! Braid words, the induced action on free-quandle generators, closure
//! presentations, and torus-knot braids.
//!
//! The generator σ_i is the positive crossing in which the strand at
//! position i+1 passes over the strand at position i:
//!
//! ```text
//! σ_i:  (…, s_i, s_{i+1}, …) ↦ (…, s_{i+1}, s_i ▷ s_{i+1}, …)
//! σ_i⁻¹:(…, s_i, s_{i+1}, …) ↦ (…, s_{i+1} ◁ s_i, s_i, …)
//! ```
//!
//! The convention is fixed so that the closure presentation and the
//! quandle presentation of the closure diagram have the same coloring
//! counts, which the tests enforce.

use std::fmt;

use crate::error::{Error, Result};
use crate::free::{FreeQuandleElement, Symbol};
use crate::link::{parse_pd, LinkDiagram};
use crate::presentation::QuandlePresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BraidLetter {
    /// 0-based: crosses strand positions `index` and `index + 1`.
    pub index: usize,
    pub positive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Domain("a braid needs at least one strand".into()));
        }
        for l in &letters {
            if l.index + 1 >= strands {
                return Err(Error::Domain(format!(
                    "braid letter index {} out of range for {} strands",
                    l.index + 1,
                    strands
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses the text format `q: i1 i2 ...` with signed 1-based indices,
    /// e.g. `2: 1 1 1` for σ₁³ on two strands.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::parse_at(1, 1, msg);
        let (head, rest) = text
            .split_once(':')
            .ok_or_else(|| bad("expected `strands: letters`".into()))?;
        let strands: usize = head
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad strand count {:?}", head.trim())))?;
        let mut letters = Vec::new();
        for tok in rest.split_whitespace() {
            let n: i64 = tok
                .parse()
                .map_err(|_| bad(format!("bad braid letter {tok:?}")))?;
            if n == 0 {
                return Err(bad("braid letter 0 is not a generator".into()));
            }
            letters.push(BraidLetter {
                index: (n.unsigned_abs() as usize) - 1,
                positive: n > 0,
            });
        }
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    fn strand_symbols(&self) -> Vec<Symbol> {
        (1..=self.strands)
            .map(|i| Symbol::new(format!("x{i}")).expect("generated name"))
            .collect()
    }

    /// Applies the braid to the tuple of free generators (x1, …, xq) and
    /// returns the final tuple.
    pub fn strand_action(&self) -> Vec<FreeQuandleElement> {
        let mut tuple: Vec<FreeQuandleElement> = self
            .strand_symbols()
            .into_iter()
            .map(FreeQuandleElement::generator)
            .collect();
        for l in &self.letters {
            let (i, j) = (l.index, l.index + 1);
            if l.positive {
                let new_j = tuple[i].op(&tuple[j]);
                tuple.swap(i, j);
                tuple[j] = new_j;
            } else {
                let new_i = tuple[j].inv_op(&tuple[i]);
                tuple[j] = tuple[i].clone();
                tuple[i] = new_i;
            }
        }
        tuple
    }

    /// Presentation of the closure: ⟨x1..xq | x_j = (action)_j⟩.
    pub fn closure_presentation(&self) -> QuandlePresentation {
        let generators = self.strand_symbols();
        let action = self.strand_action();
        let relations = generators
            .iter()
            .cloned()
            .map(FreeQuandleElement::generator)
            .zip(action)
            .collect();
        QuandlePresentation::new(generators, relations).expect("braid symbols are distinct")
    }

    /// PD text of the closure diagram, in signed `X±` form with `O` loops
    /// for strands that meet no crossing.
    pub fn closure_pd(&self) -> String {
        let q = self.strands;
        let mut next_edge = q + 1;
        let mut fresh = || {
            let e = next_edge;
            next_edge += 1;
            e
        };
        // frontier[i] = edge id currently at strand position i+1.
        let mut frontier: Vec<usize> = (1..=q).collect();
        let mut tuples: Vec<(bool, [usize; 4])> = Vec::new();
        for l in &self.letters {
            let (i, j) = (l.index, l.index + 1);
            if l.positive {
                // under: frontier[i] -> u', over: frontier[j] -> o'.
                let (o_out, u_out) = (fresh(), fresh());
                tuples.push((true, [frontier[i], o_out, u_out, frontier[j]]));
                frontier[i] = o_out;
                frontier[j] = u_out;
            } else {
                // under: frontier[j] -> u', over: frontier[i] -> o'.
                let (u_out, o_out) = (fresh(), fresh());
                tuples.push((false, [frontier[j], frontier[i], u_out, o_out]));
                frontier[i] = u_out;
                frontier[j] = o_out;
            }
        }
        // Closure: the final edge at position i is the initial edge i+1.
        let mut rename: Vec<usize> = (0..next_edge).collect();
        let mut untouched = Vec::new();
        for (i, &final_edge) in frontier.iter().enumerate() {
            let initial = i + 1;
            if final_edge == initial {
                untouched.push(initial);
            } else {
                rename[final_edge] = initial;
            }
        }
        let mut out = String::new();
        for (positive, slots) in tuples {
            let s: Vec<String> = slots.iter().map(|&e| rename[e].to_string()).collect();
            let sign = if positive { "+" } else { "-" };
            out.push_str(&format!("X{sign}[{},{},{},{}]; ", s[0], s[1], s[2], s[3]));
        }
        for e in untouched {
            out.push_str(&format!("O[{e}]; "));
        }
        out.trim_end().trim_end_matches(';').to_string()
    }

    pub fn closure_diagram(&self) -> Result<LinkDiagram> {
        parse_pd(&self.closure_pd())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for l in &self.letters {
            let n = (l.index + 1) as i64;
            write!(f, " {}", if l.positive { n } else { -n })?;
        }
        Ok(())
    }
}

/// The torus-knot braid (σ₁σ₂⋯σ_{q−1})^p on q strands, for p > q > 1.
/// Non-coprime (p, q) is accepted and yields a torus link.
pub fn torus_knot_braid(p: usize, q: usize) -> Result<BraidWord> {
    if q < 2 || p <= q {
        return Err(Error::Domain(format!(
            "torus braid needs p > q > 1, got p={p}, q={q}"
        )));
    }
    let letters = (0..p)
        .flat_map(|_| (0..q - 1).map(|i| BraidLetter { index: i, positive: true }))
        .collect();
    BraidWord::new(q, letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::FiniteQuandle;

    fn elem(s: &str) -> FreeQuandleElement {
        s.parse().unwrap()
    }

    #[test]
    fn empty_braid_fixes_the_generators() {
        let b = BraidWord::parse("3:").unwrap();
        assert_eq!(
            b.strand_action(),
            vec![elem("x1"), elem("x2"), elem("x3")]
        );
        // Closure is the 3-component unlink: free on 3 after simplify.
        let p = b.closure_presentation().simplify();
        assert_eq!(p.generators().len(), 3);
        assert!(p.relations().is_empty());
    }

    #[test]
    fn single_positive_letter_action() {
        let b = BraidWord::parse("2: 1").unwrap();
        assert_eq!(b.strand_action(), vec![elem("x2"), elem("x1 ^ x2")]);
    }

    #[test]
    fn inverse_letter_undoes_the_action() {
        let b = BraidWord::parse("2: 1 -1").unwrap();
        assert_eq!(b.strand_action(), vec![elem("x1"), elem("x2")]);
    }

    #[test]
    fn sigma1_cubed_closure_is_a_trefoil() {
        let b = BraidWord::parse("2: 1 1 1").unwrap();
        let t = FiniteQuandle::dihedral(3).unwrap();
        let braid_route = b.closure_presentation().count_colorings(&t, false, 1).count;
        assert_eq!(braid_route, 9);
        let pd_route = b
            .closure_diagram()
            .unwrap()
            .quandle_presentation()
            .count_colorings(&t, false, 1)
            .count;
        assert_eq!(pd_route, 9);
    }

    #[test]
    fn closure_pd_of_empty_braid_is_an_unlink() {
        let b = BraidWord::parse("2:").unwrap();
        assert_eq!(b.closure_pd(), "O[1]; O[2]");
        let d = b.closure_diagram().unwrap();
        assert_eq!(d.n_components(), 2);
    }

    #[test]
    fn torus_braid_shapes() {
        let b = torus_knot_braid(3, 2).unwrap();
        assert_eq!(b.to_string(), "2: 1 1 1");
        let b = torus_knot_braid(5, 2).unwrap();
        assert_eq!(b.letters().len(), 5);
        let b = torus_knot_braid(5, 3).unwrap();
        assert_eq!(b.strands(), 3);
        assert_eq!(b.letters().len(), 10);
        assert_eq!(b.closure_presentation().generators().len(), 3);
    }

    #[test]
    fn torus_braid_rejects_bad_parameters() {
        assert!(torus_knot_braid(2, 2).is_err());
        assert!(torus_knot_braid(5, 1).is_err());
        assert!(torus_knot_braid(3, 5).is_err());
    }

    #[test]
    fn braid_letter_out_of_range_is_rejected() {
        assert!(BraidWord::parse("2: 2").is_err());
        assert!(BraidWord::parse("2: 0").is_err());
        assert!(BraidWord::parse("x: 1").is_err());
    }

    #[test]
    fn cinquefoil_counts_via_both_routes() {
        let b = torus_knot_braid(5, 2).unwrap();
        let t = FiniteQuandle::dihedral(5).unwrap();
        assert_eq!(
            b.closure_presentation().count_colorings(&t, false, 1).count,
            25
        );
        assert_eq!(
            b.closure_diagram()
                .unwrap()
                .quandle_presentation()
                .count_colorings(&t, false, 1)
                .count,
            25
        );
    }
}
