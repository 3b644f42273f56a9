//! Ribbon concordances as banded diagrams, their quandle presentations,
//! and the computable consequences of the concordance theorem.
//!
//! A ribbon concordance from K1 down to K0 is encoded from the K0 side:
//! the base diagram is K0 together with one crossingless loop per birth,
//! and each band names the two arcs its saddle merges. The presentation
//! of the concordance surface is then K0's presentation plus a fresh
//! generator per birth and a relation `a = b` per band.
//!
//! Since the surface quandle is a quotient of K1's quandle, every
//! coloring of the surface yields a distinct coloring of K1; in counts,
//! `col_T(C) <= col_T(K1)` for every finite target T. Restriction to the
//! K0 arc generators is always a valid K0-coloring because K0's relations
//! are a subset. The reports check both; a violation certifies that the
//! input does not describe a ribbon concordance.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free::{FreeQuandleElement, Symbol};
use crate::link::{parse_pd, Dsu, LinkDiagram};
use crate::presentation::QuandlePresentation;
use crate::quandle::FiniteQuandle;

#[derive(Clone, Debug)]
pub struct RibbonConcordanceDiagram {
    /// K0 plus the birth loops. The K0 component is the one containing
    /// the first arc; every other component must be a crossingless loop.
    base: LinkDiagram,
    bands: Vec<(Symbol, Symbol)>,
    k1: LinkDiagram,
    /// Witness of the top-of-movie identification: each K1 arc as an
    /// element over the base generators.
    k1_arc_map: BTreeMap<Symbol, FreeQuandleElement>,
}

impl RibbonConcordanceDiagram {
    pub fn new(
        base: LinkDiagram,
        bands: Vec<(Symbol, Symbol)>,
        k1: LinkDiagram,
        k1_arc_map: BTreeMap<Symbol, FreeQuandleElement>,
    ) -> Result<Self> {
        if base.arcs().is_empty() {
            return Err(Error::Concordance("base diagram is empty".into()));
        }
        // Components other than the first arc's must be single
        // crossingless loops: the births.
        let k0_component = base.component_of(0);
        let mut births = 0usize;
        for (cid, arcs) in base.components().into_iter().enumerate() {
            if cid == k0_component {
                continue;
            }
            let is_loop = arcs.len() == 1 && base.loop_arcs().contains(&arcs[0]);
            if !is_loop {
                return Err(Error::Concordance(format!(
                    "component of arc `{}` is neither the knot (the first arc's component) \
                     nor a crossingless birth loop",
                    base.arcs()[arcs[0]]
                )));
            }
            births += 1;
        }
        if births != bands.len() {
            return Err(Error::Concordance(format!(
                "{} birth loops but {} bands; an annulus needs equal counts",
                births,
                bands.len()
            )));
        }
        // Each band must merge two distinct circles (no splits), and all
        // circles must end up connected.
        let mut dsu = Dsu::new(base.n_components());
        for (a, b) in &bands {
            let ia = base
                .arc_index(a)
                .ok_or_else(|| Error::Concordance(format!("band references unknown arc `{a}`")))?;
            let ib = base
                .arc_index(b)
                .ok_or_else(|| Error::Concordance(format!("band references unknown arc `{b}`")))?;
            let (ca, cb) = (base.component_of(ia), base.component_of(ib));
            if !dsu.union(ca, cb) {
                return Err(Error::Concordance(format!(
                    "band ({a}, {b}) joins a circle to itself; every saddle must merge"
                )));
            }
        }
        if bands.is_empty() && base.n_components() > 1 {
            return Err(Error::Concordance(
                "no bands but the base has several components".into(),
            ));
        }
        let root = dsu.find(0);
        if (0..base.n_components()).any(|c| dsu.find(c) != root) {
            return Err(Error::Concordance(
                "some birth loop is never connected to the knot".into(),
            ));
        }
        // The arc map must cover exactly the K1 arcs and speak only in
        // base generators.
        for arc in k1.arcs() {
            match k1_arc_map.get(arc) {
                None => {
                    return Err(Error::Concordance(format!(
                        "k1_map is missing arc `{arc}`"
                    )))
                }
                Some(value) => {
                    if let Some(bad) = value
                        .symbols()
                        .into_iter()
                        .find(|s| base.arc_index(s).is_none())
                    {
                        return Err(Error::Concordance(format!(
                            "k1_map value for `{arc}` uses `{bad}`, not a base arc"
                        )));
                    }
                }
            }
        }
        for named in k1_arc_map.keys() {
            if k1.arc_index(named).is_none() {
                return Err(Error::Concordance(format!(
                    "k1_map names `{named}`, not an arc of k1"
                )));
            }
        }
        Ok(RibbonConcordanceDiagram {
            base,
            bands,
            k1,
            k1_arc_map,
        })
    }

    /// The identity concordance K x I, encoded with no births or bands.
    pub fn trivial(diagram: LinkDiagram) -> Result<Self> {
        let map = diagram
            .arcs()
            .iter()
            .map(|a| (a.clone(), FreeQuandleElement::generator(a.clone())))
            .collect();
        RibbonConcordanceDiagram::new(diagram.clone(), Vec::new(), diagram, map)
    }

    pub fn base(&self) -> &LinkDiagram {
        &self.base
    }

    pub fn k1(&self) -> &LinkDiagram {
        &self.k1
    }

    pub fn bands(&self) -> &[(Symbol, Symbol)] {
        &self.bands
    }

    /// Arcs of the K0 component of the base, in arc order.
    pub fn k0_arcs(&self) -> Vec<Symbol> {
        let k0_component = self.base.component_of(0);
        self.base
            .arcs()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.base.component_of(*i) == k0_component)
            .map(|(_, a)| a.clone())
            .collect()
    }

    /// The presentation of the concordance surface: the base presentation
    /// (K0 plus free birth generators) with one relation per band.
    pub fn presentation(&self) -> QuandlePresentation {
        let base = self.base.quandle_presentation();
        let mut relations = base.relations().to_vec();
        for (a, b) in &self.bands {
            relations.push((
                FreeQuandleElement::generator(a.clone()),
                FreeQuandleElement::generator(b.clone()),
            ));
        }
        QuandlePresentation::new(base.generators().to_vec(), relations)
            .expect("bands reference validated base arcs")
    }

    /// Checks the surjectivity consequence per target: `col_T(C) <=
    /// col_T(K1)`, and the pushforward of surface colorings through the
    /// arc map lands on valid, pairwise distinct K1 colorings.
    pub fn check_surjectivity(
        &self,
        targets: &[(String, FiniteQuandle)],
    ) -> SurjectivityReport {
        let c_pres = self.presentation();
        let k1_pres = self.k1.quandle_presentation();
        let mut checks = Vec::new();
        for (name, target) in targets {
            let c_report = c_pres.count_colorings(target, true, 1);
            let k1_count = k1_pres.count_colorings(target, false, 1).count;
            let mut violations = Vec::new();
            if c_report.count > k1_count {
                violations.push(format!(
                    "col(C) = {} exceeds col(K1) = {k1_count}",
                    c_report.count
                ));
            }
            let mut pushed: Vec<Vec<usize>> = Vec::new();
            'colorings: for coloring in c_report.colorings.as_deref().unwrap_or(&[]) {
                let assign = |s: &Symbol| {
                    self.base.arc_index(s).map(|i| coloring[i])
                };
                let mut image = Vec::with_capacity(self.k1.arcs().len());
                for arc in self.k1.arcs() {
                    match self.k1_arc_map[arc].evaluate(target, assign) {
                        Ok(v) => image.push(v),
                        Err(e) => {
                            violations.push(format!(
                                "pushforward of a coloring failed on arc `{arc}`: {e}"
                            ));
                            break 'colorings;
                        }
                    }
                }
                // The pushed assignment must satisfy every K1 relation.
                for (lhs, rhs) in k1_pres.relations() {
                    let value = |e: &FreeQuandleElement| {
                        e.evaluate(target, |s| {
                            self.k1.arc_index(s).map(|i| image[i])
                        })
                        .expect("k1 relations use k1 arcs")
                    };
                    if value(lhs) != value(rhs) {
                        violations.push(format!(
                            "pushforward breaks the relation {lhs} = {rhs} in {name}"
                        ));
                        break 'colorings;
                    }
                }
                pushed.push(image);
            }
            if violations.is_empty() {
                pushed.sort();
                let before = pushed.len();
                pushed.dedup();
                if pushed.len() != before {
                    violations.push(
                        "distinct surface colorings push to the same K1 coloring".into(),
                    );
                }
            }
            checks.push(TargetCheck {
                target: name.clone(),
                col_c: c_report.count,
                col_k1: k1_count,
                violations,
            });
        }
        checks.sort_by(|a, b| a.target.cmp(&b.target));
        SurjectivityReport { checks }
    }

    /// Describes the restriction of surface colorings to the K0 arcs:
    /// image size and fiber sizes. Injectivity of Q(K0) -> Q(C) yields no
    /// counting inequality, so this report is descriptive.
    pub fn check_injectivity(
        &self,
        targets: &[(String, FiniteQuandle)],
    ) -> InjectivityReport {
        let c_pres = self.presentation();
        let k0_arcs = self.k0_arcs();
        let k0_indices: Vec<usize> = k0_arcs
            .iter()
            .map(|a| self.base.arc_index(a).expect("k0 arcs are base arcs"))
            .collect();
        let mut checks = Vec::new();
        for (name, target) in targets {
            let c_report = c_pres.count_colorings(target, true, 1);
            let mut fibers: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
            for coloring in c_report.colorings.as_deref().unwrap_or(&[]) {
                let restricted: Vec<usize> =
                    k0_indices.iter().map(|&i| coloring[i]).collect();
                *fibers.entry(restricted).or_insert(0) += 1;
            }
            // Sanity: every restriction is a valid K0 coloring. K0's
            // relations are among the base relations, so this cannot fail
            // unless the compiler is broken.
            let k0_relations: Vec<_> = self
                .base
                .quandle_presentation()
                .relations()
                .iter()
                .filter(|(l, r)| {
                    l.symbols().iter().chain(r.symbols().iter()).all(|s| k0_arcs.contains(s))
                })
                .cloned()
                .collect();
            for restricted in fibers.keys() {
                for (lhs, rhs) in &k0_relations {
                    let value = |e: &FreeQuandleElement| {
                        e.evaluate(target, |s| {
                            k0_arcs.iter().position(|a| a == s).map(|i| restricted[i])
                        })
                        .expect("restricted coloring binds all k0 arcs")
                    };
                    assert_eq!(
                        value(lhs),
                        value(rhs),
                        "restriction of a surface coloring is not a K0 coloring"
                    );
                }
            }
            let mut fiber_sizes: Vec<u64> = fibers.values().copied().collect();
            fiber_sizes.sort_unstable_by(|a, b| b.cmp(a));
            let k0_count = {
                let k0_pres = QuandlePresentation::new(k0_arcs.clone(), k0_relations.clone())
                    .expect("k0 arcs are distinct");
                k0_pres.count_colorings(target, false, 1).count
            };
            checks.push(RestrictionCheck {
                target: name.clone(),
                col_c: c_report.count,
                col_k0: k0_count,
                image_size: fibers.len() as u64,
                fiber_sizes,
            });
        }
        checks.sort_by(|a, b| a.target.cmp(&b.target));
        InjectivityReport { checks }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConcordanceFile = serde_json::from_str(text)
            .map_err(|e| Error::parse_at(e.line(), e.column(), e.to_string()))?;
        let base = parse_pd(&file.base)?;
        let k1 = parse_pd(&file.k1)?;
        RibbonConcordanceDiagram::new(base, file.bands, k1, file.k1_map)
    }
}

/// Concordance file format:
/// `{"base": "<PD with O loops>", "bands": [["a","b"],...],
///   "k1": "<PD>", "k1_map": {"arc": elem, ...}}`.
#[derive(Serialize, Deserialize)]
pub struct ConcordanceFile {
    pub base: String,
    pub bands: Vec<(Symbol, Symbol)>,
    pub k1: String,
    pub k1_map: BTreeMap<Symbol, FreeQuandleElement>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TargetCheck {
    pub target: String,
    pub col_c: u64,
    pub col_k1: u64,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjectivityReport {
    pub checks: Vec<TargetCheck>,
}

impl SurjectivityReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.violations.is_empty())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionCheck {
    pub target: String,
    pub col_c: u64,
    pub col_k0: u64,
    pub image_size: u64,
    /// Multiplicities of the restriction map, largest first.
    pub fiber_sizes: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectivityReport {
    pub checks: Vec<RestrictionCheck>,
}

// ---------------------------------------------------------------------------
// Obstruction screen
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    NoObstructionFound,
    /// No bounded band pattern reconciles the coloring counts; a ribbon
    /// concordance with at most the given band count cannot exist.
    Obstructed { certificates: Vec<Certificate> },
    /// The candidate budget ran out before a conclusion.
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub target: String,
    pub col_k0: u64,
    pub col_k1: u64,
    pub max_bands: usize,
    pub candidates_checked: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub verdict: Verdict,
}

/// Cap on candidate presentations per target in the bounded search.
pub const OBSTRUCTION_CANDIDATE_CAP: u64 = 100_000;

/// Necessary-condition screen for a ribbon concordance from `k1` down to
/// `k0`. If one exists with at most `max_bands` bands, the surface
/// presentation is K0's plus birth generators anchored through a merge
/// tree, and its coloring count is at most K1's for every target. The
/// screen searches all such band patterns; when none fits for some
/// target, that target certifies obstruction. Budget exhaustion yields an
/// inconclusive verdict, never a false obstruction.
pub fn obstruct_ribbon_concordance(
    k1: &LinkDiagram,
    k0: &LinkDiagram,
    targets: &[(String, FiniteQuandle)],
    max_bands: usize,
) -> ObstructionReport {
    let k0_pres = k0.quandle_presentation();
    let k1_pres = k1.quandle_presentation();
    let mut certificates = Vec::new();
    let mut inconclusive: Option<String> = None;

    for (name, target) in targets {
        let col_k1 = k1_pres.count_colorings(target, false, 1).count;
        let col_k0 = k0_pres.count_colorings(target, false, 1).count;
        let mut candidates_checked = 0u64;
        let mut found_fit = false;
        'bands: for m in 0..=max_bands {
            for candidate in BandPatterns::new(&k0_pres, m) {
                candidates_checked += 1;
                if candidates_checked > OBSTRUCTION_CANDIDATE_CAP {
                    inconclusive = Some(format!(
                        "candidate budget exhausted on target {name} at {m} bands"
                    ));
                    break 'bands;
                }
                let col_c = candidate.count_colorings(target, false, 1).count;
                if col_c <= col_k1 {
                    found_fit = true;
                    break 'bands;
                }
            }
        }
        if inconclusive.is_some() {
            break;
        }
        if !found_fit {
            certificates.push(Certificate {
                target: name.clone(),
                col_k0,
                col_k1,
                max_bands,
                candidates_checked,
            });
        }
    }

    let verdict = if let Some(reason) = inconclusive {
        Verdict::Inconclusive { reason }
    } else if certificates.is_empty() {
        Verdict::NoObstructionFound
    } else {
        certificates.sort_by(|a, b| a.target.cmp(&b.target));
        Verdict::Obstructed { certificates }
    };
    ObstructionReport { verdict }
}

/// Enumerates candidate surface presentations with `m` births: each birth
/// generator is anchored to a K0 arc or to an earlier birth, forming a
/// merge tree rooted at the knot.
struct BandPatterns {
    base: QuandlePresentation,
    birth_syms: Vec<Symbol>,
    /// Anchor choice per birth: indices into (k0 arcs ++ earlier births).
    counters: Vec<usize>,
    limits: Vec<usize>,
    done: bool,
}

impl BandPatterns {
    fn new(k0_pres: &QuandlePresentation, m: usize) -> Self {
        let birth_syms: Vec<Symbol> = (0..m)
            .map(|i| Symbol::new(format!("__birth{i}")).expect("generated name"))
            .collect();
        let n_arcs = k0_pres.generators().len();
        let limits: Vec<usize> = (0..m).map(|i| n_arcs + i).collect();
        BandPatterns {
            base: k0_pres.clone(),
            birth_syms,
            counters: vec![0; m],
            limits,
            done: false,
        }
    }
}

impl Iterator for BandPatterns {
    type Item = QuandlePresentation;

    fn next(&mut self) -> Option<QuandlePresentation> {
        if self.done {
            return None;
        }
        // Build the presentation for the current counter state.
        let mut generators = self.base.generators().to_vec();
        generators.extend(self.birth_syms.iter().cloned());
        let mut relations = self.base.relations().to_vec();
        for (i, &anchor) in self.counters.iter().enumerate() {
            let anchor_sym = if anchor < self.base.generators().len() {
                self.base.generators()[anchor].clone()
            } else {
                self.birth_syms[anchor - self.base.generators().len()].clone()
            };
            relations.push((
                FreeQuandleElement::generator(self.birth_syms[i].clone()),
                FreeQuandleElement::generator(anchor_sym),
            ));
        }
        let result = QuandlePresentation::new(generators, relations)
            .expect("birth names are fresh by construction");
        // Advance the odometer.
        if self.counters.is_empty() {
            self.done = true;
        } else {
            let mut i = 0;
            loop {
                self.counters[i] += 1;
                if self.counters[i] < self.limits[i] {
                    break;
                }
                self.counters[i] = 0;
                i += 1;
                if i == self.counters.len() {
                    self.done = true;
                    break;
                }
            }
        }
        Some(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::battery::standard_battery;

    const TREFOIL_PD: &str = "X[1,4,2,5]; X[3,6,4,1]; X[5,2,6,3]";

    fn sym(s: &str) -> Symbol {
        Symbol::new(s).unwrap()
    }

    fn elem(s: &str) -> FreeQuandleElement {
        s.parse().unwrap()
    }

    fn trivial_trefoil() -> RibbonConcordanceDiagram {
        RibbonConcordanceDiagram::trivial(parse_pd(TREFOIL_PD).unwrap()).unwrap()
    }

    #[test]
    fn trivial_concordance_profile_matches_the_knot() {
        let rc = trivial_trefoil();
        let battery = standard_battery();
        let knot = parse_pd(TREFOIL_PD).unwrap().quandle_presentation();
        for (_, t) in &battery {
            assert_eq!(
                rc.presentation().count_colorings(t, false, 1).count,
                knot.count_colorings(t, false, 1).count
            );
        }
        let report = rc.check_surjectivity(&battery);
        assert!(report.ok());
        for check in &report.checks {
            assert_eq!(check.col_c, check.col_k1);
        }
    }

    #[test]
    fn trivial_concordance_restriction_is_a_bijection() {
        let rc = trivial_trefoil();
        let battery = standard_battery();
        let report = rc.check_injectivity(&battery);
        for check in &report.checks {
            assert_eq!(check.image_size, check.col_c);
            assert!(check.fiber_sizes.iter().all(|&f| f == 1));
        }
    }

    #[test]
    fn one_band_fixture_compiles_and_propagates_the_birth() {
        // Unknot base with one birth merged in: the surface is a disk.
        let base = parse_pd("O[k]; O[b]").unwrap();
        let k1 = parse_pd(TREFOIL_PD).unwrap();
        let map = k1
            .arcs()
            .iter()
            .map(|a| (a.clone(), elem("k")))
            .collect();
        let rc = RibbonConcordanceDiagram::new(
            base,
            vec![(sym("k"), sym("b"))],
            k1,
            map,
        )
        .unwrap();
        let battery = standard_battery();
        let report = rc.check_surjectivity(&battery);
        assert!(report.ok(), "{:?}", report.checks);
        for check in &report.checks {
            assert!(check.col_c <= check.col_k1);
        }
        let inj = rc.check_injectivity(&battery);
        for check in &inj.checks {
            // The birth generator is forced, so restriction is injective.
            assert_eq!(check.image_size, check.col_c);
        }
    }

    #[test]
    fn band_count_mismatch_is_rejected() {
        let base = parse_pd("O[k]; O[b]").unwrap();
        let k1 = parse_pd("O[u]").unwrap();
        let map = std::iter::once((sym("u"), elem("k"))).collect();
        let err =
            RibbonConcordanceDiagram::new(base, vec![], k1, map).unwrap_err();
        assert!(matches!(err, Error::Concordance(_)));
    }

    #[test]
    fn splitting_band_is_rejected() {
        let base = parse_pd("O[k]; O[b1]; O[b2]").unwrap();
        let k1 = parse_pd("O[u]").unwrap();
        let map = std::iter::once((sym("u"), elem("k"))).collect();
        let err = RibbonConcordanceDiagram::new(
            base,
            vec![(sym("b1"), sym("b2")), (sym("b1"), sym("b2"))],
            k1,
            map,
        )
        .unwrap_err();
        match err {
            Error::Concordance(msg) => assert!(msg.contains("merge"), "{msg}"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn corrupted_arc_map_is_caught_by_a_battery_target() {
        // Trefoil-to-trefoil with one value redirected: the pushforward of
        // some coloring violates a crossing relation.
        let diagram = parse_pd(TREFOIL_PD).unwrap();
        let mut map: BTreeMap<Symbol, FreeQuandleElement> = diagram
            .arcs()
            .iter()
            .map(|a| (a.clone(), FreeQuandleElement::generator(a.clone())))
            .collect();
        let first = diagram.arcs()[0].clone();
        let second = diagram.arcs()[1].clone();
        map.insert(second, FreeQuandleElement::generator(first));
        let rc =
            RibbonConcordanceDiagram::new(diagram.clone(), vec![], diagram, map).unwrap();
        let report = rc.check_surjectivity(&standard_battery());
        assert!(!report.ok());
    }

    #[test]
    fn impossible_count_pattern_is_caught() {
        // Claim a concordance from the unknot down to the trefoil: the
        // surface colors like the trefoil (9 in dihedral 3) but the
        // unknot has only 3.
        let base = parse_pd(&format!("{TREFOIL_PD}; O[L]")).unwrap();
        let k1 = parse_pd("O[u]").unwrap();
        let map = std::iter::once((sym("u"), elem("1"))).collect();
        let rc = RibbonConcordanceDiagram::new(
            base,
            vec![(sym("1"), sym("L"))],
            k1,
            map,
        )
        .unwrap();
        let report = rc.check_surjectivity(&standard_battery());
        assert!(!report.ok());
        let r3 = report
            .checks
            .iter()
            .find(|c| c.target == "dihedral:3")
            .unwrap();
        assert_eq!(r3.col_c, 9);
        assert_eq!(r3.col_k1, 3);
    }

    #[test]
    fn obstruction_trefoil_to_itself_finds_nothing() {
        let trefoil = parse_pd(TREFOIL_PD).unwrap();
        let report = obstruct_ribbon_concordance(
            &trefoil,
            &trefoil,
            &standard_battery(),
            2,
        );
        assert_eq!(report.verdict, Verdict::NoObstructionFound);
    }

    #[test]
    fn square_knot_down_to_unknot_is_unobstructed() {
        let square = parse_pd(
            "X+[1,4,5,2]; X+[4,6,7,5]; X+[6,1,9,7]; X-[3,9,10,11]; \
             X-[11,10,12,13]; X-[13,12,2,3]",
        )
        .unwrap();
        let unknot = parse_pd("O[u]").unwrap();
        let report =
            obstruct_ribbon_concordance(&square, &unknot, &standard_battery(), 2);
        assert_eq!(report.verdict, Verdict::NoObstructionFound);
    }

    #[test]
    fn unknot_cannot_ribbon_concord_to_the_trefoil() {
        let unknot = parse_pd("O[u]").unwrap();
        let trefoil = parse_pd(TREFOIL_PD).unwrap();
        let report = obstruct_ribbon_concordance(
            &unknot,
            &trefoil,
            &standard_battery(),
            2,
        );
        match report.verdict {
            Verdict::Obstructed { certificates } => {
                let r3 = certificates.iter().find(|c| c.target == "dihedral:3");
                let r3 = r3.expect("dihedral 3 certifies");
                assert_eq!(r3.col_k0, 9);
                assert_eq!(r3.col_k1, 3);
            }
            other => panic!("expected obstruction, got {other:?}"),
        }
    }
}
