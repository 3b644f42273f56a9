//! Quandle presentations ⟨X | R⟩ and coloring enumeration.
//!
//! A coloring of a presented quandle by a finite quandle `T` is an
//! assignment `X → T` under which every relation evaluates to an equality.
//! Counting colorings is the crate's main computable invariant. The search
//! runs backtracking with candidate-set propagation; a relation whose
//! symbols are all but one assigned filters that generator's candidates,
//! and branching picks the generator with the fewest candidates. The count
//! is the same as naive full enumeration by contract (and by test).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free::{FreeQuandleElement, Symbol};
use crate::quandle::FiniteQuandle;

/// Retained colorings are capped at this many; the report flags truncation.
pub const COLORING_RETENTION_CAP: usize = 100_000;

pub type Relation = (FreeQuandleElement, FreeQuandleElement);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuandlePresentation {
    generators: Vec<Symbol>,
    relations: Vec<Relation>,
}

impl QuandlePresentation {
    /// Validates that generators are distinct and that every symbol in a
    /// relation is a generator.
    pub fn new(generators: Vec<Symbol>, relations: Vec<Relation>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(Error::DuplicateGenerator(g.to_string()));
            }
        }
        for (lhs, rhs) in &relations {
            for side in [lhs, rhs] {
                for sym in side.symbols() {
                    if !seen.contains(sym) {
                        return Err(Error::UnknownGenerator(sym.to_string()));
                    }
                }
            }
        }
        Ok(QuandlePresentation {
            generators,
            relations,
        })
    }

    pub fn free(generators: Vec<Symbol>) -> Result<Self> {
        QuandlePresentation::new(generators, Vec::new())
    }

    pub fn empty() -> Self {
        QuandlePresentation {
            generators: Vec::new(),
            relations: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[Symbol] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Generator count; after `simplify` this is the reported upper bound
    /// on the rank of the presented quandle (never claimed minimal).
    pub fn rank_upper_bound(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, sym: &Symbol) -> Option<usize> {
        self.generators.iter().position(|g| g == sym)
    }

    /// Disjoint union with another presentation. Generator sets must be
    /// disjoint.
    pub fn disjoint_union(&self, other: &QuandlePresentation) -> Result<QuandlePresentation> {
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        let mut relations = self.relations.clone();
        relations.extend(other.relations.iter().cloned());
        QuandlePresentation::new(generators, relations)
    }

    /// Replaces generator `g` by `value` everywhere and removes `g`.
    /// Rejects cyclic substitutions (`g` occurring in `value`).
    pub fn substituted(
        &self,
        g: &Symbol,
        value: &FreeQuandleElement,
    ) -> Result<QuandlePresentation> {
        if value.contains(g) {
            return Err(Error::CyclicSubstitution(g.to_string()));
        }
        if self.generator_index(g).is_none() {
            return Err(Error::UnknownGenerator(g.to_string()));
        }
        let generators: Vec<Symbol> = self
            .generators
            .iter()
            .filter(|h| *h != g)
            .cloned()
            .collect();
        let relations = self
            .relations
            .iter()
            .map(|(l, r)| (l.substituted(g, value), r.substituted(g, value)))
            .collect();
        QuandlePresentation::new(generators, relations)
    }

    /// Tietze-style simplification: repeatedly drops tautological
    /// relations and eliminates a generator defined by a relation with one
    /// bare-generator side not occurring on the other side. Each
    /// elimination strictly decreases the generator count, so the loop
    /// terminates. Coloring counts into every finite target are preserved.
    pub fn simplify(&self) -> QuandlePresentation {
        let mut current = self.clone();
        loop {
            current.relations.retain(|(l, r)| l != r);
            let mut elimination: Option<(usize, Symbol, FreeQuandleElement)> = None;
            'scan: for (i, (lhs, rhs)) in current.relations.iter().enumerate() {
                // When both sides are bare generators, eliminate the one
                // that comes later in generator order (merge into the
                // earlier one).
                let mut candidates: Vec<(&FreeQuandleElement, &FreeQuandleElement)> =
                    vec![(lhs, rhs), (rhs, lhs)];
                if lhs.is_bare_generator() && rhs.is_bare_generator() {
                    let li = current.generator_index(lhs.base()).unwrap_or(usize::MAX);
                    let ri = current.generator_index(rhs.base()).unwrap_or(usize::MAX);
                    if li < ri {
                        candidates = vec![(rhs, lhs)];
                    } else {
                        candidates = vec![(lhs, rhs)];
                    }
                }
                for (bare, other) in candidates {
                    if bare.is_bare_generator() && !other.contains(bare.base()) {
                        elimination = Some((i, bare.base().clone(), other.clone()));
                        break 'scan;
                    }
                }
            }
            match elimination {
                Some((idx, g, value)) => {
                    current.relations.remove(idx);
                    current = current
                        .substituted(&g, &value)
                        .expect("elimination candidates are acyclic");
                }
                None => break,
            }
        }
        current
    }

    /// Counts (and optionally collects) colorings into `target`.
    ///
    /// `workers > 1` splits the search on the first generator's value; the
    /// count and the sorted coloring list are deterministic regardless of
    /// the worker count.
    pub fn count_colorings(
        &self,
        target: &FiniteQuandle,
        keep: bool,
        workers: usize,
    ) -> ColoringReport {
        let started = Instant::now();
        let n = target.size();
        if self.generators.is_empty() {
            // The empty map is the unique coloring.
            return ColoringReport {
                target_size: n,
                count: 1,
                colorings: keep.then(|| vec![Vec::new()]),
                truncated: false,
                elapsed: started.elapsed(),
            };
        }
        type TaskResult = (u64, Vec<Vec<usize>>, bool);
        let compiled = CompiledPresentation::compile(self);
        let tasks: Vec<usize> = (0..n).collect();
        let run_task = |first_value: usize| {
            let mut state = SearchState::fresh(&compiled, n);
            let mut acc = TaskAccumulator::new(keep);
            if state.assign(&compiled, target, 0, first_value) {
                search(&compiled, target, state, &mut acc);
            }
            acc.finish()
        };

        let results: Vec<TaskResult> = if workers <= 1 || n <= 1 {
            tasks.into_iter().map(run_task).collect()
        } else {
            let next = std::sync::atomic::AtomicUsize::new(0);
            let slots: Vec<std::sync::Mutex<Option<TaskResult>>> =
                (0..n).map(|_| std::sync::Mutex::new(None)).collect();
            std::thread::scope(|scope| {
                for _ in 0..workers.min(n) {
                    scope.spawn(|| loop {
                        let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        if i >= n {
                            break;
                        }
                        *slots[i].lock().unwrap() = Some(run_task(i));
                    });
                }
            });
            slots
                .into_iter()
                .map(|s| s.into_inner().unwrap().expect("every task ran"))
                .collect()
        };

        let mut count = 0u64;
        let mut colorings = keep.then(Vec::new);
        let mut truncated = false;
        for (c, sols, trunc) in results {
            count += c;
            truncated |= trunc;
            if let Some(all) = colorings.as_mut() {
                for s in sols {
                    if all.len() < COLORING_RETENTION_CAP {
                        all.push(s);
                    } else {
                        truncated = true;
                        break;
                    }
                }
            }
        }
        ColoringReport {
            target_size: n,
            count,
            colorings,
            truncated,
            elapsed: started.elapsed(),
        }
    }

    /// Serializes to the presentation file format.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PresentationFile::from(self)).expect("presentation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PresentationFile = serde_json::from_str(text)
            .map_err(|e| Error::parse_at(e.line(), e.column(), e.to_string()))?;
        file.try_into()
    }
}

impl fmt::Display for QuandlePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, " | ")?;
        for (i, (l, r)) in self.relations.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l} = {r}")?;
        }
        write!(f, ">")
    }
}

/// On-disk presentation format:
/// `{"generators":["x","y"],"relations":[[elem,elem],...]}`.
#[derive(Serialize, Deserialize)]
pub struct PresentationFile {
    pub generators: Vec<Symbol>,
    pub relations: Vec<(FreeQuandleElement, FreeQuandleElement)>,
}

impl From<&QuandlePresentation> for PresentationFile {
    fn from(p: &QuandlePresentation) -> Self {
        PresentationFile {
            generators: p.generators.clone(),
            relations: p.relations.clone(),
        }
    }
}

impl TryFrom<PresentationFile> for QuandlePresentation {
    type Error = Error;
    fn try_from(f: PresentationFile) -> Result<Self> {
        QuandlePresentation::new(f.generators, f.relations)
    }
}

/// Outcome of a coloring enumeration.
#[derive(Clone, Debug)]
pub struct ColoringReport {
    pub target_size: usize,
    pub count: u64,
    /// Present when collection was requested; sorted lexicographically by
    /// generator order, capped at [`COLORING_RETENTION_CAP`].
    pub colorings: Option<Vec<Vec<usize>>>,
    pub truncated: bool,
    pub elapsed: Duration,
}

/// Convenience map view of one coloring.
pub fn coloring_as_map(
    pres: &QuandlePresentation,
    coloring: &[usize],
) -> BTreeMap<Symbol, usize> {
    pres.generators()
        .iter()
        .cloned()
        .zip(coloring.iter().copied())
        .collect()
}

// ---------------------------------------------------------------------------
// Solver internals
// ---------------------------------------------------------------------------

struct CompiledElement {
    base: usize,
    letters: Vec<(usize, bool)>,
}

impl CompiledElement {
    fn compile(elem: &FreeQuandleElement, index: &HashMap<&Symbol, usize>) -> Self {
        CompiledElement {
            base: index[elem.base()],
            letters: elem
                .tail()
                .letters()
                .iter()
                .map(|l| (index[&l.sym], l.inverse))
                .collect(),
        }
    }

    fn eval(&self, target: &FiniteQuandle, assign: &[Option<usize>]) -> Option<usize> {
        let mut acc = assign[self.base]?;
        for &(sym, inverse) in &self.letters {
            let v = assign[sym]?;
            acc = if inverse {
                target.inv_op(acc, v)
            } else {
                target.op(acc, v)
            };
        }
        Some(acc)
    }

    fn symbols(&self, out: &mut BTreeSet<usize>) {
        out.insert(self.base);
        for &(sym, _) in &self.letters {
            out.insert(sym);
        }
    }
}

struct CompiledPresentation {
    n_generators: usize,
    relations: Vec<(CompiledElement, CompiledElement, Vec<usize>)>,
}

impl CompiledPresentation {
    fn compile(pres: &QuandlePresentation) -> Self {
        let index: HashMap<&Symbol, usize> = pres
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        let relations = pres
            .relations
            .iter()
            .map(|(l, r)| {
                let cl = CompiledElement::compile(l, &index);
                let cr = CompiledElement::compile(r, &index);
                let mut syms = BTreeSet::new();
                cl.symbols(&mut syms);
                cr.symbols(&mut syms);
                (cl, cr, syms.into_iter().collect())
            })
            .collect();
        CompiledPresentation {
            n_generators: pres.generators.len(),
            relations,
        }
    }
}

#[derive(Clone)]
struct SearchState {
    assign: Vec<Option<usize>>,
    candidates: Vec<Vec<bool>>,
    candidate_counts: Vec<usize>,
    unassigned: usize,
}

impl SearchState {
    fn fresh(comp: &CompiledPresentation, n: usize) -> Self {
        SearchState {
            assign: vec![None; comp.n_generators],
            candidates: vec![vec![true; n]; comp.n_generators],
            candidate_counts: vec![n; comp.n_generators],
            unassigned: comp.n_generators,
        }
    }

    /// Assigns `gen := value` and runs propagation to a fixpoint.
    /// Returns false when a contradiction is reached.
    fn assign(
        &mut self,
        comp: &CompiledPresentation,
        target: &FiniteQuandle,
        gen: usize,
        value: usize,
    ) -> bool {
        if !self.candidates[gen][value] {
            return false;
        }
        self.assign[gen] = Some(value);
        self.unassigned -= 1;
        self.propagate(comp, target)
    }

    fn propagate(&mut self, comp: &CompiledPresentation, target: &FiniteQuandle) -> bool {
        loop {
            let mut changed = false;
            for (lhs, rhs, syms) in &comp.relations {
                let mut free = syms.iter().filter(|&&s| self.assign[s].is_none());
                match (free.next().copied(), free.next()) {
                    (None, _) => {
                        let l = lhs.eval(target, &self.assign).expect("fully assigned");
                        let r = rhs.eval(target, &self.assign).expect("fully assigned");
                        if l != r {
                            return false;
                        }
                    }
                    (Some(g), None) => {
                        // Filter g's candidates by trying each value.
                        let mut forced = None;
                        let mut remaining = 0;
                        for v in 0..target.size() {
                            if !self.candidates[g][v] {
                                continue;
                            }
                            self.assign[g] = Some(v);
                            let ok = lhs.eval(target, &self.assign)
                                == rhs.eval(target, &self.assign);
                            self.assign[g] = None;
                            if ok {
                                remaining += 1;
                                forced = Some(v);
                            } else {
                                self.candidates[g][v] = false;
                                self.candidate_counts[g] -= 1;
                                changed = true;
                            }
                        }
                        match remaining {
                            0 => return false,
                            1 => {
                                self.assign[g] = forced;
                                self.unassigned -= 1;
                                changed = true;
                            }
                            _ => {}
                        }
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn pick_branch_generator(&self) -> usize {
        (0..self.assign.len())
            .filter(|&g| self.assign[g].is_none())
            .min_by_key(|&g| self.candidate_counts[g])
            .expect("an unassigned generator exists")
    }
}

struct TaskAccumulator {
    count: u64,
    keep: bool,
    solutions: Vec<Vec<usize>>,
    truncated: bool,
}

impl TaskAccumulator {
    fn new(keep: bool) -> Self {
        TaskAccumulator {
            count: 0,
            keep,
            solutions: Vec::new(),
            truncated: false,
        }
    }

    fn record(&mut self, assign: &[Option<usize>]) {
        self.count += 1;
        if self.keep {
            if self.solutions.len() < COLORING_RETENTION_CAP {
                self.solutions
                    .push(assign.iter().map(|v| v.expect("complete")).collect());
            } else {
                self.truncated = true;
            }
        }
    }

    fn finish(mut self) -> (u64, Vec<Vec<usize>>, bool) {
        self.solutions.sort();
        (self.count, self.solutions, self.truncated)
    }
}

fn search(
    comp: &CompiledPresentation,
    target: &FiniteQuandle,
    state: SearchState,
    acc: &mut TaskAccumulator,
) {
    if state.unassigned == 0 {
        acc.record(&state.assign);
        return;
    }
    let g = state.pick_branch_generator();
    for v in 0..target.size() {
        if !state.candidates[g][v] {
            continue;
        }
        let mut child = state.clone();
        if child.assign(comp, target, g, v) {
            search(comp, target, child, acc);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::FreeWord;

    fn sym(s: &str) -> Symbol {
        Symbol::new(s).unwrap()
    }

    fn elem(s: &str) -> FreeQuandleElement {
        s.parse().unwrap()
    }

    fn pres(gens: &[&str], rels: &[(&str, &str)]) -> QuandlePresentation {
        QuandlePresentation::new(
            gens.iter().map(|g| sym(g)).collect(),
            rels.iter().map(|(l, r)| (elem(l), elem(r))).collect(),
        )
        .unwrap()
    }

    /// The three-generator trefoil presentation from a standard diagram.
    fn trefoil() -> QuandlePresentation {
        pres(
            &["a", "b", "c"],
            &[("c", "a ^ b"), ("a", "b ^ c"), ("b", "c ^ a")],
        )
    }

    #[test]
    fn free_generator_has_full_target_of_colorings() {
        let p = pres(&["x"], &[]);
        for n in [1, 3, 6] {
            let t = FiniteQuandle::dihedral(n).unwrap();
            assert_eq!(p.count_colorings(&t, false, 1).count, n as u64);
        }
    }

    #[test]
    fn empty_presentation_has_exactly_one_coloring() {
        let p = QuandlePresentation::empty();
        let t = FiniteQuandle::dihedral(5).unwrap();
        let report = p.count_colorings(&t, true, 1);
        assert_eq!(report.count, 1);
        assert_eq!(report.colorings.unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn trefoil_has_nine_dihedral3_colorings() {
        let t = FiniteQuandle::dihedral(3).unwrap();
        let report = trefoil().count_colorings(&t, true, 1);
        assert_eq!(report.count, 9);
        let colorings = report.colorings.unwrap();
        assert_eq!(colorings.len(), 9);
        // All constant colorings are present.
        for v in 0..3 {
            assert!(colorings.contains(&vec![v, v, v]));
        }
    }

    #[test]
    fn coloring_count_is_worker_independent() {
        let t = FiniteQuandle::dihedral(5).unwrap();
        let base = trefoil().count_colorings(&t, true, 1);
        for workers in [2, 3, 8] {
            let other = trefoil().count_colorings(&t, true, workers);
            assert_eq!(base.count, other.count);
            assert_eq!(base.colorings, other.colorings);
        }
    }

    #[test]
    fn coloring_count_into_trivial_quandle_is_one() {
        let t = FiniteQuandle::trivial();
        assert_eq!(trefoil().count_colorings(&t, false, 1).count, 1);
    }

    #[test]
    fn simplify_merges_equal_generators() {
        let p = pres(&["x", "y"], &[("x", "y")]);
        let s = p.simplify();
        assert_eq!(s.generators().len(), 1);
        assert!(s.relations().is_empty());
    }

    #[test]
    fn simplify_eliminates_defined_generators() {
        let p = pres(&["x", "y", "z"], &[("z", "x ^ y")]);
        let s = p.simplify();
        assert_eq!(s.generators(), &[sym("x"), sym("y")]);
        assert!(s.relations().is_empty());
    }

    #[test]
    fn simplify_preserves_coloring_counts() {
        let p = trefoil();
        let s = p.simplify();
        assert!(s.generators().len() <= 2);
        for n in [3, 4, 5] {
            let t = FiniteQuandle::dihedral(n).unwrap();
            assert_eq!(
                p.count_colorings(&t, false, 1).count,
                s.count_colorings(&t, false, 1).count,
                "dihedral {n}"
            );
        }
    }

    #[test]
    fn substitute_removes_generator_and_keeps_tautology() {
        let p = pres(&["x", "y"], &[("y", "x")]);
        let s = p.substituted(&sym("y"), &elem("x")).unwrap();
        assert_eq!(s.generators(), &[sym("x")]);
        assert_eq!(s.relations(), &[(elem("x"), elem("x"))]);
        assert!(s.simplify().relations().is_empty());
    }

    #[test]
    fn substitute_agrees_with_evaluation_on_all_assignments() {
        // Relation side (a, y): substituting y := (x, z) must preserve the
        // evaluated value under every assignment of {a, x, z}.
        let t = FiniteQuandle::dihedral(5).unwrap();
        let before = elem("a ^ y");
        let after = before.substituted(&sym("y"), &elem("x ^ z"));
        let before_inv = elem("a ^ y'");
        let after_inv = before_inv.substituted(&sym("y"), &elem("x ^ z"));
        for a in 0..5 {
            for x in 0..5 {
                for z in 0..5 {
                    let f = |s: &Symbol| match s.as_str() {
                        "a" => Some(a),
                        "x" => Some(x),
                        "z" => Some(z),
                        // y is bound to its substituted meaning.
                        "y" => elem("x ^ z")
                            .evaluate(&t, |s| match s.as_str() {
                                "x" => Some(x),
                                "z" => Some(z),
                                _ => None,
                            })
                            .ok(),
                        _ => None,
                    };
                    assert_eq!(
                        before.evaluate(&t, f).unwrap(),
                        after.evaluate(&t, f).unwrap()
                    );
                    assert_eq!(
                        before_inv.evaluate(&t, f).unwrap(),
                        after_inv.evaluate(&t, f).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn cyclic_substitution_is_rejected() {
        let p = pres(&["x", "y"], &[("y", "x")]);
        let err = p.substituted(&sym("x"), &elem("x ^ y")).unwrap_err();
        assert!(matches!(err, Error::CyclicSubstitution(_)));
    }

    #[test]
    fn presentation_rejects_unknown_symbols() {
        let bad = QuandlePresentation::new(
            vec![sym("x")],
            vec![(elem("x"), elem("x ^ w"))],
        );
        assert!(matches!(bad, Err(Error::UnknownGenerator(w)) if w == "w"));
    }

    #[test]
    fn presentation_json_round_trip() {
        let p = trefoil();
        let back = QuandlePresentation::from_json(&p.to_json()).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn normalization_holds_inside_relations() {
        // A relation built with a leading base power normalizes on entry.
        let raw = FreeQuandleElement::new(
            sym("a"),
            FreeWord::from_letters(vec![
                crate::free::Letter::new(sym("a"), false),
                crate::free::Letter::new(sym("b"), false),
            ]),
        );
        assert_eq!(raw, elem("a ^ b"));
    }
}
