//! Classical link diagrams and the PD text format.
//!
//! The text format lists crossings and crossingless loops:
//!
//! ```text
//! X[a,b,c,d]    crossing, numeric edge labels, orientation inferred
//! X+[a,b,c,d]   positive crossing, over-strand runs d -> b
//! X-[a,b,c,d]   negative crossing, over-strand runs b -> d
//! O[a]          crossingless loop component
//! ```
//!
//! Slots are counterclockwise starting from the incoming under-edge `a`,
//! so `c` is the outgoing under-edge and `b`, `d` carry the over-strand.
//! Edges are the segments between consecutive crossing passages; the two
//! over-edges of each crossing are glued into a single arc, so arcs break
//! only at under-passages. Bare `X` requires edges numbered consecutively
//! along each component (the usual convention of knot tables).
//!
//! The quandle relation at a crossing with under-in `x`, over `y` and
//! under-out `z` is `z = x ▷ y` at a positive crossing and `z = x ◁ y` at
//! a negative one. The convention is pinned by the trefoil nine-coloring
//! test, not by any external source.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::free::{FreeQuandleElement, FreeWord, Letter, Symbol};
use crate::presentation::QuandlePresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub positive: bool,
}

/// A link diagram with arcs broken at under-crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    arcs: Vec<Symbol>,
    crossings: Vec<Crossing>,
    component_of: Vec<usize>,
    n_components: usize,
}

impl LinkDiagram {
    /// Validates arc incidence: every arc either terminates at exactly one
    /// under-in and one under-out endpoint, or touches no under-crossing
    /// at all (a closed loop).
    pub fn new(arcs: Vec<Symbol>, crossings: Vec<Crossing>) -> Result<Self> {
        let n = arcs.len();
        {
            let mut seen = std::collections::BTreeSet::new();
            for a in &arcs {
                if !seen.insert(a.clone()) {
                    return Err(Error::DuplicateGenerator(a.to_string()));
                }
            }
        }
        let mut in_count = vec![0usize; n];
        let mut out_count = vec![0usize; n];
        for c in &crossings {
            for idx in [c.over, c.under_in, c.under_out] {
                if idx >= n {
                    return Err(Error::Diagram(format!(
                        "crossing references arc index {idx} out of range"
                    )));
                }
            }
            in_count[c.under_in] += 1;
            out_count[c.under_out] += 1;
        }
        for (i, arc) in arcs.iter().enumerate() {
            let ok = (in_count[i] == 1 && out_count[i] == 1)
                || (in_count[i] == 0 && out_count[i] == 0);
            if !ok {
                return Err(Error::Diagram(format!(
                    "arc `{arc}` has {} under-in and {} under-out endpoints",
                    in_count[i], out_count[i]
                )));
            }
        }
        // Components: arcs chained through under-passages.
        let mut dsu = Dsu::new(n);
        for c in &crossings {
            dsu.union(c.under_in, c.under_out);
        }
        let mut component_of = vec![usize::MAX; n];
        let mut n_components = 0;
        for i in 0..n {
            let root = dsu.find(i);
            if component_of[root] == usize::MAX {
                component_of[root] = n_components;
                n_components += 1;
            }
            component_of[i] = component_of[root];
        }
        Ok(LinkDiagram {
            arcs,
            crossings,
            component_of,
            n_components,
        })
    }

    pub fn arcs(&self) -> &[Symbol] {
        &self.arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn arc_index(&self, sym: &Symbol) -> Option<usize> {
        self.arcs.iter().position(|a| a == sym)
    }

    /// Arcs that touch no crossing as under-strand: closed loops.
    pub fn loop_arcs(&self) -> Vec<usize> {
        let mut under = vec![false; self.arcs.len()];
        for c in &self.crossings {
            under[c.under_in] = true;
            under[c.under_out] = true;
        }
        (0..self.arcs.len()).filter(|&i| !under[i]).collect()
    }

    pub fn n_components(&self) -> usize {
        self.n_components
    }

    pub fn component_of(&self, arc: usize) -> usize {
        self.component_of[arc]
    }

    /// Arc indices grouped by component, in component order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_components];
        for (i, &c) in self.component_of.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    /// The mirror diagram: every crossing sign reversed.
    pub fn mirrored(&self) -> LinkDiagram {
        let mut other = self.clone();
        for c in &mut other.crossings {
            c.positive = !c.positive;
        }
        other
    }

    /// One generator per arc, one relation per crossing.
    pub fn quandle_presentation(&self) -> QuandlePresentation {
        let relations = self
            .crossings
            .iter()
            .map(|c| {
                let lhs = FreeQuandleElement::generator(self.arcs[c.under_out].clone());
                let rhs = FreeQuandleElement::new(
                    self.arcs[c.under_in].clone(),
                    FreeWord::from_letters([Letter::new(
                        self.arcs[c.over].clone(),
                        !c.positive,
                    )]),
                );
                (lhs, rhs)
            })
            .collect();
        QuandlePresentation::new(self.arcs.clone(), relations)
            .expect("diagram arcs are distinct and relations only use them")
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// Returns false when the two were already in the same class.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

// ---------------------------------------------------------------------------
// PD text parsing
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub(crate) enum PdEntry {
    Crossing {
        slots: [String; 4],
        /// None means bare `X`: direction inferred from numeric labels.
        positive: Option<bool>,
        line: usize,
        column: usize,
    },
    Loop {
        label: String,
        line: usize,
        column: usize,
    },
    Marker {
        slots: [String; 4],
        /// True: lower resolution joins slots (0,1) and (2,3) ("h").
        /// False: lower joins (1,2) and (3,0) ("v").
        lower_adjacent_first: bool,
    },
}

pub(crate) fn tokenize_pd(text: &str, allow_markers: bool) -> Result<Vec<PdEntry>> {
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_no_comment = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        let mut col = 0usize;
        for chunk in line_no_comment.split(';') {
            let trimmed = chunk.trim();
            let column = col + chunk.len() - chunk.trim_start().len() + 1;
            col += chunk.len() + 1;
            if trimmed.is_empty() {
                continue;
            }
            entries.push(parse_entry(trimmed, allow_markers, lineno + 1, column)?);
        }
    }
    Ok(entries)
}

fn parse_entry(text: &str, allow_markers: bool, line: usize, column: usize) -> Result<PdEntry> {
    let err = |msg: String| Error::parse_at(line, column, msg);
    let (head, rest) = match text.find('[') {
        Some(p) => (&text[..p], &text[p + 1..]),
        None => return Err(err(format!("expected `[` in entry {text:?}"))),
    };
    let body = rest
        .strip_suffix(']')
        .ok_or_else(|| err(format!("missing `]` in entry {text:?}")))?;
    let fields: Vec<&str> = body.split(',').map(str::trim).collect();
    let check_label = |label: &str| -> Result<String> {
        Symbol::new(label)
            .map(|s| s.as_str().to_owned())
            .map_err(|_| err(format!("bad edge label {label:?}")))
    };
    match head.trim() {
        "X" | "X+" | "X-" => {
            if fields.len() != 4 {
                return Err(err(format!(
                    "crossing needs 4 edge labels, got {}",
                    fields.len()
                )));
            }
            let slots = [
                check_label(fields[0])?,
                check_label(fields[1])?,
                check_label(fields[2])?,
                check_label(fields[3])?,
            ];
            let positive = match head.trim() {
                "X+" => Some(true),
                "X-" => Some(false),
                _ => None,
            };
            Ok(PdEntry::Crossing {
                slots,
                positive,
                line,
                column,
            })
        }
        "O" => {
            if fields.len() != 1 {
                return Err(err(format!("loop needs 1 label, got {}", fields.len())));
            }
            Ok(PdEntry::Loop {
                label: check_label(fields[0])?,
                line,
                column,
            })
        }
        "M" if allow_markers => {
            if fields.len() != 5 {
                return Err(err(format!(
                    "marker needs 4 edge labels and an orientation, got {} fields",
                    fields.len()
                )));
            }
            let slots = [
                check_label(fields[0])?,
                check_label(fields[1])?,
                check_label(fields[2])?,
                check_label(fields[3])?,
            ];
            let lower_adjacent_first = match fields[4] {
                "h" => true,
                "v" => false,
                other => {
                    return Err(err(format!(
                        "marker orientation must be `h` or `v`, got {other:?}"
                    )))
                }
            };
            Ok(PdEntry::Marker {
                slots,
                lower_adjacent_first,
            })
        }
        "M" => Err(err("marker vertices are not allowed in plain PD input".into())),
        other => Err(err(format!("unknown entry kind {other:?}"))),
    }
}

/// Resolved crossing at the edge level.
pub(crate) struct EdgeCrossing {
    pub under_in: String,
    pub under_out: String,
    pub over_in: String,
    pub over_out: String,
    pub positive: bool,
}

/// Resolves over-strand directions, checking each edge occurs once as a
/// head and once as a tail.
pub(crate) fn resolve_crossings(entries: &[PdEntry]) -> Result<Vec<EdgeCrossing>> {
    // Count occurrences of each edge label across crossing and marker slots.
    let mut occurrences: HashMap<&str, usize> = HashMap::new();
    let mut loops: HashMap<&str, (usize, usize)> = HashMap::new();
    for e in entries {
        match e {
            PdEntry::Crossing { slots, .. } | PdEntry::Marker { slots, .. } => {
                for s in slots {
                    *occurrences.entry(s.as_str()).or_insert(0) += 1;
                }
            }
            PdEntry::Loop { label, line, column } => {
                if loops.insert(label.as_str(), (*line, *column)).is_some() {
                    return Err(Error::parse_at(
                        *line,
                        *column,
                        format!("loop label `{label}` declared twice"),
                    ));
                }
            }
        }
    }
    let mut sorted_occurrences: Vec<(&str, usize)> =
        occurrences.iter().map(|(l, c)| (*l, *c)).collect();
    sorted_occurrences.sort_unstable();
    for (label, count) in &sorted_occurrences {
        if *count != 2 {
            return Err(Error::Diagram(format!(
                "edge `{label}` appears {count} times; every edge must appear exactly twice"
            )));
        }
        if loops.contains_key(label) {
            return Err(Error::Diagram(format!(
                "label `{label}` is declared as a loop but also used at a crossing or marker"
            )));
        }
    }

    let inference = NumericInference::prepare(entries)?;

    let mut resolved = Vec::new();
    let mut heads: HashMap<&str, usize> = HashMap::new();
    let mut tails: HashMap<&str, usize> = HashMap::new();
    for e in entries {
        if let PdEntry::Crossing {
            slots,
            positive,
            line,
            column,
        } = e
        {
            let [a, b, c, d] = slots;
            let positive = match positive {
                Some(p) => *p,
                None => inference.over_runs_d_to_b(slots, *line, *column)?,
            };
            // Positive: over runs d -> b; negative: over runs b -> d.
            let (over_in, over_out) = if positive { (d, b) } else { (b, d) };
            *heads.entry(a.as_str()).or_insert(0) += 1;
            *heads.entry(over_in.as_str()).or_insert(0) += 1;
            *tails.entry(c.as_str()).or_insert(0) += 1;
            *tails.entry(over_out.as_str()).or_insert(0) += 1;
            resolved.push(EdgeCrossing {
                under_in: a.clone(),
                under_out: c.clone(),
                over_in: over_in.clone(),
                over_out: over_out.clone(),
                positive,
            });
        }
    }
    // Orientation consistency, skipped when markers are present (marker
    // ends take the remaining endpoints and are validated structurally
    // after resolution instead).
    let has_markers = entries.iter().any(|e| matches!(e, PdEntry::Marker { .. }));
    if !has_markers {
        for (label, _) in &sorted_occurrences {
            let h = heads.get(label).copied().unwrap_or(0);
            let t = tails.get(label).copied().unwrap_or(0);
            if h != 1 || t != 1 {
                return Err(Error::Diagram(format!(
                    "edge `{label}` is inconsistently oriented ({h} heads, {t} tails)"
                )));
            }
        }
    }
    Ok(resolved)
}

/// Successor inference for bare `X` entries with numeric edge labels.
struct NumericInference {
    /// component id and label set per numeric label; empty when no bare X.
    succ: HashMap<u64, u64>,
}

impl NumericInference {
    fn prepare(entries: &[PdEntry]) -> Result<Self> {
        let bare: Vec<&PdEntry> = entries
            .iter()
            .filter(|e| matches!(e, PdEntry::Crossing { positive: None, .. }))
            .collect();
        if bare.is_empty() {
            return Ok(NumericInference {
                succ: HashMap::new(),
            });
        }
        if entries.iter().any(|e| matches!(e, PdEntry::Marker { .. })) {
            return Err(Error::Diagram(
                "bare X entries cannot be combined with markers; use X+/X-".into(),
            ));
        }
        // All crossing labels must be numeric.
        let mut numbers: Vec<u64> = Vec::new();
        let mut index: HashMap<u64, usize> = HashMap::new();
        let mut number_of = |label: &str| -> Result<u64> {
            let n: u64 = label.parse().map_err(|_| {
                Error::Diagram(format!(
                    "bare X requires numeric edge labels (got `{label}`); use X+/X-"
                ))
            })?;
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(n) {
                e.insert(numbers.len());
                numbers.push(n);
            }
            Ok(n)
        };
        let mut pairs: Vec<(u64, u64, u64, u64)> = Vec::new();
        for e in entries {
            if let PdEntry::Crossing { slots, .. } = e {
                let a = number_of(&slots[0])?;
                let b = number_of(&slots[1])?;
                let c = number_of(&slots[2])?;
                let d = number_of(&slots[3])?;
                pairs.push((a, b, c, d));
            }
        }
        // Components of the edge cycle: a~c (under) and b~d (over pair).
        let mut dsu = Dsu::new(numbers.len());
        for &(a, b, c, d) in &pairs {
            dsu.union(index[&a], index[&c]);
            dsu.union(index[&b], index[&d]);
        }
        let mut members: HashMap<usize, Vec<u64>> = HashMap::new();
        for (n, &i) in &index {
            members.entry(dsu.find(i)).or_default().push(*n);
        }
        let mut succ = HashMap::new();
        for labels in members.values_mut() {
            labels.sort_unstable();
            let lo = labels[0];
            let hi = *labels.last().unwrap();
            if hi - lo + 1 != labels.len() as u64 {
                return Err(Error::Diagram(
                    "bare X numeric labels must be consecutive along each component; use X+/X-"
                        .into(),
                ));
            }
            for &n in labels.iter() {
                succ.insert(n, if n == hi { lo } else { n + 1 });
            }
        }
        Ok(NumericInference { succ })
    }

    fn over_runs_d_to_b(&self, slots: &[String; 4], line: usize, column: usize) -> Result<bool> {
        let num = |s: &str| s.parse::<u64>().expect("validated numeric");
        let (a, b, c, d) = (
            num(&slots[0]),
            num(&slots[1]),
            num(&slots[2]),
            num(&slots[3]),
        );
        let b_to_d = self.succ.get(&b) == Some(&d);
        let d_to_b = self.succ.get(&d) == Some(&b);
        match (d_to_b, b_to_d) {
            (true, false) => Ok(true),
            (false, true) => Ok(false),
            (true, true) => {
                // Two-edge component (a kink): the incoming over-edge is
                // the one whose head is still free, i.e. the under-out c.
                if b == c {
                    Ok(false)
                } else if d == c {
                    Ok(true)
                } else {
                    let _ = a;
                    Err(Error::parse_at(
                        line,
                        column,
                        "cannot infer over-strand direction; use X+/X-".to_string(),
                    ))
                }
            }
            (false, false) => Err(Error::parse_at(
                line,
                column,
                "over-strand edges are not consecutive; use X+/X-".to_string(),
            )),
        }
    }
}

/// Merges edges into arcs and produces the diagram. `extra_joins` holds
/// marker smoothing identifications (used by marked-graph resolution).
pub(crate) fn assemble_diagram(
    entries: &[PdEntry],
    crossings: &[EdgeCrossing],
    extra_joins: &[(String, String)],
) -> Result<(LinkDiagram, HashMap<String, Symbol>)> {
    // Collect edge labels in first-occurrence order (crossing slots first
    // as written, then loops).
    let mut order: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    {
        let mut push = |label: &str| {
            if !index.contains_key(label) {
                index.insert(label.to_owned(), order.len());
                order.push(label.to_owned());
            }
        };
        for e in entries {
            match e {
                PdEntry::Crossing { slots, .. } | PdEntry::Marker { slots, .. } => {
                    for s in slots {
                        push(s.as_str());
                    }
                }
                PdEntry::Loop { label, .. } => push(label.as_str()),
            }
        }
    }
    let mut dsu = Dsu::new(order.len());
    for c in crossings {
        dsu.union(index[c.over_in.as_str()], index[c.over_out.as_str()]);
    }
    for (x, y) in extra_joins {
        let (ix, iy) = match (index.get(x.as_str()), index.get(y.as_str())) {
            (Some(&ix), Some(&iy)) => (ix, iy),
            _ => return Err(Error::Diagram(format!("join references unknown edge `{x}`/`{y}`"))),
        };
        dsu.union(ix, iy);
    }
    // Name each class after its first-seen member.
    let mut class_name: HashMap<usize, Symbol> = HashMap::new();
    let mut arcs: Vec<Symbol> = Vec::new();
    let mut arc_index: HashMap<usize, usize> = HashMap::new();
    for (i, label) in order.iter().enumerate() {
        let root = dsu.find(i);
        if let std::collections::hash_map::Entry::Vacant(e) = class_name.entry(root) {
            let sym = Symbol::new(label.as_str()).expect("validated at tokenization");
            e.insert(sym.clone());
            arc_index.insert(root, arcs.len());
            arcs.push(sym);
        }
    }
    let mut edge_to_arc: HashMap<String, Symbol> = HashMap::new();
    for (i, label) in order.iter().enumerate() {
        let root = dsu.find(i);
        edge_to_arc.insert(label.clone(), class_name[&root].clone());
    }
    let arc_of = |dsu: &mut Dsu, label: &str| arc_index[&dsu.find(index[label])];
    let diagram_crossings = crossings
        .iter()
        .map(|c| Crossing {
            over: arc_of(&mut dsu, &c.over_in),
            under_in: arc_of(&mut dsu, &c.under_in),
            under_out: arc_of(&mut dsu, &c.under_out),
            positive: c.positive,
        })
        .collect();
    let diagram = LinkDiagram::new(arcs, diagram_crossings)?;
    Ok((diagram, edge_to_arc))
}

/// Parses PD text into a link diagram.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let entries = tokenize_pd(text, false)?;
    let crossings = resolve_crossings(&entries)?;
    let (diagram, _) = assemble_diagram(&entries, &crossings, &[])?;
    Ok(diagram)
}
