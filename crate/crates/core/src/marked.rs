//! Marked-graph (CH) diagrams of surfaces with a hyperbolic splitting.
//!
//! The text format extends PD text with marker vertices:
//!
//! ```text
//! M[p,q,r,s,h]   lower resolution joins p–q and r–s, upper joins q–r and s–p
//! M[p,q,r,s,v]   lower resolution joins q–r and s–p, upper joins p–q and r–s
//! ```
//!
//! Slots are the four edge-ends around the vertex in cyclic order; the
//! orientation letter selects which of the two planar smoothings lies
//! below the saddle level. Crossings in marked diagrams must use the
//! signed `X+`/`X-` form.
//!
//! The lower resolution of all markers is the diagram of the link just
//! below the saddles; the presentation of the surface quandle is that
//! link's presentation plus one relation `x_i = y_i` for the two lower
//! arcs meeting at each marker.

use std::collections::HashMap;

use crate::error::Result;
use crate::free::{FreeQuandleElement, Symbol};
use crate::link::{
    assemble_diagram, resolve_crossings, tokenize_pd, LinkDiagram, PdEntry,
};
use crate::presentation::QuandlePresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Clone, Debug)]
pub struct Marker {
    /// Edge-ends in cyclic order around the vertex.
    pub ends: [String; 4],
    /// True when the lower resolution joins ends (0,1) and (2,3).
    pub lower_adjacent_first: bool,
}

impl Marker {
    /// The two joined end-pairs for the requested side.
    pub fn joins(&self, side: Side) -> [(String, String); 2] {
        let adjacent_first = match side {
            Side::Lower => self.lower_adjacent_first,
            Side::Upper => !self.lower_adjacent_first,
        };
        let [p, q, r, s] = self.ends.clone();
        if adjacent_first {
            [(p, q), (r, s)]
        } else {
            [(q, r), (s, p)]
        }
    }
}

#[derive(Clone, Debug)]
pub struct MarkedGraphDiagram {
    entries: Vec<PdEntry>,
    markers: Vec<Marker>,
}

/// A resolved diagram plus the map from marked-graph edges to the arcs of
/// the resolution.
#[derive(Clone, Debug)]
pub struct ResolvedDiagram {
    pub diagram: LinkDiagram,
    pub edge_to_arc: HashMap<String, Symbol>,
}

impl MarkedGraphDiagram {
    pub fn parse(text: &str) -> Result<Self> {
        let entries = tokenize_pd(text, true)?;
        let markers = entries
            .iter()
            .filter_map(|e| match e {
                PdEntry::Marker {
                    slots,
                    lower_adjacent_first,
                } => Some(Marker {
                    ends: slots.clone(),
                    lower_adjacent_first: *lower_adjacent_first,
                }),
                _ => None,
            })
            .collect();
        // Validate structure early (labels twice, signs resolvable).
        resolve_crossings(&entries)?;
        Ok(MarkedGraphDiagram { entries, markers })
    }

    pub fn markers(&self) -> &[Marker] {
        &self.markers
    }

    /// Replaces every marker by its smoothing for the given side.
    pub fn resolve_markers(&self, side: Side) -> Result<ResolvedDiagram> {
        let crossings = resolve_crossings(&self.entries)?;
        let joins: Vec<(String, String)> = self
            .markers
            .iter()
            .flat_map(|m| m.joins(side))
            .collect();
        let (diagram, edge_to_arc) = assemble_diagram(&self.entries, &crossings, &joins)?;
        Ok(ResolvedDiagram {
            diagram,
            edge_to_arc,
        })
    }

    /// The surface-quandle presentation: the lower resolution's
    /// presentation plus `x_i = y_i` for each marker. Tautological marker
    /// relations (both ends on one arc) are dropped.
    pub fn ch_presentation(&self) -> Result<QuandlePresentation> {
        let lower = self.resolve_markers(Side::Lower)?;
        let base = lower.diagram.quandle_presentation();
        let mut relations = base.relations().to_vec();
        for m in &self.markers {
            let [(p, _), (r, _)] = m.joins(Side::Lower);
            let x = &lower.edge_to_arc[&p];
            let y = &lower.edge_to_arc[&r];
            if x != y {
                relations.push((
                    FreeQuandleElement::generator(x.clone()),
                    FreeQuandleElement::generator(y.clone()),
                ));
            }
        }
        QuandlePresentation::new(base.generators().to_vec(), relations)
    }
}

/// Marker pairs as arcs of the lower resolution, for building the
/// hyperbolic-splitting movie of a CH diagram.
pub fn marker_arc_pairs(mgd: &MarkedGraphDiagram) -> Result<Vec<(Symbol, Symbol)>> {
    let lower = mgd.resolve_markers(Side::Lower)?;
    Ok(mgd
        .markers
        .iter()
        .map(|m| {
            let [(p, _), (r, _)] = m.joins(Side::Lower);
            (lower.edge_to_arc[&p].clone(), lower.edge_to_arc[&r].clone())
        })
        .collect())
}
