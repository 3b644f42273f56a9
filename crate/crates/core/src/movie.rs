//! Motion-picture scripts of surfaces in 4-space, compiled to quandle
//! presentations.
//!
//! A script is an initial still (a link diagram) followed by events. The
//! compilation is a pure fold:
//!
//! * `Birth` adds a fresh generator;
//! * `Saddle` adds the relation `a = b` between two live arcs;
//! * `Death` adds nothing (it must target a crossingless component);
//! * `Relabel` (a Reidemeister move between stills) introduces new arcs
//!   with explicit defining relations over the old arcs and retires old
//!   ones — Tietze-equivalent to leaving the presentation unchanged;
//! * `BoundaryAppear` takes a disjoint union with a supplied presentation;
//! * `BoundaryCap` ends the surface in a boundary component.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free::{FreeQuandleElement, Symbol};
use crate::link::{parse_pd, LinkDiagram};
use crate::presentation::{PresentationFile, QuandlePresentation};

#[derive(Clone, Debug)]
pub enum MovieEvent {
    Birth {
        label: Symbol,
    },
    Saddle {
        a: Symbol,
        b: Symbol,
    },
    Death {
        label: Symbol,
    },
    Relabel {
        retired: Vec<Symbol>,
        introduced: Vec<(Symbol, FreeQuandleElement)>,
    },
    BoundaryAppear {
        presentation: QuandlePresentation,
    },
    BoundaryCap {
        arcs: Vec<Symbol>,
    },
}

#[derive(Clone, Debug)]
pub struct MovieScript {
    pub initial: LinkDiagram,
    pub events: Vec<MovieEvent>,
}

/// Result of compiling a script: the presentation plus the labels still
/// live after the last still.
#[derive(Clone, Debug)]
pub struct CompiledMovie {
    pub presentation: QuandlePresentation,
    pub live: Vec<Symbol>,
}

impl CompiledMovie {
    /// A closed surface leaves no live boundary labels.
    pub fn is_closed(&self) -> bool {
        self.live.is_empty()
    }
}

struct LiveArc {
    symbol: Symbol,
    /// Saddle-connected component id; merged classes die together.
    class: usize,
    /// Conservative: true only for arcs known to bound crossingless
    /// circles (initial loops and births). Deaths must target these.
    crossing_free: bool,
}

impl MovieScript {
    pub fn compile(&self) -> Result<CompiledMovie> {
        let mut presentation = self.initial.quandle_presentation();
        let mut live: Vec<LiveArc> = Vec::new();
        let mut next_class = 0usize;
        let loop_arcs = self.initial.loop_arcs();
        for (i, arc) in self.initial.arcs().iter().enumerate() {
            live.push(LiveArc {
                symbol: arc.clone(),
                class: next_class,
                crossing_free: loop_arcs.contains(&i),
            });
            next_class += 1;
        }

        let script_err = |index: usize, message: String| Error::Script { index, message };
        let find = |live: &[LiveArc], sym: &Symbol| live.iter().position(|a| a.symbol == *sym);

        for (index, event) in self.events.iter().enumerate() {
            match event {
                MovieEvent::Birth { label } => {
                    if presentation.generators().contains(label) {
                        return Err(script_err(
                            index,
                            format!("birth label `{label}` is not fresh"),
                        ));
                    }
                    let mut gens = presentation.generators().to_vec();
                    gens.push(label.clone());
                    presentation =
                        QuandlePresentation::new(gens, presentation.relations().to_vec())?;
                    live.push(LiveArc {
                        symbol: label.clone(),
                        class: next_class,
                        crossing_free: true,
                    });
                    next_class += 1;
                }
                MovieEvent::Saddle { a, b } => {
                    let (ia, ib) = match (find(&live, a), find(&live, b)) {
                        (Some(ia), Some(ib)) => (ia, ib),
                        (None, _) => {
                            return Err(script_err(index, format!("saddle on dead label `{a}`")))
                        }
                        (_, None) => {
                            return Err(script_err(index, format!("saddle on dead label `{b}`")))
                        }
                    };
                    let mut rels = presentation.relations().to_vec();
                    rels.push((
                        FreeQuandleElement::generator(a.clone()),
                        FreeQuandleElement::generator(b.clone()),
                    ));
                    presentation =
                        QuandlePresentation::new(presentation.generators().to_vec(), rels)?;
                    let (keep, gone) = (live[ia].class, live[ib].class);
                    for arc in &mut live {
                        if arc.class == gone {
                            arc.class = keep;
                        }
                    }
                }
                MovieEvent::Death { label } => {
                    let i = find(&live, label).ok_or_else(|| {
                        script_err(index, format!("death of dead label `{label}`"))
                    })?;
                    // The whole saddle-connected class is the dying
                    // component; it must be built from crossingless pieces.
                    let class = live[i].class;
                    if let Some(bad) = live
                        .iter()
                        .find(|a| a.class == class && !a.crossing_free)
                    {
                        return Err(script_err(
                            index,
                            format!(
                                "death of `{label}` would cap a component containing arc `{}`, \
                                 which is not a crossingless loop",
                                bad.symbol
                            ),
                        ));
                    }
                    live.retain(|a| a.class != class);
                }
                MovieEvent::Relabel { retired, introduced } => {
                    let live_syms: Vec<Symbol> =
                        live.iter().map(|a| a.symbol.clone()).collect();
                    for r in retired {
                        if !live_syms.contains(r) {
                            return Err(script_err(
                                index,
                                format!("relabel retires dead label `{r}`"),
                            ));
                        }
                    }
                    for (label, value) in introduced {
                        if presentation.generators().contains(label) {
                            return Err(script_err(
                                index,
                                format!("introduced label `{label}` is not fresh"),
                            ));
                        }
                        if let Some(missing) =
                            value.symbols().into_iter().find(|s| !live_syms.contains(s))
                        {
                            return Err(script_err(
                                index,
                                format!(
                                    "definition of `{label}` references non-live label `{missing}`"
                                ),
                            ));
                        }
                        let mut gens = presentation.generators().to_vec();
                        gens.push(label.clone());
                        let mut rels = presentation.relations().to_vec();
                        rels.push((FreeQuandleElement::generator(label.clone()), value.clone()));
                        presentation = QuandlePresentation::new(gens, rels)?;
                    }
                    live.retain(|a| !retired.contains(&a.symbol));
                    for (label, _) in introduced {
                        live.push(LiveArc {
                            symbol: label.clone(),
                            class: next_class,
                            crossing_free: false,
                        });
                        next_class += 1;
                    }
                }
                MovieEvent::BoundaryAppear { presentation: k } => {
                    presentation = presentation.disjoint_union(k).map_err(|e| {
                        script_err(index, format!("boundary link labels are not fresh: {e}"))
                    })?;
                    for g in k.generators() {
                        live.push(LiveArc {
                            symbol: g.clone(),
                            class: next_class,
                            crossing_free: false,
                        });
                        next_class += 1;
                    }
                }
                MovieEvent::BoundaryCap { arcs } => {
                    for a in arcs {
                        if find(&live, a).is_none() {
                            return Err(script_err(
                                index,
                                format!("boundary cap on dead label `{a}`"),
                            ));
                        }
                    }
                    live.retain(|a| !arcs.contains(&a.symbol));
                }
            }
        }
        Ok(CompiledMovie {
            presentation,
            live: live.into_iter().map(|a| a.symbol).collect(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: MovieScriptFile = serde_json::from_str(text)
            .map_err(|e| Error::parse_at(e.line(), e.column(), e.to_string()))?;
        file.try_into()
    }
}

/// Compiles a script to its presentation.
pub fn movie_presentation(script: &MovieScript) -> Result<QuandlePresentation> {
    Ok(script.compile()?.presentation)
}

// ---------------------------------------------------------------------------
// JSON file format
// ---------------------------------------------------------------------------

/// Movie script file:
/// `{"initial": "<PD text>", "events": [{"type": "birth", "label": "x"}, ...]}`.
#[derive(Serialize, Deserialize)]
pub struct MovieScriptFile {
    pub initial: String,
    pub events: Vec<MovieEventFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MovieEventFile {
    Birth {
        label: Symbol,
    },
    Saddle {
        a: Symbol,
        b: Symbol,
    },
    Death {
        label: Symbol,
    },
    Relabel {
        #[serde(default)]
        retired: Vec<Symbol>,
        #[serde(default)]
        introduced: Vec<IntroducedArc>,
    },
    BoundaryAppear {
        presentation: PresentationFile,
    },
    BoundaryCap {
        arcs: Vec<Symbol>,
    },
}

#[derive(Serialize, Deserialize)]
pub struct IntroducedArc {
    pub label: Symbol,
    pub value: FreeQuandleElement,
}

impl TryFrom<MovieScriptFile> for MovieScript {
    type Error = Error;

    fn try_from(file: MovieScriptFile) -> Result<Self> {
        let initial = parse_pd(&file.initial)?;
        let events = file
            .events
            .into_iter()
            .map(|e| {
                Ok(match e {
                    MovieEventFile::Birth { label } => MovieEvent::Birth { label },
                    MovieEventFile::Saddle { a, b } => MovieEvent::Saddle { a, b },
                    MovieEventFile::Death { label } => MovieEvent::Death { label },
                    MovieEventFile::Relabel { retired, introduced } => MovieEvent::Relabel {
                        retired,
                        introduced: introduced
                            .into_iter()
                            .map(|i| (i.label, i.value))
                            .collect(),
                    },
                    MovieEventFile::BoundaryAppear { presentation } => {
                        MovieEvent::BoundaryAppear {
                            presentation: presentation.try_into()?,
                        }
                    }
                    MovieEventFile::BoundaryCap { arcs } => MovieEvent::BoundaryCap { arcs },
                })
            })
            .collect::<Result<_>>()?;
        Ok(MovieScript { initial, events })
    }
}
