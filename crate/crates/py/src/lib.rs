//! Python bindings: finite quandles, presentations, and the diagram
//! compilers. Reports with nested structure come back as JSON strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use quandles::battery::standard_battery;
use quandles::braid::{torus_knot_braid, BraidWord};
use quandles::concordance::{
    obstruct_ribbon_concordance, RibbonConcordanceDiagram, Verdict,
};
use quandles::group::GroupTable;
use quandles::link::parse_pd;
use quandles::marked::{MarkedGraphDiagram, Side};
use quandles::movie::MovieScript;
use quandles::presentation::QuandlePresentation;
use quandles::quandle::{verify_axioms, FiniteQuandle};

fn value_error(e: quandles::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn quandle_from(result: quandles::Result<FiniteQuandle>) -> PyResult<Quandle> {
    result.map(|inner| Quandle { inner }).map_err(value_error)
}

/// A finite quandle given by its operation table.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Quandle {
    inner: FiniteQuandle,
}

#[pymethods]
impl Quandle {
    /// Build from a full operation table (rejects axiom violations).
    #[new]
    fn new(table: Vec<Vec<usize>>) -> PyResult<Self> {
        quandle_from(FiniteQuandle::from_table(table))
    }

    /// The dihedral quandle on n elements, x ▷ y = 2y − x (mod n).
    #[staticmethod]
    fn dihedral(n: usize) -> PyResult<Self> {
        quandle_from(FiniteQuandle::dihedral(n))
    }

    /// The conjugation quandle of a group multiplication table.
    #[staticmethod]
    fn conjugation(mul: Vec<Vec<usize>>) -> PyResult<Self> {
        let group = GroupTable::from_mul_table(mul).map_err(value_error)?;
        Ok(Quandle {
            inner: group.conjugation_quandle(),
        })
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    /// x ▷ y.
    fn op(&self, x: usize, y: usize) -> PyResult<usize> {
        self.check_range(x, y)?;
        Ok(self.inner.op(x, y))
    }

    /// x ◁ y.
    fn inv_op(&self, x: usize, y: usize) -> PyResult<usize> {
        self.check_range(x, y)?;
        Ok(self.inner.inv_op(x, y))
    }

    fn table(&self) -> Vec<Vec<usize>> {
        self.inner.table()
    }

    fn __repr__(&self) -> String {
        format!("Quandle(size={})", self.inner.size())
    }
}

impl Quandle {
    fn check_range(&self, x: usize, y: usize) -> PyResult<()> {
        if x >= self.inner.size() || y >= self.inner.size() {
            return Err(PyValueError::new_err(format!(
                "element out of range for size {}",
                self.inner.size()
            )));
        }
        Ok(())
    }
}

/// A quandle presentation ⟨generators | relations⟩.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Presentation {
    inner: QuandlePresentation,
}

#[pymethods]
impl Presentation {
    /// Parse the presentation JSON file format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Presentation {
            inner: QuandlePresentation::from_json(text).map_err(value_error)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn generators(&self) -> Vec<String> {
        self.inner
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect()
    }

    fn relations(&self) -> Vec<(String, String)> {
        self.inner
            .relations()
            .iter()
            .map(|(l, r)| (l.to_string(), r.to_string()))
            .collect()
    }

    /// Number of colorings into the target quandle.
    #[pyo3(signature = (target, workers = 1))]
    fn count_colorings(&self, target: &Quandle, workers: usize) -> u64 {
        self.inner
            .count_colorings(&target.inner, false, workers)
            .count
    }

    /// The colorings themselves, as value tuples in generator order.
    fn colorings(&self, target: &Quandle) -> Vec<Vec<usize>> {
        self.inner
            .count_colorings(&target.inner, true, 1)
            .colorings
            .unwrap_or_default()
    }

    /// Tietze simplification; preserves all coloring counts.
    fn simplify(&self) -> Presentation {
        Presentation {
            inner: self.inner.simplify(),
        }
    }

    fn rank_upper_bound(&self) -> usize {
        self.inner.rank_upper_bound()
    }

    fn __repr__(&self) -> String {
        format!("Presentation({})", self.inner)
    }
}

/// Check the quandle axioms of a table; returns (valid, violations).
#[pyfunction]
fn verify_table(table: Vec<Vec<usize>>) -> PyResult<(bool, Vec<String>)> {
    let report = verify_axioms(&table).map_err(value_error)?;
    Ok((
        report.is_valid(),
        report.violations.iter().map(|v| v.to_string()).collect(),
    ))
}

/// Fundamental-quandle presentation of a PD text diagram.
#[pyfunction]
fn pd_presentation(text: &str) -> PyResult<Presentation> {
    Ok(Presentation {
        inner: parse_pd(text).map_err(value_error)?.quandle_presentation(),
    })
}

/// Closure presentation of a braid word `q: 1 1 -2`.
#[pyfunction]
fn braid_closure(word: &str) -> PyResult<Presentation> {
    Ok(Presentation {
        inner: BraidWord::parse(word)
            .map_err(value_error)?
            .closure_presentation(),
    })
}

/// PD text of a braid closure.
#[pyfunction]
fn braid_closure_pd(word: &str) -> PyResult<String> {
    Ok(BraidWord::parse(word).map_err(value_error)?.closure_pd())
}

/// The braid word of the torus knot/link T(p, q).
#[pyfunction]
fn torus_braid(p: usize, q: usize) -> PyResult<String> {
    Ok(torus_knot_braid(p, q).map_err(value_error)?.to_string())
}

/// Compile a movie script (JSON text) to a presentation.
#[pyfunction]
fn movie_presentation(json_text: &str) -> PyResult<Presentation> {
    let script = MovieScript::from_json(json_text).map_err(value_error)?;
    Ok(Presentation {
        inner: quandles::movie::movie_presentation(&script).map_err(value_error)?,
    })
}

/// Compile a marked-graph (CH) diagram to a presentation.
#[pyfunction]
fn ch_presentation(text: &str) -> PyResult<Presentation> {
    let mgd = MarkedGraphDiagram::parse(text).map_err(value_error)?;
    Ok(Presentation {
        inner: mgd.ch_presentation().map_err(value_error)?,
    })
}

/// Resolve the markers of a CH diagram; returns (arcs, crossings,
/// components) of the chosen side ("lower" or "upper").
#[pyfunction]
fn ch_resolve(text: &str, side: &str) -> PyResult<(Vec<String>, usize, usize)> {
    let side = match side {
        "lower" => Side::Lower,
        "upper" => Side::Upper,
        other => {
            return Err(PyValueError::new_err(format!(
                "side must be 'lower' or 'upper', got {other:?}"
            )))
        }
    };
    let mgd = MarkedGraphDiagram::parse(text).map_err(value_error)?;
    let resolved = mgd.resolve_markers(side).map_err(value_error)?;
    Ok((
        resolved
            .diagram
            .arcs()
            .iter()
            .map(|a| a.to_string())
            .collect(),
        resolved.diagram.crossings().len(),
        resolved.diagram.n_components(),
    ))
}

/// Run the concordance-theorem consequence checks on a concordance JSON
/// file's text. Returns (ok, report_json) over the standard battery.
#[pyfunction]
fn concordance_check(json_text: &str) -> PyResult<(bool, String)> {
    let rc = RibbonConcordanceDiagram::from_json(json_text).map_err(value_error)?;
    let battery = standard_battery();
    let surjectivity = rc.check_surjectivity(&battery);
    let injectivity = rc.check_injectivity(&battery);
    let ok = surjectivity.ok();
    let report = serde_json_string(&(surjectivity.checks, injectivity.checks));
    Ok((ok, report))
}

/// Bounded obstruction screen; returns (verdict, report_json) where the
/// verdict is "no_obstruction", "obstructed" or "inconclusive".
#[pyfunction]
#[pyo3(signature = (k1_pd, k0_pd, budget = 2))]
fn obstruct(k1_pd: &str, k0_pd: &str, budget: usize) -> PyResult<(String, String)> {
    let k1 = parse_pd(k1_pd).map_err(value_error)?;
    let k0 = parse_pd(k0_pd).map_err(value_error)?;
    let report = obstruct_ribbon_concordance(&k1, &k0, &standard_battery(), budget);
    let kind = match &report.verdict {
        Verdict::NoObstructionFound => "no_obstruction",
        Verdict::Obstructed { .. } => "obstructed",
        Verdict::Inconclusive { .. } => "inconclusive",
    };
    Ok((kind.to_string(), serde_json_string(&report.verdict)))
}

fn serde_json_string<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .map(|v| v.to_string())
        .unwrap_or_else(|e| format!("{{\"error\":\"{e}\"}}"))
}

#[pymodule]
fn quandles_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Quandle>()?;
    m.add_class::<Presentation>()?;
    m.add_function(wrap_pyfunction!(verify_table, m)?)?;
    m.add_function(wrap_pyfunction!(pd_presentation, m)?)?;
    m.add_function(wrap_pyfunction!(braid_closure, m)?)?;
    m.add_function(wrap_pyfunction!(braid_closure_pd, m)?)?;
    m.add_function(wrap_pyfunction!(torus_braid, m)?)?;
    m.add_function(wrap_pyfunction!(movie_presentation, m)?)?;
    m.add_function(wrap_pyfunction!(ch_presentation, m)?)?;
    m.add_function(wrap_pyfunction!(ch_resolve, m)?)?;
    m.add_function(wrap_pyfunction!(concordance_check, m)?)?;
    m.add_function(wrap_pyfunction!(obstruct, m)?)?;
    Ok(())
}
