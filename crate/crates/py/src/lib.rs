//! Python module `graded`: groupoids, matrix-unit gradings, commutant
//! theorems, the induced action and nonfree certificates.
//!
//! Elements are returned as matrix-unit support strings such as
//! `"e11+e33"`; failures raise `ValueError`.

use std::collections::BTreeMap;

use graded_core::fixtures;
use graded_core::{
    build_das, monoid_counterexample, nonfree_example, FiniteGroupoid, GradedAction, GradedAlgebra, GroupoidDoc,
    MorphismId, SelectionSpec, Subspace,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A validated finite groupoid.
#[pyclass(module = "graded", frozen)]
pub struct Groupoid {
    inner: FiniteGroupoid,
    selection: Option<Vec<String>>,
}

impl Groupoid {
    fn id(&self, name: &str) -> PyResult<MorphismId> {
        self.inner
            .morphism_by_name(name)
            .ok_or_else(|| err(format!("unknown morphism {name:?}")))
    }

    fn names(&self, ids: &[MorphismId]) -> Vec<String> {
        ids.iter().map(|&s| self.inner.name(s).to_string()).collect()
    }

    fn from_doc(doc: GroupoidDoc) -> PyResult<Self> {
        Ok(Groupoid {
            inner: doc.groupoid().map_err(err)?,
            selection: doc.selection,
        })
    }
}

#[pymethods]
impl Groupoid {
    /// Built-in example: `"z4"` or `"two-object"`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        Self::from_doc(fixtures::doc(name).ok_or_else(|| err(format!("unknown fixture {name:?}")))?)
    }

    /// Parses a JSON document with `objects`, `morphisms` and `compose`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Self::from_doc(GroupoidDoc::parse(text).map_err(err)?)
    }

    #[staticmethod]
    fn cyclic(order: usize) -> PyResult<Self> {
        if order == 0 {
            return Err(err("order must be positive"));
        }
        Ok(Groupoid {
            inner: fixtures::cyclic_group(order),
            selection: None,
        })
    }

    fn to_json(&self) -> String {
        GroupoidDoc {
            category: self.inner.to_description(),
            inverse: None,
            selection: self.selection.clone(),
        }
        .to_json()
    }

    fn objects(&self) -> Vec<String> {
        self.inner
            .object_ids()
            .map(|e| self.inner.object_name(e).to_string())
            .collect()
    }

    fn morphisms(&self) -> Vec<String> {
        self.inner
            .morphism_ids()
            .map(|s| self.inner.name(s).to_string())
            .collect()
    }

    /// The selection stored in the source document, if any.
    fn default_selection(&self) -> Option<Vec<String>> {
        self.selection.clone()
    }

    fn compose(&self, s: &str, t: &str) -> PyResult<Option<String>> {
        let (s, t) = (self.id(s)?, self.id(t)?);
        Ok(self.inner.compose(s, t).map(|st| self.inner.name(st).to_string()))
    }

    fn inverse(&self, s: &str) -> PyResult<String> {
        Ok(self.inner.name(self.inner.inverse(self.id(s)?)).to_string())
    }

    /// Every subgroupoid as a list of morphism names.
    fn subgroupoids(&self) -> PyResult<Vec<Vec<String>>> {
        let subs = self.inner.enumerate_subgroupoids(20).map_err(err)?;
        Ok(subs.iter().map(|h| self.names(h.morphisms())).collect())
    }

    fn __len__(&self) -> usize {
        self.inner.morphism_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Groupoid(objects={}, morphisms={})",
            self.inner.object_count(),
            self.inner.morphism_count()
        )
    }
}

/// A graded subalgebra of a matrix algebra.
#[pyclass(module = "graded", frozen)]
pub struct Grading {
    graded: GradedAlgebra,
}

impl Grading {
    fn support(&self, s: &Subspace) -> Vec<String> {
        s.basis().iter().map(|v| self.graded.algebra().describe(v)).collect()
    }

    fn id(&self, name: &str) -> PyResult<MorphismId> {
        self.graded
            .category()
            .morphism_by_name(name)
            .ok_or_else(|| err(format!("unknown morphism {name:?}")))
    }

    fn action(&self) -> PyResult<GradedAction> {
        GradedAction::new(&self.graded).map_err(err)
    }
}

#[pymethods]
impl Grading {
    /// `R_s = span{e_ij : s_i s = s_j}` for the selection `s_1, ..., s_n`.
    /// Defaults to the groupoid's stored selection.
    #[new]
    #[pyo3(signature = (groupoid, selection=None))]
    fn new(groupoid: &Groupoid, selection: Option<Vec<String>>) -> PyResult<Self> {
        let sel = selection
            .or_else(|| groupoid.selection.clone())
            .ok_or_else(|| err("no selection given"))?;
        let spec = SelectionSpec::from_names(groupoid.inner.category().clone(), &sel).map_err(err)?;
        Ok(Grading {
            graded: build_das(&spec).map_err(err)?.graded,
        })
    }

    /// `M_3` graded by the two-element idempotent monoid.
    #[staticmethod]
    fn monoid_counterexample() -> Self {
        Grading {
            graded: monoid_counterexample(),
        }
    }

    fn component_dims(&self) -> BTreeMap<String, usize> {
        let cat = self.graded.category();
        cat.morphism_ids()
            .map(|s| (cat.name(s).to_string(), self.graded.component(s).dim()))
            .collect()
    }

    fn component(&self, morphism: &str) -> PyResult<Vec<String>> {
        Ok(self.support(self.graded.component(self.id(morphism)?)))
    }

    fn total_dim(&self) -> usize {
        self.graded.total().dim()
    }

    fn satisfies_filter_law(&self) -> bool {
        self.graded.check_filter().is_ok()
    }

    fn is_strong(&self) -> bool {
        self.graded.check_strong().is_ok()
    }

    fn is_locally_unital(&self) -> bool {
        self.graded.local_units().is_ok()
    }

    fn is_unital(&self) -> bool {
        self.graded.check_unital().is_ok()
    }

    fn local_units(&self) -> PyResult<BTreeMap<String, String>> {
        let lu = self.graded.local_units().map_err(err)?;
        let cat = self.graded.category();
        Ok(cat
            .object_ids()
            .map(|e| {
                (
                    cat.object_name(e).to_string(),
                    self.graded.algebra().describe(lu.unit(e)),
                )
            })
            .collect())
    }

    /// Both sides of the commutant theorem for the subgroupoid generated by
    /// `generators`: `(lhs, rhs, equal)`.
    fn commutant(&self, generators: Vec<String>) -> PyResult<(Vec<String>, Vec<String>, bool)> {
        if generators.is_empty() {
            return Err(err("at least one generator is required"));
        }
        let act = self.action()?;
        let g = self
            .graded
            .groupoid()
            .ok_or_else(|| err("grading is not by a groupoid"))?;
        let ids = generators.iter().map(|n| self.id(n)).collect::<PyResult<Vec<_>>>()?;
        let h = g.closure(ids);
        let check = if g.object_count() == 1 {
            act.group_theorem(h.morphisms())
        } else {
            act.groupoid_theorem(&h)
        }
        .map_err(err)?;
        Ok((self.support(&check.lhs), self.support(&check.rhs), check.holds()))
    }

    /// The action of `morphism` as `(element, image)` pairs over a basis of
    /// its source commutant.
    fn sigma(&self, morphism: &str) -> PyResult<Vec<(String, String)>> {
        let act = self.action()?;
        let map = act.sigma(self.id(morphism)?);
        let alg = self.graded.algebra();
        Ok(map
            .source()
            .basis()
            .iter()
            .map(|c| {
                (
                    alg.describe(c),
                    alg.describe(&map.apply(c).expect("basis vector is in the source")),
                )
            })
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("Grading(dims={:?})", self.graded.component_dims())
    }
}

/// `(selection, m, dim R_c(t), dim R_t)` for a verified strongly graded ring
/// in which `R_t` is not free over `R_c(t)`.
#[pyfunction]
fn nonfree(groupoid: &Groupoid, morphism: &str) -> PyResult<(Vec<String>, usize, usize, usize)> {
    let t = groupoid.id(morphism)?;
    let out = nonfree_example(&groupoid.inner, t).map_err(err)?;
    let c = out.certificate;
    Ok((groupoid.names(out.build.spec.selection()), c.m, c.dim_unit, c.dim_t))
}

#[pymodule]
fn graded(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Groupoid>()?;
    m.add_class::<Grading>()?;
    m.add_function(wrap_pyfunction!(nonfree, m)?)?;
    Ok(())
}
