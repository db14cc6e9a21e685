//! Python bindings: a thin `Curve` class over the exact engine. Bundles are
//! passed as JSON strings in the same schema the CLI uses; structured
//! results come back as JSON strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use curve_koszul::catalog;
use curve_koszul::curve::NodalCurve;
use curve_koszul::files::{
    canonical_json, coefficient_bundle_from_file, line_bundle_from_file, linear_system_from_file,
    parse_bundle_file, parse_curve_file,
};
use curve_koszul::koszul::{duality_check, koszul_dim, KoszulConfig};
use curve_koszul::sheaf::{CoefficientBundle, LineBundle, LinearSystem};
use curve_koszul::theorems::{
    compute_bounds, default_probe_points, spanned_probe, ununs_level, verify_np_direct,
    verify_vanishing,
};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn config(cap: Option<u64>) -> KoszulConfig {
    KoszulConfig {
        slice_cap_entries: cap.map(|c| c as u128).unwrap_or(1_000_000),
        check_complex: false,
    }
}

/// A nodal curve with rational components.
#[pyclass]
struct Curve {
    inner: NodalCurve,
}

impl Curve {
    fn bundle(
        &self,
        bundle_json: &str,
    ) -> PyResult<(LineBundle, LinearSystem, Option<CoefficientBundle>)> {
        let file = parse_bundle_file(bundle_json).map_err(err)?;
        let l = line_bundle_from_file(&self.inner, &file).map_err(err)?;
        let w = linear_system_from_file(&self.inner, &l, &file).map_err(err)?;
        let e = coefficient_bundle_from_file(&self.inner, &file).map_err(err)?;
        Ok((l, w, e))
    }
}

#[pymethods]
impl Curve {
    /// Parse a curve description (same JSON schema as the CLI).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let (inner, _) = parse_curve_file(text).map_err(err)?;
        Ok(Curve { inner })
    }

    /// One of the bundled fixtures F1..F5.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        Ok(Curve {
            inner: catalog::by_name(name).map_err(err)?,
        })
    }

    fn genus(&self) -> PyResult<i64> {
        self.inner.arithmetic_genus().map_err(err)
    }

    fn component_ids(&self) -> Vec<String> {
        self.inner
            .components()
            .iter()
            .map(|c| c.id.clone())
            .collect()
    }

    fn node_ids(&self) -> Vec<String> {
        self.inner.nodes().iter().map(|n| n.id.clone()).collect()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    /// h^0 of the bundle described by `bundle_json`.
    fn h0(&self, bundle_json: &str) -> PyResult<usize> {
        let (l, _, _) = self.bundle(bundle_json)?;
        curve_koszul::sheaf::h0(&self.inner, &l).map_err(err)
    }

    fn h1(&self, bundle_json: &str) -> PyResult<usize> {
        let (l, _, _) = self.bundle(bundle_json)?;
        curve_koszul::sheaf::h1(&self.inner, &l).map_err(err)
    }

    /// dim K_{p,q}(X; B, L, W); B defaults to the structure sheaf when the
    /// bundle JSON carries no "E" entry.
    #[pyo3(signature = (bundle_json, p, q, cap=None))]
    fn koszul_dim(&self, bundle_json: &str, p: i64, q: i64, cap: Option<u64>) -> PyResult<usize> {
        let (l, w, e) = self.bundle(bundle_json)?;
        let coeff =
            e.unwrap_or_else(|| CoefficientBundle::line(LineBundle::structure_sheaf(&self.inner)));
        koszul_dim(&self.inner, p, q, &coeff, &l, &w, &config(cap)).map_err(err)
    }

    /// Both sides of the duality identity at position p (requires h^1 = 0).
    #[pyo3(signature = (bundle_json, p, cap=None))]
    fn duality_pair(
        &self,
        bundle_json: &str,
        p: i64,
        cap: Option<u64>,
    ) -> PyResult<(usize, usize)> {
        let (l, _, _) = self.bundle(bundle_json)?;
        duality_check(&self.inner, p, &l, &config(cap)).map_err(err)
    }

    /// Full bound report as JSON.
    fn bounds_json(&self, bundle_json: &str) -> PyResult<String> {
        let (l, w, e) = self.bundle(bundle_json)?;
        let report = compute_bounds(&self.inner, &l, &w, e.as_ref()).map_err(err)?;
        Ok(canonical_json(&report))
    }

    fn ununs_level(&self, bundle_json: &str) -> PyResult<i64> {
        let (l, _, _) = self.bundle(bundle_json)?;
        ununs_level(&self.inner, &l).map_err(err)
    }

    /// Spannedness probe at colength k; returns the verdict as JSON.
    fn spanned_json(&self, bundle_json: &str, k: u32) -> PyResult<String> {
        let (l, _, _) = self.bundle(bundle_json)?;
        let probes = default_probe_points(&self.inner, 2);
        let verdict = spanned_probe(&self.inner, &l, k, &probes).map_err(err)?;
        Ok(canonical_json(&verdict))
    }

    /// Direct N_p verification report as JSON.
    #[pyo3(signature = (bundle_json, p_max, cap=None))]
    fn verify_np_json(&self, bundle_json: &str, p_max: i64, cap: Option<u64>) -> PyResult<String> {
        let (l, _, _) = self.bundle(bundle_json)?;
        let report = verify_np_direct(&self.inner, &l, p_max, &config(cap)).map_err(err)?;
        Ok(canonical_json(&report))
    }

    /// Vanishing verification report as JSON; E defaults to the dualizing
    /// sheaf when the bundle JSON carries no "E" entry.
    #[pyo3(signature = (bundle_json, threshold_offset=0, cap=None))]
    fn verify_vanishing_json(
        &self,
        bundle_json: &str,
        threshold_offset: i64,
        cap: Option<u64>,
    ) -> PyResult<String> {
        let (l, w, e) = self.bundle(bundle_json)?;
        let coeff = e.unwrap_or_else(|| {
            CoefficientBundle::line(curve_koszul::sheaf::dualizing_sheaf(&self.inner))
        });
        let report = verify_vanishing(&self.inner, &coeff, &l, &w, threshold_offset, &config(cap))
            .map_err(err)?;
        Ok(canonical_json(&report))
    }

    /// Report for the testable statement "ununs level k implies N_{k-3}":
    /// agreement or a counterexample candidate, never an assertion.
    #[pyo3(signature = (bundle_json, cap=None))]
    fn kununs_hypothesis_json(&self, bundle_json: &str, cap: Option<u64>) -> PyResult<String> {
        let (l, _, _) = self.bundle(bundle_json)?;
        let report = hypothesis_kununs_np(&self.inner, &l, &config(cap)).map_err(err)?;
        Ok(canonical_json(&report))
    }

    fn __repr__(&self) -> String {
        format!(
            "Curve(components={}, nodes={}, genus={})",
            self.inner.components().len(),
            self.inner.nodes().len(),
            self.inner
                .arithmetic_genus()
                .map(|g| g.to_string())
                .unwrap_or_else(|_| "disconnected".into())
        )
    }
}

#[pymodule]
fn curve_koszul_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Curve>()?;
    m.add("FIXTURES", catalog::NAMES.to_vec())?;
    Ok(())
}
