use pyo3::prelude::*;

#[pymodule]
mod wedge_gw_py {
    use std::sync::Arc;

    use pyo3::exceptions::{PyRuntimeError, PyValueError};
    use pyo3::prelude::*;

    use wedge_gw::algebra::{FormalSeries, Truncation};
    use wedge_gw::error::Error;
    use wedge_gw::gw::{self, InsertionList};
    use wedge_gw::hodge;
    use wedge_gw::partitions::{self, Partition};

    fn to_py(e: Error) -> PyErr {
        match e {
            Error::InvalidTruncation(_)
            | Error::InvalidPartition(_)
            | Error::InvalidArgument(_)
            | Error::IncompatibleVariables(..)
            | Error::BoundsExceeded(_) => PyValueError::new_err(e.to_string()),
            _ => PyRuntimeError::new_err(e.to_string()),
        }
    }

    /// Truncation window: degrees up to `q_max`, u-exponents in `[u_lo, u_hi]`,
    /// and named variables with their top orders.
    #[pyclass(name = "Truncation", frozen)]
    pub struct PyTruncation {
        inner: Arc<Truncation>,
    }

    #[pymethods]
    impl PyTruncation {
        #[new]
        #[pyo3(signature = (q_max=2, u_lo=-8, u_hi=2, vars=Vec::new()))]
        fn new(q_max: u32, u_lo: i32, u_hi: i32, vars: Vec<(String, i32)>) -> PyResult<Self> {
            let refs: Vec<(&str, i32)> = vars.iter().map(|(s, o)| (s.as_str(), *o)).collect();
            let t = Truncation::new(q_max, u_lo, u_hi, &refs).map_err(to_py)?;
            Ok(PyTruncation { inner: t.shared() })
        }

        #[getter]
        fn q_max(&self) -> u32 {
            self.inner.q_max
        }

        #[getter]
        fn u_window(&self) -> (i32, i32) {
            (self.inner.u_lo, self.inner.u_hi)
        }

        #[getter]
        fn vars(&self) -> Vec<(String, i32)> {
            self.inner.vars.iter().cloned().zip(self.inner.z_orders.iter().copied()).collect()
        }

        fn __repr__(&self) -> String {
            format!("Truncation({})", self.inner.to_json())
        }
    }

    /// An exact truncated series; coefficients are rational functions of t.
    #[pyclass(name = "Series", frozen, eq)]
    #[derive(PartialEq)]
    pub struct PySeries {
        inner: FormalSeries,
    }

    #[pymethods]
    impl PySeries {
        /// `(q, u, [z exponents], coefficient)` per nonzero term, in canonical order.
        fn terms(&self) -> Vec<(u32, i32, Vec<i32>, String)> {
            let n = self.inner.truncation().nvars();
            self.inner
                .iter()
                .map(|(m, c)| (m.q, m.u, m.z[..n].to_vec(), c.render()))
                .collect()
        }

        fn is_zero(&self) -> bool {
            self.inner.is_zero()
        }

        fn __add__(&self, other: &PySeries) -> PyResult<PySeries> {
            Ok(PySeries { inner: self.inner.try_add(&other.inner).map_err(to_py)? })
        }

        fn __sub__(&self, other: &PySeries) -> PyResult<PySeries> {
            Ok(PySeries { inner: self.inner.try_sub(&other.inner).map_err(to_py)? })
        }

        fn __mul__(&self, other: &PySeries) -> PyResult<PySeries> {
            Ok(PySeries { inner: self.inner.try_mul(&other.inner).map_err(to_py)? })
        }

        fn __len__(&self) -> usize {
            self.inner.len()
        }

        fn __str__(&self) -> String {
            self.inner.render()
        }

        fn __repr__(&self) -> String {
            format!("Series({})", self.inner.render())
        }
    }

    fn series(inner: FormalSeries) -> PySeries {
        PySeries { inner }
    }

    fn partition(parts: &str) -> PyResult<Partition> {
        parts.parse().map_err(to_py)
    }

    /// Partitions of `n` as lists of parts.
    #[pyfunction]
    fn partitions_of(n: u32) -> Vec<Vec<u32>> {
        partitions::enumerate_partitions(n).iter().map(|p| p.parts().to_vec()).collect()
    }

    /// The irreducible character of `nu` evaluated on the class `mu`.
    #[pyfunction]
    fn character(nu: &str, mu: &str) -> PyResult<i64> {
        partitions::character(&partition(nu)?, &partition(mu)?).map_err(to_py)
    }

    /// `⟨∏ τ_k(0) ∏ τ_l(∞)⟩` summed over genera and degrees in the window.
    #[pyfunction]
    #[pyo3(signature = (trunc, zero=Vec::new(), infinity=Vec::new(), connected=true))]
    fn bracket(trunc: &PyTruncation, zero: Vec<u32>, infinity: Vec<u32>, connected: bool) -> PyResult<PySeries> {
        let ins = InsertionList::new(zero, infinity);
        let x = if connected {
            gw::bracket_connected(&ins, &trunc.inner)
        } else {
            gw::bracket_disconnected(&ins, &trunc.inner)
        };
        x.map(series).map_err(to_py)
    }

    /// `𝖦_d(z, w, u)` over the first `n` and last `m` variables of `trunc`,
    /// by the operator formula or by localization.
    #[pyfunction]
    #[pyo3(signature = (trunc, n, m, d, localization=false))]
    fn g_function(trunc: &PyTruncation, n: usize, m: usize, d: u32, localization: bool) -> PyResult<PySeries> {
        let x = if localization {
            gw::g_localization(&trunc.inner, n, m, d)
        } else {
            gw::g_operator(&trunc.inner, n, m, Some(d))
        };
        x.map(series).map_err(to_py)
    }

    /// The connected n-point Hodge function over the variables of `trunc`.
    #[pyfunction]
    fn hodge_connected(trunc: &PyTruncation) -> PyResult<PySeries> {
        hodge::hodge_connected(&trunc.inner).map(series).map_err(to_py)
    }

    /// Hurwitz number `C_g(μ)` as a `(numerator, denominator)` pair.
    #[pyfunction]
    #[pyo3(signature = (genus, mu, enumerate=false))]
    fn hurwitz_number(genus: i64, mu: &str, enumerate: bool) -> PyResult<(String, String)> {
        let mu = partition(mu)?;
        let x = if enumerate {
            hodge::hurwitz_oracle(genus, &mu)
        } else {
            hodge::hurwitz_character(genus, &mu)
        }
        .map_err(to_py)?;
        Ok((x.numer().to_string(), x.denom().to_string()))
    }

    /// `H_g(μ)` from the character route, as a `(numerator, denominator)` pair.
    #[pyfunction]
    fn hodge_integral(genus: i64, mu: &str) -> PyResult<(String, String)> {
        let x = hodge::elsv_hodge(genus, &partition(mu)?).map_err(to_py)?;
        Ok((x.numer().to_string(), x.denom().to_string()))
    }

    /// Runs the command-line interface; returns `(exit code, stdout, stderr)`.
    #[pyfunction]
    fn run_cli(args: Vec<String>) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("wedge-gw".to_string()).chain(args);
        let code = wedge_gw::cli::run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8_lossy(&out).into_owned(),
            String::from_utf8_lossy(&err).into_owned(),
        )
    }
}
