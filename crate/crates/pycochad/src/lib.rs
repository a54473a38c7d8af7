//! Python bindings for the cochad library: group construction, Hadamard
//! cocycle enumeration, coboundary search, verification, and ideal export.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cochad::{
    build_system, emit_ig, emit_jg, enumerate_hadamard_cocycles, family_basis, make_group,
    parse_group_table, render, search, verify_support, EnumerateOptions, Family, FixMask,
    SearchFilters, SearchOptions, Syntax,
};

fn err(e: cochad::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_family(name: &str) -> PyResult<Family> {
    name.parse::<Family>().map_err(err)
}

/// A finite group given by its multiplication table, 1-based indices.
#[pyclass(frozen)]
struct Group {
    inner: cochad::GroupTable,
}

#[pymethods]
impl Group {
    /// Build the abelian ("z") or dihedral ("d") group of order 4t.
    #[staticmethod]
    fn family(name: &str, t: usize) -> PyResult<Group> {
        Ok(Group {
            inner: make_group(parse_family(name)?, t).map_err(err)?,
        })
    }

    /// Parse a multiplication table in the text format of the CLI.
    #[staticmethod]
    fn from_table(text: &str) -> PyResult<Group> {
        Ok(Group {
            inner: parse_group_table(text).map_err(err)?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn mul(&self, i: usize, j: usize) -> PyResult<usize> {
        let n = self.inner.order();
        if i < 1 || i > n || j < 1 || j > n {
            return Err(PyValueError::new_err(format!(
                "indices must lie in 1..={}",
                n
            )));
        }
        Ok(self.inner.mul(i, j))
    }

    fn inv(&self, i: usize) -> PyResult<usize> {
        let n = self.inner.order();
        if i < 1 || i > n {
            return Err(PyValueError::new_err(format!("index must lie in 1..={}", n)));
        }
        Ok(self.inner.inv(i))
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }
}

/// Count the Hadamard cocycles of a family group by brute force.
#[pyfunction]
#[pyo3(signature = (family, t, budget_bits=None, threads=1))]
fn enumerate_count(family: &str, t: usize, budget_bits: Option<u32>, threads: usize) -> PyResult<u64> {
    let g = make_group(parse_family(family)?, t).map_err(err)?;
    let opts = EnumerateOptions {
        count_only: true,
        budget_bits: budget_bits.unwrap_or(EnumerateOptions::default().budget_bits),
        threads,
    };
    Ok(enumerate_hadamard_cocycles(&g, &opts).map_err(err)?.count)
}

/// Coboundary subscript sets whose product with the family representative
/// is Hadamard, as sorted lists of 1-based subscripts.
#[pyfunction]
#[pyo3(signature = (family, t, fix=None, budget_bits=None, threads=1))]
fn search_supports(
    family: &str,
    t: usize,
    fix: Option<&str>,
    budget_bits: Option<u32>,
    threads: usize,
) -> PyResult<Vec<Vec<usize>>> {
    let basis = family_basis(parse_family(family)?, t).map_err(err)?;
    let mask = match fix {
        Some(spec) => FixMask::parse(spec, basis.num_vars()).map_err(err)?,
        None => FixMask::all_free(basis.num_vars()),
    };
    let opts = SearchOptions {
        count_only: false,
        threads,
        budget_bits: budget_bits.unwrap_or(SearchOptions::default().budget_bits),
    };
    let found = search(&basis, &mask, &SearchFilters::default(), &opts).map_err(err)?;
    Ok(found.solutions.iter().map(|x| x.support()).collect())
}

/// Check one coboundary subscript set; returns (is_hadamard, matrix_text).
#[pyfunction]
fn verify(family: &str, t: usize, cob: Vec<usize>) -> PyResult<(bool, String)> {
    let (ok, m) = verify_support(parse_family(family)?, t, &cob).map_err(err)?;
    Ok((ok, m.to_text()))
}

/// Render a polynomial ideal ("ig" or "jg") in "plain" or "singular" syntax.
#[pyfunction]
#[pyo3(signature = (kind, family, t, syntax="plain"))]
fn emit_ideal(kind: &str, family: &str, t: usize, syntax: &str) -> PyResult<String> {
    let syntax: Syntax = syntax.parse().map_err(err)?;
    let ideal = match kind {
        "ig" => emit_ig(&make_group(parse_family(family)?, t).map_err(err)?),
        "jg" => {
            let basis = family_basis(parse_family(family)?, t).map_err(err)?;
            emit_jg(&basis, &build_system(&basis)).map_err(err)?
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "kind must be 'ig' or 'jg', got '{}'",
                other
            )))
        }
    };
    Ok(render(&ideal, syntax))
}

/// The published solution tables as (t, subscripts) pairs; which is 2 or 3.
#[pyfunction]
fn table(which: u32) -> PyResult<Vec<(usize, Vec<usize>)>> {
    let rows = match which {
        2 => cochad::table2(),
        3 => cochad::table3(),
        other => {
            return Err(PyValueError::new_err(format!(
                "table must be 2 or 3, got {}",
                other
            )))
        }
    };
    Ok(rows.into_iter().map(|r| (r.t, r.support)).collect())
}

#[pymodule]
fn pycochad(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_function(wrap_pyfunction!(enumerate_count, m)?)?;
    m.add_function(wrap_pyfunction!(search_supports, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(emit_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    Ok(())
}
