use pyo3::prelude::*;

#[pymodule]
fn sweff_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
