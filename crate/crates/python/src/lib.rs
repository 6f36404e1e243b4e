//! Python bindings for `ellipmono-core`.
//!
//! Points and thresholds are passed as strings (`"1/4"`, `"0.3"`,
//! `"pi*exp_half_pi/4"`, `"ratio(2)"`) so no precision is lost on the way in.

use ellipmono_core::coeff::PValue;
use ellipmono_core::elliptic;
use ellipmono_core::exact::{self, BigRational, Sign};
use ellipmono_core::verify::{self, BoundSpec, Claim, Family, PrecisionPolicy, Threshold};
use ellipmono_core::Error;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

const DEFAULT_PRECISION: u32 = 128;
const DEFAULT_MAX_BITS: u32 = 8192;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn point(s: &str) -> PyResult<BigRational> {
    exact::parse_rational(s.trim())
        .or_else(|_| exact::parse_decimal(s.trim()))
        .map_err(err)
}

fn from_pi(e: exact::PiExpression) -> ExactValue {
    ExactValue(if e.exp_scale() {
        exact::ExactValue::new(exact::PiExpression::zero(false), e)
    } else {
        exact::ExactValue::new(e, exact::PiExpression::zero(true))
    })
}

fn sign_str(s: Sign) -> &'static str {
    match s {
        Sign::Positive => "+",
        Sign::Negative => "-",
        Sign::Undecided => "?",
    }
}

/// A rigorous enclosure `[lo, hi]` with dyadic endpoints.
#[pyclass(frozen, skip_from_py_object, module = "ellipmono")]
#[derive(Clone)]
pub struct Interval(exact::Interval);

#[pymethods]
impl Interval {
    #[getter]
    fn lo(&self) -> f64 {
        self.0.lo_f64()
    }

    #[getter]
    fn hi(&self) -> f64 {
        self.0.hi_f64()
    }

    #[getter]
    fn mid(&self) -> f64 {
        self.0.to_f64()
    }

    #[getter]
    fn width(&self) -> f64 {
        self.0.width_f64()
    }

    /// `"+"`, `"-"` or `"?"` when the enclosure straddles zero.
    #[getter]
    fn sign(&self) -> &'static str {
        sign_str(self.0.sign())
    }

    /// Exact endpoints as `"p/q"` strings.
    fn bounds(&self) -> (String, String) {
        (self.0.lo().to_string(), self.0.hi().to_string())
    }

    /// Whether the rational or decimal `x` lies inside.
    fn contains(&self, x: &str) -> PyResult<bool> {
        Ok(self.0.contains(&point(x)?))
    }

    #[pyo3(signature = (digits = 30))]
    fn to_decimal(&self, digits: usize) -> String {
        self.0.to_decimal(digits)
    }

    fn __float__(&self) -> f64 {
        self.0.to_f64()
    }

    fn __str__(&self) -> String {
        self.0.to_decimal(30)
    }

    fn __repr__(&self) -> String {
        format!("Interval({})", self.0.to_decimal(30))
    }
}

/// An exact value `P(pi) + Q(pi) e^{pi/2}` with rational polynomials `P`, `Q`.
#[pyclass(frozen, skip_from_py_object, module = "ellipmono")]
#[derive(Clone)]
pub struct ExactValue(exact::ExactValue);

#[pymethods]
impl ExactValue {
    /// Parse an expression over `pi`, `exp_half_pi`, rationals and `ratio(k)`.
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        exact::parse_exact(expr).map(ExactValue).map_err(err)
    }

    #[pyo3(signature = (precision = DEFAULT_PRECISION))]
    fn evaluate(&self, precision: u32) -> PyResult<Interval> {
        self.0.evaluate(precision).map(Interval).map_err(err)
    }

    fn __add__(&self, other: &ExactValue) -> ExactValue {
        ExactValue(self.0.add(&other.0))
    }

    fn __sub__(&self, other: &ExactValue) -> ExactValue {
        ExactValue(self.0.sub(&other.0))
    }

    fn __neg__(&self) -> ExactValue {
        ExactValue(self.0.neg())
    }

    fn __mul__(&self, other: &ExactValue) -> PyResult<ExactValue> {
        self.0.checked_mul(&other.0).map(ExactValue).map_err(err)
    }

    fn __eq__(&self, other: &ExactValue) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ExactValue('{}')", self.0)
    }
}

/// Lazily grown table of `W_n`, exact `b_n` and their enclosures.
#[pyclass(module = "ellipmono")]
pub struct CoefficientTable(ellipmono_core::coeff::CoefficientTable);

#[pymethods]
impl CoefficientTable {
    #[new]
    #[pyo3(signature = (exact_limit = None))]
    fn new(exact_limit: Option<usize>) -> Self {
        CoefficientTable(match exact_limit {
            Some(n) => ellipmono_core::coeff::CoefficientTable::with_exact_limit(n),
            None => ellipmono_core::coeff::CoefficientTable::new(),
        })
    }

    #[getter]
    fn exact_limit(&self) -> usize {
        self.0.exact_limit()
    }

    /// `W_n = C(2n, n) / 4^n` as `"p/q"`.
    fn wallis(&mut self, n: usize) -> String {
        self.0.wallis(n).to_string()
    }

    /// Exact `b_n`; only indices up to `exact_limit` are available.
    fn b(&mut self, n: usize) -> PyResult<ExactValue> {
        if n > self.0.exact_limit() {
            return Err(PyValueError::new_err(format!(
                "b({n}) is beyond the exact limit {}; use b_enclosure",
                self.0.exact_limit()
            )));
        }
        Ok(from_pi(self.0.b(n).clone()))
    }

    #[pyo3(signature = (n, precision = DEFAULT_PRECISION))]
    fn b_enclosure(&mut self, n: usize, precision: u32) -> PyResult<Interval> {
        self.0.b_enclosure(n, precision).map(Interval).map_err(err)
    }

    /// Enclosure of `b_n / W_n`.
    #[pyo3(signature = (n, precision = DEFAULT_PRECISION))]
    fn ratio(&mut self, n: usize, precision: u32) -> PyResult<Interval> {
        self.0.ratio(n, precision).map(Interval).map_err(err)
    }

    /// Enclosure of `c_n(p) = b_n - p W_n`.
    #[pyo3(signature = (n, p, precision = DEFAULT_PRECISION))]
    fn c(&mut self, n: usize, p: &str, precision: u32) -> PyResult<Interval> {
        let p = PValue::Exact(exact::parse_exact_with(p, &mut self.0).map_err(err)?);
        self.0.c_coeff(n, &p, precision).map(Interval).map_err(err)
    }

    /// Enclosure of `d_n = (n+1) b_{n+1} - (n+1/2) b_n`.
    #[pyo3(signature = (n, precision = DEFAULT_PRECISION))]
    fn step_difference(&mut self, n: usize, precision: u32) -> PyResult<Interval> {
        self.0.step_difference(n, precision).map(Interval).map_err(err)
    }
}

/// A witness point attached to a certificate.
#[pyclass(frozen, get_all, skip_from_py_object, module = "ellipmono")]
#[derive(Clone)]
pub struct Witness {
    point: String,
    coords: Vec<f64>,
    enclosure: String,
    sign: &'static str,
}

#[pymethods]
impl Witness {
    fn __repr__(&self) -> String {
        format!("Witness({}, {}, sign={})", self.point, self.enclosure, self.sign)
    }
}

/// Outcome of a certification run.
#[pyclass(frozen, module = "ellipmono")]
pub struct Certificate(verify::Certificate);

#[pymethods]
impl Certificate {
    #[getter]
    fn claim(&self) -> &str {
        &self.0.claim
    }

    #[getter]
    fn range(&self) -> &str {
        &self.0.range
    }

    /// `"Certified"`, `"Refuted"` or `"Undecided"`.
    #[getter]
    fn status(&self) -> String {
        self.0.status.to_string()
    }

    #[getter]
    fn certified(&self) -> bool {
        self.0.is_certified()
    }

    #[getter]
    fn precision_used(&self) -> u32 {
        self.0.precision_used
    }

    #[getter]
    fn checked(&self) -> usize {
        self.0.checked
    }

    #[getter]
    fn witnesses(&self) -> Vec<Witness> {
        self.0
            .witnesses
            .iter()
            .map(|w| Witness {
                point: w.point.clone(),
                coords: w.coords.clone(),
                enclosure: w.enclosure.clone(),
                sign: sign_str(w.sign),
            })
            .collect()
    }

    #[getter]
    fn boundary(&self) -> Vec<String> {
        self.0.boundary.clone()
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.0.notes.clone()
    }

    #[getter]
    fn runtime_ms(&self) -> Option<u64> {
        self.0.runtime_ms
    }

    #[pyo3(signature = (timestamp = true))]
    fn to_json(&self, timestamp: bool) -> String {
        if timestamp {
            self.0.to_json()
        } else {
            self.0.clone().without_timestamp().to_json()
        }
    }

    fn __repr__(&self) -> String {
        format!("Certificate({}, {}, {})", self.0.claim, self.0.range, self.0.status)
    }
}

fn policy(precision: u32, max_bits: u32) -> PyResult<PrecisionPolicy> {
    PrecisionPolicy::new(precision, max_bits.max(precision)).map_err(err)
}

fn bound_spec(family: &str, m: usize, p: Option<&str>, table: &mut ellipmono_core::coeff::CoefficientTable) -> PyResult<BoundSpec> {
    let family: Family = family.parse().map_err(err)?;
    let threshold = match p.map(str::trim) {
        None => None,
        Some("beta") => Some(Threshold::Beta {
            shift: BigRational::from_integer(0.into()),
        }),
        Some(s) => Some(Threshold::Exact(exact::parse_exact_with(s, table).map_err(err)?)),
    };
    match threshold {
        Some(t) => BoundSpec::new(family, m, Some(t)),
        None => BoundSpec::sharp(family, m, table),
    }
    .map_err(err)
}

/// `K` at modulus `r = sqrt(x)`, via the arithmetic-geometric mean.
#[pyfunction]
#[pyo3(signature = (x, precision = DEFAULT_PRECISION))]
fn agm_k(x: &str, precision: u32) -> PyResult<Interval> {
    elliptic::agm_k(&point(x)?, precision).map(Interval).map_err(err)
}

/// `e^{K}` at modulus `r = sqrt(x)`.
#[pyfunction]
#[pyo3(signature = (x, precision = DEFAULT_PRECISION))]
fn exp_k(x: &str, precision: u32) -> PyResult<Interval> {
    elliptic::exp_k_agm(&point(x)?, precision).map(Interval).map_err(err)
}

/// The symmetric quotient `H(x)`, with `H(1/2)` as its limit.
#[pyfunction]
#[pyo3(signature = (x, precision = DEFAULT_PRECISION))]
fn h_value(x: &str, precision: u32) -> PyResult<Interval> {
    elliptic::h_value(&point(x)?, precision).map(Interval).map_err(err)
}

/// Enclosures of `g`, `g0`, `G` and `G'` keyed by name.
#[pyfunction]
#[pyo3(signature = (x, precision = DEFAULT_PRECISION))]
fn g_funcs(x: &str, precision: u32) -> PyResult<Vec<(&'static str, Interval)>> {
    let g = elliptic::g_funcs(&point(x)?, precision).map_err(err)?;
    Ok(vec![
        ("g", Interval(g.g)),
        ("g0", Interval(g.g0)),
        ("G", Interval(g.big_g)),
        ("G_prime", Interval(g.big_g_prime)),
    ])
}

/// `e^{pi/2} - 4`.
#[pyfunction]
#[pyo3(signature = (precision = DEFAULT_PRECISION))]
fn alpha(precision: u32) -> PyResult<Interval> {
    elliptic::alpha(precision).map(Interval).map_err(err)
}

/// `H(1/2)`.
#[pyfunction]
#[pyo3(signature = (precision = DEFAULT_PRECISION))]
fn beta(precision: u32) -> PyResult<Interval> {
    elliptic::beta(precision).map(Interval).map_err(err)
}

/// Certify a sequence claim on `lo..=hi`; `lo` defaults to the claim's first index.
#[pyfunction]
#[pyo3(signature = (claim, hi, lo = None, p = None, precision = DEFAULT_PRECISION, max_bits = DEFAULT_MAX_BITS))]
fn certify_sequence(
    py: Python<'_>,
    claim: &str,
    hi: usize,
    lo: Option<usize>,
    p: Option<&str>,
    precision: u32,
    max_bits: u32,
) -> PyResult<Certificate> {
    let mut table = ellipmono_core::coeff::CoefficientTable::new();
    let p = match p {
        Some(s) => Some(PValue::Exact(exact::parse_exact_with(s, &mut table).map_err(err)?)),
        None => None,
    };
    let claim = Claim::parse(claim, p).map_err(err)?;
    let lo = lo.unwrap_or(claim.min_index());
    let policy = policy(precision, max_bits)?;
    py.detach(|| verify::certify_sequence(&claim, lo, hi, &policy, &mut table))
        .map(Certificate)
        .map_err(err)
}

/// Verify an inequality family on its default grid.
#[pyfunction]
#[pyo3(signature = (family, m = 0, p = None, density = verify::DEFAULT_GRID_DENSITY, precision = DEFAULT_PRECISION, max_bits = DEFAULT_MAX_BITS))]
fn grid_verify(
    py: Python<'_>,
    family: &str,
    m: usize,
    p: Option<&str>,
    density: usize,
    precision: u32,
    max_bits: u32,
) -> PyResult<Certificate> {
    let mut table = ellipmono_core::coeff::CoefficientTable::new();
    let spec = bound_spec(family, m, p, &mut table)?;
    let policy = policy(precision, max_bits)?;
    let grid = verify::default_grid(spec.family, density);
    py.detach(|| verify::grid_verify_with(&spec, &grid, &policy, &mut table))
        .map(Certificate)
        .map_err(err)
}

/// Shift a best constant by `epsilon` and search for a failing point.
#[pyfunction]
#[pyo3(signature = (family, m = 0, p = None, epsilon = "1/100", precision = DEFAULT_PRECISION, max_bits = DEFAULT_MAX_BITS))]
fn sharpness_probe(
    py: Python<'_>,
    family: &str,
    m: usize,
    p: Option<&str>,
    epsilon: &str,
    precision: u32,
    max_bits: u32,
) -> PyResult<Certificate> {
    let mut table = ellipmono_core::coeff::CoefficientTable::new();
    let spec = bound_spec(family, m, p, &mut table)?;
    let eps = point(epsilon)?;
    let policy = policy(precision, max_bits)?;
    py.detach(|| verify::sharpness_probe(&spec, &eps, &policy))
        .map(Certificate)
        .map_err(err)
}

/// Monotonicity of `H` on each half of the default grid.
#[pyfunction]
#[pyo3(signature = (density = verify::DEFAULT_GRID_DENSITY, precision = DEFAULT_PRECISION, max_bits = DEFAULT_MAX_BITS))]
fn h_monotonicity(py: Python<'_>, density: usize, precision: u32, max_bits: u32) -> PyResult<Certificate> {
    let half = BigRational::new(1.into(), 2.into());
    let grid: Vec<_> = verify::default_x_grid(density)
        .into_iter()
        .filter(|x| x != &half)
        .collect();
    let policy = policy(precision, max_bits)?;
    py.detach(|| verify::h_monotonicity_with(&grid, &policy))
        .map(Certificate)
        .map_err(err)
}

/// First `n` exact quotient coefficients of `E(x)` by `F(1/2,1/2;1;x)`.
#[pyfunction]
fn j_quotient(n: usize) -> Vec<ExactValue> {
    let mut table = ellipmono_core::coeff::CoefficientTable::new();
    verify::j_quotient(n, &mut table).into_iter().map(from_pi).collect()
}

#[pymodule]
fn ellipmono(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Interval>()?;
    m.add_class::<ExactValue>()?;
    m.add_class::<CoefficientTable>()?;
    m.add_class::<Witness>()?;
    m.add_class::<Certificate>()?;
    m.add_function(wrap_pyfunction!(agm_k, m)?)?;
    m.add_function(wrap_pyfunction!(exp_k, m)?)?;
    m.add_function(wrap_pyfunction!(h_value, m)?)?;
    m.add_function(wrap_pyfunction!(g_funcs, m)?)?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(beta, m)?)?;
    m.add_function(wrap_pyfunction!(certify_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(grid_verify, m)?)?;
    m.add_function(wrap_pyfunction!(sharpness_probe, m)?)?;
    m.add_function(wrap_pyfunction!(h_monotonicity, m)?)?;
    m.add_function(wrap_pyfunction!(j_quotient, m)?)?;
    m.add("DEFAULT_EXACT_LIMIT", ellipmono_core::coeff::DEFAULT_EXACT_LIMIT)?;
    Ok(())
}
