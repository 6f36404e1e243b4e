//! CSV and JSON rendering.
//!
//! Column orders:
//! - coeffs: `n, W_n, b_n_exact, b_n, ratio, c_n_4_sign`
//! - eval: `x, K, exp_K, g, G, G_prime, H`
//! - constants: `name, expression, value`
//! - certificates: `claim, range, status, precision_used, checked, witnesses, first_witness, runtime_ms`

use std::fs;
use std::io::Write;
use std::path::Path;

use ellipmono_core::verify::Certificate;
use ellipmono_core::Error;
use serde::Serialize;

use crate::config::Format;

#[derive(Serialize)]
pub struct CoeffRow {
    pub n: usize,
    #[serde(rename = "W_n")]
    pub w_n: String,
    pub b_n_exact: String,
    pub b_n: String,
    pub ratio: String,
    pub c_n_4_sign: String,
}

#[derive(Serialize)]
pub struct EvalRow {
    pub x: String,
    #[serde(rename = "K")]
    pub k: String,
    #[serde(rename = "exp_K")]
    pub exp_k: String,
    pub g: String,
    #[serde(rename = "G")]
    pub big_g: String,
    #[serde(rename = "G_prime")]
    pub big_g_prime: String,
    #[serde(rename = "H")]
    pub h: String,
}

#[derive(Serialize)]
pub struct ConstantRow {
    pub name: &'static str,
    pub expression: &'static str,
    pub value: String,
}

#[derive(Serialize)]
struct CertRow<'a> {
    claim: &'a str,
    range: &'a str,
    status: String,
    precision_used: u32,
    checked: usize,
    witnesses: usize,
    first_witness: String,
    runtime_ms: Option<u64>,
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Domain(format!("output: {e}"))
}

pub fn table<T: Serialize>(rows: &[T], format: Format) -> Result<String, Error> {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).map_err(io_err),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(io_err)?;
            }
            String::from_utf8(w.into_inner().map_err(io_err)?).map_err(io_err)
        }
    }
}

pub fn certificate(cert: &Certificate, format: Format) -> Result<String, Error> {
    match format {
        Format::Json => Ok(cert.to_json() + "\n"),
        Format::Csv => {
            let first = cert
                .witnesses
                .first()
                .map(|w| format!("{}: {}", w.point, w.enclosure))
                .unwrap_or_default();
            table(
                &[CertRow {
                    claim: &cert.claim,
                    range: &cert.range,
                    status: cert.status.to_string(),
                    precision_used: cert.precision_used,
                    checked: cert.checked,
                    witnesses: cert.witnesses.len(),
                    first_witness: first,
                    runtime_ms: cert.runtime_ms,
                }],
                Format::Csv,
            )
        }
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Domain(format!("cannot write --out {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(io_err)
        }
    }
}
