//! Lossless CSV and JSON serialization of benchmark records.
//!
//! Floats are printed with 17 significant digits, enough for every f64 to
//! survive a round trip bit for bit, and missing values are the literal
//! `NA` (CSV) or `null` (JSON). Hyperparameters are flattened into the three
//! columns `beta,alpha,sigma`; which of them are populated is determined by
//! the family, so rows parse back into exactly the record they came from.

use crate::error::{Error, Result};
use crate::estimators::EstimatorId;
use crate::harness::PerfRecord;
use crate::noise::{Family, NoiseModel};
use serde_json::json;
use std::io::{self, Write};

/// Column order of every benchmark CSV.
pub const CSV_HEADER: &str = "family,estimator,n,mc_runs,seed,beta,alpha,sigma,true_x,\
                              analytic_bias,analytic_mse,emp_bias,emp_var,emp_mse";

/// Render a float with enough digits to reparse to the identical bits.
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// Render an optional float, `NA` when absent.
pub fn fmt_opt(value: Option<f64>) -> String {
    match value {
        Some(v) => fmt_f64(v),
        None => "NA".to_string(),
    }
}

fn parse_f64(field: &str) -> Result<f64> {
    field
        .parse::<f64>()
        .map_err(|_| Error::ParseRow(format!("bad float {field:?}")))
}

fn parse_opt(field: &str) -> Result<Option<f64>> {
    if field == "NA" {
        Ok(None)
    } else {
        parse_f64(field).map(Some)
    }
}

/// Split a model into the `beta,alpha,sigma` columns.
pub fn theta_columns(theta: Option<&NoiseModel>) -> (Option<f64>, Option<f64>, Option<f64>) {
    match theta {
        None => (None, None, None),
        Some(&NoiseModel::Uniform { beta })
        | Some(&NoiseModel::Exponential { beta })
        | Some(&NoiseModel::Rayleigh { beta }) => (Some(beta), None, None),
        Some(&NoiseModel::Weibull { beta, alpha }) | Some(&NoiseModel::Pareto { beta, alpha }) => {
            (Some(beta), Some(alpha), None)
        }
        Some(&NoiseModel::Mixture { alpha, sigma, beta }) => {
            (Some(beta), Some(alpha), Some(sigma))
        }
    }
}

/// Rebuild the model from the `beta,alpha,sigma` columns of one row.
fn theta_from_columns(
    family: Family,
    beta: Option<f64>,
    alpha: Option<f64>,
    sigma: Option<f64>,
) -> Result<Option<NoiseModel>> {
    let model = match (family, beta, alpha, sigma) {
        (_, None, None, None) => return Ok(None),
        (Family::Uniform, Some(b), None, None) => NoiseModel::uniform(b)?,
        (Family::Exponential, Some(b), None, None) => NoiseModel::exponential(b)?,
        (Family::Rayleigh, Some(b), None, None) => NoiseModel::rayleigh(b)?,
        (Family::Weibull, Some(b), Some(a), None) => NoiseModel::weibull(b, a)?,
        (Family::Pareto, Some(b), Some(a), None) => NoiseModel::pareto(b, a)?,
        (Family::Mixture, Some(b), Some(a), Some(s)) => NoiseModel::mixture(a, s, b)?,
        _ => {
            return Err(Error::ParseRow(format!(
                "hyperparameter columns do not match family {family}"
            )))
        }
    };
    Ok(Some(model))
}

/// One record as a header-order CSV line (no trailing newline).
pub fn csv_row(record: &PerfRecord) -> String {
    let (beta, alpha, sigma) = theta_columns(record.theta.as_ref());
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        record.family,
        record.estimator,
        record.n,
        record.mc_runs,
        record.seed,
        fmt_opt(beta),
        fmt_opt(alpha),
        fmt_opt(sigma),
        fmt_f64(record.true_x),
        fmt_opt(record.analytic_bias),
        fmt_opt(record.analytic_mse),
        fmt_f64(record.emp_bias),
        fmt_f64(record.emp_var),
        fmt_f64(record.emp_mse),
    )
}

/// Parse one data line produced by [`csv_row`].
pub fn parse_csv_row(line: &str) -> Result<PerfRecord> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 14 {
        return Err(Error::ParseRow(format!(
            "expected 14 fields, got {}",
            fields.len()
        )));
    }
    let family: Family = fields[0]
        .parse()
        .map_err(|_| Error::ParseRow(format!("unknown family {:?}", fields[0])))?;
    let estimator: EstimatorId = fields[1]
        .parse()
        .map_err(|_| Error::ParseRow(format!("unknown estimator {:?}", fields[1])))?;
    let n: usize = fields[2]
        .parse()
        .map_err(|_| Error::ParseRow(format!("bad n {:?}", fields[2])))?;
    let mc_runs: usize = fields[3]
        .parse()
        .map_err(|_| Error::ParseRow(format!("bad mc_runs {:?}", fields[3])))?;
    let seed: u64 = fields[4]
        .parse()
        .map_err(|_| Error::ParseRow(format!("bad seed {:?}", fields[4])))?;
    let theta = theta_from_columns(
        family,
        parse_opt(fields[5])?,
        parse_opt(fields[6])?,
        parse_opt(fields[7])?,
    )?;
    Ok(PerfRecord {
        family,
        estimator,
        n,
        mc_runs,
        seed,
        theta,
        true_x: parse_f64(fields[8])?,
        analytic_bias: parse_opt(fields[9])?,
        analytic_mse: parse_opt(fields[10])?,
        emp_bias: parse_f64(fields[11])?,
        emp_var: parse_f64(fields[12])?,
        emp_mse: parse_f64(fields[13])?,
    })
}

/// Write the header plus one line per record.
pub fn write_csv<W: Write>(mut w: W, records: &[PerfRecord]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for record in records {
        writeln!(w, "{}", csv_row(record))?;
    }
    Ok(())
}

/// Parse a whole CSV document (header optional, blank lines ignored).
pub fn parse_csv(text: &str) -> Result<Vec<PerfRecord>> {
    let mut records = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line == CSV_HEADER {
            continue;
        }
        records.push(parse_csv_row(line)?);
    }
    Ok(records)
}

/// Records as a JSON array with the CSV's field names; `NA` becomes `null`.
pub fn records_to_json(records: &[PerfRecord]) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = records
        .iter()
        .map(|record| {
            let (beta, alpha, sigma) = theta_columns(record.theta.as_ref());
            json!({
                "family": record.family.name(),
                "estimator": record.estimator.name(),
                "n": record.n,
                "mc_runs": record.mc_runs,
                "seed": record.seed,
                "beta": beta,
                "alpha": alpha,
                "sigma": sigma,
                "true_x": record.true_x,
                "analytic_bias": record.analytic_bias,
                "analytic_mse": record.analytic_mse,
                "emp_bias": record.emp_bias,
                "emp_var": record.emp_var,
                "emp_mse": record.emp_mse,
            })
        })
        .collect();
    serde_json::Value::Array(rows)
}

/// Pretty-printed JSON array, newline-terminated.
pub fn write_json<W: Write>(mut w: W, records: &[PerfRecord]) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut w, &records_to_json(records)).map_err(io::Error::other)?;
    writeln!(w)
}
