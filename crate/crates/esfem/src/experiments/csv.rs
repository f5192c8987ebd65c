//! CSV emitters and parsers for the experiment outputs. Floats are
//! written with Rust's shortest-roundtrip formatting, so a parse-back
//! reproduces the values bit for bit.

use crate::mesh::QualityReport;
use crate::{Error, Result};
use std::io::Write;
use std::path::Path;

fn parse_f64(s: &str) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|e| Error::Domain(format!("bad number {s:?}: {e}")))
}

pub fn write_quality_csv(path: &Path, series: &[QualityReport]) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "time,h,min_angle_deg,max_aspect,min_area,max_area")?;
    for q in series {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            q.time, q.h, q.min_angle_deg, q.max_aspect, q.min_area, q.max_area
        )?;
    }
    Ok(())
}

pub fn read_quality_csv(path: &Path) -> Result<Vec<QualityReport>> {
    let text = std::fs::read_to_string(path)?;
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if n == 0 {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 6 {
            return Err(Error::Domain(format!("bad quality row: {line}")));
        }
        rows.push(QualityReport {
            time: parse_f64(cols[0])?,
            h: parse_f64(cols[1])?,
            min_angle_deg: parse_f64(cols[2])?,
            max_aspect: parse_f64(cols[3])?,
            min_area: parse_f64(cols[4])?,
            max_area: parse_f64(cols[5])?,
        });
    }
    Ok(rows)
}

pub fn write_mass_csv(path: &Path, series: &[(usize, f64, f64)]) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "step,time,mass")?;
    for (step, time, mass) in series {
        writeln!(out, "{step},{time},{mass}")?;
    }
    Ok(())
}

pub fn read_mass_csv(path: &Path) -> Result<Vec<(usize, f64, f64)>> {
    let text = std::fs::read_to_string(path)?;
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if n == 0 {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 3 {
            return Err(Error::Domain(format!("bad mass row: {line}")));
        }
        let step = cols[0]
            .parse::<usize>()
            .map_err(|e| Error::Domain(format!("bad step {:?}: {e}", cols[0])))?;
        rows.push((step, parse_f64(cols[1])?, parse_f64(cols[2])?));
    }
    Ok(rows)
}

/// Difference series of the long-time experiment: one time column plus an
/// `l2_diff_v<k>` column per non-constant variant.
pub fn write_periodic_diff_csv(
    path: &Path,
    variants: &[usize],
    rows: &[(f64, Vec<f64>)],
) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    let header: Vec<String> = std::iter::once("time".to_string())
        .chain(variants.iter().map(|v| format!("l2_diff_v{v}")))
        .collect();
    writeln!(out, "{}", header.join(","))?;
    for (time, values) in rows {
        debug_assert_eq!(values.len(), variants.len());
        let mut line = format!("{time}");
        for v in values {
            line.push(',');
            line.push_str(&format!("{v}"));
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn read_periodic_diff_csv(path: &Path) -> Result<(Vec<usize>, Vec<(f64, Vec<f64>)>)> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Domain("empty csv".into()))?;
    let variants: Result<Vec<usize>> = header
        .split(',')
        .skip(1)
        .map(|col| {
            col.strip_prefix("l2_diff_v")
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| Error::Domain(format!("bad column {col:?}")))
        })
        .collect();
    let variants = variants?;
    let mut rows = Vec::new();
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != variants.len() + 1 {
            return Err(Error::Domain(format!("bad diff row: {line}")));
        }
        let time = parse_f64(cols[0])?;
        let values: Result<Vec<f64>> = cols[1..].iter().map(|s| parse_f64(s)).collect();
        rows.push((time, values?));
    }
    Ok((variants, rows))
}

/// Diagnostics rows: named check, parameter, value.
pub fn write_diagnostics_csv(path: &Path, rows: &[(String, f64, f64)]) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "check,param,value")?;
    for (check, param, value) in rows {
        writeln!(out, "{check},{param},{value}")?;
    }
    Ok(())
}

pub fn read_diagnostics_csv(path: &Path) -> Result<Vec<(String, f64, f64)>> {
    let text = std::fs::read_to_string(path)?;
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if n == 0 {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 3 {
            return Err(Error::Domain(format!("bad diagnostics row: {line}")));
        }
        rows.push((
            cols[0].to_string(),
            parse_f64(cols[1])?,
            parse_f64(cols[2])?,
        ));
    }
    Ok(rows)
}
