//! File formats: CSV payloads with JSON provenance sidecars.
//!
//! Floats are written with Rust's shortest-round-trip formatting, so parsing
//! a file back yields bit-identical values. `NOT_ATTAINED` spectrum entries
//! serialize as the literal token `-inf`. All writes go through a temp-file
//! rename so readers never observe partial files.

use crate::error::{Error, Result};
use crate::estimate::{PartitionTable, ScalingFunctionEstimate, TableMode};
use crate::sim::{ProcessSpec, SamplePath, Seed};
use crate::spectrum::{HsssiBounds, SpectrumBounds, SpectrumCurve};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Write bytes atomically: temp file in the same directory, then rename.
pub fn atomic_write(path: &Path, contents: &str) -> Result<()> {
    let tmp = match path.file_name() {
        Some(name) => {
            let mut os = name.to_os_string();
            os.push(".tmp");
            path.with_file_name(os)
        }
        None => return Err(Error::Argument(format!("bad output path {path:?}"))),
    };
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Sidecar path: same stem with a `.json` extension.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathSidecar {
    pub spec: Option<ProcessSpec>,
    pub seed: Option<Seed>,
    pub n: usize,
    pub horizon: f64,
}

pub fn path_to_csv(path: &SamplePath) -> String {
    let mut out = String::with_capacity(path.len() * 24);
    out.push_str("t,x\n");
    for (t, x) in path.times().iter().zip(path.values()) {
        let _ = writeln!(out, "{t},{x}");
    }
    out
}

/// Write `<file>.csv` and its provenance sidecar `<file>.json`.
pub fn write_path_csv(path: &SamplePath, file: &Path) -> Result<()> {
    atomic_write(file, &path_to_csv(path))?;
    let sidecar = PathSidecar {
        spec: path.spec.clone(),
        seed: path.seed,
        n: path.n_increments(),
        horizon: path.horizon(),
    };
    atomic_write(
        &sidecar_path(file),
        &serde_json::to_string_pretty(&sidecar).expect("sidecar serializes"),
    )
}

fn parse_f64(token: &str, file: &Path, line: usize) -> Result<f64> {
    token.trim().parse::<f64>().map_err(|_| {
        Error::Parse(format!(
            "{}: line {line}: expected a number, found `{token}`",
            file.display()
        ))
    })
}

/// Read a path CSV; provenance is restored from the sidecar when present.
pub fn read_path_csv(file: &Path) -> Result<SamplePath> {
    let text = std::fs::read_to_string(file)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "t,x" => {}
        _ => {
            return Err(Error::Parse(format!(
                "{}: expected header `t,x`",
                file.display()
            )))
        }
    }
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.splitn(2, ',');
        let t = parts
            .next()
            .ok_or_else(|| Error::Parse(format!("{}: line {}", file.display(), idx + 1)))?;
        let x = parts.next().ok_or_else(|| {
            Error::Parse(format!(
                "{}: line {}: expected `t,x`",
                file.display(),
                idx + 1
            ))
        })?;
        times.push(parse_f64(t, file, idx + 1)?);
        values.push(parse_f64(x, file, idx + 1)?);
    }
    let (mut spec, mut seed) = (None, None);
    let sidecar = sidecar_path(file);
    if sidecar.exists() {
        let text = std::fs::read_to_string(&sidecar)?;
        let meta: PathSidecar = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", sidecar.display())))?;
        spec = meta.spec;
        seed = meta.seed;
    }
    SamplePath::new(times, values, spec, seed)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableSidecar {
    pub source: String,
    #[serde(flatten)]
    pub mode: TableMode,
    pub qs: Vec<f64>,
    pub deltas: Vec<f64>,
}

pub fn table_to_csv(table: &PartitionTable) -> String {
    let mut out = String::new();
    out.push_str("q,delta_t,S\n");
    for (qi, &q) in table.qs.qs().iter().enumerate() {
        for (di, &d) in table.deltas.deltas().iter().enumerate() {
            let _ = writeln!(out, "{q},{d},{}", table.value(qi, di));
        }
    }
    out
}

pub fn write_table_csv(table: &PartitionTable, file: &Path) -> Result<()> {
    atomic_write(file, &table_to_csv(table))?;
    let sidecar = TableSidecar {
        source: table.source.clone(),
        mode: table.mode,
        qs: table.qs.qs().to_vec(),
        deltas: table.deltas.deltas().to_vec(),
    };
    atomic_write(
        &sidecar_path(file),
        &serde_json::to_string_pretty(&sidecar).expect("sidecar serializes"),
    )
}

pub fn tau_to_csv(qs: &[f64], tau: &[f64], r2: &[f64]) -> String {
    let mut out = String::new();
    out.push_str("q,tau_hat,r2\n");
    for i in 0..qs.len() {
        let _ = writeln!(out, "{},{},{}", qs[i], tau[i], r2[i]);
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct TauSidecar {
    pub source: String,
    #[serde(flatten)]
    pub mode: TableMode,
    pub qs: Vec<f64>,
    pub deltas: Vec<f64>,
}

pub fn write_tau_csv(
    est: &ScalingFunctionEstimate,
    source: &str,
    deltas: &[f64],
    file: &Path,
) -> Result<()> {
    atomic_write(file, &tau_to_csv(est.qs.qs(), &est.tau, &est.r2))?;
    let sidecar = TauSidecar {
        source: source.to_string(),
        mode: est.mode,
        qs: est.qs.qs().to_vec(),
        deltas: deltas.to_vec(),
    };
    atomic_write(
        &sidecar_path(file),
        &serde_json::to_string_pretty(&sidecar).expect("sidecar serializes"),
    )
}

/// Read `q,tau_hat,r2` back as aligned columns.
pub fn read_tau_csv(file: &Path) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let text = std::fs::read_to_string(file)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "q,tau_hat,r2" => {}
        _ => {
            return Err(Error::Parse(format!(
                "{}: expected header `q,tau_hat,r2`",
                file.display()
            )))
        }
    }
    let (mut qs, mut tau, mut r2) = (Vec::new(), Vec::new(), Vec::new());
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 3 {
            return Err(Error::Parse(format!(
                "{}: line {}: expected 3 columns",
                file.display(),
                idx + 1
            )));
        }
        qs.push(parse_f64(cols[0], file, idx + 1)?);
        tau.push(parse_f64(cols[1], file, idx + 1)?);
        r2.push(parse_f64(cols[2], file, idx + 1)?);
    }
    Ok((qs, tau, r2))
}

/// `h,d` with the `-inf` token for unattained entries (Rust's float
/// formatting already prints `-inf`, and parsing accepts it back).
pub fn spectrum_to_csv(curve: &SpectrumCurve) -> String {
    let mut out = String::new();
    out.push_str("h,d\n");
    for (h, d) in curve.hs.iter().zip(curve.d.iter()) {
        let _ = writeln!(out, "{h},{d}");
    }
    out
}

pub fn write_spectrum_csv(curve: &SpectrumCurve, file: &Path) -> Result<()> {
    atomic_write(file, &spectrum_to_csv(curve))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundsJson {
    pub h_minus: Option<f64>,
    pub h_tilde_plus: Option<f64>,
    pub h_plus: Option<f64>,
    pub hsssi_low: Option<f64>,
    pub hsssi_high: Option<f64>,
    pub trivial: bool,
}

impl BoundsJson {
    pub fn from_bounds(b: &SpectrumBounds) -> Self {
        let (hsssi_low, hsssi_high, trivial) = match b.hsssi {
            Some(HsssiBounds { low, high, trivial }) => (Some(low), Some(high), trivial),
            None => (None, None, false),
        };
        BoundsJson {
            h_minus: b.h_minus,
            h_tilde_plus: b.h_tilde_plus,
            h_plus: b.h_plus,
            hsssi_low,
            hsssi_high,
            trivial,
        }
    }
}

pub fn bounds_to_json(b: &SpectrumBounds) -> String {
    serde_json::to_string_pretty(&BoundsJson::from_bounds(b)).expect("bounds serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimate::{partition_function, scaling_function, MomentGrid, ScaleGrid};
    use crate::sim::{bm_path, Seed};
    use crate::spectrum::{SpectrumCurve, SpectrumProvenance, NOT_ATTAINED};

    #[test]
    fn path_round_trip_is_bit_exact() {
        let dir = std::env::temp_dir().join("mfbounds-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("p.csv");
        let p = bm_path(257, 257.0, Seed(11));
        write_path_csv(&p, &file).unwrap();
        let q = read_path_csv(&file).unwrap();
        assert_eq!(p.values(), q.values());
        assert_eq!(p.times(), q.times());
        assert_eq!(p.spec, q.spec);
        assert_eq!(p.seed, q.seed);
        assert_eq!(p.id(), q.id());
    }

    #[test]
    fn partition_of_reloaded_path_matches_in_memory() {
        let dir = std::env::temp_dir().join("mfbounds-io-test2");
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("p.csv");
        let p = bm_path(512, 512.0, Seed(3));
        write_path_csv(&p, &file).unwrap();
        let q = read_path_csv(&file).unwrap();
        let qs = MomentGrid::new(vec![-1.0, 2.0]).unwrap();
        let grid = ScaleGrid::new(vec![1.0, 2.0, 4.0]).unwrap();
        let a = partition_function(&p, &qs, &grid).unwrap();
        let b = partition_function(&q, &qs, &grid).unwrap();
        assert_eq!(a.values, b.values);
        let ta = scaling_function(&a).unwrap();
        let tb = scaling_function(&b).unwrap();
        assert_eq!(ta.tau, tb.tau);
    }

    #[test]
    fn spectrum_csv_uses_minus_inf_token() {
        let curve = SpectrumCurve {
            hs: vec![0.5, 0.7],
            d: vec![1.0, NOT_ATTAINED],
            provenance: SpectrumProvenance::ClosedForm,
        };
        let csv = spectrum_to_csv(&curve);
        assert!(csv.contains("0.7,-inf"), "{csv}");
        assert_eq!("-inf".parse::<f64>().unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn bounds_json_uses_nulls() {
        let b = SpectrumBounds {
            h_minus: Some(0.5),
            h_tilde_plus: None,
            h_plus: None,
            hsssi: None,
        };
        let json = bounds_to_json(&b);
        assert!(json.contains("\"h_tilde_plus\": null"), "{json}");
        assert!(json.contains("\"trivial\": false"));
    }
}
