//! On-disk formats: unitary JSON, distribution JSON/CSV, spectrum CSV, and
//! chain reports. Floats are emitted in shortest round-trip form, so every
//! writer/reader pair is lossless.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::distribution::{DistributionKind, OutcomeDistribution};
use crate::error::{Error, Result};
use crate::fock::FockState;
use crate::fourier::Spectrum;
use crate::matrix::UnitaryMatrix;

#[derive(Serialize, Deserialize)]
struct UnitaryJson {
    n: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

/// One `{state, probability}` record of a distribution export.
#[derive(Clone, Serialize, Deserialize)]
pub struct DistributionEntry {
    pub state: Vec<u32>,
    pub probability: f64,
}

/// Distribution file: canonical-order entries plus the total mass.
#[derive(Serialize, Deserialize)]
pub struct DistributionFile {
    pub kind: String,
    pub total_mass: f64,
    pub entries: Vec<DistributionEntry>,
}

#[derive(Serialize, Deserialize)]
pub struct ReportCheckpoint {
    pub step: u64,
    pub cosine_distance: f64,
}

/// Chain report emitted by the sampler front end.
#[derive(Serialize, Deserialize)]
pub struct ChainReport {
    pub steps: u64,
    pub burn_in: u64,
    pub seed: u64,
    pub acceptance_rate: f64,
    pub checkpoints: Vec<ReportCheckpoint>,
    pub empirical: Vec<DistributionEntry>,
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn malformed(path: &Path, detail: impl ToString) -> Error {
    Error::Malformed {
        path: path.to_path_buf(),
        detail: detail.to_string(),
    }
}

pub fn unitary_to_json(u: &UnitaryMatrix) -> String {
    let n = u.n();
    let re = (0..n)
        .map(|i| (0..n).map(|j| u.get(i, j).re).collect())
        .collect();
    let im = (0..n)
        .map(|i| (0..n).map(|j| u.get(i, j).im).collect())
        .collect();
    serde_json::to_string_pretty(&UnitaryJson { n, re, im }).expect("plain struct serializes")
}

pub fn write_unitary_json(path: &Path, u: &UnitaryMatrix) -> Result<()> {
    fs::write(path, unitary_to_json(u) + "\n").map_err(|e| io_err(path, e))
}

pub fn read_unitary_json(path: &Path) -> Result<UnitaryMatrix> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let raw: UnitaryJson = serde_json::from_str(&text).map_err(|e| malformed(path, e))?;
    if raw.re.len() != raw.n || raw.im.len() != raw.n {
        return Err(malformed(path, "row count does not match n"));
    }
    let mut rows = Vec::with_capacity(raw.n);
    for (re_row, im_row) in raw.re.iter().zip(&raw.im) {
        if re_row.len() != raw.n || im_row.len() != raw.n {
            return Err(malformed(path, "column count does not match n"));
        }
        rows.push(
            re_row
                .iter()
                .zip(im_row)
                .map(|(&re, &im)| Complex64::new(re, im))
                .collect(),
        );
    }
    UnitaryMatrix::from_rows(rows)
}

pub fn distribution_to_file(dist: &OutcomeDistribution) -> DistributionFile {
    DistributionFile {
        kind: match dist.kind() {
            DistributionKind::Exact => "exact".to_string(),
            DistributionKind::Empirical => "empirical".to_string(),
        },
        total_mass: dist.total_mass(),
        entries: dist
            .iter()
            .map(|(state, probability)| DistributionEntry {
                state: state.occupations().to_vec(),
                probability,
            })
            .collect(),
    }
}

pub fn write_distribution_json(path: &Path, dist: &OutcomeDistribution) -> Result<()> {
    let file = distribution_to_file(dist);
    let text = serde_json::to_string_pretty(&file).expect("plain struct serializes");
    fs::write(path, text + "\n").map_err(|e| io_err(path, e))
}

pub fn read_distribution_json(path: &Path) -> Result<OutcomeDistribution> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let raw: DistributionFile = serde_json::from_str(&text).map_err(|e| malformed(path, e))?;
    let kind = match raw.kind.as_str() {
        "exact" => DistributionKind::Exact,
        "empirical" => DistributionKind::Empirical,
        other => return Err(malformed(path, format!("unknown kind {other:?}"))),
    };
    let entries = raw
        .entries
        .into_iter()
        .map(|e| (FockState::new(e.state), e.probability))
        .collect();
    Ok(OutcomeDistribution::new(kind, entries))
}

pub fn distribution_to_csv(dist: &OutcomeDistribution) -> String {
    let mut out = String::from("state,probability\n");
    for (state, probability) in dist.iter() {
        out.push_str(&format!("\"{state}\",{probability}\n"));
    }
    out
}

pub fn write_distribution_csv(path: &Path, dist: &OutcomeDistribution) -> Result<()> {
    fs::write(path, distribution_to_csv(dist)).map_err(|e| io_err(path, e))
}

pub fn read_distribution_csv(path: &Path) -> Result<OutcomeDistribution> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 || line.is_empty() {
            continue;
        }
        let rest = line
            .strip_prefix('"')
            .ok_or_else(|| malformed(path, format!("line {}: missing quote", idx + 1)))?;
        let (state_text, tail) = rest
            .split_once('"')
            .ok_or_else(|| malformed(path, format!("line {}: unterminated quote", idx + 1)))?;
        let prob_text = tail
            .strip_prefix(',')
            .ok_or_else(|| malformed(path, format!("line {}: missing probability", idx + 1)))?;
        let state: FockState = state_text
            .parse()
            .map_err(|e| malformed(path, format!("line {}: {e}", idx + 1)))?;
        let probability: f64 = prob_text
            .parse()
            .map_err(|e| malformed(path, format!("line {}: {e}", idx + 1)))?;
        entries.push((state, probability));
    }
    Ok(OutcomeDistribution::new(DistributionKind::Exact, entries))
}

pub fn spectrum_to_csv(spectrum: &Spectrum) -> String {
    let mut out = String::from("bin,re,im,abs\n");
    for (bin, amplitude) in spectrum.bins().iter().enumerate() {
        out.push_str(&format!(
            "{bin},{},{},{}\n",
            amplitude.re,
            amplitude.im,
            amplitude.norm()
        ));
    }
    out
}

pub fn write_spectrum_csv(path: &Path, spectrum: &Spectrum) -> Result<()> {
    fs::write(path, spectrum_to_csv(spectrum)).map_err(|e| io_err(path, e))
}

/// Bin amplitudes from a spectrum CSV, indexed by row order.
pub fn read_spectrum_csv(path: &Path) -> Result<Vec<Complex64>> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut bins = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 || line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(malformed(path, format!("line {}: want 4 fields", idx + 1)));
        }
        let bin: usize = fields[0]
            .parse()
            .map_err(|e| malformed(path, format!("line {}: {e}", idx + 1)))?;
        if bin != bins.len() {
            return Err(malformed(path, format!("line {}: bins out of order", idx + 1)));
        }
        let re: f64 = fields[1]
            .parse()
            .map_err(|e| malformed(path, format!("line {}: {e}", idx + 1)))?;
        let im: f64 = fields[2]
            .parse()
            .map_err(|e| malformed(path, format!("line {}: {e}", idx + 1)))?;
        bins.push(Complex64::new(re, im));
    }
    Ok(bins)
}

pub fn write_chain_report(path: &Path, report: &ChainReport) -> Result<()> {
    let text = serde_json::to_string_pretty(report).expect("plain struct serializes");
    fs::write(path, text + "\n").map_err(|e| io_err(path, e))
}

pub fn read_chain_report(path: &Path) -> Result<ChainReport> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| malformed(path, e))
}
