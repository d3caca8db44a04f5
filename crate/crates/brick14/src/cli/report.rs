//! Report types for the study and verify commands, with the CSV and JSON
//! renderings. Floats print through Rust's shortest round-trip formatting,
//! so parsing the CSV back reproduces the report bit-for-bit.

use crate::element::DofKind;
use serde::{Deserialize, Serialize};

/// Observed convergence rate between two meshes.
pub fn rate(e_coarse: f64, e_fine: f64, h_coarse: f64, h_fine: f64) -> f64 {
    (e_coarse / e_fine).ln() / (h_coarse / h_fine).ln()
}

/// Expected asymptotic rates for a (family, DOF kind) pair: (energy, l2).
pub fn expected_rates(family: &str, kind: DofKind) -> (f64, f64) {
    if family == "sk6" && kind == DofKind::FaceCentroidValue {
        (1.0, 2.0)
    } else {
        (2.0, 3.0)
    }
}

/// Half-width of the acceptance band around an expected rate. The verdict
/// only fails below the band: a rate above it at desk scale means the
/// asymptotic regime has not been reached from the good side (observed for
/// the symmetric member and the integral-DOF sk6, both of which settle onto
/// the expected order on finer meshes) and is flagged, not failed.
pub const RATE_TOLERANCE: f64 = 0.3;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MeshRow {
    pub h: f64,
    pub ndofs: usize,
    pub l2: f64,
    pub energy: f64,
    pub rate_l2: Option<f64>,
    pub rate_energy: Option<f64>,
    pub cg_iters: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StudyReport {
    pub element: String,
    pub dof_kind: String,
    pub solution: String,
    pub rows: Vec<MeshRow>,
    pub expected_rate_energy: f64,
    pub expected_rate_l2: f64,
    /// Rates between the two finest meshes.
    pub observed_rate_energy: f64,
    pub observed_rate_l2: f64,
    pub energy_pass: bool,
    pub l2_pass: bool,
    /// Set when an observed rate exceeds its band (faster than promised at
    /// this mesh range).
    pub superconvergent: bool,
    /// Set when the per-pair rates are not monotonically approaching the
    /// expected value (pre-asymptotic meshes); a warning, not a failure.
    pub preasymptotic_warning: bool,
}

impl StudyReport {
    pub fn pass(&self) -> bool {
        self.energy_pass && self.l2_pass
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConvergenceReport {
    pub studies: Vec<StudyReport>,
}

impl ConvergenceReport {
    pub fn all_pass(&self) -> bool {
        self.studies.iter().all(|s| s.pass())
    }
}

/// Fill the per-row rates and the verdict fields of a study whose error
/// rows are already populated.
pub fn finalize_study(
    element: &str,
    kind: DofKind,
    solution: &str,
    mut rows: Vec<MeshRow>,
) -> StudyReport {
    for i in 1..rows.len() {
        let (prev, cur) = (rows[i - 1].clone(), &mut rows[i]);
        cur.rate_l2 = Some(rate(prev.l2, cur.l2, prev.h, cur.h));
        cur.rate_energy = Some(rate(prev.energy, cur.energy, prev.h, cur.h));
    }
    let (expected_energy, expected_l2) = expected_rates(element, kind);
    let last = rows.last().expect("study needs meshes");
    let observed_energy = last.rate_energy.expect("study needs at least two meshes");
    let observed_l2 = last.rate_l2.expect("study needs at least two meshes");
    // Monotone approach of the energy rate toward the expected value,
    // with a little slack for rate noise.
    let gaps: Vec<f64> = rows
        .iter()
        .filter_map(|r| r.rate_energy)
        .map(|r| (r - expected_energy).abs())
        .collect();
    let preasymptotic = gaps.windows(2).any(|w| w[1] > w[0] + 0.05);
    StudyReport {
        element: element.to_string(),
        dof_kind: kind.name().to_string(),
        solution: solution.to_string(),
        rows,
        expected_rate_energy: expected_energy,
        expected_rate_l2: expected_l2,
        observed_rate_energy: observed_energy,
        observed_rate_l2: observed_l2,
        energy_pass: observed_energy >= expected_energy - RATE_TOLERANCE,
        l2_pass: observed_l2 >= expected_l2 - RATE_TOLERANCE,
        superconvergent: observed_energy > expected_energy + RATE_TOLERANCE
            || observed_l2 > expected_l2 + RATE_TOLERANCE,
        preasymptotic_warning: preasymptotic,
    }
}

pub const CSV_HEADER: &str =
    "type,dof_kind,solution,h,ndofs,l2,energy,rate_l2,rate_energy,cg_iters,seconds";

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_csv(report: &ConvergenceReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for s in &report.studies {
        for r in &s.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                s.element,
                s.dof_kind,
                s.solution,
                r.h,
                r.ndofs,
                r.l2,
                r.energy,
                opt(r.rate_l2),
                opt(r.rate_energy),
                r.cg_iters,
                r.seconds
            ));
        }
    }
    out
}

/// One parsed CSV line (the study key plus the mesh row).
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub element: String,
    pub dof_kind: String,
    pub solution: String,
    pub row: MeshRow,
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty csv")?;
    if header != CSV_HEADER {
        return Err(format!("unexpected header: {header}"));
    }
    let mut rows = Vec::new();
    for (n, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 11 {
            return Err(format!(
                "line {}: expected 11 fields, got {}",
                n + 2,
                f.len()
            ));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|e| format!("line {}: {e}", n + 2));
        let optnum = |s: &str| -> Result<Option<f64>, String> {
            if s.is_empty() {
                Ok(None)
            } else {
                num(s).map(Some)
            }
        };
        rows.push(CsvRow {
            element: f[0].to_string(),
            dof_kind: f[1].to_string(),
            solution: f[2].to_string(),
            row: MeshRow {
                h: num(f[3])?,
                ndofs: f[4].parse().map_err(|e| format!("line {}: {e}", n + 2))?,
                l2: num(f[5])?,
                energy: num(f[6])?,
                rate_l2: optnum(f[7])?,
                rate_energy: optnum(f[8])?,
                cg_iters: f[9].parse().map_err(|e| format!("line {}: {e}", n + 2))?,
                seconds: num(f[10])?,
            },
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rate_is_exact_on_synthetic_sequences() {
        // e = C * h^p gives back p for any p.
        for p in [0.5, 1.0, 2.0, 3.0, 2.37] {
            let h0 = 0.25;
            let h1 = 0.125;
            let e = |h: f64| 3.7 * h.powf(p);
            let r = rate(e(h0), e(h1), h0, h1);
            assert!((r - p).abs() < 1e-12, "p={p}: {r}");
        }
        assert!((rate(1.0e-2, 2.5e-3, 0.25, 0.125) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn csv_round_trips_exactly() {
        let rows = vec![
            MeshRow {
                h: 0.8660254037844386,
                ndofs: 63,
                l2: 1.234e-3,
                energy: 5.4321e-2,
                rate_l2: None,
                rate_energy: None,
                cg_iters: 17,
                seconds: 0.001953125,
            },
            MeshRow {
                h: 0.4330127018922193,
                ndofs: 333,
                l2: 1.6e-4,
                energy: 1.37e-2,
                rate_l2: Some(2.9477371737973),
                rate_energy: Some(1.987654321),
                cg_iters: 35,
                seconds: 0.015625,
            },
        ];
        let report = ConvergenceReport {
            studies: vec![finalize_study(
                "sk1",
                DofKind::FaceCentroidValue,
                "trig",
                rows,
            )],
        };
        let csv = write_csv(&report);
        let parsed = parse_csv(&csv).unwrap();
        assert_eq!(parsed.len(), 2);
        for (got, want) in parsed.iter().zip(&report.studies[0].rows) {
            assert_eq!(&got.row, want);
            assert_eq!(got.element, "sk1");
        }
    }

    #[test]
    fn expected_rate_table() {
        assert_eq!(
            expected_rates("sk6", DofKind::FaceCentroidValue),
            (1.0, 2.0)
        );
        assert_eq!(
            expected_rates("sk6", DofKind::FaceIntegralAverage),
            (2.0, 3.0)
        );
        assert_eq!(
            expected_rates("sk1", DofKind::FaceCentroidValue),
            (2.0, 3.0)
        );
    }
}
