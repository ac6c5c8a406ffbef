//! File formats: representation JSON, sweep CSV, circle-diagram SVG.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifier::SweepRow;
use crate::representations::{verify_relations, CMatrix, Family, ReprMatrices, ReprSpec, ResidualReport};

#[derive(Debug, Error)]
pub enum EmitError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("malformed representation file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixSet {
    pub u: Vec<Vec<[f64; 2]>>,
    pub ap: Vec<Vec<[f64; 2]>>,
    pub am: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepFile {
    pub family: String,
    #[serde(rename = "R")]
    pub r: f64,
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub beta_prime: f64,
    pub k: Option<usize>,
    pub m_half: Option<usize>,
    pub nu: [f64; 2],
    pub eps: f64,
    pub matrices: MatrixSet,
    pub residuals: ResidualReport,
}

pub fn matrix_rows(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

fn matrix(rows: &[Vec<[f64; 2]>], n: usize, name: &str) -> Result<CMatrix, EmitError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(EmitError::Format(format!("matrix {name} is not {n}x{n}")));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1])))
}

impl RepFile {
    pub fn from_matrices(m: &ReprMatrices) -> Self {
        let s = &m.spec;
        Self {
            family: s.family.as_str().to_string(),
            r: s.r,
            n: m.dim(),
            alpha: s.alpha,
            beta: s.beta(),
            beta_prime: s.beta_prime,
            k: s.k,
            m_half: s.m_half,
            nu: [s.nu.re, s.nu.im],
            eps: m.eps,
            matrices: MatrixSet { u: matrix_rows(&m.u), ap: matrix_rows(&m.ap), am: matrix_rows(&m.am) },
            residuals: verify_relations(m),
        }
    }

    pub fn to_matrices(&self) -> Result<ReprMatrices, EmitError> {
        let family = Family::parse(&self.family)
            .ok_or_else(|| EmitError::Format(format!("unknown family {:?}", self.family)))?;
        let spec = ReprSpec {
            family,
            r: self.r,
            n: self.n,
            alpha: self.alpha,
            beta_prime: self.beta_prime,
            k: self.k,
            nu: Complex64::new(self.nu[0], self.nu[1]),
            m_half: self.m_half,
        };
        Ok(ReprMatrices {
            u: matrix(&self.matrices.u, self.n, "u")?,
            ap: matrix(&self.matrices.ap, self.n, "ap")?,
            am: matrix(&self.matrices.am, self.n, "am")?,
            eps: self.eps,
            spec,
        })
    }
}

pub fn rep_to_json(m: &ReprMatrices) -> Result<String, EmitError> {
    Ok(serde_json::to_string(&RepFile::from_matrices(m))? + "\n")
}

pub fn rep_from_json(src: &str) -> Result<ReprMatrices, EmitError> {
    serde_json::from_str::<RepFile>(src)?.to_matrices()
}

pub fn emit_rep_json(m: &ReprMatrices, path: &Path) -> Result<(), EmitError> {
    std::fs::write(path, rep_to_json(m)?)?;
    Ok(())
}

pub fn load_rep_json(path: &Path) -> Result<ReprMatrices, EmitError> {
    rep_from_json(&std::fs::read_to_string(path)?)
}

pub const SWEEP_HEADER: [&str; 9] = ["R", "n", "family", "k", "alpha", "beta_lo", "beta_hi", "exists", "reject_reason"];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn sweep_to_csv(rows: &[SweepRow]) -> Result<String, EmitError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        w.write_record([
            r.r.to_string(),
            r.n.to_string(),
            r.family.as_str().to_string(),
            opt(r.k),
            opt(r.alpha),
            opt(r.beta_lo),
            opt(r.beta_hi),
            r.exists.to_string(),
            r.reject_reason.clone().unwrap_or_default(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| EmitError::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| EmitError::Format(e.to_string()))
}

pub fn emit_sweep_csv(rows: &[SweepRow], path: &Path) -> Result<(), EmitError> {
    std::fs::write(path, sweep_to_csv(rows)?)?;
    Ok(())
}

const CENTER: f64 = 220.0;
const RADIUS: f64 = 200.0;

fn on_circle(theta: f64) -> (f64, f64) {
    (CENTER + RADIUS * theta.cos(), CENTER - RADIUS * theta.sin())
}

/// Half-width of the sector around `π` where `|C|²` is negative, if any.
pub fn forbidden_half_width(r: f64, alpha: f64) -> Option<f64> {
    let c = r * (0.5 * alpha).cos();
    (c <= 1.0).then(|| c.max(-1.0).acos())
}

pub fn diagram_svg(spec: &ReprSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 440 440" width="440" height="440">"#
    );
    let _ = writeln!(
        out,
        r#"  <circle class="orbit" cx="{CENTER}" cy="{CENTER}" r="{RADIUS}" fill="none" stroke="black"/>"#
    );
    if let Some(half) = forbidden_half_width(spec.r, spec.alpha) {
        let (x0, y0) = on_circle(PI - half);
        let (x1, y1) = on_circle(PI + half);
        let large = u8::from(2.0 * half > PI);
        let _ = writeln!(
            out,
            r#"  <path class="wedge" d="M {CENTER:.3} {CENTER:.3} L {x0:.3} {y0:.3} A {RADIUS} {RADIUS} 0 {large} 0 {x1:.3} {y1:.3} Z" fill="gray" fill-opacity="0.4"/>"#
        );
    }
    let first = spec.m_half.map_or(0, |m| -(m as i64));
    let pts: Vec<(f64, f64)> = (first..first + spec.n as i64).map(|m| on_circle(spec.theta_prime(m))).collect();
    let list: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    let tag = if spec.family == Family::T2Finite { "polygon" } else { "polyline" };
    let _ = writeln!(out, r#"  <{tag} points="{}" fill="none" stroke="blue"/>"#, list.join(" "));
    for (x, y) in &pts {
        let _ = writeln!(out, r#"  <circle class="dot" cx="{x:.3}" cy="{y:.3}" r="5" fill="black"/>"#);
    }
    out.push_str("</svg>\n");
    out
}

pub fn emit_diagram_svg(spec: &ReprSpec, path: &Path) -> Result<(), EmitError> {
    std::fs::write(path, diagram_svg(spec))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::{build_s2, build_t2_finite};

    #[test]
    fn json_round_trip() {
        let m = build_s2(&ReprSpec::s2(Family::S2Min, 0.0, 2, PI / 2.0, -PI / 2.0)).unwrap();
        let text = rep_to_json(&m).unwrap();
        let file: RepFile = serde_json::from_str(&text).unwrap();
        assert_eq!(file.matrices.ap[1][0], [2f64.powf(0.25), 0.0]);
        let back = rep_from_json(&text).unwrap();
        assert_eq!(back.ap, m.ap);
        assert_eq!(verify_relations(&back), verify_relations(&m));
        assert_eq!(rep_to_json(&back).unwrap(), text);
    }

    #[test]
    fn nu_is_recorded() {
        let nu = Complex64::from_polar(1.0, PI / 3.0);
        let m = build_t2_finite(&ReprSpec::t2_finite(3.0, 3, 1, PI, nu)).unwrap();
        let file = RepFile::from_matrices(&m);
        assert!((file.nu[0] - 0.5).abs() < 1e-15);
        assert!((file.nu[1] - 0.8660254037844386).abs() < 1e-15);
    }

    #[test]
    fn svg_structure() {
        let s = diagram_svg(&ReprSpec::s2(Family::S2Min, -0.5576, 4, 0.5, -1.0));
        assert_eq!(s.matches(r#"class="dot""#).count(), 4);
        assert!(s.contains("<polyline") && s.contains(r#"class="wedge""#));
        let orbit = s.find(r#"class="orbit""#).unwrap();
        let wedge = s.find(r#"class="wedge""#).unwrap();
        let poly = s.find("<polyline").unwrap();
        let dot = s.find(r#"class="dot""#).unwrap();
        assert!(orbit < wedge && wedge < poly && poly < dot);

        let t = diagram_svg(&ReprSpec::t2_finite(3.0, 3, 1, PI, Complex64::new(1.0, 0.0)));
        assert!(t.contains("<polygon") && !t.contains("wedge"));
        assert_eq!(t.matches(r#"class="dot""#).count(), 3);
    }
}
