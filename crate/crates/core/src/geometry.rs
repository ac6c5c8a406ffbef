//! The commutative side: the surface `z² + (x² + y² − R)² = 1`, its
//! Darboux chart and a finite-difference Poisson bracket used as an oracle
//! for the algebraic bracket.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ncalgebra::CommutativePoly;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("chart not valid at p = {p} for R = {r}: R + cos(2p) must be positive")]
    ChartDomain { r: f64, p: f64 },
    #[error("{0}")]
    Domain(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Chart coordinates with `{p, q} = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DarbouxPoint {
    pub p: f64,
    pub q: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TopologyLabel {
    Null,
    Point,
    ConvexSphere,
    Sphere,
    Variety,
    Torus,
}

pub fn variety_residual(pt: Point3, r: f64) -> f64 {
    let w = pt.x * pt.x + pt.y * pt.y - r;
    pt.z * pt.z + w * w - 1.0
}

fn chart_radius(p: f64, r: f64) -> Result<f64, GeometryError> {
    let rho_sq = r + (2.0 * p).cos();
    if rho_sq > 0.0 {
        Ok(rho_sq.sqrt())
    } else {
        Err(GeometryError::ChartDomain { r, p })
    }
}

/// `(x, y, z) = (ρ cos q, −ρ sin q, sin 2p)` with `ρ = (R + cos 2p)^{1/2}`.
pub fn darboux_point(dp: DarbouxPoint, r: f64) -> Result<Point3, GeometryError> {
    let rho = chart_radius(dp.p, r)?;
    Ok(Point3 { x: rho * dp.q.cos(), y: -rho * dp.q.sin(), z: (2.0 * dp.p).sin() })
}

pub fn topology_of(r: f64) -> TopologyLabel {
    if r < -1.0 {
        TopologyLabel::Null
    } else if r == -1.0 {
        TopologyLabel::Point
    } else if r <= 0.0 {
        TopologyLabel::ConvexSphere
    } else if r < 1.0 {
        TopologyLabel::Sphere
    } else if r == 1.0 {
        TopologyLabel::Variety
    } else {
        TopologyLabel::Torus
    }
}

/// The `y = 0` slice, as `(x, z)` pairs.
///
/// Parameterized by `x² − R = cos t`, `z = sin t`. Each branch (`x ≥ 0`, then
/// `x ≤ 0`) gets an odd number of samples so the midpoint `t = 0` is hit.
/// For `R = −1` the slice is the single point at the origin.
pub fn slice_curve(r: f64, samples: usize) -> Result<Vec<(f64, f64)>, GeometryError> {
    if r < -1.0 {
        return Err(GeometryError::Domain(format!("M(R) is empty for R = {r} < -1")));
    }
    if samples < 8 {
        return Err(GeometryError::Domain(format!("need at least 8 samples, got {samples}")));
    }
    if r == -1.0 {
        return Ok(vec![(0.0, 0.0)]);
    }
    let t_max = if r >= 1.0 { PI } else { (-r).acos() };
    let per_branch = (samples / 2) | 1;
    let ts: Vec<f64> = (0..per_branch)
        .map(|j| -t_max + 2.0 * t_max * j as f64 / (per_branch - 1) as f64)
        .collect();
    let point = |t: f64, sign: f64| {
        if t.abs() == t_max {
            // turning points, evaluated in closed form
            return if r >= 1.0 {
                (sign * (r - 1.0).sqrt(), 0.0)
            } else {
                (0.0, t.signum() * (1.0 - r * r).sqrt())
            };
        }
        (sign * (r + t.cos()).max(0.0).sqrt(), t.sin())
    };
    let mut out: Vec<(f64, f64)> = ts.iter().map(|&t| point(t, 1.0)).collect();
    out.extend(ts.iter().rev().map(|&t| point(t, -1.0)));
    Ok(out)
}

/// Values of `(a₊, a₋, u)` at a chart point: `ρe^{−iq}`, `ρe^{iq}`, `e^{2ip}`.
pub fn chart_generators(dp: DarbouxPoint, r: f64) -> Result<(Complex64, Complex64, Complex64), GeometryError> {
    let rho = chart_radius(dp.p, r)?;
    Ok((
        Complex64::from_polar(rho, -dp.q),
        Complex64::from_polar(rho, dp.q),
        Complex64::from_polar(1.0, 2.0 * dp.p),
    ))
}

pub fn eval_on_chart(f: &CommutativePoly, dp: DarbouxPoint, r: f64) -> Result<Complex64, GeometryError> {
    let (ap, am, u) = chart_generators(dp, r)?;
    Ok(f.eval_at(ap, am, u))
}

/// Central-difference Poisson bracket `∂f/∂p ∂g/∂q − ∂f/∂q ∂g/∂p`.
pub fn poisson_fd(
    f: &CommutativePoly,
    g: &CommutativePoly,
    dp: DarbouxPoint,
    r: f64,
    h: f64,
) -> Result<Complex64, GeometryError> {
    let at = |poly: &CommutativePoly, dpp: f64, dqq: f64| {
        eval_on_chart(poly, DarbouxPoint { p: dp.p + dpp, q: dp.q + dqq }, r)
    };
    let d_p = |poly| -> Result<Complex64, GeometryError> { Ok((at(poly, h, 0.0)? - at(poly, -h, 0.0)?) / (2.0 * h)) };
    let d_q = |poly| -> Result<Complex64, GeometryError> { Ok((at(poly, 0.0, h)? - at(poly, 0.0, -h)?) / (2.0 * h)) };
    Ok(d_p(f)? * d_q(g)? - d_q(f)? * d_p(g)?)
}

/// Open interval of `p` on which the chart is valid, shrunk by `margin`.
pub fn chart_p_range(r: f64, margin: f64) -> Result<(f64, f64), GeometryError> {
    if r <= -1.0 {
        return Err(GeometryError::Domain(format!("no chart for R = {r}")));
    }
    if r > 1.0 {
        return Ok((margin, PI - margin));
    }
    let half_width = 0.5 * (PI - r.acos());
    Ok((-half_width + margin, half_width - margin))
}
