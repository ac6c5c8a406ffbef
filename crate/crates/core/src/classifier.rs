//! Which representations exist for given `(R, n)`, and for which angles.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::representations::{c_squared, Family, ReprSpec, ENDPOINT_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifierError {
    #[error("{0}")]
    Domain(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Number of grid points used to bracket roots.
    pub grid: usize,
    /// Target `|residual|` for bisection.
    pub tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { grid: 4096, tol: 1e-12 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub family: Family,
    pub r: f64,
    pub n: usize,
    pub alpha: f64,
    pub beta_prime: f64,
    pub k: Option<usize>,
    pub exists: bool,
    pub reject_reason: Option<String>,
}

impl SolutionRecord {
    pub fn spec(&self) -> ReprSpec {
        ReprSpec::s2(self.family, self.r, self.n, self.alpha, self.beta_prime)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowKind {
    None,
    Restricted,
    Full,
}

/// Admissible `β′` for finite T² representations. Fields that do not
/// apply are NaN.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaWindow {
    pub kind: WindowKind,
    pub lower: f64,
    pub upper: f64,
    pub delta: f64,
}

impl BetaWindow {
    pub fn exists(&self) -> bool {
        self.kind != WindowKind::None
    }

    pub fn midpoint(&self) -> Option<f64> {
        self.exists().then(|| 0.5 * (self.lower + self.upper))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionLabel {
    Null,
    Point,
    Sphere,
    Variety,
    SphereTorus,
    SphereTorusBoundary,
    Torus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FamilyFlags {
    pub minimal_s2: bool,
    pub nonminimal_s2: bool,
    pub finite_t2: bool,
    pub semi_infinite_t2: bool,
    pub infinite_t2: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionClassification {
    pub label: RegionLabel,
    pub r_eps: f64,
    pub flags: FamilyFlags,
}

/// `R̂(α) = −cos(nα/2) / cos(α/2)`
pub fn r_hat(alpha: f64, n: usize) -> f64 {
    -(0.5 * n as f64 * alpha).cos() / (0.5 * alpha).cos()
}

/// Bisection on a bracket `[lo, hi]` where `f` changes sign.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 || (f_mid.abs() < tol && hi - lo < 1e-14) {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi.abs() {
            break;
        }
    }
    0.5 * (lo + hi)
}

pub fn solve_minimal_s2(r: f64, n: usize) -> SolutionRecord {
    solve_minimal_s2_with(r, n, &SolverConfig::default())
}

pub fn solve_minimal_s2_with(r: f64, n: usize, cfg: &SolverConfig) -> SolutionRecord {
    let mut rec = SolutionRecord {
        family: Family::S2Min,
        r,
        n,
        alpha: f64::NAN,
        beta_prime: f64::NAN,
        k: None,
        exists: false,
        reject_reason: None,
    };
    if n < 2 {
        rec.reject_reason = Some(format!("n = {n} < 2"));
        return rec;
    }
    let upper = 2.0 * PI / n as f64;
    let sec = 1.0 / (0.5 * upper).cos();
    if !(r > -1.0 && r < sec) {
        rec.reject_reason = Some(format!("R outside (-1, sec(pi/n)) = (-1, {sec})"));
        return rec;
    }
    let residual = |a: f64| (0.5 * n as f64 * a).cos() + r * (0.5 * a).cos();
    // residual(0) = 1 + R > 0 and residual(2π/n) = R cos(π/n) − 1 < 0
    let grid = cfg.grid.max(2);
    let mut lo = 0.0;
    let mut hi = upper;
    for j in 1..grid {
        let a = upper * j as f64 / grid as f64;
        if residual(a) <= 0.0 {
            hi = a;
            break;
        }
        lo = a;
    }
    let alpha = bisect(residual, lo, hi, cfg.tol);
    if !(alpha > 0.0 && alpha < upper && alpha < PI) {
        rec.reject_reason = Some(format!("alpha = {alpha} not resolvable inside (0, 2pi/n)"));
        return rec;
    }
    rec.alpha = alpha;
    rec.beta_prime = -0.5 * n as f64 * alpha;
    rec.exists = true;
    rec
}

/// Runs the S² interior inequalities, then the endpoint conditions.
pub fn check_s2_candidate(r: f64, n: usize, alpha: f64, beta_prime: f64) -> Result<(), String> {
    for m in 1..n {
        let c2 = c_squared(beta_prime + m as f64 * alpha, r, alpha);
        if c2 <= 0.0 {
            return Err(format!("inequality fails at m = {m} (|C|^2 = {c2:.6e})"));
        }
    }
    for m in [0, n] {
        let c2 = c_squared(beta_prime + m as f64 * alpha, r, alpha);
        if c2.abs() > ENDPOINT_TOL {
            return Err(format!("endpoint m = {m} does not vanish (|C|^2 = {c2:.6e})"));
        }
    }
    Ok(())
}

fn branch_a_k(alpha: f64, n: usize) -> Option<i64> {
    let t = n as f64 * alpha / (2.0 * PI);
    let k = (t - 0.5).floor();
    (k > t - 1.5 && k < t - 0.5).then_some(k as i64)
}

pub fn enumerate_s2_nonminimal(r: f64, n: usize) -> Vec<SolutionRecord> {
    enumerate_s2_nonminimal_with(r, n, &SolverConfig::default())
}

pub fn enumerate_s2_nonminimal_with(r: f64, n: usize, cfg: &SolverConfig) -> Vec<SolutionRecord> {
    if n < 3 {
        return Vec::new();
    }
    let nf = n as f64;
    let mut candidates: Vec<(f64, f64, usize)> = Vec::new();

    let a0 = 2.0 * PI / nf;
    let grid = cfg.grid.max(2);
    let node = |j: usize| a0 + (PI - a0) * j as f64 / grid as f64;
    let f = |a: f64, k: i64| (PI * k as f64 - 0.5 * nf * a).cos() + r * (0.5 * a).cos();
    for j in 1..grid - 1 {
        let (a, b) = (node(j), node(j + 1));
        let (Some(ka), Some(kb)) = (branch_a_k(a, n), branch_a_k(b, n)) else { continue };
        if ka != kb {
            continue;
        }
        let (fa, fb) = (f(a, ka), f(b, ka));
        let root = if fa == 0.0 {
            Some(a)
        } else if (fa < 0.0) != (fb < 0.0) && fb != 0.0 {
            Some(bisect(|x| f(x, ka), a, b, cfg.tol))
        } else {
            None
        };
        if let Some(alpha) = root {
            if ka >= 0 {
                candidates.push((alpha, PI * ka as f64 - 0.5 * nf * alpha, ka as usize));
            }
        }
    }

    for kp in 1..=(n - 1) / 2 {
        if n.gcd(&kp) != 1 {
            continue;
        }
        let c = r * (PI * kp as f64 / nf).cos();
        if c.abs() > 1.0 {
            continue;
        }
        let alpha = 2.0 * PI * kp as f64 / nf;
        let root = (-c).acos();
        candidates.push((alpha, -root, kp));
        if root > 0.0 && root < PI {
            candidates.push((alpha, -2.0 * PI + root, kp));
        }
    }

    let mut out: Vec<SolutionRecord> = candidates
        .into_iter()
        .map(|(alpha, beta_prime, k)| {
            let verdict = check_s2_candidate(r, n, alpha, beta_prime);
            SolutionRecord {
                family: Family::S2NonMin,
                r,
                n,
                alpha,
                beta_prime,
                k: Some(k),
                exists: verdict.is_ok(),
                reject_reason: verdict.err(),
            }
        })
        .collect();
    out.sort_by(|a, b| a.alpha.total_cmp(&b.alpha).then(a.beta_prime.total_cmp(&b.beta_prime)));
    out
}

fn check_t2_indices(n: usize, k: usize) -> Result<(), ClassifierError> {
    if n < 3 || k == 0 || 2 * k >= n || n.gcd(&k) != 1 {
        return Err(ClassifierError::Domain(format!(
            "need gcd(n, k) = 1 and 1 <= k < n/2, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

/// `|C|² > 0` at every vertex `β′ + mα`, `α = 2πk/n`.
pub fn t2_ineq_holds(r: f64, n: usize, k: usize, beta_prime: f64) -> bool {
    let alpha = 2.0 * PI * k as f64 / n as f64;
    (0..n).all(|m| c_squared(beta_prime + m as f64 * alpha, r, alpha) > 0.0)
}

/// `cos(π/n) sec(πk/n)`; exactly 1 for `k = 1`.
pub fn t2_threshold(n: usize, k: usize) -> f64 {
    (PI / n as f64).cos() / (PI * k as f64 / n as f64).cos()
}

pub fn t2_beta_window(r: f64, n: usize, k: usize) -> Result<BetaWindow, ClassifierError> {
    check_t2_indices(n, k)?;
    let c = (PI * k as f64 / n as f64).cos();
    let base = PI - 2.0 * PI / n as f64;
    if r <= t2_threshold(n, k) {
        return Ok(BetaWindow { kind: WindowKind::None, lower: f64::NAN, upper: f64::NAN, delta: f64::NAN });
    }
    if r > 1.0 / c {
        return Ok(BetaWindow { kind: WindowKind::Full, lower: base, upper: PI, delta: f64::NAN });
    }
    let delta = 2.0 * (r * c).min(1.0).acos();
    Ok(BetaWindow { kind: WindowKind::Restricted, lower: base + 0.5 * delta, upper: PI - 0.5 * delta, delta })
}

/// Boundary tolerance used when `R` is compared against `−1`, `1` and `R_ε`.
pub const REGION_TOL: f64 = 1e-6;

pub fn classify_region(r: f64, eps: f64) -> Result<RegionClassification, ClassifierError> {
    classify_region_with_tol(r, eps, REGION_TOL)
}

pub fn classify_region_with_tol(r: f64, eps: f64, tol: f64) -> Result<RegionClassification, ClassifierError> {
    if !(eps > 0.0 && eps.is_finite()) || !r.is_finite() {
        return Err(ClassifierError::Domain(format!("need finite R and eps > 0, got R = {r}, eps = {eps}")));
    }
    let r_eps = (1.0 + eps * eps).sqrt();
    let near = |v: f64| (r - v).abs() <= tol;
    let label = if near(-1.0) {
        RegionLabel::Point
    } else if r < -1.0 {
        RegionLabel::Null
    } else if near(1.0) {
        RegionLabel::Variety
    } else if r < 1.0 {
        RegionLabel::Sphere
    } else if near(r_eps) {
        RegionLabel::SphereTorusBoundary
    } else if r < r_eps {
        RegionLabel::SphereTorus
    } else {
        RegionLabel::Torus
    };
    use RegionLabel::*;
    let flags = FamilyFlags {
        minimal_s2: matches!(label, Sphere | Variety | SphereTorus),
        nonminimal_s2: matches!(label, SphereTorus | SphereTorusBoundary),
        finite_t2: matches!(label, SphereTorus | SphereTorusBoundary | Torus),
        semi_infinite_t2: label == SphereTorusBoundary,
        infinite_t2: matches!(label, SphereTorusBoundary | Torus),
    };
    Ok(RegionClassification { label, r_eps, flags })
}

/// `start:stop:count`, inclusive of both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl RangeSpec {
    pub fn values(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.start],
            c => (0..c)
                .map(|j| {
                    if j == c - 1 {
                        self.stop
                    } else {
                        self.start + (self.stop - self.start) * j as f64 / (c - 1) as f64
                    }
                })
                .collect(),
        }
    }
}

impl FromStr for RangeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || format!("expected start:stop:count, got {s:?}");
        match parts.as_slice() {
            [single] => {
                let v: f64 = single.trim().parse().map_err(|_| bad())?;
                Ok(Self { start: v, stop: v, count: 1 })
            }
            [a, b, c] => Ok(Self {
                start: a.trim().parse().map_err(|_| bad())?,
                stop: b.trim().parse().map_err(|_| bad())?,
                count: c.trim().parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub r: f64,
    pub n: usize,
    pub family: Family,
    pub k: Option<usize>,
    pub alpha: Option<f64>,
    pub beta_lo: Option<f64>,
    pub beta_hi: Option<f64>,
    pub exists: bool,
    pub reject_reason: Option<String>,
}

impl SweepRow {
    fn from_record(rec: &SolutionRecord) -> Self {
        let finite = |v: f64| v.is_finite().then_some(v);
        Self {
            r: rec.r,
            n: rec.n,
            family: rec.family,
            k: rec.k,
            alpha: finite(rec.alpha),
            beta_lo: finite(rec.beta_prime),
            beta_hi: finite(rec.beta_prime),
            exists: rec.exists,
            reject_reason: rec.reject_reason.clone(),
        }
    }
}

fn cmp_opt(a: Option<f64>, b: Option<f64>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(x), Some(y)) => x.total_cmp(&y),
    }
}

/// For each `R`: the minimal S² solution, every non-minimal candidate and
/// the T² window of each admissible `k`, sorted by `(R, family, k, α)`.
pub fn sweep_regions(n: usize, grid: &RangeSpec) -> Vec<SweepRow> {
    sweep_regions_with(n, grid, &SolverConfig::default())
}

pub fn sweep_regions_with(n: usize, grid: &RangeSpec, cfg: &SolverConfig) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    for r in grid.values() {
        rows.push(SweepRow::from_record(&solve_minimal_s2_with(r, n, cfg)));
        rows.extend(enumerate_s2_nonminimal_with(r, n, cfg).iter().map(SweepRow::from_record));
        for k in (1..n).filter(|&k| 2 * k < n && n.gcd(&k) == 1) {
            let Ok(w) = t2_beta_window(r, n, k) else { continue };
            let finite = |v: f64| v.is_finite().then_some(v);
            rows.push(SweepRow {
                r,
                n,
                family: Family::T2Finite,
                k: Some(k),
                alpha: Some(2.0 * PI * k as f64 / n as f64),
                beta_lo: finite(w.lower),
                beta_hi: finite(w.upper),
                exists: w.exists(),
                reject_reason: (!w.exists()).then(|| format!("R <= {}", t2_threshold(n, k))),
            });
        }
    }
    rows.sort_by(|a, b| {
        a.r.total_cmp(&b.r)
            .then(a.family.cmp(&b.family))
            .then(a.k.cmp(&b.k))
            .then(cmp_opt(a.alpha, b.alpha))
            .then(cmp_opt(a.beta_lo, b.beta_lo))
    });
    rows
}
