//! Explicit matrix representations of A(R).
//!
//! Every family is built in the eigenbasis of `U`: basis vector `m` carries
//! the eigenvalue `e^{i(β′ + α/2 + mα)}`, `a₋` lowers with coefficient
//! `C_m`, `|C_m|² = sec(α/2) cos(β′ + mα) + R`, and `a₊ = a₋†`.
//! Also houses the two reference models (fuzzy sphere, finite
//! noncommutative torus) used as cross-checks.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ncalgebra::NormalForm;

pub type CMatrix = DMatrix<Complex64>;

/// `|C|²` at the S² boundary is accepted as zero within this tolerance.
pub const ENDPOINT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_DIM: usize = 512;
/// Minimum angular separation for two `U` eigenvalues to count as distinct.
const EIGEN_SEPARATION: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReprError {
    #[error("invalid representation parameters: {0}")]
    InvalidSpec(String),
    #[error("{0}")]
    Domain(String),
    #[error("element belongs to A({algebra_r}) but the representation has R = {spec_r}")]
    ContextMismatch { spec_r: f64, algebra_r: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    S2Min,
    S2NonMin,
    T2Finite,
    T2Window,
    FuzzySphere,
    NCTorusFinite,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::S2Min => "s2min",
            Family::S2NonMin => "s2nonmin",
            Family::T2Finite => "t2finite",
            Family::T2Window => "t2window",
            Family::FuzzySphere => "fuzzysphere",
            Family::NCTorusFinite => "nctorus",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s.to_ascii_lowercase().as_str() {
            "s2min" => Family::S2Min,
            "s2nonmin" => Family::S2NonMin,
            "t2finite" | "t2" => Family::T2Finite,
            "t2window" => Family::T2Window,
            "fuzzysphere" => Family::FuzzySphere,
            "nctorus" => Family::NCTorusFinite,
            _ => return None,
        })
    }

    pub fn is_s2(&self) -> bool {
        matches!(self, Family::S2Min | Family::S2NonMin)
    }
}

/// Parameters of one representation.
///
/// For [`Family::T2Window`], `n` is the window width `2M + 1` and `m_half`
/// holds `M`. `beta_prime` is `β − α/2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReprSpec {
    pub family: Family,
    pub r: f64,
    pub n: usize,
    pub alpha: f64,
    pub beta_prime: f64,
    pub k: Option<usize>,
    pub nu: Complex64,
    pub m_half: Option<usize>,
}

impl ReprSpec {
    pub fn s2(family: Family, r: f64, n: usize, alpha: f64, beta_prime: f64) -> Self {
        Self { family, r, n, alpha, beta_prime, k: None, nu: Complex64::new(1.0, 0.0), m_half: None }
    }

    pub fn t2_finite(r: f64, n: usize, k: usize, beta_prime: f64, nu: Complex64) -> Self {
        Self {
            family: Family::T2Finite,
            r,
            n,
            alpha: 2.0 * PI * k as f64 / n as f64,
            beta_prime,
            k: Some(k),
            nu,
            m_half: None,
        }
    }

    pub fn t2_window(r: f64, alpha: f64, beta_prime: f64, m_half: usize) -> Self {
        Self {
            family: Family::T2Window,
            r,
            n: 2 * m_half + 1,
            alpha,
            beta_prime,
            k: None,
            nu: Complex64::new(1.0, 0.0),
            m_half: Some(m_half),
        }
    }

    /// `β = β′ + α/2`
    pub fn beta(&self) -> f64 {
        self.beta_prime + 0.5 * self.alpha
    }

    /// Angle `β′ + mα` attached to basis vector `m`.
    pub fn theta_prime(&self, m: i64) -> f64 {
        self.beta_prime + m as f64 * self.alpha
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReprMatrices {
    pub u: CMatrix,
    pub ap: CMatrix,
    pub am: CMatrix,
    pub eps: f64,
    pub spec: ReprSpec,
}

impl ReprMatrices {
    pub fn dim(&self) -> usize {
        self.u.nrows()
    }
}

/// Frobenius-norm residuals of the defining relations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// `[X,Y] − iεZ`
    pub comm_xy: f64,
    /// `[Y,Z] − iε(WX+XW)`
    pub comm_yz: f64,
    /// `[Z,X] − iε(WY+YW)`
    pub comm_zx: f64,
    /// `Z² + W² − I`
    pub casimir: f64,
    /// `X² + Y² − R − W`
    pub w_def: f64,
    /// `UU† − I`
    pub unitarity: f64,
    pub herm_x: f64,
    pub herm_y: f64,
    pub herm_z: f64,
    /// Set for truncated windows: only interior columns were measured.
    pub interior_only: bool,
}

impl ResidualReport {
    pub fn max(&self) -> f64 {
        [
            self.comm_xy,
            self.comm_yz,
            self.comm_zx,
            self.casimir,
            self.w_def,
            self.unitarity,
            self.herm_x,
            self.herm_y,
            self.herm_z,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn entries(&self) -> [(&'static str, f64); 9] {
        [
            ("comm_xy", self.comm_xy),
            ("comm_yz", self.comm_yz),
            ("comm_zx", self.comm_zx),
            ("casimir", self.casimir),
            ("w_def", self.w_def),
            ("unitarity", self.unitarity),
            ("herm_x", self.herm_x),
            ("herm_y", self.herm_y),
            ("herm_z", self.herm_z),
        ]
    }
}

/// `|C|² = sec(α/2) cos(θ′) + R`; negative values mean no representation.
pub fn c_squared(theta_prime: f64, r: f64, alpha: f64) -> f64 {
    theta_prime.cos() / (0.5 * alpha).cos() + r
}

pub fn epsilon_of_alpha(alpha: f64) -> Result<f64, ReprError> {
    if alpha > 0.0 && alpha < PI {
        Ok((0.5 * alpha).tan())
    } else {
        Err(ReprError::Domain(format!("alpha = {alpha} outside (0, pi)")))
    }
}

/// Shifts `β′` into `(−2π, 0]`.
pub fn normalize_beta_s2(beta_prime: f64) -> f64 {
    let b = beta_prime - 2.0 * PI * (beta_prime / (2.0 * PI)).ceil();
    if b <= -2.0 * PI {
        b + 2.0 * PI
    } else {
        b
    }
}

/// Shifts `β′` into `(π − 2π/n, π]`.
pub fn normalize_beta_t2(beta_prime: f64, n: usize) -> f64 {
    let width = 2.0 * PI / n as f64;
    let b = beta_prime - width * ((beta_prime - PI) / width).ceil();
    if b <= PI - width {
        b + width
    } else {
        b
    }
}

/// Limits applied by the builders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildConfig {
    pub max_dim: usize,
    pub endpoint_tol: f64,
}

impl Default for BuildConfig {
    fn default() -> Self {
        Self { max_dim: DEFAULT_MAX_DIM, endpoint_tol: ENDPOINT_TOL }
    }
}

impl BuildConfig {
    /// Builds any of the four A(R) families.
    pub fn build(&self, spec: &ReprSpec) -> Result<ReprMatrices, ReprError> {
        match spec.family {
            Family::S2Min | Family::S2NonMin => self.build_s2(spec),
            Family::T2Finite => self.build_t2_finite(spec),
            Family::T2Window => self.build_t2_window(spec),
            Family::FuzzySphere | Family::NCTorusFinite => Err(ReprError::InvalidSpec(format!(
                "{} is a reference model, not a representation of A(R)",
                spec.family.as_str()
            ))),
        }
    }

    fn check_common(&self, spec: &ReprSpec) -> Result<f64, ReprError> {
        if spec.n < 2 {
            return Err(ReprError::InvalidSpec(format!("dimension n = {} must be at least 2", spec.n)));
        }
        if spec.n > self.max_dim {
            return Err(ReprError::InvalidSpec(format!("dimension n = {} exceeds cap {}", spec.n, self.max_dim)));
        }
        if !spec.r.is_finite() || !spec.beta_prime.is_finite() {
            return Err(ReprError::InvalidSpec("non-finite parameter".into()));
        }
        epsilon_of_alpha(spec.alpha).map_err(|e| ReprError::InvalidSpec(e.to_string()))
    }

    pub fn build_s2(&self, spec: &ReprSpec) -> Result<ReprMatrices, ReprError> {
        if !spec.family.is_s2() {
            return Err(ReprError::InvalidSpec(format!("family {} is not S2-type", spec.family.as_str())));
        }
        let eps = self.check_common(spec)?;
        let minimal = spec.n as f64 * spec.alpha < 2.0 * PI - 1e-9;
        if minimal != (spec.family == Family::S2Min) {
            return Err(ReprError::InvalidSpec(format!(
                "n*alpha = {} is inconsistent with family {}",
                spec.n as f64 * spec.alpha,
                spec.family.as_str()
            )));
        }
        let mut spec = spec.clone();
        spec.beta_prime = normalize_beta_s2(spec.beta_prime);
        let n = spec.n;
        let cs = |m: usize| c_squared(spec.theta_prime(m as i64), spec.r, spec.alpha);
        if let Some(m) = (1..n).find(|&m| cs(m) <= 0.0) {
            return Err(ReprError::InvalidSpec(format!(
                "|C|^2 = {:.6e} <= 0 at interior index m = {m}",
                cs(m)
            )));
        }
        for m in [0, n] {
            if cs(m).abs() > self.endpoint_tol {
                return Err(ReprError::InvalidSpec(format!(
                    "ladder does not terminate: |C|^2 = {:.6e} at endpoint m = {m}",
                    cs(m)
                )));
            }
        }
        check_distinct_eigenvalues(&spec)?;
        let mut am = CMatrix::zeros(n, n);
        for m in 1..n {
            am[(m - 1, m)] = Complex64::new(cs(m).sqrt(), 0.0);
        }
        Ok(assemble(spec, am, eps))
    }

    pub fn build_t2_finite(&self, spec: &ReprSpec) -> Result<ReprMatrices, ReprError> {
        if spec.family != Family::T2Finite {
            return Err(ReprError::InvalidSpec(format!("family {} is not T2Finite", spec.family.as_str())));
        }
        let n = spec.n;
        let k = spec.k.ok_or_else(|| ReprError::InvalidSpec("T2Finite requires k".into()))?;
        if n < 2 || k == 0 || 2 * k >= n || n.gcd(&k) != 1 {
            return Err(ReprError::InvalidSpec(format!(
                "need gcd(n, k) = 1 and 1 <= k < n/2, got n = {n}, k = {k}"
            )));
        }
        if (spec.nu.norm() - 1.0).abs() > 1e-12 {
            return Err(ReprError::InvalidSpec(format!("|nu| = {} is not 1", spec.nu.norm())));
        }
        let mut spec = spec.clone();
        spec.alpha = 2.0 * PI * k as f64 / n as f64;
        let eps = self.check_common(&spec)?;
        spec.beta_prime = normalize_beta_t2(spec.beta_prime, n);
        let cs = |m: usize| c_squared(spec.theta_prime(m as i64), spec.r, spec.alpha);
        if let Some(m) = (0..n).find(|&m| cs(m) <= 0.0) {
            return Err(ReprError::InvalidSpec(format!("|C|^2 = {:.6e} <= 0 at index m = {m}", cs(m))));
        }
        let mut am = CMatrix::zeros(n, n);
        for m in 1..n {
            am[(m - 1, m)] = Complex64::new(cs(m).sqrt(), 0.0);
        }
        // C_β = ν|C_β| sits on the wrap-around entry of a₋
        am[(n - 1, 0)] = spec.nu * cs(0).sqrt();
        Ok(assemble(spec, am, eps))
    }

    pub fn build_t2_window(&self, spec: &ReprSpec) -> Result<ReprMatrices, ReprError> {
        if spec.family != Family::T2Window {
            return Err(ReprError::InvalidSpec(format!("family {} is not T2Window", spec.family.as_str())));
        }
        let m_half = spec.m_half.ok_or_else(|| ReprError::InvalidSpec("T2Window requires M".into()))?;
        let mut spec = spec.clone();
        spec.n = 2 * m_half + 1;
        let eps = self.check_common(&spec)?;
        let threshold = 1.0 / (0.5 * spec.alpha).cos();
        if spec.r < threshold - 1e-12 {
            return Err(ReprError::InvalidSpec(format!(
                "R = {} < sec(alpha/2) = {threshold}: |C|^2 turns negative on a dense set",
                spec.r
            )));
        }
        let ratio = spec.alpha / (2.0 * PI);
        if let Some(q) = (1..=spec.n).find(|&q| {
            let x = ratio * q as f64;
            (x - x.round()).abs() < 1e-9
        }) {
            return Err(ReprError::InvalidSpec(format!(
                "alpha/2pi = {ratio} is rational with denominator {q} to working precision"
            )));
        }
        let n = spec.n;
        let offset = m_half as i64;
        let mut am = CMatrix::zeros(n, n);
        for j in 1..n {
            let c2 = c_squared(spec.theta_prime(j as i64 - offset), spec.r, spec.alpha);
            let c = if c2.abs() <= self.endpoint_tol { 0.0 } else { c2.max(0.0).sqrt() };
            am[(j - 1, j)] = Complex64::new(c, 0.0);
        }
        let mut built = assemble_with_offset(spec, am, eps, offset);
        built.spec.n = n;
        Ok(built)
    }
}

fn check_distinct_eigenvalues(spec: &ReprSpec) -> Result<(), ReprError> {
    let n = spec.n;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (j - i) as f64 * spec.alpha;
            let wrapped = d - 2.0 * PI * (d / (2.0 * PI)).round();
            if wrapped.abs() < EIGEN_SEPARATION {
                return Err(ReprError::InvalidSpec(format!("repeated U eigenvalue at indices {i} and {j}")));
            }
        }
    }
    Ok(())
}

fn assemble(spec: ReprSpec, am: CMatrix, eps: f64) -> ReprMatrices {
    assemble_with_offset(spec, am, eps, 0)
}

fn assemble_with_offset(spec: ReprSpec, am: CMatrix, eps: f64, offset: i64) -> ReprMatrices {
    let n = am.nrows();
    let beta = spec.beta();
    let u = CMatrix::from_diagonal(&nalgebra::DVector::from_fn(n, |j, _| {
        Complex64::from_polar(1.0, beta + (j as i64 - offset) as f64 * spec.alpha)
    }));
    let ap = am.adjoint();
    ReprMatrices { u, ap, am, eps, spec }
}

pub fn build_s2(spec: &ReprSpec) -> Result<ReprMatrices, ReprError> {
    BuildConfig::default().build_s2(spec)
}

pub fn build_t2_finite(spec: &ReprSpec) -> Result<ReprMatrices, ReprError> {
    BuildConfig::default().build_t2_finite(spec)
}

pub fn build_t2_window(spec: &ReprSpec) -> Result<ReprMatrices, ReprError> {
    BuildConfig::default().build_t2_window(spec)
}

pub fn build(spec: &ReprSpec) -> Result<ReprMatrices, ReprError> {
    BuildConfig::default().build(spec)
}

/// Hermitian and anti-Hermitian parts in the convention `x = (a₊+a₋)/2`,
/// `y = (a₊−a₋)/(2i)`.
fn real_imag_parts(plus: &CMatrix, minus: &CMatrix) -> (CMatrix, CMatrix) {
    let x = (plus + minus) * Complex64::new(0.5, 0.0);
    let y = (plus - minus) * Complex64::new(0.0, -0.5);
    (x, y)
}

pub fn verify_relations(m: &ReprMatrices) -> ResidualReport {
    let n = m.dim();
    let (x, y) = real_imag_parts(&m.ap, &m.am);
    let ud = m.u.adjoint();
    let (w, z) = real_imag_parts(&m.u, &ud);
    let id = CMatrix::identity(n, n);
    let ie = Complex64::new(0.0, m.eps);
    let interior = m.spec.family == Family::T2Window;
    let norm = |a: CMatrix| -> f64 {
        if interior && n > 2 {
            a.columns(1, n - 2).norm()
        } else {
            a.norm()
        }
    };
    let comm = |a: &CMatrix, b: &CMatrix| a * b - b * a;
    let anti = |a: &CMatrix, b: &CMatrix| a * b + b * a;
    ResidualReport {
        comm_xy: norm(comm(&x, &y) - &z * ie),
        comm_yz: norm(comm(&y, &z) - anti(&w, &x) * ie),
        comm_zx: norm(comm(&z, &x) - anti(&w, &y) * ie),
        casimir: norm(&z * &z + &w * &w - &id),
        w_def: norm(&x * &x + &y * &y - &id * Complex64::new(m.spec.r, 0.0) - &w),
        unitarity: norm(&m.u * &ud - &id),
        herm_x: norm(&x - x.adjoint()),
        herm_y: norm(&y - y.adjoint()),
        herm_z: norm(&z - z.adjoint()),
        interior_only: interior,
    }
}

fn contexts_match(f: &NormalForm, r: f64) -> Result<(), ReprError> {
    let algebra_r = f.context().r_f64();
    if (algebra_r - r).abs() <= 1e-12 * r.abs().max(1.0) {
        Ok(())
    } else {
        Err(ReprError::ContextMismatch { spec_r: r, algebra_r })
    }
}

/// `Ψ(f) = Σ Ψ(a±)^{|r|} U^s ξ(ε)`
pub fn rep_evaluate(f: &NormalForm, m: &ReprMatrices) -> Result<CMatrix, ReprError> {
    contexts_match(f, m.spec.r)?;
    let n = m.dim();
    let (max_r, _) = f.degree();
    let mut ap_pows = vec![CMatrix::identity(n, n)];
    let mut am_pows = vec![CMatrix::identity(n, n)];
    for p in 1..=max_r as usize {
        ap_pows.push(&ap_pows[p - 1] * &m.ap);
        am_pows.push(&am_pows[p - 1] * &m.am);
    }
    let diag: Vec<Complex64> = m.u.diagonal().iter().copied().collect();
    let mut out = CMatrix::zeros(n, n);
    for (&(r, s), coeff) in f.terms() {
        let ladder = if r >= 0 { &ap_pows[r as usize] } else { &am_pows[(-r) as usize] };
        let c = coeff.eval(m.eps);
        // right-multiplying by the diagonal U^s scales column j by u_j^s
        for j in 0..n {
            let scale = c * diag[j].powi(s as i32);
            for i in 0..n {
                out[(i, j)] += ladder[(i, j)] * scale;
            }
        }
    }
    Ok(out)
}

/// Distinct `U` eigenvalues and a connected ladder graph.
pub fn check_irreducible(m: &ReprMatrices) -> bool {
    let n = m.dim();
    let diag = m.u.diagonal();
    for i in 0..n {
        for j in (i + 1)..n {
            if (diag[i] - diag[j]).norm() < EIGEN_SEPARATION {
                return false;
            }
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && (m.ap[(i, j)].norm() > 1e-12 || m.am[(i, j)].norm() > 1e-12) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let root = find(&mut parent, 0);
    (1..n).all(|i| find(&mut parent, i) == root)
}

/// Replaces basis vector `m` by `phases[m]·|m⟩`.
pub fn rephase(m: &ReprMatrices, phases: &[Complex64]) -> ReprMatrices {
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(phases));
    let dd = d.adjoint();
    ReprMatrices {
        u: &dd * &m.u * &d,
        ap: &dd * &m.ap * &d,
        am: &dd * &m.am * &d,
        eps: m.eps,
        spec: m.spec.clone(),
    }
}

/// `ν = C_prod / |C_prod|` for a cyclic ladder (`None` if it does not close).
pub fn t2_wrap_phase(m: &ReprMatrices) -> Option<Complex64> {
    let n = m.dim();
    let prod = (1..n).fold(m.am[(n - 1, 0)], |acc, j| acc * m.am[(j - 1, j)]);
    (prod.norm() > 0.0).then(|| prod / prod.norm())
}

/// Reference fuzzy-sphere matrices (`[x,y] = iεz` cyclic, `x²+y²+z² = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySphere {
    pub n: usize,
    pub eps: f64,
    pub ap: CMatrix,
    pub am: CMatrix,
    pub z: CMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphereResiduals {
    pub comm_xy: f64,
    pub comm_yz: f64,
    pub comm_zx: f64,
    pub casimir: f64,
    pub hermiticity: f64,
}

impl SphereResiduals {
    pub fn max(&self) -> f64 {
        [self.comm_xy, self.comm_yz, self.comm_zx, self.casimir, self.hermiticity]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn build_fuzzy_sphere(n: usize) -> Result<FuzzySphere, ReprError> {
    if n < 2 {
        return Err(ReprError::Domain(format!("fuzzy sphere needs n >= 2, got {n}")));
    }
    let eps = 2.0 / ((n * n - 1) as f64).sqrt();
    let mut ap = CMatrix::zeros(n, n);
    let mut z = CMatrix::zeros(n, n);
    for r in 0..n {
        z[(r, r)] = Complex64::new(eps * (r as f64 - 0.5 * (n as f64 - 1.0)), 0.0);
        if r + 1 < n {
            ap[(r + 1, r)] = Complex64::new(eps * (((n - r - 1) * (r + 1)) as f64).sqrt(), 0.0);
        }
    }
    let am = ap.adjoint();
    Ok(FuzzySphere { n, eps, ap, am, z })
}

impl FuzzySphere {
    pub fn verify(&self) -> SphereResiduals {
        let (x, y) = real_imag_parts(&self.ap, &self.am);
        let z = &self.z;
        let ie = Complex64::new(0.0, self.eps);
        let comm = |a: &CMatrix, b: &CMatrix| a * b - b * a;
        let id = CMatrix::identity(self.n, self.n);
        SphereResiduals {
            comm_xy: (comm(&x, &y) - z * ie).norm(),
            comm_yz: (comm(&y, z) - &x * ie).norm(),
            comm_zx: (comm(z, &x) - &y * ie).norm(),
            casimir: (&x * &x + &y * &y + z * z - id).norm(),
            hermiticity: (&x - x.adjoint()).norm() + (&y - y.adjoint()).norm() + (z - z.adjoint()).norm(),
        }
    }
}

/// Reference finite noncommutative torus `uv = qvu`.
#[derive(Debug, Clone, PartialEq)]
pub struct NcTorus {
    pub n: usize,
    pub k: usize,
    pub q: Complex64,
    pub u: CMatrix,
    pub v: CMatrix,
}

pub fn build_nc_torus(n: usize, k: usize, beta: f64, nu: Complex64) -> Result<NcTorus, ReprError> {
    if n < 2 || k == 0 || n.gcd(&k) != 1 {
        return Err(ReprError::Domain(format!("need n >= 2, k >= 1 and gcd(n, k) = 1, got n = {n}, k = {k}")));
    }
    let step = 2.0 * PI * k as f64 / n as f64;
    let u = CMatrix::from_diagonal(&nalgebra::DVector::from_fn(n, |r, _| {
        Complex64::from_polar(1.0, beta + step * r as f64)
    }));
    let mut v = CMatrix::zeros(n, n);
    for r in 0..n - 1 {
        v[(r + 1, r)] = Complex64::new(1.0, 0.0);
    }
    v[(0, n - 1)] = nu;
    Ok(NcTorus { n, k, q: Complex64::from_polar(1.0, step), u, v })
}

impl NcTorus {
    /// `‖UV − qVU‖_F`
    pub fn commutation_residual(&self) -> f64 {
        (&self.u * &self.v - (&self.v * &self.u) * self.q).norm()
    }

    pub fn unitarity_residual(&self) -> f64 {
        let id = CMatrix::identity(self.n, self.n);
        (&self.u * self.u.adjoint() - &id).norm() + (&self.v * self.v.adjoint() - &id).norm()
    }
}
