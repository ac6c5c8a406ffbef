//! Exact scalars of the form `p(ε) / (1+ε²)^m` with complex-rational
//! coefficients.
//!
//! Every value is kept canonical: the numerator has no trailing zero
//! coefficients and, whenever `m > 0`, is not divisible by `1+ε²`. Equality
//! is therefore structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EpsError {
    /// Division by ε was requested but the constant term is nonzero.
    #[error("scalar is not divisible by eps (constant term {0})")]
    NotDivisible(ComplexRational),
}

/// Gaussian-rational number `re + i·im`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ComplexRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        Self {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    /// `num/den` as a real value. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(1, 0)
    }

    pub fn i() -> Self {
        Self::from_i64(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(Self { re: &self.re / &norm, im: -(&self.im / &norm) })
    }
}

impl Add for &ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-self.im.clone()).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}*i", self.im)
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({} {} {}*i)", self.re, sign, self.im.abs())
            }
        }
    }
}

type Poly = Vec<ComplexRational>;

fn poly_trim(p: &mut Poly) {
    while p.last().is_some_and(ComplexRational::is_zero) {
        p.pop();
    }
}

fn poly_add(a: &[ComplexRational], b: &[ComplexRational]) -> Poly {
    let len = a.len().max(b.len());
    let zero = ComplexRational::zero();
    let mut out: Poly = (0..len)
        .map(|k| a.get(k).unwrap_or(&zero) + b.get(k).unwrap_or(&zero))
        .collect();
    poly_trim(&mut out);
    out
}

fn poly_mul(a: &[ComplexRational], b: &[ComplexRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ComplexRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    poly_trim(&mut out);
    out
}

/// `p · (1+ε²)`
fn poly_mul_one_plus_eps_sq(p: &[ComplexRational]) -> Poly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ComplexRational::zero(); p.len() + 2];
    for (k, c) in p.iter().enumerate() {
        out[k] = &out[k] + c;
        out[k + 2] = &out[k + 2] + c;
    }
    poly_trim(&mut out);
    out
}

/// Exact quotient `p / (1+ε²)` if the division leaves no remainder.
fn poly_div_one_plus_eps_sq(p: &[ComplexRational]) -> Option<Poly> {
    if p.len() < 3 {
        return None;
    }
    let mut rem = p.to_vec();
    let mut quot = vec![ComplexRational::zero(); p.len() - 2];
    for k in (2..rem.len()).rev() {
        let lead = std::mem::take(&mut rem[k]);
        rem[k - 2] = &rem[k - 2] - &lead;
        quot[k - 2] = lead;
    }
    if rem[0].is_zero() && rem[1].is_zero() {
        poly_trim(&mut quot);
        Some(quot)
    } else {
        None
    }
}

/// Exact scalar `num(ε) / (1+ε²)^denom_pow`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpsScalar {
    num: Vec<ComplexRational>,
    denom_pow: u32,
}

impl Default for EpsScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl EpsScalar {
    /// Builds a canonical scalar from raw numerator coefficients (index = power
    /// of ε) and denominator power.
    pub fn new(num: Vec<ComplexRational>, denom_pow: u32) -> Self {
        let mut s = Self { num, denom_pow };
        s.canonicalize();
        s
    }

    pub fn zero() -> Self {
        Self { num: Vec::new(), denom_pow: 0 }
    }

    pub fn one() -> Self {
        Self::constant(ComplexRational::one())
    }

    pub fn constant(c: ComplexRational) -> Self {
        Self::new(vec![c], 0)
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::constant(ComplexRational::real(r))
    }

    pub fn from_i64(v: i64) -> Self {
        Self::constant(ComplexRational::from_i64(v, 0))
    }

    pub fn i() -> Self {
        Self::constant(ComplexRational::i())
    }

    /// The central element ε.
    pub fn eps() -> Self {
        Self::new(vec![ComplexRational::zero(), ComplexRational::one()], 0)
    }

    /// `(1+ε²)^{-1}`
    pub fn inv_one_plus_eps_sq() -> Self {
        Self::new(vec![ComplexRational::one()], 1)
    }

    /// `e^{iα} = (1+iε)/(1−iε) = (1 − ε² + 2iε)/(1+ε²)` with `ε = tan(α/2)`.
    pub fn exp_i_alpha() -> Self {
        Self::new(
            vec![
                ComplexRational::one(),
                ComplexRational::from_i64(0, 2),
                ComplexRational::from_i64(-1, 0),
            ],
            1,
        )
    }

    /// `e^{ikα}` for any integer `k`.
    pub fn exp_i_alpha_pow(k: i64) -> Self {
        let base = if k >= 0 { Self::exp_i_alpha() } else { Self::exp_i_alpha().conj() };
        base.pow(k.unsigned_abs())
    }

    pub fn numerator(&self) -> &[ComplexRational] {
        &self.num
    }

    pub fn denom_pow(&self) -> u32 {
        self.denom_pow
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.denom_pow == 0 && self.num.len() == 1 && self.num[0] == ComplexRational::one()
    }

    fn canonicalize(&mut self) {
        poly_trim(&mut self.num);
        if self.num.is_empty() {
            self.denom_pow = 0;
            return;
        }
        while self.denom_pow > 0 {
            match poly_div_one_plus_eps_sq(&self.num) {
                Some(q) => {
                    self.num = q;
                    self.denom_pow -= 1;
                }
                None => break,
            }
        }
    }

    /// Numerator lifted to denominator `(1+ε²)^target`; `target >= denom_pow`.
    fn numerator_at(&self, target: u32) -> Poly {
        let mut p = self.num.clone();
        for _ in self.denom_pow..target {
            p = poly_mul_one_plus_eps_sq(&p);
        }
        p
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies every coefficient by a complex rational.
    pub fn scale(&self, c: &ComplexRational) -> Self {
        Self::new(self.num.iter().map(|a| a * c).collect(), self.denom_pow)
    }

    /// Exact quotient `a / ε`.
    pub fn div_eps(&self) -> Result<Self, EpsError> {
        match self.num.first() {
            None => Ok(Self::zero()),
            Some(c0) if !c0.is_zero() => Err(EpsError::NotDivisible(c0.clone())),
            Some(_) => Ok(Self::new(self.num[1..].to_vec(), self.denom_pow)),
        }
    }

    /// Coefficient-wise complex conjugate; ε is self-adjoint.
    pub fn conj(&self) -> Self {
        Self { num: self.num.iter().map(ComplexRational::conj).collect(), denom_pow: self.denom_pow }
    }

    /// Exact value at ε = 0.
    pub fn value_at_zero(&self) -> ComplexRational {
        self.num.first().cloned().unwrap_or_default()
    }

    pub fn eval(&self, eps: f64) -> Complex64 {
        let numer = self
            .num
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * eps + c.to_complex64());
        let denom = (1.0 + eps * eps).powi(self.denom_pow as i32);
        numer / denom
    }

    /// Inverse when the numerator is `c·(1+ε²)^j` with `c ≠ 0`; those are the
    /// only units of the ring.
    pub fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.num.clone();
        let mut j = 0u32;
        while p.len() > 1 {
            p = poly_div_one_plus_eps_sq(&p)?;
            j += 1;
        }
        let c_inv = p[0].inverse()?;
        // 1 / (c (1+ε²)^j / (1+ε²)^m) = c⁻¹ (1+ε²)^m / (1+ε²)^j
        if self.denom_pow >= j {
            let lifted = Self::new(vec![c_inv], 0).numerator_at(self.denom_pow - j);
            Some(Self::new(lifted, 0))
        } else {
            Some(Self::new(vec![c_inv], j - self.denom_pow))
        }
    }
}

impl Add for &EpsScalar {
    type Output = EpsScalar;
    fn add(self, rhs: &EpsScalar) -> EpsScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let m = self.denom_pow.max(rhs.denom_pow);
        EpsScalar::new(poly_add(&self.numerator_at(m), &rhs.numerator_at(m)), m)
    }
}

impl Sub for &EpsScalar {
    type Output = EpsScalar;
    fn sub(self, rhs: &EpsScalar) -> EpsScalar {
        self + &(-rhs)
    }
}

impl Mul for &EpsScalar {
    type Output = EpsScalar;
    fn mul(self, rhs: &EpsScalar) -> EpsScalar {
        if self.is_zero() || rhs.is_zero() {
            return EpsScalar::zero();
        }
        EpsScalar::new(poly_mul(&self.num, &rhs.num), self.denom_pow + rhs.denom_pow)
    }
}

impl Neg for &EpsScalar {
    type Output = EpsScalar;
    fn neg(self) -> EpsScalar {
        EpsScalar { num: self.num.iter().map(|c| -c).collect(), denom_pow: self.denom_pow }
    }
}

macro_rules! forward_owned_binop {
    ($t:ty, $tr:ident, $method:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $method(self, rhs: $t) -> $t {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $method(self, rhs: &$t) -> $t {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(EpsScalar, Add, add);
forward_owned_binop!(EpsScalar, Sub, sub);
forward_owned_binop!(EpsScalar, Mul, mul);
forward_owned_binop!(ComplexRational, Add, add);
forward_owned_binop!(ComplexRational, Sub, sub);
forward_owned_binop!(ComplexRational, Mul, mul);

impl Neg for EpsScalar {
    type Output = EpsScalar;
    fn neg(self) -> EpsScalar {
        -&self
    }
}

impl fmt::Display for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                _ => {
                    let power = if k == 1 { "eps".to_string() } else { format!("eps^{k}") };
                    if c.is_one_value() {
                        power
                    } else {
                        format!("{c}*{power}")
                    }
                }
            })
            .collect();
        let numer = terms.join(" + ");
        match self.denom_pow {
            0 if terms.len() == 1 => write!(f, "{numer}"),
            0 => write!(f, "({numer})"),
            1 => write!(f, "({numer})/(1+eps^2)"),
            m => write!(f, "({numer})/(1+eps^2)^{m}"),
        }
    }
}

impl ComplexRational {
    fn is_one_value(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }
}

/// Parses a plain decimal literal (`-0.557`, `3`, `1.25e-2` is not accepted)
/// into an exact rational.
pub fn parse_decimal(src: &str) -> Option<BigRational> {
    let s = src.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    if body.is_empty() {
        return None;
    }
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = BigRational::new(numer, denom);
    Some(if neg { -r } else { r })
}
