//! The algebra A(R) stored as unique normal forms
//! `Σ a₊^r u^s ξ(ε) + Σ a₋^r u^s ξ(ε)`.
//!
//! A term key `(r, s)` encodes `a₊^r` for `r > 0`, `a₋^{-r}` for `r < 0`,
//! and `u^s` (negative `s` meaning powers of `u⁻¹ = u†`). The product is the
//! rewriting engine: it commutes winding factors to the right of ladder
//! factors and contracts opposite ladder pairs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::epsring::{ComplexRational, EpsError, EpsScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands belong to different algebras (R = {0} vs R = {1})")]
    ContextMismatch(BigRational, BigRational),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("commutator is not O(eps): {0}")]
    NotDivisible(#[from] EpsError),
}

/// Identifies one algebra A(R) of the family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraContext {
    r: BigRational,
}

impl AlgebraContext {
    pub fn new(r: BigRational) -> Self {
        Self { r }
    }

    pub fn from_i64(r: i64) -> Self {
        Self::new(BigRational::from_integer(r.into()))
    }

    pub fn r(&self) -> &BigRational {
        &self.r
    }

    pub fn r_f64(&self) -> f64 {
        self.r.to_f64().unwrap_or(f64::NAN)
    }

    /// `a₊a₋ = ½(1−iε)u + ½(1+iε)u⁻¹ + R` as winding terms.
    fn ap_am(&self) -> [(i64, EpsScalar); 3] {
        let half = ComplexRational::ratio(1, 2);
        let half_i = ComplexRational::new(BigRational::zero(), half.re.clone());
        let plus = EpsScalar::new(vec![half.clone(), half_i.clone()], 0);
        let minus = EpsScalar::new(vec![half, -&half_i], 0);
        [(1, minus), (-1, plus), (0, EpsScalar::from_rational(self.r.clone()))]
    }

    /// `a₋a₊ = ½(1+iε)u + ½(1−iε)u⁻¹ + R` as winding terms.
    fn am_ap(&self) -> [(i64, EpsScalar); 3] {
        let [(_, minus), (_, plus), r] = self.ap_am();
        [(1, plus), (-1, minus), r]
    }
}

/// Named elements accepted by [`NormalForm::generator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    X,
    Y,
    Z,
    W,
    U,
    UInv,
    Ap,
    Am,
    Eps,
    One,
}

impl FromStr for Generator {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "x" => Generator::X,
            "y" => Generator::Y,
            "z" => Generator::Z,
            "w" => Generator::W,
            "u" => Generator::U,
            "u_inv" | "ud" => Generator::UInv,
            "ap" => Generator::Ap,
            "am" => Generator::Am,
            "eps" => Generator::Eps,
            "one" => Generator::One,
            other => return Err(AlgebraError::UnknownGenerator(other.to_string())),
        })
    }
}

pub type TermKey = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    ctx: AlgebraContext,
    terms: BTreeMap<TermKey, EpsScalar>,
}

fn accumulate(terms: &mut BTreeMap<TermKey, EpsScalar>, key: TermKey, value: EpsScalar) {
    if value.is_zero() {
        return;
    }
    match terms.get_mut(&key) {
        Some(existing) => {
            let sum = &*existing + &value;
            if sum.is_zero() {
                terms.remove(&key);
            } else {
                *existing = sum;
            }
        }
        None => {
            terms.insert(key, value);
        }
    }
}

type LadderExpansion = Rc<Vec<(TermKey, EpsScalar)>>;

/// Memoizes ladder contractions and phases during one product.
struct Reducer<'a> {
    ctx: &'a AlgebraContext,
    ladder: HashMap<(i64, i64), LadderExpansion>,
    phases: HashMap<i64, EpsScalar>,
}

impl<'a> Reducer<'a> {
    fn new(ctx: &'a AlgebraContext) -> Self {
        Self { ctx, ladder: HashMap::new(), phases: HashMap::new() }
    }

    fn phase(&mut self, k: i64) -> EpsScalar {
        self.phases.entry(k).or_insert_with(|| EpsScalar::exp_i_alpha_pow(k)).clone()
    }

    /// `L^{r1} L^{r2}` expanded as `Σ L^r u^t c`.
    fn ladder_product(&mut self, r1: i64, r2: i64) -> LadderExpansion {
        if let Some(hit) = self.ladder.get(&(r1, r2)) {
            return Rc::clone(hit);
        }
        let result = if r1 == 0 || r2 == 0 || r1.signum() == r2.signum() {
            vec![((r1 + r2, 0), EpsScalar::one())]
        } else {
            // Contract the innermost pair, then move the emitted u^s past the
            // remaining ladder factors on the right: u^s L^k = L^k u^s e^{iksα}.
            let (contraction, rest) = if r1 > 0 {
                (self.ctx.ap_am(), r2 + 1)
            } else {
                (self.ctx.am_ap(), r2 - 1)
            };
            let inner = self.ladder_product(r1 - r1.signum(), rest);
            let mut acc = BTreeMap::new();
            for (s, coeff) in contraction.iter() {
                let moved = coeff * &self.phase(rest * s);
                for ((r, t), c) in inner.iter() {
                    accumulate(&mut acc, (*r, t + s), c * &moved);
                }
            }
            acc.into_iter().collect()
        };
        let result = Rc::new(result);
        self.ladder.insert((r1, r2), Rc::clone(&result));
        result
    }

    /// `(L^{r1} u^{s1} ξ1)(L^{r2} u^{s2} ξ2)` accumulated into `out`.
    fn monomial_product(
        &mut self,
        (r1, s1): TermKey,
        c1: &EpsScalar,
        (r2, s2): TermKey,
        c2: &EpsScalar,
        out: &mut BTreeMap<TermKey, EpsScalar>,
    ) {
        let scalar = &(c1 * c2) * &self.phase(r2 * s1);
        for ((r, t), c) in self.ladder_product(r1, r2).iter() {
            accumulate(out, (*r, t + s1 + s2), c * &scalar);
        }
    }
}

impl NormalForm {
    pub fn zero(ctx: &AlgebraContext) -> Self {
        Self { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &AlgebraContext) -> Self {
        Self::scalar(ctx, EpsScalar::one())
    }

    pub fn scalar(ctx: &AlgebraContext, value: EpsScalar) -> Self {
        Self::monomial(ctx, 0, 0, value)
    }

    pub fn monomial(ctx: &AlgebraContext, r: i64, s: i64, coeff: EpsScalar) -> Self {
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, (r, s), coeff);
        Self { ctx: ctx.clone(), terms }
    }

    pub fn from_terms(ctx: &AlgebraContext, terms: impl IntoIterator<Item = (TermKey, EpsScalar)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, v) in terms {
            accumulate(&mut map, k, v);
        }
        Self { ctx: ctx.clone(), terms: map }
    }

    pub fn generator(name: &str, ctx: &AlgebraContext) -> Result<Self, AlgebraError> {
        Ok(Self::from_generator(name.parse()?, ctx))
    }

    pub fn from_generator(g: Generator, ctx: &AlgebraContext) -> Self {
        let half = EpsScalar::constant(ComplexRational::ratio(1, 2));
        let half_i = &half * &EpsScalar::i();
        match g {
            Generator::One => Self::one(ctx),
            Generator::Eps => Self::scalar(ctx, EpsScalar::eps()),
            Generator::Ap => Self::monomial(ctx, 1, 0, EpsScalar::one()),
            Generator::Am => Self::monomial(ctx, -1, 0, EpsScalar::one()),
            Generator::U => Self::monomial(ctx, 0, 1, EpsScalar::one()),
            Generator::UInv => Self::monomial(ctx, 0, -1, EpsScalar::one()),
            Generator::X => Self::from_terms(ctx, [((1, 0), half.clone()), ((-1, 0), half)]),
            // y = (a₊ − a₋)/(2i)
            Generator::Y => Self::from_terms(ctx, [((1, 0), -&half_i), ((-1, 0), half_i)]),
            Generator::W => Self::from_terms(ctx, [((0, 1), half.clone()), ((0, -1), half)]),
            // z = (u − u⁻¹)/(2i)
            Generator::Z => Self::from_terms(ctx, [((0, 1), -&half_i), ((0, -1), half_i)]),
        }
    }

    pub fn context(&self) -> &AlgebraContext {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<TermKey, EpsScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_context(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch(self.ctx.r.clone(), other.ctx.r.clone()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_context(other)?;
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            accumulate(&mut terms, *k, v.clone());
        }
        Ok(Self { ctx: self.ctx.clone(), terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_context(other)?;
        let mut reducer = Reducer::new(&self.ctx);
        let mut out = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                reducer.monomial_product(*k1, c1, *k2, c2, &mut out);
            }
        }
        Ok(Self { ctx: self.ctx.clone(), terms: out })
    }

    /// `[f, g] = fg − gf`
    pub fn commutator(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    pub fn scale(&self, c: &EpsScalar) -> Self {
        Self::from_terms(&self.ctx, self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `(L^r u^s ξ)† = ξ̄ u^{-s} L^{-r} = L^{-r} u^{-s} e^{irsα} ξ̄`
    pub fn adjoint(&self) -> Self {
        Self::from_terms(
            &self.ctx,
            self.terms.iter().map(|(&(r, s), c)| ((-r, -s), &c.conj() * &EpsScalar::exp_i_alpha_pow(r * s))),
        )
    }

    /// The commutative image: every coefficient evaluated at ε = 0.
    pub fn pi(&self) -> CommutativePoly {
        CommutativePoly::from_terms(
            self.ctx.r.clone(),
            self.terms.iter().map(|(k, c)| (*k, c.value_at_zero())),
        )
    }

    /// `{π(f), π(g)} = π((1/iε)[f, g])`
    pub fn poisson(&self, other: &Self) -> Result<CommutativePoly, AlgebraError> {
        let comm = self.commutator(other)?;
        let minus_i = EpsScalar::constant(ComplexRational::from_i64(0, -1));
        let mut out = BTreeMap::new();
        for (k, c) in comm.terms() {
            out.insert(*k, (&c.div_eps()? * &minus_i).value_at_zero());
        }
        Ok(CommutativePoly::from_terms(self.ctx.r.clone(), out))
    }

    pub fn eval_numeric(&self, eps: f64) -> BTreeMap<TermKey, Complex64> {
        self.terms.iter().map(|(k, c)| (*k, c.eval(eps))).collect()
    }

    /// Largest `|r|` and `|s|` present.
    pub fn degree(&self) -> (i64, i64) {
        self.terms
            .keys()
            .fold((0, 0), |(dr, ds), (r, s)| (dr.max(r.abs()), ds.max(s.abs())))
    }
}

fn expect_ok<T>(res: Result<T, AlgebraError>) -> T {
    res.unwrap_or_else(|e| panic!("{e}"))
}

/// Panics on context mismatch; use [`NormalForm::checked_add`] to handle it.
impl Add for &NormalForm {
    type Output = NormalForm;
    fn add(self, rhs: &NormalForm) -> NormalForm {
        expect_ok(self.checked_add(rhs))
    }
}

impl Sub for &NormalForm {
    type Output = NormalForm;
    fn sub(self, rhs: &NormalForm) -> NormalForm {
        expect_ok(self.checked_sub(rhs))
    }
}

/// Panics on context mismatch; use [`NormalForm::checked_mul`] to handle it.
impl Mul for &NormalForm {
    type Output = NormalForm;
    fn mul(self, rhs: &NormalForm) -> NormalForm {
        expect_ok(self.checked_mul(rhs))
    }
}

impl Neg for &NormalForm {
    type Output = NormalForm;
    fn neg(self) -> NormalForm {
        NormalForm {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl Add for NormalForm {
    type Output = NormalForm;
    fn add(self, rhs: NormalForm) -> NormalForm {
        &self + &rhs
    }
}

impl Sub for NormalForm {
    type Output = NormalForm;
    fn sub(self, rhs: NormalForm) -> NormalForm {
        &self - &rhs
    }
}

impl Mul for NormalForm {
    type Output = NormalForm;
    fn mul(self, rhs: NormalForm) -> NormalForm {
        &self * &rhs
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, (r, s): TermKey) -> fmt::Result {
    let mut parts = Vec::new();
    match r {
        0 => {}
        1 => parts.push("ap".to_string()),
        -1 => parts.push("am".to_string()),
        r if r > 0 => parts.push(format!("ap^{r}")),
        r => parts.push(format!("am^{}", -r)),
    }
    match s {
        0 => {}
        1 => parts.push("u".to_string()),
        -1 => parts.push("ud".to_string()),
        s if s > 0 => parts.push(format!("u^{s}")),
        s => parts.push(format!("ud^{}", -s)),
    }
    write!(f, "{}", parts.join("*"))
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, c: &str) -> fmt::Result {
    if c.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '^') {
        write!(f, "*{c}")
    } else {
        write!(f, "*({c})")
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (key, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if *key == (0, 0) {
                write!(f, "{c}")?;
            } else if c.is_one() {
                fmt_monomial(f, *key)?;
            } else {
                fmt_monomial(f, *key)?;
                write_coefficient(f, &c.to_string())?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for CommutativePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (key, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if *key == (0, 0) {
                write!(f, "{c}")?;
            } else if *c == ComplexRational::one() {
                fmt_monomial(f, *key)?;
            } else {
                fmt_monomial(f, *key)?;
                write_coefficient(f, &c.to_string())?;
            }
        }
        Ok(())
    }
}

/// An element of the commutative polynomial algebra on M(R), in the same
/// `(r, s)` monomial basis with ε set to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativePoly {
    r: BigRational,
    terms: BTreeMap<TermKey, ComplexRational>,
}

impl CommutativePoly {
    pub fn from_terms(r: BigRational, terms: impl IntoIterator<Item = (TermKey, ComplexRational)>) -> Self {
        let mut map: BTreeMap<TermKey, ComplexRational> = BTreeMap::new();
        for (k, v) in terms {
            let sum = match map.remove(&k) {
                Some(old) => &old + &v,
                None => v,
            };
            if !sum.is_zero() {
                map.insert(k, sum);
            }
        }
        Self { r, terms: map }
    }

    pub fn zero(r: BigRational) -> Self {
        Self { r, terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> &BTreeMap<TermKey, ComplexRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(
            self.r.clone(),
            self.terms.iter().chain(other.terms.iter()).map(|(k, v)| (*k, v.clone())),
        )
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        Self::from_terms(self.r.clone(), self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&ComplexRational::from_i64(-1, 0)))
    }

    /// Pointwise complex conjugate on M(R): `a₊ ↔ a₋`, `u ↦ u⁻¹`.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.r.clone(), self.terms.iter().map(|(&(r, s), v)| ((-r, -s), v.conj())))
    }

    /// Commutative product, using `a₊a₋ = (u + u⁻¹)/2 + R` on the variety.
    pub fn mul(&self, other: &Self) -> Self {
        let half = ComplexRational::ratio(1, 2);
        let contraction = [(1i64, half.clone()), (-1, half), (0, ComplexRational::real(self.r.clone()))];
        let mut out = Vec::new();
        for (&(r1, s1), c1) in &self.terms {
            for (&(r2, s2), c2) in &other.terms {
                let pairs = if r1.signum() * r2.signum() < 0 { r1.abs().min(r2.abs()) } else { 0 };
                // (a₊a₋)^pairs as a Laurent polynomial in u
                let mut laurent: BTreeMap<i64, ComplexRational> = BTreeMap::from([(0, ComplexRational::one())]);
                for _ in 0..pairs {
                    let mut next: BTreeMap<i64, ComplexRational> = BTreeMap::new();
                    for (t, a) in &laurent {
                        for (dt, b) in &contraction {
                            let e = next.entry(t + dt).or_default();
                            *e = &*e + &(a * b);
                        }
                    }
                    laurent = next;
                }
                let c = c1 * c2;
                for (t, a) in laurent {
                    out.push(((r1 + r2, s1 + s2 + t), &a * &c));
                }
            }
        }
        Self::from_terms(self.r.clone(), out)
    }

    /// Evaluates with `a₊ ↦ ap`, `a₋ ↦ am`, `u ↦ u`.
    pub fn eval_at(&self, ap: Complex64, am: Complex64, u: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(r, s), c)| {
                let ladder = if r >= 0 { ap.powi(r as i32) } else { am.powi((-r) as i32) };
                c.to_complex64() * ladder * u.powi(s as i32)
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ctx(num: i64, den: i64) -> AlgebraContext {
        AlgebraContext::new(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn g(name: &str, c: &AlgebraContext) -> NormalForm {
        NormalForm::generator(name, c).unwrap()
    }

    fn half() -> ComplexRational {
        ComplexRational::ratio(1, 2)
    }

    fn half_i() -> ComplexRational {
        ComplexRational::new(BigRational::zero(), half().re)
    }

    #[test]
    fn generator_tables() {
        let c = ctx(1, 3);
        let w = g("w", &c);
        assert_eq!(w.terms().len(), 2);
        assert_eq!(w.terms()[&(0, 1)], EpsScalar::constant(half()));
        assert_eq!(w.terms()[&(0, -1)], EpsScalar::constant(half()));
        // 1/(2i) = −i/2
        let z = g("z", &c);
        assert_eq!(z.terms()[&(0, 1)], EpsScalar::constant(-&half_i()));
        assert_eq!(z.terms()[&(0, -1)], EpsScalar::constant(half_i()));
        let ap = g("ap", &c);
        assert_eq!(ap.terms().len(), 1);
        assert!(ap.terms()[&(1, 0)].is_one());
        assert!(matches!(NormalForm::generator("q", &c), Err(AlgebraError::UnknownGenerator(_))));
    }

    #[test]
    fn am_ap_contraction() {
        let c = ctx(-2, 7);
        let prod = &g("am", &c) * &g("ap", &c);
        let expected = NormalForm::from_terms(
            &c,
            [
                ((0, 1), EpsScalar::new(vec![half(), half_i()], 0)),
                ((0, -1), EpsScalar::new(vec![half(), -&half_i()], 0)),
                ((0, 0), EpsScalar::from_rational(c.r().clone())),
            ],
        );
        assert_eq!(prod, expected);
    }

    #[test]
    fn u_past_ap_picks_up_phase() {
        let c = ctx(1, 1);
        let prod = &g("u", &c) * &g("ap", &c);
        assert_eq!(prod, NormalForm::monomial(&c, 1, 1, EpsScalar::exp_i_alpha()));
    }

    #[test]
    fn xy_commutator() {
        let c = ctx(3, 2);
        let ieps = NormalForm::scalar(&c, &EpsScalar::i() * &EpsScalar::eps());
        let lhs = g("x", &c).commutator(&g("y", &c)).unwrap();
        assert!((&lhs - &(&ieps * &g("z", &c))).is_zero());
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = g("x", &ctx(1, 2));
        let b = g("x", &ctx(1, 3));
        assert!(matches!(a.checked_mul(&b), Err(AlgebraError::ContextMismatch(..))));
        assert!(matches!(a.checked_add(&b), Err(AlgebraError::ContextMismatch(..))));
        assert!(matches!(a.poisson(&b), Err(AlgebraError::ContextMismatch(..))));
    }

    #[test]
    fn adjoint_examples() {
        let c = ctx(0, 1);
        assert_eq!(g("ap", &c).adjoint(), g("am", &c));
        assert_eq!(g("u", &c).adjoint(), NormalForm::monomial(&c, 0, -1, EpsScalar::one()));
        for name in ["x", "y", "z", "w"] {
            assert_eq!(g(name, &c).adjoint(), g(name, &c), "{name} is self-adjoint");
        }
        let f = &g("u", &c) * &g("ap", &c);
        let g2 = &g("am", &c) * &g("ap", &c).pow(2);
        assert_eq!((&f * &g2).adjoint(), &g2.adjoint() * &f.adjoint());
    }

    #[test]
    fn pi_examples() {
        let c = ctx(1, 5);
        let ez = &NormalForm::scalar(&c, EpsScalar::eps()) * &g("z", &c);
        assert!(ez.pi().is_zero());
        let p = (&g("ap", &c) * &g("am", &c)).pi();
        let expected = CommutativePoly::from_terms(
            c.r().clone(),
            [((0, 1), half()), ((0, -1), half()), ((0, 0), ComplexRational::real(c.r().clone()))],
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn poisson_examples() {
        let c = ctx(1, 2);
        let (x, y, z, w) = (g("x", &c), g("y", &c), g("z", &c), g("w", &c));
        assert_eq!(x.poisson(&y).unwrap(), z.pi());
        let two_wy = (&w * &y).pi().scale(&ComplexRational::from_i64(2, 0));
        assert_eq!(z.poisson(&x).unwrap(), two_wy);
        let two_wx = (&w * &x).pi().scale(&ComplexRational::from_i64(2, 0));
        assert_eq!(y.poisson(&z).unwrap(), two_wx);
        let f = &(&x * &z) + &g("u", &c);
        assert!(f.poisson(&f).unwrap().is_zero());
    }

    #[test]
    fn numeric_evaluation() {
        let c = ctx(0, 1);
        let e = NormalForm::scalar(&c, EpsScalar::eps()).eval_numeric(0.3);
        assert_eq!(e.len(), 1);
        assert!((e[&(0, 0)] - Complex64::new(0.3, 0.0)).norm() < 1e-15);
        let ua = (&g("u", &c) * &g("ap", &c)).eval_numeric(1.0);
        assert!((ua[&(1, 1)] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let f = &(&g("x", &c) * &g("y", &c)) * &g("w", &c);
        let at_zero = f.eval_numeric(0.0);
        for (k, v) in f.pi().terms() {
            assert!((at_zero[k] - v.to_complex64()).norm() < 1e-15);
        }
    }

    #[test]
    fn ladder_pairs_contract_fully() {
        let c = ctx(5, 4);
        let ap3 = g("ap", &c).pow(3);
        let am2 = g("am", &c).pow(2);
        let prod = &ap3 * &am2;
        assert!(prod.terms().keys().all(|(r, _)| *r == 1));
        let prod = &am2 * &ap3;
        assert!(prod.terms().keys().all(|(r, _)| *r == 1));
        let prod = &g("am", &c).pow(3) * &g("ap", &c).pow(3);
        assert!(prod.terms().keys().all(|(r, _)| *r == 0));
        assert_eq!(prod.degree().1, 3);
    }

    #[test]
    fn display() {
        let c = ctx(0, 1);
        assert_eq!(NormalForm::zero(&c).to_string(), "0");
        assert_eq!((&g("ap", &c) * &g("u", &c)).to_string(), "ap*u");
        assert_eq!(NormalForm::monomial(&c, -2, -1, EpsScalar::eps()).to_string(), "am^2*ud*eps");
    }
}
