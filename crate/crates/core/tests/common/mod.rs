#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;
use spheretorus::classifier::enumerate_s2_nonminimal;
use spheretorus::representations::{build, Family, ReprMatrices, ReprSpec};
use spheretorus::{AlgebraContext, ComplexRational, EpsScalar, NormalForm};

pub fn ctx(num: i64, den: i64) -> AlgebraContext {
    AlgebraContext::new(BigRational::new(num.into(), den.into()))
}

pub fn scalar_from(coeffs: &[(i64, i64)], denom_pow: u32) -> EpsScalar {
    EpsScalar::new(coeffs.iter().map(|&(re, im)| ComplexRational::from_i64(re, im)).collect(), denom_pow)
}

pub fn arb_scalar() -> impl Strategy<Value = EpsScalar> {
    (prop::collection::vec((-4i64..=4, -4i64..=4), 1..4), 0u32..3).prop_map(|(c, m)| scalar_from(&c, m))
}

pub fn arb_monomial(ctx: AlgebraContext) -> impl Strategy<Value = NormalForm> {
    (-3i64..=3, -3i64..=3, arb_scalar()).prop_map(move |(r, s, c)| NormalForm::monomial(&ctx, r, s, c))
}

pub fn arb_element(ctx: AlgebraContext) -> impl Strategy<Value = NormalForm> {
    prop::collection::vec((-3i64..=3, -3i64..=3, arb_scalar()), 1..4)
        .prop_map(move |terms| NormalForm::from_terms(&ctx, terms.into_iter().map(|(r, s, c)| ((r, s), c))))
}

pub fn random_scalar<R: Rng>(rng: &mut R) -> EpsScalar {
    let len = rng.gen_range(1..4);
    let coeffs: Vec<(i64, i64)> = (0..len).map(|_| (rng.gen_range(-4..=4), rng.gen_range(-4..=4))).collect();
    scalar_from(&coeffs, rng.gen_range(0..3))
}

pub fn random_monomial<R: Rng>(rng: &mut R, ctx: &AlgebraContext) -> NormalForm {
    NormalForm::monomial(ctx, rng.gen_range(-3..=3), rng.gen_range(-3..=3), random_scalar(rng))
}

pub fn random_element<R: Rng>(rng: &mut R, ctx: &AlgebraContext) -> NormalForm {
    let terms = rng.gen_range(1..4);
    NormalForm::from_terms(
        ctx,
        (0..terms).map(|_| ((rng.gen_range(-3..=3), rng.gen_range(-3..=3)), random_scalar(rng))),
    )
}

/// Representations paired with the exact context they represent.
pub fn bridge_representations() -> Vec<(AlgebraContext, ReprMatrices)> {
    let s2min = |num: i64, den: i64, n: usize| {
        let rec = spheretorus::classifier::solve_minimal_s2(num as f64 / den as f64, n);
        (ctx(num, den), build(&rec.spec()).expect("minimal S2"))
    };
    let nonmin = enumerate_s2_nonminimal(1.97, 11)
        .into_iter()
        .find(|r| r.exists && r.k == Some(3))
        .expect("branch A solution");
    vec![
        s2min(1, 2, 5),
        s2min(-1, 2, 8),
        (ctx(197, 100), build(&nonmin.spec()).expect("non-minimal S2")),
        (ctx(3, 1), build(&ReprSpec::t2_finite(3.0, 3, 1, PI, Complex64::new(1.0, 0.0))).unwrap()),
        (ctx(4, 1), build(&ReprSpec::t2_finite(4.0, 5, 2, 3.0, Complex64::from_polar(1.0, 0.7))).unwrap()),
    ]
}

pub fn identity_corpus() -> Vec<String> {
    let c = "(1-eps^2)*(1+eps^2)^-1";
    let s = "2*eps*(1+eps^2)^-1";
    let mut out: Vec<String> = [
        "[x,y] - i*eps*z",
        "[y,z] - i*eps*(w*x + x*w)",
        "[z,x] - i*eps*(w*y + y*w)",
        "z^2 + w^2 - 1",
        "x^2 + y^2 - R - w",
        "[z,w]",
        "u*ud - 1",
        "ud*u - 1",
        "ap*am - w - R - eps*z",
        "am*ap - w - R + eps*z",
        "[w,ap] + eps*(z*ap + ap*z)",
        "[w,am] - eps*(z*am + am*z)",
        "ap*am - am*ap - 2*eps*z",
        "u' - ud",
        "ap' - am",
        "x' - x",
        "y' - y",
        "z' - z",
        "w' - w",
        "(x*y)' - y*x",
        "u - w - i*z",
        "ap - x - i*y",
        "(u*ap)' - am*ud",
        "u^-2*u^2 - 1",
        "[eps, x]",
        "[(1+eps^2)^-1, ap*u]",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    out.push(format!("z*ap - ap*({c}*z + {s}*w)"));
    out.push(format!("w*ap - ap*(-{s}*z + {c}*w)"));
    out.push(format!("z*am - am*({c}*z - {s}*w)"));
    out.push(format!("w*am - am*({s}*z + {c}*w)"));
    out.push(format!("u*ap - ap*u*({c} + i*{s})"));
    out.push(format!("u*am - am*u*({c} - i*{s})"));
    out.push(format!("ud*ap - ap*ud*({c} - i*{s})"));
    out.push(format!("ud*am - am*ud*({c} + i*{s})"));
    out
}

pub fn family_is_s2(m: &ReprMatrices) -> bool {
    matches!(m.spec.family, Family::S2Min | Family::S2NonMin)
}
