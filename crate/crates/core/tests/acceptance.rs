//! Acceptance run: one line per criterion, non-zero exit on any failure
//! that is not listed in `KNOWN_UNATTAINABLE`.

mod common;

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spheretorus::classifier::{
    check_s2_candidate, classify_region, enumerate_s2_nonminimal, solve_minimal_s2, t2_beta_window, t2_ineq_holds,
    t2_threshold, FamilyFlags, RegionLabel, WindowKind,
};
use spheretorus::geometry::{chart_p_range, eval_on_chart, poisson_fd, DarbouxPoint};
use spheretorus::representations::{
    build, build_fuzzy_sphere, build_nc_torus, rep_evaluate, verify_relations, CMatrix, ReprSpec,
};
use spheretorus::shell::parser::parse_expr;
use spheretorus::{EpsScalar, NormalForm};

/// Criterion 7 states δ and window values that disagree with
/// `cos(δ/2) = R cos(πk/n)` and with each other by more than the stated
/// tolerance. The check runs as stated and is reported as failing.
const KNOWN_UNATTAINABLE: &[u32] = &[7];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn criterion_1() -> Outcome {
    let (a, ta) = timed(|| solve_minimal_s2(-0.557, 4));
    let (b, tb) = timed(|| solve_minimal_s2(1.003, 8));
    let ok_a = a.exists && (a.alpha - 0.5).abs() <= 2e-3 && (a.beta_prime + 2.0 * a.alpha).abs() < 1e-12;
    let ok_b = b.exists && (b.alpha - 0.7).abs() <= 2e-3;
    let fast = ta.as_secs_f64() < 0.1 && tb.as_secs_f64() < 0.1;
    outcome(
        ok_a && ok_b && fast,
        format!(
            "alpha(-0.557,4) = {:.6}, beta' = {:.6}; alpha(1.003,8) = {:.6}; {:?} / {:?}",
            a.alpha, a.beta_prime, b.alpha, ta, tb
        ),
    )
}

fn criterion_2() -> Outcome {
    let (res, elapsed) = timed(|| {
        let a = enumerate_s2_nonminimal(1.97, 11);
        let b = enumerate_s2_nonminimal(1.5, 11);
        let c = check_s2_candidate(2.22, 11, 2.40, -3.77);
        let d = check_s2_candidate(1.10, 11, 6.0 * PI / 11.0, -2.37);
        (a, b, c, d)
    });
    let (a, b, c, d) = res;
    let hit_a = a
        .iter()
        .find(|r| r.exists && r.k == Some(3) && (r.alpha - 2.2005).abs() < 0.01 && (r.beta_prime + 2.675).abs() < 0.01);
    let hit_b = b
        .iter()
        .find(|r| r.exists && (r.alpha - 6.0 * PI / 11.0).abs() < 1e-12 && (r.beta_prime + 2.953).abs() < 0.01);
    let named = |r: &Result<(), String>| matches!(r, Err(m) if m.contains("m = "));
    let pass = hit_a.is_some() && hit_b.is_some() && named(&c) && named(&d) && elapsed.as_secs_f64() < 1.0;
    outcome(
        pass,
        format!(
            "branch A {:?}; branch B {:?}; 4c: {}; 4d: {}; {:?}",
            hit_a.map(|r| (r.alpha, r.beta_prime, r.k)),
            hit_b.map(|r| (r.alpha, r.beta_prime)),
            c.err().unwrap_or_default(),
            d.err().unwrap_or_default(),
            elapsed
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut specs = Vec::new();
    for n in 2..=64 {
        specs.push(solve_minimal_s2(0.5, n).spec());
    }
    for (r, n) in [(-0.8, 3), (-0.8, 17), (-0.8, 40), (1.02, 3), (1.02, 7), (1.02, 12)] {
        specs.push(solve_minimal_s2(r, n).spec());
    }
    for (r, n) in [(1.97, 11), (1.5, 11)] {
        specs.extend(enumerate_s2_nonminimal(r, n).iter().filter(|r| r.exists).map(|r| r.spec()));
    }
    let one = Complex64::new(1.0, 0.0);
    specs.push(ReprSpec::t2_finite(3.0, 3, 1, PI, one));
    specs.push(ReprSpec::t2_finite(4.0, 5, 2, 3.0, Complex64::from_polar(1.0, 0.7)));
    specs.push(ReprSpec::t2_finite(2.0, 11, 3, 2.9, one));
    specs.push(ReprSpec::t2_window(1.2, 1.0, -0.5, 16));
    specs.push(ReprSpec::t2_window(2.5, 2.0, 0.3, 16));
    let mut families = std::collections::BTreeSet::new();
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for spec in &specs {
        match build(spec) {
            Ok(m) => {
                families.insert(m.spec.family);
                let ratio = verify_relations(&m).max() / (1e-10 * m.dim() as f64);
                worst = worst.max(ratio);
                if ratio >= 1.0 {
                    failures.push(format!("{} n={}", spec.family.as_str(), spec.n));
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    let pass = specs.len() >= 50 && families.len() == 4 && failures.is_empty();
    outcome(
        pass,
        format!(
            "{} specs, {} families, worst residual/(1e-10 n) = {:.2e}{}",
            specs.len(),
            families.len(),
            worst,
            if failures.is_empty() { String::new() } else { format!("; failures: {failures:?}") }
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    let mut count = 0;
    for (c, m) in common::bridge_representations() {
        for _ in 0..100 {
            let f = common::random_element(&mut rng, &c);
            let g = common::random_element(&mut rng, &c);
            let lhs = rep_evaluate(&(&f * &g), &m).unwrap();
            let rhs = rep_evaluate(&f, &m).unwrap() * rep_evaluate(&g, &m).unwrap();
            worst = worst.max((&lhs - &rhs).norm() / (1.0 + rhs.norm()));
            count += 1;
        }
    }
    outcome(worst < 1e-9, format!("{count} products over 5 representations, worst relative error {worst:.2e}"))
}

fn criterion_5() -> Outcome {
    let c = common::ctx(2, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bad = 0;
    for _ in 0..1000 {
        let f = common::random_monomial(&mut rng, &c);
        let g = common::random_monomial(&mut rng, &c);
        let h = common::random_monomial(&mut rng, &c);
        if &(&f * &g) * &h != &f * &(&g * &h) {
            bad += 1;
        }
    }
    let gens = [
        NormalForm::generator("u", &c).unwrap(),
        NormalForm::generator("ap", &c).unwrap(),
        NormalForm::generator("am", &c).unwrap(),
        NormalForm::generator("eps", &c).unwrap(),
        NormalForm::scalar(&c, EpsScalar::inv_one_plus_eps_sq()),
    ];
    let mut triples = 0;
    for a in &gens {
        for b in &gens {
            for d in &gens {
                triples += 1;
                if &(a * b) * d != a * &(b * d) {
                    bad += 1;
                }
            }
        }
    }
    outcome(bad == 0, format!("1000 random monomial triples and {triples} generator triples, {bad} mismatches"))
}

fn criterion_6() -> Outcome {
    let names = ["x", "y", "z", "w"];
    let h = 1e-5;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for (num, den) in [(-1, 2), (1, 2), (3, 2)] {
        let c = common::ctx(num, den);
        let r = num as f64 / den as f64;
        let (lo, hi) = chart_p_range(r, 10.0 * h).unwrap();
        for i in 0..4 {
            for j in i..4 {
                let f = parse_expr(names[i], &c).unwrap();
                let g = parse_expr(names[j], &c).unwrap();
                let exact = f.poisson(&g).unwrap();
                for _ in 0..20 {
                    let dp = DarbouxPoint { p: rng.gen_range(lo..hi), q: rng.gen_range(0.0..2.0 * PI) };
                    let fd = poisson_fd(&f.pi(), &g.pi(), dp, r, h).unwrap();
                    let alg = eval_on_chart(&exact, dp, r).unwrap();
                    worst = worst.max((fd - alg).norm());
                }
            }
        }
    }
    outcome(worst < 1e-6, format!("10 pairs x 3 values of R x 20 points, worst deviation {worst:.2e}"))
}

fn criterion_7() -> Outcome {
    let w = t2_beta_window(1.02, 11, 1).unwrap();
    let literal = w.kind == WindowKind::Restricted
        && (w.delta - 0.41336).abs() <= 1e-5
        && (w.lower - 2.77731).abs() <= 1e-5
        && (w.upper - 2.93467).abs() <= 1e-5;
    let mut flips = true;
    for n in [3, 5, 7, 11, 23] {
        flips &= !t2_beta_window(1.0, n, 1).unwrap().exists();
        flips &= t2_beta_window(1.0 + 1e-9, n, 1).unwrap().exists();
    }
    for (n, k) in [(5, 2), (7, 2), (7, 3), (11, 3), (11, 5)] {
        let t = t2_threshold(n, k);
        let expected = (PI / n as f64).cos() / (PI * k as f64 / n as f64).cos();
        flips &= (t - expected).abs() <= 1e-9;
        flips &= !t2_beta_window(t - 1e-9, n, k).unwrap().exists();
        flips &= t2_beta_window(t + 1e-9, n, k).unwrap().exists();
    }
    let mut probes = true;
    for (r, n, k) in [(1.02, 11, 1), (1.1, 7, 1), (1.5, 11, 3), (2.7, 5, 2)] {
        let w = t2_beta_window(r, n, k).unwrap();
        let mid = w.midpoint().unwrap();
        probes &= w.kind == WindowKind::Restricted;
        probes &= t2_ineq_holds(r, n, k, mid);
        probes &= !t2_ineq_holds(r, n, k, w.lower - 1e-3);
        probes &= !t2_ineq_holds(r, n, k, w.upper + 1e-3);
    }
    outcome(
        literal && flips && probes,
        format!(
            "delta = {:.7} (stated 0.41336), window = ({:.7}, {:.7}) (stated (2.77731, 2.93467)); thresholds {}; probes {}",
            w.delta,
            w.lower,
            w.upper,
            if flips { "ok" } else { "FAILED" },
            if probes { "ok" } else { "FAILED" }
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut eps = Vec::new();
    let mut shadow = Vec::new();
    for n in [10, 20, 40, 80, 160] {
        let m = build(&solve_minimal_s2(0.5, n).spec()).unwrap();
        let x = (&m.ap + &m.am) * Complex64::new(0.5, 0.0);
        let y = (&m.ap - &m.am) * Complex64::new(0.0, -0.5);
        let z = (&m.u - m.u.adjoint()) * Complex64::new(0.0, -0.5);
        let comm: CMatrix = &x * &y - &y * &x;
        let s = (comm / Complex64::new(0.0, m.eps) - z).norm() / (n as f64).sqrt();
        eps.push(m.eps);
        shadow.push(s);
    }
    let decreasing = eps.windows(2).all(|w| w[1] < w[0]);
    let pass = decreasing && eps[4] < 0.03 && shadow.iter().all(|&s| s < 0.1);
    outcome(pass, format!("eps = {eps:.5?}; shadow = {:?}", shadow.iter().map(|s| format!("{s:.2e}")).collect::<Vec<_>>()))
}

fn criterion_9() -> Outcome {
    let mut worst = 0.0f64;
    let mut eps_exact = true;
    for n in 2..=10 {
        let s = build_fuzzy_sphere(n).unwrap();
        worst = worst.max(s.verify().max());
        eps_exact &= s.eps == 2.0 / ((n * n - 1) as f64).sqrt();
    }
    let mut torus = 0.0f64;
    for (n, k) in [(2, 1), (3, 1), (5, 2), (7, 3), (10, 3)] {
        let t = build_nc_torus(n, k, 0.3, Complex64::from_polar(1.0, 0.9)).unwrap();
        torus = torus.max(t.commutation_residual()).max(t.unitarity_residual());
        let mut p = CMatrix::identity(n, n);
        for _ in 0..3 * n {
            p = &p * &t.v;
            torus = torus.max((p.norm() - (n as f64).sqrt()).abs());
        }
    }
    outcome(
        worst < 1e-12 && torus < 1e-12 && eps_exact,
        format!("fuzzy sphere worst {worst:.2e} (eps exact: {eps_exact}); torus worst {torus:.2e}"),
    )
}

fn criterion_10() -> Outcome {
    let f = |minimal_s2, nonminimal_s2, finite_t2, semi_infinite_t2, infinite_t2| FamilyFlags {
        minimal_s2,
        nonminimal_s2,
        finite_t2,
        semi_infinite_t2,
        infinite_t2,
    };
    let table = [
        (-2.0, RegionLabel::Null, f(false, false, false, false, false)),
        (-1.0, RegionLabel::Point, f(false, false, false, false, false)),
        (0.0, RegionLabel::Sphere, f(true, false, false, false, false)),
        (0.5, RegionLabel::Sphere, f(true, false, false, false, false)),
        (1.0, RegionLabel::Variety, f(true, false, false, false, false)),
        (1.05, RegionLabel::SphereTorus, f(true, true, true, false, false)),
        (1.118034, RegionLabel::SphereTorusBoundary, f(false, true, true, true, true)),
        (2.0, RegionLabel::Torus, f(false, false, true, false, true)),
    ];
    let mut wrong = Vec::new();
    for (r, label, flags) in table {
        let c = classify_region(r, 0.5).unwrap();
        if c.label != label || c.flags != flags {
            wrong.push(format!("R = {r}: {:?}", c.label));
        }
    }
    outcome(wrong.is_empty(), if wrong.is_empty() { "8 probe points, 7 columns".to_string() } else { format!("{wrong:?}") })
}

fn criterion_11() -> Outcome {
    let c = common::ctx(3, 7);
    let corpus = common::identity_corpus();
    let nonzero: Vec<&String> = corpus.iter().filter(|s| !parse_expr(s, &c).unwrap().is_zero()).collect();
    let bin = env!("CARGO_BIN_EXE_spheretorus");
    let invoke = |args: &[&str]| Command::new(bin).args(args).output().map(|o| o.stdout).unwrap_or_default();
    let sweep = ["sweep", "--n", "11", "--R", "-1.2:2.2:35"];
    let diagram = ["diagram", "s2min", "--R", "-0.5576", "--n", "4", "--alpha", "0.5", "--beta-prime", "-1"];
    let (s1, s2) = (invoke(&sweep), invoke(&sweep));
    let (d1, d2) = (invoke(&diagram), invoke(&diagram));
    let pass = corpus.len() >= 30 && nonzero.is_empty() && !s1.is_empty() && s1 == s2 && !d1.is_empty() && d1 == d2;
    outcome(
        pass,
        format!(
            "{} identities ({} nonzero); sweep {} bytes identical: {}; diagram {} bytes identical: {}",
            corpus.len(),
            nonzero.len(),
            s1.len(),
            s1 == s2,
            d1.len(),
            d1 == d2
        ),
    )
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "minimal S2 figure values", criterion_1),
        (2, "non-minimal S2 figure values", criterion_2),
        (3, "relation residuals", criterion_3),
        (4, "homomorphism bridge", criterion_4),
        (5, "associativity", criterion_5),
        (6, "Poisson bracket oracle", criterion_6),
        (7, "T2 windows", criterion_7),
        (8, "commutative limit", criterion_8),
        (9, "reference models", criterion_9),
        (10, "classification table", criterion_10),
        (11, "shell determinism", criterion_11),
    ];
    let mut unexpected = 0;
    for (id, name, check) in criteria {
        let o = check();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = if !o.pass && KNOWN_UNATTAINABLE.contains(&id) { " [known]" } else { "" };
        println!("[{tag}] {id:>2} {name}: {}{note}", o.detail);
        if !o.pass && !KNOWN_UNATTAINABLE.contains(&id) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
