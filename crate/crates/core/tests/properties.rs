//! Invariants that hold for every valid input, checked on seeded random samples.

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mlradii::region::DEFAULT_MAX_C_DEPTH;
use mlradii::verify::ComplexRatios;
use mlradii::{
    conic_membership, eval_j, eval_phi, eval_phi_derivative, in_wi, ratio_convex, ratio_starlike, transform,
    zeros_of, MLParams, Normalization, ProblemSpec, RadiusSolver, RegionPoint, Transform, WiStatus, ZeroTarget,
};

fn params(o: f64, b: f64, g: f64) -> MLParams {
    MLParams::new(o, b, g).unwrap()
}

/// Parameter sets with real zeros: two region members and the sine/cosine cases.
fn solvers(norm: Normalization) -> Vec<RadiusSolver> {
    [(3.0, 1.0, 1.0), (3.0, 1.5, 2.0), (2.0, 2.0, 1.0), (2.0, 1.0, 1.0)]
        .into_iter()
        .map(|(o, b, g)| RadiusSolver::new(params(o, b, g), norm).assume_real_zeros(o == 2.0))
        .collect()
}

#[test]
fn sinc_reduction() {
    let p = params(2.0, 2.0, 1.0);
    for i in 1..200 {
        let r = PI * i as f64 / 200.0;
        let v = eval_phi(&p, -r * r).unwrap().value;
        assert!((v - r.sin() / r).abs() <= 1e-12, "r = {r}");
    }
}

#[test]
fn ratios_tend_to_one() {
    for norm in Normalization::ALL {
        for s in solvers(norm) {
            let p = s.params();
            let r = 1e-6;
            // f and g depart from 1 like r², h like r (its sums run over w = r)
            let (lim_s, lim_c) = match norm {
                Normalization::H => {
                    let ps = |t| s.series().power_sums(t, 1)[0];
                    (1.01 * r * ps(norm.function_target()), 1.01 * r * ps(norm.derivative_target()))
                }
                _ => (r, r),
            };
            assert!((ratio_starlike(p, norm, r).unwrap() - 1.0).abs() <= lim_s);
            assert!((ratio_convex(p, norm, r).unwrap() - 1.0).abs() <= lim_c);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn central_differences(o in 0.5f64..3.0, b in 0.5f64..3.0, g in 0.5f64..3.0, x in -5.0f64..2.0) {
        let p = params(o, b, g);
        let d1 = eval_phi_derivative(&p, x, 1).unwrap().value;
        let d2 = eval_phi_derivative(&p, x, 2).unwrap().value;
        for h in [1e-4, 1e-5] {
            let fp = eval_phi(&p, x + h).unwrap().value;
            let fm = eval_phi(&p, x - h).unwrap().value;
            let cd = (fp - fm) / (2.0 * h);
            // truncation C·h² plus f64 rounding of the difference quotient
            let scale = fp.abs().max(fm.abs()).max(1.0);
            let bound = (1.0 + d2.abs()) * h * h + 4.0 * f64::EPSILON * scale / h;
            prop_assert!((d1 - cd).abs() <= bound, "x = {}, h = {}: {} vs {}", x, h, d1, cd);
        }
    }

    #[test]
    fn j_is_affine(alpha in 0.0f64..2.0, frac in 0.05f64..0.9, pick in 0usize..3, n in 0usize..3) {
        let norm = Normalization::ALL[n];
        let s = &solvers(norm)[pick];
        let r = frac * s.first_zero(norm.derivative_target()).unwrap();
        let p = s.params();
        let j0 = eval_j(p, norm, 0.0, r).unwrap();
        let j1 = eval_j(p, norm, 1.0, r).unwrap();
        let ja = eval_j(p, norm, alpha, r).unwrap();
        prop_assert!((ja - ((1.0 - alpha) * j0 + alpha * j1)).abs() <= 1e-12 * (1.0 + j0.abs() + j1.abs()));
    }

    #[test]
    fn x_range_pruning(x in 0.5f64..0.999, beta in 0.01f64..10.0) {
        let v = in_wi(RegionPoint::new(x, beta).unwrap(), DEFAULT_MAX_C_DEPTH);
        prop_assert_ne!(v.status, WiStatus::Member);
    }

    #[test]
    fn c_fixes_small_beta(x in 0.001f64..0.999, beta in 0.001f64..=1.0) {
        let p = RegionPoint::new(x, beta).unwrap();
        prop_assert_eq!(transform(Transform::C, p), p);
    }
}

#[test]
fn witnesses_replay_and_region_is_closed() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut members = 0;
    while members < 50 {
        let p = RegionPoint::new(rng.gen_range(0.01..0.5), rng.gen_range(0.05..12.0)).unwrap();
        let v = in_wi(p, DEFAULT_MAX_C_DEPTH);
        if v.status != WiStatus::Member {
            continue;
        }
        members += 1;
        let end = v.witness.expect("members carry a witness").replay();
        assert!((end.x - p.x).abs() <= 1e-12 * p.x && (end.beta - p.beta).abs() <= 1e-12 * p.beta.max(1.0));
        for op in [Transform::A, Transform::B, Transform::C] {
            assert_eq!(in_wi(transform(op, p), DEFAULT_MAX_C_DEPTH).status, WiStatus::Member, "{op} of {p:?}");
        }
    }
}

#[test]
fn product_reconstruction() {
    let p = params(2.0, 2.0, 1.0);
    // the computed head of the table agrees with n·π; beyond it use n·π directly
    let head = zeros_of(&p, ZeroTarget::LambdaZeros, 8).unwrap();
    for (i, z) in head.zeros.iter().enumerate() {
        assert!((z - (i + 1) as f64 * PI).abs() < 1e-10);
    }
    let zero = |n: usize| head.zeros.get(n - 1).copied().unwrap_or(n as f64 * PI);
    for r in [0.7, 2.0, 4.5, 8.0] {
        let exact = eval_phi(&p, -r * r).unwrap().value;
        let err = |n: usize| {
            let prod: f64 = (1..=n).map(|k| 1.0 - (r / zero(k)).powi(2)).product();
            ((prod - exact) / exact).abs()
        };
        let (e10, e100, e500) = (err(10), err(100), err(500));
        assert!(e500 < e100 && e100 < e10, "r = {r}: {e10} {e100} {e500}");
        // the omitted factors contribute Σ_{n>N} r²/(nπ)² ≈ r²/(π²N)
        let tail = r * r / (PI * PI * 500.5);
        assert!((e500 - tail).abs() <= 0.01 * tail, "r = {r}: {e500} vs {tail}");
        if tail <= 1e-3 {
            assert!(e500 <= 1e-3);
        }
    }
}

#[test]
fn zeros_bracket_sign_changes() {
    for (o, b, g) in [(2.0, 2.0, 1.0), (3.0, 1.0, 1.0), (3.0, 1.5, 2.0), (1.5, 1.0, 1.0)] {
        let s = RadiusSolver::new(params(o, b, g), Normalization::G);
        for t in ZeroTarget::ALL {
            let table = zeros_of(s.params(), t, 3).unwrap();
            for &z in &table.zeros {
                let d = 10.0 * table.per_zero_tol;
                let (lo, _) = s.series().target_value(t, z - d).unwrap();
                let (hi, _) = s.series().target_value(t, z + d).unwrap();
                assert!(lo * hi < 0.0, "({o},{b},{g}) {t} at {z}");
            }
        }
    }
}

#[test]
fn derivative_zero_comes_first() {
    for norm in Normalization::ALL {
        for s in solvers(norm) {
            let d = s.first_zero(norm.derivative_target()).unwrap();
            let f = s.first_zero(norm.function_target()).unwrap();
            assert!(d < f, "{:?} {norm}: {d} vs {f}", s.params());
        }
    }
}

fn problems() -> Vec<ProblemSpec> {
    vec![
        ProblemSpec::UniformConvex { eta: 0.7, rho: 0.3 },
        ProblemSpec::AlphaConvex { alpha: 0.4, rho: 0.1 },
        ProblemSpec::AlphaConvex { alpha: 0.0, rho: 0.1 },
        ProblemSpec::ParabolicStarlike { eta: 1.5, rho: 0.2 },
        ProblemSpec::StrongStarlike { rho: 0.6 },
        ProblemSpec::Starlike { rho: 0.5 },
        ProblemSpec::Convex { rho: 0.5 },
    ]
}

#[test]
fn bracket_sign_contract_and_radius_below_zero() {
    for norm in Normalization::ALL {
        for s in solvers(norm) {
            for p in problems() {
                let res = s.solve(&p).unwrap();
                let (lo, hi) = res.bracket;
                let eps = 1e-6 * (hi - lo);
                let (a, b) = (s.equation(&p, lo + eps).unwrap(), s.equation(&p, hi - eps).unwrap());
                let strong = matches!(p, ProblemSpec::StrongStarlike { .. });
                if strong {
                    assert!(a < 0.0 && b > 0.0, "{p}");
                } else {
                    assert!(a > 0.0 && b < 0.0, "{p}");
                }
                let first = match p {
                    ProblemSpec::UniformConvex { .. } | ProblemSpec::Convex { .. } => {
                        s.first_zero(norm.derivative_target()).unwrap()
                    }
                    ProblemSpec::AlphaConvex { alpha, .. } if alpha > 0.0 => {
                        s.first_zero(norm.derivative_target()).unwrap()
                    }
                    _ => s.first_zero(norm.function_target()).unwrap(),
                };
                assert!(res.radius < first, "{p}: {} vs {first}", res.radius);
            }
        }
    }
}

#[test]
fn alpha_ordering_chain() {
    for norm in Normalization::ALL {
        for s in solvers(norm) {
            let rc = s.convex(0.2).unwrap().radius;
            let rs = s.starlike(0.2).unwrap().radius;
            for alpha in [0.25, 0.5, 0.75] {
                let r = s.alpha_convex(alpha, 0.2).unwrap().radius;
                assert!(rc < r && r < rs, "{norm} alpha = {alpha}: {rc} < {r} < {rs}");
            }
        }
    }
}

#[test]
fn strong_at_one_is_starlike() {
    for norm in Normalization::ALL {
        for s in solvers(norm) {
            let a = s.strong_starlike(1.0).unwrap().radius;
            let b = s.starlike(0.0).unwrap().radius;
            assert!((a - b).abs() <= 1e-8, "{norm}: {a} vs {b}");
        }
    }
}

fn root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if m <= lo || m >= hi {
            break;
        }
        if f(m) > 0.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn parabolic_dual_forms_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for i in 0..20 {
        let norm = Normalization::ALL[i % 3];
        let s = &solvers(norm)[rng.gen_range(0..4)];
        let (eta, rho) = (rng.gen_range(0.0..3.0), rng.gen_range(0.0..0.95));
        let hi = s.first_zero(norm.function_target()).unwrap();
        let eps = 1e-9 * hi;
        let a = root(|r| s.parabolic_equation(eta, rho, r).unwrap_or(-1.0), eps, hi - eps);
        let b = root(|r| s.parabolic_lambda_equation(eta, rho, r).unwrap(), eps, hi - eps);
        assert!((a - b).abs() <= 1e-9, "{norm} eta = {eta}, rho = {rho}: {a} vs {b}");
    }
}

#[test]
fn conic_membership_inside_ucv_radius() {
    for norm in Normalization::ALL {
        let s = &solvers(norm)[0];
        let (eta, rho) = (1.0, 0.2);
        let r = s.uniform_convex(eta, rho).unwrap().radius;
        let cr = ComplexRatios::new(s, 16, true).unwrap();
        for k in 1..=5 {
            let m = r * k as f64 / 5.0 * (1.0 - 1e-6);
            for j in 0..360 {
                let z = Complex64::from_polar(m, 2.0 * PI * j as f64 / 360.0);
                let (q, _) = cr.convex(z).unwrap();
                assert!(conic_membership(q, eta, rho), "{norm} |z| = {m}, angle {j}: {q}");
            }
        }
    }
}

#[test]
fn strong_sector_on_inner_circle() {
    for norm in Normalization::ALL {
        let s = &solvers(norm)[0];
        let rho = 0.5;
        let r = s.strong_starlike(rho).unwrap().radius;
        let cr = ComplexRatios::new(s, 16, false).unwrap();
        let worst = (0..720)
            .map(|j| cr.starlike(Complex64::from_polar(r * 0.999, 2.0 * PI * j as f64 / 720.0)).unwrap().0.arg().abs())
            .fold(0.0, f64::max);
        assert!(worst < PI * rho / 2.0, "{norm}: {worst}");
    }
}
