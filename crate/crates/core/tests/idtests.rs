use besselcm::distributions::DistSpec;
use besselcm::idtests::*;
use besselcm::specfun::{bessel_i_ratio, bessel_zeros};
use proptest::prelude::*;

fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn w_grid() -> Vec<f64> {
    (1..=10).map(|k| 2.0 + 0.3 * k as f64).collect()
}

#[test]
fn mckay1_pick_at_i() {
    // 3/2 · (1/(1+1) + 1/(9+1))
    let s = LTSpec::Dist {
        d: DistSpec::McKayI {
            mu: 1.0,
            a: 1.0,
            b: 2.0,
        },
    };
    assert!((pick_im(&s, 0.0, 1.0).unwrap() - 0.9).abs() < 1e-14);
}

#[test]
fn ml_series_matches_i_ratio() {
    for mu in [0.6, 1.0, 2.5] {
        for x in logspace(0.1, 100.0, 15) {
            let ml = ml_i_ratio(mu, x, DEFAULT_ML_TERMS).unwrap();
            let d = bessel_i_ratio(mu, x).unwrap();
            assert!((ml - d).abs() <= 1e-9 * d, "mu={mu} x={x}: {ml} vs {d}");
        }
    }
}

#[test]
fn k_ratio_integral_matches_closed_form() {
    // order 0 of the ladder integrates the kernel; neg_logderiv uses K_{ν−1}/K_ν
    let s = LTSpec::Theta {
        mu: 1.3,
        nu: 0.7,
        a: 1.0,
        b: 2.0,
    };
    for x in [0.05, 0.5, 3.0, 40.0] {
        let (kind, lad) = phi_prime_ladder(&s, x, 0).unwrap();
        assert_eq!(kind, LadderKind::Quadrature);
        let d = neg_logderiv(&s, x, DEFAULT_ML_TERMS).unwrap();
        assert!(
            (lad[0].value - d).abs() <= 1e-6 * d.abs(),
            "x={x}: {} vs {d}",
            lad[0].value
        );
    }
}

#[test]
fn neg_logderiv_matches_difference_of_log_lt() {
    for s in LTSpec::defaults() {
        for x in [0.3, 2.0, 15.0] {
            let f = |t: f64| ln_lt_value(&s, t);
            let (d, _) = ridders(&f, x, 1, 0.25 * x).unwrap();
            let n = neg_logderiv(&s, x, DEFAULT_ML_TERMS).unwrap();
            assert!((n + d).abs() <= 1e-7 * n.abs().max(1.0), "{s} x={x}: {n} vs {}", -d);
        }
    }
}

#[test]
fn ladders_agree_with_differences() {
    for s in LTSpec::defaults() {
        let x = 1.7;
        let (_, lad) = phi_prime_ladder(&s, x, 3).unwrap();
        let f = |t: f64| neg_logderiv(&s, t, DEFAULT_ML_TERMS);
        for n in 1..=3 {
            let (d, e) = ridders(&f, x, n, 0.5).unwrap();
            let sgn = if n % 2 == 1 { -1.0 } else { 1.0 };
            let tol = 1e-5 * lad[n].scale + 10.0 * e;
            assert!(
                (sgn * d - lad[n].value).abs() <= tol,
                "{s} n={n}: {} vs {}",
                sgn * d,
                lad[n].value
            );
        }
    }
}

#[test]
fn dist_ladder_order_zero_matches_library() {
    let ds = [
        DistSpec::McKayI {
            mu: 1.0,
            a: 1.0,
            b: 2.0,
        },
        DistSpec::McKayII {
            mu: 0.5,
            a: 1.0,
            b: 2.0,
        },
        DistSpec::GIG {
            mu: 0.5,
            a: 1.0,
            b: 2.0,
        },
        DistSpec::GIG {
            mu: -1.5,
            a: 2.0,
            b: 0.5,
        },
        DistSpec::KDist {
            alpha: 1.5,
            beta: 2.5,
            mu: 1.0,
        },
        DistSpec::GammaQuotient {
            alpha: 2.5,
            beta: 1.0,
            alpha0: 3.0,
            beta0: 2.0,
        },
        DistSpec::GenMcKay {
            mu: 1.0,
            nu: 1.5,
            a: 1.0,
            b: 2.0,
        },
    ];
    for d in ds {
        let s = LTSpec::Dist { d };
        for x in [0.2, 3.0] {
            let (_, lad) = phi_prime_ladder(&s, x, 0).unwrap();
            let r = neg_logderiv(&s, x, DEFAULT_ML_TERMS).unwrap();
            assert!(
                (lad[0].value - r).abs() <= 1e-6 * r.abs(),
                "{s} x={x}: {} vs {r}",
                lad[0].value
            );
        }
    }
}

#[test]
fn cumulant_ladder_matches_partial_fractions() {
    // GenMcKay{μ, μ+1} is McKayI{μ}; one ladder is quadrature, the other exact
    let g = LTSpec::Dist {
        d: DistSpec::GenMcKay {
            mu: 0.5,
            nu: 1.5,
            a: 1.0,
            b: 2.0,
        },
    };
    let m = LTSpec::Dist {
        d: DistSpec::McKayI {
            mu: 0.5,
            a: 1.0,
            b: 2.0,
        },
    };
    for x in [0.1, 1.0, 8.0] {
        let (kg, lg) = phi_prime_ladder(&g, x, 6).unwrap();
        let (km, lm) = phi_prime_ladder(&m, x, 6).unwrap();
        assert_eq!((kg, km), (LadderKind::Quadrature, LadderKind::Exact));
        for n in 0..=6 {
            assert!((lg[n].value - lm[n].value).abs() <= 1e-8 * lm[n].value, "x={x} n={n}");
        }
    }
}

#[test]
fn transforms_equal_one_at_zero() {
    for s in LTSpec::defaults() {
        assert_eq!(lt_value(&s, 0.0).unwrap(), 1.0);
        assert!((lt_value(&s, 1e-14).unwrap() - 1.0).abs() < 1e-6, "{s}");
        if !matches!(s.name(), "OMEGA2" | "CHI" | "ZETA" | "KAPPA" | "EPSILON") {
            assert!((lt_value(&s, 1e-8).unwrap() - 1.0).abs() < 1e-6, "{s}");
        }
    }
}

#[test]
fn sqrt_transforms_leave_one_slowly() {
    // 1 − L(x) ≈ (a+b)√x for ZETA
    let s = LTSpec::Zeta {
        mu: 1.0,
        nu: 1.0,
        a: 1.0,
        b: 2.0,
    };
    let d = 1.0 - lt_value(&s, 1e-8).unwrap();
    assert!((d / 3e-4 - 1.0).abs() < 1e-3, "{d}");
}

#[test]
fn ikmu_value() {
    // 2 I₁(1) K₁(1), mpmath
    let v = lt_value(&LTSpec::Ikmu { mu: 1.0 }, 1.0).unwrap();
    assert!((v - 0.680346701809735).abs() < 1e-13, "{v}");
}

#[test]
fn spec_parsing_and_validation() {
    let mut p = std::collections::BTreeMap::new();
    p.insert("mu".to_string(), 1.0);
    p.insert("nu".to_string(), 2.0);
    p.insert("a".to_string(), 1.0);
    p.insert("b".to_string(), 2.0);
    let s = LTSpec::from_params("zeta", &p).unwrap();
    assert_eq!(
        s,
        LTSpec::Zeta {
            mu: 1.0,
            nu: 2.0,
            a: 1.0,
            b: 2.0
        }
    );
    assert!(LTSpec::from_params("IKMU", &p).is_err());
    assert!(LTSpec::Zeta {
        mu: 0.4,
        nu: 1.0,
        a: 1.0,
        b: 1.0
    }
    .validate()
    .is_err());
    assert!(LTSpec::Omega1 {
        mu: 1.0,
        nu: 0.5,
        sigma: 0.5,
        a: 1.0,
        b: 2.0
    }
    .validate()
    .is_err());
    assert!(LTSpec::Dist {
        d: DistSpec::NoncentralChiSq { mu: 1.0, lambda: 1.0 }
    }
    .validate()
    .is_err());
    let j = serde_json::to_string(&s).unwrap();
    assert_eq!(serde_json::from_str::<LTSpec>(&j).unwrap(), s);
    assert!(j.contains("\"lt\":\"ZETA\""));
}

#[test]
fn cm_check_on_known_functions() {
    let g = logspace(0.1, 10.0, 12);
    let f = CmFunction::new(|x| Ok(1.0 / (x + 1.0)));
    let r = cm_check(&f, &g, 8).unwrap();
    assert!(r.pass && r.verdict == Verdict::Pass, "{r:?}");
    assert_eq!(r.method, LadderKind::FiniteDifference);
    let s = CmFunction::new(|x| Ok(x.sin() + 2.0));
    let r = cm_check(&s, &g, 4).unwrap();
    assert!(!r.pass && r.witness.is_some());
    let e = CmFunction::new(|x| Ok((-x).exp())).with_ladder(LadderKind::Exact, |x, n| {
        Ok((0..=n).map(|_| LadderValue::exact((-x).exp(), (-x).exp())).collect())
    });
    let r = cm_check(&e, &g, 10).unwrap();
    assert!(r.pass && r.worst_margin == 1.0);
    assert!(cm_check(&e, &g, 11).is_err());
}

#[test]
fn bernstein_passes_for_proven_transforms() {
    let g = logspace(0.05, 50.0, 20);
    for s in LTSpec::defaults() {
        let r = bernstein_check(&s, &g, 8).unwrap();
        assert!(r.pass, "{s}: {r:?}");
    }
}

#[test]
fn selfdecomposable_quotient_passes() {
    let g = logspace(0.05, 50.0, 12);
    for s in [
        LTSpec::Rho { mu: 1.0, a: 1.0 },
        LTSpec::Theta {
            mu: 1.0,
            nu: 1.0,
            a: 1.0,
            b: 2.0,
        },
    ] {
        for a in [0.25, 0.5, 0.75] {
            let r = selfdecomp_check(&s, a, &g, 8).unwrap();
            assert!(r.pass, "{s} alpha={a}: {r:?}");
        }
    }
    assert!(selfdecomp_check(&LTSpec::Rho { mu: 1.0, a: 1.0 }, 1.0, &g, 2).is_err());
}

#[test]
fn zeta_pick_witness_near_first_zero() {
    let s = LTSpec::Zeta {
        mu: 1.0,
        nu: 1.0,
        a: 1.0,
        b: 2.0,
    };
    let r = pick_check(&s, &default_pick_grid(&s).unwrap()).unwrap();
    assert!(!r.pass);
    let (x, y) = r.witness.unwrap();
    assert!(pick_im(&s, x, y).unwrap() < -1.0);
    // directly at the first singular point of the I_ν(b√x) factor
    let j = bessel_zeros(1.0, 1).unwrap()[0];
    assert!(pick_im(&s, (j / 2.0).powi(2), 1e-3).unwrap() < -100.0);
}

#[test]
fn rho_and_theta_pick_positive() {
    for s in [
        LTSpec::Rho { mu: 1.0, a: 1.0 },
        LTSpec::Theta {
            mu: 1.0,
            nu: 1.0,
            a: 1.0,
            b: 2.0,
        },
    ] {
        let r = pick_check(&s, &default_pick_grid(&s).unwrap()).unwrap();
        assert!(r.pass, "{s}: {}", r.min_im_value);
    }
}

#[test]
fn kdist_equal_shapes_pick_positive() {
    let d = DistSpec::KDist {
        alpha: 2.0,
        beta: 2.0,
        mu: 1.0,
    };
    let s = LTSpec::Dist { d };
    // mpmath on the gamma-mixture integral
    assert!((pick_im(&s, 10.0, 1e-3).unwrap() - 0.07851686201345379).abs() < 1e-10);
    assert!((pick_im(&s, 3.0, 0.01).unwrap() - 0.43019349143059799).abs() < 1e-10);
    let r = pick_check(&s, &default_pick_grid(&s).unwrap()).unwrap();
    assert!(r.pass, "{}", r.min_im_value);
}

#[test]
fn gamma_quotient_hcm_exact() {
    let d = DistSpec::GammaQuotient {
        alpha: 1.5,
        beta: 1.0,
        alpha0: 2.0,
        beta0: 1.0,
    };
    let r = hcm_check(&HcmSubject::Density { d }, &[0.5, 1.0, 2.0], &w_grid(), 8).unwrap();
    assert!(r.pass);
    assert!(r.rows.iter().all(|x| x.report.method == LadderKind::Exact));
}

#[test]
fn gig_hcm_exact_ladder_matches_differences() {
    let d = DistSpec::GIG {
        mu: 0.5,
        a: 1.0,
        b: 2.0,
    };
    let r = hcm_check(&HcmSubject::Density { d }, &[1.0], &w_grid(), 6).unwrap();
    assert!(r.pass);
    let dist = besselcm::distributions::Dist::new(d).unwrap();
    let f = |w: f64| dist.hcm_profile(1.0, w);
    let (d1, _) = ridders(&f, 3.0, 1, 0.5).unwrap();
    // λ = (a + b)/2 at u = 1
    assert!((d1 + 1.5 * f(3.0).unwrap()).abs() < 1e-8);
}

#[test]
fn noncentral_profile_reports_signs() {
    let r = noncentral_profile_check(1.0, 3.0, 1.0, &w_grid()).unwrap();
    assert!(r.decreasing_claimed && r.convex_claimed);
    // closed form for μ = 1 (cosh profile): decreasing, not convex, on this grid
    assert!(r.decreasing && !r.convex && !r.pass);
    let r = noncentral_profile_check(1.0, 8.0, 1.0, &w_grid()).unwrap();
    assert!(!r.decreasing_claimed && !r.convex_claimed && r.pass);
    assert!(noncentral_profile_check(1.0, 3.0, 1.0, &[2.0]).is_err());
}

#[test]
fn noncentral_profile_even_in_log_v() {
    // v ↦ χ(uv)χ(u/v) is even in ln v, so flat at v = 1 (w = 2)
    let dist = besselcm::distributions::Dist::new(DistSpec::NoncentralChiSq { mu: 3.0, lambda: 2.0 }).unwrap();
    let f = |lv: f64| -> besselcm::Result<f64> { Ok(dist.pdf(lv.exp())? * dist.pdf((-lv).exp())?) };
    let (d, e) = ridders(&|h| Ok((f(h)? - f(-h)?) / 2.0), 0.0, 1, 0.1).unwrap();
    assert!(d.abs() <= 1e-9 + 10.0 * e);
}

#[test]
fn i_product_absolutely_monotone() {
    let r = absmon_check(0.0, 1.0, &w_grid(), 6).unwrap();
    assert!(r.pass, "{r:?}");
    for (mu, u, w) in [(0.0, 1.0, 3.0), (1.0, 1.0, 2.5), (2.5, 3.0, 4.0)] {
        let a = i_product_first_derivative(mu, u, w).unwrap();
        let (d, _) = ridders(&|t| i_product_profile(mu, u, t), w, 1, 0.2).unwrap();
        assert!(a > 0.0 && (a - d).abs() <= 1e-8 * a, "{mu} {u} {w}: {a} vs {d}");
    }
    // unbounded growth
    assert!(i_product_profile(0.0, 1.0, 50.0).unwrap() > 1e10);
}

#[test]
fn landau_constant_value() {
    let (c, t) = landau_constant_with_argmax().unwrap();
    assert!((c - 0.7857468704).abs() < 1e-8, "{c}");
    assert!(t > 0.0 && t < 2.404825557695773);
}

#[test]
fn zero_spacing_exceeds_pi() {
    for mu in [0.51, 1.0, 3.0] {
        let z = bessel_zeros(mu, 50).unwrap();
        assert!(z.windows(2).all(|w| w[1] - w[0] > std::f64::consts::PI));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rho_ladder_order_zero_is_neg_logderiv(mu in -0.9f64..5.0, a in 0.2f64..3.0, x in 0.05f64..50.0) {
        let s = LTSpec::Rho { mu, a };
        let (_, l) = phi_prime_ladder(&s, x, 0).unwrap();
        let d = neg_logderiv(&s, x, DEFAULT_ML_TERMS).unwrap();
        let diff = (l[0].value - d).abs();
        prop_assert!(diff <= 1e-12 * d.abs());
    }

    #[test]
    fn mckay1_pick_nonnegative(mu in -0.45f64..4.0, a in 0.1f64..2.0, db in 0.05f64..2.0,
                               x in -20.0f64..20.0, y in 1e-3f64..5.0) {
        let s = LTSpec::Dist { d: DistSpec::McKayI { mu, a, b: a + db } };
        let v = pick_im(&s, x, y).unwrap();
        prop_assert!(v >= 0.0);
    }

    #[test]
    fn positive_pole_sums_are_cm(c1 in 0.01f64..5.0, c2 in 0.01f64..5.0, s1 in 0.0f64..3.0, s2 in 0.0f64..3.0) {
        let f = CmFunction::new(move |x| Ok(c1 / (x + s1) + c2 / (x + s2)));
        let r = cm_check(&f, &[0.5, 1.0, 2.0], 4).unwrap();
        prop_assert!(r.pass);
    }
}
