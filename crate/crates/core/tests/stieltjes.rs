use besselcm::quad::*;
use besselcm::specfun::{bessel_jy, gamma};
use besselcm::stieltjes::*;
use proptest::prelude::*;
use std::collections::BTreeMap;
use std::f64::consts::PI;

fn rec(id: IdentityId) -> IdentityRecord {
    IdentityRecord::new(id).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn forward_grid_defaults() {
    let recs: Vec<_> = IdentityId::defaults().into_iter().map(rec).collect();
    let zs = [0.1, 1.0, 10.0];
    for (i, z, row) in verify_catalog(&recs, &zs, |c| c.value(), 4) {
        let row = row.unwrap_or_else(|e| panic!("{} z={z}: {e}", recs[i].id));
        assert!(row.passes(), "{} z={z}: residual {:e}", recs[i].id, row.residual);
        assert!(row.converged);
    }
}

#[test]
fn catalog_rows_are_ordered() {
    let recs: Vec<_> = IdentityId::defaults()
        .into_iter()
        .filter(|i| i.name().starts_with("TRICOMI"))
        .map(rec)
        .collect();
    let zs = log_grid(1e-2, 1e2, 7);
    let a = verify_catalog(&recs, &zs, |c| c.value(), 1);
    let b = verify_catalog(&recs, &zs, |c| c.value(), 3);
    assert_eq!(a.len(), recs.len() * 7);
    for ((i, z, r), (j, w, s)) in a.iter().zip(&b) {
        assert_eq!((i, z), (j, w));
        assert_eq!(r, s);
    }
}

#[test]
fn ik_equal_at_one() {
    let r = stieltjes_rhs(&rec(IdentityId::IkEqual { mu: 0.0 }), 1.0, 1e-9).unwrap();
    assert!(rel(r.value, 1.06608934991253724) < 1e-7);
}

#[test]
fn i_exp_at_one() {
    let r = stieltjes_rhs(&rec(IdentityId::IExp { mu: 1.0, a: 1.0 }), 1.0, 1e-9).unwrap();
    assert!(rel(r.value, 0.207910415349708449) < 1e-7);
}

#[test]
fn tricomi_cp1_at_one() {
    let r = rec(IdentityId::TricomiCp1 { a: 1.5, c: 0.5 });
    let v = stieltjes_rhs(&r, 1.0, 1e-10).unwrap().value - r.shape.constant;
    assert!((v - 0.769833849938735931).abs() < 1e-6);
}

#[test]
fn tricomi_grid() {
    for (a, c) in [(1.5, 0.5), (2.0, -0.5), (0.7, 0.2)] {
        for id in [
            IdentityId::TricomiRatio { a, c },
            IdentityId::TricomiCm1 { a, c },
            IdentityId::TricomiAp1 { a, c },
            IdentityId::TricomiCp1 { a, c },
            IdentityId::TricomiAm1 { a, c },
        ] {
            for z in [0.5, 1.0, 5.0] {
                let res = residual(&rec(id), z, 1e-9).unwrap();
                assert!(res < 1e-6, "{id} z={z}: {res:e}");
            }
        }
    }
}

#[test]
fn sigma_from_inner_laplace() {
    // ς_μ(s) = (μ/s)e^{−1/(2s)}I_μ(1/(2s)) = μ g(s)
    let want = [
        (0.5, [0.626532947203779823, 0.178317917418729468, 0.0228683166075523384]),
        (1.0, [1.03292324765633273, 0.156420803184871697, 0.00905968936176186500]),
        (
            3.0,
            [0.584080415276450332, 0.00481302452269638253, 0.0000113175385352839575],
        ),
    ];
    for (mu, vals) in want {
        let r = rec(IdentityId::IkEqual { mu });
        for (s, w) in [0.2, 1.0, 5.0].into_iter().zip(vals) {
            let g = laplace_density(&r, s, 1e-12).unwrap().value;
            assert!(rel(mu * g, w) < 1e-8, "mu={mu} s={s}: {} vs {w}", mu * g);
        }
    }
}

#[test]
fn mcdonald_products() {
    for (mu, x, y, w) in [
        (1.0, 1.0, 0.3, 1.83942370036311317),
        (0.5, 2.0, 1.0, 0.0552995291481267027),
        (2.0, 3.0, 2.5, 0.00747107297426682240),
    ] {
        let r = rec(IdentityId::McDonald { mu, y });
        assert!(rel(stieltjes_rhs(&r, x, 1e-12).unwrap().value, w) < 1e-8);
        assert!(rel(lhs_value(&r, x).unwrap(), w) < 1e-12);
    }
}

#[test]
fn angular_products() {
    for (mu, z, b, w) in [
        (0.5, 1.0, 1.0, 0.879234196046187747),
        (0.0, 2.0, 0.5, 2.42430106122073989),
        (2.5, 3.0, 1.5, 0.260126233719120173),
        (1.0, 0.1, 4.0, 0.488583478463022535),
    ] {
        let r = rec(IdentityId::IProductAngle { mu, b });
        let v = stieltjes_rhs(&r, z, 1e-12).unwrap().value;
        assert!(rel(v, w) < 1e-9, "mu={mu} z={z} b={b}: {v} vs {w}");
    }
}

#[test]
fn perturbed_kernel_detected() {
    for id in [
        IdentityId::IkEqual { mu: 0.0 },
        IdentityId::KRatio { mu: 1.0 },
        IdentityId::TricomiRatio { a: 1.5, c: 0.5 },
    ] {
        let r = rec(id).with_kernel_scale(1.01);
        let res = residual(&r, 1.0, 1e-9).unwrap();
        assert!((res - 1e-2).abs() < 2e-3, "{id}: {res:e}");
    }
}

#[test]
fn out_of_domain_rejected() {
    let mut m = BTreeMap::new();
    m.insert("mu".to_string(), -1.5);
    let id = IdentityId::from_params("IK_EQUAL", &m).unwrap();
    assert!(IdentityRecord::new(id).is_err());
    assert!(IdentityId::from_params("IK_EQUAL", &BTreeMap::new()).is_err());
    assert!(IdentityId::from_params("NOPE", &m).is_err());
    assert!(lhs_value(&rec(IdentityId::IkEqual { mu: 0.0 }), -1.0).is_err());
}

#[test]
fn inversion_matches_closed_kernels() {
    let ladder = [1e-2, 1e-3, 1e-4];
    let r = rec(IdentityId::IkEqual { mu: 0.0 });
    assert!(rel(inversion_check(&r, 2.0, &ladder).unwrap(), 0.312630991455144691) < 1e-5);
    let r = rec(IdentityId::KRatio { mu: 1.0 });
    assert!(rel(inversion_check(&r, 1.0, &ladder).unwrap(), 0.252062186089381890) < 1e-5);
    // J_{1/2}(x) = √(2/(πx)) sin x
    let r = rec(IdentityId::IExp { mu: 0.5, a: 1.0 });
    for (t, w) in [
        (0.5, 0.151581642768687554),
        (1.5, 0.183512097364376123),
        (4.0, 0.104995846028094187),
    ] {
        assert!(rel(inversion_check(&r, t, &ladder).unwrap(), w) < 1e-5);
        assert!(rel(kernel_density(&r, t).unwrap(), w) < 1e-12);
    }
}

#[test]
fn inversion_over_catalog() {
    for id in IdentityId::defaults().into_iter().filter(|i| i.is_stieltjes()) {
        let r = rec(id);
        for t in [0.3, 2.0, 7.5] {
            let k = kernel_density(&r, t).unwrap();
            let j = inversion_check(&r, t, &[1e-2, 1e-3, 1e-4]).unwrap();
            assert!((k - j).abs() < 1e-5 * k.abs().max(1e-3), "{id} t={t}: {k} {j}");
        }
    }
}

fn mass(r: &IdentityRecord) -> f64 {
    let spec = OscSpec::new(
        &r.osc_spec.sqrt_argument_frequencies,
        r.osc_spec.endpoint_exponent - 1.0,
        r.osc_spec.decay_exponent,
    );
    integrate_oscillatory(|t: f64| kernel_density(r, t).unwrap() / t, &spec, 1e-10)
        .unwrap()
        .value
}

#[test]
fn ii_exp_prefactored_mass() {
    for (mu, nu, a, b) in [(1.0, 0.5, 1.0, 2.0), (0.0, 0.0, 1.0, 1.0), (2.0, -0.5, 0.5, 1.5)] {
        let r = rec(IdentityId::IiExp { mu, nu, a, b });
        let pre = 2f64.powf(mu + nu) * gamma(mu + 1.0).unwrap() * gamma(nu + 1.0).unwrap() / (a.powf(mu) * b.powf(nu));
        assert!((mass(&r) * pre - 1.0).abs() < 1e-7, "{mu} {nu} {a} {b}");
    }
}

#[test]
fn kk_prod_mass() {
    for (mu, nu, a, b) in [(0.5, 0.75, 1.0, 2.0), (1.0, 0.5, 0.5, 0.5)] {
        let r = rec(IdentityId::KkProd { mu, nu, a, b });
        // the unnormalized kernel t^{(μ+ν)/2}[J_μY_ν + J_νY_μ] is −4/π times ours
        let m = -4.0 / PI * mass(&r);
        let w = -2f64.powf(mu + nu) * gamma(mu).unwrap() * gamma(nu).unwrap() / (PI * a.powf(mu) * b.powf(nu));
        assert!(rel(m, w) < 1e-7, "{mu} {nu}: {m} vs {w}");
    }
}

#[test]
fn two_fold_agrees() {
    for id in [
        IdentityId::IkEqual { mu: 1.0 },
        IdentityId::KRatio { mu: 1.0 },
        IdentityId::IExp { mu: 0.5, a: 1.0 },
    ] {
        let r = rec(id);
        for z in [0.5, 2.0] {
            let v = two_fold_laplace(&r, z, 1e-9).unwrap().value;
            let l = lhs_value(&r, z).unwrap();
            assert!(rel(v, l) < 1e-6, "{id} z={z}: {v} vs {l}");
        }
    }
    let r = rec(IdentityId::TricomiRatio { a: 1.5, c: 0.5 });
    assert!(matches!(
        two_fold_laplace(&r, 1.0, 1e-8),
        Err(besselcm::error::Error::Unsupported(_))
    ));
}

#[test]
fn csv_row_shape() {
    let r = verify_point(&rec(IdentityId::IkEqual { mu: 0.0 }), 1.0, 1e-9).unwrap();
    assert_eq!(r.params, "mu=0");
    assert_eq!(
        r.to_csv().split(',').count(),
        VerificationRow::CSV_HEADER.split(',').count()
    );
    assert!(r.to_csv().starts_with("IK_EQUAL,mu=0,"));
}

#[test]
fn serde_round_trip() {
    for id in IdentityId::defaults() {
        let s = serde_json::to_string(&id).unwrap();
        assert_eq!(serde_json::from_str::<IdentityId>(&s).unwrap(), id);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ik_equal_kernel_nonnegative(mu in -0.99f64..6.0, t in 1e-4f64..1e4) {
        let k = kernel_density(&rec(IdentityId::IkEqual { mu }), t).unwrap();
        prop_assert!(k >= 0.0);
    }

    #[test]
    fn k_ratio_kernel_positive(mu in 0.0f64..6.0, t in 1e-6f64..1e6) {
        let k = kernel_density(&rec(IdentityId::KRatio { mu }), t).unwrap();
        prop_assert!(k > 0.0);
    }

    #[test]
    fn kk_prod_equal_orders(mu in 0.0f64..2.0, a in 0.1f64..3.0, t in 1e-3f64..1e3) {
        let r = rec(IdentityId::KkProd { mu, nu: mu, a, b: a });
        let (j, y) = bessel_jy(mu, a * t.sqrt()).unwrap();
        let w = -0.5 * PI * t.powf(mu) * j * y;
        let k = kernel_density(&r, t).unwrap();
        prop_assert!((k - w).abs() < 1e-10 * (1.0 + w.abs()), "{k} vs {w}");
    }

    #[test]
    fn ik_equal_forward(mu in -0.9f64..4.0, z in 0.01f64..100.0) {
        let res = residual(&rec(IdentityId::IkEqual { mu }), z, 1e-9).unwrap();
        prop_assert!(res < 1e-7, "residual {res:e}");
    }

    #[test]
    fn tricomi_ratio_forward(a in 0.2f64..4.0, c in -2.0f64..0.95, z in 0.05f64..20.0) {
        let res = residual(&rec(IdentityId::TricomiRatio { a, c }), z, 1e-10).unwrap();
        prop_assert!(res < 1e-7, "residual {res:e}");
    }
}
