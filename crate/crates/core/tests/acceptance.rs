//! Acceptance run: one PASS/FAIL line per criterion, then a single assertion
//! over all of them.

use besselcm::distributions::{kdist_mixing_kernel, Dist, DistSpec};
use besselcm::idtests::{self, HcmSubject, LTSpec};
use besselcm::quad::{integrate_singular_decay, integrate_singular_decay_scaled, numeric_laplace_scaled};
use besselcm::specfun::{bessel_i, bessel_jy, bessel_k, bessel_zero, bessel_zeros, kummer_m};
use besselcm::stieltjes::{self, log_grid, IdentityId, IdentityRecord, TolClass};
use std::f64::consts::PI;
use std::io::Write;

type Outcome = (bool, String);

// Tolerances, fixed.
const WRONSKIAN_TOL: f64 = 1e-10;
const J01: f64 = 2.404825557695773;
const J01_TOL: f64 = 1e-9;
const MASS_TOL: f64 = 1e-8;
const REDUCTION_TOL: f64 = 1e-12;
const LAPLACE_TOL: f64 = 1e-7;
const LAPLACE_TOL_KDIST: f64 = 1e-6;
const OMEGA_MASS_TOL: f64 = 1e-7;
const SIGMA_TOL: f64 = 1e-8;
const TRICOMI_TOL: f64 = 1e-6;
const TRICOMI_WRONSKIAN_TOL: f64 = 1e-9;
const PICK_MIN: f64 = -1e-12;
const LANDAU: f64 = 0.7857468704;
const LANDAU_TOL: f64 = 1e-8;
const INVERSION_TOL: f64 = 1e-5;
const ORDER: usize = 8;
const ABSMON_ORDER: usize = 6;

fn x_grid() -> Vec<f64> {
    log_grid(0.05, 50.0, 20)
}

fn w_grid() -> Vec<f64> {
    (1..=10).map(|k| 2.0 + 0.3 * k as f64).collect()
}

fn c1_special_functions() -> besselcm::Result<Outcome> {
    let mut worst = 0.0f64;
    for nu in [0.0, 0.3, 0.5, 1.0, 2.5] {
        for x in log_grid(0.1, 50.0, 20) {
            // scale factors cancel in the products
            let ik = bessel_i(nu, x, true)? * bessel_k(nu + 1.0, x, true)?
                + bessel_i(nu + 1.0, x, true)? * bessel_k(nu, x, true)?;
            worst = worst.max((x * ik - 1.0).abs());
            let (j0, y0) = bessel_jy(nu, x)?;
            let (j1, y1) = bessel_jy(nu + 1.0, x)?;
            worst = worst.max(((j1 * y0 - j0 * y1) * PI * x / 2.0 - 1.0).abs());
        }
    }
    let j = (bessel_zero(0.0, 1)? - J01).abs();
    let mut min_gap = f64::INFINITY;
    for mu in [0.51, 1.0, 3.0] {
        let z = bessel_zeros(mu, 50)?;
        for w in z.windows(2) {
            min_gap = min_gap.min(w[1] - w[0]);
        }
    }
    let ok = worst <= WRONSKIAN_TOL && j <= J01_TOL && min_gap > PI;
    Ok((
        ok,
        format!("wronskian {worst:.2e} (tol {WRONSKIAN_TOL:e}), |j01 err| {j:.2e}, min zero gap {min_gap:.12}"),
    ))
}

fn mass(d: &Dist) -> besselcm::Result<f64> {
    Ok(integrate_singular_decay_scaled(
        |t| d.pdf(t).unwrap_or(f64::NAN),
        d.endpoint_exponent().min(5.0),
        d.scale(),
        1e-12,
    )?
    .value)
}

fn c2_normalization() -> besselcm::Result<Outcome> {
    let sets = DistSpec::sample_sets();
    let mut worst = 0.0f64;
    let mut kinds = std::collections::BTreeMap::new();
    for s in &sets {
        worst = worst.max((mass(&Dist::new(*s)?)? - 1.0).abs());
        *kinds.entry(s.kind()).or_insert(0) += 1;
    }
    let mut red = 0.0f64;
    for (mu, a, b) in [(0.5, 1.0, 2.0), (-0.3, 0.5, 0.7), (2.0, 1.0, 1.5)] {
        let g1 = Dist::new(DistSpec::GenMcKay { mu, nu: mu + 1.0, a, b })?;
        let g2 = Dist::new(DistSpec::GenMcKay { mu, nu: mu + 2.0, a, b })?;
        let m1 = Dist::new(DistSpec::McKayI { mu, a, b })?;
        let m2 = Dist::new(DistSpec::McKayII { mu, a, b })?;
        for x in [0.1, 0.5, 1.0, 2.0, 5.0] {
            red = red.max((g1.pdf(x)? / m1.pdf(x)? - 1.0).abs());
            red = red.max((g2.pdf(x)? / m2.pdf(x)? - 1.0).abs());
        }
    }
    let enough = kinds.len() == 8 && kinds.values().all(|&n| n >= 5);
    let ok = enough && worst <= MASS_TOL && red <= REDUCTION_TOL;
    Ok((
        ok,
        format!(
            "{} sets over {} kinds, mass err {worst:.2e} (tol {MASS_TOL:e}), reduction err {red:.2e} (tol {REDUCTION_TOL:e})",
            sets.len(),
            kinds.len()
        ),
    ))
}

fn c3_laplace() -> besselcm::Result<Outcome> {
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut worst_k = 0.0f64;
    for s in DistSpec::sample_sets() {
        if matches!(s, DistSpec::NoncentralChiSq { .. }) {
            continue;
        }
        let d = Dist::new(s)?;
        let kd = matches!(s, DistSpec::KDist { .. });
        for x in [0.1, 1.0, 10.0] {
            let c = d.laplace_closed(x)?;
            let n = numeric_laplace_scaled(|t| d.pdf(t).unwrap_or(f64::NAN), x, 0.0, d.scale(), 1e-12)?.value;
            let e = (c - n).abs();
            if kd {
                worst_k = worst_k.max(e);
                ok &= e <= LAPLACE_TOL_KDIST;
            } else {
                worst = worst.max(e);
                ok &= e <= LAPLACE_TOL;
            }
        }
    }
    let mut om = 0.0f64;
    for (a, b) in [(1.5, 2.5), (0.7, 0.9), (3.0, 1.0)] {
        let w = kdist_mixing_kernel(a, b)?;
        let m = integrate_singular_decay(|t| w(t), -0.5, 1e-12)?.value;
        om = om.max((m - 1.0).abs());
    }
    ok &= om <= OMEGA_MASS_TOL;
    Ok((
        ok,
        format!(
            "LT err {worst:.2e} (tol {LAPLACE_TOL:e}), KDist {worst_k:.2e} (tol {LAPLACE_TOL_KDIST:e}), omega mass err {om:.2e} (tol {OMEGA_MASS_TOL:e})"
        ),
    ))
}

fn c4_catalog() -> besselcm::Result<Outcome> {
    let recs: Vec<_> = IdentityId::defaults()
        .into_iter()
        .map(IdentityRecord::new)
        .collect::<besselcm::Result<_>>()?;
    let zs = log_grid(1e-2, 1e2, 7);
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let mut ok = true;
    let mut worst = [0.0f64; 2];
    for (i, z, row) in stieltjes::verify_catalog(&recs, &zs, |c| c.value(), threads) {
        let row = row?;
        let k = usize::from(recs[i].tol_class == TolClass::Hard);
        worst[k] = worst[k].max(row.residual);
        if !row.passes() {
            ok = false;
            eprintln!("  {} z={z}: residual {:e}", recs[i].id, row.residual);
        }
    }
    let mut sig = 0.0f64;
    for mu in [0.5, 1.0, 3.0] {
        let r = IdentityRecord::new(IdentityId::IkEqual { mu })?;
        for s in [0.2, 1.0, 5.0] {
            let g = stieltjes::laplace_density(&r, s, 1e-12)?.value * mu;
            let h = 0.5 / s;
            let want = mu / s * bessel_i(mu, h, true)?;
            sig = sig.max((g - want).abs() / want);
        }
    }
    ok &= sig <= SIGMA_TOL;
    Ok((
        ok,
        format!(
            "{} entries x {} z, worst tight {:.2e} (tol {:e}), worst hard {:.2e} (tol {:e}), sigma err {sig:.2e} (tol {SIGMA_TOL:e})",
            recs.len(),
            zs.len(),
            worst[0],
            TolClass::Tight.value(),
            worst[1],
            TolClass::Hard.value()
        ),
    ))
}

fn c5_tricomi() -> besselcm::Result<Outcome> {
    let mut worst = 0.0f64;
    let mut wr = 0.0f64;
    for (a, c) in [(1.5, 0.5), (2.0, -0.5), (0.7, 0.2)] {
        for id in [
            IdentityId::TricomiRatio { a, c },
            IdentityId::TricomiCm1 { a, c },
            IdentityId::TricomiAp1 { a, c },
            IdentityId::TricomiCp1 { a, c },
            IdentityId::TricomiAm1 { a, c },
        ] {
            let rec = IdentityRecord::new(id)?;
            for z in [0.5, 1.0, 5.0] {
                worst = worst.max(stieltjes::residual(&rec, z, 1e-9)?);
            }
        }
        // y1 = M(a,c,x), y2 = x^{1−c} M(a−c+1, 2−c, x)
        for x in [0.5, 1.0, 5.0] {
            let y1 = kummer_m(a, c, x)?;
            let d1 = a / c * kummer_m(a + 1.0, c + 1.0, x)?;
            let b = a - c + 1.0;
            let m2 = kummer_m(b, 2.0 - c, x)?;
            let y2 = x.powf(1.0 - c) * m2;
            let d2 = (1.0 - c) * x.powf(-c) * m2 + x.powf(1.0 - c) * b / (2.0 - c) * kummer_m(b + 1.0, 3.0 - c, x)?;
            let want = (1.0 - c) * x.powf(-c) * x.exp();
            wr = wr.max(((y1 * d2 - y2 * d1) - want).abs() / want.abs());
        }
    }
    let ok = worst <= TRICOMI_TOL && wr <= TRICOMI_WRONSKIAN_TOL;
    Ok((
        ok,
        format!("worst residual {worst:.2e} (tol {TRICOMI_TOL:e}), Wronskian {wr:.2e} (tol {TRICOMI_WRONSKIAN_TOL:e})"),
    ))
}

fn id_transforms() -> Vec<LTSpec> {
    let mut v = LTSpec::defaults();
    for d in [
        DistSpec::McKayI {
            mu: 1.0,
            a: 1.0,
            b: 2.0,
        },
        DistSpec::McKayII {
            mu: 1.0,
            a: 1.0,
            b: 2.0,
        },
        DistSpec::GenMcKay {
            mu: 1.0,
            nu: 1.5,
            a: 1.0,
            b: 2.0,
        },
        DistSpec::SqMcKay {
            mu: 0.25,
            a: 1.0,
            b: 3.0,
        },
        DistSpec::KDist {
            alpha: 1.5,
            beta: 2.5,
            mu: 1.0,
        },
        DistSpec::KDist {
            alpha: 2.0,
            beta: 2.0,
            mu: 1.0,
        },
        DistSpec::GIG {
            mu: 0.5,
            a: 1.0,
            b: 2.0,
        },
        DistSpec::GIG {
            mu: -1.5,
            a: 1.0,
            b: 2.0,
        },
        DistSpec::GammaQuotient {
            alpha: 1.5,
            beta: 1.0,
            alpha0: 2.0,
            beta0: 1.0,
        },
    ] {
        v.push(LTSpec::Dist { d });
    }
    v
}

/// McKayI, KDist, GIG, RHO, IKMU, THETA.
fn sd_transforms() -> Vec<LTSpec> {
    vec![
        LTSpec::Dist {
            d: DistSpec::McKayI {
                mu: 1.0,
                a: 1.0,
                b: 2.0,
            },
        },
        LTSpec::Dist {
            d: DistSpec::KDist {
                alpha: 1.5,
                beta: 2.5,
                mu: 1.0,
            },
        },
        LTSpec::Dist {
            d: DistSpec::GIG {
                mu: 0.5,
                a: 1.0,
                b: 2.0,
            },
        },
        LTSpec::Rho { mu: 1.0, a: 1.0 },
        LTSpec::Ikmu { mu: 1.0 },
        LTSpec::Theta {
            mu: 1.0,
            nu: 1.0,
            a: 1.0,
            b: 2.0,
        },
    ]
}

fn c6_ladder() -> besselcm::Result<Outcome> {
    let g = x_grid();
    let mut bad = Vec::new();
    let ids = id_transforms();
    for s in &ids {
        let r = idtests::bernstein_check(s, &g, ORDER)?;
        if !r.pass {
            bad.push(format!("bernstein {s} margin {:e}", r.worst_margin));
        }
    }
    let sds = sd_transforms();
    for s in &sds {
        for alpha in [0.25, 0.5, 0.75] {
            let r = idtests::selfdecomp_check(s, alpha, &g, ORDER)?;
            if !r.pass {
                bad.push(format!("selfdecomp {s} alpha={alpha} margin {:e}", r.worst_margin));
            }
        }
    }
    let n = ids.len() + 3 * sds.len();
    Ok((
        bad.is_empty(),
        format!("{} of {n} checks pass at order {ORDER}{}", n - bad.len(), list(&bad)),
    ))
}

fn list(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", bad.join(", "))
    }
}

fn c7_pick() -> besselcm::Result<Outcome> {
    let mut bad = Vec::new();
    let subjects = [
        LTSpec::Dist {
            d: DistSpec::McKayI {
                mu: 1.0,
                a: 1.0,
                b: 2.0,
            },
        },
        LTSpec::Rho { mu: 1.0, a: 1.0 },
        LTSpec::Ikmu { mu: 1.0 },
        LTSpec::Theta {
            mu: 1.0,
            nu: 1.0,
            a: 1.0,
            b: 2.0,
        },
        LTSpec::Dist {
            d: DistSpec::KDist {
                alpha: 1.5,
                beta: 2.5,
                mu: 1.0,
            },
        },
        LTSpec::Dist {
            d: DistSpec::GammaQuotient {
                alpha: 1.5,
                beta: 1.0,
                alpha0: 2.0,
                beta0: 1.0,
            },
        },
    ];
    for s in &subjects {
        let r = idtests::pick_check(s, &idtests::default_pick_grid(s)?)?;
        if r.min_im_value < PICK_MIN {
            bad.push(format!("{s} min {:.4e} at {:?}", r.min_im_value, r.witness));
        }
    }
    let zeta = LTSpec::Zeta {
        mu: 1.0,
        nu: 1.0,
        a: 1.0,
        b: 2.0,
    };
    let z = idtests::pick_check(&zeta, &idtests::default_pick_grid(&zeta)?)?;
    let found = z.witness.is_some() && z.min_im_value < 0.0;
    if !found {
        bad.push("no negative witness for ZETA".into());
    }
    Ok((
        bad.is_empty(),
        format!(
            "{} of {} positive (min >= {PICK_MIN:e}), ZETA witness {:?} value {:.4e}{}",
            subjects.len() - bad.len() + usize::from(!found),
            subjects.len(),
            z.witness,
            z.min_im_value,
            list(&bad)
        ),
    ))
}

fn c8_hcm() -> besselcm::Result<Outcome> {
    let mut bad = Vec::new();
    let gq = HcmSubject::Density {
        d: DistSpec::GammaQuotient {
            alpha: 1.5,
            beta: 1.0,
            alpha0: 2.0,
            beta0: 1.0,
        },
    };
    let r = idtests::hcm_check(&gq, &[0.5, 1.0, 2.0], &w_grid(), ORDER)?;
    if !r.pass {
        bad.push("gamma-quotient HCM".to_string());
    }
    for (mu, lambda, u) in [(1.0, 3.0, 1.0), (1.0, 6.0, 1.0), (2.0, 5.0, 1.0)] {
        let p = idtests::noncentral_profile_check(mu, lambda, u, &w_grid())?;
        if !p.pass {
            bad.push(format!(
                "noncentral (mu={mu}, lambda={lambda}, u={u}) decreasing {} (claimed {}) convex {} (claimed {})",
                p.decreasing, p.decreasing_claimed, p.convex, p.convex_claimed
            ));
        }
    }
    for (mu, u) in [(0.0, 1.0), (1.0, 1.0), (2.5, 3.0)] {
        let a = idtests::absmon_check(mu, u, &w_grid(), ABSMON_ORDER)?;
        if !a.pass {
            bad.push(format!("absmon mu={mu} u={u} margin {:e}", a.worst_margin));
        }
    }
    Ok((bad.is_empty(), format!("7 checks, {} failing{}", bad.len(), list(&bad))))
}

fn c9_landau() -> besselcm::Result<Outcome> {
    let (c, t) = idtests::landau_constant_with_argmax()?;
    let e = (c - LANDAU).abs();
    let mut margin = f64::INFINITY;
    for mu in [0.5, 1.0, 3.0] {
        for x in x_grid() {
            let r = x.sqrt();
            let p = bessel_i(mu, r, true)? * bessel_k(mu, r, true)?;
            let bound = PI * c * c / (3f64.sqrt() * x.powf(2.0 / 3.0));
            margin = margin.min(1.0 - p / bound);
        }
    }
    let ok = e <= LANDAU_TOL && margin >= 0.0;
    Ok((
        ok,
        format!("c_L = {c:.13} at t = {t:.5}, err {e:.2e} (tol {LANDAU_TOL:e}), bound margin {margin:.4}"),
    ))
}

fn c10_inversion() -> besselcm::Result<Outcome> {
    let mut worst = 0.0f64;
    let mut n = 0;
    for id in IdentityId::defaults() {
        if !matches!(
            id,
            IdentityId::IkEqual { .. } | IdentityId::IExp { .. } | IdentityId::KRatio { .. }
        ) {
            continue;
        }
        n += 1;
        let rec = IdentityRecord::new(id)?;
        for t in [0.3, 2.0, 7.5] {
            let k = stieltjes::kernel_density(&rec, t)?;
            let j = stieltjes::inversion_check(&rec, t, &[1e-2, 1e-3, 1e-4])?;
            worst = worst.max((k - j).abs() / k.abs().max(1e-3));
        }
    }
    Ok((
        n == 3 && worst <= INVERSION_TOL,
        format!("{n} entries x 3 t, worst {worst:.2e} (tol {INVERSION_TOL:e})"),
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> besselcm::Result<Outcome>); 10] = [
        ("special-function floor", c1_special_functions),
        ("distribution normalization", c2_normalization),
        ("Laplace consistency", c3_laplace),
        ("Stieltjes catalog", c4_catalog),
        ("Tricomi suite", c5_tricomi),
        ("infinite-divisibility ladder", c6_ladder),
        ("Pick suite", c7_pick),
        ("HCM/profile suite", c8_hcm),
        ("Landau", c9_landau),
        ("inversion cross-check", c10_inversion),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t0 = std::time::Instant::now();
        let (ok, detail) = match f() {
            Ok(o) => o,
            Err(e) => (false, format!("error: {e}")),
        };
        let line = format!(
            "criterion {:>2} {}: {name}: {detail} [{:.1}s]\n",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            t0.elapsed().as_secs_f64()
        );
        // bypass libtest capture so the lines always show
        let _ = std::io::stderr().write_all(line.as_bytes());
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
