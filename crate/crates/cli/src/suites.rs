//! The checks behind `verify`, one job per row.

use crate::report::{Job, Outcome, RowVerdict};
use besselcm::config::RunConfig;
use besselcm::distributions::{Dist, DistSpec};
use besselcm::idtests::{self, CMReport, HcmSubject, LTSpec, Verdict};
use besselcm::quad::{integrate_singular_decay_scaled, numeric_laplace_scaled};
use besselcm::specfun::{bessel_i, bessel_k};
use besselcm::stieltjes::{self, IdentityId, IdentityRecord};
use std::sync::Arc;

pub const SCOPES: [&str; 4] = ["identities", "distributions", "idtests", "all"];

fn kv(p: &[(&str, f64)]) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

fn cm_outcome(r: &CMReport) -> Outcome {
    let v = match r.verdict {
        Verdict::Pass => RowVerdict::Pass,
        Verdict::Fail => RowVerdict::Fail,
        Verdict::Inconclusive => RowVerdict::Inconclusive,
    };
    let v = if r.pass {
        RowVerdict::Pass
    } else if v == RowVerdict::Pass {
        RowVerdict::Fail
    } else {
        v
    };
    Outcome::new(v)
        .margin(r.worst_margin)
        .tolerance(r.slack)
        .witness(r.witness.map(|(x, n)| vec![x, n as f64]))
        .note(format!("{:?} ladder, order {}", r.method, r.max_order).to_lowercase())
}

pub fn identity_jobs(cfg: &RunConfig) -> besselcm::Result<Vec<Job>> {
    let zs = cfg.z_grid.points();
    let mut recs: Vec<(IdentityRecord, bool)> = Vec::new();
    for id in IdentityId::defaults() {
        recs.push((IdentityRecord::new(id)?, false));
    }
    if cfg.extended_domain {
        let id = IdentityId::IkProd {
            mu: 0.5,
            nu: 1.8,
            a: 1.0,
            b: 2.0,
        };
        recs.push((IdentityRecord::new_extended(id)?, true));
    }
    let mut jobs = Vec::new();
    for (rec, exploratory) in recs {
        let rec = Arc::new(rec);
        let name = rec.id.name();
        let tol = cfg.tol_for(rec.tol_class);
        for &z in &zs {
            let r = rec.clone();
            let params = format!("{};z={z}", kv(&rec.id.params()));
            jobs.push(
                Job::new("identities", format!("identity-{name}"), params, move || {
                    let row = stieltjes::verify_point(&r, z, 0.1 * tol)?;
                    let v = if row.passes_with(tol) {
                        RowVerdict::Pass
                    } else if !row.converged {
                        RowVerdict::Inconclusive
                    } else {
                        RowVerdict::Fail
                    };
                    Ok(Outcome::new(v).margin(row.residual).tolerance(tol))
                })
                .exploratory(exploratory),
            );
        }
        if rec.id.is_stieltjes() {
            for t in [0.3, 2.0, 7.5] {
                let r = rec.clone();
                let params = format!("{};t={t}", kv(&rec.id.params()));
                jobs.push(
                    Job::new("identities", format!("inversion-{name}"), params, move || {
                        let k = stieltjes::kernel_density(&r, t)?;
                        let j = stieltjes::inversion_check(&r, t, &[1e-2, 1e-3, 1e-4])?;
                        let e = (k - j).abs() / k.abs().max(1e-3);
                        let v = if e <= 1e-5 { RowVerdict::Pass } else { RowVerdict::Fail };
                        Ok(Outcome::new(v).margin(e).tolerance(1e-5))
                    })
                    .exploratory(exploratory),
                );
            }
        }
    }
    Ok(jobs)
}

pub fn distribution_jobs(_cfg: &RunConfig) -> besselcm::Result<Vec<Job>> {
    let mut jobs = Vec::new();
    for s in DistSpec::sample_sets() {
        let params = kv(&s.params());
        jobs.push(Job::new(
            "distributions",
            format!("{}-mass", s.kind()),
            params.clone(),
            move || {
                let d = Dist::new(s)?;
                let m = integrate_singular_decay_scaled(
                    |t| d.pdf(t).unwrap_or(f64::NAN),
                    d.endpoint_exponent().min(5.0),
                    d.scale(),
                    1e-12,
                )?;
                let e = (m.value - 1.0).abs();
                Ok(
                    Outcome::new(if e <= 1e-8 { RowVerdict::Pass } else { RowVerdict::Fail })
                        .margin(e)
                        .tolerance(1e-8),
                )
            },
        ));
        if matches!(s, DistSpec::NoncentralChiSq { .. }) {
            continue;
        }
        let tol = if matches!(s, DistSpec::KDist { .. }) {
            1e-6
        } else {
            1e-7
        };
        jobs.push(Job::new(
            "distributions",
            format!("{}-laplace", s.kind()),
            params,
            move || {
                let d = Dist::new(s)?;
                let mut worst = 0.0f64;
                for x in [0.1, 1.0, 10.0] {
                    let c = d.laplace_closed(x)?;
                    let n = numeric_laplace_scaled(|t| d.pdf(t).unwrap_or(f64::NAN), x, 0.0, d.scale(), 1e-12)?;
                    worst = worst.max((c - n.value).abs());
                }
                Ok(Outcome::new(if worst <= tol {
                    RowVerdict::Pass
                } else {
                    RowVerdict::Fail
                })
                .margin(worst)
                .tolerance(tol))
            },
        ));
    }
    for (mu, a, b) in [(0.5, 1.0, 2.0), (-0.3, 0.5, 0.7), (2.0, 1.0, 1.5)] {
        for (shift, name) in [(1.0, "genmckay-reduces-mckay1"), (2.0, "genmckay-reduces-mckay2")] {
            let params = kv(&[("mu", mu), ("a", a), ("b", b)]);
            jobs.push(Job::new("distributions", name, params, move || {
                let g = Dist::new(DistSpec::GenMcKay {
                    mu,
                    nu: mu + shift,
                    a,
                    b,
                })?;
                let m = if shift == 1.0 {
                    Dist::new(DistSpec::McKayI { mu, a, b })?
                } else {
                    Dist::new(DistSpec::McKayII { mu, a, b })?
                };
                let mut worst = 0.0f64;
                for x in [0.1, 0.5, 1.0, 2.0, 5.0] {
                    let (p, q) = (g.pdf(x)?, m.pdf(x)?);
                    worst = worst.max((p - q).abs() / q);
                }
                Ok(Outcome::new(if worst <= 1e-12 {
                    RowVerdict::Pass
                } else {
                    RowVerdict::Fail
                })
                .margin(worst)
                .tolerance(1e-12))
            }));
        }
    }
    Ok(jobs)
}

fn subject(s: &LTSpec) -> String {
    match s {
        LTSpec::Dist { d } => d.kind().to_string(),
        _ => s.name().to_ascii_lowercase(),
    }
}

fn lt_params(s: &LTSpec) -> String {
    kv(&s.params())
}

/// Laws whose Laplace transforms are asserted infinitely divisible.
pub fn proven_id_transforms() -> Vec<LTSpec> {
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

/// Transforms asserted self-decomposable.
pub fn proven_sd_transforms() -> Vec<LTSpec> {
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

/// Transforms asserted to be generalized gamma convolutions.
pub fn proven_ggc_transforms() -> Vec<LTSpec> {
    vec![
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
    ]
}

pub const NONCENTRAL_TRIPLES: [(f64, f64, f64); 3] = [(1.0, 3.0, 1.0), (1.0, 6.0, 1.0), (2.0, 5.0, 1.0)];

pub fn w_grid() -> Vec<f64> {
    (1..=10).map(|k| 2.0 + 0.3 * k as f64).collect()
}

pub fn idtest_jobs(cfg: &RunConfig) -> besselcm::Result<Vec<Job>> {
    let grid = Arc::new(cfg.grid.points());
    let order = cfg.max_order;
    let mut jobs = Vec::new();
    for s in proven_id_transforms() {
        let g = grid.clone();
        jobs.push(Job::new(
            "idtests",
            format!("{}-bernstein", subject(&s)),
            lt_params(&s),
            move || Ok(cm_outcome(&idtests::bernstein_check(&s, &g, order)?)),
        ));
    }
    if cfg.outside_proven_region {
        let s = LTSpec::Dist {
            d: DistSpec::GenMcKay {
                mu: 1.0,
                nu: 3.0,
                a: 1.0,
                b: 2.0,
            },
        };
        let g = grid.clone();
        jobs.push(
            Job::new("idtests", "genmckay-bernstein", lt_params(&s), move || {
                Ok(cm_outcome(&idtests::bernstein_check(&s, &g, order)?))
            })
            .exploratory(true),
        );
    }
    for s in proven_sd_transforms() {
        for alpha in [0.25, 0.5, 0.75] {
            let g = grid.clone();
            let params = format!("{};alpha={alpha}", lt_params(&s));
            jobs.push(Job::new(
                "idtests",
                format!("{}-selfdecomp", subject(&s)),
                params,
                move || Ok(cm_outcome(&idtests::selfdecomp_check(&s, alpha, &g, order)?)),
            ));
        }
    }
    for s in proven_ggc_transforms() {
        jobs.push(Job::new(
            "idtests",
            format!("{}-pick", subject(&s)),
            lt_params(&s),
            move || {
                let r = idtests::pick_check(&s, &idtests::default_pick_grid(&s)?)?;
                let v = if r.pass { RowVerdict::Pass } else { RowVerdict::Fail };
                Ok(Outcome::new(v)
                    .margin(r.min_im_value)
                    .tolerance(r.slack)
                    .witness(r.witness.map(|(x, y)| vec![x, y])))
            },
        ));
    }
    let zeta = LTSpec::Zeta {
        mu: 1.0,
        nu: 1.0,
        a: 1.0,
        b: 2.0,
    };
    jobs.push(Job::new("idtests", "zeta-pick", lt_params(&zeta), move || {
        let r = idtests::pick_check(&zeta, &idtests::default_pick_grid(&zeta)?)?;
        let v = if r.witness.is_some() {
            RowVerdict::ExpectedFail
        } else {
            RowVerdict::UnexpectedPass
        };
        Ok(Outcome::new(v)
            .margin(r.min_im_value)
            .tolerance(r.slack)
            .witness(r.witness.map(|(x, y)| vec![x, y]))
            .note("asserted not a generalized gamma convolution"))
    }));
    let us = [0.5, 1.0, 2.0];
    let hcm: Vec<(String, HcmSubject)> = vec![
        (
            "gammaquotient-hcm".into(),
            HcmSubject::Density {
                d: DistSpec::GammaQuotient {
                    alpha: 1.5,
                    beta: 1.0,
                    alpha0: 2.0,
                    beta0: 1.0,
                },
            },
        ),
        (
            "kdist-hcm".into(),
            HcmSubject::Density {
                d: DistSpec::KDist {
                    alpha: 1.5,
                    beta: 2.5,
                    mu: 1.0,
                },
            },
        ),
        (
            "gig-hcm".into(),
            HcmSubject::Density {
                d: DistSpec::GIG {
                    mu: 0.5,
                    a: 1.0,
                    b: 2.0,
                },
            },
        ),
        (
            "gig-lt-hcm".into(),
            HcmSubject::Transform {
                lt: LTSpec::Dist {
                    d: DistSpec::GIG {
                        mu: 0.5,
                        a: 1.0,
                        b: 2.0,
                    },
                },
            },
        ),
    ];
    for (name, sub) in hcm {
        let params = match sub {
            HcmSubject::Density { d } => kv(&d.params()),
            HcmSubject::Transform { lt } => lt_params(&lt),
        };
        let ord = if matches!(
            sub,
            HcmSubject::Density {
                d: DistSpec::GammaQuotient { .. }
            }
        ) {
            order
        } else {
            order.min(6)
        };
        jobs.push(Job::new("idtests", name, params, move || {
            let r = idtests::hcm_check(&sub, &us, &w_grid(), ord)?;
            let worst = r
                .rows
                .iter()
                .map(|x| x.report.worst_margin)
                .fold(f64::INFINITY, f64::min);
            let bad = r.rows.iter().find(|x| !x.report.pass);
            let mut o = match bad {
                None => Outcome::new(RowVerdict::Pass),
                Some(b) => cm_outcome(&b.report).witness(b.report.witness.map(|(w, n)| vec![b.u, w, n as f64])),
            };
            o.margin = Some(worst);
            Ok(o.note(format!("u in {us:?}, order {ord}")))
        }));
    }
    for (mu, lambda, u) in NONCENTRAL_TRIPLES {
        let params = kv(&[("mu", mu), ("lambda", lambda), ("u", u)]);
        jobs.push(Job::new("idtests", "ncchisq-profile", params, move || {
            let r = idtests::noncentral_profile_check(mu, lambda, u, &w_grid())?;
            let max_d1 = r.d1.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let min_d2 = r.d2.iter().cloned().fold(f64::INFINITY, f64::min);
            Ok(
                Outcome::new(if r.pass { RowVerdict::Pass } else { RowVerdict::Fail }).note(format!(
                    "decreasing {} (claimed {}), convex {} (claimed {}), max d1 {max_d1:e}, min d2 {min_d2:e}",
                    r.decreasing, r.decreasing_claimed, r.convex, r.convex_claimed
                )),
            )
        }));
    }
    for (mu, u) in [(0.0, 1.0), (1.0, 1.0), (2.5, 3.0)] {
        let params = kv(&[("mu", mu), ("u", u)]);
        let ord = order.min(6);
        jobs.push(Job::new("idtests", "iproduct-absmon", params, move || {
            Ok(cm_outcome(&idtests::absmon_check(mu, u, &w_grid(), ord)?))
        }));
    }
    jobs.push(Job::new("idtests", "landau", "", || {
        let c = idtests::landau_constant()?;
        let e = (c - 0.7857468704).abs();
        Ok(
            Outcome::new(if e <= 1e-8 { RowVerdict::Pass } else { RowVerdict::Fail })
                .margin(e)
                .tolerance(1e-8)
                .note(format!("c_L = {c:.12}")),
        )
    }));
    for mu in [0.5, 1.0, 3.0] {
        jobs.push(Job::new("idtests", "landau-bound", kv(&[("mu", mu)]), move || {
            let m = landau_bound_margin(mu, &besselcm::stieltjes::log_grid(0.05, 50.0, 20))?;
            Ok(Outcome::new(if m >= 0.0 { RowVerdict::Pass } else { RowVerdict::Fail }).margin(m))
        }));
    }
    Ok(jobs)
}

/// min over the grid of 1 − I_μ(√x)K_μ(√x)·√3·x^{2/3}/(π c_L²).
pub fn landau_bound_margin(mu: f64, grid: &[f64]) -> besselcm::Result<f64> {
    let c = idtests::landau_constant()?;
    let mut m = f64::INFINITY;
    for &x in grid {
        let r = x.sqrt();
        let p = bessel_i(mu, r, true)? * bessel_k(mu, r, true)?;
        m = m.min(1.0 - p * 3f64.sqrt() * x.powf(2.0 / 3.0) / (std::f64::consts::PI * c * c));
    }
    Ok(m)
}

pub fn jobs_for(scope: &str, cfg: &RunConfig) -> besselcm::Result<Vec<Job>> {
    Ok(match scope {
        "identities" => identity_jobs(cfg)?,
        "distributions" => distribution_jobs(cfg)?,
        "idtests" => idtest_jobs(cfg)?,
        _ => {
            let mut v = identity_jobs(cfg)?;
            v.extend(distribution_jobs(cfg)?);
            v.extend(idtest_jobs(cfg)?);
            v
        }
    })
}

/// Keeps jobs whose check id equals one of `only`, or starts with it when
/// the pattern ends in `*`.
pub fn filter(jobs: Vec<Job>, only: &[String]) -> Vec<Job> {
    if only.is_empty() {
        return jobs;
    }
    jobs.into_iter()
        .filter(|j| {
            only.iter().any(|p| match p.strip_suffix('*') {
                Some(pre) => j.check.starts_with(pre),
                None => j.check == *p,
            })
        })
        .collect()
}
