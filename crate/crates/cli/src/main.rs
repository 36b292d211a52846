//! `besselcm`: evaluate functions and distributions, verify the identity
//! catalog and the infinite-divisibility suites, dump profiles and tables.
//!
//! Exit codes: 0 pass, 1 check failure, 2 usage error, 3 non-convergence.

mod report;
mod suites;

use besselcm::config::{OutputFormat, RunConfig};
use besselcm::distributions::{parse_kv, Dist, DistSpec};
use besselcm::idtests::{self, LTSpec, DEFAULT_ML_TERMS};
use besselcm::specfun;
use besselcm::stieltjes::{self, IdentityId, IdentityRecord};
use besselcm::Error;
use clap::{Args, Parser, Subcommand};
use report::{Envelope, Summary};
use serde_json::json;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(
    name = "besselcm",
    version,
    about = "Modified-Bessel distributions, Stieltjes identities and infinite-divisibility checks"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Default)]
struct Opts {
    /// Key-value config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Residual bound for tight-class identities.
    #[arg(long, global = true)]
    tol_tight: Option<f64>,
    /// Residual bound for hard-class identities.
    #[arg(long, global = true)]
    tol_hard: Option<f64>,
    /// x grid for the infinite-divisibility checks, lo:hi:n (log-spaced).
    #[arg(long, global = true)]
    grid: Option<String>,
    /// z grid for identities and profiles, lo:hi:n (log-spaced).
    #[arg(long, global = true)]
    z_grid: Option<String>,
    #[arg(long, global = true)]
    max_order: Option<usize>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// json or csv.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Omit timings so identical runs give identical output.
    #[arg(long, global = true)]
    stable: bool,
    /// Add exploratory rows on extended identity domains.
    #[arg(long, global = true)]
    extended_domain: bool,
    /// Add exploratory rows outside the proven parameter regions.
    #[arg(long, global = true)]
    outside_proven_region: bool,
    /// Inconclusive rows do not fail the run.
    #[arg(long, global = true)]
    allow_inconclusive: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate one quantity: `eval bessel_k nu=0.5 x=1`, `eval pdf kind=kdist alpha=1 beta=2 mu=1 x=0.5`,
    /// `eval lhs id=ik_equal mu=0 z=1`.
    Eval { name: String, params: Vec<String> },
    /// Run check suites: identities, distributions, idtests or all.
    Verify {
        scope: String,
        /// Only these check ids (repeatable; a trailing * matches a prefix).
        #[arg(long)]
        only: Vec<String>,
    },
    /// Tabulate an identity (z, lhs, rhs, residual) or a transform (x, L, φ′) over the z grid.
    Profile { target: String, params: Vec<String> },
    /// Table of positive zeros j_{ν,n}.
    Zeros {
        #[arg(long, default_value_t = 0.0)]
        nu: f64,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// The Landau constant sup t^{1/3} J₀(t).
    Landau,
}

#[derive(Debug)]
enum Fail {
    Usage(String),
    Numeric(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Convergence { .. } | Error::Evaluation { .. } | Error::Overflow(_) => Fail::Numeric(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

fn build_config(o: &Opts) -> Result<RunConfig, Fail> {
    let mut c = RunConfig::default();
    if let Some(p) = &o.config {
        let text = std::fs::read_to_string(p).map_err(|e| Fail::Usage(format!("{}: {e}", p.display())))?;
        c.merge_text(&text)?;
    }
    let mut set = |k: &str, v: Option<String>| -> Result<(), Fail> {
        if let Some(v) = v {
            c.set(k, &v)?;
        }
        Ok(())
    };
    set("tol_tight", o.tol_tight.map(|v| v.to_string()))?;
    set("tol_hard", o.tol_hard.map(|v| v.to_string()))?;
    set("grid", o.grid.clone())?;
    set("z_grid", o.z_grid.clone())?;
    set("max_order", o.max_order.map(|v| v.to_string()))?;
    set("threads", o.threads.map(|v| v.to_string()))?;
    set("format", o.format.clone())?;
    c.stable |= o.stable;
    c.extended_domain |= o.extended_domain;
    c.outside_proven_region |= o.outside_proven_region;
    c.allow_inconclusive |= o.allow_inconclusive;
    c.validate()?;
    Ok(c)
}

fn take(p: &mut BTreeMap<String, f64>, k: &str) -> Result<f64, Fail> {
    p.remove(k)
        .ok_or_else(|| Fail::Usage(format!("missing parameter '{k}'")))
}

fn no_extra(p: &BTreeMap<String, f64>) -> Result<(), Fail> {
    match p.keys().next() {
        Some(k) => Err(Fail::Usage(format!("unexpected parameter '{k}'"))),
        None => Ok(()),
    }
}

/// (value, error estimate) for `eval`.
fn evaluate(name: &str, args: &[String]) -> Result<(f64, Option<f64>), Fail> {
    let (mut p, text) = parse_kv(&args.join(" "), &["kind", "id", "name"])?;
    let v = match name {
        "gamma" => specfun::gamma(take(&mut p, "x")?)?,
        "ln_gamma" => specfun::ln_gamma(take(&mut p, "x")?)?,
        "bessel_j" | "bessel_y" | "bessel_i" | "bessel_k" => {
            let nu = take(&mut p, "nu")?;
            let x = take(&mut p, "x")?;
            let scaled = p.remove("scaled").map(|s| s != 0.0).unwrap_or(false);
            match name {
                "bessel_j" => specfun::bessel_j(nu, x)?,
                "bessel_y" => specfun::bessel_y(nu, x)?,
                "bessel_i" => specfun::bessel_i(nu, x, scaled)?,
                _ => specfun::bessel_k(nu, x, scaled)?,
            }
        }
        "bessel_zero" => {
            let nu = take(&mut p, "nu")?;
            let n = take(&mut p, "n")?;
            if n < 1.0 || n.fract() != 0.0 {
                return Err(Fail::Usage(format!("n = {n} must be a positive integer")));
            }
            specfun::bessel_zero(nu, n as usize)?
        }
        "gauss_2f1" => {
            let (a, b, c, x) = (
                take(&mut p, "a")?,
                take(&mut p, "b")?,
                take(&mut p, "c")?,
                take(&mut p, "x")?,
            );
            specfun::gauss_2f1(a, b, c, x)?
        }
        "kummer_m" => {
            let (a, c, x) = (take(&mut p, "a")?, take(&mut p, "c")?, take(&mut p, "x")?);
            specfun::kummer_m(a, c, x)?
        }
        "tricomi_psi" => {
            let (a, c, x) = (take(&mut p, "a")?, take(&mut p, "c")?, take(&mut p, "x")?);
            specfun::tricomi_psi(a, c, x)?
        }
        "whittaker_w" => {
            let (k, m, x) = (take(&mut p, "kappa")?, take(&mut p, "m")?, take(&mut p, "x")?);
            specfun::whittaker_w(k, m, x)?
        }
        "pdf" | "laplace" => {
            let kind = text.get("kind").ok_or_else(|| Fail::Usage("missing kind=".into()))?;
            let x = take(&mut p, "x")?;
            let d = Dist::new(DistSpec::from_params(kind, &std::mem::take(&mut p))?)?;
            if name == "pdf" {
                d.pdf(x)?
            } else {
                d.laplace_closed(x)?
            }
        }
        "lt" | "neg_logderiv" => {
            let n = text
                .get("name")
                .or_else(|| text.get("kind"))
                .ok_or_else(|| Fail::Usage("missing name= (or kind= for a distribution)".into()))?;
            let x = take(&mut p, "x")?;
            let s = LTSpec::from_params(n, &std::mem::take(&mut p))?;
            if name == "lt" {
                idtests::lt_value(&s, x)?
            } else {
                idtests::neg_logderiv(&s, x, DEFAULT_ML_TERMS)?
            }
        }
        "lhs" | "rhs" | "kernel" => {
            let id = text.get("id").ok_or_else(|| Fail::Usage("missing id=".into()))?;
            let at = if name == "kernel" {
                take(&mut p, "t")?
            } else {
                take(&mut p, "z")?
            };
            let rec = IdentityRecord::new(IdentityId::from_params(catalog_name(id)?, &std::mem::take(&mut p))?)?;
            return Ok(match name {
                "lhs" => (stieltjes::lhs_value(&rec, at)?, None),
                "kernel" => (stieltjes::kernel_density(&rec, at)?, None),
                _ => {
                    let r = stieltjes::stieltjes_rhs(&rec, at, 0.1 * rec.tol_class.value())?;
                    (r.value, Some(r.err_estimate))
                }
            });
        }
        _ => return Err(Fail::Usage(format!("unknown quantity '{name}'"))),
    };
    no_extra(&p)?;
    Ok((v, None))
}

/// Catalog name matching `s` up to ASCII case.
fn catalog_name(s: &str) -> Result<&'static str, Fail> {
    stieltjes::CATALOG_NAMES
        .iter()
        .find(|n| n.eq_ignore_ascii_case(s))
        .copied()
        .ok_or_else(|| Fail::Usage(format!("unknown identity '{s}'")))
}

fn cmd_eval(cfg: &RunConfig, name: &str, args: &[String]) -> Result<i32, Fail> {
    let (v, err) = evaluate(name, args)?;
    match cfg.format {
        OutputFormat::Json => {
            let out = json!({ "name": name, "params": args.join(" "), "value": v, "err_estimate": err });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        OutputFormat::Csv => {
            println!("name,value,err_estimate");
            println!("{name},{v:e},{}", err.map(|e| format!("{e:e}")).unwrap_or_default());
        }
    }
    Ok(0)
}

fn cmd_verify(cfg: &RunConfig, scope: &str, only: &[String]) -> Result<i32, Fail> {
    if !suites::SCOPES.contains(&scope) {
        return Err(Fail::Usage(format!(
            "scope '{scope}' is not one of {:?}",
            suites::SCOPES
        )));
    }
    let jobs = suites::filter(suites::jobs_for(scope, cfg)?, only);
    if jobs.is_empty() {
        return Err(Fail::Usage(format!("no checks match {only:?}")));
    }
    let t = Instant::now();
    let rows = report::run_jobs(&jobs, cfg.threads, cfg.stable);
    let summary = Summary::of(&rows);
    let code = summary.exit_code(cfg.allow_inconclusive);
    let env = Envelope {
        artifact: "besselcm",
        version: env!("CARGO_PKG_VERSION"),
        schema_version: report::SCHEMA_VERSION,
        command: format!("verify {scope}"),
        config: cfg,
        rows: &rows,
        summary,
        elapsed_ms: if cfg.stable {
            None
        } else {
            Some(t.elapsed().as_secs_f64() * 1e3)
        },
    };
    print!("{}", report::render(&env, cfg.format));
    Ok(code)
}

fn cmd_profile(cfg: &RunConfig, target: &str, args: &[String]) -> Result<i32, Fail> {
    let (p, _) = parse_kv(&args.join(" "), &[])?;
    let zs = cfg.z_grid.points();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let header: &[&str];
    if let Ok(name) = catalog_name(target) {
        let rec = IdentityRecord::new(IdentityId::from_params(name, &p)?)?;
        header = &["z", "lhs", "rhs", "residual", "kernel"];
        let tol = 0.1 * cfg.tol_for(rec.tol_class);
        for &z in &zs {
            let r = stieltjes::verify_point(&rec, z, tol)?;
            let k = if rec.id.is_stieltjes() {
                stieltjes::kernel_density(&rec, z)?
            } else {
                f64::NAN
            };
            rows.push(vec![z, r.lhs, r.rhs, r.residual, k]);
        }
    } else {
        let s = LTSpec::from_params(target, &p)?;
        header = &["x", "lt", "neg_logderiv"];
        for &x in &zs {
            rows.push(vec![
                x,
                idtests::lt_value(&s, x)?,
                idtests::neg_logderiv(&s, x, DEFAULT_ML_TERMS)?,
            ]);
        }
    }
    match cfg.format {
        OutputFormat::Csv => {
            println!("{}", header.join(","));
            for r in rows {
                println!("{}", r.iter().map(|v| format!("{v:e}")).collect::<Vec<_>>().join(","));
            }
        }
        OutputFormat::Json => {
            let recs: Vec<_> = rows
                .iter()
                .map(|r| {
                    header
                        .iter()
                        .zip(r)
                        .map(|(h, v)| (h.to_string(), json!(v)))
                        .collect::<serde_json::Map<_, _>>()
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({ "target": target, "rows": recs })).expect("json")
            );
        }
    }
    Ok(0)
}

fn cmd_zeros(cfg: &RunConfig, nu: f64, n: usize) -> Result<i32, Fail> {
    let z = specfun::bessel_zeros(nu, n)?;
    match cfg.format {
        OutputFormat::Csv => {
            println!("n,j");
            for (i, j) in z.iter().enumerate() {
                println!("{},{j:.15e}", i + 1);
            }
        }
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json!({ "nu": nu, "zeros": z })).expect("json")
        ),
    }
    Ok(0)
}

fn cmd_landau(cfg: &RunConfig) -> Result<i32, Fail> {
    let (c, t) = idtests::landau_constant_with_argmax()?;
    match cfg.format {
        OutputFormat::Csv => println!("c_l,argmax\n{c:.15e},{t:.15e}"),
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json!({ "c_l": c, "argmax": t })).expect("json")
        ),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = build_config(&cli.opts).and_then(|cfg| match &cli.cmd {
        Cmd::Eval { name, params } => cmd_eval(&cfg, name, params),
        Cmd::Verify { scope, only } => cmd_verify(&cfg, scope, only),
        Cmd::Profile { target, params } => cmd_profile(&cfg, target, params),
        Cmd::Zeros { nu, n } => cmd_zeros(&cfg, *nu, *n),
        Cmd::Landau => cmd_landau(&cfg),
    });
    match res {
        Ok(code) => ExitCode::from(code as u8),
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Numeric(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use besselcm::config::LogGrid;

    #[test]
    fn eval_names() {
        let a = |s: &str| s.split_whitespace().map(String::from).collect::<Vec<_>>();
        let (v, _) = evaluate("bessel_k", &a("nu=0.5 x=1")).unwrap();
        assert!((v - (std::f64::consts::PI / 2.0).sqrt() * (-1f64).exp()).abs() < 1e-14);
        let (v, _) = evaluate("lhs", &a("id=ik_equal mu=0 z=1")).unwrap();
        let w = 2.0 * specfun::bessel_i(0.0, 1.0, false).unwrap() * specfun::bessel_k(0.0, 1.0, false).unwrap();
        assert!((v - w).abs() < 1e-14);
        assert!(matches!(evaluate("bessel_k", &a("nu=0.5")), Err(Fail::Usage(_))));
        assert!(matches!(
            evaluate("bessel_k", &a("nu=0.5 x=1 y=2")),
            Err(Fail::Usage(_))
        ));
        assert!(matches!(evaluate("nope", &a("x=1")), Err(Fail::Usage(_))));
    }

    #[test]
    fn grid_flag_parses() {
        let o = Opts {
            grid: Some("0.1:1:4".into()),
            ..Default::default()
        };
        assert_eq!(build_config(&o).unwrap().grid, LogGrid { lo: 0.1, hi: 1.0, n: 4 });
        let o = Opts {
            grid: Some("1:0.1:4".into()),
            ..Default::default()
        };
        assert!(build_config(&o).is_err());
    }
}
