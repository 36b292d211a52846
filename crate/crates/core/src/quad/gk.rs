//! Adaptive Gauss–Kronrod (7/15) with the QUADPACK error heuristic.

use super::{KSum, QuadResult};
use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Clone, Copy)]
struct Seg {
    a: f64,
    b: f64,
    val: f64,
    err: f64,
}

fn eval<F: Fn(f64) -> f64 + ?Sized>(f: &F, x: f64) -> Result<f64> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation { at: x })
    }
}

fn gk15<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> Result<Seg> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = eval(f, c)?;
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = eval(f, c - dx)?;
        let f2 = eval(f, c + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let hl = h.abs();
    resk *= h;
    resg *= h;
    resabs *= hl;
    resasc *= hl;
    let mut err = (resk - resg).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok(Seg { a, b, val: resk, err })
}

/// Adaptive bisection of the worst segment until the total error is below
/// max(abs_tol, rel_tol·|I|) or `max_segments` is reached.
pub fn gk_adaptive<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    lo: f64,
    hi: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Result<QuadResult> {
    let mut segs = vec![gk15(f, lo, hi)?];
    let mut n_evals = 15;
    loop {
        let mut val = KSum::default();
        let mut err = 0.0;
        let mut worst = 0;
        for (i, s) in segs.iter().enumerate() {
            val.add(s.val);
            err += s.err;
            if s.err > segs[worst].err {
                worst = i;
            }
        }
        let v = val.value();
        let target = abs_tol.max(rel_tol * v.abs());
        let w = segs[worst];
        let m = 0.5 * (w.a + w.b);
        let too_narrow = !(w.a < m && m < w.b);
        if err <= target || segs.len() >= max_segments || too_narrow {
            let mut r = QuadResult::new(v, err, n_evals, rel_tol);
            r.converged |= err <= target;
            return Ok(r.with("segments", segs.len() as f64));
        }
        let l = gk15(f, w.a, m)?;
        let r = gk15(f, m, w.b)?;
        n_evals += 30;
        segs[worst] = l;
        segs.push(r);
    }
}
