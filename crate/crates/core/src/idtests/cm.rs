//! Sign-pattern checks on derivative ladders.

use crate::error::{domain, Result};
use serde::{Deserialize, Serialize};

/// Where a ladder's derivatives come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LadderKind {
    /// Rational and power terms, differentiated exactly.
    Exact,
    /// Mittag-Leffler sums over Bessel zeros with an integral tail.
    Series,
    /// Derivatives under an integral sign, evaluated by quadrature.
    Quadrature,
    /// Ridders-extrapolated forward differences of the function values.
    FiniteDifference,
}

/// Allowed negative margin per ladder kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlackPolicy {
    pub exact: f64,
    pub series: f64,
    pub quadrature: f64,
    pub finite_difference: f64,
}

impl Default for SlackPolicy {
    fn default() -> Self {
        Self {
            exact: 1e-12,
            series: 1e-12,
            quadrature: 1e-9,
            finite_difference: 1e-6,
        }
    }
}

impl SlackPolicy {
    pub fn for_kind(&self, k: LadderKind) -> f64 {
        match k {
            LadderKind::Exact => self.exact,
            LadderKind::Series => self.series,
            LadderKind::Quadrature => self.quadrature,
            LadderKind::FiniteDifference => self.finite_difference,
        }
    }
}

/// One rung: the signed derivative and the magnitude it is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderValue {
    pub value: f64,
    /// Sum of the absolute values of the pieces making up `value`.
    pub scale: f64,
    /// Error estimate (zero for analytic ladders).
    pub err: f64,
}

impl LadderValue {
    pub fn exact(value: f64, scale: f64) -> Self {
        Self { value, scale, err: 0.0 }
    }

    pub fn margin(&self) -> f64 {
        let s = self.scale.max(self.err).max(self.value.abs());
        if s == 0.0 {
            0.0
        } else {
            self.value / s
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// A negative value within its own error estimate.
    Inconclusive,
}

/// Grid verdict of a derivative sign pattern. Numerical evidence on the
/// grid only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CMReport {
    pub grid: Vec<f64>,
    pub max_order: usize,
    /// Most negative value/scale over grid and orders.
    pub worst_margin: f64,
    pub pass: bool,
    /// (x, n) of the worst margin when it is below −slack.
    pub witness: Option<(f64, usize)>,
    pub verdict: Verdict,
    pub method: LadderKind,
    pub slack: f64,
    /// Worst margin for each order 0..=max_order.
    pub order_margins: Vec<f64>,
}

type ValueFn<'a> = Box<dyn Fn(f64) -> Result<f64> + Sync + 'a>;
type LadderFn<'a> = Box<dyn Fn(f64, usize) -> Result<Vec<LadderValue>> + Sync + 'a>;

/// A real function on (origin, ∞), optionally with a ladder returning
/// (−1)ⁿf⁽ⁿ⁾ for n = 0..=max_order at a point.
pub struct CmFunction<'a> {
    value: ValueFn<'a>,
    ladder: Option<(LadderKind, LadderFn<'a>)>,
    origin: f64,
    step: Option<Box<dyn Fn(f64) -> f64 + Sync + 'a>>,
}

impl<'a> CmFunction<'a> {
    pub fn new(f: impl Fn(f64) -> Result<f64> + Sync + 'a) -> Self {
        Self {
            value: Box::new(f),
            ladder: None,
            origin: 0.0,
            step: None,
        }
    }

    pub fn with_ladder(
        mut self,
        kind: LadderKind,
        ladder: impl Fn(f64, usize) -> Result<Vec<LadderValue>> + Sync + 'a,
    ) -> Self {
        self.ladder = Some((kind, Box::new(ladder)));
        self
    }

    /// Left end of the domain (default 0).
    pub fn with_origin(mut self, origin: f64) -> Self {
        self.origin = origin;
        self
    }

    /// First difference step at x (default (x − origin)/2).
    pub fn with_step(mut self, step: impl Fn(f64) -> f64 + Sync + 'a) -> Self {
        self.step = Some(Box::new(step));
        self
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        (self.value)(x)
    }

    pub fn kind(&self) -> LadderKind {
        self.ladder
            .as_ref()
            .map(|l| l.0)
            .unwrap_or(LadderKind::FiniteDifference)
    }

    /// Rungs 0..=max_order at x, signed by (−1)ⁿ when `alternate`.
    fn rungs(&self, x: f64, max_order: usize, alternate: bool) -> Result<Vec<LadderValue>> {
        if let Some((_, l)) = &self.ladder {
            let mut v = l(x, max_order)?;
            if !alternate {
                for (n, r) in v.iter_mut().enumerate() {
                    if n % 2 == 1 {
                        r.value = -r.value;
                    }
                }
            }
            return Ok(v);
        }
        let h0 = match &self.step {
            Some(s) => s(x),
            None => 0.5 * (x - self.origin),
        };
        let mut out = Vec::with_capacity(max_order + 1);
        for n in 0..=max_order {
            let (d, err) = ridders(&self.value, x, n, h0)?;
            let sign = if alternate && n % 2 == 1 { -1.0 } else { 1.0 };
            out.push(LadderValue {
                value: sign * d,
                scale: d.abs(),
                err,
            });
        }
        Ok(out)
    }
}

/// n-th derivative at x from forward differences with Ridders' extrapolation.
/// Returns (value, error estimate).
pub fn ridders(f: &dyn Fn(f64) -> Result<f64>, x: f64, n: usize, h0: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Ok((f(x)?, 0.0));
    }
    if !(h0 > 0.0) || !h0.is_finite() {
        return Err(domain("ridders", format!("step {h0} must be positive")));
    }
    const CON: f64 = 1.4;
    const NTAB: usize = 10;
    let binom: Vec<f64> = {
        let mut c = vec![1.0; n + 1];
        for k in 1..=n {
            c[k] = c[k - 1] * (n + 1 - k) as f64 / k as f64;
        }
        c
    };
    let fwd = |h: f64| -> Result<f64> {
        let mut s = 0.0;
        for (k, c) in binom.iter().enumerate() {
            let sgn = if (n - k) % 2 == 0 { 1.0 } else { -1.0 };
            s += sgn * c * f(x + k as f64 * h)?;
        }
        Ok(s / h.powi(n as i32))
    };
    let mut a = vec![vec![0.0; NTAB]; NTAB];
    let mut h = h0;
    a[0][0] = fwd(h)?;
    let mut best = a[0][0];
    let mut err = f64::INFINITY;
    for i in 1..NTAB {
        h /= CON;
        a[i][0] = fwd(h)?;
        let mut fac = CON;
        for j in 1..=i {
            a[i][j] = (a[i][j - 1] * fac - a[i - 1][j - 1]) / (fac - 1.0);
            fac *= CON;
            let e = (a[i][j] - a[i][j - 1]).abs().max((a[i][j] - a[i - 1][j - 1]).abs());
            if e <= err {
                err = e;
                best = a[i][j];
            }
        }
        if (a[i][i] - a[i - 1][i - 1]).abs() >= 2.0 * err {
            break;
        }
    }
    Ok((best, err))
}

fn check_grid(grid: &[f64], origin: f64, max_order: usize) -> Result<()> {
    if grid.is_empty() {
        return Err(domain("cm_check", "empty grid"));
    }
    if let Some(x) = grid.iter().find(|x| !(**x > origin) || !x.is_finite()) {
        return Err(domain("cm_check", format!("grid point {x} outside ({origin}, ∞)")));
    }
    if max_order > 10 {
        return Err(domain("cm_check", format!("max_order {max_order} above 10")));
    }
    Ok(())
}

/// Folds per-point rungs into a report.
pub(crate) fn fold_report(
    grid: &[f64],
    max_order: usize,
    method: LadderKind,
    slack: f64,
    rows: &[Vec<LadderValue>],
) -> CMReport {
    let mut worst = f64::INFINITY;
    let mut at = (grid[0], 0);
    let mut order_margins = vec![f64::INFINITY; max_order + 1];
    let mut hard_fail = false;
    let mut soft_fail = false;
    for (x, rungs) in grid.iter().zip(rows) {
        for (n, r) in rungs.iter().enumerate().take(max_order + 1) {
            let m = r.margin();
            order_margins[n] = order_margins[n].min(m);
            if m < worst {
                worst = m;
                at = (*x, n);
            }
            if m < -slack {
                if r.value.abs() > 2.0 * r.err {
                    hard_fail = true;
                } else {
                    soft_fail = true;
                }
            }
        }
    }
    let verdict = if hard_fail {
        Verdict::Fail
    } else if soft_fail {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    let pass = worst >= -slack;
    CMReport {
        grid: grid.to_vec(),
        max_order,
        worst_margin: worst,
        pass,
        witness: if pass { None } else { Some(at) },
        verdict,
        method,
        slack,
        order_margins,
    }
}

pub(crate) fn run(
    f: &CmFunction<'_>,
    grid: &[f64],
    max_order: usize,
    policy: &SlackPolicy,
    alternate: bool,
) -> Result<CMReport> {
    check_grid(grid, f.origin, max_order)?;
    let rows = grid
        .iter()
        .map(|x| f.rungs(*x, max_order, alternate))
        .collect::<Result<Vec<_>>>()?;
    Ok(fold_report(grid, max_order, f.kind(), policy.for_kind(f.kind()), &rows))
}

/// Checks (−1)ⁿf⁽ⁿ⁾(x) ≥ 0 for n = 0..=max_order on the grid.
pub fn cm_check(f: &CmFunction<'_>, grid: &[f64], max_order: usize) -> Result<CMReport> {
    run(f, grid, max_order, &SlackPolicy::default(), true)
}

/// [`cm_check`] with an explicit slack policy.
pub fn cm_check_with(f: &CmFunction<'_>, grid: &[f64], max_order: usize, policy: &SlackPolicy) -> Result<CMReport> {
    run(f, grid, max_order, policy, true)
}

/// Checks f⁽ⁿ⁾(x) ≥ 0 for n = 0..=max_order (absolute monotonicity).
pub fn am_check(f: &CmFunction<'_>, grid: &[f64], max_order: usize) -> Result<CMReport> {
    run(f, grid, max_order, &SlackPolicy::default(), false)
}
