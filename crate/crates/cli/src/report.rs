//! Report rows, the JSON envelope, CSV output and the exit-code rule.

use besselcm::config::{OutputFormat, RunConfig};
use serde::Serialize;
use std::time::Instant;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowVerdict {
    Pass,
    Fail,
    Inconclusive,
    /// A property asserted to fail, and a counterexample was found.
    ExpectedFail,
    /// A property asserted to fail, but no counterexample was found.
    UnexpectedPass,
}

impl RowVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            RowVerdict::Pass => "pass",
            RowVerdict::Fail => "fail",
            RowVerdict::Inconclusive => "inconclusive",
            RowVerdict::ExpectedFail => "expected-fail",
            RowVerdict::UnexpectedPass => "unexpected-pass",
        }
    }
}

/// What a check computes, before timing and labels are attached.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub verdict: Option<RowVerdict>,
    pub margin: Option<f64>,
    pub tolerance: Option<f64>,
    pub witness: Option<Vec<f64>>,
    pub note: Option<String>,
}

impl Outcome {
    pub fn new(v: RowVerdict) -> Self {
        Outcome {
            verdict: Some(v),
            ..Default::default()
        }
    }
    pub fn margin(mut self, m: f64) -> Self {
        self.margin = Some(m);
        self
    }
    pub fn tolerance(mut self, t: f64) -> Self {
        self.tolerance = Some(t);
        self
    }
    pub fn witness(mut self, w: Option<Vec<f64>>) -> Self {
        self.witness = w;
        self
    }
    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.note = Some(n.into());
        self
    }

    /// Non-convergence is inconclusive; any other error fails the row.
    pub fn from_error(e: &besselcm::Error) -> Self {
        let v = match e {
            besselcm::Error::Convergence { .. } => RowVerdict::Inconclusive,
            _ => RowVerdict::Fail,
        };
        Outcome::new(v).note(e.to_string())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub suite: String,
    pub check: String,
    pub params: String,
    pub verdict: RowVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<f64>>,
    pub exploratory: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<f64>,
}

pub type Runner = Box<dyn Fn() -> besselcm::Result<Outcome> + Send + Sync>;

pub struct Job {
    pub suite: &'static str,
    pub check: String,
    pub params: String,
    pub exploratory: bool,
    pub run: Runner,
}

impl Job {
    pub fn new(
        suite: &'static str,
        check: impl Into<String>,
        params: impl Into<String>,
        run: impl Fn() -> besselcm::Result<Outcome> + Send + Sync + 'static,
    ) -> Self {
        Job {
            suite,
            check: check.into(),
            params: params.into(),
            exploratory: false,
            run: Box::new(run),
        }
    }

    pub fn exploratory(mut self, on: bool) -> Self {
        self.exploratory = on;
        self
    }

    pub fn execute(&self, stable: bool) -> Row {
        let t = Instant::now();
        let out = (self.run)().unwrap_or_else(|e| Outcome::from_error(&e));
        let ms = t.elapsed().as_secs_f64() * 1e3;
        Row {
            suite: self.suite.to_string(),
            check: self.check.clone(),
            params: self.params.clone(),
            verdict: out.verdict.unwrap_or(RowVerdict::Fail),
            margin: out.margin,
            tolerance: out.tolerance,
            witness: out.witness,
            exploratory: self.exploratory,
            note: out.note,
            time_ms: if stable { None } else { Some(ms) },
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub expected_fail: usize,
    pub unexpected_pass: usize,
    pub exploratory: usize,
}

impl Summary {
    pub fn of(rows: &[Row]) -> Self {
        let mut s = Summary {
            total: rows.len(),
            ..Default::default()
        };
        for r in rows {
            if r.exploratory {
                s.exploratory += 1;
                continue;
            }
            match r.verdict {
                RowVerdict::Pass => s.pass += 1,
                RowVerdict::Fail => s.fail += 1,
                RowVerdict::Inconclusive => s.inconclusive += 1,
                RowVerdict::ExpectedFail => s.expected_fail += 1,
                RowVerdict::UnexpectedPass => s.unexpected_pass += 1,
            }
        }
        s
    }

    /// 0 pass, 1 failure, 3 inconclusive rows not allowed.
    pub fn exit_code(&self, allow_inconclusive: bool) -> i32 {
        if self.fail > 0 || self.unexpected_pass > 0 {
            1
        } else if self.inconclusive > 0 && !allow_inconclusive {
            3
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Envelope<'a> {
    pub artifact: &'static str,
    pub version: &'static str,
    pub schema_version: u32,
    pub command: String,
    pub config: &'a RunConfig,
    pub rows: &'a [Row],
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

pub const CSV_HEADER: &str = "suite,check,params,verdict,margin,tolerance,witness,exploratory,note,time_ms";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

pub fn row_csv(r: &Row) -> String {
    let w = r
        .witness
        .as_ref()
        .map(|w| w.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(";"));
    [
        csv_field(&r.suite),
        csv_field(&r.check),
        csv_field(&r.params),
        r.verdict.as_str().to_string(),
        opt(r.margin),
        opt(r.tolerance),
        w.unwrap_or_default(),
        r.exploratory.to_string(),
        csv_field(r.note.as_deref().unwrap_or("")),
        opt(r.time_ms),
    ]
    .join(",")
}

pub fn render(env: &Envelope<'_>, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => serde_json::to_string_pretty(env).expect("report serializes") + "\n",
        OutputFormat::Csv => {
            let mut s = String::from(CSV_HEADER);
            s.push('\n');
            for r in env.rows {
                s.push_str(&row_csv(r));
                s.push('\n');
            }
            s
        }
    }
}

/// Runs the jobs on a pool of `threads` workers; rows keep job order.
pub fn run_jobs(jobs: &[Job], threads: usize, stable: bool) -> Vec<Row> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| jobs.par_iter().map(|j| j.execute(stable)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: RowVerdict, exploratory: bool) -> Row {
        Row {
            suite: "s".into(),
            check: "c".into(),
            params: "a=1;b=2".into(),
            verdict: v,
            margin: Some(0.5),
            tolerance: None,
            witness: Some(vec![1.0, 2.0]),
            exploratory,
            note: Some("x, y".into()),
            time_ms: None,
        }
    }

    #[test]
    fn exit_codes() {
        use RowVerdict::*;
        let s = Summary::of(&[row(Pass, false), row(ExpectedFail, false), row(Fail, true)]);
        assert_eq!((s.total, s.pass, s.exploratory), (3, 1, 1));
        assert_eq!(s.exit_code(false), 0);
        let s = Summary::of(&[row(Pass, false), row(Inconclusive, false)]);
        assert_eq!((s.exit_code(false), s.exit_code(true)), (3, 0));
        let s = Summary::of(&[row(Inconclusive, false), row(UnexpectedPass, false)]);
        assert_eq!(s.exit_code(true), 1);
    }

    #[test]
    fn csv_quoting() {
        let line = row_csv(&row(RowVerdict::Pass, false));
        assert_eq!(line, "s,c,a=1;b=2,pass,5e-1,,1e0;2e0,false,\"x, y\",");
        assert_eq!(line.matches(',').count() - 1, CSV_HEADER.matches(',').count());
    }
}
