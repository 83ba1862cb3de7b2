//! The ten acceptance criteria, each with its pinned tolerance and time
//! limit. Every criterion is exact (zero tolerance); a criterion passes when
//! all of its checks hold and it finishes within its limit.

use std::fmt;
use std::time::{Duration, Instant};

use extremal_core::report::VerificationReport;
use extremal_core::verify::{self, SuiteConfig, VerifyError, MAIN_DESK_GRID};

/// Seed shared by the planted-cluster criteria (5 and 8 use the same instances).
pub const SEED: u64 = 1;
/// Instance count for the random criteria.
pub const INSTANCES: u64 = 10_000;

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub time_limit: Duration,
    run: fn() -> Result<Vec<VerificationReport>, VerifyError>,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed: Duration,
    pub time_limit: Duration,
    /// Failing checks, or the error that stopped the run.
    pub detail: Vec<String>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:>2}  {}  ({:.2}s, limit {}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.time_limit.as_secs()
        )?;
        for line in &self.detail {
            write!(f, "\n        {line}")?;
        }
        Ok(())
    }
}

fn config() -> SuiteConfig {
    SuiteConfig { seed: SEED, instances: INSTANCES, ..SuiteConfig::default() }
}

pub fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion {
            id: 1,
            title: "r=8 table reproduction",
            time_limit: secs(1),
            run: || Ok(vec![verify::r8_table()?]),
        },
        Criterion {
            id: 2,
            title: "g_t formula vs clique counting (m<=300, r<=9)",
            time_limit: secs(10),
            run: || Ok(vec![verify::formula(300, 9)?]),
        },
        Criterion {
            id: 3,
            title: "f_3 = g_3 by exhaustive search (r<=8, m<=9; r<=4, m<=10)",
            time_limit: secs(600),
            run: || Ok(vec![verify::main_desk(&MAIN_DESK_GRID, &config())?]),
        },
        Criterion {
            id: 4,
            title: "b1b2 enumeration (r<=8, t in {3,4})",
            time_limit: secs(30),
            run: || Ok(vec![verify::b1b2(8, &[3, 4])?]),
        },
        Criterion {
            id: 5,
            title: "folding gain >= Q(R) on planted clusters",
            time_limit: secs(60),
            run: || Ok(vec![verify::folding_gain(SEED, INSTANCES)?]),
        },
        Criterion {
            id: 6,
            title: "compression monotonicity on random bipartite systems",
            time_limit: secs(30),
            run: || Ok(vec![verify::compression(SEED, INSTANCES)]),
        },
        Criterion {
            id: 7,
            title: "Q(R) classification over all red graphs on s<=8",
            time_limit: secs(120),
            run: || Ok(vec![verify::half(8)?, verify::max_degree_two(8)?]),
        },
        Criterion {
            id: 8,
            title: "blue-edge weight cap and blue-triangle bound",
            time_limit: secs(60),
            run: || Ok(vec![verify::blue_edge_cap(SEED, INSTANCES)]),
        },
        Criterion {
            id: 9,
            title: "multiset bounds (r=8 identity, seqopt, 1to7, gap identity)",
            time_limit: secs(10),
            run: || Ok(vec![verify::r8_identity(46, 200)?, verify::seqopt(7, 300)?]),
        },
        Criterion {
            id: 10,
            title: "Kruskal-Katona and rainbow consistency",
            time_limit: secs(120),
            run: || {
                Ok(vec![verify::kruskal_katona(9, &[3, 4, 5], &config())?, verify::rainbow(&[2, 3, 4], 8, &[3, 4])?])
            },
        },
    ]
}

fn describe_failures(reports: &[VerificationReport]) -> Vec<String> {
    let mut out = Vec::new();
    for rep in reports {
        for case in rep.failures() {
            let mut line = format!("{} / {}", rep.suite, case.id);
            if let Some(cx) = &case.counterexample {
                let values: Vec<String> = cx.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
                line.push_str(&format!(": {} [{}]", cx.note, values.join(" ")));
                if let Some(g) = &cx.graph6 {
                    line.push_str(&format!(" graph6={g}"));
                }
            }
            if case.further_failures > 0 {
                line.push_str(&format!(" (+{} more of {})", case.further_failures, case.checked));
            }
            out.push(line);
        }
    }
    out
}

impl Criterion {
    pub fn evaluate(&self) -> Verdict {
        let start = Instant::now();
        let outcome = (self.run)();
        let elapsed = start.elapsed();
        let (checks_pass, mut detail) = match outcome {
            Ok(reports) => (reports.iter().all(|r| r.passed), describe_failures(&reports)),
            Err(e) => (false, vec![format!("error: {e}")]),
        };
        let in_time = elapsed <= self.time_limit;
        if !in_time {
            detail.push(format!("exceeded the {}s limit", self.time_limit.as_secs()));
        }
        Verdict {
            id: self.id,
            title: self.title,
            passed: checks_pass && in_time,
            elapsed,
            time_limit: self.time_limit,
            detail,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_criteria_in_order() {
        let ids: Vec<u8> = criteria().iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=10).collect::<Vec<_>>());
    }

    #[test]
    fn verdict_lines_start_with_the_outcome() {
        let v = Verdict {
            id: 4,
            title: "demo",
            passed: false,
            elapsed: Duration::from_millis(1500),
            time_limit: Duration::from_secs(30),
            detail: vec!["b1b2 / t=4,r=3: inequality not strict".into()],
        };
        let text = v.to_string();
        assert!(text.starts_with("FAIL  4  demo  (1.50s, limit 30s)"));
        assert!(text.contains("\n        b1b2 / t=4,r=3"));
    }
}
