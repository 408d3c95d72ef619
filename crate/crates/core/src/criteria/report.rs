use std::thread;
use std::time::{Duration, Instant};

use super::essen::essen_decide;
use super::series::series_decide;
use super::taylor::taylor_decide;
use super::{certified, default_bound, Criterion, CriterionError, Run, Verdict};
use crate::polymap::PolyMap;

/// How the deciders of one report are scheduled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    /// One after another; timings are undisturbed.
    #[default]
    Sequential,
    /// One thread per decider.
    Concurrent,
}

#[derive(Clone, Debug)]
pub struct CriterionRun {
    pub criterion: Criterion,
    pub verdict: Verdict,
    pub elapsed: Duration,
    pub iterations: u64,
    pub peak_terms: usize,
}

/// Outcomes of several deciders on the same map. All verdicts agree.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub bound: u64,
    pub runs: Vec<CriterionRun>,
}

impl CriterionReport {
    pub fn get(&self, criterion: Criterion) -> Option<&CriterionRun> {
        self.runs.iter().find(|r| r.criterion == criterion)
    }

    /// Verdict shared by all runs.
    pub fn verdict(&self) -> &Verdict {
        &self.runs[0].verdict
    }
}

/// Times the decision and the construction of the inverse, keeping the
/// fastest of `reps` runs. The composition check that certifies the inverse
/// is common to all deciders and runs once, after the clock stops.
fn timed(
    criterion: Criterion,
    f: &PolyMap,
    bound: Option<u64>,
    series_trunc: u32,
    reps: u32,
) -> Result<CriterionRun, CriterionError> {
    let mut best = Duration::MAX;
    let mut last = None;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        let run = match criterion {
            Criterion::Taylor => taylor_decide(f, bound)?,
            Criterion::Essen => essen_decide(f, bound)?,
            Criterion::Series => series_decide(f, series_trunc)?,
        };
        best = best.min(start.elapsed());
        last = Some(run);
    }
    let Run { verdict, stats } = certified(criterion, f, last.expect("at least one run"))?;
    Ok(CriterionRun {
        criterion,
        verdict,
        elapsed: best,
        iterations: stats.iterations,
        peak_terms: stats.peak_terms,
    })
}

/// Runs the chosen deciders on `f` and checks that they agree. The series
/// oracle truncates at the same bound the other two use.
pub fn run_criteria(
    f: &PolyMap,
    criteria: &[Criterion],
    bound_override: Option<u64>,
    execution: Execution,
) -> Result<CriterionReport, CriterionError> {
    run_criteria_timed(f, criteria, bound_override, execution, 1)
}

/// [`run_criteria`] reporting for each decider the fastest of `reps` runs.
pub fn run_criteria_timed(
    f: &PolyMap,
    criteria: &[Criterion],
    bound_override: Option<u64>,
    execution: Execution,
    reps: u32,
) -> Result<CriterionReport, CriterionError> {
    let bound = match bound_override {
        Some(b) => b,
        None => default_bound(f)?,
    };
    let trunc = u32::try_from(bound).unwrap_or(u32::MAX);
    let runs: Vec<CriterionRun> = match execution {
        Execution::Sequential => criteria
            .iter()
            .map(|&c| timed(c, f, bound_override, trunc, reps))
            .collect::<Result<_, _>>()?,
        Execution::Concurrent => thread::scope(|s| {
            let handles: Vec<_> = criteria
                .iter()
                .map(|&c| {
                    let own = f.clone();
                    s.spawn(move || timed(c, &own, bound_override, trunc, reps))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("decider thread panicked"))
                .collect::<Result<Vec<_>, _>>()
        })?,
    };
    check_agreement(&runs)?;
    Ok(CriterionReport { bound, runs })
}

/// All three deciders, sequentially.
pub fn cross_check(f: &PolyMap) -> Result<CriterionReport, CriterionError> {
    run_criteria(f, &Criterion::ALL, None, Execution::Sequential)
}

fn check_agreement(runs: &[CriterionRun]) -> Result<(), CriterionError> {
    let Some(first) = runs.first() else {
        return Ok(());
    };
    for other in &runs[1..] {
        if first.verdict.is_invertible() != other.verdict.is_invertible() {
            return Err(CriterionError::Disagreement {
                details: format!(
                    "{} says {}, {} says {}",
                    first.criterion,
                    first.verdict.tag(),
                    other.criterion,
                    other.verdict.tag()
                ),
            });
        }
        if first.verdict.inverse() != other.verdict.inverse() {
            return Err(CriterionError::Disagreement {
                details: format!(
                    "{} and {} produced different inverses",
                    first.criterion, other.criterion
                ),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;

    #[test]
    fn shear_cross_check() {
        let report = cross_check(&shear()).unwrap();
        assert_eq!(report.runs.len(), 3);
        assert_eq!(report.bound, 2);
        for run in &report.runs {
            assert_eq!(run.verdict.inverse(), Some(&shear_inverse()));
        }
    }

    #[test]
    fn identity_and_concurrent() {
        let report = run_criteria(&PolyMap::identity(3), &Criterion::ALL, None, Execution::Concurrent).unwrap();
        assert!(report.runs.iter().all(|r| r.verdict.is_invertible()));
        let report = run_criteria(&nagata(), &Criterion::ALL, None, Execution::Concurrent).unwrap();
        assert_eq!(report.verdict().inverse(), Some(&nagata_inverse()));
    }

    #[test]
    fn keller_violation_agrees() {
        let report = cross_check(&non_keller()).unwrap();
        assert!(report.runs.iter().all(|r| r.verdict.tag() == "keller-violation"));
    }

    #[test]
    fn disagreement_detected() {
        let invertible = timed(Criterion::Taylor, &shear(), None, 2, 1).unwrap();
        let cut_short = timed(Criterion::Essen, &shear(), Some(1), 1, 1).unwrap();
        assert!(matches!(
            check_agreement(&[invertible, cut_short]),
            Err(CriterionError::Disagreement { .. })
        ));
    }
}
