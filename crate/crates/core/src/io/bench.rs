//! Benchmark rows and their CSV form.

use std::fmt::Write as _;

use rayon::prelude::*;

use super::corpus::{gen_triangular_corpus, CorpusError, CorpusSpec};
use crate::criteria::{run_criteria_timed, Criterion, CriterionError, Execution};
use crate::polymap::map_degree;

pub const CSV_HEADER: &str = "map_id,n,deg,criterion,verdict,ms,iters,peak_terms";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub map_id: String,
    pub n: usize,
    pub degree: u32,
    pub criterion: Criterion,
    pub verdict: &'static str,
    pub ms: f64,
    pub iterations: u64,
    pub peak_terms: usize,
}

impl BenchRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{:.3},{},{}",
            self.map_id, self.n, self.degree, self.criterion, self.verdict, self.ms, self.iterations, self.peak_terms
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("{map_id}: {source}")]
    Criterion {
        map_id: String,
        #[source]
        source: CriterionError,
    },
    #[error("failed to build thread pool: {0}")]
    Pool(String),
}

/// Cross-checks every corpus map with `criteria` run one after another,
/// recording the fastest of `reps` runs. With `jobs > 1` maps are spread
/// over a thread pool; rows stay in map order.
pub fn run_bench(
    spec: &CorpusSpec,
    criteria: &[Criterion],
    reps: u32,
    jobs: usize,
) -> Result<Vec<BenchRow>, BenchError> {
    let corpus = gen_triangular_corpus(spec)?;
    let one = |m: &super::corpus::CorpusMap| -> Result<Vec<BenchRow>, BenchError> {
        let report = run_criteria_timed(&m.map, criteria, None, Execution::Sequential, reps).map_err(|source| {
            BenchError::Criterion {
                map_id: m.id.clone(),
                source,
            }
        })?;
        let degree = map_degree(&m.map).unwrap_or(0);
        Ok(report
            .runs
            .iter()
            .map(|r| BenchRow {
                map_id: m.id.clone(),
                n: m.map.nvars(),
                degree,
                criterion: r.criterion,
                verdict: r.verdict.tag(),
                ms: r.elapsed.as_secs_f64() * 1e3,
                iterations: r.iterations,
                peak_terms: r.peak_terms,
            })
            .collect())
    };
    let per_map: Vec<Vec<BenchRow>> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| BenchError::Pool(e.to_string()))?;
        pool.install(|| corpus.par_iter().map(one).collect::<Result<_, _>>())?
    } else {
        corpus.iter().map(one).collect::<Result<_, _>>()?
    };
    Ok(per_map.into_iter().flatten().collect())
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    })
}

/// Median wall-clock milliseconds of one criterion over `rows`.
pub fn median_ms(rows: &[BenchRow], criterion: Criterion) -> Option<f64> {
    let mut ms: Vec<f64> = rows.iter().filter(|r| r.criterion == criterion).map(|r| r.ms).collect();
    median(&mut ms)
}

/// CSV document: metadata comments, header, one row per map and criterion,
/// then `# median_ms` and `# ratio` summary comments.
pub fn render_csv(spec: &CorpusSpec, criteria: &[Criterion], reps: u32, rows: &[BenchRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# corpus: triangular seed={} n={} deg={} layers={} count={}",
        spec.seed, spec.n, spec.deg, spec.layers, spec.count
    );
    let _ = writeln!(
        out,
        "# ms: fastest of {reps} runs, excluding the shared composition check"
    );
    out.push_str(
        "# corpus maps are generated compositions of elementary and linear maps, invertible by construction\n",
    );
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    let medians: Vec<(Criterion, f64)> = criteria
        .iter()
        .filter_map(|&c| median_ms(rows, c).map(|m| (c, m)))
        .collect();
    if !medians.is_empty() {
        let parts: Vec<String> = medians.iter().map(|(c, m)| format!("{c}={m:.3}")).collect();
        let _ = writeln!(out, "# median_ms {}", parts.join(" "));
    }
    if let (Some(t), Some(e)) = (median_ms(rows, Criterion::Taylor), median_ms(rows, Criterion::Essen)) {
        if e > 0.0 {
            let _ = writeln!(out, "# ratio taylor/essen={:.4}", t / e);
        }
    }
    out
}
