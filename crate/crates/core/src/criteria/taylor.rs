//! Nambu-Taylor expansion of the coordinate functions.
//!
//! Since `δ_i` acts as `∂/∂F_i`, the inverse `G` satisfies
//! `(∂^α G_i)(F(X)) = δ^α X_i`. If `G` is polynomial every derivative of
//! order above `deg G` vanishes, and conversely an all-zero level means the
//! Taylor series of `G_i` around `F(0)` is finite, which exhibits `X_i` in
//! `C[F]`. The coefficients are read off at `X = 0`.

use super::{certified, default_bound, gate, recenter, Criterion, CriterionError, Run, RunStats, Verdict, Witness};
use crate::monomial::Monomial;
use crate::nambu::NambuFrame;
use crate::polymap::PolyMap;
use crate::polynomial::Polynomial;
use crate::rational::Rational;

/// `δ^α X_1, ..., δ^α X_n` for every multi-index `α` up to `max_level`.
/// Only multi-indices with some nonzero component are stored: all
/// derivatives of a zero entry are zero.
#[derive(Clone, Debug)]
pub struct DerivativeTable {
    nvars: usize,
    /// Stored entries of each level, sorted by multi-index.
    levels: Vec<Vec<(Monomial, Vec<Polynomial>)>>,
}

impl DerivativeTable {
    /// The table holding only level 0, `(X_1, ..., X_n)`.
    pub fn new(nvars: usize) -> Self {
        let root = (
            Monomial::one(nvars),
            (0..nvars).map(|i| Polynomial::var(nvars, i)).collect(),
        );
        DerivativeTable {
            nvars,
            levels: vec![vec![root]],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_level(&self) -> u64 {
        (self.levels.len() - 1) as u64
    }

    /// `None` when every component is zero or the level is not computed yet.
    pub fn get(&self, alpha: &Monomial) -> Option<&[Polynomial]> {
        let level = self.levels.get(alpha.total_degree() as usize)?;
        let k = level.binary_search_by(|(a, _)| a.cmp(alpha)).ok()?;
        Some(&level[k].1)
    }

    pub fn level(&self, m: usize) -> impl Iterator<Item = (&Monomial, &[Polynomial])> {
        self.levels
            .get(m)
            .into_iter()
            .flatten()
            .map(|(a, ps)| (a, ps.as_slice()))
    }

    pub fn level_is_zero(&self, m: usize) -> bool {
        self.levels.get(m).is_some_and(Vec::is_empty)
    }

    /// Total number of terms stored at level `m`.
    pub fn level_terms(&self, m: usize) -> usize {
        self.level(m)
            .map(|(_, ps)| ps.iter().map(Polynomial::len).sum::<usize>())
            .sum()
    }

    /// Computes the next level. Each `α` of the new level is reached from
    /// exactly one parent: `δ_j` is applied only to entries whose last
    /// nonzero index is at most `j`.
    pub fn extend(&mut self, frame: &NambuFrame) {
        let top = self.levels.last().expect("level 0 always present");
        let mut next = Vec::new();
        for (alpha, parent) in top {
            let start = alpha.last_nonzero().unwrap_or(0);
            for j in start..self.nvars {
                let child: Vec<Polynomial> = parent.iter().map(|p| frame.apply_unchecked(j, p)).collect();
                if child.iter().any(|p| !p.is_zero()) {
                    next.push((alpha.incremented(j), child));
                }
            }
        }
        next.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        self.levels.push(next);
    }

    /// First nonzero entry of level `m`, scanning multi-indices in canonical
    /// order and components in index order.
    fn first_nonzero(&self, m: usize) -> Option<(usize, Monomial, Polynomial)> {
        self.level(m).find_map(|(a, ps)| {
            ps.iter()
                .position(|p| !p.is_zero())
                .map(|i| (i, a.clone(), ps[i].clone()))
        })
    }
}

/// `G_i(Y) = Σ_α (1/α!)·(δ^α X_i)(0)·(Y − F(0))^α`.
pub fn build_inverse(table: &DerivativeTable, f: &PolyMap) -> Result<PolyMap, CriterionError> {
    let n = table.nvars;
    if f.nvars() != n {
        return Err(crate::error::AlgebraError::DimensionMismatch {
            expected: n,
            found: f.nvars(),
        }
        .into());
    }
    let top = table.levels.len() - 1;
    if !table.level_is_zero(top) {
        return Err(CriterionError::IncompleteTable);
    }
    let mut expansions: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); n];
    for m in 0..top {
        for (alpha, values) in table.level(m) {
            let inv_fact = alpha.factorial().recip().expect("factorials are nonzero");
            for (i, v) in values.iter().enumerate() {
                let c = v.constant_term();
                if !c.is_zero() {
                    expansions[i].push((alpha.clone(), &c * &inv_fact));
                }
            }
        }
    }
    Ok(recenter(expansions, f)?)
}

/// Decides invertibility by Nambu-Taylor expansion.
pub fn taylor_criterion(f: &PolyMap, bound_override: Option<u64>) -> Result<Verdict, CriterionError> {
    Ok(taylor_run(f, bound_override)?.verdict)
}

/// [`taylor_criterion`] with run statistics.
///
/// Levels `1, 2, ...` are computed until one is entirely zero. The inverse has
/// degree at most the bound `B`, so level `B + 1` must vanish for an
/// invertible map; a nonzero entry there is returned as the witness.
pub fn taylor_run(f: &PolyMap, bound_override: Option<u64>) -> Result<Run, CriterionError> {
    certified(Criterion::Taylor, f, taylor_decide(f, bound_override)?)
}

/// [`taylor_run`] without the final composition check.
pub(crate) fn taylor_decide(f: &PolyMap, bound_override: Option<u64>) -> Result<Run, CriterionError> {
    let frame = match gate(f)? {
        Ok(frame) => frame,
        Err(verdict) => {
            return Ok(Run {
                verdict,
                stats: RunStats::default(),
            })
        }
    };
    let bound = match bound_override {
        Some(b) => b,
        None => default_bound(f)?,
    };
    let mut table = DerivativeTable::new(f.nvars());
    let mut stats = RunStats {
        iterations: 0,
        peak_terms: table.level_terms(0),
    };
    for m in 1..=bound.saturating_add(1) {
        table.extend(&frame);
        stats.iterations = m;
        stats.peak_terms = stats.peak_terms.max(table.level_terms(m as usize));
        if table.level_is_zero(m as usize) {
            let inverse = build_inverse(&table, f)?;
            return Ok(Run {
                verdict: Verdict::Invertible { inverse, levels: m },
                stats,
            });
        }
    }
    let level = bound + 1;
    let (component, alpha, value) = table
        .first_nonzero(level as usize)
        .expect("a level that is not all zero has a nonzero entry");
    Ok(Run {
        verdict: Verdict::NotInvertibleWithinBound {
            bound,
            witness: Witness {
                component,
                level,
                multi_index: Some(alpha),
                value,
            },
        },
        stats,
    })
}
