//! Nilpotency of `D = Y_1 δ_1 + ... + Y_n δ_n` on the coordinates.
//!
//! Polynomials live in `2n` variables `(X_1..X_n, Y_1..Y_n)`; `D` only
//! differentiates in the `X` block. Expanding,
//! `D^k(X_i) = Σ_{|α|=k} (k!/α!)·δ^α(X_i)·Y^α`, so the inverse is read off as
//! `G_i(Y) = Σ_k (1/k!)·D^k(X_i)|_{X=0}` evaluated at `Y − F(0)`.

use super::{certified, default_bound, gate, recenter, Criterion, CriterionError, Run, RunStats, Verdict, Witness};
use crate::monomial::Monomial;
use crate::nambu::NambuFrame;
use crate::polymap::PolyMap;
use crate::polynomial::Polynomial;
use crate::rational::Rational;

/// Iterated powers of `D` applied to each coordinate.
#[derive(Clone, Debug)]
pub struct EssenState {
    nvars: usize,
    /// `Σ_j Y_j·(coefficient of ∂/∂X_l in δ_j)` for each `l`.
    operator: Vec<Polynomial>,
    /// `powers[k][i] = D^k(X_i)`.
    powers: Vec<Vec<Polynomial>>,
}

impl EssenState {
    pub fn new(frame: &NambuFrame) -> Self {
        let n = frame.nvars();
        let rows = frame.lifted_rows();
        let operator = (0..n)
            .map(|l| {
                (0..n).fold(Polynomial::zero(2 * n), |acc, j| {
                    &acc + &rows[j][l].mul_monomial(&Monomial::var(2 * n, n + j))
                })
            })
            .collect();
        let start = (0..n).map(|i| Polynomial::var(2 * n, i)).collect();
        EssenState {
            nvars: n,
            operator,
            powers: vec![start],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `D(p)` for `p` in `2n` variables.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        p.apply_derivation(&self.operator)
    }

    /// Highest `k` computed so far.
    pub fn max_power(&self) -> u64 {
        (self.powers.len() - 1) as u64
    }

    pub fn power(&self, k: usize) -> &[Polynomial] {
        &self.powers[k]
    }

    pub fn step(&mut self) {
        let next = self.powers.last().unwrap().iter().map(|p| self.apply(p)).collect();
        self.powers.push(next);
    }

    pub fn top_is_zero(&self) -> bool {
        self.powers.last().unwrap().iter().all(Polynomial::is_zero)
    }

    fn top_terms(&self) -> usize {
        self.powers.last().unwrap().iter().map(Polynomial::len).sum()
    }

    /// The inverse read from the Taylor coefficients at `X = 0`.
    fn readout(&self, f: &PolyMap) -> Result<PolyMap, CriterionError> {
        let n = self.nvars;
        let mut expansions: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); n];
        for (k, level) in self.powers.iter().enumerate() {
            let inv_fact = Rational::factorial(k as u32).recip().expect("nonzero factorial");
            for (i, p) in level.iter().enumerate() {
                for (m, c) in p.terms() {
                    if m.exponents()[..n].iter().any(|&e| e != 0) {
                        continue;
                    }
                    let y_part = Monomial::new(m.exponents()[n..].iter().copied());
                    expansions[i].push((y_part, c * &inv_fact));
                }
            }
        }
        Ok(recenter(expansions, f)?)
    }
}

/// Decides invertibility by nilpotency of `D` on `X_1, ..., X_n`.
pub fn essen_criterion(f: &PolyMap, bound_override: Option<u64>) -> Result<Verdict, CriterionError> {
    Ok(essen_run(f, bound_override)?.verdict)
}

/// [`essen_criterion`] with run statistics.
pub fn essen_run(f: &PolyMap, bound_override: Option<u64>) -> Result<Run, CriterionError> {
    certified(Criterion::Essen, f, essen_decide(f, bound_override)?)
}

/// [`essen_run`] without the final composition check.
pub(crate) fn essen_decide(f: &PolyMap, bound_override: Option<u64>) -> Result<Run, CriterionError> {
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
    let mut state = EssenState::new(&frame);
    let mut stats = RunStats {
        iterations: 0,
        peak_terms: state.top_terms(),
    };
    for k in 1..=bound.saturating_add(1) {
        state.step();
        stats.iterations = k;
        stats.peak_terms = stats.peak_terms.max(state.top_terms());
        if state.top_is_zero() {
            let inverse = state.readout(f)?;
            return Ok(Run {
                verdict: Verdict::Invertible { inverse, levels: k },
                stats,
            });
        }
    }
    let level = bound + 1;
    let top = state.power(level as usize);
    let component = top.iter().position(|p| !p.is_zero()).expect("top power is nonzero");
    Ok(Run {
        verdict: Verdict::NotInvertibleWithinBound {
            bound,
            witness: Witness {
                component,
                level,
                multi_index: None,
                value: top[component].clone(),
            },
        },
        stats,
    })
}
