//! Formal inverse by fixed-point iteration, used as an independent oracle.
//!
//! With `A = J_F(0)` and `b = F(0)`, the normalized map
//! `F̄ = A⁻¹(F − b) = X − H` has `H` of order at least two, and its inverse is
//! the fixed point of `Ḡ ↦ Y + H(Ḡ)`. Iterating modulo degree `t + 1` at step
//! `t` fixes the degree-`t` slice of `Ḡ`, so the loop builds the formal
//! inverse one degree at a time. Whenever a new slice comes out zero the
//! candidate is tested exactly with [`verify_inverse`] in the original
//! coordinates, where the inverse is usually much sparser than `Ḡ`.

use super::{certified, gate, verify_inverse, Criterion, CriterionError, Run, RunStats, Verdict, Witness};
use crate::matrix::invert_rational;
use crate::polymap::{compose_maps, jacobian, PolyMap};
use crate::polynomial::Polynomial;
use crate::rational::Rational;

/// `Σ_j m[i][j]·p_j` for each row `i`.
fn apply_linear(m: &[Vec<Rational>], ps: &[Polynomial]) -> Vec<Polynomial> {
    let nvars = ps[0].nvars();
    m.iter()
        .map(|row| {
            row.iter()
                .zip(ps)
                .fold(Polynomial::zero(nvars), |acc, (c, p)| &acc + &p.scale(c))
        })
        .collect()
}

/// `Y + H(Ḡ)`, optionally truncated.
fn iterate(h: &[Polynomial], g: &[Polynomial], cap: Option<u32>) -> Result<Vec<Polynomial>, CriterionError> {
    let n = g.len();
    h.iter()
        .enumerate()
        .map(|(i, hi)| {
            let composed = match cap {
                Some(c) => hi.substitute_truncated(g, c)?,
                None => hi.substitute(g)?,
            };
            Ok(&Polynomial::var(n, i) + &composed)
        })
        .collect()
}

/// Whether `Ḡ = Y + H(Ḡ)` holds up to degree `2t`.
fn agrees_to_double(h: &[Polynomial], g: &[Polynomial], t: u32) -> Result<bool, CriterionError> {
    Ok(iterate(h, g, Some(t.saturating_mul(2)))? == g)
}

/// Decides invertibility by computing the formal inverse up to
/// `trunc_degree` and checking it exactly.
pub fn series_inverse_oracle(f: &PolyMap, trunc_degree: u32) -> Result<Verdict, CriterionError> {
    Ok(series_run(f, trunc_degree)?.verdict)
}

/// [`series_inverse_oracle`] with run statistics.
pub fn series_run(f: &PolyMap, trunc_degree: u32) -> Result<Run, CriterionError> {
    certified(Criterion::Series, f, series_decide(f, trunc_degree)?)
}

/// [`series_run`] without the final composition check.
pub(crate) fn series_decide(f: &PolyMap, trunc_degree: u32) -> Result<Run, CriterionError> {
    if let Err(verdict) = gate(f)? {
        return Ok(Run {
            verdict,
            stats: RunStats::default(),
        });
    }
    let n = f.nvars();
    let origin = vec![Rational::zero(); n];
    let linear = jacobian(f).evaluate(&origin)?;
    let a_inv = invert_rational(&linear).expect("Keller maps have invertible linear part");
    let b = f.value_at_origin();

    let centered: Vec<Polynomial> = f
        .components()
        .iter()
        .zip(&b)
        .map(|(p, bi)| p - &Polynomial::constant(n, bi.clone()))
        .collect();
    let normalized = apply_linear(&a_inv, &centered);
    let h: Vec<Polynomial> = normalized
        .iter()
        .enumerate()
        .map(|(i, p)| &Polynomial::var(n, i) - p)
        .collect();
    debug_assert!(h.iter().all(|p| p.truncated(1).is_zero()));

    let mut g: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
    let mut stats = RunStats {
        iterations: 0,
        peak_terms: n,
    };
    // G(Y) = Ḡ(A⁻¹(Y − b))
    let shifted: Vec<Polynomial> = b
        .iter()
        .enumerate()
        .map(|(j, bj)| &Polynomial::var(n, j) - &Polynomial::constant(n, bj.clone()))
        .collect();
    let inner = apply_linear(&a_inv, &shifted);
    let denormalize = |g: &[Polynomial]| -> Result<PolyMap, CriterionError> {
        let components = g.iter().map(|p| p.substitute(&inner)).collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMap::new(components)?)
    };
    let invertible = |candidate: PolyMap, stats: RunStats| Run {
        verdict: Verdict::Invertible {
            inverse: candidate,
            levels: stats.iterations,
        },
        stats,
    };

    let mut previous_slice_zero = false;
    for t in 2..=trunc_degree {
        let next = iterate(&h, &g, Some(t))?;
        stats.iterations += 1;
        stats.peak_terms = stats.peak_terms.max(next.iter().map(Polynomial::len).sum());
        let slice_zero = next.iter().all(|p| p.homogeneous_part(t).is_zero());
        g = next;
        if slice_zero && !previous_slice_zero && agrees_to_double(&h, &g, t)? {
            let candidate = denormalize(&g)?;
            if verify_inverse(f, &candidate)? {
                return Ok(invertible(candidate, stats));
            }
        }
        previous_slice_zero = slice_zero;
    }

    let candidate = denormalize(&g)?;
    if verify_inverse(f, &candidate)? {
        return Ok(invertible(candidate, stats));
    }
    let residual = compose_maps(f, &candidate)?;
    let Some((component, value)) = residual
        .components()
        .iter()
        .enumerate()
        .map(|(i, p)| (i, p - &Polynomial::var(n, i)))
        .find(|(_, r)| !r.is_zero())
    else {
        return Ok(invertible(candidate, stats));
    };
    Ok(Run {
        verdict: Verdict::NotInvertibleWithinBound {
            bound: trunc_degree as u64,
            witness: Witness {
                component,
                level: trunc_degree as u64,
                multi_index: None,
                value,
            },
        },
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;

    #[test]
    fn oracle_examples() {
        let run = series_run(&shear(), 2).unwrap();
        assert_eq!(run.verdict.inverse(), Some(&shear_inverse()));
        assert_eq!(run.stats.iterations, 1);

        let run = series_run(&PolyMap::identity(3), 1).unwrap();
        assert!(run.verdict.inverse().unwrap().is_identity());
        assert_eq!(run.stats.iterations, 0);

        assert_eq!(
            series_inverse_oracle(&nagata(), 25).unwrap().inverse(),
            Some(&nagata_inverse())
        );
        assert_eq!(
            series_inverse_oracle(&affine(), 1).unwrap().inverse(),
            Some(&affine_inverse())
        );
        assert!(matches!(
            series_inverse_oracle(&square_x(), 4).unwrap(),
            Verdict::KellerViolation { .. }
        ));
    }

    #[test]
    fn nagata_stops_early() {
        let run = series_run(&nagata(), 25).unwrap();
        assert!(run.stats.iterations < 24, "{:?}", run.stats);
    }

    #[test]
    fn truncation_too_low_leaves_residual() {
        // the inverse of Nagata has degree 5
        match series_inverse_oracle(&nagata(), 3).unwrap() {
            Verdict::NotInvertibleWithinBound { bound, witness } => {
                assert_eq!(bound, 3);
                assert!(!witness.value.is_zero());
            }
            v => panic!("{v:?}"),
        }
    }
}
