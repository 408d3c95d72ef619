//! Deterministic generator of known-invertible Keller maps.
//!
//! Each map is `L₂ ∘ E_k ∘ ⋯ ∘ E₁ ∘ L₁`: the `E` are elementary maps
//! `X_v ← X_v + p` where `p` avoids `X_v`, and the `L` are invertible linear
//! maps with rational coefficients (diagonal scaling times a unit lower
//! triangular shear). With a single layer the map is one bare elementary map.
//!
//! The elementary maps of one output all respect a random variable order
//! `σ`: the polynomial added to `X_{σ(k)}` only involves `X_{σ(k+1)}, ...`.
//! Their composition is then triangular, which keeps its degree at most
//! `deg^(n-1)` however many layers are stacked.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::monomial::Monomial;
use crate::polymap::{compose_maps, PolyMap};
use crate::polynomial::Polynomial;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("invalid corpus parameters: {0}")]
    InvalidParameters(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusSpec {
    pub seed: u64,
    pub n: usize,
    pub deg: u32,
    pub layers: usize,
    pub count: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            seed: 1,
            n: 3,
            deg: 3,
            layers: 3,
            count: 5,
        }
    }
}

impl CorpusSpec {
    /// Stable identifier of the `index`-th map.
    pub fn map_id(&self, index: usize) -> String {
        format!(
            "tri-s{}-n{}-d{}-l{}-{:03}",
            self.seed, self.n, self.deg, self.layers, index
        )
    }

    fn validate(&self) -> Result<(), CorpusError> {
        let bad = |m: &str| Err(CorpusError::InvalidParameters(m.into()));
        if self.n < 2 {
            return bad("n must be at least 2");
        }
        if self.deg < 2 {
            return bad("deg must be at least 2");
        }
        if self.layers < 1 {
            return bad("layers must be at least 1");
        }
        Ok(())
    }
}

/// A generated map with the Keller constant it was built to have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusMap {
    pub id: String,
    pub map: PolyMap,
    pub keller_constant: Rational,
}

const SCALES: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (1, 2), (-3, 1), (1, 3)];

fn nonzero_small(rng: &mut ChaCha8Rng) -> i64 {
    let v = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// Random `p` in the variables `allowed`, of total degree between 2 and
/// `deg`, with one or two terms.
fn random_poly(rng: &mut ChaCha8Rng, n: usize, allowed: &[usize], deg: u32) -> Polynomial {
    loop {
        let nterms = rng.gen_range(1..=2);
        let mut terms = Vec::with_capacity(nterms);
        for _ in 0..nterms {
            let d = rng.gen_range(2..=deg);
            let mut exps = vec![0u32; n];
            for _ in 0..d {
                exps[*allowed.choose(rng).expect("nonempty")] += 1;
            }
            terms.push((Monomial::new(exps), Rational::from_int(nonzero_small(rng))));
        }
        let p = Polynomial::from_terms(n, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// `x ↦ D·U·x` with `D` diagonal and `U` unit lower triangular with one
/// off-diagonal entry. Returns the map and its determinant.
fn random_linear(rng: &mut ChaCha8Rng, n: usize) -> (PolyMap, Rational) {
    let scales: Vec<Rational> = (0..n)
        .map(|_| {
            let (a, b) = SCALES[rng.gen_range(0..SCALES.len())];
            Rational::new(a, b)
        })
        .collect();
    let row = rng.gen_range(1..n);
    let col = rng.gen_range(0..row);
    let shear = Rational::from_int(nonzero_small(rng));
    let components = (0..n)
        .map(|i| {
            let mut p = Polynomial::var(n, i);
            if i == row {
                p = &p + &Polynomial::var(n, col).scale(&shear);
            }
            p.scale(&scales[i])
        })
        .collect();
    let det = scales.iter().fold(Rational::one(), |acc, s| &acc * s);
    (PolyMap::new(components).expect("square"), det)
}

fn elementary(n: usize, target: usize, p: Polynomial) -> PolyMap {
    let components = (0..n)
        .map(|i| {
            let x = Polynomial::var(n, i);
            if i == target {
                &x + &p
            } else {
                x
            }
        })
        .collect();
    PolyMap::new(components).expect("square")
}

fn generate_one(rng: &mut ChaCha8Rng, spec: &CorpusSpec) -> (PolyMap, Rational) {
    let n = spec.n;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut map = PolyMap::identity(n);
    let mut last_target = None;
    for _ in 0..spec.layers {
        // never the last variable in the order: it has nothing to depend on
        let mut pos = rng.gen_range(0..n - 1);
        if n > 2 && Some(pos) == last_target {
            pos = (pos + 1) % (n - 1);
        }
        last_target = Some(pos);
        let p = random_poly(rng, n, &order[pos + 1..], spec.deg);
        let e = elementary(n, order[pos], p);
        map = compose_maps(&e, &map).expect("same dimension");
    }
    if spec.layers == 1 {
        return (map, Rational::one());
    }
    let (inner, det_inner) = random_linear(rng, n);
    let (outer, det_outer) = random_linear(rng, n);
    let map = compose_maps(&outer, &compose_maps(&map, &inner).expect("same dimension")).expect("same dimension");
    (map, &det_inner * &det_outer)
}

/// `spec.count` maps; identical specs give identical output.
pub fn gen_triangular_corpus(spec: &CorpusSpec) -> Result<Vec<CorpusMap>, CorpusError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Ok((0..spec.count)
        .map(|i| {
            let (map, keller_constant) = generate_one(&mut rng, spec);
            CorpusMap {
                id: spec.map_id(i),
                map,
                keller_constant,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymap::{keller_check, map_degree};

    #[test]
    fn single_layer_is_elementary() {
        let spec = CorpusSpec {
            seed: 1,
            n: 2,
            deg: 2,
            layers: 1,
            count: 1,
        };
        let maps = gen_triangular_corpus(&spec).unwrap();
        assert_eq!(maps.len(), 1);
        let f = &maps[0].map;
        let fixed: Vec<usize> = (0..2).filter(|&i| *f.component(i) == Polynomial::var(2, i)).collect();
        assert_eq!(fixed.len(), 1, "{f:?}");
        let moved = 1 - fixed[0];
        let added = f.component(moved) - &Polynomial::var(2, moved);
        assert!(added.partial_derivative(moved).unwrap().is_zero());
        assert_eq!(keller_check(f).unwrap(), Rational::one());
    }

    #[test]
    fn keller_constant_matches_construction() {
        for (n, deg, layers) in [(2, 2, 2), (3, 3, 3), (4, 2, 3)] {
            let spec = CorpusSpec {
                seed: 7,
                n,
                deg,
                layers,
                count: 4,
            };
            for m in gen_triangular_corpus(&spec).unwrap() {
                assert_eq!(keller_check(&m.map).unwrap(), m.keller_constant, "{}", m.id);
                let d = map_degree(&m.map).unwrap();
                assert!(d <= deg.pow(n as u32 - 1), "{} has degree {d}", m.id);
            }
        }
    }

    #[test]
    fn deterministic() {
        let spec = CorpusSpec::default();
        assert_eq!(
            gen_triangular_corpus(&spec).unwrap(),
            gen_triangular_corpus(&spec).unwrap()
        );
        let other = CorpusSpec { seed: 2, ..spec };
        assert_ne!(
            gen_triangular_corpus(&spec).unwrap(),
            gen_triangular_corpus(&other).unwrap()
        );
    }

    #[test]
    fn rejects_bad_parameters() {
        for spec in [
            CorpusSpec {
                n: 1,
                ..Default::default()
            },
            CorpusSpec {
                deg: 1,
                ..Default::default()
            },
            CorpusSpec {
                layers: 0,
                ..Default::default()
            },
        ] {
            assert!(gen_triangular_corpus(&spec).is_err());
        }
    }
}
