#![allow(dead_code)]

use polyauto::catalog;
use polyauto::io::{gen_triangular_corpus, parse_poly, CorpusSpec};
use polyauto::{PolyMap, Polynomial, Rational};

/// Fifty generated maps over every `n ∈ {2,3}`, `deg ∈ {2,3}`,
/// `layers ∈ {1,2,3}`, tagged with an id.
pub fn mixed_corpus() -> Vec<(String, PolyMap)> {
    let mut out = Vec::new();
    let mut shapes = Vec::new();
    for n in [2, 3] {
        for deg in [2, 3] {
            for layers in 1..=3 {
                shapes.push((n, deg, layers));
            }
        }
    }
    // 12 shapes: 2 get five maps, the rest four
    for (k, &(n, deg, layers)) in shapes.iter().enumerate() {
        let spec = CorpusSpec {
            seed: 1 + k as u64,
            n,
            deg,
            layers,
            count: if k < 2 { 5 } else { 4 },
        };
        for m in gen_triangular_corpus(&spec).expect("valid spec") {
            out.push((m.id, m.map));
        }
    }
    assert_eq!(out.len(), 50);
    out
}

pub fn named_maps() -> Vec<(String, PolyMap)> {
    vec![
        ("identity2".into(), PolyMap::identity(2)),
        ("identity3".into(), PolyMap::identity(3)),
        ("affine".into(), catalog::affine()),
        ("shear".into(), catalog::shear()),
        ("nagata".into(), catalog::nagata()),
    ]
}

pub fn map_of(components: &[&str], vars: &[&str]) -> PolyMap {
    PolyMap::new(
        components
            .iter()
            .map(|c| parse_poly(c, vars).unwrap_or_else(|e| panic!("{c}: {e}")))
            .collect(),
    )
    .expect("square")
}

/// `F(p)` by direct evaluation, no composition involved.
pub fn eval_map(f: &PolyMap, p: &[Rational]) -> Vec<Rational> {
    f.components().iter().map(|c| c.evaluate(p).expect("arity")).collect()
}

/// A small fixed grid of rational points with varied signs and denominators.
pub fn sample_points(n: usize) -> Vec<Vec<Rational>> {
    let vals = [
        Rational::new(0, 1),
        Rational::new(1, 1),
        Rational::new(-2, 1),
        Rational::new(1, 3),
        Rational::new(-5, 7),
        Rational::new(7, 2),
    ];
    (0..12)
        .map(|k| {
            (0..n)
                .map(|i| vals[(k * (i + 2) + i * i + k / 3) % vals.len()].clone())
                .collect()
        })
        .collect()
}

/// `F(G(p)) = p` and `G(F(p)) = p` on every sample point.
pub fn inverse_at_points(f: &PolyMap, g: &PolyMap) -> bool {
    sample_points(f.nvars())
        .iter()
        .all(|p| eval_map(f, &eval_map(g, p)) == *p && eval_map(g, &eval_map(f, p)) == *p)
}

pub fn is_constant(p: &Polynomial, v: i64) -> bool {
    *p == Polynomial::constant(p.nvars(), Rational::from_int(v))
}
