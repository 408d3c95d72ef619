//! A handful of classical maps with known inverses, used by tests, the
//! acceptance suite and the CLI documentation.

use crate::polymap::PolyMap;
use crate::polynomial::Polynomial;
use crate::rational::Rational;

pub fn konst(nvars: usize, v: i64) -> Polynomial {
    Polynomial::constant(nvars, Rational::from_int(v))
}

fn var(nvars: usize, i: usize) -> Polynomial {
    Polynomial::var(nvars, i)
}

fn map(components: Vec<Polynomial>) -> PolyMap {
    PolyMap::new(components).expect("catalog maps are square")
}

/// `(x + y^2, y)`.
pub fn shear() -> PolyMap {
    let (x, y) = (var(2, 0), var(2, 1));
    map(vec![&x + &(&y * &y), y])
}

/// `(y1 - y2^2, y2)`, the inverse of [`shear`].
pub fn shear_inverse() -> PolyMap {
    let (x, y) = (var(2, 0), var(2, 1));
    map(vec![&x - &(&y * &y), y])
}

/// `(2x + 3, 5y)`.
pub fn affine() -> PolyMap {
    let (x, y) = (var(2, 0), var(2, 1));
    map(vec![
        &x.scale(&Rational::from_int(2)) + &konst(2, 3),
        y.scale(&Rational::from_int(5)),
    ])
}

/// `(y1/2 - 3/2, y2/5)`, the inverse of [`affine`].
pub fn affine_inverse() -> PolyMap {
    let (x, y) = (var(2, 0), var(2, 1));
    map(vec![
        &x.scale(&Rational::new(1, 2)) - &Polynomial::constant(2, Rational::new(3, 2)),
        y.scale(&Rational::new(1, 5)),
    ])
}

/// Nagata's automorphism: with `w = xz + y^2`,
/// `(x - 2yw - zw^2, y + zw, z)`.
pub fn nagata() -> PolyMap {
    let (x, y, z) = (var(3, 0), var(3, 1), var(3, 2));
    let w = &(&x * &z) + &(&y * &y);
    let two = Rational::from_int(2);
    let f1 = &(&x - &(&y * &w).scale(&two)) - &(&z * &(&w * &w));
    let f2 = &y + &(&z * &w);
    map(vec![f1, f2, z])
}

/// Inverse of [`nagata`]: with `w = y1 y3 + y2^2`,
/// `(y1 + 2 y2 w - y3 w^2, y2 - y3 w, y3)`.
pub fn nagata_inverse() -> PolyMap {
    let (y1, y2, y3) = (var(3, 0), var(3, 1), var(3, 2));
    let w = &(&y1 * &y3) + &(&y2 * &y2);
    let two = Rational::from_int(2);
    let g1 = &(&y1 + &(&y2 * &w).scale(&two)) - &(&y3 * &(&w * &w));
    let g2 = &y2 - &(&y3 * &w);
    map(vec![g1, g2, y3])
}

/// `(x, xy)`: Jacobian determinant `x`.
pub fn non_keller() -> PolyMap {
    let (x, y) = (var(2, 0), var(2, 1));
    map(vec![x.clone(), &x * &y])
}

/// `(x^2, y)`: Jacobian determinant `2x`.
pub fn square_x() -> PolyMap {
    let (x, y) = (var(2, 0), var(2, 1));
    map(vec![&x * &x, y])
}
