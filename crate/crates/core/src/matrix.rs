//! Matrices of polynomials: fraction-free determinant and adjugate.

use std::fmt;

use crate::error::AlgebraError;
use crate::polynomial::Polynomial;
use crate::rational::Rational;

/// Dense row-major matrix with polynomial entries sharing one variable count.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    nrows: usize,
    ncols: usize,
    nvars: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(nrows: usize, ncols: usize, entries: Vec<Polynomial>) -> Result<Self, AlgebraError> {
        if entries.len() != nrows * ncols {
            return Err(AlgebraError::DimensionMismatch {
                expected: nrows * ncols,
                found: entries.len(),
            });
        }
        let Some(first) = entries.first() else {
            return Err(AlgebraError::Empty);
        };
        let nvars = first.nvars();
        if let Some(bad) = entries.iter().find(|p| p.nvars() != nvars) {
            return Err(AlgebraError::DimensionMismatch {
                expected: nvars,
                found: bad.nvars(),
            });
        }
        Ok(PolyMatrix {
            nrows,
            ncols,
            nvars,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self, AlgebraError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(AlgebraError::DimensionMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Self::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        Self::scalar(n, nvars, &Rational::one())
    }

    /// `c * I`.
    pub fn scalar(n: usize, nvars: usize, c: &Rational) -> Self {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    Polynomial::constant(nvars, c.clone())
                } else {
                    Polynomial::zero(nvars)
                }
            })
            .collect();
        PolyMatrix {
            nrows: n,
            ncols: n,
            nvars,
            entries,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.ncols + j]
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Polynomial]> {
        self.entries.chunks(self.ncols)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let entries = (0..self.ncols)
            .flat_map(|j| (0..self.nrows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            nvars: self.nvars,
            entries,
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.ncols != other.nrows {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.ncols,
                found: other.nrows,
            });
        }
        if self.nvars != other.nvars {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        let mut entries = Vec::with_capacity(self.nrows * other.ncols);
        for i in 0..self.nrows {
            for j in 0..other.ncols {
                let mut acc = Polynomial::zero(self.nvars);
                for k in 0..self.ncols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            nvars: self.nvars,
            entries,
        })
    }

    /// Entrywise value at a point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>, AlgebraError> {
        self.rows()
            .map(|r| r.iter().map(|p| p.evaluate(point)).collect())
            .collect()
    }

    fn check_square(&self) -> Result<(), AlgebraError> {
        if self.nrows != self.ncols {
            return Err(AlgebraError::NonSquare {
                nrows: self.nrows,
                ncols: self.ncols,
            });
        }
        Ok(())
    }

    /// Determinant by Bareiss fraction-free elimination. Every division is
    /// exact in the polynomial ring, so no rational functions appear.
    pub fn determinant(&self) -> Result<Polynomial, AlgebraError> {
        self.check_square()?;
        let n = self.nrows;
        let mut a: Vec<Vec<Polynomial>> = self.rows().map(<[Polynomial]>::to_vec).collect();
        Ok(bareiss(&mut a, n, self.nvars))
    }

    /// Transpose of the cofactor matrix, so `adj(M)·M = det(M)·I`.
    pub fn adjugate(&self) -> Result<PolyMatrix, AlgebraError> {
        self.check_square()?;
        let n = self.nrows;
        if n == 1 {
            return Ok(PolyMatrix::identity(1, self.nvars));
        }
        let mut entries = vec![Polynomial::zero(self.nvars); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut minor: Vec<Vec<Polynomial>> = (0..n)
                    .filter(|&r| r != i)
                    .map(|r| (0..n).filter(|&c| c != j).map(|c| self.get(r, c).clone()).collect())
                    .collect();
                let d = bareiss(&mut minor, n - 1, self.nvars);
                entries[j * n + i] = if (i + j) % 2 == 0 { d } else { -&d };
            }
        }
        Ok(PolyMatrix {
            nrows: n,
            ncols: n,
            nvars: self.nvars,
            entries,
        })
    }
}

fn bareiss(a: &mut [Vec<Polynomial>], n: usize, nvars: usize) -> Polynomial {
    if n == 0 {
        return Polynomial::one(nvars);
    }
    let mut negate = false;
    let mut prev = Polynomial::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Polynomial::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss step must divide exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination; `None`
/// when singular.
pub fn invert_rational(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip()?;
        for v in a[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            let pivot_row = a[col].clone();
            for (v, p) in a[r].iter_mut().zip(&pivot_row) {
                *v = &*v - &(&f * p);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Monomial;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn k(n: usize, v: i64) -> Polynomial {
        Polynomial::constant(n, Rational::from_int(v))
    }

    /// Laplace expansion along the first row; independent of elimination.
    fn cofactor_det(m: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
        let n = m.len();
        if n == 0 {
            return Polynomial::one(nvars);
        }
        let mut acc = Polynomial::zero(nvars);
        for j in 0..n {
            let minor: Vec<Vec<Polynomial>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let t = &m[0][j] * &cofactor_det(&minor, nvars);
            acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    fn rows(m: &PolyMatrix) -> Vec<Vec<Polynomial>> {
        m.rows().map(<[Polynomial]>::to_vec).collect()
    }

    #[test]
    fn determinant_examples() {
        let y = x(2, 1);
        let m = PolyMatrix::from_rows(vec![
            vec![k(2, 1), y.scale(&Rational::from_int(2))],
            vec![k(2, 0), k(2, 1)],
        ])
        .unwrap();
        assert_eq!(m.determinant().unwrap(), k(2, 1));
        assert_eq!(PolyMatrix::identity(3, 2).determinant().unwrap(), k(2, 1));
        let m = PolyMatrix::from_rows(vec![vec![k(2, 1), k(2, 0)], vec![x(2, 1), x(2, 0)]]).unwrap();
        assert_eq!(m.determinant().unwrap(), x(2, 0));
        let bad = PolyMatrix::new(1, 2, vec![k(1, 1), k(1, 2)]).unwrap();
        assert!(matches!(bad.determinant(), Err(AlgebraError::NonSquare { .. })));
        assert!(bad.adjugate().is_err());
    }

    #[test]
    fn determinant_needs_pivoting() {
        let m = PolyMatrix::from_rows(vec![
            vec![k(2, 0), x(2, 0), k(2, 1)],
            vec![x(2, 1), k(2, 0), k(2, 2)],
            vec![k(2, 1), x(2, 1), k(2, 0)],
        ])
        .unwrap();
        assert_eq!(m.determinant().unwrap(), cofactor_det(&rows(&m), 2));
    }

    #[test]
    fn adjugate_examples() {
        let y = x(2, 1);
        let two_y = y.scale(&Rational::from_int(2));
        let m = PolyMatrix::from_rows(vec![vec![k(2, 1), two_y.clone()], vec![k(2, 0), k(2, 1)]]).unwrap();
        let expected = PolyMatrix::from_rows(vec![vec![k(2, 1), -&two_y], vec![k(2, 0), k(2, 1)]]).unwrap();
        assert_eq!(m.adjugate().unwrap(), expected);
        assert_eq!(
            PolyMatrix::identity(3, 1).adjugate().unwrap(),
            PolyMatrix::identity(3, 1)
        );
        let d = PolyMatrix::from_rows(vec![vec![k(1, 3), k(1, 0)], vec![k(1, 0), k(1, 7)]]).unwrap();
        let expected = PolyMatrix::from_rows(vec![vec![k(1, 7), k(1, 0)], vec![k(1, 0), k(1, 3)]]).unwrap();
        assert_eq!(d.adjugate().unwrap(), expected);
    }

    #[test]
    fn rational_inverse() {
        let q = |n, d| Rational::new(n, d);
        let m = vec![vec![q(2, 1), q(1, 1)], vec![q(0, 1), q(5, 1)]];
        let inv = invert_rational(&m).unwrap();
        assert_eq!(inv, vec![vec![q(1, 2), q(-1, 10)], vec![q(0, 1), q(1, 5)]]);
        assert!(invert_rational(&[vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]]).is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_poly(nvars: usize) -> impl Strategy<Value = Polynomial> {
            prop::collection::vec((prop::collection::vec(0u32..3, nvars), -3i64..=3), 0..4).prop_map(move |ts| {
                Polynomial::from_terms(
                    nvars,
                    ts.into_iter().map(|(e, c)| (Monomial::new(e), Rational::from_int(c))),
                )
            })
        }

        fn square(n: usize) -> impl Strategy<Value = PolyMatrix> {
            prop::collection::vec(small_poly(2), n * n).prop_map(move |e| PolyMatrix::new(n, n, e).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn bareiss_matches_cofactor_expansion(m in (1usize..=4).prop_flat_map(square)) {
                prop_assert_eq!(m.determinant().unwrap(), cofactor_det(&rows(&m), 2));
            }

            #[test]
            fn adjugate_identity(m in (1usize..=3).prop_flat_map(square)) {
                let det = m.determinant().unwrap();
                let adj = m.adjugate().unwrap();
                let n = m.nrows();
                let scaled: Vec<Polynomial> = (0..n * n)
                    .map(|k| if k / n == k % n { det.clone() } else { Polynomial::zero(2) })
                    .collect();
                let expected = PolyMatrix::new(n, n, scaled).unwrap();
                prop_assert_eq!(adj.mul(&m).unwrap(), expected.clone());
                prop_assert_eq!(m.mul(&adj).unwrap(), expected);
            }
        }
    }
}
