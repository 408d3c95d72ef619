//! Exponent vectors and the canonical term order.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub(crate) type Exponents = SmallVec<[u32; 6]>;

/// A monomial `X^α` over a fixed number of variables, stored as its exponent
/// vector `α`. The same type doubles as a multi-index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: smallvec::smallvec![0; nvars],
        }
    }

    pub fn new(exps: impl IntoIterator<Item = u32>) -> Self {
        Monomial {
            exps: exps.into_iter().collect(),
        }
    }

    /// The monomial `X_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[var] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self · other / X_var`; `self` must contain `X_var`.
    pub(crate) fn mul_lowered(&self, other: &Monomial, var: usize) -> Monomial {
        let mut m = self.mul(other);
        m.exps[var] -= 1;
        m
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = Exponents::with_capacity(self.nvars());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps })
    }

    /// Multi-index with one added at `var`.
    pub fn incremented(&self, var: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[var] += 1;
        m
    }

    /// Lowers the exponent of `var` by one; it must be positive.
    pub(crate) fn decremented(&self, var: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[var] -= 1;
        m
    }

    /// Index of the last nonzero exponent, `None` for the unit monomial.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e != 0)
    }

    /// `α!` = product of factorials of the exponents.
    pub fn factorial(&self) -> crate::Rational {
        self.exps
            .iter()
            .fold(crate::Rational::one(), |acc, &e| &acc * &crate::Rational::factorial(e))
    }

    /// Widen to `nvars` slots, placing the existing exponents at `offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Monomial {
        let mut m = Self::one(nvars);
        m.exps[offset..offset + self.nvars()].copy_from_slice(&self.exps);
        m
    }

    /// All exponent vectors over `nvars` slots of total degree exactly `degree`,
    /// in canonical order.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(slot: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Monomial>) {
            if slot + 1 == cur.len() {
                cur[slot] = left;
                out.push(Monomial { exps: cur.clone() });
                return;
            }
            for e in (0..=left).rev() {
                cur[slot] = e;
                rec(slot + 1, left - e, cur, out);
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        let mut cur = smallvec::smallvec![0; nvars];
        rec(0, degree, &mut cur, &mut out);
        out
    }
}

impl Ord for Monomial {
    /// Graded order: lower total degree first; within a degree, the
    /// lexicographically larger exponent vector (under the declared variable
    /// order) comes first, so `x^2 < x*y < y^2`. Compatible with
    /// multiplication, hence a monomial order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}
