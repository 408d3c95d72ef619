//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use crate::error::AlgebraError;
use crate::monomial::Monomial;
use crate::rational::Rational;

/// Total degree of a polynomial. The zero polynomial has degree
/// [`Degree::MinusInf`], which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    MinusInf,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::MinusInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial in `nvars` variables over the rationals.
///
/// Terms are kept sorted in the canonical graded order of [`Monomial`] with no
/// zero coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(Monomial::one(nvars), c)],
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The coordinate polynomial `X_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index {var} out of range for {nvars} variables");
        Self::monomial(Monomial::var(nvars, var), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(m, c)],
        }
    }

    /// Collects terms, merging duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity does not match polynomial");
            accumulate(&mut acc, m, &c);
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: FxHashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Polynomial { nvars, terms }
    }

    /// Builds from terms already sorted, distinct and nonzero.
    fn from_sorted(nvars: usize, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if this is a constant polynomial (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub fn degree(&self) -> Degree {
        // Sorted by total degree, so the last term has the maximal one.
        match self.terms.last() {
            None => Degree::MinusInf,
            Some((m, _)) => Degree::Finite(m.total_degree()),
        }
    }

    /// Largest term in the canonical monomial order.
    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.last()
    }

    fn check_same(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_same(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_same(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_same(other)?;
        Ok(self.mul_impl(other, None))
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let rhs = |c: &Rational| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0.clone(), rhs(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), rhs(c))));
        Polynomial::from_sorted(self.nvars, out)
    }

    /// Product, optionally dropping every term of total degree above `cap`.
    fn mul_impl(&self, other: &Polynomial, cap: Option<u32>) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c).truncated_opt(cap);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c).truncated_opt(cap);
        }
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        acc.reserve(self.terms.len().max(other.terms.len()) * 2);
        for (ma, ca) in &self.terms {
            let da = ma.total_degree();
            for (mb, cb) in &other.terms {
                if let Some(cap) = cap {
                    // terms of `other` are sorted by degree
                    if da + mb.total_degree() > cap {
                        break;
                    }
                }
                accumulate(&mut acc, ma.mul(mb), &(ca * cb));
            }
        }
        Polynomial::from_map(self.nvars, acc)
    }

    /// `Σ_l coeffs[l]·∂p/∂X_l` for `l < coeffs.len()`, without forming the
    /// partial derivatives.
    pub(crate) fn apply_derivation(&self, coeffs: &[Polynomial]) -> Polynomial {
        let mut acc = TermSum::default();
        for (m, c) in &self.terms {
            for (l, q) in coeffs.iter().enumerate() {
                let e = m.exponent(l);
                if e == 0 || q.is_zero() {
                    continue;
                }
                let scaled = c * &Rational::from_int(i64::from(e));
                for (mq, cq) in &q.terms {
                    acc.add(m.mul_lowered(mq, l), &scaled * cq);
                }
            }
        }
        acc.finish(self.nvars)
    }

    /// Builds from sorted terms that may repeat a monomial.
    fn from_sorted_with_repeats(nvars: usize, terms: Vec<(Monomial, Rational)>) -> Self {
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => {
                    if out.last().is_some_and(|(_, lc)| lc.is_zero()) {
                        out.pop();
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|(_, lc)| lc.is_zero()) {
            out.pop();
        }
        Polynomial::from_sorted(nvars, out)
    }

    /// Product truncated to total degree `<= cap`.
    pub fn mul_truncated(&self, other: &Polynomial, cap: u32) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "dimension mismatch");
        self.mul_impl(other, Some(cap))
    }

    /// Drops every term of total degree above `cap`.
    pub fn truncated(&self, cap: u32) -> Polynomial {
        let keep = self.terms.partition_point(|(m, _)| m.total_degree() <= cap);
        Polynomial::from_sorted(self.nvars, self.terms[..keep].to_vec())
    }

    fn truncated_opt(self, cap: Option<u32>) -> Polynomial {
        match cap {
            Some(c) => self.truncated(c),
            None => self,
        }
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        let lo = self.terms.partition_point(|(m, _)| m.total_degree() < d);
        let hi = self.terms.partition_point(|(m, _)| m.total_degree() <= d);
        Polynomial::from_sorted(self.nvars, self.terms[lo..hi].to_vec())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        Polynomial::from_sorted(self.nvars, self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect())
    }

    /// Multiplication by the monomial `m` (an exponent shift).
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        assert_eq!(self.nvars, m.nvars(), "dimension mismatch");
        Polynomial::from_sorted(
            self.nvars,
            self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        )
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to variable `var` (0-based).
    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial, AlgebraError> {
        if var >= self.nvars {
            return Err(AlgebraError::IndexOutOfRange {
                index: var,
                len: self.nvars,
            });
        }
        Ok(self.diff(var))
    }

    pub(crate) fn diff(&self, var: usize) -> Polynomial {
        let mut out: Vec<(Monomial, Rational)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) > 0)
            .map(|(m, c)| {
                let e = m.exponent(var);
                (m.decremented(var), c * &Rational::from_int(e as i64))
            })
            .collect();
        // Lowering one exponent by one preserves the relative order within a
        // degree, and degrees drop uniformly, so the result stays sorted.
        debug_assert!(out.windows(2).all(|w| w[0].0 < w[1].0));
        out.retain(|(_, c)| !c.is_zero());
        Polynomial::from_sorted(self.nvars, out)
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|j| self.diff(j)).collect()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        if point.len() != self.nvars {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut powers: Vec<Vec<Rational>> = point.iter().map(|v| vec![Rational::one(), v.clone()]).collect();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (var, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[var];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &point[var];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            total += &t;
        }
        Ok(total)
    }

    /// Value at the origin, i.e. the constant coefficient.
    pub fn constant_term(&self) -> Rational {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    /// Replaces each `X_j` by `images[j]`. All images must share one
    /// variable count `m`; the result lives in `m` variables.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, AlgebraError> {
        let target = check_images(self.nvars, images)?;
        Ok(Substitution::new(images, target, None).apply(self))
    }

    /// Like [`Polynomial::substitute`] but working modulo monomials of total
    /// degree above `cap`.
    pub fn substitute_truncated(&self, images: &[Polynomial], cap: u32) -> Result<Polynomial, AlgebraError> {
        let target = check_images(self.nvars, images)?;
        Ok(Substitution::new(images, target, Some(cap)).apply(self))
    }

    /// Reinterprets the polynomial in `nvars` variables, mapping variable `j`
    /// to `offset + j`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Polynomial {
        assert!(offset + self.nvars <= nvars);
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (m.embed(nvars, offset), c.clone()))
            .collect();
        if offset == 0 {
            // Extra trailing zeros keep degrees and the lexicographic tie-break.
            Polynomial::from_sorted(nvars, terms)
        } else {
            Polynomial::from_terms(nvars, terms)
        }
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.nvars, divisor.nvars, "dimension mismatch");
        let (lm, lc) = divisor.leading_term()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()?));
        }
        let lc_inv = lc.recip()?;
        let mut rem = self.clone();
        let mut quotient: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(lm)?;
            let qc = rc * &lc_inv;
            rem = &rem - &divisor.mul_monomial(&qm).scale(&qc);
            quotient.push((qm, qc));
        }
        Some(Polynomial::from_terms(self.nvars, quotient))
    }
}

/// Below this many terms, sorting beats hashing.
const SMALL_PRODUCT: usize = 48;

/// Sum of loose terms: a short list that is sorted at the end, switching to
/// a hash map once it grows.
enum TermSum {
    List(Vec<(Monomial, Rational)>),
    Map(FxHashMap<Monomial, Rational>),
}

impl Default for TermSum {
    fn default() -> Self {
        TermSum::List(Vec::new())
    }
}

impl TermSum {
    fn add(&mut self, m: Monomial, c: Rational) {
        match self {
            TermSum::List(terms) if terms.len() < SMALL_PRODUCT => terms.push((m, c)),
            TermSum::List(terms) => {
                let mut acc = FxHashMap::default();
                acc.reserve(4 * SMALL_PRODUCT);
                for (m, c) in terms.drain(..) {
                    accumulate(&mut acc, m, &c);
                }
                accumulate(&mut acc, m, &c);
                *self = TermSum::Map(acc);
            }
            TermSum::Map(acc) => accumulate(acc, m, &c),
        }
    }

    fn finish(self, nvars: usize) -> Polynomial {
        match self {
            TermSum::List(mut terms) => {
                terms.sort_unstable_by(|x, y| x.0.cmp(&y.0));
                Polynomial::from_sorted_with_repeats(nvars, terms)
            }
            TermSum::Map(acc) => Polynomial::from_map(nvars, acc),
        }
    }
}

fn accumulate(acc: &mut FxHashMap<Monomial, Rational>, m: Monomial, c: &Rational) {
    match acc.get_mut(&m) {
        Some(slot) => *slot += c,
        None => {
            acc.insert(m, c.clone());
        }
    }
}

fn check_images(nvars: usize, images: &[Polynomial]) -> Result<usize, AlgebraError> {
    if images.len() != nvars {
        return Err(AlgebraError::DimensionMismatch {
            expected: nvars,
            found: images.len(),
        });
    }
    let Some(first) = images.first() else {
        return Err(AlgebraError::Empty);
    };
    let target = first.nvars;
    if let Some(bad) = images.iter().find(|p| p.nvars != target) {
        return Err(AlgebraError::DimensionMismatch {
            expected: target,
            found: bad.nvars,
        });
    }
    Ok(target)
}

/// Substitution context with cached powers of each image.
struct Substitution<'a> {
    images: &'a [Polynomial],
    target: usize,
    cap: Option<u32>,
    powers: Vec<Vec<Polynomial>>,
}

impl<'a> Substitution<'a> {
    fn new(images: &'a [Polynomial], target: usize, cap: Option<u32>) -> Self {
        let powers = images.iter().map(|_| vec![Polynomial::one(target)]).collect();
        Substitution {
            images,
            target,
            cap,
            powers,
        }
    }

    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.mul_impl(b, self.cap)
    }

    fn power(&mut self, var: usize, e: u32) -> &Polynomial {
        while self.powers[var].len() <= e as usize {
            let last = self.powers[var].last().unwrap();
            let next = self.mul(last, &self.images[var]);
            self.powers[var].push(next);
        }
        &self.powers[var][e as usize]
    }

    fn apply(&mut self, p: &Polynomial) -> Polynomial {
        let terms: Vec<&(Monomial, Rational)> = p.terms.iter().collect();
        self.rec(&terms, 0)
    }

    /// Groups terms by the exponent of `var` and recurses on the rest, so a
    /// shared prefix of exponents is substituted once.
    fn rec(&mut self, terms: &[&(Monomial, Rational)], var: usize) -> Polynomial {
        if terms.is_empty() {
            return Polynomial::zero(self.target);
        }
        if var == self.images.len() {
            let c = terms.iter().fold(Rational::zero(), |acc, (_, c)| &acc + c);
            return Polynomial::constant(self.target, c);
        }
        let mut groups: Vec<(u32, Vec<&(Monomial, Rational)>)> = Vec::new();
        for &t in terms {
            let e = t.0.exponent(var);
            match groups.iter_mut().find(|(g, _)| *g == e) {
                Some((_, v)) => v.push(t),
                None => groups.push((e, vec![t])),
            }
        }
        groups.sort_by_key(|(e, _)| *e);
        let mut total = Polynomial::zero(self.target);
        for (e, group) in groups {
            let inner = self.rec(&group, var + 1);
            if inner.is_zero() {
                continue;
            }
            let term = if e == 0 {
                inner
            } else {
                let pw = self.power(var, e).clone();
                self.mul(&pw, &inner)
            };
            total = &total + &term;
        }
        total
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_sorted(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&crate::io::format::format_poly(self, &names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn c(n: usize, v: Rational) -> Polynomial {
        Polynomial::constant(n, v)
    }

    #[test]
    fn add_examples() {
        let (px, py) = (x(2, 0), x(2, 1));
        assert_eq!(&(&px + &py) + &(&px - &py), px.scale(&q(2, 1)));
        let p = &px + &(&py * &py);
        assert_eq!(&p + &Polynomial::zero(2), p);
        let half = &(&px * &px) + &c(2, q(1, 2));
        assert_eq!(&half + &half, &(&px * &px).scale(&q(2, 1)) + &Polynomial::one(2));
        assert!(px.checked_add(&x(3, 0)).is_err());
    }

    #[test]
    fn mul_examples() {
        let (px, py) = (x(2, 0), x(2, 1));
        assert_eq!(&(&px + &py) * &(&px - &py), &(&px * &px) - &(&py * &py));
        let p = &px + &(&py * &py);
        assert_eq!(&p * &Polynomial::one(2), p);
        let expected = Polynomial::from_terms(
            2,
            [
                (Monomial::new([2, 0]), q(1, 1)),
                (Monomial::new([1, 2]), q(2, 1)),
                (Monomial::new([0, 4]), q(1, 1)),
            ],
        );
        assert_eq!(&p * &p, expected);
        assert!(px.checked_mul(&x(1, 0)).is_err());
    }

    #[test]
    fn derivative_examples() {
        let (px, py) = (x(2, 0), x(2, 1));
        let p = &px + &(&py * &py);
        assert_eq!(p.partial_derivative(1).unwrap(), py.scale(&q(2, 1)));
        assert!(c(2, q(7, 1)).partial_derivative(0).unwrap().is_zero());
        let x2y3 = Polynomial::monomial(Monomial::new([2, 3]), q(1, 1));
        assert_eq!(
            x2y3.partial_derivative(0).unwrap(),
            Polynomial::monomial(Monomial::new([1, 3]), q(2, 1))
        );
        assert!(p.partial_derivative(2).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let (px, py) = (x(2, 0), x(2, 1));
        let p = &px + &(&py * &py);
        assert_eq!(p.evaluate(&[q(1, 1), q(2, 1)]).unwrap(), q(5, 1));
        assert_eq!(Polynomial::zero(2).evaluate(&[q(3, 1), q(-1, 1)]).unwrap(), q(0, 1));
        let r = &(&px * &px) - &c(2, q(1, 4));
        assert_eq!(r.evaluate(&[q(1, 2), q(0, 1)]).unwrap(), q(0, 1));
        assert!(p.evaluate(&[q(1, 1)]).is_err());
    }

    #[test]
    fn substitute_examples() {
        let (px, py) = (x(2, 0), x(2, 1));
        let p = &px + &(&py * &py);
        let inv = [&px - &(&py * &py), py.clone()];
        assert_eq!(p.substitute(&inv).unwrap(), px);
        assert_eq!(p.substitute(&[px.clone(), py.clone()]).unwrap(), p);
        let xy = &px * &py;
        assert_eq!(xy.substitute(&[py.clone(), px.clone()]).unwrap(), xy);
        assert!(p.substitute(std::slice::from_ref(&px)).is_err());
        assert!(p.substitute(&[px.clone(), x(3, 1)]).is_err());
    }

    #[test]
    fn truncated_substitution_agrees_below_cap() {
        let (px, py) = (x(2, 0), x(2, 1));
        let p = &(&px * &px * py.clone()) + &(&py * &py) + px.clone();
        let imgs = [&px + &(&py * &py), &py - &(&px * &px)];
        let full = p.substitute(&imgs).unwrap();
        for cap in 0..8 {
            assert_eq!(p.substitute_truncated(&imgs, cap).unwrap(), full.truncated(cap));
        }
    }

    #[test]
    fn degree_examples() {
        let (px, py) = (x(2, 0), x(2, 1));
        assert_eq!((&px + &(&py * &py)).degree(), Degree::Finite(2));
        assert_eq!(Polynomial::zero(2).degree(), Degree::MinusInf);
        let p = &Polynomial::monomial(Monomial::new([2, 3]), q(1, 1)) + &px.pow(4);
        assert_eq!(p.degree(), Degree::Finite(5));
        assert!(Degree::MinusInf < Degree::Finite(0));
    }

    #[test]
    fn exact_division() {
        let (px, py) = (x(2, 0), x(2, 1));
        let a = &px + &py.scale(&q(2, 1));
        let b = &(&px * &px) - &py;
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!(px.div_exact(&py), None);
        assert_eq!(prod.div_exact(&c(2, q(1, 2))), Some(prod.scale(&q(2, 1))));
    }

    #[test]
    fn embed_shifts_variables() {
        let p = &x(2, 0) + &(&x(2, 1) * &x(2, 1));
        let e = p.embed(4, 2);
        assert_eq!(e, &x(4, 2) + &(&x(4, 3) * &x(4, 3)));
        assert_eq!(p.embed(3, 0), &x(3, 0) + &(&x(3, 1) * &x(3, 1)));
    }
}
