//! Dense univariate polynomials in `t` with exact integer coefficients.
//!
//! Coefficients are stored in ascending order and kept trimmed, so two
//! polynomials are equal exactly when their coefficient vectors are equal.
//! The zero polynomial has no coefficients.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is not divisible by 1 + t")]
    NotDivisible,
    #[error("degree {degree} exceeds n - 1 = {bound}")]
    DegreeTooHigh { degree: usize, bound: usize },
    #[error("span of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
}

/// Polynomial `c0 + c1 t + c2 t^2 + ...` over the integers.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![c])
    }

    /// `c t^exp`.
    pub fn monomial(c: i64, exp: usize) -> Self {
        let mut coeffs = vec![0; exp + 1];
        coeffs[exp] = c;
        Self::new(coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `c (1 + t)^k`, expanded with binomial coefficients.
    pub fn one_plus_t_pow(c: i64, k: usize) -> Self {
        let mut row = vec![1i64];
        for _ in 0..k {
            let mut next = vec![1i64; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        Self::new(row.into_iter().map(|b| b * c).collect())
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of `t^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn evaluate(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// Sum of the coefficients, i.e. the value at `t = 1`.
    pub fn coefficient_sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Highest minus lowest exponent carrying a nonzero coefficient.
    pub fn span(&self) -> Result<usize, PolyError> {
        match (self.lowest_degree(), self.degree()) {
            (Some(lo), Some(hi)) => Ok(hi - lo),
            _ => Err(PolyError::ZeroPolynomial),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn mul_by_one_plus_t(&self) -> Self {
        self + &self.shift(1)
    }

    /// Exact quotient by `1 + t`.
    pub fn div_exact_one_plus_t(&self) -> Result<Self, PolyError> {
        let Some(deg) = self.degree() else {
            return Ok(Self::zero());
        };
        // synthetic division by t + 1; q has degree deg - 1
        let mut q = Vec::with_capacity(deg);
        let mut carry = 0i64;
        for &c in &self.coeffs[..deg] {
            carry = c - carry;
            q.push(carry);
        }
        if carry != self.coeffs[deg] {
            return Err(PolyError::NotDivisible);
        }
        Ok(Self::new(q))
    }

    /// `t^(n-1) p(1/t)`: coefficient `i` of the result is coefficient `n-1-i` of `p`.
    pub fn reciprocal_transform(&self, n: usize) -> Result<Self, PolyError> {
        let Some(deg) = self.degree() else {
            return Ok(Self::zero());
        };
        if n == 0 || deg > n - 1 {
            return Err(PolyError::DegreeTooHigh {
                degree: deg,
                bound: n.saturating_sub(1),
            });
        }
        let coeffs = (0..n).map(|i| self.coeff(n - 1 - i)).collect();
        Ok(Self::new(coeffs))
    }

    /// Ascending list form, e.g. `[1,2,2,1]`. The zero polynomial renders as `[0]`.
    pub fn to_list_string(&self) -> String {
        if self.is_zero() {
            return "[0]".to_string();
        }
        let items: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", items.join(","))
    }

    /// Parses either the list form or the pretty form.
    pub fn parse(s: &str) -> Result<Self, PolyError> {
        s.parse()
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_list_string())
    }
}

/// Pretty form `1 + 2t + 2t^2 + t^3`, zero terms omitted.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let abs = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            match (i, abs) {
                (0, _) => write!(f, "{abs}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{abs}t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{abs}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        let err = || PolyError::Parse(s.to_string());
        if let Some(inner) = trimmed.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(err)?;
            if inner.trim().is_empty() {
                return Ok(Self::zero());
            }
            let coeffs = inner
                .split(',')
                .map(|tok| tok.trim().parse::<i64>().map_err(|_| err()))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(Self::new(coeffs));
        }
        parse_pretty(trimmed).ok_or_else(err)
    }
}

fn parse_pretty(s: &str) -> Option<IntPolynomial> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return None;
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let bytes = compact.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut sign = 1i64;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -1;
            }
            pos += 1;
        } else if pos != 0 {
            return None;
        }
        let end = compact[pos..]
            .find(['+', '-'])
            .map_or(bytes.len(), |off| pos + off);
        let term = &compact[pos..end];
        let (coef, exp) = parse_term(term)?;
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] += sign * coef;
        pos = end;
    }
    Some(IntPolynomial::new(coeffs))
}

fn parse_term(term: &str) -> Option<(i64, usize)> {
    if term.is_empty() {
        return None;
    }
    match term.find('t') {
        None => Some((term.parse().ok()?, 0)),
        Some(at) => {
            let coef = match term[..at].trim_end_matches('*') {
                "" => 1,
                digits => digits.parse().ok()?,
            };
            let rest = &term[at + 1..];
            let exp = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')?.parse().ok()?
            };
            Some((coef, exp))
        }
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: Self) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: Self) -> IntPolynomial {
        &self + &rhs
    }
}

impl AddAssign<&IntPolynomial> for IntPolynomial {
    fn add_assign(&mut self, rhs: &IntPolynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), 0);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: Self) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: Self) -> IntPolynomial {
        &self - &rhs
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        self.scale(-1)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: Self) -> IntPolynomial {
        &self * &rhs
    }
}

impl Sum for IntPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl<'a> Sum<&'a IntPolynomial> for IntPolynomial {
    fn sum<I: Iterator<Item = &'a IntPolynomial>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

/// Accumulates `t^exp` terms without reallocating per term.
#[derive(Debug, Clone, Default)]
pub(crate) struct TermCounter {
    counts: Vec<i64>,
}

impl TermCounter {
    pub(crate) fn with_capacity(len: usize) -> Self {
        Self { counts: vec![0; len] }
    }

    #[inline]
    pub(crate) fn add(&mut self, exp: usize, c: i64) {
        if exp >= self.counts.len() {
            self.counts.resize(exp + 1, 0);
        }
        self.counts[exp] += c;
    }

    pub(crate) fn merge(&mut self, other: &TermCounter) {
        for (exp, &c) in other.counts.iter().enumerate() {
            self.add(exp, c);
        }
    }

    pub(crate) fn into_poly(self) -> IntPolynomial {
        IntPolynomial::new(self.counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::new(c.to_vec())
    }

    #[test]
    fn divides_warping_polynomial_of_trefoil() {
        assert_eq!(p(&[1, 2, 2, 1]).div_exact_one_plus_t().unwrap(), p(&[1, 1, 1]));
        assert_eq!(p(&[0]).div_exact_one_plus_t().unwrap(), IntPolynomial::zero());
        assert_eq!(p(&[2, 5, 2]).div_exact_one_plus_t(), Err(PolyError::NotDivisible));
        assert_eq!(p(&[1]).div_exact_one_plus_t(), Err(PolyError::NotDivisible));
    }

    #[test]
    fn reciprocal() {
        assert_eq!(p(&[1, 1, 1]).reciprocal_transform(3).unwrap(), p(&[1, 1, 1]));
        assert_eq!(p(&[3]).reciprocal_transform(3).unwrap(), p(&[0, 0, 3]));
        assert_eq!(p(&[1, 2]).reciprocal_transform(4).unwrap(), p(&[0, 0, 2, 1]));
        assert_eq!(
            p(&[1, 0, 0, 1]).reciprocal_transform(3),
            Err(PolyError::DegreeTooHigh { degree: 3, bound: 2 })
        );
    }

    #[test]
    fn span_values() {
        assert_eq!(p(&[1, 1, 1]).span(), Ok(2));
        assert_eq!(p(&[0, 3]).span(), Ok(0));
        assert_eq!(p(&[2, 0, 1]).span(), Ok(2));
        assert_eq!(IntPolynomial::zero().span(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn binomial_power() {
        assert_eq!(IntPolynomial::one_plus_t_pow(8, 3), p(&[8, 24, 24, 8]));
        assert_eq!(IntPolynomial::one_plus_t_pow(2, 0), p(&[2]));
    }

    #[test]
    fn renders_pretty_and_list() {
        let w = p(&[1, 2, 2, 1]);
        assert_eq!(w.to_string(), "1 + 2t + 2t^2 + t^3");
        assert_eq!(w.to_list_string(), "[1,2,2,1]");
        assert_eq!(p(&[0, 3]).to_string(), "3t");
        assert_eq!(p(&[1, -1]).to_string(), "1 - t");
        assert_eq!(p(&[0, 0, -2]).to_string(), "-2t^2");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(IntPolynomial::zero().to_list_string(), "[0]");
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!("1 + t + t^2".parse::<IntPolynomial>().unwrap(), p(&[1, 1, 1]));
        assert_eq!("[2,5,2]".parse::<IntPolynomial>().unwrap(), p(&[2, 5, 2]));
        assert_eq!("3t".parse::<IntPolynomial>().unwrap(), p(&[0, 3]));
        assert_eq!("-t + 2t^3".parse::<IntPolynomial>().unwrap(), p(&[0, -1, 0, 2]));
        assert_eq!("0".parse::<IntPolynomial>().unwrap(), IntPolynomial::zero());
        assert!("1 + + t".parse::<IntPolynomial>().is_err());
        assert!("x^2".parse::<IntPolynomial>().is_err());
        assert!("[1,2".parse::<IntPolynomial>().is_err());
    }

    fn arb_poly() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-50i64..50, 0..10).prop_map(IntPolynomial::new)
    }

    proptest! {
        #[test]
        fn one_plus_t_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.mul_by_one_plus_t().div_exact_one_plus_t().unwrap(), a);
        }

        #[test]
        fn reciprocal_is_involution_at_full_degree(a in arb_poly()) {
            if let Some(deg) = a.degree() {
                if a.coeff(0) != 0 {
                    let n = deg + 1;
                    let back = a.reciprocal_transform(n).unwrap().reciprocal_transform(n).unwrap();
                    prop_assert_eq!(back, a);
                }
            }
        }

        #[test]
        fn text_forms_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<IntPolynomial>().unwrap(), a.clone());
            prop_assert_eq!(a.to_list_string().parse::<IntPolynomial>().unwrap(), a);
        }

        #[test]
        fn evaluation_is_a_ring_map(a in arb_poly(), b in arb_poly(), t in -3i64..4) {
            prop_assert_eq!((&a * &b).evaluate(t), a.evaluate(t) * b.evaluate(t));
            prop_assert_eq!((&a + &b).evaluate(t), a.evaluate(t) + b.evaluate(t));
            prop_assert_eq!(a.evaluate(1), a.coefficient_sum());
        }
    }
}
