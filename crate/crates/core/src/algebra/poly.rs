use std::cmp::Ordering;

use super::field::{Fe, Field};

/// Univariate polynomial, coefficients lowest degree first.
///
/// Always canonical: no trailing zero coefficient, so the zero polynomial is
/// the empty vector and structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Fe) -> Poly {
        Poly::new(vec![c])
    }

    /// `X^k`.
    pub fn monomial(k: usize) -> Poly {
        let mut coeffs = vec![Fe::ZERO; k + 1];
        coeffs[k] = Fe::ONE;
        Poly { coeffs }
    }

    pub fn new(mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_values(field: &Field, values: &[u64]) -> Poly {
        Poly::new(values.iter().map(|&v| field.elem(v)).collect())
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of `X^k` (zero beyond the degree).
    #[inline]
    pub fn coeff(&self, k: usize) -> Fe {
        self.coeffs.get(k).copied().unwrap_or(Fe::ZERO)
    }

    /// Coefficients padded with zeros to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Vec<Fe> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), Fe::ZERO);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, field: &Field, x: Fe) -> Fe {
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| field.mul_add(c, acc, x))
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|k| field.add(self.coeff(k), other.coeff(k))).collect())
    }

    pub fn sub(&self, field: &Field, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|k| field.sub(self.coeff(k), other.coeff(k))).collect())
    }

    pub fn scale(&self, field: &Field, c: Fe) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.mul_add(out[i + j], a, b);
            }
        }
        Poly::new(out)
    }

    /// `P(c X)`.
    pub fn dilate(&self, field: &Field, c: Fe) -> Poly {
        let mut power = Fe::ONE;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &a in &self.coeffs {
            out.push(field.mul(a, power));
            power = field.mul(power, c);
        }
        Poly::new(out)
    }

    /// The `order`-th Hasse derivative: coefficient `j` of the result is
    /// `C(j + order, order) * a_{j + order}`.
    pub fn hasse_derivative(&self, field: &Field, order: usize) -> Poly {
        if order == 0 {
            return self.clone();
        }
        if order >= self.coeffs.len() {
            return Poly::zero();
        }
        let out = (order..self.coeffs.len())
            .map(|k| field.mul(field.binomial(k as u64, order as u64), self.coeffs[k]))
            .collect();
        Poly::new(out)
    }
}

/// Lexicographic on coefficient vectors, lowest degree first, with missing
/// high coefficients read as zero.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|k| self.coeff(k).cmp(&other.coeff(k)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
