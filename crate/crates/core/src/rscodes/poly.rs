use std::fmt;

use crate::gf::{Field, FieldElement};

/// Degree of a polynomial; the zero polynomial sits below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Coefficients low degree first, never with a trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `x^d`.
    pub fn monomial(field: &Field, d: usize) -> Self {
        let mut coeffs = vec![field.zero(); d + 1];
        coeffs[d] = field.one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, field: &Field, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_else(|| field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            len => Degree::Finite(len - 1),
        }
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    /// Horner evaluation.
    pub fn eval(&self, field: &Field, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..len)
                .map(|i| field.add(self.coeff(field, i), other.coeff(field, i)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &Field, other: &Poly) -> Poly {
        self.add(field, &other.scale(field, field.neg(field.one())))
    }

    pub fn scale(&self, field: &Field, s: FieldElement) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| field.mul(c, s)).collect())
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// Divides by the leading coefficient; `None` for the zero polynomial.
    pub fn monic(&self, field: &Field) -> Option<Poly> {
        let lead = self.leading()?;
        let inv = field.inv(lead).ok()?;
        Some(self.scale(field, inv))
    }

    /// Quotient by `x - r` via synthetic division, for `r` a root.
    pub(crate) fn div_linear(&self, field: &Field, r: FieldElement) -> Poly {
        let n = self.coeffs.len();
        if n <= 1 {
            return Poly::zero();
        }
        let mut out = vec![field.zero(); n - 1];
        let mut carry = field.zero();
        for i in (1..n).rev() {
            carry = field.add(self.coeffs[i], field.mul(carry, r));
            out[i - 1] = carry;
        }
        Poly::new(out)
    }
}
