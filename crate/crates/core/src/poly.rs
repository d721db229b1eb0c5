//! Univariate polynomials over GF(q) with hyperderivatives.
//!
//! The j-th hyperderivative (Hasse derivative) of `f = Σ f_k x^k` is
//! `∂^j f = Σ_{k ≥ j} C(k, j) f_k x^{k-j}`, the coefficient of `z^j` in
//! `f(x + z)`. Unlike the ordinary derivative it does not lose information in
//! positive characteristic, so `f = Σ_j ∂^j f(u) (x - u)^j` holds over any field.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Degree of a polynomial; the zero polynomial has degree `NegInf`, which
/// compares below every finite degree.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    /// True when `n > self`, the guard under which `∂^n f` vanishes.
    pub fn is_below(self, n: usize) -> bool {
        self < Degree::Finite(n)
    }
}

/// Order of vanishing at a point; the zero polynomial vanishes to infinite order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum VanishingOrder {
    Finite(usize),
    Infinite,
}

impl VanishingOrder {
    /// `min(ν, cap)` as an integer.
    pub fn capped(self, cap: usize) -> usize {
        match self {
            VanishingOrder::Finite(v) => v.min(cap),
            VanishingOrder::Infinite => cap,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    /// Coefficient of x^i at index i; no trailing zeros.
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{:?}]({})", self.field, self)
    }
}

impl fmt::Display for Polynomial {
    /// Comma-separated coefficients low-to-high; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Polynomial {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Polynomial {
        debug_assert!(coeffs.iter().all(|c| c.value() < field.order()));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial {
            field: field.clone(),
            coeffs,
        }
    }

    /// Coefficients given as integers, reduced into the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Polynomial {
        Polynomial::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Polynomial {
        Polynomial::new(field, Vec::new())
    }

    pub fn constant(field: &Field, c: FieldElement) -> Polynomial {
        Polynomial::new(field, vec![c])
    }

    /// `c · x^k`.
    pub fn monomial(field: &Field, c: FieldElement, k: usize) -> Polynomial {
        let mut coeffs = vec![FieldElement::ZERO; k + 1];
        coeffs[k] = c;
        Polynomial::new(field, coeffs)
    }

    /// `(x - u)^t`.
    pub fn linear_power(field: &Field, u: FieldElement, t: usize) -> Polynomial {
        let lin = Polynomial::new(field, vec![field.neg(u), field.one()]);
        (0..t).fold(Polynomial::constant(field, field.one()), |acc, _| acc.mul(&lin))
    }

    /// Parses `"c0,c1,..."` (low-to-high canonical residues).
    pub fn parse(field: &Field, s: &str) -> Result<Polynomial> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Polynomial::zero(field));
        }
        let coeffs = s
            .split(',')
            .map(|c| {
                let v: u64 = c
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
                field.element(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::new(field, coeffs))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_field(&self, other: &Polynomial) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| self.field.add(self.coeff(k), other.coeff(k)))
            .collect();
        Polynomial::new(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.check_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| self.field.sub(self.coeff(k), other.coeff(k)))
            .collect();
        Polynomial::new(&self.field, coeffs)
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Polynomial::new(&self.field, coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Polynomial::new(f, out)
    }

    /// Horner evaluation.
    pub fn eval(&self, u: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, u), c))
    }

    /// `∂^j f(u)` without materialising `∂^j f`.
    pub fn hasse_eval(&self, j: usize, u: FieldElement) -> FieldElement {
        let f = &self.field;
        let mut acc = FieldElement::ZERO;
        for k in (j..self.coeffs.len()).rev() {
            let term = f.mul(f.binom(k as u64, j as i64), self.coeffs[k]);
            acc = f.add(f.mul(acc, u), term);
        }
        acc
    }

    /// The j-th hyperderivative `Σ_{k ≥ j} C(k, j) f_k x^{k-j}`; zero once
    /// `j > deg f`.
    pub fn hyperderivative(&self, j: usize) -> Polynomial {
        if self.degree().is_below(j) {
            return Polynomial::zero(&self.field);
        }
        let f = &self.field;
        let coeffs = (j..self.coeffs.len())
            .map(|k| f.mul(f.binom(k as u64, j as i64), self.coeffs[k]))
            .collect();
        Polynomial::new(f, coeffs)
    }

    /// `(∂^0 f(u), ..., ∂^{deg f} f(u))`; empty for the zero polynomial.
    pub fn taylor_coeffs(&self, u: FieldElement) -> Vec<FieldElement> {
        (0..self.coeffs.len()).map(|j| self.hasse_eval(j, u)).collect()
    }

    /// Rebuilds `Σ_j c_j (x - u)^j`.
    pub fn from_taylor(field: &Field, u: FieldElement, taylor: &[FieldElement]) -> Polynomial {
        let lin = Polynomial::new(field, vec![field.neg(u), field.one()]);
        // Horner in (x - u)
        taylor.iter().rev().fold(Polynomial::zero(field), |acc, &c| {
            acc.mul(&lin).add(&Polynomial::constant(field, c))
        })
    }

    /// Smallest m with `∂^m f(u) ≠ 0`.
    pub fn vanishing_order(&self, u: FieldElement) -> VanishingOrder {
        (0..self.coeffs.len())
            .find(|&j| !self.hasse_eval(j, u).is_zero())
            .map_or(VanishingOrder::Infinite, VanishingOrder::Finite)
    }

    /// Division by `x - u`: returns `(quotient, remainder)`.
    pub fn div_rem_linear(&self, u: FieldElement) -> (Polynomial, FieldElement) {
        let f = &self.field;
        if self.coeffs.is_empty() {
            return (Polynomial::zero(f), FieldElement::ZERO);
        }
        let n = self.coeffs.len();
        let mut quot = vec![FieldElement::ZERO; n - 1];
        let mut carry = FieldElement::ZERO;
        for k in (0..n).rev() {
            let v = f.add(self.coeffs[k], f.mul(carry, u));
            if k == 0 {
                return (Polynomial::new(f, quot), v);
            }
            quot[k - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    /// `f(c·x)`: coefficient k becomes `f_k c^k`.
    pub fn scale_substitute(&self, c: FieldElement) -> Polynomial {
        let f = &self.field;
        let mut pow = f.one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &a in &self.coeffs {
            coeffs.push(f.mul(a, pow));
            pow = f.mul(pow, c);
        }
        Polynomial::new(f, coeffs)
    }
}
