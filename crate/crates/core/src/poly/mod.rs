//! Univariate polynomials over the supported fields, their complete
//! factorization, and the bivariate super-characteristic polynomial.

mod bivar;
mod factor;
mod integer;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};

pub use bivar::{super_char_poly, BivarPoly};
pub use factor::{factor, quadratic_irreducible, squarefree_decomposition, FactorRecord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("expected degree {expected}, got {actual:?}")]
    WrongDegree { expected: usize, actual: Option<usize> },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// Dense univariate polynomial; coefficients ascending by degree with
/// trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn from_coeffs(field: Field, mut coeffs: Vec<FieldElement>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_coeffs(c.field(), vec![c])
    }

    /// The indeterminate `T`.
    pub fn x(field: Field) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::from_coeffs(field, coeffs)
    }

    /// `T − c`.
    pub fn linear(c: &FieldElement) -> Self {
        Self::from_coeffs(c.field(), vec![-c, c.field().one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(FieldElement::is_one)
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::Mismatch(self.field, other.field).into())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::from_coeffs(self.field, (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::from_coeffs(self.field, (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Ok(Self::from_coeffs(self.field, out))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_coeffs(self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Scaled to leading coefficient one; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
            _ => self.clone(),
        }
    }

    /// `(q, r)` with `self = q·divisor + r` and `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        self.check(divisor)?;
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(self.field), Self::zero(self.field)));
        };
        if nd < dd {
            return Ok((Self::zero(self.field), self.clone()));
        }
        let inv_lead = divisor.lead().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &inv_lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * b);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(self.field, quot), Self::from_coeffs(self.field, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, PolyError> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact quotient; `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>, PolyError> {
        let (q, r) = self.divmod(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.field,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * self.field.from_i64(i as i64)).collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| acc * x + c)
    }

    /// `self(g(T))`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(self.field), |acc, c| &(&acc * g) + &Self::constant(c.clone()))
    }

    /// Applies a coefficient map (e.g. Galois conjugation).
    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        Self::from_coeffs(self.field, self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.field), |acc, _| &acc * self)
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Result<Self, PolyError> {
        let base = self.rem(modulus)?;
        let mut acc = Self::one(self.field).rem(modulus)?;
        for i in (0..exp.bits()).rev() {
            acc = (&acc * &acc).rem(modulus)?;
            if exp.bit(i) {
                acc = (&acc * &base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Text syntax: `T^4+1`, `T^2-sqrt(2)*T+1`; compound coefficients are
    /// parenthesized, e.g. `(1+sqrt(2))*T`.
    pub fn parse(field: Field, input: &str) -> Result<Self, PolyError> {
        let err = |reason: &str| PolyError::Parse { input: input.to_string(), reason: reason.to_string() };
        let text: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(err("empty input"));
        }
        let mut terms = Vec::new();
        let (mut start, mut depth) = (0, 0i32);
        for (i, c) in text.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && i > start && !text[..i].ends_with('^') => {
                    terms.push(&text[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        terms.push(&text[start..]);
        let mut acc = Self::zero(field);
        for term in terms {
            let (negative, body) = match term.as_bytes()[0] {
                b'-' => (true, &term[1..]),
                b'+' => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let (coef_text, power) = match split_variable(body) {
                Some((coef, exp)) => {
                    let k = match exp {
                        "" => 1,
                        e => e.strip_prefix('^').and_then(|e| e.parse::<usize>().ok()).ok_or_else(|| err("bad exponent"))?,
                    };
                    (coef, k)
                }
                None => (Some(body), 0),
            };
            let mut c = match coef_text {
                None => field.one(),
                Some(t) => field.parse(t)?,
            };
            if negative {
                c = -c;
            }
            acc = &acc + &Self::monomial(c, power);
        }
        Ok(acc)
    }

    /// Coefficient list as element strings, ascending by degree.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "field": self.field.to_json(),
            "coeffs": self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "text": self.to_string(),
        })
    }
}

/// Splits `c*T^k` into `(Some(c), "^k")`, `T^k` into `(None, "^k")`;
/// `None` for a constant term.
fn split_variable(body: &str) -> Option<(Option<&str>, &str)> {
    let mut depth = 0i32;
    let mut pos = None;
    let bytes = body.as_bytes();
    let is_word = |j: Option<usize>| j.and_then(|j| bytes.get(j)).is_some_and(u8::is_ascii_alphabetic);
    for (i, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            // a lone letter, not part of a word such as `sqrt`
            'T' | 'x' | 't' if depth == 0 && !is_word(i.checked_sub(1)) && !is_word(Some(i + 1)) => pos = Some(i),
            _ => {}
        }
    }
    let i = pos?;
    let coef = &body[..i];
    let rest = &body[i + 1..];
    if coef.is_empty() {
        Some((None, rest))
    } else {
        Some((Some(coef.strip_suffix('*').unwrap_or(coef)), rest))
    }
}

fn is_compound(text: &str) -> bool {
    text.char_indices().skip(1).any(|(_, c)| c == '+' || c == '-')
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let var = match k {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{k}"),
            };
            let text = c.to_string();
            let term = if k == 0 {
                if is_compound(&text) && !out.is_empty() {
                    format!("({text})")
                } else {
                    text
                }
            } else if c.is_one() {
                var
            } else if (-c).is_one() && !self.field.is_finite() {
                format!("-{var}")
            } else if is_compound(&text) {
                format!("({text})*{var}")
            } else {
                format!("{text}*{var}")
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        f.write_str(&out)
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        /// Panics on a field mismatch; see the `try_` methods.
        impl $tr<&UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: &UniPoly) -> UniPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        self.map_coeffs(|c| -c)
    }
}
