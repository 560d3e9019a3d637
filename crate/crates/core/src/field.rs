//! Exact scalar arithmetic over ℚ, over prime fields GF(p) with p odd, and
//! over quadratic extensions ℚ(√d).
//!
//! A [`Field`] is a small `Copy` descriptor. Every [`FieldElement`] carries its
//! descriptor and is kept in canonical form, so structural equality is field
//! equality. Characteristic 2 cannot be constructed.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

/// Largest |d| accepted for ℚ(√d); squarefreeness is checked by factoring.
pub const MAX_QUADRATIC_PARAMETER: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(Field, Field),
    #[error("operation requires a {expected} field, got {actual}")]
    WrongKind { expected: &'static str, actual: Field },
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("cannot parse {input:?} as an element of {field}: {reason}")]
    Parse { input: String, field: Field, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rational,
    Prime(u64),
    QuadExt(i64),
}

/// Validated field descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    kind: FieldKind,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum DescriptorJson {
    #[serde(rename = "q")]
    Rational,
    #[serde(rename = "gf")]
    Prime { p: u64 },
    #[serde(rename = "qsqrt")]
    QuadExt { d: i64 },
}

impl Field {
    pub fn new(kind: FieldKind) -> Result<Self, FieldError> {
        match kind {
            FieldKind::Rational => {}
            FieldKind::Prime(p) => {
                if p == 2 {
                    return Err(FieldError::InvalidDescriptor(
                        "characteristic 2 is not supported".into(),
                    ));
                }
                if !arith::is_prime_u64(p) {
                    return Err(FieldError::InvalidDescriptor(format!("{p} is not prime")));
                }
            }
            FieldKind::QuadExt(d) => {
                if d == 0 || d == 1 {
                    return Err(FieldError::InvalidDescriptor(format!(
                        "d = {d} does not give a quadratic extension"
                    )));
                }
                if d.unsigned_abs() > MAX_QUADRATIC_PARAMETER {
                    return Err(FieldError::InvalidDescriptor(format!(
                        "|d| = {} exceeds {MAX_QUADRATIC_PARAMETER}",
                        d.unsigned_abs()
                    )));
                }
                if !arith::is_squarefree(d) {
                    return Err(FieldError::InvalidDescriptor(format!("{d} is not squarefree")));
                }
            }
        }
        Ok(Field { kind })
    }

    pub fn rationals() -> Self {
        Field { kind: FieldKind::Rational }
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Field::new(FieldKind::Prime(p))
    }

    pub fn quadratic(d: i64) -> Result<Self, FieldError> {
        Field::new(FieldKind::QuadExt(d))
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// 0 for ℚ and ℚ(√d), p for GF(p).
    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::Prime(p) => p,
            _ => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, FieldKind::Prime(_))
    }

    /// Number of elements of a finite field.
    pub fn order(&self) -> Option<u64> {
        match self.kind {
            FieldKind::Prime(p) => Some(p),
            _ => None,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        let repr = match self.kind {
            FieldKind::Rational => Repr::Q(BigRational::from_integer(n.clone())),
            FieldKind::Prime(p) => Repr::Gf(reduce_bigint(n, p)),
            FieldKind::QuadExt(_) => {
                Repr::Qs(BigRational::from_integer(n.clone()), BigRational::zero())
            }
        };
        FieldElement { field: *self, repr }
    }

    /// Embeds a rational. Over GF(p) the denominator must be a unit.
    pub fn from_rational(&self, x: &BigRational) -> Result<FieldElement, FieldError> {
        let repr = match self.kind {
            FieldKind::Rational => Repr::Q(x.clone()),
            FieldKind::Prime(p) => {
                let num = reduce_bigint(x.numer(), p);
                let den = reduce_bigint(x.denom(), p);
                let inv = arith::inv_mod(den, p).ok_or(FieldError::DivisionByZero)?;
                Repr::Gf(arith::mul_mod(num, inv, p))
            }
            FieldKind::QuadExt(_) => Repr::Qs(x.clone(), BigRational::zero()),
        };
        Ok(FieldElement { field: *self, repr })
    }

    /// `a + b√d` in ℚ(√d).
    pub fn quadratic_element(&self, a: BigRational, b: BigRational) -> Result<FieldElement, FieldError> {
        match self.kind {
            FieldKind::QuadExt(_) => Ok(FieldElement { field: *self, repr: Repr::Qs(a, b) }),
            _ => Err(FieldError::WrongKind { expected: "quadratic-extension", actual: *self }),
        }
    }

    /// The adjoined square root √d.
    pub fn sqrt_d(&self) -> Result<FieldElement, FieldError> {
        self.quadratic_element(BigRational::zero(), BigRational::one())
    }

    /// Residue `k mod p` in GF(p).
    pub fn residue(&self, k: u64) -> Result<FieldElement, FieldError> {
        match self.kind {
            FieldKind::Prime(p) => Ok(FieldElement { field: *self, repr: Repr::Gf(k % p) }),
            _ => Err(FieldError::WrongKind { expected: "prime", actual: *self }),
        }
    }

    /// All elements of a finite field in residue order.
    pub fn elements(&self) -> Result<Vec<FieldElement>, FieldError> {
        match self.kind {
            FieldKind::Prime(p) => Ok((0..p)
                .map(|k| FieldElement { field: *self, repr: Repr::Gf(k) })
                .collect()),
            _ => Err(FieldError::WrongKind { expected: "finite", actual: *self }),
        }
    }

    /// Parses the element text syntax: `a/b` or `a` for rationals, an
    /// integer (reduced mod p) for prime fields, `a+b*sqrt(d)` for
    /// quadratic extensions.
    pub fn parse(&self, input: &str) -> Result<FieldElement, FieldError> {
        let err = |reason: &str| FieldError::Parse {
            input: input.to_string(),
            field: *self,
            reason: reason.to_string(),
        };
        let text: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(err("empty input"));
        }
        match self.kind {
            FieldKind::Rational => Ok(self.from_rational(&parse_rational(&text).ok_or_else(|| err("not a rational"))?)?),
            FieldKind::Prime(_) => {
                let q = parse_rational(&text).ok_or_else(|| err("not an integer"))?;
                self.from_rational(&q).map_err(|_| err("denominator divisible by p"))
            }
            FieldKind::QuadExt(d) => {
                let (a, b) = parse_quadratic(strip_parens(&text), d).ok_or_else(|| err("expected a+b*sqrt(d)"))?;
                self.quadratic_element(a, b)
            }
        }
    }

    /// A random element: uniform over GF(p); small numerators in `[-bound, bound]`
    /// and denominators in `[1, 3]` over the infinite fields.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> FieldElement {
        let small = |rng: &mut R| {
            BigRational::new(BigInt::from(rng.random_range(-bound..=bound)), BigInt::from(rng.random_range(1..=3i64)))
        };
        match self.kind {
            FieldKind::Rational => FieldElement { field: *self, repr: Repr::Q(small(rng)) },
            FieldKind::Prime(p) => FieldElement { field: *self, repr: Repr::Gf(rng.random_range(0..p)) },
            FieldKind::QuadExt(_) => {
                let a = small(rng);
                let b = small(rng);
                FieldElement { field: *self, repr: Repr::Qs(a, b) }
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dto = match self.kind {
            FieldKind::Rational => DescriptorJson::Rational,
            FieldKind::Prime(p) => DescriptorJson::Prime { p },
            FieldKind::QuadExt(d) => DescriptorJson::QuadExt { d },
        };
        serde_json::to_value(dto).expect("descriptor serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, FieldError> {
        let dto: DescriptorJson = serde_json::from_value(value.clone())
            .map_err(|e| FieldError::InvalidDescriptor(e.to_string()))?;
        match dto {
            DescriptorJson::Rational => Ok(Field::rationals()),
            DescriptorJson::Prime { p } => Field::prime(p),
            DescriptorJson::QuadExt { d } => Field::quadratic(d),
        }
    }
}

/// Flag syntax: `q`, `gf:<p>`, `qsqrt:<d>`.
impl FromStr for Field {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || FieldError::InvalidDescriptor(format!("unrecognized field {s:?}; use q, gf:<p> or qsqrt:<d>"));
        if s == "q" {
            return Ok(Field::rationals());
        }
        if let Some(p) = s.strip_prefix("gf:") {
            return Field::prime(p.parse().map_err(|_| bad())?);
        }
        if let Some(d) = s.strip_prefix("qsqrt:") {
            return Field::quadratic(d.parse().map_err(|_| bad())?);
        }
        Err(bad())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rational => write!(f, "q"),
            FieldKind::Prime(p) => write!(f, "gf:{p}"),
            FieldKind::QuadExt(d) => write!(f, "qsqrt:{d}"),
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let valid = |s: &str| {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    if !valid(num) {
        return None;
    }
    let num: BigInt = num.trim_start_matches('+').parse().ok()?;
    let den: BigInt = match den {
        Some(d) if valid(d) => d.trim_start_matches('+').parse().ok()?,
        Some(_) => return None,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn strip_parens(text: &str) -> &str {
    let mut t = text;
    while t.starts_with('(') && t.ends_with(')') && matching_close(t) == Some(t.len() - 1) {
        t = &t[1..t.len() - 1];
    }
    t
}

fn matching_close(t: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn parse_quadratic(text: &str, d: i64) -> Option<(BigRational, BigRational)> {
    // Signed terms split at top-level '+'/'-'.
    let mut terms = Vec::new();
    let mut start = 0;
    let mut depth = 0i32;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > start => {
                terms.push(&text[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    terms.push(&text[start..]);
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    let radical = format!("sqrt({d})");
    for term in terms {
        let (negative, body) = match term.as_bytes().first()? {
            b'-' => (true, &term[1..]),
            b'+' => (false, &term[1..]),
            _ => (false, term),
        };
        if body.is_empty() {
            return None;
        }
        let (value, irrational) = if body.contains("sqrt(") {
            let coeff = if body == radical {
                BigRational::one()
            } else if let Some(c) = body.strip_suffix(&format!("*{radical}")) {
                parse_rational(c)?
            } else if let Some(c) = body.strip_prefix(&format!("{radical}*")) {
                parse_rational(c)?
            } else {
                return None;
            };
            (coeff, true)
        } else {
            (parse_rational(body)?, false)
        };
        let value = if negative { -value } else { value };
        if irrational {
            b += value;
        } else {
            a += value;
        }
    }
    Some((a, b))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Q(BigRational),
    Gf(u64),
    /// a + b√d
    Qs(BigRational, BigRational),
}

/// An exact scalar in one of the supported fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

impl FieldElement {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Q(x) => x.is_zero(),
            Repr::Gf(x) => *x == 0,
            Repr::Qs(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Q(x) => x.is_one(),
            Repr::Gf(x) => *x == 1,
            Repr::Qs(a, b) => a.is_one() && b.is_zero(),
        }
    }

    /// The rational value, for elements of ℚ or rational elements of ℚ(√d).
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Q(x) => Some(x.clone()),
            Repr::Qs(a, b) if b.is_zero() => Some(a.clone()),
            _ => None,
        }
    }

    /// `(a, b)` with the element equal to `a + b√d`.
    pub fn quadratic_parts(&self) -> Option<(&BigRational, &BigRational)> {
        match &self.repr {
            Repr::Qs(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Least non-negative residue over GF(p).
    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Gf(x) => Some(*x),
            _ => None,
        }
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::Mismatch(self.field, other.field))
        }
    }

    fn with(&self, repr: Repr) -> Self {
        FieldElement { field: self.field, repr }
    }

    fn p(&self) -> u64 {
        self.field.characteristic()
    }

    fn d(&self) -> BigRational {
        match self.field.kind {
            FieldKind::QuadExt(d) => BigRational::from_integer(BigInt::from(d)),
            _ => unreachable!("√d requested outside a quadratic extension"),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.with(match (&self.repr, &other.repr) {
            (Repr::Q(x), Repr::Q(y)) => Repr::Q(x + y),
            (Repr::Gf(x), Repr::Gf(y)) => Repr::Gf(((*x as u128 + *y as u128) % self.p() as u128) as u64),
            (Repr::Qs(a, b), Repr::Qs(c, e)) => Repr::Qs(a + c, b + e),
            _ => unreachable!(),
        }))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.with(match (&self.repr, &other.repr) {
            (Repr::Q(x), Repr::Q(y)) => Repr::Q(x * y),
            (Repr::Gf(x), Repr::Gf(y)) => Repr::Gf(arith::mul_mod(*x, *y, self.p())),
            (Repr::Qs(a, b), Repr::Qs(c, e)) => Repr::Qs(a * c + self.d() * b * e, a * e + b * c),
            _ => unreachable!(),
        }))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        self.try_mul(&other.inv()?)
    }

    fn neg_ref(&self) -> Self {
        self.with(match &self.repr {
            Repr::Q(x) => Repr::Q(-x),
            Repr::Gf(x) => Repr::Gf(if *x == 0 { 0 } else { self.p() - x }),
            Repr::Qs(a, b) => Repr::Qs(-a, -b),
        })
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.with(match &self.repr {
            Repr::Q(x) => Repr::Q(x.recip()),
            Repr::Gf(x) => Repr::Gf(arith::inv_mod(*x, self.p()).expect("nonzero residue is a unit")),
            Repr::Qs(a, b) => {
                let norm = a * a - self.d() * b * b;
                Repr::Qs(a / &norm, -(b / &norm))
            }
        }))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.pow_big(&BigUint::from(exp))
    }

    pub fn pow_big(&self, exp: &BigUint) -> Self {
        let mut acc = self.field.one();
        for i in (0..exp.bits()).rev() {
            acc = acc.square();
            if exp.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    /// Galois conjugation `a + b√d ↦ a − b√d`.
    pub fn conjugate(&self) -> Result<Self, FieldError> {
        match &self.repr {
            Repr::Qs(a, b) => Ok(self.with(Repr::Qs(a.clone(), -b))),
            _ => Err(FieldError::WrongKind { expected: "quadratic-extension", actual: self.field }),
        }
    }

    /// Square root with a deterministic witness. Over GF(p) it is the residue
    /// in `[0, (p-1)/2]`. Over ℚ(√d) the rational part is non-negative, with
    /// ties broken by a non-negative √d coefficient, which covers ℚ as well.
    /// `None` when `self` is not a square.
    pub fn sqrt(&self) -> Option<Self> {
        match &self.repr {
            Repr::Q(x) => rational_sqrt(x).map(|r| self.with(Repr::Q(r))),
            Repr::Gf(x) => gf_sqrt(*x, self.p()).map(|r| self.with(Repr::Gf(r))),
            Repr::Qs(a, b) => {
                let d = self.d();
                if b.is_zero() {
                    if let Some(r) = rational_sqrt(a) {
                        return Some(self.with(Repr::Qs(r, BigRational::zero())));
                    }
                    // a = d·v²
                    return rational_sqrt(&(a / &d)).map(|v| self.with(Repr::Qs(BigRational::zero(), v)));
                }
                // (u + v√d)² = (u² + dv²) + 2uv√d, and a² − db² = (u² − dv²)².
                let e = rational_sqrt(&(a * a - &d * b * b))?;
                let two = BigRational::from_integer(BigInt::from(2));
                for cand in [(a + &e) / &two, (a - &e) / &two] {
                    if let Some(u) = rational_sqrt(&cand) {
                        if u.is_zero() {
                            continue;
                        }
                        let v = b / (&two * &u);
                        let root = self.with(Repr::Qs(u, v));
                        debug_assert_eq!(&root.square(), self);
                        return Some(root);
                    }
                }
                None
            }
        }
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// Euler's criterion value `x^((p-1)/2)` over GF(p).
    pub fn legendre(&self) -> Option<Self> {
        let p = self.field.order()?;
        Some(self.pow((p - 1) / 2))
    }
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Tonelli-Shanks, returning the root in `[0, (p-1)/2]`.
fn gf_sqrt(x: u64, p: u64) -> Option<u64> {
    if x == 0 {
        return Some(0);
    }
    if arith::pow_mod(x, (p - 1) / 2, p) != 1 {
        return None;
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while arith::pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = arith::pow_mod(z, q, p);
    let mut t = arith::pow_mod(x, q, p);
    let mut r = arith::pow_mod(x, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = arith::mul_mod(tt, tt, p);
            i += 1;
        }
        let b = arith::pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = arith::mul_mod(b, b, p);
        t = arith::mul_mod(t, c, p);
        r = arith::mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

/// Canonical total order used for deterministic output: numeric over ℚ,
/// by residue over GF(p), lexicographic in `(a, b)` over ℚ(√d).
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field.cmp(&other.field).then_with(|| match (&self.repr, &other.repr) {
            (Repr::Q(x), Repr::Q(y)) => x.cmp(y),
            (Repr::Gf(x), Repr::Gf(y)) => x.cmp(y),
            (Repr::Qs(a, b), Repr::Qs(c, e)) => a.cmp(c).then_with(|| b.cmp(e)),
            _ => Ordering::Equal,
        })
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Q(x) => write!(f, "{x}"),
            Repr::Gf(x) => write!(f, "{x}"),
            Repr::Qs(a, b) => {
                let d = match self.field.kind {
                    FieldKind::QuadExt(d) => d,
                    _ => unreachable!(),
                };
                let radical = |coeff: &BigRational| -> String {
                    if coeff.abs().is_one() {
                        format!("sqrt({d})")
                    } else {
                        format!("{}*sqrt({d})", coeff.abs())
                    }
                };
                match (a.is_zero(), b.is_zero()) {
                    (_, true) => write!(f, "{a}"),
                    (true, false) => {
                        write!(f, "{}{}", if b.is_negative() { "-" } else { "" }, radical(b))
                    }
                    (false, false) => {
                        write!(f, "{a}{}{}", if b.is_negative() { "-" } else { "+" }, radical(b))
                    }
                }
            }
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        /// Panics on a field mismatch (and on division by zero for `Div`);
        /// use the `try_` methods for fallible arithmetic.
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(s: &str) -> FieldElement {
        Field::rationals().parse(s).unwrap()
    }

    #[test]
    fn rational_addition() {
        assert_eq!(q("2/3") + q("1/6"), q("5/6"));
        assert_eq!(q("4/6").to_string(), "2/3");
    }

    #[test]
    fn prime_field_product() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.from_i64(3) * f.from_i64(5), f.one());
        assert_eq!(f.parse("-1").unwrap().residue(), Some(6));
        assert_eq!(f.parse("1/2").unwrap().residue(), Some(4));
    }

    #[test]
    fn quadratic_difference_of_squares() {
        let f = Field::quadratic(2).unwrap();
        let x = f.parse("1+sqrt(2)").unwrap();
        let y = f.parse("1-sqrt(2)").unwrap();
        assert_eq!(&x * &y, f.from_i64(-1));
        assert_eq!(x.conjugate().unwrap(), y);
        assert_eq!(&x.conjugate().unwrap() * &x, f.from_i64(-1));
    }

    #[test]
    fn conjugation() {
        let f = Field::quadratic(2).unwrap();
        let x = f.parse("3+2*sqrt(2)").unwrap();
        assert_eq!(x.conjugate().unwrap(), f.parse("3-2*sqrt(2)").unwrap());
        assert_eq!(x.conjugate().unwrap().conjugate().unwrap(), x);
        assert_eq!(f.from_i64(5).conjugate().unwrap(), f.from_i64(5));
        assert!(matches!(q("1").conjugate(), Err(FieldError::WrongKind { .. })));
    }

    #[test]
    fn square_roots_follow_witness_convention() {
        let f7 = Field::prime(7).unwrap();
        // squares mod 7 by enumeration: {0, 1, 2, 4}; 3² = 2 and 3 ≤ 3.
        let squares: Vec<u64> = (0..7).map(|x| x * x % 7).collect();
        for k in 0..7u64 {
            let root = f7.from_i64(k as i64).sqrt();
            assert_eq!(root.is_some(), squares.contains(&k));
            if let Some(r) = root {
                assert!(r.residue().unwrap() <= 3);
                assert_eq!(r.square().residue(), Some(k));
            }
        }
        assert_eq!(f7.from_i64(2).sqrt().unwrap().residue(), Some(3));
        assert_eq!(q("4/9").sqrt(), Some(q("2/3")));
        assert_eq!(q("-4").sqrt(), None);
        assert_eq!(q("2").sqrt(), None);

        let f = Field::quadratic(2).unwrap();
        assert_eq!(f.parse("3+2*sqrt(2)").unwrap().sqrt(), Some(f.parse("1+sqrt(2)").unwrap()));
        assert_eq!(f.from_i64(-2).sqrt(), None);
        assert_eq!(f.from_i64(2).sqrt(), Some(f.sqrt_d().unwrap()));
        assert_eq!(f.from_i64(8).sqrt(), Some(f.parse("2*sqrt(2)").unwrap()));
        assert_eq!(f.parse("3-2*sqrt(2)").unwrap().sqrt(), Some(f.parse("1-sqrt(2)").unwrap()));
    }

    #[test]
    fn characteristic_of_each_kind() {
        assert_eq!(Field::rationals().characteristic(), 0);
        assert_eq!(Field::prime(5).unwrap().characteristic(), 5);
        assert_eq!(Field::quadratic(3).unwrap().characteristic(), 0);
    }

    #[test]
    fn invalid_descriptors_rejected() {
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::quadratic(0).is_err());
        assert!(Field::quadratic(1).is_err());
        assert!(Field::quadratic(4).is_err());
        assert!(Field::quadratic(18).is_err());
        assert!(Field::quadratic(-1).is_ok());
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        assert_eq!(q("0").inv(), Err(FieldError::DivisionByZero));
        assert_eq!(q("1").try_div(&q("0")), Err(FieldError::DivisionByZero));
        let g = Field::prime(3).unwrap().one();
        assert!(matches!(q("1").try_add(&g), Err(FieldError::Mismatch(..))));
    }

    #[test]
    fn descriptor_json_and_flag_syntax() {
        for (flag, json) in [
            ("q", r#"{"kind":"q"}"#),
            ("gf:3", r#"{"kind":"gf","p":3}"#),
            ("qsqrt:2", r#"{"kind":"qsqrt","d":2}"#),
        ] {
            let f: Field = flag.parse().unwrap();
            assert_eq!(f.to_string(), flag);
            assert_eq!(serde_json::to_string(&f.to_json()).unwrap(), json);
            assert_eq!(Field::from_json(&serde_json::from_str(json).unwrap()).unwrap(), f);
        }
        assert!("gf:4".parse::<Field>().is_err());
        assert!(Field::from_json(&serde_json::json!({"kind":"gf","p":2})).is_err());
    }

    #[test]
    fn element_text_round_trips() {
        let f = Field::quadratic(2).unwrap();
        for s in ["0", "3", "-1/2", "sqrt(2)", "-sqrt(2)", "1/3*sqrt(2)", "1+sqrt(2)", "-2/3-5*sqrt(2)"] {
            let x = f.parse(s).unwrap();
            assert_eq!(x.to_string(), s);
            assert_eq!(f.parse(&x.to_string()).unwrap(), x);
        }
        assert_eq!(f.parse("sqrt(2)*3 + 1").unwrap(), f.parse("1+3*sqrt(2)").unwrap());
        assert_eq!(f.parse("(1+sqrt(2))").unwrap(), f.parse("1+sqrt(2)").unwrap());
        assert!(f.parse("sqrt(3)").is_err());
        assert!(f.parse("1.5").is_err());
        assert!(Field::rationals().parse("1/0").is_err());
    }

    fn axioms_hold(field: Field, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10_000 {
            let a = field.random_element(&mut rng, 9);
            let b = field.random_element(&mut rng, 9);
            let c = field.random_element(&mut rng, 9);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a + &b, &b + &a);
            assert_eq!(&a * &b, &b * &a);
            assert!((&a - &a).is_zero());
            if !a.is_zero() {
                assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn field_axioms_rationals() {
        axioms_hold(Field::rationals(), 1);
    }

    #[test]
    fn field_axioms_prime_fields() {
        axioms_hold(Field::prime(3).unwrap(), 2);
        axioms_hold(Field::prime(5).unwrap(), 3);
        axioms_hold(Field::prime(1_000_000_007).unwrap(), 4);
    }

    #[test]
    fn field_axioms_quadratic() {
        axioms_hold(Field::quadratic(2).unwrap(), 5);
        axioms_hold(Field::quadratic(-3).unwrap(), 6);
    }

    #[test]
    fn euler_criterion_agrees_with_sqrt() {
        for p in [3u64, 5, 7, 11, 13, 17, 97, 1_000_000_007] {
            let f = Field::prime(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for _ in 0..200 {
                let x = f.random_element(&mut rng, 0);
                if x.is_zero() {
                    continue;
                }
                let euler = x.legendre().unwrap();
                match x.sqrt() {
                    Some(w) => {
                        assert_eq!(w.square(), x);
                        assert!(euler.is_one());
                    }
                    None => assert_eq!(euler, -f.one()),
                }
            }
        }
    }

    #[test]
    fn quadratic_squareness_matches_norm_reduction() {
        let f = Field::quadratic(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let w = f.random_element(&mut rng, 6);
            let x = w.square();
            let root = x.sqrt().expect("a square must be recognized");
            assert_eq!(root.square(), x);
            assert!(root == w || root == -&w);
            let (a, b) = root.quadratic_parts().unwrap();
            assert!(!a.is_negative());
            if a.is_zero() {
                assert!(!b.is_negative());
            }
        }
        // Non-squares: -1, 3, 1+sqrt(2) (norm -1 is not a rational square).
        for s in ["-1", "3", "1+sqrt(2)", "-2"] {
            assert_eq!(f.parse(s).unwrap().sqrt(), None, "{s}");
        }
    }
}
