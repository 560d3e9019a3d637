//! Dense integer polynomials (ascending coefficients) used by the rational
//! factorizer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::Field;

use super::UniPoly;

pub(crate) type IntPoly = Vec<BigInt>;

pub(crate) fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn degree(p: &[BigInt]) -> usize {
    p.len().saturating_sub(1)
}

#[cfg(test)]
pub(crate) fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content and makes the leading coefficient positive.
pub(crate) fn primitive(p: IntPoly) -> IntPoly {
    let c = content(&p);
    if c.is_zero() {
        return p;
    }
    let sign = if p.last().is_some_and(Signed::is_negative) { -c } else { c };
    p.into_iter().map(|x| x / &sign).collect()
}

/// Clears denominators of a rational polynomial and returns its primitive part.
pub(crate) fn from_rational(f: &UniPoly) -> IntPoly {
    let rationals: Vec<BigRational> = f.coeffs().iter().map(|c| c.to_rational().expect("rational coefficients")).collect();
    let lcm = rationals.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints = rationals.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    primitive(trim(ints))
}

pub(crate) fn to_monic_rational(p: &[BigInt]) -> UniPoly {
    let q = Field::rationals();
    let poly = UniPoly::from_coeffs(q, p.iter().map(|c| q.from_bigint(c)).collect());
    poly.monic()
}

/// Exact division in ℤ[T]; `None` if the quotient is not integral or the
/// remainder is nonzero.
pub(crate) fn div_exact(p: &[BigInt], g: &[BigInt]) -> Option<IntPoly> {
    let (n, m) = (degree(p), degree(g));
    if n < m {
        return None;
    }
    let lead = g.last()?;
    let mut rem = p.to_vec();
    let mut quot = vec![BigInt::zero(); n - m + 1];
    for k in (0..=n - m).rev() {
        let (c, r) = rem[k + m].div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            rem[k + j] -= &c * b;
        }
        quot[k] = c;
    }
    rem.iter().all(Zero::is_zero).then_some(trim(quot))
}
