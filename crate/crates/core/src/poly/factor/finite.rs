//! Distinct-degree and Cantor-Zassenhaus equal-degree splitting over GF(p),
//! p odd.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::poly::UniPoly;

fn order(f: &UniPoly) -> u64 {
    f.field().order().expect("finite field")
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// `(g_i, i)` where `g_i` is the product of all irreducible factors of degree `i`.
pub(crate) fn distinct_degree(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let field = f.field();
    let p = BigUint::from(order(f));
    let x = UniPoly::x(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 1;
    while rest.degree().is_some_and(|d| d >= 2 * i) {
        h = h.pow_mod(&p, &rest).expect("modulus is nonzero");
        let g = rest.gcd(&(&h - &x)).expect("same field");
        if !g.is_one() {
            rest = rest.exact_div(&g).expect("nonzero").expect("g divides rest");
            h = h.rem(&rest).expect("nonzero");
            out.push((g, i));
        }
        i += 1;
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((rest, d));
    }
    out
}

/// Splits a monic squarefree product of irreducibles of degree `d`.
pub(crate) fn equal_degree<R: Rng + ?Sized>(f: &UniPoly, d: usize, rng: &mut R) -> Vec<UniPoly> {
    let n = f.degree().expect("nonzero");
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let p = BigUint::from(order(f));
    let exp = (p.pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a = UniPoly::from_coeffs(field, (0..n).map(|_| field.random_element(rng, 0)).collect());
        if a.is_constant() {
            continue;
        }
        let b = &a.pow_mod(&exp, f).expect("nonzero") - &UniPoly::one(field);
        let g = f.gcd(&b).expect("same field");
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let other = f.exact_div(&g).expect("nonzero").expect("g divides f");
            let mut parts = equal_degree(&g, d, rng);
            parts.extend(equal_degree(&other, d, rng));
            return parts;
        }
    }
}

/// Monic irreducible factors of a monic squarefree polynomial.
pub(crate) fn factor_squarefree<R: Rng + ?Sized>(f: &UniPoly, rng: &mut R) -> Vec<UniPoly> {
    distinct_degree(f).into_iter().flat_map(|(g, d)| equal_degree(&g, d, rng)).collect()
}

/// Degrees of the irreducible factors of a monic squarefree polynomial,
/// from the distinct-degree split alone.
pub(crate) fn factor_degrees(f: &UniPoly) -> Vec<usize> {
    distinct_degree(f)
        .into_iter()
        .flat_map(|(g, d)| std::iter::repeat_n(d, g.degree().unwrap_or(0) / d))
        .collect()
}
