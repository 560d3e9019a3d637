//! Trager's norm method over ℚ(√d).

use crate::field::Field;
use crate::poly::UniPoly;

use super::rational;

/// `g · ḡ`, which has rational coefficients.
fn norm(g: &UniPoly) -> UniPoly {
    let conj = g.map_coeffs(|c| c.conjugate().expect("quadratic extension"));
    let product = g * &conj;
    let q = Field::rationals();
    UniPoly::from_coeffs(
        q,
        product
            .coeffs()
            .iter()
            .map(|c| q.from_rational(&c.to_rational().expect("norm is rational")).expect("rationals"))
            .collect(),
    )
}

fn embed(f: &UniPoly, field: Field) -> UniPoly {
    UniPoly::from_coeffs(
        field,
        f.coeffs()
            .iter()
            .map(|c| field.from_rational(&c.to_rational().expect("rational")).expect("embedding"))
            .collect(),
    )
}

/// Monic irreducible factors over ℚ(√d) of a monic squarefree polynomial.
pub(crate) fn factor_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    if f.degree() == Some(1) {
        return vec![f.monic()];
    }
    let field = f.field();
    let root = field.sqrt_d().expect("quadratic extension");
    for s in 0i64.. {
        let shift = &root * &field.from_i64(s);
        let g = f.compose(&UniPoly::linear(&shift));
        let n = norm(&g);
        if !n.gcd(&n.derivative()).expect("same field").is_one() {
            continue;
        }
        let back = UniPoly::linear(&-&shift);
        return rational::factor_squarefree(&n)
            .iter()
            .map(|r| g.gcd(&embed(r, field)).expect("same field"))
            .filter(|h| !h.is_constant())
            .map(|h| h.compose(&back).monic())
            .collect();
    }
    unreachable!("some shift has a squarefree norm")
}
