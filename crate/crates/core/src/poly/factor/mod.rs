//! Factorization into monic irreducibles over every supported field.

mod finite;
#[cfg(test)]
mod kronecker;
mod quadratic;
mod rational;

use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::field::FieldKind;

use super::{PolyError, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorRecord {
    pub factor: UniPoly,
    pub multiplicity: u32,
}

impl FactorRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "factor": self.factor.to_string(),
            "coeffs": self.factor.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "multiplicity": self.multiplicity,
        })
    }
}

/// Degree first, then coefficient vectors lexicographically from the
/// constant term up.
fn canonical_order(a: &UniPoly, b: &UniPoly) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Squarefree decomposition of a nonzero polynomial: pairwise coprime monic
/// squarefree parts with their multiplicities, so that `monic(f)` is the
/// product of `part^mult`. Constant inputs give an empty list.
pub fn squarefree_decomposition(f: &UniPoly) -> Result<Vec<(UniPoly, u32)>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let f = f.monic();
    let mut out = match f.field().kind() {
        FieldKind::Prime(p) => squarefree_char_p(&f, p),
        _ => yun(&f),
    };
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| canonical_order(&a.0, &b.0)));
    Ok(out)
}

fn exact(a: &UniPoly, b: &UniPoly) -> UniPoly {
    a.exact_div(b).expect("nonzero divisor").expect("exact division")
}

fn yun(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let df = f.derivative();
    let g = f.gcd(&df).expect("same field");
    let mut b = exact(f, &g);
    let mut d = &exact(&df, &g) - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d).expect("same field");
        b = exact(&b, &a);
        let c = exact(&d, &a);
        d = &c - &b.derivative();
        if !a.is_one() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn squarefree_char_p(f: &UniPoly, p: u64) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let mut c = f.gcd(&f.derivative()).expect("same field");
    let mut w = exact(f, &c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c).expect("same field");
        let part = exact(&w, &y);
        if !part.is_one() {
            out.push((part, i));
        }
        w = y;
        c = exact(&c, &w);
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power; in GF(p) every coefficient is its own p-th root.
        let step = p as usize;
        let root = UniPoly::from_coeffs(f.field(), c.coeffs().iter().step_by(step).cloned().collect());
        for (part, m) in squarefree_char_p(&root, p) {
            out.push((part, m * p as u32));
        }
    }
    out
}

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// by coefficient vector. Constants factor as the empty product; the seed
/// only drives the randomized splitting over GF(p) and never changes the
/// result.
pub fn factor(f: &UniPoly, seed: u64) -> Result<Vec<FactorRecord>, PolyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, multiplicity) in squarefree_decomposition(f)? {
        let irreducibles = match f.field().kind() {
            FieldKind::Prime(_) => finite::factor_squarefree(&part, &mut rng),
            FieldKind::Rational => rational::factor_squarefree(&part),
            FieldKind::QuadExt(_) => quadratic::factor_squarefree(&part),
        };
        out.extend(irreducibles.into_iter().map(|factor| FactorRecord { factor, multiplicity }));
    }
    out.sort_by(|a, b| canonical_order(&a.factor, &b.factor));
    Ok(out)
}

/// Whether a degree-2 polynomial has no root in its field. Every supported
/// field has odd or zero characteristic, so this is a discriminant test.
pub fn quadratic_irreducible(g: &UniPoly) -> Result<bool, PolyError> {
    if g.degree() != Some(2) {
        return Err(PolyError::WrongDegree { expected: 2, actual: g.degree() });
    }
    let (c, b, a) = (g.coeff(0), g.coeff(1), g.coeff(2));
    let disc = &b * &b - &(&a * &c) * &g.field().from_i64(4);
    Ok(!disc.is_square())
}

#[cfg(test)]
mod tests {
    use rand::Rng;

    use super::*;
    use crate::field::Field;

    fn poly(field: Field, text: &str) -> UniPoly {
        UniPoly::parse(field, text).unwrap()
    }

    fn product(records: &[FactorRecord]) -> UniPoly {
        let field = records.first().map_or(Field::rationals(), |r| r.factor.field());
        records.iter().fold(UniPoly::one(field), |acc, r| &acc * &r.factor.pow(r.multiplicity))
    }

    fn texts(records: &[FactorRecord]) -> Vec<(String, u32)> {
        records.iter().map(|r| (r.factor.to_string(), r.multiplicity)).collect()
    }

    #[test]
    fn t4_plus_1_over_each_field() {
        let q = Field::rationals();
        assert_eq!(texts(&factor(&poly(q, "T^4+1"), 0).unwrap()), vec![("T^4+1".into(), 1)]);

        let q2 = Field::quadratic(2).unwrap();
        let got = factor(&poly(q2, "T^4+1"), 0).unwrap();
        assert_eq!(
            texts(&got),
            vec![("T^2-sqrt(2)*T+1".into(), 1), ("T^2+sqrt(2)*T+1".into(), 1)]
        );

        let g3 = Field::prime(3).unwrap();
        assert_eq!(
            texts(&factor(&poly(g3, "T^4+1"), 0).unwrap()),
            vec![("T^2+T+2".into(), 1), ("T^2+2*T+2".into(), 1)]
        );

        let g5 = Field::prime(5).unwrap();
        assert_eq!(
            texts(&factor(&poly(g5, "T^4+1"), 0).unwrap()),
            vec![("T^2+2".into(), 1), ("T^2+3".into(), 1)]
        );
    }

    #[test]
    fn constants_and_zero() {
        let q = Field::rationals();
        assert!(factor(&UniPoly::constant(q.from_i64(7)), 0).unwrap().is_empty());
        assert!(matches!(factor(&UniPoly::zero(q), 0), Err(PolyError::ZeroPolynomial)));
    }

    #[test]
    fn multiplicities() {
        let q = Field::rationals();
        let f = &(&poly(q, "T-1").pow(3) * &poly(q, "T^2+1").pow(2)) * &poly(q, "-5T");
        let got = factor(&f, 0).unwrap();
        // coefficient order is the field order, so -1 sorts before 0
        assert_eq!(texts(&got), vec![("T-1".into(), 3), ("T".into(), 1), ("T^2+1".into(), 2)]);
        assert_eq!(product(&got), f.monic());

        let g3 = Field::prime(3).unwrap();
        // (T+1)^3 (T^2+1)^4 T^6 over GF(3)
        let g = &(&poly(g3, "T+1").pow(3) * &poly(g3, "T^2+1").pow(4)) * &UniPoly::x(g3).pow(6);
        let got = factor(&g, 0).unwrap();
        assert_eq!(texts(&got), vec![("T".into(), 6), ("T+1".into(), 3), ("T^2+1".into(), 4)]);
    }

    #[test]
    fn quadratic_extension_splits_rational_irreducibles() {
        let q3 = Field::quadratic(-3).unwrap();
        // T^2+T+1 splits over ℚ(√−3); T^2+1 does not.
        let f = &poly(q3, "T^2+T+1") * &poly(q3, "T^2+1");
        let got = factor(&f, 0).unwrap();
        assert_eq!(got.len(), 3);
        assert_eq!(product(&got), f);
        assert!(got.iter().all(|r| r.multiplicity == 1));
        // repeated factor involving √d
        let q2 = Field::quadratic(2).unwrap();
        let h = &poly(q2, "T-sqrt(2)").pow(2) * &poly(q2, "T^2-3");
        let got = factor(&h, 0).unwrap();
        assert_eq!(texts(&got), vec![("T-sqrt(2)".into(), 2), ("T^2-3".into(), 1)]);
    }

    #[test]
    fn seed_does_not_change_result() {
        let g7 = Field::prime(7).unwrap();
        let f = poly(g7, "T^12+3*T^7+T^3+5");
        let base = factor(&f, 0).unwrap();
        for seed in 1..10 {
            assert_eq!(factor(&f, seed).unwrap(), base);
        }
        assert_eq!(product(&base), f);
    }

    fn random_poly<R: Rng>(field: Field, rng: &mut R, deg: usize) -> UniPoly {
        let mut c: Vec<_> = (0..deg).map(|_| field.random_element(rng, 3)).collect();
        c.push(field.one());
        UniPoly::from_coeffs(field, c)
    }

    fn check_factorization(f: &UniPoly, seed: u64) {
        let got = factor(f, seed).unwrap();
        assert_eq!(product(&got), f.monic(), "{f}");
        for w in got.windows(2) {
            assert_eq!(canonical_order(&w[0].factor, &w[1].factor), Ordering::Less);
        }
        for r in &got {
            assert!(r.factor.is_monic());
            // refactoring an irreducible gives itself
            let again = factor(&r.factor, seed + 1).unwrap();
            assert_eq!(again, vec![FactorRecord { factor: r.factor.clone(), multiplicity: 1 }], "{}", r.factor);
            if r.factor.degree() == Some(2) {
                assert!(quadratic_irreducible(&r.factor).unwrap());
            }
        }
    }

    #[test]
    fn random_products_over_every_field() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let fields = [
            Field::rationals(),
            Field::prime(3).unwrap(),
            Field::prime(5).unwrap(),
            Field::prime(101).unwrap(),
            Field::quadratic(2).unwrap(),
            Field::quadratic(-1).unwrap(),
        ];
        for field in fields {
            for _ in 0..12 {
                let parts = rng.random_range(1..4);
                let mut f = UniPoly::one(field);
                for _ in 0..parts {
                    let deg = rng.random_range(1..4);
                    let g = random_poly(field, &mut rng, deg);
                    f = &f * &g.pow(rng.random_range(1..3));
                }
                check_factorization(&f, rng.random());
            }
        }
    }

    #[test]
    fn finite_factors_divide_frobenius_fixed_polynomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [3u64, 5, 7] {
            let field = Field::prime(p).unwrap();
            for _ in 0..10 {
                let deg = rng.random_range(2..9);
                let f = random_poly(field, &mut rng, deg);
                for r in factor(&f, 3).unwrap() {
                    let e = r.factor.degree().unwrap() as u32;
                    // T^(p^e) − T ≡ 0 mod g
                    let x = UniPoly::x(field);
                    let frob = x.pow_mod(&num_bigint::BigUint::from(p).pow(e), &r.factor).unwrap();
                    assert!((&frob - &x).rem(&r.factor).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn quadratic_irreducible_matches_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let fields = [Field::rationals(), Field::prime(3).unwrap(), Field::prime(7).unwrap(), Field::quadratic(5).unwrap()];
        for field in fields {
            for _ in 0..100 {
                let g = random_poly(field, &mut rng, 2).scale(&field.from_i64(2));
                let records = factor(&g, 0).unwrap();
                let single = records.len() == 1 && records[0].factor.degree() == Some(2);
                assert_eq!(quadratic_irreducible(&g).unwrap(), single, "{g}");
            }
        }
        let q = Field::rationals();
        assert!(matches!(
            quadratic_irreducible(&poly(q, "T^3+1")),
            Err(PolyError::WrongDegree { expected: 2, actual: Some(3) })
        ));
    }
}
