//! Factorization over ℚ by the Zassenhaus method.
//!
//! The squarefree input is scaled to a primitive integer polynomial `P`.
//! Reductions modulo a few small primes of good reduction give, through
//! their factor-degree patterns, the set of degrees a rational factor can
//! have. The prime with the fewest modular factors is used: its monic
//! factorization is Hensel-lifted to a modulus exceeding twice the
//! coefficient bound for factors of `lc(P)·P`, and true factors are
//! recovered by trial division over subsets of lifted factors whose degree
//! sum is allowed.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::field::Field;
use crate::poly::integer::{self, IntPoly};
use crate::poly::UniPoly;

use super::finite;

/// Monic irreducible factors over ℚ of a squarefree polynomial.
pub(crate) fn factor_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    factor_primitive(integer::from_rational(f))
        .iter()
        .map(|g| integer::to_monic_rational(g))
        .collect()
}

/// Irreducible factors in ℤ[T] of a squarefree primitive polynomial.
pub(crate) fn factor_primitive(mut p: IntPoly) -> Vec<IntPoly> {
    let mut found = Vec::new();
    if p.len() > 1 && p[0].is_zero() {
        found.push(vec![BigInt::zero(), BigInt::one()]);
        p.remove(0);
    }
    match integer::degree(&p) {
        0 => {}
        1 => found.push(integer::primitive(p)),
        _ => {
            let (prime, allowed) = choose_prime(&p);
            if allowed.is_empty() {
                found.push(p);
            } else {
                found.extend(zassenhaus(p, prime, &allowed));
            }
        }
    }
    found
}

const FILTER_PRIMES: usize = 6;

fn reduce_mod_prime(p: &[BigInt], prime: u64) -> UniPoly {
    let field = Field::prime(prime).expect("odd prime");
    UniPoly::from_coeffs(field, p.iter().map(|c| field.from_bigint(c)).collect()).monic()
}

/// Among a few small odd primes of good reduction, the one with the fewest
/// irreducible factors, and the degrees `1 ≤ k < deg P` that every such
/// reduction allows for a factor.
fn choose_prime(p: &[BigInt]) -> (u64, BTreeSet<usize>) {
    let n = integer::degree(p);
    let mut allowed: BTreeSet<usize> = (1..n).collect();
    let lead = p.last().expect("nonzero");
    let mut best: Option<(usize, u64)> = None;
    let mut good = 0;
    let mut prime = 3u64;
    while good < FILTER_PRIMES && !allowed.is_empty() {
        if arith::is_prime_u64(prime) && !(lead % BigInt::from(prime)).is_zero() {
            let reduced = reduce_mod_prime(p, prime);
            if reduced.gcd(&reduced.derivative()).expect("same field").is_one() {
                let degrees = finite::factor_degrees(&reduced);
                let mut sums = vec![false; n + 1];
                sums[0] = true;
                for &d in &degrees {
                    for s in (d..=n).rev() {
                        if sums[s - d] {
                            sums[s] = true;
                        }
                    }
                }
                allowed.retain(|&k| sums[k]);
                if best.is_none_or(|(r, _)| degrees.len() < r) {
                    best = Some((degrees.len(), prime));
                }
                good += 1;
            }
        }
        prime += 2;
    }
    (best.map_or(3, |(_, q)| q), allowed)
}

fn modulo(p: &[BigInt], m: &BigInt) -> IntPoly {
    integer::trim(p.iter().map(|c| c.mod_floor(m)).collect())
}

fn add(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    out
}

fn sub(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    add(a, &b.iter().map(|c| -c).collect::<Vec<_>>())
}

fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Division by a polynomial that is monic modulo `m`.
fn divmod_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (IntPoly, IntPoly) {
    let mut rem = modulo(a, m);
    let db = integer::degree(b);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[k + j] = (&rem[k + j] - &c * y).mod_floor(m);
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (modulo(&quot, m), modulo(&rem, m))
}

fn to_int(f: &UniPoly) -> IntPoly {
    f.coeffs().iter().map(|c| BigInt::from(c.residue().expect("prime field"))).collect()
}

/// `(s, t)` with `s·a + t·b = 1` for coprime `a`, `b` over GF(p), with
/// `deg s < deg b` and `deg t < deg a`.
fn bezout(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
    let field = a.field();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UniPoly::one(field), UniPoly::zero(field));
    let (mut t0, mut t1) = (UniPoly::zero(field), UniPoly::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    let c = r0.lead().inv().expect("coprime inputs");
    (s0.scale(&c), t0.scale(&c))
}

/// Lifts `F ≡ g·h (mod p)`, with `F`, `g`, `h` monic and `g`, `h` coprime, to
/// a factorization modulo `modulus = p^(2^k)` by quadratic Hensel steps.
fn lift_pair(f: &[BigInt], g0: &UniPoly, h0: &UniPoly, prime: u64, modulus: &BigInt) -> (IntPoly, IntPoly) {
    let (s0, t0) = bezout(g0, h0);
    let (mut g, mut h, mut s, mut t) = (to_int(g0), to_int(h0), to_int(&s0), to_int(&t0));
    let mut m = BigInt::from(prime);
    while &m < modulus {
        let m2 = &m * &m;
        let e = modulo(&sub(f, &mul(&g, &h)), &m2);
        let (q, r) = divmod_monic(&mul(&s, &e), &h, &m2);
        g = modulo(&add(&add(&g, &mul(&t, &e)), &mul(&q, &g)), &m2);
        h = modulo(&add(&h, &r), &m2);
        let b = modulo(&sub(&add(&mul(&s, &g), &mul(&t, &h)), &[BigInt::one()]), &m2);
        let (c, d) = divmod_monic(&mul(&s, &b), &h, &m2);
        s = modulo(&sub(&s, &d), &m2);
        t = modulo(&sub(&sub(&t, &mul(&t, &b)), &mul(&c, &g)), &m2);
        m = m2;
    }
    (g, h)
}

/// Bound on the coefficients of `lc(P)/lc(g)·g` for any factor `g` of `P`.
fn coefficient_bound(p: &[BigInt]) -> BigInt {
    let norm_sq: BigInt = p.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + BigInt::one();
    p.last().expect("nonzero").abs() * (BigInt::one() << integer::degree(p)) * norm
}

fn symmetric(p: &[BigInt], m: &BigInt) -> IntPoly {
    let half = m >> 1;
    integer::trim(
        p.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn zassenhaus(mut p: IntPoly, prime: u64, allowed: &BTreeSet<usize>) -> Vec<IntPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(prime);
    let modular = finite::factor_squarefree(&reduce_mod_prime(&p, prime), &mut rng);
    if modular.len() == 1 {
        return vec![p];
    }
    let target = coefficient_bound(&p) * 2;
    let mut modulus = BigInt::from(prime);
    while modulus <= target {
        modulus = &modulus * &modulus;
    }

    let lead_inv = p.last().expect("nonzero").extended_gcd(&modulus).x;
    let mut rest = modulo(&p.iter().map(|c| c * &lead_inv).collect::<Vec<_>>(), &modulus);
    let mut lifted = Vec::with_capacity(modular.len());
    for i in 0..modular.len() - 1 {
        let cofactor = modular[i + 1..].iter().fold(UniPoly::one(modular[i].field()), |acc, g| &acc * g);
        let (g, h) = lift_pair(&rest, &modular[i], &cofactor, prime, &modulus);
        lifted.push(g);
        rest = h;
    }
    lifted.push(rest);

    let mut found = Vec::new();
    let mut k = 1;
    while 2 * k <= lifted.len() {
        let hit = combinations(lifted.len(), k).find_map(|subset| {
            let degree: usize = subset.iter().map(|&i| integer::degree(&lifted[i])).sum();
            if !allowed.contains(&degree) {
                return None;
            }
            let lead = p.last().expect("nonzero").clone();
            let product = subset.iter().fold(vec![lead], |acc, &i| modulo(&mul(&acc, &lifted[i]), &modulus));
            let g = integer::primitive(symmetric(&product, &modulus));
            if !p[0].is_zero() && !(&p[0] % &g[0]).is_zero() {
                return None;
            }
            integer::div_exact(&p, &g).map(|q| (subset, g, q))
        });
        match hit {
            Some((subset, g, q)) => {
                found.push(g);
                p = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => k += 1,
        }
    }
    found.push(integer::primitive(p));
    found
}

/// `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = (k <= n).then(|| (0..k).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut idx = current.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                next = Some(idx);
                break;
            }
        }
        Some(current)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn t4_plus_1_is_irreducible() {
        assert_eq!(factor_primitive(ip(&[1, 0, 0, 0, 1])), vec![ip(&[1, 0, 0, 0, 1])]);
    }

    #[test]
    fn recovers_known_factors() {
        let a = ip(&[1, 0, 0, 0, 1]);
        let b = ip(&[-2, 0, 3]);
        let c = ip(&[5, -1, 0, 2]);
        let lin = ip(&[3, 2]);
        let p = mul(&mul(&mul(&a, &b), &c), &lin);
        let mut got = factor_primitive(p);
        got.sort();
        let mut want = vec![a, b, c, lin];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn pure_roots_and_zero_root() {
        // T (T − 1)(T + 2)(2T − 3)
        let p = mul(&mul(&mul(&ip(&[0, 1]), &ip(&[-1, 1])), &ip(&[2, 1])), &ip(&[-3, 2]));
        let got = factor_primitive(p);
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn swinnerton_dyer_like_quartic_irreducible() {
        // T⁴ − 10T² + 1 splits modulo every prime but is irreducible over ℚ.
        assert_eq!(factor_primitive(ip(&[1, 0, -10, 0, 1])), vec![ip(&[1, 0, -10, 0, 1])]);
    }

    #[test]
    fn product_of_two_such_quartics() {
        let a = ip(&[1, 0, -10, 0, 1]);
        // minimal polynomial of √3 + √5
        let b = ip(&[4, 0, -16, 0, 1]);
        let mut got = factor_primitive(mul(&a, &b));
        got.sort();
        let mut want = factor_primitive(a.clone());
        want.extend(factor_primitive(b.clone()));
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn agrees_with_kronecker_on_random_products() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let mut p = ip(&[1]);
            for _ in 0..rng.random_range(2..=4) {
                let d = rng.random_range(1..=3);
                let mut g: Vec<i64> = (0..d).map(|_| rng.random_range(-4..=4)).collect();
                g.push(rng.random_range(1..=3));
                p = mul(&p, &ip(&g));
            }
            let p = integer::primitive(p);
            let reduced = reduce_mod_prime(&p, 1_000_003);
            if !reduced.gcd(&reduced.derivative()).unwrap().is_one() {
                continue;
            }
            let mut got = factor_primitive(p.clone());
            got.sort();
            let mut want = super::super::kronecker::factor_primitive(p);
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn combinations_enumerate_subsets() {
        assert_eq!(combinations(4, 2).count(), 6);
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(5, 3).last(), Some(vec![2, 3, 4]));
    }
}
