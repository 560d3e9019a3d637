//! Kronecker's method over ℤ, kept as an independent oracle for the
//! Zassenhaus factorizer.
//!
//! A factor `g` of degree `e` is pinned down by its values at `e + 1`
//! integer nodes, each of which must divide the corresponding value of `P`.
//! The search runs over divisor tuples while building Newton divided
//! differences, which are integers for any integer polynomial at integer
//! nodes, so non-integral differences prune whole subtrees.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith;
use crate::poly::integer::{self, IntPoly};

/// Irreducible factors in ℤ[T] of a squarefree primitive polynomial.
pub(crate) fn factor_primitive(mut p: IntPoly) -> Vec<IntPoly> {
    let mut found = Vec::new();
    let mut e = 1;
    while 2 * e <= integer::degree(&p) {
        match kronecker_search(&p, e) {
            Some(g) => {
                p = integer::div_exact(&p, &g).expect("search returns a divisor");
                found.push(g);
            }
            None => e += 1,
        }
    }
    if integer::degree(&p) >= 1 {
        found.push(integer::primitive(p));
    }
    found
}

fn node_sequence() -> impl Iterator<Item = i64> {
    (0i64..).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] })
}

struct Node {
    x: BigInt,
    divisors: Vec<BigInt>,
}

/// Finds a primitive factor of degree exactly `e`, if one exists.
fn kronecker_search(p: &[BigInt], e: usize) -> Option<IntPoly> {
    let mut scored = Vec::new();
    for x in node_sequence().take(2 * (e + 1) + 10) {
        let xb = BigInt::from(x);
        let v = integer::eval(p, &xb);
        if v.is_zero() {
            if e == 1 {
                return Some(vec![-xb, BigInt::one()]);
            }
            continue;
        }
        let count = arith::divisor_count(v.magnitude());
        scored.push((count, x.unsigned_abs(), xb, v));
    }
    scored.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    if scored.len() < e + 1 {
        return None;
    }
    let spares: Vec<(BigInt, BigInt)> = scored[e + 1..].iter().take(4).map(|s| (s.2.clone(), s.3.clone())).collect();
    let nodes: Vec<Node> = scored[..=e]
        .iter()
        .map(|(_, _, x, v)| Node { x: x.clone(), divisors: arith::positive_divisors(v) })
        .collect();
    let lead = p.last().expect("nonzero").clone();
    let mut search = Search { p, e, lead, nodes: &nodes, spares: &spares, table: Vec::with_capacity(e + 1) };
    search.level(0)
}

struct Search<'a> {
    p: &'a [BigInt],
    e: usize,
    lead: BigInt,
    nodes: &'a [Node],
    spares: &'a [(BigInt, BigInt)],
    /// `table[k][j]` is the divided difference over nodes `k−j ..= k`.
    table: Vec<Vec<BigInt>>,
}

impl Search<'_> {
    fn level(&mut self, k: usize) -> Option<IntPoly> {
        let node = &self.nodes[k];
        let signs: &[i32] = if k == 0 { &[1] } else { &[1, -1] };
        for d in &node.divisors {
            for &sign in signs {
                let v = if sign > 0 { d.clone() } else { -d };
                let Some(row) = self.extend_row(k, v) else { continue };
                if k == self.e {
                    let top = &row[k];
                    if top.is_zero() || !(&self.lead % top).is_zero() {
                        continue;
                    }
                    if let Some(g) = self.candidate(&row) {
                        return Some(g);
                    }
                } else {
                    self.table.push(row);
                    if let Some(g) = self.level(k + 1) {
                        return Some(g);
                    }
                    self.table.pop();
                }
            }
        }
        None
    }

    fn extend_row(&self, k: usize, v: BigInt) -> Option<Vec<BigInt>> {
        let mut row = Vec::with_capacity(k + 1);
        row.push(v);
        for j in 1..=k {
            let num = &row[j - 1] - &self.table[k - 1][j - 1];
            let den = &self.nodes[k].x - &self.nodes[k - j].x;
            let (quot, rem) = num.div_rem(&den);
            if !rem.is_zero() {
                return None;
            }
            row.push(quot);
        }
        Some(row)
    }

    fn candidate(&self, last: &[BigInt]) -> Option<IntPoly> {
        // Newton form, Horner-style from the top coefficient.
        let e = self.e;
        let newton = |j: usize| if j == e { &last[e] } else { &self.table[j][j] };
        let mut g: IntPoly = vec![newton(e).clone()];
        for j in (0..e).rev() {
            // g ← g·(T − x_j) + c_j
            let xj = &self.nodes[j].x;
            let mut next = vec![BigInt::zero(); g.len() + 1];
            for (i, c) in g.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * xj;
            }
            next[0] += newton(j);
            g = next;
        }
        let g = integer::primitive(integer::trim(g));
        if integer::degree(&g) != e {
            return None;
        }
        for (x, px) in self.spares {
            let gx = integer::eval(&g, x);
            if gx.is_zero() || !(px % &gx).is_zero() {
                return None;
            }
        }
        integer::div_exact(self.p, &g).map(|_| g)
    }
}
