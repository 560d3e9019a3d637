//! Two-dimensional invariant subspaces ("super-eigenvectors") and the 2×2
//! matrices ("super-eigenvalues") describing the action on them.
//!
//! A pair `(u, v)` spanning an `A`-invariant plane determines
//! `Λ = [[p,q],[r,s]]` by `Au = pu + qv`, `Av = ru + sv`. The plane is proper
//! when it contains no eigenvector of `A`, which in characteristic ≠ 2 happens
//! exactly when `p_Λ(T) = T² − (p+s)T + (ps−qr)` is irreducible and
//! `det p_Λ(A) = 0`.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};
use crate::matrix::{parse_vector, vector_json, ClassTag, Mat, MatrixError, SimilarityClass};
use crate::poly::{factor, quadratic_irreducible, PolyError, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuperEigError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("vector {which} has length {actual}, expected {expected}")]
    Length { which: &'static str, expected: usize, actual: usize },
    #[error("{0} is not a proper super-eigenvalue of the matrix")]
    Improper(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

/// `Λ = [[p,q],[r,s]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperEigenvalue {
    p: FieldElement,
    q: FieldElement,
    r: FieldElement,
    s: FieldElement,
}

impl SuperEigenvalue {
    pub fn new(p: FieldElement, q: FieldElement, r: FieldElement, s: FieldElement) -> Result<Self, FieldError> {
        let field = p.field();
        for x in [&q, &r, &s] {
            if x.field() != field {
                return Err(FieldError::Mismatch(field, x.field()));
            }
        }
        Ok(SuperEigenvalue { p, q, r, s })
    }

    pub fn from_i64(field: Field, rows: [[i64; 2]; 2]) -> Self {
        let e = |x| field.from_i64(x);
        SuperEigenvalue { p: e(rows[0][0]), q: e(rows[0][1]), r: e(rows[1][0]), s: e(rows[1][1]) }
    }

    pub fn from_mat(m: &Mat) -> Result<Self, MatrixError> {
        if m.shape() != (2, 2) {
            return Err(MatrixError::Not2x2(m.rows(), m.cols()));
        }
        Ok(SuperEigenvalue {
            p: m.get(0, 0).clone(),
            q: m.get(0, 1).clone(),
            r: m.get(1, 0).clone(),
            s: m.get(1, 1).clone(),
        })
    }

    /// `[[−λ, 1], [−μ, 0]]`, whose characteristic polynomial is `T² + λT + μ`.
    pub fn companion(lambda: &FieldElement, mu: &FieldElement) -> Self {
        let f = lambda.field();
        SuperEigenvalue { p: -lambda, q: f.one(), r: -mu, s: f.zero() }
    }

    /// Companion representative of a similarity class.
    pub fn from_class(class: &SimilarityClass) -> Self {
        Self::companion(&-&class.trace, &class.det)
    }

    pub fn field(&self) -> Field {
        self.p.field()
    }

    pub fn p(&self) -> &FieldElement {
        &self.p
    }
    pub fn q(&self) -> &FieldElement {
        &self.q
    }
    pub fn r(&self) -> &FieldElement {
        &self.r
    }
    pub fn s(&self) -> &FieldElement {
        &self.s
    }

    pub fn to_mat(&self) -> Mat {
        Mat::from_rows(self.field(), vec![vec![self.p.clone(), self.q.clone()], vec![self.r.clone(), self.s.clone()]])
            .expect("2x2 rows over one field")
    }

    pub fn trace(&self) -> FieldElement {
        &self.p + &self.s
    }

    pub fn det(&self) -> FieldElement {
        &(&self.p * &self.s) - &(&self.q * &self.r)
    }

    /// `p_Λ(T) = T² − trace·T + det`.
    pub fn charpoly(&self) -> UniPoly {
        UniPoly::from_coeffs(self.field(), vec![self.det(), -self.trace(), self.field().one()])
    }

    pub fn class(&self) -> SimilarityClass {
        self.to_mat().similarity_class().expect("2x2")
    }

    /// Every 2×2 matrix over a finite field, in lexicographic entry order.
    pub fn all(field: Field) -> Result<Vec<Self>, FieldError> {
        let elems = field.elements()?;
        let mut out = Vec::with_capacity(elems.len().pow(4));
        for p in &elems {
            for q in &elems {
                for r in &elems {
                    for s in &elems {
                        out.push(SuperEigenvalue { p: p.clone(), q: q.clone(), r: r.clone(), s: s.clone() });
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        self.to_mat().rows_json()
    }

    /// Accepts a bare `[[p,q],[r,s]]` grid or a matrix object.
    pub fn from_json(value: &Value, field: Option<Field>) -> Result<Self, MatrixError> {
        Self::from_mat(&Mat::from_json(value, field)?)
    }
}

impl fmt::Display for SuperEigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.p, self.q, self.r, self.s)
    }
}

/// A basis `(u, v)` of an invariant plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperEigenvector {
    pub u: Vec<FieldElement>,
    pub v: Vec<FieldElement>,
}

impl SuperEigenvector {
    pub fn new(u: Vec<FieldElement>, v: Vec<FieldElement>) -> Self {
        SuperEigenvector { u, v }
    }

    fn field(&self) -> Field {
        self.u.first().map_or(Field::rationals(), FieldElement::field)
    }

    fn basis(&self) -> Mat {
        Mat::from_rows(self.field(), vec![self.u.clone(), self.v.clone()]).expect("equal lengths")
    }

    /// Whether `w` lies in the span of `u` and `v`.
    pub fn contains(&self, w: &[FieldElement]) -> bool {
        let with_w = Mat::from_rows(self.field(), vec![self.u.clone(), self.v.clone(), w.to_vec()]).expect("equal lengths");
        with_w.rank() == self.basis().rank()
    }

    /// Whether both pairs span the same plane.
    pub fn same_plane(&self, other: &Self) -> bool {
        let rank = self.basis().rank();
        rank == 2 && other.basis().rank() == 2 && self.contains(&other.u) && self.contains(&other.v)
    }

    pub fn to_json(&self) -> Value {
        json!({ "u": vector_json(&self.u), "v": vector_json(&self.v) })
    }

    pub fn from_json(value: &Value, field: Field) -> Result<Self, SuperEigError> {
        let get = |k: &str| value.get(k).ok_or_else(|| SuperEigError::Json(format!("missing \"{k}\"")));
        Ok(SuperEigenvector { u: parse_vector(field, get("u")?)?, v: parse_vector(field, get("v")?)? })
    }
}

fn check_length(a: &Mat, which: &'static str, x: &[FieldElement]) -> Result<(), SuperEigError> {
    if x.len() != a.cols() {
        return Err(SuperEigError::Length { which, expected: a.cols(), actual: x.len() });
    }
    Ok(())
}

/// The unique `Λ` with `Au = pu + qv`, `Av = ru + sv`, if `u, v` are
/// independent and span an `A`-invariant plane.
pub fn verify_invariant_subspace(a: &Mat, u: &[FieldElement], v: &[FieldElement]) -> Result<Option<SuperEigenvalue>, SuperEigError> {
    if !a.is_square() {
        return Err(MatrixError::NotSquare { op: "verify_invariant_subspace", rows: a.rows(), cols: a.cols() }.into());
    }
    check_length(a, "u", u)?;
    check_length(a, "v", v)?;
    let au = a.apply(u)?;
    let av = a.apply(v)?;
    // columns u, v | Au, Av; rref rows 0 and 1 give the coordinates
    let aug = Mat::from_columns(a.field(), &[u.to_vec(), v.to_vec(), au, av]);
    let (r, pivots) = aug.rref();
    if pivots != [0, 1] {
        return Ok(None);
    }
    Ok(Some(SuperEigenvalue {
        p: r.get(0, 2).clone(),
        q: r.get(1, 2).clone(),
        r: r.get(0, 3).clone(),
        s: r.get(1, 3).clone(),
    }))
}

/// `det p_Λ(A)`; zero whenever `Λ` is a super-eigenvalue of `A`.
pub fn necessary_condition(a: &Mat, l: &SuperEigenvalue) -> Result<FieldElement, SuperEigError> {
    Ok(a.eval_poly(&l.charpoly())?.det()?)
}

pub fn is_proper_super_eigenvalue(a: &Mat, l: &SuperEigenvalue) -> Result<bool, SuperEigError> {
    Ok(quadratic_irreducible(&l.charpoly())? && necessary_condition(a, l)?.is_zero())
}

/// One companion-form class per irreducible quadratic factor of the
/// characteristic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperClass {
    pub lambda: SuperEigenvalue,
    pub factor: UniPoly,
    /// Exponent of `factor` in the characteristic polynomial.
    pub multiplicity: u32,
}

impl ProperClass {
    pub fn class(&self) -> SimilarityClass {
        self.lambda.class()
    }

    /// `{"class", "companion", "multiplicity", "plane"}`.
    pub fn to_json(&self, plane: Option<&SuperEigenvector>) -> Value {
        json!({
            "class": self.class().to_json(),
            "companion": self.lambda.to_json(),
            "multiplicity": self.multiplicity,
            "plane": plane.map_or(Value::Null, SuperEigenvector::to_json),
        })
    }
}

/// Pairwise non-similar proper super-eigenvalues, in factor order. The seed
/// only drives randomized factor splitting.
pub fn proper_super_eigenvalues(a: &Mat, seed: u64) -> Result<Vec<ProperClass>, SuperEigError> {
    let records = factor(&a.charpoly()?, seed)?;
    Ok(records
        .into_iter()
        .filter(|r| r.factor.degree() == Some(2))
        .map(|r| ProperClass {
            lambda: SuperEigenvalue::companion(&r.factor.coeff(1), &r.factor.coeff(0)),
            factor: r.factor,
            multiplicity: r.multiplicity,
        })
        .collect())
}

/// Canonical plane for a proper `Λ`: `u` is the first canonical kernel
/// vector of `p_Λ(A)` and `v = q⁻¹(A − pI)u`.
pub fn proper_super_eigenvector(a: &Mat, l: &SuperEigenvalue) -> Result<SuperEigenvector, SuperEigError> {
    if !quadratic_irreducible(&l.charpoly())? {
        return Err(SuperEigError::Improper(format!("{l} (reducible characteristic polynomial)")));
    }
    let kernel = a.eval_poly(&l.charpoly())?.kernel_basis();
    let Some(u) = kernel.into_iter().next() else {
        return Err(SuperEigError::Improper(format!("{l} (det p(A) is nonzero)")));
    };
    // irreducible p_Λ forces qr ≠ 0
    let q_inv = l.q.inv()?;
    let shifted = a.try_sub(&Mat::scalar(a.field(), a.rows(), &l.p))?;
    let v = shifted.apply(&u)?.iter().map(|x| x * &q_inv).collect();
    Ok(SuperEigenvector { u, v })
}

fn kernel_dim(m: &Mat) -> usize {
    m.cols() - m.rank()
}

/// Whether `A` has any invariant plane on which it acts like `Λ`, proper or
/// not. Decided by the similarity class of `Λ`:
/// irreducible by the properness test, split `a ≠ c` by both being
/// eigenvalues, scalar `a` by a 2-dimensional eigenspace, Jordan at `a` by
/// `ker (A−aI)² ⊋ ker (A−aI)`.
pub fn is_super_eigenvalue(a: &Mat, l: &SuperEigenvalue) -> Result<bool, SuperEigError> {
    if !a.is_square() {
        return Err(MatrixError::NotSquare { op: "is_super_eigenvalue", rows: a.rows(), cols: a.cols() }.into());
    }
    if l.field() != a.field() {
        return Err(FieldError::Mismatch(a.field(), l.field()).into());
    }
    let n = a.rows();
    if n < 2 {
        return Ok(false);
    }
    let class = l.class();
    let f = a.field();
    let two_inv = f.from_i64(2).inv()?;
    let shift = |x: &FieldElement| a.try_sub(&Mat::scalar(f, n, x));
    Ok(match class.tag {
        ClassTag::Irreducible => is_proper_super_eigenvalue(a, l)?,
        ClassTag::Split => {
            let disc = class.trace.square() - f.from_i64(4) * &class.det;
            let w = disc.sqrt().expect("split class has a square discriminant");
            let root1 = (&class.trace + &w) * &two_inv;
            let root2 = (&class.trace - &w) * &two_inv;
            shift(&root1)?.det()?.is_zero() && shift(&root2)?.det()?.is_zero()
        }
        ClassTag::Scalar => kernel_dim(&shift(&(&class.trace * &two_inv))?) >= 2,
        ClassTag::Jordan => {
            let b = shift(&(&class.trace * &two_inv))?;
            kernel_dim(&(&b * &b)) > kernel_dim(&b)
        }
    })
}

/// `ker p_i(A)^{α_i}` for one irreducible quadratic factor `p_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub factor: UniPoly,
    pub multiplicity: u32,
    pub basis: Vec<Vec<FieldElement>>,
}

impl PrimaryComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "factor": self.factor.to_string(),
            "multiplicity": self.multiplicity,
            "dim": self.dim(),
            "basis": self.basis.iter().map(|b| vector_json(b)).collect::<Vec<_>>(),
        })
    }
}

pub fn primary_components(a: &Mat, seed: u64) -> Result<Vec<PrimaryComponent>, SuperEigError> {
    proper_super_eigenvalues(a, seed)?
        .into_iter()
        .map(|c| {
            let m = a.eval_poly(&c.factor.pow(c.multiplicity))?;
            Ok(PrimaryComponent { basis: m.kernel_basis(), factor: c.factor, multiplicity: c.multiplicity })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn cyclic_sign(field: Field) -> Mat {
        Mat::from_i64(field, &[&[0, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]])
    }

    fn vec_of(field: Field, xs: &[&str]) -> Vec<FieldElement> {
        xs.iter().map(|x| field.parse(x).unwrap()).collect()
    }

    fn e(field: Field, n: usize, i: usize) -> Vec<FieldElement> {
        (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()
    }

    fn q2() -> Field {
        Field::quadratic(2).unwrap()
    }

    fn worked_plane() -> SuperEigenvector {
        let f = q2();
        SuperEigenvector::new(vec_of(f, &["0", "1", "sqrt(2)", "1"]), vec_of(f, &["1", "0", "-1", "-sqrt(2)"]))
    }

    fn worked_lambda() -> SuperEigenvalue {
        SuperEigenvalue::from_mat(&Mat::parse(q2(), &[&["0", "-1"], &["1", "sqrt(2)"]]).unwrap()).unwrap()
    }

    #[test]
    fn verify_recovers_worked_lambda() {
        let a = cyclic_sign(q2());
        let w = worked_plane();
        assert_eq!(verify_invariant_subspace(&a, &w.u, &w.v).unwrap(), Some(worked_lambda()));

        let q = Field::rationals();
        let d = Mat::from_i64(q, &[&[1, 0], &[0, 2]]);
        assert_eq!(
            verify_invariant_subspace(&d, &e(q, 2, 0), &e(q, 2, 1)).unwrap(),
            Some(SuperEigenvalue::from_i64(q, [[1, 0], [0, 2]]))
        );
        let a = cyclic_sign(q);
        assert_eq!(verify_invariant_subspace(&a, &e(q, 4, 0), &e(q, 4, 1)).unwrap(), None);
        // dependent pair
        assert_eq!(verify_invariant_subspace(&a, &e(q, 4, 0), &e(q, 4, 0)).unwrap(), None);
        assert!(matches!(
            verify_invariant_subspace(&a, &e(q, 3, 0), &e(q, 4, 0)),
            Err(SuperEigError::Length { which: "u", expected: 4, actual: 3 })
        ));
    }

    #[test]
    fn necessary_condition_values() {
        let f = q2();
        let a = cyclic_sign(f);
        assert!(necessary_condition(&a, &worked_lambda()).unwrap().is_zero());
        let zero = SuperEigenvalue::from_i64(f, [[0, 0], [0, 0]]);
        assert_eq!(necessary_condition(&a, &zero).unwrap(), f.one());

        let q = Field::rationals();
        let d = Mat::from_i64(q, &[&[1, 0], &[0, 2]]);
        let l = SuperEigenvalue::from_i64(q, [[1, 0], [0, 5]]);
        assert!(necessary_condition(&d, &l).unwrap().is_zero());
        assert!(!is_super_eigenvalue(&d, &l).unwrap());
    }

    #[test]
    fn properness_examples() {
        let f = q2();
        let a = cyclic_sign(f);
        assert!(is_proper_super_eigenvalue(&a, &worked_lambda()).unwrap());
        assert!(!is_proper_super_eigenvalue(&a, &SuperEigenvalue::from_i64(f, [[1, 0], [0, 1]])).unwrap());
        let q = Field::rationals();
        let b = Mat::from_i64(q, &[&[1, 1], &[-2, -1]]);
        assert!(is_proper_super_eigenvalue(&b, &SuperEigenvalue::from_i64(q, [[0, -1], [1, 0]])).unwrap());
    }

    #[test]
    fn proper_classes_of_worked_matrix() {
        let f = q2();
        let classes = proper_super_eigenvalues(&cyclic_sign(f), 0).unwrap();
        let pairs: Vec<(String, String)> =
            classes.iter().map(|c| (c.class().trace.to_string(), c.class().det.to_string())).collect();
        assert_eq!(pairs, vec![("sqrt(2)".into(), "1".into()), ("-sqrt(2)".into(), "1".into())]);
        assert!(classes.iter().all(|c| c.multiplicity == 1 && c.class().tag == ClassTag::Irreducible));

        assert!(proper_super_eigenvalues(&cyclic_sign(Field::rationals()), 0).unwrap().is_empty());

        let g3 = Field::prime(3).unwrap();
        let got: Vec<SuperEigenvalue> = proper_super_eigenvalues(&cyclic_sign(g3), 0).unwrap().into_iter().map(|c| c.lambda).collect();
        assert_eq!(got, vec![SuperEigenvalue::from_i64(g3, [[2, 1], [1, 0]]), SuperEigenvalue::from_i64(g3, [[1, 1], [1, 0]])]);

        let q = Field::rationals();
        let d = Mat::diag(q, &[q.from_i64(1), q.from_i64(2), q.from_i64(3), q.from_i64(4)]);
        assert!(proper_super_eigenvalues(&d, 0).unwrap().is_empty());
    }

    #[test]
    fn worked_plane_is_reconstructed() {
        let f = q2();
        let a = cyclic_sign(f);
        let l = worked_lambda();
        let w = proper_super_eigenvector(&a, &l).unwrap();
        assert!(w.same_plane(&worked_plane()));
        assert_eq!(verify_invariant_subspace(&a, &w.u, &w.v).unwrap(), Some(l.clone()));

        let q = Field::rationals();
        let comp = Mat::from_i64(q, &[&[0, -1], &[1, 0]]);
        let w = proper_super_eigenvector(&comp, &SuperEigenvalue::from_i64(q, [[0, -1], [1, 0]])).unwrap();
        assert_eq!(w.u, e(q, 2, 0));
        assert_eq!(w.v, vec![q.zero(), q.from_i64(-1)]);

        assert!(matches!(
            proper_super_eigenvector(&a, &SuperEigenvalue::from_i64(f, [[1, 0], [0, 1]])),
            Err(SuperEigError::Improper(_))
        ));
    }

    #[test]
    fn improper_classification_examples() {
        let q = Field::rationals();
        let i4 = Mat::identity(q, 4);
        assert!(is_super_eigenvalue(&i4, &SuperEigenvalue::from_i64(q, [[1, 0], [0, 1]])).unwrap());
        assert!(!is_super_eigenvalue(&i4, &SuperEigenvalue::from_i64(q, [[1, 1], [0, 1]])).unwrap());
        let g3 = Field::prime(3).unwrap();
        assert!(is_super_eigenvalue(&cyclic_sign(g3), &SuperEigenvalue::from_i64(g3, [[2, 1], [1, 0]])).unwrap());
        // a single Jordan block of size 3 has an invariant plane of Jordan type
        let j = Mat::from_i64(q, &[&[2, 1, 0], &[0, 2, 1], &[0, 0, 2]]);
        assert!(is_super_eigenvalue(&j, &SuperEigenvalue::from_i64(q, [[2, 1], [0, 2]])).unwrap());
        assert!(!is_super_eigenvalue(&j, &SuperEigenvalue::from_i64(q, [[2, 0], [0, 2]])).unwrap());
    }

    #[test]
    fn primary_components_of_worked_matrix() {
        for f in [q2(), Field::prime(3).unwrap()] {
            let comps = primary_components(&cyclic_sign(f), 0).unwrap();
            assert_eq!(comps.iter().map(PrimaryComponent::dim).collect::<Vec<_>>(), vec![2, 2]);
            let all: Vec<Vec<FieldElement>> = comps.iter().flat_map(|c| c.basis.clone()).collect();
            assert_eq!(Mat::from_rows(f, all).unwrap().rank(), 4);
        }
        assert!(primary_components(&Mat::identity(Field::rationals(), 4), 0).unwrap().is_empty());
    }

    #[test]
    fn basis_change_preserves_class() {
        let f = Field::prime(5).unwrap();
        let a = cyclic_sign(f);
        let base = proper_super_eigenvector(&a, &proper_super_eigenvalues(&a, 0).unwrap()[0].lambda).unwrap();
        let l0 = verify_invariant_subspace(&a, &base.u, &base.v).unwrap().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut trials = 0;
        while trials < 200 {
            let [x, y, z, w]: [FieldElement; 4] = std::array::from_fn(|_| f.random_element(&mut rng, 0));
            if (&x * &w - &y * &z).is_zero() {
                continue;
            }
            let u2: Vec<_> = base.u.iter().zip(&base.v).map(|(a, b)| &x * a + &y * b).collect();
            let v2: Vec<_> = base.u.iter().zip(&base.v).map(|(a, b)| &z * a + &w * b).collect();
            let l = verify_invariant_subspace(&a, &u2, &v2).unwrap().unwrap();
            assert_eq!(l.class(), l0.class());
            trials += 1;
        }
    }

    #[test]
    fn restriction_is_transpose_and_divides_charpoly() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = Field::prime(7).unwrap();
        let mut seen = 0;
        for _ in 0..200 {
            let n = rng.random_range(2..6);
            let a = Mat::from_fn(f, n, n, |_, _| f.random_element(&mut rng, 0));
            for class in proper_super_eigenvalues(&a, 1).unwrap() {
                let w = proper_super_eigenvector(&a, &class.lambda).unwrap();
                let l = verify_invariant_subspace(&a, &w.u, &w.v).unwrap().unwrap();
                // coordinates of Au, Av as columns
                let restriction = Mat::from_rows(f, vec![vec![l.p.clone(), l.r.clone()], vec![l.q.clone(), l.s.clone()]]).unwrap();
                assert_eq!(restriction, l.to_mat().transpose());
                assert!(a.charpoly().unwrap().rem(&l.charpoly()).unwrap().is_zero());
                // the plane holds no eigenvector: A restricted has irreducible charpoly
                assert!(quadratic_irreducible(&restriction.charpoly().unwrap()).unwrap());
                assert!(is_proper_super_eigenvalue(&a, &l).unwrap());
                seen += 1;
            }
            assert!(proper_super_eigenvalues(&a, 1).unwrap().len() <= n / 2);
        }
        assert!(seen > 20);
    }

    #[test]
    fn json_round_trips() {
        let f = q2();
        let l = worked_lambda();
        assert_eq!(SuperEigenvalue::from_json(&l.to_json(), Some(f)).unwrap(), l);
        let w = worked_plane();
        assert_eq!(SuperEigenvector::from_json(&w.to_json(), f).unwrap(), w);
        let c = &proper_super_eigenvalues(&cyclic_sign(f), 0).unwrap()[0];
        let j = c.to_json(Some(&w));
        assert_eq!(j["class"]["tag"], "irreducible");
        assert_eq!(j["multiplicity"], 1);
        assert_eq!(j["plane"]["u"][2], "sqrt(2)");
    }
}
