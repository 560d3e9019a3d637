//! The module `U = Fⁿ ⊕ Fⁿ` over `R = Mat₂(F)` with the left action
//! `[[p,q],[r,s]]·[u; v] = [pu + qv; ru + sv]`, the `R`-linear map
//! `f_A([u; v]) = [Au; Av]`, and its matrices over the `R`-basis
//! `T_i = [e_i; e_{k+i}]` (n = 2k).

use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};
use crate::matrix::{parse_grid, vector_json, Mat, MatrixError};
use crate::supereig::SuperEigenvalue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RModuleError {
    #[error("dimension {0} is odd; the R-basis needs n = 2k")]
    OddDimension(usize),
    #[error("size mismatch: {0}")]
    Size(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("malformed RMat JSON: {0}")]
    Json(String),
}

fn half(n: usize) -> Result<usize, RModuleError> {
    if n % 2 == 1 {
        return Err(RModuleError::OddDimension(n));
    }
    Ok(n / 2)
}

fn unit(field: Field, n: usize, i: usize) -> Vec<FieldElement> {
    (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()
}

/// The element `[u; v]` of `U`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModulePair {
    pub u: Vec<FieldElement>,
    pub v: Vec<FieldElement>,
}

impl ModulePair {
    pub fn new(u: Vec<FieldElement>, v: Vec<FieldElement>) -> Result<Self, RModuleError> {
        if u.len() != v.len() {
            return Err(RModuleError::Size(format!("u has length {}, v has length {}", u.len(), v.len())));
        }
        Ok(ModulePair { u, v })
    }

    pub fn zero(field: Field, n: usize) -> Self {
        ModulePair { u: vec![field.zero(); n], v: vec![field.zero(); n] }
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    /// `(u₁, …, uₙ, v₁, …, vₙ)`, the coordinates in the standard basis `X`.
    pub fn to_vector(&self) -> Vec<FieldElement> {
        self.u.iter().chain(&self.v).cloned().collect()
    }

    pub fn from_vector(x: &[FieldElement]) -> Result<Self, RModuleError> {
        let n = half(x.len())?;
        Ok(ModulePair { u: x[..n].to_vec(), v: x[n..].to_vec() })
    }

    pub fn is_zero(&self) -> bool {
        self.u.iter().chain(&self.v).all(FieldElement::is_zero)
    }

    /// `u` and `v` linearly independent.
    pub fn is_regular(&self) -> bool {
        let Some(f) = self.u.first().map(FieldElement::field) else {
            return false;
        };
        Mat::from_rows(f, vec![self.u.clone(), self.v.clone()]).expect("equal lengths").rank() == 2
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RModuleError> {
        if self.len() != other.len() {
            return Err(RModuleError::Size(format!("lengths {} and {}", self.len(), other.len())));
        }
        let add = |a: &[FieldElement], b: &[FieldElement]| a.iter().zip(b).map(|(x, y)| x.try_add(y)).collect::<Result<Vec<_>, _>>();
        Ok(ModulePair { u: add(&self.u, &other.u)?, v: add(&self.v, &other.v)? })
    }

    pub fn to_json(&self) -> Value {
        json!({ "u": vector_json(&self.u), "v": vector_json(&self.v) })
    }
}

/// `Λ·[u; v] = [pu + qv; ru + sv]`.
pub fn r_action(l: &SuperEigenvalue, w: &ModulePair) -> Result<ModulePair, RModuleError> {
    let combine = |a: &FieldElement, b: &FieldElement| -> Result<Vec<FieldElement>, FieldError> {
        w.u.iter().zip(&w.v).map(|(x, y)| a.try_mul(x)?.try_add(&b.try_mul(y)?)).collect()
    };
    Ok(ModulePair { u: combine(l.p(), l.q())?, v: combine(l.r(), l.s())? })
}

/// `f_A([u; v]) = [Au; Av]`.
pub fn f_apply(a: &Mat, w: &ModulePair) -> Result<ModulePair, RModuleError> {
    Ok(ModulePair { u: a.apply(&w.u)?, v: a.apply(&w.v)? })
}

/// A `k×k` matrix with entries in `R`, stored as 2×2 blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RMat {
    field: Field,
    k: usize,
    blocks: Vec<Mat>,
}

impl RMat {
    pub fn new(field: Field, k: usize, blocks: Vec<Mat>) -> Result<Self, RModuleError> {
        if blocks.len() != k * k {
            return Err(RModuleError::Size(format!("{} blocks for k = {k}", blocks.len())));
        }
        for b in &blocks {
            if b.shape() != (2, 2) {
                return Err(MatrixError::Not2x2(b.rows(), b.cols()).into());
            }
            if b.field() != field {
                return Err(FieldError::Mismatch(field, b.field()).into());
            }
        }
        Ok(RMat { field, k, blocks })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Block at 0-based position `(i, j)`.
    pub fn block(&self, i: usize, j: usize) -> &Mat {
        &self.blocks[i * self.k + j]
    }

    pub fn try_mul(&self, other: &RMat) -> Result<RMat, RModuleError> {
        if self.k != other.k {
            return Err(RModuleError::Size(format!("k = {} vs k = {}", self.k, other.k)));
        }
        let k = self.k;
        let mut blocks = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let mut acc = Mat::zeros(self.field, 2, 2);
                for l in 0..k {
                    acc = acc.try_add(&self.block(i, l).try_mul(other.block(l, j))?)?;
                }
                blocks.push(acc);
            }
        }
        RMat::new(self.field, k, blocks)
    }

    /// `{"k": k, "blocks": [[[[a,b],[c,d]], …], …]}`.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> =
            (0..self.k).map(|i| Value::Array((0..self.k).map(|j| self.block(i, j).rows_json()).collect())).collect();
        json!({ "field": self.field.to_json(), "k": self.k, "blocks": rows })
    }

    pub fn from_json(value: &Value, field: Option<Field>) -> Result<RMat, RModuleError> {
        let field = match (field, value.get("field")) {
            (Some(f), _) => f,
            (None, Some(desc)) => Field::from_json(desc)?,
            (None, None) => return Err(RModuleError::Json("missing field descriptor".into())),
        };
        let k = value.get("k").and_then(Value::as_u64).ok_or_else(|| RModuleError::Json("missing \"k\"".into()))? as usize;
        let rows = value.get("blocks").and_then(Value::as_array).ok_or_else(|| RModuleError::Json("missing \"blocks\"".into()))?;
        if rows.len() != k {
            return Err(RModuleError::Json(format!("expected {k} block rows")));
        }
        let mut blocks = Vec::with_capacity(k * k);
        for row in rows {
            let row = row.as_array().filter(|r| r.len() == k).ok_or_else(|| RModuleError::Json(format!("expected {k} blocks per row")))?;
            for b in row {
                blocks.push(Mat::from_rows(field, parse_grid(field, b)?)?);
            }
        }
        RMat::new(field, k, blocks)
    }
}

/// Matrix of `f_A` over the `R`-basis: block `(i, j)` (1-based) is
/// `[[a_{i,j}, a_{k+i,j}], [a_{i,k+j}, a_{k+i,k+j}]]`, so that
/// `f_A(T_j) = Σ_i block(i,j)·T_i`.
pub fn tilde(a: &Mat) -> Result<RMat, RModuleError> {
    if !a.is_square() {
        return Err(MatrixError::NotSquare { op: "tilde", rows: a.rows(), cols: a.cols() }.into());
    }
    let k = half(a.rows())?;
    let mut blocks = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let g = |r: usize, c: usize| a.get(r, c).clone();
            blocks.push(Mat::from_rows(a.field(), vec![vec![g(i, j), g(k + i, j)], vec![g(i, k + j), g(k + i, k + j)]])?);
        }
    }
    RMat::new(a.field(), k, blocks)
}

/// Inverse of [`tilde`].
pub fn untilde(m: &RMat) -> Mat {
    let k = m.k;
    let mut a = Mat::zeros(m.field, 2 * k, 2 * k);
    for i in 0..k {
        for j in 0..k {
            let b = m.block(i, j);
            a.set(i, j, b.get(0, 0).clone());
            a.set(k + i, j, b.get(0, 1).clone());
            a.set(i, k + j, b.get(1, 0).clone());
            a.set(k + i, k + j, b.get(1, 1).clone());
        }
    }
    a
}

/// Removes the inner brackets: row `2i + a`, column `2j + b` (0-based)
/// holds `block(i, j)[a][b]`.
pub fn alpha(m: &RMat) -> Mat {
    Mat::from_fn(m.field, 2 * m.k, 2 * m.k, |r, c| m.block(r / 2, c / 2).get(r % 2, c % 2).clone())
}

pub fn alpha_inv(b: &Mat) -> Result<RMat, RModuleError> {
    if !b.is_square() {
        return Err(MatrixError::NotSquare { op: "alpha_inv", rows: b.rows(), cols: b.cols() }.into());
    }
    let k = half(b.rows())?;
    let blocks = (0..k * k).map(|idx| b.submatrix(2 * (idx / k), 2 * (idx % k), 2, 2)).collect();
    RMat::new(b.field(), k, blocks)
}

/// `α(Ã)`.
pub fn hat(a: &Mat) -> Result<Mat, RModuleError> {
    Ok(alpha(&tilde(a)?))
}

/// The `R`-basis `T_i = [e_i; e_{k+i}]` and the standard `F`-basis
/// `E_i = [e_i; 0]`, `F_i = [0; e_i]` of `U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RModuleBasis {
    pub n: usize,
    pub t: Vec<ModulePair>,
    pub x: Vec<ModulePair>,
}

impl RModuleBasis {
    pub fn k(&self) -> usize {
        self.n / 2
    }

    /// `R`-coordinates `c_i` with `w = Σ c_i·T_i`:
    /// `c_i = [[u_i, u_{k+i}], [v_i, v_{k+i}]]`.
    pub fn coordinates(&self, w: &ModulePair) -> Result<Vec<Mat>, RModuleError> {
        if w.len() != self.n {
            return Err(RModuleError::Size(format!("element of length {} for n = {}", w.len(), self.n)));
        }
        let k = self.k();
        (0..k)
            .map(|i| {
                Mat::from_rows(w.u[i].field(), vec![vec![w.u[i].clone(), w.u[k + i].clone()], vec![w.v[i].clone(), w.v[k + i].clone()]])
                    .map_err(Into::into)
            })
            .collect()
    }

    /// `Σ c_i·T_i`.
    pub fn combine(&self, coords: &[Mat]) -> Result<ModulePair, RModuleError> {
        if coords.len() != self.k() {
            return Err(RModuleError::Size(format!("{} coordinates for k = {}", coords.len(), self.k())));
        }
        let field = coords.first().map_or(Field::rationals(), Mat::field);
        let mut acc = ModulePair::zero(field, self.n);
        for (c, t) in coords.iter().zip(&self.t) {
            acc = acc.try_add(&r_action(&SuperEigenvalue::from_mat(c)?, t)?)?;
        }
        Ok(acc)
    }
}

pub fn r_basis(field: Field, n: usize) -> Result<RModuleBasis, RModuleError> {
    let k = half(n)?;
    let t = (0..k).map(|i| ModulePair { u: unit(field, n, i), v: unit(field, n, k + i) }).collect();
    let x = (0..n)
        .map(|i| ModulePair { u: unit(field, n, i), v: vec![field.zero(); n] })
        .chain((0..n).map(|i| ModulePair { u: vec![field.zero(); n], v: unit(field, n, i) }))
        .collect();
    Ok(RModuleBasis { n, t, x })
}

/// Matrix of `f_A` in the basis `E₁…Eₙ, F₁…Fₙ`: `diag(A, A)`.
pub fn x_matrix(a: &Mat) -> Result<Mat, RModuleError> {
    if !a.is_square() {
        return Err(MatrixError::NotSquare { op: "x_matrix", rows: a.rows(), cols: a.cols() }.into());
    }
    half(a.rows())?;
    let basis = r_basis(a.field(), a.rows())?;
    let columns = basis.x.iter().map(|b| f_apply(a, b).map(|w| w.to_vector())).collect::<Result<Vec<_>, _>>()?;
    Ok(Mat::from_columns(a.field(), &columns))
}

/// How the presence of a regular solution was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularityMethod {
    /// Exhaustive scan of a finite solution space.
    Scan,
    /// Polarization of the 2×2 minor quadratic forms.
    Polarization,
}

/// All `w` with `f_A(w) = Λ·w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct REigenSolution {
    /// Canonical basis of the solution space.
    pub basis: Vec<ModulePair>,
    /// Some solution has `u, v` independent.
    pub regular: bool,
    /// A regular solution, when one exists.
    pub witness: Option<ModulePair>,
    pub method: RegularityMethod,
}

impl REigenSolution {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Nonzero solutions exist, but none is regular.
    pub fn irregular_only(&self) -> bool {
        !self.basis.is_empty() && !self.regular
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim(),
            "basis": self.basis.iter().map(ModulePair::to_json).collect::<Vec<_>>(),
            "regular": self.regular,
            "irregular_only": self.irregular_only(),
            "witness": self.witness.as_ref().map_or(Value::Null, ModulePair::to_json),
        })
    }
}

/// Solution spaces up to this many elements are scanned exhaustively.
const SCAN_LIMIT: u128 = 1 << 16;

/// The system `[[A−pI, −qI], [−rI, A−sI]]·[u; v] = 0`, solved exactly.
pub fn r_eigen_solve(a: &Mat, l: &SuperEigenvalue) -> Result<REigenSolution, RModuleError> {
    if !a.is_square() {
        return Err(MatrixError::NotSquare { op: "r_eigen_solve", rows: a.rows(), cols: a.cols() }.into());
    }
    if a.field() != l.field() {
        return Err(FieldError::Mismatch(a.field(), l.field()).into());
    }
    let (field, n) = (a.field(), a.rows());
    let scalar = |x: &FieldElement| Mat::scalar(field, n, x);
    let top = a.try_sub(&scalar(l.p()))?;
    let bottom = a.try_sub(&scalar(l.s()))?;
    let system = Mat::from_fn(field, 2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => top.get(i, j).clone(),
        (true, false) => if i == j - n { -l.q() } else { field.zero() },
        (false, true) => if i - n == j { -l.r() } else { field.zero() },
        (false, false) => bottom.get(i - n, j - n).clone(),
    });
    let basis: Vec<ModulePair> =
        system.kernel_basis().iter().map(|x| ModulePair::from_vector(x).expect("even length")).collect();
    let space = field.order().map(|q| u128::from(q).checked_pow(basis.len() as u32));
    let (witness, method) = match space {
        Some(Some(size)) if size <= SCAN_LIMIT => (regular_by_scan(field, &basis), RegularityMethod::Scan),
        _ => (regular_by_polarization(&basis), RegularityMethod::Polarization),
    };
    Ok(REigenSolution { basis, regular: witness.is_some(), witness, method })
}

fn linear_combination(field: Field, basis: &[ModulePair], coeffs: &[FieldElement]) -> ModulePair {
    let n = basis.first().map_or(0, ModulePair::len);
    let mut u = vec![field.zero(); n];
    let mut v = vec![field.zero(); n];
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for i in 0..n {
            u[i] = &u[i] + &(c * &b.u[i]);
            v[i] = &v[i] + &(c * &b.v[i]);
        }
    }
    ModulePair { u, v }
}

/// First regular element of the span over a finite field, in lexicographic
/// order of the coefficient tuples.
pub fn regular_by_scan(field: Field, basis: &[ModulePair]) -> Option<ModulePair> {
    let elems = field.elements().expect("finite field");
    let q = elems.len();
    let dim = basis.len();
    let mut digits = vec![0usize; dim];
    loop {
        let coeffs: Vec<FieldElement> = digits.iter().map(|&d| elems[d].clone()).collect();
        let w = linear_combination(field, basis, &coeffs);
        if w.is_regular() {
            return Some(w);
        }
        let mut pos = dim;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < q {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Decides whether the span holds a regular element from the values of the
/// 2×2 minors `u_a v_b − u_b v_a` at the basis vectors and their pairwise
/// sums. In characteristic ≠ 2 these values determine every coefficient of
/// each minor, viewed as a quadratic form in the span coordinates, so all
/// of them vanishing means every minor vanishes identically. Any point with
/// a nonzero minor is returned as a witness.
pub fn regular_by_polarization(basis: &[ModulePair]) -> Option<ModulePair> {
    let mut points: Vec<ModulePair> = basis.to_vec();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            points.push(basis[i].try_add(&basis[j]).expect("equal lengths"));
        }
    }
    points.into_iter().find(ModulePair::is_regular)
}

/// `det(Â − diag(Λ, …, Λ))`.
pub fn det_test(a: &Mat, l: &SuperEigenvalue) -> Result<FieldElement, RModuleError> {
    let h = hat(a)?;
    let k = h.rows() / 2;
    let lambdas = Mat::block_diag(a.field(), &vec![l.to_mat(); k]);
    Ok(h.try_sub(&lambdas)?.det()?)
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::supereig::is_super_eigenvalue;

    fn cyclic_sign(field: Field) -> Mat {
        Mat::from_i64(field, &[&[0, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]])
    }

    fn random_mat(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Mat {
        Mat::from_fn(field, n, n, |_, _| field.random_element(rng, 3))
    }

    fn random_lambda(field: Field, rng: &mut ChaCha8Rng) -> SuperEigenvalue {
        let [p, q, r, s] = std::array::from_fn(|_| field.random_element(rng, 3));
        SuperEigenvalue::new(p, q, r, s).unwrap()
    }

    fn random_pair(field: Field, n: usize, rng: &mut ChaCha8Rng) -> ModulePair {
        ModulePair {
            u: (0..n).map(|_| field.random_element(rng, 3)).collect(),
            v: (0..n).map(|_| field.random_element(rng, 3)).collect(),
        }
    }

    fn vec_of(field: Field, xs: &[&str]) -> Vec<FieldElement> {
        xs.iter().map(|x| field.parse(x).unwrap()).collect()
    }

    #[test]
    fn action_examples() {
        let f = Field::quadratic(2).unwrap();
        let w = ModulePair::new(vec_of(f, &["0", "1", "sqrt(2)", "1"]), vec_of(f, &["1", "0", "-1", "-sqrt(2)"])).unwrap();
        let id = SuperEigenvalue::from_i64(f, [[1, 0], [0, 1]]);
        assert_eq!(r_action(&id, &w).unwrap(), w);
        let nil = SuperEigenvalue::from_i64(f, [[0, 1], [0, 0]]);
        assert_eq!(r_action(&nil, &w).unwrap(), ModulePair { u: w.v.clone(), v: vec![f.zero(); 4] });
        let l = SuperEigenvalue::from_mat(&Mat::parse(f, &[&["0", "-1"], &["1", "sqrt(2)"]]).unwrap()).unwrap();
        let lw = r_action(&l, &w).unwrap();
        assert_eq!(lw.u, vec_of(f, &["-1", "0", "1", "sqrt(2)"]));
        assert_eq!(lw.v, vec_of(f, &["sqrt(2)", "1", "0", "-1"]));
        assert_eq!(f_apply(&cyclic_sign(f), &w).unwrap(), lw);
    }

    #[test]
    fn module_axioms_and_linearity() {
        let f = Field::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let id = SuperEigenvalue::from_i64(f, [[1, 0], [0, 1]]);
        for _ in 0..2000 {
            let n = rng.random_range(1..5);
            let (l, m) = (random_lambda(f, &mut rng), random_lambda(f, &mut rng));
            let w = random_pair(f, n, &mut rng);
            let lm = SuperEigenvalue::from_mat(&(&l.to_mat() * &m.to_mat())).unwrap();
            assert_eq!(r_action(&lm, &w).unwrap(), r_action(&l, &r_action(&m, &w).unwrap()).unwrap());
            let sum = SuperEigenvalue::from_mat(&(&l.to_mat() + &m.to_mat())).unwrap();
            assert_eq!(r_action(&sum, &w).unwrap(), r_action(&l, &w).unwrap().try_add(&r_action(&m, &w).unwrap()).unwrap());
            assert_eq!(r_action(&id, &w).unwrap(), w);
            let a = random_mat(f, n, &mut rng);
            assert_eq!(f_apply(&a, &r_action(&l, &w).unwrap()).unwrap(), r_action(&l, &f_apply(&a, &w).unwrap()).unwrap());
        }
    }

    #[test]
    fn tilde_examples() {
        let q = Field::rationals();
        let a = Mat::from_i64(q, &[&[1, 1], &[-2, -1]]);
        let t = tilde(&a).unwrap();
        assert_eq!(t.block(0, 0), &Mat::from_i64(q, &[&[1, -2], &[1, -1]]));

        let t = tilde(&cyclic_sign(q)).unwrap();
        assert!(t.block(0, 0).is_zero());
        assert_eq!(t.block(0, 1), &Mat::from_i64(q, &[&[0, 1], &[-1, 0]]));
        assert_eq!(t.block(1, 0), &Mat::identity(q, 2));
        assert!(t.block(1, 1).is_zero());

        let d = Mat::diag(q, &[q.from_i64(1), q.from_i64(2), q.from_i64(3), q.from_i64(4)]);
        let t = tilde(&d).unwrap();
        assert_eq!(t.block(0, 0), &Mat::diag(q, &[q.from_i64(1), q.from_i64(3)]));
        assert_eq!(t.block(1, 1), &Mat::diag(q, &[q.from_i64(2), q.from_i64(4)]));
        assert!(t.block(0, 1).is_zero() && t.block(1, 0).is_zero());

        assert_eq!(tilde(&Mat::identity(q, 3)), Err(RModuleError::OddDimension(3)));
    }

    #[test]
    fn hat_examples() {
        let q = Field::rationals();
        assert_eq!(
            hat(&cyclic_sign(q)).unwrap(),
            Mat::from_i64(q, &[&[0, 0, 0, 1], &[0, 0, -1, 0], &[1, 0, 0, 0], &[0, 1, 0, 0]])
        );
        let a = Mat::from_i64(q, &[&[1, 1], &[-2, -1]]);
        assert_eq!(hat(&a).unwrap(), a.transpose());
        assert_eq!(hat(&Mat::identity(q, 6)).unwrap(), Mat::identity(q, 6));
    }

    #[test]
    fn tilde_is_the_matrix_of_f_over_the_r_basis() {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in [2, 4, 6] {
            let basis = r_basis(f, n).unwrap();
            for _ in 0..20 {
                let a = random_mat(f, n, &mut rng);
                let t = tilde(&a).unwrap();
                assert_eq!(untilde(&t), a);
                let w = random_pair(f, n, &mut rng);
                let c = basis.coordinates(&w).unwrap();
                assert_eq!(basis.combine(&c).unwrap(), w);
                // coordinates of f_A(w) are c'_i = Σ_j c_j · block(i, j)
                let image = basis.coordinates(&f_apply(&a, &w).unwrap()).unwrap();
                for i in 0..n / 2 {
                    let expected = (0..n / 2).fold(Mat::zeros(f, 2, 2), |acc, j| &acc + &(&c[j] * t.block(i, j)));
                    assert_eq!(image[i], expected);
                }
            }
        }
    }

    #[test]
    fn alpha_is_a_ring_isomorphism() {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let n = 2 * rng.random_range(1..4);
            let (b, c) = (random_mat(f, n, &mut rng), random_mat(f, n, &mut rng));
            let (mb, mc) = (alpha_inv(&b).unwrap(), alpha_inv(&c).unwrap());
            assert_eq!(alpha(&mb), b);
            assert_eq!(alpha(&mb.try_mul(&mc).unwrap()), &b * &c);
        }
        let one = RMat::new(f, 1, vec![Mat::from_i64(f, &[&[1, 2], &[0, 1]])]).unwrap();
        assert_eq!(alpha(&one), Mat::from_i64(f, &[&[1, 2], &[0, 1]]));
    }

    #[test]
    fn r_basis_shapes() {
        let q = Field::rationals();
        let b = r_basis(q, 4).unwrap();
        let e = |i| (0..4).map(|j| if i == j { q.one() } else { q.zero() }).collect::<Vec<_>>();
        assert_eq!(b.t, vec![ModulePair { u: e(0), v: e(2) }, ModulePair { u: e(1), v: e(3) }]);
        assert_eq!(b.x.len(), 8);
        let b2 = r_basis(q, 2).unwrap();
        assert_eq!(b2.t.len(), 1);
        assert!(r_basis(q, 5).is_err());
    }

    #[test]
    fn x_matrix_is_two_copies() {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let a = random_mat(f, 4, &mut rng);
            assert_eq!(x_matrix(&a).unwrap(), Mat::block_diag(f, &[a.clone(), a.clone()]));
        }
        let q = Field::rationals();
        assert_eq!(x_matrix(&Mat::identity(q, 2)).unwrap(), Mat::identity(q, 4));
    }

    #[test]
    fn r_eigen_solve_examples() {
        let f = Field::quadratic(2).unwrap();
        let l = SuperEigenvalue::from_mat(&Mat::parse(f, &[&["0", "-1"], &["1", "sqrt(2)"]]).unwrap()).unwrap();
        let sol = r_eigen_solve(&cyclic_sign(f), &l).unwrap();
        assert_eq!(sol.dim(), 2);
        assert!(sol.regular);
        assert_eq!(sol.method, RegularityMethod::Polarization);
        let known = ModulePair::new(vec_of(f, &["0", "1", "sqrt(2)", "1"]), vec_of(f, &["1", "0", "-1", "-sqrt(2)"])).unwrap();
        let span = Mat::from_rows(f, sol.basis.iter().map(ModulePair::to_vector).collect()).unwrap();
        let with = Mat::from_rows(f, sol.basis.iter().map(ModulePair::to_vector).chain([known.to_vector()]).collect()).unwrap();
        assert_eq!(span.rank(), with.rank());

        let q = Field::rationals();
        let d = Mat::from_i64(q, &[&[1, 0], &[0, 2]]);
        let sol = r_eigen_solve(&d, &SuperEigenvalue::from_i64(q, [[1, 0], [0, 5]])).unwrap();
        assert_eq!(sol.basis, vec![ModulePair { u: vec![q.one(), q.zero()], v: vec![q.zero(), q.zero()] }]);
        assert!(sol.irregular_only());

        let a = cyclic_sign(q);
        let sol = r_eigen_solve(&a, &SuperEigenvalue::from_i64(q, [[0, 0], [0, 0]])).unwrap();
        assert_eq!(sol.dim(), 0);
        assert!(!sol.regular && !sol.irregular_only());
    }

    #[test]
    fn regularity_matches_super_status_exhaustively_for_n2() {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let lambdas = SuperEigenvalue::all(f).unwrap();
        for _ in 0..25 {
            let a = random_mat(f, 2, &mut rng);
            for l in &lambdas {
                let sol = r_eigen_solve(&a, l).unwrap();
                assert_eq!(sol.regular, is_super_eigenvalue(&a, l).unwrap(), "A = {a}, L = {l}");
                // polarization agrees with the scan in odd characteristic
                assert_eq!(regular_by_polarization(&sol.basis).is_some(), sol.regular);
                let nonzero = sol.dim() > 0;
                assert_eq!(nonzero, crate::supereig::necessary_condition(&a, l).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn det_test_examples() {
        let f = Field::quadratic(2).unwrap();
        assert_eq!(det_test(&cyclic_sign(f), &SuperEigenvalue::from_i64(f, [[0, 0], [0, 0]])).unwrap(), f.one());
        let q = Field::rationals();
        let a = Mat::from_i64(q, &[&[1, 1], &[-2, -1]]);
        assert_eq!(det_test(&a, &SuperEigenvalue::from_i64(q, [[0, -1], [1, 0]])).unwrap(), q.from_i64(-1));
        let d = Mat::from_i64(q, &[&[1, 0], &[0, 2]]);
        assert!(det_test(&d, &SuperEigenvalue::from_i64(q, [[1, 0], [0, 5]])).unwrap().is_zero());
        assert!(det_test(&Mat::identity(q, 3), &SuperEigenvalue::from_i64(q, [[1, 0], [0, 1]])).is_err());
    }

    #[test]
    fn rmat_json_round_trip() {
        let f = Field::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = tilde(&random_mat(f, 4, &mut rng)).unwrap();
        let j = t.to_json();
        assert_eq!(j["k"], 2);
        assert_eq!(RMat::from_json(&j, None).unwrap(), t);
    }
}
