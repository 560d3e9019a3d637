//! Dense exact matrices: arithmetic, echelon forms and kernels, determinants,
//! the division-free characteristic polynomial, polynomial evaluation at a
//! matrix, and similarity classes of 2×2 matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};
use crate::poly::UniPoly;
use crate::ring::CommRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Shape { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare { op: &'static str, rows: usize, cols: usize },
    #[error("expected a 2x2 matrix, got {0}x{1}")]
    Not2x2(usize, usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("malformed matrix JSON: {0}")]
    Json(String),
}

/// Dense row-major matrix over one field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::scalar(field, n, &field.one())
    }

    pub fn scalar(field: Field, n: usize, c: &FieldElement) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diag(field: Field, entries: &[FieldElement]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(field, n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                assert_eq!(x.field(), field, "entry ({i},{j}) lives in a different field");
                data.push(x);
            }
        }
        Mat { field, rows, cols, data }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<FieldElement>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(MatrixError::Json(format!("ragged rows: expected {c} entries, got {}", row.len())));
            }
            for x in row {
                if x.field() != field {
                    return Err(FieldError::Mismatch(field, x.field()).into());
                }
                data.push(x);
            }
        }
        Ok(Mat { field, rows: r, cols: c, data })
    }

    /// Integer entries embedded into `field`.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        Self::from_fn(field, rows.len(), c, |i, j| field.from_i64(rows[i][j]))
    }

    /// Entries in element text syntax.
    pub fn parse(field: Field, rows: &[&[&str]]) -> Result<Self, MatrixError> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(field, parsed)
    }

    pub fn from_columns(field: Field, columns: &[Vec<FieldElement>]) -> Self {
        let rows = columns.first().map_or(0, Vec::len);
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn column_vector(field: Field, v: &[FieldElement]) -> Self {
        Self::from_fn(field, v.len(), 1, |i, _| v[i].clone())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        assert_eq!(x.field(), self.field);
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    fn require_square(&self, op: &'static str) -> Result<usize, MatrixError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(MatrixError::NotSquare { op, rows: self.rows, cols: self.cols })
        }
    }

    fn same_shape(&self, other: &Mat, op: &'static str) -> Result<(), MatrixError> {
        if self.field != other.field {
            return Err(FieldError::Mismatch(self.field, other.field).into());
        }
        if self.shape() != other.shape() {
            return Err(MatrixError::Shape { op, left: self.shape(), right: other.shape() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Mat) -> Result<Mat, MatrixError> {
        self.same_shape(other, "add")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(self.with_data(data))
    }

    pub fn try_sub(&self, other: &Mat) -> Result<Mat, MatrixError> {
        self.same_shape(other, "sub")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(self.with_data(data))
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat, MatrixError> {
        if self.field != other.field {
            return Err(FieldError::Mismatch(self.field, other.field).into());
        }
        if self.cols != other.rows {
            return Err(MatrixError::Shape { op: "mul", left: self.shape(), right: other.shape() });
        }
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn with_data(&self, data: Vec<FieldElement>) -> Mat {
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &FieldElement) -> Mat {
        self.with_data(self.data.iter().map(|x| x * c).collect())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// `A·v` for a vector given as a slice.
    pub fn apply(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::Shape { op: "apply", left: self.shape(), right: (v.len(), 1) });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn pow(&self, mut k: u64) -> Result<Mat, MatrixError> {
        let n = self.require_square("pow")?;
        let mut acc = Mat::identity(self.field, n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Block-diagonal matrix with the given square or rectangular blocks.
    pub fn block_diag(field: Field, blocks: &[Mat]) -> Mat {
        let rows = blocks.iter().map(Mat::rows).sum();
        let cols = blocks.iter().map(Mat::cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Sub-block copy `[r0, r0+rows) × [c0, c0+cols)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Reduced row echelon form and pivot columns. Pivots are the first
    /// nonzero entry in column order.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let x = m.get(i, j) - &(&factor * m.get(r, j));
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical kernel basis: one vector per free column (ascending), with a
    /// 1 in that column and zeros in the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<FieldElement, MatrixError> {
        let n = self.require_square("det")?;
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c) * &inv;
                for j in c..n {
                    let x = m.get(i, j) - &(&factor * m.get(c, j));
                    m.set(i, j, x);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Option<Mat>, MatrixError> {
        let n = self.require_square("inverse")?;
        let aug = Mat::from_fn(self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Ok(None);
        }
        Ok(Some(r.submatrix(0, n, n, n)))
    }

    /// Characteristic polynomial `det(T·I − A)` by the Berkowitz
    /// division-free algorithm.
    pub fn charpoly(&self) -> Result<UniPoly, MatrixError> {
        self.require_square("charpoly")?;
        let coeffs = berkowitz(&self.to_rows(), &self.field.one());
        // Berkowitz yields descending coefficients.
        Ok(UniPoly::from_coeffs(self.field, coeffs.into_iter().rev().collect()))
    }

    /// `f(A)` by Horner's rule.
    pub fn eval_poly(&self, f: &UniPoly) -> Result<Mat, MatrixError> {
        let n = self.require_square("eval_poly")?;
        if f.field() != self.field {
            return Err(FieldError::Mismatch(f.field(), self.field).into());
        }
        let mut acc = Mat::zeros(self.field, n, n);
        for c in f.coeffs().iter().rev() {
            acc = &(&acc * self) + &Mat::scalar(self.field, n, c);
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<FieldElement, MatrixError> {
        let n = self.require_square("trace")?;
        Ok((0..n).fold(self.field.zero(), |acc, i| acc + self.get(i, i)))
    }

    /// Similarity class of a 2×2 matrix.
    pub fn similarity_class(&self) -> Result<SimilarityClass, MatrixError> {
        if self.shape() != (2, 2) {
            return Err(MatrixError::Not2x2(self.rows, self.cols));
        }
        let trace = self.trace()?;
        let det = self.det()?;
        Ok(SimilarityClass::classify(&trace, &det, self.get(0, 1).is_zero() && self.get(1, 0).is_zero() && self.get(0, 0) == self.get(1, 1)))
    }

    /// `{"field": <descriptor>, "rows": [[<element strings>]]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.to_json(),
            "rows": self.rows_json(),
        })
    }

    /// Only the `rows` grid, for embedding in larger records.
    pub fn rows_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array(self.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
                .collect(),
        )
    }

    /// Reads a matrix from JSON. `field` overrides the embedded descriptor;
    /// a bare array of rows is accepted when `field` is given.
    pub fn from_json(value: &Value, field: Option<Field>) -> Result<Mat, MatrixError> {
        let (field, rows) = match value {
            Value::Object(obj) => {
                let field = match (field, obj.get("field")) {
                    (Some(f), _) => f,
                    (None, Some(desc)) => Field::from_json(desc)?,
                    (None, None) => return Err(MatrixError::Json("missing \"field\" descriptor".into())),
                };
                let rows = obj.get("rows").ok_or_else(|| MatrixError::Json("missing \"rows\"".into()))?;
                (field, rows)
            }
            Value::Array(_) => (field.ok_or_else(|| MatrixError::Json("bare row array needs a field".into()))?, value),
            _ => return Err(MatrixError::Json("expected an object or an array of rows".into())),
        };
        Self::from_rows(field, parse_grid(field, rows)?)
    }
}

/// Parses `[[..], ..]` whose entries are element strings or JSON integers.
pub fn parse_grid(field: Field, rows: &Value) -> Result<Vec<Vec<FieldElement>>, MatrixError> {
    let rows = rows.as_array().ok_or_else(|| MatrixError::Json("rows must be an array".into()))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| MatrixError::Json("each row must be an array".into()))?
                .iter()
                .map(|x| parse_element(field, x))
                .collect()
        })
        .collect()
}

pub fn parse_element(field: Field, x: &Value) -> Result<FieldElement, MatrixError> {
    match x {
        Value::String(s) => Ok(field.parse(s)?),
        Value::Number(n) if n.is_i64() => Ok(field.from_i64(n.as_i64().expect("checked"))),
        other => Err(MatrixError::Json(format!("unsupported entry {other}"))),
    }
}

/// Parses a vector given as a flat array or as a one-column matrix.
pub fn parse_vector(field: Field, x: &Value) -> Result<Vec<FieldElement>, MatrixError> {
    let items = match x {
        Value::Object(obj) => return parse_vector(field, obj.get("rows").ok_or_else(|| MatrixError::Json("missing \"rows\"".into()))?),
        Value::Array(items) => items,
        _ => return Err(MatrixError::Json("vector must be an array".into())),
    };
    items
        .iter()
        .map(|item| match item {
            Value::Array(inner) if inner.len() == 1 => parse_element(field, &inner[0]),
            other => parse_element(field, other),
        })
        .collect()
}

pub fn vector_json(v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[{}]", padded.join(" "))?;
        }
        Ok(())
    }
}

macro_rules! mat_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        /// Panics on shape or field mismatch; see the `try_` methods.
        impl $tr<&Mat> for &Mat {
            type Output = Mat;
            fn $method(self, rhs: &Mat) -> Mat {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

mat_binop!(Add, add, try_add);
mat_binop!(Sub, sub, try_sub);
mat_binop!(Mul, mul, try_mul);

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.with_data(self.data.iter().map(|x| -x).collect())
    }
}

/// Berkowitz's division-free characteristic polynomial over any commutative
/// ring. Returns `c_0 = 1, c_1, …, c_n` with `det(T·I − M) = Σ c_i T^(n−i)`.
///
/// Each step borders the leading `r×r` block `B` with column `C`, row `R` and
/// corner `a`: `p_new = (T − a)·p_B − R·adj(T·I − B)·C`, where the adjugate
/// expands through the Krylov products `R·B^m·C`.
pub fn berkowitz<R: CommRing>(m: &[Vec<R>], one: &R) -> Vec<R> {
    let n = m.len();
    let mut coeffs = vec![one.clone()];
    for r in 0..n {
        let a = &m[r][r];
        // beta[j] = R · B^j · C, j = 0 .. r-1
        let mut beta = Vec::with_capacity(r);
        let mut w: Vec<R> = (0..r).map(|i| m[i][r].clone()).collect();
        for j in 0..r {
            let dot = (0..r).fold(one.zero_like(), |acc, k| acc.plus(&m[r][k].times(&w[k])));
            beta.push(dot);
            if j + 1 < r {
                w = (0..r)
                    .map(|i| (0..r).fold(one.zero_like(), |acc, k| acc.plus(&m[i][k].times(&w[k]))))
                    .collect();
            }
        }
        let mut next = Vec::with_capacity(r + 2);
        for j in 0..=r + 1 {
            let mut x = if j <= r { coeffs[j].clone() } else { one.zero_like() };
            if j >= 1 {
                x = x.minus(&a.times(&coeffs[j - 1]));
            }
            for i in 0..j.saturating_sub(1) {
                x = x.minus(&coeffs[i].times(&beta[j - 2 - i]));
            }
            next.push(x);
        }
        coeffs = next;
    }
    coeffs
}

/// `det(M)` over a commutative ring via Berkowitz: the constant term of the
/// characteristic polynomial is `det(−M)`.
pub fn det_division_free<R: CommRing>(m: &[Vec<R>], one: &R) -> R {
    let c = berkowitz(m, one);
    let last = c.last().expect("nonempty").clone();
    if m.len() % 2 == 0 {
        last
    } else {
        last.negated()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassTag {
    Scalar,
    Jordan,
    Split,
    Irreducible,
}

impl ClassTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassTag::Scalar => "scalar",
            ClassTag::Jordan => "jordan",
            ClassTag::Split => "split",
            ClassTag::Irreducible => "irreducible",
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Similarity invariant of a 2×2 matrix over a field of characteristic ≠ 2:
/// trace and determinant, refined by the scalar or Jordan shape of a
/// repeated eigenvalue. Two 2×2 matrices are similar iff their classes are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimilarityClass {
    pub trace: FieldElement,
    pub det: FieldElement,
    pub tag: ClassTag,
}

impl SimilarityClass {
    fn classify(trace: &FieldElement, det: &FieldElement, is_scalar: bool) -> Self {
        let f = trace.field();
        let disc = trace.square() - f.from_i64(4) * det;
        let tag = if disc.is_zero() {
            if is_scalar {
                ClassTag::Scalar
            } else {
                ClassTag::Jordan
            }
        } else if disc.is_square() {
            ClassTag::Split
        } else {
            ClassTag::Irreducible
        };
        SimilarityClass { trace: trace.clone(), det: det.clone(), tag }
    }

    /// `T² − trace·T + det`.
    pub fn charpoly(&self) -> UniPoly {
        let f = self.trace.field();
        UniPoly::from_coeffs(f, vec![self.det.clone(), -&self.trace, f.one()])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "trace": self.trace.to_string(),
            "det": self.det.to_string(),
            "tag": self.tag.as_str(),
        })
    }
}
