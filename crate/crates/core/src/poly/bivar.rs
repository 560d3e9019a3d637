use std::fmt;

use serde_json::{json, Value};

use crate::field::{Field, FieldElement};
use crate::matrix::{det_division_free, parse_grid, Mat, MatrixError};
use crate::ring::CommRing;

use super::PolyError;

/// Polynomial in `t` and `d`; `coeffs[i][j]` is the coefficient of `t^i d^j`.
/// The grid is rectangular with trailing zero rows and columns stripped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    field: Field,
    coeffs: Vec<Vec<FieldElement>>,
}

impl BivarPoly {
    pub fn from_grid(field: Field, coeffs: Vec<Vec<FieldElement>>) -> Self {
        let mut p = BivarPoly { field, coeffs };
        p.normalize();
        p
    }

    pub fn zero(field: Field) -> Self {
        BivarPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c · t^i · d^j`.
    pub fn monomial(c: FieldElement, i: usize, j: usize) -> Self {
        let field = c.field();
        let mut grid = vec![vec![field.zero(); j + 1]; i + 1];
        grid[i][j] = c;
        Self::from_grid(field, grid)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeff(&self, i: usize, j: usize) -> FieldElement {
        self.coeffs.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn grid(&self) -> &[Vec<FieldElement>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`.
    pub fn degree_t(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree in `d`.
    pub fn degree_d(&self) -> Option<usize> {
        self.coeffs.first().map(|r| r.len() - 1)
    }

    /// Total degree.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms().map(|(i, j, _)| i + j).max()
    }

    fn terms(&self) -> impl Iterator<Item = (usize, usize, &FieldElement)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, c)| (i, j, c)))
            .filter(|(_, _, c)| !c.is_zero())
    }

    fn normalize(&mut self) {
        let width = self
            .coeffs
            .iter()
            .filter_map(|r| r.iter().rposition(|c| !c.is_zero()))
            .max()
            .map_or(0, |j| j + 1);
        for r in &mut self.coeffs {
            r.resize(width, self.field.zero());
        }
        while self.coeffs.last().is_some_and(|r| r.iter().all(FieldElement::is_zero)) {
            self.coeffs.pop();
        }
        if width == 0 {
            self.coeffs.clear();
        }
    }

    pub fn eval(&self, t: &FieldElement, d: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, row| {
            let inner = row.iter().rev().fold(self.field.zero(), |a, c| a * d + c);
            acc * t + inner
        })
    }

    fn zip(&self, other: &Self, op: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> Self {
        let rows = self.coeffs.len().max(other.coeffs.len());
        let cols = self.coeffs.first().map_or(0, Vec::len).max(other.coeffs.first().map_or(0, Vec::len));
        let grid = (0..rows)
            .map(|i| (0..cols).map(|j| op(&self.coeff(i, j), &other.coeff(i, j))).collect())
            .collect();
        Self::from_grid(self.field, grid)
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let rows = self.coeffs.len() + other.coeffs.len() - 1;
        let cols = self.coeffs[0].len() + other.coeffs[0].len() - 1;
        let mut grid = vec![vec![self.field.zero(); cols]; rows];
        for (i, j, a) in self.terms() {
            for (k, l, b) in other.terms() {
                grid[i + k][j + l] = &grid[i + k][j + l] + &(a * b);
            }
        }
        Self::from_grid(self.field, grid)
    }

    /// `{"vars":["t","d"],"coeffs":[[..]]}`; row `i` holds the `t^i` coefficients.
    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.to_json(),
            "vars": ["t", "d"],
            "coeffs": self.coeffs.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value, field: Option<Field>) -> Result<Self, PolyError> {
        let field = match (field, value.get("field")) {
            (Some(f), _) => f,
            (None, Some(desc)) => Field::from_json(desc)?,
            (None, None) => return Err(PolyError::Json("missing field descriptor".into())),
        };
        if value.get("vars") != Some(&json!(["t", "d"])) {
            return Err(PolyError::Json("vars must be [\"t\",\"d\"]".into()));
        }
        let grid = value.get("coeffs").ok_or_else(|| PolyError::Json("missing coeffs".into()))?;
        let grid = parse_grid(field, grid).map_err(|e| match e {
            MatrixError::Field(f) => PolyError::Field(f),
            other => PolyError::Json(other.to_string()),
        })?;
        Ok(Self::from_grid(field, grid))
    }
}

impl CommRing for BivarPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.field)
    }
    fn one_like(&self) -> Self {
        Self::constant(self.field.one())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }
    fn minus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }
    fn times(&self, other: &Self) -> Self {
        self.product(other)
    }
    fn negated(&self) -> Self {
        Self::zero(self.field).minus(self)
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(usize, usize, &FieldElement)> = self.terms().collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.sort_by(|a, b| (b.0, b.1).cmp(&(a.0, a.1)));
        let mut out = String::new();
        for (i, j, c) in terms {
            let mut vars = Vec::new();
            match i {
                0 => {}
                1 => vars.push("t".to_string()),
                _ => vars.push(format!("t^{i}")),
            }
            match j {
                0 => {}
                1 => vars.push("d".to_string()),
                _ => vars.push(format!("d^{j}")),
            }
            let mono = vars.join("*");
            let text = c.to_string();
            let compound = text.char_indices().skip(1).any(|(_, ch)| ch == '+' || ch == '-');
            let term = if mono.is_empty() {
                if compound { format!("({text})") } else { text }
            } else if c.is_one() {
                mono
            } else if (-c).is_one() && !self.field.is_finite() {
                format!("-{mono}")
            } else if compound {
                format!("({text})*{mono}")
            } else {
                format!("{text}*{mono}")
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        f.write_str(&out)
    }
}

/// `F(t, d) = det(A² − t·A + d·I)`, computed by the division-free
/// characteristic-polynomial algorithm over the ring of bivariate
/// polynomials. For `Λ = [[p,q],[r,s]]`, `F(p+s, ps−qr) = det(p_Λ(A))`.
pub fn super_char_poly(a: &Mat) -> Result<BivarPoly, MatrixError> {
    if !a.is_square() {
        return Err(MatrixError::NotSquare { op: "super_char_poly", rows: a.rows(), cols: a.cols() });
    }
    let field = a.field();
    let n = a.rows();
    let a2 = a * a;
    let entries: Vec<Vec<BivarPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // row t^0: [(A²)_ij, δ_ij·d]; row t^1: [−a_ij, 0]
                    let grid = vec![
                        vec![a2.get(i, j).clone(), field.from_i64(i64::from(i == j))],
                        vec![-a.get(i, j), field.zero()],
                    ];
                    BivarPoly::from_grid(field, grid)
                })
                .collect()
        })
        .collect();
    Ok(det_division_free(&entries, &BivarPoly::constant(field.one())))
}
