//! Brute-force ground truth over small prime fields: every 2-dimensional
//! subspace of GF(p)ⁿ is enumerated once, tested for invariance, and the
//! results are compared against the algebraic decision procedures.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::matrix::{ClassTag, Mat, SimilarityClass};
use crate::rmodule::{det_test, r_eigen_solve, RModuleError};
use crate::supereig::{
    is_proper_super_eigenvalue, is_super_eigenvalue, necessary_condition, proper_super_eigenvalues, SuperEigError,
    SuperEigenvalue, SuperEigenvector,
};

/// Ceiling on `pⁿ · (number of planes)`.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Witnesses kept per claim.
pub const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("brute force needs a prime field, got {0}")]
    NotFinite(Field),
    #[error("planes need n >= 2, got {0}")]
    TooSmall(usize),
    #[error("brute force over GF({p})^{n} needs {needed} steps, above the budget of {budget}")]
    BudgetExceeded { p: u64, n: usize, needed: u128, budget: u128 },
    #[error(transparent)]
    SuperEig(#[from] SuperEigError),
    #[error(transparent)]
    RModule(#[from] RModuleError),
}

/// Number of 2-dimensional subspaces of GF(p)ⁿ.
pub fn gaussian_binomial_2(n: usize, p: u64) -> u128 {
    if n < 2 {
        return 0;
    }
    let p = u128::from(p);
    let pn = p.pow(n as u32);
    (pn - 1) * (pn - p) / ((p * p - 1) * (p * p - p))
}

/// Canonical 2×n reduced-echelon bases, one per plane, ordered by pivot
/// pair and then by the free entries.
#[derive(Debug, Clone)]
pub struct PlaneEnumeration {
    field: Field,
    elems: Vec<FieldElement>,
    n: usize,
    pivots: Vec<(usize, usize)>,
    pair: usize,
    /// Base-p digits of the free entries for the current pivot pair.
    digits: Option<Vec<usize>>,
}

impl PlaneEnumeration {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn plane_count(&self) -> u128 {
        gaussian_binomial_2(self.n, self.field.order().expect("finite"))
    }

    fn free_positions(&self, (c1, c2): (usize, usize)) -> Vec<(usize, usize)> {
        let first = (c1 + 1..self.n).filter(|&j| j != c2).map(|j| (0, j));
        let second = (c2 + 1..self.n).map(|j| (1, j));
        first.chain(second).collect()
    }
}

impl Iterator for PlaneEnumeration {
    type Item = SuperEigenvector;

    fn next(&mut self) -> Option<SuperEigenvector> {
        let q = self.elems.len();
        loop {
            let &(c1, c2) = self.pivots.get(self.pair)?;
            let free = self.free_positions((c1, c2));
            let digits = match self.digits.take() {
                None => vec![0; free.len()],
                Some(mut d) => {
                    let mut pos = d.len();
                    let mut carried_out = true;
                    while pos > 0 {
                        pos -= 1;
                        d[pos] += 1;
                        if d[pos] < q {
                            carried_out = false;
                            break;
                        }
                        d[pos] = 0;
                    }
                    if carried_out {
                        self.pair += 1;
                        continue;
                    }
                    d
                }
            };
            let mut rows = [vec![self.field.zero(); self.n], vec![self.field.zero(); self.n]];
            rows[0][c1] = self.field.one();
            rows[1][c2] = self.field.one();
            for (&(r, c), &d) in free.iter().zip(&digits) {
                rows[r][c] = self.elems[d].clone();
            }
            self.digits = Some(digits);
            let [u, v] = rows;
            return Some(SuperEigenvector::new(u, v));
        }
    }
}

fn prime_of(field: Field) -> Result<u64, OracleError> {
    field.order().ok_or(OracleError::NotFinite(field))
}

/// All planes of GF(p)ⁿ, refusing when `pⁿ · count` exceeds `budget`.
pub fn enum_2d_subspaces(field: Field, n: usize, budget: u128) -> Result<PlaneEnumeration, OracleError> {
    let p = prime_of(field)?;
    if n < 2 {
        return Err(OracleError::TooSmall(n));
    }
    let needed = u128::from(p)
        .checked_pow(n as u32)
        .and_then(|pn| pn.checked_mul(gaussian_binomial_2(n, p)))
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(OracleError::BudgetExceeded { p, n, needed, budget });
    }
    let pivots = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    Ok(PlaneEnumeration { field, elems: field.elements().expect("finite"), n, pivots, pair: 0, digits: None })
}

/// An invariant plane found by enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantPlane {
    pub plane: SuperEigenvector,
    pub lambda: SuperEigenvalue,
    /// None of the plane's `p + 1` lines is spanned by an eigenvector.
    pub proper: bool,
}

fn first_nonzero(x: &[FieldElement]) -> usize {
    x.iter().position(|e| !e.is_zero()).expect("basis rows are nonzero")
}

/// Every invariant plane of `A` with its `Λ` in the canonical basis.
pub fn invariant_planes_bruteforce(a: &Mat, budget: u128) -> Result<Vec<InvariantPlane>, OracleError> {
    let field = a.field();
    let planes = enum_2d_subspaces(field, a.rows(), budget)?;
    let elems = field.elements().expect("finite");
    let mut out = Vec::new();
    for plane in planes {
        let (c1, c2) = (first_nonzero(&plane.u), first_nonzero(&plane.v));
        let au = a.apply(&plane.u).expect("square");
        let av = a.apply(&plane.v).expect("square");
        // echelon form: w is in the plane iff w = w[c1]·u + w[c2]·v
        let in_plane = |w: &[FieldElement]| {
            w.iter().enumerate().all(|(i, x)| *x == &(&w[c1] * &plane.u[i]) + &(&w[c2] * &plane.v[i]))
        };
        if !in_plane(&au) || !in_plane(&av) {
            continue;
        }
        let lambda = SuperEigenvalue::new(au[c1].clone(), au[c2].clone(), av[c1].clone(), av[c2].clone())
            .expect("one field");
        let is_eigen = |w: &[FieldElement]| {
            let aw = a.apply(w).expect("square");
            Mat::from_rows(field, vec![w.to_vec(), aw]).expect("equal lengths").rank() < 2
        };
        let lines = std::iter::once(plane.v.clone())
            .chain(elems.iter().map(|x| plane.u.iter().zip(&plane.v).map(|(a, b)| a + &(x * b)).collect()));
        let proper = !lines.into_iter().any(|w: Vec<FieldElement>| is_eigen(&w));
        out.push(InvariantPlane { plane, lambda, proper });
    }
    Ok(out)
}

/// Similarity classes realized on invariant planes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BruteForceClasses {
    pub all: BTreeSet<SimilarityClass>,
    pub proper: BTreeSet<SimilarityClass>,
    pub planes: usize,
    pub proper_planes: usize,
}

impl BruteForceClasses {
    pub fn to_json(&self) -> Value {
        json!({
            "planes": self.planes,
            "proper_planes": self.proper_planes,
            "classes": self.all.iter().map(SimilarityClass::to_json).collect::<Vec<_>>(),
            "proper_classes": self.proper.iter().map(SimilarityClass::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn super_eigenvalues_bruteforce(a: &Mat, budget: u128) -> Result<BruteForceClasses, OracleError> {
    Ok(classes_of(&invariant_planes_bruteforce(a, budget)?))
}

pub fn classes_of(planes: &[InvariantPlane]) -> BruteForceClasses {
    let mut out = BruteForceClasses::default();
    for plane in planes {
        let class = plane.lambda.class();
        out.planes += 1;
        if plane.proper {
            out.proper_planes += 1;
            out.proper.insert(class.clone());
        }
        out.all.insert(class);
    }
    out
}

/// Counters for one claim; `checked = confirmations + violations`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimCounter {
    pub name: &'static str,
    /// Proved statements must show zero violations.
    pub proved: bool,
    pub checked: u64,
    pub confirmations: u64,
    pub violations: u64,
    pub witnesses: Vec<Value>,
}

impl ClaimCounter {
    fn new(name: &'static str, proved: bool) -> Self {
        ClaimCounter { name, proved, checked: 0, confirmations: 0, violations: 0, witnesses: Vec::new() }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checked += 1;
        if ok {
            self.confirmations += 1;
        } else {
            self.violations += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "proved": self.proved,
            "checked": self.checked,
            "confirmations": self.confirmations,
            "violations": self.violations,
            "witnesses": self.witnesses,
        })
    }
}

/// Contingency table of `det_test = 0` against super-eigenvalue status.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DetTestMatrix {
    pub zero_and_super: u64,
    pub zero_not_super: u64,
    pub nonzero_and_super: u64,
    pub nonzero_not_super: u64,
}

impl DetTestMatrix {
    pub fn disagreements(&self) -> u64 {
        self.zero_not_super + self.nonzero_and_super
    }

    pub fn to_json(&self) -> Value {
        json!({
            "zero_and_super": self.zero_and_super,
            "zero_not_super": self.zero_not_super,
            "nonzero_and_super": self.nonzero_and_super,
            "nonzero_not_super": self.nonzero_not_super,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    pub field: Field,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub claims: Vec<ClaimCounter>,
    /// Present when `n` is even.
    pub det_test: Option<DetTestMatrix>,
    /// Claim records for every `(A, Λ)` where `det_test` and super status
    /// disagree, capped like witnesses.
    pub det_test_records: Vec<Value>,
}

impl ClaimReport {
    pub fn claim(&self, name: &str) -> Option<&ClaimCounter> {
        self.claims.iter().find(|c| c.name == name)
    }

    pub fn has_violations(&self) -> bool {
        self.claims.iter().any(|c| c.proved && c.violations > 0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.to_json(),
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "claims": self.claims.iter().map(ClaimCounter::to_json).collect::<Vec<_>>(),
            "det_test": self.det_test.as_ref().map_or(Value::Null, DetTestMatrix::to_json),
            "det_test_records": self.det_test_records,
            "violations": self.has_violations(),
        })
    }
}

pub const PROPERNESS: &str = "properness_criterion";
pub const NECESSITY: &str = "necessity";
pub const REGULAR: &str = "regular_solution_equivalence";
pub const ZERO_SOLUTION: &str = "zero_solution_criterion";
pub const BOUND: &str = "count_bound";
pub const ORACLE_AGREEMENT: &str = "oracle_agreement";
pub const IMPROPER: &str = "improper_classifier";
pub const DET_TEST: &str = "det_test_agreement";

/// The `i`-th matrix of a sweep. Even draws are uniform; odd draws conjugate
/// a block-diagonal matrix by a random invertible matrix. Its blocks are
/// 1×1 entries and triangular 2×2 blocks drawn from a two-element pool, or
/// one fixed random 2×2 block, so repeated eigenvalues, Jordan blocks and
/// repeated quadratic factors all occur.
pub fn sample_matrix(field: Field, n: usize, i: usize, rng: &mut ChaCha8Rng) -> Mat {
    let uniform = |rng: &mut ChaCha8Rng| Mat::from_fn(field, n, n, |_, _| field.random_element(rng, 2));
    if i % 2 == 0 || n < 2 {
        return uniform(rng);
    }
    let pool: Vec<FieldElement> = (0..2).map(|_| field.random_element(rng, 2)).collect();
    let shared = Mat::from_fn(field, 2, 2, |_, _| field.random_element(rng, 2));
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let pick = |rng: &mut ChaCha8Rng| pool[rng.random_range(0..pool.len())].clone();
        if left == 1 || rng.random_bool(0.4) {
            blocks.push(Mat::from_rows(field, vec![vec![pick(rng)]]).expect("1x1"));
            left -= 1;
            continue;
        }
        let block = if rng.random_bool(0.5) {
            shared.clone()
        } else {
            let (x, z) = (pick(rng), pick(rng));
            let y = field.from_i64(i64::from(rng.random_bool(0.5)));
            Mat::from_rows(field, vec![vec![x, y], vec![field.zero(), z]]).expect("2x2")
        };
        blocks.push(block);
        left -= 2;
    }
    let b = Mat::block_diag(field, &blocks);
    loop {
        let p = uniform(rng);
        if let Ok(Some(inv)) = p.inverse() {
            return &(&p * &b) * &inv;
        }
    }
}

/// Runs every claim over `samples` seeded matrices and all `p⁴` matrices `Λ`.
pub fn claim_sweep(field: Field, n: usize, samples: usize, seed: u64, budget: u128) -> Result<ClaimReport, OracleError> {
    prime_of(field)?;
    enum_2d_subspaces(field, n, budget)?;
    let lambdas = SuperEigenvalue::all(field).expect("finite field");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut properness = ClaimCounter::new(PROPERNESS, true);
    let mut necessity = ClaimCounter::new(NECESSITY, true);
    let mut regular = ClaimCounter::new(REGULAR, true);
    let mut zero_solution = ClaimCounter::new(ZERO_SOLUTION, true);
    let mut bound = ClaimCounter::new(BOUND, true);
    let mut agreement = ClaimCounter::new(ORACLE_AGREEMENT, true);
    let mut improper = ClaimCounter::new(IMPROPER, true);
    let mut det_claim = ClaimCounter::new(DET_TEST, false);
    let mut det_matrix = (n % 2 == 0).then(DetTestMatrix::default);
    let mut det_records = Vec::new();

    for i in 0..samples {
        let a = sample_matrix(field, n, i, &mut rng);
        let truth = super_eigenvalues_bruteforce(&a, budget)?;
        let classes = proper_super_eigenvalues(&a, seed)?;
        let algebraic: BTreeSet<SimilarityClass> = classes.iter().map(|c| c.class()).collect();
        bound.record(classes.len() <= n / 2, || json!({ "A": a.rows_json(), "count": classes.len() }));
        agreement.record(algebraic == truth.proper, || {
            json!({
                "A": a.rows_json(),
                "algebraic": algebraic.iter().map(SimilarityClass::to_json).collect::<Vec<_>>(),
                "bruteforce": truth.proper.iter().map(SimilarityClass::to_json).collect::<Vec<_>>(),
            })
        });
        for l in &lambdas {
            let class = l.class();
            let is_super_truth = truth.all.contains(&class);
            let proper_truth = truth.proper.contains(&class);
            let witness = || json!({ "A": a.rows_json(), "lambda": l.to_json() });

            let proper = is_proper_super_eigenvalue(&a, l)?;
            properness.record(proper == proper_truth, witness);

            let accepted = is_super_eigenvalue(&a, l)?;
            improper.record(accepted == is_super_truth, witness);

            let nec = necessary_condition(&a, l)?;
            if accepted || is_super_truth {
                necessity.record(nec.is_zero(), witness);
            }

            let sol = r_eigen_solve(&a, l)?;
            regular.record(sol.regular == is_super_truth, witness);
            zero_solution.record((sol.dim() > 0) == nec.is_zero(), witness);

            if let Some(m) = det_matrix.as_mut() {
                let dt = det_test(&a, l)?;
                match (dt.is_zero(), is_super_truth) {
                    (true, true) => m.zero_and_super += 1,
                    (true, false) => m.zero_not_super += 1,
                    (false, true) => m.nonzero_and_super += 1,
                    (false, false) => m.nonzero_not_super += 1,
                }
                let agrees = dt.is_zero() == is_super_truth;
                if !agrees && det_records.len() < MAX_WITNESSES {
                    det_records.push(json!({
                        "A": a.rows_json(),
                        "lambda": l.to_json(),
                        "det_test": dt.to_string(),
                        "regular": sol.regular,
                        "irregular_only": sol.irregular_only(),
                        "super": is_super_truth,
                    }));
                }
                det_claim.record(agrees, witness);
            }
        }
    }
    let mut claims = vec![properness, necessity, regular, zero_solution, bound, agreement, improper];
    if det_matrix.is_some() {
        claims.push(det_claim);
    }
    Ok(ClaimReport { field, n, samples, seed, claims, det_test: det_matrix, det_test_records: det_records })
}

/// Class tags of the brute-force classes, for quick inspection.
pub fn tags(classes: &BTreeSet<SimilarityClass>) -> Vec<ClassTag> {
    classes.iter().map(|c| c.tag).collect()
}
