// SPDX-License-Identifier: Apache-2.0

//! Finite-dimensional averaging algebras with explicit structure constants.
//!
//! Elements are coordinate vectors over the rationals. `mul[i][j][k]` is the
//! coefficient of `e_k` in `e_i e_j`; row `op[i]` is the image `P(e_i)`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::AveragingAlgebra;

pub type Q = BigRational;
pub type Vector = Vec<Q>;
pub type Matrix = Vec<Vec<Q>>;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element is not central: fails to commute with basis element {0}")]
    NotCentral(usize),
    #[error("matrix {index} is not an algebra automorphism")]
    NotAutomorphism { index: usize },
    #[error("the given automorphisms are not closed under composition")]
    NotAGroup,
    #[error("grading is violated by basis pair ({0}, {1})")]
    NotGraded(usize, usize),
    #[error("operator is not a derivation on basis pair ({0}, {1})")]
    NotDerivation(usize, usize),
    #[error("derivation does not square to zero")]
    NotSquareZero,
    #[error("operator fails the averaging identities on basis pair ({}, {})", .0.i, .0.j)]
    NotAveraging(Counterexample),
    #[error("json: {0}")]
    Json(String),
}

/// A finite-dimensional associative algebra with a linear operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    basis: Vec<String>,
    mul: Vec<Vec<Vector>>,
    op: Matrix,
}

/// Multiplication table without an operator; input to [`build_instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseAlgebra {
    pub basis: Vec<String>,
    pub mul: Vec<Vec<Vector>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceKind {
    /// Sum over a finite group of algebra automorphisms (rows are images).
    GroupAverage { algebra: BaseAlgebra, action: Vec<Matrix> },
    /// Multiplication by a central element.
    CentralMultiplier { algebra: BaseAlgebra, a: Vector },
    /// Projection onto the even part; `parity[i]` is the degree of `e_i`.
    SuperProjection { algebra: BaseAlgebra, parity: Vec<u8> },
    /// A derivation with `d² = 0` (rows are images).
    SquareZeroDerivation { algebra: BaseAlgebra, d: Matrix },
}

/// The basis pair on which an identity fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub i: usize,
    pub j: usize,
    pub identity: &'static str,
}

impl BaseAlgebra {
    pub fn new(basis: Vec<String>, mul: Vec<Vec<Vector>>) -> Result<Self, InstanceError> {
        let n = basis.len();
        if n == 0 {
            return Err(InstanceError::Shape("dimension must be positive".into()));
        }
        if mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(InstanceError::Shape(format!("mul must be {n}x{n}x{n}")));
        }
        let alg = BaseAlgebra { basis, mul };
        alg.check_associative()?;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn check_associative(&self) -> Result<(), InstanceError> {
        let n = self.dim();
        let e = |i| unit_vector(n, i);
        for i in 0..n {
            for j in 0..n {
                let ij = mul_with(&self.mul, &e(i), &e(j));
                for k in 0..n {
                    let l = mul_with(&self.mul, &ij, &e(k));
                    let r = mul_with(&self.mul, &e(i), &mul_with(&self.mul, &e(j), &e(k)));
                    if l != r {
                        return Err(InstanceError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vector {
        mul_with(&self.mul, a, b)
    }

    /// The truncated polynomial algebra `k[y]/(y^n)` with basis `1, y, …, y^(n-1)`.
    pub fn truncated_polynomial(n: usize) -> Self {
        let basis = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "y".to_string(),
                _ => format!("y{i}"),
            })
            .collect();
        let mut mul = vec![vec![vec![Q::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    mul[i][j][i + j] = Q::one();
                }
            }
        }
        BaseAlgebra { basis, mul }
    }

    /// The algebra of functions on `Z/n` with pointwise product; `e_i` is
    /// the indicator of `i`.
    pub fn cyclic_functions(n: usize) -> Self {
        let basis = (0..n).map(|i| format!("d{i}")).collect();
        let mut mul = vec![vec![vec![Q::zero(); n]; n]; n];
        for (i, row) in mul.iter_mut().enumerate() {
            row[i][i] = Q::one();
        }
        BaseAlgebra { basis, mul }
    }

    /// The exterior algebra on two generators, basis `1, a, b, ab`.
    pub fn exterior2() -> Self {
        let basis = ["1", "a", "b", "ab"].map(String::from).to_vec();
        let mut mul = vec![vec![vec![Q::zero(); 4]; 4]; 4];
        for i in 0..4 {
            mul[0][i][i] = Q::one();
            mul[i][0][i] = Q::one();
        }
        mul[1][2][3] = Q::one();
        mul[2][1][3] = q(-1);
        BaseAlgebra { basis, mul }
    }

    /// 2x2 matrices over the rationals, basis `E11, E12, E21, E22`.
    pub fn matrices2() -> Self {
        let basis = ["E11", "E12", "E21", "E22"].map(String::from).to_vec();
        let idx = |r: usize, c: usize| 2 * r + c;
        let mut mul = vec![vec![vec![Q::zero(); 4]; 4]; 4];
        for (a, b, c, d) in index_quadruples() {
            if b == c {
                mul[idx(a, b)][idx(c, d)][idx(a, d)] = Q::one();
            }
        }
        BaseAlgebra { basis, mul }
    }
}

fn index_quadruples() -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..16).map(|n| (n >> 3 & 1, n >> 2 & 1, n >> 1 & 1, n & 1))
}

fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

fn mul_with(table: &[Vec<Vector>], a: &[Q], b: &[Q]) -> Vector {
    let n = a.len();
    let mut out = vec![Q::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let c = ai * bj;
            for (k, t) in table[i][j].iter().enumerate() {
                if !t.is_zero() {
                    out[k] += &c * t;
                }
            }
        }
    }
    out
}

/// `v ↦ v·M` with rows of `M` the images of basis vectors.
fn apply_matrix(m: &Matrix, v: &[Q]) -> Vector {
    let n = m.first().map_or(0, Vec::len);
    let mut out = vec![Q::zero(); n];
    for (vi, row) in v.iter().zip(m) {
        if vi.is_zero() {
            continue;
        }
        for (o, r) in out.iter_mut().zip(row) {
            *o += vi * r;
        }
    }
    out
}

/// Composition "first `a`, then `b`" in row convention.
fn compose(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().map(|row| apply_matrix(b, row)).collect()
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit_vector(n, i)).collect()
}

fn add_vec(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_vec(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Rank of a list of row vectors by exact Gaussian elimination.
pub fn rank(rows: &[Vector]) -> usize {
    let mut m: Vec<Vector> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                let pr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

impl FiniteAlgebra {
    /// Builds an algebra from a table and an operator matrix. Associativity
    /// is checked; the averaging identities are not (see [`check_averaging`]).
    pub fn new(basis: Vec<String>, mul: Vec<Vec<Vector>>, op: Matrix) -> Result<Self, InstanceError> {
        let base = BaseAlgebra::new(basis, mul)?;
        Self::with_operator(base, op)
    }

    pub fn with_operator(base: BaseAlgebra, op: Matrix) -> Result<Self, InstanceError> {
        let n = base.dim();
        if op.len() != n || op.iter().any(|r| r.len() != n) {
            return Err(InstanceError::Shape(format!("op must be {n}x{n}")));
        }
        Ok(FiniteAlgebra {
            basis: base.basis,
            mul: base.mul,
            op,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn operator(&self) -> &Matrix {
        &self.op
    }

    pub fn table(&self) -> &[Vec<Vector>] {
        &self.mul
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.dim(), i)
    }

    pub fn product(&self, a: &[Q], b: &[Q]) -> Vector {
        mul_with(&self.mul, a, b)
    }

    pub fn apply(&self, a: &[Q]) -> Vector {
        apply_matrix(&self.op, a)
    }

    pub fn is_idempotent(&self) -> bool {
        compose(&self.op, &self.op) == self.op
    }

    /// The two-sided unit, if there is one.
    pub fn unit(&self) -> Option<Vector> {
        // Solve Σ_i u_i e_i e_j = e_j = Σ_i u_i e_j e_i for all j.
        let n = self.dim();
        let mut rows: Vec<Vector> = Vec::new();
        for j in 0..n {
            for k in 0..n {
                let mut left = Vec::with_capacity(n + 1);
                let mut right = Vec::with_capacity(n + 1);
                for i in 0..n {
                    left.push(self.mul[i][j][k].clone());
                    right.push(self.mul[j][i][k].clone());
                }
                let rhs = if j == k { Q::one() } else { Q::zero() };
                left.push(rhs.clone());
                right.push(rhs);
                rows.push(left);
                rows.push(right);
            }
        }
        solve_augmented(rows, n)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let raw = JsonInstance {
            dim: self.dim(),
            basis: self.basis.clone(),
            mul: self.mul.iter().map(|r| r.iter().map(|v| v.iter().map(json_rational).collect()).collect()).collect(),
            op: self.op.iter().map(|r| r.iter().map(json_rational).collect()).collect(),
        };
        serde_json::to_value(raw).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, InstanceError> {
        let raw: JsonInstance = serde_json::from_value(value.clone()).map_err(|e| InstanceError::Json(e.to_string()))?;
        if raw.basis.len() != raw.dim {
            return Err(InstanceError::Shape(format!("basis has {} labels, dim is {}", raw.basis.len(), raw.dim)));
        }
        let parse = |s: &JsonRational| s.to_rational();
        let mul = raw
            .mul
            .iter()
            .map(|r| r.iter().map(|v| v.iter().map(parse).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let op = raw
            .op
            .iter()
            .map(|r| r.iter().map(parse).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        FiniteAlgebra::new(raw.basis, mul, op)
    }
}

// Solves the augmented system (last column is the right-hand side); returns
// some solution if consistent.
fn solve_augmented(mut m: Vec<Vector>, n: usize) -> Option<Vector> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &pivot;
        }
        let pr = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut sol = vec![Q::zero(); n];
    for (row, &c) in m.iter().zip(&pivots) {
        sol[c] = row[n].clone();
    }
    Some(sol)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonRational {
    Int(i64),
    Text(String),
}

// Integers are written as JSON numbers when they fit, other values as "p/q".
fn json_rational(c: &Q) -> JsonRational {
    use num_traits::ToPrimitive;
    match c.is_integer().then(|| c.to_integer().to_i64()).flatten() {
        Some(n) => JsonRational::Int(n),
        None => JsonRational::Text(c.to_string()),
    }
}

impl JsonRational {
    fn to_rational(&self) -> Result<Q, InstanceError> {
        match self {
            JsonRational::Int(n) => Ok(q(*n)),
            JsonRational::Text(s) => crate::algebra::parse_rational(s).map_err(|e| InstanceError::Json(e.to_string())),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonInstance {
    dim: usize,
    basis: Vec<String>,
    mul: Vec<Vec<Vec<JsonRational>>>,
    op: Vec<Vec<JsonRational>>,
}

impl AveragingAlgebra for FiniteAlgebra {
    type Elem = Vector;

    fn zero(&self) -> Vector {
        vec![Q::zero(); self.dim()]
    }
    fn add(&self, a: &Vector, b: &Vector) -> Vector {
        add_vec(a, b)
    }
    fn scale(&self, c: &Q, a: &Vector) -> Vector {
        a.iter().map(|x| x * c).collect()
    }
    fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.product(a, b)
    }
    fn op(&self, a: &Vector) -> Vector {
        self.apply(a)
    }
}

/// Checks `P(x)P(y) = P(xP(y)) = P(P(x)y)` on all basis pairs.
pub fn check_averaging(alg: &FiniteAlgebra) -> Result<(), Counterexample> {
    let n = alg.dim();
    let p: Vec<Vector> = (0..n).map(|i| alg.apply(&alg.basis_vector(i))).collect();
    for i in 0..n {
        let x = alg.basis_vector(i);
        for j in 0..n {
            let y = alg.basis_vector(j);
            let lhs = alg.product(&p[i], &p[j]);
            if lhs != alg.apply(&alg.product(&x, &p[j])) {
                return Err(Counterexample {
                    i,
                    j,
                    identity: "P(x)P(y) = P(xP(y))",
                });
            }
            if lhs != alg.apply(&alg.product(&p[i], &y)) {
                return Err(Counterexample {
                    i,
                    j,
                    identity: "P(x)P(y) = P(P(x)y)",
                });
            }
        }
    }
    Ok(())
}

/// Checks `P(fg) = P(f)P(g) + P[(f - Pf)(g - Pg)]` on all basis pairs.
pub fn check_reynolds(alg: &FiniteAlgebra) -> Result<(), Counterexample> {
    let n = alg.dim();
    for i in 0..n {
        let f = alg.basis_vector(i);
        let pf = alg.apply(&f);
        for j in 0..n {
            let g = alg.basis_vector(j);
            let pg = alg.apply(&g);
            let lhs = alg.apply(&alg.product(&f, &g));
            let rhs = add_vec(
                &alg.product(&pf, &pg),
                &alg.apply(&alg.product(&sub_vec(&f, &pf), &sub_vec(&g, &pg))),
            );
            if lhs != rhs {
                return Err(Counterexample {
                    i,
                    j,
                    identity: "P(fg) = P(f)P(g) + P[(f-Pf)(g-Pg)]",
                });
            }
        }
    }
    Ok(())
}

/// Builds an operator from one of the standard constructions, checking the
/// construction's hypotheses and then the averaging identities.
pub fn build_instance(kind: InstanceKind) -> Result<FiniteAlgebra, InstanceError> {
    let alg = match kind {
        InstanceKind::GroupAverage { algebra, action } => {
            let n = algebra.dim();
            for (index, g) in action.iter().enumerate() {
                if g.len() != n || g.iter().any(|r| r.len() != n) {
                    return Err(InstanceError::Shape(format!("action matrix {index} must be {n}x{n}")));
                }
                if rank(g) != n || !is_multiplicative(&algebra, g) {
                    return Err(InstanceError::NotAutomorphism { index });
                }
            }
            if !action.contains(&identity(n))
                || action.iter().any(|a| action.iter().any(|b| !action.contains(&compose(a, b))))
            {
                return Err(InstanceError::NotAGroup);
            }
            let mut op = vec![vec![Q::zero(); n]; n];
            for g in &action {
                for (o, r) in op.iter_mut().zip(g) {
                    *o = add_vec(o, r);
                }
            }
            FiniteAlgebra::with_operator(algebra, op)?
        }
        InstanceKind::CentralMultiplier { algebra, a } => {
            let n = algebra.dim();
            if a.len() != n {
                return Err(InstanceError::Shape(format!("central element must have {n} coordinates")));
            }
            for i in 0..n {
                let e = unit_vector(n, i);
                if algebra.mul(&a, &e) != algebra.mul(&e, &a) {
                    return Err(InstanceError::NotCentral(i));
                }
            }
            let op = (0..n).map(|i| algebra.mul(&a, &unit_vector(n, i))).collect();
            FiniteAlgebra::with_operator(algebra, op)?
        }
        InstanceKind::SuperProjection { algebra, parity } => {
            let n = algebra.dim();
            if parity.len() != n || parity.iter().any(|&p| p > 1) {
                return Err(InstanceError::Shape(format!("parity must be {n} entries in {{0, 1}}")));
            }
            for i in 0..n {
                for j in 0..n {
                    let deg = (parity[i] + parity[j]) % 2;
                    let prod = &algebra.mul[i][j];
                    if prod.iter().zip(&parity).any(|(c, &p)| !c.is_zero() && p != deg) {
                        return Err(InstanceError::NotGraded(i, j));
                    }
                }
            }
            let op = (0..n)
                .map(|i| {
                    if parity[i] == 0 {
                        unit_vector(n, i)
                    } else {
                        vec![Q::zero(); n]
                    }
                })
                .collect();
            FiniteAlgebra::with_operator(algebra, op)?
        }
        InstanceKind::SquareZeroDerivation { algebra, d } => {
            let n = algebra.dim();
            if d.len() != n || d.iter().any(|r| r.len() != n) {
                return Err(InstanceError::Shape(format!("derivation must be {n}x{n}")));
            }
            for i in 0..n {
                for j in 0..n {
                    let (x, y) = (unit_vector(n, i), unit_vector(n, j));
                    let lhs = apply_matrix(&d, &algebra.mul(&x, &y));
                    let rhs = add_vec(&algebra.mul(&apply_matrix(&d, &x), &y), &algebra.mul(&x, &apply_matrix(&d, &y)));
                    if lhs != rhs {
                        return Err(InstanceError::NotDerivation(i, j));
                    }
                }
            }
            if compose(&d, &d).iter().flatten().any(|c| !c.is_zero()) {
                return Err(InstanceError::NotSquareZero);
            }
            FiniteAlgebra::with_operator(algebra, d)?
        }
    };
    check_averaging(&alg).map_err(InstanceError::NotAveraging)?;
    Ok(alg)
}

fn is_multiplicative(alg: &BaseAlgebra, g: &Matrix) -> bool {
    let n = alg.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let (x, y) = (unit_vector(n, i), unit_vector(n, j));
            apply_matrix(g, &alg.mul(&x, &y)) == alg.mul(&apply_matrix(g, &x), &apply_matrix(g, &y))
        })
    })
}

/// Translation by `s` on the functions on `Z/n`.
pub fn cyclic_translation(n: usize, s: usize) -> Matrix {
    (0..n).map(|i| unit_vector(n, (i + s) % n)).collect()
}

/// The standard fixtures, one or more per construction, with names.
pub fn fixtures() -> Vec<(&'static str, FiniteAlgebra)> {
    let mut out = Vec::new();
    let dual = BaseAlgebra::truncated_polynomial(2);
    out.push((
        "central-multiplier k[y]/(y^2), a = y",
        build_instance(InstanceKind::CentralMultiplier {
            algebra: dual.clone(),
            a: vec![q(0), q(1)],
        })
        .expect("fixture"),
    ));
    out.push((
        "central-multiplier k[y]/(y^3), a = 2 - y^2",
        build_instance(InstanceKind::CentralMultiplier {
            algebra: BaseAlgebra::truncated_polynomial(3),
            a: vec![q(2), q(0), q(-1)],
        })
        .expect("fixture"),
    ));
    for n in [2, 3] {
        out.push((
            if n == 2 { "group-average Z/2 on k^(Z/2)" } else { "group-average Z/3 on k^(Z/3)" },
            build_instance(InstanceKind::GroupAverage {
                algebra: BaseAlgebra::cyclic_functions(n),
                action: (0..n).map(|s| cyclic_translation(n, s)).collect(),
            })
            .expect("fixture"),
        ));
    }
    out.push((
        "group-average Z/2 swapping a, b on the exterior algebra",
        build_instance(InstanceKind::GroupAverage {
            algebra: BaseAlgebra::exterior2(),
            action: vec![
                identity(4),
                vec![
                    vec![q(1), q(0), q(0), q(0)],
                    vec![q(0), q(0), q(1), q(0)],
                    vec![q(0), q(1), q(0), q(0)],
                    vec![q(0), q(0), q(0), q(-1)],
                ],
            ],
        })
        .expect("fixture"),
    ));
    out.push((
        "super-projection k[y]/(y^2), y odd",
        build_instance(InstanceKind::SuperProjection {
            algebra: dual,
            parity: vec![0, 1],
        })
        .expect("fixture"),
    ));
    out.push((
        "super-projection M2, off-diagonal odd",
        build_instance(InstanceKind::SuperProjection {
            algebra: BaseAlgebra::matrices2(),
            parity: vec![0, 1, 1, 0],
        })
        .expect("fixture"),
    ));
    out.push((
        "square-zero derivation k[y]/(y^3), y -> y^2",
        build_instance(InstanceKind::SquareZeroDerivation {
            algebra: BaseAlgebra::truncated_polynomial(3),
            d: vec![vec![q(0), q(0), q(0)], vec![q(0), q(0), q(1)], vec![q(0), q(0), q(0)]],
        })
        .expect("fixture"),
    ));
    out.push((
        "square-zero derivation exterior algebra, a -> b",
        build_instance(InstanceKind::SquareZeroDerivation {
            algebra: BaseAlgebra::exterior2(),
            d: vec![
                vec![q(0), q(0), q(0), q(0)],
                vec![q(0), q(0), q(1), q(0)],
                vec![q(0), q(0), q(0), q(0)],
                vec![q(0), q(0), q(0), q(0)],
            ],
        })
        .expect("fixture"),
    ));
    out
}
