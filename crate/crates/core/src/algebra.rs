//! Finite-dimensional unital associative algebras given by structure
//! constants, plus the builtin families used as a test corpus.
//!
//! Basis elements are addressed by index; labels are only for display.
//! Elements are coordinate vectors of length `dim`.

use std::fmt;

use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::linalg::{kernel, Matrix, Subspace};
use crate::report::{Check, Report, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    /// `c[(i * n + j) * n + k]`: coefficient of `e_k` in `e_i e_j`.
    constants: Vec<Scalar>,
    unit: Vec<Scalar>,
    lmul: Vec<Matrix>,
    rmul: Vec<Matrix>,
}

/// Parametrised families of algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// `k[x]/(x^m)`, basis `1, x, ..., x^(m-1)`.
    TruncatedPolynomial { m: usize },
    /// `M_k(k)`, basis `E_ij` in row-major order.
    MatrixAlgebra { k: usize },
    /// Group algebra of the cyclic group of order `m`.
    CyclicGroup { m: usize },
    /// `k<x,y>/(xy - q yx, x^N, y^N)`, basis `x^a y^b` at index `b*N + a`.
    QuantumPlane { q: Scalar, n: usize },
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::TruncatedPolynomial { m } => write!(f, "truncated_polynomial({m})"),
            Builtin::MatrixAlgebra { k } => write!(f, "matrix_algebra({k})"),
            Builtin::CyclicGroup { m } => write!(f, "cyclic_group_algebra({m})"),
            Builtin::QuantumPlane { q, n } => write!(f, "quantum_plane({q}, {n})"),
        }
    }
}

impl Algebra {
    /// Builds an algebra from dense structure constants (`n^3` entries).
    ///
    /// Only shapes are checked here; use [`Algebra::validate`] for the axioms.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        constants: Vec<Scalar>,
        unit: Vec<Scalar>,
    ) -> Result<Self, Error> {
        let n = labels.len();
        if constants.len() != n * n * n {
            return Err(Error::DimensionMismatch {
                context: "structure constants".into(),
                expected: n * n * n,
                found: constants.len(),
            });
        }
        if unit.len() != n {
            return Err(Error::DimensionMismatch {
                context: "unit".into(),
                expected: n,
                found: unit.len(),
            });
        }
        if constants.iter().chain(&unit).any(|s| s.field() != field) {
            return Err(Error::InvalidAlgebra("scalars from a different field".into()));
        }
        let at = |i: usize, j: usize, k: usize| &constants[(i * n + j) * n + k];
        // (L_i)_{k,j} = c[i][j][k],  (R_i)_{k,j} = c[j][i][k]
        let lmul = (0..n)
            .map(|i| Matrix::from_fn(field, n, n, |k, j| at(i, j, k).clone()))
            .collect();
        let rmul = (0..n)
            .map(|i| Matrix::from_fn(field, n, n, |k, j| at(j, i, k).clone()))
            .collect();
        Ok(Algebra {
            field,
            labels,
            constants,
            unit,
            lmul,
            rmul,
        })
    }

    /// Builds from the nonzero entries `(i, j, k, c)`; the rest are zero.
    pub fn from_sparse(
        field: Field,
        labels: Vec<String>,
        unit: Vec<Scalar>,
        entries: &[(usize, usize, usize, Scalar)],
    ) -> Result<Self, Error> {
        let n = labels.len();
        let mut constants = vec![field.zero(); n * n * n];
        let mut seen = vec![false; n * n * n];
        for (i, j, k, c) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= n || j >= n || k >= n {
                return Err(Error::InvalidAlgebra(format!(
                    "structure triple ({i}, {j}, {k}) out of range for dimension {n}"
                )));
            }
            let idx = (i * n + j) * n + k;
            if seen[idx] {
                return Err(Error::InvalidAlgebra(format!(
                    "duplicate structure triple ({i}, {j}, {k})"
                )));
            }
            seen[idx] = true;
            constants[idx] = c.clone();
        }
        Algebra::new(field, labels, constants, unit)
    }

    pub fn builtin(field: Field, kind: &Builtin) -> Result<Self, Error> {
        match kind {
            Builtin::TruncatedPolynomial { m } => Self::truncated_polynomial(field, *m),
            Builtin::MatrixAlgebra { k } => Self::matrix_algebra(field, *k),
            Builtin::CyclicGroup { m } => Self::cyclic_group_algebra(field, *m),
            Builtin::QuantumPlane { q, n } => Self::quantum_plane(field, q, *n),
        }
    }

    pub fn truncated_polynomial(field: Field, m: usize) -> Result<Self, Error> {
        if m < 1 {
            return Err(Error::InvalidParameter("truncated_polynomial needs m >= 1".into()));
        }
        let labels = (0..m).map(|a| monomial("x", a)).collect();
        let mut entries = Vec::new();
        for i in 0..m {
            for j in 0..m - i {
                entries.push((i, j, i + j, field.one()));
            }
        }
        Self::from_sparse(field, labels, basis_vector(field, m, 0), &entries)
    }

    pub fn matrix_algebra(field: Field, k: usize) -> Result<Self, Error> {
        if k < 1 {
            return Err(Error::InvalidParameter("matrix_algebra needs k >= 1".into()));
        }
        let n = k * k;
        let labels = (0..n)
            .map(|e| format!("E{}{}", e / k + 1, e % k + 1))
            .collect();
        // E_ab E_cd = [b = c] E_ad
        let mut entries = Vec::new();
        for a in 0..k {
            for b in 0..k {
                for d in 0..k {
                    entries.push((a * k + b, b * k + d, a * k + d, field.one()));
                }
            }
        }
        let mut unit = vec![field.zero(); n];
        for a in 0..k {
            unit[a * k + a] = field.one();
        }
        Self::from_sparse(field, labels, unit, &entries)
    }

    pub fn cyclic_group_algebra(field: Field, m: usize) -> Result<Self, Error> {
        if m < 1 {
            return Err(Error::InvalidParameter("cyclic_group_algebra needs m >= 1".into()));
        }
        let labels = (0..m).map(|a| monomial("g", a)).collect();
        let mut entries = Vec::new();
        for i in 0..m {
            for j in 0..m {
                entries.push((i, j, (i + j) % m, field.one()));
            }
        }
        Self::from_sparse(field, labels, basis_vector(field, m, 0), &entries)
    }

    pub fn quantum_plane(field: Field, q: &Scalar, n: usize) -> Result<Self, Error> {
        if n < 1 {
            return Err(Error::InvalidParameter("quantum_plane needs N >= 1".into()));
        }
        if q.field() != field {
            return Err(Error::InvalidParameter("q is not an element of the field".into()));
        }
        let q_inv = q
            .inv()
            .ok_or_else(|| Error::InvalidParameter("quantum_plane needs q != 0".into()))?;
        let dim = n * n;
        let index = |a: usize, b: usize| b * n + a;
        let labels = (0..dim)
            .map(|e| {
                let (a, b) = (e % n, e / n);
                match (a, b) {
                    (0, 0) => "1".to_string(),
                    (_, 0) => monomial("x", a),
                    (0, _) => monomial("y", b),
                    _ => format!("{}{}", monomial("x", a), monomial("y", b)),
                }
            })
            .collect();
        // (x^a y^b)(x^c y^d) = q^(-bc) x^(a+c) y^(b+d), since yx = q^-1 xy
        let mut entries = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n - a {
                    for d in 0..n - b {
                        let mut coeff = field.one();
                        for _ in 0..b * c {
                            coeff = &coeff * &q_inv;
                        }
                        entries.push((index(a, b), index(c, d), index(a + c, b + d), coeff));
                    }
                }
            }
        }
        Self::from_sparse(field, labels, basis_vector(field, dim, 0), &entries)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.dim();
        &self.constants[(i * n + j) * n + k]
    }

    /// Nonzero structure constants in index order.
    pub fn sparse_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    /// The basis element `e_i` as a coordinate vector.
    pub fn basis_element(&self, i: usize) -> Vec<Scalar> {
        basis_vector(self.field, self.dim(), i)
    }

    pub fn zero_element(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.lmul[i].column(j)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.left_mul(a).apply(b)
    }

    /// Matrix of `s -> e_i s`.
    pub fn left_mul_basis(&self, i: usize) -> &Matrix {
        &self.lmul[i]
    }

    /// Matrix of `s -> s e_i`.
    pub fn right_mul_basis(&self, i: usize) -> &Matrix {
        &self.rmul[i]
    }

    /// Matrix of `s -> r s`.
    pub fn left_mul(&self, r: &[Scalar]) -> Matrix {
        combine(self.field, self.dim(), &self.lmul, r)
    }

    /// Matrix of `s -> s r`.
    pub fn right_mul(&self, r: &[Scalar]) -> Matrix {
        combine(self.field, self.dim(), &self.rmul, r)
    }

    /// Checks associativity on all basis triples and the two unit laws.
    pub fn validate(&self) -> Report {
        let n = self.dim();
        let mut assoc = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let left = self.rmul[k].apply(&ij);
                    let right = self.lmul[i].apply(&self.basis_product(j, k));
                    for l in 0..n {
                        if left[l] != right[l] {
                            assoc.push(Violation {
                                at: vec![i, j, k, l],
                                message: format!(
                                    "({a}*{b})*{c} != {a}*({b}*{c}) in coordinate {d}: {} vs {}",
                                    left[l],
                                    right[l],
                                    a = self.labels[i],
                                    b = self.labels[j],
                                    c = self.labels[k],
                                    d = self.labels[l],
                                ),
                            });
                        }
                    }
                }
            }
        }
        let mut unit = Vec::new();
        let lu = self.left_mul(&self.unit);
        let ru = self.right_mul(&self.unit);
        for i in 0..n {
            let e = self.basis_element(i);
            if lu.apply(&e) != e {
                unit.push(Violation {
                    at: vec![i],
                    message: format!("1*{} != {}", self.labels[i], self.labels[i]),
                });
            }
            if ru.apply(&e) != e {
                unit.push(Violation {
                    at: vec![i],
                    message: format!("{}*1 != {}", self.labels[i], self.labels[i]),
                });
            }
        }
        let mut report = Report::new();
        report.push(Check::from_violations("associativity", assoc));
        report.push(Check::from_violations("unit", unit));
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }

    /// `mu: R⊗R -> R`, with `e_i ⊗ e_j` at column `i*n + j`.
    pub fn mu_map(&self) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(self.field, n, n * n, |k, c| self.constant(c / n, c % n, k).clone())
    }

    pub fn opposite(&self) -> Algebra {
        let n = self.dim();
        let mut constants = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    constants.push(self.constant(j, i, k).clone());
                }
            }
        }
        Algebra::new(self.field, self.labels.clone(), constants, self.unit.clone())
            .expect("opposite preserves shapes")
    }

    /// `{z : z e_i = e_i z for all i}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let mut eqs = Matrix::zeros(self.field, 0, n);
        for i in 0..n {
            eqs = eqs.vstack(&self.rmul[i].sub(&self.lmul[i]));
        }
        kernel(&eqs)
    }

    pub fn is_commutative(&self) -> bool {
        self.center().is_full()
    }

    /// `span{1}`; quotienting by it gives `R̄`.
    pub fn unit_subspace(&self) -> Subspace {
        Subspace::span(self.field, self.dim(), vec![self.unit.clone()])
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "algebra of dimension {} over {} with basis [{}]",
            self.dim(),
            self.field,
            self.labels.join(", ")
        )
    }
}

fn monomial(var: &str, a: usize) -> String {
    match a {
        0 => "1".to_string(),
        1 => var.to_string(),
        _ => format!("{var}^{a}"),
    }
}

pub(crate) fn basis_vector(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// `sum_i r_i M_i`.
pub(crate) fn combine(field: Field, size: usize, mats: &[Matrix], r: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, size, size);
    for (m, c) in mats.iter().zip(r) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn dual_numbers() {
        let a = Algebra::truncated_polynomial(q(), 2).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.labels(), ["1", "x"]);
        assert!(a.basis_product(1, 1).iter().all(Scalar::is_zero));
        assert!(a.validate().passed());
        let mu = a.mu_map();
        // mu(1⊗x) = x, mu(x⊗x) = 0, mu(1⊗1) = 1
        assert_eq!(mu.column(1), a.basis_element(1));
        assert!(mu.column(3).iter().all(Scalar::is_zero));
        assert_eq!(mu.column(0), a.unit().to_vec());
    }

    #[test]
    fn componentwise_product_is_valid() {
        // k^2 with idempotents f0, f1 and unit f0 + f1
        let a = Algebra::from_sparse(
            q(),
            vec!["f0".into(), "f1".into()],
            vec![q().one(), q().one()],
            &[(0, 0, 0, q().one()), (1, 1, 1, q().one())],
        )
        .unwrap();
        assert!(a.validate().passed());
        assert!(a.is_commutative());
    }

    #[test]
    fn broken_associativity_is_located() {
        // basis 1, x, y with x*x = y, x*y = y, y*x = 0
        let one = q().one();
        let mut entries = vec![];
        for i in 0..3 {
            entries.push((0, i, i, one.clone()));
            if i > 0 {
                entries.push((i, 0, i, one.clone()));
            }
        }
        entries.push((1, 1, 2, one.clone()));
        entries.push((1, 2, 2, one.clone()));
        let a = Algebra::from_sparse(
            q(),
            vec!["1".into(), "x".into(), "y".into()],
            basis_vector(q(), 3, 0),
            &entries,
        )
        .unwrap();
        let report = a.validate();
        assert!(!report.passed());
        let assoc = report.check("associativity").unwrap();
        assert!(assoc.violations.iter().any(|v| v.at[..3] == [1, 1, 1]));
        assert!(report.passed_check("unit"));
    }

    #[test]
    fn idempotent_x_is_still_associative() {
        // x*x = x on {1, x}: this is k x k, so associativity holds
        let one = q().one();
        let a = Algebra::from_sparse(
            q(),
            vec!["1".into(), "x".into()],
            basis_vector(q(), 2, 0),
            &[
                (0, 0, 0, one.clone()),
                (0, 1, 1, one.clone()),
                (1, 0, 1, one.clone()),
                (1, 1, 1, one.clone()),
            ],
        )
        .unwrap();
        assert!(a.validate().passed());
    }

    #[test]
    fn duplicate_triple_rejected() {
        let one = q().one();
        let err = Algebra::from_sparse(
            q(),
            vec!["1".into()],
            vec![one.clone()],
            &[(0, 0, 0, one.clone()), (0, 0, 0, one.clone())],
        )
        .unwrap_err();
        assert!(err.to_string().contains("(0, 0, 0)"));
    }

    #[test]
    fn matrix_units() {
        let a = Algebra::matrix_algebra(q(), 2).unwrap();
        assert_eq!(a.dim(), 4);
        // E11 E12 = E12
        assert_eq!(a.basis_product(0, 1), a.basis_element(1));
        assert!(a.validate().passed());
        assert_eq!(a.mu_map().rank(), 4);
        let z = a.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(a.unit()));
    }

    #[test]
    fn quantum_plane_minus_one() {
        let a = Algebra::quantum_plane(q(), &q().from_i64(-1), 2).unwrap();
        assert_eq!(a.labels(), ["1", "x", "y", "xy"]);
        assert!(a.validate().passed());
        // yx = -xy, x^2 = y^2 = 0
        let neg_xy: Vec<Scalar> = a.basis_element(3).iter().map(|s| -s).collect();
        assert_eq!(a.basis_product(2, 1), neg_xy);
        assert!(a.basis_product(1, 1).iter().all(Scalar::is_zero));
        assert!(a.basis_product(2, 2).iter().all(Scalar::is_zero));
        assert!(!a.is_commutative());
        let z = a.center();
        assert!(z.contains(&a.basis_element(0)));
        assert!(z.contains(&a.basis_element(3)));
    }

    #[test]
    fn builtin_parameter_errors() {
        assert!(Algebra::truncated_polynomial(q(), 0).is_err());
        assert!(Algebra::matrix_algebra(q(), 0).is_err());
        assert!(Algebra::cyclic_group_algebra(q(), 0).is_err());
        assert!(Algebra::quantum_plane(q(), &q().zero(), 2).is_err());
        let f5 = Field::prime(5).unwrap();
        assert!(Algebra::quantum_plane(q(), &f5.one(), 2).is_err());
    }

    #[test]
    fn opposite_and_center() {
        let d = Algebra::truncated_polynomial(q(), 2).unwrap();
        assert_eq!(d.opposite(), d);
        assert!(d.is_commutative());
        let m = Algebra::matrix_algebra(q(), 2).unwrap();
        let op = m.opposite();
        assert!(op.validate().passed());
        assert_ne!(op, m);
        assert_eq!(op.opposite(), m);
    }

    #[test]
    fn quantum_plane_over_prime_field() {
        // q = 2 in F_5 has order 4
        let f = Field::prime(5).unwrap();
        let a = Algebra::quantum_plane(f, &f.from_i64(2), 3).unwrap();
        assert_eq!(a.dim(), 9);
        assert!(a.validate().passed());
    }
}
