//! Finite-dimensional bimodules over an [`Algebra`], their maps, and the
//! linear systems that describe module homomorphisms and splittings.
//!
//! A bimodule of dimension `m` is given by one `m x m` matrix per algebra
//! basis element for each side: `r.v = left(r) v` and `v.r = right(r) v`.
//! The right action therefore composes through the opposite algebra:
//! `right(rs) = right(s) right(r)`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{combine, Algebra};
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::linalg::{quotient, AffineSolution, LinearSystem, Matrix, RowReducer, Subspace};
use crate::report::{Check, Report, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    algebra: Arc<Algebra>,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

/// Which actions a map is required to commute with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Left,
    Right,
    Bi,
}

impl MapKind {
    pub fn has_left(self) -> bool {
        matches!(self, MapKind::Left | MapKind::Bi)
    }

    pub fn has_right(self) -> bool {
        matches!(self, MapKind::Right | MapKind::Bi)
    }

    /// The strongest kind satisfied by a map with the given properties.
    pub fn from_flags(left: bool, right: bool) -> Option<MapKind> {
        match (left, right) {
            (true, true) => Some(MapKind::Bi),
            (true, false) => Some(MapKind::Left),
            (false, true) => Some(MapKind::Right),
            (false, false) => None,
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Left => "left",
            MapKind::Right => "right",
            MapKind::Bi => "bi",
        })
    }
}

impl std::str::FromStr for MapKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "left" => Ok(MapKind::Left),
            "right" => Ok(MapKind::Right),
            "bi" => Ok(MapKind::Bi),
            _ => Err(Error::InvalidParameter(format!("unknown map kind `{s}`"))),
        }
    }
}

impl Bimodule {
    pub fn new(
        algebra: Arc<Algebra>,
        dim: usize,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
    ) -> Result<Self, Error> {
        let n = algebra.dim();
        for (side, mats) in [("left action", &left), ("right action", &right)] {
            if mats.len() != n {
                return Err(Error::DimensionMismatch {
                    context: format!("{side} matrix count"),
                    expected: n,
                    found: mats.len(),
                });
            }
            if let Some(m) = mats.iter().find(|m| m.rows() != dim || m.cols() != dim) {
                return Err(Error::DimensionMismatch {
                    context: format!("{side} matrix size"),
                    expected: dim,
                    found: m.rows().max(m.cols()),
                });
            }
        }
        Ok(Bimodule {
            algebra,
            dim,
            left,
            right,
        })
    }

    /// The algebra as a bimodule over itself.
    pub fn regular(algebra: &Arc<Algebra>) -> Self {
        let n = algebra.dim();
        Bimodule {
            algebra: algebra.clone(),
            dim: n,
            left: (0..n).map(|i| algebra.left_mul_basis(i).clone()).collect(),
            right: (0..n).map(|i| algebra.right_mul_basis(i).clone()).collect(),
        }
    }

    /// `R⊗R` with `r.(a⊗b).s = ra⊗bs`; `e_i⊗e_j` sits at index `i*n + j`.
    pub fn bifree_square(algebra: &Arc<Algebra>) -> Self {
        let n = algebra.dim();
        let f = algebra.field();
        let id = Matrix::identity(f, n);
        Bimodule {
            algebra: algebra.clone(),
            dim: n * n,
            left: (0..n).map(|i| algebra.left_mul_basis(i).kron(&id)).collect(),
            right: (0..n).map(|i| id.kron(algebra.right_mul_basis(i))).collect(),
        }
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        let n = algebra.dim();
        let f = algebra.field();
        Bimodule {
            algebra: algebra.clone(),
            dim: 0,
            left: vec![Matrix::zeros(f, 0, 0); n],
            right: vec![Matrix::zeros(f, 0, 0); n],
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_basis(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    pub fn right_basis(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    pub fn left_actions(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right_actions(&self) -> &[Matrix] {
        &self.right
    }

    pub fn left_action(&self, r: &[Scalar]) -> Matrix {
        combine(self.algebra.field(), self.dim, &self.left, r)
    }

    pub fn right_action(&self, r: &[Scalar]) -> Matrix {
        combine(self.algebra.field(), self.dim, &self.right, r)
    }

    /// Both actions coincide, as for symmetric bimodules over commutative algebras.
    pub fn is_symmetric(&self) -> bool {
        self.left == self.right
    }

    /// Verifies unitality, multiplicativity of both actions, and that they commute.
    pub fn check(&self) -> Report {
        let a = &self.algebra;
        let n = a.dim();
        let f = a.field();
        let id = Matrix::identity(f, self.dim);
        let mut report = Report::new();

        let mut unit = Vec::new();
        if self.left_action(a.unit()) != id {
            unit.push(Violation {
                at: vec![],
                message: "left action of 1 is not the identity".into(),
            });
        }
        if self.right_action(a.unit()) != id {
            unit.push(Violation {
                at: vec![],
                message: "right action of 1 is not the identity".into(),
            });
        }
        report.push(Check::from_violations("unitality", unit));

        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut commute = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let rs = a.basis_product(i, j);
                if self.left[i].mul(&self.left[j]) != self.left_action(&rs) {
                    left.push(Violation {
                        at: vec![i, j],
                        message: format!(
                            "left({a})left({b}) != left({a}*{b})",
                            a = a.label(i),
                            b = a.label(j)
                        ),
                    });
                }
                if self.right[j].mul(&self.right[i]) != self.right_action(&rs) {
                    right.push(Violation {
                        at: vec![i, j],
                        message: format!(
                            "right({b})right({a}) != right({a}*{b})",
                            a = a.label(i),
                            b = a.label(j)
                        ),
                    });
                }
                if self.left[i].mul(&self.right[j]) != self.right[j].mul(&self.left[i]) {
                    commute.push(Violation {
                        at: vec![i, j],
                        message: format!(
                            "left({}) and right({}) do not commute",
                            a.label(i),
                            a.label(j)
                        ),
                    });
                }
            }
        }
        report.push(Check::from_violations("left multiplicativity", left));
        report.push(Check::from_violations("right multiplicativity", right));
        report.push(Check::from_violations("actions commute", commute));
        report
    }

    pub fn is_valid(&self) -> bool {
        self.check().passed()
    }

    pub fn is_subbimodule(&self, sub: &Subspace) -> bool {
        sub.basis_vectors().iter().all(|v| {
            self.left
                .iter()
                .chain(&self.right)
                .all(|m| sub.contains(&m.apply(v)))
        })
    }

    /// Smallest subbimodule containing `gens`.
    pub fn closure(&self, gens: &[Vec<Scalar>]) -> Subspace {
        let f = self.algebra.field();
        let mut red = RowReducer::new(f, self.dim);
        let mut queue: Vec<Vec<Scalar>> = gens.to_vec();
        while let Some(v) = queue.pop() {
            assert_eq!(v.len(), self.dim, "generator outside the module");
            if red.push(v.clone()) {
                for m in self.left.iter().chain(&self.right) {
                    queue.push(m.apply(&v));
                }
            }
        }
        Subspace::span(f, self.dim, red.rows().to_vec())
    }

    /// The subbimodule `sub` with actions written in its canonical basis.
    pub fn restrict(&self, sub: &Subspace) -> Result<Bimodule, Error> {
        let restrict_all = |mats: &[Matrix]| -> Result<Vec<Matrix>, Error> {
            mats.iter()
                .map(|m| {
                    let cols = sub
                        .basis_vectors()
                        .iter()
                        .map(|b| sub.coords(&m.apply(b)).ok_or(Error::NotSubbimodule))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(Matrix::from_columns(self.algebra.field(), sub.dim(), &cols))
                })
                .collect()
        };
        Ok(Bimodule {
            algebra: self.algebra.clone(),
            dim: sub.dim(),
            left: restrict_all(&self.left)?,
            right: restrict_all(&self.right)?,
        })
    }

    /// `M/N` with the induced actions and the projection onto it.
    pub fn quotient(&self, sub: &Subspace) -> Result<(Bimodule, BimoduleMap), Error> {
        if sub.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "quotient subspace".into(),
                expected: self.dim,
                found: sub.ambient_dim(),
            });
        }
        if !self.is_subbimodule(sub) {
            return Err(Error::NotSubbimodule);
        }
        let q = quotient(self.dim, sub)?;
        let induce = |m: &Matrix| q.projection.mul(&m.mul(&q.section));
        let target = Bimodule {
            algebra: self.algebra.clone(),
            dim: q.dim(),
            left: self.left.iter().map(induce).collect(),
            right: self.right.iter().map(induce).collect(),
        };
        let pi = BimoduleMap::new(self.clone(), target.clone(), q.projection, MapKind::Bi)?;
        Ok((target, pi))
    }

    /// Inclusion of a subbimodule, as a map from its restriction.
    pub fn inclusion(&self, sub: &Subspace) -> Result<BimoduleMap, Error> {
        let source = self.restrict(sub)?;
        BimoduleMap::new(source, self.clone(), sub.inclusion(), MapKind::Bi)
    }

    pub fn identity_map(&self) -> BimoduleMap {
        BimoduleMap {
            source: self.clone(),
            target: self.clone(),
            matrix: Matrix::identity(self.algebra.field(), self.dim),
            kind: MapKind::Bi,
        }
    }
}

/// A linear map between bimodules together with the actions it respects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMap {
    source: Bimodule,
    target: Bimodule,
    matrix: Matrix,
    kind: MapKind,
}

impl BimoduleMap {
    /// Checks shapes and the intertwining required by `kind`.
    pub fn new(source: Bimodule, target: Bimodule, matrix: Matrix, kind: MapKind) -> Result<Self, Error> {
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::DimensionMismatch {
                context: "bimodule map matrix".into(),
                expected: target.dim * source.dim,
                found: matrix.rows() * matrix.cols(),
            });
        }
        if kind.has_left() && !intertwining_violations(&source, &target, &matrix, MapKind::Left).is_empty() {
            return Err(Error::NotIntertwining("left"));
        }
        if kind.has_right() && !intertwining_violations(&source, &target, &matrix, MapKind::Right).is_empty() {
            return Err(Error::NotIntertwining("right"));
        }
        Ok(BimoduleMap {
            source,
            target,
            matrix,
            kind,
        })
    }

    pub fn source(&self) -> &Bimodule {
        &self.source
    }

    pub fn target(&self) -> &Bimodule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// `self ∘ inner`; the kind is the common part of both kinds.
    pub fn compose(&self, inner: &BimoduleMap) -> Result<BimoduleMap, Error> {
        if inner.target.dim != self.source.dim {
            return Err(Error::DimensionMismatch {
                context: "composition".into(),
                expected: self.source.dim,
                found: inner.target.dim,
            });
        }
        let kind = MapKind::from_flags(
            self.kind.has_left() && inner.kind.has_left(),
            self.kind.has_right() && inner.kind.has_right(),
        )
        .ok_or(Error::NotIntertwining("common"))?;
        BimoduleMap::new(
            inner.source.clone(),
            self.target.clone(),
            self.matrix.mul(&inner.matrix),
            kind,
        )
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.is_surjective()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrix.is_bijective()
    }
}

/// Basis elements `r` on which `matrix` fails to commute with the requested
/// action(s).
pub fn intertwining_violations(
    source: &Bimodule,
    target: &Bimodule,
    matrix: &Matrix,
    kind: MapKind,
) -> Vec<Violation> {
    let n = source.algebra.dim();
    let mut out = Vec::new();
    for i in 0..n {
        if kind.has_left() && matrix.mul(&source.left[i]) != target.left[i].mul(matrix) {
            out.push(Violation {
                at: vec![i],
                message: format!("fails to commute with left action of {}", source.algebra.label(i)),
            });
        }
        if kind.has_right() && matrix.mul(&source.right[i]) != target.right[i].mul(matrix) {
            out.push(Violation {
                at: vec![i],
                message: format!("fails to commute with right action of {}", source.algebra.label(i)),
            });
        }
    }
    out
}

/// Whether `matrix: source -> target` commutes with the left and right actions.
pub fn intertwines(source: &Bimodule, target: &Bimodule, matrix: &Matrix) -> (bool, bool) {
    (
        intertwining_violations(source, target, matrix, MapKind::Left).is_empty(),
        intertwining_violations(source, target, matrix, MapKind::Right).is_empty(),
    )
}

/// Adds the equations `X A - B X = 0` for an unknown `rows x cols` matrix `X`
/// stored row-major.
pub(crate) fn add_intertwining_equations(sys: &mut LinearSystem, a: &Matrix, b: &Matrix) {
    let rows = b.rows();
    let cols = a.cols();
    let field = sys.field();
    for p in 0..rows {
        for q in 0..cols {
            let mut coeffs = vec![field.zero(); rows * cols];
            for t in 0..cols {
                let x = &a[(t, q)];
                if !x.is_zero() {
                    coeffs[p * cols + t] = &coeffs[p * cols + t] + x;
                }
            }
            for t in 0..rows {
                let y = &b[(p, t)];
                if !y.is_zero() {
                    coeffs[t * cols + q] = &coeffs[t * cols + q] - y;
                }
            }
            if coeffs.iter().any(|c| !c.is_zero()) {
                sys.add_homogeneous(coeffs);
            }
        }
    }
}

fn module_map_system(source: &Bimodule, target: &Bimodule, kind: MapKind) -> LinearSystem {
    let f = source.algebra.field();
    let mut sys = LinearSystem::new(f, target.dim * source.dim);
    for i in 0..source.algebra.dim() {
        if kind.has_left() {
            add_intertwining_equations(&mut sys, &source.left[i], &target.left[i]);
        }
        if kind.has_right() {
            add_intertwining_equations(&mut sys, &source.right[i], &target.right[i]);
        }
    }
    sys
}

/// All maps `source -> target` of the given kind, as a subspace of the
/// row-major `target.dim x source.dim` matrices.
pub fn solve_module_maps(source: &Bimodule, target: &Bimodule, kind: MapKind) -> Subspace {
    module_map_system(source, target, kind).solution_space()
}

/// Reshapes a row-major vector into a matrix.
pub fn unflatten(field: Field, v: &[Scalar], rows: usize, cols: usize) -> Matrix {
    Matrix::from_flat(field, rows, cols, v.to_vec())
}

/// A section of a surjective map, and the full solution set it came from.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub section: BimoduleMap,
    pub solutions: AffineSolution,
}

impl Splitting {
    /// Whether a given `target -> source` matrix is one of the sections.
    pub fn admits(&self, section: &Matrix) -> bool {
        self.solutions.contains(section.as_slice())
    }
}

/// Solves `f ∘ s = id` over maps `s` of the requested kind.
///
/// `Ok(None)` certifies that no such section exists: the combined affine
/// system is inconsistent.
pub fn find_splitting(f: &BimoduleMap, kind: MapKind) -> Result<Option<Splitting>, Error> {
    let rank = f.matrix.rank();
    if rank != f.target.dim {
        return Err(Error::NotSurjective {
            rank,
            codomain: f.target.dim,
        });
    }
    let field = f.source.algebra.field();
    let (m, n) = (f.source.dim, f.target.dim);
    let mut sys = module_map_system(&f.target, &f.source, kind);
    // (f s)[p][q] = sum_t f[p][t] s[t][q] = [p = q]
    for p in 0..n {
        for q in 0..n {
            let mut coeffs = vec![field.zero(); m * n];
            for t in 0..m {
                coeffs[t * n + q] = f.matrix[(p, t)].clone();
            }
            let rhs = if p == q { field.one() } else { field.zero() };
            sys.add_equation(coeffs, rhs);
        }
    }
    let Some(solutions) = sys.solve() else {
        return Ok(None);
    };
    let section = BimoduleMap::new(
        f.target.clone(),
        f.source.clone(),
        unflatten(field, &solutions.particular, m, n),
        kind,
    )?;
    Ok(Some(Splitting { section, solutions }))
}

/// `count` random vectors of `sub`, with coefficients in `-2..=2` on a random
/// handful of basis vectors.
pub fn random_elements<R: Rng>(sub: &Subspace, count: usize, rng: &mut R) -> Vec<Vec<Scalar>> {
    let f = sub.field();
    let d = sub.dim();
    (0..count)
        .map(|_| {
            let mut coords = vec![f.zero(); d];
            if d > 0 {
                let support = rng.gen_range(1..=d.min(3));
                for _ in 0..support {
                    let idx = rng.gen_range(0..d);
                    coords[idx] = f.from_i64(rng.gen_range(-2..=2));
                }
            }
            sub.vector(&coords)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kernel;

    fn dual() -> Arc<Algebra> {
        Arc::new(Algebra::truncated_polynomial(Field::Rational, 2).unwrap())
    }

    #[test]
    fn regular_and_bifree_are_valid() {
        let a = dual();
        assert!(Bimodule::regular(&a).check().passed());
        let b = Bimodule::bifree_square(&a);
        assert!(b.check().passed());
        assert_eq!(b.dim(), 4);
        let f = a.field();
        // x.(1⊗1) = x⊗1 (index 2), (1⊗1).x = 1⊗x (index 1)
        let one_one = crate::algebra::basis_vector(f, 4, 0);
        assert_eq!(b.left_basis(1).apply(&one_one), crate::algebra::basis_vector(f, 4, 2));
        assert_eq!(b.right_basis(1).apply(&one_one), crate::algebra::basis_vector(f, 4, 1));
    }

    #[test]
    fn mu_is_a_bimodule_map() {
        let a = dual();
        let mu = BimoduleMap::new(
            Bimodule::bifree_square(&a),
            Bimodule::regular(&a),
            a.mu_map(),
            MapKind::Bi,
        );
        assert!(mu.is_ok());
    }

    #[test]
    fn broken_left_action_is_located() {
        let a = dual();
        let f = a.field();
        // dimension 1, x acts by 1 on the left: left(x)^2 = 1 != left(x^2) = 0
        let one = Matrix::identity(f, 1);
        let zero = Matrix::zeros(f, 1, 1);
        let m = Bimodule::new(a.clone(), 1, vec![one.clone(), one.clone()], vec![one, zero]).unwrap();
        let report = m.check();
        let left = report.check("left multiplicativity").unwrap();
        assert!(!left.passed);
        assert!(left.violations.iter().any(|v| v.at == [1, 1]));
    }

    #[test]
    fn closure_examples() {
        let a = dual();
        let f = a.field();
        let reg = Bimodule::regular(&a);
        assert!(reg.closure(&[]).is_zero());
        assert!(reg.closure(&[a.unit().to_vec()]).is_full());
        assert_eq!(reg.closure(&[a.basis_element(1)]).dim(), 1);

        let b = Bimodule::bifree_square(&a);
        let ker = kernel(&a.mu_map());
        // d x = x⊗1 - 1⊗x generates ker mu
        let mut dx = vec![f.zero(); 4];
        dx[2] = f.one();
        dx[1] = -f.one();
        assert_eq!(b.closure(&[dx]), ker);
    }

    #[test]
    fn quotient_examples() {
        let a = dual();
        let b = Bimodule::bifree_square(&a);
        let f = a.field();
        let (q0, pi0) = b.quotient(&Subspace::zero(f, 4)).unwrap();
        assert_eq!(q0, b);
        assert_eq!(pi0.matrix(), &Matrix::identity(f, 4));
        let (qf, _) = b.quotient(&Subspace::full(f, 4)).unwrap();
        assert_eq!(qf.dim(), 0);

        let ker = kernel(&a.mu_map());
        let km = b.restrict(&ker).unwrap();
        assert!(km.check().passed());
        // x⊗x is the second canonical basis vector of ker mu
        let xx = Subspace::span(f, 2, vec![vec![f.zero(), f.one()]]);
        let xx_in_kernel = ker.coords(&crate::algebra::basis_vector(f, 4, 3)).unwrap();
        assert!(xx.contains(&xx_in_kernel));
        let (q, pi) = km.quotient(&xx).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(q.check().passed());
        assert!(pi.is_surjective());

        let not_sub = Subspace::span(f, 4, vec![crate::algebra::basis_vector(f, 4, 0)]);
        assert_eq!(b.quotient(&not_sub).unwrap_err(), Error::NotSubbimodule);
    }

    #[test]
    fn hom_spaces() {
        let a = dual();
        let reg = Bimodule::regular(&a);
        // Hom_R(R_R, R_R) = left multiplications, dimension n
        assert_eq!(solve_module_maps(&reg, &reg, MapKind::Right).dim(), 2);
        let b = Bimodule::bifree_square(&a);
        let homs = solve_module_maps(&b, &b, MapKind::Bi);
        assert!(homs.contains(Matrix::identity(a.field(), 4).as_slice()));

        let ker = kernel(&a.mu_map());
        let km = b.restrict(&ker).unwrap();
        assert_eq!(solve_module_maps(&km, &reg, MapKind::Right).dim(), 2);
    }

    #[test]
    fn splitting_of_mu_for_dual_numbers() {
        let a = dual();
        let f = a.field();
        let mu = BimoduleMap::new(
            Bimodule::bifree_square(&a),
            Bimodule::regular(&a),
            a.mu_map(),
            MapKind::Bi,
        )
        .unwrap();
        let left = find_splitting(&mu, MapKind::Left).unwrap().unwrap();
        // r -> r⊗1
        let mut r_tensor_one = Matrix::zeros(f, 4, 2);
        r_tensor_one[(0, 0)] = f.one();
        r_tensor_one[(2, 1)] = f.one();
        assert!(left.admits(&r_tensor_one));
        assert_eq!(mu.matrix().mul(left.section.matrix()), Matrix::identity(f, 2));
        assert!(find_splitting(&mu, MapKind::Bi).unwrap().is_none());
    }

    #[test]
    fn splitting_requires_surjection() {
        let a = dual();
        let reg = Bimodule::regular(&a);
        let zero = BimoduleMap::new(reg.clone(), reg, Matrix::zeros(a.field(), 2, 2), MapKind::Bi).unwrap();
        assert!(matches!(
            find_splitting(&zero, MapKind::Left),
            Err(Error::NotSurjective { .. })
        ));
    }
}
