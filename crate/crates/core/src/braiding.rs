//! Second-sided module structures on free modules induced by braidings.
//!
//! For a generator space `V` of dimension `k`:
//! * `R⊗V` has `e_i ⊗ v_a` at index `i*k + a`,
//! * `V⊗R` has `v_a ⊗ e_i` at index `a*n + i`.
//!
//! A braiding `R⊗V -> V⊗R` puts a left action on the right-free module
//! `V⊗R` via `r.(v⊗s) = braid(r⊗v).s`; a braiding `V⊗R -> R⊗V` puts a right
//! action on the left-free module `R⊗V` via `(s⊗v).r = s.braid(v⊗r)`.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::bimodule::{Bimodule, BimoduleMap, MapKind};
use crate::error::Error;
use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::report::{Check, Report, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidingDirection {
    /// `R⊗V -> V⊗R`, inducing a left action on `V⊗R`.
    LeftOverFree,
    /// `V⊗R -> R⊗V`, inducing a right action on `R⊗V`.
    RightOverFree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleBraiding {
    pub generators: usize,
    pub direction: BraidingDirection,
    pub matrix: Matrix,
}

impl FreeModuleBraiding {
    pub fn new(
        algebra: &Algebra,
        generators: usize,
        direction: BraidingDirection,
        matrix: Matrix,
    ) -> Result<Self, Error> {
        let size = algebra.dim() * generators;
        if matrix.rows() != size || matrix.cols() != size {
            return Err(Error::DimensionMismatch {
                context: "braiding matrix".into(),
                expected: size,
                found: matrix.rows().max(matrix.cols()),
            });
        }
        Ok(FreeModuleBraiding {
            generators,
            direction,
            matrix,
        })
    }

    /// The tensor flip `r⊗v <-> v⊗r`.
    pub fn flip(algebra: &Algebra, generators: usize, direction: BraidingDirection) -> Self {
        let n = algebra.dim();
        let k = generators;
        let f = algebra.field();
        let mut m = Matrix::zeros(f, n * k, n * k);
        for i in 0..n {
            for a in 0..k {
                match direction {
                    BraidingDirection::LeftOverFree => m[(a * n + i, i * k + a)] = f.one(),
                    BraidingDirection::RightOverFree => m[(i * k + a, a * n + i)] = f.one(),
                }
            }
        }
        FreeModuleBraiding {
            generators,
            direction,
            matrix: m,
        }
    }
}

/// Builds `V⊗R` with the left action `r.(v⊗s) = braid(r⊗v).s` and checks
/// the bimodule axioms, with a separate flag for `braid(1⊗v) = v⊗1`.
pub fn left_structure_from_braiding(
    algebra: &Arc<Algebra>,
    braiding: &FreeModuleBraiding,
) -> Result<(Bimodule, Report), Error> {
    if braiding.direction != BraidingDirection::LeftOverFree {
        return Err(Error::InvalidParameter(
            "left structure needs a braiding R(x)V -> V(x)R".into(),
        ));
    }
    let n = algebra.dim();
    let k = braiding.generators;
    let f = algebra.field();
    let id_v = Matrix::identity(f, k);
    let mut left = Vec::with_capacity(n);
    for i in 0..n {
        let mut lam = Matrix::zeros(f, n * k, n * k);
        for a in 0..k {
            let image = braiding.matrix.column(i * k + a);
            for s in 0..n {
                let col = id_v.kron(algebra.right_mul_basis(s)).apply(&image);
                for (row, val) in col.into_iter().enumerate() {
                    lam[(row, a * n + s)] = val;
                }
            }
        }
        left.push(lam);
    }
    let right = (0..n).map(|i| id_v.kron(algebra.right_mul_basis(i))).collect();
    let module = Bimodule::new(algebra.clone(), n * k, left, right)?;

    let mut report = Report::new();
    report.push(unit_braiding_check(algebra, braiding));
    report.extend(module.check());
    Ok((module, report))
}

/// Builds `R⊗V` with the right action `(s⊗v).r = s.braid(v⊗r)`.
pub fn right_structure_from_braiding(
    algebra: &Arc<Algebra>,
    braiding: &FreeModuleBraiding,
) -> Result<(Bimodule, Report), Error> {
    if braiding.direction != BraidingDirection::RightOverFree {
        return Err(Error::InvalidParameter(
            "right structure needs a braiding V(x)R -> R(x)V".into(),
        ));
    }
    let n = algebra.dim();
    let k = braiding.generators;
    let f = algebra.field();
    let id_v = Matrix::identity(f, k);
    let mut right = Vec::with_capacity(n);
    for i in 0..n {
        let mut rho = Matrix::zeros(f, n * k, n * k);
        for a in 0..k {
            let image = braiding.matrix.column(a * n + i);
            for s in 0..n {
                let col = algebra.left_mul_basis(s).kron(&id_v).apply(&image);
                for (row, val) in col.into_iter().enumerate() {
                    rho[(row, s * k + a)] = val;
                }
            }
        }
        right.push(rho);
    }
    let left = (0..n).map(|i| algebra.left_mul_basis(i).kron(&id_v)).collect();
    let module = Bimodule::new(algebra.clone(), n * k, left, right)?;

    let mut report = Report::new();
    report.push(unit_braiding_check(algebra, braiding));
    report.extend(module.check());
    Ok((module, report))
}

fn unit_braiding_check(algebra: &Algebra, braiding: &FreeModuleBraiding) -> Check {
    let n = algebra.dim();
    let k = braiding.generators;
    let f = algebra.field();
    let mut violations = Vec::new();
    for a in 0..k {
        let mut src = vec![f.zero(); n * k];
        let mut expected = vec![f.zero(); n * k];
        for (i, u) in algebra.unit().iter().enumerate() {
            match braiding.direction {
                BraidingDirection::LeftOverFree => {
                    src[i * k + a] = u.clone();
                    expected[a * n + i] = u.clone();
                }
                BraidingDirection::RightOverFree => {
                    src[a * n + i] = u.clone();
                    expected[i * k + a] = u.clone();
                }
            }
        }
        if braiding.matrix.apply(&src) != expected {
            violations.push(Violation {
                at: vec![a],
                message: format!("braiding does not fix the unit on generator {a}"),
            });
        }
    }
    Check::from_violations("unit braiding", violations)
}

/// Outcome of comparing a right braiding `alpha: V⊗R -> R⊗V` with a left
/// braiding `beta: R⊗V -> V⊗R`.
#[derive(Clone, Debug)]
pub struct BraidingPair {
    pub report: Report,
    /// When `beta` inverts `alpha`: `alpha` as a bimodule isomorphism
    /// `_beta(V⊗R) -> (R⊗V)_alpha`.
    pub isomorphism: Option<BimoduleMap>,
}

pub fn check_braiding_pair(
    algebra: &Arc<Algebra>,
    alpha: &FreeModuleBraiding,
    beta: &FreeModuleBraiding,
) -> Result<BraidingPair, Error> {
    if alpha.direction != BraidingDirection::RightOverFree
        || beta.direction != BraidingDirection::LeftOverFree
    {
        return Err(Error::InvalidParameter(
            "expected alpha: V(x)R -> R(x)V and beta: R(x)V -> V(x)R".into(),
        ));
    }
    if alpha.generators != beta.generators {
        return Err(Error::DimensionMismatch {
            context: "braiding generators".into(),
            expected: alpha.generators,
            found: beta.generators,
        });
    }
    let f = algebra.field();
    let size = alpha.matrix.rows();
    let id = Matrix::identity(f, size);
    let mut report = Report::new();
    let inverse = beta.matrix.mul(&alpha.matrix) == id && alpha.matrix.mul(&beta.matrix) == id;
    report.push(Check::boolean("braidings mutually inverse", inverse));
    if !inverse {
        return Ok(BraidingPair {
            report,
            isomorphism: None,
        });
    }
    let (left_free, left_report) = left_structure_from_braiding(algebra, beta)?;
    let (right_free, right_report) = right_structure_from_braiding(algebra, alpha)?;
    report.push(Check::boolean("beta structure valid", left_report.passed()));
    report.push(Check::boolean("alpha structure valid", right_report.passed()));
    let iso = BimoduleMap::new(left_free, right_free, alpha.matrix.clone(), MapKind::Bi);
    report.push(Check::boolean(
        "alpha intertwines both actions",
        iso.is_ok(),
    ));
    Ok(BraidingPair {
        report,
        isomorphism: iso.ok(),
    })
}

/// On the dual numbers with one generator: `(a + bx)⊗v -> v⊗(a + λbx)`.
pub fn scaled_braiding(algebra: &Algebra, lambda: &Scalar) -> Result<FreeModuleBraiding, Error> {
    if algebra.dim() != 2 {
        return Err(Error::InvalidParameter(
            "the scaled braiding is defined on two-dimensional algebras".into(),
        ));
    }
    let f = algebra.field();
    let mut m = Matrix::zeros(f, 2, 2);
    m[(0, 0)] = f.one();
    m[(1, 1)] = lambda.clone();
    FreeModuleBraiding::new(algebra, 1, BraidingDirection::LeftOverFree, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn dual() -> Arc<Algebra> {
        Arc::new(Algebra::truncated_polynomial(Field::Rational, 2).unwrap())
    }

    #[test]
    fn flip_gives_copies_of_the_regular_bimodule() {
        let a = Arc::new(Algebra::matrix_algebra(Field::Rational, 2).unwrap());
        let flip = FreeModuleBraiding::flip(&a, 2, BraidingDirection::LeftOverFree);
        let (m, report) = left_structure_from_braiding(&a, &flip).unwrap();
        assert!(report.passed());
        // V⊗R with r.(v⊗s) = v⊗rs is two copies of _R R_R
        let reg = Bimodule::regular(&a);
        let id2 = Matrix::identity(a.field(), 2);
        for i in 0..a.dim() {
            assert_eq!(m.left_basis(i), &id2.kron(reg.left_basis(i)));
        }
    }

    #[test]
    fn scaled_braidings_are_valid() {
        let a = dual();
        let q = a.field();
        for l in [0, 1, 2, -1, 5] {
            let b = scaled_braiding(&a, &q.from_i64(l)).unwrap();
            let (_, report) = left_structure_from_braiding(&a, &b).unwrap();
            assert!(report.passed(), "lambda = {l}: {report}");
        }
    }

    #[test]
    fn broken_unit_is_flagged() {
        let a = dual();
        let q = a.field();
        let mut m = Matrix::identity(q, 2);
        m[(0, 0)] = q.from_i64(2);
        let b = FreeModuleBraiding::new(&a, 1, BraidingDirection::LeftOverFree, m).unwrap();
        let (_, report) = left_structure_from_braiding(&a, &b).unwrap();
        assert!(!report.passed_check("unit braiding"));
    }

    #[test]
    fn flip_pair_is_inverse() {
        let a = dual();
        let alpha = FreeModuleBraiding::flip(&a, 1, BraidingDirection::RightOverFree);
        let beta = FreeModuleBraiding::flip(&a, 1, BraidingDirection::LeftOverFree);
        let pair = check_braiding_pair(&a, &alpha, &beta).unwrap();
        assert!(pair.report.passed(), "{}", pair.report);
        assert!(pair.isomorphism.unwrap().is_isomorphism());
    }

    #[test]
    fn scaled_against_flip_is_not_inverse() {
        let a = dual();
        let alpha = FreeModuleBraiding::flip(&a, 1, BraidingDirection::RightOverFree);
        let beta = scaled_braiding(&a, &a.field().from_i64(2)).unwrap();
        let pair = check_braiding_pair(&a, &alpha, &beta).unwrap();
        assert!(!pair.report.passed());
        assert!(pair.isomorphism.is_none());
    }
}
