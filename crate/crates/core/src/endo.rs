//! Linear endomorphisms of the algebra as a quatro-module.
//!
//! An endomorphism `A` is stored as its `n x n` matrix flattened row-major,
//! so `A(e_j)` is column `j`. On this space act
//! (i) `r.A = L_r∘A`, (ii) `A∗r = A∘L_r`, (iii) `r∗A = A∘R_r` and
//! (iv) `A.r = R_r∘A`. Pairing (i) with (ii) gives `End(R)^⋉`, (iii) with
//! (iv) gives `End(R)^⋊`. On `End₀(R) = {A : A(1) = 0}` the right structure
//! `A⊙r = A∘L_r - L_{A(r)}` together with (i) is the universal right Cartan
//! pair; `r⊙'A = A∘R_r - R_{A(r)}` with (iv) is the universal left one.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::bimodule::{intertwines, Bimodule, BimoduleMap, MapKind};
use crate::calculus::{BarredPresentations, UniversalCalculus};
use crate::duality::{left_dual, right_dual, DualModule, Side};
use crate::error::Error;
use crate::field::Field;
use crate::linalg::{image, kernel, Matrix, Subspace};
use crate::report::{Check, Report, Violation};

/// `A -> M∘A` on flattened endomorphisms.
pub fn post_compose(m: &Matrix) -> Matrix {
    m.kron(&Matrix::identity(m.field(), m.cols()))
}

/// `A -> A∘M` on flattened endomorphisms.
pub fn pre_compose(m: &Matrix) -> Matrix {
    Matrix::identity(m.field(), m.rows()).kron(&m.transpose())
}

/// `A -> Σ_k A(e_i)_k ops_k`, e.g. `A -> L_{A(e_i)}` for `ops = L`.
fn along_value(field: Field, ops: &[Matrix], i: usize) -> Matrix {
    let n = ops.len();
    let mut out = Matrix::zeros(field, n * n, n * n);
    for (k, op) in ops.iter().enumerate() {
        for (idx, v) in op.as_slice().iter().enumerate() {
            out[(idx, k * n + i)] = v.clone();
        }
    }
    out
}

fn combine_unit(algebra: &Algebra, per_basis: impl Fn(usize) -> Matrix) -> Matrix {
    let n = algebra.dim();
    let f = algebra.field();
    let mut out = Matrix::zeros(f, n * n, n * n);
    for (i, u) in algebra.unit().iter().enumerate() {
        if !u.is_zero() {
            out = out.add(&per_basis(i).scale(u));
        }
    }
    out
}

fn left_ops(algebra: &Algebra) -> Vec<Matrix> {
    (0..algebra.dim()).map(|i| algebra.left_mul_basis(i).clone()).collect()
}

fn right_ops(algebra: &Algebra) -> Vec<Matrix> {
    (0..algebra.dim()).map(|i| algebra.right_mul_basis(i).clone()).collect()
}

/// `B -> B(1)` from `End(R)` to `R`.
pub fn evaluation_at_unit(algebra: &Algebra) -> Matrix {
    let n = algebra.dim();
    let f = algebra.field();
    Matrix::from_fn(f, n, n * n, |row, col| {
        let (k, j) = (col / n, col % n);
        if k == row {
            algebra.unit()[j].clone()
        } else {
            f.zero()
        }
    })
}

/// `End₀(R)` inside the flattened endomorphisms.
pub fn end0_subspace(algebra: &Algebra) -> Subspace {
    kernel(&evaluation_at_unit(algebra))
}

/// `r -> L_r` (or `R_r`) as a map `R -> End(R)`.
fn embedding(algebra: &Algebra, ops: &[Matrix]) -> Matrix {
    let n = algebra.dim();
    let cols: Vec<_> = ops.iter().map(|m| m.as_slice().to_vec()).collect();
    Matrix::from_columns(algebra.field(), n * n, &cols)
}

fn bimodule_on_end(algebra: &Arc<Algebra>, left: Vec<Matrix>, right: Vec<Matrix>) -> Bimodule {
    let n = algebra.dim();
    Bimodule::new(algebra.clone(), n * n, left, right).expect("sizes match End(R)")
}

/// `End(R)^⋉`: `r.A∗r' = L_r∘A∘L_r'`.
pub fn end_ltimes(algebra: &Arc<Algebra>) -> Bimodule {
    let l = left_ops(algebra);
    bimodule_on_end(
        algebra,
        l.iter().map(post_compose).collect(),
        l.iter().map(pre_compose).collect(),
    )
}

/// `End(R)^⋊`: `r∗A.r' = R_r'∘A∘R_r`.
pub fn end_rtimes(algebra: &Arc<Algebra>) -> Bimodule {
    let r = right_ops(algebra);
    bimodule_on_end(
        algebra,
        r.iter().map(pre_compose).collect(),
        r.iter().map(post_compose).collect(),
    )
}

/// `End₀(R)` with `r.A = L_r∘A` and `A⊙r = A∘L_r - L_{A(r)}`, in the
/// coordinates of [`end0_subspace`].
pub fn end0_odot(algebra: &Arc<Algebra>) -> Bimodule {
    let f = algebra.field();
    let l = left_ops(algebra);
    let right = (0..algebra.dim())
        .map(|i| pre_compose(&l[i]).sub(&along_value(f, &l, i)))
        .collect();
    let full = bimodule_on_end(algebra, l.iter().map(post_compose).collect(), right);
    full.restrict(&end0_subspace(algebra))
        .expect("End0 is stable under the odot structure")
}

/// `End₀(R)` with `A.r = R_r∘A` and `r⊙'A = A∘R_r - R_{A(r)}`.
pub fn end0_odot_left(algebra: &Arc<Algebra>) -> Bimodule {
    let f = algebra.field();
    let r = right_ops(algebra);
    let left = (0..algebra.dim())
        .map(|i| pre_compose(&r[i]).sub(&along_value(f, &r, i)))
        .collect();
    let full = bimodule_on_end(algebra, left, r.iter().map(post_compose).collect());
    full.restrict(&end0_subspace(algebra))
        .expect("End0 is stable under the odot' structure")
}

/// The bimodule structures on `End(R)` and the maps between them.
#[derive(Clone, Debug)]
pub struct EndStructures {
    pub ltimes: Bimodule,
    pub rtimes: Bimodule,
    /// `r -> L_r`, a bimodule map `R -> End(R)^⋉`.
    pub left_embedding: BimoduleMap,
    /// `r -> R_r`, a bimodule map `R -> End(R)^⋊`.
    pub right_embedding: BimoduleMap,
    /// `(R⊗R)^▷ -> End(R)^⋉`, `φ -> (r -> φ(r⊗1))`.
    pub right_dual_iso: BimoduleMap,
    /// `(R⊗R)^◁ -> End(R)^⋊`, `ξ -> (r -> ξ(1⊗r))`.
    pub left_dual_iso: BimoduleMap,
    pub report: Report,
}

pub fn end_structures(algebra: &Arc<Algebra>) -> Result<EndStructures, Error> {
    let f = algebra.field();
    let n = algebra.dim();
    let ltimes = end_ltimes(algebra);
    let rtimes = end_rtimes(algebra);
    let regular = Bimodule::regular(algebra);
    let l = left_ops(algebra);
    let r = right_ops(algebra);
    let mut report = Report::new();

    report.push(named("End^ltimes bimodule axioms", ltimes.check()));
    report.push(named("End^rtimes bimodule axioms", rtimes.check()));
    report.push(quatro_check(algebra));

    let left_embedding = BimoduleMap::new(regular.clone(), ltimes.clone(), embedding(algebra, &l), MapKind::Bi)?;
    let right_embedding = BimoduleMap::new(regular.clone(), rtimes.clone(), embedding(algebra, &r), MapKind::Bi)?;
    report.push(Check::boolean(
        "L: R -> End^ltimes is a bimodule monomorphism",
        left_embedding.is_injective(),
    ));
    report.push(Check::boolean(
        "R: R -> End^rtimes is a bimodule monomorphism",
        right_embedding.is_injective(),
    ));
    let image_l = image(left_embedding.matrix());
    let image_r = image(right_embedding.matrix());
    let meet = image_l.intersection(&image_r);
    let center = algebra.center().map(left_embedding.matrix());
    report.push(
        Check::boolean("image(L) cap image(R) = L(center)", meet == center)
            .with_detail(format!("dimension {} (center {})", meet.dim(), center.dim())),
    );

    let bifree = Bimodule::bifree_square(algebra);
    let u = algebra.unit();
    let mut with_one_right = Matrix::zeros(f, n * n, n);
    let mut with_one_left = Matrix::zeros(f, n * n, n);
    for j in 0..n {
        for i in 0..n {
            with_one_right[(j * n + i, j)] = u[i].clone();
            with_one_left[(i * n + j, j)] = u[i].clone();
        }
    }
    let right_dual_iso = dual_to_end(&right_dual(&bifree), &with_one_right, &ltimes)?;
    let left_dual_iso = dual_to_end(&left_dual(&bifree), &with_one_left, &rtimes)?;
    report.push(Check::boolean(
        "(R(x)R)^> ~= End^ltimes",
        right_dual_iso.is_isomorphism(),
    ));
    report.push(Check::boolean(
        "(R(x)R)^< ~= End^rtimes",
        left_dual_iso.is_isomorphism(),
    ));
    Ok(EndStructures {
        ltimes,
        rtimes,
        left_embedding,
        right_embedding,
        right_dual_iso,
        left_dual_iso,
        report,
    })
}

/// `φ -> φ∘j` from a dual into flattened endomorphisms.
fn dual_to_end(dual: &DualModule, j: &Matrix, target: &Bimodule) -> Result<BimoduleMap, Error> {
    let f = j.field();
    let cols: Vec<_> = (0..dual.dim())
        .map(|k| {
            let mut c = vec![f.zero(); dual.dim()];
            c[k] = f.one();
            dual.functional(&c).mul(j).as_slice().to_vec()
        })
        .collect();
    let n2 = j.cols() * j.cols();
    BimoduleMap::new(
        dual.module().clone(),
        target.clone(),
        Matrix::from_columns(f, n2, &cols),
        MapKind::Bi,
    )
}

fn named(name: &str, r: Report) -> Check {
    let violations = r
        .failures()
        .map(|c| Violation {
            at: vec![],
            message: c.name.clone(),
        })
        .collect();
    Check::from_violations(name, violations)
}

/// The four multiplications commute pairwise on basis elements.
fn quatro_check(algebra: &Algebra) -> Check {
    let names = ["r.A", "A*r", "r*A", "A.r"];
    let l = left_ops(algebra);
    let r = right_ops(algebra);
    let ops: [Vec<Matrix>; 4] = [
        l.iter().map(post_compose).collect(),
        l.iter().map(pre_compose).collect(),
        r.iter().map(pre_compose).collect(),
        r.iter().map(post_compose).collect(),
    ];
    let mut violations = Vec::new();
    for p in 0..4 {
        for q in (p + 1)..4 {
            for (i, a) in ops[p].iter().enumerate() {
                for (j, b) in ops[q].iter().enumerate() {
                    if a.mul(b) != b.mul(a) {
                        violations.push(Violation {
                            at: vec![p, q, i, j],
                            message: format!("{} and {} do not commute", names[p], names[q]),
                        });
                    }
                }
            }
        }
    }
    Check::from_violations("quatro-module commutations", violations)
}

/// The universal right Cartan pair `End₀(R)^⊙` and its identifications
/// with the right duals of the universal calculi.
#[derive(Clone, Debug)]
pub struct UniversalCartan {
    pub end0: Subspace,
    pub module: Bimodule,
    /// `(R̄⊗R)^▷ -> End₀`, `φ -> φ∘(D⊗1)`.
    pub from_barred_dual: BimoduleMap,
    /// `(ker mu)^▷ -> End₀`, `X -> X∘d_mu`.
    pub from_kernel_dual: BimoduleMap,
    pub report: Report,
}

pub fn universal_cartan(algebra: &Arc<Algebra>) -> Result<UniversalCartan, Error> {
    let end0 = end0_subspace(algebra);
    let module = end0_odot(algebra);
    let mut report = Report::new();
    report.push(named("End0^odot bimodule axioms", module.check()));
    report.push(Check::boolean(
        "dim End0 = n(n-1)",
        module.dim() == algebra.dim() * (algebra.dim() - 1),
    ));

    let u = UniversalCalculus::new(algebra)?;
    let barred = BarredPresentations::new(algebra)?;
    let from_barred_dual = dual_into_end0(&right_dual(barred.chi_calculus.omega()), barred.chi_calculus.d(), &end0, &module)?;
    let kernel_dual = right_dual(u.fodc().omega());
    let from_kernel_dual = dual_into_end0(&kernel_dual, u.fodc().d(), &end0, &module)?;
    report.push(
        Check::boolean("(Rbar(x)R)^> ~= End0^odot", from_barred_dual.is_isomorphism())
            .with_detail(format!("dimension {}", from_barred_dual.source().dim())),
    );
    report.push(
        Check::boolean("(ker mu)^> ~= End0^odot", from_kernel_dual.is_isomorphism())
            .with_detail(format!("dimension {}", kernel_dual.dim())),
    );
    Ok(UniversalCartan {
        end0,
        module,
        from_barred_dual,
        from_kernel_dual,
        report,
    })
}

/// `φ -> φ∘d` as a bimodule map into `End₀^⊙` (verified on construction).
pub fn dual_into_end0(
    dual: &DualModule,
    d: &Matrix,
    end0: &Subspace,
    target: &Bimodule,
) -> Result<BimoduleMap, Error> {
    let f = d.field();
    let cols = (0..dual.dim())
        .map(|k| {
            let mut c = vec![f.zero(); dual.dim()];
            c[k] = f.one();
            end0.coords(dual.functional(&c).mul(d).as_slice())
                .ok_or(Error::NotIntertwining("functional does not vanish on the unit"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    BimoduleMap::new(
        dual.module().clone(),
        target.clone(),
        Matrix::from_columns(f, end0.dim(), &cols),
        MapKind::Bi,
    )
}

/// One row of the splitting intertwining table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntertwiningRow {
    pub map: String,
    pub source: String,
    pub target: String,
    pub left: bool,
    pub right: bool,
}

/// The decompositions `B = P_L(B) + L_{B(1)} = P_R(B) + R_{B(1)}`.
#[derive(Clone, Debug)]
pub struct UniversalSplitting {
    pub end0: Subspace,
    /// `B -> B - L_{B(1)}` on `End(R)`.
    pub p_left: Matrix,
    /// `B -> L_{B(1)}`.
    pub q_left: Matrix,
    /// `B -> B - R_{B(1)}`.
    pub p_right: Matrix,
    /// `B -> R_{B(1)}`.
    pub q_right: Matrix,
    pub table: Vec<IntertwiningRow>,
    pub report: Report,
}

impl UniversalSplitting {
    pub fn lookup(&self, map: &str, source: &str, target: &str) -> Option<&IntertwiningRow> {
        self.table
            .iter()
            .find(|r| r.map == map && r.source == source && r.target == target)
    }
}

pub fn universal_splitting(algebra: &Arc<Algebra>) -> Result<UniversalSplitting, Error> {
    let f = algebra.field();
    let n = algebra.dim();
    let l = left_ops(algebra);
    let r = right_ops(algebra);
    let id = Matrix::identity(f, n * n);
    let q_left = combine_unit(algebra, |i| along_value(f, &l, i));
    let q_right = combine_unit(algebra, |i| along_value(f, &r, i));
    let p_left = id.sub(&q_left);
    let p_right = id.sub(&q_right);
    let end0 = end0_subspace(algebra);
    let ev = evaluation_at_unit(algebra);
    let emb_l = embedding(algebra, &l);
    let emb_r = embedding(algebra, &r);

    let mut report = Report::new();
    report.push(Check::boolean("P_L + (B -> L_B(1)) = id", p_left.add(&q_left) == id));
    report.push(Check::boolean("P_R + (B -> R_B(1)) = id", p_right.add(&q_right) == id));
    report.push(Check::boolean("image(P_L) = End0", image(&p_left) == end0));
    report.push(Check::boolean("image(P_R) = End0", image(&p_right) == end0));
    report.push(Check::boolean("P_L(L_r) = 0", p_left.mul(&emb_l).is_zero()));
    report.push(Check::boolean("P_R(R_r) = 0", p_right.mul(&emb_r).is_zero()));
    report.push(Check::boolean("P_L(B)(1) = 0", ev.mul(&p_left).is_zero()));
    report.push(Check::boolean("P_R(B)(1) = 0", ev.mul(&p_right).is_zero()));
    report.push(Check::boolean("P_L idempotent", p_left.mul(&p_left) == p_left));
    report.push(Check::boolean("P_R idempotent", p_right.mul(&p_right) == p_right));
    for (name, emb, p) in [("L", &emb_l, &p_left), ("R", &emb_r, &p_right)] {
        report.push(Check::boolean(
            format!("0 -> R -{name}-> End -P_{name}-> End0 -> 0 exact"),
            short_exact(emb, p, &end0),
        ));
    }
    report.push(Check::boolean(
        "0 -> End0 -> End -ev-> R -> 0 exact",
        short_exact(&end0.inclusion(), &ev, &Subspace::full(f, n)),
    ));
    report.push(Check::boolean("ev o L = id", ev.mul(&emb_l) == Matrix::identity(f, n)));
    report.push(Check::boolean("ev o R = id", ev.mul(&emb_r) == Matrix::identity(f, n)));

    let regular = Bimodule::regular(algebra);
    let ltimes = end_ltimes(algebra);
    let rtimes = end_rtimes(algebra);
    let odot = end0_odot(algebra);
    let odot_left = end0_odot_left(algebra);
    let to_end0 = |m: &Matrix| -> Matrix {
        let cols: Vec<_> = m
            .columns()
            .iter()
            .map(|c| end0.coords(c).expect("lands in End0"))
            .collect();
        Matrix::from_columns(f, end0.dim(), &cols)
    };
    let p_left0 = to_end0(&p_left);
    let p_right0 = to_end0(&p_right);
    let incl = end0.inclusion();
    let ends = [("End^ltimes", &ltimes), ("End^rtimes", &rtimes)];
    let end0s = [("End0^odot", &odot), ("End0^odot'", &odot_left)];
    let mut table = Vec::new();
    let mut row = |map: &str, (sn, s): (&str, &Bimodule), (tn, t): (&str, &Bimodule), m: &Matrix| {
        let (left, right) = intertwines(s, t, m);
        table.push(IntertwiningRow {
            map: map.into(),
            source: sn.into(),
            target: tn.into(),
            left,
            right,
        });
    };
    for e in ends {
        row("L", ("R", &regular), e, &emb_l);
        row("R", ("R", &regular), e, &emb_r);
        row("ev", e, ("R", &regular), &ev);
        row("B -> L_B(1)", e, e, &q_left);
        row("B -> R_B(1)", e, e, &q_right);
        for e0 in end0s {
            row("P_L", e, e0, &p_left0);
            row("P_R", e, e0, &p_right0);
            row("incl", e0, e, &incl);
        }
    }
    report.push(Check::boolean(
        "P_L intertwines the left actions r.A",
        table
            .iter()
            .any(|r| r.map == "P_L" && r.source == "End^ltimes" && r.target == "End0^odot" && r.left),
    ));
    Ok(UniversalSplitting {
        end0,
        p_left,
        q_left,
        p_right,
        q_right,
        table,
        report,
    })
}

/// `0 -> A -i-> B -p-> C -> 0` with `C` given as the image subspace.
fn short_exact(i: &Matrix, p: &Matrix, c: &Subspace) -> bool {
    i.is_injective() && image(p) == *c && image(i) == kernel(p)
}

/// The universal Cartan pair module on the given side.
pub fn universal_pair_module(algebra: &Arc<Algebra>, side: Side) -> Bimodule {
    match side {
        Side::Right => end0_odot(algebra),
        Side::Left => end0_odot_left(algebra),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn dual() -> Arc<Algebra> {
        Arc::new(Algebra::truncated_polynomial(Field::Rational, 2).unwrap())
    }

    fn flat(m: &Matrix) -> Vec<crate::field::Scalar> {
        m.as_slice().to_vec()
    }

    #[test]
    fn composition_operators() {
        let a = Arc::new(Algebra::matrix_algebra(Field::Rational, 2).unwrap());
        let x = a.left_mul_basis(1);
        let y = a.right_mul_basis(2);
        let b = a.left_mul_basis(3).add(y);
        assert_eq!(post_compose(x).apply(&flat(&b)), flat(&x.mul(&b)));
        assert_eq!(pre_compose(x).apply(&flat(&b)), flat(&b.mul(x)));
    }

    #[test]
    fn dual_numbers_structures() {
        let a = dual();
        let s = end_structures(&a).unwrap();
        assert!(s.report.passed(), "{}", s.report);
        // L_x(1) = x, L_x(x) = 0, R_x = L_x
        let lx = s.left_embedding.matrix().column(1);
        assert_eq!(lx, flat(a.left_mul_basis(1)));
        assert_eq!(s.right_embedding.matrix().column(1), lx);
    }

    #[test]
    fn matrix_algebra_center() {
        let a = Arc::new(Algebra::matrix_algebra(Field::Rational, 2).unwrap());
        let s = end_structures(&a).unwrap();
        assert!(s.report.passed(), "{}", s.report);
        let meet = image(s.left_embedding.matrix()).intersection(&image(s.right_embedding.matrix()));
        assert_eq!(meet.dim(), 1);
        assert!(meet.contains(&flat(&Matrix::identity(a.field(), 4))));
    }

    #[test]
    fn odot_on_dual_numbers() {
        let a = dual();
        let f = a.field();
        let m = end0_odot(&a);
        assert_eq!(m.dim(), 2);
        assert!(m.is_valid());
        let end0 = end0_subspace(&a);
        // (A⊙x)(x) = A(x^2) - A(x)x = -A(x)x
        for k in 0..end0.dim() {
            let av = end0.basis_vectors()[k].clone();
            let am = Matrix::from_flat(f, 2, 2, av.clone());
            let acted = end0.vector(&m.right_basis(1).column(k));
            let acted = Matrix::from_flat(f, 2, 2, acted);
            let expected: Vec<_> = a
                .mul(&am.column(1), &a.basis_element(1))
                .iter()
                .map(|v| -v)
                .collect();
            assert_eq!(acted.column(1), expected);
        }
    }

    #[test]
    fn universal_cartan_dimensions() {
        for a in [
            dual(),
            Arc::new(Algebra::matrix_algebra(Field::Rational, 2).unwrap()),
            Arc::new(Algebra::cyclic_group_algebra(Field::Rational, 3).unwrap()),
        ] {
            let u = universal_cartan(&a).unwrap();
            assert!(u.report.passed(), "{}", u.report);
            assert_eq!(u.module.dim(), a.dim() * (a.dim() - 1));
        }
    }

    #[test]
    fn splitting_on_dual_numbers() {
        let a = dual();
        let s = universal_splitting(&a).unwrap();
        assert!(s.report.passed(), "{}", s.report);
        let row = s.lookup("P_L", "End^ltimes", "End0^odot").unwrap();
        assert!(row.left);
    }

    #[test]
    fn splitting_on_matrix_algebra() {
        let a = Arc::new(Algebra::matrix_algebra(Field::Rational, 2).unwrap());
        let s = universal_splitting(&a).unwrap();
        assert!(s.report.passed(), "{}", s.report);
        assert!(s.lookup("P_R", "End^rtimes", "End0^odot'").unwrap().right);
    }
}
