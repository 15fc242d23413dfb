//! Cartan pairs: bimodules acting on the algebra by endomorphisms that
//! kill the unit, with a twisted Leibniz rule.
//!
//! The action is an `n² x dim X` matrix whose column `x` is the flattened
//! (row-major) endomorphism `X^↗`, so `X^↗(e_j)` is its column `j`.

use std::sync::Arc;

use crate::algebra::{basis_vector, Algebra};
use crate::bimodule::{Bimodule, BimoduleMap, MapKind};
use crate::calculus::Fodc;
use crate::duality::{dual, transpose_between, DualModule, Side};
use crate::endo::{end0_subspace, universal_pair_module};
use crate::error::Error;
use crate::field::Scalar;
use crate::linalg::{kernel, Matrix, Subspace};
use crate::report::{Check, Report, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanPair {
    side: Side,
    module: Bimodule,
    action: Matrix,
}

impl CartanPair {
    pub fn new(side: Side, module: Bimodule, action: Matrix) -> Result<Self, Error> {
        let n = module.algebra().dim();
        if action.rows() != n * n || action.cols() != module.dim() {
            return Err(Error::DimensionMismatch {
                context: "action matrix".into(),
                expected: n * n * module.dim(),
                found: action.rows() * action.cols(),
            });
        }
        Ok(CartanPair { side, module, action })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn action(&self) -> &Matrix {
        &self.action
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.module.algebra()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// The endomorphism of an element of the module, as an `n x n` matrix.
    pub fn endomorphism(&self, x: &[Scalar]) -> Matrix {
        let n = self.algebra().dim();
        Matrix::from_flat(self.algebra().field(), n, n, self.action.apply(x))
    }

    /// Image of the action, a subspace of the flattened endomorphisms.
    pub fn image(&self) -> Subspace {
        crate::linalg::image(&self.action)
    }

    /// Checks the module-map condition, the twisted Leibniz rule,
    /// injectivity and vanishing on the unit. For a commutative algebra
    /// acting through a symmetric module it also checks that every
    /// endomorphism is a derivation.
    pub fn validate(&self) -> Report {
        let a = self.algebra();
        let f = a.field();
        let n = a.dim();
        let dim = self.dim();
        let mut report = Report::new();
        let axioms: Vec<_> = self
            .module
            .check()
            .failures()
            .map(|c| Violation {
                at: vec![],
                message: c.name.clone(),
            })
            .collect();
        report.push(Check::from_violations("bimodule axioms", axioms));

        let ends: Vec<Matrix> = (0..dim)
            .map(|x| self.endomorphism(&basis_vector(f, dim, x)))
            .collect();
        let mut module_map = Vec::new();
        let mut leibniz = Vec::new();
        for i in 0..n {
            for (x, ax) in ends.iter().enumerate() {
                match self.side {
                    Side::Right => {
                        // (r.X)^↗ = L_r∘X^↗
                        let acted = self.endomorphism(&self.module.left_basis(i).column(x));
                        if acted != a.left_mul_basis(i).mul(ax) {
                            module_map.push(Violation {
                                at: vec![i, x],
                                message: format!("(r.X)^ != L_r o X^ for r = {}", a.label(i)),
                            });
                        }
                    }
                    Side::Left => {
                        // (Y.r)^↖ = R_r∘Y^↖
                        let acted = self.endomorphism(&self.module.right_basis(i).column(x));
                        if acted != a.right_mul_basis(i).mul(ax) {
                            module_map.push(Violation {
                                at: vec![i, x],
                                message: format!("(Y.r)^ != R_r o Y^ for r = {}", a.label(i)),
                            });
                        }
                    }
                }
            }
            for j in 0..n {
                let prod = a.basis_product(i, j);
                for (x, ax) in ends.iter().enumerate() {
                    let lhs = ax.apply(&prod);
                    let rhs: Vec<Scalar> = match self.side {
                        // X^↗(rs) = X^↗(r)s + (X.r)^↗(s)
                        Side::Right => {
                            let xr = self.endomorphism(&self.module.right_basis(i).column(x));
                            add(&a.mul(&ax.column(i), &a.basis_element(j)), &xr.column(j))
                        }
                        // Y^↖(rs) = rY^↖(s) + (s.Y)^↖(r)
                        Side::Left => {
                            let sy = self.endomorphism(&self.module.left_basis(j).column(x));
                            add(&a.mul(&a.basis_element(i), &ax.column(j)), &sy.column(i))
                        }
                    };
                    if lhs != rhs {
                        leibniz.push(Violation {
                            at: vec![i, j, x],
                            message: format!("twisted Leibniz fails on ({}, {})", a.label(i), a.label(j)),
                        });
                    }
                }
            }
        }
        report.push(Check::from_violations("action is a module map", module_map));
        report.push(Check::from_violations("twisted leibniz", leibniz));

        let rank = self.action.rank();
        report.push(
            Check::boolean("injective action", rank == dim)
                .with_detail(format!("rank {rank} of {dim}")),
        );
        let unit = a.unit();
        let at_unit: Vec<_> = ends
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.apply(unit).iter().all(Scalar::is_zero))
            .map(|(x, _)| Violation {
                at: vec![x],
                message: "endomorphism does not kill 1".into(),
            })
            .collect();
        report.push(Check::from_violations("action kills 1", at_unit));

        if a.is_commutative() && self.module.is_symmetric() {
            let derivations = derivations(a);
            let bad: Vec<_> = (0..dim)
                .filter(|&x| !derivations.contains(&self.action.column(x)))
                .map(|x| Violation {
                    at: vec![x],
                    message: "endomorphism is not a derivation".into(),
                })
                .collect();
            report.push(Check::from_violations("derivation", bad));
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }
}

fn add(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn validate_cartan_pair(cp: &CartanPair) -> Report {
    cp.validate()
}

/// The dual of a calculus: `X^↗(r) = ⟨⟨X|dr⟩⟩` on `Ω^▷` (right side) or
/// `Ω^◁` (left side).
#[derive(Clone, Debug)]
pub struct FodcCartan {
    pub dual: DualModule,
    pub pair: CartanPair,
}

pub fn cartan_from_fodc(f: &Fodc, side: Side) -> Result<FodcCartan, Error> {
    let report = f.validate();
    if !report.passed() {
        let names: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
        return Err(Error::InvalidFodc(names.join(", ")));
    }
    let a = f.algebra();
    let fld = a.field();
    let n = a.dim();
    let dual = dual(f.omega(), side);
    let cols: Vec<_> = (0..dual.dim())
        .map(|k| {
            dual.functional(&basis_vector(fld, dual.dim(), k))
                .mul(f.d())
                .as_slice()
                .to_vec()
        })
        .collect();
    let action = Matrix::from_columns(fld, n * n, &cols);
    let pair = CartanPair::new(side, dual.module().clone(), action)?;
    Ok(FodcCartan { dual, pair })
}

/// All `δ` with `δ(rs) = δ(r)s + rδ(s)`, as flattened endomorphisms.
pub fn derivations(a: &Algebra) -> Subspace {
    let n = a.dim();
    let f = a.field();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let prod = a.basis_product(i, j);
            let rj = a.right_mul_basis(j);
            let li = a.left_mul_basis(i);
            for p in 0..n {
                // component p of δ(e_i e_j) - δ(e_i)e_j - e_iδ(e_j)
                let mut row = vec![f.zero(); n * n];
                for (l, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        row[p * n + l] = &row[p * n + l] + c;
                    }
                }
                for q in 0..n {
                    let v = &rj[(p, q)];
                    if !v.is_zero() {
                        row[q * n + i] = &row[q * n + i] - v;
                    }
                    let w = &li[(p, q)];
                    if !w.is_zero() {
                        row[q * n + j] = &row[q * n + j] - w;
                    }
                }
                rows.push(row);
            }
        }
    }
    kernel(&Matrix::from_rows(f, n * n, rows))
}

/// Derivations of a commutative algebra as a symmetric Cartan pair with
/// `(rδ)(s) = rδ(s)`.
pub fn derivation_pair(a: &Arc<Algebra>) -> Result<CartanPair, Error> {
    if !a.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let der = derivations(a);
    let f = a.field();
    let mut left = Vec::with_capacity(a.dim());
    for i in 0..a.dim() {
        let op = crate::endo::post_compose(a.left_mul_basis(i));
        let cols = der
            .basis_vectors()
            .iter()
            .map(|v| der.coords(&op.apply(v)).ok_or(Error::NotSubbimodule))
            .collect::<Result<Vec<_>, _>>()?;
        left.push(Matrix::from_columns(f, der.dim(), &cols));
    }
    let module = Bimodule::new(a.clone(), der.dim(), left.clone(), left)?;
    CartanPair::new(Side::Right, module, der.inclusion())
}

/// Result of rebuilding a calculus from a Cartan pair.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    /// `X^◁` (or `Y^▷`) with `dr = (X -> X^↗(r))`.
    pub candidate: Fodc,
    pub dual: DualModule,
    pub report: Report,
    /// Whether the candidate is a calculus, i.e. `d(R)` generates.
    pub recovered: bool,
    /// The subbimodule generated by `d(R)`, in dual coordinates.
    pub generated: Subspace,
    /// The calculus on that subbimodule.
    pub generated_fodc: Fodc,
    /// Whether the transpose of the action, from the dual of the universal
    /// pair to the dual of the pair, is onto.
    pub action_transpose_surjective: bool,
}

pub fn reconstruct_fodc(cp: &CartanPair) -> Result<Reconstruction, Error> {
    let validity = cp.validate();
    if !validity.passed() {
        let names: Vec<_> = validity.failures().map(|c| c.name.clone()).collect();
        return Err(Error::InvalidCartanPair(names.join(", ")));
    }
    let a = cp.algebra();
    let f = a.field();
    let n = a.dim();
    let dim = cp.dim();
    let dual_side = cp.side.opposite();
    let dual = dual(&cp.module, dual_side);
    let mut cols = Vec::with_capacity(n);
    for r in 0..n {
        // column x of d(e_r) is X_x^↗(e_r)
        let fcols: Vec<_> = (0..dim)
            .map(|x| cp.endomorphism(&basis_vector(f, dim, x)).column(r))
            .collect();
        let functional = Matrix::from_columns(f, n, &fcols);
        cols.push(
            dual.coords(&functional)
                .ok_or(Error::InvalidCartanPair("evaluation is not a dual functional".into()))?,
        );
    }
    let d = Matrix::from_columns(f, dual.dim(), &cols);
    let candidate = Fodc::new(dual.module().clone(), d.clone())?;
    let mut report = candidate.validate();
    let generated = candidate.generated();
    let sub_module = dual.module().restrict(&generated)?;
    let sub_d = Matrix::from_columns(
        f,
        generated.dim(),
        &d.columns()
            .iter()
            .map(|c| generated.coords(c).expect("d lies in the generated part"))
            .collect::<Vec<_>>(),
    );
    let generated_fodc = Fodc::new(sub_module, sub_d)?;

    // the action as a bimodule map into the universal pair
    let end0 = end0_subspace(a);
    let universal = universal_pair_module(a, cp.side);
    let action_cols = cp
        .action
        .columns()
        .iter()
        .map(|c| end0.coords(c).ok_or(Error::InvalidCartanPair("action leaves End0".into())))
        .collect::<Result<Vec<_>, _>>()?;
    let action_map = BimoduleMap::new(
        cp.module.clone(),
        universal.clone(),
        Matrix::from_columns(f, end0.dim(), &action_cols),
        MapKind::Bi,
    )?;
    let universal_dual = crate::duality::dual(&universal, dual_side);
    let transposed = transpose_between(&action_map, &universal_dual, &dual)?;
    let action_transpose_surjective = transposed.is_surjective();
    report.push(
        Check::boolean("action transpose surjective", action_transpose_surjective)
            .with_detail(format!("rank {} of {}", transposed.matrix().rank(), dual.dim())),
    );
    let recovered = candidate.is_valid();
    Ok(Reconstruction {
        candidate,
        dual,
        report,
        recovered,
        generated,
        generated_fodc,
        action_transpose_surjective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{fodc_isomorphism, UniversalCalculus};
    use crate::endo::universal_cartan;
    use crate::field::Field;

    fn dual_numbers() -> Arc<Algebra> {
        Arc::new(Algebra::truncated_polynomial(Field::Rational, 2).unwrap())
    }

    #[test]
    fn derivation_dimensions() {
        let q = Field::Rational;
        assert_eq!(derivations(&Algebra::truncated_polynomial(q, 2).unwrap()).dim(), 1);
        assert_eq!(derivations(&Algebra::truncated_polynomial(q, 3).unwrap()).dim(), 2);
        assert_eq!(derivations(&Algebra::cyclic_group_algebra(q, 3).unwrap()).dim(), 0);
        assert_eq!(derivations(&Algebra::matrix_algebra(q, 2).unwrap()).dim(), 3);
    }

    #[test]
    fn derivation_of_dual_numbers_is_x_dx() {
        let a = dual_numbers();
        let der = derivations(&a);
        // δ(1) = 0, δ(x) = x: only entry (1, 1)
        let f = a.field();
        let expected = vec![f.zero(), f.zero(), f.zero(), f.one()];
        assert!(der.contains(&expected));
        let pair = derivation_pair(&a).unwrap();
        let report = pair.validate();
        assert!(report.passed(), "{report}");
        assert!(report.check("derivation").is_some());
    }

    #[test]
    fn universal_dual_numbers() {
        let a = dual_numbers();
        let f = a.field();
        let u = UniversalCalculus::new(&a).unwrap();
        let c = cartan_from_fodc(u.fodc(), Side::Right).unwrap();
        assert_eq!(c.pair.dim(), 2);
        assert!(c.pair.is_valid(), "{}", c.pair.validate());
        let dx = u.fodc().differential(1);
        for k in 0..2 {
            let x = basis_vector(f, 2, k);
            let p = c.dual.pair(&x, &dx);
            let end = c.pair.endomorphism(&x);
            assert_eq!(end.column(1), p);
            assert!(end.column(0).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn left_pairs_validate() {
        let a = Arc::new(Algebra::matrix_algebra(Field::Rational, 2).unwrap());
        let u = UniversalCalculus::new(&a).unwrap();
        let c = cartan_from_fodc(u.fodc(), Side::Left).unwrap();
        assert_eq!(c.pair.dim(), 12);
        assert!(c.pair.is_valid(), "{}", c.pair.validate());
    }

    #[test]
    fn kernel_in_action_is_reported() {
        let a = dual_numbers();
        let f = a.field();
        let id = Matrix::identity(f, 1);
        let zero = Matrix::zeros(f, 1, 1);
        let m = Bimodule::new(a.clone(), 1, vec![id.clone(), zero.clone()], vec![id, zero]).unwrap();
        let cp = CartanPair::new(Side::Right, m, Matrix::zeros(f, 4, 1)).unwrap();
        let report = cp.validate();
        assert!(!report.passed_check("injective action"));
        assert!(report.passed_check("twisted leibniz"));
    }

    #[test]
    fn zero_pair() {
        let a = dual_numbers();
        let u = UniversalCalculus::new(&a).unwrap();
        let zero = u.quotient(&u.kernel().basis_vectors()).unwrap();
        let c = cartan_from_fodc(&zero.fodc, Side::Right).unwrap();
        assert_eq!(c.pair.dim(), 0);
        assert!(c.pair.is_valid());
        let r = reconstruct_fodc(&c.pair).unwrap();
        assert!(r.recovered);
        assert_eq!(r.candidate.dim(), 0);
    }

    #[test]
    fn reconstruct_universal_dual_numbers() {
        let a = dual_numbers();
        let u = UniversalCalculus::new(&a).unwrap();
        let c = cartan_from_fodc(u.fodc(), Side::Right).unwrap();
        let r = reconstruct_fodc(&c.pair).unwrap();
        assert!(r.report.passed_check("leibniz"));
        if r.recovered {
            assert!(fodc_isomorphism(u.fodc(), &r.candidate).unwrap().is_some());
        }
        let full = universal_cartan(&a).unwrap();
        let pair = CartanPair::new(Side::Right, full.module.clone(), full.end0.inclusion()).unwrap();
        let r = reconstruct_fodc(&pair).unwrap();
        assert!(r.report.passed_check("leibniz"));
        assert!(r.generated_fodc.is_valid());
    }
}
