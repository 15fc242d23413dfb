//! Right and left duals of bimodules, transposes and double duals.
//!
//! A functional on `M` is an `n x m` matrix. The right dual `M^▷` consists of
//! the right-linear ones (`φ(m.r) = φ(m)r`) with
//! `(r.φ)(m) = rφ(m)` and `(φ.r)(m) = φ(r.m)`; the left dual `M^◁` of the
//! left-linear ones (`ξ(r.m) = rξ(m)`) with `(ξ.r)(m) = ξ(m)r` and
//! `(r.ξ)(m) = ξ(m.r)`. Both are stored as a subspace of the row-major
//! flattened functionals.

use std::fmt;
use std::str::FromStr;

use crate::algebra::basis_vector;
use crate::bimodule::{intertwines, solve_module_maps, unflatten, Bimodule, BimoduleMap, MapKind};
use crate::error::Error;
use crate::field::Scalar;
use crate::linalg::{Matrix, Subspace};
use crate::report::{Check, Report, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// The linearity a functional on this side must have.
    pub fn linearity(self) -> MapKind {
        match self {
            Side::Left => MapKind::Left,
            Side::Right => MapKind::Right,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::InvalidParameter(format!("unknown side `{s}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DualModule {
    side: Side,
    base: Bimodule,
    functionals: Subspace,
    module: Bimodule,
}

impl DualModule {
    fn build(base: &Bimodule, side: Side) -> DualModule {
        let a = base.algebra();
        let regular = Bimodule::regular(a);
        let functionals = solve_module_maps(base, &regular, side.linearity());
        let n = a.dim();
        let m = base.dim();
        let f = a.field();
        let act = |op: &dyn Fn(&Matrix) -> Matrix| -> Matrix {
            let cols: Vec<_> = functionals
                .basis_vectors()
                .iter()
                .map(|v| {
                    let image = op(&unflatten(f, v, n, m));
                    functionals.coords(image.as_slice()).expect("dual structure preserves linearity")
                })
                .collect();
            Matrix::from_columns(f, functionals.dim(), &cols)
        };
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        for i in 0..n {
            match side {
                Side::Right => {
                    left.push(act(&|phi| a.left_mul_basis(i).mul(phi)));
                    right.push(act(&|phi| phi.mul(base.left_basis(i))));
                }
                Side::Left => {
                    left.push(act(&|xi| xi.mul(base.right_basis(i))));
                    right.push(act(&|xi| a.right_mul_basis(i).mul(xi)));
                }
            }
        }
        let module = Bimodule::new(a.clone(), functionals.dim(), left, right)
            .expect("action shapes match the dual");
        DualModule {
            side,
            base: base.clone(),
            functionals,
            module,
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// The module being dualised.
    pub fn base(&self) -> &Bimodule {
        &self.base
    }

    /// The dual with its bimodule structure.
    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// The linear functionals, flattened row-major.
    pub fn functionals(&self) -> &Subspace {
        &self.functionals
    }

    /// The functional with the given dual coordinates, as an `n x m` matrix.
    pub fn functional(&self, coords: &[Scalar]) -> Matrix {
        let a = self.base.algebra();
        unflatten(a.field(), &self.functionals.vector(coords), a.dim(), self.base.dim())
    }

    /// Dual coordinates of an `n x m` functional, if it lies in the dual.
    pub fn coords(&self, functional: &Matrix) -> Option<Vec<Scalar>> {
        if functional.rows() != self.base.algebra().dim() || functional.cols() != self.base.dim() {
            return None;
        }
        self.functionals.coords(functional.as_slice())
    }

    /// `⟨⟨φ|m⟩⟩`.
    pub fn pair(&self, coords: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        self.functional(coords).apply(m)
    }

    /// Pairing matrix: column `k*dim(M) + j` holds `⟨⟨φ_k|m_j⟩⟩ ∈ R`.
    pub fn pairing(&self) -> Matrix {
        let a = self.base.algebra();
        let m = self.base.dim();
        let mut cols = Vec::with_capacity(self.dim() * m);
        for k in 0..self.dim() {
            let phi = self.functional(&basis(self, k));
            for j in 0..m {
                cols.push(phi.column(j));
            }
        }
        Matrix::from_columns(a.field(), a.dim(), &cols)
    }

    /// The adjunction identities between the dual structure and the
    /// pairing, on every basis triple `(r, φ, m)`.
    pub fn pairing_report(&self) -> Report {
        let a = self.base.algebra();
        let n = a.dim();
        let d = self.dim();
        let mut outer_left = Vec::new();
        let mut outer_right = Vec::new();
        let mut inner = Vec::new();
        for k in 0..d {
            let phi = self.functional(&basis(self, k));
            for i in 0..n {
                let left_phi = self.functional(&self.module.left_basis(i).column(k));
                let right_phi = self.functional(&self.module.right_basis(i).column(k));
                for j in 0..self.base.dim() {
                    let mj = basis_vector(a.field(), self.base.dim(), j);
                    let value = phi.apply(&mj);
                    let at = vec![i, k, j];
                    match self.side {
                        Side::Right => {
                            // ⟨r.φ|m⟩ = r⟨φ|m⟩
                            if left_phi.apply(&mj) != a.left_mul_basis(i).apply(&value) {
                                outer_left.push(violation(&at, "<r.phi|m> != r<phi|m>"));
                            }
                            // ⟨φ|m.r⟩ = ⟨φ|m⟩r
                            if phi.apply(&self.base.right_basis(i).apply(&mj)) != a.right_mul_basis(i).apply(&value) {
                                outer_right.push(violation(&at, "<phi|m.r> != <phi|m>r"));
                            }
                            // ⟨φ.r|m⟩ = ⟨φ|r.m⟩
                            if right_phi.apply(&mj) != phi.apply(&self.base.left_basis(i).apply(&mj)) {
                                inner.push(violation(&at, "<phi.r|m> != <phi|r.m>"));
                            }
                        }
                        Side::Left => {
                            // ⟨ξ|r.m⟩ = r⟨ξ|m⟩
                            if phi.apply(&self.base.left_basis(i).apply(&mj)) != a.left_mul_basis(i).apply(&value) {
                                outer_left.push(violation(&at, "<xi|r.m> != r<xi|m>"));
                            }
                            // ⟨ξ.r|m⟩ = ⟨ξ|m⟩r
                            if right_phi.apply(&mj) != a.right_mul_basis(i).apply(&value) {
                                outer_right.push(violation(&at, "<xi.r|m> != <xi|m>r"));
                            }
                            // ⟨r.ξ|m⟩ = ⟨ξ|m.r⟩
                            if left_phi.apply(&mj) != phi.apply(&self.base.right_basis(i).apply(&mj)) {
                                inner.push(violation(&at, "<r.xi|m> != <xi|m.r>"));
                            }
                        }
                    }
                }
            }
        }
        let mut report = Report::new();
        report.push(Check::from_violations("pairing: left adjunction", outer_left));
        report.push(Check::from_violations("pairing: right adjunction", outer_right));
        report.push(Check::from_violations("pairing: inner adjunction", inner));
        report.extend(self.module.check());
        report
    }
}

fn basis(dual: &DualModule, k: usize) -> Vec<Scalar> {
    basis_vector(dual.base.algebra().field(), dual.dim(), k)
}

fn violation(at: &[usize], message: &str) -> Violation {
    Violation {
        at: at.to_vec(),
        message: message.to_string(),
    }
}

pub fn right_dual(m: &Bimodule) -> DualModule {
    DualModule::build(m, Side::Right)
}

pub fn left_dual(m: &Bimodule) -> DualModule {
    DualModule::build(m, Side::Left)
}

pub fn dual(m: &Bimodule, side: Side) -> DualModule {
    DualModule::build(m, side)
}

/// `Ψ^▷(a) = a∘Ψ` (or `Ψ^◁`) from the dual of the target to the dual of the
/// source.
///
/// A right transpose needs `Ψ` right-linear and is always a left-module map;
/// it is a bimodule map when `Ψ` is. Symmetrically on the left.
pub fn transpose_between(
    psi: &BimoduleMap,
    target_dual: &DualModule,
    source_dual: &DualModule,
) -> Result<BimoduleMap, Error> {
    let side = target_dual.side;
    if source_dual.side != side {
        return Err(Error::InvalidParameter("duals taken on different sides".into()));
    }
    if target_dual.base != *psi.target() || source_dual.base != *psi.source() {
        return Err(Error::InvalidParameter("duals do not match the map".into()));
    }
    let needed = side.linearity();
    let kind = psi.kind();
    let has = match side {
        Side::Left => kind.has_left(),
        Side::Right => kind.has_right(),
    };
    if !has {
        return Err(Error::NotIntertwining(match side {
            Side::Right => "right transpose needs a right-module map",
            Side::Left => "left transpose needs a left-module map",
        }));
    }
    let f = psi.matrix().field();
    let cols = (0..target_dual.dim())
        .map(|k| {
            let a = target_dual.functional(&basis(target_dual, k));
            source_dual
                .coords(&a.mul(psi.matrix()))
                .ok_or(Error::NotIntertwining("transpose leaves the dual"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let matrix = Matrix::from_columns(f, source_dual.dim(), &cols);
    let result_kind = if kind == MapKind::Bi {
        MapKind::Bi
    } else {
        match needed {
            MapKind::Right => MapKind::Left,
            _ => MapKind::Right,
        }
    };
    BimoduleMap::new(target_dual.module.clone(), source_dual.module.clone(), matrix, result_kind)
}

/// The transpose together with the two duals it runs between.
#[derive(Clone, Debug)]
pub struct Transpose {
    pub target_dual: DualModule,
    pub source_dual: DualModule,
    pub map: BimoduleMap,
}

pub fn transpose(psi: &BimoduleMap, side: Side) -> Result<Transpose, Error> {
    let target_dual = dual(psi.target(), side);
    let source_dual = dual(psi.source(), side);
    let map = transpose_between(psi, &target_dual, &source_dual)?;
    Ok(Transpose {
        target_dual,
        source_dual,
        map,
    })
}

/// `m -> (φ -> φ(m))` from `M` into the opposite-side dual of its dual.
#[derive(Clone, Debug)]
pub struct DoubleDual {
    pub first: DualModule,
    pub second: DualModule,
    pub map: BimoduleMap,
}

impl DoubleDual {
    pub fn is_torsionless(&self) -> bool {
        self.map.is_injective()
    }

    pub fn is_reflexive(&self) -> bool {
        self.map.is_isomorphism()
    }
}

/// For `side = Right`, `M -> (M^▷)^◁`; for `Left`, `M -> (M^◁)^▷`.
pub fn double_dual_map(m: &Bimodule, side: Side) -> Result<DoubleDual, Error> {
    let first = dual(m, side);
    let second = dual(&first.module, side.opposite());
    let f = m.algebra().field();
    let n = m.algebra().dim();
    let mut cols = Vec::with_capacity(m.dim());
    for j in 0..m.dim() {
        // ev_j has column k equal to φ_k(m_j)
        let ev_cols: Vec<_> = (0..first.dim())
            .map(|k| first.functional(&basis(&first, k)).column(j))
            .collect();
        let ev = Matrix::from_columns(f, n, &ev_cols);
        cols.push(
            second
                .coords(&ev)
                .ok_or(Error::NotIntertwining("evaluation is not a dual functional"))?,
        );
    }
    let matrix = Matrix::from_columns(f, second.dim(), &cols);
    let map = BimoduleMap::new(m.clone(), second.module.clone(), matrix, MapKind::Bi)?;
    Ok(DoubleDual { first, second, map })
}

pub fn is_torsionless(m: &Bimodule, side: Side) -> Result<bool, Error> {
    Ok(double_dual_map(m, side)?.is_torsionless())
}

pub fn is_reflexive(m: &Bimodule, side: Side) -> Result<bool, Error> {
    Ok(double_dual_map(m, side)?.is_reflexive())
}

/// Which actions a transpose intertwines, for reports.
pub fn transpose_kind(t: &Transpose) -> (bool, bool) {
    intertwines(t.map.source(), t.map.target(), t.map.matrix())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::Algebra;
    use crate::braiding::{left_structure_from_braiding, BraidingDirection, FreeModuleBraiding};
    use crate::calculus::UniversalCalculus;
    use crate::field::Field;

    fn dual_numbers() -> Arc<Algebra> {
        Arc::new(Algebra::truncated_polynomial(Field::Rational, 2).unwrap())
    }

    #[test]
    fn dual_of_regular_is_regular() {
        let a = Arc::new(Algebra::matrix_algebra(Field::Rational, 2).unwrap());
        let reg = Bimodule::regular(&a);
        for side in [Side::Left, Side::Right] {
            let d = dual(&reg, side);
            assert_eq!(d.dim(), 4);
            assert!(d.pairing_report().passed(), "{}", d.pairing_report());
        }
        // φ ↦ φ(1) identifies (R_R)^▷ with R as left modules
        let d = right_dual(&reg);
        let cols: Vec<_> = (0..4).map(|k| d.pair(&basis(&d, k), a.unit())).collect();
        let eval = Matrix::from_columns(a.field(), 4, &cols);
        let m = BimoduleMap::new(d.module().clone(), reg.clone(), eval, MapKind::Left).unwrap();
        assert!(m.is_isomorphism());
    }

    #[test]
    fn dual_of_free_module() {
        let a = dual_numbers();
        let flip = FreeModuleBraiding::flip(&a, 3, BraidingDirection::LeftOverFree);
        let (free, _) = left_structure_from_braiding(&a, &flip).unwrap();
        assert_eq!(right_dual(&free).dim(), 6);
        assert!(double_dual_map(&free, Side::Right).unwrap().is_reflexive());
    }

    #[test]
    fn dual_of_universal_kernel() {
        let a = dual_numbers();
        let f = a.field();
        let u = UniversalCalculus::new(&a).unwrap();
        let d = right_dual(u.fodc().omega());
        assert_eq!(d.dim(), 2);
        // a functional is fixed by p = φ(x⊗1 - 1⊗x), and then φ(x⊗x) = px
        let dx = u.fodc().differential(1);
        let xx = u.kernel_coords(&basis_vector(f, 4, 3)).unwrap();
        for k in 0..2 {
            let phi = d.functional(&basis(&d, k));
            let p = phi.apply(&dx);
            assert_eq!(phi.apply(&xx), a.mul(&p, &a.basis_element(1)));
        }
        assert!(d.pairing_report().passed());
    }

    #[test]
    fn transpose_of_identity() {
        let a = dual_numbers();
        let u = UniversalCalculus::new(&a).unwrap();
        let id = u.fodc().omega().identity_map();
        for side in [Side::Left, Side::Right] {
            let t = transpose(&id, side).unwrap();
            assert_eq!(t.map.matrix(), &Matrix::identity(a.field(), t.map.matrix().rows()));
            assert_eq!(t.map.kind(), MapKind::Bi);
        }
    }

    #[test]
    fn transpose_of_epimorphism_is_injective() {
        let a = dual_numbers();
        let u = UniversalCalculus::new(&a).unwrap();
        let k = u.kaehler().unwrap();
        let t = transpose(&k.projection, Side::Right).unwrap();
        assert!(t.map.is_injective());
    }

    #[test]
    fn right_only_map_has_left_transpose() {
        let a = Arc::new(Algebra::matrix_algebra(Field::Rational, 2).unwrap());
        let u = UniversalCalculus::new(&a).unwrap();
        let mu = BimoduleMap::new(u.bifree().clone(), Bimodule::regular(&a), a.mu_map(), MapKind::Bi).unwrap();
        let right_only = BimoduleMap::new(mu.source().clone(), mu.target().clone(), mu.matrix().clone(), MapKind::Right).unwrap();
        let t = transpose(&right_only, Side::Right).unwrap();
        assert!(t.map.kind().has_left());
        assert!(matches!(
            transpose(&right_only, Side::Left),
            Err(Error::NotIntertwining(_))
        ));
    }

    #[test]
    fn double_dual_of_kernel() {
        let a = dual_numbers();
        let u = UniversalCalculus::new(&a).unwrap();
        let dd = double_dual_map(u.fodc().omega(), Side::Right).unwrap();
        assert!(dd.is_torsionless());
        assert_eq!(dd.is_reflexive(), dd.second.dim() == 2);
    }

    #[test]
    fn side_parses() {
        assert_eq!("left".parse::<Side>().unwrap(), Side::Left);
        assert!("up".parse::<Side>().is_err());
    }
}
