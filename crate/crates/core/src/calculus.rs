//! First-order differential calculi.
//!
//! A calculus is a bimodule `omega` with a linear map `d: R -> omega` that
//! obeys the Leibniz rule and whose image generates `omega` as a bimodule.
//! Every calculus is a quotient of the universal one on `ker mu ⊂ R⊗R`,
//! which is also realised on `R̄⊗R` and `R⊗R̄` (with `R̄ = R/k1`) through the
//! canonical braidings.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::bimodule::{
    add_intertwining_equations, find_splitting, random_elements, unflatten, Bimodule, BimoduleMap,
    MapKind, Splitting,
};
use crate::braiding::{
    left_structure_from_braiding, right_structure_from_braiding, BraidingDirection,
    FreeModuleBraiding,
};
use crate::error::Error;
use crate::field::Scalar;
use crate::linalg::{kernel, quotient, AffineSolution, LinearSystem, Matrix, Quotient, Subspace};
use crate::report::{Check, Report, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fodc {
    omega: Bimodule,
    d: Matrix,
}

impl Fodc {
    /// Pairs a bimodule with a differential; shapes only, see [`Fodc::validate`].
    pub fn new(omega: Bimodule, d: Matrix) -> Result<Self, Error> {
        let n = omega.algebra().dim();
        if d.rows() != omega.dim() || d.cols() != n {
            return Err(Error::DimensionMismatch {
                context: "differential matrix".into(),
                expected: omega.dim() * n,
                found: d.rows() * d.cols(),
            });
        }
        Ok(Fodc { omega, d })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.omega.algebra()
    }

    pub fn omega(&self) -> &Bimodule {
        &self.omega
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn dim(&self) -> usize {
        self.omega.dim()
    }

    /// `d(e_i)`.
    pub fn differential(&self, i: usize) -> Vec<Scalar> {
        self.d.column(i)
    }

    /// Bimodule axioms, Leibniz on basis pairs, `d(1) = 0`, and generation.
    pub fn validate(&self) -> Report {
        let a = self.algebra();
        let n = a.dim();
        let mut report = Report::new();
        let bimodule = self.omega.check();
        let bad: Vec<_> = bimodule
            .failures()
            .map(|c| Violation {
                at: vec![],
                message: c.name.clone(),
            })
            .collect();
        report.push(Check::from_violations("bimodule axioms", bad));

        let mut leibniz = Vec::new();
        for i in 0..n {
            let di = self.differential(i);
            for j in 0..n {
                let lhs = self.d.apply(&a.basis_product(i, j));
                let rhs: Vec<Scalar> = self
                    .omega
                    .right_basis(j)
                    .apply(&di)
                    .iter()
                    .zip(self.omega.left_basis(i).apply(&self.differential(j)))
                    .map(|(x, y)| x + &y)
                    .collect();
                if lhs != rhs {
                    leibniz.push(Violation {
                        at: vec![i, j],
                        message: format!(
                            "d({a}*{b}) != d({a}).{b} + {a}.d({b})",
                            a = a.label(i),
                            b = a.label(j)
                        ),
                    });
                }
            }
        }
        report.push(Check::from_violations("leibniz", leibniz));

        let d1 = self.d.apply(a.unit());
        report.push(Check::boolean("d(1) = 0", d1.iter().all(Scalar::is_zero)));

        let generated = self.generated();
        report.push(
            Check::boolean("generation", generated.is_full())
                .with_detail(format!("image of d generates {} of {} dimensions", generated.dim(), self.dim())),
        );
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }

    /// Subbimodule generated by `d(R)`.
    pub fn generated(&self) -> Subspace {
        self.omega.closure(&self.d.columns())
    }

    /// Right-module span of `d(r).s`, which equals the generated bimodule
    /// whenever Leibniz holds.
    pub fn right_generated(&self) -> Subspace {
        let n = self.algebra().dim();
        let f = self.algebra().field();
        let mut vecs = Vec::new();
        for i in 0..n {
            let di = self.differential(i);
            for s in 0..n {
                vecs.push(self.omega.right_basis(s).apply(&di));
            }
        }
        Subspace::span(f, self.dim(), vecs)
    }
}

/// The universal calculus `d_mu r = r⊗1 - 1⊗r` on `ker mu`.
#[derive(Clone, Debug)]
pub struct UniversalCalculus {
    algebra: Arc<Algebra>,
    bifree: Bimodule,
    kernel: Subspace,
    fodc: Fodc,
}

impl UniversalCalculus {
    pub fn new(algebra: &Arc<Algebra>) -> Result<Self, Error> {
        let n = algebra.dim();
        let f = algebra.field();
        let bifree = Bimodule::bifree_square(algebra);
        let kernel = kernel(&algebra.mu_map());
        let omega = bifree.restrict(&kernel)?;
        let u = algebra.unit();
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let e = algebra.basis_element(i);
            let dm = sub(&tensor(&e, u), &tensor(u, &e));
            cols.push(kernel.coords(&dm).expect("d_mu lands in ker mu"));
        }
        let d = Matrix::from_columns(f, kernel.dim(), &cols);
        Ok(UniversalCalculus {
            algebra: algebra.clone(),
            bifree,
            kernel,
            fodc: Fodc::new(omega, d)?,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    /// `R⊗R` with its outer actions.
    pub fn bifree(&self) -> &Bimodule {
        &self.bifree
    }

    /// `ker mu` as a subspace of `R⊗R`.
    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn fodc(&self) -> &Fodc {
        &self.fodc
    }

    /// Inclusion `ker mu -> R⊗R` as a bimodule map.
    pub fn inclusion(&self) -> BimoduleMap {
        BimoduleMap::new(
            self.fodc.omega.clone(),
            self.bifree.clone(),
            self.kernel.inclusion(),
            MapKind::Bi,
        )
        .expect("ker mu is a subbimodule")
    }

    /// Kernel coordinates of an element of `R⊗R`.
    pub fn kernel_coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.kernel.coords(v)
    }

    /// Quotient of the universal calculus by the subbimodule generated by
    /// `gens` (given in `R⊗R` coordinates).
    pub fn quotient(&self, gens: &[Vec<Scalar>]) -> Result<QuotientCalculus, Error> {
        let n2 = self.bifree.dim();
        let mut coords = Vec::with_capacity(gens.len());
        for (index, g) in gens.iter().enumerate() {
            if g.len() != n2 {
                return Err(Error::DimensionMismatch {
                    context: format!("generator {index}"),
                    expected: n2,
                    found: g.len(),
                });
            }
            coords.push(self.kernel.coords(g).ok_or(Error::OutsideKernel { index })?);
        }
        let relations = self.fodc.omega.closure(&coords);
        let (omega, projection) = self.fodc.omega.quotient(&relations)?;
        let d = projection.matrix().mul(&self.fodc.d);
        Ok(QuotientCalculus {
            fodc: Fodc::new(omega, d)?,
            relations,
            projection,
        })
    }

    /// The bimodule epimorphism `pi: ker mu -> omega` with `d = pi ∘ d_mu`,
    /// given by `pi(sum r_i⊗s_i) = sum d(r_i).s_i`.
    pub fn projection_onto(&self, f: &Fodc) -> Result<BimoduleMap, Error> {
        if f.algebra() != &self.algebra && **f.algebra() != *self.algebra {
            return Err(Error::InvalidFodc("calculus over a different algebra".into()));
        }
        let report = f.validate();
        if !report.passed() {
            let names: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
            return Err(Error::InvalidFodc(names.join(", ")));
        }
        let n = self.algebra.dim();
        let fld = self.algebra.field();
        let mut on_tensors = Matrix::zeros(fld, f.dim(), n * n);
        for a in 0..n {
            let da = f.differential(a);
            for b in 0..n {
                let col = f.omega.right_basis(b).apply(&da);
                for (row, v) in col.iter().enumerate() {
                    on_tensors[(row, a * n + b)] = v.clone();
                }
            }
        }
        let pi = BimoduleMap::new(
            self.fodc.omega.clone(),
            f.omega.clone(),
            on_tensors.mul(&self.kernel.inclusion()),
            MapKind::Bi,
        )?;
        if !pi.is_surjective() {
            return Err(Error::NotSurjective {
                rank: pi.matrix().rank(),
                codomain: f.dim(),
            });
        }
        if pi.matrix().mul(&self.fodc.d) != f.d {
            return Err(Error::InvalidFodc("d differs from pi o d_mu".into()));
        }
        Ok(pi)
    }

    /// `ker mu / (ker mu)^2` for commutative algebras, the product taken in
    /// the algebra `R⊗R`.
    pub fn kaehler(&self) -> Result<QuotientCalculus, Error> {
        if !self.algebra.is_commutative() {
            return Err(Error::NotCommutative);
        }
        let basis = self.kernel.basis_vectors();
        let mut products = Vec::new();
        for (i, x) in basis.iter().enumerate() {
            for y in &basis[i..] {
                products.push(tensor_algebra_product(&self.algebra, x, y));
            }
        }
        let square = Subspace::span(self.algebra.field(), self.bifree.dim(), products);
        self.quotient(&square.basis_vectors())
    }

    /// The isomorphic presentations on `R̄⊗R` and `R⊗R̄`.
    pub fn barred(&self) -> Result<BarredPresentations, Error> {
        BarredPresentations::new(&self.algebra)
    }
}

pub fn universal_kernel_calculus(algebra: &Arc<Algebra>) -> Result<UniversalCalculus, Error> {
    UniversalCalculus::new(algebra)
}

/// A calculus presented as `ker mu / relations`.
#[derive(Clone, Debug)]
pub struct QuotientCalculus {
    pub fodc: Fodc,
    /// The relation subbimodule, in `ker mu` coordinates.
    pub relations: Subspace,
    pub projection: BimoduleMap,
}

pub fn quotient_fodc(u: &UniversalCalculus, gens: &[Vec<Scalar>]) -> Result<QuotientCalculus, Error> {
    u.quotient(gens)
}

pub fn kaehler_calculus(u: &UniversalCalculus) -> Result<QuotientCalculus, Error> {
    u.kaehler()
}

pub fn universal_projection(u: &UniversalCalculus, f: &Fodc) -> Result<BimoduleMap, Error> {
    u.projection_onto(f)
}

/// The calculi `D⊗1: R -> R̄⊗R` (left structure from `chi`) and
/// `1⊗D: R -> R⊗R̄` (right structure from `gamma`), with the maps relating
/// them to `ker mu`.
///
/// `R̄` has the coordinates of `R / span{1}` given by the non-pivot columns
/// of the unit; for the builtin algebras these are the non-unit basis
/// elements.
#[derive(Clone, Debug)]
pub struct BarredPresentations {
    /// `D: R -> R̄` and its section `D0`.
    pub bar: Quotient,
    pub chi_calculus: Fodc,
    pub gamma_calculus: Fodc,
    /// `r̄⊗s -> r⊗s - 1⊗rs`, from `R̄⊗R` to `R⊗R`.
    pub iota: Matrix,
    /// `r⊗t̄ -> rt⊗1 - r⊗t`, from `R⊗R̄` to `R⊗R`.
    pub tau: Matrix,
    /// `r⊗s̄ -> (rs)‾⊗1 - r̄⊗s`.
    pub chi: FreeModuleBraiding,
    /// `r̄⊗s -> 1⊗(rs)‾ - r⊗s̄`.
    pub gamma: FreeModuleBraiding,
}

impl BarredPresentations {
    pub fn new(algebra: &Arc<Algebra>) -> Result<Self, Error> {
        let n = algebra.dim();
        let f = algebra.field();
        let bar = quotient(n, &algebra.unit_subspace())?;
        let k = bar.dim();
        let u = algebra.unit().to_vec();
        let proj = |r: &[Scalar]| bar.projection.apply(r);
        let rep = |a: usize| bar.section.column(a);

        // R⊗V at i*k + a, V⊗R at a*n + i; V = R̄
        let mut chi = Matrix::zeros(f, k * n, n * k);
        let mut gamma = Matrix::zeros(f, n * k, k * n);
        let mut iota = Matrix::zeros(f, n * n, k * n);
        let mut tau = Matrix::zeros(f, n * n, n * k);
        for i in 0..n {
            let e = algebra.basis_element(i);
            for a in 0..k {
                let s = rep(a);
                let es = algebra.mul(&e, &s);
                let se = algebra.mul(&s, &e);
                set_column(&mut chi, i * k + a, &sub(&tensor(&proj(&es), &u), &tensor(&proj(&e), &s)));
                set_column(&mut gamma, a * n + i, &sub(&tensor(&u, &proj(&se)), &tensor(&s, &proj(&e))));
                set_column(&mut iota, a * n + i, &sub(&tensor(&s, &e), &tensor(&u, &se)));
                set_column(&mut tau, i * k + a, &sub(&tensor(&es, &u), &tensor(&e, &s)));
            }
        }
        let chi = FreeModuleBraiding::new(algebra, k, BraidingDirection::LeftOverFree, chi)?;
        let gamma = FreeModuleBraiding::new(algebra, k, BraidingDirection::RightOverFree, gamma)?;
        let (chi_module, _) = left_structure_from_braiding(algebra, &chi)?;
        let (gamma_module, _) = right_structure_from_braiding(algebra, &gamma)?;

        let mut d_chi = Matrix::zeros(f, k * n, n);
        let mut d_gamma = Matrix::zeros(f, n * k, n);
        for i in 0..n {
            let bar_e = proj(&algebra.basis_element(i));
            set_column(&mut d_chi, i, &tensor(&bar_e, &u));
            set_column(&mut d_gamma, i, &tensor(&u, &bar_e));
        }
        Ok(BarredPresentations {
            bar,
            chi_calculus: Fodc::new(chi_module, d_chi)?,
            gamma_calculus: Fodc::new(gamma_module, d_gamma)?,
            iota,
            tau,
            chi,
            gamma,
        })
    }

    /// `iota` as a bimodule map `R̄⊗R -> ker mu`.
    pub fn iota_onto_kernel(&self, u: &UniversalCalculus) -> Result<BimoduleMap, Error> {
        into_kernel(u, &self.chi_calculus, &self.iota)
    }

    /// `tau` as a bimodule map `R⊗R̄ -> ker mu`.
    pub fn tau_onto_kernel(&self, u: &UniversalCalculus) -> Result<BimoduleMap, Error> {
        into_kernel(u, &self.gamma_calculus, &self.tau)
    }

    /// `gamma` as a bimodule map `R̄⊗R -> R⊗R̄`.
    pub fn gamma_iso(&self) -> Result<BimoduleMap, Error> {
        BimoduleMap::new(
            self.chi_calculus.omega.clone(),
            self.gamma_calculus.omega.clone(),
            self.gamma.matrix.clone(),
            MapKind::Bi,
        )
    }

    /// Checks that the three universal calculi are isomorphic through the
    /// braidings, `iota` and `tau`, as exact matrix identities.
    pub fn verify(&self, u: &UniversalCalculus) -> Report {
        let mut report = Report::new();
        let f = u.algebra.field();
        let size = self.iota.cols();
        let id = Matrix::identity(f, size);
        report.push(Check::boolean(
            "chi o gamma = id",
            self.chi.matrix.mul(&self.gamma.matrix) == id,
        ));
        report.push(Check::boolean(
            "gamma o chi = id",
            self.gamma.matrix.mul(&self.chi.matrix) == id,
        ));
        report.push(Check::boolean("tau o gamma = iota", self.tau.mul(&self.gamma.matrix) == self.iota));
        report.push(Check::boolean("chi presentation is a calculus", self.chi_calculus.is_valid()));
        report.push(Check::boolean("gamma presentation is a calculus", self.gamma_calculus.is_valid()));

        let iso_check = |name: &str, map: Result<BimoduleMap, Error>, d_src: &Matrix, d_tgt: &Matrix| {
            let ok = match map {
                Ok(m) => m.is_isomorphism() && &m.matrix().mul(d_src) == d_tgt,
                Err(_) => false,
            };
            Check::boolean(name, ok)
        };
        report.push(iso_check(
            "iota: chi presentation ~= ker mu",
            self.iota_onto_kernel(u),
            &self.chi_calculus.d,
            &u.fodc.d,
        ));
        report.push(iso_check(
            "gamma: chi presentation ~= gamma presentation",
            self.gamma_iso(),
            &self.chi_calculus.d,
            &self.gamma_calculus.d,
        ));
        report.push(iso_check(
            "tau: gamma presentation ~= ker mu",
            self.tau_onto_kernel(u),
            &self.gamma_calculus.d,
            &u.fodc.d,
        ));
        report
    }
}

pub fn barred_presentations(algebra: &Arc<Algebra>) -> Result<BarredPresentations, Error> {
    BarredPresentations::new(algebra)
}

fn into_kernel(u: &UniversalCalculus, source: &Fodc, map: &Matrix) -> Result<BimoduleMap, Error> {
    let cols = map
        .columns()
        .iter()
        .map(|c| u.kernel.coords(c).ok_or(Error::OutsideKernel { index: 0 }))
        .collect::<Result<Vec<_>, _>>()?;
    let m = Matrix::from_columns(u.algebra.field(), u.kernel.dim(), &cols);
    BimoduleMap::new(source.omega.clone(), u.fodc.omega.clone(), m, MapKind::Bi)
}

/// `d_omega(a) = a.omega - omega.a` on an arbitrary bimodule.
#[derive(Clone, Debug)]
pub struct InnerDifferential {
    pub d: Matrix,
    pub report: Report,
    /// Whether `d(R)` generates the whole bimodule.
    pub generates: bool,
    /// The calculus on the subbimodule generated by `d(R)`.
    pub generated: Fodc,
    /// That subbimodule, in the coordinates of the original module.
    pub generated_subspace: Subspace,
}

pub fn inner_differential(module: &Bimodule, omega: &[Scalar]) -> Result<InnerDifferential, Error> {
    if omega.len() != module.dim() {
        return Err(Error::DimensionMismatch {
            context: "inner differential element".into(),
            expected: module.dim(),
            found: omega.len(),
        });
    }
    let a = module.algebra();
    let f = a.field();
    let cols: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|i| sub(&module.left_basis(i).apply(omega), &module.right_basis(i).apply(omega)))
        .collect();
    let d = Matrix::from_columns(f, module.dim(), &cols);
    let candidate = Fodc::new(module.clone(), d.clone())?;
    let report = candidate.validate();
    let sub_space = candidate.generated();
    let restricted = module.restrict(&sub_space)?;
    let d_sub = Matrix::from_columns(
        f,
        sub_space.dim(),
        &cols
            .iter()
            .map(|c| sub_space.coords(c).expect("d lands in its own span"))
            .collect::<Vec<_>>(),
    );
    Ok(InnerDifferential {
        d,
        generates: sub_space.is_full(),
        report,
        generated: Fodc::new(restricted, d_sub)?,
        generated_subspace: sub_space,
    })
}

/// All morphisms `L: omega1 -> omega2` of calculi (bimodule maps with
/// `d2 = L ∘ d1`).
#[derive(Clone, Debug)]
pub struct FodcMorphisms {
    pub morphism: BimoduleMap,
    pub solutions: AffineSolution,
}

pub fn fodc_morphisms(f1: &Fodc, f2: &Fodc) -> Result<Option<FodcMorphisms>, Error> {
    if **f1.algebra() != **f2.algebra() {
        return Err(Error::InvalidParameter("calculi over different algebras".into()));
    }
    let a = f1.algebra();
    let fld = a.field();
    let (m1, m2, n) = (f1.dim(), f2.dim(), a.dim());
    let mut sys = LinearSystem::new(fld, m2 * m1);
    for i in 0..n {
        add_intertwining_equations(&mut sys, f1.omega.left_basis(i), f2.omega.left_basis(i));
        add_intertwining_equations(&mut sys, f1.omega.right_basis(i), f2.omega.right_basis(i));
    }
    // (L d1)[p][q] = sum_t L[p][t] d1[t][q] = d2[p][q]
    for p in 0..m2 {
        for q in 0..n {
            let mut coeffs = vec![fld.zero(); m2 * m1];
            for t in 0..m1 {
                coeffs[p * m1 + t] = f1.d[(t, q)].clone();
            }
            sys.add_equation(coeffs, f2.d[(p, q)].clone());
        }
    }
    let Some(solutions) = sys.solve() else {
        return Ok(None);
    };
    let morphism = BimoduleMap::new(
        f1.omega.clone(),
        f2.omega.clone(),
        unflatten(fld, &solutions.particular, m2, m1),
        MapKind::Bi,
    )?;
    Ok(Some(FodcMorphisms { morphism, solutions }))
}

/// A morphism of calculi that is bijective, if one exists.
pub fn fodc_isomorphism(f1: &Fodc, f2: &Fodc) -> Result<Option<BimoduleMap>, Error> {
    Ok(fodc_morphisms(f1, f2)?
        .map(|m| m.morphism)
        .filter(BimoduleMap::is_isomorphism))
}

/// Sections of `mu: R⊗R -> R` of each kind, and whether the canonical
/// one-sided sections `r -> r⊗1` and `r -> 1⊗r` are among them.
#[derive(Clone, Debug)]
pub struct MuSplittings {
    pub mu: BimoduleMap,
    pub bimodule: Option<Splitting>,
    pub left: Option<Splitting>,
    pub right: Option<Splitting>,
    pub r_tensor_one: bool,
    pub one_tensor_r: bool,
}

impl MuSplittings {
    /// The image of 1 under a bimodule section: an element `e` with
    /// `mu(e) = 1` and `r.e = e.r`.
    pub fn separability_idempotent(&self, u: &UniversalCalculus) -> Option<Vec<Scalar>> {
        self.bimodule.as_ref().map(|s| s.section.apply(u.algebra.unit()))
    }
}

pub fn mu_splittings(u: &UniversalCalculus) -> Result<MuSplittings, Error> {
    let a = &u.algebra;
    let f = a.field();
    let n = a.dim();
    let mu = BimoduleMap::new(u.bifree.clone(), Bimodule::regular(a), a.mu_map(), MapKind::Bi)?;
    let bimodule = find_splitting(&mu, MapKind::Bi)?;
    let left = find_splitting(&mu, MapKind::Left)?;
    let right = find_splitting(&mu, MapKind::Right)?;
    let un = a.unit();
    let r1: Vec<_> = (0..n).map(|i| tensor(&a.basis_element(i), un)).collect();
    let one_r: Vec<_> = (0..n).map(|i| tensor(un, &a.basis_element(i))).collect();
    let r_tensor_one = left
        .as_ref()
        .is_some_and(|s| s.admits(&Matrix::from_columns(f, n * n, &r1)));
    let one_tensor_r = right
        .as_ref()
        .is_some_and(|s| s.admits(&Matrix::from_columns(f, n * n, &one_r)));
    Ok(MuSplittings {
        mu,
        bimodule,
        left,
        right,
        r_tensor_one,
        one_tensor_r,
    })
}

/// One or two random elements of `ker mu`, in `R⊗R` coordinates.
pub fn random_generators<R: Rng>(u: &UniversalCalculus, rng: &mut R) -> Vec<Vec<Scalar>> {
    let count = rng.gen_range(1..=2);
    random_elements(&u.kernel, count, rng)
}

/// `count` generator sets drawn from a ChaCha stream seeded with `seed`.
pub fn seeded_generator_sets(u: &UniversalCalculus, seed: u64, count: usize) -> Vec<Vec<Vec<Scalar>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_generators(u, &mut rng)).collect()
}

/// `x ⊗ y` for coordinate vectors, indexed `i * len(y) + j`.
pub fn tensor(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(a * b);
        }
    }
    out
}

fn sub(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn set_column(m: &mut Matrix, c: usize, v: &[Scalar]) {
    for (r, x) in v.iter().enumerate() {
        m[(r, c)] = x.clone();
    }
}

/// Product in the algebra `R⊗R`: `(a⊗b)(c⊗d) = ac⊗bd`.
pub fn tensor_algebra_product(algebra: &Algebra, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let n = algebra.dim();
    let f = algebra.field();
    let mut out = vec![f.zero(); n * n];
    for (p, xv) in x.iter().enumerate() {
        if xv.is_zero() {
            continue;
        }
        for (q, yv) in y.iter().enumerate() {
            if yv.is_zero() {
                continue;
            }
            let coeff = xv * yv;
            let left = algebra.basis_product(p / n, q / n);
            let right = algebra.basis_product(p % n, q % n);
            for (i, l) in left.iter().enumerate() {
                if l.is_zero() {
                    continue;
                }
                for (j, r) in right.iter().enumerate() {
                    if !r.is_zero() {
                        out[i * n + j] = &out[i * n + j] + &(&coeff * &(l * r));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::basis_vector;
    use crate::field::Field;

    fn q() -> Field {
        Field::Rational
    }

    fn dual() -> Arc<Algebra> {
        Arc::new(Algebra::truncated_polynomial(q(), 2).unwrap())
    }

    #[test]
    fn universal_dual_numbers() {
        let a = dual();
        let u = UniversalCalculus::new(&a).unwrap();
        assert_eq!(u.fodc().dim(), 2);
        let report = u.fodc().validate();
        assert!(report.passed(), "{report}");
        // d_mu x = x⊗1 - 1⊗x, d_mu 1 = 0
        let f = q();
        let mut dx = vec![f.zero(); 4];
        dx[2] = f.one();
        dx[1] = -f.one();
        assert_eq!(u.kernel().vector(&u.fodc().differential(1)), dx);
        assert!(u.fodc().differential(0).iter().all(Scalar::is_zero));
        // 1⊗1 is not in ker mu, so d_mu is outer
        assert!(!u.kernel().contains(&basis_vector(f, 4, 0)));
    }

    #[test]
    fn universal_matrix_algebra_dimension() {
        let a = Arc::new(Algebra::matrix_algebra(q(), 2).unwrap());
        let u = UniversalCalculus::new(&a).unwrap();
        assert_eq!(u.fodc().dim(), 12);
    }

    #[test]
    fn barred_presentations_dual_numbers() {
        let a = dual();
        let u = UniversalCalculus::new(&a).unwrap();
        let b = u.barred().unwrap();
        // (D⊗1)(x) = x̄⊗1: R̄ = span{x̄}, so index 0*2 + 0
        assert_eq!(b.chi_calculus.differential(1), vec![q().one(), q().zero()]);
        let report = b.verify(&u);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn quotient_examples() {
        let a = dual();
        let f = q();
        let u = UniversalCalculus::new(&a).unwrap();
        let same = u.quotient(&[]).unwrap();
        assert_eq!(same.fodc, *u.fodc());

        let xx = basis_vector(f, 4, 3);
        let k = u.quotient(&[xx]).unwrap();
        assert_eq!(k.fodc.dim(), 1);
        assert!(k.fodc.is_valid());
        let dx = k.fodc.differential(1);
        assert!(!dx[0].is_zero());
        assert!(k.fodc.omega().left_basis(1).apply(&dx)[0].is_zero());
        assert!(k.fodc.omega().right_basis(1).apply(&dx)[0].is_zero());

        let all = u.quotient(&u.kernel().basis_vectors()).unwrap();
        assert_eq!(all.fodc.dim(), 0);
        assert!(all.fodc.is_valid());

        let outside = basis_vector(f, 4, 0);
        assert_eq!(u.quotient(&[outside]).unwrap_err(), Error::OutsideKernel { index: 0 });
    }

    #[test]
    fn projection_examples() {
        let a = dual();
        let f = q();
        let u = UniversalCalculus::new(&a).unwrap();
        let pi = u.projection_onto(u.fodc()).unwrap();
        assert_eq!(pi.matrix(), &Matrix::identity(f, 2));

        let k = u.quotient(&[basis_vector(f, 4, 3)]).unwrap();
        let pi = u.projection_onto(&k.fodc).unwrap();
        assert_eq!(pi.matrix(), k.projection.matrix());
        // pi(x⊗x) = d(x).x = 0
        let xx = u.kernel_coords(&basis_vector(f, 4, 3)).unwrap();
        assert!(pi.apply(&xx).iter().all(Scalar::is_zero));
    }

    #[test]
    fn projection_rejects_invalid_calculus() {
        let a = dual();
        let u = UniversalCalculus::new(&a).unwrap();
        let reg = Bimodule::regular(&a);
        let bad = Fodc::new(reg, Matrix::identity(q(), 2)).unwrap();
        assert!(matches!(u.projection_onto(&bad), Err(Error::InvalidFodc(_))));
    }

    #[test]
    fn inner_differential_examples() {
        let a = dual();
        let f = q();
        let bifree = Bimodule::bifree_square(&a);
        let inner = inner_differential(&bifree, &basis_vector(f, 4, 0)).unwrap();
        let u = UniversalCalculus::new(&a).unwrap();
        assert!(!inner.generates);
        assert_eq!(&inner.generated_subspace, u.kernel());
        assert!(inner.generated.is_valid());
        assert!(inner.report.passed_check("leibniz"));
        let mut dx = vec![f.zero(); 4];
        dx[2] = f.one();
        dx[1] = -f.one();
        assert_eq!(inner.d.column(1), dx);

        // a central element gives d = 0
        let reg = Bimodule::regular(&a);
        let central = inner_differential(&reg, a.unit()).unwrap();
        assert!(central.d.is_zero());
        assert!(!central.generates);
    }

    #[test]
    fn broken_leibniz_is_located() {
        let a = dual();
        let f = q();
        let zero = Matrix::zeros(f, 1, 1);
        let id = Matrix::identity(f, 1);
        let m = Bimodule::new(a.clone(), 1, vec![id.clone(), zero.clone()], vec![id, zero]).unwrap();
        // d(1) = 1 breaks Leibniz at (1, 1)
        let bad = Fodc::new(m, Matrix::from_i64(f, &[&[1, 0]])).unwrap();
        let report = bad.validate();
        let leibniz = report.check("leibniz").unwrap();
        assert!(leibniz.violations.iter().any(|v| v.at == [0, 0]));
        assert!(!report.passed_check("d(1) = 0"));
    }

    #[test]
    fn kaehler_dimensions() {
        let u2 = UniversalCalculus::new(&dual()).unwrap();
        assert_eq!(u2.kaehler().unwrap().fodc.dim(), 1);
        let a3 = Arc::new(Algebra::truncated_polynomial(q(), 3).unwrap());
        let u3 = UniversalCalculus::new(&a3).unwrap();
        let k3 = u3.kaehler().unwrap();
        assert_eq!(k3.fodc.dim(), 2);
        assert!(k3.fodc.omega().is_symmetric());
        let z3 = Arc::new(Algebra::cyclic_group_algebra(q(), 3).unwrap());
        assert_eq!(UniversalCalculus::new(&z3).unwrap().kaehler().unwrap().fodc.dim(), 0);
        let m2 = Arc::new(Algebra::matrix_algebra(q(), 2).unwrap());
        assert_eq!(
            UniversalCalculus::new(&m2).unwrap().kaehler().unwrap_err(),
            Error::NotCommutative
        );
    }

    #[test]
    fn morphisms_between_calculi() {
        let a = dual();
        let f = q();
        let u = UniversalCalculus::new(&a).unwrap();
        let id = fodc_morphisms(u.fodc(), u.fodc()).unwrap().unwrap();
        assert!(id.solutions.contains(Matrix::identity(f, 2).as_slice()));

        let k = u.kaehler().unwrap();
        let pi = fodc_morphisms(u.fodc(), &k.fodc).unwrap().unwrap();
        assert!(pi.solutions.contains(k.projection.matrix().as_slice()));
        assert!(fodc_morphisms(&k.fodc, u.fodc()).unwrap().is_none());
    }

    #[test]
    fn mu_sections() {
        let f = q();
        for (a, bi) in [
            (dual(), false),
            (Arc::new(Algebra::truncated_polynomial(f, 3).unwrap()), false),
            (Arc::new(Algebra::matrix_algebra(f, 2).unwrap()), true),
            (Arc::new(Algebra::cyclic_group_algebra(f, 3).unwrap()), true),
        ] {
            let u = UniversalCalculus::new(&a).unwrap();
            let s = mu_splittings(&u).unwrap();
            assert_eq!(s.bimodule.is_some(), bi, "{a}");
            assert!(s.r_tensor_one && s.one_tensor_r);
            if let Some(e) = s.separability_idempotent(&u) {
                assert_eq!(a.mu_map().apply(&e), a.unit());
                for i in 0..a.dim() {
                    assert_eq!(u.bifree().left_basis(i).apply(&e), u.bifree().right_basis(i).apply(&e));
                }
            }
        }
    }

    #[test]
    fn seeded_generators_are_reproducible() {
        let u = UniversalCalculus::new(&dual()).unwrap();
        let a = seeded_generator_sets(&u, 7, 5);
        assert_eq!(a, seeded_generator_sets(&u, 7, 5));
        for set in &a {
            assert!((1..=2).contains(&set.len()));
            assert!(set.iter().all(|g| u.kernel().contains(g)));
        }
    }
}
