//! The invariant suite run by `ncalc report`, one section per criterion.

use std::sync::Arc;

use ncalc_core::braiding::{check_braiding_pair, left_structure_from_braiding, scaled_braiding};
use ncalc_core::calculus::{fodc_morphisms, mu_splittings, seeded_generator_sets, QuotientCalculus};
use ncalc_core::cartan::{cartan_from_fodc, derivations};
use ncalc_core::duality::{dual, transpose, transpose_between, Side};
use ncalc_core::endo::{universal_cartan, universal_splitting};
use ncalc_core::{
    Algebra, Bimodule, BimoduleMap, Check, Error, MapKind, Matrix, Report, UniversalCalculus,
    Violation,
};
use serde_json::json;

use crate::output::Section;

/// Random generator sets drawn per algebra.
pub const GENERATOR_SETS: usize = 20;

pub const TITLES: [&str; 10] = [
    "universal dimension",
    "three universal presentations",
    "quotients of the universal calculus",
    "Cartan pairs of calculi",
    "universal Cartan pair",
    "universal splitting",
    "sections of the multiplication",
    "commutative oracle",
    "duality functor",
    "braidings",
];

/// Shared inputs of the criteria for one algebra.
pub struct Suite {
    pub algebra: Arc<Algebra>,
    pub universal: UniversalCalculus,
    pub quotients: Vec<QuotientCalculus>,
}

impl Suite {
    pub fn new(algebra: &Arc<Algebra>, seed: u64) -> Result<Suite, Error> {
        let universal = UniversalCalculus::new(algebra)?;
        let quotients = seeded_generator_sets(&universal, seed, GENERATOR_SETS)
            .iter()
            .map(|g| universal.quotient(g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Suite {
            algebra: algebra.clone(),
            universal,
            quotients,
        })
    }

    pub fn run(&self, number: usize) -> Result<Section, Error> {
        let mut s = Section::new(format!("criterion {number}: {}", TITLES[number - 1]));
        match number {
            1 => self.universal_dimension(&mut s),
            2 => self.presentations(&mut s)?,
            3 => self.quotients(&mut s)?,
            4 => self.cartan_pairs(&mut s)?,
            5 => self.universal_cartan(&mut s)?,
            6 => self.splitting(&mut s)?,
            7 => self.mu_sections(&mut s)?,
            8 => self.commutative_oracle(&mut s)?,
            9 => self.duality(&mut s)?,
            10 => self.braidings(&mut s)?,
            _ => return Err(Error::InvalidParameter(format!("no criterion {number}"))),
        }
        Ok(s)
    }

    pub fn run_all(&self) -> Result<Vec<Section>, Error> {
        (1..=TITLES.len()).map(|k| self.run(k)).collect()
    }

    fn universal_dimension(&self, s: &mut Section) {
        let n = self.algebra.dim();
        let dim = self.universal.fodc().dim();
        s.fact("dim R", n);
        s.fact("dim ker mu", dim);
        s.report.push(Check::boolean("dim ker mu = n^2 - n", dim == n * n - n));
        s.report.push(Check::boolean(
            "1(x)1 outside ker mu",
            !self.universal.kernel().contains(&self.unit_tensor()),
        ));
        s.report.extend(self.universal.fodc().validate());
    }

    fn unit_tensor(&self) -> Vec<ncalc_core::Scalar> {
        ncalc_core::calculus::tensor(self.algebra.unit(), self.algebra.unit())
    }

    fn presentations(&self, s: &mut Section) -> Result<(), Error> {
        let b = self.universal.barred()?;
        s.fact("dim Rbar", b.bar.dim());
        s.report.extend(b.verify(&self.universal));
        Ok(())
    }

    fn quotients(&self, s: &mut Section) -> Result<(), Error> {
        let mut invalid = Vec::new();
        let mut projection = Vec::new();
        for (k, q) in self.quotients.iter().enumerate() {
            let report = q.fodc.validate();
            if !report.passed() {
                invalid.push(Violation {
                    at: vec![k],
                    message: format!("quotient {k} fails {}", failed_names(&report)),
                });
            }
            match self.universal.projection_onto(&q.fodc) {
                Ok(pi) if pi.is_surjective() && &pi.matrix().mul(self.universal.fodc().d()) == q.fodc.d() => {}
                Ok(_) => projection.push(Violation {
                    at: vec![k],
                    message: "projection is not an epimorphism with d = pi o d_mu".into(),
                }),
                Err(e) => projection.push(Violation {
                    at: vec![k],
                    message: e.to_string(),
                }),
            }
        }
        let dims: Vec<_> = self.quotients.iter().map(|q| q.fodc.dim()).collect();
        s.fact("generator sets", self.quotients.len());
        s.fact("quotient dimensions", json!(dims));
        s.report.push(Check::from_violations("quotients are calculi", invalid));
        s.report.push(Check::from_violations("universal projection", projection));
        Ok(())
    }

    fn cartan_pairs(&self, s: &mut Section) -> Result<(), Error> {
        let mut failures = Vec::new();
        let mut pairing = Vec::new();
        let calculi = std::iter::once(self.universal.fodc()).chain(self.quotients.iter().map(|q| &q.fodc));
        for (k, f) in calculi.enumerate() {
            let c = cartan_from_fodc(f, Side::Right)?;
            let report = c.pair.validate();
            if !report.passed() {
                failures.push(Violation {
                    at: vec![k],
                    message: format!("calculus {k} fails {}", failed_names(&report)),
                });
            }
            // X^(e_i) must equal <<X|d e_i>>, evaluated through the pairing
            for x in 0..c.pair.dim() {
                let coords = unit_vector(&self.algebra, c.pair.dim(), x);
                let end = c.pair.endomorphism(&coords);
                for i in 0..self.algebra.dim() {
                    if end.column(i) != c.dual.pair(&coords, &f.differential(i)) {
                        pairing.push(Violation {
                            at: vec![k, x, i],
                            message: "action differs from pairing with d".into(),
                        });
                    }
                }
            }
            if k == 0 {
                s.fact("dim universal Cartan pair", c.pair.dim());
            }
        }
        s.fact("calculi checked", self.quotients.len() + 1);
        s.report.push(Check::from_violations("Cartan pair axioms", failures));
        s.report.push(Check::from_violations("action is the pairing with d", pairing));
        Ok(())
    }

    fn universal_cartan(&self, s: &mut Section) -> Result<(), Error> {
        let n = self.algebra.dim();
        let c = universal_cartan(&self.algebra)?;
        let dual_dim = dual(self.universal.fodc().omega(), Side::Right).dim();
        s.fact("dim End0", c.module.dim());
        s.fact("dim (ker mu)^>", dual_dim);
        s.report.push(Check::boolean("dim End0 = dim (ker mu)^> = n(n-1)", c.module.dim() == dual_dim && dual_dim == n * (n - 1)));
        s.report.extend(c.report);
        Ok(())
    }

    fn splitting(&self, s: &mut Section) -> Result<(), Error> {
        let u = universal_splitting(&self.algebra)?;
        let table: Vec<_> = u.table.iter().map(|r| json!(r)).collect();
        s.fact("intertwining table", json!(table));
        s.report.extend(u.report);
        Ok(())
    }

    fn mu_sections(&self, s: &mut Section) -> Result<(), Error> {
        let m = mu_splittings(&self.universal)?;
        let a = &self.algebra;
        s.fact("bimodule section", m.bimodule.is_some());
        if let Some(e) = m.separability_idempotent(&self.universal) {
            s.fact("separability idempotent", json!(e.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
            let ok = a.mu_map().apply(&e) == a.unit()
                && (0..a.dim()).all(|i| {
                    self.universal.bifree().left_basis(i).apply(&e) == self.universal.bifree().right_basis(i).apply(&e)
                });
            s.report.push(Check::boolean("separability idempotent: mu(e) = 1, r.e = e.r", ok));
        }
        let id = Matrix::identity(a.field(), a.dim());
        let sections_ok = [&m.bimodule, &m.left, &m.right]
            .iter()
            .all(|sp| sp.as_ref().is_none_or(|sp| m.mu.matrix().mul(sp.section.matrix()) == id));
        s.report.push(Check::boolean("found sections satisfy mu o s = id", sections_ok));
        s.report.push(Check::boolean("r -> r(x)1 is a left-module section", m.r_tensor_one));
        s.report.push(Check::boolean("r -> 1(x)r is a right-module section", m.one_tensor_r));
        if a.is_commutative() {
            let kaehler = self.universal.kaehler()?.fodc.dim();
            s.fact("dim Kaehler", kaehler);
            s.report.push(Check::boolean(
                "bimodule section exists iff Kaehler module vanishes",
                m.bimodule.is_some() == (kaehler == 0),
            ));
        }
        Ok(())
    }

    fn commutative_oracle(&self, s: &mut Section) -> Result<(), Error> {
        let a = &self.algebra;
        let der = derivations(a);
        s.fact("dim derivations", der.dim());
        let n = a.dim();
        // inner derivations [r, -] are always derivations
        let inner: Vec<_> = (0..n)
            .filter(|&i| !der.contains(a.left_mul_basis(i).sub(a.right_mul_basis(i)).as_slice()))
            .map(|i| Violation {
                at: vec![i],
                message: format!("[{}, -] is not a derivation", a.label(i)),
            })
            .collect();
        s.report.push(Check::from_violations("inner derivations", inner));
        if !a.is_commutative() {
            s.report.push(Check::boolean(
                "Kaehler construction rejected",
                matches!(self.universal.kaehler(), Err(Error::NotCommutative)),
            ));
            return Ok(());
        }
        let k = self.universal.kaehler()?;
        s.fact("dim Kaehler", k.fodc.dim());
        s.report.push(Check::boolean("Kaehler calculus valid", k.fodc.is_valid()));
        s.report.push(Check::boolean("Kaehler bimodule symmetric", k.fodc.omega().is_symmetric()));
        let c = cartan_from_fodc(&k.fodc, Side::Right)?;
        s.report.push(Check::boolean("dim Kaehler Cartan pair = dim derivations", c.pair.dim() == der.dim()));
        s.report.push(Check::boolean("Kaehler action image = derivations", c.pair.image() == der));
        let v = c.pair.validate();
        s.report.push(Check::boolean("Kaehler Cartan pair valid", v.passed()));
        s.report.push(Check::boolean("Kaehler action by derivations", v.passed_check("derivation")));
        Ok(())
    }

    fn duality(&self, s: &mut Section) -> Result<(), Error> {
        let a = &self.algebra;
        let mut surjections: Vec<(String, BimoduleMap)> = self
            .quotients
            .iter()
            .enumerate()
            .map(|(k, q)| (format!("quotient {k}"), q.projection.clone()))
            .collect();
        let mu = BimoduleMap::new(self.universal.bifree().clone(), Bimodule::regular(a), a.mu_map(), MapKind::Right)?;
        surjections.push(("mu".into(), mu));
        if a.is_commutative() {
            surjections.push(("Kaehler projection".into(), self.universal.kaehler()?.projection));
        }
        let mut not_injective = Vec::new();
        for (k, (name, map)) in surjections.iter().enumerate() {
            let t = transpose(map, Side::Right)?;
            if !t.map.is_injective() {
                not_injective.push(Violation {
                    at: vec![k],
                    message: format!("transpose of {name} is not injective"),
                });
            }
        }
        s.fact("surjections transposed", surjections.len());
        s.report.push(Check::from_violations("transposes of surjections are injective", not_injective));

        let mut functorial = Vec::new();
        for (k, pair) in self.quotients.windows(2).enumerate() {
            let gens: Vec<_> = pair[0]
                .relations
                .basis_vectors()
                .into_iter()
                .chain(pair[1].relations.basis_vectors())
                .map(|c| self.universal.kernel().vector(&c))
                .collect();
            let joint = self.universal.quotient(&gens)?;
            let between = fodc_morphisms(&pair[0].fodc, &joint.fodc)?
                .ok_or(Error::InvalidFodc("no morphism onto a further quotient".into()))?
                .morphism;
            let composite = between.compose(&pair[0].projection)?;
            for side in [Side::Left, Side::Right] {
                let d0 = dual(self.universal.fodc().omega(), side);
                let d1 = dual(between.source(), side);
                let d2 = dual(between.target(), side);
                let lhs = transpose_between(&composite, &d2, &d0)?;
                let rhs = transpose_between(&pair[0].projection, &d1, &d0)?
                    .matrix()
                    .mul(transpose_between(&between, &d2, &d1)?.matrix());
                if lhs.matrix() != &rhs {
                    functorial.push(Violation {
                        at: vec![k, side as usize],
                        message: format!("{side} transpose of a composite is not the reversed composite"),
                    });
                }
            }
        }
        let identity_ok = [Side::Left, Side::Right].iter().all(|&side| {
            transpose(&self.universal.fodc().omega().identity_map(), side)
                .is_ok_and(|t| t.map.matrix() == &Matrix::identity(a.field(), t.map.matrix().rows()))
        });
        s.report.push(Check::boolean("transpose of identity is identity", identity_ok));
        s.report.push(Check::from_violations("transpose is contravariant", functorial));

        for (name, m) in [
            ("R", Bimodule::regular(a)),
            ("R(x)R", self.universal.bifree().clone()),
            ("ker mu", self.universal.fodc().omega().clone()),
        ] {
            for side in [Side::Left, Side::Right] {
                let d = dual(&m, side);
                let r = d.pairing_report();
                s.report.push(
                    Check::boolean(format!("pairing adjunctions on {side} dual of {name}"), r.passed())
                        .with_detail(format!("dimension {}", d.dim())),
                );
            }
        }
        Ok(())
    }

    fn braidings(&self, s: &mut Section) -> Result<(), Error> {
        let a = &self.algebra;
        if is_dual_numbers(a) {
            let mut bad = Vec::new();
            for l in [0, 1, 2, -1] {
                let b = scaled_braiding(a, &a.field().from_i64(l))?;
                let (_, r) = left_structure_from_braiding(a, &b)?;
                if !r.passed() {
                    bad.push(Violation {
                        at: vec![],
                        message: format!("lambda = {l}: {}", failed_names(&r)),
                    });
                }
            }
            s.report.push(Check::from_violations("scaled braidings for lambda in {0, 1, 2, -1}", bad));
        }
        let b = self.universal.barred()?;
        let pair = check_braiding_pair(a, &b.gamma, &b.chi)?;
        s.report.extend(pair.report);
        let iso = pair.isomorphism.is_some_and(|m| m.is_isomorphism());
        s.report.push(Check::boolean("gamma is a bimodule isomorphism of the braided free modules", iso));
        Ok(())
    }
}

fn failed_names(r: &Report) -> String {
    r.failures().map(|c| c.name.as_str()).collect::<Vec<_>>().join(", ")
}

fn unit_vector(a: &Algebra, dim: usize, k: usize) -> Vec<ncalc_core::Scalar> {
    let mut v = vec![a.field().zero(); dim];
    v[k] = a.field().one();
    v
}

/// `k[x]/(x^2)` in its standard basis `1, x`, whatever the labels.
pub fn is_dual_numbers(a: &Algebra) -> bool {
    let d = Algebra::truncated_polynomial(a.field(), 2).expect("m = 2 is valid");
    a.dim() == 2 && a.unit() == d.unit() && a.sparse_constants() == d.sparse_constants()
}
