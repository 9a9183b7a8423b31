//! Algebraic identities checked on random small instances.
//!
//! The checkers are plain predicates so that the seeded battery below and the
//! property tests share them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{koszul_sign, Atom, Coefficient, Degree, GradedPoly};
use crate::error::Result;
use crate::representations::{Mat, ParamRing, ParamScalar};
use crate::superspace::{apply_generator, mul_super_fields, CompKey, Generator, SuperField, SuperOp};

/// Atoms of every degree, one constant among them.
pub fn atom_pool() -> Vec<Atom> {
    vec![
        Atom::field("phi", Degree::ZERO),
        Atom::field("chi", Degree::ZERO),
        Atom::field("F", Degree::D11),
        Atom::field("psi", Degree::D10),
        Atom::field("eta", Degree::D10),
        Atom::field("xi", Degree::D01),
        Atom::constant("mu", Degree::D11),
    ]
}

fn small_coeff(rng: &mut ChaCha8Rng) -> Coefficient {
    let den = rng.gen_range(1..=4);
    Coefficient::gaussian(rng.gen_range(-4..=4), den, rng.gen_range(-2..=2), den)
}

fn random_atom(rng: &mut ChaCha8Rng, pool: &[Atom]) -> Atom {
    let a = pool.choose(rng).expect("nonempty pool");
    let n = if a.is_constant() { 0 } else { rng.gen_range(0..=2) };
    a.derived(n).expect("field atom")
}

/// A random polynomial with up to `terms` monomials of up to three atoms.
pub fn random_poly(rng: &mut ChaCha8Rng, terms: usize) -> GradedPoly {
    let pool = atom_pool();
    let mut p = GradedPoly::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let atoms = (0..rng.gen_range(0..=3)).map(|_| random_atom(rng, &pool)).collect();
        p.add_term(atoms, small_coeff(rng));
    }
    p
}

/// A random polynomial all of whose monomials have degree `d`.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, d: Degree, terms: usize) -> GradedPoly {
    let pool = atom_pool();
    let mut p = GradedPoly::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let mut atoms: Vec<Atom> = (0..rng.gen_range(0..=2)).map(|_| random_atom(rng, &pool)).collect();
        let have = atoms.iter().fold(Degree::ZERO, |acc, a| acc + a.degree());
        let need = have + d;
        if need != Degree::ZERO {
            let fill: Vec<&Atom> = pool.iter().filter(|a| a.degree() == need).collect();
            atoms.push((*fill.choose(rng).expect("every degree present")).clone());
        }
        p.add_term(atoms, small_coeff(rng));
    }
    p
}

pub fn random_degree(rng: &mut ChaCha8Rng) -> Degree {
    Degree::ALL[rng.gen_range(0..4)]
}

/// A random finite superfield of degree `delta`.
pub fn random_super_field(rng: &mut ChaCha8Rng, delta: Degree, truncation: u32) -> SuperField {
    let mut comps = Vec::new();
    for k in CompKey::all(truncation) {
        if rng.gen_bool(0.5) {
            comps.push((k, random_homogeneous(rng, delta + k.coord_degree(), 2)));
        }
    }
    SuperField::from_components(delta, truncation, comps).expect("components carry their slot degree")
}

fn same_reliable(a: &SuperField, b: &SuperField) -> bool {
    let orders = a.valid_orders().min(b.valid_orders());
    CompKey::all(a.truncation()).filter(|k| k.k < orders).all(|k| a.component(k) == b.component(k))
}

pub fn associative(a: &GradedPoly, b: &GradedPoly, c: &GradedPoly) -> bool {
    a.mul(b).mul(c) == a.mul(&b.mul(c))
}

/// `ab = (-1)^{⟨da,db⟩} ba` for homogeneous `a`, `b`.
pub fn graded_commutative(a: &GradedPoly, b: &GradedPoly) -> bool {
    match (a.degree(), b.degree()) {
        (Some(da), Some(db)) => a.mul(b) == b.mul(a).scale_int(koszul_sign(da, db) as i64),
        _ => true,
    }
}

pub fn leibniz(a: &GradedPoly, b: &GradedPoly) -> bool {
    a.mul(b).time_derivative() == &a.time_derivative().mul(b) + &a.mul(&b.time_derivative())
}

/// Graded bracket of polynomials. It vanishes identically on homogeneous inputs.
pub fn poly_bracket(a: &GradedPoly, b: &GradedPoly) -> Option<GradedPoly> {
    GradedPoly::graded_bracket(a, b).ok()
}

pub fn jacobi_poly(a: &GradedPoly, b: &GradedPoly, c: &GradedPoly) -> bool {
    let Some(bc) = poly_bracket(b, c) else { return true };
    poly_bracket(a, &bc).is_some_and(|p| p.is_zero())
}

/// Degree of a product of homogeneous factors is the sum of degrees.
pub fn degree_additive(a: &GradedPoly, b: &GradedPoly) -> bool {
    let p = a.mul(b);
    match (a.degree(), b.degree()) {
        (Some(da), Some(db)) => p.is_zero() || p.degree() == Some(da + db),
        _ => true,
    }
}

/// `G(XY) = (GX)Y + (-1)^{⟨g,x⟩} X(GY)` for a supercharge or covariant derivative.
pub fn leibniz_super(x: &SuperField, y: &SuperField, g: Generator) -> Result<bool> {
    let op = SuperOp::gen(g);
    let lhs = apply_generator(&op, &mul_super_fields(x, y)?)?;
    let right = mul_super_fields(x, &apply_generator(&op, y)?)?.scale(&Coefficient::from_int(
        koszul_sign(g.degree(), x.delta()) as i64,
    ));
    let rhs = mul_super_fields(&apply_generator(&op, x)?, y)?.add(&right)?;
    Ok(same_reliable(&lhs, &rhs))
}

/// Super Jacobi identity for generator brackets, evaluated on one field.
pub fn jacobi_ops(f: &SuperField, a: Generator, b: Generator, c: Generator) -> Result<bool> {
    let (ga, gb, gc) = (SuperOp::gen(a), SuperOp::gen(b), SuperOp::gen(c));
    let lhs = SuperOp::bracket(ga.clone(), SuperOp::bracket(gb.clone(), gc.clone()));
    let s = koszul_sign(a.degree(), b.degree());
    let rhs = SuperOp::Sum(vec![
        SuperOp::bracket(SuperOp::bracket(ga.clone(), gb.clone()), gc.clone()),
        SuperOp::scale(Coefficient::from_int(s as i64), SuperOp::bracket(gb, SuperOp::bracket(ga, gc))),
    ]);
    Ok(same_reliable(&apply_generator(&lhs, f)?, &apply_generator(&rhs, f)?))
}

/// A homogeneous matrix on the graded space with one basis vector per degree.
pub fn random_graded_matrix(rng: &mut ChaCha8Rng, d: Degree) -> Mat {
    let mut m = Mat::zeros(4, 4);
    for (s, ds) in Degree::ALL.iter().enumerate() {
        let t = Degree::ALL.iter().position(|dt| *dt == *ds + d).expect("four degrees");
        m.set(s, t, ParamScalar::coeff(small_coeff(rng)));
    }
    m
}

fn mat_bracket(x: &(Mat, Degree), y: &(Mat, Degree)) -> (Mat, Degree) {
    let ring = ParamRing::free();
    let s = ParamScalar::int(koszul_sign(x.1, y.1) as i64);
    let m = x.0.mul(&y.0, &ring).sub(&y.0.mul(&x.0, &ring).scale(&s, &ring), &ring);
    (m, x.1 + y.1)
}

pub fn jacobi_matrices(x: &(Mat, Degree), y: &(Mat, Degree), z: &(Mat, Degree)) -> bool {
    let ring = ParamRing::free();
    let lhs = mat_bracket(x, &mat_bracket(y, z)).0;
    let s = ParamScalar::int(koszul_sign(x.1, y.1) as i64);
    let rhs = mat_bracket(&mat_bracket(x, y), z).0.add(&mat_bracket(y, &mat_bracket(x, z)).0.scale(&s, &ring), &ring);
    lhs.eq_in(&rhs, &ring)
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

fn run(name: &'static str, cases: usize, rng: &mut ChaCha8Rng, mut case: impl FnMut(&mut ChaCha8Rng) -> std::result::Result<(), String>) -> PropertyOutcome {
    let mut out = PropertyOutcome { name, cases, failures: 0, first_failure: None };
    for _ in 0..cases {
        if let Err(e) = case(rng) {
            out.failures += 1;
            out.first_failure.get_or_insert(e);
        }
    }
    out
}

fn check(ok: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// Every property on `cases` seeded random instances.
pub fn battery(seed: u64, cases: usize) -> Vec<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = Generator::ALL;
    vec![
        run("associativity", cases, &mut rng, |r| {
            let (a, b, c) = (random_poly(r, 3), random_poly(r, 3), random_poly(r, 3));
            check(associative(&a, &b, &c), || format!("({})({})({})", a, b, c))
        }),
        run("graded commutativity", cases, &mut rng, |r| {
            let (da, db) = (random_degree(r), random_degree(r));
            let (a, b) = (random_homogeneous(r, da, 3), random_homogeneous(r, db, 3));
            check(graded_commutative(&a, &b), || format!("{} / {}", a, b))
        }),
        run("Leibniz (d/dt)", cases, &mut rng, |r| {
            let (a, b) = (random_poly(r, 3), random_poly(r, 3));
            check(leibniz(&a, &b), || format!("{} / {}", a, b))
        }),
        run("Leibniz (supercharges and D)", cases, &mut rng, |r| {
            let (dx, dy) = (random_degree(r), random_degree(r));
            let (x, y) = (random_super_field(r, dx, 1), random_super_field(r, dy, 1));
            let g = *gens.choose(r).expect("generators");
            let ok = leibniz_super(&x, &y, g).map_err(|e| e.to_string())?;
            check(ok, || format!("{} on degrees {} and {}", g.name(), dx, dy))
        }),
        run("Jacobi (polynomials)", cases, &mut rng, |r| {
            let mut h = || {
                let d = random_degree(r);
                random_homogeneous(r, d, 2)
            };
            let (a, b, c) = (h(), h(), h());
            check(jacobi_poly(&a, &b, &c), || format!("{} / {} / {}", a, b, c))
        }),
        run("Jacobi (operators)", cases, &mut rng, |r| {
            let d = random_degree(r);
            let f = random_super_field(r, d, 1);
            let [a, b, c] = [0; 3].map(|_| *gens.choose(r).expect("generators"));
            let ok = jacobi_ops(&f, a, b, c).map_err(|e| e.to_string())?;
            check(ok, || format!("{} {} {}", a.name(), b.name(), c.name()))
        }),
        run("Jacobi (graded matrices)", cases, &mut rng, |r| {
            let [x, y, z] = [0; 3].map(|_| {
                let d = random_degree(r);
                (random_graded_matrix(r, d), d)
            });
            check(jacobi_matrices(&x, &y, &z), || format!("{} / {} / {}", x.0, y.0, z.0))
        }),
        run("degree additivity", cases, &mut rng, |r| {
            let (da, db) = (random_degree(r), random_degree(r));
            let (a, b) = (random_homogeneous(r, da, 3), random_homogeneous(r, db, 3));
            check(degree_additive(&a, &b), || format!("{} / {}", a, b))
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_battery_passes() {
        for p in battery(1, 50) {
            assert!(p.passed(), "{}: {:?}", p.name, p.first_failure);
        }
    }

    #[test]
    fn checkers_catch_a_wrong_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let psi = GradedPoly::atom(Atom::field("psi", Degree::D10));
        let eta = GradedPoly::atom(Atom::field("eta", Degree::D10));
        assert!(graded_commutative(&psi, &eta));
        assert_ne!(psi.mul(&eta), eta.mul(&psi));
        let x = (random_graded_matrix(&mut rng, Degree::D10), Degree::D10);
        let y = (random_graded_matrix(&mut rng, Degree::D01), Degree::D01);
        let z = (random_graded_matrix(&mut rng, Degree::D11), Degree::D11);
        assert!(jacobi_matrices(&x, &y, &z));
    }
}
