//! Variations of component Lagrangians and total-derivative certificates.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::lagrangian::Lagrangian;
use crate::algebra::{Atom, Coefficient, GradedPoly};
use crate::error::Result;
use crate::multiplets::{ConstraintSystem, Multiplet};
use crate::representations::RepGen;
use crate::superspace::{Charge, CompKey};

/// `boundary` with `d(boundary)/dt = expression`, or the part of the expression
/// that no boundary term can produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalDerivativeCertificate {
    pub charge: Option<Charge>,
    pub expression: GradedPoly,
    pub boundary: Option<GradedPoly>,
    pub residue: Option<GradedPoly>,
}

impl TotalDerivativeCertificate {
    pub fn exists(&self) -> bool {
        self.boundary.is_some()
    }

    /// Re-checks the certificate from scratch.
    pub fn verify(&self) -> bool {
        match &self.boundary {
            Some(b) => b.time_derivative() == self.expression,
            None => self.residue.as_ref().is_some_and(|r| !r.is_zero()),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "charge": self.charge.map(|c| c.name()),
            "boundary": self.boundary.as_ref().map(|b| b.to_string()),
            "residue": self.residue.as_ref().map(|r| r.to_string()),
        })
    }
}

/// Every way of spreading `w` derivatives over the non-constant atoms of a shape.
fn spread(shape: &[Atom], w: u32) -> Vec<Vec<Atom>> {
    let Some((first, rest)) = shape.split_first() else {
        return if w == 0 { vec![vec![]] } else { vec![] };
    };
    let mut out = Vec::new();
    let top = if first.is_constant() { 0 } else { w };
    for n in 0..=top {
        for mut tail in spread(rest, w - n) {
            tail.insert(0, first.derived(n).expect("field atom"));
            out.push(tail);
        }
    }
    out
}

/// Candidate boundary monomials: same atoms as a monomial of `expr`, one derivative fewer.
fn candidates(expr: &GradedPoly) -> Vec<GradedPoly> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (atoms, _) in expr.terms() {
        let w: u32 = atoms.iter().map(|a| a.deriv()).sum();
        if w == 0 {
            continue;
        }
        let shape: Vec<Atom> = atoms.iter().map(|a| a.base()).collect();
        for m in spread(&shape, w - 1) {
            let p = GradedPoly::monomial(m, Coefficient::one());
            if let Some((key, _)) = leading(&p) {
                if seen.insert(key) {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn leading(p: &GradedPoly) -> Option<(Vec<Atom>, Coefficient)> {
    p.terms().next().map(|(a, c)| (a.to_vec(), c.clone()))
}

/// Decides whether `expr` is `dB/dt` by elimination over the candidate basis.
///
/// Pivots are kept fully reduced, so the remainder is a canonical residue.
pub fn total_derivative(expr: &GradedPoly) -> TotalDerivativeCertificate {
    // (pivot monomial, d/dt of combination, combination)
    let mut pivots: Vec<(Vec<Atom>, GradedPoly, GradedPoly)> = Vec::new();
    let eliminate = |d: &mut GradedPoly, b: &mut GradedPoly, pivots: &[(Vec<Atom>, GradedPoly, GradedPoly)]| {
        for (key, pd, pb) in pivots {
            let c = d.coefficient_of(key);
            if !c.is_zero() {
                *d = &*d - &pd.scale(&c);
                *b = &*b - &pb.scale(&c);
            }
        }
    };
    for cand in candidates(expr) {
        let mut d = cand.time_derivative();
        let mut b = cand;
        eliminate(&mut d, &mut b, &pivots);
        let Some((key, c)) = leading(&d) else { continue };
        let inv = c.inv().expect("nonzero leading coefficient");
        let (d, b) = (d.scale(&inv), b.scale(&inv));
        for (_, pd, pb) in pivots.iter_mut() {
            let c = pd.coefficient_of(&key);
            if !c.is_zero() {
                *pd = &*pd - &d.scale(&c);
                *pb = &*pb - &b.scale(&c);
            }
        }
        pivots.push((key, d, b));
    }
    let mut rest = expr.clone();
    let mut boundary = GradedPoly::zero();
    for (key, pd, pb) in &pivots {
        let c = rest.coefficient_of(key);
        if !c.is_zero() {
            rest = &rest - &pd.scale(&c);
            boundary = &boundary + &pb.scale(&c);
        }
    }
    if rest.is_zero() {
        debug_assert_eq!(boundary.time_derivative(), *expr);
        TotalDerivativeCertificate { charge: None, expression: expr.clone(), boundary: Some(boundary), residue: None }
    } else {
        TotalDerivativeCertificate { charge: None, expression: expr.clone(), boundary: None, residue: Some(rest) }
    }
}

/// Applies the derivation `slot ↦ Q(slot)·ε` to every occurrence of a slot field.
pub fn vary_with(poly: &GradedPoly, slots: &[Atom], images: &[GradedPoly], epsilon: &Atom) -> GradedPoly {
    let eps = GradedPoly::atom(epsilon.clone());
    let images: Vec<GradedPoly> = images.iter().map(|q| q.mul(&eps)).collect();
    let mut out = GradedPoly::zero();
    for (atoms, c) in poly.terms() {
        for (i, a) in atoms.iter().enumerate() {
            let Some(s) = slots.iter().position(|x| *x == a.base()) else { continue };
            let left = GradedPoly::monomial(atoms[..i].to_vec(), c.clone());
            let right = GradedPoly::monomial(atoms[i + 1..].to_vec(), Coefficient::one());
            let mid = images[s].nth_time_derivative(a.deriv());
            out = &out + &left.mul(&mid).mul(&right);
        }
    }
    out
}

/// `δL` under one charge, with the parameter ε kept as a right factor in each variation.
pub fn vary_lagrangian(l: &Lagrangian, multiplet: &Multiplet, charge: Charge) -> Result<GradedPoly> {
    let g = match charge {
        Charge::Q10 => RepGen::Q10,
        Charge::Q01 => RepGen::Q01,
    };
    let images = multiplet.transformation(g)?;
    Ok(vary_with(&l.poly, &multiplet.slot_atoms(), &images, &charge.epsilon()))
}

/// One certificate per charge.
pub fn check_invariance(l: &Lagrangian, multiplet: &Multiplet) -> Result<Vec<TotalDerivativeCertificate>> {
    Charge::BOTH
        .iter()
        .map(|&ch| {
            let dl = vary_lagrangian(l, multiplet, ch)?;
            Ok(TotalDerivativeCertificate { charge: Some(ch), ..total_derivative(&dl) })
        })
        .collect()
}

/// `δ f_011` of a constrained generic field, tested for being a total derivative.
///
/// On an integrable field this is the statement that the action is invariant.
pub fn top_variation_certificates(cs: &ConstraintSystem) -> Vec<TotalDerivativeCertificate> {
    let top = GradedPoly::atom(cs.atom(CompKey::new(0, 1, 1)));
    Charge::BOTH
        .iter()
        .map(|&ch| {
            let v = cs.reduce(&cs.vary(&top, ch).expect("top component is inside the horizon"));
            TotalDerivativeCertificate { charge: Some(ch), ..total_derivative(&v) }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, AtomTable, Degree};

    fn table() -> AtomTable {
        let mut t = AtomTable::new();
        t.insert(&Atom::field("phi", Degree::ZERO));
        t.insert(&Atom::field("psi", Degree::D10));
        t.insert(&Atom::field("xi", Degree::D01));
        t.insert(&Atom::constant("eps", Degree::D10));
        t
    }

    #[test]
    fn finds_boundary_of_a_total_derivative() {
        let t = table();
        let b = parse_poly("phi^2 phi^{(1)} + i psi psi^{(1)} eps", &t).unwrap();
        let cert = total_derivative(&b.time_derivative());
        assert!(cert.exists() && cert.verify());
    }

    #[test]
    fn refutes_non_derivatives() {
        let t = table();
        for text in ["phi^{(1)}^2", "phi", "psi psi^{(1)}", "phi^{(1)} psi^{(1)} eps"] {
            let cert = total_derivative(&parse_poly(text, &t).unwrap());
            assert!(!cert.exists() && cert.verify(), "{}", text);
        }
    }

    #[test]
    fn residue_is_canonical_modulo_derivatives() {
        let t = table();
        let x = parse_poly("phi phi^{(2)}", &t).unwrap();
        let y = parse_poly("phi^{(1)}^2", &t).unwrap().scale_int(-1);
        assert_eq!(total_derivative(&x).residue, total_derivative(&y).residue);
    }

    #[test]
    fn integrability_makes_the_top_variation_exact() {
        let mut cs = ConstraintSystem::new(Degree::ZERO, 4);
        assert!(top_variation_certificates(&cs).iter().all(|c| !c.exists()));
        cs.impose_vanishing(CompKey::new(1, 0, 0)).unwrap();
        assert!(top_variation_certificates(&cs).iter().all(|c| c.exists() && c.verify()));
    }
}
