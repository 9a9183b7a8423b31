use serde::{Deserialize, Serialize};

use super::field::{coordinate_atoms, flatten, mul_super_fields, unflatten, SuperField};
use super::ops::{apply_with, Generator, GeneratorTable, SuperOp};
use crate::algebra::{Atom, Coefficient, Degree, GradedPoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Charge {
    Q10,
    Q01,
}

impl Charge {
    pub const BOTH: [Charge; 2] = [Charge::Q10, Charge::Q01];

    pub fn generator(self) -> Generator {
        match self {
            Charge::Q10 => Generator::Q10,
            Charge::Q01 => Generator::Q01,
        }
    }

    pub fn degree(self) -> Degree {
        self.generator().degree()
    }

    /// The graded constant parameter paired with this charge.
    pub fn epsilon(self) -> Atom {
        match self {
            Charge::Q10 => Atom::constant("eps10", Degree::D10),
            Charge::Q01 => Atom::constant("eps01", Degree::D01),
        }
    }

    pub fn name(self) -> &'static str {
        self.generator().name()
    }
}

/// `-(ε10 Q10 + ε01 Q01) Ψ` with explicit ε atoms.
pub fn full_variation_with(table: &GeneratorTable, psi: &SuperField) -> Result<SuperField> {
    let mut acc = SuperField::zero(psi.delta(), psi.truncation());
    for ch in Charge::BOTH {
        let q = apply_with(table, &SuperOp::Gen(ch.generator()), psi)?;
        let eps = SuperField::constant(GradedPoly::atom(ch.epsilon()), psi.truncation())?;
        acc = acc.add(&mul_super_fields(&eps, &q)?.neg())?;
    }
    Ok(acc)
}

/// The coefficient of ε (written on the right) in `δΨ = -εQΨ`.
///
/// Component `(k,α,β)` of the result is `δ_Q f_kαβ`, so `δ f_kαβ = result · ε`.
pub fn susy_variation_with(table: &GeneratorTable, psi: &SuperField, charge: Charge) -> Result<SuperField> {
    for (key, c) in psi.components() {
        if c.degree() != Some(psi.component_degree(key)) {
            return Err(Error::NotHomogeneous(format!("component {} of the superfield: {}", key, c)));
        }
    }
    let eps_atom = charge.epsilon();
    let q = apply_with(table, &SuperOp::Gen(charge.generator()), psi)?;
    let eps = SuperField::constant(GradedPoly::atom(eps_atom.clone()), psi.truncation())?;
    let full = mul_super_fields(&eps, &q)?.neg();
    let stripped = full.map_components(psi.delta() + charge.degree(), |_, p| {
        let (coeff, rest) = p.strip_right(&eps_atom);
        debug_assert!(rest.is_zero());
        coeff
    });
    Ok(stripped)
}

pub fn susy_variation(psi: &SuperField, charge: Charge) -> Result<SuperField> {
    susy_variation_with(&GeneratorTable::standard(), psi, charge)
}

/// First-order parameters of a supertranslation; `None` switches a parameter off.
#[derive(Clone, Debug)]
pub struct Translation {
    pub a: Option<Atom>,
    pub mu: Option<Atom>,
    pub eps10: Option<Atom>,
    pub eps01: Option<Atom>,
}

impl Translation {
    pub fn full() -> Self {
        Translation {
            a: Some(Atom::constant("a", Degree::ZERO)),
            mu: Some(Atom::constant("mu_trans", Degree::D11)),
            eps10: Some(Charge::Q10.epsilon()),
            eps01: Some(Charge::Q01.epsilon()),
        }
    }

    pub fn eps_only() -> Self {
        Translation { a: None, mu: None, ..Translation::full() }
    }

    pub fn a_only() -> Self {
        Translation { a: Translation::full().a, mu: None, eps10: None, eps01: None }
    }

    pub fn mu_only() -> Self {
        Translation { a: None, mu: Translation::full().mu, eps10: None, eps01: None }
    }

    fn params(&self) -> Vec<Atom> {
        [&self.a, &self.mu, &self.eps10, &self.eps01].into_iter().flatten().cloned().collect()
    }
}

fn atom_or_zero(a: &Option<Atom>) -> GradedPoly {
    a.clone().map(GradedPoly::atom).unwrap_or_default()
}

/// `Ψ(t',z',θ') - Ψ(t,z,θ)` to first order in the parameters, by substituting the
/// shifted coordinates into the series.
///
/// The active variation `δΨ = Ψ'(x) - Ψ(x)` is the negative of this.
pub fn supertranslate(psi: &SuperField, tr: &Translation) -> Result<SuperField> {
    let [z, t10, t01] = coordinate_atoms();
    let (zp, t10p, t01p) = (GradedPoly::atom(z.clone()), GradedPoly::atom(t10.clone()), GradedPoly::atom(t01.clone()));
    let e10 = atom_or_zero(&tr.eps10);
    let e01 = atom_or_zero(&tr.eps01);
    let i = Coefficient::i();
    // t' - t = a + i(ε10 θ10 + ε01 θ01)
    let dt = &atom_or_zero(&tr.a) + &(&e10.mul(&t10p) + &e01.mul(&t01p)).scale(&i);
    // z' - z = μ - (ε10 θ01 - ε01 θ10)
    let dz = &atom_or_zero(&tr.mu) - &(&e10.mul(&t01p) - &e01.mul(&t10p));
    let p = flatten(psi);
    let shifted = p.substitute(|a| {
        if *a == z {
            Some(&zp + &dz)
        } else if *a == t10 {
            Some(&t10p + &e10)
        } else if *a == t01 {
            Some(&t01p + &e01)
        } else {
            None
        }
    });
    let total = &(&shifted - &p) + &dt.mul(&p.time_derivative());
    let params = tr.params();
    let first_order = total.filter(|atoms| atoms.iter().filter(|a| params.contains(a)).count() == 1);
    let out = unflatten(&first_order, psi.delta(), psi.truncation())?;
    Ok(if psi.is_exact() {
        out
    } else {
        let valid = psi.valid_orders().saturating_sub(1);
        SuperField::from_parts(
            out.delta(),
            out.truncation(),
            out.components().map(|(k, c)| (k, c.clone())).collect(),
            false,
            valid,
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superspace::field::{generic_super_field, CompKey};

    #[test]
    fn q10_bottom_row() {
        // δ f_000 = f_010 ε10 for Δ = (0,0)
        let psi = generic_super_field(Degree::ZERO, 2, "f");
        let v = susy_variation(&psi, Charge::Q10).unwrap();
        assert_eq!(v.component(CompKey::new(0, 0, 0)).to_string(), "f_010");
        let w = susy_variation(&psi, Charge::Q01).unwrap();
        assert_eq!(w.component(CompKey::new(0, 0, 0)).to_string(), "f_001");
    }

    #[test]
    fn epsilon_translation_is_minus_variation() {
        for d in Degree::ALL {
            let psi = generic_super_field(d, 3, "f");
            let shift = supertranslate(&psi, &Translation::eps_only()).unwrap();
            let var = full_variation_with(&GeneratorTable::standard(), &psi).unwrap();
            let orders = shift.valid_orders().min(var.valid_orders());
            assert!(orders >= 3);
            for key in CompKey::all(3).filter(|k| k.k < orders) {
                assert_eq!(shift.component(key), var.component(key).scale_int(-1), "{} {}", d, key);
            }
        }
    }

    #[test]
    fn time_translation_of_bottom_component() {
        let psi = generic_super_field(Degree::ZERO, 2, "f");
        let shift = supertranslate(&psi, &Translation::a_only()).unwrap();
        assert_eq!(shift.component(CompKey::new(0, 0, 0)).to_string(), "a f_000^{(1)}");
    }

    #[test]
    fn mu_translation_shifts_orders() {
        let psi = generic_super_field(Degree::ZERO, 1, "f");
        let shift = supertranslate(&psi, &Translation::mu_only()).unwrap();
        let mu = GradedPoly::atom(Atom::constant("mu_trans", Degree::D11));
        for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let src = psi.component(CompKey::new(1, a, b));
            // z θ..f moved to θ.. μ f: μ passes θ's, which gives the sign below
            let sign = crate::algebra::koszul_sign(Degree::D11, Degree::new(a, b));
            assert_eq!(shift.component(CompKey::new(0, a, b)), mu.mul(&src).scale_int(sign as i64));
        }
    }

    #[test]
    fn component_law_for_all_degrees() {
        let k_max = 3;
        for d in Degree::ALL {
            let psi = generic_super_field(d, k_max + 1, "f");
            let f = |k: u32, a: u8, b: u8| psi.component(CompKey::new(k, a, b));
            let idot = |p: GradedPoly| p.time_derivative().scale(&Coefficient::i());
            let v10 = susy_variation(&psi, Charge::Q10).unwrap();
            let v01 = susy_variation(&psi, Charge::Q01).unwrap();
            for k in 0..=k_max {
                let s1 = if (k + d.a as u32).is_multiple_of(2) { 1 } else { -1 };
                let s2 = if (k + d.b as u32).is_multiple_of(2) { 1 } else { -1 };
                let kp = (k + 1) as i64;
                let rows10 = [
                    ((0, 0), f(k, 1, 0)),
                    ((1, 0), idot(f(k, 0, 0))),
                    ((0, 1), &f(k, 1, 1) - &f(k + 1, 0, 0).scale_int(kp)),
                    ((1, 1), &idot(f(k, 0, 1)) - &f(k + 1, 1, 0).scale_int(kp)),
                ];
                let rows01 = [
                    ((0, 0), f(k, 0, 1)),
                    ((1, 0), &f(k, 1, 1) + &f(k + 1, 0, 0).scale_int(kp)),
                    ((0, 1), idot(f(k, 0, 0))),
                    ((1, 1), &idot(f(k, 1, 0)) + &f(k + 1, 0, 1).scale_int(kp)),
                ];
                for (((a, b), want10), (_, want01)) in rows10.into_iter().zip(rows01) {
                    let key = CompKey::new(k, a, b);
                    assert_eq!(v10.component(key), want10.scale_int(s1), "Q10 {} {}", d, key);
                    assert_eq!(v01.component(key), want01.scale_int(s2), "Q01 {} {}", d, key);
                }
            }
        }
    }
}
