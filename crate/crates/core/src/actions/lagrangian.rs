use std::fmt;

use crate::algebra::{Atom, Degree, GradedPoly, Pretty};
use crate::error::{Error, Result};
use crate::multiplets::Multiplet;
use crate::superspace::{
    apply_generator, berezin_integrate, mul_super_fields, Generator, SuperField, SuperOp,
};

/// A component Lagrangian of total degree (0,0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lagrangian {
    pub poly: GradedPoly,
    pub degree: Degree,
}

impl Lagrangian {
    pub fn new(poly: GradedPoly) -> Result<Self> {
        match poly.degree() {
            Some(d) if d == Degree::ZERO => Ok(Lagrangian { poly, degree: d }),
            None if poly.is_zero() => Ok(Lagrangian { poly, degree: Degree::ZERO }),
            _ => Err(Error::NotHomogeneous(format!("Lagrangian must have degree (0,0): {}", poly))),
        }
    }

    pub fn pretty(&self) -> String {
        Pretty(&self.poly).to_string()
    }
}

impl fmt::Display for Lagrangian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Template {
    /// `D10Ψ · D01Ψ`
    D10D01,
    /// `(D10 D01 Ψ)(HΨ)`
    D10D01H,
}

fn apply(g: Generator, f: &SuperField) -> Result<SuperField> {
    apply_generator(&SuperOp::gen(g), f)
}

pub fn kinetic_integrand(psi: &SuperField, template: Template) -> Result<SuperField> {
    match template {
        Template::D10D01 => mul_super_fields(&apply(Generator::D10, psi)?, &apply(Generator::D01, psi)?),
        Template::D10D01H => {
            let dd = apply(Generator::D10, &apply(Generator::D01, psi)?)?;
            mul_super_fields(&dd, &apply(Generator::H, psi)?)
        }
    }
}

/// `coupling · Σ Ψ^n`. Each term must carry degree (1,1), so that its top component is degree-neutral.
pub fn superpotential(psi: &SuperField, exponents: &[u32], coupling: &Atom) -> Result<SuperField> {
    let k = psi.truncation();
    let mu = SuperField::constant(GradedPoly::atom(coupling.clone()), k)?;
    let mut total: Option<SuperField> = None;
    for &n in exponents {
        let d = coupling.degree() + psi.delta().times(n as usize);
        if d != Degree::D11 {
            return Err(Error::NotHomogeneous(format!(
                "{} Ψ^{} has degree {}; the integrand needs (1,1)",
                coupling, n, d
            )));
        }
        let mut power = SuperField::constant(GradedPoly::one(), k)?;
        for _ in 0..n {
            power = mul_super_fields(&power, psi)?;
        }
        let term = mul_super_fields(&mu, &power)?;
        total = Some(match total {
            None => term,
            Some(t) => t.add(&term)?,
        });
    }
    total.ok_or_else(|| Error::Constraint("empty superpotential".into()))
}

/// `sign · ∫ integrand + Σ ∫ extra`, with component names read through the multiplet.
pub fn reduce_action(integrand: &SuperField, sign: i8, extras: &[SuperField], multiplet: &Multiplet) -> Result<Lagrangian> {
    let mut total = top_component(integrand, multiplet)?.scale_int(sign as i64);
    for x in extras {
        total = &total + &top_component(x, multiplet)?;
    }
    Lagrangian::new(total)
}

fn top_component(f: &SuperField, multiplet: &Multiplet) -> Result<GradedPoly> {
    let b = berezin_integrate(f);
    if !b.integrable {
        return Err(Error::NotIntegrable(Pretty(&multiplet.identify(&b.obstruction)).to_string()));
    }
    Ok(multiplet.identify(&b.integrand))
}
