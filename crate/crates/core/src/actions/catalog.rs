//! The named actions, each with its printed component Lagrangian.

use serde_json::{json, Value};

use super::invariance::{check_invariance, TotalDerivativeCertificate};
use super::lagrangian::{kinetic_integrand, reduce_action, superpotential, Lagrangian, Template};
use crate::algebra::{parse_poly, Atom, AtomTable, Degree, GradedPoly, Pretty};
use crate::error::{Error, Result};
use crate::multiplets::{impose_f011_constraint, impose_z_constraint, Constrained};
use crate::superspace::berezin_integrate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ActionName {
    CaseIKinetic,
    CaseISuperpotential,
    B11,
    B10,
    B01,
    CaseIIKinetic,
    CaseIIAttempt,
}

impl ActionName {
    pub const ALL: [ActionName; 7] = [
        ActionName::CaseIKinetic,
        ActionName::CaseISuperpotential,
        ActionName::B11,
        ActionName::B10,
        ActionName::B01,
        ActionName::CaseIIKinetic,
        ActionName::CaseIIAttempt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ActionName::CaseIKinetic => "case-i-kinetic",
            ActionName::CaseISuperpotential => "case-i-superpotential",
            ActionName::B11 => "b11",
            ActionName::B10 => "b10",
            ActionName::B01 => "b01",
            ActionName::CaseIIKinetic => "case-ii-kinetic",
            ActionName::CaseIIAttempt => "case-ii-attempt",
        }
    }
}

impl std::str::FromStr for ActionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ActionName::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| Error::Parse(format!("unknown action `{}`", s)))
    }
}

/// Exponents of the sample superpotential `F(Ψ) = Ψ² + Ψ³`.
pub const SUPERPOTENTIAL_EXPONENTS: [u32; 2] = [2, 3];

pub fn component_table() -> AtomTable {
    let mut t = AtomTable::new();
    t.insert(&Atom::field("phi", Degree::ZERO));
    t.insert(&Atom::field("F", Degree::D11));
    t.insert(&Atom::field("psi", Degree::D10));
    t.insert(&Atom::field("xi", Degree::D01));
    t.insert(&coupling());
    t
}

pub fn coupling() -> Atom {
    Atom::constant("mu", Degree::D11)
}

fn printed(text: &str) -> GradedPoly {
    parse_poly(text, &component_table()).expect("printed Lagrangian parses")
}

/// The printed component Lagrangian; `None` when the paper prints none.
pub fn printed_lagrangian(name: ActionName) -> Option<GradedPoly> {
    let kinetic = "phi^{(1)}^2 + F^2 + i psi psi^{(1)} + i xi xi^{(1)}";
    Some(match name {
        ActionName::CaseIKinetic => printed(kinetic),
        // μ F_011 for F = Ψ² + Ψ³, whose top component is F'(φ)F + F''(φ)ψξ
        ActionName::CaseISuperpotential => {
            &printed(kinetic) + &printed("2 mu phi F + 3 mu phi^2 F + 2 mu psi xi + 6 mu phi psi xi")
        }
        ActionName::B11 => printed("phi^2 + F^{(1)}^2 + i psi psi^{(1)} + i xi xi^{(1)}"),
        ActionName::B10 => printed("phi^{(1)}^2 - F^{(1)}^2 + i psi^{(1)} psi^{(2)} - i xi xi^{(1)}"),
        ActionName::B01 => printed("phi^{(1)}^2 - F^{(1)}^2 - i psi psi^{(1)} + i xi^{(1)} xi^{(2)}"),
        ActionName::CaseIIKinetic => printed("-1 phi^{(1)}^2 + F^2 + i psi psi^{(1)} + i xi xi^{(1)}"),
        ActionName::CaseIIAttempt => return None,
    })
}

/// The z-linear term printed for the Case (ii) kinetic integrand.
pub fn printed_case_ii_obstruction() -> GradedPoly {
    printed("-i psi psi^{(1)} + i xi xi^{(1)}")
}

#[derive(Clone, Debug)]
pub struct ActionReport {
    pub name: ActionName,
    pub delta: Degree,
    pub integrable: bool,
    pub lagrangian: Option<Lagrangian>,
    pub expected: Option<GradedPoly>,
    pub obstruction: Option<GradedPoly>,
    pub certificates: Vec<TotalDerivativeCertificate>,
    pub flags: Vec<String>,
}

impl ActionReport {
    pub fn matches(&self) -> bool {
        match (&self.lagrangian, &self.expected, &self.obstruction) {
            (Some(l), Some(e), _) => l.poly == *e,
            (None, None, Some(o)) => *o == printed_case_ii_obstruction(),
            _ => false,
        }
    }

    pub fn invariant(&self) -> bool {
        !self.certificates.is_empty() && self.certificates.iter().all(|c| c.exists() && c.verify())
    }

    /// Printed form reproduced and, when there is a Lagrangian, invariance certified.
    pub fn passed(&self) -> bool {
        self.matches() && (self.lagrangian.is_none() || self.invariant())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name.name(),
            "delta": [self.delta.a, self.delta.b],
            "integrable": self.integrable,
            "lagrangian": self.lagrangian.as_ref().map(|l| l.to_string()),
            "expected": self.expected.as_ref().map(|e| e.to_string()),
            "obstruction": self.obstruction.as_ref().map(|o| o.to_string()),
            "matches": self.matches(),
            "certificates": self.certificates.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "flags": self.flags,
        })
    }

    pub fn summary(&self) -> String {
        let body = match (&self.lagrangian, &self.obstruction) {
            (Some(l), _) => format!("L = {}", l.pretty()),
            (None, Some(o)) => format!("not integrable; z-linear term {}", Pretty(o)),
            _ => "no Lagrangian".into(),
        };
        format!("{}: {}", self.name.name(), body)
    }
}

fn z_field(delta: Degree, horizon: u32) -> Result<Constrained> {
    impose_z_constraint(delta, horizon)
}

/// Builds, reduces and certifies one named action.
pub fn run_action(name: ActionName, horizon: u32) -> Result<ActionReport> {
    let horizon = horizon.max(2);
    let mut flags = Vec::new();
    let (c, integrand, extras) = match name {
        ActionName::CaseIKinetic | ActionName::CaseISuperpotential => {
            let c = z_field(Degree::ZERO, horizon)?;
            let kin = kinetic_integrand(&c.field, Template::D10D01)?;
            let extras = if name == ActionName::CaseISuperpotential {
                vec![superpotential(&c.field, &SUPERPOTENTIAL_EXPONENTS, &coupling())?]
            } else {
                vec![]
            };
            (c, Some((kin, -1)), extras)
        }
        ActionName::B11 => {
            let c = z_field(Degree::D11, horizon)?;
            let kin = kinetic_integrand(&c.field, Template::D10D01)?;
            (c, Some((kin, 1)), vec![])
        }
        ActionName::B10 => {
            let c = z_field(Degree::D10, horizon)?;
            let kin = kinetic_integrand(&c.field, Template::D10D01H)?;
            (c, Some((kin, 1)), vec![])
        }
        ActionName::B01 => {
            flags.push("printed measure omits dz and the integrand reuses the (1,0) symbol; read as the full measure on the (0,1) superfield".into());
            let c = z_field(Degree::D01, horizon)?;
            let kin = kinetic_integrand(&c.field, Template::D10D01H)?;
            (c, Some((kin, 1)), vec![])
        }
        ActionName::CaseIIKinetic => (impose_f011_constraint(Degree::ZERO, horizon)?, None, vec![]),
        ActionName::CaseIIAttempt => {
            let c = impose_f011_constraint(Degree::ZERO, horizon)?;
            let kin = kinetic_integrand(&c.field, Template::D10D01)?;
            (c, Some((kin, 1)), vec![])
        }
    };
    let m = &c.multiplet;
    let mut report = ActionReport {
        name,
        delta: m.delta,
        integrable: true,
        lagrangian: None,
        expected: printed_lagrangian(name),
        obstruction: None,
        certificates: vec![],
        flags,
    };
    let lagrangian = match integrand {
        None => Lagrangian::new(report.expected.clone().expect("entered directly"))?,
        Some((x, sign)) => {
            let b = berezin_integrate(&x);
            if let Some(w) = b.warning {
                report.flags.push(w);
            }
            if !b.integrable {
                report.integrable = false;
                report.obstruction = Some(m.identify(&b.obstruction));
                return Ok(report);
            }
            reduce_action(&x, sign, &extras, m)?
        }
    };
    report.certificates = check_invariance(&lagrangian, m)?;
    report.lagrangian = Some(lagrangian);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{total_derivative, vary_lagrangian};
    use crate::superspace::{susy_variation, CompKey, Charge};

    #[test]
    fn printed_actions_match_and_are_invariant() {
        for a in [ActionName::B11, ActionName::B10, ActionName::B01, ActionName::CaseIIKinetic] {
            let r = run_action(a, 4).unwrap();
            assert!(r.matches(), "{}", r.summary());
            assert!(r.invariant(), "{}", r.summary());
        }
        assert_eq!(run_action(ActionName::B01, 4).unwrap().flags.len(), 1);
    }

    #[test]
    fn case_ii_kinetic_term_is_not_integrable() {
        let r = run_action(ActionName::CaseIIAttempt, 4).unwrap();
        assert!(!r.integrable);
        assert!(r.matches(), "{}", r.summary());
        assert!(r.passed());
    }

    #[test]
    fn case_i_kinetic_term_has_the_opposite_fermion_sign() {
        let r = run_action(ActionName::CaseIKinetic, 4).unwrap();
        let engine = printed("phi^{(1)}^2 + F^2 - i psi psi^{(1)} - i xi xi^{(1)}");
        assert_eq!(r.lagrangian.as_ref().unwrap().poly, engine);
        assert!(r.invariant());
        assert!(!r.matches());
        // the printed form is not invariant under the same multiplet
        let c = impose_z_constraint(Degree::ZERO, 2).unwrap();
        let l = Lagrangian::new(printed_lagrangian(ActionName::CaseIKinetic).unwrap()).unwrap();
        assert!(check_invariance(&l, &c.multiplet).unwrap().iter().all(|c| !c.exists() && c.verify()));
    }

    #[test]
    fn superpotential_adds_its_top_component() {
        let r = run_action(ActionName::CaseISuperpotential, 4).unwrap();
        let kin = run_action(ActionName::CaseIKinetic, 4).unwrap();
        let extra = &r.lagrangian.unwrap().poly - &kin.lagrangian.unwrap().poly;
        let oracle = &printed_lagrangian(ActionName::CaseISuperpotential).unwrap()
            - &printed_lagrangian(ActionName::CaseIKinetic).unwrap();
        assert_eq!(extra, oracle);
        assert!(r.certificates.iter().all(|c| c.exists()));
    }

    #[test]
    fn boson_kinetic_term_alone_is_refuted() {
        let c = impose_z_constraint(Degree::ZERO, 2).unwrap();
        let l = Lagrangian::new(printed("phi^{(1)}^2")).unwrap();
        for cert in check_invariance(&l, &c.multiplet).unwrap() {
            assert!(!cert.exists());
            assert!(cert.verify());
        }
    }

    #[test]
    fn superpotential_degrees() {
        let psi11 = impose_z_constraint(Degree::D11, 2).unwrap().field;
        let mu1 = Atom::constant("mu1", Degree::ZERO);
        let mu2 = Atom::constant("mu2", Degree::D11);
        assert!(superpotential(&psi11, &[1, 3], &mu1).is_ok());
        assert!(superpotential(&psi11, &[2], &mu2).is_ok());
        assert!(matches!(superpotential(&psi11, &[2], &mu1), Err(Error::NotHomogeneous(_))));
        let psi = impose_z_constraint(Degree::ZERO, 2).unwrap().field;
        assert!(superpotential(&psi, &[1, 2, 5], &coupling()).is_ok());
        assert!(superpotential(&psi, &[2], &mu1).is_err());
    }

    #[test]
    fn variation_commutes_with_component_extraction() {
        for (delta, template) in [(Degree::ZERO, Template::D10D01), (Degree::D10, Template::D10D01H)] {
            let c = impose_z_constraint(delta, 3).unwrap();
            let x = kinetic_integrand(&c.field, template).unwrap();
            let l = reduce_action(&x, 1, &[], &c.multiplet).unwrap();
            for ch in Charge::BOTH {
                let dx = susy_variation(&x, ch).unwrap().component(CompKey::new(0, 1, 1));
                let lhs = c.multiplet.identify(&dx).mul(&GradedPoly::atom(ch.epsilon()));
                assert_eq!(lhs, vary_lagrangian(&l, &c.multiplet, ch).unwrap());
                assert!(total_derivative(&lhs).exists());
            }
        }
    }
}
