use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::algebra::{Atom, Coefficient, Degree, GradedPoly};
use crate::error::{Error, Result};
use crate::superspace::{generic_super_field, susy_variation, CompKey, Charge, SuperField};

const STEM: &str = "f";

/// One solved equation `pivot = rhs`, in the order found.
#[derive(Clone, Debug, Serialize)]
pub struct Derived {
    pub pivot: CompKey,
    pub rhs: String,
    /// The equation as it arrived, before reduction.
    pub source: String,
}

/// Linear constraints on the components of a generic superfield, closed under
/// both supersymmetry variations.
///
/// Components up to z-order `horizon` are tracked; the generic field carries one
/// more order so that variations of every tracked component are exact.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    delta: Degree,
    horizon: u32,
    field: SuperField,
    variations: [SuperField; 2],
    keys: BTreeMap<String, CompKey>,
    subs: BTreeMap<CompKey, GradedPoly>,
    log: Vec<Derived>,
}

impl ConstraintSystem {
    pub fn new(delta: Degree, horizon: u32) -> Self {
        let field = generic_super_field(delta, horizon + 1, STEM);
        let variations = Charge::BOTH.map(|ch| susy_variation(&field, ch).expect("generic components are homogeneous"));
        let keys = field
            .components()
            .filter_map(|(k, p)| p.atoms().into_iter().next().map(|a| (a.name().to_string(), k)))
            .collect();
        ConstraintSystem { delta, horizon, field, variations, keys, subs: BTreeMap::new(), log: Vec::new() }
    }

    pub fn delta(&self) -> Degree {
        self.delta
    }

    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    /// The unconstrained generic field, one order past the horizon.
    pub fn generic(&self) -> &SuperField {
        &self.field
    }

    pub fn atom(&self, key: CompKey) -> Atom {
        self.field.component(key).atoms().into_iter().next().expect("generic component")
    }

    pub fn key_of(&self, a: &Atom) -> Option<CompKey> {
        self.keys.get(a.name()).copied()
    }

    pub fn substitutions(&self) -> &BTreeMap<CompKey, GradedPoly> {
        &self.subs
    }

    pub fn substitution(&self, key: CompKey) -> Option<&GradedPoly> {
        self.subs.get(&key)
    }

    pub fn log(&self) -> &[Derived] {
        &self.log
    }

    pub fn vanishing(&self) -> BTreeSet<CompKey> {
        self.subs.iter().filter(|(_, p)| p.is_zero()).map(|(k, _)| *k).collect()
    }

    /// Keys with no substitution, i.e. the free components.
    pub fn free_keys(&self) -> Vec<CompKey> {
        CompKey::all(self.horizon).filter(|k| !self.subs.contains_key(k)).collect()
    }

    /// Rewrites `p` with every known substitution.
    pub fn reduce(&self, p: &GradedPoly) -> GradedPoly {
        p.substitute(|a| {
            let key = self.key_of(a)?;
            self.subs.get(&key).map(|rhs| rhs.nth_time_derivative(a.deriv()))
        })
    }

    /// `δ_Q` of a linear expression, or `None` past the horizon.
    pub fn vary(&self, eq: &GradedPoly, charge: Charge) -> Option<GradedPoly> {
        let v = &self.variations[charge as usize];
        let mut out = GradedPoly::zero();
        for (atoms, c) in eq.terms() {
            let [a] = atoms else { return None };
            let key = self.key_of(a)?;
            if key.k > self.horizon {
                return None;
            }
            out = &out + &v.component(key).nth_time_derivative(a.deriv()).scale(c);
        }
        Some(out)
    }

    /// Imposes `f_key = 0` and closes the system.
    pub fn impose_vanishing(&mut self, key: CompKey) -> Result<()> {
        self.impose(GradedPoly::atom(self.atom(key)))
    }

    /// Imposes the linear equation `eq = 0` and closes the system.
    pub fn impose(&mut self, eq: GradedPoly) -> Result<()> {
        if !eq.is_linear() {
            return Err(Error::Constraint(format!("constraint {} is not linear", eq)));
        }
        let mut queue = VecDeque::from([eq]);
        while let Some(eq) = queue.pop_front() {
            let source = eq.to_string();
            let e = self.reduce(&eq);
            if e.is_zero() {
                continue;
            }
            self.solve(&e, source)?;
            for ch in Charge::BOTH {
                if let Some(v) = self.vary(&e, ch) {
                    queue.push_back(v);
                }
            }
        }
        Ok(())
    }

    /// Isolates the highest component of a reduced nonzero equation.
    fn solve(&mut self, e: &GradedPoly, source: String) -> Result<()> {
        let mut terms: Vec<(CompKey, u32, Coefficient)> = Vec::new();
        for (atoms, c) in e.terms() {
            let [a] = atoms else {
                return Err(Error::Constraint(format!("equation {} has a constant or product term", e)));
            };
            let key = self.key_of(a).ok_or_else(|| Error::UnknownAtom(a.to_string()))?;
            terms.push((key, a.deriv(), c.clone()));
        }
        let top = terms.iter().map(|t| t.0).max().expect("nonzero equation");
        let at_top: Vec<_> = terms.iter().filter(|t| t.0 == top).collect();
        if at_top.len() != 1 || at_top[0].1 != 0 {
            return Err(Error::ClosureFailure {
                key: top.to_string(),
                detail: format!("{} = 0 cannot be solved for the underived component", e),
            });
        }
        let pivot_atom = self.atom(top);
        let inv = at_top[0].2.inv().expect("nonzero coefficient");
        let rest = e - &GradedPoly::atom(pivot_atom.clone()).scale(&at_top[0].2);
        let rhs = rest.scale(&-inv);
        self.subs.insert(top, rhs.clone());
        let updated: Vec<(CompKey, GradedPoly)> = self
            .subs
            .iter()
            .filter(|(k, _)| **k != top)
            .map(|(k, p)| {
                let q = p.substitute(|a| {
                    (self.key_of(a) == Some(top)).then(|| rhs.nth_time_derivative(a.deriv()))
                });
                (*k, q)
            })
            .collect();
        self.subs.extend(updated);
        self.log.push(Derived { pivot: top, rhs: rhs.to_string(), source });
        Ok(())
    }

    /// Every stored equation varies to zero within the horizon.
    pub fn is_closed(&self) -> bool {
        self.subs.iter().all(|(k, rhs)| {
            let eq = &GradedPoly::atom(self.atom(*k)) - rhs;
            Charge::BOTH.iter().all(|ch| self.vary(&eq, *ch).is_none_or(|v| self.reduce(&v).is_zero()))
        })
    }

    /// The constrained superfield through the horizon.
    pub fn constrained_field(&self, exact: bool) -> SuperField {
        let comps = CompKey::all(self.horizon).map(|k| (k, self.reduce(&self.field.component(k)))).collect();
        SuperField::from_parts(self.delta, self.horizon, comps, exact, self.horizon + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishing_propagates_upward() {
        let mut cs = ConstraintSystem::new(Degree::ZERO, 5);
        cs.impose_vanishing(CompKey::new(2, 0, 0)).unwrap();
        let vanishing = cs.vanishing();
        for key in CompKey::all(5) {
            assert_eq!(vanishing.contains(&key), key.k >= 2, "{}", key);
        }
        assert!(cs.is_closed());
    }

    #[test]
    fn closure_is_idempotent() {
        let mut cs = ConstraintSystem::new(Degree::D10, 3);
        cs.impose_vanishing(CompKey::new(1, 0, 0)).unwrap();
        let before = cs.substitutions().clone();
        let eqs: Vec<GradedPoly> =
            before.iter().map(|(k, rhs)| &GradedPoly::atom(cs.atom(*k)) - rhs).collect();
        for eq in eqs {
            cs.impose(eq).unwrap();
        }
        assert_eq!(&before, cs.substitutions());
    }

    #[test]
    fn non_linear_constraint_is_rejected() {
        let mut cs = ConstraintSystem::new(Degree::ZERO, 2);
        let a = GradedPoly::atom(cs.atom(CompKey::new(0, 0, 0)));
        assert!(cs.impose(a.mul(&a)).is_err());
    }
}
