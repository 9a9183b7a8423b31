use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{koszul_sign, normalize, parse_poly, Atom, AtomTable, Coefficient, Degree, GradedPoly};
use crate::error::{Error, Result};

/// Index of the coefficient of `z^k θ10^alpha θ01^beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CompKey {
    pub k: u32,
    pub alpha: u8,
    pub beta: u8,
}

impl CompKey {
    pub const fn new(k: u32, alpha: u8, beta: u8) -> Self {
        CompKey { k, alpha, beta }
    }

    /// Degree of `z^k θ10^alpha θ01^beta`.
    pub fn coord_degree(self) -> Degree {
        Degree::new((self.k + self.alpha as u32) as u8 & 1, (self.k + self.beta as u32) as u8 & 1)
    }

    /// All keys with `k <= truncation`, ordered by k then (alpha, beta).
    pub fn all(truncation: u32) -> impl Iterator<Item = CompKey> {
        (0..=truncation).flat_map(|k| {
            [(0, 0), (1, 0), (0, 1), (1, 1)].into_iter().map(move |(a, b)| CompKey::new(k, a, b))
        })
    }
}

impl fmt::Display for CompKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k, self.alpha, self.beta)
    }
}

/// Name of the generic component atom at `key`, e.g. `f_010`.
pub fn component_name(stem: &str, key: CompKey) -> String {
    format!("{}_{}{}{}", stem, key.k, key.alpha, key.beta)
}

/// Truncated series `Σ z^k θ10^α θ01^β f_kαβ(t)` of overall degree `delta`.
///
/// `valid_orders` counts the z-orders that are known to be correct: orders
/// `k < valid_orders` agree with the untruncated series. For an exact field every
/// retained order is valid and nothing beyond the truncation is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperField {
    delta: Degree,
    truncation: u32,
    comps: BTreeMap<CompKey, GradedPoly>,
    exact: bool,
    valid_orders: u32,
}

impl SuperField {
    pub fn zero(delta: Degree, truncation: u32) -> Self {
        SuperField { delta, truncation, comps: BTreeMap::new(), exact: true, valid_orders: truncation + 1 }
    }

    /// A finite superfield from explicit components. Errors on inhomogeneous or
    /// wrongly graded components, or keys beyond the truncation.
    pub fn from_components(
        delta: Degree,
        truncation: u32,
        comps: impl IntoIterator<Item = (CompKey, GradedPoly)>,
    ) -> Result<Self> {
        let mut f = SuperField::zero(delta, truncation);
        for (key, p) in comps {
            if key.k > truncation || key.alpha > 1 || key.beta > 1 {
                return Err(Error::Constraint(format!("component {} outside truncation {}", key, truncation)));
            }
            if p.is_zero() {
                continue;
            }
            let want = f.component_degree(key);
            match p.degree() {
                Some(d) if d == want => {}
                _ => {
                    return Err(Error::NotHomogeneous(format!(
                        "component {} must have degree {}: {}",
                        key, want, p
                    )))
                }
            }
            f.comps.insert(key, p);
        }
        Ok(f)
    }

    /// `Ψ = c` with `c` at the (0,0,0) slot.
    pub fn constant(poly: GradedPoly, truncation: u32) -> Result<Self> {
        let d = poly.degree().unwrap_or(Degree::ZERO);
        SuperField::from_components(d, truncation, [(CompKey::new(0, 0, 0), poly)])
    }

    pub(crate) fn from_parts(
        delta: Degree,
        truncation: u32,
        comps: BTreeMap<CompKey, GradedPoly>,
        exact: bool,
        valid_orders: u32,
    ) -> Self {
        let comps = comps.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        SuperField { delta, truncation, comps, exact, valid_orders: valid_orders.min(truncation + 1) }
    }

    pub fn delta(&self) -> Degree {
        self.delta
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Number of leading z-orders that are reliable (see type docs).
    pub fn valid_orders(&self) -> u32 {
        self.valid_orders
    }

    pub fn component_degree(&self, key: CompKey) -> Degree {
        self.delta + key.coord_degree()
    }

    pub fn component(&self, key: CompKey) -> GradedPoly {
        self.comps.get(&key).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (CompKey, &GradedPoly)> {
        self.comps.iter().map(|(k, p)| (*k, p))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Marks the field as a truncation of an infinite series.
    pub fn into_inexact(mut self) -> Self {
        self.exact = false;
        self
    }

    pub fn map_components(&self, delta: Degree, mut f: impl FnMut(CompKey, &GradedPoly) -> GradedPoly) -> Self {
        let comps = self.comps.iter().map(|(k, p)| (*k, f(*k, p))).collect();
        SuperField::from_parts(delta, self.truncation, comps, self.exact, self.valid_orders)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        self.map_components(self.delta, |_, p| p.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.scale(&Coefficient::from_int(-1))
    }

    pub fn add(&self, other: &SuperField) -> Result<Self> {
        if self.truncation != other.truncation {
            return Err(Error::TruncationMismatch(self.truncation, other.truncation));
        }
        if self.is_zero() {
            return Ok(SuperField { delta: self.delta, ..other.clone() }.with_validity_of(self));
        }
        if other.is_zero() {
            return Ok(self.clone().with_validity_of(other));
        }
        if self.delta != other.delta {
            return Err(Error::NotHomogeneous(format!(
                "cannot add superfields of degree {} and {}",
                self.delta, other.delta
            )));
        }
        let mut comps = self.comps.clone();
        for (k, p) in &other.comps {
            let sum = &comps.get(k).cloned().unwrap_or_default() + p;
            comps.insert(*k, sum);
        }
        Ok(SuperField::from_parts(
            self.delta,
            self.truncation,
            comps,
            self.exact && other.exact,
            self.valid_orders.min(other.valid_orders),
        ))
    }

    pub fn sub(&self, other: &SuperField) -> Result<Self> {
        self.add(&other.neg())
    }

    fn with_validity_of(mut self, other: &SuperField) -> Self {
        self.exact &= other.exact;
        self.valid_orders = self.valid_orders.min(other.valid_orders);
        self
    }

    /// Restriction to the z-orders known to be correct.
    pub fn reliable_part(&self) -> Self {
        let comps = self.comps.iter().filter(|(k, _)| k.k < self.valid_orders).map(|(k, p)| (*k, p.clone())).collect();
        SuperField::from_parts(self.delta, self.truncation, comps, self.exact, self.valid_orders)
    }

    /// Componentwise substitution of atoms.
    pub fn substitute(&self, mut subst: impl FnMut(&Atom) -> Option<GradedPoly>) -> Self {
        self.map_components(self.delta, |_, p| p.substitute(&mut subst))
    }
}

/// Generic superfield with a fresh atom `stem_kαβ` in every slot `k <= truncation`.
pub fn generic_super_field(delta: Degree, truncation: u32, stem: &str) -> SuperField {
    let mut comps = BTreeMap::new();
    for key in CompKey::all(truncation) {
        let d = delta + key.coord_degree();
        comps.insert(key, GradedPoly::atom(Atom::field(&component_name(stem, key), d)));
    }
    SuperField::from_parts(delta, truncation, comps, false, truncation + 1)
}

/// Cauchy product. Orders above the truncation are dropped.
pub fn mul_super_fields(x: &SuperField, y: &SuperField) -> Result<SuperField> {
    if x.truncation != y.truncation {
        return Err(Error::TruncationMismatch(x.truncation, y.truncation));
    }
    let kmax = x.truncation;
    let mut comps: BTreeMap<CompKey, GradedPoly> = BTreeMap::new();
    let mut discarded = false;
    for (k1, c1) in &x.comps {
        for (k2, c2) in &y.comps {
            if (k1.alpha == 1 && k2.alpha == 1) || (k1.beta == 1 && k2.beta == 1) {
                continue;
            }
            // c1 moves right past the coordinates of the second factor, then z^k2
            // moves left past θ10^α1 θ01^β1. θ10 and θ01 commute.
            let z2 = Degree::D11.times(k2.k as usize);
            let theta1 = Degree::new(k1.alpha, k1.beta);
            let sign = koszul_sign(z2, theta1);
            let left = c1.twist(k2.coord_degree());
            let prod = left.mul(c2).scale_int(sign as i64);
            if prod.is_zero() {
                continue;
            }
            let key = CompKey::new(k1.k + k2.k, k1.alpha + k2.alpha, k1.beta + k2.beta);
            if key.k > kmax {
                discarded = true;
                continue;
            }
            let entry = comps.entry(key).or_default();
            *entry = &*entry + &prod;
        }
    }
    let exact = x.exact && y.exact && !discarded;
    let valid = if x.exact && y.exact { kmax + 1 } else { x.valid_orders.min(y.valid_orders) };
    Ok(SuperField::from_parts(x.delta + y.delta, kmax, comps, exact, valid))
}

/// Reserved coordinate atoms used to view a superfield as one polynomial.
pub fn coordinate_atoms() -> [Atom; 3] {
    [
        Atom::constant("~z", Degree::D11),
        Atom::constant("~theta10", Degree::D10),
        Atom::constant("~theta01", Degree::D01),
    ]
}

/// `Σ z^k θ10^α θ01^β c` as a single polynomial in the coordinate atoms.
pub fn flatten(f: &SuperField) -> GradedPoly {
    let [z, t10, t01] = coordinate_atoms();
    let mut out = GradedPoly::zero();
    for (key, c) in &f.comps {
        let mut coords = vec![z.clone(); key.k as usize];
        if key.alpha == 1 {
            coords.push(t10.clone());
        }
        if key.beta == 1 {
            coords.push(t01.clone());
        }
        let prefix = GradedPoly::monomial(coords, Coefficient::one());
        out = &out + &prefix.mul(c);
    }
    out
}

/// Inverse of [`flatten`]: collects the coordinate atoms of each monomial to the left.
pub fn unflatten(p: &GradedPoly, delta: Degree, truncation: u32) -> Result<SuperField> {
    let [z, t10, t01] = coordinate_atoms();
    let mut comps: BTreeMap<CompKey, GradedPoly> = BTreeMap::new();
    let mut discarded = false;
    for (atoms, coeff) in p.terms() {
        let k = atoms.iter().filter(|a| **a == z).count() as u32;
        let alpha = atoms.contains(&t10) as u8;
        let beta = atoms.contains(&t01) as u8;
        let rest: Vec<Atom> = atoms.iter().filter(|a| **a != z && **a != t10 && **a != t01).cloned().collect();
        let mut target = vec![z.clone(); k as usize];
        if alpha == 1 {
            target.push(t10.clone());
        }
        if beta == 1 {
            target.push(t01.clone());
        }
        target.extend(rest.iter().cloned());
        // normalize(target) = s * canonical, so canonical = s * target
        let s = normalize(target, Coefficient::one()).expect("nonzero monomial").coeff;
        if k > truncation {
            discarded = true;
            continue;
        }
        let key = CompKey::new(k, alpha, beta);
        let entry = comps.entry(key).or_default();
        entry.add_term(rest, coeff * &s);
    }
    let mut f = SuperField::from_components(delta, truncation, comps)?;
    f.exact = !discarded;
    Ok(f)
}

/// Outcome of `∫ dt dz dθ10 dθ01`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BerezinResult {
    pub integrand: GradedPoly,
    pub integrable: bool,
    pub obstruction: GradedPoly,
    /// Set when the inspected orders may be unreliable.
    pub warning: Option<String>,
}

pub fn berezin_integrate(f: &SuperField) -> BerezinResult {
    let integrand = f.component(CompKey::new(0, 1, 1));
    let obstruction = f.component(CompKey::new(1, 0, 0));
    let warning = if !f.exact && f.valid_orders < 2 {
        Some(format!("only {} reliable z-order(s); the z-linear part may be incomplete", f.valid_orders))
    } else {
        None
    };
    BerezinResult { integrable: obstruction.is_zero(), integrand, obstruction, warning }
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    k: u32,
    alpha: u8,
    beta: u8,
    poly: String,
}

#[derive(Serialize, Deserialize)]
struct AtomJson {
    name: String,
    degree: [u8; 2],
    kind: crate::algebra::AtomKind,
}

#[derive(Serialize, Deserialize)]
struct SuperFieldJson {
    delta: [u8; 2],
    truncation: u32,
    #[serde(default)]
    exact: Option<bool>,
    components: Vec<ComponentJson>,
    #[serde(default)]
    atoms: Vec<AtomJson>,
}

impl SuperField {
    pub fn to_json(&self) -> serde_json::Value {
        let table = AtomTable::from_polys(self.comps.values());
        let doc = SuperFieldJson {
            delta: [self.delta.a, self.delta.b],
            truncation: self.truncation,
            exact: Some(self.exact),
            components: self
                .comps
                .iter()
                .map(|(k, p)| ComponentJson { k: k.k, alpha: k.alpha, beta: k.beta, poly: p.to_string() })
                .collect(),
            atoms: table
                .0
                .iter()
                .map(|(n, e)| AtomJson { name: n.clone(), degree: [e.degree.a, e.degree.b], kind: e.kind })
                .collect(),
        };
        serde_json::to_value(doc).expect("serializable")
    }

    /// Reads the document written by [`SuperField::to_json`]. Atoms not listed in the
    /// document's `atoms` table are looked up in `extra`.
    pub fn from_json(value: &serde_json::Value, extra: &AtomTable) -> Result<Self> {
        let doc: SuperFieldJson = serde_json::from_value(value.clone()).map_err(|e| Error::Json(e.to_string()))?;
        let mut table = extra.clone();
        for a in &doc.atoms {
            table.0.insert(
                a.name.clone(),
                crate::algebra::AtomEntry { degree: Degree::new(a.degree[0], a.degree[1]), kind: a.kind },
            );
        }
        let mut comps = Vec::new();
        for c in &doc.components {
            comps.push((CompKey::new(c.k, c.alpha, c.beta), parse_poly(&c.poly, &table)?));
        }
        let mut f = SuperField::from_components(Degree::new(doc.delta[0], doc.delta[1]), doc.truncation, comps)?;
        f.exact = doc.exact.unwrap_or(true);
        if !f.exact {
            f.valid_orders = doc.truncation + 1;
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_degrees() {
        let f = generic_super_field(Degree::ZERO, 0, "f");
        let order = [CompKey::new(0, 0, 0), CompKey::new(0, 1, 0), CompKey::new(0, 0, 1), CompKey::new(0, 1, 1)];
        let degs: Vec<Degree> = order.iter().map(|k| f.component(*k).degree().unwrap()).collect();
        assert_eq!(degs, vec![Degree::ZERO, Degree::D10, Degree::D01, Degree::D11]);

        let g = generic_super_field(Degree::D11, 0, "f");
        let degs: Vec<Degree> = order.iter().map(|k| g.component(*k).degree().unwrap()).collect();
        assert_eq!(degs, vec![Degree::D11, Degree::D01, Degree::D10, Degree::ZERO]);

        let h = generic_super_field(Degree::ZERO, 2, "f");
        assert_eq!(h.components().count(), 12);
        assert_eq!(h.component(CompKey::new(1, 1, 0)).degree(), Some(Degree::D01));
    }

    #[test]
    fn theta_product_sign() {
        let psi = GradedPoly::atom(Atom::field("psi", Degree::D10));
        let xi = GradedPoly::atom(Atom::field("xi", Degree::D01));
        let a = SuperField::from_components(Degree::ZERO, 1, [(CompKey::new(0, 1, 0), psi.clone())]).unwrap();
        let b = SuperField::from_components(Degree::ZERO, 1, [(CompKey::new(0, 0, 1), xi.clone())]).unwrap();
        let p = mul_super_fields(&a, &b).unwrap();
        assert_eq!(p.component(CompKey::new(0, 1, 1)), psi.mul(&xi));
        assert_eq!(p.components().count(), 1);
    }

    #[test]
    fn product_with_one_is_identity() {
        let f = generic_super_field(Degree::D10, 2, "f");
        let one = SuperField::constant(GradedPoly::one(), 2).unwrap();
        let p = mul_super_fields(&f, &one).unwrap();
        assert_eq!(p.comps, f.comps);
        let q = mul_super_fields(&one, &f).unwrap();
        assert_eq!(q.comps, f.comps);
    }

    #[test]
    fn flatten_round_trip() {
        for d in Degree::ALL {
            let f = generic_super_field(d, 3, "g");
            let back = unflatten(&flatten(&f), d, 3).unwrap();
            assert_eq!(back.comps, f.comps);
        }
    }

    #[test]
    fn berezin_examples() {
        let f = generic_super_field(Degree::ZERO, 2, "F");
        let r = berezin_integrate(&f);
        assert_eq!(r.integrand.to_string(), "F_011");
        assert!(!r.integrable);

        let g = GradedPoly::atom(Atom::field("g", Degree::D11));
        let zg = SuperField::from_components(Degree::ZERO, 1, [(CompKey::new(1, 0, 0), g.clone())]).unwrap();
        let r = berezin_integrate(&zg);
        assert_eq!(r.obstruction, g);
        assert!(!r.integrable);

        let h = GradedPoly::atom(Atom::field("h", Degree::D11));
        let tt = SuperField::from_components(Degree::ZERO, 1, [(CompKey::new(0, 1, 1), h.clone())]).unwrap();
        let r = berezin_integrate(&tt);
        assert_eq!(r.integrand, h);
        assert!(r.integrable);
    }

    #[test]
    fn wrong_component_degree_is_rejected() {
        let psi = GradedPoly::atom(Atom::field("psi", Degree::D10));
        assert!(SuperField::from_components(Degree::ZERO, 1, [(CompKey::new(0, 0, 0), psi)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = generic_super_field(Degree::D01, 2, "f");
        let v = f.to_json();
        let back = SuperField::from_json(&v, &AtomTable::new()).unwrap();
        assert_eq!(back.comps, f.comps);
        assert_eq!(back.delta, f.delta);
    }
}
