use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use super::atom::{atom_order, canonical_cmp, Atom};
use super::coeff::Coefficient;
use super::degree::{koszul_sign, Degree};
use crate::error::Error;

/// A coefficient times a product of atoms in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Coefficient,
    pub atoms: Vec<Atom>,
}

impl Monomial {
    pub fn degree(&self) -> Degree {
        atoms_degree(&self.atoms)
    }
}

pub fn atoms_degree(atoms: &[Atom]) -> Degree {
    atoms.iter().fold(Degree::ZERO, |d, a| d + a.degree())
}

/// Sorts `raw` into canonical order, applying one Koszul sign per adjacent transposition.
///
/// Returns `None` when an odd atom occurs twice.
pub fn normalize(mut raw: Vec<Atom>, coeff: Coefficient) -> Option<Monomial> {
    if coeff.is_zero() {
        return None;
    }
    let order = atom_order();
    let mut negative = false;
    for i in 1..raw.len() {
        let mut j = i;
        while j > 0 && canonical_cmp(&raw[j - 1], &raw[j], order) == std::cmp::Ordering::Greater {
            if raw[j - 1].degree().parity(raw[j].degree()) == 1 {
                negative = !negative;
            }
            raw.swap(j - 1, j);
            j -= 1;
        }
    }
    if raw.windows(2).any(|w| w[0] == w[1] && w[0].is_odd()) {
        return None;
    }
    let coeff = if negative { -coeff } else { coeff };
    Some(Monomial { coeff, atoms: raw })
}

/// Whether a polynomial has a single Z2^2-degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(Degree),
    Mixed,
}

/// Exact polynomial in graded atoms over the Gaussian rationals, in normal form.
#[derive(Default)]
pub struct GradedPoly {
    terms: BTreeMap<Vec<Atom>, Coefficient>,
    homogeneity: OnceLock<Homogeneity>,
}

impl Clone for GradedPoly {
    fn clone(&self) -> Self {
        GradedPoly { terms: self.terms.clone(), homogeneity: self.homogeneity.clone() }
    }
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for GradedPoly {}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPoly({})", self)
    }
}

impl GradedPoly {
    pub fn zero() -> Self {
        GradedPoly::default()
    }

    fn from_terms(terms: BTreeMap<Vec<Atom>, Coefficient>) -> Self {
        GradedPoly { terms, homogeneity: OnceLock::new() }
    }

    pub fn constant(c: Coefficient) -> Self {
        let mut p = GradedPoly::zero();
        p.push_raw(Vec::new(), c);
        p
    }

    pub fn one() -> Self {
        GradedPoly::constant(Coefficient::one())
    }

    pub fn atom(a: Atom) -> Self {
        GradedPoly::monomial(vec![a], Coefficient::one())
    }

    /// Normalizes `atoms` with `coeff`; zero if nilpotency kills it.
    pub fn monomial(atoms: Vec<Atom>, coeff: Coefficient) -> Self {
        let mut p = GradedPoly::zero();
        p.push_raw(atoms, coeff);
        p
    }

    fn push_raw(&mut self, atoms: Vec<Atom>, coeff: Coefficient) {
        if let Some(m) = normalize(atoms, coeff) {
            self.push_normal(m.atoms, m.coeff);
        }
    }

    fn push_normal(&mut self, atoms: Vec<Atom>, coeff: Coefficient) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(atoms) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        self.homogeneity = OnceLock::new();
    }

    /// Adds `coeff * atoms` (in any order) to `self`.
    pub fn add_term(&mut self, atoms: Vec<Atom>, coeff: Coefficient) {
        self.push_raw(atoms, coeff);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Atom], &Coefficient)> {
        self.terms.iter().map(|(a, c)| (a.as_slice(), c))
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(a, c)| Monomial { coeff: c.clone(), atoms: a.clone() })
    }

    /// Coefficient of the monomial with exactly these (normalized) atoms.
    pub fn coefficient_of(&self, atoms: &[Atom]) -> Coefficient {
        self.terms.get(atoms).cloned().unwrap_or_else(Coefficient::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Coefficient {
        self.coefficient_of(&[])
    }

    pub fn homogeneity(&self) -> Homogeneity {
        *self.homogeneity.get_or_init(|| {
            let mut degrees = self.terms.keys().map(|a| atoms_degree(a));
            match degrees.next() {
                None => Homogeneity::Zero,
                Some(d) => {
                    if degrees.all(|e| e == d) {
                        Homogeneity::Homogeneous(d)
                    } else {
                        Homogeneity::Mixed
                    }
                }
            }
        })
    }

    /// Degree if nonzero and homogeneous.
    pub fn degree(&self) -> Option<Degree> {
        match self.homogeneity() {
            Homogeneity::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity() != Homogeneity::Mixed
    }

    pub fn scale(&self, c: &Coefficient) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero();
        }
        GradedPoly::from_terms(self.terms.iter().map(|(a, k)| (a.clone(), k * c)).collect())
    }

    pub fn scale_int(&self, n: i64) -> GradedPoly {
        self.scale(&Coefficient::from_int(n))
    }

    /// Multiplies each monomial `m` by `koszul_sign(d, deg m)`: the effect of moving
    /// something of degree `d` from the right of `self` to its left.
    pub fn twist(&self, d: Degree) -> GradedPoly {
        if d == Degree::ZERO {
            return self.clone();
        }
        GradedPoly::from_terms(
            self.terms
                .iter()
                .map(|(a, k)| {
                    let s = koszul_sign(d, atoms_degree(a));
                    (a.clone(), k.clone().signed(s))
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut atoms = Vec::with_capacity(a.len() + b.len());
                atoms.extend_from_slice(a);
                atoms.extend_from_slice(b);
                out.push_raw(atoms, x * y);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> GradedPoly {
        let mut out = GradedPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// d/dt, extended by the Leibniz rule. d/dt has degree (0,0) so no signs arise.
    pub fn time_derivative(&self) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (atoms, c) in &self.terms {
            for (i, a) in atoms.iter().enumerate() {
                if let Some(da) = a.derived(1) {
                    let mut next = atoms.clone();
                    next[i] = da;
                    out.push_raw(next, c.clone());
                }
            }
        }
        out
    }

    pub fn nth_time_derivative(&self, n: u32) -> GradedPoly {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.time_derivative();
        }
        p
    }

    /// `xy - (-1)^{deg x . deg y} yx`.
    pub fn graded_bracket(x: &GradedPoly, y: &GradedPoly) -> Result<GradedPoly, Error> {
        let dx = match x.homogeneity() {
            Homogeneity::Zero => return Ok(GradedPoly::zero()),
            Homogeneity::Mixed => return Err(Error::NotHomogeneous(x.to_string())),
            Homogeneity::Homogeneous(d) => d,
        };
        let dy = match y.homogeneity() {
            Homogeneity::Zero => return Ok(GradedPoly::zero()),
            Homogeneity::Mixed => return Err(Error::NotHomogeneous(y.to_string())),
            Homogeneity::Homogeneous(d) => d,
        };
        let xy = x.mul(y);
        let yx = y.mul(x).scale_int(koszul_sign(dx, dy) as i64);
        Ok(&xy - &yx)
    }

    /// Coefficient `c` in `self = c * atom` with `atom` moved to the far right of each monomial.
    ///
    /// Monomials not containing `atom` must be absent; they are returned as the second value.
    pub fn strip_right(&self, atom: &Atom) -> (GradedPoly, GradedPoly) {
        let mut coeff = GradedPoly::zero();
        let mut rest = GradedPoly::zero();
        for (atoms, c) in &self.terms {
            match atoms.iter().position(|a| a == atom) {
                Some(pos) => {
                    let mut sign = 1i8;
                    for later in &atoms[pos + 1..] {
                        sign *= koszul_sign(atom.degree(), later.degree());
                    }
                    let mut remaining = atoms.clone();
                    remaining.remove(pos);
                    coeff.push_raw(remaining, c.clone().signed(sign));
                }
                None => rest.push_normal(atoms.clone(), c.clone()),
            }
        }
        (coeff, rest)
    }

    /// Replaces atoms by polynomials. `subst` receives each atom (with its derivative order)
    /// and returns its replacement, or `None` to keep it.
    pub fn substitute(&self, mut subst: impl FnMut(&Atom) -> Option<GradedPoly>) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (atoms, c) in &self.terms {
            let mut acc = GradedPoly::constant(c.clone());
            let mut pending: Vec<Atom> = Vec::new();
            for a in atoms {
                match subst(a) {
                    Some(rep) => {
                        if !pending.is_empty() {
                            acc = acc.mul(&GradedPoly::monomial(std::mem::take(&mut pending), Coefficient::one()));
                        }
                        acc = acc.mul(&rep);
                        if acc.is_zero() {
                            break;
                        }
                    }
                    None => pending.push(a.clone()),
                }
            }
            if !pending.is_empty() {
                acc = acc.mul(&GradedPoly::monomial(pending, Coefficient::one()));
            }
            out = &out + &acc;
        }
        out
    }

    /// Atoms occurring anywhere, including derivative order.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.terms.keys().flat_map(|a| a.iter().cloned()).collect()
    }

    /// Keeps only the monomials satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&[Atom]) -> bool) -> GradedPoly {
        GradedPoly::from_terms(
            self.terms.iter().filter(|(a, _)| keep(a)).map(|(a, c)| (a.clone(), c.clone())).collect(),
        )
    }

    /// Number of atoms in each monomial if all agree.
    pub fn is_linear(&self) -> bool {
        self.terms.keys().all(|a| a.len() == 1)
    }
}

impl<'a> Add<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (a, c) in &small.terms {
            out.push_normal(a.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.push_normal(a.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        GradedPoly::mul(self, rhs)
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale_int(-1)
    }
}

impl Add for GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: GradedPoly) -> GradedPoly {
        &self + &rhs
    }
}

impl Sub for GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: GradedPoly) -> GradedPoly {
        &self - &rhs
    }
}

impl std::iter::Sum for GradedPoly {
    fn sum<I: Iterator<Item = GradedPoly>>(iter: I) -> Self {
        iter.fold(GradedPoly::zero(), |acc, p| &acc + &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::atom::{with_atom_order, AtomOrder};

    fn psi() -> Atom {
        Atom::field("psi", Degree::D10)
    }
    fn xi() -> Atom {
        Atom::field("xi", Degree::D01)
    }
    fn phi() -> Atom {
        Atom::field("phi", Degree::ZERO)
    }
    fn big_f() -> Atom {
        Atom::field("F", Degree::D11)
    }

    #[test]
    fn odd_atom_squares_to_zero() {
        assert!(normalize(vec![psi(), psi()], Coefficient::one()).is_none());
        // (1,1) atoms are not nilpotent
        assert!(normalize(vec![big_f(), big_f()], Coefficient::one()).is_some());
    }

    #[test]
    fn distinct_odd_atoms_of_same_degree_anticommute() {
        let dpsi = psi().derived(1).unwrap();
        let m = normalize(vec![dpsi.clone(), psi()], Coefficient::one()).unwrap();
        assert_eq!(m.atoms, vec![psi(), dpsi]);
        assert_eq!(m.coeff, Coefficient::from_int(-1));
    }

    #[test]
    fn sectors_10_and_01_commute() {
        let m = normalize(vec![xi(), psi()], Coefficient::one()).unwrap();
        assert_eq!(m.atoms, vec![psi(), xi()]);
        assert_eq!(m.coeff, Coefficient::one());
        let a = GradedPoly::atom(psi()).mul(&GradedPoly::atom(xi()));
        let b = GradedPoly::atom(xi()).mul(&GradedPoly::atom(psi()));
        assert_eq!(a, b);
    }

    #[test]
    fn products_of_small_polys() {
        let phi2 = GradedPoly::atom(phi()).mul(&GradedPoly::atom(phi()));
        assert_eq!(phi2, GradedPoly::monomial(vec![phi(), phi()], Coefficient::one()));
        let fpsi = GradedPoly::atom(big_f()).mul(&GradedPoly::atom(psi()));
        let psif = GradedPoly::atom(psi()).mul(&GradedPoly::atom(big_f()));
        assert_eq!(fpsi, -&psif);
    }

    #[test]
    fn time_derivative_examples() {
        let phi2 = GradedPoly::monomial(vec![phi(), phi()], Coefficient::one());
        let expected = GradedPoly::monomial(vec![phi(), phi().derived(1).unwrap()], Coefficient::from_int(2));
        assert_eq!(phi2.time_derivative(), expected);

        let psixi = GradedPoly::monomial(vec![psi(), xi()], Coefficient::one());
        let mut expected = GradedPoly::monomial(vec![psi().derived(1).unwrap(), xi()], Coefficient::one());
        expected.add_term(vec![psi(), xi().derived(1).unwrap()], Coefficient::one());
        assert_eq!(psixi.time_derivative(), expected);

        let mu = GradedPoly::atom(Atom::constant("mu_coupling", Degree::D11));
        assert!(mu.time_derivative().is_zero());
    }

    #[test]
    fn bracket_examples() {
        let p1 = GradedPoly::atom(Atom::field("psi1", Degree::D10));
        let p2 = GradedPoly::atom(Atom::field("psi2", Degree::D10));
        assert!(GradedPoly::graded_bracket(&p1, &p2).unwrap().is_zero());
        let t10 = GradedPoly::atom(Atom::field("th10", Degree::D10));
        let t01 = GradedPoly::atom(Atom::field("th01", Degree::D01));
        assert!(GradedPoly::graded_bracket(&t10, &t01).unwrap().is_zero());
        let x = &GradedPoly::atom(phi()) + &GradedPoly::atom(Atom::field("chi", Degree::ZERO));
        assert!(GradedPoly::graded_bracket(&x, &x).unwrap().is_zero());
        let mixed = &p1 + &GradedPoly::atom(phi());
        assert!(matches!(GradedPoly::graded_bracket(&mixed, &p2), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn strip_right_moves_atom_through_later_factors() {
        let eps = Atom::constant("eps10", Degree::D10);
        // eps psi F = -(psi eps F) ... with eps moved to the right past psi and F
        let p = GradedPoly::monomial(vec![eps.clone(), psi(), big_f()], Coefficient::one());
        let (c, rest) = p.strip_right(&eps);
        assert!(rest.is_zero());
        // reconstruct
        let back = c.mul(&GradedPoly::atom(eps));
        assert_eq!(back, p);
    }

    #[test]
    fn reverse_order_changes_layout_not_value() {
        let build = || {
            let a = &GradedPoly::atom(psi()) + &GradedPoly::atom(big_f());
            let b = &GradedPoly::atom(xi()) + &GradedPoly::atom(psi().derived(1).unwrap());
            a.mul(&b)
        };
        let lex = build();
        let rev = with_atom_order(AtomOrder::ReverseLex, build);
        assert_eq!(lex.len(), rev.len());
        // psi F appears with opposite relative layout: check via a sign-sensitive evaluation
        let lex_psi_f = lex.coefficient_of(&[big_f(), psi().derived(1).unwrap()]);
        let rev_psi_f = rev.coefficient_of(&[psi().derived(1).unwrap(), big_f()]);
        assert_eq!(lex_psi_f, -rev_psi_f);
    }
}
