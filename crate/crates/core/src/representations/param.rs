use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::Coefficient;
use crate::error::{Error, Result};

/// Formal parameters of representation matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    E,
    Lambda,
    Mu,
    C,
    /// An adjoined algebraic element (root of a relation).
    R,
}

pub const NVARS: usize = 5;

impl Var {
    pub const ALL: [Var; NVARS] = [Var::E, Var::Lambda, Var::Mu, Var::C, Var::R];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::E => "E",
            Var::Lambda => "lambda",
            Var::Mu => "mu_rep",
            Var::C => "c",
            Var::R => "r",
        }
    }
}

type Exps = [u32; NVARS];

/// Commutative polynomial in [`Var`] over the Gaussian rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamPoly {
    terms: BTreeMap<Exps, Coefficient>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn constant(c: Coefficient) -> Self {
        let mut p = ParamPoly::zero();
        p.push([0; NVARS], c);
        p
    }

    pub fn int(n: i64) -> Self {
        ParamPoly::constant(Coefficient::from_int(n))
    }

    pub fn one() -> Self {
        ParamPoly::int(1)
    }

    pub fn var(v: Var) -> Self {
        ParamPoly::monomial(Coefficient::one(), &[(v, 1)])
    }

    pub fn monomial(c: Coefficient, powers: &[(Var, u32)]) -> Self {
        let mut e = [0; NVARS];
        for (v, n) in powers {
            e[v.index()] += n;
        }
        let mut p = ParamPoly::zero();
        p.push(e, c);
        p
    }

    fn push(&mut self, e: Exps, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Coefficient::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<Coefficient> {
        if self.is_constant() {
            Some(self.terms.get(&[0; NVARS]).cloned().unwrap_or_else(Coefficient::zero))
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Coefficient)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.push(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.push(*e, -c);
        }
        out
    }

    pub fn neg(&self) -> ParamPoly {
        self.scale(&Coefficient::from_int(-1))
    }

    pub fn scale(&self, c: &Coefficient) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e, k) in &self.terms {
            out.push(*e, k * c);
        }
        out
    }

    pub fn mul(&self, o: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = *e1;
                for i in 0..NVARS {
                    e[i] += e2[i];
                }
                out.push(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> ParamPoly {
        (0..n).fold(ParamPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    /// Coefficient of `v^k`, as a polynomial in the other variables.
    pub fn coeff_in(&self, v: Var, k: u32) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e, c) in &self.terms {
            if e[v.index()] == k {
                let mut e2 = *e;
                e2[v.index()] = 0;
                out.push(e2, c.clone());
            }
        }
        out
    }

    /// Replaces each variable by a polynomial.
    pub fn compose(&self, subst: &dyn Fn(Var) -> Option<ParamPoly>) -> ParamPoly {
        let images: Vec<Option<ParamPoly>> = Var::ALL.iter().map(|v| subst(*v)).collect();
        let mut out = ParamPoly::zero();
        for (e, c) in &self.terms {
            let mut term = ParamPoly::constant(c.clone());
            let mut rest = [0; NVARS];
            for (i, img) in images.iter().enumerate() {
                match img {
                    Some(p) => term = term.mul(&p.pow(e[i])),
                    None => rest[i] = e[i],
                }
            }
            let mut m = ParamPoly::zero();
            m.push(rest, Coefficient::one());
            out = out.add(&term.mul(&m));
        }
        out
    }

    fn leading(&self) -> Option<(&Exps, &Coefficient)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        let (de, dc) = d.leading()?;
        let (de, dc) = (*de, dc.clone());
        let mut rem = self.clone();
        let mut q = ParamPoly::zero();
        while let Some((re, rc)) = rem.leading() {
            if (0..NVARS).any(|i| re[i] < de[i]) {
                return None;
            }
            let mut e = [0; NVARS];
            for i in 0..NVARS {
                e[i] = re[i] - de[i];
            }
            let c = rc / &dc;
            let mut t = ParamPoly::zero();
            t.push(e, c);
            rem = rem.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Smallest exponent of each variable over all terms.
    fn min_exps(&self) -> Exps {
        let mut m = [u32::MAX; NVARS];
        for e in self.terms.keys() {
            for i in 0..NVARS {
                m[i] = m[i].min(e[i]);
            }
        }
        if self.is_zero() {
            [0; NVARS]
        } else {
            m
        }
    }

    fn shift_down(&self, by: &Exps) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            for i in 0..NVARS {
                e2[i] -= by[i];
            }
            out.push(e2, c.clone());
        }
        out
    }

    pub fn leading_coefficient(&self) -> Coefficient {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Coefficient::zero)
    }

    /// Evaluates at numeric values for all variables that occur.
    pub fn eval(&self, vals: &dyn Fn(Var) -> Coefficient) -> Coefficient {
        let mut acc = Coefficient::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in Var::ALL.iter().enumerate() {
                if e[i] > 0 {
                    t = &t * &vals(*v).pow(e[i]);
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|v| self.degree_in(*v) > 0).collect()
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.leading_negative();
            let mag = if negative { -c } else { c.clone() };
            match (n == 0, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = Var::ALL
                .iter()
                .filter(|v| e[v.index()] > 0)
                .map(|v| match e[v.index()] {
                    1 => v.name().to_string(),
                    k => format!("{}^{}", v.name(), k),
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join(" "))?;
            } else {
                write!(f, "{} {}", mag, vars.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Parses the output of `Display for ParamPoly`.
pub fn parse_param_poly(text: &str) -> Result<ParamPoly> {
    let text = text.trim();
    if text == "0" {
        return Ok(ParamPoly::zero());
    }
    let mut out = ParamPoly::zero();
    let toks: Vec<&str> = text.split_whitespace().collect();
    let mut i = 0;
    let mut negative = false;
    let mut first = true;
    while i < toks.len() {
        if !first {
            match toks[i] {
                "+" => negative = false,
                "-" => negative = true,
                t => return Err(Error::Parse(format!("expected + or -, found {:?}", t))),
            }
            i += 1;
        }
        let mut head = toks.get(i).ok_or_else(|| Error::Parse("dangling sign".into()))?.to_string();
        if first && head.starts_with('-') && head != "-i" {
            negative = true;
            head = head[1..].to_string();
        }
        first = false;
        let mut coeff = Coefficient::one();
        let mut e = [0u32; NVARS];
        let take_var = |tok: &str, e: &mut Exps| -> Result<()> {
            let (name, pow) = match tok.split_once('^') {
                Some((n, p)) => (n, p.parse::<u32>().map_err(|_| Error::Parse(format!("bad power {:?}", tok)))?),
                None => (tok, 1),
            };
            let v = Var::ALL
                .into_iter()
                .find(|v| v.name() == name)
                .ok_or_else(|| Error::Parse(format!("unknown parameter {:?}", name)))?;
            e[v.index()] += pow;
            Ok(())
        };
        let starts_numeric = head.starts_with(|c: char| c.is_ascii_digit() || c == '(') || head == "i" || head == "-i";
        if starts_numeric {
            coeff = head.parse::<Coefficient>().map_err(Error::Parse)?;
        } else {
            take_var(&head, &mut e)?;
        }
        i += 1;
        while i < toks.len() && toks[i] != "+" && toks[i] != "-" {
            take_var(toks[i], &mut e)?;
            i += 1;
        }
        if negative {
            coeff = -coeff;
        }
        out.push(e, coeff);
    }
    Ok(out)
}

/// Element `num / den` of the fraction field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamScalar {
    pub num: ParamPoly,
    pub den: ParamPoly,
}

impl ParamScalar {
    pub fn zero() -> Self {
        ParamScalar { num: ParamPoly::zero(), den: ParamPoly::one() }
    }

    pub fn one() -> Self {
        ParamScalar::from_poly(ParamPoly::one())
    }

    pub fn int(n: i64) -> Self {
        ParamScalar::from_poly(ParamPoly::int(n))
    }

    pub fn coeff(c: Coefficient) -> Self {
        ParamScalar::from_poly(ParamPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        ParamScalar::from_poly(ParamPoly::var(v))
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        ParamScalar { num: p, den: ParamPoly::one() }
    }

    /// `num / den`, simplified; panics on a zero denominator.
    pub fn ratio(num: ParamPoly, den: ParamPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        ParamScalar { num, den }.simplified()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Cancels common monomial factors and numeric content, then tries exact division.
    pub fn simplified(self) -> Self {
        if self.num.is_zero() {
            return ParamScalar::zero();
        }
        let (mn, md) = (self.num.min_exps(), self.den.min_exps());
        let mut common = [0; NVARS];
        for i in 0..NVARS {
            common[i] = mn[i].min(md[i]);
        }
        let mut num = self.num.shift_down(&common);
        let mut den = self.den.shift_down(&common);
        if let Some(q) = num.div_exact(&den) {
            return ParamScalar::from_poly(q);
        }
        let lc = den.leading_coefficient();
        let inv = lc.inv().expect("nonzero leading coefficient");
        num = num.scale(&inv);
        den = den.scale(&inv);
        ParamScalar { num, den }
    }

    pub fn add(&self, o: &ParamScalar) -> ParamScalar {
        if self.den == o.den {
            return ParamScalar::ratio(self.num.add(&o.num), self.den.clone());
        }
        ParamScalar::ratio(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &ParamScalar) -> ParamScalar {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> ParamScalar {
        ParamScalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &ParamScalar) -> ParamScalar {
        ParamScalar::ratio(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn scale(&self, c: &Coefficient) -> ParamScalar {
        ParamScalar::ratio(self.num.scale(c), self.den.clone())
    }

    /// `None` when `self` is zero as a rational function.
    pub fn inv(&self) -> Option<ParamScalar> {
        if self.num.is_zero() {
            None
        } else {
            Some(ParamScalar::ratio(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, o: &ParamScalar) -> Option<ParamScalar> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn compose(&self, subst: &dyn Fn(Var) -> Option<ParamPoly>) -> Option<ParamScalar> {
        let den = self.den.compose(subst);
        if den.is_zero() {
            return None;
        }
        Some(ParamScalar::ratio(self.num.compose(subst), den))
    }

    /// Substitutes rational values for variables.
    pub fn substitute(&self, subst: &dyn Fn(Var) -> Option<ParamScalar>) -> Option<ParamScalar> {
        let eval = |p: &ParamPoly| -> ParamScalar {
            let mut acc = ParamScalar::zero();
            for (e, c) in p.terms() {
                let mut t = ParamScalar::coeff(c.clone());
                for (i, v) in Var::ALL.iter().enumerate() {
                    if e[i] == 0 {
                        continue;
                    }
                    let base = subst(*v).unwrap_or_else(|| ParamScalar::var(*v));
                    for _ in 0..e[i] {
                        t = t.mul(&base);
                    }
                }
                acc = acc.add(&t);
            }
            acc
        };
        let d = eval(&self.den);
        eval(&self.num).div(&d)
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den.constant_value() {
            Some(c) if c.is_one() => write!(f, "{}", self.num),
            _ => write!(f, "({}) / ({})", self.num, self.den),
        }
    }
}

/// Parses `Display for ParamScalar`.
pub fn parse_param_scalar(text: &str) -> Result<ParamScalar> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once(") / (") {
        let n = n.strip_prefix('(').ok_or_else(|| Error::Parse(t.to_string()))?;
        let d = d.strip_suffix(')').ok_or_else(|| Error::Parse(t.to_string()))?;
        let den = parse_param_poly(d)?;
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(ParamScalar::ratio(parse_param_poly(n)?, den))
    } else {
        Ok(ParamScalar::from_poly(parse_param_poly(t)?))
    }
}

/// The polynomial relation `poly = 0`, reduced with respect to `main`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub poly: ParamPoly,
    pub main: Var,
}

/// Fraction field of [`ParamPoly`], optionally modulo one relation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamRing {
    pub relation: Option<Relation>,
}

impl ParamRing {
    pub fn free() -> Self {
        ParamRing { relation: None }
    }

    /// The relation's leading coefficient in `main` must not involve `main`.
    pub fn with_relation(poly: ParamPoly, main: Var) -> Self {
        ParamRing { relation: Some(Relation { poly, main }) }
    }

    /// Pseudo-remainder of `p`; returns `(r, m)` with `lc^m p ≡ r`.
    fn prem(&self, p: &ParamPoly) -> (ParamPoly, u32) {
        let Some(rel) = &self.relation else { return (p.clone(), 0) };
        let n = rel.poly.degree_in(rel.main);
        if n == 0 {
            return (p.clone(), 0);
        }
        let lc = rel.poly.coeff_in(rel.main, n);
        let mut r = p.clone();
        let mut m = 0;
        loop {
            let d = r.degree_in(rel.main);
            if d < n || r.is_zero() {
                return (r, m);
            }
            let lr = r.coeff_in(rel.main, d);
            let shift = ParamPoly::monomial(Coefficient::one(), &[(rel.main, d - n)]);
            r = lc.mul(&r).sub(&lr.mul(&shift).mul(&rel.poly));
            m += 1;
        }
    }

    fn lead(&self) -> ParamPoly {
        match &self.relation {
            Some(rel) => rel.poly.coeff_in(rel.main, rel.poly.degree_in(rel.main)),
            None => ParamPoly::one(),
        }
    }

    /// Normal form of `s`. Errors if the denominator vanishes modulo the relation.
    pub fn reduce(&self, s: &ParamScalar) -> Result<ParamScalar> {
        if self.relation.is_none() {
            return Ok(s.clone());
        }
        let (rn, a) = self.prem(&s.num);
        let (rd, b) = self.prem(&s.den);
        if rd.is_zero() {
            return Err(Error::Constraint(format!("denominator {} vanishes modulo the relation", s.den)));
        }
        let lc = self.lead();
        // num/den = (rn / lc^a) / (rd / lc^b)
        let num = rn.mul(&lc.pow(b));
        let den = rd.mul(&lc.pow(a));
        let out = ParamScalar::ratio(num, den);
        let (n2, _) = self.prem(&out.num);
        if n2.is_zero() {
            return Ok(ParamScalar::zero());
        }
        Ok(out)
    }

    pub fn is_zero(&self, s: &ParamScalar) -> bool {
        self.prem(&s.num).0.is_zero()
    }

    pub fn eq(&self, a: &ParamScalar, b: &ParamScalar) -> bool {
        self.is_zero(&a.sub(b))
    }

    pub fn add(&self, a: &ParamScalar, b: &ParamScalar) -> ParamScalar {
        self.reduce_or_keep(a.add(b))
    }

    pub fn mul(&self, a: &ParamScalar, b: &ParamScalar) -> ParamScalar {
        self.reduce_or_keep(a.mul(b))
    }

    fn reduce_or_keep(&self, s: ParamScalar) -> ParamScalar {
        self.reduce(&s).unwrap_or(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e() -> ParamPoly {
        ParamPoly::var(Var::E)
    }
    fn lam() -> ParamPoly {
        ParamPoly::var(Var::Lambda)
    }
    fn c() -> ParamPoly {
        ParamPoly::var(Var::C)
    }

    #[test]
    fn exact_division_and_simplification() {
        let e2 = e().pow(2);
        let s = ParamScalar::ratio(e2.clone(), e());
        assert_eq!(s, ParamScalar::from_poly(e()));
        let num = e().add(&lam()).mul(&e().sub(&lam()));
        let s = ParamScalar::ratio(num, e().sub(&lam()));
        assert_eq!(s, ParamScalar::from_poly(e().add(&lam())));
        let t = ParamScalar::ratio(ParamPoly::one(), e());
        assert!(!t.is_polynomial());
    }

    #[test]
    fn relation_reduction() {
        let i = Coefficient::i();
        // (E c + i λ)^2 - λ (E^2 - λ)
        let ec = e().mul(&c()).add(&lam().scale(&i));
        let rel = ec.pow(2).sub(&lam().mul(&e().pow(2).sub(&lam())));
        let ring = ParamRing::with_relation(rel.clone(), Var::C);
        assert!(ring.is_zero(&ParamScalar::from_poly(rel.mul(&e()))));
        assert!(!ring.is_zero(&ParamScalar::from_poly(c())));
        let c2 = ring.reduce(&ParamScalar::from_poly(c().pow(2))).unwrap();
        assert!(c2.num.degree_in(Var::C) < 2);
        assert!(ring.eq(&c2, &ParamScalar::from_poly(c().pow(2))));
    }

    #[test]
    fn parse_display_round_trip() {
        let two_i = Coefficient::gaussian(0, 1, 2, 1);
        let p = e().pow(2).mul(&c().pow(2)).add(&lam().mul(&e()).mul(&c()).scale(&two_i)).sub(&lam().mul(&e().pow(2)));
        let back = parse_param_poly(&p.to_string()).unwrap();
        assert_eq!(p, back);
        let s = ParamScalar::ratio(e().add(&ParamPoly::int(1)), lam());
        assert_eq!(parse_param_scalar(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn numeric_substitution() {
        let s = ParamScalar::ratio(e().mul(&c()), lam());
        let v = s
            .substitute(&|v| match v {
                Var::E => Some(ParamScalar::int(5)),
                Var::Lambda => Some(ParamScalar::int(9)),
                Var::C => Some(ParamScalar::coeff(Coefficient::gaussian(12, 5, -9, 5))),
                _ => None,
            })
            .unwrap();
        assert_eq!(v, ParamScalar::coeff(Coefficient::gaussian(12, 9, -1, 1)));
    }
}
