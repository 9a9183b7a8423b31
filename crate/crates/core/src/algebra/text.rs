//! Canonical text form of polynomials: `3/2 phi^{(1)}^2 - i psi psi^{(1)} + (1-2i) F`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::atom::{Atom, AtomKind};
use super::coeff::Coefficient;
use super::degree::Degree;
use super::poly::GradedPoly;
use crate::error::{Error, Result};

/// Degree and kind for each atom name, needed to parse text back into atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomTable(pub BTreeMap<String, AtomEntry>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomEntry {
    pub degree: Degree,
    pub kind: AtomKind,
}

impl AtomTable {
    pub fn new() -> Self {
        AtomTable::default()
    }

    pub fn insert(&mut self, atom: &Atom) {
        self.0
            .insert(atom.name().to_string(), AtomEntry { degree: atom.degree(), kind: atom.kind() });
    }

    pub fn from_polys<'a>(polys: impl IntoIterator<Item = &'a GradedPoly>) -> Self {
        let mut t = AtomTable::new();
        for p in polys {
            for a in p.atoms() {
                t.insert(&a);
            }
        }
        t
    }

    pub fn lookup(&self, name: &str, deriv: u32) -> Result<Atom> {
        let e = self.0.get(name).ok_or_else(|| Error::UnknownAtom(name.to_string()))?;
        let base = match e.kind {
            AtomKind::Field => Atom::field(name, e.degree),
            AtomKind::Constant => Atom::constant(name, e.degree),
        };
        base.derived(deriv)
            .ok_or_else(|| Error::Parse(format!("constant `{}` cannot carry a derivative", name)))
    }
}

/// Groups consecutive equal atoms into (atom, multiplicity).
fn runs(atoms: &[Atom]) -> Vec<(&Atom, usize)> {
    let mut out: Vec<(&Atom, usize)> = Vec::new();
    for a in atoms {
        match out.last_mut() {
            Some((b, n)) if *b == a => *n += 1,
            _ => out.push((a, 1)),
        }
    }
    out
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    atoms: &[Atom],
    c: &Coefficient,
    atom_fmt: &dyn Fn(&Atom, usize) -> String,
) -> fmt::Result {
    let negative = c.leading_negative();
    let mag = if negative { -c } else { c.clone() };
    match (first, negative) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let body: Vec<String> = runs(atoms).into_iter().map(|(a, n)| atom_fmt(a, n)).collect();
    if body.is_empty() {
        write!(f, "{}", mag)
    } else if mag.is_one() {
        write!(f, "{}", body.join(" "))
    } else {
        write!(f, "{} {}", mag, body.join(" "))
    }
}

fn plain_atom(a: &Atom, n: usize) -> String {
    if n == 1 {
        a.to_string()
    } else {
        format!("{}^{}", a, n)
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (atoms, c)) in self.terms().enumerate() {
            write_term(f, i == 0, atoms, c, &plain_atom)?;
        }
        Ok(())
    }
}

fn is_coefficient_token(tok: &str) -> bool {
    let first = tok.chars().next().unwrap_or(' ');
    first.is_ascii_digit() || first == '(' || tok == "i" || tok == "-i"
}

fn parse_atom_token(tok: &str, table: &AtomTable) -> Result<(Atom, usize)> {
    let bad = || Error::Parse(format!("bad atom token {:?}", tok));
    let name_end = tok.find('^').unwrap_or(tok.len());
    let name = &tok[..name_end];
    if name.is_empty() || !name.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_') {
        return Err(bad());
    }
    let mut rest = &tok[name_end..];
    let mut deriv = 0u32;
    if let Some(r) = rest.strip_prefix("^{(") {
        let close = r.find(")}").ok_or_else(bad)?;
        deriv = r[..close].parse().map_err(|_| bad())?;
        rest = &r[close + 2..];
    }
    let mut power = 1usize;
    if let Some(r) = rest.strip_prefix('^') {
        power = r.parse().map_err(|_| bad())?;
        rest = "";
    }
    if !rest.is_empty() {
        return Err(bad());
    }
    Ok((table.lookup(name, deriv)?, power))
}

/// Parses the canonical text form. Atom degrees come from `table`.
pub fn parse_poly(text: &str, table: &AtomTable) -> Result<GradedPoly> {
    let text = text.trim();
    if text == "0" {
        return Ok(GradedPoly::zero());
    }
    let mut out = GradedPoly::zero();
    let mut tokens = text.split_whitespace().peekable();
    let mut negative = false;
    let mut first = true;
    loop {
        if !first {
            match tokens.next() {
                None => break,
                Some("+") => negative = false,
                Some("-") => negative = true,
                Some(t) => return Err(Error::Parse(format!("expected + or -, found {:?}", t))),
            }
        }
        let mut head = tokens.next().ok_or_else(|| Error::Parse("dangling sign".into()))?.to_string();
        if first && head.starts_with('-') && head != "-i" {
            negative = true;
            head = head[1..].to_string();
            if head.is_empty() {
                head = tokens.next().ok_or_else(|| Error::Parse("dangling sign".into()))?.to_string();
            }
        }
        first = false;
        let mut coeff = Coefficient::one();
        let mut atoms = Vec::new();
        if is_coefficient_token(&head) {
            coeff = head.parse::<Coefficient>().map_err(Error::Parse)?;
        } else {
            let (a, n) = parse_atom_token(&head, table)?;
            atoms.extend(std::iter::repeat_n(a, n));
        }
        while let Some(&t) = tokens.peek() {
            if t == "+" || t == "-" {
                break;
            }
            let (a, n) = parse_atom_token(t, table)?;
            atoms.extend(std::iter::repeat_n(a, n));
            tokens.next();
        }
        if negative {
            coeff = -coeff;
        }
        out.add_term(atoms, coeff);
    }
    Ok(out)
}

const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn superscript(n: usize) -> String {
    n.to_string().chars().map(|d| SUPERSCRIPTS[d.to_digit(10).unwrap() as usize]).collect()
}

fn pretty_name(name: &str) -> String {
    let (stem, tail) = match name.split_once('_') {
        Some((s, t)) => (s, Some(t)),
        None => (name, None),
    };
    let mut digits = None;
    let (stem, tail) = match tail {
        Some(t) if t.chars().all(|c| c.is_ascii_digit()) => {
            digits = Some(t);
            (stem, None)
        }
        _ => {
            let split = stem.find(|c: char| c.is_ascii_digit()).unwrap_or(stem.len());
            if split < stem.len() && tail.is_none() {
                digits = Some(&stem[split..]);
                (&stem[..split], None)
            } else {
                (stem, tail)
            }
        }
    };
    let greek = match stem {
        "phi" => "φ",
        "psi" => "ψ",
        "xi" => "ξ",
        "mu" => "μ",
        "eps" => "ε",
        "lambda" => "λ",
        "theta" => "θ",
        other => other,
    };
    let mut out = greek.to_string();
    if let Some(d) = digits {
        out.extend(d.chars().map(|c| SUBSCRIPTS[c.to_digit(10).unwrap() as usize]));
    }
    if let Some(t) = tail {
        out.push('_');
        out.push_str(t);
    }
    out
}

fn pretty_atom(a: &Atom, n: usize) -> String {
    let mut s = pretty_name(a.name());
    match a.deriv() {
        0 => {}
        1 => s.insert(s.chars().next().map(char::len_utf8).unwrap_or(0), '\u{307}'),
        2 => s.insert(s.chars().next().map(char::len_utf8).unwrap_or(0), '\u{308}'),
        d => s.push_str(&format!("⁽{}⁾", superscript(d as usize))),
    }
    if n > 1 {
        s.push_str(&superscript(n));
    }
    s
}

/// Human-readable UTF-8 rendering, e.g. `φ̇² + F² + iψψ̇`.
pub struct Pretty<'a>(pub &'a GradedPoly);

impl fmt::Display for Pretty<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        for (i, (atoms, c)) in self.0.terms().enumerate() {
            let negative = c.leading_negative();
            let mag = if negative { -c } else { c.clone() };
            match (i == 0, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            let body: String = runs(atoms).into_iter().map(|(a, n)| pretty_atom(a, n)).collect();
            if body.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", body)?;
            } else {
                write!(f, "{}{}", mag, body)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> AtomTable {
        let mut t = AtomTable::new();
        t.insert(&Atom::field("phi", Degree::ZERO));
        t.insert(&Atom::field("psi", Degree::D10));
        t.insert(&Atom::field("xi", Degree::D01));
        t.insert(&Atom::field("F", Degree::D11));
        t.insert(&Atom::constant("mu_coupling", Degree::D11));
        t
    }

    #[test]
    fn round_trip() {
        let t = table();
        for text in [
            "phi^{(1)}^2 + F^2 + i psi psi^{(1)} + i xi xi^{(1)}",
            "-3/2 phi - i F mu_coupling",
            "(1/2-3i) psi xi + 2/3i phi^3",
            "0",
            "-i",
        ] {
            let p = parse_poly(text, &t).unwrap();
            let again = parse_poly(&p.to_string(), &t).unwrap();
            assert_eq!(p, again, "{}", text);
        }
    }

    #[test]
    fn printed_form_is_stable() {
        let t = table();
        let p = parse_poly("F^2 + phi^{(1)}^2 + i psi psi^{(1)}", &t).unwrap();
        assert_eq!(p.to_string(), "F^2 + phi^{(1)}^2 + i psi psi^{(1)}");
    }

    #[test]
    fn parse_rejects_unknown_atoms() {
        assert!(matches!(parse_poly("chi", &table()), Err(Error::UnknownAtom(_))));
        assert!(parse_poly("phi +", &table()).is_err());
    }

    #[test]
    fn pretty_output() {
        let t = table();
        let p = parse_poly("phi^{(1)}^2 + i psi psi^{(1)}", &t).unwrap();
        assert_eq!(Pretty(&p).to_string(), "φ\u{307}² + iψψ\u{307}");
        let mut t2 = AtomTable::new();
        t2.insert(&Atom::field("f_010", Degree::D10));
        let q = parse_poly("f_010^{(3)}", &t2).unwrap();
        assert_eq!(Pretty(&q).to_string(), "f₀₁₀⁽³⁾");
    }
}
