use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{generic_super_field, CompKey, SuperField};
use crate::algebra::{koszul_sign, Coefficient, Degree, GradedPoly};
use crate::error::{Error, Result};

/// Coordinate derivatives and multiplications; all act from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prim {
    Dt,
    Dz,
    DTheta10,
    DTheta01,
    MulZ,
    MulTheta10,
    MulTheta01,
}

impl Prim {
    pub fn degree(self) -> Degree {
        match self {
            Prim::Dt => Degree::ZERO,
            Prim::Dz | Prim::MulZ => Degree::D11,
            Prim::DTheta10 | Prim::MulTheta10 => Degree::D10,
            Prim::DTheta01 | Prim::MulTheta01 => Degree::D01,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Prim::Dt => "∂t",
            Prim::Dz => "∂z",
            Prim::DTheta10 => "∂θ10",
            Prim::DTheta01 => "∂θ01",
            Prim::MulZ => "z",
            Prim::MulTheta10 => "θ10",
            Prim::MulTheta01 => "θ01",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    H,
    Z,
    Q10,
    Q01,
    D10,
    D01,
}

impl Generator {
    pub const ALL: [Generator; 6] =
        [Generator::H, Generator::Z, Generator::Q10, Generator::Q01, Generator::D10, Generator::D01];

    pub fn degree(self) -> Degree {
        match self {
            Generator::H => Degree::ZERO,
            Generator::Z => Degree::D11,
            Generator::Q10 | Generator::D10 => Degree::D10,
            Generator::Q01 | Generator::D01 => Degree::D01,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::H => "H",
            Generator::Z => "Z",
            Generator::Q10 => "Q10",
            Generator::Q01 => "Q01",
            Generator::D10 => "D10",
            Generator::D01 => "D01",
        }
    }
}

impl std::str::FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    }
}

/// Linear differential operator on superfields, as an expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum SuperOp {
    Zero(Degree),
    Prim(Prim),
    Gen(Generator),
    Scale(Coefficient, Box<SuperOp>),
    /// `Compose([A, B])` is `A ∘ B`: B acts first.
    Compose(Vec<SuperOp>),
    Sum(Vec<SuperOp>),
}

impl SuperOp {
    pub fn gen(g: Generator) -> Self {
        SuperOp::Gen(g)
    }

    pub fn scale(c: Coefficient, op: SuperOp) -> Self {
        SuperOp::Scale(c, Box::new(op))
    }

    pub fn compose(a: SuperOp, b: SuperOp) -> Self {
        SuperOp::Compose(vec![a, b])
    }

    pub fn degree(&self) -> Degree {
        match self {
            SuperOp::Zero(d) => *d,
            SuperOp::Prim(p) => p.degree(),
            SuperOp::Gen(g) => g.degree(),
            SuperOp::Scale(_, op) => op.degree(),
            SuperOp::Compose(ops) => ops.iter().fold(Degree::ZERO, |d, o| d + o.degree()),
            SuperOp::Sum(ops) => ops.first().map(|o| o.degree()).unwrap_or(Degree::ZERO),
        }
    }

    /// Graded bracket `AB - (-1)^{deg A . deg B} BA`.
    pub fn bracket(a: SuperOp, b: SuperOp) -> Self {
        let s = koszul_sign(a.degree(), b.degree());
        SuperOp::Sum(vec![
            SuperOp::compose(a.clone(), b.clone()),
            SuperOp::scale(Coefficient::from_int(-(s as i64)), SuperOp::compose(b, a)),
        ])
    }
}

impl fmt::Display for SuperOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuperOp::Zero(_) => write!(f, "0"),
            SuperOp::Prim(p) => write!(f, "{}", p.symbol()),
            SuperOp::Gen(g) => write!(f, "{}", g.name()),
            SuperOp::Scale(c, op) => write!(f, "{}·{}", c, op),
            SuperOp::Compose(ops) => {
                let parts: Vec<String> = ops.iter().map(|o| o.to_string()).collect();
                write!(f, "({})", parts.join(" "))
            }
            SuperOp::Sum(ops) => {
                let parts: Vec<String> = ops.iter().map(|o| o.to_string()).collect();
                write!(f, "[{}]", parts.join(" + "))
            }
        }
    }
}

/// Expansion of each generator into coordinate primitives.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    entries: BTreeMap<Generator, SuperOp>,
}

fn term(c: Coefficient, mul: Prim, d: Prim) -> SuperOp {
    SuperOp::scale(c, SuperOp::compose(SuperOp::Prim(mul), SuperOp::Prim(d)))
}

impl GeneratorTable {
    pub fn standard() -> Self {
        let i = Coefficient::i;
        let one = Coefficient::one;
        let m1 = || Coefficient::from_int(-1);
        let mut entries = BTreeMap::new();
        entries.insert(Generator::H, SuperOp::scale(i(), SuperOp::Prim(Prim::Dt)));
        entries.insert(Generator::Z, SuperOp::scale(i(), SuperOp::Prim(Prim::Dz)));
        entries.insert(
            Generator::Q10,
            SuperOp::Sum(vec![
                term(i(), Prim::MulTheta10, Prim::Dt),
                SuperOp::Prim(Prim::DTheta10),
                term(m1(), Prim::MulTheta01, Prim::Dz),
            ]),
        );
        entries.insert(
            Generator::Q01,
            SuperOp::Sum(vec![
                term(i(), Prim::MulTheta01, Prim::Dt),
                SuperOp::Prim(Prim::DTheta01),
                term(one(), Prim::MulTheta10, Prim::Dz),
            ]),
        );
        entries.insert(
            Generator::D10,
            SuperOp::Sum(vec![
                SuperOp::Prim(Prim::DTheta10),
                term(-i(), Prim::MulTheta10, Prim::Dt),
                term(one(), Prim::MulTheta01, Prim::Dz),
            ]),
        );
        entries.insert(
            Generator::D01,
            SuperOp::Sum(vec![
                SuperOp::Prim(Prim::DTheta01),
                term(-i(), Prim::MulTheta01, Prim::Dt),
                term(m1(), Prim::MulTheta10, Prim::Dz),
            ]),
        );
        GeneratorTable { entries }
    }

    /// Negative control: the `θ01 ∂z` term of Q10 has the wrong sign.
    pub fn corrupted() -> Self {
        let mut t = GeneratorTable::standard();
        t.entries.insert(
            Generator::Q10,
            SuperOp::Sum(vec![
                term(Coefficient::i(), Prim::MulTheta10, Prim::Dt),
                SuperOp::Prim(Prim::DTheta10),
                term(Coefficient::one(), Prim::MulTheta01, Prim::Dz),
            ]),
        );
        t
    }

    pub fn without(mut self, g: Generator) -> Self {
        self.entries.remove(&g);
        self
    }

    pub fn get(&self, g: Generator) -> Result<&SuperOp> {
        self.entries.get(&g).ok_or_else(|| Error::UnknownGenerator(g.name().to_string()))
    }
}

impl Default for GeneratorTable {
    fn default() -> Self {
        GeneratorTable::standard()
    }
}

fn parity_sign(k: u32) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn apply_prim(p: Prim, f: &SuperField) -> SuperField {
    let kmax = f.truncation();
    let delta = f.delta() + p.degree();
    let mut comps: BTreeMap<CompKey, GradedPoly> = BTreeMap::new();
    let mut exact = f.is_exact();
    let mut valid = f.valid_orders();
    match p {
        Prim::Dt => {
            for (key, c) in f.components() {
                comps.insert(key, c.time_derivative());
            }
        }
        Prim::Dz => {
            for (key, c) in f.components() {
                if key.k > 0 {
                    comps.insert(CompKey::new(key.k - 1, key.alpha, key.beta), c.scale_int(key.k as i64));
                }
            }
            if !exact {
                valid = valid.saturating_sub(1);
            }
        }
        Prim::DTheta10 => {
            for (key, c) in f.components().filter(|(k, _)| k.alpha == 1) {
                comps.insert(CompKey::new(key.k, 0, key.beta), c.scale_int(parity_sign(key.k)));
            }
        }
        Prim::DTheta01 => {
            for (key, c) in f.components().filter(|(k, _)| k.beta == 1) {
                comps.insert(CompKey::new(key.k, key.alpha, 0), c.scale_int(parity_sign(key.k)));
            }
        }
        Prim::MulTheta10 => {
            for (key, c) in f.components().filter(|(k, _)| k.alpha == 0) {
                comps.insert(CompKey::new(key.k, 1, key.beta), c.scale_int(parity_sign(key.k)));
            }
        }
        Prim::MulTheta01 => {
            for (key, c) in f.components().filter(|(k, _)| k.beta == 0) {
                comps.insert(CompKey::new(key.k, key.alpha, 1), c.scale_int(parity_sign(key.k)));
            }
        }
        Prim::MulZ => {
            let mut dropped = false;
            for (key, c) in f.components() {
                if key.k == kmax {
                    dropped = true;
                } else {
                    comps.insert(CompKey::new(key.k + 1, key.alpha, key.beta), c.clone());
                }
            }
            if exact {
                if dropped {
                    exact = false;
                }
            } else {
                valid = (valid + 1).min(kmax + 1);
            }
        }
    }
    SuperField::from_parts(delta, kmax, comps, exact, valid)
}

pub fn apply_with(table: &GeneratorTable, op: &SuperOp, f: &SuperField) -> Result<SuperField> {
    match op {
        SuperOp::Zero(d) => {
            Ok(SuperField::from_parts(f.delta() + *d, f.truncation(), BTreeMap::new(), f.is_exact(), f.valid_orders()))
        }
        SuperOp::Prim(p) => Ok(apply_prim(*p, f)),
        SuperOp::Gen(g) => apply_with(table, table.get(*g)?, f),
        SuperOp::Scale(c, inner) => Ok(apply_with(table, inner, f)?.scale(c)),
        SuperOp::Compose(ops) => {
            let mut cur = f.clone();
            for o in ops.iter().rev() {
                cur = apply_with(table, o, &cur)?;
            }
            Ok(cur)
        }
        SuperOp::Sum(ops) => {
            let mut acc: Option<SuperField> = None;
            for o in ops {
                let r = apply_with(table, o, f)?;
                acc = Some(match acc {
                    None => r,
                    Some(a) => a.add(&r)?,
                });
            }
            Ok(acc.unwrap_or_else(|| SuperField::zero(f.delta(), f.truncation())))
        }
    }
}

/// Applies `op` using the standard generator table.
pub fn apply_generator(op: &SuperOp, f: &SuperField) -> Result<SuperField> {
    apply_with(&GeneratorTable::standard(), op, f)
}

/// A named operator identity `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: &'static str,
    pub lhs: SuperOp,
    pub rhs: SuperOp,
}

fn g(x: Generator) -> SuperOp {
    SuperOp::Gen(x)
}

fn br(a: Generator, b: Generator) -> SuperOp {
    SuperOp::bracket(g(a), g(b))
}

/// The defining relations of the Z2^2-SUSY algebra.
pub fn algebra_relations() -> Vec<Relation> {
    use Generator::*;
    let two = || Coefficient::from_int(2);
    let two_i = Coefficient::gaussian(0, 1, 2, 1);
    vec![
        Relation { name: "{Q10,Q10} = 2H", lhs: br(Q10, Q10), rhs: SuperOp::scale(two(), g(H)) },
        Relation { name: "{Q01,Q01} = 2H", lhs: br(Q01, Q01), rhs: SuperOp::scale(two(), g(H)) },
        Relation { name: "[H,Q10] = 0", lhs: br(H, Q10), rhs: SuperOp::Zero(Degree::D10) },
        Relation { name: "[H,Q01] = 0", lhs: br(H, Q01), rhs: SuperOp::Zero(Degree::D01) },
        Relation { name: "[Q01,Q10] = 2iZ", lhs: br(Q01, Q10), rhs: SuperOp::scale(two_i, g(Z)) },
        Relation { name: "[H,Z] = 0", lhs: br(H, Z), rhs: SuperOp::Zero(Degree::D11) },
        Relation { name: "{Q10,Z} = 0", lhs: br(Q10, Z), rhs: SuperOp::Zero(Degree::D01) },
        Relation { name: "{Q01,Z} = 0", lhs: br(Q01, Z), rhs: SuperOp::Zero(Degree::D10) },
    ]
}

/// Relations between covariant derivatives and supercharges.
pub fn covariant_relations() -> Vec<Relation> {
    use Generator::*;
    let m2 = || Coefficient::from_int(-2);
    let m2i = Coefficient::gaussian(0, 1, -2, 1);
    vec![
        Relation { name: "{D10,Q10} = 0", lhs: br(D10, Q10), rhs: SuperOp::Zero(Degree::ZERO) },
        Relation { name: "{D01,Q01} = 0", lhs: br(D01, Q01), rhs: SuperOp::Zero(Degree::ZERO) },
        Relation { name: "[D10,Q01] = 0", lhs: br(D10, Q01), rhs: SuperOp::Zero(Degree::D11) },
        Relation { name: "[D01,Q10] = 0", lhs: br(D01, Q10), rhs: SuperOp::Zero(Degree::D11) },
        Relation { name: "{D10,D10} = -2H", lhs: br(D10, D10), rhs: SuperOp::scale(m2(), g(H)) },
        Relation { name: "{D01,D01} = -2H", lhs: br(D01, D01), rhs: SuperOp::scale(m2(), g(H)) },
        Relation { name: "[D01,D10] = -2iZ", lhs: br(D01, D10), rhs: SuperOp::scale(m2i, g(Z)) },
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaCheck {
    pub delta: Degree,
    pub passed: bool,
    /// z-orders `0..orders_compared` were compared.
    pub orders_compared: u32,
    pub mismatch: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<DeltaCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Compares `lhs Ψ` and `rhs Ψ` on generic superfields of every degree.
pub fn check_operator_identity_with(
    table: &GeneratorTable,
    lhs: &SuperOp,
    rhs: &SuperOp,
    truncation: u32,
) -> Result<IdentityReport> {
    let mut checks = Vec::new();
    for delta in Degree::ALL {
        let psi = generic_super_field(delta, truncation, "f");
        let l = apply_with(table, lhs, &psi)?;
        let r = apply_with(table, rhs, &psi)?;
        let orders = l.valid_orders().min(r.valid_orders());
        let mut mismatch = None;
        for key in CompKey::all(truncation).filter(|k| k.k < orders) {
            let (a, b) = (l.component(key), r.component(key));
            if a != b {
                mismatch = Some(format!("component {}: {} vs {}", key, a, b));
                break;
            }
        }
        checks.push(DeltaCheck { delta, passed: mismatch.is_none() && orders > 0, orders_compared: orders, mismatch });
    }
    Ok(IdentityReport { checks })
}

pub fn check_operator_identity(lhs: &SuperOp, rhs: &SuperOp, truncation: u32) -> Result<IdentityReport> {
    check_operator_identity_with(&GeneratorTable::standard(), lhs, rhs, truncation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Atom;

    #[test]
    fn h_is_i_times_time_derivative() {
        let psi = generic_super_field(Degree::D10, 1, "f");
        let h = apply_generator(&g(Generator::H), &psi).unwrap();
        for (key, c) in psi.components() {
            assert_eq!(h.component(key), c.time_derivative().scale(&Coefficient::i()));
        }
    }

    #[test]
    fn z_lowers_order() {
        let psi = generic_super_field(Degree::ZERO, 1, "f");
        let z = apply_generator(&g(Generator::Z), &psi).unwrap();
        for (key, c) in z.components() {
            assert_eq!(key.k, 0);
            let src = psi.component(CompKey::new(1, key.alpha, key.beta));
            assert_eq!(*c, src.scale(&Coefficient::i()));
        }
        assert_eq!(z.valid_orders(), 1);
    }

    #[test]
    fn q10_on_bottom_component() {
        let psi = generic_super_field(Degree::ZERO, 2, "f");
        let q = apply_generator(&g(Generator::Q10), &psi).unwrap();
        assert_eq!(q.component(CompKey::new(0, 0, 0)), GradedPoly::atom(Atom::field("f_010", Degree::D10)));
    }

    #[test]
    fn relations_hold_at_low_truncation() {
        for r in algebra_relations().iter().chain(covariant_relations().iter()) {
            let rep = check_operator_identity(&r.lhs, &r.rhs, 2).unwrap();
            assert!(rep.passed(), "{}: {:?}", r.name, rep);
        }
    }

    #[test]
    fn corrupted_table_breaks_an_identity() {
        let t = GeneratorTable::corrupted();
        let failing = algebra_relations()
            .iter()
            .filter(|r| !check_operator_identity_with(&t, &r.lhs, &r.rhs, 2).unwrap().passed())
            .count();
        assert!(failing > 0);
    }

    #[test]
    fn missing_generator_is_reported() {
        let t = GeneratorTable::standard().without(Generator::D10);
        let psi = generic_super_field(Degree::ZERO, 1, "f");
        assert!(matches!(apply_with(&t, &g(Generator::D10), &psi), Err(Error::UnknownGenerator(_))));
    }
}
