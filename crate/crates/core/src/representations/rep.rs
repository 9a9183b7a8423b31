use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::matrix::Mat;
use super::param::{parse_param_poly, parse_param_scalar, ParamRing, ParamScalar, Relation, Var};
use crate::algebra::{koszul_sign, Coefficient, Degree};
use crate::error::{Error, Result};

/// Generators of the Z2^2-SUSY algebra acting on a representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RepGen {
    H,
    Z,
    Q10,
    Q01,
}

impl RepGen {
    pub const ALL: [RepGen; 4] = [RepGen::H, RepGen::Z, RepGen::Q10, RepGen::Q01];

    pub fn degree(self) -> Degree {
        match self {
            RepGen::H => Degree::ZERO,
            RepGen::Z => Degree::D11,
            RepGen::Q10 => Degree::D10,
            RepGen::Q01 => Degree::D01,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RepGen::H => "H",
            RepGen::Z => "Z",
            RepGen::Q10 => "Q10",
            RepGen::Q01 => "Q01",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        RepGen::ALL.into_iter().find(|g| g.name() == s).ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    }
}

/// A finite-dimensional graded representation.
///
/// Row convention: `g(v_s) = Σ_t M_g[s][t] v_t`. Composition therefore reverses
/// the matrix product, `M_{XY} = M_Y M_X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepSpec {
    pub name: String,
    pub labels: Vec<String>,
    pub basis_degrees: Vec<Degree>,
    pub ring: ParamRing,
    pub gens: BTreeMap<RepGen, Mat>,
}

impl RepSpec {
    pub fn new(name: &str, labels: &[&str], basis_degrees: &[Degree], ring: ParamRing) -> Self {
        assert_eq!(labels.len(), basis_degrees.len());
        let n = labels.len();
        let gens = RepGen::ALL.into_iter().map(|g| (g, Mat::zeros(n, n))).collect();
        RepSpec {
            name: name.to_string(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            basis_degrees: basis_degrees.to_vec(),
            ring,
            gens,
        }
    }

    pub fn with(mut self, g: RepGen, m: Mat) -> Self {
        assert_eq!((m.rows(), m.cols()), (self.dim(), self.dim()));
        self.gens.insert(g, m);
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, g: RepGen) -> &Mat {
        &self.gens[&g]
    }

    /// Matrix of the operator word `g1 g2 ... gn` (gn acts first).
    pub fn word(&self, word: &[RepGen]) -> Mat {
        let mut m = Mat::identity(self.dim());
        for g in word {
            m = self.get(*g).mul(&m, &self.ring);
        }
        m
    }

    /// Row vector of `g(v)` for a row vector `v`.
    pub fn act(&self, g: RepGen, v: &[ParamScalar]) -> Vec<ParamScalar> {
        let m = self.get(g);
        (0..self.dim())
            .map(|t| {
                let mut acc = ParamScalar::zero();
                for (s, vs) in v.iter().enumerate() {
                    if !vs.is_zero() && !m.get(s, t).is_zero() {
                        acc = acc.add(&vs.mul(m.get(s, t)));
                    }
                }
                self.ring.reduce(&acc).unwrap_or(acc)
            })
            .collect()
    }

    /// Matrix of the graded bracket `[X, Y] = XY - (-1)^{⟨x,y⟩} YX`.
    pub fn bracket(&self, x: RepGen, y: RepGen) -> Mat {
        let (mx, my) = (self.get(x), self.get(y));
        let xy = my.mul(mx, &self.ring);
        let yx = mx.mul(my, &self.ring);
        let s = koszul_sign(x.degree(), y.degree());
        xy.sub(&yx.scale(&ParamScalar::int(s as i64), &self.ring), &self.ring)
    }

    pub fn map_matrices(&self, name: &str, f: impl Fn(RepGen, &Mat) -> Mat) -> RepSpec {
        RepSpec { name: name.to_string(), gens: self.gens.iter().map(|(g, m)| (*g, f(*g, m))).collect(), ..self.clone() }
    }

    /// Substitutes parameters in every entry; `None` if a denominator vanishes.
    pub fn substitute(&self, name: &str, ring: ParamRing, subst: &dyn Fn(Var) -> Option<ParamScalar>) -> Option<RepSpec> {
        let mut gens = BTreeMap::new();
        for (g, m) in &self.gens {
            let m = m.substitute(subst)?;
            gens.insert(*g, m.map(|s| ring.reduce(s).unwrap_or_else(|_| s.clone())));
        }
        Some(RepSpec { name: name.to_string(), ring, gens, ..self.clone() })
    }

    /// Entrywise comparison in this representation's ring.
    pub fn compare(&self, other: &RepSpec) -> Vec<Mismatch> {
        let mut out = Vec::new();
        for g in RepGen::ALL {
            for (i, j) in self.get(g).mismatches(other.get(g), &self.ring) {
                out.push(Mismatch {
                    generator: g,
                    row: self.labels[i].clone(),
                    col: self.labels[j].clone(),
                    left: self.get(g).get(i, j).to_string(),
                    right: other.get(g).get(i, j).to_string(),
                });
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<Value> = self
            .labels
            .iter()
            .zip(&self.basis_degrees)
            .map(|(l, d)| json!({"label": l, "degree": [d.a, d.b]}))
            .collect();
        let gens: serde_json::Map<String, Value> = self
            .gens
            .iter()
            .map(|(g, m)| {
                let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
                (g.name().to_string(), json!(rows))
            })
            .collect();
        let relation = match &self.ring.relation {
            Some(r) => json!({"poly": r.poly.to_string(), "main": r.main.name()}),
            None => Value::Null,
        };
        json!({"name": self.name, "dim": self.dim(), "basis": basis, "relation": relation, "gens": gens})
    }

    pub fn from_json(v: &Value) -> Result<RepSpec> {
        let bad = |m: &str| Error::Json(format!("representation JSON: {}", m));
        let name = v["name"].as_str().ok_or_else(|| bad("name"))?.to_string();
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        for b in v["basis"].as_array().ok_or_else(|| bad("basis"))? {
            labels.push(b["label"].as_str().ok_or_else(|| bad("label"))?.to_string());
            let d = b["degree"].as_array().ok_or_else(|| bad("degree"))?;
            let bit = |i: usize| d.get(i).and_then(|x| x.as_u64()).map(|x| x as u8).ok_or_else(|| bad("degree"));
            degrees.push(Degree::new(bit(0)?, bit(1)?));
        }
        let ring = match &v["relation"] {
            Value::Null => ParamRing::free(),
            r => {
                let poly = parse_param_poly(r["poly"].as_str().ok_or_else(|| bad("relation poly"))?)?;
                let main = r["main"].as_str().ok_or_else(|| bad("relation main"))?;
                let main = Var::ALL.into_iter().find(|x| x.name() == main).ok_or_else(|| bad("relation main"))?;
                ParamRing { relation: Some(Relation { poly, main }) }
            }
        };
        let n = labels.len();
        let mut gens = BTreeMap::new();
        for (k, m) in v["gens"].as_object().ok_or_else(|| bad("gens"))? {
            let g = RepGen::from_name(k)?;
            let rows = m.as_array().ok_or_else(|| bad("matrix"))?;
            let mut out = Vec::new();
            for r in rows {
                let cells = r.as_array().ok_or_else(|| bad("row"))?;
                let row = cells
                    .iter()
                    .map(|c| parse_param_scalar(c.as_str().unwrap_or("")))
                    .collect::<Result<Vec<_>>>()?;
                if row.len() != n {
                    return Err(bad("row length"));
                }
                out.push(row);
            }
            if out.len() != n {
                return Err(bad("row count"));
            }
            gens.insert(g, Mat::from_rows(out));
        }
        for g in RepGen::ALL {
            gens.entry(g).or_insert_with(|| Mat::zeros(n, n));
        }
        Ok(RepSpec { name, labels, basis_degrees: degrees, ring, gens })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub generator: RepGen,
    pub row: String,
    pub col: String,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}][{}]: {} vs {}", self.generator.name(), self.row, self.col, self.left, self.right)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub passed: bool,
    /// `lhs - rhs` when the relation fails.
    pub residual: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Casimir {
    pub name: String,
    /// The eigenvalue when the matrix is scalar.
    pub scalar: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraReport {
    pub rep: String,
    pub relations: Vec<RelationCheck>,
    /// Generators whose matrices respect the degree blocks.
    pub block_structure: Vec<(RepGen, bool)>,
    pub casimirs: Vec<Casimir>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|r| r.passed) && self.block_structure.iter().all(|(_, ok)| *ok)
    }

    pub fn relation(&self, name: &str) -> Option<&RelationCheck> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn casimir(&self, name: &str) -> Option<&Casimir> {
        self.casimirs.iter().find(|c| c.name == name)
    }
}

/// Block structure: `M_g[s][t] ≠ 0` only if `deg t = deg s + deg g`.
pub fn block_structure_ok(rep: &RepSpec, g: RepGen) -> bool {
    let m = rep.get(g);
    (0..rep.dim()).all(|s| {
        (0..rep.dim()).all(|t| rep.basis_degrees[t] == rep.basis_degrees[s] + g.degree() || rep.ring.is_zero(m.get(s, t)))
    })
}

pub fn check_algebra(rep: &RepSpec) -> AlgebraReport {
    use RepGen::*;
    let n = rep.dim();
    let ring = &rep.ring;
    let two_h = rep.get(H).scale(&ParamScalar::int(2), ring);
    let two_i_z = rep.get(Z).scale(&ParamScalar::coeff(Coefficient::gaussian(0, 1, 2, 1)), ring);
    let zero = Mat::zeros(n, n);
    let cases: Vec<(&str, Mat, &Mat)> = vec![
        ("{Q10,Q10}=2H", rep.bracket(Q10, Q10), &two_h),
        ("{Q01,Q01}=2H", rep.bracket(Q01, Q01), &two_h),
        ("[Q01,Q10]=2iZ", rep.bracket(Q01, Q10), &two_i_z),
        ("[H,Q10]=0", rep.bracket(H, Q10), &zero),
        ("[H,Q01]=0", rep.bracket(H, Q01), &zero),
        ("[H,Z]=0", rep.bracket(H, Z), &zero),
        ("{Q10,Z}=0", rep.bracket(Q10, Z), &zero),
        ("{Q01,Z}=0", rep.bracket(Q01, Z), &zero),
    ];
    let relations = cases
        .into_iter()
        .map(|(name, lhs, rhs)| {
            let diff = lhs.sub(rhs, ring);
            let passed = diff.is_zero(ring);
            RelationCheck { name: name.to_string(), passed, residual: (!passed).then(|| diff.to_string()) }
        })
        .collect();
    let block_structure = RepGen::ALL.into_iter().map(|g| (g, block_structure_ok(rep, g))).collect();
    let casimirs = [("H^2", H), ("Z^2", Z)]
        .into_iter()
        .map(|(name, g)| Casimir {
            name: name.to_string(),
            scalar: rep.word(&[g, g]).as_scalar(ring).map(|s| ring.reduce(&s).unwrap_or(s).to_string()),
        })
        .collect();
    AlgebraReport { rep: rep.name.clone(), relations, block_structure, casimirs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e() -> ParamScalar {
        ParamScalar::var(Var::E)
    }

    fn one_dim_pair() -> RepSpec {
        // v (0,0), w (1,0): Q10 v = w, Q10 w = E v, the rest zero except H
        let one = ParamScalar::one;
        RepSpec::new("pair", &["v", "w"], &[Degree::ZERO, Degree::D10], ParamRing::free())
            .with(RepGen::H, Mat::scalar(2, e()))
            .with(RepGen::Q10, Mat::sparse(2, vec![(0, 1, one()), (1, 0, e())]))
    }

    #[test]
    fn report_on_partial_rep() {
        let r = check_algebra(&one_dim_pair());
        assert!(r.relation("{Q10,Q10}=2H").unwrap().passed);
        // Q01 = 0 cannot square to 2H
        assert!(!r.relation("{Q01,Q01}=2H").unwrap().passed);
        assert_eq!(r.casimir("H^2").unwrap().scalar.as_deref(), Some("E^2"));
        assert!(r.block_structure.iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn block_check_catches_wrong_degree() {
        let rep = one_dim_pair().with(RepGen::Z, Mat::sparse(2, vec![(0, 1, ParamScalar::one())]));
        assert!(!block_structure_ok(&rep, RepGen::Z));
    }

    #[test]
    fn json_round_trip() {
        let rep = one_dim_pair();
        let back = RepSpec::from_json(&rep.to_json()).unwrap();
        assert_eq!(back, rep);
    }
}
