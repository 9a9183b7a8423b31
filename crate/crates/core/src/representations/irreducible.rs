//! Irreducibility by cyclic spans of eigenvectors of sector-preserving operators.
//!
//! Any nonzero graded submodule meets some sector `V_d` and is stable under an
//! even operator `A` preserving `V_d`, so it contains an eigenvector of `A|V_d`.
//! If every such eigenvector generates the whole module, there is no proper
//! submodule. A proper cyclic span is itself an invariant subspace.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::Span;
use super::param::{ParamPoly, ParamRing, ParamScalar, Var};
use super::rep::{RepGen, RepSpec};
use crate::algebra::{Coefficient, Degree};

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub sector: Degree,
    pub vector: String,
    /// Relation satisfied by the adjoined eigenvector parameter `r`, if any.
    pub relation: Option<String>,
    pub span_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub enum Certificate {
    /// Every candidate generates the whole space.
    Spanning { candidates: Vec<Candidate> },
    /// The cyclic span of `generator` is a proper invariant subspace.
    Invariant { generator: Candidate, basis: Vec<String> },
    Undecided { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub point: Vec<(String, String)>,
    pub irreducible: Option<bool>,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibilityReport {
    pub rep: String,
    pub irreducible: Option<bool>,
    pub certificate: Certificate,
    pub cross_check: Option<CrossCheck>,
}

const SECTOR_WORDS: [[RepGen; 3]; 4] = [
    [RepGen::Q10, RepGen::Q01, RepGen::Z],
    [RepGen::Q01, RepGen::Q10, RepGen::Z],
    [RepGen::Q10, RepGen::Z, RepGen::Q01],
    [RepGen::Z, RepGen::Q10, RepGen::Q01],
];

fn show(v: &[ParamScalar], rep: &RepSpec) -> String {
    let parts: Vec<String> = v
        .iter()
        .zip(&rep.labels)
        .filter(|(s, _)| !rep.ring.is_zero(s))
        .map(|(s, l)| format!("({})|{}>", s, l))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Basis of the smallest invariant subspace containing `v`.
pub fn cyclic_span(rep: &RepSpec, v: &[ParamScalar]) -> Vec<Vec<ParamScalar>> {
    let mut span = Span::new();
    let mut kept = Vec::new();
    let mut queue = vec![v.to_vec()];
    while let Some(w) = queue.pop() {
        if span.insert(&w, &rep.ring) {
            for g in [RepGen::Q10, RepGen::Q01, RepGen::Z] {
                queue.push(rep.act(g, &w));
            }
            kept.push(w);
        }
    }
    kept
}

fn unit(n: usize, i: usize) -> Vec<ParamScalar> {
    let mut v = vec![ParamScalar::zero(); n];
    v[i] = ParamScalar::one();
    v
}

fn clear_denominators(parts: &[ParamScalar]) -> Vec<ParamPoly> {
    let den = parts.iter().fold(ParamPoly::one(), |acc, s| acc.mul(&s.den));
    parts.iter().map(|s| s.num.mul(&den.div_exact(&s.den).expect("divides the product"))).collect()
}

/// Eigenvector candidates of a two-dimensional sector `(i, j)`, each in its own ring.
fn eigen_candidates(rep: &RepSpec, i: usize, j: usize) -> Option<Vec<(Vec<ParamScalar>, RepSpec)>> {
    let ring = &rep.ring;
    let n = rep.dim();
    for w in SECTOR_WORDS {
        let a = rep.word(&w);
        let (aii, aij, aji, ajj) = (a.get(i, i), a.get(i, j), a.get(j, i), a.get(j, j));
        let diff = ring.add(aii, &ajj.neg());
        if ring.is_zero(aji) && ring.is_zero(aij) && ring.is_zero(&diff) {
            continue;
        }
        // x e_i + y e_j is an eigenvector iff [x y] is a left eigenvector of the block
        let mut out = Vec::new();
        if ring.is_zero(aji) {
            out.push((unit(n, j), rep.clone()));
            if !ring.is_zero(&diff) {
                let y = aij.div(&diff)?;
                let mut v = unit(n, i);
                v[j] = ring.reduce(&y).ok()?;
                out.push((v, rep.clone()));
            }
        } else {
            if rep.ring.relation.is_some() {
                return None;
            }
            // A_ji r² + (A_ii - A_jj) r - A_ij = 0
            let p = clear_denominators(&[aji.clone(), diff, aij.neg()]);
            let r = ParamPoly::var(Var::R);
            let rel = p[0].mul(&r.pow(2)).add(&p[1].mul(&r)).add(&p[2]);
            let mut ext = rep.clone();
            ext.ring = ParamRing::with_relation(rel, Var::R);
            let mut v = unit(n, i);
            v[j] = ParamScalar::var(Var::R);
            out.push((v, ext));
        }
        return Some(out);
    }
    None
}

/// Symbolic decision over the representation's own ring.
pub fn decide(rep: &RepSpec) -> (Option<bool>, Certificate) {
    let n = rep.dim();
    let mut candidates = Vec::new();
    for d in Degree::ALL {
        let sector: Vec<usize> = (0..n).filter(|&s| rep.basis_degrees[s] == d).collect();
        let vectors = match sector.len() {
            0 => continue,
            1 => vec![(unit(n, sector[0]), rep.clone())],
            2 => match eigen_candidates(rep, sector[0], sector[1]) {
                Some(c) => c,
                None => {
                    let reason = format!("no usable sector operator on {}", d);
                    return (None, Certificate::Undecided { reason });
                }
            },
            k => return (None, Certificate::Undecided { reason: format!("sector {} has dimension {}", d, k) }),
        };
        for (v, ctx) in vectors {
            let span = cyclic_span(&ctx, &v);
            let cand = Candidate {
                sector: d,
                vector: show(&v, &ctx),
                relation: ctx.ring.relation.as_ref().filter(|r| r.main == Var::R).map(|r| format!("{} = 0", r.poly)),
                span_dim: span.len(),
            };
            if span.len() < n {
                let basis = span.iter().map(|w| show(w, &ctx)).collect();
                return (Some(false), Certificate::Invariant { generator: cand, basis });
            }
            candidates.push(cand);
        }
    }
    (Some(true), Certificate::Spanning { candidates })
}

fn random_gaussian(rng: &mut ChaCha8Rng) -> Coefficient {
    let den = rng.gen_range(1..=7);
    Coefficient::gaussian(rng.gen_range(-9..=9), den, rng.gen_range(-9..=9), den)
}

fn vars_of(rep: &RepSpec) -> Vec<Var> {
    let mut out = Vec::new();
    for m in rep.gens.values() {
        for row in m.to_rows() {
            for s in row {
                out.extend(s.num.vars());
                out.extend(s.den.vars());
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The representation at a random point in E and λ, keeping any relation variable symbolic.
fn random_instance(rep: &RepSpec, seed: u64) -> Option<(RepSpec, Vec<(String, String)>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let main = rep.ring.relation.as_ref().map(|r| r.main);
    let free: Vec<Var> = vars_of(rep).into_iter().filter(|v| matches!(v, Var::E | Var::Lambda) && Some(*v) != main).collect();
    for _ in 0..64 {
        let e = random_gaussian(&mut rng);
        let l = random_gaussian(&mut rng);
        if e.is_zero() || l.is_zero() || l == e.pow(2) {
            continue;
        }
        let val = |v: Var| match v {
            Var::E if free.contains(&v) => Some(e.clone()),
            Var::Lambda if free.contains(&v) => Some(l.clone()),
            _ => None,
        };
        let ring = match &rep.ring.relation {
            Some(r) => {
                let poly = r.poly.compose(&|v| val(v).map(ParamPoly::constant));
                let deg = r.poly.degree_in(r.main);
                if poly.degree_in(r.main) != deg {
                    continue;
                }
                ParamRing::with_relation(poly, r.main)
            }
            None => ParamRing::free(),
        };
        let name = format!("{}@random", rep.name);
        if let Some(inst) = rep.substitute(&name, ring, &|v| val(v).map(ParamScalar::coeff)) {
            let point = free
                .iter()
                .map(|v| (v.name().to_string(), val(*v).expect("free variable").to_string()))
                .collect();
            return Some((inst, point));
        }
    }
    None
}

/// Symbolic decision, cross-checked at a seeded random point.
pub fn irreducible(rep: &RepSpec, seed: u64) -> IrreducibilityReport {
    let (verdict, certificate) = decide(rep);
    let cross_check = random_instance(rep, seed).map(|(inst, point)| {
        let (v, _) = decide(&inst);
        CrossCheck { point, irreducible: v, agrees: v == verdict }
    });
    IrreducibilityReport { rep: rep.name.clone(), irreducible: verdict, certificate, cross_check }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::builders::*;
    use crate::representations::induce::induce_from_nu_e_lambda;

    #[test]
    fn case_i_is_irreducible() {
        let r = irreducible(&build_case_i(), 7);
        assert_eq!(r.irreducible, Some(true));
        assert!(r.cross_check.unwrap().agrees);
    }

    #[test]
    fn case_i_at_e_zero_is_reducible() {
        let rep = build_case_i().substitute("case-i@0", ParamRing::free(), &|v| (v == Var::E).then(ParamScalar::zero)).unwrap();
        let (v, cert) = decide(&rep);
        assert_eq!(v, Some(false));
        assert!(matches!(cert, Certificate::Invariant { .. }));
    }

    #[test]
    fn eight_dim_is_reducible_with_four_dim_witness() {
        let r = irreducible(&induce_from_nu_e_lambda(), 11);
        assert_eq!(r.irreducible, Some(false));
        match &r.certificate {
            Certificate::Invariant { generator, basis } => {
                assert_eq!(basis.len(), 4);
                assert!(generator.relation.is_some());
            }
            other => panic!("{:?}", other),
        }
        assert!(r.cross_check.unwrap().agrees);
    }

    #[test]
    fn two_parameter_family_is_irreducible() {
        let r = irreducible(&build_two_param(two_param_ring()), 3);
        assert_eq!(r.irreducible, Some(true));
        assert!(r.cross_check.unwrap().agrees);
    }
}
