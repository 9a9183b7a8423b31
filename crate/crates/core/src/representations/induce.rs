//! Induced modules built from a lowest vector |00> by normal-ordered words.

use super::builders::{e, lam, ni, V8_DEGREES, V8_LABELS};
use super::matrix::Mat;
use super::param::{ParamRing, ParamScalar};
use super::rep::{RepGen, RepSpec};
use crate::algebra::Degree;

/// Normal form `Q10^b Q01^c Z^a |00>`, stored as the index `4b + 2c + a`.
type Word = usize;

fn word(b: usize, c: usize, a: usize) -> Word {
    4 * b + 2 * c + a
}

fn split(w: Word) -> (usize, usize, usize) {
    (w >> 2, (w >> 1) & 1, w & 1)
}

/// Vector in the word basis.
type WVec = [ParamScalar; 8];

fn zero_vec() -> WVec {
    std::array::from_fn(|_| ParamScalar::zero())
}

fn basis_word(w: Word) -> WVec {
    let mut v = zero_vec();
    v[w] = ParamScalar::one();
    v
}

/// Lowest-weight data: `H|00> = E|00>` and either `Z|00> = 0` or `Z²|00> = λ|00>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lowest {
    NuE,
    NuELambda,
}

struct Engine {
    lowest: Lowest,
}

impl Engine {
    /// `Z^{a+1}` reduced with `Z² = λ`, or zero below `Z|00> = 0`.
    fn z_up(&self, b: usize, c: usize, a: usize, coeff: ParamScalar, out: &mut WVec) {
        match (self.lowest, a) {
            (Lowest::NuE, _) => {}
            (Lowest::NuELambda, 0) => add(out, word(b, c, 1), coeff),
            (Lowest::NuELambda, _) => add(out, word(b, c, 0), coeff.mul(&lam())),
        }
    }

    fn apply_word(&self, g: RepGen, w: Word, out: &mut WVec, coeff: ParamScalar) {
        let (b, c, a) = split(w);
        match g {
            RepGen::H => add(out, w, coeff.mul(&e())),
            RepGen::Z => {
                // Z passes each Q with a minus sign
                let sign = if (b + c) % 2 == 1 { coeff.neg() } else { coeff };
                self.z_up(b, c, a, sign, out);
            }
            RepGen::Q10 => {
                if b == 1 {
                    // Q10² = H
                    add(out, word(0, c, a), coeff.mul(&e()));
                } else {
                    add(out, word(1, c, a), coeff);
                }
            }
            RepGen::Q01 => {
                if b == 0 {
                    if c == 1 {
                        add(out, word(0, 0, a), coeff.mul(&e()));
                    } else {
                        add(out, word(0, 1, a), coeff);
                    }
                } else {
                    // Q01 Q10 = Q10 Q01 + 2iZ
                    if c == 1 {
                        add(out, word(1, 0, a), coeff.mul(&e()));
                    } else {
                        add(out, word(1, 1, a), coeff.clone());
                    }
                    let zc = if c == 1 { coeff.mul(&ni(-2)) } else { coeff.mul(&ni(2)) };
                    self.z_up(0, c, a, zc, out);
                }
            }
        }
    }

    fn apply(&self, g: RepGen, v: &WVec) -> WVec {
        let mut out = zero_vec();
        for (w, s) in v.iter().enumerate() {
            if !s.is_zero() {
                self.apply_word(g, w, &mut out, s.clone());
            }
        }
        out
    }

    /// `g1 g2 ... gn |00>`
    fn from_lowest(&self, gens: &[RepGen]) -> WVec {
        let mut v = basis_word(0);
        for g in gens.iter().rev() {
            v = self.apply(*g, &v);
        }
        v
    }

    /// `½{Q01, Q10} v`
    fn half_anticommutator(&self, v: &WVec) -> WVec {
        let a = self.apply(RepGen::Q01, &self.apply(RepGen::Q10, v));
        let b = self.apply(RepGen::Q10, &self.apply(RepGen::Q01, v));
        let half = ParamScalar::ratio(super::param::ParamPoly::one(), super::param::ParamPoly::int(2));
        std::array::from_fn(|i| a[i].add(&b[i]).mul(&half))
    }
}

fn add(v: &mut WVec, w: Word, s: ParamScalar) {
    v[w] = v[w].add(&s);
}

/// Expresses generator actions in a basis given by word-basis vectors over the columns `cols`.
fn rep_in_basis(
    engine: &Engine,
    name: &str,
    labels: &[&str],
    degrees: &[Degree],
    basis: &[WVec],
    cols: &[Word],
) -> RepSpec {
    let ring = ParamRing::free();
    let restrict = |v: &WVec| -> Vec<ParamScalar> {
        debug_assert!((0..8).all(|w| cols.contains(&w) || v[w].is_zero()));
        cols.iter().map(|w| v[*w].clone()).collect()
    };
    let b = Mat::from_rows(basis.iter().map(restrict).collect());
    let binv = b.inverse(&ring).expect("induced basis is independent");
    let mut rep = RepSpec::new(name, labels, degrees, ring.clone());
    for g in RepGen::ALL {
        let images = Mat::from_rows(basis.iter().map(|v| restrict(&engine.apply(g, v))).collect());
        rep = rep.with(g, images.mul(&binv, &ring));
    }
    rep
}

/// The four-dimensional module induced from `Z|00> = 0`, in the basis (|00>, |11~>, |10>, |01>).
pub fn induce_from_nu_e() -> RepSpec {
    use RepGen::*;
    let en = Engine { lowest: Lowest::NuE };
    let v00 = en.from_lowest(&[]);
    let basis = [v00.clone(), en.half_anticommutator(&v00), en.from_lowest(&[Q10]), en.from_lowest(&[Q01])];
    let degrees = [Degree::ZERO, Degree::D11, Degree::D10, Degree::D01];
    let cols = [word(0, 0, 0), word(1, 1, 0), word(1, 0, 0), word(0, 1, 0)];
    rep_in_basis(&en, "induced-nu-e", &["00", "11~", "10", "01"], &degrees, &basis, &cols)
}

/// The eight-dimensional module induced from `Z²|00> = λ|00>`.
pub fn induce_from_nu_e_lambda() -> RepSpec {
    use RepGen::*;
    let en = Engine { lowest: Lowest::NuELambda };
    let v00 = en.from_lowest(&[]);
    let v11 = en.from_lowest(&[Z]);
    let basis = [
        v00.clone(),
        v11.clone(),
        en.from_lowest(&[Q10]),
        en.from_lowest(&[Q01]),
        en.half_anticommutator(&v11),
        en.half_anticommutator(&v00),
        en.from_lowest(&[Q01, Z]),
        en.from_lowest(&[Q10, Z]),
    ];
    let cols: Vec<Word> = (0..8).collect();
    rep_in_basis(&en, "induced-nu-e-lambda", &V8_LABELS, &V8_DEGREES, &basis, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::builders::{build_case_i, printed_nu_e_lambda_table, printed_nu_e_table};
    use crate::representations::rep::check_algebra;

    #[test]
    fn nu_e_matches_table_and_case_i() {
        let r = induce_from_nu_e();
        assert!(r.compare(&printed_nu_e_table()).is_empty());
        assert!(r.compare(&build_case_i()).is_empty());
        assert_eq!(r.get(RepGen::Q10).get(2, 0).to_string(), "E");
        assert!(r.get(RepGen::Z).is_zero(&r.ring));
        let report = check_algebra(&r);
        assert!(report.passed());
        assert_eq!(report.casimir("H^2").unwrap().scalar.as_deref(), Some("E^2"));
        assert_eq!(report.casimir("Z^2").unwrap().scalar.as_deref(), Some("0"));
    }

    #[test]
    fn nu_e_lambda_matches_table() {
        let r = induce_from_nu_e_lambda();
        let mismatches = r.compare(&printed_nu_e_lambda_table());
        assert!(mismatches.is_empty(), "{:?}", mismatches);
        assert!(check_algebra(&r).passed());
        let q = r.get(RepGen::Q10);
        assert_eq!(q.get(6, 0).to_string(), "-i lambda");
        assert_eq!(q.get(6, 4).to_string(), "1");
        assert_eq!(r.get(RepGen::Z).get(2, 7).to_string(), "-1");
        assert_eq!(r.get(RepGen::H).as_scalar(&r.ring), Some(e()));
    }
}
