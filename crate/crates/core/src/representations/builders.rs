use super::matrix::Mat;
use super::param::{ParamPoly, ParamRing, ParamScalar, Var};
use super::rep::{RepGen, RepSpec};
use crate::algebra::{Coefficient, Degree};

pub(crate) fn e() -> ParamScalar {
    ParamScalar::var(Var::E)
}

pub(crate) fn lam() -> ParamScalar {
    ParamScalar::var(Var::Lambda)
}

pub(crate) fn n(k: i64) -> ParamScalar {
    ParamScalar::int(k)
}

/// `k·i`
pub(crate) fn ni(k: i64) -> ParamScalar {
    ParamScalar::coeff(Coefficient::gaussian(0, 1, k, 1))
}

const MULTIPLET: [&str; 4] = ["phi", "F", "psi", "xi"];
const MULTIPLET_DEGREES: [Degree; 4] = [Degree::ZERO, Degree::D11, Degree::D10, Degree::D01];

fn multiplet(name: &str, ring: ParamRing) -> RepSpec {
    RepSpec::new(name, &MULTIPLET, &MULTIPLET_DEGREES, ring).with(RepGen::H, Mat::scalar(4, e()))
}

fn sq(entries: Vec<(usize, usize, ParamScalar)>) -> Mat {
    Mat::sparse(4, entries)
}

/// λ = 0 irrep on (φ, F, ψ, ξ), Z acting as zero.
pub fn build_case_i() -> RepSpec {
    multiplet("case-i", ParamRing::free())
        .with(RepGen::Q10, sq(vec![(0, 2, n(1)), (1, 3, e()), (2, 0, e()), (3, 1, n(1))]))
        .with(RepGen::Q01, sq(vec![(0, 3, n(1)), (1, 2, e()), (2, 1, n(1)), (3, 0, e())]))
}

/// λ = E² irrep on (φ, F, ψ, ξ).
pub fn build_case_ii() -> RepSpec {
    let ie = e().mul(&ni(1));
    multiplet("case-ii", ParamRing::free())
        .with(RepGen::Z, sq(vec![(0, 1, n(1)), (1, 0, e().mul(&e())), (2, 3, ie.neg()), (3, 2, ie.clone())]))
        .with(RepGen::Q10, sq(vec![(0, 2, n(1)), (1, 3, ie.clone()), (2, 0, e()), (3, 1, ni(-1))]))
        .with(RepGen::Q01, sq(vec![(0, 3, n(1)), (1, 2, ie.neg()), (2, 1, ni(1)), (3, 0, e())]))
}

/// The relation `(Ec + iλ)² - λ(E² - λ)` with main variable c.
pub fn c_relation() -> ParamPoly {
    let (e, l, c) = (ParamPoly::var(Var::E), ParamPoly::var(Var::Lambda), ParamPoly::var(Var::C));
    let i = ParamPoly::constant(Coefficient::i());
    let lhs = e.mul(&c).add(&i.mul(&l)).pow(2);
    lhs.sub(&l.mul(&e.pow(2).sub(&l)))
}

/// The relation `μ² - λ(E² - λ)` with main variable μ.
pub fn mu_relation() -> ParamPoly {
    let (e, l, m) = (ParamPoly::var(Var::E), ParamPoly::var(Var::Lambda), ParamPoly::var(Var::Mu));
    m.pow(2).sub(&l.mul(&e.pow(2).sub(&l)))
}

fn v_basis(name: &str, ring: ParamRing) -> RepSpec {
    RepSpec::new(name, &["v00", "v11", "v10", "v01"], &MULTIPLET_DEGREES, ring).with(RepGen::H, Mat::scalar(4, e()))
}

/// The two-parameter table on (v00, v11, v10, v01) with c symbolic, in the given ring.
pub fn build_two_param(ring: ParamRing) -> RepSpec {
    let c = ParamScalar::var(Var::C);
    let l_c = lam().div(&c).expect("c is a nonzero symbol");
    let ce_l = c.mul(&e()).div(&lam()).expect("λ is a nonzero symbol");
    let e_c = e().div(&c).expect("c is a nonzero symbol");
    v_basis("two-param", ring)
        .with(RepGen::Q10, sq(vec![(0, 2, n(1)), (1, 3, l_c.clone()), (2, 0, e()), (3, 1, ce_l)]))
        .with(RepGen::Q01, sq(vec![(0, 3, n(1)), (1, 2, c.clone()), (2, 1, e_c), (3, 0, e())]))
        .with(RepGen::Z, sq(vec![(0, 1, n(1)), (1, 0, lam()), (2, 3, l_c.neg()), (3, 2, c.neg())]))
}

pub fn two_param_ring() -> ParamRing {
    ParamRing::with_relation(c_relation(), Var::C)
}

/// The printed λ = E², c = -iE specialization of the two-parameter table.
pub fn build_two_param_special() -> RepSpec {
    let ie = e().mul(&ni(1));
    v_basis("two-param-special", ParamRing::free())
        .with(RepGen::Q10, sq(vec![(0, 2, n(1)), (1, 3, ie.clone()), (2, 0, e()), (3, 1, ni(-1))]))
        .with(RepGen::Q01, sq(vec![(0, 3, n(1)), (1, 2, ie.neg()), (2, 1, ni(1)), (3, 0, e())]))
        .with(RepGen::Z, sq(vec![(0, 1, n(1)), (1, 0, e().mul(&e())), (2, 3, ie.neg()), (3, 2, ie)]))
}

/// The printed action table on V(E) in the basis (|00>, |11~>, |10>, |01>).
pub fn printed_nu_e_table() -> RepSpec {
    RepSpec::new("nu-e-table", &["00", "11~", "10", "01"], &MULTIPLET_DEGREES, ParamRing::free())
        .with(RepGen::H, Mat::scalar(4, e()))
        .with(RepGen::Q10, sq(vec![(0, 2, n(1)), (1, 3, e()), (2, 0, e()), (3, 1, n(1))]))
        .with(RepGen::Q01, sq(vec![(0, 3, n(1)), (1, 2, e()), (2, 1, n(1)), (3, 0, e())]))
}

pub const V8_LABELS: [&str; 8] = ["00", "11", "10", "01", "00~", "11~", "10~", "01~"];
pub const V8_DEGREES: [Degree; 8] = [
    Degree::ZERO,
    Degree::D11,
    Degree::D10,
    Degree::D01,
    Degree::ZERO,
    Degree::D11,
    Degree::D10,
    Degree::D01,
];

/// The printed action tables on V(E, λ).
pub fn printed_nu_e_lambda_table() -> RepSpec {
    let il = lam().mul(&ni(1));
    RepSpec::new("nu-e-lambda-table", &V8_LABELS, &V8_DEGREES, ParamRing::free())
        .with(RepGen::H, Mat::scalar(8, e()))
        .with(
            RepGen::Q10,
            Mat::sparse(
                8,
                vec![
                    (0, 2, n(1)),
                    (4, 2, il.clone()),
                    (4, 6, e()),
                    (1, 7, n(1)),
                    (5, 3, e()),
                    (5, 7, ni(1)),
                    (2, 0, e()),
                    (6, 0, il.neg()),
                    (6, 4, n(1)),
                    (3, 1, ni(-1)),
                    (3, 5, n(1)),
                    (7, 1, e()),
                ],
            ),
        )
        .with(
            RepGen::Q01,
            Mat::sparse(
                8,
                vec![
                    (0, 3, n(1)),
                    (4, 3, il.neg()),
                    (4, 7, e()),
                    (1, 6, n(1)),
                    (5, 2, e()),
                    (5, 6, ni(-1)),
                    (2, 1, ni(1)),
                    (2, 5, n(1)),
                    (6, 1, e()),
                    (3, 0, e()),
                    (7, 0, il),
                    (7, 4, n(1)),
                ],
            ),
        )
        .with(
            RepGen::Z,
            Mat::sparse(
                8,
                vec![
                    (0, 1, n(1)),
                    (4, 5, lam()),
                    (1, 0, lam()),
                    (5, 4, n(1)),
                    (2, 7, n(-1)),
                    (6, 3, lam().neg()),
                    (3, 6, n(-1)),
                    (7, 2, lam().neg()),
                ],
            ),
        )
}

/// Dressing matrices for the degree (1,1), (1,0) and (0,1) superfields.
pub fn dressing_u1() -> Vec<ParamScalar> {
    vec![e().mul(&e()), n(1), e().neg(), e().neg()]
}

pub fn dressing_u2() -> Vec<ParamScalar> {
    vec![e(), n(-1), n(-1), e()]
}

/// Printed under the label "U_2" next to the (0,1) superfield.
pub fn dressing_u3() -> Vec<ParamScalar> {
    vec![e(), n(-1), e(), n(-1)]
}

/// Printed matrices for the degree (1,1) superfield multiplet.
pub fn printed_dressed_11() -> RepSpec {
    multiplet("dressed-11-table", ParamRing::free())
        .with(RepGen::Q10, sq(vec![(0, 2, e().neg()), (1, 3, n(-1)), (2, 0, n(-1)), (3, 1, e().neg())]))
        .with(RepGen::Q01, sq(vec![(0, 3, e().neg()), (1, 2, n(-1)), (2, 1, e().neg()), (3, 0, n(-1))]))
}

/// Printed matrices for the degree (1,0) superfield multiplet.
pub fn printed_dressed_10() -> RepSpec {
    multiplet("dressed-10-table", ParamRing::free())
        .with(RepGen::Q10, sq(vec![(0, 2, e().neg()), (1, 3, n(-1)), (2, 0, n(-1)), (3, 1, e().neg())]))
        .with(RepGen::Q01, sq(vec![(0, 3, n(1)), (1, 2, e()), (2, 1, n(1)), (3, 0, e())]))
}

/// Printed matrices for the degree (0,1) superfield multiplet.
pub fn printed_dressed_01() -> RepSpec {
    multiplet("dressed-01-table", ParamRing::free())
        .with(RepGen::Q10, sq(vec![(0, 2, n(1)), (1, 3, e()), (2, 0, e()), (3, 1, n(1))]))
        .with(RepGen::Q01, sq(vec![(0, 3, e().neg()), (1, 2, n(-1)), (2, 1, e().neg()), (3, 0, n(-1))]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::rep::check_algebra;

    #[test]
    fn case_i_rows() {
        let r = build_case_i();
        let row: Vec<String> = r.get(RepGen::Q10).row(1).iter().map(|s| s.to_string()).collect();
        assert_eq!(row, ["0", "0", "0", "E"]);
        assert!(r.get(RepGen::Z).is_zero(&r.ring));
    }

    #[test]
    fn case_ii_fermion_block_has_unit_imaginary_entries() {
        let r = build_case_ii();
        let q = r.get(RepGen::Q01);
        assert_eq!(q.get(2, 1).to_string(), "i");
        assert_eq!(q.get(1, 2).to_string(), "-i E");
    }

    #[test]
    fn literal_tables_close() {
        for rep in [build_case_i(), build_case_ii(), printed_nu_e_lambda_table(), build_two_param_special()] {
            let report = check_algebra(&rep);
            assert!(report.passed(), "{}: {:?}", rep.name, report);
        }
    }

    #[test]
    fn relations_vanish_at_the_numeric_point() {
        let vals = |v: Var| match v {
            Var::E => Coefficient::from_int(5),
            Var::Lambda => Coefficient::from_int(9),
            Var::Mu => Coefficient::from_int(12),
            Var::C => Coefficient::gaussian(12, 5, -9, 5),
            Var::R => Coefficient::zero(),
        };
        assert!(c_relation().eval(&vals).is_zero());
        assert!(mu_relation().eval(&vals).is_zero());
    }

    #[test]
    fn two_parameter_table_needs_its_relation() {
        let free = check_algebra(&build_two_param(ParamRing::free()));
        assert!(!free.passed());
        assert!(!free.relation("[Q01,Q10]=2iZ").unwrap().passed);
        assert!(free.relation("{Q10,Z}=0").unwrap().passed);
        assert!(free.relation("{Q01,Z}=0").unwrap().passed);
        let quotient = check_algebra(&build_two_param(two_param_ring()));
        assert!(quotient.passed(), "{:?}", quotient);
        assert_eq!(quotient.casimir("Z^2").unwrap().scalar.as_deref(), Some("lambda"));
    }
}
