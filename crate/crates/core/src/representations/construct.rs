use super::builders::{ni, V8_LABELS};
use super::matrix::Mat;
use super::param::{ParamRing, ParamScalar};
use super::rep::{check_algebra, RepGen, RepSpec};
use crate::error::{Error, Result};

/// Coefficient `x` with `y = x·w`, or `None` if `y` is not a multiple of `w`.
fn multiple_of(y: &[ParamScalar], w: &[ParamScalar], ring: &ParamRing) -> Option<ParamScalar> {
    let j = (0..w.len()).find(|&j| !ring.is_zero(&w[j]))?;
    let x = ring.reduce(&y[j].div(&w[j])?).ok()?;
    let ok = y.iter().zip(w).all(|(a, b)| ring.eq(a, &ring.mul(&x, b)));
    ok.then_some(x)
}

fn show(v: &[ParamScalar], labels: &[String]) -> String {
    let parts: Vec<String> = v
        .iter()
        .zip(labels)
        .filter(|(s, _)| !s.is_zero())
        .map(|(s, l)| format!("({})|{}>", s, l))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Restriction of the eight-dimensional module to the span of
/// `v00 = α|00> + β|00~>`, `Z v00`, `Q10 v00`, `Q01 v00`, computed in `ring`.
///
/// Errors unless `Q01 Z v00 = c Q10 v00` and the span is invariant.
pub fn invariant_subspace(
    rep8: &RepSpec,
    alpha: &ParamScalar,
    beta: &ParamScalar,
    c: &ParamScalar,
    ring: ParamRing,
) -> Result<RepSpec> {
    let rep8 = RepSpec { ring: ring.clone(), ..rep8.clone() };
    let idx = |label: &str| rep8.labels.iter().position(|l| l == label).expect("eight-dimensional basis");
    let mut v00 = vec![ParamScalar::zero(); rep8.dim()];
    v00[idx("00")] = alpha.clone();
    v00[idx("00~")] = beta.clone();
    let lhs = rep8.act(RepGen::Q01, &rep8.act(RepGen::Z, &v00));
    let q10v = rep8.act(RepGen::Q10, &v00);
    let rhs: Vec<ParamScalar> = q10v.iter().map(|s| ring.mul(c, s)).collect();
    if !lhs.iter().zip(&rhs).all(|(a, b)| ring.eq(a, b)) {
        return Err(Error::Constraint(format!(
            "Q01 Z v00 = {} differs from c Q10 v00 = {}",
            show(&lhs, &rep8.labels),
            show(&rhs, &rep8.labels)
        )));
    }
    let basis = [v00.clone(), rep8.act(RepGen::Z, &v00), q10v, rep8.act(RepGen::Q01, &v00)];
    let degrees: Vec<_> = [RepGen::H, RepGen::Z, RepGen::Q10, RepGen::Q01].iter().map(|g| g.degree()).collect();
    let mut out = RepSpec::new("invariant-subspace", &["v00", "v11", "v10", "v01"], &degrees, ring.clone());
    for g in RepGen::ALL {
        let mut m = Mat::zeros(4, 4);
        for (s, w) in basis.iter().enumerate() {
            let y = rep8.act(g, w);
            let t = degrees.iter().position(|d| *d == degrees[s] + g.degree()).expect("four sectors");
            let x = multiple_of(&y, &basis[t], &ring).ok_or_else(|| {
                Error::Constraint(format!("{} v{} = {} leaves the span", g.name(), s, show(&y, &rep8.labels)))
            })?;
            m.set(s, t, x);
        }
        out = out.with(g, m);
    }
    Ok(out)
}

/// The four-dimensional quotient obtained by identifying each tilded vector with a
/// multiple of its untilded partner, with `μ` given in `ring`.
pub fn quotient_four_dim(rep8: &RepSpec, mu: &ParamScalar, ring: ParamRing) -> Result<RepSpec> {
    let casimir = |g: RepGen, what: &str| {
        rep8.word(&[g, g]).as_scalar(&rep8.ring).ok_or_else(|| Error::Constraint(format!("{} is not scalar", what)))
    };
    let lambda = casimir(RepGen::Z, "Z^2")?;
    let energy = rep8.get(RepGen::H).as_scalar(&rep8.ring).ok_or_else(|| Error::Constraint("H is not scalar".into()))?;
    let lam_inv = lambda.inv().ok_or_else(|| Error::Constraint("λ = 0".into()))?;
    let e_inv = energy.inv().ok_or_else(|| Error::Constraint("E = 0".into()))?;
    let il = lambda.mul(&ni(1));
    // row s: image of basis vector s in (|00>, |11>, |10>, |01>)
    let mut p = Mat::zeros(8, 4);
    for k in 0..4 {
        p.set(k, k, ParamScalar::one());
    }
    p.set(4, 0, mu.clone());
    p.set(5, 1, mu.mul(&lam_inv));
    p.set(6, 2, mu.sub(&il).mul(&e_inv));
    p.set(7, 3, mu.add(&il).mul(&e_inv));
    let p = p.map(|s| ring.reduce(s).unwrap_or_else(|_| s.clone()));
    let labels: Vec<&str> = V8_LABELS[..4].to_vec();
    let mut out = RepSpec::new("quotient-four-dim", &labels, &rep8.basis_degrees[..4], ring.clone());
    for g in RepGen::ALL {
        let mp = rep8.get(g).mul(&p, &ring);
        let mut m4 = Mat::zeros(4, 4);
        for s in 0..4 {
            for t in 0..4 {
                m4.set(s, t, mp.get(s, t).clone());
            }
        }
        let pm = p.mul(&m4, &ring);
        if let Some((s, t)) = mp.mismatches(&pm, &ring).first() {
            return Err(Error::Constraint(format!(
                "{} is not well defined on the quotient: |{}> gives {} on |{}> instead of {}",
                g.name(),
                V8_LABELS[*s],
                mp.get(*s, *t),
                labels[*t],
                pm.get(*s, *t)
            )));
        }
        out = out.with(g, m4);
    }
    Ok(out)
}

/// Conjugation `M' = U M U⁻¹` of Q10, Q01 and Z by a diagonal `U`.
///
/// In the row convention this is `M'[s][t] = U_s M[s][t] / U_t`. Errors when an
/// entry keeps a denominator or the result violates the algebra.
pub fn dress(rep: &RepSpec, u: &[ParamScalar], name: &str) -> Result<RepSpec> {
    assert_eq!(u.len(), rep.dim());
    let ring = &rep.ring;
    let mut out = rep.clone();
    out.name = name.to_string();
    for g in [RepGen::Q10, RepGen::Q01, RepGen::Z] {
        let m = rep.get(g);
        let mut d = Mat::zeros(rep.dim(), rep.dim());
        for s in 0..rep.dim() {
            for t in 0..rep.dim() {
                if m.get(s, t).is_zero() {
                    continue;
                }
                let x = u[s].mul(m.get(s, t)).div(&u[t]).ok_or_else(|| Error::InvalidDressing(format!("U_{} = 0", t)))?;
                let x = ring.reduce(&x)?;
                if !x.is_polynomial() {
                    return Err(Error::InvalidDressing(format!("{}[{}][{}] = {}", g.name(), rep.labels[s], rep.labels[t], x)));
                }
                d.set(s, t, x);
            }
        }
        out.gens.insert(g, d);
    }
    let report = check_algebra(&out);
    if !report.passed() {
        let failed: Vec<&str> = report.relations.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
        return Err(Error::Constraint(format!("dressed representation fails {}", failed.join(", "))));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Coefficient;
    use crate::representations::builders::*;
    use crate::representations::induce::induce_from_nu_e_lambda;
    use crate::representations::param::Var;

    fn c() -> ParamScalar {
        ParamScalar::var(Var::C)
    }

    fn numeric(v: Var) -> Option<ParamScalar> {
        match v {
            Var::E => Some(n(5)),
            Var::Lambda => Some(n(9)),
            _ => None,
        }
    }

    #[test]
    fn symbolic_invariant_subspace_is_the_two_parameter_table() {
        let ring = two_param_ring();
        let alpha = e().mul(&c()).add(&lam().mul(&ni(1)));
        let w = invariant_subspace(&induce_from_nu_e_lambda(), &alpha, &n(1), &c(), ring.clone()).unwrap();
        let target = build_two_param(ring);
        assert!(w.compare(&target).is_empty(), "{:?}", w.compare(&target));
        assert!(w.ring.eq(w.get(RepGen::Q01).get(1, 2), &c()));
    }

    #[test]
    fn numeric_invariant_subspace() {
        let rep8 = induce_from_nu_e_lambda().substitute("v8-num", ParamRing::free(), &numeric).unwrap();
        let c_val = ParamScalar::coeff(Coefficient::gaussian(12, 5, -9, 5));
        let w = invariant_subspace(&rep8, &n(12), &n(1), &c_val, ParamRing::free()).unwrap();
        let subst = |v: Var| if v == Var::C { Some(c_val.clone()) } else { numeric(v) };
        let target = build_two_param(ParamRing::free()).substitute("two-param-num", ParamRing::free(), &subst).unwrap();
        assert!(w.compare(&target).is_empty());
        assert!(check_algebra(&w).passed());
    }

    #[test]
    fn wrong_c_is_rejected() {
        let rep8 = induce_from_nu_e_lambda().substitute("v8-num", ParamRing::free(), &numeric).unwrap();
        let err = invariant_subspace(&rep8, &n(12), &n(1), &n(1), ParamRing::free()).unwrap_err();
        assert!(matches!(err, Error::Constraint(_)));
    }

    #[test]
    fn quotient_agrees_with_two_parameter_table() {
        let ring = ParamRing::with_relation(mu_relation(), Var::Mu);
        let q = quotient_four_dim(&induce_from_nu_e_lambda(), &ParamScalar::var(Var::Mu), ring.clone()).unwrap();
        let ec = ParamScalar::var(Var::Mu).sub(&lam().mul(&ni(1))).div(&e()).unwrap();
        let target = build_two_param(ParamRing::free()).substitute("two-param-mu", ring, &|v| (v == Var::C).then(|| ec.clone())).unwrap();
        assert!(q.compare(&target).is_empty(), "{:?}", q.compare(&target));
    }

    #[test]
    fn quotient_needs_the_mu_relation() {
        let err = quotient_four_dim(&induce_from_nu_e_lambda(), &ParamScalar::var(Var::Mu), ParamRing::free()).unwrap_err();
        assert!(matches!(err, Error::Constraint(_)));
    }

    #[test]
    fn quotient_at_lambda_e_squared() {
        let e2 = e().mul(&e());
        let rep8 = induce_from_nu_e_lambda()
            .substitute("v8-special", ParamRing::free(), &|v| (v == Var::Lambda).then(|| e2.clone()))
            .unwrap();
        let q = quotient_four_dim(&rep8, &ParamScalar::zero(), ParamRing::free()).unwrap();
        assert!(q.compare(&build_two_param_special()).is_empty());
        assert!(q.compare(&build_case_ii()).is_empty());
    }

    #[test]
    fn dressing_rejects_denominators() {
        let u = vec![n(1), n(1), e().mul(&e()).mul(&e()), n(1)];
        assert!(matches!(dress(&build_case_i(), &u, "bad"), Err(Error::InvalidDressing(_))));
    }

    #[test]
    fn dressed_case_i_matches_printed_tables() {
        let cases = [
            (dressing_u1(), printed_dressed_11()),
            (dressing_u2(), printed_dressed_10()),
            (dressing_u3(), printed_dressed_01()),
        ];
        for (u, table) in cases {
            let d = dress(&build_case_i(), &u, "dressed").unwrap();
            assert!(d.compare(&table).is_empty(), "{}: {:?}", table.name, d.compare(&table));
        }
    }
}
