use serde_json::{json, Value};

use z22susy::actions::{run_action, ActionName};
use z22susy::multiplets::{impose_f011_constraint, impose_z_constraint, Constrained};
use z22susy::representations::*;
use z22susy::superspace::{
    algebra_relations, check_operator_identity_with, covariant_relations, generic_super_field, GeneratorTable,
};
use z22susy::{Degree, Error, Result};

use crate::criteria::{self, Options, DEFAULT_TRUNCATION};
use crate::report::{Check, Report};

/// A report plus the machine-readable artifact written by `--out`.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub artifact: Value,
}

impl Outcome {
    fn new(report: Report, artifact: Value) -> Self {
        Outcome { report, artifact }
    }
}

pub fn parse_delta(s: &str) -> Result<Degree> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let bit = |x: &str| match x {
                "0" => Ok(0u8),
                "1" => Ok(1u8),
                _ => Err(Error::Parse(format!("degree entries are 0 or 1, got `{}`", x))),
            };
            Ok(Degree::new(bit(a)?, bit(b)?))
        }
        _ => Err(Error::Parse(format!("degree must look like a,b, got `{}`", s))),
    }
}

pub fn verify_algebra(truncation: u32, corrupt: bool) -> Outcome {
    let table = if corrupt { GeneratorTable::corrupted() } else { GeneratorTable::standard() };
    let mut r = Report::new(format!("verify-algebra at K={}", truncation));
    let mut art = Vec::new();
    for rel in algebra_relations().into_iter().chain(covariant_relations()) {
        match check_operator_identity_with(&table, &rel.lhs, &rel.rhs, truncation) {
            Ok(rep) => {
                let orders = rep.checks.iter().map(|c| c.orders_compared).min().unwrap_or(0);
                let detail = match rep.checks.iter().find_map(|c| c.mismatch.as_ref().map(|m| format!("{}: {}", c.delta, m))) {
                    Some(m) => m,
                    None if truncation < DEFAULT_TRUNCATION => format!("z-orders below {} (reduced coverage)", orders),
                    None => format!("z-orders below {}", orders),
                };
                art.push(json!({ "relation": rel.name, "report": rep }));
                r.push(Check::new(rel.name, rep.passed(), detail));
            }
            Err(e) => r.push(Check::new(rel.name, false, e.to_string())),
        }
    }
    Outcome::new(r, Value::Array(art))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Z,
    F011,
}

fn constrained(delta: Degree, which: Which, truncation: u32) -> Result<Constrained> {
    match which {
        Which::Z => impose_z_constraint(delta, truncation),
        Which::F011 => impose_f011_constraint(delta, truncation),
    }
}

/// The printed matrices a constrained multiplet should reproduce, when there are any.
fn printed_matrices(delta: Degree, which: Which) -> Option<RepSpec> {
    match (which, (delta.a, delta.b)) {
        (Which::Z, (0, 0)) => Some(build_case_i()),
        (Which::Z, (1, 1)) => Some(printed_dressed_11()),
        (Which::Z, (1, 0)) => Some(printed_dressed_10()),
        (Which::Z, (0, 1)) => Some(printed_dressed_01()),
        (Which::F011, (0, 0)) => Some(build_case_ii()),
        _ => None,
    }
}

pub fn constrain(delta: Degree, which: Which, truncation: u32) -> Outcome {
    let label = if which == Which::Z { "z" } else { "f011" };
    let mut r = Report::new(format!("constrain {} at degree {} with horizon {}", label, delta, truncation));
    let c = match constrained(delta, which, truncation) {
        Ok(c) => c,
        Err(e) => {
            r.push(Check::new("constraint", false, e.to_string()));
            return Outcome::new(r, Value::Null);
        }
    };
    r.push(Check::new("constraint closes", c.system.is_closed(), format!("{} derived equations", c.system.log().len())));
    let rep = c.multiplet.to_rep(&format!("{}-constrained", label));
    let a = check_algebra(&rep);
    r.push(Check::new("matrices satisfy the algebra", a.passed(), format!("{} relations", a.relations.len())));
    if let Some(table) = printed_matrices(delta, which) {
        let m = rep.compare(&table);
        let detail = if m.is_empty() {
            format!("equals {}", table.name)
        } else {
            m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
        };
        r.push(Check::new("matrices equal the printed table", m.is_empty(), detail));
    }
    let artifact = json!({ "multiplet": c.multiplet.to_json(), "field": c.field.to_json(), "rep": rep.to_json() });
    Outcome::new(r, artifact)
}

pub const IRREP_CASES: [&str; 7] = ["i", "ii", "two-param", "induced8", "dress1", "dress2", "dress3"];

pub fn irreps(case: &str, seed: u64) -> Result<Outcome> {
    let mut r = Report::new(format!("irreps {}", case));
    let rep = match case {
        "i" => build_case_i(),
        "ii" => build_case_ii(),
        "two-param" => build_two_param(two_param_ring()),
        "induced8" => induce_from_nu_e_lambda(),
        "dress1" | "dress2" | "dress3" => {
            let n = case[5..].parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?;
            r.checks = criteria::dressing_check(n);
            let art = r.checks.last().map(|c| c.artifacts.clone()).unwrap_or(Value::Null);
            return Ok(Outcome::new(r, art));
        }
        _ => return Err(Error::Parse(format!("unknown case `{}`; expected one of {}", case, IRREP_CASES.join(", ")))),
    };
    let a = check_algebra(&rep);
    let casimirs: Vec<String> =
        a.casimirs.iter().map(|c| format!("{} = {}", c.name, c.scalar.as_deref().unwrap_or("non-scalar"))).collect();
    r.push(Check::new("algebra", a.passed(), casimirs.join(", ")));
    match case {
        "i" => r.push(cmp("matches the induced (nu, E) table", &induce_from_nu_e(), &rep)),
        "ii" => r.push(cmp("matches the lambda = E^2 specialization", &build_two_param_special(), &rep)),
        "induced8" => r.push(cmp("matches the printed tables", &printed_nu_e_lambda_table(), &rep)),
        _ => {}
    }
    let irr = irreducible(&rep, seed);
    let want = case != "induced8";
    let verdict = match irr.irreducible {
        Some(true) => "irreducible",
        Some(false) => "reducible",
        None => "undecided",
    };
    r.push(Check::new(
        if want { "irreducible" } else { "reducible" },
        irr.irreducible == Some(want) && irr.cross_check.as_ref().is_none_or(|c| c.agrees),
        verdict,
    ));
    let artifact = json!({ "rep": rep.to_json(), "algebra": a, "irreducibility": irr });
    Ok(Outcome::new(r, artifact))
}

fn cmp(name: &str, want: &RepSpec, got: &RepSpec) -> Check {
    let m = got.compare(want);
    Check::new(name, m.is_empty(), m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "))
}

pub fn action(name: ActionName, truncation: u32) -> Outcome {
    let mut r = Report::new(format!("action {}", name.name()));
    r.checks = criteria::action_checks(name, truncation);
    let artifact = run_action(name, truncation).map(|a| a.to_json()).unwrap_or(Value::Null);
    Outcome::new(r, artifact)
}

pub fn superfield_export(delta: Degree, which: &str, truncation: u32) -> Result<Outcome> {
    let field = match which {
        "generic" => generic_super_field(delta, truncation, "f"),
        "z" => impose_z_constraint(delta, truncation)?.field,
        "f011" => impose_f011_constraint(delta, truncation)?.field,
        _ => return Err(Error::Parse(format!("unknown superfield `{}`; expected generic, z or f011", which))),
    };
    let mut r = Report::new(format!("superfield export {} at degree {}", which, delta));
    let n = field.components().filter(|(_, p)| !p.is_zero()).count();
    r.push(Check::new("export", true, format!("{} nonzero components, exact = {}", n, field.is_exact())));
    Ok(Outcome::new(r, field.to_json()))
}

pub fn verify_all(opts: &Options) -> Outcome {
    let reports = criteria::run_all(opts);
    let mut r = Report::new("verify-all");
    for (i, c) in reports.iter().enumerate() {
        for check in &c.checks {
            let mut check = check.clone();
            check.name = format!("[{}] {}", i + 1, check.name);
            check.artifacts = Value::Null;
            r.push(check);
        }
    }
    Outcome::new(r, criteria::to_json(&reports))
}
