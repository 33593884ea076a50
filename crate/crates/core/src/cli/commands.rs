use std::collections::BTreeMap;
use std::io::Write;

use serde_json::{json, Value};

use super::{hex_digest, load, matrix_rows, Command, DeformAction, Identity, OperatorAction, OperatorArgs, Outcome, FIXTURES};
use crate::algebra::{check_morphism, check_substructure, AnchoredAlgebra, LieRinehartAlgebra, LsrAlgebra};
use crate::cohomology::{combinations, CohomologyDims, Complex};
use crate::deformation::{
    apply_equivalence, check_deformation, infinitesimal, nijenhuis_trivial_deformation, obstruction,
    obstruction_class_vanishes, rigidity_certificate, try_extend, TruncatedDeformation,
};
use crate::document::{tensor_entries, InputDocument};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, format_vec, parse_rational, Matrix, Rational};
use crate::operators::{
    check_nijenhuis, check_o_operator, check_rota_baxter, composition_condition, deformed_structures,
    induced_algebra_from_o_operator, is_nijenhuis, is_rota_baxter, lift_to_semidirect, o_operator_compatibility,
    o_operator_test, polynomial_nijenhuis, quotient_nijenhuis, search_operators, Structure,
};
use crate::report::Report;
use crate::representation::{adjoint_rep, lie_adjoint, RepKind, RepresentationBundle};

pub(super) fn fixtures(name: Option<&str>) -> i32 {
    match name {
        None => {
            let names: String = FIXTURES.iter().map(|(n, _)| format!("{n}\n")).collect();
            let _ = std::io::stdout().lock().write_all(names.as_bytes());
            0
        }
        Some(n) => match super::fixture_text(n) {
            Some(text) => {
                let _ = std::io::stdout().lock().write_all(text.as_bytes());
                0
            }
            None => {
                eprintln!("error: unknown fixture {n:?}");
                2
            }
        },
    }
}

pub(super) fn dispatch(cmd: &Command) -> Result<(Outcome, String)> {
    let (outcome, bytes) = match cmd {
        Command::Fixtures { .. } => unreachable!("handled before dispatch"),
        Command::Validate(source) => {
            let (doc, bytes) = load(source)?;
            (validate(&doc)?, bytes)
        }
        Command::Cohomology { source, rep, degree } => {
            let (doc, bytes) = load(source)?;
            (cohomology(&doc, rep.as_deref(), *degree)?, bytes)
        }
        Command::Deform { action, source, deformation, automorphism, operator } => {
            let (doc, bytes) = load(source)?;
            let names = Names { deformation: deformation.as_deref(), automorphism: automorphism.as_deref(), operator: operator.as_deref() };
            (deform(&doc, *action, names)?, bytes)
        }
        Command::Operators { action, args } => {
            let (doc, bytes) = load(&args.source)?;
            (operators(&doc, *action, args)?, bytes)
        }
    };
    Ok((outcome, hex_digest(&bytes)))
}

/// The requested name, or the only key of `map`.
fn pick<V>(map: &BTreeMap<String, V>, requested: Option<&str>, what: &str, flag: &str) -> Result<String> {
    if let Some(name) = requested {
        return Ok(name.to_string());
    }
    let mut keys = map.keys();
    match (keys.next(), keys.next()) {
        (Some(only), None) => Ok(only.clone()),
        (None, _) => Err(Error::parse(flag, format!("the document declares no {what}"))),
        _ => Err(Error::parse(flag, format!("the document declares several {what}; choose one"))),
    }
}

fn named(mut report: Report, subject: String) -> Report {
    report.subject = subject;
    report
}

fn validate(doc: &InputDocument) -> Result<Outcome> {
    let l = doc.algebra()?;
    let mut out = Outcome::default();
    let algebra_report = l.validate();
    let valid = algebra_report.passed();
    out.reports.push(named(algebra_report, "algebra".into()));
    for name in doc.representations.keys() {
        let rep = doc.representation(name)?;
        let subject = format!("representation {name}");
        let report = match rep.kind() {
            RepKind::LsrPair => rep.validate_lsr(&l)?,
            RepKind::LieModule if valid => rep.validate_lie(&l.sub_adjacent()?)?,
            RepKind::LieModule => {
                let mut r = Report::new("");
                r.flag("sub-adjacent algebra", false, Some("the algebra is invalid".into()));
                r
            }
        };
        out.reports.push(named(report, subject));
    }
    for name in doc.subspaces.keys() {
        let (sub, kind) = doc.subspace(name)?;
        out.reports.push(named(check_substructure(&l, &sub, kind)?, format!("subspace {name}")));
    }
    for name in doc.morphisms.keys() {
        let fg = doc.morphism(name)?;
        out.reports.push(named(check_morphism(&l, &l, &fg)?, format!("morphism {name}")));
    }
    for name in doc.deformations.keys() {
        let d = doc.deformation(name)?;
        out.reports.push(named(check_deformation(&d), format!("deformation {name}")));
    }
    Ok(out)
}

const ADJOINT_CAVEAT: &str = "the adjoint pair is a representation only when right multiplication is A-linear, \
which can fail for a nonzero anchor";

fn cohomology(doc: &InputDocument, rep_name: Option<&str>, degree: usize) -> Result<Outcome> {
    if degree > 4 {
        eprintln!("warning: degree {degree} cochain spaces grow combinatorially; this may be slow");
    }
    let l = doc.algebra()?;
    let mut out = Outcome::default();
    let algebra_report = l.validate();
    if !algebra_report.passed() {
        out.reports.push(named(algebra_report, "algebra".into()));
        return Ok(out);
    }
    let name = resolve_rep_name(doc, rep_name)?;
    let rep = if is_builtin_adjoint(doc, &name) {
        let (adj, report) = adjoint_rep(&l);
        if !report.passed() {
            let mut report = report;
            report.note(ADJOINT_CAVEAT);
            out.reports.push(report);
            return Ok(out);
        }
        adj
    } else {
        let rep = doc.representation(&name)?;
        let report = rep.validate_lsr(&l)?;
        if !report.passed() {
            out.reports.push(named(report, format!("representation {name}")));
            return Ok(out);
        }
        rep
    };
    let complex = Complex::new(&l, &rep)?;
    let spaces: Vec<_> = (0..=degree + 1).map(|k| complex.space(k)).collect();
    let deltas: Vec<Matrix> =
        (0..=degree).map(|k| complex.delta_matrix(&spaces[k], &spaces[k + 1])).collect::<Result<_>>()?;
    let ranks: Vec<usize> = deltas.iter().map(Matrix::rank).collect();
    let mut report = Report::new(format!("cohomology with values in {name}"));
    for k in 1..=degree {
        report.flag(format!("coboundary-squared degree {}", k - 1), (&deltas[k] * &deltas[k - 1]).is_zero(), None);
    }
    let dims: Vec<CohomologyDims> = (0..=degree)
        .map(|k| {
            let prev = if k == 0 { 0 } else { ranks[k - 1] };
            let dim_kernel = spaces[k].dim() - ranks[k];
            CohomologyDims {
                degree: k,
                dim_cochains: spaces[k].dim(),
                rank: ranks[k],
                dim_kernel,
                dim_image_prev: prev,
                h: dim_kernel - prev,
            }
        })
        .collect();
    out.text.push(format!("{:>6} {:>8} {:>8} {:>6}", "degree", "dim C", "rank d", "dim H"));
    for d in &dims {
        out.text.push(format!("{:>6} {:>8} {:>8} {:>6}", d.degree, d.dim_cochains, d.rank, d.h));
    }
    let zero: Vec<Vec<String>> = spaces[0].basis().iter().map(|v| v.iter().map(format_rational).collect()).collect();
    out.text.push(format!("C^0 basis: {}", if zero.is_empty() { "none".to_string() } else {
        spaces[0].basis().iter().map(|v| format_vec(v)).collect::<Vec<_>>().join(", ")
    }));
    out.results.insert("dims".into(), serde_json::to_value(&dims).expect("serializable"));
    out.results.insert("zero_cochain_basis".into(), json!(zero));
    out.reports.push(report);
    Ok(out)
}

fn resolve_rep_name(doc: &InputDocument, requested: Option<&str>) -> Result<String> {
    if requested.is_none() && doc.representations.is_empty() {
        return Ok("adjoint".into());
    }
    pick(&doc.representations, requested, "representations", "--rep")
}

fn is_builtin_adjoint(doc: &InputDocument, name: &str) -> bool {
    name == "adjoint" && !doc.representations.contains_key("adjoint")
}

struct Names<'a> {
    deformation: Option<&'a str>,
    automorphism: Option<&'a str>,
    operator: Option<&'a str>,
}

fn fragment(name: &str, d: &TruncatedDeformation) -> Value {
    let doc = InputDocument::deformation_doc(d);
    json!({ "deformations": { name: doc } })
}

fn push_fragment(out: &mut Outcome, value: Value) {
    out.text.push(serde_json::to_string_pretty(&value).expect("serializable"));
    out.results.insert("fragment".into(), value);
}

fn deform(doc: &InputDocument, action: DeformAction, names: Names) -> Result<Outcome> {
    let mut out = Outcome::default();
    let l = doc.algebra()?;
    let deformation = || -> Result<(String, TruncatedDeformation)> {
        let name = pick(&doc.deformations, names.deformation, "deformations", "--deformation")?;
        let d = doc.deformation(&name)?;
        Ok((name, d))
    };
    match action {
        DeformAction::Check => {
            let (name, d) = deformation()?;
            out.reports.push(named(check_deformation(&d), format!("deformation {name}")));
        }
        DeformAction::Infinitesimal => {
            let (_, d) = deformation()?;
            match infinitesimal(&d)? {
                Some((c, report)) => {
                    out.results.insert("cochain".into(), json!(c.coeffs.iter().map(format_rational).collect::<Vec<_>>()));
                    out.text.push(format!("coordinates: {}", format_vec(&c.coeffs)));
                    out.reports.push(report);
                }
                None => {
                    let mut r = Report::new("infinitesimal");
                    r.flag("nonzero-term", false, Some("every term is zero".into()));
                    out.reports.push(r);
                }
            }
        }
        DeformAction::Obstruction => {
            let (_, d) = deformation()?;
            let (obs, report) = obstruction(&d)?;
            let dim = l.dim();
            let mut entries = Vec::new();
            for (ci, combo) in combinations(dim, 2).iter().enumerate() {
                for z in 0..dim {
                    for r in 0..dim {
                        let v = &obs[(ci * dim + z) * dim + r];
                        if !num_traits::Zero::is_zero(v) {
                            entries.push(json!([combo[0], combo[1], z, r, format_rational(v)]));
                        }
                    }
                }
            }
            let vanishes = obstruction_class_vanishes(&d)?;
            out.text.push(if entries.is_empty() { "obstruction: 0".to_string() } else { format!("obstruction: {}", json!(entries)) });
            out.text.push(format!("class vanishes: {vanishes}"));
            out.results.insert("obstruction".into(), json!(entries));
            out.results.insert("class_vanishes".into(), json!(vanishes));
            out.reports.push(report);
        }
        DeformAction::Extend => {
            let (name, d) = deformation()?;
            match try_extend(&d)? {
                Some(next) => {
                    let extended = d.extended(next)?;
                    out.reports.push(named(check_deformation(&extended), format!("extended deformation {name}")));
                    push_fragment(&mut out, fragment(&name, &extended));
                }
                None => {
                    let mut r = Report::new(format!("extension of {name}"));
                    r.flag("extension", false, Some("the obstruction is not a coboundary".into()));
                    out.reports.push(r);
                }
            }
        }
        DeformAction::Equiv => {
            let (name, d) = deformation()?;
            let phi_name = pick(&doc.automorphisms, names.automorphism, "automorphisms", "--automorphism")?;
            let (result, report) = apply_equivalence(&d, &doc.automorphism(&phi_name)?)?;
            out.reports.push(report);
            push_fragment(&mut out, fragment(&format!("{name}_{phi_name}"), &result));
        }
        DeformAction::Trivial => {
            let op = pick(&doc.operators, names.operator, "operators", "--operator")?;
            let (d, report) = nijenhuis_trivial_deformation(&l, &doc.operator(&op)?)?;
            out.reports.push(report);
            push_fragment(&mut out, fragment(&format!("trivial_{op}"), &d));
        }
        DeformAction::Rigidity => {
            let cert = rigidity_certificate(&l)?;
            out.results.insert("h2".into(), json!(cert.h2));
            out.results.insert("rigid_hint".into(), json!(cert.rigid_hint));
            out.reports.push(cert.report);
        }
    }
    Ok(out)
}

struct OperatorContext<'a> {
    doc: &'a InputDocument,
    args: &'a OperatorArgs,
    l: LsrAlgebra,
    g: Option<LieRinehartAlgebra>,
}

impl OperatorContext<'_> {
    fn structure(&self) -> Structure<'_> {
        match &self.g {
            Some(g) => Structure::Lie(g),
            None => Structure::Lsr(&self.l),
        }
    }

    fn rep(&self) -> Result<RepresentationBundle> {
        let name = resolve_rep_name(self.doc, self.args.rep.as_deref())?;
        if is_builtin_adjoint(self.doc, &name) {
            return Ok(match &self.g {
                Some(g) => lie_adjoint(g),
                None => adjoint_rep(&self.l).0,
            });
        }
        self.doc.representation(&name)
    }

    fn operator(&self) -> Result<Matrix> {
        let name = pick(&self.doc.operators, self.args.operator.as_deref(), "operators", "--operator")?;
        self.doc.operator(&name)
    }

    fn required(&self, requested: Option<&str>, flag: &str) -> Result<Matrix> {
        let name = requested.ok_or_else(|| Error::parse(flag, "required for this command"))?;
        self.doc.operator(name)
    }

    fn weight(&self) -> Result<Rational> {
        parse_rational(&self.args.weight).map_err(|e| Error::parse("--weight", e))
    }
}

fn operators(doc: &InputDocument, action: OperatorAction, args: &OperatorArgs) -> Result<Outcome> {
    let l = doc.algebra()?;
    let g = if args.lie || action == OperatorAction::Induced { Some(l.sub_adjacent()?) } else { None };
    let ctx = OperatorContext { doc, args, l, g };
    let mut out = Outcome::default();
    let lsr_only = |what: &str| -> Result<()> {
        if ctx.g.is_some() {
            return Err(Error::KindMismatch(format!("{what} is defined on left-symmetric Rinehart algebras only")));
        }
        Ok(())
    };
    match action {
        OperatorAction::Nijenhuis => out.reports.push(check_nijenhuis(&ctx.structure(), &ctx.operator()?)?),
        OperatorAction::RotaBaxter => {
            lsr_only("rota-baxter")?;
            out.reports.push(check_rota_baxter(&ctx.l, &ctx.operator()?, &ctx.weight()?)?);
        }
        OperatorAction::OOperator => out.reports.push(check_o_operator(ctx.structure(), &ctx.rep()?, &ctx.operator()?)?),
        OperatorAction::Compat => {
            let t2 = ctx.required(args.second.as_deref(), "--second")?;
            out.reports.push(o_operator_compatibility(ctx.structure(), &ctx.rep()?, &ctx.operator()?, &t2)?);
        }
        OperatorAction::Lift => {
            let lift = lift_to_semidirect(ctx.structure(), &ctx.rep()?, &ctx.operator()?, &ctx.weight()?)?;
            out.results.insert("o_operator".into(), json!(lift.o_operator));
            out.results.insert("nilpotent_lift".into(), json!(lift.nilpotent_lift));
            if let (Some(rb), Some(idem)) = (lift.rota_baxter_lift, lift.idempotent_lift) {
                out.results.insert("rota_baxter_lift".into(), json!(rb));
                out.results.insert("idempotent_lift".into(), json!(idem));
            }
            out.text.push(format!("O-operator: {}", lift.o_operator));
            out.reports.push(lift.report);
        }
        OperatorAction::Search => search(&ctx, &mut out)?,
        OperatorAction::Deformed => {
            lsr_only("deformed")?;
            let (algebras, report) = deformed_structures(&ctx.l, &ctx.operator()?, args.k_max)?;
            let products: Vec<Value> = algebras.iter().map(|a| json!(tensor_entries(a.product()))).collect();
            out.results.insert("products".into(), json!(products));
            out.reports.push(report);
        }
        OperatorAction::Polynomial => {
            let coeffs = args
                .coeffs
                .split(',')
                .map(|c| parse_rational(c.trim()).map_err(|e| Error::parse("--coeffs", e)))
                .collect::<Result<Vec<_>>>()?;
            let (p, report) = polynomial_nijenhuis(&ctx.structure(), &ctx.operator()?, args.lowest, &coeffs)?;
            out.results.insert("operator".into(), json!(matrix_rows(&p)));
            out.text.push(format!("operator: {:?}", matrix_rows(&p)));
            out.reports.push(report);
        }
        OperatorAction::Quotient => {
            let t2 = ctx.required(args.second.as_deref(), "--second")?;
            let (n, report) = quotient_nijenhuis(ctx.structure(), &ctx.rep()?, &ctx.operator()?, &t2)?;
            out.results.insert("operator".into(), json!(matrix_rows(&n)));
            out.text.push(format!("quotient: {:?}", matrix_rows(&n)));
            out.reports.push(report);
        }
        OperatorAction::Compose => {
            let n = ctx.required(args.nijenhuis.as_deref(), "--nijenhuis")?;
            out.reports.push(composition_condition(ctx.structure(), &ctx.rep()?, &n, &ctx.operator()?)?);
        }
        OperatorAction::Induced => {
            let g = ctx.g.as_ref().expect("sub-adjacent algebra computed above");
            let (induced, report) = induced_algebra_from_o_operator(g, &ctx.rep()?, &ctx.operator()?)?;
            let value = serde_json::to_value(InputDocument::from_algebra(&induced)).expect("serializable");
            push_fragment(&mut out, value);
            out.reports.push(report);
        }
    }
    Ok(out)
}

fn search(ctx: &OperatorContext, out: &mut Outcome) -> Result<()> {
    let bound = ctx.args.entries_bound;
    let d = ctx.l.dim();
    let found = match ctx.args.identity {
        Identity::Nijenhuis => {
            let s = ctx.structure();
            search_operators(d, d, bound, |m| is_nijenhuis(&s, m))?
        }
        Identity::RotaBaxter => {
            if ctx.g.is_some() {
                return Err(Error::KindMismatch("rota-baxter search is defined on left-symmetric Rinehart algebras only".into()));
            }
            let w = ctx.weight()?;
            search_operators(d, d, bound, |m| is_rota_baxter(&ctx.l, m, &w))?
        }
        Identity::OOperator => {
            let rep = ctx.rep()?;
            let test = o_operator_test(ctx.structure(), &rep)?;
            search_operators(d, rep.dim(), bound, test)?
        }
    };
    let mut report = Report::new("operator search");
    report.flag("search", true, Some(format!("{} operators found", found.len())));
    out.text.push(format!("{} operators with entries in [-{bound}, {bound}]:", found.len()));
    for m in &found {
        out.text.push(format!("  {:?}", matrix_rows(m)));
    }
    out.results.insert("operators".into(), json!(found.iter().map(matrix_rows).collect::<Vec<_>>()));
    out.reports.push(report);
    Ok(())
}
