//! O-operators with respect to a representation, their compatibility, and
//! the lifts to semidirect products.

use serde::Serialize;

use super::{check_nijenhuis, check_operator_shape, is_nijenhuis, is_rota_baxter, scan_a_linearity, Structure};
use crate::algebra::{AnchoredAlgebra, LieRinehartAlgebra, LsrAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{add_vec, linear_combination, q, sub_vec, unit_vec, Matrix, Rational};
use crate::report::{m, Report};
use crate::representation::{semidirect_lie, semidirect_lsr, RepKind, RepresentationBundle};
use crate::tensor::Bilinear;

/// The data entering the O-operator identity: `left` acts by the operator's
/// value on the second argument, `right` by its value on the first. For a
/// pair these are `rho` and `mu`; for a Lie module they are `theta` and `-theta`.
struct Context<'a> {
    mult: &'a Bilinear,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
    act_l: &'a [Matrix],
    act_m: &'a [Matrix],
    dm: usize,
}

impl<'a> Context<'a> {
    fn new(base: Structure<'a>, rep: &'a RepresentationBundle) -> Result<Self> {
        let (left, right) = match base {
            Structure::Lsr(l) => {
                if rep.kind() != RepKind::LsrPair {
                    return Err(Error::KindMismatch("a left-symmetric Rinehart algebra needs a (rho, mu) pair".into()));
                }
                rep.require_lsr(l)?;
                (rep.rho().to_vec(), rep.mu().unwrap_or_default().to_vec())
            }
            Structure::Lie(g) => {
                if rep.kind() != RepKind::LieModule {
                    return Err(Error::KindMismatch("a Lie-Rinehart algebra needs a Lie module".into()));
                }
                rep.require_lie(g)?;
                (rep.rho().to_vec(), rep.rho().iter().map(|t| -t).collect())
            }
        };
        let (mult, act_l): (&'a Bilinear, &'a [Matrix]) = match base {
            Structure::Lsr(l) => (l.product(), l.action()),
            Structure::Lie(g) => (g.bracket(), g.action()),
        };
        Ok(Context {
            mult,
            left,
            right,
            act_l,
            act_m: rep.module_action(),
            dm: rep.dim(),
        })
    }

    fn n(&self) -> usize {
        self.mult.out_dim()
    }

    fn check_shape(&self, field: &str, t: &Matrix) -> Result<()> {
        check_operator_shape(field, t, self.n(), self.dm)
    }

    fn left_at(&self, x: &[Rational]) -> Matrix {
        linear_combination(x, &self.left, self.dm, self.dm)
    }

    fn right_at(&self, x: &[Rational]) -> Matrix {
        linear_combination(x, &self.right, self.dm, self.dm)
    }

    /// `left(B u) v + right(B v) u`.
    fn inner(&self, b: &Matrix, s: usize, t: usize) -> Vec<Rational> {
        let (u, v) = (unit_vec(self.dm, s), unit_vec(self.dm, t));
        add_vec(&self.left_at(&b.column(s)).apply(&v), &self.right_at(&b.column(t)).apply(&u))
    }

    /// `(A u)(B v) - A(left(B u) v + right(B v) u)` for `u = m_s`, `v = m_t`.
    fn cross(&self, a: &Matrix, b: &Matrix, s: usize, t: usize) -> Vec<Rational> {
        sub_vec(&self.mult.apply(&a.column(s), &b.column(t)), &a.apply(&self.inner(b, s, t)))
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let dm = self.dm;
        (0..dm).flat_map(move |s| (0..dm).map(move |t| (s, t)))
    }

    fn report(&self, t: &Matrix) -> Report {
        let mut report = Report::new("O-operator");
        scan_a_linearity(&mut report, "A-linearity", t, self.act_m, self.act_l);
        report.scan("o-operator", self.pairs().map(|(s, u)| (vec![m(s), m(u)], self.cross(t, t, s, u))));
        report
    }

    fn is_o_operator(&self, t: &Matrix) -> bool {
        self.report(t).passed()
    }

    fn require(&self, what: &str, t: &Matrix) -> Result<()> {
        let r = self.report(t);
        if r.passed() {
            Ok(())
        } else {
            Err(Error::invalid(what, &r))
        }
    }

    fn cn1_residual(&self, t1: &Matrix, t2: &Matrix, s: usize, u: usize) -> Vec<Rational> {
        add_vec(&self.cross(t1, t2, s, u), &self.cross(t2, t1, s, u))
    }

    fn compatible(&self, t1: &Matrix, t2: &Matrix) -> bool {
        self.pairs().all(|(s, u)| crate::linalg::is_zero_vec(&self.cn1_residual(t1, t2, s, u)))
    }
}

/// O-operator check: `T: M -> L` is A-linear and
/// `T(u) T(v) = T(left(T u) v + right(T v) u)`.
pub fn check_o_operator(base: Structure, rep: &RepresentationBundle, t: &Matrix) -> Result<Report> {
    let ctx = Context::new(base, rep)?;
    ctx.check_shape("operator", t)?;
    Ok(ctx.report(t))
}

/// A reusable O-operator test for one base and representation, validating
/// them once; used by exhaustive searches.
pub fn o_operator_test<'a>(base: Structure<'a>, rep: &'a RepresentationBundle) -> Result<impl Fn(&Matrix) -> bool + Sync + 'a> {
    let ctx = Context::new(base, rep)?;
    Ok(move |t: &Matrix| ctx.check_shape("operator", t).is_ok() && ctx.is_o_operator(t))
}

/// Compatibility of two O-operators: the mixed identity, its equivalence
/// with `T1 + T2` being an O-operator, and, when compatible, a few linear
/// combinations.
pub fn o_operator_compatibility(base: Structure, rep: &RepresentationBundle, t1: &Matrix, t2: &Matrix) -> Result<Report> {
    let ctx = Context::new(base, rep)?;
    ctx.check_shape("first operator", t1)?;
    ctx.check_shape("second operator", t2)?;
    ctx.require("first operator", t1)?;
    ctx.require("second operator", t2)?;
    let mut report = Report::new("compatible O-operators");
    let ok = report.scan("compatibility", ctx.pairs().map(|(s, u)| (vec![m(s), m(u)], ctx.cn1_residual(t1, t2, s, u))));
    report.flag("sum-equivalence", ok == ctx.is_o_operator(&(t1 + t2)), None);
    if ok {
        for (c1, c2) in [(1, 1), (2, 3), (-1, 1)] {
            let comb = &t1.scale(&q(c1)) + &t2.scale(&q(c2));
            report.flag(format!("combination {c1},{c2}"), ctx.is_o_operator(&comb), None);
        }
    }
    Ok(report)
}

/// `N = T1 T2^{-1}` for compatible O-operators with `T2` invertible; the
/// report checks that `N` is Nijenhuis on the base.
pub fn quotient_nijenhuis(
    base: Structure,
    rep: &RepresentationBundle,
    t1: &Matrix,
    t2: &Matrix,
) -> Result<(Matrix, Report)> {
    let ctx = Context::new(base, rep)?;
    ctx.check_shape("first operator", t1)?;
    ctx.check_shape("second operator", t2)?;
    ctx.require("first operator", t1)?;
    ctx.require("second operator", t2)?;
    let inv = t2.inverse().ok_or_else(|| Error::Precondition("second operator is not invertible".into()))?;
    if !ctx.compatible(t1, t2) {
        return Err(Error::Precondition("operators are not compatible".into()));
    }
    let n = t1 * &inv;
    let mut report = check_nijenhuis(&base, &n)?;
    report.subject = "quotient of compatible O-operators".into();
    Ok((n, report))
}

/// For an O-operator `T` and a Nijenhuis operator `N`: the residual of
/// `N(NTu.Tv + Tu.NTv) = N(T(left(NTu)v + right(NTv)u) + NT(left(Tu)v + right(Tv)u))`,
/// its equivalence with `N T` being an O-operator, and for invertible `N`
/// the compatibility of `T` and `N T`.
pub fn composition_condition(base: Structure, rep: &RepresentationBundle, n: &Matrix, t: &Matrix) -> Result<Report> {
    let ctx = Context::new(base, rep)?;
    ctx.check_shape("operator", t)?;
    check_operator_shape("Nijenhuis operator", n, ctx.n(), ctx.n())?;
    ctx.require("O-operator", t)?;
    let nij = check_nijenhuis(&base, n)?;
    if !nij.passed() {
        return Err(Error::invalid("Nijenhuis operator", &nij));
    }
    let nt = n * t;
    let mut report = Report::new("composition with a Nijenhuis operator");
    let cases = ctx.pairs().map(|(s, u)| {
        let lhs = add_vec(&ctx.mult.apply(&nt.column(s), &t.column(u)), &ctx.mult.apply(&t.column(s), &nt.column(u)));
        let rhs = add_vec(&t.apply(&ctx.inner(&nt, s, u)), &nt.apply(&ctx.inner(t, s, u)));
        (vec![m(s), m(u)], n.apply(&sub_vec(&lhs, &rhs)))
    });
    let ok = report.scan("composition-identity", cases);
    let composite = ctx.is_o_operator(&nt);
    report.flag("composite-equivalence", ok == composite, Some(format!("composite is O-operator: {composite}")));
    if composite && n.is_invertible() {
        report.flag("compatible-with-composite", ctx.compatible(t, &nt), None);
    }
    Ok(report)
}

/// The left-symmetric Rinehart algebra `(M, A, u.v = theta(T u) v, anchor o T)`
/// induced by an O-operator on a Lie–Rinehart algebra. The report carries
/// the validation of the result and the check that `T` maps the
/// sub-adjacent bracket to the bracket of the base.
pub fn induced_algebra_from_o_operator(
    g: &LieRinehartAlgebra,
    rep: &RepresentationBundle,
    t: &Matrix,
) -> Result<(LsrAlgebra, Report)> {
    let ctx = Context::new(Structure::Lie(g), rep)?;
    ctx.check_shape("operator", t)?;
    ctx.require("O-operator", t)?;
    let dm = rep.dim();
    let product = Bilinear::from_fn(dm, dm, dm, |s, u| rep.rho_at(&t.column(s)).column(u));
    let anchor = (0..dm).map(|s| g.anchor_at(&t.column(s))).collect();
    let induced = LsrAlgebra::new(g.base().clone(), rep.module_action().to_vec(), product, anchor)?;
    let mut report = Report::new("algebra induced by an O-operator");
    report.absorb("", induced.validate());
    let bracket = induced.product().commutator();
    let cases = ctx.pairs().map(|(s, u)| {
        let r = sub_vec(&t.apply(bracket.basis_product(s, u)), &g.bracket().apply(&t.column(s), &t.column(u)));
        (vec![m(s), m(u)], r)
    });
    report.scan("bracket-intertwining", cases);
    Ok((induced, report))
}

/// Verdicts relating an O-operator to operators on the semidirect product.
/// For a Lie–Rinehart base only the nilpotent lift is defined.
#[derive(Debug, Clone, Serialize)]
pub struct LiftReport {
    pub o_operator: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rota_baxter_lift: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idempotent_lift: Option<bool>,
    pub nilpotent_lift: bool,
    pub report: Report,
}

/// Lifts of `T: M -> L` to `L + M`:
/// `R = [[0, T], [0, -weight]]` as a Rota–Baxter operator of the given weight,
/// `[[0, T], [0, Id]]` and `[[0, T], [0, 0]]` as Nijenhuis operators.
/// Each lift satisfies its identity exactly when `T` is an O-operator.
pub fn lift_to_semidirect(base: Structure, rep: &RepresentationBundle, t: &Matrix, weight: &Rational) -> Result<LiftReport> {
    let ctx = Context::new(base, rep)?;
    ctx.check_shape("operator", t)?;
    let (n, dm) = (ctx.n(), ctx.dm);
    let o_operator = ctx.is_o_operator(t);
    let lift = |corner: Matrix| Matrix::block(&[n, dm], &[n, dm], &[&[None, Some(t)], &[None, Some(&corner)]]);
    let nilpotent = lift(Matrix::zeros(dm, dm));
    let mut report = Report::new("lifts to the semidirect product");
    let lifted = match base {
        Structure::Lsr(l) => {
            let s = semidirect_lsr(l, rep)?;
            let rb = is_rota_baxter(&s, &lift(Matrix::identity(dm).scale(&-weight)), weight);
            let idem = is_nijenhuis(&s, &lift(Matrix::identity(dm)));
            let nil = is_nijenhuis(&s, &nilpotent);
            report.flag("rota-baxter-lift", rb == o_operator, Some(format!("lift={rb}")));
            report.flag("idempotent-lift", idem == o_operator, Some(format!("lift={idem}")));
            report.flag("nilpotent-lift", nil == o_operator, Some(format!("lift={nil}")));
            LiftReport { o_operator, rota_baxter_lift: Some(rb), idempotent_lift: Some(idem), nilpotent_lift: nil, report }
        }
        Structure::Lie(g) => {
            let s = semidirect_lie(g, rep)?;
            let nil = is_nijenhuis(&s, &nilpotent);
            report.flag("nilpotent-lift", nil == o_operator, Some(format!("lift={nil}")));
            LiftReport { o_operator, rota_baxter_lift: None, idempotent_lift: None, nilpotent_lift: nil, report }
        }
    };
    Ok(lifted)
}
