//! Representations: pairs `(rho, mu)` for left-symmetric Rinehart algebras
//! and modules `theta` for Lie–Rinehart algebras.

use serde::{Deserialize, Serialize};

use crate::algebra::{check_module, check_shapes, column_cases, AnchoredAlgebra, LieRinehartAlgebra, LsrAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{linear_combination, Matrix};
use crate::report::{a, e, m, Report};
use crate::tensor::Bilinear;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepKind {
    LsrPair,
    LieModule,
}

/// A module `M` with an A-action and operators indexed by the basis of `L`.
/// For a Lie module `rho` holds `theta` and `mu` is absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationBundle {
    dim: usize,
    module_action: Vec<Matrix>,
    rho: Vec<Matrix>,
    mu: Option<Vec<Matrix>>,
}

impl RepresentationBundle {
    pub fn lsr_pair(dim: usize, module_action: Vec<Matrix>, rho: Vec<Matrix>, mu: Vec<Matrix>) -> Result<Self> {
        check_shapes("representation.module_action", &module_action, module_action.len(), dim, dim)?;
        check_shapes("representation.rho", &rho, rho.len(), dim, dim)?;
        check_shapes("representation.mu", &mu, rho.len(), dim, dim)?;
        Ok(RepresentationBundle { dim, module_action, rho, mu: Some(mu) })
    }

    pub fn lie_module(dim: usize, module_action: Vec<Matrix>, theta: Vec<Matrix>) -> Result<Self> {
        check_shapes("representation.module_action", &module_action, module_action.len(), dim, dim)?;
        check_shapes("representation.theta", &theta, theta.len(), dim, dim)?;
        Ok(RepresentationBundle { dim, module_action, rho: theta, mu: None })
    }

    /// Zero operators on `M`, for either kind.
    pub fn zero(kind: RepKind, dim_l: usize, module_action: Vec<Matrix>) -> Self {
        let dim = module_action.first().map_or(0, Matrix::rows);
        let zeros = vec![Matrix::zeros(dim, dim); dim_l];
        let mu = (kind == RepKind::LsrPair).then(|| zeros.clone());
        RepresentationBundle { dim, module_action, rho: zeros, mu }
    }

    pub fn kind(&self) -> RepKind {
        if self.mu.is_some() {
            RepKind::LsrPair
        } else {
            RepKind::LieModule
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn module_action(&self) -> &[Matrix] {
        &self.module_action
    }

    /// `rho` for a pair, `theta` for a Lie module.
    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    pub fn mu(&self) -> Option<&[Matrix]> {
        self.mu.as_deref()
    }

    fn mu_or_err(&self) -> Result<&[Matrix]> {
        self.mu().ok_or_else(|| Error::KindMismatch("expected a (rho, mu) pair, found a Lie module".into()))
    }

    fn expect_lie(&self) -> Result<()> {
        match self.kind() {
            RepKind::LieModule => Ok(()),
            RepKind::LsrPair => Err(Error::KindMismatch("expected a Lie module, found a (rho, mu) pair".into())),
        }
    }

    fn check_fits<S: AnchoredAlgebra>(&self, s: &S) -> Result<()> {
        check_shapes("representation.module_action", &self.module_action, s.dim_a(), self.dim, self.dim)?;
        check_shapes("representation.rho", &self.rho, s.dim(), self.dim, self.dim)
    }

    /// Matrix of `a` acting on `M`.
    pub fn act(&self, coeffs: &[crate::linalg::Rational]) -> Matrix {
        linear_combination(coeffs, &self.module_action, self.dim, self.dim)
    }

    pub fn rho_at(&self, x: &[crate::linalg::Rational]) -> Matrix {
        linear_combination(x, &self.rho, self.dim, self.dim)
    }

    pub fn validate_lsr(&self, l: &LsrAlgebra) -> Result<Report> {
        let mu = self.mu_or_err()?;
        self.check_fits(l)?;
        let mut report = Report::new("representation");
        check_module(&mut report, l.base(), &self.module_action, m);
        check_lie_action(&mut report, l, &l.product().commutator(), &self.module_action, &self.rho, "rho");
        let (n, da) = (l.dim(), l.dim_a());
        let mu_at = |x: &[crate::linalg::Rational]| linear_combination(x, mu, self.dim, self.dim);
        let cases = (0..da).flat_map(|p| (0..n).map(move |i| (p, i))).flat_map(|(p, i)| {
            let lhs = mu_at(&l.action()[p].column(i));
            column_cases(vec![a(p), e(i)], &lhs - &(&self.module_action[p] * &mu[i]), m)
        });
        report.scan("mu-A-linearity", cases);
        let cases = (0..da).flat_map(|p| (0..n).map(move |i| (p, i))).flat_map(|(p, i)| {
            column_cases(vec![a(p), e(i)], self.module_action[p].commutator(&mu[i]), m)
        });
        report.scan("mu-module-linearity", cases);
        let p = l.product();
        let cases = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).flat_map(|(i, j)| {
            let lhs = self.rho[i].commutator(&mu[j]);
            let rhs = &mu_at(p.basis_product(i, j)) - &(&mu[j] * &mu[i]);
            column_cases(vec![e(i), e(j)], &lhs - &rhs, m)
        });
        report.scan("mixed-compatibility", cases);
        Ok(report)
    }

    pub fn validate_lie(&self, g: &LieRinehartAlgebra) -> Result<Report> {
        self.expect_lie()?;
        self.check_fits(g)?;
        let mut report = Report::new("Lie-Rinehart module");
        check_module(&mut report, g.base(), &self.module_action, m);
        check_lie_action(&mut report, g, g.bracket(), &self.module_action, &self.rho, "theta");
        Ok(report)
    }

    pub(crate) fn require_lsr(&self, l: &LsrAlgebra) -> Result<()> {
        let r = self.validate_lsr(l)?;
        if r.passed() {
            Ok(())
        } else {
            Err(Error::invalid("representation", &r))
        }
    }

    pub(crate) fn require_lie(&self, g: &LieRinehartAlgebra) -> Result<()> {
        let r = self.validate_lie(g)?;
        if r.passed() {
            Ok(())
        } else {
            Err(Error::invalid("Lie-Rinehart module", &r))
        }
    }

    /// `theta = rho - mu`, a module over the sub-adjacent Lie–Rinehart algebra.
    pub fn sub_adjacent_module(&self) -> Result<Self> {
        let mu = self.mu_or_err()?;
        let theta = self.rho.iter().zip(mu).map(|(r, u)| r - u).collect();
        Ok(RepresentationBundle { dim: self.dim, module_action: self.module_action.clone(), rho: theta, mu: None })
    }

    /// `(rho - mu, -mu)` on the same module.
    pub fn shifted(&self) -> Result<Self> {
        let mu = self.mu_or_err()?;
        let rho = self.rho.iter().zip(mu).map(|(r, u)| r - u).collect();
        let mu = mu.iter().map(|u| -u).collect();
        Ok(RepresentationBundle { dim: self.dim, module_action: self.module_action.clone(), rho, mu: Some(mu) })
    }

    /// `(rho*, mu*)` on the dual space: `rho*(x) = -rho(x)^T`, `mu*(x) = -mu(x)^T`,
    /// A acting by transposes.
    pub fn contragredient(&self) -> Result<Self> {
        let mu = self.mu_or_err()?;
        let star = |v: &[Matrix]| v.iter().map(|x| -&x.transpose()).collect::<Vec<_>>();
        Ok(RepresentationBundle {
            dim: self.dim,
            module_action: self.module_action.iter().map(Matrix::transpose).collect(),
            rho: star(&self.rho),
            mu: Some(star(mu)),
        })
    }

    /// The dual representation `(rho* - mu*, -mu*)` on `M*`.
    pub fn dual(&self) -> Result<Self> {
        self.contragredient()?.shifted()
    }

    /// Direct sum of two bundles of the same kind over the same structure.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.kind() != other.kind() {
            return Err(Error::KindMismatch("direct sum of bundles of different kinds".into()));
        }
        let (d1, d2) = (self.dim, other.dim);
        let sum = |x: &[Matrix], y: &[Matrix]| -> Vec<Matrix> {
            x.iter().zip(y).map(|(p, q)| Matrix::block(&[d1, d2], &[d1, d2], &[&[Some(p), None], &[None, Some(q)]])).collect()
        };
        Ok(RepresentationBundle {
            dim: d1 + d2,
            module_action: sum(&self.module_action, &other.module_action),
            rho: sum(&self.rho, &other.rho),
            mu: self.mu.as_ref().zip(other.mu.as_ref()).map(|(x, y)| sum(x, y)),
        })
    }

    /// Transport along an invertible change of basis `p` of `M`: every
    /// operator `X` becomes `p^{-1} X p`.
    pub fn conjugate(&self, p: &Matrix) -> Result<Self> {
        let inv = p.inverse().ok_or_else(|| Error::Precondition("change of basis is singular".into()))?;
        let conj = |v: &[Matrix]| v.iter().map(|x| &(&inv * x) * p).collect::<Vec<_>>();
        Ok(RepresentationBundle {
            dim: self.dim,
            module_action: conj(&self.module_action),
            rho: conj(&self.rho),
            mu: self.mu.as_deref().map(conj),
        })
    }
}

/// Checks that `ops` is a representation of `bracket`, is A-linear in the
/// algebra argument and satisfies the Leibniz rule against the anchor.
fn check_lie_action<S: AnchoredAlgebra>(
    report: &mut Report,
    s: &S,
    bracket: &Bilinear,
    module_action: &[Matrix],
    ops: &[Matrix],
    name: &str,
) {
    let (n, da) = (s.dim(), s.dim_a());
    let dm = module_action.first().map_or(0, Matrix::rows);
    let at = |x: &[crate::linalg::Rational]| linear_combination(x, ops, dm, dm);
    let cases = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).flat_map(|(i, j)| {
        let lhs = at(bracket.basis_product(i, j));
        column_cases(vec![e(i), e(j)], &lhs - &ops[i].commutator(&ops[j]), m)
    });
    report.scan(format!("{name}-representation"), cases);
    let cases = (0..da).flat_map(|p| (0..n).map(move |i| (p, i))).flat_map(|(p, i)| {
        let lhs = at(&s.action()[p].column(i));
        column_cases(vec![a(p), e(i)], &lhs - &(&module_action[p] * &ops[i]), m)
    });
    report.scan(format!("{name}-A-linearity"), cases);
    // op(x)(a m) - a op(x) m - anchor(x)(a) m
    let cases = (0..n).flat_map(|i| (0..da).map(move |p| (i, p))).flat_map(|(i, p)| {
        let coeff = s.anchor()[i].column(p);
        let anchor_term = linear_combination(&coeff, module_action, dm, dm);
        column_cases(vec![e(i), a(p)], &ops[i].commutator(&module_action[p]) - &anchor_term, m)
    });
    report.scan(format!("{name}-leibniz"), cases);
}

/// `(L; ad^L, ad^R)` with `M = L`. The report is a full validation; it can
/// fail when the anchor is nonzero, since right multiplication need not be
/// A-linear then.
pub fn adjoint_rep(l: &LsrAlgebra) -> (RepresentationBundle, Report) {
    let n = l.dim();
    let p = l.product();
    let rep = RepresentationBundle {
        dim: n,
        module_action: l.action().to_vec(),
        rho: (0..n).map(|i| p.left_mult(i)).collect(),
        mu: Some((0..n).map(|j| p.right_mult(j)).collect()),
    };
    let mut report = rep.validate_lsr(l).expect("adjoint bundle has matching shapes");
    report.subject = "adjoint representation".into();
    (rep, report)
}

/// The adjoint module `theta(x) = [x, -]` of a Lie–Rinehart algebra.
pub fn lie_adjoint(g: &LieRinehartAlgebra) -> RepresentationBundle {
    let n = g.dim();
    RepresentationBundle {
        dim: n,
        module_action: g.action().to_vec(),
        rho: (0..n).map(|i| g.bracket().left_mult(i)).collect(),
        mu: None,
    }
}

fn semidirect_tensor(mult: &Bilinear, left: &[Matrix], right: &[Matrix], dm: usize) -> Bilinear {
    let n = mult.out_dim();
    let mut out = Bilinear::square(n + dm);
    for (i, j, k, v) in mult.nonzero_entries() {
        out.set(i, j, k, v);
    }
    for i in 0..n {
        for s in 0..dm {
            for r in 0..dm {
                // x_i * m_s has M-part left(x_i) m_s; m_s * x_i has M-part right(x_i) m_s.
                out.set(i, n + s, n + r, left[i].get(r, s).clone());
                out.set(n + s, i, n + r, right[i].get(r, s).clone());
            }
        }
    }
    out
}

fn semidirect_data<S: AnchoredAlgebra>(s: &S, rep: &RepresentationBundle) -> (Vec<Matrix>, Vec<Matrix>) {
    let (n, dm, da) = (s.dim(), rep.dim, s.dim_a());
    let action = (0..da)
        .map(|p| Matrix::block(&[n, dm], &[n, dm], &[&[Some(&s.action()[p]), None], &[None, Some(&rep.module_action[p])]]))
        .collect();
    let mut anchor = s.anchor().to_vec();
    anchor.extend(std::iter::repeat_n(Matrix::zeros(da, da), dm));
    (action, anchor)
}

pub(crate) fn semidirect_lsr_unchecked(l: &LsrAlgebra, rep: &RepresentationBundle) -> Result<LsrAlgebra> {
    let mu = rep.mu_or_err()?;
    rep.check_fits(l)?;
    let product = semidirect_tensor(l.product(), &rep.rho, mu, rep.dim);
    let (action, anchor) = semidirect_data(l, rep);
    LsrAlgebra::new(l.base().clone(), action, product, anchor)
}

pub(crate) fn semidirect_lie_unchecked(g: &LieRinehartAlgebra, rep: &RepresentationBundle) -> Result<LieRinehartAlgebra> {
    rep.expect_lie()?;
    rep.check_fits(g)?;
    let neg: Vec<Matrix> = rep.rho.iter().map(|t| -t).collect();
    let bracket = semidirect_tensor(g.bracket(), &rep.rho, &neg, rep.dim);
    let (action, anchor) = semidirect_data(g, rep);
    LieRinehartAlgebra::new(g.base().clone(), action, bracket, anchor)
}

/// `L + M` with `(x + m)(y + n) = x.y + rho(x) n + mu(y) m`.
pub fn semidirect_lsr(l: &LsrAlgebra, rep: &RepresentationBundle) -> Result<LsrAlgebra> {
    l.require_valid()?;
    rep.require_lsr(l)?;
    semidirect_lsr_unchecked(l, rep)
}

/// `L + M` with `[x + m, y + n] = [x, y] + theta(x) n - theta(y) m`.
pub fn semidirect_lie(g: &LieRinehartAlgebra, rep: &RepresentationBundle) -> Result<LieRinehartAlgebra> {
    g.require_valid()?;
    rep.require_lie(g)?;
    semidirect_lie_unchecked(g, rep)
}

/// Verdicts of the conditions tied to the dual representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualConditions {
    /// `(M; rho - mu, -mu)` is a representation.
    pub shifted_pair_valid: bool,
    /// `(M*; rho*, mu*)` is a representation.
    pub contragredient_valid: bool,
    /// `mu(x) mu(y) = mu(y) mu(x)` for all `x, y`.
    pub mu_commute: bool,
    /// `mu(x) mu(y) = -mu(y) mu(x)` for all `x, y`.
    pub mu_anticommute: bool,
}

#[derive(Debug, Clone)]
pub struct DerivedReps {
    pub sub_adjacent_module: RepresentationBundle,
    pub dual_rep: RepresentationBundle,
    pub conditions: DualConditions,
    pub report: Report,
}

/// The module `rho - mu` over the sub-adjacent algebra, the dual
/// representation, and the conditions relating `mu` to dual pairs.
///
/// Both `(M; rho - mu, -mu)` and `(M*; rho*, mu*)` turn out to be
/// representations exactly when the `mu(x)` pairwise anticommute (the second
/// also needs the anchor to act trivially), so the report asserts those
/// equivalences and records the commutation verdict separately.
pub fn derived_reps(l: &LsrAlgebra, rep: &RepresentationBundle) -> Result<DerivedReps> {
    l.require_valid()?;
    rep.require_lsr(l)?;
    let mu = rep.mu_or_err()?;
    let lie = l.sub_adjacent_unchecked();
    let theta = rep.sub_adjacent_module()?;
    let dual_rep = rep.dual()?;
    let mut report = Report::new("derived representations");
    report.absorb("sub-adjacent module: ", theta.validate_lie(&lie)?);
    report.absorb("dual representation: ", dual_rep.validate_lsr(l)?);

    let n = l.dim();
    let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    let conditions = DualConditions {
        shifted_pair_valid: rep.shifted()?.validate_lsr(l)?.passed(),
        contragredient_valid: rep.contragredient()?.validate_lsr(l)?.passed(),
        mu_commute: pairs().all(|(i, j)| mu[i].commutator(&mu[j]).is_zero()),
        mu_anticommute: pairs().all(|(i, j)| (&(&mu[i] * &mu[j]) + &(&mu[j] * &mu[i])).is_zero()),
    };
    report.flag(
        "shifted-pair-iff-anticommutation",
        conditions.shifted_pair_valid == conditions.mu_anticommute,
        None,
    );
    if l.anchor().iter().all(Matrix::is_zero) {
        report.flag(
            "contragredient-iff-anticommutation",
            conditions.contragredient_valid == conditions.mu_anticommute,
            None,
        );
    } else {
        report.note("anchor is nonzero: the contragredient pair is not A-linear in general, equivalence not asserted");
    }
    if conditions.mu_commute != conditions.shifted_pair_valid {
        report.note(format!(
            "mu commutation is {} while (M; rho-mu, -mu) validity is {}; validity follows anticommutation",
            conditions.mu_commute, conditions.shifted_pair_valid
        ));
    }

    let lhs = semidirect_lsr_unchecked(l, rep)?.sub_adjacent_unchecked();
    let rhs = semidirect_lie_unchecked(&lie, &theta)?;
    report.flag("sub-adjacent-of-semidirect", lhs == rhs, None);
    Ok(DerivedReps { sub_adjacent_module: theta, dual_rep, conditions, report })
}
