//! Nijenhuis, Rota–Baxter and O-operators.
//!
//! All operator identities are checked on basis pairs and include the
//! A-linearity requirement, so a verdict is the conjunction of both.

mod o_operator;

pub use o_operator::{
    check_o_operator, composition_condition, induced_algebra_from_o_operator, lift_to_semidirect,
    o_operator_compatibility, o_operator_test, quotient_nijenhuis, LiftReport,
};

use rayon::prelude::*;

use crate::algebra::{check_morphism, column_cases, AnchoredAlgebra, LieRinehartAlgebra, LsrAlgebra, MorphismPair, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{add_vec, linear_combination, q, sub_vec, unit_vec, Matrix, Rational};
use crate::report::{a, e, Report};
use crate::tensor::Bilinear;

/// Either kind of anchored algebra, for operations defined on both.
#[derive(Debug, Clone, Copy)]
pub enum Structure<'a> {
    Lsr(&'a LsrAlgebra),
    Lie(&'a LieRinehartAlgebra),
}

impl AnchoredAlgebra for Structure<'_> {
    fn base(&self) -> &StructureAlgebra {
        match self {
            Structure::Lsr(l) => l.base(),
            Structure::Lie(g) => g.base(),
        }
    }
    fn action(&self) -> &[Matrix] {
        match self {
            Structure::Lsr(l) => l.action(),
            Structure::Lie(g) => g.action(),
        }
    }
    fn multiplication(&self) -> &Bilinear {
        match self {
            Structure::Lsr(l) => l.multiplication(),
            Structure::Lie(g) => g.multiplication(),
        }
    }
    fn anchor(&self) -> &[Matrix] {
        match self {
            Structure::Lsr(l) => l.anchor(),
            Structure::Lie(g) => g.anchor(),
        }
    }
}

pub(crate) fn check_operator_shape(field: &str, op: &Matrix, rows: usize, cols: usize) -> Result<()> {
    if (op.rows(), op.cols()) != (rows, cols) {
        return Err(Error::dimension(field, format!("{rows}x{cols}"), format!("{}x{}", op.rows(), op.cols())));
    }
    Ok(())
}

/// `op(a x) = a op(x)` for `op: M -> L`, given both A-actions.
pub(crate) fn scan_a_linearity(report: &mut Report, name: &str, op: &Matrix, act_src: &[Matrix], act_dst: &[Matrix]) -> bool {
    let cases = (0..act_src.len()).flat_map(|p| column_cases(vec![a(p)], &(op * &act_src[p]) - &(&act_dst[p] * op), e));
    report.scan(name, cases)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

/// `N(x) N(y) - N(N(x) y + x N(y)) + N^2(x y)` for basis `x = e_i`, `y = e_j`.
pub(crate) fn nijenhuis_residual(mult: &Bilinear, n: &Matrix, n2: &Matrix, i: usize, j: usize) -> Vec<Rational> {
    let (ni, nj) = (n.column(i), n.column(j));
    let dim = mult.out_dim();
    let inner = add_vec(&mult.apply(&ni, &unit_vec(dim, j)), &mult.apply(&unit_vec(dim, i), &nj));
    add_vec(&sub_vec(&mult.apply(&ni, &nj), &n.apply(&inner)), &n2.apply(mult.basis_product(i, j)))
}

/// Nijenhuis check on a left-symmetric Rinehart or Lie–Rinehart algebra.
pub fn check_nijenhuis<S: AnchoredAlgebra + ?Sized>(s: &S, n: &Matrix) -> Result<Report> {
    let d = s.dim();
    check_operator_shape("operator", n, d, d)?;
    let mut report = Report::new("Nijenhuis operator");
    scan_a_linearity(&mut report, "A-linearity", n, s.action(), s.action());
    let n2 = n * n;
    let mult = s.multiplication();
    report.scan("nijenhuis", pairs(d).map(|(i, j)| (vec![e(i), e(j)], nijenhuis_residual(mult, n, &n2, i, j))));
    Ok(report)
}

pub fn is_nijenhuis<S: AnchoredAlgebra + ?Sized>(s: &S, n: &Matrix) -> bool {
    check_nijenhuis(s, n).map(|r| r.passed()).unwrap_or(false)
}

fn require_nijenhuis<S: AnchoredAlgebra + ?Sized>(s: &S, n: &Matrix) -> Result<()> {
    let r = check_nijenhuis(s, n)?;
    if r.passed() {
        Ok(())
    } else {
        Err(Error::invalid("Nijenhuis operator", &r))
    }
}

/// Integer power of a square matrix; negative powers need an invertible matrix.
pub fn matrix_power(n: &Matrix, k: i32) -> Result<Matrix> {
    if k >= 0 {
        return Ok(n.pow(k as u32));
    }
    let inv = n.inverse().ok_or_else(|| Error::Precondition("negative power of a singular operator".into()))?;
    Ok(inv.pow(k.unsigned_abs()))
}

/// `N^j(x).N^k(y) - N^k(N^j(x).y) - N^j(x.N^k(y)) + N^{j+k}(x.y)` on basis pairs.
pub fn nijenhuis_power_identity<S: AnchoredAlgebra + ?Sized>(s: &S, n: &Matrix, j: i32, k: i32) -> Result<Report> {
    let d = s.dim();
    check_operator_shape("operator", n, d, d)?;
    let (nj, nk, njk) = (matrix_power(n, j)?, matrix_power(n, k)?, matrix_power(n, j + k)?);
    let mult = s.multiplication();
    let mut report = Report::new(format!("power identity j={j} k={k}"));
    let cases = pairs(d).map(|(x, y)| {
        let (ex, ey) = (unit_vec(d, x), unit_vec(d, y));
        let (jx, ky) = (nj.apply(&ex), nk.apply(&ey));
        let r = sub_vec(&mult.apply(&jx, &ky), &nk.apply(&mult.apply(&jx, &ey)));
        let r = sub_vec(&r, &nj.apply(&mult.apply(&ex, &ky)));
        (vec![e(x), e(y)], add_vec(&r, &njk.apply(mult.basis_product(x, y))))
    });
    report.scan("power-identity", cases);
    Ok(report)
}

/// `x ._N y = x.N(y) + N(x).y - N(x.y)`. For the adjoint pair this is also
/// the coboundary of `N`.
pub fn deformed_product(mult: &Bilinear, n: &Matrix) -> Bilinear {
    let d = mult.out_dim();
    let id = Matrix::identity(d);
    mult.compose(&id, &id, n).add(&mult.compose(&id, n, &id)).sub(&mult.compose(n, &id, &id))
}

/// Anchor precomposed with `N`.
fn deformed_anchor(l: &LsrAlgebra, n: &Matrix) -> Vec<Matrix> {
    (0..l.dim()).map(|i| l.anchor_at(&n.column(i))).collect()
}

/// `(L, A, ._N, l o N)`, without checking that `N` is Nijenhuis.
pub fn deformed_algebra(l: &LsrAlgebra, n: &Matrix) -> Result<LsrAlgebra> {
    check_operator_shape("operator", n, l.dim(), l.dim())?;
    l.with_product_and_anchor(deformed_product(l.product(), n), deformed_anchor(l, n))
}

/// The algebras deformed by `N^k` for `k = 0..=k_max`, with the iterate
/// properties checked for every `k + l <= k_max`: each deformed algebra is
/// valid, `N^l` is Nijenhuis on the `k`-th one, deforming twice agrees with
/// deforming once by the product power, and `N^l` maps the `(k+l)`-th
/// algebra homomorphically onto the `k`-th.
pub fn deformed_structures(l: &LsrAlgebra, n: &Matrix, k_max: u32) -> Result<(Vec<LsrAlgebra>, Report)> {
    require_nijenhuis(l, n)?;
    let algebras: Vec<LsrAlgebra> = (0..=k_max).map(|k| deformed_algebra(l, &n.pow(k))).collect::<Result<_>>()?;
    let mut report = Report::new("deformed structures");
    for (k, s) in algebras.iter().enumerate() {
        report.flag(format!("valid k={k}"), s.validate().passed(), None);
    }
    let id_a = Matrix::identity(l.dim_a());
    for k in 0..=k_max as usize {
        for p in 1..=(k_max as usize - k) {
            let np = n.pow(p as u32);
            report.flag(format!("nijenhuis N^{p} on k={k}"), is_nijenhuis(&algebras[k], &np), None);
            let twice = deformed_algebra(&algebras[k], &np)?;
            report.flag(format!("iterate k={k} l={p}"), twice == algebras[k + p], None);
            let fg = MorphismPair { f: np, g: id_a.clone() };
            let hom = check_morphism(&algebras[k + p], &algebras[k], &fg)?.passed();
            report.flag(format!("homomorphism k={k} l={p}"), hom, None);
        }
    }
    Ok((algebras, report))
}

/// `sum_i coeffs[i] N^(lowest + i)`, checked to be Nijenhuis. A negative
/// `lowest` needs `N` invertible.
pub fn polynomial_nijenhuis<S: AnchoredAlgebra + ?Sized>(
    s: &S,
    n: &Matrix,
    lowest: i32,
    coeffs: &[Rational],
) -> Result<(Matrix, Report)> {
    require_nijenhuis(s, n)?;
    let d = s.dim();
    let mut p = Matrix::zeros(d, d);
    for (i, c) in coeffs.iter().enumerate() {
        p = &p + &matrix_power(n, lowest + i as i32)?.scale(c);
    }
    let mut report = check_nijenhuis(s, &p)?;
    report.subject = "polynomial in a Nijenhuis operator".into();
    Ok((p, report))
}

/// `R(x) R(y) - R(R(x) y + x R(y)) - weight R(x y)` on basis pairs, plus A-linearity.
fn rota_baxter_report<S: AnchoredAlgebra + ?Sized>(s: &S, r: &Matrix, weight: &Rational) -> Report {
    let d = s.dim();
    let mult = s.multiplication();
    let mut report = Report::new(format!("Rota-Baxter operator of weight {weight}"));
    scan_a_linearity(&mut report, "A-linearity", r, s.action(), s.action());
    let cases = pairs(d).map(|(i, j)| {
        let (ri, rj) = (r.column(i), r.column(j));
        let inner = add_vec(&mult.apply(&ri, &unit_vec(d, j)), &mult.apply(&unit_vec(d, i), &rj));
        let res = sub_vec(&mult.apply(&ri, &rj), &r.apply(&inner));
        let res = sub_vec(&res, &crate::linalg::scale_vec(weight, &r.apply(mult.basis_product(i, j))));
        (vec![e(i), e(j)], res)
    });
    report.scan("rota-baxter", cases);
    report
}

pub fn is_rota_baxter<S: AnchoredAlgebra + ?Sized>(s: &S, r: &Matrix, weight: &Rational) -> bool {
    rota_baxter_report(s, r, weight).passed()
}

/// Rota–Baxter check with the Nijenhuis bridges: when `R^2 = Id`, `R` is
/// Nijenhuis iff `R - Id` has weight 2 iff `R + Id` has weight -2; when
/// `R^2 = 0`, Nijenhuis iff weight 0; when `R^2 = R`, Nijenhuis iff weight -1.
/// The bridge checks are added to the report only when their hypothesis holds.
pub fn check_rota_baxter(l: &LsrAlgebra, r: &Matrix, weight: &Rational) -> Result<Report> {
    let d = l.dim();
    check_operator_shape("operator", r, d, d)?;
    let mut report = rota_baxter_report(l, r, weight);
    let sq = r * r;
    let id = Matrix::identity(d);
    let nij = || is_nijenhuis(l, r);
    if sq == id {
        let minus = is_rota_baxter(l, &(r - &id), &q(2));
        let plus = is_rota_baxter(l, &(r + &id), &q(-2));
        let n = nij();
        report.flag("bridge involution", n == minus && minus == plus, Some(format!("nijenhuis={n}")));
    }
    if sq.is_zero() {
        let n = nij();
        report.flag("bridge square-zero", n == is_rota_baxter(l, r, &q(0)), Some(format!("nijenhuis={n}")));
    }
    if sq == *r {
        let n = nij();
        report.flag("bridge idempotent", n == is_rota_baxter(l, r, &q(-1)), Some(format!("nijenhuis={n}")));
    }
    Ok(report)
}

/// All `rows x cols` matrices with integer entries in `[-bound, bound]`
/// satisfying `pred`, in lexicographic order of their row-major entries.
pub fn search_operators<F>(rows: usize, cols: usize, bound: u32, pred: F) -> Result<Vec<Matrix>>
where
    F: Fn(&Matrix) -> bool + Sync,
{
    const LIMIT: u64 = 50_000_000;
    let base = 2 * bound as u64 + 1;
    let cells = (rows * cols) as u32;
    let total = base.checked_pow(cells).filter(|&t| t <= LIMIT).ok_or_else(|| {
        Error::Precondition(format!("search space {base}^{cells} exceeds {LIMIT} candidates"))
    })?;
    let make = |mut idx: u64| {
        let mut entries = vec![0i64; rows * cols];
        for slot in entries.iter_mut().rev() {
            *slot = (idx % base) as i64 - bound as i64;
            idx /= base;
        }
        Matrix::from_fn(rows, cols, |r, c| q(entries[r * cols + c]))
    };
    Ok((0..total).into_par_iter().map(make).filter(|m| pred(m)).collect())
}

/// Sum of matrices weighted by rationals (convenience for operator pencils).
pub fn pencil(coeffs: &[Rational], ops: &[Matrix]) -> Matrix {
    let (r, c) = ops.first().map_or((0, 0), |m| (m.rows(), m.cols()));
    linear_combination(coeffs, ops, r, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::qf;

    #[test]
    fn fixture_nijenhuis_verdicts() {
        let f1 = fixtures::f1();
        assert!(check_nijenhuis(&f1, &fixtures::f1_projection()).unwrap().passed());
        assert!(check_nijenhuis(&f1, &Matrix::identity(2)).unwrap().passed());
        assert!(check_nijenhuis(&f1, &Matrix::zeros(2, 2)).unwrap().passed());
        let r = check_nijenhuis(&f1, &fixtures::f1_swap()).unwrap();
        let w = r.check("nijenhuis").unwrap().witness.clone().unwrap();
        assert_eq!(w.tuple, vec!["e0", "e0"]);
        assert_eq!(w.residual, vec![q(-1), q(0)]);
    }

    #[test]
    fn rota_baxter_and_bridges() {
        let f3 = fixtures::f3();
        assert!(check_rota_baxter(&f3, &fixtures::f3_shift(), &q(0)).unwrap().passed());
        let f1 = fixtures::f1();
        let r = check_rota_baxter(&f1, &fixtures::f1_projection(), &q(-1)).unwrap();
        assert!(r.verdict("bridge idempotent"));
        assert!(r.passed());
    }

    #[test]
    fn deformed_structures_of_projection() {
        let (algs, report) = deformed_structures(&fixtures::f1(), &fixtures::f1_projection(), 3).unwrap();
        assert_eq!(algs.len(), 4);
        assert_eq!(algs[0], fixtures::f1());
        assert!(report.passed(), "{report}");
        for j in 1..=3 {
            for k in 1..=3 {
                assert!(nijenhuis_power_identity(&fixtures::f1(), &fixtures::f1_projection(), j, k).unwrap().passed());
            }
        }
    }

    #[test]
    fn polynomials_and_laurent_polynomials() {
        let f1 = fixtures::f1();
        let (p, r) = polynomial_nijenhuis(&f1, &fixtures::f1_projection(), 0, &[q(1), q(1)]).unwrap();
        assert_eq!(p, Matrix::from_i64(&[&[2, 0], &[0, 1]]));
        assert!(r.passed());
        let n = Matrix::from_i64(&[&[2, 0], &[0, 1]]);
        let (_, r) = polynomial_nijenhuis(&f1, &n, -2, &[qf(1, 3), q(0), q(5), q(-1)]).unwrap();
        assert!(r.passed());
        assert!(polynomial_nijenhuis(&f1, &fixtures::f1_projection(), -1, &[q(1)]).is_err());
    }

    #[test]
    fn search_lists_known_operators_in_order() {
        let f1 = fixtures::f1();
        let found = search_operators(2, 2, 1, |m| is_nijenhuis(&f1, m)).unwrap();
        assert!(found.contains(&Matrix::zeros(2, 2)));
        assert!(found.contains(&Matrix::identity(2)));
        assert!(found.contains(&fixtures::f1_projection()));
        let keys: Vec<Vec<Rational>> = found.iter().map(|m| m.entries().to_vec()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
