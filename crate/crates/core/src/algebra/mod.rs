//! Structure-constant models of the base algebra, left-symmetric Rinehart
//! algebras and Lie–Rinehart algebras, with their validators.

mod base;
mod lie;
mod lsr;
mod maps;

pub use base::{DerivationSpace, StructureAlgebra};
pub use lie::LieRinehartAlgebra;
pub use lsr::{AnchorKind, LsrAlgebra};
pub use maps::{check_lie_morphism, check_morphism, check_substructure, MorphismPair, SubstructureKind, Subspace};

use crate::error::{Error, Result};
use crate::linalg::{linear_combination, Matrix, Rational};
use crate::report::{a, e, Report};
use crate::tensor::Bilinear;

/// Data shared by both kinds of anchored algebra: an A-module `L` with a
/// bilinear multiplication and an anchor `L -> End(A)`.
pub trait AnchoredAlgebra {
    fn base(&self) -> &StructureAlgebra;
    /// `action()[p]` is the matrix of `x -> a_p x` on `L`.
    fn action(&self) -> &[Matrix];
    /// The product (left-symmetric case) or bracket (Lie case).
    fn multiplication(&self) -> &Bilinear;
    /// `anchor()[i]` is the matrix of the anchor of `e_i` acting on `A`.
    fn anchor(&self) -> &[Matrix];

    fn dim(&self) -> usize {
        self.multiplication().out_dim()
    }

    fn dim_a(&self) -> usize {
        self.base().dim()
    }

    /// Matrix of `x -> a x` for an arbitrary `a` in A.
    fn act(&self, coeffs: &[Rational]) -> Matrix {
        linear_combination(coeffs, self.action(), self.dim(), self.dim())
    }

    /// Anchor of an arbitrary element of `L`.
    fn anchor_at(&self, x: &[Rational]) -> Matrix {
        linear_combination(x, self.anchor(), self.dim_a(), self.dim_a())
    }
}

pub(crate) fn check_shapes(field: &str, mats: &[Matrix], count: usize, rows: usize, cols: usize) -> Result<()> {
    if mats.len() != count {
        return Err(Error::dimension(field, format!("{count} matrices"), mats.len()));
    }
    for (i, m) in mats.iter().enumerate() {
        if m.rows() != rows || m.cols() != cols {
            return Err(Error::dimension(
                format!("{field}[{i}]"),
                format!("{rows}x{cols}"),
                format!("{}x{}", m.rows(), m.cols()),
            ));
        }
    }
    Ok(())
}

pub(crate) fn check_bilinear_shape(field: &str, b: &Bilinear, l: usize, r: usize, o: usize) -> Result<()> {
    if (b.left_dim(), b.right_dim(), b.out_dim()) != (l, r, o) {
        return Err(Error::dimension(
            field,
            format!("{l}x{r}->{o}"),
            format!("{}x{}->{}", b.left_dim(), b.right_dim(), b.out_dim()),
        ));
    }
    Ok(())
}

/// One case per column of a matrix-valued residual; the column label is
/// appended to the tuple.
pub(crate) fn column_cases(
    tuple: Vec<String>,
    residual: Matrix,
    label: fn(usize) -> String,
) -> impl Iterator<Item = (Vec<String>, Vec<Rational>)> {
    (0..residual.cols()).map(move |c| {
        let mut t = tuple.clone();
        t.push(label(c));
        (t, residual.column(c))
    })
}

/// The A-module axioms for `action` on a space whose basis is labelled by `label`.
pub(crate) fn check_module(report: &mut Report, base: &StructureAlgebra, action: &[Matrix], label: fn(usize) -> String) {
    let da = base.dim();
    let d = action.first().map_or(0, Matrix::rows);
    let cases = (0..da).flat_map(|p| (0..da).map(move |q| (p, q))).flat_map(|(p, q)| {
        let lhs = &action[p] * &action[q];
        let rhs = linear_combination(base.product().basis_product(p, q), action, d, d);
        column_cases(vec![a(p), a(q)], &lhs - &rhs, label)
    });
    report.scan("module-associativity", cases);
    if let Some(u) = base.unit() {
        let residual = &action[u] - &Matrix::identity(d);
        report.scan("module-unit", column_cases(vec![a(u)], residual, label));
    }
}

/// Anchor axioms common to both structures: derivation property, bracket
/// preservation and A-linearity. `bracket` is the commutator of the product
/// (left-symmetric case) or the bracket itself (Lie case).
pub(crate) fn check_anchor<S: AnchoredAlgebra + ?Sized>(report: &mut Report, s: &S, bracket: &Bilinear) {
    let base = s.base();
    let (n, da) = (s.dim(), s.dim_a());
    let anchor = s.anchor();
    // Leibniz rule, scanned on (e_i, a_p, a_q).
    let cases = (0..n).flat_map(|i| (0..da).flat_map(move |p| (0..da).map(move |q| (i, p, q)))).map(|(i, p, q)| {
        let lhs = anchor[i].apply(base.product().basis_product(p, q));
        let t1 = base.multiply(&anchor[i].column(p), &crate::linalg::unit_vec(da, q));
        let t2 = base.multiply(&crate::linalg::unit_vec(da, p), &anchor[i].column(q));
        let r = crate::linalg::sub_vec(&crate::linalg::sub_vec(&lhs, &t1), &t2);
        (vec![e(i), a(p), a(q)], r)
    });
    report.scan("anchor-derivation", cases);

    let cases = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).flat_map(|(i, j)| {
        let lhs = s.anchor_at(bracket.basis_product(i, j));
        let rhs = anchor[i].commutator(&anchor[j]);
        column_cases(vec![e(i), e(j)], &lhs - &rhs, a)
    });
    report.scan("anchor-bracket", cases);

    // anchor(a_p e_i) = a_p anchor(e_i), both sides as operators on A.
    let cases = (0..da).flat_map(|p| (0..n).map(move |i| (p, i))).flat_map(|(p, i)| {
        let lhs = s.anchor_at(&s.action()[p].column(i));
        let rhs = &base.mult_matrix(p) * &anchor[i];
        column_cases(vec![a(p), e(i)], &lhs - &rhs, a)
    });
    report.scan("anchor-A-linearity", cases);
}

/// Residual of `x * (a y) - anchor(x)(a) y - a (x * y)` on basis triples.
pub(crate) fn check_left_compatibility<S: AnchoredAlgebra + ?Sized>(report: &mut Report, s: &S, name: &str) {
    let (n, da) = (s.dim(), s.dim_a());
    let mult = s.multiplication();
    let cases = (0..n).flat_map(|i| (0..da).flat_map(move |p| (0..n).map(move |j| (i, p, j)))).map(|(i, p, j)| {
        let lhs = mult.apply(&crate::linalg::unit_vec(n, i), &s.action()[p].column(j));
        let t1 = s.act(&s.anchor()[i].column(p)).column(j);
        let t2 = s.action()[p].apply(mult.basis_product(i, j));
        let r = crate::linalg::sub_vec(&crate::linalg::sub_vec(&lhs, &t1), &t2);
        (vec![e(i), a(p), e(j)], r)
    });
    report.scan(name, cases);
}
