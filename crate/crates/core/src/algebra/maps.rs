use serde::{Deserialize, Serialize};

use super::{AnchoredAlgebra, LsrAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{in_span, rank_of_vectors, sub_vec, unit_vec, zero_vec, Matrix, Rational};
use crate::report::{a, e, Report};

/// A linear subspace of `L`, given by independent vectors in `L`-coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn new(basis: Vec<Vec<Rational>>) -> Result<Self> {
        if rank_of_vectors(&basis) != basis.len() {
            return Err(Error::Precondition("subspace basis vectors are linearly dependent".into()));
        }
        Ok(Subspace { basis })
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        in_span(&self.basis, v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubstructureKind {
    Subalgebra,
    Ideal,
}

fn s(i: usize) -> String {
    format!("s{i}")
}

/// Closure checks for a subalgebra or ideal. For ideals the anchor condition
/// is read as `l(i)(a) x` in `I` for `i` in `I`, `a` in A and `x` in `L`.
pub fn check_substructure(l: &LsrAlgebra, sub: &Subspace, kind: SubstructureKind) -> Result<Report> {
    let n = l.dim();
    if let Some(v) = sub.basis.iter().find(|v| v.len() != n) {
        return Err(Error::dimension("subspace.basis", n, v.len()));
    }
    let p = l.product();
    let k = sub.basis.len();
    let outside = |v: Vec<Rational>| if sub.contains(&v) { zero_vec(n) } else { v };
    let mut report = Report::new(match kind {
        SubstructureKind::Subalgebra => "subalgebra",
        SubstructureKind::Ideal => "ideal",
    });
    let b = &sub.basis;
    report.scan(
        "product-closure",
        (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).map(|(i, j)| (vec![s(i), s(j)], outside(p.apply(&b[i], &b[j])))),
    );
    report.scan(
        "A-closure",
        (0..l.dim_a()).flat_map(|q| (0..k).map(move |i| (q, i))).map(|(q, i)| (vec![a(q), s(i)], outside(l.action()[q].apply(&b[i])))),
    );
    if kind == SubstructureKind::Ideal {
        let pairs = || (0..n).flat_map(|x| (0..k).map(move |i| (x, i)));
        report.scan(
            "left-ideal",
            pairs().map(|(x, i)| (vec![e(x), s(i)], outside(p.apply(&unit_vec(n, x), &b[i])))),
        );
        report.scan(
            "right-ideal",
            pairs().map(|(x, i)| (vec![s(i), e(x)], outside(p.apply(&b[i], &unit_vec(n, x))))),
        );
        let cases = (0..k)
            .flat_map(|i| (0..l.dim_a()).flat_map(move |q| (0..n).map(move |x| (i, q, x))))
            .map(|(i, q, x)| {
                let coeff = l.anchor_at(&b[i]).column(q);
                (vec![s(i), a(q), e(x)], outside(l.act(&coeff).column(x)))
            });
        report.scan("anchor-ideal", cases);
        report.note("anchor condition read as l(i)(a) x in I for i in I, a in A, x in L");
    }
    Ok(report)
}

/// A candidate homomorphism: `f` on `L`, `g` on `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismPair {
    pub f: Matrix,
    pub g: Matrix,
}

/// Morphism checks between two anchored algebras of the same kind.
fn morphism_checks<S: AnchoredAlgebra>(src: &S, dst: &S, fg: &MorphismPair, report: &mut Report) -> Result<()> {
    let (n1, n2, a1, a2) = (src.dim(), dst.dim(), src.dim_a(), dst.dim_a());
    if (fg.f.rows(), fg.f.cols()) != (n2, n1) {
        return Err(Error::dimension("morphism.f", format!("{n2}x{n1}"), format!("{}x{}", fg.f.rows(), fg.f.cols())));
    }
    if (fg.g.rows(), fg.g.cols()) != (a2, a1) {
        return Err(Error::dimension("morphism.g", format!("{a2}x{a1}"), format!("{}x{}", fg.g.rows(), fg.g.cols())));
    }
    let (f, g) = (&fg.f, &fg.g);
    let (ca, cb) = (src.base().product(), dst.base().product());
    report.scan(
        "g-multiplicative",
        (0..a1).flat_map(|p| (0..a1).map(move |q| (p, q))).map(|(p, q)| {
            let r = sub_vec(&g.apply(ca.basis_product(p, q)), &cb.apply(&g.column(p), &g.column(q)));
            (vec![a(p), a(q)], r)
        }),
    );
    let (m1, m2) = (src.multiplication(), dst.multiplication());
    report.scan(
        "f-multiplicative",
        (0..n1).flat_map(|i| (0..n1).map(move |j| (i, j))).map(|(i, j)| {
            let r = sub_vec(&f.apply(m1.basis_product(i, j)), &m2.apply(&f.column(i), &f.column(j)));
            (vec![e(i), e(j)], r)
        }),
    );
    report.scan(
        "module-compatibility",
        (0..a1).flat_map(|p| (0..n1).map(move |i| (p, i))).map(|(p, i)| {
            let r = sub_vec(&f.apply(&src.action()[p].column(i)), &dst.act(&g.column(p)).apply(&f.column(i)));
            (vec![a(p), e(i)], r)
        }),
    );
    report.scan(
        "anchor-intertwining",
        (0..n1).flat_map(|i| (0..a1).map(move |p| (i, p))).map(|(i, p)| {
            let lhs = g.apply(&src.anchor()[i].column(p));
            let rhs = dst.anchor_at(&f.column(i)).apply(&g.column(p));
            (vec![e(i), a(p)], sub_vec(&lhs, &rhs))
        }),
    );
    Ok(())
}

/// Homomorphism check for left-symmetric Rinehart algebras. The report also
/// carries the bracket-preservation check on the sub-adjacent structures.
pub fn check_morphism(src: &LsrAlgebra, dst: &LsrAlgebra, fg: &MorphismPair) -> Result<Report> {
    let mut report = Report::new("homomorphism");
    morphism_checks(src, dst, fg, &mut report)?;
    let mut lie = Report::new("sub-adjacent homomorphism");
    let (n1, f) = (src.dim(), &fg.f);
    let (b1, b2) = (src.product().commutator(), dst.product().commutator());
    lie.scan(
        "bracket-preservation",
        (0..n1).flat_map(|i| (0..n1).map(move |j| (i, j))).map(|(i, j)| {
            let r = sub_vec(&f.apply(b1.basis_product(i, j)), &b2.apply(&f.column(i), &f.column(j)));
            (vec![e(i), e(j)], r)
        }),
    );
    report.absorb("sub-adjacent ", lie);
    Ok(report)
}

/// Homomorphism check for Lie–Rinehart algebras.
pub fn check_lie_morphism(
    src: &super::LieRinehartAlgebra,
    dst: &super::LieRinehartAlgebra,
    fg: &MorphismPair,
) -> Result<Report> {
    let mut report = Report::new("Lie-Rinehart homomorphism");
    morphism_checks(src, dst, fg, &mut report)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::q;

    fn span(vs: &[&[i64]]) -> Subspace {
        Subspace::new(vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn substructures_of_fixtures() {
        let f1 = fixtures::f1();
        let s = span(&[&[0, 1]]);
        assert!(check_substructure(&f1, &s, SubstructureKind::Subalgebra).unwrap().passed());
        assert!(check_substructure(&f1, &s, SubstructureKind::Ideal).unwrap().passed());
        let r = check_substructure(&fixtures::f3(), &s, SubstructureKind::Subalgebra).unwrap();
        assert!(!r.verdict("product-closure"));
    }

    #[test]
    fn morphisms_of_f1() {
        let f1 = fixtures::f1();
        let id = MorphismPair { f: Matrix::identity(2), g: Matrix::identity(1) };
        assert!(check_morphism(&f1, &f1, &id).unwrap().passed());
        let zero = MorphismPair { f: Matrix::zeros(2, 2), g: Matrix::identity(1) };
        assert!(check_morphism(&f1, &f1, &zero).unwrap().passed());
        let swap = MorphismPair { f: Matrix::from_i64(&[&[0, 1], &[1, 0]]), g: Matrix::identity(1) };
        let r = check_morphism(&f1, &f1, &swap).unwrap();
        let w = r.check("f-multiplicative").unwrap().witness.clone().unwrap();
        assert_eq!(w.tuple, vec!["e0", "e0"]);
    }
}
