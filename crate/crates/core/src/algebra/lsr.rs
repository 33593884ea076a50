use serde::Serialize;

use super::{
    check_anchor, check_bilinear_shape, check_left_compatibility, check_module, check_shapes, column_cases,
    AnchoredAlgebra, LieRinehartAlgebra, StructureAlgebra,
};
use crate::error::{Error, Result};
use crate::linalg::{sub_vec, unit_vec, Matrix};
use crate::report::{a, e, Report};
use crate::tensor::Bilinear;

/// A left-symmetric Rinehart algebra `(L, A, ., l)` in coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LsrAlgebra {
    base: StructureAlgebra,
    action: Vec<Matrix>,
    product: Bilinear,
    anchor: Vec<Matrix>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AnchorKind {
    General,
    /// The anchor image spans `Der(A)`.
    Transitive,
    /// Transitive with an injective anchor.
    Regular,
}

impl AnchoredAlgebra for LsrAlgebra {
    fn base(&self) -> &StructureAlgebra {
        &self.base
    }
    fn action(&self) -> &[Matrix] {
        &self.action
    }
    fn multiplication(&self) -> &Bilinear {
        &self.product
    }
    fn anchor(&self) -> &[Matrix] {
        &self.anchor
    }
}

impl LsrAlgebra {
    /// Checks shapes only; use [`LsrAlgebra::validate`] for the axioms.
    pub fn new(base: StructureAlgebra, action: Vec<Matrix>, product: Bilinear, anchor: Vec<Matrix>) -> Result<Self> {
        let n = product.out_dim();
        let da = base.dim();
        check_bilinear_shape("lsr.product", &product, n, n, n)?;
        check_shapes("lsr.action", &action, da, n, n)?;
        check_shapes("lsr.anchor", &anchor, n, da, da)?;
        Ok(LsrAlgebra { base, action, product, anchor })
    }

    /// A left-symmetric algebra over the ground field (zero anchor).
    pub fn over_ground(product: Bilinear) -> Result<Self> {
        let n = product.out_dim();
        Self::new(StructureAlgebra::ground(), vec![Matrix::identity(n)], product, vec![Matrix::zeros(1, 1); n])
    }

    pub fn product(&self) -> &Bilinear {
        &self.product
    }

    /// Same module and anchor data with a different product.
    pub fn with_product(&self, product: Bilinear) -> Result<Self> {
        Self::new(self.base.clone(), self.action.clone(), product, self.anchor.clone())
    }

    /// Same data with a different product and anchor.
    pub fn with_product_and_anchor(&self, product: Bilinear, anchor: Vec<Matrix>) -> Result<Self> {
        Self::new(self.base.clone(), self.action.clone(), product, anchor)
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new("left-symmetric Rinehart algebra");
        report.absorb("", self.base.validate());
        check_module(&mut report, &self.base, &self.action, e);
        let n = self.dim();
        let p = &self.product;
        let triples = (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))));
        report.scan(
            "left-symmetry",
            triples.map(|(i, j, k)| (vec![e(i), e(j), e(k)], associator_difference(p, i, j, k))),
        );
        check_anchor(&mut report, self, &p.commutator());
        check_left_compatibility(&mut report, self, "left-compatibility");
        // (a x) . y = a (x . y)
        let da = self.dim_a();
        let cases = (0..da).flat_map(|q| (0..n).map(move |i| (q, i))).flat_map(|(q, i)| {
            let lhs = p.left_mult_by(&self.action[q].column(i));
            let rhs = &self.action[q] * &p.left_mult(i);
            column_cases(vec![a(q), e(i)], &lhs - &rhs, e)
        });
        report.scan("right-compatibility", cases);
        report
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.passed() {
            Ok(())
        } else {
            Err(Error::invalid("left-symmetric Rinehart algebra", &r))
        }
    }

    /// The commutator bracket with the same module and anchor data.
    pub fn sub_adjacent(&self) -> Result<LieRinehartAlgebra> {
        self.require_valid()?;
        Ok(self.sub_adjacent_unchecked())
    }

    pub(crate) fn sub_adjacent_unchecked(&self) -> LieRinehartAlgebra {
        LieRinehartAlgebra::new(self.base.clone(), self.action.clone(), self.product.commutator(), self.anchor.clone())
            .expect("shapes carried over from a well-formed algebra")
    }

    pub fn classify_anchor(&self) -> AnchorKind {
        let der = self.base.derivation_basis();
        let rank = der.span_rank(&self.anchor);
        if rank < der.dim() {
            AnchorKind::General
        } else if rank == self.dim() {
            AnchorKind::Regular
        } else {
            AnchorKind::Transitive
        }
    }

    /// The algebra on `L + A` with product `(x + a)(y + b) = x.y + l(x)(b)`,
    /// componentwise A-action and anchor vanishing on the A summand.
    pub fn trivial_extension(&self) -> Result<LsrAlgebra> {
        self.require_valid()?;
        let (n, da) = (self.dim(), self.dim_a());
        let total = n + da;
        let mut product = Bilinear::square(total);
        for i in 0..n {
            for j in 0..n {
                for (k, v) in self.product.basis_product(i, j).iter().enumerate() {
                    product.set(i, j, k, v.clone());
                }
            }
            for b in 0..da {
                for (k, v) in self.anchor[i].column(b).iter().enumerate() {
                    product.set(i, n + b, n + k, v.clone());
                }
            }
        }
        let action = (0..da)
            .map(|p| Matrix::block(&[n, da], &[n, da], &[&[Some(&self.action[p]), None], &[None, Some(&self.base.mult_matrix(p))]]))
            .collect();
        let mut anchor = self.anchor.clone();
        anchor.extend(std::iter::repeat_n(Matrix::zeros(da, da), da));
        LsrAlgebra::new(self.base.clone(), action, product, anchor)
    }
}

/// `(x.y).z - x.(y.z) - (y.x).z + y.(x.z)` on basis elements.
pub(crate) fn associator_difference(p: &Bilinear, i: usize, j: usize, k: usize) -> Vec<crate::linalg::Rational> {
    let n = p.out_dim();
    let ek = unit_vec(n, k);
    let lhs = sub_vec(&p.apply(p.basis_product(i, j), &ek), &p.apply(&unit_vec(n, i), p.basis_product(j, k)));
    let rhs = sub_vec(&p.apply(p.basis_product(j, i), &ek), &p.apply(&unit_vec(n, j), p.basis_product(i, k)));
    sub_vec(&lhs, &rhs)
}
