use crate::error::{Error, Result};
use crate::linalg::{in_span, q, rank_of_vectors, sub_vec, unit_vec, Matrix, Rational};
use crate::report::{a, Report};
use crate::tensor::Bilinear;

/// A commutative associative algebra given by structure constants
/// `a_i a_j = sum_k c[i][j][k] a_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureAlgebra {
    product: Bilinear,
    unit: Option<usize>,
}

impl StructureAlgebra {
    pub fn new(product: Bilinear, unit: Option<usize>) -> Result<Self> {
        let n = product.out_dim();
        if n == 0 {
            return Err(Error::dimension("base_algebra.dim", "at least 1", 0));
        }
        crate::algebra::check_bilinear_shape("base_algebra.product", &product, n, n, n)?;
        if let Some(u) = unit {
            if u >= n {
                return Err(Error::dimension("base_algebra.unit", format!("index below {n}"), u));
            }
        }
        Ok(StructureAlgebra { product, unit })
    }

    /// The ground field as a one-dimensional unital algebra.
    pub fn ground() -> Self {
        StructureAlgebra { product: Bilinear::from_entries(1, 1, 1, &[(0, 0, 0, q(1))]), unit: Some(0) }
    }

    /// Dual numbers `K[eps]/(eps^2)` on the basis `(1, eps)`.
    pub fn dual_numbers() -> Self {
        let product = Bilinear::from_entries(2, 2, 2, &[(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1))]);
        StructureAlgebra { product, unit: Some(0) }
    }

    /// `K x K` on the two primitive idempotents.
    pub fn split_pair() -> Self {
        let product = Bilinear::from_entries(2, 2, 2, &[(0, 0, 0, q(1)), (1, 1, 1, q(1))]);
        StructureAlgebra { product, unit: None }
    }

    pub fn dim(&self) -> usize {
        self.product.out_dim()
    }

    pub fn product(&self) -> &Bilinear {
        &self.product
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.product.apply(x, y)
    }

    /// Matrix of multiplication by the basis element `a_p`.
    pub fn mult_matrix(&self, p: usize) -> Matrix {
        self.product.left_mult(p)
    }

    pub fn validate(&self) -> Report {
        let n = self.dim();
        let c = &self.product;
        let mut report = Report::new("base algebra");
        let pairs = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
        report.scan(
            "base-commutativity",
            pairs.clone().map(|(i, j)| (vec![a(i), a(j)], sub_vec(c.basis_product(i, j), c.basis_product(j, i)))),
        );
        let triples = pairs.flat_map(|(i, j)| (0..n).map(move |k| (i, j, k)));
        report.scan(
            "base-associativity",
            triples.map(|(i, j, k)| {
                let lhs = c.apply(c.basis_product(i, j), &unit_vec(n, k));
                let rhs = c.apply(&unit_vec(n, i), c.basis_product(j, k));
                (vec![a(i), a(j), a(k)], sub_vec(&lhs, &rhs))
            }),
        );
        if let Some(u) = self.unit {
            report.scan(
                "base-unit",
                (0..n).map(|i| (vec![a(u), a(i)], sub_vec(c.basis_product(u, i), &unit_vec(n, i)))),
            );
        }
        report
    }

    /// All derivations of the algebra, as the canonical kernel of the
    /// Leibniz constraints. The unknown `D[r][c]` (coefficient of `a_r` in
    /// `D(a_c)`) sits at column `r * dim + c`.
    pub fn derivation_basis(&self) -> DerivationSpace {
        let n = self.dim();
        let c = &self.product;
        let mut rows = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // D(a_i a_j) - D(a_i) a_j - a_i D(a_j), coordinate k.
                    let mut row = vec![q(0); n * n];
                    for (s, cij) in c.basis_product(i, j).iter().enumerate() {
                        row[k * n + s] += cij;
                    }
                    for r in 0..n {
                        row[r * n + i] -= c.entry(r, j, k);
                        row[r * n + j] -= c.entry(i, r, k);
                    }
                    rows.push(row);
                }
            }
        }
        let basis = Matrix::from_rows(rows)
            .nullspace()
            .into_iter()
            .map(|v| Matrix::from_fn(n, n, |r, col| v[r * n + col].clone()))
            .collect();
        DerivationSpace { dim_a: n, basis }
    }
}

/// A basis of `Der(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationSpace {
    dim_a: usize,
    basis: Vec<Matrix>,
}

impl DerivationSpace {
    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn contains(&self, d: &Matrix) -> bool {
        let flat: Vec<_> = self.basis.iter().map(|m| m.entries().to_vec()).collect();
        in_span(&flat, d.entries())
    }

    /// Dimension of the span of the given operators (all assumed to be derivations).
    pub fn span_rank(&self, ops: &[Matrix]) -> usize {
        let flat: Vec<_> = ops.iter().map(|m| m.entries().to_vec()).collect();
        rank_of_vectors(&flat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivations_of_small_algebras() {
        assert_eq!(StructureAlgebra::ground().derivation_basis().dim(), 0);
        assert_eq!(StructureAlgebra::split_pair().derivation_basis().dim(), 0);
        let der = StructureAlgebra::dual_numbers().derivation_basis();
        assert_eq!(der.dim(), 1);
        // 1 -> 0, eps -> eps
        assert_eq!(der.basis()[0], Matrix::from_i64(&[&[0, 0], &[0, 1]]));
    }

    #[test]
    fn standard_bases_validate() {
        for alg in [StructureAlgebra::ground(), StructureAlgebra::dual_numbers(), StructureAlgebra::split_pair()] {
            assert!(alg.validate().passed());
        }
    }

    #[test]
    fn noncommutative_product_is_reported() {
        let p = Bilinear::from_entries(2, 2, 2, &[(0, 1, 1, q(1))]);
        let alg = StructureAlgebra::new(p, None).unwrap();
        let r = alg.validate();
        assert!(!r.verdict("base-commutativity"));
        assert_eq!(r.check("base-commutativity").unwrap().witness.as_ref().unwrap().tuple, vec!["a0", "a1"]);
    }
}
