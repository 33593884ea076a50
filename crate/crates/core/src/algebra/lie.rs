use super::{
    check_anchor, check_bilinear_shape, check_left_compatibility, check_module, check_shapes, AnchoredAlgebra,
    StructureAlgebra,
};
use crate::error::{Error, Result};
use crate::linalg::{add_vec, unit_vec, Matrix};
use crate::report::{e, Report};
use crate::tensor::Bilinear;

/// A Lie–Rinehart algebra `(L, A, [,], rho)` in coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieRinehartAlgebra {
    base: StructureAlgebra,
    action: Vec<Matrix>,
    bracket: Bilinear,
    anchor: Vec<Matrix>,
}

impl AnchoredAlgebra for LieRinehartAlgebra {
    fn base(&self) -> &StructureAlgebra {
        &self.base
    }
    fn action(&self) -> &[Matrix] {
        &self.action
    }
    fn multiplication(&self) -> &Bilinear {
        &self.bracket
    }
    fn anchor(&self) -> &[Matrix] {
        &self.anchor
    }
}

impl LieRinehartAlgebra {
    pub fn new(base: StructureAlgebra, action: Vec<Matrix>, bracket: Bilinear, anchor: Vec<Matrix>) -> Result<Self> {
        let n = bracket.out_dim();
        let da = base.dim();
        check_bilinear_shape("lie.bracket", &bracket, n, n, n)?;
        check_shapes("lie.action", &action, da, n, n)?;
        check_shapes("lie.anchor", &anchor, n, da, da)?;
        Ok(LieRinehartAlgebra { base, action, bracket, anchor })
    }

    pub fn bracket(&self) -> &Bilinear {
        &self.bracket
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new("Lie-Rinehart algebra");
        report.absorb("", self.base.validate());
        check_module(&mut report, &self.base, &self.action, e);
        let n = self.dim();
        let b = &self.bracket;
        let pairs = (0..n).flat_map(|i| (i..n).map(move |j| (i, j)));
        report.scan(
            "antisymmetry",
            pairs.map(|(i, j)| (vec![e(i), e(j)], add_vec(b.basis_product(i, j), b.basis_product(j, i)))),
        );
        let triples = (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))));
        report.scan(
            "jacobi",
            triples.map(|(i, j, k)| {
                let cyc = |x: usize, y: usize, z: usize| b.apply(&unit_vec(n, x), b.basis_product(y, z));
                let r = add_vec(&add_vec(&cyc(i, j, k), &cyc(j, k, i)), &cyc(k, i, j));
                (vec![e(i), e(j), e(k)], r)
            }),
        );
        check_anchor(&mut report, self, b);
        check_left_compatibility(&mut report, self, "leibniz-compatibility");
        report
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.passed() {
            Ok(())
        } else {
            Err(Error::invalid("Lie-Rinehart algebra", &r))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn jacobi_failure_is_named() {
        // [e0,e1] = e2, [e1,e2] = e0, [e2,e0] = e0 does not satisfy Jacobi.
        let b = Bilinear::from_entries(
            3,
            3,
            3,
            &[(0, 1, 2, q(1)), (1, 0, 2, q(-1)), (1, 2, 0, q(1)), (2, 1, 0, q(-1)), (2, 0, 0, q(1)), (0, 2, 0, q(-1))],
        );
        let lie = LieRinehartAlgebra::new(
            StructureAlgebra::ground(),
            vec![Matrix::identity(3)],
            b,
            vec![Matrix::zeros(1, 1); 3],
        )
        .unwrap();
        let r = lie.validate();
        assert!(r.verdict("antisymmetry"));
        assert!(!r.verdict("jacobi"));
    }
}
