//! The cochain complex of a left-symmetric Rinehart algebra with values in a
//! representation.
//!
//! A degree-`n` cochain takes `n` arguments, alternating in the first `n - 1`
//! and A-linear in all of them. Cochains live in an ambient coordinate space
//! indexed by `(sorted (n-1)-subset, last argument, M-coordinate)` in
//! lexicographic order; the constrained space is the canonical kernel of the
//! A-linearity conditions inside it. Degree zero is the subspace of `M` cut
//! out by `rho(x) rho(y) m = rho(x.y) m`.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AnchoredAlgebra, LsrAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, q, unit_vec, zero_vec, Matrix, Rational};
use crate::representation::RepresentationBundle;
use crate::tensor::Bilinear;

/// Sorted `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Sorts `idx` in place and returns the permutation sign, or `None` on a repeat.
fn sort_with_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && idx[j - 1] == idx[j] {
            return None;
        }
    }
    Some(sign)
}

/// Ambient coordinates of `Hom(Lambda^k L (x) L, M)`.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    dl: usize,
    dm: usize,
    combos: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Layout {
    /// Layout for cochains of degree `n >= 1`.
    pub(crate) fn new(dl: usize, dm: usize, n: usize) -> Self {
        let combos = combinations(dl, n - 1);
        let index = combos.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Layout { dl, dm, combos, index }
    }

    pub(crate) fn dim(&self) -> usize {
        self.combos.len() * self.dl * self.dm
    }

    fn slot(&self, combo: usize, last: usize) -> usize {
        (combo * self.dl + last) * self.dm
    }

    /// Ambient vector whose block at basis arguments `(combo; last)` is `f(combo, last)`.
    pub(crate) fn assemble(&self, f: impl Fn(&[usize], usize) -> Vec<Rational>) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.dim());
        for combo in &self.combos {
            for last in 0..self.dl {
                let block = f(combo, last);
                debug_assert_eq!(block.len(), self.dm);
                out.extend(block);
            }
        }
        out
    }

    /// The blocks of an ambient vector labelled by their basis arguments.
    pub(crate) fn blocks<'v>(&'v self, v: &'v [Rational]) -> impl Iterator<Item = (Vec<String>, Vec<Rational>)> + 'v {
        self.combos.iter().enumerate().flat_map(move |(ci, combo)| {
            (0..self.dl).map(move |last| {
                let mut tuple: Vec<String> = combo.iter().map(|&i| crate::report::e(i)).collect();
                tuple.push(crate::report::e(last));
                let s = self.slot(ci, last);
                (tuple, v[s..s + self.dm].to_vec())
            })
        })
    }

    /// Multilinear evaluation `omega(alt[0], ..., alt[k-1]; last)`.
    pub(crate) fn eval(&self, omega: &[Rational], alt: &[&[Rational]], last: &[Rational]) -> Vec<Rational> {
        let mut acc = zero_vec(self.dm);
        let mut idx = Vec::with_capacity(alt.len());
        self.eval_rec(omega, alt, last, &mut idx, q(1), &mut acc);
        acc
    }

    fn eval_rec(
        &self,
        omega: &[Rational],
        alt: &[&[Rational]],
        last: &[Rational],
        idx: &mut Vec<usize>,
        coef: Rational,
        acc: &mut [Rational],
    ) {
        if idx.len() == alt.len() {
            let mut sorted = idx.clone();
            let Some(sign) = sort_with_sign(&mut sorted) else { return };
            let combo = self.index[&sorted];
            let coef = if sign < 0 { -coef } else { coef };
            for (j, lj) in last.iter().enumerate() {
                if lj.is_zero() {
                    continue;
                }
                let s = self.slot(combo, j);
                axpy(acc, &(&coef * lj), &omega[s..s + self.dm]);
            }
            return;
        }
        let arg = alt[idx.len()];
        for (i, v) in arg.iter().enumerate() {
            if v.is_zero() || idx.contains(&i) {
                continue;
            }
            idx.push(i);
            self.eval_rec(omega, alt, last, idx, &coef * v, acc);
            idx.pop();
        }
    }
}

/// A degree-`n` cochain in coordinates over its space's basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub coeffs: Vec<Rational>,
}

/// The constrained cochain space of one degree.
#[derive(Debug, Clone)]
pub struct CochainSpace {
    degree: usize,
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    free: Vec<usize>,
}

impl CochainSpace {
    fn from_kernel(degree: usize, ambient_dim: usize, constraints: Vec<Vec<Rational>>) -> Self {
        let m = Matrix::from_fn(constraints.len(), ambient_dim, |r, c| constraints[r][c].clone());
        let (red, pivots) = m.rref();
        let free: Vec<usize> = (0..ambient_dim).filter(|c| !pivots.contains(c)).collect();
        let basis = crate::linalg::kernel_from_rref(&red, &pivots, ambient_dim);
        CochainSpace { degree, ambient_dim, basis, free }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Basis elements as ambient coordinate vectors.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn zero(&self) -> Cochain {
        Cochain { degree: self.degree, coeffs: zero_vec(self.dim()) }
    }

    pub fn basis_cochain(&self, k: usize) -> Cochain {
        Cochain { degree: self.degree, coeffs: unit_vec(self.dim(), k) }
    }

    pub fn to_ambient(&self, c: &Cochain) -> Vec<Rational> {
        assert_eq!(c.coeffs.len(), self.dim(), "cochain does not belong to this space");
        let mut v = zero_vec(self.ambient_dim);
        for (k, ck) in c.coeffs.iter().enumerate() {
            if !ck.is_zero() {
                axpy(&mut v, ck, &self.basis[k]);
            }
        }
        v
    }

    /// Coordinates of an ambient vector, or `None` when it is outside the space.
    pub fn try_coordinates(&self, v: &[Rational]) -> Option<Cochain> {
        let coeffs: Vec<Rational> = self.free.iter().map(|&f| v[f].clone()).collect();
        let c = Cochain { degree: self.degree, coeffs };
        (self.to_ambient(&c) == v).then_some(c)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.try_coordinates(v).is_some()
    }

    /// Coordinates of a vector known to lie in the space.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Cochain> {
        self.try_coordinates(v).ok_or_else(|| {
            Error::Internal(format!("vector does not satisfy the degree-{} A-linearity constraints", self.degree))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CohomologyDims {
    pub degree: usize,
    pub dim_cochains: usize,
    /// Rank of the coboundary leaving this degree.
    pub rank: usize,
    pub dim_kernel: usize,
    /// Rank of the coboundary arriving in this degree.
    pub dim_image_prev: usize,
    pub h: usize,
}

/// The complex of a validated algebra and representation.
pub struct Complex<'a> {
    l: &'a LsrAlgebra,
    rep: &'a RepresentationBundle,
    mu: &'a [Matrix],
    bracket: Bilinear,
}

impl<'a> Complex<'a> {
    /// Validates both inputs; the complex is only well defined for them.
    pub fn new(l: &'a LsrAlgebra, rep: &'a RepresentationBundle) -> Result<Self> {
        l.require_valid()?;
        rep.require_lsr(l)?;
        Ok(Self::new_unchecked(l, rep))
    }

    pub(crate) fn new_unchecked(l: &'a LsrAlgebra, rep: &'a RepresentationBundle) -> Self {
        let mu = rep.mu().expect("complex needs a (rho, mu) pair");
        Complex { l, rep, mu, bracket: l.product().commutator() }
    }

    pub fn algebra(&self) -> &LsrAlgebra {
        self.l
    }

    pub(crate) fn layout(&self, n: usize) -> Layout {
        Layout::new(self.l.dim(), self.rep.dim(), n)
    }

    pub fn ambient_dim(&self, n: usize) -> usize {
        if n == 0 {
            self.rep.dim()
        } else {
            self.layout(n).dim()
        }
    }

    /// `C^0`: the `m` with `rho(x) rho(y) m = rho(x.y) m` for all `x, y`.
    pub fn zero_cochain_space(&self) -> CochainSpace {
        let (dl, dm) = (self.l.dim(), self.rep.dim());
        let rho = self.rep.rho();
        let mut rows = Vec::new();
        for i in 0..dl {
            for j in 0..dl {
                let c = &(&rho[i] * &rho[j]) - &self.rep.rho_at(self.l.product().basis_product(i, j));
                rows.extend((0..dm).map(|r| c.row(r).to_vec()).filter(|r| !is_zero_vec(r)));
            }
        }
        CochainSpace::from_kernel(0, dm, rows)
    }

    /// The A-linear cochains of degree `n`.
    pub fn space(&self, n: usize) -> CochainSpace {
        if n == 0 {
            return self.zero_cochain_space();
        }
        let layout = self.layout(n);
        let (dl, dm, da) = (self.l.dim(), self.rep.dim(), self.l.dim_a());
        let amb = layout.dim();
        let act_l = self.l.action();
        let act_m = self.rep.module_action();
        let mut rows = Vec::new();
        let mut push = |row: Vec<Rational>| {
            if !is_zero_vec(&row) {
                rows.push(row);
            }
        };
        // Last slot: omega(c; a e_j) = a omega(c; e_j).
        for p in 0..da {
            for (ci, _) in layout.combos.iter().enumerate() {
                for j in 0..dl {
                    for r in 0..dm {
                        let mut row = zero_vec(amb);
                        for s in 0..dl {
                            row[layout.slot(ci, s) + r] += act_l[p].get(s, j);
                        }
                        for t in 0..dm {
                            row[layout.slot(ci, j) + t] -= act_m[p].get(r, t);
                        }
                        push(row);
                    }
                }
            }
        }
        // First alternating slot: omega(a e_f, rest; e_j) = a omega(e_f, rest; e_j).
        if n >= 2 {
            for rest in combinations(dl, n - 2) {
                for f in 0..dl {
                    for p in 0..da {
                        for j in 0..dl {
                            for r in 0..dm {
                                let mut row = zero_vec(amb);
                                // Slot of omega(e_first, rest; e_j) with its sign.
                                let locate = |first: usize| {
                                    let mut idx = vec![first];
                                    idx.extend(&rest);
                                    sort_with_sign(&mut idx).map(|sign| (layout.slot(layout.index[&idx], j), sign))
                                };
                                for s in 0..dl {
                                    let c = act_l[p].get(s, f);
                                    if let (false, Some((k, sign))) = (c.is_zero(), locate(s)) {
                                        row[k + r] += if sign < 0 { -c } else { c.clone() };
                                    }
                                }
                                if let Some((k, sign)) = locate(f) {
                                    for t in 0..dm {
                                        row[k + t] -= q(sign) * act_m[p].get(r, t);
                                    }
                                }
                                push(row);
                            }
                        }
                    }
                }
            }
        }
        CochainSpace::from_kernel(n, amb, rows)
    }

    /// The coboundary of an ambient degree-`n` vector, as an ambient vector
    /// of degree `n + 1`.
    pub fn delta_ambient(&self, n: usize, omega: &[Rational]) -> Vec<Rational> {
        let (dl, dm) = (self.l.dim(), self.rep.dim());
        let rho = self.rep.rho();
        let mu = self.mu;
        let product = self.l.product();
        if n == 0 {
            // delta(m)(x) = mu(x) m - rho(x) m
            let mut out = zero_vec(dl * dm);
            for j in 0..dl {
                let v = (&mu[j] - &rho[j]).apply(omega);
                out[j * dm..(j + 1) * dm].clone_from_slice(&v);
            }
            return out;
        }
        let src = self.layout(n);
        let dst = self.layout(n + 1);
        let basis: Vec<Vec<Rational>> = (0..dl).map(|i| unit_vec(dl, i)).collect();
        let mut out = zero_vec(dst.dim());
        for (ci, combo) in dst.combos.iter().enumerate() {
            for j in 0..dl {
                let mut acc = zero_vec(dm);
                for i in 0..n {
                    let sign = if i % 2 == 0 { q(1) } else { q(-1) };
                    let rest: Vec<&[Rational]> =
                        combo.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &c)| basis[c].as_slice()).collect();
                    let xi = combo[i];
                    let t1 = rho[xi].apply(&src.eval(omega, &rest, &basis[j]));
                    let t2 = mu[j].apply(&src.eval(omega, &rest, &basis[xi]));
                    let t3 = src.eval(omega, &rest, product.basis_product(xi, j));
                    axpy(&mut acc, &sign, &t1);
                    axpy(&mut acc, &sign, &t2);
                    axpy(&mut acc, &-&sign, &t3);
                }
                for i in 0..n {
                    for k in i + 1..n {
                        let sign = if (i + k) % 2 == 0 { q(1) } else { q(-1) };
                        let br = self.bracket.basis_product(combo[i], combo[k]);
                        let mut args: Vec<&[Rational]> = vec![br];
                        args.extend(
                            combo.iter().enumerate().filter(|&(t, _)| t != i && t != k).map(|(_, &c)| basis[c].as_slice()),
                        );
                        axpy(&mut acc, &sign, &src.eval(omega, &args, &basis[j]));
                    }
                }
                let s = dst.slot(ci, j);
                out[s..s + dm].clone_from_slice(&acc);
            }
        }
        out
    }

    /// Coboundary between constrained spaces. Fails with an internal error if
    /// the image leaves the next space, which would signal a validator gap.
    pub fn coboundary(&self, from: &CochainSpace, to: &CochainSpace, omega: &Cochain) -> Result<Cochain> {
        assert_eq!(to.degree, from.degree + 1);
        to.coordinates(&self.delta_ambient(from.degree, &from.to_ambient(omega)))
    }

    /// Matrix of the coboundary from `from` to `to` in their bases.
    pub fn delta_matrix(&self, from: &CochainSpace, to: &CochainSpace) -> Result<Matrix> {
        let columns: Vec<Vec<Rational>> = from
            .basis
            .par_iter()
            .map(|b| to.coordinates(&self.delta_ambient(from.degree, b)).map(|c| c.coeffs))
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(to.dim(), &columns))
    }

    pub fn cohomology_dim(&self, n: usize) -> Result<CohomologyDims> {
        let here = self.space(n);
        let next = self.space(n + 1);
        let rank = self.delta_matrix(&here, &next)?.rank();
        let dim_image_prev = if n == 0 { 0 } else { self.delta_matrix(&self.space(n - 1), &here)?.rank() };
        let dim_kernel = here.dim() - rank;
        Ok(CohomologyDims { degree: n, dim_cochains: here.dim(), rank, dim_kernel, dim_image_prev, h: dim_kernel - dim_image_prev })
    }
}

/// Degree-`n` cochain space of `(l, rep)`.
pub fn cochain_basis(l: &LsrAlgebra, rep: &RepresentationBundle, n: usize) -> Result<CochainSpace> {
    if n == 0 {
        return Err(Error::Precondition("degree 0 is the zero-cochain space; use zero_cochain_space".into()));
    }
    Ok(Complex::new(l, rep)?.space(n))
}

pub fn zero_cochain_space(l: &LsrAlgebra, rep: &RepresentationBundle) -> Result<CochainSpace> {
    Ok(Complex::new(l, rep)?.zero_cochain_space())
}

pub fn coboundary(l: &LsrAlgebra, rep: &RepresentationBundle, omega: &Cochain) -> Result<Cochain> {
    let c = Complex::new(l, rep)?;
    let (from, to) = (c.space(omega.degree), c.space(omega.degree + 1));
    if omega.coeffs.len() != from.dim() {
        return Err(Error::dimension("cochain", from.dim(), omega.coeffs.len()));
    }
    c.coboundary(&from, &to, omega)
}

pub fn cohomology_dim(l: &LsrAlgebra, rep: &RepresentationBundle, n: usize) -> Result<CohomologyDims> {
    Complex::new(l, rep)?.cohomology_dim(n)
}

/// Ambient degree-1 vector of a linear map `f: L -> M`.
pub fn linear_map_to_ambient(f: &Matrix) -> Vec<Rational> {
    let (dm, dl) = (f.rows(), f.cols());
    (0..dl).flat_map(|j| (0..dm).map(move |r| f.get(r, j).clone())).collect()
}

/// Ambient degree-2 vector of a bilinear map; the layouts coincide.
pub fn bilinear_to_ambient(b: &Bilinear) -> Vec<Rational> {
    b.flat().to_vec()
}

pub fn ambient_to_bilinear(dl: usize, dm: usize, v: &[Rational]) -> Bilinear {
    Bilinear::from_flat(dl, dl, dm, v.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::representation::{adjoint_rep, RepKind};

    fn binom(n: usize, k: usize) -> usize {
        combinations(n, k).len()
    }

    #[test]
    fn dimensions_over_the_ground_field() {
        let f1 = fixtures::f1();
        let (rep, _) = adjoint_rep(&f1);
        let c = Complex::new(&f1, &rep).unwrap();
        for n in 1..=3 {
            assert_eq!(c.space(n).dim(), binom(2, n - 1) * 2 * 2);
        }
    }

    #[test]
    fn coboundary_of_identity_is_the_product() {
        let f1 = fixtures::f1();
        let (rep, _) = adjoint_rep(&f1);
        let c = Complex::new(&f1, &rep).unwrap();
        let d = c.delta_ambient(1, &linear_map_to_ambient(&Matrix::identity(2)));
        assert_eq!(d, bilinear_to_ambient(f1.product()));
        let m = c.zero_cochain_space();
        assert!(m.contains(&[q(0), q(1)]));
        assert!(is_zero_vec(&c.delta_ambient(0, &[q(0), q(1)])));
    }

    #[test]
    fn zero_product_has_full_cohomology() {
        let f0 = fixtures::f0();
        let (rep, _) = adjoint_rep(&f0);
        let c = Complex::new(&f0, &rep).unwrap();
        assert_eq!(c.cohomology_dim(1).unwrap().h, 4);
        assert_eq!(c.cohomology_dim(2).unwrap().h, 8);
    }

    #[test]
    fn unital_line_has_no_second_cohomology() {
        let l = fixtures::unital_line();
        let (rep, _) = adjoint_rep(&l);
        assert_eq!(cohomology_dim(&l, &rep, 2).unwrap().h, 0);
    }

    #[test]
    fn dual_numbers_cochains_are_a_linear() {
        let f2 = fixtures::f2();
        let rep = RepresentationBundle::zero(RepKind::LsrPair, 2, f2.action().to_vec());
        let c = Complex::new(&f2, &rep).unwrap();
        let s = c.space(1);
        assert_eq!(s.dim(), 2);
        // omega(eps x) = eps omega(x) for each basis cochain, checked on matrices.
        let eps = &f2.action()[1];
        for b in s.basis() {
            let f = Matrix::from_fn(2, 2, |r, j| b[j * 2 + r].clone());
            assert_eq!(&f * eps, eps * &f);
        }
        for n in 0..3 {
            let (from, to, next) = (c.space(n), c.space(n + 1), c.space(n + 2));
            let d1 = c.delta_matrix(&from, &to).unwrap();
            let d2 = c.delta_matrix(&to, &next).unwrap();
            assert!((&d2 * &d1).is_zero());
        }
    }

    #[test]
    fn sorting_sign() {
        let mut v = vec![2, 0, 1];
        assert_eq!(sort_with_sign(&mut v), Some(1));
        let mut v = vec![1, 0];
        assert_eq!(sort_with_sign(&mut v), Some(-1));
        let mut v = vec![1, 0, 1];
        assert_eq!(sort_with_sign(&mut v), None);
    }
}
