//! Bilinear maps stored as structure constants.

use num_traits::Zero;

use crate::linalg::{axpy, zero_vec, Matrix, Rational};

/// A bilinear map `U x V -> W` in coordinates: `e_i * f_j = sum_k c[i][j][k] g_k`.
///
/// Products, brackets and deformation terms are all stored this way; for a
/// product on a single space the three dimensions coincide.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bilinear {
    left: usize,
    right: usize,
    out: usize,
    data: Vec<Rational>,
}

impl std::fmt::Debug for Bilinear {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Bilinear{}x{}->{}{{", self.left, self.right, self.out)?;
        let mut first = true;
        for i in 0..self.left {
            for j in 0..self.right {
                for (k, v) in self.basis_product(i, j).iter().enumerate() {
                    if !v.is_zero() {
                        if !first {
                            write!(f, ", ")?;
                        }
                        first = false;
                        write!(f, "({i},{j},{k}):{v}")?;
                    }
                }
            }
        }
        write!(f, "}}")
    }
}

impl Bilinear {
    pub fn zeros(left: usize, right: usize, out: usize) -> Self {
        Bilinear { left, right, out, data: zero_vec(left * right * out) }
    }

    /// Zero product on an `n`-dimensional space.
    pub fn square(n: usize) -> Self {
        Self::zeros(n, n, n)
    }

    /// Builds a map from a function giving the image of each basis pair.
    pub fn from_fn(left: usize, right: usize, out: usize, mut f: impl FnMut(usize, usize) -> Vec<Rational>) -> Self {
        let mut data = Vec::with_capacity(left * right * out);
        for i in 0..left {
            for j in 0..right {
                let v = f(i, j);
                assert_eq!(v.len(), out, "image of ({i},{j}) has wrong length");
                data.extend(v);
            }
        }
        Bilinear { left, right, out, data }
    }

    /// Builds from sparse `(i, j, k, value)` entries. Repeated coordinates add up.
    pub fn from_entries(left: usize, right: usize, out: usize, entries: &[(usize, usize, usize, Rational)]) -> Self {
        let mut b = Self::zeros(left, right, out);
        for (i, j, k, v) in entries {
            b.data[(i * right + j) * out + k] += v;
        }
        b
    }

    /// Flat coefficient vector, ordered by `(i, j, k)` lexicographically.
    pub fn from_flat(left: usize, right: usize, out: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), left * right * out);
        Bilinear { left, right, out, data }
    }

    pub fn left_dim(&self) -> usize {
        self.left
    }

    pub fn right_dim(&self) -> usize {
        self.right
    }

    pub fn out_dim(&self) -> usize {
        self.out
    }

    pub fn flat(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Coordinates of `e_i * f_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.right + j) * self.out;
        &self.data[start..start + self.out]
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.data[(i * self.right + j) * self.out + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        self.data[(i * self.right + j) * self.out + k] = v;
    }

    /// Sparse listing of the nonzero structure constants.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.left {
            for j in 0..self.right {
                for (k, v) in self.basis_product(i, j).iter().enumerate() {
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    /// Evaluates the map on coordinate vectors.
    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.left);
        assert_eq!(y.len(), self.right);
        let mut acc = zero_vec(self.out);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut acc, &(xi * yj), self.basis_product(i, j));
            }
        }
        acc
    }

    /// `y -> e_i * y` as an `out x right` matrix.
    pub fn left_mult(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.out, self.right, |k, j| self.entry(i, j, k).clone())
    }

    /// `x -> x * f_j` as an `out x left` matrix.
    pub fn right_mult(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.out, self.left, |k, i| self.entry(i, j, k).clone())
    }

    /// `y -> x * y` for an arbitrary left argument.
    pub fn left_mult_by(&self, x: &[Rational]) -> Matrix {
        let mut m = Matrix::zeros(self.out, self.right);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = &m + &self.left_mult(i).scale(xi);
            }
        }
        m
    }

    /// `(x, y) -> x*y - y*x`.
    pub fn commutator(&self) -> Bilinear {
        assert_eq!(self.left, self.right);
        Bilinear::from_fn(self.left, self.right, self.out, |i, j| {
            crate::linalg::sub_vec(self.basis_product(i, j), self.basis_product(j, i))
        })
    }

    /// `(x, y) -> post(self(a x, b y))`.
    pub fn compose(&self, post: &Matrix, a: &Matrix, b: &Matrix) -> Bilinear {
        assert_eq!(post.cols(), self.out);
        assert_eq!(a.rows(), self.left);
        assert_eq!(b.rows(), self.right);
        Bilinear::from_fn(a.cols(), b.cols(), post.rows(), |i, j| {
            post.apply(&self.apply(&a.column(i), &b.column(j)))
        })
    }

    pub fn add(&self, other: &Bilinear) -> Bilinear {
        assert_eq!((self.left, self.right, self.out), (other.left, other.right, other.out));
        self.with_data(crate::linalg::add_vec(&self.data, &other.data))
    }

    pub fn sub(&self, other: &Bilinear) -> Bilinear {
        assert_eq!((self.left, self.right, self.out), (other.left, other.right, other.out));
        self.with_data(crate::linalg::sub_vec(&self.data, &other.data))
    }

    pub fn scale(&self, c: &Rational) -> Bilinear {
        self.with_data(crate::linalg::scale_vec(c, &self.data))
    }

    fn with_data(&self, data: Vec<Rational>) -> Bilinear {
        Bilinear { left: self.left, right: self.right, out: self.out, data }
    }

    /// Transport of structure along an invertible change of basis `p`:
    /// `(x, y) -> p^{-1}(self(p x, p y))`.
    pub fn change_basis(&self, p: &Matrix, p_inv: &Matrix) -> Bilinear {
        self.compose(p_inv, p, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, unit_vec};

    #[test]
    fn multiplication_matrices_agree_with_apply() {
        let b = Bilinear::from_entries(2, 2, 2, &[(0, 1, 1, q(3)), (1, 0, 0, q(-1))]);
        let x = vec![q(1), q(2)];
        let y = vec![q(5), q(7)];
        let lhs = b.apply(&x, &y);
        assert_eq!(lhs, b.left_mult_by(&x).apply(&y));
        assert_eq!(b.apply(&unit_vec(2, 0), &y), b.left_mult(0).apply(&y));
        assert_eq!(b.apply(&x, &unit_vec(2, 1)), b.right_mult(1).apply(&x));
    }

    #[test]
    fn commutator_is_antisymmetric() {
        let b = Bilinear::from_entries(2, 2, 2, &[(0, 1, 1, q(3)), (1, 1, 0, q(1))]);
        let c = b.commutator();
        for i in 0..2 {
            for j in 0..2 {
                let s = crate::linalg::add_vec(c.basis_product(i, j), c.basis_product(j, i));
                assert!(crate::linalg::is_zero_vec(&s));
            }
        }
    }
}
