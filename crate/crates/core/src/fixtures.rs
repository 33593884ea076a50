//! Small reference algebras and operators used in examples and tests.
//!
//! Indices are 0-based: `e0, e1` span `L`, `a0, a1` span `A`.

use crate::algebra::{LsrAlgebra, StructureAlgebra};
use crate::linalg::{q, Matrix};
use crate::tensor::Bilinear;

/// `A = K`, `L = K^2` with zero product.
pub fn f0() -> LsrAlgebra {
    LsrAlgebra::over_ground(Bilinear::square(2)).unwrap()
}

/// `A = K`, `L = K[x]/(x^2)` on `(1, x)`: `e0 e0 = e0`, `e0 e1 = e1 e0 = e1`.
pub fn f1() -> LsrAlgebra {
    let p = Bilinear::from_entries(2, 2, 2, &[(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1))]);
    LsrAlgebra::over_ground(p).unwrap()
}

/// `A = K[eps]/(eps^2)`, `L = A` as a free module of rank one, zero product
/// and zero anchor. Basis of `L` is `(e, eps e)`.
pub fn f2() -> LsrAlgebra {
    let action = vec![Matrix::identity(2), Matrix::from_i64(&[&[0, 0], &[1, 0]])];
    LsrAlgebra::new(StructureAlgebra::dual_numbers(), action, Bilinear::square(2), vec![Matrix::zeros(2, 2); 2]).unwrap()
}

/// `A = K`, `L = K^2` with the single nonzero product `e1 e1 = e0`.
pub fn f3() -> LsrAlgebra {
    LsrAlgebra::over_ground(Bilinear::from_entries(2, 2, 2, &[(1, 1, 0, q(1))])).unwrap()
}

/// One-dimensional `L` with `e e = e` over `A = K`.
pub fn unital_line() -> LsrAlgebra {
    LsrAlgebra::over_ground(Bilinear::from_entries(1, 1, 1, &[(0, 0, 0, q(1))])).unwrap()
}

/// `A = K[eps]/(eps^2)`, one-dimensional `L` killed by `eps`, zero product,
/// anchor `e -> (1 -> 0, eps -> eps)`. Its anchor is a bijection onto `Der(A)`.
pub fn dual_numbers_regular() -> LsrAlgebra {
    let action = vec![Matrix::identity(1), Matrix::zeros(1, 1)];
    let anchor = vec![Matrix::from_i64(&[&[0, 0], &[0, 1]])];
    LsrAlgebra::new(StructureAlgebra::dual_numbers(), action, Bilinear::square(1), anchor).unwrap()
}

/// The four named fixtures in order.
pub fn all() -> Vec<(&'static str, LsrAlgebra)> {
    vec![("F0", f0()), ("F1", f1()), ("F2", f2()), ("F3", f3())]
}

pub fn by_name(name: &str) -> Option<LsrAlgebra> {
    all().into_iter().find(|(n, _)| n.eq_ignore_ascii_case(name)).map(|(_, l)| l)
}

/// `diag(1, 0)` on F1, an idempotent Nijenhuis operator.
pub fn f1_projection() -> Matrix {
    Matrix::from_i64(&[&[1, 0], &[0, 0]])
}

/// The coordinate swap on F1, which is not Nijenhuis.
pub fn f1_swap() -> Matrix {
    Matrix::from_i64(&[&[0, 1], &[1, 0]])
}

/// `R(e0) = 0`, `R(e1) = e0` on F3: Rota–Baxter of weight zero and an
/// O-operator for the adjoint pair.
pub fn f3_shift() -> Matrix {
    Matrix::from_i64(&[&[0, 1], &[0, 0]])
}
