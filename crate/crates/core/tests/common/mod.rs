//! Shared generators and independent oracles for the integration tests.
//!
//! The oracles work on dense nested vectors and do their own elimination;
//! they only read structure constants out of the library types.
#![allow(dead_code)]

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rinehart::algebra::{AnchoredAlgebra, LsrAlgebra, StructureAlgebra};
use rinehart::linalg::{q, qf};
use rinehart::representation::{adjoint_rep, semidirect_lsr, RepKind, RepresentationBundle};
use rinehart::{Bilinear, Matrix, Rational};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut StdRng) -> Rational {
    qf(rng.gen_range(-2..=2), rng.gen_range(1..=2))
}

pub fn small_int(rng: &mut StdRng, bound: i64) -> Rational {
    q(rng.gen_range(-bound..=bound))
}

/// Product of a random unit lower and a random unit upper triangular matrix.
pub fn random_invertible(rng: &mut StdRng, n: usize) -> Matrix {
    let lower = Matrix::from_fn(n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => q(1),
        std::cmp::Ordering::Greater => small_int(rng, 1),
        std::cmp::Ordering::Less => q(0),
    });
    let upper = Matrix::from_fn(n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => q(1),
        std::cmp::Ordering::Less => small_int(rng, 1),
        std::cmp::Ordering::Greater => q(0),
    });
    &lower * &upper
}

/// `x o y = x (D + lambda)(y)` on `K[x]/(x^d)` with `D = p(x) d/dx`,
/// `p(0) = 0`: a Novikov, hence left-symmetric, product.
pub fn novikov(rng: &mut StdRng, d: usize) -> Bilinear {
    let p: Vec<Rational> = (0..d).map(|s| if s == 0 { q(0) } else { small_rational(rng) }).collect();
    let lambda = if rng.gen_bool(0.5) { q(0) } else { small_rational(rng) };
    // E(x^k) = sum_s k p_s x^(k-1+s) + lambda x^k
    let e = Matrix::from_fn(d, d, |r, k| {
        let mut v = if r == k { lambda.clone() } else { q(0) };
        if k >= 1 && r + 1 >= k {
            let s = r + 1 - k;
            if s < d {
                v += q(k as i64) * &p[s];
            }
        }
        v
    });
    Bilinear::from_fn(d, d, d, |i, j| {
        let ey = e.column(j);
        let mut out = vec![q(0); d];
        for (t, c) in ey.iter().enumerate() {
            if i + t < d {
                out[i + t] += c;
            }
        }
        out
    })
}

fn block_sum(a: &Bilinear, b: &Bilinear) -> Bilinear {
    let (m, n) = (a.out_dim(), b.out_dim());
    let mut out = Bilinear::square(m + n);
    for (i, j, k, v) in a.nonzero_entries() {
        out.set(i, j, k, v);
    }
    for (i, j, k, v) in b.nonzero_entries() {
        out.set(m + i, m + j, m + k, v);
    }
    out
}

/// A random left-symmetric algebra over the ground field of dimension
/// `1..=max_dim`, in a scrambled basis.
pub fn random_lsa(rng: &mut StdRng, max_dim: usize) -> LsrAlgebra {
    let d = rng.gen_range(1..=max_dim);
    let product = if d >= 2 && rng.gen_bool(0.3) {
        let split = rng.gen_range(1..d);
        block_sum(&novikov(rng, split), &novikov(rng, d - split))
    } else {
        novikov(rng, d)
    };
    let p = random_invertible(rng, d);
    let p_inv = p.inverse().unwrap();
    LsrAlgebra::over_ground(product.change_basis(&p, &p_inv)).unwrap()
}

/// `L (x) K[eps]` as a free module over the dual numbers, basis
/// `(e_0, ..., e_{d-1}, eps e_0, ..., eps e_{d-1})`, zero anchor.
pub fn with_dual_numbers(l: &LsrAlgebra) -> LsrAlgebra {
    let d = l.dim();
    let mut product = Bilinear::square(2 * d);
    for (i, j, k, v) in l.product().nonzero_entries() {
        product.set(i, j, k, v.clone());
        product.set(d + i, j, d + k, v.clone());
        product.set(i, d + j, d + k, v);
    }
    let eps = Matrix::from_fn(2 * d, 2 * d, |r, c| if c < d && r == c + d { q(1) } else { q(0) });
    let action = vec![Matrix::identity(2 * d), eps];
    LsrAlgebra::new(StructureAlgebra::dual_numbers(), action, product, vec![Matrix::zeros(2, 2); 2 * d]).unwrap()
}

pub fn trivial_rep(l: &LsrAlgebra, k: usize) -> RepresentationBundle {
    let action = l.action().iter().map(|a| Matrix::identity(k).scale(&a.get(0, 0).clone())).collect();
    RepresentationBundle::zero(RepKind::LsrPair, l.dim(), action)
}

/// `(L; left multiplication, 0)`.
pub fn left_regular(l: &LsrAlgebra) -> RepresentationBundle {
    let d = l.dim();
    let rho = (0..d).map(|i| l.product().left_mult(i)).collect();
    RepresentationBundle::lsr_pair(d, l.action().to_vec(), rho, vec![Matrix::zeros(d, d); d]).unwrap()
}

/// A representation of a ground-field algebra of dimension at most
/// `max_dm`, built from adjoint, left-regular, trivial, dual, direct-sum and
/// conjugation operations. Always valid.
pub fn random_rep(rng: &mut StdRng, l: &LsrAlgebra, max_dm: usize) -> RepresentationBundle {
    let d = l.dim();
    let rep = loop {
        let candidate = match rng.gen_range(0..5) {
            0 => Some(trivial_rep(l, rng.gen_range(1..=max_dm))),
            1 if d <= max_dm => Some(adjoint_rep(l).0),
            2 if d <= max_dm => Some(left_regular(l)),
            3 if d <= max_dm => adjoint_rep(l).0.dual().ok(),
            4 if d < max_dm => {
                let k = rng.gen_range(1..=max_dm - d);
                let first = if rng.gen_bool(0.5) { adjoint_rep(l).0 } else { left_regular(l) };
                first.direct_sum(&trivial_rep(l, k)).ok()
            }
            _ => None,
        };
        if let Some(c) = candidate {
            if c.validate_lsr(l).unwrap().passed() {
                break c;
            }
        }
    };
    if rng.gen_bool(0.5) {
        rep.conjugate(&random_invertible(rng, rep.dim())).unwrap()
    } else {
        rep
    }
}

/// A validated pair `(L, M)` over the ground field within the given bounds;
/// sometimes `L` is itself a semidirect product.
pub fn random_instance(rng: &mut StdRng, max_dl: usize, max_dm: usize) -> (LsrAlgebra, RepresentationBundle) {
    let l = if max_dl >= 2 && rng.gen_bool(0.2) {
        let inner = random_lsa(rng, max_dl - 1);
        let room = max_dl - inner.dim();
        let m = random_rep(rng, &inner, room.min(max_dm).max(1));
        if inner.dim() + m.dim() <= max_dl {
            semidirect_lsr(&inner, &m).unwrap()
        } else {
            inner
        }
    } else {
        random_lsa(rng, max_dl)
    };
    let rep = random_rep(rng, &l, max_dm);
    (l, rep)
}

// ---------------------------------------------------------------------------
// Oracles

pub type Dense2 = Vec<Vec<Rational>>;
pub type Dense3 = Vec<Vec<Vec<Rational>>>;

pub fn dense_matrix(m: &Matrix) -> Dense2 {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).clone()).collect()).collect()
}

pub fn dense_tensor(b: &Bilinear) -> Dense3 {
    (0..b.left_dim())
        .map(|i| (0..b.right_dim()).map(|j| (0..b.out_dim()).map(|k| b.entry(i, j, k).clone()).collect()).collect())
        .collect()
}

/// Rank by plain Gaussian elimination on a copy of the rows.
pub fn oracle_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                for k in c..cols {
                    let t = &f * &m[rank][k];
                    m[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Null space basis by elimination to reduced form.
pub fn oracle_nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for k in 0..cols {
            m[rank][k] = &m[rank][k] / &pivot;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..cols {
                    let t = &f * &m[rank][k];
                    m[r][k] -= t;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

fn mat_vec(m: &Dense2, v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// `H^0, H^1, H^2` (and the cochain dimensions) of a ground-field pair,
/// from explicit coboundary formulas on unconstrained Hom spaces.
pub struct OracleDims {
    pub dims: [usize; 3],
    pub h: [usize; 3],
}

pub fn oracle_cohomology(l: &LsrAlgebra, rep: &RepresentationBundle) -> OracleDims {
    assert_eq!(l.dim_a(), 1, "the oracle handles the ground field only");
    let (dl, dm) = (l.dim(), rep.dim());
    let m = dense_tensor(l.product());
    let rho: Vec<Dense2> = rep.rho().iter().map(dense_matrix).collect();
    let mu: Vec<Dense2> = rep.mu().unwrap().iter().map(dense_matrix).collect();
    let prod = |x: usize, y: usize| -> &Vec<Rational> { &m[x][y] };
    let zero_m = || vec![Rational::zero(); dm];

    // C^0 = {v : rho(x) rho(y) v = rho(x.y) v}
    let mut constraints = Vec::new();
    for x in 0..dl {
        for y in 0..dl {
            for r in 0..dm {
                let row: Vec<Rational> = (0..dm)
                    .map(|c| {
                        let mut s: Rational = (0..dm).map(|t| &rho[x][r][t] * &rho[y][t][c]).sum();
                        for (k, coef) in prod(x, y).iter().enumerate() {
                            s -= coef * &rho[k][r][c];
                        }
                        s
                    })
                    .collect();
                constraints.push(row);
            }
        }
    }
    let c0 = oracle_nullspace(&constraints, dm);

    // delta0(v)(x) = mu(x) v - rho(x) v
    let d0: Vec<Vec<Rational>> = c0
        .iter()
        .map(|v| {
            (0..dl).flat_map(|x| {
                let a = mat_vec(&mu[x], v);
                let b = mat_vec(&rho[x], v);
                a.into_iter().zip(b).map(|(p, q)| p - q).collect::<Vec<_>>()
            })
            .collect()
        })
        .collect();

    // delta1(f)(x, y) = rho(x) f(y) + mu(y) f(x) - f(x.y), f = E_{r, j}
    let f_apply = |r: usize, j: usize, v: &[Rational]| -> Vec<Rational> {
        let mut out = zero_m();
        out[r] = v[j].clone();
        out
    };
    let unit = |i: usize| -> Vec<Rational> { (0..dl).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect() };
    let mut d1 = Vec::new();
    for r in 0..dm {
        for j in 0..dl {
            let mut col = Vec::new();
            for x in 0..dl {
                for y in 0..dl {
                    let t1 = mat_vec(&rho[x], &f_apply(r, j, &unit(y)));
                    let t2 = mat_vec(&mu[y], &f_apply(r, j, &unit(x)));
                    let t3 = f_apply(r, j, prod(x, y));
                    col.extend((0..dm).map(|s| &t1[s] + &t2[s] - &t3[s]));
                }
            }
            d1.push(col);
        }
    }

    // delta2(w)(x1, x2, y), w = E_{r, (a, b)} bilinear
    let w_apply = |r: usize, a: usize, b: usize, u: &[Rational], v: &[Rational]| -> Vec<Rational> {
        let mut out = zero_m();
        out[r] = &u[a] * &v[b];
        out
    };
    let bracket = |x: usize, y: usize| -> Vec<Rational> { (0..dl).map(|k| &m[x][y][k] - &m[y][x][k]).collect() };
    let mut d2 = Vec::new();
    for r in 0..dm {
        for a in 0..dl {
            for b in 0..dl {
                let w = |u: &[Rational], v: &[Rational]| w_apply(r, a, b, u, v);
                let mut col = Vec::new();
                for x1 in 0..dl {
                    for x2 in 0..dl {
                        for y in 0..dl {
                            let (u1, u2, uy) = (unit(x1), unit(x2), unit(y));
                            let terms = [
                                (1, mat_vec(&rho[x1], &w(&u2, &uy))),
                                (1, mat_vec(&mu[y], &w(&u2, &u1))),
                                (-1, w(&u2, prod(x1, y))),
                                (-1, mat_vec(&rho[x2], &w(&u1, &uy))),
                                (-1, mat_vec(&mu[y], &w(&u1, &u2))),
                                (1, w(&u1, prod(x2, y))),
                                (-1, w(&bracket(x1, x2), &uy)),
                            ];
                            for s in 0..dm {
                                let mut acc = Rational::zero();
                                for (sign, t) in &terms {
                                    if *sign > 0 {
                                        acc += &t[s];
                                    } else {
                                        acc -= &t[s];
                                    }
                                }
                                col.push(acc);
                            }
                        }
                    }
                }
                d2.push(col);
            }
        }
    }

    let (r0, r1, r2) = (oracle_rank(&d0), oracle_rank(&d1), oracle_rank(&d2));
    let dims = [c0.len(), dl * dm, dl * dl * dm];
    OracleDims { dims, h: [dims[0] - r0, dims[1] - r1 - r0, dims[2] - r2 - r1] }
}

/// Names of the axioms violated by a left-symmetric Rinehart algebra,
/// evaluated directly on structure constants. Uses the validator's names.
pub fn oracle_violations(l: &LsrAlgebra) -> Vec<&'static str> {
    let (d, da) = (l.dim(), l.dim_a());
    let c = dense_tensor(l.base().product());
    let act: Vec<Dense2> = l.action().iter().map(dense_matrix).collect();
    let m = dense_tensor(l.product());
    let an: Vec<Dense2> = l.anchor().iter().map(dense_matrix).collect();
    let zero = Rational::zero;

    // products of coordinate vectors
    let a_mul = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
        let mut out = vec![zero(); da];
        for p in 0..da {
            for q in 0..da {
                if u[p].is_zero() || v[q].is_zero() {
                    continue;
                }
                for r in 0..da {
                    out[r] += &u[p] * &v[q] * &c[p][q][r];
                }
            }
        }
        out
    };
    let l_mul = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
        let mut out = vec![zero(); d];
        for i in 0..d {
            for j in 0..d {
                if u[i].is_zero() || v[j].is_zero() {
                    continue;
                }
                for k in 0..d {
                    out[k] += &u[i] * &v[j] * &m[i][j][k];
                }
            }
        }
        out
    };
    // a . x for a in A, x in L
    let act_on = |a: &[Rational], x: &[Rational]| -> Vec<Rational> {
        let mut out = vec![zero(); d];
        for p in 0..da {
            let v = mat_vec(&act[p], x);
            for k in 0..d {
                out[k] += &a[p] * &v[k];
            }
        }
        out
    };
    // anchor(x)(a)
    let anchor = |x: &[Rational], a: &[Rational]| -> Vec<Rational> {
        let mut out = vec![zero(); da];
        for i in 0..d {
            let v = mat_vec(&an[i], a);
            for r in 0..da {
                out[r] += &x[i] * &v[r];
            }
        }
        out
    };
    let ea = |p: usize| -> Vec<Rational> { (0..da).map(|k| if k == p { Rational::one() } else { zero() }).collect() };
    let el = |i: usize| -> Vec<Rational> { (0..d).map(|k| if k == i { Rational::one() } else { zero() }).collect() };
    let sub = |u: &[Rational], v: &[Rational]| -> Vec<Rational> { u.iter().zip(v).map(|(a, b)| a - b).collect() };
    let is_zero = |v: &[Rational]| v.iter().all(Zero::is_zero);

    let mut out = Vec::new();
    let mut check = |name: &'static str, ok: bool| {
        if !ok {
            out.push(name);
        }
    };
    let pairs_a = || (0..da).flat_map(|p| (0..da).map(move |q| (p, q)));

    check("base-commutativity", pairs_a().all(|(p, q)| a_mul(&ea(p), &ea(q)) == a_mul(&ea(q), &ea(p))));
    check(
        "base-associativity",
        pairs_a().all(|(p, q)| (0..da).all(|r| a_mul(&a_mul(&ea(p), &ea(q)), &ea(r)) == a_mul(&ea(p), &a_mul(&ea(q), &ea(r))))),
    );
    if let Some(u) = l.base().unit() {
        check("base-unit", (0..da).all(|q| a_mul(&ea(u), &ea(q)) == ea(q)));
    }
    check(
        "module-associativity",
        pairs_a().all(|(p, q)| (0..d).all(|i| act_on(&ea(p), &act_on(&ea(q), &el(i))) == act_on(&a_mul(&ea(p), &ea(q)), &el(i)))),
    );
    if let Some(u) = l.base().unit() {
        check("module-unit", (0..d).all(|i| act_on(&ea(u), &el(i)) == el(i)));
    }
    let triples = || (0..d).flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))));
    check(
        "left-symmetry",
        triples().all(|(i, j, k)| {
            let (x, y, z) = (el(i), el(j), el(k));
            let lhs = sub(&l_mul(&l_mul(&x, &y), &z), &l_mul(&x, &l_mul(&y, &z)));
            let rhs = sub(&l_mul(&l_mul(&y, &x), &z), &l_mul(&y, &l_mul(&x, &z)));
            lhs == rhs
        }),
    );
    check(
        "anchor-derivation",
        (0..d).all(|i| {
            pairs_a().all(|(p, q)| {
                let lhs = anchor(&el(i), &a_mul(&ea(p), &ea(q)));
                let rhs: Vec<Rational> = a_mul(&anchor(&el(i), &ea(p)), &ea(q))
                    .iter()
                    .zip(a_mul(&ea(p), &anchor(&el(i), &ea(q))))
                    .map(|(s, t)| s + t)
                    .collect();
                lhs == rhs
            })
        }),
    );
    check(
        "anchor-bracket",
        (0..d).all(|i| {
            (0..d).all(|j| {
                let br = sub(&l_mul(&el(i), &el(j)), &l_mul(&el(j), &el(i)));
                (0..da).all(|p| {
                    let lhs = anchor(&br, &ea(p));
                    let rhs = sub(&anchor(&el(i), &anchor(&el(j), &ea(p))), &anchor(&el(j), &anchor(&el(i), &ea(p))));
                    lhs == rhs
                })
            })
        }),
    );
    check(
        "anchor-A-linearity",
        (0..da).all(|p| (0..d).all(|i| (0..da).all(|q| anchor(&act_on(&ea(p), &el(i)), &ea(q)) == a_mul(&ea(p), &anchor(&el(i), &ea(q)))))),
    );
    check(
        "left-compatibility",
        (0..d).all(|i| {
            (0..da).all(|p| {
                (0..d).all(|j| {
                    let lhs = l_mul(&el(i), &act_on(&ea(p), &el(j)));
                    let rhs = act_on(&ea(p), &l_mul(&el(i), &el(j)));
                    let anchor_term = act_on(&anchor(&el(i), &ea(p)), &el(j));
                    is_zero(&sub(&sub(&lhs, &rhs), &anchor_term))
                })
            })
        }),
    );
    check(
        "right-compatibility",
        (0..da).all(|p| {
            (0..d).all(|i| (0..d).all(|j| l_mul(&act_on(&ea(p), &el(i)), &el(j)) == act_on(&ea(p), &l_mul(&el(i), &el(j)))))
        }),
    );
    out
}

/// All `+1` single-entry corruptions of the product, module action and
/// anchor, labelled by the corrupted coordinate.
pub fn single_entry_corruptions(l: &LsrAlgebra) -> Vec<(String, LsrAlgebra)> {
    let (d, da) = (l.dim(), l.dim_a());
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut p = l.product().clone();
                p.set(i, j, k, p.entry(i, j, k) + q(1));
                let c = LsrAlgebra::new(l.base().clone(), l.action().to_vec(), p, l.anchor().to_vec()).unwrap();
                out.push((format!("product[{i}][{j}][{k}]"), c));
            }
        }
    }
    for p in 0..da {
        for r in 0..d {
            for c in 0..d {
                let mut action = l.action().to_vec();
                let v = action[p].get(r, c) + q(1);
                action[p].set(r, c, v);
                let alg = LsrAlgebra::new(l.base().clone(), action, l.product().clone(), l.anchor().to_vec()).unwrap();
                out.push((format!("action[{p}][{r}][{c}]"), alg));
            }
        }
    }
    for i in 0..d {
        for r in 0..da {
            for c in 0..da {
                let mut anchor = l.anchor().to_vec();
                let v = anchor[i].get(r, c) + q(1);
                anchor[i].set(r, c, v);
                let alg = LsrAlgebra::new(l.base().clone(), l.action().to_vec(), l.product().clone(), anchor).unwrap();
                out.push((format!("anchor[{i}][{r}][{c}]"), alg));
            }
        }
    }
    out
}

/// Nijenhuis residual evaluated independently on dense data.
pub fn oracle_is_nijenhuis(l: &LsrAlgebra, n: &Matrix) -> bool {
    let d = l.dim();
    let m = dense_tensor(l.product());
    let nd = dense_matrix(n);
    let mul = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    out[k] += &u[i] * &v[j] * &m[i][j][k];
                }
            }
        }
        out
    };
    let apply = |v: &[Rational]| mat_vec(&nd, v);
    let a_linear = l.action().iter().all(|a| n * a == a * n);
    a_linear
        && (0..d).all(|i| {
            (0..d).all(|j| {
                let x: Vec<Rational> = (0..d).map(|k| if k == i { q(1) } else { q(0) }).collect();
                let y: Vec<Rational> = (0..d).map(|k| if k == j { q(1) } else { q(0) }).collect();
                let lhs = mul(&apply(&x), &apply(&y));
                let inner: Vec<Rational> = mul(&apply(&x), &y).iter().zip(mul(&x, &apply(&y))).map(|(a, b)| a + b).collect();
                let rhs: Vec<Rational> =
                    apply(&inner).iter().zip(apply(&apply(&mul(&x, &y)))).map(|(a, b)| a - b).collect();
                lhs == rhs
            })
        })
}

/// Every `dim x dim` matrix with entries in `{-1, 0, 1}`.
pub fn unit_grid(rows: usize, cols: usize) -> Vec<Matrix> {
    let cells = rows * cols;
    (0..3usize.pow(cells as u32))
        .map(|mut idx| {
            let mut entries = vec![0i64; cells];
            for e in entries.iter_mut().rev() {
                *e = (idx % 3) as i64 - 1;
                idx /= 3;
            }
            Matrix::from_fn(rows, cols, |r, c| q(entries[r * cols + c]))
        })
        .collect()
}
