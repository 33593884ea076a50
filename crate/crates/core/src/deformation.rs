//! Formal deformations of the multiplication of a left-symmetric Rinehart
//! algebra, truncated at a finite order, with the anchor kept fixed.
//!
//! Coboundaries here are taken with respect to the adjoint pair. For that
//! pair the first-order part of the left-symmetry identity of `. + t m` is
//! `-delta(m)`, so a deformation of order `n` extends to order `n + 1`
//! exactly when its obstruction is `delta(m_{n+1})`.

use serde::Serialize;

use crate::algebra::{AnchoredAlgebra, LsrAlgebra};
use crate::cohomology::{bilinear_to_ambient, linear_map_to_ambient, Cochain, Complex, Layout};
use crate::error::{Error, Result};
use crate::linalg::{add_vec, is_zero_vec, q, qf, rank_of_vectors, sub_vec, unit_vec, zero_vec, Matrix, Rational};
use crate::operators::{check_nijenhuis, deformed_product};
use crate::report::{a, e, Report};
use crate::representation::{adjoint_rep, RepresentationBundle};
use crate::tensor::Bilinear;

/// `m_t = m_0 + t m_1 + ... + t^n m_n` with `m_0` the product of `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedDeformation {
    base: LsrAlgebra,
    terms: Vec<Bilinear>,
}

impl TruncatedDeformation {
    pub fn new(base: LsrAlgebra, terms: Vec<Bilinear>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Precondition("a deformation needs at least one term".into()));
        }
        let d = base.dim();
        for (i, m) in terms.iter().enumerate() {
            crate::algebra::check_bilinear_shape(&format!("m{}", i + 1), m, d, d, d)?;
        }
        Ok(TruncatedDeformation { base, terms })
    }

    pub fn base(&self) -> &LsrAlgebra {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `m_1..m_n`.
    pub fn terms(&self) -> &[Bilinear] {
        &self.terms
    }

    /// `m_k`, with `m_0` the base product.
    pub fn term(&self, k: usize) -> &Bilinear {
        if k == 0 {
            self.base.product()
        } else {
            &self.terms[k - 1]
        }
    }

    /// The product `m_t` at a given value of the parameter.
    pub fn specialize(&self, t: &Rational) -> Bilinear {
        let mut out = self.base.product().clone();
        let mut power = t.clone();
        for m in &self.terms {
            out = out.add(&m.scale(&power));
            power *= t;
        }
        out
    }

    /// The same deformation with `m_{n+1}` appended.
    pub fn extended(&self, next: Bilinear) -> Result<Self> {
        let mut terms = self.terms.clone();
        terms.push(next);
        TruncatedDeformation::new(self.base.clone(), terms)
    }
}

/// `Phi_t = Id + t phi_1 + ... + t^n phi_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalAutomorphism {
    maps: Vec<Matrix>,
}

impl FormalAutomorphism {
    pub fn new(maps: Vec<Matrix>) -> Result<Self> {
        if let Some(first) = maps.first() {
            let d = first.rows();
            for (i, phi) in maps.iter().enumerate() {
                if (phi.rows(), phi.cols()) != (d, d) {
                    return Err(Error::dimension(format!("phi{}", i + 1), format!("{d}x{d}"), format!("{}x{}", phi.rows(), phi.cols())));
                }
            }
        }
        Ok(FormalAutomorphism { maps })
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        FormalAutomorphism { maps: vec![Matrix::zeros(dim, dim); order] }
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// The series inverse truncated at `order`.
    pub fn inverse(&self, order: usize) -> Self {
        let d = self.maps.first().map_or(0, Matrix::rows);
        FormalAutomorphism { maps: series_inverse(&self.series(d, order), order)[1..].to_vec() }
    }

    /// `phi_0 = Id, phi_1, ..., phi_order`, padded with zeros.
    fn series(&self, dim: usize, order: usize) -> Vec<Matrix> {
        let mut out = vec![Matrix::identity(dim)];
        out.extend((1..=order).map(|k| self.maps.get(k - 1).cloned().unwrap_or_else(|| Matrix::zeros(dim, dim))));
        out
    }
}

/// `psi_0 = Id`, `psi_k = -sum_{i=1..k} phi_i psi_{k-i}`.
fn series_inverse(phi: &[Matrix], order: usize) -> Vec<Matrix> {
    let d = phi[0].rows();
    let mut psi = vec![Matrix::identity(d)];
    for k in 1..=order {
        let mut acc = Matrix::zeros(d, d);
        for i in 1..=k {
            acc = &acc - &(&phi[i] * &psi[k - i]);
        }
        psi.push(acc);
    }
    psi
}

/// `p(q(x,y),z) - p(x,q(y,z)) - p(q(y,x),z) + p(y,q(x,z))` on basis vectors.
fn associator_pair(p: &Bilinear, r: &Bilinear, x: usize, y: usize, z: usize) -> Vec<Rational> {
    let d = p.out_dim();
    let (ex, ey, ez) = (unit_vec(d, x), unit_vec(d, y), unit_vec(d, z));
    let mut v = sub_vec(&p.apply(r.basis_product(x, y), &ez), &p.apply(&ex, r.basis_product(y, z)));
    v = sub_vec(&v, &p.apply(r.basis_product(y, x), &ez));
    add_vec(&v, &p.apply(&ey, r.basis_product(x, z)))
}

fn triples(d: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..d).flat_map(move |x| (0..d).flat_map(move |y| (0..d).map(move |z| (x, y, z))))
}

/// `sum_{i+j=k, lo<=i,j} LS(m_i, m_j)` at a basis triple.
fn order_residual(d: &TruncatedDeformation, k: usize, lo: usize, x: usize, y: usize, z: usize) -> Vec<Rational> {
    let mut acc = zero_vec(d.base.dim());
    for i in lo..=k - lo {
        acc = add_vec(&acc, &associator_pair(d.term(i), d.term(k - i), x, y, z));
    }
    acc
}

/// `m(a x, y) = a m(x, y)` and `m(x, a y) = a m(x, y)` on basis tuples.
fn scan_a_bilinearity(report: &mut Report, name: &str, l: &LsrAlgebra, m: &Bilinear) -> bool {
    let d = l.dim();
    let act = l.action();
    let cases = (0..l.dim_a()).flat_map(|p| (0..d).flat_map(move |i| (0..d).map(move |j| (p, i, j)))).flat_map(|(p, i, j)| {
        let am = act[p].apply(m.basis_product(i, j));
        let left = sub_vec(&m.apply(&act[p].column(i), &unit_vec(d, j)), &am);
        let right = sub_vec(&m.apply(&unit_vec(d, i), &act[p].column(j)), &am);
        [(vec![a(p), e(i), e(j), "left".into()], left), (vec![a(p), e(i), e(j), "right".into()], right)]
    });
    report.scan(name, cases)
}

/// The deformation identity at every order `1..=n` on all basis triples,
/// and A-bilinearity of each term.
pub fn check_deformation(d: &TruncatedDeformation) -> Report {
    let dim = d.base.dim();
    let mut report = Report::new(format!("deformation of order {}", d.order()));
    for k in 1..=d.order() {
        let cases = triples(dim).map(|(x, y, z)| (vec![e(x), e(y), e(z)], order_residual(d, k, 0, x, y, z)));
        report.scan(format!("order-{k}"), cases);
    }
    for (i, m) in d.terms.iter().enumerate() {
        scan_a_bilinearity(&mut report, &format!("m{}-A-bilinearity", i + 1), &d.base, m);
    }
    report
}

fn require_deformation(d: &TruncatedDeformation) -> Result<()> {
    let r = check_deformation(d);
    if r.passed() {
        Ok(())
    } else {
        Err(Error::invalid("deformation", &r))
    }
}

/// Adjoint pair and its complex; the coboundary formula is used even when
/// the pair fails to validate, which only happens for nonzero anchors.
fn with_adjoint_complex<T>(l: &LsrAlgebra, f: impl FnOnce(&Complex, &RepresentationBundle) -> T) -> T {
    let (adj, _) = adjoint_rep(l);
    let complex = Complex::new_unchecked(l, &adj);
    f(&complex, &adj)
}

/// The first nonzero term as a degree-2 cochain of the adjoint pair, with a
/// report asserting that it is a cocycle.
pub fn infinitesimal(d: &TruncatedDeformation) -> Result<Option<(Cochain, Report)>> {
    require_deformation(d)?;
    let Some((i, m)) = d.terms.iter().enumerate().find(|(_, m)| !m.is_zero()) else {
        return Ok(None);
    };
    with_adjoint_complex(&d.base, |c, _| {
        let omega = bilinear_to_ambient(m);
        let cochain = c.space(2).coordinates(&omega)?;
        let delta = c.delta_ambient(2, &omega);
        let mut report = Report::new(format!("{}-infinitesimal", i + 1));
        report.scan("cocycle", c.layout(3).blocks(&delta));
        Ok(Some((cochain, report)))
    })
}

/// Pushes `m_t` forward along `Phi_t`: `Phi_t m_t(Phi_t^{-1} x, Phi_t^{-1} y)`,
/// truncated at the order of `d`. The report checks that every map is
/// A-linear, that `m_1 - m~_1 = delta(phi_1)`, and that the result is again
/// a deformation. Pulling back is pushing forward along `phi.inverse(n)`.
pub fn apply_equivalence(d: &TruncatedDeformation, phi: &FormalAutomorphism) -> Result<(TruncatedDeformation, Report)> {
    let (n, dim) = (d.order(), d.base.dim());
    if phi.order() < n {
        return Err(Error::Precondition(format!("automorphism has order {} below the deformation order {n}", phi.order())));
    }
    if phi.maps.first().is_some_and(|m| m.rows() != dim) {
        return Err(Error::dimension("phi", format!("{dim}x{dim}"), format!("{}x{}", phi.maps[0].rows(), phi.maps[0].cols())));
    }
    let mut report = Report::new("equivalent deformation");
    for (i, m) in phi.maps.iter().enumerate() {
        let name = format!("phi{}-A-linearity", i + 1);
        if !crate::operators::scan_a_linearity(&mut report, &name, m, d.base.action(), d.base.action()) {
            return Err(Error::invalid("formal automorphism", &report));
        }
    }
    let f = phi.series(dim, n);
    let g = series_inverse(&f, n);
    let terms: Vec<Bilinear> = (1..=n)
        .map(|k| {
            let mut acc = Bilinear::square(dim);
            for ia in 0..=k {
                for ib in 0..=k - ia {
                    for ic in 0..=k - ia - ib {
                        let id = k - ia - ib - ic;
                        acc = acc.add(&d.term(ib).compose(&f[ia], &g[ic], &g[id]));
                    }
                }
            }
            acc
        })
        .collect();
    let result = TruncatedDeformation::new(d.base.clone(), terms)?;
    let delta = with_adjoint_complex(&d.base, |c, _| {
        c.delta_ambient(1, &linear_map_to_ambient(f.get(1).unwrap_or(&Matrix::zeros(dim, dim))))
    });
    let diff = sub_vec(&bilinear_to_ambient(d.term(1)), &bilinear_to_ambient(result.term(1)));
    let layout = Layout::new(dim, dim, 2);
    report.scan("order-one-relation", layout.blocks(&sub_vec(&diff, &delta)));
    report.flag("deformation-preserved", check_deformation(d).passed() == check_deformation(&result).passed(), None);
    Ok((result, report))
}

fn obstruction_ambient(d: &TruncatedDeformation) -> Vec<Rational> {
    let n = d.order();
    Layout::new(d.base.dim(), d.base.dim(), 3).assemble(|combo, z| order_residual(d, n + 1, 1, combo[0], combo[1], z))
}

/// `Obs(x,y,z) = sum_{i+j=n+1, i,j>0} LS(m_i, m_j)(x,y,z)` as a degree-3
/// ambient cochain of the adjoint pair, with reports of its cocycle
/// property and its A-linearity.
pub fn obstruction(d: &TruncatedDeformation) -> Result<(Vec<Rational>, Report)> {
    require_deformation(d)?;
    let obs = obstruction_ambient(d);
    let mut report = Report::new(format!("obstruction at order {}", d.order() + 1));
    with_adjoint_complex(&d.base, |c, _| {
        report.flag("A-linearity", c.space(3).contains(&obs), None);
        report.scan("cocycle", c.layout(4).blocks(&c.delta_ambient(3, &obs)));
    });
    Ok((obs, report))
}

/// Columns `delta(b)` for a basis `b` of the A-bilinear 2-cochains.
fn coboundaries_of_two_cochains(c: &Complex) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let space = c.space(2);
    let images = space.basis().iter().map(|b| c.delta_ambient(2, b)).collect();
    (space.basis().to_vec(), images)
}

/// Whether the obstruction is a coboundary of an A-bilinear 2-cochain,
/// decided by comparing ranks.
pub fn obstruction_class_vanishes(d: &TruncatedDeformation) -> Result<bool> {
    let (obs, _) = obstruction(d)?;
    Ok(with_adjoint_complex(&d.base, |c, _| {
        let (_, mut images) = coboundaries_of_two_cochains(c);
        let r = rank_of_vectors(&images);
        images.push(obs);
        rank_of_vectors(&images) == r
    }))
}

/// A next term `m_{n+1}` with `delta(m_{n+1}) = Obs`, or `None` when the
/// obstruction is not a coboundary. A zero obstruction gives the zero term.
/// The returned term is verified to extend `d`.
pub fn try_extend(d: &TruncatedDeformation) -> Result<Option<Bilinear>> {
    let (obs, _) = obstruction(d)?;
    let dim = d.base.dim();
    if is_zero_vec(&obs) {
        return Ok(Some(Bilinear::square(dim)));
    }
    let solution = with_adjoint_complex(&d.base, |c, _| {
        let (basis, images) = coboundaries_of_two_cochains(c);
        let system = Matrix::from_columns(obs.len(), &images);
        system.solve_affine(&obs).map(|(x, _)| {
            let mut v = zero_vec(dim * dim * dim);
            for (coef, b) in x.iter().zip(&basis) {
                v = add_vec(&v, &crate::linalg::scale_vec(coef, b));
            }
            Bilinear::from_flat(dim, dim, dim, v)
        })
    });
    if let Some(next) = &solution {
        let extended = d.extended(next.clone())?;
        let r = check_deformation(&extended);
        if !r.passed() {
            return Err(Error::Internal(format!("extension failed verification: {r}")));
        }
    }
    Ok(solution)
}

/// Checks for `. + t m` being a deformation for every `t`: the cocycle
/// condition written out, the left-symmetry of `m`, and (for a nonzero
/// anchor) that the anchor kills the commutator of `m`. The algebra is also
/// validated at `t = 1, 2, 1/2`; two nonzero values already force every
/// coefficient of the quadratic identity to vanish.
pub fn one_param_from_cocycle(l: &LsrAlgebra, m: &Bilinear) -> Result<Report> {
    let dim = l.dim();
    crate::algebra::check_bilinear_shape("m", m, dim, dim, dim)?;
    let mut pre = Report::new("one-parameter family");
    if !scan_a_bilinearity(&mut pre, "A-bilinearity", l, m) {
        return Err(Error::invalid("2-cochain", &pre));
    }
    let p = l.product();
    let bracket = p.commutator();
    let mut report = Report::new("one-parameter deformation");
    let closed = triples(dim).map(|(x, y, z)| {
        let (ex, ey, ez) = (unit_vec(dim, x), unit_vec(dim, y), unit_vec(dim, z));
        let mut v = p.apply(&ex, m.basis_product(y, z));
        v = sub_vec(&v, &p.apply(&ey, m.basis_product(x, z)));
        v = add_vec(&v, &p.apply(m.basis_product(y, x), &ez));
        v = sub_vec(&v, &p.apply(m.basis_product(x, y), &ez));
        v = add_vec(&v, &m.apply(&ex, p.basis_product(y, z)));
        v = sub_vec(&v, &m.apply(&ey, p.basis_product(x, z)));
        v = sub_vec(&v, &m.apply(bracket.basis_product(x, y), &ez));
        (vec![e(x), e(y), e(z)], v)
    });
    let mut expected = report.scan("2-closed", closed);
    let omega = triples(dim).map(|(x, y, z)| (vec![e(x), e(y), e(z)], associator_pair(m, m, x, y, z)));
    expected &= report.scan("omega-bracket", omega);
    if l.anchor().iter().any(|a| !a.is_zero()) {
        let mc = m.commutator();
        let cases = (0..dim).flat_map(|x| (0..dim).map(move |y| (x, y))).flat_map(|(x, y)| {
            crate::algebra::column_cases(vec![e(x), e(y)], l.anchor_at(mc.basis_product(x, y)), a)
        });
        expected &= report.scan("anchor-commutator", cases);
    }
    let mut all = true;
    for t in [q(1), q(2), qf(1, 2)] {
        let s = l.with_product(p.add(&m.scale(&t)))?;
        let ok = s.validate().passed();
        all &= ok;
        report.flag(format!("specialization t={t}"), ok, None);
    }
    report.flag("consistency", expected == all, None);
    Ok(report)
}

/// The order-one deformation `m_1 = delta(N)` generated by a Nijenhuis
/// operator, with the identity `(Id + tN)(x .t y) = (Id + tN)x . (Id + tN)y`
/// checked at `t = 1, 2, 1/2`.
pub fn nijenhuis_trivial_deformation(l: &LsrAlgebra, n: &Matrix) -> Result<(TruncatedDeformation, Report)> {
    let nij = check_nijenhuis(l, n)?;
    if !nij.passed() {
        return Err(Error::invalid("Nijenhuis operator", &nij));
    }
    let dim = l.dim();
    let d = TruncatedDeformation::new(l.clone(), vec![deformed_product(l.product(), n)])?;
    let mut report = Report::new("trivial deformation from a Nijenhuis operator");
    report.absorb("", check_deformation(&d));
    let p = l.product();
    for t in [q(1), q(2), qf(1, 2)] {
        let phi = &Matrix::identity(dim) + &n.scale(&t);
        let mt = d.specialize(&t);
        let cases = (0..dim).flat_map(|x| (0..dim).map(move |y| (x, y))).map(|(x, y)| {
            let r = sub_vec(&phi.apply(mt.basis_product(x, y)), &p.apply(&phi.column(x), &phi.column(y)));
            (vec![e(x), e(y)], r)
        });
        report.scan(format!("homomorphism t={t}"), cases);
    }
    Ok((d, report))
}

#[derive(Debug, Clone, Serialize)]
pub struct RigidityCertificate {
    pub h2: usize,
    pub rigid_hint: bool,
    pub report: Report,
}

/// Second cohomology of the adjoint pair. Vanishing is sufficient for every
/// deformation to be trivial, not necessary.
pub fn rigidity_certificate(l: &LsrAlgebra) -> Result<RigidityCertificate> {
    let (adj, adj_report) = adjoint_rep(l);
    if !adj_report.passed() {
        return Err(Error::invalid("adjoint representation", &adj_report));
    }
    let dims = crate::cohomology::cohomology_dim(l, &adj, 2)?;
    let mut report = Report::new("rigidity certificate");
    let rigid_hint = report.flag("h2-vanishes", dims.h == 0, Some(format!("h2={}", dims.h)));
    report.note("h2 = 0 is sufficient for rigidity, not necessary");
    Ok(RigidityCertificate { h2: dims.h, rigid_hint, report })
}
