//! Algebraic invariants on randomly generated structures.

mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;

use rinehart::cohomology::{cohomology_dim, Complex};
use rinehart::deformation::{apply_equivalence, check_deformation, nijenhuis_trivial_deformation, FormalAutomorphism};
use rinehart::document::InputDocument;
use rinehart::linalg::{format_rational, is_zero_vec, parse_rational, q, qf};
use rinehart::operators::{check_o_operator, is_nijenhuis, is_rota_baxter, Structure};
use rinehart::representation::adjoint_rep;
use rinehart::{AnchoredAlgebra, Bilinear, Matrix};

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}

fn small_matrix(rng: &mut rand::rngs::StdRng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| small_int(rng, 1))
}

proptest! {
    #![proptest_config(cases(48))]

    #[test]
    fn generated_algebras_validate(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (l, rep) = random_instance(&mut rng, 4, 3);
        prop_assert!(l.validate().passed());
        prop_assert!(rep.validate_lsr(&l).unwrap().passed());
    }

    #[test]
    fn coboundary_squares_to_zero(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (l, rep) = random_instance(&mut rng, 3, 2);
        let c = Complex::new(&l, &rep).unwrap();
        for n in 0..=2 {
            for b in c.space(n).basis() {
                let once = c.delta_ambient(n, b);
                prop_assert!(is_zero_vec(&c.delta_ambient(n + 1, &once)), "degree {n}");
            }
        }
    }

    #[test]
    fn coboundary_squares_to_zero_over_dual_numbers(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let l = with_dual_numbers(&random_lsa(&mut rng, 2));
        let (adj, report) = adjoint_rep(&l);
        prop_assert!(report.passed());
        let c = Complex::new(&l, &adj).unwrap();
        for n in 0..=2 {
            let target = c.space(n + 1);
            for b in c.space(n).basis() {
                let once = c.delta_ambient(n, b);
                prop_assert!(target.contains(&once), "coboundary leaves the A-linear cochains in degree {n}");
                prop_assert!(is_zero_vec(&c.delta_ambient(n + 1, &once)));
            }
        }
    }

    #[test]
    fn scalar_operators_are_nijenhuis(seed in any::<u64>(), num in -3i64..=3, den in 1i64..=3) {
        let mut rng = rng(seed);
        let l = random_lsa(&mut rng, 4);
        let n = Matrix::identity(l.dim()).scale(&qf(num, den));
        prop_assert!(is_nijenhuis(&l, &n));
    }

    #[test]
    fn verdicts_and_cohomology_survive_a_change_of_basis(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let l = random_lsa(&mut rng, 3);
        let d = l.dim();
        let p = random_invertible(&mut rng, d);
        let p_inv = p.inverse().unwrap();
        let moved = l.with_product(l.product().change_basis(&p, &p_inv)).unwrap();
        let n = small_matrix(&mut rng, d, d);
        let n_moved = &(&p_inv * &n) * &p;
        prop_assert_eq!(is_nijenhuis(&l, &n), is_nijenhuis(&moved, &n_moved));
        prop_assert_eq!(is_rota_baxter(&l, &n, &q(1)), is_rota_baxter(&moved, &n_moved, &q(1)));
        let (adj, _) = adjoint_rep(&l);
        let (adj_moved, _) = adjoint_rep(&moved);
        for k in 0..=2 {
            prop_assert_eq!(cohomology_dim(&l, &adj, k).unwrap().h, cohomology_dim(&moved, &adj_moved, k).unwrap().h);
        }
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let l = random_lsa(&mut rng, 3);
        let l = if rng.gen_bool(0.5) { with_dual_numbers(&l) } else { l };
        let text = InputDocument::from_algebra(&l).to_json();
        let doc = InputDocument::parse(&text).unwrap();
        prop_assert_eq!(doc.algebra().unwrap(), l);
        prop_assert_eq!(doc.to_json(), text);
    }

    #[test]
    fn rationals_round_trip_through_text(num in -10_000i64..10_000, den in 1i64..500) {
        let r = qf(num, den);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn equivalence_round_trips_through_the_inverse(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let l = random_lsa(&mut rng, 3);
        let d = l.dim();
        let c = small_rational(&mut rng);
        let (def, _) = nijenhuis_trivial_deformation(&l, &Matrix::identity(d).scale(&c)).unwrap();
        let def = def.extended(Bilinear::from_fn(d, d, d, |_, _| (0..d).map(|_| small_int(&mut rng, 1)).collect())).unwrap();
        let phi = FormalAutomorphism::new(vec![small_matrix(&mut rng, d, d), small_matrix(&mut rng, d, d)]).unwrap();
        let (pushed, report) = apply_equivalence(&def, &phi).unwrap();
        prop_assert!(report.passed(), "{}", report);
        prop_assert_eq!(check_deformation(&pushed).passed(), check_deformation(&def).passed());
        let (back, _) = apply_equivalence(&pushed, &phi.inverse(def.order())).unwrap();
        prop_assert_eq!(back, def);
    }

    #[test]
    fn rota_baxter_weight_scales_with_the_operator(seed in any::<u64>(), c in prop_oneof![-2i64..=-1, 1i64..=2]) {
        let mut rng = rng(seed);
        let l = random_lsa(&mut rng, 3);
        let r = small_matrix(&mut rng, l.dim(), l.dim());
        let w = small_int(&mut rng, 2);
        let c = q(c);
        prop_assert_eq!(is_rota_baxter(&l, &r, &w), is_rota_baxter(&l, &r.scale(&c), &(&w * &c)));
    }

    #[test]
    fn adjoint_o_operators_are_weight_zero_rota_baxter(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let l = random_lsa(&mut rng, 3);
        let (adj, _) = adjoint_rep(&l);
        let t = small_matrix(&mut rng, l.dim(), l.dim());
        let o = check_o_operator(Structure::Lsr(&l), &adj, &t).unwrap().passed();
        prop_assert_eq!(o, is_rota_baxter(&l, &t, &q(0)));
    }
}
