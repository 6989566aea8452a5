mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use polyideal::certificates::{discussion_order, polyomino_ideal};
use polyideal::grid::Vertex;
use polyideal::groebner::{reduced_groebner_basis, saturate_by_all_variables, Budget, SaturationRoute};
use polyideal::harness::enumerate_fixed;
use polyideal::lattice::{exponent_lattice, is_prime_binomial, lattice_ideal, saturate_lattice, IntMatrix, IntegerLattice};
use proptest::prelude::*;

fn transpose(a: &IntMatrix) -> IntMatrix {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|c| a.iter().map(|r| r[c].clone()).collect()).collect()
}

/// Gram determinant of a row basis: the squared covolume.
fn gram(basis: &IntMatrix) -> BigInt {
    if basis.is_empty() {
        return BigInt::one();
    }
    det(&mul(basis, &transpose(basis)))
}

fn int_rows() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(m, n)| {
        proptest::collection::vec(proptest::collection::vec(-6i64..=6, n), m)
            .prop_map(|rows| int_matrix(&rows))
    })
}

fn check_lattice(l: &IntegerLattice) -> Check {
    let sat = saturate_lattice(l);
    ensure(sat.rank() == l.rank(), || "saturation changed the rank".into())?;
    ensure(sat.contains_lattice(l), || "L not inside Sat(L)".into())?;
    ensure(saturate_lattice(&sat) == sat, || "saturation not idempotent".into())?;
    ensure(sat.is_saturated(), || "Sat(L) not saturated".into())?;
    let product: BigInt = l.elementary_divisors().iter().product();
    ensure(product == l.saturation_index(), || "index differs from the divisor product".into())?;
    // [Sat(L) : L]^2 is the ratio of Gram determinants.
    let (gl, gs) = (gram(&l.basis), gram(&sat.basis));
    ensure((&gl % &gs).is_zero(), || "Gram ratio not integral".into())?;
    let ratio = &gl / &gs;
    let root = ratio.sqrt();
    ensure(&root * &root == ratio && root == l.saturation_index(), || {
        format!("index {} but Gram ratio {ratio}", l.saturation_index())
    })
}

#[test]
fn polyomino_lattices_up_to_six_cells() {
    for n in 1..=6 {
        for p in enumerate_fixed(n).unwrap() {
            let rows = binomial_rows(&p);
            check_normal_forms(&rows).unwrap_or_else(|e| panic!("{}: {e}", p.to_inline()));
            let l = exponent_lattice(&polyomino_ideal(&p).presentation()).unwrap();
            check_lattice(&l).unwrap_or_else(|e| panic!("{}: {e}", p.to_inline()));
        }
    }
}

#[test]
fn saturation_criterion_never_contradicts_the_oracle() {
    // I prime ⇐ L saturated and I = I : (∏ x)^∞; both sides decided independently.
    let budget = Budget::default();
    let mut agreeing = 0;
    for n in 1..=5 {
        for p in enumerate_fixed(n).unwrap() {
            let ideal = polyomino_ideal(&p).presentation();
            if ideal.is_zero() {
                continue;
            }
            let order = discussion_order(&p);
            let gb = reduced_groebner_basis(&ideal, &order, &budget).unwrap();
            let sat = saturate_by_all_variables(&ideal, SaturationRoute::Auto, &budget).unwrap();
            let sat_gb = reduced_groebner_basis(&sat, &order, &budget).unwrap();
            let closed = sat_gb.elements.iter().all(|g| remainder(g, &gb.elements, &order).is_zero());
            let l = exponent_lattice(&ideal).unwrap();
            let saturated = gram(&l.basis) == gram(&saturate_lattice(&l).basis);
            let verdict = is_prime_binomial(&ideal, &budget).unwrap();
            if closed && saturated {
                assert!(verdict.is_prime(), "{}: {verdict}", p.to_inline());
                agreeing += 1;
            }
        }
    }
    assert!(agreeing > 50);
}

#[test]
fn lattice_ideal_contains_the_polyomino_ideal() {
    let budget = Budget::default();
    for n in 1..=5 {
        for p in enumerate_fixed(n).unwrap() {
            let ideal = polyomino_ideal(&p).presentation();
            if ideal.is_zero() {
                continue;
            }
            let l = exponent_lattice(&ideal).unwrap();
            let big = lattice_ideal(&l, &ideal.ambient, &budget).unwrap();
            let order = discussion_order(&p);
            let gb = reduced_groebner_basis(&big, &order, &budget).unwrap();
            for g in &ideal.generators {
                assert!(remainder(g, &gb.elements, &order).is_zero(), "{}", p.to_inline());
            }
        }
    }
}

#[test]
fn non_saturated_lattice_gives_a_witness() {
    // x^2 - y^2 has lattice 2(e1 - e2); x - y is the witness.
    let x = Vertex::new(1, 1);
    let y = Vertex::new(2, 1);
    let f = polyideal::polyring::Polynomial::binomial(
        polyideal::polyring::Monomial::from_pairs([(x, 2)]),
        polyideal::polyring::Monomial::from_pairs([(y, 2)]),
    );
    let ideal = polyideal::groebner::IdealPresentation::new(vec![f]);
    let verdict = is_prime_binomial(&ideal, &Budget::default()).unwrap();
    assert!(!verdict.is_prime() && !verdict.is_inconclusive());
    let l = exponent_lattice(&ideal).unwrap();
    assert_eq!(l.saturation_index(), BigInt::from(2));
    check_lattice(&l).unwrap();
}

proptest! {
    #[test]
    fn normal_forms_of_random_matrices(a in int_rows()) {
        let r = check_normal_forms(&a);
        prop_assert!(r.is_ok(), "{:?}: {:?}", a, r);
    }

    #[test]
    fn random_lattices(a in int_rows()) {
        let n = a[0].len();
        let vars: Vec<Vertex> = (1..=n as u32).map(|k| Vertex::new(k, 1)).collect();
        let l = IntegerLattice::from_rows(vars, a.clone());
        for row in &a {
            prop_assert!(l.contains(row));
        }
        let r = check_lattice(&l);
        prop_assert!(r.is_ok(), "{:?}: {:?}", a, r);
        let scaled: IntMatrix = l.basis.iter().map(|r| r.iter().map(|x| x * 3).collect()).collect();
        let l3 = IntegerLattice::from_rows(l.variables.clone(), scaled);
        let expected = BigInt::from(3).pow(l.rank() as u32) * l.saturation_index();
        prop_assert_eq!(l3.saturation_index().abs(), expected);
    }
}
