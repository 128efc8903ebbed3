mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use torsion_core::apolarity::{Polynomial, TruncatedInverseSystem};
use torsion_core::homological::{free_resolution, free_resolution_with, koszul_complex, r_generators};
use torsion_core::linalg::{howell_form, kernel, HowellBasis, RationalMatrix, ResidueMatrix};
use torsion_core::{torsion, FinModule, FiniteRing, Ideal, RingSpec};

fn small_rings() -> Vec<Arc<FiniteRing>> {
    vec![
        common::build(RingSpec::zn(4)),
        common::build(RingSpec::zn(6)),
        common::build(RingSpec::zn(8)),
        common::build(RingSpec::zn(9)),
        common::build(RingSpec::zn(12)),
        common::f2xf2(),
        common::f2xf3(),
        common::dual_numbers(),
        common::build(RingSpec::poly(2, &[0, 0, 0, 1])),
        common::build(RingSpec::product(vec![RingSpec::gf(2), RingSpec::zn(4)])),
    ]
}

fn rings() -> &'static [Arc<FiniteRing>] {
    static RINGS: std::sync::OnceLock<Vec<Arc<FiniteRing>>> = std::sync::OnceLock::new();
    RINGS.get_or_init(small_rings)
}

/// Every `ℤ/n`-combination of the rows, by brute force.
fn brute_span(n: u64, ambient: usize, rows: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
    let mut span = BTreeSet::from([vec![0u64; ambient]]);
    for r in rows {
        let mut next = BTreeSet::new();
        for v in &span {
            for c in 0..n {
                next.insert(v.iter().zip(r).map(|(&a, &b)| (a + c * b) % n).collect::<Vec<_>>());
            }
        }
        span = next;
    }
    span
}

fn residue_rows() -> impl Strategy<Value = (u64, usize, Vec<Vec<u64>>)> {
    (2u64..=12, 1usize..=3, 0usize..=4).prop_flat_map(|(n, ambient, count)| {
        (Just(n), Just(ambient), prop::collection::vec(prop::collection::vec(0..n, ambient), count))
    })
}

/// A ring from the list, a module `R^c/N` over it, and a seed for further choices.
fn ring_and_module() -> impl Strategy<Value = (usize, usize, Vec<Vec<u64>>, u64)> {
    (0..rings().len(), 1usize..=2, 0usize..=2, any::<u64>()).prop_flat_map(|(r, c, k, seed)| {
        let ring = &rings()[r];
        let width = c * ring.rank();
        let n = ring.modulus();
        (Just(r), Just(c), prop::collection::vec(prop::collection::vec(0..n, width), k), Just(seed))
    })
}

fn build_module(r: usize, c: usize, rows: &[Vec<u64>]) -> FinModule {
    FinModule::free_quotient(&rings()[r], c, rows).expect("rows have free rank")
}

fn pick_ideal(ring: &Arc<FiniteRing>, seed: u64) -> Ideal {
    let ideals = ring.ideals();
    ideals[(seed % ideals.len() as u64) as usize].clone()
}

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn howell_form_is_canonical_and_spans((n, ambient, rows) in residue_rows(), mix in any::<u64>()) {
        let h = HowellBasis::from_rows(n, ambient, &rows);
        let span = brute_span(n, ambient, &rows);
        prop_assert_eq!(h.order(), span.len() as u128);
        for v in &span {
            prop_assert!(h.contains(v));
        }
        // Any generating set of the same span gives the same form.
        let mut shuffled: Vec<Vec<u64>> = rows.iter().rev().cloned().collect();
        if let Some(first) = rows.first() {
            let c = mix % n;
            for r in shuffled.iter_mut() {
                *r = r.iter().zip(first).map(|(&a, &b)| (a + c * b) % n).collect();
            }
            shuffled.push(first.clone());
        }
        prop_assert_eq!(HowellBasis::from_rows(n, ambient, &shuffled), h.clone());
        let m = ResidueMatrix::from_rows(n, ambient, &rows).unwrap();
        prop_assert_eq!(howell_form(&m), h);
    }

    #[test]
    fn kernel_is_the_full_solution_set((n, ambient, rows) in residue_rows()) {
        prop_assume!(!rows.is_empty());
        let m = ResidueMatrix::from_rows(n, ambient, &rows).unwrap();
        let k = kernel(&m);
        let mut solutions = 0u128;
        for v in brute_span(n, rows.len(), &(0..rows.len()).map(|i| {
            let mut e = vec![0; rows.len()];
            e[i] = 1;
            e
        }).collect::<Vec<_>>()) {
            let zero = m.apply(&v).iter().all(|&x| x == 0);
            prop_assert_eq!(zero, k.contains(&v));
            solutions += zero as u128;
        }
        prop_assert_eq!(k.order(), solutions);
    }

    #[test]
    fn rational_rank_plus_nullity(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 1..=4)) {
        let a = RationalMatrix::from_i64(&rows);
        let k = a.kernel();
        prop_assert_eq!(a.rank() + k.len(), a.ncols());
        for x in &k {
            prop_assert!(a.apply(x).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn ideal_powers_multiply(r in 0..10usize, seed in any::<u64>(), a in 1usize..=3, b in 1usize..=3) {
        let ring = &rings()[r];
        let i = pick_ideal(ring, seed);
        prop_assert_eq!(i.power(a).product(&i.power(b)).unwrap(), i.power(a + b));
        let s = i.power_stabilization_index();
        prop_assert_eq!(i.power(s), i.power(s + a));
        prop_assert!(i.power(s).is_idempotent());
    }

    #[test]
    fn ideal_product_matches_elementwise_products(r in 0..10usize, s1 in any::<u64>(), s2 in any::<u64>()) {
        let ring = &rings()[r];
        let (i, j) = (pick_ideal(ring, s1), pick_ideal(ring, s2));
        let products: Vec<Vec<u64>> =
            i.elements().iter().flat_map(|x| j.elements().into_iter().map(move |y| (x.clone(), y))).map(|(x, y)| ring.mul(&x, &y)).collect();
        let oracle = Ideal::generate(ring, &products);
        prop_assert_eq!(i.product(&j).unwrap(), oracle);
    }

    #[test]
    fn radical_is_the_nilpotent_preimage(r in 0..10usize, seed in any::<u64>()) {
        let ring = &rings()[r];
        let i = pick_ideal(ring, seed);
        let rad = i.radical();
        prop_assert!(i.is_subset_of(&rad));
        prop_assert_eq!(rad.radical(), rad.clone());
        let big = ring.order();
        for x in ring.elements() {
            prop_assert_eq!(rad.contains(&x), i.contains(&ring.pow(&x, big)));
        }
    }

    #[test]
    fn gamma_is_idempotent_and_inside_gamma_bar((r, c, rows, seed) in ring_and_module()) {
        let m = build_module(r, c, &rows);
        let i = pick_ideal(&rings()[r], seed);
        let g = torsion::gamma(&m, &i);
        let (gm, inclusion) = m.submodule_as_module(&g);
        prop_assert_eq!(inclusion.image_of(&torsion::gamma(&gm, &i)), g.clone());
        prop_assert!(g.is_subset_of(&torsion::gamma_bar(&m, &i)));
        // Γ_I(M) is exactly the set of elements killed by a power of I.
        let s = rings()[r].order() as usize;
        let power = i.power(s);
        for v in m.submodule_elements(&m.whole()) {
            let killed = power.group_generators().iter().all(|a| m.normalize(&m.act(a, &v)).iter().all(|&x| x == 0));
            prop_assert_eq!(killed, g.contains(&v));
        }
    }

    #[test]
    fn gamma_is_left_exact((r, c, rows, seed) in ring_and_module(), gens in prop::collection::vec(any::<u64>(), 0..=2)) {
        let m = build_module(r, c, &rows);
        let i = pick_ideal(&rings()[r], seed);
        let elements = m.elements();
        let picked: Vec<Vec<u64>> = gens.iter().map(|g| elements[(g % elements.len() as u64) as usize].clone()).collect();
        let n = m.span(&picked).unwrap();
        let (nm, inclusion) = m.submodule_as_module(&n);
        prop_assert_eq!(inclusion.image_of(&torsion::gamma(&nm, &i)), torsion::gamma(&m, &i).meet(&n));
    }

    #[test]
    fn koszul_differentials_square_to_zero(r in 0..10usize, picks in prop::collection::vec(any::<u64>(), 1..=3)) {
        let ring = &rings()[r];
        let elements = ring.elements();
        let seq: Vec<Vec<u64>> = picks.iter().map(|p| elements[(p % elements.len() as u64) as usize].clone()).collect();
        let k = koszul_complex(ring, &seq);
        prop_assert!(k.squares_to_zero());
        prop_assert_eq!(k.ranks().iter().sum::<usize>(), 1 << seq.len());
    }

    #[test]
    fn resolutions_are_exact_and_square_to_zero((r, c, rows, _seed) in ring_and_module()) {
        let m = build_module(r, c, &rows);
        let res = free_resolution(&m, 2);
        prop_assert!(res.complex().squares_to_zero());
        prop_assert!(res.is_exact());
    }

    #[test]
    fn ext_and_tor_do_not_depend_on_generator_order((r, c, rows, seed) in ring_and_module()) {
        let ring = &rings()[r];
        let a = FinModule::cyclic(ring, &pick_ideal(ring, seed));
        let m = build_module(r, c, &rows);
        let gens = r_generators(&a, &a.whole());
        let mut reversed = gens.clone();
        reversed.reverse();
        reversed.push(a.normalize(&vec![0; a.rank()]));
        let one = free_resolution_with(&a, &gens, 2).unwrap();
        let two = free_resolution_with(&a, &reversed, 2).unwrap();
        for q in 0..=2 {
            let (x, y) = (one.ext(q, &m).unwrap(), two.ext(q, &m).unwrap());
            prop_assert_eq!(x.module.abelian_invariants(), y.module.abelian_invariants());
            let (x, y) = (one.tor(q, &m).unwrap(), two.tor(q, &m).unwrap());
            prop_assert_eq!(x.module.abelian_invariants(), y.module.abelian_invariants());
        }
    }

    #[test]
    fn higher_ext_vanishes_over_products_of_fields(seed in any::<u64>(), rows in prop::collection::vec(prop::collection::vec(0u64..6, 4), 0..=2)) {
        let ring = common::f2xf3();
        let a = FinModule::cyclic(&ring, &pick_ideal(&ring, seed));
        let m = FinModule::free_quotient(&ring, 2, &rows).unwrap();
        let res = free_resolution(&a, 2);
        for q in 1..=2 {
            prop_assert!(res.ext(q, &m).unwrap().is_zero());
            prop_assert!(res.tor(q, &m).unwrap().is_zero());
        }
    }

    #[test]
    fn contraction_is_a_module_action(
        a in prop::collection::vec(0u32..=2, 2),
        g in prop::collection::vec(0u32..=2, 2),
        f in prop::collection::vec((prop::collection::vec(0u32..=4, 2), -5i64..=5), 1..=4),
    ) {
        let f = Polynomial::from_terms(2, f.into_iter().map(|(e, c)| (e, rational(c))).collect()).unwrap();
        let xa = Polynomial::monomial(&a);
        let xg = Polynomial::monomial(&g);
        let sum: Vec<u32> = a.iter().zip(&g).map(|(x, y)| x + y).collect();
        prop_assert_eq!(xa.contract_into(&xg.contract_into(&f)), Polynomial::monomial(&sum).contract_into(&f));
        prop_assert_eq!(xa.mul(&xg).contract_into(&f), Polynomial::monomial(&sum).contract_into(&f));
        // Bilinearity in the second argument.
        let doubled = f.scale(&rational(2));
        prop_assert_eq!(xa.contract_into(&doubled), xa.contract_into(&f).scale(&rational(2)));
    }

    #[test]
    fn truncated_contraction_matches_untruncated(
        a in 0u32..=3,
        f in prop::collection::vec((0u32..=5, -5i64..=5), 1..=4),
    ) {
        let sys = TruncatedInverseSystem::new(1, 5);
        let f = Polynomial::from_terms(1, f.into_iter().map(|(e, c)| (vec![e], rational(c))).collect()).unwrap();
        let g = Polynomial::monomial(&[a]);
        let coords = sys.coordinates(&f).unwrap();
        prop_assert_eq!(sys.polynomial(&sys.contract(&g, &coords)), g.contract_into(&f));
    }
}

/// Iterated formal differentiation of a one-variable polynomial given by
/// dense integer coefficients.
fn differentiate(coeffs: &[i64], times: u32) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = coeffs.iter().map(|&x| BigInt::from(x)).collect();
    for _ in 0..times {
        if c.is_empty() {
            break;
        }
        c = c.iter().enumerate().skip(1).map(|(k, v)| v * BigInt::from(k)).collect();
    }
    c
}

#[test]
fn contraction_agrees_with_differentiation_on_200_instances() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let len = rng.gen_range(1..=8);
        let coeffs: Vec<i64> = (0..len).map(|_| rng.gen_range(-9..=9)).collect();
        let a = rng.gen_range(0..=5u32);
        let f =
            Polynomial::from_terms(1, coeffs.iter().enumerate().map(|(k, &c)| (vec![k as u32], rational(c))).collect())
                .unwrap();
        let got = Polynomial::monomial(&[a]).contract_into(&f);
        let expected = differentiate(&coeffs, a);
        for (k, c) in expected.iter().enumerate() {
            let have = got.terms().get(&vec![k as u32]).cloned().unwrap_or_else(BigRational::zero);
            assert_eq!(have, BigRational::from_integer(c.clone()), "x^{a} ∘ {coeffs:?} at degree {k}");
        }
        assert!(got.terms().keys().all(|e| (e[0] as usize) < expected.len()));
    }
}
