#![allow(dead_code)]

use std::sync::Arc;

use torsion_core::exec::Execution;
use torsion_core::harness::{FamilyBounds, FamilyFilter, ModuleFamily};
use torsion_core::ring::{FiniteRing, Ideal, RingSpec};

pub fn build(spec: RingSpec) -> Arc<FiniteRing> {
    spec.build().expect("valid ring spec")
}

pub fn f2xf2() -> Arc<FiniteRing> {
    build(RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(2)]))
}

pub fn f2xf3() -> Arc<FiniteRing> {
    build(RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(3)]))
}

pub fn f2xf3xf5() -> Arc<FiniteRing> {
    build(RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(3), RingSpec::gf(5)]))
}

/// `F_2[x]/(x^2)`.
pub fn dual_numbers() -> Arc<FiniteRing> {
    build(RingSpec::poly(2, &[0, 0, 1]))
}

/// The rings used by the radical sweeps.
pub fn radical_sweep_rings() -> Vec<Arc<FiniteRing>> {
    vec![build(RingSpec::zn(4)), build(RingSpec::zn(8)), build(RingSpec::zn(9)), f2xf2(), dual_numbers()]
}

fn raw(modulus: u64, relations: &[Vec<u64>], table: Vec<Vec<Vec<u64>>>, label: &str) -> Arc<FiniteRing> {
    let rank = table.len();
    let mut unit = vec![0; rank];
    unit[0] = 1;
    Arc::new(FiniteRing::new(modulus, relations, table, unit, label).expect("valid structure constants"))
}

/// Local rings of order 8 that are not quotients of a one-variable
/// polynomial ring over a residue ring.
pub fn non_monogenic_order_8() -> Vec<Arc<FiniteRing>> {
    let e = |v: &[u64]| v.to_vec();
    vec![
        raw(
            2,
            &[],
            vec![
                vec![e(&[1, 0, 0]), e(&[0, 1, 0]), e(&[0, 0, 1])],
                vec![e(&[0, 1, 0]), e(&[0, 0, 0]), e(&[0, 0, 0])],
                vec![e(&[0, 0, 1]), e(&[0, 0, 0]), e(&[0, 0, 0])],
            ],
            "F2[x,y]/(x,y)^2",
        ),
        raw(4, &[vec![0, 2]], vec![vec![e(&[1, 0]), e(&[0, 1])], vec![e(&[0, 1]), e(&[0, 0])]], "Z4[x]/(2x,x^2)"),
        raw(4, &[vec![0, 2]], vec![vec![e(&[1, 0]), e(&[0, 1])], vec![e(&[0, 1]), e(&[2, 0])]], "Z4[x]/(2x,x^2-2)"),
    ]
}

/// Every commutative unital ring of order at most 9, up to isomorphism.
pub fn rings_up_to_order_9() -> Vec<Arc<FiniteRing>> {
    let gf = RingSpec::gf;
    let prod = RingSpec::product;
    let mut out: Vec<Arc<FiniteRing>> = [
        gf(2),
        gf(3),
        RingSpec::zn(4),
        prod(vec![gf(2), gf(2)]),
        RingSpec::poly(2, &[1, 1, 1]),
        RingSpec::poly(2, &[0, 0, 1]),
        gf(5),
        prod(vec![gf(2), gf(3)]),
        gf(7),
        RingSpec::zn(8),
        RingSpec::poly(2, &[1, 1, 0, 1]),
        prod(vec![gf(2), gf(2), gf(2)]),
        prod(vec![gf(2), RingSpec::zn(4)]),
        prod(vec![gf(2), RingSpec::poly(2, &[1, 1, 1])]),
        prod(vec![gf(2), RingSpec::poly(2, &[0, 0, 1])]),
        RingSpec::poly(2, &[0, 0, 0, 1]),
        RingSpec::zn(9),
        RingSpec::poly(3, &[1, 0, 1]),
        prod(vec![gf(3), gf(3)]),
        RingSpec::poly(3, &[0, 0, 1]),
    ]
    .into_iter()
    .map(build)
    .collect();
    out.extend(non_monogenic_order_8());
    out
}

/// Quotients of `R^c` for `c ≤ max_generators` with order at most `max_order`,
/// optionally joined by direct sums of cyclic modules.
pub fn family(ring: &Arc<FiniteRing>, max_generators: usize, max_order: u128, cyclic_sums: bool) -> ModuleFamily {
    let mut bounds = FamilyBounds::new(max_generators, max_order);
    if cyclic_sums {
        bounds = bounds.with_cyclic_sums();
    }
    ModuleFamily::generate(ring, bounds, FamilyFilter::All, Execution::Parallel)
}

pub fn idempotent_ideals(ring: &Arc<FiniteRing>) -> Vec<Ideal> {
    ring.ideals().into_iter().filter(Ideal::is_idempotent).collect()
}
