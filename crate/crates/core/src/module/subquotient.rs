use std::sync::Arc;

use crate::linalg::{solve_modulo, HowellBasis, ResidueMatrix};
use crate::ring::FiniteRing;

use super::FinModule;

/// `top / bottom` for action-closed row modules of an ambient coordinate
/// space, realized as a module in its own coordinates.
pub struct Subquotient {
    pub module: FinModule,
    /// Ambient coordinates of the new basis vectors.
    pub generators: Vec<Vec<u64>>,
    pub bottom: HowellBasis,
}

impl Subquotient {
    /// Ambient representative of a coordinate vector.
    pub fn lift(&self, x: &[u64]) -> Vec<u64> {
        let n = self.bottom.modulus();
        let mut out = vec![0u64; self.bottom.ambient()];
        for (g, &c) in self.generators.iter().zip(x) {
            for (o, &v) in out.iter_mut().zip(g) {
                *o = ((*o as u128 + c as u128 * v as u128) % n as u128) as u64;
            }
        }
        out
    }

    pub fn lift_matrix(&self) -> ResidueMatrix {
        ResidueMatrix::from_rows(self.bottom.modulus(), self.bottom.ambient(), &self.generators)
            .expect("generators have ambient rank")
    }

    /// Coordinates of an ambient vector lying in `top`, or `None`.
    pub fn coords_of(&self, v: &[u64]) -> Option<Vec<u64>> {
        solve_modulo(&self.generators, &self.bottom, v).map(|x| self.module.normalize(&x))
    }
}

/// Greedy ℤ/n-generators of `top` modulo `bottom`, in Howell row order.
pub(crate) fn pruned_generators(top: &HowellBasis, bottom: &HowellBasis) -> Vec<Vec<u64>> {
    let mut kept: Vec<Vec<u64>> = Vec::new();
    let mut span = bottom.clone();
    for r in top.rows() {
        let r = bottom.reduce(r);
        if span.contains(&r) {
            continue;
        }
        span = span.join_rows(std::slice::from_ref(&r));
        kept.push(r);
    }
    // Drop generators made redundant by later ones.
    let mut i = 0;
    while i < kept.len() {
        let mut others: Vec<Vec<u64>> = kept.clone();
        others.remove(i);
        if bottom.join_rows(&others).contains(&kept[i]) {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    kept
}

/// Builds `top / bottom` where both are closed under `actions`.
pub fn subquotient(
    ring: &Arc<FiniteRing>,
    actions: &[ResidueMatrix],
    top: &HowellBasis,
    bottom: &HowellBasis,
) -> Subquotient {
    let n = ring.modulus();
    let gens = pruned_generators(top, bottom);
    let g = gens.len();
    let lift = ResidueMatrix::from_rows(n, top.ambient(), &gens).expect("generator rows");
    let relations = crate::linalg::preimage(&lift, bottom);
    let new_actions: Vec<ResidueMatrix> = actions
        .iter()
        .map(|a| {
            let rows: Vec<Vec<u64>> =
                gens.iter().map(|v| solve_modulo(&gens, bottom, &a.apply(v)).expect("top is action-closed")).collect();
            ResidueMatrix::from_rows(n, g, &rows).expect("square action")
        })
        .collect();
    let module = FinModule::new(ring, g, relations.rows(), new_actions).expect("subquotient of a valid module");
    Subquotient { module, generators: gens, bottom: bottom.clone() }
}
