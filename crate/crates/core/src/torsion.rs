//! The torsion functor Γ_I, the big torsion functor Γ̄_I, the I-adic
//! completion Λ_I and the (co)reducedness predicates, computed by chain
//! stabilization on finite modules.

use crate::module::{FinModule, Submodule};
use crate::ring::Ideal;

/// The ascending chain `(0 :_M I^k)` and descending chain `I^k M`, each
/// recorded up to its stabilization index.
#[derive(Clone, Debug)]
pub struct ChainProfile {
    /// `ascending[k-1] = (0 :_M I^k)` for `k = 1..=asc_index`.
    pub ascending: Vec<Submodule>,
    /// `descending[k-1] = I^k M` for `k = 1..=desc_index`.
    pub descending: Vec<Submodule>,
    /// Least `k ≥ 1` with `(0:I^k) = (0:I^{k+1})`.
    pub asc_index: usize,
    /// Least `k ≥ 1` with `I^k M = I^{k+1} M`.
    pub desc_index: usize,
}

impl ChainProfile {
    pub fn compute(m: &FinModule, ideal: &Ideal) -> Self {
        let cap = m.order() as usize + 1;
        let mut ascending = Vec::new();
        let mut power = ideal.clone();
        let mut current = m.annihilator(&power);
        loop {
            assert!(ascending.len() <= cap, "annihilator chain failed to stabilize");
            power = power.product(ideal).expect("same ring");
            let next = m.annihilator(&power);
            ascending.push(current.clone());
            if next == current {
                break;
            }
            current = next;
        }
        let mut descending = Vec::new();
        let mut current = m.ideal_scale(ideal);
        loop {
            assert!(descending.len() <= cap, "ideal-multiple chain failed to stabilize");
            let next = m.ideal_scale_sub(ideal, &current);
            descending.push(current.clone());
            if next == current {
                break;
            }
            current = next;
        }
        let asc_index = ascending.len();
        let desc_index = descending.len();
        Self { ascending, descending, asc_index, desc_index }
    }

    /// `(0 :_M I^k)` for any `k ≥ 1`.
    pub fn annihilator_of_power(&self, k: usize) -> &Submodule {
        &self.ascending[k.clamp(1, self.asc_index) - 1]
    }

    /// `I^k M` for any `k ≥ 1`.
    pub fn power_multiple(&self, k: usize) -> &Submodule {
        &self.descending[k.clamp(1, self.desc_index) - 1]
    }
}

/// `Γ_I(M) = ⋃_k (0 :_M I^k)`.
pub fn gamma(m: &FinModule, ideal: &Ideal) -> Submodule {
    ChainProfile::compute(m, ideal).ascending.last().expect("nonempty chain").clone()
}

/// `Γ̄_I(M) = {m : I ⊆ √(0 :_R m)}`, the intersection of `Γ_(a)(M)` over
/// generators `a` of `I`.
pub fn gamma_bar(m: &FinModule, ideal: &Ideal) -> Submodule {
    let mut acc = m.whole();
    for a in ideal.group_generators() {
        let principal = Ideal::principal(ideal.ring(), &a);
        acc = acc.meet(&gamma(m, &principal));
    }
    acc
}

/// `Λ_I(M) = M / I^s M` together with the tower `M/I^kM`, `k = 1..=s`.
#[derive(Clone, Debug)]
pub struct Completion {
    pub module: FinModule,
    pub tower: Vec<FinModule>,
    pub stabilization_index: usize,
    pub kernel: Submodule,
}

pub fn lambda(m: &FinModule, ideal: &Ideal) -> Completion {
    let profile = ChainProfile::compute(m, ideal);
    let tower: Vec<FinModule> = profile.descending.iter().map(|d| m.quotient(d)).collect();
    let kernel = profile.descending.last().expect("nonempty chain").clone();
    Completion { module: m.quotient(&kernel), tower, stabilization_index: profile.desc_index, kernel }
}

/// `(0:I) = (0:I²)`.
pub fn is_reduced(m: &FinModule, ideal: &Ideal) -> bool {
    ChainProfile::compute(m, ideal).asc_index == 1
}

/// `IM = I²M`.
pub fn is_coreduced(m: &FinModule, ideal: &Ideal) -> bool {
    ChainProfile::compute(m, ideal).desc_index == 1
}

/// `(0:I^k) = (0:I^t)` for all `t ≥ k`.
pub fn is_k_reduced(m: &FinModule, ideal: &Ideal, k: usize) -> bool {
    ChainProfile::compute(m, ideal).asc_index <= k.max(1)
}

/// `I^k M = I^t M` for all `t ≥ k`.
pub fn is_k_coreduced(m: &FinModule, ideal: &Ideal, k: usize) -> bool {
    ChainProfile::compute(m, ideal).desc_index <= k.max(1)
}

pub fn reduction_index(m: &FinModule, ideal: &Ideal) -> usize {
    ChainProfile::compute(m, ideal).asc_index
}

/// `Γ_I(M) = M`.
pub fn is_torsion(m: &FinModule, ideal: &Ideal) -> bool {
    m.is_whole(&gamma(m, ideal))
}

/// The tower `M/I^kM` is eventually the identity on `M`, i.e. `I^sM = 0`.
pub fn is_complete(m: &FinModule, ideal: &Ideal) -> bool {
    m.is_zero_submodule(&lambda(m, ideal).kernel)
}

/// `a·Γ_(a)(M)`.
pub fn locally_nilradical(m: &FinModule, a: &[u64]) -> Submodule {
    let principal = Ideal::principal(m.ring(), a);
    m.ideal_scale_sub(&principal, &gamma(m, &principal))
}
