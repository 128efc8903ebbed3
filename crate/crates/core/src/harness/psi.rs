//! The radical class `Ψ_I` of rings annihilated by an idempotent ideal,
//! evaluated on rings that are subquotients of the base ring.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::module::{FinModule, Submodule};
use crate::ring::{FiniteRing, Ideal};
use crate::torsion;

use super::report::{Report, Witness};

/// The ring `S = top/bottom` for ideals `bottom ⊆ top` of `R`, with the
/// R-module structure and multiplication inherited from `R`. It is unital
/// only when `top = R`; `S = J` (bottom zero) is the non-unital ideal ring.
#[derive(Clone, Debug)]
pub struct RingAlgebra {
    pub top: Ideal,
    pub bottom: Ideal,
}

impl RingAlgebra {
    pub fn whole(ring: &Arc<FiniteRing>) -> Self {
        Self { top: Ideal::unit(ring), bottom: Ideal::zero(ring) }
    }

    pub fn ideal(j: &Ideal) -> Self {
        Self { top: j.clone(), bottom: Ideal::zero(j.ring()) }
    }

    pub fn quotient(j: &Ideal) -> Self {
        Self { top: Ideal::unit(j.ring()), bottom: j.clone() }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.top.ring()
    }

    /// `R/bottom` as an R-module and `S` inside it.
    pub fn module(&self) -> (FinModule, Submodule) {
        let q = FinModule::regular(self.ring()).quotient(&as_sub(&self.bottom));
        let s = q.submodule(self.top.basis().clone()).expect("ideals are submodules");
        (q, s)
    }

    /// Ideals of `S` that are R-submodules, as submodules of `R/bottom`.
    pub fn ideals(&self, bound: u128) -> Result<Vec<Submodule>> {
        let (q, s) = self.module();
        let ring = self.ring();
        let s_gens = q.submodule_generators(&s);
        Ok(q.enumerate_submodules(bound)?
            .into_iter()
            .filter(|l| l.is_subset_of(&s))
            .filter(|l| q.submodule_generators(l).iter().all(|x| s_gens.iter().all(|y| l.contains(&ring.mul(x, y)))))
            .collect())
    }

    pub fn order(&self) -> u128 {
        self.top.order() / self.bottom.order()
    }
}

fn as_sub(i: &Ideal) -> Submodule {
    let m = FinModule::regular(i.ring());
    m.submodule(i.basis().clone()).expect("ideal is a submodule of R")
}

/// `Ψ_I(S)`: the sum of all ideals `J` of `S` with `IJ = 0`.
pub fn psi_radical(s: &RingAlgebra, ideal: &Ideal, bound: u128) -> Result<Submodule> {
    if !ideal.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let (q, _) = s.module();
    let mut acc = q.zero_submodule();
    for j in s.ideals(bound)? {
        if q.is_zero_submodule(&q.ideal_scale_sub(ideal, &j)) {
            acc = acc.join(&j);
        }
    }
    Ok(acc)
}

/// `Γ_I(S)` computed on `S` as a module in its own right.
pub fn gamma_of_algebra(s: &RingAlgebra, ideal: &Ideal) -> Submodule {
    let (q, sub) = s.module();
    let (sm, inclusion) = q.submodule_as_module(&sub);
    inclusion.image_of(&torsion::gamma(&sm, ideal))
}

/// Radical-class axioms for `Ψ_I` on each algebra: homomorphic images of
/// `Ψ_I(S)` stay annihilated by `I`, the sum `Ψ_I(S)` is itself in the
/// class, `Ψ_I(S/Ψ_I(S)) = 0`, and `Ψ_I(S) = Γ_I(S)` for commutative `S`.
pub fn check_radical_class(ideal: &Ideal, algebras: &[RingAlgebra], bound: u128) -> Result<Report> {
    if !ideal.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let mut report = Report::new("radical_class", "Ψ_I is a radical class and Ψ_I(S) = Γ_I(S)");
    for s in algebras {
        let (q, _) = s.module();
        let psi = psi_radical(s, ideal, bound)?;
        report.count();
        if psi != gamma_of_algebra(s, ideal) {
            report.fail(Witness::submodule(&q, &psi, "Ψ_I(S) differs from Γ_I(S)"));
        }
        if !q.is_zero_submodule(&q.ideal_scale_sub(ideal, &psi)) {
            report.fail(Witness::submodule(&q, &psi, "I·Ψ_I(S) ≠ 0"));
        }
        for l in s.ideals(bound)? {
            report.count();
            // image of Ψ_I(S) in S/L is annihilated by I
            if !q.ideal_scale_sub(ideal, &psi.join(&l)).is_subset_of(&l) {
                report.fail(Witness::submodule(&q, &l, "image of Ψ_I(S) in S/L is not annihilated by I"));
            }
        }
        let reduced = RingAlgebra { top: s.top.clone(), bottom: Ideal::from_basis(s.ring(), psi.basis().clone()) };
        let (rq, _) = reduced.module();
        let again = psi_radical(&reduced, ideal, bound)?;
        report.count();
        if !rq.is_zero_submodule(&again) {
            report.fail(Witness::submodule(&rq, &again, "Ψ_I(S/Ψ_I(S)) ≠ 0"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn psi_of_product_ring() {
        let r = RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(2)]).build().unwrap();
        let i = Ideal::principal(&r, &[1, 0]);
        let s = RingAlgebra::whole(&r);
        let psi = psi_radical(&s, &i, 256).unwrap();
        let (q, _) = s.module();
        assert_eq!(q.submodule_elements(&psi), vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(psi, q.annihilator(&i));
        assert!(check_radical_class(&i, &[s.clone(), RingAlgebra::ideal(&i), RingAlgebra::quotient(&i)], 256)
            .unwrap()
            .passed());
    }

    #[test]
    fn unit_ideal_gives_zero_radical() {
        let r = RingSpec::zn(6).build().unwrap();
        let s = RingAlgebra::whole(&r);
        let psi = psi_radical(&s, &Ideal::unit(&r), 256).unwrap();
        assert!(s.module().0.is_zero_submodule(&psi));
    }

    #[test]
    fn zero_algebra_and_non_idempotent() {
        let r = RingSpec::zn(4).build().unwrap();
        let zero = RingAlgebra::ideal(&Ideal::zero(&r));
        assert_eq!(zero.order(), 1);
        let psi = psi_radical(&zero, &Ideal::zero(&r), 256).unwrap();
        assert!(zero.module().0.is_zero_submodule(&psi));
        assert_eq!(psi_radical(&zero, &Ideal::principal(&r, &[2]), 256), Err(Error::NotIdempotent));
    }
}
