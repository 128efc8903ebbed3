use crate::error::Result;
use crate::module::FinModule;
use crate::ring::Ideal;

use super::{free_resolution_with, FreeResolution, Homology};

/// A resolution of `R/I^s` at the power stabilization index `s`, where the
/// systems `Ext^q(R/I^k, M)` and `Tor_q(R/I^k, M)` become constant.
#[derive(Clone, Debug)]
pub struct TorsionResolution {
    ideal: Ideal,
    stage: usize,
    resolution: FreeResolution,
    stable: bool,
}

/// A local (co)homology module at the stage where it was read off.
#[derive(Clone, Debug)]
pub struct LocalValue {
    pub stage: usize,
    pub value: Homology,
    /// The resolutions of `R/I^s` and `R/I^{s+1}` coincide, so the
    /// transition map between stages `s` and `s + 1` is the identity.
    pub stable: bool,
}

impl TorsionResolution {
    pub fn new(ideal: &Ideal, length: usize) -> Self {
        let ring = ideal.ring();
        let stage = ideal.power_stabilization_index();
        let resolve = |k: usize| {
            let a = FinModule::cyclic(ring, &ideal.power(k));
            free_resolution_with(&a, &[ring.one()], length).expect("1 generates R/J")
        };
        let resolution = resolve(stage);
        let next = resolve(stage + 1);
        let stable = ideal.power(stage) == ideal.power(stage + 1)
            && next.complex().differentials() == resolution.complex().differentials();
        Self { ideal: ideal.clone(), stage, resolution, stable }
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn resolution(&self) -> &FreeResolution {
        &self.resolution
    }

    /// `H^q_I(M) = Ext^q(R/I^s, M)`.
    pub fn cohomology(&self, q: usize, m: &FinModule) -> Result<LocalValue> {
        Ok(LocalValue { stage: self.stage, value: self.resolution.ext(q, m)?, stable: self.stable })
    }

    /// `H_q^I(M) = Tor_q(R/I^s, M)`.
    pub fn homology(&self, q: usize, m: &FinModule) -> Result<LocalValue> {
        Ok(LocalValue { stage: self.stage, value: self.resolution.tor(q, m)?, stable: self.stable })
    }
}

pub fn local_cohomology(q: usize, ideal: &Ideal, m: &FinModule) -> Result<LocalValue> {
    TorsionResolution::new(ideal, q).cohomology(q, m)
}

pub fn local_homology(q: usize, ideal: &Ideal, m: &FinModule) -> Result<LocalValue> {
    TorsionResolution::new(ideal, q).homology(q, m)
}
