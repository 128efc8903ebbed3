//! Complexes of finite free modules, free resolutions, Ext/Tor, local
//! (co)homology and Koszul complexes.

mod checks;
mod koszul;
mod local;
mod resolution;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::matrix::unit_vector;
use crate::linalg::ResidueMatrix;
use crate::module::{subquotient, FinModule, ModuleMap, Submodule};
use crate::ring::FiniteRing;

pub use checks::{check_local_annihilation, check_spectral_vnr};
pub use koszul::{
    check_idempotent_proregularity, koszul_cohomology, koszul_complex, koszul_transition_is_zero,
    weak_proregularity_check, DegreeOffsets, ProBounds, ProZeroVerdict,
};
pub use local::{local_cohomology, local_homology, LocalValue, TorsionResolution};
pub use resolution::{ext, free_resolution, free_resolution_with, r_generators, tor, FreeResolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `d_k : C_{k+1} → C_k`.
    Homological,
    /// `d^k : C^k → C^{k+1}`.
    Cohomological,
}

/// A bounded complex of free modules `R^{g}`. Position `k` sits in degree
/// `lowest + k`; `differentials[k]` connects positions `k` and `k + 1` in
/// the direction given by `direction`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ring: Arc<FiniteRing>,
    ranks: Vec<usize>,
    differentials: Vec<ResidueMatrix>,
    direction: Direction,
    lowest: i64,
}

/// `cycles / boundaries` inside an ambient module, with the quotient
/// realized in its own coordinates.
#[derive(Clone, Debug)]
pub struct Homology {
    pub ambient: FinModule,
    pub cycles: Submodule,
    pub boundaries: Submodule,
    pub module: FinModule,
}

impl Homology {
    pub fn new(ambient: FinModule, cycles: Submodule, boundaries: Submodule) -> Self {
        let sq = subquotient(ambient.ring(), ambient.actions(), cycles.basis(), boundaries.basis());
        Self { ambient, cycles, boundaries, module: sq.module }
    }

    pub fn order(&self) -> u128 {
        self.cycles.basis().relative_order(self.boundaries.basis())
    }

    pub fn is_zero(&self) -> bool {
        self.cycles == self.boundaries
    }
}

impl ChainComplex {
    /// Validates shapes, R-linearity of every differential and `d∘d = 0`.
    pub fn new(
        ring: &Arc<FiniteRing>,
        ranks: Vec<usize>,
        differentials: Vec<ResidueMatrix>,
        direction: Direction,
        lowest: i64,
    ) -> Result<Self> {
        if differentials.len() + 1 != ranks.len().max(1) {
            return Err(Error::InvalidMap(format!(
                "{} objects need {} differentials, found {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                differentials.len()
            )));
        }
        let c = Self { ring: Arc::clone(ring), ranks, differentials, direction, lowest };
        for k in 0..c.differentials.len() {
            c.map(k)?;
        }
        if !c.squares_to_zero() {
            return Err(Error::InvalidMap("consecutive differentials do not compose to zero".into()));
        }
        Ok(c)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differentials(&self) -> &[ResidueMatrix] {
        &self.differentials
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    pub fn object(&self, k: usize) -> FinModule {
        free_module(&self.ring, self.ranks[k])
    }

    /// `differentials[k]` as a module map.
    pub fn map(&self, k: usize) -> Result<ModuleMap> {
        let (s, t) = match self.direction {
            Direction::Homological => (k + 1, k),
            Direction::Cohomological => (k, k + 1),
        };
        ModuleMap::new(&self.object(s), &self.object(t), self.differentials[k].clone())
    }

    pub fn squares_to_zero(&self) -> bool {
        (1..self.differentials.len()).all(|k| {
            let (first, second, target) = match self.direction {
                Direction::Homological => (k, k - 1, k - 1),
                Direction::Cohomological => (k - 1, k, k + 1),
            };
            let composite = self.differentials[first].mul(&self.differentials[second]);
            let rel = self.object(target);
            composite.row_vecs().iter().all(|r| rel.relations().contains(r))
        })
    }

    /// Homology at the given degree; zero outside the complex.
    pub fn homology(&self, degree: i64) -> Homology {
        let k = degree - self.lowest;
        if k < 0 || k as usize >= self.ranks.len() {
            let z = FinModule::zero(&self.ring);
            let s = z.zero_submodule();
            return Homology::new(z, s.clone(), s);
        }
        let k = k as usize;
        let ambient = self.object(k);
        let (outgoing, incoming) = match self.direction {
            Direction::Homological => (k.checked_sub(1), (k < self.differentials.len()).then_some(k)),
            Direction::Cohomological => ((k < self.differentials.len()).then_some(k), k.checked_sub(1)),
        };
        let cycles = match outgoing {
            Some(i) => self.map(i).expect("validated").kernel(),
            None => ambient.whole(),
        };
        let boundaries = match incoming {
            Some(i) => self.map(i).expect("validated").image(),
            None => ambient.zero_submodule(),
        };
        Homology::new(ambient, cycles, boundaries)
    }
}

/// `R^g` in block coordinates.
pub fn free_module(ring: &Arc<FiniteRing>, g: usize) -> FinModule {
    FinModule::free_quotient(ring, g, &[]).expect("free module is valid")
}

/// `M^g`, equal to `M` itself when `g = 1`.
pub fn direct_power(m: &FinModule, g: usize) -> FinModule {
    if g == 1 {
        return m.clone();
    }
    (0..g).fold(FinModule::zero(m.ring()), |acc, _| acc.direct_sum(m).expect("same ring"))
}

/// Coordinate matrix of the R-linear map `R^g → N` sending the `j`-th basis
/// vector to `images[j]`.
pub fn map_from_images(ring: &FiniteRing, target: &FinModule, images: &[Vec<u64>]) -> ResidueMatrix {
    let b = ring.rank();
    let mut rows = Vec::with_capacity(images.len() * b);
    for img in images {
        for i in 0..b {
            rows.push(target.act(&unit_vector(b, i), img));
        }
    }
    ResidueMatrix::from_rows(ring.modulus(), target.rank(), &rows).expect("image rows have target rank")
}

/// Ring entries `r[l][j]` of an R-linear map `R^{gs} → R^{gt}`, so that the
/// `l`-th basis vector goes to `Σ_j r[l][j] e_j`.
pub fn free_entries(ring: &FiniteRing, d: &ResidueMatrix) -> Vec<Vec<Vec<u64>>> {
    let b = ring.rank();
    let (gs, gt) = (d.nrows() / b, d.ncols() / b);
    let one = ring.one();
    (0..gs)
        .map(|l| {
            let mut e = vec![0u64; gs * b];
            e[l * b..(l + 1) * b].copy_from_slice(&one);
            let img = d.apply(&e);
            (0..gt).map(|j| ring.normalize(&img[j * b..(j + 1) * b])).collect()
        })
        .collect()
}

/// `Hom(d, M) : M^{gt} → M^{gs}`, `(m_j) ↦ (Σ_j r[l][j] m_j)_l`.
pub(crate) fn hom_matrix(m: &FinModule, entries: &[Vec<Vec<u64>>], gt: usize) -> ResidueMatrix {
    let c = m.rank();
    let gs = entries.len();
    let mut out = ResidueMatrix::zeros(m.modulus(), gt * c, gs * c);
    for (l, row) in entries.iter().enumerate() {
        for (j, r) in row.iter().enumerate() {
            out.put_block(j * c, l * c, &m.element_matrix(r));
        }
    }
    out
}

/// `d ⊗ M : M^{gs} → M^{gt}`, `(m_l) ↦ (Σ_l r[l][j] m_l)_j`.
pub(crate) fn tensor_matrix(m: &FinModule, entries: &[Vec<Vec<u64>>], gt: usize) -> ResidueMatrix {
    let c = m.rank();
    let gs = entries.len();
    let mut out = ResidueMatrix::zeros(m.modulus(), gs * c, gt * c);
    for (l, row) in entries.iter().enumerate() {
        for (j, r) in row.iter().enumerate() {
            out.put_block(l * c, j * c, &m.element_matrix(r));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn complex_rejects_nonzero_composite() {
        let r = RingSpec::zn(4).build().unwrap();
        let two = ResidueMatrix::from_rows(4, 1, &[vec![2]]).unwrap();
        let one = ResidueMatrix::identity(4, 1);
        assert!(ChainComplex::new(&r, vec![1, 1, 1], vec![two.clone(), two.clone()], Direction::Homological, 0).is_ok());
        assert!(ChainComplex::new(&r, vec![1, 1, 1], vec![two, one], Direction::Homological, 0).is_err());
    }

    #[test]
    fn homology_of_multiplication_by_two() {
        let r = RingSpec::zn(8).build().unwrap();
        let two = ResidueMatrix::from_rows(8, 1, &[vec![2]]).unwrap();
        let c = ChainComplex::new(&r, vec![1, 1], vec![two], Direction::Cohomological, -1).unwrap();
        assert_eq!(c.homology(-1).order(), 2);
        assert_eq!(c.homology(0).order(), 2);
        assert!(c.homology(1).is_zero());
    }

    #[test]
    fn entries_round_trip() {
        let r = RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(2)]).build().unwrap();
        let target = free_module(&r, 2);
        let images = vec![vec![1, 0, 0, 1], vec![0, 1, 1, 1]];
        let d = map_from_images(&r, &target, &images);
        assert!(ModuleMap::new(&free_module(&r, 2), &target, d.clone()).is_ok());
        let e = free_entries(&r, &d);
        assert_eq!(e, vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]]);
    }
}
