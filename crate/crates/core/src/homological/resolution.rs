use crate::error::{Error, Result};
use crate::module::{FinModule, ModuleMap, Submodule};

use super::{
    direct_power, free_entries, free_module, hom_matrix, map_from_images, tensor_matrix, ChainComplex, Direction,
    Homology,
};

/// A free resolution `F_{L+1} → F_L → ⋯ → F_0 ↠ M`, exact at `F_0, …, F_L`.
/// The extra differential onto the `L`-th syzygy is what makes Ext and Tor
/// available in every degree `q ≤ L`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    target: FinModule,
    length: usize,
    complex: ChainComplex,
    augmentation: ModuleMap,
    /// `entries[k]` holds the ring entries of `d_{k+1} : F_{k+1} → F_k`.
    entries: Vec<Vec<Vec<Vec<u64>>>>,
}

/// R-module generators of a submodule, chosen greedily in Howell row order,
/// pruned, and merged pairwise whenever `a + b` alone generates both.
pub fn r_generators(m: &FinModule, s: &Submodule) -> Vec<Vec<u64>> {
    let mut kept: Vec<Vec<u64>> = Vec::new();
    let mut span = m.zero_submodule();
    for c in m.submodule_generators(s) {
        if !span.contains(&c) {
            kept.push(c);
            span = m.span(&kept).expect("rows have module rank");
        }
    }
    let mut i = 0;
    while i < kept.len() {
        let mut others = kept.clone();
        others.remove(i);
        if m.span(&others).expect("rows have module rank") == span {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    'merge: loop {
        for a in 0..kept.len() {
            for b in a + 1..kept.len() {
                let sum: Vec<u64> = kept[a]
                    .iter()
                    .zip(&kept[b])
                    .map(|(&x, &y)| ((x as u128 + y as u128) % m.modulus() as u128) as u64)
                    .collect();
                let single = m.span(std::slice::from_ref(&sum)).expect("rows have module rank");
                if single.contains(&kept[a]) && single.contains(&kept[b]) {
                    kept[a] = m.normalize(&sum);
                    kept.remove(b);
                    continue 'merge;
                }
            }
        }
        break;
    }
    kept
}

/// Resolution starting from the Howell-ordered R-generators of `M`.
pub fn free_resolution(m: &FinModule, length: usize) -> FreeResolution {
    let gens = r_generators(m, &m.whole());
    free_resolution_with(m, &gens, length).expect("Howell generators generate")
}

/// Resolution whose augmentation sends the `j`-th basis vector of `F_0` to
/// `generators[j]`.
pub fn free_resolution_with(m: &FinModule, generators: &[Vec<u64>], length: usize) -> Result<FreeResolution> {
    let ring = m.ring();
    let f0 = free_module(ring, generators.len());
    let augmentation = ModuleMap::new(&f0, m, map_from_images(ring, m, generators))?;
    if !augmentation.is_surjective() {
        return Err(Error::Precondition("augmentation generators do not generate the module".into()));
    }
    let mut ranks = vec![generators.len()];
    let mut differentials = Vec::new();
    let mut entries = Vec::new();
    let mut kernel = augmentation.kernel();
    let mut prev = f0;
    for _ in 0..=length {
        let gens = r_generators(&prev, &kernel);
        let next = free_module(ring, gens.len());
        let d = ModuleMap::new(&next, &prev, map_from_images(ring, &prev, &gens)).expect("images lie in a module");
        assert_eq!(d.image(), kernel, "resolution step is not exact");
        entries.push(free_entries(ring, d.matrix()));
        differentials.push(d.matrix().clone());
        ranks.push(gens.len());
        kernel = d.kernel();
        prev = next;
    }
    let complex = ChainComplex::new(ring, ranks, differentials, Direction::Homological, 0)?;
    Ok(FreeResolution { target: m.clone(), length, complex, augmentation, entries })
}

impl FreeResolution {
    pub fn target(&self) -> &FinModule {
        &self.target
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn augmentation(&self) -> &ModuleMap {
        &self.augmentation
    }

    /// Ranks of `F_0, …, F_{L+1}`.
    pub fn ranks(&self) -> &[usize] {
        self.complex.ranks()
    }

    /// Exactness at every position up to `L`, with a surjective augmentation
    /// whose kernel is the image of `d_1`.
    pub fn is_exact(&self) -> bool {
        let aug_ok = self.augmentation.is_surjective()
            && self.complex.map(0).map(|d| d.image() == self.augmentation.kernel()).unwrap_or(false);
        aug_ok && (1..=self.length).all(|k| self.complex.homology(k as i64).is_zero())
    }

    fn check_degree(&self, q: usize) -> Result<()> {
        if q > self.length {
            return Err(Error::NotComputed { requested: q, length: self.length });
        }
        Ok(())
    }

    /// `Ext^q(A, M)` as the cohomology of `Hom(F_•, M) ≅ M^{g_•}`.
    pub fn ext(&self, q: usize, m: &FinModule) -> Result<Homology> {
        self.check_degree(q)?;
        if !m.same_ring(&self.target) {
            return Err(Error::MismatchedRings);
        }
        let ranks = self.ranks();
        let ambient = direct_power(m, ranks[q]);
        let next = direct_power(m, ranks[q + 1]);
        let delta = ModuleMap::new(&ambient, &next, hom_matrix(m, &self.entries[q], ranks[q]))?;
        let boundaries = if q == 0 {
            ambient.zero_submodule()
        } else {
            let prev = direct_power(m, ranks[q - 1]);
            ModuleMap::new(&prev, &ambient, hom_matrix(m, &self.entries[q - 1], ranks[q - 1]))?.image()
        };
        Ok(Homology::new(ambient, delta.kernel(), boundaries))
    }

    /// `Tor_q(A, M)` as the homology of `F_• ⊗ M ≅ M^{g_•}`.
    pub fn tor(&self, q: usize, m: &FinModule) -> Result<Homology> {
        self.check_degree(q)?;
        if !m.same_ring(&self.target) {
            return Err(Error::MismatchedRings);
        }
        let ranks = self.ranks();
        let ambient = direct_power(m, ranks[q]);
        let next = direct_power(m, ranks[q + 1]);
        let incoming = ModuleMap::new(&next, &ambient, tensor_matrix(m, &self.entries[q], ranks[q]))?;
        let cycles = if q == 0 {
            ambient.whole()
        } else {
            let prev = direct_power(m, ranks[q - 1]);
            ModuleMap::new(&ambient, &prev, tensor_matrix(m, &self.entries[q - 1], ranks[q - 1]))?.kernel()
        };
        Ok(Homology::new(ambient, cycles, incoming.image()))
    }
}

/// `Ext^q(A, M)` from a resolution of `A` of length `q`.
pub fn ext(q: usize, a: &FinModule, m: &FinModule) -> Result<Homology> {
    free_resolution(a, q).ext(q, m)
}

/// `Tor_q(A, M)` from a resolution of `A` of length `q`.
pub fn tor(q: usize, a: &FinModule, m: &FinModule) -> Result<Homology> {
    free_resolution(a, q).tor(q, m)
}
