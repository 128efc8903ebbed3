use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exec::Execution;
use crate::module::{hom_module, FinModule, ModuleMap};
use crate::ring::{nilradical, FiniteRing, Ideal};
use crate::torsion;

use super::report::{Report, Witness};

/// Membership predicate of a family, used both to filter enumerated modules
/// and to spot-check declared closure properties.
#[derive(Clone, Debug)]
pub enum FamilyFilter {
    All,
    Reduced(Ideal),
    Coreduced(Ideal),
    /// Annihilated by the Jacobson radical.
    Semisimple,
    Annihilated(Ideal),
}

impl FamilyFilter {
    pub fn admits(&self, m: &FinModule) -> bool {
        match self {
            FamilyFilter::All => true,
            FamilyFilter::Reduced(i) => torsion::is_reduced(m, i),
            FamilyFilter::Coreduced(i) => torsion::is_coreduced(m, i),
            FamilyFilter::Semisimple => m.is_zero_submodule(&m.ideal_scale(&nilradical(m.ring()))),
            FamilyFilter::Annihilated(i) => m.is_zero_submodule(&m.ideal_scale(i)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilyFilter::All => "all",
            FamilyFilter::Reduced(_) => "reduced",
            FamilyFilter::Coreduced(_) => "coreduced",
            FamilyFilter::Semisimple => "semisimple",
            FamilyFilter::Annihilated(_) => "annihilated",
        }
    }
}

/// Closure properties a family is declared to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureFlags {
    pub submodules: bool,
    pub quotients: bool,
    pub direct_sums: bool,
    pub extensions: bool,
}

impl ClosureFlags {
    pub const ABELIAN: ClosureFlags =
        ClosureFlags { submodules: true, quotients: true, direct_sums: true, extensions: false };
    pub const NONE: ClosureFlags =
        ClosureFlags { submodules: false, quotients: false, direct_sums: false, extensions: false };
}

/// How family members are generated.
#[derive(Clone, Copy, Debug)]
pub struct FamilyBounds {
    /// Quotients `R^c/N` are enumerated for `c ≤ max_generators`.
    pub max_generators: usize,
    pub max_order: u128,
    /// Also include direct sums of cyclic modules `R/J` up to `max_order`.
    pub cyclic_sums: bool,
    /// Free modules larger than this are sampled instead of enumerated.
    pub enumeration_bound: u128,
    pub samples: usize,
    pub seed: u64,
}

impl FamilyBounds {
    pub fn new(max_generators: usize, max_order: u128) -> Self {
        Self { max_generators, max_order, cyclic_sums: false, enumeration_bound: 256, samples: 64, seed: 0 }
    }

    pub fn with_cyclic_sums(mut self) -> Self {
        self.cyclic_sums = true;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// A map between two family members, by index.
#[derive(Clone, Debug)]
pub struct FamilyMap {
    pub source: usize,
    pub target: usize,
    pub map: ModuleMap,
}

/// A finite stand-in for an abelian full subcategory of R-Mod.
#[derive(Clone, Debug)]
pub struct ModuleFamily {
    pub ring: Arc<FiniteRing>,
    pub modules: Vec<FinModule>,
    pub maps: Vec<FamilyMap>,
    pub closure: ClosureFlags,
    pub filter: FamilyFilter,
    pub description: String,
    pub seed: u64,
}

impl ModuleFamily {
    /// Wraps an explicit list of modules.
    pub fn from_modules(ring: &Arc<FiniteRing>, modules: Vec<FinModule>, description: impl Into<String>) -> Self {
        Self {
            ring: Arc::clone(ring),
            modules,
            maps: Vec::new(),
            closure: ClosureFlags::NONE,
            filter: FamilyFilter::All,
            description: description.into(),
            seed: 0,
        }
    }

    /// Every quotient `R^c/N` with `c ≤ max_generators` and order at most
    /// `max_order` (sampled when `R^c` is too large to enumerate), optionally
    /// joined by direct sums of cyclic modules, filtered by `filter`.
    pub fn generate(ring: &Arc<FiniteRing>, bounds: FamilyBounds, filter: FamilyFilter, exec: Execution) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
        let mut candidates = vec![FinModule::zero(ring)];
        for c in 1..=bounds.max_generators {
            let free = FinModule::free_quotient(ring, c, &[]).expect("free module");
            let subs = match free.enumerate_submodules(bounds.enumeration_bound) {
                Ok(subs) => subs,
                Err(_) => {
                    let elems = free.rank();
                    let mut set = BTreeSet::new();
                    for _ in 0..bounds.samples {
                        let k = rng.gen_range(0..=c);
                        let gens: Vec<Vec<u64>> =
                            (0..k).map(|_| (0..elems).map(|_| rng.gen_range(0..ring.modulus())).collect()).collect();
                        set.insert(free.span(&gens).expect("rank matches"));
                    }
                    set.into_iter().collect()
                }
            };
            for s in subs {
                let order = free.order() / free.cardinality(&s);
                if order > 1 && order <= bounds.max_order {
                    candidates.push(free.quotient(&s).with_label(format!("R^{c}/N")));
                }
            }
        }
        if bounds.cyclic_sums {
            candidates.extend(cyclic_sums(ring, bounds.max_order));
        }
        let mut seen = BTreeSet::new();
        candidates.retain(|m| m.order() <= bounds.max_order && seen.insert((m.rank(), m.relations().clone())));
        let keep = exec.map(&candidates, |m| filter.admits(m));
        let modules = candidates.into_iter().zip(keep).filter(|(_, k)| *k).map(|(m, _)| m).collect();
        Self {
            ring: Arc::clone(ring),
            modules,
            maps: Vec::new(),
            closure: ClosureFlags::ABELIAN,
            filter,
            description: format!(
                "modules over {} with at most {} generators and order at most {}",
                ring.label(),
                bounds.max_generators,
                bounds.max_order
            ),
            seed: bounds.seed,
        }
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    /// Members satisfying a predicate, as a new family with no maps.
    pub fn restrict(&self, filter: FamilyFilter) -> Self {
        Self {
            ring: Arc::clone(&self.ring),
            modules: self.modules.iter().filter(|m| filter.admits(m)).cloned().collect(),
            maps: Vec::new(),
            closure: self.closure,
            filter,
            description: self.description.clone(),
            seed: self.seed,
        }
    }

    /// Adds maps between every ordered pair of members: all of `Hom(M, N)`
    /// when it has at most `per_pair` elements, otherwise `per_pair` seeded
    /// random elements.
    pub fn with_maps(mut self, per_pair: usize, exec: Execution) -> Self {
        let pairs: Vec<(usize, usize)> =
            (0..self.modules.len()).flat_map(|i| (0..self.modules.len()).map(move |j| (i, j))).collect();
        let seed = self.seed;
        let modules = &self.modules;
        let maps: Vec<Vec<FamilyMap>> = exec.map(&pairs, |&(i, j)| {
            let hom = hom_module(&modules[i], &modules[j]).expect("same ring");
            let elements: Vec<Vec<u64>> = if hom.module.order() <= per_pair as u128 {
                hom.module.elements()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((i as u64) << 32 | j as u64));
                (0..per_pair)
                    .map(|_| (0..hom.module.rank()).map(|_| rng.gen_range(0..hom.module.modulus())).collect())
                    .collect()
            };
            elements.iter().map(|x| FamilyMap { source: i, target: j, map: hom.map_of(x) }).collect()
        });
        self.maps = maps.into_iter().flatten().collect();
        self
    }

    /// Samples members and checks that submodules, quotients and pairwise
    /// sums still satisfy the family predicate, as declared.
    pub fn spot_check_closures(&self, samples: usize, submodule_bound: u128) -> Report {
        let mut report =
            Report::new("family_closure", "declared closure properties hold on sampled members").with_seed(self.seed);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        if self.modules.is_empty() {
            return report;
        }
        for _ in 0..samples {
            let m = &self.modules[rng.gen_range(0..self.modules.len())];
            if self.closure.submodules || self.closure.quotients {
                let Ok(subs) = m.enumerate_submodules(submodule_bound) else {
                    report.undetermined("member too large for submodule enumeration");
                    continue;
                };
                let s = &subs[rng.gen_range(0..subs.len())];
                if self.closure.submodules {
                    report.count();
                    let (sm, _) = m.submodule_as_module(s);
                    if !self.filter.admits(&sm) {
                        report.fail(Witness::submodule(m, s, "submodule leaves the family"));
                    }
                }
                if self.closure.quotients {
                    report.count();
                    if !self.filter.admits(&m.quotient(s)) {
                        report.fail(Witness::submodule(m, s, "quotient leaves the family"));
                    }
                }
            }
            if self.closure.direct_sums {
                report.count();
                let other = &self.modules[rng.gen_range(0..self.modules.len())];
                let sum = m.direct_sum(other).expect("same ring");
                if !self.filter.admits(&sum) {
                    report.fail(Witness::module(&sum, "direct sum leaves the family"));
                }
            }
        }
        report
    }
}

/// Direct sums `R/J_1 ⊕ ⋯ ⊕ R/J_t` of nonzero cyclic modules with total
/// order at most `max_order`, one per multiset of ideals.
pub fn cyclic_sums(ring: &Arc<FiniteRing>, max_order: u128) -> Vec<FinModule> {
    let cyclics: Vec<FinModule> = ring
        .ideals()
        .iter()
        .filter(|j| !j.is_unit_ideal())
        .map(|j| FinModule::cyclic(ring, j))
        .filter(|m| m.order() <= max_order)
        .collect();
    let mut out = Vec::new();
    fn extend(
        cyclics: &[FinModule],
        start: usize,
        current: &FinModule,
        max_order: u128,
        depth: usize,
        out: &mut Vec<FinModule>,
    ) {
        for (k, c) in cyclics.iter().enumerate().skip(start) {
            if current.order() * c.order() > max_order {
                continue;
            }
            let next = current.direct_sum(c).expect("same ring").with_label(format!("cyclic sum of {}", depth + 1));
            out.push(next.clone());
            extend(cyclics, k, &next, max_order, depth + 1, out);
        }
    }
    extend(&cyclics, 0, &FinModule::zero(ring), max_order, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn z4_family_contents() {
        let r = RingSpec::zn(4).build().unwrap();
        let fam = ModuleFamily::generate(&r, FamilyBounds::new(2, 16), FamilyFilter::All, Execution::Sequential);
        let orders: BTreeSet<u128> = fam.modules.iter().map(FinModule::order).collect();
        assert_eq!(orders, BTreeSet::from([1, 2, 4, 8, 16]));
        let invariants: BTreeSet<Vec<u64>> = fam.modules.iter().map(FinModule::abelian_invariants).collect();
        // every abelian group of exponent dividing 4 with at most two generators
        for inv in [vec![], vec![2], vec![4], vec![2, 2], vec![2, 4], vec![4, 4]] {
            assert!(invariants.contains(&inv), "{inv:?}");
        }
        assert!(fam.spot_check_closures(16, 256).passed());
    }

    #[test]
    fn cyclic_sums_cover_elementary_groups() {
        let r = RingSpec::gf(2).build().unwrap();
        let sums = cyclic_sums(&r, 32);
        assert_eq!(sums.len(), 5);
        assert_eq!(sums.last().unwrap().order(), 32);
    }

    #[test]
    fn filters_restrict_members() {
        let r = RingSpec::zn(4).build().unwrap();
        let i = Ideal::principal(&r, &[2]);
        let fam =
            ModuleFamily::generate(&r, FamilyBounds::new(2, 16), FamilyFilter::Reduced(i.clone()), Execution::Parallel);
        assert!(fam.modules.iter().all(|m| torsion::is_reduced(m, &i)));
        assert!(fam.modules.iter().all(|m| m.abelian_invariants().iter().all(|&d| d == 2)));
        let semi = ModuleFamily::generate(&r, FamilyBounds::new(2, 16), FamilyFilter::Semisimple, Execution::Parallel);
        assert_eq!(semi.len(), fam.len());
    }

    #[test]
    fn maps_are_module_maps() {
        let r = RingSpec::zn(4).build().unwrap();
        let fam = ModuleFamily::generate(&r, FamilyBounds::new(1, 4), FamilyFilter::All, Execution::Sequential)
            .with_maps(64, Execution::Sequential);
        // members 0, Z/2, Z/4: |Hom| products 1+1+1+1+2+2+1+2+4 = 15
        assert_eq!(fam.len(), 3);
        assert_eq!(fam.maps.len(), 15);
    }
}
