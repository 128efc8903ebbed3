use crate::error::{Error, Result};
use crate::linalg::matrix::unit_vector;
use crate::linalg::{preimage, HowellBasis, ResidueMatrix};

use super::subquotient::{subquotient, Subquotient};
use super::{FinModule, ModuleMap};

/// `Hom_R(M, N)` as an R-module, with the coordinate matrices of its
/// generators so elements can be turned back into maps.
pub struct HomModule {
    pub module: FinModule,
    source: FinModule,
    target: FinModule,
    quotient: Subquotient,
}

impl HomModule {
    pub fn source(&self) -> &FinModule {
        &self.source
    }

    pub fn target(&self) -> &FinModule {
        &self.target
    }

    /// The map represented by a coordinate vector of [`Self::module`].
    pub fn map_of(&self, x: &[u64]) -> ModuleMap {
        let flat = self.quotient.lift(x);
        let (cs, ct) = (self.source.rank(), self.target.rank());
        let rows: Vec<Vec<u64>> = (0..cs).map(|k| flat[k * ct..(k + 1) * ct].to_vec()).collect();
        let matrix = ResidueMatrix::from_rows(self.source.modulus(), ct, &rows).expect("shape");
        ModuleMap { source: self.source.clone(), target: self.target.clone(), matrix }
    }

    /// Coordinates of a map in [`Self::module`].
    pub fn coords_of(&self, f: &ModuleMap) -> Option<Vec<u64>> {
        let flat: Vec<u64> = f.matrix().row_vecs().concat();
        self.quotient.coords_of(&flat)
    }

    /// The R-linear evaluation `Hom(M, N) → N`, `f ↦ f(v)`.
    pub fn evaluation(&self, v: &[u64]) -> ModuleMap {
        let rows: Vec<Vec<u64>> = self
            .quotient
            .generators
            .iter()
            .enumerate()
            .map(|(k, _)| self.map_of(&unit_vector(self.quotient.generators.len(), k)).matrix().apply(v))
            .collect();
        let matrix = ResidueMatrix::from_rows(self.source.modulus(), self.target.rank(), &rows).expect("shape");
        ModuleMap { source: self.module.clone(), target: self.target.clone(), matrix }
    }
}

/// Solves the linear system "kills source relations and commutes with every
/// basis action modulo target relations", then divides out the maps that are
/// zero in the target. R acts by post-composition with the target action.
pub fn hom_module(m: &FinModule, n: &FinModule) -> Result<HomModule> {
    if !m.same_ring(n) {
        return Err(Error::MismatchedRings);
    }
    let modulus = m.modulus();
    let (cs, ct) = (m.rank(), n.rank());
    let vars = cs * ct;
    let rel_n = n.relations();
    let m_rels = m.relations().rows();
    let blocks = m_rels.len() + m.actions().len() * cs;

    // Row u of the system matrix is the image of the unit map E_u.
    let mut system = ResidueMatrix::zeros(modulus, vars, blocks * ct);
    for u in 0..vars {
        let (pk, pl) = (u / ct, u % ct);
        let f_row = |k: usize| -> Vec<u64> {
            if k == pk {
                unit_vector(ct, pl)
            } else {
                vec![0; ct]
            }
        };
        let apply_f = |v: &[u64]| -> Vec<u64> {
            // v·E_u = v_pk · e_pl
            let mut out = vec![0u64; ct];
            out[pl] = v[pk] % modulus;
            out
        };
        let mut col = 0;
        for rho in m_rels {
            let img = apply_f(rho);
            for (j, &x) in img.iter().enumerate() {
                system.set(u, col + j, x);
            }
            col += ct;
        }
        for (am, an) in m.actions().iter().zip(n.actions()) {
            for k in 0..cs {
                let e = unit_vector(cs, k);
                let lhs = apply_f(&am.apply(&e));
                let rhs = an.apply(&f_row(k));
                for j in 0..ct {
                    system.set(u, col + j, (lhs[j] + modulus - rhs[j]) % modulus);
                }
                col += ct;
            }
        }
    }
    let mut target_rows = Vec::new();
    for b in 0..blocks {
        for r in rel_n.rows() {
            let mut v = vec![0u64; blocks * ct];
            v[b * ct..(b + 1) * ct].copy_from_slice(r);
            target_rows.push(v);
        }
    }
    let target = HowellBasis::from_rows(modulus, blocks * ct, &target_rows);
    let solutions = if blocks == 0 { HowellBasis::full(modulus, vars) } else { preimage(&system, &target) };

    let mut zero_rows = Vec::new();
    for k in 0..cs {
        for r in rel_n.rows() {
            let mut v = vec![0u64; vars];
            v[k * ct..(k + 1) * ct].copy_from_slice(r);
            zero_rows.push(v);
        }
    }
    let zero_maps = HowellBasis::from_rows(modulus, vars, &zero_rows);
    let actions: Vec<ResidueMatrix> = n
        .actions()
        .iter()
        .map(|a| {
            let mut big = ResidueMatrix::zeros(modulus, vars, vars);
            for k in 0..cs {
                big.put_block(k * ct, k * ct, a);
            }
            big
        })
        .collect();
    let quotient = subquotient(m.ring(), &actions, &solutions, &zero_maps);
    let module = quotient.module.clone().with_label("Hom");
    Ok(HomModule { module, source: m.clone(), target: n.clone(), quotient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Ideal, RingSpec};

    /// Counts R-linear maps by testing every coordinate matrix.
    fn brute_hom_count(m: &FinModule, n: &FinModule) -> usize {
        let modulus = m.modulus();
        let (cs, ct) = (m.rank(), n.rank());
        let vars = cs * ct;
        let mut seen = std::collections::BTreeSet::new();
        let total = (modulus as usize).pow(vars as u32);
        for code in 0..total {
            let mut c = code;
            let mut flat = vec![0u64; vars];
            for x in flat.iter_mut() {
                *x = (c % modulus as usize) as u64;
                c /= modulus as usize;
            }
            let rows: Vec<Vec<u64>> = (0..cs).map(|k| flat[k * ct..(k + 1) * ct].to_vec()).collect();
            let mat = ResidueMatrix::from_rows(modulus, ct, &rows).unwrap();
            if let Ok(f) = ModuleMap::new(m, n, mat) {
                let key: Vec<Vec<u64>> = m.elements().iter().map(|v| f.apply(v)).collect();
                seen.insert(key);
            }
        }
        seen.len()
    }

    #[test]
    fn hom_from_regular_is_target() {
        let r = RingSpec::zn(6).build().unwrap();
        let reg = FinModule::regular(&r);
        let n = FinModule::free_quotient(&r, 1, &[vec![3]]).unwrap();
        let h = hom_module(&reg, &n).unwrap();
        assert_eq!(h.module.order(), n.order());
        let ev = h.evaluation(&r.one());
        assert!(ev.is_injective() && ev.is_surjective());
    }

    #[test]
    fn hom_z2_into_z8() {
        let r = RingSpec::zn(8).build().unwrap();
        let two = FinModule::free_quotient(&r, 1, &[vec![2]]).unwrap();
        let reg = FinModule::regular(&r);
        let h = hom_module(&two, &reg).unwrap();
        assert_eq!(h.module.order(), 2);
        assert_eq!(brute_hom_count(&two, &reg), 2);
    }

    #[test]
    fn hom_between_orthogonal_components_vanishes() {
        let r = RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(2)]).build().unwrap();
        let t = FinModule::cyclic(&r, &Ideal::principal(&r, &[0, 1]));
        let f = FinModule::cyclic(&r, &Ideal::principal(&r, &[1, 0]));
        assert!(hom_module(&t, &f).unwrap().module.is_zero());
        assert_eq!(brute_hom_count(&t, &f), 1);
    }

    #[test]
    fn hom_cardinality_matches_brute_force() {
        let r = RingSpec::zn(4).build().unwrap();
        let a = FinModule::free_quotient(&r, 2, &[vec![2, 0]]).unwrap();
        let b = FinModule::free_quotient(&r, 2, &[vec![0, 2]]).unwrap();
        let h = hom_module(&a, &b).unwrap();
        assert_eq!(h.module.order(), brute_hom_count(&a, &b) as u128);
        // every generator is a genuine module map
        for k in 0..h.module.rank() {
            let f = h.map_of(&unit_vector(h.module.rank(), k));
            assert!(ModuleMap::new(&a, &b, f.matrix().clone()).is_ok());
        }
    }

    #[test]
    fn hom_from_cyclic_matches_annihilator() {
        let r = RingSpec::zn(8).build().unwrap();
        let i = Ideal::principal(&r, &[2]);
        let m = FinModule::free_quotient(&r, 2, &[vec![0, 4]]).unwrap();
        let h = hom_module(&FinModule::cyclic(&r, &i), &m).unwrap();
        let ann = m.annihilator(&i);
        assert_eq!(h.module.order(), m.cardinality(&ann));
        let ev = h.evaluation(&r.one());
        assert!(ev.is_injective());
        assert_eq!(ev.image(), ann);
    }
}
