//! Finite R-modules presented as `(ℤ/n)^c / Rel` with one action matrix per
//! ring basis element, their submodules and homomorphisms.

mod enumerate;
mod hom;
mod subquotient;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::matrix::{unit_vector, vec_sub};
use crate::linalg::{invariant_factors, preimage, HowellBasis, ResidueMatrix};
use crate::ring::{FiniteRing, Ideal};

pub use hom::{hom_module, HomModule};
pub use subquotient::{subquotient, Subquotient};

/// A finite module over a [`FiniteRing`]. Elements are coordinate rows over
/// ℤ/n modulo `relations`; ring basis element `e_i` acts by `v ↦ v·A_i`.
#[derive(Clone)]
pub struct FinModule {
    ring: Arc<FiniteRing>,
    rank: usize,
    relations: HowellBasis,
    actions: Vec<ResidueMatrix>,
    label: String,
}

/// An action-closed subgroup of a module, stored as the Howell basis of its
/// coordinate preimage (so it always contains the module relations).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Submodule {
    basis: HowellBasis,
}

impl Submodule {
    pub fn basis(&self) -> &HowellBasis {
        &self.basis
    }

    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        self.basis.is_subset_of(&other.basis)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.basis.contains(v)
    }

    pub fn join(&self, other: &Submodule) -> Submodule {
        Submodule { basis: self.basis.join(&other.basis) }
    }

    pub fn meet(&self, other: &Submodule) -> Submodule {
        Submodule { basis: self.basis.meet(&other.basis) }
    }
}

/// An R-linear map given by a coordinate matrix acting on row vectors.
#[derive(Clone)]
pub struct ModuleMap {
    source: FinModule,
    target: FinModule,
    matrix: ResidueMatrix,
}

impl FinModule {
    /// Validates that the actions preserve the relations, that 1 acts as the
    /// identity, and that the actions compose according to the structure
    /// constants (ring relations acting as zero).
    pub fn new(
        ring: &Arc<FiniteRing>,
        rank: usize,
        relation_rows: &[Vec<u64>],
        actions: Vec<ResidueMatrix>,
    ) -> Result<Self> {
        let n = ring.modulus();
        if actions.len() != ring.rank() {
            return Err(Error::InvalidModule(format!(
                "expected {} action matrices, found {}",
                ring.rank(),
                actions.len()
            )));
        }
        for a in &actions {
            if a.nrows() != rank || a.ncols() != rank || a.modulus() != n {
                return Err(Error::InvalidModule("action matrix has the wrong shape or modulus".into()));
            }
        }
        if let Some(r) = relation_rows.iter().find(|r| r.len() != rank) {
            return Err(Error::DimensionMismatch { expected: rank, found: r.len() });
        }
        let relations = HowellBasis::from_rows(n, rank, relation_rows);
        let m = Self { ring: Arc::clone(ring), rank, relations, actions, label: String::new() };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let rel = &self.relations;
        for a in &self.actions {
            if rel.rows().iter().any(|r| !rel.contains(&a.apply(r))) {
                return Err(Error::InvalidModule("action does not preserve relations".into()));
            }
        }
        let one = self.element_matrix(&self.ring.one());
        let b = self.ring.rank();
        for k in 0..self.rank {
            let e = unit_vector(self.rank, k);
            if !rel.contains(&vec_sub(&one.apply(&e), &e, self.ring.modulus())) {
                return Err(Error::InvalidModule("unit does not act as the identity".into()));
            }
            for i in 0..b {
                let ei = e.clone();
                let left = self.actions[i].apply(&ei);
                for j in 0..b {
                    let lhs = self.actions[j].apply(&left);
                    let rhs = self.element_matrix(self.ring.basis_product(i, j)).apply(&e);
                    if !rel.contains(&vec_sub(&lhs, &rhs, self.ring.modulus())) {
                        return Err(Error::InvalidModule(format!(
                            "actions of e{} and e{} do not compose per the structure constants",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
            for sigma in self.ring.relations().rows() {
                if !rel.contains(&self.element_matrix(sigma).apply(&e)) {
                    return Err(Error::InvalidModule("a ring relation acts nontrivially".into()));
                }
            }
        }
        Ok(())
    }

    /// The zero module.
    pub fn zero(ring: &Arc<FiniteRing>) -> Self {
        let n = ring.modulus();
        let actions = (0..ring.rank()).map(|_| ResidueMatrix::zeros(n, 0, 0)).collect();
        Self { ring: Arc::clone(ring), rank: 0, relations: HowellBasis::zero(n, 0), actions, label: "0".into() }
    }

    /// `R` as a module over itself.
    pub fn regular(ring: &Arc<FiniteRing>) -> Self {
        Self::free_quotient(ring, 1, &[]).expect("regular module is valid").with_label("R")
    }

    /// `R^c / N` where `N` is the submodule generated by `rows`, given in
    /// block coordinates (generator `j`, ring basis `i`) ↦ `j·b + i`.
    pub fn free_quotient(ring: &Arc<FiniteRing>, c: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let b = ring.rank();
        let n = ring.modulus();
        let rank = b * c;
        let mut rels = Vec::new();
        for j in 0..c {
            for sigma in ring.relations().rows() {
                let mut v = vec![0u64; rank];
                v[j * b..(j + 1) * b].copy_from_slice(sigma);
                rels.push(v);
            }
        }
        let actions: Vec<ResidueMatrix> = (0..b)
            .map(|i| {
                let block = ring.multiplication_matrix(&unit_vector(b, i));
                let mut m = ResidueMatrix::zeros(n, rank, rank);
                for j in 0..c {
                    m.put_block(j * b, j * b, &block);
                }
                m
            })
            .collect();
        let free = Self::new(ring, rank, &rels, actions)?;
        let sub = free.span(rows)?;
        let label = if rows.is_empty() { format!("R^{c}") } else { format!("R^{c}/N") };
        Ok(free.quotient(&sub).with_label(label))
    }

    /// The cyclic module `R/J`.
    pub fn cyclic(ring: &Arc<FiniteRing>, ideal: &Ideal) -> Self {
        let regular = Self::regular(ring);
        let sub = Submodule { basis: ideal.basis().clone() };
        regular.quotient(&sub).with_label("R/J")
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }

    pub fn relations(&self) -> &HowellBasis {
        &self.relations
    }

    pub fn actions(&self) -> &[ResidueMatrix] {
        &self.actions
    }

    /// Matrix of the action of an arbitrary ring element.
    pub fn element_matrix(&self, r: &[u64]) -> ResidueMatrix {
        let mut m = ResidueMatrix::zeros(self.modulus(), self.rank, self.rank);
        for (a, &c) in self.actions.iter().zip(r) {
            if c != 0 {
                m = m.add(&a.scale(c));
            }
        }
        m
    }

    pub fn act(&self, r: &[u64], v: &[u64]) -> Vec<u64> {
        self.normalize(&self.element_matrix(r).apply(v))
    }

    pub fn normalize(&self, v: &[u64]) -> Vec<u64> {
        self.relations.reduce(v)
    }

    pub fn order(&self) -> u128 {
        self.relations.index()
    }

    pub fn is_zero(&self) -> bool {
        self.order() == 1
    }

    /// Canonical representatives of all elements.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        HowellBasis::full(self.modulus(), self.rank).coset_elements(&self.relations)
    }

    /// Invariant factors of the underlying abelian group.
    pub fn abelian_invariants(&self) -> Vec<u64> {
        invariant_factors(&self.relations)
    }

    pub fn same_ring(&self, other: &FinModule) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn is_closed(&self, basis: &HowellBasis) -> bool {
        self.relations.is_subset_of(basis)
            && self.actions.iter().all(|a| basis.rows().iter().all(|r| basis.contains(&a.apply(r))))
    }

    /// Wraps a basis as a submodule after checking it contains the relations
    /// and is action-closed.
    pub fn submodule(&self, basis: HowellBasis) -> Result<Submodule> {
        if basis.ambient() != self.rank || basis.modulus() != self.modulus() {
            return Err(Error::DimensionMismatch { expected: self.rank, found: basis.ambient() });
        }
        if !self.is_closed(&basis) {
            return Err(Error::NotActionClosed);
        }
        Ok(Submodule { basis })
    }

    /// Submodule generated by `gens`.
    pub fn span(&self, gens: &[Vec<u64>]) -> Result<Submodule> {
        if let Some(g) = gens.iter().find(|g| g.len() != self.rank) {
            return Err(Error::DimensionMismatch { expected: self.rank, found: g.len() });
        }
        let mut rows: Vec<Vec<u64>> = self.relations.rows().to_vec();
        for g in gens {
            for a in &self.actions {
                rows.push(a.apply(g));
            }
        }
        Ok(Submodule { basis: HowellBasis::from_rows(self.modulus(), self.rank, &rows) })
    }

    pub fn whole(&self) -> Submodule {
        Submodule { basis: HowellBasis::full(self.modulus(), self.rank) }
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule { basis: self.relations.clone() }
    }

    pub fn is_zero_submodule(&self, s: &Submodule) -> bool {
        s.basis == self.relations
    }

    pub fn is_whole(&self, s: &Submodule) -> bool {
        s.basis.index() == 1
    }

    pub fn cardinality(&self, s: &Submodule) -> u128 {
        s.basis.relative_order(&self.relations)
    }

    pub fn submodule_elements(&self, s: &Submodule) -> Vec<Vec<u64>> {
        s.basis.coset_elements(&self.relations)
    }

    /// Nonzero ℤ/n-generators of a submodule, normalized.
    pub fn submodule_generators(&self, s: &Submodule) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = Vec::new();
        for r in s.basis.rows() {
            let r = self.normalize(r);
            if r.iter().any(|&x| x != 0) && !out.contains(&r) {
                out.push(r);
            }
        }
        out
    }

    /// `(0 :_N J) = {m ∈ N : J·m = 0}`; for `N = M` use [`Self::annihilator`].
    pub fn annihilator_in(&self, ideal: &Ideal, within: &Submodule) -> Submodule {
        let mut acc = within.basis.clone();
        for g in ideal_generators(ideal) {
            let k = preimage(&self.element_matrix(&g), &self.relations);
            acc = acc.meet(&k);
        }
        Submodule { basis: acc }
    }

    /// `(0 :_M J)`.
    pub fn annihilator(&self, ideal: &Ideal) -> Submodule {
        self.annihilator_in(ideal, &self.whole())
    }

    /// `J·N`.
    pub fn ideal_scale_sub(&self, ideal: &Ideal, s: &Submodule) -> Submodule {
        let gens = self.submodule_generators(s);
        let mut rows: Vec<Vec<u64>> = self.relations.rows().to_vec();
        for g in ideal_generators(ideal) {
            let a = self.element_matrix(&g);
            for m in &gens {
                rows.push(a.apply(m));
            }
        }
        self.span(&rows).expect("rows have module rank")
    }

    /// `J·M`.
    pub fn ideal_scale(&self, ideal: &Ideal) -> Submodule {
        self.ideal_scale_sub(ideal, &self.whole())
    }

    /// `M/N` on the same coordinates; the projection is the identity matrix.
    pub fn quotient(&self, s: &Submodule) -> FinModule {
        let mut q = self.clone();
        q.relations = s.basis.clone();
        q.label = format!("{}/N", self.label);
        q
    }

    pub fn projection(&self, s: &Submodule) -> ModuleMap {
        let q = self.quotient(s);
        ModuleMap { source: self.clone(), target: q, matrix: ResidueMatrix::identity(self.modulus(), self.rank) }
    }

    /// Submodule realized as a module in its own coordinates, with the
    /// inclusion map back into `self`.
    pub fn submodule_as_module(&self, s: &Submodule) -> (FinModule, ModuleMap) {
        let sq = subquotient(&self.ring, &self.actions, &s.basis, &self.relations);
        let inclusion = ModuleMap { source: sq.module.clone(), target: self.clone(), matrix: sq.lift_matrix() };
        (sq.module, inclusion)
    }

    /// Image of a submodule of `self` under `ρ` into the quotient `self/floor`.
    pub fn image_in_quotient(&self, s: &Submodule, floor: &Submodule) -> Submodule {
        Submodule { basis: s.basis.join(&floor.basis) }
    }

    /// `M ⊕ N` with concatenated coordinates.
    pub fn direct_sum(&self, other: &FinModule) -> Result<FinModule> {
        if !self.same_ring(other) {
            return Err(Error::MismatchedRings);
        }
        let c = self.rank + other.rank;
        let mut rels: Vec<Vec<u64>> = Vec::new();
        for r in self.relations.rows() {
            let mut v = r.clone();
            v.extend(std::iter::repeat_n(0, other.rank));
            rels.push(v);
        }
        for r in other.relations.rows() {
            let mut v = vec![0u64; self.rank];
            v.extend_from_slice(r);
            rels.push(v);
        }
        let actions = self.actions.iter().zip(&other.actions).map(|(a, b)| a.block_diag(b)).collect();
        Ok(FinModule {
            ring: Arc::clone(&self.ring),
            rank: c,
            relations: HowellBasis::from_rows(self.modulus(), c, &rels),
            actions,
            label: format!("{} + {}", self.label, other.label),
        })
    }

    /// Canonical inclusions `M → M ⊕ N` and `N → M ⊕ N`.
    pub fn sum_inclusions(&self, other: &FinModule) -> Result<(ModuleMap, ModuleMap)> {
        let sum = self.direct_sum(other)?;
        let n = self.modulus();
        let mut left = ResidueMatrix::zeros(n, self.rank, sum.rank);
        left.put_block(0, 0, &ResidueMatrix::identity(n, self.rank));
        let mut right = ResidueMatrix::zeros(n, other.rank, sum.rank);
        right.put_block(0, self.rank, &ResidueMatrix::identity(n, other.rank));
        Ok((
            ModuleMap { source: self.clone(), target: sum.clone(), matrix: left },
            ModuleMap { source: other.clone(), target: sum, matrix: right },
        ))
    }

    /// All submodules, each once; fails when `|M| > bound`.
    pub fn enumerate_submodules(&self, bound: u128) -> Result<Vec<Submodule>> {
        enumerate::enumerate_submodules(self, bound)
    }
}

/// R-generators of an ideal used to test annihilation and form products.
fn ideal_generators(ideal: &Ideal) -> Vec<Vec<u64>> {
    ideal.group_generators()
}

impl fmt::Debug for FinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinModule({} over {}, order {}, invariants {:?})",
            self.label,
            self.ring.label(),
            self.order(),
            self.abelian_invariants()
        )
    }
}

impl ModuleMap {
    /// Validates well-definedness on relations and R-linearity.
    pub fn new(source: &FinModule, target: &FinModule, matrix: ResidueMatrix) -> Result<Self> {
        if !source.same_ring(target) {
            return Err(Error::MismatchedRings);
        }
        if matrix.nrows() != source.rank || matrix.ncols() != target.rank {
            return Err(Error::InvalidMap("matrix shape does not match the modules".into()));
        }
        let f = Self { source: source.clone(), target: target.clone(), matrix };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        let n = self.source.modulus();
        let trel = &self.target.relations;
        if self.source.relations.rows().iter().any(|r| !trel.contains(&self.matrix.apply(r))) {
            return Err(Error::InvalidMap("source relations do not map to zero".into()));
        }
        for (a, b) in self.source.actions.iter().zip(&self.target.actions) {
            for k in 0..self.source.rank {
                let e = unit_vector(self.source.rank, k);
                let lhs = self.matrix.apply(&a.apply(&e));
                let rhs = b.apply(&self.matrix.apply(&e));
                if !trel.contains(&vec_sub(&lhs, &rhs, n)) {
                    return Err(Error::InvalidMap("map does not commute with the ring action".into()));
                }
            }
        }
        Ok(())
    }

    pub fn identity(m: &FinModule) -> Self {
        Self { source: m.clone(), target: m.clone(), matrix: ResidueMatrix::identity(m.modulus(), m.rank) }
    }

    pub fn zero(source: &FinModule, target: &FinModule) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            matrix: ResidueMatrix::zeros(source.modulus(), source.rank, target.rank),
        }
    }

    pub fn source(&self) -> &FinModule {
        &self.source
    }

    pub fn target(&self) -> &FinModule {
        &self.target
    }

    pub fn matrix(&self) -> &ResidueMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        self.target.normalize(&self.matrix.apply(v))
    }

    /// `f(N)` as a submodule of the target.
    pub fn image_of(&self, s: &Submodule) -> Submodule {
        let rows: Vec<Vec<u64>> = s.basis.rows().iter().map(|r| self.matrix.apply(r)).collect();
        let basis = self.target.relations.join_rows(&rows);
        Submodule { basis }
    }

    pub fn image(&self) -> Submodule {
        self.image_of(&self.source.whole())
    }

    /// `f⁻¹(N)` for a submodule of the target.
    pub fn preimage_of(&self, s: &Submodule) -> Submodule {
        Submodule { basis: preimage(&self.matrix, &s.basis) }
    }

    pub fn kernel(&self) -> Submodule {
        self.preimage_of(&self.target.zero_submodule())
    }

    pub fn is_injective(&self) -> bool {
        self.source.is_zero_submodule(&self.kernel())
    }

    pub fn is_surjective(&self) -> bool {
        self.target.is_whole(&self.image())
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ModuleMap) -> Result<ModuleMap> {
        if g.source.rank != self.target.rank || g.source.relations != self.target.relations {
            return Err(Error::InvalidMap("maps are not composable".into()));
        }
        Ok(ModuleMap { source: self.source.clone(), target: g.target.clone(), matrix: self.matrix.mul(&g.matrix) })
    }

    /// Restriction to a submodule `N ≤ source` and corestriction into
    /// `target / floor`, with `N` realized in its own coordinates.
    pub fn restrict(&self, s: &Submodule, floor: &Submodule) -> ModuleMap {
        let (sub, inc) = self.source.submodule_as_module(s);
        ModuleMap { source: sub, target: self.target.quotient(floor), matrix: inc.matrix.mul(&self.matrix) }
    }
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({:?} -> {:?}, {:?})", self.source, self.target, self.matrix)
    }
}
