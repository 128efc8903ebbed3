//! Finite commutative unital rings presented as ℤ/n-algebras by structure
//! constants, and their ideals.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::matrix::{unit_vector, vec_add, vec_scale, vec_sub};
use crate::linalg::zn::{is_prime, lcm, neg_mod};
use crate::linalg::{HowellBasis, ResidueMatrix};
use crate::module::FinModule;

/// Declarative ring description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum RingSpec {
    /// ℤ/n.
    #[serde(rename = "Zn")]
    Zn { n: u64 },
    /// Prime field F_p.
    #[serde(rename = "GF")]
    Gf { p: u64 },
    /// (ℤ/n)[x]/(f) with `coeffs` the coefficients of `f`, constant term first.
    #[serde(rename = "PolyQuotient")]
    PolyQuotient { n: u64, coeffs: Vec<u64> },
    /// Finite direct product.
    #[serde(rename = "Product")]
    Product { factors: Vec<RingSpec> },
    /// `(ℤ/modulus)^b / relations` with `table[i][j] = e_i·e_j`. The unit
    /// defaults to `e_1`.
    #[serde(rename = "Table")]
    Table {
        modulus: u64,
        #[serde(default)]
        relations: Vec<Vec<u64>>,
        table: Vec<Vec<Vec<u64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit: Option<Vec<u64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
}

impl RingSpec {
    pub fn zn(n: u64) -> Self {
        RingSpec::Zn { n }
    }

    pub fn gf(p: u64) -> Self {
        RingSpec::Gf { p }
    }

    pub fn poly(n: u64, coeffs: &[u64]) -> Self {
        RingSpec::PolyQuotient { n, coeffs: coeffs.to_vec() }
    }

    pub fn product(factors: Vec<RingSpec>) -> Self {
        RingSpec::Product { factors }
    }

    pub fn build(&self) -> Result<Arc<FiniteRing>> {
        FiniteRing::from_spec(self).map(Arc::new)
    }
}

/// A commutative unital ring `(ℤ/n)^b / Rel` with multiplication given by
/// structure constants on the coordinate basis `e_1..e_b`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRing {
    modulus: u64,
    rank: usize,
    relations: HowellBasis,
    table: Vec<Vec<Vec<u64>>>,
    unit: Vec<u64>,
    label: String,
}

/// Coordinates of a ring element, reduced against the ring's relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingElement {
    pub coords: Vec<u64>,
}

impl RingElement {
    pub fn new(coords: Vec<u64>) -> Self {
        Self { coords }
    }
}

impl FiniteRing {
    /// Validates the ring axioms exhaustively over basis pairs and triples.
    pub fn new(
        modulus: u64,
        relation_rows: &[Vec<u64>],
        table: Vec<Vec<Vec<u64>>>,
        unit: Vec<u64>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        let rank = unit.len();
        if rank == 0 {
            return Err(Error::InvalidRing("rank must be positive".into()));
        }
        if table.len() != rank || table.iter().any(|r| r.len() != rank || r.iter().any(|c| c.len() != rank)) {
            return Err(Error::InvalidRing("structure constant table has wrong shape".into()));
        }
        if relation_rows.iter().any(|r| r.len() != rank) {
            return Err(Error::DimensionMismatch { expected: rank, found: 0 });
        }
        let relations = HowellBasis::from_rows(modulus, rank, relation_rows);
        let table = table.into_iter().map(|row| row.into_iter().map(|c| relations.reduce(&c)).collect()).collect();
        let unit = relations.reduce(&unit);
        let ring = Self { modulus, rank, relations, table, unit, label: label.into() };
        ring.validate()?;
        Ok(ring)
    }

    fn validate(&self) -> Result<()> {
        if self.relations.contains(&self.unit) {
            return Err(Error::InvalidRing("zero ring (1 = 0)".into()));
        }
        let b = self.rank;
        let basis: Vec<Vec<u64>> = (0..b).map(|i| unit_vector(b, i)).collect();
        for rel in self.relations.rows() {
            for e in &basis {
                if !self.relations.contains(&self.mul(rel, e)) {
                    return Err(Error::InvalidRing("multiplication does not respect relations".into()));
                }
            }
        }
        for i in 0..b {
            if self.mul(&self.unit, &basis[i]) != self.normalize(&basis[i]) {
                return Err(Error::InvalidRing(format!("unit does not fix e{}", i + 1)));
            }
            for j in 0..b {
                if self.table[i][j] != self.table[j][i] {
                    return Err(Error::InvalidRing(format!("e{}·e{} ≠ e{}·e{}", i + 1, j + 1, j + 1, i + 1)));
                }
                for k in 0..b {
                    let left = self.mul(&self.table[i][j], &basis[k]);
                    let right = self.mul(&basis[i], &self.table[j][k]);
                    if left != right {
                        return Err(Error::InvalidRing(format!(
                            "associativity fails on (e{}, e{}, e{})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_spec(spec: &RingSpec) -> Result<Self> {
        match spec {
            RingSpec::Zn { n } => Self::residue(*n, format!("Z/{n}")),
            RingSpec::Gf { p } => {
                if !is_prime(*p) {
                    return Err(Error::InvalidRing(format!("{p} is not prime")));
                }
                Self::residue(*p, format!("F{p}"))
            }
            RingSpec::PolyQuotient { n, coeffs } => Self::poly_quotient(*n, coeffs),
            RingSpec::Product { factors } => {
                let rings = factors.iter().map(Self::from_spec).collect::<Result<Vec<_>>>()?;
                Self::product(&rings)
            }
            RingSpec::Table { modulus, relations, table, unit, label } => {
                let b = table.len();
                let unit = unit.clone().unwrap_or_else(|| if b == 0 { Vec::new() } else { unit_vector(b, 0) });
                let label = label.clone().unwrap_or_else(|| format!("(Z/{modulus})^{b}/Rel"));
                Self::new(*modulus, relations, table.clone(), unit, label)
            }
        }
    }

    fn residue(n: u64, label: String) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        Self::new(n, &[], vec![vec![vec![1]]], vec![1], label)
    }

    fn poly_quotient(n: u64, coeffs: &[u64]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        let d = coeffs.len().checked_sub(1).ok_or_else(|| Error::InvalidRing("empty polynomial".into()))?;
        if coeffs[d] % n != 1 {
            return Err(Error::NonMonic);
        }
        if d == 0 {
            return Err(Error::InvalidRing("constant modulus polynomial gives the zero ring".into()));
        }
        // Reduce x^k for k < 2d - 1 into the basis 1, x, ..., x^{d-1}.
        let mut powers: Vec<Vec<u64>> = (0..d).map(|i| unit_vector(d, i)).collect();
        for k in d..(2 * d - 1) {
            let prev = &powers[k - 1];
            let mut next = vec![0u64; d];
            let top = prev[d - 1];
            for i in (1..d).rev() {
                next[i] = prev[i - 1];
            }
            for (i, c) in coeffs.iter().take(d).enumerate() {
                next[i] = (next[i] + neg_mod(top * (c % n) % n, n)) % n;
            }
            powers.push(next);
        }
        let table = (0..d).map(|i| (0..d).map(|j| powers[i + j].clone()).collect()).collect();
        Self::new(n, &[], table, unit_vector(d, 0), poly_label(n, coeffs))
    }

    /// Direct product; the common modulus is the lcm of the factors'.
    pub fn product(rings: &[FiniteRing]) -> Result<Self> {
        if rings.is_empty() {
            return Err(Error::InvalidRing("empty product".into()));
        }
        let modulus = rings.iter().fold(1, |acc, r| lcm(acc, r.modulus));
        let rank: usize = rings.iter().map(|r| r.rank).sum();
        let mut relations = Vec::new();
        let mut table = vec![vec![vec![0u64; rank]; rank]; rank];
        let mut unit = vec![0u64; rank];
        let mut offset = 0;
        for r in rings {
            let lift = |v: &[u64]| {
                let mut out = vec![0u64; rank];
                out[offset..offset + r.rank].copy_from_slice(v);
                out
            };
            for rel in r.relations.rows() {
                relations.push(lift(rel));
            }
            for i in 0..r.rank {
                let mut e = vec![0u64; rank];
                e[offset + i] = r.modulus % modulus;
                relations.push(e);
                for j in 0..r.rank {
                    table[offset + i][offset + j] = lift(&r.table[i][j]);
                }
            }
            unit[offset..offset + r.rank].copy_from_slice(&r.unit);
            offset += r.rank;
        }
        let label = rings.iter().map(|r| r.label.clone()).collect::<Vec<_>>().join(" x ");
        Self::new(modulus, &relations, table, unit, label)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &HowellBasis {
        &self.relations
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn one(&self) -> Vec<u64> {
        self.unit.clone()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank]
    }

    /// Structure constant row for `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[u64] {
        &self.table[i][j]
    }

    pub fn normalize(&self, v: &[u64]) -> Vec<u64> {
        self.relations.reduce(v)
    }

    pub fn element(&self, coords: Vec<u64>) -> RingElement {
        RingElement::new(self.normalize(&coords))
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.normalize(&vec_add(a, b, self.modulus))
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.normalize(&vec_sub(a, b, self.modulus))
    }

    pub fn scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        self.normalize(&vec_scale(a, c, self.modulus))
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.modulus;
        let mut out = vec![0u64; self.rank];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = (ai as u128 * bj as u128 % n as u128) as u64;
                for (o, &t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o = ((*o as u128 + c as u128 * t as u128) % n as u128) as u64;
                }
            }
        }
        self.normalize(&out)
    }

    pub fn pow(&self, a: &[u64], mut e: u128) -> Vec<u64> {
        let mut acc = self.one();
        let mut base = self.normalize(a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        self.relations.contains(a)
    }

    /// Matrix of `v ↦ v·a` on coordinates (rows are `e_k · a`).
    pub fn multiplication_matrix(&self, a: &[u64]) -> ResidueMatrix {
        let rows: Vec<Vec<u64>> = (0..self.rank).map(|k| self.mul(&unit_vector(self.rank, k), a)).collect();
        ResidueMatrix::from_rows(self.modulus, self.rank, &rows).expect("square")
    }

    pub fn order(&self) -> u128 {
        self.relations.index()
    }

    /// All elements as canonical coordinate rows.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        HowellBasis::full(self.modulus, self.rank).coset_elements(&self.relations)
    }

    pub fn is_unit(&self, a: &[u64]) -> bool {
        let one = self.one();
        self.elements().iter().any(|u| self.mul(a, u) == one)
    }

    /// Every element satisfies `r = r²u` for some `u`.
    pub fn is_von_neumann_regular(&self) -> bool {
        let elems = self.elements();
        elems.iter().all(|r| {
            let r2 = self.mul(r, r);
            elems.iter().any(|u| self.mul(&r2, u) == *r)
        })
    }

    /// Regular module `R` over itself.
    pub fn regular_module(self: &Arc<Self>) -> FinModule {
        FinModule::regular(self)
    }

    /// All ideals, each once.
    pub fn ideals(self: &Arc<Self>) -> Vec<Ideal> {
        let regular = FinModule::regular(self);
        regular
            .enumerate_submodules(u128::MAX)
            .expect("no bound")
            .into_iter()
            .map(|s| Ideal::from_basis(self, s.basis().clone()))
            .collect()
    }

    /// Maximal ideals, i.e. proper ideals not strictly contained in another proper ideal.
    pub fn maximal_ideals(self: &Arc<Self>) -> Vec<Ideal> {
        let proper: Vec<Ideal> = self.ideals().into_iter().filter(|i| !i.is_unit_ideal()).collect();
        proper.iter().filter(|i| !proper.iter().any(|j| j != *i && i.is_subset_of(j))).cloned().collect()
    }

    /// Idempotent elements.
    pub fn idempotents(&self) -> Vec<Vec<u64>> {
        self.elements().into_iter().filter(|e| self.mul(e, e) == *e).collect()
    }
}

fn poly_label(n: u64, coeffs: &[u64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c % n != 0)
        .map(|(i, &c)| {
            let c = c % n;
            match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            }
        })
        .collect();
    format!("(Z/{n})[x]/({})", terms.join(" + "))
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, order {})", self.label, self.order())
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// An ideal, stored as the Howell basis of its coordinate preimage (which
/// always contains the ring's relations).
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<FiniteRing>,
    generators: Vec<Vec<u64>>,
    basis: HowellBasis,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({:?} in {})", self.group_generators(), self.ring.label)
    }
}

impl Ideal {
    /// Smallest ideal containing `gens`.
    pub fn generate(ring: &Arc<FiniteRing>, gens: &[Vec<u64>]) -> Self {
        let b = ring.rank;
        let mut rows: Vec<Vec<u64>> = ring.relations.rows().to_vec();
        for g in gens {
            for i in 0..b {
                rows.push(ring.mul(g, &unit_vector(b, i)));
            }
        }
        Self {
            ring: Arc::clone(ring),
            generators: gens.iter().map(|g| ring.normalize(g)).collect(),
            basis: HowellBasis::from_rows(ring.modulus, b, &rows),
        }
    }

    /// Wraps an action-closed basis that already contains the ring's relations.
    pub fn from_basis(ring: &Arc<FiniteRing>, basis: HowellBasis) -> Self {
        let generators = basis.rows().iter().map(|r| ring.normalize(r)).filter(|r| r.iter().any(|&x| x != 0)).collect();
        Self { ring: Arc::clone(ring), generators, basis }
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Self {
        Self::generate(ring, &[])
    }

    pub fn unit(ring: &Arc<FiniteRing>) -> Self {
        Self::generate(ring, &[ring.one()])
    }

    pub fn principal(ring: &Arc<FiniteRing>, a: &[u64]) -> Self {
        Self::generate(ring, &[a.to_vec()])
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn basis(&self) -> &HowellBasis {
        &self.basis
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    /// Nonzero ℤ/n-generators of the ideal (normalized basis rows).
    pub fn group_generators(&self) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = Vec::new();
        for r in self.basis.rows() {
            let r = self.ring.normalize(r);
            if r.iter().any(|&x| x != 0) && !out.contains(&r) {
                out.push(r);
            }
        }
        out
    }

    pub fn contains(&self, a: &[u64]) -> bool {
        self.basis.contains(a)
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.basis.is_subset_of(&other.basis)
    }

    pub fn is_zero(&self) -> bool {
        self.basis == *self.ring.relations()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.contains(&self.ring.one())
    }

    pub fn order(&self) -> u128 {
        self.basis.order() / self.ring.relations.order()
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        self.basis.coset_elements(&self.ring.relations)
    }

    fn check_same_ring(&self, other: &Ideal) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::MismatchedRings)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        Ok(Ideal::from_basis(&self.ring, self.basis.join(&other.basis)))
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        Ok(Ideal::from_basis(&self.ring, self.basis.meet(&other.basis)))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        let a = self.group_generators();
        let b = other.group_generators();
        let gens: Vec<Vec<u64>> =
            a.iter().flat_map(|x| b.iter().map(move |y| (x, y))).map(|(x, y)| self.ring.mul(x, y)).collect();
        Ok(Ideal::generate(&self.ring, &gens))
    }

    /// `I^k`, with `I^0 = R`.
    pub fn power(&self, k: usize) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    pub fn is_idempotent(&self) -> bool {
        self.product(self).expect("same ring") == *self
    }

    /// Least `k ≥ 1` with `I^k = I^{k+1}`.
    pub fn power_stabilization_index(&self) -> usize {
        let cap = self.ring.order() as usize + 1;
        let mut current = self.clone();
        for k in 1..=cap {
            let next = current.product(self).expect("same ring");
            if next == current {
                return k;
            }
            current = next;
        }
        unreachable!("descending chain of ideals in a finite ring must stabilize within |R| steps")
    }

    /// `r ∈ √I`, i.e. `r^t ∈ I` for some `t ≤ |R|`.
    pub fn radical_contains(&self, r: &[u64]) -> bool {
        self.contains(&self.ring.pow(r, self.ring.order()))
    }

    pub fn radical(&self) -> Ideal {
        let members: Vec<Vec<u64>> = self.ring.elements().into_iter().filter(|r| self.radical_contains(r)).collect();
        Ideal::generate(&self.ring, &members)
    }

    /// An idempotent `e` with `(e) = I`, if one exists.
    pub fn idempotent_generator(&self) -> Option<Vec<u64>> {
        self.elements().into_iter().find(|e| self.ring.mul(e, e) == *e && Ideal::principal(&self.ring, e) == *self)
    }

    /// `(I : J) = {r : rJ ⊆ I}`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        let members: Vec<Vec<u64>> = self
            .ring
            .elements()
            .into_iter()
            .filter(|r| other.group_generators().iter().all(|g| self.contains(&self.ring.mul(r, g))))
            .collect();
        Ok(Ideal::generate(&self.ring, &members))
    }
}

/// Nilradical `√0`; the Jacobson radical of a finite commutative ring.
pub fn nilradical(ring: &Arc<FiniteRing>) -> Ideal {
    Ideal::zero(ring).radical()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2xf2() -> Arc<FiniteRing> {
        RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(2)]).build().unwrap()
    }

    #[test]
    fn residue_ring() {
        let r = RingSpec::zn(8).build().unwrap();
        assert_eq!(r.rank(), 1);
        assert_eq!(r.one(), vec![1]);
        assert_eq!(r.order(), 8);
    }

    #[test]
    fn structure_constant_table() {
        let spec: RingSpec = serde_json::from_str(
            r#"{"type": "Table", "modulus": 2, "table": [[[1,0,0],[0,1,0],[0,0,1]], [[0,1,0],[0,0,0],[0,0,0]], [[0,0,1],[0,0,0],[0,0,0]]]}"#,
        )
        .unwrap();
        let r = spec.build().unwrap();
        assert_eq!(r.order(), 8);
        assert_eq!(nilradical(&r).order(), 4);
        let bad =
            RingSpec::Table { modulus: 4, relations: vec![], table: vec![vec![vec![2]]], unit: None, label: None };
        assert!(bad.build().is_err());
    }

    #[test]
    fn product_of_fields_structure() {
        let r = f2xf2();
        assert_eq!(r.rank(), 2);
        assert_eq!(r.modulus(), 2);
        assert_eq!(r.basis_product(0, 0), &[1, 0]);
        assert_eq!(r.basis_product(1, 1), &[0, 1]);
        assert_eq!(r.basis_product(0, 1), &[0, 0]);
    }

    #[test]
    fn mixed_characteristic_product() {
        let r = RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(3)]).build().unwrap();
        assert_eq!(r.modulus(), 6);
        assert_eq!(r.order(), 6);
        assert!(r.is_von_neumann_regular());
    }

    #[test]
    fn dual_numbers() {
        let r = RingSpec::poly(2, &[0, 0, 1]).build().unwrap();
        assert_eq!(r.rank(), 2);
        assert_eq!(r.mul(&[0, 1], &[0, 1]), vec![0, 0]);
        assert!(!r.is_von_neumann_regular());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(RingSpec::poly(4, &[1, 2]).build().unwrap_err(), Error::NonMonic);
        assert!(RingSpec::zn(1).build().is_err());
        assert!(RingSpec::gf(4).build().is_err());
        // e1·e2 ≠ e2·e1
        let bad = FiniteRing::new(
            2,
            &[],
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 0], vec![0, 1]]],
            vec![1, 0],
            "bad",
        );
        assert!(bad.is_err());
    }

    #[test]
    fn ideal_generation() {
        let z8 = RingSpec::zn(8).build().unwrap();
        let i = Ideal::principal(&z8, &[2]);
        assert_eq!(i.elements(), vec![vec![0], vec![2], vec![4], vec![6]]);
        let r = f2xf2();
        let e1 = Ideal::principal(&r, &[1, 0]);
        assert_eq!(e1.elements(), vec![vec![0, 0], vec![1, 0]]);
        assert!(Ideal::generate(&r, &[]).is_zero());
    }

    #[test]
    fn powers_and_idempotency() {
        let z8 = RingSpec::zn(8).build().unwrap();
        let i = Ideal::principal(&z8, &[2]);
        assert_eq!(i.power(2), Ideal::principal(&z8, &[4]));
        assert!(!i.is_idempotent());
        assert_eq!(i.power_stabilization_index(), 3);
        assert_eq!(i.product(&Ideal::unit(&z8)).unwrap(), i);
        let r = f2xf2();
        let e1 = Ideal::principal(&r, &[1, 0]);
        assert_eq!(e1.power(2), e1);
        assert!(e1.is_idempotent());
        assert_eq!(e1.power_stabilization_index(), 1);
        assert!(Ideal::unit(&r).is_idempotent());
    }

    #[test]
    fn radicals() {
        let z8 = RingSpec::zn(8).build().unwrap();
        assert_eq!(Ideal::principal(&z8, &[4]).radical(), Ideal::principal(&z8, &[2]));
        let r = f2xf2();
        assert!(Ideal::zero(&r).radical().is_zero());
        assert!(Ideal::unit(&r).radical().is_unit_ideal());
    }

    #[test]
    fn idempotent_generators() {
        let r = f2xf2();
        assert_eq!(Ideal::principal(&r, &[1, 0]).idempotent_generator(), Some(vec![1, 0]));
        let z8 = RingSpec::zn(8).build().unwrap();
        assert_eq!(Ideal::principal(&z8, &[2]).idempotent_generator(), None);
        assert_eq!(Ideal::zero(&z8).idempotent_generator(), Some(vec![0]));
    }
}
