//! The contraction action of `k[x_1..x_n]` on the polynomial space
//! `k[X_1..X_n]` over ℚ, truncated at total degree `D`:
//! `x^α ∘ X^β = β!/(β−α)! · X^{β−α}` when `β ≥ α`, and 0 otherwise.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;

pub type Exponent = Vec<u32>;

/// `x^α ∘ X^β`: the scalar `β!/(β−α)!` and the exponent `β − α`, or `None`
/// when some `β_i < α_i`.
pub fn contract(alpha: &[u32], beta: &[u32]) -> Option<(BigRational, Exponent)> {
    assert_eq!(alpha.len(), beta.len(), "exponent lengths differ");
    let mut coeff = BigInt::one();
    let mut rest = Vec::with_capacity(beta.len());
    for (&a, &b) in alpha.iter().zip(beta) {
        if b < a {
            return None;
        }
        for t in (b - a + 1)..=b {
            coeff *= t;
        }
        rest.push(b - a);
    }
    Some((BigRational::from_integer(coeff), rest))
}

fn degree_of(e: &[u32]) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

/// Sparse polynomial with rational coefficients and no zero terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Self { num_vars, terms: BTreeMap::new() }
    }

    pub fn monomial(exponent: &[u32]) -> Self {
        Self::from_terms(exponent.len(), vec![(exponent.to_vec(), BigRational::one())]).expect("one term")
    }

    pub fn from_terms(num_vars: usize, terms: Vec<(Exponent, BigRational)>) -> Result<Self> {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::DimensionMismatch { expected: num_vars, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        let entry = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| degree_of(e)).max().unwrap_or(0)
    }

    /// Least total degree of a term.
    pub fn min_degree(&self) -> usize {
        self.terms.keys().map(|e| degree_of(e)).min().unwrap_or(0)
    }

    /// The term that is greatest by total degree, then lexicographically.
    pub fn leading(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.iter().max_by(|a, b| (degree_of(a.0), a.0).cmp(&(degree_of(b.0), b.0)))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = Self::zero(self.num_vars);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), v * c);
        }
        p
    }

    pub fn mul(&self, other: &Polynomial) -> Self {
        let mut p = Self::zero(self.num_vars);
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                let e: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
                p.add_term(e, u * v);
            }
        }
        p
    }

    /// `self ∘ f` for an untruncated polynomial `f`.
    pub fn contract_into(&self, f: &Polynomial) -> Polynomial {
        let mut p = Self::zero(self.num_vars);
        for (a, u) in &self.terms {
            for (b, v) in &f.terms {
                if let Some((c, e)) = contract(a, b) {
                    p.add_term(e, u * v * c);
                }
            }
        }
        p
    }

    /// Human-readable form in variables `var` (or `var1, var2, …`).
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| (degree_of(b.0), b.0).cmp(&(degree_of(a.0), a.0)));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let abs = c.abs();
            let constant = e.iter().all(|&x| x == 0);
            if !abs.is_one() || constant {
                write!(out, "{abs}").expect("string write");
            }
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                out.push_str(var);
                if self.num_vars > 1 {
                    write!(out, "{}", i + 1).expect("string write");
                }
                if x > 1 {
                    write!(out, "^{x}").expect("string write");
                }
            }
        }
        out
    }
}

/// `k[X_1..X_n]_{≤D}` with the monomial basis ordered by degree, then by
/// descending exponent.
#[derive(Clone, Debug)]
pub struct TruncatedInverseSystem {
    num_vars: usize,
    degree: usize,
    basis: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

fn exponents_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponents_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl TruncatedInverseSystem {
    pub fn new(num_vars: usize, degree: usize) -> Self {
        let basis: Vec<Exponent> = (0..=degree as u32).flat_map(|d| exponents_of_degree(num_vars, d)).collect();
        let index = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Self { num_vars, degree, basis, index }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `C(n + D, n)`.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Exponent] {
        &self.basis
    }

    pub fn coordinates(&self, f: &Polynomial) -> Result<Vec<BigRational>> {
        let mut v = vec![BigRational::zero(); self.dimension()];
        for (e, c) in f.terms() {
            let i = self.index.get(e).ok_or_else(|| Error::Truncation {
                degree: self.degree,
                detail: format!("term of degree {} lies outside the truncation", degree_of(e)),
            })?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    pub fn polynomial(&self, v: &[BigRational]) -> Polynomial {
        let terms = self.basis.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e.clone(), c.clone()));
        Polynomial::from_terms(self.num_vars, terms.collect()).expect("basis exponents")
    }

    /// Matrix `A` with `g ∘ f = A·f` in coordinates.
    pub fn contraction_matrix(&self, g: &Polynomial) -> RationalMatrix {
        let d = self.dimension();
        let mut a = RationalMatrix::zeros(d, d);
        for (col, beta) in self.basis.iter().enumerate() {
            for (alpha, u) in g.terms() {
                if let Some((c, e)) = contract(alpha, beta) {
                    let row = self.index[&e];
                    let v = a.get(row, col) + u * c;
                    a.set(row, col, v);
                }
            }
        }
        a
    }

    pub fn contract(&self, g: &Polynomial, f: &[BigRational]) -> Vec<BigRational> {
        self.contraction_matrix(g).apply(f)
    }
}

/// Subspace of a truncated inverse system, kept in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSubspace {
    pub degree: usize,
    pub basis: Vec<Vec<BigRational>>,
}

impl InverseSubspace {
    fn from_vectors(degree: usize, dim: usize, vectors: Vec<Vec<BigRational>>) -> Self {
        if vectors.is_empty() {
            return Self { degree, basis: vec![] };
        }
        let rref = RationalMatrix::from_rows(dim, vectors).rref();
        let basis = (0..rref.pivots.len()).map(|r| rref.matrix.row(r).to_vec()).collect();
        Self { degree, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        crate::linalg::rational::span_dim(&rows) == self.dim()
    }

    pub fn polynomials(&self, system: &TruncatedInverseSystem) -> Vec<Polynomial> {
        self.basis.iter().map(|v| system.polynomial(v)).collect()
    }
}

/// Ideal of `k[x_1..x_n]` given by generators with leading coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyIdeal {
    num_vars: usize,
    generators: Vec<Polynomial>,
}

impl PolyIdeal {
    pub fn new(num_vars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if g.num_vars() != num_vars {
                return Err(Error::DimensionMismatch { expected: num_vars, found: g.num_vars() });
            }
            let (_, lead) =
                g.leading().ok_or_else(|| Error::Precondition("ideal generators must be nonzero".into()))?;
            let g = g.scale(&lead.recip());
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(Self { num_vars, generators: gens })
    }

    /// The monomial ideal `⟨x^{e} : e ∈ exponents⟩`.
    pub fn monomial(exponents: &[Exponent]) -> Result<Self> {
        let n = exponents.first().map_or(1, Vec::len);
        Self::new(n, exponents.iter().map(|e| Polynomial::monomial(e)).collect())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn max_degree(&self) -> usize {
        self.generators.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.generators.iter().map(Polynomial::min_degree).min().unwrap_or(0)
    }

    /// `J^k` generated by all products of `k` generators; `J^0 = ⟨1⟩`.
    pub fn power(&self, k: usize) -> PolyIdeal {
        let mut gens = vec![Polynomial::monomial(&vec![0; self.num_vars])];
        for _ in 0..k {
            let mut next: Vec<Polynomial> = Vec::new();
            for p in &gens {
                for g in &self.generators {
                    let q = p.mul(g);
                    if !q.is_zero() && !next.contains(&q) {
                        next.push(q);
                    }
                }
            }
            gens = next;
        }
        PolyIdeal::new(self.num_vars, gens).expect("products of nonzero polynomials are nonzero")
    }
}

fn check_vars(system: &TruncatedInverseSystem, j: &PolyIdeal) -> Result<()> {
    if system.num_vars() != j.num_vars() {
        return Err(Error::DimensionMismatch { expected: system.num_vars(), found: j.num_vars() });
    }
    Ok(())
}

fn annihilator_unchecked(system: &TruncatedInverseSystem, j: &PolyIdeal) -> InverseSubspace {
    let d = system.dimension();
    let stacked = j
        .generators()
        .iter()
        .map(|g| system.contraction_matrix(g))
        .fold(RationalMatrix::zeros(0, d), |acc, m| acc.vstack(&m));
    InverseSubspace::from_vectors(system.degree(), d, stacked.kernel())
}

/// `(0 :_{M_{≤D}} J) = {f : g ∘ f = 0 for every generator g}`.
pub fn annihilator_in_system(system: &TruncatedInverseSystem, j: &PolyIdeal) -> Result<InverseSubspace> {
    check_vars(system, j)?;
    if j.max_degree() > system.degree() {
        return Err(Error::Truncation {
            degree: system.degree(),
            detail: format!("ideal generator of degree {} exceeds the truncation", j.max_degree()),
        });
    }
    Ok(annihilator_unchecked(system, j))
}

/// Dimensions of `(0 : J^k)` for `k = 1..=kmax`, at truncation `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducednessProfile {
    pub num_vars: usize,
    pub degree: usize,
    pub dims: Vec<usize>,
    /// `(0 : J) = (0 : J²)` within the truncation.
    pub reduced: bool,
    /// An element killed by `J²` but not by `J`, as sparse terms.
    pub witness: Option<Vec<(Exponent, String)>>,
    pub witness_text: Option<String>,
}

/// Annihilator chain of `J` at truncation `D`. Growth from `(0:J^{k-1})` to
/// `(0:J^k)` is only visible when `J^{k-1}` acts nontrivially on `M_{≤D}`,
/// so every power below `kmax` must have a generator of degree at most `D`.
pub fn reducedness_profile(system: &TruncatedInverseSystem, j: &PolyIdeal, kmax: usize) -> Result<ReducednessProfile> {
    check_vars(system, j)?;
    if kmax < 2 {
        return Err(Error::Precondition("the profile needs at least two powers".into()));
    }
    for k in 1..kmax {
        let p = j.power(k);
        if p.min_degree() > system.degree() {
            return Err(Error::Truncation {
                degree: system.degree(),
                detail: format!("J^{k} has no generator of degree at most {}; lower kmax or raise D", system.degree()),
            });
        }
    }
    let anns: Vec<InverseSubspace> = (1..=kmax).map(|k| annihilator_unchecked(system, &j.power(k))).collect();
    let dims: Vec<usize> = anns.iter().map(InverseSubspace::dim).collect();
    let reduced = dims[0] == dims[1];
    let witness = (!reduced).then(|| non_reduced_witness(system, &anns[0], &anns[1])).flatten();
    Ok(ReducednessProfile {
        num_vars: system.num_vars(),
        degree: system.degree(),
        dims,
        reduced,
        witness: witness.as_ref().map(|w| w.terms().iter().map(|(e, c)| (e.clone(), c.to_string())).collect()),
        witness_text: witness.map(|w| w.render("X")),
    })
}

/// A monomial of `(0:J²)` outside `(0:J)` when one exists, otherwise a
/// basis vector of `(0:J²)` outside `(0:J)`.
fn non_reduced_witness(
    system: &TruncatedInverseSystem,
    small: &InverseSubspace,
    big: &InverseSubspace,
) -> Option<Polynomial> {
    let monomial = system.basis().iter().find_map(|e| {
        let f = Polynomial::monomial(e);
        let v = system.coordinates(&f).expect("basis monomial");
        (big.contains(&v) && !small.contains(&v)).then_some(f)
    });
    monomial.or_else(|| big.basis.iter().find(|v| !small.contains(v)).map(|v| system.polynomial(v)))
}

/// Replays a non-reducedness witness: `J² ∘ f = 0` but `J ∘ f ≠ 0`.
pub fn replay_witness(j: &PolyIdeal, f: &Polynomial) -> bool {
    let killed_by_square = j.power(2).generators().iter().all(|g| g.contract_into(f).is_zero());
    let survives = j.generators().iter().any(|g| !g.contract_into(f).is_zero());
    killed_by_square && survives
}

/// Dimensions in the identity `dim (0 :_{M/(0:J)} J) = dim(0:J²) − dim(0:J)`
/// at truncation `D`. The left side is computed as the preimage of `(0:J)`
/// under the contractions by the generators of `J`, the right side from the
/// generators of `J²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientAnnihilator {
    pub degree: usize,
    pub ann: usize,
    pub ann_square: usize,
    pub quotient_ann: usize,
    pub holds: bool,
}

pub fn quotient_annihilator_identity(system: &TruncatedInverseSystem, j: &PolyIdeal) -> Result<QuotientAnnihilator> {
    check_vars(system, j)?;
    let d = system.dimension();
    let ann = annihilator_unchecked(system, j);
    let ann_square = annihilator_unchecked(system, &j.power(2));
    let mats: Vec<RationalMatrix> = j.generators().iter().map(|g| system.contraction_matrix(g)).collect();
    let mut stacked = RationalMatrix::zeros(0, d);
    for outer in &mats {
        for inner in &mats {
            stacked = stacked.vstack(&outer.mul(inner));
        }
    }
    let preimage = InverseSubspace::from_vectors(system.degree(), d, stacked.kernel());
    let quotient_ann = preimage.dim() - ann.dim();
    Ok(QuotientAnnihilator {
        degree: system.degree(),
        ann: ann.dim(),
        ann_square: ann_square.dim(),
        quotient_ann,
        holds: quotient_ann == ann_square.dim() - ann.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn x_pow(k: u32) -> PolyIdeal {
        PolyIdeal::monomial(&[vec![k]]).unwrap()
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(contract(&[1], &[0]), None);
        assert_eq!(contract(&[1], &[1]), Some((q(1), vec![0])));
        assert_eq!(contract(&[2], &[3]), Some((q(6), vec![1])));
        assert_eq!(contract(&[1, 2], &[2, 2]), Some((q(4), vec![1, 0])));
    }

    #[test]
    fn system_dimension() {
        assert_eq!(TruncatedInverseSystem::new(1, 5).dimension(), 6);
        assert_eq!(TruncatedInverseSystem::new(2, 3).dimension(), 10);
        assert_eq!(TruncatedInverseSystem::new(3, 2).dimension(), 10);
    }

    #[test]
    fn annihilator_of_x_squared() {
        let s = TruncatedInverseSystem::new(1, 5);
        let ann = annihilator_in_system(&s, &x_pow(2)).unwrap();
        let polys: Vec<String> = ann.polynomials(&s).iter().map(|p| p.render("X")).collect();
        assert_eq!(polys, vec!["1", "X"]);
        let ann4 = annihilator_in_system(&s, &x_pow(4)).unwrap();
        assert_eq!(ann4.dim(), 4);
        assert_eq!(ann4, annihilator_unchecked(&s, &x_pow(2).power(2)));
        assert_eq!(annihilator_in_system(&s, &x_pow(0)).unwrap().dim(), 0);
        assert!(matches!(annihilator_in_system(&s, &x_pow(6)), Err(Error::Truncation { .. })));
    }

    #[test]
    fn profile_of_x_squared() {
        let s = TruncatedInverseSystem::new(1, 5);
        let p = reducedness_profile(&s, &x_pow(2), 3).unwrap();
        assert_eq!(p.dims, vec![2, 4, 6]);
        assert!(!p.reduced);
        assert_eq!(p.witness_text.as_deref(), Some("X^2"));
        assert!(replay_witness(&x_pow(2), &Polynomial::monomial(&[2])));
        assert!(matches!(reducedness_profile(&s, &x_pow(2), 4), Err(Error::Truncation { .. })));
        let p = reducedness_profile(&s, &x_pow(1), 4).unwrap();
        assert_eq!(p.dims, vec![1, 2, 3, 4]);
        let p = reducedness_profile(&s, &x_pow(0), 3).unwrap();
        assert_eq!(p.dims, vec![0, 0, 0]);
        assert!(p.reduced);
    }

    #[test]
    fn quotient_identity() {
        let s = TruncatedInverseSystem::new(1, 5);
        let r = quotient_annihilator_identity(&s, &x_pow(2)).unwrap();
        assert_eq!((r.ann, r.ann_square, r.quotient_ann), (2, 4, 2));
        assert!(r.holds);
    }

    #[test]
    fn non_monomial_ideal() {
        // x1 + x2 kills X1 - X2 and constants in degree ≤ 1.
        let g = Polynomial::from_terms(2, vec![(vec![1, 0], q(2)), (vec![0, 1], q(2))]).unwrap();
        let j = PolyIdeal::new(2, vec![g]).unwrap();
        assert_eq!(j.generators()[0].leading().unwrap().1, &q(1));
        let s = TruncatedInverseSystem::new(2, 1);
        let ann = annihilator_in_system(&s, &j).unwrap();
        assert_eq!(ann.dim(), 2);
        let f = Polynomial::from_terms(2, vec![(vec![1, 0], q(1)), (vec![0, 1], q(-1))]).unwrap();
        assert!(ann.contains(&s.coordinates(&f).unwrap()));
        assert_eq!(f.render("X"), "X1 - X2");
    }
}
