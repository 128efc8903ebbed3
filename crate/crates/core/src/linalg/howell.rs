//! Howell normal form of row modules over ℤ/n.
//!
//! A Howell basis is an echelon row set whose pivots divide `n`, whose
//! entries above each pivot are reduced modulo that pivot, and which has the
//! Howell property: every element of the span with zeros in the first `j`
//! columns is spanned by the basis rows whose leading column is at least `j`.
//! That property is what makes greedy reduction a complete membership test
//! and turns the reduced vector into a canonical coset representative.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::matrix::{unit_vector, ResidueMatrix};
use super::zn::{add_mod, mul_mod, neg_mod, normalizing_unit, reduce_signed, sub_mod, xgcd};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HowellBasis {
    modulus: u64,
    ambient: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

struct Echelon {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    transforms: Option<Vec<Vec<u64>>>,
}

fn axpy(dst: &mut [u64], c: u64, src: &[u64], n: u64) {
    if c == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = add_mod(*d, mul_mod(c, s, n), n);
    }
}

/// Replaces `(p, q)` by `(s·p + t·q, -u·p + v·q)`; a determinant-one change.
fn combine(p: &[u64], q: &[u64], s: u64, t: u64, u: u64, v: u64, n: u64) -> (Vec<u64>, Vec<u64>) {
    let mut np = vec![0; p.len()];
    axpy(&mut np, s, p, n);
    axpy(&mut np, t, q, n);
    let mut nq = vec![0; p.len()];
    axpy(&mut nq, neg_mod(u, n), p, n);
    axpy(&mut nq, v, q, n);
    (np, nq)
}

fn echelonize(n: u64, cols: usize, input: &[Vec<u64>], track: bool) -> Echelon {
    let count = input.len();
    let mut pool: Vec<(Vec<u64>, Vec<u64>)> = input
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let row = r.iter().map(|&x| x % n).collect::<Vec<_>>();
            let coeff = if track { unit_vector(count, i) } else { Vec::new() };
            (row, coeff)
        })
        .filter(|(r, _)| r.iter().any(|&x| x != 0))
        .collect();

    let mut rows = Vec::new();
    let mut pivots = Vec::new();
    let mut transforms = Vec::new();

    for j in 0..cols {
        let hits: Vec<usize> = (0..pool.len()).filter(|&i| pool[i].0[j] != 0).collect();
        if hits.is_empty() {
            continue;
        }
        let (mut prow, mut pcoeff) = pool[hits[0]].clone();
        for &h in &hits[1..] {
            let (qrow, qcoeff) = &pool[h];
            let (a, b) = (prow[j] as i128, qrow[j] as i128);
            let (g, s, t) = xgcd(a, b);
            let (s, t) = (reduce_signed(s, n), reduce_signed(t, n));
            let (u, v) = (reduce_signed(b / g, n), reduce_signed(a / g, n));
            let (np, nq) = combine(&prow, qrow, s, t, u, v, n);
            let (npc, nqc) = if track { combine(&pcoeff, qcoeff, s, t, u, v, n) } else { (Vec::new(), Vec::new()) };
            debug_assert_eq!(nq[j], 0);
            prow = np;
            pcoeff = npc;
            pool[h] = (nq, nqc);
        }
        let w = normalizing_unit(prow[j], n);
        prow.iter_mut().for_each(|x| *x = mul_mod(*x, w, n));
        if track {
            pcoeff.iter_mut().for_each(|x| *x = mul_mod(*x, w, n));
        }
        let d = prow[j];
        let ann = n / d;
        let shifted: Vec<u64> = prow.iter().map(|&x| mul_mod(x, ann, n)).collect();
        let shifted_coeff: Vec<u64> = pcoeff.iter().map(|&x| mul_mod(x, ann, n)).collect();

        let first = hits[0];
        pool.swap_remove(first);
        pool.retain(|(r, _)| r.iter().any(|&x| x != 0));
        if shifted.iter().any(|&x| x != 0) {
            pool.push((shifted, shifted_coeff));
        }
        rows.push(prow);
        pivots.push(j);
        if track {
            transforms.push(pcoeff);
        }
    }

    // Reduce entries above each pivot into [0, pivot).
    for i in 0..rows.len() {
        for k in i + 1..rows.len() {
            let col = pivots[k];
            let d = rows[k][col];
            let q = rows[i][col] / d;
            if q != 0 {
                let c = neg_mod(q, n);
                let src = rows[k].clone();
                axpy(&mut rows[i], c, &src, n);
                if track {
                    let tsrc = transforms[k].clone();
                    axpy(&mut transforms[i], c, &tsrc, n);
                }
            }
        }
    }

    Echelon { rows, pivots, transforms: track.then_some(transforms) }
}

impl HowellBasis {
    /// Howell basis of the row span of `rows` inside `(ℤ/n)^ambient`.
    pub fn from_rows(modulus: u64, ambient: usize, rows: &[Vec<u64>]) -> Self {
        let e = echelonize(modulus, ambient, rows, false);
        Self { modulus, ambient, rows: e.rows, pivots: e.pivots }
    }

    pub fn zero(modulus: u64, ambient: usize) -> Self {
        Self { modulus, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(modulus: u64, ambient: usize) -> Self {
        Self {
            modulus,
            ambient,
            rows: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Canonical representative of `v` modulo the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let n = self.modulus;
        let mut v: Vec<u64> = v.iter().map(|&x| x % n).collect();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let q = v[col] / row[col];
            if q != 0 {
                axpy(&mut v, neg_mod(q, n), row, n);
            }
        }
        v
    }

    /// Reduces `v` and returns the coefficients used, so `v = coeffs · rows + reduce(v)`.
    pub fn reduce_with_coeffs(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let n = self.modulus;
        let mut v: Vec<u64> = v.iter().map(|&x| x % n).collect();
        let mut coeffs = vec![0; self.rows.len()];
        for (k, (row, &col)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let q = v[col] / row[col];
            if q != 0 {
                axpy(&mut v, neg_mod(q, n), row, n);
                coeffs[k] = q % n;
            }
        }
        (coeffs, v)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn is_subset_of(&self, other: &HowellBasis) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Number of elements of the span.
    pub fn order(&self) -> u128 {
        self.rows.iter().zip(&self.pivots).map(|(r, &c)| (self.modulus / r[c]) as u128).product()
    }

    /// `|self / sub|` for `sub ⊆ self`, exact even when both orders exceed `u128`.
    pub fn relative_order(&self, sub: &HowellBasis) -> u128 {
        let primes = prime_factors(self.modulus);
        let valuation = |b: &HowellBasis, p: u64| -> i64 {
            b.rows
                .iter()
                .zip(&b.pivots)
                .map(|(r, &c)| {
                    let mut q = self.modulus / r[c];
                    let mut e = 0;
                    while q.is_multiple_of(p) {
                        q /= p;
                        e += 1;
                    }
                    e
                })
                .sum()
        };
        primes.iter().fold(1u128, |acc, &p| {
            let e = valuation(self, p) - valuation(sub, p);
            assert!(e >= 0, "relative_order needs sub ⊆ self");
            (0..e).fold(acc, |a, _| a.checked_mul(p as u128).expect("order exceeds u128"))
        })
    }

    /// Number of cosets of the span in `(ℤ/n)^ambient`.
    pub fn index(&self) -> u128 {
        let mut out: u128 = 1;
        let mut p = 0;
        for j in 0..self.ambient {
            if p < self.pivots.len() && self.pivots[p] == j {
                out *= self.rows[p][j] as u128;
                p += 1;
            } else {
                out *= self.modulus as u128;
            }
        }
        out
    }

    pub fn join(&self, other: &HowellBasis) -> HowellBasis {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        HowellBasis::from_rows(self.modulus, self.ambient, &rows)
    }

    pub fn join_rows(&self, extra: &[Vec<u64>]) -> HowellBasis {
        let mut rows = self.rows.clone();
        rows.extend(extra.iter().cloned());
        HowellBasis::from_rows(self.modulus, self.ambient, &rows)
    }

    /// Intersection via the Zassenhaus construction.
    pub fn meet(&self, other: &HowellBasis) -> HowellBasis {
        let c = self.ambient;
        let mut rows = Vec::with_capacity(self.rows.len() + other.rows.len());
        for r in &self.rows {
            let mut x = r.clone();
            x.extend_from_slice(r);
            rows.push(x);
        }
        for r in &other.rows {
            let mut x = r.clone();
            x.extend(std::iter::repeat_n(0, c));
            rows.push(x);
        }
        let e = echelonize(self.modulus, 2 * c, &rows, false);
        let tail: Vec<Vec<u64>> =
            e.rows.iter().zip(&e.pivots).filter(|(_, &p)| p >= c).map(|(r, _)| r[c..].to_vec()).collect();
        HowellBasis::from_rows(self.modulus, c, &tail)
    }

    /// Image of the span under `v ↦ v·m`.
    pub fn image(&self, m: &ResidueMatrix) -> HowellBasis {
        let rows: Vec<Vec<u64>> = self.rows.iter().map(|r| m.apply(r)).collect();
        HowellBasis::from_rows(self.modulus, m.ncols(), &rows)
    }

    /// All elements of `self` modulo `floor`, as canonical representatives.
    /// `floor` must be contained in `self`; the search is a breadth-first
    /// closure so its cost tracks the quotient size, not the span size.
    pub fn coset_elements(&self, floor: &HowellBasis) -> Vec<Vec<u64>> {
        let n = self.modulus;
        let zero = vec![0; self.ambient];
        let mut seen = BTreeSet::new();
        seen.insert(zero.clone());
        let mut queue = VecDeque::from([zero]);
        let gens: Vec<Vec<u64>> =
            self.rows.iter().map(|r| floor.reduce(r)).filter(|r| r.iter().any(|&x| x != 0)).collect();
        while let Some(v) = queue.pop_front() {
            for g in &gens {
                let w: Vec<u64> = v.iter().zip(g).map(|(&a, &b)| add_mod(a, b, n)).collect();
                let w = floor.reduce(&w);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Rows as a matrix.
    pub fn to_matrix(&self) -> ResidueMatrix {
        ResidueMatrix::from_rows(self.modulus, self.ambient, &self.rows).expect("consistent rows")
    }
}

/// Howell basis of the row module of `m`.
pub fn howell_form(m: &ResidueMatrix) -> HowellBasis {
    HowellBasis::from_rows(m.modulus(), m.ncols(), &m.row_vecs())
}

/// Basis of the left kernel `{x : x·m = 0}`.
pub fn kernel(m: &ResidueMatrix) -> HowellBasis {
    preimage(m, &HowellBasis::zero(m.modulus(), m.ncols()))
}

/// `{x : x·m ∈ target}` for a row module `target` of the codomain.
pub fn preimage(m: &ResidueMatrix, target: &HowellBasis) -> HowellBasis {
    let (r, c) = (m.nrows(), m.ncols());
    let mut rows = Vec::with_capacity(r + target.rows().len());
    for i in 0..r {
        let mut x = m.row(i).to_vec();
        x.extend(unit_vector(r, i));
        rows.push(x);
    }
    for t in target.rows() {
        let mut x = t.clone();
        x.extend(std::iter::repeat_n(0, r));
        rows.push(x);
    }
    let e = echelonize(m.modulus(), c + r, &rows, false);
    let tail: Vec<Vec<u64>> =
        e.rows.iter().zip(&e.pivots).filter(|(_, &p)| p >= c).map(|(row, _)| row[c..].to_vec()).collect();
    HowellBasis::from_rows(m.modulus(), r, &tail)
}

/// Some `x` with `x·m = b`, or `None` when `b` is outside the row span.
/// The representative is determined by the elimination order alone.
pub fn solve(m: &ResidueMatrix, b: &[u64]) -> Option<Vec<u64>> {
    let n = m.modulus();
    let e = echelonize(n, m.ncols(), &m.row_vecs(), true);
    let transforms = e.transforms.expect("tracked");
    let mut v: Vec<u64> = b.iter().map(|&x| x % n).collect();
    let mut x = vec![0u64; m.nrows()];
    for ((row, &col), t) in e.rows.iter().zip(&e.pivots).zip(&transforms) {
        let q = v[col] / row[col];
        if q != 0 {
            for (vi, &ri) in v.iter_mut().zip(row) {
                *vi = sub_mod(*vi, mul_mod(q, ri, n), n);
            }
            axpy(&mut x, q, t, n);
        }
    }
    v.iter().all(|&z| z == 0).then_some(x)
}

/// Solves `x·gens ≡ b` modulo the row module `floor`, returning only the
/// coefficients on `gens`.
pub fn solve_modulo(gens: &[Vec<u64>], floor: &HowellBasis, b: &[u64]) -> Option<Vec<u64>> {
    let n = floor.modulus();
    let mut rows = gens.to_vec();
    rows.extend(floor.rows().iter().cloned());
    let m = ResidueMatrix::from_rows(n, floor.ambient(), &rows).ok()?;
    solve(&m, b).map(|mut x| {
        x.truncate(gens.len());
        x
    })
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
