use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::{Report, Verdict};
use crate::ring::{FiniteRing, Ideal};

use super::{free_module, map_from_images, ChainComplex, Direction, Homology};

/// Size-`p` subsets of `0..n` in lexicographic order.
fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for s in start..n {
            cur.push(s);
            go(s + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// `K(R; r)` in cohomological degrees `-n..=0`, with `Λ^p R^n` in degree
/// `-p` and differential `e_S ↦ Σ_t (-1)^t r_{s_t} e_{S∖s_t}`.
pub fn koszul_complex(ring: &Arc<FiniteRing>, r: &[Vec<u64>]) -> ChainComplex {
    let n = r.len();
    let b = ring.rank();
    let ranks: Vec<usize> = (0..=n).map(|k| subsets(n, n - k).len()).collect();
    let mut differentials = Vec::with_capacity(n);
    for p in (1..=n).rev() {
        let lower = subsets(n, p - 1);
        let target = free_module(ring, lower.len());
        let images: Vec<Vec<u64>> = subsets(n, p)
            .iter()
            .map(|s| {
                let mut img = vec![0u64; lower.len() * b];
                for (t, &st) in s.iter().enumerate() {
                    let mut rest = s.clone();
                    rest.remove(t);
                    let idx = lower.iter().position(|x| *x == rest).expect("face is a subset");
                    let coeff = if t % 2 == 0 { ring.normalize(&r[st]) } else { ring.sub(&ring.zero(), &r[st]) };
                    let slot = &mut img[idx * b..(idx + 1) * b];
                    let sum = ring.add(slot, &coeff);
                    slot.copy_from_slice(&sum);
                }
                img
            })
            .collect();
        differentials.push(map_from_images(ring, &target, &images));
    }
    ChainComplex::new(ring, ranks, differentials, Direction::Cohomological, -(n as i64)).expect("Koszul complex")
}

/// `H^p(K(R; r))`.
pub fn koszul_cohomology(ring: &Arc<FiniteRing>, r: &[Vec<u64>], p: i64) -> Homology {
    koszul_complex(ring, r).homology(p)
}

fn power_sequence(ring: &FiniteRing, r: &[Vec<u64>], k: usize) -> Vec<Vec<u64>> {
    r.iter().map(|x| ring.pow(x, k as u128)).collect()
}

/// Whether the comparison map `H^p(K(R; r^j)) → H^p(K(R; r^i))`, which
/// multiplies `e_S` by `Π_{l∈S} r_l^{j−i}`, is zero.
fn transition_is_zero(ring: &FiniteRing, r: &[Vec<u64>], p: i64, from: &Homology, to: &Homology, gap: usize) -> bool {
    let n = r.len();
    let b = ring.rank();
    let size = (-p) as usize;
    let scales: Vec<Vec<u64>> = subsets(n, size)
        .iter()
        .map(|s| s.iter().fold(ring.one(), |acc, &l| ring.mul(&acc, &ring.pow(&r[l], gap as u128))))
        .collect();
    from.ambient.submodule_generators(&from.cycles).iter().all(|z| {
        let mut image = Vec::with_capacity(z.len());
        for (k, c) in scales.iter().enumerate() {
            image.extend(ring.mul(c, &z[k * b..(k + 1) * b]));
        }
        to.boundaries.contains(&image)
    })
}

/// Zero-test of the tower map `H^p(K(R; r^j)) → H^p(K(R; r^i))` for `j > i`.
pub fn koszul_transition_is_zero(ring: &Arc<FiniteRing>, r: &[Vec<u64>], p: i64, i: usize, j: usize) -> bool {
    assert!(j > i && i >= 1, "tower maps go from a higher power to a lower one");
    let from = koszul_cohomology(ring, &power_sequence(ring, r, j), p);
    let to = koszul_cohomology(ring, &power_sequence(ring, r, i), p);
    transition_is_zero(ring, r, p, &from, &to, j - i)
}

/// Search bounds for the pro-zero test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProBounds {
    /// Stages `i = 1..=degree_bound` are tested.
    pub degree_bound: usize,
    /// `j` ranges over `i+1..=i+offset_bound`.
    pub offset_bound: usize,
}

impl Default for ProBounds {
    fn default() -> Self {
        Self { degree_bound: 4, offset_bound: 8 }
    }
}

/// For one cohomological degree, the least `j` killing stage `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeOffsets {
    pub degree: i64,
    /// `offsets[i - 1]` is the least `j` whose tower map to stage `i` is zero.
    pub offsets: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProZeroVerdict {
    pub sequence: Vec<Vec<u64>>,
    pub bounds: ProBounds,
    pub degrees: Vec<DegreeOffsets>,
    /// Pass when every stage has an offset; undetermined otherwise.
    pub verdict: Verdict,
}

impl ProZeroVerdict {
    pub fn to_report(&self) -> Report {
        let mut report = Report::new("weak_proregularity", "H^p(K(R; r^i)) is pro-zero for every p < 0");
        report.instances = self.degrees.iter().map(|d| d.offsets.len()).sum();
        report.detail("sequence", serde_json::to_value(&self.sequence).expect("serializable"));
        report.detail("degrees", serde_json::to_value(&self.degrees).expect("serializable"));
        report.detail("degree_bound", self.bounds.degree_bound);
        report.detail("offset_bound", self.bounds.offset_bound);
        if self.verdict == Verdict::Undetermined {
            report.undetermined("no zero transition map within the offset bound");
        }
        report
    }
}

/// Searches, for each `p < 0` and stage `i ≤ degree_bound`, the least `j` in
/// `(i, i + offset_bound]` with a zero transition map.
pub fn weak_proregularity_check(ring: &Arc<FiniteRing>, r: &[Vec<u64>], bounds: ProBounds) -> ProZeroVerdict {
    let n = r.len() as i64;
    let top = bounds.degree_bound + bounds.offset_bound;
    let complexes: Vec<ChainComplex> = (1..=top).map(|k| koszul_complex(ring, &power_sequence(ring, r, k))).collect();
    let mut degrees = Vec::new();
    for p in -n..0 {
        let h: Vec<Homology> = complexes.iter().map(|c| c.homology(p)).collect();
        let offsets = (1..=bounds.degree_bound)
            .map(|i| {
                (i + 1..=i + bounds.offset_bound).find(|&j| transition_is_zero(ring, r, p, &h[j - 1], &h[i - 1], j - i))
            })
            .collect();
        degrees.push(DegreeOffsets { degree: p, offsets });
    }
    let complete = degrees.iter().all(|d| d.offsets.iter().all(Option::is_some));
    ProZeroVerdict {
        sequence: r.iter().map(|x| ring.normalize(x)).collect(),
        bounds,
        degrees,
        verdict: if complete { Verdict::Pass } else { Verdict::Undetermined },
    }
}

/// An idempotent ideal is generated by an idempotent `e`; the sequence `(e)`
/// is tested for weak proregularity.
pub fn check_idempotent_proregularity(ideal: &Ideal, bounds: ProBounds) -> Result<Report> {
    if !ideal.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let ring = ideal.ring();
    let (sequence, idempotent) = match ideal.idempotent_generator() {
        Some(e) => (vec![e], true),
        None => (ideal.generators().to_vec(), false),
    };
    let verdict = weak_proregularity_check(ring, &sequence, bounds);
    let mut report = verdict.to_report();
    report.check = "idempotent_proregularity".into();
    report.property = "an idempotent ideal is weakly proregular".into();
    report.detail("idempotent_generator", idempotent);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn single_element_complex() {
        let r = RingSpec::zn(8).build().unwrap();
        let h = koszul_cohomology(&r, &[vec![2]], -1);
        assert_eq!(h.ambient.submodule_elements(&h.cycles), vec![vec![0], vec![4]]);
        assert_eq!(koszul_cohomology(&r, &[vec![2]], 0).order(), 2);
        for p in [-1, 0] {
            assert!(koszul_cohomology(&r, &[vec![1]], p).is_zero());
        }
    }

    #[test]
    fn idempotent_in_product() {
        let r = RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(2)]).build().unwrap();
        let h = koszul_cohomology(&r, &[vec![1, 0]], -1);
        assert_eq!(h.ambient.submodule_elements(&h.cycles), vec![vec![0, 0], vec![0, 1]]);
        let v = weak_proregularity_check(&r, &[vec![1, 0]], ProBounds::default());
        assert_eq!(v.verdict, Verdict::Pass);
        assert!(v.degrees[0].offsets.iter().enumerate().all(|(k, j)| *j == Some(k + 2)));
    }

    #[test]
    fn two_element_complex_squares_to_zero() {
        let r = RingSpec::zn(12).build().unwrap();
        let c = koszul_complex(&r, &[vec![2], vec![3]]);
        assert_eq!(c.ranks(), &[1, 2, 1]);
        assert!(c.squares_to_zero());
        // (2, 3) generates the unit ideal, so the complex is exact.
        for p in -2..=0 {
            assert!(c.homology(p).is_zero());
        }
        let c = koszul_complex(&r, &[vec![2], vec![4]]);
        assert_eq!(c.homology(0).order(), 2);
    }

    #[test]
    fn z8_offsets() {
        let r = RingSpec::zn(8).build().unwrap();
        let v = weak_proregularity_check(&r, &[vec![2]], ProBounds::default());
        assert_eq!(v.verdict, Verdict::Pass);
        assert_eq!(v.degrees[0].offsets[0], Some(4));
        assert!(!koszul_transition_is_zero(&r, &[vec![2]], -1, 1, 3));
        assert!(koszul_transition_is_zero(&r, &[vec![2]], -1, 1, 4));
        let tight = weak_proregularity_check(&r, &[vec![2]], ProBounds { degree_bound: 1, offset_bound: 2 });
        assert_eq!(tight.verdict, Verdict::Undetermined);
    }

    #[test]
    fn idempotent_proregularity_cases() {
        let r = RingSpec::product(vec![RingSpec::gf(2), RingSpec::gf(2), RingSpec::gf(3)]).build().unwrap();
        let i = Ideal::principal(&r, &[1, 1, 0]);
        assert!(check_idempotent_proregularity(&i, ProBounds::default()).unwrap().passed());
        assert!(check_idempotent_proregularity(&Ideal::zero(&r), ProBounds::default()).unwrap().passed());
        let z4 = RingSpec::zn(4).build().unwrap();
        assert_eq!(
            check_idempotent_proregularity(&Ideal::principal(&z4, &[2]), ProBounds::default()),
            Err(Error::NotIdempotent)
        );
    }
}
