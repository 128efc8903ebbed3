//! Invariant factors of finite abelian groups `(ℤ/n)^c / S`.

use super::howell::HowellBasis;

/// Invariant factors `d_1 | d_2 | ... ` (all > 1) of `(ℤ/n)^c / span`.
#[allow(clippy::needless_range_loop)]
pub fn invariant_factors(span: &HowellBasis) -> Vec<u64> {
    let n = span.modulus() as i128;
    let c = span.ambient();
    // Integer lattice generated by the span rows and n·e_j; entries stay
    // reducible mod n because n·ℤ^c is preserved by unimodular column moves.
    let mut m: Vec<Vec<i128>> = span.rows().iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    for j in 0..c {
        let mut r = vec![0i128; c];
        r[j] = n;
        m.push(r);
    }
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < c && t < rows {
        // Smallest nonzero entry in the trailing block as pivot.
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(p);
                if q != 0 {
                    for j in t..c {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..c {
                let q = m[t][j].div_euclid(p);
                if q != 0 {
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // Enforce divisibility into the trailing block.
                if let Some(i) = (t + 1..rows).find(|&i| (t + 1..c).any(|j| m[i][j] % p != 0)) {
                    for j in t..c {
                        m[t][j] += m[i][j];
                    }
                    continue;
                }
                break;
            }
            // Move the smallest remaining entry of row/column t into the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if m[i][t] != 0 && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..c {
                if m[t][j] != 0 && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].unsigned_abs() as u64);
        t += 1;
    }
    let mut out: Vec<u64> = diag.into_iter().filter(|&d| d != 1).collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_quotients() {
        assert_eq!(invariant_factors(&HowellBasis::from_rows(8, 1, &[vec![4]])), vec![4]);
        assert_eq!(invariant_factors(&HowellBasis::zero(6, 2)), vec![6, 6]);
        assert!(invariant_factors(&HowellBasis::full(6, 2)).is_empty());
    }

    #[test]
    fn mixed_relations() {
        // (ℤ/8)^2 / <(2, 4)>: order 16, ≅ ℤ/2 ⊕ ℤ/8.
        let s = HowellBasis::from_rows(8, 2, &[vec![2, 4]]);
        let f = invariant_factors(&s);
        assert_eq!(f.iter().map(|&d| d as u128).product::<u128>(), s.index());
        assert_eq!(f, vec![2, 8]);
    }
}
