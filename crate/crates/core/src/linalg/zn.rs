//! Scalar arithmetic in ℤ/n.

#[inline]
pub fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, n: u64) -> u64 {
    add_mod(a, n - b % n, n)
}

#[inline]
pub fn neg_mod(a: u64, n: u64) -> u64 {
    (n - a % n) % n
}

#[inline]
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Extended Euclid on non-negative inputs: returns `(g, s, t)` with `s*a + t*b = g`.
pub fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_r, old_s, old_t)
}

/// Reduces a signed integer into `[0, n)`.
#[inline]
pub fn reduce_signed(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (g, s, _) = xgcd((a % n) as i128, n as i128);
    (g == 1).then(|| reduce_signed(s, n))
}

pub fn is_unit(a: u64, n: u64) -> bool {
    gcd(a % n, n) == 1
}

/// A unit `u` of ℤ/n with `u·a ≡ gcd(a, n) (mod n)`.
pub fn normalizing_unit(a: u64, n: u64) -> u64 {
    let a = a % n;
    if a == 0 {
        return 1 % n;
    }
    let d = gcd(a, n);
    let m = n / d;
    let base = if m == 1 { 0 } else { inv_mod((a / d) % m, m).expect("a/d is invertible mod n/d") };
    // Some lift base + t*m (t < d) is a unit mod n.
    (0..d).map(|t| base + t * m).find(|&u| is_unit(u, n)).expect("a unit lift exists") % n
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizing_unit_hits_gcd() {
        for n in 2..40u64 {
            for a in 0..n {
                let u = normalizing_unit(a, n);
                assert!(is_unit(u, n), "n={n} a={a} u={u}");
                assert_eq!(mul_mod(u, a, n), if a == 0 { 0 } else { gcd(a, n) });
            }
        }
    }

    #[test]
    fn xgcd_bezout() {
        for a in 0..30i128 {
            for b in 0..30i128 {
                let (g, s, t) = xgcd(a, b);
                assert_eq!(s * a + t * b, g);
                assert_eq!(g as u64, gcd(a as u64, b as u64));
            }
        }
    }

    #[test]
    fn inverse_only_for_units() {
        assert_eq!(inv_mod(3, 8), Some(3));
        assert_eq!(inv_mod(2, 8), None);
        assert_eq!(pow_mod(2, 3, 8), 0);
    }
}
