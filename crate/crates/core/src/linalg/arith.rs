pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`. `m = 1` yields `Some(0)`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (i128::from(a % m), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(i128::from(m)) as u64)
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) + u128::from(b)) % u128::from(m)) as u64
}

/// Sum of the prime exponents of `d`: the composition length of `Z_d`.
pub fn composition_length(d: u64) -> u32 {
    assert!(d >= 1, "composition length is defined for d >= 1");
    let mut rest = d;
    let mut total = 0;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        while rest % p == 0 {
            rest /= p;
            total += 1;
        }
        p += 1;
    }
    if rest > 1 {
        total += 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_lengths() {
        assert_eq!(composition_length(1), 0);
        assert_eq!(composition_length(12), 3);
        assert_eq!(composition_length(4), 2);
        assert_eq!(composition_length(97), 1);
        assert_eq!(composition_length(1 << 20), 20);
        assert_eq!(composition_length(2 * 3 * 5 * 7 * 49), 6);
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_inverse(5, 1), Some(0));
        for m in 2..40u64 {
            for a in 0..m {
                match mod_inverse(a, m) {
                    Some(inv) => assert_eq!(mul_mod(a, inv, m), 1),
                    None => assert_ne!(gcd(a, m), 1),
                }
            }
        }
    }
}
