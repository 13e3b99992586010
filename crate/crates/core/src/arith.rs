//! Small integer helpers: gcd, odd part, prime-power factorization.

use num_integer::Integer;

pub fn gcd_all(values: &[i64]) -> u64 {
    values
        .iter()
        .fold(0u64, |acc, &v| acc.gcd(&v.unsigned_abs()))
}

/// Largest odd divisor of `n` (n > 0).
pub fn odd_part(mut n: u64) -> u64 {
    debug_assert!(n > 0);
    while n % 2 == 0 {
        n /= 2;
    }
    n
}

/// Trial-division factorization into `(p, alpha)` pairs, ascending in `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut alpha = 0;
            while n % p == 0 {
                n /= p;
                alpha += 1;
            }
            out.push((p, alpha));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_odd_prime(n: u64) -> bool {
    n > 2 && factorize(n) == [(n, 1)]
}

pub fn odd_divisors(n: u64) -> Vec<u64> {
    let odd = odd_part(n);
    (1..=odd).filter(|d| odd % d == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_basics() {
        assert_eq!(factorize(45), vec![(3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert_eq!(factorize(1024), vec![(2, 10)]);
    }

    #[test]
    fn odd_parts() {
        assert_eq!(odd_part(2), 1);
        assert_eq!(odd_part(45), 45);
        assert_eq!(odd_part(12), 3);
        assert_eq!(odd_divisors(18), vec![1, 3, 9]);
    }

    #[test]
    fn gcd_of_coordinates() {
        assert_eq!(gcd_all(&[6, 9]), 3);
        assert_eq!(gcd_all(&[-4, 6]), 2);
        assert_eq!(gcd_all(&[0, 0]), 0);
    }
}
