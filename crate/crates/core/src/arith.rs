//! Small integer number theory used by the field and coset code.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Multiplicative order of `a` modulo `n`; requires gcd(a, n) = 1 and n >= 1.
pub fn mult_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let a = a % n;
    let mut x = a;
    let mut k = 1u64;
    while x != 1 {
        x = x * a % n;
        k += 1;
    }
    k
}

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let phi = (p - 1) as u64;
    let factors = prime_factors(phi);
    (2..p)
        .find(|&g| factors.iter().all(|&r| pow_mod(g as u64, phi / r, p as u64) != 1))
        .expect("every prime has a primitive root")
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&c| c * c == n)
}

pub fn ipow(base: u64, exp: u32) -> u64 {
    base.pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let primes: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn orders_and_roots() {
        assert_eq!(mult_order(2, 15), 4);
        assert_eq!(mult_order(4, 31), 5);
        assert_eq!(mult_order(9, 26), 3);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(2), 1);
        assert_eq!(exact_sqrt(81), Some(9));
        assert_eq!(exact_sqrt(8), None);
    }
}
