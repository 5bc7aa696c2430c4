//! Arithmetic modulo word-size primes, for multimodular algorithms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    sub(a, p - b, p)
}

pub fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, b, p);
        }
        b = mul(b, b, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

pub fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).try_into().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin; these bases suffice below 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for b in BASES {
        let mut x = pow(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^62, descending.
pub fn primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62)).rev().filter(|&n| is_prime(n))
}

/// Incremental Chinese remaindering of a vector of residues.
pub struct Crt {
    pub modulus: BigInt,
    pub values: Vec<BigInt>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt { modulus: BigInt::one(), values: vec![BigInt::zero(); len] }
    }

    pub fn push(&mut self, residues: &[u64], p: u64) {
        let minv = inv(reduce(&self.modulus, p), p);
        for (x, &r) in self.values.iter_mut().zip(residues) {
            let t = mul(sub(r, reduce(x, p), p), minv, p);
            *x += &self.modulus * t;
        }
        self.modulus *= p;
    }

    /// Representatives in the symmetric range around zero.
    pub fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1;
        self.values.iter().map(|x| if x > &half { x - &self.modulus } else { x.clone() }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_and_crt() {
        assert!(is_prime(2_305_843_009_213_693_951));
        assert!(!is_prime(3_215_031_751));
        let ps: Vec<u64> = primes().take(3).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]) && ps[0] < 1 << 62);
        let target = [BigInt::from(-123_456_789_012_345_678_901_234_567i128), BigInt::from(42)];
        let mut crt = Crt::new(2);
        for &p in &ps {
            crt.push(&target.iter().map(|x| reduce(x, p)).collect::<Vec<_>>(), p);
        }
        assert_eq!(crt.symmetric(), target.to_vec());
    }
}
