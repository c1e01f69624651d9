//! The prime field F_p for an odd prime p, with arithmetic on canonical
//! residues in [0, p). All intermediates fit in 64 bits because p < 2^31.

use crate::error::{Error, Result};

const P_MAX: u64 = 1 << 31;

/// An odd prime modulus, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Prime(u64);

impl Prime {
    /// Validates that `p` is an odd prime with 3 <= p <= 2^31.
    pub fn new(p: u64) -> Result<Prime> {
        if p < 3 || p > P_MAX || p % 2 == 0 || !is_prime(p) {
            return Err(Error::NotAnOddPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.0
    }

    /// Canonical residue of a signed integer.
    #[inline]
    pub fn reduce_i64(&self, a: i64) -> u64 {
        let p = self.0 as i64;
        (((a % p) + p) % p) as u64
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> u64 {
        a % self.0
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat: a^(p-2).
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a % self.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.0 - 2))
    }

    /// The inverse of 2, used for the 1/2 factor in curvature.
    #[inline]
    pub fn half(&self) -> u64 {
        (self.0 + 1) / 2
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Standalone field inversion: returns b with a*b = 1 mod p.
pub fn fp_inv(a: u64, p: &Prime) -> Result<u64> {
    p.inv(a)
}
