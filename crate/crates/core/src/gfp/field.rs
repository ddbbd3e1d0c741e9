use std::fmt;

use crate::error::{Error, Result};

/// Largest prime accepted by [`Field::new`].
pub const MAX_PRIME: u32 = 97;

/// The prime field GF(p) for a small prime `p`.
///
/// Residues are plain `u32` values in `[0, p)`. Inverses are tabulated once
/// at construction, so the type stays `Copy`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
    inv: [u8; MAX_PRIME as usize],
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Extended Euclid on `(a, m)`, returning the inverse of `a` modulo `m`.
fn ext_euclid_inverse(a: u32, m: u32) -> u32 {
    let (mut r0, mut r1) = (m as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(m as i64) as u32
}

impl Field {
    pub fn new(p: u32) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        let mut inv = [0u8; MAX_PRIME as usize];
        for a in 1..p {
            inv[a as usize] = ext_euclid_inverse(a, p) as u8;
        }
        Ok(Field { p, inv })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0 && a < self.p, "no inverse of {a} in GF({})", self.p);
        self.inv[a as usize] as u32
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Reduce an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    /// Iterator over every element of the field, `0..p`.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.p
    }

    /// Smallest `m` with `p^m >= n` (at least 1).
    pub fn frobenius_exponent(&self, n: usize) -> u32 {
        let mut m = 1;
        let mut q = self.p as usize;
        while q < n {
            q *= self.p as usize;
            m += 1;
        }
        m
    }

    /// `v ← v + c·w` over the field, elementwise.
    pub fn axpy(&self, v: &mut [u32], c: u32, w: &[u32]) {
        if c == 0 {
            return;
        }
        for (a, &b) in v.iter_mut().zip(w) {
            if b != 0 {
                *a = (*a + c * b) % self.p;
            }
        }
    }

    pub fn scale(&self, v: &mut [u32], c: u32) {
        for a in v.iter_mut() {
            *a = self.mul(*a, c);
        }
    }

    pub fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        let s: u64 = a.iter().zip(b).map(|(&x, &y)| (x * y) as u64).sum();
        self.reduce(s)
    }
}
