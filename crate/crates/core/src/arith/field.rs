//! Prime field scalars.
//!
//! The modulus is a process-wide constant: it is fixed the first time it is
//! read (or explicitly initialized) and never changes afterwards. The
//! `TRACEKIT_PRIME` environment variable takes precedence over any requested
//! value.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u32 = 32003;

/// Environment variable overriding the field characteristic.
pub const PRIME_ENV: &str = "TRACEKIT_PRIME";

static PRIME: OnceLock<u32> = OnceLock::new();

fn env_prime() -> Option<u32> {
    let raw = std::env::var(PRIME_ENV).ok()?;
    let p: u64 = raw.trim().parse().ok()?;
    valid_prime(p).then_some(p as u32)
}

fn valid_prime(p: u64) -> bool {
    if !(2..(1u64 << 31)).contains(&p) {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The session characteristic.
pub fn prime() -> u32 {
    *PRIME.get_or_init(|| env_prime().unwrap_or(DEFAULT_PRIME))
}

/// Fixes the characteristic to `requested` unless the environment overrides it
/// or it was already fixed. Returns the characteristic in effect.
pub fn init_prime(requested: u32) -> Result<u32> {
    if !valid_prime(requested as u64) {
        return Err(Error::InvalidPrime(requested as u64));
    }
    let current = *PRIME.get_or_init(|| env_prime().unwrap_or(requested));
    if current != requested && env_prime().is_none() {
        return Err(Error::PrimeConflict { current, requested });
    }
    Ok(current)
}

/// An element of the prime field, stored as its residue in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp(u32);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    pub fn new(v: i64) -> Fp {
        let p = prime() as i64;
        Fp(v.rem_euclid(p) as u32)
    }

    pub fn from_u64(v: u64) -> Fp {
        Fp((v % prime() as u64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    /// Representative in `(-p/2, p/2]`, used for printing.
    pub fn signed(self) -> i64 {
        let p = prime() as i64;
        let v = self.0 as i64;
        if v > p / 2 {
            v - p
        } else {
            v
        }
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<Fp> {
        if self.0 == 0 {
            return None;
        }
        let (mut r0, mut r1) = (prime() as i64, self.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(Fp::new(t0))
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let s = self.0 as u64 + rhs.0 as u64;
        let p = prime() as u64;
        Fp(if s >= p { s - p } else { s } as u32)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        if self.0 >= rhs.0 {
            Fp(self.0 - rhs.0)
        } else {
            Fp((self.0 as u64 + prime() as u64 - rhs.0 as u64) as u32)
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        Fp(((self.0 as u64 * rhs.0 as u64) % prime() as u64) as u32)
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inv().expect("division by zero in prime field")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(prime() - self.0)
        }
    }
}

impl AddAssign for Fp {
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn default_prime_is_used() {
        assert_eq!(prime(), DEFAULT_PRIME);
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = prime() as i64;
        for _ in 0..10_000 {
            let a = Fp::new(rng.gen_range(0..p));
            let b = Fp::new(rng.gen_range(0..p));
            let c = Fp::new(rng.gen_range(0..p));
            assert_eq!((a + b) + c, a + (b + c));
            assert_eq!((a * b) * c, a * (b * c));
            assert_eq!(a * (b + c), a * b + a * c);
            assert_eq!(a + (-a), Fp::ZERO);
            assert_eq!(a - b + b, a);
            if !a.is_zero() {
                assert_eq!(a * a.inv().unwrap(), Fp::ONE);
            }
        }
    }

    #[test]
    fn signed_representative() {
        assert_eq!(Fp::new(-1).signed(), -1);
        assert_eq!(Fp::new(5).signed(), 5);
        assert!(Fp::ZERO.inv().is_none());
    }

    #[test]
    fn init_prime_conflicts() {
        assert_eq!(init_prime(DEFAULT_PRIME).unwrap(), DEFAULT_PRIME);
        assert!(matches!(init_prime(7), Err(Error::PrimeConflict { .. })));
        assert!(matches!(init_prime(8), Err(Error::InvalidPrime(8))));
    }
}
