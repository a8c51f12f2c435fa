//! Coefficient traits and prime-field arithmetic.

use std::fmt::Debug;
use std::ops::{Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Rational, Result};

/// A commutative ring with identity.
///
/// Blanket-implemented, so `i64`, [`BigInt`], [`Rational`] and
/// [`crate::MPoly`] all qualify.
pub trait Ring:
    Clone + Debug + PartialEq + Zero + One + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + Debug + PartialEq + Zero + One + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// A ring in which every nonzero element can be divided by.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for T where T: Ring + Div<Output = T> {}

/// Arithmetic in `Z/pZ` for a prime `p < 2^32`, values kept in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not a prime below 2^32")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
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

    /// Inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn from_int(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }

    /// Image of a rational number; fails when `p` divides the denominator.
    pub fn from_rational(&self, q: &Rational) -> Result<u64> {
        let den = self.from_int(q.denom());
        if den == 0 {
            return Err(Error::BadPrime { p: self.p });
        }
        Ok(self.mul(self.from_int(q.numer()), self.inv(den)))
    }
}

/// Deterministic Miller–Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `count` distinct random primes in `(2^30, 2^31)`.
pub fn random_primes<R: rand::Rng>(rng: &mut R, count: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let candidate = rng.gen_range((1u64 << 30)..(1u64 << 31)) | 1;
        if is_prime(candidate) && !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    out
}

/// Exact integer value of a rational, if it is one.
pub fn rational_to_integer(q: &Rational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

/// Parses `"a"` or `"a/b"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Invalid(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Decimal numerator and (positive) denominator strings.
pub fn rational_parts(q: &Rational) -> (String, String) {
    debug_assert!(q.denom().is_positive());
    (q.numer().to_string(), q.denom().to_string())
}
