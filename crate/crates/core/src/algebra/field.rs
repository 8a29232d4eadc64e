//! Prime-field arithmetic.
//!
//! Elements are stored as `u32` residues; products are reduced from 64-bit
//! intermediates with a precomputed Barrett constant, which keeps the
//! elimination loops in the decoder free of hardware division.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

/// A residue modulo the prime of some [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0 as u64
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The prime field GF(p) together with its smallest primitive element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Field {
    p: u64,
    alpha: Fe,
    barrett: u64,
}

impl Field {
    /// Builds GF(p), choosing the smallest primitive root as `alpha`.
    pub fn new(p: u64) -> Result<Field> {
        let alpha = find_primitive(p)?;
        Ok(Field::with_generator(p, alpha))
    }

    /// Builds GF(p) with a caller-supplied primitive element.
    pub fn with_alpha(p: u64, alpha: u64) -> Result<Field> {
        check_prime(p)?;
        if alpha == 0 || alpha >= p {
            return Err(Error::param(format!("alpha {alpha} is not a nonzero residue mod {p}")));
        }
        let field = Field::with_generator(p, Fe(alpha as u32));
        if field.order(field.alpha) != p - 1 {
            return Err(Error::param(format!("alpha {alpha} is not primitive mod {p}")));
        }
        Ok(field)
    }

    fn with_generator(p: u64, alpha: Fe) -> Field {
        Field { p, alpha, barrett: u64::MAX / p }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn alpha(&self) -> Fe {
        self.alpha
    }

    /// Reduces an arbitrary integer into the field.
    #[inline]
    pub fn elem(&self, x: u64) -> Fe {
        Fe((x % self.p) as u32)
    }

    /// Reduces a signed integer into the field.
    pub fn elem_i64(&self, x: i64) -> Fe {
        Fe(x.rem_euclid(self.p as i64) as u32)
    }

    /// Accepts `x` only if it is already a canonical residue.
    pub fn checked_elem(&self, x: u64) -> Result<Fe> {
        if x < self.p {
            Ok(Fe(x as u32))
        } else {
            Err(Error::Format(format!("{x} is not a residue in [0, {})", self.p)))
        }
    }

    #[inline]
    pub(crate) fn reduce(&self, x: u64) -> Fe {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        if r >= self.p {
            r -= self.p;
        }
        if r >= self.p {
            r -= self.p;
        }
        Fe(r as u32)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let s = a.value() + b.value();
        Fe(if s >= self.p { s - self.p } else { s } as u32)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        if a.0 >= b.0 {
            Fe(a.0 - b.0)
        } else {
            Fe((a.value() + self.p - b.value()) as u32)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == 0 {
            a
        } else {
            Fe((self.p - a.value()) as u32)
        }
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.reduce(a.value() * b.value())
    }

    /// `acc + a * b`.
    #[inline]
    pub fn mul_add(&self, acc: Fe, a: Fe, b: Fe) -> Fe {
        self.reduce(acc.value() + a.value() * b.value())
    }

    pub fn pow(&self, base: Fe, mut exp: u64) -> Fe {
        let mut result = Fe::ONE;
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        result
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `alpha^k`.
    pub fn alpha_pow(&self, k: u64) -> Fe {
        self.pow(self.alpha, k % (self.p - 1).max(1))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> u64 {
        let group = self.p - 1;
        let mut order = group;
        for f in prime_factors(group) {
            while order.is_multiple_of(f) && self.pow(a, order / f) == Fe::ONE {
                order /= f;
            }
        }
        order
    }

    /// Binomial coefficient `C(n, k)` reduced mod p (Lucas).
    pub fn binomial(&self, mut n: u64, mut k: u64) -> Fe {
        if k > n {
            return Fe::ZERO;
        }
        let mut acc = Fe::ONE;
        while k > 0 {
            let (nd, kd) = (n % self.p, k % self.p);
            if kd > nd {
                return Fe::ZERO;
            }
            acc = self.mul(acc, self.small_binomial(nd, kd));
            n /= self.p;
            k /= self.p;
        }
        acc
    }

    // n < p, so every factorial factor is invertible.
    fn small_binomial(&self, n: u64, k: u64) -> Fe {
        let k = k.min(n - k);
        let mut num = Fe::ONE;
        let mut den = Fe::ONE;
        for i in 0..k {
            num = self.mul(num, self.elem(n - i));
            den = self.mul(den, self.elem(i + 1));
        }
        self.mul(num, self.inv(den).expect("k! is invertible for k < p"))
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p >= MAX_MODULUS {
        return Err(Error::param(format!("modulus {p} exceeds 2^31")));
    }
    if !is_prime(p) {
        return Err(Error::param(format!("modulus {p} is not prime")));
    }
    Ok(())
}

/// Deterministic trial division; adequate below 2^31.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut f = 3;
    while f * f <= p {
        if p.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= x {
        if x.is_multiple_of(f) {
            out.push(f);
            while x.is_multiple_of(f) {
                x /= f;
            }
        }
        f += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// Smallest `g` in `[1, p)` whose multiplicative order is `p - 1`.
pub fn find_primitive(p: u64) -> Result<Fe> {
    check_prime(p)?;
    let factors = prime_factors(p - 1);
    let probe = Field::with_generator(p, Fe::ONE);
    (1..p)
        .map(|g| Fe(g as u32))
        .find(|&g| factors.iter().all(|&f| probe.pow(g, (p - 1) / f) != Fe::ONE))
        .ok_or_else(|| Error::invariant(format!("no primitive root mod {p}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primitive_roots() {
        assert_eq!(find_primitive(2).unwrap(), Fe(1));
        assert_eq!(find_primitive(13).unwrap(), Fe(2));
        assert_eq!(find_primitive(7).unwrap(), Fe(3));
        assert!(matches!(find_primitive(12), Err(Error::Parameter(_))));
        assert!(matches!(find_primitive(1), Err(Error::Parameter(_))));
    }

    #[test]
    fn inverses() {
        let f13 = Field::new(13).unwrap();
        assert_eq!(f13.inv(Fe(1)).unwrap(), Fe(1));
        assert_eq!(f13.inv(Fe(2)).unwrap(), Fe(7));
        let f5 = Field::new(5).unwrap();
        assert_eq!(f5.inv(Fe(4)).unwrap(), Fe(4));
        assert_eq!(f5.inv(Fe::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn alpha_powers_are_distinct() {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 97, 211, 409] {
            let f = Field::new(p).unwrap();
            let mut seen = std::collections::HashSet::new();
            for k in 0..p - 1 {
                assert!(seen.insert(f.alpha_pow(k)), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn explicit_alpha_must_be_primitive() {
        assert!(Field::with_alpha(13, 2).is_ok());
        assert!(Field::with_alpha(13, 3).is_err());
        assert!(Field::with_alpha(13, 0).is_err());
    }

    #[test]
    fn binomials_match_pascal() {
        let f = Field::new(7).unwrap();
        let mut row = vec![1u64];
        for n in 0..40u64 {
            for (k, &c) in row.iter().enumerate() {
                assert_eq!(f.binomial(n, k as u64), f.elem(c), "C({n},{k})");
            }
            let mut next = vec![1u64; row.len() + 1];
            for k in 1..row.len() {
                next[k] = (row[k - 1] + row[k]) % 7;
            }
            row = next;
        }
    }

    proptest! {
        #[test]
        fn inverse_is_involution(a in 1u64..2_147_483_647) {
            let f = Field::new(2_147_483_647).unwrap();
            let a = f.elem(a);
            let ai = f.inv(a).unwrap();
            prop_assert_eq!(f.mul(a, ai), Fe::ONE);
            prop_assert_eq!(f.inv(ai).unwrap(), a);
        }

        #[test]
        fn barrett_matches_remainder(a in 0u64..2_147_483_647, b in 0u64..2_147_483_647) {
            let f = Field::new(2_147_483_647).unwrap();
            prop_assert_eq!(f.mul(f.elem(a), f.elem(b)).value(), (a * b) % 2_147_483_647);
        }
    }
}
