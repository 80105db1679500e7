//! Arithmetic in the prime field F_p.
//!
//! Residues are always stored as their canonical representative in
//! `0..p`. The modulus is bounded by 2^31 so that every product of two
//! residues fits in a `u64`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::{Error, Result};

/// Exclusive upper bound on supported moduli.
pub const MODULUS_LIMIT: u64 = 1 << 31;

/// Deterministic primality test by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A prime `p < 2^31`, validated at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MODULUS_LIMIT {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeModulus(p as u32))
    }

    /// Like [`PrimeModulus::new`] but also rejects `p = 2`, which every
    /// theorem-verification entry point excludes.
    pub fn odd(p: u64) -> Result<Self> {
        Self::new(p)?.require_odd()
    }

    pub fn require_odd(self) -> Result<Self> {
        if self.0 == 2 {
            Err(Error::EvenModulus)
        } else {
            Ok(self)
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Reduces a nonnegative integer.
    #[inline]
    pub fn element(self, n: u64) -> FieldElement {
        FieldElement { value: (n % self.0 as u64) as u32, modulus: self }
    }

    /// Reduces a signed integer to its canonical residue.
    #[inline]
    pub fn normalize(self, n: i64) -> FieldElement {
        let r = n.rem_euclid(self.0 as i64);
        FieldElement { value: r as u32, modulus: self }
    }

    #[inline]
    pub fn zero(self) -> FieldElement {
        FieldElement { value: 0, modulus: self }
    }

    #[inline]
    pub fn one(self) -> FieldElement {
        FieldElement { value: 1, modulus: self }
    }

    /// All of F_p in ascending order.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.0).map(move |value| FieldElement { value, modulus: self })
    }

    /// F_p^* in ascending order.
    pub fn units(self) -> impl Iterator<Item = FieldElement> {
        (1..self.0).map(move |value| FieldElement { value, modulus: self })
    }

    // Raw kernels on canonical `u32` residues, shared with the polynomial code.

    #[inline]
    pub(crate) fn add_raw(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.0 as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub(crate) fn sub_raw(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + (self.0 - b)
        }
    }

    #[inline]
    pub(crate) fn neg_raw(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub(crate) fn mul_raw(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub(crate) fn pow_raw(self, base: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.0;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, b);
            }
            b = self.mul_raw(b, b);
            e >>= 1;
        }
        acc
    }

    /// Inverse via the extended Euclidean algorithm; `a` must be nonzero.
    pub(crate) fn inv_raw(self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.0 as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.0 as i64) as u32)
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Canonical residue `n mod p` of a signed integer.
pub fn normalize(n: i64, p: PrimeModulus) -> FieldElement {
    p.normalize(n)
}

/// An element of F_p. Equality and ordering are on the canonical value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u32,
    modulus: PrimeModulus,
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<FieldElement> {
        self.modulus
            .inv_raw(self.value)
            .map(|value| FieldElement { value, modulus: self.modulus })
            .ok_or(Error::ZeroInverse)
    }

    /// `self^e` by square-and-multiply. `0^0 = 1` by convention.
    pub fn pow(self, e: u64) -> FieldElement {
        FieldElement { value: self.modulus.pow_raw(self.value, e), modulus: self.modulus }
    }

    /// Checked division.
    #[allow(clippy::should_implement_trait)]
    pub fn div(self, rhs: FieldElement) -> Result<FieldElement> {
        Ok(self * rhs.inv()?)
    }

    /// The representative of `±self` lying in `1..=(p-1)/2` (or 0).
    pub fn abs_rep(self) -> u32 {
        let neg = self.modulus.neg_raw(self.value);
        self.value.min(neg)
    }

    #[inline]
    fn same_field(self, rhs: FieldElement) {
        debug_assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.same_field(rhs);
        FieldElement { value: self.modulus.add_raw(self.value, rhs.value), modulus: self.modulus }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.same_field(rhs);
        FieldElement { value: self.modulus.sub_raw(self.value, rhs.value), modulus: self.modulus }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.same_field(rhs);
        FieldElement { value: self.modulus.mul_raw(self.value, rhs.value), modulus: self.modulus }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn neg(self) -> FieldElement {
        FieldElement { value: self.modulus.neg_raw(self.value), modulus: self.modulus }
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: FieldElement) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: FieldElement) {
        *self = *self * rhs;
    }
}

/// Multiplicative inverse; fails with [`Error::ZeroInverse`] on zero.
pub fn inv(a: FieldElement) -> Result<FieldElement> {
    a.inv()
}

pub fn pow_mod(a: FieldElement, e: u64) -> FieldElement {
    a.pow(e)
}

/// `{ a^k : a in F_p^* }`.
pub fn kth_power_residues(p: PrimeModulus, k: u64) -> BTreeSet<FieldElement> {
    p.units().map(|a| a.pow(k)).collect()
}

/// Every `a` with `a^k = t`, ascending. Empty when `t` is not a k-th power.
pub fn kth_roots(t: FieldElement, k: u64) -> Vec<FieldElement> {
    t.modulus().units().filter(|a| a.pow(k) == t).collect()
}

/// The unique multiplicative subgroup of a given order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    order: u64,
    modulus: PrimeModulus,
    elements: BTreeSet<FieldElement>,
}

impl Subgroup {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        self.elements.contains(&a)
    }

    pub fn elements(&self) -> &BTreeSet<FieldElement> {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.elements.iter().copied()
    }
}

/// `Z_d`, the ((p-1)/d)-th powers of F_p^*.
pub fn subgroup(p: PrimeModulus, d: u64) -> Result<Subgroup> {
    let group_order = p.get() as u64 - 1;
    if d == 0 || !group_order.is_multiple_of(d) {
        return Err(Error::NotADivisor { d, order: group_order });
    }
    let elements = kth_power_residues(p, group_order / d);
    debug_assert_eq!(elements.len() as u64, d);
    Ok(Subgroup { order: d, modulus: p, elements })
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
