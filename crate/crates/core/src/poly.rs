//! Dense polynomials over F_p.
//!
//! [`UniPoly`] stores coefficients low-to-high with no trailing zeros; the
//! zero polynomial has no coefficients at all. [`BiPoly`] is the ring
//! (F_p\[y\])\[x\]: a dense list of `x`-coefficients, each a [`UniPoly`] in
//! `y`. Every Rédei pipeline step (division by a polynomial monic in `x`,
//! reading off the coefficient of `x^(p-i)`) walks `x`-degrees, so that is
//! the major axis.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::field::{FieldElement, PrimeModulus};
use crate::{Error, Result};

/// Largest `p` for which [`bi_divrem_x`] accepts a dividend of x-degree `p`.
pub const DEFAULT_MAX_BIVARIATE_P: u32 = 1000;

fn trim(c: &mut Vec<u32>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

/// `acc += sign * a * b` on raw coefficient slices, growing `acc` as needed.
fn mul_acc(p: PrimeModulus, acc: &mut Vec<u32>, a: &[u32], b: &[u32], subtract: bool) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    let need = a.len() + b.len() - 1;
    if acc.len() < need {
        acc.resize(need, 0);
    }
    let m = p.get() as u64;
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let ai = if subtract { p.neg_raw(ai) } else { ai } as u64;
        for (slot, &bj) in acc[i..].iter_mut().zip(b) {
            *slot = ((*slot as u64 + ai * bj as u64) % m) as u32;
        }
    }
}

/// Dense univariate polynomial over F_p, coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<u32>,
    modulus: PrimeModulus,
}

impl UniPoly {
    /// Builds from raw integers, reducing each modulo `p`.
    pub fn new(p: PrimeModulus, coeffs: impl IntoIterator<Item = u64>) -> Self {
        let mut c: Vec<u32> = coeffs.into_iter().map(|n| p.element(n).value()).collect();
        trim(&mut c);
        UniPoly { coeffs: c, modulus: p }
    }

    /// Builds from signed integers, e.g. `[-1, 0, 0, 1]` for `x^3 - 1`.
    pub fn from_signed(p: PrimeModulus, coeffs: &[i64]) -> Self {
        let mut c: Vec<u32> = coeffs.iter().map(|&n| p.normalize(n).value()).collect();
        trim(&mut c);
        UniPoly { coeffs: c, modulus: p }
    }

    pub fn from_elements(p: PrimeModulus, coeffs: &[FieldElement]) -> Self {
        let mut c: Vec<u32> = coeffs.iter().map(|e| e.value()).collect();
        trim(&mut c);
        UniPoly { coeffs: c, modulus: p }
    }

    pub(crate) fn from_raw(p: PrimeModulus, mut coeffs: Vec<u32>) -> Self {
        trim(&mut coeffs);
        UniPoly { coeffs, modulus: p }
    }

    pub fn zero(p: PrimeModulus) -> Self {
        UniPoly { coeffs: Vec::new(), modulus: p }
    }

    pub fn one(p: PrimeModulus) -> Self {
        Self::constant(p.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c.value()] };
        UniPoly { coeffs, modulus: c.modulus() }
    }

    /// The polynomial `x`.
    pub fn x(p: PrimeModulus) -> Self {
        Self::monomial(p.one(), 1)
    }

    /// `c * x^n`.
    pub fn monomial(c: FieldElement, n: usize) -> Self {
        if c.is_zero() {
            return Self::zero(c.modulus());
        }
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c.value();
        UniPoly { coeffs, modulus: c.modulus() }
    }

    /// `x^p - x`, materialized densely.
    pub fn xp_minus_x(p: PrimeModulus) -> Self {
        let n = p.get() as usize;
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = 1;
        coeffs[1] = p.neg_raw(1);
        Self::from_raw(p, coeffs)
    }

    /// `prod (x - r)` over the given roots, with multiplicity.
    pub fn from_roots(p: PrimeModulus, roots: impl IntoIterator<Item = FieldElement>) -> Self {
        let mut c = vec![1u32];
        for r in roots {
            let nr = p.neg_raw(r.value());
            c.push(0);
            for i in (0..c.len()).rev() {
                let lower = if i > 0 { c[i - 1] } else { 0 };
                c[i] = p.add_raw(lower, p.mul_raw(c[i], nr));
            }
        }
        Self::from_raw(p, c)
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.modulus.element(self.coeffs.get(i).copied().unwrap_or(0) as u64)
    }

    /// Raw canonical coefficients, low-to-high.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().map(|&c| self.modulus.element(c as u64))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn eval(&self, at: FieldElement) -> FieldElement {
        let p = self.modulus;
        let v = at.value();
        let r = self.coeffs.iter().rev().fold(0u32, |acc, &c| p.add_raw(p.mul_raw(acc, v), c));
        p.element(r as u64)
    }

    /// Every root in F_p, ascending, by exhaustive evaluation.
    pub fn roots(&self) -> Vec<FieldElement> {
        self.modulus.elements().filter(|&r| self.eval(r).is_zero()).collect()
    }

    pub fn scale(&self, c: FieldElement) -> UniPoly {
        let p = self.modulus;
        Self::from_raw(p, self.coeffs.iter().map(|&a| p.mul_raw(a, c.value())).collect())
    }

    /// Rescales to leading coefficient 1; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(lc) if lc.value() != 1 => self.scale(lc.inv().expect("leading coefficient is nonzero")),
            _ => self.clone(),
        }
    }

    /// Formal derivative. In characteristic `p` the `x^p` term drops out.
    pub fn derivative(&self) -> UniPoly {
        let p = self.modulus;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| p.mul_raw(a, p.element(i as u64).value()))
            .collect();
        Self::from_raw(p, c)
    }

    /// Division with remainder.
    pub fn divrem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        uni_divrem(self, divisor)
    }

    /// Divides by `x - r` in place of `self`; returns the remainder `f(r)`.
    fn synthetic_division(&self, r: u32) -> (UniPoly, u32) {
        let p = self.modulus;
        let n = self.coeffs.len();
        if n == 0 {
            return (self.clone(), 0);
        }
        let mut q = vec![0u32; n - 1];
        let mut carry = 0u32;
        for i in (0..n).rev() {
            let v = p.add_raw(self.coeffs[i], p.mul_raw(carry, r));
            if i == 0 {
                return (Self::from_raw(p, q), v);
            }
            q[i - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    /// `self * other mod modulus`, where `modulus` is monic.
    fn mul_mod(&self, other: &UniPoly, modulus: &UniPoly) -> UniPoly {
        let prod = self * other;
        reduce_monic(prod.coeffs, &modulus.coeffs, self.modulus)
    }
}

/// Remainder of raw `a` modulo the monic raw `m`.
fn reduce_monic(mut a: Vec<u32>, m: &[u32], p: PrimeModulus) -> UniPoly {
    let dm = m.len() - 1;
    while a.len() > dm {
        let top = a.len() - 1;
        let lead = a[top];
        if lead != 0 {
            let shift = top - dm;
            for (slot, &mc) in a[shift..].iter_mut().zip(m) {
                *slot = p.sub_raw(*slot, p.mul_raw(lead, mc));
            }
        }
        a.pop();
    }
    UniPoly::from_raw(p, a)
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly<{}>{:?}", self.modulus, self.coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let p = self.modulus;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = rhs.coeffs.get(i).copied().unwrap_or(0);
                p.add_raw(a, b)
            })
            .collect();
        UniPoly::from_raw(p, c)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        let p = self.modulus;
        UniPoly { coeffs: self.coeffs.iter().map(|&a| p.neg_raw(a)).collect(), modulus: p }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut acc = Vec::new();
        mul_acc(self.modulus, &mut acc, &self.coeffs, &rhs.coeffs, false);
        UniPoly::from_raw(self.modulus, acc)
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                $tr::$m(&self, &rhs)
            }
        }
    )*};
}
forward_owned!(UniPoly, Add::add, Sub::sub, Mul::mul);

/// Long division: `dividend = q * divisor + r` with `deg r < deg divisor`.
pub fn uni_divrem(dividend: &UniPoly, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
    let p = dividend.modulus;
    let lead = divisor.leading().ok_or(Error::DivisionByZeroPoly)?;
    let lead_inv = lead.inv()?.value();
    let dd = divisor.coeffs.len() - 1;
    let mut rem = dividend.coeffs.clone();
    if rem.len() <= dd {
        return Ok((UniPoly::zero(p), dividend.clone()));
    }
    let mut q = vec![0u32; rem.len() - dd];
    for top in (dd..rem.len()).rev() {
        let c = p.mul_raw(rem[top], lead_inv);
        if c == 0 {
            continue;
        }
        let shift = top - dd;
        q[shift] = c;
        for (slot, &dc) in rem[shift..=top].iter_mut().zip(&divisor.coeffs) {
            *slot = p.sub_raw(*slot, p.mul_raw(c, dc));
        }
    }
    rem.truncate(dd);
    Ok((UniPoly::from_raw(p, q), UniPoly::from_raw(p, rem)))
}

pub fn derivative(f: &UniPoly) -> UniPoly {
    f.derivative()
}

/// Largest `m` with `(x - r)^m | f`.
pub fn root_multiplicity(f: &UniPoly, r: FieldElement) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut m = 0;
    let mut cur = f.clone();
    loop {
        let (q, rem) = cur.synthetic_division(r.value());
        if rem != 0 {
            return Ok(m);
        }
        m += 1;
        cur = q;
    }
}

/// Whether `f | x^p - x`, i.e. `f` splits into distinct linear factors over F_p.
///
/// Computes `x^p mod f` by repeated squaring without materializing `x^p - x`.
/// The zero polynomial divides nothing but itself and yields `false`.
pub fn divides_xp_minus_x(f: &UniPoly) -> bool {
    let Some(deg) = f.degree() else {
        return false;
    };
    if deg == 0 {
        return true;
    }
    let p = f.modulus;
    let m = f.monic();
    let x = reduce_monic(vec![0, 1], &m.coeffs, p);
    let mut acc = UniPoly::one(p);
    let mut base = x.clone();
    let mut e = p.get();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_mod(&base, &m);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul_mod(&base, &m);
        }
    }
    acc == x
}

/// Polynomial in `x` whose coefficients are polynomials in `y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    coeffs: Vec<UniPoly>,
    modulus: PrimeModulus,
}

impl BiPoly {
    /// From `x`-coefficients, low-to-high.
    pub fn new(p: PrimeModulus, mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(UniPoly::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs, modulus: p }
    }

    pub fn zero(p: PrimeModulus) -> Self {
        BiPoly { coeffs: Vec::new(), modulus: p }
    }

    pub fn one(p: PrimeModulus) -> Self {
        BiPoly { coeffs: vec![UniPoly::one(p)], modulus: p }
    }

    /// Lifts a polynomial in `x` with constant (y-free) coefficients.
    pub fn from_x_poly(f: &UniPoly) -> Self {
        let p = f.modulus;
        let coeffs = f.coeffs.iter().map(|&c| UniPoly::constant(p.element(c as u64))).collect();
        Self::new(p, coeffs)
    }

    /// `x + a y - b`.
    pub fn linear(a: FieldElement, b: FieldElement) -> Self {
        let p = a.modulus();
        let c0 = UniPoly::from_raw(p, vec![p.neg_raw(b.value()), a.value()]);
        Self::new(p, vec![c0, UniPoly::one(p)])
    }

    /// Multiplies in place by `x + a y - b`.
    pub fn mul_linear(&mut self, a: FieldElement, b: FieldElement) {
        let p = self.modulus;
        let lin = [p.neg_raw(b.value()), a.value()];
        let mut next: Vec<UniPoly> = Vec::with_capacity(self.coeffs.len() + 1);
        next.push(UniPoly::zero(p));
        for (i, c) in self.coeffs.iter().enumerate() {
            // x * c_i contributes to x^(i+1); (a y - b) * c_i to x^i.
            let mut raw = core::mem::take(&mut next[i].coeffs);
            mul_acc(p, &mut raw, &c.coeffs, &lin, false);
            next[i] = UniPoly::from_raw(p, raw);
            next.push(c.clone());
        }
        *self = Self::new(p, next);
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Maximum `y`-degree over all `x`-coefficients.
    pub fn y_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(UniPoly::degree).max()
    }

    /// Monic in `x`: the leading `x`-coefficient is the constant 1.
    pub fn is_monic_x(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.coeffs == [1])
    }

    /// The coefficient of `x^j` (zero past the degree).
    pub fn coeff(&self, j: usize) -> UniPoly {
        self.coeffs.get(j).cloned().unwrap_or_else(|| UniPoly::zero(self.modulus))
    }

    pub fn x_coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    /// Substitutes `y = b`.
    pub fn eval_y(&self, b: FieldElement) -> UniPoly {
        let c = self.coeffs.iter().map(|h| h.eval(b).value()).collect();
        UniPoly::from_raw(self.modulus, c)
    }

    pub fn eval(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.eval_y(y).eval(x)
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter().map(|c| &c.coeffs)).finish()
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let p = self.modulus;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = UniPoly::zero(p);
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
            .collect();
        BiPoly::new(p, c)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { coeffs: self.coeffs.iter().map(|c| -c).collect(), modulus: self.modulus }
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let p = self.modulus;
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero(p);
        }
        let mut raw: Vec<Vec<u32>> = vec![Vec::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                mul_acc(p, &mut raw[i + j], &a.coeffs, &b.coeffs, false);
            }
        }
        BiPoly::new(p, raw.into_iter().map(|c| UniPoly::from_raw(p, c)).collect())
    }
}

forward_owned!(BiPoly, Add::add, Sub::sub, Mul::mul);

pub fn bi_eval_y(f: &BiPoly, b: FieldElement) -> UniPoly {
    f.eval_y(b)
}

/// Division in (F_p\[y\])\[x\] by a divisor monic in `x`, under the default
/// size guard ([`DEFAULT_MAX_BIVARIATE_P`]).
pub fn bi_divrem_x(dividend: &BiPoly, divisor: &BiPoly) -> Result<(BiPoly, BiPoly)> {
    bi_divrem_x_with_limit(dividend, divisor, DEFAULT_MAX_BIVARIATE_P)
}

/// [`bi_divrem_x`] with an explicit guard: a dividend of `x`-degree at least
/// `p` is refused when `p > max_p`.
pub fn bi_divrem_x_with_limit(
    dividend: &BiPoly,
    divisor: &BiPoly,
    max_p: u32,
) -> Result<(BiPoly, BiPoly)> {
    let p = dividend.modulus;
    if !divisor.is_monic_x() {
        return Err(Error::NonMonicDivisor);
    }
    if p.get() > max_p && dividend.x_degree().is_some_and(|d| d >= p.get() as usize) {
        return Err(Error::ModulusTooLargeForBivariate { p: p.get(), max_p });
    }
    let dd = divisor.coeffs.len() - 1;
    if dividend.coeffs.len() <= dd {
        return Ok((BiPoly::zero(p), dividend.clone()));
    }
    let mut rem: Vec<Vec<u32>> = dividend.coeffs.iter().map(|c| c.coeffs.clone()).collect();
    let mut quot: Vec<Vec<u32>> = vec![Vec::new(); rem.len() - dd];
    for top in (dd..rem.len()).rev() {
        let mut q = core::mem::take(&mut rem[top]);
        trim(&mut q);
        if q.is_empty() {
            continue;
        }
        let shift = top - dd;
        for (s, hs) in divisor.coeffs[..dd].iter().enumerate() {
            mul_acc(p, &mut rem[shift + s], &q, &hs.coeffs, true);
        }
        quot[shift] = q;
    }
    rem.truncate(dd);
    let wrap = |v: Vec<Vec<u32>>| BiPoly::new(p, v.into_iter().map(|c| UniPoly::from_raw(p, c)).collect());
    Ok((wrap(quot), wrap(rem)))
}

/// `h_i(y)`: the coefficient of `x^(p-i)`, for `0 <= i <= p`.
pub fn bi_coeff_x(f: &BiPoly, i: usize) -> Result<UniPoly> {
    let p = f.modulus.get() as usize;
    if i > p {
        return Err(Error::IndexOutOfRange { index: i, max: p });
    }
    Ok(f.coeff(p - i))
}
