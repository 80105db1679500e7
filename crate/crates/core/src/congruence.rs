//! Exhaustive ground truth for `a x ≡ ±y (mod p)`.
//!
//! Nothing here touches polynomials: these scans are the independent side
//! that the Rédei pipeline in [`crate::redei`] is checked against.

use alloc::collections::{BTreeMap, BTreeSet};

use crate::field::{gcd, FieldElement, PrimeModulus};
use crate::{Error, Result};

/// Segments `x in mu*{1..alpha}`, `y in nu*{1..beta}` for the congruence
/// `a x ≡ ±y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SegmentParams {
    pub p: PrimeModulus,
    pub alpha: u32,
    pub beta: u32,
    pub mu: u32,
    pub nu: u32,
    /// `false` drops the `±` and only accepts `a x ≡ y`. Exploration only.
    pub signed: bool,
}

impl SegmentParams {
    pub fn new(p: PrimeModulus, alpha: u32, beta: u32) -> Result<Self> {
        Self { p, alpha, beta, mu: 1, nu: 1, signed: true }.validated()
    }

    /// Scaled segments `mu I_alpha`, `nu I_beta`; needs `p ∤ mu nu`.
    pub fn scaled(self, mu: u32, nu: u32) -> Result<Self> {
        Self { mu, nu, ..self }.validated()
    }

    pub fn unsigned(self) -> Self {
        Self { signed: false, ..self }
    }

    fn validated(self) -> Result<Self> {
        self.p.require_odd()?;
        let p = self.p.get();
        if self.alpha == 0 || self.beta == 0 {
            return Err(Error::ParamsOutOfRange("alpha and beta must be at least 1"));
        }
        if self.alpha >= p || self.beta >= p {
            return Err(Error::ParamsOutOfRange("alpha and beta must be below p"));
        }
        if self.mu.is_multiple_of(p) || self.nu.is_multiple_of(p) {
            return Err(Error::ParamsOutOfRange("p must not divide mu*nu"));
        }
        Ok(self)
    }

    /// The guaranteed count `alpha(beta+1)`, when `alpha(beta+1) <= p-1`.
    pub fn theorem_bound(&self) -> Option<u64> {
        let b = self.alpha as u64 * (self.beta as u64 + 1);
        (b < self.p.get() as u64).then_some(b)
    }
}

/// Outcome of [`expressible_set`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpressibilityReport {
    pub params: SegmentParams,
    pub expressible: BTreeSet<FieldElement>,
    /// `D`: the elements of F_p^* with no representation.
    pub inexpressible: BTreeSet<FieldElement>,
    /// Lexicographically smallest `(x, y)` per expressible `a`, as integers.
    pub witness: BTreeMap<FieldElement, (u64, u64)>,
    pub bound: Option<u64>,
}

impl ExpressibilityReport {
    /// `true` when no bound applies.
    pub fn meets_bound(&self) -> bool {
        self.bound.is_none_or(|b| self.expressible.len() as u64 >= b)
    }
}

/// Scans all `(x, y)` in the configured segments and collects `±y/x`.
pub fn expressible_set(params: &SegmentParams) -> Result<ExpressibilityReport> {
    let params = params.validated()?;
    let p = params.p;
    let mut witness = BTreeMap::new();
    for i in 1..=params.alpha as u64 {
        let x = i * params.mu as u64;
        let x_inv = p.element(x).inv()?;
        for j in 1..=params.beta as u64 {
            let y = j * params.nu as u64;
            let a = p.element(y) * x_inv;
            witness.entry(a).or_insert((x, y));
            if params.signed {
                witness.entry(-a).or_insert((x, y));
            }
        }
    }
    let expressible: BTreeSet<_> = witness.keys().copied().collect();
    let inexpressible = p.units().filter(|a| !expressible.contains(a)).collect();
    Ok(ExpressibilityReport {
        bound: params.theorem_bound(),
        params,
        expressible,
        inexpressible,
        witness,
    })
}

fn ceil_sqrt(n: u64) -> u64 {
    let r = n.isqrt();
    if r * r < n {
        r + 1
    } else {
        r
    }
}

/// Smallest `(x, y)` with `x <= x_max`, `y <= y_max` and `a x ≡ ±y`.
fn smallest_solution(a: FieldElement, x_max: u64, y_max: u64) -> Option<(u64, u64)> {
    let p = a.modulus();
    (1..=x_max).find_map(|x| {
        let r = (a * p.element(x)).abs_rep() as u64;
        (r >= 1 && r <= y_max).then_some((x, r))
    })
}

/// `x, y <= ceil(sqrt p)` with `a x ≡ ±y`, lexicographically smallest.
pub fn thue_solve(a: FieldElement) -> Result<(u64, u64)> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let bound = ceil_sqrt(a.modulus().get() as u64);
    smallest_solution(a, bound, bound).ok_or(Error::BoundViolated { claimed: 1, observed: 0 })
}

/// `x <= alpha`, `y <= floor(p / alpha)` with `a x ≡ ±y`, lexicographically smallest.
pub fn vinogradov_solve(a: FieldElement, alpha: u64) -> Result<(u64, u64)> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let p = a.modulus().get() as u64;
    if alpha == 0 || alpha > p {
        return Err(Error::ParamsOutOfRange("need 1 <= alpha <= p"));
    }
    smallest_solution(a, alpha, p / alpha).ok_or(Error::BoundViolated { claimed: 1, observed: 0 })
}

/// Outcome of [`cartesian_direction_count`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartesianReport {
    /// Number of solvable `a` in F_p, zero included.
    pub count: u64,
    /// `min(p, (|A|-1)|B| + 1)`, or `min(p, |A||B| + 1)` when strengthened.
    pub bound: u64,
    pub includes_zero: bool,
    /// Smallest `(x, y)` per solvable `a`.
    pub witnesses: BTreeMap<FieldElement, (FieldElement, FieldElement)>,
}

impl CartesianReport {
    pub fn meets_bound(&self) -> bool {
        self.count >= self.bound
    }
}

/// `A - A`.
pub fn difference_set(a: &BTreeSet<FieldElement>) -> BTreeSet<FieldElement> {
    a.iter().flat_map(|&x| a.iter().map(move |&y| x - y)).collect()
}

/// Counts `a in F_p` with `a x ≡ y` for some `x in (A - A) \ {0}` (or
/// `x in (A ∪ (A - A)) \ {0}` when strengthened) and `y in B - B`.
pub fn cartesian_direction_count(
    a: &BTreeSet<FieldElement>,
    b: &BTreeSet<FieldElement>,
    strengthened: bool,
) -> Result<CartesianReport> {
    let p = a.first().ok_or(Error::EmptySet)?.modulus();
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    if strengthened && a.iter().any(|x| x.is_zero()) {
        return Err(Error::ZeroInA);
    }
    let mut xs = difference_set(a);
    if strengthened {
        xs.extend(a.iter().copied());
    }
    xs.remove(&p.zero());
    let ys = difference_set(b);

    let mut witnesses = BTreeMap::new();
    // a = 0 is always solvable: y = 0 with any x, including x = 0 when A - A = {0}.
    witnesses.insert(p.zero(), (xs.first().copied().unwrap_or(p.zero()), p.zero()));
    for &x in &xs {
        let x_inv = x.inv()?;
        for &y in &ys {
            witnesses.entry(y * x_inv).or_insert((x, y));
        }
    }
    let (alpha, beta) = (a.len() as u64, b.len() as u64);
    let raw = if strengthened { alpha * beta + 1 } else { (alpha - 1) * beta + 1 };
    Ok(CartesianReport {
        count: witnesses.len() as u64,
        bound: raw.min(p.get() as u64),
        includes_zero: true,
        witnesses,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoprimeRatioCount {
    pub distinct_a_count: u64,
    pub coprime_pair_count: u64,
}

/// Counts distinct `±u/v` for `u, v <= alpha` and coprime pairs `(u, v)`.
/// Needs `2 alpha^2 < p`, where the first count is exactly twice the second.
pub fn coprime_ratio_count(p: PrimeModulus, alpha: u32) -> Result<CoprimeRatioCount> {
    p.require_odd()?;
    if alpha == 0 {
        return Err(Error::ParamsOutOfRange("alpha must be at least 1"));
    }
    let a = alpha as u64;
    if 2 * a * a >= p.get() as u64 {
        return Err(Error::RangeTooLarge);
    }
    let mut ratios = BTreeSet::new();
    let mut pairs = 0u64;
    for v in 1..=a {
        let v_inv = p.element(v).inv()?;
        for u in 1..=a {
            let r = p.element(u) * v_inv;
            ratios.insert(r);
            ratios.insert(-r);
            if gcd(u, v) == 1 {
                pairs += 1;
            }
        }
    }
    let distinct = ratios.len() as u64;
    if distinct != 2 * pairs {
        return Err(Error::CoprimeIdentityViolated {
            distinct: distinct as usize,
            pairs: pairs as usize,
        });
    }
    Ok(CoprimeRatioCount { distinct_a_count: distinct, coprime_pair_count: pairs })
}

/// Euler's totient by trial division.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `2 * sum_{k <= alpha} phi(k) - 1`, the number of coprime pairs in `{1..alpha}^2`.
pub fn coprime_pairs_by_totient(alpha: u64) -> u64 {
    2 * (1..=alpha).map(totient).sum::<u64>() - 1
}
