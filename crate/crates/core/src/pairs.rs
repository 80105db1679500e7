//! Congruent pairs between `{1^k, ..., h^k}` and `{t, 2^k t, ..., (g-1)^k t}`
//! for a k-th power residue `t`, plus sums of two squares.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::congruence::{expressible_set, thue_solve, ExpressibilityReport, SegmentParams};
use crate::field::{kth_roots, FieldElement, PrimeModulus};
use crate::{Error, Result};

/// Validated inputs: odd `p ≡ 1 (mod k)`, even `k`, `2 <= g <= p` and a
/// k-th power residue target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairParams {
    pub p: PrimeModulus,
    pub k: u64,
    pub g: u64,
    pub target: FieldElement,
}

impl PairParams {
    pub fn new(p: PrimeModulus, k: u64, g: u64, target: FieldElement) -> Result<Self> {
        check_pkg(p, k, g)?;
        if target.modulus() != p {
            return Err(Error::ModulusMismatch { left: p.get(), right: target.modulus().get() });
        }
        if !is_kth_power(target, k) {
            return Err(Error::ParamsOutOfRange("target must be a k-th power residue"));
        }
        Ok(PairParams { p, k, g, target })
    }
}

fn check_pkg(p: PrimeModulus, k: u64, g: u64) -> Result<()> {
    p.require_odd()?;
    let pp = p.get() as u64;
    if k == 0 || !k.is_multiple_of(2) {
        return Err(Error::ParamsOutOfRange("k must be a positive even integer"));
    }
    if !(pp - 1).is_multiple_of(k) {
        return Err(Error::ParamsOutOfRange("p must be 1 mod k"));
    }
    if g < 2 || g > pp {
        return Err(Error::BadG(g));
    }
    Ok(())
}

/// Euler's criterion for k-th powers when `k | p - 1`.
fn is_kth_power(t: FieldElement, k: u64) -> bool {
    let pm1 = t.modulus().get() as u64 - 1;
    !t.is_zero() && t.pow(pm1 / k) == t.modulus().one()
}

/// `s^k * target ≡ y^k` with `1 <= s <= g-1` and `1 <= y <= h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairWitness {
    pub s: u64,
    pub y: u64,
    pub congruence_check: bool,
}

impl PairWitness {
    fn checked(params: &PairParams, s: u64, y: u64) -> Self {
        let p = params.p;
        let lhs = p.element(s).pow(params.k) * params.target;
        PairWitness { s, y, congruence_check: lhs == p.element(y).pow(params.k) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairBounds {
    /// `ceil((p-k-g)/(g-1))`, clamped below at 1.
    pub h_new: u64,
    /// The unclamped value, possibly zero or negative.
    pub h_new_raw: i64,
    /// `ceil(p/g)`.
    pub h_classic: u64,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    let q = a.div_euclid(b);
    if a.rem_euclid(b) == 0 {
        q
    } else {
        q + 1
    }
}

pub fn pair_bound_h(p: PrimeModulus, k: u64, g: u64) -> Result<PairBounds> {
    let pp = p.get() as u64;
    if g < 2 || g > pp {
        return Err(Error::BadG(g));
    }
    let raw = ceil_div(pp as i64 - k as i64 - g as i64, g as i64 - 1);
    Ok(PairBounds {
        h_new: raw.max(1) as u64,
        h_new_raw: raw,
        h_classic: pp.div_ceil(g),
    })
}

/// Per-`(p, k, g)` tables shared by every target: the expressible set for
/// `x <= g-1`, `y <= h_new`, the k-th roots of each residue and the smallest
/// `y` for each value of `y^k`.
#[derive(Clone, Debug)]
pub struct PairContext {
    p: PrimeModulus,
    k: u64,
    g: u64,
    bounds: PairBounds,
    expressible: ExpressibilityReport,
    roots: BTreeMap<FieldElement, Vec<FieldElement>>,
    /// `powers[i] = i^k mod p` for `0 <= i < p`.
    powers: Vec<u32>,
    /// Smallest `y <= h_new` per value of `y^k`, indexed by value (0 = none).
    smallest_y: Vec<u64>,
}

impl PairContext {
    pub fn new(p: PrimeModulus, k: u64, g: u64) -> Result<Self> {
        check_pkg(p, k, g)?;
        let bounds = pair_bound_h(p, k, g)?;
        let expressible =
            expressible_set(&SegmentParams::new(p, (g - 1) as u32, bounds.h_new as u32)?)?;
        let powers: Vec<u32> = p.elements().map(|a| a.pow(k).value()).collect();
        let mut roots: BTreeMap<FieldElement, Vec<FieldElement>> = BTreeMap::new();
        for a in p.units() {
            roots.entry(p.element(powers[a.value() as usize] as u64)).or_default().push(a);
        }
        let smallest_y = smallest_y_table(&powers, bounds.h_new);
        Ok(PairContext { p, k, g, bounds, expressible, roots, powers, smallest_y })
    }

    pub fn bounds(&self) -> PairBounds {
        self.bounds
    }

    /// k-th power residues, ascending.
    pub fn residues(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.roots.keys().copied()
    }

    pub fn params(&self, target: FieldElement) -> Result<PairParams> {
        PairParams::new(self.p, self.k, self.g, target)
    }

    /// Exhaustive scan over `s` then `y`; smallest `(s, y)` wins.
    pub fn find_congruent(&self, target: FieldElement, h: u64) -> Result<PairWitness> {
        let params = self.params(target)?;
        let p = self.p;
        let fresh;
        let table = if h == self.bounds.h_new {
            &self.smallest_y
        } else {
            fresh = smallest_y_table(&self.powers, h);
            &fresh
        };
        (1..self.g)
            .find_map(|s| {
                let v = p.mul_raw(self.powers[(s % p.get() as u64) as usize], target.value());
                match table[v as usize] {
                    0 => None,
                    y => Some(PairWitness::checked(&params, s, y)),
                }
            })
            .ok_or(Error::NoPairFound { target: target.value(), g: self.g, h })
    }

    /// Picks the smallest k-th root `a` of the target that is expressible as
    /// `a x ≡ ±y` and maps its witness through `t x^k ≡ (a x)^k ≡ y^k`.
    pub fn find_constructive(&self, target: FieldElement) -> Result<PairWitness> {
        let params = self.params(target)?;
        let (g, h) = (self.g as i64, self.bounds.h_new as i64);
        if (g - 1) * (h + 1) + 1 < self.p.get() as i64 - self.k as i64 {
            return Err(Error::ParamsOutOfRange("(g-1)(h+1)+1 >= p-k does not hold"));
        }
        let roots = self.roots.get(&target).map(Vec::as_slice).unwrap_or_default();
        roots
            .iter()
            .find_map(|a| self.expressible.witness.get(a))
            .map(|&(x, y)| PairWitness::checked(&params, x, y))
            .ok_or(Error::ConstructionFailed { target: target.value() })
    }
}

fn smallest_y_table(powers: &[u32], h: u64) -> Vec<u64> {
    let p = powers.len() as u64;
    let mut table = alloc::vec![0u64; powers.len()];
    for y in (1..=h).rev() {
        table[powers[(y % p) as usize] as usize] = y;
    }
    table
}

/// Exhaustive search for a congruent pair with `y <= h`.
pub fn find_congruent_pair(params: &PairParams, h: u64) -> Result<PairWitness> {
    PairContext::new(params.p, params.k, params.g)?.find_congruent(params.target, h)
}

/// Pair found through the expressible set with `x <= g-1`, `y <= h_new`.
pub fn find_pair_constructive(params: &PairParams) -> Result<PairWitness> {
    PairContext::new(params.p, params.k, params.g)?.find_constructive(params.target)
}

/// Both bounds and the two comparison claims between them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundComparison {
    pub bounds: PairBounds,
    /// `g >= h_new`.
    pub g_at_least_h: bool,
    /// `h_new <= h_classic`, asserted only when `g >= h_new`.
    pub weak_claim: Option<bool>,
    /// `g(k+g) >= p`.
    pub strong_condition: bool,
    /// `h_new <= h_classic - 1`, asserted only under `strong_condition`.
    pub strong_claim: Option<bool>,
    /// `g(k+1) >= p`, the condition under which the real-valued bounds
    /// differ by at least one.
    pub corrected_condition: bool,
    /// Unclamped `h_new <= h_classic - 1` under `corrected_condition`.
    pub corrected_claim: Option<bool>,
}

impl BoundComparison {
    /// Both claims as literally stated.
    pub fn literal_claims_hold(&self) -> bool {
        self.weak_claim.unwrap_or(true) && self.strong_claim.unwrap_or(true)
    }
}

pub fn compare_bounds(p: PrimeModulus, k: u64, g: u64) -> Result<BoundComparison> {
    let bounds = pair_bound_h(p, k, g)?;
    let pp = p.get() as u64;
    let g_at_least_h = g >= bounds.h_new;
    let strong_condition = g * (k + g) >= pp;
    let corrected_condition = g * (k + 1) >= pp;
    Ok(BoundComparison {
        bounds,
        g_at_least_h,
        weak_claim: g_at_least_h.then_some(bounds.h_new <= bounds.h_classic),
        strong_condition,
        strong_claim: strong_condition.then_some(bounds.h_new < bounds.h_classic),
        corrected_condition,
        corrected_claim: corrected_condition
            .then_some(bounds.h_new_raw < bounds.h_classic as i64),
    })
}

/// `p = x^2 + y^2` from a square root `r` of `-1` and a Thue pair for `r`.
pub fn sum_two_squares(p: PrimeModulus) -> Result<(u64, u64)> {
    if p.get() % 4 != 1 {
        return Err(Error::BadResidueClass);
    }
    let r = *kth_roots(-p.one(), 2).first().ok_or(Error::BadResidueClass)?;
    let (x, y) = thue_solve(r)?;
    let n = x * x + y * y;
    if n != p.get() as u64 {
        return Err(Error::BoundViolated { claimed: p.get() as u64, observed: n });
    }
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{is_prime, kth_power_residues};

    fn f(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn params(p: u64, k: u64, g: u64, t: u64) -> PairParams {
        PairParams::new(f(p), k, g, f(p).element(t)).unwrap()
    }

    #[test]
    fn bound_examples() {
        let b = pair_bound_h(f(13), 2, 4).unwrap();
        assert_eq!((b.h_new, b.h_classic), (3, 4));
        let b = pair_bound_h(f(11), 2, 3).unwrap();
        assert_eq!((b.h_new, b.h_classic), (3, 4));
        let b = pair_bound_h(f(13), 2, 13).unwrap();
        assert_eq!((b.h_new, b.h_new_raw, b.h_classic), (1, 0, 1));
        assert_eq!(pair_bound_h(f(13), 2, 1), Err(Error::BadG(1)));
        assert_eq!(pair_bound_h(f(13), 2, 14), Err(Error::BadG(14)));
    }

    #[test]
    fn param_validation() {
        let p = f(13);
        assert!(PairParams::new(p, 3, 4, p.one()).is_err());
        assert!(PairParams::new(p, 8, 4, p.one()).is_err());
        assert!(PairParams::new(p, 2, 4, p.element(2)).is_err());
        assert!(PairParams::new(p, 2, 1, p.one()).is_err());
        assert!(PairParams::new(p, 2, 4, p.element(4)).is_ok());
    }

    #[test]
    fn exhaustive_examples() {
        let w = find_congruent_pair(&params(13, 2, 4, 4), 3).unwrap();
        assert_eq!((w.s, w.y, w.congruence_check), (1, 2, true));
        let w = find_congruent_pair(&params(13, 2, 4, 3), 3).unwrap();
        assert_eq!((w.s, w.y), (3, 1));
        let w = find_congruent_pair(&params(37, 4, 9, 1), 5).unwrap();
        assert_eq!((w.s, w.y), (1, 1));
    }

    #[test]
    fn constructive_examples() {
        let w = find_pair_constructive(&params(13, 2, 4, 4)).unwrap();
        assert!(w.congruence_check && w.s <= 3 && w.y <= 3);
        let w = find_pair_constructive(&params(29, 4, 5, 1)).unwrap();
        assert_eq!((w.s, w.y), (1, 1));
    }

    #[test]
    fn off_by_one_counterexample() {
        // p = 5, k = 2, g = 2 gives h = 1: {1} against {4}. Both roots +-2 of
        // x^2 = 4 are inexpressible with x <= 1, y <= 1.
        let pr = params(5, 2, 2, 4);
        let h = pair_bound_h(pr.p, 2, 2).unwrap().h_new;
        assert_eq!(h, 1);
        assert_eq!(find_congruent_pair(&pr, h), Err(Error::NoPairFound { target: 4, g: 2, h: 1 }));
        assert_eq!(find_pair_constructive(&pr), Err(Error::ConstructionFailed { target: 4 }));
        // one more y closes the gap
        assert!(find_congruent_pair(&pr, 2).unwrap().congruence_check);
    }

    #[test]
    fn classic_bound_always_succeeds() {
        for p in (3..120u64).filter(|&n| is_prime(n)).map(f) {
            for k in [2u64, 4, 6] {
                if !(p.get() as u64 - 1).is_multiple_of(k) {
                    continue;
                }
                for g in 2..=p.get() as u64 {
                    let ctx = PairContext::new(p, k, g).unwrap();
                    let h = ctx.bounds().h_classic;
                    for t in kth_power_residues(p, k) {
                        assert!(ctx.find_congruent(t, h).unwrap().congruence_check);
                    }
                }
            }
        }
    }

    #[test]
    fn comparison_examples() {
        let c = compare_bounds(f(13), 2, 4).unwrap();
        assert!(c.strong_condition);
        assert_eq!(c.strong_claim, Some(true));
        let c = compare_bounds(f(11), 2, 3).unwrap();
        assert!(c.strong_condition && c.strong_claim == Some(true));
        let c = compare_bounds(f(101), 2, 3).unwrap();
        assert!(!c.strong_condition);
        assert_eq!(c.strong_claim, None);
        // literal "smaller by one" claim fails here: both bounds are 5
        let c = compare_bounds(f(19), 2, 4).unwrap();
        assert_eq!((c.bounds.h_new, c.bounds.h_classic), (5, 5));
        assert_eq!(c.strong_claim, Some(false));
        assert!(!c.corrected_condition);
    }

    #[test]
    fn sum_of_two_squares_examples() {
        assert_eq!(sum_two_squares(f(5)), Ok((1, 2)));
        assert_eq!(sum_two_squares(f(13)), Ok((2, 3)));
        assert_eq!(sum_two_squares(f(29)), Ok((2, 5)));
        assert_eq!(sum_two_squares(f(7)), Err(Error::BadResidueClass));
    }
}
