//! Rédei polynomials and the derivative-multiplicity argument.
//!
//! For a Rédei polynomial `H(x, y)` (monic in `x`) the auxiliary cofactor is
//! realized as the quotient of `x^p - x` by `H` in (F_p\[y\])\[x\]:
//!
//! ```text
//! x^p - x = f(x, y) H(x, y) + r(x, y),    deg_x r < deg_x H
//! ```
//!
//! Whenever `H(x, b)` splits into distinct linear factors, `r(x, b)` vanishes
//! and `f(x, b) H(x, b) = x^p - x`. The product `F = f H = x^p - x - r` is
//! then lacunary on those `b`, and its slice at a fixed `y` carries the
//! root multiplicities that bound the number of such `b`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::directions::PointSet;
use crate::field::{FieldElement, PrimeModulus};
use crate::poly::{
    bi_coeff_x, bi_divrem_x_with_limit, divides_xp_minus_x, root_multiplicity, BiPoly, UniPoly,
    DEFAULT_MAX_BIVARIATE_P,
};
use crate::{Error, Result};

/// Which product a [`RedeiBundle`] was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// `prod_{0<=k<=alpha, 0<=j<=beta} (x + k y - j)`.
    Segments { alpha: u32, beta: u32 },
    /// `prod_{a in A, b in B} (x + a y - b)`, times `prod_{b in B} (x - b)`
    /// when strengthened.
    Cartesian { a: Vec<FieldElement>, b: Vec<FieldElement>, strengthened: bool },
    /// `prod_{(a, b) in S} (x + a y - b)`.
    PointSet(Vec<(FieldElement, FieldElement)>),
    /// Caller-supplied `H`.
    Custom,
}

/// `H` for initial segments `I_alpha`, `I_beta`; `x`-degree `(alpha+1)(beta+1)`.
pub fn build_h_segments(p: PrimeModulus, alpha: u32, beta: u32) -> Result<BiPoly> {
    let pm1 = p.get() as u64 - 1;
    if alpha == 0 || beta == 0 {
        return Err(Error::ParamsOutOfRange("alpha and beta must be at least 1"));
    }
    if alpha as u64 * (beta as u64 + 1) > pm1 {
        return Err(Error::ParamsOutOfRange("alpha(beta+1) must not exceed p-1"));
    }
    let mut h = BiPoly::one(p);
    for k in 0..=alpha as u64 {
        for j in 0..=beta as u64 {
            h.mul_linear(p.element(k), p.element(j));
        }
    }
    Ok(h)
}

/// `H` over a Cartesian product `A x B`.
///
/// The strengthened form multiplies in `prod (x - b_j)` once more, raising the
/// `x`-degree from `|A||B|` to `|A||B| + |B|`; it needs `0 not in A`.
pub fn build_h_cartesian(
    a: &BTreeSet<FieldElement>,
    b: &BTreeSet<FieldElement>,
    strengthened: bool,
) -> Result<BiPoly> {
    let p = a.first().ok_or(Error::EmptySet)?.modulus();
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    if strengthened && a.iter().any(|x| x.is_zero()) {
        return Err(Error::ZeroInA);
    }
    let mut h = BiPoly::one(p);
    if strengthened {
        for &bj in b {
            h.mul_linear(p.zero(), bj);
        }
    }
    for &ak in a {
        for &bj in b {
            h.mul_linear(ak, bj);
        }
    }
    Ok(h)
}

/// `H` for an arbitrary point set; `x`-degree `|S|`.
pub fn build_h_pointset(s: &PointSet) -> Result<BiPoly> {
    let mut h = BiPoly::one(s.modulus());
    for &(a, b) in s.points() {
        h.mul_linear(a, b);
    }
    Ok(h)
}

/// `H`, the auxiliary quotient `f`, the remainder `r` and `F = f H`.
#[derive(Clone, Debug)]
pub struct RedeiBundle {
    pub h: BiPoly,
    pub f: BiPoly,
    pub remainder: BiPoly,
    pub big_f: BiPoly,
    pub delta: usize,
    /// `profile[i - 1] = h_i(y)`, the coefficient of `x^(p-i)` in `F`.
    pub profile: Vec<UniPoly>,
    pub exceptional: BTreeSet<FieldElement>,
    pub construction: Construction,
}

/// Divides `x^p - x` by `h` and checks every caller-supplied exceptional
/// value: the remainder must vanish there and the slice of `h` must divide
/// `x^p - x`.
pub fn auxiliary_bundle(h: &BiPoly, exceptional: &BTreeSet<FieldElement>) -> Result<RedeiBundle> {
    auxiliary_bundle_with_limit(h, exceptional, DEFAULT_MAX_BIVARIATE_P)
}

pub fn auxiliary_bundle_with_limit(
    h: &BiPoly,
    exceptional: &BTreeSet<FieldElement>,
    max_p: u32,
) -> Result<RedeiBundle> {
    let p = h.modulus();
    if !h.is_monic_x() {
        return Err(Error::NonMonicDivisor);
    }
    let xp = UniPoly::xp_minus_x(p);
    let (f, remainder) = bi_divrem_x_with_limit(&BiPoly::from_x_poly(&xp), h, max_p)?;
    for &b in exceptional {
        if !remainder.eval_y(b).is_zero() || !divides_xp_minus_x(&h.eval_y(b)) {
            return Err(Error::ExceptionalSetInvalid { value: b.value() });
        }
    }
    let big_f = &BiPoly::from_x_poly(&xp) - &remainder;
    let big_f = if f.is_zero() { BiPoly::zero(p) } else { big_f };
    let profile = (1..=p.get() as usize)
        .map(|i| bi_coeff_x(&big_f, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(RedeiBundle {
        delta: h.x_degree().unwrap_or(0),
        h: h.clone(),
        f,
        remainder,
        big_f,
        profile,
        exceptional: exceptional.clone(),
        construction: Construction::Custom,
    })
}

impl RedeiBundle {
    pub fn modulus(&self) -> PrimeModulus {
        self.h.modulus()
    }

    /// Recomputes `f H + r` by multiplication and compares with `x^p - x`.
    pub fn reconstruction_holds(&self) -> bool {
        let p = self.modulus();
        let lhs = &(&self.f * &self.h) + &self.remainder;
        lhs == BiPoly::from_x_poly(&UniPoly::xp_minus_x(p))
    }

    /// `deg_y h_i <= i` for every `i`.
    pub fn lacunary_degree_bound_holds(&self) -> bool {
        self.profile.iter().enumerate().all(|(idx, hi)| hi.degree().is_none_or(|d| d <= idx + 1))
    }

    /// Every nonzero `h_i` has at most `i` roots.
    pub fn vanishing_set_bound_holds(&self) -> bool {
        self.profile
            .iter()
            .enumerate()
            .all(|(idx, hi)| hi.is_zero() || hi.roots().len() <= idx + 1)
    }

    /// `h_i(y)` for `1 <= i <= p`.
    pub fn h_coeff(&self, i: usize) -> Option<&UniPoly> {
        i.checked_sub(1).and_then(|k| self.profile.get(k))
    }

    /// `F(x, y0)`.
    pub fn slice(&self, y0: FieldElement) -> UniPoly {
        self.big_f.eval_y(y0)
    }
}

/// Least `i >= 1` with a nonzero coefficient of `x^(p-i)` in a monic
/// degree-`p` slice, not counting the constant term.
pub fn smallest_nonzero_index(slice: &UniPoly) -> Result<usize> {
    let p = slice.modulus().get() as usize;
    if slice.degree() != Some(p) || !slice.is_monic() {
        return Err(Error::ParamsOutOfRange("slice must be monic of degree p"));
    }
    (1..p).find(|&i| !slice.coeff(p - i).is_zero()).ok_or(Error::AllCoefficientsZero)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootMultiplicity {
    pub in_slice: usize,
    pub in_derivative: usize,
}

/// Outcome of [`stepanov_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepanovReport {
    pub y0: FieldElement,
    pub smallest_index: usize,
    /// `p - 1 - m * n`, where `n` roots each need multiplicity `m` in `F'`.
    pub d_bound: i64,
    pub derivative_degree: Option<usize>,
    pub multiplicity_table: BTreeMap<FieldElement, RootMultiplicity>,
    pub passed: bool,
}

/// Slices `F` at `y0` and runs the multiplicity count: each designated root
/// must have multiplicity at least `required + 1` in the slice, hence at
/// least `required` in its derivative of degree `p - i - 1`, which forces
/// `p - i - 1 >= required * |roots|`.
pub fn stepanov_check(
    bundle: &RedeiBundle,
    y0: FieldElement,
    designated_roots: &BTreeSet<FieldElement>,
    required_multiplicity: usize,
) -> Result<StepanovReport> {
    let p = bundle.modulus().get() as i64;
    let slice = bundle.slice(y0);
    let derivative = slice.derivative();
    let mut table = BTreeMap::new();
    for &r in designated_roots {
        let in_slice = if slice.is_zero() { 0 } else { root_multiplicity(&slice, r)? };
        if in_slice < required_multiplicity + 1 {
            return Err(Error::MultiplicityDeficit {
                root: r.value(),
                found: in_slice,
                required: required_multiplicity + 1,
            });
        }
        let in_derivative =
            if derivative.is_zero() { usize::MAX } else { root_multiplicity(&derivative, r)? };
        table.insert(r, RootMultiplicity { in_slice, in_derivative });
    }
    let smallest_index = smallest_nonzero_index(&slice)?;
    let need = (required_multiplicity * designated_roots.len()) as i64;
    let d_bound = p - 1 - need;
    let derivative_ok = table.values().all(|m| m.in_derivative >= required_multiplicity);
    Ok(StepanovReport {
        y0,
        smallest_index,
        d_bound,
        derivative_degree: derivative.degree(),
        multiplicity_table: table,
        passed: derivative_ok && smallest_index as i64 <= d_bound,
    })
}

/// Stepanov's principle as a predicate: a nonzero polynomial of degree `d`
/// vanishing to order at least `m` on `n` points has `n * m <= d`.
pub fn stepanov_principle_holds(f: &UniPoly, points: &BTreeSet<FieldElement>, m: usize) -> bool {
    let Some(d) = f.degree() else {
        return true;
    };
    let vanishing = points
        .iter()
        .filter(|&&r| root_multiplicity(f, r).is_ok_and(|k| k >= m))
        .count();
    vanishing * m <= d
}

/// Full audit of the segment construction against a given exceptional set.
#[derive(Clone, Debug)]
pub struct SegmentAudit {
    pub p: u32,
    pub alpha: u32,
    pub beta: u32,
    pub delta: usize,
    pub exceptional_len: usize,
    pub reconstruction: bool,
    pub degree_bound: bool,
    pub vanishing_bound: bool,
    /// `p - 1 - alpha(beta+1)`.
    pub claimed_bound: i64,
    /// `None` when `delta > p`; then no degree-`p` slice exists and the
    /// exceptional set must be empty.
    pub stepanov: Option<StepanovReport>,
    pub passed: bool,
}

/// Builds the segment bundle for `D = exceptional` and checks the whole chain
/// `|D| <= i <= p - 1 - alpha(beta+1)` with multiplicities `alpha + 1` at
/// `0..=beta` on the `y = 0` slice.
pub fn audit_segments(
    p: PrimeModulus,
    alpha: u32,
    beta: u32,
    exceptional: &BTreeSet<FieldElement>,
    max_p: u32,
) -> Result<SegmentAudit> {
    let h = build_h_segments(p, alpha, beta)?;
    let mut bundle = auxiliary_bundle_with_limit(&h, exceptional, max_p)?;
    bundle.construction = Construction::Segments { alpha, beta };
    let claimed_bound = p.get() as i64 - 1 - alpha as i64 * (beta as i64 + 1);
    let reconstruction = bundle.reconstruction_holds();
    let degree_bound = bundle.lacunary_degree_bound_holds();
    let vanishing_bound = bundle.vanishing_set_bound_holds();
    let stepanov = if bundle.delta <= p.get() as usize {
        let roots: BTreeSet<_> = (0..=beta as u64).map(|j| p.element(j)).collect();
        Some(stepanov_check(&bundle, p.zero(), &roots, alpha as usize)?)
    } else {
        None
    };
    let chain = match &stepanov {
        Some(s) => {
            s.passed
                && exceptional.len() <= s.smallest_index
                && s.smallest_index as i64 <= claimed_bound
        }
        None => exceptional.is_empty(),
    };
    Ok(SegmentAudit {
        p: p.get(),
        alpha,
        beta,
        delta: bundle.delta,
        exceptional_len: exceptional.len(),
        reconstruction,
        degree_bound,
        vanishing_bound,
        claimed_bound,
        passed: chain && reconstruction && degree_bound && vanishing_bound,
        stepanov,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{expressible_set, SegmentParams};

    fn f(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn set(p: PrimeModulus, xs: &[u64]) -> BTreeSet<FieldElement> {
        xs.iter().map(|&x| p.element(x)).collect()
    }

    #[test]
    fn segment_polynomial_shape() {
        let p = f(7);
        let h = build_h_segments(p, 2, 1).unwrap();
        assert_eq!(h.x_degree(), Some(6));
        assert!(h.is_monic_x());
        let x_xm1 = UniPoly::from_roots(p, [p.element(0), p.element(1)]);
        assert_eq!(h.eval_y(p.zero()), &(&x_xm1 * &x_xm1) * &x_xm1);
        let slice = h.eval_y(p.element(2));
        assert_eq!(slice.roots(), set(p, &[0, 1, 3, 4, 5, 6]).into_iter().collect::<Vec<_>>());
        assert!(divides_xp_minus_x(&slice));
    }

    #[test]
    fn segment_parameter_validation() {
        let p = f(7);
        assert!(build_h_segments(p, 2, 2).is_ok());
        assert!(matches!(build_h_segments(p, 3, 2), Err(Error::ParamsOutOfRange(_))));
        assert!(matches!(build_h_segments(p, 0, 1), Err(Error::ParamsOutOfRange(_))));
        assert!(matches!(build_h_segments(p, 1, 0), Err(Error::ParamsOutOfRange(_))));
    }

    #[test]
    fn quotient_at_exceptional_value() {
        let p = f(7);
        let h = build_h_segments(p, 2, 1).unwrap();
        let (q, r) = crate::poly::uni_divrem(&UniPoly::xp_minus_x(p), &h.eval_y(p.element(2))).unwrap();
        assert_eq!(q, UniPoly::from_signed(p, &[-2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn cartesian_degrees() {
        let p = f(5);
        let h = build_h_cartesian(&set(p, &[0, 1]), &set(p, &[0, 1]), false).unwrap();
        assert_eq!(h.x_degree(), Some(4));
        let a = set(p, &[1, 2]);
        let b = set(p, &[0, 1]);
        let hs = build_h_cartesian(&a, &b, true).unwrap();
        assert_eq!(hs.x_degree(), Some(6));
        // y = 0 slice is (prod (x - b))^(alpha+1)
        let base = UniPoly::from_roots(p, b.iter().copied());
        assert_eq!(hs.eval_y(p.zero()), &(&base * &base) * &base);
        assert_eq!(build_h_cartesian(&set(p, &[0, 1]), &b, true), Err(Error::ZeroInA));
        assert_eq!(build_h_cartesian(&BTreeSet::new(), &b, false), Err(Error::EmptySet));
        assert_eq!(build_h_cartesian(&a, &BTreeSet::new(), false), Err(Error::EmptySet));
    }

    #[test]
    fn pointset_polynomial() {
        let p = f(5);
        let single = PointSet::new(p, [(0, 0)]).unwrap();
        assert_eq!(build_h_pointset(&single).unwrap(), BiPoly::linear(p.zero(), p.zero()));
        let s = PointSet::new(p, [(0, 0), (1, 1), (0, 1)]).unwrap();
        let h = build_h_pointset(&s).unwrap();
        assert_eq!(h.x_degree(), Some(3));
        for alpha in p.units() {
            let want = UniPoly::from_roots(p, s.points().iter().map(|&(a, b)| alpha * a + b));
            assert_eq!(h.eval_y(-alpha), want);
        }
    }

    #[test]
    fn bundle_for_small_segments() {
        let p = f(7);
        let h = build_h_segments(p, 2, 1).unwrap();
        let d = set(p, &[2, 5]);
        let bundle = auxiliary_bundle(&h, &d).unwrap();
        assert_eq!(bundle.f.x_degree(), Some(1));
        assert!(bundle.remainder.eval_y(p.element(2)).is_zero());
        assert!(bundle.remainder.eval_y(p.element(5)).is_zero());
        assert!(bundle.reconstruction_holds());
        assert!(bundle.lacunary_degree_bound_holds());
        assert!(bundle.vanishing_set_bound_holds());
        // sum of the roots of x^p - x vanishes, so h_1 = 0
        assert!(bundle.h_coeff(1).unwrap().is_zero());
        assert_eq!(
            auxiliary_bundle(&h, &set(p, &[2, 3])).unwrap_err(),
            Error::ExceptionalSetInvalid { value: 3 }
        );
    }

    #[test]
    fn bundle_for_linear_h() {
        let p = f(5);
        let h = BiPoly::linear(p.zero(), p.zero());
        let bundle = auxiliary_bundle(&h, &BTreeSet::new()).unwrap();
        assert_eq!(bundle.f, BiPoly::from_x_poly(&UniPoly::from_signed(p, &[-1, 0, 0, 0, 1])));
        assert_eq!(bundle.big_f, BiPoly::from_x_poly(&UniPoly::xp_minus_x(p)));
        assert!(bundle.remainder.is_zero());
    }

    #[test]
    fn oversized_segments_force_empty_exceptional_set() {
        let p = f(7);
        let h = build_h_segments(p, 2, 2).unwrap();
        assert_eq!(h.x_degree(), Some(9));
        let bundle = auxiliary_bundle(&h, &BTreeSet::new()).unwrap();
        assert!(bundle.f.is_zero());
        assert!(bundle.big_f.is_zero());
        assert!(bundle.reconstruction_holds());
        assert!(auxiliary_bundle(&h, &set(p, &[1])).is_err());
    }

    #[test]
    fn smallest_index_examples() {
        let p = f(7);
        assert_eq!(smallest_nonzero_index(&UniPoly::xp_minus_x(p)), Ok(6));
        // (x + 3)^7 = x^7 + 3
        let frob = UniPoly::from_signed(p, &[3, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(smallest_nonzero_index(&frob), Err(Error::AllCoefficientsZero));
        assert!(smallest_nonzero_index(&UniPoly::x(p)).is_err());
    }

    #[test]
    fn stepanov_on_small_segments() {
        let p = f(7);
        let h = build_h_segments(p, 2, 1).unwrap();
        let bundle = auxiliary_bundle(&h, &set(p, &[2, 5])).unwrap();
        let slice = bundle.slice(p.zero());
        let expected = UniPoly::from_roots(p, [4, 0, 0, 0, 1, 1, 1].map(|r| p.element(r)));
        assert_eq!(slice, expected);
        let report = stepanov_check(&bundle, p.zero(), &set(p, &[0, 1]), 2).unwrap();
        assert!(report.passed);
        assert_eq!(report.smallest_index, 2);
        assert_eq!(report.d_bound, 2);
        assert_eq!(report.multiplicity_table[&p.zero()].in_slice, 3);
        assert!(report.multiplicity_table[&p.zero()].in_derivative >= 2);
        assert_eq!(
            stepanov_check(&bundle, p.zero(), &set(p, &[2]), 2).unwrap_err(),
            Error::MultiplicityDeficit { root: 2, found: 0, required: 3 }
        );
    }

    #[test]
    fn stepanov_on_cartesian() {
        let p = f(5);
        let ab = set(p, &[0, 1]);
        let h = build_h_cartesian(&ab, &ab, false).unwrap();
        // brute force: a with a x = y for x in {1,4}, y in {0,1,4} is {0,1,4}
        let bundle = auxiliary_bundle(&h, &set(p, &[2, 3])).unwrap();
        let report = stepanov_check(&bundle, p.zero(), &ab, 1).unwrap();
        assert!(report.passed);
        assert!(report.smallest_index >= 2);
        assert!(report.smallest_index as i64 <= report.d_bound);
    }

    #[test]
    fn principle_on_explicit_polynomials() {
        let p = f(11);
        let g = UniPoly::from_roots(p, [1, 1, 2, 2, 3, 3].map(|r| p.element(r)));
        assert!(stepanov_principle_holds(&g, &set(p, &[1, 2, 3]), 2));
        assert!(stepanov_principle_holds(&UniPoly::zero(p), &set(p, &[1]), 5));
    }

    #[test]
    fn segment_audit_agrees_with_oracle() {
        for (p, alpha, beta) in [(7u64, 2u32, 1u32), (11, 2, 2), (13, 3, 2), (13, 1, 5), (7, 2, 2)] {
            let pm = f(p);
            let report = expressible_set(&SegmentParams::new(pm, alpha, beta).unwrap()).unwrap();
            let audit = audit_segments(pm, alpha, beta, &report.inexpressible, 1000).unwrap();
            assert!(audit.passed, "{audit:?}");
        }
        let pm = f(7);
        let audit = audit_segments(pm, 2, 1, &set(pm, &[2, 5]), 1000).unwrap();
        assert_eq!(audit.stepanov.unwrap().smallest_index, 2);
    }
}
