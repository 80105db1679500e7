//! Point sets in the affine plane over F_p: ratio sets, weighted sumsets,
//! collinearity, and difference sets inside multiplicative subgroups.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::field::{subgroup, FieldElement, PrimeModulus};
use crate::redei::{auxiliary_bundle_with_limit, build_h_pointset, smallest_nonzero_index, Construction};
use crate::{Error, Result};

/// Distinct points `(a, b)`, kept sorted, with `1 <= |S| < p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<(FieldElement, FieldElement)>,
    modulus: PrimeModulus,
}

impl PointSet {
    pub fn new(p: PrimeModulus, points: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        Self::from_elements(p, points.into_iter().map(|(a, b)| (p.element(a), p.element(b))))
    }

    pub fn from_elements(
        p: PrimeModulus,
        points: impl IntoIterator<Item = (FieldElement, FieldElement)>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (a, b) in points {
            if !seen.insert((a, b)) {
                return Err(Error::DuplicatePoint { a: a.value(), b: b.value() });
            }
        }
        if seen.is_empty() {
            return Err(Error::EmptySet);
        }
        if seen.len() >= p.get() as usize {
            return Err(Error::ParamsOutOfRange("a point set needs fewer than p points"));
        }
        Ok(PointSet { points: seen.into_iter().collect(), modulus: p })
    }

    pub fn points(&self) -> &[(FieldElement, FieldElement)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    /// Shifts every point by `(da, db)`.
    pub fn translate(&self, da: FieldElement, db: FieldElement) -> PointSet {
        let points = self.points.iter().map(|&(a, b)| (a + da, b + db)).collect::<BTreeSet<_>>();
        PointSet { points: points.into_iter().collect(), modulus: self.modulus }
    }

    fn pairs(&self) -> impl Iterator<Item = (&(FieldElement, FieldElement), &(FieldElement, FieldElement))> {
        self.points
            .iter()
            .enumerate()
            .flat_map(move |(i, u)| self.points[i + 1..].iter().map(move |v| (u, v)))
    }
}

/// Ratio set `Q` and whether the infinite direction occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioSet {
    pub q: BTreeSet<FieldElement>,
    /// Some pair shares its `b`-coordinate.
    pub has_infinite_direction: bool,
}

/// `Q = {(a_i - a_j)/(b_i - b_j) : b_i != b_j}`.
pub fn ratio_set(s: &PointSet) -> Result<RatioSet> {
    if s.len() < 2 {
        return Err(Error::TooFewPoints);
    }
    let mut q = BTreeSet::new();
    let mut has_infinite_direction = false;
    for (&(a1, b1), &(a2, b2)) in s.pairs() {
        if b1 == b2 {
            has_infinite_direction = true;
        } else {
            q.insert((a1 - a2).div(b1 - b2)?);
        }
    }
    Ok(RatioSet { q, has_infinite_direction })
}

/// `Δ_α = {α a + b}`. `α = 0` gives the projection onto `b`.
pub fn weighted_sumset(s: &PointSet, alpha: FieldElement) -> BTreeSet<FieldElement> {
    s.points.iter().map(|&(a, b)| alpha * a + b).collect()
}

/// A line containing a point set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    /// `b = m a + c`.
    Sloped { m: FieldElement, c: FieldElement },
    /// `a = const`.
    Vertical { a: FieldElement },
}

pub fn is_collinear(s: &PointSet) -> Option<Line> {
    let (a1, b1) = s.points[0];
    let Some(&(a2, b2)) = s.points.get(1) else {
        return Some(Line::Sloped { m: s.modulus.zero(), c: b1 });
    };
    if a1 == a2 {
        return s.points.iter().all(|&(a, _)| a == a1).then_some(Line::Vertical { a: a1 });
    }
    let m = (b2 - b1).div(a2 - a1).ok()?;
    let c = b1 - m * a1;
    s.points.iter().all(|&(a, b)| b == m * a + c).then_some(Line::Sloped { m, c })
}

/// Both sides of `|Q| >= |S| - |Δ_α| + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirectionBound {
    pub alpha: FieldElement,
    /// `|S| - |Δ_α| + 1`.
    pub claimed: i64,
    pub q_size: usize,
    pub passed: bool,
}

/// The inequality without the non-collinearity precondition.
pub fn raw_direction_inequality(s: &PointSet, alpha: FieldElement) -> Result<DirectionBound> {
    let q = ratio_set(s)?;
    let claimed = s.len() as i64 - weighted_sumset(s, alpha).len() as i64 + 1;
    Ok(DirectionBound { alpha, claimed, q_size: q.q.len(), passed: q.q.len() as i64 >= claimed })
}

/// Checks `|Q| >= |S| - |Δ_α| + 1` for a non-collinear set and `α != 0`.
pub fn verify_direction_bound(s: &PointSet, alpha: FieldElement) -> Result<DirectionBound> {
    if alpha.is_zero() {
        return Err(Error::ParamsOutOfRange("alpha must be nonzero"));
    }
    if is_collinear(s).is_some() {
        return Err(Error::CollinearInput);
    }
    raw_direction_inequality(s, alpha)
}

/// Ratio set, weighted sumsets and bound checks for every nonzero `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionReport {
    pub q: BTreeSet<FieldElement>,
    pub has_infinite_direction: bool,
    pub delta: BTreeMap<FieldElement, BTreeSet<FieldElement>>,
    pub bound_checks: BTreeMap<FieldElement, DirectionBound>,
}

impl DirectionReport {
    pub fn all_passed(&self) -> bool {
        self.bound_checks.values().all(|b| b.passed)
    }
}

pub fn direction_report(s: &PointSet) -> Result<DirectionReport> {
    let ratios = ratio_set(s)?;
    let mut delta = BTreeMap::new();
    let mut bound_checks = BTreeMap::new();
    for alpha in s.modulus.units() {
        delta.insert(alpha, weighted_sumset(s, alpha));
        bound_checks.insert(alpha, verify_direction_bound(s, alpha)?);
    }
    Ok(DirectionReport {
        q: ratios.q,
        has_infinite_direction: ratios.has_infinite_direction,
        delta,
        bound_checks,
    })
}

/// The `y0` for which `prod (x + a_i y0 - b_i)` has distinct roots.
///
/// Two factors collide exactly when `(a_i - a_j) y0 = b_i - b_j`, so the
/// excluded values are the reciprocals of the nonzero ratios in `Q`, plus
/// `0` when the infinite direction occurs.
pub fn non_determined_slices(s: &PointSet) -> BTreeSet<FieldElement> {
    s.modulus
        .elements()
        .filter(|&y0| s.pairs().all(|(&(a1, b1), &(a2, b2))| (a1 - a2) * y0 != b1 - b2))
        .collect()
}

/// The Rédei route to the direction bound, on the slice `y = -α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSetAudit {
    pub alpha: FieldElement,
    pub good_slices: usize,
    /// `|S| - |Δ_α|`: total excess multiplicity of the slice roots.
    pub excess: usize,
    pub smallest_index: usize,
    pub reconstruction: bool,
    /// `good_slices <= i <= p - 1 - excess`.
    pub passed: bool,
}

pub fn pointset_redei_audit(s: &PointSet, alpha: FieldElement, max_p: u32) -> Result<PointSetAudit> {
    if is_collinear(s).is_some() {
        return Err(Error::CollinearInput);
    }
    let p = s.modulus.get() as usize;
    let good = non_determined_slices(s);
    let h = build_h_pointset(s)?;
    let mut bundle = auxiliary_bundle_with_limit(&h, &good, max_p)?;
    bundle.construction = Construction::PointSet(s.points.clone());
    let slice = bundle.slice(-alpha);
    let smallest_index = smallest_nonzero_index(&slice)?;
    let excess = s.len() - weighted_sumset(s, alpha).len();
    Ok(PointSetAudit {
        alpha,
        good_slices: good.len(),
        excess,
        smallest_index,
        reconstruction: bundle.reconstruction_holds(),
        passed: good.len() <= smallest_index && smallest_index + excess < p,
    })
}

/// Whether `A - A ⊆ Z_d ∪ {0}`; errors if such an `A` breaks `|A|(|A|-1) <= d`.
pub fn hp_witness_check(p: PrimeModulus, a: &BTreeSet<FieldElement>, d: u64) -> Result<bool> {
    let z = subgroup(p, d)?;
    let inside = a.iter().all(|&x| a.iter().all(|&y| x == y || z.contains(x - y)));
    let n = a.len() as u64;
    if inside && n * n.saturating_sub(1) > d {
        return Err(Error::CorollaryViolated { size: a.len(), d });
    }
    Ok(inside)
}

/// Node budget used by [`corollary_max_search`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSearch {
    pub max_size: usize,
    pub witness: Vec<FieldElement>,
    pub nodes: u64,
}

struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn clear_through(&mut self, i: usize) {
        for w in 0..i / 64 {
            self.0[w] = 0;
        }
        let bit = i % 64;
        self.0[i / 64] &= if bit == 63 { 0 } else { !0u64 << (bit + 1) };
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

struct Search<'a> {
    neighbors: &'a [Bits],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn expand(&mut self, clique: &mut Vec<usize>, cand: Bits) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded { nodes: self.budget });
        }
        if clique.len() > self.best.len() {
            self.best = clique.clone();
        }
        let members: Vec<usize> = cand.iter().collect();
        for (idx, &v) in members.iter().enumerate() {
            if clique.len() + members.len() - idx <= self.best.len() {
                return Ok(());
            }
            let mut next = cand.and(&self.neighbors[v]);
            next.clear_through(v);
            clique.push(v);
            self.expand(clique, next)?;
            clique.pop();
        }
        Ok(())
    }
}

/// Largest `A` with `A - A ⊆ Z_d ∪ {0}`, by branch and bound over the
/// Cayley graph of `Z_d` with `0 ∈ A` fixed by translation.
pub fn max_difference_clique(p: PrimeModulus, d: u64, budget: u64) -> Result<CliqueSearch> {
    let z = subgroup(p, d)?;
    let n = p.get() as usize;
    if !z.contains(-p.one()) {
        // x - y and y - x cannot both lie in Z_d.
        return Ok(CliqueSearch { max_size: 1, witness: vec![p.zero()], nodes: 0 });
    }
    let neighbors: Vec<Bits> = (0..n)
        .map(|v| {
            let mut b = Bits::new(n);
            for zz in z.iter() {
                b.set(((v as u64 + zz.value() as u64) % n as u64) as usize);
            }
            b
        })
        .collect();
    let mut search = Search { neighbors: &neighbors, best: vec![0], nodes: 0, budget };
    let mut clique = vec![0usize];
    let mut cand = Bits(neighbors[0].0.clone());
    cand.clear_through(0);
    search.expand(&mut clique, cand)?;
    let mut witness: Vec<FieldElement> = search.best.iter().map(|&v| p.element(v as u64)).collect();
    witness.sort();
    Ok(CliqueSearch { max_size: witness.len(), witness, nodes: search.nodes })
}

/// Maximum `|A|` with `A - A ⊆ Z_d ∪ {0}`, checked against `|A|(|A|-1) <= d`.
pub fn corollary_max_search(p: PrimeModulus, d: u64) -> Result<CliqueSearch> {
    p.require_odd()?;
    if p.get() > 101 {
        return Err(Error::ParamsOutOfRange("clique search is limited to p <= 101"));
    }
    let found = max_difference_clique(p, d, DEFAULT_SEARCH_BUDGET)?;
    let n = found.max_size as u64;
    if n * (n - 1) > d {
        return Err(Error::CorollaryViolated { size: found.max_size, d });
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{divisors, is_prime};

    fn f(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn set(p: PrimeModulus, xs: &[u64]) -> BTreeSet<FieldElement> {
        xs.iter().map(|&x| p.element(x)).collect()
    }

    #[test]
    fn ratio_set_examples() {
        let p = f(5);
        let r = ratio_set(&PointSet::new(p, [(0, 0), (1, 1), (0, 1)]).unwrap()).unwrap();
        assert_eq!(r.q, set(p, &[0, 1]));
        // (1,1) and (0,1) share their b-coordinate
        assert!(r.has_infinite_direction);
        let r = ratio_set(&PointSet::new(p, [(0, 0), (1, 0)]).unwrap()).unwrap();
        assert!(r.q.is_empty() && r.has_infinite_direction);
        let p7 = f(7);
        let r = ratio_set(&PointSet::new(p7, [(0, 0), (1, 1), (2, 2)]).unwrap()).unwrap();
        assert_eq!(r.q, set(p7, &[1]));
        assert_eq!(ratio_set(&PointSet::new(p, [(1, 1)]).unwrap()), Err(Error::TooFewPoints));
    }

    #[test]
    fn point_set_validation() {
        let p = f(5);
        assert_eq!(PointSet::new(p, [(1, 1), (6, 1)]), Err(Error::DuplicatePoint { a: 1, b: 1 }));
        assert_eq!(PointSet::new(p, []), Err(Error::EmptySet));
        assert!(PointSet::new(p, (0..5).map(|i| (i, 0))).is_err());
    }

    #[test]
    fn sumset_examples() {
        let p = f(5);
        let s = PointSet::new(p, [(0, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(weighted_sumset(&s, p.one()), set(p, &[0, 1, 2]));
        assert_eq!(weighted_sumset(&s, p.zero()), set(p, &[0, 1]));
        let p7 = f(7);
        let diag = PointSet::new(p7, [(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(weighted_sumset(&diag, p7.element(6)), set(p7, &[0]));
    }

    #[test]
    fn collinearity_examples() {
        let p = f(7);
        let diag = PointSet::new(p, [(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(is_collinear(&diag), Some(Line::Sloped { m: p.one(), c: p.zero() }));
        assert_eq!(is_collinear(&PointSet::new(p, [(0, 0), (1, 1), (0, 1)]).unwrap()), None);
        assert_eq!(
            is_collinear(&PointSet::new(p, [(3, 0), (3, 1)]).unwrap()),
            Some(Line::Vertical { a: p.element(3) })
        );
    }

    #[test]
    fn bound_examples() {
        let p = f(5);
        let s = PointSet::new(p, [(0, 0), (1, 1), (0, 1)]).unwrap();
        let b = verify_direction_bound(&s, p.one()).unwrap();
        assert_eq!((b.q_size, b.claimed, b.passed), (2, 1, true));
        let p7 = f(7);
        let diag = PointSet::new(p7, [(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(verify_direction_bound(&diag, p7.element(6)), Err(Error::CollinearInput));
        let raw = raw_direction_inequality(&diag, p7.element(6)).unwrap();
        assert_eq!((raw.q_size, raw.claimed, raw.passed), (1, 3, false));
        assert!(verify_direction_bound(&s, p.zero()).is_err());
        // two points off a vertical line always pass
        let two = PointSet::new(p7, [(1, 2), (3, 6)]).unwrap();
        assert!(is_collinear(&two).is_some());
        assert!(raw_direction_inequality(&two, p7.element(3)).unwrap().passed);
    }

    #[test]
    fn report_covers_every_alpha() {
        let p = f(7);
        let s = PointSet::new(p, [(0, 0), (1, 3), (2, 1), (5, 5)]).unwrap();
        let r = direction_report(&s).unwrap();
        assert_eq!(r.delta.len(), 6);
        assert!(r.all_passed());
    }

    #[test]
    fn slices_avoid_reciprocal_ratios() {
        let p = f(11);
        let s = PointSet::new(p, [(0, 0), (1, 3), (4, 1), (2, 2), (7, 0)]).unwrap();
        let good = non_determined_slices(&s);
        let ratios = ratio_set(&s).unwrap();
        let mut bad: BTreeSet<_> = ratios.q.iter().filter(|q| !q.is_zero()).map(|q| q.inv().unwrap()).collect();
        if ratios.has_infinite_direction {
            bad.insert(p.zero());
        }
        let complement: BTreeSet<_> = p.elements().filter(|e| !bad.contains(e)).collect();
        assert_eq!(good, complement);
    }

    #[test]
    fn redei_route_for_point_sets() {
        let p = f(11);
        let s = PointSet::new(p, [(0, 0), (1, 3), (4, 1), (2, 2), (7, 0), (3, 9)]).unwrap();
        for alpha in p.units() {
            let audit = pointset_redei_audit(&s, alpha, 1000).unwrap();
            assert!(audit.passed && audit.reconstruction, "{audit:?}");
        }
    }

    #[test]
    fn hp_examples() {
        let p = f(13);
        assert_eq!(hp_witness_check(p, &set(p, &[0, 1]), 4), Ok(true));
        assert_eq!(hp_witness_check(p, &set(p, &[5]), 4), Ok(true));
        assert_eq!(hp_witness_check(p, &set(p, &[0, 1, 2]), 4), Ok(false));
        assert!(matches!(hp_witness_check(p, &set(p, &[0]), 5), Err(Error::NotADivisor { .. })));
    }

    #[test]
    fn hp_is_translation_invariant() {
        let p = f(13);
        for d in divisors(12).into_iter().filter(|&d| d < 12) {
            for mask in 0u32..(1 << 6) {
                let a: BTreeSet<_> = (0..6).filter(|i| mask >> i & 1 == 1).map(|i| p.element(2 * i)).collect();
                let base = hp_witness_check(p, &a, d).unwrap();
                for t in p.elements() {
                    let shifted: BTreeSet<_> = a.iter().map(|&x| x + t).collect();
                    assert_eq!(hp_witness_check(p, &shifted, d).unwrap(), base);
                }
            }
        }
    }

    #[test]
    fn clique_search_examples() {
        let p = f(13);
        let r = corollary_max_search(p, 4).unwrap();
        assert_eq!(r.max_size, 2);
        assert_eq!(r.witness, vec![p.zero(), p.one()]);
        assert_eq!(corollary_max_search(p, 1).unwrap().max_size, 1);
        assert_eq!(corollary_max_search(p, 3).unwrap().max_size, 1);
        // Z_{p-1} ∪ {0} is the whole field
        let full = max_difference_clique(p, 12, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(full.max_size, 13);
        assert_eq!(corollary_max_search(p, 12), Err(Error::CorollaryViolated { size: 13, d: 12 }));
    }

    #[test]
    fn clique_matches_brute_force() {
        // subset enumeration as the independent route
        for p in [5u64, 7, 11, 13, 17].into_iter().filter(|&n| is_prime(n)).map(f) {
            let n = p.get() as usize;
            for d in divisors(n as u64 - 1) {
                let z = subgroup(p, d).unwrap();
                let mut best = 0;
                for mask in 0u32..(1 << n) {
                    if mask & 1 == 0 {
                        continue;
                    }
                    let members: Vec<u64> = (0..n as u64).filter(|i| mask >> i & 1 == 1).collect();
                    if members.len() <= best {
                        continue;
                    }
                    let ok = members.iter().all(|&x| {
                        members.iter().all(|&y| x == y || z.contains(p.element(x + n as u64 - y)))
                    });
                    if ok {
                        best = members.len();
                    }
                }
                let found = max_difference_clique(p, d, DEFAULT_SEARCH_BUDGET).unwrap();
                assert_eq!(found.max_size, best, "p={} d={d}", p.get());
                let w: BTreeSet<_> = found.witness.iter().copied().collect();
                assert!(hp_witness_check(p, &w, d).is_ok_and(|b| b) || d == n as u64 - 1);
            }
        }
    }
}
