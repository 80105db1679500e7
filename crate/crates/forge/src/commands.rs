//! Single-case checks. Each returns records; bad input is an error, a failed
//! inequality is a record with `passed == false`.

use std::collections::BTreeSet;

use redei_core::congruence::{
    cartesian_direction_count, coprime_pairs_by_totient, coprime_ratio_count, expressible_set,
    thue_solve, vinogradov_solve, SegmentParams,
};
use redei_core::directions::{
    is_collinear, max_difference_clique, raw_direction_inequality, ratio_set, verify_direction_bound,
    weighted_sumset, PointSet, DEFAULT_SEARCH_BUDGET,
};
use redei_core::field::subgroup;
use redei_core::pairs::{compare_bounds, sum_two_squares, PairContext};
use redei_core::redei::audit_segments;
use redei_core::{Error, FieldElement, PrimeModulus};

use crate::record::{fmt_set, Params, VerificationRecord};
use crate::ForgeError;

fn values(set: &BTreeSet<FieldElement>) -> Vec<u32> {
    set.iter().map(|e| e.value()).collect()
}

fn ceil_sqrt(n: u64) -> u64 {
    let r = n.isqrt();
    if r * r < n {
        r + 1
    } else {
        r
    }
}

/// Turns a core violation into a failed record, passes other errors through.
fn violation(
    theorem: &'static str,
    p: PrimeModulus,
    params: Params,
    err: Error,
) -> Result<VerificationRecord, ForgeError> {
    if err.is_violation() {
        Ok(VerificationRecord::new(theorem, p.get(), params, 0, -1, false).witness(err.to_string()))
    } else {
        Err(err.into())
    }
}

pub fn thue(p: PrimeModulus, a: u64) -> Result<VerificationRecord, ForgeError> {
    let params = Params::new().with("a", a as i64);
    let bound = ceil_sqrt(p.get() as u64) as i64;
    match thue_solve(p.element(a)) {
        Ok((x, y)) => {
            let observed = x.max(y) as i64;
            Ok(VerificationRecord::new("thue", p.get(), params, bound, observed, observed <= bound)
                .witness(format!("({x},{y})")))
        }
        Err(e) => violation("thue", p, params, e),
    }
}

pub fn vinogradov(p: PrimeModulus, a: u64, alpha: u64) -> Result<VerificationRecord, ForgeError> {
    let params = Params::new().with("a", a as i64).with("alpha", alpha as i64);
    match vinogradov_solve(p.element(a), alpha) {
        Ok((x, y)) => {
            let bound = (p.get() as u64 / alpha) as i64;
            let passed = x <= alpha && y as i64 <= bound;
            Ok(VerificationRecord::new("vinogradov", p.get(), params, bound, y as i64, passed)
                .witness(format!("({x},{y})")))
        }
        Err(e) => violation("vinogradov", p, params, e),
    }
}

pub fn expressible(params: &SegmentParams) -> Result<VerificationRecord, ForgeError> {
    let report = expressible_set(params)?;
    let rec_params = Params::new()
        .with("alpha", params.alpha)
        .with("beta", params.beta)
        .with("mu", params.mu)
        .with("nu", params.nu);
    let observed = report.expressible.len() as i64;
    Ok(VerificationRecord::new(
        "main",
        params.p.get(),
        rec_params,
        report.bound.map_or(0, |b| b as i64),
        observed,
        report.meets_bound(),
    )
    .witness(format!("D={}", fmt_set(values(&report.inexpressible))))
    .detail("expressible", values(&report.expressible))
    .detail("D", values(&report.inexpressible)))
}

/// Rédei chain for segments, with `D` from the expressibility oracle.
pub fn redei_audit(p: PrimeModulus, alpha: u32, beta: u32, max_p: u32) -> Result<VerificationRecord, ForgeError> {
    let oracle = expressible_set(&SegmentParams::new(p, alpha, beta)?)?;
    let audit = audit_segments(p, alpha, beta, &oracle.inexpressible, max_p)?;
    let params = Params::new().with("alpha", alpha).with("beta", beta);
    let observed = audit.stepanov.as_ref().map_or(-1, |s| s.smallest_index as i64);
    let mut rec = VerificationRecord::new("redei", p.get(), params, audit.claimed_bound, observed, audit.passed)
        .witness(format!("D={}", fmt_set(values(&oracle.inexpressible))))
        .detail("delta", audit.delta)
        .detail("reconstruction", audit.reconstruction)
        .detail("degree_bound", audit.degree_bound)
        .detail("vanishing_bound", audit.vanishing_bound);
    if let Some(s) = &audit.stepanov {
        let min_mult = s.multiplicity_table.values().map(|m| m.in_slice).min().unwrap_or(0);
        rec = rec.detail("min_multiplicity", min_mult).detail("stepanov", s.passed);
    }
    Ok(rec)
}

pub fn cartesian(
    a: &BTreeSet<FieldElement>,
    b: &BTreeSet<FieldElement>,
    strengthened: bool,
) -> Result<VerificationRecord, ForgeError> {
    let report = cartesian_direction_count(a, b, strengthened)?;
    let p = a.first().map_or(0, |e| e.modulus().get());
    let theorem = if strengthened { "strengthened" } else { "main2" };
    let params = Params::new().with("alpha", a.len() as i64).with("beta", b.len() as i64);
    Ok(VerificationRecord::new(
        theorem,
        p,
        params,
        report.bound as i64,
        report.count as i64,
        report.meets_bound(),
    )
    .witness(format!("A={} B={}", fmt_set(values(a)), fmt_set(values(b)))))
}

/// One target: exhaustive pair at `h_new` and agreement of the constructive route.
pub fn pair_target(ctx: &PairContext, target: FieldElement) -> Result<VerificationRecord, ForgeError> {
    let b = ctx.bounds();
    let params = ctx.params(target)?;
    let rec_params = Params::new()
        .with("k", params.k as i64)
        .with("g", params.g as i64)
        .with("target", target.value());
    let found = ctx.find_congruent(target, b.h_new);
    let built = ctx.find_constructive(target);
    match (found, built) {
        (Ok(w), Ok(c)) => {
            let passed = w.congruence_check && c.congruence_check && w.y <= b.h_new && c.y <= b.h_new;
            Ok(VerificationRecord::new("pairs", params.p.get(), rec_params, b.h_new as i64, w.y as i64, passed)
                .witness(format!("s={} y={}", w.s, w.y))
                .detail("constructive", format!("x={} y={}", c.s, c.y)))
        }
        (Err(e), _) | (_, Err(e)) => violation("pairs", params.p, rec_params, e),
    }
}

/// Every k-th power residue for one `(p, k, g)`.
pub fn pair_sweep(ctx: &PairContext, p: PrimeModulus, k: u64, g: u64) -> Result<VerificationRecord, ForgeError> {
    let b = ctx.bounds();
    let params = Params::new().with("k", k as i64).with("g", g as i64);
    let mut worst = 0i64;
    let mut witness = String::new();
    for target in ctx.residues() {
        let rec = pair_target(ctx, target)?;
        if !rec.passed {
            return Ok(VerificationRecord::new("pairs", p.get(), params, b.h_new as i64, -1, false)
                .witness(format!("target={} {}", target.value(), rec.witness.unwrap_or_default())));
        }
        if rec.observed > worst {
            worst = rec.observed;
            witness = format!("target={} {}", target.value(), rec.witness.unwrap_or_default());
        }
    }
    Ok(VerificationRecord::new("pairs", p.get(), params, b.h_new as i64, worst, worst <= b.h_new as i64)
        .witness(witness))
}

/// The two comparison sentences between `h_new` and `ceil(p/g)`.
pub fn pair_compare(p: PrimeModulus, k: u64, g: u64) -> Result<VerificationRecord, ForgeError> {
    let c = compare_bounds(p, k, g)?;
    let params = Params::new().with("k", k as i64).with("g", g as i64);
    let opt = |v: Option<bool>| v.map_or(serde_json::Value::Null, serde_json::Value::Bool);
    Ok(VerificationRecord::new(
        "pairs_compare",
        p.get(),
        params,
        c.bounds.h_classic as i64,
        c.bounds.h_new as i64,
        c.literal_claims_hold(),
    )
    .detail("h_new_raw", c.bounds.h_new_raw)
    .detail("weak_claim", opt(c.weak_claim))
    .detail("strong_claim", opt(c.strong_claim))
    .detail("corrected_claim", opt(c.corrected_claim)))
}

pub fn two_squares(p: PrimeModulus) -> Result<VerificationRecord, ForgeError> {
    let params = Params::new();
    match sum_two_squares(p) {
        Ok((x, y)) => {
            let n = (x * x + y * y) as i64;
            Ok(VerificationRecord::new("two_squares", p.get(), params, p.get() as i64, n, n == p.get() as i64)
                .witness(format!("({x},{y})")))
        }
        Err(e) => violation("two_squares", p, params, e),
    }
}

pub fn direction(s: &PointSet, alpha: FieldElement) -> Result<VerificationRecord, ForgeError> {
    let b = verify_direction_bound(s, alpha)?;
    let params = Params::new().with("n", s.len() as i64).with("alpha", alpha.value());
    let ratios = ratio_set(s)?;
    Ok(VerificationRecord::new(
        "directions",
        s.modulus().get(),
        params,
        b.claimed,
        b.q_size as i64,
        b.passed,
    )
    .witness(format!("Q={}", fmt_set(values(&ratios.q))))
    .detail("delta", values(&weighted_sumset(s, alpha)))
    .detail("infinite_direction", ratios.has_infinite_direction))
}

/// Every nonzero `α`, or only the given one.
pub fn directions(s: &PointSet, alpha: Option<u64>) -> Result<Vec<VerificationRecord>, ForgeError> {
    let p = s.modulus();
    match alpha {
        Some(a) => Ok(vec![direction(s, p.element(a))?]),
        None => p.units().map(|a| direction(s, a)).collect(),
    }
}

/// The line through `(t, m t)` with `α = -m`: rejected, and the raw inequality fails.
pub fn collinear_family(p: PrimeModulus, n: u64) -> Result<VerificationRecord, ForgeError> {
    let mut rejected = 0i64;
    let mut raw_failures = 0i64;
    for m in p.units() {
        let s = PointSet::from_elements(p, (0..n).map(|t| (p.element(t), m * p.element(t))))?;
        debug_assert!(is_collinear(&s).is_some());
        if matches!(verify_direction_bound(&s, -m), Err(Error::CollinearInput)) {
            rejected += 1;
        }
        if !raw_direction_inequality(&s, -m)?.passed {
            raw_failures += 1;
        }
    }
    let family = p.get() as i64 - 1;
    Ok(VerificationRecord::new(
        "collinear_guard",
        p.get(),
        Params::new().with("n", n as i64),
        family,
        rejected,
        rejected == family && raw_failures == family,
    )
    .detail("raw_failures", raw_failures))
}

pub fn hp_check(p: PrimeModulus, a: &BTreeSet<FieldElement>, d: u64) -> Result<VerificationRecord, ForgeError> {
    let z = subgroup(p, d)?;
    let inside = a.iter().all(|&x| a.iter().all(|&y| x == y || z.contains(x - y)));
    let n = a.len() as i64;
    let observed = n * (n - 1).max(0);
    Ok(VerificationRecord::new(
        "hp",
        p.get(),
        Params::new().with("d", d as i64),
        d as i64,
        observed,
        !inside || observed <= d as i64,
    )
    .witness(format!("A={}", fmt_set(values(a))))
    .detail("differences_in_subgroup", inside))
}

/// Largest `A` with `A - A ⊆ Z_d ∪ {0}` against `|A|(|A|-1) <= d`.
pub fn corollary(p: PrimeModulus, d: u64) -> Result<VerificationRecord, ForgeError> {
    let found = max_difference_clique(p, d, DEFAULT_SEARCH_BUDGET)?;
    let n = found.max_size as i64;
    Ok(VerificationRecord::new(
        "corollary",
        p.get(),
        Params::new().with("d", d as i64),
        d as i64,
        n * (n - 1),
        n * (n - 1) <= d as i64,
    )
    .witness(format!("A={}", fmt_set(found.witness.iter().map(|e| e.value()))))
    .detail("nodes", found.nodes))
}

pub fn remark2(p: PrimeModulus, alpha: u32) -> Result<VerificationRecord, ForgeError> {
    let params = Params::new().with("alpha", alpha);
    let expected = 2 * coprime_pairs_by_totient(alpha as u64) as i64;
    match coprime_ratio_count(p, alpha) {
        Ok(c) => Ok(VerificationRecord::new(
            "remark2",
            p.get(),
            params,
            expected,
            c.distinct_a_count as i64,
            c.distinct_a_count as i64 == expected && c.coprime_pair_count as i64 * 2 == expected,
        )
        .detail("coprime_pairs", c.coprime_pair_count)
        .detail("ratio", c.distinct_a_count as f64 / (alpha as f64 * alpha as f64))),
        Err(e) => violation("remark2", p, params, e),
    }
}
