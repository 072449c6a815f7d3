//! Itineraries, Keane-condition scans and the asymptotic pairs of the
//! subshift generated by an interval exchange transformation.
//!
//! Asymptotic notions quantify over infinite time. Everything here works on a
//! finite window `[-N, N]`: a pair of windows is evidence of positive
//! asymptoticity at margin `M` when it has no disagreement in `[M, N]`, of
//! negative asymptoticity when none in `[-N, -M]`.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::exact::ExactScalar;
use crate::exec;
use crate::iet::{Iet, PermutationClass, Variant};
use crate::limits::{Budget, Limits};
use crate::partition::level_partition;
use crate::{Error, Result};

/// Symbols `lo..=hi` of the itinerary of `base_point` under `T` or its dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItineraryWindow {
    pub base_point: ExactScalar,
    pub variant: Variant,
    pub lo: i64,
    pub hi: i64,
    pub symbols: Vec<usize>,
}

impl ItineraryWindow {
    pub fn get(&self, k: i64) -> Option<usize> {
        if k < self.lo || k > self.hi {
            return None;
        }
        Some(self.symbols[(k - self.lo) as usize])
    }

    /// `(index, symbol)` pairs in index order.
    pub fn indexed(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        (self.lo..=self.hi).zip(self.symbols.iter().copied())
    }
}

pub fn itinerary(iet: &Iet, x: &ExactScalar, variant: Variant, lo: i64, hi: i64, limits: &Limits) -> Result<ItineraryWindow> {
    itinerary_budgeted(iet, x, variant, lo, hi, &limits.budget(), limits)
}

fn itinerary_budgeted(
    iet: &Iet,
    x: &ExactScalar,
    variant: Variant,
    lo: i64,
    hi: i64,
    budget: &Budget,
    limits: &Limits,
) -> Result<ItineraryWindow> {
    if lo > 0 || hi < 0 {
        return Err(Error::Invalid(format!("window {lo}:{hi} must contain 0")));
    }
    let forward = || -> Result<Vec<usize>> {
        let mut y = x.clone();
        let mut out = Vec::with_capacity(hi as usize + 1);
        for k in 0..=hi {
            out.push(iet.symbol(variant, &y)?);
            if k < hi {
                budget.charge(1, "itinerary")?;
                y = iet.step(variant, &y)?;
            }
        }
        Ok(out)
    };
    let backward = || -> Result<Vec<usize>> {
        let mut y = x.clone();
        let mut out = Vec::with_capacity(lo.unsigned_abs() as usize);
        for _ in 0..lo.unsigned_abs() {
            budget.charge(1, "itinerary")?;
            y = iet.step_back(variant, &y)?;
            out.push(iet.symbol(variant, &y)?);
        }
        out.reverse();
        Ok(out)
    };
    let (fwd, bwd) = exec::join(limits.execution, forward, backward);
    let mut symbols = bwd?;
    symbols.extend(fwd?);
    Ok(ItineraryWindow { base_point: x.clone(), variant, lo, hi, symbols })
}

/// A breakpoint whose forward orbit returns to the breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeaneViolation {
    pub d: ExactScalar,
    pub k: usize,
    pub hit: ExactScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeaneReport {
    pub depth: usize,
    /// no `T^k(d)` lands in `D` for `1 <= k <= depth`
    pub holds: bool,
    pub violation: Option<KeaneViolation>,
    /// same scan for the dual map
    pub dual_holds: bool,
    pub dual_violation: Option<KeaneViolation>,
}

impl KeaneReport {
    /// Both scans reach the same verdict.
    pub fn directions_agree(&self) -> bool {
        self.holds == self.dual_holds
    }
}

/// Iterates every breakpoint `depth` times under `T` and, independently, under
/// the dual, testing each iterate for membership in `D` exactly.
pub fn keane_check(iet: &Iet, depth: usize, limits: &Limits) -> Result<KeaneReport> {
    if depth == 0 {
        return Err(Error::Invalid("Keane depth must be at least 1".into()));
    }
    let budget = limits.budget();
    let (t, dual) = exec::join(
        limits.execution,
        || keane_scan(iet, Variant::T, depth, &budget, limits),
        || keane_scan(iet, Variant::Dual, depth, &budget, limits),
    );
    let (violation, dual_violation) = (t?, dual?);
    Ok(KeaneReport {
        depth,
        holds: violation.is_none(),
        dual_holds: dual_violation.is_none(),
        violation,
        dual_violation,
    })
}

fn keane_scan(iet: &Iet, variant: Variant, depth: usize, budget: &Budget, limits: &Limits) -> Result<Option<KeaneViolation>> {
    let breakpoints = iet.interior_breakpoints();
    let members: HashSet<&ExactScalar> = breakpoints.iter().collect();
    let hits = exec::map(limits.execution, breakpoints, |d| -> Result<Option<KeaneViolation>> {
        let mut y = d.clone();
        for k in 1..=depth {
            budget.charge(1, "Keane scan")?;
            y = iet.step(variant, &y)?;
            if members.contains(&y) {
                return Ok(Some(KeaneViolation { d: d.clone(), k, hit: y }));
            }
        }
        Ok(None)
    });
    let mut first: Option<KeaneViolation> = None;
    for hit in hits {
        if let Some(v) = hit? {
            if first.as_ref().is_none_or(|f| v.k < f.k) {
                first = Some(v);
            }
        }
    }
    Ok(first)
}

/// Indices where the two windows carry different symbols.
pub fn disagreements(alpha: &ItineraryWindow, beta: &ItineraryWindow) -> Result<Vec<i64>> {
    if alpha.lo != beta.lo || alpha.hi != beta.hi {
        return Err(Error::Invalid(format!(
            "window mismatch: {}:{} vs {}:{}",
            alpha.lo, alpha.hi, beta.lo, beta.hi
        )));
    }
    Ok(alpha
        .indexed()
        .zip(beta.symbols.iter())
        .filter(|((_, a), b)| a != *b)
        .map(|((k, _), _)| k)
        .collect())
}

/// Finite-window evidence flags for a pair of itineraries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairClass {
    pub distinct: bool,
    /// no disagreement in `[margin, N]`
    pub positive_evidence: bool,
    /// no disagreement in `[-N, -margin]`
    pub negative_evidence: bool,
    pub doubly_evidence: bool,
    pub margin: usize,
}

impl PairClass {
    fn from_disagreements(delta: &[i64], n: i64, margin: usize) -> Self {
        let m = margin as i64;
        let positive_evidence = !delta.iter().any(|&k| (m..=n).contains(&k));
        let negative_evidence = !delta.iter().any(|&k| (-n..=-m).contains(&k));
        PairClass {
            distinct: !delta.is_empty(),
            positive_evidence,
            negative_evidence,
            doubly_evidence: positive_evidence && negative_evidence,
            margin,
        }
    }
}

/// Classifies two windows over the same symmetric range `[-N, N]`.
pub fn classify_pair(alpha: &ItineraryWindow, beta: &ItineraryWindow, margin: usize) -> Result<PairClass> {
    let delta = disagreements(alpha, beta)?;
    if alpha.lo != -alpha.hi {
        return Err(Error::Invalid(format!("window {}:{} is not symmetric", alpha.lo, alpha.hi)));
    }
    if margin as i64 > alpha.hi {
        return Err(Error::Invalid(format!("margin {margin} exceeds window half-width {}", alpha.hi)));
    }
    Ok(PairClass::from_disagreements(&delta, alpha.hi, margin))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    /// anchored at a point of `T({0} u D) \ {0}`
    Positive,
    /// anchored at a breakpoint
    Negative,
}

/// The pair `(I(x), dual I(x))` on the window `[-N, N]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticPairReport {
    pub x: ExactScalar,
    pub kind: PairKind,
    pub depth: usize,
    pub disagreements: Vec<i64>,
    pub classification: PairClass,
    pub itinerary: ItineraryWindow,
    pub dual_itinerary: ItineraryWindow,
}

impl AsymptoticPairReport {
    /// Positive pairs disagree at -1 and nowhere in `[0, N]`; negative pairs
    /// disagree at 0 and nowhere in `[-N, -1]`.
    pub fn has_expected_structure(&self) -> bool {
        let n = self.depth as i64;
        match self.kind {
            PairKind::Positive => {
                self.disagreements.contains(&-1) && !self.disagreements.iter().any(|k| (0..=n).contains(k))
            }
            PairKind::Negative => {
                self.disagreements.contains(&0) && !self.disagreements.iter().any(|k| (-n..=-1).contains(k))
            }
        }
    }
}

fn require_pair_hypotheses(iet: &Iet, depth: usize, limits: &Limits) -> Result<()> {
    if !iet.classification().irreducible {
        return Err(Error::Hypothesis(format!("permutation {:?} is reducible", iet.permutation().image())));
    }
    let keane = keane_check(iet, depth, limits)?;
    for (name, v) in [("T", &keane.violation), ("dual", &keane.dual_violation)] {
        if let Some(v) = v {
            return Err(Error::Hypothesis(format!(
                "Keane condition fails for {name}: iterate {} of {} is the breakpoint {}",
                v.k, v.d, v.hit
            )));
        }
    }
    Ok(())
}

/// Points whose itinerary pair is canonical: `T({0} u D) \ {0}` for positive
/// pairs, `D` for negative pairs; each sorted increasingly.
pub fn pair_anchors(iet: &Iet, limits: &Limits) -> Result<(Vec<ExactScalar>, Vec<ExactScalar>)> {
    let mut positive = Vec::with_capacity(iet.n());
    for p in std::iter::once(iet.zero()).chain(iet.interior_breakpoints()) {
        let y = iet.step(Variant::T, p)?;
        if !y.is_zero() && !positive.contains(&y) {
            positive.push(y);
        }
    }
    sort_points(iet, &mut positive, limits)?;
    Ok((positive, iet.interior_breakpoints().to_vec()))
}

/// All canonical asymptotic pairs, each with both itineraries on `[-depth, depth]`.
///
/// Requires an irreducible permutation and the Keane condition (both
/// directions) up to `depth`; otherwise the characterization does not apply
/// and a [`Error::Hypothesis`] is returned.
pub fn enumerate_asymptotic_pairs(iet: &Iet, depth: usize, limits: &Limits) -> Result<Vec<AsymptoticPairReport>> {
    enumerate_asymptotic_pairs_with_margin(iet, depth, depth / 2, limits)
}

/// As [`enumerate_asymptotic_pairs`] with an explicit evidence margin.
pub fn enumerate_asymptotic_pairs_with_margin(iet: &Iet, depth: usize, margin: usize, limits: &Limits) -> Result<Vec<AsymptoticPairReport>> {
    if margin > depth {
        return Err(Error::Invalid(format!("margin {margin} exceeds depth {depth}")));
    }
    require_pair_hypotheses(iet, depth, limits)?;
    let (positive, negative) = pair_anchors(iet, limits)?;
    let anchors: Vec<(PairKind, ExactScalar)> = positive
        .into_iter()
        .map(|x| (PairKind::Positive, x))
        .chain(negative.into_iter().map(|x| (PairKind::Negative, x)))
        .collect();
    let budget = limits.budget();
    let n = depth as i64;
    exec::map(limits.execution, &anchors, |(kind, x)| -> Result<AsymptoticPairReport> {
        let itinerary = itinerary_budgeted(iet, x, Variant::T, -n, n, &budget, limits)?;
        let dual_itinerary = itinerary_budgeted(iet, x, Variant::Dual, -n, n, &budget, limits)?;
        let disagreements = disagreements(&itinerary, &dual_itinerary)?;
        let classification = PairClass::from_disagreements(&disagreements, n, margin);
        Ok(AsymptoticPairReport {
            x: x.clone(),
            kind: *kind,
            depth,
            disagreements,
            classification,
            itinerary,
            dual_itinerary,
        })
    })
    .into_iter()
    .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DoublyExpectation {
    /// fully split: no distinct pair is doubly asymptotic
    NoDoubly,
    /// not split: some distinct pair is doubly asymptotic
    SomeDoubly,
    /// split but not fully split: no general prediction
    Unconstrained,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub kind: PairKind,
    pub x: ExactScalar,
    pub disagreements: Vec<i64>,
    pub doubly_evidence: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublyScan {
    pub depth: usize,
    pub margin: usize,
    pub class: PermutationClass,
    pub pairs: Vec<ScanEntry>,
    pub doubly_count: usize,
    pub expectation: DoublyExpectation,
    /// the observed count matches the expectation
    pub consistent: bool,
}

/// Classifies every canonical pair at `margin` and compares the number of
/// doubly-asymptotic candidates with what the permutation class predicts.
pub fn doubly_asymptotic_scan(iet: &Iet, depth: usize, margin: usize, limits: &Limits) -> Result<DoublyScan> {
    let reports = enumerate_asymptotic_pairs_with_margin(iet, depth, margin, limits)?;
    let class = iet.classification();
    let pairs: Vec<ScanEntry> = reports
        .into_iter()
        .map(|r| ScanEntry {
            kind: r.kind,
            x: r.x,
            doubly_evidence: r.classification.doubly_evidence,
            disagreements: r.disagreements,
        })
        .collect();
    let doubly_count = pairs.iter().filter(|p| p.doubly_evidence).count();
    let expectation = if class.fully_split {
        DoublyExpectation::NoDoubly
    } else if !class.split {
        DoublyExpectation::SomeDoubly
    } else {
        DoublyExpectation::Unconstrained
    };
    let consistent = match expectation {
        DoublyExpectation::NoDoubly => doubly_count == 0,
        DoublyExpectation::SomeDoubly => doubly_count > 0,
        DoublyExpectation::Unconstrained => true,
    };
    Ok(DoublyScan { depth, margin, class, pairs, doubly_count, expectation, consistent })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageSample {
    pub word_length: usize,
    pub words: BTreeSet<Vec<usize>>,
    /// the Keane condition held in both directions up to `word_length`, so
    /// these are exactly the length-`word_length` factors of regular itineraries
    pub keane_verified: bool,
}

/// Words of length `word_length` read off the level partition of `T`.
pub fn language(iet: &Iet, word_length: usize, limits: &Limits) -> Result<LanguageSample> {
    let keane = keane_check(iet, word_length, limits)?;
    let partition = level_partition(iet, word_length, Variant::T, limits)?;
    Ok(LanguageSample {
        word_length,
        words: partition.words().map(<[usize]>::to_vec).collect(),
        keane_verified: keane.holds && keane.dual_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitHit {
    pub k: i64,
    pub hit: ExactScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityProbe {
    pub depth: usize,
    /// the orbit avoided `{0, 1} u D` for `|k| <= depth`
    pub regular: bool,
    pub witness: Option<OrbitHit>,
}

/// Tests `T^k x` for `|k| <= depth` against `{0, 1} u D`, nearest `k` first
/// and forward before backward.
pub fn regularity_probe(iet: &Iet, x: &ExactScalar, depth: usize, limits: &Limits) -> Result<RegularityProbe> {
    let ctx = iet.precision();
    if !(iet.zero().le(x, ctx)? && x.le(iet.one(), ctx)?) {
        return Err(Error::Domain(format!("{x} not in [0,1]")));
    }
    let budget = limits.budget();
    let singular = |y: &ExactScalar| y.is_zero() || y == iet.one() || iet.interior_breakpoints().contains(y);
    let hit = |k: i64, y: &ExactScalar| RegularityProbe {
        depth,
        regular: false,
        witness: Some(OrbitHit { k, hit: y.clone() }),
    };
    if singular(x) {
        return Ok(hit(0, x));
    }
    let (mut fwd, mut bwd) = (x.clone(), x.clone());
    for k in 1..=depth as i64 {
        budget.charge(2, "regularity probe")?;
        fwd = iet.step(Variant::T, &fwd)?;
        if singular(&fwd) {
            return Ok(hit(k, &fwd));
        }
        bwd = iet.step_back(Variant::T, &bwd)?;
        if singular(&bwd) {
            return Ok(hit(-k, &bwd));
        }
    }
    Ok(RegularityProbe { depth, regular: true, witness: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapStats {
    /// number of distinct points among `T^k x`, `0 <= k < N`
    pub distinct_points: usize,
    pub max_gap: ExactScalar,
    pub min_gap: ExactScalar,
}

/// Largest and smallest gaps between consecutive orbit points on the circle `[0,1)`.
pub fn orbit_gap_stats(iet: &Iet, x: &ExactScalar, n: usize, limits: &Limits) -> Result<GapStats> {
    if n == 0 {
        return Err(Error::Invalid("orbit length must be at least 1".into()));
    }
    iet.symbol(Variant::T, x)?;
    let budget = limits.budget();
    let mut orbit = Vec::with_capacity(n);
    let mut y = x.clone();
    for k in 0..n {
        if k > 0 {
            budget.charge(1, "orbit gaps")?;
            y = iet.step(Variant::T, &y)?;
        }
        orbit.push(y.clone());
    }
    sort_points(iet, &mut orbit, limits)?;
    orbit.dedup();
    let mut gaps: Vec<ExactScalar> = orbit.windows(2).map(|w| &w[1] - &w[0]).collect();
    let wrap = &(iet.one() - &orbit[orbit.len() - 1]) + &orbit[0];
    gaps.push(wrap);
    let (mut max_gap, mut min_gap) = (gaps[0].clone(), gaps[0].clone());
    for g in &gaps[1..] {
        if iet.compare(g, &max_gap)?.is_gt() {
            max_gap = g.clone();
        }
        if iet.compare(g, &min_gap)?.is_lt() {
            min_gap = g.clone();
        }
    }
    Ok(GapStats { distinct_points: orbit.len(), max_gap, min_gap })
}

/// Sorts exact points increasingly; the first failed comparison is returned.
pub(crate) fn sort_points(iet: &Iet, points: &mut [ExactScalar], limits: &Limits) -> Result<()> {
    let failure = std::sync::Mutex::new(None);
    exec::sort_by(limits.execution, points, |a, b| match iet.compare(a, b) {
        Ok(o) => o,
        Err(e) => {
            failure.lock().expect("poisoned").get_or_insert(e);
            std::cmp::Ordering::Equal
        }
    });
    match failure.into_inner().expect("poisoned") {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_scalar, Basis, Rational};
    use crate::iet::{IetSpec, Permutation};
    use std::sync::Arc;

    fn iet(radicands: &[i64], lengths: &[&str], image: &[usize]) -> Iet {
        let basis = Arc::new(Basis::from_radicands(radicands.iter().map(|&r| Rational::from(r))).unwrap());
        let lengths = lengths.iter().map(|s| parse_scalar(s, &basis).unwrap()).collect();
        Iet::build(IetSpec { basis, lengths, permutation: Permutation::new(image.to_vec()).unwrap() }).unwrap()
    }

    const E3_LENGTHS: [&str; 3] = ["-1 + 1*sqrt(2)", "-3/2 + 1*sqrt(3)", "7/2 - 1*sqrt(2) - 1*sqrt(3)"];

    fn e1() -> Iet {
        iet(&[2], &["-1 + 1*sqrt(2)", "2 - 1*sqrt(2)"], &[2, 1])
    }
    fn e2() -> Iet {
        iet(&[], &["1/2", "1/2"], &[2, 1])
    }
    fn e3() -> Iet {
        iet(&[2, 3], &E3_LENGTHS, &[3, 2, 1])
    }
    fn e4() -> Iet {
        iet(&[2, 3], &E3_LENGTHS, &[2, 3, 1])
    }
    fn identity() -> Iet {
        iet(&[], &["1/2", "1/2"], &[1, 2])
    }

    fn pt(t: &Iet, s: &str) -> ExactScalar {
        parse_scalar(s, t.basis()).unwrap()
    }

    #[test]
    fn itinerary_examples() {
        let t = e1();
        let lim = Limits::default();
        let b1 = t.breakpoints()[1].clone();
        assert_eq!(itinerary(&t, &b1, Variant::T, -2, 2, &lim).unwrap().symbols, [1, 2, 2, 1, 2]);
        assert_eq!(itinerary(&t, &b1, Variant::Dual, -2, 2, &lim).unwrap().symbols, [1, 2, 1, 2, 2]);
        let id = identity();
        let w = itinerary(&id, &pt(&id, "3/4"), Variant::T, -4, 3, &lim).unwrap();
        assert!(w.symbols.iter().all(|&s| s == 2));
        assert_eq!(w.get(-4), Some(2));
        assert_eq!(w.get(4), None);
        assert!(itinerary(&t, &b1, Variant::T, 1, 2, &lim).is_err());
        assert!(itinerary(&t, t.one(), Variant::T, -1, 1, &lim).is_err());
    }

    #[test]
    fn keane_examples() {
        let lim = Limits::default();
        let r = keane_check(&e2(), 5, &lim).unwrap();
        let v = r.violation.unwrap();
        assert_eq!((v.d.to_string(), v.k, v.hit.to_string()), ("1/2".into(), 2, "1/2".into()));
        assert!(!r.dual_holds);
        let r = keane_check(&e3(), 1000, &lim).unwrap();
        assert!(r.holds && r.dual_holds);
        let r = keane_check(&identity(), 1, &lim).unwrap();
        assert_eq!(r.violation.unwrap().k, 1);
        assert!(keane_check(&e3(), 0, &lim).is_err());
    }

    #[test]
    fn rotation_pairs() {
        let t = e1();
        let pairs = enumerate_asymptotic_pairs(&t, 50, &Limits::default()).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!((pairs[0].kind, pairs[0].x.to_string()), (PairKind::Positive, "2 - 1*sqrt(2)".into()));
        assert_eq!((pairs[1].kind, pairs[1].x.to_string()), (PairKind::Negative, "-1 + 1*sqrt(2)".into()));
        assert_eq!(pairs[0].disagreements, [-2, -1]);
        assert_eq!(pairs[1].disagreements, [0, 1]);
        assert!(pairs.iter().all(AsymptoticPairReport::has_expected_structure));
    }

    #[test]
    fn pairs_refuse_without_hypotheses() {
        let lim = Limits::default();
        assert!(matches!(enumerate_asymptotic_pairs(&e2(), 10, &lim), Err(Error::Hypothesis(_))));
        assert!(matches!(enumerate_asymptotic_pairs(&identity(), 10, &lim), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn pair_classification() {
        let t = e1();
        let lim = Limits::default();
        let b1 = t.breakpoints()[1].clone();
        let a = itinerary(&t, &b1, Variant::T, -10, 10, &lim).unwrap();
        let b = itinerary(&t, &b1, Variant::Dual, -10, 10, &lim).unwrap();
        assert_eq!(disagreements(&a, &b).unwrap(), [0, 1]);
        let at1 = classify_pair(&a, &b, 1).unwrap();
        assert!(at1.distinct && !at1.positive_evidence && at1.negative_evidence);
        let at0 = classify_pair(&a, &b, 0).unwrap();
        assert!(!at0.positive_evidence && !at0.negative_evidence);
        let at2 = classify_pair(&a, &b, 2).unwrap();
        assert!(at2.positive_evidence && at2.negative_evidence && at2.doubly_evidence);
        let same = classify_pair(&a, &a, 3).unwrap();
        assert!(!same.distinct && same.doubly_evidence);
        let short = itinerary(&t, &b1, Variant::T, -5, 5, &lim).unwrap();
        assert!(classify_pair(&a, &short, 1).is_err());
        assert!(classify_pair(&a, &b, 11).is_err());
    }

    #[test]
    fn three_cycle_pairs_are_doubly_asymptotic() {
        let t = e4();
        let scan = doubly_asymptotic_scan(&t, 50, 3, &Limits::default()).unwrap();
        let positive: Vec<_> = scan.pairs.iter().filter(|p| p.kind == PairKind::Positive).collect();
        assert_eq!(positive.len(), 2);
        // T0 = dual T1 and T^-1 0 = dual T^-1 1 = b2, so the pair at T0 also splits at -2
        assert_eq!(positive[0].x, t.step(Variant::T, t.zero()).unwrap());
        assert_eq!(positive[0].disagreements, [-2, -1]);
        assert_eq!(positive[1].x, t.step(Variant::T, &t.breakpoints()[1]).unwrap());
        assert_eq!(positive[1].disagreements, [-1]);
        assert!(positive.iter().all(|p| p.doubly_evidence));
        assert_eq!(scan.expectation, DoublyExpectation::SomeDoubly);
        assert!(scan.consistent);
    }

    #[test]
    fn language_examples() {
        let lim = Limits::default();
        let l = language(&e1(), 2, &lim).unwrap();
        assert_eq!(l.words.into_iter().collect::<Vec<_>>(), [vec![1, 2], vec![2, 1], vec![2, 2]]);
        let l = language(&e3(), 1, &lim).unwrap();
        assert_eq!(l.words.len(), 3);
        let l = language(&e3(), 2, &lim).unwrap();
        assert_eq!(l.words.len(), 5);
        assert!(l.keane_verified);
        assert!(!language(&e2(), 3, &lim).unwrap().keane_verified);
    }

    #[test]
    fn regularity_examples() {
        let lim = Limits::default();
        let t = e1();
        let r = regularity_probe(&t, t.zero(), 10, &lim).unwrap();
        assert_eq!(r.witness.unwrap(), OrbitHit { k: 0, hit: t.zero().clone() });
        let b1 = t.breakpoints()[1].clone();
        let r = regularity_probe(&t, &b1, 10, &lim).unwrap();
        assert_eq!(r.witness.unwrap().hit, b1);
        assert!(regularity_probe(&t, &pt(&t, "1/10"), 1000, &lim).unwrap().regular);
        // 2 - sqrt(2) = T(0), so the orbit hits 0 one step back
        let r = regularity_probe(&t, &pt(&t, "2 - 1*sqrt(2)"), 10, &lim).unwrap();
        assert_eq!(r.witness.unwrap().k, -1);
        assert!(regularity_probe(&t, &pt(&t, "3/2"), 10, &lim).is_err());
    }

    #[test]
    fn gap_examples() {
        let lim = Limits::default();
        let t = e2();
        let g = orbit_gap_stats(&t, t.zero(), 2, &lim).unwrap();
        assert_eq!((g.distinct_points, g.max_gap.to_string()), (2, "1/2".into()));
        let g = orbit_gap_stats(&t, t.zero(), 7, &lim).unwrap();
        assert_eq!(g.distinct_points, 2);
        let id = identity();
        let g = orbit_gap_stats(&id, &pt(&id, "1/3"), 10, &lim).unwrap();
        assert_eq!((g.distinct_points, g.max_gap.to_string()), (1, "1".into()));
        let t = e1();
        let g = orbit_gap_stats(&t, &pt(&t, "1/10"), 100, &lim).unwrap();
        assert!(g.max_gap.lt(&pt(&t, "1/20"), t.precision()).unwrap());
    }
}
