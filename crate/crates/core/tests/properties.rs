use std::collections::HashSet;
use std::sync::Arc;

use proptest::prelude::*;

use ietkit::exact::{Basis, ExactScalar, PrecisionContext, Rational};
use ietkit::partition::{level_partition, Refiner};
use ietkit::symbolic::{enumerate_asymptotic_pairs, itinerary, keane_check, language, PairKind};
use ietkit::{Error, Iet, IetSpec, Limits, Permutation, Variant};

fn basis() -> Arc<Basis> {
    Arc::new(Basis::from_radicands([2, 3, 5].map(Rational::from)).unwrap())
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

/// `r + a (sqrt2 - 141/100) + b (sqrt3 - 173/100) + c (sqrt5 - 223/100)`,
/// within 0.05 of `r` for `|a|, |b|, |c| <= 4`.
fn perturbed(basis: &Arc<Basis>, r: Rational, (a, b, c): (i64, i64, i64)) -> ExactScalar {
    let c0 = r
        .sub(&q(141 * a, 100))
        .sub(&q(173 * b, 100))
        .sub(&q(223 * c, 100));
    ExactScalar::new(basis.clone(), vec![c0, Rational::from(a), Rational::from(b), Rational::from(c)]).unwrap()
}

fn arb_iet() -> impl Strategy<Value = Iet> {
    (2usize..=4)
        .prop_flat_map(|n| {
            (
                Just((1..=n).collect::<Vec<_>>()).prop_shuffle(),
                prop::collection::vec(((-4i64..=4, -4i64..=4, -4i64..=4), -10i64..=10), n - 1),
            )
        })
        .prop_map(|(image, cuts)| {
            let basis = basis();
            let n = image.len() as i64;
            let mut points = vec![ExactScalar::zero(basis.clone())];
            for (i, (pert, jitter)) in cuts.into_iter().enumerate() {
                // cut i sits near (i+1)/n, well inside its slot
                let r = q(100 * (i as i64 + 1) + jitter, 100 * n);
                points.push(perturbed(&basis, r, pert));
            }
            points.push(ExactScalar::one(basis.clone()));
            let lengths = points.windows(2).map(|w| &w[1] - &w[0]).collect();
            Iet::build(IetSpec { basis, lengths, permutation: Permutation::new(image).unwrap() }).unwrap()
        })
}

/// A rational point of `[0,1)` with a small denominator.
fn arb_unit_rational() -> impl Strategy<Value = Rational> {
    (1i64..=97).prop_flat_map(|d| (0..d).prop_map(move |n| q(n, d)))
}

fn arb_scalar() -> impl Strategy<Value = ExactScalar> {
    prop::collection::vec((-50i64..=50, 1i64..=20), 4).prop_map(|cs| {
        let coeffs = cs.into_iter().map(|(n, d)| q(n, d)).collect();
        ExactScalar::new(basis(), coeffs).unwrap()
    })
}

fn at(iet: &Iet, r: &Rational) -> ExactScalar {
    ExactScalar::rational(iet.basis().clone(), r.clone())
}

fn singular(iet: &Iet, x: &ExactScalar) -> bool {
    x.is_zero() || iet.interior_breakpoints().contains(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trichotomy_and_exactness(a in arb_scalar(), b in arb_scalar()) {
        let ctx = PrecisionContext::default();
        let ab = a.compare(&b, &ctx).unwrap();
        prop_assert_eq!(ab, b.compare(&a, &ctx).unwrap().reverse());
        prop_assert_eq!(ab.is_eq(), a == b);
        prop_assert_eq!(i8::try_from(ab as i32).unwrap(), (&a - &b).sign(&ctx).unwrap());
        let back = &(&a + &b) - &b;
        prop_assert_eq!(back.coeffs(), a.coeffs());
    }

    #[test]
    fn zero_rule(a in arb_scalar()) {
        let ctx = PrecisionContext::default();
        let zero = &a - &a;
        prop_assert_eq!(zero.sign(&ctx).unwrap(), 0);
        prop_assert_eq!(a.sign(&ctx).unwrap() == 0, a.coeffs().iter().all(Rational::is_zero));
    }

    #[test]
    fn order_soundness(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        let ctx = PrecisionContext::default();
        let s = (&a - &b).sign(&ctx).unwrap();
        if s != 0 {
            let (lo, hi) = (&a - &b).enclose(256);
            let zero = num_rational::BigRational::from_integer(0.into());
            let separated = if s > 0 { lo > zero } else { hi < zero };
            prop_assert!(separated);
        }
        prop_assert_eq!(a.compare(&b, &ctx).unwrap(), (&a + &c).compare(&(&b + &c), &ctx).unwrap());
        if a.le(&b, &ctx).unwrap() && b.le(&c, &ctx).unwrap() {
            prop_assert!(a.le(&c, &ctx).unwrap());
        }
    }

    #[test]
    fn steps_invert(iet in arb_iet(), r in arb_unit_rational()) {
        let x = at(&iet, &r);
        let y = iet.apply(Variant::T, 1, &x).unwrap();
        prop_assert_eq!(iet.apply(Variant::T, -1, &y).unwrap(), x.clone());
        if !x.is_zero() {
            let y = iet.apply(Variant::Dual, 1, &x).unwrap();
            prop_assert_eq!(iet.apply(Variant::Dual, -1, &y).unwrap(), x);
        }
    }

    #[test]
    fn exactly_one_interval(iet in arb_iet(), r in arb_unit_rational()) {
        let x = at(&iet, &r);
        let ctx = iet.precision();
        let b = iet.breakpoints();
        let hits = (1..=iet.n())
            .filter(|&i| b[i - 1].le(&x, ctx).unwrap() && x.lt(&b[i], ctx).unwrap())
            .collect::<Vec<_>>();
        prop_assert_eq!(hits, vec![iet.symbol(Variant::T, &x).unwrap()]);
    }

    #[test]
    fn image_lengths_are_preserved(iet in arb_iet()) {
        let b = iet.breakpoints();
        let t = iet.translations();
        let bt = iet.image_breakpoints();
        let tau = iet.permutation();
        for i in 1..=iet.n() {
            let img = (&b[i - 1] + &t[i - 1], &b[i] + &t[i - 1]);
            prop_assert_eq!(&img.0, &bt[tau.apply(i) - 1]);
            prop_assert_eq!(&img.1, &bt[tau.apply(i)]);
            prop_assert_eq!(&img.1 - &img.0, &b[i] - &b[i - 1]);
        }
    }

    #[test]
    fn t_and_dual_agree_off_the_breakpoints(iet in arb_iet(), r in arb_unit_rational(), k in 1usize..12) {
        let x = at(&iet, &r);
        prop_assume!(!x.is_zero());
        let mut orbit = vec![x.clone()];
        for _ in 1..k {
            let next = iet.step(Variant::T, orbit.last().unwrap()).unwrap();
            orbit.push(next);
        }
        prop_assume!(!orbit.iter().any(|y| singular(&iet, y)));
        let lim = Limits::default();
        let t = itinerary(&iet, &x, Variant::T, 0, k as i64 - 1, &lim).unwrap();
        let d = itinerary(&iet, &x, Variant::Dual, 0, k as i64 - 1, &lim).unwrap();
        prop_assert_eq!(t.symbols, d.symbols);
        for j in 1..=k as i64 {
            prop_assert_eq!(iet.apply(Variant::T, j, &x).unwrap(), iet.apply(Variant::Dual, j, &x).unwrap());
        }
    }

    #[test]
    fn itineraries_commute_with_the_shift(iet in arb_iet(), r in arb_unit_rational()) {
        let lim = Limits::default();
        let x = at(&iet, &r);
        let base = itinerary(&iet, &x, Variant::T, -6, 7, &lim).unwrap();
        let tx = iet.step(Variant::T, &x).unwrap();
        let shifted = itinerary(&iet, &tx, Variant::T, -7, 6, &lim).unwrap();
        for k in -7..=6 {
            prop_assert_eq!(shifted.get(k), base.get(k + 1));
        }
    }

    #[test]
    fn partitions_tile_and_refine(iet in arb_iet(), k in 1usize..8) {
        let lim = Limits::default();
        let mut r = Refiner::new(&iet, lim).unwrap();
        while r.level() < k {
            r.refine().unwrap();
        }
        let coarse = r.partition(Variant::T);
        r.refine().unwrap();
        let fine = r.partition(Variant::T);
        for p in [&coarse, &fine] {
            prop_assert!(p.cells[0].interval.left.is_zero());
            prop_assert_eq!(&p.cells[p.cells.len() - 1].interval.right, iet.one());
            for w in p.cells.windows(2) {
                prop_assert_eq!(&w[0].interval.right, &w[1].interval.left);
            }
            let words: HashSet<&[usize]> = p.words().collect();
            prop_assert_eq!(words.len(), p.cells.len());
        }
        let ctx = iet.precision();
        for cell in &fine.cells {
            let parents: Vec<_> = coarse
                .cells
                .iter()
                .filter(|c| c.interval.left.le(&cell.interval.left, ctx).unwrap()
                    && cell.interval.right.le(&c.interval.right, ctx).unwrap())
                .collect();
            prop_assert_eq!(parents.len(), 1);
            prop_assert_eq!(&cell.word[..k], &parents[0].word[..]);
        }
    }

    #[test]
    fn endpoints_come_from_inverse_images(iet in arb_iet(), k in 1usize..10) {
        let lim = Limits::default();
        for (variant, end) in [(Variant::T, iet.zero().clone()), (Variant::Dual, iet.one().clone())] {
            let mut candidates: HashSet<ExactScalar> = HashSet::from([end]);
            for d in iet.interior_breakpoints() {
                let mut y = d.clone();
                for p in 0..k {
                    if p > 0 {
                        y = iet.step_back(variant, &y).unwrap();
                    }
                    candidates.insert(y.clone());
                }
            }
            let part = level_partition(&iet, k, variant, &lim).unwrap();
            for c in &part.cells {
                let end = match variant {
                    Variant::T => &c.interval.left,
                    Variant::Dual => &c.interval.right,
                };
                prop_assert!(candidates.contains(end), "{} not among candidates", end);
            }
            prop_assert!(part.cells.len() <= k * (iet.n() - 1) + 1);
        }
    }

    #[test]
    fn cell_labels_match_brute_force_itineraries(iet in arb_iet(), k in 1usize..7) {
        let lim = Limits::default();
        let two = q(1, 2);
        for variant in [Variant::T, Variant::Dual] {
            let part = level_partition(&iet, k, variant, &lim).unwrap();
            for c in &part.cells {
                let mid = (&c.interval.left + &c.interval.right).scale(&two);
                let closed = match variant {
                    Variant::T => c.interval.left.clone(),
                    Variant::Dual => c.interval.right.clone(),
                };
                for x in [mid, closed] {
                    let w = itinerary(&iet, &x, variant, 0, k as i64 - 1, &lim).unwrap();
                    prop_assert_eq!(&w.symbols, &c.word);
                    prop_assert_eq!(iet.apply(variant, k as i64, &x).unwrap(), &x + &c.translation);
                }
            }
        }
    }

    #[test]
    fn boundary_equalities_match_the_class(iet in arb_iet()) {
        let class = iet.classification();
        let b = iet.boundary_images().unwrap();
        let split = b.interior.iter().all(|p| p.t_image != p.dual_image);
        prop_assert_eq!(class.split, split);
        prop_assert_eq!(
            class.fully_split,
            split && !b.t_zero_equals_dual_one && !b.t_inv_zero_equals_dual_inv_one
        );
    }

    #[test]
    fn asymptotic_pairs_have_the_predicted_shape(iet in arb_iet()) {
        let lim = Limits::default();
        let n = 40;
        match enumerate_asymptotic_pairs(&iet, n, &lim) {
            Err(Error::Hypothesis(_)) => {
                let keane = keane_check(&iet, n, &lim).unwrap();
                prop_assert!(!iet.classification().irreducible || !keane.holds || !keane.dual_holds);
            }
            Err(e) => prop_assert!(false, "{}", e),
            Ok(pairs) => {
                prop_assert_eq!(pairs.iter().filter(|p| p.kind == PairKind::Negative).count(), iet.n() - 1);
                for p in &pairs {
                    prop_assert!(p.has_expected_structure(), "{:?} at {}: {:?}", p.kind, p.x, p.disagreements);
                }
                if iet.classification().fully_split {
                    // distinct pairs are never doubly asymptotic, but the separating
                    // index can lie past any fixed window, so widen until it shows
                    let separated = |pairs: &[ietkit::symbolic::AsymptoticPairReport]| {
                        pairs
                            .iter()
                            .filter(|p| p.kind == PairKind::Positive)
                            .all(|p| p.disagreements.iter().any(|&k| k < -2))
                    };
                    let mut found = separated(&pairs);
                    for depth in [160, 640] {
                        if found {
                            break;
                        }
                        found = separated(&enumerate_asymptotic_pairs(&iet, depth, &lim).unwrap());
                    }
                    prop_assert!(found, "lengths {:?}: a positive pair agrees on [-640, -3]", iet.spec().lengths);
                }
            }
        }
    }

    #[test]
    fn language_grows_linearly_under_keane(iet in arb_iet(), k in 1usize..12) {
        let lim = Limits::default();
        let a = language(&iet, k, &lim).unwrap();
        let b = language(&iet, k + 1, &lim).unwrap();
        prop_assert!(a.words.len() <= b.words.len());
        if b.keane_verified {
            prop_assert_eq!(a.words.len(), k * (iet.n() - 1) + 1);
            prop_assert_eq!(b.words.len(), (k + 1) * (iet.n() - 1) + 1);
        }
        let dual = level_partition(&iet, k, Variant::Dual, &lim).unwrap();
        if a.keane_verified {
            let dual_words: HashSet<Vec<usize>> = dual.words().map(<[usize]>::to_vec).collect();
            prop_assert_eq!(dual_words, a.words.into_iter().collect::<HashSet<_>>());
        }
    }
}

fn example(name: &str) -> Iet {
    let path = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join(name);
    Iet::build(ietkit::cli::load_spec(&path).unwrap().spec).unwrap()
}

#[test]
fn keane_scans_agree_on_the_examples() {
    let lim = Limits::default();
    for name in ["e1.iet", "e2.iet", "e3.iet", "e4.iet", "identity.iet"] {
        let r = keane_check(&example(name), 300, &lim).unwrap();
        assert!(r.directions_agree(), "{name}: {r:?}");
    }
}

#[test]
fn distinct_points_have_distinct_itineraries() {
    let iet = example("e3.iet");
    let lim = Limits::default();
    let points: Vec<ExactScalar> = (1..20).map(|n| at(&iet, &q(n, 20))).chain((1..7).map(|n| at(&iet, &q(n, 7)))).collect();
    let words: Vec<Vec<usize>> = points
        .iter()
        .map(|x| itinerary(&iet, x, Variant::T, 0, 2000, &lim).unwrap().symbols)
        .collect();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            assert_ne!(words[i], words[j], "{} and {}", points[i], points[j]);
        }
    }
}
