//! Library results against brute-force oracles written out here, plus a few
//! hand-derived values.

use num_traits::ToPrimitive;
use proptest::prelude::*;

use semnorm::algebra::generate::{chain, clifford_product, cyclic, powerset, symmetric_inverse};
use semnorm::algebra::{BiElem, BicyclicCarrier, FiniteInverseSemigroup};
use semnorm::clifford_bridge::{norm_from_metric, roundtrip_check};
use semnorm::exact::{q, qi, Q};
use semnorm::fixtures::catalog;
use semnorm::metrics::{d0, d1, d2_squared, validate_ppm};
use semnorm::norms::{induced_p, validate_pseudonorm, BicyclicNorm, GroupNorm, Valuation};
use semnorm::ordermaps::{transform_kunzi, PairMap};

fn carriers() -> Vec<FiniteInverseSemigroup> {
    vec![
        cyclic(3).unwrap(),
        cyclic(4).unwrap(),
        powerset(2).unwrap(),
        chain(3).unwrap(),
        symmetric_inverse(2).unwrap(),
        clifford_product(2, 1).unwrap(),
    ]
}

/// Pseudo-norms on a fixed carrier form a cone: a nonnegative integer
/// combination of the built-in norms on carrier `which` is again one.
fn cone_point(which: usize, weights: &[i64]) -> (FiniteInverseSemigroup, Vec<i64>) {
    let names = ["cyclic(3)/", "cyclic(4)/", "powerset(2)/", "chain(3)/", "sym-inverse(2)/", "clifford(2,1)/"];
    let fs: Vec<_> = catalog().unwrap().into_iter().filter(|f| f.name.starts_with(names[which])).collect();
    let s = fs[0].semigroup.clone();
    let v = (0..s.len())
        .map(|x| {
            fs.iter()
                .zip(weights)
                .map(|(f, w)| {
                    let c = f.valuation.get(x);
                    assert!(c.is_integer());
                    w * c.to_integer().to_i64().unwrap()
                })
                .sum()
        })
        .collect();
    (s, v)
}

fn pm(n: usize, vals: &[i64]) -> PairMap {
    PairMap::from_fn(n, |x, y| qi(vals[x * n + y]))
}

fn naive_submodular(p: &PairMap) -> bool {
    let n = p.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if p.get(x, y) + p.get(z, z) > p.get(x, z) + p.get(z, y) {
                    return false;
                }
            }
        }
    }
    true
}

/// The pseudo-norm axioms, evaluated from `‖x + y*‖` by plain loops.
fn naive_pseudonorm(s: &FiniteInverseSemigroup, v: &[i64]) -> bool {
    let n = s.len();
    let p = |x: usize, y: usize| v[s.add(x, s.inv(y))];
    for x in 0..n {
        for y in 0..n {
            if p(x, y) != p(y, x) || p(x, x) > p(x, y) {
                return false;
            }
            for z in 0..n {
                if p(x, y) + p(z, z) > p(x, z) + p(z, y) {
                    return false;
                }
            }
        }
    }
    s.identity().is_none_or(|e| v[e] == 0)
}

fn naive_inverses(s: &FiniteInverseSemigroup, x: usize) -> Vec<usize> {
    (0..s.len()).filter(|&y| s.add(s.add(x, y), x) == x && s.add(s.add(y, x), y) == y).collect()
}

/// Partial injections of an n-set, counted by enumerating all partial maps.
fn count_partial_bijections(n: u32) -> usize {
    let choices = n as usize + 1;
    (0..choices.pow(n))
        .filter(|&code| {
            let mut seen = vec![false; n as usize];
            let mut c = code;
            for _ in 0..n {
                let image = c % choices;
                c /= choices;
                if image > 0 {
                    if seen[image - 1] {
                        return false;
                    }
                    seen[image - 1] = true;
                }
            }
            true
        })
        .count()
}

#[test]
fn symmetric_inverse_sizes() {
    for n in 1..=3 {
        assert_eq!(symmetric_inverse(n).unwrap().len(), count_partial_bijections(n as u32));
    }
}

#[test]
fn unique_inverses_and_natural_order() {
    for s in carriers() {
        for x in 0..s.len() {
            assert_eq!(naive_inverses(&s, x), vec![s.inv(x)]);
        }
        // x <= y iff y = y + y* + x.
        let leq = s.natural_order();
        for x in 0..s.len() {
            for y in 0..s.len() {
                assert_eq!(leq.holds(x, y), s.add(s.add(y, s.inv(y)), x) == y);
            }
        }
    }
}

#[test]
fn bicyclic_values() {
    let b = BicyclicCarrier::new(1);
    let e = |a: i64, b: i64| BiElem::new(vec![a], vec![b]);
    // (a,b) + (c,d) = (a - b + b∨c, d - c + b∨c).
    assert_eq!(b.add(&e(2, 1), &e(3, 1)), e(4, 1));
    // p((2,1),(1,3)) = ‖(2,1) + (3,1)‖ = |4 - 1|.
    let norm = BicyclicNorm::new(1, GroupNorm::L1);
    let y = e(1, 3);
    assert_eq!(norm.eval(&b.add(&e(2, 1), &b.inv(&y))), 3);
    assert!(b.leq(&e(1, 2), &e(4, 5)));
    assert!(!b.leq(&e(1, 2), &e(4, 4)));
    assert_eq!(b.embed(&[-3]), e(0, 3));
}

#[test]
fn kunzi_arithmetic() {
    let p = PairMap::from_fn(1, |_, _| qi(2));
    assert_eq!(*transform_kunzi(&p, &qi(1)).unwrap().get(0, 0), q(2, 3));
}

#[test]
fn two_chain_intrinsic_metrics() {
    let s = chain(2).unwrap();
    let v = Valuation::new(vec![qi(0), qi(1)]).unwrap();
    let p = induced_p(&s, &v).unwrap();
    assert_eq!(*d1(&p).get(0, 1), q(1, 2));
    assert_eq!(*d0(&p).get(0, 1), qi(1));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn submodularity_matches_brute_force(n in 1usize..=4, vals in prop::collection::vec(-3i64..=5, 16)) {
        let p = pm(n, &vals);
        prop_assert_eq!(p.is_submodular_bool(), naive_submodular(&p));
    }

    #[test]
    fn pseudonorm_axioms_match_brute_force(which in 0usize..6, vals in prop::collection::vec(0i64..=3, 8)) {
        let s = &carriers()[which];
        let v: Vec<i64> = (0..s.len()).map(|i| vals[i % vals.len()]).collect();
        let val = Valuation::new(v.iter().map(|&c| qi(c)).collect()).unwrap();
        prop_assert_eq!(validate_pseudonorm(s, &val).unwrap().passed, naive_pseudonorm(s, &v));
    }

    #[test]
    fn intrinsic_metrics_match_formulas(which in 0usize..6, weights in prop::collection::vec(0i64..=3, 4)) {
        let (ref s, v) = cone_point(which, &weights);
        prop_assert!(naive_pseudonorm(s, &v));
        let val = Valuation::new(v.iter().map(|&c| qi(c)).collect()).unwrap();
        let p = induced_p(s, &val).unwrap();
        prop_assert!(validate_ppm(&p).is_ok());
        let (m0, m1, r2) = (d0(&p), d1(&p), d2_squared(&p));
        for x in 0..s.len() {
            for y in 0..s.len() {
                let pxy = qi(v[s.add(x, s.inv(y))]);
                let (wx, wy) = (qi(v[s.delta(x)]), qi(v[s.delta(y)]));
                prop_assert_eq!(m0.get(x, y), &(&pxy - wx.clone().min(wy.clone())));
                prop_assert_eq!(m1.get(x, y), &(&pxy - (&wx + &wy) / qi(2)));
                prop_assert_eq!(r2.get(x, y), &(&pxy * &pxy - &wx * &wy));
            }
        }
    }

    #[test]
    fn roundtrip_recovers_the_norm(which in 0usize..6, weights in prop::collection::vec(0i64..=3, 4)) {
        // sym-inverse(2) is the one non-Clifford carrier.
        let which = if which == 4 { 5 } else { which };
        let (ref s, v) = cone_point(which, &weights);
        prop_assert!(s.is_clifford());
        let zero = s.identity().unwrap();
        prop_assert_eq!(v[zero], 0);
        prop_assert!(naive_pseudonorm(s, &v));
        let val = Valuation::new(v.iter().map(|&c| qi(c)).collect()).unwrap();
        prop_assert!(roundtrip_check(s, &val).unwrap().passed);
        // d1(x,0) = ‖x‖ - ‖δx‖/2, so v'(x) = d1(x,0) + d1(δx,0) = ‖x‖.
        let m1 = d1(&induced_p(s, &val).unwrap());
        let (v2, _) = norm_from_metric(s, &m1).unwrap();
        for x in 0..s.len() {
            let closed: Q = qi(v[x]) - q(v[s.delta(x)], 2);
            prop_assert_eq!(m1.get(x, zero), &closed);
            prop_assert_eq!(v2.get(x), &qi(v[x]));
        }
    }
}
