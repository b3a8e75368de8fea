//! Seeded generators of instances that are correct by construction, for
//! generate-and-check suites.

use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::exact::{q, qi, Q};
use crate::ordermaps::{ConcavePL, PairMap};

/// A small nonnegative rational with denominator at most 4.
pub fn small_q(rng: &mut impl Rng, max: i64) -> Q {
    let d = rng.gen_range(1..=4);
    q(rng.gen_range(0..=max * d), d)
}

/// `|a(x) - a(y)|` summed over `dims` random coordinates: a pseudo-metric.
fn l1_metric(rng: &mut impl Rng, n: usize, dims: usize) -> PairMap {
    let pts: Vec<Vec<Q>> = (0..n).map(|_| (0..dims).map(|_| small_q(rng, 6)).collect()).collect();
    PairMap::from_fn(n, |x, y| pts[x].iter().zip(&pts[y]).map(|(a, b)| (a - b).abs()).sum())
}

/// `f(x) ∨ f(y)` for random `f >= 0`.
fn max_map(rng: &mut impl Rng, n: usize) -> PairMap {
    let f: Vec<Q> = (0..n).map(|_| small_q(rng, 5)).collect();
    PairMap::from_fn(n, |x, y| f[x].clone().max(f[y].clone()))
}

/// `v(A ∪ B)` for random subsets of a small ground set and a random
/// increasing submodular `v` (capped weighted cardinality).
fn union_map(rng: &mut impl Rng, n: usize) -> PairMap {
    let bits = rng.gen_range(2..=4);
    let sets: Vec<u32> = (0..n).map(|_| rng.gen_range(0..1u32 << bits)).collect();
    let weights: Vec<Q> = (0..bits).map(|_| small_q(rng, 3)).collect();
    let cap = small_q(rng, 3 * bits as i64) + qi(1);
    let v = |m: u32| -> Q {
        let s: Q = (0..bits).filter(|i| m >> i & 1 == 1).map(|i| weights[i].clone()).sum();
        s.min(cap.clone())
    };
    PairMap::from_fn(n, |x, y| v(sets[x] | sets[y]))
}

/// A random partial pseudo-metric on `n` points: a random nonnegative
/// combination of an L1 metric, a max map and a union valuation.
pub fn random_ppm(rng: &mut impl Rng, n: usize) -> PairMap {
    let mut p = PairMap::from_fn(n, |_, _| qi(0));
    let parts = rng.gen_range(1..=3);
    for _ in 0..parts {
        let part = match rng.gen_range(0..3) {
            0 => {
                let dims = rng.gen_range(1..=3);
                l1_metric(rng, n, dims)
            }
            1 => max_map(rng, n),
            _ => union_map(rng, n),
        };
        p = p.add(&part);
    }
    p
}

/// A random submodular pair-map: a join map `v(x ∨ y)` on a shuffled chain
/// or a union valuation, plus random left and right shifts.
pub fn random_submodular(rng: &mut impl Rng, n: usize) -> PairMap {
    let base = match rng.gen_range(0..2) {
        0 => {
            // Chain: any increasing v gives a submodular join map.
            let mut v: Vec<Q> = (0..n).map(|_| small_q(rng, 8)).collect();
            v.sort();
            let pos: Vec<usize> = {
                let mut idx: Vec<usize> = (0..n).collect();
                idx.shuffle(rng);
                idx
            };
            PairMap::from_fn(n, |x, y| v[pos[x].max(pos[y])].clone())
        }
        _ => union_map(rng, n),
    };
    let f: Vec<Q> = (0..n).map(|_| small_q(rng, 4) - qi(2)).collect();
    let g: Vec<Q> = (0..n).map(|_| small_q(rng, 4) - qi(2)).collect();
    base.map(|x, y, v| &f[x] + v + &g[y])
}

/// Random points of the nonnegative orthant with coordinates on a rational grid.
pub fn random_points(rng: &mut impl Rng, n: usize, dims: usize) -> Vec<Vec<Q>> {
    (0..n).map(|_| (0..dims).map(|_| small_q(rng, 3)).collect()).collect()
}

/// A random concave increasing piecewise-linear map on `[0, ∞)`.
pub fn random_concave(rng: &mut impl Rng) -> ConcavePL {
    let pieces = (0..rng.gen_range(1..=3)).map(|_| (small_q(rng, 3), small_q(rng, 6))).collect();
    ConcavePL::new(pieces).expect("nonnegative slopes")
}
