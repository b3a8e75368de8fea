//! `d₂` is not Lipschitz-equivalent to `d₀`: a family of two-point chains
//! `x <= λx` with `‖λx‖ = λ‖x‖` and `λ = 1 + 1/k`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{q, qi, Scalar, Q};
use crate::metrics::{self, check_metric_chain};
use crate::ordermaps::PairMap;
use crate::report::{Report, Witness};

/// `p(x,y) = ‖x ∨ y‖` on the chain `0 <= x <= λx` with norms `0, 1, λ`.
fn scaled_chain(lambda: &Q) -> PairMap {
    let v = [qi(0), qi(1), lambda.clone()];
    PairMap::from_fn(3, |a, b| v[a.max(b)].clone())
}

/// `(d₀(x,λx), d₂(x,λx)²)` on a chain with norms `v`, straight from the
/// definitions `p(a,b) = v(a ∨ b)`, `w(a) = p(a,a)`.
fn chain_distances<S: Scalar>(v: &[S; 3]) -> (S, S) {
    let p = |a: usize, b: usize| v[a.max(b)].clone();
    let (w1, w2, p12) = (p(1, 1), p(2, 2), p(1, 2));
    let d0 = p12.sub(if w1 <= w2 { &w1 } else { &w2 });
    let d2sq = p12.mul(&p12).sub(&w1.mul(&w2));
    (d0, d2sq)
}

/// For `k = 2..=k_max`: `d₂(x,λx)² = λ(λ-1)`, `d₀(x,λx)² = (λ-1)²`, and
/// their ratio `λ/(λ-1) = k + 1 >= k`, all exact; the metric chain still
/// holds on each instance.
///
/// Scaling the norms by `k` makes every value an integer (`0, k, k+1`), and
/// the squared quantities scale by `k²`, so the sweep runs in `i128`. The
/// rational computation through the library maps is cross-checked against
/// it on a geometric subsequence.
pub fn reproduce_counter_family(k_max: u64) -> Result<Report> {
    if k_max < 2 {
        return Err(Error::BadParams("k_max must be at least 2".into()));
    }
    if k_max > 1 << 40 {
        return Err(Error::BadParams("k_max must be at most 2^40".into()));
    }
    let mut r = Report::new(format!("counter family k=2..{k_max}"));
    let count = k_max - 1;
    let bad = (2..=k_max).into_par_iter().find_map_first(|k| {
        let k = k as i128;
        let (d0, d2sq) = chain_distances(&[0, k, k + 1]);
        // k² λ(λ-1) = k + 1 and k² (λ-1)² = 1.
        let (got0, got2) = (d0 * d0, d2sq);
        if got0 != 1 || got2 != k + 1 {
            return Some(Witness::raw(
                &[],
                format!("k={k}: k^2 d2^2={got2}, k^2 d0^2={got0}"),
                "=",
                format!("{}, 1", k + 1),
            ));
        }
        (got2 != (k + 1) * got0 || got2 < k * got0)
            .then(|| Witness::raw(&[], format!("k={k}: ratio {got2}/{got0}"), ">=", k.to_string()))
    });
    r.check("squared distances and ratio", "d2^2 = λ(λ-1)‖x‖^2, d0^2 = (λ-1)^2‖x‖^2, d2^2/d0^2 = k+1", count, bad);

    // The metric chain on a geometric subsequence and at k_max.
    let mut ks: Vec<u64> = std::iter::successors(Some(2u64), |k| k.checked_mul(2)).take_while(|&k| k < k_max).collect();
    ks.push(k_max);
    let mut failed = None;
    for &k in &ks {
        let lambda = qi(1) + q(1, k as i64);
        let p = scaled_chain(&lambda);
        let (d0, d2sq) = chain_distances(&[qi(0), qi(1), lambda.clone()]);
        let l1 = &lambda - qi(1);
        if d0 != *metrics::d0(&p).get(1, 2) || d2sq != *metrics::d2_squared(&p).get(1, 2) || d2sq != &lambda * &l1 {
            failed = Some(Witness::raw(&[], format!("k={k}"), "differs from", "library d0, d2".into()));
            break;
        }
        let chain = check_metric_chain(&p);
        let first = chain.failures().next().map(|a| a.name.clone());
        if let Some(name) = first {
            failed = Some(Witness::raw(&[], format!("k={k}"), "fails", name));
            break;
        }
    }
    r.check(
        "metric chain still holds",
        "d0 <= 2 d1 <= 2 (d0 ∧ d2); rational d0, d2 agree with the sweep",
        ks.len() as u64,
        failed,
    );
    r.note("d2^2 / d0^2 = k + 1 is unbounded, so no constant bounds d2 by d0");
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instances() {
        // λ = 2: d2² = 2, d0² = 1.
        let p = scaled_chain(&qi(2));
        assert_eq!(*metrics::d2_squared(&p).get(1, 2), qi(2));
        assert_eq!(*metrics::d0(&p).get(1, 2), qi(1));
        // λ = 3/2: ratio 3.
        let p = scaled_chain(&q(3, 2));
        let d0 = metrics::d0(&p).get(1, 2).clone();
        assert_eq!(metrics::d2_squared(&p).get(1, 2) / (&d0 * &d0), qi(3));
        assert!(reproduce_counter_family(1000).unwrap().passed);
        assert!(reproduce_counter_family(1).is_err());
    }
}
