//! Partial pseudo-metrics, pseudo-interlaced spaces and their intrinsic
//! pseudo-metrics.

mod checks;
mod sqrt;

pub use checks::{
    check_metric_chain, check_order_metric_compat, check_pseudometric, d2_triangle_witness, lemma_dist2_witness,
    verify_d2_triangle, verify_interlaced, verify_lemma_dist2, verify_ppm,
};
pub use sqrt::{le_two_sqrt, sqrt_le_sum, SqrtMatrix, SqrtValue};

use num_traits::Zero;

use crate::algebra::Relation;
use crate::error::{Error, Result};
use crate::exact::{half, min_q, Scalar, Q};
use crate::kernels::{first_pair, first_triple};
use crate::ordermaps::PairMap;

/// A validated partial pseudo-metric: symmetric, submodular, `0 <= w(x) <= p(x,y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialPseudoMetric {
    p: PairMap,
}

impl PartialPseudoMetric {
    pub fn p(&self) -> &PairMap {
        &self.p
    }

    pub fn into_inner(self) -> PairMap {
        self.p
    }

    pub fn w(&self, x: usize) -> &Q {
        self.p.w(x)
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }
}

pub fn validate_ppm(p: &PairMap) -> Result<PartialPseudoMetric> {
    if let Some((x, y)) = p.symmetry_witness() {
        return Err(Error::NotSymmetric(x, y));
    }
    if let Some((x, y, z)) = p.submodularity_witness() {
        return Err(Error::NotSubmodular(x, y, z));
    }
    if let Some(x) = (0..p.len()).find(|&x| *p.w(x) < Q::zero()) {
        return Err(Error::NegativeSelfDistance(x));
    }
    if let Some((x, y)) = first_pair(p.len(), |x, y| p.w(x) > p.get(x, y)) {
        return Err(Error::DiagonalNotDominated(x, y));
    }
    Ok(PartialPseudoMetric { p: p.clone() })
}

/// First pair violating `w(x) = p(x,y) = w(y) => x = y`.
pub fn partial_metric_separation_witness(p: &PairMap) -> Option<(usize, usize)> {
    first_pair(p.len(), |x, y| x != y && p.w(x) == p.get(x, y) && p.get(x, y) == p.w(y))
}

pub fn is_partial_metric(p: &PairMap) -> bool {
    validate_ppm(p).is_ok() && partial_metric_separation_witness(p).is_none()
}

/// A validated pseudo-interlaced space with its least admissible constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterlacedSpace {
    p: PairMap,
    q: PairMap,
    k_min: Q,
}

impl InterlacedSpace {
    pub fn p(&self) -> &PairMap {
        &self.p
    }

    pub fn q(&self) -> &PairMap {
        &self.q
    }

    pub fn k_min(&self) -> &Q {
        &self.k_min
    }

    pub fn w(&self, x: usize) -> &Q {
        self.p.w(x)
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Does `w(x) + k q(x,y) <= k p(x,y) + w(y)` hold for all pairs?
    pub fn admits(&self, k: &Q) -> bool {
        let (p, q) = (&self.p, &self.q);
        first_pair(p.len(), |x, y| p.w(x) + k * q.get(x, y) > k * p.get(x, y) + p.w(y)).is_none()
    }
}

fn check_symmetric_submodular(p: &PairMap) -> Result<()> {
    if let Some((x, y)) = p.symmetry_witness() {
        return Err(Error::NotSymmetric(x, y));
    }
    if let Some((x, y, z)) = p.submodularity_witness() {
        return Err(Error::NotSubmodular(x, y, z));
    }
    Ok(())
}

pub fn validate_interlaced(p: &PairMap, q: &PairMap) -> Result<InterlacedSpace> {
    if p.len() != q.len() {
        return Err(Error::SizeMismatch { expected: p.len(), found: q.len() });
    }
    check_symmetric_submodular(p)?;
    check_symmetric_submodular(&q.neg())?;
    let n = p.len();
    if let Some(x) = (0..n).find(|&x| p.w(x) != q.w(x)) {
        return Err(Error::DiagonalMismatch(x));
    }
    let mut k_max: Option<Q> = None;
    for x in 0..n {
        for y in 0..n {
            let gap = p.get(x, y) - q.get(x, y);
            let rise = p.w(x) - p.w(y);
            if gap.is_zero() {
                if !rise.is_zero() {
                    return Err(Error::NoAdmissibleK(x, y));
                }
            } else if gap < Q::zero() {
                return Err(Error::NoAdmissibleK(x, y));
            } else {
                let k = rise / gap;
                if k_max.as_ref().is_none_or(|m| k > *m) {
                    k_max = Some(k);
                }
            }
        }
    }
    let k_min = match k_max {
        Some(k) if k > Q::zero() => k,
        _ => Q::from_integer(1.into()),
    };
    Ok(InterlacedSpace { p: p.clone(), q: q.clone(), k_min })
}

/// `d_{p,q} = p - q`.
pub fn intrinsic_dpq(space: &InterlacedSpace) -> PairMap {
    space.p.sub(&space.q)
}

/// `q₀(x,y) = w(x) ∧ w(y)`.
pub fn adjoint_q0(p: &PairMap) -> PairMap {
    PairMap::from_fn(p.len(), |x, y| min_q(p.w(x), p.w(y)).clone())
}

/// `q₁(x,y) = (w(x) + w(y)) / 2`.
pub fn adjoint_q1(p: &PairMap) -> PairMap {
    PairMap::from_fn(p.len(), |x, y| half(&(p.w(x) + p.w(y))))
}

pub fn d0(p: &PairMap) -> PairMap {
    p.sub(&adjoint_q0(p))
}

pub fn d1(p: &PairMap) -> PairMap {
    p.sub(&adjoint_q1(p))
}

/// Radicands `p(x,y)² - w(x) w(y)` of the second intrinsic pseudo-metric.
pub fn d2_squared(p: &PairMap) -> PairMap {
    p.map(|x, y, v| v * v - p.w(x) * p.w(y))
}

/// `d₂(x,y) = √(p(x,y)² - w(x) w(y))`. Requires a partial pseudo-metric so
/// that every radicand is nonnegative.
pub fn d2(p: &PartialPseudoMetric) -> SqrtMatrix {
    SqrtMatrix::new(d2_squared(p.p())).expect("w(x) v w(y) <= p(x,y) keeps radicands nonnegative")
}

/// Is `q` adjoint to `p`: `-q` symmetric submodular with `q(x,x) = p(x,x)`?
pub fn is_adjoint(p: &PairMap, q: &PairMap) -> bool {
    let nq = q.neg();
    p.len() == q.len() && nq.is_symmetric() && nq.is_submodular_bool() && (0..p.len()).all(|x| p.w(x) == q.w(x))
}

/// `x <=_{p,q} y` iff `w(x) <= q(x,y) <= p(x,y) <= w(y)`.
pub fn order_pq(space: &InterlacedSpace) -> Relation {
    let (p, q) = (&space.p, &space.q);
    Relation::from_fn(p.len(), |x, y| p.w(x) <= q.get(x, y) && q.get(x, y) <= p.get(x, y) && p.get(x, y) <= p.w(y))
}

/// Three finite descriptions of separation, which must agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct InterlacedFlags {
    /// `p(x,y) = q(x,y) => x = y`.
    pub interlaced: bool,
    pub dpq_is_metric: bool,
    pub order_antisymmetric: bool,
}

impl InterlacedFlags {
    pub fn agree(&self) -> bool {
        self.interlaced == self.dpq_is_metric && self.dpq_is_metric == self.order_antisymmetric
    }
}

pub fn classify_interlaced(space: &InterlacedSpace) -> InterlacedFlags {
    let n = space.len();
    let interlaced = first_pair(n, |x, y| x != y && space.p.get(x, y) == space.q.get(x, y)).is_none();
    InterlacedFlags {
        interlaced,
        dpq_is_metric: is_metric(&intrinsic_dpq(space)),
        order_antisymmetric: order_pq(space).is_antisymmetric(),
    }
}

/// Pseudo-metric axioms: zero diagonal, symmetry, triangle inequality.
pub fn is_pseudometric(d: &PairMap) -> bool {
    let n = d.len();
    (0..n).all(|x| d.get(x, x).is_zero())
        && d.is_symmetric()
        && crate::exact_dispatch!([d.values()], |v| first_triple(n, |x, y, z| {
            v[x * n + z] > v[x * n + y].add(&v[y * n + z])
        }))
        .is_none()
}

pub fn is_metric(d: &PairMap) -> bool {
    is_pseudometric(d) && first_pair(d.len(), |x, y| x != y && d.get(x, y).is_zero()).is_none()
}

/// The quotient by `d_{p,q}(x,y) = 0`. Returns the quotient space and the
/// projection; classes are numbered by their first element.
pub fn quotient(space: &InterlacedSpace) -> Result<(InterlacedSpace, Vec<usize>)> {
    let n = space.len();
    let d = intrinsic_dpq(space);
    let mut proj = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if proj[x] != usize::MAX {
            continue;
        }
        proj[x] = reps.len();
        for y in x + 1..n {
            if proj[y] == usize::MAX && d.get(x, y).is_zero() {
                proj[y] = reps.len();
            }
        }
        reps.push(x);
    }
    // Every pair must agree with its pair of representatives.
    let bad = first_pair(n, |x, y| {
        let (rx, ry) = (reps[proj[x]], reps[proj[y]]);
        space.p.get(x, y) != space.p.get(rx, ry) || space.q.get(x, y) != space.q.get(rx, ry)
    });
    if let Some((x, y)) = bad {
        return Err(Error::QuotientNotWellDefined(x, y));
    }
    let qs = validate_interlaced(&space.p.restrict(&reps), &space.q.restrict(&reps))?;
    Ok((qs, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    fn pm(rows: &[&[i64]]) -> PairMap {
        PairMap::from_rows(rows.iter().map(|r| r.iter().map(|&v| qi(v)).collect()).collect()).unwrap()
    }

    fn chain(v: &[i64]) -> PairMap {
        PairMap::from_fn(v.len(), |x, y| qi(v[x.max(y)]))
    }

    #[test]
    fn ppm_validation() {
        let d = pm(&[&[0, 1, 2], &[1, 0, 1], &[2, 1, 0]]);
        assert!(validate_ppm(&d).is_ok());
        assert!(is_partial_metric(&d));
        let c = chain(&[0, 1, 3, 4]);
        assert!(is_partial_metric(&c));
        let k = PairMap::from_fn(3, |_, _| qi(2));
        assert!(validate_ppm(&k).is_ok());
        assert!(!is_partial_metric(&k));
        assert_eq!(validate_ppm(&pm(&[&[0, 1], &[2, 0]])), Err(Error::NotSymmetric(0, 1)));
        assert_eq!(validate_ppm(&pm(&[&[-1, 0], &[0, 0]])), Err(Error::NegativeSelfDistance(0)));
        assert_eq!(validate_ppm(&pm(&[&[3, 2], &[2, 0]])), Err(Error::DiagonalNotDominated(0, 1)));
        assert!(matches!(validate_ppm(&pm(&[&[0, 5, 1], &[5, 0, 1], &[1, 1, 0]])), Err(Error::NotSubmodular(..))));
    }

    #[test]
    fn intrinsic_on_two_chain() {
        let p = chain(&[0, 1]);
        assert_eq!(*d1(&p).get(0, 1), q(1, 2));
        assert_eq!(*d0(&p).get(0, 1), qi(1));
        let c = PairMap::from_fn(3, |x, y| if x == y { qi(3) } else { qi(5) });
        let shifted = c.map(|_, _, v| v - qi(3));
        assert_eq!(d0(&c), shifted);
        assert_eq!(d1(&c), shifted);
        assert!(is_adjoint(&p, &adjoint_q0(&p)) && is_adjoint(&p, &adjoint_q1(&p)));
    }

    #[test]
    fn d2_values() {
        let p = validate_ppm(&pm(&[&[1, 2], &[2, 1]])).unwrap();
        assert_eq!(*d2(&p).get(0, 1).radicand(), qi(3));
        assert_eq!(*d2(&p).get(0, 0).radicand(), qi(0));
        let m = pm(&[&[0, 3], &[3, 0]]);
        let m = validate_ppm(&m).unwrap();
        assert_eq!(d2(&m).get(0, 1), SqrtValue::of(&qi(3)).unwrap());
    }

    #[test]
    fn interlaced_validation() {
        let d = pm(&[&[0, 1, 2], &[1, 0, 1], &[2, 1, 0]]);
        let zero = PairMap::from_fn(3, |_, _| qi(0));
        let s = validate_interlaced(&d, &zero).unwrap();
        assert_eq!(*s.k_min(), qi(1));
        assert!(s.admits(&qi(7)));
        assert_eq!(intrinsic_dpq(&s), d);

        let p = chain(&[0, 1, 3]);
        let s = validate_interlaced(&p, &adjoint_q1(&p)).unwrap();
        assert!(s.admits(&qi(2)));
        // w(x) - w(y) over (w(y) - w(x))/2 peaks at -2 for x < y; reversed pairs give 2.
        assert_eq!(*s.k_min(), qi(2));
        assert_eq!(intrinsic_dpq(&s), d1(&p));

        // p = q with a nonconstant diagonal.
        let pq = pm(&[&[0, 1], &[1, 1]]);
        assert!(matches!(
            validate_interlaced(&pq, &pq),
            Err(Error::DiagonalMismatch(_) | Error::NoAdmissibleK(..) | Error::NotSubmodular(..))
        ));
        let q2 = pm(&[&[0, 0], &[0, 2]]);
        assert_eq!(validate_interlaced(&pm(&[&[0, 2], &[2, 1]]), &q2), Err(Error::DiagonalMismatch(1)));
    }

    #[test]
    fn classification_and_quotient() {
        let d = pm(&[&[0, 1], &[1, 0]]);
        let zero = PairMap::from_fn(2, |_, _| qi(0));
        let s = validate_interlaced(&d, &zero).unwrap();
        let f = classify_interlaced(&s);
        assert!(f.interlaced && f.dpq_is_metric && f.order_antisymmetric);
        let (qs, proj) = quotient(&s).unwrap();
        assert_eq!((qs.len(), proj), (2, vec![0, 1]));

        let c = PairMap::from_fn(4, |_, _| qi(3));
        let s = validate_interlaced(&c, &c).unwrap();
        assert!(!classify_interlaced(&s).interlaced && classify_interlaced(&s).agree());
        let (qs, proj) = quotient(&s).unwrap();
        assert_eq!((qs.len(), proj), (1, vec![0; 4]));

        // Duplicate element 1 of a 3-point metric as element 3.
        let base = pm(&[&[0, 1, 2], &[1, 0, 1], &[2, 1, 0]]);
        let idx = [0, 1, 2, 1];
        let dup = PairMap::from_fn(4, |x, y| base.get(idx[x], idx[y]).clone());
        let s = validate_interlaced(&dup, &PairMap::from_fn(4, |_, _| qi(0))).unwrap();
        assert!(
            classify_interlaced(&s)
                == InterlacedFlags { interlaced: false, dpq_is_metric: false, order_antisymmetric: false }
        );
        let (qs, proj) = quotient(&s).unwrap();
        assert_eq!(proj, vec![0, 1, 2, 1]);
        assert_eq!(*qs.p(), base);
        assert!(classify_interlaced(&qs).interlaced);
    }
}
