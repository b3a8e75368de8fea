//! Submodularity-preserving transforms.

use num_traits::{ToPrimitive, Zero};

use super::{ConcavePL, FloatConcave, PairMap};
use crate::algebra::Relation;
use crate::error::{Error, Result};
use crate::exact::{format_q, max_q, Q};
use crate::kernels::first_triple;
use crate::report::{Report, Witness};

pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// `q(x,y) = p(x,x) ∨ p(x,y)`.
pub fn transform_max(p: &PairMap) -> PairMap {
    p.map(|x, _, v| max_q(p.w(x), v).clone())
}

/// `(x,y) ↦ f(x) + p(x,y)`.
pub fn transform_shift(p: &PairMap, f: &[Q]) -> Result<PairMap> {
    check_len(p, f)?;
    Ok(p.map(|x, _, v| &f[x] + v))
}

/// `(x,y) ↦ p(x,y) + f(y)`.
pub fn transform_shift_right(p: &PairMap, f: &[Q]) -> Result<PairMap> {
    check_len(p, f)?;
    Ok(p.map(|_, y, v| v + &f[y]))
}

fn check_len(p: &PairMap, f: &[Q]) -> Result<()> {
    if f.len() != p.len() {
        return Err(Error::SizeMismatch { expected: p.len(), found: f.len() });
    }
    Ok(())
}

fn require_diag_dominated(p: &PairMap) -> Result<()> {
    match p.diag_domination_witness() {
        Some((x, y)) => Err(Error::PreconditionDiagNotDominated(x, y)),
        None => Ok(()),
    }
}

/// `f ∘ p` for a concave order-preserving piecewise-linear `f`.
pub fn transform_concave(p: &PairMap, f: &ConcavePL) -> Result<PairMap> {
    require_diag_dominated(p)?;
    let mut values = Vec::with_capacity(p.values().len());
    for v in p.values() {
        values.push(f.eval(v)?);
    }
    PairMap::new(p.len(), values)
}

/// `p / (b + p)`. Requires `b > 0`, `b + p > 0` everywhere (the value at
/// `p = -b` would be `-inf`) and `p(x,x) ∨ p(y,y) <= p(x,y)`.
pub fn transform_kunzi(p: &PairMap, b: &Q) -> Result<PairMap> {
    if *b <= Q::zero() {
        return Err(Error::PreconditionViolated(format!("b = {} is not positive", format_q(b))));
    }
    require_diag_dominated(p)?;
    if let Some(v) = p.values().iter().find(|v| b + *v <= Q::zero()) {
        return Err(Error::PreconditionViolated(format!("b + p = {} is not positive", format_q(&(b + v)))));
    }
    Ok(p.map(|_, _, v| v / (b + v)))
}

/// `(x,y) ↦ Σ_i (x_i ∨ y_i)^α` on points of the nonnegative orthant.
pub fn topkis_map(points: &[Vec<Q>], alpha: u32) -> Result<PairMap> {
    if alpha == 0 {
        return Err(Error::BadParams("alpha must be at least 1".into()));
    }
    let dim = points.first().map_or(0, Vec::len);
    for pt in points {
        if pt.len() != dim {
            return Err(Error::SizeMismatch { expected: dim, found: pt.len() });
        }
        if let Some(c) = pt.iter().find(|c| **c < Q::zero()) {
            return Err(Error::OutOfDomain(format_q(c)));
        }
    }
    let pow = |c: &Q| num_traits::pow::pow(c.clone(), alpha as usize);
    Ok(PairMap::from_fn(points.len(), |x, y| points[x].iter().zip(&points[y]).map(|(a, b)| pow(max_q(a, b))).sum()))
}

/// Output of [`valuation_pairmap`].
#[derive(Clone, Debug)]
pub struct ValuationPairMap {
    pub p: PairMap,
    /// Recomputing with `<=_p` in place of the given order reproduces `p`.
    pub stable: bool,
}

/// `p(x,y) = min { w(z) : x <= z, y <= z }` on a finite directed poset.
pub fn valuation_pairmap(order: &Relation, w: &[Q]) -> Result<ValuationPairMap> {
    let n = order.len();
    if w.len() != n {
        return Err(Error::SizeMismatch { expected: n, found: w.len() });
    }
    if let Some((x, y)) = order.pairs().find(|&(x, y)| w[x] > w[y]) {
        return Err(Error::PreconditionViolated(format!("w is not order-preserving at ({x}, {y})")));
    }
    let p = upper_inf(order, w)?;
    let leq_p = super::quasiorder_leq_p(&p);
    let stable = upper_inf(&leq_p, &p.diagonal()).is_ok_and(|p2| p2 == p);
    Ok(ValuationPairMap { p, stable })
}

fn upper_inf(order: &Relation, w: &[Q]) -> Result<PairMap> {
    let n = order.len();
    let mut values = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let m = (0..n)
                .filter(|&z| order.holds(x, z) && order.holds(y, z))
                .map(|z| &w[z])
                .min()
                .ok_or(Error::NoUpperBound(x, y))?;
            values.push(m.clone());
        }
    }
    PairMap::new(n, values)
}

/// Float-mode submodularity of `f ∘ p` for an irrational concave `f`, with
/// absolute tolerance [`FLOAT_TOLERANCE`]. The report is marked non-exact.
pub fn check_concave_float(p: &PairMap, f: FloatConcave) -> Result<Report> {
    require_diag_dominated(p)?;
    if let Some(v) = p.values().iter().find(|v| **v < Q::zero()) {
        return Err(Error::OutOfDomain(format_q(v)));
    }
    let n = p.len();
    let fv: Vec<f64> = p.values().iter().map(|v| f.eval(v.to_f64().expect("finite rational"))).collect();
    let bad = first_triple(n, |x, y, z| {
        let terms = [fv[x * n + y], fv[z * n + z], fv[x * n + z], fv[z * n + y]];
        if terms.iter().any(|t| t.is_infinite()) {
            return false;
        }
        terms[0] + terms[1] > terms[2] + terms[3] + FLOAT_TOLERANCE
    });
    let mut r = Report::new(format!("float concave {}", f.name()));
    r.exact = false;
    r.note(format!("float mode, absolute tolerance {FLOAT_TOLERANCE:e}"));
    r.check(
        "f o p submodular",
        "f(p(x,y)) + f(p(z,z)) <= f(p(x,z)) + f(p(z,y))",
        (n * n * n) as u64,
        bad.map(|(x, y, z)| {
            Witness::raw(
                &[x, y, z],
                format!("{:e}", fv[x * n + y] + fv[z * n + z]),
                "<=",
                format!("{:e}", fv[x * n + z] + fv[z * n + y]),
            )
        }),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};
    use crate::ordermaps::{is_submodular, quasiorder_leq_p};

    fn chain_join(v: &[i64]) -> PairMap {
        PairMap::from_fn(v.len(), |x, y| qi(v[x.max(y)]))
    }

    #[test]
    fn max_and_shift() {
        let p = chain_join(&[0, 1, 3]);
        assert_eq!(transform_max(&p), p);
        let f = [qi(0), qi(0), qi(0)];
        assert_eq!(transform_shift(&p, &f).unwrap(), p);
        let neg_w: Vec<Q> = p.diagonal().iter().map(|v| -v).collect();
        let s = transform_shift(&p, &neg_w).unwrap();
        assert_eq!(*s.get(2, 0), qi(0));
        assert_eq!(*s.get(0, 2), qi(3));
        assert!(is_submodular(&s).passed);
        let asym = transform_max(&s);
        assert_eq!(asym.diagonal(), s.diagonal());
        assert_eq!(quasiorder_leq_p(&asym), quasiorder_leq_p(&s));
        assert!(transform_shift(&p, &f[..2]).is_err());
    }

    #[test]
    fn kunzi_values() {
        let p = PairMap::from_fn(1, |_, _| qi(2));
        assert_eq!(*transform_kunzi(&p, &qi(1)).unwrap().get(0, 0), q(2, 3));
        let z = PairMap::from_fn(1, |_, _| qi(0));
        assert_eq!(*transform_kunzi(&z, &qi(1)).unwrap().get(0, 0), qi(0));
        assert!(matches!(transform_kunzi(&z, &qi(0)), Err(Error::PreconditionViolated(_))));
        let m = PairMap::from_fn(1, |_, _| qi(-1));
        assert!(matches!(transform_kunzi(&m, &qi(1)), Err(Error::PreconditionViolated(_))));
        let nd = PairMap::from_fn(2, |x, y| if x == y { qi(2) } else { qi(1) });
        assert_eq!(transform_kunzi(&nd, &qi(1)), Err(Error::PreconditionDiagNotDominated(0, 1)));
    }

    #[test]
    fn concave_cap_and_identity() {
        let p = chain_join(&[0, 2, 3, 7]);
        assert_eq!(transform_concave(&p, &ConcavePL::identity()).unwrap(), p);
        let c = transform_concave(&p, &ConcavePL::cap(qi(3))).unwrap();
        assert_eq!(*c.get(3, 0), qi(3));
        assert!(is_submodular(&c).passed);
    }

    #[test]
    fn topkis_examples() {
        let pts = vec![vec![qi(1), qi(0)], vec![qi(0), qi(2)], vec![q(1, 2), q(1, 2)]];
        for a in 1..=3 {
            let p = topkis_map(&pts, a).unwrap();
            assert!(is_submodular(&p).passed);
        }
        // (1 v 0)^2 + (0 v 2)^2 = 5
        assert_eq!(*topkis_map(&pts, 2).unwrap().get(0, 1), qi(5));
        assert!(topkis_map(&[vec![qi(-1)]], 1).is_err());
    }

    #[test]
    fn valuation_pairmaps() {
        let chain = Relation::from_fn(4, |x, y| x <= y);
        let w = [qi(0), qi(1), qi(1), qi(5)];
        let vp = valuation_pairmap(&chain, &w).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(*vp.p.get(x, y), w[x.max(y)]);
            }
        }
        assert!(vp.stable);
        let c = valuation_pairmap(&chain, &vec![qi(2); 4]).unwrap();
        assert!(c.p.values().iter().all(|v| *v == qi(2)));

        // Power set of {1,2,3} under inclusion with cardinality.
        let inc = Relation::from_fn(8, |x, y| x & y == x);
        let card: Vec<Q> = (0..8u32).map(|m| qi(m.count_ones() as i64)).collect();
        let vp = valuation_pairmap(&inc, &card).unwrap();
        for x in 0..8usize {
            for y in 0..8usize {
                assert_eq!(*vp.p.get(x, y), qi((x | y).count_ones() as i64));
            }
        }
        assert!(vp.stable && vp.p.is_symmetric());

        let anti = Relation::from_fn(2, |x, y| x == y);
        assert_eq!(valuation_pairmap(&anti, &[qi(0), qi(0)]).unwrap_err(), Error::NoUpperBound(0, 1));
        assert!(valuation_pairmap(&chain, &[qi(3), qi(1), qi(1), qi(1)]).is_err());
    }

    #[test]
    fn float_mode_examples() {
        let p = chain_join(&[0, 1, 2, 5]);
        for f in [FloatConcave::Sqrt, FloatConcave::Log, FloatConcave::NegInv] {
            let r = check_concave_float(&p, f).unwrap();
            assert!(r.passed && !r.exact);
        }
    }
}
