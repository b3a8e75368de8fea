//! Skew-convex metrics on Clifford semigroups and the correspondence between
//! pseudo-norms and right-subinvariant skew-convex pseudo-metrics.

mod counter;

pub use counter::reproduce_counter_family;

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::FiniteInverseSemigroup;
use crate::error::{Error, Result};
use crate::exact::{format_q, half, Scalar, Q};
use crate::exact_dispatch;
use crate::kernels::{first_pair, first_triple};
use crate::metrics::{self, sqrt_le_sum};
use crate::norms::{
    self, induced_p, radial_convexity_witness, right_subinvariance_witness, validate_pseudonorm,
    verify_norm_properties, Valuation,
};
use crate::ordermaps::PairMap;
use crate::report::{Report, Witness};

fn require_clifford(s: &FiniteInverseSemigroup) -> Result<()> {
    match s.clifford_witness() {
        Some(x) => Err(Error::NotClifford(x)),
        None => Ok(()),
    }
}

fn check_size(s: &FiniteInverseSemigroup, d: &PairMap) -> Result<()> {
    if s.len() != d.len() {
        return Err(Error::SizeMismatch { expected: s.len(), found: d.len() });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewConvexReport {
    pub axiom1: bool,
    pub axiom2: bool,
    pub right_subinvariant: bool,
    pub radially_convex: bool,
    pub witnesses: BTreeMap<String, Witness>,
}

impl SkewConvexReport {
    pub fn skew_convex(&self) -> bool {
        self.axiom1 && self.axiom2
    }

    /// Skew-convexity implies radial convexity.
    pub fn lemma_holds(&self) -> bool {
        !self.skew_convex() || self.radially_convex
    }

    /// Adds the four flags and the lemma as assertions under `label`.
    /// `n` is the size of the carrier.
    pub fn add_to(&self, r: &mut Report, label: &str, n: usize) {
        let w = |k: &str| self.witnesses.get(k).cloned();
        let (pairs, triples) = ((n as u64).pow(2), (n as u64).pow(3));
        r.check(&format!("{label} skew axiom 1"), "d(x,y) >= d(δx,δy)", pairs, w("axiom1"));
        r.check(
            &format!("{label} skew axiom 2"),
            "δx <= δy <= δz => d(x,z) = d(δx,δy) + d(x + y*, z + y*)",
            triples,
            w("axiom2"),
        );
        r.check(
            &format!("{label} right-subinvariant"),
            "d(x + y*, z + y*) <= d(x,z)",
            triples,
            w("right_subinvariant"),
        );
        r.check(
            &format!("{label} skew-convex implies radially convex"),
            "skew-convex => radially convex",
            triples,
            (!self.lemma_holds()).then(|| w("radially_convex").expect("witness recorded")),
        );
    }
}

fn outside_chain(s: &FiniteInverseSemigroup, x: usize, y: usize, z: usize, below: &[bool]) -> bool {
    let n = s.len();
    let (dx, dy, dz) = (s.delta(x), s.delta(y), s.delta(z));
    !(below[dx * n + dy] && below[dy * n + dz])
}

/// Evaluates both skew-convexity axioms, right-subinvariance and radial
/// convexity of `d` exactly.
pub fn is_skew_convex(s: &FiniteInverseSemigroup, d: &PairMap) -> Result<SkewConvexReport> {
    require_clifford(s)?;
    check_size(s, d)?;
    let n = s.len();
    let leq = s.natural_order();
    let below: Vec<bool> = (0..n * n).map(|i| leq.holds(i / n, i % n)).collect();
    let mut witnesses = BTreeMap::new();

    let a1 = first_pair(n, |x, y| d.get(x, y) < d.get(s.delta(x), s.delta(y)));
    if let Some((x, y)) = a1 {
        witnesses.insert("axiom1".into(), Witness::at(&[x, y], d.get(x, y), ">=", d.get(s.delta(x), s.delta(y))));
    }
    let a2 = exact_dispatch!([d.values()], |v| first_triple(n, |x, y, z| {
        if outside_chain(s, x, y, z, &below) {
            return false;
        }
        let rhs = v[s.delta(x) * n + s.delta(y)].add(&v[s.add_inv(x, y) * n + s.add_inv(z, y)]);
        v[x * n + z] != rhs
    }));
    if let Some((x, y, z)) = a2 {
        let rhs = d.get(s.delta(x), s.delta(y)) + d.get(s.add_inv(x, y), s.add_inv(z, y));
        witnesses.insert("axiom2".into(), Witness::at(&[x, y, z], d.get(x, z), "=", &rhs));
    }
    let rs = right_subinvariance_witness(s, d);
    if let Some((x, y, z)) = rs {
        witnesses.insert(
            "right_subinvariant".into(),
            Witness::at(&[x, y, z], d.get(s.add_inv(x, y), s.add_inv(z, y)), "<=", d.get(x, z)),
        );
    }
    let rc = radial_convexity_witness(d, &leq);
    if let Some((x, y, z)) = rc {
        witnesses
            .insert("radially_convex".into(), Witness::at(&[x, y, z], d.get(x, z), "=", &(d.get(x, y) + d.get(y, z))));
    }
    let witnesses = witnesses.into_iter().map(|(k, w)| (k, w.labelled(s.labels()))).collect();
    Ok(SkewConvexReport {
        axiom1: a1.is_none(),
        axiom2: a2.is_none(),
        right_subinvariant: rs.is_none(),
        radially_convex: rc.is_none(),
        witnesses,
    })
}

/// Skew-convexity of `d₂`, from its radicands; equality of square roots
/// `√a = √b + √c` is tested as `a - b - c >= 0` and `(a - b - c)² = 4bc`.
fn d2_skew_convex(s: &FiniteInverseSemigroup, rad: &PairMap) -> bool {
    let n = s.len();
    let leq = s.natural_order();
    let a1 = first_pair(n, |x, y| rad.get(x, y) < rad.get(s.delta(x), s.delta(y))).is_none();
    let a2 = first_triple(n, |x, y, z| {
        let (dx, dy, dz) = (s.delta(x), s.delta(y), s.delta(z));
        if !(leq.holds(dx, dy) && leq.holds(dy, dz)) {
            return false;
        }
        let a = rad.get(x, z);
        let b = rad.get(dx, dy);
        let c = rad.get(s.add_inv(x, y), s.add_inv(z, y));
        let e = a - b - c;
        // √a <= √b + √c always checked; equality needs the reverse too.
        !(sqrt_le_sum(a, b, c) && !e.is_negative() && &e * &e == b * c * Q::from_integer(4.into()))
    })
    .is_none();
    a1 && a2
}

/// `d₀` and `d₁` of a pseudo-norm on a Clifford semigroup are
/// right-subinvariant and skew-convex.
pub fn verify_dclifford(s: &FiniteInverseSemigroup, v: &Valuation) -> Result<Report> {
    require_clifford(s)?;
    let p = induced_p(s, v)?;
    let mut r = Report::new("verify dclifford");
    r.kind = "bridge-report".into();
    r.direction = Some("norm-to-metric".into());
    for (label, d) in [("d0", metrics::d0(&p)), ("d1", metrics::d1(&p))] {
        let sc = is_skew_convex(s, &d)?;
        sc.add_to(&mut r, label, s.len());
    }
    let rad = metrics::d2_squared(&p);
    let d2_rs = right_subinvariance_witness(s, &rad).is_none();
    r.note(format!("d2 measured: right-subinvariant {}, skew-convex {}", d2_rs, d2_skew_convex(s, &rad)));
    Ok(r)
}

/// `d'(x,y) = d(x,y) + d(δx,δy)`.
pub fn auxiliary_metric(s: &FiniteInverseSemigroup, d: &PairMap) -> PairMap {
    d.map(|x, y, v| v + d.get(s.delta(x), s.delta(y)))
}

/// `v(x) = d(x,0) + d(δx,0)` for a right-subinvariant skew-convex
/// pseudo-metric on a Clifford monoid. The preconditions are validated and
/// the consequences of the construction are asserted in the report.
pub fn norm_from_metric(s: &FiniteInverseSemigroup, d: &PairMap) -> Result<(Valuation, Report)> {
    require_clifford(s)?;
    let zero = s.identity().ok_or(Error::NoIdentity)?;
    check_size(s, d)?;
    if !metrics::is_pseudometric(d) {
        let mut chk = Report::new("");
        metrics::check_pseudometric(&mut chk, "d", d);
        let why = chk.failures().next().map_or_else(String::new, |a| a.name.clone());
        return Err(Error::NotPseudoMetric(why));
    }
    let sc = is_skew_convex(s, d)?;
    if let Some(w) = sc.witnesses.get("right_subinvariant") {
        return Err(Error::NotRightSubinvariant(Box::new(w.clone())));
    }
    for k in ["axiom1", "axiom2"] {
        if let Some(w) = sc.witnesses.get(k) {
            return Err(Error::NotSkewConvex(Box::new(w.clone())));
        }
    }

    let v = Valuation::from_fn(s.len(), |x| d.get(x, zero) + d.get(s.delta(x), zero))?;
    let n = s.len();
    let mut r = Report::new("bridge metric-to-norm");
    r.kind = "bridge-report".into();
    r.direction = Some("metric-to-norm".into());
    sc.add_to(&mut r, "d", n);

    let dp = auxiliary_metric(s, d);
    let two = Q::from_integer(2.into());
    let sandwich = first_pair(n, |x, y| d.get(x, y) > dp.get(x, y) || *dp.get(x, y) > d.get(x, y) * &two);
    r.check(
        "d <= d' <= 2d",
        "d(x,y) <= d(x,y) + d(δx,δy) <= 2 d(x,y)",
        (n * n) as u64,
        sandwich.map(|(x, y)| Witness::at(&[x, y], dp.get(x, y), "in", d.get(x, y))),
    );
    let scp = is_skew_convex(s, &dp)?;
    scp.add_to(&mut r, "d'", n);
    let fixed = (0..n).find(|&x| *v.get(x) != *dp.get(x, zero));
    r.check(
        "v is distance to identity for d'",
        "v(x) = d'(x, 0)",
        n as u64,
        fixed.map(|x| Witness::at(&[x], v.get(x), "=", dp.get(x, zero))),
    );

    r.absorb("v", validate_pseudonorm(s, &v)?);
    r.absorb("v", verify_norm_properties(s, &v)?);
    let id = "d metric => v norm";
    if metrics::is_metric(d) {
        let sep = norms::separation_witness(s, &v);
        r.check("metric gives norm", id, n as u64, sep.map(|(e, x)| Witness::at(&[e, x], v.get(x), "!=", v.get(e))));
    } else {
        r.vacuous("metric gives norm", id);
    }

    if s.idempotents().len() == 1 {
        let w = (0..n).find(|&x| v.get(x) != d.get(x, zero));
        r.check(
            "group: v is distance to identity",
            "v(x) = d(x, 0)",
            n as u64,
            w.map(|x| Witness::at(&[x], v.get(x), "=", d.get(x, zero))),
        );
    }
    if s.idempotents().len() == n && n > 1 {
        r.note("semilattice: v(x) = d(x,0) + d(δx,0) = 2 d(x,0); the value d(x,0) alone gives the same pseudo-norm up to the factor 2");
    }
    Ok((v, r.labelled(s.labels())))
}

/// Builds `d₁` from `v`, recovers `v'` with [`norm_from_metric`] and asserts
/// `v' = v`, together with the closed forms `d₁(x,0) = ‖x‖ - ‖δx‖/2` and
/// `d₁(δx,0) = ‖δx‖/2` evaluated directly from `v`.
pub fn roundtrip_check(s: &FiniteInverseSemigroup, v: &Valuation) -> Result<Report> {
    require_clifford(s)?;
    let zero = s.identity().ok_or(Error::NoIdentity)?;
    if !v.get(zero).is_zero() {
        return Err(Error::PreconditionViolated(format!("‖0‖ = {} is not zero", format_q(v.get(zero)))));
    }
    if !validate_pseudonorm(s, v)?.passed {
        return Err(Error::PreconditionViolated("v is not a pseudo-norm".into()));
    }
    let d1 = metrics::d1(&induced_p(s, v)?);
    let (v2, sub) = norm_from_metric(s, &d1)?;
    let n = s.len();
    let mut r = Report::new("bridge roundtrip");
    r.kind = "bridge-report".into();
    r.direction = Some("roundtrip".into());
    r.absorb("metric-to-norm", sub);

    let closed = (0..n).find(|&x| {
        let dx = v.get(s.delta(x));
        *d1.get(x, zero) != v.get(x) - half(dx) || *d1.get(s.delta(x), zero) != half(dx)
    });
    r.check(
        "closed form of d1 to identity",
        "d1(x,0) = ‖x‖ - ‖δx‖/2, d1(δx,0) = ‖δx‖/2",
        n as u64,
        closed.map(|x| Witness::at(&[x], d1.get(x, zero), "=", &(v.get(x) - half(v.get(s.delta(x)))))),
    );
    let diff = (0..n).find(|&x| v2.get(x) != v.get(x));
    r.check("roundtrip", "v'(x) = v(x)", n as u64, diff.map(|x| Witness::at(&[x], v2.get(x), "=", v.get(x))));
    Ok(r.labelled(s.labels()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::generate::*;
    use crate::exact::qi;

    fn val(v: &[i64]) -> Valuation {
        Valuation::new(v.iter().map(|&x| qi(x)).collect()).unwrap()
    }

    #[test]
    fn d1_on_product_is_skew_convex() {
        let s = clifford_product(2, 2).unwrap();
        // (g, m) ↦ 2·[g ≠ 0] + |m|
        let v = Valuation::from_fn(8, |i| qi(2 * (i / 4) as i64 + ((i % 4) as u32).count_ones() as i64)).unwrap();
        assert!(validate_pseudonorm(&s, &v).unwrap().passed);
        let sc = is_skew_convex(&s, &metrics::d1(&induced_p(&s, &v).unwrap())).unwrap();
        assert!(sc.skew_convex() && sc.right_subinvariant && sc.radially_convex);
        let r = verify_dclifford(&s, &v).unwrap();
        assert!(r.passed, "{}", r.to_text());
    }

    #[test]
    fn rejects_non_clifford_and_non_monoid() {
        let i2 = symmetric_inverse(2).unwrap();
        let d = PairMap::from_fn(i2.len(), |_, _| qi(0));
        assert!(matches!(is_skew_convex(&i2, &d), Err(Error::NotClifford(_))));
        let c = cyclic(3).unwrap();
        let d = PairMap::from_fn(3, |x, y| qi((x != y) as i64));
        assert!(norm_from_metric(&c, &d).is_ok());
    }

    #[test]
    fn group_metric_gives_distance_to_identity() {
        let c4 = cyclic(4).unwrap();
        let len = [0, 1, 2, 1];
        let d = PairMap::from_fn(4, |x, y| qi(len[(x + 4 - y) % 4]));
        let (v, r) = norm_from_metric(&c4, &d).unwrap();
        assert!(r.passed, "{}", r.to_text());
        assert_eq!(v, val(&len));
    }

    #[test]
    fn semilattice_factor_two() {
        let c = chain(3).unwrap();
        // Right-subinvariant and radially convex: d(x,y) = |h(x) - h(y)|.
        let h = [0, 1, 3];
        let d = PairMap::from_fn(3, |x, y| qi((h[x] - h[y]).abs()));
        let (v, r) = norm_from_metric(&c, &d).unwrap();
        assert!(r.passed, "{}", r.to_text());
        assert_eq!(v, val(&[0, 2, 6]));
        assert!(r.notes.iter().any(|n| n.contains("factor 2")));
    }

    #[test]
    fn perturbed_metric_is_not_skew_convex() {
        let c = chain(3).unwrap();
        let d =
            PairMap::from_rows(vec![vec![qi(0), qi(1), qi(3)], vec![qi(1), qi(0), qi(3)], vec![qi(3), qi(3), qi(0)]])
                .unwrap();
        let e = norm_from_metric(&c, &d).unwrap_err();
        assert!(matches!(e, Error::NotSkewConvex(_) | Error::NotRightSubinvariant(_)));
    }

    #[test]
    fn roundtrips() {
        let c = chain(3).unwrap();
        assert!(roundtrip_check(&c, &val(&[0, 1, 2])).unwrap().passed);
        assert!(roundtrip_check(&c, &Valuation::zero(3)).unwrap().passed);
        let c5 = cyclic(5).unwrap();
        assert!(roundtrip_check(&c5, &val(&[0, 1, 2, 2, 1])).unwrap().passed);
        let s = clifford_product(3, 2).unwrap();
        let v =
            Valuation::from_fn(12, |i| qi(((i / 4) != 0) as i64 + 3 * ((i % 4) as u32).count_ones() as i64)).unwrap();
        let r = roundtrip_check(&s, &v).unwrap();
        assert!(r.passed, "{}", r.to_text());
        assert!(roundtrip_check(&c, &val(&[1, 1, 2])).is_err());
    }
}
