//! Pseudo-norms on inverse semigroups, the partial pseudo-metric they induce,
//! and the separation ladder.

mod bicyclic;
mod properties;

pub use bicyclic::{verify_bicyclic_pseudonorm, BicyclicNorm, GroupNorm};
pub use properties::{
    check_subinvariance_and_convexity, common_lower_bound, radial_convexity_witness, right_subinvariance_witness,
    verify_induced, verify_norm_properties,
};

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::FiniteInverseSemigroup;
use crate::error::{Error, Result};
use crate::exact::{format_q, Q};
use crate::exact_dispatch;
use crate::kernels::{first_pair, first_triple};
use crate::metrics::{self, SqrtMatrix};
use crate::ordermaps::{quasiorder_leq_p, PairMap};
use crate::report::{Report, Witness};

/// Values `‖x‖ >= 0` indexed by carrier element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    values: Vec<Q>,
}

impl Valuation {
    pub fn new(values: Vec<Q>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| *v < Q::zero()) {
            return Err(Error::NegativeValue(i));
        }
        Ok(Valuation { values })
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> Q) -> Result<Self> {
        Valuation::new((0..n).map(f).collect())
    }

    pub fn zero(n: usize) -> Self {
        Valuation { values: vec![Q::zero(); n] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize) -> &Q {
        &self.values[x]
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }
}

fn check_size(s: &FiniteInverseSemigroup, v: &Valuation) -> Result<()> {
    if s.len() != v.len() {
        return Err(Error::SizeMismatch { expected: s.len(), found: v.len() });
    }
    Ok(())
}

/// `p(x,y) = ‖x + y*‖`.
pub fn induced_p(s: &FiniteInverseSemigroup, v: &Valuation) -> Result<PairMap> {
    check_size(s, v)?;
    Ok(PairMap::from_fn(s.len(), |x, y| v.get(s.add_inv(x, y)).clone()))
}

/// `p*(x,y) = ‖x* + y‖`.
pub fn induced_p_star(s: &FiniteInverseSemigroup, v: &Valuation) -> Result<PairMap> {
    check_size(s, v)?;
    Ok(PairMap::from_fn(s.len(), |x, y| v.get(s.add(s.inv(x), y)).clone()))
}

/// `t(x,y) = ‖x*‖ + ‖y‖ - ‖x* + y‖`.
pub fn t_defect(s: &FiniteInverseSemigroup, v: &Valuation, x: usize, y: usize) -> Q {
    v.get(s.inv(x)) + v.get(y) - v.get(s.add(s.inv(x), y))
}

/// Checks the three pseudo-norm axioms, and `‖0‖ = 0` on monoids.
pub fn validate_pseudonorm(s: &FiniteInverseSemigroup, v: &Valuation) -> Result<Report> {
    let p = induced_p(s, v)?;
    let n = s.len();
    let mut r = Report::new("verify pseudonorm");
    r.check(
        "axiom 1: symmetry",
        "‖x + y*‖ = ‖y + x*‖",
        (n * n) as u64,
        p.symmetry_witness().map(|(x, y)| Witness::at(&[x, y], p.get(x, y), "=", p.get(y, x))),
    );
    let small = first_pair(n, |x, y| p.w(x) > p.get(x, y));
    r.check(
        "axiom 2: small self-distance",
        "‖x + x*‖ <= ‖x + y*‖",
        (n * n) as u64,
        small.map(|(x, y)| Witness::at(&[x, y], p.w(x), "<=", p.get(x, y))),
    );
    r.check(
        "axiom 3: submodularity",
        "‖x + y*‖ + ‖z + z*‖ <= ‖x + z*‖ + ‖z + y*‖",
        (n as u64).pow(3),
        p.submodularity_witness().map(|t| p.submodularity_failure(t)),
    );
    match s.identity() {
        Some(z) => {
            r.check(
                "norm of identity",
                "‖0‖ = 0",
                1,
                (!v.get(z).is_zero()).then(|| Witness::at(&[z], v.get(z), "=", &Q::zero())),
            );
        }
        None => {
            r.note("not a monoid: no identity condition, and no identity is adjoined");
        }
    }
    Ok(r.labelled(s.labels()))
}

pub fn is_pseudonorm(s: &FiniteInverseSemigroup, v: &Valuation) -> bool {
    validate_pseudonorm(s, v).is_ok_and(|r| r.passed)
}

/// First `(e, x)` with `‖e + x‖ != ‖x + e‖`.
pub fn weak_permutability_witness(s: &FiniteInverseSemigroup, v: &Valuation) -> Option<(usize, usize)> {
    s.idempotents()
        .iter()
        .find_map(|&e| (0..s.len()).find(|&x| v.get(s.add(e, x)) != v.get(s.add(x, e))).map(|x| (e, x)))
}

pub fn cyclic_permutability_witness(s: &FiniteInverseSemigroup, v: &Valuation) -> Option<(usize, usize)> {
    first_pair(s.len(), |x, y| x < y && v.get(s.add(x, y)) != v.get(s.add(y, x)))
}

/// `(weak, cyclic)` permutability.
pub fn permutability(s: &FiniteInverseSemigroup, v: &Valuation) -> (bool, bool) {
    (weak_permutability_witness(s, v).is_none(), cyclic_permutability_witness(s, v).is_none())
}

/// `‖x‖_e = ‖x‖ - ‖e‖` on `S_e`. Returns the local monoid, its embedding
/// into `S`, and the restricted values; a negative value means `v` was not
/// a pseudo-norm.
pub fn restricted_norm(
    s: &FiniteInverseSemigroup,
    v: &Valuation,
    e: usize,
) -> Result<(FiniteInverseSemigroup, Vec<usize>, Valuation)> {
    check_size(s, v)?;
    let (se, emb) = s.local_monoid(e)?;
    let values: Vec<Q> = emb.iter().map(|&x| v.get(x) - v.get(e)).collect();
    if let Some(i) = values.iter().position(|q| *q < Q::zero()) {
        return Err(Error::NegativeValue(emb[i]));
    }
    Ok((se, emb, Valuation { values }))
}

/// First `(e, x)` with `x ∈ S_e`, `x != e` and `‖x‖ = ‖e‖`.
pub fn separation_witness(s: &FiniteInverseSemigroup, v: &Valuation) -> Option<(usize, usize)> {
    s.idempotents().iter().find_map(|&e| {
        (0..s.len()).find(|&x| x != e && s.add(x, e) == x && s.add(e, x) == x && v.get(x) == v.get(e)).map(|x| (e, x))
    })
}

/// Separation over every local monoid. Meaningful for pseudo-norms.
pub fn is_norm(s: &FiniteInverseSemigroup, v: &Valuation) -> bool {
    separation_witness(s, v).is_none()
}

/// The intrinsic pseudo-metrics `d₀`, `d₁`, `d₂` of `p(x,y) = ‖x + y*‖`.
pub fn induced_metrics(s: &FiniteInverseSemigroup, v: &Valuation) -> Result<(PairMap, PairMap, SqrtMatrix)> {
    let p = induced_p(s, v)?;
    let ppm = metrics::validate_ppm(&p)?;
    Ok((metrics::d0(&p), metrics::d1(&p), metrics::d2(&ppm)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormClassification {
    pub is_pseudonorm: bool,
    pub weakly_permutable: bool,
    pub cyclically_permutable: bool,
    pub is_norm: bool,
    pub d1_is_metric: bool,
    pub p_is_partial_metric: bool,
    pub leq_p_antisymmetric: bool,
    pub leq_p_equals_leq_s: bool,
    /// `<=_{p*}` agrees with `<=_p`; computed when the ladder flags hold.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pstar_order_agrees: Option<bool>,
    pub witnesses: BTreeMap<String, Witness>,
}

impl NormClassification {
    pub fn ladder(&self) -> [bool; 5] {
        [self.is_norm, self.d1_is_metric, self.p_is_partial_metric, self.leq_p_antisymmetric, self.leq_p_equals_leq_s]
    }

    /// Under weak permutability the five ladder flags coincide.
    pub fn ladder_agrees(&self) -> bool {
        let l = self.ladder();
        !self.weakly_permutable || l.iter().all(|&b| b == l[0])
    }
}

pub fn classify(s: &FiniteInverseSemigroup, v: &Valuation) -> Result<NormClassification> {
    let p = induced_p(s, v)?;
    let labels = s.labels();
    let mut witnesses = BTreeMap::new();
    let mut put = |k: &str, w: Witness| {
        witnesses.insert(k.to_string(), w.labelled(labels));
    };
    let pn = validate_pseudonorm(s, v)?;
    if let Some(w) = pn.failures().next().and_then(|a| a.witness.clone()) {
        put("is_pseudonorm", w);
    }
    let weak = weak_permutability_witness(s, v);
    if let Some((e, x)) = weak {
        put("weakly_permutable", Witness::at(&[e, x], v.get(s.add(e, x)), "=", v.get(s.add(x, e))));
    }
    let cyc = cyclic_permutability_witness(s, v);
    if let Some((x, y)) = cyc {
        put("cyclically_permutable", Witness::at(&[x, y], v.get(s.add(x, y)), "=", v.get(s.add(y, x))));
    }
    let sep = separation_witness(s, v);
    if let Some((e, x)) = sep {
        put("is_norm", Witness::at(&[e, x], v.get(x), "!=", v.get(e)));
    }
    let d1 = metrics::d1(&p);
    let zero_pair = first_pair(s.len(), |x, y| x != y && d1.get(x, y).is_zero());
    let d1_metric = metrics::is_pseudometric(&d1) && zero_pair.is_none();
    if let Some((x, y)) = zero_pair {
        put("d1_is_metric", Witness::at(&[x, y], d1.get(x, y), "!=", &Q::zero()));
    }
    let pm_sep = metrics::partial_metric_separation_witness(&p);
    let p_pm = metrics::validate_ppm(&p).is_ok() && pm_sep.is_none();
    if let Some((x, y)) = pm_sep {
        put("p_is_partial_metric", Witness::raw(&[x, y], format_q(p.w(x)), "= p(x,y) =", format_q(p.w(y))));
    }
    let leq_p = quasiorder_leq_p(&p);
    let anti = leq_p.antisymmetry_witness();
    if let Some((x, y)) = anti {
        put("leq_p_antisymmetric", Witness::raw(&[x, y], "x <=_p y".into(), "and", "y <=_p x".into()));
    }
    let leq_s = s.natural_order();
    let diff = leq_p.first_difference(&leq_s);
    if let Some((x, y)) = diff {
        put(
            "leq_p_equals_leq_s",
            Witness::raw(&[x, y], format!("<=_p: {}", leq_p.holds(x, y)), "=", format!("<=_S: {}", leq_s.holds(x, y))),
        );
    }
    let mut c = NormClassification {
        is_pseudonorm: pn.passed,
        weakly_permutable: weak.is_none(),
        cyclically_permutable: cyc.is_none(),
        is_norm: sep.is_none(),
        d1_is_metric: d1_metric,
        p_is_partial_metric: p_pm,
        leq_p_antisymmetric: anti.is_none(),
        leq_p_equals_leq_s: diff.is_none(),
        pstar_order_agrees: None,
        witnesses,
    };
    if c.weakly_permutable && c.ladder().iter().all(|&b| b) {
        let ps = induced_p_star(s, v)?;
        c.pstar_order_agrees = Some(quasiorder_leq_p(&ps) == leq_p);
    }
    Ok(c)
}

/// Report form of [`classify`]: the ladder must agree under weak
/// permutability, and `<=_{p*} = <=_p` when it holds.
pub fn classification_report(s: &FiniteInverseSemigroup, v: &Valuation) -> Result<(NormClassification, Report)> {
    let c = classify(s, v)?;
    let mut r = Report::new("classify");
    let l = c.ladder();
    let id = "norm <=> d1 metric <=> p partial metric <=> <=_p antisymmetric <=> <=_p = <=_S";
    if c.weakly_permutable {
        r.check(
            "separation ladder agrees",
            id,
            5,
            (!c.ladder_agrees()).then(|| Witness::raw(&[], format!("{:?}", &l[..1]), "=", format!("{:?}", &l[1..]))),
        );
    } else {
        r.vacuous("separation ladder agrees", id);
        r.note("not weakly permutable: the ladder need not agree");
    }
    match c.pstar_order_agrees {
        Some(ok) => {
            r.check(
                "<=_p* agrees with <=_p",
                "x <=_p y <=> x <=_p* y",
                (s.len() * s.len()) as u64,
                (!ok).then(|| Witness::raw(&[], "false".into(), "=", "true".into())),
            );
        }
        None => {
            r.vacuous("<=_p* agrees with <=_p", "x <=_p y <=> x <=_p* y");
        }
    }
    Ok((c, r))
}

/// `(S_e, ‖·‖_e)` is a pseudo-normed monoid for every idempotent `e`.
pub fn verify_restricted_norms(s: &FiniteInverseSemigroup, v: &Valuation) -> Result<Report> {
    let mut r = Report::new("restricted norms");
    let mut bad = None;
    for &e in s.idempotents() {
        let failure = match restricted_norm(s, v, e) {
            Err(Error::NegativeValue(x)) => Some(Witness::at(&[x, e], v.get(x), ">=", v.get(e)).labelled(s.labels())),
            Err(err) => return Err(err),
            Ok((se, _, ve)) => {
                let sub = validate_pseudonorm(&se, &ve)?;
                let first = sub.failures().next().and_then(|a| a.witness.clone());
                first
            }
        };
        if failure.is_some() {
            bad = failure;
            break;
        }
    }
    r.check(
        "restricted norm is a pseudo-norm",
        "‖x‖_e = ‖x‖ - ‖e‖ >= 0 is a pseudo-norm on S_e",
        s.idempotents().len() as u64,
        bad,
    );
    Ok(r)
}

/// The axioms, then (when they hold) every consequence checked by this
/// module: properties, induced metrics, restricted norms, subinvariance
/// and convexity.
pub fn pseudonorm_suite(s: &FiniteInverseSemigroup, v: &Valuation) -> Result<Report> {
    let mut r = Report::new("verify pseudonorm");
    let axioms = validate_pseudonorm(s, v)?;
    let ok = axioms.passed;
    r.absorb("", axioms);
    if !ok {
        r.note("axioms fail; consequences not evaluated");
        return Ok(r);
    }
    r.absorb("", verify_norm_properties(s, v)?);
    r.absorb("", verify_induced(s, v)?);
    r.absorb("", verify_restricted_norms(s, v)?);
    r.absorb("", check_subinvariance_and_convexity(s, v)?);
    Ok(r)
}

/// [`pseudonorm_suite`] plus separation and the classification ladder.
pub fn norm_suite(s: &FiniteInverseSemigroup, v: &Valuation) -> Result<Report> {
    let mut r = pseudonorm_suite(s, v)?;
    r.command = "verify norm".into();
    if !r.passed {
        return Ok(r);
    }
    let sep =
        separation_witness(s, v).map(|(e, x)| Witness::at(&[e, x], v.get(x), "!=", v.get(e)).labelled(s.labels()));
    r.check("separation", "x ∈ S_e, ‖x‖_e = 0 => x = e", s.len() as u64, sep);
    let (_, ladder) = classification_report(s, v)?;
    r.absorb("", ladder);
    Ok(r)
}

/// First triple `(x, y, z)` with `d(x + y*, z + y*) > d(x, z)`.
pub(crate) fn subinvariance_kernel(s: &FiniteInverseSemigroup, d: &PairMap) -> Option<(usize, usize, usize)> {
    let n = s.len();
    exact_dispatch!([d.values()], |v| first_triple(n, |x, y, z| {
        v[s.add_inv(x, y) * n + s.add_inv(z, y)] > v[x * n + z]
    }))
}
