//! Exhaustive checks of the consequences of the pseudo-norm axioms.

use num_traits::Zero;

use super::{induced_p, subinvariance_kernel, t_defect, Valuation};
use crate::algebra::{FiniteInverseSemigroup, Relation};
use crate::error::Result;
use crate::exact::{format_q, max_q, Scalar, Q};
use crate::exact_dispatch;
use crate::kernels::{first_pair, first_quad, first_triple};
use crate::metrics::{self, check_pseudometric};
use crate::ordermaps::{quasiorder_leq_p, PairMap};
use crate::report::{Report, Witness};

// Quadruple searches beyond this size are reported as skipped.
const MAX_QUAD_ELEMENTS: usize = 128;

fn sq(n: usize) -> u64 {
    (n as u64).pow(2)
}

fn cube(n: usize) -> u64 {
    (n as u64).pow(3)
}

/// The seven consequences of the axioms, subadditivity and `t >= 0` when
/// `E(S)` is filtered, and the homogeneity remark.
pub fn verify_norm_properties(s: &FiniteInverseSemigroup, v: &Valuation) -> Result<Report> {
    let p = induced_p(s, v)?;
    let n = s.len();
    let nv = |x: usize| v.get(x);
    let dv = |x: usize| v.get(s.delta(x));
    let leq_s = s.natural_order();
    let leq_p = quasiorder_leq_p(&p);
    let mut r = Report::new("norm properties");

    let a = first_pair(n, |x, y| leq_s.holds(x, y) && !leq_p.holds(x, y));
    r.check(
        "(1) natural order refines <=_p",
        "x <=_S y => x <=_p y",
        sq(n),
        a.map(|(x, y)| Witness::raw(&[x, y], "x <=_S y".into(), "=>", "x <=_p y".into())),
    );
    let a = first_pair(n, |x, y| leq_p.holds(x, y) && nv(x) > nv(y));
    r.check(
        "(2) norm is <=_p-monotone",
        "x <=_p y => ‖x‖ <= ‖y‖",
        sq(n),
        a.map(|(x, y)| Witness::at(&[x, y], nv(x), "<=", nv(y))),
    );
    let a = (0..n).find(|&x| nv(s.inv(x)) != nv(x));
    r.check(
        "(3) inverse preserves norm",
        "‖x*‖ = ‖x‖",
        n as u64,
        a.map(|x| Witness::at(&[x], nv(s.inv(x)), "=", nv(x))),
    );
    let a = (0..n).find(|&x| dv(x) > nv(x));
    r.check("(4) delta contracts", "‖δx‖ <= ‖x‖", n as u64, a.map(|x| Witness::at(&[x], dv(x), "<=", nv(x))));
    let a = first_pair(n, |x, y| max_q(dv(x), dv(y)) > nv(s.add_inv(x, y)));
    r.check(
        "(5) max bound",
        "‖δx‖ ∨ ‖δy‖ <= ‖x + y*‖",
        sq(n),
        a.map(|(x, y)| Witness::at(&[x, y], max_q(dv(x), dv(y)), "<=", nv(s.add_inv(x, y)))),
    );
    let two = |q: &Q| q + q;
    let a = first_pair(n, |x, y| dv(x) + dv(y) > two(nv(s.add_inv(x, y))));
    r.check(
        "(6) sum bound",
        "‖δx‖ + ‖δy‖ <= 2‖x + y*‖",
        sq(n),
        a.map(|(x, y)| Witness::at(&[x, y], &(dv(x) + dv(y)), "<=", &two(nv(s.add_inv(x, y))))),
    );
    let t = |x, y| t_defect(s, v, x, y);
    let a = first_pair(n, |x, y| t(s.delta(x), s.delta(y)) > t(x, y));
    r.check(
        "(7) defect decreases under delta",
        "t(δx, δy) <= t(x, y)",
        sq(n),
        a.map(|(x, y)| Witness::at(&[x, y], &t(s.delta(x), s.delta(y)), "<=", &t(x, y))),
    );

    let sub_id = "‖x + y‖ <= ‖x‖ + ‖y‖";
    let sub = first_pair(n, |x, y| *nv(s.add(x, y)) > nv(x) + nv(y));
    let neg_t = first_pair(n, |x, y| t(x, y) < Q::zero());
    if s.idempotents_filtered() {
        r.check(
            "subadditivity",
            sub_id,
            sq(n),
            sub.map(|(x, y)| Witness::at(&[x, y], nv(s.add(x, y)), "<=", &(nv(x) + nv(y)))),
        );
        r.check(
            "nonnegative defect",
            "t(x, y) >= 0",
            sq(n),
            neg_t.map(|(x, y)| Witness::at(&[x, y], &t(x, y), ">=", &Q::zero())),
        );
    } else {
        r.vacuous("subadditivity", sub_id);
        r.vacuous("nonnegative defect", "t(x, y) >= 0");
        r.note(format!("E(S) not filtered; subadditivity {}", if sub.is_none() { "holds anyway" } else { "fails" }));
    }

    let hom_id = "n‖x‖ = ‖nx‖ for all n => ‖e‖ = 0 on idempotents";
    if is_homogeneous(s, v) {
        let a = s.idempotents().iter().copied().find(|&e| !nv(e).is_zero());
        r.check(
            "homogeneous idempotents vanish",
            hom_id,
            s.idempotents().len() as u64,
            a.map(|e| Witness::at(&[e], nv(e), "=", &Q::zero())),
        );
    } else {
        r.vacuous("homogeneous idempotents vanish", hom_id);
    }
    Ok(r.labelled(s.labels()))
}

/// `m‖x‖ = ‖mx‖` for every `x` and every `m` up to the point where the
/// powers of `x` start repeating (beyond it both sides are determined).
fn is_homogeneous(s: &FiniteInverseSemigroup, v: &Valuation) -> bool {
    (0..s.len()).all(|x| {
        let mut seen = vec![false; s.len()];
        let (mut pow, mut m) = (x, 1i64);
        loop {
            if *v.get(pow) != v.get(x) * Q::from_integer(m.into()) {
                return false;
            }
            if seen[pow] {
                return true;
            }
            seen[pow] = true;
            pow = s.add(pow, x);
            m += 1;
        }
    })
}

/// Pseudo-metric assertions for `d₀`, `d₁` and `d₂` of the induced map.
pub fn verify_induced(s: &FiniteInverseSemigroup, v: &Valuation) -> Result<Report> {
    let p = induced_p(s, v)?;
    let mut r = Report::new("induced metrics");
    check_pseudometric(&mut r, "d0", &metrics::d0(&p));
    check_pseudometric(&mut r, "d1", &metrics::d1(&p));
    r.absorb("", metrics::verify_d2_triangle(&p));
    Ok(r.labelled(s.labels()))
}

/// First `(x, y, z)` with `d(x + y*, z + y*) > d(x, z)`.
pub fn right_subinvariance_witness(s: &FiniteInverseSemigroup, d: &PairMap) -> Option<(usize, usize, usize)> {
    subinvariance_kernel(s, d)
}

/// First `x <= y <= z` in `leq` with `d(x,z) != d(x,y) + d(y,z)`.
pub fn radial_convexity_witness(d: &PairMap, leq: &Relation) -> Option<(usize, usize, usize)> {
    let n = d.len();
    exact_dispatch!([d.values()], |v| first_triple(n, |x, y, z| {
        leq.holds(x, y) && leq.holds(y, z) && v[x * n + z] != v[x * n + y].add(&v[y * n + z])
    }))
}

/// Some `z` with `z <=_S x` and `z <=_S y`.
pub fn common_lower_bound(leq_s: &Relation, x: usize, y: usize) -> Option<usize> {
    (0..leq_s.len()).find(|&z| leq_s.holds(z, x) && leq_s.holds(z, y))
}

fn subinvariance_assertion(r: &mut Report, s: &FiniteInverseSemigroup, label: &str, d: &PairMap) {
    let w = right_subinvariance_witness(s, d)
        .map(|(x, y, z)| Witness::at(&[x, y, z], d.get(s.add_inv(x, y), s.add_inv(z, y)), "<=", d.get(x, z)));
    r.check(&format!("{label} right-subinvariant"), "d(x + y*, z + y*) <= d(x, z)", cube(s.len()), w);
}

fn radial_assertion(r: &mut Report, label: &str, d: &PairMap, leq: &Relation) {
    let w = radial_convexity_witness(d, leq)
        .map(|(x, y, z)| Witness::at(&[x, y, z], d.get(x, z), "=", &(d.get(x, y) + d.get(y, z))));
    r.check(&format!("{label} radially convex"), "x <=_S y <=_S z => d(x,z) = d(x,y) + d(y,z)", cube(d.len()), w);
}

/// Right-subinvariance and radial convexity of `d₀`, `d₁`; `d₀(x,e) = ‖x‖_e`;
/// `d(x,y) = d(δx,δy)` below a common lower bound; joint continuity of the
/// addition when the norm is cyclically permutable; the δ-continuity
/// inequality chain when it is weakly permutable.
pub fn check_subinvariance_and_convexity(s: &FiniteInverseSemigroup, v: &Valuation) -> Result<Report> {
    let p = induced_p(s, v)?;
    let n = s.len();
    let (m0, m1, rad) = (metrics::d0(&p), metrics::d1(&p), metrics::d2_squared(&p));
    let leq_s = s.natural_order();
    let mut r = Report::new("subinvariance and convexity");

    subinvariance_assertion(&mut r, s, "d0", &m0);
    subinvariance_assertion(&mut r, s, "d1", &m1);
    radial_assertion(&mut r, "d0", &m0, &leq_s);
    radial_assertion(&mut r, "d1", &m1, &leq_s);
    match right_subinvariance_witness(s, &rad) {
        None => r.note("d2 is right-subinvariant on this instance"),
        Some((x, y, z)) => r.note(format!(
            "d2 is not right-subinvariant: {}",
            Witness::at(&[x, y, z], rad.get(s.add_inv(x, y), s.add_inv(z, y)), "<=", rad.get(x, z))
                .labelled(s.labels())
                .elements
                .join(", ")
        )),
    };

    let mut local = 0u64;
    let mut bad = None;
    'outer: for &e in s.idempotents() {
        for x in 0..n {
            if s.add(x, e) == x && s.add(e, x) == x {
                local += 1;
                let rhs = v.get(x) - v.get(e);
                if *m0.get(x, e) != rhs {
                    bad = Some(Witness::at(&[x, e], m0.get(x, e), "=", &rhs));
                    break 'outer;
                }
            }
        }
    }
    r.check("d0 to idempotent is restricted norm", "d0(x, e) = ‖x‖_e on S_e", local, bad);

    let lower: Vec<bool> = (0..n * n).map(|i| common_lower_bound(&leq_s, i / n, i % n).is_some()).collect();
    for (label, d) in [("d0", &m0), ("d1", &m1), ("d2 squared", &rad)] {
        let a = first_pair(n, |x, y| lower[x * n + y] && d.get(x, y) != d.get(s.delta(x), s.delta(y)));
        r.check(
            &format!("{label} reduces to delta below a common lower bound"),
            "z <=_S x, z <=_S y => d(x,y) = d(δx,δy)",
            sq(n),
            a.map(|(x, y)| Witness::at(&[x, y], d.get(x, y), "=", d.get(s.delta(x), s.delta(y)))),
        );
    }

    let (weak, cyclic) = super::permutability(s, v);
    let joint_id = "d1(x1 + x2, y1 + y2) <= d1(x1, y1) + d1(x2, y2)";
    if !cyclic {
        r.vacuous("joint continuity of addition", joint_id);
    } else if n > MAX_QUAD_ELEMENTS {
        r.vacuous("joint continuity of addition", joint_id);
        r.note(format!("joint continuity skipped: more than {MAX_QUAD_ELEMENTS} elements"));
    } else {
        let w = exact_dispatch!([m1.values()], |d| first_quad(n, |x1, x2, y1, y2| {
            d[s.add(x1, x2) * n + s.add(y1, y2)] > d[x1 * n + y1].add(&d[x2 * n + y2])
        }))
        .map(|(x1, x2, y1, y2)| {
            Witness::at(
                &[x1, x2, y1, y2],
                m1.get(s.add(x1, x2), s.add(y1, y2)),
                "<=",
                &(m1.get(x1, y1) + m1.get(x2, y2)),
            )
        });
        r.check("joint continuity of addition", joint_id, (n as u64).pow(4), w);
    }

    let delta_id = "‖δx‖ <= ‖δy + δx‖ <= 2‖y + x*‖ - ‖δx‖";
    if weak {
        let dv = |x: usize| v.get(s.delta(x));
        let mid = |x: usize, y: usize| v.get(s.add(s.delta(y), s.delta(x)));
        let a = first_pair(n, |x, y| {
            let m = mid(x, y);
            dv(x) > m || *m > v.get(s.add_inv(y, x)) * Q::from_integer(2.into()) - dv(x)
        });
        r.check(
            "delta continuity chain",
            delta_id,
            sq(n),
            a.map(|(x, y)| {
                let hi = v.get(s.add_inv(y, x)) * Q::from_integer(2.into()) - dv(x);
                Witness::raw(&[x, y], format!("{} <= {}", format_q(dv(x)), format_q(mid(x, y))), "<=", format_q(&hi))
            }),
        );
    } else {
        r.vacuous("delta continuity chain", delta_id);
    }
    Ok(r.labelled(s.labels()))
}
