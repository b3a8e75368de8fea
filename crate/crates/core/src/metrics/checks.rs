//! Exhaustive verification reports for partial pseudo-metrics and
//! pseudo-interlaced spaces.

use num_traits::Zero;

use super::sqrt::{le_two_sqrt, sqrt_le_sum};
use super::*;
use crate::exact::{format_q, Scalar};
use crate::exact_dispatch;
use crate::ordermaps::quasiorder_leq_p;
use crate::report::{Report, Witness};

// Magnitude limit for kernels that square products of values.
const SQUARED_BITS: u64 = 28;

fn cube(n: usize) -> u64 {
    (n as u64).pow(3)
}

fn sq(n: usize) -> u64 {
    (n as u64).pow(2)
}

/// Adds the pseudo-metric axioms of `d` to `r` under the given label.
pub fn check_pseudometric(r: &mut Report, label: &str, d: &PairMap) {
    let n = d.len();
    let diag = (0..n).find(|&x| !d.get(x, x).is_zero());
    r.check(
        &format!("{label} zero diagonal"),
        "d(x,x) = 0",
        n as u64,
        diag.map(|x| Witness::at(&[x], d.get(x, x), "=", &Q::zero())),
    );
    r.check(
        &format!("{label} symmetric"),
        "d(x,y) = d(y,x)",
        sq(n),
        d.symmetry_witness().map(|(x, y)| Witness::at(&[x, y], d.get(x, y), "=", d.get(y, x))),
    );
    let tri = exact_dispatch!([d.values()], |v| first_triple(n, |x, y, z| {
        v[x * n + z] > v[x * n + y].add(&v[y * n + z])
    }));
    r.check(
        &format!("{label} triangle inequality"),
        "d(x,z) <= d(x,y) + d(y,z)",
        cube(n),
        tri.map(|(x, y, z)| Witness::at(&[x, y, z], d.get(x, z), "<=", &(d.get(x, y) + d.get(y, z)))),
    );
}

fn radial_violation(d: &PairMap, leq: &Relation) -> Option<(usize, usize, usize)> {
    let n = d.len();
    exact_dispatch!([d.values()], |v| first_triple(n, |x, y, z| {
        leq.holds(x, y) && leq.holds(y, z) && v[x * n + z] != v[x * n + y].add(&v[y * n + z])
    }))
}

/// Adds `d(x,z) = d(x,y) + d(y,z)` along chains `x <= y <= z` of `leq`.
pub(crate) fn check_radial(r: &mut Report, label: &str, d: &PairMap, leq: &Relation) {
    r.check(
        &format!("{label} radially convex"),
        "x <= y <= z => d(x,z) = d(x,y) + d(y,z)",
        cube(d.len()),
        radial_violation(d, leq)
            .map(|(x, y, z)| Witness::at(&[x, y, z], d.get(x, z), "=", &(d.get(x, y) + d.get(y, z)))),
    );
}

fn dist2_kernel<S: Scalar>(n: usize, v: &[S]) -> Option<(usize, usize, usize)> {
    first_triple(n, |x, y, z| {
        let (wx, wy, wz) = (&v[x * n + x], &v[y * n + y], &v[z * n + z]);
        let (pxz, pyz) = (&v[x * n + z], &v[y * n + z]);
        let gamma = pxz.sub(wz).mul(&pyz.sub(wz));
        let theta = wz.sub(wx).mul(&wy.sub(wz));
        let delta = pxz.mul(pxz).sub(&wx.mul(wz)).mul(&pyz.mul(pyz).sub(&wy.mul(wz)));
        !le_two_sqrt(&gamma.double().add(&theta), &delta)
    })
}

/// First triple violating `2Γ + Θ <= 2√Δ`.
pub fn lemma_dist2_witness(p: &PairMap) -> Option<(usize, usize, usize)> {
    let n = p.len();
    exact_dispatch!(@bits SQUARED_BITS, [p.values()], |v| dist2_kernel(n, v))
}

fn dist2_terms(p: &PairMap, x: usize, y: usize, z: usize) -> (Q, Q) {
    let (wx, wy, wz) = (p.w(x), p.w(y), p.w(z));
    let (pxz, pyz) = (p.get(x, z), p.get(y, z));
    let gamma = (pxz - wz) * (pyz - wz);
    let theta = (wz - wx) * (wy - wz);
    let delta = (pxz * pxz - wx * wz) * (pyz * pyz - wy * wz);
    (gamma * Q::from_integer(2.into()) + theta, delta)
}

pub fn verify_lemma_dist2(p: &PairMap) -> Report {
    let mut r = Report::new("lemma dist2");
    add_lemma_dist2(&mut r, p);
    r
}

fn add_lemma_dist2(r: &mut Report, p: &PairMap) {
    let w = lemma_dist2_witness(p).map(|(x, y, z)| {
        let (lhs, delta) = dist2_terms(p, x, y, z);
        Witness::raw(&[x, y, z], format_q(&lhs), "<=", format!("2 sqrt({})", format_q(&delta)))
    });
    r.check("d2 lemma", "2 Gamma + Theta <= 2 sqrt(Delta)", cube(p.len()), w);
}

/// First triple violating the d₂ triangle inequality, from the radicands.
pub fn d2_triangle_witness(p: &PairMap) -> Option<(usize, usize, usize)> {
    let n = p.len();
    exact_dispatch!(@bits SQUARED_BITS, [p.values()], |v| {
        let rad: Vec<_> = (0..n * n)
            .map(|i| v[i].mul(&v[i]).sub(&v[(i / n) * n + i / n].mul(&v[(i % n) * n + i % n])))
            .collect();
        first_triple(n, |x, y, z| !sqrt_le_sum(&rad[x * n + z], &rad[x * n + y], &rad[y * n + z]))
    })
}

pub fn verify_d2_triangle(p: &PairMap) -> Report {
    let mut r = Report::new("d2 triangle");
    add_d2(&mut r, p);
    r
}

fn add_d2(r: &mut Report, p: &PairMap) {
    let n = p.len();
    let rad = d2_squared(p);
    let neg = first_pair(n, |x, y| *rad.get(x, y) < Q::zero());
    r.check(
        "d2 radicand nonnegative",
        "p(x,y)^2 - w(x) w(y) >= 0",
        sq(n),
        neg.map(|(x, y)| Witness::at(&[x, y], rad.get(x, y), ">=", &Q::zero())),
    );
    let diag = (0..n).find(|&x| !rad.get(x, x).is_zero());
    r.check(
        "d2 zero diagonal and symmetric",
        "d2(x,x) = 0, d2(x,y) = d2(y,x)",
        sq(n),
        diag.map(|x| Witness::at(&[x], rad.get(x, x), "=", &Q::zero()))
            .or_else(|| rad.symmetry_witness().map(|(x, y)| Witness::at(&[x, y], rad.get(x, y), "=", rad.get(y, x)))),
    );
    let tri = d2_triangle_witness(p).map(|(x, y, z)| {
        Witness::raw(
            &[x, y, z],
            format!("sqrt({})", format_q(rad.get(x, z))),
            "<=",
            format!("sqrt({}) + sqrt({})", format_q(rad.get(x, y)), format_q(rad.get(y, z))),
        )
    });
    r.check("d2 triangle inequality", "d2(x,z) <= d2(x,y) + d2(y,z)", cube(n), tri);
}

/// `d₀ <= 2 d₁ <= 2 (d₀ ∧ d₂)` for all pairs, with `d₁ <= d₂` compared squared.
pub fn check_metric_chain(p: &PairMap) -> Report {
    let mut r = Report::new("metric chain");
    add_metric_chain(&mut r, p);
    r
}

fn add_metric_chain(r: &mut Report, p: &PairMap) {
    let n = p.len();
    let (m0, m1, rad) = (d0(p), d1(p), d2_squared(p));
    let two = Q::from_integer(2.into());
    let a = first_pair(n, |x, y| *m0.get(x, y) > m1.get(x, y) * &two);
    r.check(
        "d0 <= 2 d1",
        "d0(x,y) <= 2 d1(x,y)",
        sq(n),
        a.map(|(x, y)| Witness::at(&[x, y], m0.get(x, y), "<=", &(m1.get(x, y) * &two))),
    );
    let b = first_pair(n, |x, y| m1.get(x, y) > m0.get(x, y));
    r.check(
        "d1 <= d0",
        "2 d1(x,y) <= 2 d0(x,y)",
        sq(n),
        b.map(|(x, y)| Witness::at(&[x, y], m1.get(x, y), "<=", m0.get(x, y))),
    );
    let c = first_pair(n, |x, y| {
        let v = m1.get(x, y);
        *v > Q::zero() && (*rad.get(x, y) < Q::zero() || v * v > *rad.get(x, y))
    });
    r.check(
        "d1 <= d2",
        "2 d1(x,y) <= 2 d2(x,y), squared",
        sq(n),
        c.map(|(x, y)| Witness::raw(&[x, y], format!("({})^2", format_q(m1.get(x, y))), "<=", format_q(rad.get(x, y)))),
    );
}

/// `d(x,y) <= w(y) - w(x)` whenever `x <=_{p,q} y`.
pub fn check_order_metric_compat(space: &InterlacedSpace) -> Report {
    let mut r = Report::new("order metric compatibility");
    add_order_metric_compat(&mut r, space);
    r
}

fn add_order_metric_compat(r: &mut Report, space: &InterlacedSpace) {
    let leq = order_pq(space);
    let d = intrinsic_dpq(space);
    let pairs = leq.pairs().count() as u64;
    let bad = leq.pairs().find(|&(x, y)| *d.get(x, y) > space.w(y) - space.w(x));
    let (name, id) = ("order and metric compatible", "x <=_pq y => d(x,y) <= w(y) - w(x)");
    if pairs == 0 {
        r.vacuous(name, id);
    } else {
        r.check(name, id, pairs, bad.map(|(x, y)| Witness::at(&[x, y], d.get(x, y), "<=", &(space.w(y) - space.w(x)))));
    }
}

fn add_ppm_axioms(r: &mut Report, p: &PairMap) -> bool {
    let n = p.len();
    r.check(
        "symmetric",
        "p(x,y) = p(y,x)",
        sq(n),
        p.symmetry_witness().map(|(x, y)| Witness::at(&[x, y], p.get(x, y), "=", p.get(y, x))),
    );
    r.check(
        "submodular",
        "p(x,y) + p(z,z) <= p(x,z) + p(z,y)",
        cube(n),
        p.submodularity_witness().map(|t| p.submodularity_failure(t)),
    );
    let neg = (0..n).find(|&x| *p.w(x) < Q::zero());
    r.check(
        "nonnegative self-distance",
        "0 <= w(x)",
        n as u64,
        neg.map(|x| Witness::at(&[x], &Q::zero(), "<=", p.w(x))),
    );
    let dom = first_pair(n, |x, y| p.w(x) > p.get(x, y));
    r.check(
        "small self-distance",
        "w(x) <= p(x,y)",
        sq(n),
        dom.map(|(x, y)| Witness::at(&[x, y], p.w(x), "<=", p.get(x, y))),
    );
    r.passed
}

/// Full verification of a candidate partial pseudo-metric: the axioms, the
/// adjoints `q₀`, `q₁`, the intrinsic pseudo-metrics `d₀`, `d₁`, `d₂` with
/// their radial convexity, the d₂ lemma, and the metric chain.
pub fn verify_ppm(p: &PairMap) -> Report {
    let mut r = Report::new("verify ppm");
    if !add_ppm_axioms(&mut r, p) {
        r.note("intrinsic metrics skipped: p is not a partial pseudo-metric");
        return r;
    }
    let n = p.len();
    r.note(match partial_metric_separation_witness(p) {
        None => "partial metric: separation holds".to_string(),
        Some((x, y)) => format!("partial pseudo-metric only: w(x) = p(x,y) = w(y) at ({x}, {y})"),
    });
    for (label, q) in [("q0", adjoint_q0(p)), ("q1", adjoint_q1(p))] {
        r.check(
            &format!("{label} adjoint"),
            "-q symmetric submodular, q(x,x) = p(x,x)",
            cube(n),
            (!is_adjoint(p, &q)).then(|| Witness::raw(&[], "false".into(), "=", "true".into())),
        );
    }
    let leq = quasiorder_leq_p(p);
    for (label, d) in [("d0", d0(p)), ("d1", d1(p))] {
        check_pseudometric(&mut r, label, &d);
        check_radial(&mut r, label, &d, &leq);
    }
    add_d2(&mut r, p);
    add_lemma_dist2(&mut r, p);
    add_metric_chain(&mut r, p);
    let rad = d2_squared(p);
    let lip = first_pair(n, |x, y| {
        let g = p.w(x) - p.w(y);
        &g * &g > *rad.get(x, y)
    });
    r.check(
        "w is 1-Lipschitz for d2",
        "|w(x) - w(y)| <= d2(x,y), squared",
        sq(n),
        lip.map(|(x, y)| {
            Witness::raw(&[x, y], format!("({})^2", format_q(&(p.w(x) - p.w(y)))), "<=", format_q(rad.get(x, y)))
        }),
    );
    let two = Q::from_integer(2.into());
    match validate_interlaced(p, &adjoint_q1(p)) {
        Ok(s) => r.check(
            "(p, q1) interlaced with k = 2",
            "w(x) + 2 q1(x,y) <= 2 p(x,y) + w(y)",
            sq(n),
            (!s.admits(&two)).then(|| Witness::raw(&[], "false".into(), "=", "true".into())),
        ),
        Err(e) => r.check(
            "(p, q1) interlaced with k = 2",
            "w(x) + 2 q1(x,y) <= 2 p(x,y) + w(y)",
            sq(n),
            Some(Witness::raw(&[], e.to_string(), "=", "ok".into())),
        ),
    };
    r
}

/// Full verification of a candidate pseudo-interlaced space `(p, q)`.
pub fn verify_interlaced(p: &PairMap, q: &PairMap) -> Report {
    let mut r = Report::new("verify interlaced");
    let space = match validate_interlaced(p, q) {
        Ok(s) => s,
        Err(e) => {
            let w = match &e {
                Error::NotSymmetric(x, y) | Error::DiagonalNotDominated(x, y) | Error::NoAdmissibleK(x, y) => {
                    Witness::raw(&[*x, *y], e.to_string(), "", String::new())
                }
                Error::NotSubmodular(x, y, z) => Witness::raw(&[*x, *y, *z], e.to_string(), "", String::new()),
                Error::DiagonalMismatch(x) => Witness::at(&[*x], p.w(*x), "=", q.w(*x)),
                _ => Witness::raw(&[], e.to_string(), "", String::new()),
            };
            r.check("pseudo-interlaced axioms", "p, -q symmetric submodular, common diagonal, some k > 0", 1, Some(w));
            return r;
        }
    };
    r.check("pseudo-interlaced axioms", "p, -q symmetric submodular, common diagonal, some k > 0", cube(p.len()), None);
    r.note(format!("k_min = {}", format_q(space.k_min())));
    let n = space.len();
    let d = intrinsic_dpq(&space);
    check_pseudometric(&mut r, "dpq", &d);

    let k = space.k_min().clone();
    let lip = first_pair(n, |x, y| {
        let g = space.w(x) - space.w(y);
        let g = if g < Q::zero() { -g } else { g };
        g > &k * d.get(x, y)
    });
    r.check(
        "w is Lipschitz",
        "|w(x) - w(y)| <= k_min d(x,y)",
        sq(n),
        lip.map(|(x, y)| {
            let g = space.w(x) - space.w(y);
            Witness::at(&[x, y], &(if g < Q::zero() { -g } else { g }), "<=", &(&k * d.get(x, y)))
        }),
    );

    let mid = adjoint_q1(p);
    let ineq = first_pair(n, |x, y| q.get(x, y) > mid.get(x, y) || mid.get(x, y) > p.get(x, y));
    r.check(
        "q <= (w(x)+w(y))/2 <= p",
        "q(x,y) <= (w(x)+w(y))/2 <= p(x,y)",
        sq(n),
        ineq.map(|(x, y)| {
            Witness::raw(
                &[x, y],
                format!("{} <= {}", format_q(q.get(x, y)), format_q(mid.get(x, y))),
                "<=",
                format_q(p.get(x, y)),
            )
        }),
    );

    let eqpq =
        first_pair(n, |x, y| p.get(x, y) == q.get(x, y) && !(space.w(x) == p.get(x, y) && p.get(x, y) == space.w(y)));
    r.check(
        "p = q forces equal self-distances",
        "p(x,y) = q(x,y) => w(x) = p(x,y) = q(x,y) = w(y)",
        sq(n),
        eqpq.map(|(x, y)| Witness::at(&[x, y], space.w(x), "=", space.w(y))),
    );

    let hyp = first_pair(n, |x, y| space.w(x) + space.w(y) > p.get(x, y) + q.get(x, y)).is_none();
    let (name, id) = ("d1 <= dpq <= 2 d1", "w(x)+w(y) <= p+q everywhere => d1 <= dpq <= 2 d1");
    if hyp {
        let m1 = d1(p);
        let two = Q::from_integer(2.into());
        let bad = first_pair(n, |x, y| m1.get(x, y) > d.get(x, y) || *d.get(x, y) > m1.get(x, y) * &two);
        r.check(
            name,
            id,
            sq(n),
            bad.map(|(x, y)| {
                Witness::raw(
                    &[x, y],
                    format!("{} <= {}", format_q(m1.get(x, y)), format_q(d.get(x, y))),
                    "<=",
                    format_q(&(m1.get(x, y) * &two)),
                )
            }),
        );
    } else {
        r.vacuous(name, id);
    }

    let flags = classify_interlaced(&space);
    r.check(
        "separation flags agree",
        "interlaced <=> dpq metric <=> <=_pq antisymmetric",
        sq(n),
        (!flags.agree()).then(|| {
            Witness::raw(
                &[],
                format!("{} {}", flags.interlaced, flags.dpq_is_metric),
                "=",
                flags.order_antisymmetric.to_string(),
            )
        }),
    );
    r.note(format!(
        "interlaced: {}, dpq metric: {}, <=_pq partial order: {}",
        flags.interlaced, flags.dpq_is_metric, flags.order_antisymmetric
    ));
    add_order_metric_compat(&mut r, &space);
    r
}
