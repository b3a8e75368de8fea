//! The bicyclic monoid over the lattice-ordered group Z^k, as a symbolic
//! carrier. Elements are pairs `(a, b)` of nonnegative integer vectors.

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::report::{Report, Sampling, Witness};

pub const DEFAULT_SAMPLES: u64 = 10_000;
pub const DEFAULT_BOUND: i64 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicyclicCarrier {
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiElem {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

impl fmt::Display for BiElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |x: &[i64]| x.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "([{}];[{}])", v(&self.a), v(&self.b))
    }
}

impl BiElem {
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Self {
        assert_eq!(a.len(), b.len());
        assert!(a.iter().chain(&b).all(|&c| c >= 0), "bicyclic coordinates are nonnegative");
        BiElem { a, b }
    }

    /// `a - b` in the underlying group.
    pub fn difference(&self) -> Vec<i64> {
        self.a.iter().zip(&self.b).map(|(a, b)| a - b).collect()
    }
}

impl BicyclicCarrier {
    pub fn new(k: usize) -> Self {
        BicyclicCarrier { k }
    }

    pub fn identity(&self) -> BiElem {
        BiElem { a: vec![0; self.k], b: vec![0; self.k] }
    }

    /// `(a,b) + (c,d) = (a - b + b∨c, d - c + b∨c)`.
    pub fn add(&self, x: &BiElem, y: &BiElem) -> BiElem {
        let mut a = Vec::with_capacity(self.k);
        let mut b = Vec::with_capacity(self.k);
        for i in 0..self.k {
            let m = x.b[i].max(y.a[i]);
            a.push(x.a[i] - x.b[i] + m);
            b.push(y.b[i] - y.a[i] + m);
        }
        BiElem { a, b }
    }

    pub fn inv(&self, x: &BiElem) -> BiElem {
        BiElem { a: x.b.clone(), b: x.a.clone() }
    }

    pub fn delta(&self, x: &BiElem) -> BiElem {
        self.add(x, &self.inv(x))
    }

    pub fn is_idempotent(&self, x: &BiElem) -> bool {
        x.a == x.b
    }

    /// Natural order through the closed form: `0 <= c - a = d - b`.
    pub fn leq(&self, x: &BiElem, y: &BiElem) -> bool {
        (0..self.k).all(|i| {
            let da = y.a[i] - x.a[i];
            da >= 0 && da == y.b[i] - x.b[i]
        })
    }

    /// Natural order through the characterization `y = x + y* + y`.
    pub fn leq_by_formula(&self, x: &BiElem, y: &BiElem) -> bool {
        self.add(&self.add(x, &self.inv(y)), y) == *y
    }

    /// The embedding `x ↦ (x ∨ 0, (-x) ∨ 0)` of Z^k.
    pub fn embed(&self, x: &[i64]) -> BiElem {
        BiElem { a: x.iter().map(|&c| c.max(0)).collect(), b: x.iter().map(|&c| (-c).max(0)).collect() }
    }

    pub fn random_elem(&self, rng: &mut impl Rng, bound: i64) -> BiElem {
        BiElem {
            a: (0..self.k).map(|_| rng.gen_range(0..=bound)).collect(),
            b: (0..self.k).map(|_| rng.gen_range(0..=bound)).collect(),
        }
    }

    pub fn random_idempotent(&self, rng: &mut impl Rng, bound: i64) -> BiElem {
        let a: Vec<i64> = (0..self.k).map(|_| rng.gen_range(0..=bound)).collect();
        BiElem { b: a.clone(), a }
    }

    pub fn random_group_elem(&self, rng: &mut impl Rng, bound: i64) -> Vec<i64> {
        (0..self.k).map(|_| rng.gen_range(-bound..=bound)).collect()
    }

    /// Checks the inverse-semigroup identities, the order characterization and
    /// the embedding properties on seeded random samples.
    pub fn verify_identities(&self, samples: u64, seed: u64, bound: i64) -> Report {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut r = Report::sampled(format!("verify bicyclic k={}", self.k), Sampling { seed, samples, bound });
        let sym = |els: &[&BiElem], l: &BiElem, rel: &str, rr: &BiElem| {
            Witness::symbolic(els.iter().map(|e| e.to_string()).collect(), l.to_string(), rel, rr.to_string())
        };

        let mut assoc = None;
        let mut regular = None;
        let mut star = None;
        let mut idem_comm = None;
        let mut delta = None;
        let mut ident = None;
        let mut order = None;
        let mut order_comparable = None;
        let mut idem_order = None;
        let mut embed = None;
        let zero = self.identity();
        for _ in 0..samples {
            let x = self.random_elem(&mut rng, bound);
            let y = self.random_elem(&mut rng, bound);
            let z = self.random_elem(&mut rng, bound);
            let l = self.add(&self.add(&x, &y), &z);
            let rr = self.add(&x, &self.add(&y, &z));
            if l != rr && assoc.is_none() {
                assoc = Some(sym(&[&x, &y, &z], &l, "=", &rr));
            }
            let xs = self.inv(&x);
            let a = self.add(&self.add(&x, &xs), &x);
            let b = self.add(&self.add(&xs, &x), &xs);
            if (a != x || b != xs) && regular.is_none() {
                regular = Some(sym(&[&x], &a, "=", &x));
            }
            let l = self.inv(&self.add(&x, &y));
            let rr = self.add(&self.inv(&y), &xs);
            if l != rr && star.is_none() {
                star = Some(sym(&[&x, &y], &l, "=", &rr));
            }
            let d = self.delta(&x);
            if (!self.is_idempotent(&d) || self.add(&d, &d) != d) && delta.is_none() {
                delta = Some(sym(&[&x], &d, "in", &d));
            }
            let e = self.random_idempotent(&mut rng, bound);
            let f = self.random_idempotent(&mut rng, bound);
            if (self.add(&e, &f) != self.add(&f, &e) || self.add(&e, &e) != e || self.inv(&e) != e)
                && idem_comm.is_none()
            {
                idem_comm = Some(sym(&[&e, &f], &self.add(&e, &f), "=", &self.add(&f, &e)));
            }
            if (self.add(&zero, &x) != x || self.add(&x, &zero) != x) && ident.is_none() {
                ident = Some(sym(&[&x], &self.add(&zero, &x), "=", &x));
            }
            // Random pairs are mostly incomparable; x <= x + e is always comparable.
            let up = self.add(&x, &e);
            for (u, v) in [(&x, &y), (&x, &up), (&up, &x)] {
                let closed = self.leq(u, v);
                let formula = self.leq_by_formula(u, v);
                if closed != formula && order.is_none() {
                    order = Some(Witness::symbolic(
                        vec![u.to_string(), v.to_string()],
                        closed.to_string(),
                        "=",
                        formula.to_string(),
                    ));
                }
            }
            if !self.leq(&x, &up) && order_comparable.is_none() {
                order_comparable = Some(sym(&[&x, &e], &x, "<=", &up));
            }
            let ef = self.leq(&e, &f);
            let coord = e.a.iter().zip(&f.a).all(|(p, q)| p <= q);
            if ef != coord && idem_order.is_none() {
                idem_order = Some(sym(&[&e, &f], &e, "<=", &f));
            }

            let g = self.random_group_elem(&mut rng, bound);
            let h = self.random_group_elem(&mut rng, bound);
            let neg: Vec<i64> = g.iter().map(|c| -c).collect();
            let sum: Vec<i64> = g.iter().zip(&h).map(|(p, q)| p + q).collect();
            let ig = self.embed(&g);
            let ok = self.embed(&neg) == self.inv(&ig)
                && self.leq(&self.embed(&sum), &self.add(&ig, &self.embed(&h)))
                && ig.difference() == g;
            if !ok && embed.is_none() {
                embed = Some(Witness::symbolic(
                    vec![format!("{g:?}"), format!("{h:?}")],
                    self.embed(&sum).to_string(),
                    "<=",
                    self.add(&ig, &self.embed(&h)).to_string(),
                ));
            }
        }
        let zero_embeds = self.embed(&vec![0; self.k]) == zero;

        r.check("associativity", "(x+y)+z = x+(y+z)", samples, assoc);
        r.check("regularity with (a,b)* = (b,a)", "x+x*+x = x, x*+x+x* = x*", samples, regular);
        r.check("inverse of a sum", "(x+y)* = y*+x*", samples, star);
        r.check("δx is idempotent", "δx + δx = δx, δx = (c,c)", samples, delta);
        r.check("idempotents commute", "e+f = f+e for e=(a,a), f=(b,b)", samples, idem_comm);
        r.check("identity (0,0)", "0+x = x+0 = x", samples, ident);
        r.check("order characterizations agree", "(y = x + y* + y) <=> (0 <= c-a = d-b)", 3 * samples, order);
        r.check("x <= x + e", "x <=_S x + e", samples, order_comparable);
        r.check("idempotent order", "(a,a) <= (b,b) <=> a <= b", samples, idem_order);
        r.check(
            "embedding of Z^k",
            "i(-x) = i(x)*, i(x+y) <= i(x)+i(y), i(0) = (0,0)",
            samples + 1,
            (!zero_embeds)
                .then(|| {
                    Witness::symbolic(vec!["0".into()], self.embed(&vec![0; self.k]).to_string(), "=", zero.to_string())
                })
                .or(embed),
        );
        r
    }
}
