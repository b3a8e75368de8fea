//! The pseudo-norm `‖(a,b)‖ = ‖a - b‖_G` on the bicyclic monoid over Z^k.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{BiElem, BicyclicCarrier};
use crate::report::{Report, Sampling, Witness};

/// Built-in length functions on Z^k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupNorm {
    L1,
    LInf,
}

impl GroupNorm {
    pub fn eval(&self, g: &[i64]) -> i64 {
        let abs = g.iter().map(|c| c.abs());
        match self {
            GroupNorm::L1 => abs.sum(),
            GroupNorm::LInf => abs.max().unwrap_or(0),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GroupNorm::L1 => "l1",
            GroupNorm::LInf => "linf",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicyclicNorm {
    pub carrier: BicyclicCarrier,
    pub group_norm: GroupNorm,
}

impl BicyclicNorm {
    pub fn new(k: usize, group_norm: GroupNorm) -> Self {
        BicyclicNorm { carrier: BicyclicCarrier::new(k), group_norm }
    }

    pub fn eval(&self, x: &BiElem) -> i64 {
        self.group_norm.eval(&x.difference())
    }
}

/// Sampled check of the pseudo-norm axioms and of the basic properties of
/// `‖(a,b)‖ = ‖a - b‖_G`, with machine-integer arithmetic.
pub fn verify_bicyclic_pseudonorm(norm: &BicyclicNorm, samples: u64, seed: u64, bound: i64) -> Report {
    let s = &norm.carrier;
    let nv = |x: &BiElem| norm.eval(x);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report::sampled(
        format!("verify bicyclic pseudonorm k={} {}", s.k, norm.group_norm.name()),
        Sampling { seed, samples, bound },
    );
    let sym = |els: &[&BiElem], l: i64, rel: &str, rr: i64| {
        Witness::symbolic(els.iter().map(|e| e.to_string()).collect(), l.to_string(), rel, rr.to_string())
    };
    let mut fails: [Option<Witness>; 8] = Default::default();
    let mut record = |i: usize, w: Witness| {
        if fails[i].is_none() {
            fails[i] = Some(w);
        }
    };
    for _ in 0..samples {
        let x = s.random_elem(&mut rng, bound);
        let y = s.random_elem(&mut rng, bound);
        let z = s.random_elem(&mut rng, bound);
        let (xs, ys, zs) = (s.inv(&x), s.inv(&y), s.inv(&z));
        let pxy = nv(&s.add(&x, &ys));
        let pyx = nv(&s.add(&y, &xs));
        if pxy != pyx {
            record(0, sym(&[&x, &y], pxy, "=", pyx));
        }
        let wx = nv(&s.add(&x, &xs));
        if wx > pxy {
            record(1, sym(&[&x, &y], wx, "<=", pxy));
        }
        let lhs = pxy + nv(&s.add(&z, &zs));
        let rhs = nv(&s.add(&x, &zs)) + nv(&s.add(&z, &ys));
        if lhs > rhs {
            record(2, sym(&[&x, &y, &z], lhs, "<=", rhs));
        }
        if nv(&xs) != nv(&x) {
            record(3, sym(&[&x], nv(&xs), "=", nv(&x)));
        }
        let e = s.random_idempotent(&mut rng, bound);
        if nv(&e) != 0 {
            record(4, sym(&[&e], nv(&e), "=", 0));
        }
        let sum = nv(&s.add(&x, &y));
        if sum > nv(&x) + nv(&y) {
            record(5, sym(&[&x, &y], sum, "<=", nv(&x) + nv(&y)));
        }
        let g = s.random_group_elem(&mut rng, bound);
        let ig = nv(&s.embed(&g));
        if ig != norm.group_norm.eval(&g) {
            record(
                6,
                Witness::symbolic(vec![format!("{g:?}")], ig.to_string(), "=", norm.group_norm.eval(&g).to_string()),
            );
        }
        if nv(&s.delta(&x)) > nv(&x) {
            record(7, sym(&[&x], nv(&s.delta(&x)), "<=", nv(&x)));
        }
    }
    let zero = nv(&s.identity());
    let [a1, a2, a3, inv, idem, sub, emb, dlt] = fails;
    r.check("axiom 1: symmetry", "‖x + y*‖ = ‖y + x*‖", samples, a1);
    r.check("axiom 2: small self-distance", "‖x + x*‖ <= ‖x + y*‖", samples, a2);
    r.check("axiom 3: submodularity", "‖x + y*‖ + ‖z + z*‖ <= ‖x + z*‖ + ‖z + y*‖", samples, a3);
    r.check("norm of identity", "‖(0,0)‖ = 0", 1, (zero != 0).then(|| sym(&[&s.identity()], zero, "=", 0)));
    r.check("inverse preserves norm", "‖x*‖ = ‖x‖", samples, inv);
    r.check("idempotents have norm zero", "‖(a,a)‖ = 0", samples, idem);
    r.check("subadditivity", "‖x + y‖ <= ‖x‖ + ‖y‖", samples, sub);
    r.check("embedding is norm-preserving", "‖i(g)‖ = ‖g‖_G", samples, emb);
    r.check("delta contracts", "‖δx‖ <= ‖x‖", samples, dlt);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        let n = BicyclicNorm::new(1, GroupNorm::L1);
        assert_eq!(n.eval(&BiElem::new(vec![2], vec![3])), 1);
        assert_eq!(n.eval(&BiElem::new(vec![5], vec![5])), 0);
        // p((2,1),(1,3)) = ‖(2,1) + (3,1)‖ = ‖(4,1)‖ = 3
        let s = n.carrier;
        let x = BiElem::new(vec![2], vec![1]);
        let y = BiElem::new(vec![1], vec![3]);
        assert_eq!(n.eval(&s.add(&x, &s.inv(&y))), 3);
        let m = BicyclicNorm::new(2, GroupNorm::LInf);
        assert_eq!(m.eval(&BiElem::new(vec![0, 4], vec![3, 0])), 4);
    }

    #[test]
    fn sampled_axioms() {
        for k in [1, 2] {
            for g in [GroupNorm::L1, GroupNorm::LInf] {
                let r = verify_bicyclic_pseudonorm(&BicyclicNorm::new(k, g), 3_000, 11, 100);
                assert!(r.passed, "{}", r.to_text());
                assert_eq!(r.sampling.unwrap().samples, 3_000);
            }
        }
    }
}
