//! Exact pair-maps `X × X → Q`, submodularity, the induced quasiorder, and
//! transforms that preserve submodularity.

mod concave;
mod transforms;

pub use concave::{ConcavePL, FloatConcave};
pub use transforms::{
    check_concave_float, topkis_map, transform_concave, transform_kunzi, transform_max, transform_shift,
    transform_shift_right, valuation_pairmap, ValuationPairMap,
};

use crate::algebra::Relation;
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::exact::{max_q, Q};
use crate::exact_dispatch;
use crate::kernels::{first_pair, first_triple};
use crate::report::{Report, Witness};

/// An `n × n` matrix of exact rationals. `w_p(x)` is the diagonal `p(x, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMap {
    n: usize,
    values: Vec<Q>,
}

impl PairMap {
    pub fn new(n: usize, values: Vec<Q>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::SizeMismatch { expected: n * n, found: values.len() });
        }
        Ok(PairMap { n, values })
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let n = rows.len();
        let mut values = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::SizeMismatch { expected: n, found: r.len() });
            }
            values.extend(r);
        }
        Ok(PairMap { n, values })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut values = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                values.push(f(x, y));
            }
        }
        PairMap { n, values }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> &Q {
        &self.values[x * self.n + y]
    }

    /// Self-distance `w_p(x) = p(x, x)`.
    #[inline]
    pub fn w(&self, x: usize) -> &Q {
        self.get(x, x)
    }

    pub fn diagonal(&self) -> Vec<Q> {
        (0..self.n).map(|x| self.w(x).clone()).collect()
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn rows(&self) -> Vec<Vec<Q>> {
        self.values.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn map(&self, mut f: impl FnMut(usize, usize, &Q) -> Q) -> PairMap {
        PairMap::from_fn(self.n, |x, y| f(x, y, self.get(x, y)))
    }

    pub fn neg(&self) -> PairMap {
        self.map(|_, _, v| -v)
    }

    /// Elementwise `self - other`.
    pub fn sub(&self, other: &PairMap) -> PairMap {
        assert_eq!(self.n, other.n);
        self.map(|x, y, v| v - other.get(x, y))
    }

    pub fn add(&self, other: &PairMap) -> PairMap {
        assert_eq!(self.n, other.n);
        self.map(|x, y, v| v + other.get(x, y))
    }

    /// Restriction to the listed elements, in the given order.
    pub fn restrict(&self, elements: &[usize]) -> PairMap {
        PairMap::from_fn(elements.len(), |i, j| self.get(elements[i], elements[j]).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_witness().is_none()
    }

    pub fn symmetry_witness(&self) -> Option<(usize, usize)> {
        first_pair(self.n, |x, y| x < y && self.get(x, y) != self.get(y, x))
    }

    pub fn submodularity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        exact_dispatch!([self.values], |v| first_triple(n, |x, y, z| {
            v[x * n + y].add(&v[z * n + z]) > v[x * n + z].add(&v[z * n + y])
        }))
    }

    /// Witness for the submodularity inequality `p(x,y) + p(z,z) <= p(x,z) + p(z,y)`.
    pub fn submodularity_failure(&self, (x, y, z): (usize, usize, usize)) -> Witness {
        Witness::at(&[x, y, z], &(self.get(x, y) + self.w(z)), "<=", &(self.get(x, z) + self.get(z, y)))
    }

    pub fn is_submodular_bool(&self) -> bool {
        self.submodularity_witness().is_none()
    }

    /// Is every value at least zero?
    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| *v >= Q::from_integer(0.into()))
    }

    /// `p(x,x) ∨ p(y,y) <= p(x,y)` for all pairs; returns the first failing pair.
    pub fn diag_domination_witness(&self) -> Option<(usize, usize)> {
        first_pair(self.n, |x, y| max_q(self.w(x), self.w(y)) > self.get(x, y))
    }
}

/// Checks `p(x,y) + p(z,z) <= p(x,z) + p(z,y)` over all triples.
pub fn is_submodular(p: &PairMap) -> Report {
    let mut r = Report::new("submodularity");
    let n = p.len() as u64;
    r.check(
        "submodular",
        "p(x,y) + p(z,z) <= p(x,z) + p(z,y)",
        n * n * n,
        p.submodularity_witness().map(|t| p.submodularity_failure(t)),
    );
    r
}

pub fn is_symmetric(p: &PairMap) -> bool {
    p.is_symmetric()
}

/// The one-sided criterion `p(x,y) + p(z,z) <= p(x,z) + p(y,z)`; for finite
/// submodular maps it holds exactly when `p` is symmetric.
pub fn symmetry_criterion(p: &PairMap) -> bool {
    let n = p.len();
    let hit = exact_dispatch!([p.values], |v| first_triple(n, |x, y, z| {
        v[x * n + y].add(&v[z * n + z]) > v[x * n + z].add(&v[y * n + z])
    }));
    hit.is_none()
}

/// `x <=_p y` iff `p(x,x) <= p(y,y)` and `p(x,z) <= p(y,z)` for every `z`.
pub fn quasiorder_leq_p(p: &PairMap) -> Relation {
    let n = p.len();
    exact_dispatch!([p.values], |v| Relation::from_fn(n, |x, y| {
        v[x * n + x] <= v[y * n + y] && (0..n).all(|z| v[x * n + z] <= v[y * n + z])
    }))
}

/// The characterization `x <=_p y` iff `w(x) ∨ p(x,y) <= w(y)`, valid for
/// finite submodular `p`.
pub fn leq_p_by_criterion(p: &PairMap) -> Relation {
    Relation::from_fn(p.len(), |x, y| max_q(p.w(x), p.get(x, y)) <= p.w(y))
}

/// `w(x) = p(x,y) = p(y,x) = w(y)` forces `x = y`.
pub fn partial_order_condition(p: &PairMap) -> bool {
    first_pair(p.len(), |x, y| x != y && p.w(x) == p.get(x, y) && p.get(x, y) == p.get(y, x) && p.get(y, x) == p.w(y))
        .is_none()
}

/// Checks the general facts about a submodular map: the self-distance bound,
/// the symmetry criterion, monotonicity of `w` and of `p(·, z)` along `<=_p`,
/// agreement of the two descriptions of `<=_p`, and the antisymmetry test.
pub fn verify_pairmap_facts(p: &PairMap) -> Report {
    let n = p.len();
    let mut r = is_submodular(p);
    r.command = "verify pairmap".into();
    if !r.passed {
        r.note("remaining facts assume submodularity and were skipped");
        return r;
    }
    let nn = (n * n) as u64;

    let bound = first_pair(n, |x, y| p.w(x) + p.w(y) > p.get(x, y) + p.get(y, x));
    r.check(
        "self-distance bound",
        "w(x) + w(y) <= p(x,y) + p(y,x)",
        nn,
        bound.map(|(x, y)| Witness::at(&[x, y], &(p.w(x) + p.w(y)), "<=", &(p.get(x, y) + p.get(y, x)))),
    );
    if p.is_symmetric() {
        let b2 = first_pair(n, |x, y| p.w(x) + p.w(y) > p.get(x, y) + p.get(x, y));
        r.check(
            "symmetric self-distance bound",
            "w(x) + w(y) <= 2 p(x,y)",
            nn,
            b2.map(|(x, y)| Witness::at(&[x, y], &(p.w(x) + p.w(y)), "<=", &(p.get(x, y) * Q::from_integer(2.into())))),
        );
    }

    let sym = p.is_symmetric();
    let crit = symmetry_criterion(p);
    r.check(
        "symmetry criterion",
        "symmetric <=> p(x,y) + p(z,z) <= p(x,z) + p(y,z)",
        1,
        (sym != crit).then(|| Witness::raw(&[], sym.to_string(), "=", crit.to_string())),
    );

    let leq = quasiorder_leq_p(p);
    let by_crit = leq_p_by_criterion(p);
    r.check(
        "quasiorder characterization",
        "x <=_p y <=> w(x) v p(x,y) <= w(y)",
        nn,
        leq.first_difference(&by_crit)
            .map(|(x, y)| Witness::raw(&[x, y], leq.holds(x, y).to_string(), "=", by_crit.holds(x, y).to_string())),
    );
    r.check(
        "<=_p is a quasiorder",
        "reflexive and transitive",
        nn,
        (!leq.is_quasiorder()).then(|| Witness::raw(&[], "false".into(), "=", "true".into())),
    );
    let mono = leq.pairs().find_map(|(x, y)| {
        if p.w(x) > p.w(y) {
            return Some(Witness::at(&[x, y], p.w(x), "<=", p.w(y)));
        }
        (0..n).find(|&z| p.get(x, z) > p.get(y, z)).map(|z| Witness::at(&[x, y, z], p.get(x, z), "<=", p.get(y, z)))
    });
    r.check("w and p(., z) are order-preserving", "x <=_p y => w(x) <= w(y), p(x,z) <= p(y,z)", nn, mono);

    let anti = leq.is_antisymmetric();
    let cond = partial_order_condition(p);
    r.check(
        "partial order test",
        "<=_p antisymmetric <=> (w(x) = p(x,y) = p(y,x) = w(y) => x = y)",
        nn,
        (anti != cond).then(|| Witness::raw(&[], anti.to_string(), "=", cond.to_string())),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    fn pm(rows: &[&[i64]]) -> PairMap {
        PairMap::from_rows(rows.iter().map(|r| r.iter().map(|&v| qi(v)).collect()).collect()).unwrap()
    }

    /// Brute-force oracle: all n^3 triples, directly from the definition.
    fn oracle_submodular(p: &PairMap) -> bool {
        let n = p.len();
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| p.get(x, y) + p.get(z, z) <= p.get(x, z) + p.get(z, y))))
    }

    #[test]
    fn separable_maps_are_submodular() {
        let f = [q(1, 2), qi(-3), q(7, 3), qi(0)];
        let g = [qi(2), q(-1, 5), qi(4), q(9, 2)];
        let p = PairMap::from_fn(4, |x, y| &f[x] + &g[y]);
        assert!(is_submodular(&p).passed);
        let fx = PairMap::from_fn(4, |x, _| f[x].clone());
        assert!(is_submodular(&fx).passed);
    }

    #[test]
    fn two_point_asymmetric_map() {
        // p(0,1) = 3, everything else 0: all 8 triples checked by the oracle.
        let p = pm(&[&[0, 3], &[0, 0]]);
        assert!(oracle_submodular(&p));
        assert!(is_submodular(&p).passed);
        // x = y = 0, z = 1: 0 + 0 <= 1 - 2 fails.
        let bad = pm(&[&[0, 1], &[-2, 0]]);
        assert_eq!(oracle_submodular(&bad), bad.is_submodular_bool());
        assert!(!bad.is_submodular_bool());
        let w = bad.submodularity_witness().unwrap();
        let wit = bad.submodularity_failure(w);
        assert!(crate::exact::parse_q(&wit.lhs).unwrap() > crate::exact::parse_q(&wit.rhs).unwrap());
    }

    #[test]
    fn symmetry_criterion_examples() {
        let s = pm(&[&[1, 2, 3], &[2, 1, 2], &[3, 2, 2]]);
        assert!(is_symmetric(&s));
        let f = [qi(1), qi(4), qi(2)];
        let fx = PairMap::from_fn(3, |x, _| f[x].clone());
        assert!(!is_symmetric(&fx));
        // At z = x: p(x,y) + f(x) <= f(x) + p(y,x) fails when f(x) > f(y).
        assert!(!symmetry_criterion(&fx));
        let join = PairMap::from_fn(3, |x, y| max_q(&f[x], &f[y]).clone());
        assert!(is_symmetric(&join) && symmetry_criterion(&join));
        assert!(is_submodular(&join).passed);
    }

    #[test]
    fn quasiorder_examples() {
        let c = pm(&[&[5, 5, 5], &[5, 5, 5], &[5, 5, 5]]);
        let leq = quasiorder_leq_p(&c);
        assert_eq!(leq.pairs().count(), 9);
        // 2-chain valuation v = (0, 1), p(x,y) = v(x v y).
        let chain = pm(&[&[0, 1], &[1, 1]]);
        let leq = quasiorder_leq_p(&chain);
        let pairs: Vec<_> = leq.pairs().collect();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (1, 1)]);
        assert!(leq.is_partial_order());
        assert!(partial_order_condition(&chain));
        assert!(!partial_order_condition(&c));
        assert_eq!(leq, leq_p_by_criterion(&chain));
        assert!(verify_pairmap_facts(&chain).passed);
        assert!(verify_pairmap_facts(&c).passed);
    }
}
