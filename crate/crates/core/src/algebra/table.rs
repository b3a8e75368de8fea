use rayon::prelude::*;

use super::Relation;
use crate::error::{Error, Result};
use crate::report::{Report, Witness};

/// Largest carrier accepted for tabulated semigroups; associativity is
/// checked in O(n^3).
pub const MAX_ELEMENTS: usize = 512;

/// A finite inverse semigroup given by its Cayley table, written additively.
///
/// Instances only exist after [`FiniteInverseSemigroup::from_table`] has
/// checked associativity and uniqueness of inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteInverseSemigroup {
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    is_idem: Vec<bool>,
    idempotents: Vec<usize>,
    identity: Option<usize>,
    labels: Vec<String>,
}

/// Validates a Cayley table and derives inverses, idempotents and identity.
pub fn validate_table(n: usize, table: &[Vec<usize>]) -> Result<FiniteInverseSemigroup> {
    FiniteInverseSemigroup::from_table(n, table)
}

impl FiniteInverseSemigroup {
    pub fn from_table(n: usize, rows: &[Vec<usize>]) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge(n, MAX_ELEMENTS));
        }
        if n == 0 {
            return Err(Error::Format("empty carrier".into()));
        }
        if rows.len() != n {
            return Err(Error::SizeMismatch { expected: n, found: rows.len() });
        }
        let mut table = Vec::with_capacity(n * n);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch { expected: n, found: row.len() });
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::BadTable(x, y));
                }
                table.push(v);
            }
        }
        Self::from_flat(n, table)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<usize>) -> Result<Self> {
        let op = |x: usize, y: usize| table[x * n + y];

        let assoc = (0..n).into_par_iter().find_map_first(|x| {
            for y in 0..n {
                let xy = op(x, y);
                for z in 0..n {
                    if op(xy, z) != op(x, op(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
            None
        });
        if let Some((x, y, z)) = assoc {
            return Err(Error::NotAssociative(x, y, z));
        }

        let mut inv = Vec::with_capacity(n);
        for x in 0..n {
            let mut found = None;
            let mut count = 0;
            for y in 0..n {
                if op(op(x, y), x) == x && op(op(y, x), y) == y {
                    count += 1;
                    found.get_or_insert(y);
                }
            }
            if count != 1 {
                return Err(Error::NotInverse(x, count));
            }
            inv.push(found.unwrap());
        }

        let is_idem: Vec<bool> = (0..n).map(|x| op(x, x) == x).collect();
        let idempotents: Vec<usize> = (0..n).filter(|&x| is_idem[x]).collect();
        for (i, &e) in idempotents.iter().enumerate() {
            for &f in &idempotents[i + 1..] {
                if op(e, f) != op(f, e) {
                    return Err(Error::IdempotentsDontCommute(e, f));
                }
            }
        }

        let identity = (0..n).find(|&e| (0..n).all(|x| op(e, x) == x && op(x, e) == x));
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(FiniteInverseSemigroup { n, table, inv, is_idem, idempotents, identity, labels })
    }

    /// Attaches human-readable element names (used in reports only).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    /// `x*`, the unique inverse of `x`.
    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// `x + x*`, always idempotent.
    #[inline]
    pub fn delta(&self, x: usize) -> usize {
        self.add(x, self.inv[x])
    }

    /// `x + y*`, the argument of the induced pair-map.
    #[inline]
    pub fn add_inv(&self, x: usize, y: usize) -> usize {
        self.add(x, self.inv[y])
    }

    #[inline]
    pub fn is_idempotent(&self, x: usize) -> bool {
        self.is_idem[x]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.add(x, y) == self.add(y, x)))
    }

    /// Natural partial order: `x <= y` iff `y = x + e` for some idempotent `e`.
    pub fn natural_order(&self) -> Relation {
        Relation::from_fn(self.n, |x, y| self.idempotents.iter().any(|&e| self.add(x, e) == y))
    }

    /// The same order through the characterization `y = x + y* + y`.
    pub fn natural_order_by_formula(&self) -> Relation {
        Relation::from_fn(self.n, |x, y| self.add(self.add_inv(x, y), y) == y)
    }

    /// Each element `x` satisfies `x + x* = x* + x`.
    pub fn is_clifford(&self) -> bool {
        self.clifford_witness().is_none()
    }

    pub fn clifford_witness(&self) -> Option<usize> {
        (0..self.n).find(|&x| self.delta(x) != self.add(self.inv[x], x))
    }

    /// The four equivalent Clifford conditions, evaluated independently:
    /// `x+x* = x*+x`; idempotents are central; `x + δx = x`;
    /// `δ(x+y) = δx + δy`.
    pub fn clifford_conditions(&self) -> [bool; 4] {
        let n = self.n;
        let c1 = self.is_clifford();
        let c2 = self.idempotents.iter().all(|&e| (0..n).all(|x| self.add(e, x) == self.add(x, e)));
        let c3 = (0..n).all(|x| self.add(x, self.delta(x)) == x);
        let c4 = (0..n).all(|x| (0..n).all(|y| self.delta(self.add(x, y)) == self.add(self.delta(x), self.delta(y))));
        [c1, c2, c3, c4]
    }

    /// `S_e = { x : x + e = e + x = x }` as a monoid with identity `e`, plus
    /// the embedding of its elements into `self`.
    pub fn local_monoid(&self, e: usize) -> Result<(FiniteInverseSemigroup, Vec<usize>)> {
        if e >= self.n || !self.is_idem[e] {
            return Err(Error::NotIdempotent(e));
        }
        let members: Vec<usize> = (0..self.n).filter(|&x| self.add(x, e) == x && self.add(e, x) == x).collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &x) in members.iter().enumerate() {
            index[x] = i;
        }
        let m = members.len();
        let mut table = Vec::with_capacity(m * m);
        for &x in &members {
            for &y in &members {
                let s = self.add(x, y);
                // S_e is closed under + since x + y + e = x + y = e + x + y.
                debug_assert_ne!(index[s], usize::MAX);
                table.push(index[s]);
            }
        }
        let labels = members.iter().map(|&x| self.labels[x].clone()).collect();
        let sub = Self::from_flat(m, table)?.with_labels(labels)?;
        Ok((sub, members))
    }

    /// Every pair of idempotents has a common lower bound in the natural order.
    pub fn idempotents_filtered(&self) -> bool {
        let order = self.natural_order();
        self.idempotents.iter().all(|&e| {
            self.idempotents.iter().all(|&f| self.idempotents.iter().any(|&g| order.holds(g, e) && order.holds(g, f)))
        })
    }

    /// Checks the basic identities of inverse semigroups, both natural-order
    /// characterizations, and the equivalence of the Clifford conditions.
    pub fn verify_identities(&self) -> Report {
        let n = self.n;
        let mut r = Report::new("verify semigroup");
        let els: Vec<usize> = (0..n).collect();
        let w2 = |x: usize, y: usize, l: usize, rr: usize| Witness::raw(&[x, y], l.to_string(), "=", rr.to_string());

        let inv_inv = els.iter().find(|&&x| self.inv(self.inv(x)) != x);
        r.check(
            "double inverse",
            "(x*)* = x",
            n as u64,
            inv_inv.map(|&x| Witness::raw(&[x], self.inv(self.inv(x)).to_string(), "=", x.to_string())),
        );

        let anti = (0..n).into_par_iter().find_map_first(|x| {
            (0..n).find_map(|y| {
                let l = self.inv(self.add(x, y));
                let rr = self.add(self.inv(y), self.inv(x));
                (l != rr).then(|| w2(x, y, l, rr))
            })
        });
        r.check("inverse of a sum", "(x + y)* = y* + x*", (n * n) as u64, anti);

        let idem_inv = self.idempotents.iter().find(|&&e| self.inv(e) != e);
        r.check(
            "idempotents are self-inverse",
            "e* = e",
            self.idempotents.len() as u64,
            idem_inv.map(|&e| Witness::raw(&[e], self.inv(e).to_string(), "=", e.to_string())),
        );

        let delta_idem =
            els.iter().find(|&&x| !self.is_idempotent(self.delta(x)) || !self.is_idempotent(self.add(self.inv(x), x)));
        r.check(
            "x + x* and x* + x are idempotent",
            "δx + δx = δx",
            n as u64,
            delta_idem.map(|&x| Witness::raw(&[x], self.delta(x).to_string(), "in", "E(S)".into())),
        );

        let comm = self.idempotents.iter().find_map(|&e| {
            self.idempotents
                .iter()
                .find(|&&f| self.add(e, f) != self.add(f, e))
                .map(|&f| w2(e, f, self.add(e, f), self.add(f, e)))
        });
        r.check("idempotents commute", "e + f = f + e", (self.idempotents.len() * self.idempotents.len()) as u64, comm);

        if let Some(z) = self.identity {
            let bad = els.iter().find(|&&x| self.add(z, x) != x || self.add(x, z) != x);
            r.check(
                "identity",
                "0 + x = x + 0 = x",
                n as u64,
                bad.map(|&x| Witness::raw(&[x], self.add(z, x).to_string(), "=", x.to_string())),
            );
        }

        let by_idem = self.natural_order();
        let by_formula = self.natural_order_by_formula();
        let diff = by_idem.first_difference(&by_formula).map(|(x, y)| {
            Witness::raw(&[x, y], by_idem.holds(x, y).to_string(), "=", by_formula.holds(x, y).to_string())
        });
        r.check(
            "natural order characterizations agree",
            "(y = x + e, e in E(S)) <=> (y = x + y* + y)",
            (n * n) as u64,
            diff,
        );
        let not_po = if by_idem.is_partial_order() {
            None
        } else {
            let (x, y) = by_idem.antisymmetry_witness().unwrap_or((0, 0));
            Some(Witness::raw(&[x, y], "reflexive+transitive+antisymmetric".into(), "=", "false".into()))
        };
        r.check("natural order is a partial order", "<=_S is a partial order", (n * n) as u64, not_po);

        let star = (0..n).find_map(|x| {
            (0..n).find(|&y| by_idem.holds(x, y) != by_idem.holds(self.inv(x), self.inv(y))).map(|y| {
                Witness::raw(
                    &[x, y],
                    by_idem.holds(x, y).to_string(),
                    "=",
                    by_idem.holds(self.inv(x), self.inv(y)).to_string(),
                )
            })
        });
        r.check("order is preserved by inversion", "x <=_S y <=> x* <=_S y*", (n * n) as u64, star);

        let conds = self.clifford_conditions();
        let agree = conds.iter().all(|&c| c == conds[0]);
        r.check(
            "Clifford conditions agree",
            "x+x* = x*+x <=> e+x = x+e <=> x+δx = x <=> δ(x+y) = δx+δy",
            4,
            (!agree).then(|| Witness::raw(&[], format!("{conds:?}"), "all equal", "true".into())),
        );
        r.note(format!(
            "{} elements, {} idempotents, clifford={}, monoid={}",
            n,
            self.idempotents.len(),
            conds[0],
            self.identity.is_some()
        ));
        r.labelled(&self.labels)
    }
}
