//! Generators for the canonical families of inverse semigroups.

use serde::{Deserialize, Serialize};

use super::{BicyclicCarrier, FiniteInverseSemigroup, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// A family of inverse semigroups, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// Cyclic group Z/nZ.
    Cyclic {
        n: usize,
    },
    /// Subsets of an n-set under union.
    Powerset {
        n: usize,
    },
    /// The chain 0 < 1 < ... < n-1 under max.
    Chain {
        n: usize,
    },
    /// {0..=max}^dims under coordinatewise max.
    Grid {
        dims: usize,
        max: usize,
    },
    /// Partial bijections of an n-set under composition.
    SymInverse {
        n: usize,
    },
    Product {
        left: Box<Family>,
        right: Box<Family>,
    },
    /// The bicyclic monoid over Z^k (symbolic).
    Bicyclic {
        k: usize,
    },
}

#[derive(Clone, Debug)]
pub enum Generated {
    Finite(FiniteInverseSemigroup),
    Bicyclic(BicyclicCarrier),
}

impl Generated {
    pub fn finite(self) -> Option<FiniteInverseSemigroup> {
        match self {
            Generated::Finite(s) => Some(s),
            Generated::Bicyclic(_) => None,
        }
    }
}

impl Family {
    /// Number of elements, or `None` for infinite carriers.
    pub fn size(&self) -> Option<usize> {
        let sat = |v: u128| usize::try_from(v).unwrap_or(usize::MAX);
        match self {
            Family::Cyclic { n } | Family::Chain { n } => Some(*n),
            Family::Powerset { n } => Some(if *n >= 63 { usize::MAX } else { 1usize << n }),
            Family::Grid { dims, max } => Some(sat((*max as u128 + 1).checked_pow(*dims as u32).unwrap_or(u128::MAX))),
            Family::SymInverse { n } => Some(sat(sym_inverse_size(*n))),
            Family::Product { left, right } => Some(left.size()?.saturating_mul(right.size()?)),
            Family::Bicyclic { .. } => None,
        }
    }

    pub fn generate(&self) -> Result<Generated> {
        if let Family::Bicyclic { k } = self {
            if *k == 0 {
                return Err(Error::BadParams("bicyclic dimension must be positive".into()));
            }
            return Ok(Generated::Bicyclic(BicyclicCarrier::new(*k)));
        }
        self.finite()?.map(Generated::Finite).ok_or_else(|| Error::BadParams("family is not finite".into()))
    }

    /// Builds a tabulated carrier; `None` for the bicyclic family.
    pub fn finite(&self) -> Result<Option<FiniteInverseSemigroup>> {
        match self.size() {
            None => return Ok(None),
            Some(0) => return Err(Error::BadParams("empty carrier".into())),
            Some(s) if s > MAX_ELEMENTS => return Err(Error::TooLarge(s, MAX_ELEMENTS)),
            Some(_) => {}
        }
        let s = match self {
            Family::Cyclic { n } => cyclic(*n)?,
            Family::Powerset { n } => powerset(*n)?,
            Family::Chain { n } => chain(*n)?,
            Family::Grid { dims, max } => grid(*dims, *max)?,
            Family::SymInverse { n } => symmetric_inverse(*n)?,
            Family::Product { left, right } => {
                let (Some(l), Some(r)) = (left.finite()?, right.finite()?) else {
                    return Ok(None);
                };
                product(&l, &r)?
            }
            Family::Bicyclic { .. } => unreachable!(),
        };
        Ok(Some(s))
    }
}

fn sym_inverse_size(n: usize) -> u128 {
    // sum over k of C(n,k)^2 k!
    let mut total: u128 = 0;
    for k in 0..=n {
        let mut c: u128 = 1;
        for i in 0..k {
            c = c * (n - i) as u128 / (i + 1) as u128;
        }
        let f: u128 = (1..=k as u128).product();
        total = total.saturating_add(c.saturating_mul(c).saturating_mul(f));
    }
    total
}

fn guard(size: usize) -> Result<()> {
    if size == 0 {
        return Err(Error::BadParams("empty carrier".into()));
    }
    if size > MAX_ELEMENTS {
        return Err(Error::TooLarge(size, MAX_ELEMENTS));
    }
    Ok(())
}

fn build(n: usize, op: impl Fn(usize, usize) -> usize, labels: Vec<String>) -> Result<FiniteInverseSemigroup> {
    let table = (0..n * n).map(|i| op(i / n, i % n)).collect();
    FiniteInverseSemigroup::from_flat(n, table)?.with_labels(labels)
}

pub fn cyclic(n: usize) -> Result<FiniteInverseSemigroup> {
    guard(n)?;
    build(n, |x, y| (x + y) % n, (0..n).map(|i| i.to_string()).collect())
}

pub fn chain(n: usize) -> Result<FiniteInverseSemigroup> {
    guard(n)?;
    build(n, |x, y| x.max(y), (0..n).map(|i| format!("c{i}")).collect())
}

/// Element `i` is the subset whose bitmask is `i`; the empty set is the identity.
pub fn powerset(n: usize) -> Result<FiniteInverseSemigroup> {
    if n >= 16 {
        return Err(Error::TooLarge(usize::MAX, MAX_ELEMENTS));
    }
    let size = 1usize << n;
    guard(size)?;
    let labels = (0..size)
        .map(|m| {
            let items: Vec<String> = (0..n).filter(|b| m >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect();
    build(size, |x, y| x | y, labels)
}

/// Mixed-radix encoding of `{0..=max}^dims`; coordinate 0 is least significant.
pub fn grid(dims: usize, max: usize) -> Result<FiniteInverseSemigroup> {
    let size = (max + 1).checked_pow(dims as u32).ok_or(Error::TooLarge(usize::MAX, MAX_ELEMENTS))?;
    guard(size)?;
    let base = max + 1;
    let decode = |mut i: usize| {
        let mut v = Vec::with_capacity(dims);
        for _ in 0..dims {
            v.push(i % base);
            i /= base;
        }
        v
    };
    let encode = |v: &[usize]| v.iter().rev().fold(0, |acc, &c| acc * base + c);
    let labels = (0..size)
        .map(|i| {
            let v: Vec<String> = decode(i).iter().map(|c| c.to_string()).collect();
            format!("({})", v.join(","))
        })
        .collect();
    build(
        size,
        |x, y| {
            let (a, b) = (decode(x), decode(y));
            let m: Vec<usize> = a.iter().zip(&b).map(|(p, q)| *p.max(q)).collect();
            encode(&m)
        },
        labels,
    )
}

/// Grid coordinates of element `i` of [`grid`].
pub fn grid_coordinates(i: usize, dims: usize, max: usize) -> Vec<usize> {
    let base = max + 1;
    let mut i = i;
    (0..dims)
        .map(|_| {
            let c = i % base;
            i /= base;
            c
        })
        .collect()
}

/// All partial bijections of `{1..n}`, ordered by decreasing rank then
/// lexicographically, so the identity map is element 0. `x + y` applies `x`
/// first, then `y`.
pub fn partial_bijections(n: usize) -> Vec<Vec<Option<usize>>> {
    fn rec(n: usize, i: usize, used: &mut Vec<bool>, cur: &mut Vec<Option<usize>>, out: &mut Vec<Vec<Option<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        cur.push(None);
        rec(n, i + 1, used, cur, out);
        cur.pop();
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                cur.push(Some(j));
                rec(n, i + 1, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 0, &mut vec![false; n], &mut Vec::new(), &mut out);
    let rank = |m: &Vec<Option<usize>>| m.iter().filter(|v| v.is_some()).count();
    // None sorts before Some; invert so that defined images come first.
    let key = |m: &Vec<Option<usize>>| {
        (std::cmp::Reverse(rank(m)), m.iter().map(|v| v.map_or(usize::MAX, |j| j)).collect::<Vec<_>>())
    };
    out.sort_by_key(key);
    out
}

pub fn symmetric_inverse(n: usize) -> Result<FiniteInverseSemigroup> {
    let size = sym_inverse_size(n);
    if size > MAX_ELEMENTS as u128 {
        return Err(Error::TooLarge(usize::try_from(size).unwrap_or(usize::MAX), MAX_ELEMENTS));
    }
    let maps = partial_bijections(n);
    let index: std::collections::HashMap<&Vec<Option<usize>>, usize> =
        maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let labels = maps
        .iter()
        .map(|m| {
            let parts: Vec<String> = m.iter().map(|v| v.map_or("-".to_string(), |j| (j + 1).to_string())).collect();
            format!("[{}]", parts.join(" "))
        })
        .collect();
    build(
        maps.len(),
        |x, y| {
            let c: Vec<Option<usize>> = maps[x].iter().map(|v| v.and_then(|j| maps[y][j])).collect();
            index[&c]
        },
        labels,
    )
}

/// Direct product; element `(i, j)` has index `i * |right| + j`.
pub fn product(left: &FiniteInverseSemigroup, right: &FiniteInverseSemigroup) -> Result<FiniteInverseSemigroup> {
    let (m, k) = (left.len(), right.len());
    let size = m.checked_mul(k).ok_or(Error::TooLarge(usize::MAX, MAX_ELEMENTS))?;
    guard(size)?;
    let labels = (0..size).map(|i| format!("({},{})", left.label(i / k), right.label(i % k))).collect();
    build(size, |x, y| left.add(x / k, y / k) * k + right.add(x % k, y % k), labels)
}

/// Clifford monoid `C_n x powerset(m)`.
pub fn clifford_product(group_order: usize, semilattice_bits: usize) -> Result<FiniteInverseSemigroup> {
    product(&cyclic(group_order)?, &powerset(semilattice_bits)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        assert_eq!(sym_inverse_size(1), 2);
        assert_eq!(sym_inverse_size(2), 7);
        assert_eq!(sym_inverse_size(3), 34);
        assert_eq!(sym_inverse_size(4), 209);
        assert_eq!(partial_bijections(3).len(), 34);
        assert_eq!(Family::Powerset { n: 3 }.size(), Some(8));
        assert_eq!(
            Family::Product { left: Box::new(Family::Cyclic { n: 2 }), right: Box::new(Family::Powerset { n: 1 }) }
                .size(),
            Some(4)
        );
    }

    #[test]
    fn identity_of_sym_inverse_is_first() {
        let s = symmetric_inverse(2).unwrap();
        assert_eq!(s.len(), 7);
        assert_eq!(s.identity(), Some(0));
        assert_eq!(s.label(0), "[1 2]");
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(matches!(powerset(10), Err(Error::TooLarge(1024, _))));
        assert!(matches!(symmetric_inverse(5), Err(Error::TooLarge(1546, _))));
        assert!(matches!(Family::Grid { dims: 3, max: 9 }.generate(), Err(Error::TooLarge(1000, _))));
        assert!(matches!(cyclic(0), Err(Error::BadParams(_))));
    }

    #[test]
    fn grid_encoding_roundtrips() {
        let g = grid(2, 2).unwrap();
        assert_eq!(g.len(), 9);
        for i in 0..9 {
            let c = grid_coordinates(i, 2, 2);
            assert_eq!(g.label(i), format!("({},{})", c[0], c[1]));
        }
        // (1,0) v (0,2) = (1,2)
        let a = 1;
        let b = 2 * 3;
        assert_eq!(grid_coordinates(g.add(a, b), 2, 2), vec![1, 2]);
    }
}
