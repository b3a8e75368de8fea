//! Built-in carriers and pseudo-norms used by the test suites and the CLI.

use crate::algebra::generate::{chain, clifford_product, cyclic, grid, grid_coordinates, powerset, symmetric_inverse};
use crate::algebra::FiniteInverseSemigroup;
use crate::error::Result;
use crate::exact::qi;
use crate::norms::Valuation;

/// A carrier together with one of its built-in pseudo-norms.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub semigroup: FiniteInverseSemigroup,
    pub valuation: Valuation,
}

/// The finite carriers of the core suite: I₂, I₃, power sets up to 4
/// points, C₂ to C₆ and Clifford products up to 64 elements.
pub fn semigroups() -> Result<Vec<(String, FiniteInverseSemigroup)>> {
    let mut out = Vec::new();
    for n in 2..=3 {
        out.push((format!("sym-inverse({n})"), symmetric_inverse(n)?));
    }
    for n in 1..=4 {
        out.push((format!("powerset({n})"), powerset(n)?));
    }
    for n in 2..=6 {
        out.push((format!("cyclic({n})"), cyclic(n)?));
    }
    for (g, b) in clifford_shapes() {
        out.push((format!("clifford({g},{b})"), clifford_product(g, b)?));
    }
    Ok(out)
}

fn clifford_shapes() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for g in 2..=4 {
        for b in 1..=4 {
            if g << b <= 64 {
                v.push((g, b));
            }
        }
    }
    v
}

fn word_length(n: usize) -> impl Fn(usize) -> i64 {
    move |i| i.min(n - i) as i64
}

fn popcount(m: usize) -> i64 {
    m.count_ones() as i64
}

fn fixture(name: String, s: &FiniteInverseSemigroup, f: impl Fn(usize) -> i64) -> Result<Fixture> {
    Ok(Fixture { name, semigroup: s.clone(), valuation: Valuation::from_fn(s.len(), |x| qi(f(x)))? })
}

/// Number of defined points of a partial bijection, read off its label.
fn rank(s: &FiniteInverseSemigroup, x: usize) -> i64 {
    s.label(x).split_whitespace().filter(|t| !t.contains('-')).count() as i64
}

/// Every built-in (carrier, pseudo-norm) pair.
pub fn catalog() -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    for n in 2..=6 {
        let s = cyclic(n)?;
        out.push(fixture(format!("cyclic({n})/word-length"), &s, word_length(n))?);
        out.push(fixture(format!("cyclic({n})/discrete"), &s, |x| (x != 0) as i64)?);
        out.push(fixture(format!("cyclic({n})/zero"), &s, |_| 0)?);
    }
    for n in 1..=4 {
        let s = powerset(n)?;
        out.push(fixture(format!("powerset({n})/cardinality"), &s, popcount)?);
        out.push(fixture(format!("powerset({n})/weighted"), &s, |m| {
            (0..n).filter(|i| m >> i & 1 == 1).map(|i| i as i64 + 1).sum()
        })?);
        out.push(fixture(format!("powerset({n})/capped"), &s, |m| popcount(m).min(2))?);
        out.push(fixture(format!("powerset({n})/zero"), &s, |_| 0)?);
    }
    for n in 2..=5 {
        let s = chain(n)?;
        out.push(fixture(format!("chain({n})/height"), &s, |x| x as i64)?);
        out.push(fixture(format!("chain({n})/square"), &s, |x| (x * x) as i64)?);
    }
    let g = grid(2, 2)?;
    let coords = |x| grid_coordinates(x, 2, 2);
    out.push(fixture("grid(2,2)/sup".into(), &g, |x| *coords(x).iter().max().unwrap() as i64)?);
    out.push(fixture("grid(2,2)/l1".into(), &g, |x| coords(x).iter().sum::<usize>() as i64)?);
    for n in 2..=3 {
        let s = symmetric_inverse(n)?;
        let sr = s.clone();
        out.push(fixture(format!("sym-inverse({n})/corank"), &s, move |x| n as i64 - rank(&sr, x))?);
        out.push(fixture(format!("sym-inverse({n})/zero"), &s, |_| 0)?);
    }
    for (g, b) in clifford_shapes() {
        let s = clifford_product(g, b)?;
        let m = 1usize << b;
        let len = word_length(g);
        out.push(fixture(format!("clifford({g},{b})/length+cardinality"), &s, |x| len(x / m) + popcount(x % m))?);
        out.push(fixture(format!("clifford({g},{b})/discrete+weighted"), &s, |x| {
            2 * (x / m != 0) as i64 + 3 * popcount(x % m)
        })?);
        out.push(fixture(format!("clifford({g},{b})/zero"), &s, |_| 0)?);
    }
    Ok(out)
}

/// The grid semilattice with the sup-norm: a pseudo-norm for which
/// separation fails.
pub fn sup_norm_grid() -> Result<Fixture> {
    Ok(catalog()?.into_iter().find(|f| f.name == "grid(2,2)/sup").expect("built-in fixture"))
}

/// The Clifford monoids of the catalog, with norms vanishing at the identity.
pub fn clifford_catalog() -> Result<Vec<Fixture>> {
    Ok(catalog()?
        .into_iter()
        .filter(|f| {
            let s = &f.semigroup;
            s.is_clifford() && s.identity().is_some_and(|z| num_traits::Zero::is_zero(f.valuation.get(z)))
        })
        .collect())
}
