use std::fmt;

/// A binary relation on `0..n` stored as a dense boolean matrix, together
/// with its order-theoretic flags.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    m: Vec<bool>,
    reflexive: bool,
    transitive: bool,
    antisymmetric: bool,
}

impl Relation {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                m[x * n + y] = f(x, y);
            }
        }
        Self::from_matrix(n, m)
    }

    pub fn from_matrix(n: usize, m: Vec<bool>) -> Self {
        assert_eq!(m.len(), n * n, "relation matrix must be n x n");
        let at = |x: usize, y: usize| m[x * n + y];
        let reflexive = (0..n).all(|x| at(x, x));
        let antisymmetric = (0..n).all(|x| (0..n).all(|y| x == y || !(at(x, y) && at(y, x))));
        let transitive = (0..n).all(|x| (0..n).all(|y| !at(x, y) || (0..n).all(|z| !at(y, z) || at(x, z))));
        Relation { n, m, reflexive, transitive, antisymmetric }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn holds(&self, x: usize, y: usize) -> bool {
        self.m[x * self.n + y]
    }

    pub fn is_reflexive(&self) -> bool {
        self.reflexive
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetric
    }

    pub fn is_quasiorder(&self) -> bool {
        self.reflexive && self.transitive
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_quasiorder() && self.antisymmetric
    }

    /// First pair (in row-major order) on which the two relations differ.
    pub fn first_difference(&self, other: &Relation) -> Option<(usize, usize)> {
        assert_eq!(self.n, other.n);
        (0..self.n * self.n).find(|&i| self.m[i] != other.m[i]).map(|i| (i / self.n, i % self.n))
    }

    /// First pair `(x, y)` with `x != y` related both ways.
    pub fn antisymmetry_witness(&self) -> Option<(usize, usize)> {
        (0..self.n).find_map(|x| (x + 1..self.n).find(|&y| self.holds(x, y) && self.holds(y, x)).map(|y| (x, y)))
    }

    /// Pairs `(x, y)` with `x` related to `y`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n * self.n).filter(|&i| self.m[i]).map(|i| (i / self.n, i % self.n))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Relation(n={}, refl={}, trans={}, antisym={})",
            self.n, self.reflexive, self.transitive, self.antisymmetric
        )?;
        for x in 0..self.n {
            let row: String = (0..self.n).map(|y| if self.holds(x, y) { '1' } else { '.' }).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}
