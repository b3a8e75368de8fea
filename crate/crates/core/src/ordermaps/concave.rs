use crate::error::{Error, Result};
use crate::exact::{format_q, Q};
use num_traits::Zero;

/// Concave order-preserving map `f(t) = min_i (slope_i * t + intercept_i)`
/// on the interval `[lo, hi]` (either end may be open-ended).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcavePL {
    pieces: Vec<(Q, Q)>,
    lo: Option<Q>,
    hi: Option<Q>,
}

impl ConcavePL {
    pub fn new(pieces: Vec<(Q, Q)>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::BadParams("concave map needs at least one piece".into()));
        }
        if let Some((s, _)) = pieces.iter().find(|(s, _)| *s < Q::zero()) {
            return Err(Error::BadParams(format!("negative slope {}", format_q(s))));
        }
        Ok(ConcavePL { pieces, lo: None, hi: None })
    }

    pub fn with_domain(mut self, lo: Option<Q>, hi: Option<Q>) -> Result<Self> {
        if let (Some(a), Some(b)) = (&lo, &hi) {
            if a > b {
                return Err(Error::BadParams("empty domain".into()));
            }
        }
        self.lo = lo;
        self.hi = hi;
        Ok(self)
    }

    pub fn identity() -> Self {
        ConcavePL::new(vec![(Q::from_integer(1.into()), Q::zero())]).unwrap()
    }

    /// `t ↦ min(t, c)`.
    pub fn cap(c: Q) -> Self {
        ConcavePL::new(vec![(Q::from_integer(1.into()), Q::zero()), (Q::zero(), c)]).unwrap()
    }

    pub fn pieces(&self) -> &[(Q, Q)] {
        &self.pieces
    }

    pub fn contains(&self, t: &Q) -> bool {
        self.lo.as_ref().is_none_or(|l| l <= t) && self.hi.as_ref().is_none_or(|h| t <= h)
    }

    pub fn eval(&self, t: &Q) -> Result<Q> {
        if !self.contains(t) {
            return Err(Error::OutOfDomain(format_q(t)));
        }
        Ok(self.pieces.iter().map(|(s, c)| s * t + c).min().expect("nonempty"))
    }
}

/// Irrational concave maps from the classical examples, evaluated in
/// floating point only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FloatConcave {
    Sqrt,
    Log,
    NegInv,
}

impl FloatConcave {
    /// `-inf` where the map is undefined at 0 (log, -1/t).
    pub fn eval(self, t: f64) -> f64 {
        match self {
            FloatConcave::Sqrt => t.sqrt(),
            FloatConcave::Log if t == 0.0 => f64::NEG_INFINITY,
            FloatConcave::Log => t.ln(),
            FloatConcave::NegInv if t == 0.0 => f64::NEG_INFINITY,
            FloatConcave::NegInv => -1.0 / t,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FloatConcave::Sqrt => "sqrt",
            FloatConcave::Log => "log",
            FloatConcave::NegInv => "-1/t",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    #[test]
    fn evaluation() {
        let f = ConcavePL::cap(qi(2));
        assert_eq!(f.eval(&qi(1)).unwrap(), qi(1));
        assert_eq!(f.eval(&qi(5)).unwrap(), qi(2));
        let g = ConcavePL::new(vec![(qi(2), qi(0)), (q(1, 2), qi(3))]).unwrap();
        assert_eq!(g.eval(&qi(1)).unwrap(), qi(2));
        assert_eq!(g.eval(&qi(4)).unwrap(), qi(5));
        assert!(ConcavePL::new(vec![(qi(-1), qi(0))]).is_err());
        let d = ConcavePL::identity().with_domain(Some(qi(0)), None).unwrap();
        assert!(matches!(d.eval(&qi(-1)), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn float_maps() {
        assert_eq!(FloatConcave::Log.eval(0.0), f64::NEG_INFINITY);
        assert_eq!(FloatConcave::NegInv.eval(2.0), -0.5);
        assert_eq!(FloatConcave::Sqrt.eval(9.0), 3.0);
    }
}
