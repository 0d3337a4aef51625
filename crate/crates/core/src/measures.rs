//! Moments of the symmetric classical measures.
//!
//! Hermite: `e^{-t^2} dt / sqrt(pi)` on the real line, with
//! `a_{2k} = (2k)! / (2^{2k} k!)`.
//!
//! Gegenbauer: `(1-t^2)^{lambda-1/2}` normalized on `(-1, 1)`, `lambda > -1/2`,
//! with `a_{2k} = (2k-1)!! / (2^k prod_{j=1..k} (lambda + j))`. `lambda = 0` is
//! the Chebyshev measure `(1-t^2)^{-1/2} dt / pi`.
//!
//! Odd moments vanish for both families.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MeasureSpec {
    Hermite,
    Gegenbauer { lambda: Rational },
}

impl MeasureSpec {
    pub fn hermite() -> Self {
        MeasureSpec::Hermite
    }

    pub fn gegenbauer(lambda: Rational) -> Result<Self, Error> {
        let m = MeasureSpec::Gegenbauer { lambda };
        m.validate()?;
        Ok(m)
    }

    pub fn chebyshev() -> Self {
        MeasureSpec::Gegenbauer { lambda: Rational::zero() }
    }

    pub fn validate(&self) -> Result<(), Error> {
        match self {
            MeasureSpec::Hermite => Ok(()),
            MeasureSpec::Gegenbauer { lambda } if *lambda > Rational::frac(-1, 2) => Ok(()),
            MeasureSpec::Gegenbauer { lambda } => {
                Err(Error::InvalidMeasure(format!("Gegenbauer lambda must exceed -1/2, got {lambda}")))
            }
        }
    }

    /// True for measures supported on the open interval (-1, 1).
    pub fn is_bounded(&self) -> bool {
        matches!(self, MeasureSpec::Gegenbauer { .. })
    }

    pub fn a2(&self) -> Rational {
        moment(self, 2).expect("validated measure")
    }

    pub fn a4(&self) -> Rational {
        moment(self, 4).expect("validated measure")
    }
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureSpec::Hermite => write!(f, "hermite"),
            MeasureSpec::Gegenbauer { lambda } if lambda.is_zero() => write!(f, "chebyshev"),
            MeasureSpec::Gegenbauer { lambda } => write!(f, "gegenbauer(lambda={lambda})"),
        }
    }
}

/// Even moments `a_0, a_2, a_4, ...` computed so far, per measure.
fn cache() -> &'static Mutex<HashMap<MeasureSpec, Vec<Rational>>> {
    static CACHE: OnceLock<Mutex<HashMap<MeasureSpec, Vec<Rational>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The k-th moment `a_k` of a symmetric classical measure.
pub fn moment(measure: &MeasureSpec, k: u32) -> Result<Rational, Error> {
    measure.validate()?;
    if k % 2 == 1 {
        return Ok(Rational::zero());
    }
    let half = (k / 2) as usize;
    let mut guard = cache().lock().unwrap_or_else(|e| e.into_inner());
    let table = guard.entry(measure.clone()).or_insert_with(|| vec![Rational::one()]);
    // a_{2j+2} = a_{2j} * ratio(j)
    while table.len() <= half {
        let j = (table.len() - 1) as i64;
        let ratio = match measure {
            MeasureSpec::Hermite => Rational::frac(2 * j + 1, 2),
            MeasureSpec::Gegenbauer { lambda } => {
                Rational::from(2 * j + 1) / (Rational::from(2) * (lambda + Rational::from(j + 1)))
            }
        };
        let next = table.last().unwrap() * ratio;
        table.push(next);
    }
    Ok(table[half].clone())
}

/// Whether `3 a_2^2 = 2 a_4`.
pub fn chebyshev_criterion(measure: &MeasureSpec) -> Result<bool, Error> {
    let a2 = moment(measure, 2)?;
    let a4 = moment(measure, 4)?;
    Ok(Rational::from(3) * &a2 * &a2 == Rational::from(2) * a4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn hermite_moments() {
        let h = MeasureSpec::hermite();
        assert_eq!(moment(&h, 2).unwrap(), q(1, 2));
        assert_eq!(moment(&h, 4).unwrap(), q(3, 4));
        assert_eq!(moment(&h, 6).unwrap(), q(15, 8));
    }

    #[test]
    fn hermite_closed_form() {
        // (2k)! / (2^{2k} k!)
        let h = MeasureSpec::hermite();
        for k in 0..12u32 {
            let fact = |n: u32| (1..=n).fold(BigInt::from(1), |a, i| a * i);
            let expected = Rational::new(fact(2 * k), BigInt::from(2).pow(2 * k) * fact(k)).unwrap();
            assert_eq!(moment(&h, 2 * k).unwrap(), expected);
        }
    }

    #[test]
    fn chebyshev_moments() {
        let c = MeasureSpec::chebyshev();
        assert_eq!(moment(&c, 2).unwrap(), q(1, 2));
        assert_eq!(moment(&c, 4).unwrap(), q(3, 8));
        // central binomial oracle: C(2k, k) / 4^k
        for k in 0..10u32 {
            let binom = (0..k).fold(BigInt::from(1), |a, i| a * (2 * k - i) / (i + 1));
            let expected = Rational::new(binom, BigInt::from(4).pow(k)).unwrap();
            assert_eq!(moment(&c, 2 * k).unwrap(), expected);
        }
        assert_eq!(moment(&c, 6).unwrap(), q(5, 16));
    }

    #[test]
    fn trivial_moments() {
        for m in [MeasureSpec::hermite(), MeasureSpec::chebyshev(), MeasureSpec::gegenbauer(q(7, 3)).unwrap()] {
            assert_eq!(moment(&m, 0).unwrap(), Rational::one());
            assert_eq!(moment(&m, 3).unwrap(), Rational::zero());
        }
    }

    #[test]
    fn lambda_bound() {
        assert!(MeasureSpec::gegenbauer(q(-1, 2)).is_err());
        assert!(MeasureSpec::gegenbauer(q(-1, 1)).is_err());
        let bad = MeasureSpec::Gegenbauer { lambda: q(-3, 4) };
        assert!(moment(&bad, 2).is_err());
        assert!(MeasureSpec::gegenbauer(q(-1, 3)).is_ok());
    }

    #[test]
    fn criterion() {
        assert!(chebyshev_criterion(&MeasureSpec::chebyshev()).unwrap());
        assert!(!chebyshev_criterion(&MeasureSpec::hermite()).unwrap());
        assert!(!chebyshev_criterion(&MeasureSpec::gegenbauer(q(1, 2)).unwrap()).unwrap());
    }

    #[test]
    fn serde_shape() {
        let s = serde_json::to_string(&MeasureSpec::gegenbauer(q(1, 2)).unwrap()).unwrap();
        assert_eq!(s, r#"{"kind":"gegenbauer","lambda":"1/2"}"#);
        assert_eq!(serde_json::to_string(&MeasureSpec::Hermite).unwrap(), r#"{"kind":"hermite"}"#);
    }

    #[test]
    fn gegenbauer_properties() {
        let lambdas = [q(-2, 5), q(-1, 7), q(0, 1), q(1, 3), q(5, 2), q(17, 4)];
        for lambda in lambdas {
            let m = MeasureSpec::gegenbauer(lambda.clone()).unwrap();
            for k in 0..=20u32 {
                let a = moment(&m, 2 * k).unwrap();
                assert!(a.is_positive());
                assert!(moment(&m, 2 * k + 1).unwrap().is_zero());
                // a_{2k+2} / a_{2k} = (2k+1) / (2(lambda + k + 1))
                let ratio = moment(&m, 2 * k + 2).unwrap() / &a;
                let expected = Rational::from(2 * k + 1) / (Rational::from(2) * (&lambda + Rational::from(k + 1)));
                assert_eq!(ratio, expected);
            }
            let (a2, a4) = (m.a2(), m.a4());
            assert!(a4 > &a2 * &a2);
            // sign(3 a2^2 - 2 a4) = -sign(lambda)
            let d = Rational::from(3) * &a2 * &a2 - Rational::from(2) * &a4;
            assert_eq!(d.is_positive(), lambda.is_negative());
            assert_eq!(d.is_zero(), lambda.is_zero());
            let closed = -(Rational::from(3) * &lambda)
                / (Rational::from(4) * (&lambda + Rational::one()).pow(2) * (&lambda + Rational::from(2)));
            assert_eq!(d, closed);
        }
    }
}
