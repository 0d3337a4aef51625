//! The quadric-quartic curves `F1 = X1^2 + X2^2 + X3^2 - alpha X0^2`,
//! `F2 = X1^4 + X2^4 + X3^4 - beta X0^4` in P^3, and two genus-2 curves with
//! known rational points.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::identities::named;
use crate::poly::MultiPoly;
use crate::quadext::{squarefree_part, Field, QuadExt};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePair {
    pub alpha: Rational,
    pub beta: Rational,
}

impl CurvePair {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self, Error> {
        if alpha.is_zero() || beta.is_zero() {
            return Err(Error::Precondition("alpha and beta must be nonzero".into()));
        }
        Ok(CurvePair { alpha, beta })
    }

    /// The `k` in `alpha^2 = k beta`, when `k` is 1, 2 or 3.
    pub fn singular_case(&self) -> Option<u32> {
        let a2 = &self.alpha * &self.alpha;
        (1..=3u32).find(|&k| a2 == Rational::from(k) * &self.beta)
    }

    fn check(&self) -> Result<(), Error> {
        CurvePair::new(self.alpha.clone(), self.beta.clone()).map(|_| ())
    }
}

pub fn nonsingular_system(cp: &CurvePair) -> Result<bool, Error> {
    cp.check()?;
    Ok(cp.singular_case().is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentProfile {
    SmoothGenus9,
    IrreducibleSingularGenus3,
    FourConicsGenus0,
    TwoCurvesGenus1,
}

impl ComponentProfile {
    pub fn components(self) -> u32 {
        match self {
            ComponentProfile::SmoothGenus9 | ComponentProfile::IrreducibleSingularGenus3 => 1,
            ComponentProfile::FourConicsGenus0 => 4,
            ComponentProfile::TwoCurvesGenus1 => 2,
        }
    }

    pub fn genus(self) -> u32 {
        match self {
            ComponentProfile::SmoothGenus9 => 9,
            ComponentProfile::IrreducibleSingularGenus3 => 3,
            ComponentProfile::FourConicsGenus0 => 0,
            ComponentProfile::TwoCurvesGenus1 => 1,
        }
    }
}

pub fn component_profile(cp: &CurvePair) -> Result<ComponentProfile, Error> {
    cp.check()?;
    Ok(match cp.singular_case() {
        None => ComponentProfile::SmoothGenus9,
        Some(1) => ComponentProfile::IrreducibleSingularGenus3,
        Some(2) => ComponentProfile::FourConicsGenus0,
        _ => ComponentProfile::TwoCurvesGenus1,
    })
}

fn system() -> ([MultiPoly; 4], MultiPoly, MultiPoly) {
    let x = MultiPoly::vars(["X0", "X1", "X2", "X3"]);
    let s2 = x[1..].iter().fold(MultiPoly::zero(), |a, v| a + v * v);
    let s4 = x[1..].iter().fold(MultiPoly::zero(), |a, v| a + v.pow(4));
    (x, s2, s4)
}

/// For the split cases, checks that `k F2 - F1 (F1 + 2 alpha X0^2)` is the
/// factored quartic of the matching identity. `None` for the other cases.
pub fn profile_witness(cp: &CurvePair) -> Result<Option<bool>, Error> {
    let profile = component_profile(cp)?;
    let (k, name) = match profile {
        ComponentProfile::FourConicsGenus0 => (2, "quartic-b"),
        ComponentProfile::TwoCurvesGenus1 => (3, "quartic-c"),
        _ => return Ok(None),
    };
    let (x, s2, s4) = system();
    let x0sq = &x[0] * &x[0];
    let f1 = &s2 - &(MultiPoly::constant(cp.alpha.clone()) * x0sq.clone());
    let f2 = &s4 - &(MultiPoly::constant(cp.beta.clone()) * x0sq.pow(2));
    let plus = &s2 + &(MultiPoly::constant(cp.alpha.clone()) * x0sq);
    let combo = MultiPoly::constant(Rational::from(k)) * f2 - f1 * plus;
    let target = MultiPoly::constant(Rational::from(k)) * s4 - s2.pow(2);
    let factored = named(name).expect("known identity").holds()?;
    Ok(Some(factored && combo == target))
}

/// `p_a = d e (d + e - 4) / 2 + 1` for a complete intersection of degrees `d`, `e` in P^3.
pub fn ci_arithmetic_genus(d: i64, e: i64) -> Result<i64, Error> {
    if d < 1 || e < 1 {
        return Err(Error::Precondition("degrees must be positive".into()));
    }
    Ok(d * e * (d + e - 4) / 2 + 1)
}

/// `sqrt(r)` in the smallest quadratic field containing it.
pub fn sqrt_in_field(r: &Rational) -> Result<QuadExt, Error> {
    if r.is_zero() {
        return Ok(QuadExt::zero());
    }
    let pq: BigInt = r.numer() * r.denom();
    let d = squarefree_part(&pq).ok_or_else(|| Error::InvalidGenerator(format!("sqrt({r}) is outside the supported fields")))?;
    // pq = m^2 d, sqrt(r) = (m / q) sqrt(d)
    let m2 = Rational::from(pq.abs()) / Rational::from(d.abs());
    let m = m2.sqrt().expect("square by construction");
    let coeff = m / Rational::from(r.denom().clone());
    if d == 1 {
        return Ok(QuadExt::rational(coeff));
    }
    QuadExt::new(Field::sqrt(d)?, Rational::zero(), coeff)
}

pub type ProjectivePoint = [QuadExt; 4];

fn is_zero(v: Result<QuadExt, Error>) -> Result<bool, Error> {
    Ok(v?.is_zero())
}

/// Whether the point lies on both surfaces with Jacobian rank below 2.
pub fn is_singular_point(cp: &CurvePair, p: &ProjectivePoint) -> Result<bool, Error> {
    let alpha = QuadExt::rational(cp.alpha.clone());
    let beta = QuadExt::rational(cp.beta.clone());
    let sq: Vec<QuadExt> = p.iter().map(|v| v.pow(2)).collect();
    let s2 = sq[1].try_add(&sq[2])?.try_add(&sq[3])?;
    let s4 = sq[1].pow(2).try_add(&sq[2].pow(2))?.try_add(&sq[3].pow(2))?;
    if !is_zero(s2.try_sub(&alpha.try_mul(&sq[0])?))? || !is_zero(s4.try_sub(&beta.try_mul(&sq[0].pow(2))?))? {
        return Ok(false);
    }
    let two = QuadExt::rational(Rational::from(2));
    let four = QuadExt::rational(Rational::from(4));
    let mut row1 = vec![alpha.try_mul(&p[0])?.try_mul(&two)?.scale(&Rational::from(-1))];
    let mut row2 = vec![beta.try_mul(&p[0].pow(3))?.try_mul(&four)?.scale(&Rational::from(-1))];
    for v in &p[1..] {
        row1.push(two.try_mul(v)?);
        row2.push(four.try_mul(&v.pow(3))?);
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if !is_zero(row1[i].try_mul(&row2[j])?.try_sub(&row1[j].try_mul(&row2[i])?))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The singular points of the curve, each verified; 6, 12 or 8 of them.
pub fn singular_locus_check(cp: &CurvePair) -> Result<Vec<ProjectivePoint>, Error> {
    cp.check()?;
    let k = cp.singular_case().ok_or_else(|| Error::Precondition("the system is nonsingular".into()))?;
    let one = QuadExt::one();
    let zero = QuadExt::zero();
    let mut points = Vec::new();
    if k == 1 {
        // (1 : +-sqrt(alpha) e_i)
        let s = sqrt_in_field(&cp.alpha)?;
        for i in 1..4 {
            for sign in [1, -1] {
                let mut p = [one.clone(), zero.clone(), zero.clone(), zero.clone()];
                p[i] = s.scale(&Rational::from(sign));
                points.push(p);
            }
        }
    } else {
        // (sqrt(k / alpha) : +-1 ...) with k - 1 zero-free slots among X1..X3
        let lead = sqrt_in_field(&(Rational::from(k) / &cp.alpha))?;
        let supports: Vec<Vec<usize>> = if k == 2 { vec![vec![1, 2], vec![1, 3], vec![2, 3]] } else { vec![vec![1, 2, 3]] };
        for support in supports {
            for mask in 0..(1u32 << support.len()) {
                let mut p = [lead.clone(), zero.clone(), zero.clone(), zero.clone()];
                for (b, &i) in support.iter().enumerate() {
                    p[i] = if mask >> b & 1 == 1 { -one.clone() } else { one.clone() };
                }
                points.push(p);
            }
        }
    }
    for p in &points {
        if !is_singular_point(cp, p)? {
            return Err(Error::Verification("listed point is not a singular point".into()));
        }
    }
    Ok(points)
}

/// `y^2 = f(x)`, `f` of degree 5, with its listed affine rational points and
/// the change of variables back to the design coordinates:
/// `t = x / x_scale`, `x1 = y / (y_scale (1 + t^2)(1 + t))`, `x2^2 = t x1^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperellipticFixture {
    pub label: String,
    /// Coefficients of `f`, constant term first.
    pub coefficients: Vec<i64>,
    pub points: Vec<(Rational, Rational)>,
    pub x_scale: i64,
    pub y_scale: i64,
    /// `lead (1 + t^2)(1 + t) x1^2 = t^2 + mid t + 1`.
    pub lead: i64,
    pub mid: i64,
}

fn pts(v: &[(i64, i64)]) -> Vec<(Rational, Rational)> {
    v.iter().map(|&(x, y)| (Rational::from(x), Rational::from(y))).collect()
}

pub fn fixture_c1() -> HyperellipticFixture {
    HyperellipticFixture {
        label: "C1".into(),
        coefficients: vec![32, 112, 64, 32, 14, 1],
        points: pts(&[(-2, 0), (2, -32), (2, 32)]),
        x_scale: 2,
        y_scale: 8,
        lead: 2,
        mid: 6,
    }
}

pub fn fixture_c2() -> HyperellipticFixture {
    HyperellipticFixture {
        label: "C2".into(),
        coefficients: vec![1, 13, 14, 14, 13, 1],
        points: pts(&[(-1, 0), (0, -1), (0, 1)]),
        x_scale: 1,
        y_scale: 2,
        lead: 4,
        mid: 12,
    }
}

pub fn hyperelliptic_fixture(label: &str) -> Option<HyperellipticFixture> {
    match label.to_ascii_uppercase().as_str() {
        "C1" => Some(fixture_c1()),
        "C2" => Some(fixture_c2()),
        _ => None,
    }
}

impl HyperellipticFixture {
    pub fn f(&self, x: &Rational) -> Rational {
        self.coefficients.iter().rev().fold(Rational::zero(), |acc, &c| acc * x + Rational::from(c))
    }

    /// `(t, x1, x2^2)` for a curve point, or `None` where `(1 + t^2)(1 + t)` vanishes.
    pub fn design_point(&self, x: &Rational, y: &Rational) -> Option<(Rational, Rational, Rational)> {
        let t = x / &Rational::from(self.x_scale);
        let den = Rational::from(self.y_scale) * (Rational::one() + &t * &t) * (Rational::one() + &t);
        let x1 = y.checked_div(&den).ok()?;
        let x2sq = &t * &x1 * &x1;
        Some((t, x1, x2sq))
    }

    /// Whether the recovered coordinates satisfy the relation the curve came from.
    pub fn design_relation(&self, t: &Rational, x1: &Rational) -> bool {
        let one = Rational::one();
        Rational::from(self.lead) * (&one + t * t) * (&one + t) * x1 * x1
            == t * t + Rational::from(self.mid) * t + one
    }

    /// `f(x_scale t) = y_scale^2 / lead * (1 + t^2)(1 + t)(t^2 + mid t + 1)` as polynomials in `t`.
    pub fn chain_identity(&self) -> bool {
        let t = MultiPoly::var("t");
        let x = MultiPoly::constant(Rational::from(self.x_scale)) * t.clone();
        let f = self.coefficients.iter().rev().fold(MultiPoly::zero(), |acc, &c| acc * x.clone() + MultiPoly::constant(Rational::from(c)));
        let one = MultiPoly::constant(Rational::one());
        let k = Rational::from(self.y_scale * self.y_scale) / Rational::from(self.lead);
        let rhs = MultiPoly::constant(k)
            * (&one + &(&t * &t))
            * (&one + &t)
            * (&t * &t + MultiPoly::constant(Rational::from(self.mid)) * t.clone() + one);
        f == rhs
    }
}

pub fn on_hyperelliptic(fix: &HyperellipticFixture, x: &Rational, y: &Rational) -> bool {
    y * y == fix.f(x)
}

pub fn is_unit(r: &Rational) -> bool {
    r.abs().numer().is_one() && r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{chebyshev_criterion, MeasureSpec};

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn cp(a: Rational, b: Rational) -> CurvePair {
        CurvePair::new(a, b).unwrap()
    }

    #[test]
    fn nonsingular_examples() {
        assert!(!nonsingular_system(&cp(q(3, 2), q(9, 8))).unwrap());
        assert!(!nonsingular_system(&cp(q(3, 2), q(9, 4))).unwrap());
        assert!(!nonsingular_system(&cp(q(1, 1), q(1, 3))).unwrap());
        assert!(nonsingular_system(&cp(q(1, 1), q(1, 5))).unwrap());
        assert!(!nonsingular_system(&cp(q(1, 1), q(1, 1))).unwrap());
        assert!(CurvePair::new(q(0, 1), q(1, 1)).is_err());
        let bad = CurvePair { alpha: q(1, 1), beta: q(0, 1) };
        assert!(nonsingular_system(&bad).is_err());
    }

    #[test]
    fn profiles() {
        assert_eq!(component_profile(&cp(q(3, 2), q(9, 8))).unwrap(), ComponentProfile::FourConicsGenus0);
        assert_eq!(component_profile(&cp(q(3, 2), q(9, 4))).unwrap(), ComponentProfile::IrreducibleSingularGenus3);
        assert_eq!(component_profile(&cp(q(1, 1), q(1, 5))).unwrap(), ComponentProfile::SmoothGenus9);
        assert_eq!(component_profile(&cp(q(3, 1), q(3, 1))).unwrap(), ComponentProfile::TwoCurvesGenus1);
        assert_eq!(profile_witness(&cp(q(3, 2), q(9, 8))).unwrap(), Some(true));
        assert_eq!(profile_witness(&cp(q(3, 1), q(3, 1))).unwrap(), Some(true));
        assert_eq!(profile_witness(&cp(q(1, 1), q(1, 5))).unwrap(), None);
    }

    #[test]
    fn bridge() {
        let mut measures = vec![MeasureSpec::hermite()];
        measures.extend((-4..20).map(|k| MeasureSpec::gegenbauer(q(k, 9)).unwrap()));
        for m in measures {
            let pair = cp(Rational::from(3) * m.a2(), Rational::from(3) * m.a4());
            let four = component_profile(&pair).unwrap() == ComponentProfile::FourConicsGenus0;
            assert_eq!(four, chebyshev_criterion(&m).unwrap(), "{m}");
        }
    }

    #[test]
    fn genus_formula() {
        assert_eq!(ci_arithmetic_genus(2, 4).unwrap(), 9);
        assert_eq!(ci_arithmetic_genus(1, 1).unwrap(), 0);
        assert_eq!(ci_arithmetic_genus(2, 2).unwrap(), 1);
        assert!(ci_arithmetic_genus(0, 2).is_err());
        for d in 1..=6 {
            for e in 1..=6 {
                assert_eq!(ci_arithmetic_genus(d, e).unwrap(), ci_arithmetic_genus(e, d).unwrap());
            }
        }
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_in_field(&q(9, 4)).unwrap(), QuadExt::rational(q(3, 2)));
        let r = sqrt_in_field(&q(1, 2)).unwrap();
        assert_eq!(r.field(), Field::Sqrt(2));
        assert_eq!(r.pow(2), QuadExt::rational(q(1, 2)));
        let r = sqrt_in_field(&q(-12, 5)).unwrap();
        assert_eq!(r.field(), Field::Sqrt(-15));
        assert_eq!(r.pow(2), QuadExt::rational(q(-12, 5)));
    }

    #[test]
    fn singular_points() {
        let six = singular_locus_check(&cp(q(1, 1), q(1, 1))).unwrap();
        assert_eq!(six.len(), 6);
        assert!(six.iter().all(|p| p.iter().all(|v| v.field() == Field::Rational)));
        let twelve = singular_locus_check(&cp(q(1, 1), q(1, 2))).unwrap();
        assert_eq!(twelve.len(), 12);
        assert_eq!(twelve[0][0].field(), Field::Sqrt(2));
        let eight = singular_locus_check(&cp(q(4, 1), q(16, 3))).unwrap();
        assert_eq!(eight.len(), 8);
        assert_eq!(eight[0][0].field(), Field::Sqrt(3));
        let cheb = singular_locus_check(&cp(q(3, 2), q(9, 8))).unwrap();
        assert_eq!(cheb.len(), 12);
        assert!(singular_locus_check(&cp(q(1, 1), q(1, 5))).is_err());
        // smooth points on the curve are not singular
        let one = QuadExt::one();
        let zero = QuadExt::zero();
        let p = [one.clone(), one.clone(), zero.clone(), zero];
        assert!(!is_singular_point(&cp(q(1, 1), q(1, 5)), &p).unwrap());
    }

    #[test]
    fn hyperelliptic_points() {
        let (c1, c2) = (fixture_c1(), fixture_c2());
        assert!(on_hyperelliptic(&c1, &q(2, 1), &q(32, 1)));
        assert!(on_hyperelliptic(&c2, &q(0, 1), &q(1, 1)));
        assert!(!on_hyperelliptic(&c1, &q(0, 1), &q(1, 1)));
        for fix in [&c1, &c2] {
            assert!(fix.chain_identity());
            for (x, y) in &fix.points {
                assert!(on_hyperelliptic(fix, x, y));
            }
            for x in -10..=10i64 {
                for y in -10..=10i64 {
                    let (x, y) = (Rational::from(x), Rational::from(y));
                    if on_hyperelliptic(fix, &x, &y) {
                        assert!(fix.points.contains(&(x, y)));
                    }
                }
            }
        }
    }

    #[test]
    fn chains() {
        let c1 = fixture_c1();
        let (t, x1, x2sq) = c1.design_point(&q(2, 1), &q(32, 1)).unwrap();
        assert_eq!((t.clone(), x1.clone(), x2sq), (q(1, 1), q(1, 1), q(1, 1)));
        assert!(c1.design_relation(&t, &x1));
        let (_, x1, _) = c1.design_point(&q(2, 1), &q(-32, 1)).unwrap();
        assert_eq!(x1, q(-1, 1));
        assert!(c1.design_point(&q(-2, 1), &q(0, 1)).is_none());
        let c2 = fixture_c2();
        let (t, x1, x2sq) = c2.design_point(&q(0, 1), &q(1, 1)).unwrap();
        assert_eq!((t.clone(), x1.clone(), x2sq), (q(0, 1), q(1, 2), q(0, 1)));
        assert!(c2.design_relation(&t, &x1));
        assert!(is_unit(&q(-1, 1)) && !is_unit(&q(1, 2)));
        assert_eq!(hyperelliptic_fixture("c2").unwrap(), c2);
    }
}
