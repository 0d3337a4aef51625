//! Parametric generators: six-point Chebyshev designs, Hermite circle
//! designs, and the degree-five ideal PTE families.

use num_bigint::BigInt;

use crate::designs::Design;
use crate::error::Error;
use crate::measures::MeasureSpec;
use crate::pte::PteSolution;
use crate::rational::Rational;

fn r(n: i64) -> Rational {
    Rational::from(n)
}

/// Positive-side triple `(x1, x2, x3)` of the six-point family. The
/// denominator `14(t^2+t+1)` never vanishes.
pub fn fivesix_triple(t: &Rational) -> [Rational; 3] {
    let t2 = t * t;
    let den = r(14) * (&t2 + t + r(1));
    [
        (r(2) * &t2 - r(22) * t - r(13)) / den.clone(),
        (r(-13) * &t2 - r(4) * t + r(11)) / den.clone(),
        (r(11) * &t2 + r(26) * t + r(2)) / den,
    ]
}

/// The antipodal six-point Chebyshev configuration `{±x1, ±x2, ±x3}`.
///
/// Fails with [`Error::Boundary`] when a node reaches ±1, which happens at
/// t = -5 and t = 2 among the integers.
pub fn fivesix(t: &Rational) -> Result<Design, Error> {
    Design::antipodal(MeasureSpec::chebyshev(), &fivesix_triple(t), false)
}

/// Rational points of the unit circle, closed under negation: a four-point
/// Hermite 3-design whenever the coordinates are nonzero and distinct.
pub fn hermite_circle4(t: &Rational) -> Design {
    let den = r(1) + t * t;
    let x1 = (r(1) - t * t) / den.clone();
    let x2 = (r(2) * t) / den;
    Design::antipodal(MeasureSpec::hermite(), &[x1, x2], false).expect("hermite accepts every node")
}

/// Points of `x1^2 + x2^2 = 5/4` plus the origin.
pub fn hermite_circle5(t: &Rational) -> Design {
    let t2 = t * t;
    let x1 = (&t2 - t - r(1)) / (r(1) + &t2);
    let x2 = (-&t2 - r(4) * t + r(1)) / (r(2) + r(2) * &t2);
    Design::antipodal(MeasureSpec::hermite(), &[x1, x2], true).expect("hermite accepts every node")
}

/// The binary quadratic forms `(a, b, c, d)` evaluated at `(alpha, beta)`.
pub fn pte_forms(alpha: &BigInt, beta: &BigInt) -> [BigInt; 4] {
    let (a2, ab, b2) = (alpha * alpha, alpha * beta, beta * beta);
    [
        &a2 + &ab + &b2,
        2 * &a2 - 22 * &ab - 13 * &b2,
        -13 * &a2 - 4 * &ab + 11 * &b2,
        11 * &a2 + 26 * &ab + 2 * &b2,
    ]
}

/// Homogeneous ideal degree-five family:
/// `X = ±a(s,t)·{b, c, d}(u,v)`, `Y = ±a(u,v)·{b, c, d}(s,t)`.
pub fn pte_family(s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) -> Result<PteSolution, Error> {
    use num_traits::Zero;
    if (s.is_zero() && t.is_zero()) || (u.is_zero() && v.is_zero()) {
        return Err(Error::Precondition("pte_family parameters (s,t) and (u,v) must be nonzero pairs".into()));
    }
    let [ast, bst, cst, dst] = pte_forms(s, t);
    let [auv, buv, cuv, duv] = pte_forms(u, v);
    let x = [&ast * &buv, &ast * &cuv, &ast * &duv];
    let y = [&auv * &bst, &auv * &cst, &auv * &dst];
    let close = |h: [BigInt; 3]| -> Vec<Rational> {
        h.into_iter().flat_map(|e| [Rational::from(e.clone()), Rational::from(-e)]).collect()
    };
    PteSolution::new(close(x), close(y), 5)
}

fn antipodal_pair(x: [Rational; 3], y: [Rational; 3], degree: u32) -> PteSolution {
    let close = |h: [Rational; 3]| -> Vec<Rational> { h.into_iter().flat_map(|e| [e.clone(), -e]).collect() };
    PteSolution::new(close(x), close(y), degree).expect("six against six")
}

/// Borwein's ideal degree-five solution, with rational parameters allowed.
pub fn borwein(m: &Rational, n: &Rational) -> PteSolution {
    let mn = m * n;
    antipodal_pair(
        [r(2) * n + r(2) * m, &mn + n + m - r(3), &mn - n - m - r(3)],
        [r(2) * n - r(2) * m, n - &mn - m - r(3), m - &mn - n - r(3)],
        5,
    )
}

/// Sign-adjusted variant with `x1 + x2 + x3 = y1 + y2 + y3 = 0`.
pub fn borwein_linear(m: &Rational, n: &Rational) -> PteSolution {
    let mn = m * n;
    antipodal_pair(
        [r(2) * n + r(2) * m, -&mn - n - m + r(3), &mn - n - m - r(3)],
        [r(2) * n - r(2) * m, -n + &mn + m + r(3), m - &mn - n - r(3)],
        5,
    )
}

/// Chernick's degree-five parametric solution.
pub fn chernick(m: &BigInt, n: &BigInt) -> PteSolution {
    let (m2, mn, n2) = (m * m, m * n, n * n);
    let q = |a: i64, b: i64, c: i64| Rational::from(a * &m2 + b * &mn + c * &n2);
    antipodal_pair(
        [q(-5, 4, -3), q(-3, 6, 5), q(-1, -10, -1)],
        [q(-5, 6, 3), q(-3, -4, -5), q(-1, 10, -1)],
        5,
    )
}
