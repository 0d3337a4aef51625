//! Exact checks of the polynomial identities used by the constructions:
//! rational Hilbert identities, the Kawada-Wooley quartic and its Hilbert
//! form over Q(sqrt 3), and three quartic factorizations.

use crate::error::Error;
use crate::poly::MultiPoly;
use crate::quadext::{Field, QuadExt};
use crate::rational::Rational;

/// `(X_1^2 + ... + X_n^2)^r = sum_i c_i (a_i1 X_1 + ... + a_in X_n)^(2r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertIdentity {
    pub n: usize,
    pub r: u32,
    pub terms: Vec<(Rational, Vec<Rational>)>,
}

fn xs(n: usize) -> Vec<MultiPoly> {
    (1..=n).map(|i| MultiPoly::var(&format!("X{i}"))).collect()
}

fn c(r: Rational) -> MultiPoly {
    MultiPoly::constant(r)
}

fn sum_sq(v: &[MultiPoly]) -> MultiPoly {
    v.iter().fold(MultiPoly::zero(), |acc, x| acc + x * x)
}

impl HilbertIdentity {
    pub fn new(n: usize, r: u32, terms: Vec<(Rational, Vec<Rational>)>) -> Result<Self, Error> {
        if n == 0 || r == 0 {
            return Err(Error::Precondition("n and r must be positive".into()));
        }
        for (ci, a) in &terms {
            if !ci.is_positive() || a.len() != n {
                return Err(Error::Precondition("terms need a positive weight and n coefficients".into()));
            }
        }
        Ok(HilbertIdentity { n, r, terms })
    }

    /// Liouville: `6 (sum X_i^2)^2 = sum_{i<j} (X_i + X_j)^4 + (X_i - X_j)^4`.
    pub fn liouville() -> Self {
        let mut terms = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                for s in [1, -1] {
                    let mut a = vec![Rational::zero(); 4];
                    a[i] = Rational::one();
                    a[j] = Rational::from(s);
                    terms.push((Rational::frac(1, 6), a));
                }
            }
        }
        HilbertIdentity { n: 4, r: 2, terms }
    }

    pub fn sides(&self) -> (MultiPoly, MultiPoly) {
        let x = xs(self.n);
        let lhs = sum_sq(&x).pow(self.r);
        let rhs = self.terms.iter().fold(MultiPoly::zero(), |acc, (ci, a)| {
            let form = a.iter().zip(&x).fold(MultiPoly::zero(), |f, (aj, xj)| f + c(aj.clone()) * xj.clone());
            acc + c(ci.clone()) * form.pow(2 * self.r)
        });
        (lhs, rhs)
    }
}

pub fn check_hilbert(id: &HilbertIdentity) -> bool {
    let (l, r) = id.sides();
    l == r
}

type Sides = Vec<(MultiPoly, MultiPoly)>;

/// An identity with its adjustable rational coefficients exposed.
#[derive(Clone)]
pub struct NamedIdentity {
    pub name: &'static str,
    pub coefficients: Vec<Rational>,
    build: fn(&[Rational]) -> Result<Sides, Error>,
}

impl std::fmt::Debug for NamedIdentity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NamedIdentity").field("name", &self.name).field("coefficients", &self.coefficients).finish()
    }
}

impl NamedIdentity {
    /// Every listed equality expands to zero difference.
    pub fn holds(&self) -> Result<bool, Error> {
        for (l, r) in (self.build)(&self.coefficients)? {
            if l.try_sub(&r)?.is_zero() {
                continue;
            }
            return Ok(false);
        }
        Ok(true)
    }

    /// Copy with coefficient `i` shifted by `delta`.
    pub fn perturbed(&self, i: usize, delta: &Rational) -> NamedIdentity {
        let mut out = self.clone();
        out.coefficients[i] = &out.coefficients[i] + delta;
        out
    }
}

fn liouville_sides(k: &[Rational]) -> Result<Sides, Error> {
    let mut id = HilbertIdentity::liouville();
    for (t, ci) in id.terms.iter_mut().zip(k) {
        t.0 = ci.clone();
    }
    Ok(vec![id.sides()])
}

// 2 (X^2 + XY + Y^2)^2 = X^4 + Y^4 + (X + Y)^4
fn kw_sides(k: &[Rational]) -> Result<Sides, Error> {
    let [x, y] = MultiPoly::vars(["X", "Y"]);
    let lhs = c(k[0].clone()) * (&x * &x + c(k[1].clone()) * (&x * &y) + &y * &y).pow(2);
    let rhs = c(k[2].clone()) * x.pow(4) + c(k[3].clone()) * y.pow(4) + c(k[4].clone()) * (&x + &y).pow(4);
    Ok(vec![(lhs, rhs)])
}

fn r3() -> QuadExt {
    QuadExt::generator(Field::Sqrt(3)).expect("3 is squarefree")
}

fn qe(a: Rational, b: Rational) -> MultiPoly {
    MultiPoly::constant(QuadExt::new(Field::Sqrt(3), a, b).expect("valid element"))
}

/// The three forms `(cos th_k, sin th_k)` for `th_k = (4k + 3) pi / 6`.
pub fn kw_forms() -> [MultiPoly; 3] {
    let [x1, x2] = MultiPoly::vars(["X1", "X2"]);
    let half = Rational::frac(1, 2);
    let form = |a: MultiPoly, b: Rational| -> MultiPoly { a * x1.clone() + c(b) * x2.clone() };
    [
        form(MultiPoly::zero(), Rational::one()),
        form(qe(Rational::zero(), -half.clone()), -half.clone()),
        form(qe(Rational::zero(), half.clone()), -half),
    ]
}

// X = (-sqrt3 X1 + X2)/sqrt6, Y = (sqrt3 X1 + X2)/sqrt6, carried as sqrt6 X and sqrt6 Y
fn kw_hilbert_sides(k: &[Rational]) -> Result<Sides, Error> {
    let [x1, x2] = MultiPoly::vars(["X1", "X2"]);
    let s = MultiPoly::constant(r3());
    let xt = (-(&s * &x1)) + x2.clone();
    let yt = &s * &x1 + x2.clone();
    let forms = kw_forms();
    let fourth: MultiPoly = forms.iter().fold(MultiPoly::zero(), |acc, f| acc + f.pow(4));
    // 36 times each side of the quartic identity after substitution
    let kw_lhs = c(Rational::from(2)) * (&xt * &xt + &xt * &yt + &yt * &yt).pow(2);
    let kw_rhs = xt.pow(4) + yt.pow(4) + (&xt + &yt).pow(4);
    let plane = (&x1 * &x1 + &x2 * &x2).pow(2);
    Ok(vec![
        (kw_lhs.clone(), kw_rhs.clone()),
        (kw_lhs, c(Rational::from(18)) * plane.clone()),
        (kw_rhs, c(Rational::from(16)) * fourth.clone()),
        (plane, c(k[0].clone()) * fourth),
    ])
}

/// Weight forced on the three forms by the substitution.
pub fn kw_hilbert_weight() -> Rational {
    Rational::frac(8, 9)
}

pub fn kw_hilbert_form(weight: &Rational) -> NamedIdentity {
    NamedIdentity { name: "kw-hilbert", coefficients: vec![weight.clone()], build: kw_hilbert_sides }
}

fn quartic_a(k: &[Rational], cube: bool) -> Result<Sides, Error> {
    let [x1, x2, x3] = MultiPoly::vars(["x1", "x2", "x3"]);
    let lhs = c(k[0].clone()) * x3.pow(4)
        + c(k[1].clone()) * (&x1 * &x1 + &x2 * &x2) * x3.pow(if cube { 3 } else { 2 })
        + c(k[2].clone()) * (&x1 + &x2).pow(2) * (&x1 - &x2).pow(2);
    let rhs = (&x3 - &x1 - x2.clone()) * (&x3 + &x1 + x2.clone()) * (&x3 + &x1 - x2.clone()) * (&x3 - &x1 + x2.clone());
    Ok(vec![(lhs, rhs)])
}

fn quartic_a_sides(k: &[Rational]) -> Result<Sides, Error> {
    quartic_a(k, false)
}

fn quartic_a_literal_sides(k: &[Rational]) -> Result<Sides, Error> {
    quartic_a(k, true)
}

// 2 sum x^4 - (sum x^2)^2 = (x1 + x2 + x3)(x1 + x2 - x3)(x1 - x2 + x3)(x1 - x2 - x3)
fn quartic_b_sides(k: &[Rational]) -> Result<Sides, Error> {
    let x = MultiPoly::vars(["x1", "x2", "x3"]);
    let p4 = x.iter().fold(MultiPoly::zero(), |a, v| a + v.pow(4));
    let lhs = c(k[0].clone()) * p4 - c(k[1].clone()) * sum_sq(&x).pow(2);
    let [x1, x2, x3] = x;
    let rhs = (&x1 + &x2 + x3.clone()) * (&x1 + &x2 - x3.clone()) * (&x1 - &x2 + x3.clone()) * (&x1 - &x2 - x3);
    Ok(vec![(lhs, rhs)])
}

// 3 sum x^4 - (sum x^2)^2 = 2 (x1^2 + w x2^2 + w^2 x3^2)(x1^2 + w^2 x2^2 + w x3^2)
fn quartic_c_sides(k: &[Rational]) -> Result<Sides, Error> {
    let x = MultiPoly::vars(["x1", "x2", "x3"]);
    let p4 = x.iter().fold(MultiPoly::zero(), |a, v| a + v.pow(4));
    let lhs = c(k[0].clone()) * p4 - c(k[1].clone()) * sum_sq(&x).pow(2);
    let w = QuadExt::generator(Field::Omega)?;
    let w = MultiPoly::constant(w);
    let w2 = w.pow(2);
    let sq: Vec<MultiPoly> = x.iter().map(|v| v * v).collect();
    let g1 = sq[0].clone() + &w * &sq[1] + &w2 * &sq[2];
    let g2 = sq[0].clone() + &w2 * &sq[1] + &w * &sq[2];
    Ok(vec![(lhs, c(k[2].clone()) * g1 * g2)])
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&n| Rational::from(n)).collect()
}

pub const NAMES: [&str; 7] = ["liouville", "kw", "kw-hilbert", "quartic-a", "quartic-a-literal", "quartic-b", "quartic-c"];

pub fn named(name: &str) -> Option<NamedIdentity> {
    let (coefficients, build): (Vec<Rational>, fn(&[Rational]) -> Result<Sides, Error>) = match name {
        "liouville" => (vec![Rational::frac(1, 6); 12], liouville_sides),
        "kw" => (ints(&[2, 1, 1, 1, 1]), kw_sides),
        "kw-hilbert" => (vec![kw_hilbert_weight()], kw_hilbert_sides),
        "quartic-a" => (ints(&[1, -2, 1]), quartic_a_sides),
        "quartic-a-literal" => (ints(&[1, -2, 1]), quartic_a_literal_sides),
        "quartic-b" => (ints(&[2, 1]), quartic_b_sides),
        "quartic-c" => (ints(&[3, 1, 2]), quartic_c_sides),
        _ => return None,
    };
    let name = NAMES.iter().find(|n| **n == name).copied()?;
    Some(NamedIdentity { name, coefficients, build })
}

fn holds(name: &str) -> bool {
    named(name).and_then(|id| id.holds().ok()).unwrap_or(false)
}

pub fn check_kw() -> bool {
    holds("kw")
}

pub fn check_kw_hilbert_form() -> bool {
    holds("kw-hilbert")
}

/// The corrected quadratic-in-`x3^2` identity, then the two curve factorizations.
pub fn check_quartic_factorizations() -> bool {
    ["quartic-a", "quartic-b", "quartic-c"].iter().all(|n| holds(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn liouville() {
        let id = HilbertIdentity::liouville();
        assert_eq!(id.terms.len(), 12);
        assert!(check_hilbert(&id));
        let mut bad = id.clone();
        bad.terms[5].0 = q(1, 5);
        assert!(!check_hilbert(&bad));
        let trivial = HilbertIdentity::new(1, 1, vec![(q(1, 1), vec![q(1, 1)])]).unwrap();
        assert!(check_hilbert(&trivial));
        assert!(HilbertIdentity::new(2, 1, vec![(q(1, 1), vec![q(1, 1)])]).is_err());
        assert!(HilbertIdentity::new(1, 1, vec![(q(-1, 1), vec![q(1, 1)])]).is_err());
    }

    #[test]
    fn liouville_permutation_invariant() {
        let (lhs, rhs) = HilbertIdentity::liouville().sides();
        let perm: HashMap<String, MultiPoly> =
            [("X1", "X3"), ("X2", "X1"), ("X3", "X4"), ("X4", "X2")].iter().map(|(a, b)| (a.to_string(), MultiPoly::var(b))).collect();
        assert_eq!(rhs.substitute(&perm).unwrap(), rhs);
        assert_eq!(lhs.substitute(&perm).unwrap(), rhs);
    }

    #[test]
    fn plane_circle_sum() {
        // two planar forms at right angles give X1^4 + X2^4, not a multiple of (X1^2 + X2^2)^2
        let id = HilbertIdentity::new(2, 2, vec![(q(1, 1), vec![q(1, 1), q(0, 1)]), (q(1, 1), vec![q(0, 1), q(1, 1)])]).unwrap();
        assert!(!check_hilbert(&id));
    }

    #[test]
    fn kawada_wooley() {
        assert!(check_kw());
        let mut swapped = named("kw").unwrap();
        swapped.build = |k| {
            let [x, y] = MultiPoly::vars(["X", "Y"]);
            let lhs = c(k[0].clone()) * (&x * &x + &x * &y + &y * &y).pow(2);
            Ok(vec![(lhs, x.pow(4) + y.pow(4) + (&x - &y).pow(4))])
        };
        assert!(!swapped.holds().unwrap());
        let two = Rational::from(2);
        let v = |a: &Rational, b: &Rational| Rational::from(2) * (a * a + a * b + b * b).pow(2);
        let one = Rational::one();
        assert_eq!(v(&one, &one), Rational::from(18));
        assert_eq!(one.pow(4) + one.pow(4) + two.pow(4), Rational::from(18));
    }

    #[test]
    fn hilbert_form() {
        assert!(check_kw_hilbert_form());
        assert!(!kw_hilbert_form(&q(2, 3)).holds().unwrap());
        assert!(!kw_hilbert_form(&q(1, 2)).holds().unwrap());
        assert!(kw_hilbert_form(&q(8, 9)).holds().unwrap());
        // at (X1, X2) = (1, 0): 0 + 9/16 + 9/16
        let at: HashMap<String, QuadExt> =
            [("X1".to_string(), QuadExt::one()), ("X2".to_string(), QuadExt::zero())].into_iter().collect();
        let sum = kw_forms().iter().map(|f| f.pow(4)).fold(MultiPoly::zero(), |a, b| a + b);
        assert_eq!(sum.eval(&at).unwrap(), QuadExt::rational(q(9, 8)));
    }

    #[test]
    fn factorizations() {
        assert!(check_quartic_factorizations());
        assert!(named("quartic-b").unwrap().holds().unwrap());
        assert!(named("quartic-c").unwrap().holds().unwrap());
        assert!(named("quartic-a").unwrap().holds().unwrap());
        assert!(!named("quartic-a-literal").unwrap().holds().unwrap());
    }

    #[test]
    fn perturbations_fail() {
        for name in NAMES.iter().filter(|n| **n != "quartic-a-literal") {
            let id = named(name).unwrap();
            assert!(id.holds().unwrap(), "{name}");
            for i in 0..id.coefficients.len() {
                assert!(!id.perturbed(i, &q(1, 7)).holds().unwrap(), "{name} coefficient {i}");
            }
        }
        assert!(named("nope").is_none());
    }
}
