//! Prouhet-Tarry-Escott solutions: power-sum verification, integer
//! normalization, affine equivalence, and the explicit map from the
//! homogeneous family into Borwein's solutions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::designs::{multiset, verify, Design};
use crate::error::Error;
use crate::families::{borwein_linear, fivesix_triple};
use crate::poly::{poly_equal, MultiPoly};
use crate::rational::{common_denominator, Rational};

/// A pair of equal-size multisets, with a claimed degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PteDoc", into = "PteDoc")]
pub struct PteSolution {
    x: Vec<Rational>,
    y: Vec<Rational>,
    declared_degree: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PteDoc {
    #[serde(rename = "X")]
    pub x: Vec<Rational>,
    #[serde(rename = "Y")]
    pub y: Vec<Rational>,
    pub degree: u32,
}

impl TryFrom<PteDoc> for PteSolution {
    type Error = Error;
    fn try_from(doc: PteDoc) -> Result<Self, Error> {
        PteSolution::new(doc.x, doc.y, doc.degree)
    }
}

impl From<PteSolution> for PteDoc {
    fn from(s: PteSolution) -> Self {
        PteDoc { x: s.x, y: s.y, degree: s.declared_degree }
    }
}

impl PteSolution {
    pub fn new(x: Vec<Rational>, y: Vec<Rational>, declared_degree: u32) -> Result<Self, Error> {
        if x.is_empty() || x.len() != y.len() {
            return Err(Error::Precondition(format!(
                "PTE sides must be non-empty and of equal size, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        Ok(PteSolution { x, y, declared_degree })
    }

    pub fn x(&self) -> &[Rational] {
        &self.x
    }

    pub fn y(&self) -> &[Rational] {
        &self.y
    }

    pub fn size(&self) -> usize {
        self.x.len()
    }

    pub fn declared_degree(&self) -> u32 {
        self.declared_degree
    }

    pub fn is_integral(&self) -> bool {
        self.x.iter().chain(&self.y).all(Rational::is_integer)
    }

    /// Both sides scaled by the lcm of all denominators.
    pub fn to_integers(&self) -> PteSolution {
        let l = Rational::from(common_denominator(self.x.iter().chain(&self.y)));
        PteSolution {
            x: self.x.iter().map(|v| v * &l).collect(),
            y: self.y.iter().map(|v| v * &l).collect(),
            declared_degree: self.declared_degree,
        }
    }

    /// Applies `v -> a v + b` to both sides.
    pub fn affine(&self, a: &Rational, b: &Rational) -> PteSolution {
        PteSolution {
            x: self.x.iter().map(|v| a * v + b).collect(),
            y: self.y.iter().map(|v| a * v + b).collect(),
            declared_degree: self.declared_degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PteReport {
    pub verified_degree: u32,
    pub disjoint: bool,
    pub ideal: bool,
}

/// Largest `M` with equal power sums of every degree `1..=M`.
///
/// When the sums agree through the size of the sides, Newton's identities
/// force the multisets to coincide, so the degree is reported as that size.
pub fn verify_pte(sol: &PteSolution) -> PteReport {
    let n = sol.size() as u32;
    let mut verified_degree = n;
    for k in 1..=n {
        let sx: Rational = sol.x.iter().map(|v| v.pow(k as i32)).sum();
        let sy: Rational = sol.y.iter().map(|v| v.pow(k as i32)).sum();
        if sx != sy {
            verified_degree = k - 1;
            break;
        }
    }
    let right = multiset(&sol.y);
    let disjoint = sol.x.iter().all(|v| !right.contains_key(v));
    PteReport { verified_degree, disjoint, ideal: sol.size() as u32 == verified_degree + 1 }
}

/// Finds `(A, B)` with `A != 0` mapping `s1` onto `s2` side by side.
pub fn affine_equivalent(s1: &PteSolution, s2: &PteSolution) -> Result<Option<(Rational, Rational)>, Error> {
    if s1.size() != s2.size() {
        return Err(Error::Precondition("affine equivalence needs solutions of equal size".into()));
    }
    let keys1: Vec<Rational> = multiset(&s1.x).into_keys().collect();
    if keys1.len() < 2 {
        return Err(Error::Precondition("X has a single distinct value; the affine map is undetermined".into()));
    }
    let (u0, u1) = (&keys1[0], &keys1[1]);
    let keys2: Vec<Rational> = multiset(&s2.x).into_keys().collect();
    let (x2, y2) = (multiset(&s2.x), multiset(&s2.y));
    for v in &keys2 {
        for w in &keys2 {
            if v == w {
                continue;
            }
            let a = (w - v) / (u1 - u0);
            let b = v - &a * u0;
            let image = s1.affine(&a, &b);
            if multiset(&image.x) == x2 && multiset(&image.y) == y2 {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// One branch of the explicit map from the `(s, t)` dehomogenized family
/// into the sign-adjusted Borwein solution.
#[derive(Clone, Debug, PartialEq)]
pub enum AmnBranch {
    /// `A · borwein_linear(m, n)` equals `(fivesix(s), fivesix(t))`, checked.
    Witness { a: Rational, m: Rational, n: Rational },
    Omitted { reason: String },
}

/// Both `(A, m, n)` branches, each verified by multiset comparison.
pub fn amn_witness(s: &Rational, t: &Rational) -> Result<Vec<AmnBranch>, Error> {
    let one = Rational::one();
    let c = |k: i64| Rational::from(k);
    let st = s * t;
    let base = c(56) * (s * s + s + &one) * (t * t + t + &one);
    let p = c(2) * &st + t + s + c(2);
    let q = c(8) * &st + c(5) * t + c(5) * s - c(3);
    let u = c(2) * &st - c(11) * s - c(11) * t - c(13);
    let w = s - t;

    let mut branches = Vec::with_capacity(2);
    let first = if p.is_zero() || q.is_zero() {
        Err("2st+s+t+2 or 8st+5s+5t-3 vanishes".to_string())
    } else {
        Ok((-(&p * &q) / base.clone(), c(3) * (t - s) / p.clone(), -(&u / &q)))
    };
    let second = if u.is_zero() || w.is_zero() {
        Err("2st-11s-11t-13 or s-t vanishes".to_string())
    } else {
        Ok((&w * &u / base, c(3) * &q / u.clone(), &p / &w))
    };
    let target_x = antipodal(fivesix_triple(s));
    let target_y = antipodal(fivesix_triple(t));
    for branch in [first, second] {
        branches.push(match branch {
            Err(reason) => AmnBranch::Omitted { reason },
            Ok((a, m, n)) => {
                let image = borwein_linear(&m, &n).affine(&a, &Rational::zero());
                if multiset(&image.x) != multiset(&target_x) || multiset(&image.y) != multiset(&target_y) {
                    return Err(Error::Verification(format!("A·borwein({m}, {n}) does not reproduce the pair at s={s}, t={t}")));
                }
                AmnBranch::Witness { a, m, n }
            }
        });
    }
    Ok(branches)
}

fn antipodal(h: [Rational; 3]) -> Vec<Rational> {
    h.into_iter().flat_map(|v| [v.clone(), -v]).collect()
}

/// Polynomial identities in `t` behind the solvability of the quadratic in A:
/// `4(x1^2 + x1 x2 + x2^2) = 3` and
/// `(14(t^2+t+1))^2 - (2t^2-22t-13)^2 = 3 (2t+3)^2 (4t-1)^2`.
pub fn amn_discriminant_identities() -> Result<bool, Error> {
    let t = MultiPoly::var("t");
    let k = |n: i64| MultiPoly::constant(Rational::from(n));
    let p1 = &(&(&k(2) * &t.pow(2)) - &(&k(22) * &t)) - &k(13);
    let p2 = &(&(&k(-13) * &t.pow(2)) - &(&k(4) * &t)) + &k(11);
    let den = &k(14) * &(&(&t.pow(2) + &t) + &k(1));
    let lhs = &k(4) * &(&(&p1.pow(2) + &(&p1 * &p2)) + &p2.pow(2));
    let first = poly_equal(&lhs, &(&k(3) * &den.pow(2)))?;
    let left = &den.pow(2) - &p1.pow(2);
    let right = &k(3) * &(&(&(&k(2) * &t) + &k(3)).pow(2) * &(&(&k(4) * &t) - &k(1)).pow(2));
    Ok(first && poly_equal(&left, &right)?)
}

/// Difference of two equal-size designs of the same measure, cleared to
/// integers; equal power sums through the designs' common degree.
pub fn from_designs(d1: &Design, d2: &Design) -> Result<PteSolution, Error> {
    if d1.measure() != d2.measure() {
        return Err(Error::MeasureMismatch);
    }
    if d1.len() != d2.len() {
        return Err(Error::Precondition(format!("designs have {} and {} points", d1.len(), d2.len())));
    }
    if !d1.is_equal_weighted() || !d2.is_equal_weighted() {
        return Err(Error::Precondition("designs must be equal-weighted".into()));
    }
    let probe = (2 * d1.len()) as u32;
    let degree = verify(d1, probe)?.max_degree.min(verify(d2, probe)?.max_degree);
    if degree == 0 {
        return Err(Error::Precondition("designs do not share a positive degree".into()));
    }
    let mut left = d1.multiset();
    let mut right = d2.multiset();
    let shared: Vec<Rational> = left.keys().filter(|k| right.contains_key(k)).cloned().collect();
    for k in shared {
        let common = left[&k].min(right[&k]);
        for side in [&mut left, &mut right] {
            let e = side.get_mut(&k).expect("present");
            *e -= common;
            if *e == 0 {
                side.remove(&k);
            }
        }
    }
    if left.is_empty() {
        return Err(Error::Precondition("designs are identical; the solution would be empty".into()));
    }
    let expand = |m: BTreeMap<Rational, usize>| -> Vec<Rational> {
        m.into_iter().flat_map(|(k, c)| std::iter::repeat(k).take(c)).collect()
    };
    Ok(PteSolution::new(expand(left), expand(right), degree)?.to_integers())
}

/// Integer entries of an integral solution.
pub fn integer_sides(sol: &PteSolution) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let conv = |v: &[Rational]| v.iter().map(|r| r.is_integer().then(|| r.numer().clone())).collect::<Option<Vec<_>>>();
    Some((conv(&sol.x)?, conv(&sol.y)?))
}
