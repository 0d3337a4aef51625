//! Replayable nonexistence certificates for the quadratic/quartic
//! Hilbert-Kamke system of an antipodal 5-design, and for small Hermite
//! 3-designs.
//!
//! Positive-half sums of squares and fourth powers are written as
//! `A / (2^alpha C)` and `B / (2^beta D)` with `A, B, C, D` odd. Every
//! certificate carries enough data for [`replay`] to redo the congruence
//! bookkeeping from scratch.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::measures::{moment, MeasureSpec};
use crate::rational::Rational;

mod numstr {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<T, D::Error>
    where
        T::Err: Display,
    {
        String::deserialize(d)?.trim().parse().map_err(D::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// `2N` points.
    Even,
    /// `2N + 1` points, the origin included.
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Required `(sum x^2, sum x^4)` over the `N` positive-half nodes.
pub fn half_targets(measure: &MeasureSpec, n: u32, parity: Parity) -> Result<(Rational, Rational), Error> {
    let (a2, a4) = (moment(measure, 2)?, moment(measure, 4)?);
    Ok(targets_from_moments(n, parity, &a2, &a4))
}

fn targets_from_moments(n: u32, parity: Parity, a2: &Rational, a4: &Rational) -> (Rational, Rational) {
    let scale = match parity {
        Parity::Even => Rational::from(n),
        Parity::Odd => Rational::from(2 * n + 1) / Rational::from(2),
    };
    (&scale * a2, scale * a4)
}

/// `x = odd_num / (2^v odd_den)` for positive `x`.
fn two_adic_form(x: &Rational) -> Result<(i64, BigInt, BigInt), Error> {
    if !x.is_positive() {
        return Err(Error::Precondition(format!("expected a positive value, got {x}")));
    }
    let split = |n: &BigInt| -> (i64, BigInt) {
        let tz = n.trailing_zeros().unwrap_or(0);
        (tz as i64, n >> tz)
    };
    let (vn, a) = split(x.numer());
    let (vd, c) = split(x.denom());
    Ok((vd - vn, a, c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceInstance {
    #[serde(with = "numstr")]
    pub a: BigInt,
    #[serde(with = "numstr")]
    pub c: BigInt,
    #[serde(with = "numstr")]
    pub alpha: i64,
    #[serde(with = "numstr")]
    pub b: BigInt,
    #[serde(with = "numstr")]
    pub d: BigInt,
    #[serde(with = "numstr")]
    pub beta: i64,
    #[serde(with = "numstr")]
    pub n: u32,
}

impl CongruenceInstance {
    pub fn new(a: i64, c: i64, alpha: i64, b: i64, d: i64, beta: i64, n: u32) -> Result<Self, Error> {
        let inst = CongruenceInstance {
            a: a.into(),
            c: c.into(),
            alpha,
            b: b.into(),
            d: d.into(),
            beta,
            n,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Normal form of `sum x^2 = s2`, `sum x^4 = s4` over `n` unknowns.
    pub fn from_sums(s2: &Rational, s4: &Rational, n: u32) -> Result<Self, Error> {
        let (alpha, a, c) = two_adic_form(s2)?;
        let (beta, b, d) = two_adic_form(s4)?;
        let inst = CongruenceInstance { a, c, alpha, b, d, beta, n };
        inst.validate()?;
        Ok(inst)
    }

    pub fn for_design(measure: &MeasureSpec, n: u32, parity: Parity) -> Result<Self, Error> {
        let (s2, s4) = half_targets(measure, n, parity)?;
        Self::from_sums(&s2, &s4, n)
    }

    fn validate(&self) -> Result<(), Error> {
        let odd = |v: &BigInt| v.is_odd();
        if !(odd(&self.a) && odd(&self.b) && odd(&self.c) && odd(&self.d)) {
            return Err(Error::Precondition("A, B, C, D must be odd".into()));
        }
        if !self.a.gcd(&self.c).is_one() || !self.b.gcd(&self.d).is_one() {
            return Err(Error::Precondition("gcd(A, C) and gcd(B, D) must be 1".into()));
        }
        if !self.c.is_positive() || !self.d.is_positive() {
            return Err(Error::Precondition("C and D must be positive".into()));
        }
        if self.n == 0 {
            return Err(Error::Precondition("N must be positive".into()));
        }
        Ok(())
    }

    pub fn sum_squares(&self) -> Rational {
        Rational::new(self.a.clone(), &self.c * pow2(self.alpha)).expect("nonzero") * pow2_inv(self.alpha)
    }

    pub fn sum_fourth(&self) -> Rational {
        Rational::new(self.b.clone(), &self.d * pow2(self.beta)).expect("nonzero") * pow2_inv(self.beta)
    }
}

fn pow2(e: i64) -> BigInt {
    if e > 0 {
        BigInt::one() << (e as usize)
    } else {
        BigInt::one()
    }
}

fn pow2_inv(e: i64) -> Rational {
    if e < 0 {
        Rational::from(BigInt::one() << ((-e) as usize))
    } else {
        Rational::one()
    }
}

/// `2^e mod m` for `e >= 0`.
fn pow2_mod(e: i64, m: i64) -> i64 {
    debug_assert!(e >= 0);
    let mut acc = 1 % m;
    for _ in 0..e.min(64) {
        acc = acc * 2 % m;
    }
    acc
}

fn modi(v: &BigInt, m: i64) -> i64 {
    v.mod_floor(&BigInt::from(m)).to_i64().expect("small residue")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairCase {
    /// `alpha <= 0`, `beta` in {3, 4}.
    I,
    /// `alpha = 1`, `beta` in {1, 2, 4}; or `alpha = 2`, `beta` in {1, 2, 3}.
    Ii,
    /// `(alpha, beta) = (2, 4)` and `AD != BC (mod 4)`.
    Iii,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    QuarticOnly {
        #[serde(with = "numstr")]
        r: u32,
    },
    PairedCongruence {
        case: PairCase,
    },
    Mod32 {
        s2: Rational,
        s4: Rational,
        steps: Vec<String>,
    },
    ThreeSquares {
        b: Rational,
        #[serde(with = "numstr")]
        c: BigInt,
        #[serde(with = "numstr")]
        d: BigInt,
        #[serde(with = "numstr")]
        e: u32,
        #[serde(with = "numstr")]
        l: u32,
    },
    /// `b` is not a sum of `count` rational squares for `count` in {0, 1}.
    FewSquares {
        b: Rational,
        #[serde(with = "numstr")]
        count: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    QuarticOnly,
    PairedCongruence,
    Mod32,
    ThreeSquares,
    FewSquares,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
    /// Point count of the design ruled out.
    #[serde(with = "numstr")]
    pub points: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<CongruenceInstance>,
    pub witness: Witness,
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        match self.witness {
            Witness::QuarticOnly { .. } => CertificateKind::QuarticOnly,
            Witness::PairedCongruence { .. } => CertificateKind::PairedCongruence,
            Witness::Mod32 { .. } => CertificateKind::Mod32,
            Witness::ThreeSquares { .. } => CertificateKind::ThreeSquares,
            Witness::FewSquares { .. } => CertificateKind::FewSquares,
        }
    }

    fn bare(instance: &CongruenceInstance, witness: Witness) -> Self {
        Certificate { measure: None, parity: None, points: 0, instance: Some(instance.clone()), witness }
    }

    fn attach(mut self, measure: &MeasureSpec, n: u32, parity: Parity) -> Self {
        self.measure = Some(measure.clone());
        self.parity = Some(parity);
        self.points = match parity {
            Parity::Even => 2 * n,
            Parity::Odd => 2 * n + 1,
        };
        self
    }
}

/// Smallest `r >= 1` with `D r = 2^(4-beta) B (mod 16)`.
pub fn quartic_r(inst: &CongruenceInstance) -> Result<u32, Error> {
    if !(1..=4).contains(&inst.beta) {
        return Err(Error::OutOfRange(format!("beta = {} is outside 1..=4", inst.beta)));
    }
    let rhs = pow2_mod(4 - inst.beta, 16) * modi(&inst.b, 16) % 16;
    let d = modi(&inst.d, 16);
    Ok((1..=16).find(|r| d * r % 16 == rhs).expect("D is odd, hence invertible mod 16") as u32)
}

pub fn certify_quartic(inst: &CongruenceInstance) -> Result<Option<Certificate>, Error> {
    if !(1..=15).contains(&inst.n) {
        return Err(Error::OutOfRange(format!("N = {} is outside 1..=15", inst.n)));
    }
    let r = quartic_r(inst)?;
    Ok((inst.n < r).then(|| Certificate::bare(inst, Witness::QuarticOnly { r })))
}

pub fn pair_case(inst: &CongruenceInstance) -> Option<PairCase> {
    let (al, be) = (inst.alpha, inst.beta);
    if al <= 0 && (be == 3 || be == 4) {
        Some(PairCase::I)
    } else if (al == 1 && [1, 2, 4].contains(&be)) || (al == 2 && [1, 2, 3].contains(&be)) {
        Some(PairCase::Ii)
    } else if (al, be) == (2, 4) && modi(&(&inst.a * &inst.d), 4) != modi(&(&inst.b * &inst.c), 4) {
        Some(PairCase::Iii)
    } else {
        None
    }
}

pub fn certify_pair(inst: &CongruenceInstance) -> Result<Option<Certificate>, Error> {
    if !(1..=15).contains(&inst.n) {
        return Err(Error::OutOfRange(format!("N = {} is outside 1..=15", inst.n)));
    }
    Ok(pair_case(inst).map(|case| Certificate::bare(inst, Witness::PairedCongruence { case })))
}

/// Residues `(m^2 mod 32, m^4 mod 32)` over all integers, odd classes first.
const CLASSES: [(u8, u8, bool); 7] =
    [(1, 1, true), (9, 17, true), (17, 1, true), (25, 17, true), (4, 16, false), (16, 0, false), (0, 0, false)];

/// Reachable `(sum m^2, sum m^4) mod 32` with a flag for "some m odd".
fn reachable_sums(n: u32) -> HashSet<(u8, u8, bool)> {
    let mut states: HashSet<(u8, u8, bool)> = HashSet::from([(0, 0, false)]);
    for _ in 0..n {
        let mut next = HashSet::with_capacity(states.len() * 2);
        for &(s2, s4, odd) in &states {
            for &(c2, c4, c_odd) in &CLASSES {
                next.insert(((s2 + c2) % 32, (s4 + c4) % 32, odd || c_odd));
            }
        }
        states = next;
    }
    states
}

/// Residue-class outcomes for a primitive solution `x_i = m_i / k`.
///
/// Odd `k` is tested on `q2 sum m^2 = p2 k^2`, `q4 sum m^4 = p4 k^4` mod 32.
/// Even `k = 2h` is tested on the reduced equations
/// `sum m^2 = (4 p2 / q2) h^2`, `sum m^4 = (16 p4 / q4) h^4` mod 32, where some
/// `m_i` must be odd. Each entry is `(k odd?, class of k or h, surviving sums)`.
/// `None` when the reduction needs `q2 | 4` and `q4 | 16` and they fail.
fn mod32_scan(n: u32, s2: &Rational, s4: &Rational) -> Option<Vec<(bool, (u8, u8), Option<(u8, u8)>)>> {
    let (p2, q2) = (modi(s2.numer(), 32), modi(s2.denom(), 32));
    let (p4, q4) = (modi(s4.numer(), 32), modi(s4.denom(), 32));
    let (big_q2, big_q4) = (s2.denom().to_i64()?, s4.denom().to_i64()?);
    if 4 % big_q2 != 0 || 16 % big_q4 != 0 {
        return None;
    }
    let (r2, r4) = ((4 / big_q2) * p2 % 32, (16 / big_q4) * p4 % 32);
    let states = reachable_sums(n);
    let mut out = Vec::new();
    for &(k2, k4, k_odd) in CLASSES.iter().filter(|c| c.2) {
        let hit = states.iter().copied().find(|&(m2, m4, _)| {
            (q2 * m2 as i64 - p2 * k2 as i64).rem_euclid(32) == 0 && (q4 * m4 as i64 - p4 * k4 as i64).rem_euclid(32) == 0
        });
        out.push((k_odd, (k2, k4), hit.map(|(a, b, _)| (a, b))));
    }
    for &(h2, h4, _) in &CLASSES {
        let hit = states.iter().copied().find(|&(m2, m4, m_odd)| {
            m_odd && (m2 as i64 - r2 * h2 as i64).rem_euclid(32) == 0 && (m4 as i64 - r4 * h4 as i64).rem_euclid(32) == 0
        });
        out.push((false, (h2, h4), hit.map(|(a, b, _)| (a, b))));
    }
    Some(out)
}

fn mod32_refutes(n: u32, s2: &Rational, s4: &Rational) -> bool {
    mod32_scan(n, s2, s4).is_some_and(|rows| rows.iter().all(|(_, _, hit)| hit.is_none()))
}

fn mod32_steps(n: u32, s2: &Rational, s4: &Rational) -> Vec<String> {
    let mut steps = vec![
        format!("write x_i = m_i/k with gcd(m_1..m_{n}, k) = 1; then sum m^2 = {s2} k^2 and sum m^4 = {s4} k^4"),
        "m^2, m^4 mod 32 take the values (1,1), (9,17), (17,1), (25,17) for odd m and (4,16), (16,0), (0,0) for even m".to_string(),
        "when k is even some m_i is odd, by the gcd condition".to_string(),
    ];
    let (r2, r4) = (Rational::from(4) * s2, Rational::from(16) * s4);
    steps.push(format!("for k = 2h: sum m^2 = {r2} h^2 and sum m^4 = {r4} h^4"));
    for (k_odd, (c2, c4), _) in mod32_scan(n, s2, s4).unwrap_or_default() {
        let (case, v) = if k_odd { ("k odd", "k") } else { ("k = 2h", "h") };
        steps.push(format!("{case}, {v}^2 = {c2} and {v}^4 = {c4} (mod 32): no distribution of {n} residues fits"));
    }
    if n == 16 && *s2 == Rational::from(8) && *s4 == Rational::from(6) {
        steps.extend([
            "k is even and T = #{odd m_i} = 16".to_string(),
            "T_1 + 9T_9 + 17T_17 + 25T_25 = 0 and T_1 + 17T_9 + T_17 + 17T_25 = 0 (mod 32)".to_string(),
            "T_9 + 2T_17 + 3T_25 + 2 = 0 (mod 4) and T_9 + T_25 + 1 = 2S".to_string(),
            "2T_17 + 2T_25 + 2S + 1 = 0 (mod 4), impossible".to_string(),
        ]);
    }
    steps
}

/// Mod-32 residue bookkeeping for `N` in {8, 16}.
pub fn certify_mod32(n: u32, parity: Parity, a2: &Rational, a4: &Rational) -> Result<Option<Certificate>, Error> {
    if n != 8 && n != 16 {
        return Err(Error::OutOfRange(format!("the mod-32 routine covers N in {{8, 16}}, got {n}")));
    }
    let (s2, s4) = targets_from_moments(n, parity, a2, a4);
    if !mod32_refutes(n, &s2, &s4) {
        return Ok(None);
    }
    let steps = mod32_steps(n, &s2, &s4);
    let instance = CongruenceInstance::from_sums(&s2, &s4, n).ok();
    let points = match parity {
        Parity::Even => 2 * n,
        Parity::Odd => 2 * n + 1,
    };
    Ok(Some(Certificate { measure: None, parity: Some(parity), points, instance, witness: Witness::Mod32 { s2, s4, steps } }))
}

/// Tries the paired lemma, then the quartic lemma, then mod 32.
pub fn certify(measure: &MeasureSpec, n: u32, parity: Parity) -> Result<Option<Certificate>, Error> {
    if n == 0 {
        return Err(Error::Precondition("N must be positive".into()));
    }
    let inst = CongruenceInstance::for_design(measure, n, parity)?;
    if n <= 15 && inst.alpha <= 2 && (1..=4).contains(&inst.beta) {
        if let Some(c) = certify_pair(&inst)? {
            return Ok(Some(c.attach(measure, n, parity)));
        }
        if let Some(c) = certify_quartic(&inst)? {
            return Ok(Some(c.attach(measure, n, parity)));
        }
    }
    if n == 8 || n == 16 {
        if let Some(mut c) = certify_mod32(n, parity, &moment(measure, 2)?, &moment(measure, 4)?)? {
            c.measure = Some(measure.clone());
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// `b = c / d^2` with `c = 4^e (8k + l)`, `l` in {1, 2, 3, 5, 6, 7}.
fn square_normal_form(b: &Rational) -> (BigInt, BigInt, u32, u32) {
    let d = b.denom().clone();
    let c = b.numer() * &d;
    let mut core = c.clone();
    let mut e = 0;
    let four = BigInt::from(4);
    while (&core % &four).is_zero() {
        core /= &four;
        e += 1;
    }
    let l = modi(&core, 8) as u32;
    (c, d, e, l)
}

/// Whether a positive rational is a sum of three rational squares.
pub fn three_squares(b: &Rational) -> Result<bool, Error> {
    if !b.is_positive() {
        return Err(Error::Precondition(format!("b must be positive, got {b}")));
    }
    Ok(square_normal_form(b).3 != 7)
}

/// Explicit `(r1, r2, r3)` with `r1 >= r2 >= r3 >= 0` and squares summing to `b`.
pub fn three_squares_decompose(b: &Rational) -> Result<Option<(Rational, Rational, Rational)>, Error> {
    if !three_squares(b)? {
        return Ok(None);
    }
    let (c, d, _, _) = square_normal_form(b);
    let mut l1 = c.sqrt();
    while !l1.is_negative() {
        let rest = &c - &l1 * &l1;
        let mut l2 = rest.sqrt().min(l1.clone());
        while !l2.is_negative() {
            let rest2 = &rest - &l2 * &l2;
            let l3 = rest2.sqrt();
            if &l3 * &l3 == rest2 && l3 <= l2 {
                let q = |l: BigInt| Rational::new(l, d.clone()).expect("d > 0");
                return Ok(Some((q(l1), q(l2), q(l3))));
            }
            l2 -= 1;
        }
        l1 -= 1;
    }
    Err(Error::Verification(format!("no three-square decomposition of {b} found")))
}

/// Nonexistence of an antipodal Hermite 3-design with `n` points, when a
/// sum-of-squares obstruction applies (`n` in {1, 2, 3, 7}).
pub fn certify_hermite3(n: u32) -> Result<Option<Certificate>, Error> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let measure = MeasureSpec::hermite();
    // the positive half carries n a_2 / 2
    let b = Rational::from(n) * moment(&measure, 2)? / Rational::from(2);
    let count = n / 2;
    let witness = match count {
        0 if !b.is_zero() => Witness::FewSquares { b, count },
        1 if b.sqrt().is_none() => Witness::FewSquares { b, count },
        3 if !three_squares(&b)? => {
            let (c, d, e, l) = square_normal_form(&b);
            Witness::ThreeSquares { b, c, d, e, l }
        }
        _ => return Ok(None),
    };
    Ok(Some(Certificate { measure: Some(measure), parity: None, points: n, instance: None, witness }))
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Verification(msg.into())
}

/// Re-derives the contradiction recorded in a certificate.
pub fn replay(cert: &Certificate) -> Result<(), Error> {
    if let (Some(parity), Some(inst)) = (cert.parity, &cert.instance) {
        let expected = 2 * inst.n + u32::from(parity == Parity::Odd);
        if cert.points != expected {
            return Err(fail(format!("{} points do not match N = {} with {parity:?} parity", cert.points, inst.n)));
        }
    }
    if let (Some(m), Some(parity), Some(inst)) = (&cert.measure, cert.parity, &cert.instance) {
        let expected = CongruenceInstance::for_design(m, inst.n, parity)?;
        if &expected != inst {
            return Err(fail("instance does not match the measure's moments"));
        }
    }
    match &cert.witness {
        Witness::QuarticOnly { r } => {
            let inst = cert.instance.as_ref().ok_or_else(|| fail("missing instance"))?;
            replay_quartic(inst, *r)
        }
        Witness::PairedCongruence { case } => {
            let inst = cert.instance.as_ref().ok_or_else(|| fail("missing instance"))?;
            replay_pair(inst, *case)
        }
        Witness::Mod32 { s2, s4, .. } => {
            let n = match cert.parity {
                Some(Parity::Odd) => (cert.points - 1) / 2,
                _ => cert.points / 2,
            };
            if let Some(inst) = &cert.instance {
                if inst.sum_squares() != *s2 || inst.sum_fourth() != *s4 {
                    return Err(fail("mod-32 targets disagree with the instance"));
                }
            }
            let rows = mod32_scan(n, s2, s4).ok_or_else(|| fail("denominators do not divide 4 and 16"))?;
            if let Some((_, (c2, c4), Some((m2, m4)))) = rows.into_iter().find(|r| r.2.is_some()) {
                return Err(fail(format!("residues ({c2}, {c4}) with sums ({m2}, {m4}) survive mod 32")));
            }
            Ok(())
        }
        Witness::ThreeSquares { b, c, d, e, l } => {
            let rebuilt = Rational::new(c.clone(), d * d)?;
            if &rebuilt != b {
                return Err(fail("c / d^2 does not reproduce b"));
            }
            let core = c / BigInt::from(4).pow(*e);
            if &(&core * BigInt::from(4).pow(*e)) != c || modi(&core, 8) as u32 != *l || modi(&core, 4) == 0 {
                return Err(fail("c is not 4^e (8k + l) as recorded"));
            }
            if *l != 7 {
                return Err(fail(format!("l = {l}, so b is a sum of three squares")));
            }
            if let Some(m) = &cert.measure {
                let expected = Rational::from(cert.points) * moment(m, 2)? / Rational::from(2);
                if &expected != b || cert.points / 2 != 3 {
                    return Err(fail("b is not the half-sum of squares for this point count"));
                }
            }
            Ok(())
        }
        Witness::FewSquares { b, count } => match count {
            0 if !b.is_zero() => Ok(()),
            1 if b.sqrt().is_none() => Ok(()),
            _ => Err(fail(format!("{b} is a sum of {count} rational squares"))),
        },
    }
}

fn replay_prelude(inst: &CongruenceInstance) -> Result<(), Error> {
    inst.validate()?;
    if !(1..=15).contains(&inst.n) {
        return Err(fail("N outside 1..=15"));
    }
    if !(1..=4).contains(&inst.beta) {
        // 2^beta D sum m^4 = B k^4 forces k even only when beta >= 1
        return Err(fail("beta outside 1..=4"));
    }
    Ok(())
}

fn replay_quartic(inst: &CongruenceInstance, r: u32) -> Result<(), Error> {
    replay_prelude(inst)?;
    if quartic_r(inst)? != r {
        return Err(fail("recorded R is not the least solution"));
    }
    let (d, rhs) = (modi(&inst.d, 16), pow2_mod(4 - inst.beta, 16) * modi(&inst.b, 16) % 16);
    // k = 2h; T >= 1 odd m_i; h^4 = 0 or 1 (mod 16)
    for t in 1..=inst.n as i64 {
        for h4 in [0, 1] {
            if (d * t - rhs * h4).rem_euclid(16) == 0 {
                return Err(fail(format!("T = {t} with h^4 = {h4} (mod 16) is consistent")));
            }
        }
    }
    Ok(())
}

fn replay_pair(inst: &CongruenceInstance, case: PairCase) -> Result<(), Error> {
    replay_prelude(inst)?;
    if inst.alpha > 2 {
        return Err(fail("alpha exceeds 2"));
    }
    if pair_case(inst) != Some(case) {
        return Err(fail("recorded case does not match (alpha, beta)"));
    }
    let rhs2 = pow2_mod(2 - inst.alpha, 4) * modi(&inst.a, 4) % 4;
    let rhs4 = pow2_mod(4 - inst.beta, 16) * modi(&inst.b, 16) % 16;
    let (c, d) = (modi(&inst.c, 4), modi(&inst.d, 16));
    // h^2 = h^4 = parity of h, modulo 4 and 16 respectively
    for t in 1..=inst.n as i64 {
        for h in [0, 1] {
            if (c * t - rhs2 * h).rem_euclid(4) == 0 && (d * t - rhs4 * h).rem_euclid(16) == 0 {
                return Err(fail(format!("T = {t}, h parity {h} satisfies both congruences")));
            }
        }
    }
    Ok(())
}
