//! Constructive side of the design spectra: the sporadic catalog, exact
//! selection of disjoint six-point blocks, and builders that return either
//! a verified design, a nonexistence certificate, or an explicit unknown.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::certificates::{certify, certify_hermite3, Certificate, Parity, Witness};
use crate::designs::{compose, is_antipodal, is_disjoint, verify, Design};
use crate::error::Error;
use crate::families::{fivesix, hermite_circle4, hermite_circle5};
use crate::measures::{moment, MeasureSpec};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct SporadicFixture {
    pub label: &'static str,
    pub denominator: u32,
    pub numerators: &'static [u32],
    pub hermite: bool,
    pub degree: u32,
    pub with_origin: bool,
}

impl SporadicFixture {
    pub fn measure(&self) -> MeasureSpec {
        if self.hermite {
            MeasureSpec::hermite()
        } else {
            MeasureSpec::chebyshev()
        }
    }

    pub fn half(&self) -> Vec<Rational> {
        self.numerators.iter().map(|&m| Rational::frac(m as i64, self.denominator as i64)).collect()
    }

    pub fn point_count(&self) -> usize {
        2 * self.numerators.len() + self.with_origin as usize
    }

    pub fn design(&self) -> Design {
        Design::antipodal(self.measure(), &self.half(), self.with_origin).expect("catalog points are valid")
    }

    /// `(sum m^2, sum m^4)` over the numerators.
    pub fn numerator_sums(&self) -> (u128, u128) {
        self.numerators.iter().fold((0, 0), |(s2, s4), &m| {
            let m = m as u128;
            (s2 + m * m, s4 + m * m * m * m)
        })
    }
}

const FIXTURES: [SporadicFixture; 4] = [
    SporadicFixture {
        label: "chebyshev-22",
        denominator: 90,
        numerators: &[2, 8, 16, 34, 72, 73, 76, 77, 80, 84, 86],
        hermite: false,
        degree: 5,
        with_origin: false,
    },
    SporadicFixture {
        label: "chebyshev-38",
        denominator: 126,
        numerators: &[2, 4, 20, 32, 40, 44, 56, 83, 88, 100, 104, 106, 109, 110, 116, 118, 120, 122, 124],
        hermite: false,
        degree: 5,
        with_origin: false,
    },
    SporadicFixture {
        label: "chebyshev-35",
        denominator: 1092,
        numerators: &[9, 65, 91, 195, 531, 669, 689, 729, 837, 871, 923, 933, 1001, 1027, 1053, 1066, 1079],
        hermite: false,
        degree: 5,
        with_origin: true,
    },
    SporadicFixture {
        label: "hermite-28",
        denominator: 30,
        numerators: &[1, 2, 3, 4, 5, 8, 9, 13, 14, 15, 25, 39, 40, 42],
        hermite: true,
        degree: 5,
        with_origin: false,
    },
];

/// The sporadic configurations, each verified on first access.
pub fn catalog() -> &'static [SporadicFixture] {
    static CHECKED: OnceLock<()> = OnceLock::new();
    CHECKED.get_or_init(|| {
        for f in &FIXTURES {
            let d = f.design();
            let r = verify(&d, f.degree).expect("valid degree");
            assert!(r.passes(f.degree) && r.antipodal && r.disjoint, "fixture {} fails verification", f.label);
        }
    });
    &FIXTURES
}

pub fn fixture(label: &str) -> Option<&'static SporadicFixture> {
    catalog().iter().find(|f| f.label == label)
}

/// Outcome of a spectrum builder.
#[derive(Clone, Debug, PartialEq)]
pub enum Construction {
    Design(Design),
    Certificate(Box<Certificate>),
    Unknown(String),
}

impl Construction {
    pub fn design(&self) -> Option<&Design> {
        match self {
            Construction::Design(d) => Some(d),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Construction::Certificate(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ConstructionDoc {
    Design(Design),
    Certificate(Box<Certificate>),
    Unknown(String),
}

impl Serialize for Construction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Construction::Design(d) => ConstructionDoc::Design(d.clone()),
            Construction::Certificate(c) => ConstructionDoc::Certificate(c.clone()),
            Construction::Unknown(r) => ConstructionDoc::Unknown(r.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Construction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match ConstructionDoc::deserialize(d)? {
            ConstructionDoc::Design(d) => Construction::Design(d),
            ConstructionDoc::Certificate(c) => Construction::Certificate(c),
            ConstructionDoc::Unknown(r) => Construction::Unknown(r),
        })
    }
}

/// Nonnegative integers `t1 < t2 < ...` whose six-point blocks are valid,
/// mutually disjoint and avoid `exclude`, checked exactly.
pub fn disjoint_parameters(count: usize, exclude: &[Rational]) -> Result<Vec<i64>, Error> {
    if count == 0 {
        return Err(Error::Precondition("count must be at least 1".into()));
    }
    let mut used: BTreeSet<Rational> = exclude.iter().cloned().collect();
    let mut chosen = Vec::with_capacity(count);
    let mut t = 0i64;
    while chosen.len() < count {
        if let Ok(block) = fivesix(&Rational::from(t)) {
            if is_disjoint(&block) && block.points().iter().all(|p| !used.contains(p)) {
                used.extend(block.points().iter().cloned());
                chosen.push(t);
            }
        }
        t += 1;
    }
    Ok(chosen)
}

fn with_blocks(base: Option<Design>, blocks: usize, measure: &MeasureSpec) -> Result<Design, Error> {
    let exclude: Vec<Rational> = base.as_ref().map(|d| d.points().to_vec()).unwrap_or_default();
    let mut acc = base;
    if blocks > 0 {
        for t in disjoint_parameters(blocks, &exclude)? {
            let block = fivesix(&Rational::from(t))?.rebind(measure.clone())?;
            acc = Some(match acc {
                None => block,
                Some(d) => compose(&d, &block)?,
            });
        }
    }
    acc.ok_or_else(|| Error::Precondition("nothing to compose".into()))
}

fn checked(design: Design, degree: u32) -> Result<Construction, Error> {
    let r = verify(&design, degree)?;
    if !(r.passes(degree) && r.antipodal && r.disjoint) {
        return Err(Error::Verification(format!("constructed {}-point design fails at degree {degree}", design.len())));
    }
    Ok(Construction::Design(design))
}

/// Antipodal Chebyshev 5-design with `2N` points, or its certificate.
pub fn build_even5(n: u32) -> Result<Construction, Error> {
    if n == 0 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    let cheb = MeasureSpec::chebyshev();
    let base = match n % 3 {
        0 => Some((None, n / 3)),
        2 if n >= 11 => Some((Some(fixture("chebyshev-22").expect("catalog").design()), (n - 11) / 3)),
        1 if n >= 19 => Some((Some(fixture("chebyshev-38").expect("catalog").design()), (n - 19) / 3)),
        _ => None,
    };
    if let Some((seed, blocks)) = base {
        return checked(with_blocks(seed, blocks as usize, &cheb)?, 5);
    }
    Ok(match certify(&cheb, n, Parity::Even)? {
        Some(c) => Construction::Certificate(Box::new(c)),
        None => Construction::Unknown(format!("no construction or certificate for N = {n}")),
    })
}

/// Antipodal Chebyshev 5-design with `2N + 1` points, or its certificate.
pub fn build_odd5(n: u32) -> Result<Construction, Error> {
    let cheb = MeasureSpec::chebyshev();
    if n == 0 {
        // the origin alone: the positive half would need a_2 / 2 from no nodes
        let b = moment(&cheb, 2)? / Rational::from(2);
        let cert = Certificate {
            measure: Some(cheb),
            parity: Some(Parity::Odd),
            points: 1,
            instance: None,
            witness: Witness::FewSquares { b, count: 0 },
        };
        return Ok(Construction::Certificate(Box::new(cert)));
    }
    if n <= 16 {
        if let Some(c) = certify(&cheb, n, Parity::Odd)? {
            return Ok(Construction::Certificate(Box::new(c)));
        }
    }
    if n >= 17 && n % 3 == 2 {
        let seed = fixture("chebyshev-35").expect("catalog").design();
        return checked(with_blocks(Some(seed), ((n - 17) / 3) as usize, &cheb)?, 5);
    }
    Ok(Construction::Unknown(format!("{} points: no construction or certificate is known", 2 * n + 1)))
}

/// `n = 4a + 5b + 6c` with `b <= 1`, maximal `c`, then larger `a`.
pub fn hermite3_blocks(n: u32) -> Option<(u32, u32, u32)> {
    (0..=n / 6).rev().find_map(|c| {
        let rest = n - 6 * c;
        [0u32, 1].iter().filter_map(|&b| {
            let r = rest.checked_sub(5 * b)?;
            (r % 4 == 0).then_some((r / 4, b, c))
        }).max_by_key(|&(a, _, _)| a)
    })
}

/// Positive rationals ordered by height `p + q`, then by `p`.
fn rationals_by_height() -> impl Iterator<Item = Rational> {
    (2i64..).flat_map(|h| (1..h).filter(move |p| p.gcd(&(h - p)) == 1).map(move |p| Rational::frac(p, h - p)))
}

fn take_disjoint(
    count: u32,
    used: &mut BTreeSet<Rational>,
    candidates: impl Iterator<Item = Design>,
) -> Vec<Design> {
    let mut out = Vec::new();
    for block in candidates {
        if out.len() == count as usize {
            break;
        }
        if is_disjoint(&block) && block.points().iter().all(|p| !used.contains(p)) {
            used.extend(block.points().iter().cloned());
            out.push(block);
        }
    }
    out
}

/// Antipodal Hermite 3-design with `n` points, or its certificate.
pub fn build_hermite3(n: u32) -> Result<Construction, Error> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if let Some(c) = certify_hermite3(n)? {
        return Ok(Construction::Certificate(Box::new(c)));
    }
    let (a, b, c) = hermite3_blocks(n).ok_or_else(|| Error::Precondition(format!("{n} is not 4a + 5b + 6c")))?;
    let h = MeasureSpec::hermite();
    let mut used = BTreeSet::new();
    let mut blocks = take_disjoint(c, &mut used, (0i64..).filter_map(|t| fivesix(&Rational::from(t)).ok()?.rebind(h.clone()).ok()));
    blocks.extend(take_disjoint(b, &mut used, std::iter::once(Rational::zero()).chain(rationals_by_height()).map(|t| hermite_circle5(&t))));
    blocks.extend(take_disjoint(a, &mut used, rationals_by_height().map(|t| hermite_circle4(&t))));
    let mut iter = blocks.into_iter();
    let first = iter.next().expect("n >= 4 has a block");
    let design = iter.try_fold(first, |acc, blk| compose(&acc, &blk))?;
    if design.len() != n as usize || !is_antipodal(&design) {
        return Err(Error::Verification(format!("block assembly produced {} points for n = {n}", design.len())));
    }
    checked(design, 3)
}
