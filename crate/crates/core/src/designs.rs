//! Designs (Chebyshev-type quadrature nodes) and their verification.
//!
//! A design is a non-empty multiset of rational nodes bound to a measure,
//! optionally carrying rational weights. Verification compares the weighted
//! power sums with the measure's moments exactly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::measures::{moment, MeasureSpec};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DesignDoc", into = "DesignDoc")]
pub struct Design {
    measure: MeasureSpec,
    points: Vec<Rational>,
    weights: Option<Vec<Rational>>,
}

/// Wire form of a design: all numbers are `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignDoc {
    pub measure: MeasureSpec,
    pub points: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Rational>>,
}

impl TryFrom<DesignDoc> for Design {
    type Error = Error;
    fn try_from(doc: DesignDoc) -> Result<Self, Error> {
        match doc.weights {
            Some(w) => Design::weighted(doc.measure, doc.points, w),
            None => Design::new(doc.measure, doc.points),
        }
    }
}

impl From<Design> for DesignDoc {
    fn from(d: Design) -> Self {
        DesignDoc { measure: d.measure, points: d.points, weights: d.weights }
    }
}

impl Design {
    /// Equal-weight design.
    pub fn new(measure: MeasureSpec, points: Vec<Rational>) -> Result<Self, Error> {
        let d = Design { measure, points, weights: None };
        d.validate()?;
        Ok(d)
    }

    pub fn weighted(measure: MeasureSpec, points: Vec<Rational>, weights: Vec<Rational>) -> Result<Self, Error> {
        let d = Design { measure, points, weights: Some(weights) };
        d.validate()?;
        Ok(d)
    }

    /// Antipodal closure `{±x}` of the given nodes, plus the origin if asked.
    pub fn antipodal(measure: MeasureSpec, half: &[Rational], with_origin: bool) -> Result<Self, Error> {
        let mut points: Vec<Rational> = half.iter().flat_map(|x| [x.clone(), -x]).collect();
        if with_origin {
            points.push(Rational::zero());
        }
        Design::new(measure, points)
    }

    fn validate(&self) -> Result<(), Error> {
        self.measure.validate()?;
        if self.points.is_empty() {
            return Err(Error::InvalidDesign("a design needs at least one point".into()));
        }
        if self.measure.is_bounded() {
            // weighted rules may use the endpoints themselves, equal-weight designs may not
            let one = Rational::one();
            let outside = |p: &&Rational| match self.weights {
                Some(_) => p.abs() > one,
                None => p.abs() >= one,
            };
            if let Some(p) = self.points.iter().find(outside) {
                return Err(Error::Boundary(p.clone()));
            }
        }
        if let Some(w) = &self.weights {
            if w.len() != self.points.len() {
                return Err(Error::InvalidDesign(format!(
                    "{} weights for {} points",
                    w.len(),
                    self.points.len()
                )));
            }
            if let Some(bad) = w.iter().find(|w| !w.is_positive()) {
                return Err(Error::InvalidDesign(format!("weight {bad} is not positive")));
            }
            let total: Rational = w.iter().sum();
            if total != Rational::one() {
                return Err(Error::InvalidDesign(format!("weights sum to {total}, not 1")));
            }
        }
        Ok(())
    }

    pub fn measure(&self) -> &MeasureSpec {
        &self.measure
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn weights(&self) -> Option<&[Rational]> {
        self.weights.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_equal_weighted(&self) -> bool {
        self.weights.is_none()
    }

    /// Same nodes, bound to another measure.
    pub fn rebind(&self, measure: MeasureSpec) -> Result<Design, Error> {
        let d = Design { measure, points: self.points.clone(), weights: self.weights.clone() };
        d.validate()?;
        Ok(d)
    }

    /// Weighted power sum; for equal weights this is `(1/n) sum x^k`.
    pub fn power_mean(&self, k: u32) -> Rational {
        let k = k as i32;
        match &self.weights {
            None => {
                let s: Rational = self.points.iter().map(|x| x.pow(k)).sum();
                s / Rational::from(self.points.len())
            }
            Some(w) => self.points.iter().zip(w).map(|(x, w)| w * x.pow(k)).sum(),
        }
    }

    /// Nodes with multiplicities, sorted.
    pub fn multiset(&self) -> BTreeMap<Rational, usize> {
        multiset(&self.points)
    }
}

pub(crate) fn multiset(points: &[Rational]) -> BTreeMap<Rational, usize> {
    let mut m = BTreeMap::new();
    for p in points {
        *m.entry(p.clone()).or_insert(0) += 1;
    }
    m
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesignReport {
    /// Largest k' <= target + 1 with every residual up to k' zero.
    pub max_degree: u32,
    /// `(k, power_mean(k) - a_k)` for k = 1 ..= target + 1.
    pub residuals: Vec<(u32, Rational)>,
    pub antipodal: bool,
    /// All nodes distinct.
    pub disjoint: bool,
}

impl DesignReport {
    /// Zero residuals through `degree`.
    pub fn passes(&self, degree: u32) -> bool {
        self.max_degree >= degree
    }

    pub fn residual(&self, k: u32) -> Option<&Rational> {
        self.residuals.iter().find(|(j, _)| *j == k).map(|(_, r)| r)
    }
}

/// Checks the moment equations for k = 1 ..= target_degree + 1.
pub fn verify(design: &Design, target_degree: u32) -> Result<DesignReport, Error> {
    if target_degree < 1 {
        return Err(Error::Precondition("target degree must be at least 1".into()));
    }
    let residuals: Vec<(u32, Rational)> = (1..=target_degree + 1)
        .map(|k| Ok((k, design.power_mean(k) - moment(design.measure(), k)?)))
        .collect::<Result<_, Error>>()?;
    let max_degree = residuals
        .iter()
        .take_while(|(_, r)| r.is_zero())
        .map(|(k, _)| *k)
        .last()
        .unwrap_or(0);
    Ok(DesignReport { max_degree, residuals, antipodal: is_antipodal(design), disjoint: is_disjoint(design) })
}

pub fn is_antipodal(design: &Design) -> bool {
    let negated: Vec<Rational> = design.points.iter().map(|x| -x).collect();
    design.multiset() == multiset(&negated)
}

pub fn is_disjoint(design: &Design) -> bool {
    design.multiset().len() == design.points.len()
}

/// Union of two disjoint equal-weight designs for the same measure.
pub fn compose(d1: &Design, d2: &Design) -> Result<Design, Error> {
    if d1.measure != d2.measure {
        return Err(Error::MeasureMismatch);
    }
    if !d1.is_equal_weighted() || !d2.is_equal_weighted() {
        return Err(Error::Precondition("compose needs equal-weight designs".into()));
    }
    let right = d2.multiset();
    let shared: Vec<Rational> = d1.multiset().into_keys().filter(|p| right.contains_key(p)).collect();
    if !shared.is_empty() {
        return Err(Error::Overlap(shared));
    }
    let mut points = d1.points.clone();
    points.extend(d2.points.iter().cloned());
    Design::new(d1.measure.clone(), points)
}

/// `{A x + B}` over the design's nodes.
pub fn affine_image(design: &Design, a: &Rational, b: &Rational) -> Result<Vec<Rational>, Error> {
    affine_map(design.points(), a, b)
}

pub fn affine_map(points: &[Rational], a: &Rational, b: &Rational) -> Result<Vec<Rational>, Error> {
    if a.is_zero() {
        return Err(Error::ZeroScale);
    }
    Ok(points.iter().map(|x| a * x + b).collect())
}
