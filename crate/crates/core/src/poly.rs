//! Sparse multivariate polynomials with exact coefficients.
//!
//! A polynomial carries its own variable list; exponent vectors are dense and
//! aligned with that list. Binary operations merge variable lists by name,
//! so `x + y` and `y + x` built independently compare equal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::quadext::{Field, QuadExt};
use crate::rational::Rational;

#[derive(Clone)]
pub struct MultiPoly {
    vars: Vec<String>,
    field: Field,
    terms: BTreeMap<Vec<u32>, QuadExt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { vars: Vec::new(), field: Field::Rational, terms: BTreeMap::new() }
    }

    pub fn constant(c: impl Into<QuadExt>) -> Self {
        let c = c.into();
        let mut p = MultiPoly { vars: Vec::new(), field: c.field(), terms: BTreeMap::new() };
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], QuadExt::one());
        MultiPoly { vars: vec![name.to_string()], field: Field::Rational, terms }
    }

    /// `vars` for a list of names, in order.
    pub fn vars<const N: usize>(names: [&str; N]) -> [MultiPoly; N] {
        names.map(MultiPoly::var)
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs.
    pub fn coefficient(&self, monomial: &[(&str, u32)]) -> QuadExt {
        let mut exps = vec![0u32; self.vars.len()];
        for (name, e) in monomial {
            match self.vars.iter().position(|v| v == name) {
                Some(i) => exps[i] += e,
                None if *e == 0 => {}
                None => return QuadExt::zero(),
            }
        }
        self.terms.get(&exps).cloned().unwrap_or_else(QuadExt::zero)
    }

    /// Re-expresses `self` over a superset of its variables.
    fn widened(&self, vars: &[String]) -> MultiPoly {
        if vars == self.vars.as_slice() {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0u32; vars.len()];
                for (i, &k) in e.iter().enumerate() {
                    ne[map[i]] = k;
                }
                (ne, c.clone())
            })
            .collect();
        MultiPoly { vars: vars.to_vec(), field: self.field, terms }
    }

    fn merged_vars(&self, other: &MultiPoly) -> Vec<String> {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    pub fn try_add(&self, rhs: &MultiPoly) -> Result<MultiPoly, Error> {
        let field = self.field.join(rhs.field)?;
        let vars = self.merged_vars(rhs);
        let mut out = self.widened(&vars);
        out.field = field;
        for (e, c) in rhs.widened(&vars).terms {
            add_term(&mut out.terms, e, c)?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &MultiPoly) -> Result<MultiPoly, Error> {
        self.try_add(&-rhs)
    }

    pub fn try_mul(&self, rhs: &MultiPoly) -> Result<MultiPoly, Error> {
        let field = self.field.join(rhs.field)?;
        let vars = self.merged_vars(rhs);
        let (a, b) = (self.widened(&vars), rhs.widened(&vars));
        let mut terms = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                add_term(&mut terms, e, ca.try_mul(cb)?)?;
            }
        }
        Ok(MultiPoly { vars, field, terms })
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(QuadExt::one());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, k: &QuadExt) -> Result<MultiPoly, Error> {
        self.try_mul(&MultiPoly::constant(k.clone()))
    }

    /// Replaces each bound variable by its polynomial; unbound variables stay.
    pub fn substitute(&self, bindings: &HashMap<String, MultiPoly>) -> Result<MultiPoly, Error> {
        for name in bindings.keys() {
            if !self.vars.contains(name) {
                return Err(Error::Precondition(format!("variable {name} does not occur in the polynomial")));
            }
        }
        let images: Vec<MultiPoly> = self
            .vars
            .iter()
            .map(|v| bindings.get(v).cloned().unwrap_or_else(|| MultiPoly::var(v)))
            .collect();
        let mut power_cache: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = power_cache.entry((i, k)).or_insert_with(|| images[i].pow(k));
                term = term.try_mul(p)?;
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// Evaluates at a full assignment of the variables.
    pub fn eval(&self, point: &HashMap<String, QuadExt>) -> Result<QuadExt, Error> {
        let values: Vec<&QuadExt> = self
            .vars
            .iter()
            .map(|v| point.get(v).ok_or_else(|| Error::Precondition(format!("no value for {v}"))))
            .collect::<Result<_, _>>()?;
        let mut acc = QuadExt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.try_mul(&values[i].pow(k))?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self, var: &str) -> MultiPoly {
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return MultiPoly::zero();
        };
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            add_term(&mut terms, ne, c.scale(&Rational::from(e[i]))).expect("same field");
        }
        MultiPoly { vars: self.vars.clone(), field: self.field, terms }
    }
}

fn add_term(terms: &mut BTreeMap<Vec<u32>, QuadExt>, e: Vec<u32>, c: QuadExt) -> Result<(), Error> {
    if c.is_zero() {
        return Ok(());
    }
    match terms.remove(&e) {
        Some(old) => {
            let s = old.try_add(&c)?;
            if !s.is_zero() {
                terms.insert(e, s);
            }
        }
        None => {
            terms.insert(e, c);
        }
    }
    Ok(())
}

/// True iff `p - q` expands to zero.
pub fn poly_equal(p: &MultiPoly, q: &MultiPoly) -> Result<bool, Error> {
    Ok(p.try_sub(q)?.is_zero())
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        poly_equal(self, other).unwrap_or(false)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], k) })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Rational> for MultiPoly {
    fn from(r: Rational) -> Self {
        MultiPoly::constant(r)
    }
}

impl From<QuadExt> for MultiPoly {
    fn from(c: QuadExt) -> Self {
        MultiPoly::constant(c)
    }
}

// Operator forms panic on mismatched coefficient fields.
impl<'a, 'b> Add<&'b MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'b MultiPoly) -> MultiPoly {
        self.try_add(rhs).unwrap()
    }
}

impl<'a, 'b> Sub<&'b MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'b MultiPoly) -> MultiPoly {
        self.try_sub(rhs).unwrap()
    }
}

impl<'a, 'b> Mul<&'b MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'b MultiPoly) -> MultiPoly {
        self.try_mul(rhs).unwrap()
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl<'a> Neg for &'a MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Rational constant as a polynomial.
pub fn rat(n: i64, d: i64) -> MultiPoly {
    MultiPoly::constant(Rational::frac(n, d))
}
