//! Meet-in-the-middle search for positive half-configurations `m_1 <= ... <= m_N`
//! with prescribed `sum m^2` and `sum m^4`, the antipodal reduction of the
//! degree-5 equations for `x = m / d`.

use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::certificates::{half_targets, Parity};
use crate::designs::{is_disjoint, verify, Design};
use crate::error::Error;
use crate::measures::MeasureSpec;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchSpec {
    pub n: usize,
    pub denominator: u32,
    pub target_s2: Rational,
    pub target_s4: Rational,
    /// Inclusive numerator range.
    pub range: (u32, u32),
    pub distinct: bool,
    /// When present, every hit is re-verified as a 5-design for this measure.
    pub measure: Option<MeasureSpec>,
    pub parity: Parity,
    /// Cap on left-half index entries; larger instances fail instead of exhausting memory.
    pub max_index: usize,
}

pub const DEFAULT_MAX_INDEX: usize = 60_000_000;

impl SearchSpec {
    /// Targets `N a_2 d^2`, `N a_4 d^4` (with `N` replaced by `(2N + 1) / 2` for odd designs).
    pub fn for_measure(measure: &MeasureSpec, n: usize, denominator: u32, parity: Parity, distinct: bool) -> Result<Self, Error> {
        if denominator == 0 {
            return Err(Error::Precondition("denominator must be positive".into()));
        }
        let (h2, h4) = half_targets(measure, n as u32, parity)?;
        let d = Rational::from(denominator);
        let s2 = h2 * d.pow(2);
        let s4 = h4 * d.pow(4);
        let hi = if measure.is_bounded() {
            denominator.saturating_sub(1)
        } else {
            s2.to_integer().map(|v| isqrt(&v)).unwrap_or(0)
        };
        Ok(SearchSpec {
            n,
            denominator,
            target_s2: s2,
            target_s4: s4,
            range: (1, hi),
            distinct,
            measure: Some(measure.clone()),
            parity,
            max_index: DEFAULT_MAX_INDEX,
        })
    }

    pub fn from_targets(n: usize, denominator: u32, s2: u64, s4: u64, distinct: bool) -> Self {
        SearchSpec {
            n,
            denominator,
            target_s2: Rational::from(s2),
            target_s4: Rational::from(s4),
            range: (1, denominator.saturating_sub(1)),
            distinct,
            measure: None,
            parity: Parity::Even,
            max_index: DEFAULT_MAX_INDEX,
        }
    }

    fn integral_targets(&self) -> Result<(u64, u64), String> {
        let conv = |r: &Rational, name: &str| -> Result<u64, String> {
            if !r.is_integer() {
                return Err(format!("{name} target {r} is not an integer"));
            }
            r.to_integer().and_then(|v| u64::try_from(v).ok()).ok_or_else(|| format!("{name} target {r} is out of range"))
        };
        Ok((conv(&self.target_s2, "sum m^2")?, conv(&self.target_s4, "sum m^4")?))
    }

    /// Design with points `+-m/d`, plus the origin for odd parity.
    pub fn design(&self, numerators: &[u32]) -> Result<Design, Error> {
        let measure = self.measure.clone().ok_or_else(|| Error::Precondition("search has no measure".into()))?;
        let half: Vec<Rational> = numerators.iter().map(|&m| Rational::frac(m as i64, self.denominator as i64)).collect();
        Design::antipodal(measure, &half, self.parity == Parity::Odd)
    }
}

fn isqrt(v: &num_bigint::BigInt) -> u32 {
    u32::try_from(v.sqrt()).unwrap_or(u32::MAX)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    /// Sorted numerator lists.
    pub solutions: Vec<Vec<u32>>,
    /// True when the whole space was scanned.
    pub complete: bool,
    pub reason: Option<String>,
    pub index_size: usize,
}

/// Prefix sums of `v^2` and `v^4` over the numerator range.
struct Powers {
    lo: u32,
    p2: Vec<u128>,
    p4: Vec<u128>,
    c2: Vec<u128>,
    c4: Vec<u128>,
}

impl Powers {
    fn new(lo: u32, hi: u32) -> Self {
        let p2: Vec<u128> = (lo..=hi).map(|v| (v as u128).pow(2)).collect();
        let p4: Vec<u128> = p2.iter().map(|v| v * v).collect();
        let cum = |p: &[u128]| -> Vec<u128> {
            let mut c = vec![0u128];
            for v in p {
                c.push(c.last().unwrap() + v);
            }
            c
        };
        let (c2, c4) = (cum(&p2), cum(&p4));
        Powers { lo, p2, p4, c2, c4 }
    }

    /// Sums over the index range, `(sum v^2, sum v^4)`.
    fn range(&self, r: Range<usize>) -> (u128, u128) {
        (self.c2[r.end] - self.c2[r.start], self.c4[r.end] - self.c4[r.start])
    }

    fn len(&self) -> usize {
        self.p2.len()
    }
}

struct Bounds<'a> {
    pw: &'a Powers,
    distinct: bool,
}

impl Bounds<'_> {
    /// Smallest sums of `c` values at index `>= from`.
    fn min_from(&self, c: usize, from: usize) -> Option<(u128, u128)> {
        if c == 0 {
            return Some((0, 0));
        }
        if self.distinct {
            (from + c <= self.pw.len()).then(|| self.pw.range(from..from + c))
        } else {
            (from < self.pw.len()).then(|| (c as u128 * self.pw.p2[from], c as u128 * self.pw.p4[from]))
        }
    }

    /// Largest sums of `c` values below index `below` (at or below it for multisets).
    fn max_below(&self, c: usize, below: usize) -> Option<(u128, u128)> {
        if c == 0 {
            return Some((0, 0));
        }
        if self.distinct {
            (below >= c).then(|| self.pw.range(below - c..below))
        } else {
            Some((c as u128 * self.pw.p2[below], c as u128 * self.pw.p4[below]))
        }
    }
}

/// Sorted left-half index: key `(s2, s4)`, then the largest element.
struct LeftIndex {
    h: usize,
    entries: Vec<(u64, u64, u32, u32)>,
    combos: Vec<u32>,
}

impl LeftIndex {
    fn build(bounds: &Bounds, h: usize, r: usize, t: (u128, u128), cap: usize) -> Result<Self, Error> {
        let mut idx = LeftIndex { h, entries: Vec::new(), combos: Vec::new() };
        let mut stack = Vec::with_capacity(h);
        if !idx.extend(bounds, r, t, cap, 0, 0, 0, &mut stack) {
            return Err(Error::OutOfRange(format!("left index exceeds {cap} entries")));
        }
        idx.entries.par_sort_unstable();
        Ok(idx)
    }

    /// False once the cap is hit.
    #[allow(clippy::too_many_arguments)]
    fn extend(&mut self, b: &Bounds, r: usize, t: (u128, u128), cap: usize, start: usize, s2: u128, s4: u128, stack: &mut Vec<usize>) -> bool {
        if stack.len() == self.h {
            if self.entries.len() >= cap || self.combos.len() + self.h > u32::MAX as usize {
                return false;
            }
            let at = self.combos.len() as u32;
            self.combos.extend(stack.iter().map(|&i| i as u32));
            self.entries.push((s2 as u64, s4 as u64, *stack.last().unwrap() as u32, at));
            return true;
        }
        let (t2, t4) = t;
        for i in start..b.pw.len() {
            let (n2, n4) = (s2 + b.pw.p2[i], s4 + b.pw.p4[i]);
            let rest = self.h - stack.len() - 1 + r;
            let next = if b.distinct { i + 1 } else { i };
            let Some((m2, m4)) = b.min_from(rest, next) else { break };
            if n2 + m2 > t2 || n4 + m4 > t4 {
                break;
            }
            stack.push(i);
            let ok = self.extend(b, r, t, cap, next, n2, n4, stack);
            stack.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    /// Left halves with the given sums whose largest index fits under `top`.
    fn matches(&self, s2: u128, s4: u128, top: usize, distinct: bool) -> impl Iterator<Item = &[u32]> + '_ {
        let key = (s2 as u64, s4 as u64);
        let start = self.entries.partition_point(|e| (e.0, e.1) < key);
        self.entries[start..]
            .iter()
            .take_while(move |e| (e.0, e.1) == key && if distinct { (e.2 as usize) < top } else { e.2 as usize <= top })
            .map(move |e| &self.combos[e.3 as usize..e.3 as usize + self.h])
    }
}

struct RightSearch<'a> {
    bounds: Bounds<'a>,
    index: &'a LeftIndex,
    h: usize,
    r: usize,
    limit: usize,
}

impl RightSearch<'_> {
    /// Right halves whose largest index is `top`, in descending order of picks.
    fn shard(&self, top: usize, t2: u128, t4: u128) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let pw = self.bounds.pw;
        if pw.p2[top] > t2 || pw.p4[top] > t4 {
            return out;
        }
        let mut picked = vec![top];
        self.descend(t2 - pw.p2[top], t4 - pw.p4[top], &mut picked, &mut out);
        out
    }

    fn descend(&self, r2: u128, r4: u128, picked: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if out.len() >= self.limit {
            return;
        }
        let last = *picked.last().unwrap();
        if picked.len() == self.r {
            for left in self.index.matches(r2, r4, last, self.bounds.distinct) {
                let mut sol: Vec<usize> = left.iter().map(|&i| i as usize).collect();
                sol.extend(picked.iter().rev());
                out.push(sol);
                if out.len() >= self.limit {
                    return;
                }
            }
            return;
        }
        let pw = self.bounds.pw;
        let top = if self.bounds.distinct { last } else { last + 1 };
        for i in (0..top).rev() {
            if pw.p2[i] > r2 || pw.p4[i] > r4 {
                continue;
            }
            let (n2, n4) = (r2 - pw.p2[i], r4 - pw.p4[i]);
            let c = self.r - picked.len() - 1 + self.h;
            let Some((x2, x4)) = self.bounds.max_below(c, i) else { break };
            if n2 > x2 || n4 > x4 {
                break;
            }
            let (m2, m4) = self.bounds.min_from(c, 0).expect("range is nonempty");
            if n2 < m2 || n4 < m4 || n2 * n2 > c as u128 * n4 {
                continue;
            }
            picked.push(i);
            self.descend(n2, n4, picked, out);
            picked.pop();
        }
    }
}

fn verify_hit(spec: &SearchSpec, sol: &[u32], t2: u64, t4: u64) -> Result<(), Error> {
    let s2: u128 = sol.iter().map(|&m| (m as u128).pow(2)).sum();
    let s4: u128 = sol.iter().map(|&m| (m as u128).pow(4)).sum();
    if s2 != t2 as u128 || s4 != t4 as u128 {
        return Err(Error::Verification(format!("{sol:?} misses the targets")));
    }
    if spec.measure.is_some() {
        let d = spec.design(sol)?;
        let rep = verify(&d, 5)?;
        if !rep.passes(5) || (spec.distinct && !is_disjoint(&d)) {
            return Err(Error::Verification(format!("{sol:?} is not a 5-design")));
        }
    }
    Ok(())
}

/// Up to `limit` solutions; results do not depend on the thread count.
pub fn mitm_solve(spec: &SearchSpec, limit: usize) -> Result<SearchResult, Error> {
    if spec.n < 2 {
        return Err(Error::Precondition("N must be at least 2".into()));
    }
    let (t2, t4) = match spec.integral_targets() {
        Ok(t) => t,
        Err(reason) => return Ok(SearchResult { complete: true, reason: Some(reason), ..Default::default() }),
    };
    let (lo, hi) = spec.range;
    if lo == 0 || hi < lo || limit == 0 {
        return Ok(SearchResult { complete: true, reason: Some("empty numerator range".into()), ..Default::default() });
    }
    let pw = Powers::new(lo, hi);
    let bounds = Bounds { pw: &pw, distinct: spec.distinct };
    let h = spec.n / 2;
    let r = spec.n - h;
    let (t2, t4) = (t2 as u128, t4 as u128);
    let index = LeftIndex::build(&bounds, h, r, (t2, t4), spec.max_index)?;
    let search = RightSearch { bounds: Bounds { pw: &pw, distinct: spec.distinct }, index: &index, h, r, limit };
    let tops: Vec<usize> = (0..pw.len()).rev().collect();
    let chunk = rayon::current_num_threads().max(1);
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut complete = true;
    for group in tops.chunks(chunk) {
        let parts: Vec<Vec<Vec<usize>>> = group.par_iter().map(|&top| search.shard(top, t2, t4)).collect();
        for p in parts {
            found.extend(p);
        }
        if found.len() >= limit {
            complete = false;
            found.truncate(limit);
            break;
        }
    }
    let mut solutions: Vec<Vec<u32>> =
        found.into_iter().map(|s| s.into_iter().map(|i| pw.lo + i as u32).collect()).collect();
    solutions.sort();
    for s in &solutions {
        verify_hit(spec, s, t2 as u64, t4 as u64)?;
    }
    Ok(SearchResult { solutions, complete, reason: None, index_size: index.entries.len() })
}

/// Full enumeration, for cross-checking.
pub fn naive_solve(spec: &SearchSpec) -> Vec<Vec<u32>> {
    let Ok((t2, t4)) = spec.integral_targets() else { return Vec::new() };
    let (lo, hi) = spec.range;
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(lo: u32, hi: u32, n: usize, distinct: bool, t: (u64, u64), cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            let s2: u64 = cur.iter().map(|&m| (m as u64).pow(2)).sum();
            let s4: u64 = cur.iter().map(|&m| (m as u64).pow(4)).sum();
            if (s2, s4) == t {
                out.push(cur.clone());
            }
            return;
        }
        let start = cur.last().map(|&m| if distinct { m + 1 } else { m }).unwrap_or(lo);
        for m in start..=hi {
            cur.push(m);
            rec(lo, hi, n, distinct, t, cur, out);
            cur.pop();
        }
    }
    if lo >= 1 && lo <= hi {
        rec(lo, hi, spec.n, spec.distinct, (t2, t4), &mut cur, &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum GapOutcome {
    NonIntegral { reason: String },
    Hit { numerators: Vec<u32> },
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub n: usize,
    pub parity: Parity,
    pub rows: Vec<(u32, GapOutcome)>,
}

impl GapReport {
    pub fn first_hit(&self) -> Option<(u32, &[u32])> {
        self.rows.iter().find_map(|(d, o)| match o {
            GapOutcome::Hit { numerators } => Some((*d, numerators.as_slice())),
            _ => None,
        })
    }
}

/// Scans `d = 2..=d_max` for a distinct half-configuration; stops at the first hit.
pub fn gap_scan(measure: &MeasureSpec, n: usize, parity: Parity, d_max: u32) -> Result<GapReport, Error> {
    if d_max < 2 {
        return Err(Error::Precondition("d_max must be at least 2".into()));
    }
    let mut rows = Vec::new();
    for d in 2..=d_max {
        let spec = SearchSpec::for_measure(measure, n, d, parity, true)?;
        let res = mitm_solve(&spec, 1)?;
        let outcome = match (res.reason, res.solutions.into_iter().next()) {
            (Some(reason), _) if reason.contains("integer") => GapOutcome::NonIntegral { reason },
            (_, Some(numerators)) => GapOutcome::Hit { numerators },
            _ => GapOutcome::Exhausted,
        };
        let hit = matches!(outcome, GapOutcome::Hit { .. });
        rows.push((d, outcome));
        if hit {
            break;
        }
    }
    Ok(GapReport { n, parity, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cheb() -> MeasureSpec {
        MeasureSpec::chebyshev()
    }

    #[test]
    fn targets() {
        let s = SearchSpec::for_measure(&cheb(), 11, 90, Parity::Even, true).unwrap();
        assert_eq!((s.target_s2.clone(), s.target_s4.clone()), (Rational::from(44550), Rational::from(270641250)));
        assert_eq!(s.range, (1, 89));
        let h = SearchSpec::for_measure(&MeasureSpec::hermite(), 14, 30, Parity::Even, true).unwrap();
        assert_eq!((h.target_s2.clone(), h.target_s4.clone()), (Rational::from(6300), Rational::from(8505000)));
        assert_eq!(h.range, (1, 79));
    }

    #[test]
    fn small_designs() {
        let s = SearchSpec::for_measure(&cheb(), 3, 14, Parity::Even, true).unwrap();
        let r = mitm_solve(&s, 10).unwrap();
        assert!(r.solutions.contains(&vec![2, 11, 13]));
        assert!(r.complete);
        assert_eq!(r.solutions, naive_solve(&s));
    }

    #[test]
    fn unsatisfiable() {
        let s = SearchSpec::from_targets(2, 2, 4, 16, true);
        let r = mitm_solve(&s, 10).unwrap();
        assert!(r.solutions.is_empty() && r.complete);
        let s = SearchSpec::for_measure(&cheb(), 3, 3, Parity::Even, true).unwrap();
        let r = mitm_solve(&s, 10).unwrap();
        assert!(r.reason.unwrap().contains("not an integer"));
        assert!(mitm_solve(&SearchSpec::from_targets(1, 5, 1, 1, true), 1).is_err());
        let mut big = SearchSpec::for_measure(&cheb(), 11, 90, Parity::Even, true).unwrap();
        big.max_index = 1000;
        assert!(matches!(mitm_solve(&big, 1), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn hermite_fourteen() {
        let s = SearchSpec::for_measure(&MeasureSpec::hermite(), 14, 30, Parity::Even, true).unwrap();
        let r = mitm_solve(&s, usize::MAX).unwrap();
        assert!(r.solutions.contains(&vec![1, 2, 3, 4, 5, 8, 9, 13, 14, 15, 25, 39, 40, 42]));
    }

    #[test]
    fn gap_examples() {
        let g = gap_scan(&cheb(), 3, Parity::Even, 14).unwrap();
        assert_eq!(g.first_hit(), Some((14, &[2u32, 11, 13][..])));
        let g = gap_scan(&cheb(), 7, Parity::Even, 40).unwrap();
        assert!(g.first_hit().is_none());
        assert!(g.rows.iter().any(|(_, o)| *o == GapOutcome::Exhausted));
        let g = gap_scan(&cheb(), 18, Parity::Odd, 8).unwrap();
        assert!(g.first_hit().is_none());
        assert!(gap_scan(&cheb(), 3, Parity::Even, 1).is_err());
    }

    #[test]
    fn limit_is_respected() {
        let s = SearchSpec::from_targets(3, 13, 0, 0, false);
        let all: Vec<Vec<u32>> = {
            let mut v = Vec::new();
            for a in 1..13u64 {
                let t = SearchSpec::from_targets(3, 13, 3 * a * a, 3 * a.pow(4), false);
                v.extend(mitm_solve(&t, 5).unwrap().solutions);
            }
            v
        };
        assert_eq!(all.len(), 12);
        assert!(mitm_solve(&s, 3).unwrap().solutions.is_empty());
    }

    proptest! {
        #[test]
        fn matches_naive(n in 2usize..=4, d in 2u32..=12, distinct: bool, seed in prop::collection::vec(1u32..12, 4)) {
            let pick: Vec<u32> = seed.iter().take(n).map(|&m| 1 + (m - 1) % (d - 1)).collect();
            let s2: u64 = pick.iter().map(|&m| (m as u64).pow(2)).sum();
            let s4: u64 = pick.iter().map(|&m| (m as u64).pow(4)).sum();
            let spec = SearchSpec::from_targets(n, d, s2, s4, distinct);
            let fast = mitm_solve(&spec, usize::MAX).unwrap();
            let mut slow = naive_solve(&spec);
            slow.sort();
            prop_assert_eq!(fast.solutions, slow);
        }
    }
}
