//! Words in the free group on `x1, x2, ...`: parsing, evaluation, identity
//! checks, and verbal and marginal subgroups of finite groups.

mod parse;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::config::{Limits, Meter};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubgroupSet, IDENTITY};

/// A freely reduced word: adjacent syllables have distinct variables and
/// every exponent is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord {
    syllables: Vec<(usize, i64)>,
}

impl FreeWord {
    pub fn identity() -> FreeWord {
        FreeWord::default()
    }

    /// The variable `x{v}`; `v` is one-based.
    pub fn var(v: usize) -> FreeWord {
        assert!(v >= 1, "variables are one-based");
        FreeWord { syllables: vec![(v, 1)] }
    }

    /// Reduces an arbitrary syllable list.
    pub fn from_syllables(syllables: impl IntoIterator<Item = (usize, i64)>) -> Result<FreeWord> {
        let mut w = FreeWord::identity();
        for (v, e) in syllables {
            if v == 0 {
                return Err(Error::InvalidParam("variable index 0".into()));
            }
            w.push(v, e);
        }
        Ok(w)
    }

    pub fn parse(text: &str) -> Result<FreeWord> {
        parse::parse(text)
    }

    fn push(&mut self, v: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((lv, le)) if *lv == v => {
                *le += e;
                if *le == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((v, e)),
        }
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Largest variable index occurring in the word.
    pub fn arity(&self) -> usize {
        self.syllables.iter().map(|&(v, _)| v).max().unwrap_or(0)
    }

    pub fn exponent_sum(&self, v: usize) -> i64 {
        self.syllables.iter().filter(|s| s.0 == v).map(|s| s.1).sum()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &(v, e) in &other.syllables {
            w.push(v, e);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { syllables: self.syllables.iter().rev().map(|&(v, e)| (v, -e)).collect() }
    }

    pub fn pow(&self, e: i64) -> FreeWord {
        if let [(v, x)] = self.syllables[..] {
            return FreeWord { syllables: vec![(v, x * e)] };
        }
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(FreeWord::identity(), |acc, _| acc.mul(&base))
    }

    /// `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &FreeWord) -> FreeWord {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// Left-normed `[w1, w2, ..., wk]`.
    pub fn left_normed(words: &[FreeWord]) -> FreeWord {
        let mut it = words.iter();
        let first = it.next().cloned().unwrap_or_default();
        it.fold(first, |acc, w| acc.commutator(w))
    }

    /// Value at `assignment[i]` for `x{i+1}`.
    pub fn evaluate(&self, g: &FiniteGroup, assignment: &[usize]) -> Result<usize> {
        for &(v, _) in &self.syllables {
            if v > assignment.len() {
                return Err(Error::MissingVariable(v));
            }
        }
        for &a in assignment {
            g.check_index(a)?;
        }
        Ok(self.eval(g, assignment))
    }

    #[inline]
    pub(crate) fn eval(&self, g: &FiniteGroup, assignment: &[usize]) -> usize {
        self.syllables.iter().fold(IDENTITY, |acc, &(v, e)| g.mul(acc, g.pow(assignment[v - 1], e)))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, &(v, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<FreeWord> {
        FreeWord::parse(s)
    }
}

impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityVerdict {
    pub holds: bool,
    /// Lexicographically least violating assignment.
    pub counterexample: Option<Vec<usize>>,
}

/// Scans `G^arity` with the first variable varying slowest.
pub fn is_identity(g: &FiniteGroup, w: &FreeWord, limits: &Limits) -> Result<IdentityVerdict> {
    let domain: Vec<usize> = g.elements().collect();
    let mut meter = limits.meter(scan_cost(domain.len(), w.arity(), w.len()));
    let counterexample = first_violation(g, &domain, w, &mut meter)?;
    Ok(IdentityVerdict { holds: counterexample.is_none(), counterexample })
}

pub(crate) fn scan_cost(domain: usize, arity: usize, len: usize) -> u128 {
    (domain as u128).saturating_pow(arity as u32).saturating_mul(len.max(1) as u128)
}

/// Least tuple over `domain^arity` at which `w` is not the identity.
pub(crate) fn first_violation(
    g: &FiniteGroup,
    domain: &[usize],
    w: &FreeWord,
    meter: &mut Meter,
) -> Result<Option<Vec<usize>>> {
    let k = w.arity();
    let cost = w.len().max(1) as u64;
    let mut found = None;
    for_each_tuple(domain, k, |tuple| {
        meter.charge(cost)?;
        if w.eval(g, tuple) != IDENTITY {
            found = Some(tuple.to_vec());
            return Ok(false);
        }
        Ok(true)
    })?;
    Ok(found)
}

/// Like [`for_each_tuple`], restricted to tuples with at most `max_distinct`
/// distinct entries.
pub(crate) fn for_each_sparse_tuple(
    domain: &[usize],
    k: usize,
    max_distinct: usize,
    mut f: impl FnMut(&[usize]) -> Result<bool>,
) -> Result<()> {
    fn go(
        domain: &[usize],
        k: usize,
        max_distinct: usize,
        tuple: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        if tuple.len() == k {
            return f(tuple);
        }
        let distinct = {
            let mut d = tuple.clone();
            d.sort_unstable();
            d.dedup();
            d.len()
        };
        for &x in domain {
            if distinct == max_distinct && !tuple.contains(&x) {
                continue;
            }
            tuple.push(x);
            let more = go(domain, k, max_distinct, tuple, f)?;
            tuple.pop();
            if !more {
                return Ok(false);
            }
        }
        Ok(true)
    }
    if max_distinct >= k {
        return for_each_tuple(domain, k, f);
    }
    if k > 0 && (domain.is_empty() || max_distinct == 0) {
        return Ok(());
    }
    go(domain, k, max_distinct, &mut Vec::with_capacity(k), &mut f).map(|_| ())
}

/// Calls `f` on every tuple of `domain^k` in lexicographic order until it
/// returns `false`.
pub(crate) fn for_each_tuple(
    domain: &[usize],
    k: usize,
    mut f: impl FnMut(&[usize]) -> Result<bool>,
) -> Result<()> {
    if domain.is_empty() && k > 0 {
        return Ok(());
    }
    let mut idx = vec![0usize; k];
    let mut tuple: Vec<usize> = vec![domain.first().copied().unwrap_or(IDENTITY); k];
    loop {
        if !f(&tuple)? {
            return Ok(());
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < domain.len() {
                tuple[pos] = domain[idx[pos]];
                break;
            }
            idx[pos] = 0;
            tuple[pos] = domain[0];
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardWord {
    Abelian,
    Nilpotent(usize),
    Metabelian,
    Burnside(usize),
}

impl StandardWord {
    /// `abelian`, `nilpotent-k`, `metabelian`, `burnside-n`.
    pub fn parse(name: &str) -> Result<StandardWord> {
        let param = |prefix: &str| -> Option<Result<usize>> {
            let rest = name.strip_prefix(prefix)?;
            Some(match rest.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k),
                _ => Err(Error::InvalidParam(format!("`{name}` needs a positive parameter"))),
            })
        };
        if name == "abelian" {
            return Ok(StandardWord::Abelian);
        }
        if name == "metabelian" {
            return Ok(StandardWord::Metabelian);
        }
        if let Some(k) = param("nilpotent-") {
            return Ok(StandardWord::Nilpotent(k?));
        }
        if let Some(n) = param("burnside-") {
            return Ok(StandardWord::Burnside(n?));
        }
        Err(Error::UnknownBuiltin(name.to_string()))
    }

    pub fn word(&self) -> Result<FreeWord> {
        Ok(match *self {
            StandardWord::Abelian => FreeWord::var(1).commutator(&FreeWord::var(2)),
            StandardWord::Nilpotent(0) | StandardWord::Burnside(0) => {
                return Err(Error::InvalidParam("parameter must be at least 1".into()))
            }
            StandardWord::Nilpotent(k) => {
                FreeWord::left_normed(&(1..=k + 1).map(FreeWord::var).collect::<Vec<_>>())
            }
            StandardWord::Metabelian => {
                let c12 = FreeWord::var(1).commutator(&FreeWord::var(2));
                let c34 = FreeWord::var(3).commutator(&FreeWord::var(4));
                c12.commutator(&c34)
            }
            StandardWord::Burnside(n) => FreeWord::var(1).pow(n as i64),
        })
    }
}

impl fmt::Display for StandardWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardWord::Abelian => f.write_str("abelian"),
            StandardWord::Nilpotent(k) => write!(f, "nilpotent-{k}"),
            StandardWord::Metabelian => f.write_str("metabelian"),
            StandardWord::Burnside(n) => write!(f, "burnside-{n}"),
        }
    }
}

/// Subgroup generated by all values of the words.
pub fn verbal_subgroup(g: &FiniteGroup, ws: &[FreeWord], limits: &Limits) -> Result<SubgroupSet> {
    let domain: Vec<usize> = g.elements().collect();
    let mut h = g.trivial_subgroup();
    for w in ws {
        let mut meter = limits.meter(scan_cost(domain.len(), w.arity(), w.len()));
        let cost = w.len().max(1) as u64;
        for_each_tuple(&domain, w.arity(), |tuple| {
            meter.charge(cost)?;
            let v = w.eval(g, tuple);
            if !h.contains(v) {
                h = g.extend(&h, v);
            }
            Ok(!h.is_whole())
        })?;
        if h.is_whole() {
            break;
        }
    }
    assert!(g.is_normal(&h), "verbal subgroup must be normal");
    Ok(h)
}

/// Intersection over the words of the elements `g` with
/// `w(.., g*g_i, ..) = w(.., g_i, ..)` for every tuple and position.
pub fn marginal_subgroup(g: &FiniteGroup, ws: &[FreeWord], limits: &Limits) -> Result<SubgroupSet> {
    let n = g.order();
    let worst = ws
        .iter()
        .map(|w| scan_cost(n, w.arity(), w.len()).saturating_mul((w.arity() * n) as u128))
        .max()
        .unwrap_or(0);
    let mut meter = limits.meter(worst);
    let domain: Vec<usize> = g.elements().collect();
    let mut m = g.trivial_subgroup();
    for x in g.elements() {
        if m.contains(x) {
            continue;
        }
        let mut marginal = true;
        for w in ws {
            if !is_marginal(g, w, x, &domain, &mut meter)? {
                marginal = false;
                break;
            }
        }
        if marginal {
            m = g.extend(&m, x);
        }
    }
    assert!(g.is_normal(&m), "marginal subgroup must be normal");
    Ok(m)
}

fn is_marginal(g: &FiniteGroup, w: &FreeWord, x: usize, domain: &[usize], meter: &mut Meter) -> Result<bool> {
    let k = w.arity();
    let cost = (w.len().max(1) * (k + 1)) as u64;
    let mut ok = true;
    let mut shifted = vec![0; k];
    for_each_tuple(domain, k, |tuple| {
        meter.charge(cost)?;
        let base = w.eval(g, tuple);
        shifted.copy_from_slice(tuple);
        for i in 0..k {
            shifted[i] = g.mul(x, tuple[i]);
            let v = w.eval(g, &shifted);
            shifted[i] = tuple[i];
            if v != base {
                ok = false;
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s).unwrap()
    }

    fn grp(name: &str) -> FiniteGroup {
        FiniteGroup::by_name(name, &Limits::default()).unwrap()
    }

    #[test]
    fn sparse_tuples_match_filtered_tuples() {
        let domain = [0, 2, 3, 5];
        for k in 0..4 {
            for m in 0..4 {
                let mut all = Vec::new();
                for_each_tuple(&domain, k, |t| {
                    let mut d = t.to_vec();
                    d.sort_unstable();
                    d.dedup();
                    if d.len() <= m || k == 0 {
                        all.push(t.to_vec());
                    }
                    Ok(true)
                })
                .unwrap();
                let mut sparse = Vec::new();
                for_each_sparse_tuple(&domain, k, m, |t| {
                    sparse.push(t.to_vec());
                    Ok(true)
                })
                .unwrap();
                assert_eq!(all, sparse, "k={k} m={m}");
            }
        }
    }

    #[test]
    fn parse_examples() {
        assert_eq!(w("[x1,x2]").to_string(), "x1^-1 x2^-1 x1 x2");
        assert_eq!(w("[x1,x2]").arity(), 2);
        assert_eq!(w("x1^2").syllables(), &[(1, 2)]);
        assert_eq!(w("[x1,x2,x2]"), w("[[x1,x2],x2]"));
        assert_eq!(w("x1 x1^-1"), FreeWord::identity());
        assert_eq!(w("1").to_string(), "1");
        assert_eq!(w("(x1 x2)^-2").to_string(), "x2^-1 x1^-1 x2^-1 x1^-1");
        assert_eq!(w(" [ x1 , x2 ] ^ 2 "), w("[x1,x2]").pow(2));
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let off = |s: &str| match FreeWord::parse(s) {
            Err(Error::Parse { offset, .. }) => offset,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(off("x0"), 1);
        assert_eq!(off("x1^0"), 3);
        assert_eq!(off("[x1]"), 3);
        assert_eq!(off("x1 y"), 3);
        assert_eq!(off(""), 0);
        assert_eq!(off("(x1"), 3);
        assert_eq!(off("[x1,]"), 4);
    }

    #[test]
    fn evaluation_examples() {
        let s3 = grp("S3");
        let e = |l: &str| s3.element(l).unwrap();
        let c = w("[x1,x2]").evaluate(&s3, &[e("(1 2)"), e("(1 3)")]).unwrap();
        assert_eq!(s3.element_order(c), 3);
        assert_eq!(w("[[x1,x2],x3]").evaluate(&s3, &[0, 0, 0]).unwrap(), IDENTITY);
        assert_eq!(s3.label(w("x1^2").evaluate(&s3, &[e("(1 2 3)")]).unwrap()), "(1 3 2)");
        assert_eq!(w("[x1,x3]").evaluate(&s3, &[0, 0]), Err(Error::MissingVariable(3)));
    }

    #[test]
    fn identity_examples() {
        let l = Limits::default();
        assert!(is_identity(&grp("C6"), &w("[x1,x2]"), &l).unwrap().holds);
        let s3 = grp("S3");
        let v = is_identity(&s3, &w("[x1,x2]"), &l).unwrap();
        assert!(!v.holds);
        let ce = v.counterexample.unwrap();
        assert_ne!(w("[x1,x2]").evaluate(&s3, &ce).unwrap(), IDENTITY);
        // The least counterexample comes no later than ((1 2), (1 3)).
        assert!(ce <= vec![s3.element("(1 2)").unwrap(), s3.element("(1 3)").unwrap()]);
        assert!(is_identity(&s3, &w("[[x1,x2],[x3,x4]]"), &l).unwrap().holds);
        let tight = Limits { budget: 100, ..l };
        assert!(matches!(is_identity(&grp("S4"), &w("[[x1,x2],[x3,x4]]"), &tight), Err(Error::Budget { .. })));
    }

    #[test]
    fn standard_word_examples() {
        let sw = |s: &str| StandardWord::parse(s).unwrap().word().unwrap();
        assert_eq!(sw("nilpotent-1"), w("[x1,x2]"));
        assert_eq!(sw("nilpotent-2"), w("[x1,x2,x3]"));
        assert_eq!(sw("burnside-2"), w("x1^2"));
        assert_eq!(sw("metabelian"), w("[[x1,x2],[x3,x4]]"));
        assert!(StandardWord::parse("nilpotent-0").is_err());
        assert!(StandardWord::parse("solvable").is_err());
    }

    #[test]
    fn verbal_examples() {
        let l = Limits::default();
        assert_eq!(verbal_subgroup(&grp("S4"), &[w("[x1,x2]")], &l).unwrap().order(), 12);
        assert!(verbal_subgroup(&grp("C6"), &[w("[x1,x2]")], &l).unwrap().is_trivial());
        let q8 = grp("Q8");
        assert_eq!(verbal_subgroup(&q8, &[w("x1^2")], &l).unwrap(), q8.center());
    }

    #[test]
    fn marginal_examples() {
        let l = Limits::default();
        let q8 = grp("Q8");
        assert_eq!(marginal_subgroup(&q8, &[w("[x1,x2]")], &l).unwrap(), q8.center());
        assert!(marginal_subgroup(&grp("S3"), &[w("[x1,x2]")], &l).unwrap().is_trivial());
        assert!(marginal_subgroup(&grp("S3"), &[w("[[x1,x2],[x3,x4]]")], &l).unwrap().is_whole());
    }
}
