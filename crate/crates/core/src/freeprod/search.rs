//! Bounded exhaustive searches over normal forms. Results hold "up to L" only.

use std::collections::HashMap;

use serde::Serialize;

use super::{FreeConstruction, Kind, PWord, Side};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::SubgroupSet;
use crate::variety::VarietySpec;
use crate::words::{for_each_tuple, FreeWord};

/// Number of normal forms of each length `0..=l`.
fn census(k: &FreeConstruction, l: usize) -> Vec<u128> {
    let ta = k.transversal(Side::A).len() as u128 - 1;
    let tb = k.transversal(Side::B).len() as u128 - 1;
    let c = k.c_order() as u128;
    (0..=l)
        .map(|n| {
            if n == 0 {
                return c;
            }
            let (hi, lo) = ((n as u32).div_ceil(2), n as u32 / 2);
            c.saturating_mul(ta.saturating_pow(hi).saturating_mul(tb.saturating_pow(lo)).saturating_add(
                tb.saturating_pow(hi).saturating_mul(ta.saturating_pow(lo)),
            ))
        })
        .collect()
}

fn total(k: &FreeConstruction, l: usize) -> u128 {
    census(k, l).iter().fold(0u128, |a, &b| a.saturating_add(b))
}

/// Every normal form of length at most `l`, ordered by length and then by
/// `(head, syllables)`.
pub fn bounded_words(k: &FreeConstruction, l: usize, limits: &Limits) -> Result<Vec<PWord>> {
    let n = total(k, l);
    if n > limits.budget as u128 {
        return Err(Error::Budget { required: n, budget: limits.budget });
    }
    let reps = [k.transversal(Side::A), k.transversal(Side::B)];
    let mut out = Vec::with_capacity(n as usize);
    // Syllable sequences of the current length, sorted.
    let mut layer: Vec<Vec<(Side, usize)>> = vec![Vec::new()];
    for len in 0..=l {
        if len > 0 {
            let mut next = Vec::new();
            if len == 1 {
                for s in [Side::A, Side::B] {
                    for &t in &reps[s as usize][1..] {
                        next.push(vec![(s, t)]);
                    }
                }
            } else {
                for w in &layer {
                    let s = w[len - 2].0.other();
                    for &t in &reps[s as usize][1..] {
                        let mut v = w.clone();
                        v.push((s, t));
                        next.push(v);
                    }
                }
            }
            next.sort();
            layer = next;
        }
        for head in 0..k.c_order() {
            out.extend(layer.iter().map(|s| PWord { head, syllables: s.clone() }));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MalnormalCheck {
    pub ok: bool,
    pub max_len: usize,
    /// Elements `g` outside `H` that were tried.
    pub checked: usize,
    /// `(g, h)` with `h in H \ 1` and `g^-1 h g in H`.
    pub witness: Option<(PWord, usize)>,
}

/// Looks for `g` of length at most `l` outside `H` with `H^g` meeting `H`
/// nontrivially. `h` must be a subgroup of the factor on `side`.
pub fn bounded_malnormal_check(
    k: &FreeConstruction,
    side: Side,
    h: &SubgroupSet,
    l: usize,
    limits: &Limits,
) -> Result<MalnormalCheck> {
    k.factor(side).group().check_subgroup(h)?;
    let cost = total(k, l).saturating_mul(h.order() as u128);
    if cost > limits.budget as u128 {
        return Err(Error::Budget { required: cost, budget: limits.budget });
    }
    let hs: Vec<(usize, PWord)> =
        h.members().iter().skip(1).map(|&x| (x, k.letter(side, x))).collect();
    let mut checked = 0;
    for g in bounded_words(k, l, limits)? {
        if k.in_factor_subgroup(&g, side, h) {
            continue;
        }
        checked += 1;
        let gi = k.invert(&g);
        for (x, hw) in &hs {
            let c = k.multiply(&k.multiply(&gi, hw), &g);
            if k.in_factor_subgroup(&c, side, h) {
                return Ok(MalnormalCheck { ok: false, max_len: l, checked, witness: Some((g, *x)) });
            }
        }
    }
    Ok(MalnormalCheck { ok: true, max_len: l, checked, witness: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotXtReport {
    pub a_member: bool,
    pub b_member: bool,
    /// A nontrivial element of `A ∩ B`.
    pub intersection: PWord,
    pub law: Option<FreeWord>,
    pub tuple: Option<Vec<PWord>>,
    /// Normal form of the law at `tuple`; never the identity.
    pub value: Option<PWord>,
}

impl NotXtReport {
    pub fn inconclusive(&self) -> bool {
        self.tuple.is_none()
    }

    /// Both factors lie in `X`, meet nontrivially, and generate a group
    /// violating a law of `X`.
    pub fn certified(&self) -> bool {
        self.a_member && self.b_member && !self.intersection.is_identity() && !self.inconclusive()
    }
}

/// Evaluates `w` with variable `i` sent to `values[i]`.
pub fn evaluate(k: &FreeConstruction, w: &FreeWord, values: &[PWord], inverses: &[PWord]) -> PWord {
    let mut acc = PWord::identity();
    for &(v, e) in w.syllables() {
        let base = if e < 0 { &inverses[v - 1] } else { &values[v - 1] };
        for _ in 0..e.unsigned_abs() {
            acc = k.multiply(&acc, base);
        }
    }
    acc
}

/// Searches tuples of words of length `1..=depth` for a violated basis law
/// of `x`, after checking both factors lie in `x`.
pub fn not_xt_witness(k: &FreeConstruction, x: &VarietySpec, depth: usize, limits: &Limits) -> Result<NotXtReport> {
    if k.kind() != Kind::Amalgam {
        return Err(Error::InvalidParam("not_xt_witness needs an amalgam".into()));
    }
    let a_member = x.is_member(k.factor(Side::A).group(), limits)?.member;
    let b_member = x.is_member(k.factor(Side::B).group(), limits)?.member;
    let intersection = k.letter(Side::A, k.embedded(Side::A)[1]);
    let mut report = NotXtReport { a_member, b_member, intersection, law: None, tuple: None, value: None };

    let cands: Vec<PWord> = bounded_words(k, depth, limits)?.into_iter().filter(|w| !w.is_empty()).collect();
    let inv: Vec<PWord> = cands.iter().map(|w| k.invert(w)).collect();
    let idx: Vec<usize> = (0..cands.len()).collect();
    let mut meter = limits.meter(0);
    for w in &x.basis {
        let cost = w.len().max(1) as u64;
        let mut found = None;
        for_each_tuple(&idx, w.arity(), |t| {
            meter.charge(cost)?;
            let vals: Vec<PWord> = t.iter().map(|&i| cands[i].clone()).collect();
            let invs: Vec<PWord> = t.iter().map(|&i| inv[i].clone()).collect();
            let v = evaluate(k, w, &vals, &invs);
            if v.is_identity() {
                return Ok(true);
            }
            found = Some((vals, v));
            Ok(false)
        })?;
        if let Some((vals, v)) = found {
            report.law = Some(w.clone());
            report.tuple = Some(vals);
            report.value = Some(v);
            break;
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub ok: bool,
    pub max_len: usize,
    pub checked: u64,
    /// Least reduced word in `x1, x2` that vanishes at `(w1, w2)`.
    pub witness: Option<FreeWord>,
}

/// Evaluates every nontrivial reduced word of length at most `l` in two
/// letters at `(w1, w2)`; `ok` iff none is trivial.
pub fn free_probe(k: &FreeConstruction, w1: &PWord, w2: &PWord, l: usize, limits: &Limits) -> Result<ProbeReport> {
    if w1.is_identity() || w2.is_identity() {
        return Err(Error::InvalidParam("probe words must be nontrivial".into()));
    }
    let cost: u128 = (1..=l as u32).map(|n| 4u128.saturating_mul(3u128.saturating_pow(n - 1))).sum();
    if cost > limits.budget as u128 {
        return Err(Error::Budget { required: cost, budget: limits.budget });
    }
    // Letters x, x^-1, y, y^-1 in this order.
    let letters = [w1.clone(), k.invert(w1), w2.clone(), k.invert(w2)];
    let mut checked = 0u64;
    for len in 1..=l {
        let mut path = Vec::with_capacity(len);
        if let Some(p) = probe_dfs(k, &letters, len, &PWord::identity(), &mut path, &mut checked) {
            let word = FreeWord::from_syllables(p.iter().map(|&c| (c / 2 + 1, if c % 2 == 0 { 1 } else { -1 })))?;
            return Ok(ProbeReport { ok: false, max_len: l, checked, witness: Some(word) });
        }
    }
    Ok(ProbeReport { ok: true, max_len: l, checked, witness: None })
}

fn probe_dfs(
    k: &FreeConstruction,
    letters: &[PWord; 4],
    len: usize,
    acc: &PWord,
    path: &mut Vec<usize>,
    checked: &mut u64,
) -> Option<Vec<usize>> {
    if path.len() == len {
        *checked += 1;
        return acc.is_identity().then(|| path.clone());
    }
    for c in 0..4 {
        if path.last().is_some_and(|&p| p ^ 1 == c) {
            continue;
        }
        path.push(c);
        let next = k.multiply(acc, &letters[c]);
        let hit = probe_dfs(k, letters, len, &next, path, checked);
        path.pop();
        if hit.is_some() {
            return hit;
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerConjugacy {
    pub max_len: usize,
    pub n_max: i64,
    /// Cyclically reduced `z` of length at least 2 that were tried.
    pub z_count: usize,
    /// Number of `(g, z, n, m)` with `g^-1 z^n g = z^m`.
    pub instances: usize,
    /// Instances with `|m| != |n|`, as display strings `(g, z, n, m)`.
    pub violations: Vec<(String, String, i64, i64)>,
}

/// Finds all `g^-1 z^n g = z^m` with `g`, `z` of length at most `max_len`,
/// `z` cyclically reduced of length at least 2 and `1 <= n <= n_max`.
pub fn power_conjugacy_search(k: &FreeConstruction, max_len: usize, n_max: i64, limits: &Limits) -> Result<PowerConjugacy> {
    if k.kind() != Kind::Free {
        return Err(Error::InvalidParam("power conjugacy search needs a free product".into()));
    }
    if n_max < 1 {
        return Err(Error::InvalidParam("n_max must be positive".into()));
    }
    let words = bounded_words(k, max_len, limits)?;
    let zs: Vec<&PWord> = words.iter().filter(|z| z.len() >= 2 && k.cyclic_reduce(z) == **z).collect();
    let cost = (zs.len() as u128) * (words.len() as u128) * (n_max as u128);
    if cost > limits.budget as u128 {
        return Err(Error::Budget { required: cost, budget: limits.budget });
    }
    // Conjugating can add at most 2 * len(g) syllables, and z^m has length
    // |m| len(z) >= 2|m|, so this range of m is exhaustive.
    let m_max = n_max * max_len as i64 / 2 + max_len as i64;
    let inv: Vec<PWord> = words.iter().map(|g| k.invert(g)).collect();
    let mut out = PowerConjugacy { max_len, n_max, z_count: zs.len(), instances: 0, violations: Vec::new() };
    for z in zs {
        let mut powers: HashMap<PWord, i64> = HashMap::new();
        for m in (-m_max..=m_max).filter(|&m| m != 0) {
            powers.insert(k.pow(z, m), m);
        }
        for n in 1..=n_max {
            let zn = k.pow(z, n);
            for (g, gi) in words.iter().zip(&inv) {
                let c = k.multiply(&k.multiply(gi, &zn), g);
                if let Some(&m) = powers.get(&c) {
                    out.instances += 1;
                    if m.abs() != n {
                        out.violations.push((k.display(g), k.display(z), n, m));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{builtin_construction, d2p_amalgam};
    use super::*;
    use crate::group::{Builtin, FiniteGroup, Perm};
    use crate::words::StandardWord;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn census_counts() {
        let k = builtin_construction("c3xc3", &l()).unwrap();
        assert_eq!(bounded_words(&k, 0, &l()).unwrap(), vec![PWord::identity()]);
        assert_eq!(bounded_words(&k, 1, &l()).unwrap().len(), 5);
        let d = d2p_amalgam(3, &l()).unwrap();
        let w = bounded_words(&d, 1, &l()).unwrap();
        let (c, ta, tb) = (2, 3, 3);
        assert_eq!(w.len(), c * (ta - 1) + c * (tb - 1) + c);
        let w4 = bounded_words(&d, 4, &l()).unwrap();
        let mut dedup = w4.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), w4.len());
        assert!(w4.windows(2).all(|p| p[0].len() <= p[1].len()));
        assert!(w4.iter().all(|w| d.normal_form(&d.expand(w)) == *w));
    }

    #[test]
    fn factor_malnormality() {
        let d = d2p_amalgam(3, &l()).unwrap();
        let whole = d.factor(Side::A).group().whole();
        let r = bounded_malnormal_check(&d, Side::A, &whole, 3, &l()).unwrap();
        assert!(r.ok && r.checked > 0);
        let k = builtin_construction("c5xc7", &l()).unwrap();
        let whole = k.factor(Side::A).group().whole();
        assert!(bounded_malnormal_check(&k, Side::A, &whole, 3, &l()).unwrap().ok);
    }

    #[test]
    fn amalgamated_subgroup_malnormality() {
        // <a1> is self-normalizing in D6 and in the other factor, and conjugates
        // by longer words leave the factor, so the search finds nothing.
        let d = d2p_amalgam(3, &l()).unwrap();
        let a = d.factor(Side::A).group();
        let c = a.generate(&[a.generators()[0]]).unwrap();
        let r = bounded_malnormal_check(&d, Side::A, &c, 2, &l()).unwrap();
        assert!(r.ok, "{:?}", r.witness);
        // A subgroup that is not malnormal inside its own factor is caught.
        let d8 = FiniteGroup::builtin(Builtin::Dihedral(8), &l()).unwrap();
        let k = FreeConstruction::free(
            super::super::Factor::with_prefix(d8.clone(), "a").unwrap(),
            super::super::Factor::with_prefix(FiniteGroup::by_name("C2", &l()).unwrap(), "b").unwrap(),
        )
        .unwrap();
        let centre = d8.center();
        assert!(!bounded_malnormal_check(&k, Side::A, &centre, 1, &l()).unwrap().ok);
    }

    #[test]
    fn metabelian_witness_survives_a_quotient() {
        let d = d2p_amalgam(3, &l()).unwrap();
        let met = VarietySpec::builtin("metabelian").unwrap();
        assert!(not_xt_witness(&d, &met, 0, &l()).unwrap().inconclusive());
        let r = not_xt_witness(&d, &met, 2, &l()).unwrap();
        assert!(r.certified());
        // a1, b1 -> (1 2); a2 -> (1 2 3); b2 -> (1 2 4) defines a map onto S4.
        let s4 = FiniteGroup::by_name("S4", &l()).unwrap();
        let img = |p: &str| s4.element(&Perm::parse(p).unwrap().to_string()).unwrap();
        let hom = |s: Side, images: [usize; 2]| {
            let f = d.factor(s).group();
            let mut phi = vec![None; f.order()];
            phi[0] = Some(0);
            let mut stack = vec![0];
            while let Some(x) = stack.pop() {
                for (i, &g) in f.generators().iter().enumerate() {
                    let y = f.mul(x, g);
                    let v = s4.mul(phi[x].unwrap(), images[i]);
                    match phi[y] {
                        None => {
                            phi[y] = Some(v);
                            stack.push(y);
                        }
                        Some(old) => assert_eq!(old, v),
                    }
                }
            }
            phi.into_iter().map(Option::unwrap).collect::<Vec<_>>()
        };
        let phis = [hom(Side::A, [img("(1 2)"), img("(1 2 3)")]), hom(Side::B, [img("(1 2)"), img("(1 2 4)")])];
        let pick = |s: Side, x: usize| phis[s as usize][x];
        let eval = |w: &PWord| {
            d.expand(w).iter().fold(0, |acc, &(s, x)| s4.mul(acc, pick(s, x)))
        };
        let tuple: Vec<usize> = r.tuple.as_ref().unwrap().iter().map(eval).collect();
        let law = StandardWord::Metabelian.word().unwrap();
        assert_eq!(r.law.as_ref(), Some(&law));
        assert_ne!(law.evaluate(&s4, &tuple).unwrap(), 0);
    }

    #[test]
    fn probes() {
        let k = builtin_construction("c3xc3", &l()).unwrap();
        let w1 = k.parse("a2 b2").unwrap();
        let w2 = k.parse("a2 b2^2").unwrap();
        // w1 w2^-1 = a2 b2^-1 a2^-1 has order 3.
        let r = free_probe(&k, &w1, &w2, 6, &l()).unwrap();
        assert_eq!(r.witness.unwrap().to_string(), "x1 x2^-1 x1 x2^-1 x1 x2^-1");
        let (u, v) = (k.parse("a2 b2 a2^2 b2^2").unwrap(), k.parse("a2^2 b2^2 a2 b2").unwrap());
        let r = free_probe(&k, &u, &v, 6, &l()).unwrap();
        assert!(r.ok, "{:?}", r.witness.map(|w| w.to_string()));
        assert_eq!(r.checked, (1..=6).map(|n| 4 * 3u64.pow(n - 1)).sum::<u64>());
        let same = free_probe(&k, &w1, &w1, 4, &l()).unwrap();
        assert_eq!(same.witness.unwrap().to_string(), "x1 x2^-1");
        let c2 = builtin_construction("c2xc2", &l()).unwrap();
        let r = free_probe(&c2, &c2.parse("a").unwrap(), &c2.parse("b").unwrap(), 4, &l()).unwrap();
        assert_eq!(r.witness.unwrap().to_string(), "x1^2");
    }

    #[test]
    fn power_conjugacy() {
        let k = builtin_construction("c3xc3", &l()).unwrap();
        let r = power_conjugacy_search(&k, 4, 2, &l()).unwrap();
        assert!(r.instances > 0);
        assert!(r.violations.is_empty());
    }
}
