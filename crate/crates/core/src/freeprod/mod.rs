//! Free products `A * B` and amalgamated products `A *_C B` of finite groups,
//! with normal forms relative to fixed coset transversals.
//!
//! An element is `c t_1 ... t_n`: a head `c` in `C` followed by transversal
//! representatives `t_i != 1` from alternating factors, each representing the
//! coset `C t_i`. The representative of a coset is its least element index.

mod search;

use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::{is_prime, Builtin, FiniteGroup, IDENTITY};

pub use search::{
    bounded_malnormal_check, bounded_words, evaluate, free_probe, not_xt_witness, power_conjugacy_search, MalnormalCheck,
    NotXtReport, PowerConjugacy, ProbeReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }

    fn ix(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// A factor group with named generators; element labels are the first words
/// in those names by syllable count, e.g. `a1a2^2`.
#[derive(Debug, Clone)]
pub struct Factor {
    group: FiniteGroup,
    names: Vec<String>,
    labels: Vec<String>,
}

impl Factor {
    /// Names one generator per entry of `group.generators()`.
    pub fn new(group: FiniteGroup, names: Vec<String>) -> Result<Factor> {
        let gens = group.generators();
        if names.len() != gens.len() {
            return Err(Error::Construction(format!(
                "{} has {} generators but {} names were given",
                group.name(),
                gens.len(),
                names.len()
            )));
        }
        for n in &names {
            if n.is_empty() || !n.chars().all(|c| c.is_ascii_alphanumeric()) || !n.starts_with(|c: char| c.is_ascii_alphabetic()) {
                return Err(Error::Construction(format!("bad generator name `{n}`")));
            }
        }
        let labels = shortlex_labels(&group, &names);
        Ok(Factor { group, names, labels })
    }

    /// Generators named `{prefix}1, {prefix}2, ...`.
    pub fn with_prefix(group: FiniteGroup, prefix: &str) -> Result<Factor> {
        let names = (1..=group.generators().len()).map(|i| format!("{prefix}{i}")).collect();
        Factor::new(group, names)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name).map(|i| self.group.generators()[i])
    }
}

fn shortlex_labels(g: &FiniteGroup, names: &[String]) -> Vec<String> {
    let mut labels: Vec<Option<String>> = vec![None; g.order()];
    labels[IDENTITY] = Some("1".into());
    // Frontier entries: (element, last generator used, text).
    let mut frontier = vec![(IDENTITY, usize::MAX, String::new())];
    while labels.iter().any(Option::is_none) && !frontier.is_empty() {
        let mut next = Vec::new();
        for (x, last, text) in &frontier {
            for (i, &s) in g.generators().iter().enumerate() {
                if i == *last {
                    continue;
                }
                for e in 1..g.element_order(s) {
                    let y = g.mul(*x, g.pow(s, e as i64));
                    let t = if e == 1 { format!("{text}{}", names[i]) } else { format!("{text}{}^{e}", names[i]) };
                    if labels[y].is_none() {
                        labels[y] = Some(t.clone());
                    }
                    next.push((y, i, t));
                }
            }
        }
        frontier = next;
    }
    labels.into_iter().map(|l| l.expect("generators generate")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Free,
    Amalgam,
}

/// A free or amalgamated product with its transversal data.
#[derive(Debug, Clone)]
pub struct FreeConstruction {
    kind: Kind,
    factors: [Factor; 2],
    c_order: usize,
    /// `embed[s][c]`: image of `c` in factor `s`.
    embed: [Vec<usize>; 2],
    /// `rep[s][y]`: least element of the coset `C y`.
    rep: [Vec<usize>; 2],
    /// `cpart[s][y]`: `c` with `y = embed[s][c] * rep[s][y]`.
    cpart: [Vec<usize>; 2],
}

/// An element in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PWord {
    /// Index into `C`; always `0` in a free product.
    pub head: usize,
    pub syllables: Vec<(Side, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PwOp {
    Multiply,
    Invert,
    /// `conjugate(h, g) = g^-1 h g`.
    Conjugate,
    CyclicReduce,
    Length,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PwValue {
    Word(PWord),
    Length(usize),
}

impl PWord {
    pub fn identity() -> PWord {
        PWord { head: 0, syllables: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.head == 0 && self.syllables.is_empty()
    }
}

impl FreeConstruction {
    pub fn free(a: Factor, b: Factor) -> Result<FreeConstruction> {
        FreeConstruction::build(Kind::Free, a, b, None)
    }

    /// `pairing` lists `(a, b)` element pairs identifying a subgroup of `A`
    /// with a subgroup of `B`.
    pub fn amalgam(a: Factor, b: Factor, pairing: &[(usize, usize)]) -> Result<FreeConstruction> {
        FreeConstruction::build(Kind::Amalgam, a, b, Some(pairing))
    }

    pub fn build(kind: Kind, a: Factor, b: Factor, pairing: Option<&[(usize, usize)]>) -> Result<FreeConstruction> {
        for n in a.names() {
            if b.names().contains(n) {
                return Err(Error::Construction(format!("generator name `{n}` used in both factors")));
            }
        }
        let pairs: Vec<(usize, usize)> = match (kind, pairing) {
            (Kind::Free, None) => vec![(IDENTITY, IDENTITY)],
            (Kind::Free, Some(_)) => return Err(Error::Construction("a free product takes no pairing".into())),
            (Kind::Amalgam, None) => return Err(Error::Construction("an amalgam needs a pairing".into())),
            (Kind::Amalgam, Some(p)) => validate_pairing(&a, &b, p)?,
        };
        let c_order = pairs.len();
        let embed = [pairs.iter().map(|p| p.0).collect::<Vec<_>>(), pairs.iter().map(|p| p.1).collect::<Vec<_>>()];
        let factors = [a, b];
        let mut in_c = [Vec::new(), Vec::new()];
        let mut rep = [Vec::new(), Vec::new()];
        let mut cpart = [Vec::new(), Vec::new()];
        for s in 0..2 {
            let g = factors[s].group();
            in_c[s] = vec![None; g.order()];
            for (c, &y) in embed[s].iter().enumerate() {
                in_c[s][y] = Some(c);
            }
            rep[s] = vec![0; g.order()];
            cpart[s] = vec![0; g.order()];
            for y in g.elements() {
                let r = embed[s].iter().map(|&e| g.mul(e, y)).min().expect("C is nonempty");
                rep[s][y] = r;
                cpart[s][y] = in_c[s][g.mul(y, g.inv(r))].expect("y r^-1 lies in C");
            }
        }
        Ok(FreeConstruction { kind, factors, c_order, embed, rep, cpart })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn factor(&self, s: Side) -> &Factor {
        &self.factors[s.ix()]
    }

    pub fn c_order(&self) -> usize {
        self.c_order
    }

    /// Image of `C` in factor `s`.
    pub fn embedded(&self, s: Side) -> &[usize] {
        &self.embed[s.ix()]
    }

    /// Coset representatives in factor `s`, identity first, ascending.
    pub fn transversal(&self, s: Side) -> Vec<usize> {
        let mut t: Vec<usize> = self.rep[s.ix()].clone();
        t.sort_unstable();
        t.dedup();
        t
    }

    pub fn name(&self) -> String {
        let (a, b) = (self.factors[0].group().name(), self.factors[1].group().name());
        match self.kind {
            Kind::Free => format!("{a}*{b}"),
            Kind::Amalgam => format!("{a}*_C{}{b}", self.c_order),
        }
    }

    /// The element `y` of factor `s` as a word.
    pub fn letter(&self, s: Side, y: usize) -> PWord {
        self.normal_form(&[(s, y)])
    }

    /// Normalizes a raw syllable sequence, processing from the right.
    pub fn normal_form(&self, raw: &[(Side, usize)]) -> PWord {
        let mut head = 0usize;
        let mut rev: Vec<(Side, usize)> = Vec::with_capacity(raw.len());
        for &(s, y) in raw.iter().rev() {
            let g = self.factors[s.ix()].group();
            let mut z = g.mul(y, self.embed[s.ix()][head]);
            if let Some(&(ls, t)) = rev.last() {
                if ls == s {
                    z = g.mul(z, t);
                    rev.pop();
                }
            }
            head = self.cpart[s.ix()][z];
            let r = self.rep[s.ix()][z];
            if r != IDENTITY {
                rev.push((s, r));
            }
        }
        rev.reverse();
        PWord { head, syllables: rev }
    }

    fn expand(&self, w: &PWord) -> Vec<(Side, usize)> {
        let mut raw = Vec::with_capacity(w.len() + 1);
        if w.head != 0 {
            raw.push((Side::A, self.embed[0][w.head]));
        }
        raw.extend_from_slice(&w.syllables);
        raw
    }

    pub fn multiply(&self, u: &PWord, v: &PWord) -> PWord {
        let mut raw = self.expand(u);
        raw.extend(self.expand(v));
        self.normal_form(&raw)
    }

    pub fn invert(&self, u: &PWord) -> PWord {
        let raw: Vec<(Side, usize)> =
            self.expand(u).iter().rev().map(|&(s, y)| (s, self.factors[s.ix()].group().inv(y))).collect();
        self.normal_form(&raw)
    }

    /// `g^-1 h g`.
    pub fn conjugate(&self, h: &PWord, g: &PWord) -> PWord {
        self.multiply(&self.multiply(&self.invert(g), h), g)
    }

    pub fn pow(&self, u: &PWord, e: i64) -> PWord {
        let base = if e < 0 { self.invert(u) } else { u.clone() };
        (0..e.unsigned_abs()).fold(PWord::identity(), |acc, _| self.multiply(&acc, &base))
    }

    /// Conjugates the last syllable to the front while the first and last
    /// syllables come from the same factor.
    pub fn cyclic_reduce(&self, u: &PWord) -> PWord {
        let mut w = u.clone();
        while w.len() >= 2 && w.syllables[0].0 == w.syllables[w.len() - 1].0 {
            let (s, t) = w.syllables[w.len() - 1];
            let last = self.letter(s, t);
            w = self.conjugate(&w, &self.invert(&last));
        }
        w
    }

    pub fn arith(&self, op: PwOp, args: &[PWord]) -> Result<PwValue> {
        let need = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParam(format!("{op:?} takes {k} arguments, got {}", args.len())))
            }
        };
        Ok(match op {
            PwOp::Multiply => PwValue::Word(args.iter().fold(PWord::identity(), |acc, w| self.multiply(&acc, w))),
            PwOp::Invert => need(1).map(|_| PwValue::Word(self.invert(&args[0])))?,
            PwOp::Conjugate => need(2).map(|_| PwValue::Word(self.conjugate(&args[0], &args[1])))?,
            PwOp::CyclicReduce => need(1).map(|_| PwValue::Word(self.cyclic_reduce(&args[0])))?,
            PwOp::Length => need(1).map(|_| PwValue::Length(args[0].len()))?,
        })
    }

    /// Membership in the subgroup `h` of factor `s`, read off the normal form.
    pub fn in_factor_subgroup(&self, w: &PWord, s: Side, h: &crate::group::SubgroupSet) -> bool {
        let g = self.factors[s.ix()].group();
        let c = self.embed[s.ix()][w.head];
        match w.syllables[..] {
            [] => h.contains(c),
            [(side, t)] if side == s => h.contains(g.mul(c, t)),
            _ => false,
        }
    }

    /// Parses `a2 b2^2 a1^-1` against the generator names; `1` is the identity.
    pub fn parse(&self, text: &str) -> Result<PWord> {
        let mut raw = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        let err = |offset: usize, message: String| Error::Parse { offset, message };
        while i < bytes.len() {
            if bytes[i].is_ascii_whitespace() {
                i += 1;
                continue;
            }
            if bytes[i] == b'1' && !bytes.get(i + 1).is_some_and(|c| c.is_ascii_alphanumeric()) {
                i += 1;
                continue;
            }
            let mut best: Option<(Side, usize, usize)> = None;
            for s in [Side::A, Side::B] {
                for (k, n) in self.factor(s).names().iter().enumerate() {
                    if text[i..].starts_with(n.as_str()) && best.is_none_or(|b| n.len() > b.2) {
                        best = Some((s, k, n.len()));
                    }
                }
            }
            let (s, k, len) = best.ok_or_else(|| err(i, "unknown generator".into()))?;
            i += len;
            let mut e: i64 = 1;
            if bytes.get(i) == Some(&b'^') {
                i += 1;
                let start = i;
                if bytes.get(i) == Some(&b'-') {
                    i += 1;
                }
                while bytes.get(i).is_some_and(|c| c.is_ascii_digit()) {
                    i += 1;
                }
                e = text[start..i].parse().map_err(|_| err(start, "bad exponent".into()))?;
            }
            let g = self.factor(s).group();
            raw.push((s, g.pow(g.generators()[k], e)));
        }
        Ok(self.normal_form(&raw))
    }

    /// `["A", "a1"]` pairs; a nontrivial head appears first as an `A` letter.
    pub fn to_json(&self, w: &PWord) -> Value {
        Value::Array(
            self.expand(w)
                .into_iter()
                .map(|(s, y)| Value::Array(vec![s.to_string().into(), self.factor(s).label(y).into()]))
                .collect(),
        )
    }

    pub fn display(&self, w: &PWord) -> String {
        let raw = self.expand(w);
        if raw.is_empty() {
            return "1".into();
        }
        raw.iter().map(|&(s, y)| self.factor(s).label(y)).collect::<Vec<_>>().join(" ")
    }
}

fn validate_pairing(a: &Factor, b: &Factor, pairing: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
    let (ga, gb) = (a.group(), b.group());
    let mut map: Vec<Option<usize>> = vec![None; ga.order()];
    for &(x, y) in pairing {
        ga.check_index(x).and_then(|_| gb.check_index(y)).map_err(|e| Error::Construction(e.to_string()))?;
        match map[x] {
            Some(prev) if prev != y => {
                return Err(Error::Construction(format!("element {x} of A is paired twice")));
            }
            _ => map[x] = Some(y),
        }
    }
    let dom: Vec<usize> = (0..ga.order()).filter(|&x| map[x].is_some()).collect();
    let sub_a = ga.subgroup_from_members(&dom).map_err(|e| Error::Construction(format!("A side: {e}")))?;
    let img: Vec<usize> = dom.iter().map(|&x| map[x].unwrap()).collect();
    let mut sorted = img.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != img.len() {
        return Err(Error::Construction("pairing is not injective".into()));
    }
    for &x in &dom {
        for &y in &dom {
            if map[ga.mul(x, y)] != Some(gb.mul(map[x].unwrap(), map[y].unwrap())) {
                return Err(Error::Construction("pairing is not a homomorphism".into()));
            }
        }
    }
    let sub_b = gb.subgroup_from_members(&sorted).map_err(|e| Error::Construction(format!("B side: {e}")))?;
    if sub_a.is_whole() || sub_b.is_whole() {
        return Err(Error::Construction("amalgamated subgroups must be proper".into()));
    }
    Ok(dom.into_iter().map(|x| (x, map[x].unwrap())).collect())
}

/// Two dihedral groups of order `2p`, generators `a1, a2` and `b1, b2`
/// (reflection, rotation), amalgamated over `<a1> = <b1>`.
pub fn d2p_amalgam(p: usize, limits: &Limits) -> Result<FreeConstruction> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::InvalidParam(format!("p = {p} must be an odd prime")));
    }
    let d = FiniteGroup::builtin(Builtin::Dihedral(2 * p), limits)?;
    let s = d.generators()[0];
    let a = Factor::with_prefix(d.clone(), "a")?;
    let b = Factor::with_prefix(d, "b")?;
    FreeConstruction::amalgam(a, b, &[(IDENTITY, IDENTITY), (s, s)])
}

/// Built-in constructions: `c3xc3`, `c2xc2`, `c5xc7` (free) and `d2p:P`.
pub fn builtin_construction(name: &str, limits: &Limits) -> Result<FreeConstruction> {
    let cyc = |n: usize| FiniteGroup::by_name(&format!("C{n}"), limits);
    let named = |g: FiniteGroup, n: &str| Factor::new(g, vec![n.to_string()]);
    match name {
        "c3xc3" => FreeConstruction::free(named(cyc(3)?, "a2")?, named(cyc(3)?, "b2")?),
        "c2xc2" => FreeConstruction::free(named(cyc(2)?, "a")?, named(cyc(2)?, "b")?),
        "c5xc7" => FreeConstruction::free(named(cyc(5)?, "a")?, named(cyc(7)?, "b")?),
        _ => match name.strip_prefix("d2p:") {
            Some(p) => d2p_amalgam(p.parse().map_err(|_| Error::InvalidParam(format!("bad prime in `{name}`")))?, limits),
            None => Err(Error::UnknownBuiltin(name.to_string())),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d2p3() -> FreeConstruction {
        d2p_amalgam(3, &Limits::default()).unwrap()
    }

    #[test]
    fn d2p_shape() {
        let k = d2p3();
        assert_eq!(k.factor(Side::A).group().order(), 6);
        assert_eq!(k.c_order(), 2);
        assert_eq!(d2p_amalgam(5, &Limits::default()).unwrap().factor(Side::B).group().order(), 10);
        assert!(d2p_amalgam(2, &Limits::default()).is_err());
        assert!(d2p_amalgam(9, &Limits::default()).is_err());
        assert_eq!(k.transversal(Side::A).len(), 3);
        assert_eq!(k.factor(Side::A).label(k.factor(Side::A).generator("a2").unwrap()), "a2");
    }

    #[test]
    fn amalgam_relations() {
        let k = d2p3();
        let p = |s: &str| k.parse(s).unwrap();
        assert!(p("a1 b1").is_identity());
        assert_eq!(p("a1"), p("b1"));
        assert_eq!(k.conjugate(&p("a2"), &p("a1")), p("a2^-1"));
        assert_eq!(p("a2 b2 a2").len(), 3);
    }

    #[test]
    fn free_product_arith() {
        let k = builtin_construction("c3xc3", &Limits::default()).unwrap();
        let p = |s: &str| k.parse(s).unwrap();
        assert_eq!(p("a2 a2"), p("a2^2"));
        assert_eq!(p("a2 a2").len(), 1);
        assert_eq!(k.invert(&p("a2 b2")), p("b2^-1 a2^-1"));
        assert_eq!(k.invert(&p("a2 b2")).syllables.len(), 2);
        assert_eq!(k.cyclic_reduce(&p("a2 b2 a2^-1")), p("b2"));
        assert_eq!(k.arith(PwOp::Length, &[p("a2 b2 a2")]).unwrap(), PwValue::Length(3));
        assert!(k.multiply(&p("a2 b2"), &k.invert(&p("a2 b2"))).is_identity());
        assert_eq!(k.to_json(&p("a2 b2")).to_string(), r#"[["A","a2"],["B","b2"]]"#);
    }

    #[test]
    fn pairing_validation() {
        let l = Limits::default();
        let d6 = FiniteGroup::by_name("D6", &l).unwrap();
        let s = d6.generators()[0];
        let r = d6.generators()[1];
        let a = Factor::with_prefix(d6.clone(), "a").unwrap();
        let b = Factor::with_prefix(d6.clone(), "b").unwrap();
        assert!(FreeConstruction::amalgam(a.clone(), b.clone(), &[(0, 0), (s, s)]).is_ok());
        // Not injective: s and identity both sent to identity.
        assert!(FreeConstruction::amalgam(a.clone(), b.clone(), &[(0, 0), (s, 0)]).is_err());
        // Not a subgroup on the A side.
        assert!(FreeConstruction::amalgam(a.clone(), b.clone(), &[(0, 0), (r, r)]).is_err());
        // Order 2 mapped onto order 3: not a homomorphism.
        assert!(FreeConstruction::amalgam(a.clone(), b.clone(), &[(0, 0), (s, r)]).is_err());
        assert!(FreeConstruction::free(a.clone(), a.clone()).is_err());
        assert!(FreeConstruction::build(Kind::Free, a, b, Some(&[(0, 0)])).is_err());
    }
}
