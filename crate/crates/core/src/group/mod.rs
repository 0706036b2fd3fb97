//! Finite groups as multiplication tables, with the subgroup, conjugation and
//! malnormality primitives every other module builds on.
//!
//! Element `0` is always the identity. Scans walk elements in ascending index
//! order so that every reported witness is the least one.

mod builtin;
mod lattice;
pub mod perm;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::config::Limits;
use crate::error::{Error, Result};

pub use builtin::Builtin;
pub(crate) use builtin::is_prime;
pub use lattice::{all_subgroups, Lattice};
pub use perm::Perm;

pub const IDENTITY: usize = 0;

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<usize>,
    labels: Vec<String>,
    generators: Vec<usize>,
    /// `powers[g][k] = g^k` for `0 <= k < ord(g)`.
    powers: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    /// Product of all arguments, left to right.
    Product,
    Inverse,
    /// `conjugate(a, x) = x^-1 a x`.
    Conjugate,
    /// `commutator(x, y) = x^-1 y^-1 x y`.
    Commutator,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MalnormalityReport {
    pub verdict: bool,
    /// `(g, h)` with `g` outside `H`, `h != 1` and `h` in `H ∩ H^g`.
    pub witness: Option<(usize, usize)>,
}

impl FiniteGroup {
    /// Builds a group from rows of a multiplication table and validates the
    /// group axioms. Row and column `0` must be the identity maps.
    pub fn from_table(
        name: impl Into<String>,
        rows: &[Vec<usize>],
        labels: Option<Vec<String>>,
        limits: &Limits,
    ) -> Result<FiniteGroup> {
        let n = rows.len();
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidTable(format!("entry {v} in row {i} is out of range")));
                }
                flat.push(v as u32);
            }
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| format!("g{i}")).collect());
        FiniteGroup::from_flat(name.into(), n, flat, labels, None, limits)
    }

    pub(crate) fn from_flat(
        name: String,
        n: usize,
        table: Vec<u32>,
        labels: Vec<String>,
        generators: Option<Vec<usize>>,
        limits: &Limits,
    ) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidTable("a group needs at least one element".into()));
        }
        if n > limits.cap_order {
            return Err(Error::OrderCap { order: n, cap: limits.cap_order });
        }
        if table.len() != n * n || labels.len() != n {
            return Err(Error::InvalidTable("table or label count does not match the order".into()));
        }
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        for x in 0..n {
            if at(0, x) != x || at(x, 0) != x {
                return Err(Error::InvalidTable(format!("element 0 is not a two-sided identity at {x}")));
            }
        }
        let mut seen = vec![0usize; n];
        for a in 0..n {
            for b in 0..n {
                let v = at(a, b);
                if seen[v] == a + 1 {
                    return Err(Error::InvalidTable(format!("row {a} is not a permutation")));
                }
                seen[v] = a + 1;
            }
        }
        seen.iter_mut().for_each(|s| *s = 0);
        for b in 0..n {
            for a in 0..n {
                let v = at(a, b);
                if seen[v] == b + 1 {
                    return Err(Error::InvalidTable(format!("column {b} is not a permutation")));
                }
                seen[v] = b + 1;
            }
        }
        let inverse: Vec<usize> =
            (0..n).map(|a| (0..n).find(|&b| at(a, b) == 0).expect("rows are permutations")).collect();

        let generators = match generators {
            Some(g) if closure_size(n, &table, &g) == n => g,
            _ => greedy_generators(n, &table),
        };
        // Light's test: associativity with the middle factor ranging over a
        // generating set implies associativity for all triples.
        for &g in &generators {
            for x in 0..n {
                let xg = at(x, g);
                for y in 0..n {
                    if at(xg, y) != at(x, at(g, y)) {
                        return Err(Error::InvalidTable(format!("not associative at ({x}, {g}, {y})")));
                    }
                }
            }
        }

        let mut seen_label = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if let Some(j) = seen_label.insert(l.as_str(), i) {
                return Err(Error::InvalidTable(format!("label `{l}` used by elements {j} and {i}")));
            }
        }

        let powers = (0..n)
            .map(|g| {
                let mut p = vec![0u32];
                let mut x = g;
                while x != 0 {
                    p.push(x as u32);
                    x = at(x, g);
                }
                p
            })
            .collect();

        Ok(FiniteGroup { name, order: n, table, inverse, labels, generators, powers })
    }

    /// Closes a set of permutations under composition.
    pub fn from_permutations(name: impl Into<String>, gens: &[Perm], limits: &Limits) -> Result<FiniteGroup> {
        let degree = gens.iter().map(Perm::degree).max().unwrap_or(0);
        if degree > perm::MAX_DEGREE {
            return Err(Error::Permutation(format!("degree {degree} exceeds {}", perm::MAX_DEGREE)));
        }
        let gens: Vec<Perm> = gens.iter().map(|g| g.padded(degree)).collect();
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Perm, usize> = HashMap::from([(id, 0)]);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in &gens {
                let y = x.compose(g);
                if !index.contains_key(&y) {
                    if elements.len() >= limits.cap_order {
                        return Err(Error::OrderCap { order: elements.len() + 1, cap: limits.cap_order });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        // The identity is the lexicographically least image vector.
        elements.sort();
        let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                table.push(index[&a.compose(b)] as u32);
            }
        }
        let labels = elements.iter().map(Perm::to_string).collect();
        let mut generators: Vec<usize> = Vec::new();
        for g in &gens {
            let i = index[g];
            if i != IDENTITY && !generators.contains(&i) {
                generators.push(i);
            }
        }
        FiniteGroup::from_flat(name.into(), n, table, labels, Some(generators), limits)
    }

    pub fn builtin(b: Builtin, limits: &Limits) -> Result<FiniteGroup> {
        builtin::build(b, limits)
    }

    /// Builtin by short name, e.g. `S4`, `D8`, `C2xC4`, `frobenius21`.
    pub fn by_name(name: &str, limits: &Limits) -> Result<FiniteGroup> {
        builtin::by_name(name, limits)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        IDENTITY
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Generators in the order the group was built from.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Looks an element up by its label. Cycle notation need not be canonical.
    pub fn find(&self, label: &str) -> Option<usize> {
        let label = label.trim();
        if let Some(i) = self.labels.iter().position(|l| l == label) {
            return Some(i);
        }
        if let Some(rest) = label.strip_prefix('#') {
            return rest.parse().ok().filter(|&i| i < self.order);
        }
        let canonical = Perm::parse(label).ok()?.to_string();
        self.labels.iter().position(|l| *l == canonical)
    }

    pub fn element(&self, label: &str) -> Result<usize> {
        self.find(label)
            .ok_or_else(|| Error::Format(format!("no element labelled `{label}` in {}", self.name)))
    }

    pub fn check_index(&self, g: usize) -> Result<usize> {
        if g < self.order {
            Ok(g)
        } else {
            Err(Error::IndexOutOfRange { index: g, order: self.order })
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `x^-1 a x`.
    #[inline]
    pub fn conj(&self, a: usize, x: usize) -> usize {
        self.mul(self.inverse[x], self.mul(a, x))
    }

    /// `x^-1 y^-1 x y`.
    #[inline]
    pub fn comm(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inverse[x], self.inverse[y]), self.mul(x, y))
    }

    #[inline]
    pub fn pow(&self, a: usize, e: i64) -> usize {
        let p = &self.powers[a];
        p[e.rem_euclid(p.len() as i64) as usize] as usize
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.powers[a].len()
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|g| self.element_order(g)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, &a)| {
            self.generators[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    /// Checked arithmetic on element indices.
    pub fn arith(&self, op: ArithOp, args: &[usize]) -> Result<usize> {
        for &a in args {
            self.check_index(a)?;
        }
        let arity = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParam(format!("{op:?} takes {k} arguments, got {}", args.len())))
            }
        };
        match op {
            ArithOp::Product => Ok(args.iter().fold(IDENTITY, |acc, &a| self.mul(acc, a))),
            ArithOp::Inverse => arity(1).map(|_| self.inv(args[0])),
            ArithOp::Conjugate => arity(2).map(|_| self.conj(args[0], args[1])),
            ArithOp::Commutator => arity(2).map(|_| self.comm(args[0], args[1])),
        }
    }

    pub fn trivial_subgroup(&self) -> SubgroupSet {
        let mut bits = FixedBitSet::with_capacity(self.order);
        bits.insert(IDENTITY);
        SubgroupSet { parent_order: self.order, bits, members: vec![IDENTITY], gens: Vec::new() }
    }

    pub fn whole(&self) -> SubgroupSet {
        let mut bits = FixedBitSet::with_capacity(self.order);
        bits.insert_range(..);
        SubgroupSet {
            parent_order: self.order,
            bits,
            members: self.elements().collect(),
            gens: self.generators.clone(),
        }
    }

    /// Least subgroup containing `seeds`.
    pub fn generate(&self, seeds: &[usize]) -> Result<SubgroupSet> {
        for &s in seeds {
            self.check_index(s)?;
        }
        let mut h = self.trivial_subgroup();
        for &s in seeds {
            h = self.extend(&h, s);
        }
        Ok(h)
    }

    /// `<h, g>`.
    pub fn extend(&self, h: &SubgroupSet, g: usize) -> SubgroupSet {
        if h.contains(g) {
            return h.clone();
        }
        let mut gens = h.gens.clone();
        gens.push(g);
        let mut bits = h.bits.clone();
        let mut members = h.members.clone();
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &s in &gens {
                let y = self.mul(x, s);
                if !bits.put(y) {
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        SubgroupSet { parent_order: self.order, bits, members, gens }
    }

    /// `<h, k>`.
    pub fn join(&self, h: &SubgroupSet, k: &SubgroupSet) -> SubgroupSet {
        let (big, small) = if h.order() >= k.order() { (h, k) } else { (k, h) };
        small.gens.iter().fold(big.clone(), |acc, &g| self.extend(&acc, g))
    }

    /// Validates that `members` is closed and contains the identity.
    pub fn subgroup_from_members(&self, members: &[usize]) -> Result<SubgroupSet> {
        let mut bits = FixedBitSet::with_capacity(self.order);
        for &m in members {
            self.check_index(m)?;
            bits.insert(m);
        }
        if !bits.contains(IDENTITY) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for a in bits.ones() {
            for b in bits.ones() {
                if !bits.contains(self.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!(
                        "{} * {} leaves the set",
                        self.label(a),
                        self.label(b)
                    )));
                }
            }
        }
        let list: Vec<usize> = bits.ones().collect();
        let h = self.generate(&list)?;
        debug_assert_eq!(h.members, list);
        Ok(h)
    }

    /// `H^x = x^-1 H x`.
    pub fn conjugate_subgroup(&self, h: &SubgroupSet, x: usize) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.order);
        for &m in &h.members {
            bits.insert(self.conj(m, x));
        }
        bits
    }

    pub fn conjugacy_class(&self, a: usize) -> Vec<usize> {
        let mut bits = FixedBitSet::with_capacity(self.order);
        for x in self.elements() {
            bits.insert(self.conj(a, x));
        }
        bits.ones().collect()
    }

    pub fn centralizer(&self, a: usize) -> SubgroupSet {
        let members: Vec<usize> = self.elements().filter(|&x| self.mul(x, a) == self.mul(a, x)).collect();
        self.generate(&members).expect("indices in range")
    }

    /// Centralizer of a whole subgroup.
    pub fn centralizer_of(&self, h: &SubgroupSet) -> SubgroupSet {
        let members: Vec<usize> = self
            .elements()
            .filter(|&x| h.gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect();
        self.generate(&members).expect("indices in range")
    }

    pub fn center(&self) -> SubgroupSet {
        self.centralizer_of(&self.whole())
    }

    pub fn normalizer(&self, h: &SubgroupSet) -> SubgroupSet {
        let members: Vec<usize> =
            self.elements().filter(|&x| h.gens.iter().all(|&g| h.contains(self.conj(g, x)))).collect();
        self.generate(&members).expect("indices in range")
    }

    pub fn is_normal(&self, h: &SubgroupSet) -> bool {
        self.generators.iter().all(|&x| h.gens.iter().all(|&g| h.contains(self.conj(g, x))))
    }

    pub fn is_malnormal(&self, h: &SubgroupSet) -> Result<MalnormalityReport> {
        self.check_subgroup(h)?;
        Ok(self.malnormal_within(h, &self.whole()))
    }

    /// Malnormality of `h` inside `ambient`, which must contain it.
    pub fn malnormal_within(&self, h: &SubgroupSet, ambient: &SubgroupSet) -> MalnormalityReport {
        debug_assert!(h.is_subset(ambient));
        for &g in &ambient.members {
            if h.contains(g) {
                continue;
            }
            let gi = self.inv(g);
            for &x in &h.members[1..] {
                if h.contains(self.mul(self.mul(g, x), gi)) {
                    return MalnormalityReport { verdict: false, witness: Some((g, x)) };
                }
            }
        }
        MalnormalityReport { verdict: true, witness: None }
    }

    /// Independent scan over whole conjugates: `H ∩ H^g` must be trivial or,
    /// for `g` in the normalizer, all of `H`; and the normalizer must be `H`.
    pub fn malnormal_by_intersections(&self, h: &SubgroupSet) -> bool {
        if h.is_whole() || h.is_trivial() {
            return true;
        }
        self.elements().all(|x| {
            let k = h.bits.intersection_count(&self.conjugate_subgroup(h, x));
            k == 1 || (k == h.order() && h.contains(x))
        })
    }

    pub fn check_subgroup(&self, h: &SubgroupSet) -> Result<()> {
        if h.parent_order != self.order {
            return Err(Error::NotSubgroup(format!(
                "subgroup of a group of order {} used with {} (order {})",
                h.parent_order, self.name, self.order
            )));
        }
        Ok(())
    }

    /// The subgroup `h` as a group in its own right, labels inherited.
    pub fn induced(&self, h: &SubgroupSet) -> FiniteGroup {
        let n = h.order();
        let pos: HashMap<usize, usize> = h.members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut table = Vec::with_capacity(n * n);
        for &a in &h.members {
            for &b in &h.members {
                table.push(pos[&self.mul(a, b)] as u32);
            }
        }
        let labels = h.members.iter().map(|&m| self.labels[m].clone()).collect();
        let gens = h.gens.iter().map(|g| pos[g]).collect();
        let name = format!("{}<{}>", self.name, h.gens.iter().map(|&g| self.label(g)).collect::<Vec<_>>().join(","));
        let limits = Limits { cap_order: n.max(1), ..Limits::default() };
        FiniteGroup::from_flat(name, n, table, labels, Some(gens), &limits).expect("a subgroup is a group")
    }

    /// Componentwise product; `(a, b)` has index `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, limits: &Limits) -> Result<FiniteGroup> {
        let n = a.order * b.order;
        if n > limits.cap_order {
            return Err(Error::OrderCap { order: n, cap: limits.cap_order });
        }
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            let (x1, x2) = (x / b.order, x % b.order);
            for y in 0..n {
                let (y1, y2) = (y / b.order, y % b.order);
                table.push((a.mul(x1, y1) * b.order + b.mul(x2, y2)) as u32);
            }
        }
        let labels = (0..n).map(|x| format!("({}, {})", a.label(x / b.order), b.label(x % b.order))).collect();
        let gens = a.generators.iter().map(|&g| g * b.order).chain(b.generators.iter().copied()).collect();
        FiniteGroup::from_flat(format!("{}x{}", a.name, b.name), n, table, labels, Some(gens), limits)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

fn closure_size(n: usize, table: &[u32], gens: &[usize]) -> usize {
    let mut seen = FixedBitSet::with_capacity(n);
    seen.insert(IDENTITY);
    let mut queue = vec![IDENTITY];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &g in gens {
            if g >= n {
                return 0;
            }
            let y = table[x * n + g] as usize;
            if !seen.put(y) {
                queue.push(y);
            }
        }
    }
    queue.len()
}

fn greedy_generators(n: usize, table: &[u32]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut covered = FixedBitSet::with_capacity(n);
    covered.insert(IDENTITY);
    for g in 1..n {
        if covered.contains(g) {
            continue;
        }
        gens.push(g);
        covered.clear();
        covered.insert(IDENTITY);
        let mut queue = vec![IDENTITY];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in &gens {
                let y = table[x * n + s] as usize;
                if !covered.put(y) {
                    queue.push(y);
                }
            }
        }
    }
    gens
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A subgroup of a finite group, stored as a sorted member list and a bitset.
#[derive(Debug, Clone)]
pub struct SubgroupSet {
    parent_order: usize,
    bits: FixedBitSet,
    members: Vec<usize>,
    gens: Vec<usize>,
}

impl SubgroupSet {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        self.bits.contains(g)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent_order
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection_order(&self, other: &SubgroupSet) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    pub fn labels<'g>(&self, g: &'g FiniteGroup) -> Vec<&'g str> {
        self.members.iter().map(|&m| g.label(m)).collect()
    }
}

impl PartialEq for SubgroupSet {
    fn eq(&self, other: &Self) -> bool {
        self.parent_order == other.parent_order && self.bits == other.bits
    }
}

impl Eq for SubgroupSet {}

impl Hash for SubgroupSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parent_order.hash(state);
        self.members.hash(state);
    }
}

impl PartialOrd for SubgroupSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubgroupSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(name: &str) -> FiniteGroup {
        FiniteGroup::by_name(name, &Limits::default()).unwrap()
    }

    fn sub(g: &FiniteGroup, labels: &[&str]) -> SubgroupSet {
        let seeds: Vec<usize> = labels.iter().map(|l| g.element(l).unwrap()).collect();
        g.generate(&seeds).unwrap()
    }

    #[test]
    fn arithmetic_follows_the_conjugation_convention() {
        let g = s("S4");
        let p = |l: &str| g.element(l).unwrap();
        assert_eq!(g.label(g.mul(p("(1 2)"), p("(2 3 4)"))), "(1 2 3 4)");
        assert_eq!(g.label(g.inv(p("(1 2 3)"))), "(1 3 2)");
        assert_eq!(g.label(g.conj(p("(1 2)"), p("(1 3)"))), "(2 3)");
        assert_eq!(g.arith(ArithOp::Conjugate, &[p("(1 2)"), p("(1 3)")]).unwrap(), p("(2 3)"));
        assert_eq!(g.arith(ArithOp::Product, &[p("(1 2)"), p("(2 3 4)")]).unwrap(), p("(1 2 3 4)"));
        let c = g.arith(ArithOp::Commutator, &[p("(1 2)"), p("(1 3)")]).unwrap();
        assert_eq!(c, g.mul(g.mul(p("(1 2)"), p("(1 3)")), g.mul(p("(1 2)"), p("(1 3)"))));
        assert!(matches!(g.arith(ArithOp::Inverse, &[99]), Err(Error::IndexOutOfRange { .. })));
        assert!(g.arith(ArithOp::Conjugate, &[1]).is_err());
    }

    #[test]
    fn generate_examples() {
        let g = s("S4");
        assert_eq!(sub(&g, &["(1 2)", "(1 2 3 4)"]).order(), 24);
        assert!(g.generate(&[]).unwrap().is_trivial());
        let s3 = s("S3");
        assert_eq!(sub(&s3, &["(1 2 3)"]).order(), 3);
    }

    #[test]
    fn explicit_generators_reproduce_s3() {
        let limits = Limits::default();
        let gens = [Perm::parse("(1 2)").unwrap(), Perm::parse("(1 2 3)").unwrap()];
        let g = FiniteGroup::from_permutations("gen", &gens, &limits).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.same_table(&s("S3")));
    }

    #[test]
    fn centralizer_examples() {
        let s3 = s("S3");
        let c = s3.centralizer(s3.element("(1 2 3)").unwrap());
        assert_eq!(c, sub(&s3, &["(1 2 3)"]));
        assert!(s3.centralizer(IDENTITY).is_whole());
        let s4 = s("S4");
        let c = s4.centralizer(s4.element("(1 2)(3 4)").unwrap());
        assert_eq!(c.order(), 8);
        assert!(!s4.induced(&c).is_abelian());
    }

    #[test]
    fn malnormality_examples() {
        let s3 = s("S3");
        let t = sub(&s3, &["(1 2)"]);
        assert!(s3.is_malnormal(&t).unwrap().verdict);
        let a3 = sub(&s3, &["(1 2 3)"]);
        let r = s3.is_malnormal(&a3).unwrap();
        assert!(!r.verdict);
        let (g, h) = r.witness.unwrap();
        assert!(!a3.contains(g) && a3.contains(h) && h != IDENTITY);
        assert_eq!(s3.label(h), "(1 2 3)");
        assert!(s3.is_malnormal(&s3.whole()).unwrap().verdict);
        assert!(s3.is_malnormal(&s3.trivial_subgroup()).unwrap().verdict);
        let other = s("S4").whole();
        assert!(matches!(s3.is_malnormal(&other), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn direct_products() {
        let l = Limits::default();
        let v4 = FiniteGroup::direct_product(&s("C2"), &s("C2"), &l).unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.exponent(), 2);
        let p = FiniteGroup::direct_product(&s("S3"), &s("C2"), &l).unwrap();
        assert_eq!(p.order(), 12);
        assert!(!p.is_abelian());
        let c15 = FiniteGroup::direct_product(&s("C3"), &s("C5"), &l).unwrap();
        assert!(c15.elements().any(|g| c15.element_order(g) == 15));
        let tight = Limits { cap_order: 10, ..l };
        assert!(matches!(FiniteGroup::direct_product(&s("C3"), &s("C5"), &tight), Err(Error::OrderCap { .. })));
    }

    #[test]
    fn rejects_broken_tables() {
        let l = Limits::default();
        let not_identity = vec![vec![1, 0], vec![0, 1]];
        assert!(FiniteGroup::from_table("x", &not_identity, None, &l).is_err());
        let not_latin = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]];
        assert!(FiniteGroup::from_table("x", &not_latin, None, &l).is_err());
        // A Latin square with identity that is not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table("x", &loop5, None, &l), Err(Error::InvalidTable(_))));
        let z3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert_eq!(FiniteGroup::from_table("z3", &z3, None, &l).unwrap().order(), 3);
    }

    #[test]
    fn order_cap_applies_to_permutation_closure() {
        let l = Limits { cap_order: 100, ..Limits::default() };
        let gens = [Perm::parse("(1 2)").unwrap(), Perm::parse("(1 2 3 4 5)").unwrap()];
        assert!(matches!(FiniteGroup::from_permutations("S5", &gens, &l), Err(Error::OrderCap { .. })));
    }
}
