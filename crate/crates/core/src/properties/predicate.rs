//! Subgroup-closed predicates and the class operators `T` and `CS`.

use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;

use crate::config::Limits;
use crate::error::Result;
use crate::group::{FiniteGroup, Lattice, SubgroupSet};
use crate::report::{Method, PropertyReport, Witness};
use crate::variety::VarietySpec;

pub type CustomTest = Arc<dyn Fn(&FiniteGroup, &SubgroupSet) -> bool + Send + Sync>;

/// A class of groups, evaluated on subgroups of a fixed group.
#[derive(Clone)]
pub enum GroupPredicate {
    Member(Arc<VarietySpec>),
    /// `P T`: any two `P`-subgroups meeting nontrivially generate a `P`-subgroup.
    T(Box<GroupPredicate>),
    /// `CS P`: every maximal `P`-subgroup is malnormal.
    Cs(Box<GroupPredicate>),
    /// Must depend only on the subgroup, and `name` must identify it.
    Custom { name: String, test: CustomTest },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    T,
    Cs,
}

impl Operator {
    pub fn apply(self, p: GroupPredicate) -> GroupPredicate {
        match self {
            Operator::T => GroupPredicate::T(Box::new(p)),
            Operator::Cs => GroupPredicate::Cs(Box::new(p)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Operator::T => "T",
            Operator::Cs => "CS",
        }
    }
}

impl GroupPredicate {
    pub fn member(x: VarietySpec) -> GroupPredicate {
        GroupPredicate::Member(Arc::new(x))
    }

    pub fn name(&self) -> String {
        match self {
            GroupPredicate::Member(x) => x.name.clone(),
            GroupPredicate::T(p) => format!("{}T", p.name()),
            GroupPredicate::Cs(p) => format!("CS{}", p.name()),
            GroupPredicate::Custom { name, .. } => name.clone(),
        }
    }
}

impl fmt::Debug for GroupPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Evaluates predicates on every subgroup of one lattice, memoized by name.
pub struct PredicateEval<'a> {
    g: &'a FiniteGroup,
    lattice: &'a Lattice,
    limits: Limits,
    subs: Vec<Vec<usize>>,
    memo: DashMap<String, Arc<Vec<bool>>>,
}

impl<'a> PredicateEval<'a> {
    pub fn new(g: &'a FiniteGroup, lattice: &'a Lattice, limits: &Limits) -> PredicateEval<'a> {
        let subs = (0..lattice.len()).map(|i| lattice.subs(i).collect()).collect();
        PredicateEval { g, lattice, limits: *limits, subs, memo: DashMap::new() }
    }

    /// `flags[i]`: the predicate at lattice subgroup `i`.
    pub fn flags(&self, p: &GroupPredicate) -> Result<Arc<Vec<bool>>> {
        let key = p.name();
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let lat = self.lattice;
        let flags: Vec<bool> = match p {
            GroupPredicate::Member(x) => lat
                .subgroups()
                .iter()
                .map(|h| x.member_on(self.g, h, &self.limits).map(|v| v.member))
                .collect::<Result<_>>()?,
            GroupPredicate::T(inner) => {
                let f = self.flags(inner)?;
                (0..lat.len()).map(|i| self.t_witness(&f, i).is_none()).collect()
            }
            GroupPredicate::Cs(inner) => {
                let f = self.flags(inner)?;
                (0..lat.len()).map(|i| self.cs_witness(&f, i).is_none()).collect()
            }
            GroupPredicate::Custom { test, .. } => lat.subgroups().iter().map(|h| test(self.g, h)).collect(),
        };
        let flags = Arc::new(flags);
        self.memo.insert(key, flags.clone());
        Ok(flags)
    }

    /// Least pair of `P`-subgroups of subgroup `i` meeting nontrivially with
    /// join outside `P`.
    fn t_witness(&self, f: &[bool], i: usize) -> Option<(usize, usize, usize)> {
        let subs = &self.subs[i];
        for (n, &a) in subs.iter().enumerate() {
            if !f[a] {
                continue;
            }
            for &b in &subs[n + 1..] {
                if f[b] && self.lattice.get(a).intersection_order(self.lattice.get(b)) > 1 {
                    let k = self.lattice.join(self.g, a, b);
                    if !f[k] {
                        return Some((a, b, k));
                    }
                }
            }
        }
        None
    }

    /// First maximal `P`-subgroup of subgroup `i` that is not malnormal in it.
    fn cs_witness(&self, f: &[bool], i: usize) -> Option<(usize, usize, usize)> {
        let ambient = self.lattice.get(i);
        let subs = &self.subs[i];
        for &m in subs {
            let maximal =
                f[m] && !self.lattice.supers(m).iter().any(|&k| f[k] && self.lattice.get(k).is_subset(ambient));
            if !maximal {
                continue;
            }
            if let Some((g, h)) = self.g.malnormal_within(self.lattice.get(m), ambient).witness {
                return Some((m, g, h));
            }
        }
        None
    }

    /// `op(p)` at the whole group.
    pub fn check(&self, p: &GroupPredicate, op: Operator) -> Result<PropertyReport> {
        let f = self.flags(p)?;
        let top = self.lattice.len() - 1;
        let r = PropertyReport::new(op.name(), self.g, &p.name(), Method::Direct)
            .stat("subgroups", self.lattice.len() as u64);
        let lat = self.lattice;
        Ok(match op {
            Operator::T => match self.t_witness(&f, top) {
                Some((a, b, k)) => r.fail(Witness::SubgroupPair {
                    a: lat.get(a).clone(),
                    b: lat.get(b).clone(),
                    join: lat.get(k).clone(),
                    law: None,
                }),
                None => r,
            },
            Operator::Cs => match self.cs_witness(&f, top) {
                Some((m, g, h)) => r.fail(Witness::NotMalnormal { subgroup: lat.get(m).clone(), g, h }),
                None => r,
            },
        })
    }
}

pub fn operator_check(g: &FiniteGroup, p: &GroupPredicate, op: Operator, limits: &Limits) -> Result<PropertyReport> {
    let lattice = Lattice::new(g, limits)?;
    PredicateEval::new(g, &lattice, limits).check(p, op)
}
