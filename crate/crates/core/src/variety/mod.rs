//! Varieties given by finite identity bases, membership, and the
//! two-generator predicate `Q(a, b) <=> <a, b> in X`.

mod oracle;

use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubgroupSet};
use crate::words::{first_violation, scan_cost, FreeWord, StandardWord};

pub use oracle::{var_gen_oracle, OracleVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VarietySpec {
    pub name: String,
    pub basis: Vec<FreeWord>,
    /// Declared: every member is nilpotent.
    pub members_nilpotent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipVerdict {
    pub member: bool,
    pub violated: Option<(FreeWord, Vec<usize>)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VarietyFile {
    name: String,
    basis: Vec<String>,
    #[serde(default)]
    members_nilpotent: bool,
}

impl VarietySpec {
    pub fn new(name: impl Into<String>, basis: Vec<FreeWord>, members_nilpotent: bool) -> VarietySpec {
        VarietySpec { name: name.into(), basis, members_nilpotent }
    }

    /// `abelian`, `nilpotent-k`, `metabelian`, `burnside-n`, or `all`.
    pub fn builtin(name: &str) -> Result<VarietySpec> {
        if name == "all" {
            return Ok(VarietySpec::new("all", Vec::new(), false));
        }
        let sw = StandardWord::parse(name)?;
        let nilpotent = match sw {
            StandardWord::Abelian | StandardWord::Nilpotent(_) => true,
            StandardWord::Burnside(n) => n <= 2,
            StandardWord::Metabelian => false,
        };
        Ok(VarietySpec::new(sw.to_string(), vec![sw.word()?], nilpotent))
    }

    pub fn from_json(text: &str) -> Result<VarietySpec> {
        let file: VarietyFile = serde_json::from_str(text)
            .map_err(|e| Error::Format(format!("variety file line {} column {}: {e}", e.line(), e.column())))?;
        let basis = file
            .basis
            .iter()
            .map(|s| FreeWord::parse(s))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Format(format!("variety `{}`: {e}", file.name)))?;
        Ok(VarietySpec::new(file.name, basis, file.members_nilpotent))
    }

    /// A law holds in every abelian group iff each variable's total exponent is zero.
    pub fn contains_all_abelian(&self) -> bool {
        self.basis.iter().all(|w| (1..=w.arity()).all(|v| w.exponent_sum(v) == 0))
    }

    pub fn max_arity(&self) -> usize {
        self.basis.iter().map(FreeWord::arity).max().unwrap_or(0)
    }

    pub fn is_member(&self, g: &FiniteGroup, limits: &Limits) -> Result<MembershipVerdict> {
        self.member_on(g, &g.whole(), limits)
    }

    /// Membership of the subgroup `h`, scanning tuples of its members.
    pub fn member_on(&self, g: &FiniteGroup, h: &SubgroupSet, limits: &Limits) -> Result<MembershipVerdict> {
        g.check_subgroup(h)?;
        for w in &self.basis {
            let mut meter = limits.meter(scan_cost(h.order(), w.arity(), w.len()));
            if let Some(t) = first_violation(g, h.members(), w, &mut meter)? {
                return Ok(MembershipVerdict { member: false, violated: Some((w.clone(), t)) });
            }
        }
        Ok(MembershipVerdict { member: true, violated: None })
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A group paired with a variety, memoizing subgroup membership and `Q`.
/// Safe to share across threads; memo entries are idempotent.
#[derive(Debug)]
pub struct VarietyContext {
    group: Arc<FiniteGroup>,
    variety: Arc<VarietySpec>,
    limits: Limits,
    sets: DashMap<FixedBitSet, bool>,
    pairs: DashMap<(usize, usize), bool>,
}

impl VarietyContext {
    pub fn new(group: Arc<FiniteGroup>, variety: Arc<VarietySpec>, limits: Limits) -> VarietyContext {
        VarietyContext { group, variety, limits, sets: DashMap::new(), pairs: DashMap::new() }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn variety(&self) -> &VarietySpec {
        &self.variety
    }

    pub fn variety_arc(&self) -> &Arc<VarietySpec> {
        &self.variety
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn contains_subgroup(&self, h: &SubgroupSet) -> Result<bool> {
        if let Some(v) = self.sets.get(h.bits()) {
            return Ok(*v);
        }
        let v = self.variety.member_on(&self.group, h, &self.limits)?.member;
        self.sets.insert(h.bits().clone(), v);
        Ok(v)
    }

    /// `Q(a, b)`: whether `<a, b>` lies in the variety.
    pub fn q(&self, a: usize, b: usize) -> Result<bool> {
        let key = (a.min(b), a.max(b));
        if let Some(v) = self.pairs.get(&key) {
            return Ok(*v);
        }
        let h = self.group.generate(&[a, b])?;
        let v = self.contains_subgroup(&h)?;
        self.pairs.insert(key, v);
        Ok(v)
    }
}

/// `Q(a, b)` for a one-off query.
pub fn q_predicate(g: &FiniteGroup, a: usize, b: usize, x: &VarietySpec, limits: &Limits) -> Result<bool> {
    let h = g.generate(&[a, b])?;
    Ok(x.member_on(g, &h, limits)?.member)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(name: &str) -> FiniteGroup {
        FiniteGroup::by_name(name, &Limits::default()).unwrap()
    }

    #[test]
    fn membership_examples() {
        let l = Limits::default();
        let met = VarietySpec::builtin("metabelian").unwrap();
        assert!(met.is_member(&grp("S3"), &l).unwrap().member);
        let s4 = grp("S4");
        let v = met.is_member(&s4, &l).unwrap();
        assert!(!v.member);
        let (w, t) = v.violated.unwrap();
        assert_ne!(w.evaluate(&s4, &t).unwrap(), 0);
        assert!(VarietySpec::builtin("nilpotent-2").unwrap().is_member(&grp("D8"), &l).unwrap().member);
        assert!(VarietySpec::builtin("all").unwrap().is_member(&s4, &l).unwrap().member);
    }

    #[test]
    fn abelian_closure_flag() {
        for (name, flag) in
            [("abelian", true), ("nilpotent-3", true), ("metabelian", true), ("burnside-2", false), ("all", true)]
        {
            assert_eq!(VarietySpec::builtin(name).unwrap().contains_all_abelian(), flag, "{name}");
        }
    }

    #[test]
    fn q_examples() {
        let l = Limits::default();
        let s4 = grp("S4");
        let e = |x: &str| s4.element(x).unwrap();
        let met = VarietySpec::builtin("metabelian").unwrap();
        assert!(q_predicate(&s4, e("(2 3)"), e("(1 2)"), &met, &l).unwrap());
        assert!(!q_predicate(&s4, e("(2 3)"), e("(1 2 3 4)"), &met, &l).unwrap());
        let ctx = VarietyContext::new(Arc::new(s4.clone()), Arc::new(met), l);
        for a in s4.elements() {
            for b in s4.elements() {
                assert_eq!(ctx.q(a, b).unwrap(), ctx.q(b, a).unwrap());
            }
        }
    }

    #[test]
    fn variety_files() {
        let v = VarietySpec::from_json(r#"{"name": "n2", "basis": ["[x1,x2,x3]"], "members_nilpotent": true}"#)
            .unwrap();
        assert_eq!(v.basis, vec![FreeWord::parse("[x1,x2,x3]").unwrap()]);
        assert!(VarietySpec::from_json(r#"{"name": "bad", "basis": ["x0"]}"#).is_err());
        assert!(VarietySpec::from_json("{").is_err());
    }
}
