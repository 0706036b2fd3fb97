//! X-centralizers, XT and CSX checks by two independent methods each, class
//! operators, the counting identity, equational domains and universal
//! sentences.

mod domain;
mod partition;
mod predicate;
mod sentences;

use std::sync::Arc;

use once_cell::sync::OnceCell;
use serde::Serialize;

use crate::config::Limits;
use crate::error::Result;
use crate::group::{FiniteGroup, Lattice, SubgroupSet, IDENTITY};
use crate::report::{Method, PropertyReport, Witness};
use crate::variety::{MembershipVerdict, VarietyContext, VarietySpec};

pub use domain::{zero_divisor_scan, DomainReport};
pub use partition::{verify_partition_count, PartitionReport};
pub use predicate::{operator_check, GroupPredicate, Operator, PredicateEval};
pub use sentences::{SentenceReport, SentenceVerdict};

/// `C_X(a)` together with its closure diagnosis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XCentralizer {
    pub a: usize,
    pub members: Vec<usize>,
    /// Closed under products, hence a subgroup when nonempty.
    pub closed: bool,
    /// Least `(x, y)` in the set with `xy` outside it.
    pub not_closed: Option<(usize, usize)>,
    /// Whether the subgroup generated by the set lies in X.
    pub generated_in_x: bool,
}

/// One group and one variety, with the subgroup lattice built on demand and
/// shared with other analyses of the same group.
#[derive(Debug)]
pub struct Analysis {
    ctx: VarietyContext,
    lattice: OnceCell<Arc<Lattice>>,
    x_flags: OnceCell<Vec<bool>>,
}

impl Analysis {
    pub fn new(group: Arc<FiniteGroup>, variety: Arc<VarietySpec>, limits: Limits) -> Analysis {
        Analysis { ctx: VarietyContext::new(group, variety, limits), lattice: OnceCell::new(), x_flags: OnceCell::new() }
    }

    pub fn with_lattice(mut self, lattice: Arc<Lattice>) -> Analysis {
        self.lattice = OnceCell::with_value(lattice);
        self
    }

    pub fn group(&self) -> &FiniteGroup {
        self.ctx.group()
    }

    pub fn variety(&self) -> &VarietySpec {
        self.ctx.variety()
    }

    pub fn context(&self) -> &VarietyContext {
        &self.ctx
    }

    pub fn limits(&self) -> &Limits {
        self.ctx.limits()
    }

    pub fn lattice(&self) -> Result<&Arc<Lattice>> {
        self.lattice.get_or_try_init(|| Lattice::new(self.group(), self.limits()).map(Arc::new))
    }

    /// Membership flag for every lattice subgroup.
    pub fn x_flags(&self) -> Result<&[bool]> {
        self.x_flags
            .get_or_try_init(|| {
                let lat = self.lattice()?;
                lat.subgroups().iter().map(|h| self.ctx.contains_subgroup(h)).collect()
            })
            .map(Vec::as_slice)
    }

    pub fn is_member(&self) -> Result<MembershipVerdict> {
        self.variety().is_member(self.group(), self.limits())
    }

    pub fn member_report(&self) -> Result<PropertyReport> {
        let v = self.is_member()?;
        let r = self.report("member", Method::Direct);
        Ok(match v.violated {
            Some((word, tuple)) => r.fail(Witness::Law { word, tuple }),
            None => r,
        })
    }

    fn report(&self, check: &str, method: Method) -> PropertyReport {
        PropertyReport::new(check, self.group(), &self.variety().name, method)
    }

    pub fn x_centralizer(&self, a: usize) -> Result<XCentralizer> {
        let g = self.group();
        g.check_index(a)?;
        let mut members = Vec::new();
        for x in g.elements() {
            if self.ctx.q(a, x)? {
                members.push(x);
            }
        }
        let mut inside = vec![false; g.order()];
        for &x in &members {
            inside[x] = true;
        }
        let not_closed = members
            .iter()
            .flat_map(|&x| members.iter().map(move |&y| (x, y)))
            .find(|&(x, y)| !inside[g.mul(x, y)]);
        let span = g.generate(&members)?;
        let generated_in_x = self.ctx.contains_subgroup(&span)?;
        Ok(XCentralizer { a, members, closed: not_closed.is_none(), not_closed, generated_in_x })
    }

    pub fn is_xt(&self, method: Method) -> Result<PropertyReport> {
        match method {
            Method::Direct => match self.lattice() {
                Ok(_) => self.xt_direct(),
                Err(crate::Error::OrderCap { .. }) => Ok(self.xt_centralizer()?.stat("direct_fallback", 1)),
                Err(e) => Err(e),
            },
            Method::Centralizer => self.xt_centralizer(),
            other => Err(crate::Error::InvalidParam(format!("is_xt has no `{other}` method"))),
        }
    }

    fn xt_direct(&self) -> Result<PropertyReport> {
        let g = self.group();
        let lat = self.lattice()?;
        let flags = self.x_flags()?;
        let mut pairs = 0u64;
        for i in 0..lat.len() {
            if !flags[i] {
                continue;
            }
            for j in i + 1..lat.len() {
                if !flags[j] || lat.get(i).intersection_order(lat.get(j)) == 1 {
                    continue;
                }
                pairs += 1;
                let k = lat.join(g, i, j);
                if !flags[k] {
                    let join = lat.get(k).clone();
                    let law = self.variety().member_on(g, &join, self.limits())?.violated;
                    let w = Witness::SubgroupPair { a: lat.get(i).clone(), b: lat.get(j).clone(), join, law };
                    return Ok(self.xt_stats(self.report("xt", Method::Direct), pairs).fail(w));
                }
            }
        }
        Ok(self.xt_stats(self.report("xt", Method::Direct), pairs))
    }

    fn xt_stats(&self, r: PropertyReport, pairs: u64) -> PropertyReport {
        let subgroups = self.lattice.get().map_or(0, |l| l.len() as u64);
        r.stat("subgroups", subgroups).stat("pairs", pairs)
    }

    fn xt_centralizer(&self) -> Result<PropertyReport> {
        let g = self.group();
        let mut scanned = 0u64;
        for a in g.elements().skip(1) {
            scanned += 1;
            let c = self.x_centralizer(a)?;
            if c.members.is_empty() {
                continue;
            }
            let r = self.report("xt", Method::Centralizer).stat("elements", scanned);
            if let Some((x, y)) = c.not_closed {
                return Ok(r.fail(Witness::NotClosed { a, x, y }));
            }
            if !c.generated_in_x {
                let h = g.generate(&c.members)?;
                let (law, tuple) =
                    self.variety().member_on(g, &h, self.limits())?.violated.expect("subgroup outside X");
                return Ok(r.fail(Witness::CentralizerNotInX { a, law, tuple }));
            }
        }
        Ok(self.report("xt", Method::Centralizer).stat("elements", scanned))
    }

    /// Maximal members of the lattice among the X-subgroups.
    pub fn maximal_x_subgroups(&self) -> Result<Vec<SubgroupSet>> {
        let lat = self.lattice()?;
        Ok(lat.maximal_among(self.x_flags()?).into_iter().map(|i| lat.get(i).clone()).collect())
    }

    pub fn is_csx(&self, method: Method) -> Result<PropertyReport> {
        match method {
            Method::Direct => self.csx_direct(),
            Method::Condition => self.csx_condition(),
            other => Err(crate::Error::InvalidParam(format!("is_csx has no `{other}` method"))),
        }
    }

    fn csx_direct(&self) -> Result<PropertyReport> {
        let g = self.group();
        let maximal = self.maximal_x_subgroups()?;
        let r = self.report("csx", Method::Direct).stat("maximal", maximal.len() as u64);
        for m in maximal {
            let mr = g.is_malnormal(&m)?;
            if let Some((x, h)) = mr.witness {
                return Ok(r.fail(Witness::NotMalnormal { subgroup: m, g: x, h }));
            }
        }
        Ok(r)
    }

    /// Verdict: XT and, for all `a != 1` and `z`, `Q(a, a^z)` implies `Q(a, z)`.
    /// Without XT the scan alone does not decide CSX; `not_applicable` flags that.
    fn csx_condition(&self) -> Result<PropertyReport> {
        let g = self.group();
        let xt = self.xt_centralizer()?;
        let mut r = self.report("csx", Method::Condition).stat("xt", xt.verdict as u64);
        if !xt.verdict {
            r = r.stat("not_applicable", 1);
        }
        let mut pairs = 0u64;
        for a in g.elements().skip(1) {
            for z in g.elements() {
                pairs += 1;
                if self.ctx.q(a, g.conj(a, z))? && !self.ctx.q(a, z)? {
                    return Ok(r.stat("pairs", pairs).fail(Witness::Condition { a, z }));
                }
            }
        }
        r = r.stat("pairs", pairs);
        Ok(match xt.witness {
            Some(w) => r.fail(w),
            None => r,
        })
    }

    pub fn sentences(&self, n_max: usize) -> Result<SentenceReport> {
        sentences::evaluate(&self.ctx, n_max)
    }

    /// Re-evaluates a witness against the group and variety and confirms it
    /// exhibits a violation.
    pub fn replay(&self, w: &Witness) -> Result<bool> {
        replay_witness(self.group(), self.variety(), self.limits(), w)
    }
}

pub fn replay_witness(g: &FiniteGroup, x: &VarietySpec, limits: &Limits, w: &Witness) -> Result<bool> {
    let q = |a: usize, b: usize| crate::variety::q_predicate(g, a, b, x, limits);
    let violates = |word: &crate::words::FreeWord, t: &[usize]| -> Result<bool> {
        Ok(x.basis.contains(word) && word.evaluate(g, t)? != IDENTITY)
    };
    Ok(match w {
        Witness::SubgroupPair { a, b, join, law } => {
            let members_ok = x.member_on(g, a, limits)?.member && x.member_on(g, b, limits)?.member;
            let join_ok = *join == g.join(a, b) && !x.member_on(g, join, limits)?.member;
            let law_ok = match law {
                Some((word, t)) => violates(word, t)? && t.iter().all(|&e| join.contains(e)),
                None => true,
            };
            members_ok && a.intersection_order(b) > 1 && join_ok && law_ok
        }
        Witness::NotClosed { a, x: u, y } => q(*a, *u)? && q(*a, *y)? && !q(*a, g.mul(*u, *y))?,
        Witness::CentralizerNotInX { a, law, tuple } => {
            violates(law, tuple)? && tuple.iter().try_fold(true, |acc, &e| Ok::<_, crate::Error>(acc && q(*a, e)?))?
        }
        Witness::NotMalnormal { subgroup, g: u, h } => {
            !subgroup.contains(*u) && *h != IDENTITY && subgroup.contains(*h) && subgroup.contains(g.conj(*h, g.inv(*u)))
        }
        Witness::Condition { a, z } => *a != IDENTITY && q(*a, g.conj(*a, *z))? && !q(*a, *z)?,
        Witness::Sentence { sentence, tuple } => sentences::replay(g, x, limits, sentence, tuple)?,
        Witness::ZeroDivisor { x: u, y } => {
            *u != IDENTITY && *y != IDENTITY && g.elements().all(|h| g.comm(g.conj(*u, h), *y) == IDENTITY)
        }
        Witness::NormalCentralizer { normal, y } => {
            g.is_normal(normal)
                && !normal.is_trivial()
                && *y != IDENTITY
                && normal.members().iter().all(|&m| g.mul(m, *y) == g.mul(*y, m))
        }
        Witness::Law { word, tuple } => violates(word, tuple)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn analysis(group: &str, variety: &str) -> Analysis {
        let l = Limits::default();
        Analysis::new(
            Arc::new(FiniteGroup::by_name(group, &l).unwrap()),
            Arc::new(VarietySpec::builtin(variety).unwrap()),
            l,
        )
    }

    #[test]
    fn abelian_x_centralizer_is_the_centralizer() {
        let an = analysis("S4", "abelian");
        let g = an.group();
        for a in g.elements() {
            assert_eq!(an.x_centralizer(a).unwrap().members, g.centralizer(a).members());
        }
    }

    #[test]
    fn metabelian_s4_centralizer_not_closed() {
        let an = analysis("S4", "metabelian");
        let g = an.group();
        let e = |l: &str| g.element(l).unwrap();
        let c = an.x_centralizer(e("(2 3)")).unwrap();
        assert!(c.members.contains(&e("(1 2)")) && c.members.contains(&e("(2 3 4)")));
        assert!(!c.members.contains(&g.mul(e("(1 2)"), e("(2 3 4)"))));
        assert!(!c.closed);
        assert!(c.members.contains(&IDENTITY));
    }

    #[test]
    fn xt_examples() {
        let an = analysis("S3", "abelian");
        assert!(an.is_xt(Method::Direct).unwrap().verdict);
        assert!(an.is_xt(Method::Centralizer).unwrap().verdict);

        let an = analysis("S4", "abelian");
        let r = an.is_xt(Method::Centralizer).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.witness.as_ref().unwrap().kind(), "centralizer-not-in-x");
        if let Some(Witness::CentralizerNotInX { a, .. }) = &r.witness {
            assert_eq!(an.group().label(*a), "(1 2)(3 4)");
        }
        assert!(an.replay(r.witness.as_ref().unwrap()).unwrap());
        let d = an.is_xt(Method::Direct).unwrap();
        assert!(!d.verdict);
        assert!(an.replay(d.witness.as_ref().unwrap()).unwrap());

        let an = analysis("S3", "nilpotent-2");
        assert!(an.is_xt(Method::Direct).unwrap().verdict);
        assert!(!an.is_member().unwrap().member);
    }

    #[test]
    fn maximal_examples() {
        let orders = |g: &str, x: &str| -> Vec<usize> {
            analysis(g, x).maximal_x_subgroups().unwrap().iter().map(SubgroupSet::order).collect()
        };
        assert_eq!(orders("S3", "abelian"), vec![2, 2, 2, 3]);
        assert_eq!(orders("S3", "metabelian"), vec![6]);
        assert_eq!(orders("frobenius21", "abelian"), vec![3, 3, 3, 3, 3, 3, 3, 7]);
    }

    #[test]
    fn csx_examples() {
        let an = analysis("S3", "abelian");
        let r = an.is_csx(Method::Direct).unwrap();
        assert!(!r.verdict);
        match r.witness.as_ref().unwrap() {
            Witness::NotMalnormal { subgroup, .. } => assert_eq!(subgroup.order(), 3),
            w => panic!("{w:?}"),
        }
        assert!(an.replay(r.witness.as_ref().unwrap()).unwrap());
        let c = an.is_csx(Method::Condition).unwrap();
        assert!(!c.verdict);
        assert!(an.replay(c.witness.as_ref().unwrap()).unwrap());
        assert!(analysis("C5", "abelian").is_csx(Method::Direct).unwrap().verdict);
        assert!(analysis("C5", "abelian").is_csx(Method::Condition).unwrap().verdict);
        let an = analysis("S3", "metabelian");
        assert!(an.is_csx(Method::Direct).unwrap().verdict);
        assert!(an.is_member().unwrap().member);
    }
}
