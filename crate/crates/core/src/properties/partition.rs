//! Conjugate covers of `G \ {1}` and the counting identity
//! `|G| - 1 = sum_k [G : N_G(M_k)] (|M_k| - 1)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubgroupSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    /// Conjugates of the reps cover `G \ {1}` and meet pairwise trivially.
    pub partition_ok: bool,
    pub malnormal_ok: bool,
    pub count_identity_ok: bool,
    /// `[G : N_G(M_k)] (|M_k| - 1)` per rep.
    pub terms: Vec<usize>,
    pub lhs: usize,
}

pub fn verify_partition_count(g: &FiniteGroup, reps: &[SubgroupSet]) -> Result<PartitionReport> {
    for m in reps {
        g.check_subgroup(m)?;
        if m.is_trivial() || m.is_whole() {
            return Err(Error::InvalidParam("representatives must be nontrivial proper subgroups".into()));
        }
    }
    let lhs = g.order() - 1;
    let terms: Vec<usize> =
        reps.iter().map(|m| g.order() / g.normalizer(m).order() * (m.order() - 1)).collect();
    let count_identity_ok = terms.iter().sum::<usize>() == lhs;

    let mut conjugates: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut duplicate = false;
    for m in reps {
        let mut mine = BTreeSet::new();
        for x in g.elements() {
            mine.insert(g.conjugate_subgroup(m, x).ones().collect::<Vec<_>>());
        }
        for c in mine {
            duplicate |= !conjugates.insert(c);
        }
    }
    let mut covered = vec![0usize; g.order()];
    for c in &conjugates {
        for &x in c.iter().skip(1) {
            covered[x] += 1;
        }
    }
    let partition_ok = !duplicate && covered.iter().skip(1).all(|&k| k == 1);
    let mut malnormal_ok = true;
    for m in reps {
        malnormal_ok &= g.is_malnormal(m)?.verdict;
    }
    Ok(PartitionReport { partition_ok, malnormal_ok, count_identity_ok, terms, lhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Limits;

    fn sub(g: &FiniteGroup, labels: &[&str]) -> SubgroupSet {
        g.generate(&labels.iter().map(|l| g.element(l).unwrap()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn frobenius21() {
        let g = FiniteGroup::by_name("frobenius21", &Limits::default()).unwrap();
        let c7 = g.generate(&[g.elements().find(|&x| g.element_order(x) == 7).unwrap()]).unwrap();
        let c3 = g.generate(&[g.elements().find(|&x| g.element_order(x) == 3).unwrap()]).unwrap();
        let r = verify_partition_count(&g, &[c7, c3]).unwrap();
        assert!(r.partition_ok && r.count_identity_ok && !r.malnormal_ok);
        assert_eq!(r.terms, vec![6, 14]);
        assert_eq!(r.lhs, 20);
    }

    #[test]
    fn s3_and_preconditions() {
        let g = FiniteGroup::by_name("S3", &Limits::default()).unwrap();
        let r = verify_partition_count(&g, &[sub(&g, &["(1 2 3)"]), sub(&g, &["(1 2)"])]).unwrap();
        assert!(r.partition_ok && r.count_identity_ok && !r.malnormal_ok);
        assert_eq!(r.terms, vec![2, 3]);
        assert!(verify_partition_count(&g, &[g.whole()]).is_err());
        let c1 = FiniteGroup::by_name("C1", &Limits::default()).unwrap();
        let r = verify_partition_count(&c1, &[]).unwrap();
        assert!(r.partition_ok && r.count_identity_ok && r.malnormal_ok);
    }
}
