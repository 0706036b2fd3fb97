use std::sync::Arc;

use varitas::properties::{verify_partition_count, zero_divisor_scan, Analysis, GroupPredicate, Operator, PredicateEval};
use varitas::report::{Method, Witness};
use varitas::variety::VarietySpec;
use varitas::{FiniteGroup, Lattice, Limits, SubgroupSet};

fn g(name: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::by_name(name, &Limits::default()).unwrap())
}

fn an(group: &str, variety: &str) -> Analysis {
    Analysis::new(g(group), Arc::new(VarietySpec::builtin(variety).unwrap()), Limits::default())
}

fn orders(hs: &[SubgroupSet]) -> Vec<usize> {
    let mut o: Vec<usize> = hs.iter().map(SubgroupSet::order).collect();
    o.sort();
    o
}

#[test]
fn xt_examples() {
    for m in [Method::Direct, Method::Centralizer] {
        assert!(an("S3", "abelian").is_xt(m).unwrap().verdict);
        assert!(!an("S4", "abelian").is_xt(m).unwrap().verdict);
        assert!(an("S3", "nilpotent-2").is_xt(m).unwrap().verdict);
    }
    assert!(!an("S3", "nilpotent-2").is_member().unwrap().member);
    let r = an("S4", "abelian").is_xt(Method::Centralizer).unwrap();
    let s4 = g("S4");
    match r.witness.unwrap() {
        Witness::CentralizerNotInX { a, .. } | Witness::NotClosed { a, .. } => {
            assert_eq!(s4.centralizer(a).order(), 8)
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn maximal_subgroups() {
    assert_eq!(orders(&an("S3", "abelian").maximal_x_subgroups().unwrap()), [2, 2, 2, 3]);
    assert_eq!(orders(&an("frobenius21", "abelian").maximal_x_subgroups().unwrap()), [3, 3, 3, 3, 3, 3, 3, 7]);
    assert_eq!(orders(&an("D8", "nilpotent-2").maximal_x_subgroups().unwrap()), [8]);
}

#[test]
fn csx_examples() {
    for m in [Method::Direct, Method::Condition] {
        assert!(an("C5", "abelian").is_csx(m).unwrap().verdict);
        assert!(an("S3", "metabelian").is_csx(m).unwrap().verdict);
    }
    let r = an("S3", "abelian").is_csx(Method::Direct).unwrap();
    assert!(!r.verdict);
    match r.witness.unwrap() {
        Witness::NotMalnormal { subgroup, .. } => assert_eq!(subgroup.order(), 3),
        other => panic!("{other:?}"),
    }
    assert!(an("S3", "metabelian").is_member().unwrap().member);
}

#[test]
fn operators() {
    let l = Limits::default();
    for (name, expect) in [("S3", true), ("S4", false)] {
        let grp = g(name);
        let lat = Lattice::new(&grp, &l).unwrap();
        let ev = PredicateEval::new(&grp, &lat, &l);
        let p = GroupPredicate::member(VarietySpec::builtin("abelian").unwrap());
        assert_eq!(ev.check(&p, Operator::T).unwrap().verdict, expect);
        assert_eq!(ev.check(&Operator::T.apply(p.clone()), Operator::T).unwrap().verdict, expect);
    }
    let c5 = g("C5");
    let lat = Lattice::new(&c5, &l).unwrap();
    let ev = PredicateEval::new(&c5, &lat, &l);
    assert!(ev.check(&GroupPredicate::member(VarietySpec::builtin("abelian").unwrap()), Operator::Cs).unwrap().verdict);
}

#[test]
fn partition_counts() {
    let f = g("frobenius21");
    let of_order = |grp: &FiniteGroup, n: usize| grp.generate(&[grp.elements().find(|&x| grp.element_order(x) == n).unwrap()]).unwrap();
    let r = verify_partition_count(&f, &[of_order(&f, 7), of_order(&f, 3)]).unwrap();
    assert!(r.partition_ok && r.count_identity_ok && !r.malnormal_ok);
    assert_eq!((r.terms.clone(), r.lhs), (vec![6, 14], 20));
    let s3 = g("S3");
    let r = verify_partition_count(&s3, &[of_order(&s3, 3), of_order(&s3, 2)]).unwrap();
    assert!(r.partition_ok && r.count_identity_ok && !r.malnormal_ok);
    assert_eq!(r.terms, [2, 3]);
    assert!(verify_partition_count(&g("C4"), &[g("C4").whole()]).is_err());
}

#[test]
fn domains() {
    let l = Limits::default();
    for m in [Method::Definition, Method::NormalCentralizer] {
        assert!(!zero_divisor_scan(&g("C6"), m, &l).unwrap().report.verdict);
        assert!(!zero_divisor_scan(&g("S3"), m, &l).unwrap().report.verdict);
        assert!(zero_divisor_scan(&g("A5"), m, &l).unwrap().report.verdict);
    }
    let c6 = zero_divisor_scan(&g("C6"), Method::Definition, &l).unwrap();
    assert_eq!(c6.zero_divisors.len(), 5);
    let s3 = g("S3");
    let r = zero_divisor_scan(&s3, Method::Definition, &l).unwrap();
    assert!(r.zero_divisors.contains(&s3.element("(1 2 3)").unwrap()));
}

#[test]
fn sentences_and_replay() {
    let a = an("S3", "nilpotent-2");
    let s = a.sentences(3).unwrap();
    assert!(s.xt_axioms());
    assert!(!s.mal_x.holds);
    let r = an("S4", "abelian").is_xt(Method::Direct).unwrap();
    assert!(an("S4", "abelian").replay(r.witness.as_ref().unwrap()).unwrap());
    assert!(a.sentences(0).is_err());
}
