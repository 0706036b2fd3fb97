use std::collections::BTreeSet;

use proptest::prelude::*;
use varitas::group::{Builtin, IDENTITY};
use varitas::{ArithOp, FiniteGroup, Lattice, Limits, Perm};

fn g(name: &str) -> FiniteGroup {
    FiniteGroup::by_name(name, &Limits::default()).unwrap()
}

/// Every subgroup of these small groups is generated by two elements, so
/// closing all pairs lists the lattice without any join fixpoint.
fn subgroups_by_pairs(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for a in g.elements() {
        for b in a..g.order() {
            out.insert(g.generate(&[a, b]).unwrap().members().to_vec());
        }
    }
    out
}

#[test]
fn builtin_orders() {
    assert_eq!(g("S4").order(), 24);
    let f = g("frobenius21");
    assert_eq!(f.order(), 21);
    assert!(!f.is_abelian());
    let l = Limits::default();
    let s3 = FiniteGroup::from_permutations("S3'", &[Perm::parse("(1 2)").unwrap(), Perm::parse("(1 2 3)").unwrap()], &l)
        .unwrap();
    assert!(s3.same_table(&g("S3")));
    assert!(FiniteGroup::builtin(Builtin::Symmetric(6), &Limits { cap_order: 100, ..l }).is_err());
}

#[test]
fn arithmetic_conventions() {
    let s3 = g("S3");
    let (a, b) = (s3.element("(1 2)").unwrap(), s3.element("(1 3)").unwrap());
    let c = s3.arith(ArithOp::Commutator, &[a, b]).unwrap();
    assert_eq!(s3.element_order(c), 3);
    assert_eq!(s3.arith(ArithOp::Conjugate, &[a, a]).unwrap(), a);
    assert_eq!(s3.arith(ArithOp::Product, &[a, a]).unwrap(), IDENTITY);
    assert!(s3.arith(ArithOp::Inverse, &[99]).is_err());
}

#[test]
fn generated_subgroups() {
    let s4 = g("S4");
    let gen = |labels: &[&str]| {
        let xs: Vec<usize> = labels.iter().map(|l| s4.element(l).unwrap()).collect();
        s4.generate(&xs).unwrap().order()
    };
    assert_eq!(gen(&["(1 2)", "(1 2 3 4)"]), 24);
    assert_eq!(gen(&[]), 1);
    let s3 = g("S3");
    assert_eq!(s3.generate(&[s3.element("(1 2 3)").unwrap()]).unwrap().order(), 3);
}

#[test]
fn lattices_match_pair_closure() {
    let l = Limits::default();
    for (name, count) in [("S3", 6), ("S4", 30), ("C6", 4), ("Q8", 6), ("D8", 10), ("A4", 10)] {
        let grp = g(name);
        let lat = Lattice::new(&grp, &l).unwrap();
        let ours: BTreeSet<Vec<usize>> = lat.subgroups().iter().map(|h| h.members().to_vec()).collect();
        assert_eq!(ours.len(), count, "{name}");
        assert_eq!(ours, subgroups_by_pairs(&grp), "{name}");
        for i in 0..lat.len() {
            let h = lat.get(i);
            let normal = grp.elements().all(|x| h.members().iter().all(|&y| h.contains(grp.conj(y, x))));
            assert_eq!(lat.is_normal(i), normal, "{name}");
        }
    }
    let s3 = Lattice::new(&g("S3"), &l).unwrap();
    assert_eq!((0..s3.len()).filter(|&i| s3.is_normal(i)).count(), 3);
}

#[test]
fn malnormality_and_centralizers() {
    let s3 = g("S3");
    let t = s3.generate(&[s3.element("(1 2)").unwrap()]).unwrap();
    assert!(s3.is_malnormal(&t).unwrap().verdict);
    let a3 = s3.generate(&[s3.element("(1 2 3)").unwrap()]).unwrap();
    let r = s3.is_malnormal(&a3).unwrap();
    assert!(!r.verdict);
    let (x, h) = r.witness.unwrap();
    assert!(!a3.contains(x) && a3.contains(h) && h != IDENTITY);
    assert!(s3.is_malnormal(&s3.whole()).unwrap().verdict);
    assert_eq!(s3.centralizer(s3.element("(1 2 3)").unwrap()).members(), a3.members());
    assert!(s3.centralizer(IDENTITY).is_whole());
    let s4 = g("S4");
    let c = s4.centralizer(s4.element("(1 2)(3 4)").unwrap());
    assert_eq!(c.order(), 8);
    assert!(!s4.induced(&c).is_abelian());
}

#[test]
fn direct_products() {
    let l = Limits::default();
    let k4 = FiniteGroup::direct_product(&g("C2"), &g("C2"), &l).unwrap();
    assert_eq!((k4.order(), k4.exponent()), (4, 2));
    let s3c2 = FiniteGroup::direct_product(&g("S3"), &g("C2"), &l).unwrap();
    assert_eq!(s3c2.order(), 12);
    assert!(!s3c2.is_abelian());
    let c15 = FiniteGroup::direct_product(&g("C3"), &g("C5"), &l).unwrap();
    assert!(c15.elements().any(|x| c15.element_order(x) == 15));
}

proptest! {
    #[test]
    fn inverses_and_associativity(a in 0usize..24, b in 0usize..24, c in 0usize..24) {
        let s4 = g("S4");
        prop_assert_eq!(s4.mul(a, s4.inv(a)), IDENTITY);
        prop_assert_eq!(s4.mul(s4.mul(a, b), c), s4.mul(a, s4.mul(b, c)));
        prop_assert_eq!(s4.comm(a, b), s4.mul(s4.inv(a), s4.conj(a, b)));
    }

    #[test]
    fn generate_is_closure(seeds in proptest::collection::vec(0usize..24, 0..3)) {
        let s4 = g("S4");
        let h = s4.generate(&seeds).unwrap();
        for &x in h.members() {
            for &y in h.members() {
                prop_assert!(h.contains(s4.mul(x, y)));
            }
        }
        prop_assert_eq!(s4.order() % h.order(), 0);
    }
}
