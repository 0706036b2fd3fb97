use proptest::prelude::*;
use varitas::group::IDENTITY;
use varitas::words::{is_identity, marginal_subgroup, verbal_subgroup, FreeWord, StandardWord};
use varitas::{FiniteGroup, Limits};

fn g(name: &str) -> FiniteGroup {
    FiniteGroup::by_name(name, &Limits::default()).unwrap()
}

fn w(text: &str) -> FreeWord {
    FreeWord::parse(text).unwrap()
}

#[test]
fn parsing() {
    let c = w("[x1,x2]");
    assert_eq!(c.syllables(), &[(1, -1), (2, -1), (1, 1), (2, 1)]);
    assert_eq!(c.arity(), 2);
    assert_eq!(w("x1^2").syllables(), &[(1, 2)]);
    assert_eq!(w("[x1,x2,x2]"), w("[[x1,x2],x2]"));
    assert!(FreeWord::parse("[x1,").is_err());
    assert!(FreeWord::parse("x0").is_err());
}

#[test]
fn evaluation() {
    let s3 = g("S3");
    let e = |l: &str| s3.element(l).unwrap();
    let v = w("[x1,x2]").evaluate(&s3, &[e("(1 2)"), e("(1 3)")]).unwrap();
    assert_eq!(s3.element_order(v), 3);
    assert_eq!(w("[[x1,x2],x3]").evaluate(&s3, &[IDENTITY; 3]).unwrap(), IDENTITY);
    assert_eq!(w("x1^2").evaluate(&s3, &[e("(1 2 3)")]).unwrap(), e("(1 3 2)"));
}

#[test]
fn identities() {
    let l = Limits::default();
    assert!(is_identity(&g("C6"), &w("[x1,x2]"), &l).unwrap().holds);
    let r = is_identity(&g("S3"), &w("[x1,x2]"), &l).unwrap();
    let t = r.counterexample.unwrap();
    assert_ne!(w("[x1,x2]").evaluate(&g("S3"), &t).unwrap(), IDENTITY);
    assert!(is_identity(&g("S3"), &w("[[x1,x2],[x3,x4]]"), &l).unwrap().holds);
}

#[test]
fn standard_words() {
    let sw = |n: &str| StandardWord::parse(n).unwrap().word().unwrap();
    assert_eq!(sw("nilpotent-1"), w("[x1,x2]"));
    assert_eq!(sw("nilpotent-2"), w("[x1,x2,x3]"));
    assert_eq!(sw("burnside-2"), w("x1^2"));
    assert!(StandardWord::parse("nilpotent-0").is_err());
}

#[test]
fn verbal_and_marginal() {
    let l = Limits::default();
    let c = [w("[x1,x2]")];
    assert_eq!(verbal_subgroup(&g("S4"), &c, &l).unwrap().order(), 12);
    assert!(verbal_subgroup(&g("C6"), &c, &l).unwrap().is_trivial());
    let q8 = g("Q8");
    let squares = verbal_subgroup(&q8, &[w("x1^2")], &l).unwrap();
    assert_eq!(squares.labels(&q8), ["1", "-1"]);
    assert_eq!(marginal_subgroup(&q8, &c, &l).unwrap(), q8.center());
    assert!(marginal_subgroup(&g("S3"), &c, &l).unwrap().is_trivial());
    assert!(marginal_subgroup(&g("D8"), &[w("[x1,x2,x3]")], &l).unwrap().is_whole());
}

fn word_strategy() -> impl Strategy<Value = Vec<(usize, i64)>> {
    proptest::collection::vec((1usize..=3, prop_oneof![-3i64..=-1, 1i64..=3]), 0..8)
}

proptest! {
    #[test]
    fn print_parse_round_trip(raw in word_strategy()) {
        let u = FreeWord::from_syllables(raw).unwrap();
        prop_assert_eq!(FreeWord::parse(&u.to_string()).unwrap(), u);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in word_strategy(), b in word_strategy(), xs in proptest::collection::vec(0usize..24, 3)) {
        let s4 = g("S4");
        let (u, v) = (FreeWord::from_syllables(a).unwrap(), FreeWord::from_syllables(b).unwrap());
        let uv = u.mul(&v).evaluate(&s4, &xs).unwrap();
        prop_assert_eq!(uv, s4.mul(u.evaluate(&s4, &xs).unwrap(), v.evaluate(&s4, &xs).unwrap()));
        prop_assert_eq!(u.inverse().evaluate(&s4, &xs).unwrap(), s4.inv(u.evaluate(&s4, &xs).unwrap()));
    }
}
