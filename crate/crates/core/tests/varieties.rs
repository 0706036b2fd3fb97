use varitas::variety::{q_predicate, var_gen_oracle, OracleVerdict, VarietySpec};
use varitas::words::is_identity;
use varitas::{FiniteGroup, Limits};

fn g(name: &str) -> FiniteGroup {
    FiniteGroup::by_name(name, &Limits::default()).unwrap()
}

fn x(name: &str) -> VarietySpec {
    VarietySpec::builtin(name).unwrap()
}

#[test]
fn membership() {
    let l = Limits::default();
    assert!(x("metabelian").is_member(&g("S3"), &l).unwrap().member);
    let s4 = g("S4");
    let v = x("metabelian").is_member(&s4, &l).unwrap();
    let (law, tuple) = v.violated.unwrap();
    assert!(!v.member);
    assert_ne!(law.evaluate(&s4, &tuple).unwrap(), 0);
    assert!(x("nilpotent-2").is_member(&g("D8"), &l).unwrap().member);
    assert!(!x("nilpotent-2").is_member(&g("S3"), &l).unwrap().member);
}

#[test]
fn q_examples() {
    let l = Limits::default();
    let s4 = g("S4");
    let e = |s: &str| s4.element(s).unwrap();
    let met = x("metabelian");
    assert!(q_predicate(&s4, e("(2 3)"), e("(1 2)"), &met, &l).unwrap());
    assert!(!q_predicate(&s4, e("(2 3)"), e("(1 2 3 4)"), &met, &l).unwrap());
    for a in s4.elements() {
        let cyclic = s4.generate(&[a]).unwrap();
        let direct = met.member_on(&s4, &cyclic, &l).unwrap().member;
        assert_eq!(q_predicate(&s4, a, 0, &met, &l).unwrap(), direct);
    }
}

#[test]
fn oracle_examples() {
    let l = Limits::default();
    let s3 = g("S3");
    let c2 = g("C2");
    assert!(matches!(var_gen_oracle(&s3, &c2, c2.generators(), &l).unwrap(), OracleVerdict::Member { .. }));
    let c4 = g("C4");
    match var_gen_oracle(&s3, &c4, c4.generators(), &l).unwrap() {
        OracleVerdict::NonMember { law } => {
            assert!(is_identity(&s3, &law, &l).unwrap().holds);
            assert!(!is_identity(&c4, &law, &l).unwrap().holds);
        }
        other => panic!("{other:?}"),
    }
    let k4 = g("C2xC2");
    assert!(matches!(var_gen_oracle(&c2, &k4, k4.generators(), &l).unwrap(), OracleVerdict::Member { .. }));
    let tight = Limits { oracle_states: 2, ..l };
    assert!(matches!(var_gen_oracle(&s3, &c4, c4.generators(), &tight).unwrap(), OracleVerdict::Unknown { .. }));
}

#[test]
fn variety_files() {
    let v = VarietySpec::from_json(r#"{"name": "exp4", "basis": ["x1^4"]}"#).unwrap();
    assert!(v.is_member(&g("C2xC4"), &Limits::default()).unwrap().member);
    assert!(VarietySpec::from_json(r#"{"name": "bad", "basis": ["x1^"]}"#).is_err());
    assert!(VarietySpec::builtin("solvable").is_err());
}
