use varitas::suite;
use varitas::Limits;

#[test]
fn corpus_suite_passes() {
    let report = suite::run(&Limits::default(), 4).unwrap();
    print!("{}", report.to_text());
    assert!(report.all_passed(), "{}", report.to_text());
}
