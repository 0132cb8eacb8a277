use qtensor_core::claims::{run_claim, Session, VerifyOptions};
use qtensor_core::report::Verdict;

fn probe(id: &str) {
    let s = Session::new(VerifyOptions::default());
    let t0 = std::time::Instant::now();
    let results = run_claim(&s, id).unwrap();
    let pass = results.iter().filter(|r| r.verdict == Verdict::Pass).count();
    let fail: Vec<_> = results.iter().filter(|r| r.verdict == Verdict::Fail).collect();
    let skip = results.iter().filter(|r| r.verdict == Verdict::Skipped).count();
    eprintln!(
        "{id}: {} results ({} pass, {} fail, {} skipped) in {:?}",
        results.len(),
        pass,
        fail.len(),
        skip,
        t0.elapsed()
    );
    for f in &fail {
        eprintln!("  FAIL {} : {:?}", f.instance, f.witness);
    }
    assert!(fail.is_empty(), "{id} had failures");
}

#[test]
fn ex53() {
    probe("Ex5.3");
}

#[test]
fn thm52() {
    probe("Thm5.2");
}

#[test]
fn thm32() {
    for id in ["Thm3.2.i", "Thm3.2.iii", "Thm3.2.iv", "Thm3.2.v"] {
        probe(id);
    }
}

#[test]
fn rem33() {
    probe("Rem3.3");
}

#[test]
fn lemma51() {
    for id in ["Lemma5.1.i", "Lemma5.1.ii", "Lemma5.1.iii"] {
        probe(id);
    }
}

#[test]
fn prop41() {
    probe("Prop4.1");
}
