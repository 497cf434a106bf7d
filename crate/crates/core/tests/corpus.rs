use geotits::corpus::{run_corpus, SCENES};
use geotits::report::{Outcome, RunOptions};

#[test]
fn every_scene_meets_its_declared_outcomes() {
    let run = run_corpus(&RunOptions::default()).unwrap();
    let bad: Vec<_> = run.entries.iter().filter(|e| !e.ok).map(|e| format!("{} {}: {:?}", e.scene, e.check, e.actual)).collect();
    assert!(bad.is_empty(), "{bad:?}");
    assert_eq!(run.overall, Outcome::Pass);
    assert!(run.entries.len() >= SCENES.len());
}
