use hs6v_core::verify::{run_trial, Status, Suite, SuiteOptions};

fn run(suite: Suite, passes: u64) {
    let opts = SuiteOptions::default();
    for trial in 0..suite.configs() as u64 * passes {
        let r = run_trial(suite, &opts, 11, trial);
        eprintln!("{} {} {} rej={}", r.identity, r.status.as_str(), r.max_abs_residual, r.draw.rejections);
        if !r.exploratory {
            assert_eq!(r.status, Status::Pass, "{} trial {trial}: {:?}", r.identity, r.draw);
        }
    }
}

#[test]
fn ybe() {
    run(Suite::Ybe, 1);
}

#[test]
fn reflection() {
    run(Suite::Reflection, 2);
}

#[test]
fn dual() {
    run(Suite::Dual, 2);
}

#[test]
fn crossing() {
    run(Suite::Crossing, 1);
}

#[test]
fn stochastic() {
    run(Suite::Stochastic, 1);
}

#[test]
fn transfer() {
    run(Suite::Transfer, 1);
}

#[test]
fn genfun() {
    run(Suite::Genfun, 2);
}

#[test]
fn phi_identity() {
    run(Suite::PhiIdentity, 1);
}

#[test]
fn qseries() {
    run(Suite::Qseries, 2);
}

#[test]
fn routes() {
    run(Suite::Routes, 1);
}
