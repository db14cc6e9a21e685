//! Stress sweep with seeded-random gluing scalars: every verification
//! statement must still hold when the bundles are generic rather than
//! trivially glued. Deterministic under the fixed seed.

use curve_koszul::sweep::{
    run_sweep, CoeffKind, GluingMode, SweepConfig, TheoremKind, WMode,
};

#[test]
fn all_theorems_hold_under_random_gluings() {
    let cfg = SweepConfig {
        catalog: vec!["F1".into(), "F2".into(), "F3".into(), "F4".into(), "F5".into()],
        degree_min: 1,
        degree_max: 5,
        gluing_modes: vec![GluingMode::Random],
        theorems: vec![
            TheoremKind::Vanishing,
            TheoremKind::Np,
            TheoremKind::Duality,
            TheoremKind::Warmup,
            TheoremKind::Jlemma,
        ],
        threshold_offset: 0,
        w_modes: vec![WMode::Full, WMode::Codim1],
        coefficient_bundles: vec![
            CoeffKind::Dualizing,
            CoeffKind::Structure,
            CoeffKind::StructurePair,
            CoeffKind::StructureTwist,
        ],
        slice_cap: 16_000_000,
        p_cap: 2,
        seed: 987654321,
    };
    let report = run_sweep(&cfg).unwrap();
    assert_eq!(report.fail, 0, "{:?}", report.first_failure());
    assert!(report.pass > 4000, "sweep unexpectedly small: {}", report.pass);
    println!(
        "random-gluing sweep: pass={} partial={} skipped={}",
        report.pass, report.partial, report.skipped
    );
}
