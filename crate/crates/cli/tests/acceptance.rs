//! The ten acceptance criteria, one `[PASS]`/`[FAIL]` line each. Runs without
//! the libtest harness so the lines are always printed.

use std::process::{Command, Output};

use serde_json::Value;
use skewgeo_core::certify::{run_many, CertificationReport, CertifyConfig, ConstructionId};

const BIN: &str = env!("CARGO_BIN_EXE_skewgeo");

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn measured(r: &CertificationReport, name: &str) -> f64 {
    r.check(name).and_then(|c| c.measured).unwrap_or(f64::NAN)
}

fn at_most(r: &CertificationReport, name: &str, bound: f64, notes: &mut Vec<String>) -> bool {
    let m = measured(r, name);
    let ok = m <= bound;
    if !ok {
        notes.push(format!("{} {name} = {m:e} > {bound:e}", r.construction));
    }
    ok
}

fn equals(r: &CertificationReport, name: &str, want: f64, notes: &mut Vec<String>) -> bool {
    let m = measured(r, name);
    let ok = m == want;
    if !ok {
        notes.push(format!("{} {name} = {m} != {want}", r.construction));
    }
    ok
}

fn summarize(ok: bool, notes: Vec<String>, on_pass: &str) -> Outcome {
    Outcome::new(ok, if ok { on_pass.to_string() } else { notes.join("; ") })
}

fn criterion_1(reports: &[CertificationReport]) -> Outcome {
    let q3 = &reports[0];
    let mut notes = Vec::new();
    let ok = at_most(q3, "base_h_norm", 1e-12, &mut notes) & at_most(q3, "base_beta", 1e-12, &mut notes);
    summarize(ok, notes, &format!("|H-1| = {:e}, |beta| = {:e}", measured(q3, "base_h_norm"), measured(q3, "base_beta")))
}

fn criterion_2(reports: &[CertificationReport]) -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (r, (k, m)) in reports.iter().zip([(1.0, 2.0), (4.0, 4.0), (13.0, 8.0)]) {
        ok &= equals(r, "isotropy_dim", k, &mut notes);
        ok &= equals(r, "orbit_dim", m, &mut notes);
        for name in ["isotropy_rank_margin", "orbit_rank_margin"] {
            let margin = measured(r, name);
            if !(margin >= 1e3) {
                ok = false;
                notes.push(format!("{} {name} = {margin:e} < 1e3", r.construction));
            }
        }
    }
    summarize(ok, notes, "isotropy 1/4/13, orbit 2/4/8, margins >= 1e3")
}

fn criterion_3(reports: &[CertificationReport]) -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for r in reports {
        ok &= at_most(r, "cartan_compatibility", 1e-9, &mut notes);
    }
    ok &= at_most(&reports[0], "block_formula_w1", 1e-14, &mut notes);
    ok &= at_most(&reports[0], "block_formula_w2", 1e-14, &mut notes);
    summarize(ok, notes, "Phi*(m) in m~ below 1e-9; block formulas (up to a global sign) to 1e-14 on 20 samples")
}

fn criterion_4(reports: &[CertificationReport]) -> Outcome {
    let q3 = &reports[0];
    let mut notes = Vec::new();
    let mut ok = true;
    for y in ["y1", "y2"] {
        ok &= at_most(q3, &format!("{y}_matches_reference"), 1e-15, &mut notes);
        ok &= at_most(q3, &format!("{y}_norm_ratio"), 1e-12, &mut notes);
        ok &= at_most(q3, &format!("{y}_re_perp_im"), 1e-12, &mut notes);
    }
    summarize(ok, notes, "Y1, Y2 entrywise to 1e-15; norm ratio 2 and RE perp IM to 1e-12")
}

fn criterion_5(reports: &[CertificationReport]) -> Outcome {
    let target = 0.5f64.atan();
    let mut notes = Vec::new();
    let mut ok = (target - 0.46364760900081).abs() < 1e-14;
    for r in reports {
        match &r.angle_census {
            Some(c) if c.samples >= 100 && c.max_deviation < 1e-8 => {}
            Some(c) => {
                ok = false;
                notes.push(format!("{} census of {} samples deviates by {:e}", r.construction, c.samples, c.max_deviation));
            }
            None => {
                ok = false;
                notes.push(format!("{} has no angle census", r.construction));
            }
        }
    }
    let worst = reports.iter().filter_map(|r| r.angle_census.as_ref()).map(|c| c.max_deviation).fold(0.0, f64::max);
    summarize(ok, notes, &format!("max |phi - arctan(1/2)| = {worst:e} over >= 100 samples per orbit"))
}

fn criterion_6(reports: &[CertificationReport]) -> Outcome {
    let r = &reports[2];
    let mut notes = Vec::new();
    let ok = equals(r, "kappa_rank", 6.0, &mut notes)
        & equals(r, "v1_dim", 14.0, &mut notes)
        & at_most(r, "kappa_j_equivariance", 1e-12, &mut notes)
        & at_most(r, "kappa_sp3_equivariance", 1e-10, &mut notes)
        & at_most(r, "spanning_vectors_in_kernel", 1e-12, &mut notes)
        & equals(r, "spanning_vectors_h_rank", 14.0, &mut notes);
    summarize(ok, notes, "rank 6, kernel 14, J and Sp(3) equivariant, seven vectors H-span the kernel")
}

fn criterion_7(reports: &[CertificationReport]) -> Outcome {
    let r = &reports[2];
    let mut notes = Vec::new();
    let ok = equals(r, "su3_vc_dim", 6.0, &mut notes)
        & at_most(r, "su3_intertwiner_condition", 1e6, &mut notes)
        & equals(r, "so3_components_1_5", 0.0, &mut notes)
        & at_most(r, "so3_intertwiner_condition", 1e6, &mut notes);
    summarize(
        ok,
        notes,
        &format!(
            "V_C dim 6, SO(3) split 1+5, condition numbers {:.3} and {:.3}",
            measured(r, "su3_intertwiner_condition"),
            measured(r, "so3_intertwiner_condition")
        ),
    )
}

fn criterion_8(reports: &[CertificationReport], config: &CertifyConfig) -> Outcome {
    let mut notes = Vec::new();
    let mut ok = config.directions >= 10 && config.samples >= 100;
    for r in reports {
        ok &= at_most(r, "geodesic_identity", 1e-8, &mut notes);
    }
    let worst = reports.iter().map(|r| measured(r, "geodesic_identity")).fold(0.0, f64::max);
    summarize(ok, notes, &format!("{} directions x {} grid points, worst {worst:e}", config.directions, config.samples))
}

fn run_cli(args: &[&str]) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args);
    for (key, _) in std::env::vars().filter(|(k, _)| k.starts_with("SKEWGEO_")) {
        cmd.env_remove(key);
    }
    cmd.output().expect("skewgeo runs")
}

fn failed_checks(out: &Output) -> Vec<String> {
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    v["checks"]
        .as_array()
        .map(|cs| cs.iter().filter(|c| c["pass"] == false).filter_map(|c| c["name"].as_str().map(String::from)).collect())
        .unwrap_or_default()
}

fn criterion_9() -> Outcome {
    // Criterion under test, perturbation, constructions, checks that must fail.
    let cases: [(u8, &str, &[&str], &[&str]); 4] = [
        (2, "base-point", &["q3-sphere", "g2c6-cp2", "g2h7-hp2"], &["isotropy_dim", "orbit_dim"]),
        (3, "isotropy-contamination", &["q3-sphere", "g2c6-cp2", "g2h7-hp2"], &["cartan_compatibility"]),
        (4, "base-point", &["q3-sphere"], &["y1_matches_reference", "y2_matches_reference"]),
        (5, "embedding", &["q3-sphere", "g2c6-cp2", "g2h7-hp2"], &["angle_census_deviation"]),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (criterion, kind, ids, must_fail) in cases {
        for id in ids {
            let out = run_cli(&[
                "certify",
                id,
                "--format",
                "json",
                "--samples",
                "20",
                "--directions",
                "2",
                "--perturb",
                kind,
                "--perturb-size",
                "1e-3",
            ]);
            let failed = failed_checks(&out);
            if out.status.code() != Some(1) {
                ok = false;
                notes.push(format!("criterion {criterion}: {id} under {kind} exited {:?}", out.status.code()));
            }
            for name in must_fail.iter().filter(|n| !failed.iter().any(|f| f == *n)) {
                ok = false;
                notes.push(format!("criterion {criterion}: {id} under {kind} still passes {name}"));
            }
        }
    }
    summarize(ok, notes, "criteria 2-5 each fail with exit 1 under a 1e-3 perturbation")
}

fn criterion_10() -> Outcome {
    let args = ["certify", "all", "--format", "json", "--seed", "7"];
    let (a, b) = (run_cli(&args), run_cli(&args));
    let ok = a.status.success() && b.status.success() && !a.stdout.is_empty() && a.stdout == b.stdout;
    Outcome::new(ok, format!("two runs, {} bytes each, identical: {}", a.stdout.len(), a.stdout == b.stdout))
}

fn main() {
    let config = CertifyConfig::default();
    let reports = run_many(&ConstructionId::ALL, &config);
    let results = [
        ("base point on the quadric", criterion_1(&reports)),
        ("isotropy and orbit dimensions", criterion_2(&reports)),
        ("Cartan compatibility", criterion_3(&reports)),
        ("tangent vectors Y1, Y2", criterion_4(&reports)),
        ("characteristic angle", criterion_5(&reports)),
        ("exterior cube", criterion_6(&reports)),
        ("branching", criterion_7(&reports)),
        ("geodesic identity", criterion_8(&reports, &config)),
        ("negative controls", criterion_9()),
        ("determinism", criterion_10()),
    ];
    let mut failures = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        println!("[{}] {:>2}. {name}: {}", if outcome.pass { "PASS" } else { "FAIL" }, i + 1, outcome.detail);
        failures += usize::from(!outcome.pass);
    }
    println!("acceptance: {}/{} criteria pass", results.len() - failures, results.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
