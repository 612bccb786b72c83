use std::process::{Command, Output};

use octopoly_cli::{cmd_lmr, cmd_render, cmd_roots, LmrAction, Mode, RenderArgs};
use proptest::prelude::*;
use serde_json::Value;

fn octopoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octopoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn companion_of_worked_example() {
    let out = octopoly(&["--mode", "exact", "--expr", "x^2 + ix - ij + 1", "companion"]);
    let v = stdout_json(&out);
    assert_eq!(v["coeffs"], serde_json::json!(["2", "0", "3", "0", "1"]));
}

#[test]
fn companion_from_file() {
    let dir = std::env::temp_dir().join(format!("octopoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f.txt");
    std::fs::write(&path, "# worked example\nparams: -1, -1, -1\nx^2 + i x\n  - ij + 1\n").unwrap();
    let out = octopoly(&["--mode", "exact", "companion", path.to_str().unwrap()]);
    assert_eq!(stdout_json(&out)["coeffs"], serde_json::json!(["2", "0", "3", "0", "1"]));
}

#[test]
fn exact_roots() {
    let out = octopoly(&["--mode", "exact", "--expr", "x^2 + ix - ij + 1", "roots"]);
    let v = stdout_json(&out);
    let texts: Vec<&str> = v["isolated"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["text"].as_str().unwrap())
        .collect();
    assert_eq!(texts, ["j", "-i + j"]);
}

#[test]
fn rmr_membership_and_witness() {
    let out = octopoly(&["--mode", "exact", "--expr", "ix + j", "rmr", "--element=-k"]);
    let v = stdout_json(&out);
    assert_eq!(v["contains"], Value::Bool(true));
    assert!(v["witness"].is_array());
    let out = octopoly(&["--mode", "exact", "--expr", "ix + j", "rmr", "--element", "1 + i"]);
    assert_eq!(stdout_json(&out)["contains"], Value::Bool(false));
}

#[test]
fn lmr_checkpoints() {
    for point in ["j", "-j", "l"] {
        let out = octopoly(&["--mode", "exact", "--expr", "x^2 + ix - ij + 1", "lmr", "contains", "--", point]);
        assert_eq!(stdout_json(&out)["contains"], Value::Bool(true), "{point}");
    }
    let out = octopoly(&["--mode", "exact", "--expr", "x^2 + ix - ij + 1", "lmr", "contains", "i"]);
    assert_eq!(stdout_json(&out)["contains"], Value::Bool(false));
}

#[test]
fn lmr_sample_is_seeded() {
    let run = |seed: &str| octopoly(&["--expr", "x^2 + ix - ij + 1", "lmr", "sample", "5", seed]).stdout;
    assert_eq!(run("7"), run("7"));
    assert_ne!(run("7"), run("8"));
    let v: Value = serde_json::from_slice(&run("7")).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);
}

#[test]
fn classify_ambivalent_example() {
    let out = octopoly(&["--expr", "x^2 + ix - 1/2 i - 1/4", "classify", "--alpha=-1/2 i"]);
    let v = stdout_json(&out);
    assert_eq!(v["kind"], "fixed");
    assert_eq!(v["report"]["verdict"], "ambivalent");
}

#[test]
fn classify_pseudo_periodic_point() {
    let out = octopoly(&["--expr", "x^2 - 1", "classify", "--alpha", "0"]);
    let v = stdout_json(&out);
    assert_eq!(v["kind"], "pseudo-periodic");
    assert_eq!(v["report"]["verdict"], "attracting");
}

#[test]
fn orbit_reports_period_two() {
    let out = octopoly(&["--expr", "x^2 - 1", "orbit", "--start", "0"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("step,c0,c1,c2,c3,c4,c5,c6,c7,abs\n"));
    assert!(text.trim_end().ends_with("# escaped=false period=2"), "{text}");
}

#[test]
fn render_writes_pgm() {
    let dir = std::env::temp_dir().join(format!("octopoly-render-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("disk.pgm");
    let out = octopoly(&[
        "--expr", "x^2", "render", "--width", "32", "--height", "16", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let bytes = std::fs::read(&path).unwrap();
    let header = b"P5\n32 16\n255\n";
    assert!(bytes.starts_with(header));
    assert_eq!(bytes.len(), header.len() + 32 * 16);
}

#[test]
fn selftest_passes() {
    let out = octopoly(&["selftest"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().starts_with("id"));
    assert!(text.contains(" 0 failed"));
}

#[test]
fn exit_codes() {
    let parse = octopoly(&["--expr", "x^2 + + 1", "roots"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("line 1, column 7"));

    let domain = octopoly(&["--expr", "x^2 - 1", "classify", "--alpha", "0.3"]);
    assert_eq!(domain.status.code(), Some(3));

    let limit = octopoly(&["--expr", "x^2", "render", "--width", "100000", "--height", "100000"]);
    assert_eq!(limit.status.code(), Some(4));

    let missing = octopoly(&["roots", "/nonexistent/octopoly-input"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn eps_flag_is_validated() {
    let out = octopoly(&["--eps=0", "--expr", "x", "roots"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn library_commands_match_binary() {
    let lib = cmd_roots("x^2 + ix - ij + 1", Mode::Exact).unwrap();
    let bin = octopoly(&["--mode", "exact", "--expr", "x^2 + ix - ij + 1", "roots"]);
    assert_eq!(lib.as_bytes(), &bin.stdout[..]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn render_is_deterministic(c0 in -1.0f64..0.5, c1 in -0.5f64..0.5, w in 4usize..24, h in 4usize..24) {
        let input = format!("x^2 {c0:+} {c1:+} i");
        let args = RenderArgs { width: w, height: h, max_iter: 20, ..RenderArgs::default() };
        prop_assert_eq!(cmd_render(&input, &args).unwrap(), cmd_render(&input, &args).unwrap());
    }

    #[test]
    fn lmr_samples_lie_in_their_class(seed in any::<u64>()) {
        let out = cmd_lmr(
            "x^2 + ix - ij + 1",
            Mode::Real,
            &LmrAction::Sample { count: 3, seed },
        ).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        for (k, p) in v.as_array().unwrap().iter().enumerate() {
            let c: Vec<f64> = p.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
            let norm: f64 = c.iter().map(|x| x * x).sum();
            // first three samples come from the class N = 1, the rest from N = 2
            let want = if k < 3 { 1.0 } else { 2.0 };
            prop_assert!(c[0].abs() < 1e-9 && (norm - want).abs() < 1e-9, "{:?}", c);
        }
    }
}
