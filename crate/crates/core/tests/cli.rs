use std::path::PathBuf;
use std::process::Command;

use filebasis::construction::Presentation;
use filebasis::diagram::DiagramBuilder;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_filebasis");

fn run(args: &[&str]) -> (i32, String) {
    run_env(args, None)
}

fn run_env(args: &[&str], mem: Option<&str>) -> (i32, String) {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("FILEBASIS_MAX_MEM");
    if let Some(m) = mem {
        cmd.env("FILEBASIS_MAX_MEM", m);
    }
    let out = cmd.output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("filebasis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn toy_presentation_file() -> PathBuf {
    let (code, out) = run(&["gen", "--n", "3", "--lambda1", "1/15", "--N", "2", "--count", "1"]);
    assert_eq!(code, 0);
    let path = scratch("toy.json");
    std::fs::write(&path, out).unwrap();
    path
}

#[test]
fn free_cancellation_is_equal() {
    let (code, out) = run(&["eq", "x1 x1^-1", ""]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["value"], "yes");
    let (code, _) = run(&["eq", "x1", "x2"]);
    assert_eq!(code, 1);
}

#[test]
fn generated_presentation_feeds_every_query() {
    let p = toy_presentation_file();
    let p = p.to_str().unwrap();
    let text = std::fs::read_to_string(p).unwrap();
    assert_eq!(json(&text)["relators"][0]["r"], "x1^5 x2^5 x3^5 x1^-1 x2^-1");
    assert_eq!(Presentation::from_json(&text).unwrap().relators.len(), 1);

    let (code, out) = run(&["eq", "x2 x1", "x1^5 x2^5 x3^5", "--presentation", p, "--witness"]);
    assert_eq!(code, 0, "{out}");
    assert!(json(&out)["witness"].is_object());

    let (code, out) = run(&["nf", "x2 x1", "--presentation", p]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(json(&out)["normal_form"], "x1^5 x2^5 x3^5");

    let (code, out) = run(&["conj", "x1 x2", "x2 x1", "--presentation", p]);
    assert_eq!(code, 0, "{out}");
    let (code, _) = run(&["conj", "x1", "x2", "--presentation", p]);
    assert_eq!(code, 1);
}

#[test]
fn outputs_are_byte_deterministic() {
    let args = ["--format", "text", "nf", "x2 x1 x3", "--presentation"];
    let p = toy_presentation_file();
    let mut a = args.to_vec();
    a.push(p.to_str().unwrap());
    assert_eq!(run(&a), run(&a));
}

#[test]
fn main_lemma_on_a_theorem_scale_face() {
    let (code, out) = run(&["gen", "--n", "63", "--lambda1", "1/315", "--N", "315", "--count", "1"]);
    assert_eq!(code, 0);
    let pres = scratch("theorem.json");
    std::fs::write(&pres, &out).unwrap();
    let p = Presentation::from_json(&out).unwrap();
    let mut b = DiagramBuilder::point();
    b.attach_face(0, 0, &p.relators[0].r.to_codes());
    let face = scratch("face1.json");
    std::fs::write(&face, b.finish().to_json()).unwrap();

    let args =
        ["check-diagram", face.to_str().unwrap(), "--presentation", pres.to_str().unwrap(), "--condition", "main-lemma"];
    let (code, out) = run(&args);
    assert_eq!(code, 0, "{out}");
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["condition"]["metrics"]["S"], 63 * 631);
    assert_eq!(v["condition"]["metrics"]["Sigma"], 63 * 631 + 2);

    let letters = ["check-diagram", face.to_str().unwrap(), "--presentation", pres.to_str().unwrap()];
    let mut a = letters.to_vec();
    a.extend(["--condition", "letter-budget", "--letters", "1"]);
    let (code, out) = run(&a);
    assert_eq!(code, 0, "{out}");
    assert_eq!(json(&out)["condition"]["count"], 631);
}

#[test]
fn error_exit_codes() {
    assert_eq!(run(&["validate", "--n", "63", "--lambda1", "1/2"]).0, 1);
    assert_eq!(run(&["validate", "--n", "63", "--lambda1", "one/2"]).0, 64);
    assert_eq!(run(&["eq", "x9", "", "--n", "3"]).0, 64);
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"vertices\": 1").unwrap();
    let p = toy_presentation_file();
    let (code, _) = run(&["check-diagram", bad.to_str().unwrap(), "--presentation", p.to_str().unwrap()]);
    assert_eq!(code, 65);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn uncertified_search_reports_budget() {
    let p = toy_presentation_file();
    let p = p.to_str().unwrap();
    let args = ["eq", "x1 x2 x1^-1 x2^-1", "", "--presentation", p];
    let (code, out) = run_env(&args, Some("64K"));
    assert_eq!(code, 2, "{out}");
    assert_eq!(json(&out)["value"], "budget-exceeded");
    assert_eq!(run_env(&args, Some("lots")).0, 64);
}
