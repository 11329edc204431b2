use std::fs;
use std::path::PathBuf;

use clap::Parser;
use oml::cli::{run, Cli, EXIT_FORMAT, EXIT_MISMATCH, EXIT_OK, EXIT_SPEC};
use oml::format::{parse_line, to_json};
use oml_core::mmp::{parse_mmp, serialize_mmp};
use oml_core::MmpDiagram;
use proptest::prelude::*;
use serde_json::Value;
use tempfile::TempDir;

const PENTAGON: &str = "123,345,567,789,9A1.";

struct Output {
    code: u8,
    out: String,
    err: String,
}

fn oml(args: &[&str]) -> Output {
    let cli = Cli::try_parse_from(std::iter::once("oml").chain(args.iter().copied())).expect("arguments parse");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(cli, &mut out, &mut err).unwrap();
    Output {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn input(dir: &TempDir, name: &str, text: &str) -> String {
    let path: PathBuf = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn json_lines(s: &str) -> Vec<Value> {
    s.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn validate_reports_each_line() {
    let dir = TempDir::new().unwrap();
    let f = input(&dir, "in.mmp", &format!("# comment\n{PENTAGON}\n\n123,345,567,781.\n"));
    let r = oml(&["validate", &f]);
    assert_eq!(r.code, EXIT_MISMATCH);
    let lines = json_lines(&r.out);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["line"], 2);
    assert_eq!(lines[0]["greechie_admissible"], true);
    assert_eq!(lines[0]["girth"], "5");
    assert_eq!(lines[1]["line"], 4);
    assert_eq!(lines[1]["greechie_admissible"], false);
    assert_eq!(lines[1]["mmp"], true);

    let r = oml(&["validate", "--mmp", &f]);
    assert_eq!(r.code, EXIT_OK);

    let bad = input(&dir, "bad.mmp", "123,34\n");
    let r = oml(&["validate", &bad]);
    assert_eq!(r.code, EXIT_FORMAT);
    assert!(json_lines(&r.out)[0]["error"].as_str().unwrap().contains('.'));

    let r = oml(&["validate", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(r.code, EXIT_FORMAT);
    assert!(r.err.starts_with("oml: "));
}

#[test]
fn states_of_a_single_block() {
    let dir = TempDir::new().unwrap();
    let f = input(&dir, "b.mmp", "123.\n{\"atoms\":3,\"blocks\":[[0,1,2]]}\n");
    let r = oml(&["states", "--strong", "--zero-one", "--classical", &f]);
    assert_eq!(r.code, EXIT_OK);
    let lines = json_lines(&r.out);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], {
        let mut second = lines[1].clone();
        second["line"] = 1.into();
        second
    });
    assert_eq!(lines[0]["classification"], "MoreThanOne");
    assert_eq!(lines[0]["strong"]["admits"], true);
    assert_eq!(lines[0]["strong_01"]["admits"], true);
    assert_eq!(lines[0]["classically_strong"], false);
    for w in lines[0]["witnesses"].as_array().unwrap() {
        assert_eq!(w.as_array().unwrap().len(), 3);
    }
}

#[test]
fn states_of_the_pentagon() {
    let dir = TempDir::new().unwrap();
    let f = input(&dir, "p.mmp", &format!("{PENTAGON}\n"));
    let r = oml(&["states", "--strong", &f]);
    let line = &json_lines(&r.out)[0];
    assert_eq!(line["classification"], "MoreThanOne");
    assert!(line.get("strong").is_some());
}

#[test]
fn generate_output_is_worker_independent() {
    let base = ["generate", "--atoms", "13", "--blocks", "6", "--allow-disconnected"];
    let one = oml(&[&base[..], &["--workers", "1"]].concat());
    let four = oml(&[&base[..], &["--workers", "4", "--split-depth", "2"]].concat());
    let eight = oml(&[&base[..], &["--workers", "8", "--split-depth", "5"]].concat());
    assert_eq!(one.code, EXIT_OK);
    assert!(!one.out.is_empty());
    assert_eq!(one.out, four.out);
    assert_eq!(one.out, eight.out);
    for l in one.out.lines() {
        parse_mmp(l).unwrap();
    }
    let count = oml(&[&base[..], &["--count-only"]].concat());
    assert_eq!(count.out.trim(), one.out.lines().count().to_string());
}

#[test]
fn generate_with_oracle_and_checkpoint() {
    let dir = TempDir::new().unwrap();
    let cp = dir.path().join("cp.json");
    let r = oml(&[
        "generate",
        "--atoms",
        "9",
        "--blocks",
        "4",
        "--oracle",
        "--checkpoint",
        cp.to_str().unwrap(),
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.err.contains("oracle agrees"));
    assert!(cp.exists());
    assert!(!r.out.is_empty());
    let again = oml(&[
        "generate",
        "--atoms",
        "9",
        "--blocks",
        "4",
        "--stats",
        "--checkpoint",
        cp.to_str().unwrap(),
    ]);
    assert_eq!(again.out, r.out);
    assert!(again.err.contains("resumed_tasks"));
}

#[test]
fn generate_rejects_bad_specs() {
    assert_eq!(
        oml(&["generate", "--atoms", "9", "--blocks", "3", "--min-girth", "4"]).code,
        EXIT_SPEC
    );
    assert_eq!(
        oml(&["generate", "--atoms", "9", "--blocks", "3", "--block-size", "2"]).code,
        EXIT_SPEC
    );
    assert_eq!(
        oml(&["generate", "--atoms", "10", "--blocks", "5", "--oracle"]).code,
        EXIT_SPEC
    );
}

#[test]
fn canon_ignores_labels() {
    let dir = TempDir::new().unwrap();
    let f = input(&dir, "c.mmp", &format!("{PENTAGON}\n2A3,345,567,789,912.\n"));
    let r = oml(&["canon", &f]);
    assert_eq!(r.code, EXIT_OK);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], lines[1]);
    assert!(lines[0].ends_with(" 10"));
}

#[test]
fn render_and_poset() {
    let dir = TempDir::new().unwrap();
    let f = input(&dir, "p.mmp", &format!("{PENTAGON}\n"));
    let a = oml(&["render", &f]);
    assert_eq!(a.code, EXIT_OK);
    assert!(a.out.starts_with("graph greechie {"));
    assert_eq!(a.out, oml(&["render", &f]).out);

    let p = oml(&["poset", &f]);
    let v: Value = serde_json::from_str(p.out.trim()).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 22);
    assert_eq!(v["ortho"].as_array().unwrap().len(), 22);

    let square = input(&dir, "s.mmp", "123,345,567,781.\n");
    assert_eq!(oml(&["render", &square]).code, EXIT_FORMAT);
}

#[test]
fn corpus_commands() {
    let list = oml(&["corpus", "--list"]);
    assert_eq!(list.out.lines().count(), 18);
    let show = oml(&["corpus", "--show", "36-36"]);
    assert_eq!(show.code, EXIT_OK);
    assert!(parse_mmp(show.out.trim()).is_ok());
    assert_eq!(oml(&["corpus", "--show", "99-99"]).code, EXIT_FORMAT);
    let check = oml(&["corpus", "--check"]);
    assert_eq!(check.code, EXIT_OK, "{}", check.out);
    assert!(check.out.lines().all(|l| l.starts_with("ok")));
}

fn any_diagram() -> impl Strategy<Value = MmpDiagram> {
    (1usize..=140).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 1..=6), 1..=10)
            .prop_map(move |bs| MmpDiagram::from_indices(n, bs).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn json_interchange_round_trip(d in any_diagram()) {
        prop_assert_eq!(parse_line(&to_json(&d)).unwrap(), d.clone());
        if let Ok(text) = serialize_mmp(&d) {
            prop_assert!(d.atom_count() <= 90);
            let back = parse_line(&text).unwrap();
            prop_assert_eq!(back.blocks(), d.blocks());
        } else {
            prop_assert!(d.atom_count() > 90);
        }
    }
}
