//! End-to-end runs of the binary: exit-code protocol, round trips, JSON
//! mirrors.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_tietze")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("TIETZE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).expect("write test file");
    path
}

fn fixtures_file(dir: &Path) -> PathBuf {
    let path = dir.join("fix.pres");
    let out = run(&["fixtures", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    path
}

#[test]
fn equiv_words_proved_exits_zero_with_a_derivation() {
    let dir = tempfile::tempdir().unwrap();
    let fix = fixtures_file(dir.path());
    let out = run(&[
        "equiv-words",
        fix.to_str().unwrap(),
        "a a b",
        "a",
        "--name",
        "int",
        "--budget",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("derivation proof"), "{text}");
    assert!(text.contains("step a | a b -> 1 | 1 fwd"), "{text}");
    // The budget header names the explicit budget and the defaults.
    assert!(text.contains("budget=1000"), "{text}");
    assert!(text.contains("max-len=12 (default)"), "{text}");
}

#[test]
fn equiv_words_refuted_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "free.pres",
        "presentation free\ngens a b\nend\n",
    );
    let out = run(&[
        "equiv-words",
        file.to_str().unwrap(),
        "a b",
        "b a",
        "--budget",
        "200",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("refutation witness"));
}

#[test]
fn equiv_words_unknown_exits_two_naming_the_dimension() {
    let dir = tempfile::tempdir().unwrap();
    // Commutative pair out of search reach under a tiny budget, with
    // refutation disabled so nothing is definitive.
    let file = write(
        dir.path(),
        "c.pres",
        "presentation c\ngens a b\nrel a b -> b a\nend\n",
    );
    let out = run(&[
        "equiv-words",
        file.to_str().unwrap(),
        "a a a b",
        "b a a a",
        "--budget",
        "1",
        "--max-size",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("exhausted max-expansions"));
}

#[test]
fn check_tfib_reports_the_missing_surjectivity() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "incl.morph",
        "presentation small\ngens a\nreflexive\nend\n\
         presentation big\ngens a b\nrel b -> b b\nrel 1 -> b b\nreflexive\nend\n\
         morphism incl\nfrom small\nto big\nmap a -> a\nend\n",
    );
    let out = run(&["check", "tfib", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not surjective on generators"));
    // The same inclusion is a pseudo-fibration and a weak equivalence.
    let out = run(&["check", "pfib", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["check", "weq", file.to_str().unwrap(), "--budget", "4000"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("dict b -> 1"));
}

#[test]
fn apply_prints_the_intermediate_presentations() {
    let dir = tempfile::tempdir().unwrap();
    let fix = fixtures_file(dir.path());
    let out = run(&["apply", fix.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // Five intermediates: the start plus one per step.
    for i in 0..5 {
        assert!(text.contains(&format!("presentation step{i}")), "{text}");
    }
    // The forward phase ends with all four relations present.
    let last = text.split("presentation step4").nth(1).expect("last block");
    for rel in ["rel 1 -> b", "rel b -> b b", "rel 1 -> b b", "rel b b -> b"] {
        assert!(last.contains(rel), "{last}");
    }
}

#[test]
fn usage_and_parse_errors_use_reserved_codes() {
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(64));

    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "bad.pres", "presentation p\ngens a\nrel a ->\nend\n");
    let out = run(&["show", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(65));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("bad.pres:3:"), "{err}");
}

#[test]
fn show_round_trips_canonical_files_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let fix = fixtures_file(dir.path());
    let first = stdout(&run(&["show", fix.to_str().unwrap()]));
    let second_file = write(dir.path(), "again.pres", &first);
    let second = stdout(&run(&["show", second_file.to_str().unwrap()]));
    assert_eq!(first, second);
}

#[test]
fn kb_output_reloads_and_reports_counts() {
    let dir = tempfile::tempdir().unwrap();
    let fix = fixtures_file(dir.path());
    let kb_out = dir.path().join("kb.out");
    let out = run(&[
        "kb",
        fix.to_str().unwrap(),
        "natxnat",
        "--out",
        kb_out.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let reload = run(&["show", kb_out.to_str().unwrap()]);
    assert_eq!(reload.status.code(), Some(0));

    let out = run(&["count", fix.to_str().unwrap(), "3", "--name", "natxnat"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("count = 10"));

    let out = run(&["nf", fix.to_str().unwrap(), "b a b a", "--name", "natxnat"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("nf = a a b b"));
}

#[test]
fn separate_finds_a_certificate_in_the_truncated_chain() {
    let dir = tempfile::tempdir().unwrap();
    let fix = fixtures_file(dir.path());
    let out = run(&[
        "separate",
        fix.to_str().unwrap(),
        "a b0",
        "b0 a",
        "--name",
        "chain3-cut",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("refutation witness"));
    // Congruent words have no certificate: unknown, not negative.
    let out = run(&[
        "separate",
        fix.to_str().unwrap(),
        "a b",
        "b a",
        "--name",
        "natxnat",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn user_monoid_tables_extend_the_separation_library() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "task.pres",
        "presentation p\ngens a\nend\n\
         monoid z3 size 3\nunit 0\nmul 0: 0 1 2\nmul 1: 1 2 0\nmul 2: 2 0 1\nend\n",
    );
    // a^3 ~ 1 is false in the free monoid; Z/3 separates while nothing of
    // size ≤ 2 in a run capped there would without the user table.
    let out = run(&[
        "separate",
        file.to_str().unwrap(),
        "a a a",
        "1",
        "--name",
        "p",
        "--max-size",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_mirror_carries_the_same_data() {
    let dir = tempfile::tempdir().unwrap();
    let fix = fixtures_file(dir.path());
    let text = stdout(&run(&["show", fix.to_str().unwrap()]));
    let json_text = stdout(&run(&["show", fix.to_str().unwrap(), "--json"]));
    let doc: serde_json::Value = serde_json::from_str(&json_text).expect("valid json");
    let blocks = doc["blocks"].as_array().expect("blocks array");
    // Every presentation block in the text output has a JSON mirror with
    // the same generators and relation count.
    for chunk in text.split("presentation ").skip(1) {
        let name = chunk.lines().next().unwrap().trim();
        let gens_line = chunk
            .lines()
            .find(|l| l.starts_with("gens"))
            .unwrap_or("gens");
        let gens: Vec<&str> = gens_line.split_whitespace().skip(1).collect();
        let rel_count = chunk
            .lines()
            .take_while(|l| *l != "end")
            .filter(|l| l.starts_with("rel "))
            .count();
        let mirror = blocks
            .iter()
            .find(|b| b["kind"] == "presentation" && b["name"] == name)
            .unwrap_or_else(|| panic!("no JSON mirror for {name}"));
        let jgens: Vec<String> = mirror["gens"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap().to_string())
            .collect();
        assert_eq!(jgens, gens, "generators of {name}");
        assert_eq!(
            mirror["rels"].as_array().unwrap().len(),
            rel_count,
            "relations of {name}"
        );
    }
}

#[test]
fn cospan_and_equiv_run_on_the_fixture_pair() {
    let dir = tempfile::tempdir().unwrap();
    let fix = fixtures_file(dir.path());
    let out = run(&[
        "cospan",
        fix.to_str().unwrap(),
        "npair-small",
        "npair-big",
        "--budget",
        "4000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("presentation apex"), "{text}");

    let out = run(&[
        "equiv",
        fix.to_str().unwrap(),
        "npair-small",
        "npair-big",
        "--budget",
        "60000",
        "--max-len",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("zigzag from npair-small to npair-big"), "{text}");
}

#[test]
fn env_var_supplies_the_default_budget() {
    let dir = tempfile::tempdir().unwrap();
    let fix = fixtures_file(dir.path());
    let out = Command::new(bin())
        .args(["equiv-words", fix.to_str().unwrap(), "a", "a", "--name", "nat"])
        .env("TIETZE_BUDGET", "77")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("budget=77"));
}

#[test]
fn identical_inputs_give_byte_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let fix = fixtures_file(dir.path());
    for args in [
        vec!["kb", fix.to_str().unwrap(), "int"],
        vec!["cospan", fix.to_str().unwrap(), "npair-small", "npair-big", "--budget", "4000"],
        vec!["replace", fix.to_str().unwrap(), "nat", "--words", "1", "--close", "2"],
        vec!["kenbrown", fix.to_str().unwrap(), "--with", fix.to_str().unwrap()],
    ] {
        // kenbrown needs a morphism; skip argument sets that fail usage
        // checks identically on both runs.
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), b.status.code(), "{args:?}");
        assert_eq!(stdout(&a), stdout(&b), "{args:?}");
    }
}

#[test]
fn factor_output_round_trips_with_resolved_pullback_names() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "incl.morph",
        "presentation small\ngens a\nreflexive\nend\n\
         presentation big\ngens a b\nrel b -> b b\nrel 1 -> b b\nreflexive\nend\n\
         morphism incl\nfrom small\nto big\nmap a -> a\nend\n",
    );
    let fact = dir.path().join("fact.out");
    let out = run(&["factor", file.to_str().unwrap(), "--out", fact.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // The middle object's pullback relation set names the emitted
    // fibration, and the whole output reloads and re-renders stably.
    let first = stdout(&run(&["show", fact.to_str().unwrap()]));
    assert!(first.contains("rel* pullback p"), "{first}");
    let again = write(dir.path(), "fact2.out", &first);
    let second = stdout(&run(&["show", again.to_str().unwrap()]));
    assert_eq!(first, second);
}

#[test]
fn json_mirror_matches_text_for_random_presentations() {
    // A deterministic generator (no dependencies): 100 random
    // presentations, each rendered as text and as JSON, compared field by
    // field.
    let mut state = 0x2545f4914f6cdd1du64;
    let mut next = move |bound: usize| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state as usize) % bound.max(1)
    };
    let dir = tempfile::tempdir().unwrap();
    let mut text_file = String::new();
    for i in 0..100 {
        let gens = 1 + next(3);
        let names: Vec<String> = (0..gens).map(|g| format!("g{g}")).collect();
        let word = |next: &mut dyn FnMut(usize) -> usize| -> String {
            let len = next(4);
            if len == 0 {
                "1".to_string()
            } else {
                (0..len)
                    .map(|_| format!("g{}", next(gens)))
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        };
        text_file.push_str(&format!("presentation r{i}\ngens {}\n", names.join(" ")));
        for _ in 0..next(4) {
            let (l, r) = (word(&mut next), word(&mut next));
            text_file.push_str(&format!("rel {l} -> {r}\n"));
        }
        if next(2) == 1 {
            text_file.push_str("reflexive\n");
        }
        text_file.push_str("end\n");
    }
    let file = write(dir.path(), "random.pres", &text_file);
    let text = stdout(&run(&["show", file.to_str().unwrap()]));
    let json_text = stdout(&run(&["show", file.to_str().unwrap(), "--json"]));
    let doc: serde_json::Value = serde_json::from_str(&json_text).expect("valid json");
    let blocks = doc["blocks"].as_array().expect("blocks");
    let mut compared = 0usize;
    for chunk in text.split("presentation ").skip(1) {
        let mut lines = chunk.lines();
        let name = lines.next().unwrap().trim().to_string();
        let mirror = blocks
            .iter()
            .find(|b| b["kind"] == "presentation" && b["name"] == name.as_str())
            .unwrap_or_else(|| panic!("no mirror for {name}"));
        let mut text_rels = Vec::new();
        let mut text_reflexive = false;
        let mut text_gens: Vec<String> = Vec::new();
        for line in lines.take_while(|l| *l != "end") {
            if let Some(g) = line.strip_prefix("gens") {
                text_gens = g.split_whitespace().map(str::to_string).collect();
            } else if let Some(rel) = line.strip_prefix("rel ") {
                text_rels.push(rel.to_string());
            } else if line == "reflexive" {
                text_reflexive = true;
            }
        }
        let jgens: Vec<String> = mirror["gens"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap().to_string())
            .collect();
        assert_eq!(jgens, text_gens, "{name}: generators");
        assert_eq!(
            mirror["reflexive"].as_bool().unwrap(),
            text_reflexive,
            "{name}: reflexivity"
        );
        let jrels: Vec<String> = mirror["rels"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| {
                let side = |key: &str| {
                    let w: Vec<String> = r[key]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|v| v.as_str().unwrap().to_string())
                        .collect();
                    if w.is_empty() {
                        "1".to_string()
                    } else {
                        w.join(" ")
                    }
                };
                format!("{} -> {}", side("lhs"), side("rhs"))
            })
            .collect();
        assert_eq!(jrels, text_rels, "{name}: relations");
        compared += 1;
    }
    assert_eq!(compared, 100);
}

#[test]
fn show_preserves_derivation_rules_and_refutation_blocks() {
    let dir = tempfile::tempdir().unwrap();
    let fix = fixtures_file(dir.path());
    // A proof output carries a standalone derivation block.
    let proof = dir.path().join("proof.out");
    let out = run(&[
        "equiv-words", fix.to_str().unwrap(), "a a b", "a",
        "--name", "int", "--budget", "500", "--out", proof.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let shown = stdout(&run(&["show", proof.to_str().unwrap()]));
    assert!(shown.contains("derivation proof"), "{shown}");
    assert!(shown.contains("step a | a b -> 1 | 1 fwd"), "{shown}");
    // Stability: a second round trip is byte-identical.
    let again = write(dir.path(), "proof2.out", &shown);
    assert_eq!(stdout(&run(&["show", again.to_str().unwrap()])), shown);

    // A completion output carries a rules block, and a separation output a
    // refutation block; both survive.
    let kb = dir.path().join("kb.out");
    run(&["kb", fix.to_str().unwrap(), "natxnat", "--out", kb.to_str().unwrap()]);
    let shown = stdout(&run(&["show", kb.to_str().unwrap()]));
    assert!(shown.contains("rules for natxnat"), "{shown}");
    assert!(shown.contains("rule b a -> a b"), "{shown}");

    let sep = dir.path().join("sep.out");
    run(&[
        "separate", fix.to_str().unwrap(), "a b0", "b0 a",
        "--name", "chain3-cut", "--out", sep.to_str().unwrap(),
    ]);
    let shown = stdout(&run(&["show", sep.to_str().unwrap()]));
    assert!(shown.contains("refutation witness"), "{shown}");
    assert!(shown.contains("assign a ->"), "{shown}");
}
