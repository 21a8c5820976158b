//! End-to-end runs of the binary: exit-status contract, file round trips,
//! and report determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn sct(args: &[&str], dir: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sct"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &std::path::Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sct-cli-test-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const RET: &str = "\
fcat Ret
obj X
obj Y
mor e : X -> X
mor r : X -> Y
mor i : Y -> X
comp e o e = e
comp r o e = r
comp e o i = i
comp r o i = id:Y
comp i o r = e
";

const INTERVAL: &str = "\
fcat I
obj 0
obj 1
mor b.0.1 : 0 -> 1
";

#[test]
fn nerve_emits_a_parsable_complex_and_round_trips() {
    let dir = tmpdir("nerve");
    write(&dir, "ret.fcat", RET);
    let out = sct(&["nerve", "ret.fcat", "--dim", "2", "--out", "ret.sset"], &dir);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.join("ret.sset")).unwrap();
    assert!(text.contains("simplex i|r dim=2"));
    // Round trip: feeding the file back through a cap-preserving command
    // reproduces it byte for byte.
    let parsed = sct_cli::formats::parse_sset(&text).unwrap();
    assert_eq!(sct_cli::formats::serialize_sset(&parsed), text);
    assert_eq!(parsed.nondeg_counts(), vec![2, 3, 5]);
}

#[test]
fn qcheck_exit_codes_distinguish_pass_and_fail() {
    let dir = tmpdir("qcheck");
    write(&dir, "ret.fcat", RET);
    assert!(sct(&["nerve", "ret.fcat", "--dim", "4", "--out", "n.sset"], &dir)
        .status
        .success());
    let ok = sct(&["qcheck", "n.sset", "--dim", "3"], &dir);
    assert_eq!(ok.status.code(), Some(0));

    // The standard inner horn fails with a witness and exit 1.
    let horn = "\
sset horn
dimcap 3
simplex 0 dim=0
simplex 1 dim=0
simplex 2 dim=0
simplex 01 dim=1
simplex 12 dim=1
face 01.0 = 1 deg=[]
face 01.1 = 0 deg=[]
face 12.0 = 2 deg=[]
face 12.1 = 1 deg=[]
";
    write(&dir, "horn.sset", horn);
    let fail = sct(&["qcheck", "horn.sset", "--dim", "2"], &dir);
    assert_eq!(fail.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&fail.stdout).contains("unfilled"));
}

#[test]
fn usage_and_input_errors_have_their_codes() {
    let dir = tmpdir("errors");
    let usage = sct(&["verify"], &dir);
    assert_eq!(usage.status.code(), Some(2));
    let missing = sct(&["nerve", "absent.fcat"], &dir);
    assert_eq!(missing.status.code(), Some(3));
    let unknown_suite = sct(&["verify", "no-such-suite"], &dir);
    assert_eq!(unknown_suite.status.code(), Some(3));
}

#[test]
fn ltable_tags_forced_cells_and_round_trips() {
    let dir = tmpdir("ltable");
    write(&dir, "i.fcat", INTERVAL);
    let out = sct(&["ltable", "i.fcat", "--out", "t.fcat"], &dir);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.join("t.fcat")).unwrap();
    assert!(text.contains("# forced:"), "forced cells are tagged");
    assert!(text.contains("mor q0.0.1 : 0 -> 1"));
    assert!(text.contains("mor h.0 : -inf -> 0"));
    let parsed = sct_cli::formats::parse_fcat(&text).unwrap();
    assert!(sct_core::fincat::validate_category(&parsed).is_valid());
}

#[test]
fn verify_reports_are_deterministic_without_timings() {
    let dir = tmpdir("determinism");
    let a = sct(&["verify", "lem4", "--no-timings"], &dir);
    let b = sct(&["verify", "lem4", "--no-timings"], &dir);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "byte-identical reports");
}

#[test]
fn seeded_defect_corpus_exits_one() {
    let dir = tmpdir("defect");
    let out = sct(&["verify", "ez", "--corpus", "seeded-defect", "--no-timings"], &dir);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn pure_subcommand_judges_morphism_files() {
    let dir = tmpdir("pure");
    write(&dir, "pt.fcat", "fcat pt\nobj *\n");
    write(&dir, "one.fps", "fps one over pt.fcat\nset * = {x}\n");
    write(&dir, "two.fps", "fps two over pt.fcat\nset * = {x,y}\n");
    write(
        &dir,
        "incl.fpm",
        "fpm incl from one.fps to two.fps\nat * : x -> x\n",
    );
    let ok = sct(
        &["pure", "incl.fpm", "--tests", "one.fps", "two.fps"],
        &dir,
    );
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("pure"));

    write(
        &dir,
        "collapse.fpm",
        "fpm collapse from two.fps to one.fps\nat * : x -> x\nat * : y -> x\n",
    );
    let bad = sct(
        &["pure", "collapse.fpm", "--tests", "one.fps", "two.fps"],
        &dir,
    );
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("not pure"));
}

#[test]
fn sd_and_ex_and_hammock_smoke() {
    let dir = tmpdir("smoke");
    let sd = sct(&["sd", "--n", "2"], &dir);
    assert!(sd.status.success());
    let text = String::from_utf8_lossy(&sd.stdout).to_string();
    let parsed = sct_cli::formats::parse_sset(&text).unwrap();
    assert_eq!(parsed.nondeg_counts(), vec![7, 12, 6]);

    write(&dir, "i.fcat", INTERVAL);
    assert!(sct(&["nerve", "i.fcat", "--dim", "1", "--out", "d1.sset"], &dir)
        .status
        .success());
    let ex = sct(&["ex", "d1.sset", "--iters", "1", "--dim", "1"], &dir);
    assert!(ex.status.success());

    let ham = sct(
        &[
            "hammock", "i.fcat", "--from", "0", "--to", "1", "--max-len", "3",
            "--max-width", "1",
        ],
        &dir,
    );
    assert!(ham.status.success());
    assert!(String::from_utf8_lossy(&ham.stdout).contains("components within bounds"));
}

#[test]
fn glue_and_dinfty_and_dfilt_smoke() {
    let dir = tmpdir("dcat");
    write(&dir, "i.fcat", INTERVAL);
    let glued = sct(&["glue", "i.fcat", "--out", "g.fcat"], &dir);
    assert!(glued.status.success());
    let g = sct_cli::formats::parse_fcat(&std::fs::read_to_string(dir.join("g.fcat")).unwrap())
        .unwrap();
    assert_eq!(g.object_count(), 4);

    let d = sct(&["dinfty", "i.fcat", "--mark", "1", "--dim", "3"], &dir);
    assert!(d.status.success());
    let df = sct(
        &["dfilt", "i.fcat", "--mark", "1", "--stage", "1", "--dim", "3"],
        &dir,
    );
    assert!(df.status.success());
    assert!(String::from_utf8_lossy(&df.stdout).contains("verified as a pushout"));
}

#[test]
fn lcone_matches_ho_table_pipeline() {
    let dir = tmpdir("lcone");
    write(&dir, "pt.fcat", "fcat pt\nobj 0\n");
    let lc = sct(&["lcone", "pt.fcat", "--dim", "4", "--out", "l.sset"], &dir);
    assert!(lc.status.success(), "{}", String::from_utf8_lossy(&lc.stderr));
    let ho = sct(&["ho", "l.sset", "--out", "ho.fcat"], &dir);
    assert!(ho.status.success(), "{}", String::from_utf8_lossy(&ho.stderr));
    let c = sct_cli::formats::parse_fcat(&std::fs::read_to_string(dir.join("ho.fcat")).unwrap())
        .unwrap();
    assert_eq!(c.object_count(), 2);
    assert_eq!(c.morphism_count(), 5);
}
