use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn rxd(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rxd"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    // the process may exit before reading its input
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SUBCOMMANDS: &[&str] = &[
    "decompose",
    "tokenize",
    "extract-mwe",
    "pair-mwe",
    "prune-mwe",
    "augment",
    "stats",
    "bleu",
];

#[test]
fn help_exits_zero_everywhere() {
    assert!(rxd(&["--help"], "").status.success());
    assert!(rxd(&["--version"], "").status.success());
    for sub in SUBCOMMANDS {
        let out = rxd(&[sub, "--help"], "");
        assert!(out.status.success(), "{sub} --help");
        assert!(stdout(&out).contains("Usage"));
    }
}

#[test]
fn decompose_bridge() {
    let out = rxd(
        &["decompose", "--ids", &data("ids_fixture.txt"), "--level", "1"],
        "橋\n",
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "木 喬\n");
    let out = rxd(
        &["decompose", "--ids", &data("ids_fixture.txt"), "--level", "2"],
        "叕\n橋樑\n",
    );
    assert_eq!(stdout(&out), "又 又 又 又\n木 吞 冋 木 㳇 木\n");
}

#[test]
fn usage_errors_exit_one_with_single_line() {
    for args in [
        vec!["frobnicate"],
        vec!["bleu"],
        vec!["tokenize", "--mode", "nonsense"],
        vec!["prune-mwe", "--threshold", "1.5"],
        vec!["decompose"],
    ] {
        let out = rxd(&args, "");
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ids");
    fs::write(&bad, "U+6A4B\t橋\t⿰木\n").unwrap();
    let out = rxd(&["decompose", "--ids", bad.to_str().unwrap()], "橋\n");
    assert_eq!(out.status.code(), Some(2));
    let out = rxd(
        &["decompose", "--ids", bad.to_str().unwrap(), "--skip-malformed"],
        "橋\n",
    );
    assert_eq!(stdout(&out), "橋\n");
    let out = rxd(&["prune-mwe"], "a\tb\tnot-a-number\n");
    assert_eq!(out.status.code(), Some(2));
    let out = rxd(&["decompose", "--ids", "/nonexistent/ids.txt"], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn prune_keeps_high_scoring_pair() {
    let tsv = "高尔夫球 俱乐部\tgolf club\t0.9800\n数据 分析\tdata analysis\t0.8400\n";
    let out = rxd(&["prune-mwe", "--threshold", "0.85"], tsv);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "高尔夫球 俱乐部\tgolf club\t0.9800\n");
    let out = rxd(&["prune-mwe"], tsv);
    assert_eq!(stdout(&out), "高尔夫球 俱乐部\tgolf club\t0.9800\n");
}

#[test]
fn bleu_on_identical_files() {
    let en = data("sample/en.tok");
    let out = rxd(&["bleu", &en, "--refs", &en], "");
    assert!(out.status.success());
    assert!(stdout(&out).contains("BLEU-4=1.0000"));
    let out = rxd(&["bleu", &en, "--refs", &en, "--max-n", "2", "--cased"], "");
    assert_eq!(stdout(&out), "BLEU-1=1.0000 BLEU-2=1.0000 BP=1.0000\n");
}

#[test]
fn bleu_reference_length_mismatch_is_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let (h, r) = (dir.path().join("h"), dir.path().join("r"));
    fs::write(&h, "a b\nc d\n").unwrap();
    fs::write(&r, "a b\n").unwrap();
    let out = rxd(&["bleu", h.to_str().unwrap(), "--refs", r.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tokenize_modes_and_jobs() {
    let ids = data("ids_fixture.txt");
    let input = "橋樑 很 長\n高尔夫球 俱乐部\n";
    let out = rxd(&["tokenize", "--mode", "c"], input);
    assert_eq!(stdout(&out), "▁橋 樑 ▁很 ▁長\n▁高 尔 夫 球 ▁俱 乐 部\n");
    let out = rxd(&["tokenize", "--mode", "c", "--boundary", "sep"], "橋樑 很\n");
    assert_eq!(stdout(&out), "橋 樑 <wb> 很\n");
    let out = rxd(&["tokenize", "--mode", "w+c+r", "--ids", &ids], "橋樑\n");
    assert_eq!(stdout(&out), "橋樑|橋+樑|木+木\n");
    let seq = rxd(&["tokenize", "--mode", "rxd2", "--ids", &ids, "--jobs", "1"], input);
    let par = rxd(&["tokenize", "--mode", "rxd2", "--ids", &ids, "--jobs", "8"], input);
    assert_eq!(seq.stdout, par.stdout);
    let out = rxd(&["tokenize", "--mode", "rxd"], input);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("rxd.conf");
    fs::write(&conf, format!("ids = {}\nlevel = 2\n", data("ids_fixture.txt"))).unwrap();
    let c = conf.to_str().unwrap();
    assert_eq!(stdout(&rxd(&["--config", c, "decompose"], "叕\n")), "又 又 又 又\n");
    assert_eq!(
        stdout(&rxd(&["decompose", "--config", c, "--level", "1"], "叕\n")),
        "双 双\n"
    );
    fs::write(&conf, "colour = blue\n").unwrap();
    assert_eq!(rxd(&["--config", c, "decompose"], "叕\n").status.code(), Some(1));
}

#[test]
fn extract_and_stats() {
    let out = rxd(
        &[
            "extract-mwe",
            "--patterns",
            &data("patterns/en.patterns"),
            "--min-freq",
            "2",
        ],
        "the|DT golf|NN club|NN\nthe|DT golf|NN club|NN\nthe|DT golf|NN club|NN\n",
    );
    assert_eq!(stdout(&out), "golf club\t3\tnoun_noun\n");
    let out = rxd(&["stats", "--top-n", "5"], "a b c d e f g h i j\n");
    assert_eq!(stdout(&out), "vocab_size=10\ntop_n=5\ncoverage=0.5000\n");
    let out = rxd(
        &["stats", "--strip-boundary", "--granularity", "char"],
        "▁橋 樑 <wb> ▁橋\n",
    );
    assert_eq!(stdout(&out), "vocab_size=2\ntop_n=2500\ncoverage=1.0000\n");
}

#[test]
fn augment_writes_aligned_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    fs::write(p("src"), "我 喜欢 书\n").unwrap();
    fs::write(p("tgt"), "i like books\n").unwrap();
    fs::write(p("pairs"), "高尔夫球 俱乐部\tgolf club\t0.9800\n").unwrap();
    let base = [
        "augment",
        "--src",
        &p("src"),
        "--tgt",
        &p("tgt"),
        "--pairs",
        &p("pairs"),
        "--out-src",
        &p("os"),
        "--out-tgt",
        &p("ot"),
    ];
    let out = rxd(&base, "");
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(p("os")).unwrap(), "我 喜欢 书\n高尔夫球 俱乐部\n");
    assert_eq!(fs::read_to_string(p("ot")).unwrap(), "i like books\ngolf club\n");

    let ids = data("ids_fixture.txt");
    let mut args = base.to_vec();
    args.extend(["--decomp-level", "1", "--ids", &ids, "--replication", "2"]);
    assert!(rxd(&args, "").status.success());
    assert_eq!(
        fs::read_to_string(p("os")).unwrap(),
        "我 喜欢 书\n高尔夫球 俱乐部\n▁亠 口 冋 ⺈ 小 二 人 王 求 ▁亻 具 乐 咅 阝\n高尔夫球 俱乐部\n▁亠 口 冋 ⺈ 小 二 人 王 求 ▁亻 具 乐 咅 阝\n"
    );
    assert_eq!(fs::read_to_string(p("ot")).unwrap().lines().count(), 5);

    args.extend(["--keep-plain", "false"]);
    assert!(rxd(&args, "").status.success());
    assert_eq!(fs::read_to_string(p("os")).unwrap().lines().count(), 3);

    fs::write(p("tgt"), "").unwrap();
    assert_eq!(rxd(&base, "").status.code(), Some(2));
}
