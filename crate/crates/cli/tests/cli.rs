use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use acromine::{load_corpus, split_corpus};

const BIN: &str = env!("CARGO_BIN_EXE_acromine");

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/synthetic")
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("ACROMINE_CONFIG").output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "failed: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn train(dir: &Path, name: &str, extra: &[&str]) -> (PathBuf, String) {
    let model = dir.join(name);
    let corpus = corpus_dir();
    let mut args = vec!["train", "--corpus", corpus.to_str().unwrap(), "--model", model.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = stdout(&run(&args));
    (model, out)
}

fn field(report: &str, key: &str) -> usize {
    report.lines().find_map(|l| l.strip_prefix(&format!("{key}="))).unwrap().parse().unwrap()
}

#[test]
fn train_is_deterministic_and_skips_exactly_the_planted_negatives() {
    let dir = tempfile::tempdir().unwrap();
    let (a, report) = train(dir.path(), "a.model", &[]);
    let (b, _) = train(dir.path(), "b.model", &[]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let corpus = load_corpus(&corpus_dir()).unwrap();
    let split = split_corpus(&corpus, 42).unwrap();
    let manifest = fs::read_to_string(corpus_dir().join("MANIFEST.tsv")).unwrap();
    let negatives_in_train = manifest
        .lines()
        .skip(1)
        .map(|l| l.split('\t').collect::<Vec<_>>())
        .filter(|f| f[3] == "negative" && split.train.iter().any(|id| id == f[0]))
        .count();
    assert!(negatives_in_train > 0);
    assert_eq!(field(&report, "annotations_skipped"), negatives_in_train);
    assert_eq!(field(&report, "train_documents") + field(&report, "test_documents"), corpus.len());
}

#[test]
fn different_seed_gives_a_different_model() {
    let dir = tempfile::tempdir().unwrap();
    let (a, _) = train(dir.path(), "a.model", &[]);
    let (b, _) = train(dir.path(), "b.model", &["--seed", "7"]);
    assert_ne!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn empty_corpus_fails_with_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("m");
    let out = run(&["train", "--corpus", dir.path().to_str().unwrap(), "--model", model.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("missing document"), "{err}");
    assert_eq!(err.trim_end().lines().count(), 1);
    assert!(out.stdout.is_empty());
}

#[test]
fn extract_thresholds() {
    let dir = tempfile::tempdir().unwrap();
    let (model, _) = train(dir.path(), "m", &[]);
    let m = model.to_str().unwrap();
    let bc = dir.path().join("bc.txt");
    fs::write(&bc, "Both the Bandwidth Contraction (BC) algorithm\n").unwrap();
    let bc = bc.to_str().unwrap();

    let lines = stdout(&run(&["extract", "--model", m, "--t", "1", bc]));
    let records: Vec<Vec<&str>> = lines.lines().map(|l| l.split('\t').collect()).collect();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0][..4], ["bc", "32", "BC", "- 2 <1> <1,1>"]);
    assert_eq!(records[0][6], "Bandwidth Contraction");

    assert_eq!(stdout(&run(&["extract", "--model", m, "--t", "0", bc])), "");

    let iso = dir.path().join("iso.txt");
    fs::write(&iso, "International Organisation for Standardisation document ISO/IEC JTC1/SC29\n").unwrap();
    let out = stdout(&run(&["extract", "--model", m, "--t", "1000", iso.to_str().unwrap()]));
    assert!(!out.contains("International Organisation for Standardisation"), "{out}");
}

#[test]
fn extract_dedupe_keeps_first_occurrence() {
    let dir = tempfile::tempdir().unwrap();
    let (model, _) = train(dir.path(), "m", &[]);
    let doc = dir.path().join("twice.txt");
    fs::write(&doc, "the bootstrap checker (BC) ran; later the bootstrap checker (BC) ran again").unwrap();
    let args = |extra: &'static str| {
        let mut a = vec!["extract", "--model", model.to_str().unwrap(), "--t", "10", doc.to_str().unwrap()];
        if !extra.is_empty() {
            a.push(extra);
        }
        stdout(&run(&a))
    };
    assert_eq!(args("").lines().count(), 2);
    assert_eq!(args("--dedupe").lines().count(), 1);
}

#[test]
fn sweep_is_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let (model, _) = train(dir.path(), "m", &[]);
    let corpus = corpus_dir();
    let sweep = |jobs: &str| {
        stdout(&run(&[
            "sweep",
            "--corpus",
            corpus.to_str().unwrap(),
            "--model",
            model.to_str().unwrap(),
            "--jobs",
            jobs,
        ]))
    };
    let one = sweep("1");
    assert_eq!(one.lines().next().unwrap(), "t,filter,recall,precision,tp,fp,fn");
    assert_eq!(one.lines().count(), 61);
    assert_eq!(one, sweep("1"));
    assert_eq!(one, sweep("4"));
}

#[test]
fn sweep_writes_csv_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let (model, _) = train(dir.path(), "m", &[]);
    let csv = dir.path().join("curve.csv");
    let corpus = corpus_dir();
    let out = run(&[
        "sweep",
        "--corpus",
        corpus.to_str().unwrap(),
        "--model",
        model.to_str().unwrap(),
        "--thresholds",
        "0.1, 0.5,1",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&out), "");
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 7);
    assert!(dir.path().join("curve.csv.txt").exists());
}

#[test]
fn baselines_give_one_point_per_filter() {
    let corpus = corpus_dir();
    for method in ["afp", "tla", "simple"] {
        let csv = stdout(&run(&["baseline", "--method", method, "--corpus", corpus.to_str().unwrap()]));
        let rows: Vec<&str> = csv.lines().collect();
        assert_eq!(rows.len(), 3, "{method}");
        assert!(rows[1].starts_with(",min2,") && rows[2].starts_with(",min3,"), "{method}: {csv}");
    }
}

#[test]
fn unknown_method_is_a_usage_error() {
    let out = run(&["baseline", "--method", "perl"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn prediction_file_scores_like_an_in_memory_run() {
    let dir = tempfile::tempdir().unwrap();
    let (model, _) = train(dir.path(), "m", &[]);
    let (m, c) = (model.to_str().unwrap(), corpus_dir());
    let corpus = load_corpus(&c).unwrap();
    let split = split_corpus(&corpus, 42).unwrap();
    let files: Vec<String> =
        split.test.iter().map(|id| c.join(format!("{id}.txt")).to_str().unwrap().to_owned()).collect();

    let mut args = vec!["extract", "--model", m, "--t", "0.3"];
    args.extend(files.iter().map(String::as_str));
    let records = dir.path().join("records.tsv");
    fs::write(&records, stdout(&run(&args))).unwrap();

    let c = c.to_str().unwrap();
    let direct = stdout(&run(&["evaluate", "--corpus", c, "--model", m, "--t", "0.3"]));
    let from_file = stdout(&run(&["evaluate", "--corpus", c, "--predictions", records.to_str().unwrap()]));
    let metrics = |csv: &str| csv.lines().skip(1).map(|l| l.split_once(',').unwrap().1.to_owned()).collect::<Vec<_>>();
    assert_eq!(metrics(&direct), metrics(&from_file));
    assert!(direct.lines().nth(1).unwrap().starts_with("0.300000,min2,"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    train(dir.path(), "m", &[]);
    let doc = dir.path().join("bc.txt");
    fs::write(&doc, "Both the Bandwidth Contraction (BC) algorithm\n").unwrap();
    let conf = dir.path().join("acromine.conf");
    fs::write(&conf, "# thresholds\nmodel = m\nt = 0\n").unwrap();

    let base = |extra: &[&str], env: bool| {
        let mut cmd = Command::new(BIN);
        cmd.arg("extract").args(extra).arg(&doc).env_remove("ACROMINE_CONFIG");
        if env {
            cmd.env("ACROMINE_CONFIG", &conf);
        } else {
            cmd.arg("--config").arg(&conf);
        }
        stdout(&cmd.output().unwrap())
    };
    assert_eq!(base(&[], false), "");
    assert_eq!(base(&[], true), "");
    assert_eq!(base(&["--t", "1"], false).lines().count(), 1);
    assert_eq!(base(&["--t", "1"], true).lines().count(), 1);

    fs::write(&conf, "colour = red\n").unwrap();
    let out = Command::new(BIN).args(["extract", "--config", conf.to_str().unwrap(), "x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_model_fails() {
    let out = run(&["extract", "--model", "/nonexistent/model", "--t", "1", "/dev/null"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read model"));
}
