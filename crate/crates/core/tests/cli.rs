use std::process::{Command, Output};

fn suig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suig"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_prints_worked_roles() {
    let o = suig(&["classify", "--config", "n=21;occ=2,6,9,10,11,12,15,19"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().next(),
        Some("NE(8) axis@node0 target=0 main={2,19} secondary={9,12}")
    );
}

#[test]
fn classify_lists_quasi_axes() {
    let o = suig(&["classify", "--config", "n=21;occ=1,6,9,10,11,12,15,19"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("QNE("), "{out}");
    assert!(out.lines().any(|l| l.starts_with("quasi r=")), "{out}");
}

#[test]
fn run_l3_with_crash_gathers_at_crash_node() {
    let o = suig(&[
        "run",
        "--config",
        "n=9;occ=0,2,7",
        "--crash-round",
        "0",
        "--crash-node",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let last = stdout(&o).lines().last().unwrap().to_string();
    let round: usize = last
        .strip_prefix("GatheredAt(node=2, round=")
        .and_then(|r| r.strip_suffix(')'))
        .expect(&last)
        .parse()
        .unwrap();
    assert!(round <= 4);
}

#[test]
fn run_writes_trace_and_frames() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.jsonl");
    let o = suig(&[
        "run",
        "--config",
        "n=21;occ=2,6,9,10,11,12,15,19",
        "--crash-round",
        "0",
        "--crash-node",
        "19",
        "--render",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains('X') && out.contains('^'), "{out}");
    let trace = std::fs::read_to_string(&path).unwrap();
    let frames = out.lines().filter(|l| l.starts_with("round")).count();
    assert_eq!(trace.lines().count(), frames);
    assert!(out
        .lines()
        .last()
        .unwrap()
        .starts_with("GatheredAt(node=19,"));
}

#[test]
fn verify_nine_reports_lemma_failures_but_gathers() {
    let o = suig(&["verify", "--n", "9", "--k", "4..8", "--crash", "all"]);
    // secondary-crash recovery and even-gap uniqueness fail at n=9
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("scenarios=578 gathered=578"), "{out}");
}

#[test]
fn verify_clean_sweep_exits_zero() {
    let o = suig(&["verify", "--n", "11", "--k", "4..6", "--crash", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = suig(&["verify", "--n", "5..13", "--crash", "none"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn report_is_identical_for_any_job_count() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let run = |jobs: &str, path: &std::path::Path| {
        suig(&[
            "verify",
            "--n",
            "11",
            "--k",
            "4..7",
            "--jobs",
            jobs,
            "--report",
            path.to_str().unwrap(),
        ])
    };
    let (oa, ob) = (run("1", &a), run("4", &b));
    assert_eq!(oa.stdout, ob.stdout);
    let (ra, rb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!ra.is_empty());
    assert_eq!(ra, rb);
}

#[test]
fn suir_sweep_passes() {
    let o = suig(&["suir-verify", "--n", "4..12"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn argument_errors_exit_two() {
    for args in [
        &["verify", "--n", "10"][..],
        &["verify", "--n", "9", "--k", "x"],
        &["verify", "--n", "9", "--crash", "some"],
        &["suir-verify", "--n", "9"],
        &["run", "--config", "n=9;occ=9"],
        &["run", "--config", "n=9;occ=0,2,7", "--crash-node", "2"],
        &[
            "run",
            "--config",
            "n=9;occ=0,2,7",
            "--crash-round",
            "0",
            "--crash-node",
            "1",
        ],
        &["frobnicate"],
    ] {
        let o = suig(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn refuses_illegal_starts() {
    // periodic start
    let o = suig(&["run", "--config", "n=9;occ=0,3,6"]);
    assert_eq!(o.status.code(), Some(2));
    // antipodal rendezvous start
    let o = suig(&["run", "--config", "n=8;occ=0,4"]);
    assert_eq!(o.status.code(), Some(2));
}
