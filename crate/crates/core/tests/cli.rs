use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fuzzy-wsn"));
    c.env("NO_COLOR", "1");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("config.json");
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn names(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    v.sort();
    v
}

#[test]
fn single_fuzzy_run_writes_three_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"protocol":"eeds","nodes":30,"area":[60,60]}"#,
    );
    let out = dir.path().join("out");
    let o = run(&[
        "run",
        "--config",
        &cfg,
        "--set",
        "rounds=40",
        "--set",
        "seed=4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        names(&out),
        [
            "eeds.rulebase.json",
            "eeds_seed4.metrics.csv",
            "eeds_seed4.resolved_config.json"
        ]
    );
    let resolved: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(out.join("eeds_seed4.resolved_config.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(resolved["rounds"], 40);
    assert_eq!(resolved["initial_energy"], 0.1);
    assert_eq!(resolved["radio_range"], 15.0);
    let csv = fs::read_to_string(out.join("eeds_seed4.metrics.csv")).unwrap();
    assert_eq!(csv.lines().count(), 41);
}

#[test]
fn leach_run_has_no_rulebase() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"protocol":"leach","nodes":30,"area":[60,60],"rounds":20}"#,
    );
    let out = dir.path().join("out");
    assert!(
        run(&["run", "--config", &cfg, "--out", out.to_str().unwrap()])
            .status
            .success()
    );
    assert_eq!(
        names(&out),
        [
            "leach_seed0.metrics.csv",
            "leach_seed0.resolved_config.json"
        ]
    );
}

#[test]
fn replay_from_resolved_config_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for protocol in ["eeds", "f3n", "leach"] {
        let cfg = write_config(
            dir.path(),
            &format!(
                r#"{{"protocol":"{protocol}","nodes":30,"area":[60,60],"rounds":120,"seed":9}}"#
            ),
        );
        let first = dir.path().join(format!("a_{protocol}"));
        let second = dir.path().join(format!("b_{protocol}"));
        assert!(
            run(&["run", "--config", &cfg, "--out", first.to_str().unwrap()])
                .status
                .success()
        );
        let resolved = first.join(format!("{protocol}_seed9.resolved_config.json"));
        assert!(run(&[
            "run",
            "--config",
            resolved.to_str().unwrap(),
            "--out",
            second.to_str().unwrap()
        ])
        .status
        .success());
        let csv = format!("{protocol}_seed9.metrics.csv");
        assert_eq!(
            fs::read(first.join(&csv)).unwrap(),
            fs::read(second.join(&csv)).unwrap()
        );
        assert_eq!(
            fs::read(&resolved).unwrap(),
            fs::read(second.join(format!("{protocol}_seed9.resolved_config.json"))).unwrap()
        );
    }
}

#[test]
fn compare_writes_per_run_csvs_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"protocol":"eeds","nodes":30,"area":[60,60],"rounds":60}"#,
    );
    let out = dir.path().join("cmp");
    let o = run(&[
        "compare",
        "--config",
        &cfg,
        "--seeds",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let files = names(&out);
    assert_eq!(
        files.iter().filter(|f| f.ends_with(".metrics.csv")).count(),
        6
    );
    assert!(files.contains(&"comparison.csv".to_string()));
    assert_eq!(files.len(), 7);
    assert!(String::from_utf8_lossy(&o.stdout).contains("FND"));
}

#[test]
fn config_errors_have_distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let out = out.to_str().unwrap();
    let code = |body: &str, extra: &[&str]| {
        let cfg = write_config(dir.path(), body);
        let mut args = vec!["run", "--config", &cfg, "--out", out];
        args.extend_from_slice(extra);
        let o = run(&args);
        (
            o.status.code().unwrap(),
            String::from_utf8_lossy(&o.stderr).to_string(),
        )
    };
    let ok = r#"{"protocol":"leach","nodes":30,"area":[60,60],"rounds":2}"#;

    let (c, msg) = code(ok, &["--set", "nodes=0"]);
    assert_eq!(c, 6);
    assert!(msg.contains("nodes"), "{msg}");
    let (c, msg) = code(ok, &["--set", "speed=3"]);
    assert_eq!(c, 5);
    assert!(msg.contains("speed"), "{msg}");
    let (c, _) = code(r#"{"protocol":"leach","nodes":"many","area":[60,60]}"#, &[]);
    assert_eq!(c, 4);
    let (c, _) = code("{not json", &[]);
    assert_eq!(c, 4);

    let o = run(&["run", "--config", "/no/such/config.json", "--out", out]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["run", "--out", out]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&o.stderr).contains('\x1b'));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"protocol":"leach","nodes":5,"area":[60,60],"rounds":2}"#,
    );
    let blocker = dir.path().join("blocker");
    fs::write(&blocker, "").unwrap();
    let o = run(&[
        "run",
        "--config",
        &cfg,
        "--out",
        blocker.join("x").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(7));
}

#[test]
fn emit_and_validate_rulebase() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert!(run(&["emit-rulebase", "--protocol", "eeds", "--out", out])
        .status
        .success());
    let path = dir.path().join("eeds.rulebase.json");
    let o = run(&["validate-fis", "--rulebase", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("144") && text.contains("27"), "{text}");

    let mut doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let rules = doc["global"]["rules"].as_array_mut().unwrap();
    let dup = rules[0].clone();
    rules[1] = dup;
    fs::write(&path, doc.to_string()).unwrap();
    let o = run(&["validate-fis", "--rulebase", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(8));
}

#[test]
fn committed_fixtures_validate() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for f in ["eeds.rulebase.json", "f3n.rulebase.json"] {
        let o = run(&["validate-fis", "--rulebase", root.join(f).to_str().unwrap()]);
        assert!(
            o.status.success(),
            "{f}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn help_documents_every_subcommand() {
    let o = run(&["--help"]);
    let text = String::from_utf8_lossy(&o.stdout);
    for sub in [
        "run",
        "compare",
        "validate-fis",
        "emit-rulebase",
        "NO_COLOR",
    ] {
        assert!(text.contains(sub), "{sub} missing from help");
    }
}
