use std::process::{Command, Output};

fn wilfcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wilfcheck"))
        .args(args)
        .env_remove("WILFCHECK_MAX_N")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn exit_codes() {
    let o = wilfcheck(&["check", "--class", "avoiding3142v", "3,5,1,4,2"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "true\n"));

    let o = wilfcheck(&["check", "--class", "avoiding3142v", "3,1,4,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "false\nwitness: (1,2,3,4) values 3,1,4,2\n");

    let o = wilfcheck(&["check", "--class", "avoids312", "3,1,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("value 0 at index 3"), "{}", stderr(&o));

    assert_eq!(
        wilfcheck(&["check", "--class", "avoids312", "--verbose", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(wilfcheck(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        wilfcheck(&["map", "--bijection", "wilf", "3,2,4,1"]).status.code(),
        Some(1)
    );
    assert_eq!(wilfcheck(&["specs", "--n", "21"]).status.code(), Some(2));
}

#[test]
fn worked_examples() {
    let o = wilfcheck(&["fill", "--kind", "maximal", "P=1,3,6;M=3,5,7;n=7"]);
    assert_eq!(stdout(&o), "3,2,5,4,1,7,6\n");
    let o = wilfcheck(&["map", "--bijection", "wilf", "3,1,4,2"]);
    assert_eq!(stdout(&o), "3,2,4,1\n");
    let o = wilfcheck(&["fill", "--kind", "minimal", "P=1,3;M=1,3;n=3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("P=1,3;M=1,3;n=3"));
}

#[test]
fn wilf_map_round_trips_text() {
    let fixtures = [
        "",
        "1",
        "3,1,2",
        "3,1,4,2",
        "3,5,2,4,1",
        "3,1,5,4,2,7,6",
        "5,3,1,4,2,8,7,6",
        "2,6,1,5,3,4,9,8,7",
    ];
    for text in fixtures {
        let fwd = wilfcheck(&["map", "--bijection", "wilf", text]);
        assert_eq!(fwd.status.code(), Some(0), "{text}: {}", stderr(&fwd));
        let image = stdout(&fwd);
        let back = wilfcheck(&["map", "--bijection", "wilf", "--inverse", image.trim_end()]);
        assert_eq!(stdout(&back), format!("{text}\n"));
    }
}

#[test]
fn csv_and_json_agree() {
    let csv = stdout(&wilfcheck(&["count", "--n-max", "7", "--jobs", "1"]));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.json");
    let o = wilfcheck(&[
        "count",
        "--n-max",
        "7",
        "--naive",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let json: Vec<serde_json::Value> = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), json.len());
    for (row, obj) in rows.iter().zip(&json) {
        let from_json: Vec<String> = ["n", "satisfying", "avoiding", "specs", "catalan"]
            .iter()
            .map(|k| obj[*k].to_string())
            .collect();
        assert!(row.starts_with(&(from_json.join(",") + ",")), "{row} vs {from_json:?}");
    }
}

#[test]
fn size_limit_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_wilfcheck"))
        .args(["specs", "--n", "13"])
        .env("WILFCHECK_MAX_N", "13")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "specs=742900\ncatalan=742900\n");
    assert_eq!(wilfcheck(&["specs", "--n", "13"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_wilfcheck"))
        .args(["specs", "--n", "3"])
        .env("WILFCHECK_MAX_N", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_small() {
    let o = wilfcheck(&["verify", "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS ")).count(), 16);
    assert!(out.contains("satisfying=avoiding: 1,2,6,23,104 (n=1..5)"));
}
