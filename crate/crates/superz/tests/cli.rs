use std::process::{Command, Output};

fn superz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superz")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn diagram_text() {
    let o = superz(&["diagram", "sl", "--partition", "5,1|3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("labels 2 0 2 0 0 2 0 2\n"), "{out}");
    assert!(out.contains("X-X-O-X-X-X-X-O"), "{out}");
}

#[test]
fn json_is_parseable() {
    let o = superz(&["centre", "osp", "-p", "3|2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 2);
    assert_eq!(v["closed_form_matches"], true);

    let o = superz(&["fixed", "osp", "-p", "3|2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["fixed_dim"], 1);
    let o = superz(&["fixed", "osp", "-p", "3|2", "--json", "--so-variant"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["fixed_dim"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(superz(&["verify", "osp", "-p", "5,3,1|3,3"]).status.code(), Some(0));
    let o = superz(&["verify", "sl", "-p", "1|1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL (1|1) fixed-n2"));
    assert_eq!(superz(&["verify", "osp", "-p", "2|"]).status.code(), Some(2));
    assert_eq!(superz(&["verify", "osp", "-p", "x|"]).status.code(), Some(2));
    assert_eq!(superz(&["pyramid", "sl", "-p", "2|1", "--alt-pyramid"]).status.code(), Some(2));
    assert_eq!(superz(&["bogus"]).status.code(), Some(2));
}

#[test]
fn sweep_reports_reproducers() {
    let o = superz(&["sweep", "sl", "--max", "2", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("reproduce: superz verify sl --partition \"1|1\""), "{out}");
    assert!(out.trim_end().ends_with("partitions, 1 with failures"), "{out}");
}

#[test]
fn pyramid_and_element() {
    let o = superz(&["pyramid", "osp", "-p", "3|2", "--alt-pyramid"]);
    assert_eq!(o.status.code(), Some(0));
    let o = superz(&["element", "sl", "-p", "2|1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["h"][0][0], "1");
    assert_eq!(v["e"][0][2], "1");
}
