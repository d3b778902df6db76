use std::process::{Command, Output};

fn qgrass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgrass")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn normal_form_examples() {
    let o = qgrass(&["normal-form", "--algebra", "mq", "--m", "1", "--n", "1", "a[1,2]*a[1,1]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "q^1 * a[1,1]a[1,2]");
    let o = qgrass(&["normal-form", "--algebra", "mq", "--m", "1", "--n", "1", "1"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = qgrass(&["normal-form", "--algebra", "gr", "D[1,5]*D[5,5]"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = qgrass(&["normal-form", "--algebra", "bigcell", "tau[5,1]*tau[5,1] + t[3,1]"]);
    assert_eq!(stdout(&o).trim(), "t[3,1]");
}

#[test]
fn hilbert_and_basis() {
    let o = qgrass(&["hilbert", "--algebra", "mq", "--m", "1", "--n", "1", "--degree", "2"]);
    assert_eq!(stdout(&o).trim(), "8");
    let o = qgrass(&["hilbert", "--algebra", "bigcell", "--degree", "2"]);
    assert_eq!(stdout(&o).trim(), "19");
    let o = qgrass(&["basis", "--algebra", "gr", "--degree", "1"]);
    assert_eq!(stdout(&o).lines().count(), 11);
}

#[test]
fn input_errors_exit_with_two() {
    let o = qgrass(&["normal-form", "--algebra", "mq", "--m", "1", "--n", "1", "a[1,1]+a[9,9]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown generator a[9,9]"));
    assert_eq!(qgrass(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(qgrass(&["verify", "--suite", "basis", "--q", "0"]).status.code(), Some(2));
}

#[test]
fn passing_suite_round_trips_through_json() {
    let o = qgrass(&["verify", "--suite", "plucker", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let path = std::env::temp_dir().join(format!("qgrass-plucker-{}.json", std::process::id()));
    std::fs::write(&path, &o.stdout).unwrap();
    let again = qgrass(&["report", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(again.status.code(), Some(0));
    assert!(stdout(&again).contains("plucker"));
}

#[test]
fn full_run_reports_the_known_failures() {
    let o = qgrass(&["verify", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("Delta(D12) = sum over k<l<=5"), "{text}");
    assert!(text.contains("g55 normal in the parabolic quotient"), "{text}");
}
