use std::io::Write;
use std::process::{Command, Output, Stdio};

fn ramified(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ramified"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_library_function() {
    let o = ramified(&["eval", "times", "3", "4"], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "12");
}

#[test]
fn json_output_parses() {
    let o = ramified(&["--json", "eval", "plus", "2", "3"], "");
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["values"][0], "5");
}

#[test]
fn definitions_from_stdin() {
    let src = "(def double (comp times (tensor (num 1 2) (id (N 1)))))\n";
    let o = ramified(&["eval", "double", "7", "--file", "-"], src);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "14");

    let o = ramified(&["check", "-"], src);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1 definitions ok"));
}

#[test]
fn ill_typed_file_fails() {
    let o = ramified(&["check", "-"], "(def bad (comp plus (dup (N 1))))\n");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn fuel_exhaustion_exit_code() {
    let o = ramified(&["--fuel", "3", "eval", "exp", "3", "3"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn normalize_species_enumerate() {
    let o = ramified(&["normalize", "(comp (succ 0) (num 0 2))"], "");
    assert!(stdout(&o).starts_with("s^3 0"));
    let o = ramified(&["species", "exp"], "");
    assert_eq!(stdout(&o).trim(), "(2,1;1)");
    let o = ramified(&["enumerate", "3"], "");
    assert_eq!(stdout(&o), "10 maps\n50 cells\n");
}

#[test]
fn verify_suite() {
    let o = ramified(&["verify", "squares"], "");
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 failed"));
}
