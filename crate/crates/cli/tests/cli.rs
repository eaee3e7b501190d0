use std::io::Write;
use std::process::{Command, Output, Stdio};

fn opfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opfree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn error_json(o: &Output) -> serde_json::Value {
    let line = stderr(o);
    let body = line.trim().strip_prefix("error:").expect("error: prefix");
    serde_json::from_str(body).expect("machine-parsable error")
}

#[test]
fn validate_ok_and_errors() {
    let o = opfree(&["validate", "--family", "path", "U L:x D"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "ok: U L:x D\n");

    let o = opfree(&["validate", "--family", "path", "D U"]);
    assert_eq!(o.status.code(), Some(1));
    let e = error_json(&o);
    assert_eq!(e["code"], "NEGATIVE_PREFIX");
    assert_eq!(e["index"], 0);

    let o = opfree(&["validate", "--family", "word", "[x][y]", "--require", "rb"]);
    assert_eq!(o.status.code(), Some(1));
    let e = error_json(&o);
    assert_eq!(e["code"], "NOT_IN_FAMILY");
    assert_eq!(e["predicate"], "rb");
}

#[test]
fn validate_canonicalizes() {
    let o = opfree(&["validate", "--family", "word", "[x][y]"]);
    assert_eq!(stdout(&o), "ok: [x] [y]\n");
    let o = opfree(&["validate", "--family", "V", "[x][y]"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_json(&o)["code"], "PARSE_ERROR");
}

#[test]
fn convert() {
    let o = opfree(&["convert", "--from", "word", "--to", "path", "[x]"]);
    assert_eq!(stdout(&o), "U L:x D\n");
    let o = opfree(&["convert", "--from", "path", "--to", "aforest", "U L:x D"]);
    assert_eq!(stdout(&o), "<* x *>\n");
    let o = opfree(&["convert", "--from", "path", "--to", "aforest", "U D U D"]);
    assert_eq!(o.status.code(), Some(1));
    let e = error_json(&o);
    assert_eq!(e["code"], "NOT_IN_FAMILY");
    assert_eq!(e["predicate"], "valley-free");
}

#[test]
fn rb_mul() {
    let o = opfree(&["rb-mul", "--rep", "word", "--lambda", "sym", "[x]", "[y]"]);
    assert_eq!(stdout(&o), "1*[x [y]] + 1*[[x] y] + λ*[x y]\n");
    let o = opfree(&["rb-mul", "--rep", "word", "--lambda", "-1", "[x]", "[]"]);
    assert_eq!(stdout(&o), "1*[x []] + 1*[[x]] + -1*[x]\n");
    let o = opfree(&["rb-mul", "--rep", "path", "•", "U L:x U L:y D D"]);
    assert_eq!(stdout(&o), "1*U L:x U L:y D D\n");
    let o = opfree(&["rb-mul", "--rep", "word", "[x][y]", "x"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn rb_mul_json() {
    let o = opfree(&["rb-mul", "--rep", "aforest", "--json", "<* x *>", "<*>"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["family"], "aforest");
    assert_eq!(v["coeff"], "lambda");
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn enumerate() {
    let o = opfree(&["enumerate", "--family", "path", "--size", "3", "--alphabet", "x", "--count-only"]);
    assert_eq!(stdout(&o), "4\n");
    let o = opfree(&["enumerate", "--family", "path", "--size", "3"]);
    assert_eq!(stdout(&o), "U D L:x\nU L:x D\nL:x U D\nL:x L:x L:x\n");
    let o = opfree(&["enumerate", "--family", "P", "--size", "6", "--filter", "dyck", "--count-only"]);
    assert_eq!(stdout(&o), "5\n");
}

#[test]
fn enumerate_cap_from_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_opfree"))
        .args(["enumerate", "--family", "path", "--size", "5", "--count-only"])
        .env("OPFREE_MAX_SIZE", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let e = error_json(&o);
    assert_eq!(e["code"], "SIZE_LIMIT_EXCEEDED");
}

#[test]
fn render() {
    let o = opfree(&["render", "--family", "path", "U L:x D"]);
    assert_eq!(stdout(&o), "/‾\\\n x\n");
}

#[test]
fn eval_seq() {
    let o = opfree(&["eval-seq", "--length", "4", "--assign", "x=1,2,3,4", "[x]"]);
    assert_eq!(stdout(&o), "0 1 3 6\n");
    let o = opfree(&["eval-seq", "--length", "4", "--weight", "-1", "--assign", "x=1,2,3,4", "[x] x"]);
    assert_eq!(stdout(&o), "1 6 18 40\n");
    let o = opfree(&["eval-seq", "--length", "2", "--assign", "x=1,1", "y"]);
    assert_eq!(error_json(&o)["code"], "UNKNOWN_SYMBOL");
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_opfree"))
        .args(["validate", "--family", "aforest", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"<* x *>\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "ok: <* x *>\n");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(opfree(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(opfree(&["validate", "--family", "nope", "x"]).status.code(), Some(2));
    assert_eq!(opfree(&["rb-mul", "--rep", "word", "--lambda", "q", "x", "x"]).status.code(), Some(2));
}

#[test]
fn deterministic_output() {
    let args = ["enumerate", "--family", "XF", "--size", "4", "--alphabet", "x,y"];
    assert_eq!(stdout(&opfree(&args)), stdout(&opfree(&args)));
}

#[test]
fn selfcheck_small() {
    let o = opfree(&["selfcheck", "--max-size", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    let mut sorted = lines.clone();
    sorted.sort();
    assert_eq!(lines, sorted);
    assert!(lines.iter().all(|l| l.starts_with("PASS ")));
}
