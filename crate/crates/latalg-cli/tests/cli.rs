//! End-to-end tests of the `latalg` binary: outputs, exit codes and cache files.

use std::path::Path;
use std::process::{Command, Output};

fn latalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latalg")).args(args).env_remove("LATALG_ALPHABET").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = latalg(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

#[test]
fn normal_forms() {
    assert_eq!(ok(&["nf", "(tb a a a)", "--basis=lat"]), "0\n");
    assert_eq!(ok(&["nf", "(tb a b c)", "--basis=prelie"]), "0\n");
    assert_eq!(ok(&["nf", "(* 1/2 (+ a a))"]), "a\n");
    assert_eq!(ok(&["nf", "(tb (> a a) a a)", "--alphabet=a"]), "[s(a) > a, a, a]\n");
    // w ⊳ [x, y, z] minus the three derivation terms
    let lat2 = "(+ (> b (tb a (> b a) a))
                   (* -1 (+ (tb (> b a) (> b a) a)
                         (+ (tb a (> b (> b a)) a)
                            (tb a (> b a) (> b a))))))";
    assert_eq!(ok(&["nf", lat2, "--alphabet=a,b"]), "0\n");
}

#[test]
fn expressions_from_files_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("e.lat");
    std::fs::write(&p, "; the order-4 generator\n(tb (> a a)\n    a a)\n").unwrap();
    assert_eq!(ok(&["nf", "--file", p.to_str().unwrap(), "--alphabet=a"]), "[s(a) > a, a, a]\n");
    let mut child = Command::new(env!("CARGO_BIN_EXE_latalg"))
        .args(["nf", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write as _;
    child.stdin.take().unwrap().write_all(b"(> a a)").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "s(a) > a\n");
}

#[test]
fn json_expressions_round_trip_through_the_parser() {
    let out = ok(&["nf", "(tb (> a b) b (> a a))", "--alphabet=a,b", "--format=json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let expr = v["expression"].as_str().unwrap();
    let again = ok(&["nf", expr, "--alphabet=a,b", "--format=json"]);
    assert_eq!(out, again);
    let text = ok(&["nf", "(tb (> a b) b (> a a))", "--alphabet=a,b"]);
    assert_eq!(v["text"].as_str().unwrap(), text.trim_end());
}

#[test]
fn parse_errors_exit_with_code_one_and_a_position() {
    let o = latalg(&["nf", "(> a\n  q)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("2:3: unknown identifier `q`"), "{}", stderr(&o));
    let o = latalg(&["nf", "(tb a a)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("1:1: `tb` expects 3 arguments, found 2"), "{}", stderr(&o));
    let o = latalg(&["nf", "(* 2/x a)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("1:4: malformed rational `2/x`"), "{}", stderr(&o));
    assert_eq!(latalg(&["nf"]).status.code(), Some(1));
    assert_eq!(latalg(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(latalg(&["--help"]).status.code(), Some(0));
}

#[test]
fn basis_listings() {
    let b = ok(&["basis", "--which=b", "--colors=1", "--max-grade=4"]);
    assert!(b.ends_with("total 9\n"), "{b}");
    assert!(b.contains("  [s(a) > a, a, a]\n"));
    let h = ok(&["basis", "--which=hall", "--colors=2", "--max-grade=3", "--format=json"]);
    let v: serde_json::Value = serde_json::from_str(&h).unwrap();
    let all: Vec<&str> =
        v["grades"].as_array().unwrap().iter().flat_map(|g| g["elements"].as_array().unwrap()).map(|x| x.as_str().unwrap()).collect();
    assert_eq!(all, vec!["a", "b", "[b, a, a]", "[b, a, b]"]);
    let o = ok(&["basis", "--which=osbb", "--colors=2", "--max-grade=3", "--format=json"]);
    let v: serde_json::Value = serde_json::from_str(&o).unwrap();
    assert_eq!(v["grades"][2]["count"], 8);
    let l = ok(&["basis", "--which=b", "--colors=1", "--max-grade=4", "--format=latex"]);
    assert!(l.contains("$[\\mathfrak{s}(\\mathtt{a}) \\rhd \\mathtt{a}, \\mathtt{a}, \\mathtt{a}]$"), "{l}");
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["basis", "--which=b", "--colors=2", "--max-grade=5", "--format=json"][..],
        &["basis", "--which=d", "--colors=2", "--max-grade=4"][..],
        &["nf", "(> (> a b) (tb a b (> b a)))", "--alphabet=a,b"][..],
    ] {
        assert_eq!(ok(args), ok(args));
    }
}

#[test]
fn safety_limit() {
    let o = latalg(&["basis", "--which=tree", "--colors=1", "--max-grade=9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--limit=9"));
    let out = ok(&["dims", "--which=tree", "--colors=1", "--max-grade=9", "--limit=9", "--format=csv"]);
    assert!(out.ends_with("9,1430\n"), "{out}");
}

#[test]
fn dims_expectations() {
    for (which, colors, max, expect) in [
        ("b", "1", "6", "1,1,2,5,13,34"),
        ("hall", "2", "7", "2,0,2,0,6,0,18"),
        ("nonplanar", "1", "5", "1,1,2,4,9"),
        ("osbb", "3", "4", "3,9,27,81"),
    ] {
        let args = ["dims", "--which", which, "--colors", colors, "--max-grade", max, "--expect", expect];
        assert_eq!(latalg(&args).status.code(), Some(0), "{args:?}");
    }
    let o = latalg(&["dims", "--which=b", "--colors=1", "--max-grade=4", "--expect=1,1,2,4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("expected [1, 1, 2, 4], computed [1, 1, 2, 5]"));
    // the table is printed even when the expectation fails
    assert!(stdout(&o).contains("    4  5"));
}

#[test]
fn rewriting_commands() {
    assert_eq!(ok(&["hall-rewrite", "(tb a b a)", "--alphabet=a,b"]), "-[b, a, a]\n");
    assert_eq!(ok(&["osbb-rewrite", "b", "a", "--alphabet=a,b"]), "1/2 [b, a] + s(b, a)\n");
    assert_eq!(ok(&["osbb-rewrite", "ba", "--alphabet=a,b"]), ok(&["osbb-rewrite", "b,a", "--alphabet=a,b"]));
    let o = latalg(&["hall-rewrite", "(tb a b (> a b))"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(ok(&["graft", "a", "(> a a)", "--alphabet=a"]), "a(a(a)) + a(a, a)\n");
    assert_eq!(ok(&["graft", "a", "(> a a)", "--alphabet=a", "--basis=prelie"]), "a(a(a)) + a(a, a)\n");
}

fn write_cache(path: &Path) {
    ok(&["cache", "write", "--which=b", "--colors=1", "--max-grade=5", path.to_str().unwrap()]);
}

#[test]
fn cache_round_trip_reproduces_the_listing() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("b5.cache");
    write_cache(&p);
    let listing = ok(&["basis", "--which=b", "--colors=1", "--max-grade=5"]);
    assert_eq!(ok(&["cache", "read", p.to_str().unwrap()]), listing);
    let json = ok(&["basis", "--which=b", "--colors=1", "--max-grade=5", "--format=json"]);
    assert_eq!(ok(&["cache", "read", p.to_str().unwrap(), "--format=json"]), json);
    assert!(ok(&["cache", "verify", p.to_str().unwrap()]).starts_with("ok: 22 elements"));
}

#[test]
fn corrupted_caches_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("b5.cache");
    write_cache(&p);
    let mut bytes = std::fs::read(&p).unwrap();
    let at = bytes.len() / 2;
    bytes[at] = if bytes[at] == b'a' { b'b' } else { b'a' };
    std::fs::write(&p, &bytes).unwrap();
    let o = latalg(&["cache", "read", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("checksum mismatch"), "{}", stderr(&o));
}

#[test]
fn stale_caches_name_both_versions() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("b5.cache");
    write_cache(&p);
    let current = env!("CARGO_PKG_VERSION");
    let text = std::fs::read_to_string(&p).unwrap().replace(&format!("version: {current}"), "version: 0.0.1");
    std::fs::write(&p, text).unwrap();
    let o = latalg(&["cache", "verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("0.0.1") && err.contains(current), "{err}");
}

#[test]
fn missing_cache_file_is_an_io_error() {
    let o = latalg(&["cache", "read", "/nonexistent/b.cache"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("/nonexistent/b.cache"));
}
