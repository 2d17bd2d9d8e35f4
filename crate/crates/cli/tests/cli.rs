use std::path::PathBuf;
use std::process::{Command, Output};

fn halfflag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_halfflag"))
        .args(args)
        .output()
        .expect("run halfflag")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

#[test]
fn verify_hs_design() {
    let o = halfflag(&[
        "verify",
        "--builtin",
        "hs-176-d1",
        "--assert-half-flag",
        "--assert-primitive",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let s = stdout(&o);
    assert!(s.contains("2-(176,160,19080)"), "{s}");
    assert!(s.contains("23100"), "{s}");
    assert!(s.contains("half-flag: yes"), "{s}");
    assert!(s.contains("primitive: yes"), "{s}");
}

#[test]
fn verify_example_fails_half_flag_assertion() {
    let o = halfflag(&["verify", "--builtin", "psl29-10", "--assert-half-flag"]);
    assert_eq!(o.status.code(), Some(1));
    let all = stdout(&o) + &String::from_utf8_lossy(&o.stderr);
    assert!(all.contains("G_B transitive on block"), "{all}");
}

#[test]
fn verify_biplane() {
    let o = halfflag(&["verify", "--builtin", "biplane-16"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(
        s.contains("2-(16,6,2)") && s.contains("half-flag: yes") && s.contains("primitive: no"),
        "{s}"
    );
    let o = halfflag(&["verify", "--builtin", "biplane-16", "--assert-primitive"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_from_files() {
    let dir = fixtures().join("psl29-10");
    let g = dir.join("group.grp");
    let b = dir.join("block-b1.set");
    let o = halfflag(&[
        "verify",
        "--group",
        g.to_str().unwrap(),
        "--base",
        b.to_str().unwrap(),
        "--assert-flag",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).contains("2-(10,4,2)"));
}

#[test]
fn sieve_reports() {
    let o = halfflag(&[
        "sieve",
        "--v",
        "176",
        "--stab-order",
        "252000",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("v,b,r,k,lambda,gcd_r_2lambda,passes"), "{s}");
    assert!(s.contains("176,23100,21000,160,19080,"));
    assert!(s.contains("176,28875,21000,128,15240,"));

    let o = halfflag(&["sieve", "--v", "11", "--stab-order", "720"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("eliminated at Step 1"));

    let list = fixtures().join("hs-176/printed-b-values.txt");
    let o = halfflag(&[
        "sieve",
        "--v",
        "176",
        "--stab-order",
        "252000",
        "--compare",
        list.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1500"));
}

#[test]
fn sieve_json_is_stable() {
    let args = [
        "sieve",
        "--v",
        "100",
        "--stab-order",
        "443520",
        "--subdegrees",
        "22,77",
        "--rmax-filter",
        "--format",
        "json",
    ];
    let a = halfflag(&args);
    let b = halfflag(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.is_object() || v.is_array());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        halfflag(&["sieve", "--v", "abc", "--stab-order", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        halfflag(&["verify", "--builtin", "no-such-group"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        halfflag(&["verify", "--group", "/nonexistent.grp"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        halfflag(&["product-search", "--v0", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(halfflag(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn classify_cases() {
    let o = halfflag(&["classify", "--case", "m11-11"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("eliminated at Step 1"));

    let out = tempfile::tempdir().unwrap();
    let o = halfflag(&[
        "classify",
        "--case",
        "hs-176",
        "--out",
        out.path().to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let s = stdout(&o);
    assert!(
        s.contains("2-(176,160,19080)") && s.contains("2-(176,128,15240)"),
        "{s}"
    );
    let written = std::fs::read_dir(out.path()).unwrap().count();
    assert!(written >= 2);

    // A row without a group fixture is skipped with a warning, not an error.
    let o = halfflag(&["classify", "--case", "16"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("skipped"));
}

#[test]
fn product_search_degree_5() {
    let o = halfflag(&["product-search", "--v0", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(
        s.contains("no half-flag-transitive design with λ ≥ (r,2λ)² found"),
        "{s}"
    );
    assert!(s.contains("[1, 8, 16]"));
}

#[test]
fn subgroups_and_catalog() {
    let o = halfflag(&["subgroups", "--builtin", "m11-11", "--index", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("| 11 | 1, 10 | 720 |"), "{s}");

    let o = halfflag(&["catalog-verify", "--fixtures", fixtures().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));

    let dir = tempfile::tempdir().unwrap();
    let e = dir.path().join("broken");
    std::fs::create_dir(&e).unwrap();
    std::fs::write(e.join("meta.json"), "{}").unwrap();
    let o = halfflag(&["catalog-verify", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}
