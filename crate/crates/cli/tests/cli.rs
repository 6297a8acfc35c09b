use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use piradical::catalog::named_group;
use piradical::factored::FactoredInteger;
use piradical::group::PermGroup;
use piradical::perm::{parse_cycles, Permutation};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_piradical"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let code = out.status.code().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text:?} {:?}", String::from_utf8_lossy(&out.stderr)));
    (value, code)
}

fn first(report: &Value) -> &Value {
    &report["results"][0]
}

fn perms(text: &str, degree: usize) -> Vec<Permutation> {
    if text.is_empty() {
        return Vec::new();
    }
    text.split(';').map(|c| parse_cycles(c, degree).unwrap()).collect()
}

/// Rebuilds the certified subgroup from `x` and the conjugators alone.
fn regenerate(record: &Value, degree: usize) -> PermGroup {
    let x = parse_cycles(record["x"].as_str().unwrap(), degree).unwrap();
    let tuple: Vec<Permutation> = perms(record["witness"].as_str().unwrap(), degree)
        .iter()
        .map(|l| x.conjugate_by(l))
        .collect();
    PermGroup::generated_by(degree, &tuple).unwrap()
}

fn certificate(record: &Value) -> FactoredInteger {
    record["certificate_order"].as_str().unwrap().parse().unwrap()
}

#[test]
fn radical_examples() {
    for (group, pi, order) in [("S4", "2", "2^2"), ("S5", "2,3", "1"), ("A5", "2,3,5", "2^2·3·5")] {
        let (report, code) = json(&["radical", "--group", group, "--pi", pi]);
        assert_eq!(code, 0);
        assert_eq!(first(&report)["order"], order, "{group}");
        assert_eq!(first(&report)["oracle"], "agree");
    }
}

#[test]
fn beta_examples_revalidate() {
    for (group, aut, r, value, degree) in [
        ("A5", "(1 2)", 3u64, 2u64, 5),
        ("A7", "(1 2)", 7, 6, 7),
        ("A6:pgammal", "outer-involution", 3, 3, 10),
    ] {
        let r_text = r.to_string();
        let (report, code) = json(&["beta", "--group", group, "--aut", aut, "--r", &r_text]);
        assert_eq!(code, 0, "{group}");
        let rec = first(&report);
        assert_eq!(rec["value"], value, "{group}");
        assert_eq!(rec["exhaustive"], true);
        let socle = if group == "A6:pgammal" {
            named_group("psl2(9)").unwrap()
        } else {
            named_group(group).unwrap()
        };
        for l in perms(rec["witness"].as_str().unwrap(), degree) {
            assert!(socle.has(&l));
        }
        let h = regenerate(rec, degree);
        assert_eq!(*h.order(), certificate(rec));
        assert!(h.order().divisible_by_prime(r));
        assert_eq!(perms(rec["witness"].as_str().unwrap(), degree).len() as u64, value);
    }
}

#[test]
fn alpha_examples_revalidate() {
    for (group, aut, expected) in [("A5", "(1 2)", Some(4)), ("A5", "(1 2 3)", Some(2)), ("A8", "(1 2)(3 4)", None)] {
        let (report, code) = json(&["alpha", "--group", group, "--aut", aut]);
        assert_eq!(code, 0);
        let rec = first(&report);
        let value = rec["value"].as_u64().unwrap();
        match expected {
            Some(v) => assert_eq!(value, v),
            None => assert!(value <= 4),
        }
        let degree = named_group(group).unwrap().degree();
        let h = regenerate(rec, degree);
        assert_eq!(h.order().to_string(), rec["ambient_order"].as_str().unwrap());
        assert_eq!(*h.order(), certificate(rec));
    }
}

#[test]
fn bs_check_examples() {
    let (report, code) = json(&["bs-check", "--group", "S5", "--pi", "2,3", "--m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(report["summary"]["holds"], false);
    let witness = parse_cycles(report["summary"]["violating_element"].as_str().unwrap(), 5).unwrap();
    assert!(witness.is_transposition());
    assert_eq!(report["summary"]["minimal_m"], 4);

    let (report, _) = json(&["bs-check", "--group", "S5", "--pi", "2,3", "--m", "11"]);
    assert_eq!(report["summary"]["holds"], true);
    // per-class witnesses are non-π tuples of the stated width
    for rec in report["results"].as_array().unwrap() {
        if rec["in_radical"] == true {
            continue;
        }
        let tuple = perms(rec["witness"].as_str().unwrap(), 5);
        assert_eq!(tuple.len() as u64, rec["non_pi_width"].as_u64().unwrap());
        let h = PermGroup::generated_by(5, &tuple).unwrap();
        assert!(h.order().divisible_by_prime(5));
    }

    let (report, _) = json(&["bs-check", "--group", "A5", "--pi", "3,5", "--m", "2", "--no-minimal"]);
    assert_eq!(report["summary"]["holds"], true);
}

#[test]
fn prop1_examples() {
    for (r, largest) in [("3", 1), ("5", 3), ("7", 5)] {
        let (report, code) = json(&["prop1", "--r", r]);
        assert_eq!(code, 0, "r = {r}");
        assert_eq!(report["summary"]["largest_m_all_pi"], largest);
        assert_eq!(report["summary"]["radical_order"], "1");
        assert_eq!(report["summary"]["bs_lower_bound"], largest + 1);
        let rows = report["results"].as_array().unwrap();
        assert!(rows.iter().all(|row| row["cross_check_mismatches"] == 0));
        assert_eq!(rows.last().unwrap()["all_pi"], false);
    }
    let (report, code) = json(&["prop1", "--r", "11"]);
    assert_eq!(code, 3);
    assert_eq!(report["summary"]["exhaustive"], false);
}

#[test]
fn prop4_table_cells() {
    let (report, _) = json(&["prop4-table", "--n-min", "5", "--n-max", "7", "--r", "3,5"]);
    let rows = report["results"].as_array().unwrap();
    let cell = |n: u64, x: &str, r: u64| {
        rows.iter()
            .find(|row| row["n"] == n && row["x"] == x && row["r"] == r)
            .unwrap_or_else(|| panic!("missing {n} {x} {r}"))
    };
    assert_eq!(cell(5, "(1 2)", 5)["value"], 4);
    assert!(cell(7, "(1 2 3)", 3)["value"].as_u64().unwrap() <= 2);
    let outer = rows.iter().find(|row| row["kind"] == "outer-involution" && row["r"] == 3).unwrap();
    assert_eq!(outer["value"], 3);
    assert_eq!(outer["check"], "pass");
    // odd r only: every cell passes
    assert!(rows.iter().all(|row| row["check"] == "pass"));
}

#[test]
fn prop4_table_reports_violations_with_exit_one() {
    let out = run(&["prop4-table", "--n-min", "5", "--n-max", "5", "--r", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(1 2 3),other,2,<= r-1,fail"));
}

#[test]
fn verify_bs_examples() {
    let (report, code) = json(&["verify-bs", "--group", "S4", "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["summary"]["holds"], true);
    let (report, code) = json(&["verify-bs", "--group", "psl2(7)", "--p", "7"]);
    assert_eq!(code, 0);
    assert_eq!(first(&report)["radical_order"], "1");
    let (report, code) = json(&["verify-bs-sweep", "--order-cap", "200"]);
    assert_eq!(code, 0);
    assert_eq!(report["summary"]["failures"], 0);
}

#[test]
fn json_and_csv_records_agree() {
    for args in [
        vec!["bs-check", "--group", "S5", "--pi", "2,3", "--m", "3"],
        vec!["beta", "--group", "A6:pgammal", "--aut", "outer-involution", "--r", "3"],
        vec!["prop4-table", "--n-min", "5", "--n-max", "6"],
    ] {
        let (report, _) = json(&args);
        let mut csv_args = args.clone();
        csv_args.extend(["--format", "csv"]);
        let out = run(&csv_args);
        let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
        let headers: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
        let rows: Vec<Vec<String>> = reader
            .records()
            .map(|r| r.unwrap().iter().map(String::from).collect())
            .collect();
        let records = report["results"].as_array().unwrap();
        assert_eq!(rows.len(), records.len());
        for (row, rec) in rows.iter().zip(records) {
            let obj = rec.as_object().unwrap();
            assert_eq!(obj.len(), headers.len());
            for (cell, key) in row.iter().zip(&headers) {
                let expected = match &obj[key] {
                    Value::Null => String::new(),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                assert_eq!(cell, &expected);
            }
        }
    }
}

#[test]
fn reruns_are_identical() {
    let args = ["prop1", "--r", "11", "--seed", "7"];
    let (a, _) = json(&args);
    let (b, _) = json(&args);
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["inputs"], b["inputs"]);
    assert_eq!(a["provenance"]["seed"], 7);
    let (c, _) = json(&["prop1", "--r", "11", "--seed", "8"]);
    assert_ne!(a["results"], c["results"]);
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["radical", "--group", "Q8", "--pi", "2"],
        vec!["radical", "--group", "S4", "--pi", "2,4"],
        vec!["beta", "--group", "A5", "--aut", "(1 2", "--r", "3"],
        vec!["beta", "--group", "A5", "--aut", "(1 2)", "--r", "7"],
        vec!["beta", "--group", "A5", "--aut", "(1 2)", "--r", "4"],
        vec!["alpha", "--group", "A5", "--aut", "(1 9)"],
        vec!["alpha", "--group", "A7:pgammal", "--aut", "outer-involution"],
        vec!["alpha", "--group", "A5"],
        vec!["prop1", "--r", "4"],
        vec!["bs-check", "--group", "S5", "--pi", "2", "--m", "0"],
        vec!["radical", "--group", "S4", "--pi", "2", "--budget-width", "0"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
    // clap usage errors also exit 2
    assert_eq!(run(&["beta", "--group", "A5"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_three() {
    let (report, code) = json(&["beta", "--group", "A7", "--aut", "(1 2)", "--r", "7", "--budget-states", "3"]);
    assert_eq!(code, 3);
    assert_eq!(first(&report)["status"], "unknown");
    let (report, code) = json(&["alpha", "--group", "A5", "--aut", "(1 2)", "--budget-width", "2"]);
    assert_eq!(code, 3);
    assert_eq!(first(&report)["no_success_up_to"], 2);
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn spec_files_drive_commands() {
    let path = tmp("s5.spec");
    std::fs::write(
        &path,
        "# A5 extended by a transposition\nname S5-from-file\ndegree 5\ngen a (1 2 3)\ngen b (1 2 3 4 5)\ngen t (1 2)\nsocle a b\naut t\npi 2,3\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (report, code) = json(&["beta", "--spec", p, "--r", "5"]);
    assert_eq!(code, 0);
    assert_eq!(first(&report)["value"], 4);
    assert_eq!(first(&report)["group"], "S5-from-file");
    let (report, _) = json(&["alpha", "--spec", p, "--aut", "a"]);
    assert_eq!(first(&report)["value"], 2);
    let (report, _) = json(&["radical", "--spec", p]);
    assert_eq!(first(&report)["order"], "1");
    assert_eq!(first(&report)["pi"], "2,3");

    let bad = tmp("bad.spec");
    std::fs::write(&bad, "name x\ndegree 5\ngen a (1 2\n").unwrap();
    let out = run(&["radical", "--spec", bad.to_str().unwrap(), "--pi", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = run(&["radical", "--spec", tmp("missing.spec").to_str().unwrap(), "--pi", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let path = tmp("report.json");
    let out = run(&["radical", "--group", "S4", "--pi", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["experiment"], "radical");
    assert_eq!(report["provenance"]["budgets"]["max_width"], 12);
}

#[test]
fn text_output_uses_cycle_notation() {
    let out = run(&["beta", "--group", "A5", "--aut", "(1 2)", "--r", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("x=(1 2)"));
    assert!(text.contains("value=2"));
}
