use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

const FIG2: &str = "LLLLRRLRRLRLRLRRLRLR";

fn airpocket(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_airpocket"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn enumerate_air_5() {
    let o = airpocket(&["enumerate", "AIR", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "UUUUD4\nUUDUD2\nUUD2UD\nUDUUD2\n");
}

#[test]
fn enumerate_meanders_of_half_length_2() {
    let o = airpocket(&["enumerate", "MEANDER", "2"]);
    assert_eq!(stdout(&o), "LLLL\nLLRR\nLRRL\n");
}

#[test]
fn enumerate_empty_family_succeeds() {
    let o = airpocket(&["enumerate", "AIR", "1"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
}

#[test]
fn enumerate_json_lines() {
    let o = airpocket(&["enumerate", "AIR", "4", "--format", "json"]);
    let lines: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["steps"], serde_json::json!(["U", "U", "U", "D3"]));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&airpocket(&["enumerate", "AIR", "19"])), 2);
    assert_eq!(code(&airpocket(&["enumerate", "AIR", "30", "--max-n", "12"])), 2);
    assert_eq!(code(&airpocket(&["--bogus", "enumerate", "AIR", "3"])), 2);
    assert_eq!(code(&airpocket(&["enumerate", "NOPE", "3"])), 2);
    assert_eq!(code(&airpocket(&["series", "A", "--order", "3"])), 2);
    assert_eq!(code(&airpocket(&["render", "ascii", "UUD"])), 2);
}

#[test]
fn verify_tables_reports_json() {
    let o = airpocket(&["verify", "tables", "--max-n", "10", "--order", "16"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["pass"], true);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() >= 28);
    assert!(checks.iter().all(|c| c["name"].is_string() && c["bound"].is_string()));
}

#[test]
fn verify_bijections_with_small_bound() {
    let o = airpocket(&["verify", "bijections", "--max-n", "9", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("\"name\",\"bound\",\"pass\""));
    assert!(text.lines().skip(1).all(|l| l.contains("\"true\"")));
}

#[test]
fn render_ascii_path() {
    let o = airpocket(&["render", "ascii", "UUD2"]);
    assert_eq!(stdout(&o), " /|\n/ |\n");
}

#[test]
fn render_svg_path_is_standalone() {
    let svg = stdout(&airpocket(&["render", "svg", "UD"]));
    assert_eq!(svg.matches("<line").count(), 2);
    assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    assert!(!svg.contains("href"));
}

#[test]
fn render_meander_svg() {
    let svg = stdout(&airpocket(&["render", "svg", FIG2]));
    assert_eq!(svg.matches("class=\"arc-").count(), 20);
    let arcs: Vec<&str> = svg
        .lines()
        .filter(|l| l.contains("class=\"arc-"))
        .collect();
    assert!(arcs[..4].iter().all(|l| l.contains("arc-L")));
    assert!(arcs[4].contains("arc-R"));
}

#[test]
fn oeis_embedded_prefixes() {
    for id in ["A004148", "A203611", "A201631", "A000045"] {
        let o = airpocket(&["oeis", id]);
        assert_eq!(code(&o), 0, "{id}: {}", stdout(&o));
        let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(r["pass"], true);
        assert!(r["checked"].as_u64().unwrap() >= 9);
    }
    let o = airpocket(&["oeis", "A201631", "--k", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&airpocket(&["oeis", "A999999"])), 2);
}

#[test]
fn oeis_bfile_match_and_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    fs::write(&good, "# peak popularity\n2 1\n3 1\n4 3\n5 7\n\n6 16\n").unwrap();
    assert_eq!(code(&airpocket(&["oeis", "A203611", "--bfile", good.to_str().unwrap()])), 0);

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "2 1\n3 1\n4 3\n5 8\n").unwrap();
    let o = airpocket(&["oeis", "A203611", "--bfile", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["mismatch"]["index"], 5);
    assert_eq!(r["mismatch"]["computed"], "7");

    let broken = dir.path().join("broken.txt");
    fs::write(&broken, "2 1\n3 x\n").unwrap();
    assert_eq!(code(&airpocket(&["oeis", "A203611", "--bfile", broken.to_str().unwrap()])), 2);
    let gap = dir.path().join("gap.txt");
    fs::write(&gap, "2 1\n4 3\n").unwrap();
    assert_eq!(code(&airpocket(&["oeis", "A203611", "--bfile", gap.to_str().unwrap()])), 2);
}

#[test]
fn oeis_emit_writes_a_bfile() {
    let o = airpocket(&["oeis", "A000108", "--emit", "5"]);
    assert_eq!(stdout(&o), "0 1\n1 1\n2 2\n3 5\n4 14\n5 42\n");
}

#[test]
fn cache_round_trip_and_stale_entries() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["series", "Y_GEQ(2)", "--order", "12", "--format", "json"];
    let fresh = stdout(&airpocket(&args));
    let with_cache: Vec<&str> = args.iter().copied().chain(["--cache-dir", cache]).collect();
    let first = stdout(&airpocket(&with_cache));
    let second = stdout(&airpocket(&with_cache));
    assert_eq!(fresh, first);
    assert_eq!(first, second);

    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let file = &files[0];
    let mut entry: Value = serde_json::from_str(&fs::read_to_string(file).unwrap()).unwrap();
    let cached = &entry["value"];
    let shown: Value = serde_json::from_str(&fresh).unwrap();
    assert_eq!(cached, &shown["series"]);

    // A stale stamp with a corrupted value must be ignored and rewritten.
    entry["version"] = Value::from("0.0.0");
    entry["value"]["coeffs"][5] = serde_json::json!(["999", "1"]);
    fs::write(file, entry.to_string()).unwrap();
    assert_eq!(stdout(&airpocket(&with_cache)), fresh);
    let rewritten: Value = serde_json::from_str(&fs::read_to_string(file).unwrap()).unwrap();
    assert_ne!(rewritten["version"], "0.0.0");
}

#[test]
fn csv_integers_are_strings() {
    let o = airpocket(&["popularity", "AIR", "PEAK", "--max-n", "6", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "\"n\",\"popularity\"\n\"2\",\"1\"\n\"3\",\"1\"\n\"4\",\"3\"\n\"5\",\"7\"\n\"6\",\"16\"\n"
    );
}

#[test]
fn series_coefficient_query() {
    let o = airpocket(&["series", "POP_PEAK", "--coeff", "11"]);
    assert_eq!(stdout(&o), "1436\n");
    let o = airpocket(&["series", "A", "--route", "equation", "--order", "10", "--format", "csv"]);
    let last = stdout(&o).lines().last().unwrap().to_string();
    assert_eq!(last, "\"10\",\"185\"");
}

#[test]
fn distribution_of_peaks() {
    let o = airpocket(&["distribution", "AIR_INC", "7", "PEAK"]);
    // binomial C(5, 2k - 2) paths with k peaks
    assert_eq!(stdout(&o), "1 1\n2 10\n3 5\n");
}
