use flagtriad::cli::{evaluate, render, run, Format};
use serde_json::Value;

fn eval(args: &[&str]) -> Value {
    let mut full = vec!["flagtriad"];
    full.extend_from_slice(args);
    evaluate(full).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

fn code(args: &[&str]) -> i32 {
    let mut full = vec!["flagtriad"];
    full.extend_from_slice(args);
    run(full)
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_owned()).collect()
}

#[test]
fn roots_counts() {
    for (family, rank, count) in [("A", 3, 12), ("B", 3, 18), ("C", 4, 32), ("D", 4, 24), ("G", 2, 12), ("F", 4, 48), ("E", 6, 72)] {
        let v = eval(&["roots", "--family", family, "--rank", &rank.to_string()]);
        assert_eq!(v["count"], count, "{family}{rank}");
    }
}

#[test]
fn regular_reports_the_violating_root() {
    let v = eval(&["regular", "--pair", "su2n-so-sp", "--n", "3", "--H", "1/4,0,-1/4"]);
    assert_eq!(v["regular"], false);
    let viol = &v["violations"][0];
    assert_eq!(viol["class"], "ii");
    assert_eq!(viol["pairing"], "1/2");
    assert_eq!(strings(&viol["root"]), ["1", "0", "-1"]);

    let v = eval(&["regular", "--pair", "su2n-so-sp", "--n", "3", "--H", "1/7,1/11,-18/77"]);
    assert_eq!(v["regular"], true);
}

#[test]
fn rank_one_grid() {
    for (q, in_gamma) in [("0", true), ("1/2", true), ("3/2", true), ("1/4", false), ("1/3", false)] {
        let v = eval(&["gamma", "--pair", "su-n-so-rank1", "--n", "4", "--H", q]);
        assert_eq!(v["in_gamma"], in_gamma, "q = {q}");
    }
    let v = eval(&["intersect", "--pair", "su-n-so-rank1", "--n", "4", "--H", "1/3", "--x0", "1"]);
    assert_eq!(v["kind"], "Discrete");
    assert_eq!(v["cardinality"], 2);
    let v = eval(&["intersect", "--pair", "su-n-so-rank1", "--n", "4", "--H", "1/4", "--x0", "1"]);
    assert_eq!(v["kind"], "Continuum");
}

#[test]
fn intersection_counts_permutations() {
    // x0 = (1, 0, -1): all 3! orderings
    let v = eval(&["intersect", "--pair", "su2n-so-sp", "--n", "3", "--H", "1/7,1/11,-18/77", "--x0", "1,0,-1"]);
    assert_eq!(v["cardinality"], 6);
    assert_eq!(v["points"].as_array().unwrap().len(), 6);
    let v = eval(&["tight", "--pair", "su2n-so-sp", "--n", "3"]);
    assert_eq!(v["count"], v["sb_reference"]);
}

#[test]
fn st_point_is_regular_and_in_gamma() {
    let v = eval(&["st-point", "--pair", "su2n-so-sp", "--n", "3", "--order", "7"]);
    assert_eq!(v["regular"], true);
    assert_eq!(v["n_H0_in_gamma"], true);
    assert_eq!(strings(&v["H0"]), ["1/14", "0", "-1/14"]);
}

#[test]
fn antipodal_set_of_a2() {
    let v = eval(&["antipodal", "--family", "A", "--rank", "2", "--x0", "1,0,-1"]);
    assert_eq!(v["count"], 6);
}

#[test]
fn emitted_triad_reloads_from_file() {
    let dir = std::env::temp_dir().join(format!("flagtriad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("triad.json");
    let doc = flagtriad::triads::exchange::emit_triad(
        flagtriad::flags::catalogue::lookup("su2n-so-sp", Some(3)).unwrap().triad().unwrap(),
    );
    std::fs::write(&path, doc).unwrap();
    let p = path.to_str().unwrap();
    let from_file = eval(&["cell", "--triad-file", p]);
    let builtin = eval(&["cell", "--pair", "su2n-so-sp", "--n", "3"]);
    assert_eq!(from_file, builtin);
    assert_eq!(code(&["triad", "--triad-file", p, "--emit"]), 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn table_rendering_flattens_fields() {
    let v = eval(&["gamma", "--pair", "su-n-so-rank1", "--n", "4", "--H", "1/2"]);
    let text = render(&v, Format::Table);
    assert!(text.contains("in_gamma"));
    assert!(text.contains("true"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["gamma", "--pair", "su-n-so-rank1", "--n", "4", "--H", "1/2"]), 0);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["gamma", "--pair", "su-n-so-rank1"]), 2);
    assert_eq!(code(&["gamma", "--pair", "no-such-pair", "--H", "0"]), 1);
    assert_eq!(code(&["regular", "--pair", "su2n-so-sp", "--n", "3", "--H", "1/2"]), 1);
    assert_eq!(code(&["intersect", "--pair", "su2n-so-sp", "--n", "3", "--H", "1/7,1/11,-18/77", "--x0", "0,0,0"]), 1);
    assert_eq!(code(&["regular", "--pair", "su2n-so-sp", "--n", "3", "--H", "1/x"]), 1);
}

#[test]
fn congruent_pair_has_no_triad() {
    assert_eq!(code(&["cell", "--pair", "su-n-so", "--n", "3"]), 1);
}
