//! End-to-end acceptance suite. Every criterion runs through the CLI entry
//! point and prints one PASS/FAIL line with its timing and limit.

#[path = "../../core/tests/support/property_checks.rs"]
mod property_checks;
#[path = "../../core/tests/support/s2_oracle.rs"]
mod s2_oracle;

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use coxgit_cli::parser::parse_poly;
use serde_json::Value;

const PROPERTY_CASES: u32 = 128;

fn coxgit(args: &[&str]) -> Result<String, String> {
    let mut argv = vec!["coxgit"];
    argv.extend_from_slice(args);
    let out = coxgit_cli::run(argv);
    if out.code != 0 {
        return Err(format!("`coxgit {}` exited {}: {}", args.join(" "), out.code, out.stderr.trim()));
    }
    Ok(out.stdout)
}

fn json(args: &[&str]) -> Result<Value, String> {
    let s = coxgit(args)?;
    serde_json::from_str(&s).map_err(|e| e.to_string())
}

/// Rows of a CSV document keyed by header name.
fn csv(args: &[&str]) -> Result<Vec<BTreeMap<String, String>>, String> {
    let mut a = args.to_vec();
    a.extend_from_slice(&["--format", "csv"]);
    let s = coxgit(&a)?;
    let mut lines = s.lines();
    let header: Vec<&str> = lines.next().ok_or("empty csv")?.split(',').collect();
    Ok(lines
        .map(|l| header.iter().map(|h| h.to_string()).zip(l.split(',').map(str::to_string)).collect())
        .collect())
}

fn int(row: &BTreeMap<String, String>, key: &str) -> i64 {
    row[key].parse().unwrap_or_else(|_| panic!("{key} = {:?}", row[key]))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// (chi, degree) -> dim from a `cox` CSV.
fn cox_table(args: &[&str]) -> Result<BTreeMap<(i64, i64), i64>, String> {
    Ok(csv(args)?.iter().map(|r| ((int(r, "chi"), int(r, "degree")), int(r, "dim"))).collect())
}

fn example_1_2_oracle(chi: i64, d: i64) -> i64 {
    // Free on a, b (weight 1, degree 1) and c/a (weight -2, degree 0).
    if d >= chi && (d - chi) % 2 == 0 {
        d + 1
    } else {
        0
    }
}

fn criterion_1() -> Result<(), String> {
    let doc = json(&["unstable", "example-1-2"])?;
    let strata = doc["result"]["strata"].as_array().ok_or("no strata")?;
    let hit = strata.iter().any(|s| {
        s["vanishing"] == serde_json::json!(["a", "b"])
            && s["ambient_codim"] == 2
            && s["codim_on_v"]["value"] == 1
    });
    ensure(hit, format!("stratum {{a = b = 0}} with codims 2/1 missing: {strata:?}"))?;

    let table = cox_table(&["cox", "example-1-2", "--chi-box=-4..4", "--max-degree", "8"])?;
    let golden: Value = serde_json::from_str(include_str!("golden/example_1_2_cox.json")).unwrap();
    let mut cells = 0;
    for row in golden["rows"].as_array().unwrap() {
        let chi = row["chi"][0].as_i64().unwrap();
        for (d, dim) in row["dims"].as_array().unwrap().iter().enumerate() {
            let (d, dim) = (d as i64, dim.as_i64().unwrap());
            ensure(dim == example_1_2_oracle(chi, d), format!("golden file disagrees with oracle at ({chi}, {d})"))?;
            ensure(table.get(&(chi, d)) == Some(&dim), format!("chi {chi}, degree {d}: got {:?}, want {dim}", table.get(&(chi, d))))?;
            cells += 1;
        }
    }
    ensure(cells == 81 && table.len() == 81, format!("{} cells compared, table has {}", cells, table.len()))
}

fn ambient_oracle(chi: i64, d: i64) -> i64 {
    if (d + chi) % 2 != 0 || d < chi.abs() {
        return 0;
    }
    let (p, q) = ((d + chi) / 2, (d - chi) / 2);
    (p + 1) * (q + 1)
}

fn criterion_2() -> Result<(), String> {
    let base = ["cox", "ambient-a4", "--chi-box=-3..3", "--max-degree", "6"];
    let fast = csv(&base)?;
    ensure(fast.iter().all(|r| r["path"] == "codim2-fast-path"), "fast path not taken")?;
    let mut oracle_args = base.to_vec();
    oracle_args.push("--oracle");
    let generic = csv(&oracle_args)?;
    ensure(generic.iter().all(|r| r["path"] == "generic"), "--oracle did not force the generic path")?;
    ensure(fast.len() == 49 && generic.len() == 49, "expected 7 x 7 cells")?;
    for (f, g) in fast.iter().zip(&generic) {
        let (chi, d) = (int(f, "chi"), int(f, "degree"));
        ensure((chi, d) == (int(g, "chi"), int(g, "degree")), "row order differs")?;
        let want = ambient_oracle(chi, d);
        ensure(int(f, "dim") == want && int(g, "dim") == want, format!("({chi}, {d}): fast {}, generic {}, want {want}", f["dim"], g["dim"]))?;
    }
    Ok(())
}

fn criterion_3() -> Result<(), String> {
    // (a, b, c, d) = (z1, z2, -w2, w1) sends ad - bc to z1 w1 + z2 w2.
    let hyper: Vec<String> = ["z1", "z2", "w1", "w2"].map(String::from).to_vec();
    let substituted = parse_poly("(z1)*(w1) - (z2)*(-w2)", &hyper).map_err(|e| e.to_string())?;
    let moment = parse_poly("z1*w1 + z2*w2", &hyper).map_err(|e| e.to_string())?;
    ensure(substituted == moment, "coordinate identification does not carry ad - bc to the moment map")?;

    let doc = json(&["cox", "hypertoric-A11", "--chi-box=0..0", "--max-degree", "2"])?;
    ensure(doc["result"]["variables"] == serde_json::json!(["z1", "z2", "w1", "w2"]), "unexpected variable order")?;

    let args = |p: &'static str| ["cox", p, "--chi-box=-4..4", "--max-degree", "8"];
    let hyper_table = cox_table(&args("hypertoric-A11"))?;
    let example = cox_table(&args("example-1-2"))?;
    ensure(hyper_table.len() == 81, "expected 9 x 9 cells")?;
    ensure(hyper_table == example, "hypertoric table differs from the ad - bc quadric table")
}

fn criterion_4() -> Result<(), String> {
    for (n, theta, deg) in [("1", "1", "8"), ("1", "2", "8"), ("2", "1", "4")] {
        let rows = csv(&["verify", "--n", n, "--theta", theta, "--max-degree", deg])?;
        let want_rows = deg.parse::<usize>().unwrap() + 1;
        ensure(rows.len() == want_rows, format!("n {n} theta {theta}: {} rows", rows.len()))?;
        for r in &rows {
            ensure(r["matches"] == "true" && r["adhm_dim"] == r["pullback_dim"], format!("n {n} theta {theta}: mismatch {r:?}"))?;
        }
        ensure(rows.iter().any(|r| int(r, "adhm_dim") > 0), format!("n {n} theta {theta}: all pieces empty"))?;
    }
    Ok(())
}

fn criterion_5() -> Result<(), String> {
    let rows = csv(&["hilb", "--n", "2", "--m=-3..3", "--box", "4,4"])?;
    ensure(rows.len() == 7 * 25, format!("{} rows", rows.len()))?;
    let oracle = s2_oracle::Oracle::new(3, 4, 4);
    let mut table = BTreeMap::new();
    for r in &rows {
        let (m, a, b, dim) = (int(r, "m"), int(r, "a") as u32, int(r, "b") as u32, int(r, "dim") as usize);
        let want = oracle.dim(m, a, b);
        ensure(dim == want, format!("A^{m} at ({a}, {b}): got {dim}, brute force {want}"))?;
        table.insert((m, a, b), dim);
    }
    for (&(m, a, b), &dim) in table.iter().filter(|(k, _)| k.0 < 0) {
        let base = m.rem_euclid(2);
        ensure(table[&(base, a, b)] == dim, format!("parity rule fails at m {m}, ({a}, {b})"))?;
    }
    Ok(())
}

/// Semistandard tableaux of shape 2 x l with entries in 1..=4: the degree-l
/// piece of the Plücker ring of Gr(2, 4).
fn ssyt_two_rows(l: usize) -> usize {
    fn rows(len: usize, lo: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=4 {
            cur.push(v);
            rows(len, v, out, cur);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    rows(l, 1, &mut all, &mut Vec::new());
    let mut count = 0;
    for top in &all {
        for bottom in &all {
            if top.iter().zip(bottom).all(|(t, b)| t < b) {
                count += 1;
            }
        }
    }
    count
}

fn criterion_6() -> Result<(), String> {
    let rows = csv(&["quiver-sl", "gr24-quiver", "--chi-box", "1..2", "--max-degree", "4"])?;
    let dims: BTreeMap<(i64, i64), i64> = rows.iter().map(|r| ((int(r, "chi"), int(r, "degree")), int(r, "dim"))).collect();
    for l in [1i64, 2] {
        let want = ssyt_two_rows(l as usize) as i64;
        ensure(want == [6, 20][l as usize - 1], "tableau oracle is off")?;
        for d in 0..=4 {
            let expect = if d == 2 * l { want } else { 0 };
            ensure(dims.get(&(l, d)) == Some(&expect), format!("level {l}, degree {d}: got {:?}, want {expect}", dims.get(&(l, d))))?;
        }
    }

    let doc = json(&["quiver-sl", "det-quiver", "--chi-box", "1..1", "--bases", "--max-degree", "2"])?;
    let names: Vec<String> = doc["result"]["variables"]
        .as_array()
        .ok_or("no variables")?
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    let bases = &doc["result"]["rows"][0]["bases"];
    ensure(bases[0].as_array().map_or(false, |b| b.is_empty()) && bases[1].as_array().map_or(false, |b| b.is_empty()), "sections below degree 2")?;
    let top = bases[2].as_array().ok_or("no degree-2 basis")?;
    ensure(top.len() == 1, format!("degree-2 piece has dim {}", top.len()))?;
    let got = parse_poly(top[0].as_str().unwrap(), &names).map_err(|e| e.to_string())?;
    let det = parse_poly("m1_1_1*m2_2_1 - m1_2_1*m2_1_1", &names).map_err(|e| e.to_string())?;
    ensure(got == det || got == det.neg(), format!("degree-2 generator {} is not the determinant", top[0]))
}

fn criterion_7() -> Result<(), String> {
    let checks: [(&str, fn(u32) -> Result<(), String>); 7] = [
        ("echelon idempotence and order", property_checks::echelon_idempotent_and_order_free),
        ("weight additivity", property_checks::weight_additivity),
        ("support monotonicity", property_checks::support_monotonicity),
        ("A^(m+2) in A^m", property_checks::alternant_powers_nest),
        ("restriction injectivity", property_checks::restriction_injective),
        ("witness independence", property_checks::witness_independence),
        ("parse/print round trip", roundtrip::parse_print_round_trip),
    ];
    for (name, check) in checks {
        check(PROPERTY_CASES).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Result<(), String>, Duration); 7] = [
        ("1 quadric ad - bc: strata and Cox table", criterion_1, Duration::from_secs(60)),
        ("2 codim-two fast path vs generic path", criterion_2, Duration::from_secs(60)),
        ("3 hypertoric A = (1 1)", criterion_3, Duration::from_secs(60)),
        ("4 ADHM vs alternant pullbacks", criterion_4, Duration::from_secs(300)),
        ("5 Hilb^2 twisted pieces", criterion_5, Duration::from_secs(60)),
        ("6 quiver flag semi-invariants", criterion_6, Duration::from_secs(120)),
        ("7 property suites", criterion_7, Duration::from_secs(600)),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let line = match (&outcome, took <= limit) {
            (Ok(()), true) => format!("PASS criterion {name} ({:.2}s, limit {}s)\n", took.as_secs_f64(), limit.as_secs()),
            (Ok(()), false) => format!("FAIL criterion {name} ({:.2}s, over limit {}s)\n", took.as_secs_f64(), limit.as_secs()),
            (Err(e), _) => format!("FAIL criterion {name} ({:.2}s): {e}\n", took.as_secs_f64()),
        };
        err.write_all(line.as_bytes()).unwrap();
        if !line.starts_with("PASS") {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
