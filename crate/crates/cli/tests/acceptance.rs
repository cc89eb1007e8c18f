//! Acceptance suite: one PASS/FAIL line per criterion, with timing against
//! its budget. Exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bubble_core::cell::{dim_delta, enumerate_lambda, radical_series};
use bubble_core::checks::{self, CheckResult};
use bubble_core::multicolour::count_bubble_basis;
use bubble_core::{ParameterSpec, RootOrder, WeightLambda};
use serde_json::Value;

#[rustfmt::skip]
const D_BLOCKS: [&[&[u32]]; 3] = [
    &[&[1, 1, 1, 0, 0], &[0, 1, 0, 1, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 1], &[0, 0, 0, 0, 1]],
    &[&[1, 1], &[0, 1]],
    &[&[1, 1, 1, 0, 1], &[0, 1, 0, 1, 1], &[0, 0, 1, 0, 1], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]],
];

#[rustfmt::skip]
const C_BLOCKS: [&[&[u32]]; 3] = [
    &[&[1, 1, 1, 0, 0], &[1, 2, 1, 1, 0], &[1, 1, 2, 0, 0], &[0, 1, 0, 2, 1], &[0, 0, 0, 1, 2]],
    &[&[1, 1], &[1, 2]],
    &[&[1, 1, 1, 0, 1], &[1, 2, 1, 1, 2], &[1, 1, 2, 0, 2], &[0, 1, 0, 2, 1], &[1, 2, 2, 1, 4]],
];

fn spec(items: &[&str]) -> ParameterSpec {
    ParameterSpec::parse_list(items).expect("valid parameters")
}

fn to_rows(v: &Value) -> Vec<Vec<u32>> {
    v.as_array()
        .expect("matrix rows")
        .iter()
        .map(|r| r.as_array().expect("row").iter().map(|x| x.as_u64().expect("count") as u32).collect())
        .collect()
}

fn fixed(m: &[&[u32]]) -> Vec<Vec<u32>> {
    m.iter().map(|r| r.to_vec()).collect()
}

fn run_cli(command: &str) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_bubble"))
        .args([command, "-n", "6", "-m", "2", "--delta", "root:2", "--delta", "root:4", "--order", "paper-6-2"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn compare_blocks(v: &Value, want: &[&[&[u32]]; 3]) -> CheckResult {
    let blocks = v["blocks"].as_array().ok_or("no blocks in output")?;
    let sizes: Vec<usize> = blocks.iter().map(|b| b["rows"].as_array().map_or(0, Vec::len)).collect();
    if sizes != [5, 2, 5, 1, 1, 1, 1] {
        return Err(format!("block sizes {sizes:?}"));
    }
    for (k, w) in want.iter().enumerate() {
        let got = to_rows(&blocks[k]["entries"]);
        if got != fixed(w) {
            return Err(format!("block {k}: got {got:?}"));
        }
    }
    for b in &blocks[3..] {
        if to_rows(&b["entries"]) != [[1]] {
            return Err(format!("singleton block {}", b["entries"]));
        }
    }
    Ok(())
}

fn golden_decomposition() -> CheckResult {
    compare_blocks(&run_cli("decomp")?, &D_BLOCKS)
}

fn golden_cartan() -> CheckResult {
    let c = run_cli("cartan")?;
    compare_blocks(&c, &C_BLOCKS)?;
    // D^T D recomputed here from the emitted D.
    let d = to_rows(&run_cli("decomp")?["entries"]);
    let k = d.len();
    let dtd: Vec<Vec<u32>> =
        (0..k).map(|i| (0..k).map(|j| (0..k).map(|r| d[r][i] * d[r][j]).sum()).collect()).collect();
    if dtd != to_rows(&c["entries"]) {
        return Err("Cartan output differs from D^T D".into());
    }
    Ok(())
}

fn gram_factorization() -> CheckResult {
    for n in 0..=5 {
        for w in enumerate_lambda(n, 2) {
            checks::gram_factorization(&w)?;
            checks::gram_determinant(&w, 64)?;
        }
    }
    Ok(())
}

fn rank_head() -> CheckResult {
    let point = spec(&["root:2", "root:4"]);
    let big = WeightLambda::new(6, vec![0, 0]).map_err(|e| e.to_string())?;
    if dim_delta(&big) != 70 {
        return Err(format!("dim of (0,0) at n=6 is {}", dim_delta(&big)));
    }
    let mut seen_big = false;
    for n in 0..=6 {
        for w in enumerate_lambda(n, 2) {
            seen_big |= w == big;
            checks::rank_matches_head(&w, &point)?;
        }
    }
    if !seen_big {
        return Err("the 70-dimensional module was not visited".into());
    }
    Ok(())
}

fn semisimple() -> CheckResult {
    let point = spec(&["3", "3"]);
    for n in 0..=6 {
        for w in enumerate_lambda(n, 2) {
            checks::full_rank_at(&w, &point)?;
        }
    }
    Ok(())
}

fn cellular_dimension() -> CheckResult {
    for n in 0..=6 {
        for m in 1..=3 {
            let formula: usize = enumerate_lambda(n, m).iter().map(|w| dim_delta(w).pow(2)).sum();
            let counted = count_bubble_basis(n, m);
            if formula != counted {
                return Err(format!("n={n} m={m}: {formula} from dimensions, {counted} enumerated"));
            }
        }
    }
    Ok(())
}

fn associativity() -> CheckResult {
    let mut triples = 0;
    for n in 1..=5 {
        for m in 1..=3 {
            checks::associativity(n, m, 70, (100 * n + m) as u64)?;
            triples += 70;
            if count_bubble_basis(n, m) <= 5000 {
                checks::identity_is_unit(n, m)?;
            } else {
                checks::identity_sampled(n, m, 500, n as u64)?;
            }
        }
    }
    if triples < 1000 {
        return Err(format!("only {triples} triples"));
    }
    Ok(())
}

fn radical_layers() -> CheckResult {
    let orders = spec(&["root:2", "root:4"]).orders().map_err(|e| e.to_string())?;
    for n in 0..=6 {
        for w in enumerate_lambda(n, 2) {
            checks::radical_layers(&w, &orders)?;
        }
    }
    let w = |l: [usize; 2]| WeightLambda::new(6, l.to_vec()).expect("weight");
    let layers = radical_series(&w([0, 2]), &orders).map_err(|e| e.to_string())?;
    let want = vec![vec![w([0, 2])], vec![w([2, 2]), w([0, 4])], vec![w([2, 4])]];
    if layers != want {
        return Err(format!("layers of (0,2): {layers:?}"));
    }
    Ok(())
}

fn parity() -> CheckResult {
    (0..=5).try_for_each(checks::parity_splitting)
}

fn tl_layers() -> CheckResult {
    for l in [2, 3, 4] {
        let order = RootOrder::new(l).map_err(|e| e.to_string())?;
        for n in 0..=6 {
            checks::tl_radical(n, order)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> CheckResult); 10] = [
        ("golden decomposition matrix", 1, golden_decomposition),
        ("golden Cartan matrix", 1, golden_cartan),
        ("Gram factorisation and determinant, n <= 5", 120, gram_factorization),
        ("rank equals head dimension, n <= 6", 600, rank_head),
        ("full rank at (3,3), n <= 6", 300, semisimple),
        ("cellular dimension identity, n <= 6, m <= 3", 60, cellular_dimension),
        ("associativity and identity", 60, associativity),
        ("radical series layers", 60, radical_layers),
        ("even/odd splitting, n <= 5", 60, parity),
        ("TL radical dimensions, l in {2,3,4}", 120, tl_layers),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(()) if took > Duration::from_secs(*budget) => Err(format!("over the {budget}s budget")),
            other => other,
        };
        match outcome {
            Ok(()) => println!("PASS [{}] {name} (exact, {:.2}s)", i + 1, took.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL [{}] {name} (exact, {:.2}s): {e}", i + 1, took.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
