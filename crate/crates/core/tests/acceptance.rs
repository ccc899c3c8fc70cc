//! Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
//! The X(32;12,61) criterion runs when `HALFARC_BIG=1` is set.

use std::process::ExitCode;

use halfarc::verify;

fn main() -> ExitCode {
    let big = std::env::var("HALFARC_BIG").is_ok_and(|v| v == "1");
    let results = verify::run_all(big, 0);
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.ok()).map(|r| r.id).collect();
    if failed.is_empty() {
        println!("acceptance: {} criteria passed", results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
