//! Runs the ten acceptance criteria with the default seed and sample counts
//! and prints one line per criterion.

use std::process::ExitCode;

use chowwitt::suite::{self, SuiteConfig, CHECK_COUNT};

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let mut failed = 0;
    for id in 1..=CHECK_COUNT {
        match suite::run_check(id, &cfg) {
            Ok(r) => {
                println!("{}", r.summary_line());
                if !r.pass {
                    println!("    detail: {}", r.detail);
                    failed += 1;
                } else if r.elapsed > r.budget {
                    println!("    over budget");
                    failed += 1;
                }
            }
            Err(e) => {
                println!("criterion {id:>2} {:<28} FAIL error: {e}", suite::check_name(id));
                failed += 1;
            }
        }
    }
    println!("acceptance: {} of {CHECK_COUNT} criteria passed", CHECK_COUNT - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
