use std::process::ExitCode;

use jonescope::suites::{run_one, Overrides, NAMES};

fn main() -> ExitCode {
    let o = Overrides::default();
    let mut unexpected = 0;
    for name in NAMES {
        match run_one(name, &o) {
            Ok(r) => {
                let tag = if r.documented_failure() { " [documented]" } else { "" };
                println!("{}{tag}", r.line());
                if !r.passed && !r.documented_failure() {
                    unexpected += 1;
                }
            }
            Err(e) => {
                println!("FAIL {name}: {e:#}");
                unexpected += 1;
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
