use std::process::ExitCode;

use serde_json::json;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match jonescope::run_args(argv) {
        Ok((_, outcome)) if outcome.passed => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            if let Some(c) = e.downcast_ref::<clap::Error>() {
                let code = c.exit_code();
                let _ = c.print();
                return ExitCode::from(if code == 0 { 0 } else { 2 });
            }
            let diag = json!({"error": format!("{e:#}"), "chain": e.chain().map(|c| c.to_string()).collect::<Vec<_>>()});
            eprintln!("{diag}");
            ExitCode::from(3)
        }
    }
}
