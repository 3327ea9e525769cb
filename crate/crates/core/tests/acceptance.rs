//! Runs every acceptance criterion of the full suite and prints one line each.

use std::process::Command;

use discgeom::verify::{run_criterion, Suite, CRITERIA};

fn cli_determinism() -> Result<bool, String> {
    let run = || -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_discgeom"))
            .args(["disc", "--domain", "dangelo", "--point", "0;0;0", "--direction", "0;0;1", "--k", "6"])
            .args(["--delta-min", "1e-6", "--delta-max", "1e-4", "--delta-steps", "6"])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(String::from_utf8_lossy(&out.stderr).into_owned());
        }
        Ok(out.stdout)
    };
    Ok(run()? == run()?)
}

fn main() {
    let mut failed = Vec::new();
    for c in CRITERIA.iter() {
        let res = run_criterion(c.id, Suite::Full, &cli_determinism);
        println!("{}", res.line());
        for d in &res.details {
            println!("        {d}");
        }
        if !res.pass {
            failed.push(res.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
