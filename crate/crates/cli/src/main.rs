use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use quatlab::manifest::{digest, versions};
use quatlab::{run, Cli, CliError, RunManifest};

fn config_of(cli: &Cli) -> serde_json::Value {
    serde_json::json!({
        "args": format!("{:?}", cli.command),
        "samples": cli.samples,
        "max_total": cli.max_total,
        "format": format!("{:?}", cli.format).to_lowercase(),
        "mode": cli.mode.map(|m| format!("{m:?}").to_lowercase()),
        "tolerance": cli.tolerance,
    })
}

fn render_error(e: &CliError) -> String {
    serde_json::to_string_pretty(&e.to_json()).expect("error serializes")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or_default().trim_start_matches("error: ");
            eprint!("{e}");
            println!("{}", render_error(&CliError::input(first)));
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    let (text, code) = match run(&cli) {
        Ok(out) => {
            let code = out.exit_code();
            (out.text, code)
        }
        Err(e) => (render_error(&e) + "\n", 2),
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    if let Some(path) = &cli.manifest {
        let m = RunManifest {
            command: cli.command.name().into(),
            seed: cli.seed,
            config: config_of(&cli),
            versions: versions(),
            wall_clock_s: start.elapsed().as_secs_f64(),
            exit_code: code,
            result_digest: digest(text.as_bytes()),
        };
        if let Err(e) = m.write(path) {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code as u8)
}
