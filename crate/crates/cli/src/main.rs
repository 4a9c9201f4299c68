use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use veronese_kit::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let result = cli.command.run();
    for line in &result.log {
        log::info!("{line}");
    }
    if result.exit_code() != 0 {
        if let Some(last) = result.log.last() {
            eprintln!("{last}");
        }
    }
    let mut out = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = out.write_all(result.render().as_bytes());
    ExitCode::from(result.exit_code() as u8)
}
