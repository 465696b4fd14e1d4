use clap::Parser;
use coxbij::cli::{run, CommandConfig};
use std::io::Read;

fn main() {
    let config = CommandConfig::parse();
    let input = match config.command.input_path() {
        Some("-") => {
            let mut buf = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                eprintln!("error: failed to read stdin: {e}");
                std::process::exit(2);
            }
            buf
        }
        Some(path) => match std::fs::read_to_string(path) {
            Ok(buf) => buf,
            Err(e) => {
                eprintln!("error: failed to read {path}: {e}");
                std::process::exit(2);
            }
        },
        None => String::new(),
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = run(&config, &input, &mut out);
    std::process::exit(code);
}
