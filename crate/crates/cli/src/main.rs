use std::process::ExitCode;

fn main() -> ExitCode {
    let result = gabinv::run(std::env::args_os());
    if result.command == "help" {
        print!("{}", result.outputs["text"].as_str().unwrap_or_default());
        return ExitCode::SUCCESS;
    }
    println!("{}", result.to_json());
    eprint!("{}", result.summary());
    ExitCode::from(result.exit_code() as u8)
}
