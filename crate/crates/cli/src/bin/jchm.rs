use std::process::ExitCode;

fn main() -> ExitCode {
    match jchm_cli::run(std::env::args_os()) {
        Ok(jchm_cli::Outcome::Print(s)) => {
            println!("{}", s.trim_end());
            ExitCode::SUCCESS
        }
        Ok(jchm_cli::Outcome::Written(summary)) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
