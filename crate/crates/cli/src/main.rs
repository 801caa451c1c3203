use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, report) = semitree_cli::run(std::env::args_os());
    let text = report.render();
    if report.output.is_none() || report.error.is_some() || report.raw.is_some() {
        let mut out: Box<dyn Write> = if code == 2 { Box::new(std::io::stderr()) } else { Box::new(std::io::stdout()) };
        let _ = out.write_all(text.as_bytes());
    }
    ExitCode::from(code as u8)
}
