use clap::error::ErrorKind;
use clap::Parser;
use multilayer_layout::cli::{run, Cli, EXIT_PARSE};

fn fail(code: i32, message: &str) -> ! {
    eprintln!("error: {}", message.trim().replace('\n', " "));
    std::process::exit(code);
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            // usage errors share the input-error code; 2 is reserved for layering
            let text = e.to_string();
            let first = text.lines().next().unwrap_or_default();
            fail(
                EXIT_PARSE,
                &format!("{} (see --help)", first.trim_start_matches("error: ")),
            );
        }
    };
    if let Err(e) = run(&cli) {
        fail(e.code, &e.message);
    }
}
