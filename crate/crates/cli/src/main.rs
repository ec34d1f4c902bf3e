use clap::Parser;

fn main() {
    let cli = match ffdyn::args::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(ffdyn::run_and_write(&cli));
}
