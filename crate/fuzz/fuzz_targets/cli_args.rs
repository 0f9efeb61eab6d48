#![no_main]

use clap::Parser;
use cyclofactor_cli::{Cli, Command};
use libfuzzer_sys::fuzz_target;

// Parses the input as NUL-separated arguments. Only argument parsing and
// validation run; factoring is skipped for inputs that would be slow.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let args = std::iter::once("cyclofactor").chain(text.split('\0'));
    let Ok(cli) = Cli::try_parse_from(args) else {
        return;
    };
    let cheap = match &cli.command {
        Command::Factor(a) | Command::Cyclotomic(a) => {
            a.output.out.is_none() && a.q < 1 << 12 && a.n <= 8 && a.d.is_none_or(|d| d < 1 << 8)
        }
        Command::Subgroup(a) => a.output.out.is_none() && a.q < 1 << 14,
        Command::Examples(a) => a.output.out.is_none(),
    };
    if cheap {
        let _ = cyclofactor_cli::execute(&cli);
    }
});
