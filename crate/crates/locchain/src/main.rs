use std::process::exit;

fn main() {
    exit(locchain::cli::main_entry());
}
