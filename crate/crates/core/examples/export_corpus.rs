//! Writes the built-in corpus as spec files: `export_corpus <dir>`.

use std::path::PathBuf;

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    match quotsing_core::lab::corpus::export(&dir) {
        Ok(n) => println!("wrote {n} files under {}", dir.display()),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
