//! Check the corpus, or check `.hott` files on top of the kernel postulates
//! when given paths, and print the outcome.

use std::time::Instant;

use hottloop_core::check::{kernel_environment, CheckConfig};
use hottloop_core::{driver, stdlib};

fn main() {
    let files: Vec<String> = std::env::args().skip(1).collect();
    if files.is_empty() {
        let start = Instant::now();
        match stdlib::load(CheckConfig::default()) {
            Ok(env) => println!("ok: {} entries in {:?}", env.len(), start.elapsed()),
            Err(errors) => errors.iter().for_each(|e| println!("{e}")),
        }
        return;
    }
    for f in files {
        let text = std::fs::read_to_string(&f).unwrap();
        let mut env = kernel_environment();
        for d in driver::load_source(&mut env, &f, &text, CheckConfig::default()) {
            println!("{d}");
        }
    }
}
