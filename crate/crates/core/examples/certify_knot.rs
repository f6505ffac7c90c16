//! Build both band sets for one odd pretzel and print its certificate.
//!
//!     cargo run --example certify_knot -- "+++--"
//!     cargo run --example certify_knot -- "+++--" --json

use pretzel_slice::cli::cmd_certify_text;
use pretzel_slice::{certify, SignSeq};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let seq: SignSeq = args.next().unwrap_or_else(|| "+++--".into()).parse()?;
    let cert = certify(&seq)?;
    if args.any(|a| a == "--json") {
        println!("{}", cert.to_json());
    } else {
        print!("{}", cmd_certify_text(&cert, 3));
    }
    Ok(())
}
