//! Render the auxiliary graph of a sign sequence as Graphviz DOT.
//!
//!     cargo run --example export_dot -- "+++--" | dot -Tsvg > g.svg

use pretzel_slice::{AuxGraph, SignSeq};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let arg = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "+-+-+".to_string());
    let seq: SignSeq = arg.parse()?;
    let graph = AuxGraph::build(&seq)?;
    print!("{}", graph.to_dot());
    eprintln!("{:?}", graph.is_path());
    Ok(())
}
