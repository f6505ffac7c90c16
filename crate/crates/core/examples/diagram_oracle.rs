//! Cross-check the certificate's component bookkeeping against literal
//! band surgery, stage by stage, for one sequence.
//!
//!     cargo run --example diagram_oracle -- "+--++-+"

use pretzel_slice::crosscheck::check_knot;
use pretzel_slice::SignSeq;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seq: SignSeq = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "+--++-+".into())
        .parse()?;
    let check = check_knot(&seq)?;
    for dir in [&check.ab, &check.ba] {
        println!("{} bands first: {:?}", dir.first, dir.first_counts);
        println!("  then surgery   {:?}", dir.diagram_counts);
        println!("  bookkeeping    {:?}", dir.predicted_counts);
        println!("  blocks agree   {:?}", dir.blocks_agree);
    }
    println!("agree: {}", check.agrees());
    Ok(())
}
