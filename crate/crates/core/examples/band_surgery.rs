//! Perform the band moves of both band sets literally on the arc-splice
//! diagram and print the component count after every band.
//!
//!     cargo run --example band_surgery -- "++--+"
//!     cargo run --example band_surgery -- "++--+" --dump

use pretzel_slice::{feet_placement, pair_iterative, Direction, SignSeq, SpliceDiagram};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let seq: SignSeq = args.next().unwrap_or_else(|| "+-+-+".into()).parse()?;
    let dump = args.any(|a| a == "--dump");

    let mut diagram = SpliceDiagram::build(&seq);
    println!(
        "{seq}: {} component(s) before surgery",
        diagram.count_components()
    );
    for direction in [Direction::Ccw, Direction::Cw] {
        let matching = pair_iterative(&seq, direction)?;
        for feet in feet_placement(&matching) {
            diagram = diagram.apply_band(&feet)?;
            println!(
                "  {direction} band {} at {} / {} -> {} component(s)",
                feet.band,
                feet.sites[0],
                feet.sites[1],
                diagram.count_components()
            );
        }
        if dump && direction == Direction::Ccw {
            print!("{}", diagram.dump());
        }
    }
    Ok(())
}
