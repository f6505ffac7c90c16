//! Check that the auxiliary graph is a path for every odd sequence up to a
//! bound, and that the staged and gap-balance pairings agree.
//!
//!     cargo run --release --example path_theorem -- 10

use rayon::prelude::*;

use pretzel_slice::{
    enumerate_balanced, pair_balanced, pair_iterative, AuxGraph, Direction, Mode, SignSeq,
};

fn main() {
    let max_n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(8);
    for n in 0..=max_n {
        let seqs: Vec<SignSeq> = enumerate_balanced(n, Mode::OddKnot).collect();
        let bad: Vec<&SignSeq> = seqs
            .par_iter()
            .filter(|s| {
                let path = AuxGraph::build(s).unwrap().is_path().is_path();
                let agree = [Direction::Ccw, Direction::Cw]
                    .iter()
                    .all(|&d| pair_iterative(s, d).unwrap() == pair_balanced(s, d).unwrap());
                !(path && agree)
            })
            .collect();
        println!(
            "m = {:>2}: {} sequences, {} counterexamples",
            2 * n + 1,
            seqs.len(),
            bad.len()
        );
        for s in bad {
            println!("  {s}");
        }
    }
}
