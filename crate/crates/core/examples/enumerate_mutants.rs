//! Certify every odd pretzel mutant with 2n+1 twist boxes, in parallel.
//!
//!     cargo run --release --example enumerate_mutants -- 8

use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;

use pretzel_slice::sequence::binomial;
use pretzel_slice::{certify, enumerate_balanced, Mode, SignSeq};

fn main() {
    let max_n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(6);
    for n in 0..=max_n {
        let t = Instant::now();
        let seqs: Vec<SignSeq> = enumerate_balanced(n, Mode::OddKnot).collect();
        let certified = seqs
            .par_iter()
            .filter(|s| certify(s).is_ok_and(|c| c.verdict.is_certified()))
            .count();
        let classes: HashSet<SignSeq> = seqs.iter().map(|s| s.canonical_form().0).collect();
        println!(
            "n = {n:>2}: {certified:>7}/{:<7} certified  {:>6} dihedral classes  {:.2?}",
            binomial(2 * n as u64 + 1, n as u64),
            classes.len(),
            t.elapsed()
        );
    }
}
