//! Even-length pretzel links: try every pair of dropped bands and report
//! which sign patterns admit a band system passing the bookkeeping.
//!
//!     cargo run --release --example link_conjecture -- 5

use pretzel_slice::links::explore_link_case;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(4);
    for n in 1..=max_n {
        let report = explore_link_case(n)?;
        print!("{}", report.to_text());
        let blocked = report
            .sequences
            .iter()
            .filter(|r| r.blocked_by_residual)
            .count();
        println!("  {blocked} sequences pass only if the residual P(a,-a) is miscounted\n");
    }
    Ok(())
}
