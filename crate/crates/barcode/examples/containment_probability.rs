//! Monte-Carlo estimate of the probability that a random probe of length k
//! occurs in a random sequence of length L, against the Poisson-style guide
//! 1 - exp(-(L - k + 1) / 4^k). For k around log4(L) the probability sits
//! strictly between 0 and 1, which is why short probes make useful
//! distinguisher candidates in bulk.
//!
//! Run with: cargo run --release --example containment_probability

use barcode::random::containment_probability;

fn main() {
    let length = 10_000;
    let trials = 4_000;
    println!("sequence length {length}, {trials} trials per point");
    println!("  k   estimate   1-exp(-(L-k+1)/4^k)");
    for k in [2usize, 4, 6, 7, 8, 9, 10, 12] {
        let estimate = containment_probability(length, k, trials, 42);
        let windows = (length - k + 1) as f64;
        let guide = 1.0 - (-windows / 4f64.powi(k as i32)).exp();
        println!("{k:3}   {estimate:.4}     {guide:.4}");
    }
}
