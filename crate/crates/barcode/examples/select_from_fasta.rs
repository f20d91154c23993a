//! End-to-end selection on a small FASTA instance: parse, generate
//! candidates, pick distinguishers greedily, and print the barcode of each
//! sequence.
//!
//! Run with: cargo run --release --example select_from_fasta

use barcode::candidates::{generate_candidates, GenerationConfig};
use barcode::fasta::parse_fasta_str;
use barcode::select::{select_greedy, verify_solution, SelectionConfig};

const FASTA: &str = "\
>coli_fragment
atgaccatgattacggattcactggccgtcgttttacaacgtcgtgactgggaaaaccct
>subtilis_fragment
atgagaaagtcaattacggcatcactggccgtataggccaacgtcgtgactggctttgcc
>phage_fragment
gtgaaacgtccgattacggattgactggccttcgttttacaacttggtgactgggtaccc
>plasmid_fragment
atgaccatcattacggattcacaggccgtcgttttacttcgtcgtgtctgggaaaaatct
";

fn main() {
    let instance = parse_fasta_str(FASTA).expect("embedded FASTA is valid");
    let pool = generate_candidates(&instance, &GenerationConfig::default()).unwrap();
    let solution = select_greedy(&pool, &instance, &SelectionConfig::default()).unwrap();

    println!(
        "{} sequences, {} candidates, {} matches",
        instance.n(),
        pool.stats.candidates,
        pool.stats.matches
    );
    println!("selected {} distinguishers:", solution.distinguishers.len());
    for c in &solution.distinguishers {
        println!(
            "  {:>10}  from {} at position {}",
            c.text,
            instance.get(c.source_seq).name(),
            c.source_pos
        );
    }
    println!("barcodes:");
    for (seq, code) in instance.sequences().iter().zip(&solution.barcodes) {
        println!("  {code}  {}", seq.name());
    }
    for pair in &solution.uncovered {
        println!(
            "  uncovered pair ({}, {}), impossible: {}",
            pair.i, pair.j, pair.impossible
        );
    }

    let check = verify_solution(&solution, &instance, 1);
    assert!(check.ok, "verification failed: {:?}", check.issues);
    println!("verification passed");
}
