//! The three-way match semantics against degenerate bases, and how
//! uncertainty flows through selection: a probe with only uncertain matches
//! in a sequence cannot distinguish that sequence from anything, and its
//! barcode cell becomes `?`.
//!
//! Run with: cargo run --release --example degenerate_matching

use barcode::candidates::{generate_candidates, GenerationConfig};
use barcode::fasta::parse_fasta_str;
use barcode::select::{select_greedy, SelectionConfig};
use barcode::sequence::{distinguishes, match_at, occurrence_class, parse_probe};

fn main() {
    // Three sequences differing only in the middle of a shared region.
    // `n` in g_variant admits every nucleotide, so probes reading across
    // that spot can never be certain about g_variant.
    let instance = parse_fasta_str(
        ">g_variant\natgacctgggatcgatcccttaagct\n\
         >t_variant\natgacctgggatctatcccttaagct\n\
         >n_variant\natgacctgggatcnatcccttaagct\n",
    )
    .unwrap();
    let g_variant = instance.get(0);
    let t_variant = instance.get(1);
    let n_variant = instance.get(2);

    let probe = parse_probe("gatcgatc").unwrap();
    println!("probe gatcgatc:");
    println!("  at position 10 of g_variant: {:?}", match_at(&probe, g_variant, 10).unwrap());
    println!("  at position 10 of t_variant: {:?}", match_at(&probe, t_variant, 10).unwrap());
    println!("  at position 10 of n_variant: {:?}", match_at(&probe, n_variant, 10).unwrap());
    println!("  class in g_variant: {:?}", occurrence_class(&probe, g_variant));
    println!("  class in t_variant: {:?}", occurrence_class(&probe, t_variant));
    println!("  class in n_variant: {:?}", occurrence_class(&probe, n_variant));

    // A perfect match on one side and an uncertain match on the other does
    // not distinguish: the uncertain side might contain the probe too.
    assert!(distinguishes(&probe, g_variant, t_variant));
    assert!(!distinguishes(&probe, g_variant, n_variant));
    println!("probe separates g|t but not g|n: the n side is only uncertain\n");

    // Selection inherits all of this. The g/t pair is separable (only by
    // probes that are uncertain in n_variant), while nothing can separate
    // n_variant from either neighbour.
    let pool = generate_candidates(&instance, &GenerationConfig::default()).unwrap();
    let solution = select_greedy(&pool, &instance, &SelectionConfig::default()).unwrap();
    println!(
        "selected: {:?}",
        solution.distinguishers.iter().map(|c| &c.text).collect::<Vec<_>>()
    );
    for (seq, code) in instance.sequences().iter().zip(&solution.barcodes) {
        println!("  {code}  {}", seq.name());
    }
    assert!(solution.barcodes.iter().any(|row| row.contains('?')));
    for pair in &solution.uncovered {
        println!(
            "  pair ({}, {}) uncovered, impossible: {}",
            instance.get(pair.i).name(),
            instance.get(pair.j).name(),
            pair.impossible
        );
        assert!(pair.impossible);
    }
}
