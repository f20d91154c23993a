//! Robust identification: demand several distinct distinguishers per pair
//! (redundancy) and keep selected probes dissimilar (minimum edit distance).
//!
//! Run with: cargo run --release --example redundancy_and_edit_distance

use barcode::candidates::{generate_candidates, GenerationConfig};
use barcode::random::{random_instance, RandomSpec};
use barcode::select::{edit_distance, select_greedy, SelectionConfig};

fn main() {
    let instance = random_instance(&RandomSpec {
        count: 8,
        length: 1500,
        seed: 77,
    })
    .unwrap();
    let pool = generate_candidates(&instance, &GenerationConfig::default()).unwrap();

    println!("redundancy sweep (8 random sequences):");
    for redundancy in [1u32, 2, 3, 5] {
        let solution = select_greedy(
            &pool,
            &instance,
            &SelectionConfig {
                redundancy,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(solution.uncovered.is_empty());
        println!(
            "  m={redundancy}: {} distinguishers",
            solution.distinguishers.len()
        );
    }

    // With a minimum pairwise edit distance, near-duplicates of already
    // selected probes are eliminated from the pool as selection goes.
    let config = GenerationConfig {
        min_length: 8,
        max_length: Some(20),
        ..Default::default()
    };
    let pool = generate_candidates(&instance, &config).unwrap();
    let min_edit = 4;
    let solution = select_greedy(
        &pool,
        &instance,
        &SelectionConfig {
            redundancy: 2,
            min_edit_distance: min_edit,
            ..Default::default()
        },
    )
    .unwrap();
    println!("\nm=2 with min edit distance {min_edit}:");
    for c in &solution.distinguishers {
        println!("  {}", c.text);
    }
    for (i, a) in solution.distinguishers.iter().enumerate() {
        for b in &solution.distinguishers[i + 1..] {
            let d = edit_distance(&a.text, &b.text);
            assert!(d >= min_edit, "{} vs {} at distance {d}", a.text, b.text);
        }
    }
    println!("all pairwise edit distances >= {min_edit}");
}
