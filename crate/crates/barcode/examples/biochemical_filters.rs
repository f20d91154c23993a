//! Per-candidate constraints: length window, GC content, melting
//! temperature, and exclusion of substrings occurring in contaminants.
//!
//! Run with: cargo run --release --example biochemical_filters

use barcode::candidates::{
    gc_content, generate_candidates, melting_temperature, passes_filters, GenerationConfig,
};
use barcode::fasta::parse_fasta_str;
use barcode::random::{random_instance, RandomSpec};
use barcode::select::{select_greedy, SelectionConfig};
use barcode::sequence::parse_probe;

fn main() {
    let probe = parse_probe("acgtgcaa").unwrap();
    println!(
        "acgtgcaa: GC {:.2}, Tm {:.0} C (Wallace rule)",
        gc_content(&probe),
        melting_temperature(&probe)
    );

    let instance = random_instance(&RandomSpec {
        count: 6,
        length: 2000,
        seed: 31,
    })
    .unwrap();
    // Pretend one unrelated genome may contaminate samples: none of its
    // substrings may serve as a distinguisher.
    let contaminant = random_instance(&RandomSpec {
        count: 1,
        length: 2000,
        seed: 9999,
    })
    .unwrap();

    let config = GenerationConfig {
        min_length: 10,
        max_length: Some(16),
        gc_bounds: (0.35, 0.65),
        tm_bounds: Some((28.0, 44.0)),
        forbidden: contaminant.sequences().to_vec(),
        ..Default::default()
    };
    let pool = generate_candidates(&instance, &config).unwrap();
    println!(
        "pool under constraints: {} candidates (of {} unconstrained)",
        pool.stats.candidates,
        generate_candidates(&instance, &GenerationConfig::default())
            .unwrap()
            .stats
            .candidates
    );

    for c in &pool.candidates {
        assert!(passes_filters(&c.probe(), &config));
    }
    println!("every pooled candidate passes the filters");

    let solution = select_greedy(&pool, &instance, &SelectionConfig::default()).unwrap();
    println!("selected {} distinguishers:", solution.distinguishers.len());
    for c in &solution.distinguishers {
        let p = c.probe();
        println!(
            "  {:>16}  len {:2}  GC {:.2}  Tm {:.0}",
            c.text,
            c.len(),
            gc_content(&p),
            melting_temperature(&p)
        );
    }
    assert!(solution.uncovered.is_empty());
}
