//! Tetra and Didi have the same Laplace spectrum: compare multiplicities
//! key by key, then show what tells them apart.

use std::time::Instant;

use platycosm::euclid_group::Preset;
use platycosm::exact::q;
use platycosm::geodesics::twisted_classes;
use platycosm::spectrum::{compare_tables, spectrum_table, IsospectralVerdict};

fn main() {
    let max_key = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(400);
    let (tetra, didi) = (Preset::Tetra.presentation(), Preset::Didi.presentation());
    let start = Instant::now();
    let a = spectrum_table(&tetra, max_key).expect("supported lattice");
    let b = spectrum_table(&didi, max_key).expect("supported lattice");
    let verdict = compare_tables(&a, &b);
    println!(
        "eigenvalues up to π²·{max_key}: {} with multiplicity, {:?} ({:.2?})",
        a.total(),
        verdict,
        start.elapsed()
    );
    assert_eq!(verdict, IsospectralVerdict::Equal);
    for (k, m) in a.entries().iter().take(8) {
        println!("  key {k:>3}  λ = π²·{k:<3}  multiplicity {m}");
    }
    println!("first Betti numbers: tetra {}, didi {}", tetra.betti_one(), didi.betti_one());
    for p in [&tetra, &didi] {
        for c in twisted_classes(p, q(1, 2)).expect("crystallographic") {
            println!("{}: {} geodesics of length {} twisting by {}", p.name(), c.count, c.length, c.twist);
        }
    }
}
