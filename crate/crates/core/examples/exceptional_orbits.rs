//! Where Tetra and Didi distribute eigenfunctions differently: the axial
//! orbits (n,0,0) and (0,0,n). Their sum matches; each part need not.

use platycosm::euclid_group::Preset;
use platycosm::spectrum::{orbit_dims, OrbitSpec};

fn main() {
    let (tetra, didi) = (Preset::Tetra.presentation(), Preset::Didi.presentation());
    println!(" n  tetra(n,0,0) tetra(0,0,n)  didi(n,0,0) didi(0,0,n)");
    for n in 1..=10i64 {
        let dims = |p, v| orbit_dims(p, OrbitSpec::from_twice(v)).expect("supported lattice");
        println!(
            "{n:>2}  {:>12} {:>12}  {:>11} {:>11}",
            dims(&tetra, [2 * n, 0, 0]),
            dims(&tetra, [0, 0, 2 * n]),
            dims(&didi, [2 * n, 0, 0]),
            dims(&didi, [0, 0, 2 * n])
        );
    }
}
