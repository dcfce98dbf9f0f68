//! Side-by-side twisted-geodesic weights of Tetra and Didi.

use platycosm::euclid_group::Preset;
use platycosm::exact::q;
use platycosm::geodesics::balance_table;

fn main() {
    let table = balance_table(&Preset::Tetra.presentation(), &Preset::Didi.presentation(), q(9, 2))
        .expect("presets have crystallographic twists");
    print!("{}", table.to_csv());
    println!("balanced: {}", table.is_balanced());
}
