//! The built-in spaces: generators, volumes, Betti numbers, and the
//! JSON form accepted by `--space-file`.

use platycosm::euclid_group::presets::{rho_x, rho_y, rho_z, tau};
use platycosm::euclid_group::Preset;

fn main() {
    println!("τ   = {}", tau());
    println!("τ²  = {}", tau().pow(2));
    println!("τ⁴  = {}", tau().pow(4));
    println!("ρ_x = {}", rho_x());
    println!("ρ_y = {}", rho_y());
    println!("ρ_z = {}", rho_z());
    println!("ρ_x∘ρ_y = {}", rho_x().compose(&rho_y()));
    println!();
    for preset in Preset::ALL {
        let p = preset.presentation();
        println!(
            "{:<17} |holonomy| = {}  volume = {}  b₁ = {}",
            p.name(),
            p.holonomy_order(),
            p.volume(),
            p.betti_one()
        );
    }
    println!();
    println!("{}", Preset::Didi.presentation().to_json());
}
