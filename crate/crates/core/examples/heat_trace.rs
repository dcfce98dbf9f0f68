//! Spectral and geometric heat traces side by side.

use platycosm::euclid_group::Preset;
use platycosm::selberg::{format_real, geometric_heat_trace, spectral_heat_trace, HeatTraceConfig};

fn main() {
    println!("space,t,spectral,geometric,abs_diff,bound");
    for preset in [Preset::TwoTall, Preset::Tetra, Preset::Didi] {
        let p = preset.presentation();
        for t in [0.05, 0.1, 0.2, 0.5, 1.0] {
            let cfg = HeatTraceConfig::new(t, 1e-10);
            let spec = spectral_heat_trace(&p, &cfg).expect("within budget");
            let geom = geometric_heat_trace(&p, &cfg).expect("within budget");
            println!(
                "{preset},{t},{},{},{},{}",
                format_real(spec.value),
                format_real(geom.value),
                format_real((spec.value - geom.value).abs()),
                format_real(spec.bound + geom.bound)
            );
        }
    }
}
