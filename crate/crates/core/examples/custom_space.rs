//! A space built by hand: the dicosm, Z³ with a half-turn screw along z.
//! Pass a path to load a space file instead.

use platycosm::euclid_group::{Isometry, Lattice, PlatycosmPresentation};
use platycosm::exact::{mat_from_ints, q, qi};
use platycosm::geodesics::twisted_classes;
use platycosm::spectrum::spectrum_table;

fn main() {
    let p = match std::env::args().nth(1) {
        Some(path) => {
            let text = std::fs::read_to_string(&path).expect("readable file");
            PlatycosmPresentation::from_json(&text).expect("valid space file")
        }
        None => {
            let screw = Isometry::new(mat_from_ints([[-1, 0, 0], [0, -1, 0], [0, 0, 1]]), [qi(0), qi(0), q(1, 2)])
                .expect("orthogonal");
            PlatycosmPresentation::new("dicosm", Lattice::cubic(), vec![Isometry::identity(), screw])
                .expect("fixed-point free")
        }
    };
    println!("{}: volume {}, b₁ = {}", p.name(), p.volume(), p.betti_one());
    let table = spectrum_table(&p, 16).expect("supported lattice");
    print!("{}", table.to_csv());
    for c in twisted_classes(&p, qi(2)).expect("orientable space") {
        println!("{} geodesics: length {}, twist {}, k = {}", c.count, c.length, c.twist, c.imprimitivity);
    }
    println!("{}", p.to_json());
}
