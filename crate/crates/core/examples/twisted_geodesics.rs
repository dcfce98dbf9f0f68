//! Twisted closed geodesics of a space up to a length bound.
//!
//! `cargo run --example twisted_geodesics -- didi 3`

use platycosm::euclid_group::PlatycosmPresentation;
use platycosm::exact::parse_rational;
use platycosm::geodesics::{imprimitivity, twisted_classes};

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "tetra".into());
    let lmax = parse_rational(&args.next().unwrap_or_else(|| "3".into())).expect("length like 3 or 5/2");
    let p = PlatycosmPresentation::preset(&name).expect("known preset");
    println!("{:>6} {:>6} {:>3} {:>5} {:>6}  witness", "length", "twist", "k", "count", "weight");
    for c in twisted_classes(&p, lmax).expect("orientable space") {
        println!(
            "{:>6} {:>6} {:>3} {:>5} {:>6}  {}",
            c.length.to_string(),
            c.twist.to_string(),
            c.imprimitivity,
            c.count,
            c.weight().expect("crystallographic twist").to_string(),
            c.witness
        );
        assert_eq!(imprimitivity(&c.witness, &p).unwrap(), c.imprimitivity);
    }
}
