//! Cycle spectra of the finite cores of the K_A family.

use std::collections::BTreeSet;

use clopen::families::ka_core;
use clopen::homs::{cycle_spectrum, spectrum_obstruction};

fn main() {
    let subsets: Vec<BTreeSet<usize>> = (0u8..8).map(|m| (0..3).filter(|i| m >> i & 1 == 1).collect()).collect();
    for a in &subsets {
        let core = ka_core(a).unwrap();
        println!("A = {a:?}: {} vertices, spectrum {:?}", core.len(), cycle_spectrum(&core, 64).unwrap());
    }
    let one: BTreeSet<usize> = [1].into();
    let zero: BTreeSet<usize> = [0].into();
    let missing = spectrum_obstruction(&ka_core(&one).unwrap(), &ka_core(&zero).unwrap(), 64).unwrap();
    println!("lengths of K_{{1}} missing from K_{{0}}: {missing:?}");
}
