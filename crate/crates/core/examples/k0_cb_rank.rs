//! Cantor-Bendixson ranks of limit forests, and the chromatic evidence for K0.

use clopen::colorings::search_coloring;
use clopen::families::parse_family;
use clopen::quotients::{quotient, scan, ScanOptions};
use clopen::subshift::{cb_rank, k0_forest, rank_forest};

fn main() {
    println!("K0: {}", cb_rank(&k0_forest(), 40).summary());
    for n in 0..=2 {
        println!("rank subshift n={n}: {}", cb_rank(&rank_forest(n, 4096), 60).summary());
    }

    let g = parse_family("k0", None).unwrap();
    let report = scan(&g, 4, ScanOptions::default());
    println!("{}", report.headline());
    let c = search_coloring(&quotient(&g, 4), 3).unwrap();
    println!("level-4 3-coloring found: {}", c.is_some());
}
