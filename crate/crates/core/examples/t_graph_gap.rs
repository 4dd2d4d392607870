//! A noncompact family where every quotient has an odd walk and yet a 2-coloring exists.

use clopen::colorings::{t_coloring, verify_edges};
use clopen::families::{parse_family, t_edges};
use clopen::quotients::{scan, ScanOptions};

fn main() {
    let g = parse_family("t", None).unwrap();
    let report = scan(&g, 4, ScanOptions::default());
    for l in &report.levels {
        println!("level {}: odd girth {:?}", l.level, l.odd_girth);
    }
    println!("{}", report.headline());

    let edges = t_edges(10);
    let v = verify_edges(&edges, &t_coloring(), 0).unwrap();
    println!("t-coloring on {} clauses with k, j <= 10: proper = {}", v.edges_checked, v.is_proper());
}
