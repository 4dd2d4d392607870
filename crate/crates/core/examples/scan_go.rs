//! Scanning quotients of odometer graphs for odd closed walks.

use clopen::colorings::{parity_coloring, verify_coloring, Coloring};
use clopen::dynamics::Radix;
use clopen::families::parse_family;
use clopen::quotients::{odd_girth, quotient, scan, ScanOptions};

fn main() {
    let g = parse_family("go-plus:d=2,(3)^inf", None).unwrap();
    let report = scan(&g, 4, ScanOptions::default());
    for l in &report.levels {
        println!("{} level {}: odd girth {:?}", g.spec, l.level, l.odd_girth);
    }
    println!("{}", report.headline());

    let g = parse_family("graph-o:d=(3)^inf", None).unwrap();
    let girths: Vec<_> = (1..=4).map(|n| odd_girth(&quotient(&g, n))).collect();
    println!("{}: odd girths {:?}", g.spec, girths);

    let g = parse_family("graph-o:d=3,4,(3)^inf", None).unwrap();
    let report = scan(&g, 4, ScanOptions::default());
    println!("{}: first bipartite level {:?}", g.spec, report.first_bipartite());
    let c = parity_coloring(&Radix::parse("3,4,(3)^inf").unwrap()).unwrap();
    let v = verify_coloring(&g, &Coloring::Clopen(c), 4).unwrap();
    println!("parity coloring proper through level 4: {}", v.is_proper());
}
