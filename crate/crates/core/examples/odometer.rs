//! Mixed-radix odometers and their period spectra.

use clopen::dynamics::{odometer_iter, odometer_level_orbit, odometer_succ, period_spectrum, Radix};
use clopen::words::{Alphabet, UltWord};

fn main() {
    let d = Radix::parse("2,(3)^inf").unwrap();
    let alpha = Alphabet::numerals(3);
    let top = d.top();
    println!("top of {d}: {}", top.display(&alpha));
    println!("o(top) = {}", odometer_succ(&d, &top).unwrap().display(&alpha));

    let x = UltWord::parse("(0)^inf", &alpha).unwrap();
    for i in [-2i64, -1, 1, 7] {
        println!("o^{i}(0^inf) = {}", odometer_iter(&d, &x, i).unwrap().display(&alpha));
    }

    let orbit = odometer_level_orbit(&d, 2).unwrap();
    let shown: Vec<String> = orbit.iter().map(|p| p.display(&alpha)).collect();
    println!("level-2 orbit: {}", shown.join(" "));

    for s in ["2,(3)^inf", "2,5,(3)^inf"] {
        let d = Radix::parse(s).unwrap();
        println!("periods of {s}: {:?}", period_spectrum(&d, 4).unwrap());
    }
}
