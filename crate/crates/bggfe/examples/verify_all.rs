//! Runs every verification suite at small sizes and prints a summary per suite.

use bggfe::verify::{run, tally, Limits, Suite};

fn main() {
    let lim = Limits { nmax: 2, rmax: 2 };
    for suite in Suite::EACH {
        let (passed, failed) = tally(&run(suite, lim));
        println!("{suite:<18} {passed:>5} passed {failed:>3} failed");
    }
}
