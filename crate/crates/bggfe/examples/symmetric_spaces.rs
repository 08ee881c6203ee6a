//! Dimensions of the constant symmetry-reduced spaces W^{k,ℓ}_{[p]} in 3D and
//! 4D next to the full tensor dimension C(n,k)·C(n,ℓ).

use bggfe::bgg_ops::{alt_dim, symmetric_space};

fn main() {
    for n in [3, 4] {
        for p in 1..=2 {
            println!("n = {n}, p = {p} (rows k, columns ℓ; W dim / full dim)");
            for k in 0..=n {
                let row: Vec<String> =
                    (0..=n).map(|l| format!("{}/{}", symmetric_space(n, k, l, p).dim(), alt_dim(n, k, l))).collect();
                println!("  {}", row.join("\t"));
            }
        }
    }
}
