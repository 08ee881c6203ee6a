//! Bubble spaces on a simplex: structural dimensions, the closed form, and
//! the kernel of S† restricted to bubbles.

use bggfe::bubbles::{bubble_dim, bubble_dim_formula, bubble_w_dim};
use bggfe::polyspaces::PolyKind;

fn main() {
    println!("m\tr\tk\tl\tP-minus bubbles\tformula");
    for m in 1..=3 {
        for r in 1..=2 {
            for k in 0..=m {
                for l in 0..=m {
                    let d = bubble_dim(m, PolyKind::PrMinus, r, k, l);
                    println!("{m}\t{r}\t{k}\t{l}\t{d}\t{}", bubble_dim_formula(m, PolyKind::PrMinus, r, k, l));
                }
            }
        }
    }
    for n in 2..=4 {
        let counts: Vec<usize> = (1..=5).map(|r| bubble_w_dim(n, PolyKind::Pr, r, 1, 1, 1)).collect();
        println!("symmetric (1,1) bubbles, n = {n}, r = 1..5: {counts:?}");
    }
}
