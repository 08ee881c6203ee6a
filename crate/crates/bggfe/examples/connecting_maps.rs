//! The single-index maps s_{[p]} and their adjoints: ranks against the
//! injectivity and surjectivity thresholds, and an explicit image.

use bggfe::exterior::{s_dagger_matrix, s_map, s_matrix, FreeGroupElement, IncreasingTuple};

fn main() {
    let x = FreeGroupElement::single(4, 1, &[(&[1], 1), (&[3], -2)]);
    if let FreeGroupElement::Single { n, coeffs, .. } = s_map(&x, 1) {
        let terms: Vec<String> = coeffs
            .iter()
            .map(|(&m, v)| format!("{v}·e{:?}", IncreasingTuple::from_mask(m, n).indices))
            .collect();
        println!("s(e1 - 2 e3) in n = 4: {}", terms.join(" + "));
    }

    println!("n\tk\tp\trank\tinjective\tsurjective\tadjoint");
    for n in 1..=5 {
        for k in 0..=n {
            for p in 1..=(n - k) {
                let m = s_matrix(n, k, p);
                let r = m.rank();
                let adjoint = m.transpose() == s_dagger_matrix(n, k + p, p);
                println!("{n}\t{k}\t{p}\t{r}\t{}\t{}\t{adjoint}", r == m.cols, r == m.rows);
            }
        }
    }
}
