//! Dimensions of P_r⁻Λ^{k,ℓ} and P_rΛ^{k,ℓ} from explicit bases, and the
//! shape spaces of a few high-order symmetric families.

use bggfe::geometry::Simplex;
use bggfe::linalg::span_rank;
use bggfe::polyspaces::{dim_poly, full_basis, kernel_space_prw_on, PolyKind};

fn main() {
    let cell = Simplex::reference(3);
    for kind in [PolyKind::PrMinus, PolyKind::Pr] {
        for (k, l) in [(1, 1), (2, 1), (1, 2)] {
            let basis = full_basis(&cell, kind, 2, k, l);
            let rank = span_rank(&basis.iter().map(|f| f.coeffs.clone()).collect::<Vec<_>>());
            println!("{} r=2 (k,ℓ)=({k},{l}): rank {rank}, formula {}", kind.name(), dim_poly(kind, 3, 2, k, l));
        }
    }
    for r in 1..=3 {
        let regge = kernel_space_prw_on(&cell, PolyKind::Pr, r, 1, 1, 1).len();
        let hhj = kernel_space_prw_on(&cell, PolyKind::PrMinus, r, 2, 2, 1).len();
        println!("r = {r}: full-degree Regge-type space {regge}, reduced-degree HHJ-type space {hhj}");
    }
}
