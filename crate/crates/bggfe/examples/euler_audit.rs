//! Alternating sums of global element and distribution dimensions on
//! contractible meshes, compared with the smooth value.

use bggfe::meshcomplex::{euler_audit, euler_meshes, euler_parameters, global_dof_count, SimplicialComplex};
use bggfe::elements::{ElementParams, Family};

fn main() {
    let cx = SimplicialComplex::cone_over_two_cell(3);
    let regge = global_dof_count(&cx, &ElementParams::new(Family::IiW, 3, 1, 1, 1, 1)).unwrap();
    println!("Regge on a six-cell cone: {} global DoFs, per dimension {:?}", regge.total, regge.per_dim);

    for n in 2..=3 {
        for (mesh, cx) in euler_meshes(n) {
            for (l, p) in euler_parameters(n) {
                let a = euler_audit(&cx, l, p).unwrap();
                println!("n={n} {mesh:<12} l={l} p={p}: lhs {} rhs {} residual {}", a.lhs, a.rhs, a.residual);
            }
        }
    }
}
