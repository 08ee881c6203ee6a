//! Two-cell patch test: glue two local elements by their DoFs and check that
//! the claimed traces agree on every shared face.

use bggfe::catalog::named_conformity;
use bggfe::elements::{conformity_check, Patch};

fn main() {
    for (name, params) in named_conformity() {
        let rep = conformity_check(&params, &Patch::two_cell(params.n)).expect("valid parameters");
        println!("{name}: {} shared faces, pass = {}", rep.faces.len(), rep.pass);
        for f in &rep.faces {
            println!("    face {:?} trace {:?}: single-valued {}, local {}", f.face, f.trace, f.single_valued, f.local);
        }
    }
}
