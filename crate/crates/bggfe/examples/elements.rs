//! Builds the named elements, prints their DoF layout and checks that the
//! DoF matrix is nonsingular.

use bggfe::catalog::named_elements;
use bggfe::elements::{build_element, unisolvency_check};

fn main() {
    for (name, params, dim) in named_elements() {
        let spec = build_element(&params).expect("named elements are valid");
        let rep = unisolvency_check(&spec);
        println!(
            "{name:<20} {params}\n    dim {} (listed {dim}), DoFs per face {:?}, det {}, unisolvent {}",
            rep.shape_dim,
            spec.face_counts(),
            rep.det.map_or("-".into(), |d| d.to_string()),
            rep.pass
        );
    }
}
