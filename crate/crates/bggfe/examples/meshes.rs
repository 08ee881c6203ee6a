//! Builds the standard test meshes and prints their f-vectors. With a
//! directory argument, also writes each mesh there as TOML.

use bggfe::meshcomplex::SimplicialComplex;

fn main() {
    let out_dir = std::env::args().nth(1);
    let meshes = [
        ("tet", SimplicialComplex::single_simplex(3)),
        ("two_tets", SimplicialComplex::two_cell(3)),
        ("cone3", SimplicialComplex::cone_over_two_cell(3)),
        ("stellar3", SimplicialComplex::stellar_simplex(3)),
        ("barycentric3", SimplicialComplex::barycentric_simplex(3)),
        ("triangle", SimplicialComplex::single_simplex(2)),
        ("stellar2", SimplicialComplex::stellar_simplex(2)),
        ("stellar4", SimplicialComplex::stellar_simplex(4)),
    ];
    for (name, cx) in &meshes {
        println!(
            "{name}: n = {}, f = {:?}, interior f = {:?}",
            cx.n,
            cx.f_vector(),
            cx.interior_f_vector()
        );
        if let Some(dir) = &out_dir {
            let path = std::path::Path::new(dir).join(format!("{name}.toml"));
            std::fs::write(&path, cx.to_toml()).expect("write mesh file");
        }
    }
}
