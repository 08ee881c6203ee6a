//! Face-count identities on randomly subdivided meshes.

use bggfe::linalg::Q;
use bggfe::meshcomplex::{
    dehn_sommerville_audit, euler_audit, euler_parameters, load_complex, simplex_boundary, FaceLattice,
    SimplicialComplex,
};
use proptest::prelude::*;

/// Stellar subdivision of one cell at an interior point with positive
/// barycentric weights.
fn subdivide(cx: &SimplicialComplex, cell: usize, weights: &[u32]) -> SimplicialComplex {
    let n = cx.n;
    let verts = &cx.lattice.cells[cell];
    let total: u32 = weights.iter().sum();
    let apex: Vec<Q> = (0..n)
        .map(|i| {
            verts.iter().zip(weights).map(|(&v, &w)| &cx.vertices[v][i] * Q::from_integer(w.into())).sum::<Q>()
                / Q::from_integer(total.into())
        })
        .collect();
    let a = cx.vertices.len();
    let mut vertices = cx.vertices.clone();
    vertices.push(apex);
    let mut cells: Vec<Vec<usize>> =
        cx.lattice.cells.iter().enumerate().filter(|&(i, _)| i != cell).map(|(_, c)| c.clone()).collect();
    for skip in 0..=n {
        let mut c: Vec<usize> = verts.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
        c.push(a);
        cells.push(c);
    }
    SimplicialComplex::new(n, vertices, cells).expect("stellar subdivision stays valid")
}

/// A random mesh: one of the standard starting meshes, then a few stellar
/// subdivisions of random cells.
fn random_mesh(n: usize, start: usize, steps: &[(usize, Vec<u32>)]) -> SimplicialComplex {
    let mut cx = match start % 3 {
        0 => SimplicialComplex::single_simplex(n),
        1 => SimplicialComplex::two_cell(n),
        _ => SimplicialComplex::cone_over_two_cell(n),
    };
    for (pick, weights) in steps {
        let cell = pick % cx.lattice.cells.len();
        cx = subdivide(&cx, cell, &weights[..=n]);
    }
    cx
}

fn euler_characteristic(f: &[usize]) -> i64 {
    f.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

fn steps() -> impl Strategy<Value = Vec<(usize, Vec<u32>)>> {
    prop::collection::vec((0usize..64, prop::collection::vec(1u32..5, 5)), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn contractible_meshes_have_euler_characteristic_one(n in 1usize..=3, start in 0usize..3, s in steps()) {
        let cx = random_mesh(n, start, &s);
        prop_assert_eq!(euler_characteristic(&cx.f_vector()), 1);
        // interior faces of a ball: χ° = (−1)^n
        let sign = if n % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(euler_characteristic(&cx.interior_f_vector()), sign);
    }

    #[test]
    fn euler_audit_vanishes_on_random_meshes(n in 1usize..=3, start in 0usize..3, s in steps(), pick in 0usize..16) {
        let cx = random_mesh(n, start, &s);
        let pairs = euler_parameters(n);
        let (l, p) = pairs[pick % pairs.len()];
        let audit = euler_audit(&cx, l, p).unwrap();
        prop_assert_eq!(audit.residual, 0, "{:?}", audit);
        prop_assert_eq!(audit.skeletal_residual, 0);
    }

    #[test]
    fn cone_relation(n in 1usize..=3, start in 0usize..3, s in steps()) {
        let cx = random_mesh(n, start, &s);
        let cone = cx.lattice.cone().unwrap();
        let (f, fb, fc) = (cx.f_vector(), cx.boundary_f_vector(), cone.f_vector());
        prop_assert_eq!(fc[0], f[0] + 1);
        for i in 1..=n {
            prop_assert_eq!(fc[i], f[i] + fb[i - 1]);
        }
        prop_assert!(cone.is_closed());
    }

    #[test]
    fn dehn_sommerville_on_cones(n in 1usize..=3, start in 0usize..3, s in steps()) {
        let sphere = random_mesh(n, start, &s).lattice.cone().unwrap();
        for (p, residual) in dehn_sommerville_audit(&sphere) {
            prop_assert_eq!(residual, 0, "p = {}", p);
        }
    }

    #[test]
    fn boundary_of_random_ball_is_a_sphere(n in 2usize..=3, start in 0usize..3, s in steps()) {
        let b = random_mesh(n, start, &s).lattice.boundary().unwrap();
        prop_assert!(b.is_closed());
        let chi = euler_characteristic(&b.f_vector());
        prop_assert_eq!(chi, if n % 2 == 1 { 2 } else { 0 });
        for (_, residual) in dehn_sommerville_audit(&b) {
            prop_assert_eq!(residual, 0);
        }
    }
}

#[test]
fn bundled_mesh_files_load() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data/meshes");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let cx = load_complex(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(euler_characteristic(&cx.f_vector()), 1, "{}", path.display());
        for (l, p) in euler_parameters(cx.n) {
            assert!(euler_audit(&cx, l, p).unwrap().pass(), "{} l={l} p={p}", path.display());
        }
        seen += 1;
    }
    assert!(seen >= 5);
}

#[test]
fn lattice_only_spheres() {
    let s: FaceLattice = simplex_boundary(3);
    assert_eq!(s.f_vector(), vec![5, 10, 10, 5]);
    assert!(dehn_sommerville_audit(&s).iter().all(|&(_, r)| r == 0));
}
