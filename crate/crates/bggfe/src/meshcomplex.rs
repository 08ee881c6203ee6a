//! Simplicial meshes: face lattices, boundary classification, global DoF
//! and distribution counts, and the Euler-characteristic and
//! Dehn–Sommerville audits.
//!
//! [`FaceLattice`] is purely combinatorial and also represents closed
//! complexes such as simplicial spheres. [`SimplicialComplex`] adds exact
//! vertex coordinates and checks that every top cell is nondegenerate.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::elements::{face_count, ElementError, ElementParams, Family, Patch};
use crate::exterior::binom;
use crate::geometry::Simplex;
use crate::linalg::Q;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("mesh document: {0}")]
    Parse(String),
    #[error("mesh has no cells")]
    Empty,
    #[error("cell {cell} has {got} vertices, expected {expected}")]
    CellSize { cell: usize, got: usize, expected: usize },
    #[error("cell {cell} repeats a vertex")]
    RepeatedVertex { cell: usize },
    #[error("cell {cell} references vertex {vertex}, but only {count} vertices exist")]
    BadIndex { cell: usize, vertex: usize, count: usize },
    #[error("vertex {vertex} has {got} coordinates, expected {expected}")]
    BadCoordinates { vertex: usize, got: usize, expected: usize },
    #[error("cells {first} and {second} have the same vertices")]
    DuplicateCell { first: usize, second: usize },
    #[error("facet {facet:?} is shared by {count} cells (at most 2 allowed)")]
    NonManifold { facet: Vec<usize>, count: usize },
    #[error("cell {cell} is affinely degenerate")]
    Degenerate { cell: usize },
    #[error("mesh dimension {mesh} does not match element dimension {element}")]
    DimensionMismatch { mesh: usize, element: usize },
    #[error("invalid audit parameters: {0}")]
    Parameters(String),
    #[error(transparent)]
    Element(#[from] ElementError),
}

/// A face with its incidence-derived boundary flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub interior: bool,
}

/// Pure d-dimensional simplicial complex given by its top cells.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub dim: usize,
    pub cells: Vec<Vec<usize>>,
    /// `faces[θ]` lists the θ-faces in lexicographic order.
    pub faces: Vec<Vec<Face>>,
}

impl FaceLattice {
    /// Validates the cells and enumerates all faces. A face is on the boundary
    /// when it lies in a facet owned by a single cell.
    pub fn new(dim: usize, cells: Vec<Vec<usize>>) -> Result<Self, MeshError> {
        if cells.is_empty() {
            return Err(MeshError::Empty);
        }
        let mut cells = cells;
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (ci, cell) in cells.iter_mut().enumerate() {
            if cell.len() != dim + 1 {
                return Err(MeshError::CellSize { cell: ci, got: cell.len(), expected: dim + 1 });
            }
            cell.sort_unstable();
            if cell.windows(2).any(|w| w[0] == w[1]) {
                return Err(MeshError::RepeatedVertex { cell: ci });
            }
            if let Some(&first) = seen.get(cell) {
                return Err(MeshError::DuplicateCell { first, second: ci });
            }
            seen.insert(cell.clone(), ci);
        }

        let mut owners: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        if dim > 0 {
            for cell in &cells {
                for skip in 0..cell.len() {
                    let facet: Vec<usize> = cell.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    *owners.entry(facet).or_default() += 1;
                }
            }
        }
        if let Some((facet, &count)) = owners.iter().find(|(_, &c)| c > 2) {
            return Err(MeshError::NonManifold { facet: facet.clone(), count });
        }
        let boundary_facets: Vec<&Vec<usize>> = owners.iter().filter(|(_, &c)| c == 1).map(|(f, _)| f).collect();

        let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dim + 1];
        for cell in &cells {
            for s in 1u32..(1 << cell.len()) {
                let face: Vec<usize> = (0..cell.len()).filter(|i| s >> i & 1 == 1).map(|i| cell[i]).collect();
                sets[face.len() - 1].insert(face);
            }
        }
        let mut on_boundary: BTreeSet<Vec<usize>> = BTreeSet::new();
        for facet in boundary_facets {
            for s in 1u32..(1 << facet.len()) {
                on_boundary.insert((0..facet.len()).filter(|i| s >> i & 1 == 1).map(|i| facet[i]).collect());
            }
        }
        let faces = sets
            .into_iter()
            .map(|set| {
                set.into_iter()
                    .map(|vertices| {
                        let interior = !on_boundary.contains(&vertices);
                        Face { vertices, interior }
                    })
                    .collect()
            })
            .collect();
        Ok(FaceLattice { dim, cells, faces })
    }

    /// Number of θ-faces, θ = 0..=dim.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// Number of interior θ-faces.
    pub fn interior_f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|fs| fs.iter().filter(|f| f.interior).count()).collect()
    }

    /// Number of boundary θ-faces.
    pub fn boundary_f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|fs| fs.iter().filter(|f| !f.interior).count()).collect()
    }

    pub fn is_closed(&self) -> bool {
        self.faces.iter().flatten().all(|f| f.interior)
    }

    pub fn vertex_count(&self) -> usize {
        self.faces[0].iter().map(|f| f.vertices[0] + 1).max().unwrap_or(0)
    }

    /// The boundary as a (dim−1)-dimensional lattice; `None` when closed or dim = 0.
    pub fn boundary(&self) -> Option<FaceLattice> {
        if self.dim == 0 || self.is_closed() {
            return None;
        }
        let facets = self.faces[self.dim - 1].iter().filter(|f| !f.interior).map(|f| f.vertices.clone()).collect();
        FaceLattice::new(self.dim - 1, facets).ok()
    }

    /// The cone T ∪ (a ∗ ∂T) with a fresh apex a. For a ball this is a sphere
    /// of the same dimension.
    pub fn cone(&self) -> Option<FaceLattice> {
        let boundary = self.boundary()?;
        let apex = self.vertex_count();
        let mut cells = self.cells.clone();
        cells.extend(boundary.cells.iter().map(|c| {
            let mut c = c.clone();
            c.push(apex);
            c
        }));
        FaceLattice::new(self.dim, cells).ok()
    }
}

/// A pure n-dimensional simplicial mesh in ℝⁿ with exact coordinates.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    pub n: usize,
    pub vertices: Vec<Vec<Q>>,
    pub lattice: FaceLattice,
}

impl SimplicialComplex {
    pub fn new(n: usize, vertices: Vec<Vec<Q>>, cells: Vec<Vec<usize>>) -> Result<Self, MeshError> {
        for (vi, v) in vertices.iter().enumerate() {
            if v.len() != n {
                return Err(MeshError::BadCoordinates { vertex: vi, got: v.len(), expected: n });
            }
        }
        for (ci, cell) in cells.iter().enumerate() {
            if let Some(&vertex) = cell.iter().find(|&&v| v >= vertices.len()) {
                return Err(MeshError::BadIndex { cell: ci, vertex, count: vertices.len() });
            }
        }
        let lattice = FaceLattice::new(n, cells)?;
        for (ci, cell) in lattice.cells.iter().enumerate() {
            if Simplex::new(cell.iter().map(|&v| vertices[v].clone()).collect()).is_err() {
                return Err(MeshError::Degenerate { cell: ci });
            }
        }
        Ok(SimplicialComplex { n, vertices, lattice })
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.lattice.f_vector()
    }

    pub fn interior_f_vector(&self) -> Vec<usize> {
        self.lattice.interior_f_vector()
    }

    pub fn boundary_f_vector(&self) -> Vec<usize> {
        self.lattice.boundary_f_vector()
    }

    pub fn cell_simplex(&self, c: usize) -> Simplex {
        Simplex::new(self.lattice.cells[c].iter().map(|&v| self.vertices[v].clone()).collect())
            .expect("cells are validated on construction")
    }

    /// The reference n-simplex.
    pub fn single_simplex(n: usize) -> Self {
        let verts = Simplex::reference(n).verts;
        SimplicialComplex::new(n, verts, vec![(0..=n).collect()]).expect("reference simplex is valid")
    }

    /// Two n-simplices glued along a facet.
    pub fn two_cell(n: usize) -> Self {
        let patch = Patch::two_cell(n);
        let [a, b] = patch.cells;
        SimplicialComplex::new(n, patch.vertices, vec![a, b]).expect("two-cell patch is valid")
    }

    /// Cone from an interior apex over the boundary of the two-cell patch.
    /// The apex is the centroid of the shared facet, from which the patch is
    /// star-shaped, so the result is a triangulated ball.
    pub fn cone_over_two_cell(n: usize) -> Self {
        let base = SimplicialComplex::two_cell(n);
        let shared: Vec<usize> = base.lattice.faces[n - 1].iter().find(|f| f.interior).unwrap().vertices.clone();
        let apex = centroid(&base.vertices, &shared);
        base.cone_from(apex)
    }

    /// Stellar subdivision of the reference simplex at its barycenter.
    pub fn stellar_simplex(n: usize) -> Self {
        let base = SimplicialComplex::single_simplex(n);
        let apex = centroid(&base.vertices, &(0..=n).collect::<Vec<_>>());
        base.cone_from(apex)
    }

    /// Barycentric subdivision of the reference simplex: one vertex per face
    /// barycenter and one cell per maximal flag, (n+1)! cells.
    pub fn barycentric_simplex(n: usize) -> Self {
        let reference = Simplex::reference(n).verts;
        let masks: Vec<u32> = (1u32..(1 << (n + 1))).collect();
        let index: BTreeMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let vertices = masks
            .iter()
            .map(|&m| centroid(&reference, &(0..=n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>()))
            .collect();
        let mut cells = Vec::new();
        let mut perm: Vec<usize> = (0..=n).collect();
        loop {
            let mut mask = 0u32;
            cells.push(
                perm.iter()
                    .map(|&v| {
                        mask |= 1 << v;
                        index[&mask]
                    })
                    .collect(),
            );
            if !next_permutation(&mut perm) {
                break;
            }
        }
        SimplicialComplex::new(n, vertices, cells).expect("barycentric subdivision is valid")
    }

    /// Replaces the mesh by apex ∗ ∂(mesh). Valid when the mesh is
    /// star-shaped with respect to an apex that avoids every boundary
    /// hyperplane.
    pub fn cone_from(&self, apex: Vec<Q>) -> Self {
        let boundary = self.lattice.boundary().expect("mesh has a boundary");
        let mut vertices = self.vertices.clone();
        let a = vertices.len();
        vertices.push(apex);
        let cells = boundary
            .cells
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.push(a);
                c
            })
            .collect();
        SimplicialComplex::new(self.n, vertices, cells).expect("apex sees every boundary facet")
    }

    pub fn from_document(doc: &MeshDocument) -> Result<Self, MeshError> {
        let vertices = doc
            .vertices
            .iter()
            .map(|row| row.iter().map(Coord::to_q).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        SimplicialComplex::new(doc.dim, vertices, doc.cells.clone())
    }

    pub fn to_document(&self) -> MeshDocument {
        MeshDocument {
            dim: self.n,
            vertices: self.vertices.iter().map(|v| v.iter().map(Coord::from_q).collect()).collect(),
            cells: self.lattice.cells.clone(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&self.to_document()).expect("mesh documents serialize")
    }
}

impl FromStr for SimplicialComplex {
    type Err = MeshError;

    fn from_str(s: &str) -> Result<Self, MeshError> {
        load_complex(s)
    }
}

/// Parses a TOML mesh document and validates the mesh.
pub fn load_complex(source: &str) -> Result<SimplicialComplex, MeshError> {
    let doc: MeshDocument = toml::from_str(source).map_err(|e| MeshError::Parse(e.to_string()))?;
    SimplicialComplex::from_document(&doc)
}

fn centroid(vertices: &[Vec<Q>], which: &[usize]) -> Vec<Q> {
    let n = vertices[which[0]].len();
    let w = Q::from_integer((which.len() as i64).into());
    (0..n).map(|i| which.iter().map(|&v| vertices[v][i].clone()).sum::<Q>() / &w).collect()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Serialized mesh: `dim`, `vertices` (integers or "p/q" strings) and
/// 0-based `cells`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeshDocument {
    pub dim: usize,
    pub vertices: Vec<Vec<Coord>>,
    pub cells: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Int(i64),
    Ratio(String),
}

impl Coord {
    pub fn to_q(&self) -> Result<Q, MeshError> {
        match self {
            Coord::Int(i) => Ok(Q::from_integer((*i).into())),
            Coord::Ratio(s) => Q::from_str(s.trim()).map_err(|_| MeshError::Parse(format!("bad coordinate `{s}`"))),
        }
    }

    pub fn from_q(x: &Q) -> Coord {
        if x.is_integer() {
            if let Ok(i) = i64::try_from(x.to_integer()) {
                return Coord::Int(i);
            }
        }
        Coord::Ratio(x.to_string())
    }
}

/// Global DoF count of a finite element space on a mesh.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DofCount {
    /// DoFs per face, by face dimension.
    pub per_face: Vec<usize>,
    /// `per_face[m] · f_m`.
    pub per_dim: Vec<usize>,
    pub total: usize,
}

/// Σ over all faces (boundary included) of the per-face DoF counts.
pub fn global_dof_count(cx: &SimplicialComplex, params: &ElementParams) -> Result<DofCount, MeshError> {
    if params.n != cx.n {
        return Err(MeshError::DimensionMismatch { mesh: cx.n, element: params.n });
    }
    params.validate()?;
    let f = cx.f_vector();
    let per_face: Vec<usize> = (0..=cx.n).map(|m| face_count(params, m)).collect();
    let per_dim: Vec<usize> = per_face.iter().zip(&f).map(|(a, b)| a * b).collect();
    let total = per_dim.iter().sum();
    Ok(DofCount { per_face, per_dim, total })
}

/// Dimension of a distributional space: deltas on interior (n−k)-faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionCount {
    pub face_dim: usize,
    pub per_face: usize,
    pub faces: usize,
    pub total: usize,
}

/// Number of functionals per interior (n−k)-face:
/// Σ_{s<p} dim Alt^{n−k−s}(σ) · dim Alt^{k−ℓ+s}(σ^⊥).
pub fn distribution_per_face(n: usize, k: usize, l: usize, p: usize) -> usize {
    let (n, k, l) = (n as i64, k as i64, l as i64);
    (0..p as i64).map(|s| binom(n - k, s) * binom(k, l - s)).sum::<i64>() as usize
}

pub fn distribution_dim(cx: &SimplicialComplex, k: usize, l: usize, p: usize) -> DistributionCount {
    let n = cx.n;
    let per_face = if k <= n { distribution_per_face(n, k, l, p) } else { 0 };
    let faces = if k <= n { cx.interior_f_vector()[n - k] } else { 0 };
    DistributionCount { face_dim: n.saturating_sub(k), per_face, faces, total: per_face * faces }
}

/// Result of the Euler-characteristic audit for the sequence linking rows ℓ
/// and ℓ+p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerAudit {
    pub n: usize,
    pub l: usize,
    pub p: usize,
    /// (θ, global dimension of the θ-th finite element space).
    pub fe_terms: Vec<(usize, usize)>,
    /// (θ, dimension of the distributional space of degree θ).
    pub d_terms: Vec<(usize, usize)>,
    pub lhs: i64,
    pub rhs: i64,
    pub residual: i64,
    pub skeletal_lhs: i64,
    pub skeletal_residual: i64,
}

impl EulerAudit {
    pub fn pass(&self) -> bool {
        self.residual == 0 && self.skeletal_residual == 0
    }
}

/// C(n, ℓ) + (−1)^{p−1} C(n, ℓ+p): the Euler characteristic of the smooth sequence.
pub fn euler_rhs(n: usize, l: usize, p: usize) -> i64 {
    let (n, l, p) = (n as i64, l as i64, p as i64);
    binom(n, l) + sign(p - 1) * binom(n, l + p)
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Skeletal counting identity evaluated from the f-vectors alone (k = ℓ+p).
pub fn skeletal_identity_lhs(n: usize, l: usize, p: usize, f: &[usize], f_int: &[usize]) -> i64 {
    let (ni, li, pi) = (n as i64, l as i64, p as i64);
    let k = li + pi;
    let mut first = 0i64;
    let mut second = 0i64;
    for s in 0..pi {
        for theta in 0..=k.min(ni) {
            first += sign(theta) * binom(theta, s) * binom(ni - theta, ni - li - s) * f[theta as usize] as i64;
        }
        for theta in 0..=(ni - li) {
            second += sign(theta) * binom(theta, s) * binom(ni - theta, k - s) * f_int[theta as usize] as i64;
        }
    }
    first + sign(ni + pi - 1) * second
}

/// Audits Σ_{θ<ℓ+p} (−1)^θ dim C P⁻W^{θ,ℓ}_{[p]} + Σ_{θ=ℓ+1}^{n} (−1)^{θ+p−1} dim D^{θ,ℓ+p}
/// against the smooth Euler characteristic. The mesh must triangulate a
/// contractible domain; this is not checked.
pub fn euler_audit(cx: &SimplicialComplex, l: usize, p: usize) -> Result<EulerAudit, MeshError> {
    let n = cx.n;
    if p == 0 || l + p > n {
        return Err(MeshError::Parameters(format!("need p ≥ 1 and ℓ + p ≤ n, got (ℓ, p, n) = ({l}, {p}, {n})")));
    }
    let mut fe_terms = Vec::new();
    let mut lhs = 0i64;
    for theta in 0..(l + p) {
        let params = ElementParams::new(Family::IjpW, n, theta, l, p, 1);
        let dim = global_dof_count(cx, &params)?.total;
        lhs += sign(theta as i64) * dim as i64;
        fe_terms.push((theta, dim));
    }
    let mut d_terms = Vec::new();
    for theta in (l + 1)..=n {
        let dim = distribution_dim(cx, theta, l + p, p).total;
        lhs += sign((theta + p - 1) as i64) * dim as i64;
        d_terms.push((theta, dim));
    }
    let rhs = euler_rhs(n, l, p);
    let skeletal_lhs = skeletal_identity_lhs(n, l, p, &cx.f_vector(), &cx.interior_f_vector());
    Ok(EulerAudit {
        n,
        l,
        p,
        fe_terms,
        d_terms,
        lhs,
        rhs,
        residual: lhs - rhs,
        skeletal_lhs,
        skeletal_residual: skeletal_lhs - rhs,
    })
}

/// Dehn–Sommerville residual for a simplicial sphere of dimension `d − 1`
/// (the boundary of a d-polytope), with f_{−1} = 1:
/// Σ_{i=−1}^{p−1} (−1)^{d+i} C(d−i−1, d−p) f_i − Σ_{i=−1}^{d−p−1} (−1)^i C(d−i−1, p) f_i.
pub fn dehn_sommerville_residual(sphere: &FaceLattice, p: usize) -> i64 {
    let f = sphere.f_vector();
    let d = sphere.dim as i64 + 1;
    let p = p as i64;
    let fi = |i: i64| if i < 0 { 1 } else { f.get(i as usize).map_or(0, |&x| x as i64) };
    let left: i64 = (-1..p).map(|i| sign(d + i) * binom(d - i - 1, d - p) * fi(i)).sum();
    let right: i64 = (-1..(d - p)).map(|i| sign(i) * binom(d - i - 1, p) * fi(i)).sum();
    left - right
}

/// Residuals for p = 0..=d.
pub fn dehn_sommerville_audit(sphere: &FaceLattice) -> Vec<(usize, i64)> {
    (0..=sphere.dim + 1).map(|p| (p, dehn_sommerville_residual(sphere, p))).collect()
}

/// Boundary of the (d+1)-simplex, a d-sphere.
pub fn simplex_boundary(d: usize) -> FaceLattice {
    let cells = (0..=d + 1).map(|skip| (0..=d + 1).filter(|&v| v != skip).collect()).collect();
    FaceLattice::new(d, cells).expect("simplex boundary is valid")
}

/// Boundary of the (d+1)-dimensional cross-polytope; d = 2 is the octahedron.
/// Vertex 2i is +e_i and 2i+1 is −e_i.
pub fn cross_polytope_boundary(d: usize) -> FaceLattice {
    let cells = (0u32..(1 << (d + 1))).map(|signs| (0..=d).map(|i| 2 * i + (signs >> i & 1) as usize).collect()).collect();
    FaceLattice::new(d, cells).expect("cross-polytope boundary is valid")
}

pub fn octahedron_boundary() -> FaceLattice {
    cross_polytope_boundary(2)
}

/// The curated contractible meshes used by the Euler audits.
pub fn euler_meshes(n: usize) -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("simplex", SimplicialComplex::single_simplex(n)),
        ("two_cell", SimplicialComplex::two_cell(n)),
        ("cone", SimplicialComplex::cone_over_two_cell(n)),
        ("stellar", SimplicialComplex::stellar_simplex(n)),
        ("barycentric", SimplicialComplex::barycentric_simplex(n)),
    ]
}

/// All (ℓ, p) with p ≥ 1 and ℓ + p ≤ n.
pub fn euler_parameters(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|l| (1..=n - l).map(move |p| (l, p))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom_oracle(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut row = vec![1usize];
        for _ in 0..n {
            let mut next = vec![1usize; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        row[k]
    }

    #[test]
    fn simplex_f_vectors() {
        for n in 1..=4 {
            let cx = SimplicialComplex::single_simplex(n);
            let f: Vec<usize> = (0..=n).map(|t| binom_oracle(n + 1, t + 1)).collect();
            assert_eq!(cx.f_vector(), f);
            let mut fi = vec![0; n + 1];
            fi[n] = 1;
            assert_eq!(cx.interior_f_vector(), fi);
        }
    }

    #[test]
    fn two_tets() {
        let cx = SimplicialComplex::two_cell(3);
        assert_eq!(cx.f_vector(), vec![5, 9, 7, 2]);
        assert_eq!(cx.interior_f_vector(), vec![0, 0, 1, 2]);
    }

    #[test]
    fn cone_relation_on_lattices() {
        for n in 1..=4 {
            for (_, cx) in euler_meshes(n) {
                let f = cx.f_vector();
                let fb = cx.boundary_f_vector();
                let cone = cx.lattice.cone().unwrap();
                assert!(cone.is_closed());
                let fc = cone.f_vector();
                for i in 0..=n {
                    let below = if i == 0 { 1 } else { fb[i - 1] };
                    assert_eq!(fc[i], f[i] + below, "n={n} i={i}");
                }
            }
        }
    }

    #[test]
    fn regge_and_lagrange_counts() {
        let regge = ElementParams::new(Family::IiW, 3, 1, 1, 1, 1);
        assert_eq!(global_dof_count(&SimplicialComplex::single_simplex(3), &regge).unwrap().total, 6);
        assert_eq!(global_dof_count(&SimplicialComplex::two_cell(3), &regge).unwrap().total, 9);
        let lagrange = ElementParams::new(Family::IiAlt, 3, 0, 0, 0, 1);
        assert_eq!(global_dof_count(&SimplicialComplex::single_simplex(3), &lagrange).unwrap().total, 4);
    }

    #[test]
    fn distribution_examples() {
        let tet = SimplicialComplex::single_simplex(3);
        assert_eq!(distribution_dim(&tet, 2, 2, 1).total, 0);
        assert_eq!(distribution_per_face(4, 1, 1, 1), 1);
        assert_eq!(distribution_per_face(4, 3, 2, 1), 3);
    }

    #[test]
    fn euler_examples() {
        let a = euler_audit(&SimplicialComplex::single_simplex(3), 1, 1).unwrap();
        assert_eq!(a.rhs, 6);
        assert!(a.pass(), "{a:?}");
        let b = euler_audit(&SimplicialComplex::two_cell(3), 0, 2).unwrap();
        assert_eq!(b.rhs, -2);
        assert!(b.pass(), "{b:?}");
        assert!(euler_audit(&SimplicialComplex::single_simplex(4), 1, 1).unwrap().pass());
    }

    #[test]
    fn dehn_sommerville() {
        let tet = simplex_boundary(2);
        assert_eq!(tet.f_vector(), vec![4, 6, 4]);
        assert_eq!(dehn_sommerville_residual(&tet, 0), 0);
        for d in 1..=4 {
            assert!(dehn_sommerville_audit(&simplex_boundary(d)).iter().all(|&(_, r)| r == 0));
        }
        let oct = octahedron_boundary();
        assert_eq!(oct.f_vector(), vec![6, 12, 8]);
        assert!(dehn_sommerville_audit(&oct).iter().all(|&(_, r)| r == 0));
    }

    #[test]
    fn rejects_bad_meshes() {
        let tet = SimplicialComplex::single_simplex(3);
        let v = tet.vertices.clone();
        let dup = SimplicialComplex::new(3, v.clone(), vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0]]);
        assert!(matches!(dup, Err(MeshError::DuplicateCell { .. })));
        let bad = SimplicialComplex::new(3, v.clone(), vec![vec![0, 1, 2, 4]]);
        assert!(matches!(bad, Err(MeshError::BadIndex { .. })));
        let mut flat = v.clone();
        flat[3] = flat[1].iter().zip(&flat[2]).map(|(a, b)| a + b).collect();
        assert!(matches!(SimplicialComplex::new(3, flat, vec![vec![0, 1, 2, 3]]), Err(MeshError::Degenerate { .. })));
        let book = FaceLattice::new(2, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]]);
        assert!(matches!(book, Err(MeshError::NonManifold { .. })));
    }

    #[test]
    fn document_round_trip() {
        let cx = SimplicialComplex::cone_over_two_cell(3);
        let back = load_complex(&cx.to_toml()).unwrap();
        assert_eq!(back.vertices, cx.vertices);
        assert_eq!(back.lattice.cells, cx.lattice.cells);
    }
}
