//! Simplices with exact vertex coordinates, face frames and trace operators.
//!
//! Faces are identified by vertex masks over the cell's local vertices, kept
//! in increasing order. Tangents of a face are edge vectors out of its lowest
//! vertex; normals come from unnormalized Gram–Schmidt of the coordinate axes
//! against the tangents, so two cells sharing a face build the same frame.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exterior::{bits, popcount, tuple_masks, Mask, Tuples};
use crate::linalg::{dot, Mat, Q};
use crate::polyspaces::{Layout, PolyForm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("simplex is affinely degenerate")]
    Degenerate,
    #[error("expected {expected} vertices of dimension {dim}, got {got}")]
    Shape { expected: usize, dim: usize, got: usize },
}

/// Full-dimensional simplex in ℝⁿ with precomputed barycentric gradients.
#[derive(Clone, Debug)]
pub struct Simplex {
    pub n: usize,
    pub verts: Vec<Vec<Q>>,
    /// Rows are the constant gradients dλ_0, …, dλ_n.
    pub grads: Vec<Vec<Q>>,
    dl: Arc<HashMap<Mask, Vec<Q>>>,
}

impl Simplex {
    pub fn new(verts: Vec<Vec<Q>>) -> Result<Self, GeometryError> {
        let n = verts.len().saturating_sub(1);
        if verts.iter().any(|v| v.len() != n) {
            return Err(GeometryError::Shape { expected: n + 1, dim: n, got: verts.len() });
        }
        let mut e = Mat::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                e.set(i, j, &verts[j + 1][i] - &verts[0][i]);
            }
        }
        let inv = if n == 0 { Some(Mat::zeros(0, 0)) } else { e.inverse() };
        let inv = inv.ok_or(GeometryError::Degenerate)?;
        let mut grads = vec![vec![Q::zero(); n]; n + 1];
        for i in 1..=n {
            grads[i] = inv.row(i - 1).to_vec();
        }
        for c in 0..n {
            let s: Q = (1..=n).map(|i| grads[i][c].clone()).sum();
            grads[0][c] = -s;
        }
        let mut dl = HashMap::new();
        for s in 0..(1u32 << (n + 1)) {
            let k = popcount(s);
            if k > n {
                continue;
            }
            let rows: Vec<usize> = bits(s).collect();
            let coeffs = tuple_masks(n, k)
                .into_iter()
                .map(|a| {
                    let cols: Vec<usize> = bits(a).collect();
                    minor(&grads, &rows, &cols)
                })
                .collect();
            dl.insert(s, coeffs);
        }
        Ok(Simplex { n, verts, grads, dl: Arc::new(dl) })
    }

    /// Reference simplex: origin and the unit vectors.
    pub fn reference(n: usize) -> Self {
        let mut verts = vec![vec![Q::zero(); n]];
        for i in 0..n {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::one();
            verts.push(v);
        }
        Simplex::new(verts).expect("reference simplex is nondegenerate")
    }

    pub fn nv(&self) -> usize {
        self.n + 1
    }

    /// Coefficients of dλ_{s_1} ∧ … ∧ dλ_{s_k} over X(n,k), for a vertex mask s.
    pub fn dlambda(&self, s: Mask) -> &[Q] {
        &self.dl[&s]
    }

    /// All faces of dimension m as vertex masks, lexicographic.
    pub fn faces(&self, m: usize) -> Vec<Mask> {
        tuple_masks(self.n + 1, m + 1)
    }

    /// Face frame for the face with vertex mask `face`.
    pub fn frame(&self, face: Mask) -> FaceFrame {
        let vs: Vec<Vec<Q>> = bits(face).map(|i| self.verts[i].clone()).collect();
        FaceFrame::from_vertices(&vs, self.n).expect("faces of a nondegenerate simplex are nondegenerate")
    }
}

/// det of the submatrix of `m` with the given rows and columns.
pub fn minor(m: &[Vec<Q>], rows: &[usize], cols: &[usize]) -> Q {
    let k = rows.len();
    match k {
        0 => Q::one(),
        1 => m[rows[0]][cols[0]].clone(),
        2 => &m[rows[0]][cols[0]] * &m[rows[1]][cols[1]] - &m[rows[0]][cols[1]] * &m[rows[1]][cols[0]],
        _ => {
            let mut s = Mat::zeros(k, k);
            for (a, &r) in rows.iter().enumerate() {
                for (b, &c) in cols.iter().enumerate() {
                    s.set(a, b, m[r][c].clone());
                }
            }
            s.det()
        }
    }
}

/// k-th compound: entry (I, A) = det(F[I, A]) with F given by columns.
pub fn compound(cols: &[Vec<Q>], n: usize, k: usize) -> Mat {
    let t = Tuples::new(n, k);
    // rows of F: coordinate i, columns: frame vector a
    let f: Vec<Vec<Q>> = (0..n).map(|i| (0..cols.len()).map(|a| cols[a][i].clone()).collect()).collect();
    let mut out = Mat::zeros(t.len(), t.len());
    for (ii, &im) in t.list.iter().enumerate() {
        let rows: Vec<usize> = bits(im).collect();
        for (aa, &am) in t.list.iter().enumerate() {
            let cs: Vec<usize> = bits(am).collect();
            out.set(ii, aa, minor(&f, &rows, &cs));
        }
    }
    out
}

/// Tangent and normal frame of a face embedded in ℝⁿ.
#[derive(Clone, Debug)]
pub struct FaceFrame {
    pub n: usize,
    pub m: usize,
    pub tangents: Vec<Vec<Q>>,
    pub normals: Vec<Vec<Q>>,
    /// Columns t_1..t_m, n_1..n_{n−m}.
    pub columns: Vec<Vec<Q>>,
    /// Rows form the dual coframe: dual[i] · columns[j] = δ_ij.
    pub dual: Vec<Vec<Q>>,
}

impl FaceFrame {
    pub fn from_vertices(vs: &[Vec<Q>], n: usize) -> Result<Self, GeometryError> {
        let m = vs.len() - 1;
        let tangents: Vec<Vec<Q>> = (1..=m).map(|j| (0..n).map(|i| &vs[j][i] - &vs[0][i]).collect()).collect();
        // orthogonal basis of the tangent span for projections
        let mut ortho: Vec<Vec<Q>> = Vec::new();
        for t in &tangents {
            let v = project_out(t, &ortho);
            if v.iter().all(|x| x.is_zero()) {
                return Err(GeometryError::Degenerate);
            }
            ortho.push(v);
        }
        let mut normals = Vec::new();
        for axis in 0..n {
            if normals.len() == n - m {
                break;
            }
            let mut e = vec![Q::zero(); n];
            e[axis] = Q::one();
            let v = project_out(&e, &ortho);
            if v.iter().any(|x| !x.is_zero()) {
                ortho.push(v.clone());
                normals.push(v);
            }
        }
        let mut columns = tangents.clone();
        columns.extend(normals.iter().cloned());
        let mut f = Mat::zeros(n, n);
        for (j, c) in columns.iter().enumerate() {
            for i in 0..n {
                f.set(i, j, c[i].clone());
            }
        }
        let inv = if n == 0 { Some(Mat::zeros(0, 0)) } else { f.inverse() };
        let inv = inv.ok_or(GeometryError::Degenerate)?;
        let dual = (0..n).map(|i| inv.row(i).to_vec()).collect();
        Ok(FaceFrame { n, m, tangents, normals, columns, dual })
    }

    /// Gram matrix of the tangent block against the normal block.
    pub fn cross_gram(&self) -> Mat {
        let mut g = Mat::zeros(self.tangents.len(), self.normals.len());
        for (i, t) in self.tangents.iter().enumerate() {
            for (j, v) in self.normals.iter().enumerate() {
                g.set(i, j, dot(t, v));
            }
        }
        g
    }

    /// Mask of tangent slots among the frame indices 0..n.
    pub fn tangent_mask(&self) -> Mask {
        (1u32 << self.m) - 1
    }
}

fn project_out(v: &[Q], ortho: &[Vec<Q>]) -> Vec<Q> {
    let mut out = v.to_vec();
    for u in ortho {
        let c = dot(&out, u) / dot(u, u);
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(u) {
            *o -= &c * x;
        }
    }
    out
}

/// Which slots a trace keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceKind {
    /// ι* on both slots.
    II,
    /// ι* on the form slot, ȷ*_{[p]} on the value slot.
    IJ(usize),
    /// ι* on the form slot only; value slot fully kept (ρ* on the value slot).
    IRho,
}

/// Restriction of a polynomial (k,ℓ)-form to a face with every slot written
/// in the face frame (tangents first, then normals).
#[derive(Clone, Debug)]
pub struct TraceValue {
    pub face: Mask,
    pub m: usize,
    /// Layout over the face's own barycentrics, form indices in frame slots.
    pub form: PolyForm,
}

impl TraceValue {
    /// Component (A,E) filter: A ⊆ tangents, and E with exactly q tangents.
    pub fn vartheta_component(&self, a: Mask, e: Mask, q: usize) -> bool {
        let t = (1u32 << self.m) - 1;
        a & !t == 0 && popcount(e & t) == q
    }

    /// Coefficients that survive the given trace kind; others are zeroed.
    pub fn select(&self, kind: TraceKind) -> PolyForm {
        let m = self.m;
        let keep = |a: Mask, e: Mask| -> bool {
            let t = (1u32 << m) - 1;
            if a & !t != 0 {
                return false;
            }
            match kind {
                TraceKind::II => e & !t == 0,
                // q tangential value slots with q ∈ {m, m−1, …, m−p+1}
                TraceKind::IJ(p) => popcount(e & t) + p > m,
                TraceKind::IRho => true,
            }
        };
        self.form.filter_forms(keep)
    }
}

/// Full frame restriction of `u` (given on `cell`) to the face `face`.
pub fn restrict(cell: &Simplex, face: Mask, u: &PolyForm) -> TraceValue {
    let fr = cell.frame(face);
    restrict_with(&fr, face, u)
}

pub fn restrict_with(fr: &FaceFrame, face: Mask, u: &PolyForm) -> TraceValue {
    let lay = &u.layout;
    let n = lay.dim;
    let m = popcount(face) - 1;
    let mk = compound(&fr.columns, n, lay.k);
    let ml = compound(&fr.columns, n, lay.l);
    let out_layout = Arc::new(Layout::new(m + 1, n, lay.k, lay.l, lay.deg));
    let mut out = PolyForm::zero(&out_layout);
    let fv: Vec<usize> = bits(face).collect();
    let (ni, nj) = (lay.ti.len(), lay.tj.len());
    for (mi, alpha) in lay.monos.list.iter().enumerate() {
        if alpha.iter().enumerate().any(|(v, &e)| e > 0 && face >> v & 1 == 0) {
            continue;
        }
        let base = mi * ni * nj;
        let block = &u.coeffs[base..base + ni * nj];
        if block.iter().all(|x| x.is_zero()) {
            continue;
        }
        let beta: Vec<u8> = fv.iter().map(|&v| alpha[v]).collect();
        let mo = out_layout.monos.index(&beta);
        // tmp = Mkᵀ · C  (ni × nj) then · Ml
        let mut tmp = vec![Q::zero(); ni * nj];
        for i in 0..ni {
            for j in 0..nj {
                let cv = &block[i * nj + j];
                if cv.is_zero() {
                    continue;
                }
                for a in 0..ni {
                    let f = mk.get(i, a);
                    if !f.is_zero() {
                        tmp[a * nj + j] += f * cv;
                    }
                }
            }
        }
        let obase = mo * ni * nj;
        for a in 0..ni {
            for j in 0..nj {
                let tv = &tmp[a * nj + j];
                if tv.is_zero() {
                    continue;
                }
                for e in 0..nj {
                    let g = ml.get(j, e);
                    if !g.is_zero() {
                        out.coeffs[obase + a * nj + e] += tv * g;
                    }
                }
            }
        }
    }
    TraceValue { face, m, form: out }
}

/// ι* on a single-slot form (ℓ = 0) or on both slots of a (k,ℓ)-form.
pub fn iota_star(cell: &Simplex, face: Mask, u: &PolyForm) -> PolyForm {
    restrict(cell, face, u).select(TraceKind::II)
}

/// ϑ*_{F,q} on the value slot (form slot untouched): keeps components with
/// exactly q tangential value arguments.
pub fn vartheta(cell: &Simplex, face: Mask, q: usize, u: &PolyForm) -> PolyForm {
    let tv = restrict(cell, face, u);
    let t = (1u32 << tv.m) - 1;
    tv.form.filter_forms(|_, e| popcount(e & t) == q)
}

/// ȷ*_{[p]} on the value slot: components with at least dim F − p + 1 tangents.
pub fn jstar_p(cell: &Simplex, face: Mask, p: usize, u: &PolyForm) -> PolyForm {
    let tv = restrict(cell, face, u);
    let m = tv.m;
    let t = (1u32 << m) - 1;
    tv.form.filter_forms(|_, e| popcount(e & t) + p > m)
}

/// ρ*: plain restriction with all frame components.
pub fn rho_star(cell: &Simplex, face: Mask, u: &PolyForm) -> PolyForm {
    restrict(cell, face, u).form
}

/// Double trace of a (k,ℓ)-form: ι* on the form slot and ι* or ȷ*_{[p]} on the value slot.
pub fn double_trace(cell: &Simplex, face: Mask, kind: TraceKind, u: &PolyForm) -> PolyForm {
    restrict(cell, face, u).select(kind)
}

/// Number of value-slot components of ȷ*_{[p]} on an m-face in ℝⁿ for ℓ-forms.
pub fn jstar_component_count(n: usize, m: usize, l: usize, p: usize) -> usize {
    use crate::exterior::c;
    (0..p.min(m + 1))
        .filter(|&s| m - s <= l && l - (m - s) <= n - m)
        .map(|s| c(m, m - s) * c(n - m, l - (m - s)))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qfrac};

    fn tet() -> Simplex {
        Simplex::new(vec![
            vec![q(0), q(0), q(0)],
            vec![q(2), q(0), q(1)],
            vec![qfrac(1, 2), q(3), q(0)],
            vec![q(1), q(1), q(2)],
        ])
        .unwrap()
    }

    #[test]
    fn gradients_are_dual_to_edges() {
        let s = tet();
        for i in 0..4 {
            for j in 1..4 {
                let e: Vec<Q> = (0..3).map(|c| &s.verts[j][c] - &s.verts[0][c]).collect();
                let expect = if i == j {
                    q(1)
                } else if i == 0 {
                    q(-1)
                } else {
                    q(0)
                };
                assert_eq!(dot(&s.grads[i], &e), expect);
            }
        }
    }

    #[test]
    fn reference_edge_frame() {
        let s = Simplex::reference(3);
        let f = s.frame(0b0011);
        assert_eq!(f.tangents, vec![vec![q(1), q(0), q(0)]]);
        assert_eq!(f.normals, vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        assert!(f.cross_gram().is_zero());
        let fm = Mat::from_cols(3, &f.columns);
        let dm = Mat::from_rows(&f.dual);
        assert_eq!(dm.mul(&fm), Mat::identity(3));
    }

    #[test]
    fn degenerate_is_rejected() {
        let r = Simplex::new(vec![vec![q(0), q(0)], vec![q(1), q(1)], vec![q(2), q(2)]]);
        assert_eq!(r.err(), Some(GeometryError::Degenerate));
    }

    #[test]
    fn cross_gram_vanishes_on_random_faces() {
        let s = tet();
        for m in 0..=3 {
            for f in s.faces(m) {
                assert!(s.frame(f).cross_gram().is_zero());
            }
        }
    }
}
