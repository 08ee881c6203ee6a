//! Bubble spaces on a single simplex.
//!
//! Everything here lives on the reference m-simplex, which is how faces see
//! themselves in their own frame. Structural bases tensor the attributed
//! scalar basis with the constant forms N^ℓ; the definitional nullspace of
//! the facet double traces is kept as an independent route.

use std::sync::Arc;

use crate::bgg_ops::build_S_dagger;
use crate::exterior::{bits, c, popcount, tuple_masks, ConstForm, Mask};
use crate::geometry::{restrict, Simplex, TraceKind};
use crate::linalg::{span_rank, Mat, Q};
use crate::polyspaces::{
    coeff_matrix, full_basis, scalar_indices, Attributed, Layout, PolyForm, PolyKind,
};

/// Constant ℓ-forms of the reference m-simplex K vanishing on every facet
/// of K that contains σ: dλ_{σᶜ ∪ J'} with J' ⊆ σ ∖ {min σ}.
pub fn n_space(m: usize, sigma: Mask, l: usize) -> Vec<ConstForm> {
    let cell = Simplex::reference(m);
    n_space_masks(m, sigma, l)
        .into_iter()
        .map(|s| ConstForm { n: m, k: l, l: 0, coeffs: cell.dlambda(s).to_vec() })
        .collect()
}

/// Vertex masks S with dλ_S spanning N^ℓ(σ, K) on an m-simplex.
pub fn n_space_masks(m: usize, sigma: Mask, l: usize) -> Vec<Mask> {
    let all: Mask = (1 << (m + 1)) - 1;
    let comp = all & !sigma;
    let nc = popcount(comp);
    if nc > l || sigma == 0 {
        return Vec::new();
    }
    let rest = sigma & !(1 << sigma.trailing_zeros());
    let free: Vec<usize> = bits(rest).collect();
    tuple_masks(free.len(), l - nc)
        .into_iter()
        .map(|sub| bits(sub).fold(comp, |acc, i| acc | 1 << free[i]))
        .collect()
}

pub fn n_space_dim(m: usize, dim_sigma: usize, l: usize) -> usize {
    (l + dim_sigma).checked_sub(m).map_or(0, |t| c(dim_sigma, t))
}

/// A bubble basis on the reference m-simplex.
#[derive(Clone, Debug)]
pub struct BubbleBasis {
    pub m: usize,
    pub kind: PolyKind,
    pub r: usize,
    pub k: usize,
    pub l: usize,
    /// Iterate of S† used for the symmetric reduction, 0 for none.
    pub p: usize,
    pub forms: Vec<PolyForm>,
}

impl BubbleBasis {
    pub fn dim(&self) -> usize {
        self.forms.len()
    }
}

/// Structural bubble basis: attributed scalar basis ⊗ N^ℓ.
pub fn bubble_basis(m: usize, kind: PolyKind, r: usize, k: usize, l: usize) -> BubbleBasis {
    let cell = Simplex::reference(m);
    let mut forms = Vec::new();
    if k <= m && l <= m {
        for Attributed { face, form } in crate::polyspaces::basis_scalar(&cell, kind, r, k) {
            for s in n_space_masks(m, face, l) {
                forms.push(PolyForm::tensor_const(&form, cell.dlambda(s), l));
            }
        }
    }
    BubbleBasis { m, kind, r, k, l, p: 0, forms }
}

/// Count of the structural bubble basis without building it.
pub fn bubble_dim(m: usize, kind: PolyKind, r: usize, k: usize, l: usize) -> usize {
    if k > m || l > m {
        return 0;
    }
    scalar_indices(m + 1, kind, r, k)
        .iter()
        .map(|(face, _, _)| n_space_dim(m, popcount(*face) - 1, l))
        .sum()
}

/// Closed-form bubble dimension, summed over attributed face dimensions j.
pub fn bubble_dim_formula(m: usize, kind: PolyKind, r: usize, k: usize, l: usize) -> usize {
    (k..=m)
        .map(|j| c(m + 1, j + 1) * scalar_bubble_dim_formula(j, kind, r, k) * n_space_dim(m, j, l))
        .sum()
}

/// Dimension of the scalar bubbles B_r⁻Λ^k or B_rΛ^k on a j-simplex.
pub fn scalar_bubble_dim_formula(j: usize, kind: PolyKind, r: usize, k: usize) -> usize {
    if j < k || r == 0 {
        return 0;
    }
    match kind {
        PolyKind::PrMinus => c(r + k - 1, r - 1) * c(r - 1, j - k),
        PolyKind::Pr => c(r + k, r) * c(r - 1, j - k),
    }
}

/// Scalar bubbles of the k-form space on the reference m-simplex: the
/// basis functions attributed to the whole simplex.
pub fn scalar_bubble_basis(m: usize, kind: PolyKind, r: usize, k: usize) -> Vec<PolyForm> {
    if k > m {
        return Vec::new();
    }
    let cell = Simplex::reference(m);
    let all: Mask = (1 << (m + 1)) - 1;
    crate::polyspaces::basis_scalar(&cell, kind, r, k)
        .into_iter()
        .filter(|a| a.face == all)
        .map(|a| a.form)
        .collect()
}

pub fn scalar_bubble_dim(m: usize, kind: PolyKind, r: usize, k: usize) -> usize {
    if k > m {
        return 0;
    }
    let all: Mask = (1 << (m + 1)) - 1;
    scalar_indices(m + 1, kind, r, k).iter().filter(|x| x.0 == all).count()
}

/// Matrix of all facet double traces of the full polynomial space; its
/// nullspace is the bubble space by definition.
fn facet_trace_matrix(cell: &Simplex, basis: &[PolyForm]) -> Mat {
    let m = cell.n;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for f in cell.faces(m - 1) {
        let traces: Vec<PolyForm> =
            basis.iter().map(|u| restrict(cell, f, u).select(TraceKind::II)).collect();
        let t = coeff_matrix(&traces);
        rows.extend(t.row_vecs());
    }
    if rows.is_empty() {
        return Mat::zeros(0, basis.len());
    }
    Mat::from_rows(&rows)
}

/// Bubbles as the nullspace of the facet double traces.
pub fn definitional_bubbles(m: usize, kind: PolyKind, r: usize, k: usize, l: usize) -> Vec<PolyForm> {
    if k > m || l > m {
        return Vec::new();
    }
    let cell = Simplex::reference(m);
    let basis = full_basis(&cell, kind, r, k, l);
    if m == 0 {
        return basis;
    }
    let t = facet_trace_matrix(&cell, &basis);
    let lay = basis[0].layout.clone();
    t.nullspace().into_iter().map(|v| PolyForm::combine(&lay, &basis, &v)).collect()
}

/// True when every form has vanishing double trace on all facets.
pub fn vanishes_on_boundary(m: usize, forms: &[PolyForm]) -> bool {
    if m == 0 {
        return true;
    }
    let cell = Simplex::reference(m);
    cell.faces(m - 1)
        .into_iter()
        .all(|f| forms.iter().all(|u| restrict(&cell, f, u).select(TraceKind::II).is_zero()))
}

/// Images of the bubbles under S_{†,[p]}, as coefficient vectors.
fn dagger_images(b: &BubbleBasis, p: usize) -> Vec<PolyForm> {
    let map = build_S_dagger(b.m, b.k, b.l, p);
    b.forms.iter().map(|f| f.apply_pair_map(&map)).collect()
}

/// rank of S_{†,[p]} restricted to the bubbles.
pub fn dagger_rank_on_bubbles(b: &BubbleBasis, p: usize) -> usize {
    if b.forms.is_empty() || b.k < p {
        return 0;
    }
    let imgs = dagger_images(b, p);
    span_rank(&imgs.iter().map(|f| f.coeffs.clone()).collect::<Vec<_>>())
}

/// B W_{[p]}: kernel of S_{†,[p]} on the bubble space.
pub fn bubble_w_basis(m: usize, kind: PolyKind, r: usize, k: usize, l: usize, p: usize) -> BubbleBasis {
    let b = bubble_basis(m, kind, r, k, l);
    if b.forms.is_empty() || k < p || l + p > m {
        return BubbleBasis { p, ..b };
    }
    let imgs = dagger_images(&b, p);
    let mat = coeff_matrix(&imgs);
    let lay = b.forms[0].layout.clone();
    let forms = mat.nullspace().into_iter().map(|v| PolyForm::combine(&lay, &b.forms, &v)).collect();
    BubbleBasis { m, kind, r, k, l, p, forms }
}

pub fn bubble_w_dim(m: usize, kind: PolyKind, r: usize, k: usize, l: usize, p: usize) -> usize {
    let b = bubble_basis(m, kind, r, k, l);
    b.dim() - dagger_rank_on_bubbles(&b, p)
}

/// Layout of the bubble forms (both families are homogeneous of degree r).
pub fn bubble_layout(m: usize, r: usize, k: usize, l: usize) -> Arc<Layout> {
    Arc::new(Layout::new(m + 1, m, k, l, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::iota_star;
    use crate::linalg::span_contains;

    fn vecs(f: &[PolyForm]) -> Vec<Vec<Q>> {
        f.iter().map(|x| x.coeffs.clone()).collect()
    }

    #[test]
    fn n_space_examples() {
        // 3D: edge with ℓ=1 gives nothing, 2-face with ℓ=2 gives two forms
        assert_eq!(n_space(3, 0b0011, 1).len(), 0);
        assert_eq!(n_space(3, 0b0111, 2).len(), 2);
        assert_eq!(n_space(4, 0b00111, 2).len(), 1);
        assert_eq!(n_space(3, 0b0111, 1).len(), 1);
    }

    #[test]
    fn n_space_matches_definition() {
        for m in 1..=4 {
            let cell = Simplex::reference(m);
            let all: Mask = (1 << (m + 1)) - 1;
            for l in 0..=m {
                for d in 0..=m {
                    for sigma in cell.faces(d) {
                        // constant ℓ-forms as degree-0 scalar PolyForms
                        let lay = Arc::new(Layout::new(m + 1, m, l, 0, 0));
                        let basis: Vec<PolyForm> = (0..c(m, l))
                            .map(|i| {
                                let mut f = PolyForm::zero(&lay);
                                f.coeffs[i] = Q::from_integer(1.into());
                                f
                            })
                            .collect();
                        let mut rows = Vec::new();
                        for v in bits(all & !sigma) {
                            let facet = all & !(1 << v);
                            let tr: Vec<PolyForm> = basis.iter().map(|u| iota_star(&cell, facet, u)).collect();
                            rows.extend(coeff_matrix(&tr).row_vecs());
                        }
                        let expect = if rows.is_empty() {
                            c(m, l)
                        } else {
                            Mat::from_rows(&rows).nullspace().len()
                        };
                        let got = n_space(m, sigma, l);
                        assert_eq!(got.len(), expect, "m={m} l={l} sigma={sigma:b}");
                        assert_eq!(got.len(), n_space_dim(m, d, l));
                        let gv: Vec<Vec<Q>> = got.iter().map(|f| f.coeffs.clone()).collect();
                        assert_eq!(span_rank(&gv), got.len());
                    }
                }
            }
        }
    }

    #[test]
    fn lowest_order_tables() {
        let k = PolyKind::PrMinus;
        let row = |k1, l1, ms: std::ops::RangeInclusive<usize>| -> Vec<usize> {
            ms.map(|m| bubble_dim(m, k, 1, k1, l1)).collect()
        };
        assert_eq!(row(1, 1, 1..=3), vec![1, 3, 0]);
        assert_eq!(row(2, 2, 1..=5), vec![0, 1, 8, 10, 0]);
        assert_eq!(row(3, 3, 1..=7), vec![0, 0, 1, 15, 45, 35, 0]);
    }

    #[test]
    fn structural_matches_definition() {
        for kind in [PolyKind::PrMinus, PolyKind::Pr] {
            for m in 1..=3 {
                for r in 1..=2 {
                    for k in 0..=m {
                        for l in 0..=m {
                            let s = bubble_basis(m, kind, r, k, l);
                            let d = definitional_bubbles(m, kind, r, k, l);
                            assert_eq!(s.dim(), d.len(), "{kind:?} m={m} r={r} k={k} l={l}");
                            assert_eq!(s.dim(), bubble_dim(m, kind, r, k, l));
                            assert_eq!(s.dim(), bubble_dim_formula(m, kind, r, k, l));
                            if !d.is_empty() {
                                assert!(span_contains(&vecs(&d), &vecs(&s.forms)));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn w_bubble_examples() {
        let k = PolyKind::PrMinus;
        assert_eq!(bubble_w_dim(1, k, 1, 1, 1, 1), 1);
        assert_eq!(bubble_w_dim(2, k, 1, 1, 1, 1), 0);
        assert_eq!(bubble_w_dim(3, k, 1, 2, 2, 1), 2);
        assert_eq!(bubble_w_dim(4, k, 1, 2, 2, 2), 5);
        let w = bubble_w_basis(3, k, 1, 2, 2, 1);
        assert_eq!(w.dim(), 2);
        assert!(vanishes_on_boundary(3, &w.forms));
    }

    #[test]
    fn dagger_is_onto_bubbles() {
        for kind in [PolyKind::PrMinus, PolyKind::Pr] {
            for m in 1..=3 {
                for r in 1..=2 {
                    for k in 0..=m {
                        for l in 0..=m {
                            for p in 1..=k {
                                let ok = match kind {
                                    PolyKind::PrMinus => k + 1 <= l + p,
                                    PolyKind::Pr => k <= l + p,
                                };
                                if !ok || l + p > m {
                                    continue;
                                }
                                let b = bubble_basis(m, kind, r, k, l);
                                let target = bubble_dim(m, kind, r, k - p, l + p);
                                assert_eq!(dagger_rank_on_bubbles(&b, p), target, "{kind:?} m={m} r={r} ({k},{l}) p={p}");
                            }
                        }
                    }
                }
            }
        }
    }
}
