//! Polynomial (k,ℓ)-forms on simplices.
//!
//! A [`PolyForm`] is homogeneous of some degree in the barycentric
//! coordinates of its simplex; both slots are expanded in a fixed constant
//! coframe (Cartesian on cells, the face frame on traces). Spaces of lower
//! degree are lifted by multiplying with Σλ_i = 1.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::bgg_ops::{build_S_dagger, symmetric_space, LinearMap};
use crate::exterior::{below, bits, c, popcount, tuple_masks, Mask, Tuples};
use crate::geometry::Simplex;
use crate::linalg::{Mat, Q};

/// Multi-index λ^α over the vertices of a simplex.
pub type BarycentricMonomial = Vec<u8>;

/// All exponent vectors of a fixed total degree, lexicographic (descending
/// in the first variable).
#[derive(Clone, Debug)]
pub struct Monomials {
    pub nv: usize,
    pub deg: usize,
    pub list: Vec<BarycentricMonomial>,
    index: HashMap<BarycentricMonomial, usize>,
}

impl Monomials {
    pub fn new(nv: usize, deg: usize) -> Self {
        let mut list = Vec::new();
        let mut cur = vec![0u8; nv];
        fn rec(i: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if i + 1 == cur.len() {
                cur[i] = left as u8;
                out.push(cur.clone());
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u8;
                rec(i + 1, left - e, cur, out);
            }
        }
        if nv > 0 {
            rec(0, deg, &mut cur, &mut list);
        } else if deg == 0 {
            list.push(Vec::new());
        }
        let index = list.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Monomials { nv, deg, list, index }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn index(&self, m: &[u8]) -> usize {
        self.index[m]
    }
}

/// Coefficient layout: (monomial, I ∈ X(dim,k), J ∈ X(dim,ℓ)).
#[derive(Clone, Debug)]
pub struct Layout {
    pub nv: usize,
    pub dim: usize,
    pub k: usize,
    pub l: usize,
    pub deg: usize,
    pub monos: Arc<Monomials>,
    pub ti: Arc<Tuples>,
    pub tj: Arc<Tuples>,
}

impl Layout {
    pub fn new(nv: usize, dim: usize, k: usize, l: usize, deg: usize) -> Self {
        Layout {
            nv,
            dim,
            k,
            l,
            deg,
            monos: Arc::new(Monomials::new(nv, deg)),
            ti: Arc::new(Tuples::new(dim, k)),
            tj: Arc::new(Tuples::new(dim, l)),
        }
    }

    pub fn len(&self) -> usize {
        self.monos.len() * self.ti.len() * self.tj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn idx(&self, mono: usize, i: usize, j: usize) -> usize {
        (mono * self.ti.len() + i) * self.tj.len() + j
    }

    pub fn same_shape(&self, o: &Layout) -> bool {
        (self.nv, self.dim, self.k, self.l, self.deg) == (o.nv, o.dim, o.k, o.l, o.deg)
    }
}

/// Polynomial (k,ℓ)-form, homogeneous in barycentrics.
#[derive(Clone, Debug)]
pub struct PolyForm {
    pub layout: Arc<Layout>,
    pub coeffs: Vec<Q>,
}

impl PartialEq for PolyForm {
    fn eq(&self, o: &Self) -> bool {
        self.layout.same_shape(&o.layout) && self.coeffs == o.coeffs
    }
}

impl PolyForm {
    pub fn zero(layout: &Arc<Layout>) -> Self {
        PolyForm { layout: layout.clone(), coeffs: vec![Q::zero(); layout.len()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }

    pub fn add_scaled(&mut self, o: &PolyForm, s: &Q) {
        assert!(self.layout.same_shape(&o.layout), "layout mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            if !b.is_zero() {
                *a += b * s;
            }
        }
    }

    pub fn scale(&self, s: &Q) -> PolyForm {
        PolyForm { layout: self.layout.clone(), coeffs: self.coeffs.iter().map(|x| x * s).collect() }
    }

    /// Linear combination Σ c_i f_i of forms with a common layout.
    pub fn combine(layout: &Arc<Layout>, forms: &[PolyForm], cs: &[Q]) -> PolyForm {
        let mut out = PolyForm::zero(layout);
        for (f, x) in forms.iter().zip(cs) {
            if !x.is_zero() {
                out.add_scaled(f, x);
            }
        }
        out
    }

    /// Keep only the (I,J) components accepted by `keep`.
    pub fn filter_forms(&self, keep: impl Fn(Mask, Mask) -> bool) -> PolyForm {
        let lay = &self.layout;
        let mut out = self.clone();
        for m in 0..lay.monos.len() {
            for (i, &im) in lay.ti.list.iter().enumerate() {
                for (j, &jm) in lay.tj.list.iter().enumerate() {
                    if !keep(im, jm) {
                        out.coeffs[lay.idx(m, i, j)] = Q::zero();
                    }
                }
            }
        }
        out
    }

    /// Apply a constant pair map (e.g. S or S†) pointwise.
    pub fn apply_pair_map(&self, map: &LinearMap) -> PolyForm {
        let lay = &self.layout;
        assert_eq!((map.domain.0, map.domain.1, map.n), (lay.k, lay.l, lay.dim));
        let out_layout = Arc::new(Layout::new(lay.nv, lay.dim, map.codomain.0, map.codomain.1, lay.deg));
        let mut out = PolyForm::zero(&out_layout);
        let (src, dst) = (lay.ti.len() * lay.tj.len(), out_layout.ti.len() * out_layout.tj.len());
        let entries = map.entries();
        for m in 0..lay.monos.len() {
            for (r, col, v) in &entries {
                let x = &self.coeffs[m * src + col];
                if !x.is_zero() {
                    out.coeffs[m * dst + r] += x * v;
                }
            }
        }
        out
    }

    /// Multiply by λ^β.
    pub fn mul_monomial(&self, beta: &[u8]) -> PolyForm {
        let lay = &self.layout;
        let d: usize = beta.iter().map(|&x| x as usize).sum();
        let out_layout = Arc::new(Layout::new(lay.nv, lay.dim, lay.k, lay.l, lay.deg + d));
        let mut out = PolyForm::zero(&out_layout);
        let blk = lay.ti.len() * lay.tj.len();
        for (mi, a) in lay.monos.list.iter().enumerate() {
            let s: Vec<u8> = a.iter().zip(beta).map(|(x, y)| x + y).collect();
            let mo = out_layout.monos.index(&s);
            for t in 0..blk {
                let x = &self.coeffs[mi * blk + t];
                if !x.is_zero() {
                    out.coeffs[mo * blk + t] += x;
                }
            }
        }
        out
    }

    /// Multiply by Σλ_i (= 1), raising the homogeneous degree by one.
    pub fn lift(&self) -> PolyForm {
        let lay = &self.layout;
        let out_layout = Arc::new(Layout::new(lay.nv, lay.dim, lay.k, lay.l, lay.deg + 1));
        let mut out = PolyForm::zero(&out_layout);
        let blk = lay.ti.len() * lay.tj.len();
        for (mi, a) in lay.monos.list.iter().enumerate() {
            for v in 0..lay.nv {
                let mut s = a.clone();
                s[v] += 1;
                let mo = out_layout.monos.index(&s);
                for t in 0..blk {
                    let x = &self.coeffs[mi * blk + t];
                    if !x.is_zero() {
                        out.coeffs[mo * blk + t] += x;
                    }
                }
            }
        }
        out
    }

    pub fn lift_to(&self, deg: usize) -> PolyForm {
        let mut f = self.clone();
        while f.layout.deg < deg {
            f = f.lift();
        }
        f
    }

    /// Tensor a scalar k-form with a constant ℓ-form given over X(dim,ℓ).
    pub fn tensor_const(scalar: &PolyForm, value: &[Q], l: usize) -> PolyForm {
        let sl = &scalar.layout;
        assert_eq!(sl.l, 0);
        let layout = Arc::new(Layout::new(sl.nv, sl.dim, sl.k, l, sl.deg));
        let mut out = PolyForm::zero(&layout);
        let nj = layout.tj.len();
        assert_eq!(value.len(), nj);
        for m in 0..sl.monos.len() {
            for i in 0..sl.ti.len() {
                let x = &scalar.coeffs[m * sl.ti.len() + i];
                if x.is_zero() {
                    continue;
                }
                for (j, v) in value.iter().enumerate() {
                    if !v.is_zero() {
                        out.coeffs[layout.idx(m, i, j)] = x * v;
                    }
                }
            }
        }
        out
    }

    /// Koszul operator on the first slot, for forms on the reference simplex
    /// (vertex 0 at the origin, x_i = λ_i).
    pub fn koszul(&self) -> PolyForm {
        let lay = &self.layout;
        assert_eq!(lay.nv, lay.dim + 1, "koszul needs a full reference simplex");
        if lay.k == 0 {
            let out_layout = Arc::new(Layout::new(lay.nv, lay.dim, 0, lay.l, lay.deg + 1));
            return PolyForm::zero(&out_layout);
        }
        let out_layout = Arc::new(Layout::new(lay.nv, lay.dim, lay.k - 1, lay.l, lay.deg + 1));
        let mut out = PolyForm::zero(&out_layout);
        for (mi, a) in lay.monos.list.iter().enumerate() {
            for (ii, &im) in lay.ti.list.iter().enumerate() {
                for j in 0..lay.tj.len() {
                    let x = &self.coeffs[lay.idx(mi, ii, j)];
                    if x.is_zero() {
                        continue;
                    }
                    for b in bits(im) {
                        let mut s = a.clone();
                        s[b + 1] += 1;
                        let mo = out_layout.monos.index(&s);
                        let oi = out_layout.ti.index(im & !(1 << b));
                        let idx = out_layout.idx(mo, oi, j);
                        if below(im, b) % 2 == 0 {
                            out.coeffs[idx] += x;
                        } else {
                            out.coeffs[idx] -= x;
                        }
                    }
                }
            }
        }
        out
    }
}

/// A basis element of a polynomial space with the face it is attributed to.
#[derive(Clone, Debug)]
pub struct Attributed {
    pub face: Mask,
    pub form: PolyForm,
}

/// Scalar Whitney form φ_σ = Σ_j (−1)^j λ_{σ_j} dλ_{σ∖σ_j} on `cell`.
pub fn whitney_form(cell: &Simplex, sigma: Mask) -> PolyForm {
    let k = popcount(sigma) - 1;
    let layout = Arc::new(Layout::new(cell.nv(), cell.n, k, 0, 1));
    let mut out = PolyForm::zero(&layout);
    for (j, v) in bits(sigma).enumerate() {
        let mut a = vec![0u8; cell.nv()];
        a[v] = 1;
        let mo = layout.monos.index(&a);
        let dl = cell.dlambda(sigma & !(1 << v));
        for (i, x) in dl.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if j % 2 == 0 {
                out.coeffs[mo * layout.ti.len() + i] += x;
            } else {
                out.coeffs[mo * layout.ti.len() + i] -= x;
            }
        }
    }
    out
}

/// Constant form dλ_{s} as a degree-0 scalar PolyForm.
pub fn dlambda_form(cell: &Simplex, s: Mask) -> PolyForm {
    let layout = Arc::new(Layout::new(cell.nv(), cell.n, popcount(s), 0, 0));
    PolyForm { layout, coeffs: cell.dlambda(s).to_vec() }
}

pub fn multi_indices(nv: usize, deg: usize) -> Vec<Vec<u8>> {
    Monomials::new(nv, deg).list
}

fn support(a: &[u8]) -> Mask {
    a.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (i, _)| m | 1 << i)
}

fn lowest(m: Mask) -> usize {
    m.trailing_zeros() as usize
}

/// Index triples (face, α, I) of the P_r⁻Λ^k basis λ^α φ_I: |α| = r−1,
/// |I| = k+1, α_i = 0 for i < min I, attributed to supp α ∪ I.
pub fn pr_minus_indices(nv: usize, r: usize, k: usize) -> Vec<(Mask, Vec<u8>, Mask)> {
    assert!(r >= 1);
    let mut out = Vec::new();
    for im in tuple_masks(nv, k + 1) {
        let mi = lowest(im);
        for a in multi_indices(nv, r - 1) {
            if a.iter().take(mi).any(|&e| e > 0) {
                continue;
            }
            out.push((support(&a) | im, a, im));
        }
    }
    out.sort_by_key(|x| (popcount(x.0), x.0));
    out
}

/// Index triples (face, α, I) of the P_rΛ^k basis λ^α dλ_I: |α| = r,
/// |I| = k, α_i = 0 for i < min(σ∖I) where σ = supp α ∪ I.
pub fn pr_indices(nv: usize, r: usize, k: usize) -> Vec<(Mask, Vec<u8>, Mask)> {
    let mut out = Vec::new();
    for im in tuple_masks(nv, k) {
        for a in multi_indices(nv, r) {
            let sigma = support(&a) | im;
            let rest = sigma & !im;
            if rest == 0 {
                continue;
            }
            let mr = lowest(rest);
            if a.iter().take(mr).any(|&e| e > 0) {
                continue;
            }
            out.push((sigma, a, im));
        }
    }
    out.sort_by_key(|x| (popcount(x.0), x.0));
    out
}

pub fn basis_pr_minus_scalar(cell: &Simplex, r: usize, k: usize) -> Vec<Attributed> {
    pr_minus_indices(cell.nv(), r, k)
        .into_iter()
        .map(|(face, a, im)| Attributed { face, form: whitney_form(cell, im).mul_monomial(&a) })
        .collect()
}

pub fn basis_pr_scalar(cell: &Simplex, r: usize, k: usize) -> Vec<Attributed> {
    pr_indices(cell.nv(), r, k)
        .into_iter()
        .map(|(face, a, im)| Attributed { face, form: dlambda_form(cell, im).mul_monomial(&a) })
        .collect()
}

/// Which polynomial family a space is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyKind {
    /// P_r⁻ (Whitney-type; r = 1 is the lowest order).
    PrMinus,
    /// Full P_r.
    Pr,
}

pub fn scalar_indices(nv: usize, kind: PolyKind, r: usize, k: usize) -> Vec<(Mask, Vec<u8>, Mask)> {
    match kind {
        PolyKind::PrMinus => pr_minus_indices(nv, r, k),
        PolyKind::Pr => pr_indices(nv, r, k),
    }
}

pub fn basis_scalar(cell: &Simplex, kind: PolyKind, r: usize, k: usize) -> Vec<Attributed> {
    match kind {
        PolyKind::PrMinus => basis_pr_minus_scalar(cell, r, k),
        PolyKind::Pr => basis_pr_scalar(cell, r, k),
    }
}

/// Constant unit ℓ-form dx^J (as coefficients over X(dim,ℓ)).
pub fn unit_value(dim: usize, l: usize, j: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); c(dim, l)];
    v[j] = Q::one();
    v
}

/// Basis of P_r⁻Λ^{k,ℓ}: scalar basis ⊗ dx^J.
pub fn basis_pr_minus(cell: &Simplex, r: usize, k: usize, l: usize) -> Vec<PolyForm> {
    tensor_basis(&basis_pr_minus_scalar(cell, r, k), cell.n, l)
}

/// Basis of P_rΛ^{k,ℓ}.
pub fn basis_pr(cell: &Simplex, r: usize, k: usize, l: usize) -> Vec<PolyForm> {
    tensor_basis(&basis_pr_scalar(cell, r, k), cell.n, l)
}

pub fn tensor_basis(scalar: &[Attributed], dim: usize, l: usize) -> Vec<PolyForm> {
    let mut out = Vec::new();
    for s in scalar {
        for j in 0..c(dim, l) {
            out.push(PolyForm::tensor_const(&s.form, &unit_value(dim, l, j), l));
        }
    }
    out
}

pub fn full_basis(cell: &Simplex, kind: PolyKind, r: usize, k: usize, l: usize) -> Vec<PolyForm> {
    tensor_basis(&basis_scalar(cell, kind, r, k), cell.n, l)
}

pub fn dim_pr_minus(n: usize, r: usize, k: usize, l: usize) -> usize {
    if r == 0 {
        return 0;
    }
    c(n + r, k + r) * c(r + k - 1, k) * c(n, l)
}

pub fn dim_pr(n: usize, r: usize, k: usize, l: usize) -> usize {
    c(n + r, n) * c(n, k) * c(n, l)
}

pub fn dim_poly(kind: PolyKind, n: usize, r: usize, k: usize, l: usize) -> usize {
    match kind {
        PolyKind::PrMinus => dim_pr_minus(n, r, k, l),
        PolyKind::Pr => dim_pr(n, r, k, l),
    }
}

impl PolyKind {
    pub fn name(self) -> &'static str {
        match self {
            PolyKind::PrMinus => "Pr_minus",
            PolyKind::Pr => "Pr",
        }
    }
}

/// Re-express a form written over X(m,·) (a face in its own frame) over
/// X(n,·) for n ≥ m; the first m frame slots are the tangents.
pub fn embed_dim(f: &PolyForm, n: usize) -> PolyForm {
    let lay = &f.layout;
    if lay.dim == n {
        return f.clone();
    }
    let out_layout = Arc::new(Layout::new(lay.nv, n, lay.k, lay.l, lay.deg));
    let mut out = PolyForm::zero(&out_layout);
    let imap: Vec<usize> = lay.ti.list.iter().map(|&m| out_layout.ti.index(m)).collect();
    let jmap: Vec<usize> = lay.tj.list.iter().map(|&m| out_layout.tj.index(m)).collect();
    for mo in 0..lay.monos.len() {
        for (i, &oi) in imap.iter().enumerate() {
            for (j, &oj) in jmap.iter().enumerate() {
                out.coeffs[out_layout.idx(mo, oi, oj)] = f.coeffs[lay.idx(mo, i, j)].clone();
            }
        }
    }
    out
}

fn factorial(n: usize) -> num_bigint::BigInt {
    (1..=n).fold(num_bigint::BigInt::one(), |a, i| a * i)
}

/// ∫ λ^γ over an m-simplex of unit measure: m!·γ!/(|γ|+m)!.
pub fn monomial_integral(gamma: &[u8]) -> Q {
    let m = gamma.len().saturating_sub(1);
    let s: usize = gamma.iter().map(|&g| g as usize).sum();
    let num = gamma.iter().fold(factorial(m), |a, &g| a * factorial(g as usize));
    Q::new(num, factorial(s + m))
}

/// L² pairing over the face of two forms in the same frame, with the
/// Frobenius product on frame coefficients.
pub fn pair(u: &PolyForm, b: &PolyForm) -> Q {
    let w = pairing_weights(b, &u.layout);
    w.iter().zip(&u.coeffs).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()
}

/// Dense weight vector w over `target` with pair(u, b) = w · u.coeffs.
pub fn pairing_weights(b: &PolyForm, target: &Layout) -> Vec<Q> {
    let bl = &b.layout;
    assert_eq!((bl.nv, bl.dim, bl.k, bl.l), (target.nv, target.dim, target.k, target.l));
    let blk = bl.ti.len() * bl.tj.len();
    let mut w = vec![Q::zero(); target.len()];
    for (mb, beta) in bl.monos.list.iter().enumerate() {
        let base = &b.coeffs[mb * blk..(mb + 1) * blk];
        if base.iter().all(|x| x.is_zero()) {
            continue;
        }
        for (mu, alpha) in target.monos.list.iter().enumerate() {
            let g: Vec<u8> = alpha.iter().zip(beta).map(|(x, y)| x + y).collect();
            let integral = monomial_integral(&g);
            for t in 0..blk {
                if !base[t].is_zero() {
                    w[mu * blk + t] += &base[t] * &integral;
                }
            }
        }
    }
    w
}

/// Matrix whose columns are the coefficient vectors of `forms`.
pub fn coeff_matrix(forms: &[PolyForm]) -> Mat {
    let len = forms.first().map_or(0, |f| f.coeffs.len());
    let cols: Vec<Vec<Q>> = forms.iter().map(|f| f.coeffs.clone()).collect();
    Mat::from_cols(len, &cols)
}

/// Basis of ker S_{†,[p]} inside span(`basis`), all forms sharing one layout.
pub fn kernel_in_span(basis: &[PolyForm], p: usize) -> Vec<PolyForm> {
    let Some(first) = basis.first() else { return Vec::new() };
    let lay = first.layout.clone();
    let map = build_S_dagger(lay.dim, lay.k, lay.l, p);
    let images: Vec<PolyForm> = basis.iter().map(|f| f.apply_pair_map(&map)).collect();
    let m = coeff_matrix(&images);
    if m.rows == 0 {
        return basis.to_vec();
    }
    m.nullspace().into_iter().map(|v| PolyForm::combine(&lay, basis, &v)).collect()
}

/// Basis of P_r⁻W^{k,ℓ}_{[p]} = ker S_{†,[p]} ∩ P_r⁻Λ^{k,ℓ} on `cell`.
pub fn kernel_space_prw_on(cell: &Simplex, kind: PolyKind, r: usize, k: usize, l: usize, p: usize) -> Vec<PolyForm> {
    kernel_in_span(&full_basis(cell, kind, r, k, l), p)
}

/// Basis of P_r⁻W^{k,ℓ}_{[p]} on the reference n-simplex.
pub fn kernel_space_prw(n: usize, r: usize, k: usize, l: usize, p: usize) -> Vec<PolyForm> {
    kernel_space_prw_on(&Simplex::reference(n), PolyKind::PrMinus, r, k, l, p)
}

/// Span of P_{r−1}W^{k,ℓ}_{[p]} ⊕ κH_{r−1}W^{k+1,ℓ}_{[p]} on the reference
/// simplex, lifted to degree r.
pub fn structural_prw(n: usize, r: usize, k: usize, l: usize, p: usize) -> Vec<PolyForm> {
    let nv = n + 1;
    let mut out = Vec::new();
    let w = symmetric_space(n, k, l, p);
    let layout0 = Arc::new(Layout::new(nv, n, k, l, 0));
    for a in multi_indices(nv, r - 1) {
        for f in &w.basis {
            let cf = PolyForm { layout: layout0.clone(), coeffs: f.coeffs.clone() };
            out.push(cf.mul_monomial(&a).lift_to(r));
        }
    }
    if k + 1 <= n {
        let w1 = symmetric_space(n, k + 1, l, p);
        let layout1 = Arc::new(Layout::new(nv, n, k + 1, l, 0));
        for a in multi_indices(n, r - 1) {
            // homogeneous in x_1..x_n = λ_1..λ_n
            let mut full = vec![0u8];
            full.extend(a.iter().copied());
            for f in &w1.basis {
                let cf = PolyForm { layout: layout1.clone(), coeffs: f.coeffs.clone() };
                out.push(cf.mul_monomial(&full).koszul());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::iota_star;
    use crate::linalg::{q, span_contains, span_rank};

    fn ranks(forms: &[PolyForm]) -> usize {
        span_rank(&forms.iter().map(|f| f.coeffs.clone()).collect::<Vec<_>>())
    }

    #[test]
    fn whitney_edge_form() {
        let cell = Simplex::reference(1);
        let phi = whitney_form(&cell, 0b11);
        // φ = λ0 dλ1 − λ1 dλ0 = (λ0 + λ1) dx
        assert_eq!(phi.coeffs, vec![q(1), q(1)]);
    }

    #[test]
    fn whitney_traces_vanish_off_diagonal() {
        for n in 1..=4 {
            let cell = Simplex::reference(n);
            for k in 0..=n {
                let faces = cell.faces(k);
                for &s in &faces {
                    let phi = whitney_form(&cell, s);
                    for &t in &faces {
                        let tr = iota_star(&cell, t, &phi);
                        assert_eq!(tr.is_zero(), s != t, "n={n} k={k}");
                    }
                }
                let all: Vec<PolyForm> = faces.iter().map(|&s| whitney_form(&cell, s)).collect();
                assert_eq!(ranks(&all), c(n + 1, k + 1));
            }
        }
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(basis_pr_minus_scalar(&Simplex::reference(3), 1, 1).len(), 6);
        assert_eq!(basis_pr_minus_scalar(&Simplex::reference(3), 2, 1).len(), 20);
        assert_eq!(basis_pr_scalar(&Simplex::reference(3), 1, 1).len(), 12);
        assert_eq!(basis_pr_scalar(&Simplex::reference(2), 2, 1).len(), 12);
    }

    #[test]
    fn dimension_formulas_small() {
        for n in 1..=3 {
            let cell = Simplex::reference(n);
            for r in 1..=2 {
                for k in 0..=n {
                    let bm = basis_pr_minus(&cell, r, k, 1.min(n));
                    assert_eq!(bm.len(), dim_pr_minus(n, r, k, 1.min(n)));
                    assert_eq!(ranks(&bm), bm.len());
                    let bp = basis_pr(&cell, r, k, 0);
                    assert_eq!(bp.len(), dim_pr(n, r, k, 0));
                    assert_eq!(ranks(&bp), bp.len());
                }
            }
        }
    }

    #[test]
    fn koszul_examples() {
        let cell = Simplex::reference(3);
        // κ(dx¹) = x¹ = λ_1
        let layout = Arc::new(Layout::new(4, 3, 1, 0, 0));
        let mut dx1 = PolyForm::zero(&layout);
        dx1.coeffs[0] = q(1);
        let kx = dx1.koszul();
        let mut expect = PolyForm::zero(&Arc::new(Layout::new(4, 3, 0, 0, 1)));
        expect.coeffs[kx.layout.monos.index(&[0, 1, 0, 0])] = q(1);
        assert_eq!(kx, expect);
        for f in basis_pr(&cell, 2, 2, 0) {
            assert!(f.koszul().koszul().is_zero());
        }
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_space_prw(3, 1, 1, 1, 1).len(), 6);
        assert_eq!(kernel_space_prw(3, 1, 1, 2, 1).len(), 14);
        assert_eq!(kernel_space_prw(3, 2, 1, 1, 1).len(), 30);
    }

    #[test]
    fn structural_kernel_matches_nullspace() {
        for (n, r, k, l, p) in [(2, 2, 0, 1, 1), (3, 2, 1, 2, 1), (3, 2, 0, 1, 1), (3, 2, 1, 1, 2), (2, 3, 0, 1, 1)] {
            let ker = kernel_space_prw(n, r, k, l, p);
            let st = structural_prw(n, r, k, l, p);
            let kv: Vec<Vec<Q>> = ker.iter().map(|f| f.coeffs.clone()).collect();
            let sv: Vec<Vec<Q>> = st.iter().map(|f| f.coeffs.clone()).collect();
            assert_eq!(span_rank(&sv), kv.len(), "({n},{r},{k},{l},{p})");
            assert!(span_contains(&kv, &sv));
        }
    }
}
