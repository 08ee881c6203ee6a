//! The connecting maps S and S†, their iterates, the symmetric spaces they
//! cut out, and the algebraic decompositions built from them.

use num_traits::{One, Zero};

use crate::exterior::{below, c, popcount, ConstForm, Tuples};
use crate::linalg::{Mat, Q};

/// Linear map between constant form spaces, rows indexed by the codomain
/// pair basis and columns by the domain pair basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub n: usize,
    pub domain: (usize, usize),
    pub codomain: (usize, usize),
    pub matrix: Mat,
}

impl LinearMap {
    pub fn zero(n: usize, domain: (usize, usize), codomain: (usize, usize)) -> Self {
        let rows = ConstForm::dim(n, codomain.0, codomain.1);
        let cols = ConstForm::dim(n, domain.0, domain.1);
        LinearMap { n, domain, codomain, matrix: Mat::zeros(rows, cols) }
    }

    pub fn apply(&self, f: &ConstForm) -> ConstForm {
        assert_eq!((f.n, f.k, f.l), (self.n, self.domain.0, self.domain.1));
        ConstForm { n: self.n, k: self.codomain.0, l: self.codomain.1, coeffs: self.matrix.mul_vec(&f.coeffs) }
    }

    /// Composition `self ∘ first`.
    pub fn after(&self, first: &LinearMap) -> LinearMap {
        assert_eq!(first.codomain, self.domain);
        LinearMap { n: self.n, domain: first.domain, codomain: self.codomain, matrix: self.matrix.mul(&first.matrix) }
    }

    /// Nonzero entries as (row, col, value).
    pub fn entries(&self) -> Vec<(usize, usize, Q)> {
        let mut out = Vec::new();
        for i in 0..self.matrix.rows {
            for j in 0..self.matrix.cols {
                let v = self.matrix.get(i, j);
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

fn valid(n: usize, k: usize, l: usize) -> bool {
    k <= n && l <= n
}

/// S^{k,ℓ}: Alt^{k,ℓ} → Alt^{k+1,ℓ−1}.
///
/// On basis pairs: dx^I⊗dx^J ↦ Σ_{a∈J∖I} (−1)^{|I<a|+|J<a|} dx^{I∪a}⊗dx^{J∖a}.
#[allow(non_snake_case)]
pub fn build_S(n: usize, k: usize, l: usize) -> LinearMap {
    if l == 0 || !valid(n, k + 1, l - 1) || !valid(n, k, l) {
        return LinearMap::zero(n, (k, l), (k + 1, l.saturating_sub(1)));
    }
    let (ti, tj) = (Tuples::new(n, k), Tuples::new(n, l));
    let (to, tp) = (Tuples::new(n, k + 1), Tuples::new(n, l - 1));
    let mut m = Mat::zeros(to.len() * tp.len(), ti.len() * tj.len());
    for (a_i, &i) in ti.list.iter().enumerate() {
        for (b_j, &j) in tj.list.iter().enumerate() {
            let col = a_i * tj.len() + b_j;
            for a in crate::exterior::bits(j & !i) {
                let s = below(i, a) + below(j, a);
                let row = to.index(i | 1 << a) * tp.len() + tp.index(j & !(1 << a));
                m.set(row, col, if s % 2 == 0 { Q::one() } else { -Q::one() });
            }
        }
    }
    LinearMap { n, domain: (k, l), codomain: (k + 1, l - 1), matrix: m }
}

/// Single S†^{k,ℓ}: Alt^{k,ℓ} → Alt^{k−1,ℓ+1}.
fn s_dagger_1(n: usize, k: usize, l: usize) -> LinearMap {
    if k == 0 || !valid(n, k - 1, l + 1) || !valid(n, k, l) {
        return LinearMap::zero(n, (k, l), (k.saturating_sub(1), l + 1));
    }
    let (ti, tj) = (Tuples::new(n, k), Tuples::new(n, l));
    let (to, tp) = (Tuples::new(n, k - 1), Tuples::new(n, l + 1));
    let mut m = Mat::zeros(to.len() * tp.len(), ti.len() * tj.len());
    for (a_i, &i) in ti.list.iter().enumerate() {
        for (b_j, &j) in tj.list.iter().enumerate() {
            let col = a_i * tj.len() + b_j;
            for b in crate::exterior::bits(i & !j) {
                let s = below(i, b) + below(j, b);
                let row = to.index(i & !(1 << b)) * tp.len() + tp.index(j | 1 << b);
                m.set(row, col, if s % 2 == 0 { Q::one() } else { -Q::one() });
            }
        }
    }
    LinearMap { n, domain: (k, l), codomain: (k - 1, l + 1), matrix: m }
}

/// Iterated S_{[p]}^{k,ℓ} = S^{k+p−1,ℓ−p+1} ∘ … ∘ S^{k,ℓ}.
#[allow(non_snake_case)]
pub fn build_S_p(n: usize, k: usize, l: usize, p: usize) -> LinearMap {
    if p > l || k + p > n {
        return LinearMap::zero(n, (k, l), (k + p, l.saturating_sub(p)));
    }
    let mut acc = LinearMap { n, domain: (k, l), codomain: (k, l), matrix: Mat::identity(ConstForm::dim(n, k, l)) };
    for j in 0..p {
        acc = build_S(n, k + j, l - j).after(&acc);
    }
    acc
}

/// Iterated S_{†,[p]}^{k,ℓ}: Alt^{k,ℓ} → Alt^{k−p,ℓ+p}.
#[allow(non_snake_case)]
pub fn build_S_dagger(n: usize, k: usize, l: usize, p: usize) -> LinearMap {
    if p > k || l + p > n {
        return LinearMap::zero(n, (k, l), (k.saturating_sub(p), l + p));
    }
    let mut acc = LinearMap { n, domain: (k, l), codomain: (k, l), matrix: Mat::identity(ConstForm::dim(n, k, l)) };
    for j in 0..p {
        acc = s_dagger_1(n, k - j, l + j).after(&acc);
    }
    acc
}

/// C(n,k)C(n,ℓ) − C(n,k−p)C(n,ℓ+p), zero terms for invalid degrees.
pub fn w_dim(n: usize, k: usize, l: usize, p: usize) -> usize {
    let minus = if k >= p { c(n, k - p) * c(n, l + p) } else { 0 };
    c(n, k) * c(n, l) - minus
}

/// Basis of W^{k,ℓ}_{[p]} = ker S_{†,[p]} (or of W̃ = ker S_{[p]} when `tilde`).
#[derive(Clone, Debug)]
pub struct SymmetricSpaceBasis {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub p: usize,
    pub tilde: bool,
    pub basis: Vec<ConstForm>,
}

impl SymmetricSpaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coeff_vectors(&self) -> Vec<Vec<Q>> {
        self.basis.iter().map(|f| f.coeffs.clone()).collect()
    }
}

/// W^{k,ℓ}_{[p]} when k ≤ ℓ+p−1, otherwise W̃^{k,ℓ}_{[p]} = ker S_{[p]}.
pub fn symmetric_space(n: usize, k: usize, l: usize, p: usize) -> SymmetricSpaceBasis {
    let tilde = k + 1 > l + p;
    let map = if tilde { build_S_p(n, k, l, p) } else { build_S_dagger(n, k, l, p) };
    let basis = map.matrix.nullspace().into_iter().map(|coeffs| ConstForm { n, k, l, coeffs }).collect();
    SymmetricSpaceBasis { n, k, l, p, tilde, basis }
}

/// Pieces W^{k,ℓ}, S W^{k−1,ℓ+1}, …, S_{[p−1]} W^{k−p+1,ℓ+p−1} of W^{k,ℓ}_{[p]}.
pub fn telescope_decompose(n: usize, k: usize, l: usize, p: usize) -> Vec<Vec<ConstForm>> {
    let mut out = Vec::new();
    for j in 0..p {
        if j > k {
            break;
        }
        let w = symmetric_space(n, k - j, l + j, 1);
        let s = build_S_p(n, k - j, l + j, j);
        let images: Vec<Vec<Q>> = w.basis.iter().map(|f| s.matrix.mul_vec(&f.coeffs)).collect();
        let piece: Vec<ConstForm> = if images.is_empty() {
            Vec::new()
        } else {
            let m = Mat::from_cols(ConstForm::dim(n, k, l), &images);
            m.independent_cols().into_iter().map(|i| ConstForm { n, k, l, coeffs: images[i].clone() }).collect()
        };
        out.push(piece);
    }
    out
}

/// Swap of the two slots on Alt^{k,k}.
pub fn swap_map(n: usize, k: usize) -> Mat {
    let t = Tuples::new(n, k);
    let d = t.len();
    let mut m = Mat::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            m.set(b * d + a, a * d + b, Q::one());
        }
    }
    m
}

/// The Bianchi map on Alt^{2,2} and its companions.
#[derive(Clone, Debug)]
pub struct BianchiMap {
    pub n: usize,
    /// b: Alt^{2,2} → Alt^4 (evaluated on the full space).
    pub b: Mat,
    /// sym = (id + swap)/2 on Alt^{2,2}.
    pub sym: Mat,
    /// Right inverse of b on the symmetric part, proportional to S_{[2]}^{0,4}.
    pub embed: Mat,
    /// embed ∘ b ∘ sym, an idempotent on Alt^{2,2}.
    pub projection: Mat,
    /// Basis of sym Alt^{2,2} (as columns).
    pub sym_basis: Mat,
}

/// Evaluate dx^M on basis vectors e_{v_1},…,e_{v_r} (0-based indices).
fn eval_basis(m: u32, vs: &[usize]) -> i64 {
    let mut seen = 0u32;
    for &v in vs {
        if seen >> v & 1 == 1 {
            return 0;
        }
        seen |= 1 << v;
    }
    if seen != m {
        return 0;
    }
    let mut inv = 0;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if vs[i] > vs[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn bianchi_map(n: usize) -> BianchiMap {
    let t2 = Tuples::new(n, 2);
    let t4 = Tuples::new(n, 4);
    let d = t2.len();
    let swap = swap_map(n, 2);
    let sym = Mat::identity(d * d).add(&swap).scale(&crate::linalg::qfrac(1, 2));
    let mut b = Mat::zeros(t4.len(), d * d);
    for (r, &m4) in t4.list.iter().enumerate() {
        let v: Vec<usize> = crate::exterior::bits(m4).collect();
        let (x, y, z, w) = (v[0], v[1], v[2], v[3]);
        let terms = [([x, y], [z, w]), ([y, z], [x, w]), ([z, x], [y, w])];
        for (ai, &i) in t2.list.iter().enumerate() {
            for (bj, &j) in t2.list.iter().enumerate() {
                let mut s = 0;
                for (a, bb) in &terms {
                    s += eval_basis(i, a) * eval_basis(j, bb);
                }
                if s != 0 {
                    b.set(r, ai * d + bj, crate::linalg::qfrac(s, 2));
                }
            }
        }
    }
    let s04 = build_S_p(n, 0, 4, 2).matrix;
    let (embed, projection) = if t4.is_empty() {
        (s04, Mat::zeros(d * d, d * d))
    } else {
        // b ∘ S_{[2]}^{0,4} is a nonzero multiple of the identity on Alt^4
        let c0 = b.mul(&s04).get(0, 0).clone();
        let embed = s04.scale(&(Q::one() / c0));
        let projection = embed.mul(&b).mul(&sym);
        (embed, projection)
    };
    let sym_basis = sym.transpose().rref().0.transpose();
    BianchiMap { n, b, sym, embed, projection, sym_basis }
}

/// The flip S_{†,[ℓ−k]}^{ℓ,k} restricted to W^{ℓ,k}_{[1+ℓ−k]}, expressed as the
/// image vectors in Alt^{k,ℓ}, together with a basis of W^{k,ℓ}.
#[derive(Clone, Debug)]
pub struct FlipIsomorphism {
    pub source: SymmetricSpaceBasis,
    pub target: SymmetricSpaceBasis,
    pub images: Vec<ConstForm>,
}

impl FlipIsomorphism {
    /// True when the images are independent, lie in the target and span it.
    pub fn is_bijective(&self) -> bool {
        if self.source.dim() != self.target.dim() {
            return false;
        }
        let s = build_S_dagger(self.target.n, self.target.k, self.target.l, 1);
        if self.images.iter().any(|f| !s.apply(f).coeffs.iter().all(|x| x.is_zero())) {
            return false;
        }
        let v: Vec<Vec<Q>> = self.images.iter().map(|f| f.coeffs.clone()).collect();
        crate::linalg::span_rank(&v) == self.target.dim()
    }
}

pub fn flip_isomorphism(n: usize, k: usize, l: usize) -> FlipIsomorphism {
    assert!(k <= l, "flip requires k ≤ ℓ");
    let source = symmetric_space(n, l, k, 1 + l - k);
    let target = symmetric_space(n, k, l, 1);
    let map = build_S_dagger(n, l, k, l - k);
    let images = source.basis.iter().map(|f| map.apply(f)).collect();
    FlipIsomorphism { source, target, images }
}

/// The constant c with S_{†,[2]}^{2,2} = c · b ∘ sym, if such a constant exists.
pub fn bianchi_constant(n: usize) -> Option<Q> {
    let bm = bianchi_map(n);
    let s = build_S_dagger(n, 2, 2, 2).matrix;
    let bs = bm.b.mul(&bm.sym);
    let mut ratio: Option<Q> = None;
    for i in 0..s.rows {
        for j in 0..s.cols {
            let (a, b) = (s.get(i, j), bs.get(i, j));
            match (a.is_zero(), b.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let r = a / b;
                    if let Some(prev) = &ratio {
                        if *prev != r {
                            return None;
                        }
                    } else {
                        ratio = Some(r);
                    }
                }
                _ => return None,
            }
        }
    }
    ratio
}

/// Number of pairs (I,J) with |I| = k, |J| = ℓ: the dimension of Alt^{k,ℓ}.
pub fn alt_dim(n: usize, k: usize, l: usize) -> usize {
    c(n, k) * c(n, l)
}

/// S-orbit invariants: the union and intersection of (I,J) are preserved by S and S†.
pub fn pair_invariants(i: u32, j: u32) -> (usize, usize) {
    (popcount(i | j), popcount(i & j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{s_dagger_double_block_matrix, s_double_block_matrix, y_blocks};
    use crate::linalg::q;

    #[test]
    fn s_rank_examples() {
        assert_eq!(build_S(3, 1, 1).rank(), 3);
        for n in 1..=5 {
            for l in 1..=n {
                let s = build_S(n, 0, l);
                assert_eq!(s.rank(), s.matrix.cols, "S^(0,{l}) injective in n={n}");
            }
        }
    }

    #[test]
    fn kernel_dimensions() {
        assert_eq!(symmetric_space(3, 1, 1, 1).dim(), 6);
        assert_eq!(symmetric_space(4, 2, 2, 1).dim(), 20);
        assert_eq!(symmetric_space(4, 2, 2, 2).dim(), 35);
        assert_eq!(symmetric_space(3, 2, 1, 2).dim(), 8);
        assert_eq!(symmetric_space(3, 1, 2, 1).dim(), 8);
        for n in 1..=4 {
            for k in 0..=n {
                for l in 0..=n {
                    for p in 1..=n {
                        if k + 1 <= l + p {
                            let w = symmetric_space(n, k, l, p);
                            assert_eq!(w.dim(), w_dim(n, k, l, p), "n={n} k={k} l={l} p={p}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn adjoint_pairs() {
        for n in 1..=4 {
            for k in 0..=n {
                for l in 0..=n {
                    for p in 1..=n {
                        if k + p <= n && p <= l {
                            let s = build_S_p(n, k, l, p);
                            let sd = build_S_dagger(n, k + p, l - p, p);
                            assert_eq!(s.matrix.transpose(), sd.matrix);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn iterated_s_matches_free_group_up_to_sign() {
        // |S_[p]| entrywise equals p! times the double-index s_[p] incidence
        let n = 4;
        for k in 0..=n {
            for l in 0..=n {
                for p in 1..=l {
                    if k + p > n {
                        continue;
                    }
                    let s = build_S_p(n, k, l, p);
                    let fact: i64 = (1..=p as i64).product();
                    let (ti, tj) = (Tuples::new(n, k), Tuples::new(n, l));
                    let (to, tp) = (Tuples::new(n, k + p), Tuples::new(n, l - p));
                    for (ai, &i) in ti.list.iter().enumerate() {
                        for (bj, &j) in tj.list.iter().enumerate() {
                            for (ci, &ii) in to.list.iter().enumerate() {
                                for (dj, &jj) in tp.list.iter().enumerate() {
                                    let pm = ii & !i;
                                    let expect = i & ii == i && jj | pm == j && jj & pm == 0 && pm & i == 0 && popcount(pm) == p;
                                    let v = s.matrix.get(ci * tp.len() + dj, ai * tj.len() + bj).clone();
                                    let a = if v < Q::zero() { -v } else { v };
                                    assert_eq!(a, if expect { q(fact) } else { q(0) });
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn telescope_pieces_orthogonal() {
        let pieces = telescope_decompose(4, 2, 2, 2);
        let dims: Vec<usize> = pieces.iter().map(|p| p.len()).collect();
        assert_eq!(dims, vec![20, 15]);
        for a in &pieces[0] {
            for b in &pieces[1] {
                assert!(crate::exterior::frobenius(a, b).unwrap().is_zero());
            }
        }
        // the pieces together span W_[2]
        let all: Vec<Vec<Q>> = pieces.iter().flatten().map(|f| f.coeffs.clone()).collect();
        let w = symmetric_space(4, 2, 2, 2).coeff_vectors();
        assert_eq!(crate::linalg::span_rank(&all), 35);
        assert!(crate::linalg::span_contains(&w, &all));
        assert_eq!(telescope_decompose(3, 1, 1, 1).len(), 1);
    }

    #[test]
    fn bianchi_properties() {
        let bm = bianchi_map(4);
        assert_eq!(bm.projection.mul(&bm.projection), bm.projection);
        // kernel of b on the symmetric part
        let bs = bm.b.mul(&bm.sym_basis);
        assert_eq!(bm.sym_basis.cols, 21);
        assert_eq!(bs.nullspace().len(), 20);
        // ker(b|sym) equals W^{2,2}
        let ker: Vec<Vec<Q>> = bs.nullspace().iter().map(|v| bm.sym_basis.mul_vec(v)).collect();
        let w = symmetric_space(4, 2, 2, 1).coeff_vectors();
        assert!(crate::linalg::span_contains(&w, &ker));
        assert!(bianchi_constant(4).is_some());
        assert!(bianchi_map(3).b.is_zero());
    }

    #[test]
    fn flip_examples() {
        let f = flip_isomorphism(3, 1, 2);
        assert_eq!((f.source.dim(), f.target.dim()), (8, 8));
        assert!(f.is_bijective());
        let f = flip_isomorphism(4, 1, 3);
        assert_eq!((f.source.dim(), f.target.dim()), (15, 15));
        assert!(f.is_bijective());
        let f = flip_isomorphism(3, 1, 1);
        assert!(f.is_bijective());
    }

    #[test]
    fn nested_kernels() {
        let n = 4;
        for k in 0..=n {
            for l in 0..=n {
                for p in 1..n {
                    if k + 1 <= l + p {
                        let a = symmetric_space(n, k, l, p).coeff_vectors();
                        let b = symmetric_space(n, k, l, p + 1).coeff_vectors();
                        assert!(crate::linalg::span_contains(&b, &a));
                    }
                }
            }
        }
    }

    #[test]
    fn block_ranks_small() {
        let (n, k, l) = (5, 1, 3);
        for (f, g) in y_blocks(n, k, l) {
            let m = s_double_block_matrix(n, k, l, 1, f, g);
            assert_eq!(m.rank(), m.cols);
            let md = s_dagger_double_block_matrix(n, k + 1, l - 1, 1, f, g);
            assert_eq!(md.rank(), md.rows);
        }
    }
}
