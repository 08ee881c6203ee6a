//! Increasing tuples, constant (k,ℓ)-forms and the free-group maps on tuples.
//!
//! Tuples are stored internally as bitmasks over `0..n` (bit `i` is the
//! 1-based index `i + 1`). All bases are ordered lexicographically.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{Mat, Q};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    Ambient(usize, usize),
    #[error("degree mismatch: ({0},{1}) vs ({2},{3})")]
    Degree(usize, usize, usize, usize),
    #[error("wedge operands must have second degree 0")]
    NotScalar,
}

pub type Mask = u32;

pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Binomial coefficient on unsigned arguments, zero outside the triangle.
pub fn c(n: usize, k: usize) -> usize {
    binom(n as i64, k as i64) as usize
}

/// Strictly increasing index tuple with entries in `1..=ambient`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IncreasingTuple {
    pub indices: Vec<usize>,
    pub ambient: usize,
}

impl IncreasingTuple {
    pub fn new(indices: Vec<usize>, ambient: usize) -> Option<Self> {
        let ok = indices.windows(2).all(|w| w[0] < w[1]) && indices.iter().all(|&i| (1..=ambient).contains(&i));
        ok.then_some(IncreasingTuple { indices, ambient })
    }

    pub fn mask(&self) -> Mask {
        self.indices.iter().fold(0, |m, &i| m | (1 << (i - 1)))
    }

    pub fn from_mask(m: Mask, ambient: usize) -> Self {
        IncreasingTuple { indices: bits(m).map(|b| b + 1).collect(), ambient }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// All of X(n,k) in lexicographic order; empty when k > n.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<IncreasingTuple> {
    tuple_masks(n, k).into_iter().map(|m| IncreasingTuple::from_mask(m, n)).collect()
}

/// Masks of X(n,k) in lexicographic order of the underlying tuples.
pub fn tuple_masks(n: usize, k: usize) -> Vec<Mask> {
    if k > n {
        return Vec::new();
    }
    (0..n).combinations(k).map(|c| c.iter().fold(0, |m, &i| m | (1 << i))).collect()
}

/// Iterate set bit positions in increasing order.
pub fn bits(m: Mask) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| m >> i & 1 == 1)
}

#[inline]
pub fn popcount(m: Mask) -> usize {
    m.count_ones() as usize
}

/// Number of elements of `m` strictly below bit `a`.
#[inline]
pub fn below(m: Mask, a: usize) -> usize {
    popcount(m & ((1u32 << a) - 1))
}

/// Sign of the shuffle that merges `a` followed by `b` into sorted order,
/// or zero when they overlap.
pub fn merge_sign(a: Mask, b: Mask) -> i64 {
    if a & b != 0 {
        return 0;
    }
    let mut inv = 0;
    for x in bits(a) {
        inv += popcount(b & ((1u32 << x) - 1));
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Lexicographic basis of X(n,k) with an inverse lookup table.
#[derive(Clone, Debug)]
pub struct Tuples {
    pub n: usize,
    pub k: usize,
    pub list: Vec<Mask>,
    pos: Vec<u32>,
}

impl Tuples {
    pub fn new(n: usize, k: usize) -> Self {
        let list = tuple_masks(n, k);
        let mut pos = vec![u32::MAX; 1 << n];
        for (i, &m) in list.iter().enumerate() {
            pos[m as usize] = i as u32;
        }
        Tuples { n, k, list, pos }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    #[inline]
    pub fn index(&self, m: Mask) -> usize {
        let p = self.pos[m as usize];
        debug_assert!(p != u32::MAX, "mask {m:b} not in X({},{})", self.n, self.k);
        p as usize
    }

    pub fn get(&self, m: Mask) -> Option<usize> {
        self.pos.get(m as usize).copied().filter(|&p| p != u32::MAX).map(|p| p as usize)
    }
}

/// Constant element of Alt^k ⊗ Alt^ℓ over ℝⁿ, dense in the pair basis
/// (I lexicographic, then J lexicographic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstForm {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub coeffs: Vec<Q>,
}

impl ConstForm {
    pub fn zero(n: usize, k: usize, l: usize) -> Self {
        ConstForm { n, k, l, coeffs: vec![Q::zero(); c(n, k) * c(n, l)] }
    }

    pub fn dim(n: usize, k: usize, l: usize) -> usize {
        c(n, k) * c(n, l)
    }

    pub fn pair_index(&self, i: Mask, j: Mask) -> usize {
        let ti = Tuples::new(self.n, self.k);
        let tj = Tuples::new(self.n, self.l);
        ti.index(i) * tj.len() + tj.index(j)
    }

    /// Basis element dx^I ⊗ dx^J.
    pub fn basis(n: usize, i: &IncreasingTuple, j: &IncreasingTuple) -> Self {
        let mut f = ConstForm::zero(n, i.len(), j.len());
        let idx = f.pair_index(i.mask(), j.mask());
        f.coeffs[idx] = Q::one();
        f
    }

    /// A scalar k-form (ℓ = 0) from masks and coefficients.
    pub fn scalar(n: usize, k: usize, terms: &[(Mask, Q)]) -> Self {
        let t = Tuples::new(n, k);
        let mut f = ConstForm::zero(n, k, 0);
        for (m, v) in terms {
            f.coeffs[t.index(*m)] += v;
        }
        f
    }

    pub fn coeff(&self, i: &IncreasingTuple, j: &IncreasingTuple) -> Q {
        self.coeffs[self.pair_index(i.mask(), j.mask())].clone()
    }

    pub fn add(&self, o: &ConstForm) -> Result<ConstForm, ExteriorError> {
        self.check_same(o)?;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        Ok(ConstForm { coeffs, ..*self })
    }

    pub fn scale(&self, s: &Q) -> ConstForm {
        ConstForm { coeffs: self.coeffs.iter().map(|a| a * s).collect(), ..*self }
    }

    fn check_same(&self, o: &ConstForm) -> Result<(), ExteriorError> {
        if self.n != o.n {
            return Err(ExteriorError::Ambient(self.n, o.n));
        }
        if (self.k, self.l) != (o.k, o.l) {
            return Err(ExteriorError::Degree(self.k, self.l, o.k, o.l));
        }
        Ok(())
    }
}

/// Exterior product of two scalar forms.
pub fn wedge(a: &ConstForm, b: &ConstForm) -> Result<ConstForm, ExteriorError> {
    if a.n != b.n {
        return Err(ExteriorError::Ambient(a.n, b.n));
    }
    if a.l != 0 || b.l != 0 {
        return Err(ExteriorError::NotScalar);
    }
    let n = a.n;
    let (ta, tb) = (Tuples::new(n, a.k), Tuples::new(n, b.k));
    let tc = Tuples::new(n, a.k + b.k);
    let mut out = ConstForm::zero(n, a.k + b.k, 0);
    for (ia, &ma) in ta.list.iter().enumerate() {
        if a.coeffs[ia].is_zero() {
            continue;
        }
        for (ib, &mb) in tb.list.iter().enumerate() {
            let s = merge_sign(ma, mb);
            if s == 0 || b.coeffs[ib].is_zero() {
                continue;
            }
            let v = &a.coeffs[ia] * &b.coeffs[ib];
            let idx = tc.index(ma | mb);
            if s > 0 {
                out.coeffs[idx] += v;
            } else {
                out.coeffs[idx] -= v;
            }
        }
    }
    Ok(out)
}

/// Frobenius inner product in the orthonormal pair basis.
pub fn frobenius(a: &ConstForm, b: &ConstForm) -> Result<Q, ExteriorError> {
    a.check_same(b)?;
    Ok(crate::linalg::dot(&a.coeffs, &b.coeffs))
}

/// Element of the free group on X(n,k) (single) or X(n,k) × X(n,ℓ) (double).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeGroupElement {
    Single { n: usize, k: usize, coeffs: BTreeMap<Mask, Q> },
    Double { n: usize, k: usize, l: usize, coeffs: BTreeMap<(Mask, Mask), Q> },
}

impl FreeGroupElement {
    pub fn single(n: usize, k: usize, terms: &[(&[usize], i64)]) -> Self {
        let mut coeffs = BTreeMap::new();
        for (t, v) in terms {
            let m = IncreasingTuple::new(t.to_vec(), n).expect("valid tuple").mask();
            *coeffs.entry(m).or_insert_with(Q::zero) += Q::from_integer((*v).into());
        }
        coeffs.retain(|_, v: &mut Q| !v.is_zero());
        FreeGroupElement::Single { n, k, coeffs }
    }

    pub fn double(n: usize, k: usize, l: usize, terms: &[(&[usize], &[usize], i64)]) -> Self {
        let mut coeffs = BTreeMap::new();
        for (a, b, v) in terms {
            let ma = IncreasingTuple::new(a.to_vec(), n).expect("valid tuple").mask();
            let mb = IncreasingTuple::new(b.to_vec(), n).expect("valid tuple").mask();
            *coeffs.entry((ma, mb)).or_insert_with(Q::zero) += Q::from_integer((*v).into());
        }
        coeffs.retain(|_, v: &mut Q| !v.is_zero());
        FreeGroupElement::Double { n, k, l, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FreeGroupElement::Single { coeffs, .. } => coeffs.is_empty(),
            FreeGroupElement::Double { coeffs, .. } => coeffs.is_empty(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (FreeGroupElement::Single { n, k, coeffs }, FreeGroupElement::Single { coeffs: c2, .. }) => {
                let mut out = coeffs.clone();
                for (m, v) in c2 {
                    *out.entry(*m).or_insert_with(Q::zero) += v;
                }
                out.retain(|_, v| !v.is_zero());
                FreeGroupElement::Single { n: *n, k: *k, coeffs: out }
            }
            (FreeGroupElement::Double { n, k, l, coeffs }, FreeGroupElement::Double { coeffs: c2, .. }) => {
                let mut out = coeffs.clone();
                for (m, v) in c2 {
                    *out.entry(*m).or_insert_with(Q::zero) += v;
                }
                out.retain(|_, v| !v.is_zero());
                FreeGroupElement::Double { n: *n, k: *k, l: *l, coeffs: out }
            }
            _ => panic!("adding single and double index elements"),
        }
    }

    /// Standard inner product making the tuple basis orthonormal.
    pub fn inner(&self, o: &Self) -> Q {
        let mut s = Q::zero();
        match (self, o) {
            (FreeGroupElement::Single { coeffs: a, .. }, FreeGroupElement::Single { coeffs: b, .. }) => {
                for (m, v) in a {
                    if let Some(w) = b.get(m) {
                        s += v * w;
                    }
                }
            }
            (FreeGroupElement::Double { coeffs: a, .. }, FreeGroupElement::Double { coeffs: b, .. }) => {
                for (m, v) in a {
                    if let Some(w) = b.get(m) {
                        s += v * w;
                    }
                }
            }
            _ => panic!("pairing single and double index elements"),
        }
        s
    }
}

fn subsets_of(m: Mask, p: usize) -> impl Iterator<Item = Mask> {
    bits(m).collect::<Vec<_>>().into_iter().combinations(p).map(|c| c.iter().fold(0, |a, &b| a | (1 << b)))
}

/// s_{[p]}: [I] ↦ Σ_{P ⊆ [n]∖I, |P|=p} [I ∪ P]; on double indices
/// [I,J] ↦ Σ_{P ⊆ J∖I, |P|=p} [I ∪ P, J ∖ P].
pub fn s_map(x: &FreeGroupElement, p: usize) -> FreeGroupElement {
    match x {
        FreeGroupElement::Single { n, k, coeffs } => {
            let mut out = BTreeMap::new();
            if k + p <= *n {
                let full: Mask = (1u32 << n) - 1;
                for (&m, v) in coeffs {
                    for pm in subsets_of(full & !m, p) {
                        *out.entry(m | pm).or_insert_with(Q::zero) += v;
                    }
                }
            }
            out.retain(|_, v: &mut Q| !v.is_zero());
            FreeGroupElement::Single { n: *n, k: k + p, coeffs: out }
        }
        FreeGroupElement::Double { n, k, l, coeffs } => {
            let mut out = BTreeMap::new();
            if k + p <= *n && p <= *l {
                for (&(a, b), v) in coeffs {
                    for pm in subsets_of(b & !a, p) {
                        *out.entry((a | pm, b & !pm)).or_insert_with(Q::zero) += v;
                    }
                }
            }
            out.retain(|_, v: &mut Q| !v.is_zero());
            FreeGroupElement::Double { n: *n, k: k + p, l: l.saturating_sub(p), coeffs: out }
        }
    }
}

/// s_{†,[p]}: [J] ↦ Σ_{P ⊆ J, |P|=p} [J ∖ P]; on double indices
/// [I,J] ↦ Σ_{P ⊆ I∖J, |P|=p} [I ∖ P, J ∪ P].
pub fn s_dagger_map(x: &FreeGroupElement, p: usize) -> FreeGroupElement {
    match x {
        FreeGroupElement::Single { n, k, coeffs } => {
            let mut out = BTreeMap::new();
            if p <= *k {
                for (&m, v) in coeffs {
                    for pm in subsets_of(m, p) {
                        *out.entry(m & !pm).or_insert_with(Q::zero) += v;
                    }
                }
            }
            out.retain(|_, v: &mut Q| !v.is_zero());
            FreeGroupElement::Single { n: *n, k: k.saturating_sub(p), coeffs: out }
        }
        FreeGroupElement::Double { n, k, l, coeffs } => {
            let mut out = BTreeMap::new();
            if p <= *k && l + p <= *n {
                for (&(a, b), v) in coeffs {
                    for pm in subsets_of(a & !b, p) {
                        *out.entry((a & !pm, b | pm)).or_insert_with(Q::zero) += v;
                    }
                }
            }
            out.retain(|_, v: &mut Q| !v.is_zero());
            FreeGroupElement::Double { n: *n, k: k.saturating_sub(p), l: l + p, coeffs: out }
        }
    }
}

/// Matrix of the single-index s_{[p]}: FX(n,k) → FX(n,k+p).
pub fn s_matrix(n: usize, k: usize, p: usize) -> Mat {
    let (src, dst) = (Tuples::new(n, k), Tuples::new(n, k + p));
    let mut m = Mat::zeros(dst.len(), src.len());
    for (j, &mk) in src.list.iter().enumerate() {
        let x = FreeGroupElement::Single { n, k, coeffs: [(mk, Q::one())].into() };
        if let FreeGroupElement::Single { coeffs, .. } = s_map(&x, p) {
            for (t, v) in coeffs {
                m.set(dst.index(t), j, v);
            }
        }
    }
    m
}

/// Matrix of the single-index s_{†,[p]}: FX(n,k) → FX(n,k−p).
pub fn s_dagger_matrix(n: usize, k: usize, p: usize) -> Mat {
    let src = Tuples::new(n, k);
    let dst = Tuples::new(n, k.saturating_sub(p));
    let mut m = Mat::zeros(if p <= k { dst.len() } else { 0 }, src.len());
    if p > k {
        return m;
    }
    for (j, &mk) in src.list.iter().enumerate() {
        let x = FreeGroupElement::Single { n, k, coeffs: [(mk, Q::one())].into() };
        if let FreeGroupElement::Single { coeffs, .. } = s_dagger_map(&x, p) {
            for (t, v) in coeffs {
                m.set(dst.index(t), j, v);
            }
        }
    }
    m
}

/// The double-index block Y_{F,G}(n,k,ℓ): pairs with I ∪ J = F, I ∩ J = G.
pub fn y_block(n: usize, k: usize, l: usize, f: Mask, g: Mask) -> Vec<(Mask, Mask)> {
    let ti = tuple_masks(n, k);
    let tj = tuple_masks(n, l);
    ti.iter()
        .flat_map(|&a| tj.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| a | b == f && a & b == g)
        .collect()
}

/// Matrix of the double-index s_{[p]} restricted to Y_{F,G}(n,k,ℓ).
pub fn s_double_block_matrix(n: usize, k: usize, l: usize, p: usize, f: Mask, g: Mask) -> Mat {
    let src = y_block(n, k, l, f, g);
    let dst = if p <= l { y_block(n, k + p, l - p, f, g) } else { Vec::new() };
    let mut m = Mat::zeros(dst.len(), src.len());
    for (j, &(a, b)) in src.iter().enumerate() {
        let x = FreeGroupElement::Double { n, k, l, coeffs: [((a, b), Q::one())].into() };
        if let FreeGroupElement::Double { coeffs, .. } = s_map(&x, p) {
            for (t, v) in coeffs {
                let i = dst.iter().position(|&d| d == t).expect("block is invariant");
                m.set(i, j, v);
            }
        }
    }
    m
}

/// Matrix of the double-index s_{†,[p]} restricted to Y_{F,G}(n,k,ℓ).
pub fn s_dagger_double_block_matrix(n: usize, k: usize, l: usize, p: usize, f: Mask, g: Mask) -> Mat {
    let src = y_block(n, k, l, f, g);
    let dst = if p <= k { y_block(n, k - p, l + p, f, g) } else { Vec::new() };
    let mut m = Mat::zeros(dst.len(), src.len());
    for (j, &(a, b)) in src.iter().enumerate() {
        let x = FreeGroupElement::Double { n, k, l, coeffs: [((a, b), Q::one())].into() };
        if let FreeGroupElement::Double { coeffs, .. } = s_dagger_map(&x, p) {
            for (t, v) in coeffs {
                let i = dst.iter().position(|&d| d == t).expect("block is invariant");
                m.set(i, j, v);
            }
        }
    }
    m
}

/// All nonempty blocks (F, G) of X(n,k,ℓ).
pub fn y_blocks(n: usize, k: usize, l: usize) -> Vec<(Mask, Mask)> {
    let mut seen = std::collections::BTreeSet::new();
    for a in tuple_masks(n, k) {
        for b in tuple_masks(n, l) {
            seen.insert((a | b, a & b));
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn tuple_enumeration() {
        assert_eq!(increasing_tuples(4, 2).len(), 6);
        assert_eq!(increasing_tuples(3, 0), vec![IncreasingTuple { indices: vec![], ambient: 3 }]);
        assert!(increasing_tuples(3, 4).is_empty());
        let t = increasing_tuples(4, 2);
        let v: Vec<Vec<usize>> = t.iter().map(|x| x.indices.clone()).collect();
        assert_eq!(v, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
        assert!(IncreasingTuple::new(vec![2, 1], 3).is_none());
        assert!(IncreasingTuple::new(vec![1, 4], 3).is_none());
    }

    #[test]
    fn wedge_signs() {
        let dx = |i: usize| ConstForm::scalar(3, 1, &[(1 << (i - 1), q(1))]);
        let a = wedge(&dx(1), &dx(2)).unwrap();
        let b = wedge(&dx(2), &dx(1)).unwrap();
        let t12 = IncreasingTuple::new(vec![1, 2], 3).unwrap();
        let e = IncreasingTuple::new(vec![], 3).unwrap();
        assert_eq!(a.coeff(&t12, &e), q(1));
        assert_eq!(b.coeff(&t12, &e), q(-1));
        assert!(wedge(&dx(1), &dx(1)).unwrap().coeffs.iter().all(|x| x.is_zero()));
        let other = ConstForm::scalar(4, 1, &[(1, q(1))]);
        assert_eq!(wedge(&dx(1), &other), Err(ExteriorError::Ambient(3, 4)));
    }

    #[test]
    fn frobenius_examples() {
        let t = |v: Vec<usize>| IncreasingTuple::new(v, 3).unwrap();
        let a = ConstForm::basis(3, &t(vec![1, 2]), &t(vec![3]));
        let b = ConstForm::basis(3, &t(vec![1, 3]), &t(vec![2]));
        assert_eq!(frobenius(&a, &a).unwrap(), q(1));
        assert_eq!(frobenius(&a, &b).unwrap(), q(0));
        let x = ConstForm::basis(3, &t(vec![1]), &t(vec![2]))
            .scale(&q(2))
            .add(&ConstForm::basis(3, &t(vec![2]), &t(vec![1])).scale(&q(3)))
            .unwrap();
        assert_eq!(frobenius(&x, &ConstForm::basis(3, &t(vec![1]), &t(vec![2]))).unwrap(), q(2));
        assert!(frobenius(&a, &ConstForm::zero(3, 1, 1)).is_err());
    }

    #[test]
    fn s_map_examples() {
        let x = FreeGroupElement::single(3, 1, &[(&[1], 1)]);
        assert_eq!(s_map(&x, 1), FreeGroupElement::single(3, 2, &[(&[1, 2], 1), (&[1, 3], 1)]));
        let e = FreeGroupElement::single(3, 0, &[(&[], 1)]);
        assert_eq!(s_map(&e, 2), FreeGroupElement::single(3, 2, &[(&[1, 2], 1), (&[1, 3], 1), (&[2, 3], 1)]));
        let y = FreeGroupElement::single(3, 2, &[(&[1, 2], 1)]);
        assert_eq!(s_dagger_map(&y, 1), FreeGroupElement::single(3, 1, &[(&[1], 1), (&[2], 1)]));
        assert!(s_map(&y, 2).is_zero());
        assert!(s_dagger_map(&x, 2).is_zero());
        assert_eq!(s_matrix(5, 2, 1).rank(), 10);
    }

    #[test]
    fn iterated_s_is_factorial_multiple() {
        for n in 1..=6 {
            for k in 0..=n {
                for p in 1..=(n - k) {
                    let mut comp = Mat::identity(c(n, k));
                    for j in 0..p {
                        comp = s_matrix(n, k + j, 1).mul(&comp);
                    }
                    let fact: i64 = (1..=p as i64).product();
                    assert_eq!(comp, s_matrix(n, k, p).scale(&q(fact)), "n={n} k={k} p={p}");
                }
            }
        }
    }

    #[test]
    fn blocks_partition_pairs() {
        let (n, k, l) = (5, 2, 3);
        let total: usize = y_blocks(n, k, l).iter().map(|&(f, g)| y_block(n, k, l, f, g).len()).sum();
        assert_eq!(total, c(n, k) * c(n, l));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn elem(n: usize, k: usize) -> impl Strategy<Value = FreeGroupElement> {
            let len = c(n, k);
            proptest::collection::vec(-5i64..6, len).prop_map(move |v| {
                let coeffs = tuple_masks(n, k)
                    .into_iter()
                    .zip(v)
                    .filter(|(_, x)| *x != 0)
                    .map(|(m, x)| (m, q(x)))
                    .collect();
                FreeGroupElement::Single { n, k, coeffs }
            })
        }

        fn nk_elems() -> impl Strategy<Value = (usize, usize, FreeGroupElement, FreeGroupElement)> {
            (1usize..7).prop_flat_map(|n| (Just(n), 0..=n)).prop_flat_map(|(n, k)| (Just(n), Just(k), elem(n, k), elem(n, k)))
        }

        proptest! {
            #[test]
            fn inner_product_identity((n, k, a, b) in nk_elems()) {
                let lhs = s_map(&a, 1).inner(&s_map(&b, 1));
                let rhs = s_dagger_map(&a, 1).inner(&s_dagger_map(&b, 1)) + q(n as i64 - 2 * k as i64) * a.inner(&b);
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn s_and_s_dagger_are_adjoint((n, k, a, _b) in nk_elems(), p in 1usize..4) {
                if k + p <= n {
                    let bb = FreeGroupElement::Single { n, k: k + p, coeffs: tuple_masks(n, k + p).into_iter().enumerate().map(|(i, m)| (m, q(i as i64 - 2))).collect() };
                    prop_assert_eq!(s_map(&a, p).inner(&bb), a.inner(&s_dagger_map(&bb, p)));
                }
            }

            #[test]
            fn wedge_anticommutes(n in 1usize..6, ka in 0usize..3, kb in 0usize..3, seed in 0i64..50) {
                prop_assume!(ka <= n && kb <= n);
                let mk = |k: usize, off: i64| {
                    let terms: Vec<(Mask, Q)> = tuple_masks(n, k).into_iter().enumerate().map(|(i, m)| (m, q((i as i64 * 7 + off) % 5 - 2))).collect();
                    ConstForm::scalar(n, k, &terms)
                };
                let a = mk(ka, seed);
                let b = mk(kb, seed + 3);
                let ab = wedge(&a, &b).unwrap();
                let ba = wedge(&b, &a).unwrap();
                let sign = if (ka * kb) % 2 == 0 { q(1) } else { q(-1) };
                prop_assert_eq!(ab, ba.scale(&sign));
            }
        }
    }
}
