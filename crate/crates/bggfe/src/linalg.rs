//! Exact dense and sparse linear algebra over the rationals.
//!
//! Two independent rank routes are provided: fraction-free (Bareiss)
//! elimination on integer-scaled dense rows, and a sparse elimination that
//! splits the matrix into connected row/column blocks first. A reduction
//! modulo a 61-bit prime gives a cheap full-rank certificate.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qfrac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Mat::from_rows(&v)
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_cols(len: usize, cols: &[Vec<Q>]) -> Self {
        let mut m = Mat::zeros(len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), len);
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: &Q) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<Q>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    t.set(j, i, v.clone());
                }
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, s: &Q) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(l, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Q::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    /// Stack `o` below `self`.
    pub fn vstack(&self, o: &Mat) -> Mat {
        if self.rows == 0 {
            return o.clone();
        }
        if o.rows == 0 {
            return self.clone();
        }
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Mat { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.row(i).iter().cloned());
        }
        Mat { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    /// Exact rank. Uses the modular certificate when it already proves full
    /// rank, otherwise fraction-free elimination.
    pub fn rank(&self) -> usize {
        let full = self.rows.min(self.cols);
        if full == 0 {
            return 0;
        }
        if rank_mod_p(self) == Some(full) {
            return full;
        }
        bareiss(self).rank
    }

    /// Exact rank by fraction-free elimination only.
    pub fn rank_bareiss(&self) -> usize {
        bareiss(self).rank
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return Q::one();
        }
        bareiss(self).det.expect("square")
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let (rows, pivots) = int_rref(self);
        let mut m = Mat::zeros(rows.len(), self.cols);
        for (i, (row, &pc)) in rows.iter().zip(&pivots).enumerate() {
            let d = row[pc].clone();
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, Q::new(x.clone(), d.clone()));
                }
            }
        }
        (m, pivots)
    }

    /// Basis of the right nullspace, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (rows, pivots) = int_rref(self);
        let mut is_pivot = vec![usize::MAX; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            is_pivot[pc] = i;
        }
        let mut out = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] != usize::MAX {
                continue;
            }
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (i, &pc) in pivots.iter().enumerate() {
                let a = &rows[i][f];
                if !a.is_zero() {
                    v[pc] = -Q::new(a.clone(), rows[i][pc].clone());
                }
            }
            out.push(v);
        }
        out
    }

    /// Indices of a maximal set of linearly independent columns.
    pub fn independent_cols(&self) -> Vec<usize> {
        int_rref(self).1
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Q::one());
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// Scale a rational row to a primitive integer row.
fn to_int_row(row: &[Q]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in row {
        if !x.is_zero() {
            l = l.lcm(x.denom());
        }
    }
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g > BigInt::one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
    }
}

/// Gauss-Jordan elimination on primitive integer rows. Returns the nonzero
/// reduced rows and their pivot columns; every other row vanishes in each
/// pivot column.
fn int_rref(m: &Mat) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows).map(|i| to_int_row(m.row(i))).collect();
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..m.cols {
        if top == rows.len() {
            break;
        }
        // choose the row with the smallest nonzero entry in column c
        let mut best: Option<usize> = None;
        for i in top..rows.len() {
            if !rows[i][c].is_zero() {
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if rows[i][c].abs() < rows[b][c].abs() {
                            best = Some(i);
                        }
                    }
                }
            }
        }
        let Some(b) = best else { continue };
        rows.swap(top, b);
        if rows[top][c].is_negative() {
            for x in rows[top].iter_mut() {
                *x = -&*x;
            }
        }
        let piv_row = rows[top].clone();
        let pv = &piv_row[c];
        for (i, row) in rows.iter_mut().enumerate() {
            if i == top || row[c].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[c]);
            let a = pv / &g;
            let b = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(&piv_row) {
                if y.is_zero() {
                    if !x.is_zero() {
                        *x *= &a;
                    }
                } else {
                    *x = &*x * &a - &b * y;
                }
            }
            make_primitive(row);
        }
        pivots.push(c);
        top += 1;
    }
    rows.truncate(top);
    (rows, pivots)
}

pub struct BareissResult {
    pub rank: usize,
    pub det: Option<Q>,
}

/// Fraction-free elimination on integer-scaled rows.
pub fn bareiss(m: &Mat) -> BareissResult {
    let mut scale = Q::one();
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let mut l = BigInt::one();
            for x in row {
                if !x.is_zero() {
                    l = l.lcm(x.denom());
                }
            }
            scale /= Q::from_integer(l.clone());
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut sign = 1i32;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    let det = if rows == cols {
        if r < rows {
            Some(Q::zero())
        } else {
            let d = Q::from_integer(a[rows - 1][cols - 1].clone()) * scale;
            Some(if sign < 0 { -d } else { d })
        }
    } else {
        None
    };
    BareissResult { rank: r, det }
}

/// The Mersenne prime 2^61 - 1.
pub const PRIME: u64 = (1u64 << 61) - 1;

#[inline]
fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn bigint_mod(x: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let r = x.mod_floor(&p);
    r.to_u64().expect("reduced residue fits")
}

/// Reduce a rational modulo the prime; `None` if the denominator vanishes.
pub fn reduce_mod_p(x: &Q) -> Option<u64> {
    let d = bigint_mod(x.denom());
    if d == 0 {
        return None;
    }
    Some(mulmod(bigint_mod(x.numer()), powmod(d, PRIME - 2)))
}

/// Rank modulo the prime. This never exceeds the rational rank, so equality
/// with `min(rows, cols)` certifies full rank over Q.
pub fn rank_mod_p(m: &Mat) -> Option<usize> {
    let mut a = vec![vec![0u64; m.cols]; m.rows];
    for i in 0..m.rows {
        for j in 0..m.cols {
            let v = m.get(i, j);
            if !v.is_zero() {
                a[i][j] = reduce_mod_p(v)?;
            }
        }
    }
    Some(rank_mod_p_u64(a, m.cols))
}

fn rank_mod_p_u64(mut a: Vec<Vec<u64>>, cols: usize) -> usize {
    let rows = a.len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(p, r);
        let inv = powmod(a[r][c], PRIME - 2);
        let pivot_row = a[r].clone();
        for row in a.iter_mut().skip(r + 1) {
            if row[c] == 0 {
                continue;
            }
            let f = mulmod(row[c], inv);
            for j in c..cols {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + PRIME - mulmod(f, pivot_row[j])) % PRIME;
                }
            }
        }
        r += 1;
    }
    r
}

/// Sparse matrix stored as row maps; used as an independent rank route.
#[derive(Clone, Debug, Default)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<BTreeMap<usize, Q>>,
}

impl SparseMat {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, entries: vec![BTreeMap::new(); rows] }
    }

    pub fn add(&mut self, i: usize, j: usize, v: Q) {
        let e = self.entries[i].entry(j).or_insert_with(Q::zero);
        *e += v;
        if e.is_zero() {
            self.entries[i].remove(&j);
        }
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = Mat::zeros(self.rows, self.cols);
        for (i, r) in self.entries.iter().enumerate() {
            for (&j, v) in r {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_dense(m: &Mat) -> Self {
        let mut s = SparseMat::new(m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                let v = m.get(i, j);
                if !v.is_zero() {
                    s.entries[i].insert(j, v.clone());
                }
            }
        }
        s
    }

    /// Connected components of the row/column incidence graph, as row sets.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.cols).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for row in &self.entries {
            let mut it = row.keys();
            if let Some(&first) = it.next() {
                let a = find(&mut parent, first);
                for &j in it {
                    let b = find(&mut parent, j);
                    if a != b {
                        parent[b] = a;
                    }
                }
            }
        }
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, row) in self.entries.iter().enumerate() {
            if let Some(&first) = row.keys().next() {
                let r = find(&mut parent, first);
                by_root.entry(r).or_default().push(i);
            }
        }
        by_root.into_values().collect()
    }

    /// Rank by sparse elimination block by block.
    pub fn rank(&self) -> usize {
        self.blocks().iter().map(|b| sparse_block_rank(b.iter().map(|&i| self.entries[i].clone()).collect())).sum()
    }
}

fn sparse_block_rank(mut rows: Vec<BTreeMap<usize, Q>>) -> usize {
    let mut rank = 0;
    let mut pivot_of: HashMap<usize, BTreeMap<usize, Q>> = HashMap::new();
    // process sparsest rows first
    rows.sort_by_key(|r| r.len());
    for mut row in rows {
        loop {
            let Some((&c, _)) = row.iter().find(|(c, _)| pivot_of.contains_key(c)) else { break };
            let prow = &pivot_of[&c];
            let f = &row[&c] / &prow[&c];
            for (&j, v) in prow {
                let e = row.entry(j).or_insert_with(Q::zero);
                *e -= &f * v;
                if e.is_zero() {
                    row.remove(&j);
                }
            }
        }
        if let Some((&c, _)) = row.iter().next() {
            pivot_of.insert(c, row);
            rank += 1;
        }
    }
    rank
}

/// Rank of a set of vectors of a common length.
pub fn span_rank(vecs: &[Vec<Q>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    Mat::from_rows(vecs).rank()
}

/// True if every vector in `a` lies in the span of `b`.
pub fn span_contains(b: &[Vec<Q>], a: &[Vec<Q>]) -> bool {
    if a.is_empty() {
        return true;
    }
    let rb = span_rank(b);
    let mut all = b.to_vec();
    all.extend(a.iter().cloned());
    Mat::from_rows(&all).rank_bareiss() == rb
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    let mut s = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_rank_small() {
        let m = Mat::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), q(18));
        assert_eq!(m.rank(), 3);
        let s = Mat::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(s.det(), q(0));
        assert_eq!(s.rank(), 2);
        assert_eq!(SparseMat::from_dense(&s).rank(), 2);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = Mat::from_i64(&[&[1, 2, 3, 4], &[2, 4, 7, 9]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Mat::from_rows(&[vec![qfrac(1, 2), q(3)], vec![q(-1), qfrac(2, 3)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        assert!(Mat::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn rational_rows_are_scaled() {
        let m = Mat::from_rows(&[vec![qfrac(1, 3), qfrac(1, 6)], vec![qfrac(2, 5), qfrac(1, 5)]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.det(), q(0));
        let d = Mat::from_rows(&[vec![qfrac(1, 3), q(0)], vec![q(0), qfrac(5, 7)]]);
        assert_eq!(d.det(), qfrac(5, 21));
    }

    #[test]
    fn blocks_split_disjoint_supports() {
        let m = Mat::from_i64(&[&[1, 0, 0, 0], &[0, 1, 1, 0], &[0, 0, 0, 2], &[0, 2, 2, 0]]);
        let s = SparseMat::from_dense(&m);
        assert_eq!(s.blocks().len(), 3);
        assert_eq!(s.rank(), 3);
    }

    #[test]
    fn modular_reduction_matches_arithmetic() {
        let a = qfrac(3, 7);
        let b = qfrac(-5, 11);
        let s = reduce_mod_p(&(&a + &b)).unwrap();
        assert_eq!(s, (reduce_mod_p(&a).unwrap() + reduce_mod_p(&b).unwrap()) % PRIME);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_mat() -> impl Strategy<Value = Mat> {
            (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                    let rows: Vec<Vec<Q>> = v.chunks(c).map(|ch| ch.iter().map(|&x| q(x)).collect()).collect();
                    Mat::from_rows(&rows)
                })
            })
        }

        proptest! {
            #[test]
            fn rank_routes_agree(m in small_mat()) {
                let dense = m.rank_bareiss();
                prop_assert_eq!(dense, SparseMat::from_dense(&m).rank());
                prop_assert_eq!(dense, m.rank());
                prop_assert_eq!(dense, m.rref().1.len());
                prop_assert_eq!(m.nullspace().len(), m.cols - dense);
            }

            #[test]
            fn det_is_multiplicative(a in proptest::collection::vec(-4i64..5, 9), b in proptest::collection::vec(-4i64..5, 9)) {
                let ma = Mat::from_rows(&a.chunks(3).map(|c| c.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>());
                let mb = Mat::from_rows(&b.chunks(3).map(|c| c.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>());
                prop_assert_eq!(ma.mul(&mb).det(), ma.det() * mb.det());
            }
        }
    }
}
