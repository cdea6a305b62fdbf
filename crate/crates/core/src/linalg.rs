//! Dense linear algebra over a prime field F_p.
//!
//! Every code, nucleus and solution space in this crate is F_q-linear and
//! hence F_p-linear, so subspaces are computed over F_p coordinates and the
//! F_q-dimension is recovered by dividing by e.

/// Arithmetic modulo a small prime with a precomputed inverse table.
#[derive(Clone, Debug)]
pub struct PrimeField {
    p: u32,
    inv: Vec<u32>,
}

impl PrimeField {
    pub fn new(p: u32) -> Self {
        let mut inv = vec![0u32; p as usize];
        for a in 1..p {
            for b in 1..p {
                if (a as u64 * b as u64) % p as u64 == 1 {
                    inv[a as usize] = b;
                    break;
                }
            }
        }
        PrimeField { p, inv }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }
}

/// Reduce `rows` (each of length `cols`) to reduced row echelon form in place.
/// Returns the pivot column of each nonzero row; zero rows are dropped.
pub fn rref(fp: &PrimeField, rows: &mut Vec<Vec<u32>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let iv = fp.inv(rows[r][c]);
        if iv != 1 {
            for v in rows[r].iter_mut() {
                *v = fp.mul(*v, iv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if y != 0 {
                    *x = fp.sub(*x, fp.mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(fp: &PrimeField, rows: &[Vec<u32>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(fp, &mut m, cols).len()
}

/// Basis of {x : M x = 0} where M has the given rows.
pub fn nullspace(fp: &PrimeField, rows: &[Vec<u32>], cols: usize) -> Vec<Vec<u32>> {
    let mut m = rows.to_vec();
    let pivots = rref(fp, &mut m, cols);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (row, &pc) in m.iter().zip(&pivots) {
            if row[free] != 0 {
                v[pc] = fp.sub(0, row[free]);
            }
        }
        basis.push(v);
    }
    basis
}

/// One solution of M x = b, if any.
pub fn solve(fp: &PrimeField, rows: &[Vec<u32>], rhs: &[u32], cols: usize) -> Option<Vec<u32>> {
    let mut aug: Vec<Vec<u32>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut v = r.clone();
            v.push(b);
            v
        })
        .collect();
    let pivots = rref(fp, &mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![0u32; cols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[cols];
    }
    Some(x)
}

/// An F_p-subspace held in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Span {
    fp: PrimeField,
    cols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(fp: PrimeField, cols: usize) -> Self {
        Span {
            fp,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(fp: PrimeField, cols: usize, vectors: &[Vec<u32>]) -> Self {
        let mut rows = vectors.to_vec();
        let pivots = rref(&fp, &mut rows, cols);
        Span { fp, cols, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.cols
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Residue of `v` after elimination against the basis.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = w[pc];
            if f != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    if y != 0 {
                        *x = self.fp.sub(*x, self.fp.mul(f, y));
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Add `v`; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let w = self.reduce(v);
        if w.iter().all(|&x| x == 0) {
            return false;
        }
        self.rows.push(w);
        self.pivots = rref(&self.fp, &mut self.rows, self.cols);
        true
    }

    /// Rows spanning the annihilator: v ∈ self iff h·v = 0 for every row h.
    pub fn annihilator(&self) -> Vec<Vec<u32>> {
        nullspace(&self.fp, &self.rows, self.cols)
    }

    pub fn same_as(&self, other: &Span) -> bool {
        self.cols == other.cols && self.dim() == other.dim() && other.rows.iter().all(|r| self.contains(r))
    }

    pub fn is_subspace_of(&self, other: &Span) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Enumerate every vector in the span (p^dim of them) in odometer order.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let p = self.fp.p();
        let dim = self.dim();
        let total = (p as u64).pow(dim as u32);
        let mut out = Vec::with_capacity(total as usize);
        let mut digits = vec![0u32; dim];
        let mut cur = vec![0u32; self.cols];
        for idx in 0..total {
            out.push(cur.clone());
            if idx + 1 == total {
                break;
            }
            let mut i = 0;
            loop {
                digits[i] += 1;
                for (x, &y) in cur.iter_mut().zip(&self.rows[i]) {
                    *x = self.fp.add(*x, y);
                }
                if digits[i] == p {
                    digits[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
        out
    }
}

/// Rank of a small square matrix stored row-major, using `scratch`
/// as working space. Used in the hot enumeration loops.
#[inline]
pub(crate) fn small_rank(fp: &PrimeField, m: &[u32], dim: usize, scratch: &mut [u32]) -> usize {
    scratch[..dim * dim].copy_from_slice(&m[..dim * dim]);
    let s = &mut scratch[..dim * dim];
    let mut r = 0;
    for c in 0..dim {
        let Some(sel) = (r..dim).find(|&i| s[i * dim + c] != 0) else {
            continue;
        };
        if sel != r {
            for k in 0..dim {
                s.swap(r * dim + k, sel * dim + k);
            }
        }
        let iv = fp.inv(s[r * dim + c]);
        for i in r + 1..dim {
            let f = s[i * dim + c];
            if f == 0 {
                continue;
            }
            let f = fp.mul(f, iv);
            for k in c..dim {
                let y = s[r * dim + k];
                if y != 0 {
                    s[i * dim + k] = fp.sub(s[i * dim + k], fp.mul(f, y));
                }
            }
        }
        r += 1;
        if r == dim {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_dimension() {
        let fp = PrimeField::new(3);
        let rows = vec![vec![1, 2, 0, 1], vec![2, 1, 0, 2]];
        assert_eq!(rank(&fp, &rows, 4), 1);
        let ns = nullspace(&fp, &rows, 4);
        assert_eq!(ns.len(), 3);
        for v in &ns {
            for r in &rows {
                let dot = r.iter().zip(v).fold(0, |acc, (a, b)| fp.add(acc, fp.mul(*a, *b)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn solve_affine() {
        let fp = PrimeField::new(5);
        let rows = vec![vec![1, 1], vec![1, 4]];
        let x = solve(&fp, &rows, &[3, 1], 2).unwrap();
        assert_eq!(fp.add(x[0], x[1]), 3);
        assert_eq!(fp.add(x[0], fp.mul(4, x[1])), 1);
        assert!(solve(&fp, &[vec![1, 1], vec![2, 2]], &[1, 1], 2).is_none());
    }

    #[test]
    fn span_membership_and_annihilator() {
        let fp = PrimeField::new(3);
        let span = Span::from_vectors(fp.clone(), 3, &[vec![1, 1, 0], vec![0, 1, 1]]);
        assert!(span.contains(&[1, 2, 1]));
        assert!(!span.contains(&[1, 0, 0]));
        let ann = span.annihilator();
        assert_eq!(ann.len(), 1);
        assert_eq!(span.elements().len(), 9);
    }

    #[test]
    fn small_rank_matches_rref() {
        let fp = PrimeField::new(3);
        let m = [1, 2, 0, 2, 1, 0, 0, 0, 1];
        let mut scratch = [0u32; 9];
        let rows = vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]];
        assert_eq!(small_rank(&fp, &m, 3, &mut scratch), rank(&fp, &rows, 3));
    }
}
