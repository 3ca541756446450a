//! Dense exact linear algebra over `Q(z48)`.

use std::fmt;

use crate::cyclo::CycloElt;

pub type Vector = Vec<CycloElt>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<CycloElt>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![CycloElt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, CycloElt::one())
    }

    pub fn scalar(n: usize, s: CycloElt) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn diag(entries: &[CycloElt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycloElt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| CycloElt::from_int(v)).collect()).collect())
    }

    pub fn from_columns(cols: &[Vector]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &CycloElt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: CycloElt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycloElt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &CycloElt> {
        self.data.iter()
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CycloElt]) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = CycloElt::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Mat {
        self.map(|x| -x)
    }

    pub fn scale(&self, s: &CycloElt) -> Mat {
        self.map(|x| x * s)
    }

    pub fn map(&self, f: impl Fn(&CycloElt) -> CycloElt) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn conj(&self) -> Mat {
        self.map(|x| x.conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat {
        self.transpose().conj()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value().is_some_and(|s| s.is_one())
    }

    /// `Some(s)` if the matrix is `s * I`.
    pub fn scalar_value(&self) -> Option<CycloElt> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let s = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                let ok = if i == j { *v == s } else { v.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(s)
    }

    pub fn trace(&self) -> CycloElt {
        (0..self.rows.min(self.cols)).fold(CycloElt::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn block_diag(blocks: &[Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    /// Every row and column has exactly one nonzero entry.
    pub fn is_monomial(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut col_seen = vec![false; self.cols];
        for i in 0..self.rows {
            let nz: Vec<usize> = (0..self.cols).filter(|&j| !self.get(i, j).is_zero()).collect();
            if nz.len() != 1 || col_seen[nz[0]] {
                return false;
            }
            col_seen[nz[0]] = true;
        }
        true
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vector> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        row_reduce(&mut rows, self.cols).len()
    }

    /// Basis of `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vector> {
        let mut rows: Vec<Vector> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = row_reduce(&mut rows, self.cols);
        let mut is_pivot = vec![None; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![CycloElt::zero(); self.cols];
            v[free] = CycloElt::one();
            for (r, &p) in pivots.iter().enumerate() {
                let a = &rows[r][free];
                if !a.is_zero() {
                    v[p] = -a;
                }
            }
            basis.push(v);
        }
        basis
    }

    pub fn det(&self) -> CycloElt {
        assert!(self.is_square());
        let n = self.rows;
        let mut a: Vec<Vector> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = CycloElt::one();
        for col in 0..n {
            let Some(p) = pick_pivot(&a, col, col) else {
                return CycloElt::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let piv = a[col][col].clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                for c in col..n {
                    if !a[col][c].is_zero() {
                        a[r][c] = &a[r][c] - &(&f * &a[col][c]);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut rows: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { CycloElt::one() } else { CycloElt::zero() }));
                r
            })
            .collect();
        let pivots = row_reduce(&mut rows, n);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Mat::from_rows(rows.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    /// Characteristic polynomial `det(xI - M)`, coefficients lowest degree first.
    pub fn charpoly(&self) -> Vec<CycloElt> {
        assert!(self.is_square());
        if self.is_monomial() {
            return self.monomial_charpoly();
        }
        hessenberg_charpoly(self)
    }

    /// Each cycle of length `l` with entry product `s` contributes `x^l - s`.
    fn monomial_charpoly(&self) -> Vec<CycloElt> {
        let n = self.rows;
        let target: Vec<usize> = (0..n).map(|j| (0..n).find(|&i| !self.get(i, j).is_zero()).unwrap()).collect();
        let mut seen = vec![false; n];
        let mut poly = vec![CycloElt::one()];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut prod = CycloElt::one();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                prod = &prod * self.get(target[j], j);
                j = target[j];
                len += 1;
            }
            let mut factor = vec![CycloElt::zero(); len + 1];
            factor[0] = -prod;
            factor[len] = CycloElt::one();
            poly = poly_mul(&poly, &factor);
        }
        poly
    }
}

fn pick_pivot(a: &[Vector], col: usize, from: usize) -> Option<usize> {
    (from..a.len()).filter(|&r| !a[r][col].is_zero()).min_by_key(|&r| a[r][col].weight())
}

/// Reduced row echelon form in place over the first `ncols` columns.
/// Zero rows are removed; returns the pivot column of each remaining row.
pub fn row_reduce(rows: &mut Vec<Vector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = pick_pivot(rows, col, r) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn poly_mul(a: &[CycloElt], b: &[CycloElt]) -> Vec<CycloElt> {
    let mut out = vec![CycloElt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

fn hessenberg_charpoly(m: &Mat) -> Vec<CycloElt> {
    let n = m.rows;
    let mut h: Vec<Vector> = (0..n).map(|i| m.row(i).to_vec()).collect();
    for k in 1..n.saturating_sub(1) {
        let Some(i0) = (k..n).find(|&i| !h[i][k - 1].is_zero()) else { continue };
        if i0 != k {
            h.swap(i0, k);
            for row in h.iter_mut() {
                row.swap(i0, k);
            }
        }
        let t_inv = h[k][k - 1].inv().expect("nonzero");
        for i in k + 1..n {
            if h[i][k - 1].is_zero() {
                continue;
            }
            let u = &h[i][k - 1] * &t_inv;
            let row_k = h[k].clone();
            for (x, y) in h[i].iter_mut().zip(&row_k) {
                if !y.is_zero() {
                    *x = &*x - &(&u * y);
                }
            }
            for row in h.iter_mut() {
                if !row[i].is_zero() {
                    let add = &u * &row[i];
                    row[k] = &row[k] + &add;
                }
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_i (prod of subdiagonal) h_{m-i,m} p_{m-i-1}
    let mut ps: Vec<Vec<CycloElt>> = vec![vec![CycloElt::one()]];
    for mm in 0..n {
        let prev = &ps[mm];
        let mut p = vec![CycloElt::zero(); mm + 2];
        for (d, c) in prev.iter().enumerate() {
            p[d + 1] = &p[d + 1] + c;
            p[d] = &p[d] - &(&h[mm][mm] * c);
        }
        let mut t = CycloElt::one();
        for i in 1..=mm {
            t = &t * &h[mm - i + 1][mm - i];
            if t.is_zero() {
                break;
            }
            let coef = &t * &h[mm - i][mm];
            if coef.is_zero() {
                continue;
            }
            for (d, c) in ps[mm - i].iter().enumerate() {
                p[d] = &p[d] - &(&coef * c);
            }
        }
        ps.push(p);
    }
    ps.pop().unwrap()
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[Vec<i64>]) -> Mat {
        Mat::from_int_rows(rows)
    }

    #[test]
    fn charpoly_generic_matches_monomial_path() {
        let m = int(&[vec![0, 0, -1], vec![1, 0, 0], vec![0, 1, 0]]);
        // 3-cycle with sign product -1: x^3 + 1
        let cp = m.charpoly();
        assert_eq!(cp, hessenberg_charpoly(&m));
        assert_eq!(cp, vec![CycloElt::one(), CycloElt::zero(), CycloElt::zero(), CycloElt::one()]);
    }

    #[test]
    fn charpoly_dense() {
        let m = int(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        // det(xI - M) = x^3 - 9x^2 + 24x - 18
        let expect: Vec<CycloElt> = [-18, 24, -9, 1].iter().map(|&v| CycloElt::from_int(v)).collect();
        assert_eq!(m.charpoly(), expect);
        assert_eq!(m.det(), CycloElt::from_int(18));
    }

    #[test]
    fn nullspace_and_inverse() {
        let m = int(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
        assert!(m.inverse().is_none());
        let a = int(&[vec![1, 1], vec![0, 2]]);
        assert!(a.mul(&a.inverse().unwrap()).is_identity());
    }
}
