//! Sparse and dense matrices over [`Scalar`].

use std::ops::Range;

use rug::Float;

use crate::scalar::{cmp_abs, Scalar};

/// Row-major sparse matrix; each row keeps its entries sorted by column.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self { n_rows, n_cols, rows: vec![Vec::new(); n_rows] }
    }

    pub fn identity(n: usize, bits: u32) -> Self {
        Self::diag((0..n).map(|_| Scalar::one(bits)).collect())
    }

    pub fn diag(entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        let rows = entries
            .into_iter()
            .enumerate()
            .map(|(i, v)| if v.is_zero() { Vec::new() } else { vec![(i, v)] })
            .collect();
        Self { n_rows: n, n_cols: n, rows }
    }

    /// Builds from `(row, col, value)` triples, summing duplicates.
    pub fn from_entries<I>(n_rows: usize, n_cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut m = Self::zeros(n_rows, n_cols);
        for (i, j, v) in entries {
            m.add_at(i, j, &v);
        }
        m
    }

    pub fn from_dense(d: &DenseMatrix) -> Self {
        let mut m = Self::zeros(d.n_rows, d.n_cols);
        for i in 0..d.n_rows {
            for j in 0..d.n_cols {
                let v = d.get(i, j);
                if !v.is_zero() {
                    m.rows[i].push((j, v.clone()));
                }
            }
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, Scalar)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Scalar> {
        let r = &self.rows[i];
        r.binary_search_by_key(&j, |e| e.0).ok().map(|k| &r[k].1)
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        assert!(i < self.n_rows && j < self.n_cols, "entry ({i},{j}) out of bounds");
        let r = &mut self.rows[i];
        match r.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => r[k].1 += v,
            Err(k) => r.insert(k, (j, v.clone())),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        let r = &mut self.rows[i];
        match r.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => r[k].1 = v,
            Err(k) => r.insert(k, (j, v)),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn mul(&self, o: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.n_cols, o.n_rows, "dimension mismatch in product");
        let mut acc: Vec<Option<Scalar>> = vec![None; o.n_cols];
        let mut touched = Vec::new();
        let mut rows = Vec::with_capacity(self.n_rows);
        for r in &self.rows {
            for (k, a) in r {
                for (j, b) in &o.rows[*k] {
                    let t = a * b;
                    match &mut acc[*j] {
                        Some(s) => *s += &t,
                        slot @ None => {
                            *slot = Some(t);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for j in touched.drain(..) {
                let v = acc[j].take().expect("touched slot");
                out.push((j, v));
            }
            rows.push(out);
        }
        SparseMatrix { n_rows: self.n_rows, n_cols: o.n_cols, rows }
    }

    fn combine(&self, o: &SparseMatrix, sign: i64) -> SparseMatrix {
        assert_eq!((self.n_rows, self.n_cols), (o.n_rows, o.n_cols), "shape mismatch");
        let mut rows = Vec::with_capacity(self.n_rows);
        for (a, b) in self.rows.iter().zip(&o.rows) {
            let mut out = Vec::with_capacity(a.len() + b.len());
            let (mut x, mut y) = (0, 0);
            while x < a.len() || y < b.len() {
                let ca = a.get(x).map_or(usize::MAX, |e| e.0);
                let cb = b.get(y).map_or(usize::MAX, |e| e.0);
                if ca < cb {
                    out.push(a[x].clone());
                    x += 1;
                } else if cb < ca {
                    let v = if sign > 0 { b[y].1.clone() } else { -&b[y].1 };
                    out.push((cb, v));
                    y += 1;
                } else {
                    let v = if sign > 0 { &a[x].1 + &b[y].1 } else { &a[x].1 - &b[y].1 };
                    out.push((ca, v));
                    x += 1;
                    y += 1;
                }
            }
            rows.push(out);
        }
        SparseMatrix { n_rows: self.n_rows, n_cols: self.n_cols, rows }
    }

    pub fn add(&self, o: &SparseMatrix) -> SparseMatrix {
        self.combine(o, 1)
    }

    pub fn sub(&self, o: &SparseMatrix) -> SparseMatrix {
        self.combine(o, -1)
    }

    pub fn scale(&self, s: &Scalar) -> SparseMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, v * s)).collect())
            .collect();
        SparseMatrix { n_rows: self.n_rows, n_cols: self.n_cols, rows }
    }

    pub fn neg(&self) -> SparseMatrix {
        let rows = self.rows.iter().map(|r| r.iter().map(|(j, v)| (*j, -v)).collect()).collect();
        SparseMatrix { n_rows: self.n_rows, n_cols: self.n_cols, rows }
    }

    /// Left multiplication by the diagonal matrix `diag(d)`.
    pub fn left_diag(&self, d: &[Scalar]) -> SparseMatrix {
        let rows = self
            .rows
            .iter()
            .zip(d)
            .map(|(r, s)| r.iter().map(|(j, v)| (*j, s * v)).collect())
            .collect();
        SparseMatrix { n_rows: self.n_rows, n_cols: self.n_cols, rows }
    }

    /// Right multiplication by the diagonal matrix `diag(d)`.
    pub fn right_diag(&self, d: &[Scalar]) -> SparseMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, v * &d[*j])).collect())
            .collect();
        SparseMatrix { n_rows: self.n_rows, n_cols: self.n_cols, rows }
    }

    pub fn max_abs(&self) -> f64 {
        self.rows.iter().flatten().map(|(_, v)| v.abs_f64()).fold(0.0, f64::max)
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r.iter().all(|(j, v)| *j == i || v.is_zero()))
    }

    /// Diagonal entries, zero where absent.
    pub fn diagonal(&self, bits: u32) -> Vec<Scalar> {
        (0..self.n_rows.min(self.n_cols))
            .map(|i| self.get(i, i).cloned().unwrap_or_else(|| Scalar::zero(bits)))
            .collect()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.n_cols, self.n_rows);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                m.rows[*j].push((i, v.clone()));
            }
        }
        m
    }

    pub fn apply(&self, x: &[Scalar], bits: u32) -> Vec<Scalar> {
        self.rows
            .iter()
            .map(|r| {
                let mut s = Scalar::zero(bits);
                for (j, v) in r {
                    if !x[*j].is_zero() {
                        s += &(v * &x[*j]);
                    }
                }
                s
            })
            .collect()
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(rows.len(), cols.len());
        for (k, i) in rows.enumerate() {
            for (j, v) in &self.rows[i] {
                if cols.contains(j) {
                    m.rows[k].push((j - cols.start, v.clone()));
                }
            }
        }
        m
    }

    /// Places `block` with its top-left corner at `(r0, c0)`, adding to existing entries.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &SparseMatrix) {
        for (i, j, v) in block.entries() {
            self.add_at(r0 + i, c0 + j, v);
        }
    }

    pub fn kron(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(a.n_rows * b.n_rows, a.n_cols * b.n_cols);
        for (i, j, x) in a.entries() {
            for (k, l, y) in b.entries() {
                m.rows[i * b.n_rows + k].push((j * b.n_cols + l, x * y));
            }
        }
        for r in &mut m.rows {
            r.sort_by_key(|e| e.0);
        }
        m
    }

    /// Drops entries with modulus at most `tol`.
    pub fn prune(&mut self, tol: f64) {
        for r in &mut self.rows {
            r.retain(|(_, v)| v.abs_f64() > tol);
        }
    }

    pub fn to_dense(&self, bits: u32) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.n_rows, self.n_cols, bits);
        for (i, j, v) in self.entries() {
            d.set(i, j, v.clone());
        }
        d
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug)]
pub struct DenseMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize, bits: u32) -> Self {
        Self { n_rows, n_cols, data: vec![Scalar::zero(bits); n_rows * n_cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), n_rows * n_cols, "ragged rows");
        Self { n_rows, n_cols, data }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.n_cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    /// Entries below `tol` times the largest entry count as zero.
    pub fn rref(&mut self, tol: f64) -> Vec<usize> {
        let cutoff = tol * self.max_abs();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.n_cols {
            if r == self.n_rows {
                break;
            }
            let best = (r..self.n_rows)
                .max_by(|&a, &b| cmp_abs(self.get(a, c), self.get(b, c)))
                .expect("nonempty range");
            if self.get(best, c).abs_f64() <= cutoff {
                continue;
            }
            for j in 0..self.n_cols {
                self.data.swap(r * self.n_cols + j, best * self.n_cols + j);
            }
            let inv = self.get(r, c).recip();
            for j in c..self.n_cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.n_rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.n_cols {
                    if self.get(r, j).is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.clone().rref(tol).len()
    }

    /// Null space basis; basis vector `k` is the unit vector on the `k`-th free
    /// column plus pivot-column corrections, so restricted to the free columns
    /// the basis is the identity.
    pub fn nullspace(&self, tol: f64, bits: u32) -> (Vec<usize>, Vec<Vec<Scalar>>) {
        let mut m = self.clone();
        let pivots = m.rref(tol);
        let free: Vec<usize> = (0..self.n_cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(bits); self.n_cols];
                v[f] = Scalar::one(bits);
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, f);
                }
                v
            })
            .collect();
        (free, basis)
    }

    /// Singular values (descending). The matrix is split into the connected
    /// components of its nonzero pattern; real symmetric blocks use two-sided
    /// Jacobi on eigenvalues, other blocks one-sided complex Jacobi.
    pub fn singular_values(&self, tol: f64) -> Vec<f64> {
        if self.n_rows != self.n_cols {
            return self.one_sided_jacobi(tol);
        }
        let n = self.n_rows;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && !self.get(i, j).is_zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..n {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(i);
        }
        let mut sv = Vec::with_capacity(n);
        for idx in groups.values() {
            let block = DenseMatrix::from_rows(
                idx.iter().map(|&i| idx.iter().map(|&j| self.get(i, j).clone()).collect()).collect(),
            );
            let real_symmetric = idx.iter().all(|&i| {
                idx.iter().all(|&j| self.get(i, j).is_real() && self.get(i, j) == self.get(j, i))
            });
            if real_symmetric {
                sv.extend(block.symmetric_eigen_abs());
            } else {
                sv.extend(block.one_sided_jacobi(tol));
            }
        }
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        sv
    }

    /// Absolute eigenvalues of a real symmetric matrix by cyclic Jacobi.
    #[allow(clippy::needless_range_loop)]
    fn symmetric_eigen_abs(&self) -> Vec<f64> {
        let n = self.n_rows;
        let bits = self.data.first().map_or(64, Scalar::prec);
        let mut a: Vec<Vec<Float>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).re().clone()).collect()).collect();
        let frob = a.iter().flatten().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt();
        let stop = frob * 2f64.powi(-(bits as i32));
        for _sweep in 0..60 {
            let off: f64 = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| a[i][j].to_f64().powi(2))
                .sum::<f64>()
                .sqrt();
            if off <= stop {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if a[p][q].is_zero() || a[p][q].to_f64().abs() <= stop / n as f64 {
                        continue;
                    }
                    let theta = Float::with_val(bits, &a[q][q] - &a[p][p]) / Float::with_val(bits, &a[p][q] * 2u32);
                    let root = (Float::with_val(bits, theta.square_ref()) + 1u32).sqrt();
                    let mut t = Float::with_val(bits, theta.abs_ref()) + &root;
                    t.recip_mut();
                    if theta.is_sign_negative() {
                        t = -t;
                    }
                    let c = (Float::with_val(bits, t.square_ref()) + 1u32).sqrt().recip();
                    let s = Float::with_val(bits, &t * &c);
                    let tau = Float::with_val(bits, &s / Float::with_val(bits, &c + 1u32));
                    let apq = a[p][q].clone();
                    a[p][p] -= Float::with_val(bits, &t * &apq);
                    a[q][q] += Float::with_val(bits, &t * &apq);
                    a[p][q] = Float::new(bits);
                    a[q][p] = Float::new(bits);
                    for r in 0..n {
                        if r == p || r == q {
                            continue;
                        }
                        let g = a[r][p].clone();
                        let h = a[r][q].clone();
                        let gp = Float::with_val(bits, &g - Float::with_val(bits, &s * Float::with_val(bits, &h + Float::with_val(bits, &g * &tau))));
                        let hq = Float::with_val(bits, &h + Float::with_val(bits, &s * Float::with_val(bits, &g - Float::with_val(bits, &h * &tau))));
                        a[p][r] = gp.clone();
                        a[r][p] = gp;
                        a[q][r] = hq.clone();
                        a[r][q] = hq;
                    }
                }
            }
        }
        (0..n).map(|i| a[i][i].to_f64().abs()).collect()
    }

    /// Singular values (descending) by one-sided Jacobi rotations.
    #[allow(clippy::needless_range_loop)]
    fn one_sided_jacobi(&self, tol: f64) -> Vec<f64> {
        let (m, n) = (self.n_rows, self.n_cols);
        let mut cols: Vec<Vec<Scalar>> =
            (0..n).map(|j| (0..m).map(|i| self.get(i, j).clone()).collect()).collect();
        let bits = self.data.first().map_or(64, Scalar::prec);
        let dot = |a: &[Scalar], b: &[Scalar]| {
            let mut s = Scalar::zero(bits);
            for (x, y) in a.iter().zip(b) {
                if !x.is_zero() && !y.is_zero() {
                    s += &(&x.conj() * y);
                }
            }
            s
        };
        for _sweep in 0..60 {
            let mut rotated = false;
            for i in 0..n {
                for j in i + 1..n {
                    let alpha = dot(&cols[i], &cols[i]).re().to_f64();
                    let beta = dot(&cols[j], &cols[j]).re().to_f64();
                    let gamma = dot(&cols[i], &cols[j]);
                    let g = gamma.abs_f64();
                    if g == 0.0 || g <= tol * (alpha * beta).sqrt() {
                        continue;
                    }
                    rotated = true;
                    let alpha_s = dot(&cols[i], &cols[i]);
                    let beta_s = dot(&cols[j], &cols[j]);
                    let g_s = Scalar::from_parts(gamma.abs(), rug::Float::new(bits));
                    let phase = &gamma / &g_s;
                    let zeta = (&beta_s - &alpha_s) / g_s.scale_int(2);
                    let one = Scalar::one(bits);
                    let root = (&one + &zeta.square()).sqrt_principal();
                    let zr = zeta.re().clone();
                    let t = if zr.is_sign_negative() {
                        -(&one / &(&root - &zeta))
                    } else {
                        &one / &(&root + &zeta)
                    };
                    let c = (&one / &(&one + &t.square())).sqrt_principal();
                    let s = &c * &t;
                    let pconj = phase.conj();
                    for k in 0..m {
                        let ai = cols[i][k].clone();
                        let aj = &cols[j][k] * &pconj;
                        cols[i][k] = &(&c * &ai) - &(&s * &aj);
                        cols[j][k] = &(&s * &ai) + &(&c * &aj);
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut sv: Vec<f64> = cols.iter().map(|c| dot(c, c).re().to_f64().max(0.0).sqrt()).collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        sv
    }
}
