//! Dense integer matrices and the Smith normal form.
//!
//! Everything lattice-theoretic in the crate (membership, kernels, torsion of
//! quotients, coordinates in a basis) goes through [`SmithForm`].

use std::fmt;

/// Row-major dense matrix over `i64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from its rows. All rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.rows, v.len(), "dimension mismatch");
        let mut out = vec![0; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += c * a;
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: i64) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += c * v;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: i64) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += c * v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

/// `left * M * right = D` with `D` diagonal, `left` and `right` unimodular.
///
/// The inverses are tracked alongside, so `left_inv * D * right_inv = M`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal entries `d_1 | d_2 | ... | d_k`, all non-negative, `k = min(rows, cols)`.
    pub diagonal: Vec<i64>,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }

    /// The diagonal matrix `D` with the shape of the input.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.rows());
        for (i, &v) in self.diagonal.iter().enumerate() {
            d[(i, i)] = v;
        }
        d
    }

    /// Invariant factors strictly greater than one: the torsion of the cokernel
    /// of `v ↦ v M` (row span quotient).
    pub fn torsion_factors(&self) -> Vec<i64> {
        self.diagonal.iter().copied().filter(|&d| d > 1).collect()
    }
}

struct Reducer {
    m: IntMatrix,
    left: IntMatrix,
    left_inv: IntMatrix,
    right: IntMatrix,
    right_inv: IntMatrix,
}

impl Reducer {
    fn row_add(&mut self, dst: usize, src: usize, c: i64) {
        self.m.add_row(dst, src, c);
        self.left.add_row(dst, src, c);
        self.left_inv.add_col(src, dst, -c);
    }

    fn col_add(&mut self, dst: usize, src: usize, c: i64) {
        self.m.add_col(dst, src, c);
        self.right.add_col(dst, src, c);
        self.right_inv.add_row(src, dst, -c);
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.left.swap_rows(a, b);
        self.left_inv.swap_cols(a, b);
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.right.swap_cols(a, b);
        self.right_inv.swap_rows(a, b);
    }

    fn row_negate(&mut self, i: usize) {
        self.m.negate_row(i);
        self.left.negate_row(i);
        self.left_inv.negate_col(i);
    }

    /// Position of the smallest non-zero absolute value in the trailing block,
    /// first in row-major order on ties.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, i64)> = None;
        for i in t..self.m.rows() {
            for j in t..self.m.cols() {
                let v = self.m[(i, j)].abs();
                if v != 0 && best.is_none_or(|(_, _, b)| v < b) {
                    best = Some((i, j, v));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn reduce(&mut self) -> Vec<i64> {
        let k = self.m.rows().min(self.m.cols());
        for t in 0..k {
            let Some((pi, pj)) = self.min_pivot(t) else {
                break;
            };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                let p = self.m[(t, t)];
                let mut dirty = false;
                for i in t + 1..self.m.rows() {
                    let q = nearest_quotient(self.m[(i, t)], p);
                    if q != 0 {
                        self.row_add(i, t, -q);
                    }
                    dirty |= self.m[(i, t)] != 0;
                }
                for j in t + 1..self.m.cols() {
                    let q = nearest_quotient(self.m[(t, j)], p);
                    if q != 0 {
                        self.col_add(j, t, -q);
                    }
                    dirty |= self.m[(t, j)] != 0;
                }
                if dirty {
                    // a remainder survived: bring the smallest one to the pivot
                    let (pi, pj) = self.min_pivot_in_cross(t);
                    self.row_swap(t, pi);
                    self.col_swap(t, pj);
                    continue;
                }
                // pivot must divide the whole trailing block
                let bad = (t + 1..self.m.rows())
                    .find(|&i| (t + 1..self.m.cols()).any(|j| self.m[(i, j)] % p != 0));
                match bad {
                    Some(i) => self.row_add(t, i, 1),
                    None => break,
                }
            }
            if self.m[(t, t)] < 0 {
                self.row_negate(t);
            }
        }
        (0..k).map(|i| self.m[(i, i)]).collect()
    }

    /// Smallest non-zero entry in row `t` or column `t` (pivot included).
    fn min_pivot_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t, i64::MAX);
        for i in t..self.m.rows() {
            let v = self.m[(i, t)].abs();
            if v != 0 && v < best.2 {
                best = (i, t, v);
            }
        }
        for j in t..self.m.cols() {
            let v = self.m[(t, j)].abs();
            if v != 0 && v < best.2 {
                best = (t, j, v);
            }
        }
        (best.0, best.1)
    }
}

/// `q` with `|a - q p| <= |p| / 2`; keeps the transforms small.
fn nearest_quotient(a: i64, p: i64) -> i64 {
    let q = a.div_euclid(p);
    let r = a - q * p;
    if 2 * r > p.abs() {
        q + p.signum()
    } else {
        q
    }
}

/// Smith normal form of an arbitrary integer matrix. Deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut r = Reducer {
        m: m.clone(),
        left: IntMatrix::identity(m.rows()),
        left_inv: IntMatrix::identity(m.rows()),
        right: IntMatrix::identity(m.cols()),
        right_inv: IntMatrix::identity(m.cols()),
    };
    let diagonal = r.reduce();
    SmithForm {
        diagonal,
        left: r.left,
        left_inv: r.left_inv,
        right: r.right,
        right_inv: r.right_inv,
    }
}

/// Integer coordinates `c` with `v = Σ c_i g_i`, or `None` if `v` is not in
/// the span of the generators (rows of `gens`).
pub fn solve_in_span(gens: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let dim = v.len();
    if gens.is_empty() {
        return v.iter().all(|&x| x == 0).then(Vec::new);
    }
    let g = IntMatrix::from_rows(gens, dim);
    let snf = smith_normal_form(&g);
    // v = x G  <=>  v Q = (x P^-1) D
    let w = snf.right.apply_left(v);
    let mut y = vec![0; gens.len()];
    for (j, &wj) in w.iter().enumerate() {
        let d = snf.diagonal.get(j).copied().unwrap_or(0);
        if d == 0 {
            if wj != 0 {
                return None;
            }
        } else if wj % d != 0 {
            return None;
        } else {
            y[j] = wj / d;
        }
    }
    Some(snf.left.apply_left(&y))
}

pub fn in_span(gens: &[Vec<i64>], v: &[i64]) -> bool {
    solve_in_span(gens, v).is_some()
}

/// Basis of `{x : A x = 0}` for `A` given by its rows, as vectors of length `cols`.
pub fn kernel_basis(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return IntMatrix::identity(cols).to_rows();
    }
    let a = IntMatrix::from_rows(rows, cols);
    let snf = smith_normal_form(&a);
    (snf.rank()..cols).map(|j| snf.right.column(j)).collect()
}

/// Torsion invariant factors of `Z^cols / span(rows)`.
pub fn quotient_torsion(rows: &[Vec<i64>], cols: usize) -> Vec<i64> {
    if rows.is_empty() {
        return Vec::new();
    }
    smith_normal_form(&IntMatrix::from_rows(rows, cols)).torsion_factors()
}

pub fn rank(rows: &[Vec<i64>], cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    smith_normal_form(&IntMatrix::from_rows(rows, cols)).rank()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Gcd of the entries; a non-zero vector is primitive iff this is 1.
pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_diag(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&IntMatrix::from_rows(rows, rows[0].len())).diagonal
    }

    #[test]
    fn small_examples() {
        assert_eq!(snf_diag(&[vec![2]]), vec![2]);
        assert_eq!(snf_diag(&[vec![1, 0], vec![0, 3]]), vec![1, 3]);
        // 2,4 / 6,8: gcd of entries 2, determinant -8 => (2, 4)
        assert_eq!(snf_diag(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(snf_diag(&[vec![0, 0], vec![0, 0]]), vec![0, 0]);
        assert_eq!(snf_diag(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn reconstruction_on_rectangular_input() {
        let m = IntMatrix::from_rows(&[vec![3, -6, 9, 0], vec![4, 2, -8, 5]], 4);
        let s = smith_normal_form(&m);
        assert_eq!(s.left.mul(&m).mul(&s.right), s.diagonal_matrix());
        assert_eq!(s.left_inv.mul(&s.diagonal_matrix()).mul(&s.right_inv), m);
        assert_eq!(s.left.mul(&s.left_inv), IntMatrix::identity(2));
        assert_eq!(s.right.mul(&s.right_inv), IntMatrix::identity(4));
    }

    #[test]
    fn span_membership_and_coordinates() {
        let gens = vec![vec![2, 0], vec![0, 3]];
        assert!(in_span(&gens, &[4, 9]));
        assert!(!in_span(&gens, &[1, 0]));
        let c = solve_in_span(&gens, &[4, -9]).unwrap();
        assert_eq!(c, vec![2, -3]);
        assert!(in_span(&[], &[0, 0]));
        assert!(!in_span(&[], &[0, 1]));
    }

    #[test]
    fn kernel_of_block_sum_constraints() {
        // lambda_1 + ... + lambda_4 = 0 in Z^4
        let k = kernel_basis(&[vec![1, 1, 1, 1]], 4);
        assert_eq!(k.len(), 3);
        for v in &k {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
        assert_eq!(quotient_torsion(&k, 4), Vec::<i64>::new());
    }

    #[test]
    fn content_and_gcd() {
        assert_eq!(content(&[4, -6, 10]), 2);
        assert_eq!(content(&[0, 0]), 0);
        assert_eq!(gcd(-12, 18), 6);
    }
}
