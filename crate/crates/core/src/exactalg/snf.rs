//! Smith normal form.
//!
//! The dense routine pivots on an entry of minimal absolute value in the
//! active submatrix, ties broken by lowest (row, column) index, and reduces
//! by floor division. [`invariant_factors`] skips the transforms and first
//! compresses the relation rows to echelon form, which keeps the large
//! group-ring presentations cheap.

use super::abelian::AbelianGroupPresentation;
use super::matrix::IntMatrix;
use super::ring::{sub_mul, Scalar};
use num_bigint::BigInt;
use num_traits::Zero;

/// `left * m * right == diag(diag)` with `left`, `right` unimodular and each
/// nonzero diagonal entry dividing the next. `diag` has `min(rows, cols)`
/// nonnegative entries, zeros last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.cols());
        for (i, v) in self.diag.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }

    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|v| !v.is_zero_elt()).count()
    }
}

struct Dense<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    fn at(&self, r: usize, c: usize) -> &T {
        &self.a[r * self.cols + c]
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        if x != y {
            for c in 0..self.cols {
                self.a.swap(x * self.cols + c, y * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        if x != y {
            for r in 0..self.rows {
                self.a.swap(r * self.cols + x, r * self.cols + y);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for c in 0..self.cols {
            let s = self.a[src * self.cols + c].clone();
            if !s.is_zero_elt() {
                let d = &mut self.a[dst * self.cols + c];
                *d = sub_mul(d, q, &s)?;
            }
        }
        Some(())
    }

    /// col[dst] -= q * col[src]
    fn col_sub(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for r in 0..self.rows {
            let s = self.a[r * self.cols + src].clone();
            if !s.is_zero_elt() {
                let d = &mut self.a[r * self.cols + dst];
                *d = sub_mul(d, q, &s)?;
            }
        }
        Some(())
    }

    fn negate_row(&mut self, r: usize) -> Option<()> {
        for c in 0..self.cols {
            let v = &mut self.a[r * self.cols + c];
            *v = v.checked_neg()?;
        }
        Some(())
    }

    fn identity(n: usize) -> Self {
        let mut a = vec![T::zero_elt(); n * n];
        for i in 0..n {
            a[i * n + i] = T::one_elt();
        }
        Dense { rows: n, cols: n, a }
    }
}

struct Transforms<T> {
    left: Option<Dense<T>>,
    right: Option<Dense<T>>,
    /// Inverse of `right`, updated by the inverse elementary operations.
    right_inv: Option<Dense<T>>,
}

impl<T: Scalar> Transforms<T> {
    fn none() -> Self {
        Transforms {
            left: None,
            right: None,
            right_inv: None,
        }
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        if let Some(l) = self.left.as_mut() {
            l.swap_rows(x, y);
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        if let Some(r) = self.right.as_mut() {
            r.swap_cols(x, y);
        }
        if let Some(ri) = self.right_inv.as_mut() {
            ri.swap_rows(x, y);
        }
    }

    fn row_sub(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        if let Some(l) = self.left.as_mut() {
            l.row_sub(dst, src, q)?;
        }
        Some(())
    }

    /// col[dst] -= q col[src] on `right`; row[src] += q row[dst] on `right_inv`.
    fn col_sub(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        if let Some(r) = self.right.as_mut() {
            r.col_sub(dst, src, q)?;
        }
        if let Some(ri) = self.right_inv.as_mut() {
            ri.row_sub(src, dst, &q.checked_neg()?)?;
        }
        Some(())
    }

    fn negate_row(&mut self, r: usize) -> Option<()> {
        if let Some(l) = self.left.as_mut() {
            l.negate_row(r)?;
        }
        Some(())
    }
}

fn dense_snf<T: Scalar>(m: &mut Dense<T>, tr: &mut Transforms<T>) -> Option<Vec<T>> {
    let n = m.rows.min(m.cols);
    let mut diag = Vec::with_capacity(n);
    let mut t = 0;
    while t < n {
        // minimal |entry| in the active block, lowest index on ties
        let mut best: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                let v = m.at(i, j);
                if v.is_zero_elt() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if !v.abs_lt(m.at(bi, bj)) => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);
        tr.swap_rows(t, pi);
        tr.swap_cols(t, pj);
        let mut clean = true;
        let p = m.at(t, t).clone();
        for i in t + 1..m.rows {
            let v = m.at(i, t).clone();
            if v.is_zero_elt() {
                continue;
            }
            let q = v.div_floor(&p)?;
            m.row_sub(i, t, &q)?;
            tr.row_sub(i, t, &q)?;
            if !m.at(i, t).is_zero_elt() {
                clean = false;
            }
        }
        for j in t + 1..m.cols {
            let v = m.at(t, j).clone();
            if v.is_zero_elt() {
                continue;
            }
            let q = v.div_floor(&p)?;
            m.col_sub(j, t, &q)?;
            tr.col_sub(j, t, &q)?;
            if !m.at(t, j).is_zero_elt() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into row t and retry
        let mut offending = None;
        'scan: for i in t + 1..m.rows {
            for j in t + 1..m.cols {
                if !m.at(i, j).mod_floor(&p)?.is_zero_elt() {
                    offending = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offending {
            let minus_one = T::one_elt().checked_neg()?;
            m.row_sub(t, i, &minus_one)?;
            tr.row_sub(t, i, &minus_one)?;
            continue;
        }
        if p.is_negative() {
            m.negate_row(t)?;
            tr.negate_row(t)?;
        }
        diag.push(m.at(t, t).clone());
        t += 1;
    }
    while diag.len() < n {
        diag.push(T::zero_elt());
    }
    Some(diag)
}

fn to_int_matrix<T: Scalar>(d: &Dense<T>) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = (0..d.rows)
        .map(|r| (0..d.cols).map(|c| d.at(r, c).to_big()).collect())
        .collect();
    IntMatrix::from_big_rows(d.cols, rows).expect("rectangular by construction")
}

/// Smith normal form with transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut d = Dense {
        rows: m.rows(),
        cols: m.cols(),
        a: (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect::<Vec<BigInt>>(),
    };
    let mut tr = Transforms {
        left: Some(Dense::identity(m.rows())),
        right: Some(Dense::identity(m.cols())),
        right_inv: None,
    };
    let diag = dense_snf(&mut d, &mut tr).expect("BigInt arithmetic does not overflow");
    SmithDecomposition {
        diag,
        left: to_int_matrix(tr.left.as_ref().expect("tracked")),
        right: to_int_matrix(tr.right.as_ref().expect("tracked")),
    }
}

type SparseRow<T> = Vec<(usize, T)>;

/// `a - q * b` on sparse rows.
fn sparse_sub<T: Scalar>(a: &SparseRow<T>, q: &T, b: &SparseRow<T>) -> Option<SparseRow<T>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = T::zero_elt().checked_sub(&q.checked_mul(&b[j].1)?)?;
            if !v.is_zero_elt() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = sub_mul(&a[i].1, q, &b[j].1)?;
            if !v.is_zero_elt() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn entry_at<T: Scalar>(row: &SparseRow<T>, col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|k| &row[k].1)
}

/// Echelon form by gcd row operations: slot `c` holds the row whose leading
/// entry sits in column `c`, if any.
fn echelon<T: Scalar>(cols: usize, mut rows: Vec<SparseRow<T>>) -> Option<Vec<Option<SparseRow<T>>>> {
    // short rows first keeps fill-in and coefficient growth down
    rows.sort_by_key(|r| r.len());
    let mut pivots: Vec<Option<SparseRow<T>>> = vec![None; cols];
    for mut row in rows {
        while let Some(&(c, _)) = row.first() {
            let Some(mut p) = pivots[c].take() else {
                pivots[c] = Some(row);
                row = Vec::new();
                break;
            };
            while !row.is_empty() && row[0].0 == c {
                if row[0].1.abs_lt(&p[0].1) {
                    std::mem::swap(&mut row, &mut p);
                }
                let q = row[0].1.div_floor(&p[0].1)?;
                row = sparse_sub(&row, &q, &p)?;
            }
            pivots[c] = Some(p);
        }
        debug_assert!(row.is_empty());
    }
    Some(pivots)
}

/// Invariant factors of `Z^cols / rowspan(rows)`: the nonunit diagonal
/// entries of the Smith form followed by one zero per free summand.
fn sparse_invariant_factors<T: Scalar>(cols: usize, rows: Vec<SparseRow<T>>) -> Option<Vec<BigInt>> {
    let mut pivots = echelon(cols, rows)?;
    let rank = pivots.iter().filter(|p| p.is_some()).count();

    // phase 2: a unit pivot eliminates its column; drop the row and the column
    let mut removed = vec![false; cols];
    for c in (0..cols).rev() {
        let unit = matches!(&pivots[c], Some(p) if p[0].1.is_unit());
        if !unit {
            continue;
        }
        let p = pivots[c].take().expect("checked above");
        for other in pivots.iter_mut().take(c).flatten() {
            if let Some(v) = entry_at(other, c) {
                // p[0].1 is +-1, so v * p[0].1 is the exact quotient
                let q = v.checked_mul(&p[0].1)?;
                *other = sparse_sub(other, &q, &p)?;
            }
        }
        removed[c] = true;
    }

    // phase 3: dense Smith form on what is left
    let keep: Vec<usize> = (0..cols).filter(|&c| !removed[c]).collect();
    let mut index = vec![usize::MAX; cols];
    for (k, &c) in keep.iter().enumerate() {
        index[c] = k;
    }
    let rest: Vec<SparseRow<T>> = pivots.into_iter().flatten().collect();
    let mut dense = Dense {
        rows: rest.len(),
        cols: keep.len(),
        a: vec![T::zero_elt(); rest.len() * keep.len()],
    };
    for (r, row) in rest.iter().enumerate() {
        for (c, v) in row {
            debug_assert!(!removed[*c]);
            dense.a[r * keep.len() + index[*c]] = v.clone();
        }
    }
    let diag = dense_snf(&mut dense, &mut Transforms::none())?;
    let mut out: Vec<BigInt> = diag
        .iter()
        .filter(|v| !v.is_zero_elt() && !v.is_unit())
        .map(|v| v.to_big())
        .collect();
    out.extend(std::iter::repeat(BigInt::zero()).take(cols - rank));
    Some(out)
}

fn sparse_rows_i64(m: &IntMatrix) -> Option<Vec<SparseRow<i64>>> {
    let rows = m.to_i64_rows()?;
    Some(
        rows.into_iter()
            .map(|r| r.into_iter().enumerate().filter(|(_, v)| *v != 0).collect())
            .collect(),
    )
}

fn sparse_rows_big(m: &IntMatrix) -> Vec<SparseRow<BigInt>> {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero_elt())
                .map(|(c, v)| (c, v.clone()))
                .collect()
        })
        .collect()
}

/// Invariant factors of the cokernel `Z^cols / rowspan(m)`, without
/// transforms. Runs in `i64` and falls back to `BigInt` on overflow.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    if let Some(rows) = sparse_rows_i64(m) {
        if let Some(f) = sparse_invariant_factors(m.cols(), rows) {
            return f;
        }
    }
    sparse_invariant_factors(m.cols(), sparse_rows_big(m)).expect("BigInt arithmetic does not overflow")
}

/// Cokernel of a relation matrix, rows being relations on the column generators.
pub fn cokernel(m: &IntMatrix) -> AbelianGroupPresentation {
    AbelianGroupPresentation::from_factors(invariant_factors(m))
}

fn rows_of<T: Scalar>(pivots: Vec<Option<SparseRow<T>>>, cols: usize) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = pivots
        .into_iter()
        .flatten()
        .map(|r| {
            let mut dense = vec![BigInt::zero(); cols];
            for (c, v) in r {
                dense[c] = v.to_big();
            }
            dense
        })
        .collect();
    IntMatrix::from_big_rows(cols, rows).expect("rectangular by construction")
}

/// A basis of the row lattice of `m`, in echelon form ordered by leading column.
pub fn row_basis(m: &IntMatrix) -> IntMatrix {
    if let Some(rows) = sparse_rows_i64(m) {
        if let Some(p) = echelon(m.cols(), rows) {
            return rows_of(p, m.cols());
        }
    }
    let p = echelon(m.cols(), sparse_rows_big(m)).expect("BigInt arithmetic does not overflow");
    rows_of(p, m.cols())
}

/// Coordinates of `v` in an echelon basis (as returned by [`row_basis`]),
/// or `None` if `v` is not in the lattice.
pub fn echelon_coordinates(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    use num_integer::Integer;
    let mut rest = v.to_vec();
    let mut coords = vec![BigInt::zero(); basis.rows()];
    for (i, coord) in coords.iter_mut().enumerate() {
        let row = basis.row(i);
        let lead = row.iter().position(|x| !x.is_zero_elt())?;
        let (q, r) = rest[lead].div_rem(&row[lead]);
        if !r.is_zero_elt() {
            return None;
        }
        if !q.is_zero_elt() {
            for (x, b) in rest.iter_mut().zip(row) {
                *x -= &q * b;
            }
        }
        *coord = q;
    }
    rest.iter().all(|x| x.is_zero_elt()).then_some(coords)
}

/// The quotient map `Z^cols -> Z^cols / rowspan(m)` in Smith coordinates.
///
/// ```
/// use hypermono::exactalg::{cokernel_map, IntMatrix};
/// let m = IntMatrix::from_rows(2, &[[2, 0], [0, 3]]).unwrap();
/// let q = cokernel_map(&m);
/// assert_eq!(q.presentation().to_string(), "Z/6");
/// ```
#[derive(Clone, Debug)]
pub struct CokernelMap {
    /// Modulus of each retained coordinate, 0 for free ones.
    factors: Vec<BigInt>,
    /// Smith columns carrying the retained coordinates.
    kept: Vec<usize>,
    right: IntMatrix,
    right_inv: IntMatrix,
}

impl CokernelMap {
    pub fn presentation(&self) -> AbelianGroupPresentation {
        AbelianGroupPresentation::from_factors(self.factors.clone())
    }

    /// Moduli of the coordinates returned by [`CokernelMap::coordinates`].
    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    /// Image of `v`, reduced into `[0, factor)` on torsion coordinates.
    pub fn coordinates(&self, v: &[BigInt]) -> Vec<BigInt> {
        let y = self.right.left_apply(v).expect("vector length matches the generator count");
        self.kept
            .iter()
            .zip(&self.factors)
            .map(|(&j, f)| if f.is_zero_elt() { y[j].clone() } else { num_integer::Integer::mod_floor(&y[j], f) })
            .collect()
    }

    /// A vector in `Z^cols` mapping to the `k`-th generator.
    pub fn lift(&self, k: usize) -> Vec<BigInt> {
        self.right_inv.row(self.kept[k]).to_vec()
    }
}

/// Smith form of the echelon compression of `rows`, tracking the column
/// transform and its inverse. Row operations leave the quotient map
/// `Z^cols -> Z^cols / rowspan` unchanged, so compressing first is free.
fn smith_columns<T: Scalar>(cols: usize, rows: Vec<SparseRow<T>>) -> Option<(Vec<T>, Dense<T>, Dense<T>)> {
    let basis: Vec<SparseRow<T>> = echelon(cols, rows)?.into_iter().flatten().collect();
    let mut dense = Dense {
        rows: basis.len(),
        cols,
        a: vec![T::zero_elt(); basis.len() * cols],
    };
    for (r, row) in basis.iter().enumerate() {
        for (c, v) in row {
            dense.a[r * cols + c] = v.clone();
        }
    }
    let mut tr = Transforms {
        left: None,
        right: Some(Dense::identity(cols)),
        right_inv: Some(Dense::identity(cols)),
    };
    let diag = dense_snf(&mut dense, &mut tr)?;
    Some((diag, tr.right?, tr.right_inv?))
}

fn cokernel_map_with<T: Scalar>(cols: usize, rows: Vec<SparseRow<T>>) -> Option<CokernelMap> {
    let (diag, right, right_inv) = smith_columns(cols, rows)?;
    let mut factors = Vec::new();
    let mut kept = Vec::new();
    for j in 0..cols {
        let f = diag.get(j).cloned().unwrap_or_else(T::zero_elt);
        if !f.is_unit() {
            factors.push(f.to_big());
            kept.push(j);
        }
    }
    Some(CokernelMap {
        factors,
        kept,
        right: to_int_matrix(&right),
        right_inv: to_int_matrix(&right_inv),
    })
}

fn saturation_with<T: Scalar>(cols: usize, rows: Vec<SparseRow<T>>) -> Option<IntMatrix> {
    let (diag, _, right_inv) = smith_columns(cols, rows)?;
    let rank = diag.iter().take_while(|v| !v.is_zero_elt()).count();
    let inv = to_int_matrix(&right_inv);
    let basis: Vec<Vec<BigInt>> = (0..rank).map(|j| inv.row(j).to_vec()).collect();
    Some(IntMatrix::from_big_rows(cols, basis).expect("rectangular"))
}

/// A basis of the saturation `(L tensor Q) cap Z^cols` of the row lattice `L`.
pub fn saturation(m: &IntMatrix) -> IntMatrix {
    if let Some(rows) = sparse_rows_i64(m) {
        if let Some(s) = saturation_with(m.cols(), rows) {
            return row_basis(&s);
        }
    }
    row_basis(&saturation_with(m.cols(), sparse_rows_big(m)).expect("BigInt arithmetic does not overflow"))
}

/// See [`CokernelMap`].
pub fn cokernel_map(m: &IntMatrix) -> CokernelMap {
    if let Some(rows) = sparse_rows_i64(m) {
        if let Some(c) = cokernel_map_with(m.cols(), rows) {
            return c;
        }
    }
    cokernel_map_with(m.cols(), sparse_rows_big(m)).expect("BigInt arithmetic does not overflow")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn small_snf() {
        let m = IntMatrix::from_rows(3, &[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, big(&[2, 6, 12]));
        let prod = s.left.mul(&m).unwrap().mul(&s.right).unwrap();
        assert_eq!(prod, s.diagonal_matrix());
    }

    #[test]
    fn rectangular_and_zero() {
        let m = IntMatrix::from_rows(3, &[[0, 0, 0], [0, 4, 0]]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, big(&[4, 0]));
        assert_eq!(invariant_factors(&m), big(&[4, 0, 0]));
        let empty = IntMatrix::zeros(0, 2);
        assert_eq!(invariant_factors(&empty), big(&[0, 0]));
    }

    #[test]
    fn cokernel_map_round_trip() {
        let m = IntMatrix::from_rows(3, &[[2, 4, 0], [0, 6, 3], [0, 0, 0]]).unwrap();
        let q = cokernel_map(&m);
        assert_eq!(q.presentation(), cokernel(&m));
        for k in 0..q.factors().len() {
            let mut e = vec![BigInt::zero(); q.factors().len()];
            e[k] = 1.into();
            let img = q.coordinates(&q.lift(k));
            for (a, (b, f)) in img.iter().zip(e.iter().zip(q.factors())) {
                if f.is_zero_elt() {
                    assert_eq!(a, b);
                } else {
                    assert_eq!(num_integer::Integer::mod_floor(&(a - b), f), BigInt::zero());
                }
            }
        }
        for r in 0..m.rows() {
            assert!(q.coordinates(m.row(r)).iter().all(|x| x.is_zero_elt()));
        }
    }

    #[test]
    fn echelon_basis_coordinates() {
        let m = IntMatrix::from_rows(3, &[[2, 4, 0], [4, 2, 6], [6, 6, 6]]).unwrap();
        let b = row_basis(&m);
        assert_eq!(b.rows(), 2);
        let v: Vec<BigInt> = (0..3).map(|c| m.get(1, c) + m.get(0, c)).collect();
        assert!(echelon_coordinates(&b, &v).is_some());
        assert!(echelon_coordinates(&b, &[1.into(), 0.into(), 0.into()]).is_none());
    }

    #[test]
    fn saturation_of_a_sublattice() {
        let m = IntMatrix::from_rows(3, &[[2, 4, 0], [0, 3, 3]]).unwrap();
        let s = saturation(&m);
        assert_eq!(s.rows(), 2);
        assert!(cokernel(&s).is_torsion_free());
        // m sits inside s with index 6
        let index = crate::exactalg::lattice_index;
        assert_eq!(index(&m), BigInt::from(6) * index(&s));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big_entry = i64::MAX / 2;
        let m = IntMatrix::from_rows(2, &[[big_entry, 3], [7, big_entry]]).unwrap();
        let f = invariant_factors(&m);
        let det = m.determinant().unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0], num_traits::Signed::abs(&det));
    }
}
