//! Exact rational linear algebra: sparse matrices over Q, rank, kernel,
//! and middle homology of three-term complexes.
//!
//! Rank and kernel are computed by fraction-managed elimination: rows are
//! cleared to primitive integer vectors and combined by cross-multiplication,
//! re-dividing by the content after every update. No rounding ever happens;
//! every result is exact over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always in lowest terms with positive denominator
/// (maintained by `num-rational`).
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for a fraction; panics on zero denominator.
pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "3/2", "-1", "0" style rational strings.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let parse_int = |x: &str| -> Result<BigInt> {
        x.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("`{x}` is not an integer")))
    };
    match t.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(t)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("`{t}` has zero denominator")));
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
    }
}

/// Renders a rational as "n" or "n/d".
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A sparse vector: sorted (column, value) pairs with nonzero values.
pub type SparseRow = Vec<(usize, Rat)>;

/// Normalizes a sparse row: sorts, merges duplicate columns, drops zeros.
pub fn normalize_row(mut row: SparseRow) -> SparseRow {
    row.sort_by_key(|e| e.0);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Adds `scale * other` into `row` (both sparse, sorted).
pub fn row_axpy(row: &SparseRow, scale: &Rat, other: &SparseRow) -> SparseRow {
    if scale.is_zero() {
        return row.clone();
    }
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        if j >= other.len() || (i < row.len() && row[i].0 < other[j].0) {
            out.push(row[i].clone());
            i += 1;
        } else if i >= row.len() || other[j].0 < row[i].0 {
            out.push((other[j].0, scale * &other[j].1));
            j += 1;
        } else {
            let v = &row[i].1 + scale * &other[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn dot(a: &SparseRow, b: &SparseRow) -> Rat {
    let (mut i, mut j) = (0, 0);
    let mut acc = Rat::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Sparse matrix over Q, stored row-wise. Storage layout is internal: all
/// query results are independent of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl QMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        QMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, Rat::one())]).collect();
        QMatrix {
            nrows: n,
            ncols: n,
            rows,
        }
    }

    pub fn from_dense(data: Vec<Vec<Rat>>) -> Self {
        let nrows = data.len();
        let ncols = data.first().map_or(0, |r| r.len());
        let rows = data
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        QMatrix { nrows, ncols, rows }
    }

    pub fn from_sparse_rows(rows: Vec<SparseRow>, ncols: usize) -> Self {
        let rows: Vec<SparseRow> = rows.into_iter().map(normalize_row).collect();
        for r in &rows {
            if let Some((c, _)) = r.last() {
                assert!(*c < ncols, "column index out of range");
            }
        }
        QMatrix {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> Rat {
        self.rows[i]
            .binary_search_by_key(&j, |e| e.0)
            .map(|k| self.rows[i][k].1.clone())
            .unwrap_or_else(|_| Rat::zero())
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> QMatrix {
        let mut rows: Vec<SparseRow> = vec![Vec::new(); self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                rows[*j].push((i, v.clone()));
            }
        }
        QMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    /// Matrix product self * other.
    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in mul");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: SparseRow = Vec::new();
                for (k, v) in row {
                    acc = row_axpy(&acc, v, &other.rows[*k]);
                }
                acc
            })
            .collect();
        QMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply(&self, v: &SparseRow) -> SparseRow {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let d = dot(row, v);
            if !d.is_zero() {
                out.push((i, d));
            }
        }
        out
    }

    /// Exact rank over Q.
    pub fn rank(&self) -> usize {
        rank_of_rows(&self.rows)
    }

    /// Basis of the null space, returned as the columns of a matrix with
    /// `ncols` rows. Column count equals `ncols - rank`, which is asserted
    /// against the independent elimination path on every call.
    pub fn kernel_basis(&self) -> QMatrix {
        let (vectors, _) = kernel_cardinal(&self.rows, self.ncols);
        debug_assert_eq!(
            vectors.len(),
            self.ncols - self.rank(),
            "rank-nullity violated between the two elimination paths"
        );
        // vectors are kernel vectors as rows; return them as columns
        let mut cols: Vec<SparseRow> = vec![Vec::new(); vectors.len()];
        for (k, v) in vectors.iter().enumerate() {
            cols[k] = v.clone();
        }
        QMatrix::from_sparse_rows(cols, self.ncols).transpose()
    }
}

/// Middle homology dimension of a three-term complex  U --A--> V --B--> W,
/// i.e. dim ker(B) - rank(A). Rejects inputs that are not a complex.
pub fn middle_homology_dim(a: &QMatrix, b: &QMatrix) -> Result<usize> {
    if a.nrows() != b.ncols() {
        return Err(Error::Dimension(format!(
            "A maps into a {}-dim space but B consumes a {}-dim space",
            a.nrows(),
            b.ncols()
        )));
    }
    if !b.mul(a).is_zero() {
        return Err(Error::NotAComplex(format!(
            "B*A != 0 for {}x{} and {}x{}",
            b.nrows(),
            b.ncols(),
            a.nrows(),
            a.ncols()
        )));
    }
    let ker_b = b.ncols() - b.rank();
    let rank_a = a.rank();
    debug_assert!(rank_a <= ker_b, "im(A) not contained in ker(B)?");
    Ok(ker_b - rank_a)
}

// ---------------------------------------------------------------------------
// rank engine: primitive integer rows, sparsity-guided elimination
// ---------------------------------------------------------------------------

type IntRow = Vec<(usize, BigInt)>;

fn to_primitive_int_row(row: &SparseRow) -> IntRow {
    if row.is_empty() {
        return Vec::new();
    }
    let mut lcm = BigInt::one();
    for (_, v) in row {
        lcm = lcm.lcm(v.denom());
    }
    let mut out: IntRow = row
        .iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    let mut content = BigInt::zero();
    for (_, v) in &out {
        content = content.gcd(v);
        if content.is_one() {
            break;
        }
    }
    if !content.is_one() && !content.is_zero() {
        for (_, v) in &mut out {
            *v = &*v / &content;
        }
    }
    out
}

fn make_primitive(row: &mut IntRow) {
    let mut content = BigInt::zero();
    for (_, v) in row.iter() {
        content = content.gcd(v);
        if content.is_one() {
            return;
        }
    }
    if !content.is_zero() && !content.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &content;
        }
    }
}

fn row_get(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |e| e.0)
        .ok()
        .map(|k| &row[k].1)
}

/// r2 <- (b/g) * r2 - (a/g) * r1  where a = r2[col], b = r1[col], g = gcd(a,b);
/// the entry at `col` cancels exactly.
fn eliminate(r2: &IntRow, r1: &IntRow, col: usize) -> IntRow {
    let a = row_get(r2, col).expect("col in r2");
    let b = row_get(r1, col).expect("col in r1");
    let g = a.gcd(b);
    let ca = b / &g; // multiplies r2
    let cb = -(a / &g); // multiplies r1
    let mut out: IntRow = Vec::with_capacity(r2.len() + r1.len());
    let (mut i, mut j) = (0, 0);
    while i < r2.len() || j < r1.len() {
        if j >= r1.len() || (i < r2.len() && r2[i].0 < r1[j].0) {
            out.push((r2[i].0, &ca * &r2[i].1));
            i += 1;
        } else if i >= r2.len() || r1[j].0 < r2[i].0 {
            out.push((r1[j].0, &cb * &r1[j].1));
            j += 1;
        } else {
            let v = &ca * &r2[i].1 + &cb * &r1[j].1;
            if !v.is_zero() {
                out.push((r2[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}

/// Exact rank of a collection of sparse rational rows.
pub fn rank_of_rows(rows: &[SparseRow]) -> usize {
    let mut active: Vec<IntRow> = rows
        .iter()
        .map(to_primitive_int_row)
        .filter(|r| !r.is_empty())
        .collect();
    if active.is_empty() {
        return 0;
    }
    let ncols = active
        .iter()
        .map(|r| r.last().unwrap().0 + 1)
        .max()
        .unwrap();
    let mut col_count = vec![0u32; ncols];
    for r in &active {
        for (c, _) in r {
            col_count[*c] += 1;
        }
    }
    let mut rank = 0usize;
    while !active.is_empty() {
        // pivot row: fewest nonzeros; prefer one holding a unit entry
        let mut best: Option<(usize, usize, bool)> = None; // (idx, nnz, has_unit)
        for (idx, r) in active.iter().enumerate() {
            let has_unit = r.iter().any(|(_, v)| v.magnitude().is_one());
            let cand = (idx, r.len(), has_unit);
            best = Some(match best {
                None => cand,
                Some(b) => {
                    if (cand.1, !cand.2) < (b.1, !b.2) {
                        cand
                    } else {
                        b
                    }
                }
            });
        }
        let (pidx, _, _) = best.unwrap();
        let pivot_row = active.swap_remove(pidx);
        for (c, _) in &pivot_row {
            col_count[*c] -= 1;
        }
        // pivot column within the row: unit entries first, then fewest
        // other rows touching the column, then smallest magnitude
        let pcol = pivot_row
            .iter()
            .min_by_key(|(c, v)| {
                let unit = !v.magnitude().is_one();
                (unit, col_count[*c], v.magnitude().bits())
            })
            .map(|(c, _)| *c)
            .unwrap();
        rank += 1;
        let mut k = 0;
        while k < active.len() {
            if row_get(&active[k], pcol).is_some() {
                for (c, _) in &active[k] {
                    col_count[*c] -= 1;
                }
                let updated = eliminate(&active[k], &pivot_row, pcol);
                if updated.is_empty() {
                    active.swap_remove(k);
                    continue;
                }
                for (c, _) in &updated {
                    col_count[*c] += 1;
                }
                active[k] = updated;
            }
            k += 1;
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// kernel in cardinal form (dense RREF; constraint systems are small)
// ---------------------------------------------------------------------------

/// Reduced row echelon form of `rows` over Q. Returns (rref rows, pivot cols).
pub fn rref(rows: &[SparseRow], ncols: usize) -> (Vec<SparseRow>, Vec<usize>) {
    let mut mat: Vec<SparseRow> = rows
        .iter()
        .filter(|r| !r.is_empty()).cloned()
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut done: Vec<SparseRow> = Vec::new();
    for col in 0..ncols {
        let Some(pos) = mat.iter().position(|r| r.first().map(|e| e.0) == Some(col)) else {
            continue;
        };
        let mut prow = mat.swap_remove(pos);
        let inv = {
            let lead = &prow[0].1;
            Rat::one() / lead.clone()
        };
        for (_, v) in prow.iter_mut() {
            *v *= &inv;
        }
        let reduce = |r: &SparseRow| -> SparseRow {
            match row_sparse_get(r, col) {
                Some(v) => {
                    let s = -v;
                    row_axpy(r, &s, &prow)
                }
                None => r.clone(),
            }
        };
        mat = mat.iter().map(&reduce).filter(|r| !r.is_empty()).collect();
        done = done.iter().map(&reduce).collect();
        pivots.push(col);
        done.push(prow);
        if mat.is_empty() {
            break;
        }
    }
    (done, pivots)
}

fn row_sparse_get(row: &SparseRow, col: usize) -> Option<Rat> {
    row.binary_search_by_key(&col, |e| e.0)
        .ok()
        .map(|k| row[k].1.clone())
}

/// Kernel of the row system (each row is a linear constraint on an
/// `ncols`-dimensional space), in cardinal form: the k-th kernel vector has
/// value 1 at the k-th free column and 0 at all other free columns, so
/// coordinates in this basis can be read off at the free columns.
///
/// Returns (kernel vectors as rows, free columns).
pub fn kernel_cardinal(rows: &[SparseRow], ncols: usize) -> (Vec<SparseRow>, Vec<usize>) {
    let (rref_rows, pivots) = rref(rows, ncols);
    let is_pivot = {
        let mut v = vec![false; ncols];
        for p in &pivots {
            v[*p] = true;
        }
        v
    };
    let free: Vec<usize> = (0..ncols).filter(|c| !is_pivot[*c]).collect();
    let mut vectors: Vec<SparseRow> = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v: SparseRow = vec![(f, Rat::one())];
        for (ri, row) in rref_rows.iter().enumerate() {
            if let Some(val) = row_sparse_get(row, f) {
                v.push((pivots[ri], -val));
            }
        }
        vectors.push(normalize_row(v));
    }
    (vectors, free)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(m: &[&[i64]]) -> QMatrix {
        QMatrix::from_dense(
            m.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_empty_and_identity() {
        assert_eq!(QMatrix::zeros(0, 0).rank(), 0);
        assert_eq!(QMatrix::identity(3).rank(), 3);
        assert_eq!(dense(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(QMatrix::identity(2).kernel_basis().ncols(), 0);

        let k = dense(&[&[1, 1]]).kernel_basis();
        assert_eq!(k.ncols(), 1);
        // proportional to (1, -1)
        let a = k.entry(0, 0);
        let b = k.entry(1, 0);
        assert_eq!(a, -b);
        assert!(!a.is_zero());

        let k = dense(&[&[1, 2], &[2, 4]]).kernel_basis();
        assert_eq!(k.ncols(), 1);
        // proportional to (2, -1)
        let a = k.entry(0, 0);
        let b = k.entry(1, 0);
        assert_eq!(a, rat(-2) * b.clone());
        assert!(!b.is_zero());
    }

    #[test]
    fn kernel_annihilates() {
        let m = dense(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let k = m.kernel_basis();
        assert_eq!(k.ncols(), 3 - m.rank());
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn middle_homology_examples() {
        // zero differentials into/out of a 3-dim middle
        let a = QMatrix::zeros(3, 0);
        let b = QMatrix::zeros(0, 3);
        assert_eq!(middle_homology_dim(&a, &b).unwrap(), 3);

        // exact at the middle: A = identity on dim 2, B = 0
        let a = QMatrix::identity(2);
        let b = QMatrix::zeros(0, 2);
        assert_eq!(middle_homology_dim(&a, &b).unwrap(), 0);

        // inclusion of a line into 3-space, projection killing a plane
        // containing the line: defect 1
        let a = dense(&[&[1], &[0], &[0]]);
        let b = dense(&[&[0, 0, 1]]);
        assert_eq!(middle_homology_dim(&a, &b).unwrap(), 1);
    }

    #[test]
    fn middle_homology_rejects_noncomplex() {
        let a = QMatrix::identity(2);
        let b = QMatrix::identity(2);
        assert!(matches!(
            middle_homology_dim(&a, &b),
            Err(Error::NotAComplex(_))
        ));
    }

    #[test]
    fn rank_with_fractions() {
        // rows proportional by 3: rank 1
        let m = QMatrix::from_dense(vec![
            vec![rat_frac(1, 2), rat_frac(1, 3)],
            vec![rat_frac(3, 2), rat(1)],
        ]);
        assert_eq!(m.rank(), 1);
        let m = QMatrix::from_dense(vec![
            vec![rat_frac(1, 2), rat_frac(1, 3)],
            vec![rat_frac(3, 2), rat(2)],
            vec![rat(2), rat_frac(4, 3)],
        ]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("3/2").unwrap(), rat_frac(3, 2));
        assert_eq!(parse_rat("-1").unwrap(), rat(-1));
        assert_eq!(parse_rat("4/6").unwrap(), rat_frac(2, 3));
        assert_eq!(rat_to_string(&rat_frac(-4, 6)), "-2/3");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
