//! Koszul differentials on wedge powers of a linear system and the
//! dimensions of the cohomology groups K_{p,q}(X; B, L, W).
//!
//! The slice at (p, q) is the three-term complex
//!
//! ```text
//!   /\^{p+1} W (x) H^0(B L^{q-1})  ->  /\^p W (x) H^0(B L^q)  ->  /\^{p-1} W (x) H^0(B L^{q+1})
//! ```
//!
//! with d(w_{i_1} ^ ... ^ w_{i_t} (x) s) = sum_j (-1)^{j-1} (drop i_j) (x) (w_{i_j} s).
//! Wedge bases are lexicographically ordered t-subsets; the sign convention
//! is fixed so differentials are reproducible bit for bit. Coefficient
//! bundles are direct sums of line bundles; the differentials are block
//! diagonal across summands, so dimensions add up over summands.

#![allow(clippy::needless_range_loop)]

use std::collections::HashMap;

use num_traits::Zero;

use crate::curve::NodalCurve;
use crate::error::{Error, Result};
use crate::linalg::{middle_homology_dim, QMatrix, Rat, SparseRow};
use crate::sheaf::{
    global_sections, multiply_sections, CoefficientBundle, LineBundle, LinearSystem, SectionSpace,
};

/// Lexicographically ordered t-subsets of {0..m-1} with stable indexing.
#[derive(Debug, Clone)]
pub struct WedgeBasis {
    pub m: usize,
    pub t: usize,
    subsets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl WedgeBasis {
    pub fn new(m: usize, t: usize) -> Self {
        let subsets = subsets_lex(m, t);
        let index = subsets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        WedgeBasis {
            m,
            t,
            subsets,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subset(&self, i: usize) -> &[usize] {
        &self.subsets[i]
    }

    pub fn index_of(&self, s: &[usize]) -> usize {
        self.index[s]
    }
}

fn subsets_lex(m: usize, t: usize) -> Vec<Vec<usize>> {
    if t > m {
        return Vec::new();
    }
    if t == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..t).collect();
    loop {
        out.push(cur.clone());
        // advance to the next t-subset in lex order
        let mut i = t;
        let mut found = false;
        while i > 0 {
            i -= 1;
            if cur[i] != i + m - t {
                found = true;
                break;
            }
        }
        if !found {
            return out;
        }
        cur[i] += 1;
        for j in i + 1..t {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn binomial(m: usize, t: usize) -> u128 {
    if t > m {
        return 0;
    }
    let t = t.min(m - t);
    let mut num: u128 = 1;
    for i in 0..t {
        num = num * (m - i) as u128 / (i + 1) as u128;
    }
    num
}

fn wedge_dim(m: usize, t: i64) -> usize {
    if t < 0 || t as usize > m {
        0
    } else {
        binomial(m, t as usize) as usize
    }
}

/// Matrix of the Koszul differential
/// /\^t W (x) source -> /\^{t-1} W (x) target, where target must be the
/// section space of L (x) source-bundle.
pub fn koszul_differential(
    t: usize,
    w: &LinearSystem,
    source: &SectionSpace,
    target: &SectionSpace,
) -> Result<QMatrix> {
    let m = w.dim();
    let expected: Vec<i64> = w
        .space
        .bundle
        .degrees
        .iter()
        .zip(&source.bundle.degrees)
        .map(|(a, b)| a + b)
        .collect();
    if expected != target.bundle.degrees {
        return Err(Error::Bundle(
            "koszul target space does not match L (x) source".into(),
        ));
    }
    let src_wedge = WedgeBasis::new(m, t);
    let ns = source.dim();
    let nt = target.dim();
    if t == 0 || t > m {
        return Ok(QMatrix::zeros(0, src_wedge.len() * ns));
    }
    let tgt_wedge = WedgeBasis::new(m, t - 1);
    let nrows = tgt_wedge.len() * nt;
    let ncols = src_wedge.len() * ns;
    if nrows == 0 || ncols == 0 {
        return Ok(QMatrix::zeros(nrows, ncols));
    }
    // products w_i * s_k expressed in the target basis
    let mut prod: Vec<Vec<SparseRow>> = Vec::with_capacity(m);
    for wi in 0..m {
        let mut per = Vec::with_capacity(ns);
        for k in 0..ns {
            let v = multiply_sections(
                &w.space.layout,
                &source.layout,
                &target.layout,
                &w.rows()[wi],
                source.basis_row(k),
            );
            per.push(target.coords_of(&v)?);
        }
        prod.push(per);
    }
    let mut cols: Vec<SparseRow> = Vec::with_capacity(ncols);
    for si in 0..src_wedge.len() {
        let s = src_wedge.subset(si);
        for k in 0..ns {
            let mut col: SparseRow = Vec::new();
            for (j, &wj) in s.iter().enumerate() {
                let reduced: Vec<usize> = s.iter().copied().filter(|&x| x != wj).collect();
                let ti = tgt_wedge.index_of(&reduced);
                let base = ti * nt;
                let negate = j % 2 == 1;
                for (r, v) in &prod[wj][k] {
                    col.push((base + r, if negate { -v.clone() } else { v.clone() }));
                }
            }
            col.sort_by_key(|e| e.0);
            cols.push(col);
        }
    }
    Ok(QMatrix::from_sparse_rows(cols, nrows).transpose())
}

/// Limits on slice construction.
#[derive(Debug, Clone)]
pub struct KoszulConfig {
    /// Refuse slices whose differential matrices exceed this many entries
    /// (dense row*col count).
    pub slice_cap_entries: u128,
    /// Verify d_out * d_in = 0 exactly when the product is affordable.
    pub check_complex: bool,
}

impl Default for KoszulConfig {
    fn default() -> Self {
        KoszulConfig {
            slice_cap_entries: 1_000_000,
            check_complex: true,
        }
    }
}

const COMPLEX_CHECK_COST_LIMIT: u128 = 5_000_000;

/// The three-term complex at (p, q) for a single line-bundle coefficient.
#[derive(Debug)]
pub struct KoszulSlice {
    pub p: i64,
    pub q: i64,
    pub left_dim: usize,
    pub middle_dim: usize,
    pub right_dim: usize,
    pub d_in: QMatrix,
    pub d_out: QMatrix,
}

impl KoszulSlice {
    pub fn homology_dim(&self) -> Result<usize> {
        middle_homology_dim(&self.d_in, &self.d_out)
    }
}

/// Builds the slice at (p, q) with coefficient line bundle `b`.
pub fn build_slice(
    curve: &NodalCurve,
    p: i64,
    q: i64,
    b: &LineBundle,
    l: &LineBundle,
    w: &LinearSystem,
    cfg: &KoszulConfig,
) -> Result<KoszulSlice> {
    let m = w.dim();
    let spaces: Vec<SectionSpace> = [q - 1, q, q + 1]
        .iter()
        .map(|&qq| global_sections(curve, &b.tensor(&l.power(qq))?))
        .collect::<Result<_>>()?;
    let left_dim = wedge_dim(m, p + 1) * spaces[0].dim();
    let middle_dim = wedge_dim(m, p) * spaces[1].dim();
    let right_dim = wedge_dim(m, p - 1) * spaces[2].dim();
    let in_entries = left_dim as u128 * middle_dim as u128;
    let out_entries = middle_dim as u128 * right_dim as u128;
    let actual = in_entries.max(out_entries);
    if actual > cfg.slice_cap_entries {
        return Err(Error::SliceCapExceeded {
            actual,
            cap: cfg.slice_cap_entries,
        });
    }
    let d_in = if p >= 0 && (p as usize) < m && left_dim > 0 && middle_dim > 0 {
        koszul_differential((p + 1) as usize, w, &spaces[0], &spaces[1])?
    } else {
        QMatrix::zeros(middle_dim, left_dim)
    };
    let d_out = if p >= 1 && middle_dim > 0 {
        let d = koszul_differential(p as usize, w, &spaces[1], &spaces[2])?;
        debug_assert_eq!(d.nrows(), right_dim);
        d
    } else {
        QMatrix::zeros(right_dim, middle_dim)
    };
    if cfg.check_complex
        && left_dim > 0
        && right_dim > 0
        && (d_in.nnz() as u128) * ((d_out.nnz() as u128) / middle_dim.max(1) as u128 + 1)
            <= COMPLEX_CHECK_COST_LIMIT
        && !d_out.mul(&d_in).is_zero()
    {
        return Err(Error::NotAComplex(format!("slice ({p}, {q})")));
    }
    Ok(KoszulSlice {
        p,
        q,
        left_dim,
        middle_dim,
        right_dim,
        d_in,
        d_out,
    })
}

/// Reusable engine for many (p, q) positions with the same (X, B, L, W):
/// section spaces and differential ranks are cached, since the incoming
/// differential of one slice is the outgoing differential of its neighbor.
pub struct KoszulEngine<'a> {
    pub curve: &'a NodalCurve,
    pub coeff: &'a CoefficientBundle,
    pub l: &'a LineBundle,
    pub w: &'a LinearSystem,
    pub cfg: KoszulConfig,
    spaces: HashMap<(usize, i64), SectionSpace>,
    ranks: HashMap<(usize, usize, i64), usize>,
}

impl<'a> KoszulEngine<'a> {
    pub fn new(
        curve: &'a NodalCurve,
        coeff: &'a CoefficientBundle,
        l: &'a LineBundle,
        w: &'a LinearSystem,
        cfg: KoszulConfig,
    ) -> Self {
        KoszulEngine {
            curve,
            coeff,
            l,
            w,
            cfg,
            spaces: HashMap::new(),
            ranks: HashMap::new(),
        }
    }

    fn space(&mut self, summand: usize, q: i64) -> Result<SectionSpace> {
        if let Some(s) = self.spaces.get(&(summand, q)) {
            return Ok(s.clone());
        }
        let b = &self.coeff.summands[summand];
        let s = global_sections(self.curve, &b.tensor(&self.l.power(q))?)?;
        self.spaces.insert((summand, q), s.clone());
        Ok(s)
    }

    /// Rank of  /\^t W (x) H^0(B_k L^q) -> /\^{t-1} W (x) H^0(B_k L^{q+1}).
    fn diff_rank(&mut self, summand: usize, t: i64, q: i64) -> Result<usize> {
        let m = self.w.dim();
        if t <= 0 || t as usize > m {
            return Ok(0);
        }
        let key = (summand, t as usize, q);
        if let Some(r) = self.ranks.get(&key) {
            return Ok(*r);
        }
        let src = self.space(summand, q)?;
        let tgt = self.space(summand, q + 1)?;
        let rank = if src.dim() == 0 {
            0
        } else {
            let d = koszul_differential(t as usize, self.w, &src, &tgt)?;
            d.rank()
        };
        self.ranks.insert(key, rank);
        Ok(rank)
    }

    fn summand_dims(&mut self, summand: usize, p: i64, q: i64) -> Result<(usize, usize, usize)> {
        let m = self.w.dim();
        let a = self.space(summand, q - 1)?.dim();
        let b = self.space(summand, q)?.dim();
        let c = self.space(summand, q + 1)?.dim();
        Ok((
            wedge_dim(m, p + 1) * a,
            wedge_dim(m, p) * b,
            wedge_dim(m, p - 1) * c,
        ))
    }

    /// dim K_{p,q}(X; B, L, W), summed over the summands of B.
    pub fn dim(&mut self, p: i64, q: i64) -> Result<usize> {
        let m = self.w.dim();
        if p < 0 || p as usize > m {
            return Ok(0);
        }
        let mut total = 0usize;
        for k in 0..self.coeff.summands.len() {
            let (left, mid, right) = self.summand_dims(k, p, q)?;
            if mid == 0 {
                continue;
            }
            let entries = (left as u128 * mid as u128).max(mid as u128 * right as u128);
            if entries > self.cfg.slice_cap_entries {
                return Err(Error::SliceCapExceeded {
                    actual: entries,
                    cap: self.cfg.slice_cap_entries,
                });
            }
            let rank_out = self.diff_rank(k, p, q)?;
            let rank_in = self.diff_rank(k, p + 1, q - 1)?;
            debug_assert!(rank_in + rank_out <= mid);
            total += mid - rank_out - rank_in;
        }
        Ok(total)
    }
}

/// dim K_{p,q}(X; B, L, W) as a one-shot computation.
pub fn koszul_dim(
    curve: &NodalCurve,
    p: i64,
    q: i64,
    coeff: &CoefficientBundle,
    l: &LineBundle,
    w: &LinearSystem,
    cfg: &KoszulConfig,
) -> Result<usize> {
    KoszulEngine::new(curve, coeff, l, w, cfg.clone()).dim(p, q)
}

/// The two sides of the duality identity
/// dim K_{p,2}(X; O, L) = dim K_{m-2-p,0}(X; omega, L)  for W = H^0(L) with
/// h^1(L) = 0. Returns the pair; callers assert equality.
pub fn duality_check(
    curve: &NodalCurve,
    p: i64,
    l: &LineBundle,
    cfg: &KoszulConfig,
) -> Result<(usize, usize)> {
    if crate::sheaf::h1(curve, l)? != 0 {
        return Err(Error::Hypothesis(
            "duality check requires h^1(L) = 0".into(),
        ));
    }
    let space = global_sections(curve, l)?;
    let m = space.dim() as i64;
    let w = LinearSystem::full(space);
    let o = CoefficientBundle::line(LineBundle::structure_sheaf(curve));
    let omega = CoefficientBundle::line(crate::sheaf::dualizing_sheaf(curve));
    let lhs = koszul_dim(curve, p, 2, &o, l, &w, cfg)?;
    let rhs = koszul_dim(curve, m - 2 - p, 0, &omega, l, &w, cfg)?;
    Ok((lhs, rhs))
}

/// Outcome of the injectivity check
/// /\^t W (x) V -> /\^{t-1} W (x) H^0(E(L)).
#[derive(Debug, Clone, serde::Serialize)]
pub struct InjectivityReport {
    pub t: usize,
    pub v_dim: usize,
    pub source_dim: usize,
    pub rank: usize,
    pub injective: bool,
    /// Whether t >= dim V, i.e. whether injectivity is claimed.
    pub claimed: bool,
}

/// Injectivity of the Koszul map restricted to a subspace V of H^0(E), on an
/// irreducible curve (single component; self-nodes allowed). `v_coeffs`
/// selects V inside the concatenated coordinates of H^0(E); None means all
/// of H^0(E).
pub fn green_injectivity_check(
    curve: &NodalCurve,
    t: usize,
    w: &LinearSystem,
    e: &CoefficientBundle,
    v_coeffs: Option<&[Vec<Rat>]>,
) -> Result<InjectivityReport> {
    if curve.components().len() != 1 {
        return Err(Error::Hypothesis(
            "injectivity lemma check requires an irreducible curve".into(),
        ));
    }
    let m = w.dim();
    let e_spaces = e.section_spaces(curve)?;
    let h0e: usize = e_spaces.iter().map(|s| s.dim()).sum();
    // V as rows of coefficients over the concatenated H^0(E) coordinates
    let v_rows: Vec<Vec<Rat>> = match v_coeffs {
        Some(rows) => {
            for r in rows {
                if r.len() != h0e {
                    return Err(Error::Dimension(format!(
                        "V coefficient vector has length {}, expected {}",
                        r.len(),
                        h0e
                    )));
                }
            }
            rows.to_vec()
        }
        None => (0..h0e)
            .map(|i| {
                let mut v = vec![Rat::zero(); h0e];
                v[i] = crate::linalg::rat(1);
                v
            })
            .collect(),
    };
    let v_dim = v_rows.len();
    let el_spaces: Vec<SectionSpace> = e
        .summands
        .iter()
        .map(|b| global_sections(curve, &b.tensor(&w.space.bundle)?))
        .collect::<Result<_>>()?;
    let tgt_total: usize = el_spaces.iter().map(|s| s.dim()).sum();
    let mut tgt_offsets: Vec<usize> = Vec::new();
    let mut summand_offsets: Vec<usize> = Vec::new();
    {
        let (mut a, mut b) = (0usize, 0usize);
        for (el, es) in el_spaces.iter().zip(&e_spaces) {
            tgt_offsets.push(a);
            summand_offsets.push(b);
            a += el.dim();
            b += es.dim();
        }
    }
    // products w_i * v_j in concatenated H^0(E(L)) coordinates
    let mut prod: Vec<Vec<SparseRow>> = Vec::with_capacity(m);
    for wi in 0..m {
        let mut per = Vec::with_capacity(v_dim);
        for vr in &v_rows {
            let mut coords: SparseRow = Vec::new();
            for (k, es) in e_spaces.iter().enumerate() {
                // section of E_k contributed by this V vector
                let mut amb: SparseRow = Vec::new();
                for b in 0..es.dim() {
                    let c = &vr[summand_offsets[k] + b];
                    if !c.is_zero() {
                        amb = crate::linalg::row_axpy(&amb, c, es.basis_row(b));
                    }
                }
                if amb.is_empty() {
                    continue;
                }
                let v = multiply_sections(
                    &w.space.layout,
                    &es.layout,
                    &el_spaces[k].layout,
                    &w.rows()[wi],
                    &amb,
                );
                for (r, val) in el_spaces[k].coords_of(&v)? {
                    coords.push((tgt_offsets[k] + r, val));
                }
            }
            coords.sort_by_key(|e| e.0);
            per.push(coords);
        }
        prod.push(per);
    }
    let src_wedge = WedgeBasis::new(m, t);
    let source_dim = src_wedge.len() * v_dim;
    if t == 0 || t > m || source_dim == 0 {
        return Ok(InjectivityReport {
            t,
            v_dim,
            source_dim,
            rank: 0,
            injective: true,
            claimed: t >= v_dim,
        });
    }
    let tgt_wedge = WedgeBasis::new(m, t - 1);
    let mut cols: Vec<SparseRow> = Vec::with_capacity(source_dim);
    for si in 0..src_wedge.len() {
        let s = src_wedge.subset(si);
        for j in 0..v_dim {
            let mut col: SparseRow = Vec::new();
            for (pos, &wj) in s.iter().enumerate() {
                let reduced: Vec<usize> = s.iter().copied().filter(|&x| x != wj).collect();
                let ti = tgt_wedge.index_of(&reduced);
                let base = ti * tgt_total;
                let negate = pos % 2 == 1;
                for (r, v) in &prod[wj][j] {
                    col.push((base + r, if negate { -v.clone() } else { v.clone() }));
                }
            }
            col.sort_by_key(|e| e.0);
            cols.push(col);
        }
    }
    let rank = crate::linalg::rank_of_rows(&cols);
    Ok(InjectivityReport {
        t,
        v_dim,
        source_dim,
        rank,
        injective: rank == source_dim,
        claimed: t >= v_dim,
    })
}
