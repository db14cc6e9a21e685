//! Line bundles on nodal curves and their exact section spaces.
//!
//! A line bundle is a per-component integer degree plus a nonzero rational
//! gluing scalar per node: a global section is a tuple of polynomials f_Z of
//! degree <= deg_Z satisfying f_a(p_a) = lambda_e * f_b(p_b) at every node e
//! (orientation a -> b fixed per node). Components of negative degree carry
//! the zero polynomial and force the partner branch value to vanish.
//!
//! The dualizing sheaf is materialized as an ordinary line bundle in the
//! trivialization  f(x) dx / prod_i (x - q_i)  over the branch points q_i of
//! each component; the residue theorem (residues at the two branches of a
//! node sum to zero) dictates its gluing scalars. After construction it flows
//! through the same machinery as any other bundle.

#![allow(clippy::needless_range_loop)]

use num_traits::{One, Zero};

use crate::curve::{ComponentSet, NodalCurve};
use crate::error::{Error, Result};
use crate::linalg::{
    self, kernel_cardinal, normalize_row, rank_of_rows, rat_to_string, QMatrix, Rat, SparseRow,
};

/// Multidegree plus one gluing scalar per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineBundle {
    pub degrees: Vec<i64>,
    pub gluings: Vec<Rat>,
}

fn rat_pow(r: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let base = if e > 0 {
        r.clone()
    } else {
        Rat::one() / r.clone()
    };
    let mut acc = Rat::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl LineBundle {
    pub fn new(curve: &NodalCurve, degrees: Vec<i64>, gluings: Vec<Rat>) -> Result<Self> {
        if degrees.len() != curve.components().len() {
            return Err(Error::Bundle(format!(
                "expected {} degrees, got {}",
                curve.components().len(),
                degrees.len()
            )));
        }
        if gluings.len() != curve.nodes().len() {
            return Err(Error::Bundle(format!(
                "expected {} gluings, got {}",
                curve.nodes().len(),
                gluings.len()
            )));
        }
        if let Some(k) = gluings.iter().position(|g| g.is_zero()) {
            return Err(Error::Bundle(format!(
                "gluing must be nonzero (node `{}`)",
                curve.nodes()[k].id
            )));
        }
        Ok(LineBundle { degrees, gluings })
    }

    pub fn structure_sheaf(curve: &NodalCurve) -> Self {
        LineBundle {
            degrees: vec![0; curve.components().len()],
            gluings: vec![Rat::one(); curve.nodes().len()],
        }
    }

    pub fn tensor(&self, other: &LineBundle) -> Result<LineBundle> {
        if self.degrees.len() != other.degrees.len() || self.gluings.len() != other.gluings.len() {
            return Err(Error::Bundle(
                "tensor of bundles on different curves".into(),
            ));
        }
        Ok(LineBundle {
            degrees: self
                .degrees
                .iter()
                .zip(&other.degrees)
                .map(|(a, b)| a + b)
                .collect(),
            gluings: self
                .gluings
                .iter()
                .zip(&other.gluings)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn inverse(&self) -> LineBundle {
        LineBundle {
            degrees: self.degrees.iter().map(|d| -d).collect(),
            gluings: self
                .gluings
                .iter()
                .map(|g| Rat::one() / g.clone())
                .collect(),
        }
    }

    pub fn power(&self, q: i64) -> LineBundle {
        LineBundle {
            degrees: self.degrees.iter().map(|d| d * q).collect(),
            gluings: self.gluings.iter().map(|g| rat_pow(g, q)).collect(),
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    pub fn degree_on(&self, z: &ComponentSet) -> i64 {
        z.iter().map(|i| self.degrees[i]).sum()
    }

    /// Restriction to the induced subcurve (per `NodalCurve::extract_subcurve`
    /// index order): degrees of member components, gluings of internal nodes.
    pub fn restrict(&self, curve: &NodalCurve, members: &[usize], z: &ComponentSet) -> LineBundle {
        let degrees = members.iter().map(|&i| self.degrees[i]).collect();
        let gluings = curve
            .nodes()
            .iter()
            .zip(&self.gluings)
            .filter(|(n, _)| z.contains(n.a.component) && z.contains(n.b.component))
            .map(|(_, g)| g.clone())
            .collect();
        LineBundle { degrees, gluings }
    }
}

/// The dualizing sheaf in the residue trivialization.
pub fn dualizing_sheaf(curve: &NodalCurve) -> LineBundle {
    let degrees: Vec<i64> = curve
        .components()
        .iter()
        .map(|c| c.branch_points.len() as i64 - 2)
        .collect();
    // rho_c(p) = prod over the other branch points q of c of (p - q)
    let rho = |comp: usize, p: &Rat| -> Rat {
        curve.components()[comp]
            .branch_points
            .iter()
            .filter(|q| *q != p)
            .fold(Rat::one(), |acc, q| acc * (p - q))
    };
    let gluings = curve
        .nodes()
        .iter()
        .map(|n| -rho(n.a.component, &n.a.point) / rho(n.b.component, &n.b.point))
        .collect();
    LineBundle { degrees, gluings }
}

/// Twists by a divisor of affine points away from the branch points:
/// degrees shift by the multiplicities, gluing scalars rescale by the
/// trivialization change s -> s / prod (x - p)^mult.
pub fn twist_by_divisor(
    curve: &NodalCurve,
    bundle: &LineBundle,
    divisor: &[(usize, Rat, i64)],
) -> Result<LineBundle> {
    let mut out = bundle.clone();
    for (comp, point, mult) in divisor {
        if *comp >= curve.components().len() {
            return Err(Error::Divisor(format!(
                "component index {comp} out of range"
            )));
        }
        if curve.components()[*comp].branch_points.contains(point) {
            return Err(Error::Divisor(format!(
                "divisor point {} on component `{}` collides with a branch point",
                rat_to_string(point),
                curve.components()[*comp].id
            )));
        }
        if *mult == 0 {
            continue;
        }
        out.degrees[*comp] += mult;
        for (k, node) in curve.nodes().iter().enumerate() {
            if node.a.component == *comp {
                out.gluings[k] *= rat_pow(&(&node.a.point - point), *mult);
            }
            if node.b.component == *comp {
                out.gluings[k] *= rat_pow(&(&node.b.point - point), -*mult);
            }
        }
    }
    Ok(out)
}

/// Coefficient layout of the ambient space  (+)_Z {polynomials of degree <=
/// deg_Z}: component Z occupies a contiguous block of deg_Z + 1 coefficient
/// slots (none when deg_Z < 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientLayout {
    pub offsets: Vec<Option<usize>>,
    pub block_len: Vec<usize>,
    pub total: usize,
    col_component: Vec<usize>,
}

impl AmbientLayout {
    pub fn new(degrees: &[i64]) -> Self {
        let mut offsets = Vec::with_capacity(degrees.len());
        let mut block_len = Vec::with_capacity(degrees.len());
        let mut col_component = Vec::new();
        let mut total = 0usize;
        for (i, d) in degrees.iter().enumerate() {
            if *d >= 0 {
                offsets.push(Some(total));
                let len = (*d + 1) as usize;
                block_len.push(len);
                col_component.extend(std::iter::repeat_n(i, len));
                total += len;
            } else {
                offsets.push(None);
                block_len.push(0);
            }
        }
        AmbientLayout {
            offsets,
            block_len,
            total,
            col_component,
        }
    }

    pub fn component_of(&self, col: usize) -> usize {
        self.col_component[col]
    }

    /// Row evaluating the k-th derivative of the block of `comp` at `point`.
    pub fn derivative_row(&self, comp: usize, point: &Rat, order: usize) -> SparseRow {
        let Some(off) = self.offsets[comp] else {
            return Vec::new();
        };
        let len = self.block_len[comp];
        let mut row = Vec::new();
        let mut falling = vec![Rat::zero(); len];
        for j in order..len {
            // j! / (j-order)! * point^(j-order)
            let mut coef = Rat::one();
            for t in 0..order {
                coef *= linalg::rat((j - t) as i64);
            }
            falling[j] = coef;
        }
        let mut pw = Rat::one();
        for j in order..len {
            let v = &falling[j] * &pw;
            if !v.is_zero() {
                row.push((off + j, v));
            }
            pw *= point;
        }
        row
    }

    pub fn evaluation_row(&self, comp: usize, point: &Rat) -> SparseRow {
        self.derivative_row(comp, point, 0)
    }

    /// Extracts the polynomial block of one component from an ambient vector
    /// as a dense coefficient list (empty when the block is absent).
    pub fn block_of(&self, v: &SparseRow, comp: usize) -> Vec<Rat> {
        let Some(off) = self.offsets[comp] else {
            return Vec::new();
        };
        let len = self.block_len[comp];
        let mut out = vec![Rat::zero(); len];
        for (c, val) in v {
            if *c >= off && *c < off + len {
                out[*c - off] = val.clone();
            }
        }
        out
    }
}

/// Exact basis of the global sections of a line bundle, stored as sparse
/// coefficient vectors in the ambient layout. The basis is in cardinal form:
/// each basis vector equals 1 at "its" free column and 0 at the other free
/// columns, so coordinates in the basis are read off directly.
#[derive(Debug, Clone)]
pub struct SectionSpace {
    pub bundle: LineBundle,
    pub layout: AmbientLayout,
    basis: Vec<SparseRow>,
    free_cols: Vec<usize>,
}

impl SectionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseRow] {
        &self.basis
    }

    pub fn basis_row(&self, i: usize) -> &SparseRow {
        &self.basis[i]
    }

    /// Coordinates of an ambient vector in the basis; errors if the vector
    /// is not an exact member of the space (every call verifies membership).
    pub fn coords_of(&self, v: &SparseRow) -> Result<SparseRow> {
        let mut coords: SparseRow = Vec::new();
        for (k, &f) in self.free_cols.iter().enumerate() {
            if let Ok(pos) = v.binary_search_by_key(&f, |e| e.0) {
                coords.push((k, v[pos].1.clone()));
            }
        }
        // verify: sum of coord * basis == v
        let mut rebuilt: SparseRow = Vec::new();
        for (k, c) in &coords {
            rebuilt = linalg::row_axpy(&rebuilt, c, &self.basis[*k]);
        }
        if rebuilt != *v {
            return Err(Error::Dimension(
                "vector does not satisfy the node conditions of the target space".into(),
            ));
        }
        Ok(coords)
    }
}

/// Node-condition constraint rows for a bundle, in ambient coordinates.
fn constraint_rows(
    curve: &NodalCurve,
    bundle: &LineBundle,
    layout: &AmbientLayout,
) -> Vec<SparseRow> {
    curve
        .nodes()
        .iter()
        .zip(&bundle.gluings)
        .map(|(n, lam)| {
            let mut row = layout.evaluation_row(n.a.component, &n.a.point);
            let other = layout.evaluation_row(n.b.component, &n.b.point);
            let neg = -lam.clone();
            for (c, v) in other {
                row.push((c, &neg * &v));
            }
            normalize_row(row)
        })
        .collect()
}

/// Computes the exact global section space of a line bundle.
pub fn global_sections(curve: &NodalCurve, bundle: &LineBundle) -> Result<SectionSpace> {
    if bundle.degrees.len() != curve.components().len()
        || bundle.gluings.len() != curve.nodes().len()
    {
        return Err(Error::Bundle("bundle does not match curve".into()));
    }
    if let Some(k) = bundle.gluings.iter().position(|g| g.is_zero()) {
        return Err(Error::Bundle(format!(
            "gluing must be nonzero (node `{}`)",
            curve.nodes()[k].id
        )));
    }
    let layout = AmbientLayout::new(&bundle.degrees);
    let rows = constraint_rows(curve, bundle, &layout);
    let (basis, free_cols) = kernel_cardinal(&rows, layout.total);
    Ok(SectionSpace {
        bundle: bundle.clone(),
        layout,
        basis,
        free_cols,
    })
}

pub fn h0(curve: &NodalCurve, bundle: &LineBundle) -> Result<usize> {
    Ok(global_sections(curve, bundle)?.dim())
}

/// h^1 through the dualizing sheaf: h^0(omega (x) L^{-1}). For connected
/// curves this matches the Riemann-Roch defect exactly.
pub fn h1(curve: &NodalCurve, bundle: &LineBundle) -> Result<usize> {
    let omega = dualizing_sheaf(curve);
    let dual = omega.tensor(&bundle.inverse())?;
    let n = h0(curve, &dual)?;
    #[cfg(debug_assertions)]
    if curve.is_connected() {
        let g = curve.arithmetic_genus().unwrap();
        let lhs = h0(curve, bundle)? as i64 - n as i64;
        debug_assert_eq!(lhs, bundle.total_degree() - g + 1, "Riemann-Roch violated");
    }
    Ok(n)
}

/// A subspace W of a section space, with a materialized row basis in ambient
/// coordinates.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub space: SectionSpace,
    rows: Vec<SparseRow>,
}

impl LinearSystem {
    /// W = the full section space.
    pub fn full(space: SectionSpace) -> Self {
        let rows = space.basis.clone();
        LinearSystem { space, rows }
    }

    /// W spanned by the given coefficient vectors (coordinates in the basis
    /// of `space`). The vectors must be independent.
    pub fn from_coefficients(space: SectionSpace, coeffs: &[Vec<Rat>]) -> Result<Self> {
        let mut rows = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.len() != space.dim() {
                return Err(Error::Dimension(format!(
                    "subspace coefficient vector has length {}, expected {}",
                    c.len(),
                    space.dim()
                )));
            }
            let mut row: SparseRow = Vec::new();
            for (k, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    row = linalg::row_axpy(&row, v, &space.basis[k]);
                }
            }
            rows.push(row);
        }
        if rank_of_rows(&rows) != rows.len() {
            return Err(Error::Dimension(
                "subspace basis vectors are linearly dependent".into(),
            ));
        }
        Ok(LinearSystem { space, rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }
}

/// Rank of the restriction map of a family of sections (rows in the layout
/// of `layout`) to the components of Z: forget all blocks outside Z.
pub fn restriction_rank_rows(
    layout: &AmbientLayout,
    rows: &[SparseRow],
    z: &ComponentSet,
) -> usize {
    let filtered: Vec<SparseRow> = rows
        .iter()
        .map(|r| {
            r.iter()
                .filter(|(c, _)| z.contains(layout.component_of(*c)))
                .cloned()
                .collect()
        })
        .collect();
    rank_of_rows(&filtered)
}

/// m_Z for a linear system.
pub fn restriction_rank(system: &LinearSystem, z: &ComponentSet) -> usize {
    restriction_rank_rows(&system.space.layout, system.rows(), z)
}

/// The induced linear system W_Z on the subcurve of Z: restricted rows
/// expressed in the ambient layout of the subcurve, reduced to a basis.
pub fn induced_system(
    curve: &NodalCurve,
    system: &LinearSystem,
    z: &ComponentSet,
) -> Result<(NodalCurve, LineBundle, QMatrix)> {
    let (sub, members) = curve.extract_subcurve(z)?;
    let restricted = system.space.bundle.restrict(curve, &members, z);
    let sub_layout = AmbientLayout::new(&restricted.degrees);
    let mut rows: Vec<SparseRow> = Vec::new();
    for r in system.rows() {
        let mut out: SparseRow = Vec::new();
        for (new_idx, &old_idx) in members.iter().enumerate() {
            if let (Some(new_off), Some(old_off)) = (
                sub_layout.offsets[new_idx],
                system.space.layout.offsets[old_idx],
            ) {
                let len = sub_layout.block_len[new_idx];
                for (c, v) in r {
                    if *c >= old_off && *c < old_off + len {
                        out.push((new_off + (*c - old_off), v.clone()));
                    }
                }
            }
        }
        rows.push(normalize_row(out));
    }
    let (rref_rows, _) = linalg::rref(&rows, sub_layout.total);
    Ok((
        sub,
        restricted,
        QMatrix::from_sparse_rows(rref_rows, sub_layout.total),
    ))
}

/// Componentwise polynomial product of a section of A and a section of B,
/// landing in the ambient layout of A (x) B. The result satisfies the node
/// conditions of the tensor bundle exactly.
pub fn multiply_sections(
    a_layout: &AmbientLayout,
    b_layout: &AmbientLayout,
    t_layout: &AmbientLayout,
    va: &SparseRow,
    vb: &SparseRow,
) -> SparseRow {
    let mut out: SparseRow = Vec::new();
    // group entries of va and vb per component, then convolve
    for comp in 0..a_layout.offsets.len() {
        let (Some(ao), Some(bo), Some(to)) = (
            a_layout.offsets[comp],
            b_layout.offsets[comp],
            t_layout.offsets[comp],
        ) else {
            continue;
        };
        let alen = a_layout.block_len[comp];
        let blen = b_layout.block_len[comp];
        for (ca, xa) in va.iter().filter(|(c, _)| *c >= ao && *c < ao + alen) {
            for (cb, xb) in vb.iter().filter(|(c, _)| *c >= bo && *c < bo + blen) {
                out.push((to + (ca - ao) + (cb - bo), xa * xb));
            }
        }
    }
    normalize_row(out)
}

/// Matrix of the multiplication map SA (x) SB -> H^0(A (x) B): column (i, j)
/// (ordered i-major) holds the coordinates of the product of the i-th basis
/// section of SA with the j-th of SB in the target basis.
pub fn multiplication_map(
    curve: &NodalCurve,
    sa: &SectionSpace,
    sb: &SectionSpace,
) -> Result<QMatrix> {
    let tensor = sa.bundle.tensor(&sb.bundle)?;
    let target = global_sections(curve, &tensor)?;
    let mut cols: Vec<SparseRow> = Vec::new();
    for i in 0..sa.dim() {
        for j in 0..sb.dim() {
            let prod = multiply_sections(
                &sa.layout,
                &sb.layout,
                &target.layout,
                sa.basis_row(i),
                sb.basis_row(j),
            );
            cols.push(target.coords_of(&prod)?);
        }
    }
    Ok(QMatrix::from_sparse_rows(cols, target.dim()).transpose())
}

/// Direct sum of line bundles, the coefficient-bundle model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientBundle {
    pub summands: Vec<LineBundle>,
}

impl CoefficientBundle {
    pub fn line(bundle: LineBundle) -> Self {
        CoefficientBundle {
            summands: vec![bundle],
        }
    }

    pub fn section_spaces(&self, curve: &NodalCurve) -> Result<Vec<SectionSpace>> {
        self.summands
            .iter()
            .map(|b| global_sections(curve, b))
            .collect()
    }

    pub fn h0(&self, curve: &NodalCurve) -> Result<usize> {
        Ok(self.section_spaces(curve)?.iter().map(|s| s.dim()).sum())
    }

    /// e_Z: rank of H^0(E) -> H^0(E_Z). The restriction map is block
    /// diagonal across summands, so the rank is the sum of summand ranks.
    pub fn restriction_rank(&self, curve: &NodalCurve, z: &ComponentSet) -> Result<usize> {
        let mut total = 0;
        for b in &self.summands {
            let s = global_sections(curve, b)?;
            total += restriction_rank_rows(&s.layout, s.basis(), z);
        }
        Ok(total)
    }

    pub fn tensor_line(&self, l: &LineBundle) -> Result<CoefficientBundle> {
        Ok(CoefficientBundle {
            summands: self
                .summands
                .iter()
                .map(|b| b.tensor(l))
                .collect::<Result<_>>()?,
        })
    }
}

/// Dimension of H^0(I L) for an ideal assembled from vanishing orders at
/// smooth affine points and node types (x^a, y^b).
#[derive(Debug, Clone, Default)]
pub struct IdealSpec {
    /// (component, affine point, multiplicity >= 1), point not a branch point
    pub smooth: Vec<(usize, Rat, u32)>,
    /// (node index, a >= 1, b >= 1): vanishing order a along branch a of the
    /// node and b along branch b; colength a + b - 1
    pub nodes: Vec<(usize, u32, u32)>,
}

impl IdealSpec {
    pub fn trivial() -> Self {
        IdealSpec::default()
    }

    /// Total colength after merging repeated supports.
    pub fn colength(&self, curve: &NodalCurve) -> Result<i64> {
        let merged = self.merged(curve)?;
        let smooth: i64 = merged.smooth.iter().map(|(_, _, m)| *m as i64).sum();
        let nodes: i64 = merged
            .nodes
            .iter()
            .map(|(_, a, b)| *a as i64 + *b as i64 - 1)
            .sum();
        Ok(smooth + nodes)
    }

    fn merged(&self, curve: &NodalCurve) -> Result<IdealSpec> {
        let mut smooth: Vec<(usize, Rat, u32)> = Vec::new();
        for (comp, pt, mult) in &self.smooth {
            if *comp >= curve.components().len() {
                return Err(Error::Ideal(format!("component index {comp} out of range")));
            }
            if *mult == 0 {
                return Err(Error::Ideal(
                    "smooth point multiplicity must be >= 1".into(),
                ));
            }
            if curve.components()[*comp].branch_points.contains(pt) {
                return Err(Error::Ideal(format!(
                    "point {} on component `{}` is a branch point, not a smooth point",
                    rat_to_string(pt),
                    curve.components()[*comp].id
                )));
            }
            match smooth.iter_mut().find(|(c, p, _)| c == comp && p == pt) {
                Some(entry) => entry.2 += mult,
                None => smooth.push((*comp, pt.clone(), *mult)),
            }
        }
        let mut nodes: Vec<(usize, u32, u32)> = Vec::new();
        for (node, a, b) in &self.nodes {
            if *node >= curve.nodes().len() {
                return Err(Error::Ideal(format!("node index {node} out of range")));
            }
            if *a == 0 || *b == 0 {
                return Err(Error::Ideal(
                    "node ideal type requires orders a, b >= 1".into(),
                ));
            }
            match nodes.iter_mut().find(|(n, _, _)| n == node) {
                Some(entry) => {
                    entry.1 += a;
                    entry.2 += b;
                }
                None => nodes.push((*node, *a, *b)),
            }
        }
        Ok(IdealSpec { smooth, nodes })
    }
}

/// h^0(I L): the dimension of the subspace of H^0(L) cut out by the
/// vanishing conditions of the ideal.
pub fn ideal_twisted_sections(
    curve: &NodalCurve,
    space: &SectionSpace,
    ideal: &IdealSpec,
) -> Result<usize> {
    let merged = ideal.merged(curve)?;
    let mut functionals: Vec<SparseRow> = Vec::new();
    for (comp, pt, mult) in &merged.smooth {
        for k in 0..*mult {
            functionals.push(space.layout.derivative_row(*comp, pt, k as usize));
        }
    }
    for (node, a, b) in &merged.nodes {
        let n = &curve.nodes()[*node];
        for k in 0..*a {
            functionals.push(
                space
                    .layout
                    .derivative_row(n.a.component, &n.a.point, k as usize),
            );
        }
        for k in 0..*b {
            functionals.push(
                space
                    .layout
                    .derivative_row(n.b.component, &n.b.point, k as usize),
            );
        }
    }
    // condition matrix on the coordinates of the section space
    let conditions: Vec<SparseRow> = functionals
        .iter()
        .map(|f| {
            let mut row: SparseRow = Vec::new();
            for (j, basis) in space.basis().iter().enumerate() {
                let v = linalg::dot(f, basis);
                if !v.is_zero() {
                    row.push((j, v));
                }
            }
            row
        })
        .collect();
    Ok(space.dim() - rank_of_rows(&conditions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_frac};

    fn single() -> NodalCurve {
        NodalCurve::new(vec!["Z1".into()], vec![]).unwrap()
    }

    fn chain2() -> NodalCurve {
        NodalCurve::new(
            vec!["Z1".into(), "Z2".into()],
            vec![("e1".into(), ("Z1".into(), rat(0)), ("Z2".into(), rat(0)))],
        )
        .unwrap()
    }

    fn cycle2() -> NodalCurve {
        NodalCurve::new(
            vec!["Z1".into(), "Z2".into()],
            vec![
                ("e1".into(), ("Z1".into(), rat(0)), ("Z2".into(), rat(0))),
                ("e2".into(), ("Z1".into(), rat(1)), ("Z2".into(), rat(1))),
            ],
        )
        .unwrap()
    }

    fn bundle(curve: &NodalCurve, degrees: &[i64], gluings: &[i64]) -> LineBundle {
        LineBundle::new(
            curve,
            degrees.to_vec(),
            gluings.iter().map(|&g| rat(g)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn tensor_inverse_power() {
        let x = cycle2();
        let l = bundle(&x, &[1, 1], &[1, 2]);
        let t = l.tensor(&l.inverse()).unwrap();
        assert!(t.degrees.iter().all(|d| *d == 0));
        assert!(t.gluings.iter().all(|g| g.is_one()));
        assert_eq!(l.power(0), LineBundle::structure_sheaf(&x));
        let sq = l.power(2);
        assert_eq!(sq.degrees, vec![2, 2]);
        assert_eq!(sq.gluings, vec![rat(1), rat(4)]);
    }

    #[test]
    fn dualizing_examples() {
        let s = single();
        let w = dualizing_sheaf(&s);
        assert_eq!(w.degrees, vec![-2]);
        assert_eq!(h0(&s, &w).unwrap(), 0);

        let x = cycle2();
        let w = dualizing_sheaf(&x);
        assert_eq!(w.degrees, vec![0, 0]);
        assert_eq!(h0(&x, &w).unwrap(), 1);

        let c = chain2();
        let w = dualizing_sheaf(&c);
        assert_eq!(w.degrees, vec![-1, -1]);
        assert_eq!(h0(&c, &w).unwrap(), 0);
    }

    #[test]
    fn global_sections_examples() {
        let s = single();
        assert_eq!(h0(&s, &bundle(&s, &[3], &[])).unwrap(), 4);

        let c = chain2();
        assert_eq!(h0(&c, &bundle(&c, &[1, 1], &[1])).unwrap(), 3);

        let x = cycle2();
        assert_eq!(h0(&x, &bundle(&x, &[1, 1], &[1, 1])).unwrap(), 2);
        assert_eq!(h0(&x, &bundle(&x, &[0, 0], &[1, 2])).unwrap(), 0);
    }

    #[test]
    fn h1_examples() {
        let x = cycle2();
        assert_eq!(h1(&x, &LineBundle::structure_sheaf(&x)).unwrap(), 1);
        assert_eq!(h1(&x, &bundle(&x, &[1, 1], &[1, 1])).unwrap(), 0);
        let s = single();
        assert_eq!(h1(&s, &bundle(&s, &[3], &[])).unwrap(), 0);
    }

    #[test]
    fn twist_examples() {
        let c = chain2();
        let l = bundle(&c, &[1, 1], &[1]);
        // zero multiplicity is the identity
        let t = twist_by_divisor(&c, &l, &[(0, rat(5), 0)]).unwrap();
        assert_eq!(t, l);
        // round trip
        let up = twist_by_divisor(&c, &l, &[(0, rat(2), 3)]).unwrap();
        let back = twist_by_divisor(&c, &up, &[(0, rat(2), -3)]).unwrap();
        assert_eq!(back, l);
        // node branch at x=0 on Z1; twist by (Z1, 1, -1) multiplies the
        // gluing by (0 - 1)^{-1} = -1 and drops the degree by 1
        let d = twist_by_divisor(&c, &l, &[(0, rat(1), -1)]).unwrap();
        assert_eq!(d.degrees, vec![0, 1]);
        assert_eq!(d.gluings, vec![rat(-1)]);
        assert_eq!(h0(&c, &d).unwrap(), 2);
        // collision with a branch point is rejected
        assert!(twist_by_divisor(&c, &l, &[(0, rat(0), 1)]).is_err());
    }

    #[test]
    fn restriction_examples() {
        let c = chain2();
        let w = dualizing_sheaf(&c);
        let s = global_sections(&c, &w).unwrap();
        let z = ComponentSet::singleton(0);
        assert_eq!(restriction_rank_rows(&s.layout, s.basis(), &z), 0);

        let x = cycle2();
        let w = dualizing_sheaf(&x);
        let s = global_sections(&x, &w).unwrap();
        assert_eq!(restriction_rank_rows(&s.layout, s.basis(), &z), 1);

        let l = bundle(&x, &[5, 5], &[1, 1]);
        let s = global_sections(&x, &l).unwrap();
        assert_eq!(s.dim(), 10);
        let sys = LinearSystem::full(s);
        assert_eq!(restriction_rank(&sys, &z), 6);
    }

    #[test]
    fn induced_system_dims() {
        let x = cycle2();
        let l = bundle(&x, &[5, 5], &[1, 1]);
        let sys = LinearSystem::full(global_sections(&x, &l).unwrap());
        let z = ComponentSet::singleton(0);
        let (sub, lz, wz) = induced_system(&x, &sys, &z).unwrap();
        assert_eq!(sub.components().len(), 1);
        assert_eq!(lz.degrees, vec![5]);
        assert_eq!(wz.nrows(), 6);
    }

    #[test]
    fn induced_system_lands_in_subcurve_sections() {
        // take a three-component curve and restrict to a subcurve that is
        // itself a cycle: the induced rows must satisfy the inner node
        // conditions, i.e. lie in the subcurve's own section space
        let theta = NodalCurve::new(
            vec!["Z1".into(), "Z2".into(), "Z3".into()],
            vec![
                ("e1".into(), ("Z1".into(), rat(0)), ("Z2".into(), rat(0))),
                ("e2".into(), ("Z1".into(), rat(1)), ("Z2".into(), rat(1))),
                ("e3".into(), ("Z1".into(), rat(2)), ("Z3".into(), rat(0))),
                ("e4".into(), ("Z3".into(), rat(1)), ("Z2".into(), rat(2))),
            ],
        )
        .unwrap();
        let l = LineBundle::new(
            &theta,
            vec![3, 3, 2],
            vec![rat(1), rat(2), rat(-1), rat_frac(1, 3)],
        )
        .unwrap();
        let sys = LinearSystem::full(global_sections(&theta, &l).unwrap());
        let z = ComponentSet::new([0, 1]); // keeps nodes e1, e2: a cycle
        let (sub, lz, wz) = induced_system(&theta, &sys, &z).unwrap();
        assert_eq!(sub.nodes().len(), 2);
        let sub_space = global_sections(&sub, &lz).unwrap();
        for i in 0..wz.nrows() {
            assert!(sub_space.coords_of(wz.row(i)).is_ok());
        }
        assert_eq!(wz.nrows(), restriction_rank(&sys, &z));
    }

    #[test]
    fn multiplication_examples() {
        // unit section of O_X acts as the identity
        let x = cycle2();
        let o = LineBundle::structure_sheaf(&x);
        let so = global_sections(&x, &o).unwrap();
        assert_eq!(so.dim(), 1);
        let l = bundle(&x, &[1, 1], &[1, 1]);
        let sl = global_sections(&x, &l).unwrap();
        let unit = so.basis_row(0);
        for i in 0..sl.dim() {
            let prod = multiply_sections(&so.layout, &sl.layout, &sl.layout, unit, sl.basis_row(i));
            // the unit section is the constant 1 on both components
            assert_eq!(&prod, sl.basis_row(i));
        }

        // single component: x * (x+1) = x^2 + x
        let s = single();
        let l1 = bundle(&s, &[1], &[]);
        let lay1 = AmbientLayout::new(&l1.degrees);
        let lay2 = AmbientLayout::new(&[2]);
        let xv: SparseRow = vec![(1, rat(1))];
        let x1: SparseRow = vec![(0, rat(1)), (1, rat(1))];
        let prod = multiply_sections(&lay1, &lay1, &lay2, &xv, &x1);
        assert_eq!(prod, vec![(1, rat(1)), (2, rat(1))]);

        // products of sections satisfy the squared-gluing node conditions
        let l = bundle(&x, &[1, 1], &[1, 3]);
        let sl = global_sections(&x, &l).unwrap();
        let sq = l.power(2);
        let ssq = global_sections(&x, &sq).unwrap();
        for i in 0..sl.dim() {
            for j in 0..sl.dim() {
                let prod = multiply_sections(
                    &sl.layout,
                    &sl.layout,
                    &ssq.layout,
                    sl.basis_row(i),
                    sl.basis_row(j),
                );
                assert!(ssq.coords_of(&prod).is_ok());
            }
        }
    }

    #[test]
    fn multiplication_map_shape() {
        let s = single();
        let l = bundle(&s, &[2], &[]);
        let sl = global_sections(&s, &l).unwrap();
        let m = multiplication_map(&s, &sl, &sl).unwrap();
        assert_eq!(m.ncols(), 9);
        assert_eq!(m.nrows(), 5);
        assert_eq!(m.rank(), 5); // surjective onto H^0(O(4))

        // on the cycle with degrees (3,3): surjective onto H^0(L^2)
        let x = cycle2();
        let l = bundle(&x, &[3, 3], &[1, 1]);
        let sl = global_sections(&x, &l).unwrap();
        let m = multiplication_map(&x, &sl, &sl).unwrap();
        assert_eq!(m.nrows(), 12); // h^0(L^2) = 12 - 1 + 1
        assert_eq!(m.rank(), 12);
    }

    #[test]
    fn twist_at_rational_points() {
        let x = cycle2();
        let l = bundle(&x, &[2, 2], &[1, 2]);
        let up = twist_by_divisor(&x, &l, &[(1, rat_frac(5, 2), 2)]).unwrap();
        assert_eq!(up.degrees, vec![2, 4]);
        let back = twist_by_divisor(&x, &up, &[(1, rat_frac(5, 2), -2)]).unwrap();
        assert_eq!(back, l);
        // section count of the twist matches its degree data exactly
        let g = x.arithmetic_genus().unwrap();
        assert_eq!(
            h0(&x, &up).unwrap() as i64 - h1(&x, &up).unwrap() as i64,
            up.total_degree() - g + 1
        );
        assert_eq!(h0(&x, &up).unwrap(), 6);
    }

    #[test]
    fn negative_powers() {
        let x = cycle2();
        let l = bundle(&x, &[1, 2], &[2, 3]);
        assert_eq!(l.power(-2), l.inverse().power(2));
        assert_eq!(l.power(-1), l.inverse());
        let t = l.power(3).tensor(&l.power(-3)).unwrap();
        assert_eq!(t, LineBundle::structure_sheaf(&x));
    }

    #[test]
    fn ideal_examples() {
        let s = single();
        let l = bundle(&s, &[3], &[]);
        let sp = global_sections(&s, &l).unwrap();
        assert_eq!(
            ideal_twisted_sections(&s, &sp, &IdealSpec::trivial()).unwrap(),
            4
        );
        let i2 = IdealSpec {
            smooth: vec![(0, rat(1), 2)],
            nodes: vec![],
        };
        assert_eq!(i2.colength(&s).unwrap(), 2);
        assert_eq!(ideal_twisted_sections(&s, &sp, &i2).unwrap(), 2);

        let x = cycle2();
        let l = bundle(&x, &[3, 3], &[1, 1]);
        let sp = global_sections(&x, &l).unwrap();
        assert_eq!(sp.dim(), 6);
        let j11 = IdealSpec {
            smooth: vec![],
            nodes: vec![(0, 1, 1)],
        };
        assert_eq!(j11.colength(&x).unwrap(), 1);
        assert_eq!(ideal_twisted_sections(&x, &sp, &j11).unwrap(), 5);

        // malformed ideals rejected
        let bad = IdealSpec {
            smooth: vec![(0, rat(0), 1)], // branch point
            nodes: vec![],
        };
        assert!(ideal_twisted_sections(&x, &sp, &bad).is_err());
        let bad = IdealSpec {
            smooth: vec![],
            nodes: vec![(0, 0, 1)],
        };
        assert!(ideal_twisted_sections(&x, &sp, &bad).is_err());

        // repeated supports merge: two (1,1) types at one node equal (2,2)
        let twice = IdealSpec {
            smooth: vec![],
            nodes: vec![(0, 1, 1), (0, 1, 1)],
        };
        let direct = IdealSpec {
            smooth: vec![],
            nodes: vec![(0, 2, 2)],
        };
        assert_eq!(twice.colength(&x).unwrap(), 3);
        assert_eq!(
            ideal_twisted_sections(&x, &sp, &twice).unwrap(),
            ideal_twisted_sections(&x, &sp, &direct).unwrap()
        );
        // same for repeated smooth points
        let twice = IdealSpec {
            smooth: vec![(0, rat(5), 1), (0, rat(5), 1)],
            nodes: vec![],
        };
        let direct = IdealSpec {
            smooth: vec![(0, rat(5), 2)],
            nodes: vec![],
        };
        assert_eq!(
            ideal_twisted_sections(&x, &sp, &twice).unwrap(),
            ideal_twisted_sections(&x, &sp, &direct).unwrap()
        );
    }

    #[test]
    fn nontrivial_gluing_sections() {
        // generic degree-0 bundle on a cycle has no sections, the trivial
        // one has exactly the constants
        let x = cycle2();
        assert_eq!(h0(&x, &LineBundle::structure_sheaf(&x)).unwrap(), 1);
        let nt = LineBundle::new(&x, vec![0, 0], vec![rat_frac(2, 3), rat(1)]).unwrap();
        assert_eq!(h0(&x, &nt).unwrap(), 0);
    }

    #[test]
    fn basis_sections_satisfy_node_conditions() {
        // every basis vector evaluates to f_a(p) = lambda f_b(q) at every
        // node, checked against the raw evaluation rows
        let x = cycle2();
        for (degrees, gluings) in [
            (vec![3, 3], vec![rat(1), rat(1)]),
            (vec![5, 2], vec![rat_frac(2, 5), rat(-3)]),
            (vec![0, 4], vec![rat(7), rat_frac(-1, 2)]),
        ] {
            let l = LineBundle::new(&x, degrees, gluings).unwrap();
            let s = global_sections(&x, &l).unwrap();
            for row in s.basis() {
                for (n, lam) in x.nodes().iter().zip(&l.gluings) {
                    let va = crate::linalg::dot(
                        &s.layout.evaluation_row(n.a.component, &n.a.point),
                        row,
                    );
                    let vb = crate::linalg::dot(
                        &s.layout.evaluation_row(n.b.component, &n.b.point),
                        row,
                    );
                    assert_eq!(va, lam * vb);
                }
            }
        }
    }
}
