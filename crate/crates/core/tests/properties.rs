//! Property tests: linear-algebra invariants on random matrices and the
//! global sheaf invariants (Riemann-Roch, dualizing-sheaf degree and
//! section count, restriction-rank formula, adjunction) on randomly
//! generated nodal curves.

use proptest::prelude::*;

use curve_koszul::curve::{all_component_sums, ComponentSet, NodalCurve};
use curve_koszul::linalg::{
    kernel_cardinal, middle_homology_dim, rank_of_rows, rat, QMatrix, Rat, SparseRow,
};
use curve_koszul::sheaf::{
    dualizing_sheaf, global_sections, h0, h1, restriction_rank_rows, LineBundle,
};
use curve_koszul::theorems::gzx_formula;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-4i64..=4, c), r)
    })
}

fn shear() -> impl Strategy<Value = i64> {
    -3i64..=3
}

/// I + s * E_{0,last}: unipotent, with exact inverse I - s * E_{0,last}.
fn unipotent(n: usize, s: i64) -> QMatrix {
    unipotent_with(n, s)
}

fn unipotent_inverse(n: usize, s: i64) -> QMatrix {
    unipotent_with(n, -s)
}

fn unipotent_with(n: usize, s: i64) -> QMatrix {
    let mut rows: Vec<SparseRow> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row: SparseRow = vec![(i, rat(1))];
        if i == 0 && n > 1 && s != 0 {
            row.push((n - 1, rat(s)));
        }
        rows.push(row);
    }
    QMatrix::from_sparse_rows(rows, n)
}

fn to_qmatrix(m: &[Vec<i64>]) -> QMatrix {
    QMatrix::from_dense(
        m.iter()
            .map(|row| row.iter().map(|&x| rat(x)).collect())
            .collect(),
    )
}

proptest! {
    #[test]
    fn rank_equals_transpose_rank(m in small_matrix()) {
        let q = to_qmatrix(&m);
        prop_assert_eq!(q.rank(), q.transpose().rank());
    }

    #[test]
    fn rank_nullity(m in small_matrix()) {
        let q = to_qmatrix(&m);
        let k = q.kernel_basis();
        prop_assert_eq!(q.ncols(), q.rank() + k.ncols());
        prop_assert!(q.mul(&k).is_zero());
    }

    #[test]
    fn homology_invariant_under_basis_change(
        m in small_matrix(),
        su in shear(),
        sv in shear(),
        sw in shear(),
    ) {
        // build a genuine complex U -> V -> W: A is the given matrix, B is
        // spanned by the left kernel of A, so B * A = 0 by construction
        let a = to_qmatrix(&m);
        let dim_v = a.nrows();
        let left_kernel = a.transpose().kernel_basis().transpose(); // rows y with yA = 0
        let b = left_kernel;
        prop_assume!(b.nrows() > 0 && dim_v >= 2 && a.ncols() >= 2);
        let before = middle_homology_dim(&a, &b).unwrap();
        // conjugate by unipotent changes of basis on U, V, W independently:
        // A' = P_V A P_U^{-1},  B' = P_W B P_V^{-1}
        let pu = unipotent(a.ncols(), su);
        let pu_inv = unipotent_inverse(a.ncols(), su);
        let pv = unipotent(dim_v, sv);
        let pv_inv = unipotent_inverse(dim_v, sv);
        let pw = unipotent(b.nrows(), sw);
        let a2 = pv.mul(&a).mul(&pu_inv);
        let b2 = pw.mul(&b).mul(&pv_inv);
        prop_assert!(b2.mul(&a2).is_zero());
        let after = middle_homology_dim(&a2, &b2).unwrap();
        prop_assert_eq!(before, after);
        let _ = pu; // P_U itself is only needed to state the conjugation
    }

    #[test]
    fn kernel_vectors_annihilate(rows in small_matrix()) {
        let cols = rows[0].len();
        let sparse: Vec<SparseRow> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(i, v)| (i, rat(*v)))
                    .collect()
            })
            .collect();
        let (kernel, _) = kernel_cardinal(&sparse, cols);
        prop_assert_eq!(kernel.len(), cols - rank_of_rows(&sparse));
        let m = QMatrix::from_sparse_rows(sparse, cols);
        for v in &kernel {
            prop_assert!(m.apply(v).is_empty());
        }
    }
}

// ---------------------------------------------------------------------------
// random nodal curves
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct RandomCurveSpec {
    n_components: usize,
    /// endpoints of each node as component indices (i <= j allowed: self-node)
    edges: Vec<(usize, usize)>,
    degrees: Vec<i64>,
    gluing_picks: Vec<u8>,
}

fn curve_spec() -> impl Strategy<Value = RandomCurveSpec> {
    (1usize..=3)
        .prop_flat_map(|n| {
            let edges = proptest::collection::vec((0..n, 0..n), 0..=4);
            let degrees = proptest::collection::vec(-2i64..=5, n);
            (
                Just(n),
                edges,
                proptest::collection::vec(0u8..6, 4),
                degrees,
            )
        })
        .prop_map(
            |(n_components, edges, gluing_picks, degrees)| RandomCurveSpec {
                n_components,
                edges,
                degrees,
                gluing_picks,
            },
        )
}

fn build_curve(spec: &RandomCurveSpec) -> Option<(NodalCurve, Vec<Rat>)> {
    let ids: Vec<String> = (0..spec.n_components).map(|i| format!("C{i}")).collect();
    // hand out branch points 0, 1, 2, ... per component
    let mut next_point = vec![0i64; spec.n_components];
    let mut nodes = Vec::new();
    for (k, (i, j)) in spec.edges.iter().enumerate() {
        let (a, b) = (*i.min(j), *i.max(j));
        let pa = next_point[a];
        next_point[a] += 1;
        let pb = next_point[b];
        next_point[b] += 1;
        nodes.push((
            format!("n{k}"),
            (ids[a].clone(), rat(pa)),
            (ids[b].clone(), rat(pb)),
        ));
    }
    let curve = NodalCurve::new(ids, nodes).ok()?;
    if !curve.is_connected() {
        return None;
    }
    let gluing_table = [
        rat(1),
        rat(2),
        rat(-1),
        Rat::new(1.into(), 2.into()),
        rat(3),
        rat(-2),
    ];
    let gluings: Vec<Rat> = (0..curve.nodes().len())
        .map(|k| gluing_table[spec.gluing_picks[k % spec.gluing_picks.len()] as usize % 6].clone())
        .collect();
    Some((curve, gluings))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn riemann_roch_on_random_curves(spec in curve_spec()) {
        let Some((curve, gluings)) = build_curve(&spec) else {
            return Ok(());
        };
        let g = curve.arithmetic_genus().unwrap();
        let l = LineBundle::new(&curve, spec.degrees.clone(), gluings).unwrap();
        let h0l = h0(&curve, &l).unwrap() as i64;
        let h1l = h1(&curve, &l).unwrap() as i64;
        prop_assert_eq!(h0l - h1l, l.total_degree() - g + 1);
    }

    #[test]
    fn dualizing_sheaf_on_random_curves(spec in curve_spec()) {
        let Some((curve, _)) = build_curve(&spec) else {
            return Ok(());
        };
        let g = curve.arithmetic_genus().unwrap();
        let omega = dualizing_sheaf(&curve);
        prop_assert_eq!(omega.total_degree(), 2 * g - 2);
        prop_assert_eq!(h0(&curve, &omega).unwrap() as i64, g);
        // restriction-rank closed form on every component
        let space = global_sections(&curve, &omega).unwrap();
        for i in 0..curve.components().len() {
            let z = ComponentSet::singleton(i);
            let oracle = restriction_rank_rows(&space.layout, space.basis(), &z) as i64;
            prop_assert_eq!(oracle, gzx_formula(&curve, i).unwrap());
        }
        // adjunction on every component sum
        for z in all_component_sums(&curve, 12).unwrap() {
            let restricted: i64 = z.iter().map(|i| omega.degrees[i]).sum();
            let n_z = if z.len() == curve.components().len() {
                0
            } else {
                curve.intersection_count(&z).unwrap()
            };
            prop_assert_eq!(restricted, curve.dualizing_degree(&z).unwrap() + n_z);
        }
    }

    #[test]
    fn intersection_symmetry_on_random_curves(spec in curve_spec()) {
        let Some((curve, _)) = build_curve(&spec) else {
            return Ok(());
        };
        for z in all_component_sums(&curve, 12).unwrap() {
            if z.len() == curve.components().len() {
                continue;
            }
            let zp = curve.complement(&z).unwrap();
            prop_assert_eq!(
                curve.intersection_count(&z).unwrap(),
                curve.intersection_count(&zp).unwrap()
            );
        }
    }

    #[test]
    fn products_satisfy_node_conditions(spec in curve_spec()) {
        // multiplication lands exactly in the section space of the tensor
        let Some((curve, gluings)) = build_curve(&spec) else {
            return Ok(());
        };
        let degrees: Vec<i64> = spec.degrees.iter().map(|d| d.abs() % 3).collect();
        let l = LineBundle::new(&curve, degrees, gluings).unwrap();
        let space = global_sections(&curve, &l).unwrap();
        let sq = l.power(2);
        let sq_space = global_sections(&curve, &sq).unwrap();
        for i in 0..space.dim().min(3) {
            for j in 0..space.dim().min(3) {
                let prod = curve_koszul::sheaf::multiply_sections(
                    &space.layout,
                    &space.layout,
                    &sq_space.layout,
                    space.basis_row(i),
                    space.basis_row(j),
                );
                prop_assert!(sq_space.coords_of(&prod).is_ok());
            }
        }
    }
}
