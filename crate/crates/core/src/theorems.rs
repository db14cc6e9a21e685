//! Bound calculators, numerical predicates and verification routines:
//! syzygy bounds per irreducible component, vanishing thresholds for
//! K_{t,0}, k-nuns / k-ununs levels, spannedness probes, node blow-up
//! transport, and direct N_p verification through Koszul cohomology.

use serde::Serialize;

use crate::curve::{all_component_sums, ComponentSet, NodalCurve};
use crate::error::{Error, Result};
use crate::koszul::{koszul_dim, KoszulConfig, KoszulEngine};
use crate::linalg::{rat_to_string, Rat};
use crate::sheaf::{
    dualizing_sheaf, global_sections, h0, ideal_twisted_sections, restriction_rank,
    restriction_rank_rows, twist_by_divisor, CoefficientBundle, IdealSpec, LineBundle,
    LinearSystem,
};

/// Components are enumerated with their self-nodes: one irreducible piece Z
/// has genus equal to its self-node count.
pub const UNUNS_COMPONENT_CAP: usize = 12;

/// Per-irreducible-component data entering every bound.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentBound {
    pub id: String,
    /// deg_Z L
    pub degree: i64,
    /// genus of the irreducible component = number of self-nodes
    pub genus: i64,
    /// n_Z: nodes joining Z to its complement
    pub cross_nodes: i64,
    /// connected components of the complement (0 for irreducible curves)
    pub complement_b0: i64,
    /// dimension of the induced system W_Z
    pub m_z: usize,
    /// rank of the restriction of the dualizing sections to Z (rank oracle)
    pub g_zx: usize,
    /// rank of the restriction of H^0(E) to Z, when a coefficient bundle is given
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_z: Option<usize>,
}

/// All numerical predictions for one (X, L, W) instance.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub m: usize,
    pub h0: usize,
    pub h1: usize,
    pub genus: i64,
    pub total_degree: i64,
    pub components: Vec<ComponentBound>,
    /// min over Z of m_Z - g_{Z,X} - 2 (sharpest bound; negative = no prediction)
    pub p_restriction_bound: i64,
    /// min over Z of deg_Z - g_Z - g_{Z,X} - n_Z - 1
    pub p_degree_bound: i64,
    /// min over Z of deg_Z - 2 g_Z - 2 n_Z - 1 + b_0(Z^+) (nodal closed form)
    pub p_nodal_bound: i64,
    /// max over Z of g_{Z,X} - m_Z + m: K_{t,0} with dualizing coefficients
    /// vanishes from this threshold on
    pub vanishing_threshold_dualizing: i64,
    /// max over Z of e_Z - m_Z + m, when a coefficient bundle is given
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vanishing_threshold: Option<i64>,
    pub ununs_level: i64,
}

/// g_{Z,X} closed form for nodal curves: g_Z + n_Z - b_0(Z^+).
pub fn gzx_formula(curve: &NodalCurve, component: usize) -> Result<i64> {
    let g = curve.self_node_count(component);
    let n = curve.intersection_count(&ComponentSet::singleton(component))?;
    let b0 = curve.complement_b0(component)? as i64;
    Ok(g + n - b0)
}

/// Computes every per-component quantity exactly (ranks through the section
/// spaces, combinatorics through the dual graph) and derives the bounds.
pub fn compute_bounds(
    curve: &NodalCurve,
    l: &LineBundle,
    w: &LinearSystem,
    e: Option<&CoefficientBundle>,
) -> Result<BoundReport> {
    if !curve.is_connected() {
        return Err(Error::Disconnected("bounds need a connected curve".into()));
    }
    let m = w.dim();
    let omega = dualizing_sheaf(curve);
    let omega_space = global_sections(curve, &omega)?;
    let mut components = Vec::new();
    for (i, comp) in curve.components().iter().enumerate() {
        let z = ComponentSet::singleton(i);
        let m_z = restriction_rank(w, &z);
        let g_zx = restriction_rank_rows(&omega_space.layout, omega_space.basis(), &z);
        let e_z = match e {
            Some(cb) => Some(cb.restriction_rank(curve, &z)?),
            None => None,
        };
        components.push(ComponentBound {
            id: comp.id.clone(),
            degree: l.degrees[i],
            genus: curve.self_node_count(i),
            cross_nodes: curve.intersection_count(&z)?,
            complement_b0: curve.complement_b0(i)? as i64,
            m_z,
            g_zx,
            e_z,
        });
    }
    let p_restriction_bound = components
        .iter()
        .map(|c| c.m_z as i64 - c.g_zx as i64 - 2)
        .min()
        .unwrap();
    let p_degree_bound = components
        .iter()
        .map(|c| c.degree - c.genus - c.g_zx as i64 - c.cross_nodes - 1)
        .min()
        .unwrap();
    let p_nodal_bound = components
        .iter()
        .map(|c| c.degree - 2 * c.genus - 2 * c.cross_nodes - 1 + c.complement_b0)
        .min()
        .unwrap();
    let vanishing_threshold_dualizing = components
        .iter()
        .map(|c| c.g_zx as i64 - c.m_z as i64 + m as i64)
        .max()
        .unwrap();
    let vanishing_threshold = e.map(|_| {
        components
            .iter()
            .map(|c| c.e_z.unwrap() as i64 - c.m_z as i64 + m as i64)
            .max()
            .unwrap()
    });
    Ok(BoundReport {
        m,
        h0: h0(curve, l)?,
        h1: crate::sheaf::h1(curve, l)?,
        genus: curve.arithmetic_genus()?,
        total_degree: l.total_degree(),
        components,
        p_restriction_bound,
        p_degree_bound,
        p_nodal_bound,
        vanishing_threshold_dualizing,
        vanishing_threshold,
        ununs_level: ununs_level(curve, l)?,
    })
}

/// Largest k such that L restricted to the subcurve Y is k-nuns:
/// deg(L_Y) - deg(omega_Y). Uses the dualizing degree, which is defined for
/// disconnected subcurves as well.
pub fn nuns_level(curve: &NodalCurve, l: &LineBundle, y: &ComponentSet) -> Result<i64> {
    Ok(l.degree_on(y) - curve.dualizing_degree(y)?)
}

/// Largest k such that L is k-ununs: the minimum of the nuns level over all
/// nonempty component sums (exhaustive; refuses curves above the component cap).
pub fn ununs_level(curve: &NodalCurve, l: &LineBundle) -> Result<i64> {
    let sums = all_component_sums(curve, UNUNS_COMPONENT_CAP)?;
    let mut level = i64::MAX;
    for y in &sums {
        level = level.min(nuns_level(curve, l, y)?);
    }
    Ok(level)
}

/// Echo of an ideal, with rationals rendered as strings.
#[derive(Debug, Clone, Serialize)]
pub struct IdealWitness {
    pub smooth: Vec<(String, String, u32)>,
    pub nodes: Vec<(String, u32, u32)>,
    pub colength: i64,
}

fn describe_ideal(curve: &NodalCurve, ideal: &IdealSpec) -> Result<IdealWitness> {
    Ok(IdealWitness {
        smooth: ideal
            .smooth
            .iter()
            .map(|(c, p, m)| (curve.components()[*c].id.clone(), rat_to_string(p), *m))
            .collect(),
        nodes: ideal
            .nodes
            .iter()
            .map(|(n, a, b)| (curve.nodes()[*n].id.clone(), *a, *b))
            .collect(),
        colength: ideal.colength(curve)?,
    })
}

/// Outcome of a spannedness probe. Refutation is sound; a pass only covers
/// the probed ideals and is labeled as such.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict")]
pub enum SpannedVerdict {
    PassedOnProbes {
        ideals_checked: usize,
    },
    Refuted {
        ideal: IdealWitness,
        expected: i64,
        actual: i64,
    },
}

impl SpannedVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, SpannedVerdict::PassedOnProbes { .. })
    }
}

/// Default smooth probe points: the first `per_component` small integers on
/// each component that avoid its branch points.
pub fn default_probe_points(curve: &NodalCurve, per_component: usize) -> Vec<(usize, Rat)> {
    let mut out = Vec::new();
    for (i, comp) in curve.components().iter().enumerate() {
        let mut found = 0;
        let mut candidate = 3i64;
        while found < per_component {
            let p = crate::linalg::rat(candidate);
            if !comp.branch_points.contains(&p) {
                out.push((i, p));
                found += 1;
            }
            candidate += 1;
        }
    }
    out
}

/// Checks h^0(I L) = h^0(L) - colength for every ideal of colength <= k
/// assembled from the probe points (with multiplicities) and all node types
/// (x^a, y^b). Every node of the curve participates.
pub fn spanned_probe(
    curve: &NodalCurve,
    l: &LineBundle,
    k: u32,
    probes: &[(usize, Rat)],
) -> Result<SpannedVerdict> {
    if k == 0 {
        return Err(Error::Hypothesis("spannedness probe needs k >= 1".into()));
    }
    let space = global_sections(curve, l)?;
    let h0l = space.dim() as i64;
    let mut ideals: Vec<IdealSpec> = Vec::new();
    enumerate_ideals(
        curve.nodes().len(),
        probes,
        k as i64,
        &mut IdealSpec::trivial(),
        0,
        &mut ideals,
    );
    let checked = ideals.len();
    for ideal in &ideals {
        let colength = ideal.colength(curve)?;
        let actual = ideal_twisted_sections(curve, &space, ideal)? as i64;
        let expected = h0l - colength;
        if actual != expected {
            return Ok(SpannedVerdict::Refuted {
                ideal: describe_ideal(curve, ideal)?,
                expected,
                actual,
            });
        }
    }
    Ok(SpannedVerdict::PassedOnProbes {
        ideals_checked: checked,
    })
}

fn enumerate_ideals(
    n_nodes: usize,
    probes: &[(usize, Rat)],
    budget: i64,
    current: &mut IdealSpec,
    site: usize,
    out: &mut Vec<IdealSpec>,
) {
    let total_sites = n_nodes + probes.len();
    if site == total_sites {
        if !current.smooth.is_empty() || !current.nodes.is_empty() {
            out.push(current.clone());
        }
        return;
    }
    // skip this site entirely
    enumerate_ideals(n_nodes, probes, budget, current, site + 1, out);
    if site < n_nodes {
        // node site: type (a, b) of colength a + b - 1
        for a in 1..=(budget as u32) {
            for b in 1..=(budget as u32) {
                let cost = a as i64 + b as i64 - 1;
                if cost > budget {
                    continue;
                }
                current.nodes.push((site, a, b));
                enumerate_ideals(n_nodes, probes, budget - cost, current, site + 1, out);
                current.nodes.pop();
            }
        }
    } else {
        let (comp, pt) = &probes[site - n_nodes];
        for mult in 1..=(budget as u32) {
            current.smooth.push((*comp, pt.clone(), mult));
            enumerate_ideals(
                n_nodes,
                probes,
                budget - mult as i64,
                current,
                site + 1,
                out,
            );
            current.smooth.pop();
        }
    }
}

/// Result of transporting a bundle through the blow-up of one node.
#[derive(Debug, Clone, Serialize)]
pub struct BlowUpTransport {
    pub node: String,
    pub a: u32,
    pub b: u32,
    pub colength: i64,
    pub level_before: i64,
    pub level_after: i64,
    pub required_level: i64,
    /// level_after >= level_before - colength
    pub holds: bool,
    /// the transported claim is vacuous when level_before - colength <= 0
    pub claim_vacuous: bool,
    pub blow_up_disconnects: bool,
}

/// Blows up the node, pulls L back and twists by -a (branch a) - b (branch b);
/// checks that the ununs level drops by at most the colength a + b - 1.
pub fn jlemma_transport(
    curve: &NodalCurve,
    l: &LineBundle,
    node: usize,
    a: u32,
    b: u32,
) -> Result<(NodalCurve, LineBundle, BlowUpTransport)> {
    if node >= curve.nodes().len() {
        return Err(Error::Curve(format!("no node with index {node}")));
    }
    if a == 0 || b == 0 || b > a {
        return Err(Error::Hypothesis(
            "blow-up transport requires 0 < b <= a".into(),
        ));
    }
    let n = curve.nodes()[node].clone();
    let level_before = ununs_level(curve, l)?;
    let blown = curve.blow_up_node(node)?;
    // pull back: same degrees, gluings of the surviving nodes
    let gluings: Vec<Rat> = curve
        .nodes()
        .iter()
        .zip(&l.gluings)
        .filter(|(nn, _)| nn.id != n.id)
        .map(|(_, g)| g.clone())
        .collect();
    let pulled = LineBundle::new(&blown, l.degrees.clone(), gluings)?;
    let twisted = twist_by_divisor(
        &blown,
        &pulled,
        &[
            (n.a.component, n.a.point.clone(), -(a as i64)),
            (n.b.component, n.b.point.clone(), -(b as i64)),
        ],
    )?;
    let level_after = ununs_level(&blown, &twisted)?;
    let colength = a as i64 + b as i64 - 1;
    let required_level = level_before - colength;
    let transport = BlowUpTransport {
        node: n.id.clone(),
        a,
        b,
        colength,
        level_before,
        level_after,
        required_level,
        holds: level_after >= required_level,
        claim_vacuous: required_level <= 0,
        blow_up_disconnects: !blown.is_connected(),
    };
    Ok((blown, twisted, transport))
}

/// Checks of the expected-dimension statement: a 1-ununs bundle has
/// h^0(omega (x) L^{-1}) = 0 and h^0(L) = deg L - g + 1; a k-ununs bundle
/// with k > 1 additionally passes the (k-1)-spannedness probes.
#[derive(Debug, Clone, Serialize)]
pub struct ExpectedDimensionReport {
    pub ununs_level: i64,
    /// false when the 1-ununs hypothesis fails: nothing is claimed
    pub applicable: bool,
    pub h0: usize,
    pub expected_h0: i64,
    pub h0_matches: bool,
    pub dual_twist_h0: usize,
    pub spanned_level_probed: Option<u32>,
    pub spanned: Option<SpannedVerdict>,
    pub passed: bool,
}

pub fn warmup_checks(
    curve: &NodalCurve,
    l: &LineBundle,
    probe_cap: u32,
) -> Result<ExpectedDimensionReport> {
    let g = curve.arithmetic_genus()?;
    let level = ununs_level(curve, l)?;
    let h0l = h0(curve, l)?;
    let expected_h0 = l.total_degree() - g + 1;
    let omega = dualizing_sheaf(curve);
    let dual_twist_h0 = h0(curve, &omega.tensor(&l.inverse())?)?;
    if level < 1 {
        return Ok(ExpectedDimensionReport {
            ununs_level: level,
            applicable: false,
            h0: h0l,
            expected_h0,
            h0_matches: h0l as i64 == expected_h0,
            dual_twist_h0,
            spanned_level_probed: None,
            spanned: None,
            passed: true,
        });
    }
    let h0_matches = h0l as i64 == expected_h0;
    let (spanned_level_probed, spanned) = if level > 1 {
        let probe_k = (level as u32 - 1).min(probe_cap);
        let probes = default_probe_points(curve, 2);
        let verdict = spanned_probe(curve, l, probe_k, &probes)?;
        (Some(probe_k), Some(verdict))
    } else {
        (None, None)
    };
    let passed = h0_matches && dual_twist_h0 == 0 && spanned.as_ref().is_none_or(|s| s.passed());
    Ok(ExpectedDimensionReport {
        ununs_level: level,
        applicable: true,
        h0: h0l,
        expected_h0,
        h0_matches,
        dual_twist_h0,
        spanned_level_probed,
        spanned,
        passed,
    })
}

/// Per-position outcome inside a verification run.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind")]
pub enum SliceOutcome {
    Zero,
    Nonzero {
        dim: usize,
    },
    /// skipped because the slice exceeded the entry cap
    Skipped {
        entries: u128,
    },
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict")]
pub enum SweepVerdict {
    Passed,
    PassedPartial { skipped: usize },
    Failed { witness_t: i64, dim: usize },
}

/// Vanishing verification for K_{t,0}(X; E, L, W): every t from the
/// threshold up to m must vanish. `threshold_offset` shifts the starting t
/// (negative offsets probe sharpness below the proven threshold).
#[derive(Debug, Clone, Serialize)]
pub struct VanishingReport {
    pub m: usize,
    pub threshold: i64,
    pub threshold_offset: i64,
    pub start_t: i64,
    pub results: Vec<(i64, SliceOutcome)>,
    pub verdict: SweepVerdict,
}

pub fn verify_vanishing(
    curve: &NodalCurve,
    e: &CoefficientBundle,
    l: &LineBundle,
    w: &LinearSystem,
    threshold_offset: i64,
    cfg: &KoszulConfig,
) -> Result<VanishingReport> {
    let m = w.dim();
    // threshold: max over irreducible components of e_Z - m_Z + m
    let mut threshold = i64::MIN;
    for i in 0..curve.components().len() {
        let z = ComponentSet::singleton(i);
        let e_z = e.restriction_rank(curve, &z)? as i64;
        let m_z = restriction_rank(w, &z) as i64;
        threshold = threshold.max(e_z - m_z + m as i64);
    }
    let start_t = (threshold + threshold_offset).max(0);
    let mut engine = KoszulEngine::new(curve, e, l, w, cfg.clone());
    let mut results = Vec::new();
    let mut skipped = 0usize;
    let mut failure: Option<(i64, usize)> = None;
    for t in start_t..=(m as i64) {
        match engine.dim(t, 0) {
            Ok(0) => results.push((t, SliceOutcome::Zero)),
            Ok(d) => {
                results.push((t, SliceOutcome::Nonzero { dim: d }));
                if failure.is_none() {
                    failure = Some((t, d));
                }
            }
            Err(Error::SliceCapExceeded { actual, .. }) => {
                results.push((t, SliceOutcome::Skipped { entries: actual }));
                skipped += 1;
            }
            Err(e) => return Err(e),
        }
    }
    let verdict = match failure {
        Some((witness_t, dim)) => SweepVerdict::Failed { witness_t, dim },
        None if skipped > 0 => SweepVerdict::PassedPartial { skipped },
        None => SweepVerdict::Passed,
    };
    Ok(VanishingReport {
        m,
        threshold,
        threshold_offset,
        start_t,
        results,
        verdict,
    })
}

/// Direct N_p verification outcome.
#[derive(Debug, Clone, Serialize)]
pub struct NpReport {
    pub m: usize,
    pub h1: usize,
    pub very_ample_probe: SpannedVerdict,
    /// direct q-range used: K_{i,q} computed for q in [2, q_cut)
    pub q_cut: i64,
    /// whether vanishing for q >= q_cut is justified by component degrees
    /// (deg_Z L >= 1 and the dual twists negative on every component)
    pub high_q_justified: bool,
    pub entries: Vec<(i64, i64, SliceOutcome)>,
    /// largest p with every K_{i,q}, i <= p fully computed and zero
    pub achieved: i64,
    /// largest p with no nonzero group found (cap skips allowed)
    pub achieved_partial: i64,
    pub complete: bool,
}

/// Verifies property N_p for p <= p_max with W = H^0(L), by computing
/// K_{i,q} for q in {2, ..., q_cut - 1}; vanishing for q >= q_cut holds by
/// duality once the twist degrees are negative on every component, which is
/// checked, not assumed.
pub fn verify_np_direct(
    curve: &NodalCurve,
    l: &LineBundle,
    p_max: i64,
    cfg: &KoszulConfig,
) -> Result<NpReport> {
    verify_np_direct_with_q(curve, l, p_max, None, cfg)
}

/// As `verify_np_direct`, widening the directly computed q-range to at
/// least {2, ..., q_max} when requested.
pub fn verify_np_direct_with_q(
    curve: &NodalCurve,
    l: &LineBundle,
    p_max: i64,
    q_max: Option<i64>,
    cfg: &KoszulConfig,
) -> Result<NpReport> {
    if crate::sheaf::h1(curve, l)? != 0 {
        return Err(Error::Hypothesis(
            "direct N_p verification requires h^1(L) = 0".into(),
        ));
    }
    let space = global_sections(curve, l)?;
    let m = space.dim();
    let w = LinearSystem::full(space);
    let probes = default_probe_points(curve, 2);
    let very_ample_probe = spanned_probe(curve, l, 2, &probes)?;
    if !very_ample_probe.passed() {
        return Ok(NpReport {
            m,
            h1: 0,
            very_ample_probe,
            q_cut: 0,
            high_q_justified: false,
            entries: Vec::new(),
            achieved: -1,
            achieved_partial: -1,
            complete: false,
        });
    }
    let omega = dualizing_sheaf(curve);
    if l.degrees.iter().any(|d| *d < 1) {
        return Err(Error::Hypothesis(
            "direct N_p verification requires deg_Z L >= 1 on every component".into(),
        ));
    }
    // smallest q >= 4 with deg_Z(omega L^{2-q}) < 0 for every Z; degrees
    // strictly decrease in q since deg_Z L >= 1, so vanishing persists
    let mut q_cut = 4i64;
    for (dw, dl) in omega.degrees.iter().zip(&l.degrees) {
        let mut q = 4i64;
        while dw + (2 - q) * dl >= 0 {
            q += 1;
        }
        q_cut = q_cut.max(q);
    }
    if let Some(qm) = q_max {
        q_cut = q_cut.max(qm + 1);
    }
    // computed confirmation of the justification at the cut
    let dual_mid = omega.tensor(&l.power(2 - q_cut))?;
    let high_q_justified = dual_mid.degrees.iter().all(|d| *d < 0) && h0(curve, &dual_mid)? == 0;
    let o = CoefficientBundle::line(LineBundle::structure_sheaf(curve));
    let mut engine = KoszulEngine::new(curve, &o, l, &w, cfg.clone());
    let mut entries = Vec::new();
    let mut achieved = -1i64;
    let mut achieved_partial = -1i64;
    let mut all_zero = true;
    let mut no_nonzero = true;
    for p in 0..=p_max {
        let mut p_zero = true;
        let mut p_no_nonzero = true;
        for q in 2..q_cut {
            match engine.dim(p, q) {
                Ok(0) => entries.push((p, q, SliceOutcome::Zero)),
                Ok(d) => {
                    entries.push((p, q, SliceOutcome::Nonzero { dim: d }));
                    p_zero = false;
                    p_no_nonzero = false;
                }
                Err(Error::SliceCapExceeded { actual, .. }) => {
                    entries.push((p, q, SliceOutcome::Skipped { entries: actual }));
                    p_zero = false;
                }
                Err(e) => return Err(e),
            }
        }
        all_zero &= p_zero;
        no_nonzero &= p_no_nonzero;
        if all_zero && high_q_justified {
            achieved = p;
        }
        if no_nonzero && high_q_justified {
            achieved_partial = p;
        }
        if !no_nonzero {
            break;
        }
    }
    Ok(NpReport {
        m,
        h1: 0,
        very_ample_probe,
        q_cut,
        high_q_justified,
        entries,
        achieved,
        achieved_partial,
        complete: achieved == p_max,
    })
}

/// Report for the testable statement "k-ununs implies N_{k-3}": runs the
/// direct verification up to p = k - 3 and reports agreement or a candidate
/// counterexample. Never asserted as an invariant.
#[derive(Debug, Clone, Serialize)]
pub struct KununsNpReport {
    pub ununs_level: i64,
    pub p_target: i64,
    pub np: NpReport,
    pub agrees: bool,
    pub counterexample_candidate: Option<(i64, i64, usize)>,
}

pub fn hypothesis_kununs_np(
    curve: &NodalCurve,
    l: &LineBundle,
    cfg: &KoszulConfig,
) -> Result<KununsNpReport> {
    let k = ununs_level(curve, l)?;
    if k < 3 {
        return Err(Error::Hypothesis(format!(
            "k-ununs hypothesis run needs ununs level >= 3, got {k}"
        )));
    }
    let p_target = k - 3;
    let np = verify_np_direct(curve, l, p_target, cfg)?;
    let counterexample_candidate = np.entries.iter().find_map(|(p, q, o)| match o {
        SliceOutcome::Nonzero { dim } if *p <= p_target => Some((*p, *q, *dim)),
        _ => None,
    });
    Ok(KununsNpReport {
        ununs_level: k,
        p_target,
        agrees: np.achieved >= p_target,
        counterexample_candidate,
        np,
    })
}

/// Convenience: K_{p,q} with the structure sheaf as coefficient bundle.
pub fn koszul_dim_structure(
    curve: &NodalCurve,
    p: i64,
    q: i64,
    l: &LineBundle,
    w: &LinearSystem,
    cfg: &KoszulConfig,
) -> Result<usize> {
    let o = CoefficientBundle::line(LineBundle::structure_sheaf(curve));
    koszul_dim(curve, p, q, &o, l, w, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

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

    fn ob(curve: &NodalCurve, degrees: &[i64]) -> LineBundle {
        LineBundle::new(curve, degrees.to_vec(), vec![rat(1); curve.nodes().len()]).unwrap()
    }

    fn full(curve: &NodalCurve, l: &LineBundle) -> LinearSystem {
        LinearSystem::full(global_sections(curve, l).unwrap())
    }

    #[test]
    fn bounds_single_component() {
        let s = single();
        let l = ob(&s, &[4]);
        let w = full(&s, &l);
        let r = compute_bounds(&s, &l, &w, None).unwrap();
        assert_eq!(r.m, 5);
        assert_eq!(r.p_restriction_bound, 3);
        assert_eq!(r.p_degree_bound, 3);
        assert_eq!(r.p_nodal_bound, 3);
    }

    #[test]
    fn bounds_cycle2_55() {
        let x = cycle2();
        let l = ob(&x, &[5, 5]);
        let w = full(&x, &l);
        let r = compute_bounds(&x, &l, &w, None).unwrap();
        assert_eq!(r.m, 10);
        for c in &r.components {
            assert_eq!(c.m_z, 6);
            assert_eq!(c.g_zx, 1);
        }
        assert_eq!(r.p_restriction_bound, 3);
        assert_eq!(r.p_nodal_bound, 1);
        assert_eq!(r.p_degree_bound, 1);
        assert_eq!(r.vanishing_threshold_dualizing, 5);
    }

    #[test]
    fn bounds_cycle2_33() {
        let x = cycle2();
        let l = ob(&x, &[3, 3]);
        let w = full(&x, &l);
        let r = compute_bounds(&x, &l, &w, None).unwrap();
        assert_eq!(r.p_nodal_bound, -1); // no prediction, reported as such
        assert_eq!(r.p_restriction_bound, 1);
        assert_eq!(r.ununs_level, 5);
    }

    #[test]
    fn gzx_formula_examples() {
        let c = chain2();
        assert_eq!(gzx_formula(&c, 0).unwrap(), 0);
        let x = cycle2();
        assert_eq!(gzx_formula(&x, 0).unwrap(), 1);
    }

    #[test]
    fn ununs_examples() {
        let s = single();
        assert_eq!(ununs_level(&s, &ob(&s, &[4])).unwrap(), 6);
        let x = cycle2();
        assert_eq!(ununs_level(&x, &ob(&x, &[3, 3])).unwrap(), 5);
        let c = chain2();
        assert_eq!(ununs_level(&c, &ob(&c, &[0, 5])).unwrap(), 2);
        assert_eq!(ununs_level(&c, &ob(&c, &[0, 0])).unwrap(), 2);
    }

    #[test]
    fn spanned_examples() {
        let s = single();
        let l = ob(&s, &[3]);
        let probes: Vec<(usize, Rat)> = vec![(0, rat(0)), (0, rat(1)), (0, rat(2))];
        let v = spanned_probe(&s, &l, 2, &probes).unwrap();
        assert!(v.passed());

        // chain2, degrees (1,0): 1-spanned at a smooth Z2 point, but not
        // 2-spanned at two Z2 points (sections are constant on Z2)
        let c = chain2();
        let l = ob(&c, &[1, 0]);
        let one = spanned_probe(&c, &l, 1, &[(1, rat(3))]).unwrap();
        assert!(one.passed());
        let two = spanned_probe(&c, &l, 2, &[(1, rat(3)), (1, rat(4))]).unwrap();
        assert!(!two.passed());

        // cycle2 (3,3) is 5-ununs, hence expected 4-spanned
        let x = cycle2();
        let l = ob(&x, &[3, 3]);
        let probes = default_probe_points(&x, 2);
        for k in 1..=4 {
            assert!(spanned_probe(&x, &l, k, &probes).unwrap().passed());
        }
    }

    #[test]
    fn jlemma_examples() {
        let x = cycle2();
        let l = ob(&x, &[3, 3]); // 5-ununs
        let (blown, lp, t) = jlemma_transport(&x, &l, 0, 1, 1).unwrap();
        assert!(blown.is_connected());
        assert_eq!(lp.degrees, vec![2, 2]);
        assert_eq!(t.level_before, 5);
        assert_eq!(t.level_after, 4);
        assert!(t.holds);
        assert!(!t.claim_vacuous);

        let (_, lp, t) = jlemma_transport(&x, &l, 0, 2, 1).unwrap();
        assert_eq!(lp.total_degree(), 3);
        assert_eq!(t.colength, 2);
        assert!(t.holds);
        assert!(t.level_after >= 3);

        // b > a rejected
        assert!(jlemma_transport(&x, &l, 0, 1, 2).is_err());

        // vacuous claim is reported
        let weak = ob(&x, &[1, 0]);
        let lv = ununs_level(&x, &weak).unwrap();
        let (_, _, t) = jlemma_transport(&x, &weak, 0, 1, 1).unwrap();
        assert_eq!(t.level_before, lv);
        assert_eq!(t.claim_vacuous, lv - 1 <= 0);
        assert!(t.holds);

        // a disconnecting blow-up is flagged; the check still runs in the
        // dualizing-degree form and holds
        let c = chain2();
        let l = ob(&c, &[2, 2]); // 4-ununs
        let (blown, _, t) = jlemma_transport(&c, &l, 0, 1, 1).unwrap();
        assert!(!blown.is_connected());
        assert!(t.blow_up_disconnects);
        assert!(t.holds);
        assert!(t.level_after >= t.level_before - 1);
    }

    #[test]
    fn warmup_examples() {
        let x = cycle2();
        let l = ob(&x, &[1, 1]);
        let r = warmup_checks(&x, &l, 3).unwrap();
        assert!(r.applicable);
        assert_eq!(r.h0, 2);
        assert!(r.h0_matches);
        assert_eq!(r.dual_twist_h0, 0);
        assert!(r.passed);

        let c = chain2();
        let l = ob(&c, &[0, 0]);
        let r = warmup_checks(&c, &l, 3).unwrap();
        assert_eq!(r.ununs_level, 2);
        assert_eq!(r.h0, 1);
        assert!(r.passed);
        assert_eq!(r.spanned_level_probed, Some(1));

        // degree -1 sits exactly at the 1-nuns boundary (deg = 2g - 1) and
        // the expected dimension holds trivially: h^0 = 0 = deg - g + 1
        let s = single();
        let l = ob(&s, &[-1]);
        let r = warmup_checks(&s, &l, 3).unwrap();
        assert!(r.applicable && r.passed && r.h0 == 0);
        // degree 2g - 2 = -2 is not 1-nuns: nothing claimed
        let l = ob(&s, &[-2]);
        let r = warmup_checks(&s, &l, 3).unwrap();
        assert!(!r.applicable);
        assert!(r.passed);
    }

    #[test]
    fn vanishing_examples() {
        let cfg = KoszulConfig::default();
        // single component, E = omega: h^0 = 0, all slices vanish
        let s = single();
        let l = ob(&s, &[3]);
        let w = full(&s, &l);
        let omega = CoefficientBundle::line(dualizing_sheaf(&s));
        let r = verify_vanishing(&s, &omega, &l, &w, 0, &cfg).unwrap();
        assert!(matches!(r.verdict, SweepVerdict::Passed));

        // cycle2 (3,3), E = O + O: threshold per component, all vanish
        let x = cycle2();
        let l = ob(&x, &[3, 3]);
        let w = full(&x, &l);
        let o = LineBundle::structure_sheaf(&x);
        let e = CoefficientBundle {
            summands: vec![o.clone(), o],
        };
        let r = verify_vanishing(&x, &e, &l, &w, 0, &cfg).unwrap();
        assert!(matches!(r.verdict, SweepVerdict::Passed));

        // cycle2 (3,3), E = omega: threshold t >= 1 - 4 + 6 = 3
        let omega = CoefficientBundle::line(dualizing_sheaf(&x));
        let r = verify_vanishing(&x, &omega, &l, &w, 0, &cfg).unwrap();
        assert_eq!(r.threshold, 3);
        assert!(matches!(r.verdict, SweepVerdict::Passed));
    }

    #[test]
    fn np_direct_rational_normal_curves() {
        let cfg = KoszulConfig::default();
        let s = single();
        for d in [2i64, 3] {
            let l = ob(&s, &[d]);
            let r = verify_np_direct(&s, &l, d - 1, &cfg).unwrap();
            assert!(r.high_q_justified);
            assert_eq!(r.achieved, d - 1, "degree {d}");
            assert!(r.complete);
        }
    }

    #[test]
    fn np_direct_cycle2_33() {
        // p_restriction_bound = 1; direct verification reaches it
        let cfg = KoszulConfig::default();
        let x = cycle2();
        let l = ob(&x, &[3, 3]);
        let r = verify_np_direct(&x, &l, 1, &cfg).unwrap();
        assert_eq!(r.achieved, 1);
    }

    #[test]
    fn np_requires_h1_zero() {
        let cfg = KoszulConfig::default();
        let x = cycle2();
        let o = LineBundle::structure_sheaf(&x);
        assert!(verify_np_direct(&x, &o, 0, &cfg).is_err());
    }

    #[test]
    fn np_not_very_ample_reported() {
        let cfg = KoszulConfig::default();
        // degrees (1,1) on a chain embed it as two crossing lines: the
        // probe passes
        let c = chain2();
        let l = ob(&c, &[1, 1]);
        let r = verify_np_direct(&c, &l, 1, &cfg).unwrap();
        assert!(r.very_ample_probe.passed());

        // degrees (1,1) on a cycle map it 2:1 onto a line: the probe
        // refutes 2-spannedness and no N_p claim is made
        let x = cycle2();
        let l = ob(&x, &[1, 1]);
        let r = verify_np_direct(&x, &l, 0, &cfg).unwrap();
        assert!(!r.very_ample_probe.passed());
        assert_eq!(r.achieved, -1);
        assert!(r.entries.is_empty());
    }

    #[test]
    fn kununs_hypothesis_cycle2() {
        let cfg = KoszulConfig::default();
        let x = cycle2();
        let l = ob(&x, &[3, 3]); // 5-ununs => tests N_2
        let r = hypothesis_kununs_np(&x, &l, &cfg).unwrap();
        assert_eq!(r.p_target, 2);
        assert!(r.agrees);
        assert!(r.counterexample_candidate.is_none());

        let c = chain2();
        let l = ob(&c, &[2, 2]); // 4-ununs => tests N_1
        let r = hypothesis_kununs_np(&c, &l, &cfg).unwrap();
        assert_eq!(r.p_target, 1);
        assert!(r.agrees);

        // below the hypothesis threshold: refused
        let l = ob(&c, &[0, 0]);
        assert!(hypothesis_kununs_np(&c, &l, &cfg).is_err());

        // classical sharp case: a single component with degree d is
        // (d+2)-ununs and tests N_{d-1}
        let s = single();
        let l = ob(&s, &[3]);
        let r = hypothesis_kununs_np(&s, &l, &cfg).unwrap();
        assert_eq!(r.ununs_level, 5);
        assert_eq!(r.p_target, 2);
        assert!(r.agrees);
    }

    #[test]
    fn bound_monotonicity_catalog() {
        // p_nodal <= p_degree <= p_restriction with W = H^0
        for (x, degs) in [
            (single(), vec![vec![3], vec![5]]),
            (chain2(), vec![vec![2, 2], vec![1, 4]]),
            (cycle2(), vec![vec![3, 3], vec![5, 5], vec![2, 4]]),
        ] {
            for d in degs {
                let l = ob(&x, &d);
                let w = full(&x, &l);
                let r = compute_bounds(&x, &l, &w, None).unwrap();
                assert!(r.p_nodal_bound <= r.p_degree_bound);
                assert!(r.p_degree_bound <= r.p_restriction_bound);
            }
        }
    }
}
