//! Nodal curves assembled from rational components.
//!
//! Each component is a projective line with one affine coordinate; nodes
//! identify pairs of affine branch points. Self-nodes (both branches on one
//! component) are allowed, so irreducible singular models are in scope. The
//! point at infinity is never a branch point, which keeps sections of
//! degree-d bundles representable as polynomials of degree at most d.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::Rat;

/// A rational component, i.e. the normalization of one irreducible piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    /// Affine coordinates where nodes attach; pairwise distinct.
    pub branch_points: Vec<Rat>,
}

/// One branch of a node: a component index together with an affine point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub component: usize,
    pub point: Rat,
}

/// An ordinary double point joining two distinct branches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub a: Branch,
    pub b: Branch,
}

impl Node {
    pub fn is_self_node(&self) -> bool {
        self.a.component == self.b.component
    }

    pub fn touches(&self, component: usize) -> bool {
        self.a.component == component || self.b.component == component
    }
}

/// A nonempty subset of components, closed under nothing: the induced
/// subcurve keeps exactly the nodes with both branches inside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSet(BTreeSet<usize>);

impl ComponentSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        ComponentSet(members.into_iter().collect())
    }

    pub fn singleton(i: usize) -> Self {
        ComponentSet(BTreeSet::from([i]))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

/// A nodal curve: rational components plus nodes. May be disconnected
/// (needed after blow-ups and for complements); operations that require
/// connectedness check it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodalCurve {
    components: Vec<Component>,
    nodes: Vec<Node>,
    connected: bool,
}

/// Raw node description used during construction: (node id, branch a, branch b)
/// where a branch is (component id, affine point).
pub type NodeSpec = (String, (String, Rat), (String, Rat));

impl NodalCurve {
    pub fn new(component_ids: Vec<String>, node_specs: Vec<NodeSpec>) -> Result<Self> {
        if component_ids.is_empty() {
            return Err(Error::Curve("curve needs at least one component".into()));
        }
        let mut seen = BTreeSet::new();
        for id in &component_ids {
            if !seen.insert(id.clone()) {
                return Err(Error::Curve(format!("duplicate component id `{id}`")));
            }
        }
        let index_of = |id: &str| -> Result<usize> {
            component_ids
                .iter()
                .position(|c| c == id)
                .ok_or_else(|| Error::Curve(format!("unknown component `{id}` in node")))
        };
        let mut components: Vec<Component> = component_ids
            .iter()
            .map(|id| Component {
                id: id.clone(),
                branch_points: Vec::new(),
            })
            .collect();
        let mut nodes = Vec::new();
        let mut node_ids = BTreeSet::new();
        for (nid, (ca, pa), (cb, pb)) in node_specs {
            if !node_ids.insert(nid.clone()) {
                return Err(Error::Curve(format!("duplicate node id `{nid}`")));
            }
            let a = Branch {
                component: index_of(&ca)?,
                point: pa,
            };
            let b = Branch {
                component: index_of(&cb)?,
                point: pb,
            };
            if a == b {
                return Err(Error::Curve(format!("node `{nid}` has identical branches")));
            }
            for br in [&a, &b] {
                let comp = &mut components[br.component];
                if comp.branch_points.contains(&br.point) {
                    return Err(Error::Curve(format!(
                        "branch point {} on component `{}` is used by more than one node branch",
                        crate::linalg::rat_to_string(&br.point),
                        comp.id
                    )));
                }
                comp.branch_points.push(br.point.clone());
            }
            nodes.push(Node { id: nid, a, b });
        }
        let connected = is_connected(components.len(), &nodes, None);
        Ok(NodalCurve {
            components,
            nodes,
            connected,
        })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn component_index(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|c| c.id == id)
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn all_components(&self) -> ComponentSet {
        ComponentSet::new(0..self.components.len())
    }

    fn check_subset(&self, z: &ComponentSet) -> Result<()> {
        if z.is_empty() {
            return Err(Error::ComponentSum("component sum is empty".into()));
        }
        if z.iter().any(|i| i >= self.components.len()) {
            return Err(Error::ComponentSum("component index out of range".into()));
        }
        Ok(())
    }

    /// Arithmetic genus: first Betti number of the dual graph (components
    /// are rational). Rejects disconnected curves.
    pub fn arithmetic_genus(&self) -> Result<i64> {
        if !self.connected {
            return Err(Error::Disconnected(
                "arithmetic genus is only defined here for connected curves".into(),
            ));
        }
        Ok(self.nodes.len() as i64 - self.components.len() as i64 + 1)
    }

    /// The complementary component sum, closure of X minus Z.
    pub fn complement(&self, z: &ComponentSet) -> Result<ComponentSet> {
        self.check_subset(z)?;
        let rest: Vec<usize> = (0..self.components.len())
            .filter(|i| !z.contains(*i))
            .collect();
        if rest.is_empty() {
            return Err(Error::ComponentSum(
                "complement of the whole curve is empty".into(),
            ));
        }
        Ok(ComponentSet::new(rest))
    }

    /// Number of nodes with exactly one branch on Z (self-nodes of Z are
    /// internal and do not count).
    pub fn intersection_count(&self, z: &ComponentSet) -> Result<i64> {
        self.check_subset(z)?;
        Ok(self
            .nodes
            .iter()
            .filter(|n| z.contains(n.a.component) != z.contains(n.b.component))
            .count() as i64)
    }

    /// Connected components of the induced subcurve on Z.
    pub fn connected_components_count(&self, z: &ComponentSet) -> Result<usize> {
        self.check_subset(z)?;
        let members: Vec<usize> = z.iter().collect();
        let reindex: std::collections::BTreeMap<usize, usize> =
            members.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut uf = UnionFind::new(members.len());
        for n in &self.nodes {
            if z.contains(n.a.component) && z.contains(n.b.component) {
                uf.union(reindex[&n.a.component], reindex[&n.b.component]);
            }
        }
        Ok(uf.count())
    }

    /// Degree of the dualizing sheaf of the induced subcurve on Y: the sum
    /// over components of (internal branch points - 2). Defined for
    /// disconnected Y as well.
    pub fn dualizing_degree(&self, y: &ComponentSet) -> Result<i64> {
        self.check_subset(y)?;
        let mut internal_branches = vec![0i64; self.components.len()];
        for n in &self.nodes {
            if y.contains(n.a.component) && y.contains(n.b.component) {
                internal_branches[n.a.component] += 1;
                internal_branches[n.b.component] += 1;
            }
        }
        Ok(y.iter().map(|i| internal_branches[i] - 2).sum())
    }

    /// Genus of the induced subcurve on Y; rejected when Y is disconnected
    /// (use `dualizing_degree` there).
    pub fn subcurve_genus(&self, y: &ComponentSet) -> Result<i64> {
        self.check_subset(y)?;
        if self.connected_components_count(y)? != 1 {
            return Err(Error::Disconnected(
                "genus query on a disconnected subcurve; use dualizing_degree".into(),
            ));
        }
        Ok((self.dualizing_degree(y)? + 2) / 2)
    }

    /// Separates the two branches of a node. The former branch points become
    /// smooth points; the result may be disconnected.
    pub fn blow_up_node(&self, node: usize) -> Result<NodalCurve> {
        if node >= self.nodes.len() {
            return Err(Error::Curve(format!("no node with index {node}")));
        }
        let removed = &self.nodes[node];
        let mut components = self.components.clone();
        for br in [&removed.a, &removed.b] {
            components[br.component]
                .branch_points
                .retain(|p| p != &br.point);
        }
        let nodes: Vec<Node> = self
            .nodes
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != node)
            .map(|(_, n)| n.clone())
            .collect();
        let connected = is_connected(components.len(), &nodes, None);
        Ok(NodalCurve {
            components,
            nodes,
            connected,
        })
    }

    /// The induced subcurve on Y as a curve of its own: components of Y with
    /// only the internal nodes; branch points of cross nodes are dropped.
    /// Returns (subcurve, map from new component index to old).
    pub fn extract_subcurve(&self, y: &ComponentSet) -> Result<(NodalCurve, Vec<usize>)> {
        self.check_subset(y)?;
        let members: Vec<usize> = y.iter().collect();
        let reindex: std::collections::BTreeMap<usize, usize> =
            members.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut components: Vec<Component> = members
            .iter()
            .map(|&i| Component {
                id: self.components[i].id.clone(),
                branch_points: Vec::new(),
            })
            .collect();
        let mut nodes = Vec::new();
        for n in &self.nodes {
            if y.contains(n.a.component) && y.contains(n.b.component) {
                let a = Branch {
                    component: reindex[&n.a.component],
                    point: n.a.point.clone(),
                };
                let b = Branch {
                    component: reindex[&n.b.component],
                    point: n.b.point.clone(),
                };
                components[a.component].branch_points.push(a.point.clone());
                components[b.component].branch_points.push(b.point.clone());
                nodes.push(Node {
                    id: n.id.clone(),
                    a,
                    b,
                });
            }
        }
        let connected = is_connected(components.len(), &nodes, None);
        Ok((
            NodalCurve {
                components,
                nodes,
                connected,
            },
            members,
        ))
    }

    /// Number of self-nodes on a component: the genus of the irreducible
    /// component in the sense "one component plus its self-nodes".
    pub fn self_node_count(&self, component: usize) -> i64 {
        self.nodes
            .iter()
            .filter(|n| n.is_self_node() && n.a.component == component)
            .count() as i64
    }

    /// b_0 of the complement of one component (0 when the curve is
    /// irreducible, i.e. the complement is empty).
    pub fn complement_b0(&self, component: usize) -> Result<usize> {
        if self.components.len() == 1 {
            return Ok(0);
        }
        let z = ComponentSet::singleton(component);
        let zplus = self.complement(&z)?;
        self.connected_components_count(&zplus)
    }
}

fn is_connected(n_components: usize, nodes: &[Node], restrict: Option<&ComponentSet>) -> bool {
    let members: Vec<usize> = match restrict {
        Some(z) => z.iter().collect(),
        None => (0..n_components).collect(),
    };
    if members.is_empty() {
        return true;
    }
    let reindex: std::collections::BTreeMap<usize, usize> =
        members.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut uf = UnionFind::new(members.len());
    for n in nodes {
        if let (Some(&a), Some(&b)) = (reindex.get(&n.a.component), reindex.get(&n.b.component)) {
            uf.union(a, b);
        }
    }
    uf.count() == 1
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let r = self.find(self.parent[i]);
            self.parent[i] = r;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn count(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&i| self.find(i) == i)
            .count()
    }
}

/// Enumerates all nonempty component sums; refuses curves with more
/// components than `cap` (the enumeration is exponential).
pub fn all_component_sums(curve: &NodalCurve, cap: usize) -> Result<Vec<ComponentSet>> {
    let c = curve.components().len();
    if c > cap {
        return Err(Error::ComponentSum(format!(
            "exhaustive subcurve enumeration refused: {c} components exceeds cap {cap}"
        )));
    }
    let mut out = Vec::with_capacity((1usize << c) - 1);
    for mask in 1u64..(1u64 << c) {
        out.push(ComponentSet::new((0..c).filter(|i| mask & (1 << i) != 0)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

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

    fn chain3() -> NodalCurve {
        NodalCurve::new(
            vec!["Z1".into(), "Z2".into(), "Z3".into()],
            vec![
                ("e1".into(), ("Z1".into(), rat(0)), ("Z2".into(), rat(0))),
                ("e2".into(), ("Z2".into(), rat(1)), ("Z3".into(), rat(0))),
            ],
        )
        .unwrap()
    }

    fn nodal_cubic() -> NodalCurve {
        NodalCurve::new(
            vec!["Z1".into()],
            vec![("e1".into(), ("Z1".into(), rat(0)), ("Z1".into(), rat(1)))],
        )
        .unwrap()
    }

    #[test]
    fn genus_examples() {
        let single = NodalCurve::new(vec!["Z1".into()], vec![]).unwrap();
        assert_eq!(single.arithmetic_genus().unwrap(), 0);
        assert_eq!(chain2().arithmetic_genus().unwrap(), 0);
        assert_eq!(cycle2().arithmetic_genus().unwrap(), 1);
        assert_eq!(nodal_cubic().arithmetic_genus().unwrap(), 1);
    }

    #[test]
    fn complement_examples() {
        let x = chain2();
        let z = ComponentSet::singleton(0);
        assert_eq!(x.complement(&z).unwrap(), ComponentSet::singleton(1));
        let x3 = chain3();
        assert_eq!(
            x3.complement(&ComponentSet::singleton(1)).unwrap(),
            ComponentSet::new([0, 2])
        );
        assert!(x.complement(&x.all_components()).is_err());
    }

    #[test]
    fn intersection_count_examples() {
        assert_eq!(
            chain2()
                .intersection_count(&ComponentSet::singleton(0))
                .unwrap(),
            1
        );
        assert_eq!(
            cycle2()
                .intersection_count(&ComponentSet::singleton(0))
                .unwrap(),
            2
        );
        // cycle2 with an extra self-node on Z1: self-nodes are internal
        let x = NodalCurve::new(
            vec!["Z1".into(), "Z2".into()],
            vec![
                ("e1".into(), ("Z1".into(), rat(0)), ("Z2".into(), rat(0))),
                ("e2".into(), ("Z1".into(), rat(1)), ("Z2".into(), rat(1))),
                ("e3".into(), ("Z1".into(), rat(2)), ("Z1".into(), rat(3))),
            ],
        )
        .unwrap();
        assert_eq!(
            x.intersection_count(&ComponentSet::singleton(0)).unwrap(),
            2
        );
    }

    #[test]
    fn b0_examples() {
        assert_eq!(
            chain3()
                .connected_components_count(&ComponentSet::new([0, 2]))
                .unwrap(),
            2
        );
        assert_eq!(
            cycle2()
                .connected_components_count(&ComponentSet::singleton(1))
                .unwrap(),
            1
        );
    }

    #[test]
    fn subcurve_genus_examples() {
        let x = cycle2();
        assert_eq!(x.dualizing_degree(&x.all_components()).unwrap(), 0);
        assert_eq!(x.subcurve_genus(&x.all_components()).unwrap(), 1);
        let c = chain2();
        assert_eq!(c.dualizing_degree(&ComponentSet::singleton(0)).unwrap(), -2);
        assert_eq!(c.subcurve_genus(&ComponentSet::singleton(0)).unwrap(), 0);
        let t = chain3();
        assert_eq!(t.dualizing_degree(&ComponentSet::new([0, 2])).unwrap(), -4);
        assert!(t.subcurve_genus(&ComponentSet::new([0, 2])).is_err());
    }

    #[test]
    fn blow_up_examples() {
        let x = cycle2();
        let y = x.blow_up_node(0).unwrap();
        assert!(y.is_connected());
        assert_eq!(y.arithmetic_genus().unwrap(), 0);
        assert_eq!(y.nodes().len(), 1);

        let c = chain2();
        let d = c.blow_up_node(0).unwrap();
        assert!(!d.is_connected());

        let n = nodal_cubic();
        let s = n.blow_up_node(0).unwrap();
        assert!(s.is_connected());
        assert_eq!(s.arithmetic_genus().unwrap(), 0);
        assert!(s.components()[0].branch_points.is_empty());
    }

    #[test]
    fn intersection_symmetry() {
        for x in [chain2(), cycle2(), chain3()] {
            for z in all_component_sums(&x, 12).unwrap() {
                if z.len() == x.components().len() {
                    continue;
                }
                let zp = x.complement(&z).unwrap();
                assert_eq!(
                    x.intersection_count(&z).unwrap(),
                    x.intersection_count(&zp).unwrap()
                );
            }
        }
    }

    #[test]
    fn genus_matches_subcurve_genus() {
        for x in [chain2(), cycle2(), chain3(), nodal_cubic()] {
            assert_eq!(
                x.arithmetic_genus().unwrap(),
                x.subcurve_genus(&x.all_components()).unwrap()
            );
        }
    }

    #[test]
    fn cross_incidence_count() {
        // sum over singleton components of n_Z = 2 * (number of cross nodes)
        // on curves without self-nodes
        for x in [chain2(), cycle2(), chain3()] {
            let total: i64 = (0..x.components().len())
                .map(|i| x.intersection_count(&ComponentSet::singleton(i)).unwrap())
                .sum();
            let cross = x.nodes().iter().filter(|n| !n.is_self_node()).count() as i64;
            assert_eq!(total, 2 * cross);
        }
    }

    #[test]
    fn blow_up_round_trip() {
        let x = cycle2();
        let y = x.blow_up_node(1).unwrap();
        let rebuilt = NodalCurve::new(
            y.components().iter().map(|c| c.id.clone()).collect(),
            y.nodes()
                .iter()
                .map(|n| {
                    (
                        n.id.clone(),
                        (y.components()[n.a.component].id.clone(), n.a.point.clone()),
                        (y.components()[n.b.component].id.clone(), n.b.point.clone()),
                    )
                })
                .chain(std::iter::once((
                    "e2".to_string(),
                    ("Z1".to_string(), rat(1)),
                    ("Z2".to_string(), rat(1)),
                )))
                .collect(),
        )
        .unwrap();
        assert_eq!(rebuilt.nodes().len(), x.nodes().len());
        assert_eq!(rebuilt.arithmetic_genus().unwrap(), 1);
    }

    #[test]
    fn validation_errors() {
        // duplicate branch point
        assert!(NodalCurve::new(
            vec!["Z1".into(), "Z2".into()],
            vec![
                ("e1".into(), ("Z1".into(), rat(0)), ("Z2".into(), rat(0))),
                ("e2".into(), ("Z1".into(), rat(0)), ("Z2".into(), rat(1))),
            ],
        )
        .is_err());
        // identical branches
        assert!(NodalCurve::new(
            vec!["Z1".into()],
            vec![("e1".into(), ("Z1".into(), rat(0)), ("Z1".into(), rat(0)))],
        )
        .is_err());
        // unknown component
        assert!(NodalCurve::new(
            vec!["Z1".into()],
            vec![("e1".into(), ("Z1".into(), rat(0)), ("Z9".into(), rat(1)))],
        )
        .is_err());
    }
}
