//! Degree guarantees for clasper surgery, and the residual tree of a
//! crossing change between two trees.
//!
//! Levels are the `k` of a `Y_k`-equivalence. Every guarantee names the
//! statement it comes from in `provenance`, in words.

use std::fmt;

use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::generators::theta_n;

/// `M` and the modified manifold are `Y_level`-equivalent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceGuarantee {
    pub level: usize,
    pub provenance: String,
    pub notes: Vec<String>,
}

impl EquivalenceGuarantee {
    fn new(level: usize, provenance: impl Into<String>) -> Self {
        EquivalenceGuarantee { level, provenance: provenance.into(), notes: Vec::new() }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

impl fmt::Display for EquivalenceGuarantee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y_{} ({})", self.level, self.provenance)?;
        for n in &self.notes {
            write!(f, "; {n}")?;
        }
        Ok(())
    }
}

fn at_least(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::DegreeTooSmall { n, min });
    }
    Ok(())
}

/// A `Y_n`-tree with `l` special leaves.
pub fn bound_special_leaves(n: usize, l: usize) -> Result<EquivalenceGuarantee> {
    at_least(n, 2)?;
    if l > n + 2 {
        return Err(Error::TooManyLeaves { leaves: l, max: n + 2 });
    }
    Ok(if l < n {
        EquivalenceGuarantee::new(n + l, "special-leaf table, l<n")
    } else if l == n {
        EquivalenceGuarantee::new(2 * n - 1, "special-leaf table, l=n").note(
            "Y_2n also holds if some leaf is 2k-special or a non-special leaf vanishes in H_1(M;Z/2)",
        )
    } else {
        EquivalenceGuarantee::new(2 * n, "special-leaf table, l>n")
    })
}

/// Surgery along an `(n+1)`-component Brunnian link with framings `1/m_i`.
/// `framings` may be empty when unknown.
pub fn bound_brunnian_surgery(n: usize, framings: &[i64]) -> Result<EquivalenceGuarantee> {
    at_least(n, 2)?;
    let g = if n == 2 {
        EquivalenceGuarantee::new(1, "Brunnian surgery, n=2")
    } else {
        EquivalenceGuarantee::new(2 * n - 2, "Brunnian surgery, n>=3")
    };
    Ok(if framings.contains(&0) {
        g.note("vacuous: a framing index is 0, so the surgery returns M itself")
    } else {
        g
    })
}

/// Surgeries with equal framings along two link-homotopic `(n+1)`-component
/// Brunnian links. `homology_sphere` enables the improvement to `2n`
/// available for integral homology spheres.
pub fn bound_link_homotopic(n: usize, homology_sphere: bool) -> Result<EquivalenceGuarantee> {
    at_least(n, 2)?;
    Ok(if homology_sphere {
        EquivalenceGuarantee::new(2 * n, "link-homotopic Brunnian surgery, integral homology sphere")
    } else {
        EquivalenceGuarantee::new(2 * n - 1, "link-homotopic Brunnian surgery")
    })
}

/// A `Y_n`-tree with an `m`-special leaf.
pub fn bound_one_special(n: usize, m: i64) -> Result<EquivalenceGuarantee> {
    at_least(n, 2)?;
    let g = EquivalenceGuarantee::new(n + 1, "one special leaf");
    Ok(if m == 0 { g.note("trivial leaf: surgery gives a manifold diffeomorphic to M") } else { g })
}

/// The target and level for a linear `Y_n`-tree whose leaves are all
/// `(-1)`-special.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearBound {
    pub target: Diagram,
    pub guarantee: EquivalenceGuarantee,
}

/// A linear `Y_n`-tree with only `(-1)`-special leaves is equivalent to
/// surgery on `Θ_n` in a ball, at level `2n+1`, or `2n+2` when `refined`.
pub fn bound_linear_all_minus_one(n: usize, refined: bool) -> Result<LinearBound> {
    at_least(n, 2)?;
    let guarantee = if refined {
        EquivalenceGuarantee::new(2 * n + 2, "linear tree with (-1)-special leaves, homology ball refinement")
    } else {
        EquivalenceGuarantee::new(2 * n + 1, "linear tree with (-1)-special leaves")
    };
    Ok(LinearBound { target: theta_n(n)?, guarantee: guarantee.note(format!("target Theta_{n}")) })
}

/// Decoration of a leaf of an abstract tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Leaf {
    Generic,
    /// Bounds a disk with framing `m`; `Special(0)` is a trivial leaf.
    Special(i64),
    /// A disk-leaf meeting the given link component.
    Disk(usize),
}

impl Leaf {
    pub fn trivial() -> Self {
        Leaf::Special(0)
    }

    pub fn is_special(self) -> bool {
        matches!(self, Leaf::Special(_))
    }
}

/// A `Y_n`-tree known only through its node count and leaves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbstractTree {
    pub degree: usize,
    pub leaves: Vec<Leaf>,
    pub linear: bool,
}

impl AbstractTree {
    pub fn new(degree: usize, leaves: Vec<Leaf>, linear: bool) -> Result<Self> {
        if degree == 0 {
            return Err(Error::DegreeTooSmall { n: 0, min: 1 });
        }
        if leaves.len() != degree + 2 {
            return Err(Error::InvalidArgument(format!(
                "a tree with {degree} nodes has {} leaves, got {}",
                degree + 2,
                leaves.len()
            )));
        }
        Ok(AbstractTree { degree, leaves, linear })
    }

    /// A tree whose leaves are all generic.
    pub fn generic(degree: usize) -> Self {
        AbstractTree { degree, leaves: vec![Leaf::Generic; degree + 2], linear: degree <= 2 }
    }

    /// Edges, counting the `n+2` leaf edges and `n-1` internal ones.
    pub fn num_edges(&self) -> usize {
        2 * self.degree + 1
    }

    pub fn special_leaves(&self) -> usize {
        self.leaves.iter().filter(|l| l.is_special()).count()
    }

    /// The special-leaf table applied to this tree.
    pub fn bound(&self) -> Result<EquivalenceGuarantee> {
        bound_special_leaves(self.degree, self.special_leaves())
    }
}

/// Part of a tree taking part in a crossing change.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Site {
    Edge(usize),
    Leaf(usize),
}

impl Site {
    fn check(self, t: &AbstractTree, which: &str) -> Result<()> {
        let (i, max, kind) = match self {
            Site::Edge(e) => (e, t.num_edges(), "edge"),
            Site::Leaf(f) => (f, t.leaves.len(), "leaf"),
        };
        if i >= max {
            return Err(Error::BadSite(format!("{kind} {i} of the {which} tree (it has {max})")));
        }
        Ok(())
    }
}

/// How the residual tree is formed from the two trees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ResidualShape {
    /// New nodes inside both edges, joined by a new edge.
    JoinedNodes { edge1: usize, edge2: usize },
    /// A new node inside `edge` of tree `on_tree`, joined to the edge at
    /// `leaf` of the other tree, which loses that leaf.
    NodeToStem { on_tree: usize, edge: usize, leaf: usize },
    /// The edges at both leaves are joined into one; both leaves go.
    FusedStems { leaf1: usize, leaf2: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingResidual {
    /// Number of edges involved in the crossing change.
    pub edges_involved: usize,
    pub plain: EquivalenceGuarantee,
    pub refined: EquivalenceGuarantee,
    pub residual: AbstractTree,
    pub shape: ResidualShape,
}

/// A crossing change between `site1` of `t1` and `site2` of `t2`: the plain
/// level `k1+k2+C`, the level `k1+k2+C+1` reached once a parallel copy of
/// the residual tree is added, and that tree. The residual is marked linear
/// only when it has at most two nodes.
pub fn crossing_change_residual(
    t1: &AbstractTree,
    t2: &AbstractTree,
    site1: Site,
    site2: Site,
) -> Result<CrossingResidual> {
    site1.check(t1, "first")?;
    site2.check(t2, "second")?;
    let without = |t: &AbstractTree, f: Option<usize>| -> Vec<Leaf> {
        t.leaves.iter().enumerate().filter(|&(i, _)| Some(i) != f).map(|(_, &l)| l).collect()
    };
    let (c, shape, drop1, drop2) = match (site1, site2) {
        (Site::Edge(edge1), Site::Edge(edge2)) => (2, ResidualShape::JoinedNodes { edge1, edge2 }, None, None),
        (Site::Edge(edge), Site::Leaf(leaf)) => (1, ResidualShape::NodeToStem { on_tree: 1, edge, leaf }, None, Some(leaf)),
        (Site::Leaf(leaf), Site::Edge(edge)) => (1, ResidualShape::NodeToStem { on_tree: 2, edge, leaf }, Some(leaf), None),
        (Site::Leaf(leaf1), Site::Leaf(leaf2)) => (0, ResidualShape::FusedStems { leaf1, leaf2 }, Some(leaf1), Some(leaf2)),
    };
    let level = t1.degree + t2.degree + c;
    let mut leaves = without(t1, drop1);
    leaves.extend(without(t2, drop2));
    let residual = AbstractTree { degree: level, leaves, linear: level <= 2 };
    let cases = ["two leaves", "an edge and a leaf", "two edges"];
    Ok(CrossingResidual {
        edges_involved: c,
        plain: EquivalenceGuarantee::new(level, format!("crossing change of {}", cases[c])),
        refined: EquivalenceGuarantee::new(level + 1, format!("crossing change of {}, with residual tree", cases[c])),
        residual,
        shape,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn table_anchors() {
        assert_eq!(bound_special_leaves(3, 2).unwrap().level, 5);
        assert_eq!(bound_special_leaves(3, 3).unwrap().level, 5);
        assert_eq!(bound_special_leaves(4, 5).unwrap().level, 8);
        assert_eq!(bound_special_leaves(1, 0), Err(Error::DegreeTooSmall { n: 1, min: 2 }));
        assert_eq!(bound_special_leaves(3, 6), Err(Error::TooManyLeaves { leaves: 6, max: 5 }));
        assert_eq!(bound_special_leaves(3, 3).unwrap().provenance, "special-leaf table, l=n");
    }

    #[test]
    fn brunnian_and_link_homotopy() {
        assert_eq!(bound_brunnian_surgery(2, &[]).unwrap().level, 1);
        assert_eq!(bound_brunnian_surgery(3, &[]).unwrap().level, 4);
        assert_eq!(bound_brunnian_surgery(5, &[1, 1, 1, 1, 1, 1]).unwrap().level, 8);
        assert!(bound_brunnian_surgery(3, &[1, 0, 2, 1]).unwrap().notes[0].starts_with("vacuous"));
        assert!(bound_brunnian_surgery(1, &[]).is_err());
        assert_eq!(bound_link_homotopic(2, false).unwrap().level, 3);
        assert_eq!(bound_link_homotopic(4, false).unwrap().level, 7);
        assert_eq!(bound_link_homotopic(4, true).unwrap().level, 8);
    }

    #[test]
    fn one_special_ignores_framing() {
        assert_eq!(bound_one_special(2, -1).unwrap().level, 3);
        assert_eq!(bound_one_special(5, 7).unwrap().level, 6);
        let g = bound_one_special(2, 0).unwrap();
        assert_eq!(g.level, 3);
        assert!(g.notes[0].contains("diffeomorphic"));
    }

    #[test]
    fn linear_minus_one() {
        let b = bound_linear_all_minus_one(2, false).unwrap();
        assert_eq!(b.guarantee.level, 5);
        assert_eq!(b.target, theta_n(2).unwrap());
        assert_eq!(bound_linear_all_minus_one(3, false).unwrap().guarantee.level, 7);
        assert_eq!(bound_linear_all_minus_one(2, true).unwrap().guarantee.level, 6);
    }

    #[test]
    fn crossing_cases() {
        let r = crossing_change_residual(&AbstractTree::generic(2), &AbstractTree::generic(3), Site::Edge(0), Site::Edge(1)).unwrap();
        assert_eq!((r.edges_involved, r.plain.level, r.residual.degree), (2, 7, 7));
        let r = crossing_change_residual(&AbstractTree::generic(1), &AbstractTree::generic(1), Site::Edge(0), Site::Leaf(0)).unwrap();
        assert_eq!((r.edges_involved, r.plain.level, r.residual.degree), (1, 3, 3));
        let r = crossing_change_residual(&AbstractTree::generic(2), &AbstractTree::generic(2), Site::Leaf(0), Site::Leaf(3)).unwrap();
        assert_eq!((r.edges_involved, r.plain.level, r.refined.level), (0, 4, 5));
        assert_eq!(r.shape, ResidualShape::FusedStems { leaf1: 0, leaf2: 3 });
        assert!(matches!(
            crossing_change_residual(&AbstractTree::generic(1), &AbstractTree::generic(1), Site::Edge(3), Site::Leaf(0)),
            Err(Error::BadSite(_))
        ));
    }

    #[test]
    fn tree_validation() {
        assert!(AbstractTree::new(2, vec![Leaf::Generic; 3], false).is_err());
        let t = AbstractTree::new(3, vec![Leaf::Special(-1), Leaf::trivial(), Leaf::Disk(0), Leaf::Generic, Leaf::Generic], true).unwrap();
        assert_eq!(t.special_leaves(), 2);
        assert_eq!(t.bound().unwrap().level, 5);
    }

    proptest! {
        #[test]
        fn table_is_monotone_and_capped(n in 2usize..40) {
            let mut last = 0;
            for l in 0..=n + 2 {
                let k = bound_special_leaves(n, l).unwrap().level;
                prop_assert!(k >= last && k <= 2 * n);
                last = k;
            }
            prop_assert_eq!(bound_special_leaves(n, n - 1).unwrap().level, bound_special_leaves(n, n).unwrap().level);
        }

        #[test]
        fn residual_leaves_are_the_unconsumed_ones(
            k1 in 1usize..6, k2 in 1usize..6, e1 in any::<bool>(), e2 in any::<bool>(), i in 0usize..100, j in 0usize..100,
        ) {
            let t1 = AbstractTree::new(k1, (0..k1 + 2).map(Leaf::Disk).collect(), false).unwrap();
            let t2 = AbstractTree::new(k2, (0..k2 + 2).map(|x| Leaf::Disk(100 + x)).collect(), false).unwrap();
            let s1 = if e1 { Site::Edge(i % t1.num_edges()) } else { Site::Leaf(i % (k1 + 2)) };
            let s2 = if e2 { Site::Edge(j % t2.num_edges()) } else { Site::Leaf(j % (k2 + 2)) };
            let r = crossing_change_residual(&t1, &t2, s1, s2).unwrap();
            let c = e1 as usize + e2 as usize;
            prop_assert_eq!(r.edges_involved, c);
            prop_assert_eq!(r.residual.degree, k1 + k2 + c);
            prop_assert_eq!(r.refined.level, r.plain.level + 1);
            prop_assert_eq!(r.residual.leaves.len(), r.residual.degree + 2);
            let mut expect: Vec<Leaf> = t1.leaves.iter().chain(&t2.leaves).copied().collect();
            if let Site::Leaf(f) = s1 { expect.retain(|&l| l != Leaf::Disk(f)); }
            if let Site::Leaf(f) = s2 { expect.retain(|&l| l != Leaf::Disk(100 + f)); }
            prop_assert_eq!(r.residual.leaves.clone(), expect);
        }
    }
}
