//! Explicit generator families: the linear trees `T_σ`, their gluing, the
//! diagrams `Γ_σ`, circle insertion into closed diagrams, the doubled linear
//! trees `Θ_n`, and IHX linearization of trees.
//!
//! Conventions. Permutations are 1-based: `sigma[j-1] = σ(j)`. Circle `i - 1`
//! stands for the component `U_i`. In `t_sigma(n, σ)` vertex `k` (0-based)
//! has cyclic order `(prev, leg, next)` along the line, and leg `c` sits on
//! circle `c`. Gluing turns the second tree over, so its vertices have the
//! reversed order `(prev, next, leg)`; this matches a planar drawing with the
//! first tree on top, legs pointing down, and the second below it, legs
//! pointing up.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::diagram::{Diagram, DiagramBuilder, Endpoint};
use crate::error::{Error, Result};
use crate::formal::{FormalSum, Q};
use crate::relations::{ihx_terms, RelationSelector};
use crate::space::{build_space, QuotientSpace, SpaceSpec};

/// A diagram whose trivalent part is a tree, each leg on a circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDiagram {
    diagram: Diagram,
    ends: Option<(usize, usize)>,
    linear: bool,
}

impl TreeDiagram {
    /// Wrap a tree. `linear` records whether the vertices form a path.
    pub fn new(diagram: Diagram) -> Result<Self> {
        check_tree(&diagram)?;
        let linear = is_caterpillar(&diagram);
        Ok(TreeDiagram { diagram, ends: None, linear })
    }

    /// Wrap a tree that is linear with the given ends.
    pub fn with_ends(diagram: Diagram, end1: usize, end2: usize) -> Result<Self> {
        if !is_linear(&diagram, end1, end2)? {
            return Err(Error::NotATree(format!("l{end1} and l{end2} are not the ends of a linear tree")));
        }
        Ok(TreeDiagram { diagram, ends: Some((end1, end2)), linear: true })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn into_diagram(self) -> Diagram {
        self.diagram
    }

    pub fn ends(&self) -> Option<(usize, usize)> {
        self.ends
    }

    pub fn is_linear(&self) -> bool {
        self.linear
    }

    /// Circle carrying each leg.
    pub fn leg_circles(&self) -> Vec<usize> {
        (0..self.diagram.num_legs()).map(|l| self.diagram.leg_circle(l)).collect()
    }
}

/// Check that `sigma` lists `1..=k` in some order.
pub fn check_permutation(sigma: &[usize], k: usize) -> Result<()> {
    let mut seen = vec![false; k];
    let ok = sigma.len() == k
        && sigma.iter().all(|&s| {
            if s == 0 || s > k || seen[s - 1] {
                return false;
            }
            seen[s - 1] = true;
            true
        });
    if ok {
        Ok(())
    } else {
        Err(Error::BadPermutation(format!("{sigma:?}"), k))
    }
}

/// All permutations of `1..=k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::DegreeTooSmall { n, min });
    }
    Ok(())
}

/// The simple linear tree with `n - 1` vertices whose legs meet the circles
/// `U_{n+1}, U_σ(1), ..., U_σ(n-1), U_n` along the line. Its ends are the
/// legs on `U_{n+1}` and `U_n`.
pub fn t_sigma(n: usize, sigma: &[usize]) -> Result<TreeDiagram> {
    check_n(n, 2)?;
    check_permutation(sigma, n - 1)?;
    let mut seq = vec![n];
    seq.extend(sigma.iter().map(|s| s - 1));
    seq.push(n - 1);

    let mut b = DiagramBuilder::new();
    for c in 0..=n {
        b.add_circle();
        b.add_leg(c);
    }
    let last = n - 2;
    b.add_vertices(n - 1);
    for k in 0..=last {
        let prev = if k == 0 { Endpoint::Leg(seq[0]) } else { Endpoint::Slot(k - 1, 2) };
        b.connect(prev, Endpoint::Slot(k, 0));
        b.connect(Endpoint::Leg(seq[k + 1]), Endpoint::Slot(k, 1));
    }
    b.connect(Endpoint::Slot(last, 2), Endpoint::Leg(seq[n]));
    let diagram = b.build()?;
    Ok(TreeDiagram { diagram, ends: Some((n, n - 1)), linear: true })
}

/// Join two trees leg by leg: for every circle the edge at its leg in `t`
/// and the edge at its leg in `u` become one edge. The vertices of `u`
/// come second, with reversed cyclic orders.
pub fn glue_trees(t: &TreeDiagram, u: &TreeDiagram) -> Result<Diagram> {
    let (a, b) = (t.diagram(), u.diagram());
    if a.num_circles() != b.num_circles() {
        return Err(Error::LegMultiplicityMismatch(format!(
            "{} circles against {}",
            a.num_circles(),
            b.num_circles()
        )));
    }
    for (name, d) in [("first", a), ("second", b)] {
        if let Some(c) = d.leg_profile().iter().position(|&k| k != 1) {
            return Err(Error::LegMultiplicityMismatch(format!(
                "circle {c} carries {} legs in the {name} tree",
                d.leg_profile()[c]
            )));
        }
    }
    let shift = a.num_vertices();
    let left = |e: Endpoint| e;
    let right = |e: Endpoint| match e {
        Endpoint::Slot(v, s) => Endpoint::Slot(v + shift, (3 - s) % 3),
        leg => leg,
    };
    let mut g = DiagramBuilder::new();
    g.add_vertices(shift + b.num_vertices());
    for (d, map) in [(a, &left as &dyn Fn(Endpoint) -> Endpoint), (b, &right)] {
        for (x, y) in d.edges() {
            if !d.is_leg_dart(x) && !d.is_leg_dart(y) {
                g.connect(map(d.endpoint(x)), map(d.endpoint(y)));
            }
        }
    }
    for c in 0..a.num_circles() {
        let x = a.partner(a.leg_dart(a.circles()[c][0] as usize));
        let y = b.partner(b.leg_dart(b.circles()[c][0] as usize));
        if a.is_leg_dart(x) || b.is_leg_dart(y) {
            return Err(Error::LegMultiplicityMismatch("a tree with a bare chord cannot be glued".into()));
        }
        g.connect(left(a.endpoint(x)), right(b.endpoint(y)));
    }
    g.build()
}

/// `Γ_σ` drawn directly: a top path `p_1..p_{n-1}` with orders
/// `(prev, down, next)`, a bottom path `q_1..q_{n-1}` with orders
/// `(prev, next, up)`, the ends joined `p_1-q_1` and `p_{n-1}-q_{n-1}`, and a
/// rung from `p_i` to `q_j` whenever `σ(j) = i`.
pub fn gamma_sigma(n: usize, sigma: &[usize]) -> Result<Diagram> {
    check_n(n, 2)?;
    check_permutation(sigma, n - 1)?;
    let m = n - 1;
    let p = |i: usize, s: usize| Endpoint::Slot(i - 1, s);
    let q = |j: usize, s: usize| Endpoint::Slot(m + j - 1, s);
    let (prev, down, next) = (0, 1, 2);
    let (qprev, qnext, up) = (0, 1, 2);
    let mut b = DiagramBuilder::new();
    b.add_vertices(2 * m);
    for i in 1..m {
        b.connect(p(i, next), p(i + 1, prev));
        b.connect(q(i, qnext), q(i + 1, qprev));
    }
    b.connect(p(1, prev), q(1, qprev));
    b.connect(p(m, next), q(m, qnext));
    for (j, &i) in sigma.iter().enumerate() {
        b.connect(p(i, down), q(j + 1, up));
    }
    b.build()
}

/// The connected legless diagram with `2n` vertices obtained by gluing the
/// linear tree with `n` vertices to a copy of itself: two paths of length
/// `n` joined by a rung at every vertex and by an extra edge at each end.
/// For `n = 1` this is θ.
pub fn theta_n(n: usize) -> Result<Diagram> {
    check_n(n, 1)?;
    let top = |i: usize, s: usize| Endpoint::Slot(i, s);
    let bot = |i: usize, s: usize| Endpoint::Slot(n + i, s);
    let mut b = DiagramBuilder::new();
    b.add_vertices(2 * n);
    for i in 0..n - 1 {
        b.connect(top(i, 2), top(i + 1, 0));
        b.connect(bot(i, 1), bot(i + 1, 0));
    }
    b.connect(top(0, 0), bot(0, 0));
    b.connect(top(n - 1, 2), bot(n - 1, 1));
    for i in 0..n {
        b.connect(top(i, 1), bot(i, 2));
    }
    b.build()
}

/// Where each inserted circle goes: an edge (index into
/// [`Diagram::edges`]) and an ordinal fixing the order of circles sharing
/// that edge, read from the lower dart of the edge to the higher.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct InsertionSpec {
    pub placements: Vec<(usize, usize)>,
}

impl InsertionSpec {
    pub fn new(placements: Vec<(usize, usize)>) -> Self {
        InsertionSpec { placements }
    }

    /// One circle per edge, circle `i` on edge `i`.
    pub fn one_per_edge(circles: usize) -> Self {
        InsertionSpec { placements: (0..circles).map(|e| (e, 0)).collect() }
    }
}

/// Cut edges of the legless connected diagram `gamma` with `deg + 2`
/// ordered circles, where `deg` is the degree of `gamma`. Each circle gets
/// two consecutive legs, the first towards the lower dart of its edge.
pub fn insert_circles(gamma: &Diagram, spec: &InsertionSpec) -> Result<Diagram> {
    if gamma.num_legs() > 0 || gamma.num_circles() > 0 {
        return Err(Error::BadInsertion("the target must be a closed diagram".into()));
    }
    if !gamma.is_connected() || gamma.num_vertices() == 0 {
        return Err(Error::BadInsertion("the target must be connected and nonempty".into()));
    }
    let expected = gamma.degree() + 2;
    if spec.placements.len() != expected {
        return Err(Error::IncompleteSpec { given: spec.placements.len(), expected });
    }
    let edges = gamma.edges();
    let mut on_edge: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, &(e, ord)) in spec.placements.iter().enumerate() {
        if e >= edges.len() {
            return Err(Error::EdgeOutOfRange { edge: e, edges: edges.len() });
        }
        on_edge.entry(e).or_default().push((ord, c));
    }
    let mut b = DiagramBuilder::new();
    b.add_vertices(gamma.num_vertices());
    for c in 0..expected {
        b.add_circle();
        b.add_leg(c);
        b.add_leg(c);
    }
    for (e, &(x, y)) in edges.iter().enumerate() {
        let mut chain = on_edge.remove(&e).unwrap_or_default();
        chain.sort_unstable();
        if chain.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::BadInsertion(format!("two circles share ordinal {} on edge {e}", chain[0].0)));
        }
        let mut from = gamma.endpoint(x);
        for &(_, c) in &chain {
            b.connect(from, Endpoint::Leg(2 * c));
            from = Endpoint::Leg(2 * c + 1);
        }
        b.connect(from, gamma.endpoint(y));
    }
    b.build()
}

/// Every complete insertion spec for `gamma`, in a fixed order: each
/// assignment of the `deg + 2` circles to edges, with every linear order of
/// the circles sharing an edge.
pub fn insertion_specs(gamma: &Diagram) -> Vec<InsertionSpec> {
    fn rec(c: usize, total: usize, edges: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<InsertionSpec>) {
        if c == total {
            let mut placements = vec![(0, 0); total];
            for (e, chain) in cur.iter().enumerate() {
                for (ord, &k) in chain.iter().enumerate() {
                    placements[k] = (e, ord);
                }
            }
            out.push(InsertionSpec { placements });
            return;
        }
        for e in 0..edges {
            for pos in 0..=cur[e].len() {
                cur[e].insert(pos, c);
                rec(c + 1, total, edges, cur, out);
                cur[e].remove(pos);
            }
        }
    }
    let edges = gamma.num_edges();
    let mut out = Vec::new();
    rec(0, gamma.degree() + 2, edges, &mut vec![Vec::new(); edges], &mut out);
    out
}

/// The connected AS+IHX+STU space where insertions into `gamma` live.
pub fn insertion_space_spec(gamma: &Diagram) -> SpaceSpec {
    let n = gamma.degree() + 1;
    SpaceSpec::on_circles(2 * n, n + 1).connected(true)
}

/// Reduced coordinates of each insertion in `space`.
pub fn insertion_classes(space: &QuotientSpace, gamma: &Diagram, specs: &[InsertionSpec]) -> Result<Vec<Vec<Q>>> {
    specs.iter().map(|s| space.reduce(&FormalSum::from_diagram(&insert_circles(gamma, s)?))).collect()
}

/// Whether all `specs` give the same class.
pub fn insertion_class_check(gamma: &Diagram, specs: &[InsertionSpec]) -> Result<bool> {
    for s in specs {
        insert_circles(gamma, s)?;
    }
    if specs.len() < 2 {
        return Ok(true);
    }
    let space = build_space(&insertion_space_spec(gamma))?;
    let classes = insertion_classes(&space, gamma, specs)?;
    Ok(classes.windows(2).all(|w| w[0] == w[1]))
}

/// `Ok` if the trivalent part of `d` is a tree and every leg hangs off it.
/// A single chord (two legs joined to each other) also counts.
pub fn check_tree(d: &Diagram) -> Result<()> {
    let nv = d.num_vertices();
    if nv == 0 {
        return if d.num_legs() == 2 && d.partner(d.leg_dart(0)) == d.leg_dart(1) {
            Ok(())
        } else {
            Err(Error::NotATree("no trivalent vertex and not a single chord".into()))
        };
    }
    if d.has_self_loop() {
        return Err(Error::NotATree("self-loop".into()));
    }
    for l in 0..d.num_legs() {
        if d.is_leg_dart(d.partner(d.leg_dart(l))) {
            return Err(Error::NotATree(format!("l{l} is joined to another leg")));
        }
    }
    let internal = d.edges().iter().filter(|&&(x, y)| !d.is_leg_dart(x) && !d.is_leg_dart(y)).count();
    if internal != nv - 1 || !d.is_connected() {
        return Err(Error::NotATree(format!("{nv} vertices with {internal} internal edges")));
    }
    Ok(())
}

fn check_ends(d: &Diagram, end1: usize, end2: usize) -> Result<()> {
    check_tree(d)?;
    if end1 == end2 {
        return Err(Error::SameEnds);
    }
    for e in [end1, end2] {
        if e >= d.num_legs() {
            return Err(Error::InvalidArgument(format!("l{e} is not a leg")));
        }
    }
    Ok(())
}

/// Vertices on the path from the vertex of `end1` to that of `end2`.
fn spine(d: &Diagram, end1: usize, end2: usize) -> Vec<usize> {
    let start = d.vertex_of(d.partner(d.leg_dart(end1))).unwrap();
    let goal = d.vertex_of(d.partner(d.leg_dart(end2))).unwrap();
    let mut parent = vec![usize::MAX; d.num_vertices()];
    parent[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for x in 3 * v..3 * v + 3 {
            if let Some(w) = d.vertex_of(d.partner(x)) {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut path = vec![goal];
    while *path.last().unwrap() != start {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    path
}

/// Whether `d` is a linear tree with ends `end1` and `end2`, meaning every
/// vertex lies on the path between them.
pub fn is_linear(d: &Diagram, end1: usize, end2: usize) -> Result<bool> {
    check_ends(d, end1, end2)?;
    if d.num_vertices() == 0 {
        return Ok(true);
    }
    Ok(spine(d, end1, end2).len() == d.num_vertices())
}

/// Whether the vertices of the tree `d` form a path.
fn is_caterpillar(d: &Diagram) -> bool {
    (0..d.num_vertices()).all(|v| (3 * v..3 * v + 3).filter(|&x| d.vertex_of(d.partner(x)).is_some()).count() <= 2)
}

/// Rewrite the tree `d` as a signed sum of linear trees with ends `end1` and
/// `end2`, equal to `d` modulo IHX. Each step applies `I = H - X` at the
/// branching edge nearest `end1`, which moves one vertex onto the spine.
pub fn linearize(d: &Diagram, end1: usize, end2: usize) -> Result<FormalSum> {
    check_ends(d, end1, end2)?;
    let mut out = FormalSum::new();
    linearize_into(d, end1, end2, Q::from_integer(1.into()), &mut out);
    Ok(out)
}

fn linearize_into(d: &Diagram, end1: usize, end2: usize, coef: Q, out: &mut FormalSum) {
    if d.num_vertices() == 0 {
        out.add_diagram(d, coef);
        return;
    }
    let path = spine(d, end1, end2);
    let mut on_path = vec![false; d.num_vertices()];
    for &v in &path {
        on_path[v] = true;
    }
    let branch = path.iter().find_map(|&v| {
        (3 * v..3 * v + 3).find_map(|x| {
            let y = d.partner(x);
            d.vertex_of(y).filter(|&w| !on_path[w]).map(|_| (x, y))
        })
    });
    match branch {
        None => out.add_diagram(d, coef),
        Some((x, y)) => {
            let [_, h, xd] = ihx_terms(d, x, y);
            linearize_into(&h, end1, end2, coef.clone(), out);
            linearize_into(&xd, end1, end2, -coef, out);
        }
    }
}

/// The AS+IHX space of connected trees with `nodes` vertices, every leg on
/// its own circle.
pub fn tree_space_spec(nodes: usize) -> SpaceSpec {
    SpaceSpec::on_circles(nodes + 1, nodes + 2)
        .selector(RelationSelector::AsIhx)
        .connected(true)
        .legs(vec![1; nodes + 2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{canonical_form, is_isomorphic};
    use crate::classform::class_form;
    use crate::diagram::fixtures::theta;
    use crate::enumerate::{enumerate_classes, EnumSpec};
    use crate::space::build_space;

    fn id(k: usize) -> Vec<usize> {
        (1..=k).collect()
    }

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(3)[1], vec![1, 3, 2]);
        assert!(check_permutation(&[1, 1], 2).is_err());
        assert!(check_permutation(&[2, 3], 2).is_err());
    }

    #[test]
    fn t_sigma_two_is_a_y() {
        let t = t_sigma(2, &[1]).unwrap();
        let d = t.diagram();
        assert_eq!(d.num_vertices(), 1);
        let circles: Vec<usize> = (0..3).map(|s| match d.endpoint(d.partner(s)) {
            Endpoint::Leg(l) => d.leg_circle(l) + 1,
            _ => unreachable!(),
        }).collect();
        assert_eq!(circles, vec![3, 1, 2]);
        assert!(t.is_linear());
        assert_eq!(t.ends(), Some((2, 1)));
    }

    #[test]
    fn t_sigma_swap_changes_middle_legs_only() {
        let a = t_sigma(3, &[1, 2]).unwrap();
        let b = t_sigma(3, &[2, 1]).unwrap();
        let (da, db) = (a.diagram(), b.diagram());
        for x in 0..6 {
            let (ea, eb) = (da.endpoint(da.partner(x)), db.endpoint(db.partner(x)));
            match (ea, eb) {
                (Endpoint::Leg(la), Endpoint::Leg(lb)) if x % 3 == 1 => {
                    assert_eq!(da.leg_circle(la) + db.leg_circle(lb), 1);
                    assert_ne!(la, lb);
                }
                _ => assert_eq!(ea, eb),
            }
        }
        assert!(t_sigma(3, &[1, 3]).is_err());
        assert!(t_sigma(1, &[]).is_err());
    }

    #[test]
    fn t_sigma_legs_are_simple() {
        for n in 2..=5 {
            for s in permutations(n - 1) {
                let t = t_sigma(n, &s).unwrap();
                assert_eq!(t.diagram().num_legs(), n + 1);
                assert_eq!(t.diagram().leg_profile(), vec![1; n + 1]);
                let (e1, e2) = t.ends().unwrap();
                assert!(is_linear(t.diagram(), e1, e2).unwrap());
            }
        }
    }

    #[test]
    fn glue_of_two_ys_is_theta() {
        let t = t_sigma(2, &[1]).unwrap();
        let g = glue_trees(&t, &t).unwrap();
        let closed = enumerate_classes(&EnumSpec::new(1, 0).connected(true)).unwrap();
        assert_eq!(closed.len(), 1);
        assert_eq!(class_form(&g).code, closed[0].class);
        assert_eq!(class_form(&g).code, class_form(&theta()).code);
        assert!(!g.has_self_loop());
    }

    #[test]
    fn glue_rejects_mismatched_trees() {
        let a = t_sigma(2, &[1]).unwrap();
        let b = t_sigma(3, &[1, 2]).unwrap();
        assert!(matches!(glue_trees(&a, &b), Err(Error::LegMultiplicityMismatch(_))));
    }

    #[test]
    fn gluing_identity_up_to_five() {
        for n in 2..=5 {
            let base = t_sigma(n, &id(n - 1)).unwrap();
            for s in permutations(n - 1) {
                let g = gamma_sigma(n, &s).unwrap();
                let glued = glue_trees(&base, &t_sigma(n, &s).unwrap()).unwrap();
                assert_eq!(canonical_form(&g), canonical_form(&glued), "n={n} sigma={s:?}");
                assert!(g.is_connected() && g.num_legs() == 0 && g.degree() == n - 1);
            }
        }
    }

    #[test]
    fn any_two_trees_glue_to_connected_diagrams() {
        for n in 2..=4 {
            for s in permutations(n - 1) {
                for s2 in permutations(n - 1) {
                    let g = glue_trees(&t_sigma(n, &s).unwrap(), &t_sigma(n, &s2).unwrap()).unwrap();
                    assert!(g.is_connected());
                    assert_eq!((g.num_legs(), g.degree()), (0, n - 1));
                }
            }
        }
    }

    #[test]
    fn gammas_span_degree_two() {
        let space = build_space(&SpaceSpec::connected_closed(2)).unwrap();
        let gens: Vec<FormalSum> =
            permutations(2).iter().map(|s| FormalSum::from_diagram(&gamma_sigma(3, s).unwrap())).collect();
        assert_eq!(space.subspace_rank(&gens).unwrap(), space.rank());
    }

    #[test]
    fn theta_n_shape() {
        for n in 1..=6 {
            let t = theta_n(n).unwrap();
            assert_eq!((t.num_vertices(), t.num_edges(), t.num_legs()), (2 * n, 3 * n, 0));
            assert!(t.is_connected());
            assert!(!t.has_self_loop());
        }
        assert!(is_isomorphic(&theta_n(1).unwrap(), &glue_trees(&t_sigma(2, &[1]).unwrap(), &t_sigma(2, &[1]).unwrap()).unwrap()));
        assert!(is_isomorphic(&theta_n(3).unwrap(), &gamma_sigma(4, &id(3)).unwrap()));
    }

    #[test]
    fn insertion_degrees_and_errors() {
        let t = theta();
        let d = insert_circles(&t, &InsertionSpec::one_per_edge(3)).unwrap();
        assert_eq!((d.degree(), d.num_circles()), (4, 3));
        assert_eq!(d.leg_profile(), vec![2, 2, 2]);
        assert!(!d.has_self_loop());
        let stacked = insert_circles(&t, &InsertionSpec::new(vec![(1, 0), (1, 1), (1, 2)])).unwrap();
        assert_eq!(stacked.degree(), 4);
        assert_eq!(
            insert_circles(&t, &InsertionSpec::new(vec![(0, 0), (1, 0)])),
            Err(Error::IncompleteSpec { given: 2, expected: 3 })
        );
        assert_eq!(
            insert_circles(&t, &InsertionSpec::new(vec![(0, 0), (1, 0), (3, 0)])),
            Err(Error::EdgeOutOfRange { edge: 3, edges: 3 })
        );
        assert!(matches!(
            insert_circles(&t, &InsertionSpec::new(vec![(0, 0), (0, 0), (1, 0)])),
            Err(Error::BadInsertion(_))
        ));
    }

    #[test]
    fn sixty_specs_for_theta() {
        let specs = insertion_specs(&theta());
        assert_eq!(specs.len(), 60);
        let mut sorted = specs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 60);
    }

    #[test]
    fn automorphic_insertions_agree() {
        let t = theta();
        // rotating the three edges of theta is an automorphism
        let a = insert_circles(&t, &InsertionSpec::new(vec![(0, 0), (1, 0), (2, 0)])).unwrap();
        let b = insert_circles(&t, &InsertionSpec::new(vec![(1, 0), (2, 0), (0, 0)])).unwrap();
        assert!(is_isomorphic(&a, &b));
        assert!(insertion_class_check(&t, &[InsertionSpec::one_per_edge(3)]).unwrap());
    }

    #[test]
    fn one_per_edge_equals_two_on_one_edge() {
        let specs = [InsertionSpec::one_per_edge(3), InsertionSpec::new(vec![(0, 0), (0, 1), (1, 0)])];
        assert!(insertion_class_check(&theta(), &specs).unwrap());
    }

    fn tripod_branch() -> (Diagram, usize, usize) {
        // a centre joined to three vertices, each with two legs
        let mut b = DiagramBuilder::new();
        let c = b.add_vertex();
        let arms = b.add_vertices(3);
        for (s, v) in arms.enumerate() {
            b.connect(Endpoint::Slot(c, s), Endpoint::Slot(v, 0));
            for t in 1..3 {
                let k = b.add_circle();
                let l = b.add_leg(k);
                b.connect(Endpoint::Slot(v, t), Endpoint::Leg(l));
            }
        }
        (b.build().unwrap(), 0, 5)
    }

    #[test]
    fn linear_tree_is_fixed() {
        let t = t_sigma(4, &[2, 3, 1]).unwrap();
        let (e1, e2) = t.ends().unwrap();
        let out = linearize(t.diagram(), e1, e2).unwrap();
        assert_eq!(out, FormalSum::from_diagram(t.diagram()));
    }

    #[test]
    fn branched_tree_linearizes_in_quotient() {
        let (d, e1, e2) = tripod_branch();
        assert!(!is_linear(&d, e1, e2).unwrap());
        let out = linearize(&d, e1, e2).unwrap();
        assert!(!out.is_empty());
        for (code, _) in out.iter() {
            let t = code.decode().unwrap();
            assert_eq!(t.degree(), d.degree());
        }
        let space = build_space(&tree_space_spec(4)).unwrap();
        let diff = FormalSum::from_diagram(&d) - out;
        assert!(space.reduces_to_zero(&diff).unwrap());
    }

    #[test]
    fn linearize_errors() {
        let (d, _, _) = tripod_branch();
        assert_eq!(linearize(&d, 2, 2), Err(Error::SameEnds));
        assert!(matches!(linearize(&theta(), 0, 1), Err(Error::NotATree(_))));
    }
}
