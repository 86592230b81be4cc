//! Unitrivalent diagrams with cyclically ordered trivalent vertices and an
//! optional skeleton of ordered, oriented circles.
//!
//! Internally a diagram is a set of darts (half-edges). Trivalent vertex `v`
//! owns darts `3v, 3v+1, 3v+2`, listed in its cyclic order; leg `j` owns the
//! single dart `3V + j`. Edges are the orbits of the involution `pair`.

use crate::error::{Error, Result};

/// One end of an edge: slot `s` of trivalent vertex `v`, or a leg.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Slot(usize, usize),
    Leg(usize),
}

impl std::fmt::Display for Endpoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Endpoint::Slot(v, s) => write!(f, "t{v}.{s}"),
            Endpoint::Leg(l) => write!(f, "l{l}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    vertices: usize,
    legs: usize,
    pair: Vec<u32>,
    circles: Vec<Vec<u32>>,
    leg_circle: Vec<u32>,
    leg_pos: Vec<u32>,
}

impl Diagram {
    /// The empty diagram on the empty skeleton.
    pub fn empty() -> Self {
        Self::empty_skeleton(0)
    }

    /// `circles` circles carrying no legs and no graph.
    pub fn empty_skeleton(circles: usize) -> Self {
        Diagram {
            vertices: 0,
            legs: 0,
            pair: Vec::new(),
            circles: vec![Vec::new(); circles],
            leg_circle: Vec::new(),
            leg_pos: Vec::new(),
        }
    }

    /// Assemble a diagram from its dart pairing and circle contents, validating
    /// every structural invariant.
    pub fn from_parts(vertices: usize, pair: Vec<u32>, circles: Vec<Vec<u32>>) -> Result<Self> {
        let darts = pair.len();
        if darts < 3 * vertices {
            return Err(Error::DanglingSlot {
                what: format!("{darts} darts cannot hold {vertices} trivalent vertices"),
            });
        }
        let legs = darts - 3 * vertices;
        for (d, &p) in pair.iter().enumerate() {
            let p = p as usize;
            if p >= darts || pair[p] as usize != d || p == d {
                return Err(Error::DanglingSlot { what: format!("dart {d} is not properly paired") });
            }
        }
        let mut leg_circle = vec![u32::MAX; legs];
        let mut leg_pos = vec![0u32; legs];
        for (c, circle) in circles.iter().enumerate() {
            for (i, &l) in circle.iter().enumerate() {
                let l = l as usize;
                if l >= legs || leg_circle[l] != u32::MAX {
                    return Err(Error::DanglingSlot { what: format!("leg l{l} listed twice or unknown") });
                }
                leg_circle[l] = c as u32;
                leg_pos[l] = i as u32;
            }
        }
        if let Some(l) = leg_circle.iter().position(|&c| c == u32::MAX) {
            return Err(Error::LegOnNoCircle { leg: l });
        }
        Ok(Diagram { vertices, legs, pair, circles, leg_circle, leg_pos })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices
    }

    pub fn num_legs(&self) -> usize {
        self.legs
    }

    pub fn num_circles(&self) -> usize {
        self.circles.len()
    }

    pub fn num_darts(&self) -> usize {
        self.pair.len()
    }

    pub fn num_edges(&self) -> usize {
        self.pair.len() / 2
    }

    /// Half the number of vertices (trivalent plus univalent).
    pub fn degree(&self) -> usize {
        (self.vertices + self.legs) / 2
    }

    pub fn is_leg_dart(&self, d: usize) -> bool {
        d >= 3 * self.vertices
    }

    pub fn leg_dart(&self, leg: usize) -> usize {
        3 * self.vertices + leg
    }

    pub fn vertex_of(&self, d: usize) -> Option<usize> {
        (d < 3 * self.vertices).then_some(d / 3)
    }

    pub fn partner(&self, d: usize) -> usize {
        self.pair[d] as usize
    }

    pub(crate) fn pairs(&self) -> &[u32] {
        &self.pair
    }

    /// Next dart in the cyclic order of its vertex; legs are fixed.
    pub fn rot(&self, d: usize) -> usize {
        if self.is_leg_dart(d) {
            d
        } else {
            3 * (d / 3) + (d % 3 + 1) % 3
        }
    }

    pub fn endpoint(&self, d: usize) -> Endpoint {
        if self.is_leg_dart(d) {
            Endpoint::Leg(d - 3 * self.vertices)
        } else {
            Endpoint::Slot(d / 3, d % 3)
        }
    }

    pub fn dart(&self, e: Endpoint) -> usize {
        match e {
            Endpoint::Slot(v, s) => 3 * v + s,
            Endpoint::Leg(l) => 3 * self.vertices + l,
        }
    }

    /// Leg indices of each circle, in the circle's cyclic order.
    pub fn circles(&self) -> &[Vec<u32>] {
        &self.circles
    }

    pub fn leg_circle(&self, leg: usize) -> usize {
        self.leg_circle[leg] as usize
    }

    pub fn leg_position(&self, leg: usize) -> usize {
        self.leg_pos[leg] as usize
    }

    pub fn circle_next(&self, leg: usize) -> usize {
        let c = &self.circles[self.leg_circle[leg] as usize];
        c[(self.leg_pos[leg] as usize + 1) % c.len()] as usize
    }

    pub fn circle_prev(&self, leg: usize) -> usize {
        let c = &self.circles[self.leg_circle[leg] as usize];
        let n = c.len();
        c[(self.leg_pos[leg] as usize + n - 1) % n] as usize
    }

    /// Number of legs on each circle.
    pub fn leg_profile(&self) -> Vec<usize> {
        self.circles.iter().map(Vec::len).collect()
    }

    /// Edges as dart pairs `(a, b)` with `a < b`, sorted by `a`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.pair.len())
            .filter(|&d| d < self.pair[d] as usize)
            .map(|d| (d, self.pair[d] as usize))
            .collect()
    }

    pub fn edge_endpoints(&self) -> Vec<(Endpoint, Endpoint)> {
        self.edges().into_iter().map(|(a, b)| (self.endpoint(a), self.endpoint(b))).collect()
    }

    /// True when some edge joins two slots of the same trivalent vertex.
    pub fn has_self_loop(&self) -> bool {
        (0..3 * self.vertices).any(|d| self.pair[d] as usize / 3 == d / 3 && (self.pair[d] as usize) < 3 * self.vertices)
    }

    /// No legs and no circles.
    pub fn is_trivalent(&self) -> bool {
        self.legs == 0 && self.circles.is_empty()
    }

    /// The diagram with the cyclic order at `v` reversed.
    pub fn flip(&self, v: usize) -> Diagram {
        let mut perm: Vec<u32> = (0..self.pair.len() as u32).collect();
        perm.swap(3 * v + 1, 3 * v + 2);
        self.permute_darts(&perm)
    }

    /// Move each dart `d` to position `perm[d]`, keeping the edge structure:
    /// the new partner of `perm[d]` is `perm[partner(d)]`. Leg darts must be
    /// fixed by `perm`.
    pub(crate) fn permute_darts(&self, perm: &[u32]) -> Diagram {
        let mut pair = vec![0u32; self.pair.len()];
        for (d, &p) in self.pair.iter().enumerate() {
            pair[perm[d] as usize] = perm[p as usize];
        }
        Diagram { pair, ..self.clone() }
    }

    /// Relabel the diagram without changing its isomorphism class: vertex `v`
    /// becomes `vertex_perm[v]` with its slots rotated by `slot_shift[v]`,
    /// leg `l` becomes `leg_perm[l]`, and circle `c` is listed starting
    /// `circle_shift[c]` places later.
    pub fn relabel(
        &self,
        vertex_perm: &[usize],
        slot_shift: &[usize],
        leg_perm: &[usize],
        circle_shift: &[usize],
    ) -> Diagram {
        let nv = self.vertices;
        let map = |d: usize| -> u32 {
            if d < 3 * nv {
                let (v, s) = (d / 3, d % 3);
                (3 * vertex_perm[v] + (s + 3 - slot_shift[v] % 3) % 3) as u32
            } else {
                (3 * nv + leg_perm[d - 3 * nv]) as u32
            }
        };
        let mut pair = vec![0u32; self.pair.len()];
        for (d, &p) in self.pair.iter().enumerate() {
            pair[map(d) as usize] = map(p as usize);
        }
        let circles = self
            .circles
            .iter()
            .zip(circle_shift)
            .map(|(c, &sh)| {
                let n = c.len().max(1);
                (0..c.len()).map(|i| leg_perm[c[(i + sh) % n] as usize] as u32).collect()
            })
            .collect();
        Diagram::from_parts(nv, pair, circles).expect("relabeling preserves validity")
    }

    /// Disjoint union; circles of `other` are appended after those of `self`.
    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let (v1, l1) = (self.vertices, self.legs);
        let v = v1 + other.vertices;
        let map_self = |d: usize| if d < 3 * v1 { d } else { 3 * v + (d - 3 * v1) };
        let map_other = |d: usize| {
            if d < 3 * other.vertices {
                3 * v1 + d
            } else {
                3 * v + l1 + (d - 3 * other.vertices)
            }
        };
        let mut pair = vec![0u32; self.pair.len() + other.pair.len()];
        for (d, &p) in self.pair.iter().enumerate() {
            pair[map_self(d)] = map_self(p as usize) as u32;
        }
        for (d, &p) in other.pair.iter().enumerate() {
            pair[map_other(d)] = map_other(p as usize) as u32;
        }
        let mut circles = self.circles.clone();
        circles.extend(other.circles.iter().map(|c| c.iter().map(|&l| l + l1 as u32).collect()));
        Diagram::from_parts(v, pair, circles).expect("union of valid diagrams is valid")
    }

    /// Component label of every dart, and of every circle (circles with no
    /// legs get their own label). Labels are numbered in order of first
    /// appearance: circles first (by index), then darts.
    pub(crate) fn component_labels(&self) -> (Vec<usize>, Vec<usize>, usize) {
        let n = self.pair.len();
        let m = self.circles.len();
        // union-find over darts followed by circles
        let mut parent: Vec<usize> = (0..n + m).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra.max(rb)] = ra.min(rb);
            }
        };
        for d in 0..n {
            union(&mut parent, d, self.pair[d] as usize);
            if d < 3 * self.vertices {
                union(&mut parent, d, 3 * (d / 3));
            }
        }
        for l in 0..self.legs {
            union(&mut parent, 3 * self.vertices + l, n + self.leg_circle[l] as usize);
        }
        let mut label = vec![usize::MAX; n + m];
        let mut next = 0;
        let order: Vec<usize> = (n..n + m).chain(0..n).collect();
        for x in order {
            let r = find(&mut parent, x);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            label[x] = label[r];
        }
        let circle_labels = label[n..].to_vec();
        label.truncate(n);
        (label, circle_labels, next)
    }

    pub fn num_components(&self) -> usize {
        self.component_labels().2
    }

    /// Zero or one component. The empty diagram counts as connected.
    pub fn is_connected(&self) -> bool {
        self.num_components() <= 1
    }

    /// Split into connected components. Components carrying circles come first
    /// (ordered by their lowest circle, which keeps relative circle order),
    /// then closed components ordered by their lowest vertex.
    pub fn connected_components(&self) -> Vec<Diagram> {
        let (dart_label, circle_label, count) = self.component_labels();
        (0..count)
            .map(|comp| {
                let circles: Vec<usize> = (0..self.circles.len()).filter(|&c| circle_label[c] == comp).collect();
                let verts: Vec<usize> =
                    (0..self.vertices).filter(|&v| dart_label[3 * v] == comp).collect();
                self.sub_diagram(&verts, &circles)
            })
            .collect()
    }

    /// The sub-diagram on the given vertices and circles (which must be a union
    /// of components).
    fn sub_diagram(&self, verts: &[usize], circles: &[usize]) -> Diagram {
        let mut vmap = vec![usize::MAX; self.vertices];
        for (i, &v) in verts.iter().enumerate() {
            vmap[v] = i;
        }
        let mut lmap = vec![usize::MAX; self.legs];
        let mut new_circles = Vec::new();
        let mut nl = 0;
        for &c in circles {
            let mut nc = Vec::new();
            for &l in &self.circles[c] {
                lmap[l as usize] = nl;
                nc.push(nl as u32);
                nl += 1;
            }
            new_circles.push(nc);
        }
        let nv = verts.len();
        let map = |d: usize| -> usize {
            if d < 3 * self.vertices {
                3 * vmap[d / 3] + d % 3
            } else {
                3 * nv + lmap[d - 3 * self.vertices]
            }
        };
        let mut pair = vec![0u32; 3 * nv + nl];
        for d in 0..self.pair.len() {
            let keep = if d < 3 * self.vertices { vmap[d / 3] != usize::MAX } else { lmap[d - 3 * self.vertices] != usize::MAX };
            if keep {
                pair[map(d)] = map(self.pair[d] as usize) as u32;
            }
        }
        Diagram::from_parts(nv, pair, new_circles).expect("components are closed under pairing")
    }
}

/// Incremental construction of a [`Diagram`] from vertices, legs and edges.
#[derive(Clone, Debug, Default)]
pub struct DiagramBuilder {
    vertices: usize,
    circles: Vec<Vec<usize>>,
    leg_circle: Vec<Option<usize>>,
    edges: Vec<(Endpoint, Endpoint)>,
}

impl DiagramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertices += 1;
        self.vertices - 1
    }

    pub fn add_vertices(&mut self, n: usize) -> std::ops::Range<usize> {
        let start = self.vertices;
        self.vertices += n;
        start..self.vertices
    }

    pub fn add_circle(&mut self) -> usize {
        self.circles.push(Vec::new());
        self.circles.len() - 1
    }

    /// Append a leg at the end of `circle`'s cyclic order.
    pub fn add_leg(&mut self, circle: usize) -> usize {
        let l = self.leg_circle.len();
        self.leg_circle.push(Some(circle));
        self.circles[circle].push(l);
        l
    }

    /// A leg not yet placed on any circle; [`Self::place_leg`] puts it on one.
    pub fn add_free_leg(&mut self) -> usize {
        self.leg_circle.push(None);
        self.leg_circle.len() - 1
    }

    pub fn place_leg(&mut self, leg: usize, circle: usize) {
        self.leg_circle[leg] = Some(circle);
        self.circles[circle].push(leg);
    }

    pub fn connect(&mut self, a: Endpoint, b: Endpoint) -> &mut Self {
        self.edges.push((a, b));
        self
    }

    pub fn build(&self) -> Result<Diagram> {
        let nv = self.vertices;
        let nl = self.leg_circle.len();
        let dart = |e: Endpoint| -> Result<usize> {
            match e {
                Endpoint::Slot(v, s) if v < nv && s < 3 => Ok(3 * v + s),
                Endpoint::Leg(l) if l < nl => Ok(3 * nv + l),
                other => Err(Error::DanglingSlot { what: format!("endpoint {other} does not exist") }),
            }
        };
        let mut pair = vec![u32::MAX; 3 * nv + nl];
        for &(a, b) in &self.edges {
            let (da, db) = (dart(a)?, dart(b)?);
            if da == db {
                return Err(Error::DanglingSlot { what: format!("edge joins {a} to itself") });
            }
            for (d, e) in [(da, a), (db, b)] {
                if pair[d] != u32::MAX {
                    return Err(Error::DanglingSlot { what: format!("{e} is used by two edges") });
                }
            }
            pair[da] = db as u32;
            pair[db] = da as u32;
        }
        for v in 0..nv {
            let filled = (0..3).filter(|&s| pair[3 * v + s] != u32::MAX).count();
            if filled != 3 {
                return Err(Error::NonTrivalentVertex { vertex: v, filled });
            }
        }
        if let Some(l) = self.leg_circle.iter().position(Option::is_none) {
            return Err(Error::LegOnNoCircle { leg: l });
        }
        if let Some(l) = (0..nl).find(|&l| pair[3 * nv + l] == u32::MAX) {
            return Err(Error::DanglingSlot { what: format!("leg l{l} has no edge") });
        }
        let circles = self.circles.iter().map(|c| c.iter().map(|&l| l as u32).collect()).collect();
        Diagram::from_parts(nv, pair, circles)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Two vertices joined by three edges, equal slot order at both ends.
    pub fn theta() -> Diagram {
        let mut b = DiagramBuilder::new();
        let (x, y) = (b.add_vertex(), b.add_vertex());
        for s in 0..3 {
            b.connect(Endpoint::Slot(x, s), Endpoint::Slot(y, s));
        }
        b.build().unwrap()
    }

    pub fn dumbbell() -> Diagram {
        let mut b = DiagramBuilder::new();
        let (x, y) = (b.add_vertex(), b.add_vertex());
        b.connect(Endpoint::Slot(x, 0), Endpoint::Slot(y, 0));
        b.connect(Endpoint::Slot(x, 1), Endpoint::Slot(x, 2));
        b.connect(Endpoint::Slot(y, 1), Endpoint::Slot(y, 2));
        b.build().unwrap()
    }

    /// K_4 with slot `s` of vertex `v` going to vertex `(v + s + 1) % 4`.
    pub fn k4() -> Diagram {
        let mut b = DiagramBuilder::new();
        b.add_vertices(4);
        let mut used = [[false; 3]; 4];
        for v in 0..4 {
            for s in 0..3 {
                if used[v][s] {
                    continue;
                }
                let w = (v + s + 1) % 4;
                let t = (0..3).find(|&t| (w + t + 1) % 4 == v).unwrap();
                used[v][s] = true;
                used[w][t] = true;
                b.connect(Endpoint::Slot(v, s), Endpoint::Slot(w, t));
            }
        }
        b.build().unwrap()
    }
}
