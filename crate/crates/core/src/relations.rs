//! The AS, IHX and STU relations as formal sums.
//!
//! Rewiring conventions, for an internal edge joining `u` and `v` whose other
//! darts are `a, b` at `u` and `c, d` at `v` (cyclic orders `(e, a, b)` and
//! `(e', c, d)`):
//!
//! | term | slot `u.1` | slot `u.2` | slot `v.1` | slot `v.2` |
//! |------|-----------|-----------|-----------|-----------|
//! | I    | a         | b         | c         | d         |
//! | H    | c         | b         | a         | d         |
//! | X    | c         | a         | b         | d         |
//!
//! and the emitted relation is `I - H + X`. For a leg `l` attached to a
//! vertex `w` with cyclic order `(x, y1, y2)`, where `x` is the dart on `l`,
//! `T` replaces `l` by two consecutive legs joined to `y1` and then `y2` in
//! the circle's direction, `U` joins them in the opposite order, and the
//! emitted relation is `S - T + U`.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::diagram::{Diagram, DiagramBuilder, Endpoint};
use crate::enumerate::DiagramClass;
use crate::error::{Error, Result};
use crate::formal::{q, FormalSum};

/// Which relations present a quotient space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationSelector {
    AsIhx,
    AsIhxStu,
}

impl RelationSelector {
    pub fn name(self) -> &'static str {
        match self {
            RelationSelector::AsIhx => "AS+IHX",
            RelationSelector::AsIhxStu => "AS+IHX+STU",
        }
    }
}

impl std::str::FromStr for RelationSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['+', '-', '_'], "").as_str() {
            "asihx" => Ok(RelationSelector::AsIhx),
            "asihxstu" => Ok(RelationSelector::AsIhxStu),
            _ => Err(Error::InvalidArgument(format!("unknown relation set {s:?}"))),
        }
    }
}

/// `d + flip_v(d)` for every class and vertex, and `2 d` for every class
/// equal to its own negative.
pub fn as_relations(classes: &[DiagramClass]) -> Vec<FormalSum> {
    collect(classes, |c| {
        let d = &c.diagram;
        let mut out: Vec<FormalSum> =
            (0..d.num_vertices()).map(|v| FormalSum::from_terms([(d, 1), (&d.flip(v), 1)])).collect();
        if c.zero {
            out.push(FormalSum::from_terms([(d, 2)]));
        }
        out
    })
}

/// `I - H + X` for every class and every edge between two distinct
/// trivalent vertices. Terms with self-loops are dropped unless allowed.
pub fn ihx_relations(classes: &[DiagramClass], allow_self_loops: bool) -> Vec<FormalSum> {
    collect(classes, |c| {
        let d = &c.diagram;
        internal_edges(d)
            .into_iter()
            .map(|(x, y)| {
                let [i, h, x] = ihx_terms(d, x, y);
                let mut s = FormalSum::new();
                for (term, coef) in [(&i, 1), (&h, -1), (&x, 1)] {
                    if allow_self_loops || !term.has_self_loop() {
                        s.add_diagram(term, q(coef));
                    }
                }
                s
            })
            .collect()
    })
}

/// `S - T + U` for every class and every leg attached to a trivalent vertex.
pub fn stu_relations(classes: &[DiagramClass], circles: usize) -> Result<Vec<FormalSum>> {
    if circles == 0 {
        return Err(Error::EmptySkeleton);
    }
    Ok(collect(classes, |c| {
        let d = &c.diagram;
        (0..d.num_legs())
            .filter(|&l| !d.is_leg_dart(d.partner(d.leg_dart(l))))
            .map(|l| {
                let [s, t, u] = stu_terms(d, l);
                FormalSum::from_terms([(&s, 1), (&t, -1), (&u, 1)])
            })
            .collect()
    }))
}

/// All relations of a selector, deduplicated and sorted.
pub fn relations(
    classes: &[DiagramClass],
    selector: RelationSelector,
    circles: usize,
    allow_self_loops: bool,
) -> Result<Vec<FormalSum>> {
    let mut all: BTreeSet<FormalSum> = as_relations(classes).into_iter().collect();
    all.extend(ihx_relations(classes, allow_self_loops));
    if selector == RelationSelector::AsIhxStu {
        all.extend(stu_relations(classes, circles)?);
    }
    Ok(all.into_iter().collect())
}

fn collect<F>(classes: &[DiagramClass], f: F) -> Vec<FormalSum>
where
    F: Fn(&DiagramClass) -> Vec<FormalSum> + Sync,
{
    let set: BTreeSet<FormalSum> = classes
        .par_iter()
        .flat_map_iter(|c| f(c).into_iter().filter(|s| !s.is_empty()).map(|s| s.normalized_sign()))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    set.into_iter().collect()
}

/// Edges between distinct trivalent vertices, as dart pairs.
pub fn internal_edges(d: &Diagram) -> Vec<(usize, usize)> {
    d.edges()
        .into_iter()
        .filter(|&(x, y)| match (d.vertex_of(x), d.vertex_of(y)) {
            (Some(u), Some(v)) => u != v,
            _ => false,
        })
        .collect()
}

/// The three diagrams `[I, H, X]` of the IHX relation at the edge `(du, dv)`.
pub fn ihx_terms(d: &Diagram, du: usize, dv: usize) -> [Diagram; 3] {
    let (a, b) = (d.rot(du), d.rot(d.rot(du)));
    let c = d.rot(dv);
    let mut h: Vec<u32> = (0..d.num_darts() as u32).collect();
    h.swap(a, c);
    let mut x: Vec<u32> = (0..d.num_darts() as u32).collect();
    // the connection at c moves to a's slot, a's to b's, b's to c's
    x[c] = a as u32;
    x[a] = b as u32;
    x[b] = c as u32;
    [d.clone(), d.permute_darts(&h), d.permute_darts(&x)]
}

/// The three diagrams `[S, T, U]` of the STU relation at `leg`, which must be
/// attached to a trivalent vertex.
pub fn stu_terms(d: &Diagram, leg: usize) -> [Diagram; 3] {
    let x = d.partner(d.leg_dart(leg));
    [d.clone(), split_leg(d, leg, x, false), split_leg(d, leg, x, true)]
}

/// Remove the vertex at dart `x` and the leg on it, putting two legs in its
/// place on the circle; the first is joined to the far side of `rot(x)`
/// (or of `rot^2(x)` when `swap`).
fn split_leg(d: &Diagram, leg: usize, x: usize, swap: bool) -> Diagram {
    let w = d.vertex_of(x).expect("leg is attached to a trivalent vertex");
    let (mut y1, mut y2) = (d.rot(x), d.rot(d.rot(x)));
    if swap {
        std::mem::swap(&mut y1, &mut y2);
    }
    let nl = d.num_legs();
    let new_leg = nl;
    let map = |e: Endpoint| match e {
        Endpoint::Slot(v, s) => Endpoint::Slot(if v > w { v - 1 } else { v }, s),
        leg @ Endpoint::Leg(_) => leg,
    };
    let mut b = DiagramBuilder::new();
    b.add_vertices(d.num_vertices() - 1);
    for _ in 0..d.num_circles() {
        b.add_circle();
    }
    for _ in 0..=nl {
        b.add_free_leg();
    }
    for (c, legs) in d.circles().iter().enumerate() {
        for &l in legs {
            b.place_leg(l as usize, c);
            if l as usize == leg {
                b.place_leg(new_leg, c);
            }
        }
    }
    let at_w = |t: usize| d.vertex_of(t) == Some(w);
    for (p, r) in d.edges() {
        if at_w(p) || at_w(r) {
            continue;
        }
        b.connect(map(d.endpoint(p)), map(d.endpoint(r)));
    }
    let (f1, f2) = (d.partner(y1), d.partner(y2));
    if f1 == y2 {
        b.connect(Endpoint::Leg(leg), Endpoint::Leg(new_leg));
    } else {
        b.connect(Endpoint::Leg(leg), map(d.endpoint(f1)));
        b.connect(Endpoint::Leg(new_leg), map(d.endpoint(f2)));
    }
    b.build().expect("splitting a leg keeps validity")
}

#[cfg(test)]
pub(crate) mod so3 {
    //! Evaluation of diagrams in the weight system of the adjoint
    //! representation of so(3): a vertex contributes the structure constant
    //! in its cyclic order, a circle the trace of its legs' generators.

    use crate::diagram::Diagram;

    fn eps(i: usize, j: usize, k: usize) -> i64 {
        match (i, j, k) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
            _ => 0,
        }
    }

    pub fn weight(d: &Diagram) -> i64 {
        let edges = d.edges();
        let mut colour_of = vec![0usize; d.num_darts()];
        let mut total = 0;
        for mut code in 0..3usize.pow(edges.len() as u32) {
            for &(a, b) in &edges {
                colour_of[a] = code % 3;
                colour_of[b] = code % 3;
                code /= 3;
            }
            let mut w: i64 = 1;
            for v in 0..d.num_vertices() {
                w *= eps(colour_of[3 * v], colour_of[3 * v + 1], colour_of[3 * v + 2]);
                if w == 0 {
                    break;
                }
            }
            if w == 0 {
                continue;
            }
            for legs in d.circles() {
                // (L_a)_{bc} = -eps(a, b, c); trace of the product
                let mut m = [[0i64; 3]; 3];
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = 1;
                }
                for &l in legs {
                    let a = colour_of[d.leg_dart(l as usize)];
                    let mut next = [[0i64; 3]; 3];
                    for (i, row) in next.iter_mut().enumerate() {
                        for (j, cell) in row.iter_mut().enumerate() {
                            *cell = (0..3).map(|k| m[i][k] * -eps(a, k, j)).sum();
                        }
                    }
                    m = next;
                }
                w *= m[0][0] + m[1][1] + m[2][2];
            }
            total += w;
        }
        total
    }
}
