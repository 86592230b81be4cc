//! Enumeration of diagram classes of a given degree and skeleton.
//!
//! Connected pieces are grown breadth-first from a root dart: every unpaired
//! dart in the queue is joined either to a later unpaired dart, to the first
//! leg of a circle not yet reached, or to slot 0 of a fresh vertex. Vertex
//! orientations are never branched on, since reversing one only changes the
//! sign of a diagram. Disconnected diagrams are then assembled from connected
//! pieces: a set partition of the circles into pieces plus a multiset of
//! closed components.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalCode};
use crate::classform::{class_form, ClassCode};
use crate::diagram::Diagram;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_CLASSES: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_MAX_CLASSES`].
pub const MAX_CLASSES_ENV: &str = "JACOBI_MAX_CLASSES";

pub fn default_max_classes() -> usize {
    std::env::var(MAX_CLASSES_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_MAX_CLASSES)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumSpec {
    pub degree: usize,
    pub circles: usize,
    pub allow_self_loops: bool,
    pub connected_only: bool,
    /// Exact number of legs on each circle, if prescribed.
    pub leg_profile: Option<Vec<usize>>,
    pub max_classes: usize,
}

impl EnumSpec {
    pub fn new(degree: usize, circles: usize) -> Self {
        EnumSpec {
            degree,
            circles,
            allow_self_loops: false,
            connected_only: false,
            leg_profile: None,
            max_classes: default_max_classes(),
        }
    }

    pub fn self_loops(mut self, allow: bool) -> Self {
        self.allow_self_loops = allow;
        self
    }

    pub fn connected(mut self, only: bool) -> Self {
        self.connected_only = only;
        self
    }

    pub fn legs(mut self, profile: Vec<usize>) -> Self {
        self.leg_profile = Some(profile);
        self
    }

    pub fn ceiling(mut self, max_classes: usize) -> Self {
        self.max_classes = max_classes;
        self
    }

    /// Whether `d` is one of the diagrams this spec enumerates.
    pub fn admits(&self, d: &Diagram) -> bool {
        d.degree() == self.degree
            && d.num_circles() == self.circles
            && (self.allow_self_loops || !d.has_self_loop())
            && (!self.connected_only || d.is_connected())
            && self.leg_profile.as_ref().is_none_or(|p| *p == d.leg_profile())
    }
}

/// One class of diagrams up to isomorphism and orientation reversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramClass {
    pub class: ClassCode,
    /// Oriented canonical code of the representative.
    pub rep: CanonicalCode,
    pub diagram: Diagram,
    /// The class equals its own negative.
    pub zero: bool,
}

/// One representative per class, sorted by representative code.
pub fn enumerate_classes(spec: &EnumSpec) -> Result<Vec<DiagramClass>> {
    if let Some(p) = &spec.leg_profile {
        if p.len() != spec.circles {
            return Err(Error::InvalidArgument(format!(
                "leg profile has {} entries for {} circles",
                p.len(),
                spec.circles
            )));
        }
    }
    let mut blocks = Blocks { allow_loops: spec.allow_self_loops, cache: HashMap::new(), ceiling: spec.max_classes };
    let budget = 2 * spec.degree;
    let mut found: BTreeMap<ClassCode, Diagram> = BTreeMap::new();
    for partition in set_partitions(spec.circles) {
        if spec.connected_only && partition.len() > 1 {
            continue;
        }
        let mut choice: Vec<Vec<Diagram>> = Vec::new();
        assemble_blocks(spec, &partition, 0, budget, &mut blocks, &mut choice, &mut found)?;
    }
    let mut out: Vec<DiagramClass> = found
        .into_par_iter()
        .map(|(class, diagram)| {
            let zero = class_form(&diagram).zero;
            DiagramClass { class, rep: canonical_form(&diagram), diagram, zero }
        })
        .collect();
    out.sort_by(|a, b| a.rep.cmp(&b.rep));
    Ok(out)
}

/// Oriented canonical codes of one representative per class.
pub fn enumerate_diagrams(degree: usize, circles: usize, allow_self_loops: bool) -> Result<Vec<CanonicalCode>> {
    let spec = EnumSpec::new(degree, circles).self_loops(allow_self_loops);
    Ok(enumerate_classes(&spec)?.into_iter().map(|c| c.rep).collect())
}

/// Recursively pick a connected piece for each block of circles, then fill the
/// remaining budget with closed components.
fn assemble_blocks(
    spec: &EnumSpec,
    partition: &[Vec<usize>],
    i: usize,
    budget: usize,
    blocks: &mut Blocks,
    choice: &mut Vec<Vec<Diagram>>,
    found: &mut BTreeMap<ClassCode, Diagram>,
) -> Result<()> {
    if i == partition.len() {
        let closed: Vec<Vec<Diagram>> = if budget == 0 {
            vec![Vec::new()]
        } else if spec.connected_only && !partition.is_empty() {
            return Ok(());
        } else if spec.connected_only {
            blocks.get(budget, &[])?.iter().map(|d| vec![d.clone()]).collect()
        } else {
            closed_multisets(budget, blocks)?
        };
        for extra in closed {
            for pieces in cartesian(choice) {
                let d = assemble(spec.circles, partition, &pieces, &extra);
                found.entry(class_form(&d).code).or_insert(d);
                if found.len() > spec.max_classes {
                    return Err(Error::ResourceLimit(format!("more than {} diagram classes", spec.max_classes)));
                }
            }
        }
        return Ok(());
    }
    let block = &partition[i];
    for legs in leg_vectors(spec, block, budget) {
        let used: usize = legs.iter().sum();
        for nv in 0..=budget - used {
            let rest = budget - used - nv;
            if (nv + used) % 2 != 0 {
                continue;
            }
            if used == 0 && (block.len() != 1 || nv != 0) {
                continue;
            }
            let pieces = if used == 0 { vec![Diagram::empty_skeleton(1)] } else { blocks.get(nv, &legs)?.to_vec() };
            if pieces.is_empty() {
                continue;
            }
            choice.push(pieces);
            assemble_blocks(spec, partition, i + 1, rest, blocks, choice, found)?;
            choice.pop();
        }
    }
    Ok(())
}

/// Leg counts for the circles of `block`: each at least 1 (or the single
/// empty circle), matching the prescribed profile when there is one.
fn leg_vectors(spec: &EnumSpec, block: &[usize], budget: usize) -> Vec<Vec<usize>> {
    if let Some(p) = &spec.leg_profile {
        let v: Vec<usize> = block.iter().map(|&c| p[c]).collect();
        let ok = v.iter().sum::<usize>() <= budget && (v.iter().all(|&x| x > 0) || (block.len() == 1 && v[0] == 0));
        return if ok { vec![v] } else { vec![] };
    }
    let mut out = Vec::new();
    if block.len() == 1 {
        out.push(vec![0]);
    }
    let mut cur = vec![1; block.len()];
    if block.len() > budget {
        return out;
    }
    fn rec(cur: &mut Vec<usize>, i: usize, left: usize, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for extra in 0..=left {
            cur[i] = 1 + extra;
            rec(cur, i + 1, left - extra, out);
        }
        cur[i] = 1;
    }
    let left = budget - block.len();
    rec(&mut cur, 0, left, &mut out);
    out
}

/// Disjoint union of the chosen pieces with circles put back in place.
fn assemble(circles: usize, partition: &[Vec<usize>], pieces: &[&Diagram], closed: &[Diagram]) -> Diagram {
    let mut d = Diagram::empty();
    let mut order = Vec::with_capacity(circles);
    for (block, piece) in partition.iter().zip(pieces) {
        d = d.disjoint_union(piece);
        order.extend_from_slice(block);
    }
    for c in closed {
        d = d.disjoint_union(c);
    }
    // circle k of the union is circle order[k] of the target
    let mut placed = vec![Vec::new(); circles];
    for (k, &c) in order.iter().enumerate() {
        placed[c] = d.circles()[k].clone();
    }
    Diagram::from_parts(d.num_vertices(), d.pairs().to_vec(), placed).expect("reordering circles keeps validity")
}

fn cartesian<T>(lists: &[Vec<T>]) -> Vec<Vec<&T>> {
    let mut out: Vec<Vec<&T>> = vec![Vec::new()];
    for list in lists {
        out = out.into_iter().flat_map(|p| list.iter().map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

/// All multisets of closed connected components with `vertices` vertices in
/// total.
fn closed_multisets(vertices: usize, blocks: &mut Blocks) -> Result<Vec<Vec<Diagram>>> {
    // every closed connected component, ordered by size then class
    let mut all: Vec<(usize, Diagram)> = Vec::new();
    for v in (2..=vertices).step_by(2) {
        for d in blocks.get(v, &[])? {
            all.push((v, d.clone()));
        }
    }
    let mut out = Vec::new();
    fn rec(all: &[(usize, Diagram)], from: usize, left: usize, cur: &mut Vec<Diagram>, out: &mut Vec<Vec<Diagram>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..all.len() {
            if all[i].0 <= left {
                cur.push(all[i].1.clone());
                rec(all, i, left - all[i].0, cur, out);
                cur.pop();
            }
        }
    }
    rec(&all, 0, vertices, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Set partitions of `0..n`, blocks listed by their smallest element.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    fn rec(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            rec(i + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        rec(i + 1, n, cur, out);
        cur.pop();
    }
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// Connected pieces by vertex count and leg vector, cached.
struct Blocks {
    allow_loops: bool,
    cache: HashMap<(usize, Vec<usize>), Vec<Diagram>>,
    ceiling: usize,
}

impl Blocks {
    fn get(&mut self, nv: usize, legs: &[usize]) -> Result<&[Diagram]> {
        let key = (nv, legs.to_vec());
        if !self.cache.contains_key(&key) {
            let v = connected_pieces(nv, legs, self.allow_loops, self.ceiling)?;
            self.cache.insert(key.clone(), v);
        }
        Ok(&self.cache[&key])
    }
}

/// Class representatives of connected diagrams with `nv` vertices and
/// `legs[c]` legs on circle `c` (all positive), or closed when `legs` is
/// empty. Sorted by class code.
pub fn connected_pieces(nv: usize, legs: &[usize], allow_loops: bool, ceiling: usize) -> Result<Vec<Diagram>> {
    let total_legs: usize = legs.iter().sum();
    if (3 * nv + total_legs) % 2 != 0 || (nv == 0 && legs.is_empty()) {
        return Ok(Vec::new());
    }
    let grower = Grower::new(nv, legs, allow_loops);
    // expand a few levels so the work splits into independent subtrees
    let mut frontier = vec![grower.start()];
    for _ in 0..4 {
        frontier = frontier
            .iter()
            .flat_map(|s| {
                let next = grower.successors(s);
                if next.is_empty() { vec![s.clone()] } else { next }
            })
            .collect();
    }
    let codes: BTreeSet<CanonicalCode> = frontier
        .into_par_iter()
        .map(|state| {
            let mut set = BTreeSet::new();
            grower.grow(state, &mut set);
            set
        })
        .reduce(BTreeSet::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });
    let classes: BTreeSet<ClassCode> = codes
        .into_par_iter()
        .map(|c| class_form(&c.decode().expect("generated codes decode")).code)
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    if classes.len() > ceiling {
        return Err(Error::ResourceLimit(format!("more than {ceiling} connected pieces")));
    }
    classes.iter().map(ClassCode::representative).collect()
}

#[derive(Clone)]
struct State {
    pair: Vec<u32>,
    queue: Vec<u32>,
    head: usize,
    vertices_used: usize,
    circle_seen: Vec<bool>,
}

const UNSET: u32 = u32::MAX;

impl State {
    fn done(&self, g: &Grower) -> bool {
        self.vertices_used == g.nv && self.circle_seen.iter().all(|&s| s) && self.pair.iter().all(|&p| p != UNSET)
    }
}

struct Grower {
    nv: usize,
    legs: Vec<usize>,
    offsets: Vec<usize>,
    allow_loops: bool,
}

impl Grower {
    fn new(nv: usize, legs: &[usize], allow_loops: bool) -> Self {
        let mut offsets = Vec::with_capacity(legs.len());
        let mut acc = 3 * nv;
        for &l in legs {
            offsets.push(acc);
            acc += l;
        }
        Grower { nv, legs: legs.to_vec(), offsets, allow_loops }
    }

    fn darts(&self) -> usize {
        3 * self.nv + self.legs.iter().sum::<usize>()
    }

    fn start(&self) -> State {
        let mut s = State {
            pair: vec![UNSET; self.darts()],
            queue: Vec::with_capacity(self.darts()),
            head: 0,
            vertices_used: 0,
            circle_seen: vec![false; self.legs.len()],
        };
        if self.legs.is_empty() {
            self.open_vertex(&mut s);
        } else {
            self.open_circle(&mut s, 0);
        }
        s
    }

    fn open_vertex(&self, s: &mut State) -> u32 {
        let v = s.vertices_used as u32;
        s.vertices_used += 1;
        s.queue.extend([3 * v, 3 * v + 1, 3 * v + 2]);
        3 * v
    }

    fn open_circle(&self, s: &mut State, c: usize) -> u32 {
        s.circle_seen[c] = true;
        let o = self.offsets[c] as u32;
        s.queue.extend(o..o + self.legs[c] as u32);
        o
    }

    fn successors(&self, s: &State) -> Vec<State> {
        let mut s = s.clone();
        while s.head < s.queue.len() && s.pair[s.queue[s.head] as usize] != UNSET {
            s.head += 1;
        }
        if s.head == s.queue.len() {
            return Vec::new();
        }
        let d = s.queue[s.head];
        let mut out = Vec::new();
        let join = |s: &State, e: u32| {
            let mut t = s.clone();
            t.pair[d as usize] = e;
            t.pair[e as usize] = d;
            t
        };
        for &e in &s.queue[s.head + 1..] {
            if s.pair[e as usize] != UNSET {
                continue;
            }
            let loop_edge = (d as usize) < 3 * self.nv && (e as usize) < 3 * self.nv && d / 3 == e / 3;
            if loop_edge && !self.allow_loops {
                continue;
            }
            out.push(join(&s, e));
        }
        for c in 0..self.legs.len() {
            if !s.circle_seen[c] {
                let mut t = s.clone();
                let e = self.open_circle(&mut t, c);
                out.push(join(&t, e));
            }
        }
        if s.vertices_used < self.nv {
            let mut t = s.clone();
            let e = self.open_vertex(&mut t);
            out.push(join(&t, e));
        }
        out
    }

    fn grow(&self, s: State, found: &mut BTreeSet<CanonicalCode>) {
        let next = self.successors(&s);
        if next.is_empty() {
            if s.done(self) {
                found.insert(canonical_form(&self.finish(&s)));
            }
            return;
        }
        for t in next {
            self.grow(t, found);
        }
    }

    fn finish(&self, s: &State) -> Diagram {
        let circles = self
            .legs
            .iter()
            .zip(&self.offsets)
            .map(|(&l, &o)| (0..l as u32).map(|i| o as u32 - 3 * self.nv as u32 + i).collect())
            .collect();
        Diagram::from_parts(self.nv, s.pair.clone(), circles).expect("grown diagram is valid")
    }
}
