//! Orientation-respecting canonical codes.
//!
//! Within one connected component, fixing the image of a single dart fixes
//! the whole isomorphism: cyclic orders at vertices and along circles leave no
//! freedom. The code of a component is therefore the minimum, over admissible
//! root darts, of the breadth-first code grown from that root. Closed
//! components may be rooted at any dart; components touching the skeleton are
//! rooted at a leg of their lowest circle, since circles keep their index.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// Canonical code of an oriented diagram. Equal codes mean isomorphic
/// diagrams (cyclic orders, circle order and circle orientation preserved).
///
/// Layout: `[vertices, legs, circles]` followed by the component codes in
/// increasing order. A component code is `[n]` followed by one triple
/// `(tag, next, partner)` per dart in discovery order, where `tag` is 0 for a
/// trivalent dart and `1 + circle` for a leg, and `next` is the following dart
/// at the vertex or along the circle. A circle without legs is coded `[0, c]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CanonicalCode(Vec<u32>);

impl CanonicalCode {
    pub fn from_words(words: Vec<u32>) -> Self {
        CanonicalCode(words)
    }

    pub fn words(&self) -> &[u32] {
        &self.0
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|w| w.to_be_bytes()).collect()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() % 4 != 0 {
            return Err(Error::BadCode);
        }
        Ok(CanonicalCode(bytes.chunks(4).map(|c| u32::from_be_bytes([c[0], c[1], c[2], c[3]])).collect()))
    }

    /// Degree of the coded diagram.
    pub fn degree(&self) -> usize {
        match self.0.as_slice() {
            [v, l, ..] => (*v as usize + *l as usize) / 2,
            _ => 0,
        }
    }

    /// Rebuild a diagram with this code.
    pub fn decode(&self) -> Result<Diagram> {
        decode(&self.0)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join("."))
    }
}

impl FromStr for CanonicalCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split('.')
            .map(|w| w.trim().parse::<u32>().map_err(|_| Error::BadCode))
            .collect::<Result<Vec<_>>>()
            .map(CanonicalCode)
    }
}

pub fn canonical_form(d: &Diagram) -> CanonicalCode {
    let (labels, circle_labels, count) = d.component_labels();
    let mut comps: Vec<Vec<u32>> = Vec::with_capacity(count);
    let mut scratch = Scratch::new(d.num_darts());
    for comp in 0..count {
        let circles: Vec<usize> = (0..d.num_circles()).filter(|&c| circle_labels[c] == comp).collect();
        let roots: Vec<usize> = match circles.first() {
            Some(&c) if d.circles()[c].is_empty() => {
                comps.push(vec![0, c as u32]);
                continue;
            }
            Some(&c) => d.circles()[c].iter().map(|&l| d.leg_dart(l as usize)).collect(),
            None => (0..d.num_darts()).filter(|&x| labels[x] == comp).collect(),
        };
        let mut best: Vec<u32> = Vec::new();
        for r in roots {
            scratch.grow(d, r, &mut best);
        }
        comps.push(best);
    }
    comps.sort();
    let mut words = vec![d.num_vertices() as u32, d.num_legs() as u32, d.num_circles() as u32];
    for c in comps {
        words.extend(c);
    }
    CanonicalCode(words)
}

pub fn is_isomorphic(a: &Diagram, b: &Diagram) -> bool {
    canonical_form(a) == canonical_form(b)
}

struct Scratch {
    label: Vec<u32>,
    order: Vec<usize>,
    code: Vec<u32>,
}

const UNSEEN: u32 = u32::MAX;

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch { label: vec![UNSEEN; n], order: Vec::with_capacity(n), code: Vec::new() }
    }

    fn discover(&mut self, d: &Diagram, x: usize) {
        if d.is_leg_dart(x) {
            let leg = x - d.leg_dart(0);
            let circle = &d.circles()[d.leg_circle(leg)];
            let start = d.leg_position(leg);
            for i in 0..circle.len() {
                let y = d.leg_dart(circle[(start + i) % circle.len()] as usize);
                self.label[y] = self.order.len() as u32;
                self.order.push(y);
            }
        } else {
            let mut y = x;
            for _ in 0..3 {
                self.label[y] = self.order.len() as u32;
                self.order.push(y);
                y = d.rot(y);
            }
        }
    }

    fn next_of(d: &Diagram, x: usize) -> usize {
        if d.is_leg_dart(x) {
            d.leg_dart(d.circle_next(x - d.leg_dart(0)))
        } else {
            d.rot(x)
        }
    }

    fn tag_of(d: &Diagram, x: usize) -> u32 {
        if d.is_leg_dart(x) {
            1 + d.leg_circle(x - d.leg_dart(0)) as u32
        } else {
            0
        }
    }

    /// Grow the code rooted at `root`; replace `best` if it is smaller. The
    /// walk stops as soon as the partial code exceeds `best`.
    fn grow(&mut self, d: &Diagram, root: usize, best: &mut Vec<u32>) {
        self.order.clear();
        self.code.clear();
        self.discover(d, root);
        let mut cmp = if best.is_empty() { Ordering::Less } else { Ordering::Equal };
        let mut i = 0;
        while i < self.order.len() {
            let x = self.order[i];
            let p = d.partner(x);
            if self.label[p] == UNSEEN {
                self.discover(d, p);
            }
            let entry = [Self::tag_of(d, x), self.label[Self::next_of(d, x)], self.label[p]];
            if cmp == Ordering::Equal {
                // best = [n, triples...]; compare this triple
                cmp = entry.as_slice().cmp(&best[1 + 3 * i..4 + 3 * i]);
                if cmp == Ordering::Greater {
                    break;
                }
            }
            self.code.extend_from_slice(&entry);
            i += 1;
        }
        if cmp == Ordering::Less {
            best.clear();
            best.push(self.order.len() as u32);
            best.extend_from_slice(&self.code);
        }
        for &x in &self.order {
            self.label[x] = UNSEEN;
        }
    }
}

fn decode(words: &[u32]) -> Result<Diagram> {
    let [nv, nl, nc, rest @ ..] = words else { return Err(Error::BadCode) };
    let (nv, nl, nc) = (*nv as usize, *nl as usize, *nc as usize);
    let total = 3 * nv + nl;
    let mut pair = vec![u32::MAX; total];
    let mut circles: Vec<Option<Vec<u32>>> = vec![None; nc];
    let (mut next_vertex, mut next_leg) = (0usize, 0usize);
    let mut pos = 0;
    while pos < rest.len() {
        let n = rest[pos] as usize;
        pos += 1;
        if n == 0 {
            let c = *rest.get(pos).ok_or(Error::BadCode)? as usize;
            pos += 1;
            match circles.get_mut(c) {
                Some(slot @ None) => *slot = Some(Vec::new()),
                _ => return Err(Error::BadCode),
            }
            continue;
        }
        let body = rest.get(pos..pos + 3 * n).ok_or(Error::BadCode)?;
        pos += 3 * n;
        let mut global = vec![0usize; n];
        let mut i = 0;
        while i < n {
            if body[3 * i] == 0 {
                // a vertex occupies three consecutive labels in cyclic order
                if i + 2 >= n
                    || body[3 * i + 1] as usize != i + 1
                    || body[3 * (i + 1)] != 0
                    || body[3 * (i + 1) + 1] as usize != i + 2
                    || body[3 * (i + 2)] != 0
                    || body[3 * (i + 2) + 1] as usize != i
                    || next_vertex >= nv
                {
                    return Err(Error::BadCode);
                }
                for k in 0..3 {
                    global[i + k] = 3 * next_vertex + k;
                }
                next_vertex += 1;
                i += 3;
            } else {
                // a circle occupies consecutive labels following `next`
                let tag = body[3 * i];
                let c = tag as usize - 1;
                let mut legs = Vec::new();
                let mut j = i;
                loop {
                    if j >= n || body[3 * j] != tag || next_leg >= nl {
                        return Err(Error::BadCode);
                    }
                    legs.push(next_leg as u32);
                    global[j] = 3 * nv + next_leg;
                    next_leg += 1;
                    let nx = body[3 * j + 1] as usize;
                    if nx == i {
                        break;
                    }
                    if nx != j + 1 {
                        return Err(Error::BadCode);
                    }
                    j += 1;
                }
                match circles.get_mut(c) {
                    Some(slot @ None) => *slot = Some(legs),
                    _ => return Err(Error::BadCode),
                }
                i = j + 1;
            }
        }
        for i in 0..n {
            let p = body[3 * i + 2] as usize;
            if p >= n {
                return Err(Error::BadCode);
            }
            pair[global[i]] = global[p] as u32;
        }
    }
    if next_vertex != nv || next_leg != nl || pair.contains(&u32::MAX) {
        return Err(Error::BadCode);
    }
    let circles = circles.into_iter().collect::<Option<Vec<_>>>().ok_or(Error::BadCode)?;
    Diagram::from_parts(nv, pair, circles).map_err(|_| Error::BadCode)
}
