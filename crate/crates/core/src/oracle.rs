//! Brute-force reference computations for closed diagrams, written without
//! the canonical forms, enumeration or sparse elimination of the rest of the
//! crate.
//!
//! Degree-`k` diagrams are the perfect matchings of the `6k` slots of `2k`
//! labelled vertices, slot `3v + s` being the `s`-th slot of vertex `v` in its
//! cyclic order. Isomorphism classes are the orbits of vertex relabelling and
//! rotation at each vertex; they are found by walking every matching once.
//! The quotient by AS and IHX is then presented by a dense matrix whose rank
//! is computed by fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formal::Q;

/// Largest degree the oracle accepts: `(6k - 1)!!` matchings are visited.
pub const MAX_ORACLE_DEGREE: usize = 3;

/// Figures for one choice of filters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub degree: usize,
    pub self_loops: bool,
    pub connected_only: bool,
    pub matchings: u64,
    /// Orbits of matchings passing the filters.
    pub oriented_classes: usize,
    /// Orbits up to reversing cyclic orders.
    pub classes: usize,
    pub relations: usize,
    /// Dimension of the quotient over the rationals.
    pub rank: usize,
}

fn double_factorial(n: i64) -> u64 {
    if n <= 0 {
        1
    } else {
        n as u64 * double_factorial(n - 2)
    }
}

struct Matchings {
    n: usize,
    /// `tail[c]` = number of matchings of `c` slots
    tail: Vec<u64>,
}

impl Matchings {
    fn new(n: usize) -> Self {
        let tail = (0..=n).map(|c| if c % 2 == 0 { double_factorial(c as i64 - 1) } else { 0 }).collect();
        Matchings { n, tail }
    }

    fn count(&self) -> u64 {
        self.tail[self.n]
    }

    /// Position of a matching in the lexicographic order of choices: the
    /// lowest free slot picks its partner among the remaining free slots.
    fn rank(&self, partner: &[u8]) -> u64 {
        let mut free: u32 = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        let mut r = 0u64;
        while free != 0 {
            let c = free.count_ones() as usize;
            let i = free.trailing_zeros();
            free &= !(1 << i);
            let j = partner[i as usize] as u32;
            let below = (free & ((1u32 << j) - 1)).count_ones() as u64;
            free &= !(1 << j);
            r += below * self.tail[c - 2];
        }
        r
    }

    fn unrank(&self, mut r: u64, partner: &mut [u8]) {
        let mut free: u32 = (1u32 << self.n) - 1;
        while free != 0 {
            let c = free.count_ones() as usize;
            let i = free.trailing_zeros();
            free &= !(1 << i);
            let digit = r / self.tail[c - 2];
            r %= self.tail[c - 2];
            // the digit-th free slot above i
            let mut rest = free;
            for _ in 0..digit {
                rest &= rest - 1;
            }
            let j = rest.trailing_zeros();
            free &= !(1 << j);
            partner[i as usize] = j as u8;
            partner[j as usize] = i as u8;
        }
    }
}

/// Apply a slot permutation: the partner of `perm[x]` becomes
/// `perm[partner[x]]`.
fn permute(partner: &[u8], perm: &[u8], out: &mut [u8]) {
    for x in 0..partner.len() {
        out[perm[x] as usize] = perm[partner[x] as usize];
    }
}

fn has_loop(partner: &[u8]) -> bool {
    (0..partner.len()).any(|x| partner[x] as usize / 3 == x / 3)
}

fn is_connected(partner: &[u8]) -> bool {
    let nv = partner.len() / 3;
    if nv == 0 {
        return true;
    }
    let mut seen = vec![false; nv];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for s in 0..3 {
            let w = partner[3 * v + s] as usize / 3;
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn flip_perm(n: usize, v: usize) -> Vec<u8> {
    let mut p: Vec<u8> = (0..n as u8).collect();
    p.swap(3 * v + 1, 3 * v + 2);
    p
}

/// Dense rank of rational rows by fraction-free (Bareiss) elimination.
pub fn dense_rank(rows: &[Vec<Q>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..m {
            for j in col + 1..n {
                let v = (&a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Orbit data shared by every filter combination at one degree.
struct Orbits {
    degree: usize,
    count: u64,
    reps: Vec<Vec<u8>>,
    /// orbit of each vertex flip of each representative
    flips: Vec<Vec<usize>>,
    /// `(H orbit, H has loop, X orbit, X has loop)` for each internal edge
    ihx: Vec<Vec<(usize, bool, usize, bool)>>,
}

fn orbits(degree: usize) -> Result<Orbits> {
    if degree > MAX_ORACLE_DEGREE {
        return Err(Error::ResourceLimit(format!("oracle supports degree at most {MAX_ORACLE_DEGREE}")));
    }
    let nv = 2 * degree;
    let n = 3 * nv;
    if n == 0 {
        return Ok(Orbits { degree, count: 1, reps: vec![vec![]], flips: vec![vec![]], ihx: vec![vec![]] });
    }
    let mt = Matchings::new(n);
    let total = mt.count();
    // generators: transpose vertices 0,1; cycle all vertices; rotate vertex 0
    let mut gens: Vec<Vec<u8>> = Vec::new();
    if nv > 1 {
        let mut swap: Vec<u8> = (0..n as u8).collect();
        for s in 0..3 {
            swap.swap(s, 3 + s);
        }
        gens.push(swap);
        gens.push((0..n).map(|x| ((x + 3) % n) as u8).collect());
    }
    gens.push((0..n).map(|x| if x < 3 { ((x + 1) % 3) as u8 } else { x as u8 }).collect());

    const NONE: u16 = u16::MAX;
    let mut orbit = vec![NONE; total as usize];
    let mut reps: Vec<Vec<u8>> = Vec::new();
    let mut cur = vec![0u8; n];
    let mut img = vec![0u8; n];
    let mut queue: Vec<Vec<u8>> = Vec::new();
    for start in 0..total {
        if orbit[start as usize] != NONE {
            continue;
        }
        let id = reps.len();
        if id >= NONE as usize {
            return Err(Error::ResourceLimit("too many orbits for the oracle".into()));
        }
        mt.unrank(start, &mut cur);
        reps.push(cur.clone());
        orbit[start as usize] = id as u16;
        queue.clear();
        queue.push(cur.clone());
        while let Some(m) = queue.pop() {
            for g in &gens {
                permute(&m, g, &mut img);
                let r = mt.rank(&img) as usize;
                if orbit[r] == NONE {
                    orbit[r] = id as u16;
                    queue.push(img.clone());
                }
            }
        }
    }
    let lookup = |m: &[u8]| orbit[mt.rank(m) as usize] as usize;
    let mut flips = Vec::with_capacity(reps.len());
    let mut ihx = Vec::with_capacity(reps.len());
    for m in &reps {
        flips.push(
            (0..nv)
                .map(|v| {
                    permute(m, &flip_perm(n, v), &mut img);
                    lookup(&img)
                })
                .collect(),
        );
        let mut rels = Vec::new();
        for p in 0..n {
            let q = m[p] as usize;
            if p > q || p / 3 == q / 3 {
                continue;
            }
            let next = |x: usize| 3 * (x / 3) + (x % 3 + 1) % 3;
            let (a, b, c) = (next(p), next(next(p)), next(q));
            let mut h: Vec<u8> = (0..n as u8).collect();
            h.swap(a, c);
            let mut x: Vec<u8> = (0..n as u8).collect();
            x[c] = a as u8;
            x[a] = b as u8;
            x[b] = c as u8;
            permute(m, &h, &mut img);
            let (ho, hl) = (lookup(&img), has_loop(&img));
            permute(m, &x, &mut img);
            let (xo, xl) = (lookup(&img), has_loop(&img));
            rels.push((ho, hl, xo, xl));
        }
        ihx.push(rels);
    }
    Ok(Orbits { degree, count: total, reps, flips, ihx })
}

/// Reports for every combination of the self-loop and connectedness filters,
/// in the order (loops, connected) = (no, no), (no, yes), (yes, no), (yes, yes).
pub fn oracle_reports(degree: usize) -> Result<Vec<OracleReport>> {
    let o = orbits(degree)?;
    let mut out = Vec::new();
    for self_loops in [false, true] {
        for connected_only in [false, true] {
            out.push(report(&o, self_loops, connected_only));
        }
    }
    Ok(out)
}

pub fn oracle_report(degree: usize, self_loops: bool, connected_only: bool) -> Result<OracleReport> {
    Ok(report(&orbits(degree)?, self_loops, connected_only))
}

fn report(o: &Orbits, self_loops: bool, connected_only: bool) -> OracleReport {
    let keep: Vec<bool> =
        o.reps.iter().map(|m| (self_loops || !has_loop(m)) && (!connected_only || is_connected(m))).collect();
    let mut col = vec![usize::MAX; o.reps.len()];
    let mut cols = 0;
    for (i, &k) in keep.iter().enumerate() {
        if k {
            col[i] = cols;
            cols += 1;
        }
    }
    // classes up to orientation: union orbits related by a flip
    let mut parent: Vec<usize> = (0..o.reps.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let unit = |c: usize, v: i64, row: &mut Vec<Q>| row[c] += Q::from_integer(v.into());
    for i in 0..o.reps.len() {
        if !keep[i] {
            continue;
        }
        for &f in &o.flips[i] {
            let (a, b) = (find(&mut parent, i), find(&mut parent, f));
            parent[a.max(b)] = a.min(b);
            let mut row = vec![Q::zero(); cols];
            unit(col[i], 1, &mut row);
            unit(col[f], 1, &mut row);
            rows.push(row);
        }
        for &(h, hl, x, xl) in &o.ihx[i] {
            let mut row = vec![Q::zero(); cols];
            unit(col[i], 1, &mut row);
            if self_loops || !hl {
                unit(col[h], -1, &mut row);
            }
            if self_loops || !xl {
                unit(col[x], 1, &mut row);
            }
            rows.push(row);
        }
    }
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    rows.sort();
    rows.dedup();
    let classes = (0..o.reps.len()).filter(|&i| keep[i] && find(&mut parent, i) == i).count();
    let rank = cols - dense_rank(&rows);
    OracleReport {
        degree: o.degree,
        self_loops,
        connected_only,
        matchings: o.count,
        oriented_classes: cols,
        classes,
        relations: rows.len(),
        rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_unrank_round_trip() {
        let mt = Matchings::new(12);
        assert_eq!(mt.count(), 10395);
        let mut p = vec![0u8; 12];
        for r in [0, 1, 17, 5000, 10394] {
            mt.unrank(r, &mut p);
            assert_eq!(mt.rank(&p), r);
        }
    }

    #[test]
    fn degree_one() {
        let r = oracle_reports(1).unwrap();
        // (loops, connected) = (no, no): theta only
        assert_eq!((r[0].classes, r[0].rank), (1, 1));
        // with loops: theta and dumbbell, the latter dies
        assert_eq!((r[2].classes, r[2].rank), (2, 1));
        assert_eq!(r[0].matchings, 15);
    }

    #[test]
    fn degree_two() {
        let r = oracle_reports(2).unwrap();
        assert_eq!(r[0].classes, 3);
        assert_eq!(r[1].classes, 2);
        assert_eq!(r[1].rank, 1);
    }

    #[test]
    fn degree_zero() {
        let r = oracle_reports(0).unwrap();
        assert!(r.iter().all(|x| x.rank == 1 && x.classes == 1));
    }

    #[test]
    fn dense_rank_small() {
        let q = |v: i64| Q::from_integer(v.into());
        assert_eq!(dense_rank(&[vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(dense_rank(&[vec![q(0), q(0)]]), 0);
        assert_eq!(dense_rank(&[]), 0);
    }
}
