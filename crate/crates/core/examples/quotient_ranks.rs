//! Ranks of diagram spaces modulo AS/IHX (and STU on circles), with a basis
//! and the integral invariant factors.

use jacobi::space::{build_space, SpaceSpec};

fn main() -> jacobi::Result<()> {
    for k in 0..=4 {
        let a = build_space(&SpaceSpec::closed(k))?;
        let ac = build_space(&SpaceSpec::connected_closed(k))?;
        println!("degree {k}: rank A = {}, rank Ac = {}", a.rank(), ac.rank());
    }
    let s = build_space(&SpaceSpec::on_circles(2, 1))?;
    let r = s.report();
    println!("degree 2 on one circle: {} classes, {} relations, rank {}", r.classes, r.relations, r.rank);
    for b in &r.basis {
        println!("  basis {b}");
    }
    let factors = build_space(&SpaceSpec::closed(2).self_loops(true))?.integral_factors()?;
    println!("degree 2 with self-loops, invariant factors: {factors:?}");
    Ok(())
}
